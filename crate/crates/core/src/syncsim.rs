//! Classical simulation of framed transmission and synchronization recovery.
//!
//! A block carries the label `w = c(x) + g1(x)` with `c ∈ C2`, cyclically
//! extended by its last `c_l` and first `c_r` coordinates. A reader whose
//! window starts `θ` positions late sees `x^(-θ)·w mod (x^n - 1)` plus bit
//! flips. Recovery corrects the flips with `C1`'s syndrome table, divides by
//! `g1`, and reads `θ` off the remainder of the quotient modulo `f = g2/g1`.

use std::collections::HashMap;
use std::fmt;

use itertools::Itertools;
use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::chain::{sync_quotient, QsyncParams};
use crate::cyclic::{cyclic_shift, CyclicCode, ParityCheck, DEFAULT_DISTANCE_CAP};
use crate::error::{Error, Result};
use crate::poly::{self, Poly};

/// `(θ, x^(-θ mod n) mod f)` for `θ ∈ [-c_l, c_r]`, ascending in `θ`.
///
/// Errors with [`Error::MisalignmentTooLarge`] unless `c_l + c_r < ord(f)`,
/// and with [`Error::Invariant`] if two residues nonetheless coincide.
pub fn misalignment_table(f: &Poly, n: usize, c_l: usize, c_r: usize) -> Result<Vec<(i64, Poly)>> {
    let ord_f = poly::order_dividing(f, n as u64)?;
    if (c_l + c_r) as u64 >= ord_f {
        return Err(Error::MisalignmentTooLarge {
            sum: c_l + c_r,
            order: ord_f,
        });
    }
    let mut seen = std::collections::HashSet::new();
    let mut table = Vec::with_capacity(c_l + c_r + 1);
    for theta in -(c_l as i64)..=c_r as i64 {
        let exp = (-theta).rem_euclid(n as i64) as u64;
        let r = poly::mod_pow_x(exp, f)?;
        if !seen.insert(r.clone()) {
            return Err(Error::Invariant(format!(
                "misalignment residues collide with c_l + c_r = {} < ord(f) = {ord_f}",
                c_l + c_r
            )));
        }
        table.push((theta, r));
    }
    Ok(table)
}

/// Upper limit on syndrome-table entries.
pub const MAX_SYNDROME_TABLE: usize = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Frame {
    bits: Vec<bool>,
    label: Poly,
    n: usize,
    c_l: usize,
    c_r: usize,
}

impl Frame {
    /// Cyclically extends an `n`-bit label: `(last c_l) ∥ w ∥ (first c_r)`.
    pub fn from_label(label: Poly, n: usize, c_l: usize, c_r: usize) -> Result<Frame> {
        if label.degree().is_some_and(|d| d >= n) {
            return Err(Error::LengthMismatch {
                expected: n,
                found: label.degree().unwrap_or(0) + 1,
            });
        }
        if c_l > n || c_r > n {
            return Err(Error::MisalignmentTooLarge {
                sum: c_l + c_r,
                order: n as u64,
            });
        }
        let w = label.to_bits(n);
        let mut bits = Vec::with_capacity(n + c_l + c_r);
        bits.extend_from_slice(&w[n - c_l..]);
        bits.extend_from_slice(&w);
        bits.extend_from_slice(&w[..c_r]);
        Ok(Frame {
            bits,
            label,
            n,
            c_l,
            c_r,
        })
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn label(&self) -> &Poly {
        &self.label
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn c_l(&self) -> usize {
        self.c_l
    }

    pub fn c_r(&self) -> usize {
        self.c_r
    }
}

/// Frame for the inner codeword `w2`, with label `w2 + g1`.
pub fn encode_frame(
    c1: &CyclicCode,
    c2: &CyclicCode,
    w2: &Poly,
    c_l: usize,
    c_r: usize,
) -> Result<Frame> {
    if !c2.is_codeword(w2) {
        return Err(Error::NotACodeword);
    }
    let n = c1.length();
    let f = sync_quotient(c1, c2)?;
    let ord = poly::order_dividing(&f, n as u64)?;
    if (c_l + c_r) as u64 >= ord {
        return Err(Error::MisalignmentTooLarge {
            sum: c_l + c_r,
            order: ord,
        });
    }
    Frame::from_label(w2 + c1.generator(), n, c_l, c_r)
}

/// Misalignment plus bit flips applied to a whole frame.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Channel {
    /// Positive when the window starts late (to the right).
    pub theta: i64,
    /// Bit-flip pattern over the full frame.
    pub e_b: Vec<bool>,
    pub rng_seed: u64,
}

impl Channel {
    pub fn clean(theta: i64, frame_len: usize) -> Channel {
        Channel {
            theta,
            e_b: vec![false; frame_len],
            rng_seed: 0,
        }
    }

    pub fn with_flips(theta: i64, frame_len: usize, positions: &[usize]) -> Channel {
        let mut ch = Channel::clean(theta, frame_len);
        for &i in positions {
            ch.e_b[i] ^= true;
        }
        ch
    }
}

/// The `n` bits a reader sees: `bits[c_l + θ + j] ⊕ e_b[c_l + θ + j]` for `j < n`.
pub fn transmit(frame: &Frame, ch: &Channel) -> Result<Vec<bool>> {
    let (c_l, c_r) = (frame.c_l, frame.c_r);
    if ch.theta < -(c_l as i64) || ch.theta > c_r as i64 {
        return Err(Error::ThetaOutOfRange {
            theta: ch.theta,
            c_l,
            c_r,
        });
    }
    if ch.e_b.len() != frame.len() {
        return Err(Error::LengthMismatch {
            expected: frame.len(),
            found: ch.e_b.len(),
        });
    }
    let start = (c_l as i64 + ch.theta) as usize;
    Ok((start..start + frame.n)
        .map(|i| frame.bits[i] ^ ch.e_b[i])
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RecoveryFailure {
    UncorrectableBitErrors,
    /// The corrected window is not divisible by `g1`.
    NotInOuterCode,
    MisalignmentOutOfRange,
    /// Recovery resolved, but to a different misalignment than the channel applied.
    WrongMisalignment,
    /// Recovery resolved, but the corrected window differs from the transmitted one.
    WrongWindow,
}

impl fmt::Display for RecoveryFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RecoveryFailure::UncorrectableBitErrors => "uncorrectable bit errors",
            RecoveryFailure::NotInOuterCode => "corrected window not in C1",
            RecoveryFailure::MisalignmentOutOfRange => "misalignment out of design range",
            RecoveryFailure::WrongMisalignment => "misalignment resolved incorrectly",
            RecoveryFailure::WrongWindow => "window corrected to the wrong codeword",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecoveryResult {
    pub theta_hat: Option<i64>,
    pub corrected_window: Vec<bool>,
    /// Weight of the error pattern the syndrome table applied.
    pub syndrome_weight_used: usize,
    pub success: bool,
    pub failure: Option<RecoveryFailure>,
}

/// Precomputed tables for recovering misalignment from a received window.
#[derive(Debug, Clone)]
pub struct SyncDecoder {
    n: usize,
    g1: Poly,
    f: Poly,
    ord_f: u64,
    parity: Option<ParityCheck>,
    radius: usize,
    syndromes: HashMap<Poly, Poly>,
    shifts: HashMap<Poly, i64>,
}

impl SyncDecoder {
    /// `d1` is the exact minimum distance of `C1` when known; otherwise the
    /// correction radius is found by growing the syndrome table until two
    /// patterns collide.
    pub fn new(c1: &CyclicCode, f: &Poly, c_l: usize, c_r: usize, d1: Option<usize>) -> Result<SyncDecoder> {
        let n = c1.length();
        let g1 = c1.generator().clone();
        if f.degree().is_none_or(|d| d == 0) {
            return Err(Error::InvalidQuotient("f must have positive degree"));
        }
        if !Poly::x_n_minus_one(n).is_divisible_by(&(f * &g1)) {
            return Err(Error::InvalidQuotient("f·g1 does not divide x^n - 1"));
        }
        let ord_f = poly::order_dividing(f, n as u64)?;
        let shifts = misalignment_table(f, n, c_l, c_r)?
            .into_iter()
            .map(|(theta, r)| (r, theta))
            .collect();

        let (parity, radius, syndromes) = if c1.dimension() == n {
            (None, 0, HashMap::new())
        } else {
            let h = c1.parity_check()?;
            let (radius, table) = build_syndrome_table(&h, d1.map(|d| (d - 1) / 2))?;
            (Some(h), radius, table)
        };

        Ok(SyncDecoder {
            n,
            g1,
            f: f.clone(),
            ord_f,
            parity,
            radius,
            syndromes,
            shifts,
        })
    }

    pub fn for_params(params: &QsyncParams) -> Result<SyncDecoder> {
        SyncDecoder::new(&params.outer_code(), &params.f, params.c_l, params.c_r, params.d1)
    }

    /// Largest error weight the syndrome table corrects.
    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn syndrome_table_len(&self) -> usize {
        self.syndromes.len()
    }

    pub fn ord_f(&self) -> u64 {
        self.ord_f
    }

    /// `(θ, x^(-θ mod n) mod f)` for every design misalignment, ascending in `θ`.
    pub fn misalignment_table(&self) -> Vec<(i64, Poly)> {
        self.shifts
            .iter()
            .map(|(r, &t)| (t, r.clone()))
            .sorted_by_key(|(t, _)| *t)
            .collect()
    }

    pub fn recover(&self, window: &[bool]) -> Result<RecoveryResult> {
        if window.len() != self.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                found: window.len(),
            });
        }
        let received = Poly::from_bits(window);
        let fail = |reason, corrected: &Poly, weight| RecoveryResult {
            theta_hat: None,
            corrected_window: corrected.to_bits(self.n),
            syndrome_weight_used: weight,
            success: false,
            failure: Some(reason),
        };

        let error = match &self.parity {
            None => Poly::zero(),
            Some(h) => {
                let s = h.syndrome(&received)?;
                if s.is_zero() {
                    Poly::zero()
                } else {
                    match self.syndromes.get(&s) {
                        Some(e) => e.clone(),
                        None => return Ok(fail(RecoveryFailure::UncorrectableBitErrors, &received, 0)),
                    }
                }
            }
        };
        let weight = error.weight();
        let corrected = &received + &error;

        let (quotient, rem) = corrected.divrem(&self.g1)?;
        if !rem.is_zero() {
            return Ok(fail(RecoveryFailure::NotInOuterCode, &corrected, weight));
        }
        let residue = quotient.rem(&self.f)?;
        match self.shifts.get(&residue) {
            Some(&theta) => Ok(RecoveryResult {
                theta_hat: Some(theta),
                corrected_window: corrected.to_bits(self.n),
                syndrome_weight_used: weight,
                success: true,
                failure: None,
            }),
            None => Ok(fail(RecoveryFailure::MisalignmentOutOfRange, &corrected, weight)),
        }
    }
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1usize, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

/// Syndrome → error pattern for all patterns up to the returned radius.
///
/// With `target = Some(t)` the table stops at `t`; otherwise it grows until a
/// weight layer produces a repeated or zero syndrome. Either way it stops
/// before exceeding [`MAX_SYNDROME_TABLE`] entries.
fn build_syndrome_table(h: &ParityCheck, target: Option<usize>) -> Result<(usize, HashMap<Poly, Poly>)> {
    let n = h.length();
    let columns: Vec<Poly> = (0..n).map(|j| h.column(j)).collect();
    let mut table: HashMap<Poly, Poly> = HashMap::new();
    let mut radius = 0;
    for w in 1..=n {
        if target.is_some_and(|t| w > t) {
            break;
        }
        if table.len().saturating_add(binomial(n, w)) > MAX_SYNDROME_TABLE {
            break;
        }
        let mut layer: HashMap<Poly, Poly> = HashMap::with_capacity(binomial(n, w));
        let mut collided = false;
        for positions in (0..n).combinations(w) {
            let s = positions
                .iter()
                .fold(Poly::zero(), |acc, &j| &acc + &columns[j]);
            if s.is_zero() || table.contains_key(&s) || layer.contains_key(&s) {
                collided = true;
                break;
            }
            layer.insert(s, Poly::from_exponents(positions));
        }
        if collided {
            if target.is_some() {
                return Err(Error::Invariant(format!(
                    "syndrome collision at weight {w} within the stated correction radius"
                )));
            }
            break;
        }
        table.extend(layer);
        radius = w;
    }
    Ok((radius, table))
}

/// One-shot recovery; builds the decoder tables for `C1` and `f`.
pub fn recover(window: &[bool], c1: &CyclicCode, f: &Poly, c_l: usize, c_r: usize) -> Result<RecoveryResult> {
    let d1 = if c1.dimension() == c1.length() {
        Some(1)
    } else {
        c1.min_distance(DEFAULT_DISTANCE_CAP).ok()
    };
    SyncDecoder::new(c1, f, c_l, c_r, d1)?.recover(window)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TrialMode {
    /// Errors confined to the window, weight at most the correction radius.
    Guaranteed,
    /// Errors anywhere in the frame, any weight up to `max_errors`.
    Stress,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrialConfig {
    pub trials: u64,
    pub max_errors: usize,
    pub seed: u64,
    pub mode: TrialMode,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FailureCase {
    pub trial_index: u64,
    pub theta: i64,
    /// Flipped frame positions.
    pub error_positions: Vec<usize>,
    pub reason: RecoveryFailure,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrialSummary {
    pub params: QsyncParams,
    pub mode: TrialMode,
    pub max_errors: usize,
    pub seed: u64,
    pub trials: u64,
    pub successes: u64,
    pub failures: Vec<FailureCase>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrialOutcome {
    pub trial_index: u64,
    pub codeword: Poly,
    pub theta: i64,
    pub error_positions: Vec<usize>,
    pub result: RecoveryResult,
    pub success: bool,
    pub reason: Option<RecoveryFailure>,
}

/// Encode → transmit → recover harness over a validated pair.
#[derive(Debug, Clone)]
pub struct Simulator {
    params: QsyncParams,
    inner: CyclicCode,
    decoder: SyncDecoder,
}

impl Simulator {
    pub fn new(params: QsyncParams) -> Result<Simulator> {
        let decoder = SyncDecoder::for_params(&params)?;
        Ok(Simulator {
            inner: params.inner_code(),
            params,
            decoder,
        })
    }

    pub fn params(&self) -> &QsyncParams {
        &self.params
    }

    pub fn decoder(&self) -> &SyncDecoder {
        &self.decoder
    }

    /// Runs one trial on explicit inputs; `codeword` must lie in `C2`.
    pub fn run_case(&self, codeword: &Poly, theta: i64, error_positions: &[usize]) -> Result<TrialOutcome> {
        let p = &self.params;
        if !self.inner.is_codeword(codeword) {
            return Err(Error::NotACodeword);
        }
        let label = codeword + &p.g1;
        let frame = Frame::from_label(label.clone(), p.n, p.c_l, p.c_r)?;
        if let Some(&bad) = error_positions.iter().find(|&&i| i >= frame.len()) {
            return Err(Error::LengthMismatch {
                expected: frame.len(),
                found: bad + 1,
            });
        }
        let channel = Channel::with_flips(theta, frame.len(), error_positions);
        let window = transmit(&frame, &channel)?;
        let result = self.decoder.recover(&window)?;
        let truth = cyclic_shift(&label, p.n, -theta).to_bits(p.n);
        let reason = match (result.failure, result.theta_hat) {
            (Some(r), _) => Some(r),
            (None, Some(t)) if t != theta => Some(RecoveryFailure::WrongMisalignment),
            (None, _) if result.corrected_window != truth => Some(RecoveryFailure::WrongWindow),
            _ => None,
        };
        Ok(TrialOutcome {
            trial_index: 0,
            codeword: codeword.clone(),
            theta,
            error_positions: error_positions.to_vec(),
            success: reason.is_none(),
            result,
            reason,
        })
    }

    /// Trial `index` under `config`, reproducible from `(config.seed, index)` alone.
    pub fn trial(&self, config: &TrialConfig, index: u64) -> Result<TrialOutcome> {
        let p = &self.params;
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
        rng.set_stream(index);

        let message = random_poly(&mut rng, p.k2);
        let codeword = self.inner.encode(&message)?;
        let theta = rng.gen_range(-(p.c_l as i64)..=p.c_r as i64);
        let (span_start, span_len) = match config.mode {
            TrialMode::Guaranteed => ((p.c_l as i64 + theta) as usize, p.n),
            TrialMode::Stress => (0, p.length),
        };
        let weight = rng.gen_range(0..=config.max_errors.min(span_len));
        let mut positions: Vec<usize> = index::sample(&mut rng, span_len, weight)
            .into_iter()
            .map(|j| span_start + j)
            .collect();
        positions.sort_unstable();

        let mut outcome = self.run_case(&codeword, theta, &positions)?;
        outcome.trial_index = index;
        Ok(outcome)
    }

    pub fn run(&self, config: &TrialConfig) -> Result<TrialSummary> {
        if config.mode == TrialMode::Guaranteed && config.max_errors > self.decoder.radius() {
            return Err(Error::ExceedsGuarantee {
                max_errors: config.max_errors,
                radius: self.decoder.radius(),
            });
        }
        let outcomes: Vec<TrialOutcome> = (0..config.trials)
            .into_par_iter()
            .map(|i| self.trial(config, i))
            .collect::<Result<_>>()?;
        let successes = outcomes.iter().filter(|o| o.success).count() as u64;
        let failures = outcomes
            .into_iter()
            .filter_map(|o| {
                o.reason.map(|reason| FailureCase {
                    trial_index: o.trial_index,
                    theta: o.theta,
                    error_positions: o.error_positions,
                    reason,
                })
            })
            .collect();
        Ok(TrialSummary {
            params: self.params.clone(),
            mode: config.mode,
            max_errors: config.max_errors,
            seed: config.seed,
            trials: config.trials,
            successes,
            failures,
        })
    }
}

pub fn run_trials(params: &QsyncParams, config: &TrialConfig) -> Result<TrialSummary> {
    Simulator::new(params.clone())?.run(config)
}

fn random_poly<R: Rng>(rng: &mut R, bits: usize) -> Poly {
    let words = (0..bits.div_ceil(64)).map(|_| rng.gen::<u64>()).collect();
    Poly::from_words(words).truncate(bits)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::mersenne_chain;

    fn pair31() -> (CyclicCode, CyclicCode) {
        mersenne_chain(5).unwrap().pair(0, 1).unwrap()
    }

    #[test]
    fn frame_of_zero_codeword_is_g1() {
        let (c1, c2) = pair31();
        let frame = encode_frame(&c1, &c2, &Poly::zero(), 0, 0).unwrap();
        assert_eq!(frame.bits(), c1.generator().to_bits(31).as_slice());
    }

    #[test]
    fn frame_extension_layout() {
        let (c1, c2) = pair31();
        let frame = encode_frame(&c1, &c2, c2.generator(), 2, 1).unwrap();
        let w = (c2.generator() + c1.generator()).to_bits(31);
        assert!(c1.is_codeword(frame.label()));
        assert_eq!(frame.len(), 34);
        assert_eq!(&frame.bits()[..2], &w[29..31]);
        assert_eq!(frame.bits()[33], w[0]);
        for j in 0..=3usize {
            let window = &frame.bits()[j..j + 31];
            let expected = cyclic_shift(frame.label(), 31, -(j as i64 - 2)).to_bits(31);
            assert_eq!(window, expected.as_slice());
        }
    }

    #[test]
    fn frame_rejections() {
        let (c1, c2) = pair31();
        assert_eq!(
            encode_frame(&c1, &c2, c1.generator(), 1, 1),
            Err(Error::NotACodeword)
        );
        assert_eq!(
            encode_frame(&c1, &c2, &Poly::zero(), 16, 15),
            Err(Error::MisalignmentTooLarge { sum: 31, order: 31 })
        );
    }

    #[test]
    fn transmit_examples() {
        let (c1, c2) = pair31();
        let frame = encode_frame(&c1, &c2, c2.generator(), 2, 1).unwrap();
        let w = frame.label().clone();
        assert_eq!(transmit(&frame, &Channel::clean(0, 34)).unwrap(), w.to_bits(31));
        assert_eq!(
            transmit(&frame, &Channel::clean(1, 34)).unwrap(),
            cyclic_shift(&w, 31, -1).to_bits(31)
        );
        let flipped = transmit(&frame, &Channel::with_flips(-1, 34, &[1 + 5])).unwrap();
        let mut expected = cyclic_shift(&w, 31, 1);
        expected.flip(5);
        assert_eq!(flipped, expected.to_bits(31));
        assert_eq!(
            transmit(&frame, &Channel::clean(2, 34)),
            Err(Error::ThetaOutOfRange { theta: 2, c_l: 2, c_r: 1 })
        );
    }

    #[test]
    fn recover_examples() {
        let (c1, c2) = pair31();
        let f = sync_quotient(&c1, &c2).unwrap();
        let frame = encode_frame(&c1, &c2, &Poly::zero(), 15, 15).unwrap();
        let window = transmit(&frame, &Channel::clean(0, frame.len())).unwrap();
        let r = recover(&window, &c1, &f, 15, 15).unwrap();
        assert_eq!(r.theta_hat, Some(0));
        assert_eq!(r.corrected_window, frame.label().to_bits(31));

        let window = transmit(&frame, &Channel::clean(2, frame.len())).unwrap();
        let r = recover(&window, &c1, &f, 15, 15).unwrap();
        assert_eq!(r.theta_hat, Some(2));

        // Two flips inside the window at θ = -1.
        let ch = Channel::with_flips(-1, frame.len(), &[14 + 3, 14 + 20]);
        let window = transmit(&frame, &ch).unwrap();
        let r = recover(&window, &c1, &f, 15, 15).unwrap();
        assert!(r.success);
        assert_eq!(r.theta_hat, Some(-1));
        assert_eq!(r.syndrome_weight_used, 2);
        assert_eq!(r.corrected_window, cyclic_shift(frame.label(), 31, 1).to_bits(31));
    }

    #[test]
    fn recover_reports_uncorrectable() {
        let (c1, c2) = pair31();
        let params = QsyncParams::new(&c1, &c2, 1, 1).unwrap();
        let sim = Simulator::new(params).unwrap();
        assert_eq!(sim.decoder().radius(), 2);
        assert_eq!(sim.decoder().syndrome_table_len(), 31 + 465);
        // Some weight-3 pattern must land outside the weight-<=2 table (2^10 syndromes, 497 used).
        let found = (0..31usize).combinations(3).any(|pos| {
            let mut w = vec![false; 31];
            for &i in &pos {
                w[i] = true;
            }
            sim.decoder().recover(&w).unwrap().failure == Some(RecoveryFailure::UncorrectableBitErrors)
        });
        assert!(found);
    }

    #[test]
    fn grown_radius_matches_distance() {
        let (c1, c2) = pair31();
        let f = sync_quotient(&c1, &c2).unwrap();
        let known = SyncDecoder::new(&c1, &f, 0, 0, Some(5)).unwrap();
        let grown = SyncDecoder::new(&c1, &f, 0, 0, None).unwrap();
        assert_eq!(known.radius(), 2);
        assert_eq!(grown.radius(), 2);
    }

    #[test]
    fn whole_space_outer_code() {
        let chain = mersenne_chain(3).unwrap();
        let (c1, c2) = chain.pair(0, 1).unwrap();
        let params = QsyncParams::new(&c1, &c2, 3, 3).unwrap();
        let sim = Simulator::new(params).unwrap();
        assert_eq!(sim.decoder().radius(), 0);
        for theta in -3..=3 {
            let out = sim.run_case(c2.generator(), theta, &[]).unwrap();
            assert!(out.success, "theta={theta}");
        }
    }

    #[test]
    fn trials_are_reproducible() {
        let (c1, c2) = pair31();
        let params = QsyncParams::new(&c1, &c2, 4, 3).unwrap();
        let sim = Simulator::new(params).unwrap();
        let config = TrialConfig {
            trials: 200,
            max_errors: 4,
            seed: 9,
            mode: TrialMode::Stress,
        };
        let a = sim.run(&config).unwrap();
        let b = sim.run(&config).unwrap();
        assert_eq!(a, b);
        let text = serde_json::to_string(&a).unwrap();
        assert_eq!(serde_json::from_str::<TrialSummary>(&text).unwrap(), a);
        for case in &a.failures {
            let replay = sim.trial(&config, case.trial_index).unwrap();
            assert_eq!(replay.reason, Some(case.reason));
            assert_eq!(replay.error_positions, case.error_positions);
        }
    }

    #[test]
    fn guaranteed_mode_limits() {
        let (c1, c2) = pair31();
        let params = QsyncParams::new(&c1, &c2, 2, 2).unwrap();
        let sim = Simulator::new(params).unwrap();
        let config = TrialConfig {
            trials: 10,
            max_errors: 3,
            seed: 1,
            mode: TrialMode::Guaranteed,
        };
        assert_eq!(
            sim.run(&config),
            Err(Error::ExceedsGuarantee { max_errors: 3, radius: 2 })
        );
        let empty = sim
            .run(&TrialConfig { trials: 0, max_errors: 0, ..config })
            .unwrap();
        assert_eq!((empty.trials, empty.successes), (0, 0));
    }
}
