//! Binary cyclic codes as ideals `⟨g(x)⟩` of GF(2)[x]/(x^n - 1).

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::Poly;

/// Default dimension cap for exhaustive minimum-distance enumeration.
pub const DEFAULT_DISTANCE_CAP: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct CyclicCode {
    n: usize,
    generator: Poly,
    check: Poly,
}

impl CyclicCode {
    /// Code of length `n` generated by `g`, which must divide `x^n - 1` and have degree below `n`.
    pub fn new(n: usize, g: Poly) -> Result<CyclicCode> {
        match g.degree() {
            Some(d) if d < n => {}
            _ => return Err(Error::NotCyclicGenerator { n }),
        }
        let (check, rem) = Poly::x_n_minus_one(n).divrem(&g)?;
        if !rem.is_zero() {
            return Err(Error::NotCyclicGenerator { n });
        }
        Ok(CyclicCode {
            n,
            generator: g,
            check,
        })
    }

    /// `⟨1⟩`, all of GF(2)^n.
    pub fn whole_space(n: usize) -> CyclicCode {
        CyclicCode {
            n,
            generator: Poly::one(),
            check: Poly::x_n_minus_one(n),
        }
    }

    pub fn length(&self) -> usize {
        self.n
    }

    pub fn dimension(&self) -> usize {
        self.n - self.generator.degree().expect("generator is nonzero")
    }

    pub fn generator(&self) -> &Poly {
        &self.generator
    }

    pub fn check_polynomial(&self) -> &Poly {
        &self.check
    }

    /// Dual code, generated by the reciprocal of the check polynomial.
    ///
    /// Panics for the whole space, whose dual `{0}` has no generator of degree below `n`.
    pub fn dual(&self) -> CyclicCode {
        CyclicCode::new(self.n, self.check.reciprocal())
            .expect("reciprocal of a divisor of x^n - 1 divides x^n - 1")
    }

    /// True when `other ⊆ self`, i.e. this generator divides the other's.
    pub fn contains(&self, other: &CyclicCode) -> Result<bool> {
        if self.n != other.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                found: other.n,
            });
        }
        Ok(other.generator.is_divisible_by(&self.generator))
    }

    pub fn is_dual_containing(&self) -> bool {
        self.dimension() == self.n || self.contains(&self.dual()).expect("same length")
    }

    pub fn is_codeword(&self, v: &Poly) -> bool {
        v.degree().is_none_or(|d| d < self.n) && v.is_divisible_by(&self.generator)
    }

    /// `m(x)·g(x)` for a message of degree below `k`.
    pub fn encode(&self, m: &Poly) -> Result<Poly> {
        let k = self.dimension();
        if let Some(d) = m.degree() {
            if d >= k {
                return Err(Error::MessageTooLong { degree: d, k });
            }
        }
        Ok(m * &self.generator)
    }

    /// Rows `x^i g(x)` for `i < k`.
    pub fn generator_rows(&self) -> Vec<Poly> {
        (0..self.dimension()).map(|i| self.generator.shl(i)).collect()
    }

    /// Full-rank `(n-k) × n` parity-check matrix built from the dual generator.
    pub fn parity_check(&self) -> Result<ParityCheck> {
        let k = self.dimension();
        if k == self.n {
            return Err(Error::NoParityConstraints);
        }
        let dual_gen = self.check.reciprocal();
        let rows: Vec<Poly> = (0..self.n - k).map(|i| dual_gen.shl(i)).collect();
        let hc = ParityCheck { n: self.n, rows };
        if hc.rank() != self.n - k {
            return Err(Error::Invariant("parity-check matrix is rank deficient".into()));
        }
        Ok(hc)
    }

    /// Exact minimum distance by Gray-code enumeration of all `2^k - 1` nonzero codewords.
    pub fn min_distance(&self, cap_k: usize) -> Result<usize> {
        let k = self.dimension();
        if k > cap_k {
            return Err(Error::DimensionExceedsCap { k, cap: cap_k });
        }
        let rows = self.generator_rows();
        if self.n <= 128 {
            let rows: Vec<u128> = rows.iter().map(|r| r.to_u128().expect("n <= 128")).collect();
            Ok(gray_min_weight(&rows, 0u128, |a: &mut u128, b: &u128| *a ^= b, |a| a.count_ones() as usize))
        } else {
            let width = self.n.div_ceil(64);
            let rows: Vec<Vec<u64>> = rows
                .iter()
                .map(|r| {
                    let mut w = r.words().to_vec();
                    w.resize(width, 0);
                    w
                })
                .collect();
            Ok(gray_min_weight(
                &rows,
                vec![0u64; width],
                |a: &mut Vec<u64>, b: &Vec<u64>| a.iter_mut().zip(b).for_each(|(x, y)| *x ^= y),
                |a| a.iter().map(|w| w.count_ones() as usize).sum(),
            ))
        }
    }
}

/// Minimum weight over all nonzero XOR-combinations of `rows` (assumed independent).
///
/// The top message bits are fixed per parallel task and the rest walk a Gray
/// code, so every combination is visited once regardless of scheduling.
fn gray_min_weight<T, X, W>(rows: &[T], zero: T, xor: X, weight: W) -> usize
where
    T: Clone + Send + Sync,
    X: Fn(&mut T, &T) + Sync,
    W: Fn(&T) -> usize + Sync,
{
    let k = rows.len();
    let split = k.min(6);
    let low = k - split;
    (0u64..1 << split)
        .into_par_iter()
        .map(|prefix| {
            let mut acc = zero.clone();
            for (b, row) in rows[low..].iter().enumerate() {
                if prefix >> b & 1 == 1 {
                    xor(&mut acc, row);
                }
            }
            let mut best = if prefix == 0 { usize::MAX } else { weight(&acc) };
            for i in 1u64..1 << low {
                xor(&mut acc, &rows[i.trailing_zeros() as usize]);
                best = best.min(weight(&acc));
            }
            best
        })
        .min()
        .unwrap_or(usize::MAX)
}

/// Parity-check matrix stored as row polynomials.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParityCheck {
    n: usize,
    rows: Vec<Poly>,
}

impl ParityCheck {
    pub fn length(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> &[Poly] {
        &self.rows
    }

    pub fn redundancy(&self) -> usize {
        self.rows.len()
    }

    /// Rank over GF(2) by elimination on leading terms.
    pub fn rank(&self) -> usize {
        let mut basis: Vec<Poly> = Vec::new();
        for row in &self.rows {
            let mut r = row.clone();
            loop {
                let Some(d) = r.degree() else { break };
                match basis.iter().find(|b| b.degree() == Some(d)) {
                    Some(b) => r += b,
                    None => {
                        basis.push(r);
                        break;
                    }
                }
            }
        }
        basis.len()
    }

    /// `v·Hᵀ`; bit `i` of the result is the parity of row `i` against `v`.
    pub fn syndrome(&self, v: &Poly) -> Result<Poly> {
        if let Some(d) = v.degree() {
            if d >= self.n {
                return Err(Error::LengthMismatch {
                    expected: self.n,
                    found: d + 1,
                });
            }
        }
        Ok(Poly::from_exponents(
            self.rows
                .iter()
                .enumerate()
                .filter(|(_, r)| r.dot(v))
                .map(|(i, _)| i),
        ))
    }

    pub fn syndrome_bits(&self, v: &[bool]) -> Result<Vec<bool>> {
        if v.len() != self.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                found: v.len(),
            });
        }
        Ok(self.syndrome(&Poly::from_bits(v))?.to_bits(self.redundancy()))
    }

    /// Column `j` as a syndrome polynomial.
    pub fn column(&self, j: usize) -> Poly {
        Poly::from_exponents(
            self.rows
                .iter()
                .enumerate()
                .filter(|(_, r)| r.coeff(j))
                .map(|(i, _)| i),
        )
    }
}

/// `x^s · v mod (x^n - 1)` for any integer `s`.
pub fn cyclic_shift(v: &Poly, n: usize, s: i64) -> Poly {
    let s = s.rem_euclid(n as i64) as usize;
    Poly::from_exponents(v.exponents().into_iter().map(|e| (e + s) % n))
}
