//! Dual-containing supercode chains over a quadratic residue code, and the
//! synchronizable-code parameters derived from a nested pair of cyclic codes.
//!
//! For `p ≡ -1 (mod 8)` the residue code `⟨g_R⟩` contains its dual. Its
//! generator splits into minimal polynomials, one per cyclotomic coset inside
//! the quadratic residues; deleting factors yields larger cyclic codes, all of
//! which still contain the dual of `⟨g_R⟩` and hence their own duals. For a
//! Mersenne prime `p = 2^l - 1` every factor has degree `l`.

use serde::{Deserialize, Serialize};

use crate::arith;
use crate::cyclic::{CyclicCode, DEFAULT_DISTANCE_CAP};
use crate::error::{Error, Result};
use crate::poly::{self, Poly};
use crate::qr::QrFamily;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChainFactor {
    /// Smallest element of the cyclotomic coset this factor belongs to.
    pub rep: u64,
    pub poly: Poly,
}

#[derive(Debug, Clone)]
pub struct FactorChain {
    p: u64,
    factors: Vec<ChainFactor>,
    codes: Vec<CyclicCode>,
}

/// Chain over `⟨g_R⟩` for a prime `p ≡ -1 (mod 8)`.
pub fn residue_chain(p: u64) -> Result<FactorChain> {
    let family = QrFamily::build(p)?;
    if p % 8 != 7 {
        return Err(Error::DualityPrecondition { p });
    }
    let cosets = arith::cyclotomic_cosets(p)?;
    let field = family.field();
    let mut factors = Vec::new();
    for rep in cosets.reps() {
        if rep != 0 && family.residues().is_residue(rep) {
            factors.push(ChainFactor {
                rep,
                poly: field.minimal_polynomial(family.alpha(), rep)?,
            });
        }
    }
    let product = factors.iter().fold(Poly::one(), |acc, f| &acc * &f.poly);
    if &product != family.residue_code().generator() {
        return Err(Error::Invariant(
            "minimal polynomials over the residue cosets do not multiply to g_R".into(),
        ));
    }
    let n = p as usize;
    let codes = (0..factors.len())
        .map(|z| CyclicCode::new(n, product_of(&factors[..factors.len() - z])))
        .collect::<Result<Vec<_>>>()?;
    Ok(FactorChain { p, factors, codes })
}

/// Chain for the Mersenne prime `2^l - 1`.
pub fn mersenne_chain(l: u32) -> Result<FactorChain> {
    if !(2..64).contains(&l) || arith::is_mersenne_prime_exponent((1u64 << l) - 1) != Some(l) {
        return Err(Error::NotMersenne { l });
    }
    let chain = residue_chain((1u64 << l) - 1)?;
    let expected = ((1usize << (l - 1)) - 1) / l as usize;
    if chain.factors.len() != expected
        || chain.factors.iter().any(|f| f.poly.degree() != Some(l as usize))
    {
        return Err(Error::Invariant(format!(
            "g_R for l = {l} does not split into {expected} factors of degree {l}"
        )));
    }
    Ok(chain)
}

fn product_of(factors: &[ChainFactor]) -> Poly {
    factors.iter().fold(Poly::one(), |acc, f| &acc * &f.poly)
}

impl FactorChain {
    pub fn p(&self) -> u64 {
        self.p
    }

    /// `l` when the length is a Mersenne prime `2^l - 1`.
    pub fn mersenne_exponent(&self) -> Option<u32> {
        arith::is_mersenne_prime_exponent(self.p)
    }

    /// Factors of `g_R`, ordered by coset representative.
    pub fn factors(&self) -> &[ChainFactor] {
        &self.factors
    }

    /// `codes()[z]` is generated by `g_R` with its `z` largest-representative factors deleted.
    pub fn codes(&self) -> &[CyclicCode] {
        &self.codes
    }

    /// Like `codes()[z]`, but also accepts `z = factors().len()`, the whole space.
    pub fn supercode(&self, z: usize) -> Result<CyclicCode> {
        let m = self.factors.len();
        if z > m {
            return Err(Error::DeletionOutOfRange {
                deleted: z,
                available: m,
            });
        }
        if z == m {
            return Ok(CyclicCode::whole_space(self.p as usize));
        }
        Ok(self.codes[z].clone())
    }

    /// Code generated by the factors whose index bit is clear in `deleted`.
    pub fn subset_code(&self, deleted: u64) -> Result<CyclicCode> {
        let kept: Vec<ChainFactor> = self
            .factors
            .iter()
            .enumerate()
            .filter(|(i, _)| deleted >> i & 1 == 0)
            .map(|(_, f)| f.clone())
            .collect();
        if kept.is_empty() {
            return Ok(CyclicCode::whole_space(self.p as usize));
        }
        CyclicCode::new(self.p as usize, product_of(&kept))
    }

    /// Every code obtained by deleting a subset of factors, keyed by the deletion mask.
    pub fn all_subset_codes(&self) -> Result<Vec<(u64, CyclicCode)>> {
        (0u64..1 << self.factors.len())
            .map(|mask| Ok((mask, self.subset_code(mask)?)))
            .collect()
    }

    /// `(C1, C2)` with `C2` at `z` deletions and `C1` at `z + y`.
    pub fn pair(&self, z: usize, y: usize) -> Result<(CyclicCode, CyclicCode)> {
        if y == 0 {
            return Err(Error::NotProperSubcode);
        }
        Ok((self.supercode(z + y)?, self.supercode(z)?))
    }
}

/// `f = g2 / g1` for a proper inclusion `C2 ⊂ C1`.
pub fn sync_quotient(c1: &CyclicCode, c2: &CyclicCode) -> Result<Poly> {
    if !c1.contains(c2)? || c1 == c2 {
        return Err(Error::NotProperSubcode);
    }
    let (f, rem) = c2.generator().divrem(c1.generator())?;
    debug_assert!(rem.is_zero());
    Ok(f)
}

/// Checks that a nontrivial factor of `x^p - 1` prime to `x + 1` has order exactly `p`.
pub fn verify_full_order(f: &Poly, p: u64) -> Result<u64> {
    if !arith::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if f.degree().is_none_or(|d| d == 0) {
        return Err(Error::InvalidQuotient("f must have positive degree"));
    }
    if !Poly::x_n_minus_one(p as usize).is_divisible_by(f) {
        return Err(Error::InvalidQuotient("f does not divide x^p - 1"));
    }
    if !f.eval_at_one() {
        return Err(Error::InvalidQuotient("f has the factor x + 1"));
    }
    let ord = poly::order_dividing(f, p)?;
    if ord != p {
        return Err(Error::Invariant(format!("ord({f}) = {ord}, expected {p}")));
    }
    Ok(ord)
}

/// Parameters of the `(c_l, c_r)-[[n + c_l + c_r, 2k2 - n]]` code built from `C2⊥ ⊆ C2 ⊂ C1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QsyncParams {
    pub n: usize,
    pub c_l: usize,
    pub c_r: usize,
    /// Physical block length `n + c_l + c_r`.
    pub length: usize,
    pub k1: usize,
    pub k2: usize,
    /// Logical dimension `2k2 - n`.
    pub dim_q: usize,
    pub g1: Poly,
    pub g2: Poly,
    pub f: Poly,
    pub ord_f: u64,
    pub d1: Option<usize>,
    pub d2: Option<usize>,
    /// Guaranteed bit-error correction, present only when `d1` is known exactly.
    pub t_bit: Option<usize>,
    /// Guaranteed phase-error correction, present only when `d2` is known exactly.
    pub t_phase: Option<usize>,
}

impl QsyncParams {
    /// Validates the pair and computes distances under the default enumeration cap.
    pub fn new(c1: &CyclicCode, c2: &CyclicCode, c_l: usize, c_r: usize) -> Result<QsyncParams> {
        QsyncParams::derive(c1, c2, c_l, c_r, Some(DEFAULT_DISTANCE_CAP))
    }

    /// Like [`QsyncParams::new`]; `distance_cap = None` skips distance computation.
    pub fn derive(
        c1: &CyclicCode,
        c2: &CyclicCode,
        c_l: usize,
        c_r: usize,
        distance_cap: Option<usize>,
    ) -> Result<QsyncParams> {
        let n = c1.length();
        if c2.length() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                found: c2.length(),
            });
        }
        if !c2.is_dual_containing() || !c1.contains(c2)? || c1 == c2 {
            return Err(Error::ChainCondition);
        }
        let f = sync_quotient(c1, c2)?;
        let ord_f = poly::order_dividing(&f, n as u64)?;
        if (c_l + c_r) as u64 >= ord_f {
            return Err(Error::MisalignmentTooLarge {
                sum: c_l + c_r,
                order: ord_f,
            });
        }
        let (k1, k2) = (c1.dimension(), c2.dimension());
        let dim_q = 2 * k2 as i64 - n as i64;
        if dim_q < 1 {
            return Err(Error::NonpositiveDimension(dim_q));
        }
        let distance = |c: &CyclicCode| -> Option<usize> {
            let cap = distance_cap?;
            if c.dimension() == c.length() {
                return Some(1);
            }
            c.min_distance(cap).ok()
        };
        let d1 = distance(c1);
        let d2 = distance(c2);
        Ok(QsyncParams {
            n,
            c_l,
            c_r,
            length: n + c_l + c_r,
            k1,
            k2,
            dim_q: dim_q as usize,
            g1: c1.generator().clone(),
            g2: c2.generator().clone(),
            f,
            ord_f,
            d1,
            d2,
            t_bit: d1.map(|d| (d - 1) / 2),
            t_phase: d2.map(|d| (d - 1) / 2),
        })
    }

    pub fn outer_code(&self) -> CyclicCode {
        CyclicCode::new(self.n, self.g1.clone()).expect("validated on construction")
    }

    pub fn inner_code(&self) -> CyclicCode {
        CyclicCode::new(self.n, self.g2.clone()).expect("validated on construction")
    }

    /// Largest tolerable `c_l + c_r` for this pair.
    pub fn max_misalignment(&self) -> u64 {
        self.ord_f - 1
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ParameterRow {
    /// Factors deleted from `g_R` to form `C2`; `C1` deletes one more.
    pub z: usize,
    pub k1: usize,
    pub k2: usize,
    pub dim_q: usize,
    pub ord_f: u64,
    pub max_misalignment: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ParameterTable {
    pub l: u32,
    pub p: u64,
    /// Largest admissible `z`, `(2^(l-1) - l - 1) / l`.
    pub z_bound: usize,
    pub rows: Vec<ParameterRow>,
    pub notes: Vec<String>,
}

/// Parameters `(c_l, c_r)-[[p + c_l + c_r, 2zl + 1]]` for each admissible `z`,
/// each row realized by an explicit pair from the Mersenne chain.
pub fn parameter_table(l: u32, z_max: Option<usize>) -> Result<ParameterTable> {
    let chain = mersenne_chain(l)?;
    let p = chain.p();
    let l_us = l as usize;
    let z_bound = (((1usize << (l - 1)) as i64 - l as i64 - 1) / l as i64).max(0) as usize;
    let last = z_max.map_or(z_bound, |z| z.min(z_bound));
    let mut rows = Vec::new();
    for z in 0..=last {
        let (c1, c2) = chain.pair(z, 1)?;
        let c_l = (p as usize - 1) / 2;
        let c_r = p as usize - 1 - c_l;
        let params = QsyncParams::derive(&c1, &c2, c_l, c_r, None)?;
        verify_full_order(&params.f, p)?;
        let expected_k2 = (p as usize + 1) / 2 + z * l_us;
        if params.dim_q != 2 * z * l_us + 1 || params.k2 != expected_k2 || params.ord_f != p {
            return Err(Error::Invariant(format!(
                "row z = {z}: got dim_q = {}, k2 = {}, ord = {}",
                params.dim_q, params.k2, params.ord_f
            )));
        }
        rows.push(ParameterRow {
            z,
            k1: params.k1,
            k2: params.k2,
            dim_q: params.dim_q,
            ord_f: params.ord_f,
            max_misalignment: params.max_misalignment(),
        });
    }
    let notes = match z_max {
        Some(z) if z > z_bound => (z_bound + 1..=z)
            .map(|z| format!("z = {z} exceeds bound {z_bound}; row omitted"))
            .collect(),
        _ => Vec::new(),
    };
    Ok(ParameterTable {
        l,
        p,
        z_bound,
        rows,
        notes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Poly {
        s.parse().unwrap()
    }

    fn m1() -> Poly {
        p("x^5+x^2+1")
    }
    fn m5() -> Poly {
        p("x^5+x^4+x^2+x+1")
    }
    fn m7() -> Poly {
        p("x^5+x^3+x^2+x+1")
    }

    #[test]
    fn chain_l5() {
        let chain = mersenne_chain(5).unwrap();
        let reps: Vec<u64> = chain.factors().iter().map(|f| f.rep).collect();
        assert_eq!(reps, vec![1, 5, 7]);
        let polys: Vec<Poly> = chain.factors().iter().map(|f| f.poly.clone()).collect();
        assert_eq!(polys, vec![m1(), m5(), m7()]);
        let dims: Vec<usize> = chain.codes().iter().map(CyclicCode::dimension).collect();
        assert_eq!(dims, vec![16, 21, 26]);
        assert_eq!(chain.supercode(3).unwrap(), CyclicCode::whole_space(31));
        assert!(chain.supercode(4).is_err());
    }

    #[test]
    fn chain_l3_and_l7() {
        let chain = mersenne_chain(3).unwrap();
        assert_eq!(chain.factors().len(), 1);
        assert_eq!(chain.codes()[0].dimension(), 4);

        let chain = mersenne_chain(7).unwrap();
        assert_eq!(chain.factors().len(), 9);
        for (z, c) in chain.codes().iter().enumerate() {
            assert_eq!(c.dimension(), 64 + 7 * z);
        }
        assert_eq!(mersenne_chain(4).unwrap_err(), Error::NotMersenne { l: 4 });
        assert_eq!(mersenne_chain(11).unwrap_err(), Error::NotMersenne { l: 11 });
    }

    #[test]
    fn chain_is_nested_and_dual_containing() {
        let chain = mersenne_chain(5).unwrap();
        for w in chain.codes().windows(2) {
            assert!(w[1].contains(&w[0]).unwrap());
            assert_ne!(w[0], w[1]);
        }
        for (_, code) in chain.all_subset_codes().unwrap() {
            assert!(code.is_dual_containing());
        }
    }

    #[test]
    fn quotients() {
        let n = 31;
        let g_r = &(&m1() * &m5()) * &m7();
        let c2 = CyclicCode::new(n, g_r.clone()).unwrap();
        let c1 = CyclicCode::new(n, &m5() * &m7()).unwrap();
        assert_eq!(sync_quotient(&c1, &c2).unwrap(), m1());
        let c1 = CyclicCode::new(n, m7()).unwrap();
        let f = sync_quotient(&c1, &c2).unwrap();
        assert_eq!(f, &m1() * &m5());
        assert_eq!(f.degree(), Some(10));
        assert_eq!(sync_quotient(&c2, &c2), Err(Error::NotProperSubcode));
        assert_eq!(sync_quotient(&c2, &c1), Err(Error::NotProperSubcode));
    }

    #[test]
    fn full_order() {
        assert_eq!(verify_full_order(&m1(), 31).unwrap(), 31);
        assert_eq!(verify_full_order(&(&m1() * &m5()), 31).unwrap(), 31);
        assert_eq!(
            verify_full_order(&p("x+1"), 31),
            Err(Error::InvalidQuotient("f has the factor x + 1"))
        );
        assert_eq!(
            verify_full_order(&Poly::one(), 31),
            Err(Error::InvalidQuotient("f must have positive degree"))
        );
        assert_eq!(
            verify_full_order(&p("x^2+x+1"), 31),
            Err(Error::InvalidQuotient("f does not divide x^p - 1"))
        );
    }

    #[test]
    fn params_examples() {
        let chain = mersenne_chain(5).unwrap();
        let (c1, c2) = chain.pair(0, 1).unwrap();
        let params = QsyncParams::new(&c1, &c2, 3, 2).unwrap();
        assert_eq!((params.length, params.dim_q, params.ord_f), (36, 1, 31));
        assert_eq!(params.d1, Some(5));
        assert_eq!(params.d2, Some(7));
        assert_eq!((params.t_bit, params.t_phase), (Some(2), Some(3)));

        let (c1, c2) = chain.pair(1, 1).unwrap();
        let params = QsyncParams::derive(&c1, &c2, 15, 15, None).unwrap();
        assert_eq!((params.length, params.dim_q), (61, 11));
        assert_eq!(params.t_bit, None);

        let family = QrFamily::build(31).unwrap();
        assert_eq!(
            QsyncParams::new(&chain.codes()[1], family.residue_bar_code(), 1, 1),
            Err(Error::ChainCondition)
        );
        let (c1, c2) = chain.pair(0, 1).unwrap();
        assert_eq!(
            QsyncParams::derive(&c1, &c2, 16, 15, None),
            Err(Error::MisalignmentTooLarge { sum: 31, order: 31 })
        );
    }

    #[test]
    fn nonpositive_dimension() {
        // ⟨x+1⟩ of length 2 is self-dual, so 2k2 - n = 0.
        let c2 = CyclicCode::new(2, p("x+1")).unwrap();
        let c1 = CyclicCode::whole_space(2);
        assert_eq!(
            QsyncParams::derive(&c1, &c2, 0, 0, None),
            Err(Error::NonpositiveDimension(0))
        );
    }

    #[test]
    fn table_l5() {
        let table = parameter_table(5, None).unwrap();
        assert_eq!(table.z_bound, 2);
        let dims: Vec<usize> = table.rows.iter().map(|r| r.dim_q).collect();
        assert_eq!(dims, vec![1, 11, 21]);
        assert!(table.rows.iter().all(|r| r.max_misalignment == 30));
        let capped = parameter_table(5, Some(4)).unwrap();
        assert_eq!(capped.rows.len(), 3);
        assert_eq!(capped.notes.len(), 2);
    }

    #[test]
    fn table_l3_and_l7() {
        let table = parameter_table(3, None).unwrap();
        assert_eq!(table.rows.len(), 1);
        assert_eq!(table.rows[0].dim_q, 1);
        assert_eq!(table.rows[0].k1, 7);

        let table = parameter_table(7, None).unwrap();
        assert_eq!(table.z_bound, 8);
        assert_eq!(table.rows[4].dim_q, 57);
    }
}
