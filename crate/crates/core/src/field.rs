//! Arithmetic in GF(2^t) and minimal polynomials over GF(2).
//!
//! Elements are polynomials of degree below `t`, reduced modulo the context's
//! irreducible modulus. The canonical modulus for a root order `p` is the
//! irreducible polynomial of degree `t = ord_p(2)` with the smallest packed
//! value.

use serde::Serialize;

use crate::arith;
use crate::error::{Error, Result};
use crate::poly::Poly;

/// Largest extension degree for which the root of unity is found by a plain
/// scan over all field elements.
pub const SCAN_DEGREE_LIMIT: u32 = 24;

/// Largest supported extension degree (element exponents are `u128`).
pub const MAX_DEGREE: u32 = 127;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct FieldElem(Poly);

impl FieldElem {
    pub fn rep(&self) -> &Poly {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FieldCtx {
    degree: u32,
    modulus: Poly,
    root_order: u64,
}

impl FieldCtx {
    /// Field containing a primitive `p`-th root of unity, with the canonical modulus.
    pub fn build(p: u64) -> Result<FieldCtx> {
        if !arith::is_prime(p) || p == 2 {
            return Err(Error::NotPrime(p));
        }
        let t = arith::mult_order_of_two(p)?;
        if t > MAX_DEGREE {
            return Err(Error::FieldTooLarge(t));
        }
        Ok(FieldCtx {
            degree: t,
            modulus: smallest_irreducible(t),
            root_order: p,
        })
    }

    /// Field over an explicit modulus; checks irreducibility and `p | 2^t - 1`.
    pub fn with_modulus(modulus: Poly, p: u64) -> Result<FieldCtx> {
        let t = modulus.degree().ok_or(Error::ConstantModulus)?;
        if t == 0 {
            return Err(Error::ConstantModulus);
        }
        if t > MAX_DEGREE as usize {
            return Err(Error::FieldTooLarge(t as u32));
        }
        if !is_irreducible(&modulus) {
            return Err(Error::Reducible { degree: t });
        }
        if p < 2 || group_order(t as u32) % p as u128 != 0 {
            return Err(Error::InvalidModulus(p));
        }
        Ok(FieldCtx {
            degree: t as u32,
            modulus,
            root_order: p,
        })
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn modulus(&self) -> &Poly {
        &self.modulus
    }

    pub fn root_order(&self) -> u64 {
        self.root_order
    }

    pub fn zero(&self) -> FieldElem {
        FieldElem(Poly::zero())
    }

    pub fn one(&self) -> FieldElem {
        FieldElem(Poly::one())
    }

    pub fn elem(&self, rep: &Poly) -> FieldElem {
        FieldElem(rep.rem(&self.modulus).expect("modulus is nonzero"))
    }

    pub fn add(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        FieldElem(&a.0 + &b.0)
    }

    pub fn mul(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        FieldElem(a.0.mul_mod(&b.0, &self.modulus).expect("modulus is nonzero"))
    }

    pub fn pow(&self, a: &FieldElem, e: u128) -> FieldElem {
        FieldElem(a.0.pow_mod(e, &self.modulus).expect("modulus is nonzero"))
    }

    /// `β^p = 1` and `β ≠ 1`; for prime `p` this is order exactly `p`.
    pub fn is_primitive_root_of_unity(&self, beta: &FieldElem) -> bool {
        !beta.is_one() && !beta.is_zero() && self.pow(beta, self.root_order as u128).is_one()
    }

    /// Canonical primitive `p`-th root of unity.
    ///
    /// For `t <= SCAN_DEGREE_LIMIT` this is the element of order `p` with the
    /// smallest packed value. Above that the scan is infeasible, and the root
    /// is `β^((2^t-1)/p)` for the smallest `β` giving a value other than 1.
    pub fn primitive_root_of_unity(&self) -> FieldElem {
        let p = self.root_order as u128;
        if self.degree <= SCAN_DEGREE_LIMIT {
            let size = 1u64 << self.degree;
            for v in 2..size {
                let beta = FieldElem(Poly::from_u64(v));
                if self.pow(&beta, p).is_one() {
                    return beta;
                }
            }
        } else {
            let cofactor = group_order(self.degree) / p;
            let mut v = 2u128;
            loop {
                let gamma = self.pow(&FieldElem(Poly::from_u128(v)), cofactor);
                if !gamma.is_one() {
                    return gamma;
                }
                v += 1;
            }
        }
        unreachable!("p divides 2^t - 1, so an element of order p exists")
    }

    /// `∏ (x - α^i)` over the given exponents, checked to have GF(2) coefficients.
    pub fn product_of_roots(&self, alpha: &FieldElem, exponents: &[u64]) -> Result<Poly> {
        let mut coeffs = vec![self.one()];
        for &i in exponents {
            let root = self.pow(alpha, i as u128);
            let mut next = vec![self.zero(); coeffs.len() + 1];
            for (j, c) in coeffs.iter().enumerate() {
                next[j + 1] = self.add(&next[j + 1], c);
                next[j] = self.add(&next[j], &self.mul(c, &root));
            }
            coeffs = next;
        }
        let mut out = Poly::zero();
        for (j, c) in coeffs.iter().enumerate() {
            match c.rep().degree() {
                None => {}
                Some(0) => out.flip(j),
                Some(_) => {
                    return Err(Error::Invariant(format!(
                        "coefficient of x^{j} lies outside GF(2)"
                    )))
                }
            }
        }
        Ok(out)
    }

    /// Minimal polynomial of `α^s` over GF(2).
    pub fn minimal_polynomial(&self, alpha: &FieldElem, s: u64) -> Result<Poly> {
        let p = self.root_order;
        if s >= p {
            return Err(Error::ExponentOutOfRange { s, p });
        }
        self.product_of_roots(alpha, &arith::cyclotomic_coset(s, p))
    }

    /// Evaluates a GF(2) polynomial at a field element.
    pub fn eval(&self, f: &Poly, at: &FieldElem) -> FieldElem {
        let mut acc = self.zero();
        for e in f.exponents() {
            acc = self.add(&acc, &self.pow(at, e as u128));
        }
        acc
    }
}

/// `2^t - 1`.
fn group_order(t: u32) -> u128 {
    if t >= 128 {
        u128::MAX
    } else {
        (1u128 << t) - 1
    }
}

/// `f` of degree `t` is irreducible iff `x^(2^t) ≡ x (mod f)` and
/// `gcd(x^(2^(t/q)) - x, f) = 1` for every prime `q | t`.
pub fn is_irreducible(f: &Poly) -> bool {
    let Some(t) = f.degree() else { return false };
    if t == 0 {
        return false;
    }
    if t == 1 {
        return true;
    }
    let x = Poly::x();
    let frob = |k: usize| -> Poly {
        let mut acc = x.clone();
        for _ in 0..k {
            acc = acc.mul_mod(&acc, f).expect("nonzero modulus");
        }
        acc
    };
    if frob(t) != x {
        return false;
    }
    arith::prime_factors(t as u64).into_iter().all(|q| {
        let diff = &frob(t / q as usize) + &x;
        Poly::gcd(&diff, f).map(|g| g.is_one()).unwrap_or(false)
    })
}

/// Irreducible polynomial of degree `t` with the smallest packed value.
pub fn smallest_irreducible(t: u32) -> Poly {
    assert!((1..=MAX_DEGREE).contains(&t), "degree {t} out of range");
    if t == 1 {
        return Poly::x();
    }
    let lead = Poly::monomial(t as usize);
    // Candidates without a constant term are divisible by x.
    let mut low = 1u128;
    loop {
        let f = &lead + &Poly::from_u128(low);
        if is_irreducible(&f) {
            return f;
        }
        low += 2;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Poly {
        s.parse().unwrap()
    }

    /// Brute force: no divisor of degree 1..=deg/2.
    fn irreducible_by_trial_division(f: &Poly) -> bool {
        let d = f.degree().unwrap();
        (2u64..1 << (d / 2 + 1))
            .map(Poly::from_u64)
            .filter(|g| g.degree().unwrap() <= d / 2)
            .all(|g| !f.is_divisible_by(&g))
    }

    #[test]
    fn irreducibility_matches_trial_division() {
        for v in 2u64..1 << 11 {
            let f = Poly::from_u64(v);
            if f.degree() == Some(0) {
                continue;
            }
            assert_eq!(is_irreducible(&f), irreducible_by_trial_division(&f), "{f}");
        }
    }

    #[test]
    fn canonical_moduli() {
        assert_eq!(FieldCtx::build(31).unwrap().modulus(), &p("x^5+x^2+1"));
        assert_eq!(FieldCtx::build(7).unwrap().modulus(), &p("x^3+x+1"));
        assert_eq!(FieldCtx::build(3).unwrap().modulus(), &p("x^2+x+1"));
        assert_eq!(FieldCtx::build(31).unwrap().degree(), 5);
        assert_eq!(FieldCtx::build(9), Err(Error::NotPrime(9)));
    }

    #[test]
    fn smallest_irreducible_scan_oracle() {
        for t in 2..=10u32 {
            let expected = ((1u64 << t)..(1 << (t + 1)))
                .map(Poly::from_u64)
                .find(irreducible_by_trial_division)
                .unwrap();
            assert_eq!(smallest_irreducible(t), expected, "t={t}");
        }
    }

    #[test]
    fn canonical_roots() {
        for prime in [3u64, 7, 31] {
            let ctx = FieldCtx::build(prime).unwrap();
            assert_eq!(ctx.primitive_root_of_unity().rep(), &Poly::x(), "p={prime}");
        }
    }

    #[test]
    fn root_has_exact_order() {
        for prime in [3u64, 7, 23, 31, 47, 73, 127] {
            let ctx = FieldCtx::build(prime).unwrap();
            let alpha = ctx.primitive_root_of_unity();
            let mut acc = ctx.one();
            for j in 1..prime {
                acc = ctx.mul(&acc, &alpha);
                assert!(!acc.is_one(), "p={prime} j={j}");
            }
            assert!(ctx.mul(&acc, &alpha).is_one());
        }
    }

    #[test]
    fn large_degree_roots_use_cofactor() {
        for prime in [71u64, 79, 103] {
            let ctx = FieldCtx::build(prime).unwrap();
            assert!(ctx.degree() > SCAN_DEGREE_LIMIT);
            let alpha = ctx.primitive_root_of_unity();
            assert!(ctx.is_primitive_root_of_unity(&alpha));
        }
    }

    #[test]
    fn minimal_polynomials_31() {
        let ctx = FieldCtx::build(31).unwrap();
        let alpha = ctx.primitive_root_of_unity();
        assert_eq!(ctx.minimal_polynomial(&alpha, 0).unwrap(), p("x+1"));
        assert_eq!(ctx.minimal_polynomial(&alpha, 1).unwrap(), p("x^5+x^2+1"));
        assert_eq!(ctx.minimal_polynomial(&alpha, 5).unwrap(), p("x^5+x^4+x^2+x+1"));
        assert_eq!(ctx.minimal_polynomial(&alpha, 7).unwrap(), p("x^5+x^3+x^2+x+1"));
        assert_eq!(
            ctx.minimal_polynomial(&alpha, 31),
            Err(Error::ExponentOutOfRange { s: 31, p: 31 })
        );
    }

    #[test]
    fn minimal_polynomials_factor_x_n_minus_one() {
        for prime in [7u64, 23, 31, 127] {
            let ctx = FieldCtx::build(prime).unwrap();
            let alpha = ctx.primitive_root_of_unity();
            let cosets = arith::cyclotomic_cosets(prime).unwrap();
            let mut prod = Poly::one();
            for coset in &cosets.cosets {
                let m = ctx.minimal_polynomial(&alpha, coset[0]).unwrap();
                assert_eq!(m.degree(), Some(coset.len()));
                assert!(ctx.eval(&m, &ctx.pow(&alpha, coset[0] as u128)).is_zero());
                assert!(is_irreducible(&m));
                prod = &prod * &m;
            }
            assert_eq!(prod, Poly::x_n_minus_one(prime as usize), "p={prime}");
        }
    }

    #[test]
    fn explicit_modulus_validation() {
        assert!(FieldCtx::with_modulus(p("x^5+x^2+1"), 31).is_ok());
        assert_eq!(
            FieldCtx::with_modulus(p("x^5+x+1"), 31),
            Err(Error::Reducible { degree: 5 })
        );
        assert_eq!(
            FieldCtx::with_modulus(p("x^5+x^2+1"), 7),
            Err(Error::InvalidModulus(7))
        );
    }
}
