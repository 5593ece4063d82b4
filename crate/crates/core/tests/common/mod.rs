//! Randomized property checks shared by the `properties` and `acceptance` targets.
//!
//! Every check runs on a deterministic proptest RNG so failures reproduce.

#![allow(dead_code)]

use std::collections::HashSet;
use std::sync::OnceLock;

use proptest::prelude::*;
use proptest::test_runner::{Config, TestRng, TestRunner};
use qsync_core::arith;
use qsync_core::chain::{mersenne_chain, sync_quotient, FactorChain};
use qsync_core::cyclic::{cyclic_shift, CyclicCode};
use qsync_core::poly::{self, Poly};
use qsync_core::syncsim::misalignment_table;
use qsync_core::Error;

pub fn runner(cases: u32) -> TestRunner {
    let config = Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    };
    let rng = TestRng::deterministic_rng(config.rng_algorithm);
    TestRunner::new_with_rng(config, rng)
}

fn report<T: std::fmt::Debug>(r: Result<(), proptest::test_runner::TestError<T>>) -> Result<(), String> {
    r.map_err(|e| e.to_string())
}

/// Polynomials of degree up to ~250, including zero and short ones.
pub fn arb_poly() -> impl Strategy<Value = Poly> {
    (prop::collection::vec(any::<u64>(), 0..=4), 0usize..=256)
        .prop_map(|(words, len)| Poly::from_words(words).truncate(len))
}

/// Schoolbook product over exponent sets, independent of the packed multiplier.
pub fn mul_oracle(a: &Poly, b: &Poly) -> Poly {
    let mut out = HashSet::new();
    for i in a.exponents() {
        for j in b.exponents() {
            if !out.insert(i + j) {
                out.remove(&(i + j));
            }
        }
    }
    Poly::from_exponents(out)
}

pub const LENGTHS: [usize; 12] = [7, 9, 15, 17, 21, 23, 31, 45, 63, 73, 127, 129];

/// A random proper, nonzero cyclic code: `gcd(r, x^n - 1)` for random `r`.
pub fn arb_code() -> impl Strategy<Value = CyclicCode> {
    (prop::sample::select(LENGTHS.to_vec()), arb_poly()).prop_filter_map("trivial divisor", |(n, r)| {
        let g = Poly::gcd(&r.truncate(n), &Poly::x_n_minus_one(n)).ok()?;
        if g.is_one() || g.degree() == Some(n) {
            return None;
        }
        CyclicCode::new(n, g).ok()
    })
}

pub fn ring_axioms(cases: u32) -> Result<(), String> {
    report(runner(cases).run(&(arb_poly(), arb_poly(), arb_poly()), |(a, b, c)| {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert!((&a + &a).is_zero());
        prop_assert_eq!(&a + &Poly::zero(), a.clone());
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &Poly::one(), a.clone());
        prop_assert_eq!(&a * &b, mul_oracle(&a, &b));
        Ok(())
    }))
}

pub fn divrem_roundtrip(cases: u32) -> Result<(), String> {
    report(runner(cases).run(&(arb_poly(), arb_poly()), |(a, b)| {
        match a.divrem(&b) {
            Err(e) => {
                prop_assert!(b.is_zero());
                prop_assert_eq!(e, Error::DivisionByZero);
            }
            Ok((q, r)) => {
                prop_assert_eq!(&(&q * &b) + &r, a.clone());
                if let Some(dr) = r.degree() {
                    prop_assert!(dr < b.degree().unwrap());
                }
            }
        }
        Ok(())
    }))
}

pub fn dual_involution(cases: u32) -> Result<(), String> {
    report(runner(cases).run(&arb_code(), |c| {
        let d = c.dual();
        prop_assert_eq!(d.dimension(), c.length() - c.dimension());
        prop_assert_eq!(d.dual(), c.clone());
        // Generator rows of C and its dual are pairwise orthogonal.
        let rows = c.generator_rows();
        for dr in d.generator_rows() {
            for r in &rows {
                prop_assert!(!r.dot(&dr));
            }
        }
        Ok(())
    }))
}

pub fn cyclic_shift_closure(cases: u32) -> Result<(), String> {
    let strat = arb_code().prop_flat_map(|c| {
        let k = c.dimension();
        let n = c.length() as i64;
        (Just(c), arb_poly().prop_map(move |m| m.truncate(k)), -n..=n)
    });
    report(runner(cases).run(&strat, |(c, m, s)| {
        let w = c.encode(&m).unwrap();
        let shifted = cyclic_shift(&w, c.length(), s);
        prop_assert!(c.is_codeword(&shifted));
        let h = c.parity_check().unwrap();
        prop_assert!(h.syndrome(&shifted).unwrap().is_zero());
        Ok(())
    }))
}

pub fn coset_partition(cases: u32) -> Result<(), String> {
    let strat = (1u64..1000).prop_map(|h| 2 * h + 1);
    report(runner(cases).run(&strat, |n| {
        let part = arith::cyclotomic_cosets(n).unwrap();
        let mut seen = vec![false; n as usize];
        for coset in &part.cosets {
            let members: HashSet<u64> = coset.iter().copied().collect();
            prop_assert_eq!(members.len(), coset.len());
            for &s in coset {
                prop_assert!(!seen[s as usize], "{} in two cosets", s);
                seen[s as usize] = true;
                prop_assert!(members.contains(&(2 * s % n)));
            }
        }
        prop_assert!(seen.iter().all(|&b| b));
        Ok(())
    }))
}

pub fn chains() -> &'static [FactorChain] {
    static CHAINS: OnceLock<Vec<FactorChain>> = OnceLock::new();
    CHAINS.get_or_init(|| [3, 5, 7].map(|l| mersenne_chain(l).unwrap()).to_vec())
}

pub fn misalignment_injectivity(cases: u32) -> Result<(), String> {
    let strat = (0usize..3, any::<u64>(), any::<u64>(), any::<u64>());
    report(runner(cases).run(&strat, |(which, a, b, c)| {
        let chain = &chains()[which];
        let m = chain.factors().len();
        let z = (a % m as u64) as usize;
        let y = 1 + (b % (m - z) as u64) as usize;
        let (c1, c2) = chain.pair(z, y).unwrap();
        let f = sync_quotient(&c1, &c2).unwrap();
        let n = c1.length();
        let ord = poly::order_dividing(&f, n as u64).unwrap() as usize;
        let sum = (c % ord as u64) as usize;
        let c_l = (a as usize) % (sum + 1);
        let c_r = sum - c_l;

        let table = misalignment_table(&f, n, c_l, c_r).unwrap();
        prop_assert_eq!(table.len(), sum + 1);
        let residues: HashSet<&Poly> = table.iter().map(|(_, r)| r).collect();
        prop_assert_eq!(residues.len(), table.len());
        for (theta, r) in &table {
            let e = (-theta).rem_euclid(n as i64) as usize;
            prop_assert_eq!(r, &Poly::monomial(e).divrem(&f).unwrap().1);
        }
        prop_assert_eq!(
            misalignment_table(&f, n, c_l, ord - c_l),
            Err(Error::MisalignmentTooLarge { sum: ord, order: ord as u64 })
        );
        Ok(())
    }))
}

/// The six suites, in a fixed order.
pub const SUITES: [(&str, fn(u32) -> Result<(), String>); 6] = [
    ("polynomial ring axioms", ring_axioms),
    ("divrem round-trip", divrem_roundtrip),
    ("dual involution", dual_involution),
    ("cyclic-shift closure", cyclic_shift_closure),
    ("coset partition", coset_partition),
    ("misalignment-table injectivity", misalignment_injectivity),
];
