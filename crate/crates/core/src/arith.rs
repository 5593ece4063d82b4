//! Integer helpers: primality, quadratic residues, cyclotomic cosets of 2.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Deterministic trial division.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Distinct prime factors, ascending.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Nonzero quadratic residues and non-residues modulo an odd prime.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResidueClasses {
    pub p: u64,
    /// Sorted ascending.
    pub qr: Vec<u64>,
    /// Sorted ascending.
    pub qnr: Vec<u64>,
}

impl ResidueClasses {
    pub fn is_residue(&self, i: u64) -> bool {
        self.qr.binary_search(&(i % self.p)).is_ok()
    }
}

/// Residue classes for a prime `p ≡ ±1 (mod 8)`, the lengths for which binary
/// QR codes exist.
pub fn quadratic_residues(p: u64) -> Result<ResidueClasses> {
    if !is_prime(p) || p == 2 {
        return Err(Error::NotPrime(p));
    }
    if p % 8 != 1 && p % 8 != 7 {
        return Err(Error::QrCondition { p });
    }
    let mut is_qr = vec![false; p as usize];
    for x in 1..=(p - 1) / 2 {
        is_qr[(x * x % p) as usize] = true;
    }
    let (qr, qnr): (Vec<u64>, Vec<u64>) = (1..p).partition(|&i| is_qr[i as usize]);
    Ok(ResidueClasses { p, qr, qnr })
}

/// Partition of `{0, .., n-1}` into cyclotomic cosets `{s, 2s, 4s, ..} mod n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CosetPartition {
    pub n: u64,
    /// Ordered by representative; elements in generation order `s, 2s, 4s, ...`.
    pub cosets: Vec<Vec<u64>>,
}

impl CosetPartition {
    /// Smallest element of each coset, ascending.
    pub fn reps(&self) -> Vec<u64> {
        self.cosets.iter().map(|c| c[0]).collect()
    }

    pub fn coset_of(&self, s: u64) -> Option<&[u64]> {
        let s = s % self.n;
        self.cosets
            .iter()
            .find(|c| c.contains(&s))
            .map(Vec::as_slice)
    }

    pub fn rep_of(&self, s: u64) -> Option<u64> {
        self.coset_of(s).map(|c| c[0])
    }
}

/// The coset of `s` modulo odd `n`, in generation order.
pub fn cyclotomic_coset(s: u64, n: u64) -> Vec<u64> {
    let start = s % n;
    let mut out = vec![start];
    let mut cur = start * 2 % n;
    while cur != start {
        out.push(cur);
        cur = cur * 2 % n;
    }
    out
}

pub fn cyclotomic_cosets(n: u64) -> Result<CosetPartition> {
    if n < 3 || n % 2 == 0 {
        return Err(Error::InvalidModulus(n));
    }
    let mut seen = vec![false; n as usize];
    let mut cosets = Vec::new();
    for s in 0..n {
        if seen[s as usize] {
            continue;
        }
        let coset = cyclotomic_coset(s, n);
        for &c in &coset {
            seen[c as usize] = true;
        }
        cosets.push(coset);
    }
    Ok(CosetPartition { n, cosets })
}

/// Multiplicative order of 2 modulo odd `n`.
pub fn mult_order_of_two(n: u64) -> Result<u32> {
    if n < 3 || n % 2 == 0 {
        return Err(Error::InvalidModulus(n));
    }
    let mut t = 1u32;
    let mut v = 2 % n;
    while v != 1 {
        v = v * 2 % n;
        t += 1;
    }
    Ok(t)
}

/// `l` when `p` is a prime of the form `2^l - 1`.
pub fn is_mersenne_prime_exponent(p: u64) -> Option<u32> {
    let next = p.checked_add(1)?;
    (next.is_power_of_two() && is_prime(p)).then(|| next.trailing_zeros())
}
