//! Polynomials over GF(2), bit-packed into 64-bit words.
//!
//! Bit `i` of the packed representation is the coefficient of `x^i`. The
//! word vector never carries trailing zero words, so structural equality is
//! coefficient equality and the zero polynomial is the empty vector.
//!
//! ```text
//! 0b1011  → x^3+x+1
//! 0x90c7  → x^15+x^12+x^7+x^6+x^2+x+1
//! ```

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul};
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::arith;
use crate::error::{Error, Result};

const WORD_BITS: usize = 64;

#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Poly {
    words: Vec<u64>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { words: Vec::new() }
    }

    pub fn one() -> Self {
        Poly { words: vec![1] }
    }

    pub fn x() -> Self {
        Poly { words: vec![2] }
    }

    /// `x^k`.
    pub fn monomial(k: usize) -> Self {
        let mut words = vec![0; k / WORD_BITS + 1];
        words[k / WORD_BITS] = 1 << (k % WORD_BITS);
        Poly { words }
    }

    /// `x^n + 1`, which is `x^n - 1` over GF(2).
    pub fn x_n_minus_one(n: usize) -> Self {
        let mut p = Poly::monomial(n);
        p.flip(0);
        p
    }

    pub fn from_u64(bits: u64) -> Self {
        Poly::from_words(vec![bits])
    }

    pub fn from_u128(bits: u128) -> Self {
        Poly::from_words(vec![bits as u64, (bits >> 64) as u64])
    }

    pub fn from_words(words: Vec<u64>) -> Self {
        let mut p = Poly { words };
        p.normalize();
        p
    }

    /// Builds a polynomial from a list of exponents. Repeated exponents cancel.
    pub fn from_exponents<I: IntoIterator<Item = usize>>(exponents: I) -> Self {
        let mut p = Poly::zero();
        for e in exponents {
            p.flip(e);
        }
        p
    }

    pub fn from_bits(bits: &[bool]) -> Self {
        let mut words = vec![0u64; bits.len().div_ceil(WORD_BITS)];
        for (i, &b) in bits.iter().enumerate() {
            if b {
                words[i / WORD_BITS] |= 1 << (i % WORD_BITS);
            }
        }
        Poly::from_words(words)
    }

    /// Coefficient vector of fixed length `len`; coefficients at or above `len` are dropped.
    pub fn to_bits(&self, len: usize) -> Vec<bool> {
        (0..len).map(|i| self.coeff(i)).collect()
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    /// The packed value when the polynomial fits in one word.
    pub fn to_u64(&self) -> Option<u64> {
        match self.words.len() {
            0 => Some(0),
            1 => Some(self.words[0]),
            _ => None,
        }
    }

    pub fn to_u128(&self) -> Option<u128> {
        match self.words.len() {
            0 => Some(0),
            1 => Some(self.words[0] as u128),
            2 => Some(self.words[0] as u128 | (self.words[1] as u128) << 64),
            _ => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.words == [1]
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        let top = *self.words.last()?;
        Some((self.words.len() - 1) * WORD_BITS + (WORD_BITS - 1 - top.leading_zeros() as usize))
    }

    pub fn coeff(&self, i: usize) -> bool {
        self.words
            .get(i / WORD_BITS)
            .is_some_and(|w| w >> (i % WORD_BITS) & 1 == 1)
    }

    /// Toggles the coefficient of `x^i`.
    pub fn flip(&mut self, i: usize) {
        let w = i / WORD_BITS;
        if w >= self.words.len() {
            self.words.resize(w + 1, 0);
        }
        self.words[w] ^= 1 << (i % WORD_BITS);
        self.normalize();
    }

    /// Number of nonzero coefficients.
    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Exponents with nonzero coefficient, ascending.
    pub fn exponents(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.weight());
        for (wi, &w) in self.words.iter().enumerate() {
            let mut w = w;
            while w != 0 {
                out.push(wi * WORD_BITS + w.trailing_zeros() as usize);
                w &= w - 1;
            }
        }
        out
    }

    pub fn constant_term(&self) -> bool {
        self.coeff(0)
    }

    /// Value at `x = 1`, i.e. weight parity.
    pub fn eval_at_one(&self) -> bool {
        self.weight() % 2 == 1
    }

    /// GF(2) inner product of the coefficient vectors.
    pub fn dot(&self, other: &Poly) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones())
            .sum::<u32>()
            % 2
            == 1
    }

    fn normalize(&mut self) {
        while self.words.last() == Some(&0) {
            self.words.pop();
        }
    }

    /// Multiplication by `x^k`.
    pub fn shl(&self, k: usize) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut words = vec![0u64; self.words.len() + k / WORD_BITS + 1];
        xor_shifted(&mut words, &self.words, k);
        Poly::from_words(words)
    }

    /// Keeps only the coefficients below `x^len`.
    pub fn truncate(&self, len: usize) -> Poly {
        let mut words: Vec<u64> = self.words.iter().take(len.div_ceil(WORD_BITS)).copied().collect();
        if len % WORD_BITS != 0 {
            if let Some(last) = words.get_mut(len / WORD_BITS) {
                *last &= (1u64 << (len % WORD_BITS)) - 1;
            }
        }
        Poly::from_words(words)
    }

    /// Reciprocal `x^deg · p(1/x)`; zero maps to zero.
    pub fn reciprocal(&self) -> Poly {
        match self.degree() {
            None => Poly::zero(),
            Some(d) => Poly::from_exponents(self.exponents().into_iter().map(|e| d - e)),
        }
    }

    pub fn divrem(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        let db = divisor.degree().ok_or(Error::DivisionByZero)?;
        let Some(da) = self.degree() else {
            return Ok((Poly::zero(), Poly::zero()));
        };
        if da < db {
            return Ok((Poly::zero(), self.clone()));
        }
        let mut rem = self.words.clone();
        let mut quot = vec![0u64; (da - db) / WORD_BITS + 1];
        for top in (db..=da).rev() {
            if rem[top / WORD_BITS] >> (top % WORD_BITS) & 1 == 1 {
                let shift = top - db;
                quot[shift / WORD_BITS] |= 1 << (shift % WORD_BITS);
                xor_shifted(&mut rem, &divisor.words, shift);
            }
        }
        Ok((Poly::from_words(quot), Poly::from_words(rem)))
    }

    pub fn rem(&self, divisor: &Poly) -> Result<Poly> {
        let db = divisor.degree().ok_or(Error::DivisionByZero)?;
        let Some(da) = self.degree() else {
            return Ok(Poly::zero());
        };
        if da < db {
            return Ok(self.clone());
        }
        let mut rem = self.words.clone();
        for top in (db..=da).rev() {
            if rem[top / WORD_BITS] >> (top % WORD_BITS) & 1 == 1 {
                xor_shifted(&mut rem, &divisor.words, top - db);
            }
        }
        Ok(Poly::from_words(rem))
    }

    /// True when `divisor` divides `self` exactly. The zero polynomial divides only zero.
    pub fn is_divisible_by(&self, divisor: &Poly) -> bool {
        if divisor.is_zero() {
            return self.is_zero();
        }
        self.rem(divisor).map(|r| r.is_zero()).unwrap_or(false)
    }

    pub fn mul_mod(&self, other: &Poly, modulus: &Poly) -> Result<Poly> {
        (self * other).rem(modulus)
    }

    /// `self^e mod modulus` by square-and-multiply.
    pub fn pow_mod(&self, e: u128, modulus: &Poly) -> Result<Poly> {
        if modulus.degree().is_none() {
            return Err(Error::DivisionByZero);
        }
        let base = self.rem(modulus)?;
        let mut acc = Poly::one().rem(modulus)?;
        for bit in (0..128 - e.leading_zeros()).rev() {
            acc = acc.mul_mod(&acc, modulus)?;
            if e >> bit & 1 == 1 {
                acc = acc.mul_mod(&base, modulus)?;
            }
        }
        Ok(acc)
    }

    pub fn gcd(a: &Poly, b: &Poly) -> Result<Poly> {
        if a.is_zero() && b.is_zero() {
            return Err(Error::GcdOfZeros);
        }
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r;
        }
        Ok(a)
    }

    /// Lowercase hex of the packed value (bit `i` is the coefficient of `x^i`), no prefix.
    pub fn to_hex(&self) -> String {
        let Some((top, rest)) = self.words.split_last() else {
            return "0".to_string();
        };
        let mut s = format!("{top:x}");
        for w in rest.iter().rev() {
            s.push_str(&format!("{w:016x}"));
        }
        s
    }

    /// Parses the hex form; an optional `0x` prefix and either case are accepted.
    pub fn from_hex(s: &str) -> Result<Poly> {
        let s = s.trim();
        let digits = s
            .strip_prefix("0x")
            .or_else(|| s.strip_prefix("0X"))
            .unwrap_or(s);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_hexdigit()) {
            return Err(Error::Parse(format!("invalid hex polynomial {s:?}")));
        }
        let bytes = digits.as_bytes();
        let mut words = Vec::with_capacity(bytes.len().div_ceil(16));
        let mut end = bytes.len();
        while end > 0 {
            let start = end.saturating_sub(16);
            let chunk = std::str::from_utf8(&bytes[start..end]).expect("ascii hex digits");
            words.push(u64::from_str_radix(chunk, 16).expect("validated hex digits"));
            end = start;
        }
        Ok(Poly::from_words(words))
    }

    /// Parses either the textual form or a `0x`-prefixed hex form.
    pub fn parse_any(s: &str) -> Result<Poly> {
        let t = s.trim();
        if t.starts_with("0x") || t.starts_with("0X") {
            Poly::from_hex(t)
        } else {
            t.parse()
        }
    }
}

/// `dst ^= src << shift`, where `dst` is long enough to hold every set bit of the result.
fn xor_shifted(dst: &mut [u64], src: &[u64], shift: usize) {
    let ws = shift / WORD_BITS;
    let bs = shift % WORD_BITS;
    if bs == 0 {
        for (i, &w) in src.iter().enumerate() {
            dst[i + ws] ^= w;
        }
    } else {
        for (i, &w) in src.iter().enumerate() {
            dst[i + ws] ^= w << bs;
            let hi = w >> (WORD_BITS - bs);
            if hi != 0 {
                dst[i + ws + 1] ^= hi;
            }
        }
    }
}

/// 64x64 -> 128 bit carry-less product.
#[inline]
pub(crate) fn clmul64(a: u64, b: u64) -> u128 {
    #[cfg(target_arch = "x86_64")]
    {
        if std::arch::is_x86_feature_detected!("pclmulqdq") {
            // SAFETY: the required CPU feature was detected at runtime.
            return unsafe { clmul64_pclmul(a, b) };
        }
    }
    clmul64_portable(a, b)
}

#[cfg(target_arch = "x86_64")]
#[target_feature(enable = "pclmulqdq")]
unsafe fn clmul64_pclmul(a: u64, b: u64) -> u128 {
    use std::arch::x86_64::{__m128i, _mm_clmulepi64_si128, _mm_set_epi64x};
    let r = _mm_clmulepi64_si128(_mm_set_epi64x(0, a as i64), _mm_set_epi64x(0, b as i64), 0x00);
    std::mem::transmute::<__m128i, u128>(r)
}

#[inline]
pub(crate) fn clmul64_portable(a: u64, b: u64) -> u128 {
    let a = a as u128;
    let mut b = b;
    let mut r = 0u128;
    while b != 0 {
        r ^= a << b.trailing_zeros();
        b &= b - 1;
    }
    r
}

impl Add for &Poly {
    type Output = Poly;

    fn add(self, rhs: &Poly) -> Poly {
        let (long, short) = if self.words.len() >= rhs.words.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut words = long.words.clone();
        for (w, s) in words.iter_mut().zip(&short.words) {
            *w ^= s;
        }
        Poly::from_words(words)
    }
}

impl Add for Poly {
    type Output = Poly;

    fn add(self, rhs: Poly) -> Poly {
        &self + &rhs
    }
}

impl AddAssign<&Poly> for Poly {
    fn add_assign(&mut self, rhs: &Poly) {
        if self.words.len() < rhs.words.len() {
            self.words.resize(rhs.words.len(), 0);
        }
        for (w, s) in self.words.iter_mut().zip(&rhs.words) {
            *w ^= s;
        }
        self.normalize();
    }
}

impl Mul for &Poly {
    type Output = Poly;

    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![0u64; self.words.len() + rhs.words.len()];
        for (i, &a) in self.words.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.words.iter().enumerate() {
                let p = clmul64(a, b);
                out[i + j] ^= p as u64;
                out[i + j + 1] ^= (p >> 64) as u64;
            }
        }
        Poly::from_words(out)
    }
}

impl Mul for Poly {
    type Output = Poly;

    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

/// Orders polynomials by their packed value read as an unsigned integer.
impl Ord for Poly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.words
            .len()
            .cmp(&other.words.len())
            .then_with(|| self.words.iter().rev().cmp(other.words.iter().rev()))
    }
}

impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Descending powers, e.g. `x^15+x^12+x^7+x^6+x^2+x+1`; `0` for the zero polynomial.
impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for e in self.exponents().into_iter().rev() {
            if !first {
                f.write_str("+")?;
            }
            first = false;
            match e {
                0 => f.write_str("1")?,
                1 => f.write_str("x")?,
                _ => write!(f, "x^{e}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

impl FromStr for Poly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Poly> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        if compact == "0" {
            return Ok(Poly::zero());
        }
        let mut p = Poly::zero();
        for term in compact.split('+') {
            let e = match term {
                "1" => 0,
                "x" => 1,
                _ => term
                    .strip_prefix("x^")
                    .and_then(|d| d.parse::<usize>().ok())
                    .ok_or_else(|| Error::Parse(format!("invalid term {term:?} in {s:?}")))?,
            };
            p.flip(e);
        }
        Ok(p)
    }
}

impl Serialize for Poly {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Poly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Poly, D::Error> {
        let s = String::deserialize(deserializer)?;
        Poly::parse_any(&s).map_err(serde::de::Error::custom)
    }
}

/// `x^a mod f`, by square-and-multiply.
pub fn mod_pow_x(a: u64, f: &Poly) -> Result<Poly> {
    match f.degree() {
        None | Some(0) => Err(Error::ConstantModulus),
        Some(_) => Poly::x().pow_mod(a as u128, f),
    }
}

fn check_order_input(f: &Poly) -> Result<()> {
    match f.degree() {
        None | Some(0) => Err(Error::ConstantModulus),
        Some(_) if !f.constant_term() => Err(Error::OrderUndefined),
        Some(_) => Ok(()),
    }
}

/// Smallest `a >= 1` with `x^a ≡ 1 (mod f)`, searching no further than `cap`.
///
/// Steps through successive powers of `x`; use [`order_dividing`] when a
/// multiple of the order is known.
pub fn order(f: &Poly, cap: u64) -> Result<u64> {
    check_order_input(f)?;
    let d = f.degree().unwrap_or(0);
    let mut cur = Poly::x().rem(f)?;
    let mut a = 1u64;
    while !cur.is_one() {
        if a >= cap {
            return Err(Error::OrderExceedsCap { cap });
        }
        cur = cur.shl(1);
        if cur.coeff(d) {
            cur += f;
        }
        a += 1;
    }
    Ok(a)
}

/// Order of `f` given that `f | x^n - 1`: the smallest divisor `d` of `n` with `x^d ≡ 1`.
pub fn order_dividing(f: &Poly, n: u64) -> Result<u64> {
    check_order_input(f)?;
    if n == 0 || !mod_pow_x(n, f)?.is_one() {
        return Err(Error::NotAnOrderMultiple { n });
    }
    let mut ord = n;
    for q in arith::prime_factors(n) {
        while ord % q == 0 && mod_pow_x(ord / q, f)?.is_one() {
            ord /= q;
        }
    }
    Ok(ord)
}
