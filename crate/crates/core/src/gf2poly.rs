//! Binary polynomials, primitivity testing and enumeration of primitive
//! polynomials.
//!
//! Polynomials are stored as an integer bitmask where bit `i` holds the
//! coefficient of `x^i`, so `0x13` is `1 + x + x^4`. Both the hex form and
//! the symbolic form (`"1+x+x^4"`) are accepted when parsing.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::error::{check_range, Error, Result};

/// Largest degree supported by [`is_primitive`]; `x^(2^k - 1)` must fit the
/// 64-bit exponent used by the order test.
pub const MAX_PRIMITIVE_DEGREE: u32 = 63;

/// Largest degree accepted by [`enumerate_primitives`].
pub const MAX_ENUMERATION_DEGREE: u32 = 24;

/// A polynomial over GF(2) of degree at most 63.
#[derive(Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BitPoly(u64);

impl BitPoly {
    pub const ZERO: BitPoly = BitPoly(0);
    pub const ONE: BitPoly = BitPoly(1);
    pub const X: BitPoly = BitPoly(2);

    pub const fn from_bits(bits: u64) -> Self {
        BitPoly(bits)
    }

    /// Builds a polynomial from the exponents of its nonzero terms.
    /// Repeated exponents cancel.
    pub fn from_exponents(exponents: &[u32]) -> Result<Self> {
        let mut bits = 0u64;
        for &e in exponents {
            if e > 63 {
                return Err(Error::InvalidArgument(format!(
                    "exponent {e} exceeds the maximum degree 63"
                )));
            }
            bits ^= 1 << e;
        }
        Ok(BitPoly(bits))
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    pub const fn is_zero(self) -> bool {
        self.0 == 0
    }

    /// Degree of the polynomial, `None` for the zero polynomial.
    pub fn degree(self) -> Option<u32> {
        if self.0 == 0 {
            None
        } else {
            Some(63 - self.0.leading_zeros())
        }
    }

    /// Coefficient of `x^i`.
    pub fn coeff(self, i: u32) -> bool {
        i < 64 && (self.0 >> i) & 1 == 1
    }

    pub fn weight(self) -> u32 {
        self.0.count_ones()
    }

    /// `x^deg · p(1/x)`, the polynomial with its coefficients reversed.
    pub fn reciprocal(self) -> Self {
        match self.degree() {
            None => self,
            Some(d) => BitPoly(self.0.reverse_bits() >> (63 - d)),
        }
    }

    /// Hex wire format, e.g. `0x13`.
    pub fn to_hex(self) -> String {
        format!("{:#x}", self.0)
    }

    /// Remainder of `self` divided by `m`.
    pub fn rem(self, m: BitPoly) -> Result<BitPoly> {
        let dm = m
            .degree()
            .ok_or_else(|| Error::InvalidArgument("zero modulus".into()))?;
        let mut r = self.0;
        while r != 0 {
            let dr = 63 - r.leading_zeros();
            if dr < dm {
                break;
            }
            r ^= m.0 << (dr - dm);
        }
        Ok(BitPoly(r))
    }
}

impl fmt::Debug for BitPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitPoly({} = {})", self.to_hex(), self)
    }
}

impl fmt::Display for BitPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 == 0 {
            return f.write_str("0");
        }
        let mut first = true;
        for i in 0..64 {
            if !self.coeff(i) {
                continue;
            }
            if !first {
                f.write_str("+")?;
            }
            first = false;
            match i {
                0 => f.write_str("1")?,
                1 => f.write_str("x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::LowerHex for BitPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::LowerHex::fmt(&self.0, f)
    }
}

impl FromStr for BitPoly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let text: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if text.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        if let Some(hex) = text
            .strip_prefix("0x")
            .or_else(|| text.strip_prefix("0X"))
        {
            return u64::from_str_radix(hex, 16)
                .map(BitPoly)
                .map_err(|e| Error::Parse(format!("bad hex polynomial {s:?}: {e}")));
        }
        if text == "0" {
            return Ok(BitPoly::ZERO);
        }
        let mut bits = 0u64;
        for term in text.split('+') {
            let exp = parse_term(term).ok_or_else(|| {
                Error::Parse(format!("bad term {term:?} in polynomial {s:?}"))
            })?;
            if bits >> exp & 1 == 1 {
                return Err(Error::Parse(format!(
                    "repeated term x^{exp} in polynomial {s:?}"
                )));
            }
            bits |= 1 << exp;
        }
        Ok(BitPoly(bits))
    }
}

fn parse_term(term: &str) -> Option<u32> {
    match term {
        "1" => return Some(0),
        "x" | "X" => return Some(1),
        _ => {}
    }
    let rest = term
        .strip_prefix("x^")
        .or_else(|| term.strip_prefix("X^"))?;
    let rest = rest
        .strip_prefix('{')
        .and_then(|r| r.strip_suffix('}'))
        .unwrap_or(rest);
    let e: u32 = rest.parse().ok()?;
    (e <= 63).then_some(e)
}

/// `a·b mod m` for `a, b` already reduced modulo `m` of degree `dm <= 63`.
#[inline]
fn mul_mod_reduced(mut a: u64, mut b: u64, m: u64, dm: u32) -> u64 {
    let top = 1u64 << dm;
    let mut r = 0u64;
    while b != 0 {
        if b & 1 == 1 {
            r ^= a;
        }
        b >>= 1;
        a <<= 1;
        if a & top != 0 {
            a ^= m;
        }
    }
    r
}

/// `(a·b) mod m` over GF(2).
pub fn poly_mul_mod(a: BitPoly, b: BitPoly, m: BitPoly) -> Result<BitPoly> {
    let dm = match m.degree() {
        None => return Err(Error::InvalidArgument("zero modulus".into())),
        Some(0) => return Ok(BitPoly::ZERO),
        Some(d) => d,
    };
    let a = a.rem(m)?.0;
    let b = b.rem(m)?.0;
    Ok(BitPoly(mul_mod_reduced(a, b, m.0, dm)))
}

/// `x^e mod m` for `deg(m) >= 1`.
fn x_pow_mod(mut e: u64, m: u64, dm: u32) -> u64 {
    let mut base = if dm == 1 { 2 ^ m } else { 2 };
    let mut acc = 1u64;
    while e != 0 {
        if e & 1 == 1 {
            acc = mul_mod_reduced(acc, base, m, dm);
        }
        base = mul_mod_reduced(base, base, m, dm);
        e >>= 1;
    }
    acc
}

/// Prime factorization as `(prime, multiplicity)` pairs in ascending order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FactorList(Vec<(u64, u32)>);

impl FactorList {
    pub fn entries(&self) -> &[(u64, u32)] {
        &self.0
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.0.iter().map(|&(p, _)| p)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Product of all prime powers, saturating at `u128::MAX`.
    pub fn product(&self) -> u128 {
        self.0.iter().fold(1u128, |acc, &(p, e)| {
            acc.saturating_mul((p as u128).saturating_pow(e))
        })
    }

    /// Euler's totient of the factored value.
    pub fn totient(&self) -> u64 {
        self.0
            .iter()
            .map(|&(p, e)| (p - 1) * p.pow(e - 1))
            .product()
    }
}

fn mul_mod_u64(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod_u64(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e != 0 {
        if e & 1 == 1 {
            acc = mul_mod_u64(acc, b, m);
        }
        b = mul_mod_u64(b, b, m);
        e >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin, exact for all 64-bit inputs.
pub fn is_prime_u64(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &p in &BASES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &BASES {
        let mut x = pow_mod_u64(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod_u64(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Pollard-Brent rho on an odd composite; the polynomial constant walks
/// 1, 2, 3, ... so the result is deterministic.
fn find_divisor(n: u64) -> u64 {
    if n.is_multiple_of(2) {
        return 2;
    }
    for c in 1u64.. {
        let f = |x: u64| (mul_mod_u64(x, x, n) + c) % n;
        let (mut y, m) = (2u64, 128u64);
        let (mut g, mut r, mut q) = (1u64, 1u64, 1u64);
        let (mut x, mut ys) = (0u64, 0u64);
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                for _ in 0..m.min(r - k) {
                    y = f(y);
                    q = mul_mod_u64(q, x.abs_diff(y), n);
                }
                g = gcd_u64(q, n);
                k += m;
            }
            r *= 2;
        }
        if g == n {
            loop {
                ys = f(ys);
                g = gcd_u64(x.abs_diff(ys), n);
                if g > 1 {
                    break;
                }
            }
        }
        if g != n {
            return g;
        }
    }
    unreachable!("rho exhausted all constants")
}

fn collect_prime_factors(n: u64, out: &mut Vec<u64>) {
    if n == 1 {
        return;
    }
    if is_prime_u64(n) {
        out.push(n);
        return;
    }
    let d = find_divisor(n);
    collect_prime_factors(d, out);
    collect_prime_factors(n / d, out);
}

/// Complete prime factorization of `v`.
pub fn factorize(v: u64) -> Result<FactorList> {
    if v == 0 {
        return Err(Error::InvalidArgument("cannot factorize 0".into()));
    }
    let mut rest = v;
    let mut primes = Vec::new();
    for p in [2u64, 3, 5, 7, 11, 13] {
        while rest.is_multiple_of(p) {
            primes.push(p);
            rest /= p;
        }
    }
    collect_prime_factors(rest, &mut primes);
    primes.sort_unstable();
    let mut list: Vec<(u64, u32)> = Vec::new();
    for p in primes {
        match list.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => list.push((p, 1)),
        }
    }
    Ok(FactorList(list))
}

/// Euler's totient of `v >= 1`.
pub fn totient(v: u64) -> Result<u64> {
    Ok(factorize(v)?.totient())
}

/// Number of primitive polynomials of degree `k`, `φ(2^k - 1) / k`.
pub fn primitive_count(k: u32) -> Result<u64> {
    check_range("k", k as u64, 1, MAX_PRIMITIVE_DEGREE as u64)?;
    Ok(totient((1u64 << k) - 1)? / k as u64)
}

fn check_connection_poly(p: BitPoly) -> Result<u32> {
    let k = p
        .degree()
        .ok_or_else(|| Error::InvalidArgument("zero polynomial".into()))?;
    if k < 2 {
        return Err(Error::InvalidArgument(format!(
            "connection polynomial {p} must have degree at least 2"
        )));
    }
    if !p.coeff(0) {
        return Err(Error::InvalidArgument(format!(
            "connection polynomial {p} has zero constant term"
        )));
    }
    Ok(k)
}

/// Order test with a precomputed factorization of `2^k - 1`.
fn is_primitive_with(p: BitPoly, k: u32, factors: &FactorList) -> bool {
    let order = (1u64 << k) - 1;
    if x_pow_mod(order, p.0, k) != 1 {
        return false;
    }
    factors
        .primes()
        .all(|q| x_pow_mod(order / q, p.0, k) != 1)
}

/// True iff `x` has multiplicative order exactly `2^k - 1` modulo `p`.
pub fn is_primitive(p: BitPoly) -> Result<bool> {
    let k = check_connection_poly(p)?;
    check_range("degree", k as u64, 2, MAX_PRIMITIVE_DEGREE as u64)?;
    let factors = factorize((1u64 << k) - 1)?;
    Ok(is_primitive_with(p, k, &factors))
}

/// All primitive polynomials of degree `k`, ascending by bitmask.
pub fn enumerate_primitives(k: u32) -> Result<Vec<BitPoly>> {
    check_range("k", k as u64, 2, MAX_ENUMERATION_DEGREE as u64)?;
    let factors = factorize((1u64 << k) - 1)?;
    let high = (1u64 << k) | 1;
    Ok((0..1u64 << (k - 1))
        .into_par_iter()
        .map(|mid| BitPoly(high | (mid << 1)))
        .filter(|&p| is_primitive_with(p, k, &factors))
        .collect())
}
