//! LFSR sequence generation and PR code construction.
//!
//! A message `m` (bit `i` of the integer is `m_i`) is loaded as the first
//! `k` sequence bits, so the generator matrix is systematic and each nonzero
//! message corresponds to one phase of the m-sequence.

use std::collections::HashSet;
use std::fmt::Write as _;

use crate::bits::BitRow;
use crate::error::{check_range, Error, Result};
use crate::gf2poly::{is_primitive, BitPoly};

/// Largest dimension for which the full codeword set is materialized.
pub const MAX_ENUMERATION_DIM: u32 = 24;

/// Output of the LFSR with connection polynomial `p` started from `init`:
/// `c_t = init_t` for `t < k`, then `c_t = Σ_{i=1..k} p_i c_{t-i}` over GF(2).
pub fn lfsr_subsequence(p: BitPoly, init: &[bool], n: usize) -> Result<BitRow> {
    let k = p
        .degree()
        .filter(|&d| d >= 1)
        .ok_or_else(|| Error::InvalidArgument(format!("connection polynomial {p} has degree < 1")))?
        as usize;
    if init.len() != k {
        return Err(Error::InvalidArgument(format!(
            "initial state has {} bits, expected {k}",
            init.len()
        )));
    }
    if n == 0 {
        return Err(Error::InvalidArgument("sequence length must be at least 1".into()));
    }
    let taps = p.bits() >> 1;
    let mask = if k == 64 { u64::MAX } else { (1u64 << k) - 1 };
    // bit 0 holds c_{t-1}, bit k-1 holds c_{t-k}
    let mut window = 0u64;
    for &b in init {
        window = (window << 1) | b as u64;
    }
    let mut out = BitRow::zeros(n);
    for (t, &b) in init.iter().enumerate().take(n) {
        out.set(t, b);
    }
    for t in k..n {
        let c = (window & taps).count_ones() & 1 == 1;
        out.set(t, c);
        window = ((window << 1) | c as u64) & mask;
    }
    Ok(out)
}

/// Low `k` bits of `message` as an LFSR initial state.
pub fn message_bits(message: u64, k: u32) -> Vec<bool> {
    (0..k).map(|i| message >> i & 1 == 1).collect()
}

/// An `(n, k)` primitive rateless code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrCode {
    poly: BitPoly,
    k: u32,
    n: usize,
    rows: Vec<BitRow>,
}

/// Builds the PR code of length `n` for the primitive polynomial `p`.
/// Lengths beyond the period `2^k - 1` are allowed and repeat coordinates.
pub fn build_code(p: BitPoly, n: usize) -> Result<PrCode> {
    if !is_primitive(p)? {
        return Err(Error::InvalidArgument(format!("{p} ({}) is not primitive", p.to_hex())));
    }
    let k = p.degree().unwrap();
    if n < k as usize {
        return Err(Error::InvalidArgument(format!(
            "block length {n} is shorter than the dimension {k}"
        )));
    }
    let rows = (0..k)
        .map(|i| lfsr_subsequence(p, &message_bits(1 << i, k), n))
        .collect::<Result<Vec<_>>>()?;
    Ok(PrCode { poly: p, k, n, rows })
}

impl PrCode {
    pub fn poly(&self) -> BitPoly {
        self.poly
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rate(&self) -> f64 {
        self.k as f64 / self.n as f64
    }

    /// Generator rows; row `i` is the sequence started from the `i`-th unit state.
    pub fn generator_rows(&self) -> &[BitRow] {
        &self.rows
    }

    /// `m·G` over GF(2).
    pub fn encode(&self, message: u64) -> BitRow {
        let mut cw = BitRow::zeros(self.n);
        for (i, row) in self.rows.iter().enumerate() {
            if message >> i & 1 == 1 {
                cw.xor_assign(row);
            }
        }
        cw
    }

    /// Visits all `2^k` codewords in Gray-code order as `(message, codeword)`.
    pub fn for_each_codeword<F: FnMut(u64, &BitRow)>(&self, mut f: F) {
        let mut cw = BitRow::zeros(self.n);
        let mut msg = 0u64;
        f(msg, &cw);
        for step in 1..1u64 << self.k {
            let bit = step.trailing_zeros() as usize;
            msg ^= 1 << bit;
            cw.xor_assign(&self.rows[bit]);
            f(msg, &cw);
        }
    }

    /// All `2^k` codewords.
    pub fn codeword_set(&self) -> Result<HashSet<BitRow>> {
        check_range("k", self.k as u64, 1, MAX_ENUMERATION_DIM as u64)?;
        let mut set = HashSet::with_capacity(1 << self.k);
        self.for_each_codeword(|_, cw| {
            set.insert(cw.clone());
        });
        Ok(set)
    }

    /// Smallest nonzero codeword weight.
    pub fn min_distance(&self) -> Result<u32> {
        check_range("k", self.k as u64, 1, MAX_ENUMERATION_DIM as u64)?;
        let mut d = u32::MAX;
        self.for_each_codeword(|m, cw| {
            if m != 0 {
                d = d.min(cw.weight());
            }
        });
        Ok(d)
    }

    /// Text form: header `k n poly_hex` followed by one hex line per
    /// generator row.
    pub fn to_text(&self) -> String {
        let mut s = format!("{} {} {}\n", self.k, self.n, self.poly.to_hex());
        for row in &self.rows {
            writeln!(s, "{}", row.to_hex()).unwrap();
        }
        s
    }

    /// Parses [`PrCode::to_text`] output; the rows must agree with the
    /// code rebuilt from the header.
    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("empty code description".into()))?;
        let fields: Vec<&str> = header.split_whitespace().collect();
        let [k, n, poly] = fields[..] else {
            return Err(Error::Parse(format!("bad header {header:?}, expected `k n poly_hex`")));
        };
        let k: u32 = k
            .parse()
            .map_err(|_| Error::Parse(format!("bad dimension {k:?}")))?;
        let n: usize = n
            .parse()
            .map_err(|_| Error::Parse(format!("bad length {n:?}")))?;
        let code = build_code(poly.parse()?, n)?;
        if code.k != k {
            return Err(Error::Parse(format!(
                "header dimension {k} disagrees with polynomial degree {}",
                code.k
            )));
        }
        let rows = lines
            .map(|l| BitRow::from_hex(l, n))
            .collect::<Result<Vec<_>>>()?;
        if rows != code.rows {
            return Err(Error::Parse("generator rows disagree with the polynomial".into()));
        }
        Ok(code)
    }
}

/// True iff the two PR codes share no nonzero codeword.
pub fn verify_disjoint(p1: BitPoly, p2: BitPoly, n: usize) -> Result<bool> {
    if p1 == p2 {
        return Err(Error::PreconditionViolation(format!(
            "polynomials must differ, both are {}",
            p1.to_hex()
        )));
    }
    if p1.degree() != p2.degree() {
        return Err(Error::PreconditionViolation(format!(
            "polynomials {p1} and {p2} have different degrees"
        )));
    }
    let k = p1.degree().unwrap_or(0) as usize;
    if n < 2 * k {
        return Err(Error::PreconditionViolation(format!(
            "disjointness holds only for n >= 2k = {}, got n = {n}",
            2 * k
        )));
    }
    let c1 = build_code(p1, n)?;
    let c2 = build_code(p2, n)?;
    let words = c1.codeword_set()?;
    check_range("k", c2.k as u64, 1, MAX_ENUMERATION_DIM as u64)?;
    let mut disjoint = true;
    c2.for_each_codeword(|m, cw| {
        if m != 0 && words.contains(cw) {
            disjoint = false;
        }
    });
    Ok(disjoint)
}
