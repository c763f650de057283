//! Weight enumerators, Krawtchouk polynomials, the MacWilliams transform and
//! ensemble-average weight distributions.
//!
//! Enumerator and Krawtchouk arithmetic is exact. Real numbers only appear
//! once a distribution is averaged or approximated; even then the closed-form
//! approximations are evaluated as exact rationals and rounded once, since
//! the alternating Krawtchouk sums cancel catastrophically in floating point.

use std::fmt::Write as _;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::code::{build_code, PrCode, MAX_ENUMERATION_DIM};
use crate::error::{check_range, Error, Result};
use crate::gf2poly::enumerate_primitives;
use crate::numfmt::format_significant;

/// Largest dimension accepted by [`ensemble_average_exact`].
pub const MAX_ENSEMBLE_DIM: u32 = 16;

/// Exact weight distribution `A_0..A_n` of a binary linear code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightEnumerator {
    n: usize,
    dim: usize,
    counts: Vec<BigUint>,
}

impl WeightEnumerator {
    /// Checks `A_0 = 1` and `Σ A_j = 2^dim`.
    pub fn new(n: usize, dim: usize, counts: Vec<BigUint>) -> Result<Self> {
        if counts.len() != n + 1 {
            return Err(Error::InconsistentEnumerator(format!(
                "expected {} counts, got {}",
                n + 1,
                counts.len()
            )));
        }
        if dim > n {
            return Err(Error::InconsistentEnumerator(format!(
                "dimension {dim} exceeds length {n}"
            )));
        }
        if !counts[0].is_one() {
            return Err(Error::InconsistentEnumerator(format!("A_0 = {}, expected 1", counts[0])));
        }
        let total: BigUint = counts.iter().sum();
        if total != BigUint::one() << dim {
            return Err(Error::InconsistentEnumerator(format!(
                "counts total {total}, expected 2^{dim}"
            )));
        }
        Ok(WeightEnumerator { n, dim, counts })
    }

    pub fn from_u64(n: usize, dim: usize, counts: &[u64]) -> Result<Self> {
        Self::new(n, dim, counts.iter().map(|&c| BigUint::from(c)).collect())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn counts(&self) -> &[BigUint] {
        &self.counts
    }

    pub fn count(&self, j: usize) -> &BigUint {
        &self.counts[j]
    }

    /// `(weight, count)` pairs with nonzero count, weight 0 excluded.
    pub fn nonzero_terms(&self) -> Vec<(usize, BigUint)> {
        self.counts
            .iter()
            .enumerate()
            .skip(1)
            .filter(|(_, c)| !c.is_zero())
            .map(|(j, c)| (j, c.clone()))
            .collect()
    }

    /// Smallest nonzero weight, `None` for the zero code.
    pub fn min_distance(&self) -> Option<usize> {
        (1..=self.n).find(|&j| !self.counts[j].is_zero())
    }

    /// Mean weight over all codewords, as an exact rational.
    pub fn mean(&self) -> BigRational {
        let s: BigUint = self.counts.iter().enumerate().map(|(j, c)| c * j).sum();
        BigRational::new(s.into(), (BigUint::one() << self.dim).into())
    }

    /// Population variance of the weight over all codewords.
    pub fn variance(&self) -> BigRational {
        let s2: BigUint = self.counts.iter().enumerate().map(|(j, c)| c * (j * j)).sum();
        let second = BigRational::new(s2.into(), (BigUint::one() << self.dim).into());
        let mean = self.mean();
        second - &mean * &mean
    }

    /// Counts as exact rationals, for averaging.
    pub fn to_rationals(&self) -> Vec<BigRational> {
        self.counts
            .iter()
            .map(|c| BigRational::from_integer(c.clone().into()))
            .collect()
    }

    /// Polynomial form, e.g. `1 + 2x^9 + 4x^10`.
    pub fn to_polynomial_string(&self) -> String {
        let mut terms = Vec::new();
        for (j, c) in self.counts.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            terms.push(match j {
                0 => format!("{c}"),
                1 => format!("{c}x"),
                _ => format!("{c}x^{j}"),
            });
        }
        terms.join(" + ")
    }

    /// `weight_dist` CSV body: header `j,value` and one integer row per weight.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("j,value\n");
        for (j, c) in self.counts.iter().enumerate() {
            writeln!(s, "{j},{c}").unwrap();
        }
        s
    }
}

/// Exact enumerator of a PR code by exhaustive Gray-code traversal.
pub fn weight_enumerator_exact(code: &PrCode) -> Result<WeightEnumerator> {
    check_range("k", code.k() as u64, 1, MAX_ENUMERATION_DIM as u64)?;
    let mut counts = vec![0u64; code.n() + 1];
    code.for_each_codeword(|_, cw| counts[cw.weight() as usize] += 1);
    WeightEnumerator::from_u64(code.n(), code.k() as usize, &counts)
}

/// Binomial coefficient `C(n, r)`, zero for `r > n`.
pub fn binomial(n: u64, r: u64) -> BigUint {
    if r > n {
        return BigUint::zero();
    }
    let r = r.min(n - r);
    let mut acc = BigUint::one();
    for i in 0..r {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// Binomial coefficient with a big upper argument.
fn binomial_big(n: &BigUint, r: u64) -> BigUint {
    if n < &BigUint::from(r) {
        return BigUint::zero();
    }
    let mut acc = BigUint::one();
    for i in 0..r {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// Krawtchouk polynomial `K_j(t) = Σ_l (-1)^l C(t,l) C(n-t, j-l)`.
pub fn krawtchouk(n: usize, j: usize, t: usize) -> Result<BigInt> {
    if j > n || t > n {
        return Err(Error::InvalidArgument(format!(
            "Krawtchouk arguments j={j}, t={t} must lie in 0..={n}"
        )));
    }
    let mut acc = BigInt::zero();
    for l in 0..=j.min(t) {
        let term: BigInt = (binomial(t as u64, l as u64) * binomial((n - t) as u64, (j - l) as u64)).into();
        if l % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    Ok(acc)
}

/// All `K_j(t)` for one length, indexed `[j][t]`.
#[derive(Clone, Debug)]
pub struct KrawtchoukTable {
    n: usize,
    table: Vec<Vec<BigInt>>,
}

impl KrawtchoukTable {
    /// Builds the table with the three-term recurrence
    /// `(j+1) K_{j+1}(t) = (n-2t) K_j(t) - (n-j+1) K_{j-1}(t)`.
    pub fn new(n: usize) -> Self {
        let mut table = vec![vec![BigInt::zero(); n + 1]; n + 1];
        for t in 0..=n {
            table[0][t] = BigInt::one();
            if n >= 1 {
                table[1][t] = BigInt::from(n as i64 - 2 * t as i64);
            }
        }
        for j in 1..n {
            for t in 0..=n {
                let a = &table[j][t] * (n as i64 - 2 * t as i64);
                let b = &table[j - 1][t] * (n - j + 1);
                table[j + 1][t] = (a - b) / (j + 1);
            }
        }
        KrawtchoukTable { n, table }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, j: usize, t: usize) -> &BigInt {
        &self.table[j][t]
    }
}

/// Dual enumerator `B_t = 2^{-dim} Σ_j A_j K_t(j)`.
pub fn macwilliams(a: &WeightEnumerator) -> Result<WeightEnumerator> {
    macwilliams_with(a, &KrawtchoukTable::new(a.n))
}

/// [`macwilliams`] reusing a precomputed table of the same length.
pub fn macwilliams_with(a: &WeightEnumerator, kt: &KrawtchoukTable) -> Result<WeightEnumerator> {
    if kt.n != a.n {
        return Err(Error::InvalidArgument(format!(
            "Krawtchouk table for n={} used with enumerator of length {}",
            kt.n, a.n
        )));
    }
    let n = a.n;
    let mut out = Vec::with_capacity(n + 1);
    for t in 0..=n {
        let mut s = BigInt::zero();
        for (j, c) in a.counts.iter().enumerate() {
            if !c.is_zero() {
                s += kt.get(t, j) * BigInt::from(c.clone());
            }
        }
        let (q, r) = s.div_rem(&(BigInt::one() << a.dim));
        if !r.is_zero() || q.is_negative() {
            return Err(Error::InconsistentEnumerator(format!(
                "dual count B_{t} = {s}/2^{} is not a nonnegative integer",
                a.dim
            )));
        }
        out.push(q.to_biguint().unwrap());
    }
    WeightEnumerator::new(n, n - a.dim, out)
}

/// MacWilliams transform of a rational (e.g. averaged) distribution of a
/// `dim`-dimensional code.
pub fn macwilliams_rational(values: &[BigRational], dim: usize, kt: &KrawtchoukTable) -> Vec<BigRational> {
    let n = values.len() - 1;
    assert_eq!(kt.n, n, "Krawtchouk table length mismatch");
    let scale = BigRational::from_integer(BigInt::one() << dim);
    (0..=n)
        .map(|t| {
            let s: BigRational = values
                .iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(|(j, v)| v * BigRational::from_integer(kt.get(t, j).clone()))
                .sum();
            s / &scale
        })
        .collect()
}

/// What a [`RealDistribution`] represents.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DistributionKind {
    /// A single code's enumerator.
    Code,
    ExactAveragePrimal,
    ExactAverageDual,
    /// `B̄_t ≈ D_{n,t} / (2^k - t)`.
    ApproxDual,
    /// MacWilliams transform of the approximate dual, including `B̄_0 = 1`.
    ApproxPrimal,
    /// `2^{-n} Σ_t D_{n,t} K_j(t)` without the `B̄_0` term.
    ApproxPrimalLiteral,
}

impl DistributionKind {
    pub fn label(self) -> &'static str {
        match self {
            DistributionKind::Code => "code",
            DistributionKind::ExactAveragePrimal => "exact-average-primal",
            DistributionKind::ExactAverageDual => "exact-average-dual",
            DistributionKind::ApproxDual => "approx-dual",
            DistributionKind::ApproxPrimal => "approx-primal",
            DistributionKind::ApproxPrimalLiteral => "approx-primal-literal",
        }
    }
}

/// A real-valued weight distribution indexed `0..=n`.
#[derive(Clone, Debug, PartialEq)]
pub struct RealDistribution {
    pub n: usize,
    pub values: Vec<f64>,
    pub kind: DistributionKind,
}

impl RealDistribution {
    pub fn new(values: Vec<f64>, kind: DistributionKind) -> Self {
        assert!(!values.is_empty(), "distribution needs at least weight 0");
        RealDistribution {
            n: values.len() - 1,
            values,
            kind,
        }
    }

    pub fn from_rationals(values: &[BigRational], kind: DistributionKind) -> Self {
        Self::new(values.iter().map(ratio_to_f64).collect(), kind)
    }

    pub fn from_enumerator(a: &WeightEnumerator) -> Self {
        Self::new(
            a.counts.iter().map(|c| c.to_f64().unwrap_or(f64::INFINITY)).collect(),
            DistributionKind::Code,
        )
    }

    pub fn total(&self) -> f64 {
        self.values.iter().sum()
    }

    /// `weight_dist` CSV body with 12 significant digits.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("j,value\n");
        for (j, v) in self.values.iter().enumerate() {
            writeln!(s, "{j},{}", format_significant(*v, 12)).unwrap();
        }
        s
    }
}

fn ratio_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Exact ensemble averages over all primitive polynomials of one degree.
#[derive(Clone, Debug)]
pub struct EnsembleAverage {
    pub k: u32,
    pub n: usize,
    /// Number of primitive polynomials averaged over.
    pub codes: usize,
    /// `Ā_j`.
    pub primal: Vec<BigRational>,
    /// `B̄_t`, averaged from the per-code duals.
    pub dual: Vec<BigRational>,
    /// Per-code enumerators, in ascending polynomial order.
    pub enumerators: Vec<(crate::gf2poly::BitPoly, WeightEnumerator)>,
}

impl EnsembleAverage {
    pub fn primal_distribution(&self) -> RealDistribution {
        RealDistribution::from_rationals(&self.primal, DistributionKind::ExactAveragePrimal)
    }

    pub fn dual_distribution(&self) -> RealDistribution {
        RealDistribution::from_rationals(&self.dual, DistributionKind::ExactAverageDual)
    }
}

/// Averages the exact enumerators (and their duals) of every PR code of
/// dimension `k` and length `n`.
pub fn ensemble_average_exact(k: u32, n: usize) -> Result<EnsembleAverage> {
    check_range("k", k as u64, 2, MAX_ENSEMBLE_DIM as u64)?;
    if n < k as usize {
        return Err(Error::InvalidArgument(format!("n = {n} is shorter than k = {k}")));
    }
    let prims = enumerate_primitives(k)?;
    let kt = KrawtchoukTable::new(n);
    let per_code = prims
        .par_iter()
        .map(|&p| {
            let a = weight_enumerator_exact(&build_code(p, n)?)?;
            let b = macwilliams_with(&a, &kt)?;
            Ok((p, a, b))
        })
        .collect::<Result<Vec<_>>>()?;

    let mut sum_a = vec![BigUint::zero(); n + 1];
    let mut sum_b = vec![BigUint::zero(); n + 1];
    for (_, a, b) in &per_code {
        for j in 0..=n {
            sum_a[j] += &a.counts[j];
            sum_b[j] += &b.counts[j];
        }
    }
    let m = BigInt::from(prims.len());
    let avg = |v: Vec<BigUint>| -> Vec<BigRational> {
        v.into_iter()
            .map(|s| BigRational::new(s.into(), m.clone()))
            .collect()
    };
    Ok(EnsembleAverage {
        k,
        n,
        codes: prims.len(),
        primal: avg(sum_a),
        dual: avg(sum_b),
        enumerators: per_code.into_iter().map(|(p, a, _)| (p, a)).collect(),
    })
}

/// Number of `t`-nomial multiples (constant term 1, degree `<= 2^k - 2`) of a
/// degree-`k` primitive polynomial, from the recursion
/// `N_t = [C(2^k-2, t-2) - N_{t-1} - (t-1)/(t-2) (2^k-t+1) N_{t-2}] / (t-1)`
/// seeded with `N_1 = N_2 = 0`.
pub fn n_multiples(k: u32, t: u32) -> Result<BigInt> {
    if !(2..=4096).contains(&k) {
        return Err(Error::InvalidArgument(format!("degree k = {k} must lie in 2..=4096")));
    }
    if t < 1 {
        return Err(Error::InvalidArgument("t must be at least 1".into()));
    }
    let two_k = BigUint::one() << k;
    let big = |v: BigUint| BigRational::from_integer(BigInt::from(v));
    let mut prev2 = BigRational::zero(); // N_{t-2}
    let mut prev1 = BigRational::zero(); // N_{t-1}
    let mut current = BigRational::zero();
    for s in 3..=t as u64 {
        let c = big(binomial_big(&(&two_k - 2u32), s - 2));
        let factor = BigRational::new(BigInt::from(s - 1), BigInt::from(s - 2));
        let tail = BigRational::from_integer(BigInt::from(two_k.clone()) - BigInt::from(s) + 1);
        current = (c - &prev1 - factor * tail * &prev2) / BigRational::from_integer(BigInt::from(s - 1));
        prev2 = std::mem::replace(&mut prev1, current.clone());
    }
    if !current.is_integer() {
        return Err(Error::RecursionInconsistency(format!("N_{{{k},{t}}} = {current}")));
    }
    Ok(current.to_integer())
}

/// `D_{n,t} = Σ_{c=max(k,t-1)}^{n-1} C(c-1, t-2) (n-c)`, zero for `t < 2`.
pub fn d_sum(n: usize, t: usize, k: usize) -> BigUint {
    if t < 2 {
        return BigUint::zero();
    }
    (k.max(t - 1)..n)
        .map(|c| binomial(c.saturating_sub(1) as u64, (t - 2) as u64) * (n - c))
        .sum()
}

fn check_approx_args(k: u32, n: usize, need_period: bool) -> Result<()> {
    if !(2..=63).contains(&k) {
        return Err(Error::InvalidArgument(format!("k = {k} must lie in 2..=63")));
    }
    if n < k as usize {
        return Err(Error::InvalidArgument(format!("n = {n} is shorter than k = {k}")));
    }
    if need_period && (n as u128) >= (1u128 << k) {
        return Err(Error::InvalidArgument(format!(
            "the 1/(2^k - t) factor needs n < 2^k; got k = {k}, n = {n}"
        )));
    }
    Ok(())
}

/// Exact rational form of [`avg_dual_approx`].
pub fn avg_dual_approx_exact(k: u32, n: usize) -> Result<Vec<BigRational>> {
    check_approx_args(k, n, true)?;
    let two_k = BigInt::one() << k;
    let mut out = vec![BigRational::zero(); n + 1];
    out[0] = BigRational::one();
    for (t, slot) in out.iter_mut().enumerate().skip(3) {
        *slot = BigRational::new(d_sum(n, t, k as usize).into(), &two_k - t);
    }
    Ok(out)
}

/// Approximate average dual distribution `B̄_t ≈ D_{n,t} / (2^k - t)` for
/// `t >= 3`, with `B̄_0 = 1` and `B̄_1 = B̄_2 = 0`.
pub fn avg_dual_approx(k: u32, n: usize) -> Result<RealDistribution> {
    Ok(RealDistribution::from_rationals(
        &avg_dual_approx_exact(k, n)?,
        DistributionKind::ApproxDual,
    ))
}

/// How the approximate primal distribution is assembled.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum PrimalApprox {
    /// `2^{-(n-k)} [K_j(0) + Σ_{t>=3} B̄_t K_j(t)]` with the approximate dual.
    #[default]
    Primary,
    /// `2^{-n} Σ_{t>=3} D_{n,t} K_j(t)`.
    Literal,
}

/// Exact rational form of [`avg_primal_approx`].
pub fn avg_primal_approx_exact(k: u32, n: usize, mode: PrimalApprox) -> Result<Vec<BigRational>> {
    check_approx_args(k, n, mode == PrimalApprox::Primary)?;
    let kt = KrawtchoukTable::new(n);
    let d: Vec<BigInt> = (0..=n).map(|t| d_sum(n, t, k as usize).into()).collect();
    match mode {
        PrimalApprox::Primary => {
            let two_k = BigInt::one() << k;
            let common = (3..=n).fold(BigInt::one(), |acc, t| acc.lcm(&(&two_k - t)));
            let weights: Vec<BigInt> = (0..=n)
                .map(|t| if t < 3 { BigInt::zero() } else { &d[t] * (&common / (&two_k - t)) })
                .collect();
            let denom = &common << (n - k as usize);
            Ok((0..=n)
                .map(|j| {
                    let mut s = kt.get(j, 0) * &common;
                    for (t, w) in weights.iter().enumerate().skip(3) {
                        s += kt.get(j, t) * w;
                    }
                    BigRational::new(s, denom.clone())
                })
                .collect())
        }
        PrimalApprox::Literal => {
            let denom = BigInt::one() << n;
            Ok((0..=n)
                .map(|j| {
                    let s: BigInt = (3..=n).map(|t| kt.get(j, t) * &d[t]).sum();
                    BigRational::new(s, denom.clone())
                })
                .collect())
        }
    }
}

/// Approximate average primal distribution of PR codes of dimension `k`.
pub fn avg_primal_approx(k: u32, n: usize, mode: PrimalApprox) -> Result<RealDistribution> {
    let kind = match mode {
        PrimalApprox::Primary => DistributionKind::ApproxPrimal,
        PrimalApprox::Literal => DistributionKind::ApproxPrimalLiteral,
    };
    Ok(RealDistribution::from_rationals(&avg_primal_approx_exact(k, n, mode)?, kind))
}

/// Kullback-Leibler divergence `Σ p ln(p/q)` between two distributions
/// restricted to weights `3..=n`, clamped at zero and renormalized.
///
/// Returns `f64::INFINITY` when `q` vanishes where `p` does not.
pub fn kld(p: &RealDistribution, q: &RealDistribution) -> Result<f64> {
    if p.n != q.n {
        return Err(Error::InvalidArgument(format!(
            "distribution lengths differ: {} vs {}",
            p.n, q.n
        )));
    }
    let restrict = |d: &RealDistribution| -> Vec<f64> {
        d.values.iter().skip(3).map(|&v| v.max(0.0)).collect()
    };
    let (pv, qv) = (restrict(p), restrict(q));
    let (sp, sq): (f64, f64) = (pv.iter().sum(), qv.iter().sum());
    if sp <= 0.0 {
        return Err(Error::InvalidArgument(
            "first distribution has no mass at weights >= 3".into(),
        ));
    }
    if sq <= 0.0 {
        return Ok(f64::INFINITY);
    }
    let mut acc = 0.0;
    for (&a, &b) in pv.iter().zip(&qv) {
        if a == 0.0 {
            continue;
        }
        if b == 0.0 {
            return Ok(f64::INFINITY);
        }
        let (a, b) = (a / sp, b / sq);
        acc += a * (a / b).ln();
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2poly::BitPoly;
    use proptest::prelude::*;

    fn code(p: &str, n: usize) -> PrCode {
        build_code(p.parse().unwrap(), n).unwrap()
    }

    fn terms(a: &WeightEnumerator) -> Vec<(usize, u64)> {
        a.nonzero_terms()
            .into_iter()
            .map(|(j, c)| (j, c.to_u64().unwrap()))
            .collect()
    }

    #[test]
    fn table3_short_rows() {
        let a = weight_enumerator_exact(&code("1+x+x^4", 20)).unwrap();
        assert_eq!(terms(&a), vec![(9, 2), (10, 4), (11, 6), (12, 3)]);
        let a = weight_enumerator_exact(&code("1+x+x^4", 32)).unwrap();
        assert_eq!(terms(&a), vec![(16, 3), (17, 8), (18, 4)]);
    }

    #[test]
    fn table3_k11_n32() {
        let a = weight_enumerator_exact(&code("1+x^2+x^3+x^4+x^5+x^8+x^11", 32)).unwrap();
        let expected = [
            (9, 2), (10, 40), (11, 54), (12, 154), (13, 136), (14, 250), (15, 256), (16, 289),
            (17, 258), (18, 172), (19, 214), (20, 98), (21, 84), (22, 18), (23, 20), (24, 2),
        ];
        assert_eq!(terms(&a), expected);
    }

    #[test]
    fn krawtchouk_examples() {
        for t in 0..=20 {
            assert_eq!(krawtchouk(20, 0, t).unwrap(), BigInt::one());
        }
        assert_eq!(krawtchouk(20, 2, 0).unwrap(), BigInt::from(190));
        assert_eq!(krawtchouk(20, 1, 3).unwrap(), BigInt::from(14));
        assert!(krawtchouk(20, 21, 0).is_err());
        assert!(krawtchouk(20, 0, 21).is_err());
    }

    #[test]
    fn recurrence_table_matches_direct_sum() {
        for n in 0..=30 {
            let kt = KrawtchoukTable::new(n);
            for j in 0..=n {
                for t in 0..=n {
                    assert_eq!(kt.get(j, t), &krawtchouk(n, j, t).unwrap(), "n={n} j={j} t={t}");
                }
            }
        }
    }

    #[test]
    fn krawtchouk_orthogonality() {
        for n in 1..=24usize {
            let kt = KrawtchoukTable::new(n);
            for j in 0..=n {
                for l in 0..=n {
                    let s: BigInt = (0..=n)
                        .map(|t| BigInt::from(binomial(n as u64, t as u64)) * kt.get(j, t) * kt.get(l, t))
                        .sum();
                    let expected = if j == l {
                        BigInt::from(binomial(n as u64, j as u64)) << n
                    } else {
                        BigInt::zero()
                    };
                    assert_eq!(s, expected);
                }
            }
        }
    }

    #[test]
    fn simplex_dual_is_hamming() {
        let mut counts = vec![0u64; 16];
        counts[0] = 1;
        counts[8] = 15;
        let a = WeightEnumerator::from_u64(15, 4, &counts).unwrap();
        let b = macwilliams(&a).unwrap();
        assert_eq!(b.dim(), 11);
        let expected = [
            (3, 35), (4, 105), (5, 168), (6, 280), (7, 435), (8, 435), (9, 280), (10, 168),
            (11, 105), (12, 35), (15, 1),
        ];
        assert_eq!(terms(&b), expected);
        assert_eq!(macwilliams(&b).unwrap(), a);
    }

    // brute-force dual enumeration for the (15,11) Hamming code: all
    // 15-bit words orthogonal to every generator row of the simplex code
    #[test]
    fn hamming_dual_by_brute_force() {
        let c = code("1+x+x^4", 15);
        let rows: Vec<u64> = c.generator_rows().iter().map(|r| r.words()[0]).collect();
        let mut counts = vec![0u64; 16];
        for w in 0u64..1 << 15 {
            if rows.iter().all(|r| (r & w).count_ones() % 2 == 0) {
                counts[w.count_ones() as usize] += 1;
            }
        }
        let a = weight_enumerator_exact(&c).unwrap();
        assert_eq!(macwilliams(&a).unwrap(), WeightEnumerator::from_u64(15, 11, &counts).unwrap());
    }

    #[test]
    fn full_space_dual_is_trivial() {
        let n = 6;
        let counts: Vec<BigUint> = (0..=n).map(|j| binomial(n as u64, j as u64)).collect();
        let a = WeightEnumerator::new(n, n, counts).unwrap();
        let b = macwilliams(&a).unwrap();
        assert_eq!(b.dim(), 0);
        assert_eq!(terms(&b), vec![]);
    }

    #[test]
    fn invalid_enumerator_is_rejected() {
        // 2^2 words with weights that no linear code realizes
        let a = WeightEnumerator::from_u64(4, 2, &[1, 3, 0, 0, 0]).unwrap();
        assert!(matches!(macwilliams(&a), Err(Error::InconsistentEnumerator(_))));
        assert!(WeightEnumerator::from_u64(4, 2, &[1, 2, 0, 0, 0]).is_err());
        assert!(WeightEnumerator::from_u64(4, 2, &[2, 2, 0, 0, 0]).is_err());
    }

    #[test]
    fn involution_for_pr_codes() {
        for k in 2..=10u32 {
            for &p in enumerate_primitives(k).unwrap().iter().take(4) {
                for n in k as usize..=30 {
                    let a = weight_enumerator_exact(&build_code(p, n).unwrap()).unwrap();
                    assert_eq!(macwilliams(&macwilliams(&a).unwrap()).unwrap(), a);
                }
            }
        }
    }

    #[test]
    fn mean_and_variance_identities() {
        let half = |n: usize| BigRational::new(BigInt::from(n), BigInt::from(2));
        let quarter = |n: usize| BigRational::new(BigInt::from(n), BigInt::from(4));
        for k in 2..=8u32 {
            for &p in &enumerate_primitives(k).unwrap() {
                for n in k as usize..=40 {
                    let a = weight_enumerator_exact(&build_code(p, n).unwrap()).unwrap();
                    assert_eq!(a.mean(), half(n));
                    if n < 1 << k {
                        assert_eq!(a.variance(), quarter(n), "p={p:?} n={n}");
                    }
                }
            }
        }
        // past the period the variance is no longer n/4
        let a = weight_enumerator_exact(&code("1+x+x^4", 20)).unwrap();
        assert_eq!(a.variance(), BigRational::new(BigInt::from(15), BigInt::from(2)));
    }

    #[test]
    fn dual_distance_at_least_three_within_period() {
        for k in 3..=10u32 {
            for &p in enumerate_primitives(k).unwrap().iter().take(6) {
                for n in [k as usize + 1, 2 * k as usize, (1usize << k) - 1].into_iter().filter(|&n| n <= 40 || n == (1 << k) - 1) {
                    let a = weight_enumerator_exact(&build_code(p, n).unwrap()).unwrap();
                    let b = macwilliams(&a).unwrap();
                    assert!(b.min_distance().is_none_or(|d| d >= 3), "p={p:?} n={n}");
                }
            }
        }
    }

    #[test]
    fn low_weights_vanish_for_n_at_least_2k() {
        // k = 2, n = 4 is the one exception (see code tests)
        for k in 3..=12u32 {
            let prims = enumerate_primitives(k).unwrap();
            let step = (prims.len() / 8).max(1);
            for &p in prims.iter().step_by(step) {
                for n in 2 * k as usize..=(2 * k as usize + 12) {
                    let a = weight_enumerator_exact(&build_code(p, n).unwrap()).unwrap();
                    assert!(a.count(1).is_zero() && a.count(2).is_zero(), "p={p:?} n={n}");
                }
            }
        }
    }

    #[test]
    fn ensemble_examples() {
        let e = ensemble_average_exact(4, 20).unwrap();
        let a = weight_enumerator_exact(&code("1+x+x^4", 20)).unwrap();
        assert_eq!(e.primal, a.to_rationals());
        assert_eq!(e.codes, 2);
        let b = weight_enumerator_exact(&code("1+x^3+x^4", 20)).unwrap();
        assert_eq!(a, b);

        let e = ensemble_average_exact(2, 3).unwrap();
        assert_eq!(e.primal[2], BigRational::from_integer(BigInt::from(3)));

        for (k, n) in [(3, 9), (5, 12), (6, 30)] {
            let e = ensemble_average_exact(k, n).unwrap();
            let total: BigRational = e.primal.iter().sum();
            assert_eq!(total, BigRational::from_integer(BigInt::one() << k));
        }
        assert!(ensemble_average_exact(17, 40).is_err());
        assert!(ensemble_average_exact(5, 4).is_err());
    }

    #[test]
    fn averaging_commutes_with_transform() {
        for (k, n) in [(4, 12), (5, 12), (6, 20), (7, 16)] {
            let e = ensemble_average_exact(k, n).unwrap();
            let kt = KrawtchoukTable::new(n);
            assert_eq!(macwilliams_rational(&e.primal, k as usize, &kt), e.dual);
            assert_eq!(macwilliams_rational(&e.dual, n - k as usize, &kt), e.primal);
        }
    }

    // Direct count of t-nomials 1 + x^{i_1} + ... + x^{i_{t-1}} with
    // exponents in 1..=2^k-2 that reduce to zero mod p.
    fn brute_force_multiples(p: BitPoly, t: usize) -> u64 {
        let k = p.degree().unwrap();
        let top = (1u32 << k) - 2;
        // x^e mod p for every exponent
        let mut pow = vec![1u64; top as usize + 1];
        for e in 1..=top as usize {
            let mut v = pow[e - 1] << 1;
            if v >> k & 1 == 1 {
                v ^= p.bits();
            }
            pow[e] = v;
        }
        fn rec(pow: &[u64], start: usize, left: usize, acc: u64) -> u64 {
            if left == 0 {
                return (acc == 0) as u64;
            }
            (start..pow.len()).map(|e| rec(pow, e + 1, left - 1, acc ^ pow[e])).sum()
        }
        rec(&pow, 1, t - 1, 1)
    }

    #[test]
    fn n_multiples_examples_and_brute_force() {
        for k in 2..8 {
            assert!(n_multiples(k, 1).unwrap().is_zero());
            assert!(n_multiples(k, 2).unwrap().is_zero());
        }
        assert_eq!(n_multiples(4, 3).unwrap(), BigInt::from(7));
        assert_eq!(n_multiples(5, 3).unwrap(), BigInt::from(15));
        for k in [4u32, 5] {
            for t in 3..=5u32 {
                let expected = n_multiples(k, t).unwrap();
                for p in enumerate_primitives(k).unwrap() {
                    assert_eq!(BigInt::from(brute_force_multiples(p, t as usize)), expected, "k={k} t={t}");
                }
            }
        }
        assert!(n_multiples(1, 3).is_err());
        assert!(n_multiples(4, 0).is_err());
    }

    #[test]
    fn dual_approx_examples() {
        assert_eq!(d_sum(20, 3, 4), BigUint::from(1088u32));
        let b = avg_dual_approx(4, 15).unwrap();
        assert_eq!(b.values[0], 1.0);
        assert_eq!(b.values[1], 0.0);
        assert_eq!(b.values[2], 0.0);
        let b = avg_dual_approx(10, 25).unwrap();
        assert!((b.values[3] - d_sum(25, 3, 10).to_f64().unwrap() / 1021.0).abs() < 1e-9);
        assert!(avg_dual_approx(5, 4).is_err());
        // 1/(2^k - t) undefined once t reaches 2^k
        assert!(avg_dual_approx(4, 20).is_err());
        assert!(avg_primal_approx(4, 20, PrimalApprox::Literal).is_ok());
    }

    #[test]
    fn primal_approx_normalization() {
        let a = avg_primal_approx(10, 25, PrimalApprox::Primary).unwrap();
        assert!((a.total() / 1024.0 - 1.0).abs() < 1e-3, "{}", a.total());
        assert!((a.values[0] - 1.0).abs() < 0.05, "{}", a.values[0]);
    }

    #[test]
    fn kld_basics() {
        let p = RealDistribution::new(vec![1.0, 0.0, 0.0, 2.0, 5.0, 1.0], DistributionKind::Code);
        assert_eq!(kld(&p, &p).unwrap(), 0.0);
        let mut q = p.clone();
        q.values[4] = 0.0;
        assert_eq!(kld(&p, &q).unwrap(), f64::INFINITY);
        // mass below weight 3 is ignored; scale is irrelevant
        let q = RealDistribution::new(vec![7.0, 9.0, 9.0, 4.0, 10.0, 2.0], DistributionKind::Code);
        assert!(kld(&p, &q).unwrap().abs() < 1e-15);
        let short = RealDistribution::new(vec![1.0, 0.0, 0.0, 1.0], DistributionKind::Code);
        assert!(kld(&p, &short).is_err());
        // hand value: p=(1/2,1/2), q=(1/4,3/4)
        let p = RealDistribution::new(vec![1.0, 0.0, 0.0, 1.0, 1.0], DistributionKind::Code);
        let q = RealDistribution::new(vec![1.0, 0.0, 0.0, 1.0, 3.0], DistributionKind::Code);
        let expected = 0.5 * (2.0f64).ln() + 0.5 * (2.0f64 / 3.0).ln();
        assert!((kld(&p, &q).unwrap() - expected).abs() < 1e-15);
    }

    #[test]
    fn csv_formats() {
        let a = weight_enumerator_exact(&code("1+x+x^4", 20)).unwrap();
        let csv = a.to_csv();
        assert!(csv.starts_with("j,value\n0,1\n1,0\n"));
        assert!(csv.contains("\n9,2\n10,4\n11,6\n12,3\n"));
        assert_eq!(csv.lines().count(), 22);
        let d = avg_dual_approx(10, 25).unwrap();
        assert!(d.to_csv().starts_with("j,value\n0,1.00000000000\n1,0\n"));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn involution_random(k in 2u32..=9, idx in 0usize..1000, extra in 0usize..24) {
            let prims = enumerate_primitives(k).unwrap();
            let p = prims[idx % prims.len()];
            let a = weight_enumerator_exact(&build_code(p, k as usize + extra).unwrap()).unwrap();
            prop_assert_eq!(macwilliams(&macwilliams(&a).unwrap()).unwrap(), a);
        }
    }
}
