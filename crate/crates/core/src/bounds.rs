//! Ensemble minimum-distance bound, Gilbert-Varshamov distance and the union
//! bound on word error rate.

use std::fmt::Write as _;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::code::build_code;
use crate::error::{check_range, Error, Result};
use crate::gf2poly::BitPoly;
use crate::numfmt::format_significant;
use crate::weights::{binomial, ensemble_average_exact, RealDistribution};

/// Largest dimension for the exhaustive existence scan.
pub const MAX_SCAN_DIM: u32 = 12;

/// Largest `d` with `Σ_{j=3}^{d} Ā_j <= 1`; at least 2, and `n` if the
/// partial sums never exceed 1.
pub fn dmin_bound(abar: &RealDistribution) -> usize {
    let n = abar.n;
    let mut acc = 0.0;
    for j in 3..=n {
        acc += abar.values[j];
        if acc > 1.0 {
            return j - 1;
        }
    }
    n
}

/// [`dmin_bound`] over exact rationals.
pub fn dmin_bound_exact(abar: &[BigRational]) -> usize {
    let n = abar.len() - 1;
    let one = BigRational::one();
    let mut acc = BigRational::zero();
    for (j, v) in abar.iter().enumerate().skip(3) {
        acc += v;
        if acc > one {
            return j - 1;
        }
    }
    n
}

/// Largest `d` with `Σ_{i=0}^{d-2} C(n-1, i) < 2^{n-k}`.
pub fn gv_distance(n: usize, k: usize) -> usize {
    if n <= k {
        return 1;
    }
    let limit = BigUint::one() << (n - k);
    let mut sum = BigUint::zero();
    let mut d = 1;
    for cand in 2..=n {
        sum += binomial(n as u64 - 1, cand as u64 - 2);
        if sum >= limit {
            break;
        }
        d = cand;
    }
    d
}

/// Outcome of the existence scan at one `(k, n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DminReport {
    pub k: u32,
    pub n: usize,
    pub d_min_bound: usize,
    pub gv_d: usize,
    pub witness_poly: Option<BitPoly>,
    pub witness_d: Option<usize>,
}

/// Computes the exact ensemble average, its distance bound, and the
/// lowest-bitmask primitive polynomial whose code meets the bound.
pub fn verify_existence(k: u32, n: usize) -> Result<DminReport> {
    check_range("k", k as u64, 2, MAX_SCAN_DIM as u64)?;
    if n < 2 * k as usize {
        return Err(Error::PreconditionViolation(format!(
            "existence scan requires n >= 2k = {}, got n = {n}",
            2 * k
        )));
    }
    let ensemble = ensemble_average_exact(k, n)?;
    let d_min_bound = dmin_bound_exact(&ensemble.primal);
    let witness = ensemble
        .enumerators
        .iter()
        .map(|(p, a)| (*p, a.min_distance().unwrap_or(n)))
        .find(|&(_, d)| d >= d_min_bound);
    let Some((poly, d)) = witness else {
        return Err(Error::TheoremViolation(format!(
            "no primitive polynomial of degree {k} reaches distance {d_min_bound} at n = {n}"
        )));
    };
    Ok(DminReport {
        k,
        n,
        d_min_bound,
        gv_d: gv_distance(n, k as usize),
        witness_poly: Some(poly),
        witness_d: Some(d),
    })
}

/// Standard normal tail `Q(x) = erfc(x/√2)/2`.
pub fn q_function(x: f64) -> f64 {
    0.5 * libm::erfc(x / std::f64::consts::SQRT_2)
}

/// Pairwise-error SNR scale for BPSK: `2·R·Eb/N0`.
pub fn ebno_db_to_gamma(ebno_db: f64, rate: f64) -> f64 {
    2.0 * rate * 10f64.powf(ebno_db / 10.0)
}

/// Weighting of the union-bound terms.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum UnionBoundMode {
    /// `Σ (i/n) Ā_i Q(√(iγ))`.
    #[default]
    Literal,
    /// `Σ Ā_i Q(√(iγ))`, the word-error union bound.
    Unweighted,
}

/// `Σ_{i=d_min}^{n} w_i Ā_i Q(√(iγ))` with `w_i` set by `mode`.
pub fn union_bound(abar: &RealDistribution, d_min: usize, gamma: f64, mode: UnionBoundMode) -> f64 {
    let n = abar.n;
    (d_min.max(1)..=n)
        .map(|i| {
            let w = match mode {
                UnionBoundMode::Literal => i as f64 / n as f64,
                UnionBoundMode::Unweighted => 1.0,
            };
            w * abar.values[i] * q_function((i as f64 * gamma).sqrt())
        })
        .sum()
}

/// `bound_curve` CSV: `ebno_db,epsilon_ub`.
pub fn bound_curve_csv(points: &[(f64, f64)]) -> String {
    let mut s = String::from("ebno_db,epsilon_ub\n");
    for &(eb, ub) in points {
        writeln!(s, "{eb},{}", format_significant(ub, 12)).unwrap();
    }
    s
}

/// One row of the distance-growth table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DminGrowthRow {
    pub n: usize,
    pub dmin_bound: usize,
    pub witness_d: Option<usize>,
}

/// Exact distance of the code of `poly` at each length, with the supplied
/// bound per length.
pub fn dmin_growth(poly: BitPoly, rows: &[(usize, usize)]) -> Result<Vec<DminGrowthRow>> {
    rows.iter()
        .map(|&(n, bound)| {
            Ok(DminGrowthRow {
                n,
                dmin_bound: bound,
                witness_d: Some(build_code(poly, n)?.min_distance()? as usize),
            })
        })
        .collect()
}

/// `dmin_growth` CSV: `n,dmin_bound,witness_d` (empty when not computed).
pub fn dmin_growth_csv(rows: &[DminGrowthRow]) -> String {
    let mut s = String::from("n,dmin_bound,witness_d\n");
    for r in rows {
        let w = r.witness_d.map(|d| d.to_string()).unwrap_or_default();
        writeln!(s, "{},{},{w}", r.n, r.dmin_bound).unwrap();
    }
    s
}
