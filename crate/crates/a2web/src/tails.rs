//! Tails of the colored Jones sequence of (2,2m)-torus links.

use std::fmt;

use thiserror::Error;

use crate::invariants::{jones_torus_laurent, ColoredLinkSpec, InvariantError};
use crate::qlaurent::{qpow, QLaurent};
use crate::twist::Orientation;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TailError {
    #[error("number of full twists must be at least 1")]
    ZeroTwists,
    #[error("normalized invariant has exponent q^({num}/6), not a nonnegative integer")]
    FractionalResidue { num: i32 },
    #[error("series coefficient overflowed i64")]
    Overflow,
    #[error(transparent)]
    Invariant(#[from] InvariantError),
}

/// Power series in q truncated above q^order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TailSeries {
    pub orientation: Orientation,
    pub m: usize,
    pub order: usize,
    pub series: QLaurent,
}

impl TailSeries {
    /// Coefficients of q^0..=q^order.
    pub fn coefficients(&self) -> Vec<i64> {
        (0..=self.order).map(|j| self.series.coeff(6 * j as i32)).collect()
    }

    pub fn truncate(&self, order: usize) -> TailSeries {
        TailSeries { order: order.min(self.order), series: self.series.truncate_above(6 * order.min(self.order) as i32), ..self.clone() }
    }
}

impl fmt::Display for TailSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + O(q^{})", self.series, self.order + 1)
    }
}

/// Truncated power series arithmetic on coefficient vectors.
fn mul_trunc(a: &[i64], b: &[i64], n: usize) -> Result<Vec<i64>, TailError> {
    let mut out = vec![0i64; n + 1];
    for (i, &x) in a.iter().enumerate().take(n + 1) {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate().take(n + 1 - i) {
            let p = x.checked_mul(y).ok_or(TailError::Overflow)?;
            out[i + j] = out[i + j].checked_add(p).ok_or(TailError::Overflow)?;
        }
    }
    Ok(out)
}

/// 1/(1-q^k) up to q^n.
fn geometric(k: usize, n: usize) -> Vec<i64> {
    let mut v = vec![0i64; n + 1];
    for i in (0..=n).step_by(k) {
        v[i] = 1;
    }
    v
}

/// 1/(q)_k up to q^n.
fn inv_pochhammer(k: usize, n: usize, memo: &mut Vec<Vec<i64>>) -> Result<Vec<i64>, TailError> {
    if memo.is_empty() {
        let mut one = vec![0i64; n + 1];
        one[0] = 1;
        memo.push(one);
    }
    while memo.len() <= k {
        let i = memo.len();
        let next = mul_trunc(&memo[i - 1], &geometric(i, n), n)?;
        memo.push(next);
    }
    Ok(memo[k].clone())
}

/// Which chain sum to use for the tail.
///
/// `Limit` keeps the factor (q)_inf/(q)_{k_m} that the normalized invariants
/// retain as n grows; `Stated` is the shorter closed form that drops it,
/// 1/((1-q)(1-q^2)) sum q^{-2k_m} q^{sum k_i^2+2k_i} / ((q)_{k_1-k_2}...(q)_{k_m})
/// and its parallel analogue. Only `Limit` agrees with the normalized
/// invariants; `Stated` already differs at q^1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TailFormula {
    Limit,
    Stated,
}

/// (q^{k+1}; q)_inf up to q^n.
fn pochhammer_tail(k: usize, n: usize) -> Result<Vec<i64>, TailError> {
    let mut v = vec![0i64; n + 1];
    v[0] = 1;
    for i in (k + 1)..=n {
        // multiply by (1 - q^i)
        for j in (i..=n).rev() {
            v[j] = v[j].checked_sub(v[j - i]).ok_or(TailError::Overflow)?;
        }
    }
    Ok(v)
}

/// Largest first chain index worth enumerating for the given order.
pub fn chain_bound(order: usize) -> usize {
    ((order as f64).sqrt() + 2.0).ceil() as usize
}

/// The tail series up to q^order.
pub fn tail_series(orientation: Orientation, m: usize, order: usize) -> Result<TailSeries, TailError> {
    tail_series_with(orientation, m, order, TailFormula::Limit)
}

pub fn tail_series_with(orientation: Orientation, m: usize, order: usize, formula: TailFormula) -> Result<TailSeries, TailError> {
    if m == 0 {
        return Err(TailError::ZeroTwists);
    }
    let n = order;
    // chain weight q^{sum k_i^2 + c k_i - c k_m}
    let c = match orientation {
        Orientation::Antiparallel => 2,
        Orientation::Parallel => 1,
    };
    let mut memo = Vec::new();
    let mut sum = vec![0i64; n + 1];
    let mut chain = Vec::with_capacity(m);
    let bound = chain_bound(order);
    #[allow(clippy::too_many_arguments)]
    fn rec(
        chain: &mut Vec<usize>,
        m: usize,
        bound: usize,
        c: usize,
        n: usize,
        formula: TailFormula,
        memo: &mut Vec<Vec<i64>>,
        sum: &mut [i64],
    ) -> Result<(), TailError> {
        if chain.len() == m {
            let km = *chain.last().unwrap();
            let e: usize = chain.iter().map(|&k| k * k + c * k).sum::<usize>() - c * km;
            if e > n {
                return Ok(());
            }
            let mut term = inv_pochhammer(km, n, memo)?;
            if formula == TailFormula::Limit {
                term = mul_trunc(&term, &pochhammer_tail(km, n)?, n)?;
            }
            for w in chain.windows(2) {
                term = mul_trunc(&term, &inv_pochhammer(w[0] - w[1], n, memo)?, n)?;
            }
            for i in 0..=(n - e) {
                sum[i + e] = sum[i + e].checked_add(term[i]).ok_or(TailError::Overflow)?;
            }
            return Ok(());
        }
        let top = chain.last().copied().unwrap_or(bound);
        for k in 0..=top {
            chain.push(k);
            rec(chain, m, bound, c, n, formula, memo, sum)?;
            chain.pop();
        }
        Ok(())
    }
    rec(&mut chain, m, bound, c, n, formula, &mut memo, &mut sum)?;
    let mut series = mul_trunc(&sum, &geometric(1, n), n)?;
    series = mul_trunc(&series, &geometric(2, n), n)?;
    if orientation == Orientation::Parallel {
        series = mul_trunc(&series, &geometric(1, n), n)?;
    }
    let series = QLaurent::from_terms(series.into_iter().enumerate().map(|(i, c)| (6 * i as i32, c)));
    Ok(TailSeries { orientation, m, order, series })
}

/// The colored Jones polynomial with both colors n, multiplied by the
/// framing normalization that makes it a power series with constant term 1.
pub fn normalized_jones(orientation: Orientation, m: usize, n: usize) -> Result<QLaurent, TailError> {
    if m == 0 {
        return Err(TailError::ZeroTwists);
    }
    let spec = ColoredLinkSpec::new(orientation, m, n, n)?;
    let j = jones_torus_laurent(&spec)?;
    let (mi, ni) = (m as i64, n as i64);
    // exponents in sixths
    let e = match orientation {
        Orientation::Antiparallel => 4 * mi * ni * ni + 12 * mi * ni,
        Orientation::Parallel => 2 * mi * ni * ni + 6 * mi * ni + 6 * ni,
    };
    let f = &qpow(e as i32) * &j;
    if let Some(&(bad, _)) = f.terms().iter().find(|t| t.0 < 0 || t.0 % 6 != 0) {
        return Err(TailError::FractionalResidue { num: bad });
    }
    Ok(f)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StabilizationRow {
    pub n: usize,
    pub passed: bool,
    /// Lowest integer q-exponent where the two sides differ.
    pub first_difference: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StabilizationReport {
    pub orientation: Orientation,
    pub m: usize,
    pub rows: Vec<StabilizationRow>,
}

impl StabilizationReport {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.passed)
    }

    pub fn first_failure(&self) -> Option<&StabilizationRow> {
        self.rows.iter().find(|r| !r.passed)
    }
}

impl fmt::Display for StabilizationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} m={}", self.orientation, self.m)?;
        writeln!(f, "{:>4}  {:<6} first difference", "n", "result")?;
        for r in &self.rows {
            let diff = r.first_difference.map(|d| format!("q^{}", d)).unwrap_or_else(|| "-".into());
            writeln!(f, "{:>4}  {:<6} {}", r.n, if r.passed { "pass" } else { "FAIL" }, diff)?;
        }
        Ok(())
    }
}

/// Compares each normalized invariant with the tail modulo q^{n+1}.
pub fn stabilization_report(orientation: Orientation, m: usize, n_max: usize) -> Result<StabilizationReport, TailError> {
    stabilization_report_with(orientation, m, n_max, TailFormula::Limit)
}

pub fn stabilization_report_with(
    orientation: Orientation,
    m: usize,
    n_max: usize,
    formula: TailFormula,
) -> Result<StabilizationReport, TailError> {
    let tail = tail_series_with(orientation, m, n_max, formula)?;
    let mut rows = Vec::new();
    for n in 0..=n_max {
        let f = normalized_jones(orientation, m, n)?;
        let first_difference = (0..=n).find(|&j| f.coeff(6 * j as i32) != tail.series.coeff(6 * j as i32));
        rows.push(StabilizationRow { n, passed: first_difference.is_none(), first_difference });
    }
    Ok(StabilizationReport { orientation, m, rows })
}
