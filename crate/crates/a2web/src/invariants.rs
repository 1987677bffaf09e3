//! Colored sl3 Jones polynomials of (2,2m)-torus links with one-row colors.

use std::fmt;

use thiserror::Error;

use crate::qcomb::{pochhammer_ratio, q_multinom, quantum_int, QCombError};
use crate::qlaurent::{qpow, QLaurent, QRational};
use crate::twist::{for_each_chain, twist_program, Orientation};
use crate::webcore::{WebDiagram, WebError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvariantError {
    #[error(transparent)]
    Comb(#[from] QCombError),
    #[error("basis index {k} out of range 0..={d}")]
    IndexOutOfRange { k: usize, d: usize },
    #[error("number of full twists must be at least 1")]
    ZeroTwists,
    #[error("invariant did not reduce to a Laurent polynomial: {0}")]
    DenominatorNotCleared(QRational),
    #[error(transparent)]
    Web(#[from] WebError),
}

/// A (2,2m)-torus link with components colored (s,0) and (t,0).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ColoredLinkSpec {
    pub orientation: Orientation,
    pub m: usize,
    pub s: usize,
    pub t: usize,
}

impl ColoredLinkSpec {
    pub fn new(orientation: Orientation, m: usize, s: usize, t: usize) -> Result<Self, InvariantError> {
        if m == 0 {
            return Err(InvariantError::ZeroTwists);
        }
        Ok(ColoredLinkSpec { orientation, m, s, t })
    }

    pub fn d(&self) -> usize {
        self.s.min(self.t)
    }

    pub fn delta(&self) -> usize {
        self.s.abs_diff(self.t)
    }
}

impl fmt::Display for ColoredLinkSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "T(2,{}) {} s={} t={}", 2 * self.m, self.orientation, self.s, self.t)
    }
}

fn one_minus_q(n: i64) -> QLaurent {
    QLaurent::one() - qpow(6 * n as i32)
}

/// Value of the clasped unknot colored (n,0): [n+1][n+2]/[2].
pub fn delta(n: i64) -> Result<QLaurent, InvariantError> {
    if n < 0 {
        return Err(QCombError::NegativeArgument(n).into());
    }
    let num = &quantum_int(n + 1)? * &quantum_int(n + 2)?;
    Ok(num.div_exact(&quantum_int(2)?).expect("[2] divides [n+1][n+2]"))
}

/// The same value as q^{-n}(1-q^{n+1})(1-q^{n+2})/((1-q)(1-q^2)).
pub fn delta_product_form(n: i64) -> Result<QLaurent, InvariantError> {
    if n < 0 {
        return Err(QCombError::NegativeArgument(n).into());
    }
    let num = &(&qpow(-6 * n as i32) * &one_minus_q(n + 1)) * &one_minus_q(n + 2);
    Ok(num.div_exact(&(&one_minus_q(1) * &one_minus_q(2))).expect("exact division"))
}

fn check_index(s: usize, t: usize, k: usize) -> Result<usize, InvariantError> {
    let d = s.min(t);
    if k > d {
        return Err(InvariantError::IndexOutOfRange { k, d });
    }
    Ok(d)
}

fn ratio(num: QLaurent, den: QLaurent) -> QRational {
    QRational::new(num, den).expect("nonzero denominator")
}

/// Closure of the parallel basis web with index k: [d-k+1] D(s) D(t) / D(d-k).
pub fn closure_eval(s: usize, t: usize, k: usize) -> Result<QRational, InvariantError> {
    let d = check_index(s, t, k)?;
    let n = (d - k) as i64;
    let num = &(&quantum_int(n + 1)? * &delta(s as i64)?) * &delta(t as i64)?;
    Ok(ratio(num, delta(n)?))
}

/// Closure of the antiparallel basis web with index k: D(s) D(t) / D(d-k).
pub fn antiparallel_closure_eval(s: usize, t: usize, k: usize) -> Result<QRational, InvariantError> {
    let d = check_index(s, t, k)?;
    let num = &delta(s as i64)? * &delta(t as i64)?;
    Ok(ratio(num, delta((d - k) as i64)?))
}

pub fn oriented_closure_eval(kind: Orientation, s: usize, t: usize, k: usize) -> Result<QRational, InvariantError> {
    match kind {
        Orientation::Parallel => closure_eval(s, t, k),
        Orientation::Antiparallel => antiparallel_closure_eval(s, t, k),
    }
}

/// Which closing factor the parallel sum uses. `Displayed` keeps the factor
/// (1-q^2)/(1-q^{d-k_m+1}) exactly as usually printed; `Derived` uses
/// (1-q^2)/(1-q^{d-k_m+2}), which is what the twist expansion and the
/// closure value actually produce.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParallelFactor {
    Derived,
    Displayed,
}

/// The torus-link sum without the final Laurent check.
pub fn jones_torus_sum(spec: &ColoredLinkSpec, factor: ParallelFactor) -> Result<QRational, InvariantError> {
    if spec.m == 0 {
        return Err(InvariantError::ZeroTwists);
    }
    let (d, delta_) = (spec.d() as i64, spec.delta() as i64);
    let m = spec.m as i64;
    let anti = spec.orientation == Orientation::Antiparallel;
    // exponents in sixths
    let pre = if anti { -4 * m * d * (d + delta_) - 12 * m * d } else { -2 * m * d * (d + delta_) - 6 * m * d };
    let mut err = None;
    let mut by_last: std::collections::BTreeMap<i64, QLaurent> = Default::default();
    for_each_chain(spec.d(), spec.m, &mut |chain| {
        let km = *chain.last().unwrap() as i64;
        let lin = if anti { 2 } else { 1 };
        let e: i64 = chain[1..].iter().map(|&k| {
            let k = k as i64;
            k * (k + delta_) + lin * k
        }).sum::<i64>()
            + lin * (d - km);
        let mut parts: Vec<i64> = chain.windows(2).map(|w| (w[0] - w[1]) as i64).collect();
        parts.push(km);
        let c = q_multinom(d, &parts).and_then(|mult| Ok(&pochhammer_ratio(d + delta_, km + delta_)? * &mult));
        match c {
            Ok(c) => {
                let slot = by_last.entry(km).or_default();
                *slot = &*slot + &(&qpow((6 * e) as i32) * &c);
            }
            Err(e) => err = Some(e),
        }
    });
    if let Some(e) = err {
        return Err(e.into());
    }
    let mut total = QRational::zero();
    for (km, c) in by_last {
        let n = d - km;
        let (num, den) = if anti {
            (&one_minus_q(1) * &one_minus_q(2), &one_minus_q(n + 1) * &one_minus_q(n + 2))
        } else {
            let top = match factor {
                ParallelFactor::Derived => n + 2,
                ParallelFactor::Displayed => n + 1,
            };
            (one_minus_q(2), one_minus_q(top))
        };
        total = &total + &ratio(&c * &num, den);
    }
    let scale = &(&qpow(pre as i32) * &delta(spec.s as i64)?) * &delta(spec.t as i64)?;
    Ok(&total * &QRational::from(scale))
}

/// The sl3 colored Jones polynomial of the torus link, checked to be a
/// Laurent polynomial.
pub fn jones_torus(spec: &ColoredLinkSpec) -> Result<QRational, InvariantError> {
    let v = jones_torus_sum(spec, ParallelFactor::Derived)?;
    if v.to_laurent().is_none() {
        return Err(InvariantError::DenominatorNotCleared(v));
    }
    Ok(v)
}

/// Same as [`jones_torus`], as a Laurent polynomial.
pub fn jones_torus_laurent(spec: &ColoredLinkSpec) -> Result<QLaurent, InvariantError> {
    Ok(jones_torus(spec)?.to_laurent().unwrap())
}

/// Closed web of the torus link: the twisted clasped bundles with the ends
/// joined around the right. One clasp per component.
pub fn build_torus_diagram(spec: &ColoredLinkSpec) -> Result<WebDiagram, InvariantError> {
    if spec.m == 0 {
        return Err(InvariantError::ZeroTwists);
    }
    let p = twist_program(spec.orientation, spec.s, spec.t, spec.m, false)?;
    Ok(p.closure()?.materialize()?)
}
