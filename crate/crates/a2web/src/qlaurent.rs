//! Laurent polynomials in v = q^{1/6} with integer coefficients, and their
//! fraction field.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("denominator has non-unit lowest coefficient {0}")]
    NonUnitDenominator(i64),
}

/// Exact Laurent polynomial in v = q^{1/6}.
///
/// Terms are kept sorted by exponent with no zero coefficients, so derived
/// equality is equality of polynomials.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QLaurent {
    terms: Vec<(i32, i64)>,
}

fn ck_add(a: i64, b: i64) -> i64 {
    a.checked_add(b).expect("coefficient overflow")
}

fn ck_mul(a: i64, b: i64) -> i64 {
    a.checked_mul(b).expect("coefficient overflow")
}

impl QLaurent {
    pub fn zero() -> Self {
        QLaurent { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::monomial(0, 1)
    }

    pub fn constant(c: i64) -> Self {
        Self::monomial(0, c)
    }

    /// `c * v^exp`.
    pub fn monomial(exp: i32, c: i64) -> Self {
        if c == 0 {
            Self::zero()
        } else {
            QLaurent { terms: vec![(exp, c)] }
        }
    }

    /// Builds a polynomial from arbitrary (exponent, coefficient) pairs,
    /// merging repeats and dropping zeros.
    pub fn from_terms<I: IntoIterator<Item = (i32, i64)>>(it: I) -> Self {
        let mut v: Vec<(i32, i64)> = it.into_iter().collect();
        v.sort_unstable_by_key(|t| t.0);
        let mut out: Vec<(i32, i64)> = Vec::with_capacity(v.len());
        for (e, c) in v {
            match out.last_mut() {
                Some(last) if last.0 == e => last.1 = ck_add(last.1, c),
                _ => out.push((e, c)),
            }
        }
        out.retain(|t| t.1 != 0);
        QLaurent { terms: out }
    }

    /// Polynomial in q (integer exponents) from coefficients of 1, q, q^2, ...
    pub fn from_q_coeffs(coeffs: &[i64]) -> Self {
        Self::from_terms(coeffs.iter().enumerate().map(|(i, &c)| (6 * i as i32, c)))
    }

    pub fn terms(&self) -> &[(i32, i64)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0] == (0, 1)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn min_exp(&self) -> Option<i32> {
        self.terms.first().map(|t| t.0)
    }

    pub fn max_exp(&self) -> Option<i32> {
        self.terms.last().map(|t| t.0)
    }

    pub fn coeff(&self, exp: i32) -> i64 {
        match self.terms.binary_search_by_key(&exp, |t| t.0) {
            Ok(i) => self.terms[i].1,
            Err(_) => 0,
        }
    }

    pub fn as_monomial(&self) -> Option<(i32, i64)> {
        if self.terms.len() == 1 {
            Some(self.terms[0])
        } else {
            None
        }
    }

    /// Multiplies by v^k.
    pub fn shift(&self, k: i32) -> Self {
        QLaurent { terms: self.terms.iter().map(|&(e, c)| (e + k, c)).collect() }
    }

    pub fn scale(&self, c: i64) -> Self {
        if c == 0 {
            return Self::zero();
        }
        QLaurent { terms: self.terms.iter().map(|&(e, x)| (e, ck_mul(x, c))).collect() }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Keeps only the terms with v-exponent at most `max_exp`.
    pub fn truncate_above(&self, max_exp: i32) -> Self {
        QLaurent { terms: self.terms.iter().copied().filter(|t| t.0 <= max_exp).collect() }
    }

    /// The (v-exponent, coefficient) pairs, ascending.
    pub fn pairs(&self) -> Vec<(i32, i64)> {
        self.terms.clone()
    }

    /// Exact division; `None` if `d` does not divide `self` in the Laurent ring.
    pub fn div_exact(&self, d: &QLaurent) -> Option<QLaurent> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        if let Some((e, c)) = d.as_monomial() {
            if self.terms.iter().all(|t| t.1 % c == 0) {
                return Some(QLaurent { terms: self.terms.iter().map(|&(x, y)| (x - e, y / c)).collect() });
            }
            return None;
        }
        let mut rem = self.clone();
        let (dlo, dhi) = (d.min_exp().unwrap(), d.max_exp().unwrap());
        let dlead = d.coeff(dhi);
        let mut quot = Vec::new();
        while !rem.is_zero() {
            let (rhi, rlead) = *rem.terms.last().unwrap();
            if rhi - dhi < rem.min_exp().unwrap() - dlo || rlead % dlead != 0 {
                return None;
            }
            let qe = rhi - dhi;
            let qc = rlead / dlead;
            quot.push((qe, qc));
            rem = &rem - &d.shift(qe).scale(qc);
        }
        Some(Self::from_terms(quot))
    }
}

impl Add for &QLaurent {
    type Output = QLaurent;
    fn add(self, rhs: &QLaurent) -> QLaurent {
        let (a, b) = (&self.terms, &rhs.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
                out.push(a[i]);
                i += 1;
            } else if i == a.len() || b[j].0 < a[i].0 {
                out.push(b[j]);
                j += 1;
            } else {
                let c = ck_add(a[i].1, b[j].1);
                if c != 0 {
                    out.push((a[i].0, c));
                }
                i += 1;
                j += 1;
            }
        }
        QLaurent { terms: out }
    }
}

impl Neg for &QLaurent {
    type Output = QLaurent;
    fn neg(self) -> QLaurent {
        QLaurent { terms: self.terms.iter().map(|&(e, c)| (e, -c)).collect() }
    }
}

impl Sub for &QLaurent {
    type Output = QLaurent;
    fn sub(self, rhs: &QLaurent) -> QLaurent {
        self + &(-rhs)
    }
}

impl Mul for &QLaurent {
    type Output = QLaurent;
    fn mul(self, rhs: &QLaurent) -> QLaurent {
        if self.is_zero() || rhs.is_zero() {
            return QLaurent::zero();
        }
        if let Some((e, c)) = rhs.as_monomial() {
            return self.shift(e).scale(c);
        }
        if let Some((e, c)) = self.as_monomial() {
            return rhs.shift(e).scale(c);
        }
        let lo = self.min_exp().unwrap() + rhs.min_exp().unwrap();
        let hi = self.max_exp().unwrap() + rhs.max_exp().unwrap();
        let span = (hi - lo) as usize + 1;
        if span <= 4 * (self.len() * rhs.len()) + 64 {
            let mut dense = vec![0i64; span];
            for &(ea, ca) in &self.terms {
                for &(eb, cb) in &rhs.terms {
                    let k = (ea + eb - lo) as usize;
                    dense[k] = ck_add(dense[k], ck_mul(ca, cb));
                }
            }
            let terms = dense
                .into_iter()
                .enumerate()
                .filter(|t| t.1 != 0)
                .map(|(k, c)| (k as i32 + lo, c))
                .collect();
            QLaurent { terms }
        } else {
            QLaurent::from_terms(
                self.terms
                    .iter()
                    .flat_map(|&(ea, ca)| rhs.terms.iter().map(move |&(eb, cb)| (ea + eb, ck_mul(ca, cb)))),
            )
        }
    }
}

macro_rules! owned_binop {
    ($tr:ident, $m:ident) => {
        impl $tr for QLaurent {
            type Output = QLaurent;
            fn $m(self, rhs: QLaurent) -> QLaurent {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&QLaurent> for QLaurent {
            type Output = QLaurent;
            fn $m(self, rhs: &QLaurent) -> QLaurent {
                (&self).$m(rhs)
            }
        }
    };
}
owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

impl Neg for QLaurent {
    type Output = QLaurent;
    fn neg(self) -> QLaurent {
        -&self
    }
}

impl AddAssign<&QLaurent> for QLaurent {
    fn add_assign(&mut self, rhs: &QLaurent) {
        *self = &*self + rhs;
    }
}

impl From<i64> for QLaurent {
    fn from(c: i64) -> Self {
        QLaurent::constant(c)
    }
}

/// The monomial q^{sixths/6}.
pub fn qpow(sixths: i32) -> QLaurent {
    QLaurent::monomial(sixths, 1)
}

/// Ring arithmetic selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RingOp {
    Add,
    Sub,
    Mul,
    Neg,
}

/// `neg` ignores `b`.
pub fn ql_arith(op: RingOp, a: &QLaurent, b: &QLaurent) -> QLaurent {
    match op {
        RingOp::Add => a + b,
        RingOp::Sub => a - b,
        RingOp::Mul => a * b,
        RingOp::Neg => -a,
    }
}

fn fmt_exp(e: i32) -> String {
    let g = e.gcd(&6);
    let (n, d) = (e / g, 6 / g);
    if d == 1 {
        if n == 1 {
            "q".to_string()
        } else {
            format!("q^{}", n)
        }
    } else {
        format!("q^({}/{})", n, d)
    }
}

impl fmt::Display for QLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, &(e, c)) in self.terms.iter().enumerate() {
            let mag = c.unsigned_abs();
            if i == 0 {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c < 0 { '-' } else { '+' })?;
            }
            if e == 0 {
                write!(f, "{}", mag)?;
            } else if mag == 1 {
                write!(f, "{}", fmt_exp(e))?;
            } else {
                write!(f, "{}*{}", mag, fmt_exp(e))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for QLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QLaurent({})", self)
    }
}

// ---------------------------------------------------------------------------
// Dense integer polynomials (ascending coefficients) used for gcd reduction.

type Poly = Vec<BigInt>;

fn trim(p: &mut Poly) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn content(p: &Poly) -> BigInt {
    p.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

fn primitive(p: &Poly) -> Poly {
    let c = content(p);
    if c.is_zero() || c.is_one() {
        return p.clone();
    }
    p.iter().map(|x| x / &c).collect()
}

/// Pseudo-remainder of `a` by `b` (deg b >= 1 or constant).
fn prem(a: &Poly, b: &Poly) -> Poly {
    let mut r = a.clone();
    let db = b.len() - 1;
    let lb = b[db].clone();
    while r.len() > db && !r.is_empty() {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        for c in r.iter_mut() {
            *c *= &lb;
        }
        for (i, bc) in b.iter().enumerate() {
            r[dr - db + i] -= &lr * bc;
        }
        trim(&mut r);
        let c = content(&r);
        if !c.is_zero() && !c.is_one() {
            r = r.iter().map(|x| x / &c).collect();
        }
    }
    r
}

/// Primitive gcd with positive leading coefficient.
fn poly_gcd(a: &Poly, b: &Poly) -> Poly {
    let mut x = primitive(a);
    let mut y = primitive(b);
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    while !y.is_empty() {
        if y.len() == 1 {
            return vec![BigInt::one()];
        }
        let r = prem(&x, &y);
        x = y;
        y = primitive(&r);
    }
    if x.last().is_some_and(|c| c.is_negative()) {
        x = x.iter().map(|c| -c).collect();
    }
    x
}

/// Exact division of integer polynomials; panics on a nonzero remainder.
fn poly_div_exact(a: &Poly, b: &Poly) -> Poly {
    if a.is_empty() {
        return Vec::new();
    }
    let mut r = a.clone();
    let db = b.len() - 1;
    let mut q = vec![BigInt::zero(); a.len().saturating_sub(db).max(1)];
    while !r.is_empty() && r.len() > db {
        let dr = r.len() - 1;
        let (qc, rem) = r[dr].div_rem(&b[db]);
        assert!(rem.is_zero(), "inexact polynomial division");
        for (i, bc) in b.iter().enumerate() {
            r[dr - db + i] -= &qc * bc;
        }
        q[dr - db] = qc;
        trim(&mut r);
    }
    assert!(r.is_empty(), "inexact polynomial division");
    trim(&mut q);
    q
}

/// Converts to a dense polynomial after dividing exponents by `step` and
/// subtracting `base`.
fn to_poly(p: &QLaurent, base: i32, step: i32) -> Poly {
    let deg = ((p.max_exp().unwrap() - base) / step) as usize;
    let mut out = vec![BigInt::zero(); deg + 1];
    for &(e, c) in p.terms() {
        out[((e - base) / step) as usize] = BigInt::from(c);
    }
    out
}

fn from_poly(p: &Poly, base: i32, step: i32) -> QLaurent {
    QLaurent::from_terms(p.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| {
        (base + step * i as i32, c.to_i64().expect("coefficient overflow"))
    }))
}

/// Reduced fraction num/den of Laurent polynomials.
///
/// Canonical form: numerator and denominator coprime (up to monomials and
/// integer content), denominator with lowest exponent 0 and a positive
/// lowest coefficient.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QRational {
    num: QLaurent,
    den: QLaurent,
}

impl QRational {
    pub fn zero() -> Self {
        QRational { num: QLaurent::zero(), den: QLaurent::one() }
    }

    pub fn one() -> Self {
        QRational { num: QLaurent::one(), den: QLaurent::one() }
    }

    pub fn new(num: QLaurent, den: QLaurent) -> Result<Self, QError> {
        if den.is_zero() {
            return Err(QError::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }

    pub fn num(&self) -> &QLaurent {
        &self.num
    }

    pub fn den(&self) -> &QLaurent {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// The Laurent polynomial, when the denominator is 1.
    pub fn to_laurent(&self) -> Option<QLaurent> {
        if self.den.is_one() {
            Some(self.num.clone())
        } else {
            None
        }
    }

    fn reduce(num: QLaurent, den: QLaurent) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let nlo = num.min_exp().unwrap();
        let dlo = den.min_exp().unwrap();
        if let Some((_, dc)) = den.as_monomial() {
            let mut n = num.shift(-dlo);
            let g = n.terms().iter().fold(dc.unsigned_abs(), |g, t| g.gcd(&t.1.unsigned_abs())) as i64;
            let sgn = dc.signum();
            n = QLaurent { terms: n.terms.iter().map(|&(e, c)| (e, c / g * sgn)).collect() };
            return QRational { num: n, den: QLaurent::constant(dc.abs() / g) };
        }
        let step = num
            .terms()
            .iter()
            .map(|t| t.0 - nlo)
            .chain(den.terms().iter().map(|t| t.0 - dlo))
            .fold(0i32, |g, e| g.gcd(&e))
            .max(1);
        let np = to_poly(&num, nlo, step);
        let dp = to_poly(&den, dlo, step);
        let g = poly_gcd(&np, &dp);
        let (mut np, mut dp) = if g.len() > 1 { (poly_div_exact(&np, &g), poly_div_exact(&dp, &g)) } else { (np, dp) };
        let c = content(&np).gcd(&content(&dp));
        if !c.is_one() {
            np = np.iter().map(|x| x / &c).collect();
            dp = dp.iter().map(|x| x / &c).collect();
        }
        if dp[0].is_negative() {
            np = np.iter().map(|x| -x).collect();
            dp = dp.iter().map(|x| -x).collect();
        }
        QRational { num: from_poly(&np, nlo - dlo, step), den: from_poly(&dp, 0, step) }
    }

    pub fn checked_div(&self, rhs: &QRational) -> Result<QRational, QError> {
        if rhs.is_zero() {
            return Err(QError::DivisionByZero);
        }
        Ok(Self::reduce(&self.num * &rhs.den, &self.den * &rhs.num))
    }

    pub fn recip(&self) -> Result<QRational, QError> {
        QRational::one().checked_div(self)
    }

    /// Expansion as a power series in v, dropping every term with q-exponent
    /// above `order`.
    pub fn series_truncate(&self, order: i32) -> Result<QLaurent, QError> {
        let d0 = self.den.coeff(0);
        if d0 != 1 {
            return Err(QError::NonUnitDenominator(d0));
        }
        let max_exp = 6 * order;
        let lo = match self.num.min_exp() {
            None => return Ok(QLaurent::zero()),
            Some(lo) => lo,
        };
        if lo > max_exp {
            return Ok(QLaurent::zero());
        }
        let len = (max_exp - lo) as usize + 1;
        let mut inv = vec![0i64; len];
        inv[0] = 1;
        for k in 1..len {
            let mut acc = 0i64;
            for &(e, c) in self.den.terms().iter().skip(1) {
                let e = e as usize;
                if e > k {
                    break;
                }
                acc = ck_add(acc, ck_mul(c, inv[k - e]));
            }
            inv[k] = -acc;
        }
        let inv = QLaurent::from_terms(inv.into_iter().enumerate().map(|(i, c)| (i as i32, c)));
        Ok((&self.num * &inv).truncate_above(max_exp))
    }
}

impl From<QLaurent> for QRational {
    fn from(num: QLaurent) -> Self {
        QRational { num, den: QLaurent::one() }
    }
}

impl From<i64> for QRational {
    fn from(c: i64) -> Self {
        QRational::from(QLaurent::constant(c))
    }
}

impl Add for &QRational {
    type Output = QRational;
    fn add(self, rhs: &QRational) -> QRational {
        if self.den == rhs.den {
            if self.den.is_one() {
                return QRational::from(&self.num + &rhs.num);
            }
            return QRational::reduce(&self.num + &rhs.num, self.den.clone());
        }
        QRational::reduce(&(&self.num * &rhs.den) + &(&rhs.num * &self.den), &self.den * &rhs.den)
    }
}

impl Neg for &QRational {
    type Output = QRational;
    fn neg(self) -> QRational {
        QRational { num: -&self.num, den: self.den.clone() }
    }
}

impl Sub for &QRational {
    type Output = QRational;
    fn sub(self, rhs: &QRational) -> QRational {
        self + &(-rhs)
    }
}

impl Mul for &QRational {
    type Output = QRational;
    fn mul(self, rhs: &QRational) -> QRational {
        if self.den.is_one() && rhs.den.is_one() {
            return QRational::from(&self.num * &rhs.num);
        }
        QRational::reduce(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

macro_rules! owned_binop_r {
    ($tr:ident, $m:ident) => {
        impl $tr for QRational {
            type Output = QRational;
            fn $m(self, rhs: QRational) -> QRational {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&QRational> for QRational {
            type Output = QRational;
            fn $m(self, rhs: &QRational) -> QRational {
                (&self).$m(rhs)
            }
        }
    };
}
owned_binop_r!(Add, add);
owned_binop_r!(Sub, sub);
owned_binop_r!(Mul, mul);

impl Neg for QRational {
    type Output = QRational;
    fn neg(self) -> QRational {
        -&self
    }
}

impl AddAssign<&QRational> for QRational {
    fn add_assign(&mut self, rhs: &QRational) {
        *self = &*self + rhs;
    }
}

/// Field arithmetic selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Sub,
    Mul,
    Div,
}

pub fn qr_arith(op: FieldOp, a: &QRational, b: &QRational) -> Result<QRational, QError> {
    Ok(match op {
        FieldOp::Add => a + b,
        FieldOp::Sub => a - b,
        FieldOp::Mul => a * b,
        FieldOp::Div => a.checked_div(b)?,
    })
}

pub fn series_truncate(r: &QRational, order: i32) -> Result<QLaurent, QError> {
    r.series_truncate(order)
}

/// Least common multiple of two nonzero Laurent polynomials, normalized like
/// a `QRational` denominator.
pub fn lcm(a: &QLaurent, b: &QLaurent) -> QLaurent {
    // a*b / gcd(a,b) == a * (b/gcd) and b/gcd is the reduced denominator of a/b.
    let r = QRational::reduce(a.clone(), b.clone());
    let base = QRational::reduce(QLaurent::one(), a.clone());
    let m = &base.den * &r.den;
    QRational::reduce(QLaurent::one(), m).den
}

impl fmt::Display for QRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for QRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QRational({})", self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i32) -> QLaurent {
        qpow(6 * n)
    }

    #[test]
    fn cancellation_and_square() {
        assert!((qpow(1) + -qpow(1)).is_zero());
        let two = qpow(3) + qpow(-3);
        assert_eq!(&two * &two, qpow(6) + QLaurent::constant(2) + qpow(-6));
    }

    #[test]
    fn qpow_examples() {
        assert_eq!(qpow(6).to_string(), "q");
        assert!(qpow(0).is_one());
        assert_eq!(qpow(-3).to_string(), "q^(-1/2)");
    }

    #[test]
    fn rendering() {
        let p = QLaurent::from_terms([(-3, -2), (0, 1), (2, 1), (12, 3), (-6, 1)]);
        assert_eq!(p.to_string(), "q^-1 - 2*q^(-1/2) + 1 + q^(1/3) + 3*q^2");
        assert_eq!(QLaurent::zero().to_string(), "0");
    }

    #[test]
    fn division_examples() {
        let two = QRational::from(qpow(3) + qpow(-3));
        let three = QRational::from(q(1) + QLaurent::one() + q(-1));
        let four = QRational::from(qpow(9) + qpow(3) + qpow(-3) + qpow(-9));
        let r = qr_arith(FieldOp::Div, &three, &two).unwrap();
        assert_eq!(&r * &two, three);
        assert!(!r.den().is_one());
        let r = four.checked_div(&two).unwrap();
        assert_eq!(r.to_laurent(), Some(q(1) + q(-1)));
        assert_eq!(two.checked_div(&QRational::zero()), Err(QError::DivisionByZero));
    }

    #[test]
    fn canonical_denominator() {
        // (2 - 2q) / (-4 q^3 + 4 q^4) = -1 / (2 q^3)
        let r = QRational::new(QLaurent::from_q_coeffs(&[2, -2]), QLaurent::from_terms([(18, -4), (24, 4)])).unwrap();
        assert_eq!(r.den(), &QLaurent::constant(2));
        assert_eq!(r.num(), &QLaurent::monomial(-18, -1));
    }

    #[test]
    fn series_examples() {
        let geo = QRational::new(QLaurent::one(), QLaurent::from_q_coeffs(&[1, -1])).unwrap();
        assert_eq!(geo.series_truncate(3).unwrap(), QLaurent::from_q_coeffs(&[1, 1, 1, 1]));
        let d = QLaurent::from_q_coeffs(&[1, -1]) * QLaurent::from_q_coeffs(&[1, 0, -1]);
        let r = QRational::new(QLaurent::one(), d).unwrap();
        assert_eq!(r.series_truncate(4).unwrap(), QLaurent::from_q_coeffs(&[1, 1, 2, 2, 3]));
        let p = QLaurent::from_q_coeffs(&[1, 2, 3]);
        assert_eq!(QRational::from(p.clone()).series_truncate(2).unwrap(), p);
        let bad = QRational::new(QLaurent::one(), QLaurent::from_q_coeffs(&[2, 1])).unwrap();
        assert_eq!(bad.series_truncate(3), Err(QError::NonUnitDenominator(2)));
    }

    #[test]
    fn exact_division() {
        let a = QLaurent::from_q_coeffs(&[1, 0, -1]);
        let b = QLaurent::from_q_coeffs(&[1, -1]);
        assert_eq!(a.div_exact(&b), Some(QLaurent::from_q_coeffs(&[1, 1])));
        assert_eq!(b.div_exact(&a), None);
    }

    #[test]
    fn lcm_of_overlapping() {
        let a = QLaurent::from_q_coeffs(&[1, -1]);
        let b = QLaurent::from_q_coeffs(&[1, 0, -1]);
        let l = lcm(&a, &b);
        assert!(l.div_exact(&a).is_some() && l.div_exact(&b).is_some());
        assert_eq!(l.max_exp(), Some(12));
    }
}
