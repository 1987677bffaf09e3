//! Quantum integers, q-Pochhammer symbols and q-binomial coefficients.

use std::cell::RefCell;

use thiserror::Error;

use crate::qlaurent::{qpow, QLaurent};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QCombError {
    #[error("negative argument {0}")]
    NegativeArgument(i64),
    #[error("parts sum to {sum}, expected {n}")]
    PartsSumMismatch { n: i64, sum: i64 },
}

/// Memo tables for quantum factorials and Pochhammer symbols.
#[derive(Debug, Default, Clone)]
pub struct QCombCache {
    qfact: Vec<QLaurent>,
    poch: Vec<QLaurent>,
}

impl QCombCache {
    pub fn new() -> Self {
        Self::default()
    }

    /// [n]! = [1][2]...[n]
    pub fn quantum_factorial(&mut self, n: usize) -> QLaurent {
        if self.qfact.is_empty() {
            self.qfact.push(QLaurent::one());
        }
        while self.qfact.len() <= n {
            let i = self.qfact.len();
            let next = self.qfact[i - 1].clone() * quantum_int_raw(i);
            self.qfact.push(next);
        }
        self.qfact[n].clone()
    }

    /// (q)_n
    pub fn pochhammer(&mut self, n: usize) -> QLaurent {
        if self.poch.is_empty() {
            self.poch.push(QLaurent::one());
        }
        while self.poch.len() <= n {
            let i = self.poch.len();
            let next = self.poch[i - 1].clone() * (QLaurent::one() - qpow(6 * i as i32));
            self.poch.push(next);
        }
        self.poch[n].clone()
    }
}

thread_local! {
    static CACHE: RefCell<QCombCache> = RefCell::new(QCombCache::new());
}

fn with_cache<R>(f: impl FnOnce(&mut QCombCache) -> R) -> R {
    CACHE.with(|c| f(&mut c.borrow_mut()))
}

fn nonneg(n: i64) -> Result<usize, QCombError> {
    usize::try_from(n).map_err(|_| QCombError::NegativeArgument(n))
}

fn quantum_int_raw(n: usize) -> QLaurent {
    let top = 3 * (n as i32 - 1);
    QLaurent::from_terms((0..n as i32).map(|j| (top - 6 * j, 1)))
}

/// [n] = (q^{n/2} - q^{-n/2}) / (q^{1/2} - q^{-1/2})
pub fn quantum_int(n: i64) -> Result<QLaurent, QCombError> {
    Ok(quantum_int_raw(nonneg(n)?))
}

pub fn quantum_factorial(n: i64) -> Result<QLaurent, QCombError> {
    let n = nonneg(n)?;
    Ok(with_cache(|c| c.quantum_factorial(n)))
}

/// [n]! / ([k]! [n-k]!), zero outside 0 <= k <= n.
pub fn quantum_binom(n: i64, k: i64) -> Result<QLaurent, QCombError> {
    let n = nonneg(n)?;
    if k < 0 || k as usize > n {
        return Ok(QLaurent::zero());
    }
    let k = k as usize;
    let (num, den) = with_cache(|c| (c.quantum_factorial(n), c.quantum_factorial(k) * c.quantum_factorial(n - k)));
    Ok(num.div_exact(&den).expect("quantum binomial is a Laurent polynomial"))
}

/// (q)_n = (1-q)(1-q^2)...(1-q^n)
pub fn q_pochhammer(n: i64) -> Result<QLaurent, QCombError> {
    let n = nonneg(n)?;
    Ok(with_cache(|c| c.pochhammer(n)))
}

/// Gaussian binomial (q)_n / ((q)_k (q)_{n-k}), zero outside 0 <= k <= n.
pub fn q_binom(n: i64, k: i64) -> Result<QLaurent, QCombError> {
    let n = nonneg(n)?;
    if k < 0 || k as usize > n {
        return Ok(QLaurent::zero());
    }
    let k = k as usize;
    let (num, den) = with_cache(|c| (c.pochhammer(n), c.pochhammer(k) * c.pochhammer(n - k)));
    Ok(num.div_exact(&den).expect("Gaussian binomial is a polynomial"))
}

/// (q)_n / ((q)_{k_1} ... (q)_{k_m}) with k_1 + ... + k_m = n.
pub fn q_multinom(n: i64, parts: &[i64]) -> Result<QLaurent, QCombError> {
    let nn = nonneg(n)?;
    for &p in parts {
        nonneg(p)?;
    }
    let sum: i64 = parts.iter().sum();
    if sum != n {
        return Err(QCombError::PartsSumMismatch { n, sum });
    }
    let (num, den) = with_cache(|c| {
        let den = parts.iter().fold(QLaurent::one(), |acc, &p| acc * c.pochhammer(p as usize));
        (c.pochhammer(nn), den)
    });
    Ok(num.div_exact(&den).expect("q-multinomial is a polynomial"))
}

/// (q)_a / (q)_b for a >= b >= 0, which is the polynomial (1-q^{b+1})...(1-q^a).
pub fn pochhammer_ratio(a: i64, b: i64) -> Result<QLaurent, QCombError> {
    let a = nonneg(a)?;
    let b = nonneg(b)?;
    assert!(a >= b, "pochhammer_ratio needs a >= b");
    Ok(((b + 1)..=a).fold(QLaurent::one(), |acc, i| acc * (QLaurent::one() - qpow(6 * i as i32))))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qp(c: &[i64]) -> QLaurent {
        QLaurent::from_q_coeffs(c)
    }

    #[test]
    fn quantum_int_examples() {
        assert!(quantum_int(0).unwrap().is_zero());
        assert_eq!(quantum_int(2).unwrap(), qpow(3) + qpow(-3));
        assert_eq!(quantum_int(3).unwrap(), qpow(6) + QLaurent::one() + qpow(-6));
        assert_eq!(quantum_int(-1), Err(QCombError::NegativeArgument(-1)));
    }

    #[test]
    fn quantum_int_matches_definition() {
        // [n](q^{1/2} - q^{-1/2}) = q^{n/2} - q^{-n/2}
        for n in 0..10 {
            let lhs = quantum_int(n).unwrap() * (qpow(3) - qpow(-3));
            assert_eq!(lhs, qpow(3 * n as i32) - qpow(-3 * n as i32));
        }
    }

    #[test]
    fn binomial_examples() {
        assert!(quantum_binom(5, 0).unwrap().is_one());
        assert_eq!(quantum_binom(2, 1).unwrap(), quantum_int(2).unwrap());
        // [4]!/([2]![2]!): multiply back by the denominator
        let b = quantum_binom(4, 2).unwrap();
        let two = quantum_int(2).unwrap();
        assert_eq!(&b * &(&two * &two), quantum_factorial(4).unwrap());
        assert_eq!(b, qpow(12) + qpow(6) + QLaurent::constant(2) + qpow(-6) + qpow(-12));
    }

    #[test]
    fn pochhammer_examples() {
        assert!(q_pochhammer(0).unwrap().is_one());
        assert_eq!(q_pochhammer(1).unwrap(), qp(&[1, -1]));
        assert_eq!(q_pochhammer(2).unwrap(), qp(&[1, -1, -1, 1]));
    }

    #[test]
    fn gaussian_examples() {
        assert!(q_binom(3, 5).unwrap().is_zero());
        assert_eq!(q_binom(2, 1).unwrap(), qp(&[1, 1]));
        assert_eq!(q_binom(4, 2).unwrap(), qp(&[1, 1, 2, 1, 1]));
    }

    #[test]
    fn multinomial_examples() {
        assert!(q_multinom(4, &[4]).unwrap().is_one());
        assert_eq!(q_multinom(2, &[1, 1]).unwrap(), qp(&[1, 1]));
        assert_eq!(q_multinom(3, &[1, 1, 1]).unwrap(), qp(&[1, 1]) * qp(&[1, 1, 1]));
        assert_eq!(q_multinom(3, &[1, 1]), Err(QCombError::PartsSumMismatch { n: 3, sum: 2 }));
        assert_eq!(q_multinom(1, &[2, -1]), Err(QCombError::NegativeArgument(-1)));
    }

    #[test]
    fn cache_matches_fresh_values() {
        let mut fresh = QCombCache::new();
        for n in (0..12).rev() {
            assert_eq!(fresh.pochhammer(n), q_pochhammer(n as i64).unwrap());
            assert_eq!(fresh.quantum_factorial(n), quantum_factorial(n as i64).unwrap());
        }
    }
}
