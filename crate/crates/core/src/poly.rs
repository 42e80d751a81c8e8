//! Dense complex-coefficient polynomials.
//!
//! Coefficients are stored lowest degree first. Construction trims trailing
//! coefficients that are tiny relative to the largest one (relative threshold
//! 1e-12), which is what "exact" means over floating coefficients here: the
//! inputs are low-degree with structured cancellations, so the trim threshold
//! separates genuine zeros from roundoff. Degrees are capped at 64; exceeding
//! the cap is an error rather than silent precision loss.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Hard cap on polynomial degree.
pub const DEGREE_CAP: usize = 64;

/// Relative coefficient threshold for trimming and gcd decisions.
pub const TRIM_REL: f64 = 1e-12;

/// Dense polynomial with coefficients in ascending degree order.
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial<T: Scalar> {
    coeffs: Vec<T>,
}

impl<T: Scalar> Polynomial<T> {
    /// Builds a polynomial, trimming near-zero trailing coefficients.
    pub fn new(coeffs: Vec<T>) -> Self {
        let mut p = Polynomial { coeffs };
        p.trim();
        p
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: vec![] }
    }

    pub fn one() -> Self {
        Polynomial { coeffs: vec![T::one()] }
    }

    pub fn constant(c: T) -> Self {
        Polynomial::new(vec![c])
    }

    /// c·z^k.
    pub fn monomial(c: T, k: usize) -> Self {
        let mut coeffs = vec![T::zero(); k + 1];
        coeffs[k] = c;
        Polynomial::new(coeffs)
    }

    /// z − a.
    pub fn linear_root(a: T) -> Self {
        Polynomial::new(vec![-a, T::one()])
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    /// Coefficient of z^k (zero beyond the stored degree).
    pub fn coeff(&self, k: usize) -> T {
        self.coeffs.get(k).copied().unwrap_or_else(T::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading(&self) -> T {
        self.coeffs.last().copied().unwrap_or_else(T::zero)
    }

    pub fn max_mag(&self) -> f64 {
        self.coeffs.iter().map(|c| c.mag()).fold(0.0, f64::max)
    }

    /// Largest coefficient magnitude including derivative payloads.
    pub fn max_total_mag(&self) -> f64 {
        self.coeffs.iter().map(|c| c.total_mag()).fold(0.0, f64::max)
    }

    fn trim(&mut self) {
        let scale = self.max_total_mag();
        if scale == 0.0 || !scale.is_finite() {
            if scale == 0.0 {
                self.coeffs.clear();
            }
            return;
        }
        let tol = TRIM_REL * scale;
        while let Some(last) = self.coeffs.last() {
            if last.total_mag() <= tol {
                self.coeffs.pop();
            } else {
                break;
            }
        }
        if self.coeffs.len() == 1 && self.coeffs[0].total_mag() <= tol {
            self.coeffs.clear();
        }
    }

    /// Errors if the degree exceeds [`DEGREE_CAP`].
    pub fn check_degree(&self) -> Result<()> {
        if self.coeffs.len() > DEGREE_CAP + 1 {
            return Err(Error::DegreeOverflow { degree: self.degree(), cap: DEGREE_CAP });
        }
        Ok(())
    }

    /// Horner evaluation.
    pub fn eval(&self, z: T) -> T {
        let mut acc = T::zero();
        for &c in self.coeffs.iter().rev() {
            acc = acc * z + c;
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Polynomial::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, &c)| c * T::from_f64(k as f64))
            .collect();
        Polynomial::new(coeffs)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|k| self.coeff(k) + other.coeff(k)).collect();
        Polynomial::new(coeffs)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|k| self.coeff(k) - other.coeff(k)).collect();
        Polynomial::new(coeffs)
    }

    pub fn neg(&self) -> Self {
        Polynomial { coeffs: self.coeffs.iter().map(|&c| -c).collect() }
    }

    pub fn scale(&self, s: T) -> Self {
        Polynomial::new(self.coeffs.iter().map(|&c| c * s).collect())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.is_zero() || other.is_zero() {
            return Ok(Polynomial::zero());
        }
        let mut coeffs = vec![T::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = coeffs[i + j] + a * b;
            }
        }
        let p = Polynomial::new(coeffs);
        p.check_degree()?;
        Ok(p)
    }

    /// Multiplies by z^k.
    pub fn mul_monomial(&self, k: usize) -> Self {
        if self.is_zero() {
            return Polynomial::zero();
        }
        let mut coeffs = vec![T::zero(); k];
        coeffs.extend_from_slice(&self.coeffs);
        Polynomial { coeffs }
    }

    /// Coefficient-reversal z^deg · p(1/z).
    pub fn reversed(&self) -> Self {
        let mut coeffs: Vec<T> = self.coeffs.iter().rev().copied().collect();
        while coeffs.last().map(|c| c.mag() == 0.0).unwrap_or(false) {
            coeffs.pop();
        }
        Polynomial::new(coeffs)
    }

    /// Euclidean division: self = q·div + r with deg r < deg div.
    pub fn div_rem(&self, div: &Self) -> Result<(Self, Self)> {
        if div.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        if self.degree() < div.degree() || self.is_zero() {
            return Ok((Polynomial::zero(), self.clone()));
        }
        let dlead = div.leading();
        let mut rem = self.coeffs.clone();
        let dq = self.degree() - div.degree();
        let mut quot = vec![T::zero(); dq + 1];
        for k in (0..=dq).rev() {
            let idx = k + div.degree();
            let c = rem[idx] / dlead;
            quot[k] = c;
            for (j, &d) in div.coeffs.iter().enumerate() {
                rem[k + j] = rem[k + j] - c * d;
            }
        }
        rem.truncate(div.degree());
        Ok((Polynomial::new(quot), Polynomial::new(rem)))
    }

    /// Monic gcd via the Euclidean algorithm with relative trimming.
    pub fn gcd(&self, other: &Self) -> Result<Self> {
        self.gcd_with_trim(other, TRIM_REL)
    }

    /// Gcd with an explicit remainder-trim threshold. Callers that cancel
    /// factors must verify the division afterwards: near-common roots can
    /// masquerade as common at loose thresholds.
    pub fn gcd_with_trim(&self, other: &Self, trim: f64) -> Result<Self> {
        let normalize = |p: &Polynomial<T>| -> Polynomial<T> {
            let m = p.max_mag();
            if m > 0.0 {
                p.scale(T::from_f64(1.0 / m))
            } else {
                p.clone()
            }
        };
        let mut a = normalize(self);
        let mut b = normalize(other);
        if a.is_zero() {
            return Ok(b.make_monic());
        }
        if b.is_zero() {
            return Ok(a.make_monic());
        }
        if a.degree() < b.degree() {
            core::mem::swap(&mut a, &mut b);
        }
        for _ in 0..2 * DEGREE_CAP + 4 {
            let (_, mut r) = a.div_rem(&b)?;
            // Remainder entries below the working scale count as zero.
            r.trim_against_scale(1.0, trim);
            if r.is_zero() {
                return Ok(b.make_monic());
            }
            a = b;
            b = normalize(&r);
        }
        Ok(Polynomial::one())
    }

    fn trim_against_scale(&mut self, scale: f64, trim: f64) {
        let tol = trim * scale;
        while let Some(last) = self.coeffs.last() {
            if last.total_mag() <= tol {
                self.coeffs.pop();
            } else {
                break;
            }
        }
        if self.coeffs.iter().all(|c| c.total_mag() <= tol) {
            self.coeffs.clear();
        }
    }

    pub fn make_monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let l = self.leading();
        Polynomial::new(self.coeffs.iter().map(|&c| c / l).collect())
    }

    /// Taylor coefficients around `p`: returns q with q(w) = self(w + p).
    pub fn shifted(&self, p: T) -> Self {
        if self.is_zero() {
            return Polynomial::zero();
        }
        // Repeated synthetic division by (z - p), in place.
        let d = self.coeffs.len() - 1;
        let mut c = self.coeffs.clone();
        for k in 0..=d {
            for i in (k..d).rev() {
                let carry = p * c[i + 1];
                c[i] = c[i] + carry;
            }
        }
        Polynomial { coeffs: c }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::c64;
    use crate::C64;

    fn p(re: &[f64]) -> Polynomial<C64> {
        Polynomial::new(re.iter().map(|&x| c64(x, 0.0)).collect())
    }

    #[test]
    fn div_rem_roundtrip() {
        let a = p(&[1.0, 0.0, -3.0, 2.0]);
        let b = p(&[-1.0, 1.0]);
        let (q, r) = a.div_rem(&b).unwrap();
        let back = q.mul(&b).unwrap().add(&r);
        for k in 0..4 {
            assert!((back.coeff(k) - a.coeff(k)).norm() < 1e-12);
        }
    }

    #[test]
    fn gcd_of_shared_factor() {
        // (z-1)(z-2) and (z-1)(z+3) share (z-1)
        let a = p(&[2.0, -3.0, 1.0]);
        let b = p(&[-3.0, 2.0, 1.0]);
        let g = a.gcd(&b).unwrap();
        assert_eq!(g.degree(), 1);
        assert!((g.coeff(0) - c64(-1.0, 0.0)).norm() < 1e-10);
        assert!((g.coeff(1) - c64(1.0, 0.0)).norm() < 1e-10);
    }

    #[test]
    fn gcd_coprime_is_constant() {
        let a = p(&[1.0, 1.0]);
        let b = p(&[2.0, 0.0, 1.0]);
        let g = a.gcd(&b).unwrap();
        assert_eq!(g.degree(), 0);
    }

    #[test]
    fn shift_matches_direct_expansion() {
        // (z-1)^2 shifted to p=1 is w^2
        let a = p(&[1.0, -2.0, 1.0]);
        let s = a.shifted(c64(1.0, 0.0));
        assert!(s.coeff(0).norm() < 1e-12);
        assert!(s.coeff(1).norm() < 1e-12);
        assert!((s.coeff(2) - c64(1.0, 0.0)).norm() < 1e-12);
        // general point check via evaluation
        let b = p(&[3.0, 1.0, -2.0, 0.5]);
        let p0 = c64(0.7, -0.3);
        let sb = b.shifted(p0);
        let w = c64(0.11, 0.05);
        assert!((sb.eval(w) - b.eval(w + p0)).norm() < 1e-12);
    }

    #[test]
    fn degree_cap_enforced() {
        let big = Polynomial::monomial(c64(1.0, 0.0), 40);
        assert!(big.mul(&big).is_err());
    }

    #[test]
    fn trim_keeps_relatively_small_polys() {
        let tiny = p(&[1e-20, 1e-19]);
        assert_eq!(tiny.degree(), 1);
    }
}
