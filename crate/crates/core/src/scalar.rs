//! Scalar abstraction for the rational-function layer.
//!
//! Polynomials and rational functions are generic over [`Scalar`] so the same
//! exact algebra runs on plain complex numbers and on first-order dual
//! numbers. The dual instantiation differentiates residues of the
//! deformation family with respect to its parameters without finite
//! differences: branch decisions (gcd trimming, pivoting) are taken on the
//! value part, so the derivative follows the same algebraic path as the
//! value.

use core::ops::{Add, Div, Mul, Neg, Sub};

use crate::C64;

/// Field-like scalar with a distinguished complex "value part".
pub trait Scalar:
    Copy
    + PartialEq
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + core::fmt::Debug
{
    /// Whether rational reduction may cancel common polynomial factors.
    /// Dual numbers must not: ε² = 0 makes (z−r)² exactly divisible by
    /// (z−r+ε), so a cancellation can silently move a pole to first order
    /// and break fixed-point residue extraction. Unreduced representatives
    /// stay correct because pole orders and expansions deflate shared
    /// factors on the fly.
    const REDUCTION_CANCELS: bool;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_c64(c: C64) -> Self;
    /// Value part, used for magnitude tests and branch decisions.
    fn value(&self) -> C64;

    #[inline]
    fn from_f64(x: f64) -> Self {
        Self::from_c64(C64::new(x, 0.0))
    }

    /// Magnitude of the value part.
    #[inline]
    fn mag(&self) -> f64 {
        self.value().norm()
    }

    /// Magnitude including any derivative payload; zero-tests that decide
    /// algebraic structure (trimming, root deflation, verified division)
    /// must use this so differentiation survives branchy algorithms.
    #[inline]
    fn total_mag(&self) -> f64 {
        self.mag()
    }

    #[inline]
    fn is_finite(&self) -> bool {
        let v = self.value();
        v.re.is_finite() && v.im.is_finite()
    }
}

impl Scalar for C64 {
    const REDUCTION_CANCELS: bool = true;

    #[inline]
    fn zero() -> Self {
        C64::new(0.0, 0.0)
    }
    #[inline]
    fn one() -> Self {
        C64::new(1.0, 0.0)
    }
    #[inline]
    fn from_c64(c: C64) -> Self {
        c
    }
    #[inline]
    fn value(&self) -> C64 {
        *self
    }
}

/// First-order dual number over C64: `val + ε·der` with ε² = 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Dual {
    pub val: C64,
    pub der: C64,
}

impl Dual {
    #[inline]
    pub fn new(val: C64, der: C64) -> Self {
        Dual { val, der }
    }

    /// Constant (derivative zero).
    #[inline]
    pub fn constant(val: C64) -> Self {
        Dual { val, der: C64::new(0.0, 0.0) }
    }

    /// Independent variable seed (derivative one).
    #[inline]
    pub fn variable(val: C64) -> Self {
        Dual { val, der: C64::new(1.0, 0.0) }
    }
}

impl Add for Dual {
    type Output = Dual;
    #[inline]
    fn add(self, rhs: Dual) -> Dual {
        Dual::new(self.val + rhs.val, self.der + rhs.der)
    }
}

impl Sub for Dual {
    type Output = Dual;
    #[inline]
    fn sub(self, rhs: Dual) -> Dual {
        Dual::new(self.val - rhs.val, self.der - rhs.der)
    }
}

impl Mul for Dual {
    type Output = Dual;
    #[inline]
    fn mul(self, rhs: Dual) -> Dual {
        Dual::new(self.val * rhs.val, self.val * rhs.der + self.der * rhs.val)
    }
}

impl Div for Dual {
    type Output = Dual;
    #[inline]
    fn div(self, rhs: Dual) -> Dual {
        let v = self.val / rhs.val;
        Dual::new(v, (self.der - v * rhs.der) / rhs.val)
    }
}

impl Neg for Dual {
    type Output = Dual;
    #[inline]
    fn neg(self) -> Dual {
        Dual::new(-self.val, -self.der)
    }
}

impl Scalar for Dual {
    const REDUCTION_CANCELS: bool = false;

    #[inline]
    fn zero() -> Self {
        Dual::constant(C64::new(0.0, 0.0))
    }
    #[inline]
    fn total_mag(&self) -> f64 {
        self.val.norm() + self.der.norm()
    }
    #[inline]
    fn one() -> Self {
        Dual::constant(C64::new(1.0, 0.0))
    }
    #[inline]
    fn from_c64(c: C64) -> Self {
        Dual::constant(c)
    }
    #[inline]
    fn value(&self) -> C64 {
        self.val
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::c64;

    #[test]
    fn dual_quotient_rule() {
        // d/dx [x / (x + 2)] = 2 / (x + 2)^2 at x = 1+i
        let x = Dual::variable(c64(1.0, 1.0));
        let two = Dual::constant(c64(2.0, 0.0));
        let q = x / (x + two);
        let denom = (c64(3.0, 1.0)) * (c64(3.0, 1.0));
        let expect = c64(2.0, 0.0) / denom;
        assert!((q.der - expect).norm() < 1e-14);
    }

    #[test]
    fn dual_product_rule() {
        let x = Dual::variable(c64(0.5, -0.25));
        let p = x * x * x;
        let expect = c64(3.0, 0.0) * c64(0.5, -0.25) * c64(0.5, -0.25);
        assert!((p.der - expect).norm() < 1e-14);
    }
}
