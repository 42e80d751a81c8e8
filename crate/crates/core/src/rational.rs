//! Rational functions of z with complex coefficients.
//!
//! Canonical form: numerator and denominator coprime (approximate gcd at
//! relative threshold 1e-12), denominator monic, zero represented as 0/1.
//! Pole orders and residues are computed by exact coefficient algebra
//! (synthetic division and power-series division), not quadrature — they
//! feed the degree formulas and must be integers.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::scalar::Scalar;

/// Relative threshold deciding whether a denominator root is hit exactly.
const ROOT_REL: f64 = 1e-8;

/// Reduced quotient of two polynomials.
#[derive(Debug, Clone, PartialEq)]
pub struct RationalFunction<T: Scalar> {
    num: Polynomial<T>,
    den: Polynomial<T>,
}

/// Laurent expansion of a rational function about a finite point.
#[derive(Debug, Clone)]
pub struct LaurentExpansion<T: Scalar> {
    /// Order of the pole (0 when regular).
    pub pole_order: usize,
    /// Coefficients of (z-p)^{-pole_order}, (z-p)^{-pole_order+1}, ...
    pub coeffs: Vec<T>,
}

impl<T: Scalar> RationalFunction<T> {
    pub fn new(num: Polynomial<T>, den: Polynomial<T>) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        num.check_degree()?;
        den.check_degree()?;
        let mut r = RationalFunction { num, den };
        r.reduce()?;
        Ok(r)
    }

    pub fn zero() -> Self {
        RationalFunction { num: Polynomial::zero(), den: Polynomial::one() }
    }

    pub fn one() -> Self {
        RationalFunction { num: Polynomial::one(), den: Polynomial::one() }
    }

    pub fn constant(c: T) -> Self {
        RationalFunction { num: Polynomial::constant(c), den: Polynomial::one() }
    }

    /// The coordinate function z.
    pub fn variable() -> Self {
        RationalFunction { num: Polynomial::monomial(T::one(), 1), den: Polynomial::one() }
    }

    pub fn from_poly(p: Polynomial<T>) -> Self {
        RationalFunction { num: p, den: Polynomial::one() }
    }

    pub fn numerator(&self) -> &Polynomial<T> {
        &self.num
    }

    pub fn denominator(&self) -> &Polynomial<T> {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_constant(&self) -> bool {
        self.num.degree() == 0 && self.den.degree() == 0 || self.is_zero()
    }

    fn reduce(&mut self) -> Result<()> {
        if self.num.is_zero() {
            self.den = Polynomial::one();
            return Ok(());
        }
        // Candidate gcds are only trusted when dividing both sides leaves
        // relative remainders at roundoff level; a root of the denominator
        // merely close to a numerator root (e.g. under parameter
        // differencing) must not be cancelled. Tighter trims are retried
        // when a loose candidate bundles such a spurious factor.
        for trim in (if T::REDUCTION_CANCELS { &[1e-12, 1e-15][..] } else { &[][..] }).iter().copied() {
            let g = self.num.gcd_with_trim(&self.den, trim)?;
            if g.degree() == 0 {
                break;
            }
            let (qn, rn) = self.num.div_rem(&g)?;
            let (qd, rd) = self.den.div_rem(&g)?;
            if rn.max_total_mag() <= 1e-13 * self.num.max_total_mag()
                && rd.max_total_mag() <= 1e-13 * self.den.max_total_mag()
            {
                self.num = qn;
                self.den = qd;
                break;
            }
        }
        let lead = self.den.leading();
        self.den = self.den.scale(T::one() / lead);
        self.num = self.num.scale(T::one() / lead);
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.is_zero() {
            return Ok(other.clone());
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        // Work over the lcm of the denominators: the gcd of two exactly
        // shared factors is exact in the Euclid loop, whereas reducing the
        // crude product denominator would run an ill-conditioned gcd on
        // multiple roots.
        let g = self.den.gcd(&other.den)?;
        let (qa, _) = self.den.div_rem(&g)?;
        let (qb, _) = other.den.div_rem(&g)?;
        let den = self.den.mul(&qb)?;
        let num = self.num.mul(&qb)?.add(&other.num.mul(&qa)?);
        RationalFunction::new(num, den)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        RationalFunction { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn scale(&self, s: T) -> Self {
        if s.mag() == 0.0 {
            return RationalFunction::zero();
        }
        RationalFunction { num: self.num.scale(s), den: self.den.clone() }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        // Cross-reduce first to keep intermediate degrees low.
        let a = RationalFunction::new(self.num.clone(), other.den.clone())?;
        let b = RationalFunction::new(other.num.clone(), self.den.clone())?;
        let num = a.num.mul(&b.num)?;
        let den = a.den.mul(&b.den)?;
        RationalFunction::new(num, den)
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        if other.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        self.mul(&RationalFunction { num: other.den.clone(), den: other.num.clone() })
    }

    pub fn derivative(&self) -> Result<Self> {
        let num =
            self.num.derivative().mul(&self.den)?.sub(&self.num.mul(&self.den.derivative())?);
        let den = self.den.mul(&self.den)?;
        RationalFunction::new(num, den)
    }

    /// Evaluates at z; errors when z hits a zero of the denominator.
    pub fn eval(&self, z: T) -> Result<T> {
        let d = self.den.eval(z);
        let scale = eval_scale(&self.den, z);
        if d.mag() <= ROOT_REL * scale {
            return Err(Error::EvaluationAtPole { point: z.value() });
        }
        Ok(self.num.eval(z) / d)
    }

    /// Pole order at p: denominator multiplicity minus numerator
    /// multiplicity, so the answer does not depend on whether a common
    /// factor was cancelled.
    pub fn pole_order_at(&self, p: T) -> usize {
        if self.is_zero() {
            return 0;
        }
        let kd = root_multiplicity(&self.den, p);
        if kd == 0 {
            return 0;
        }
        let kn = root_multiplicity(&self.num, p);
        kd.saturating_sub(kn)
    }

    /// Multiplicity of p as a denominator root, regardless of whether the
    /// numerator cancels part of it.
    pub fn denominator_multiplicity_at(&self, p: T) -> usize {
        if self.is_zero() {
            return 0;
        }
        root_multiplicity(&self.den, p)
    }

    /// Order of vanishing of the function at a regular point p.
    pub fn zero_order_at(&self, p: T) -> usize {
        if self.is_zero() {
            return usize::MAX;
        }
        root_multiplicity(&self.num, p)
    }

    /// Taylor coefficients about a regular point p, orders 0..=j_max.
    /// Shared (removable) factors of (z−p) are deflated first.
    pub fn taylor_at(&self, p: T, j_max: usize) -> Result<Vec<T>> {
        if self.pole_order_at(p) != 0 {
            return Err(Error::EvaluationAtPole { point: p.value() });
        }
        if self.is_zero() {
            return Ok(alloc::vec![T::zero(); j_max + 1]);
        }
        let mut n = self.num.shifted(p);
        let mut d = self.den.shifted(p);
        let shared = root_multiplicity(&self.den, p);
        for _ in 0..shared {
            n = deflate_at_zero(&n);
            d = deflate_at_zero(&d);
        }
        Ok(series_divide(&n, &d, j_max))
    }

    /// Laurent expansion about p with coefficients up to order j_max
    /// (relative to the leading singular term).
    pub fn laurent_at(&self, p: T, j_max: usize) -> Result<LaurentExpansion<T>> {
        let m = self.pole_order_at(p);
        if m == 0 {
            return Ok(LaurentExpansion { pole_order: 0, coeffs: self.taylor_at(p, j_max)? });
        }
        let kn = root_multiplicity(&self.num, p);
        let mut den = self.den.shifted(p);
        for _ in 0..(m + kn) {
            den = deflate_at_zero(&den);
        }
        let mut num = self.num.shifted(p);
        for _ in 0..kn {
            num = deflate_at_zero(&num);
        }
        let coeffs = series_divide(&num, &den, j_max);
        Ok(LaurentExpansion { pole_order: m, coeffs })
    }

    /// Coefficient of (z-p)^{-1}.
    pub fn residue_at(&self, p: T) -> Result<T> {
        let m = self.pole_order_at(p);
        if m == 0 {
            return Ok(T::zero());
        }
        let exp = self.laurent_at(p, m - 1)?;
        Ok(exp.coeffs[m - 1])
    }

    /// Pushes the 1-form f(z)dz to the chart w = 1/z: returns g with
    /// f(z)dz = g(w)dw, g(w) = -f(1/w)/w².
    pub fn infinity_chart_form(&self) -> Result<Self> {
        if self.is_zero() {
            return Ok(RationalFunction::zero());
        }
        let a = self.num.degree();
        let b = self.den.degree();
        let nrev = self.num.reversed().neg();
        let drev = self.den.reversed();
        let e = b as i64 - a as i64 - 2;
        if e >= 0 {
            RationalFunction::new(nrev.mul_monomial(e as usize), drev)
        } else {
            RationalFunction::new(nrev, drev.mul_monomial((-e) as usize))
        }
    }

    /// Pole order of the 1-form f(z)dz at z = ∞.
    pub fn infinity_form_pole_order(&self) -> Result<usize> {
        Ok(self.infinity_chart_form()?.pole_order_at(T::zero()))
    }

    /// Residue of the 1-form f(z)dz at z = ∞.
    pub fn infinity_form_residue(&self) -> Result<T> {
        self.infinity_chart_form()?.residue_at(T::zero())
    }
}

fn eval_scale<T: Scalar>(p: &Polynomial<T>, z: T) -> f64 {
    let zm = z.mag();
    let mut pw = 1.0;
    let mut acc = 0.0;
    for c in p.coeffs() {
        acc += c.mag() * pw;
        pw *= zm;
    }
    acc.max(f64::MIN_POSITIVE)
}

/// Multiplicity of p as a root of the polynomial, by repeated deflation.
/// Zero-tests include derivative payloads: a coefficient that vanishes in
/// value but not in derivative is not a root of the parametrized family.
fn root_multiplicity<T: Scalar>(poly: &Polynomial<T>, p: T) -> usize {
    let mut q = poly.shifted(p);
    let mut m = 0;
    let scale = q.max_total_mag();
    if scale == 0.0 {
        return 0;
    }
    while !q.is_zero() && q.coeff(0).total_mag() <= ROOT_REL * scale {
        q = deflate_at_zero(&q);
        m += 1;
    }
    m
}

/// Divides a polynomial with (near-)zero constant term by w.
fn deflate_at_zero<T: Scalar>(p: &Polynomial<T>) -> Polynomial<T> {
    if p.coeffs().len() <= 1 {
        return Polynomial::zero();
    }
    Polynomial::new(p.coeffs()[1..].to_vec())
}

/// Power-series quotient n/d to order j_max; d must have nonzero constant term.
fn series_divide<T: Scalar>(n: &Polynomial<T>, d: &Polynomial<T>, j_max: usize) -> Vec<T> {
    let d0 = d.coeff(0);
    let mut out = vec![T::zero(); j_max + 1];
    for k in 0..=j_max {
        let mut acc = n.coeff(k);
        for j in 1..=k {
            acc = acc - d.coeff(j) * out[k - j];
        }
        out[k] = acc / d0;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{c64, C64};

    fn poly(re: &[f64]) -> Polynomial<C64> {
        Polynomial::new(re.iter().map(|&x| c64(x, 0.0)).collect())
    }

    fn rat(num: &[f64], den: &[f64]) -> RationalFunction<C64> {
        RationalFunction::new(poly(num), poly(den)).unwrap()
    }

    #[test]
    fn reduction_cancels_common_factor() {
        // (z^2 - 1)/(z - 1) = z + 1
        let f = rat(&[-1.0, 0.0, 1.0], &[-1.0, 1.0]);
        assert_eq!(f.denominator().degree(), 0);
        assert!((f.eval(c64(2.0, 0.0)).unwrap() - c64(3.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn pole_order_and_residue_simple() {
        // 1/z: order 1, residue 1
        let f = rat(&[1.0], &[0.0, 1.0]);
        assert_eq!(f.pole_order_at(c64(0.0, 0.0)), 1);
        assert!((f.residue_at(c64(0.0, 0.0)).unwrap() - c64(1.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn residue_at_higher_order_pole() {
        // (2z + 3)/z^2: residue at 0 is 2, pole order 2
        let f = rat(&[3.0, 2.0], &[0.0, 0.0, 1.0]);
        assert_eq!(f.pole_order_at(c64(0.0, 0.0)), 2);
        assert!((f.residue_at(c64(0.0, 0.0)).unwrap() - c64(2.0, 0.0)).norm() < 1e-14);
        // double pole with no simple part: 1/z^2 has residue 0
        let g = rat(&[1.0], &[0.0, 0.0, 1.0]);
        assert!(g.residue_at(c64(0.0, 0.0)).unwrap().norm() < 1e-14);
    }

    #[test]
    fn residues_sum_to_zero_on_sphere() {
        // f = (3z + 1)/(z(z-1)) has residues at 0, 1 and infinity summing to 0
        let den = poly(&[0.0, -1.0, 1.0]);
        let f = RationalFunction::new(poly(&[1.0, 3.0]), den).unwrap();
        let r0 = f.residue_at(c64(0.0, 0.0)).unwrap();
        let r1 = f.residue_at(c64(1.0, 0.0)).unwrap();
        let rinf = f.infinity_form_residue().unwrap();
        assert!((r0 + r1 + rinf).norm() < 1e-12);
    }

    #[test]
    fn infinity_pole_order_of_dz() {
        // f = 1 (the form dz) has a double pole at infinity
        let f = RationalFunction::<C64>::one();
        assert_eq!(f.infinity_form_pole_order().unwrap(), 2);
        // f = 1/z^2 dz is regular at infinity
        let g = rat(&[1.0], &[0.0, 0.0, 1.0]);
        assert_eq!(g.infinity_form_pole_order().unwrap(), 0);
        // f = 1/z dz has a simple pole at infinity with residue -1
        let h = rat(&[1.0], &[0.0, 1.0]);
        assert_eq!(h.infinity_form_pole_order().unwrap(), 1);
        assert!((h.infinity_form_residue().unwrap() + c64(1.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn taylor_of_geometric_series() {
        // 1/(1-z) = 1 + z + z^2 + ...
        let f = rat(&[1.0], &[1.0, -1.0]);
        let t = f.taylor_at(c64(0.0, 0.0), 5).unwrap();
        for c in t {
            assert!((c - c64(1.0, 0.0)).norm() < 1e-13);
        }
    }

    #[test]
    fn derivative_of_inverse() {
        let f = rat(&[1.0], &[0.0, 1.0]);
        let d = f.derivative().unwrap();
        // d/dz 1/z = -1/z^2
        let z = c64(0.5, 0.25);
        let expect = -(z * z).inv();
        assert!((d.eval(z).unwrap() - expect).norm() < 1e-12);
    }
}
