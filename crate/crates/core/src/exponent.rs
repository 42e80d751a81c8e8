//! Matrix 1-forms with single-term power entries c·z^e (real exponent e).
//!
//! These carry the families whose lifts involve genuine non-integer powers
//! z^{μ±a}: the Maurer-Cartan forms stay single-term even when the lift is
//! multivalued, so metric orders, curvature and total curvature can be
//! computed analytically from exponent data instead of forcing rational
//! entries. The conformal factor of such a form is radial, which reduces
//! total curvature to a one-dimensional integral.

use alloc::vec::Vec;

use num_traits::Float;

use crate::cmatrix::CMatrix;
use crate::error::{Error, Result};
use crate::quad::adaptive_interval;
use crate::{c64, C64};

/// One entry c·z^e; entries with zero coefficient are stored as None.
#[derive(Debug, Clone, Copy)]
pub struct PowerTerm {
    pub coeff: C64,
    pub power: f64,
}

/// n×n matrix of single-term power entries, punctured at {0, ∞}.
#[derive(Debug, Clone)]
pub struct ExponentForm {
    n: usize,
    entries: Vec<Option<PowerTerm>>,
}

impl ExponentForm {
    pub fn new(n: usize, entries: Vec<Option<PowerTerm>>) -> Result<Self> {
        if entries.len() != n * n {
            return Err(Error::DimensionMismatch { expected: n * n, found: entries.len() });
        }
        let entries =
            entries.into_iter().map(|e| e.filter(|t| t.coeff.norm() > 1e-14)).collect();
        Ok(ExponentForm { n, entries })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn entry(&self, i: usize, j: usize) -> Option<&PowerTerm> {
        self.entries[i * self.n + j].as_ref()
    }

    pub fn is_degenerate(&self) -> bool {
        self.entries.iter().all(|e| e.is_none())
    }

    /// Principal-branch evaluation (z off the negative real axis for
    /// non-integer exponents).
    pub fn evaluate(&self, z: C64) -> Result<CMatrix> {
        if z.norm() < 1e-300 {
            return Err(Error::EvaluationAtPole { point: z });
        }
        let mut m = CMatrix::zeros(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                if let Some(t) = self.entry(i, j) {
                    m[(i, j)] = t.coeff * z.powf(t.power);
                }
            }
        }
        Ok(m)
    }

    pub fn evaluate_derivative(&self, z: C64) -> Result<CMatrix> {
        if z.norm() < 1e-300 {
            return Err(Error::EvaluationAtPole { point: z });
        }
        let mut m = CMatrix::zeros(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                if let Some(t) = self.entry(i, j) {
                    if t.power != 0.0 {
                        m[(i, j)] = t.coeff * c64(t.power, 0.0) * z.powf(t.power - 1.0);
                    }
                }
            }
        }
        Ok(m)
    }

    /// tr(ÂÂ*) as a function of |z| (phases cancel in the modulus).
    pub fn conformal_factor_radial(&self, r: f64) -> f64 {
        let mut h = 0.0;
        for e in self.entries.iter().flatten() {
            h += e.coeff.norm_sqr() * r.powf(2.0 * e.power);
        }
        h
    }

    /// Curvature of the metric tr(ÂÂ*)|dz|², also radial.
    pub fn gauss_curvature_radial(&self, r: f64) -> Result<f64> {
        let h = self.conformal_factor_radial(r);
        if h <= 0.0 {
            return Err(Error::BranchPoint { point: c64(r, 0.0) });
        }
        Ok(-2.0 * self.wronskian_numerator_radial(r) / (h * h * h))
    }

    /// Σ_{i<j} |a_i a_j' − a_j a_i'|² over the entries, radial.
    fn wronskian_numerator_radial(&self, r: f64) -> f64 {
        let terms: Vec<&PowerTerm> = self.entries.iter().flatten().collect();
        let mut acc = 0.0;
        for i in 0..terms.len() {
            for j in i + 1..terms.len() {
                let (ti, tj) = (terms[i], terms[j]);
                let d = tj.power - ti.power;
                if d == 0.0 {
                    continue;
                }
                acc += ti.coeff.norm_sqr()
                    * tj.coeff.norm_sqr()
                    * d
                    * d
                    * r.powf(2.0 * (ti.power + tj.power - 1.0));
            }
        }
        acc
    }

    /// Metric order at z = 0: h ~ |z|^{2μ} with μ the smallest exponent.
    pub fn metric_order_at_zero(&self) -> Option<f64> {
        self.entries
            .iter()
            .flatten()
            .map(|t| t.power)
            .fold(None, |acc: Option<f64>, p| Some(acc.map_or(p, |a| a.min(p))))
    }

    /// Metric order at ∞ in the w = 1/z chart (entries become −c·w^{−e−2}).
    pub fn metric_order_at_infinity(&self) -> Option<f64> {
        self.entries
            .iter()
            .flatten()
            .map(|t| -t.power - 2.0)
            .fold(None, |acc: Option<f64>, p| Some(acc.map_or(p, |a| a.min(p))))
    }

    /// Exact nullity test: collects tr(Â²) by power and checks all
    /// coefficient groups cancel.
    pub fn is_null(&self) -> bool {
        let mut groups: Vec<(f64, C64)> = Vec::new();
        let mut scale = 0.0f64;
        for i in 0..self.n {
            for j in 0..self.n {
                if let (Some(a), Some(b)) = (self.entry(i, j), self.entry(j, i)) {
                    let coeff = a.coeff * b.coeff;
                    let power = a.power + b.power;
                    scale = scale.max(coeff.norm());
                    match groups.iter_mut().find(|(p, _)| (*p - power).abs() < 1e-9) {
                        Some((_, c)) => *c += coeff,
                        None => groups.push((power, coeff)),
                    }
                }
            }
        }
        groups.iter().all(|(_, c)| c.norm() <= 1e-10 * scale.max(1e-300))
    }

    /// ∫(−K)dA over C∖{0} by a radial integral in u = log r.
    pub fn total_curvature_quadrature(&self, rel_tol: f64) -> Result<f64> {
        if self.is_degenerate() {
            return Ok(0.0);
        }
        let density = |u: f64| -> Result<f64> {
            let r = u.exp();
            let h = self.conformal_factor_radial(r);
            if h <= 0.0 {
                return Ok(0.0);
            }
            let num = self.wronskian_numerator_radial(r);
            // (−K)·h·r² in the log coordinate, times 2π for the angle.
            Ok(2.0 * core::f64::consts::PI * 2.0 * num / (h * h) * r * r)
        };
        // Expand the window until the tails are negligible.
        let mut lo = -8.0;
        let mut hi = 8.0;
        for _ in 0..12 {
            let dlo = density(lo)?;
            let dhi = density(hi)?;
            let mid = density(0.0)?.max(density(1.0)?).max(1e-300);
            if dlo < 1e-12 * mid && dhi < 1e-12 * mid {
                break;
            }
            if dlo >= 1e-12 * mid {
                lo -= 8.0;
            }
            if dhi >= 1e-12 * mid {
                hi += 8.0;
            }
        }
        adaptive_interval(&density, lo, hi, rel_tol)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    /// Off-diagonal z^{-2} and constant entries.
    fn sample_form() -> ExponentForm {
        let mut entries = vec![None; 9];
        entries[2] = Some(PowerTerm { coeff: c64(1.0, 0.0), power: -2.0 });
        entries[6] = Some(PowerTerm { coeff: c64(2.0, 0.0), power: 0.0 });
        ExponentForm::new(3, entries).unwrap()
    }

    #[test]
    fn radial_factor_and_orders() {
        let f = sample_form();
        assert!((f.conformal_factor_radial(2.0) - (2.0f64.powi(-4) + 4.0)).abs() < 1e-14);
        assert_eq!(f.metric_order_at_zero(), Some(-2.0));
        // at ∞: exponents −(−2)−2 = 0 and −0−2 = −2
        assert_eq!(f.metric_order_at_infinity(), Some(-2.0));
    }

    #[test]
    fn nullity_of_off_diagonal_pair() {
        // entries (1,3) = z^{-2}, (3,1) = z⁰ give tr Â² = 2z^{-2} ≠ 0
        let mut entries = vec![None; 9];
        entries[2] = Some(PowerTerm { coeff: c64(1.0, 0.0), power: -2.0 });
        entries[6] = Some(PowerTerm { coeff: c64(1.0, 0.0), power: 0.0 });
        let f = ExponentForm::new(3, entries).unwrap();
        assert!(!f.is_null());
        // balancing diagonal makes it null: diag(i,0,−i)·z^{-1} adds −2z^{-2}
        let mut entries = vec![None; 9];
        entries[2] = Some(PowerTerm { coeff: c64(1.0, 0.0), power: -2.0 });
        entries[6] = Some(PowerTerm { coeff: c64(1.0, 0.0), power: 0.0 });
        entries[0] = Some(PowerTerm { coeff: c64(0.0, 1.0), power: -1.0 });
        entries[8] = Some(PowerTerm { coeff: c64(0.0, -1.0), power: -1.0 });
        let f = ExponentForm::new(3, entries).unwrap();
        assert!(f.is_null());
    }

    #[test]
    fn curvature_nonpositive_on_samples() {
        let mut entries = vec![None; 9];
        entries[2] = Some(PowerTerm { coeff: c64(1.0, 0.0), power: -2.0 });
        entries[6] = Some(PowerTerm { coeff: c64(1.0, 0.0), power: 0.0 });
        entries[0] = Some(PowerTerm { coeff: c64(0.5, 0.0), power: -1.0 });
        entries[8] = Some(PowerTerm { coeff: c64(-0.5, 0.0), power: -1.0 });
        let f = ExponentForm::new(3, entries).unwrap();
        for k in 1..40 {
            let r = 0.1 * k as f64;
            assert!(f.gauss_curvature_radial(r).unwrap() <= 1e-12);
        }
    }
}
