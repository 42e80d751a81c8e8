//! Series solutions of dy/dz = A(z)y at a regular singular point.
//!
//! With A(z) = R/w + Σ A_j w^j in the local coordinate w of the expansion
//! point, solutions are w^λ Σ v_j w^j for eigenvalues λ of R, built from
//! the recursion v_{j+1} = −[(λ+j+1)I − R]⁻¹ Σ A_k v_{j−k}. When R carries
//! a Jordan block a second solution with a log w term exists; both are
//! represented by [`FrobeniusSolution`].
//!
//! The classifier wraps the monodromy obstruction for null forms: a null
//! form with a simple pole cannot have SU(n) monodromy — real spectrum plus
//! tr R² = 0 forces a nilpotent residue, and a nonzero nilpotent residue
//! forces a logarithmic (non-diagonalizable) monodromy.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::Float;

use crate::cmatrix::CMatrix;
use crate::error::{Error, Result};
use crate::form::{MeromorphicMatrixForm, Puncture};
use crate::ode::{transport_vector, Tolerances};
use crate::path::PathSpec;
use crate::{c64, C64};

/// Truncated Laurent data of a coefficient matrix with a simple pole.
#[derive(Debug, Clone)]
pub struct LaurentODE {
    n: usize,
    /// Coefficient of 1/w.
    r: CMatrix,
    /// Taylor part A_0..A_{truncation}.
    taylor: Vec<CMatrix>,
    /// Estimated convergence radius (half the distance to the nearest
    /// other singularity; infinite when there is none).
    radius: f64,
}

impl LaurentODE {
    /// Expands `form` at the puncture (∞ handled through the w = 1/z chart).
    /// Errors unless the pole order there is exactly 1.
    pub fn from_form(
        form: &MeromorphicMatrixForm,
        pole: &Puncture,
        truncation: usize,
    ) -> Result<Self> {
        let order = form.pole_order(pole)?;
        if order != 1 {
            return Err(Error::NotASimplePole { order });
        }
        let (chart_form, p) = match pole {
            Puncture::Finite(p) => (form.clone(), *p),
            Puncture::Infinity => (form.infinity_chart()?, c64(0.0, 0.0)),
        };
        let n = chart_form.dim();
        let mut r = CMatrix::zeros(n);
        let mut taylor = vec![CMatrix::zeros(n); truncation + 1];
        for i in 0..n {
            for j in 0..n {
                let e = chart_form.entry(i, j);
                if e.is_zero() {
                    continue;
                }
                let m = e.pole_order_at(p);
                let exp = e.laurent_at(p, truncation + m)?;
                if m == 1 {
                    r[(i, j)] = exp.coeffs[0];
                }
                for k in 0..=truncation {
                    taylor[k][(i, j)] = exp.coeffs[k + m];
                }
            }
        }
        let mut radius = f64::INFINITY;
        for q in chart_form.finite_punctures() {
            let d = (q - p).norm();
            if d > 1e-12 {
                radius = radius.min(d / 2.0);
            }
        }
        Ok(LaurentODE { n, r, taylor, radius })
    }

    /// Builds directly from the residue matrix and Taylor coefficients.
    pub fn from_parts(r: CMatrix, taylor: Vec<CMatrix>, radius: f64) -> Self {
        let n = r.dim();
        LaurentODE { n, r, taylor, radius }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn residue_matrix(&self) -> &CMatrix {
        &self.r
    }

    pub fn taylor_part(&self) -> &[CMatrix] {
        &self.taylor
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    /// Truncated coefficient matrix R/w + Σ A_j w^j.
    pub fn eval(&self, w: C64) -> CMatrix {
        let mut acc = self.r.scale(w.inv());
        let mut pw = c64(1.0, 0.0);
        for a in &self.taylor {
            acc = acc.add(&a.scale(pw));
            pw *= w;
        }
        acc
    }
}

/// Branch of log used to evaluate w^λ and log w: the cut lies along the ray
/// at `cut_angle`, with arg ∈ (cut_angle, cut_angle + 2π].
#[derive(Debug, Clone, Copy)]
pub struct LogBranch {
    pub cut_angle: f64,
}

impl Default for LogBranch {
    /// Principal branch (cut along the negative real axis).
    fn default() -> Self {
        LogBranch { cut_angle: -core::f64::consts::PI }
    }
}

impl LogBranch {
    pub fn log(&self, w: C64) -> C64 {
        let mut arg = w.arg();
        let twopi = 2.0 * core::f64::consts::PI;
        while arg <= self.cut_angle {
            arg += twopi;
        }
        while arg > self.cut_angle + twopi {
            arg -= twopi;
        }
        c64(w.norm().ln(), arg)
    }
}

/// Truncated series solution w^λ[Σ v_j w^j + (log w)·Σ p_j w^j].
#[derive(Debug, Clone)]
pub struct FrobeniusSolution {
    pub lambda: C64,
    /// Main coefficient vectors v_0..v_J.
    pub coefficients: Vec<Vec<C64>>,
    /// Coefficients of the series multiplied by log w, when present.
    pub log_partner: Option<Vec<Vec<C64>>>,
    pub truncation: usize,
}

impl FrobeniusSolution {
    pub fn eval(&self, w: C64, branch: &LogBranch) -> Vec<C64> {
        self.eval_given_log(w, branch.log(w))
    }

    /// Evaluation with an externally continued logarithm (for monodromy
    /// statements on the universal cover).
    pub fn eval_given_log(&self, w: C64, log_w: C64) -> Vec<C64> {
        let n = self.coefficients[0].len();
        let head = (self.lambda * log_w).exp();
        let mut main = vec![c64(0.0, 0.0); n];
        let mut pw = c64(1.0, 0.0);
        for v in &self.coefficients {
            for i in 0..n {
                main[i] += v[i] * pw;
            }
            pw *= w;
        }
        if let Some(partner) = &self.log_partner {
            let mut logpart = vec![c64(0.0, 0.0); n];
            let mut pw = c64(1.0, 0.0);
            for p in partner {
                for i in 0..n {
                    logpart[i] += p[i] * pw;
                }
                pw *= w;
            }
            for i in 0..n {
                main[i] += log_w * logpart[i];
            }
        }
        for v in main.iter_mut() {
            *v *= head;
        }
        main
    }

    /// Exact derivative of the truncated expression.
    pub fn eval_derivative(&self, w: C64, branch: &LogBranch) -> Vec<C64> {
        let log_w = branch.log(w);
        let n = self.coefficients[0].len();
        let head = (self.lambda * log_w).exp();
        // d/dw [w^λ S(w)] = w^{λ-1} [λS + wS']
        let mut out = vec![c64(0.0, 0.0); n];
        let mut s = vec![c64(0.0, 0.0); n];
        let mut ws_prime = vec![c64(0.0, 0.0); n];
        let mut pw = c64(1.0, 0.0);
        for (j, v) in self.coefficients.iter().enumerate() {
            for i in 0..n {
                s[i] += v[i] * pw;
                ws_prime[i] += v[i] * pw * c64(j as f64, 0.0);
            }
            pw *= w;
        }
        for i in 0..n {
            out[i] = self.lambda * s[i] + ws_prime[i];
        }
        if let Some(partner) = &self.log_partner {
            // d/dw [w^λ log w T(w)] = w^{λ-1}[(λ log w + 1)T + log w ·wT']
            let mut t = vec![c64(0.0, 0.0); n];
            let mut wt_prime = vec![c64(0.0, 0.0); n];
            let mut pw = c64(1.0, 0.0);
            for (j, p) in partner.iter().enumerate() {
                for i in 0..n {
                    t[i] += p[i] * pw;
                    wt_prime[i] += p[i] * pw * c64(j as f64, 0.0);
                }
                pw *= w;
            }
            for i in 0..n {
                out[i] += (self.lambda * log_w + c64(1.0, 0.0)) * t[i] + log_w * wt_prime[i];
            }
        }
        let w_pow = head * w.inv();
        for v in out.iter_mut() {
            *v *= w_pow;
        }
        out
    }

    /// Magnitude of the last retained coefficient, for truncation estimates.
    pub fn tail_coefficient_norm(&self) -> f64 {
        let last = &self.coefficients[self.coefficients.len() - 1];
        last.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt()
    }
}

fn vec_norm(v: &[C64]) -> f64 {
    v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
}

/// shift·I − R.
fn shifted_matrix(r: &CMatrix, shift: C64) -> CMatrix {
    let n = r.dim();
    let mut m = r.neg();
    for i in 0..n {
        m[(i, i)] += shift;
    }
    m
}

fn check_resonances(ode: &LaurentODE, lambda0: C64, j_max: usize) -> Result<()> {
    for j in 1..=j_max {
        let m = shifted_matrix(&ode.r, lambda0 + c64(j as f64, 0.0));
        if m.smallest_singular_value() < 1e-10 {
            return Err(Error::Resonance { order: j });
        }
    }
    Ok(())
}

/// Series solution with exponent λ0 and eigenvector v0.
pub fn frobenius_series(
    ode: &LaurentODE,
    lambda0: C64,
    v0: &[C64],
    truncation: usize,
) -> Result<FrobeniusSolution> {
    let n = ode.n;
    if v0.len() != n {
        return Err(Error::DimensionMismatch { expected: n, found: v0.len() });
    }
    let v0n = vec_norm(v0);
    let mut resid = ode.r.mul_vec(v0);
    for i in 0..n {
        resid[i] -= lambda0 * v0[i];
    }
    if vec_norm(&resid) > 1e-10 * v0n {
        return Err(Error::NotAnEigenvector { residual: vec_norm(&resid) / v0n });
    }
    check_resonances(ode, lambda0, truncation)?;
    let coefficients = run_recursion(ode, lambda0, v0, truncation)?;
    Ok(FrobeniusSolution { lambda: lambda0, coefficients, log_partner: None, truncation })
}

fn run_recursion(
    ode: &LaurentODE,
    lambda0: C64,
    v0: &[C64],
    truncation: usize,
) -> Result<Vec<Vec<C64>>> {
    let n = ode.n;
    let mut coeffs: Vec<Vec<C64>> = Vec::with_capacity(truncation + 1);
    coeffs.push(v0.to_vec());
    for j in 1..=truncation {
        let mut rhs = vec![c64(0.0, 0.0); n];
        for k in 0..j.min(ode.taylor.len()) {
            let term = ode.taylor[k].mul_vec(&coeffs[j - 1 - k]);
            for i in 0..n {
                rhs[i] += term[i];
            }
        }
        let m = shifted_matrix(&ode.r, lambda0 + c64(j as f64, 0.0));
        let sol = m.solve_vec(&rhs)?;
        coeffs.push(sol);
    }
    Ok(coeffs)
}

/// λ-derivative of the recursion coefficients at (λ0, fixed v0-series).
fn run_derivative_recursion(
    ode: &LaurentODE,
    lambda0: C64,
    series: &[Vec<C64>],
) -> Result<Vec<Vec<C64>>> {
    let n = ode.n;
    let truncation = series.len() - 1;
    let mut hats: Vec<Vec<C64>> = Vec::with_capacity(truncation + 1);
    hats.push(vec![c64(0.0, 0.0); n]);
    for j in 1..=truncation {
        // From M_j y_j = Σ A_k y_{j-1-k}: M_j ŷ_j = Σ A_k ŷ_{j-1-k} − y_j.
        let mut rhs: Vec<C64> = series[j].iter().map(|v| -*v).collect();
        for k in 0..j.min(ode.taylor.len()) {
            let term = ode.taylor[k].mul_vec(&hats[j - 1 - k]);
            for i in 0..n {
                rhs[i] += term[i];
            }
        }
        let m = shifted_matrix(&ode.r, lambda0 + c64(j as f64, 0.0));
        let sol = m.solve_vec(&rhs)?;
        hats.push(sol);
    }
    Ok(hats)
}

/// The pair (y, ỹ) for a Jordan chain Rp0 = λ0·p0, Rq0 = λ0·q0 + p0:
/// y is a plain series and ỹ carries the log w term
/// (ỹ = ∂_λ y(λ,p0)|_{λ0} + y(λ0,q0)).
pub fn log_solution(
    ode: &LaurentODE,
    p0: &[C64],
    q0: &[C64],
    truncation: usize,
) -> Result<(FrobeniusSolution, FrobeniusSolution)> {
    let n = ode.n;
    let p0n = vec_norm(p0);
    if p0n == 0.0 {
        return Err(Error::NotAnEigenvector { residual: 1.0 });
    }
    // λ0 from the Rayleigh quotient of p0.
    let rp = ode.r.mul_vec(p0);
    let mut num = c64(0.0, 0.0);
    let mut den = c64(0.0, 0.0);
    for i in 0..n {
        num += rp[i] * p0[i].conj();
        den += p0[i] * p0[i].conj();
    }
    let lambda0 = num / den;
    let mut resid = rp;
    for i in 0..n {
        resid[i] -= lambda0 * p0[i];
    }
    if vec_norm(&resid) > 1e-10 * p0n {
        return Err(Error::NotAnEigenvector { residual: vec_norm(&resid) / p0n });
    }
    let rq = ode.r.mul_vec(q0);
    let mut chain = rq;
    for i in 0..n {
        chain[i] -= lambda0 * q0[i] + p0[i];
    }
    let scale = vec_norm(q0) + p0n;
    if vec_norm(&chain) > 1e-10 * scale {
        return Err(Error::BrokenJordanChain { residual: vec_norm(&chain) / scale });
    }
    check_resonances(ode, lambda0, truncation)?;
    let p_series = run_recursion(ode, lambda0, p0, truncation)?;
    let q_series = run_recursion(ode, lambda0, q0, truncation)?;
    let hat_series = run_derivative_recursion(ode, lambda0, &p_series)?;
    let tilde: Vec<Vec<C64>> = q_series
        .iter()
        .zip(hat_series.iter())
        .map(|(q, h)| q.iter().zip(h.iter()).map(|(a, b)| *a + *b).collect())
        .collect();
    let y = FrobeniusSolution {
        lambda: lambda0,
        coefficients: p_series.clone(),
        log_partner: None,
        truncation,
    };
    let y_tilde = FrobeniusSolution {
        lambda: lambda0,
        coefficients: tilde,
        log_partner: Some(p_series),
        truncation,
    };
    Ok((y, y_tilde))
}

/// Relative residual ‖y' − A(w)y‖/‖y‖ of a solution at a sample point
/// (truncated A).
pub fn ode_residual(ode: &LaurentODE, sol: &FrobeniusSolution, w: C64) -> f64 {
    let branch = LogBranch::default();
    let y = sol.eval(w, &branch);
    let dy = sol.eval_derivative(w, &branch);
    let ay = ode.eval(w).mul_vec(&y);
    let mut acc = 0.0;
    for i in 0..y.len() {
        acc += (dy[i] - ay[i]).norm_sqr();
    }
    acc.sqrt() / vec_norm(&y).max(1e-300)
}

/// Reason the SU(n)-monodromy obstruction fires.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ObstructionReason {
    /// Residue is nilpotent and nonzero: the monodromy carries a log block
    /// and cannot be diagonalized, let alone unitarily.
    LogarithmicMonodromy,
    /// Spectrum is not identically zero: a unitary monodromy would force a
    /// real spectrum, which with tr R² = 0 forces all eigenvalues to zero.
    SpectrumContradiction,
}

/// Verdict of the classifier.
#[derive(Debug, Clone, PartialEq)]
pub enum SuVerdict {
    /// Null form, simple pole: SU(n) monodromy impossible.
    Obstructed(ObstructionReason),
    /// Hypotheses not met (form not null); nothing is claimed.
    NoObstruction,
    /// Pole order ≠ 1: the simple-pole analysis does not apply.
    NotApplicable,
    /// Residue vanishes (regular point misdeclared as a pole).
    Vacuous,
}

/// Eigenvalue data and SU(n)-monodromy verdict at a puncture.
#[derive(Debug, Clone)]
pub struct SingularityReport {
    pub pole_order: usize,
    pub eigenvalues: Vec<C64>,
    /// tr R² of the residue matrix.
    pub trace_square: C64,
    /// Whether the characteristic polynomial is λⁿ to tolerance.
    pub nilpotent: bool,
    pub diagonalizable: Option<bool>,
    pub form_is_null: bool,
    pub su_monodromy_possible: bool,
    pub verdict: SuVerdict,
    pub notes: Vec<String>,
}

/// Applies the simple-pole monodromy obstruction to a form at a puncture.
pub fn classify_singularity(
    form: &MeromorphicMatrixForm,
    pole: &Puncture,
) -> Result<SingularityReport> {
    let order = form.pole_order(pole)?;
    let is_null = form.is_null_form()?.is_null;
    let residue = form.residue(pole)?;
    let eigenvalues = residue.eigenvalues();
    let trace_square = residue.mul(&residue).trace();
    let scale = residue.max_abs().max(1.0);
    let nilpotent = {
        let cp = residue.char_poly();
        cp.iter().enumerate().all(|(k, c)| c.norm() <= 1e-10 * scale.powi(k as i32 + 1))
    };
    let mut notes = Vec::new();

    if order >= 2 {
        notes.push(String::from("pole order is not 1: eigenvalue data reported only"));
        return Ok(SingularityReport {
            pole_order: order,
            eigenvalues,
            trace_square,
            nilpotent,
            diagonalizable: None,
            form_is_null: is_null,
            su_monodromy_possible: true,
            verdict: SuVerdict::NotApplicable,
            notes,
        });
    }
    if order == 0 || residue.max_abs() <= 1e-12 {
        notes.push(String::from("residue vanishes: declared point is regular (vacuous)"));
        return Ok(SingularityReport {
            pole_order: order,
            eigenvalues,
            trace_square,
            nilpotent: true,
            diagonalizable: Some(true),
            form_is_null: is_null,
            su_monodromy_possible: true,
            verdict: SuVerdict::Vacuous,
            notes,
        });
    }
    if !is_null {
        notes.push(String::from("form is not null: no obstruction derived"));
        return Ok(SingularityReport {
            pole_order: order,
            eigenvalues: eigenvalues.clone(),
            trace_square,
            nilpotent,
            diagonalizable: Some(diagonalizable(&residue, &eigenvalues)),
            form_is_null: false,
            su_monodromy_possible: true,
            verdict: SuVerdict::NoObstruction,
            notes,
        });
    }

    // Null form with a simple pole: tr R² = 0 exactly.
    notes.push(String::from("null form: tr R² = 0, the eigenvalue square-sum vanishes"));
    if nilpotent {
        notes.push(String::from(
            "all eigenvalues vanish with R ≠ 0: R is nilpotent, not diagonalizable",
        ));
        notes.push(String::from(
            "fundamental system carries a log term; monodromy is not diagonalizable",
        ));
        Ok(SingularityReport {
            pole_order: order,
            eigenvalues,
            trace_square,
            nilpotent,
            diagonalizable: Some(false),
            form_is_null: true,
            su_monodromy_possible: false,
            verdict: SuVerdict::Obstructed(ObstructionReason::LogarithmicMonodromy),
            notes,
        })
    } else {
        notes.push(String::from(
            "spectrum is not identically zero: unitary monodromy would force a real \
             spectrum, and a real spectrum with zero square-sum must vanish",
        ));
        Ok(SingularityReport {
            pole_order: order,
            eigenvalues: eigenvalues.clone(),
            trace_square,
            nilpotent,
            diagonalizable: Some(diagonalizable(&residue, &eigenvalues)),
            form_is_null: true,
            su_monodromy_possible: false,
            verdict: SuVerdict::Obstructed(ObstructionReason::SpectrumContradiction),
            notes,
        })
    }
}

fn diagonalizable(r: &CMatrix, eigenvalues: &[C64]) -> bool {
    let n = r.dim();
    let scale = r.max_abs().max(1e-300);
    // Cluster eigenvalues, then compare algebraic and geometric multiplicity.
    let mut used = vec![false; eigenvalues.len()];
    for i in 0..eigenvalues.len() {
        if used[i] {
            continue;
        }
        let mut mult = 0;
        for j in 0..eigenvalues.len() {
            if !used[j] && (eigenvalues[j] - eigenvalues[i]).norm() <= 1e-6 * (1.0 + scale) {
                used[j] = true;
                mult += 1;
            }
        }
        if mult > 1 {
            let shifted = shifted_matrix(r, eigenvalues[i]).neg();
            let svs = shifted.singular_values();
            let rank = svs.iter().filter(|s| **s > 1e-10 * scale).count();
            if n - rank < mult {
                return false;
            }
        }
    }
    true
}

/// Agreement between the series solution and direct transport of the
/// truncated ODE, both expressed in the local coordinate of the expansion.
#[derive(Debug, Clone)]
pub struct SeriesTransportCheck {
    pub deviation: f64,
    pub truncation_estimate: f64,
    pub truncation_dominated: bool,
}

/// Seeds a transport from the series value at the path start and compares
/// against the series at the path end (which must be `w_eval`).
pub fn series_vs_transport(
    ode: &LaurentODE,
    solution: &FrobeniusSolution,
    w_eval: C64,
    path: &PathSpec,
    tol: &Tolerances,
) -> Result<SeriesTransportCheck> {
    if w_eval.norm() > ode.radius {
        return Err(Error::RadiusExceeded { radius: ode.radius, requested: w_eval.norm() });
    }
    if (path.end() - w_eval).norm() > 1e-9 * (1.0 + w_eval.norm()) {
        return Err(Error::Invalid(String::from("path must end at the evaluation point")));
    }
    let branch = LogBranch::default();
    let y_start = solution.eval(path.start(), &branch);
    let eval = |w: C64| -> Result<CMatrix> { Ok(ode.eval(w)) };
    let (y_end, est_err) = transport_vector(&eval, path, &y_start, tol)?;
    let y_series = solution.eval(w_eval, &branch);
    let scale = vec_norm(&y_series).max(1e-300);
    let mut dev = 0.0;
    for i in 0..y_series.len() {
        dev += (y_end[i] - y_series[i]).norm_sqr();
    }
    let deviation = dev.sqrt() / scale;
    let rmax = w_eval.norm().max(path.start().norm());
    let truncation_estimate =
        solution.tail_coefficient_norm() * rmax.powi(solution.truncation as i32) / scale;
    let truncation_dominated = truncation_estimate > 10.0 * (est_err / scale).max(1e-15);
    Ok(SeriesTransportCheck { deviation, truncation_estimate, truncation_dominated })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::form::Designation;
    use crate::poly::Polynomial;
    use crate::rational::RationalFunction;

    fn euler_ode(r: CMatrix) -> LaurentODE {
        LaurentODE::from_parts(r, vec![], f64::INFINITY)
    }

    #[test]
    fn euler_system_has_constant_series() {
        let r = CMatrix::diag(&[c64(0.3, 0.0), c64(-0.3, 0.0)]);
        let ode = euler_ode(r);
        let sol =
            frobenius_series(&ode, c64(0.3, 0.0), &[c64(1.0, 0.0), c64(0.0, 0.0)], 10).unwrap();
        for j in 1..=10 {
            assert!(vec_norm(&sol.coefficients[j]) < 1e-14);
        }
    }

    #[test]
    fn scalar_exponential_series() {
        // y' = (0/z + 1)y: v_j = 1/j!
        let ode =
            LaurentODE::from_parts(CMatrix::zeros(1), vec![CMatrix::identity(1)], f64::INFINITY);
        let sol = frobenius_series(&ode, c64(0.0, 0.0), &[c64(1.0, 0.0)], 30).unwrap();
        let mut fact = 1.0;
        for j in 0..=10 {
            if j > 0 {
                fact *= j as f64;
            }
            assert!((sol.coefficients[j][0] - c64(1.0 / fact, 0.0)).norm() < 1e-12);
        }
        let y = sol.eval(c64(0.5, 0.0), &LogBranch::default());
        assert!((y[0] - c64(0.5f64.exp(), 0.0)).norm() < 1e-12);
        assert!(ode_residual(&ode, &sol, c64(0.1, 0.0)) < 1e-12);
    }

    #[test]
    fn resonance_detected_on_integer_gap() {
        // R = diag(1/2, -1/2), A0 = E12, λ0 = -1/2, v0 = (0,1):
        // (λ0+1)I − R = diag(0,1) is singular at order 1.
        let r = CMatrix::diag(&[c64(0.5, 0.0), c64(-0.5, 0.0)]);
        let ode = LaurentODE::from_parts(r, vec![CMatrix::elementary(2, 0, 1)], 1.0);
        match frobenius_series(&ode, c64(-0.5, 0.0), &[c64(0.0, 0.0), c64(1.0, 0.0)], 5) {
            Err(Error::Resonance { order: 1 }) => {}
            other => panic!("expected resonance at order 1, got {other:?}"),
        }
    }

    #[test]
    fn non_eigenvector_rejected() {
        let r = CMatrix::diag(&[c64(0.5, 0.0), c64(-0.5, 0.0)]);
        let ode = euler_ode(r);
        match frobenius_series(&ode, c64(0.5, 0.0), &[c64(1.0, 0.0), c64(1.0, 0.0)], 5) {
            Err(Error::NotAnEigenvector { .. }) => {}
            other => panic!("expected eigenvector error, got {other:?}"),
        }
    }

    #[test]
    fn log_solution_of_nilpotent_euler_system() {
        // R = E12, A = 0: y = (1,0), ỹ = (0,1) + log w ·(1,0)
        let ode = euler_ode(CMatrix::elementary(2, 0, 1));
        let p0 = [c64(1.0, 0.0), c64(0.0, 0.0)];
        let q0 = [c64(0.0, 0.0), c64(1.0, 0.0)];
        let (y, y_tilde) = log_solution(&ode, &p0, &q0, 8).unwrap();
        let branch = LogBranch::default();
        let w = c64(0.3, 0.1);
        let yv = y.eval(w, &branch);
        assert!((yv[0] - c64(1.0, 0.0)).norm() < 1e-13 && yv[1].norm() < 1e-13);
        let tv = y_tilde.eval(w, &branch);
        let lw = branch.log(w);
        assert!((tv[0] - lw).norm() < 1e-12);
        assert!((tv[1] - c64(1.0, 0.0)).norm() < 1e-13);
        // residual of the ODE at a sample point
        assert!(ode_residual(&ode, &y_tilde, c64(0.05, 0.02)) < 1e-10);

        // monodromy: continuing log around the origin adds 2πi·y
        let twopii = c64(0.0, 2.0 * core::f64::consts::PI);
        let continued = y_tilde.eval_given_log(w, lw + twopii);
        for i in 0..2 {
            assert!((continued[i] - (tv[i] + twopii * yv[i])).norm() < 1e-12);
        }
    }

    #[test]
    fn broken_jordan_chain_rejected() {
        let ode = euler_ode(CMatrix::elementary(2, 0, 1));
        // p0 not an eigenvector
        match log_solution(
            &ode,
            &[c64(0.0, 0.0), c64(1.0, 0.0)],
            &[c64(1.0, 0.0), c64(0.0, 0.0)],
            4,
        ) {
            Err(Error::NotAnEigenvector { .. }) => {}
            other => panic!("expected eigenvector failure, got {other:?}"),
        }
        // q0 not a chain partner
        match log_solution(
            &ode,
            &[c64(1.0, 0.0), c64(0.0, 0.0)],
            &[c64(1.0, 0.0), c64(0.0, 0.0)],
            4,
        ) {
            Err(Error::BrokenJordanChain { .. }) => {}
            other => panic!("expected chain failure, got {other:?}"),
        }
    }

    fn rat(num: &[f64], den: &[f64]) -> RationalFunction<C64> {
        RationalFunction::new(
            Polynomial::new(num.iter().map(|&x| c64(x, 0.0)).collect()),
            Polynomial::new(den.iter().map(|&x| c64(x, 0.0)).collect()),
        )
        .unwrap()
    }

    fn matrix_over_z(m: &CMatrix, power: usize) -> MeromorphicMatrixForm {
        let mut den = vec![0.0; power + 1];
        den[power] = 1.0;
        let base = rat(&[1.0], &den);
        let n = m.dim();
        let mut entries = Vec::new();
        for i in 0..n {
            for j in 0..n {
                entries.push(base.scale(m[(i, j)]));
            }
        }
        MeromorphicMatrixForm::new(
            n,
            entries,
            vec![Puncture::Finite(c64(0.0, 0.0)), Puncture::Infinity],
            Designation::Left,
        )
        .unwrap()
    }

    #[test]
    fn laurent_ode_from_form_extracts_residue_and_taylor() {
        // A(z) = R/z + A0 with R = E12·(1) and A0 = diag(1,-1)
        let inv_z = rat(&[1.0], &[0.0, 1.0]);
        let one = RationalFunction::one();
        let entries = vec![one.clone(), inv_z.clone(), RationalFunction::zero(), one.neg()];
        let form = MeromorphicMatrixForm::new(
            2,
            entries,
            vec![Puncture::Finite(c64(0.0, 0.0)), Puncture::Infinity],
            Designation::Left,
        )
        .unwrap();
        let ode = LaurentODE::from_form(&form, &Puncture::Finite(c64(0.0, 0.0)), 3).unwrap();
        assert!((ode.residue_matrix()[(0, 1)] - c64(1.0, 0.0)).norm() < 1e-14);
        assert!(ode.residue_matrix()[(0, 0)].norm() < 1e-14);
        assert!((ode.taylor_part()[0][(0, 0)] - c64(1.0, 0.0)).norm() < 1e-14);
        assert!((ode.taylor_part()[0][(1, 1)] + c64(1.0, 0.0)).norm() < 1e-14);
        assert!(ode.taylor_part()[1].max_abs() < 1e-14);
    }

    #[test]
    fn classifier_on_nilpotent_simple_pole() {
        let form = matrix_over_z(&CMatrix::elementary(3, 0, 1), 1);
        let report = classify_singularity(&form, &Puncture::Finite(c64(0.0, 0.0))).unwrap();
        assert!(!report.su_monodromy_possible);
        assert_eq!(
            report.verdict,
            SuVerdict::Obstructed(ObstructionReason::LogarithmicMonodromy)
        );
        assert!(report.trace_square.norm() < 1e-14);
        assert_eq!(report.diagonalizable, Some(false));
    }

    #[test]
    fn classifier_not_applicable_on_double_pole() {
        let form = matrix_over_z(&CMatrix::elementary(3, 0, 1), 2);
        let report = classify_singularity(&form, &Puncture::Finite(c64(0.0, 0.0))).unwrap();
        assert_eq!(report.verdict, SuVerdict::NotApplicable);
        assert!(report.su_monodromy_possible);
    }

    #[test]
    fn classifier_vacuous_on_regular_point() {
        // declared puncture with no pole there
        let one = RationalFunction::one();
        let entries =
            vec![RationalFunction::zero(), one, RationalFunction::zero(), RationalFunction::zero()];
        let form = MeromorphicMatrixForm::new(
            2,
            entries,
            vec![Puncture::Finite(c64(0.0, 0.0)), Puncture::Infinity],
            Designation::Left,
        )
        .unwrap();
        let report = classify_singularity(&form, &Puncture::Finite(c64(0.0, 0.0))).unwrap();
        assert_eq!(report.verdict, SuVerdict::Vacuous);
    }

    #[test]
    fn classifier_no_obstruction_on_non_null() {
        // diag(1/3,-1/3)/z is not null but has unitary monodromy
        let r = CMatrix::diag(&[c64(1.0 / 3.0, 0.0), c64(-1.0 / 3.0, 0.0)]);
        let form = matrix_over_z(&r, 1);
        let report = classify_singularity(&form, &Puncture::Finite(c64(0.0, 0.0))).unwrap();
        assert_eq!(report.verdict, SuVerdict::NoObstruction);
        assert!(report.su_monodromy_possible);
    }

    #[test]
    fn series_vs_transport_scalar_exponential() {
        let ode =
            LaurentODE::from_parts(CMatrix::zeros(1), vec![CMatrix::identity(1)], f64::INFINITY);
        let sol = frobenius_series(&ode, c64(0.0, 0.0), &[c64(1.0, 0.0)], 30).unwrap();
        let path = PathSpec::line(c64(0.01, 0.0), c64(0.5, 0.0), 0.0).unwrap();
        let check =
            series_vs_transport(&ode, &sol, c64(0.5, 0.0), &path, &Tolerances::default())
                .unwrap();
        assert!(check.deviation < 1e-10, "dev {}", check.deviation);
        assert!(!check.truncation_dominated);

        // J = 2 truncation: deviation about |z|³/6, flagged
        let sol2 = frobenius_series(&ode, c64(0.0, 0.0), &[c64(1.0, 0.0)], 2).unwrap();
        let check2 =
            series_vs_transport(&ode, &sol2, c64(0.5, 0.0), &path, &Tolerances::default())
                .unwrap();
        assert!(check2.truncation_dominated);
        let expected = 0.5f64.powi(3) / 6.0 / 0.5f64.exp();
        assert!(
            (check2.deviation - expected).abs() < 0.5 * expected,
            "dev {} vs {}",
            check2.deviation,
            expected
        );
    }

    #[test]
    fn radius_guard_fires() {
        let ode = LaurentODE::from_parts(CMatrix::zeros(1), vec![], 0.2);
        let sol = frobenius_series(&ode, c64(0.0, 0.0), &[c64(1.0, 0.0)], 4).unwrap();
        let path = PathSpec::line(c64(0.01, 0.0), c64(0.5, 0.0), 0.0).unwrap();
        assert!(matches!(
            series_vs_transport(&ode, &sol, c64(0.5, 0.0), &path, &Tolerances::default()),
            Err(Error::RadiusExceeded { .. })
        ));
    }
}
