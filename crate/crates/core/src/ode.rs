//! Analytic continuation of the lift equations along paths.
//!
//! The left equation is dF = F·A(z)dz, the right equation dF = A(z)dz·F.
//! Integration is an embedded Dormand-Prince 5(4) pair with PI step control
//! on the real path parameter; the coefficient matrix is holomorphic along
//! any admissible path, so a high-order nonstiff pair is the right tool.
//!
//! The determinant of a traceless-form transport is conserved by the flow;
//! accepted steps renormalize F by det(F)^{-1/n} (nearest n-th root branch)
//! and the accumulated raw drift is reported in the result.
//!
//! Monodromy composition convention: transports with F(start) = I along a
//! concatenation γ₁·γ₂ (γ₁ traversed first) compose as ρ(γ₁)·ρ(γ₂) for the
//! left equation and ρ(γ₂)·ρ(γ₁) for the right equation, matching the
//! constant-factor side each equation admits.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::Float;

use crate::cmatrix::CMatrix;
use crate::error::{Error, Result};
use crate::form::{Designation, MeromorphicMatrixForm};
use crate::lie::GroupElement;
use crate::path::PathSpec;
use crate::{c64, C64};

/// Integration tolerances and budget.
#[derive(Debug, Clone, Copy)]
pub struct Tolerances {
    /// Relative local error target.
    pub ode_rel: f64,
    /// Absolute local error target.
    pub ode_abs: f64,
    /// Hard cap on accepted + rejected steps.
    pub max_steps: usize,
    /// Optional cap on the step size in path parameter units.
    pub max_step: Option<f64>,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances { ode_rel: 1e-10, ode_abs: 1e-12, max_steps: 1_000_000, max_step: None }
    }
}

impl Tolerances {
    pub fn with_rel(mut self, rel: f64) -> Self {
        self.ode_rel = rel;
        self
    }

    pub fn with_abs(mut self, abs: f64) -> Self {
        self.ode_abs = abs;
        self
    }

    pub fn with_max_step(mut self, h: f64) -> Self {
        self.max_step = Some(h);
        self
    }
}

/// End state of a path transport.
#[derive(Debug, Clone)]
pub struct TransportResult {
    pub end_matrix: GroupElement,
    pub steps_taken: usize,
    /// Accumulated |det−1| measured before each renormalization.
    pub det_drift: f64,
    /// Accumulated local error estimates of accepted steps.
    pub est_error: f64,
    /// Set when det drift exceeded 1e-6 (transport unreliable).
    pub flagged: bool,
    /// Set when the form designation disagrees with the requested side
    /// (both integrate fine; the flag is informational).
    pub side_mismatch: bool,
}

// Dormand-Prince 5(4) tableau.
const A2: [f64; 1] = [1.0 / 5.0];
const A3: [f64; 2] = [3.0 / 40.0, 9.0 / 40.0];
const A4: [f64; 3] = [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0];
const A5: [f64; 4] = [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0];
const A6: [f64; 5] = [
    9017.0 / 3168.0,
    -355.0 / 33.0,
    46732.0 / 5247.0,
    49.0 / 176.0,
    -5103.0 / 18656.0,
];
const B5: [f64; 6] =
    [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0];
const ERR: [f64; 7] = [
    71.0 / 57600.0,
    0.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
];

pub(crate) struct RunStats {
    pub steps: usize,
    pub est_error: f64,
    pub det_drift: f64,
}

/// Integrates dY/dt = deriv(z(t), z'(t), Y) along the path. `post_accept`
/// runs after each accepted step and returns a drift increment to record.
pub(crate) fn integrate_path(
    path: &PathSpec,
    state: &mut Vec<C64>,
    tol: &Tolerances,
    deriv: &mut dyn FnMut(C64, C64, &[C64], &mut [C64]) -> Result<()>,
    post_accept: &mut dyn FnMut(&mut [C64]) -> f64,
) -> Result<RunStats> {
    let dim = state.len();
    let mut stats = RunStats { steps: 0, est_error: 0.0, det_drift: 0.0 };
    let mut k = vec![vec![c64(0.0, 0.0); dim]; 7];
    let mut ytmp = vec![c64(0.0, 0.0); dim];
    let mut err_prev: f64 = 1.0;

    for seg in path.segments() {
        let mut t = 0.0f64;
        let mut h = tol.max_step.unwrap_or(0.05).min(0.05);
        while t < 1.0 {
            if stats.steps >= tol.max_steps {
                return Err(Error::StepBudgetExhausted { steps: stats.steps });
            }
            if t + h > 1.0 {
                h = 1.0 - t;
            }
            let mut eval = |tt: f64, y: &[C64], out: &mut [C64]| -> Result<()> {
                let z = seg.point(tt);
                let zdot = seg.velocity(tt);
                deriv(z, zdot, y, out)
            };
            // Seven stages (no FSAL reuse; the cost is dominated by the
            // rational evaluations, which stay cheap at these degrees).
            eval(t, state, &mut k[0])?;
            stage(&mut ytmp, state, &k, &A2, h);
            eval(t + h / 5.0, &ytmp, &mut k[1])?;
            stage(&mut ytmp, state, &k, &A3, h);
            eval(t + 3.0 * h / 10.0, &ytmp, &mut k[2])?;
            stage(&mut ytmp, state, &k, &A4, h);
            eval(t + 4.0 * h / 5.0, &ytmp, &mut k[3])?;
            stage(&mut ytmp, state, &k, &A5, h);
            eval(t + 8.0 * h / 9.0, &ytmp, &mut k[4])?;
            stage(&mut ytmp, state, &k, &A6, h);
            eval(t + h, &ytmp, &mut k[5])?;
            // 5th-order solution
            for i in 0..dim {
                let mut acc = state[i];
                for (s, &b) in B5.iter().enumerate() {
                    if b != 0.0 {
                        acc += k[s][i] * c64(h * b, 0.0);
                    }
                }
                ytmp[i] = acc;
            }
            eval(t + h, &ytmp, &mut k[6])?;
            // Embedded error estimate
            let mut err_sq = 0.0f64;
            let mut err_abs = 0.0f64;
            for i in 0..dim {
                let mut e = c64(0.0, 0.0);
                for (s, &w) in ERR.iter().enumerate() {
                    if w != 0.0 {
                        e += k[s][i] * c64(h * w, 0.0);
                    }
                }
                let scale = tol.ode_abs + tol.ode_rel * state[i].norm().max(ytmp[i].norm());
                err_sq += (e.norm() / scale).powi(2);
                err_abs += e.norm_sqr();
            }
            let err = (err_sq / dim as f64).sqrt().max(1e-30);
            if !err.is_finite() || !ytmp.iter().all(|v| v.re.is_finite() && v.im.is_finite()) {
                return Err(Error::NonFiniteState);
            }
            stats.steps += 1;
            if err <= 1.0 {
                t += h;
                state.copy_from_slice(&ytmp);
                stats.est_error += err_abs.sqrt();
                stats.det_drift += post_accept(state);
                // PI controller
                let fac = 0.9 * err.powf(-0.7 / 5.0) * err_prev.powf(0.4 / 5.0);
                err_prev = err;
                h *= fac.clamp(0.2, 5.0);
            } else {
                h *= (0.9 * err.powf(-0.2)).clamp(0.1, 1.0);
            }
            if let Some(cap) = tol.max_step {
                h = h.min(cap);
            }
            if h < 1e-14 {
                return Err(Error::StepBudgetExhausted { steps: stats.steps });
            }
        }
    }
    Ok(stats)
}

fn stage(out: &mut [C64], y: &[C64], k: &[Vec<C64>], coeffs: &[f64], h: f64) {
    for i in 0..y.len() {
        let mut acc = y[i];
        for (s, &a) in coeffs.iter().enumerate() {
            if a != 0.0 {
                acc += k[s][i] * c64(h * a, 0.0);
            }
        }
        out[i] = acc;
    }
}

fn matrix_from_state(n: usize, state: &[C64]) -> CMatrix {
    let mut m = CMatrix::zeros(n);
    m.data_mut().copy_from_slice(state);
    m
}

/// Renormalizes by det^{-1/n}, choosing the branch nearest the identity,
/// and returns the pre-renormalization drift |det − 1|.
fn renormalize_det(n: usize, state: &mut [C64]) -> f64 {
    let m = matrix_from_state(n, state);
    let det = m.det();
    let drift = (det - c64(1.0, 0.0)).norm();
    if drift == 0.0 || !drift.is_finite() {
        return drift;
    }
    // det stays near 1, so the principal logarithm picks the continuous
    // n-th root branch.
    let corr = (-det.ln() / c64(n as f64, 0.0)).exp();
    for v in state.iter_mut() {
        *v *= corr;
    }
    drift
}

/// Integrates the lift equation for `form` along `path`.
pub fn transport(
    form: &MeromorphicMatrixForm,
    path: &PathSpec,
    side: Designation,
    f_init: &GroupElement,
    tol: &Tolerances,
) -> Result<TransportResult> {
    path.validate_clearance(&form.finite_punctures())?;
    let n = form.dim();
    if f_init.matrix().dim() != n {
        return Err(Error::DimensionMismatch { expected: n, found: f_init.matrix().dim() });
    }
    let side_mismatch = form.designation() != side;
    let mut state: Vec<C64> = f_init.matrix().data().to_vec();
    let mut deriv = |z: C64, zdot: C64, y: &[C64], out: &mut [C64]| -> Result<()> {
        let a = form.evaluate(z)?.scale(zdot);
        let f = matrix_from_state(n, y);
        let d = match side {
            Designation::Left => f.mul(&a),
            Designation::Right => a.mul(&f),
        };
        out.copy_from_slice(d.data());
        Ok(())
    };
    let mut post = |s: &mut [C64]| renormalize_det(n, s);
    let stats = integrate_path(path, &mut state, tol, &mut deriv, &mut post)?;
    let end = matrix_from_state(n, &state);
    if !end.is_finite() {
        return Err(Error::NonFiniteState);
    }
    let flagged = stats.det_drift > 1e-6;
    let end_matrix = GroupElement::with_tolerance(end, 1e-4)?;
    Ok(TransportResult {
        end_matrix,
        steps_taken: stats.steps,
        det_drift: stats.det_drift,
        est_error: stats.est_error,
        flagged,
        side_mismatch,
    })
}

/// Monodromy matrix of a closed loop: ρ = F_init⁻¹·F_end for the left
/// equation, ρ = F_end·F_init⁻¹ for the right equation, both reducing to
/// F_end for F_init = I.
pub fn monodromy(
    form: &MeromorphicMatrixForm,
    loop_path: &PathSpec,
    side: Designation,
    tol: &Tolerances,
) -> Result<CMatrix> {
    if !loop_path.is_closed() {
        return Err(Error::LoopNotClosed { gap: loop_path.closure_gap() });
    }
    let id = GroupElement::identity(form.dim());
    let result = transport(form, loop_path, side, &id, tol)?;
    Ok(result.end_matrix.into_matrix())
}

/// Frobenius norm of ρρ* − I: zero exactly when ρ is unitary.
pub fn unitary_deviation(rho: &CMatrix) -> f64 {
    let n = rho.dim();
    rho.mul(&rho.adjoint()).sub(&CMatrix::identity(n)).frobenius_norm()
}

/// Transports a vector solution of dy = A(z)y dz along a path, where the
/// coefficient matrix comes from an arbitrary evaluator.
pub fn transport_vector(
    a_eval: &dyn Fn(C64) -> Result<CMatrix>,
    path: &PathSpec,
    y0: &[C64],
    tol: &Tolerances,
) -> Result<(Vec<C64>, f64)> {
    let n = y0.len();
    let mut state = y0.to_vec();
    let mut deriv = |z: C64, zdot: C64, y: &[C64], out: &mut [C64]| -> Result<()> {
        let a = a_eval(z)?.scale(zdot);
        let d = a.mul_vec(y);
        out.copy_from_slice(&d);
        Ok(())
    };
    let mut post = |_: &mut [C64]| 0.0;
    let stats = integrate_path(path, &mut state, tol, &mut deriv, &mut post)?;
    if !state.iter().all(|v| v.re.is_finite() && v.im.is_finite()) {
        return Err(Error::NonFiniteState);
    }
    let _ = n;
    Ok((state, stats.est_error))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::form::Puncture;
    use crate::poly::Polynomial;
    use crate::rational::RationalFunction;

    fn rat(num: &[f64], den: &[f64]) -> RationalFunction<C64> {
        RationalFunction::new(
            Polynomial::new(num.iter().map(|&x| c64(x, 0.0)).collect()),
            Polynomial::new(den.iter().map(|&x| c64(x, 0.0)).collect()),
        )
        .unwrap()
    }

    /// (R/z)dz for a given constant matrix R (must be traceless).
    fn residue_form(r: &CMatrix) -> MeromorphicMatrixForm {
        let inv_z = rat(&[1.0], &[0.0, 1.0]);
        let n = r.dim();
        let mut entries = Vec::new();
        for i in 0..n {
            for j in 0..n {
                entries.push(inv_z.scale(r[(i, j)]));
            }
        }
        MeromorphicMatrixForm::new(
            n,
            entries,
            vec![Puncture::Finite(c64(0.0, 0.0)), Puncture::Infinity],
            Designation::Right,
        )
        .unwrap()
    }

    #[test]
    fn zero_form_transport_is_identity() {
        let zero = MeromorphicMatrixForm::new(
            2,
            vec![RationalFunction::zero(); 4],
            vec![],
            Designation::Left,
        )
        .unwrap();
        let path = PathSpec::line(c64(0.0, 0.0), c64(1.0, 2.0), 0.0).unwrap();
        let res = transport(
            &zero,
            &path,
            Designation::Left,
            &GroupElement::identity(2),
            &Tolerances::default(),
        )
        .unwrap();
        assert!(res
            .end_matrix
            .matrix()
            .sub(&CMatrix::identity(2))
            .max_abs()
            < 1e-12);
    }

    #[test]
    fn nilpotent_constant_form_integrates_exactly() {
        // dF = F·E12 dz from 0 to 1 gives I + E12
        let one = RationalFunction::one();
        let entries = vec![
            RationalFunction::zero(),
            one,
            RationalFunction::zero(),
            RationalFunction::zero(),
        ];
        let form = MeromorphicMatrixForm::new(
            2,
            entries,
            vec![Puncture::Infinity],
            Designation::Left,
        )
        .unwrap();
        let path = PathSpec::line(c64(0.0, 0.0), c64(1.0, 0.0), 0.0).unwrap();
        let res = transport(
            &form,
            &path,
            Designation::Left,
            &GroupElement::identity(2),
            &Tolerances::default(),
        )
        .unwrap();
        let expect = CMatrix::identity(2).add(&CMatrix::elementary(2, 0, 1));
        assert!(res.end_matrix.matrix().sub(&expect).max_abs() < 1e-10);
    }

    #[test]
    fn monodromy_of_residue_form_is_exponential() {
        // (R/z)dz around the unit circle: ρ = exp(2πiR)
        let r = CMatrix::from_rows(&[
            &[c64(0.25, 0.0), c64(0.5, 0.1)],
            &[c64(-0.3, 0.2), c64(-0.25, 0.0)],
        ])
        .unwrap();
        let form = residue_form(&r);
        let circle = PathSpec::circle(c64(0.0, 0.0), 1.0, 0.0, true, 0.5).unwrap();
        let rho = monodromy(&form, &circle, Designation::Right, &Tolerances::default()).unwrap();
        let expect = r.scale(c64(0.0, 2.0 * core::f64::consts::PI)).expm();
        assert!(rho.sub(&expect).max_abs() < 1e-9, "dev {}", rho.sub(&expect).max_abs());
    }

    #[test]
    fn contractible_loop_has_identity_monodromy() {
        let r = CMatrix::from_rows(&[
            &[c64(0.0, 0.0), c64(1.0, 0.0)],
            &[c64(1.0, 0.0), c64(0.0, 0.0)],
        ])
        .unwrap();
        let form = residue_form(&r);
        // small circle around z = 3, far from the pole at 0
        let circle = PathSpec::circle(c64(3.0, 0.0), 0.5, 0.0, true, 0.5).unwrap();
        let rho = monodromy(&form, &circle, Designation::Right, &Tolerances::default()).unwrap();
        assert!(unitary_deviation(&rho) < 1e-9 || rho.sub(&CMatrix::identity(2)).max_abs() < 1e-9);
        assert!(rho.sub(&CMatrix::identity(2)).max_abs() < 1e-9);
    }

    #[test]
    fn left_right_consistency_through_inverse() {
        // If F solves the left equation with α, F⁻¹ solves the right
        // equation with −α along the same path.
        let entries = vec![
            rat(&[0.0, 1.0], &[1.0]),              // z
            rat(&[1.0], &[1.0]),                   // 1
            rat(&[0.5, 0.0, 1.0], &[1.0]),         // z² + 1/2
            rat(&[0.0, -1.0], &[1.0]),             // -z
        ];
        let form =
            MeromorphicMatrixForm::new(2, entries, vec![Puncture::Infinity], Designation::Left)
                .unwrap();
        let path = PathSpec::line(c64(-0.3, 0.2), c64(0.8, -0.4), 0.0).unwrap();
        let tol = Tolerances::default();
        let left = transport(&form, &path, Designation::Left, &GroupElement::identity(2), &tol)
            .unwrap();
        let right = transport(
            &form.scaled(c64(-1.0, 0.0)),
            &path,
            Designation::Right,
            &GroupElement::identity(2),
            &tol,
        )
        .unwrap();
        let prod = left.end_matrix.matrix().mul(right.end_matrix.matrix());
        assert!(prod.sub(&CMatrix::identity(2)).max_abs() < 1e-9);
    }

    #[test]
    fn composition_order_conventions() {
        let r = CMatrix::from_rows(&[
            &[c64(0.2, 0.0), c64(1.0, 0.0)],
            &[c64(0.0, 0.0), c64(-0.2, 0.0)],
        ])
        .unwrap();
        // poles at 0 and 2 with different residues
        let inv_z = rat(&[1.0], &[0.0, 1.0]);
        let inv_z2 = rat(&[1.0], &[-2.0, 1.0]);
        let s = CMatrix::from_rows(&[
            &[c64(0.0, 0.0), c64(0.3, 0.0)],
            &[c64(0.3, 0.0), c64(0.0, 0.0)],
        ])
        .unwrap();
        let mut entries = Vec::new();
        for i in 0..2 {
            for j in 0..2 {
                entries.push(inv_z.scale(r[(i, j)]).add(&inv_z2.scale(s[(i, j)])).unwrap());
            }
        }
        let form = MeromorphicMatrixForm::new(
            2,
            entries,
            vec![
                Puncture::Finite(c64(0.0, 0.0)),
                Puncture::Finite(c64(2.0, 0.0)),
                Puncture::Infinity,
            ],
            Designation::Left,
        )
        .unwrap();
        let base = c64(1.0, 0.0);
        let loop0 = PathSpec::loop_around(c64(0.0, 0.0), 0.4, base, 0.2).unwrap();
        let loop2 = PathSpec::loop_around(c64(2.0, 0.0), 0.4, base, 0.2).unwrap();
        let both = PathSpec::concat(&[&loop0, &loop2]).unwrap();
        let tol = Tolerances::default();
        for side in [Designation::Left, Designation::Right] {
            let r0 = monodromy(&form, &loop0, side, &tol).unwrap();
            let r2 = monodromy(&form, &loop2, side, &tol).unwrap();
            let rb = monodromy(&form, &both, side, &tol).unwrap();
            let expect = match side {
                Designation::Left => r0.mul(&r2),
                Designation::Right => r2.mul(&r0),
            };
            assert!(
                rb.sub(&expect).max_abs() < 1e-8,
                "composition mismatch on {side:?}: {}",
                rb.sub(&expect).max_abs()
            );
        }
    }

    #[test]
    fn unitary_deviation_values() {
        let u = CMatrix::from_rows(&[
            &[c64(0.0, 1.0), c64(0.0, 0.0)],
            &[c64(0.0, 0.0), c64(0.0, -1.0)],
        ])
        .unwrap();
        assert!(unitary_deviation(&u) < 1e-15);
        let d = CMatrix::diag(&[c64(2.0, 0.0), c64(0.5, 0.0)]);
        let expect = (9.0f64 + 9.0 / 16.0).sqrt();
        assert!((unitary_deviation(&d) - expect).abs() < 1e-12);
        // exp(2πi·diag(1/3,-1/3,0)) is unitary
        let r = CMatrix::diag(&[
            c64(1.0 / 3.0, 0.0),
            c64(-1.0 / 3.0, 0.0),
            c64(0.0, 0.0),
        ]);
        let rho = r.scale(c64(0.0, 2.0 * core::f64::consts::PI)).expm();
        assert!(unitary_deviation(&rho) < 1e-12);
    }

    #[test]
    fn det_drift_small_on_unit_path() {
        let entries = vec![
            rat(&[0.0, 1.0], &[1.0]),
            rat(&[1.0, 1.0], &[1.0]),
            rat(&[1.0], &[1.0]),
            rat(&[0.0, -1.0], &[1.0]),
        ];
        let form =
            MeromorphicMatrixForm::new(2, entries, vec![Puncture::Infinity], Designation::Left)
                .unwrap();
        let path = PathSpec::line(c64(0.0, 0.0), c64(1.0, 0.0), 0.0).unwrap();
        let res = transport(
            &form,
            &path,
            Designation::Left,
            &GroupElement::identity(2),
            &Tolerances::default(),
        )
        .unwrap();
        assert!(res.det_drift <= 1e-9, "det drift {}", res.det_drift);
        assert!(!res.flagged);
    }

    #[test]
    fn refinement_stability_bound() {
        let r = CMatrix::from_rows(&[
            &[c64(0.1, 0.2), c64(0.7, -0.1)],
            &[c64(0.4, 0.0), c64(-0.1, -0.2)],
        ])
        .unwrap();
        let form = residue_form(&r);
        let path = PathSpec::line(c64(1.0, 0.0), c64(2.0, 1.0), 0.3).unwrap();
        let tol = Tolerances::default().with_max_step(0.02);
        let tol_half = Tolerances::default().with_max_step(0.01);
        let a = transport(&form, &path, Designation::Right, &GroupElement::identity(2), &tol)
            .unwrap();
        let b =
            transport(&form, &path, Designation::Right, &GroupElement::identity(2), &tol_half)
                .unwrap();
        let diff = a.end_matrix.matrix().sub(b.end_matrix.matrix()).frobenius_norm();
        assert!(
            diff <= 10.0 * a.est_error.max(1e-15),
            "diff {diff} vs est {}",
            a.est_error
        );
    }
}
