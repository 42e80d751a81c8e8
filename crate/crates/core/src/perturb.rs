//! Seven-parameter deformation family of a three-ended minimal surface in
//! R⁴, lifted into SL(3,C)/SU(3), and the Gauss-Newton continuation that
//! closes its monodromy conditions.
//!
//! The data is g = ((a₂z+a₃)/(z−a₁), (a₄z²+a₅z+a₆)/(z−a₁)²) with
//! ω = a₇(z−a₁)⁴/(z²(z+1)²)dz, combined through the Killing-orthonormal
//! frame into a null sl(3,C)-valued form α̂ punctured at {0, −1, ∞}. The
//! lift solves dF_c = −c·α̂·F_c; the surface F_cF_c* is single-valued iff
//! σʲ = ρʲ(ρʲ)* is the identity for the monodromies ρʲ of the two finite
//! loops. Transport works on the deviation U with F = I + cU, which keeps
//! the closing residual (σ−I)/c well-conditioned for small c.
//!
//! Monodromy loops are fixed once: circles of radius 0.4 around 0 and −1
//! based at z₀ = 1/2 (the second reached through spurs over the upper half
//! plane), so composition conventions are reproducible. Acceptance of
//! σ = id is 1e-8 in the reports.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::Float;

use crate::cmatrix::CMatrix;
use crate::error::{Error, Result};
use crate::form::{Designation, MeromorphicMatrixForm, Puncture};
use crate::lie::LieFrame;
use crate::ode::{integrate_path, unitary_deviation, Tolerances};
use crate::path::{PathSpec, Segment};
use crate::poly::Polynomial;
use crate::rational::RationalFunction;
use crate::scalar::{Dual, Scalar};
use crate::{c64, C64};

/// σ-identity acceptance threshold recorded in reports.
pub const SIGMA_ACCEPTANCE: f64 = 1e-8;

/// The seven complex family parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FamilyParams {
    pub a: [C64; 7],
}

impl FamilyParams {
    /// Base point a₀ = (1,1,1,2,4,2,1): the unperturbed surface.
    pub fn base() -> Self {
        FamilyParams {
            a: [
                c64(1.0, 0.0),
                c64(1.0, 0.0),
                c64(1.0, 0.0),
                c64(2.0, 0.0),
                c64(4.0, 0.0),
                c64(2.0, 0.0),
                c64(1.0, 0.0),
            ],
        }
    }

    pub fn validate(&self) -> Result<()> {
        let a1 = self.a[0];
        if a1.norm() < 1e-6 || (a1 + c64(1.0, 0.0)).norm() < 1e-6 {
            return Err(Error::DegenerateParameters {
                detail: String::from("a₁ collides with a puncture"),
            });
        }
        if self.a[6].norm() < 1e-12 {
            return Err(Error::DegenerateParameters { detail: String::from("a₇ vanishes") });
        }
        Ok(())
    }
}

/// The four scalar component 1-forms of the family, generic over the
/// scalar so the same algebra runs on dual numbers for derivatives.
pub fn family_components<T: Scalar>(a: &[T; 7]) -> Result<[RationalFunction<T>; 4]> {
    let z = RationalFunction::<T>::variable();
    let lin = |c1: T, c0: T| RationalFunction::from_poly(Polynomial::new(vec![c0, c1]));
    let zma1 = lin(T::one(), -a[0]);
    let g1 = lin(a[1], a[2]).div(&zma1)?;
    let g2 = RationalFunction::from_poly(Polynomial::new(vec![a[5], a[4], a[3]]))
        .div(&zma1.mul(&zma1)?)?;
    // ω = a₇(z−a₁)⁴/(z²(z+1)²)
    let zma1_2 = zma1.mul(&zma1)?;
    let num = zma1_2.mul(&zma1_2)?.scale(a[6]);
    let zp1 = lin(T::one(), T::one());
    let den = z.mul(&z)?.mul(&zp1.mul(&zp1)?)?;
    let omega = num.div(&den)?;
    let gg = g1.mul(&g1)?.add(&g2.mul(&g2)?)?;
    let one = RationalFunction::one();
    let i = T::from_c64(c64(0.0, 1.0));
    let two = T::from_f64(2.0);
    Ok([
        one.sub(&gg)?.mul(&omega)?,
        one.add(&gg)?.mul(&omega)?.scale(i),
        g1.mul(&omega)?.scale(two),
        g2.mul(&omega)?.scale(two),
    ])
}

/// Null sl(3,C)-valued form Σ α̂_j e_j with punctures {0, −1, ∞}; its values
/// stay in the subalgebra with vanishing (1,2),(2,1),(2,3),(3,2) entries.
pub fn family_form(params: &FamilyParams) -> Result<MeromorphicMatrixForm> {
    params.validate()?;
    let comps = family_components(&params.a)?;
    let frame = LieFrame::sl3_killing_frame();
    let mut entries = vec![RationalFunction::zero(); 9];
    for (alpha, e) in comps.iter().zip(frame.members().iter()) {
        for i in 0..3 {
            for j in 0..3 {
                let w = e[(i, j)];
                if w.norm() > 0.0 {
                    entries[i * 3 + j] = entries[i * 3 + j].add(&alpha.scale(w))?;
                }
            }
        }
    }
    let punctures = vec![
        Puncture::Finite(c64(0.0, 0.0)),
        Puncture::Finite(c64(-1.0, 0.0)),
        Puncture::Infinity,
    ];
    let form = MeromorphicMatrixForm::new(3, entries, punctures, Designation::Right)?;
    let nc = form.is_null_form()?;
    if !nc.is_null {
        return Err(Error::NullityViolated { residual_norm: nc.residual_numerator().max_mag() });
    }
    Ok(form)
}

/// Exact residues of the four components at the finite punctures:
/// (Res₀ α₁..α₄, Res₋₁ α₁..α₄).
pub fn residue_map(params: &FamilyParams) -> Result<[C64; 8]> {
    residue_map_scalar(&params.a)
}

/// Scalar-generic residue map (instantiated with dual numbers for the
/// parameter Jacobian).
pub fn residue_map_scalar<T: Scalar>(a: &[T; 7]) -> Result<[T; 8]> {
    let comps = family_components(a)?;
    let zero = T::zero();
    let minus_one = zero - T::one();
    let mut out = [T::zero(); 8];
    for (k, alpha) in comps.iter().enumerate() {
        out[k] = alpha.residue_at(zero)?;
        out[4 + k] = alpha.residue_at(minus_one)?;
    }
    Ok(out)
}

/// How the residue Jacobian is differentiated.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum JacobianMode {
    /// Forward-mode dual numbers through the exact residue algebra.
    Exact,
    /// Central finite differences with the given step.
    FiniteDifference(f64),
}

/// The 8×14 real Jacobian ∂(Im Res₀α, Im Res₋₁α)/∂(Re a, Im a) with its
/// full singular spectrum (14 values; the trailing six vanish to noise).
#[derive(Debug, Clone)]
pub struct JacobianReport {
    pub rank: usize,
    pub singular_values: Vec<f64>,
    pub matrix: Vec<[f64; 14]>,
}

pub fn jacobian_rank(params: &FamilyParams, mode: JacobianMode) -> Result<JacobianReport> {
    let mut jac = vec![[0.0f64; 14]; 8];
    match mode {
        JacobianMode::Exact => {
            for i in 0..7 {
                let mut duals: [Dual; 7] =
                    core::array::from_fn(|k| Dual::constant(params.a[k]));
                duals[i] = Dual::variable(params.a[i]);
                let res = residue_map_scalar(&duals)?;
                for (row, r) in res.iter().enumerate() {
                    // d(Im Res)/d(Re aᵢ) = Im(dRes/daᵢ);
                    // d(Im Res)/d(Im aᵢ) = Re(dRes/daᵢ) (holomorphic dependence).
                    jac[row][2 * i] = r.der.im;
                    jac[row][2 * i + 1] = r.der.re;
                }
            }
        }
        JacobianMode::FiniteDifference(h) => {
            for i in 0..7 {
                for (slot, dir) in [(0usize, c64(h, 0.0)), (1usize, c64(0.0, h))] {
                    let mut ap = *params;
                    let mut am = *params;
                    ap.a[i] += dir;
                    am.a[i] -= dir;
                    let rp = residue_map(&ap)?;
                    let rm = residue_map(&am)?;
                    for row in 0..8 {
                        jac[row][2 * i + slot] = (rp[row].im - rm[row].im) / (2.0 * h);
                    }
                }
            }
        }
    }
    // Singular values via the eigenvalues of JᵀJ (14×14, real symmetric).
    let mut gram = CMatrix::zeros(14);
    for p in 0..14 {
        for q in 0..14 {
            let mut acc = 0.0;
            for row in jac.iter() {
                acc += row[p] * row[q];
            }
            gram[(p, q)] = c64(acc, 0.0);
        }
    }
    let mut singular_values: Vec<f64> =
        gram.hermitian_eigenvalues().into_iter().map(|l| l.max(0.0).sqrt()).collect();
    singular_values.sort_by(|a, b| b.partial_cmp(a).unwrap());
    let smax = singular_values[0];
    let rank = singular_values.iter().filter(|s| **s > 1e-8 * smax).count();
    Ok(JacobianReport { rank, singular_values, matrix: jac })
}

/// Fixed monodromy loops: (γ₁ around 0, γ₂ around −1, Γ around both),
/// based at z₀ = 1/2.
pub fn family_loops() -> Result<(PathSpec, PathSpec, PathSpec)> {
    let base = c64(0.5, 0.0);
    let loop1 = PathSpec::loop_around(c64(0.0, 0.0), 0.4, base, 0.25)?;
    // Spur to the circle around −1 detours through the upper half plane.
    let top = c64(-1.0, 0.45);
    let entry = c64(-1.0, 0.4);
    let mut segs = vec![
        Segment::Line { start: base, end: c64(0.0, 0.45) },
        Segment::Line { start: c64(0.0, 0.45), end: top },
        Segment::Line { start: top, end: entry },
    ];
    let circle =
        PathSpec::circle(c64(-1.0, 0.0), 0.4, core::f64::consts::FRAC_PI_2, true, 0.3)?;
    segs.extend_from_slice(circle.segments());
    segs.push(Segment::Line { start: entry, end: top });
    segs.push(Segment::Line { start: top, end: c64(0.0, 0.45) });
    segs.push(Segment::Line { start: c64(0.0, 0.45), end: base });
    let loop2 = PathSpec::new(segs, 0.3)?;
    // Large circle enclosing both finite punctures.
    let big_entry = c64(2.0, 0.0);
    let mut big = vec![Segment::Line { start: base, end: big_entry }];
    let big_circle = PathSpec::circle(c64(-0.5, 0.0), 2.5, 0.0, true, 0.4)?;
    big.extend_from_slice(big_circle.segments());
    big.push(Segment::Line { start: big_entry, end: base });
    let loop_big = PathSpec::new(big, 0.4)?;
    Ok((loop1, loop2, loop_big))
}

fn matrix_from_state(n: usize, state: &[C64]) -> CMatrix {
    let mut m = CMatrix::zeros(n);
    m.data_mut().copy_from_slice(state);
    m
}

/// Integrates the deviation U with F = I + cU along a loop of the right
/// equation dF = −c·Â·F: dU = −Â(I + cU), U(start) = 0.
pub fn loop_deviation(
    form: &MeromorphicMatrixForm,
    c: f64,
    path: &PathSpec,
    tol: &Tolerances,
) -> Result<CMatrix> {
    path.validate_clearance(&form.finite_punctures())?;
    let n = form.dim();
    let mut state = vec![c64(0.0, 0.0); n * n];
    let mut deriv = |z: C64, zdot: C64, y: &[C64], out: &mut [C64]| -> Result<()> {
        let a = form.evaluate(z)?.scale(-zdot);
        let u = matrix_from_state(n, y);
        let d = a.add(&a.mul(&u).scale(c64(c, 0.0)));
        out.copy_from_slice(d.data());
        Ok(())
    };
    let mut post = |_: &mut [C64]| 0.0;
    integrate_path(path, &mut state, tol, &mut deriv, &mut post)?;
    let u = matrix_from_state(n, &state);
    if !u.is_finite() {
        return Err(Error::NonFiniteState);
    }
    Ok(u)
}

/// The closing map value at (c, a).
#[derive(Debug, Clone)]
pub struct PhiValue {
    /// (c, loop-1 readouts, loop-2 readouts) with readouts
    /// ((σ₁₁−1)/c, (σ₃₃−1)/c, Re σ₁₃/c, Im σ₁₃/c).
    pub values: [f64; 9],
    /// (σʲ − id)/c as matrices, one per finite loop.
    pub deviation_matrices: [CMatrix; 2],
    /// Monodromies ρʲ = I + cUʲ (None in the analytic c = 0 limit).
    pub rhos: Option<[CMatrix; 2]>,
}

impl PhiValue {
    /// The 8 active equations (the leading coordinate c is carried along
    /// only for bookkeeping).
    pub fn active(&self) -> [f64; 8] {
        let mut out = [0.0; 8];
        out.copy_from_slice(&self.values[1..]);
        out
    }

    pub fn residual_norm(&self) -> f64 {
        self.active().iter().map(|v| v * v).sum::<f64>().sqrt()
    }
}

/// Names of the φ coordinates, for reports.
pub const PHI_PROVENANCE: [&str; 9] = [
    "c",
    "loop0:(sigma11-1)/c",
    "loop0:(sigma33-1)/c",
    "loop0:Re(sigma13)/c",
    "loop0:Im(sigma13)/c",
    "loop1:(sigma11-1)/c",
    "loop1:(sigma33-1)/c",
    "loop1:Re(sigma13)/c",
    "loop1:Im(sigma13)/c",
];

fn readouts(m: &CMatrix) -> [f64; 4] {
    [m[(0, 0)].re, m[(2, 2)].re, m[(0, 2)].re, m[(0, 2)].im]
}

fn check_structural_zeros(m: &CMatrix) -> Result<()> {
    let scale = 1.0 + m.max_abs();
    for (i, j) in [(0usize, 1usize), (1, 0), (1, 2), (2, 1)] {
        let v = m[(i, j)].norm();
        if v > 1e-8 * scale {
            return Err(Error::StructuralZeroViolation { value: v });
        }
    }
    Ok(())
}

/// φ(c, a): monodromy closing residuals of both finite loops. At c = 0 the
/// analytic limit −2Σ_k(Re ∮ α_k)e_k is assembled from exact residues.
pub fn phi(c: f64, params: &FamilyParams, tol: &Tolerances) -> Result<PhiValue> {
    if c == 0.0 {
        let res = residue_map(params)?;
        let frame = LieFrame::sl3_killing_frame();
        let mut devs = Vec::new();
        let mut values = [0.0f64; 9];
        for (j, chunk) in [&res[0..4], &res[4..8]].iter().enumerate() {
            let mut s = CMatrix::zeros(3);
            for (k, r) in chunk.iter().enumerate() {
                // Re ∮ α_k = Re(2πi·Res) = −2π·Im Res.
                let coeff = -2.0 * (-2.0 * core::f64::consts::PI * r.im);
                s = s.add(&frame.member(k).scale(c64(coeff, 0.0)));
            }
            let ro = readouts(&s);
            values[1 + 4 * j..5 + 4 * j].copy_from_slice(&ro);
            devs.push(s);
        }
        return Ok(PhiValue {
            values,
            deviation_matrices: [devs[0].clone(), devs[1].clone()],
            rhos: None,
        });
    }
    let form = family_form(params)?;
    let (loop1, loop2, _) = family_loops()?;
    let mut values = [0.0f64; 9];
    values[0] = c;
    let mut devs = Vec::new();
    let mut rhos = Vec::new();
    for (j, lp) in [loop1, loop2].iter().enumerate() {
        let u = loop_deviation(&form, c, lp, tol)?;
        // σ = ρρ* with ρ = I + cU: (σ−I)/c = U + U* + c·UU*.
        let m = u.add(&u.adjoint()).add(&u.mul(&u.adjoint()).scale(c64(c, 0.0)));
        check_structural_zeros(&m)?;
        let ro = readouts(&m);
        values[1 + 4 * j..5 + 4 * j].copy_from_slice(&ro);
        let rho = CMatrix::identity(3).add(&u.scale(c64(c, 0.0)));
        devs.push(m);
        rhos.push(rho);
    }
    Ok(PhiValue {
        values,
        deviation_matrices: [devs[0].clone(), devs[1].clone()],
        rhos: Some([rhos[0].clone(), rhos[1].clone()]),
    })
}

/// Relative error of the first-order monodromy law per loop: the
/// finite-difference slope of σʲ at c = 0 against Sʲ = −2Σ(Re∮α_k)e_k from
/// exact residues. The slope is the symmetric quotient
/// [σ(c) − σ(−c)]/(2c), whose deviation from Sʲ is O(c²); the one-sided
/// quotient (σ(c)−I)/c carries the intrinsic O(c) curvature of the family
/// on top.
pub fn first_order_law_error(
    params: &FamilyParams,
    c: f64,
    tol: &Tolerances,
) -> Result<[f64; 2]> {
    let analytic = phi(0.0, params, tol)?;
    let plus = phi(c, params, tol)?;
    let minus = phi(-c, params, tol)?;
    let mut out = [0.0f64; 2];
    for j in 0..2 {
        let s = &analytic.deviation_matrices[j];
        let slope = plus.deviation_matrices[j]
            .add(&minus.deviation_matrices[j])
            .scale(c64(0.5, 0.0));
        let denom = s.frobenius_norm().max(1e-300);
        out[j] = slope.sub(s).frobenius_norm() / denom;
    }
    Ok(out)
}

/// One-sided version of [`first_order_law_error`]: ‖(σ(c)−I)/c − S‖/‖S‖,
/// which includes the O(c) curvature term of the family.
pub fn first_order_law_error_onesided(
    params: &FamilyParams,
    c: f64,
    tol: &Tolerances,
) -> Result<[f64; 2]> {
    let analytic = phi(0.0, params, tol)?;
    let measured = phi(c, params, tol)?;
    let mut out = [0.0f64; 2];
    for j in 0..2 {
        let s = &analytic.deviation_matrices[j];
        let m = &measured.deviation_matrices[j];
        let denom = s.frobenius_norm().max(1e-300);
        out[j] = m.sub(s).frobenius_norm() / denom;
    }
    Ok(out)
}

/// One continuation stage of the Gauss-Newton closure.
#[derive(Debug, Clone)]
pub struct NewtonStage {
    pub c: f64,
    pub iterations: usize,
    pub residual: f64,
}

/// Final state of the continuation.
#[derive(Debug, Clone)]
pub struct NewtonOutcome {
    pub c: f64,
    pub params: FamilyParams,
    pub residual: f64,
    /// Unitary deviations of ρ¹, ρ², ρ³ = (ρ²ρ¹)⁻¹.
    pub sigma_deviations: [f64; 3],
    pub stages: Vec<NewtonStage>,
    /// Degree k of the single-valued form along the path (locked integer).
    pub dual_degree: f64,
    /// σ-identity threshold used for acceptance in reports.
    pub sigma_acceptance: f64,
}

/// Options for [`newton_solve`].
#[derive(Debug, Clone, Copy)]
pub struct NewtonOptions {
    pub schedule_factor: f64,
    pub fd_step: f64,
    pub residual_target: f64,
    pub max_iterations: usize,
    pub tol: Tolerances,
}

impl Default for NewtonOptions {
    fn default() -> Self {
        NewtonOptions {
            schedule_factor: 2.0,
            fd_step: 1e-6,
            residual_target: 1e-10,
            max_iterations: 30,
            tol: Tolerances { ode_rel: 1e-12, ode_abs: 1e-13, max_steps: 4_000_000, max_step: None },
        }
    }
}

fn params_to_x(p: &FamilyParams) -> [f64; 14] {
    let mut x = [0.0; 14];
    for i in 0..7 {
        x[2 * i] = p.a[i].re;
        x[2 * i + 1] = p.a[i].im;
    }
    x
}

fn x_to_params(x: &[f64; 14]) -> FamilyParams {
    let mut a = [c64(0.0, 0.0); 7];
    for i in 0..7 {
        a[i] = c64(x[2 * i], x[2 * i + 1]);
    }
    FamilyParams { a }
}

/// Completeness and degree guard along the continuation: every end keeps
/// pole order 2 and the metric stays positive at probe points.
fn family_metric_check(params: &FamilyParams) -> Result<f64> {
    let form = family_form(params)?;
    let mut degree = -2.0;
    for p in form.punctures().to_vec() {
        let m = form.pole_order(&p)? as f64;
        if m < 1.0 {
            return Err(Error::IncompleteEnd { end: 0, order: -m });
        }
        degree += m;
    }
    for z in [c64(0.5, 0.0), c64(0.3, 0.7), c64(-0.4, 0.9), c64(2.0, -1.0)] {
        let a = form.evaluate(z)?;
        let h: f64 = a.data().iter().map(|v| v.norm_sqr()).sum();
        if h <= 1e-14 {
            return Err(Error::DegenerateParameters {
                detail: String::from("metric degenerates at a probe point"),
            });
        }
    }
    Ok(degree)
}

/// Gauss-Newton continuation from (0, a₀) to c_target: at each stage the
/// eight active closing equations are solved for the fourteen real
/// parameters with minimal-norm updates and a halving line search.
pub fn newton_solve(c_target: f64, opts: &NewtonOptions) -> Result<NewtonOutcome> {
    if c_target == 0.0 {
        let params = FamilyParams::base();
        let value = phi(0.0, &params, &opts.tol)?;
        let degree = family_metric_check(&params)?;
        return Ok(NewtonOutcome {
            c: 0.0,
            params,
            residual: value.residual_norm(),
            sigma_deviations: [0.0; 3],
            stages: vec![],
            dual_degree: degree,
            sigma_acceptance: SIGMA_ACCEPTANCE,
        });
    }
    let mut schedule = vec![c_target];
    let mut c = c_target;
    while c.abs() > 1.3e-3 {
        c /= opts.schedule_factor;
        schedule.push(c);
    }
    schedule.reverse();

    let mut params = FamilyParams::base();
    let mut stages = Vec::new();
    let mut degree = family_metric_check(&params)?;
    for &stage_c in &schedule {
        let mut value = phi(stage_c, &params, &opts.tol)?;
        let mut iterations = 0;
        while value.residual_norm() > opts.residual_target {
            if iterations >= opts.max_iterations {
                return Err(Error::ContinuationDiverged {
                    c: stage_c,
                    residual: value.residual_norm(),
                });
            }
            let jac = phi_jacobian(stage_c, &params, opts)?;
            let step = minimal_norm_step(&jac, &value.active())?;
            // Halving line search keeps the residual non-increasing.
            let mut factor = 1.0;
            let mut accepted = false;
            for _ in 0..10 {
                let mut x = params_to_x(&params);
                for k in 0..14 {
                    x[k] += factor * step[k];
                }
                let trial = x_to_params(&x);
                if trial.validate().is_err() {
                    factor *= 0.5;
                    continue;
                }
                match phi(stage_c, &trial, &opts.tol) {
                    Ok(tv) if tv.residual_norm() <= value.residual_norm() => {
                        params = trial;
                        value = tv;
                        accepted = true;
                        break;
                    }
                    _ => factor *= 0.5,
                }
            }
            if !accepted {
                return Err(Error::ContinuationDiverged {
                    c: stage_c,
                    residual: value.residual_norm(),
                });
            }
            iterations += 1;
        }
        degree = family_metric_check(&params)?;
        if (degree - 4.0).abs() > 1e-9 {
            return Err(Error::InconsistentDegree { exact: 4.0, quadrature: degree });
        }
        stages.push(NewtonStage { c: stage_c, iterations, residual: value.residual_norm() });
    }

    let value = phi(c_target, &params, &opts.tol)?;
    let rhos = value.rhos.clone().expect("c ≠ 0 carries monodromies");
    // The large circle is homotopic to traversing γ₂ then γ₁ with these
    // spurs, so its right-equation transport is ρ¹ρ²; the loop around ∞ is
    // its inverse.
    let rho3 = rhos[0].mul(&rhos[1]).inverse()?;
    let sigma_deviations = [
        unitary_deviation(&rhos[0]),
        unitary_deviation(&rhos[1]),
        unitary_deviation(&rho3),
    ];
    Ok(NewtonOutcome {
        c: c_target,
        params,
        residual: value.residual_norm(),
        sigma_deviations,
        stages,
        dual_degree: degree,
        sigma_acceptance: SIGMA_ACCEPTANCE,
    })
}

/// Central-difference Jacobian of the active φ residual in the 14 real
/// parameter coordinates.
fn phi_jacobian(c: f64, params: &FamilyParams, opts: &NewtonOptions) -> Result<[[f64; 14]; 8]> {
    let mut jac = [[0.0f64; 14]; 8];
    let x0 = params_to_x(params);
    for k in 0..14 {
        let h = opts.fd_step * (1.0 + x0[k].abs());
        let mut xp = x0;
        xp[k] += h;
        let mut xm = x0;
        xm[k] -= h;
        let fp = phi(c, &x_to_params(&xp), &opts.tol)?.active();
        let fm = phi(c, &x_to_params(&xm), &opts.tol)?.active();
        for row in 0..8 {
            jac[row][k] = (fp[row] - fm[row]) / (2.0 * h);
        }
    }
    Ok(jac)
}

/// Minimal-norm solution of J·δ = −r via the normal equations on JJᵀ.
fn minimal_norm_step(jac: &[[f64; 14]; 8], residual: &[f64; 8]) -> Result<[f64; 14]> {
    let mut jjt = CMatrix::zeros(8);
    for i in 0..8 {
        for j in 0..8 {
            let mut acc = 0.0;
            for k in 0..14 {
                acc += jac[i][k] * jac[j][k];
            }
            jjt[(i, j)] = c64(acc, 0.0);
        }
    }
    let rhs: Vec<C64> = residual.iter().map(|r| c64(-r, 0.0)).collect();
    let y = jjt.solve_vec(&rhs)?;
    let mut step = [0.0f64; 14];
    for k in 0..14 {
        let mut acc = 0.0;
        for i in 0..8 {
            acc += jac[i][k] * y[i].re;
        }
        step[k] = acc;
    }
    Ok(step)
}
