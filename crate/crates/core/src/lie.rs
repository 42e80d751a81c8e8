//! Matrix model of the Lie-theoretic substrate.
//!
//! The ambient symmetric space is SL(n,C)/SU(n), identified with the
//! Hermitian positive-definite unimodular matrices through a ↦ aa*. The
//! Killing form of sl(n,C) is B(X,Y) = 2n·tr(XY); the involution fixing
//! su(n) is X ↦ −X*. A [`LieFrame`] packages Hermitian basis matrices of
//! the tangent space at the base point together with the constant c of the
//! inner product ⟨X,Y⟩ = c·tr(XY*) under which they are orthonormal.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::Float;

use crate::cmatrix::CMatrix;
use crate::error::{Error, Result};
use crate::{c64, C64};

/// Max-entry tolerance for Hermitian checks.
pub const HERMITIAN_TOL: f64 = 1e-10;

/// Killing form of sl(n,C): B(X,Y) = 2n·tr(XY).
pub fn killing_sl(x: &CMatrix, y: &CMatrix) -> Result<C64> {
    x.check_same_dim(y)?;
    let n = x.dim();
    Ok(x.mul(y).trace() * c64(2.0 * n as f64, 0.0))
}

/// Involution X ↦ −X*; fixes the compact real form su(n).
pub fn cartan_involution(x: &CMatrix) -> CMatrix {
    x.adjoint().neg()
}

/// Unimodular matrix, the working representation of an element of SL(n,C).
#[derive(Debug, Clone, PartialEq)]
pub struct GroupElement {
    matrix: CMatrix,
}

impl GroupElement {
    /// Accepts a matrix with |det − 1| ≤ tol (1e-6 when unspecified covers
    /// post-transport drift before renormalization).
    pub fn new(matrix: CMatrix) -> Result<Self> {
        Self::with_tolerance(matrix, 1e-6)
    }

    pub fn with_tolerance(matrix: CMatrix, tol: f64) -> Result<Self> {
        let det = matrix.det();
        if (det - c64(1.0, 0.0)).norm() > tol {
            return Err(Error::NotUnimodular { det });
        }
        Ok(GroupElement { matrix })
    }

    pub fn identity(n: usize) -> Self {
        GroupElement { matrix: CMatrix::identity(n) }
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> CMatrix {
        self.matrix
    }

    pub fn det_drift(&self) -> f64 {
        (self.matrix.det() - c64(1.0, 0.0)).norm()
    }
}

/// Cartan embedding of the coset of `a`: the Hermitian matrix aa*.
pub fn cartan_embed(a: &GroupElement) -> CMatrix {
    a.matrix().mul(&a.matrix().adjoint())
}

/// Hermitian basis of (part of) the tangent space at the base point,
/// orthonormal under ⟨X,Y⟩ = c·tr(XY*).
#[derive(Debug, Clone)]
pub struct LieFrame {
    n: usize,
    members: Vec<CMatrix>,
    inner_product_constant: f64,
}

impl LieFrame {
    /// Validates dimensions and Hermitian symmetry of the members.
    /// Orthonormality is not enforced here; see [`frame_gram_check`].
    pub fn new(n: usize, members: Vec<CMatrix>, inner_product_constant: f64) -> Result<Self> {
        if inner_product_constant <= 0.0 {
            return Err(Error::Invalid(alloc::format!(
                "inner product constant must be positive, got {inner_product_constant}"
            )));
        }
        for (idx, m) in members.iter().enumerate() {
            if m.dim() != n {
                return Err(Error::DimensionMismatch { expected: n, found: m.dim() });
            }
            let dev = m.hermitian_deviation();
            if dev > HERMITIAN_TOL {
                return Err(Error::NotHermitian { index: idx, deviation: dev });
            }
        }
        Ok(LieFrame { n, members, inner_product_constant })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> &[CMatrix] {
        &self.members
    }

    pub fn member(&self, j: usize) -> &CMatrix {
        &self.members[j]
    }

    pub fn inner_product_constant(&self) -> f64 {
        self.inner_product_constant
    }

    /// ⟨X,Y⟩ = c·tr(XY*).
    pub fn inner_product(&self, x: &CMatrix, y: &CMatrix) -> C64 {
        x.mul(&y.adjoint()).trace() * c64(self.inner_product_constant, 0.0)
    }

    /// Σ coeffs[j]·e_j.
    pub fn combine(&self, coeffs: &[C64]) -> Result<CMatrix> {
        if coeffs.len() != self.members.len() {
            return Err(Error::FrameSizeMismatch {
                expected: self.members.len(),
                found: coeffs.len(),
            });
        }
        let mut acc = CMatrix::zeros(self.n);
        for (c, e) in coeffs.iter().zip(self.members.iter()) {
            acc = acc.add(&e.scale(*c));
        }
        Ok(acc)
    }

    /// Standard frame of the three-ended SL(3,C) family, orthonormal under
    /// the Killing form 6·tr(XY*) (c = 6). This is the "s5-frame" of the
    /// surface-spec file format.
    pub fn sl3_killing_frame() -> Self {
        let s = 1.0 / (2.0 * 3.0f64.sqrt());
        let e1 = CMatrix::from_fn(3, |i, j| match (i, j) {
            (0, 2) | (2, 0) => c64(s, 0.0),
            _ => c64(0.0, 0.0),
        });
        let e2 = CMatrix::from_fn(3, |i, j| match (i, j) {
            (0, 2) => c64(0.0, -s),
            (2, 0) => c64(0.0, s),
            _ => c64(0.0, 0.0),
        });
        let e3 = CMatrix::diag(&[c64(s, 0.0), c64(-s, 0.0), c64(0.0, 0.0)]);
        let t = 1.0 / 6.0;
        let e4 = CMatrix::diag(&[c64(t, 0.0), c64(t, 0.0), c64(-2.0 * t, 0.0)]);
        LieFrame::new(3, vec![e1, e2, e3, e4], 6.0).expect("frame members are Hermitian")
    }

    /// Same span as [`Self::sl3_killing_frame`], rescaled to be orthonormal
    /// under the plain trace form tr(XY*) (c = 1). This is the "plane-frame"
    /// of the surface-spec file format; with it the conformal factor of
    /// Weierstrass data equals Σ|α̂_j|² on the nose.
    pub fn sl3_trace_frame() -> Self {
        let killing = Self::sl3_killing_frame();
        let scale = c64(6.0f64.sqrt(), 0.0);
        let members = killing.members.iter().map(|e| e.scale(scale)).collect();
        LieFrame::new(3, members, 1.0).expect("frame members are Hermitian")
    }
}

/// Gram matrix minus identity, as entrywise absolute deviations.
pub fn frame_gram_check(frame: &LieFrame) -> Vec<Vec<f64>> {
    let k = frame.len();
    let mut out = vec![vec![0.0; k]; k];
    for i in 0..k {
        for j in 0..k {
            let g = frame.inner_product(frame.member(i), frame.member(j));
            let target = if i == j { 1.0 } else { 0.0 };
            out[i][j] = (g - c64(target, 0.0)).norm();
        }
    }
    out
}

/// Coefficients c_j with X = Σ c_j e_j, via the declared inner product.
/// Errors when X is outside the complex span (residual above 1e-10·‖X‖).
pub fn expand_in_frame(x: &CMatrix, frame: &LieFrame) -> Result<Vec<C64>> {
    if x.dim() != frame.dim() {
        return Err(Error::DimensionMismatch { expected: frame.dim(), found: x.dim() });
    }
    let k = frame.len();
    if k == 0 {
        if x.max_abs() == 0.0 {
            return Ok(vec![]);
        }
        return Err(Error::SpanViolation { residual: x.frobenius_norm() });
    }
    let gram = CMatrix::from_fn(k, |i, j| frame.inner_product(frame.member(j), frame.member(i)));
    let rhs: Vec<C64> = (0..k).map(|j| frame.inner_product(x, frame.member(j))).collect();
    let coeffs = gram.solve_vec(&rhs)?;
    let recon = frame.combine(&coeffs)?;
    let residual = x.sub(&recon).frobenius_norm();
    let scale = x.frobenius_norm();
    if residual > 1e-10 * scale.max(1.0) {
        return Err(Error::SpanViolation { residual });
    }
    Ok(coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn killing_on_elementary_matrices() {
        // B(E13, E31) = 2n·tr(E13 E31) = 6 for n = 3
        let e13 = CMatrix::elementary(3, 0, 2);
        let e31 = CMatrix::elementary(3, 2, 0);
        let b = killing_sl(&e13, &e31).unwrap();
        assert!((b - c64(6.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn killing_normalizes_frame_diagonal() {
        // B(e3, e3) = 1 for e3 = diag(1,-1,0)/(2√3)
        let frame = LieFrame::sl3_killing_frame();
        let b = killing_sl(frame.member(2), frame.member(2)).unwrap();
        assert!((b - c64(1.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn killing_bilinear_zero() {
        let x = CMatrix::from_rows(&[
            &[c64(0.3, 0.1), c64(1.0, -2.0)],
            &[c64(0.0, 0.5), c64(-0.3, -0.1)],
        ])
        .unwrap();
        let zero = CMatrix::zeros(2);
        assert!(killing_sl(&x, &zero).unwrap().norm() < 1e-14);
    }

    #[test]
    fn involution_cases() {
        // Hermitian X ↦ -X, skew-Hermitian X ↦ X, E12 ↦ -E21
        let herm = CMatrix::from_rows(&[
            &[c64(1.0, 0.0), c64(2.0, 3.0)],
            &[c64(2.0, -3.0), c64(-1.0, 0.0)],
        ])
        .unwrap();
        assert!(cartan_involution(&herm).add(&herm).max_abs() < 1e-14);
        let skew = herm.scale(c64(0.0, 1.0));
        assert!(cartan_involution(&skew).sub(&skew).max_abs() < 1e-14);
        let e12 = CMatrix::elementary(2, 0, 1);
        let e21 = CMatrix::elementary(2, 1, 0);
        assert!(cartan_involution(&e12).add(&e21).max_abs() < 1e-14);
    }

    #[test]
    fn involution_is_involutive() {
        let x = CMatrix::from_rows(&[
            &[c64(0.2, -0.7), c64(1.5, 0.25)],
            &[c64(-0.1, 0.4), c64(0.9, 1.1)],
        ])
        .unwrap();
        let twice = cartan_involution(&cartan_involution(&x));
        assert!(twice.sub(&x).max_abs() < 1e-14);
    }

    #[test]
    fn embed_identity_diagonal_unitary() {
        let id = GroupElement::identity(2);
        assert!(cartan_embed(&id).sub(&CMatrix::identity(2)).max_abs() < 1e-14);

        let d = GroupElement::new(CMatrix::diag(&[c64(2.0, 0.0), c64(0.5, 0.0)])).unwrap();
        let e = cartan_embed(&d);
        assert!((e[(0, 0)] - c64(4.0, 0.0)).norm() < 1e-14);
        assert!((e[(1, 1)] - c64(0.25, 0.0)).norm() < 1e-14);

        // unitary maps to the identity (fiber of G -> G/H)
        let t = core::f64::consts::FRAC_PI_3;
        let u = GroupElement::new(
            CMatrix::from_rows(&[
                &[c64(t.cos(), 0.0), c64(-t.sin(), 0.0)],
                &[c64(t.sin(), 0.0), c64(t.cos(), 0.0)],
            ])
            .unwrap(),
        )
        .unwrap();
        assert!(cartan_embed(&u).sub(&CMatrix::identity(2)).max_abs() < 1e-14);
    }

    #[test]
    fn frames_are_orthonormal() {
        for frame in [LieFrame::sl3_killing_frame(), LieFrame::sl3_trace_frame()] {
            let dev = frame_gram_check(&frame);
            for row in dev {
                for d in row {
                    assert!(d <= 1e-12, "gram deviation {d}");
                }
            }
        }
    }

    #[test]
    fn gram_check_flags_repeated_member() {
        let f = LieFrame::sl3_killing_frame();
        let repeated =
            LieFrame::new(3, vec![f.member(0).clone(), f.member(0).clone()], 6.0).unwrap();
        let dev = frame_gram_check(&repeated);
        assert!((dev[0][1] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn gram_check_empty_frame() {
        let empty = LieFrame::new(3, vec![], 6.0).unwrap();
        assert!(frame_gram_check(&empty).is_empty());
    }

    #[test]
    fn expand_unit_and_zero_and_combination() {
        let frame = LieFrame::sl3_killing_frame();
        let c = expand_in_frame(frame.member(1), &frame).unwrap();
        assert!((c[1] - c64(1.0, 0.0)).norm() < 1e-12);
        for (j, v) in c.iter().enumerate() {
            if j != 1 {
                assert!(v.norm() < 1e-12);
            }
        }

        let zeros = expand_in_frame(&CMatrix::zeros(3), &frame).unwrap();
        assert!(zeros.iter().all(|v| v.norm() < 1e-14));

        // X = 2e1 + i·e3 -> (2, 0, i, 0)
        let x = frame.member(0).scale(c64(2.0, 0.0)).add(&frame.member(2).scale(c64(0.0, 1.0)));
        let c = expand_in_frame(&x, &frame).unwrap();
        assert!((c[0] - c64(2.0, 0.0)).norm() < 1e-12);
        assert!((c[2] - c64(0.0, 1.0)).norm() < 1e-12);
        assert!(c[1].norm() < 1e-12 && c[3].norm() < 1e-12);
    }

    #[test]
    fn expand_rejects_out_of_span() {
        let frame = LieFrame::sl3_killing_frame();
        let e12 = CMatrix::elementary(3, 0, 1);
        match expand_in_frame(&e12, &frame) {
            Err(Error::SpanViolation { .. }) => {}
            other => panic!("expected span violation, got {other:?}"),
        }
    }
}
