//! Dense complex matrices of small fixed size.
//!
//! Everything here targets the n ≤ 4 matrices of the group models (plus one
//! 14×14 real-symmetric Gram matrix), so the algorithms favour robustness
//! and determinism over asymptotics: LU with partial pivoting, cyclic Jacobi
//! for Hermitian eigenvalues, characteristic polynomial plus Durand-Kerner
//! for general complex spectra, scaling-and-squaring Taylor for the
//! exponential.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::Float;

use crate::error::{Error, Result};
use crate::{c64, C64};

/// Square complex matrix, row-major storage.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix {
    n: usize,
    data: Vec<C64>,
}

impl CMatrix {
    pub fn zeros(n: usize) -> Self {
        CMatrix { n, data: vec![C64::new(0.0, 0.0); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = CMatrix::zeros(n);
        for i in 0..n {
            m[(i, i)] = C64::new(1.0, 0.0);
        }
        m
    }

    /// Elementary matrix E_{ij} (1-based indices not used; i, j are 0-based).
    pub fn elementary(n: usize, i: usize, j: usize) -> Self {
        let mut m = CMatrix::zeros(n);
        m[(i, j)] = C64::new(1.0, 0.0);
        m
    }

    pub fn diag(entries: &[C64]) -> Self {
        let n = entries.len();
        let mut m = CMatrix::zeros(n);
        for i in 0..n {
            m[(i, i)] = entries[i];
        }
        m
    }

    pub fn from_rows(rows: &[&[C64]]) -> Result<Self> {
        let n = rows.len();
        let mut m = CMatrix::zeros(n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::DimensionMismatch { expected: n, found: row.len() });
            }
            for (j, &v) in row.iter().enumerate() {
                m[(i, j)] = v;
            }
        }
        Ok(m)
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut m = CMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn data(&self) -> &[C64] {
        &self.data
    }

    pub fn data_mut(&mut self) -> &mut [C64] {
        &mut self.data
    }

    pub fn check_same_dim(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: other.n });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(other.data.iter()) {
            *a += *b;
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(other.data.iter()) {
            *a -= *b;
        }
        out
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for a in out.data.iter_mut() {
            *a = -*a;
        }
        out
    }

    pub fn scale(&self, s: C64) -> Self {
        let mut out = self.clone();
        for a in out.data.iter_mut() {
            *a *= s;
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.n, other.n);
        let n = self.n;
        let mut out = CMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a.re == 0.0 && a.im == 0.0 {
                    continue;
                }
                for j in 0..n {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[C64]) -> Vec<C64> {
        let n = self.n;
        let mut out = vec![C64::new(0.0, 0.0); n];
        for i in 0..n {
            let mut acc = C64::new(0.0, 0.0);
            for j in 0..n {
                acc += self[(i, j)] * v[j];
            }
            out[i] = acc;
        }
        out
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let n = self.n;
        CMatrix::from_fn(n, |i, j| self[(j, i)].conj())
    }

    pub fn transpose(&self) -> Self {
        let n = self.n;
        CMatrix::from_fn(n, |i, j| self[(j, i)])
    }

    pub fn trace(&self) -> C64 {
        (0..self.n).map(|i| self[(i, i)]).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|c| c.re.is_finite() && c.im.is_finite())
    }

    /// Max-entry deviation from Hermitian symmetry.
    pub fn hermitian_deviation(&self) -> f64 {
        let mut dev: f64 = 0.0;
        for i in 0..self.n {
            for j in 0..self.n {
                dev = dev.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        dev
    }

    fn lu(&self) -> Result<(Vec<C64>, Vec<usize>, i32)> {
        let n = self.n;
        let mut a = self.data.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut sign = 1i32;
        for k in 0..n {
            let mut pivot = k;
            let mut best = a[k * n + k].norm();
            for i in k + 1..n {
                let v = a[i * n + k].norm();
                if v > best {
                    best = v;
                    pivot = i;
                }
            }
            if best == 0.0 {
                return Err(Error::SingularMatrix);
            }
            if pivot != k {
                for j in 0..n {
                    a.swap(k * n + j, pivot * n + j);
                }
                perm.swap(k, pivot);
                sign = -sign;
            }
            let pk = a[k * n + k];
            for i in k + 1..n {
                let f = a[i * n + k] / pk;
                a[i * n + k] = f;
                for j in k + 1..n {
                    let upd = f * a[k * n + j];
                    a[i * n + j] -= upd;
                }
            }
        }
        Ok((a, perm, sign))
    }

    pub fn det(&self) -> C64 {
        match self.lu() {
            Ok((a, _, sign)) => {
                let mut d = C64::new(sign as f64, 0.0);
                for k in 0..self.n {
                    d *= a[k * self.n + k];
                }
                d
            }
            Err(_) => C64::new(0.0, 0.0),
        }
    }

    pub fn solve_vec(&self, b: &[C64]) -> Result<Vec<C64>> {
        let n = self.n;
        let (a, perm, _) = self.lu()?;
        let mut x: Vec<C64> = perm.iter().map(|&p| b[p]).collect();
        for i in 0..n {
            for j in 0..i {
                let upd = a[i * n + j] * x[j];
                x[i] -= upd;
            }
        }
        for i in (0..n).rev() {
            for j in i + 1..n {
                let upd = a[i * n + j] * x[j];
                x[i] -= upd;
            }
            x[i] /= a[i * n + i];
        }
        Ok(x)
    }

    pub fn inverse(&self) -> Result<Self> {
        let n = self.n;
        let mut out = CMatrix::zeros(n);
        for col in 0..n {
            let mut e = vec![C64::new(0.0, 0.0); n];
            e[col] = C64::new(1.0, 0.0);
            let x = self.solve_vec(&e)?;
            for i in 0..n {
                out[(i, col)] = x[i];
            }
        }
        Ok(out)
    }

    /// Matrix exponential by scaling-and-squaring with a Taylor kernel.
    pub fn expm(&self) -> Self {
        let norm = self.frobenius_norm();
        let s = if norm > 0.25 { (norm / 0.25).log2().ceil() as u32 } else { 0 };
        let b = self.scale(C64::new((0.5f64).powi(s as i32), 0.0));
        let mut term = CMatrix::identity(self.n);
        let mut sum = CMatrix::identity(self.n);
        for k in 1..=20 {
            term = term.mul(&b).scale(C64::new(1.0 / k as f64, 0.0));
            sum = sum.add(&term);
        }
        let mut result = sum;
        for _ in 0..s {
            result = result.mul(&result);
        }
        result
    }

    /// Characteristic polynomial coefficients c so that
    /// det(λI - A) = λⁿ + c[0]λⁿ⁻¹ + ... + c[n-1].
    pub fn char_poly(&self) -> Vec<C64> {
        let n = self.n;
        let mut coeffs = Vec::with_capacity(n);
        let mut m = self.clone();
        for k in 1..=n {
            let c = -m.trace() / C64::new(k as f64, 0.0);
            coeffs.push(c);
            if k < n {
                let mut shifted = m.clone();
                for i in 0..n {
                    shifted[(i, i)] += c;
                }
                m = self.mul(&shifted);
            }
        }
        coeffs
    }

    /// All eigenvalues via Durand-Kerner on the characteristic polynomial.
    pub fn eigenvalues(&self) -> Vec<C64> {
        let n = self.n;
        if n == 0 {
            return vec![];
        }
        if n == 1 {
            return vec![self[(0, 0)]];
        }
        let cp = self.char_poly();
        // Monic ascending-order coefficients for evaluation.
        let mut poly = vec![C64::new(0.0, 0.0); n + 1];
        poly[n] = C64::new(1.0, 0.0);
        for (k, &c) in cp.iter().enumerate() {
            poly[n - 1 - k] = c;
        }
        durand_kerner(&poly)
    }

    /// Eigenvalues of a Hermitian matrix via cyclic complex Jacobi.
    pub fn hermitian_eigenvalues(&self) -> Vec<f64> {
        let n = self.n;
        let mut a = self.clone();
        let scale = a.frobenius_norm();
        if scale == 0.0 {
            return vec![0.0; n];
        }
        for _sweep in 0..60 {
            let mut off = 0.0f64;
            for p in 0..n {
                for q in p + 1..n {
                    off += a[(p, q)].norm_sqr();
                }
            }
            if off.sqrt() <= 1e-15 * scale {
                break;
            }
            for p in 0..n {
                for q in p + 1..n {
                    let g = a[(p, q)].norm();
                    if g <= 1e-300 {
                        continue;
                    }
                    let phase = a[(p, q)] / c64(g, 0.0);
                    let alpha = a[(p, p)].re;
                    let beta = a[(q, q)].re;
                    let tau = (beta - alpha) / (2.0 * g);
                    let t = if tau >= 0.0 {
                        1.0 / (tau + (1.0 + tau * tau).sqrt())
                    } else {
                        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                    };
                    let c = 1.0 / (1.0 + t * t).sqrt();
                    let s = t * c;
                    // Columns: [p q] <- [p q] * [[c, s·phase], [-s·conj(phase), c]]
                    for i in 0..n {
                        let aip = a[(i, p)];
                        let aiq = a[(i, q)];
                        a[(i, p)] = aip * c64(c, 0.0) - aiq * c64(s, 0.0) * phase.conj();
                        a[(i, q)] = aip * c64(s, 0.0) * phase + aiq * c64(c, 0.0);
                    }
                    for j in 0..n {
                        let apj = a[(p, j)];
                        let aqj = a[(q, j)];
                        a[(p, j)] = apj * c64(c, 0.0) - aqj * c64(s, 0.0) * phase;
                        a[(q, j)] = apj * c64(s, 0.0) * phase.conj() + aqj * c64(c, 0.0);
                    }
                }
            }
        }
        let mut eigs: Vec<f64> = (0..n).map(|i| a[(i, i)].re).collect();
        eigs.sort_by(|x, y| y.partial_cmp(x).unwrap());
        eigs
    }

    /// Singular values (descending) via the Hermitian eigenvalues of A*A.
    pub fn singular_values(&self) -> Vec<f64> {
        let ata = self.adjoint().mul(self);
        ata.hermitian_eigenvalues().into_iter().map(|l| l.max(0.0).sqrt()).collect()
    }

    pub fn smallest_singular_value(&self) -> f64 {
        self.singular_values().last().copied().unwrap_or(0.0)
    }
}

impl core::ops::Index<(usize, usize)> for CMatrix {
    type Output = C64;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.data[i * self.n + j]
    }
}

impl core::ops::IndexMut<(usize, usize)> for CMatrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.data[i * self.n + j]
    }
}

/// Roots of a complex polynomial given by ascending coefficients.
/// Degenerate (constant / empty) input yields no roots.
pub fn complex_roots(coeffs: &[C64]) -> Vec<C64> {
    let mut c: Vec<C64> = coeffs.to_vec();
    while c.last().map(|v| v.norm() == 0.0).unwrap_or(false) {
        c.pop();
    }
    if c.len() <= 1 {
        return vec![];
    }
    let lead = *c.last().unwrap();
    for v in c.iter_mut() {
        *v /= lead;
    }
    durand_kerner(&c)
}

/// Simultaneous root iteration for a monic polynomial (ascending coeffs).
fn durand_kerner(poly: &[C64]) -> Vec<C64> {
    let n = poly.len() - 1;
    let radius = 1.0 + poly.iter().map(|c| c.norm()).fold(0.0, f64::max);
    let seed = c64(0.4, 0.9);
    let mut roots: Vec<C64> = (0..n)
        .map(|k| {
            let mut p = c64(radius, 0.0);
            for _ in 0..=k {
                p *= seed;
            }
            p
        })
        .collect();
    let eval = |z: C64| -> C64 {
        let mut acc = c64(0.0, 0.0);
        for &c in poly.iter().rev() {
            acc = acc * z + c;
        }
        acc
    };
    for _iter in 0..600 {
        let mut max_step = 0.0f64;
        for i in 0..n {
            let mut denom = c64(1.0, 0.0);
            for j in 0..n {
                if j != i {
                    let mut d = roots[i] - roots[j];
                    if d.norm() < 1e-30 {
                        d = c64(1e-30, 0.0);
                    }
                    denom *= d;
                }
            }
            let step = eval(roots[i]) / denom;
            roots[i] -= step;
            max_step = max_step.max(step.norm());
        }
        if max_step < 1e-15 * radius {
            break;
        }
    }
    roots
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: C64, b: C64, tol: f64) -> bool {
        (a - b).norm() < tol
    }

    #[test]
    fn det_and_inverse() {
        let m = CMatrix::from_rows(&[
            &[c64(1.0, 0.0), c64(2.0, 1.0), c64(0.0, 0.0)],
            &[c64(0.0, -1.0), c64(3.0, 0.0), c64(1.0, 0.0)],
            &[c64(2.0, 0.0), c64(0.0, 0.0), c64(1.0, 1.0)],
        ])
        .unwrap();
        let inv = m.inverse().unwrap();
        let prod = m.mul(&inv);
        assert!(prod.sub(&CMatrix::identity(3)).max_abs() < 1e-12);
        let d = m.det();
        let dinv = inv.det();
        assert!(close(d * dinv, c64(1.0, 0.0), 1e-12));
    }

    #[test]
    fn expm_of_nilpotent() {
        // exp(E12) = I + E12
        let e12 = CMatrix::elementary(2, 0, 1);
        let e = e12.expm();
        assert!(close(e[(0, 0)], c64(1.0, 0.0), 1e-14));
        assert!(close(e[(0, 1)], c64(1.0, 0.0), 1e-14));
        assert!(close(e[(1, 0)], c64(0.0, 0.0), 1e-14));
    }

    #[test]
    fn expm_of_diagonal() {
        let m = CMatrix::diag(&[c64(0.0, core::f64::consts::PI), c64(1.0, 0.0)]);
        let e = m.expm();
        assert!(close(e[(0, 0)], c64(-1.0, 0.0), 1e-12));
        assert!(close(e[(1, 1)], c64(core::f64::consts::E, 0.0), 1e-12));
    }

    #[test]
    fn eigenvalues_of_companion_like() {
        let m = CMatrix::from_rows(&[
            &[c64(2.0, 0.0), c64(1.0, 0.0)],
            &[c64(0.0, 0.0), c64(-1.0, 0.0)],
        ])
        .unwrap();
        let mut eigs = m.eigenvalues();
        eigs.sort_by(|a, b| a.re.partial_cmp(&b.re).unwrap());
        assert!(close(eigs[0], c64(-1.0, 0.0), 1e-10));
        assert!(close(eigs[1], c64(2.0, 0.0), 1e-10));
    }

    #[test]
    fn hermitian_eigenvalues_known() {
        // [[2, i],[-i, 2]] has eigenvalues 3 and 1
        let m = CMatrix::from_rows(&[
            &[c64(2.0, 0.0), c64(0.0, 1.0)],
            &[c64(0.0, -1.0), c64(2.0, 0.0)],
        ])
        .unwrap();
        let e = m.hermitian_eigenvalues();
        assert!((e[0] - 3.0).abs() < 1e-12);
        assert!((e[1] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn singular_values_of_diag() {
        let m = CMatrix::diag(&[c64(3.0, 0.0), c64(0.0, -2.0)]);
        let s = m.singular_values();
        assert!((s[0] - 3.0).abs() < 1e-12);
        assert!((s[1] - 2.0).abs() < 1e-12);
    }

    #[test]
    fn char_poly_of_nilpotent_is_pure_power() {
        let mut m = CMatrix::zeros(3);
        m[(0, 1)] = c64(1.0, 0.0);
        m[(1, 2)] = c64(2.0, 0.0);
        let cp = m.char_poly();
        for c in cp {
            assert!(c.norm() < 1e-14);
        }
    }
}
