//! Core library for surfaces with holomorphic right Gauss maps in the
//! symmetric spaces SL(n,C)/SU(n).
//!
//! The building blocks are matrix-valued meromorphic 1-forms A(z)dz on the
//! punctured Riemann sphere. A null form (tr A(z)² ≡ 0) is the representation
//! data of a surface f = FF* where F solves F⁻¹dF = α or dF·F⁻¹ = α. This
//! crate provides:
//!
//! - the matrix model of the Lie-theoretic substrate (Killing form, Cartan
//!   involution and embedding, orthonormal frames) in [`lie`],
//! - exact rational arithmetic for the forms themselves (evaluation,
//!   residues, pole orders, nullity) in [`poly`], [`rational`] and [`form`],
//! - numerical analytic continuation of the lift ODE along paths, loop
//!   monodromy and unitarity diagnostics in [`path`] and [`ode`],
//! - series solutions at regular singular points, logarithmic partners and
//!   the SU(n)-monodromy obstruction in [`frobenius`],
//! - surface-level analysis (metric, curvature, end orders, total curvature
//!   by degree and by quadrature, isoperimetric end ratios, the
//!   Chern-Osserman verdict) in [`surface`] and [`exponent`],
//! - the seven-parameter deformation family with its residue map, Jacobian
//!   rank and Gauss-Newton closing of the period conditions in [`perturb`].
//!
//! The crate is `no_std` (allocation required); all computations are pure
//! and deterministic, so values may be shared freely across threads.
//!
//! Dimension convention: `n` is always the matrix size of the supplied model
//! (e.g. 3 for SL(3,C)), never the dimension of an adjoint representation.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod cmatrix;
pub mod error;
pub mod exponent;
pub mod form;
pub mod frobenius;
pub mod lie;
pub mod ode;
pub mod path;
pub mod perturb;
pub mod poly;
pub mod presets;
pub mod quad;
pub mod rational;
pub mod scalar;
pub mod surface;

pub use error::{Error, Result};

/// Complex double-precision scalar used throughout.
pub type C64 = num_complex::Complex<f64>;

/// Shorthand constructor for a complex number.
#[inline]
pub fn c64(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}
