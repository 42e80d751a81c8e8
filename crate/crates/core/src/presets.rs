//! Canonical example surfaces used by the CLI and the test suites.

use alloc::vec;

use crate::error::Result;
use crate::form::{
    nilpotent_example_dual_form, nilpotent_example_form, weierstrass_to_form,
    MeromorphicMatrixForm, WeierstrassData,
};
use crate::lie::LieFrame;
use crate::perturb::{family_form, FamilyParams};
use crate::rational::RationalFunction;
use crate::surface::{catenoid_cousin_surface, CatenoidCousinParams, SurfaceSpec};
use crate::{c64, C64};

/// Flat plane: g = (0,0), ω = dz under the trace-orthonormal frame.
/// One end at ∞; h ≡ 2, K ≡ 0.
pub fn plane() -> Result<SurfaceSpec> {
    let data = WeierstrassData {
        g: vec![RationalFunction::zero(), RationalFunction::zero()],
        omega: RationalFunction::one(),
        frame: LieFrame::sl3_trace_frame(),
    };
    let form = weierstrass_to_form(&data)?;
    SurfaceSpec::rational(form, c64(0.0, 0.0), "plane")
}

/// Enneper-type data g = (z, 0), ω = dz under the trace-orthonormal frame.
pub fn enneper() -> Result<SurfaceSpec> {
    let data = WeierstrassData {
        g: vec![RationalFunction::variable(), RationalFunction::zero()],
        omega: RationalFunction::one(),
        frame: LieFrame::sl3_trace_frame(),
    };
    let form = weierstrass_to_form(&data)?;
    SurfaceSpec::rational(form, c64(0.0, 0.0), "enneper")
}

/// Unipotent example with a = z, b = 1/z, c = 1: complete, two ends.
pub fn nilpotent() -> Result<SurfaceSpec> {
    let form = nilpotent_form()?;
    SurfaceSpec::rational(form, c64(1.0, 0.0), "nilpotent")
}

/// The left form of the unipotent example.
pub fn nilpotent_form() -> Result<MeromorphicMatrixForm> {
    let z = RationalFunction::variable();
    let inv_z = RationalFunction::one().div(&z)?;
    nilpotent_example_form(&z, &inv_z, &RationalFunction::one())
}

/// The exact right-invariant form of the unipotent example.
pub fn nilpotent_dual_form() -> Result<MeromorphicMatrixForm> {
    let z = RationalFunction::variable();
    let inv_z = RationalFunction::one().div(&z)?;
    nilpotent_example_dual_form(&z, &inv_z, &RationalFunction::one())
}

/// Exponent-family surface for given (μ, a, b).
pub fn catenoid_cousin(mu: f64, a: f64, b: f64) -> Result<SurfaceSpec> {
    catenoid_cousin_surface(CatenoidCousinParams { mu, a, b })
}

/// Three-ended deformation family at given parameters (base point when
/// `params` is None): the single-valued right-invariant data α̂ punctured
/// at {0, −1, ∞}. This is the "s5-family" preset of the CLI.
pub fn deformed_family(params: Option<FamilyParams>) -> Result<SurfaceSpec> {
    let p = params.unwrap_or_else(FamilyParams::base);
    let form = family_form(&p)?;
    SurfaceSpec::rational(form, c64(0.5, 0.0), "s5-family")
}

/// Complex point used as the ∞ marker when listing punctures textually.
pub fn infinity_marker() -> C64 {
    c64(f64::INFINITY, 0.0)
}
