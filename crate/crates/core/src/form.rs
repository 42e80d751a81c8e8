//! Matrix-valued meromorphic 1-forms on the punctured sphere.
//!
//! A form is an n×n matrix of rational functions A(z), understood as A(z)dz
//! with values in sl(n,C) (the trace must vanish identically). Punctures are
//! declared up front and must cover every denominator root; the point at
//! infinity is handled through the chart w = 1/z with the −1/w² Jacobian.
//!
//! Nullity — tr A(z)² ≡ 0, equivalently B(α,α) = 0 for the Killing form —
//! is what makes a form the representation data of a surface, and is checked
//! exactly on the rational level.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::Float;

use crate::cmatrix::{complex_roots, CMatrix};
use crate::error::{Error, Result};
use crate::lie::LieFrame;
use crate::poly::Polynomial;
use crate::rational::RationalFunction;
use crate::{c64, C64};

/// Tolerance for matching a point against a declared puncture.
const PUNCTURE_MATCH_TOL: f64 = 1e-9;

/// A point of the compactified plane where the form may have poles.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Puncture {
    Finite(C64),
    Infinity,
}

impl Puncture {
    pub fn matches_point(&self, z: C64) -> bool {
        match self {
            Puncture::Finite(p) => (z - p).norm() <= PUNCTURE_MATCH_TOL * (1.0 + p.norm()),
            Puncture::Infinity => false,
        }
    }

    pub fn same_as(&self, other: &Puncture) -> bool {
        match (self, other) {
            (Puncture::Finite(p), Puncture::Finite(q)) => {
                (p - q).norm() <= PUNCTURE_MATCH_TOL * (1.0 + p.norm())
            }
            (Puncture::Infinity, Puncture::Infinity) => true,
            _ => false,
        }
    }
}

/// Which Maurer-Cartan form the matrix represents.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Designation {
    /// α = F⁻¹dF.
    Left,
    /// α# = dF·F⁻¹.
    Right,
}

/// Outcome of the nullity check.
#[derive(Debug, Clone)]
pub struct NullCheck {
    pub is_null: bool,
    /// tr A(z)² as an exact rational function (zero iff null).
    pub trace_square: RationalFunction<C64>,
}

impl NullCheck {
    /// Numerator polynomial of the residual; zero polynomial when null.
    pub fn residual_numerator(&self) -> &Polynomial<C64> {
        self.trace_square.numerator()
    }
}

/// Multi-component Weierstrass data (g₁..g_m, ω) with the frame that embeds
/// the induced component forms into a matrix Lie algebra.
#[derive(Debug, Clone)]
pub struct WeierstrassData {
    pub g: Vec<RationalFunction<C64>>,
    pub omega: RationalFunction<C64>,
    pub frame: LieFrame,
}

/// sl(n,C)-valued meromorphic 1-form with declared punctures.
#[derive(Debug, Clone)]
pub struct MeromorphicMatrixForm {
    n: usize,
    entries: Vec<RationalFunction<C64>>,
    punctures: Vec<Puncture>,
    designation: Designation,
}

impl MeromorphicMatrixForm {
    /// Validates the trace and that the declared punctures cover all poles.
    pub fn new(
        n: usize,
        entries: Vec<RationalFunction<C64>>,
        punctures: Vec<Puncture>,
        designation: Designation,
    ) -> Result<Self> {
        if entries.len() != n * n {
            return Err(Error::DimensionMismatch { expected: n * n, found: entries.len() });
        }
        let form = MeromorphicMatrixForm { n, entries, punctures, designation };
        form.check_trace()?;
        form.check_puncture_coverage()?;
        Ok(form)
    }

    /// Builds the form and derives the puncture set from the denominator
    /// roots of the entries (plus ∞ when any entry is singular there).
    pub fn with_auto_punctures(
        n: usize,
        entries: Vec<RationalFunction<C64>>,
        designation: Designation,
    ) -> Result<Self> {
        let punctures = derive_punctures(&entries)?;
        Self::new(n, entries, punctures, designation)
    }

    fn check_trace(&self) -> Result<()> {
        let mut tr = RationalFunction::zero();
        let mut scale = 0.0f64;
        for i in 0..self.n {
            let e = self.entry(i, i);
            scale = scale.max(e.numerator().max_mag());
            tr = tr.add(e)?;
        }
        if tr.is_zero() {
            return Ok(());
        }
        let residual = tr.numerator().max_mag();
        if residual > 1e-9 * scale.max(1.0) {
            return Err(Error::TraceNotZero { residual_norm: residual });
        }
        Ok(())
    }

    fn check_puncture_coverage(&self) -> Result<()> {
        let finite = self.finite_punctures();
        let has_infinity = self.has_infinity_puncture();
        for i in 0..self.n {
            for j in 0..self.n {
                let e = self.entry(i, j);
                if e.is_zero() {
                    continue;
                }
                let mut den = e.denominator().clone();
                for &p in &finite {
                    // Divide out the full denominator multiplicity: partially
                    // cancelled factors still sit at the declared puncture.
                    let m = e.denominator_multiplicity_at(p);
                    for _ in 0..m {
                        let (q, _) = den.div_rem(&Polynomial::linear_root(p))?;
                        den = q;
                    }
                }
                if den.degree() > 0 {
                    return Err(Error::UndeclaredPoleInEntry { row: i, col: j });
                }
                if !has_infinity && e.infinity_form_pole_order()? > 0 {
                    return Err(Error::UndeclaredPoleInEntry { row: i, col: j });
                }
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn entry(&self, i: usize, j: usize) -> &RationalFunction<C64> {
        &self.entries[i * self.n + j]
    }

    pub fn entries(&self) -> &[RationalFunction<C64>] {
        &self.entries
    }

    pub fn punctures(&self) -> &[Puncture] {
        &self.punctures
    }

    pub fn finite_punctures(&self) -> Vec<C64> {
        self.punctures
            .iter()
            .filter_map(|p| match p {
                Puncture::Finite(z) => Some(*z),
                Puncture::Infinity => None,
            })
            .collect()
    }

    pub fn has_infinity_puncture(&self) -> bool {
        self.punctures.iter().any(|p| matches!(p, Puncture::Infinity))
    }

    pub fn designation(&self) -> Designation {
        self.designation
    }

    pub fn with_designation(mut self, d: Designation) -> Self {
        self.designation = d;
        self
    }

    /// Scales every entry by the constant `c`.
    pub fn scaled(&self, c: C64) -> Self {
        MeromorphicMatrixForm {
            n: self.n,
            entries: self.entries.iter().map(|e| e.scale(c)).collect(),
            punctures: self.punctures.clone(),
            designation: self.designation,
        }
    }

    fn declared(&self, p: &Puncture) -> bool {
        self.punctures.iter().any(|q| q.same_as(p))
    }

    /// Entrywise evaluation; errors at declared poles.
    pub fn evaluate(&self, z: C64) -> Result<CMatrix> {
        if self.punctures.iter().any(|p| p.matches_point(z)) {
            return Err(Error::EvaluationAtPole { point: z });
        }
        let mut m = CMatrix::zeros(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                m[(i, j)] = self.entry(i, j).eval(z)?;
            }
        }
        Ok(m)
    }

    /// Entrywise derivative values A'(z); errors at declared poles.
    pub fn evaluate_derivative(&self, z: C64) -> Result<CMatrix> {
        if self.punctures.iter().any(|p| p.matches_point(z)) {
            return Err(Error::EvaluationAtPole { point: z });
        }
        let mut m = CMatrix::zeros(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                m[(i, j)] = self.entry(i, j).derivative()?.eval(z)?;
            }
        }
        Ok(m)
    }

    /// Coefficient of (z−p)⁻¹ (or the chart equivalent at ∞), entrywise.
    pub fn residue(&self, pole: &Puncture) -> Result<CMatrix> {
        if !self.declared(pole) {
            return Err(Error::UndeclaredPole);
        }
        let mut m = CMatrix::zeros(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                m[(i, j)] = match pole {
                    Puncture::Finite(p) => self.entry(i, j).residue_at(*p)?,
                    Puncture::Infinity => self.entry(i, j).infinity_form_residue()?,
                };
            }
        }
        Ok(m)
    }

    /// Maximum pole order over the entries at the given puncture.
    pub fn pole_order(&self, pole: &Puncture) -> Result<usize> {
        if !self.declared(pole) {
            return Err(Error::UndeclaredPole);
        }
        let mut order = 0;
        for e in &self.entries {
            let m = match pole {
                Puncture::Finite(p) => e.pole_order_at(*p),
                Puncture::Infinity => e.infinity_form_pole_order()?,
            };
            order = order.max(m);
        }
        Ok(order)
    }

    /// Exact nullity check: tr A(z)² as a rational function. The residual
    /// is judged against the coefficient scale of the summed products, so
    /// structured cancellations that leave only roundoff count as zero.
    pub fn is_null_form(&self) -> Result<NullCheck> {
        let mut s = RationalFunction::zero();
        let mut term_scale = 0.0f64;
        for i in 0..self.n {
            for j in 0..self.n {
                let prod = self.entry(i, j).mul(self.entry(j, i))?;
                term_scale = term_scale.max(prod.numerator().max_mag());
                s = s.add(&prod)?;
            }
        }
        let is_null =
            s.is_zero() || s.numerator().max_mag() <= 1e-9 * term_scale.max(1e-300);
        Ok(NullCheck { is_null, trace_square: s })
    }

    /// Pushes the whole form to the chart w = 1/z. Punctures map as
    /// p ↦ 1/p, 0 ↦ ∞, ∞ ↦ 0; the designation is preserved.
    pub fn infinity_chart(&self) -> Result<Self> {
        let entries: Vec<_> =
            self.entries.iter().map(|e| e.infinity_chart_form()).collect::<Result<_>>()?;
        let punctures = self
            .punctures
            .iter()
            .map(|p| match p {
                Puncture::Infinity => Puncture::Finite(c64(0.0, 0.0)),
                Puncture::Finite(z) if z.norm() <= PUNCTURE_MATCH_TOL => Puncture::Infinity,
                Puncture::Finite(z) => Puncture::Finite(z.inv()),
            })
            .collect();
        MeromorphicMatrixForm::new(self.n, entries, punctures, self.designation)
    }
}

/// Assembles Â = Σ α̂_j e_j from Weierstrass data, with
/// (α̂₁, α̂₂, α̂_{2+k}) = ((1−⟨g,g⟩)ω̂, i(1+⟨g,g⟩)ω̂, 2g_k ω̂).
/// The output must pass the nullity check; a failure signals a
/// frame/inner-product inconsistency and is an error.
pub fn weierstrass_to_form(data: &WeierstrassData) -> Result<MeromorphicMatrixForm> {
    let comps = weierstrass_components(&data.g, &data.omega)?;
    if data.frame.len() != comps.len() {
        return Err(Error::FrameSizeMismatch { expected: comps.len(), found: data.frame.len() });
    }
    let n = data.frame.dim();
    let mut entries = vec![RationalFunction::zero(); n * n];
    for (alpha, e) in comps.iter().zip(data.frame.members().iter()) {
        for i in 0..n {
            for j in 0..n {
                let w = e[(i, j)];
                if w.norm() > 0.0 {
                    entries[i * n + j] = entries[i * n + j].add(&alpha.scale(w))?;
                }
            }
        }
    }
    let form = MeromorphicMatrixForm::with_auto_punctures(n, entries, Designation::Left)?;
    let nc = form.is_null_form()?;
    if !nc.is_null {
        return Err(Error::NullityViolated { residual_norm: nc.residual_numerator().max_mag() });
    }
    Ok(form)
}

/// The scalar component 1-forms of Weierstrass data (before the frame).
pub fn weierstrass_components(
    g: &[RationalFunction<C64>],
    omega: &RationalFunction<C64>,
) -> Result<Vec<RationalFunction<C64>>> {
    let mut gg = RationalFunction::zero();
    for gk in g {
        gg = gg.add(&gk.mul(gk)?)?;
    }
    let one = RationalFunction::one();
    let mut comps = Vec::with_capacity(g.len() + 2);
    comps.push(one.sub(&gg)?.mul(omega)?);
    comps.push(one.add(&gg)?.mul(omega)?.scale(c64(0.0, 1.0)));
    for gk in g {
        comps.push(gk.mul(omega)?.scale(c64(2.0, 0.0)));
    }
    Ok(comps)
}

/// α_F = F⁻¹dF for the unipotent upper-triangular F with entries
/// (1,2) = a, (1,3) = b, (2,3) = c: strictly upper triangular, hence null.
pub fn nilpotent_example_form(
    a: &RationalFunction<C64>,
    b: &RationalFunction<C64>,
    c: &RationalFunction<C64>,
) -> Result<MeromorphicMatrixForm> {
    let da = a.derivative()?;
    let db = b.derivative()?;
    let dc = c.derivative()?;
    let upper = db.sub(&a.mul(&dc)?)?;
    let zero = RationalFunction::zero;
    let entries = vec![zero(), da, upper, zero(), zero(), dc, zero(), zero(), zero()];
    MeromorphicMatrixForm::with_auto_punctures(3, entries, Designation::Left)
}

/// Right-invariant form dF·F⁻¹ of the same unipotent family; differs from
/// the left form only in the (1,3) entry (db − c·da).
pub fn nilpotent_example_dual_form(
    a: &RationalFunction<C64>,
    b: &RationalFunction<C64>,
    c: &RationalFunction<C64>,
) -> Result<MeromorphicMatrixForm> {
    let da = a.derivative()?;
    let db = b.derivative()?;
    let dc = c.derivative()?;
    let upper = db.sub(&c.mul(&da)?)?;
    let zero = RationalFunction::zero;
    let entries = vec![zero(), da, upper, zero(), zero(), dc, zero(), zero(), zero()];
    MeromorphicMatrixForm::with_auto_punctures(3, entries, Designation::Right)
}

/// Distinct denominator roots over all entries, plus ∞ when needed,
/// in a deterministic order.
fn derive_punctures(entries: &[RationalFunction<C64>]) -> Result<Vec<Puncture>> {
    let mut roots: Vec<C64> = Vec::new();
    let mut needs_infinity = false;
    for e in entries {
        if e.is_zero() {
            continue;
        }
        if e.denominator().degree() > 0 {
            // Square-free part first: simultaneous iteration loses accuracy
            // on multiple roots, and denominators here routinely carry them.
            let den = e.denominator();
            let g = den.gcd(&den.derivative())?;
            let (square_free, _) = den.div_rem(&g)?;
            for r in complex_roots(square_free.coeffs()) {
                let dup = roots.iter().any(|q| (q - r).norm() <= 1e-7 * (1.0 + r.norm()));
                if !dup {
                    roots.push(r);
                }
            }
        }
        if e.infinity_form_pole_order()? > 0 {
            needs_infinity = true;
        }
    }
    roots.sort_by(|a, b| a.re.partial_cmp(&b.re).unwrap().then(a.im.partial_cmp(&b.im).unwrap()));
    // Snap near-integer roots found numerically.
    let mut punctures: Vec<Puncture> = roots
        .into_iter()
        .map(|r| {
            let re = if (r.re - r.re.round()).abs() < 1e-9 { r.re.round() } else { r.re };
            let im = if r.im.abs() < 1e-9 { 0.0 } else { r.im };
            Puncture::Finite(c64(re, im))
        })
        .collect();
    if needs_infinity {
        punctures.push(Puncture::Infinity);
    }
    Ok(punctures)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(re: &[f64]) -> Polynomial<C64> {
        Polynomial::new(re.iter().map(|&x| c64(x, 0.0)).collect())
    }

    fn rat(num: &[f64], den: &[f64]) -> RationalFunction<C64> {
        RationalFunction::new(poly(num), poly(den)).unwrap()
    }

    /// diag(1,-1,0)/z with punctures {0, ∞}.
    fn diag_over_z() -> MeromorphicMatrixForm {
        let inv_z = rat(&[1.0], &[0.0, 1.0]);
        let mut entries = vec![RationalFunction::zero(); 9];
        entries[0] = inv_z.clone();
        entries[4] = inv_z.neg();
        MeromorphicMatrixForm::new(
            3,
            entries,
            vec![Puncture::Finite(c64(0.0, 0.0)), Puncture::Infinity],
            Designation::Left,
        )
        .unwrap()
    }

    #[test]
    fn evaluate_zero_and_diagonal_forms() {
        let zero = MeromorphicMatrixForm::new(
            2,
            vec![RationalFunction::zero(); 4],
            vec![],
            Designation::Left,
        )
        .unwrap();
        assert!(zero.evaluate(c64(0.3, 1.0)).unwrap().max_abs() == 0.0);

        let d = diag_over_z();
        let m = d.evaluate(c64(2.0, 0.0)).unwrap();
        assert!((m[(0, 0)] - c64(0.5, 0.0)).norm() < 1e-14);
        assert!((m[(1, 1)] + c64(0.5, 0.0)).norm() < 1e-14);
        assert!(m[(2, 2)].norm() < 1e-14);
        assert!(matches!(d.evaluate(c64(0.0, 0.0)), Err(Error::EvaluationAtPole { .. })));
    }

    #[test]
    fn residue_of_simple_pole_form() {
        // (R/z)dz has residue R at 0
        let d = diag_over_z();
        let r = d.residue(&Puncture::Finite(c64(0.0, 0.0))).unwrap();
        assert!((r[(0, 0)] - c64(1.0, 0.0)).norm() < 1e-14);
        assert!((r[(1, 1)] + c64(1.0, 0.0)).norm() < 1e-14);
        assert!(matches!(
            d.residue(&Puncture::Finite(c64(3.0, 0.0))),
            Err(Error::UndeclaredPole)
        ));
    }

    #[test]
    fn double_pole_without_simple_part_has_zero_residue() {
        // diag(1,-1)/z² dz
        let f = rat(&[1.0], &[0.0, 0.0, 1.0]);
        let entries = vec![f.clone(), RationalFunction::zero(), RationalFunction::zero(), f.neg()];
        let form = MeromorphicMatrixForm::new(
            2,
            entries,
            vec![Puncture::Finite(c64(0.0, 0.0))],
            Designation::Left,
        )
        .unwrap();
        assert!(form.residue(&Puncture::Finite(c64(0.0, 0.0))).unwrap().max_abs() < 1e-14);
        assert_eq!(form.pole_order(&Puncture::Finite(c64(0.0, 0.0))).unwrap(), 2);
    }

    #[test]
    fn nullity_check_diagonal_counterexample() {
        let d = diag_over_z();
        let nc = d.is_null_form().unwrap();
        assert!(!nc.is_null);
        // tr A² = 2/z²: numerator 2, denominator z²
        assert_eq!(nc.trace_square.denominator().degree(), 2);
        assert!((nc.residual_numerator().coeff(0) - c64(2.0, 0.0)).norm() < 1e-12);

        let zero = MeromorphicMatrixForm::new(
            2,
            vec![RationalFunction::zero(); 4],
            vec![],
            Designation::Left,
        )
        .unwrap();
        assert!(zero.is_null_form().unwrap().is_null);
    }

    #[test]
    fn trace_check_rejects_nonzero_trace() {
        let one = RationalFunction::one();
        let entries = vec![one.clone(), RationalFunction::zero(), RationalFunction::zero(), one];
        assert!(matches!(
            MeromorphicMatrixForm::new(2, entries, vec![Puncture::Infinity], Designation::Left),
            Err(Error::TraceNotZero { .. })
        ));
    }

    #[test]
    fn coverage_rejects_undeclared_pole() {
        let inv_z = rat(&[1.0], &[0.0, 1.0]);
        let entries =
            vec![inv_z.clone(), RationalFunction::zero(), RationalFunction::zero(), inv_z.neg()];
        assert!(matches!(
            MeromorphicMatrixForm::new(2, entries, vec![Puncture::Infinity], Designation::Left),
            Err(Error::UndeclaredPoleInEntry { .. })
        ));
    }

    #[test]
    fn plane_weierstrass_data_is_null_with_h_two() {
        let data = WeierstrassData {
            g: vec![RationalFunction::zero(), RationalFunction::zero()],
            omega: RationalFunction::one(),
            frame: LieFrame::sl3_trace_frame(),
        };
        let form = weierstrass_to_form(&data).unwrap();
        assert!(form.is_null_form().unwrap().is_null);
        // Â = sqrt(2)·E13; tr(ÂÂ*) = |1|² + |i|² = 2
        let a = form.evaluate(c64(0.7, 0.2)).unwrap();
        let h = a.mul(&a.adjoint()).trace().re;
        assert!((h - 2.0).abs() < 1e-12);
        // scaling ω by a constant scales the form linearly
        let scaled = WeierstrassData {
            g: vec![RationalFunction::zero(), RationalFunction::zero()],
            omega: RationalFunction::constant(c64(3.0, 0.0)),
            frame: LieFrame::sl3_trace_frame(),
        };
        let sform = weierstrass_to_form(&scaled).unwrap();
        let sa = sform.evaluate(c64(0.7, 0.2)).unwrap();
        assert!(sa.sub(&a.scale(c64(3.0, 0.0))).max_abs() < 1e-12);
    }

    #[test]
    fn nilpotent_form_cases() {
        let z = RationalFunction::variable();
        let zero = RationalFunction::zero();
        let one = RationalFunction::one();

        // a = b = c = 0 -> zero form
        let f0 = nilpotent_example_form(&zero, &zero, &zero).unwrap();
        assert!(f0.entries().iter().all(|e| e.is_zero()));

        // a = z, b = c = 0 -> E12 dz
        let f1 = nilpotent_example_form(&z, &zero, &zero).unwrap();
        let m = f1.evaluate(c64(5.0, 1.0)).unwrap();
        assert!(m.sub(&CMatrix::elementary(3, 0, 1)).max_abs() < 1e-14);

        // a = z, b = 1/z, c = 1 -> (1,2) = dz, (2,3) = 0, (1,3) = -z⁻² dz
        let inv_z = rat(&[1.0], &[0.0, 1.0]);
        let f2 = nilpotent_example_form(&z, &inv_z, &one).unwrap();
        assert!(f2.is_null_form().unwrap().is_null);
        let m = f2.evaluate(c64(2.0, 0.0)).unwrap();
        assert!((m[(0, 1)] - c64(1.0, 0.0)).norm() < 1e-14);
        assert!(m[(1, 2)].norm() < 1e-14);
        assert!((m[(0, 2)] + c64(0.25, 0.0)).norm() < 1e-14);
        // auto-derived punctures are {0, ∞}
        assert_eq!(f2.finite_punctures().len(), 1);
        assert!(f2.finite_punctures()[0].norm() < 1e-12);
        assert!(f2.has_infinity_puncture());
        assert_eq!(f2.pole_order(&Puncture::Finite(c64(0.0, 0.0))).unwrap(), 2);
        assert_eq!(f2.pole_order(&Puncture::Infinity).unwrap(), 2);
    }

    #[test]
    fn pole_order_invariant_under_inversion_chart() {
        // pole at 2 of order 3 maps to pole at 1/2 of the same order
        let den = poly(&[-2.0, 1.0]); // z - 2
        let den3 = den.mul(&den).unwrap().mul(&den).unwrap();
        let f = RationalFunction::new(poly(&[1.0]), den3).unwrap();
        let entries = vec![f.clone(), RationalFunction::zero(), RationalFunction::zero(), f.neg()];
        let form =
            MeromorphicMatrixForm::with_auto_punctures(2, entries, Designation::Left).unwrap();
        let p = Puncture::Finite(c64(2.0, 0.0));
        let order = form.pole_order(&p).unwrap();
        let inverted = form.infinity_chart().unwrap();
        let q = Puncture::Finite(c64(0.5, 0.0));
        assert_eq!(inverted.pole_order(&q).unwrap(), order);
    }

    #[test]
    fn residue_theorem_on_declared_punctures() {
        // entries with poles at 0 and 1, trace balanced
        let p0 = rat(&[2.0, 3.0], &[0.0, -1.0, 1.0]); // (3z+2)/(z(z-1))
        let p1 = rat(&[1.0], &[0.0, 0.0, 1.0]); // 1/z²
        let entries = vec![p0.clone(), p1, RationalFunction::zero(), p0.neg()];
        let form =
            MeromorphicMatrixForm::with_auto_punctures(2, entries, Designation::Left).unwrap();
        let mut total = CMatrix::zeros(2);
        for p in form.punctures().to_vec() {
            total = total.add(&form.residue(&p).unwrap());
        }
        assert!(total.max_abs() < 1e-10);
    }
}
