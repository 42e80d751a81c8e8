use nullholo_core::perturb::*;
use nullholo_core::ode::Tolerances;
use nullholo_core::c64;

fn main() {
    let mut p = FamilyParams::base();
    p.a[3] += c64(0.0, 0.5); // a4 + 0.5i
    let form = family_form(&p).unwrap();
    for i in 0..3 {
        for j in 0..3 {
            let e = form.entry(i, j);
            if !e.is_zero() {
                println!("entry ({i},{j}): num deg {} den deg {} den roots-ish {:?}",
                    e.numerator().degree(), e.denominator().degree(),
                    nullholo_core::cmatrix::complex_roots(e.denominator().coeffs()));
            }
        }
    }
    // evaluate along loop1 circle
    let (l1, _, _) = family_loops().unwrap();
    let mut worst = 0.0f64;
    for seg in l1.segments() {
        for k in 0..=16 {
            let z = seg.point(k as f64 / 16.0);
            let a = form.evaluate(z).unwrap();
            if a.max_abs() > worst { worst = a.max_abs(); }
        }
    }
    println!("max |A| on loop1: {worst}");
    let tol = Tolerances { ode_rel: 1e-12, ode_abs: 1e-14, ..Tolerances::default() };
    match loop_deviation(&form, 1e-3, &l1, &tol) {
        Ok(u) => println!("U norm {}", u.frobenius_norm()),
        Err(e) => println!("ERR {e:?}"),
    }
}
