use super::*;
use crate::awcore::standard_params;
use num_complex::Complex64;
use std::f64::consts::PI;

const EPS: f64 = 1e-12;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn p1_spec() -> MeasureSpec {
    MeasureSpec::new(standard_params(), 256, -40, EPS)
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1e-300)
}

#[test]
fn delta_weight_reference_values() {
    let p = standard_params();
    // (x^2;q)_inf vanishes at x = +-1 for a generic tuple.
    let gen = AWParams::new(0.4, 0.8, 0.6, 0.5, 2.3, -2.0).unwrap();
    assert_eq!(weight_delta(&gen, c(1.0, 0.0), EPS).unwrap().value.norm(), 0.0);
    assert_eq!(weight_delta(&gen, c(-1.0, 0.0), EPS).unwrap().value.norm(), 0.0);
    // The standard tuple has d q = 1 exactly, which makes x = +1 a
    // removable 0/0 of this formula; it is reported as a pole rather than
    // silently continued.
    assert!(matches!(
        weight_delta(&p, c(1.0, 0.0), EPS),
        Err(AwError::PoleAtX(_))
    ));
    assert_eq!(weight_delta(&p, c(-1.0, 0.0), EPS).unwrap().value.norm(), 0.0);
    // Symmetric under inversion.
    let x = c(0.3, 0.9);
    let a = weight_delta(&p, x, EPS).unwrap().value;
    let b = weight_delta(&p, x.finv(), EPS).unwrap().value;
    assert!((a - b).norm() < 1e-12 * a.norm());
    // Positive real on the circle; digits minted by the wide oracle.
    let v = weight_delta(&p, c(0.5, 3f64.sqrt() / 2.0), EPS).unwrap().value;
    assert!(v.im.abs() < 1e-13 * v.re);
    assert!(rel(v.re, 13.870_571_639_483_817) < 1e-12);
}

#[test]
fn w_weight_relates_to_delta_by_quasi_constant() {
    let p = standard_params();
    let q = p.qbase();
    for x in [Complex64::from_polar(1.0, PI / 7.0), c(0.7, 0.0), c(-3.1, 0.0)] {
        let w = weight_w(&p, x, EPS).unwrap();
        let dl = weight_delta(&p, x, EPS).unwrap();
        let num = crate::qseries::theta(p.d * x, q, EPS)
            .unwrap()
            .mul(&crate::qseries::theta(c(p.d, 0.0) / x, q, EPS).unwrap());
        let den = crate::qseries::theta(p.d * p.t * x, q, EPS)
            .unwrap()
            .mul(&crate::qseries::theta(c(p.d * p.t, 0.0) / x, q, EPS).unwrap());
        let rhs = dl.mul(&num.div(&den));
        assert!(
            (w.value - rhs.value).norm() < 1e-11 * w.value.norm(),
            "weight relation residual at {x}"
        );
    }
    // Real positive on the upper half circle.
    let v = weight_w(&p, c(0.0, 1.0), EPS).unwrap().value;
    assert!(v.re > 0.0 && v.im.abs() < 1e-13 * v.re);
}

#[test]
fn constants_reference_digits() {
    let p = standard_params();
    // Minted by the wide-precision oracle.
    assert!(rel(const_k(&p, EPS).unwrap().value.re, 9.747_115_400_619_201) < 1e-12);
    assert!(rel(const_c0(&p, EPS).unwrap().value.re, 12.268_965_647_432_118) < 1e-12);
    assert!(rel(const_m(&p, EPS).unwrap().value.re, 0.021_756_518_139_706) < 1e-10);
    assert!(
        rel(const_aw_integral(&p, EPS).unwrap().value.re, -9_884.376_915_230_61) < 1e-12
    );
}

#[test]
fn kmc_constant_identity() {
    // K-dual * M / c0-dual = 1.
    let p = standard_params();
    let pd = p.dual();
    let kt = const_k(&pd, EPS).unwrap().value.re;
    let m = const_m(&p, EPS).unwrap().value.re;
    let c0t = const_c0(&pd, EPS).unwrap().value.re;
    assert!((kt * m / c0t - 1.0).abs() < 1e-10);
}

#[test]
fn plus_weights_outside_support_are_rejected() {
    let p = standard_params();
    // a < 1: the plus grid never leaves the unit disc.
    for k in [0, 1, 5] {
        assert!(matches!(
            discrete_weight_plus(&p, k, EPS),
            Err(AwError::NotInSupport { .. })
        ));
    }
    // The dual tuple has its base point outside the disc.
    let w = discrete_weight_plus(&p.dual(), 0, EPS).unwrap();
    assert!(rel(w.value.re, 0.348_921_671_891_336) < 1e-11);
    assert!(w.value.re > 0.0);
}

#[test]
fn minus_weights_reference_values() {
    let p = standard_params();
    // Head of the unbounded support at P1 sits at k = 1 (x = -2).
    assert_eq!(support_minus_head(&p), 1);
    let w = discrete_weight_minus(&p, 1, EPS).unwrap();
    assert!(rel(w.value.re, 0.003_163_141_861_510) < 1e-11);
    assert!(w.value.re > 0.0);
    let w0 = discrete_weight_minus(&p, 0, EPS).unwrap();
    assert!(rel(w0.value.re, 0.005_482_779_226_618) < 1e-11);
    // x = d t q^2 = -0.8 lies inside the disc.
    assert!(matches!(
        discrete_weight_minus(&p, 2, EPS),
        Err(AwError::NotInSupport { .. })
    ));
}

#[test]
fn minus_weights_follow_geometric_asymptotics() {
    let p = standard_params();
    let m = const_m(&p, EPS).unwrap().value.re;
    let at = p.a_tilde();
    for (k, tol) in [(15i32, 1e-3), (20, 1e-6), (25, 1e-8)] {
        let w = discrete_weight_minus(&p, -(k as i64), EPS).unwrap().value.re;
        let ratio = 2.0 * w * at.powi(2 * k) / m;
        assert!(
            (ratio - 1.0).abs() < tol,
            "asymptotic ratio {ratio} at k = {k}"
        );
    }
}

#[test]
fn minus_tail_ratio_approaches_the_geometric_law() {
    // Beyond k ~ 15 consecutive masses decay like 1/at^2 to within ten
    // percent, which is what the truncation bookkeeping relies on.
    let p = standard_params();
    let law = p.a_tilde().powi(-2);
    let mut prev = discrete_weight_minus(&p, -14, EPS).unwrap().value.re;
    for k in 15..=30i64 {
        let cur = discrete_weight_minus(&p, -k, EPS).unwrap().value.re;
        let ratio = cur / prev;
        assert!(
            (ratio / law - 1.0).abs() < 0.1,
            "tail ratio {ratio} vs law {law} at k = {k}"
        );
        prev = cur;
    }
}

#[test]
fn measure_tabulation_is_positive_and_converged() {
    let spec = p1_spec();
    let meas = Measure::build(&spec).unwrap();
    assert!(meas.plus.is_empty());
    assert_eq!(meas.minus.first().unwrap().k, 1);
    assert!((meas.minus.first().unwrap().x - -2.0).abs() < 1e-14);
    assert_eq!(meas.minus.last().unwrap().k, spec.k_min);
    assert!(meas.density.iter().all(|&d| d >= 0.0));
    assert!(meas.density_imag < 1e-12);
    assert!(meas.minus.iter().all(|a| a.mass > 0.0));

    // Spectral quadrature: doubling the rule changes the circle integral of
    // a smooth even periodic function by next to nothing (the density is
    // smooth on the closed circle and vanishes at the endpoints).
    let mut fine = spec;
    fine.quad_points = 512;
    let meas2 = Measure::build(&fine).unwrap();
    let mut f = TestFunction::zero();
    f.circle = Some(std::sync::Arc::new(|th: f64| (1.0 + th.cos()).powi(2)));
    let a = integrate_nu(&f, &meas).unwrap();
    let b = integrate_nu(&f, &meas2).unwrap();
    assert!((a - b).abs() < 1e-10 * a.abs(), "quadrature drift {}", (a - b).abs());
}

#[test]
fn integrate_nu_reference_cases() {
    let meas = Measure::build(&p1_spec()).unwrap();
    // Zero function.
    assert_eq!(integrate_nu(&TestFunction::zero(), &meas).unwrap(), 0.0);
    // Single atom picks up its pair mass 2 nu({x}).
    let ind = TestFunction::atom_minus(1);
    let v = integrate_nu(&ind, &meas).unwrap();
    assert!(rel(v, 2.0 * 0.003_163_141_861_510) < 1e-11);
    // Support below the tabulated range is refused.
    let deep = TestFunction::atom_minus(-60);
    assert!(matches!(
        integrate_nu(&deep, &meas),
        Err(AwError::NotInSupport { .. })
    ));
}

#[test]
fn total_mass_is_stable_under_refinement() {
    // The constant function is integrable (the dual base point lies outside
    // the unit disc, so the masses decay geometrically).
    let spec = p1_spec();
    let meas = Measure::build(&spec).unwrap();
    let total = meas.integrate_with(|_| 1.0, |_| 1.0);
    let mut fine = spec;
    fine.quad_points = 512;
    fine.k_min = -50;
    let meas2 = Measure::build(&fine).unwrap();
    let total2 = meas2.integrate_with(|_| 1.0, |_| 1.0);
    assert!(total.is_finite() && total > 0.0);
    assert!((total - total2).abs() < 1e-8, "drift {}", (total - total2).abs());
}

#[test]
fn inner_product_reference_cases() {
    let meas = Measure::build(&p1_spec()).unwrap();
    let f = TestFunction::atoms_minus(&[(1, 1.0), (0, -2.0)]);
    let g = TestFunction::atom_minus(0);
    // Distinct atoms are orthogonal.
    let d1 = TestFunction::atom_minus(1);
    assert_eq!(inner_product(&d1, &g, &meas).unwrap(), 0.0);
    // Positivity.
    assert!(inner_product(&f, &f, &meas).unwrap() > 0.0);
    // Pairing with an indicator reads off one coefficient times the mass.
    let v = inner_product(&f, &g, &meas).unwrap();
    assert!(rel(v, -2.0 * 2.0 * 0.005_482_779_226_618) < 1e-11);
}

#[test]
fn residue_of_circle_weight_matches_contour_integral() {
    // Small-circle contour around the pole of Delta(y)/y at y = a q^k, for
    // a tuple with a > 1 (the dual of the classical regime is not needed;
    // any admissible-shaped tuple with a pole outside the disc works).
    let p = AWParams::new(0.4, 1.3, 0.4, 0.3, 1.9, -1.0).unwrap();
    let k = 0u32;
    let formula = delta_residue(&p, k, EPS).unwrap().value.re;
    let x0 = p.a * p.q.powi(k as i32);
    let r = 1e-3;
    let n = 256;
    let mut acc = Complex64::new(0.0, 0.0);
    for j in 0..n {
        let th = 2.0 * PI * j as f64 / n as f64;
        let y = x0 + Complex64::from_polar(r, th);
        let w = weight_delta(&p, y, EPS).unwrap().value / y;
        // Res = (1/2 pi i) closed integral = mean over the circle of w (y - x0).
        acc += w * Complex64::from_polar(r, th);
    }
    let contour = (acc / n as f64).re;
    assert!(
        rel(contour, formula) < 1e-5,
        "residue mismatch: contour {contour} vs formula {formula}"
    );
}

#[test]
fn csv_and_json_dumps_have_expected_shape() {
    let mut spec = p1_spec();
    spec.quad_points = 16;
    spec.k_min = -5;
    let meas = Measure::build(&spec).unwrap();
    let d = density_csv(&meas);
    assert!(d.starts_with("theta,density\n"));
    assert_eq!(d.lines().count(), 1 + 17);
    let a = atoms_csv(&meas);
    assert!(a.starts_with("k,x,weight\n"));
    assert_eq!(a.lines().count(), 1 + 7);
    let j = weights_json(&meas);
    assert_eq!(j["truncation"]["minus_head"], 1);
    assert!(j["atoms"].as_array().unwrap().len() == 7);
    // The measure spec round-trips through serde.
    let s = serde_json::to_string(&meas.spec).unwrap();
    let back: MeasureSpec = serde_json::from_str(&s).unwrap();
    assert_eq!(back.k_min, spec.k_min);
    assert_eq!(back.params, spec.params);
}

#[test]
fn faults_scale_the_tabulated_masses() {
    let mut spec = p1_spec();
    spec.quad_points = 16;
    spec.k_min = -5;
    let base = Measure::build(&spec).unwrap();
    spec.faults.weight_minus = 1.01;
    let bumped = Measure::build(&spec).unwrap();
    let r = bumped.minus[0].mass / base.minus[0].mass;
    assert!((r - 1.01).abs() < 1e-12);
    assert_eq!(bumped.density[3], base.density[3]);
}
