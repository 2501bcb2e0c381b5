//! Wide-precision cross-checks of the f64 kernels.
//!
//! Everything here re-derives values through `qseries::wide`, a software
//! arbitrary-precision path that shares no summation or truncation logic
//! with the fast kernels. Agreement certifies the fast path's truncation
//! rules and error bounds. Run with `--nocapture` to read the reference
//! digits; the frozen constants in the unit tests were taken from this
//! output.

use awft_core::awcore::{self, standard_params};
use awft_core::measure;
use awft_core::qseries::wide::{wphi, wqpoch_finite, wqpoch_inf, wqpoch_int, wtheta, ww87, Wide, WideComplex};
use awft_core::qseries::{self, QBase};
use num_complex::Complex64;

fn q4() -> QBase {
    QBase::new(0.4).unwrap()
}

fn rc(x: f64) -> WideComplex {
    WideComplex::from_f64(x, 0.0)
}

fn lift(z: Complex64) -> WideComplex {
    WideComplex::from_f64(z.re, z.im)
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1e-300)
}

fn relc(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / b.norm().max(1e-300)
}

/// Wide copy of a parameter tuple, lifted exactly from the f64 values.
#[derive(Clone)]
struct Wp {
    q: Wide,
    a: Wide,
    b: Wide,
    c: Wide,
    d: Wide,
    t: Wide,
}

impl Wp {
    fn p1() -> Wp {
        let p = standard_params();
        Wp {
            q: Wide::from_f64(p.q),
            a: Wide::from_f64(p.a),
            b: Wide::from_f64(p.b),
            c: Wide::from_f64(p.c),
            d: Wide::from_f64(p.d),
            t: Wide::from_f64(p.t),
        }
    }

    fn a_tilde(&self) -> Wide {
        self.a.mul(&self.b).mul(&self.c).mul(&self.d).div(&self.q).sqrt()
    }

    fn dual(&self) -> Wp {
        let at = self.a_tilde();
        Wp {
            q: self.q.clone(),
            a: at.clone(),
            b: self.a.mul(&self.b).div(&at),
            c: self.a.mul(&self.c).div(&at),
            d: self.a.mul(&self.d).div(&at),
            t: Wide::one().div(&self.q.mul(&self.a).mul(&self.d).mul(&self.t)),
        }
    }
}

fn wprod(params: &[WideComplex], q: &Wide) -> WideComplex {
    let mut acc = WideComplex::one();
    for p in params {
        acc = acc.mul(&wqpoch_inf(p, q));
    }
    acc
}

fn wtheta_r(x: &Wide, q: &Wide) -> Wide {
    wtheta(&WideComplex::real(x.clone()), q).re
}

fn w_const_k(p: &Wp) -> Wide {
    let prod = wprod(
        &[
            rc(0.0).add(&WideComplex::real(p.a.mul(&p.b))),
            WideComplex::real(p.a.mul(&p.c)),
            WideComplex::real(p.b.mul(&p.c)),
            WideComplex::real(p.q.mul(&p.a).div(&p.d)),
            WideComplex::real(p.q.clone()),
        ],
        &p.q,
    );
    let dt = p.d.mul(&p.t);
    let rad = wtheta_r(&p.q.mul(&p.t), &p.q)
        .mul(&wtheta_r(&p.a.mul(&dt), &p.q))
        .mul(&wtheta_r(&p.b.mul(&dt), &p.q))
        .mul(&wtheta_r(&p.c.mul(&dt), &p.q))
        .div(
            &p.q.mul(&p.a).mul(&p.b).mul(&p.c).mul(&p.d).mul(&p.t).mul(&p.t),
        );
    prod.re.mul(&rad.sqrt())
}

fn w_const_c0(p: &Wp) -> Wide {
    let prod = wprod(
        &[
            WideComplex::real(p.a.mul(&p.b)),
            WideComplex::real(p.a.mul(&p.c)),
            WideComplex::real(p.b.mul(&p.c)),
            WideComplex::real(p.q.mul(&p.a).div(&p.d)),
        ],
        &p.q,
    );
    let f = prod.re.mul(&wtheta_r(&p.a.mul(&p.d).mul(&p.t), &p.q));
    f.mul(&f).div(&p.a.mul(&p.a))
}

fn w_const_m(p: &Wp) -> Wide {
    let dt = p.d.mul(&p.t);
    let qq = wqpoch_inf(&WideComplex::real(p.q.clone()), &p.q).re;
    wtheta_r(&p.q.mul(&p.t), &p.q)
        .mul(&w_const_k(p))
        .div(&qq.mul(&qq))
        .div(&wtheta_r(&p.a.mul(&dt), &p.q))
        .div(&wtheta_r(&p.b.mul(&dt), &p.q))
        .div(&wtheta_r(&p.c.mul(&dt), &p.q))
}

fn w_const_aw_integral(p: &Wp) -> Wide {
    let num = wqpoch_inf(
        &WideComplex::real(p.a.mul(&p.b).mul(&p.c).mul(&p.d)),
        &p.q,
    )
    .re;
    let den = wprod(
        &[
            WideComplex::real(p.q.clone()),
            WideComplex::real(p.a.mul(&p.b)),
            WideComplex::real(p.a.mul(&p.c)),
            WideComplex::real(p.a.mul(&p.d)),
            WideComplex::real(p.b.mul(&p.c)),
            WideComplex::real(p.b.mul(&p.d)),
            WideComplex::real(p.c.mul(&p.d)),
        ],
        &p.q,
    );
    num.mul(&Wide::from_i64(2)).div(&den.re)
}

fn w_weight_minus(p: &Wp, k: i64) -> Wide {
    let dt = p.d.mul(&p.t);
    let num = wprod(
        &[
            WideComplex::real(p.q.mul(&p.t)),
            WideComplex::real(p.q.div(&p.d.mul(&p.d).mul(&p.t))),
        ],
        &p.q,
    )
    .re;
    let den = wprod(
        &[
            WideComplex::real(p.q.clone()),
            WideComplex::real(p.q.clone()),
            WideComplex::real(p.a.div(&dt)),
            WideComplex::real(p.b.div(&dt)),
            WideComplex::real(p.c.div(&dt)),
            WideComplex::real(p.a.mul(&dt)),
            WideComplex::real(p.b.mul(&dt)),
            WideComplex::real(p.c.mul(&dt)),
        ],
        &p.q,
    )
    .re;
    let mut fin = WideComplex::one();
    for v in [
        Wide::one().div(&p.t),
        p.a.div(&dt),
        p.b.div(&dt),
        p.c.div(&dt),
    ] {
        fin = fin.mul(&wqpoch_int(&WideComplex::real(v), &p.q, -k));
    }
    for v in [
        p.q.div(&p.a.mul(&dt)),
        p.q.div(&p.b.mul(&dt)),
        p.q.div(&p.c.mul(&dt)),
        p.q.div(&p.d.mul(&p.d).mul(&p.t)),
    ] {
        fin = fin.div(&wqpoch_int(&WideComplex::real(v), &p.q, -k));
    }
    let q2k = p.q.powi(2 * k);
    let vwp = Wide::one().sub(&Wide::one().div(&p.d.mul(&p.d).mul(&p.t).mul(&p.t).mul(&q2k)));
    let at2k = p.a_tilde().powi(2 * k);
    num.div(&den)
        .mul(&fin.re)
        .mul(&vwp)
        .mul(&w_const_k(p))
        .mul(&at2k)
        .div(&Wide::from_i64(2))
}

fn w_weight_plus(p: &Wp, k: i64) -> Wide {
    let dt = p.d.mul(&p.t);
    let num = wprod(
        &[
            WideComplex::real(p.q.mul(&p.a).div(&p.d)),
            WideComplex::real(p.q.div(&p.a.mul(&p.d))),
            WideComplex::real(Wide::one().div(&p.a.mul(&p.a))),
        ],
        &p.q,
    )
    .re;
    let den = wprod(
        &[
            WideComplex::real(p.q.clone()),
            WideComplex::real(p.a.mul(&p.b)),
            WideComplex::real(p.b.div(&p.a)),
            WideComplex::real(p.a.mul(&p.c)),
            WideComplex::real(p.c.div(&p.a)),
        ],
        &p.q,
    )
    .re
    .mul(&wtheta_r(&p.a.mul(&dt), &p.q))
    .mul(&wtheta_r(&dt.div(&p.a), &p.q));
    let mut fin = WideComplex::one();
    for v in [
        p.a.mul(&p.a),
        p.a.mul(&p.b),
        p.a.mul(&p.c),
        p.a.mul(&p.d),
    ] {
        fin = fin.mul(&wqpoch_finite(&WideComplex::real(v), &p.q, k as u32));
    }
    for v in [
        p.q.clone(),
        p.q.mul(&p.a).div(&p.b),
        p.q.mul(&p.a).div(&p.c),
        p.q.mul(&p.a).div(&p.d),
    ] {
        fin = fin.div(&wqpoch_finite(&WideComplex::real(v), &p.q, k as u32));
    }
    let a2 = p.a.mul(&p.a);
    let vwp = Wide::one()
        .sub(&a2.mul(&p.q.powi(2 * k)))
        .div(&Wide::one().sub(&a2));
    let at2k = p.a_tilde().powi(2 * k);
    num.div(&den).mul(&fin.re).mul(&vwp).mul(&w_const_k(p)).div(&at2k).div(&Wide::from_i64(2))
}

/// phi via the two-term balanced form, everything wide.
fn w_phi_two_term(p: &Wp, g: &WideComplex, x: &WideComplex) -> WideComplex {
    let pd = p.dual();
    let one = WideComplex::one();
    let at = WideComplex::real(pd.a.clone());
    let xq = WideComplex::real(p.q.clone());
    let ax = x.scale(&p.a);
    let a_over_x = WideComplex::real(p.a.clone()).div(x);
    let atg = g.scale(&pd.a);
    let at_over_g = at.div(g);
    let s1 = wphi(
        &[ax.clone(), a_over_x.clone(), atg.clone(), at_over_g.clone()],
        &[
            WideComplex::real(p.a.mul(&p.b)),
            WideComplex::real(p.a.mul(&p.c)),
            WideComplex::real(p.a.mul(&p.d)),
        ],
        &p.q,
        &xq,
    );
    let pre1 = wprod(
        &[
            WideComplex::real(p.b.mul(&p.c)),
            WideComplex::real(p.q.mul(&p.a).div(&p.d)),
            WideComplex::real(p.q.div(&p.a.mul(&p.d))),
        ],
        &p.q,
    );
    let term1 = s1.div(&pre1);

    let qxd = x.scale(&p.q.div(&p.d));
    let q_dx = WideComplex::real(p.q.div(&p.d)).div(x);
    let qg_dt = g.scale(&p.q.div(&pd.d));
    let q_dtg = WideComplex::real(p.q.div(&pd.d)).div(g);
    let s2 = wphi(
        &[qxd.clone(), q_dx.clone(), qg_dt.clone(), q_dtg.clone()],
        &[
            WideComplex::real(p.q.mul(&p.b).div(&p.d)),
            WideComplex::real(p.q.mul(&p.c).div(&p.d)),
            WideComplex::real(p.q.mul(&p.q).div(&p.a.mul(&p.d))),
        ],
        &p.q,
        &xq,
    );
    let num2 = wprod(
        &[
            ax,
            a_over_x,
            atg,
            at_over_g,
            WideComplex::real(p.q.mul(&p.b).div(&p.d)),
            WideComplex::real(p.q.mul(&p.c).div(&p.d)),
        ],
        &p.q,
    );
    let den2 = wprod(
        &[
            qxd,
            q_dx,
            qg_dt,
            q_dtg,
            WideComplex::real(p.a.mul(&p.b)),
            WideComplex::real(p.a.mul(&p.c)),
            WideComplex::real(p.b.mul(&p.c)),
            WideComplex::real(p.q.mul(&p.a).div(&p.d)),
            WideComplex::real(p.a.mul(&p.d).div(&p.q)),
        ],
        &p.q,
    );
    let _ = one;
    term1.add(&num2.div(&den2).mul(&s2))
}

/// phi via the very-well-poised form, everything wide.
fn w_phi_vwp(p: &Wp, g: &WideComplex, x: &WideComplex) -> WideComplex {
    let pd = p.dual();
    let abc = pd.a.mul(&pd.b).mul(&pd.c);
    let head = g.scale(&abc.div(&p.q));
    let z = WideComplex::real(p.q.div(&pd.d)).div(g);
    let series = ww87(
        &head,
        &[
            x.scale(&p.a),
            WideComplex::real(p.a.clone()).div(x),
            g.scale(&pd.a),
            g.scale(&pd.b),
            g.scale(&pd.c),
        ],
        &p.q,
        &z,
    );
    let num = wprod(
        &[
            x.mul(g).scale(&p.q.mul(&p.a).div(&pd.d)),
            g.div(x).scale(&p.q.mul(&p.a).div(&pd.d)),
        ],
        &p.q,
    );
    let den = wprod(
        &[
            g.scale(&abc),
            g.scale(&p.q.div(&pd.d)),
            WideComplex::real(p.q.mul(&pd.a).div(&pd.d)),
            x.scale(&p.q.div(&p.d)),
            WideComplex::real(p.q.div(&p.d)).div(x),
        ],
        &p.q,
    );
    num.div(&den).mul(&series)
}

#[test]
fn qpoch_inf_matches_wide() {
    let q = q4();
    let cases = [
        Complex64::new(0.5, 0.0),
        Complex64::new(-1.0, 0.0),
        Complex64::new(0.3, 0.9),
        Complex64::new(-7.5, 2.25),
        Complex64::new(120.0, -3.0),
    ];
    for a in cases {
        let fast = qseries::qpoch_inf(a, q, 1e-14);
        let wide = wqpoch_inf(&lift(a), &Wide::from_f64(0.4)).to_c64();
        assert!(
            relc(fast.value, wide) < 1e-13,
            "qpoch mismatch at {a}: fast {} wide {}",
            fast.value,
            wide
        );
        assert!(relc(fast.value, wide) <= fast.rel_err().max(1e-15) * 10.0);
    }
    // The classical Euler value at q = 1/2.
    let qh = QBase::new(0.5).unwrap();
    let v = qseries::qpoch_inf(Complex64::new(0.5, 0.0), qh, 1e-14);
    println!("(1/2;1/2)_inf = {:.15}", v.value.re);
    assert!(rel(v.value.re, 0.288_788_095_086_602_4) < 1e-14);
}

#[test]
fn theta_matches_wide() {
    let q = q4();
    let w4 = Wide::from_f64(0.4);
    for x in [
        Complex64::new(-1.0, 0.0),
        Complex64::new(0.3, 0.0),
        Complex64::new(1.3, 0.7),
        Complex64::new(-3.2, 0.0),
    ] {
        let fast = qseries::theta(x, q, 1e-14).unwrap();
        let wide = wtheta(&lift(x), &w4).to_c64();
        println!("theta({x}) = {:.15} + {:.15}i", wide.re, wide.im);
        assert!(relc(fast.value, wide) < 1e-13);
    }
}

#[test]
fn series_match_wide() {
    let q = q4();
    let w4 = Wide::from_f64(0.4);
    // A generic convergent 3phi2.
    let upper = [
        Complex64::new(0.7, 0.1),
        Complex64::new(-1.4, 0.0),
        Complex64::new(2.0, -0.3),
    ];
    let lower = [Complex64::new(0.55, 0.0), Complex64::new(-0.8, 0.2)];
    let z = Complex64::new(0.35, 0.2);
    let fast = qseries::phi_series(&upper, &lower, q, z, 1e-14).unwrap();
    let wide = wphi(
        &upper.iter().map(|&u| lift(u)).collect::<Vec<_>>(),
        &lower.iter().map(|&l| lift(l)).collect::<Vec<_>>(),
        &w4,
        &lift(z),
    )
    .to_c64();
    assert!(relc(fast.value, wide) < 1e-12, "phi mismatch: {} vs {wide}", fast.value);

    // A generic convergent 8W7.
    let a = Complex64::new(0.6, 0.05);
    let bcdef = [
        Complex64::new(0.9, 0.0),
        Complex64::new(-0.7, 0.1),
        Complex64::new(0.45, -0.2),
        Complex64::new(1.3, 0.0),
        Complex64::new(-0.2, 0.0),
    ];
    let z = Complex64::new(0.3, -0.25);
    let fast = qseries::w87(a, bcdef, q, z, 1e-14).unwrap();
    let wide = ww87(
        &lift(a),
        &[
            lift(bcdef[0]),
            lift(bcdef[1]),
            lift(bcdef[2]),
            lift(bcdef[3]),
            lift(bcdef[4]),
        ],
        &w4,
        &lift(z),
    )
    .to_c64();
    assert!(relc(fast.value, wide) < 1e-12, "w87 mismatch: {} vs {wide}", fast.value);
}

#[test]
fn dual_tuple_digits() {
    let p = Wp::p1();
    let pd = p.dual();
    println!(
        "dual(P1): at={:.15} bt={:.15} ct={:.15} dt={:.15} tt={:.15}",
        pd.a.to_f64(),
        pd.b.to_f64(),
        pd.c.to_f64(),
        pd.d.to_f64(),
        pd.t.to_f64()
    );
    let f = standard_params().dual();
    assert!(rel(f.a, pd.a.to_f64()) < 1e-15);
    assert!(rel(f.b, pd.b.to_f64()) < 1e-15);
    assert!(rel(f.c, pd.c.to_f64()) < 1e-15);
    assert!(rel(f.d, pd.d.to_f64()) < 1e-15);
    assert!(rel(f.t, pd.t.to_f64()) < 1e-15);
}

#[test]
fn phi_representations_agree_in_wide_and_match_fast() {
    let p1 = standard_params();
    let wp = Wp::p1();
    // Real spectral and geometric points keep the wide path trig-free.
    let g = Complex64::new(1.3, 0.0);
    let x = Complex64::new(-5.0, 0.0);
    let two = w_phi_two_term(&wp, &lift(g), &lift(x)).to_c64();
    let vwp = w_phi_vwp(&wp, &lift(g), &lift(x)).to_c64();
    println!("phi(gamma=1.3, x=-5) = {:.15} (two-term), {:.15} (vwp)", two.re, vwp.re);
    assert!(relc(two, vwp) < 1e-40, "wide representations disagree: {two} vs {vwp}");

    let fast = awcore::aw_function(&p1, g, x, 1e-12).unwrap();
    assert!(relc(fast.value, two) < 1e-12);

    // The reduction constant at the base spectral point.
    let red = wprod(
        &[
            WideComplex::real(wp.b.mul(&wp.c)),
            WideComplex::real(wp.q.mul(&wp.a).div(&wp.d)),
            WideComplex::real(wp.q.div(&wp.a.mul(&wp.d))),
        ],
        &wp.q,
    );
    let red_const = Wide::one().div(&red.re);
    println!("1/(bc,qa/d,q/ad;q)_inf = {:.15}", red_const.to_f64());
    let at = p1.dual().a;
    let fast = awcore::aw_function(&p1, Complex64::new(at, 0.0), Complex64::new(0.7, 0.0), 1e-12)
        .unwrap();
    assert!(rel(fast.value.re, red_const.to_f64()) < 1e-12);
}

#[test]
fn c_function_and_weights_match_wide() {
    let p1 = standard_params();
    let wp = Wp::p1();
    let wpd = wp.dual();

    // c(1.7) with the primal tuple replaced by the dual one (the dual
    // c-function that drives the expansion coefficients).
    let g = Complex64::new(1.7, 0.0);
    let cf = awcore::c_function(&p1, g, 1e-13).unwrap();
    let dtw = wp.d.mul(&wp.t);
    let num = wprod(
        &[
            WideComplex::real(wp.a.div(&Wide::from_f64(1.7))),
            WideComplex::real(wp.b.div(&Wide::from_f64(1.7))),
            WideComplex::real(wp.c.div(&Wide::from_f64(1.7))),
        ],
        &wp.q,
    )
    .re
    .mul(&wtheta_r(&Wide::from_f64(1.7).div(&dtw), &wp.q));
    let den = wprod(
        &[
            WideComplex::real(wp.a.mul(&wp.b)),
            WideComplex::real(wp.a.mul(&wp.c)),
            WideComplex::real(wp.b.mul(&wp.c)),
            WideComplex::real(wp.q.mul(&wp.a).div(&wp.d)),
            WideComplex::real(wp.q.mul(&Wide::from_f64(1.7)).div(&wp.d)),
            WideComplex::real(Wide::one().div(&Wide::from_f64(1.7 * 1.7))),
        ],
        &wp.q,
    )
    .re
    .mul(&wtheta_r(&wp.q.mul(&wp.a).mul(&wp.d).mul(&wp.t), &wp.q));
    let cw = num.div(&den);
    println!("c(gamma=1.7) = {:.15}", cw.to_f64());
    assert!(rel(cf.value.re, cw.to_f64()) < 1e-12);

    // Discrete masses.
    let w1 = measure::discrete_weight_minus(&p1, 1, 1e-13).unwrap();
    let ww1 = w_weight_minus(&wp, 1);
    println!("nu({{dtq^1}}) = {:.15}", ww1.to_f64());
    assert!(ww1.to_f64() > 0.0);
    assert!(rel(w1.value.re, ww1.to_f64()) < 1e-12);

    let w0 = measure::discrete_weight_minus(&p1, 0, 1e-13).unwrap();
    let ww0 = w_weight_minus(&wp, 0);
    println!("nu({{dtq^0}}) = {:.15}", ww0.to_f64());
    assert!(rel(w0.value.re, ww0.to_f64()) < 1e-12);

    let wdk = w_weight_minus(&wp, -20);
    let fdk = measure::discrete_weight_minus(&p1, -20, 1e-13).unwrap();
    assert!(rel(fdk.value.re, wdk.to_f64()) < 1e-11);

    // Dual plus-mass at the head of the dual grid.
    let wplus = measure::discrete_weight_plus(&p1.dual(), 0, 1e-13).unwrap();
    let wwplus = w_weight_plus(&wpd, 0);
    println!("nu-dual({{at}}) = {:.15}", wwplus.to_f64());
    assert!(wwplus.to_f64() > 0.0);
    assert!(rel(wplus.value.re, wwplus.to_f64()) < 1e-12);

    // Polynomial-weight value at a trig-free circle point e^{i pi/3}.
    let x = Complex64::new(0.5, 3f64.sqrt() / 2.0);
    let dl = measure::weight_delta(&p1, x, 1e-13).unwrap();
    let xw = lift(x);
    let xiw = WideComplex::one().div(&xw);
    let numw = wprod(&[xw.mul(&xw), xiw.mul(&xiw)], &wp.q);
    let denw = wprod(
        &[
            xw.scale(&wp.a),
            xiw.scale(&wp.a),
            xw.scale(&wp.b),
            xiw.scale(&wp.b),
            xw.scale(&wp.c),
            xiw.scale(&wp.c),
            xw.scale(&wp.d),
            xiw.scale(&wp.d),
        ],
        &wp.q,
    );
    let dlw = numw.div(&denw).to_c64();
    println!("Delta(e^{{i pi/3}}) = {:.15} + {:.2e}i", dlw.re, dlw.im);
    assert!(dlw.re > 0.0);
    assert!(relc(dl.value, dlw) < 1e-12);
}

#[test]
fn constants_match_wide_and_kmc_identity_holds() {
    let p1 = standard_params();
    let wp = Wp::p1();
    let wpd = wp.dual();

    let kw = w_const_k(&wp);
    let c0w = w_const_c0(&wp);
    let mw = w_const_m(&wp);
    let awi = w_const_aw_integral(&wp);
    println!("K  = {:.15}", kw.to_f64());
    println!("c0 = {:.15}", c0w.to_f64());
    println!("M  = {:.15}", mw.to_f64());
    println!("C0 = {:.15}", awi.to_f64());
    assert!(rel(measure::const_k(&p1, 1e-13).unwrap().value.re, kw.to_f64()) < 1e-12);
    assert!(rel(measure::const_c0(&p1, 1e-13).unwrap().value.re, c0w.to_f64()) < 1e-12);
    assert!(rel(measure::const_m(&p1, 1e-13).unwrap().value.re, mw.to_f64()) < 1e-12);
    assert!(
        rel(measure::const_aw_integral(&p1, 1e-13).unwrap().value.re, awi.to_f64()) < 1e-12
    );

    // K-dual * M / c0-dual = 1, entirely in wide arithmetic.
    let ident = w_const_k(&wpd).mul(&mw).div(&w_const_c0(&wpd));
    let dev = (ident.to_f64() - 1.0).abs();
    println!("K~ M / c0~ = 1 + {dev:.2e}");
    assert!(dev < 1e-60);
}

#[test]
fn forward_atom_pair_digits() {
    let p1 = standard_params();
    let wp = Wp::p1();
    // phi at the polynomial base point is the reduction constant; the
    // transform of the two-atom indicator is that constant times the total
    // mass of the atoms.
    let red = wprod(
        &[
            WideComplex::real(wp.b.mul(&wp.c)),
            WideComplex::real(wp.q.mul(&wp.a).div(&wp.d)),
            WideComplex::real(wp.q.div(&wp.a.mul(&wp.d))),
        ],
        &wp.q,
    );
    let red_const = Wide::one().div(&red.re);
    let total = w_weight_minus(&wp, 1).add(&w_weight_minus(&wp, 0)).mul(&Wide::from_i64(2));
    let expect = red_const.mul(&total);
    println!("(F 1_{{dtq^1,dtq^0}})(at) = {:.15}", expect.to_f64());

    let spec = measure::MeasureSpec::new(p1, 64, -20, 1e-12);
    let meas = measure::Measure::build(&spec).unwrap();
    let f = measure::TestFunction::atoms_minus(&[(1, 1.0), (0, 1.0)]);
    let got = awft_core::transform::forward_real(
        &p1,
        &f,
        Complex64::new(p1.dual().a, 0.0),
        &meas,
        1e-12,
    )
    .unwrap();
    assert!(rel(got, expect.to_f64()) < 1e-11);
}

#[test]
fn polynomial_degree_one_closed_form() {
    let p1 = standard_params();
    let x = Complex64::new(0.7, 0.0);
    let got = awcore::aw_polynomial(&p1, 1, x).unwrap();
    // Two-term expansion of the defining series collapses (1-q^{-1}) q/(1-q)
    // to -1.
    let abcd = p1.a * p1.b * p1.c * p1.d;
    let expect = 1.0
        - (1.0 - abcd) * (1.0 - p1.a * 0.7) * (1.0 - p1.a / 0.7)
            / ((1.0 - p1.a * p1.b) * (1.0 - p1.a * p1.c) * (1.0 - p1.a * p1.d));
    println!("p_1(0.7) = {expect:.15}");
    assert!(rel(got.re, expect) < 1e-14);
    assert!(got.im.abs() < 1e-15);
}
