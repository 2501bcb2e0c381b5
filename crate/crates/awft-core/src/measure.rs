//! The one-parameter family of measures of unbounded support.
//!
//! For an admissible tuple the measure `nu` has
//!
//! - an absolutely continuous part on the unit circle with density
//!   `K W(e^{i theta}) / (4 pi)` in theta,
//! - discrete masses at `a q^k > 1` (finitely many) and at `d t q^k < -1`
//!   (infinitely many, marching out to -infinity), with closed-form weights
//!   used as the definition of the masses — never numerical residues.
//!
//! For a symmetric function f, each discrete pair {x, 1/x} contributes
//! `2 nu({x}) f(x)` with x the representative of modulus > 1, which is how
//! atoms are tabulated here.
//!
//! The S- truncation index `k_min`, circle rule size, and target accuracy
//! live in [`MeasureSpec`]; every consumer reports them back for
//! reproducibility.

use crate::awcore::AWParams;
use crate::error::{AwError, Result};
use crate::qseries::sum::ScaledComplex;
use crate::qseries::{
    qpoch_finite, qpoch_inf_prod, qpoch_inf_prod_scaled, theta, theta_scaled, QBase, SeriesValue,
};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::sync::Arc;

fn c64(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// Multiplicative fault injection for sensitivity tests: every constant or
/// weight is scaled by its factor (1.0 = no fault).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Faults {
    pub k: f64,
    pub c0: f64,
    pub m: f64,
    pub weight_plus: f64,
    pub weight_minus: f64,
}

impl Default for Faults {
    fn default() -> Self {
        Faults { k: 1.0, c0: 1.0, m: 1.0, weight_plus: 1.0, weight_minus: 1.0 }
    }
}

impl Faults {
    pub fn none() -> Self {
        Self::default()
    }

    pub fn is_none(&self) -> bool {
        *self == Self::default()
    }
}

/// Truncation-controlled description of the measure: circle rule size,
/// S- truncation index, and target accuracy.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct MeasureSpec {
    pub params: AWParams,
    pub quad_points: usize,
    pub k_min: i64,
    pub eps: f64,
    #[serde(default)]
    pub faults: Faults,
}

impl MeasureSpec {
    pub fn new(params: AWParams, quad_points: usize, k_min: i64, eps: f64) -> Self {
        MeasureSpec { params, quad_points, k_min, eps, faults: Faults::default() }
    }

    /// The matching spec on the dual side.
    pub fn dual(&self, dual_k_min: i64) -> MeasureSpec {
        MeasureSpec {
            params: self.params.dual(),
            quad_points: self.quad_points,
            k_min: dual_k_min,
            eps: self.eps,
            faults: self.faults,
        }
    }
}

/// Weight function of the polynomial orthogonality measure:
/// `Delta(x) = (x^2, 1/x^2;q)_inf / (ax,a/x,bx,b/x,cx,c/x,dx,d/x;q)_inf`.
pub fn weight_delta(p: &AWParams, x: Complex64, eps: f64) -> Result<SeriesValue> {
    if x.norm() == 0.0 {
        return Err(AwError::PoleAtX(x));
    }
    let q = p.qbase();
    let xi = x.finv();
    let num = qpoch_inf_prod(&[x * x, xi * xi], q, eps / 4.0);
    let den = qpoch_inf_prod(
        &[
            p.a * x,
            p.a * xi,
            p.b * x,
            p.b * xi,
            p.c * x,
            p.c * xi,
            p.d * x,
            p.d * xi,
        ],
        q,
        eps / 4.0,
    );
    if den.value.norm() == 0.0 {
        return Err(AwError::PoleAtX(x));
    }
    Ok(num.div(&den))
}

/// Renormalized weight of the unbounded measure:
/// `W(x) = (qx/d, q/dx, x^2, 1/x^2;q)_inf /
///         [(ax,a/x,bx,b/x,cx,c/x;q)_inf theta(dtx) theta(dt/x)]`.
pub fn weight_w(p: &AWParams, x: Complex64, eps: f64) -> Result<SeriesValue> {
    if x.norm() == 0.0 {
        return Err(AwError::PoleAtX(x));
    }
    let q = p.qbase();
    let xi = x.finv();
    let num = qpoch_inf_prod(
        &[p.q * x / p.d, p.q * xi / p.d, x * x, xi * xi],
        q,
        eps / 4.0,
    );
    let den = qpoch_inf_prod(
        &[p.a * x, p.a * xi, p.b * x, p.b * xi, p.c * x, p.c * xi],
        q,
        eps / 4.0,
    );
    let th1 = theta(p.d * p.t * x, q, eps / 4.0)?;
    let th2 = theta(p.d * p.t * xi, q, eps / 4.0)?;
    let den = den.mul(&th1).mul(&th2);
    if den.value.norm() == 0.0 {
        return Err(AwError::PoleAtX(x));
    }
    Ok(num.div(&den))
}

/// The positive constant `c0 = (ab,ac,bc,qa/d;q)_inf^2 theta(adt)^2 / a^2`.
pub fn const_c0(p: &AWParams, eps: f64) -> Result<SeriesValue> {
    let q = p.qbase();
    let prod = qpoch_inf_prod(
        &[c64(p.a * p.b), c64(p.a * p.c), c64(p.b * p.c), c64(p.q * p.a / p.d)],
        q,
        eps / 4.0,
    );
    let th = theta(c64(p.a * p.d * p.t), q, eps / 4.0)?;
    let f = prod.mul(&th);
    Ok(f.mul(&f).scale(c64(1.0 / (p.a * p.a))))
}

/// Normalization constant of the measure:
/// `K = (ab,ac,bc,qa/d,q;q)_inf sqrt(theta(qt)theta(adt)theta(bdt)theta(cdt)/(q abcd t^2))`.
/// The radicand must be positive; anything else signals a parameter bug.
pub fn const_k(p: &AWParams, eps: f64) -> Result<SeriesValue> {
    let q = p.qbase();
    let prod = qpoch_inf_prod(
        &[
            c64(p.a * p.b),
            c64(p.a * p.c),
            c64(p.b * p.c),
            c64(p.q * p.a / p.d),
            c64(p.q),
        ],
        q,
        eps / 4.0,
    );
    let dt = p.d * p.t;
    let mut rad = SeriesValue::exact(c64(1.0));
    for v in [p.q * p.t, p.a * dt, p.b * dt, p.c * dt] {
        rad = rad.mul(&theta(c64(v), q, eps / 8.0)?);
    }
    let denom = p.q * p.a * p.b * p.c * p.d * p.t * p.t;
    let radicand = rad.value.re / denom;
    if radicand <= 0.0 {
        return Err(AwError::NegativeRadicand(radicand));
    }
    let root = radicand.sqrt();
    let rel = prod.rel_err() + 0.5 * rad.rel_err() + 4.0 * f64::EPSILON;
    let value = prod.value * root;
    Ok(SeriesValue { value, err_bound: rel * value.norm(), terms_used: prod.terms_used + rad.terms_used })
}

/// The positive constant of the discrete-weight asymptotics:
/// `M = theta(qt) K / [(q;q)_inf^2 theta(adt) theta(bdt) theta(cdt)]`.
pub fn const_m(p: &AWParams, eps: f64) -> Result<SeriesValue> {
    let q = p.qbase();
    let k = const_k(p, eps / 4.0)?;
    let dt = p.d * p.t;
    let num = theta(c64(p.q * p.t), q, eps / 8.0)?.mul(&k);
    let mut den = qpoch_inf_prod(&[c64(p.q), c64(p.q)], q, eps / 8.0);
    for v in [p.a * dt, p.b * dt, p.c * dt] {
        den = den.mul(&theta(c64(v), q, eps / 8.0)?);
    }
    Ok(num.div(&den))
}

/// The circle normalization of the polynomial orthogonality:
/// `C0 = 2 (abcd;q)_inf / (q,ab,ac,ad,bc,bd,cd;q)_inf`.
pub fn const_aw_integral(p: &AWParams, eps: f64) -> Result<SeriesValue> {
    let q = p.qbase();
    let num = qpoch_inf_prod(&[c64(p.a * p.b * p.c * p.d)], q, eps / 2.0);
    let den = qpoch_inf_prod(
        &[
            c64(p.q),
            c64(p.a * p.b),
            c64(p.a * p.c),
            c64(p.a * p.d),
            c64(p.b * p.c),
            c64(p.b * p.d),
            c64(p.c * p.d),
        ],
        q,
        eps / 2.0,
    );
    Ok(num.div(&den).scale(c64(2.0)))
}

/// Residue of `Delta(y)/y` at the simple pole `y = a q^k`: the full product
/// with the vanishing factor of `(a/y;q)_inf` stripped. Used for the
/// dual-residue form of the polynomial quadratic norms.
pub fn delta_residue(p: &AWParams, k: u32, eps: f64) -> Result<SeriesValue> {
    let q = p.qbase();
    let x = c64(p.a * p.q.powi(k as i32));
    let xi = x.finv();
    let num = qpoch_inf_prod(&[x * x, xi * xi], q, eps / 4.0);
    // (a/y;q)_inf with factor i = k skipped: (a/y;q)_k * (a/y q^{k+1};q)_inf.
    let a_over = c64(p.a) * xi;
    let head = qpoch_finite(a_over, q, k);
    let tail = qpoch_inf_prod(&[a_over * p.q.powi(k as i32 + 1)], q, eps / 4.0);
    let rest = qpoch_inf_prod(
        &[
            p.a * x,
            p.b * x,
            p.b * xi,
            p.c * x,
            p.c * xi,
            p.d * x,
            p.d * xi,
        ],
        q,
        eps / 4.0,
    );
    Ok(num.div(&tail.scale(head).mul(&rest)))
}

fn qpoch_int_scaled(a: Complex64, q: QBase, n: i64) -> Result<(ScaledComplex, f64)> {
    let qv = q.value();
    let mut prod = ScaledComplex::one();
    if n >= 0 {
        let mut aqi = a;
        for _ in 0..n {
            prod.mul_complex(c64(1.0) - aqi);
            aqi *= qv;
        }
        Ok((prod, 2.0 * n as f64 * f64::EPSILON))
    } else {
        let mut aqj = a;
        for _ in 0..(-n) {
            aqj /= qv;
            let f = c64(1.0) - aqj;
            if f.norm() < 1e-14 * (1.0 + aqj.norm()) {
                return Err(AwError::PoleInParams { value: a, power: n, tol: 1e-14 });
            }
            prod.mul_complex(f);
        }
        Ok((prod.recip(), 2.0 * (-n) as f64 * f64::EPSILON))
    }
}

/// Closed-form discrete weight `nu({a q^k})` for `a q^k > 1` (the continuous
/// extension of the residue of the circle weight; taken as the definition).
pub fn discrete_weight_plus(p: &AWParams, k: i64, eps: f64) -> Result<SeriesValue> {
    let x = p.a * p.q.powi(k as i32);
    if !(k >= 0 && x > 1.0) {
        return Err(AwError::NotInSupport { k, x });
    }
    let k = k as u32;
    let q = p.qbase();
    let dt = p.d * p.t;
    let (num, num_rel, _) = qpoch_inf_prod_scaled(
        &[c64(p.q * p.a / p.d), c64(p.q / (p.a * p.d)), c64(1.0 / (p.a * p.a))],
        q,
        eps / 8.0,
    );
    let (den, den_rel, _) = qpoch_inf_prod_scaled(
        &[
            c64(p.q),
            c64(p.a * p.b),
            c64(p.b / p.a),
            c64(p.a * p.c),
            c64(p.c / p.a),
        ],
        q,
        eps / 8.0,
    );
    let (th1, th1_rel, _) = theta_scaled(c64(p.a * dt), q, eps / 8.0)?;
    let (th2, th2_rel, _) = theta_scaled(c64(dt / p.a), q, eps / 8.0)?;
    let fin_num = ScaledComplex::from_complex(
        qpoch_finite(c64(p.a * p.a), q, k)
            * qpoch_finite(c64(p.a * p.b), q, k)
            * qpoch_finite(c64(p.a * p.c), q, k)
            * qpoch_finite(c64(p.a * p.d), q, k),
    );
    let fin_den = ScaledComplex::from_complex(
        qpoch_finite(c64(p.q), q, k)
            * qpoch_finite(c64(p.q * p.a / p.b), q, k)
            * qpoch_finite(c64(p.q * p.a / p.c), q, k)
            * qpoch_finite(c64(p.q * p.a / p.d), q, k),
    );
    let kconst = const_k(p, eps / 8.0)?;
    let vwp = (1.0 - p.a * p.a * p.q.powi(2 * k as i32)) / (1.0 - p.a * p.a);
    let at2k = ScaledComplex::from_complex(c64(p.a_tilde())).powi(2 * k as i64);
    let scaled = num
        .div(den.mul(th1).mul(th2))
        .mul(fin_num.div(fin_den))
        .mul(ScaledComplex::from_complex(c64(vwp * 0.5) * kconst.value))
        .div(at2k);
    let value = scaled.to_complex();
    let rel = num_rel + den_rel + th1_rel + th2_rel + kconst.rel_err() + 16.0 * f64::EPSILON;
    Ok(SeriesValue { value, err_bound: rel * value.norm(), terms_used: kconst.terms_used })
}

/// Closed-form discrete weight `nu({d t q^k})` for `d t q^k < -1`.
pub fn discrete_weight_minus(p: &AWParams, k: i64, eps: f64) -> Result<SeriesValue> {
    let x = p.lattice(k);
    if !(x < -1.0) {
        return Err(AwError::NotInSupport { k, x });
    }
    let q = p.qbase();
    let dt = p.d * p.t;
    let (num, num_rel, _) = qpoch_inf_prod_scaled(
        &[c64(p.q * p.t), c64(p.q / (p.d * p.d * p.t))],
        q,
        eps / 8.0,
    );
    let (den, den_rel, _) = qpoch_inf_prod_scaled(
        &[
            c64(p.q),
            c64(p.q),
            c64(p.a / dt),
            c64(p.b / dt),
            c64(p.c / dt),
            c64(p.a * dt),
            c64(p.b * dt),
            c64(p.c * dt),
        ],
        q,
        eps / 8.0,
    );
    let mut fin_num = ScaledComplex::one();
    let mut fin_rel = 0.0;
    for v in [1.0 / p.t, p.a / dt, p.b / dt, p.c / dt] {
        let (s, r) = qpoch_int_scaled(c64(v), q, -k)?;
        fin_num = fin_num.mul(s);
        fin_rel += r;
    }
    let mut fin_den = ScaledComplex::one();
    for v in [
        p.q / (p.a * dt),
        p.q / (p.b * dt),
        p.q / (p.c * dt),
        p.q / (p.d * p.d * p.t),
    ] {
        let (s, r) = qpoch_int_scaled(c64(v), q, -k)?;
        fin_den = fin_den.mul(s);
        fin_rel += r;
    }
    let kconst = const_k(p, eps / 8.0)?;
    // 1 - 1/(d^2 t^2 q^{2k}), assembled in scaled form for deep k.
    let q2k = ScaledComplex::from_complex(c64(p.q)).powi(2 * k);
    let inv = ScaledComplex::from_complex(c64(1.0 / (p.d * p.d * p.t * p.t))).div(q2k);
    let vwp = c64(1.0) - inv.to_complex();
    let at2k = ScaledComplex::from_complex(c64(p.a_tilde())).powi(2 * k);
    let scaled = num
        .div(den)
        .mul(fin_num.div(fin_den))
        .mul(at2k)
        .mul(ScaledComplex::from_complex(c64(0.5) * vwp * kconst.value));
    let value = scaled.to_complex();
    let rel = num_rel + den_rel + fin_rel + kconst.rel_err() + 16.0 * f64::EPSILON;
    Ok(SeriesValue { value, err_bound: rel * value.norm(), terms_used: kconst.terms_used })
}

/// A tabulated discrete pair-mass: the representative point `x` (|x| > 1) at
/// lattice index `k` with symmetric mass `2 nu({x})`.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct Atom {
    pub k: i64,
    pub x: f64,
    pub mass: f64,
}

/// The measure, realized: quadrature nodes with their masses and the
/// enumerated discrete atoms.
#[derive(Clone, Debug)]
pub struct Measure {
    pub spec: MeasureSpec,
    /// Trapezoid nodes on [0, pi] (endpoints included; the density vanishes
    /// there).
    pub theta_nodes: Vec<f64>,
    /// Density `K W(e^{i theta}) / (4 pi)` at each node.
    pub density: Vec<f64>,
    /// Node mass for integrating symmetric functions: quadrature weight
    /// times `2 x` density.
    pub node_mass: Vec<f64>,
    /// Largest magnitude of a (spurious) imaginary part seen in the density.
    pub density_imag: f64,
    pub plus: Vec<Atom>,
    pub minus: Vec<Atom>,
}

impl Measure {
    /// Tabulate the measure: validates the parameters, evaluates the circle
    /// density on the trapezoid rule, and enumerates discrete masses from
    /// the closed forms.
    pub fn build(spec: &MeasureSpec) -> Result<Measure> {
        let p = spec.params;
        p.require_v()?;
        if spec.quad_points < 4 {
            return Err(AwError::InvalidInput("quad_points must be at least 4".into()));
        }
        let n = spec.quad_points;
        let kc = const_k(&p, spec.eps)?.value.re * spec.faults.k;
        let theta_nodes: Vec<f64> =
            (0..=n).map(|j| std::f64::consts::PI * j as f64 / n as f64).collect();
        let dens: Vec<(f64, f64)> = theta_nodes
            .par_iter()
            .map(|&th| {
                if th == 0.0 || (th - std::f64::consts::PI).abs() < 1e-300 {
                    // (x^2;q)_inf vanishes at x = ±1.
                    return Ok((0.0, 0.0));
                }
                let x = Complex64::from_polar(1.0, th);
                let w = weight_w(&p, x, spec.eps)?;
                Ok((
                    kc * w.value.re / (4.0 * std::f64::consts::PI),
                    w.value.im.abs(),
                ))
            })
            .collect::<Result<Vec<_>>>()?;
        let density: Vec<f64> = dens.iter().map(|d| d.0).collect();
        let density_imag = dens.iter().map(|d| d.1).fold(0.0f64, f64::max);
        let h = std::f64::consts::PI / n as f64;
        let node_mass: Vec<f64> = density
            .iter()
            .enumerate()
            .map(|(j, &d)| {
                let w = if j == 0 || j == n { 0.5 * h } else { h };
                2.0 * d * w
            })
            .collect();
        for (j, &d) in density.iter().enumerate() {
            if d < -1e-10 * kc.abs() {
                return Err(AwError::InvalidInput(format!(
                    "negative circle density {d} at node {j}; parameter bug"
                )));
            }
        }

        let mut plus = Vec::new();
        let mut k = 0i64;
        while p.a * p.q.powi(k as i32) > 1.0 {
            let w = discrete_weight_plus(&p, k, spec.eps)?;
            plus.push(Atom {
                k,
                x: p.a * p.q.powi(k as i32),
                mass: 2.0 * w.value.re * spec.faults.weight_plus,
            });
            k += 1;
        }

        let mut minus = Vec::new();
        let mut k = support_minus_head(&p);
        while k >= spec.k_min {
            let w = discrete_weight_minus(&p, k, spec.eps)?;
            minus.push(Atom { k, x: p.lattice(k), mass: 2.0 * w.value.re * spec.faults.weight_minus });
            k -= 1;
        }
        for a in plus.iter().chain(minus.iter()) {
            if !(a.mass > 0.0) {
                return Err(AwError::InvalidInput(format!(
                    "nonpositive discrete mass {} at k = {}; parameter bug",
                    a.mass, a.k
                )));
            }
        }
        Ok(Measure { spec: *spec, theta_nodes, density, node_mass, density_imag, plus, minus })
    }

    /// Integrate a callable given on the circle (by angle) and on atoms (by
    /// the atom table entry).
    pub fn integrate_with<FC, FA>(&self, circle: FC, atom: FA) -> f64
    where
        FC: Fn(f64) -> f64,
        FA: Fn(&Atom) -> f64,
    {
        let mut acc = crate::qseries::sum::Kahan::new();
        for (j, &th) in self.theta_nodes.iter().enumerate() {
            if self.node_mass[j] != 0.0 {
                acc.add(c64(self.node_mass[j] * circle(th)));
            }
        }
        for a in self.plus.iter().chain(self.minus.iter()) {
            acc.add(c64(a.mass * atom(a)));
        }
        acc.value().re
    }
}

/// Largest lattice index with `d t q^k < -1` (the head of S-).
pub fn support_minus_head(p: &AWParams) -> i64 {
    let guess = ((p.d * p.t).abs().ln() / (1.0 / p.q).ln()).floor() as i64;
    let mut k = guess + 2;
    while p.lattice(k) >= -1.0 {
        k -= 1;
    }
    k
}

/// A symmetric compactly supported test function: an optional circle
/// component (by angle on [0, pi]) plus finitely many atom values keyed by
/// lattice index.
#[derive(Clone)]
pub struct TestFunction {
    pub circle: Option<Arc<dyn Fn(f64) -> f64 + Send + Sync>>,
    pub plus: BTreeMap<i64, f64>,
    pub minus: BTreeMap<i64, f64>,
}

impl TestFunction {
    pub fn zero() -> Self {
        TestFunction { circle: None, plus: BTreeMap::new(), minus: BTreeMap::new() }
    }

    /// Indicator of the single atom at `d t q^k`.
    pub fn atom_minus(k: i64) -> Self {
        let mut f = Self::zero();
        f.minus.insert(k, 1.0);
        f
    }

    /// Atom component with given values.
    pub fn atoms_minus(vals: &[(i64, f64)]) -> Self {
        let mut f = Self::zero();
        for &(k, v) in vals {
            f.minus.insert(k, v);
        }
        f
    }

    /// Raised-cosine bump in the angle variable, supported on
    /// [center - width/2, center + width/2] within (0, pi).
    pub fn cos2_bump(center: f64, width: f64) -> Self {
        let mut f = Self::zero();
        f.circle = Some(Arc::new(move |th: f64| {
            let u = (th - center) / width;
            if u.abs() >= 0.5 {
                0.0
            } else {
                let c = (std::f64::consts::PI * u).cos();
                c * c
            }
        }));
        f
    }

    pub fn circle_value(&self, th: f64) -> f64 {
        self.circle.as_ref().map_or(0.0, |f| f(th))
    }

    pub fn atom_value(&self, minus_side: bool, k: i64) -> f64 {
        let map = if minus_side { &self.minus } else { &self.plus };
        map.get(&k).copied().unwrap_or(0.0)
    }

    pub fn is_zero(&self) -> bool {
        self.circle.is_none() && self.plus.is_empty() && self.minus.is_empty()
    }
}

/// `integral of f d nu` for a symmetric test function. The discrete support
/// of `f` must lie inside the tabulated range of the measure.
pub fn integrate_nu(f: &TestFunction, meas: &Measure) -> Result<f64> {
    for &k in f.minus.keys() {
        if k < meas.spec.k_min || meas.minus.iter().all(|a| a.k != k) {
            let x = meas.spec.params.lattice(k);
            return Err(AwError::NotInSupport { k, x });
        }
    }
    for &k in f.plus.keys() {
        if meas.plus.iter().all(|a| a.k != k) {
            let x = meas.spec.params.a * meas.spec.params.q.powi(k as i32);
            return Err(AwError::NotInSupport { k, x });
        }
    }
    Ok(meas.integrate_with(
        |th| f.circle_value(th),
        |a| f.atom_value(a.x < 0.0, a.k),
    ))
}

/// Hilbert-space pairing `<f, g>` of two real symmetric test functions.
pub fn inner_product(f: &TestFunction, g: &TestFunction, meas: &Measure) -> Result<f64> {
    for &k in f.minus.keys().chain(g.minus.keys()) {
        if k < meas.spec.k_min || meas.minus.iter().all(|a| a.k != k) {
            let x = meas.spec.params.lattice(k);
            return Err(AwError::NotInSupport { k, x });
        }
    }
    Ok(meas.integrate_with(
        |th| f.circle_value(th) * g.circle_value(th),
        |a| {
            let m = a.x < 0.0;
            f.atom_value(m, a.k) * g.atom_value(m, a.k)
        },
    ))
}

/// CSV dump of the circle density, `theta,density` rows.
pub fn density_csv(meas: &Measure) -> String {
    let mut s = String::from("theta,density\n");
    for (j, &th) in meas.theta_nodes.iter().enumerate() {
        s.push_str(&format!("{:.16e},{:.16e}\n", th, meas.density[j]));
    }
    s
}

/// CSV dump of the discrete atoms, `k,x,weight` rows (weight = 2 nu({x})).
pub fn atoms_csv(meas: &Measure) -> String {
    let mut s = String::from("k,x,weight\n");
    for a in meas.plus.iter().chain(meas.minus.iter()) {
        s.push_str(&format!("{},{:.16e},{:.16e}\n", a.k, a.x, a.mass));
    }
    s
}

/// JSON dump of the full weight table.
pub fn weights_json(meas: &Measure) -> serde_json::Value {
    serde_json::json!({
        "spec": meas.spec,
        "density": meas.theta_nodes.iter().zip(meas.density.iter())
            .map(|(&t, &d)| serde_json::json!([t, d])).collect::<Vec<_>>(),
        "atoms": meas.plus.iter().chain(meas.minus.iter()).collect::<Vec<_>>(),
        "truncation": {
            "k_min": meas.spec.k_min,
            "quad_points": meas.spec.quad_points,
            "eps": meas.spec.eps,
            "minus_head": meas.minus.first().map(|a| a.k),
        },
    })
}

#[cfg(test)]
mod tests;
