//! q-shifted factorials, theta functions, and basic hypergeometric series
//! with certified truncation error.
//!
//! Conventions (for fixed 0 < q < 1):
//!
//! ```text
//! (a;q)_n   = prod_{i=0}^{n-1} (1 - a q^i)
//! (a;q)_inf = prod_{i>=0} (1 - a q^i)
//! theta(x)  = (x;q)_inf (q/x;q)_inf
//!
//! r+1_phi_r(a_1..a_{r+1}; b_1..b_r; q, z)
//!   = sum_k (a_1..a_{r+1};q)_k / (q, b_1..b_r;q)_k z^k
//!
//! 8W7(a; b,c,d,e,f; q, z)
//!   = sum_k (1-a q^{2k})/(1-a) (a,b,c,d,e,f;q)_k z^k / (q,qa/b,..,qa/f;q)_k
//! ```
//!
//! Every truncated value is returned as a [`SeriesValue`] carrying a rigorous
//! absolute bound on the truncation error, derived from a geometric tail
//! estimate (never from the observed term sizes alone). All summation is
//! compensated; very-well-poised series cancel heavily near the edge of
//! convergence.

pub mod sum;
pub mod wide;

use crate::error::{AwError, Result};
use num_complex::Complex64;
use sum::{Kahan, ScaledComplex};

/// Tolerance inside which a lower-slot parameter is considered to sit *on*
/// the forbidden lattice q^{-N}. Such inputs are rejected rather than
/// perturbed; the caller perturbs deliberately if that is what it wants.
pub const POLE_LATTICE_TOL: f64 = 1e-10;

/// Tolerance inside which an upper-slot parameter is treated as exactly
/// q^{-N}, making the series terminate after N+1 terms.
const TERMINATION_TOL: f64 = 1e-12;

const MAX_TERMS: usize = 400_000;

/// The base of all q-series in play; strictly inside (0, 1).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QBase(f64);

impl QBase {
    pub fn new(q: f64) -> Result<Self> {
        if !(q.is_finite() && q > 0.0 && q < 1.0) {
            return Err(AwError::InvalidQ(q));
        }
        Ok(QBase(q))
    }

    #[inline]
    pub fn value(self) -> f64 {
        self.0
    }
}

/// A numeric value paired with a certified absolute truncation-error bound
/// and the number of terms (or factors) consumed.
#[derive(Clone, Copy, Debug)]
pub struct SeriesValue {
    pub value: Complex64,
    pub err_bound: f64,
    pub terms_used: usize,
}

impl SeriesValue {
    pub fn exact(value: Complex64) -> Self {
        SeriesValue { value, err_bound: 0.0, terms_used: 0 }
    }

    /// Relative error bound; infinite for an (inexact) zero value.
    pub fn rel_err(&self) -> f64 {
        if self.err_bound == 0.0 {
            0.0
        } else {
            self.err_bound / self.value.norm()
        }
    }

    /// Product with first-order error propagation.
    pub fn mul(&self, other: &SeriesValue) -> SeriesValue {
        let value = self.value * other.value;
        let rel = self.rel_err() + other.rel_err() + 2.0 * f64::EPSILON;
        SeriesValue { value, err_bound: rel * value.norm(), terms_used: self.terms_used + other.terms_used }
    }

    /// Quotient with first-order error propagation.
    pub fn div(&self, other: &SeriesValue) -> SeriesValue {
        let value = self.value / other.value;
        let rel = self.rel_err() + other.rel_err() + 2.0 * f64::EPSILON;
        SeriesValue { value, err_bound: rel * value.norm(), terms_used: self.terms_used + other.terms_used }
    }

    pub fn scale(&self, z: Complex64) -> SeriesValue {
        SeriesValue {
            value: self.value * z,
            err_bound: self.err_bound * z.norm(),
            terms_used: self.terms_used,
        }
    }
}

/// Finite q-shifted factorial (a;q)_n; the empty product is 1.
pub fn qpoch_finite(a: Complex64, q: QBase, n: u32) -> Complex64 {
    let q = q.value();
    let mut prod = Complex64::new(1.0, 0.0);
    let mut aqi = a;
    for _ in 0..n {
        prod *= Complex64::new(1.0, 0.0) - aqi;
        aqi *= q;
    }
    prod
}

/// (a;q)_n for n of either sign, via
/// `(a;q)_{-m} = 1 / prod_{j=1}^{m} (1 - a q^{-j})`.
pub fn qpoch_int(a: Complex64, q: QBase, n: i64) -> Result<Complex64> {
    if n >= 0 {
        return Ok(qpoch_finite(a, q, n as u32));
    }
    let q = q.value();
    let mut prod = Complex64::new(1.0, 0.0);
    let mut aqj = a;
    for _ in 0..(-n) {
        aqj /= q;
        let factor = Complex64::new(1.0, 0.0) - aqj;
        if factor.norm() < 1e-14 * (1.0 + aqj.norm()) {
            return Err(AwError::PoleInParams { value: a, power: n, tol: 1e-14 });
        }
        prod *= factor;
    }
    Ok(prod.finv())
}

/// Infinite q-shifted factorial (a;q)_inf with a certified relative error
/// of at most `eps`.
///
/// The partial product stops at N once the log-tail bound
/// `sum_{i>=N} |a| q^i / (1 - |a| q^N)` is small enough; concretely at the
/// first N with |a| q^N / (1-q) < eps/4, which makes the first-order bound
/// below rigorous.
pub fn qpoch_inf(a: Complex64, q: QBase, eps: f64) -> SeriesValue {
    let (scaled, rel, terms) = qpoch_inf_scaled(a, q, eps);
    let value = scaled.to_complex();
    SeriesValue { value, err_bound: rel * value.norm(), terms_used: terms }
}

/// Overflow-safe form of [`qpoch_inf`]: the value as a scaled complex along
/// with its relative error bound and factor count.
pub fn qpoch_inf_scaled(a: Complex64, q: QBase, eps: f64) -> (ScaledComplex, f64, usize) {
    let q = q.value();
    let eps = eps.max(1e-300);
    if a.norm() == 0.0 {
        return (ScaledComplex::one(), 0.0, 0);
    }
    let mut prod = ScaledComplex::one();
    let mut aqi = a;
    let mut i: usize = 0;
    loop {
        let factor = Complex64::new(1.0, 0.0) - aqi;
        if factor.norm() == 0.0 {
            return (ScaledComplex::zero(), 0.0, i + 1);
        }
        prod.mul_complex(factor);
        aqi *= q;
        i += 1;
        let head = aqi.norm();
        if head < 0.5 && head / (1.0 - q) < 0.25 * eps {
            break;
        }
        if i >= MAX_TERMS {
            break;
        }
    }
    let head = aqi.norm();
    let log_tail = head / ((1.0 - q) * (1.0 - head));
    let rel = log_tail * (1.0 + log_tail) + 4.0 * (i as f64) * f64::EPSILON;
    (prod, rel, i)
}

/// Product of several infinite q-shifted factorials sharing one base.
pub fn qpoch_inf_prod(params: &[Complex64], q: QBase, eps: f64) -> SeriesValue {
    let (scaled, rel, terms) = qpoch_inf_prod_scaled(params, q, eps);
    let value = scaled.to_complex();
    SeriesValue { value, err_bound: rel * value.norm(), terms_used: terms }
}

pub fn qpoch_inf_prod_scaled(params: &[Complex64], q: QBase, eps: f64) -> (ScaledComplex, f64, usize) {
    let each = eps / (params.len().max(1) as f64);
    let mut acc = ScaledComplex::one();
    let mut rel = 0.0;
    let mut terms = 0;
    for &p in params {
        let (s, r, t) = qpoch_inf_scaled(p, q, each);
        acc = acc.mul(s);
        rel += r;
        terms += t;
    }
    (acc, rel, terms)
}

/// Renormalized Jacobi theta function `theta(x) = (x;q)_inf (q/x;q)_inf`.
/// Vanishes exactly on the lattice q^Z; undefined at x = 0.
pub fn theta(x: Complex64, q: QBase, eps: f64) -> Result<SeriesValue> {
    let (scaled, rel, terms) = theta_scaled(x, q, eps)?;
    let value = scaled.to_complex();
    Ok(SeriesValue { value, err_bound: rel * value.norm(), terms_used: terms })
}

pub fn theta_scaled(x: Complex64, q: QBase, eps: f64) -> Result<(ScaledComplex, f64, usize)> {
    if x.norm() == 0.0 {
        return Err(AwError::InvalidInput("theta function is undefined at x = 0".into()));
    }
    let (s1, r1, t1) = qpoch_inf_scaled(x, q, eps / 2.0);
    let (s2, r2, t2) = qpoch_inf_scaled(Complex64::new(q.value(), 0.0) / x, q, eps / 2.0);
    Ok((s1.mul(s2), r1 + r2, t1 + t2))
}

/// Relative residual of the quasi-periodicity
/// `theta(q^k x) = q^{-k(k-1)/2} (-x)^{-k} theta(x)`; a self-test.
///
/// The equation is compared with the prefactor divided out, so the residual
/// is relative to theta(x) on both sides (the raw difference picks up the
/// prefactor's magnitude, which reaches 1e10 on the tested range and would
/// swamp a fixed tolerance for no mathematical reason).
pub fn theta_shift_check(x: Complex64, k: i32, q: QBase) -> Result<f64> {
    let eps = 1e-14;
    if near_q_lattice(x, q.value(), 1e-8) {
        return Err(AwError::NearZeroTheta(x));
    }
    let tx = theta(x, q, eps)?;
    let shifted = theta(x * q.value().powi(k), q, eps)?;
    let expo = (k as i64) * (k as i64 - 1) / 2;
    // q^{-expo} can overflow f64 for deep shifts; assemble in scaled form.
    let prefactor = ScaledComplex::from_complex(Complex64::new(q.value(), 0.0))
        .powi(-expo)
        .mul(ScaledComplex::from_complex(-x).powi(-(k as i64)));
    let lhs = ScaledComplex::from_complex(shifted.value).div(prefactor).to_complex();
    Ok((lhs - tx.value).norm() / tx.value.norm())
}

/// True when `v` lies within relative `tol` of the two-sided lattice q^Z
/// (the zero set of the theta function).
pub fn near_q_lattice(v: Complex64, q: f64, tol: f64) -> bool {
    if v.re <= 0.0 || v.im.abs() > tol * v.norm() {
        return false;
    }
    let m = (v.re.ln() / q.ln()).round() as i32;
    let pt = q.powi(m);
    (v - Complex64::new(pt, 0.0)).norm() <= tol * pt
}

/// Nearest lattice index m >= 0 with value close to q^{-m}, if any.
/// `tol` is relative to the lattice point.
fn near_neg_power_lattice(v: Complex64, q: f64, tol: f64) -> Option<i64> {
    if v.im.abs() > tol * v.norm().max(1.0) || v.re <= 0.0 {
        return None;
    }
    let m = (-v.re.ln() / q.ln()).round();
    if m < 0.0 {
        // q^0 = 1 is the smallest lattice point; check it for values below 1.
        return if (v.re - 1.0).abs() + v.im.abs() <= tol { Some(0) } else { None };
    }
    let lattice = q.powi(-(m as i32));
    if ((v.re - lattice).powi(2) + v.im.powi(2)).sqrt() <= tol * lattice {
        Some(m as i64)
    } else {
        None
    }
}

/// Scan upper parameters for one sitting on q^{-N}: the series then
/// terminates after N+1 terms. Returns the smallest such N.
fn termination_order(upper: &[Complex64], q: f64) -> Option<usize> {
    let mut cap: Option<usize> = None;
    for &u in upper {
        if let Some(m) = near_neg_power_lattice(u, q, TERMINATION_TOL) {
            let m = m as usize;
            cap = Some(cap.map_or(m, |c| c.min(m)));
        }
    }
    cap
}

#[derive(Default)]
pub(crate) struct SumOptions {
    /// Force summation of exactly this many terms (honesty checks).
    pub force_terms: Option<usize>,
}

/// Adaptive compensated summation of a series given by a term-ratio rule.
///
/// `ratio(k)` is term_{k+1}/term_k; `bound_ratio(k)` must upper-bound
/// |term_{j+1}/term_j| for every j >= k (it may return values >= 1 while no
/// bound is available yet). Summation stops once the geometric tail bound
/// drops below the target.
fn sum_series(
    ratio: impl Fn(usize) -> Complex64,
    bound_ratio: impl Fn(usize) -> f64,
    term_cap: Option<usize>,
    eps: f64,
    opts: &SumOptions,
) -> Result<SeriesValue> {
    let mut acc = Kahan::new();
    let mut term = Complex64::new(1.0, 0.0);
    acc.add(term);
    let mut sum_abs = 1.0f64;
    let mut k = 0usize;
    let tail_bound;
    loop {
        if let Some(cap) = term_cap {
            if k >= cap && opts.force_terms.is_none() {
                tail_bound = 0.0;
                break;
            }
        }
        term *= ratio(k);
        acc.add(term);
        sum_abs += term.norm();
        k += 1;
        if let Some(n) = opts.force_terms {
            if k >= n {
                let r = bound_ratio(k);
                tail_bound = if r < 1.0 { term.norm() * r / (1.0 - r) } else { f64::INFINITY };
                break;
            }
            continue;
        }
        let r = bound_ratio(k);
        if r < 1.0 {
            let t = term.norm() * r / (1.0 - r);
            let scale = acc.value().norm() + 1e-6 * sum_abs;
            if t <= eps * scale {
                tail_bound = t;
                break;
            }
        }
        if k >= MAX_TERMS {
            return Err(AwError::NonConvergent(format!(
                "series failed to certify its tail within {MAX_TERMS} terms"
            )));
        }
    }
    let value = acc.value();
    Ok(SeriesValue {
        value,
        err_bound: tail_bound + 4.0 * f64::EPSILON * sum_abs,
        terms_used: k + 1,
    })
}

/// Basic hypergeometric series r+1_phi_r(upper; lower; q, z).
///
/// Lower parameters within [`POLE_LATTICE_TOL`] of the lattice q^{-N} are
/// rejected. Requires |z| < 1 unless an upper parameter makes the series
/// terminate.
pub fn phi_series(
    upper: &[Complex64],
    lower: &[Complex64],
    q: QBase,
    z: Complex64,
    eps: f64,
) -> Result<SeriesValue> {
    phi_series_opts(upper, lower, q, z, eps, &SumOptions::default())
}

pub(crate) fn phi_series_opts(
    upper: &[Complex64],
    lower: &[Complex64],
    q: QBase,
    z: Complex64,
    eps: f64,
    opts: &SumOptions,
) -> Result<SeriesValue> {
    let qv = q.value();
    for &l in lower {
        if let Some(m) = near_neg_power_lattice(l, qv, POLE_LATTICE_TOL) {
            return Err(AwError::PoleInParams { value: l, power: -m, tol: POLE_LATTICE_TOL });
        }
    }
    let cap = termination_order(upper, qv);
    if cap.is_none() && z.norm() >= 1.0 {
        return Err(AwError::NonConvergent(format!(
            "|z| = {} >= 1 and no upper parameter terminates the series",
            z.norm()
        )));
    }
    let upper = upper.to_vec();
    let lower = lower.to_vec();
    let ratio = |k: usize| {
        let qk = qv.powi(k as i32);
        let mut r = z;
        for &u in &upper {
            r *= Complex64::new(1.0, 0.0) - u * qk;
        }
        r /= Complex64::new(1.0 - qv.powi(k as i32 + 1), 0.0);
        for &l in &lower {
            r /= Complex64::new(1.0, 0.0) - l * qk;
        }
        r
    };
    let bound_ratio = |k: usize| {
        let qk = qv.powi(k as i32);
        let mut r = z.norm();
        for &u in &upper {
            r *= 1.0 + u.norm() * qk;
        }
        for &l in &lower {
            let d = 1.0 - l.norm() * qk;
            if d <= 0.0 {
                return f64::INFINITY;
            }
            r /= d;
        }
        r / (1.0 - qv.powi(k as i32 + 1))
    };
    sum_series(ratio, bound_ratio, cap, eps, opts)
}

/// Very-well-poised 8W7(a; b, c, d, e, f; q, z).
///
/// The defining series; compensated summation throughout since consecutive
/// terms cancel near |z| -> 1.
pub fn w87(
    a: Complex64,
    bcdef: [Complex64; 5],
    q: QBase,
    z: Complex64,
    eps: f64,
) -> Result<SeriesValue> {
    w87_opts(a, bcdef, q, z, eps, &SumOptions::default())
}

pub(crate) fn w87_opts(
    a: Complex64,
    bcdef: [Complex64; 5],
    q: QBase,
    z: Complex64,
    eps: f64,
    opts: &SumOptions,
) -> Result<SeriesValue> {
    let qv = q.value();
    let mut denom = Vec::with_capacity(5);
    for &p in &bcdef {
        let d = qv * a / p;
        if let Some(m) = near_neg_power_lattice(d, qv, POLE_LATTICE_TOL) {
            return Err(AwError::PoleInParams { value: d, power: -m, tol: POLE_LATTICE_TOL });
        }
        denom.push(d);
    }
    // a on q^{-Z} makes the very-well-poised factor degenerate before the
    // series terminates.
    if let Some(m) = near_neg_power_lattice(a, qv, POLE_LATTICE_TOL) {
        if m > 0 {
            return Err(AwError::PoleInParams { value: a, power: -m, tol: POLE_LATTICE_TOL });
        }
    }
    let mut numer = vec![a];
    numer.extend_from_slice(&bcdef);
    let cap = termination_order(&numer, qv);
    if cap.is_none() && z.norm() >= 1.0 {
        return Err(AwError::NonConvergent(format!(
            "|z| = {} >= 1 and no numerator parameter terminates the series",
            z.norm()
        )));
    }
    let one = Complex64::new(1.0, 0.0);
    let denom_b = denom.clone();
    let ratio = move |k: usize| {
        let qk = qv.powi(k as i32);
        let q2k = qv.powi(2 * k as i32);
        let mut r = z;
        // (1 - a q^{2k+2})/(1 - a q^{2k}) * (1 - a q^k), with the k = 0 step
        // merging (1 - a q^k)/(1 - a q^{2k}) = 1 exactly.
        r *= one - a * q2k * qv * qv;
        if k == 0 {
            // (1 - a)/(1 - a) = 1
        } else {
            r *= (one - a * qk) / (one - a * q2k);
        }
        for &p in &bcdef {
            r *= one - p * qk;
        }
        r /= Complex64::new(1.0 - qv.powi(k as i32 + 1), 0.0);
        for &d in &denom {
            r /= one - d * qk;
        }
        r
    };
    let bound_ratio = move |k: usize| {
        let qk = qv.powi(k as i32);
        let q2k = qv.powi(2 * k as i32);
        let a2 = a.norm() * q2k;
        if a2 >= 1.0 {
            return f64::INFINITY;
        }
        let mut r = z.norm() * (1.0 + a.norm() * q2k * qv * qv) * (1.0 + a.norm() * qk) / (1.0 - a2);
        for &p in &bcdef {
            r *= 1.0 + p.norm() * qk;
        }
        for &d in &denom_b {
            let dd = 1.0 - d.norm() * qk;
            if dd <= 0.0 {
                return f64::INFINITY;
            }
            r /= dd;
        }
        r / (1.0 - qv.powi(k as i32 + 1))
    };
    sum_series(ratio, bound_ratio, cap, eps, opts)
}
