//! Askey-Wilson parameter management and kernels.
//!
//! The parameter tuple is (a, b, c, d, t) together with the base q. The dual
//! tuple
//!
//! ```text
//! at = sqrt(abcd/q),  bt = ab/at,  ct = ac/at,  dt = ad/at,  tt = 1/(q a d t)
//! ```
//!
//! swaps the geometric and spectral roles; dualizing twice returns the
//! original tuple. The admissible domain `V` is
//!
//! ```text
//! t < 0,   0 < b, c <= a < d/q,   bd, cd >= q,   ab, ac < 1,
//! ```
//!
//! which forces b, c < 1 and d > q and is preserved by duality.
//!
//! The function `phi_gamma(x)` solves `L phi = mu(gamma) phi` for the
//! second-order q-difference operator `L` and extends the polynomial of
//! degree n at `gamma = at q^n`. Two series representations are implemented:
//! a single very-well-poised 8W7 and a pair of balanced 4phi3's with
//! argument q. They agree on the overlap of their domains; selection is by
//! numerical safety, see [`aw_function`].

use crate::error::{AwError, Result};
use crate::qseries::sum::ScaledComplex;
use crate::qseries::{phi_series, qpoch_inf_prod_scaled, theta_scaled, w87, QBase, SeriesValue};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// Spectral parameter; consumers identify gamma with 1/gamma throughout.
pub type SpectralPoint = Complex64;

/// Relative distance inside which an evaluation point counts as sitting on a
/// pole lattice of the Askey-Wilson function and is rejected.
pub const POLE_GUARD_TOL: f64 = 1e-8;

/// Relative distance of `ad` to the lattice q^Z below which the two-4phi3
/// representation is considered degenerate and the 8W7 form is used.
pub const THETA_AD_TOL: f64 = 1e-6;

/// Decimal digits of intermediate term growth tolerated before the
/// two-4phi3 representation is abandoned for the 8W7 one.
const GROWTH_LIMIT_DECADES: f64 = 2.0;

fn c64(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// The parameter quintuple (a,b,c,d,t) with base q; the single source of
/// parameter truth. Construction checks basic sanity (q inside (0,1),
/// positive a..d, nonzero t); membership in the admissible domain `V` is a
/// separate, inspectable check ([`AWParams::violations`]).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AWParams {
    pub q: f64,
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
    pub t: f64,
}

impl AWParams {
    pub fn new(q: f64, a: f64, b: f64, c: f64, d: f64, t: f64) -> Result<Self> {
        QBase::new(q)?;
        let mut bad = Vec::new();
        for (name, v) in [("a", a), ("b", b), ("c", c), ("d", d)] {
            if !(v.is_finite() && v > 0.0) {
                bad.push(format!("{name} must be a positive real, got {v}"));
            }
        }
        if !(t.is_finite() && t != 0.0) {
            bad.push(format!("t must be a nonzero real, got {t}"));
        }
        if !bad.is_empty() {
            return Err(AwError::InvalidParams(bad));
        }
        Ok(AWParams { q, a, b, c, d, t })
    }

    pub fn qbase(&self) -> QBase {
        QBase::new(self.q).expect("validated at construction")
    }

    /// sqrt(abcd/q), the dual `a`; positive branch.
    pub fn a_tilde(&self) -> f64 {
        (self.a * self.b * self.c * self.d / self.q).sqrt()
    }

    /// The dual parameter tuple.
    pub fn dual(&self) -> AWParams {
        let at = self.a_tilde();
        AWParams {
            q: self.q,
            a: at,
            b: self.a * self.b / at,
            c: self.a * self.c / at,
            d: self.a * self.d / at,
            t: 1.0 / (self.q * self.a * self.d * self.t),
        }
    }

    /// List of violated membership conditions for the domain `V`; empty
    /// exactly when the tuple is admissible.
    pub fn violations(&self) -> Vec<String> {
        let AWParams { q, a, b, c, d, t } = *self;
        let mut v = Vec::new();
        if !(t < 0.0) {
            v.push("t < 0".to_string());
        }
        if !(0.0 < b && b <= a) {
            v.push("0 < b <= a".to_string());
        }
        if !(0.0 < c && c <= a) {
            v.push("0 < c <= a".to_string());
        }
        if !(a < d / q) {
            v.push("a < d/q".to_string());
        }
        if !(b * d >= q) {
            v.push("b*d >= q".to_string());
        }
        if !(c * d >= q) {
            v.push("c*d >= q".to_string());
        }
        if !(a * b < 1.0) {
            v.push("a*b < 1".to_string());
        }
        if !(a * c < 1.0) {
            v.push("a*c < 1".to_string());
        }
        v
    }

    pub fn in_v(&self) -> bool {
        self.violations().is_empty()
    }

    /// Reject tuples outside `V`.
    pub fn require_v(&self) -> Result<()> {
        let v = self.violations();
        if v.is_empty() {
            Ok(())
        } else {
            Err(AwError::InvalidParams(v))
        }
    }

    /// The q-lattice point `d t q^k` carrying the unbounded part of the
    /// measure.
    pub fn lattice(&self, k: i64) -> f64 {
        let p = ScaledComplex::from_complex(c64(self.q)).powi(k);
        (c64(self.d * self.t) * p.to_complex()).re
    }
}

/// Membership check for `V` with the violation list.
pub fn validate_v(p: &AWParams) -> (bool, Vec<String>) {
    let v = p.violations();
    (v.is_empty(), v)
}

/// `dualize` as a free operation.
pub fn dualize(p: &AWParams) -> AWParams {
    p.dual()
}

/// Eigenvalue of the operator `L`: mu(gamma) = -1 - at^2 + at (gamma + 1/gamma).
/// Symmetric under gamma -> 1/gamma.
pub fn mu(p: &AWParams, gamma: Complex64) -> Complex64 {
    let at = p.a_tilde();
    c64(-1.0 - at * at) + at * (gamma + gamma.finv())
}

const ALPHA_POLE_TOL: f64 = 1e-10;

/// Coefficient of the q-difference operator:
/// `alpha(x) = (1-ax)(1-bx)(1-cx)(1-dx) / ((1-x^2)(1-q x^2))`.
pub fn alpha(p: &AWParams, x: Complex64) -> Result<Complex64> {
    let sq = p.q.sqrt();
    for pole in [1.0, -1.0, 1.0 / sq, -1.0 / sq] {
        if (x - c64(pole)).norm() < ALPHA_POLE_TOL {
            return Err(AwError::PoleAtX(x));
        }
    }
    let one = c64(1.0);
    let num = (one - p.a * x) * (one - p.b * x) * (one - p.c * x) * (one - p.d * x);
    let den = (one - x * x) * (one - p.q * x * x);
    Ok(num / den)
}

/// Apply the operator: `(L f)(x) = alpha(x)(f(qx) - f(x)) + alpha(1/x)(f(x/q) - f(x))`.
pub fn apply_l<F>(p: &AWParams, f: F, x: Complex64) -> Result<Complex64>
where
    F: Fn(Complex64) -> Result<Complex64>,
{
    let ax = alpha(p, x)?;
    let axi = alpha(p, x.finv())?;
    let fx = f(x)?;
    let fqx = f(p.q * x)?;
    let fxq = f(x / p.q)?;
    Ok(ax * (fqx - fx) + axi * (fxq - fx))
}

/// Askey-Wilson polynomial of degree n: the terminating balanced 4phi3
///
/// `p_n(x) = 4phi3(q^{-n}, q^{n-1} abcd, ax, a/x; ab, ac, ad; q, q)`,
///
/// summed exactly in n+1 terms.
pub fn aw_polynomial(p: &AWParams, n: u32, x: Complex64) -> Result<Complex64> {
    if x.norm() == 0.0 {
        return Err(AwError::InvalidInput("polynomial argument x must be nonzero".into()));
    }
    let q = p.qbase();
    let upper = [
        c64(p.q.powi(-(n as i32))),
        c64(p.q.powi(n as i32 - 1) * p.a * p.b * p.c * p.d),
        p.a * x,
        c64(p.a) / x,
    ];
    let lower = [c64(p.a * p.b), c64(p.a * p.c), c64(p.a * p.d)];
    let s = phi_series(&upper, &lower, q, c64(p.q), 1e-14)?;
    Ok(s.value)
}

/// `Phi^free`: solution of the asymptotic eigenvalue equation on the lattice,
/// `Phi^free_gamma(d t q^k) = (at gamma)^{-k}`.
pub fn phi_free(p: &AWParams, gamma: Complex64, k: i64) -> Complex64 {
    ScaledComplex::from_complex(p.a_tilde() * gamma).powi(-k).to_complex()
}

/// Nearest index m >= 0 with `v` close to `base * q^m` (relative `tol`).
fn near_small_lattice(v: Complex64, base: f64, q: f64, tol: f64) -> bool {
    if v.re <= 0.0 || v.im.abs() > tol * v.norm() {
        return false;
    }
    let m = ((v.re / base).ln() / q.ln()).round();
    if m < 0.0 {
        return false;
    }
    let pt = base * q.powi(m as i32);
    (v - c64(pt)).norm() < tol * pt
}

/// Guard the geometric variable against the pole lattice {q^{1+k}/d}^{±1}.
fn guard_x_poles(p: &AWParams, x: Complex64) -> Result<()> {
    let base = p.q / p.d;
    if near_small_lattice(x, base, p.q, POLE_GUARD_TOL)
        || near_small_lattice(x.finv(), base, p.q, POLE_GUARD_TOL)
    {
        return Err(AwError::PoleAtX(x));
    }
    Ok(())
}

fn guard_gamma_poles(pd: &AWParams, gamma: Complex64) -> Result<()> {
    let base = pd.q / pd.d;
    if near_small_lattice(gamma, base, pd.q, POLE_GUARD_TOL)
        || near_small_lattice(gamma.finv(), base, pd.q, POLE_GUARD_TOL)
    {
        return Err(AwError::PoleAtGamma(gamma));
    }
    Ok(())
}

/// True when `ad` lies within [`THETA_AD_TOL`] of the lattice q^Z, where the
/// two-4phi3 representation degenerates.
pub fn theta_ad_degenerate(p: &AWParams) -> bool {
    let ad = p.a * p.d;
    let m = (ad.ln() / p.q.ln()).round();
    let pt = ScaledComplex::from_complex(c64(p.q)).powi(m as i64).to_complex().re;
    (ad - pt).abs() < THETA_AD_TOL * pt
}

/// Decimal decades of term growth for a q-series with |argument| z and
/// upper-parameter magnitudes `params`: the worst intermediate-to-final
/// magnitude ratio, and so the cancellation loss, of the partial sums.
fn growth_decades(params: &[f64], z: f64, q: f64) -> f64 {
    let mut acc = 0.0f64;
    let mut qj = 1.0f64;
    for _ in 0..600 {
        let mut r = z;
        let mut growing = false;
        for &u in params {
            let uq = u * qj;
            if uq > 1.0 {
                r *= uq;
                growing = true;
            }
        }
        if r > 1.0 {
            acc += r.log10();
        } else if !growing {
            break;
        }
        qj *= q;
    }
    acc
}

/// Representation request for [`aw_function_repr`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Representation {
    /// Pick automatically for numerical safety (the default).
    Auto,
    /// Force the single very-well-poised 8W7 form.
    EightW7,
    /// Force the two-term balanced 4phi3 form.
    TwoPhi43,
}

/// An evaluated Askey-Wilson function value with provenance.
#[derive(Clone, Copy, Debug)]
pub struct AwEval {
    pub value: Complex64,
    pub err_bound: f64,
    pub terms_used: usize,
    /// Which series representation produced the value.
    pub representation: &'static str,
}

impl AwEval {
    pub fn series_value(&self) -> SeriesValue {
        SeriesValue { value: self.value, err_bound: self.err_bound, terms_used: self.terms_used }
    }
}

/// The Askey-Wilson function `phi_gamma(x)`; symmetric under gamma -> 1/gamma
/// and x -> 1/x, eigenfunction of `L` with eigenvalue `mu(gamma)`.
///
/// Representation selection: the two-4phi3 form (argument q) is used while
/// its intermediate term growth stays below ~2 decades and `ad` is not
/// within [`THETA_AD_TOL`] of q^Z; otherwise the 8W7 form. When the spectral
/// point is much farther out than the geometric one the roles are swapped
/// through the duality `phi_gamma(x; p) = phi_x(gamma; dual p)`, which puts
/// the large variable in the slot where the 8W7 form is stable.
pub fn aw_function(p: &AWParams, gamma: Complex64, x: Complex64, eps: f64) -> Result<SeriesValue> {
    aw_function_repr(p, gamma, x, eps, Representation::Auto).map(|e| e.series_value())
}

/// As [`aw_function`], reporting the representation used. `Auto` may route
/// through the dual parameters; forced representations never do.
pub fn aw_function_repr(
    p: &AWParams,
    gamma: Complex64,
    x: Complex64,
    eps: f64,
    repr: Representation,
) -> Result<AwEval> {
    aw_function_core(p, gamma, x, eps, repr, matches!(repr, Representation::Auto))
}

fn aw_function_core(
    p: &AWParams,
    gamma: Complex64,
    x: Complex64,
    eps: f64,
    repr: Representation,
    allow_swap: bool,
) -> Result<AwEval> {
    if gamma.norm() == 0.0 || x.norm() == 0.0 {
        return Err(AwError::InvalidInput("gamma and x must be nonzero".into()));
    }
    // phi is invariant under inversion in both slots; normalize outward.
    let g = if gamma.norm() < 1.0 { gamma.finv() } else { gamma };
    let x = if x.norm() < 1.0 { x.finv() } else { x };
    let pd = p.dual();
    guard_x_poles(p, x)?;
    guard_gamma_poles(&pd, g)?;

    let at = pd.a;
    let dt = pd.d;
    let growth43 = {
        let g1 = growth_decades(&[(p.a * x).norm(), at * g.norm()], p.q, p.q);
        let g2 = growth_decades(
            &[(p.q / p.d) * x.norm(), (p.q / dt) * g.norm()],
            p.q,
            p.q,
        );
        g1.max(g2)
    };
    let degenerate43 = theta_ad_degenerate(p);

    match repr {
        Representation::TwoPhi43 => {
            if degenerate43 {
                return Err(AwError::RepresentationUnavailable { gamma: g, x });
            }
            bailey_form(p, &pd, g, x, eps, false)
        }
        Representation::EightW7 => phi8_form(p, &pd, g, x, eps, false),
        Representation::Auto => {
            if allow_swap && g.norm() > 4.0 * x.norm() && g.norm() > 50.0 {
                // Large spectral point: evaluate as the dual-side function
                // with the roles of gamma and x interchanged.
                let swapped = aw_function_core(&pd, x, g, eps, Representation::Auto, false)?;
                return Ok(AwEval {
                    representation: match swapped.representation {
                        "eight-w7" => "eight-w7 (dual)",
                        "two-phi43" => "two-phi43 (dual)",
                        other => other,
                    },
                    ..swapped
                });
            }
            // Prefer the cheap two-term form when its growth heuristic looks
            // safe, but believe the certified error bounds over the
            // heuristic: amplification the heuristic cannot see (a
            // denominator factor passing near zero, cancellation between
            // the two terms) shows up in err_bound, and then the other
            // representation gets its say.
            let bailey_first = !degenerate43 && growth43 <= GROWTH_LIMIT_DECADES;
            let run = |use_bailey: bool| -> Result<AwEval> {
                if use_bailey {
                    if degenerate43 {
                        return Err(AwError::RepresentationUnavailable { gamma: g, x });
                    }
                    bailey_form(p, &pd, g, x, eps, false)
                } else {
                    phi8_form(p, &pd, g, x, eps, true)
                }
            };
            match run(bailey_first) {
                Ok(v) if v.err_bound <= 1e-11 * v.value.norm() => Ok(v),
                Ok(v) => match run(!bailey_first) {
                    Ok(w) if w.err_bound < v.err_bound => Ok(w),
                    _ => Ok(v),
                },
                Err(
                    AwError::RepresentationUnavailable { .. } | AwError::PoleInParams { .. },
                ) => run(!bailey_first),
                Err(e) => Err(e),
            }
        }
    }
}

/// Two-term representation: a pair of balanced 4phi3's with argument q.
fn bailey_form(
    p: &AWParams,
    pd: &AWParams,
    g: Complex64,
    x: Complex64,
    eps: f64,
    _fallback: bool,
) -> Result<AwEval> {
    let q = p.qbase();
    let qv = p.q;
    let at = pd.a;
    let dt = pd.d;
    let one = c64(1.0);
    let peps = eps / 32.0;

    let upper1 = [p.a * x, c64(p.a) / x, at * g, c64(at) / g];
    let lower1 = [c64(p.a * p.b), c64(p.a * p.c), c64(p.a * p.d)];
    let s1 = phi_series(&upper1, &lower1, q, c64(qv), eps)?;
    let (pre1, pre1_rel, _) = qpoch_inf_prod_scaled(
        &[c64(p.b * p.c), c64(qv * p.a / p.d), c64(qv / (p.a * p.d))],
        q,
        peps,
    );
    let term1 = ScaledComplex::from_complex(s1.value).div(pre1);

    let upper2 = [qv * x / p.d, qv / (p.d * x) * one, qv * g / dt, qv / (dt * g) * one];
    let lower2 = [c64(qv * p.b / p.d), c64(qv * p.c / p.d), c64(qv * qv / (p.a * p.d))];
    let s2 = phi_series(&upper2, &lower2, q, c64(qv), eps)?;
    let (num2, num2_rel, _) = qpoch_inf_prod_scaled(
        &[
            p.a * x,
            c64(p.a) / x,
            at * g,
            c64(at) / g,
            c64(qv * p.b / p.d),
            c64(qv * p.c / p.d),
        ],
        q,
        peps,
    );
    let (den2, den2_rel, _) = qpoch_inf_prod_scaled(
        &[
            qv * x / p.d,
            qv / (p.d * x) * one,
            qv * g / dt,
            qv / (dt * g) * one,
            c64(p.a * p.b),
            c64(p.a * p.c),
            c64(p.b * p.c),
            c64(qv * p.a / p.d),
            c64(p.a * p.d / qv),
        ],
        q,
        peps,
    );
    let term2 = num2.div(den2).mul(ScaledComplex::from_complex(s2.value));

    let t1 = term1.to_complex();
    let t2 = term2.to_complex();
    let value = t1 + t2;
    let err1 = t1.norm() * (s1.rel_err() + pre1_rel);
    let err2 = t2.norm() * (s2.rel_err() + num2_rel + den2_rel);
    Ok(AwEval {
        value,
        err_bound: err1 + err2 + 4.0 * f64::EPSILON * (t1.norm() + t2.norm()),
        terms_used: s1.terms_used + s2.terms_used,
        representation: "two-phi43",
    })
}

/// Single very-well-poised 8W7 representation; converges for a spectral
/// point `s` with |q/(dt-dual s)| < 1. The function is invariant under
/// s -> 1/s, so [`phi8_form`] may evaluate at either representative.
fn phi8_at(
    p: &AWParams,
    pd: &AWParams,
    s: Complex64,
    x: Complex64,
    eps: f64,
) -> Result<AwEval> {
    let q = p.qbase();
    let qv = p.q;
    let at = pd.a;
    let bt = pd.b;
    let ct = pd.c;
    let dt = pd.d;
    let one = c64(1.0);
    let peps = eps / 32.0;

    let abc_g = at * bt * ct * s;
    let z = qv / (dt * s) * one;
    if z.norm() >= 1.0 {
        return Err(AwError::NonConvergent(format!(
            "|q/(dt~ s)| = {} >= 1 at s = {s}",
            z.norm()
        )));
    }
    // Prefactor denominator factors on q^{-Z+} degenerate this
    // representation (without being poles of phi itself).
    for v in [abc_g, qv * s / dt] {
        if near_small_lattice(v.finv(), qv, qv, 1e-8) || (v - one).norm() < 1e-8 {
            return Err(AwError::PoleInParams { value: v, power: 0, tol: 1e-8 });
        }
    }
    let series = w87(
        abc_g / qv,
        [p.a * x, c64(p.a) / x, at * s, bt * s, ct * s],
        q,
        z,
        eps,
    )?;
    let (num, num_rel, _) = qpoch_inf_prod_scaled(
        &[qv * p.a * x * s / dt, qv * p.a * s / (dt * x)],
        q,
        peps,
    );
    let (den, den_rel, _) = qpoch_inf_prod_scaled(
        &[
            abc_g,
            qv * s / dt,
            c64(qv * at / dt),
            qv * x / p.d,
            qv / (p.d * x) * one,
        ],
        q,
        peps,
    );
    let scaled = num.div(den).mul(ScaledComplex::from_complex(series.value));
    let value = scaled.to_complex();
    Ok(AwEval {
        value,
        err_bound: value.norm() * (series.rel_err() + num_rel + den_rel),
        terms_used: series.terms_used,
        representation: "eight-w7",
    })
}

/// 8W7 representation with an automatic retry at the inverted spectral
/// point: when the spectral point sits on (or near) a lattice that
/// degenerates the series' denominators, the mirror representative usually
/// does not, and one of the two arguments q/(dt~ g), q g/dt~ always has
/// modulus below one for |g| within (q/dt~, dt~/q).
fn phi8_form(
    p: &AWParams,
    pd: &AWParams,
    g: Complex64,
    x: Complex64,
    eps: f64,
    soft_degenerate: bool,
) -> Result<AwEval> {
    let direct = phi8_at(p, pd, g, x, eps);
    let degenerate = matches!(direct, Err(AwError::PoleInParams { .. }));
    if !degenerate {
        return direct;
    }
    match phi8_at(p, pd, g.finv(), x, eps) {
        Ok(v) => Ok(v),
        Err(_) if soft_degenerate => Err(AwError::RepresentationUnavailable { gamma: g, x }),
        Err(_) => direct,
    }
}

/// Relative residual of the duality `phi_gamma(x; p) = phi_x(gamma; dual p)`,
/// with both sides evaluated through their own (non-swapped) representations.
pub fn aw_function_dual_check(
    p: &AWParams,
    gamma: Complex64,
    x: Complex64,
    eps: f64,
) -> Result<f64> {
    let lhs = aw_function_core(p, gamma, x, eps, Representation::Auto, false)?;
    let rhs = aw_function_core(&p.dual(), x, gamma, eps, Representation::Auto, false)?;
    let scale = lhs.value.norm().max(rhs.value.norm()).max(1e-300);
    Ok((lhs.value - rhs.value).norm() / scale)
}

/// Asymptotically free solution `Phi_gamma` on the lattice point `x = dtq^k`:
/// an 8W7 with argument d/x times `Phi^free_gamma(x)`. Requires |d/x| < 1.
pub fn phi_asym(p: &AWParams, gamma: Complex64, k: i64, eps: f64) -> Result<SeriesValue> {
    if gamma.norm() == 0.0 {
        return Err(AwError::InvalidInput("gamma must be nonzero".into()));
    }
    let q = p.qbase();
    let qv = p.q;
    let pd = p.dual();
    let at = pd.a;
    let bt = pd.b;
    let ct = pd.c;
    let dt = pd.d;
    let x = c64(p.lattice(k));
    let zx = c64(p.d) / x;
    if zx.norm() >= 1.0 {
        return Err(AwError::NonConvergent(format!(
            "|d/x| = {} >= 1 at lattice index {k}; the asymptotic solution series diverges",
            zx.norm()
        )));
    }
    let g = gamma;
    let one = c64(1.0);
    let peps = eps / 32.0;
    let head = qv * g * g / (p.d * x);
    let series = w87(
        head,
        [qv * g / at, qv * g / dt, bt * g, ct * g, qv / (p.d * x) * one],
        q,
        zx,
        eps,
    )?;
    let (num, num_rel, _) = qpoch_inf_prod_scaled(
        &[
            qv * p.a * g / (at * x),
            qv * p.b * g / (at * x),
            qv * p.c * g / (at * x),
            qv * at * g / (p.d * x),
            c64(p.d) / x,
        ],
        q,
        peps,
    );
    let (den, den_rel, _) = qpoch_inf_prod_scaled(
        &[
            qv / (p.a * x) * one,
            qv / (p.b * x) * one,
            qv / (p.c * x) * one,
            qv / (p.d * x) * one,
            qv * qv * g * g / (p.d * x),
        ],
        q,
        peps,
    );
    let free = ScaledComplex::from_complex(at * g).powi(-k);
    let scaled = num
        .div(den)
        .mul(ScaledComplex::from_complex(series.value))
        .mul(free);
    let value = scaled.to_complex();
    Ok(SeriesValue {
        value,
        err_bound: value.norm() * (series.rel_err() + num_rel + den_rel),
        terms_used: series.terms_used,
    })
}

/// The c-function
///
/// ```text
/// c(gamma) = (a/g, b/g, c/g;q)_inf theta(g/dt)
///          / [ (ab,ac,bc,qa/d;q)_inf theta(qadt) (qg/d, 1/g^2;q)_inf ]
/// ```
///
/// (t is the lattice label of `p`). The dual c-function is this with the
/// dual parameter tuple. Not symmetric under gamma -> 1/gamma.
pub fn c_function(p: &AWParams, gamma: Complex64, eps: f64) -> Result<SeriesValue> {
    if gamma.norm() == 0.0 {
        return Err(AwError::InvalidInput("gamma must be nonzero".into()));
    }
    let q = p.qbase();
    let qv = p.q;
    let g = gamma;
    let one = c64(1.0);
    // Denominator zeros are genuine poles of c.
    for v in [qv * g / p.d, g.finv() * g.finv()] {
        if near_small_lattice(v.finv(), qv, qv, POLE_GUARD_TOL) || (v - one).norm() < POLE_GUARD_TOL
        {
            return Err(AwError::PoleAtGamma(gamma));
        }
    }
    // The zero set is honored exactly: rounding residue in a numerator
    // factor would otherwise be amplified without bound wherever the zero
    // multiplies an exponentially large free solution (every
    // support-on-support evaluation does exactly that).
    let on_zero_set = [p.a, p.b, p.c]
        .iter()
        .any(|&v| near_small_lattice(g, v, qv, 1e-9))
        || crate::qseries::near_q_lattice(g / (p.d * p.t), qv, 1e-9);
    if on_zero_set {
        return Ok(SeriesValue::exact(c64(0.0)));
    }
    let peps = eps / 32.0;
    let (num, num_rel, tn) = qpoch_inf_prod_scaled(
        &[c64(p.a) / g, c64(p.b) / g, c64(p.c) / g],
        q,
        peps,
    );
    let (th_num, thn_rel, _) = theta_scaled(g / (p.d * p.t), q, peps)?;
    let (den, den_rel, td) = qpoch_inf_prod_scaled(
        &[
            c64(p.a * p.b),
            c64(p.a * p.c),
            c64(p.b * p.c),
            c64(qv * p.a / p.d),
            qv * g / p.d,
            g.finv() * g.finv(),
        ],
        q,
        peps,
    );
    let (th_den, thd_rel, _) = theta_scaled(c64(qv * p.a * p.d * p.t), q, peps)?;
    let scaled = num.mul(th_num).div(den).div(th_den);
    let value = scaled.to_complex();
    Ok(SeriesValue {
        value,
        err_bound: value.norm() * (num_rel + thn_rel + den_rel + thd_rel),
        terms_used: tn + td,
    })
}

/// Value of the free-solution expansion
/// `ct(gamma) Phi_gamma(x) + ct(1/gamma) Phi_{1/gamma}(x)` at `x = d t q^k`,
/// where `ct` is the dual c-function. Exact equal to `phi_gamma(x)` for
/// |d/x| < 1; this is also the numerically stable route to the function on
/// support-on-support configurations, where both direct series degenerate.
pub fn c_expansion_rhs(p: &AWParams, gamma: Complex64, k: i64, eps: f64) -> Result<Complex64> {
    let sep = (gamma - gamma.finv()).norm();
    if sep < 1e-8 {
        // Phi_gamma and Phi_{1/gamma} coincide; the expansion degenerates.
        return Err(AwError::DegenerateSpectralPair(sep));
    }
    let pd = p.dual();
    let cg = c_function(&pd, gamma, eps)?;
    let cgi = c_function(&pd, gamma.finv(), eps)?;
    let big_g = phi_asym(p, gamma, k, eps)?;
    let big_gi = phi_asym(p, gamma.finv(), k, eps)?;
    Ok(cg.value * big_g.value + cgi.value * big_gi.value)
}

/// Relative residual of the c-function expansion at the lattice point
/// `x = d t q^k`, with the function evaluated through its direct series.
pub fn c_expansion_check(p: &AWParams, gamma: Complex64, k: i64, eps: f64) -> Result<f64> {
    let x = c64(p.lattice(k));
    let rhs = c_expansion_rhs(p, gamma, k, eps)?;
    let phi = aw_function(p, gamma, x, eps)?;
    Ok((phi.value - rhs).norm() / phi.value.norm().max(1e-300))
}

/// Recover the lattice index of a point `v ~ d t q^k`, within relative
/// `tol`.
pub fn lattice_index(p: &AWParams, v: Complex64, tol: f64) -> Option<i64> {
    let dt = p.d * p.t;
    if v.im.abs() > tol * v.norm() || v.re / dt <= 0.0 {
        return None;
    }
    let k = ((v.re / dt).ln() / p.q.ln()).round() as i64;
    let pt = p.lattice(k);
    if (v.re - pt).abs() <= tol * pt.abs() && v.im.abs() <= tol * pt.abs() {
        Some(k)
    } else {
        None
    }
}

/// Wide-precision evaluation of the 8W7 representation at the *inverted*
/// spectral point. On the dual discrete support the direct representative
/// puts a series denominator exactly on the lattice q^{-N} and the two-term
/// form cancels catastrophically at far lattice x, so this is the one route
/// to an independent high-accuracy value there. Requires |q gamma / dt~| < 1.
///
/// When `gamma` sits on the dual support it is reconstructed *in wide
/// precision* from the lattice index: the rounded f64 representative is off
/// the true support point by one ulp, and the hidden c-coefficient of the
/// growing free solution turns that ulp into a visible contribution at far
/// x (the growth reaches (at |gamma|)^|k|).
fn wide_phi8_inverted(p: &AWParams, gamma: Complex64, x: Complex64) -> Result<Complex64> {
    use crate::qseries::wide::{wqpoch_inf, ww87, Wide, WideComplex};
    let pd = p.dual();
    if (p.q * gamma / pd.d).norm() >= 1.0 {
        return Err(AwError::NonConvergent(format!(
            "inverted-representative series diverges at gamma = {gamma}"
        )));
    }
    let wq = Wide::from_f64(p.q);
    let lift = |z: Complex64| WideComplex::from_f64(z.re, z.im);
    let wat = Wide::from_f64(p.a)
        .mul(&Wide::from_f64(p.b))
        .mul(&Wide::from_f64(p.c))
        .mul(&Wide::from_f64(p.d))
        .div(&wq)
        .sqrt();
    let wbt = Wide::from_f64(p.a).mul(&Wide::from_f64(p.b)).div(&wat);
    let wct = Wide::from_f64(p.a).mul(&Wide::from_f64(p.c)).div(&wat);
    let wdt = Wide::from_f64(p.a).mul(&Wide::from_f64(p.d)).div(&wat);
    let gamma_w = if let Some(j) = lattice_index(&pd, gamma, 1e-9) {
        let wtt = Wide::one().div(
            &wq.mul(&Wide::from_f64(p.a)).mul(&Wide::from_f64(p.d)).mul(&Wide::from_f64(p.t)),
        );
        WideComplex::real(wdt.mul(&wtt).mul(&wq.powi(j)))
    } else if near_small_lattice(gamma, pd.a, p.q, 1e-9) {
        let n = ((gamma.re / pd.a).ln() / p.q.ln()).round() as i64;
        WideComplex::real(wat.mul(&wq.powi(n)))
    } else {
        lift(gamma)
    };
    let s = WideComplex::one().div(&gamma_w);
    let xw = if let Some(k) = lattice_index(p, x, 1e-9) {
        WideComplex::real(
            Wide::from_f64(p.d).mul(&Wide::from_f64(p.t)).mul(&wq.powi(k)),
        )
    } else {
        lift(x)
    };
    let xi = WideComplex::one().div(&xw);
    let abc_s = s.scale(&wat.mul(&wbt).mul(&wct));
    let head = abc_s.div(&WideComplex::real(wq.clone()));
    let z = WideComplex::real(wq.clone()).div(&s.scale(&wdt));
    let series = ww87(
        &head,
        &[
            xw.scale(&Wide::from_f64(p.a)),
            xi.scale(&Wide::from_f64(p.a)),
            s.scale(&wat),
            s.scale(&wbt),
            s.scale(&wct),
        ],
        &wq,
        &z,
    );
    let qa_dt = wq.mul(&Wide::from_f64(p.a)).div(&wdt);
    let num = wqpoch_inf(&xw.mul(&s).scale(&qa_dt), &wq)
        .mul(&wqpoch_inf(&s.div(&xw).scale(&qa_dt), &wq));
    let den = wqpoch_inf(&abc_s, &wq)
        .mul(&wqpoch_inf(&s.scale(&wq.div(&wdt)), &wq))
        .mul(&wqpoch_inf(&WideComplex::real(wq.mul(&wat).div(&wdt)), &wq))
        .mul(&wqpoch_inf(&xw.scale(&wq.div(&Wide::from_f64(p.d))), &wq))
        .mul(&wqpoch_inf(&xi.scale(&wq.div(&Wide::from_f64(p.d))), &wq));
    Ok(num.div(&den).mul(&series).to_c64())
}

/// One-term form on the dual spectral grid: for gamma in the discrete dual
/// support (`ct(gamma) = 0`),
/// `phi_gamma(x) = ct(1/gamma) Phi_{1/gamma}(x)` at lattice x far out.
/// The left side comes from a wide-precision series evaluation, the right
/// side from the f64 closed forms; returns the relative residual.
pub fn half_form_check(p: &AWParams, gamma: Complex64, k: i64, eps: f64) -> Result<f64> {
    let pd = p.dual();
    let x = c64(p.lattice(k));
    let g = if gamma.norm() < 1.0 { gamma.finv() } else { gamma };
    let phi = wide_phi8_inverted(p, g, x)?;
    let cgi = c_function(&pd, g.finv(), eps)?;
    let big_gi = phi_asym(p, g.finv(), k, eps)?;
    let rhs = cgi.value * big_gi.value;
    Ok((phi - rhs).norm() / phi.norm().max(1e-300))
}

/// Standard admissible test tuple used across the test-suite and docs:
/// q=0.4, a=0.8, b=0.6, c=0.5, d=2.5, t=-2.
pub fn standard_params() -> AWParams {
    AWParams::new(0.4, 0.8, 0.6, 0.5, 2.5, -2.0).expect("standard tuple is valid")
}
