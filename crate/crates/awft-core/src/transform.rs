//! The function transform, its dual, the q-Wronskian, and the verification
//! operations that certify the transform's identities numerically.
//!
//! The transform of a compactly supported symmetric function is
//!
//! ```text
//! (F f)(gamma) = integral of f(x) conj(phi_gamma(x)) d nu(x),
//! ```
//!
//! real-valued for gamma in the support of the dual measure. The dual
//! transform is the same construction under the dual parameter tuple, and
//! inverts `F` on its range.
//!
//! Verification operations return [`VerificationReport`]s embedding the
//! truncation configuration they ran under, so every number in a report can
//! be reproduced from the report alone.

use crate::awcore::{self, AWParams};
use crate::error::{AwError, Result};
use crate::measure::{
    discrete_weight_minus, discrete_weight_plus, inner_product, integrate_nu, Atom, Measure,
    TestFunction,
};
use crate::qseries::sum::Kahan;
use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

fn c64(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// Truncation configuration embedded in every verification report.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct TruncationMeta {
    pub k_min: i64,
    pub dual_k_min: Option<i64>,
    pub quad_points: usize,
    pub eps: f64,
}

impl TruncationMeta {
    pub fn of(meas: &Measure) -> Self {
        TruncationMeta {
            k_min: meas.spec.k_min,
            dual_k_min: None,
            quad_points: meas.spec.quad_points,
            eps: meas.spec.eps,
        }
    }

    pub fn with_dual(mut self, dual: &Measure) -> Self {
        self.dual_k_min = Some(dual.spec.k_min);
        self
    }
}

/// One verified identity: the two sides, the residual, and the verdict.
#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub identity: String,
    pub paper_ref: String,
    pub lhs: f64,
    pub rhs: f64,
    pub residual: f64,
    pub tolerance: f64,
    pub pass: bool,
    pub truncation: TruncationMeta,
}

impl VerificationReport {
    pub fn new(
        identity: impl Into<String>,
        label: impl Into<String>,
        lhs: f64,
        rhs: f64,
        residual: f64,
        tolerance: f64,
        truncation: TruncationMeta,
    ) -> Self {
        VerificationReport {
            identity: identity.into(),
            paper_ref: label.into(),
            lhs,
            rhs,
            residual,
            tolerance,
            pass: residual.is_finite() && residual < tolerance,
            truncation,
        }
    }
}

/// Relative certified error below which a direct series evaluation of the
/// function is accepted by [`phi_eval`].
const DIRECT_ACCEPT_REL: f64 = 1e-9;

/// Evaluate `phi_gamma(x)` robustly across the whole support.
///
/// On support-on-support configurations (spectral point on the dual
/// discrete support, x on the unbounded lattice) both direct series
/// representations degenerate: the very-well-poised form puts a denominator
/// parameter exactly on q^{-N} and the balanced form cancels
/// catastrophically. There the function is evaluated through the
/// free-solution expansion with c-function coefficients (on whichever side
/// exposes a lattice point far enough out), which is exact where it
/// converges and is certified independently by the c-expansion suite.
pub fn phi_eval(p: &AWParams, gamma: Complex64, x: Complex64, eps: f64) -> Result<Complex64> {
    phi_eval_with(p, gamma, x, eps, DIRECT_ACCEPT_REL)
}

/// As [`phi_eval`] with an explicit acceptance threshold on the certified
/// relative error of the direct evaluation.
pub fn phi_eval_with(
    p: &AWParams,
    gamma: Complex64,
    x: Complex64,
    eps: f64,
    accept_rel: f64,
) -> Result<Complex64> {
    let pd = p.dual();
    let x_idx = awcore::lattice_index(p, x, 1e-9).filter(|&k| (p.d / p.lattice(k)).abs() < 1.0);
    let g_idx =
        awcore::lattice_index(&pd, gamma, 1e-9).filter(|&j| (pd.d / pd.lattice(j)).abs() < 1.0);
    let expandable = (gamma - gamma.finv()).norm() > 1e-8;

    // The degenerate configuration: go straight to the expansion.
    if let (Some(k), Some(_)) = (x_idx, g_idx) {
        if expandable {
            return awcore::c_expansion_rhs(p, gamma, k, eps);
        }
    }
    match awcore::aw_function(p, gamma, x, eps) {
        Ok(v) if v.err_bound <= accept_rel * v.value.norm() => return Ok(v.value),
        Ok(v) => {
            if !expandable || (x_idx.is_none() && g_idx.is_none()) {
                return Ok(v.value);
            }
        }
        Err(e) => {
            if !expandable || (x_idx.is_none() && g_idx.is_none()) {
                return Err(e);
            }
        }
    }
    if let Some(k) = x_idx {
        return awcore::c_expansion_rhs(p, gamma, k, eps);
    }
    // Dual-side expansion: phi_gamma(x) = phi-dual_x(gamma) with gamma on
    // the dual lattice.
    awcore::c_expansion_rhs(&pd, x, g_idx.unwrap(), eps)
}

/// Evaluate `phi_gamma` at every circle node of the measure (in parallel;
/// the reduction order stays fixed).
pub fn phi_on_circle(
    p: &AWParams,
    gamma: Complex64,
    meas: &Measure,
    eps: f64,
) -> Result<Vec<Complex64>> {
    meas.theta_nodes
        .par_iter()
        .enumerate()
        .map(|(j, &th)| {
            if meas.node_mass[j] == 0.0 {
                return Ok(Complex64::new(0.0, 0.0));
            }
            let x = Complex64::from_polar(1.0, th);
            phi_eval(p, gamma, x, eps)
        })
        .collect()
}

fn phi_at_atoms(
    p: &AWParams,
    gamma: Complex64,
    atoms: &[Atom],
    eps: f64,
) -> Result<Vec<Complex64>> {
    atoms
        .par_iter()
        .map(|a| phi_eval(p, gamma, c64(a.x), eps))
        .collect()
}

/// `(F f)(gamma)`: the transform of a test function at one spectral point.
/// Real for gamma in the dual support; returned with its imaginary part for
/// diagnostics.
pub fn forward(
    p: &AWParams,
    f: &TestFunction,
    gamma: Complex64,
    meas: &Measure,
    eps: f64,
) -> Result<Complex64> {
    let mut acc = Kahan::new();
    if f.circle.is_some() {
        let phis = phi_on_circle(p, gamma, meas, eps)?;
        for (j, &th) in meas.theta_nodes.iter().enumerate() {
            let fv = f.circle_value(th);
            if fv != 0.0 && meas.node_mass[j] != 0.0 {
                acc.add(meas.node_mass[j] * fv * phis[j].conj());
            }
        }
    }
    for a in meas.plus.iter() {
        let fv = f.atom_value(false, a.k);
        if fv != 0.0 {
            let phi = phi_eval(p, gamma, c64(a.x), eps)?;
            acc.add(a.mass * fv * phi.conj());
        }
    }
    for a in meas.minus.iter() {
        let fv = f.atom_value(true, a.k);
        if fv != 0.0 {
            let phi = phi_eval(p, gamma, c64(a.x), eps)?;
            acc.add(a.mass * fv * phi.conj());
        }
    }
    Ok(acc.value())
}

/// Real part of [`forward`]; the honest value on the dual support.
pub fn forward_real(
    p: &AWParams,
    f: &TestFunction,
    gamma: Complex64,
    meas: &Measure,
    eps: f64,
) -> Result<f64> {
    Ok(forward(p, f, gamma, meas, eps)?.re)
}

/// The dual transform of a test function living on the dual side: the same
/// construction under the dual parameter tuple. `dual_meas` must be built
/// from the dual spec.
pub fn dual_forward(
    p: &AWParams,
    g: &TestFunction,
    x: Complex64,
    dual_meas: &Measure,
    eps: f64,
) -> Result<Complex64> {
    forward(&p.dual(), g, x, dual_meas, eps)
}

/// `(F f)` sampled over a full dual evaluation grid: the dual circle nodes
/// plus the dual discrete representatives down to the dual truncation index.
#[derive(Clone, Debug)]
pub struct SpectralFunction {
    pub circle: Vec<f64>,
    pub plus: Vec<f64>,
    pub minus: Vec<f64>,
}

impl SpectralFunction {
    pub fn zeros(dual_meas: &Measure) -> Self {
        SpectralFunction {
            circle: vec![0.0; dual_meas.theta_nodes.len()],
            plus: vec![0.0; dual_meas.plus.len()],
            minus: vec![0.0; dual_meas.minus.len()],
        }
    }
}

/// Sample the transform of `f` on every node of the dual measure.
pub fn forward_sample(
    p: &AWParams,
    f: &TestFunction,
    meas: &Measure,
    dual_meas: &Measure,
    eps: f64,
) -> Result<SpectralFunction> {
    // Gather the support of f once; every spectral node integrates over it.
    let circle_support: Vec<(usize, f64, f64)> = meas
        .theta_nodes
        .iter()
        .enumerate()
        .filter_map(|(j, &th)| {
            let fv = f.circle_value(th);
            if fv != 0.0 && meas.node_mass[j] != 0.0 {
                Some((j, th, fv * meas.node_mass[j]))
            } else {
                None
            }
        })
        .collect();
    let atom_support: Vec<(f64, f64)> = meas
        .plus
        .iter()
        .map(|a| (a.x, f.atom_value(false, a.k) * a.mass))
        .chain(meas.minus.iter().map(|a| (a.x, f.atom_value(true, a.k) * a.mass)))
        .filter(|&(_, w)| w != 0.0)
        .collect();

    let eval_at = |gamma: Complex64| -> Result<f64> {
        let mut acc = Kahan::new();
        for &(_, th, w) in &circle_support {
            let x = Complex64::from_polar(1.0, th);
            acc.add(w * phi_eval(p, gamma, x, eps)?.conj());
        }
        for &(x, w) in &atom_support {
            acc.add(w * phi_eval(p, gamma, c64(x), eps)?.conj());
        }
        Ok(acc.value().re)
    };

    let circle: Vec<f64> = dual_meas
        .theta_nodes
        .par_iter()
        .enumerate()
        .map(|(j, &th)| {
            if dual_meas.node_mass[j] == 0.0 {
                return Ok(0.0);
            }
            eval_at(Complex64::from_polar(1.0, th))
        })
        .collect::<Result<Vec<_>>>()?;
    let plus: Vec<f64> = dual_meas
        .plus
        .par_iter()
        .map(|a| eval_at(c64(a.x)))
        .collect::<Result<Vec<_>>>()?;
    let minus: Vec<f64> = dual_meas
        .minus
        .par_iter()
        .map(|a| eval_at(c64(a.x)))
        .collect::<Result<Vec<_>>>()?;
    Ok(SpectralFunction { circle, plus, minus })
}

/// Evaluate the dual transform of a sampled spectral function back at a
/// geometric point: `(F-dual g)(x) = integral of g(gamma) phi_gamma(x) d nu-dual`.
pub fn dual_forward_eval(
    p: &AWParams,
    g: &SpectralFunction,
    dual_meas: &Measure,
    x: Complex64,
    eps: f64,
) -> Result<f64> {
    let mut acc = Kahan::new();
    for (j, &th) in dual_meas.theta_nodes.iter().enumerate() {
        if dual_meas.node_mass[j] != 0.0 && g.circle[j] != 0.0 {
            let gamma = Complex64::from_polar(1.0, th);
            let phi = phi_eval(p, gamma, x, eps)?;
            acc.add(dual_meas.node_mass[j] * g.circle[j] * phi);
        }
    }
    for (i, a) in dual_meas.plus.iter().enumerate() {
        if g.plus[i] != 0.0 {
            let phi = phi_eval(p, c64(a.x), x, eps)?;
            acc.add(a.mass * g.plus[i] * phi);
        }
    }
    for (i, a) in dual_meas.minus.iter().enumerate() {
        if g.minus[i] != 0.0 {
            let phi = phi_eval(p, c64(a.x), x, eps)?;
            acc.add(a.mass * g.minus[i] * phi);
        }
    }
    Ok(acc.value().re)
}

/// Pairing of two sampled spectral functions in the dual Hilbert space,
/// with the magnitude of the last discrete tail term as a truncation
/// estimate.
pub fn spectral_inner(dual_meas: &Measure, f: &SpectralFunction, g: &SpectralFunction) -> (f64, f64) {
    let mut acc = Kahan::new();
    for (j, &m) in dual_meas.node_mass.iter().enumerate() {
        if m != 0.0 {
            acc.add(c64(m * f.circle[j] * g.circle[j]));
        }
    }
    for (i, a) in dual_meas.plus.iter().enumerate() {
        acc.add(c64(a.mass * f.plus[i] * g.plus[i]));
    }
    let mut last = 0.0;
    for (i, a) in dual_meas.minus.iter().enumerate() {
        last = a.mass * f.minus[i] * g.minus[i];
        acc.add(c64(last));
    }
    (acc.value().re, last.abs())
}

/// The q-Wronskian
/// `[f, g](x) = 2 nu({x}) alpha(x) (f(x) g(qx) - f(qx) g(x))` at the lattice
/// point `x = d t q^k` of the unbounded discrete support.
pub fn wronskian<F, G>(p: &AWParams, f: F, g: G, k: i64, eps: f64) -> Result<Complex64>
where
    F: Fn(Complex64) -> Result<Complex64>,
    G: Fn(Complex64) -> Result<Complex64>,
{
    let x = c64(p.lattice(k));
    let w = discrete_weight_minus(p, k, eps)?;
    let al = awcore::alpha(p, x)?;
    let qx = p.q * x;
    let v = f(x)? * g(qx)? - f(qx)? * g(x)?;
    Ok(2.0 * w.value.re * al * v)
}

/// The truncated pairing `integral of chi_k phi_gamma phi_gamma' d nu`
/// (no conjugation): circle part, all of S+, and the S- atoms with index
/// >= `floor`.
pub fn truncated_pairing(
    p: &AWParams,
    meas: &Measure,
    gamma: Complex64,
    gamma2: Complex64,
    floor: i64,
    eps: f64,
) -> Result<Complex64> {
    if floor < meas.spec.k_min {
        return Err(AwError::TruncationNotConverged(format!(
            "chi floor {floor} lies below the tabulated k_min {}",
            meas.spec.k_min
        )));
    }
    let p1 = phi_on_circle(p, gamma, meas, eps)?;
    let p2 = phi_on_circle(p, gamma2, meas, eps)?;
    let mut acc = Kahan::new();
    for (j, &m) in meas.node_mass.iter().enumerate() {
        if m != 0.0 {
            acc.add(m * p1[j] * p2[j]);
        }
    }
    let a1 = phi_at_atoms(p, gamma, &meas.plus, eps)?;
    let a2 = phi_at_atoms(p, gamma2, &meas.plus, eps)?;
    for (i, a) in meas.plus.iter().enumerate() {
        acc.add(a.mass * a1[i] * a2[i]);
    }
    let kept: Vec<Atom> = meas.minus.iter().copied().filter(|a| a.k >= floor).collect();
    let m1 = phi_at_atoms(p, gamma, &kept, eps)?;
    let m2 = phi_at_atoms(p, gamma2, &kept, eps)?;
    for (i, a) in kept.iter().enumerate() {
        acc.add(a.mass * m1[i] * m2[i]);
    }
    Ok(acc.value())
}

/// Result of a full (untruncated) pairing with geometric tail completion.
#[derive(Clone, Copy, Debug)]
pub struct PairIntegral {
    pub value: f64,
    /// Contribution added for the S- tail below `k_min` by geometric
    /// extrapolation of the observed term ratio.
    pub tail_added: f64,
    /// Magnitude bound on what the extrapolation may have missed.
    pub tail_uncertainty: f64,
}

/// `integral of phi_gamma conj(phi_gamma') d nu` over the whole support,
/// completing the S- tail geometrically: far out the terms approach an
/// exact ratio (the weight decay times the free-solution decay), so the
/// observed ratio of the last atoms extends the sum with error of the order
/// of the lattice parameter to the power |k_min|.
pub fn pair_integral(
    p: &AWParams,
    meas: &Measure,
    gamma: Complex64,
    gamma2: Complex64,
    eps: f64,
) -> Result<PairIntegral> {
    let p1 = phi_on_circle(p, gamma, meas, eps)?;
    let p2 = phi_on_circle(p, gamma2, meas, eps)?;
    let mut acc = Kahan::new();
    for (j, &m) in meas.node_mass.iter().enumerate() {
        if m != 0.0 {
            acc.add(m * p1[j] * p2[j].conj());
        }
    }
    let a1 = phi_at_atoms(p, gamma, &meas.plus, eps)?;
    let a2 = phi_at_atoms(p, gamma2, &meas.plus, eps)?;
    for (i, a) in meas.plus.iter().enumerate() {
        acc.add(a.mass * a1[i] * a2[i].conj());
    }
    let m1 = phi_at_atoms(p, gamma, &meas.minus, eps)?;
    let m2 = phi_at_atoms(p, gamma2, &meas.minus, eps)?;
    let mut terms = Vec::with_capacity(meas.minus.len());
    for (i, a) in meas.minus.iter().enumerate() {
        let t = a.mass * m1[i] * m2[i].conj();
        terms.push(t);
        acc.add(t);
    }
    let n = terms.len();
    let mut tail_added = Complex64::new(0.0, 0.0);
    let mut tail_uncertainty = 0.0;
    if n >= 3 {
        let t_last = terms[n - 1];
        let r = t_last / terms[n - 2];
        let r_prev = terms[n - 2] / terms[n - 3];
        let drift = (r - r_prev).norm();
        if r.norm() < 0.995 && t_last.norm() > 0.0 {
            tail_added = t_last * r / (Complex64::new(1.0, 0.0) - r);
            // The ratio converges like q^k; its residual drift bounds the
            // extrapolation error.
            tail_uncertainty =
                tail_added.norm() * (2.0 * drift / (1.0 - r.norm())) + t_last.norm() * 1e-12;
            acc.add(tail_added);
        } else if t_last.norm() > 0.0 {
            tail_uncertainty = t_last.norm() / (1.0 - r.norm().min(0.999));
        }
    }
    Ok(PairIntegral {
        value: acc.value().re,
        tail_added: tail_added.re,
        tail_uncertainty,
    })
}

fn phi_closure<'a>(
    p: &'a AWParams,
    gamma: Complex64,
    eps: f64,
) -> impl Fn(Complex64) -> Result<Complex64> + 'a {
    move |x| phi_eval(p, gamma, x, eps)
}

/// Identity behind the Plancherel argument: for distinct eigenvalues,
///
/// ```text
/// integral of chi_k phi_g phi_g' d nu
///   = [phi_g, phi_g'](d t q^{k-1}) / (mu(g) - mu(g'))
/// ```
///
/// for k far enough below the head of S-.
pub fn verify_wronskian_identity(
    p: &AWParams,
    meas: &Measure,
    gamma: Complex64,
    gamma2: Complex64,
    k: i64,
    tolerance: f64,
    eps: f64,
) -> Result<VerificationReport> {
    let dmu = awcore::mu(p, gamma) - awcore::mu(p, gamma2);
    if dmu.norm() <= 1e-8 {
        return Err(AwError::DegenerateSpectralPair(dmu.norm()));
    }
    let lhs = truncated_pairing(p, meas, gamma, gamma2, k, eps)?;
    let w = wronskian(p, phi_closure(p, gamma, eps), phi_closure(p, gamma2, eps), k - 1, eps)?;
    let rhs = w / dmu;
    let scale = lhs.norm().max(rhs.norm()).max(1e-300);
    let residual = (lhs - rhs).norm() / scale;
    Ok(VerificationReport::new(
        format!("wronskian: gamma={gamma:.6}, gamma'={gamma2:.6}, k={k}"),
        "truncated pairing equals the q-Wronskian over the eigenvalue gap",
        lhs.norm(),
        rhs.norm(),
        residual,
        tolerance,
        TruncationMeta::of(meas),
    ))
}

/// Reference to a point of the discrete dual support.
#[derive(Clone, Copy, Debug)]
pub struct DualAtomRef {
    pub minus_side: bool,
    pub k: i64,
}

impl DualAtomRef {
    pub fn gamma(&self, p: &AWParams) -> f64 {
        let pd = p.dual();
        if self.minus_side {
            pd.lattice(self.k)
        } else {
            pd.a * pd.q.powi(self.k as i32)
        }
    }

    /// The dual mass 2 nu-dual({gamma}) with fault scaling applied.
    pub fn dual_mass(&self, p: &AWParams, meas: &Measure, eps: f64) -> Result<f64> {
        let pd = p.dual();
        let w = if self.minus_side {
            discrete_weight_minus(&pd, self.k, eps)?.value.re * meas.spec.faults.weight_minus
        } else {
            discrete_weight_plus(&pd, self.k, eps)?.value.re * meas.spec.faults.weight_plus
        };
        Ok(2.0 * w)
    }
}

/// Orthogonality of two eigenfunctions attached to distinct points of the
/// dual discrete support: their pairing, normalized by their norms, must
/// vanish within the truncation budget.
pub fn verify_orthogonality(
    p: &AWParams,
    meas: &Measure,
    g1: DualAtomRef,
    g2: DualAtomRef,
    tolerance: f64,
    eps: f64,
) -> Result<VerificationReport> {
    let gamma1 = c64(g1.gamma(p));
    let gamma2 = c64(g2.gamma(p));
    let cross = pair_integral(p, meas, gamma1, gamma2, eps)?;
    let n1 = pair_integral(p, meas, gamma1, gamma1, eps)?;
    let n2 = pair_integral(p, meas, gamma2, gamma2, eps)?;
    let scale = (n1.value * n2.value).sqrt();
    let residual = cross.value.abs() / scale;
    Ok(VerificationReport::new(
        format!("ortho: gamma={:.9}, gamma'={:.9}", gamma1.re, gamma2.re),
        "eigenfunctions at distinct dual support points are orthogonal",
        cross.value,
        0.0,
        residual,
        tolerance,
        TruncationMeta::of(meas),
    ))
}

/// Quadratic norm identity on the dual discrete support:
/// `integral of |phi_gamma|^2 d nu = 1 / (2 nu-dual({gamma}))`.
pub fn verify_norm(
    p: &AWParams,
    meas: &Measure,
    g: DualAtomRef,
    tolerance: f64,
    eps: f64,
) -> Result<VerificationReport> {
    let gamma = c64(g.gamma(p));
    let lhs = pair_integral(p, meas, gamma, gamma, eps)?;
    let rhs = 1.0 / g.dual_mass(p, meas, eps)?;
    let residual = (lhs.value - rhs).abs() / rhs.abs();
    Ok(VerificationReport::new(
        format!("norm: gamma={:.9}", gamma.re),
        "quadratic norm equals the reciprocal dual mass",
        lhs.value,
        rhs,
        residual,
        tolerance,
        TruncationMeta::of(meas),
    ))
}

/// Norm of a test function under the measure.
pub fn nu_norm(f: &TestFunction, meas: &Measure) -> Result<f64> {
    Ok(inner_product(f, f, meas)?.max(0.0).sqrt())
}

/// Isometry on a pair of test functions:
/// `<F f, F g>_dual = <f, g>`, normalized by the norms of f and g.
pub fn verify_plancherel(
    p: &AWParams,
    f: &TestFunction,
    g: &TestFunction,
    meas: &Measure,
    dual_meas: &Measure,
    sector: &str,
    tolerance: f64,
    eps: f64,
) -> Result<VerificationReport> {
    let rhs = inner_product(f, g, meas)?;
    let ff = forward_sample(p, f, meas, dual_meas, eps)?;
    let fg = forward_sample(p, g, meas, dual_meas, eps)?;
    let (lhs, _tail) = spectral_inner(dual_meas, &ff, &fg);
    let scale = (nu_norm(f, meas)? * nu_norm(g, meas)?).max(1e-300);
    let residual = (lhs - rhs).abs() / scale;
    Ok(VerificationReport::new(
        format!("plancherel-{sector}"),
        "the transform preserves the pairing",
        lhs,
        rhs,
        residual,
        tolerance,
        TruncationMeta::of(meas).with_dual(dual_meas),
    ))
}

/// Round trip on atoms: entries of the matrix
/// `(F-dual (F 1_{x_i}))(x_j)`, which must reproduce the identity.
pub fn inversion_matrix(
    p: &AWParams,
    ks: &[i64],
    meas: &Measure,
    dual_meas: &Measure,
    eps: f64,
) -> Result<Vec<Vec<f64>>> {
    let mut rows = Vec::with_capacity(ks.len());
    for &ki in ks {
        let f = TestFunction::atom_minus(ki);
        let ff = forward_sample(p, &f, meas, dual_meas, eps)?;
        let mut row = Vec::with_capacity(ks.len());
        for &kj in ks {
            let x = c64(p.lattice(kj));
            row.push(dual_forward_eval(p, &ff, dual_meas, x, eps)?);
        }
        rows.push(row);
    }
    Ok(rows)
}

/// Transform of a single atom evaluated at one spectral point; convenience
/// used by tests and the command-line front end.
pub fn forward_atom(
    p: &AWParams,
    k: i64,
    gamma: Complex64,
    meas: &Measure,
    eps: f64,
) -> Result<f64> {
    let f = TestFunction::atom_minus(k);
    let _ = integrate_nu(&f, meas)?;
    forward_real(p, &f, gamma, meas, eps)
}
