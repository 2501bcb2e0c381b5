//! The suites hold their tolerances away from the standard tuple too.
//! These two tuples exercise layouts the standard one does not: a dual
//! base point inside the unit disc (empty plus branch, shifted support
//! heads) and a base q large enough to slow every series down.

use awft_core::awcore::AWParams;
use awft_core::suites::{self, VerifyConfig};

fn run_at(params: AWParams, suites_to_run: &[&str]) {
    let cfg = VerifyConfig {
        params,
        eps: 1e-12,
        quad_points: 128,
        k_min: -25,
        dual_k_min: -25,
        ..VerifyConfig::default()
    };
    for name in suites_to_run {
        let reports = suites::run_suite(name, &cfg).unwrap_or_else(|e| {
            panic!("suite {name} errored at {params:?}: {e}");
        });
        for r in &reports {
            assert!(
                r.pass,
                "suite {name} failed at {params:?}: {} residual {:.3e} tol {:.1e}",
                r.identity, r.residual, r.tolerance
            );
        }
    }
}

#[test]
fn suites_hold_at_tuple_with_empty_dual_plus_branch() {
    // at = sqrt(abcd/q) = 0.753 < 1; the dual minus head sits at k = +1.
    let p = AWParams::new(0.3, 0.7, 0.45, 0.3, 1.8, -1.3).unwrap();
    assert!(p.in_v() && p.dual().a < 1.0);
    run_at(p, &["norm", "ortho", "cexpansion", "wronskian"]);
}

#[test]
fn suites_hold_at_slow_base_tuple() {
    // q = 0.55 with ad four percent off 1/q: the balanced representation
    // certifies poorly and the bound-driven selection must step in.
    let p = AWParams::new(0.55, 0.9, 0.3, 0.65, 2.1, -0.7).unwrap();
    assert!(p.in_v());
    run_at(p, &["norm", "ortho", "cexpansion", "wronskian"]);
}

#[test]
fn suites_hold_with_ad_on_the_lattice() {
    // ad within 3e-7 of q^-2: the two-term representation does not exist
    // and everything must route through the very-well-poised form.
    let p = AWParams::new(0.4, 0.8, 0.6, 0.5, 7.812_502_343_7, -1.37).unwrap();
    assert!(p.in_v() && awft_core::awcore::theta_ad_degenerate(&p));
    run_at(p, &["norm", "cexpansion", "wronskian"]);
}
