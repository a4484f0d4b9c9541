//! Acceptance suite: one line per criterion, tolerances pinned below.
//!
//! Criteria listed in `KNOWN_FAILURES` are reported as FAIL and do not fail the
//! run; if one of them starts passing the run fails so the list is kept honest.

use std::process::ExitCode;

use mathisson_top::checks::{
    a_independence, autoparallel, closure, conservation, covariance, dan_parallel, homogenization,
    homogenization_settings, mathisson, variationality, zermelo, HOMOGENIZATION_SETTING,
};
use mathisson_top::dynamics::{autoparallel_rhs, KinState, Params};
use mathisson_top::integrator::{integrate, IntegratorConfig, Method};
use mathisson_top::minkowski::{FourVector, Signature};
use mathisson_top::sampling::case_rng;
use mathisson_top::variational::{contact_to_homogeneous, homogeneous_to_contact, ContactJet3};
use rand::Rng;

const SEED: u64 = 20_240_229;

const VARIATIONALITY_SAMPLES: usize = 200;
const VARIATIONALITY_ANGLE: f64 = 1e-6;
const VARIATIONALITY_SPREAD: f64 = 1e-6;
/// Frozen proportionality constant between the Euler–Lagrange covector and the residual.
const VARIATIONALITY_RATIO: f64 = 1.0;

const ZERMELO_SAMPLES: usize = 200;
const ZERMELO_INFINITESIMAL: f64 = 1e-8;
const ZERMELO_FINITE: f64 = 1e-9;

const AUTOPARALLEL_SAMPLES: usize = 100;
const AUTOPARALLEL_TOL: f64 = 1e-6;

const CLOSURE_SAMPLES: usize = 200;
const CLOSURE_TOL: f64 = 1e-9;

const CONSERVATION_TOL: f64 = 1e-10;
const CONSERVATION_DRIFT: f64 = 1e-8;
const CONSERVATION_SWEEP: [f64; 4] = [1e-8, 1e-9, 1e-10, 1e-11];
/// Drift per unit tolerance allowed anywhere in the sweep.
const CONSERVATION_SLOPE_BOUND: f64 = 10.0;

const A_INDEPENDENCE_TAU: f64 = 5.0;
const A_INDEPENDENCE_INTEGRATOR_TOL: f64 = 1e-12;
const A_INDEPENDENCE_TOL: f64 = 1e-7;

const MATHISSON_TOL: f64 = 1e-7;
const DAN_SAMPLES: usize = 200;
const DAN_RANK1_TOL: f64 = 1e-8;

const COVARIANCE_SAMPLES: usize = 100;
const COVARIANCE_TOL: f64 = 1e-9;

const JET_SAMPLES: usize = 500;
const JET_TOL: f64 = 1e-12;

const RK4_MIN_SLOPE: f64 = 3.8;
const GEODESIC_TOL: f64 = 1e-12;
const HARMONIC_ENERGY_DRIFT: f64 = 1e-8;

const HOMOGENIZATION_SAMPLES: usize = 100;
const HOMOGENIZATION_ANGLE: f64 = 1e-6;

const KNOWN_FAILURES: [&str; 1] = ["7a"];

struct Outcome {
    id: &'static str,
    title: &'static str,
    passed: bool,
    detail: String,
}

fn outcome(id: &'static str, title: &'static str, passed: bool, detail: String) -> Outcome {
    Outcome {
        id,
        title,
        passed,
        detail,
    }
}

fn crit1() -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    for alpha in 0..4 {
        let st = variationality(alpha, SEED, VARIATIONALITY_SAMPLES, Signature::LORENTZIAN).unwrap();
        ok &= st.max_angle <= VARIATIONALITY_ANGLE
            && st.ratio_spread <= VARIATIONALITY_SPREAD
            && (st.mean_ratio - VARIATIONALITY_RATIO).abs() <= VARIATIONALITY_SPREAD;
        parts.push(format!(
            "a{alpha}: angle {:.1e} spread {:.1e} ratio {:.9}",
            st.max_angle, st.ratio_spread, st.mean_ratio
        ));
    }
    outcome("1", "variationality", ok, parts.join("; "))
}

fn crit2() -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    for alpha in 0..4 {
        let st = zermelo(alpha, SEED, ZERMELO_SAMPLES).unwrap();
        ok &=
            st.max_r1 <= ZERMELO_INFINITESIMAL && st.max_r2 <= ZERMELO_INFINITESIMAL && st.max_finite <= ZERMELO_FINITE;
        parts.push(format!(
            "a{alpha}: r1 {:.1e} r2 {:.1e} finite {:.1e}",
            st.max_r1, st.max_r2, st.max_finite
        ));
    }
    outcome("2", "zermelo conditions", ok, parts.join("; "))
}

fn crit3() -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    for a_const in [0.0, 0.5, 1.0] {
        let st = autoparallel(a_const, SEED, AUTOPARALLEL_SAMPLES).unwrap();
        let worst = st.max_c1.max(st.max_c2).max(st.max_kappa).max(st.max_mu);
        ok &= worst <= AUTOPARALLEL_TOL;
        parts.push(format!(
            "A={a_const}: c1 {:.1e} c2 {:.1e} kappa {:.1e} mu {:.1e}",
            st.max_c1, st.max_c2, st.max_kappa, st.max_mu
        ));
    }
    outcome("3", "autoparallel conditions", ok, parts.join("; "))
}

fn crit4() -> Outcome {
    let r = closure(SEED, CLOSURE_SAMPLES).unwrap();
    outcome(
        "4",
        "closure",
        r <= CLOSURE_TOL,
        format!("max relative residual {r:.1e}"),
    )
}

fn crit5() -> Outcome {
    let runs = conservation(&CONSERVATION_SWEEP).unwrap();
    let at = runs.iter().find(|r| r.tol == CONSERVATION_TOL).unwrap();
    let slope = runs
        .iter()
        .map(|r| r.first_integral_drift.max(r.pirani_drift) / r.tol)
        .fold(0.0, f64::max);
    let ok = at.first_integral_drift <= CONSERVATION_DRIFT
        && at.pirani_drift <= CONSERVATION_DRIFT
        && slope <= CONSERVATION_SLOPE_BOUND;
    let sweep: Vec<String> = runs
        .iter()
        .map(|r| format!("{:.0e}:{:.1e}/{:.1e}", r.tol, r.first_integral_drift, r.pirani_drift))
        .collect();
    outcome(
        "5",
        "conservation",
        ok,
        format!("drift per tolerance {slope:.1e}; sweep {}", sweep.join(" ")),
    )
}

fn crit6() -> Outcome {
    let d = a_independence(A_INDEPENDENCE_TAU, A_INDEPENDENCE_INTEGRATOR_TOL).unwrap();
    outcome(
        "6",
        "parametrization independence",
        d <= A_INDEPENDENCE_TOL,
        format!("max distance {d:.1e}"),
    )
}

fn crit7a() -> Outcome {
    let m = mathisson(1e-12).unwrap();
    outcome(
        "7a",
        "mathisson equation along a solution",
        m.literal <= MATHISSON_TOL,
        format!(
            "relative residual {:.1e}; with S -> -S {:.1e}; fitted m0 ratio {:.6}",
            m.literal, m.mirrored, m.mass_ratio
        ),
    )
}

fn crit7b() -> Outcome {
    let r = dan_parallel(SEED, DAN_SAMPLES).unwrap();
    outcome(
        "7b",
        "spin-vector and euler-poisson parallel",
        r <= DAN_RANK1_TOL,
        format!("sigma2/sigma1 {r:.1e}"),
    )
}

fn crit8() -> Outcome {
    let st = covariance(SEED, COVARIANCE_SAMPLES).unwrap();
    let worst = [st.dan, st.euler_poisson, st.mathisson, st.autoparallel, st.lagrangian]
        .into_iter()
        .fold(0.0, f64::max);
    outcome(
        "8",
        "lorentz covariance",
        worst <= COVARIANCE_TOL,
        format!(
            "dan {:.1e} ep {:.1e} mathisson {:.1e} rhs {:.1e} lagrangian {:.1e}",
            st.dan, st.euler_poisson, st.mathisson, st.autoparallel, st.lagrangian
        ),
    )
}

/// Product of truncated power series with coefficients up to degree 3.
fn series_mul(a: &[f64; 4], b: &[f64; 4]) -> [f64; 4] {
    let mut out = [0.0; 4];
    for i in 0..4 {
        for j in 0..4 - i {
            out[i + j] += a[i] * b[j];
        }
    }
    out
}

/// Derivatives at 0 of `x(t(τ))` for cubic `x` about `t(0)` and cubic `t`, by series composition.
fn composed_derivatives(x_derivs: [f64; 3], t_derivs: [f64; 3]) -> [f64; 3] {
    let dt = [0.0, t_derivs[0], t_derivs[1] / 2.0, t_derivs[2] / 6.0];
    let dt2 = series_mul(&dt, &dt);
    let dt3 = series_mul(&dt2, &dt);
    let c = [x_derivs[0], x_derivs[1] / 2.0, x_derivs[2] / 6.0];
    let series: [f64; 4] = std::array::from_fn(|k| c[0] * dt[k] + c[1] * dt2[k] + c[2] * dt3[k]);
    [series[1], 2.0 * series[2], 6.0 * series[3]]
}

fn crit9() -> Outcome {
    let mut worst_oracle: f64 = 0.0;
    let mut worst_round: f64 = 0.0;
    for k in 0..JET_SAMPLES {
        let mut rng = case_rng(SEED, "acceptance-jets", k);
        let mut v3 = || -> [f64; 3] { std::array::from_fn(|_| rng.gen_range(-2.0..2.0)) };
        let cj = ContactJet3 {
            t: 0.0,
            x: v3(),
            v1: v3(),
            v2: v3(),
            v3: v3(),
        };
        let cj = ContactJet3 {
            t: rng.gen_range(-2.0..2.0),
            ..cj
        };
        let t_derivs = [
            rng.gen_range(0.2..2.0),
            rng.gen_range(-2.0..2.0),
            rng.gen_range(-2.0..2.0),
        ];
        let hj = contact_to_homogeneous(&cj, t_derivs).unwrap();
        let got = [hj.d1, hj.d2, hj.d3];
        for (o, &td) in t_derivs.iter().enumerate() {
            worst_oracle = worst_oracle.max((got[o][0] - td).abs() / td.abs().max(1.0));
        }
        for i in 0..3 {
            let want = composed_derivatives([cj.v1[i], cj.v2[i], cj.v3[i]], t_derivs);
            for o in 0..3 {
                let err = (got[o][i + 1] - want[o]).abs() / want[o].abs().max(1.0);
                worst_oracle = worst_oracle.max(err);
            }
        }
        let back = homogeneous_to_contact(&hj).unwrap();
        let pairs = [(back.v1, cj.v1), (back.v2, cj.v2), (back.v3, cj.v3), (back.x, cj.x)];
        for (a, b) in pairs {
            for i in 0..3 {
                worst_round = worst_round.max((a[i] - b[i]).abs() / b[i].abs().max(1.0));
            }
        }
        worst_round = worst_round.max((back.t - cj.t).abs());
    }
    outcome(
        "9",
        "jet transform",
        worst_oracle <= JET_TOL && worst_round <= JET_TOL,
        format!("oracle {worst_oracle:.1e} round trip {worst_round:.1e}"),
    )
}

fn harmonic_params() -> Params {
    Params::with_mass(1.0, FourVector::new(0.0, 0.0, 0.0, 1.0), 0.0, Signature::LORENTZIAN).unwrap()
}

/// `ẋ = u, u̇ = a, ȧ = −u` with `a(0) = −x(0)` has the solution `x = x0 cos τ + u0 sin τ`.
fn harmonic(method: Method, h0: f64, tol: f64, tau_end: f64) -> (f64, f64) {
    let x0 = FourVector::new(1.0, -0.5, 0.25, 2.0);
    let u0 = FourVector::new(0.3, 1.0, -0.7, 0.1);
    let y0 = KinState::new(x0, u0, -x0);
    let cfg = IntegratorConfig {
        method,
        h0,
        tol_abs: tol,
        tol_rel: tol,
        tau_end,
        max_steps: 10_000_000,
    };
    let tr = integrate(|st: &KinState, _: &Params| Ok(-st.u), &y0, &harmonic_params(), &cfg).unwrap();
    let mut err: f64 = 0.0;
    let mut energy_drift: f64 = 0.0;
    let energy = |st: &KinState| -> f64 { st.u.0.iter().chain(st.x.0.iter()).map(|c| c * c).sum() };
    let e0 = energy(&y0);
    for s in &tr.samples {
        let exact = x0 * s.tau.cos() + u0 * s.tau.sin();
        err = err.max((s.state.x - exact).max_abs());
        energy_drift = energy_drift.max((energy(&s.state) - e0).abs() / e0);
    }
    (err, energy_drift)
}

fn crit10() -> Outcome {
    let hs = [0.2, 0.1, 0.05];
    let errs: Vec<f64> = hs
        .iter()
        .map(|&h| harmonic(Method::Rk4Fixed, h, 1e-10, 10.0).0)
        .collect();
    let slope = (errs[0] / errs[2]).ln() / (hs[0] / hs[2]).ln();

    let g = Signature::LORENTZIAN;
    let u0 = FourVector::new(1.3, 0.4, -0.5, 0.6);
    let s = FourVector::new(0.0, 0.2, 0.7, 0.3);
    let x0 = FourVector::new(0.5, 1.0, -1.0, 2.0);
    let p = Params::with_mass(1.0, s, 0.5, g).unwrap();
    let tr = integrate(
        autoparallel_rhs,
        &KinState::new(x0, u0, FourVector::ZERO),
        &p,
        &IntegratorConfig::default(),
    )
    .unwrap();
    let geodesic = tr
        .samples
        .iter()
        .map(|smp| {
            (smp.state.x - (x0 + u0 * smp.tau))
                .max_abs()
                .max((smp.state.u - u0).max_abs())
        })
        .fold(0.0, f64::max);

    let period = std::f64::consts::TAU;
    let (_, energy) = harmonic(Method::Rk45Adaptive, 1e-2, 1e-10, 10.0 * period);
    outcome(
        "10",
        "integrator validation",
        slope >= RK4_MIN_SLOPE && geodesic <= GEODESIC_TOL && energy <= HARMONIC_ENERGY_DRIFT,
        format!("rk4 slope {slope:.3}; geodesic {geodesic:.1e}; harmonic energy drift {energy:.1e}"),
    )
}

fn crit11() -> Outcome {
    let mut ok = false;
    let mut parts = Vec::new();
    for (label, g) in homogenization_settings().unwrap() {
        let st = homogenization(g, SEED, HOMOGENIZATION_SAMPLES).unwrap();
        let pass = st.lagrangian.max_angle <= HOMOGENIZATION_ANGLE && st.residual.max_angle <= HOMOGENIZATION_ANGLE;
        if label == HOMOGENIZATION_SETTING {
            ok = pass;
        }
        parts.push(format!(
            "{label}: {:.1e}/{:.1e}{}",
            st.lagrangian.max_angle,
            st.residual.max_angle,
            if pass { " closes" } else { "" }
        ));
    }
    outcome("11", "homogenization", ok, parts.join("; "))
}

fn main() -> ExitCode {
    let criteria: [fn() -> Outcome; 12] = [
        crit1, crit2, crit3, crit4, crit5, crit6, crit7a, crit7b, crit8, crit9, crit10, crit11,
    ];
    let mut unexpected = 0;
    for c in criteria {
        let o = c();
        let known = KNOWN_FAILURES.contains(&o.id);
        let tag = match (o.passed, known) {
            (true, false) => "PASS",
            (false, true) => "FAIL (known)",
            (false, false) => "FAIL",
            (true, true) => "PASS (unexpected)",
        };
        if o.passed == known {
            unexpected += 1;
        }
        println!("criterion {:<3} {:<40} {tag}  {}", o.id, o.title, o.detail);
    }
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{unexpected} criterion outcome(s) differ from the expected list");
        ExitCode::FAILURE
    }
}
