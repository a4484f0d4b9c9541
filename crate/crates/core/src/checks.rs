//! Property suites shared by the `check` command and the acceptance tests.
//!
//! Every measurement is deterministic for a given seed: cases draw from
//! independent streams and are merged by case index.

use std::fmt;

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::dynamics::{
    autoparallel_rhs, contact_chart_margin, lagrangian_along, lagrangian_chart_margin, lagrangian_contact,
    lagrangian_homogeneous, residual_contact, residual_dan, residual_euler_poisson, residual_mathisson_flat,
    ContactState, Jet3, KinState, Params,
};
use crate::error::{Error, Result};
use crate::integrator::{diagnostics_summary, integrate, proper_time_reparametrize, IntegratorConfig, Trajectory};
use crate::minkowski::{norm_abs, spin_vector_to_tensor, CoVector, FourVector, LorentzMatrix, Signature, SkewTensor};
use crate::sampling::{case_rng, contact_state, jet3, jet4, normal_vector, pirani_state, spin};
use crate::symmetry::{covariance_residual, random_proper, CovarianceInputs};
use crate::variational::{
    autoparallel_condition_check, euler_lagrange_fd, homogeneous_to_contact, homogenize_euler_poisson,
    homogenize_lagrangian, zermelo_check, zermelo_finite, ContactJet2, FdSteps, HomogeneousJet3, Jet4,
};

pub const SUITES: [&str; 6] = [
    "variationality",
    "zermelo",
    "autoparallel",
    "conservation",
    "equivalence",
    "covariance",
];

pub const DEFAULT_SEED: u64 = 20_240_229;

const MAX_ATTEMPTS: usize = 1000;
const CHART_MARGIN: f64 = 0.05;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Bound {
    AtMost,
    AtLeast,
    Info,
}

/// One measured property with its acceptance bound.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Property {
    pub name: String,
    pub measured: f64,
    pub tolerance: f64,
    pub bound: Bound,
}

impl Property {
    pub fn at_most(name: impl Into<String>, measured: f64, tolerance: f64) -> Self {
        Property {
            name: name.into(),
            measured,
            tolerance,
            bound: Bound::AtMost,
        }
    }

    pub fn at_least(name: impl Into<String>, measured: f64, tolerance: f64) -> Self {
        Property {
            name: name.into(),
            measured,
            tolerance,
            bound: Bound::AtLeast,
        }
    }

    pub fn info(name: impl Into<String>, measured: f64) -> Self {
        Property {
            name: name.into(),
            measured,
            tolerance: f64::NAN,
            bound: Bound::Info,
        }
    }

    pub fn passed(&self) -> bool {
        match self.bound {
            Bound::AtMost => self.measured <= self.tolerance,
            Bound::AtLeast => self.measured >= self.tolerance,
            Bound::Info => true,
        }
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.bound {
            Bound::Info => write!(f, "INFO {} measured={:.3e}", self.name, self.measured),
            b => write!(
                f,
                "{} {} measured={:.3e} {} {:.1e}",
                if self.passed() { "PASS" } else { "FAIL" },
                self.name,
                self.measured,
                if b == Bound::AtMost { "<=" } else { ">=" },
                self.tolerance
            ),
        }
    }
}

/// Runs `case` for every index in parallel and keeps the input order.
fn cases<T, F>(samples: usize, case: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(usize) -> Result<T> + Sync + Send,
{
    (0..samples).into_par_iter().map(case).collect()
}

/// Retries `draw` until it yields a value inside the chart.
fn sample_in_chart<T>(mut draw: impl FnMut() -> Result<Option<T>>) -> Result<T> {
    for _ in 0..MAX_ATTEMPTS {
        match draw() {
            Ok(Some(v)) => return Ok(v),
            Ok(None) | Err(Error::ChartExit { .. }) | Err(Error::SingularChart(_)) | Err(Error::DegenerateSpin(_)) => {}
            Err(e) => return Err(e),
        }
    }
    Err(Error::SingularChart("no sample inside the chart"))
}

fn euclid_dot(a: &[f64; 4], b: &[f64; 4]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Angle between `a` and `b` as Euclidean component vectors, and the ratio `c` in `a ≈ c b`.
pub fn angle_and_ratio(a: &[f64; 4], b: &[f64; 4]) -> (f64, f64) {
    let c = euclid_dot(a, b) / euclid_dot(b, b);
    let perp: [f64; 4] = std::array::from_fn(|k| a[k] - c * b[k]);
    let sin = (euclid_dot(&perp, &perp) / euclid_dot(a, a)).sqrt();
    (sin.min(1.0).asin(), c)
}

/// Angle and proportionality statistics over a batch.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ParallelStats {
    pub max_angle: f64,
    pub mean_ratio: f64,
    /// `(max c − min c) / |mean c|`.
    pub ratio_spread: f64,
    pub samples: usize,
}

impl ParallelStats {
    pub fn from_pairs(pairs: &[(f64, f64)]) -> Self {
        let n = pairs.len() as f64;
        let mean = pairs.iter().map(|p| p.1).sum::<f64>() / n;
        let (lo, hi) = pairs.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), p| {
            (lo.min(p.1), hi.max(p.1))
        });
        ParallelStats {
            max_angle: pairs.iter().map(|p| p.0).fold(0.0, f64::max),
            mean_ratio: mean,
            ratio_spread: (hi - lo) / mean.abs(),
            samples: pairs.len(),
        }
    }
}

fn random_params<R: rand::Rng>(rng: &mut R, s: FourVector, g: Signature) -> Result<Params> {
    Params::with_mass(rng.gen_range(0.5..2.0), s, 0.0, g)
}

/// FD Euler–Lagrange covector of `𝓛_(α)` against the Euler–Poisson residual on random jets.
pub fn variationality(alpha: usize, seed: u64, samples: usize, g: Signature) -> Result<ParallelStats> {
    let e = FourVector::basis(alpha);
    let pairs = cases(samples, |k| {
        let mut rng = case_rng(seed, "variationality", alpha * 100_000 + k);
        sample_in_chart(|| {
            let j = jet4(&mut rng, &g);
            let s = spin(&mut rng, &j.u, &g);
            if lagrangian_chart_margin(&e, &j.u, &s, &g) < CHART_MARGIN {
                return Ok(None);
            }
            let p = random_params(&mut rng, s, g)?;
            let l = |st: &KinState| lagrangian_homogeneous(alpha, st, &p);
            let el = euler_lagrange_fd(&l, &j, FdSteps::default())?;
            let ep = residual_euler_poisson(&Jet3::new(j.base(), j.uddot), &p)?;
            Ok(Some(angle_and_ratio(&el.0, &ep.0)))
        })
    })?;
    Ok(ParallelStats::from_pairs(&pairs))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ZermeloStats {
    pub max_r1: f64,
    pub max_r2: f64,
    pub max_finite: f64,
}

/// Infinitesimal and finite Zermelo residuals of `𝓛_(α)`, relative to the size of `𝓛`.
pub fn zermelo(alpha: usize, seed: u64, samples: usize) -> Result<ZermeloStats> {
    let g = Signature::LORENTZIAN;
    let e = FourVector::basis(alpha);
    let rows = cases(samples, |k| {
        let mut rng = case_rng(seed, "zermelo", alpha * 100_000 + k);
        sample_in_chart(|| {
            let j = jet4(&mut rng, &g);
            let s = spin(&mut rng, &j.u, &g);
            if lagrangian_chart_margin(&e, &j.u, &s, &g) < CHART_MARGIN {
                return Ok(None);
            }
            let p = random_params(&mut rng, s, g)?;
            let l = |st: &KinState| lagrangian_homogeneous(alpha, st, &p);
            let st = j.base();
            let scale = l(&st)?.abs().max(p.m * norm_abs(&st.u, &g) / norm_abs(&s, &g).powi(3));
            let r = zermelo_check(&l, &st, 1e-3)?;
            let mut finite: f64 = 0.0;
            for i in 0..5 {
                for k in 0..5 {
                    let lambda = 0.5 + 1.5 * i as f64 / 4.0;
                    let mu = -1.0 + 2.0 * k as f64 / 4.0;
                    finite = finite.max(zermelo_finite(&l, &st, lambda, mu)?.abs() / (lambda * scale));
                }
            }
            Ok(Some((r.r1.abs() / scale, r.r2.abs() / scale, finite)))
        })
    })?;
    Ok(ZermeloStats {
        max_r1: rows.iter().map(|r| r.0).fold(0.0, f64::max),
        max_r2: rows.iter().map(|r| r.1).fold(0.0, f64::max),
        max_finite: rows.iter().map(|r| r.2).fold(0.0, f64::max),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AutoparallelStats {
    pub max_c1: f64,
    pub max_c2: f64,
    pub max_kappa: f64,
    pub max_mu: f64,
}

/// Commutation constraints of the autoparallel right-hand side, relative to `|ξ|`.
pub fn autoparallel(a_const: f64, seed: u64, samples: usize) -> Result<AutoparallelStats> {
    let g = Signature::LORENTZIAN;
    let rows = cases(samples, |k| {
        let mut rng = case_rng(seed, "autoparallel", k + (a_const * 1e6) as usize);
        sample_in_chart(|| {
            let (st, s) = pirani_state(&mut rng, &g);
            let p = Params::with_mass(rng.gen_range(0.5..2.0), s, a_const, g)?;
            let xi = |st: &KinState| autoparallel_rhs(st, &p);
            let scale = st.a.max_abs().max(xi(&st)?.max_abs());
            let r = autoparallel_condition_check(xi, &st, 1e-3)?;
            Ok(Some([
                r.c1.max_abs() / st.a.max_abs(),
                r.c2.max_abs() / scale,
                r.kappa.abs(),
                r.mu.abs() * st.u.max_abs() / scale,
            ]))
        })
    })?;
    let max = |i: usize| rows.iter().map(|r| r[i]).fold(0.0, f64::max);
    Ok(AutoparallelStats {
        max_c1: max(0),
        max_c2: max(1),
        max_kappa: max(2),
        max_mu: max(3),
    })
}

/// `|𝓔(u, u̇, ξ)| / scale` on Pirani-consistent states, maximized over the batch.
pub fn closure(seed: u64, samples: usize) -> Result<f64> {
    let g = Signature::LORENTZIAN;
    let rows = cases(samples, |k| {
        let mut rng = case_rng(seed, "closure", k);
        sample_in_chart(|| {
            let (st, s) = pirani_state(&mut rng, &g);
            let p = Params::with_mass(rng.gen_range(0.5..2.0), s, rng.gen_range(0.0..1.0), g)?;
            let xi = autoparallel_rhs(&st, &p)?;
            let r = residual_euler_poisson(&Jet3::new(st, xi), &p)?;
            // Each term of the residual scales like the mass term.
            let scale = p.m / norm_abs(&s, &g).powi(3) * st.a.max_abs() / norm_abs(&st.u, &g);
            Ok(Some(r.max_abs() / scale))
        })
    })?;
    Ok(rows.into_iter().fold(0.0, f64::max))
}

fn helical_start(chi: f64, theta: f64) -> Result<(KinState, FourVector)> {
    let g = Signature::LORENTZIAN;
    let b = LorentzMatrix::boost(1, chi, &g)?.compose(&LorentzMatrix::rotation(1, 3, theta, &g)?);
    let u = b.apply(&FourVector::basis(0));
    let s = b.apply(&FourVector::new(0.0, 0.0, 0.0, 0.8));
    let a = b.apply(&FourVector::new(0.05, 0.3, 0.0, 0.0));
    Ok((KinState::new(FourVector::ZERO, u, a), s))
}

fn adaptive(tol: f64, tau_end: f64) -> IntegratorConfig {
    IntegratorConfig {
        tol_abs: tol,
        tol_rel: tol,
        tau_end,
        ..IntegratorConfig::default()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConservationRun {
    pub tol: f64,
    pub first_integral_drift: f64,
    pub pirani_drift: f64,
    pub samples: usize,
}

/// Drifts of the conserved quantities over `τ ∈ [0, 10]` for Pirani-consistent data.
pub fn conservation(tols: &[f64]) -> Result<Vec<ConservationRun>> {
    let starts = [(0.4, 0.7), (0.0, 0.0), (1.2, -1.1)];
    tols.par_iter()
        .map(|&tol| {
            let mut run = ConservationRun {
                tol,
                first_integral_drift: 0.0,
                pirani_drift: 0.0,
                samples: 0,
            };
            for &(chi, theta) in &starts {
                let (y0, s) = helical_start(chi, theta)?;
                let p = Params::with_mass(1.0, s, 0.0, Signature::LORENTZIAN)?;
                let tr = integrate(autoparallel_rhs, &y0, &p, &adaptive(tol, 10.0))?;
                let sum = diagnostics_summary(&tr)?;
                run.first_integral_drift = run.first_integral_drift.max(sum.max_first_integral_drift);
                run.pirani_drift = run.pirani_drift.max(sum.max_pirani_drift);
                run.samples += sum.samples;
            }
            Ok(run)
        })
        .collect()
}

/// Initial data for the parametrization-independence comparison.
pub fn a_independence_start() -> Result<(KinState, FourVector)> {
    let g = Signature::LORENTZIAN;
    let b = LorentzMatrix::boost(2, 0.3, &g)?.compose(&LorentzMatrix::rotation(1, 2, 0.4, &g)?);
    let u = b.apply(&FourVector::basis(0));
    let s = b.apply(&FourVector::new(0.0, 0.0, 0.0, 0.5));
    let a = b.apply(&FourVector::new(0.0, 2.0, 0.0, 0.0));
    Ok((KinState::new(FourVector::new(0.1, -0.2, 0.3, 0.0), u, a), s))
}

/// Max Euclidean distance between the world lines for `A = 0` and `A = 1`,
/// compared on a common proper-time grid.
pub fn a_independence(tau_end: f64, tol: f64) -> Result<f64> {
    let (y0, s) = a_independence_start()?;
    let runs: Vec<Trajectory> = [0.0, 1.0]
        .par_iter()
        .map(|&a_const| {
            let p = Params::with_mass(4.0, s, a_const, Signature::LORENTZIAN)?;
            proper_time_reparametrize(&integrate(autoparallel_rhs, &y0, &p, &adaptive(tol, tau_end))?)
        })
        .collect::<Result<_>>()?;
    let span = runs[0].last()?.tau.min(runs[1].last()?.tau);
    let n = 500;
    let mut dist: f64 = 0.0;
    for k in 0..=n {
        let sigma = span * k as f64 / n as f64;
        let d = runs[0].state_at(sigma)?.x - runs[1].state_at(sigma)?.x;
        dist = dist.max(d.euclid());
    }
    Ok(dist)
}

/// Rank-1 defect of `[residual_dan; residual_euler_poisson]`: `σ₂ / σ₁` on the Pirani surface.
pub fn dan_parallel(seed: u64, samples: usize) -> Result<f64> {
    let g = Signature::LORENTZIAN;
    let rows = cases(samples, |k| {
        let mut rng = case_rng(seed, "dan", k);
        sample_in_chart(|| {
            let (st, s) = pirani_state(&mut rng, &g);
            let j = Jet3::new(st, normal_vector(&mut rng, 0.5));
            let p = random_params(&mut rng, s, g)?;
            let a = residual_dan(&j, &p)?;
            let b = residual_euler_poisson(&j, &p)?;
            Ok(Some(singular_ratio(&a, &b)))
        })
    })?;
    Ok(rows.into_iter().fold(0.0, f64::max))
}

fn singular_ratio(a: &CoVector, b: &CoVector) -> f64 {
    let na = euclid_dot(&a.0, &a.0).sqrt();
    let nb = euclid_dot(&b.0, &b.0).sqrt();
    let m = nalgebra::Matrix2x4::from_rows(&[
        nalgebra::RowVector4::from_row_slice(&(a.0.map(|c| c / na))),
        nalgebra::RowVector4::from_row_slice(&(b.0.map(|c| c / nb))),
    ]);
    let sv = m.singular_values();
    sv.min() / sv.max()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MathissonStats {
    /// Max of `|m0 u̇ − S ü|∞ / (m0 |u̇|∞)` with `S` from the spin vector.
    pub literal: f64,
    /// Same with `S` replaced by `−S`.
    pub mirrored: f64,
    /// Least-squares `c` in `c m0 u̇ ≈ S ü` along the trajectory.
    pub mass_ratio: f64,
}

/// Mathisson residual along a proper-time solution.
pub fn mathisson(tol: f64) -> Result<MathissonStats> {
    let (y0, s) = helical_start(0.4, 0.7)?;
    let p = Params::with_mass(1.0, s, 0.0, Signature::LORENTZIAN)?;
    let tr = proper_time_reparametrize(&integrate(autoparallel_rhs, &y0, &p, &adaptive(tol, 10.0))?)?;
    let mut out = MathissonStats {
        literal: 0.0,
        mirrored: 0.0,
        mass_ratio: 0.0,
    };
    let (mut num, mut den) = (0.0, 0.0);
    for smp in &tr.samples {
        let st = smp.state;
        let spin = spin_vector_to_tensor(&s, &st.u, &p.g)?;
        let j = Jet3::new(st, smp.jerk);
        let scale = p.m0 * st.a.max_abs();
        out.literal = out
            .literal
            .max(residual_mathisson_flat(&j, &spin, &p).max_abs() / scale);
        let neg = SkewTensor::from_components(spin.components().map(|c| -c));
        out.mirrored = out
            .mirrored
            .max(residual_mathisson_flat(&j, &neg, &p).max_abs() / scale);
        let su = spin.contract(&smp.jerk.lower(&p.g));
        let ma = st.a * p.m0;
        num += euclid_dot(&su.0, &ma.0);
        den += euclid_dot(&ma.0, &ma.0);
    }
    out.mass_ratio = num / den;
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CovarianceStats {
    pub dan: f64,
    pub euler_poisson: f64,
    pub mathisson: f64,
    pub autoparallel: f64,
    pub lagrangian: f64,
}

/// Relative covariance residuals under random proper transformations.
pub fn covariance(seed: u64, samples: usize) -> Result<CovarianceStats> {
    let g = Signature::LORENTZIAN;
    let rows = cases(samples, |k| {
        let mut rng = case_rng(seed, "covariance", k);
        sample_in_chart(|| {
            let l = random_proper(&mut rng, &g, 2.0)?;
            let jet = jet3(&mut rng, &g);
            let s = spin(&mut rng, &jet.base.u, &g);
            let axis = FourVector::basis(rng.gen_range(0..4));
            if lagrangian_chart_margin(&axis, &jet.base.u, &s, &g) < CHART_MARGIN {
                return Ok(None);
            }
            let params = Params::new(
                rng.gen_range(0.5..2.0),
                rng.gen_range(0.5..2.0),
                s,
                rng.gen_range(0.0..1.0),
                g,
            )?;
            let spin_tensor = SkewTensor::from_components(std::array::from_fn(|_| rng.gen_range(-1.0..1.0)));
            let inputs = CovarianceInputs {
                jet,
                params,
                spin: spin_tensor,
                axis,
            };
            Ok(Some([
                covariance_residual(|i: &CovarianceInputs| residual_dan(&i.jet, &i.params), &l, &inputs)?,
                covariance_residual(
                    |i: &CovarianceInputs| residual_euler_poisson(&i.jet, &i.params),
                    &l,
                    &inputs,
                )?,
                covariance_residual(
                    |i: &CovarianceInputs| Ok(residual_mathisson_flat(&i.jet, &i.spin, &i.params)),
                    &l,
                    &inputs,
                )?,
                covariance_residual(
                    |i: &CovarianceInputs| autoparallel_rhs(&i.jet.base, &i.params),
                    &l,
                    &inputs,
                )?,
                covariance_residual(
                    |i: &CovarianceInputs| lagrangian_along(&i.axis, &i.jet.base, &i.params),
                    &l,
                    &inputs,
                )?,
            ]))
        })
    })?;
    let max = |i: usize| rows.iter().map(|r| r[i]).fold(0.0, f64::max);
    Ok(CovarianceStats {
        dan: max(0),
        euler_poisson: max(1),
        mathisson: max(2),
        autoparallel: max(3),
        lagrangian: max(4),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HomogenizationStats {
    /// Homogenized contact Lagrangians against the Euler–Poisson residual.
    pub lagrangian: ParallelStats,
    /// Homogenized contact residual against the Euler–Poisson residual.
    pub residual: ParallelStats,
}

fn lift3(t: f64, v: [f64; 3]) -> FourVector {
    FourVector([t, v[0], v[1], v[2]])
}

/// Compares the contact formulation with the homogeneous one under the metric `g`,
/// identifying the spin vector with `(s0, s)`.
pub fn homogenization(g: Signature, seed: u64, samples: usize) -> Result<HomogenizationStats> {
    let salt = format!("homogenization{}{}", g.diag()[1], g.orientation());
    let rows = cases(samples, |k| {
        let mut rng = case_rng(seed, &salt, k);
        sample_in_chart(|| {
            let cs0 = contact_state(&mut rng);
            let i = 1 + k % 3;
            if contact_chart_margin(i, &cs0) < CHART_MARGIN {
                return Ok(None);
            }
            let m = rng.gen_range(0.5..2.0);
            let t1: f64 = rng.gen_range(0.5..2.0);
            let t2: f64 = rng.gen_range(-0.5..0.5);
            let t3: f64 = rng.gen_range(-0.5..0.5);
            let hj = crate::variational::contact_to_homogeneous(
                &crate::variational::ContactJet3 {
                    t: cs0.t,
                    x: cs0.xs,
                    v1: cs0.v,
                    v2: cs0.vp,
                    v3: cs0.vpp,
                },
                [t1, t2, t3],
            )?;
            let jet = Jet4 {
                x: hj.x,
                u: hj.d1,
                udot: hj.d2,
                uddot: hj.d3,
                u3: normal_vector(&mut rng, 0.5),
            };
            let svec4 = lift3(cs0.s0, cs0.svec);
            let p = Params::with_mass(m, svec4, 0.0, g)?;
            let ep = residual_euler_poisson(&Jet3::new(jet.base(), jet.uddot), &p)?;

            let (s0, svec) = (cs0.s0, cs0.svec);
            let contact = move |c: &ContactJet2| {
                lagrangian_contact(
                    i,
                    &ContactState {
                        t: c.t,
                        xs: c.x,
                        v: c.v1,
                        vp: c.v2,
                        vpp: [0.0; 3],
                        s0,
                        svec,
                    },
                    m,
                )
            };
            let el = euler_lagrange_fd(&homogenize_lagrangian(contact), &jet, FdSteps::default())?;

            let cj = homogeneous_to_contact(&HomogeneousJet3 {
                x: hj.x,
                d1: hj.d1,
                d2: hj.d2,
                d3: hj.d3,
            })?;
            let e3 = residual_contact(
                &ContactState {
                    t: cj.t,
                    xs: cj.x,
                    v: cj.v1,
                    vp: cj.v2,
                    vpp: cj.v3,
                    s0,
                    svec,
                },
                m,
            )?;
            let eh = homogenize_euler_poisson(e3, &jet.u);
            Ok(Some((angle_and_ratio(&el.0, &ep.0), angle_and_ratio(&eh.0, &ep.0))))
        })
    })?;
    let l: Vec<_> = rows.iter().map(|r| r.0).collect();
    let r: Vec<_> = rows.iter().map(|r| r.1).collect();
    Ok(HomogenizationStats {
        lagrangian: ParallelStats::from_pairs(&l),
        residual: ParallelStats::from_pairs(&r),
    })
}

/// Metric settings tried for the contact formulation, with their report labels.
pub fn homogenization_settings() -> Result<[(&'static str, Signature); 4]> {
    Ok([
        ("lorentzian+", Signature::LORENTZIAN),
        ("lorentzian-", Signature::LORENTZIAN.with_orientation(-1)?),
        ("euclidean+", Signature::EUCLIDEAN),
        ("euclidean-", Signature::EUCLIDEAN.with_orientation(-1)?),
    ])
}

/// The setting under which the contact and homogeneous formulations agree.
pub const HOMOGENIZATION_SETTING: &str = "euclidean-";

/// Runs a named suite. `all` runs every suite in [`SUITES`] order.
pub fn run_suite(name: &str, seed: u64) -> Result<Vec<Property>> {
    if name == "all" {
        let mut out = Vec::new();
        for s in SUITES {
            out.extend(run_suite(s, seed)?);
        }
        return Ok(out);
    }
    let mut out = Vec::new();
    match name {
        "variationality" => {
            for alpha in 0..4 {
                let st = variationality(alpha, seed, 200, Signature::LORENTZIAN)?;
                out.push(Property::at_most(
                    format!("variationality.alpha{alpha}.angle"),
                    st.max_angle,
                    1e-6,
                ));
                out.push(Property::at_most(
                    format!("variationality.alpha{alpha}.ratio_spread"),
                    st.ratio_spread,
                    1e-6,
                ));
                out.push(Property::info(
                    format!("variationality.alpha{alpha}.ratio"),
                    st.mean_ratio,
                ));
            }
            for (label, g) in homogenization_settings()? {
                let st = homogenization(g, seed, 100)?;
                let prefix = format!("homogenization.{label}");
                if label == HOMOGENIZATION_SETTING {
                    out.push(Property::at_most(
                        format!("{prefix}.lagrangian_angle"),
                        st.lagrangian.max_angle,
                        1e-6,
                    ));
                    out.push(Property::at_most(
                        format!("{prefix}.residual_angle"),
                        st.residual.max_angle,
                        1e-6,
                    ));
                } else {
                    out.push(Property::info(
                        format!("{prefix}.lagrangian_angle"),
                        st.lagrangian.max_angle,
                    ));
                    out.push(Property::info(
                        format!("{prefix}.residual_angle"),
                        st.residual.max_angle,
                    ));
                }
            }
        }
        "zermelo" => {
            for alpha in 0..4 {
                let st = zermelo(alpha, seed, 200)?;
                out.push(Property::at_most(format!("zermelo.alpha{alpha}.r1"), st.max_r1, 1e-8));
                out.push(Property::at_most(format!("zermelo.alpha{alpha}.r2"), st.max_r2, 1e-8));
                out.push(Property::at_most(
                    format!("zermelo.alpha{alpha}.finite"),
                    st.max_finite,
                    1e-9,
                ));
            }
        }
        "autoparallel" => {
            for a_const in [0.0, 0.5, 1.0] {
                let st = autoparallel(a_const, seed, 100)?;
                let prefix = format!("autoparallel.A{a_const}");
                out.push(Property::at_most(format!("{prefix}.c1"), st.max_c1, 1e-6));
                out.push(Property::at_most(format!("{prefix}.c2"), st.max_c2, 1e-6));
                out.push(Property::at_most(format!("{prefix}.kappa"), st.max_kappa, 1e-6));
                out.push(Property::at_most(format!("{prefix}.mu"), st.max_mu, 1e-6));
            }
            out.push(Property::at_most("autoparallel.closure", closure(seed, 200)?, 1e-9));
        }
        "conservation" => {
            let runs = conservation(&[1e-8, 1e-9, 1e-10, 1e-11])?;
            for r in &runs {
                if r.tol == 1e-10 {
                    out.push(Property::at_most(
                        "conservation.first_integral",
                        r.first_integral_drift,
                        1e-8,
                    ));
                    out.push(Property::at_most("conservation.pirani", r.pirani_drift, 1e-8));
                }
            }
            let ratio = runs
                .iter()
                .map(|r| r.first_integral_drift.max(r.pirani_drift) / r.tol)
                .fold(0.0, f64::max);
            out.push(Property::at_most("conservation.drift_per_tolerance", ratio, 10.0));
        }
        "equivalence" => {
            out.push(Property::at_most(
                "equivalence.dan_rank1",
                dan_parallel(seed, 200)?,
                1e-8,
            ));
            let m = mathisson(1e-12)?;
            out.push(Property::at_most("equivalence.mathisson", m.literal, 1e-7));
            out.push(Property::info("equivalence.mathisson_mirrored", m.mirrored));
            out.push(Property::info("equivalence.mathisson_mass_ratio", m.mass_ratio));
            out.push(Property::at_most(
                "equivalence.a_independence",
                a_independence(5.0, 1e-12)?,
                1e-7,
            ));
        }
        "covariance" => {
            let st = covariance(seed, 100)?;
            out.push(Property::at_most("covariance.dan", st.dan, 1e-9));
            out.push(Property::at_most("covariance.euler_poisson", st.euler_poisson, 1e-9));
            out.push(Property::at_most("covariance.mathisson", st.mathisson, 1e-9));
            out.push(Property::at_most("covariance.autoparallel", st.autoparallel, 1e-9));
            out.push(Property::at_most("covariance.lagrangian", st.lagrangian, 1e-9));
        }
        other => {
            return Err(Error::InvalidParameter {
                field: "suite",
                reason: format!("unknown suite {other:?}"),
            })
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn angle_of_parallel_vectors() {
        let (a, c) = angle_and_ratio(&[2.0, -4.0, 6.0, 0.0], &[1.0, -2.0, 3.0, 0.0]);
        assert!(a < 1e-15 && (c - 2.0).abs() < 1e-15);
        let (a, _) = angle_and_ratio(&[1.0, 0.0, 0.0, 0.0], &[0.0, 1.0, 0.0, 0.0]);
        assert!((a - std::f64::consts::FRAC_PI_2).abs() < 1e-15);
    }

    #[test]
    fn property_bounds() {
        assert!(Property::at_most("x", 1.0, 1.0).passed());
        assert!(!Property::at_most("x", f64::NAN, 1.0).passed());
        assert!(!Property::at_least("x", 3.7, 3.8).passed());
        assert!(Property::info("x", f64::NAN).passed());
    }

    #[test]
    fn unknown_suite_is_rejected() {
        assert!(matches!(run_suite("nope", 1), Err(Error::InvalidParameter { .. })));
    }
}
