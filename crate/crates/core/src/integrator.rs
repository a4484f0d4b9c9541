//! Integration of `ẋ = u, u̇ = a, ȧ = ξ(x, u, a)` with per-sample diagnostics.

use serde::{Deserialize, Serialize};

use crate::dynamics::{first_integral, residual_euler_poisson, Jet3, KinState, Params};
use crate::error::{Error, Result};
use crate::minkowski::{dot, norm_abs, FourVector};
use crate::variational::chain_rule3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Method {
    #[serde(rename = "rk4")]
    Rk4Fixed,
    #[serde(rename = "rk45")]
    Rk45Adaptive,
}

impl std::str::FromStr for Method {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "rk4" | "rk4-fixed" => Ok(Method::Rk4Fixed),
            "rk45" | "rk45-adaptive" => Ok(Method::Rk45Adaptive),
            other => Err(format!("unknown method `{other}` (expected rk4 or rk45)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IntegratorConfig {
    pub method: Method,
    /// Initial step (adaptive) or nominal step (fixed).
    pub h0: f64,
    pub tol_abs: f64,
    pub tol_rel: f64,
    pub tau_end: f64,
    pub max_steps: usize,
}

impl Default for IntegratorConfig {
    fn default() -> Self {
        IntegratorConfig {
            method: Method::Rk45Adaptive,
            h0: 1e-2,
            tol_abs: 1e-10,
            tol_rel: 1e-10,
            tau_end: 10.0,
            max_steps: 1_000_000,
        }
    }
}

impl IntegratorConfig {
    pub fn validate(&self) -> Result<()> {
        let positive = |field, v: f64| {
            if v > 0.0 && v.is_finite() {
                Ok(())
            } else {
                Err(Error::InvalidParameter {
                    field,
                    reason: format!("must be positive and finite, got {v}"),
                })
            }
        };
        positive("h0", self.h0)?;
        positive("tol_abs", self.tol_abs)?;
        positive("tol_rel", self.tol_rel)?;
        positive("tau_end", self.tau_end)?;
        if self.max_steps == 0 {
            return Err(Error::InvalidParameter {
                field: "max_steps",
                reason: "must be at least 1".into(),
            });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Diagnostics {
    pub first_integral: f64,
    /// `s·u / (‖s‖‖u‖)`.
    pub pirani: f64,
    /// Max-norm of the Euler–Poisson residual with `ü` from the right-hand side.
    pub residual_norm: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Sample {
    pub tau: f64,
    pub state: KinState,
    /// `ü` at this sample.
    pub jerk: FourVector,
    pub diagnostics: Diagnostics,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Trajectory {
    pub samples: Vec<Sample>,
    pub params: Params,
}

type State = [f64; 12];

fn pack(st: &KinState) -> State {
    let mut y = [0.0; 12];
    y[..4].copy_from_slice(&st.x.0);
    y[4..8].copy_from_slice(&st.u.0);
    y[8..].copy_from_slice(&st.a.0);
    y
}

fn unpack(y: &State) -> KinState {
    let v = |k: usize| FourVector([y[k], y[k + 1], y[k + 2], y[k + 3]]);
    KinState::new(v(0), v(4), v(8))
}

fn axpy(y: &State, terms: &[(f64, &State)]) -> State {
    let mut out = *y;
    for (c, k) in terms {
        for i in 0..12 {
            out[i] += c * k[i];
        }
    }
    out
}

pub fn diagnostics(st: &KinState, jerk: &FourVector, p: &Params) -> Diagnostics {
    let g = &p.g;
    let denom = norm_abs(&p.s, g) * norm_abs(&st.u, g);
    let residual_norm = residual_euler_poisson(&Jet3::new(*st, *jerk), p)
        .map(|r| r.max_abs())
        .unwrap_or(f64::NAN);
    Diagnostics {
        first_integral: first_integral(&st.u, p).unwrap_or(f64::NAN),
        pirani: dot(&p.s, &st.u, g) / denom,
        residual_norm,
    }
}

struct System<'a, F> {
    rhs: F,
    p: &'a Params,
}

impl<F> System<'_, F>
where
    F: Fn(&KinState, &Params) -> Result<FourVector>,
{
    fn jerk(&self, tau: f64, st: &KinState) -> Result<FourVector> {
        let j = (self.rhs)(st, self.p).map_err(|e| Error::ChartExit {
            tau: Some(tau),
            reason: e.to_string(),
        })?;
        if !j.is_finite() {
            return Err(Error::ChartExit {
                tau: Some(tau),
                reason: "right-hand side is not finite".into(),
            });
        }
        Ok(j)
    }

    fn deriv(&self, tau: f64, y: &State) -> Result<State> {
        let st = unpack(y);
        let j = self.jerk(tau, &st)?;
        let mut d = [0.0; 12];
        d[..4].copy_from_slice(&st.u.0);
        d[4..8].copy_from_slice(&st.a.0);
        d[8..].copy_from_slice(&j.0);
        Ok(d)
    }

    fn sample(&self, tau: f64, y: &State) -> Result<Sample> {
        let state = unpack(y);
        let jerk = self.jerk(tau, &state)?;
        Ok(Sample {
            tau,
            state,
            jerk,
            diagnostics: diagnostics(&state, &jerk, self.p),
        })
    }
}

/// Integrates from `τ = 0` to `cfg.tau_end`, recording every accepted step.
pub fn integrate<F>(rhs: F, y0: &KinState, p: &Params, cfg: &IntegratorConfig) -> Result<Trajectory>
where
    F: Fn(&KinState, &Params) -> Result<FourVector>,
{
    cfg.validate()?;
    let sys = System { rhs, p };
    let samples = match cfg.method {
        Method::Rk4Fixed => rk4(&sys, y0, cfg)?,
        Method::Rk45Adaptive => dopri(&sys, y0, cfg)?,
    };
    Ok(Trajectory { samples, params: *p })
}

fn rk4<F>(sys: &System<'_, F>, y0: &KinState, cfg: &IntegratorConfig) -> Result<Vec<Sample>>
where
    F: Fn(&KinState, &Params) -> Result<FourVector>,
{
    let n = (cfg.tau_end / cfg.h0 - 1e-9).ceil().max(1.0) as usize;
    if n > cfg.max_steps {
        return Err(Error::MaxStepsExceeded { tau: 0.0 });
    }
    let h = cfg.tau_end / n as f64;
    let mut y = pack(y0);
    let mut out = Vec::with_capacity(n + 1);
    out.push(sys.sample(0.0, &y)?);
    for k in 0..n {
        let t = k as f64 * h;
        let k1 = sys.deriv(t, &y)?;
        let k2 = sys.deriv(t + h / 2.0, &axpy(&y, &[(h / 2.0, &k1)]))?;
        let k3 = sys.deriv(t + h / 2.0, &axpy(&y, &[(h / 2.0, &k2)]))?;
        let k4 = sys.deriv(t + h, &axpy(&y, &[(h, &k3)]))?;
        y = axpy(&y, &[(h / 6.0, &k1), (h / 3.0, &k2), (h / 3.0, &k3), (h / 6.0, &k4)]);
        let tau = if k + 1 == n { cfg.tau_end } else { (k + 1) as f64 * h };
        out.push(sys.sample(tau, &y)?);
    }
    Ok(out)
}

// Dormand–Prince 5(4) tableau.
const C: [f64; 7] = [0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [
        19372.0 / 6561.0,
        -25360.0 / 2187.0,
        64448.0 / 6561.0,
        -212.0 / 729.0,
        0.0,
        0.0,
    ],
    [
        9017.0 / 3168.0,
        -355.0 / 33.0,
        46732.0 / 5247.0,
        49.0 / 176.0,
        -5103.0 / 18656.0,
        0.0,
    ],
    [
        35.0 / 384.0,
        0.0,
        500.0 / 1113.0,
        125.0 / 192.0,
        -2187.0 / 6784.0,
        11.0 / 84.0,
    ],
];
const B: [f64; 7] = [
    35.0 / 384.0,
    0.0,
    500.0 / 1113.0,
    125.0 / 192.0,
    -2187.0 / 6784.0,
    11.0 / 84.0,
    0.0,
];
const B_LOW: [f64; 7] = [
    5179.0 / 57600.0,
    0.0,
    7571.0 / 16695.0,
    393.0 / 640.0,
    -92097.0 / 339200.0,
    187.0 / 2100.0,
    1.0 / 40.0,
];

const SAFETY: f64 = 0.9;
const MIN_RATIO: f64 = 0.2;
const MAX_RATIO: f64 = 5.0;
const PI_ALPHA: f64 = 0.7 / 5.0;
const PI_BETA: f64 = 0.4 / 5.0;

fn dopri<F>(sys: &System<'_, F>, y0: &KinState, cfg: &IntegratorConfig) -> Result<Vec<Sample>>
where
    F: Fn(&KinState, &Params) -> Result<FourVector>,
{
    let mut y = pack(y0);
    let mut tau = 0.0;
    let mut h = cfg.h0.min(cfg.tau_end);
    let mut err_prev: f64 = 1e-4;
    let mut rejected = false;
    let mut out = vec![sys.sample(0.0, &y)?];
    let mut k0 = sys.deriv(0.0, &y)?;
    let mut steps = 0usize;
    while tau < cfg.tau_end {
        steps += 1;
        if steps > cfg.max_steps {
            return Err(Error::MaxStepsExceeded { tau });
        }
        if h < 16.0 * f64::EPSILON * tau.abs().max(1.0) {
            return Err(Error::StepUnderflow { tau });
        }
        let last = tau + h >= cfg.tau_end;
        if last {
            h = cfg.tau_end - tau;
        }
        let mut k = [[0.0; 12]; 7];
        k[0] = k0;
        for s in 1..7 {
            let terms: Vec<(f64, &State)> = (0..s).map(|j| (h * A[s][j], &k[j])).collect();
            let ys = axpy(&y, &terms);
            k[s] = sys.deriv(tau + C[s] * h, &ys)?;
        }
        let y_new = axpy(&y, &(0..7).map(|j| (h * B[j], &k[j])).collect::<Vec<_>>());
        let err = (0..12)
            .map(|i| {
                let e: f64 = (0..7).map(|j| h * (B[j] - B_LOW[j]) * k[j][i]).sum();
                e.abs() / (cfg.tol_abs + cfg.tol_rel * y[i].abs().max(y_new[i].abs()))
            })
            .fold(0.0f64, f64::max);
        if !err.is_finite() {
            h *= MIN_RATIO;
            rejected = true;
            continue;
        }
        if err <= 1.0 {
            tau = if last { cfg.tau_end } else { tau + h };
            y = y_new;
            k0 = k[6];
            out.push(sys.sample(tau, &y)?);
            let e = err.max(1e-10);
            let mut ratio = SAFETY * e.powf(-PI_ALPHA) * err_prev.powf(PI_BETA);
            ratio = ratio.clamp(MIN_RATIO, MAX_RATIO);
            if rejected {
                ratio = ratio.min(1.0);
            }
            h *= ratio;
            err_prev = e;
            rejected = false;
        } else {
            h *= (SAFETY * err.powf(-0.2)).max(MIN_RATIO);
            rejected = true;
        }
    }
    Ok(out)
}

fn hermite_quintic(p0: [f64; 3], p1: [f64; 3], dt: f64, s: f64) -> f64 {
    // values, first and second derivatives at both ends
    let (s2, s3) = (s * s, s * s * s);
    let (s4, s5) = (s3 * s, s3 * s2);
    let h00 = 1.0 - 10.0 * s3 + 15.0 * s4 - 6.0 * s5;
    let h10 = s - 6.0 * s3 + 8.0 * s4 - 3.0 * s5;
    let h20 = 0.5 * s2 - 1.5 * s3 + 1.5 * s4 - 0.5 * s5;
    let h01 = 10.0 * s3 - 15.0 * s4 + 6.0 * s5;
    let h11 = -4.0 * s3 + 7.0 * s4 - 3.0 * s5;
    let h21 = 0.5 * s3 - s4 + 0.5 * s5;
    h00 * p0[0] + h10 * dt * p0[1] + h20 * dt * dt * p0[2] + h01 * p1[0] + h11 * dt * p1[1] + h21 * dt * dt * p1[2]
}

fn hermite_cubic(p0: [f64; 2], p1: [f64; 2], dt: f64, s: f64) -> f64 {
    let (s2, s3) = (s * s, s * s * s);
    (2.0 * s3 - 3.0 * s2 + 1.0) * p0[0]
        + (s3 - 2.0 * s2 + s) * dt * p0[1]
        + (-2.0 * s3 + 3.0 * s2) * p1[0]
        + (s3 - s2) * dt * p1[1]
}

impl Trajectory {
    pub fn first(&self) -> Result<&Sample> {
        self.samples.first().ok_or(Error::EmptyTrajectory)
    }

    pub fn last(&self) -> Result<&Sample> {
        self.samples.last().ok_or(Error::EmptyTrajectory)
    }

    /// Hermite interpolation between the bracketing samples: quintic in `x` and
    /// `u`, cubic in `u̇`.
    pub fn state_at(&self, tau: f64) -> Result<KinState> {
        let s = &self.samples;
        let (t0, t1) = (self.first()?.tau, self.last()?.tau);
        if s.len() == 1 || tau <= t0 {
            return Ok(s[0].state);
        }
        if tau >= t1 {
            return Ok(s[s.len() - 1].state);
        }
        let k = s.partition_point(|x| x.tau <= tau).clamp(1, s.len() - 1);
        let (a, b) = (&s[k - 1], &s[k]);
        let dt = b.tau - a.tau;
        let r = (tau - a.tau) / dt;
        let comp = |i: usize| {
            let (sa, sb) = (&a.state, &b.state);
            (
                hermite_quintic([sa.x[i], sa.u[i], sa.a[i]], [sb.x[i], sb.u[i], sb.a[i]], dt, r),
                hermite_quintic([sa.u[i], sa.a[i], a.jerk[i]], [sb.u[i], sb.a[i], b.jerk[i]], dt, r),
                hermite_cubic([sa.a[i], a.jerk[i]], [sb.a[i], b.jerk[i]], dt, r),
            )
        };
        let c: [(f64, f64, f64); 4] = std::array::from_fn(comp);
        Ok(KinState::new(
            FourVector(c.map(|v| v.0)),
            FourVector(c.map(|v| v.1)),
            FourVector(c.map(|v| v.2)),
        ))
    }

    /// Proper time `∫‖u‖dτ` at every sample (five-point Gauss–Legendre per step).
    pub fn proper_times(&self) -> Result<Vec<f64>> {
        const NODES: [f64; 5] = [
            -0.906_179_845_938_664,
            -0.538_469_310_105_683,
            0.0,
            0.538_469_310_105_683,
            0.906_179_845_938_664,
        ];
        const WEIGHTS: [f64; 5] = [
            0.236_926_885_056_189,
            0.478_628_670_499_366,
            0.568_888_888_888_889,
            0.478_628_670_499_366,
            0.236_926_885_056_189,
        ];
        let g = &self.params.g;
        let mut sigma = vec![0.0; self.samples.len()];
        for k in 1..self.samples.len() {
            let (a, b) = (self.samples[k - 1].tau, self.samples[k].tau);
            let mut acc = 0.0;
            for (x, w) in NODES.iter().zip(WEIGHTS) {
                let st = self.state_at(0.5 * (a + b) + 0.5 * (b - a) * x)?;
                acc += w * norm_abs(&st.u, g);
            }
            sigma[k] = sigma[k - 1] + 0.5 * (b - a) * acc;
        }
        Ok(sigma)
    }
}

/// Re-expresses the world line in proper time, sample by sample.
pub fn proper_time_reparametrize(tr: &Trajectory) -> Result<Trajectory> {
    let g = &tr.params.g;
    for s in &tr.samples {
        if !(dot(&s.state.u, &s.state.u, g) > 0.0) {
            return Err(Error::NotTimelike { tau: s.tau });
        }
    }
    let sigma = tr.proper_times()?;
    let samples = tr
        .samples
        .iter()
        .zip(sigma)
        .map(|(s, sig)| {
            let KinState { x, u, a } = s.state;
            let b = s.jerk;
            let uu = dot(&u, &u, g);
            let ua = dot(&u, &a, g);
            let t1 = 1.0 / uu.sqrt();
            let t2 = -ua / (uu * uu);
            let t3 = t1 * (-(dot(&a, &a, g) + dot(&u, &b, g)) / (uu * uu) + 4.0 * ua * ua / (uu * uu * uu));
            let [un, an, bn] = chain_rule3([u, a, b], [t1, t2, t3]);
            let state = KinState::new(x, un, an);
            Sample {
                tau: sig,
                state,
                jerk: bn,
                diagnostics: diagnostics(&state, &bn, &tr.params),
            }
        })
        .collect();
    Ok(Trajectory {
        samples,
        params: tr.params,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub max_first_integral_drift: f64,
    pub max_pirani_drift: f64,
    pub max_residual_norm: f64,
    pub samples: usize,
}

pub fn diagnostics_summary(tr: &Trajectory) -> Result<Summary> {
    let d0 = tr.first()?.diagnostics;
    let mut sum = Summary {
        max_first_integral_drift: 0.0,
        max_pirani_drift: 0.0,
        max_residual_norm: 0.0,
        samples: tr.samples.len(),
    };
    for s in &tr.samples {
        let d = s.diagnostics;
        sum.max_first_integral_drift = sum
            .max_first_integral_drift
            .max((d.first_integral - d0.first_integral).abs());
        sum.max_pirani_drift = sum.max_pirani_drift.max((d.pirani - d0.pirani).abs());
        sum.max_residual_norm = sum.max_residual_norm.max(d.residual_norm);
    }
    Ok(sum)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::autoparallel_rhs;
    use crate::minkowski::Signature;

    const G: Signature = Signature::LORENTZIAN;

    fn params() -> Params {
        Params::with_mass(1.0, FourVector::new(0.0, 0.0, 0.0, 0.8), 0.0, G).unwrap()
    }

    fn spinning() -> KinState {
        KinState::new(
            FourVector::ZERO,
            FourVector::basis(0),
            FourVector::new(0.0, 0.3, 0.0, 0.0),
        )
    }

    #[test]
    fn straight_line() {
        let u0 = FourVector::new(1.2, 0.3, -0.1, 0.2);
        let y0 = KinState::new(FourVector::new(1.0, 2.0, 3.0, 4.0), u0, FourVector::ZERO);
        let cfg = IntegratorConfig {
            tau_end: 3.0,
            ..Default::default()
        };
        let tr = integrate(autoparallel_rhs, &y0, &params(), &cfg).unwrap();
        for s in &tr.samples {
            assert!((s.state.x - (y0.x + u0 * s.tau)).max_abs() < 1e-13);
            assert_eq!(s.state.u, u0);
        }
        let sum = diagnostics_summary(&tr).unwrap();
        assert_eq!(sum.max_residual_norm, 0.0);
    }

    #[test]
    fn samples_are_increasing_and_end_on_horizon() {
        let cfg = IntegratorConfig {
            tau_end: 2.0,
            ..Default::default()
        };
        let tr = integrate(autoparallel_rhs, &spinning(), &params(), &cfg).unwrap();
        assert!(tr.samples.windows(2).all(|w| w[1].tau > w[0].tau));
        assert_eq!(tr.last().unwrap().tau, 2.0);
    }

    #[test]
    fn single_sample_summary() {
        let p = params();
        let st = spinning();
        let j = autoparallel_rhs(&st, &p).unwrap();
        let tr = Trajectory {
            samples: vec![Sample {
                tau: 0.0,
                state: st,
                jerk: j,
                diagnostics: diagnostics(&st, &j, &p),
            }],
            params: p,
        };
        let sum = diagnostics_summary(&tr).unwrap();
        assert_eq!((sum.max_first_integral_drift, sum.max_pirani_drift), (0.0, 0.0));
        let empty = Trajectory {
            samples: vec![],
            params: p,
        };
        assert_eq!(diagnostics_summary(&empty), Err(Error::EmptyTrajectory));
    }

    #[test]
    fn corrupted_sample_shows_in_summary() {
        let cfg = IntegratorConfig {
            tau_end: 1.0,
            ..Default::default()
        };
        let mut tr = integrate(autoparallel_rhs, &spinning(), &params(), &cfg).unwrap();
        let k = tr.samples.len() / 2;
        tr.samples[k].diagnostics.first_integral += 0.25;
        let sum = diagnostics_summary(&tr).unwrap();
        assert!((sum.max_first_integral_drift - 0.25).abs() < 1e-9);
    }

    #[test]
    fn proper_time_of_scaled_line() {
        let p = params();
        let u = FourVector::new(2.0, 0.0, 0.0, 0.0);
        let y0 = KinState::new(FourVector::ZERO, u, FourVector::ZERO);
        let cfg = IntegratorConfig {
            method: Method::Rk4Fixed,
            h0: 0.25,
            tau_end: 1.0,
            ..Default::default()
        };
        let tr = proper_time_reparametrize(&integrate(autoparallel_rhs, &y0, &p, &cfg).unwrap()).unwrap();
        for s in &tr.samples {
            assert!((s.state.u - FourVector::basis(0)).max_abs() < 1e-15);
            assert!((s.tau - s.state.x[0]).abs() < 1e-14);
        }
    }

    #[test]
    fn affine_reparametrization_halves_and_quarters() {
        let p = params();
        let st = KinState::new(
            FourVector::ZERO,
            FourVector::new(2.0, 0.0, 0.0, 0.0),
            FourVector::new(0.0, 0.6, 0.0, 0.0),
        );
        let tr = Trajectory {
            samples: vec![Sample {
                tau: 0.0,
                state: st,
                jerk: FourVector::ZERO,
                diagnostics: diagnostics(&st, &FourVector::ZERO, &p),
            }],
            params: p,
        };
        let out = proper_time_reparametrize(&tr).unwrap();
        let s = out.samples[0].state;
        assert_eq!(s.u, FourVector::basis(0));
        assert!((s.a - FourVector::new(0.0, 0.15, 0.0, 0.0)).max_abs() < 1e-16);
    }

    #[test]
    fn spacelike_velocity_is_rejected() {
        let p = params();
        let st = KinState::new(FourVector::ZERO, FourVector::basis(1), FourVector::ZERO);
        let tr = Trajectory {
            samples: vec![Sample {
                tau: 0.0,
                state: st,
                jerk: FourVector::ZERO,
                diagnostics: diagnostics(&st, &FourVector::ZERO, &p),
            }],
            params: p,
        };
        assert_eq!(proper_time_reparametrize(&tr), Err(Error::NotTimelike { tau: 0.0 }));
    }

    #[test]
    fn degenerate_spin_is_a_chart_exit() {
        let mut p = params();
        p.s = FourVector::new(0.8, 0.0, 0.0, 0.0);
        let st = KinState::new(
            FourVector::ZERO,
            FourVector::basis(0),
            FourVector::new(0.0, 0.3, 0.0, 0.0),
        );
        let err = integrate(autoparallel_rhs, &st, &p, &IntegratorConfig::default()).unwrap_err();
        assert!(matches!(err, Error::ChartExit { tau: Some(t), .. } if t == 0.0));
    }

    #[test]
    fn interpolation_reproduces_nodes() {
        let cfg = IntegratorConfig {
            tau_end: 1.0,
            ..Default::default()
        };
        let tr = integrate(autoparallel_rhs, &spinning(), &params(), &cfg).unwrap();
        for s in &tr.samples {
            let st = tr.state_at(s.tau).unwrap();
            assert!((st.x - s.state.x).max_abs() < 1e-15);
        }
    }
}
