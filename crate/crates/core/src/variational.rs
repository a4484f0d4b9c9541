//! Numerical calculus of variations for second-order Lagrangians of one parameter.

use serde::{Deserialize, Serialize};

use crate::dynamics::KinState;
use crate::error::{Error, Result};
use crate::minkowski::{CoVector, FourVector};

/// A Lagrange function of `(x, u, u̇)`.
pub trait ScalarField2: Sync {
    fn eval(&self, st: &KinState) -> Result<f64>;
}

impl<F> ScalarField2 for F
where
    F: Fn(&KinState) -> Result<f64> + Sync,
{
    fn eval(&self, st: &KinState) -> Result<f64> {
        self(st)
    }
}

/// Derivatives of `x` with respect to `τ` of orders 0 to 4.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Jet4 {
    pub x: FourVector,
    pub u: FourVector,
    pub udot: FourVector,
    pub uddot: FourVector,
    pub u3: FourVector,
}

impl Jet4 {
    pub fn base(&self) -> KinState {
        KinState::new(self.x, self.u, self.udot)
    }

    /// Second-order jet of the quartic Taylor curve at parameter `tau`.
    pub fn curve(&self, tau: f64) -> KinState {
        let t2 = tau * tau / 2.0;
        let t3 = t2 * tau / 3.0;
        let t4 = t3 * tau / 4.0;
        KinState::new(
            self.x + self.u * tau + self.udot * t2 + self.uddot * t3 + self.u3 * t4,
            self.u + self.udot * tau + self.uddot * t2 + self.u3 * t3,
            self.udot + self.uddot * tau + self.u3 * t2,
        )
    }

    /// Reciprocal of the fastest rate of change of the curve, capped at 1.
    fn time_scale(&self) -> f64 {
        let nu = self.u.max_abs().max(f64::MIN_POSITIVE);
        let rate = (self.udot.max_abs() / nu)
            .max((self.uddot.max_abs() / nu).sqrt())
            .max((self.u3.max_abs() / nu).cbrt());
        if rate > 1.0 {
            1.0 / rate
        } else {
            1.0
        }
    }
}

/// Relative finite-difference steps: `partial` for derivatives with respect to
/// the jet coordinates, `total` for derivatives along the curve.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FdSteps {
    pub partial: f64,
    pub total: f64,
}

impl Default for FdSteps {
    fn default() -> Self {
        FdSteps {
            partial: 1e-3,
            total: 2e-2,
        }
    }
}

fn chart_exit(e: Error) -> Error {
    match e {
        Error::ChartExit { .. } => e,
        other => Error::ChartExit {
            tau: None,
            reason: other.to_string(),
        },
    }
}

/// Central first derivative with two Richardson levels.
fn richardson1<T, F>(f: F, h: f64) -> Result<T>
where
    T: Lin,
    F: Fn(f64) -> Result<T>,
{
    let d = |k: f64| -> Result<T> { Ok(f(k)?.sub(&f(-k)?).scale(0.5 / k)) };
    extrapolate(d(h)?, d(0.5 * h)?, d(0.25 * h)?)
}

/// Two Richardson levels for an even error expansion in the step.
fn extrapolate<T: Lin>(d1: T, d2: T, d4: T) -> Result<T> {
    Ok(d4
        .scale(64.0 / 45.0)
        .sub(&d2.scale(20.0 / 45.0))
        .add(&d1.scale(1.0 / 45.0)))
}

#[derive(Clone, Copy)]
enum Order {
    First,
    Second,
}

const RIDDERS_SHRINK: f64 = 1.4;
const RIDDERS_LEVELS: usize = 10;

/// Ridders' extrapolation of a central difference quotient, started at step `h`
/// and shrunk geometrically. Starting steps that leave the chart are halved.
fn ridders<T, F>(f: F, h: f64, order: Order) -> Result<T>
where
    T: Lin + Clone,
    F: Fn(f64) -> Result<T>,
{
    let f0 = match order {
        Order::First => None,
        Order::Second => Some(f(0.0)?),
    };
    let quotient = |k: f64| -> Result<T> {
        match &f0 {
            None => Ok(f(k)?.sub(&f(-k)?).scale(0.5 / k)),
            Some(c) => Ok(f(k)?.add(&f(-k)?).sub(&c.scale(2.0)).scale(1.0 / (k * k))),
        }
    };
    let mut start = h;
    let mut last_err = None;
    for _ in 0..8 {
        match ridders_tableau(&quotient, start) {
            Ok(v) => return Ok(v),
            Err(e) => last_err = Some(e),
        }
        start *= 0.25;
    }
    Err(last_err.unwrap_or(Error::SingularChart("finite difference")))
}

fn ridders_tableau<T, Q>(quotient: &Q, h: f64) -> Result<T>
where
    T: Lin + Clone,
    Q: Fn(f64) -> Result<T>,
{
    let c2 = RIDDERS_SHRINK * RIDDERS_SHRINK;
    let mut hh = h;
    let mut prev: Vec<T> = vec![quotient(hh)?];
    let mut best = prev[0].clone();
    let mut err = f64::INFINITY;
    for _ in 1..RIDDERS_LEVELS {
        hh /= RIDDERS_SHRINK;
        let mut row: Vec<T> = vec![quotient(hh)?];
        let mut fac = c2;
        for j in 1..=prev.len() {
            let next = row[j - 1].scale(fac).sub(&prev[j - 1]).scale(1.0 / (fac - 1.0));
            fac *= c2;
            let e = next.sub(&row[j - 1]).norm().max(next.sub(&prev[j - 1]).norm());
            if e <= err {
                err = e;
                best = next.clone();
            }
            row.push(next);
        }
        let n = row.len();
        if row[n - 1].sub(&prev[n - 2]).norm() >= 2.0 * err {
            break;
        }
        prev = row;
    }
    Ok(best)
}

trait Lin: Sized {
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn scale(&self, k: f64) -> Self;
    fn norm(&self) -> f64;
}

impl Lin for f64 {
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn scale(&self, k: f64) -> Self {
        self * k
    }
    fn norm(&self) -> f64 {
        self.abs()
    }
}

impl Lin for [f64; 4] {
    fn add(&self, o: &Self) -> Self {
        std::array::from_fn(|i| self[i] + o[i])
    }
    fn sub(&self, o: &Self) -> Self {
        std::array::from_fn(|i| self[i] - o[i])
    }
    fn scale(&self, k: f64) -> Self {
        self.map(|c| c * k)
    }
    fn norm(&self) -> f64 {
        self.iter().fold(0.0, |m, c| m.max(c.abs()))
    }
}

#[derive(Clone, Copy)]
enum Slot {
    X,
    U,
    A,
}

fn gradient<L: ScalarField2 + ?Sized>(l: &L, st: &KinState, slot: Slot, h: f64) -> Result<[f64; 4]> {
    let mut out = [0.0; 4];
    for (k, o) in out.iter_mut().enumerate() {
        *o = ridders(
            |eps| {
                let mut p = *st;
                let v = match slot {
                    Slot::X => &mut p.x,
                    Slot::U => &mut p.u,
                    Slot::A => &mut p.a,
                };
                v[k] += eps;
                l.eval(&p)
            },
            h,
            Order::First,
        )?;
    }
    Ok(out)
}

/// `E_α = ∂L/∂x^α − D(∂L/∂u^α) + D²(∂L/∂u̇^α)` along the jet.
pub fn euler_lagrange_fd<L: ScalarField2 + ?Sized>(l: &L, j: &Jet4, steps: FdSteps) -> Result<CoVector> {
    let t = j.time_scale();
    let hx = steps.partial * j.x.max_abs().max(j.u.max_abs() * t).max(1.0);
    let hu = steps.partial * j.u.max_abs().max(f64::MIN_POSITIVE);
    let ha = steps.partial * j.udot.max_abs().max(j.u.max_abs() / t).max(f64::MIN_POSITIVE);
    let ht = steps.total * t;
    let run = || -> Result<CoVector> {
        let dx = gradient(l, &j.base(), Slot::X, hx)?;
        let dpu = ridders(|tau| gradient(l, &j.curve(tau), Slot::U, hu), ht, Order::First)?;
        let ddpa = ridders(|tau| gradient(l, &j.curve(tau), Slot::A, ha), ht, Order::Second)?;
        Ok(CoVector(dx.sub(&dpu).add(&ddpa)))
    };
    run().map_err(chart_exit)
}

/// Residuals of the Zermelo conditions at `p = 1`, `r = 2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ZermeloResidual {
    /// `ζ¹(L) − L` with `ζ¹ = u ∂/∂u + 2u̇ ∂/∂u̇`.
    pub r1: f64,
    /// `ζ²(L)` with `ζ² = u ∂/∂u̇`.
    pub r2: f64,
}

/// Evaluates both Zermelo residuals by directional differences of relative step `h`.
pub fn zermelo_check<L: ScalarField2 + ?Sized>(l: &L, st: &KinState, h: f64) -> Result<ZermeloResidual> {
    let run = || -> Result<ZermeloResidual> {
        let l0 = l.eval(st)?;
        let d1 = richardson1(
            |eps| {
                let e = eps.exp();
                l.eval(&KinState::new(st.x, st.u * e, st.a * (e * e)))
            },
            h,
        )?;
        let ratio = st.a.max_abs() / st.u.max_abs();
        let r = if ratio > 0.0 && ratio.is_finite() { ratio } else { 1.0 };
        let d2 = richardson1(|eps| l.eval(&KinState::new(st.x, st.u, st.a + st.u * eps)), h * r)?;
        Ok(ZermeloResidual { r1: d1 - l0, r2: d2 })
    };
    run().map_err(chart_exit)
}

/// `L(x, λu, λ²u̇ + λμu) − λ L(x, u, u̇)`.
pub fn zermelo_finite<L: ScalarField2 + ?Sized>(l: &L, st: &KinState, lambda: f64, mu: f64) -> Result<f64> {
    let moved = KinState::new(st.x, st.u * lambda, st.a * (lambda * lambda) + st.u * (lambda * mu));
    let run = || -> Result<f64> { Ok(l.eval(&moved)? - lambda * l.eval(st)?) };
    run().map_err(chart_exit)
}

/// Contact coordinates: `t`, `x^i` and the `t`-derivatives of `x^i` of orders 1 to 3.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct ContactJet3 {
    pub t: f64,
    pub x: [f64; 3],
    pub v1: [f64; 3],
    pub v2: [f64; 3],
    pub v3: [f64; 3],
}

/// `τ`-derivatives of `(t, x^i)` of orders 0 to 3.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct HomogeneousJet3 {
    pub x: FourVector,
    pub d1: FourVector,
    pub d2: FourVector,
    pub d3: FourVector,
}

/// Derivatives of `f(t(τ))` from those of `f` and of `t`, up to order 3.
pub fn chain_rule3<T>(f: [T; 3], t: [f64; 3]) -> [T; 3]
where
    T: Copy + std::ops::Add<Output = T> + std::ops::Mul<f64, Output = T>,
{
    let [f1, f2, f3] = f;
    let [t1, t2, t3] = t;
    [
        f1 * t1,
        f2 * (t1 * t1) + f1 * t2,
        f3 * (t1 * t1 * t1) + f2 * (3.0 * t1 * t2) + f1 * t3,
    ]
}

/// Inverse of [`chain_rule3`] with respect to `f`.
pub fn inverse_chain_rule3<T>(d: [T; 3], t: [f64; 3]) -> Result<[T; 3]>
where
    T: Copy + std::ops::Add<Output = T> + std::ops::Mul<f64, Output = T>,
{
    let [d1, d2, d3] = d;
    let [t1, t2, t3] = t;
    if t1 == 0.0 || !t1.is_finite() {
        return Err(Error::SingularParametrization);
    }
    let f1 = d1 * (1.0 / t1);
    let f2 = (d2 + f1 * (-t2)) * (1.0 / (t1 * t1));
    let f3 = (d3 + f2 * (-3.0 * t1 * t2) + f1 * (-t3)) * (1.0 / (t1 * t1 * t1));
    Ok([f1, f2, f3])
}

fn lift(t: f64, x: [f64; 3]) -> FourVector {
    FourVector([t, x[0], x[1], x[2]])
}

fn spatial(v: &FourVector) -> [f64; 3] {
    [v[1], v[2], v[3]]
}

/// Parametrized lift of a contact jet along `t(τ)` with derivatives `t_derivs`.
pub fn contact_to_homogeneous(cj: &ContactJet3, t_derivs: [f64; 3]) -> Result<HomogeneousJet3> {
    if t_derivs[0] == 0.0 {
        return Err(Error::SingularParametrization);
    }
    let v = [lift(1.0, cj.v1), lift(0.0, cj.v2), lift(0.0, cj.v3)];
    let [d1, d2, d3] = chain_rule3(v, t_derivs);
    Ok(HomogeneousJet3 {
        x: lift(cj.t, cj.x),
        d1,
        d2,
        d3,
    })
}

/// Contact image of a parametrized jet.
pub fn homogeneous_to_contact(hj: &HomogeneousJet3) -> Result<ContactJet3> {
    let t = [hj.d1[0], hj.d2[0], hj.d3[0]];
    let [v1, v2, v3] = inverse_chain_rule3([hj.d1, hj.d2, hj.d3], t)?;
    Ok(ContactJet3 {
        t: hj.x[0],
        x: spatial(&hj.x),
        v1: spatial(&v1),
        v2: spatial(&v2),
        v3: spatial(&v3),
    })
}

/// Second-order contact point: `t`, `x^i`, `dx/dt`, `d²x/dt²`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct ContactJet2 {
    pub t: f64,
    pub x: [f64; 3],
    pub v1: [f64; 3],
    pub v2: [f64; 3],
}

/// Contact image of a second-order parametrized jet.
pub fn contact_point(st: &KinState) -> Result<ContactJet2> {
    let u0 = st.u[0];
    if u0 == 0.0 || !u0.is_finite() {
        return Err(Error::SingularParametrization);
    }
    let v1 = st.u * (1.0 / u0);
    let v2 = (st.a - v1 * st.a[0]) * (1.0 / (u0 * u0));
    Ok(ContactJet2 {
        t: st.x[0],
        x: spatial(&st.x),
        v1: spatial(&v1),
        v2: spatial(&v2),
    })
}

/// Parameter-homogeneous Lagrangian `𝓛 = (L ∘ ℘) · dt/dτ` built from a contact Lagrangian.
#[derive(Debug, Clone, Copy)]
pub struct Homogenized<F> {
    contact: F,
}

pub fn homogenize_lagrangian<F>(contact: F) -> Homogenized<F>
where
    F: Fn(&ContactJet2) -> Result<f64> + Sync,
{
    Homogenized { contact }
}

impl<F> ScalarField2 for Homogenized<F>
where
    F: Fn(&ContactJet2) -> Result<f64> + Sync,
{
    fn eval(&self, st: &KinState) -> Result<f64> {
        Ok((self.contact)(&contact_point(st)?)? * st.u[0])
    }
}

/// `𝓔₀ = −Σ u^i E_i`, `𝓔_i = u⁰ E_i` for `u = (dt/dτ, dx^i/dτ)`.
pub fn homogenize_euler_poisson(e: [f64; 3], u: &FourVector) -> CoVector {
    CoVector([
        -(u[1] * e[0] + u[2] * e[1] + u[3] * e[2]),
        u[0] * e[0],
        u[0] * e[1],
        u[0] * e[2],
    ])
}

/// Outcome of the commutation constraints of a second-order connection.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AutoparallelCheck {
    pub c1: FourVector,
    pub c2: FourVector,
    pub kappa: f64,
    pub mu: f64,
}

fn split_along(r: FourVector, u: &FourVector) -> (FourVector, f64) {
    let uu: f64 = u.0.iter().map(|c| c * c).sum();
    let k = r.0.iter().zip(u.0.iter()).map(|(a, b)| a * b).sum::<f64>() / uu;
    (r - *u * k, k)
}

/// Checks `u̇ − ⅓ (∂ξ/∂u̇)u = κu` and `ξ − ⅓ (∂ξ/∂u)u − ⅔ (∂ξ/∂u̇)u̇ = μu`.
pub fn autoparallel_condition_check<F>(xi: F, st: &KinState, h: f64) -> Result<AutoparallelCheck>
where
    F: Fn(&KinState) -> Result<FourVector>,
{
    let run = || -> Result<AutoparallelCheck> {
        let f = |s: KinState| xi(&s).map(|v| v.0);
        let ratio = st.a.max_abs() / st.u.max_abs();
        let r = if ratio > 0.0 && ratio.is_finite() { ratio } else { 1.0 };
        let ja_u = richardson1(|e| f(KinState::new(st.x, st.u, st.a + st.u * e)), h * r)?;
        let ju_u = richardson1(|e| f(KinState::new(st.x, st.u * (1.0 + e), st.a)), h)?;
        let ja_a = richardson1(|e| f(KinState::new(st.x, st.u, st.a * (1.0 + e))), h)?;
        let x0 = FourVector(f(*st)?);
        let (c1, kappa) = split_along(st.a - FourVector(ja_u) * (1.0 / 3.0), &st.u);
        let (c2, mu) = split_along(
            x0 - FourVector(ju_u) * (1.0 / 3.0) - FourVector(ja_a) * (2.0 / 3.0),
            &st.u,
        );
        Ok(AutoparallelCheck { c1, c2, kappa, mu })
    };
    run().map_err(chart_exit)
}
