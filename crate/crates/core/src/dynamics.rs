//! Residuals, Lagrangians and the autoparallel right-hand side of the free spinning top.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::minkowski::{
    dot, hodge_quad, hodge_triple, norm_abs, wedge_norm_sq, CoVector, FourVector, Signature, SpinTensor,
    DEFAULT_TOLERANCE,
};

/// Ratio `m0 / m` for which the spin-vector residual and the Euler–Poisson
/// residual are parallel on the Pirani surface.
pub const MASS_CORRESPONDENCE: f64 = 1.0;

/// Point `(x, u, u̇)` of the second-order jet.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct KinState {
    pub x: FourVector,
    pub u: FourVector,
    pub a: FourVector,
}

impl KinState {
    pub fn new(x: FourVector, u: FourVector, a: FourVector) -> Self {
        KinState { x, u, a }
    }
}

/// A [`KinState`] together with `ü`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Jet3 {
    pub base: KinState,
    pub j: FourVector,
}

impl Jet3 {
    pub fn new(base: KinState, j: FourVector) -> Self {
        Jet3 { base, j }
    }
}

/// Quantities that are not varied along the world line.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Params {
    /// Mass constant of the Euler–Poisson form.
    pub m: f64,
    /// Mass constant of the Mathisson and spin-vector forms.
    pub m0: f64,
    pub s: FourVector,
    /// Parametrization constant `A`.
    pub a_const: f64,
    pub g: Signature,
}

impl Params {
    pub fn new(m: f64, m0: f64, s: FourVector, a_const: f64, g: Signature) -> Result<Self> {
        let p = Params { m, m0, s, a_const, g };
        p.validate()?;
        Ok(p)
    }

    /// Uses `m0 = MASS_CORRESPONDENCE · m`.
    pub fn with_mass(m: f64, s: FourVector, a_const: f64, g: Signature) -> Result<Self> {
        Params::new(m, MASS_CORRESPONDENCE * m, s, a_const, g)
    }

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
        positive("m", self.m)?;
        positive("m0", self.m0)?;
        if !self.a_const.is_finite() {
            return Err(Error::InvalidParameter {
                field: "A",
                reason: format!("must be finite, got {}", self.a_const),
            });
        }
        if !(norm_abs(&self.s, &self.g) > 0.0 && self.s.is_finite()) {
            return Err(Error::InvalidParameter {
                field: "s",
                reason: "spin must have nonzero finite norm".into(),
            });
        }
        Ok(())
    }
}

/// Coordinates on the third-order contact manifold with time `t` as parameter.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct ContactState {
    pub t: f64,
    pub xs: [f64; 3],
    pub v: [f64; 3],
    pub vp: [f64; 3],
    pub vpp: [f64; 3],
    pub s0: f64,
    pub svec: [f64; 3],
}

fn unorm(u: &FourVector, g: &Signature) -> Result<f64> {
    let n = norm_abs(u, g);
    if n > 0.0 {
        Ok(n)
    } else {
        Err(Error::ZeroVelocity)
    }
}

fn spin_wedge(s: &FourVector, u: &FourVector, g: &Signature) -> Result<(f64, f64)> {
    let gram = wedge_norm_sq(s, u, g);
    let n = gram.abs().sqrt();
    if !(n > DEFAULT_TOLERANCE * norm_abs(s, g) * norm_abs(u, g)) {
        return Err(Error::DegenerateSpin(n));
    }
    Ok((gram, n))
}

/// `ε_{αβγδ}üᵝuᵞsᵟ − 3 (u̇·u)/‖u‖² ε_{αβγδ}u̇ᵝuᵞsᵟ − m0 (‖u‖² u̇_α − (u̇·u) u_α)`.
pub fn residual_dan(j: &Jet3, p: &Params) -> Result<CoVector> {
    let g = &p.g;
    let KinState { u, a, .. } = j.base;
    let nu = unorm(&u, g)?;
    let n2 = nu * nu;
    let au = dot(&a, &u, g);
    Ok(hodge_triple(&j.j, &u, &p.s, g)
        - hodge_triple(&a, &u, &p.s, g) * (3.0 * au / n2)
        - (a.lower(g) * n2 - u.lower(g) * au) * p.m0)
}

/// `m0 u̇^α − S^{αβ} ü_β`.
pub fn residual_mathisson_flat(j: &Jet3, spin: &SpinTensor, p: &Params) -> FourVector {
    j.base.a * p.m0 - spin.contract(&j.j.lower(&p.g))
}

/// `⟨∗(a∧b∧c), e_α⟩`, the covector of the Hodge dual with the free slot last.
fn star3(a: &FourVector, b: &FourVector, c: &FourVector, g: &Signature) -> CoVector {
    -hodge_triple(a, b, c, g)
}

/// Euler–Poisson expression of the homogeneous Lagrangians.
pub fn residual_euler_poisson(j: &Jet3, p: &Params) -> Result<CoVector> {
    let g = &p.g;
    let s = &p.s;
    let KinState { u, a, .. } = j.base;
    let nu = unorm(&u, g)?;
    let (gram, n) = spin_wedge(s, &u, g)?;
    let ns = norm_abs(s, g);
    let au = dot(&a, &u, g);
    // (u̇∧s)·(u∧s), oriented so that it equals ½ d|G(s,u)|/dτ.
    let mid = gram.signum() * (au * dot(s, s, g) - dot(&a, s, g) * dot(s, &u, g));
    Ok(
        star3(&j.j, &u, s, g) * n.powi(-3) - star3(&a, &u, s, g) * (3.0 * mid / n.powi(5))
            + (a.lower(g) * (1.0 / nu) - u.lower(g) * (au / nu.powi(3))) * (p.m / ns.powi(3)),
    )
}

/// `𝓛_(α)`: the homogeneous Lagrangian attached to the basis vector `e_(α)`.
pub fn lagrangian_homogeneous(alpha: usize, st: &KinState, p: &Params) -> Result<f64> {
    if alpha > 3 {
        return Err(Error::InvalidParameter {
            field: "alpha",
            reason: format!("must be 0..=3, got {alpha}"),
        });
    }
    lagrangian_along(&FourVector::basis(alpha), st, p)
}

/// The member of the Lagrangian family attached to an arbitrary vector `e`.
pub fn lagrangian_along(e: &FourVector, st: &KinState, p: &Params) -> Result<f64> {
    let g = &p.g;
    let s = &p.s;
    let KinState { u, a, .. } = *st;
    let nu = unorm(&u, g)?;
    let (gram, n) = spin_wedge(s, &u, g)?;
    let ns = norm_abs(s, g);
    let ss = dot(s, s, g);
    let ue = dot(&u, e, g);
    let se = dot(s, e, g);
    let w = *s * ue - u * se;
    let den = dot(&w, &w, g) - dot(e, e, g) * gram;
    let scale = ss.abs() * dot(&u, &u, g).abs() * dot(e, e, g).abs();
    if !(den.abs() > 1e-12 * scale) {
        return Err(Error::SingularChart("lagrangian basis denominator"));
    }
    let num = ss * ue - dot(s, &u, g) * se;
    let spin = hodge_quad(&a, &u, s, e, g) * num / (gram.signum() * ss * n * den);
    Ok(spin - p.m * nu / ns.powi(3))
}

/// Distance of `(u, s)` from the singular set of the Lagrangian attached to
/// `e`, relative to the natural scale (zero on the singular set).
pub fn lagrangian_chart_margin(e: &FourVector, u: &FourVector, s: &FourVector, g: &Signature) -> f64 {
    let gram = wedge_norm_sq(s, u, g);
    let w = *s * dot(u, e, g) - *u * dot(s, e, g);
    let den = dot(&w, &w, g) - dot(e, e, g) * gram;
    let scale = dot(s, s, g).abs() * dot(u, u, g).abs() * dot(e, e, g).abs();
    (den / scale)
        .abs()
        .min(gram.abs() / (dot(s, s, g) * dot(u, u, g)).abs())
}

/// Smallest relative denominator of `L_(i)` at `cs`.
pub fn contact_chart_margin(i: usize, cs: &ContactState) -> f64 {
    let k0 = i - 1;
    let (s0, sv, v) = (cs.s0, &cs.svec, &cs.v);
    let mut e = [0.0; 3];
    e[k0] = 1.0;
    let si = sv[k0];
    let q = axpy3(-s0, v, sv);
    let k = axpy3(-si, &e, sv);
    let z = axpy3(-(si - s0 * v[k0]), &e, &q);
    let kk = s0 * s0 + dot3(&k, &k);
    let kz = dot3(&k, &z);
    let s2 = s0 * s0 + dot3(sv, sv);
    let v2 = 1.0 + dot3(v, v);
    let sxv = cross3(sv, v);
    let br = dot3(&q, &q) + dot3(&sxv, &sxv);
    ((kk * dot3(&z, &z) - kz * kz).abs() / (s2 * s2 * v2)).min(br / (s2 * v2))
}

fn dot3(a: &[f64; 3], b: &[f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn cross3(a: &[f64; 3], b: &[f64; 3]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

fn axpy3(k: f64, a: &[f64; 3], b: &[f64; 3]) -> [f64; 3] {
    [k * a[0] + b[0], k * a[1] + b[1], k * a[2] + b[2]]
}

/// `L_(i)` for `i ∈ {1, 2, 3}`, with `V = v` and `W = v′`.
pub fn lagrangian_contact(i: usize, cs: &ContactState, m: f64) -> Result<f64> {
    if !(1..=3).contains(&i) {
        return Err(Error::InvalidParameter {
            field: "i",
            reason: format!("must be 1..=3, got {i}"),
        });
    }
    let k0 = i - 1;
    let (s0, sv, v, w) = (cs.s0, &cs.svec, &cs.v, &cs.vp);
    let mut e = [0.0; 3];
    e[k0] = 1.0;
    let si = sv[k0];
    let q = axpy3(-s0, v, sv);
    let k = axpy3(-si, &e, sv);
    let z = axpy3(-(si - s0 * v[k0]), &e, &q);
    let kk = s0 * s0 + dot3(&k, &k);
    let kz = dot3(&k, &z);
    let s2 = s0 * s0 + dot3(sv, sv);
    let den1 = kk * dot3(&z, &z) - kz * kz;
    if !(den1.abs() > 1e-12 * s2 * s2 * (1.0 + dot3(v, v))) {
        return Err(Error::SingularChart("contact chart denominator"));
    }
    let sxv = cross3(sv, v);
    let br = dot3(&q, &q) + dot3(&sxv, &sxv);
    if !(br > 1e-12 * s2 * (1.0 + dot3(v, v))) {
        return Err(Error::SingularChart("contact bracket"));
    }
    let triple = dot3(w, &cross3(&q, &e));
    let spin = s0 / s2 * (kk * (si - s0 * v[k0]) - si * kz) / den1 * triple / br.sqrt();
    Ok(spin - m / s2.powf(1.5) * (1.0 + dot3(v, v)).sqrt())
}

/// Three-dimensional Euler–Poisson expression `E` in the time parametrization.
pub fn residual_contact(cs: &ContactState, m: f64) -> Result<[f64; 3]> {
    let (s0, sv, v, w, wp) = (cs.s0, &cs.svec, &cs.v, &cs.vp, &cs.vpp);
    let q = axpy3(-s0, v, sv);
    let v2 = 1.0 + dot3(v, v);
    let s2 = s0 * s0 + dot3(sv, sv);
    let sv_v = s0 + dot3(sv, v);
    let br = v2 * s2 - sv_v * sv_v;
    if !(br > 1e-12 * v2 * s2) {
        return Err(Error::SingularChart("contact bracket"));
    }
    let t1 = cross3(wp, &q);
    let c2 = 3.0 * (s2 * dot3(w, v) - sv_v * dot3(sv, w)) / br.powf(2.5);
    let t2 = cross3(w, &q);
    let c3 = m / (v2.powf(1.5) * s2.powf(1.5));
    let wv = dot3(w, v);
    Ok(std::array::from_fn(|k| {
        t1[k] / br.powf(1.5) - c2 * t2[k] + c3 * (v2 * w[k] - wv * v[k])
    }))
}

/// `(s·u)/‖u‖`.
pub fn first_integral(u: &FourVector, p: &Params) -> Result<f64> {
    Ok(dot(&p.s, u, &p.g) / unorm(u, &p.g)?)
}

/// `Ψ = 3/‖u‖² (½ u̇·u̇ + A |G(u̇,u)|^{2/3})`.
pub fn psi_ansatz(u: &FourVector, udot: &FourVector, a_const: f64, g: &Signature) -> Result<f64> {
    let nu = unorm(u, g)?;
    let gram = wedge_norm_sq(udot, u, g).abs();
    Ok(3.0 / (nu * nu) * (0.5 * dot(udot, udot, g) + a_const * gram.powf(2.0 / 3.0)))
}

/// `ü = ξ(u̇, u)` of the autoparallel second-order connection.
pub fn autoparallel_rhs(st: &KinState, p: &Params) -> Result<FourVector> {
    let g = &p.g;
    let s = &p.s;
    let KinState { u, a, .. } = *st;
    let nu = unorm(&u, g)?;
    let (_, n) = spin_wedge(s, &u, g)?;
    let ns = norm_abs(s, g);
    let n2 = nu * nu;
    let au = dot(&a, &u, g);
    let psi = psi_ansatz(&u, &a, p.a_const, g)?;
    let k = p.m * n / (ns.powi(3) * nu);
    Ok(a * (3.0 * au / n2) + u * (psi - 3.0 * au * au / (n2 * n2)) - hodge_triple(&a, &u, s, g).raise(g) * k)
}
