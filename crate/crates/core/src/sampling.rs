//! Random generators for property suites.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::dynamics::{ContactState, Jet3, KinState};
use crate::minkowski::{dot, wedge_norm_sq, FourVector, Signature};
use crate::variational::Jet4;

/// Independent stream for case `index` of the suite identified by `salt`.
pub fn case_rng(seed: u64, salt: &str, index: usize) -> ChaCha8Rng {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in salt.bytes() {
        h = (h ^ u64::from(b)).wrapping_mul(0x0100_0000_01b3);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ h);
    rng.set_stream(index as u64);
    rng
}

pub fn normal_vector<R: Rng + ?Sized>(rng: &mut R, scale: f64) -> FourVector {
    FourVector(std::array::from_fn(|_| scale * rng.sample::<f64, _>(StandardNormal)))
}

/// A velocity with `u·u ≥ 0.25` (timelike under a Lorentzian signature).
pub fn velocity<R: Rng + ?Sized>(rng: &mut R, g: &Signature) -> FourVector {
    loop {
        let mut u = normal_vector(rng, 1.0);
        if g.diag()[0] > 0.0 && g.diag()[1..].iter().all(|&d| d < 0.0) {
            let sp = (u[1] * u[1] + u[2] * u[2] + u[3] * u[3]).sqrt();
            u[0] = (sp * sp + rng.gen_range(0.25..4.0)).sqrt();
        }
        if dot(&u, &u, g) >= 0.25 {
            return u;
        }
    }
}

/// A spin vector with `|G(s,u)| ≥ 0.1 |s·s||u·u|` and `|s·s| ≥ 0.1`.
pub fn spin<R: Rng + ?Sized>(rng: &mut R, u: &FourVector, g: &Signature) -> FourVector {
    loop {
        let s = normal_vector(rng, 1.0);
        let ss = dot(&s, &s, g);
        if ss.abs() >= 0.1 && wedge_norm_sq(&s, u, g).abs() >= 0.1 * ss.abs() * dot(u, u, g).abs() {
            return s;
        }
    }
}

/// Removes the component of `v` along `w`.
pub fn project_out(v: &FourVector, w: &FourVector, g: &Signature) -> FourVector {
    *v - *w * (dot(v, w, g) / dot(w, w, g))
}

/// A spin vector orthogonal to `u` with `|s·s| ≥ 0.1`.
pub fn pirani_spin<R: Rng + ?Sized>(rng: &mut R, u: &FourVector, g: &Signature) -> FourVector {
    loop {
        let s = project_out(&normal_vector(rng, 1.0), u, g);
        if dot(&s, &s, g).abs() >= 0.1 {
            return s;
        }
    }
}

pub fn jet4<R: Rng + ?Sized>(rng: &mut R, g: &Signature) -> Jet4 {
    Jet4 {
        x: normal_vector(rng, 1.0),
        u: velocity(rng, g),
        udot: normal_vector(rng, 0.5),
        uddot: normal_vector(rng, 0.5),
        u3: normal_vector(rng, 0.5),
    }
}

pub fn jet3<R: Rng + ?Sized>(rng: &mut R, g: &Signature) -> Jet3 {
    let j = jet4(rng, g);
    Jet3::new(j.base(), j.uddot)
}

/// State on the physical branch: `s·u = 0` and `s·u̇ = 0`.
pub fn pirani_state<R: Rng + ?Sized>(rng: &mut R, g: &Signature) -> (KinState, FourVector) {
    let u = velocity(rng, g);
    let s = pirani_spin(rng, &u, g);
    let a = project_out(&normal_vector(rng, 0.5), &s, g);
    (KinState::new(normal_vector(rng, 1.0), u, a), s)
}

pub fn contact_state<R: Rng + ?Sized>(rng: &mut R) -> ContactState {
    let v3 = |rng: &mut R, k: f64| -> [f64; 3] { std::array::from_fn(|_| k * rng.sample::<f64, _>(StandardNormal)) };
    ContactState {
        t: rng.sample(StandardNormal),
        xs: v3(rng, 1.0),
        v: v3(rng, 0.4),
        vp: v3(rng, 0.5),
        vpp: v3(rng, 0.5),
        s0: rng.sample(StandardNormal),
        svec: v3(rng, 1.0),
    }
}
