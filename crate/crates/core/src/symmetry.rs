//! Pseudo-orthogonal group actions and a covariance harness for the dynamical operations.

use nalgebra::Matrix4;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::dynamics::{Jet3, KinState, Params};
use crate::error::Result;
use crate::minkowski::{generator_matrix, CoVector, FourVector, LorentzMatrix, Signature, SkewTensor};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum LorentzKind {
    Rotation,
    Boost,
    Product,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LorentzElement {
    pub matrix: LorentzMatrix,
    pub kind: LorentzKind,
}

impl LorentzElement {
    pub fn identity(g: &Signature) -> Self {
        LorentzElement {
            matrix: LorentzMatrix::identity(g),
            kind: LorentzKind::Product,
        }
    }

    pub fn compose(&self, other: &LorentzElement) -> LorentzElement {
        let kind = if self.kind == other.kind {
            self.kind
        } else {
            LorentzKind::Product
        };
        LorentzElement {
            matrix: self.matrix.compose(&other.matrix),
            kind,
        }
    }

    pub fn apply(&self, v: &FourVector) -> FourVector {
        self.matrix.apply(v)
    }
}

const TAYLOR_ORDER: i32 = 13;

/// Matrix exponential by scaling and squaring of a truncated Taylor series.
pub fn matrix_exp(m: &Matrix4<f64>) -> Matrix4<f64> {
    let norm = m.abs().row_sum().amax();
    let squarings = if norm > 0.5 {
        (norm / 0.5).log2().ceil() as i32
    } else {
        0
    };
    let a = m / 2f64.powi(squarings);
    let mut term = Matrix4::identity();
    let mut sum = Matrix4::identity();
    for k in 1..=TAYLOR_ORDER {
        term = term * a / f64::from(k);
        sum += term;
    }
    for _ in 0..squarings {
        sum = sum * sum;
    }
    sum
}

/// `exp(ε G)` with `G^α_γ = −η^{αβ} Ω_{βγ}`.
pub fn exp_generator(omega: &SkewTensor, eps: f64, g: &Signature) -> Result<LorentzElement> {
    let c = omega.components();
    let mixed = c[..3].iter().any(|&x| x != 0.0);
    let spatial = c[3..].iter().any(|&x| x != 0.0);
    let kind = match (mixed, spatial) {
        (false, _) => LorentzKind::Rotation,
        (true, false) => LorentzKind::Boost,
        (true, true) => LorentzKind::Product,
    };
    let m = matrix_exp(&(generator_matrix(omega, g) * eps));
    Ok(LorentzElement {
        matrix: LorentzMatrix::with_tol(m, g, 1e-12)?,
        kind,
    })
}

/// Random proper element: an arbitrary rotation followed by a boost of rapidity
/// at most `max_rapidity`. Under a definite signature every generator is a rotation.
pub fn random_proper<R: Rng + ?Sized>(rng: &mut R, g: &Signature, max_rapidity: f64) -> Result<LorentzElement> {
    let unit = |rng: &mut R| -> [f64; 3] {
        loop {
            let v: [f64; 3] = std::array::from_fn(|_| rng.gen_range(-1.0..1.0));
            let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
            if n > 0.1 && n <= 1.0 {
                return v.map(|c| c / n);
            }
        }
    };
    let lorentzian = g.diag()[0] * g.diag()[1] < 0.0;
    if !lorentzian {
        let c: [f64; 6] = std::array::from_fn(|_| rng.gen_range(-2.0..2.0));
        return exp_generator(&SkewTensor::from_components(c), 1.0, g);
    }
    let axis = unit(rng);
    let theta = rng.gen_range(0.0..std::f64::consts::TAU);
    let rot = exp_generator(
        &SkewTensor::from_components([0.0, 0.0, 0.0, axis[2], -axis[1], axis[0]]),
        theta,
        g,
    )?;
    let dir = unit(rng);
    let chi = rng.gen_range(0.0..=max_rapidity);
    let boost = exp_generator(
        &SkewTensor::from_components([dir[0], dir[1], dir[2], 0.0, 0.0, 0.0]),
        chi,
        g,
    )?;
    Ok(boost.compose(&rot))
}

pub fn transform_state(l: &LorentzElement, st: &KinState) -> KinState {
    KinState::new(l.apply(&st.x), l.apply(&st.u), l.apply(&st.a))
}

pub fn transform_jet(l: &LorentzElement, j: &Jet3) -> Jet3 {
    Jet3::new(transform_state(l, &j.base), l.apply(&j.j))
}

/// Values with a definite transformation law.
pub trait Covariant: Sized {
    fn transform(&self, l: &LorentzElement) -> Self;
    /// Max-norm distance.
    fn distance(&self, other: &Self) -> f64;
    fn magnitude(&self) -> f64;
}

impl Covariant for FourVector {
    fn transform(&self, l: &LorentzElement) -> Self {
        l.apply(self)
    }
    fn distance(&self, other: &Self) -> f64 {
        (*self - *other).max_abs()
    }
    fn magnitude(&self) -> f64 {
        self.max_abs()
    }
}

impl Covariant for CoVector {
    fn transform(&self, l: &LorentzElement) -> Self {
        l.matrix.apply_covector(self)
    }
    fn distance(&self, other: &Self) -> f64 {
        (*self - *other).max_abs()
    }
    fn magnitude(&self) -> f64 {
        self.max_abs()
    }
}

impl Covariant for f64 {
    fn transform(&self, _: &LorentzElement) -> Self {
        *self
    }
    fn distance(&self, other: &Self) -> f64 {
        (self - other).abs()
    }
    fn magnitude(&self) -> f64 {
        self.abs()
    }
}

/// Everything an operation under test may depend on.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CovarianceInputs {
    pub jet: Jet3,
    pub params: Params,
    pub spin: SkewTensor,
    /// Chart vector for the Lagrangian family; transformed with the state.
    pub axis: FourVector,
}

impl CovarianceInputs {
    pub fn transform(&self, l: &LorentzElement) -> Self {
        let mut params = self.params;
        params.s = l.apply(&params.s);
        CovarianceInputs {
            jet: transform_jet(l, &self.jet),
            params,
            spin: l.matrix.apply_skew(&self.spin),
            axis: l.apply(&self.axis),
        }
    }
}

/// `‖op(Λ·in) − Λ·op(in)‖∞ / ‖Λ·op(in)‖∞`.
pub fn covariance_residual<O, F>(op: F, l: &LorentzElement, inputs: &CovarianceInputs) -> Result<f64>
where
    O: Covariant,
    F: Fn(&CovarianceInputs) -> Result<O>,
{
    let expected = op(inputs)?.transform(l);
    let actual = op(&inputs.transform(l))?;
    Ok(actual.distance(&expected) / expected.magnitude().max(f64::MIN_POSITIVE))
}
