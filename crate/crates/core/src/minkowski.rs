//! Flat four-dimensional tensor algebra with a diagonal metric of arbitrary signature.

use std::ops::{Add, AddAssign, Index, IndexMut, Mul, Neg, Sub};

use nalgebra::{Matrix4, Vector4};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Relative tolerance used by the constraint predicates (Pirani, Lorentz).
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

/// Diagonal metric `diag` and orientation `ε_{0123}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Signature {
    diag: [f64; 4],
    orientation: f64,
}

impl Signature {
    /// `(+,−,−,−)` with `ε_{0123} = +1`.
    pub const LORENTZIAN: Signature = Signature {
        diag: [1.0, -1.0, -1.0, -1.0],
        orientation: 1.0,
    };
    /// `(+,+,+,+)` with `ε_{0123} = +1`.
    pub const EUCLIDEAN: Signature = Signature {
        diag: [1.0; 4],
        orientation: 1.0,
    };

    pub fn new(diag: [i8; 4], orientation: i8) -> Result<Self> {
        if diag.iter().any(|d| d.abs() != 1) {
            return Err(Error::InvalidParameter {
                field: "signature",
                reason: format!("entries must be +1 or -1, got {diag:?}"),
            });
        }
        if orientation.abs() != 1 {
            return Err(Error::InvalidParameter {
                field: "orientation",
                reason: format!("must be +1 or -1, got {orientation}"),
            });
        }
        Ok(Signature {
            diag: diag.map(f64::from),
            orientation: f64::from(orientation),
        })
    }

    pub fn with_orientation(mut self, orientation: i8) -> Result<Self> {
        self.orientation = Signature::new([1; 4], orientation)?.orientation;
        Ok(self)
    }

    pub fn diag(&self) -> [f64; 4] {
        self.diag
    }

    pub fn orientation(&self) -> f64 {
        self.orientation
    }

    /// Determinant of the metric.
    pub fn det(&self) -> f64 {
        self.diag.iter().product()
    }

    pub fn metric(&self) -> Matrix4<f64> {
        Matrix4::from_diagonal(&Vector4::from(self.diag))
    }
}

impl Default for Signature {
    fn default() -> Self {
        Signature::LORENTZIAN
    }
}

macro_rules! four_component {
    ($name:ident) => {
        impl $name {
            pub const ZERO: $name = $name([0.0; 4]);

            pub fn new(c0: f64, c1: f64, c2: f64, c3: f64) -> Self {
                $name([c0, c1, c2, c3])
            }

            pub fn basis(i: usize) -> Self {
                let mut c = [0.0; 4];
                c[i] = 1.0;
                $name(c)
            }

            /// Largest absolute component.
            pub fn max_abs(&self) -> f64 {
                self.0.iter().fold(0.0, |m, c| m.max(c.abs()))
            }

            /// Euclidean length of the component array (not a metric norm).
            pub fn euclid(&self) -> f64 {
                self.0.iter().map(|c| c * c).sum::<f64>().sqrt()
            }

            pub fn is_finite(&self) -> bool {
                self.0.iter().all(|c| c.is_finite())
            }

            pub fn components(&self) -> [f64; 4] {
                self.0
            }
        }

        impl Add for $name {
            type Output = $name;
            fn add(self, o: $name) -> $name {
                $name(std::array::from_fn(|i| self.0[i] + o.0[i]))
            }
        }

        impl AddAssign for $name {
            fn add_assign(&mut self, o: $name) {
                for i in 0..4 {
                    self.0[i] += o.0[i];
                }
            }
        }

        impl Sub for $name {
            type Output = $name;
            fn sub(self, o: $name) -> $name {
                $name(std::array::from_fn(|i| self.0[i] - o.0[i]))
            }
        }

        impl Neg for $name {
            type Output = $name;
            fn neg(self) -> $name {
                $name(self.0.map(|c| -c))
            }
        }

        impl Mul<f64> for $name {
            type Output = $name;
            fn mul(self, k: f64) -> $name {
                $name(self.0.map(|c| c * k))
            }
        }

        impl Mul<$name> for f64 {
            type Output = $name;
            fn mul(self, v: $name) -> $name {
                v * self
            }
        }

        impl Index<usize> for $name {
            type Output = f64;
            fn index(&self, i: usize) -> &f64 {
                &self.0[i]
            }
        }

        impl IndexMut<usize> for $name {
            fn index_mut(&mut self, i: usize) -> &mut f64 {
                &mut self.0[i]
            }
        }

        impl From<[f64; 4]> for $name {
            fn from(c: [f64; 4]) -> Self {
                $name(c)
            }
        }
    };
}

/// Contravariant components `v^α`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct FourVector(pub [f64; 4]);

/// Covariant components `ω_α`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct CoVector(pub [f64; 4]);

four_component!(FourVector);
four_component!(CoVector);

impl FourVector {
    pub fn lower(&self, g: &Signature) -> CoVector {
        CoVector(std::array::from_fn(|i| g.diag[i] * self.0[i]))
    }
}

impl CoVector {
    pub fn raise(&self, g: &Signature) -> FourVector {
        FourVector(std::array::from_fn(|i| g.diag[i] * self.0[i]))
    }

    /// Natural pairing `ω_α v^α`, independent of the metric.
    pub fn pair(&self, v: &FourVector) -> f64 {
        (0..4).map(|i| self.0[i] * v.0[i]).sum()
    }
}

pub fn dot(a: &FourVector, b: &FourVector, g: &Signature) -> f64 {
    (0..4).map(|i| g.diag[i] * a.0[i] * b.0[i]).sum()
}

/// `sqrt|a·a|`.
pub fn norm_abs(a: &FourVector, g: &Signature) -> f64 {
    dot(a, a, g).abs().sqrt()
}

/// Gram determinant `(a·a)(b·b) − (a·b)²` of the 2-form `a∧b`.
pub fn wedge_norm_sq(a: &FourVector, b: &FourVector, g: &Signature) -> f64 {
    let ab = dot(a, b, g);
    dot(a, a, g) * dot(b, b, g) - ab * ab
}

fn det3(r: [[f64; 3]; 3]) -> f64 {
    r[0][0] * (r[1][1] * r[2][2] - r[1][2] * r[2][1]) - r[0][1] * (r[1][0] * r[2][2] - r[1][2] * r[2][0])
        + r[0][2] * (r[1][0] * r[2][1] - r[1][1] * r[2][0])
}

/// `ε_{αβγδ} a^β b^γ c^δ`, free index first.
pub fn hodge_triple(a: &FourVector, b: &FourVector, c: &FourVector, g: &Signature) -> CoVector {
    CoVector(std::array::from_fn(|alpha| {
        let cols: Vec<usize> = (0..4).filter(|&k| k != alpha).collect();
        let row = |v: &FourVector| [v.0[cols[0]], v.0[cols[1]], v.0[cols[2]]];
        let sign = if alpha % 2 == 0 { 1.0 } else { -1.0 };
        g.orientation * sign * det3([row(a), row(b), row(c)])
    }))
}

/// `ε_{αβγδ} a^α b^β c^γ d^δ`.
///
/// Chaining identity: `hodge_quad(a, b, c, d) = hodge_triple(b, c, d).pair(a)`.
pub fn hodge_quad(a: &FourVector, b: &FourVector, c: &FourVector, d: &FourVector, g: &Signature) -> f64 {
    hodge_triple(b, c, d, g).pair(a)
}

/// Index pairs `(α, β)` with `α < β` in storage order.
pub const PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

/// Skew-symmetric rank-2 contravariant tensor, stored by its six upper-triangle entries.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct SkewTensor {
    c: [f64; 6],
}

/// Spin tensor `S^{αβ}`.
pub type SpinTensor = SkewTensor;

impl SkewTensor {
    pub const ZERO: SkewTensor = SkewTensor { c: [0.0; 6] };

    /// Components ordered as [`PAIRS`].
    pub fn from_components(c: [f64; 6]) -> Self {
        SkewTensor { c }
    }

    /// Accepts a full matrix and rejects it unless `M + Mᵀ` vanishes to `tol` relative.
    pub fn from_matrix(m: [[f64; 4]; 4], tol: f64) -> Result<Self> {
        let scale = m.iter().flatten().fold(0.0f64, |s, x| s.max(x.abs()));
        let defect = (0..4)
            .flat_map(|i| (0..4).map(move |j| (i, j)))
            .fold(0.0f64, |d, (i, j)| d.max((m[i][j] + m[j][i]).abs()));
        if defect > tol * scale.max(f64::MIN_POSITIVE) {
            return Err(Error::NotSkew(defect));
        }
        Ok(SkewTensor {
            c: PAIRS.map(|(i, j)| 0.5 * (m[i][j] - m[j][i])),
        })
    }

    pub fn components(&self) -> [f64; 6] {
        self.c
    }

    pub fn get(&self, a: usize, b: usize) -> f64 {
        match a.cmp(&b) {
            std::cmp::Ordering::Equal => 0.0,
            std::cmp::Ordering::Less => self.c[pair_index(a, b)],
            std::cmp::Ordering::Greater => -self.c[pair_index(b, a)],
        }
    }

    pub fn matrix(&self) -> [[f64; 4]; 4] {
        std::array::from_fn(|a| std::array::from_fn(|b| self.get(a, b)))
    }

    pub fn max_abs(&self) -> f64 {
        self.c.iter().fold(0.0, |m, x| m.max(x.abs()))
    }

    /// `S^{αβ} ω_β`.
    pub fn contract(&self, w: &CoVector) -> FourVector {
        FourVector(std::array::from_fn(|a| (0..4).map(|b| self.get(a, b) * w.0[b]).sum()))
    }
}

fn pair_index(a: usize, b: usize) -> usize {
    PAIRS.iter().position(|&p| p == (a, b)).expect("a < b < 4")
}

/// `s_δ = (1/(2‖u‖)) ε_{αβγδ} u^α S^{βγ}`.
pub fn spin_tensor_to_vector(s: &SpinTensor, u: &FourVector, g: &Signature) -> Result<CoVector> {
    let nu = norm_abs(u, g);
    if nu == 0.0 {
        return Err(Error::ZeroVelocity);
    }
    // Each unordered pair {β,γ} contributes twice.
    let mut out = CoVector::ZERO;
    for (k, &(b, c)) in PAIRS.iter().enumerate() {
        let sbc = s.c[k];
        if sbc == 0.0 {
            continue;
        }
        let e = FourVector::basis(b);
        let f = FourVector::basis(c);
        // ε_{αbcδ} u^α = −ε_{δbcα} u^α
        let w = hodge_triple(&e, &f, u, g);
        out += w * (-sbc / nu);
    }
    Ok(out)
}

/// Inverse of [`spin_tensor_to_vector`] on the Pirani surface `s·u = 0`.
pub fn spin_vector_to_tensor(s: &FourVector, u: &FourVector, g: &Signature) -> Result<SpinTensor> {
    spin_vector_to_tensor_with_tol(s, u, g, DEFAULT_TOLERANCE)
}

pub fn spin_vector_to_tensor_with_tol(s: &FourVector, u: &FourVector, g: &Signature, tol: f64) -> Result<SpinTensor> {
    let uu = dot(u, u, g);
    let nu = uu.abs().sqrt();
    if nu == 0.0 {
        return Err(Error::ZeroVelocity);
    }
    let ns = norm_abs(s, g).max(s.max_abs());
    let rel = dot(s, u, g).abs() / (ns * nu).max(f64::MIN_POSITIVE);
    if ns > 0.0 && rel > tol {
        return Err(Error::PiraniViolated(rel));
    }
    let ul = u.lower(g);
    let sl = s.lower(g);
    let k = uu.signum() * g.orientation / nu;
    // S^{αβ} = k · perm(αβγδ) u_γ s_δ with the plain permutation symbol.
    let c = PAIRS.map(|(a, b)| {
        let (c, d) = complement(a, b);
        k * perm_sign([a, b, c, d]) * (ul.0[c] * sl.0[d] - ul.0[d] * sl.0[c])
    });
    Ok(SkewTensor { c })
}

fn complement(a: usize, b: usize) -> (usize, usize) {
    let mut rest = (0..4).filter(|&k| k != a && k != b);
    (rest.next().unwrap(), rest.next().unwrap())
}

fn perm_sign(p: [usize; 4]) -> f64 {
    let mut inversions = 0;
    for i in 0..4 {
        for j in i + 1..4 {
            if p[i] > p[j] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// A matrix `Λ` with `Λᵀ η Λ = η`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LorentzMatrix {
    m: Matrix4<f64>,
    g: Signature,
}

impl LorentzMatrix {
    pub fn new(m: Matrix4<f64>, g: &Signature) -> Result<Self> {
        Self::with_tol(m, g, DEFAULT_TOLERANCE)
    }

    pub fn with_tol(m: Matrix4<f64>, g: &Signature, tol: f64) -> Result<Self> {
        let eta = g.metric();
        let defect = (m.transpose() * eta * m - eta).amax();
        let scale = m.amax().powi(2).max(1.0);
        if !defect.is_finite() || defect > tol * scale {
            return Err(Error::NotLorentz(defect));
        }
        Ok(LorentzMatrix { m, g: *g })
    }

    pub fn identity(g: &Signature) -> Self {
        LorentzMatrix {
            m: Matrix4::identity(),
            g: *g,
        }
    }

    /// Boost of rapidity `chi` along spatial axis `axis ∈ {1,2,3}`.
    pub fn boost(axis: usize, chi: f64, g: &Signature) -> Result<Self> {
        check_axis(axis)?;
        let mut m = Matrix4::identity();
        m[(0, 0)] = chi.cosh();
        m[(axis, axis)] = chi.cosh();
        m[(0, axis)] = chi.sinh();
        m[(axis, 0)] = chi.sinh();
        Self::new(m, g)
    }

    /// Rotation by `theta` in the `(i, j)` plane, taking `e_i` towards `e_j`.
    pub fn rotation(i: usize, j: usize, theta: f64, g: &Signature) -> Result<Self> {
        if i == j || i > 3 || j > 3 {
            return Err(Error::InvalidParameter {
                field: "rotation plane",
                reason: format!("({i}, {j}) is not a coordinate plane"),
            });
        }
        let mut m = Matrix4::identity();
        m[(i, i)] = theta.cos();
        m[(j, j)] = theta.cos();
        m[(j, i)] = theta.sin();
        m[(i, j)] = -theta.sin();
        Self::new(m, g)
    }

    pub fn matrix(&self) -> &Matrix4<f64> {
        &self.m
    }

    pub fn signature(&self) -> &Signature {
        &self.g
    }

    pub fn det(&self) -> f64 {
        self.m.determinant()
    }

    pub fn compose(&self, other: &LorentzMatrix) -> LorentzMatrix {
        LorentzMatrix {
            m: self.m * other.m,
            g: self.g,
        }
    }

    pub fn inverse(&self) -> LorentzMatrix {
        let eta = self.g.metric();
        LorentzMatrix {
            m: eta * self.m.transpose() * eta,
            g: self.g,
        }
    }

    pub fn apply(&self, v: &FourVector) -> FourVector {
        FourVector((self.m * Vector4::from(v.0)).into())
    }

    /// Inverse-transpose action `Λ^{-T} ω = η Λ η ω`.
    pub fn apply_covector(&self, w: &CoVector) -> CoVector {
        let eta = self.g.metric();
        CoVector((eta * self.m * eta * Vector4::from(w.0)).into())
    }

    /// `Λ^α_γ Λ^β_δ S^{γδ}`.
    pub fn apply_skew(&self, s: &SkewTensor) -> SkewTensor {
        let sm = Matrix4::from_fn(|a, b| s.get(a, b));
        let r = self.m * sm * self.m.transpose();
        SkewTensor {
            c: PAIRS.map(|(a, b)| r[(a, b)]),
        }
    }
}

fn check_axis(axis: usize) -> Result<()> {
    if (1..=3).contains(&axis) {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            field: "axis",
            reason: format!("spatial axis must be 1, 2 or 3, got {axis}"),
        })
    }
}

/// Infinitesimal action `Ω^{αβ} v_α`.
pub fn generator_action(omega: &SkewTensor, v: &FourVector, g: &Signature) -> FourVector {
    let vl = v.lower(g);
    FourVector(std::array::from_fn(|b| (0..4).map(|a| omega.get(a, b) * vl.0[a]).sum()))
}

/// Matrix `G^α_γ = −η^{αβ} Ω_{βγ}` of [`generator_action`].
pub fn generator_matrix(omega: &SkewTensor, g: &Signature) -> Matrix4<f64> {
    Matrix4::from_fn(|a, c| -g.diag[c] * omega.get(a, c))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn eps_oracle(idx: [usize; 4]) -> f64 {
        // Sort with bubble swaps and count transpositions.
        let mut p = idx;
        let mut sign = 1.0;
        for i in 0..4 {
            for j in 0..3 - i {
                if p[j] == p[j + 1] {
                    return 0.0;
                }
                if p[j] > p[j + 1] {
                    p.swap(j, j + 1);
                    sign = -sign;
                }
            }
        }
        if p != [0, 1, 2, 3] {
            return 0.0;
        }
        sign
    }

    fn v(c: [f64; 4]) -> FourVector {
        FourVector(c)
    }

    const G: Signature = Signature::LORENTZIAN;

    #[test]
    fn dot_examples() {
        assert_eq!(dot(&v([1., 0., 0., 0.]), &v([1., 0., 0., 0.]), &G), 1.0);
        assert_eq!(dot(&v([0., 1., 0., 0.]), &v([0., 1., 0., 0.]), &G), -1.0);
        assert_eq!(dot(&v([1., 1., 0., 0.]), &v([1., -1., 0., 0.]), &G), 2.0);
    }

    #[test]
    fn norm_examples() {
        assert_eq!(norm_abs(&v([1., 0., 0., 0.]), &G), 1.0);
        assert_eq!(norm_abs(&v([0., 0., 0., -2.5]), &G), 2.5);
        assert_eq!(norm_abs(&v([1., 1., 0., 0.]), &G), 0.0);
    }

    #[test]
    fn wedge_examples() {
        let e0 = FourVector::basis(0);
        assert_eq!(wedge_norm_sq(&e0, &FourVector::basis(3), &G), -1.0);
        assert_eq!(wedge_norm_sq(&e0, &(e0 * 3.0), &G), 0.0);
        assert_eq!(wedge_norm_sq(&e0, &v([1., 0., 0., 1.]), &G), -1.0);
    }

    #[test]
    fn hodge_examples() {
        let e = FourVector::basis;
        assert_eq!(hodge_triple(&e(1), &e(2), &e(3), &G), CoVector([1., 0., 0., 0.]));
        assert_eq!(hodge_triple(&e(0), &e(1), &e(2), &G), CoVector([0., 0., 0., -1.]));
        assert_eq!(hodge_quad(&e(0), &e(1), &e(2), &e(3), &G), 1.0);
        assert_eq!(hodge_quad(&e(1), &e(0), &e(2), &e(3), &G), -1.0);
        assert_eq!(hodge_quad(&e(1), &e(1), &e(2), &e(3), &G), 0.0);
    }

    #[test]
    fn hodge_matches_permutation_sum() {
        let a = v([0.3, -1.2, 0.7, 2.0]);
        let b = v([1.1, 0.4, -0.9, 0.2]);
        let c = v([-0.5, 0.8, 1.3, -0.6]);
        let d = v([0.9, -0.1, 0.25, 1.7]);
        for o in [1, -1] {
            let g = Signature::LORENTZIAN.with_orientation(o).unwrap();
            let h = hodge_triple(&a, &b, &c, &g);
            let mut quad = 0.0;
            for al in 0..4 {
                let mut acc = 0.0;
                for be in 0..4 {
                    for ga in 0..4 {
                        for de in 0..4 {
                            let e = eps_oracle([al, be, ga, de]) * f64::from(o);
                            acc += e * a[be] * b[ga] * c[de];
                            quad += e * a[al] * b[be] * c[ga] * d[de];
                        }
                    }
                }
                assert!((h[al] - acc).abs() < 1e-14);
            }
            assert!((hodge_quad(&a, &b, &c, &d, &g) - quad).abs() < 1e-13);
        }
    }

    #[test]
    fn spin_conversion_examples() {
        let sigma = 0.7;
        let u = FourVector::basis(0);
        let mut m = [[0.0; 4]; 4];
        m[1][2] = sigma;
        m[2][1] = -sigma;
        let st = SpinTensor::from_matrix(m, 1e-12).unwrap();
        let s = spin_tensor_to_vector(&st, &u, &G).unwrap();
        assert_eq!(s, CoVector([0., 0., 0., sigma]));

        let back = spin_vector_to_tensor(&s.raise(&G), &u, &G).unwrap();
        for (k, &(a, b)) in PAIRS.iter().enumerate() {
            let want = if (a, b) == (1, 2) { sigma } else { 0.0 };
            assert!((back.components()[k] - want).abs() < 1e-15);
        }
        assert_eq!(
            spin_vector_to_tensor(&FourVector::ZERO, &u, &G).unwrap(),
            SpinTensor::ZERO
        );
        assert!(matches!(
            spin_vector_to_tensor(&v([0.1, 0., 0., 1.]), &u, &G),
            Err(Error::PiraniViolated(_))
        ));
        assert_eq!(
            spin_tensor_to_vector(&st, &FourVector::ZERO, &G),
            Err(Error::ZeroVelocity)
        );
    }

    #[test]
    fn spin_tensor_to_vector_matches_permutation_sum() {
        let u = v([1.7, 0.3, -0.4, 0.9]);
        let st = SpinTensor::from_components([0.2, -0.5, 0.9, 1.1, -0.3, 0.6]);
        let nu = norm_abs(&u, &G);
        let s = spin_tensor_to_vector(&st, &u, &G).unwrap();
        for de in 0..4 {
            let mut acc = 0.0;
            for al in 0..4 {
                for be in 0..4 {
                    for ga in 0..4 {
                        acc += eps_oracle([al, be, ga, de]) * u[al] * st.get(be, ga);
                    }
                }
            }
            assert!((s[de] - acc / (2.0 * nu)).abs() < 1e-14);
        }
    }

    #[test]
    fn skew_rejects_symmetric_part() {
        let mut m = [[0.0; 4]; 4];
        m[0][1] = 1.0;
        m[1][0] = 1.0;
        assert!(matches!(SkewTensor::from_matrix(m, 1e-9), Err(Error::NotSkew(_))));
    }

    #[test]
    fn lorentz_examples() {
        let e0 = FourVector::basis(0);
        let e1 = FourVector::basis(1);
        let chi = 0.8;
        let b = LorentzMatrix::boost(1, chi, &G).unwrap();
        let r = b.apply(&e0);
        assert!((r - v([chi.cosh(), chi.sinh(), 0., 0.])).max_abs() < 1e-15);
        let rot = LorentzMatrix::rotation(1, 2, std::f64::consts::FRAC_PI_2, &G).unwrap();
        assert!((rot.apply(&e1) - FourVector::basis(2)).max_abs() < 1e-15);
        assert_eq!(LorentzMatrix::identity(&G).apply(&e1), e1);
        assert!(matches!(
            LorentzMatrix::boost(1, chi, &Signature::EUCLIDEAN),
            Err(Error::NotLorentz(_))
        ));
        let w = CoVector([0.3, 1.0, -2.0, 0.5]);
        let x = v([1.0, 0.2, 0.1, -0.7]);
        assert!((b.apply_covector(&w).pair(&b.apply(&x)) - w.pair(&x)).abs() < 1e-14);
        assert!((b.compose(&b.inverse()).matrix() - Matrix4::identity()).amax() < 1e-14);
    }

    #[test]
    fn generator_examples() {
        let mut m = [[0.0; 4]; 4];
        m[0][1] = 1.0;
        m[1][0] = -1.0;
        let om = SkewTensor::from_matrix(m, 1e-12).unwrap();
        let out = generator_action(&om, &FourVector::basis(0), &G);
        assert_eq!(out, FourVector::basis(1));
        assert_eq!(
            generator_action(&SkewTensor::ZERO, &v([1., 2., 3., 4.]), &G),
            FourVector::ZERO
        );
        let gm = generator_matrix(&om, &G);
        let x = v([0.4, -1.0, 2.0, 0.3]);
        let direct = generator_action(&om, &x, &G);
        let via = FourVector((gm * Vector4::from(x.0)).into());
        assert!((direct - via).max_abs() < 1e-15);
    }
}
