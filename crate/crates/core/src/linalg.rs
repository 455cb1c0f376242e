//! Small dense helpers shared across modules: single-qubit gate matrices,
//! unitarity checks and global-phase alignment.

use nalgebra::{DMatrix, Matrix2};
use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// A single-qubit operator in the computational basis (|0>, |1>).
pub type Mat2 = Matrix2<Complex64>;

pub const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub const ONE: Complex64 = Complex64::new(1.0, 0.0);
pub const I: Complex64 = Complex64::new(0.0, 1.0);

/// Unitarity tolerance for user-supplied 2x2 matrices.
pub const UNITARY_TOL: f64 = 1e-10;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn identity() -> Mat2 {
    Mat2::identity()
}

pub fn pauli_x() -> Mat2 {
    Mat2::new(ZERO, ONE, ONE, ZERO)
}

pub fn pauli_y() -> Mat2 {
    Mat2::new(ZERO, -I, I, ZERO)
}

/// diag(1, -1) in the computational basis.
pub fn pauli_z() -> Mat2 {
    Mat2::new(ONE, ZERO, ZERO, -ONE)
}

pub fn hadamard() -> Mat2 {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    Mat2::new(c(h, 0.0), c(h, 0.0), c(h, 0.0), c(-h, 0.0))
}

/// R(phi) = |0><0| + e^{i phi} |1><1|.
pub fn phase(phi: f64) -> Mat2 {
    Mat2::new(ONE, ZERO, ZERO, Complex64::from_polar(1.0, phi))
}

/// exp(-i sigma_z theta).
pub fn z_rotation(theta: f64) -> Mat2 {
    Mat2::new(
        Complex64::from_polar(1.0, -theta),
        ZERO,
        ZERO,
        Complex64::from_polar(1.0, theta),
    )
}

/// Rz(theta) = exp(-i theta sigma_z / 2).
pub fn rz(theta: f64) -> Mat2 {
    z_rotation(theta / 2.0)
}

/// Ry(theta) = exp(-i theta sigma_y / 2).
pub fn ry(theta: f64) -> Mat2 {
    let (s, co) = (theta / 2.0).sin_cos();
    Mat2::new(c(co, 0.0), c(-s, 0.0), c(s, 0.0), c(co, 0.0))
}

pub fn max_abs_diff2(a: &Mat2, b: &Mat2) -> f64 {
    a.iter().zip(b.iter()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

pub fn max_abs_diff(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>) -> f64 {
    assert_eq!(a.shape(), b.shape(), "shape mismatch");
    a.iter().zip(b.iter()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

/// max |U^dagger U - I| entrywise.
pub fn unitarity_defect2(u: &Mat2) -> f64 {
    max_abs_diff2(&(u.adjoint() * u), &identity())
}

pub fn unitarity_defect(u: &DMatrix<Complex64>) -> f64 {
    let n = u.nrows();
    max_abs_diff(&(u.adjoint() * u), &DMatrix::identity(n, n))
}

pub fn is_unitary2(u: &Mat2) -> bool {
    u.iter().all(|z| z.re.is_finite() && z.im.is_finite()) && unitarity_defect2(u) <= UNITARY_TOL
}

/// Returns `candidate` multiplied by the unit phase that makes it agree with
/// `reference` on the reference's largest-magnitude entry.
pub fn align_global_phase(reference: &DMatrix<Complex64>, candidate: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    let (idx, _) = reference
        .iter()
        .enumerate()
        .fold((0, -1.0), |best, (i, z)| if z.norm() > best.1 { (i, z.norm()) } else { best });
    let r = reference.as_slice()[idx];
    let k = candidate.as_slice()[idx];
    if k.norm() == 0.0 {
        return candidate.clone();
    }
    let ph = (r / k) / (r / k).norm();
    candidate.map(|z| z * ph)
}

/// Entrywise distance after global-phase alignment.
pub fn phase_aligned_distance(reference: &DMatrix<Complex64>, candidate: &DMatrix<Complex64>) -> f64 {
    max_abs_diff(reference, &align_global_phase(reference, candidate))
}

/// Spectral norm of `a - e^{i theta} b`, with `theta = arg tr(b^dagger a)`.
pub fn phase_aligned_operator_distance(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>) -> f64 {
    let overlap: Complex64 = b.iter().zip(a.iter()).map(|(y, x)| y.conj() * x).sum();
    let ph = if overlap.norm() > 0.0 { overlap / overlap.norm() } else { ONE };
    let diff = a - b.map(|z| z * ph);
    spectral_norm(&diff)
}

pub fn spectral_norm(m: &DMatrix<Complex64>) -> f64 {
    m.clone().singular_values().iter().cloned().fold(0.0, f64::max)
}

/// `exp(-i h t)` for Hermitian `h`, by eigendecomposition.
pub fn hermitian_expm(h: &DMatrix<Complex64>, t: f64) -> DMatrix<Complex64> {
    let eig = nalgebra::SymmetricEigen::new(h.clone());
    let v = &eig.eigenvectors;
    let mut phased = v.clone();
    for (k, e) in eig.eigenvalues.iter().enumerate() {
        let ph = Complex64::from_polar(1.0, -e * t);
        phased.column_mut(k).iter_mut().for_each(|z| *z *= ph);
    }
    phased * v.adjoint()
}

/// Least-squares slope of `ln y` against `ln x`.
pub fn loglog_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let lx: Vec<f64> = xs.iter().map(|x| x.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|y| y.ln()).collect();
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = lx.iter().map(|x| (x - mx) * (x - mx)).sum();
    sxy / sxx
}

/// Haar-random 2x2 unitary (Gram-Schmidt on a complex Gaussian matrix).
pub fn haar_unitary2<R: rand::Rng + ?Sized>(rng: &mut R) -> Mat2 {
    use rand_distr::{Distribution, StandardNormal};
    let mut g = || {
        let re: f64 = StandardNormal.sample(rng);
        let im: f64 = StandardNormal.sample(rng);
        c(re, im)
    };
    let (a, b, cc, d) = (g(), g(), g(), g());
    let n1 = (a.norm_sqr() + b.norm_sqr()).sqrt();
    let (u0, u1) = (a / n1, b / n1);
    let proj = u0.conj() * cc + u1.conj() * d;
    let (v0, v1) = (cc - proj * u0, d - proj * u1);
    let n2 = (v0.norm_sqr() + v1.norm_sqr()).sqrt();
    Mat2::new(u0, v0 / n2, u1, v1 / n2)
}

/// Serde adapter: a 2x2 matrix as `[[[re, im], [re, im]], [[re, im], [re, im]]]`, row-major.
pub mod mat2_serde {
    use super::*;

    pub fn serialize<S: Serializer>(m: &Mat2, s: S) -> Result<S::Ok, S::Error> {
        let rows = [[m[(0, 0)], m[(0, 1)]], [m[(1, 0)], m[(1, 1)]]];
        rows.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Mat2, D::Error> {
        let rows: [[Complex64; 2]; 2] = Deserialize::deserialize(d)?;
        Ok(Mat2::new(rows[0][0], rows[0][1], rows[1][0], rows[1][1]))
    }
}
