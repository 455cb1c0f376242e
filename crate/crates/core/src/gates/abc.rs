//! Local factorisations used to turn the controlled-Z block into arbitrary
//! controlled single-qubit targets.

use num_complex::Complex64;

use crate::error::{invalid, Result};
use crate::linalg::{c, hadamard, is_unitary2, ry, rz, Mat2};

/// `A, B, C, alpha` with `A B C = I` and `e^{i alpha} A Z B Z C = W`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AbcFactors {
    pub a: Mat2,
    pub b: Mat2,
    pub c: Mat2,
    pub alpha: f64,
}

/// Euler angles of `W = e^{i alpha} Rz(beta) Ry(gamma) Rz(delta)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZyzAngles {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub delta: f64,
}

pub fn zyz_angles(w: &Mat2) -> ZyzAngles {
    let det = w.determinant();
    let alpha = det.arg() / 2.0;
    let v = w * Complex64::from_polar(1.0, -alpha);
    // v is in SU(2): v00 = e^{-i(b+d)/2} cos(g/2), v10 = e^{i(b-d)/2} sin(g/2)
    let (m00, m10) = (v[(0, 0)].norm(), v[(1, 0)].norm());
    let gamma = 2.0 * m10.atan2(m00);
    let sum = if m00 > 1e-12 { 2.0 * v[(1, 1)].arg() } else { 0.0 };
    let diff = if m10 > 1e-12 { 2.0 * v[(1, 0)].arg() } else { 0.0 };
    ZyzAngles {
        alpha,
        beta: (sum + diff) / 2.0,
        gamma,
        delta: (sum - diff) / 2.0,
    }
}

/// Factorises `w` for the `A Z B Z C` pattern.
///
/// The standard `X`-based construction is applied to `H w H` and conjugated
/// back with Hadamards, which exchanges `X` and `Z`.
pub fn abc_decompose(w: &Mat2) -> Result<AbcFactors> {
    if !is_unitary2(w) {
        return invalid("target gate is not unitary");
    }
    let h = hadamard();
    let wx = h * w * h;
    let ZyzAngles {
        alpha,
        beta,
        gamma,
        delta,
    } = zyz_angles(&wx);
    let a = rz(beta) * ry(gamma / 2.0);
    let b = ry(-gamma / 2.0) * rz(-(delta + beta) / 2.0);
    let cc = rz((delta - beta) / 2.0);
    Ok(AbcFactors {
        a: h * a * h,
        b: h * b * h,
        c: h * cc * h,
        alpha,
    })
}

/// `V(theta, phi) = [[sin t, e^{i p} cos t], [e^{-i p} cos t, -sin t]]`.
pub fn reflection(theta: f64, phi: f64) -> Mat2 {
    let (s, co) = theta.sin_cos();
    Mat2::new(
        c(s, 0.0),
        Complex64::from_polar(co, phi),
        Complex64::from_polar(co, -phi),
        c(-s, 0.0),
    )
}

/// Unitary `A` with `A Z A^dagger = V(theta, phi)`: its columns are the +1 and
/// -1 eigenvectors of the reflection.
pub fn reflection_conjugator(theta: f64, phi: f64) -> Mat2 {
    let (sin_t, cos_t) = theta.sin_cos();
    // Bloch vector of V: (cos t cos p, -cos t sin p, sin t)
    let polar = sin_t.clamp(-1.0, 1.0).acos();
    let azimuth = (-cos_t * phi.sin()).atan2(cos_t * phi.cos());
    let (hs, hc) = (polar / 2.0).sin_cos();
    Mat2::new(
        c(hc, 0.0),
        -Complex64::from_polar(hs, -azimuth),
        Complex64::from_polar(hs, azimuth),
        c(hc, 0.0),
    )
}
