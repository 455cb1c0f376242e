//! Reference implementations shared by the integration tests. Nothing here
//! calls into the sector decomposition or the gate compiler.

#![allow(dead_code)]

use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64;
use procore::linalg::Mat2;
use procore::CouplingProfile;
use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

pub type CMat = DMatrix<Complex64>;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn small(entries: [[Complex64; 2]; 2]) -> CMat {
    DMatrix::from_fn(2, 2, |r, k| entries[r][k])
}

pub fn x() -> CMat {
    small([[c(0., 0.), c(1., 0.)], [c(1., 0.), c(0., 0.)]])
}

pub fn y() -> CMat {
    small([[c(0., 0.), c(0., -1.)], [c(0., 1.), c(0., 0.)]])
}

pub fn z() -> CMat {
    small([[c(1., 0.), c(0., 0.)], [c(0., 0.), c(-1., 0.)]])
}

/// `|1><1|`, the excitation number of one site.
pub fn number() -> CMat {
    small([[c(0., 0.), c(0., 0.)], [c(0., 0.), c(1., 0.)]])
}

pub fn eye(dim: usize) -> CMat {
    DMatrix::identity(dim, dim)
}

pub fn from_mat2(m: &Mat2) -> CMat {
    DMatrix::from_fn(2, 2, |r, k| m[(r, k)])
}

/// `ops[0] (x) ops[1] (x) ...`, first factor most significant.
pub fn kron_all(ops: &[CMat]) -> CMat {
    ops.iter().fold(DMatrix::from_element(1, 1, c(1., 0.)), |acc, m| acc.kronecker(m))
}

/// Operator `op` on site `q` of an `n`-site register.
pub fn on_site(op: &CMat, q: usize, n: usize) -> CMat {
    let ops: Vec<CMat> = (0..n).map(|k| if k == q { op.clone() } else { eye(2) }).collect();
    kron_all(&ops)
}

/// `op (x) op` on sites `q, q + 1`.
pub fn on_pair(op: &CMat, q: usize, n: usize) -> CMat {
    let ops: Vec<CMat> = (0..n).map(|k| if k == q || k == q + 1 { op.clone() } else { eye(2) }).collect();
    kron_all(&ops)
}

/// `-1/2 sum w_j (X X + Y Y) + sum l_j n_j` assembled from Pauli products.
pub fn chain_hamiltonian(p: &CouplingProfile) -> CMat {
    let n = p.n_sites;
    let mut h = CMat::zeros(1 << n, 1 << n);
    for j in 0..n - 1 {
        let xx = on_pair(&x(), j, n);
        let yy = on_pair(&y(), j, n);
        h -= (xx + yy) * c(0.5 * p.omegas[j], 0.);
        h += on_site(&number(), j, n) * c(p.lambdas[j], 0.);
    }
    h += on_site(&number(), n - 1, n) * c(p.lambdas[n - 1], 0.);
    h
}

fn one_norm(m: &CMat) -> f64 {
    (0..m.ncols())
        .map(|k| m.column(k).iter().map(|z| z.norm()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// `exp(a)` by scaling and squaring with a degree-24 Taylor polynomial.
pub fn expm(a: &CMat) -> CMat {
    let norm = one_norm(a);
    let squarings = if norm > 0.5 { (norm / 0.5).log2().ceil() as i32 } else { 0 };
    let scaled = a / c(2f64.powi(squarings), 0.);
    let dim = a.nrows();
    let mut result = eye(dim);
    let mut term = eye(dim);
    for k in 1..=24 {
        term = &term * &scaled / c(k as f64, 0.);
        result += &term;
    }
    for _ in 0..squarings {
        result = &result * &result;
    }
    result
}

/// `exp(-i h t)`.
pub fn evolution(h: &CMat, t: f64) -> CMat {
    expm(&(h * c(0., -t)))
}

/// `max |a - e^{i theta} b|` with `theta` chosen on the largest entry of `a`.
pub fn phase_distance(a: &CMat, b: &CMat) -> f64 {
    let (mut idx, mut best) = (0, -1.0);
    for (i, z) in a.iter().enumerate() {
        if z.norm() > best {
            best = z.norm();
            idx = i;
        }
    }
    let rot = if b[idx].norm() > 0.0 { a[idx] / b[idx] } else { c(1., 0.) };
    let rot = rot / rot.norm();
    a.iter().zip(b.iter()).map(|(p, q)| (p - q * rot).norm()).fold(0.0, f64::max)
}

/// `|0><0|_x (x) I + |1><1|_x (x) prod_j W_j`, control `x` 1-based.
pub fn controlled_product(x: usize, targets: &[Option<Mat2>]) -> CMat {
    let n = targets.len();
    let p0 = small([[c(1., 0.), c(0., 0.)], [c(0., 0.), c(0., 0.)]]);
    let mut off: Vec<CMat> = vec![eye(2); n];
    let mut on: Vec<CMat> = targets.iter().map(|t| t.map(|m| from_mat2(&m)).unwrap_or_else(|| eye(2))).collect();
    off[x - 1] = p0;
    on[x - 1] = number();
    kron_all(&off) + kron_all(&on)
}

/// `F[j][k] = 2^{-n/2} exp(2 pi i j k / 2^n)`.
pub fn dft(n: usize) -> CMat {
    let dim = 1usize << n;
    DMatrix::from_fn(dim, dim, |j, k| {
        let angle = 2.0 * PI * (j as f64) * (k as f64) / dim as f64;
        c(angle.cos(), angle.sin()) / c((dim as f64).sqrt(), 0.)
    })
}

/// Pauli-string matrix from a mask such as `"zix"`.
pub fn pauli_string(mask: &str) -> CMat {
    let ops: Vec<CMat> = mask
        .chars()
        .map(|ch| match ch {
            'x' => x(),
            'y' => y(),
            'z' => z(),
            _ => eye(2),
        })
        .collect();
    kron_all(&ops)
}

/// Haar-random 2x2 unitary via QR of a Ginibre matrix.
pub fn random_unitary2<R: Rng>(rng: &mut R) -> Mat2 {
    let g = DMatrix::<Complex64>::from_fn(2, 2, |_, _| {
        c(StandardNormal.sample(rng), StandardNormal.sample(rng))
    });
    let qr = g.qr();
    let (q, r) = (qr.q(), qr.r());
    let mut out = Mat2::zeros();
    for col in 0..2 {
        let d = r[(col, col)];
        let phase = if d.norm() > 0.0 { d / d.norm() } else { c(1., 0.) };
        for row in 0..2 {
            out[(row, col)] = q[(row, col)] * phase;
        }
    }
    out
}

pub fn random_amplitudes<R: Rng>(dim: usize, rng: &mut R) -> Vec<Complex64> {
    let v: Vec<Complex64> = (0..dim)
        .map(|_| c(StandardNormal.sample(rng), StandardNormal.sample(rng)))
        .collect();
    let norm = v.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    v.into_iter().map(|a| a / norm).collect()
}

/// Closed-form mirror image of basis configuration `s` (site 1 most
/// significant) after one period: reversed bits, phase `e^{-i n phi} (-1)^{floor(n/2)}`.
pub fn mirror_image(s: usize, n: usize, phi: f64) -> (usize, Complex64) {
    let weight = s.count_ones() as usize;
    let reversed = (0..n).fold(0, |acc, b| acc | (((s >> b) & 1) << (n - 1 - b)));
    let sign = if (weight / 2) % 2 == 0 { 1.0 } else { -1.0 };
    (reversed, Complex64::from_polar(sign, -(weight as f64) * phi))
}

pub fn mirror_matrix(n: usize, phi: f64) -> CMat {
    let dim = 1usize << n;
    let mut m = CMat::zeros(dim, dim);
    for s in 0..dim {
        let (r, ph) = mirror_image(s, n, phi);
        m[(r, s)] = ph;
    }
    m
}

/// Least-squares slope of `ln y` against `ln x`.
pub fn slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let lx: Vec<f64> = xs.iter().map(|v| v.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|v| v.ln()).collect();
    let (mx, my) = (lx.iter().sum::<f64>() / n, ly.iter().sum::<f64>() / n);
    let num: f64 = lx.iter().zip(&ly).map(|(a, b)| (a - mx) * (b - my)).sum();
    let den: f64 = lx.iter().map(|a| (a - mx).powi(2)).sum();
    num / den
}
