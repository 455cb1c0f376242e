use std::fmt;
use std::str::FromStr;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{invalid, CoreError, Result};
use crate::linalg::{hadamard, identity, pauli_x, pauli_y, pauli_z, phase, Mat2};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Axis {
    I,
    X,
    Y,
    Z,
}

impl Axis {
    pub fn matrix(self) -> Mat2 {
        match self {
            Axis::I => identity(),
            Axis::X => pauli_x(),
            Axis::Y => pauli_y(),
            Axis::Z => pauli_z(),
        }
    }

    fn symbol(self) -> char {
        match self {
            Axis::I => 'i',
            Axis::X => 'x',
            Axis::Y => 'y',
            Axis::Z => 'z',
        }
    }
}

/// Tensor product of Pauli operators over consecutive sites, written as a
/// string over `{x, y, z, i}` such as `"zziz"`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PauliString {
    axes: Vec<Axis>,
}

impl PauliString {
    pub fn new(axes: Vec<Axis>) -> Result<Self> {
        if axes.iter().all(|a| *a == Axis::I) {
            return invalid("pauli string must act on at least one site");
        }
        Ok(PauliString { axes })
    }

    pub fn axes(&self) -> &[Axis] {
        &self.axes
    }

    pub fn len(&self) -> usize {
        self.axes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.axes.is_empty()
    }

    /// Number of sites with a non-identity factor.
    pub fn weight(&self) -> usize {
        self.axes.iter().filter(|a| **a != Axis::I).count()
    }

    /// Dense `2^r x 2^r` matrix, first site most significant.
    pub fn matrix(&self) -> DMatrix<Complex64> {
        self.axes.iter().fold(DMatrix::from_element(1, 1, Complex64::new(1.0, 0.0)), |acc, a| {
            let m = a.matrix();
            acc.kronecker(&DMatrix::from_iterator(2, 2, m.iter().cloned()))
        })
    }
}

impl FromStr for PauliString {
    type Err = CoreError;

    fn from_str(s: &str) -> Result<Self> {
        let axes = s
            .chars()
            .map(|ch| match ch.to_ascii_lowercase() {
                'x' => Ok(Axis::X),
                'y' => Ok(Axis::Y),
                'z' => Ok(Axis::Z),
                'i' | '-' => Ok(Axis::I),
                other => Err(CoreError::InvalidArgument(format!("bad pauli axis {other:?}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        PauliString::new(axes)
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.axes.iter().try_for_each(|a| write!(f, "{}", a.symbol()))
    }
}

impl Serialize for PauliString {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for PauliString {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A local basis change `F` with `F Z F^dagger` equal to the site's axis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrameGate {
    /// 0-based position within the mask.
    pub site: usize,
    pub matrix: Mat2,
}

/// Frame gates for every `x` or `y` site; `z` and identity sites need none.
pub fn axis_frame(mask: &PauliString) -> Vec<FrameGate> {
    mask.axes
        .iter()
        .enumerate()
        .filter_map(|(site, a)| {
            let matrix = match a {
                Axis::X => hadamard(),
                Axis::Y => phase(std::f64::consts::FRAC_PI_2) * hadamard(),
                Axis::Z | Axis::I => return None,
            };
            Some(FrameGate { site, matrix })
        })
        .collect()
}
