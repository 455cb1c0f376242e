use std::ops::RangeInclusive;

use procore::applications::PauliString;
use procore::linalg::{hadamard, identity, pauli_x, pauli_y, pauli_z, phase, Mat2};

use crate::output::{usage, CliError};

/// `a..b` or `a..=b`, both inclusive.
pub fn range(text: &str) -> Result<RangeInclusive<usize>, CliError> {
    let (lo, hi) = text
        .split_once("..")
        .ok_or_else(|| CliError::Usage(format!("range {text:?} is not of the form a..b")))?;
    let hi = hi.strip_prefix('=').unwrap_or(hi);
    let parse = |s: &str| {
        s.trim()
            .parse::<usize>()
            .map_err(|_| CliError::Usage(format!("range bound {s:?} is not an integer")))
    };
    let (lo, hi) = (parse(lo)?, parse(hi)?);
    if lo > hi {
        return usage(format!("empty range {text:?}"));
    }
    Ok(lo..=hi)
}

pub fn floats(text: &str) -> Result<Vec<f64>, CliError> {
    text.split(',')
        .map(|s| {
            s.trim()
                .parse::<f64>()
                .map_err(|_| CliError::Usage(format!("{s:?} is not a number")))
        })
        .collect()
}

/// `i x y z h s t` or `p(angle)`.
pub fn gate(text: &str) -> Result<Mat2, CliError> {
    let t = text.trim().to_ascii_lowercase();
    if let Some(angle) = t.strip_prefix("p(").and_then(|r| r.strip_suffix(')')) {
        let a = angle
            .parse::<f64>()
            .map_err(|_| CliError::Usage(format!("bad phase angle in {text:?}")))?;
        return Ok(phase(a));
    }
    Ok(match t.as_str() {
        "i" => identity(),
        "x" => pauli_x(),
        "y" => pauli_y(),
        "z" => pauli_z(),
        "h" => hadamard(),
        "s" => phase(std::f64::consts::FRAC_PI_2),
        "t" => phase(std::f64::consts::FRAC_PI_4),
        _ => return usage(format!("unknown gate {text:?}")),
    })
}

/// Comma-separated gates, `-` for none.
pub fn gate_list(text: &str) -> Result<Vec<Option<Mat2>>, CliError> {
    text.split(',')
        .map(|s| if s.trim() == "-" { Ok(None) } else { gate(s).map(Some) })
        .collect()
}

pub fn angle_pairs(text: &str) -> Result<Vec<(f64, f64)>, CliError> {
    text.split(',')
        .map(|pair| {
            let (a, b) = pair
                .split_once(':')
                .ok_or_else(|| CliError::Usage(format!("angle pair {pair:?} is not theta:phi")))?;
            let v = floats(&format!("{a},{b}"))?;
            Ok((v[0], v[1]))
        })
        .collect()
}

pub fn mask(text: &str) -> Result<PauliString, CliError> {
    Ok(text.parse()?)
}

/// `mask:coefficient` pairs; a bare mask has coefficient 1.
pub fn terms(text: &str) -> Result<Vec<(PauliString, f64)>, CliError> {
    text.split(',')
        .map(|term| match term.split_once(':') {
            Some((m, c)) => Ok((
                mask(m)?,
                c.trim()
                    .parse()
                    .map_err(|_| CliError::Usage(format!("bad coefficient in {term:?}")))?,
            )),
            None => Ok((mask(term)?, 1.0)),
        })
        .collect()
}

pub fn positive(name: &str, value: f64) -> Result<f64, CliError> {
    if value > 0.0 && value.is_finite() {
        Ok(value)
    } else {
        usage(format!("--{name} must be positive, got {value}"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(range("2..12").unwrap(), 2..=12);
        assert_eq!(range("0..=3").unwrap(), 0..=3);
        assert!(range("5..2").is_err());
        assert!(range("5").is_err());
    }

    #[test]
    fn gates_and_terms() {
        assert_eq!(gate_list("x,-,p(0.5)").unwrap().len(), 3);
        assert!(gate("q").is_err());
        let t = terms("zz:0.5,xi").unwrap();
        assert_eq!(t[0].1, 0.5);
        assert_eq!(t[1].1, 1.0);
        assert_eq!(angle_pairs("0:1,0.5:0.25").unwrap()[1], (0.5, 0.25));
    }
}
