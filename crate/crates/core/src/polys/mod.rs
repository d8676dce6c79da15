//! Polynomials on the spectral mesh.
//!
//! A [`MeshPolynomial`] stores the values `p(theta_0), ..., p(theta_d)`; it is
//! the representation used by the programs and bounds. [`CoeffPolynomial`] is
//! the monomial view used for `p(A)` and reporting.

mod closed_form;
mod predistance;

use serde::{Deserialize, Serialize};

pub use closed_form::{minor_closed_form, mp2_index, mp3_diagnostic, mp4_index, mp5_candidates, Mp3Diagnostic, Mp5Candidate};
pub use predistance::{hoffman_polynomial, predistance_polynomials, PredistanceFamily};

use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MeshPolynomial {
    mesh: Vec<f64>,
    values: Vec<f64>,
}

impl MeshPolynomial {
    pub fn new(mesh: Vec<f64>, values: Vec<f64>) -> Result<MeshPolynomial> {
        if mesh.is_empty() || mesh.len() != values.len() {
            return Err(Error::InvalidSpectrum("mesh and values must have equal nonzero length".into()));
        }
        if mesh.windows(2).any(|w| w[0] <= w[1]) {
            return Err(Error::InvalidSpectrum("mesh must be strictly decreasing".into()));
        }
        if mesh.iter().chain(&values).any(|x| !x.is_finite()) {
            return Err(Error::InvalidSpectrum("non-finite mesh entry or value".into()));
        }
        Ok(MeshPolynomial { mesh, values })
    }

    pub fn from_fn(mesh: &[f64], f: impl Fn(f64) -> f64) -> Result<MeshPolynomial> {
        Self::new(mesh.to_vec(), mesh.iter().map(|&x| f(x)).collect())
    }

    pub fn mesh(&self) -> &[f64] {
        &self.mesh
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn value(&self, i: usize) -> f64 {
        self.values[i]
    }

    pub fn with_values(&self, values: Vec<f64>) -> MeshPolynomial {
        assert_eq!(values.len(), self.mesh.len());
        MeshPolynomial {
            mesh: self.mesh.clone(),
            values,
        }
    }

    pub fn map(&self, f: impl Fn(f64) -> f64) -> MeshPolynomial {
        self.with_values(self.values.iter().map(|&v| f(v)).collect())
    }

    /// `min_{i >= 1} p(theta_i)`.
    pub fn lambda(&self) -> f64 {
        self.values[1..].iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |a, v| a.max(v.abs()))
    }

    /// Leading Newton coefficients `f[theta_0, ..., theta_m]` for `m = 0..=d`.
    pub fn divided_differences(&self) -> Vec<f64> {
        let mut table = self.values.clone();
        let mut out = vec![table[0]];
        for m in 1..table.len() {
            for j in 0..table.len() - m {
                table[j] = (table[j] - table[j + 1]) / (self.mesh[j] - self.mesh[j + m]);
            }
            out.push(table[0]);
        }
        out
    }

    /// Smallest `k` such that every divided difference of order `> k`
    /// is negligible against the values.
    pub fn degree(&self, rel_tol: f64) -> usize {
        let dd = self.divided_differences();
        let scale = self.max_abs().max(f64::MIN_POSITIVE);
        (0..dd.len())
            .rev()
            .find(|&m| (dd[m] * newton_span(&self.mesh, m)).abs() > rel_tol * scale)
            .unwrap_or(0)
    }

    pub fn to_coeffs(&self) -> CoeffPolynomial {
        mesh_to_coeffs(self)
    }

    pub fn fractions(&self) -> Vec<String> {
        self.values.iter().map(|&v| format_value(v)).collect()
    }
}

/// Weights `w_j` with `f[theta_0, ..., theta_m] = sum_{j <= m} w_j x_j`.
pub fn divided_difference_weights(mesh: &[f64], m: usize) -> Vec<f64> {
    let mut w = vec![0.0; mesh.len()];
    for j in 0..=m {
        let denom: f64 = (0..=m).filter(|&l| l != j).map(|l| mesh[j] - mesh[l]).product();
        w[j] = 1.0 / denom;
    }
    w
}

/// `max_j |prod_{l < m} (theta_j - theta_l)|`: the size on the mesh of the
/// `m`-th Newton basis polynomial.
fn newton_span(mesh: &[f64], m: usize) -> f64 {
    mesh.iter()
        .map(|&x| mesh[..m].iter().map(|&t| x - t).product::<f64>().abs())
        .fold(0.0, f64::max)
}

/// Newton-form expansion of the interpolant. Newton coefficients whose
/// contribution on the mesh is below `1e-10` of the largest value are
/// dropped, so polynomials of degree `k < d` come back with degree `k`.
pub fn mesh_to_coeffs(p: &MeshPolynomial) -> CoeffPolynomial {
    let mut dd = p.divided_differences();
    let scale = p.max_abs();
    for (m, c) in dd.iter_mut().enumerate() {
        if (*c * newton_span(&p.mesh, m)).abs() <= 1e-10 * scale {
            *c = 0.0;
        }
    }
    let mut acc = CoeffPolynomial::zero();
    for m in (0..dd.len()).rev() {
        acc = acc.mul(&CoeffPolynomial::new(vec![-p.mesh[m], 1.0]));
        acc = acc.add(&CoeffPolynomial::new(vec![dd[m]]));
    }
    acc
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CoeffPolynomial {
    coeffs: Vec<f64>,
}

impl CoeffPolynomial {
    /// Ascending coefficients; trailing exact zeros are trimmed.
    pub fn new(mut coeffs: Vec<f64>) -> CoeffPolynomial {
        while coeffs.last() == Some(&0.0) {
            coeffs.pop();
        }
        CoeffPolynomial { coeffs }
    }

    pub fn zero() -> CoeffPolynomial {
        CoeffPolynomial { coeffs: vec![] }
    }

    pub fn x() -> CoeffPolynomial {
        CoeffPolynomial::new(vec![0.0, 1.0])
    }

    /// `prod (x - r)`.
    pub fn from_roots(roots: &[f64]) -> CoeffPolynomial {
        roots.iter().fold(CoeffPolynomial::new(vec![1.0]), |acc, &r| {
            acc.mul(&CoeffPolynomial::new(vec![-r, 1.0]))
        })
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// Degree, with the zero polynomial reported as 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
    }

    pub fn add(&self, other: &CoeffPolynomial) -> CoeffPolynomial {
        let len = self.coeffs.len().max(other.coeffs.len());
        let c = (0..len)
            .map(|i| self.coeffs.get(i).unwrap_or(&0.0) + other.coeffs.get(i).unwrap_or(&0.0))
            .collect();
        CoeffPolynomial::new(c)
    }

    pub fn mul(&self, other: &CoeffPolynomial) -> CoeffPolynomial {
        if self.is_zero() || other.is_zero() {
            return CoeffPolynomial::zero();
        }
        let mut c = vec![0.0; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        CoeffPolynomial::new(c)
    }

    pub fn scale(&self, s: f64) -> CoeffPolynomial {
        CoeffPolynomial::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn on_mesh(&self, mesh: &[f64]) -> MeshPolynomial {
        MeshPolynomial::from_fn(mesh, |x| self.eval(x)).expect("valid mesh")
    }

    /// Human-readable form such as `x^2 - 3x + 2`, with fractions when
    /// coefficients are close to small rationals.
    pub fn pretty(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0.0 {
                continue;
            }
            let sign = if c < 0.0 { "-" } else { "+" };
            let mag = format_value(c.abs());
            let body = match (i, mag.as_str()) {
                (0, m) => m.to_string(),
                (1, "1") => "x".into(),
                (1, m) => format!("{m}x"),
                (_, "1") => format!("x^{i}"),
                (_, m) => format!("{m}x^{i}"),
            };
            if out.is_empty() {
                if sign == "-" {
                    out.push('-');
                }
            } else {
                out.push_str(&format!(" {sign} "));
            }
            out.push_str(&body);
        }
        out
    }
}

/// `Some((p, q))` with `q <= 10^4` and `|v - p/q| <= 1e-9`, smallest `q`.
pub fn as_fraction(v: f64) -> Option<(i64, u64)> {
    if !v.is_finite() {
        return None;
    }
    // Loose limits here turn irrationals like 2 sin(pi/5) into fractions.
    for q in 1..=2_000u64 {
        let p = (v * q as f64).round();
        if (v - p / q as f64).abs() <= 1e-10 * v.abs().max(1.0) {
            return Some((p as i64, q));
        }
    }
    None
}

/// `5/14`, `-3`, or a float when no small fraction fits.
pub fn format_value(v: f64) -> String {
    match as_fraction(v) {
        Some((p, 1)) => p.to_string(),
        Some((p, q)) => format!("{p}/{q}"),
        None => format!("{v:.10}"),
    }
}
