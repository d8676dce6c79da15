use serde::Serialize;

use super::{CoeffPolynomial, MeshPolynomial};
use crate::spectra::Spectrum;
use crate::{Error, Result};

/// Orthogonal polynomials for `<p, q> = (1/n) sum_i m_i p(theta_i) q(theta_i)`,
/// scaled so that `p_i(theta_0) = ||p_i||^2`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PredistanceFamily {
    mesh: Vec<f64>,
    weights: Vec<f64>,
    polys: Vec<MeshPolynomial>,
    norms: Vec<f64>,
}

impl PredistanceFamily {
    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    pub fn mesh_poly(&self, i: usize) -> &MeshPolynomial {
        &self.polys[i]
    }

    pub fn coeff_poly(&self, i: usize) -> CoeffPolynomial {
        self.polys[i].to_coeffs()
    }

    pub fn coeff_polys(&self) -> Vec<CoeffPolynomial> {
        self.polys.iter().map(MeshPolynomial::to_coeffs).collect()
    }

    /// `||p_i||^2`.
    pub fn norm_sq(&self, i: usize) -> f64 {
        self.norms[i]
    }

    pub fn inner(&self, a: &[f64], b: &[f64]) -> f64 {
        inner(&self.weights, a, b)
    }

    /// `q'_k = p_1 + ... + p_k`.
    pub fn q_prime(&self, k: usize) -> MeshPolynomial {
        let k = k.min(self.polys.len() - 1);
        let mut v = vec![0.0; self.mesh.len()];
        for p in &self.polys[1..=k] {
            for (a, b) in v.iter_mut().zip(p.values()) {
                *a += b;
            }
        }
        self.polys[0].with_values(v)
    }

    /// `p_0 + ... + p_d` on the mesh.
    pub fn sum(&self) -> MeshPolynomial {
        let mut s = self.q_prime(self.polys.len() - 1);
        let v = s.values().iter().map(|x| x + 1.0).collect();
        s = s.with_values(v);
        s
    }
}

fn inner(w: &[f64], a: &[f64], b: &[f64]) -> f64 {
    w.iter().zip(a).zip(b).map(|((w, x), y)| w * x * y).sum()
}

/// Lanczos-style construction on the mesh: `x * p_{i-1}` orthogonalized
/// against all previous polynomials, twice.
pub fn predistance_polynomials(s: &Spectrum) -> Result<PredistanceFamily> {
    let mesh = s.theta().to_vec();
    let n = s.n() as f64;
    let weights: Vec<f64> = s.mults().iter().map(|&m| m as f64 / n).collect();
    let d = s.d();
    let mut basis: Vec<Vec<f64>> = vec![vec![1.0; d + 1]];
    let mut norms = vec![1.0];
    for i in 1..=d {
        let mut v: Vec<f64> = basis[i - 1].iter().zip(&mesh).map(|(p, t)| p * t).collect();
        let start = inner(&weights, &v, &v).sqrt();
        for _ in 0..2 {
            for (q, &nq) in basis.iter().zip(&norms) {
                let c = inner(&weights, &v, q) / nq;
                for (x, y) in v.iter_mut().zip(q) {
                    *x -= c * y;
                }
            }
        }
        let nv = inner(&weights, &v, &v);
        if !(nv > 1e-24 * start * start) || v[0].abs() <= 1e-300 {
            return Err(Error::DegenerateInnerProduct(i));
        }
        let c = v[0] / nv;
        let p: Vec<f64> = v.iter().map(|x| x * c).collect();
        norms.push(nv * c * c);
        basis.push(p);
    }
    let polys = basis
        .into_iter()
        .map(|v| MeshPolynomial::new(mesh.clone(), v))
        .collect::<Result<_>>()?;
    Ok(PredistanceFamily {
        mesh,
        weights,
        polys,
        norms,
    })
}

/// `H(x) = n prod_{i >= 1} (x - theta_i) / (theta_0 - theta_i)`.
pub fn hoffman_polynomial(s: &Spectrum) -> CoeffPolynomial {
    let t = s.theta();
    let denom: f64 = t[1..].iter().map(|&x| t[0] - x).product();
    CoeffPolynomial::from_roots(&t[1..]).scale(s.n() as f64 / denom)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::FamilySpec;
    use crate::spectra::exact_family_spectrum;

    fn spec(f: FamilySpec) -> Spectrum {
        exact_family_spectrum(&f).unwrap()
    }

    #[test]
    fn k3() {
        let pd = predistance_polynomials(&spec(FamilySpec::Complete(3))).unwrap();
        assert_eq!(pd.len(), 2);
        let p1 = pd.coeff_poly(1);
        assert!((p1.coeffs()[1] - 1.0).abs() < 1e-12 && p1.coeffs()[0].abs() < 1e-12);
    }

    #[test]
    fn petersen() {
        let s = spec(FamilySpec::Petersen);
        let pd = predistance_polynomials(&s).unwrap();
        assert!((pd.mesh_poly(2).value(0) - 6.0).abs() < 1e-12);
        let h = hoffman_polynomial(&s);
        assert_eq!(h.coeffs(), &[-2.0, 1.0, 1.0]);
        assert_eq!(h.eval(3.0), 10.0);
        let sum = pd.sum();
        assert!((sum.value(0) - 10.0).abs() < 1e-12);
        assert!(sum.values()[1..].iter().all(|v| v.abs() < 1e-12));
    }

    #[test]
    fn k3_hoffman() {
        let h = hoffman_polynomial(&spec(FamilySpec::Complete(3)));
        assert_eq!(h.coeffs(), &[1.0, 1.0]);
    }

    #[test]
    fn odd5_hoffman_at_top() {
        let s = spec(FamilySpec::Odd(5));
        assert!((hoffman_polynomial(&s).eval(5.0) - 126.0).abs() < 1e-9);
    }
}
