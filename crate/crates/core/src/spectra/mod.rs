//! Adjacency spectra, π-products and walk/distance regularity.

mod closed_form;
mod regularity;

use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

pub use closed_form::exact_family_spectrum;
pub use regularity::{classify_regularity, classify_with_distances, diagonal_stats, IntersectionArray, RegularityReport};

use crate::graphs::Graph;
use crate::{tol, Error, Result};

/// Distinct eigenvalues in decreasing order with multiplicities, plus the
/// full eigenvalue list.
///
/// `raw` holds the grouped values expanded by multiplicity, so zero
/// eigenvalues are exactly zero and sign counts are stable. It is built on
/// first use: closed-form spectra of huge graphs never need it.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(try_from = "SpectrumRepr", into = "SpectrumRepr")]
pub struct Spectrum {
    distinct: Vec<f64>,
    mults: Vec<usize>,
    raw: OnceLock<Vec<f64>>,
    n: usize,
}

impl PartialEq for Spectrum {
    fn eq(&self, other: &Spectrum) -> bool {
        self.distinct == other.distinct && self.mults == other.mults
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum Num {
    Int(i64),
    Float(f64),
}

#[derive(Serialize, Deserialize)]
struct SpectrumRepr {
    theta: Vec<Num>,
    mult: Vec<usize>,
    #[serde(default)]
    n: Option<usize>,
}

impl From<Spectrum> for SpectrumRepr {
    fn from(s: Spectrum) -> Self {
        let theta = s
            .distinct
            .iter()
            .map(|&t| {
                if t == t.round() && t.abs() < 1e15 {
                    Num::Int(t as i64)
                } else {
                    Num::Float(t)
                }
            })
            .collect();
        SpectrumRepr {
            theta,
            mult: s.mults,
            n: Some(s.n),
        }
    }
}

impl TryFrom<SpectrumRepr> for Spectrum {
    type Error = Error;

    fn try_from(r: SpectrumRepr) -> Result<Self> {
        let theta = r
            .theta
            .into_iter()
            .map(|x| match x {
                Num::Int(i) => i as f64,
                Num::Float(f) => f,
            })
            .collect();
        let s = Spectrum::from_parts(theta, r.mult)?;
        if let Some(n) = r.n {
            if n != s.n {
                return Err(Error::InvalidSpectrum(format!(
                    "declared n={n} but multiplicities sum to {}",
                    s.n
                )));
            }
        }
        Ok(s)
    }
}

impl Spectrum {
    /// Builds a spectrum from distinct eigenvalues (any order) and their
    /// multiplicities.
    pub fn from_parts(theta: Vec<f64>, mults: Vec<usize>) -> Result<Spectrum> {
        if theta.is_empty() || theta.len() != mults.len() {
            return Err(Error::InvalidSpectrum(
                "theta and mult must be nonempty and of equal length".into(),
            ));
        }
        if theta.iter().any(|t| !t.is_finite()) || mults.contains(&0) {
            return Err(Error::InvalidSpectrum(
                "eigenvalues must be finite and multiplicities positive".into(),
            ));
        }
        let mut pairs: Vec<(f64, usize)> = theta.into_iter().zip(mults).collect();
        pairs.sort_by(|a, b| b.0.total_cmp(&a.0));
        if pairs.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(Error::InvalidSpectrum("repeated eigenvalue".into()));
        }
        let distinct: Vec<f64> = pairs.iter().map(|p| p.0).collect();
        let mults: Vec<usize> = pairs.iter().map(|p| p.1).collect();
        let n = mults.iter().sum();
        Ok(Spectrum {
            distinct,
            mults,
            raw: OnceLock::new(),
            n,
        })
    }

    /// Groups a list of eigenvalues. Values whose consecutive gap is at most
    /// `tol * max(1, |largest|)` are merged; a group within that threshold of
    /// an integer is snapped to it.
    pub fn from_eigenvalues(mut values: Vec<f64>, tol: f64) -> Result<Spectrum> {
        if values.is_empty() {
            return Err(Error::InvalidSpectrum("no eigenvalues".into()));
        }
        values.sort_by(|a, b| b.total_cmp(a));
        let thr = tol * values[0].abs().max(values[values.len() - 1].abs()).max(1.0);
        let mut groups: Vec<Vec<f64>> = vec![vec![values[0]]];
        for w in values.windows(2) {
            let gap = w[0] - w[1];
            if gap > thr / 10.0 && gap <= 10.0 * thr {
                return Err(Error::GroupingAmbiguity { gap, threshold: thr });
            }
            if gap <= thr {
                groups.last_mut().unwrap().push(w[1]);
            } else {
                groups.push(vec![w[1]]);
            }
        }
        let mut theta = Vec::with_capacity(groups.len());
        let mut mults = Vec::with_capacity(groups.len());
        for g in groups {
            let mean = g.iter().sum::<f64>() / g.len() as f64;
            let r = mean.round();
            theta.push(if (mean - r).abs() <= thr { r } else { mean });
            mults.push(g.len());
        }
        Spectrum::from_parts(theta, mults)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of distinct eigenvalues minus one.
    pub fn d(&self) -> usize {
        self.distinct.len() - 1
    }

    pub fn theta(&self) -> &[f64] {
        &self.distinct
    }

    pub fn mults(&self) -> &[usize] {
        &self.mults
    }

    pub fn raw(&self) -> &[f64] {
        self.raw.get_or_init(|| {
            self.distinct
                .iter()
                .zip(&self.mults)
                .flat_map(|(&t, &m)| std::iter::repeat_n(t, m))
                .collect()
        })
    }

    /// `sum_i m_i v_i` for mesh values `v`.
    pub fn weighted_sum(&self, values: &[f64]) -> f64 {
        self.mults.iter().zip(values).map(|(&m, &v)| m as f64 * v).sum()
    }

    pub fn is_integral(&self) -> bool {
        self.distinct.iter().all(|t| *t == t.round())
    }

    /// True when the spectrum is symmetric about zero (bipartite graphs).
    pub fn is_symmetric(&self) -> bool {
        let d = self.d();
        (0..=d).all(|i| {
            (self.distinct[i] + self.distinct[d - i]).abs() <= 1e-9 * self.distinct[0].max(1.0)
                && self.mults[i] == self.mults[d - i]
        })
    }
}

/// Eigenvalues of the adjacency matrix, grouped with relative tolerance
/// `tol` (the crate default is [`tol::GROUPING`]).
pub fn spectrum(g: &Graph, tol: f64) -> Result<Spectrum> {
    let values = adjacency_eigenvalues(g)?;
    Spectrum::from_eigenvalues(values, tol)
}

pub fn adjacency_eigenvalues(g: &Graph) -> Result<Vec<f64>> {
    let n = g.n();
    let m = nalgebra::DMatrix::from_row_slice(n, n, &g.adjacency_dense());
    let eig = nalgebra::SymmetricEigen::try_new(m, f64::EPSILON, 100_000).ok_or(Error::EigenFailure)?;
    Ok(eig.eigenvalues.iter().copied().collect())
}

/// Diagonals of the spectral idempotents: `diag[u][i] = (E_i)_{uu}` where
/// `E_i` projects onto the `theta_i` eigenspace of `s`.
#[derive(Clone, Debug, PartialEq)]
pub struct IdempotentDiagonals {
    diag: Vec<Vec<f64>>,
}

impl IdempotentDiagonals {
    pub fn new(g: &Graph, s: &Spectrum) -> Result<IdempotentDiagonals> {
        let n = g.n();
        if n != s.n() {
            return Err(Error::InvalidSpectrum(format!("spectrum has n = {}, graph has {n}", s.n())));
        }
        let m = nalgebra::DMatrix::from_row_slice(n, n, &g.adjacency_dense());
        let eig = nalgebra::SymmetricEigen::try_new(m, f64::EPSILON, 100_000).ok_or(Error::EigenFailure)?;
        let theta = s.theta();
        let mut diag = vec![vec![0.0; theta.len()]; n];
        for (j, &lam) in eig.eigenvalues.iter().enumerate() {
            let i = (0..theta.len())
                .min_by(|&a, &b| (theta[a] - lam).abs().total_cmp(&(theta[b] - lam).abs()))
                .expect("nonempty spectrum");
            for u in 0..n {
                diag[u][i] += eig.eigenvectors[(u, j)].powi(2);
            }
        }
        Ok(IdempotentDiagonals { diag })
    }

    /// `(p(A))_{uu}` for `p` given by its values on the mesh.
    pub fn entry(&self, u: usize, values: &[f64]) -> f64 {
        self.diag[u].iter().zip(values).map(|(e, v)| e * v).sum()
    }

    /// Minimum and maximum diagonal entry of `p(A)`.
    pub fn stats(&self, values: &[f64]) -> (f64, f64) {
        (0..self.diag.len()).fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), u| {
            let e = self.entry(u, values);
            (lo.min(e), hi.max(e))
        })
    }
}

/// Default-tolerance shorthand for [`spectrum`].
pub fn spectrum_default(g: &Graph) -> Result<Spectrum> {
    spectrum(g, tol::GROUPING)
}

/// `pi[i] = prod_{j != i} |theta_i - theta_j|`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PiProducts {
    pub pi: Vec<f64>,
}

impl PiProducts {
    pub fn get(&self, i: usize) -> f64 {
        self.pi[i]
    }

    /// `pi_0 / pi_i`.
    pub fn ratio(&self, i: usize) -> f64 {
        self.pi[0] / self.pi[i]
    }
}

pub fn pi_products(s: &Spectrum) -> PiProducts {
    let t = s.theta();
    let pi = (0..t.len())
        .map(|i| {
            (0..t.len())
                .filter(|&j| j != i)
                .map(|j| (t[i] - t[j]).abs())
                .product()
        })
        .collect();
    PiProducts { pi }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::FamilySpec;

    fn spec_of(f: FamilySpec) -> Spectrum {
        spectrum_default(&f.generate().unwrap()).unwrap()
    }

    #[test]
    fn petersen() {
        let s = spec_of(FamilySpec::Petersen);
        assert_eq!(s.theta(), &[3.0, 1.0, -2.0]);
        assert_eq!(s.mults(), &[1, 5, 4]);
        assert_eq!(pi_products(&s).pi, vec![10.0, 6.0, 15.0]);
    }

    #[test]
    fn k3() {
        let s = spec_of(FamilySpec::Complete(3));
        assert_eq!(s.theta(), &[2.0, -1.0]);
        assert_eq!(s.mults(), &[1, 2]);
        assert_eq!(pi_products(&s).pi, vec![3.0, 3.0]);
    }

    #[test]
    fn odd5_numeric() {
        let s = spec_of(FamilySpec::Odd(5));
        assert_eq!(s.theta(), &[5.0, 3.0, 1.0, -2.0, -4.0]);
        assert_eq!(s.mults(), &[1, 27, 42, 48, 8]);
    }

    #[test]
    fn idempotent_diagonals_match_horner() {
        let g = crate::graphs::parse_graph6("KhCKM?_EGK?L").unwrap();
        let s = spectrum_default(&g).unwrap();
        let e = IdempotentDiagonals::new(&g, &s).unwrap();
        let p = crate::CoeffPolynomial::new(vec![1.0, -2.0, 0.5, 1.0]);
        let (lo, hi) = e.stats(p.on_mesh(s.theta()).values());
        let (lo2, hi2) = diagonal_stats(&g, &p);
        assert!((lo - lo2).abs() < 1e-9 && (hi - hi2).abs() < 1e-9);
        let ones = vec![1.0; s.d() + 1];
        assert!((e.stats(&ones).0 - 1.0).abs() < 1e-12);
    }

    #[test]
    fn ambiguity_detected() {
        let r = Spectrum::from_eigenvalues(vec![1.0, 1.0 - 5e-8, 0.0], 1e-8);
        assert!(matches!(r, Err(Error::GroupingAmbiguity { .. })));
    }

    #[test]
    fn json_uses_integers() {
        let s = Spectrum::from_parts(vec![3.0, 1.0, -2.0], vec![1, 5, 4]).unwrap();
        let j = serde_json::to_string(&s).unwrap();
        assert_eq!(j, r#"{"theta":[3,1,-2],"mult":[1,5,4],"n":10}"#);
        let back: Spectrum = serde_json::from_str(&j).unwrap();
        assert_eq!(back, s);
        let c5 = spec_of(FamilySpec::Cycle(5));
        let back: Spectrum = serde_json::from_str(&serde_json::to_string(&c5).unwrap()).unwrap();
        assert_eq!(back, c5);
    }

    #[test]
    fn rejects_bad_json() {
        assert!(serde_json::from_str::<Spectrum>(r#"{"theta":[1,1],"mult":[1,1]}"#).is_err());
        assert!(serde_json::from_str::<Spectrum>(r#"{"theta":[1],"mult":[1],"n":3}"#).is_err());
    }
}
