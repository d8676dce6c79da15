//! Closed-form minor polynomials for small `k` and for `k = d - 1, d`.

use serde::Serialize;

use super::MeshPolynomial;
use crate::spectra::{pi_products, Spectrum};
use crate::{Error, Result};

/// Values `prod_r (theta_j - r) / prod_r (theta_0 - r)` on the mesh.
fn normalized_product(s: &Spectrum, roots: &[f64]) -> MeshPolynomial {
    let t = s.theta();
    let denom: f64 = roots.iter().map(|r| t[0] - r).product();
    let values = t
        .iter()
        .map(|&x| roots.iter().map(|r| x - r).product::<f64>() / denom)
        .collect();
    MeshPolynomial::new(t.to_vec(), values).expect("spectrum mesh")
}

/// Index of the smallest eigenvalue greater than `-1`, if it has a
/// successor and is not `theta_0`.
pub fn mp2_index(s: &Spectrum) -> Option<usize> {
    let i = s.theta().iter().rposition(|&t| t > -1.0)?;
    (i >= 1 && i < s.d()).then_some(i)
}

/// Index of the smallest eigenvalue at or above
/// `-(theta_0^2 + theta_0 theta_d - delta) / (theta_0 (1 + theta_d))`.
pub fn mp4_index(s: &Spectrum, delta: f64) -> Option<usize> {
    let t = s.theta();
    let (t0, td) = (t[0], t[s.d()]);
    let denom = t0 * (1.0 + td);
    if denom.abs() < 1e-12 {
        return None;
    }
    let bound = -(t0 * t0 + t0 * td - delta) / denom;
    let i = t.iter().rposition(|&x| x >= bound - 1e-12)?;
    (i >= 1 && i < s.d()).then_some(i)
}

fn mp1(s: &Spectrum) -> MeshPolynomial {
    normalized_product(s, &[s.theta()[s.d()]])
}

fn mp2(s: &Spectrum) -> Result<MeshPolynomial> {
    let i = mp2_index(s).ok_or(Error::NoValidTheta)?;
    let t = s.theta();
    Ok(normalized_product(s, &[t[i], t[i + 1]]))
}

fn mp4(s: &Spectrum, delta: f64) -> Result<MeshPolynomial> {
    let i = mp4_index(s, delta).ok_or(Error::NoValidTheta)?;
    let t = s.theta();
    Ok(normalized_product(s, &[t[i], t[i + 1], t[s.d()]]))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Mp5Candidate {
    pub index: usize,
    /// `1 + m_i pi_i / pi_0`.
    pub bound: f64,
}

/// One candidate per odd index. The winner is the smallest bound; ties go
/// to the largest index.
pub fn mp5_candidates(s: &Spectrum) -> Vec<Mp5Candidate> {
    let pi = pi_products(s);
    (1..=s.d())
        .step_by(2)
        .map(|i| Mp5Candidate {
            index: i,
            bound: 1.0 + s.mults()[i] as f64 * pi.get(i) / pi.get(0),
        })
        .collect()
}

fn mp5(s: &Spectrum) -> MeshPolynomial {
    let pi = pi_products(s);
    let best = mp5_candidates(s)
        .into_iter()
        .reduce(|a, b| if b.bound <= a.bound * (1.0 + 1e-12) { b } else { a })
        .expect("d >= 1");
    let mut values = vec![0.0; s.d() + 1];
    values[0] = 1.0;
    values[best.index] = pi.get(best.index) / pi.get(0);
    MeshPolynomial::new(s.theta().to_vec(), values).expect("spectrum mesh")
}

/// The closed-form `k`-minor polynomial, for `k` in `{0, 1, 2, 3, d-1, d}`.
/// `delta` is the constant diagonal of `A^3`, required for `k = 3`.
pub fn minor_closed_form(s: &Spectrum, k: usize, delta: Option<f64>) -> Result<MeshPolynomial> {
    let d = s.d();
    let mesh = s.theta().to_vec();
    if k == 0 {
        return MeshPolynomial::new(mesh, vec![1.0; d + 1]);
    }
    if k >= d {
        let mut v = vec![0.0; d + 1];
        v[0] = 1.0;
        return MeshPolynomial::new(mesh, v);
    }
    if k == d - 1 {
        return Ok(mp5(s));
    }
    match k {
        1 => Ok(mp1(s)),
        2 => mp2(s),
        3 => mp4(s, delta.ok_or(Error::MissingAux)?),
        _ => Err(Error::UnsupportedK { k, d }),
    }
}

/// The product `f_1 f_2` next to the exact cubic, and whether both pick the
/// same first zero.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Mp3Diagnostic {
    pub mp3: MeshPolynomial,
    pub mp4: MeshPolynomial,
    pub mp3_index: usize,
    pub mp4_index: usize,
    pub same_index: bool,
}

pub fn mp3_diagnostic(s: &Spectrum, delta: f64) -> Result<Mp3Diagnostic> {
    if s.d() < 3 {
        return Err(Error::UnsupportedK { k: 3, d: s.d() });
    }
    let i3 = mp2_index(s).ok_or(Error::NoValidTheta)?;
    let i4 = mp4_index(s, delta).ok_or(Error::NoValidTheta)?;
    let f1 = mp1(s);
    let f2 = mp2(s)?;
    let prod = f1.values().iter().zip(f2.values()).map(|(a, b)| a * b).collect();
    Ok(Mp3Diagnostic {
        mp3: f1.with_values(prod),
        mp4: mp4(s, delta)?,
        mp3_index: i3,
        mp4_index: i4,
        same_index: i3 == i4,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::FamilySpec;
    use crate::spectra::exact_family_spectrum;

    fn odd(l: usize) -> Spectrum {
        exact_family_spectrum(&FamilySpec::Odd(l)).unwrap()
    }

    fn close(a: &[f64], b: &[f64]) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() < 1e-12)
    }

    #[test]
    fn odd5_mp1_mp2() {
        let s = odd(5);
        let f1 = minor_closed_form(&s, 1, None).unwrap();
        assert!(close(f1.values(), &[1.0, 7.0 / 9.0, 5.0 / 9.0, 2.0 / 9.0, 0.0]));
        let f2 = minor_closed_form(&s, 2, None).unwrap();
        assert!(close(f2.values(), &[1.0, 5.0 / 14.0, 0.0, 0.0, 5.0 / 14.0]));
        assert!((s.weighted_sum(f2.values()) - 13.5).abs() < 1e-9);
    }

    #[test]
    fn odd5_mp4() {
        let s = odd(5);
        let f3 = minor_closed_form(&s, 3, Some(0.0)).unwrap();
        assert!(close(f3.values(), &[1.0, 5.0 / 18.0, 0.0, 0.0, 0.0]));
        assert!((s.weighted_sum(f3.values()) - 8.5).abs() < 1e-9);
        assert_eq!(minor_closed_form(&odd(6), 3, None), Err(Error::MissingAux));
    }

    #[test]
    fn odd6_mp5_takes_last_index() {
        let s = odd(6);
        let f = minor_closed_form(&s, 4, None).unwrap();
        assert!(close(f.values(), &[1.0, 0.0, 0.0, 0.0, 0.0, 1.0]));
        assert!((s.weighted_sum(f.values()) - 11.0).abs() < 1e-9);
        let c = mp5_candidates(&s);
        assert_eq!(c.iter().map(|c| c.index).collect::<Vec<_>>(), vec![1, 3, 5]);
    }

    #[test]
    fn odd6_mp4() {
        let s = odd(6);
        let f = minor_closed_form(&s, 3, Some(0.0)).unwrap();
        assert!(close(f.values(), &[1.0, 45.0 / 154.0, 0.0, 0.0, 5.0 / 77.0, 0.0]));
        let diag = mp3_diagnostic(&s, 0.0).unwrap();
        assert!(diag.same_index);
    }

    #[test]
    fn unsupported() {
        let s = exact_family_spectrum(&FamilySpec::Hypercube(8)).unwrap();
        assert_eq!(minor_closed_form(&s, 5, None), Err(Error::UnsupportedK { k: 5, d: 8 }));
        let top = minor_closed_form(&s, 8, None).unwrap();
        assert_eq!(s.weighted_sum(top.values()), 1.0);
    }
}
