use std::f64::consts::PI;

use super::Spectrum;
use crate::graphs::FamilySpec;
use crate::{Error, Result};

// Closed forms are accurate to a few ulps, so a tight grouping tolerance is
// safe and keeps distinct cosine values apart.
const CLOSED_FORM_TOL: f64 = 1e-10;

fn binom(n: usize, k: usize) -> f64 {
    crate::graphs::binomial_f64(n, k)
}

fn circulant_values(n: usize, jumps: &[usize]) -> Vec<f64> {
    (0..n)
        .map(|j| {
            jumps
                .iter()
                .map(|&s| {
                    if 2 * s == n {
                        if j % 2 == 0 {
                            1.0
                        } else {
                            -1.0
                        }
                    } else {
                        2.0 * (2.0 * PI * (j * s % n) as f64 / n as f64).cos()
                    }
                })
                .sum()
        })
        .collect()
}

fn kneser(n: usize, k: usize) -> Result<Spectrum> {
    // mu_j = (-1)^j C(n-k-j, k-j), multiplicity C(n,j) - C(n,j-1)
    let mut theta = Vec::new();
    let mut mults = Vec::new();
    for j in 0..=k {
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        theta.push(sign * binom(n - k - j, k - j));
        let m = binom(n, j) - if j > 0 { binom(n, j - 1) } else { 0.0 };
        mults.push(m as usize);
    }
    Spectrum::from_parts(theta, mults)
}

/// Spectrum from a closed-form expression, bypassing the eigensolver.
pub fn exact_family_spectrum(spec: &FamilySpec) -> Result<Spectrum> {
    use FamilySpec::*;
    spec.validate_params()?;
    match spec {
        Cycle(n) => Spectrum::from_eigenvalues(circulant_values(*n, &[1]), CLOSED_FORM_TOL),
        Complete(1) => Spectrum::from_parts(vec![0.0], vec![1]),
        Complete(n) => Spectrum::from_parts(vec![*n as f64 - 1.0, -1.0], vec![1, n - 1]),
        CompleteBipartite(a, b) => {
            let r = ((a * b) as f64).sqrt();
            if a + b == 2 {
                Spectrum::from_parts(vec![1.0, -1.0], vec![1, 1])
            } else {
                Spectrum::from_parts(vec![r, 0.0, -r], vec![1, a + b - 2, 1])
            }
        }
        Hypercube(d) => {
            let theta = (0..=*d).map(|i| *d as f64 - 2.0 * i as f64).collect();
            let mults = (0..=*d).map(|i| binom(*d, i) as usize).collect();
            Spectrum::from_parts(theta, mults)
        }
        Circulant(n, s) => {
            if s.iter().fold(*n, |a, &b| gcd(a, b)) != 1 {
                return Err(Error::DisconnectedGraph);
            }
            Spectrum::from_eigenvalues(circulant_values(*n, s), CLOSED_FORM_TOL)
        }
        Kneser(n, k) => kneser(*n, *k),
        Odd(l) => kneser(2 * l - 1, l - 1),
        Petersen => kneser(5, 2),
        Prism(n) => {
            let c = circulant_values(*n, &[1]);
            let vals = c.iter().flat_map(|&x| [x + 1.0, x - 1.0]).collect();
            Spectrum::from_eigenvalues(vals, CLOSED_FORM_TOL)
        }
        MoebiusLadder(n) => Spectrum::from_eigenvalues(circulant_values(2 * n, &[1, *n]), CLOSED_FORM_TOL),
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}
