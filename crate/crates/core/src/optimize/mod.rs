//! LP and MILP solvers, and the minor- and sign-polynomial programs built on
//! them. Both programs work on mesh values `x_i = p(theta_i)`.

mod lp;
mod milp;

use serde::Serialize;

pub use lp::{solve_lp, LinearProgram, LpSolution};
pub use milp::{solve_milp, Milp, MilpResult};

use crate::polys::{divided_difference_weights, CoeffPolynomial, MeshPolynomial};
use crate::spectra::Spectrum;
use crate::{Error, Result};

/// Rows whose null space is the set of mesh values of polynomials of degree
/// at most `k`: the divided-difference functionals of orders `k+1..=d`,
/// orthonormalized. Orthonormalizing leaves the constraint set unchanged and
/// keeps the simplex tableau well scaled.
pub fn degree_rows(mesh: &[f64], k: usize) -> Vec<Vec<f64>> {
    let d = mesh.len() - 1;
    let mut rows: Vec<Vec<f64>> = Vec::new();
    for m in k + 1..=d {
        let mut w = divided_difference_weights(mesh, m);
        normalize(&mut w);
        for _ in 0..2 {
            for q in &rows {
                let c: f64 = w.iter().zip(q).map(|(a, b)| a * b).sum();
                for (a, b) in w.iter_mut().zip(q) {
                    *a -= c * b;
                }
            }
            normalize(&mut w);
        }
        rows.push(w);
    }
    rows
}

fn normalize(v: &mut [f64]) {
    let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    if n > 0.0 {
        v.iter_mut().for_each(|x| *x /= n);
    }
}

/// The minor-polynomial LP: `x_0 = 1`, `x_i >= 0`, degree at most `k`,
/// minimize `sum m_i x_i`.
pub fn minor_lp(s: &Spectrum, k: usize) -> LinearProgram {
    let d = s.d();
    let mut lp = LinearProgram::new(d + 1);
    lp.set_objective(s.mults().iter().map(|&m| m as f64).collect())
        .expect("dimension");
    lp.set_bounds(0, 1.0, 1.0);
    for row in degree_rows(s.theta(), k) {
        lp.add_eq(row, 0.0).expect("dimension");
    }
    lp
}

/// Optimal `k`-minor polynomial by linear programming.
///
/// The LP optimum need not be unique (`O_6` at `k = 2` has two optimal
/// vertices). Ties are broken lexicographically: with the trace held at its
/// optimum, minimize `f(theta_1)`, then `f(theta_2)`, and so on. A vertex with
/// exactly `min(k, d)` zeros is then rebuilt from its roots, which removes simplex
/// round-off.
pub fn minor_polynomial(s: &Spectrum, k: usize) -> Result<MeshPolynomial> {
    let d = s.d();
    let mut lp = minor_lp(s, k);
    let sol = solve_lp(&lp)?;
    let mut x = sol.x;
    if d >= 1 {
        let slack = 1e-9 * sol.objective.abs().max(1.0);
        let trace = lp.objective().to_vec();
        lp.add_le(trace, sol.objective + slack)?;
        for i in 1..=d {
            let mut c = vec![0.0; lp.num_vars()];
            c[i] = 1.0;
            lp.set_objective(c)?;
            match solve_lp(&lp) {
                Ok(r) => {
                    lp.set_bounds(i, 0.0, r.objective.max(0.0) + 1e-10);
                    x = r.x;
                }
                // The refinement only reorders ties; keep the plain optimum
                // if a tightened program turns out numerically infeasible.
                Err(_) => break,
            }
        }
        x.truncate(d + 1);
    }
    let scale = x.iter().fold(1.0f64, |a, v| a.max(v.abs()));
    let zeros: Vec<usize> = (1..=d).filter(|&i| x[i].abs() <= 1e-8 * scale).collect();
    let theta = s.theta();
    let values: Vec<f64> = if zeros.len() == k.min(d) {
        let denom: f64 = zeros.iter().map(|&j| theta[0] - theta[j]).product();
        let exact: Vec<f64> = theta
            .iter()
            .map(|&t| zeros.iter().map(|&j| t - theta[j]).product::<f64>() / denom)
            .collect();
        let close = exact.iter().zip(&x).all(|(a, b)| (a - b).abs() <= 1e-6 * scale);
        if close {
            exact.into_iter().map(|v| if v.abs() <= 1e-13 * scale { 0.0 } else { v }).collect()
        } else {
            x.iter().map(|&v| if v.abs() <= 1e-9 * scale { 0.0 } else { v }).collect()
        }
    } else {
        x.iter().map(|&v| if v.abs() <= 1e-9 * scale { 0.0 } else { v }).collect()
    };
    let f = MeshPolynomial::new(theta.to_vec(), values)?;
    if d >= 1 && f.lambda() > 1e-9 {
        return Err(Error::NormalizationViolation(f.lambda()));
    }
    Ok(f)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SignConfig {
    /// Big-M for the indicator rows. Values are boxed to `[-1, 1]`, so any
    /// `M > 1 + eps` is valid.
    pub big_m: f64,
    pub eps: f64,
    pub node_limit: usize,
}

impl Default for SignConfig {
    fn default() -> Self {
        SignConfig {
            big_m: 2.0,
            eps: 1e-4,
            node_limit: 50_000,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MilpSolution {
    pub sign_poly: MeshPolynomial,
    pub coeffs: CoeffPolynomial,
    /// `b[j] = 1` iff `s(theta_j) >= 0` (up to the sign tolerance).
    pub b: Vec<u8>,
    /// `sum m_j b_j`.
    pub objective: usize,
    pub nodes: usize,
}

/// Variables `y_0..=y_d`, then `b_0..=b_d`, then one slack per indicator row.
pub fn sign_milp(s: &Spectrum, k: usize, cfg: &SignConfig) -> Milp {
    let d = s.d();
    let nv = 2 * (d + 1);
    let mut lp = LinearProgram::new(nv);
    let mut c = vec![0.0; nv];
    for j in 0..=d {
        c[d + 1 + j] = s.mults()[j] as f64;
        lp.set_bounds(j, -1.0, 1.0);
        lp.set_bounds(d + 1 + j, 0.0, 1.0);
    }
    lp.set_objective(c).expect("dimension");
    let mut trace = vec![0.0; nv];
    for j in 0..=d {
        trace[j] = s.mults()[j] as f64;
    }
    lp.add_eq(trace, 0.0).expect("dimension");
    for row in degree_rows(s.theta(), k) {
        let mut r = vec![0.0; nv];
        r[..=d].copy_from_slice(&row);
        lp.add_eq(r, 0.0).expect("dimension");
    }
    for j in 0..=d {
        let mut r = vec![0.0; lp.num_vars()];
        r[j] = 1.0;
        r[d + 1 + j] = -cfg.big_m;
        lp.add_le(r, -cfg.eps).expect("dimension");
    }
    let binaries: Vec<usize> = (0..=d).map(|j| d + 1 + j).collect();
    let mut by_mult: Vec<usize> = (0..=d).collect();
    by_mult.sort_by(|&a, &b| s.mults()[b].cmp(&s.mults()[a]).then(a.cmp(&b)));
    let mut m = Milp::new(lp, binaries);
    m.branch_order = Some(by_mult.into_iter().map(|j| d + 1 + j).collect());
    m.integral_objective = true;
    m.node_limit = cfg.node_limit;
    m
}

/// Optimal `k`-sign polynomial by branch and bound, with a certificate
/// re-solved to maximize its smallest negative margin.
pub fn sign_polynomial(s: &Spectrum, k: usize, cfg: &SignConfig) -> Result<MilpSolution> {
    let d = s.d();
    let milp = sign_milp(s, k, cfg);
    let r = solve_milp(&milp)?;
    let b_opt: Vec<bool> = (0..=d).map(|j| r.x[d + 1 + j] > 0.5).collect();
    let y = max_margin(s, k, &b_opt).unwrap_or_else(|_| r.x[..=d].to_vec());
    let scale = y.iter().fold(0.0f64, |a, v| a.max(v.abs())).max(f64::MIN_POSITIVE);
    let tol = crate::tol::SIGN * scale;
    let b: Vec<u8> = y.iter().map(|&v| (v >= -tol) as u8).collect();
    let objective = b.iter().zip(s.mults()).map(|(&b, &m)| b as usize * m).sum();
    let sign_poly = MeshPolynomial::new(s.theta().to_vec(), y)?;
    Ok(MilpSolution {
        coeffs: sign_poly.to_coeffs(),
        sign_poly,
        b,
        objective,
        nodes: r.nodes,
    })
}

/// Maximize `t` subject to `y_j + t <= 0` where `b_j = 0`, trace zero,
/// degree at most `k`, `|y| <= 1`.
fn max_margin(s: &Spectrum, k: usize, b: &[bool]) -> Result<Vec<f64>> {
    let d = s.d();
    let nv = d + 2;
    let mut lp = LinearProgram::new(nv);
    let mut c = vec![0.0; nv];
    c[d + 1] = -1.0;
    lp.set_objective(c).expect("dimension");
    for j in 0..=d {
        lp.set_bounds(j, -1.0, 1.0);
    }
    lp.set_bounds(d + 1, 0.0, 1.0);
    let mut trace = vec![0.0; nv];
    for j in 0..=d {
        trace[j] = s.mults()[j] as f64;
    }
    lp.add_eq(trace, 0.0).expect("dimension");
    for row in degree_rows(s.theta(), k) {
        let mut r = vec![0.0; nv];
        r[..=d].copy_from_slice(&row);
        lp.add_eq(r, 0.0).expect("dimension");
    }
    for j in (0..=d).filter(|&j| !b[j]) {
        let mut r = vec![0.0; lp.num_vars()];
        r[j] = 1.0;
        r[d + 1] = 1.0;
        lp.add_le(r, 0.0).expect("dimension");
    }
    let sol = solve_lp(&lp)?;
    if sol.x[d + 1] <= 0.0 {
        return Err(Error::Infeasible);
    }
    Ok(sol.x[..=d].iter().map(|&v| if v.abs() <= 1e-12 { 0.0 } else { v }).collect())
}
