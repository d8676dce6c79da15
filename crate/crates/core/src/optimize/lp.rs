//! Dense two-phase primal simplex with Bland's rule.

use std::fmt::Write as _;

use serde::Serialize;

use crate::{Error, Result};

/// `minimize c.x  s.t.  A x = b,  lower <= x <= upper`.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearProgram {
    objective: Vec<f64>,
    eq: Vec<(Vec<f64>, f64)>,
    lower: Vec<f64>,
    upper: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LpSolution {
    pub x: Vec<f64>,
    pub objective: f64,
    /// True for basic feasible solutions, which is all this solver returns.
    pub vertex: bool,
}

impl LinearProgram {
    /// `n` variables, zero objective, bounds `[0, inf)`.
    pub fn new(n: usize) -> LinearProgram {
        LinearProgram {
            objective: vec![0.0; n],
            eq: Vec::new(),
            lower: vec![0.0; n],
            upper: vec![f64::INFINITY; n],
        }
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn num_constraints(&self) -> usize {
        self.eq.len()
    }

    pub fn objective(&self) -> &[f64] {
        &self.objective
    }

    pub fn constraints(&self) -> &[(Vec<f64>, f64)] {
        &self.eq
    }

    pub fn bounds(&self, j: usize) -> (f64, f64) {
        (self.lower[j], self.upper[j])
    }

    pub fn set_objective(&mut self, c: Vec<f64>) -> Result<()> {
        if c.len() != self.num_vars() {
            return Err(Error::Dimension(format!("objective has {} entries, expected {}", c.len(), self.num_vars())));
        }
        self.objective = c;
        Ok(())
    }

    pub fn set_bounds(&mut self, j: usize, lo: f64, hi: f64) {
        self.lower[j] = lo;
        self.upper[j] = hi;
    }

    pub fn add_eq(&mut self, a: Vec<f64>, b: f64) -> Result<()> {
        if a.len() != self.num_vars() {
            return Err(Error::Dimension(format!("row has {} entries, expected {}", a.len(), self.num_vars())));
        }
        self.eq.push((a, b));
        Ok(())
    }

    /// Adds `a.x <= b` through a fresh slack variable and returns its index.
    pub fn add_le(&mut self, mut a: Vec<f64>, b: f64) -> Result<usize> {
        if a.len() != self.num_vars() {
            return Err(Error::Dimension(format!("row has {} entries, expected {}", a.len(), self.num_vars())));
        }
        let s = self.num_vars();
        self.objective.push(0.0);
        self.lower.push(0.0);
        self.upper.push(f64::INFINITY);
        for (row, _) in &mut self.eq {
            row.push(0.0);
        }
        a.push(1.0);
        self.eq.push((a, b));
        Ok(s)
    }

    /// Plain-text dump, see `docs/formats.md`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let num = |x: f64| {
            if x == f64::INFINITY {
                "inf".to_string()
            } else if x == f64::NEG_INFINITY {
                "-inf".to_string()
            } else {
                format!("{x:e}")
            }
        };
        let join = |v: &[f64]| v.iter().map(|&x| num(x)).collect::<Vec<_>>().join(" ");
        writeln!(out, "lp {} {}", self.num_vars(), self.eq.len()).unwrap();
        writeln!(out, "min {}", join(&self.objective)).unwrap();
        for (a, b) in &self.eq {
            writeln!(out, "eq {} = {}", join(a), num(*b)).unwrap();
        }
        for j in 0..self.num_vars() {
            writeln!(out, "bound {j} {} {}", num(self.lower[j]), num(self.upper[j])).unwrap();
        }
        out
    }
}

/// How an original variable is expressed through nonnegative columns.
#[derive(Clone, Copy)]
enum Column {
    /// `x = offset + sign * y_col`
    Shifted { col: usize, offset: f64, sign: f64 },
    /// `x = y_pos - y_neg`
    Free { pos: usize, neg: usize },
}

const PIVOT_TOL: f64 = 1e-8;
const COST_TOL: f64 = 1e-10;
const MAX_PIVOTS: usize = 200_000;

struct Tableau {
    rows: Vec<Vec<f64>>,
    z: Vec<f64>,
    basis: Vec<usize>,
    width: usize,
}

impl Tableau {
    fn rhs(&self) -> usize {
        self.width
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let p = self.rows[r][c];
        for v in self.rows[r].iter_mut() {
            *v /= p;
        }
        let prow = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i != r {
                let f = row[c];
                if f != 0.0 {
                    for (v, pv) in row.iter_mut().zip(&prow) {
                        *v -= f * pv;
                    }
                    row[c] = 0.0;
                }
            }
        }
        let f = self.z[c];
        if f != 0.0 {
            for (v, pv) in self.z.iter_mut().zip(&prow) {
                *v -= f * pv;
            }
            self.z[c] = 0.0;
        }
        self.basis[r] = c;
    }

    fn set_costs(&mut self, cost: &[f64]) {
        self.z = vec![0.0; self.width + 1];
        self.z[..cost.len()].copy_from_slice(cost);
        for (i, row) in self.rows.iter().enumerate() {
            let cb = cost.get(self.basis[i]).copied().unwrap_or(0.0);
            if cb != 0.0 {
                for (v, a) in self.z.iter_mut().zip(row) {
                    *v -= cb * a;
                }
            }
        }
    }

    /// Runs Bland's rule over columns `< allowed`. Returns false if unbounded.
    fn optimize(&mut self, allowed: usize, pivots: &mut usize) -> Result<bool> {
        loop {
            let Some(c) = (0..allowed).find(|&j| self.z[j] < -COST_TOL) else {
                return Ok(true);
            };
            let rhs = self.rhs();
            let mut best: Option<(usize, f64)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if row[c] > PIVOT_TOL {
                    let ratio = row[rhs].max(0.0) / row[c];
                    best = match best {
                        None => Some((i, ratio)),
                        Some((bi, br)) => {
                            let tie = (ratio - br).abs() <= 1e-12 * br.abs().max(1.0);
                            if ratio < br && !tie || tie && self.basis[i] < self.basis[bi] {
                                Some((i, ratio))
                            } else {
                                Some((bi, br))
                            }
                        }
                    };
                }
            }
            let Some((r, _)) = best else {
                return Ok(false);
            };
            self.pivot(r, c);
            *pivots += 1;
            if *pivots > MAX_PIVOTS {
                return Err(Error::NumericalInstability("simplex pivot limit reached".into()));
            }
        }
    }
}

pub fn solve_lp(lp: &LinearProgram) -> Result<LpSolution> {
    let n = lp.num_vars();
    if lp.lower.len() != n || lp.upper.len() != n || lp.eq.iter().any(|(a, _)| a.len() != n) {
        return Err(Error::Dimension("inconsistent program dimensions".into()));
    }
    for j in 0..n {
        if lp.lower[j] > lp.upper[j] || lp.lower[j].is_nan() || lp.upper[j].is_nan() {
            return Err(Error::Infeasible);
        }
    }

    // Standard form over nonnegative columns.
    let mut cols = Vec::with_capacity(n);
    let mut ncols = 0;
    let mut upper_rows: Vec<(usize, f64)> = Vec::new();
    for j in 0..n {
        let (lo, hi) = (lp.lower[j], lp.upper[j]);
        if lo.is_finite() {
            cols.push(Column::Shifted { col: ncols, offset: lo, sign: 1.0 });
            if hi.is_finite() {
                upper_rows.push((ncols, hi - lo));
            }
            ncols += 1;
        } else if hi.is_finite() {
            cols.push(Column::Shifted { col: ncols, offset: hi, sign: -1.0 });
            ncols += 1;
        } else {
            cols.push(Column::Free { pos: ncols, neg: ncols + 1 });
            ncols += 2;
        }
    }
    let n_bound_slacks = upper_rows.len();
    let n_struct = ncols + n_bound_slacks;
    let mut a_rows: Vec<(Vec<f64>, f64)> = Vec::new();
    for (a, b) in &lp.eq {
        let mut row = vec![0.0; n_struct];
        let mut rhs = *b;
        for (j, &aj) in a.iter().enumerate() {
            if aj == 0.0 {
                continue;
            }
            match cols[j] {
                Column::Shifted { col, offset, sign } => {
                    row[col] += aj * sign;
                    rhs -= aj * offset;
                }
                Column::Free { pos, neg } => {
                    row[pos] += aj;
                    row[neg] -= aj;
                }
            }
        }
        a_rows.push((row, rhs));
    }
    for (k, &(col, cap)) in upper_rows.iter().enumerate() {
        let mut row = vec![0.0; n_struct];
        row[col] = 1.0;
        row[ncols + k] = 1.0;
        a_rows.push((row, cap));
    }
    // Scale rows to unit max and make right-hand sides nonnegative.
    for (row, rhs) in &mut a_rows {
        let s = row.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        if s > 0.0 {
            row.iter_mut().for_each(|v| *v /= s);
            *rhs /= s;
        }
        if *rhs < 0.0 {
            row.iter_mut().for_each(|v| *v = -*v);
            *rhs = -*rhs;
        }
    }
    let mut cost = vec![0.0; n_struct];
    for j in 0..n {
        let c = lp.objective[j];
        match cols[j] {
            Column::Shifted { col, sign, .. } => cost[col] += c * sign,
            Column::Free { pos, neg } => {
                cost[pos] += c;
                cost[neg] -= c;
            }
        }
    }

    // An all-zero row with nonzero right-hand side is infeasible outright.
    let m = a_rows.len();
    for (row, rhs) in &a_rows {
        if row.iter().all(|&v| v == 0.0) && *rhs > 1e-9 {
            return Err(Error::Infeasible);
        }
    }

    let width = n_struct + m;
    let mut rows = Vec::with_capacity(m);
    for (i, (row, rhs)) in a_rows.iter().enumerate() {
        let mut r = vec![0.0; width + 1];
        r[..n_struct].copy_from_slice(row);
        r[n_struct + i] = 1.0;
        r[width] = *rhs;
        rows.push(r);
    }
    let mut t = Tableau {
        rows,
        z: Vec::new(),
        basis: (n_struct..n_struct + m).collect(),
        width,
    };
    let mut phase1 = vec![0.0; width];
    phase1[n_struct..].iter_mut().for_each(|v| *v = 1.0);
    t.set_costs(&phase1);
    let mut pivots = 0;
    t.optimize(width, &mut pivots)?;
    let bscale = 1.0 + a_rows.iter().fold(0.0f64, |a, r| a.max(r.1));
    if -t.z[width] > 1e-8 * bscale {
        return Err(Error::Infeasible);
    }
    // Drive artificial variables out of the basis; drop redundant rows.
    let mut i = 0;
    while i < t.rows.len() {
        if t.basis[i] >= n_struct {
            let pick = (0..n_struct)
                .filter(|&j| t.rows[i][j].abs() > 1e-9)
                .max_by(|&a, &b| t.rows[i][a].abs().total_cmp(&t.rows[i][b].abs()));
            match pick {
                Some(j) => t.pivot(i, j),
                None => {
                    t.rows.remove(i);
                    t.basis.remove(i);
                    continue;
                }
            }
        }
        i += 1;
    }
    t.set_costs(&cost);
    if !t.optimize(n_struct, &mut pivots)? {
        return Err(Error::Unbounded);
    }

    let mut y = vec![0.0; width];
    for (i, &b) in t.basis.iter().enumerate() {
        y[b] = t.rows[i][width];
    }
    refine(&a_rows, &t.basis, &mut y);
    let x: Vec<f64> = cols
        .iter()
        .map(|c| match *c {
            Column::Shifted { col, offset, sign } => offset + sign * y[col],
            Column::Free { pos, neg } => y[pos] - y[neg],
        })
        .collect();
    check_residuals(lp, &x)?;
    let objective = lp.objective.iter().zip(&x).map(|(c, v)| c * v).sum::<f64>();
    Ok(LpSolution {
        x,
        objective,
        vertex: true,
    })
}

fn max_residual(a_rows: &[(Vec<f64>, f64)], y: &[f64]) -> f64 {
    a_rows
        .iter()
        .map(|(row, rhs)| (row.iter().zip(y).map(|(a, v)| a * v).sum::<f64>() - rhs).abs())
        .fold(0.0, f64::max)
}

/// Long pivot sequences let the tableau drift. Re-solve the basic values
/// against the original rows and keep them if they are better.
fn refine(a_rows: &[(Vec<f64>, f64)], basis: &[usize], y: &mut [f64]) {
    if basis.is_empty() || basis.iter().any(|&b| b >= a_rows[0].0.len()) {
        return;
    }
    let m = a_rows.len();
    let b = nalgebra::DMatrix::from_fn(m, basis.len(), |i, j| a_rows[i].0[basis[j]]);
    let rhs = nalgebra::DVector::from_fn(m, |i, _| a_rows[i].1);
    let Ok(sol) = b.svd(true, true).solve(&rhs, 1e-13) else {
        return;
    };
    let mut cand = y.to_vec();
    for (j, &col) in basis.iter().enumerate() {
        if sol[j] < -1e-9 {
            return;
        }
        cand[col] = sol[j].max(0.0);
    }
    if max_residual(a_rows, &cand) < max_residual(a_rows, y) {
        y.copy_from_slice(&cand);
    }
}

fn check_residuals(lp: &LinearProgram, x: &[f64]) -> Result<()> {
    for (a, b) in &lp.eq {
        let scale = a.iter().zip(x).fold(b.abs(), |m, (ai, xi)| m.max((ai * xi).abs())).max(1.0);
        let r: f64 = a.iter().zip(x).map(|(ai, xi)| ai * xi).sum::<f64>() - b;
        if r.abs() > 1e-7 * scale {
            return Err(Error::NumericalInstability(format!("equality residual {r:e}")));
        }
    }
    for (j, &v) in x.iter().enumerate() {
        if v < lp.lower[j] - 1e-7 || v > lp.upper[j] + 1e-7 {
            return Err(Error::NumericalInstability(format!("bound violated on x{j}: {v}")));
        }
    }
    Ok(())
}
