//! Depth-first branch and bound over binary variables.

use std::fmt::Write as _;

use super::lp::{solve_lp, LinearProgram};
use crate::{Error, Result};

#[derive(Clone, Debug)]
pub struct Milp {
    pub lp: LinearProgram,
    pub binaries: Vec<usize>,
    /// Branching priority; defaults to `binaries` order.
    pub branch_order: Option<Vec<usize>>,
    /// Objective takes integer values on integer points, which allows
    /// rounding node bounds up.
    pub integral_objective: bool,
    pub node_limit: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct MilpResult {
    pub x: Vec<f64>,
    pub objective: f64,
    pub nodes: usize,
}

const INT_TOL: f64 = 1e-6;

impl Milp {
    pub fn new(lp: LinearProgram, binaries: Vec<usize>) -> Milp {
        Milp {
            lp,
            binaries,
            branch_order: None,
            integral_objective: false,
            node_limit: 100_000,
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = self.lp.to_text();
        let b: Vec<String> = self.binaries.iter().map(|j| j.to_string()).collect();
        writeln!(out, "binary {}", b.join(" ")).unwrap();
        out
    }
}

pub fn solve_milp(m: &Milp) -> Result<MilpResult> {
    let order = m.branch_order.clone().unwrap_or_else(|| m.binaries.clone());
    let mut base = m.lp.clone();
    for &j in &m.binaries {
        let (lo, hi) = base.bounds(j);
        base.set_bounds(j, lo.max(0.0), hi.min(1.0));
    }
    let mut best: Option<MilpResult> = None;
    let mut stack: Vec<Vec<(usize, f64)>> = vec![Vec::new()];
    let mut nodes = 0;
    while let Some(fixed) = stack.pop() {
        nodes += 1;
        if nodes > m.node_limit {
            return Err(Error::NodeLimit(m.node_limit));
        }
        let mut lp = base.clone();
        for &(j, v) in &fixed {
            lp.set_bounds(j, v, v);
        }
        let sol = match solve_lp(&lp) {
            Ok(s) => s,
            Err(Error::Infeasible) => continue,
            Err(e) => return Err(e),
        };
        if let Some(b) = &best {
            let bound = if m.integral_objective {
                (sol.objective - INT_TOL).ceil()
            } else {
                sol.objective
            };
            if bound >= b.objective - 1e-9 {
                continue;
            }
        }
        let fractional = order
            .iter()
            .copied()
            .find(|&j| (sol.x[j] - sol.x[j].round()).abs() > INT_TOL);
        let branch_on = match fractional {
            Some(j) => Some(j),
            None => {
                // Integral relaxation: confirm with all binaries pinned.
                let mut pinned = base.clone();
                for &j in &m.binaries {
                    let v = sol.x[j].round();
                    pinned.set_bounds(j, v, v);
                }
                match solve_lp(&pinned) {
                    Ok(s) => {
                        if best.as_ref().is_none_or(|b| s.objective < b.objective - 1e-9) {
                            best = Some(MilpResult {
                                x: s.x,
                                objective: s.objective,
                                nodes: 0,
                            });
                        }
                        None
                    }
                    Err(Error::Infeasible) => order.iter().copied().find(|j| !fixed.iter().any(|f| f.0 == *j)),
                    Err(e) => return Err(e),
                }
            }
        };
        if let Some(j) = branch_on {
            let mut one = fixed.clone();
            one.push((j, 1.0));
            let mut zero = fixed;
            zero.push((j, 0.0));
            stack.push(one);
            stack.push(zero);
        }
    }
    let mut r = best.ok_or(Error::Infeasible)?;
    r.nodes = nodes;
    for &j in &m.binaries {
        r.x[j] = r.x[j].round();
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn knapsack() {
        // max 5a + 4b + 3c  s.t. 2a + 3b + c <= 5, binaries
        let mut lp = LinearProgram::new(3);
        lp.set_objective(vec![-5.0, -4.0, -3.0]).unwrap();
        lp.add_le(vec![2.0, 3.0, 1.0], 5.0).unwrap();
        let mut m = Milp::new(lp, vec![0, 1, 2]);
        m.integral_objective = true;
        let r = solve_milp(&m).unwrap();
        assert_eq!(r.objective, -9.0);
        assert_eq!(&r.x[..3], &[1.0, 1.0, 0.0]);
    }

    #[test]
    fn infeasible_binary() {
        let mut lp = LinearProgram::new(1);
        lp.add_eq(vec![2.0], 1.0).unwrap();
        let m = Milp::new(lp, vec![0]);
        assert_eq!(solve_milp(&m), Err(Error::Infeasible));
    }

    #[test]
    fn node_limit() {
        let mut lp = LinearProgram::new(6);
        lp.set_objective(vec![-1.0; 6]).unwrap();
        lp.add_le(vec![2.0; 6], 5.0).unwrap();
        let mut m = Milp::new(lp, (0..6).collect());
        m.node_limit = 2;
        assert_eq!(solve_milp(&m), Err(Error::NodeLimit(2)));
    }
}
