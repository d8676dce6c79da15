use serde::Serialize;

use super::Spectrum;
use crate::graphs::{distance_matrix, DistanceMatrix, Graph};
use crate::polys::CoeffPolynomial;

/// `{b_0, ..., b_{D-1}; c_1, ..., c_D}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntersectionArray {
    pub b: Vec<usize>,
    pub c: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RegularityReport {
    pub degree: Option<usize>,
    /// Largest `k <= d` such that the number of closed walks of every
    /// length `<= k` is the same at every vertex.
    pub pwr_level: usize,
    pub is_walk_regular: bool,
    pub intersection_array: Option<IntersectionArray>,
    pub diameter: usize,
    pub d: usize,
    pub diameter_equals_d: bool,
}

impl RegularityReport {
    pub fn is_regular(&self) -> bool {
        self.degree.is_some()
    }

    pub fn is_distance_regular(&self) -> bool {
        self.intersection_array.is_some()
    }

    /// Walk-regular graphs are `k`-partially walk-regular for every `k`,
    /// including `k > d`.
    pub fn is_k_pwr(&self, k: usize) -> bool {
        self.is_walk_regular || k <= self.pwr_level
    }
}

pub fn classify_regularity(g: &Graph, s: &Spectrum) -> RegularityReport {
    let dist = distance_matrix(g);
    classify_with_distances(g, s, &dist)
}

pub fn classify_with_distances(g: &Graph, s: &Spectrum, dist: &DistanceMatrix) -> RegularityReport {
    let d = s.d();
    let walks = closed_walk_counts(g, d);
    let mut pwr_level = 0;
    for l in 1..=d {
        if walks.iter().all(|w| w[l] == walks[0][l]) {
            pwr_level = l;
        } else {
            break;
        }
    }
    // Every simple graph has constant diag(A^0) and diag(A^1).
    let pwr_level = pwr_level.max(1);
    let is_walk_regular = pwr_level >= d;
    RegularityReport {
        degree: g.regular_degree(),
        pwr_level,
        is_walk_regular,
        intersection_array: intersection_array(g, dist),
        diameter: dist.diameter(),
        d,
        diameter_equals_d: dist.diameter() == d,
    }
}

/// `out[u][l]` = number of closed walks of length `l` at `u`, `l <= max_len`.
/// Counts saturate rather than overflow.
fn closed_walk_counts(g: &Graph, max_len: usize) -> Vec<Vec<u128>> {
    let n = g.n();
    let mut out = Vec::with_capacity(n);
    let mut cur = vec![0u128; n];
    let mut next = vec![0u128; n];
    for u in 0..n {
        cur.iter_mut().for_each(|x| *x = 0);
        cur[u] = 1;
        let mut row = vec![1u128];
        for _ in 1..=max_len {
            for v in 0..n {
                next[v] = g.neighbors(v).iter().fold(0u128, |a, &w| a.saturating_add(cur[w]));
            }
            std::mem::swap(&mut cur, &mut next);
            row.push(cur[u]);
        }
        out.push(row);
    }
    out
}

fn intersection_array(g: &Graph, dist: &DistanceMatrix) -> Option<IntersectionArray> {
    let n = g.n();
    let diam = dist.diameter();
    let mut b: Vec<Option<usize>> = vec![None; diam + 1];
    let mut c: Vec<Option<usize>> = vec![None; diam + 1];
    let mut a: Vec<Option<usize>> = vec![None; diam + 1];
    let check = |slot: &mut Option<usize>, val: usize| match slot {
        None => {
            *slot = Some(val);
            true
        }
        Some(x) => *x == val,
    };
    for u in 0..n {
        for v in 0..n {
            let i = dist.get(u, v);
            let (mut ci, mut ai, mut bi) = (0, 0, 0);
            for &w in g.neighbors(v) {
                let j = dist.get(u, w);
                if j + 1 == i {
                    ci += 1;
                } else if j == i {
                    ai += 1;
                } else {
                    bi += 1;
                }
            }
            if !(check(&mut c[i], ci) && check(&mut a[i], ai) && check(&mut b[i], bi)) {
                return None;
            }
        }
    }
    Some(IntersectionArray {
        b: b[..diam].iter().map(|x| x.unwrap_or(0)).collect(),
        c: c[1..].iter().map(|x| x.unwrap_or(0)).collect(),
    })
}

/// Minimum and maximum diagonal entry of `p(A)`.
pub fn diagonal_stats(g: &Graph, p: &CoeffPolynomial) -> (f64, f64) {
    let n = g.n();
    let coeffs = p.coeffs();
    if coeffs.is_empty() {
        return (0.0, 0.0);
    }
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    let mut v = vec![0.0; n];
    let mut next = vec![0.0; n];
    for u in 0..n {
        // Horner on the vector p(A) e_u.
        v.iter_mut().for_each(|x| *x = 0.0);
        v[u] = coeffs[coeffs.len() - 1];
        for &a in coeffs.iter().rev().skip(1) {
            for x in 0..n {
                next[x] = g.neighbors(x).iter().map(|&w| v[w]).sum();
            }
            next[u] += a;
            std::mem::swap(&mut v, &mut next);
        }
        lo = lo.min(v[u]);
        hi = hi.max(v[u]);
    }
    (lo, hi)
}
