//! Exact `alpha_k`: maximum clique in the complement of `G^k`.

use std::time::{Duration, Instant};

use serde::Serialize;

use crate::bitset::BitSet;
use crate::graphs::{distance_matrix, DistanceMatrix, Graph};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ExactConfig {
    pub timeout: Duration,
    pub max_n: usize,
}

impl Default for ExactConfig {
    fn default() -> Self {
        ExactConfig {
            timeout: Duration::from_secs(120),
            max_n: 600,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExactResult {
    pub alpha_k: usize,
    /// Sorted vertex indices, pairwise at distance `> k`.
    pub witness: Vec<usize>,
    pub k: usize,
    #[serde(serialize_with = "secs")]
    pub elapsed: Duration,
}

fn secs<S: serde::Serializer>(d: &Duration, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_f64(d.as_secs_f64())
}

pub fn alpha_k_exact(g: &Graph, k: usize) -> Result<ExactResult> {
    alpha_k_exact_with(g, k, &ExactConfig::default())
}

pub fn alpha_k_exact_with(g: &Graph, k: usize, cfg: &ExactConfig) -> Result<ExactResult> {
    if k == 0 {
        return Err(Error::InvalidK {
            k,
            reason: "alpha_k needs k >= 1".into(),
        });
    }
    if g.n() > cfg.max_n {
        return Err(Error::SizeLimitExceeded {
            n: g.n(),
            limit: cfg.max_n,
        });
    }
    let start = Instant::now();
    let dist = distance_matrix(g);
    let witness = max_clique(&far_graph(&dist, k), start, cfg.timeout)?;
    Ok(ExactResult {
        alpha_k: witness.len(),
        witness,
        k,
        elapsed: start.elapsed(),
    })
}

/// Rows of the complement of `G^k`: `u ~ v` iff `dist(u, v) > k`.
fn far_graph(dist: &DistanceMatrix, k: usize) -> Vec<BitSet> {
    let n = dist.n();
    (0..n)
        .map(|u| {
            let mut row = BitSet::new(n);
            for v in 0..n {
                if dist.get(u, v) > k {
                    row.insert(v);
                }
            }
            row
        })
        .collect()
}

/// Degeneracy order (repeatedly remove a minimum-degree vertex, ties by
/// index), reversed so that the densest core comes first.
fn degeneracy_order(adj: &[BitSet]) -> Vec<usize> {
    let n = adj.len();
    let mut deg: Vec<usize> = adj.iter().map(BitSet::count).collect();
    let mut removed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n).filter(|&v| !removed[v]).min_by_key(|&v| (deg[v], v)).unwrap();
        removed[v] = true;
        order.push(v);
        for w in adj[v].iter() {
            if !removed[w] {
                deg[w] -= 1;
            }
        }
    }
    order.reverse();
    order
}

struct CliqueSearch {
    adj: Vec<BitSet>,
    best: Vec<usize>,
    cur: Vec<usize>,
    start: Instant,
    timeout: Duration,
    nodes: u64,
}

impl CliqueSearch {
    /// Greedy coloring of `p` in index order; returns vertices by
    /// nondecreasing color with their colors.
    fn color_sort(&self, p: &BitSet) -> (Vec<usize>, Vec<usize>) {
        let mut uncolored = p.clone();
        let mut verts = Vec::with_capacity(p.count());
        let mut colors = Vec::with_capacity(p.count());
        let mut color = 0;
        while !uncolored.is_empty() {
            color += 1;
            let mut avail = uncolored.clone();
            while let Some(v) = avail.first() {
                avail.remove(v);
                avail.difference_with(&self.adj[v]);
                uncolored.remove(v);
                verts.push(v);
                colors.push(color);
            }
        }
        (verts, colors)
    }

    fn expand(&mut self, mut p: BitSet) -> Result<()> {
        self.nodes += 1;
        if self.nodes % 1024 == 0 && self.start.elapsed() > self.timeout {
            return Err(Error::Timeout(self.timeout));
        }
        let (verts, colors) = self.color_sort(&p);
        for idx in (0..verts.len()).rev() {
            if self.cur.len() + colors[idx] <= self.best.len() {
                return Ok(());
            }
            let v = verts[idx];
            self.cur.push(v);
            let next = p.intersection(&self.adj[v]);
            if next.is_empty() {
                if self.cur.len() > self.best.len() {
                    self.best = self.cur.clone();
                }
            } else {
                self.expand(next)?;
            }
            self.cur.pop();
            p.remove(v);
        }
        Ok(())
    }
}

fn max_clique(adj: &[BitSet], start: Instant, timeout: Duration) -> Result<Vec<usize>> {
    let n = adj.len();
    let order = degeneracy_order(adj);
    // Relabel so bit position follows the search order.
    let mut pos = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let relabeled: Vec<BitSet> = order
        .iter()
        .map(|&v| {
            let mut row = BitSet::new(n);
            for w in adj[v].iter() {
                row.insert(pos[w]);
            }
            row
        })
        .collect();
    let mut search = CliqueSearch {
        adj: relabeled,
        best: vec![0],
        cur: Vec::new(),
        start,
        timeout,
        nodes: 0,
    };
    search.expand(BitSet::full(n))?;
    let mut out: Vec<usize> = search.best.iter().map(|&i| order[i]).collect();
    out.sort_unstable();
    Ok(out)
}

/// Independent re-computation by branching directly on `G^k` (no
/// complement, no coloring bound). Only for `n <= 60`.
pub fn alpha_k_direct(g: &Graph, k: usize) -> Result<usize> {
    let n = g.n();
    if n > 60 {
        return Err(Error::SizeLimitExceeded { n, limit: 60 });
    }
    let dist = distance_matrix(g);
    let close: Vec<u64> = (0..n)
        .map(|u| {
            (0..n)
                .filter(|&v| v != u && dist.get(u, v) <= k)
                .fold(0u64, |m, v| m | 1 << v)
        })
        .collect();
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut best = 0;
    mis(&close, all, 0, &mut best);
    Ok(best)
}

fn mis(close: &[u64], mut p: u64, mut taken: usize, best: &mut usize) {
    // Vertices of degree <= 1 inside p can always be taken.
    loop {
        let mut changed = false;
        let mut q = p;
        while q != 0 {
            let v = q.trailing_zeros() as usize;
            q &= q - 1;
            if p >> v & 1 == 1 && (close[v] & p).count_ones() <= 1 {
                taken += 1;
                p &= !(close[v] | 1 << v);
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    if p == 0 {
        *best = (*best).max(taken);
        return;
    }
    if taken + p.count_ones() as usize <= *best {
        return;
    }
    let mut q = p;
    let mut v = q.trailing_zeros() as usize;
    let mut vd = 0;
    while q != 0 {
        let w = q.trailing_zeros() as usize;
        q &= q - 1;
        let d = (close[w] & p).count_ones();
        if d > vd {
            vd = d;
            v = w;
        }
    }
    mis(close, p & !(close[v] | 1 << v), taken + 1, best);
    mis(close, p & !(1 << v), taken, best);
}

/// True iff the vertices are pairwise at distance `> k`.
pub fn verify_independent(g: &Graph, k: usize, set: &[usize]) -> bool {
    if set.iter().any(|&v| v >= g.n()) {
        return false;
    }
    let dist = distance_matrix(g);
    set.iter()
        .enumerate()
        .all(|(i, &u)| set[i + 1..].iter().all(|&v| u != v && dist.get(u, v) > k))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::FamilySpec;

    #[test]
    fn petersen() {
        let g = FamilySpec::Petersen.generate().unwrap();
        let r = alpha_k_exact(&g, 1).unwrap();
        assert_eq!(r.alpha_k, 4);
        assert!(verify_independent(&g, 1, &r.witness));
        assert_eq!(alpha_k_direct(&g, 1).unwrap(), 4);
        assert_eq!(alpha_k_exact(&g, 2).unwrap().alpha_k, 1);
    }

    #[test]
    fn verify() {
        let g = FamilySpec::Cycle(6).generate().unwrap();
        assert!(verify_independent(&g, 3, &[2]));
        assert!(!verify_independent(&g, 1, &[0, 1]));
        assert!(verify_independent(&g, 1, &[0, 2, 4]));
        assert!(!verify_independent(&g, 2, &[0, 2]));
    }

    #[test]
    fn size_limit() {
        let g = FamilySpec::Cycle(10).generate().unwrap();
        let cfg = ExactConfig {
            max_n: 5,
            ..Default::default()
        };
        assert_eq!(
            alpha_k_exact_with(&g, 1, &cfg),
            Err(Error::SizeLimitExceeded { n: 10, limit: 5 })
        );
    }

    #[test]
    fn cycles_match_formula() {
        for n in 4..14 {
            let g = FamilySpec::Cycle(n).generate().unwrap();
            for k in 1..n / 2 {
                let e = alpha_k_exact(&g, k).unwrap().alpha_k;
                assert_eq!(e, n / (k + 1), "C{n} k={k}");
                assert_eq!(alpha_k_direct(&g, k).unwrap(), e);
            }
        }
    }
}
