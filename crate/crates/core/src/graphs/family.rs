//! Named graph families with fixed vertex orderings.
//!
//! Orderings:
//! - cycle, complete, circulant, moebius_ladder: integers `0..n`.
//! - complete_bipartite(a, b): the `a` side first.
//! - hypercube(d): vertex `v` is the bit vector of `v`.
//! - kneser(n, k), odd(l): `k`-subsets of `0..n` in colexicographic order,
//!   which is increasing order of their bitmasks.
//! - prism(n): outer cycle `0..n`, inner cycle `n..2n`, spoke `i ~ i+n`.
//! - petersen: kneser(5, 2).

use std::fmt;
use std::str::FromStr;

use super::Graph;
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FamilySpec {
    Cycle(usize),
    Complete(usize),
    CompleteBipartite(usize, usize),
    Hypercube(usize),
    /// `n` and the connection set, each element taken with both signs.
    Circulant(usize, Vec<usize>),
    Kneser(usize, usize),
    Odd(usize),
    Prism(usize),
    /// Circulant on `2n` vertices with jumps `1` and `n`.
    MoebiusLadder(usize),
    Petersen,
}

const MAX_VERTICES: usize = 1 << 16;

fn bad(msg: impl Into<String>) -> Error {
    Error::InvalidFamilyParameters(msg.into())
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub(crate) fn binomial(n: usize, k: usize) -> Option<usize> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut r: u128 = 1;
    for i in 0..k {
        r = r * (n - i) as u128 / (i + 1) as u128;
        if r > usize::MAX as u128 {
            return None;
        }
    }
    Some(r as usize)
}

pub(crate) fn binomial_f64(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64).round()
}

impl FamilySpec {
    /// Checks parameter ranges, including the size cap for generation.
    /// Connectivity failures of otherwise well-formed circulants are
    /// reported by [`FamilySpec::generate`].
    pub fn validate(&self) -> Result<()> {
        self.validate_params()?;
        if let FamilySpec::Kneser(..) | FamilySpec::Odd(_) = self {
            if self.vertex_count() > MAX_VERTICES {
                return Err(bad(format!("{self} has too many vertices to generate")));
            }
        }
        Ok(())
    }

    /// Parameter ranges only; closed-form spectra exist beyond the size cap.
    pub fn validate_params(&self) -> Result<()> {
        use FamilySpec::*;
        match self {
            Cycle(n) if *n < 3 => Err(bad("cycle needs n >= 3")),
            Complete(n) if *n < 1 => Err(bad("complete needs n >= 1")),
            CompleteBipartite(a, b) if *a < 1 || *b < 1 => {
                Err(bad("complete_bipartite needs both sides >= 1"))
            }
            Hypercube(d) if *d < 1 || *d > 16 => Err(bad("hypercube needs 1 <= d <= 16")),
            Circulant(n, s) => {
                if *n < 2 {
                    return Err(bad("circulant needs n >= 2"));
                }
                if s.is_empty() {
                    return Err(bad("circulant needs a nonempty connection set"));
                }
                if let Some(x) = s.iter().find(|&&x| x == 0 || x > n / 2) {
                    return Err(bad(format!("circulant jump {x} outside 1..={}", n / 2)));
                }
                Ok(())
            }
            Kneser(n, k) => {
                if *k < 1 {
                    return Err(bad("kneser needs k >= 1"));
                }
                if *n <= 2 * k {
                    return Err(bad(format!("kneser({n},{k}) needs n > 2k to be connected")));
                }
                if *n > 63 {
                    return Err(bad("kneser supports n <= 63"));
                }
                Ok(())
            }
            Odd(l) if *l < 2 => Err(bad("odd graph needs l >= 2")),
            Odd(l) => Kneser(2 * l - 1, l - 1).validate_params(),
            Prism(n) if *n < 3 => Err(bad("prism needs n >= 3")),
            MoebiusLadder(n) if *n < 2 => Err(bad("moebius_ladder needs n >= 2")),
            _ => Ok(()),
        }
    }

    pub fn vertex_count(&self) -> usize {
        use FamilySpec::*;
        match self {
            Cycle(n) | Complete(n) | Circulant(n, _) => *n,
            CompleteBipartite(a, b) => a + b,
            Hypercube(d) => 1 << d,
            Kneser(n, k) => binomial(*n, *k).unwrap_or(usize::MAX),
            Odd(l) => binomial(2 * l - 1, l - 1).unwrap_or(usize::MAX),
            Prism(n) | MoebiusLadder(n) => 2 * n,
            Petersen => 10,
        }
    }

    pub fn generate(&self) -> Result<Graph> {
        use FamilySpec::*;
        self.validate()?;
        let g = match self {
            Cycle(n) => circulant(*n, &[1])?,
            Complete(n) => {
                let mut e = Vec::new();
                for u in 0..*n {
                    for v in u + 1..*n {
                        e.push((u, v));
                    }
                }
                Graph::from_edges(*n, &e)?
            }
            CompleteBipartite(a, b) => {
                let mut e = Vec::new();
                for u in 0..*a {
                    for v in 0..*b {
                        e.push((u, a + v));
                    }
                }
                Graph::from_edges(a + b, &e)?
            }
            Hypercube(d) => {
                let n = 1usize << d;
                let mut e = Vec::new();
                for v in 0..n {
                    for b in 0..*d {
                        let w = v ^ (1 << b);
                        if v < w {
                            e.push((v, w));
                        }
                    }
                }
                Graph::from_edges(n, &e)?
            }
            Circulant(n, s) => circulant(*n, s)?,
            Kneser(n, k) => kneser(*n, *k)?,
            Odd(l) => kneser(2 * l - 1, l - 1)?,
            Prism(n) => {
                let mut e = Vec::new();
                for i in 0..*n {
                    e.push((i, (i + 1) % n));
                    e.push((n + i, n + (i + 1) % n));
                    e.push((i, n + i));
                }
                Graph::from_edges(2 * n, &e)?
            }
            MoebiusLadder(n) => circulant(2 * n, &[1, *n])?,
            Petersen => kneser(5, 2)?,
        };
        Ok(g.with_label(self.to_string()))
    }
}

fn circulant(n: usize, jumps: &[usize]) -> Result<Graph> {
    let g = jumps.iter().fold(n, |acc, &s| gcd(acc, s));
    if g != 1 {
        return Err(Error::DisconnectedGraph);
    }
    let mut e = Vec::new();
    for i in 0..n {
        for &s in jumps {
            e.push((i, (i + s) % n));
        }
    }
    Graph::from_edges(n, &e)
}

/// Next bitmask with the same popcount (Gosper's hack).
fn next_same_popcount(x: u64) -> u64 {
    let c = x & x.wrapping_neg();
    let r = x + c;
    (((r ^ x) >> 2) / c) | r
}

/// `k`-subsets of `0..n` as bitmasks in colexicographic order.
pub(crate) fn colex_subsets(n: usize, k: usize) -> Vec<u64> {
    let mut out = Vec::new();
    let mut x: u64 = (1u64 << k) - 1;
    let limit = 1u64 << n;
    while x < limit {
        out.push(x);
        x = next_same_popcount(x);
    }
    out
}

fn kneser(n: usize, k: usize) -> Result<Graph> {
    let verts = colex_subsets(n, k);
    let mut e = Vec::new();
    for (i, &a) in verts.iter().enumerate() {
        for (j, &b) in verts.iter().enumerate().skip(i + 1) {
            if a & b == 0 {
                e.push((i, j));
            }
        }
    }
    Graph::from_edges(verts.len(), &e)
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use FamilySpec::*;
        match self {
            Cycle(n) => write!(f, "cycle:{n}"),
            Complete(n) => write!(f, "complete:{n}"),
            CompleteBipartite(a, b) => write!(f, "complete_bipartite:{a},{b}"),
            Hypercube(d) => write!(f, "hypercube:{d}"),
            Circulant(n, s) => {
                let s: Vec<String> = s.iter().map(|x| x.to_string()).collect();
                write!(f, "circulant:{n};{}", s.join(","))
            }
            Kneser(n, k) => write!(f, "kneser:{n},{k}"),
            Odd(l) => write!(f, "odd:{l}"),
            Prism(n) => write!(f, "prism:{n}"),
            MoebiusLadder(n) => write!(f, "moebius_ladder:{n}"),
            Petersen => write!(f, "petersen"),
        }
    }
}

impl FromStr for FamilySpec {
    type Err = Error;

    /// Accepts `name:params` as printed by `Display`, e.g. `odd:5`,
    /// `kneser:6,2`, `circulant:10;1,2`, `petersen`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (name, params) = s.split_once(':').unwrap_or((s, ""));
        let ints = |p: &str| -> Result<Vec<usize>> {
            p.split([',', ';'])
                .filter(|t| !t.trim().is_empty())
                .map(|t| {
                    t.trim()
                        .parse::<usize>()
                        .map_err(|_| bad(format!("bad integer '{t}' in '{s}'")))
                })
                .collect()
        };
        let one = |p: &str| -> Result<usize> {
            match ints(p)?.as_slice() {
                [x] => Ok(*x),
                _ => Err(bad(format!("'{name}' takes one parameter"))),
            }
        };
        let two = |p: &str| -> Result<(usize, usize)> {
            match ints(p)?.as_slice() {
                [x, y] => Ok((*x, *y)),
                _ => Err(bad(format!("'{name}' takes two parameters"))),
            }
        };
        let spec = match name.to_ascii_lowercase().as_str() {
            "cycle" => FamilySpec::Cycle(one(params)?),
            "complete" => FamilySpec::Complete(one(params)?),
            "complete_bipartite" => {
                let (a, b) = two(params)?;
                FamilySpec::CompleteBipartite(a, b)
            }
            "hypercube" => FamilySpec::Hypercube(one(params)?),
            "circulant" => {
                let (n, rest) = params
                    .split_once(';')
                    .ok_or_else(|| bad("circulant syntax is circulant:n;s1,s2,..."))?;
                let n = n
                    .trim()
                    .parse()
                    .map_err(|_| bad(format!("bad circulant order '{n}'")))?;
                FamilySpec::Circulant(n, ints(rest)?)
            }
            "kneser" => {
                let (n, k) = two(params)?;
                FamilySpec::Kneser(n, k)
            }
            "odd" => FamilySpec::Odd(one(params)?),
            "prism" => FamilySpec::Prism(one(params)?),
            "moebius_ladder" | "mobius_ladder" => FamilySpec::MoebiusLadder(one(params)?),
            "petersen" if params.is_empty() => FamilySpec::Petersen,
            _ => return Err(bad(format!("unknown family '{s}'"))),
        };
        spec.validate_params()?;
        Ok(spec)
    }
}
