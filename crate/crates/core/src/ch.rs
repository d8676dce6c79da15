//! Cvetkovic-Hoffman classification, geometry of `d`-spreads, spectral
//! excess and antipodality.

use serde::Serialize;

use crate::bounds::floor_bound;
use crate::exact::{alpha_k_exact_with, ExactConfig};
use crate::graphs::{distance_matrix, Graph};
use crate::optimize::{minor_polynomial, sign_polynomial, SignConfig};
use crate::polys::MeshPolynomial;
use crate::spectra::{classify_with_distances, spectrum_default, PiProducts, Spectrum};
use crate::{Error, Result};

#[derive(Clone, Debug, Default, PartialEq)]
pub struct ChOptions {
    pub sign: SignConfig,
    /// Run the exact oracle to decide tightness.
    pub exact: Option<ExactConfig>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CHVerdict {
    pub k: usize,
    /// `sum m_i h(s(theta_i))` for the optimal sign polynomial.
    pub inertia_value: i64,
    /// Floor of `sum m_i f(theta_i)` for the optimal minor polynomial.
    pub ratio_value: i64,
    pub ratio_raw: f64,
    pub bounds_equal: bool,
    pub linearly_related: bool,
    pub is_ch: bool,
    pub exact: Option<usize>,
    pub is_tight_ch: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact_error: Option<String>,
    pub sign_values: Vec<f64>,
    pub minor_values: Vec<f64>,
}

pub fn ch_classify(g: &Graph, k: usize, opts: &ChOptions) -> Result<CHVerdict> {
    let s = spectrum_default(g)?;
    ch_classify_with(g, &s, k, opts)
}

pub fn ch_classify_with(g: &Graph, s: &Spectrum, k: usize, opts: &ChOptions) -> Result<CHVerdict> {
    let reg = classify_with_distances(g, s, &distance_matrix(g));
    if k == 0 || !reg.is_k_pwr(k) {
        return Err(Error::NotPWR(k));
    }
    let sign = sign_polynomial(s, k, &opts.sign)?;
    let f = minor_polynomial(s, k)?;
    let ratio_raw = s.weighted_sum(f.values());
    let inertia_value = sign.objective as i64;
    let ratio_value = floor_bound(ratio_raw);
    let bounds_equal = inertia_value == ratio_value;
    let linearly_related = linearly_related(s, &sign.sign_poly, &f);
    let is_ch = bounds_equal && linearly_related;
    let (exact, exact_error) = match &opts.exact {
        Some(cfg) => match alpha_k_exact_with(g, k, cfg) {
            Ok(r) => (Some(r.alpha_k), None),
            Err(e) => (None, Some(format!("exact unavailable: {e}"))),
        },
        None => (None, None),
    };
    let is_tight_ch = exact.map(|a| is_ch && ratio_value == a as i64);
    Ok(CHVerdict {
        k,
        inertia_value,
        ratio_value,
        ratio_raw,
        bounds_equal,
        linearly_related,
        is_ch,
        exact,
        is_tight_ch,
        exact_error,
        sign_values: sign.sign_poly.values().to_vec(),
        minor_values: f.values().to_vec(),
    })
}

/// `s = a f + b` on the mesh for some `a != 0` (least squares, residual
/// below `1e-6` relative), or one of `s`, `-s` normalized into minor form
/// is itself an optimal minor polynomial.
pub fn linearly_related(s: &Spectrum, sp: &MeshPolynomial, f: &MeshPolynomial) -> bool {
    affine_fit_residual(f.values(), sp.values()).is_some_and(|r| r < 1e-6)
        || [1.0, -1.0].iter().any(|&sgn| {
            let t = sp.map(|v| sgn * v);
            let lam = t.lambda();
            let span = t.value(0) - lam;
            if span <= 1e-9 * t.max_abs() {
                return false;
            }
            let induced = t.map(|v| (v - lam) / span);
            let tr = s.weighted_sum(induced.values());
            let opt = s.weighted_sum(f.values());
            (tr - opt).abs() <= 1e-6 * opt.abs().max(1.0)
        })
}

/// Relative residual of the best fit `y ~ a x + b`, or `None` when the fit
/// is degenerate (`x` constant or `a = 0`).
fn affine_fit_residual(x: &[f64], y: &[f64]) -> Option<f64> {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxx: f64 = x.iter().map(|v| (v - mx).powi(2)).sum();
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    if sxx <= 1e-24 {
        return None;
    }
    let a = sxy / sxx;
    let scale = y.iter().fold(0.0f64, |m, v| m.max(v.abs())).max(f64::MIN_POSITIVE);
    if a.abs() * x.iter().fold(0.0f64, |m, v| m.max((v - mx).abs())) <= 1e-9 * scale {
        return None;
    }
    let b = my - a * mx;
    let res = x.iter().zip(y).map(|(u, v)| (a * u + b - v).powi(2)).sum::<f64>().sqrt();
    Some(res / scale)
}

/// Barycenter distance `s`, circumradius `r` and edge length `l` of the
/// projected simplex of an `r`-set pairwise at distance `d`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SimplexGeometry {
    pub s: f64,
    pub r: f64,
    pub l: f64,
}

fn checked_sqrt(x: f64) -> Result<f64> {
    if x < -1e-9 {
        return Err(Error::NegativeRadicand(x));
    }
    Ok(x.max(0.0).sqrt())
}

pub fn simplex_geometry(s: &Spectrum, pi: &PiProducts, i: usize, r: usize) -> Result<SimplexGeometry> {
    if i > s.d() || r == 0 {
        return Err(Error::InvalidK {
            k: i,
            reason: format!("need 0 <= i <= d and r >= 1 (r = {r})"),
        });
    }
    let n = s.n() as f64;
    let m = s.mults()[i] as f64;
    let rf = r as f64;
    let sgn = if i % 2 == 0 { 1.0 } else { -1.0 };
    let q = pi.ratio(i);
    let s2 = (m + sgn * (rf - 1.0) * q) / (rf * n);
    let geometry = if r == 1 {
        SimplexGeometry {
            s: checked_sqrt(s2)?,
            r: 0.0,
            l: 0.0,
        }
    } else {
        let x = m - sgn * q;
        SimplexGeometry {
            s: checked_sqrt(s2)?,
            r: checked_sqrt((rf - 1.0) * x / (rf * n))?,
            l: checked_sqrt(2.0 * x / n)?,
        }
    };
    Ok(geometry)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MultiplicityCheck {
    pub index: usize,
    pub required: f64,
    pub actual: usize,
    pub holds: bool,
    pub equality: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MultiplicityReport {
    pub r: usize,
    pub checks: Vec<MultiplicityCheck>,
    pub all_hold: bool,
    /// Largest `r` allowed by every odd-index constraint.
    pub max_r: usize,
}

/// `m_{2i} >= pi_0 / pi_{2i}` and `m_{2i-1} >= (r - 1) pi_0 / pi_{2i-1}`.
pub fn multiplicity_feasibility(s: &Spectrum, pi: &PiProducts, r: usize) -> MultiplicityReport {
    let rf = r as f64;
    let checks: Vec<MultiplicityCheck> = (1..=s.d())
        .map(|i| {
            let required = if i % 2 == 0 { pi.ratio(i) } else { (rf - 1.0) * pi.ratio(i) };
            let actual = s.mults()[i];
            let slack = 1e-9 * required.abs().max(1.0);
            MultiplicityCheck {
                index: i,
                required,
                actual,
                holds: actual as f64 >= required - slack,
                equality: (actual as f64 - required).abs() <= slack,
            }
        })
        .collect();
    let max_r = (1..=s.d())
        .step_by(2)
        .map(|i| floor_bound(1.0 + s.mults()[i] as f64 / pi.ratio(i)).max(1) as usize)
        .min()
        .unwrap_or(usize::MAX);
    MultiplicityReport {
        r,
        all_hold: checks.iter().all(|c| c.holds),
        checks,
        max_r,
    }
}

/// `n (sum_i pi_0^2 / (m_i pi_i^2))^{-1}`, which equals `p_d(theta_0)`.
pub fn spectral_excess(s: &Spectrum, pi: &PiProducts) -> f64 {
    let sum: f64 = (0..=s.d()).map(|i| pi.ratio(i).powi(2) / s.mults()[i] as f64).sum();
    s.n() as f64 / sum
}

/// Average number of vertices at distance `d` from a vertex.
pub fn mean_excess(g: &Graph, d: usize) -> f64 {
    let dist = distance_matrix(g);
    let total: usize = (0..g.n()).map(|u| dist.sphere_size(u, d)).sum();
    total as f64 / g.n() as f64
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AntipodalVerdict {
    /// `1 + mean excess`.
    pub r: f64,
    pub multiplicity_equalities: bool,
    pub order_identity: bool,
    pub distance_regular: bool,
    /// Distance-`d` relation is an equivalence with classes of size `r`.
    pub classes: bool,
    pub antipodal: bool,
    pub r_int: Option<usize>,
}

pub fn antipodal_check(g: &Graph, s: &Spectrum, pi: &PiProducts) -> Result<AntipodalVerdict> {
    let d = s.d();
    let dist = distance_matrix(g);
    if dist.diameter() < d {
        return Err(Error::NotApplicable(format!("diameter {} < d = {d}", dist.diameter())));
    }
    let reg = classify_with_distances(g, s, &dist);
    let n = g.n();
    let excess = (0..n).map(|u| dist.sphere_size(u, d)).sum::<usize>() as f64 / n as f64;
    let r = 1.0 + excess;
    let rounded = r.round();
    let r_is_int = (r - rounded).abs() < 1e-9 && rounded >= 2.0;
    let mf = multiplicity_feasibility(s, pi, rounded as usize);
    let multiplicity_equalities = r_is_int && mf.checks.iter().all(|c| c.equality);
    let order = r / 2.0 * (0..=d).map(|i| pi.ratio(i)).sum::<f64>();
    let order_identity = (order - n as f64).abs() <= 1e-8 * n as f64;
    let classes = r_is_int
        && (0..n).all(|u| {
            let far: Vec<usize> = (0..n).filter(|&v| dist.get(u, v) == d).collect();
            far.len() + 1 == rounded as usize
                && far.iter().all(|&v| far.iter().all(|&w| v == w || dist.get(v, w) == d))
        });
    let distance_regular = reg.is_distance_regular();
    let antipodal = multiplicity_equalities && order_identity && distance_regular && classes;
    Ok(AntipodalVerdict {
        r,
        multiplicity_equalities,
        order_identity,
        distance_regular,
        classes,
        antipodal,
        r_int: antipodal.then_some(rounded as usize),
    })
}

/// `(k, lambda, mu)` when `g` is strongly regular (parameters constant over
/// adjacent and non-adjacent pairs; `mu` is `None` for complete graphs).
pub fn srg_parameters(g: &Graph) -> Option<(usize, usize, Option<usize>)> {
    let k = g.regular_degree()?;
    let n = g.n();
    let common = |u: usize, v: usize| g.neighbors(u).iter().filter(|&&w| g.has_edge(v, w)).count();
    let mut lambda = None;
    let mut mu = None;
    for u in 0..n {
        for v in u + 1..n {
            let c = common(u, v);
            let slot = if g.has_edge(u, v) { &mut lambda } else { &mut mu };
            match *slot {
                None => *slot = Some(c),
                Some(x) if x != c => return None,
                _ => {}
            }
        }
    }
    Some((k, lambda.unwrap_or(0), mu))
}

/// For a strongly regular `g` and a maximum independent set `witness`:
/// is the graph induced on the other vertices strongly regular?
pub fn srg_tightness_check(g: &Graph, witness: &[usize]) -> Result<bool> {
    if srg_parameters(g).is_none() || g.edge_count() * 2 == g.n() * (g.n() - 1) {
        return Err(Error::NotSRG);
    }
    if let Some(&v) = witness.iter().find(|&&v| v >= g.n()) {
        return Err(Error::InvalidVertex(v));
    }
    let rest: Vec<usize> = (0..g.n()).filter(|v| !witness.contains(v)).collect();
    if rest.is_empty() {
        return Ok(true);
    }
    let adj = |a: usize, b: usize| g.has_edge(rest[a], rest[b]);
    let m = rest.len();
    let deg: Vec<usize> = (0..m).map(|a| (0..m).filter(|&b| adj(a, b)).count()).collect();
    if deg.iter().any(|&x| x != deg[0]) {
        return Ok(false);
    }
    let mut lambda = None;
    let mut mu = None;
    for a in 0..m {
        for b in a + 1..m {
            let c = (0..m).filter(|&w| adj(a, w) && adj(b, w)).count();
            let slot = if adj(a, b) { &mut lambda } else { &mut mu };
            match *slot {
                None => *slot = Some(c),
                Some(x) if x != c => return Ok(false),
                _ => {}
            }
        }
    }
    Ok(true)
}

/// One JSON line per graph: its label and either a verdict or an error.
pub fn scan_jsonl<'a>(graphs: impl IntoIterator<Item = &'a Graph>, k: usize, opts: &ChOptions) -> String {
    let mut out = String::new();
    for g in graphs {
        let line = match ch_classify(g, k, opts) {
            Ok(v) => serde_json::json!({ "graph": g.label(), "verdict": v }),
            Err(e) => serde_json::json!({ "graph": g.label(), "error": e.to_string() }),
        };
        out.push_str(&line.to_string());
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::alpha_k_exact;
    use crate::graphs::FamilySpec;
    use crate::spectra::{exact_family_spectrum, pi_products};

    fn spec(f: &FamilySpec) -> Spectrum {
        exact_family_spectrum(f).unwrap()
    }

    #[test]
    fn kneser_is_tight_1ch() {
        let f = FamilySpec::Kneser(6, 2);
        let g = f.generate().unwrap();
        let opts = ChOptions {
            exact: Some(ExactConfig::default()),
            ..Default::default()
        };
        let v = ch_classify_with(&g, &spec(&f), 1, &opts).unwrap();
        assert_eq!((v.inertia_value, v.ratio_value), (5, 5));
        assert!(v.is_ch && v.linearly_related);
        assert_eq!(v.is_tight_ch, Some(true));
    }

    #[test]
    fn not_pwr_rejected() {
        let g = crate::graphs::parse_graph6("KhCKM?_EGK?L").unwrap();
        assert_eq!(ch_classify(&g, 3, &ChOptions::default()), Err(Error::NotPWR(3)));
    }

    #[test]
    fn geometry_r1_and_cube() {
        let s = spec(&FamilySpec::Hypercube(3));
        let pi = pi_products(&s);
        let g = simplex_geometry(&s, &pi, 3, 2).unwrap();
        assert!(g.s.abs() < 1e-12);
        assert!(g.l > 0.0);
        let one = simplex_geometry(&s, &pi, 1, 1).unwrap();
        assert_eq!(one.r, 0.0);
        assert!((one.s - (3.0f64 / 8.0).sqrt()).abs() < 1e-12);
        assert!(matches!(simplex_geometry(&s, &pi, 3, 3), Err(Error::NegativeRadicand(_))));
    }

    #[test]
    fn multiplicities() {
        let s = spec(&FamilySpec::Hypercube(3));
        let rep = multiplicity_feasibility(&s, &pi_products(&s), 2);
        assert!(rep.all_hold && rep.checks.iter().all(|c| c.equality));
        assert_eq!(rep.max_r, 2);
        let p = spec(&FamilySpec::Petersen);
        let rep = multiplicity_feasibility(&p, &pi_products(&p), 2);
        assert!(rep.all_hold && rep.checks.iter().all(|c| !c.equality));
        let rep = multiplicity_feasibility(&p, &pi_products(&p), 1);
        assert!(rep.checks[0].required == 0.0);
    }

    #[test]
    fn excess() {
        let f = FamilySpec::Petersen;
        let s = spec(&f);
        assert!((spectral_excess(&s, &pi_products(&s)) - 6.0).abs() < 1e-12);
        assert_eq!(mean_excess(&f.generate().unwrap(), 2), 6.0);
        let k5 = spec(&FamilySpec::Complete(5));
        assert!((spectral_excess(&k5, &pi_products(&k5)) - 4.0).abs() < 1e-12);
        let f = FamilySpec::Prism(5);
        let s = spec(&f);
        let g = f.generate().unwrap();
        assert!((spectral_excess(&s, &pi_products(&s)) - mean_excess(&g, s.d())).abs() > 1e-6);
    }

    #[test]
    fn antipodal() {
        for f in [FamilySpec::Hypercube(3), FamilySpec::Cycle(6)] {
            let s = spec(&f);
            let v = antipodal_check(&f.generate().unwrap(), &s, &pi_products(&s)).unwrap();
            assert!(v.antipodal, "{f}");
            assert_eq!(v.r_int, Some(2));
        }
        let f = FamilySpec::Petersen;
        let s = spec(&f);
        let v = antipodal_check(&f.generate().unwrap(), &s, &pi_products(&s)).unwrap();
        assert!(!v.antipodal);
        assert_eq!(v.r, 7.0);
    }

    #[test]
    fn srg_tightness() {
        let g = FamilySpec::Petersen.generate().unwrap();
        let w = alpha_k_exact(&g, 1).unwrap().witness;
        assert!(srg_tightness_check(&g, &w).unwrap());
        let c5 = FamilySpec::Cycle(5).generate().unwrap();
        assert!(!srg_tightness_check(&c5, &[0, 2]).unwrap());
        let k333 = crate::graphs::parse_graph6(&crate::graphs::to_graph6(&complete_tripartite())).unwrap();
        assert!(srg_tightness_check(&k333, &[0, 1, 2]).unwrap());
        let prism = FamilySpec::Prism(5).generate().unwrap();
        assert_eq!(srg_tightness_check(&prism, &[0]), Err(Error::NotSRG));
    }

    fn complete_tripartite() -> Graph {
        let mut e = Vec::new();
        for u in 0..9 {
            for v in u + 1..9 {
                if u / 3 != v / 3 {
                    e.push((u, v));
                }
            }
        }
        Graph::from_edges(9, &e).unwrap()
    }
}
