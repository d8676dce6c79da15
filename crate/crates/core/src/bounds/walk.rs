//! Closed-form bounds for partially walk-regular graphs: small `k`,
//! `k = d - 1`, and the predistance-polynomial bounds.

use super::{floor_bound, heaviside_count, BoundReport, Method};
use crate::graphs::{distance_matrix, Graph};
use crate::polys::{mp2_index, mp3_diagnostic, mp4_index, MeshPolynomial, PredistanceFamily};
use crate::spectra::{classify_regularity, PiProducts, Spectrum};
use crate::{Error, Result};

fn product_poly(s: &Spectrum, roots: &[f64]) -> MeshPolynomial {
    let t0 = s.theta()[0];
    let denom: f64 = roots.iter().map(|r| t0 - r).product();
    MeshPolynomial::from_fn(s.theta(), |x| roots.iter().map(|r| x - r).product::<f64>() / denom).expect("mesh")
}

/// `n (theta_0 + theta_i theta_{i+1}) / ((theta_0 - theta_i)(theta_0 - theta_{i+1}))`
/// with `theta_i` the smallest eigenvalue above `-1`.
pub fn alpha2_bound(s: &Spectrum) -> Result<BoundReport> {
    let i = mp2_index(s).ok_or(Error::NoValidTheta)?;
    let t = s.theta();
    let (t0, a, b) = (t[0], t[i], t[i + 1]);
    let v = s.n() as f64 * (t0 + a * b) / ((t0 - a) * (t0 - b));
    Ok(BoundReport::new(Method::Mp2, 2, v)
        .with_certificate(product_poly(s, &[a, b]))
        .with_detail(format!("i = {i}")))
}

/// The cubic bound with zeros `theta_i, theta_{i+1}, theta_d`; `delta` is the
/// number of closed 3-walks at a vertex.
pub fn alpha3_bound(s: &Spectrum, delta: f64) -> Result<BoundReport> {
    let d = s.d();
    if d < 3 {
        return Err(Error::NoValidTheta);
    }
    let i = mp4_index(s, delta).ok_or(Error::NoValidTheta)?;
    let t = s.theta();
    let (t0, a, b, c) = (t[0], t[i], t[i + 1], t[d]);
    let num = delta - a * b * c - t0 * (a + b + c);
    let v = s.n() as f64 * num / ((t0 - a) * (t0 - b) * (t0 - c));
    let same = mp3_diagnostic(s, delta).map(|m| m.same_index).unwrap_or(false);
    Ok(BoundReport::new(Method::Mp3, 3, v)
        .with_certificate(product_poly(s, &[a, b, c]))
        .with_detail(format!("i = {i}, smallest-above-minus-one rule agrees: {same}")))
}

fn equal_rel(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-9 * a.abs().max(b.abs()).max(1.0)
}

/// Every `k = d - 1` bound for a walk-regular graph with diameter `d`:
/// `m_{2i}` (when `m_{2i} != pi_0 / pi_{2i}`), `1 + m_{2i-1}`,
/// `1 + m_{2i-1} pi_{2i-1} / pi_0`, the parity summary, and the best
/// single-point minor polynomial.
pub fn dminus1_bounds(s: &Spectrum, pi: &PiProducts) -> Vec<BoundReport> {
    let d = s.d();
    let k = d.saturating_sub(1);
    let m = |i: usize| s.mults()[i] as f64;
    let mut out = Vec::new();
    for j in (2..=d).step_by(2) {
        let r = if equal_rel(m(j), pi.ratio(j)) {
            BoundReport::inapplicable(Method::DMinus1InertiaEven, k, format!("m_{j} = pi_0 / pi_{j}"))
        } else {
            BoundReport::new(Method::DMinus1InertiaEven, k, m(j))
        };
        out.push(r.with_detail(format!("i = {j}")));
    }
    for j in (1..=d).step_by(2) {
        out.push(BoundReport::new(Method::DMinus1InertiaOdd, k, 1.0 + m(j)).with_detail(format!("i = {j}")));
    }
    let mut best: Option<(usize, f64)> = None;
    for j in (1..=d).step_by(2) {
        let v = 1.0 + m(j) / pi.ratio(j);
        out.push(BoundReport::new(Method::DMinus1RatioOdd, k, v).with_detail(format!("i = {j}")));
        // Ties go to the larger index.
        if best.is_none_or(|(_, b)| v <= b * (1.0 + 1e-12)) {
            best = Some((j, v));
        }
    }
    let corollary = if d % 2 == 0 {
        if equal_rel(m(d), pi.ratio(d)) {
            BoundReport::inapplicable(Method::DMinus1Corollary, k, format!("m_{d} = pi_0 / pi_{d}"))
        } else {
            BoundReport::new(Method::DMinus1Corollary, k, m(d))
        }
    } else {
        BoundReport::new(Method::DMinus1Corollary, k, 1.0 + m(d) * (1.0 / pi.ratio(d)).min(1.0))
    };
    out.push(corollary.with_detail(format!("d = {d}")));
    if let Some((j, v)) = best {
        let mut values = vec![0.0; d + 1];
        values[0] = 1.0;
        values[j] = 1.0 / pi.ratio(j);
        let f = MeshPolynomial::new(s.theta().to_vec(), values).expect("mesh");
        out.push(BoundReport::new(Method::Mp5, k, v).with_certificate(f).with_detail(format!("i = {j}")));
    }
    out
}

/// [`dminus1_bounds`] after checking walk-regularity; a graph with diameter
/// below `d` gets the single report `alpha_{d-1} = 1`.
pub fn dminus1_bounds_for(g: &Graph, s: &Spectrum, pi: &PiProducts) -> Result<Vec<BoundReport>> {
    let reg = classify_regularity(g, s);
    if !reg.is_walk_regular {
        return Err(Error::NotWalkRegular);
    }
    if !reg.diameter_equals_d {
        return Ok(vec![BoundReport::new(Method::Diameter, s.d().saturating_sub(1), 1.0)]);
    }
    Ok(dminus1_bounds(s, pi))
}

/// Inertia and ratio bounds from `q'_k = p_1 + ... + p_k`; assumes the graph
/// is `k`-partially walk-regular.
pub fn qk_bounds_spectral(s: &Spectrum, pd: &PredistanceFamily, k: usize) -> (BoundReport, BoundReport) {
    let q = pd.q_prime(k);
    let neg = q.map(|v| -v);
    let inertia = BoundReport::new(
        Method::QkInertia,
        k,
        heaviside_count(s, q.values()).min(heaviside_count(s, neg.values())) as f64,
    )
    .with_certificate(q.clone());
    let lam = q.lambda();
    let ratio = if lam < 0.0 {
        BoundReport::new(Method::QkRatio, k, s.n() as f64 / (1.0 - q.value(0) / lam)).with_certificate(q)
    } else {
        BoundReport::inapplicable(Method::QkRatio, k, "min q'_k(theta_i) over i >= 1 is not negative")
    };
    (inertia, ratio)
}

pub fn qk_bounds(g: &Graph, s: &Spectrum, pd: &PredistanceFamily, k: usize) -> Result<(BoundReport, BoundReport)> {
    let reg = classify_regularity(g, s);
    if !reg.is_k_pwr(k) {
        return Err(Error::NotPWR(k));
    }
    let (inertia, ratio) = qk_bounds_spectral(s, pd, k);
    if !reg.is_regular() {
        return Ok((inertia, BoundReport::inapplicable(Method::QkRatio, k, Error::NotRegular.to_string())));
    }
    Ok((inertia, ratio))
}

/// `n (1 + L) / (n + L - p_d(theta_0))` with `L = max_{i >= 1} p_d(theta_i)`;
/// assumes walk-regularity.
pub fn pd_ratio_bound(s: &Spectrum, pd: &PredistanceFamily) -> BoundReport {
    let d = s.d();
    if d < 2 {
        return BoundReport::inapplicable(Method::PdRatio, d.saturating_sub(1), "needs d >= 2");
    }
    let p = pd.mesh_poly(d);
    let lam = p.values()[1..].iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let n = s.n() as f64;
    let denom = n + lam - p.value(0);
    if denom <= 0.0 {
        return BoundReport::inapplicable(Method::PdRatio, d - 1, "nonpositive denominator");
    }
    BoundReport::new(Method::PdRatio, d - 1, n * (1.0 + lam) / denom)
        .with_certificate(p.clone())
        .with_detail(format!("max p_d(theta_i) = {lam}"))
}

pub fn pd_ratio_bound_for(g: &Graph, s: &Spectrum, pd: &PredistanceFamily) -> Result<BoundReport> {
    if !classify_regularity(g, s).is_walk_regular {
        return Err(Error::NotWalkRegular);
    }
    if distance_matrix(g).diameter() < s.d() {
        return Ok(BoundReport::new(Method::Diameter, s.d() - 1, 1.0));
    }
    Ok(pd_ratio_bound(s, pd))
}

/// Smallest applicable floor among `reports`.
pub fn min_floor(reports: &[BoundReport]) -> Option<i64> {
    reports.iter().filter(|r| r.applicable).filter_map(|r| r.value.map(floor_bound)).min()
}
