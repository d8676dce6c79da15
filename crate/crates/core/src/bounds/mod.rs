//! Upper bounds on `alpha_k`, one function per bound, plus the aggregator
//! [`best_bounds`].
//!
//! Functions that take only a [`Spectrum`] assume the regularity their bound
//! needs; the `*_for` variants take the graph and check it.

mod aggregate;
mod walk;

use std::fmt;

use serde::{Deserialize, Serialize};

pub use aggregate::{best_bounds, best_bounds_with, BoundOptions, BoundSummary};
pub use walk::{
    alpha2_bound, alpha3_bound, dminus1_bounds, dminus1_bounds_for, min_floor, pd_ratio_bound, pd_ratio_bound_for, qk_bounds,
    qk_bounds_spectral,
};

use crate::graphs::Graph;
use crate::polys::{CoeffPolynomial, MeshPolynomial};
use crate::spectra::{diagonal_stats, Spectrum};
use crate::{tol, Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Cvetkovic,
    Hoffman,
    InertiaGeneral,
    RatioGeneral,
    PwrInertia,
    PwrRatio,
    SignToMinorRatio,
    MinorToSignInertia,
    Mp2,
    Mp3,
    Mp5,
    #[serde(rename = "dminus1_inertia_even")]
    DMinus1InertiaEven,
    #[serde(rename = "dminus1_inertia_odd")]
    DMinus1InertiaOdd,
    #[serde(rename = "dminus1_ratio_odd")]
    DMinus1RatioOdd,
    #[serde(rename = "dminus1_corollary")]
    DMinus1Corollary,
    QkInertia,
    QkRatio,
    PdRatio,
    Diameter,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Cvetkovic => "cvetkovic",
            Method::Hoffman => "hoffman",
            Method::InertiaGeneral => "inertia_general",
            Method::RatioGeneral => "ratio_general",
            Method::PwrInertia => "pwr_inertia",
            Method::PwrRatio => "pwr_ratio",
            Method::SignToMinorRatio => "sign_to_minor_ratio",
            Method::MinorToSignInertia => "minor_to_sign_inertia",
            Method::Mp2 => "mp2",
            Method::Mp3 => "mp3",
            Method::Mp5 => "mp5",
            Method::DMinus1InertiaEven => "dminus1_inertia_even",
            Method::DMinus1InertiaOdd => "dminus1_inertia_odd",
            Method::DMinus1RatioOdd => "dminus1_ratio_odd",
            Method::DMinus1Corollary => "dminus1_corollary",
            Method::QkInertia => "qk_inertia",
            Method::QkRatio => "qk_ratio",
            Method::PdRatio => "pd_ratio",
            Method::Diameter => "diameter",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundReport {
    pub method: Method,
    pub k: usize,
    pub value: Option<f64>,
    pub floor_value: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<MeshPolynomial>,
    pub applicable: bool,
    pub reason: Option<String>,
    /// Which eigenvalue index or sign a bound used, when it has a choice.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    /// Set by the aggregator on every report attaining the minimum floor.
    pub best: bool,
}

/// `floor(v)` with a small slack so `4 - 1e-12` floors to 4.
pub fn floor_bound(v: f64) -> i64 {
    (v + tol::FLOOR).floor() as i64
}

impl BoundReport {
    pub fn new(method: Method, k: usize, value: f64) -> BoundReport {
        BoundReport {
            method,
            k,
            value: Some(value),
            floor_value: Some(floor_bound(value)),
            certificate: None,
            applicable: true,
            reason: None,
            detail: None,
            best: false,
        }
    }

    pub fn inapplicable(method: Method, k: usize, reason: impl Into<String>) -> BoundReport {
        BoundReport {
            method,
            k,
            value: None,
            floor_value: None,
            certificate: None,
            applicable: false,
            reason: Some(reason.into()),
            detail: None,
            best: false,
        }
    }

    pub fn with_certificate(mut self, p: MeshPolynomial) -> BoundReport {
        self.certificate = Some(p);
        self
    }

    pub fn with_detail(mut self, d: impl Into<String>) -> BoundReport {
        self.detail = Some(d.into());
        self
    }

    /// Turns an error into an inapplicable report.
    pub fn from_result(method: Method, k: usize, r: Result<BoundReport>) -> BoundReport {
        r.unwrap_or_else(|e| BoundReport::inapplicable(method, k, e.to_string()))
    }
}

fn scale_of(values: &[f64]) -> f64 {
    values.iter().fold(0.0f64, |a, v| a.max(v.abs())).max(f64::MIN_POSITIVE)
}

/// `sum m_i h(v_i)` with `h(0) = 1` and the crate sign tolerance.
pub fn heaviside_count(s: &Spectrum, values: &[f64]) -> usize {
    let tol = tol::SIGN * scale_of(values);
    values.iter().zip(s.mults()).filter(|(v, _)| **v >= -tol).map(|(_, m)| m).sum()
}

/// `min(#{lambda >= 0}, #{lambda <= 0})`, zeros counted on both sides.
pub fn cvetkovic_bound(raw: &[f64]) -> BoundReport {
    let tol = tol::SIGN * scale_of(raw).max(1.0);
    let nonneg = raw.iter().filter(|&&x| x >= -tol).count();
    let nonpos = raw.iter().filter(|&&x| x <= tol).count();
    BoundReport::new(Method::Cvetkovic, 1, nonneg.min(nonpos) as f64).with_detail(format!("n+0 = {nonneg}, n-0 = {nonpos}"))
}

/// `n / (1 - lambda_1 / lambda_n)`; the caller guarantees regularity.
pub fn hoffman_bound(n: usize, lambda_1: f64, lambda_n: f64) -> BoundReport {
    if lambda_n >= 0.0 {
        return BoundReport::inapplicable(Method::Hoffman, 1, "smallest eigenvalue is not negative");
    }
    BoundReport::new(Method::Hoffman, 1, n as f64 / (1.0 - lambda_1 / lambda_n))
}

pub fn hoffman_bound_for(g: &Graph, s: &Spectrum) -> Result<BoundReport> {
    if g.regular_degree().is_none() {
        return Err(Error::NotRegular);
    }
    let t = s.theta();
    Ok(hoffman_bound(s.n(), t[0], t[s.d()]))
}

/// Inertia-type bound for `p` given on the mesh, with the extreme diagonal
/// entries `w <= W` of `p(A)`.
pub fn inertia_from_diagonal(s: &Spectrum, p: &MeshPolynomial, w: f64, big_w: f64, k: usize, method: Method) -> BoundReport {
    let v = p.values();
    let tol = tol::SIGN * scale_of(v).max(w.abs()).max(big_w.abs());
    let ge: usize = v.iter().zip(s.mults()).filter(|(x, _)| **x >= w - tol).map(|(_, m)| m).sum();
    let le: usize = v.iter().zip(s.mults()).filter(|(x, _)| **x <= big_w + tol).map(|(_, m)| m).sum();
    BoundReport::new(method, k, ge.min(le) as f64).with_certificate(p.clone())
}

/// Ratio-type bound `n (W - lambda(p)) / (p(theta_0) - lambda(p))` for a
/// regular graph.
pub fn ratio_from_diagonal(s: &Spectrum, p: &MeshPolynomial, big_w: f64, k: usize, method: Method) -> Result<BoundReport> {
    let lam = p.lambda();
    let top = p.value(0);
    if top - lam <= tol::SIGN * scale_of(p.values()) {
        return Err(Error::DegeneratePolynomial);
    }
    let v = s.n() as f64 * (big_w - lam) / (top - lam);
    Ok(BoundReport::new(method, k, v).with_certificate(p.clone()))
}

fn check_degree(p: &CoeffPolynomial, k: usize) -> Result<()> {
    if p.degree() > k {
        return Err(Error::InvalidK {
            k,
            reason: format!("polynomial has degree {} > k", p.degree()),
        });
    }
    Ok(())
}

/// Inertia-type bound for any graph and any `p` of degree at most `k`.
pub fn inertia_general(g: &Graph, s: &Spectrum, p: &CoeffPolynomial, k: usize) -> Result<BoundReport> {
    check_degree(p, k)?;
    let (w, big_w) = diagonal_stats(g, p);
    Ok(inertia_from_diagonal(s, &p.on_mesh(s.theta()), w, big_w, k, Method::InertiaGeneral))
}

/// Ratio-type bound for a regular graph and `p` of degree at most `k`.
pub fn ratio_general(g: &Graph, s: &Spectrum, p: &CoeffPolynomial, k: usize) -> Result<BoundReport> {
    check_degree(p, k)?;
    if g.regular_degree().is_none() {
        return Err(Error::NotRegular);
    }
    let (_, big_w) = diagonal_stats(g, p);
    ratio_from_diagonal(s, &p.on_mesh(s.theta()), big_w, k, Method::RatioGeneral)
}

/// `sum m_i h(s(theta_i))` for a trace-zero `sp`, valid on
/// `k`-partially walk-regular graphs.
pub fn pwr_inertia(s: &Spectrum, sp: &MeshPolynomial, k: usize) -> Result<BoundReport> {
    let trace = s.weighted_sum(sp.values());
    if trace.abs() > 1e-7 * scale_of(sp.values()) * s.n() as f64 {
        return Err(Error::TraceNotZero(trace));
    }
    Ok(BoundReport::new(Method::PwrInertia, k, heaviside_count(s, sp.values()) as f64).with_certificate(sp.clone()))
}

/// `sum m_i f(theta_i)` for `f(theta_0) = 1`, `min_{i>=1} f(theta_i) = 0`.
pub fn pwr_ratio(s: &Spectrum, f: &MeshPolynomial, k: usize) -> Result<BoundReport> {
    check_minor(f)?;
    Ok(BoundReport::new(Method::PwrRatio, k, s.weighted_sum(f.values())).with_certificate(f.clone()))
}

fn check_minor(f: &MeshPolynomial) -> Result<()> {
    if (f.value(0) - 1.0).abs() > 1e-8 {
        return Err(Error::BadNormalization(format!("f(theta_0) = {}", f.value(0))));
    }
    if f.mesh().len() > 1 && f.lambda().abs() > 1e-8 {
        return Err(Error::BadNormalization(format!("min f(theta_i) = {}", f.lambda())));
    }
    Ok(())
}

/// Rescales `sp` so that `min_{i>=1} sp(theta_i) = -1`.
pub fn normalize_sign(sp: &MeshPolynomial) -> Result<MeshPolynomial> {
    let lam = sp.lambda();
    if lam >= -tol::SIGN * scale_of(sp.values()) {
        return Err(Error::BadNormalization("sign polynomial has no negative value off theta_0".into()));
    }
    Ok(sp.map(|v| v / -lam))
}

/// `f = (1 + s) / (1 + s(theta_0))` after normalizing `s`.
pub fn sign_to_minor(sp: &MeshPolynomial) -> Result<MeshPolynomial> {
    let s = normalize_sign(sp)?;
    let denom = 1.0 + s.value(0);
    if denom.abs() <= 1e-12 {
        return Err(Error::DivisionByZero("s(theta_0) = -1".into()));
    }
    if denom < 0.0 {
        return Err(Error::BadNormalization("s(theta_0) < -1".into()));
    }
    Ok(s.map(|v| (1.0 + v) / denom))
}

/// `s = (n / tr f(A)) f - 1`.
pub fn minor_to_sign(f: &MeshPolynomial, s: &Spectrum) -> Result<MeshPolynomial> {
    let tr = s.weighted_sum(f.values());
    if tr.abs() <= 1e-12 {
        return Err(Error::DivisionByZero("tr f(A) = 0".into()));
    }
    let c = s.n() as f64 / tr;
    Ok(f.map(|v| c * v - 1.0))
}

/// `n / (1 + s(theta_0))` for the normalized `s`, with the induced minor
/// polynomial as certificate.
pub fn sign_to_minor_bound(s: &Spectrum, sp: &MeshPolynomial, k: usize) -> Result<BoundReport> {
    let f = sign_to_minor(sp)?;
    let top = normalize_sign(sp)?.value(0);
    Ok(BoundReport::new(Method::SignToMinorRatio, k, s.n() as f64 / (1.0 + top)).with_certificate(f))
}

/// `sum m_i h(f(theta_i) - tr f(A) / n)`, with the induced sign polynomial
/// as certificate.
pub fn minor_to_sign_bound(s: &Spectrum, f: &MeshPolynomial, k: usize) -> Result<BoundReport> {
    let sp = minor_to_sign(f, s)?;
    let mean = s.weighted_sum(f.values()) / s.n() as f64;
    let shifted: Vec<f64> = f.values().iter().map(|v| v - mean).collect();
    let tol = tol::SIGN * scale_of(f.values());
    let count: usize = shifted.iter().zip(s.mults()).filter(|(v, _)| **v >= -tol).map(|(_, m)| m).sum();
    Ok(BoundReport::new(Method::MinorToSignInertia, k, count as f64).with_certificate(sp))
}
