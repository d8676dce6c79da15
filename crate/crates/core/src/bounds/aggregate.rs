use serde::Serialize;

use super::walk::{alpha2_bound, alpha3_bound, dminus1_bounds, min_floor, pd_ratio_bound, qk_bounds_spectral};
use super::{
    cvetkovic_bound, floor_bound, hoffman_bound_for, inertia_from_diagonal, minor_to_sign_bound, pwr_inertia,
    pwr_ratio, ratio_from_diagonal, sign_to_minor_bound, BoundReport, Method,
};
use crate::graphs::{distance_matrix, Graph};
use crate::optimize::{minor_polynomial, sign_polynomial, SignConfig};
use crate::polys::{predistance_polynomials, MeshPolynomial};
use crate::spectra::{pi_products, classify_with_distances, spectrum_default, IdempotentDiagonals, Spectrum};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BoundOptions {
    pub sign: SignConfig,
    /// The sign MILP is skipped above this many distinct eigenvalues.
    pub milp_max_d: usize,
}

impl Default for BoundOptions {
    fn default() -> Self {
        BoundOptions {
            sign: SignConfig::default(),
            milp_max_d: 14,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundSummary {
    pub k: usize,
    pub n: usize,
    pub diameter: usize,
    pub d: usize,
    pub reports: Vec<BoundReport>,
    pub best_floor: Option<i64>,
}

pub fn best_bounds(g: &Graph, k: usize) -> Result<BoundSummary> {
    let s = spectrum_default(g)?;
    best_bounds_with(g, &s, k, &BoundOptions::default())
}

/// Runs every bound that the regularity of `g` allows and marks the
/// reports with the smallest floor.
pub fn best_bounds_with(g: &Graph, s: &Spectrum, k: usize, opts: &BoundOptions) -> Result<BoundSummary> {
    if k == 0 {
        return Err(Error::InvalidK {
            k,
            reason: "bounds need k >= 1".into(),
        });
    }
    if s.n() != g.n() {
        return Err(Error::InvalidSpectrum(format!("spectrum has n = {}, graph has {}", s.n(), g.n())));
    }
    let dist = distance_matrix(g);
    let diameter = dist.diameter();
    let mut reports = Vec::new();
    if k >= diameter {
        reports.push(BoundReport::new(Method::Diameter, k, 1.0).with_detail("k >= diameter"));
    } else {
        let reg = classify_with_distances(g, s, &dist);
        let diag = IdempotentDiagonals::new(g, s)?;
        let regular = reg.is_regular();
        let pwr = reg.is_k_pwr(k);
        // Ratio-type bounds also need regularity; it only bites at k = 1.
        let pwr_ratio_ok = pwr && regular;
        let d = s.d();

        if k == 1 {
            reports.push(cvetkovic_bound(s.raw()));
            reports.push(BoundReport::from_result(Method::Hoffman, 1, hoffman_bound_for(g, s)));
        }

        match minor_polynomial(s, k) {
            Ok(f) => {
                reports.push(if regular {
                    let big_w = diag.stats(f.values()).1;
                    BoundReport::from_result(Method::RatioGeneral, k, ratio_from_diagonal(s, &f, big_w, k, Method::RatioGeneral))
                } else {
                    BoundReport::inapplicable(Method::RatioGeneral, k, Error::NotRegular.to_string())
                });
                if pwr_ratio_ok {
                    reports.push(BoundReport::from_result(Method::PwrRatio, k, pwr_ratio(s, &f, k)));
                }
                if pwr {
                    reports.push(BoundReport::from_result(Method::MinorToSignInertia, k, minor_to_sign_bound(s, &f, k)));
                }
            }
            Err(e) => reports.push(BoundReport::inapplicable(Method::RatioGeneral, k, e.to_string())),
        }

        if d > opts.milp_max_d {
            let why = format!("sign MILP skipped for d = {d} > {}", opts.milp_max_d);
            reports.push(BoundReport::inapplicable(Method::InertiaGeneral, k, why));
        } else {
            match sign_polynomial(s, k, &opts.sign) {
                Ok(sol) => {
                    let sp = sol.sign_poly;
                    let (w, big_w) = diag.stats(sp.values());
                    reports.push(inertia_from_diagonal(s, &sp, w, big_w, k, Method::InertiaGeneral));
                    if pwr {
                        let neg = sp.map(|v| -v);
                        reports.push(min_of(
                            [pwr_inertia(s, &sp, k), pwr_inertia(s, &neg, k)],
                            Method::PwrInertia,
                            k,
                        ));
                        if pwr_ratio_ok {
                            reports.push(min_of(
                                [sign_to_minor_bound(s, &sp, k), sign_to_minor_bound(s, &neg, k)],
                                Method::SignToMinorRatio,
                                k,
                            ));
                        }
                    }
                }
                Err(e) => reports.push(BoundReport::inapplicable(Method::InertiaGeneral, k, e.to_string())),
            }
        }

        if k == 2 && pwr {
            reports.push(BoundReport::from_result(Method::Mp2, 2, alpha2_bound(s)));
        }
        if k == 3 && pwr && d >= 3 {
            let cube = MeshPolynomial::from_fn(s.theta(), |x| x * x * x)?;
            let delta = diag.stats(cube.values()).1.round();
            reports.push(BoundReport::from_result(Method::Mp3, 3, alpha3_bound(s, delta)));
        }

        let top = reg.is_walk_regular && k + 1 == d;
        if top {
            reports.extend(dminus1_bounds(s, &pi_products(s)));
        }
        if pwr || top {
            match predistance_polynomials(s) {
                Ok(pd) => {
                    if pwr {
                        let (i, r) = qk_bounds_spectral(s, &pd, k);
                        reports.push(i);
                        reports.push(if regular { r } else { BoundReport::inapplicable(Method::QkRatio, k, Error::NotRegular.to_string()) });
                    }
                    if top {
                        reports.push(pd_ratio_bound(s, &pd));
                    }
                }
                Err(e) => reports.push(BoundReport::inapplicable(Method::QkRatio, k, e.to_string())),
            }
        }
    }
    let best_floor = min_floor(&reports);
    for r in &mut reports {
        r.best = r.applicable && r.value.map(floor_bound) == best_floor;
    }
    Ok(BoundSummary {
        k,
        n: s.n(),
        diameter,
        d: s.d(),
        reports,
        best_floor,
    })
}

/// The smaller of two attempts at the same bound (e.g. for `s` and `-s`).
fn min_of(results: [Result<BoundReport>; 2], method: Method, k: usize) -> BoundReport {
    let [a, b] = results;
    match (a, b) {
        (Ok(a), Ok(b)) => {
            if b.value < a.value {
                b.with_detail("negated certificate")
            } else {
                a
            }
        }
        (Ok(a), Err(_)) => a,
        (Err(_), Ok(b)) => b.with_detail("negated certificate"),
        (Err(e), Err(_)) => BoundReport::inapplicable(method, k, e.to_string()),
    }
}
