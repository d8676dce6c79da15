//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs as a plain binary (`harness = false`) so the report is printed in
//! order; the process exits nonzero if any criterion fails.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use specind::bounds::{best_bounds_with, cvetkovic_bound, hoffman_bound, pd_ratio_bound, qk_bounds, BoundOptions};
use specind::ch::{antipodal_check, ch_classify, mean_excess, spectral_excess, ChOptions};
use specind::exact::{alpha_k_exact, alpha_k_exact_with, verify_independent, ExactConfig};
use specind::fixtures;
use specind::graphs::distance_matrix;
use specind::optimize::{minor_polynomial, sign_polynomial, SignConfig};
use specind::polys::{hoffman_polynomial, predistance_polynomials};
use specind::spectra::{classify_regularity, exact_family_spectrum, pi_products};
use specind::{FamilySpec, Spectrum};

use common::{corpus, family};

const TOL_MINOR_VALUES: f64 = 1e-8;
const TOL_TRACE: f64 = 1e-9;
const TOL_SIGN: f64 = 1e-7;
const TOL_COEFF: f64 = 1e-9;
const TOL_ORTHO: f64 = 1e-8;
const TOL_PI_SUM: f64 = 1e-9;
const TOL_EXCESS: f64 = 1e-8;
const TOL_PD_RATIO: f64 = 1e-9;

const C1_BUDGET: Duration = Duration::from_secs(1);
const C3_BUDGET: Duration = Duration::from_secs(5);
const C4_BUDGET: Duration = Duration::from_secs(10);
const C6_BUDGET: Duration = Duration::from_secs(120);
const SOUNDNESS_MAX_N: usize = 200;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * b.abs().max(1.0)
}

fn spec(f: &str) -> Spectrum {
    exact_family_spectrum(&f.parse::<FamilySpec>().unwrap()).unwrap()
}

fn frac(s: &str) -> f64 {
    match s.split_once('/') {
        Some((a, b)) => a.parse::<f64>().unwrap() / b.parse::<f64>().unwrap(),
        None => s.parse().unwrap(),
    }
}

fn c1() -> Outcome {
    let cases = [
        ("petersen", 4, 4, 4),
        ("cycle:5", 2, 2, 2),
        ("hypercube:5", 16, 16, 16),
        ("circulant:10;1,2", 3, 4, 3),
    ];
    let mut out = Vec::new();
    for (f, alpha, inertia, ratio) in cases {
        let t0 = Instant::now();
        let e = family(f);
        let a = alpha_k_exact(&e.graph, 1).map_err(|e| e.to_string())?;
        ensure(verify_independent(&e.graph, 1, &a.witness), || format!("{f}: bad witness"))?;
        let t = e.spectrum.theta();
        let got = (
            a.alpha_k as i64,
            cvetkovic_bound(e.spectrum.raw()).floor_value.unwrap(),
            hoffman_bound(e.spectrum.n(), t[0], t[e.spectrum.d()]).floor_value.unwrap(),
        );
        ensure(got == (alpha, inertia, ratio), || format!("{f}: got {got:?}, want ({alpha}, {inertia}, {ratio})"))?;
        let dt = t0.elapsed();
        ensure(dt < C1_BUDGET, || format!("{f} took {dt:?}"))?;
        out.push(format!("{f} {got:?}"));
    }
    Ok(out.join("; "))
}

fn c2() -> Outcome {
    let cases = [("clebsch", 5, 6), ("hoffman_singleton", 21, 15), ("higman_sims", 22, 26)];
    let mut out = Vec::new();
    for (name, inertia, ratio) in cases {
        let s = fixtures::load_spectrum(name).map_err(|e| e.to_string())?;
        let t = s.theta();
        let got = (
            cvetkovic_bound(s.raw()).floor_value.unwrap(),
            hoffman_bound(s.n(), t[0], t[s.d()]).floor_value.unwrap(),
        );
        ensure(got == (inertia, ratio), || format!("{name}: got {got:?}, want ({inertia}, {ratio})"))?;
        out.push(format!("{name} {got:?}"));
    }
    Ok(out.join("; "))
}

fn c3() -> Outcome {
    let t0 = Instant::now();
    let cases: [(&str, usize, f64, &[&str]); 7] = [
        ("odd:5", 1, 56.0, &["1", "7/9", "5/9", "2/9", "0"]),
        ("odd:5", 2, 13.5, &["1", "5/14", "0", "0", "5/14"]),
        ("odd:5", 3, 8.5, &["1", "5/18", "0", "0", "0"]),
        ("odd:6", 1, 210.0, &["1", "9/11", "7/11", "4/11", "2/11", "0"]),
        ("odd:6", 2, 66.0, &["1", "5/14", "0", "0", "5/14", "1"]),
        ("odd:6", 3, 21.0, &["1", "45/154", "0", "0", "5/77", "0"]),
        ("odd:6", 4, 11.0, &["1", "0", "0", "0", "0", "1"]),
    ];
    for (f, k, trace, values) in cases {
        let s = spec(f);
        let p = minor_polynomial(&s, k).map_err(|e| e.to_string())?;
        let tr = s.weighted_sum(p.values());
        ensure(close(tr, trace, TOL_TRACE), || format!("{f} k={k}: trace {tr}, want {trace}"))?;
        for (i, (got, want)) in p.values().iter().zip(values.iter().map(|v| frac(v))).enumerate() {
            ensure((got - want).abs() <= TOL_MINOR_VALUES, || {
                format!("{f} k={k}: value {i} is {got}, want {want}")
            })?;
        }
    }
    let dt = t0.elapsed();
    ensure(dt < C3_BUDGET, || format!("took {dt:?}"))?;
    Ok(format!("7 programs, {:.2} s", dt.as_secs_f64()))
}

fn c4() -> Outcome {
    let t0 = Instant::now();
    let s = spec("odd:6");
    let r = sign_polynomial(&s, 4, &SignConfig::default()).map_err(|e| e.to_string())?;
    ensure(r.objective == 11, || format!("objective {}", r.objective))?;
    let y = r.sign_poly.values();
    let scale = 41.0 / y[0];
    ensure(scale > 0.0, || "certificate has the wrong sign".into())?;
    for (i, (a, b)) in y.iter().zip([41.0, -1.0, -1.0, -1.0, -1.0, 41.0]).enumerate() {
        ensure((a * scale - b).abs() <= TOL_SIGN * 41.0, || format!("value {i}: {} vs {b}", a * scale))?;
    }
    let tr = s.weighted_sum(y);
    let norm = y.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    ensure(tr.abs() <= TOL_SIGN * norm, || format!("trace {tr}"))?;
    let dt = t0.elapsed();
    ensure(dt < C4_BUDGET, || format!("took {dt:?}"))?;
    Ok(format!("objective 11, {} nodes, {:.2} s", r.nodes, dt.as_secs_f64()))
}

fn c5() -> Outcome {
    let s = spec("odd:6");
    let c = minor_polynomial(&s, 4).map_err(|e| e.to_string())?.to_coeffs();
    let want = [24.0, 14.0, -13.0, -2.0, 1.0].map(|x| x / 504.0);
    ensure(c.coeffs().len() == want.len(), || format!("coefficients {:?}", c.coeffs()))?;
    for (i, (a, b)) in c.coeffs().iter().zip(want).enumerate() {
        ensure((a - b).abs() <= TOL_COEFF, || format!("x^{i}: {a} vs {b}"))?;
    }
    Ok(format!("f_4 = {}", c.pretty()))
}

fn c6() -> Outcome {
    let cfg = ExactConfig {
        timeout: C6_BUDGET,
        ..ExactConfig::default()
    };
    let mut out = Vec::new();
    for (l, k, want) in [(3, 1, 4), (4, 2, 7), (5, 3, 7), (6, 4, 11)] {
        let e = family(&format!("odd:{l}"));
        let r = alpha_k_exact_with(&e.graph, k, &cfg).map_err(|e| format!("O_{l}: {e}"))?;
        ensure(r.alpha_k == want, || format!("alpha_{k}(O_{l}) = {}, want {want}", r.alpha_k))?;
        ensure(verify_independent(&e.graph, k, &r.witness), || format!("O_{l}: bad witness"))?;
        out.push(format!("O_{l}: {} ({:.2} s)", r.alpha_k, r.elapsed.as_secs_f64()));
    }
    Ok(out.join(", "))
}

fn c7() -> Outcome {
    let opts = ChOptions {
        exact: Some(ExactConfig::default()),
        ..ChOptions::default()
    };
    let classify = |f: &str, k| ch_classify(&family(f).graph, k, &opts).map_err(|e| format!("{f}: {e}"));
    let v = classify("odd:6", 4)?;
    ensure(v.is_tight_ch == Some(true), || format!("odd:6 k=4: {v:?}"))?;
    let v = classify("odd:5", 3)?;
    ensure(v.is_tight_ch == Some(false) && v.inertia_value == 8 && v.ratio_value == 8 && v.exact == Some(7), || {
        format!("odd:5 k=3: {v:?}")
    })?;
    let v = classify("kneser:6,2", 1)?;
    ensure(
        v.is_tight_ch == Some(true) && v.inertia_value == 5 && v.ratio_value == 5,
        || format!("kneser:6,2 k=1: {v:?}"),
    )?;
    Ok("odd:6 k=4 tight; odd:5 k=3 bound 8 vs 7; kneser:6,2 k=1 tight at 5".into())
}

fn c8() -> Outcome {
    let table = specind::tables::load_table("t5").map_err(|e| e.to_string())?;
    let mut checked = Vec::new();
    for row in &table.rows {
        let Some(name) = row.graph.as_ref().and_then(|g| g.graph6.clone()) else {
            continue;
        };
        if !fixtures::graph_exists(&name) {
            continue;
        }
        let e = common::fixture(&name);
        let pd = predistance_polynomials(&e.spectrum).map_err(|e| e.to_string())?;
        let (_, ratio) = qk_bounds(&e.graph, &e.spectrum, &pd, 2).map_err(|e| format!("{name}: {e}"))?;
        let want = row.expected["prop"].as_i64().unwrap();
        ensure(ratio.floor_value == Some(want), || format!("{name}: {:?} vs {want}", ratio.floor_value))?;
        checked.push(name);
    }
    for required in ["hoffman", "nauru", "frucht"] {
        ensure(checked.iter().any(|c| c == required), || format!("fixture {required} missing"))?;
    }
    // Prisms and Moebius ladders C_{2i}^{i,j}: tight whenever 4 does not divide i.
    let mut ladders = 0;
    for i in 5..=13usize {
        if i % 4 == 0 {
            continue;
        }
        for j in 1..i {
            if gcd(i, j) != 1 {
                continue;
            }
            let e = family(&format!("circulant:{};{j},{i}", 2 * i));
            let pd = predistance_polynomials(&e.spectrum).map_err(|e| e.to_string())?;
            let (_, ratio) = qk_bounds(&e.graph, &e.spectrum, &pd, 2).map_err(|e| e.to_string())?;
            let alpha = alpha_k_exact(&e.graph, 2).map_err(|e| e.to_string())?.alpha_k as i64;
            ensure(ratio.floor_value == Some(alpha), || {
                format!("C_{}^{{{i},{j}}}: bound {:?}, alpha_2 {alpha}", 2 * i, ratio.floor_value)
            })?;
            ladders += 1;
        }
    }
    Ok(format!("{} fixtures match; {ladders} ladder circulants tight", checked.len()))
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn c9() -> Outcome {
    let corpus = corpus();
    ensure(corpus.len() >= 40, || format!("corpus has {} graphs", corpus.len()))?;
    let opts = BoundOptions::default();

    // Soundness.
    let mut checks = 0;
    for e in corpus.iter().filter(|e| e.graph.n() <= SOUNDNESS_MAX_N) {
        let diam = distance_matrix(&e.graph).diameter();
        for k in 1..diam {
            let alpha = alpha_k_exact(&e.graph, k).map_err(|x| format!("{}: {x}", e.name))?.alpha_k as i64;
            let summary = best_bounds_with(&e.graph, &e.spectrum, k, &opts).map_err(|x| x.to_string())?;
            for r in summary.reports.iter().filter(|r| r.applicable) {
                let f = r.floor_value.unwrap();
                ensure(f >= alpha, || format!("{} k={k}: {} gives {f} < alpha {alpha}", e.name, r.method))?;
                checks += 1;
            }
        }
    }

    // Predistance family.
    for e in &corpus {
        let s = &e.spectrum;
        let pd = predistance_polynomials(s).map_err(|x| format!("{}: {x}", e.name))?;
        let d = s.d();
        for i in 0..=d {
            let pi = pd.mesh_poly(i);
            ensure(close(pi.value(0), pd.norm_sq(i), TOL_ORTHO), || format!("{}: p_{i}(theta_0)", e.name))?;
            for j in 0..i {
                let pj = pd.mesh_poly(j);
                let ip = pd.inner(pi.values(), pj.values());
                let scale = (pd.norm_sq(i) * pd.norm_sq(j)).sqrt();
                ensure(ip.abs() <= TOL_ORTHO * scale, || format!("{}: <p_{i}, p_{j}> = {ip}", e.name))?;
            }
        }
        let h = hoffman_polynomial(s).on_mesh(s.theta());
        for (a, b) in pd.sum().values().iter().zip(h.values()) {
            ensure((a - b).abs() <= TOL_ORTHO * s.n() as f64, || format!("{}: sum p_i != H", e.name))?;
        }
        for k in 1..=d {
            let q = pd.q_prime(k);
            let top = q.value(0);
            ensure(q.values()[1..].iter().all(|&v| v <= top + TOL_ORTHO * top.abs().max(1.0)), || {
                format!("{}: q'_{k}(theta_0) is not maximal", e.name)
            })?;
        }
    }

    // Spectral excess theorem, both directions.
    let (mut drg, mut non) = (0, 0);
    for e in corpus.iter().filter(|e| e.graph.regular_degree().is_some() && e.spectrum.d() >= 1) {
        let s = &e.spectrum;
        let pi = pi_products(s);
        let spectral = spectral_excess(s, &pi);
        let mean = mean_excess(&e.graph, s.d());
        let equal = (mean - spectral).abs() <= TOL_EXCESS * mean.abs().max(spectral.abs());
        let is_drg = classify_regularity(&e.graph, s).is_distance_regular();
        ensure(equal == is_drg, || {
            format!("{}: spectral {spectral}, mean {mean}, distance-regular {is_drg}", e.name)
        })?;
        if is_drg {
            drg += 1;
        } else {
            non += 1;
        }
    }
    ensure(drg > 0 && non > 0, || "excess check needs both kinds of graph".into())?;

    // Determinism.
    for name in ["odd:5", "petersen", "prism:8", "circulant:20;1,3,7"] {
        let e = family(name);
        let run = || {
            let mut out = String::new();
            for k in 1..distance_matrix(&e.graph).diameter() {
                let b = best_bounds_with(&e.graph, &e.spectrum, k, &opts).unwrap();
                out.push_str(&serde_json::to_string(&b).unwrap());
            }
            out
        };
        ensure(run() == run(), || format!("{name}: reports differ between runs"))?;
    }

    // Pi identities.
    for e in corpus.iter().filter(|e| e.spectrum.d() >= 1) {
        let pi = pi_products(&e.spectrum);
        let (mut even, mut odd) = (0.0, 0.0);
        for i in 0..=e.spectrum.d() {
            if i % 2 == 0 {
                even += pi.ratio(i);
            } else {
                odd += pi.ratio(i);
            }
        }
        ensure(close(even, odd, TOL_PI_SUM), || format!("{}: even {even} vs odd {odd}", e.name))?;
    }
    for n in 3..=5usize {
        let s = spec(&format!("hypercube:{n}"));
        let pi = pi_products(&s);
        for j in 0..=n {
            let v = s.mults()[j] as f64 / pi.ratio(j);
            ensure(close(v, 1.0, TOL_PI_SUM), || format!("Q_{n}: m_{j} pi_{j} / pi_0 = {v}"))?;
        }
    }
    Ok(format!(
        "{} graphs; {checks} soundness checks; excess: {drg} distance-regular, {non} not",
        corpus.len()
    ))
}

fn c10() -> Outcome {
    let opts = ChOptions {
        exact: Some(ExactConfig::default()),
        ..ChOptions::default()
    };
    for f in ["hypercube:3", "cycle:6"] {
        let e = family(f);
        let s = &e.spectrum;
        let pi = pi_products(s);
        let a = antipodal_check(&e.graph, s, &pi).map_err(|x| format!("{f}: {x}"))?;
        ensure(a.antipodal && a.r_int == Some(2), || format!("{f}: {a:?}"))?;
        let pd = predistance_polynomials(s).map_err(|x| x.to_string())?;
        let v = pd_ratio_bound(s, &pd).value;
        ensure(v.is_some_and(|v| (v - 2.0).abs() <= TOL_PD_RATIO), || format!("{f}: pd ratio {v:?}"))?;
        let ch = ch_classify(&e.graph, s.d() - 1, &opts).map_err(|x| x.to_string())?;
        ensure(ch.is_tight_ch == Some(true), || format!("{f}: not tight at k = d - 1"))?;
    }
    Ok("Q_3 and C_6: 2-antipodal, pd ratio 2, tight at k = d - 1".into())
}

fn main() {
    let criteria: [(&str, &str, fn() -> Outcome); 10] = [
        ("C1", "classic bounds on small graphs", c1),
        ("C2", "classic bounds from SRG spectra", c2),
        ("C3", "minor LP on O_5 and O_6", c3),
        ("C4", "sign MILP on O_6, k = 4", c4),
        ("C5", "coefficients of f_4 on O_6", c5),
        ("C6", "exact oracle on Odd graphs", c6),
        ("C7", "CH classification", c7),
        ("C8", "q'_2 ratio bound on named cubic graphs and ladder circulants", c8),
        ("C9", "property suites on the corpus", c9),
        ("C10", "antipodal pipeline", c10),
    ];
    let mut failed = 0;
    for (id, name, f) in criteria {
        let t0 = Instant::now();
        let r = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panic: {msg}"))
        });
        let secs = t0.elapsed().as_secs_f64();
        match r {
            Ok(detail) => println!("PASS {id:<4} {name} [{secs:.2} s] {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL {id:<4} {name} [{secs:.2} s] {why}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 10 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
