//! Reference tables: expected values live in `fixtures/tables/<id>.json`,
//! this module recomputes each row and compares.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::bounds::{cvetkovic_bound, dminus1_bounds, hoffman_bound, qk_bounds};
use crate::exact::{alpha_k_exact_with, ExactConfig};
use crate::fixtures;
use crate::graphs::{FamilySpec, Graph};
use crate::optimize::{minor_polynomial, sign_polynomial, SignConfig};
use crate::polys::{format_value, predistance_polynomials};
use crate::spectra::{exact_family_spectrum, pi_products, spectrum_default, Spectrum};
use crate::{Error, Result};

pub const TABLE_IDS: [&str; 6] = ["t1", "t2", "minor-odd", "sign-odd6", "t4", "t5"];

#[derive(Clone, Debug, Deserialize)]
pub struct TableFixture {
    pub id: String,
    pub title: String,
    pub rows: Vec<RowFixture>,
}

#[derive(Clone, Debug, Default, Deserialize)]
pub struct GraphSource {
    pub family: Option<String>,
    pub graph6: Option<String>,
}

#[derive(Clone, Debug, Deserialize)]
pub struct RowFixture {
    pub key: String,
    pub label: String,
    #[serde(default)]
    pub graph: Option<GraphSource>,
    #[serde(default)]
    pub spectrum: Option<String>,
    #[serde(default)]
    pub k: Option<usize>,
    pub expected: serde_json::Map<String, Value>,
    #[serde(default)]
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct TableOptions {
    pub exact: ExactConfig,
    pub sign: SignConfig,
    /// Odd graphs `O_l` with `l` above this get no exact value.
    pub odd_exact_max: usize,
}

impl Default for TableOptions {
    fn default() -> Self {
        TableOptions {
            exact: ExactConfig::default(),
            sign: SignConfig::default(),
            odd_exact_max: 6,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RowStatus {
    Match,
    Mismatch,
    FixtureMissing,
    Error,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Cell {
    pub name: String,
    pub expected: Value,
    pub computed: Option<Value>,
    /// `None` when the value was not computed.
    pub matches: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RowResult {
    pub key: String,
    pub label: String,
    pub status: RowStatus,
    pub cells: Vec<Cell>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub message: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TableReport {
    pub id: String,
    pub title: String,
    pub rows: Vec<RowResult>,
    /// No row is a mismatch or an error. Rows with missing fixtures are
    /// listed but do not count.
    pub all_match: bool,
}

pub fn load_table(id: &str) -> Result<TableFixture> {
    if !TABLE_IDS.contains(&id) {
        return Err(Error::UnknownTable(id.to_owned()));
    }
    serde_json::from_value(fixtures::load_table_json(id)?).map_err(|e| Error::Fixture(format!("table {id}: {e}")))
}

/// Rows of `table` restricted to `keys` (all rows when `None`).
pub fn select_rows<'a>(table: &'a TableFixture, keys: Option<&[String]>) -> Result<Vec<&'a RowFixture>> {
    match keys {
        None => Ok(table.rows.iter().collect()),
        Some(keys) => keys
            .iter()
            .map(|k| {
                table
                    .rows
                    .iter()
                    .find(|r| &r.key == k)
                    .ok_or_else(|| Error::Fixture(format!("table {} has no row `{k}`", table.id)))
            })
            .collect(),
    }
}

pub fn run_table(id: &str, keys: Option<&[String]>, opts: &TableOptions) -> Result<TableReport> {
    let table = load_table(id)?;
    let rows = select_rows(&table, keys)?.into_iter().map(|r| evaluate_row(&table.id, r, opts)).collect();
    Ok(assemble(&table, rows))
}

pub fn assemble(table: &TableFixture, rows: Vec<RowResult>) -> TableReport {
    let all_match = rows.iter().all(|r| matches!(r.status, RowStatus::Match | RowStatus::FixtureMissing));
    TableReport {
        id: table.id.clone(),
        title: table.title.clone(),
        rows,
        all_match,
    }
}

pub fn evaluate_row(table_id: &str, row: &RowFixture, opts: &TableOptions) -> RowResult {
    let cells = match table_id {
        "t1" => t1_row(row, opts),
        "t2" => t2_row(row, opts),
        "minor-odd" => minor_row(row),
        "sign-odd6" => sign_row(row, opts),
        "t4" => t4_row(row, opts),
        "t5" => t5_row(row, opts),
        other => Err(Error::UnknownTable(other.to_owned())),
    };
    let (status, cells, message) = match cells {
        Ok(cells) => {
            let ok = cells.iter().all(|c| c.matches != Some(false));
            (if ok { RowStatus::Match } else { RowStatus::Mismatch }, cells, None)
        }
        Err(Error::Fixture(m)) => (RowStatus::FixtureMissing, Vec::new(), Some(m)),
        Err(e) => (RowStatus::Error, Vec::new(), Some(e.to_string())),
    };
    RowResult {
        key: row.key.clone(),
        label: row.label.clone(),
        status,
        cells,
        note: row.note.clone(),
        message,
    }
}

fn load_graph(src: &GraphSource) -> Result<(Graph, Spectrum)> {
    if let Some(f) = &src.family {
        let spec: FamilySpec = f.parse()?;
        let g = spec.generate()?;
        let s = exact_family_spectrum(&spec).or_else(|_| spectrum_default(&g))?;
        return Ok((g, s));
    }
    if let Some(name) = &src.graph6 {
        let g = fixtures::load_graph(name)?;
        let s = spectrum_default(&g)?;
        return Ok((g, s));
    }
    Err(Error::Fixture("row has no graph source".into()))
}

fn row_graph(row: &RowFixture) -> Result<(Graph, Spectrum)> {
    load_graph(row.graph.as_ref().ok_or_else(|| Error::Fixture("row has no graph".into()))?)
}

fn expected<'a>(row: &'a RowFixture, name: &str) -> Result<&'a Value> {
    row.expected
        .get(name)
        .ok_or_else(|| Error::Fixture(format!("row {} lacks expected `{name}`", row.key)))
}

fn int_cell(row: &RowFixture, name: &str, computed: Option<i64>) -> Result<Cell> {
    let e = expected(row, name)?;
    Ok(Cell {
        name: name.into(),
        expected: e.clone(),
        computed: computed.map(|c| json!(c)),
        matches: computed.map(|c| e.as_i64() == Some(c)),
    })
}

fn float_cell(row: &RowFixture, name: &str, computed: f64, tol: f64) -> Result<Cell> {
    let e = expected(row, name)?;
    let ev = e.as_f64().ok_or_else(|| Error::Fixture(format!("`{name}` is not a number")))?;
    Ok(Cell {
        name: name.into(),
        expected: e.clone(),
        computed: Some(json!(computed)),
        matches: Some((ev - computed).abs() <= tol * ev.abs().max(1.0)),
    })
}

/// `"5/14"`, `"-1"` or `"0.25"`.
pub fn parse_fraction(s: &str) -> Option<f64> {
    match s.split_once('/') {
        Some((a, b)) => Some(a.trim().parse::<f64>().ok()? / b.trim().parse::<f64>().ok()?),
        None => s.trim().parse().ok(),
    }
}

fn values_cell(row: &RowFixture, name: &str, computed: &[f64], tol: f64) -> Result<Cell> {
    let e = expected(row, name)?;
    let want: Vec<f64> = e
        .as_array()
        .ok_or_else(|| Error::Fixture(format!("`{name}` is not a list")))?
        .iter()
        .map(|v| v.as_str().and_then(parse_fraction).or_else(|| v.as_f64()))
        .collect::<Option<_>>()
        .ok_or_else(|| Error::Fixture(format!("`{name}` has a bad entry")))?;
    let matches = want.len() == computed.len() && want.iter().zip(computed).all(|(a, b)| (a - b).abs() <= tol);
    Ok(Cell {
        name: name.into(),
        expected: e.clone(),
        computed: Some(json!(computed.iter().map(|&v| format_value(v)).collect::<Vec<_>>())),
        matches: Some(matches),
    })
}

fn t1_row(row: &RowFixture, opts: &TableOptions) -> Result<Vec<Cell>> {
    let (g, s) = row_graph(row)?;
    let alpha = alpha_k_exact_with(&g, 1, &opts.exact)?.alpha_k as i64;
    let t = s.theta();
    Ok(vec![
        int_cell(row, "alpha", Some(alpha))?,
        int_cell(row, "inertia", cvetkovic_bound(s.raw()).floor_value)?,
        int_cell(row, "ratio_floor", hoffman_bound(s.n(), t[0], t[s.d()]).floor_value)?,
    ])
}

/// `(n, k, lambda, mu)` of a strongly regular graph from its spectrum
/// `{k, r, s}`.
pub fn srg_parameters_from_spectrum(s: &Spectrum) -> Option<[i64; 4]> {
    if s.d() != 2 {
        return None;
    }
    let t = s.theta();
    let (k, r, q) = (t[0], t[1], t[2]);
    let round = |x: f64| ((x - x.round()).abs() < 1e-6).then_some(x.round() as i64);
    Some([s.n() as i64, round(k)?, round(k + r + q + r * q)?, round(k + r * q)?])
}

fn t2_row(row: &RowFixture, opts: &TableOptions) -> Result<Vec<Cell>> {
    let name = row.spectrum.as_deref().ok_or_else(|| Error::Fixture("row has no spectrum".into()))?;
    let s = fixtures::load_spectrum(name)?;
    let t = s.theta();
    let params = srg_parameters_from_spectrum(&s);
    let e = expected(row, "params")?;
    let params_cell = Cell {
        name: "params".into(),
        expected: e.clone(),
        computed: params.map(|p| json!(p)),
        matches: Some(params.map(|p| json!(p)) == Some(e.clone())),
    };
    let alpha = match &row.graph {
        Some(src) => match load_graph(src) {
            Ok((g, _)) => Some(alpha_k_exact_with(&g, 1, &opts.exact)?.alpha_k as i64),
            Err(Error::Fixture(_)) => None,
            Err(e) => return Err(e),
        },
        None => None,
    };
    Ok(vec![
        params_cell,
        int_cell(row, "alpha", alpha)?,
        int_cell(row, "inertia", cvetkovic_bound(s.raw()).floor_value)?,
        int_cell(row, "ratio_floor", hoffman_bound(s.n(), t[0], t[s.d()]).floor_value)?,
    ])
}

fn family_spectrum(row: &RowFixture) -> Result<Spectrum> {
    let f = row
        .graph
        .as_ref()
        .and_then(|g| g.family.as_ref())
        .ok_or_else(|| Error::Fixture("row needs a family".into()))?;
    exact_family_spectrum(&f.parse()?)
}

fn row_k(row: &RowFixture) -> Result<usize> {
    row.k.ok_or_else(|| Error::Fixture(format!("row {} has no k", row.key)))
}

fn minor_row(row: &RowFixture) -> Result<Vec<Cell>> {
    let s = family_spectrum(row)?;
    let f = minor_polynomial(&s, row_k(row)?)?;
    Ok(vec![
        values_cell(row, "values", f.values(), 1e-9)?,
        float_cell(row, "trace", s.weighted_sum(f.values()), 1e-9)?,
    ])
}

fn sign_row(row: &RowFixture, opts: &TableOptions) -> Result<Vec<Cell>> {
    let s = family_spectrum(row)?;
    let k = row_k(row)?;
    if row.key.starts_with('f') {
        return minor_row(row);
    }
    let sp = sign_polynomial(&s, k, &opts.sign)?.sign_poly;
    let want0 = expected(row, "values")?
        .get(0)
        .and_then(Value::as_str)
        .and_then(parse_fraction)
        .ok_or_else(|| Error::Fixture("bad values".into()))?;
    let c = want0 / sp.value(0);
    if !(c > 0.0) {
        return Ok(vec![Cell {
            name: "values".into(),
            expected: expected(row, "values")?.clone(),
            computed: Some(json!(sp.values())),
            matches: Some(false),
        }]);
    }
    let scaled: Vec<f64> = sp.values().iter().map(|v| v * c).collect();
    Ok(vec![
        values_cell(row, "values", &scaled, 1e-7 * want0.abs())?,
        float_cell(row, "trace", s.weighted_sum(&scaled), 1e-7)?,
    ])
}

fn t4_row(row: &RowFixture, opts: &TableOptions) -> Result<Vec<Cell>> {
    let src = row.graph.as_ref().and_then(|g| g.family.as_ref());
    let spec: FamilySpec = src.ok_or_else(|| Error::Fixture("row needs a family".into()))?.parse()?;
    let FamilySpec::Odd(l) = spec else {
        return Err(Error::Fixture("t4 rows are odd graphs".into()));
    };
    let s = exact_family_spectrum(&spec)?;
    let k = row_k(row)?;
    let bound = crate::bounds::min_floor(&dminus1_bounds(&s, &pi_products(&s)));
    let alpha = if l > opts.odd_exact_max {
        None
    } else if k == 0 {
        Some(s.n() as i64)
    } else {
        Some(alpha_k_exact_with(&spec.generate()?, k, &opts.exact)?.alpha_k as i64)
    };
    Ok(vec![int_cell(row, "alpha", alpha)?, int_cell(row, "bound", bound)?])
}

fn t5_row(row: &RowFixture, opts: &TableOptions) -> Result<Vec<Cell>> {
    let (g, s) = row_graph(row)?;
    let k = row_k(row)?;
    let pd = predistance_polynomials(&s)?;
    let (_, ratio) = qk_bounds(&g, &s, &pd, k)?;
    let alpha = alpha_k_exact_with(&g, k, &opts.exact)?.alpha_k as i64;
    Ok(vec![
        int_cell(row, "prop", ratio.floor_value)?,
        int_cell(row, "alpha2", Some(alpha))?,
    ])
}
