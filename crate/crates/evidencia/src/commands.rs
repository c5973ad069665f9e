//! Table builders behind each subcommand, kept free of argument parsing so
//! tests can call them directly.

use evidencia_core::criteria::{Criterion, CriterionProfile};
use evidencia_core::linmodel::{fit_profile_up_to, BasisSpec, Dataset};
use evidencia_core::selfcheck::CheckOutcome;
use evidencia_core::simlab::{criterion_curves, sample_points, SimDraw, SuccessTable};
use serde_json::{Map, Value};

use crate::error::{CliError, CliResult};
use crate::output::{Cell, Table};

/// Per-K criterion table for a dataset.
pub fn select_profile(
    data: &Dataset,
    basis: &BasisSpec,
    max_k: usize,
) -> CliResult<CriterionProfile> {
    let available = basis.available(data.len()).min(data.len());
    if max_k == 0 || max_k > available {
        return Err(CliError::input(format!(
            "--max-k must be between 1 and {available} for this dataset and basis, got {max_k}"
        )));
    }
    let fits = fit_profile_up_to(data, basis, max_k)?;
    Ok(CriterionProfile::from_fits(
        &fits,
        data.len(),
        &Criterion::ALL,
    )?)
}

pub fn select_table(profile: &CriterionProfile) -> Table {
    let mut columns = vec!["K", "chi_sq", "F_sq"];
    columns.extend(profile.results.iter().map(|r| r.criterion.name()));
    columns.push("selected_by");
    let mut table = Table::new(&columns);
    for k in 1..=profile.max_k() {
        let mut row = vec![
            Cell::Int(k as u64),
            Cell::Float(profile.chi_sq[k - 1]),
            Cell::Float(profile.f_sq[k - 1]),
        ];
        row.extend(profile.results.iter().map(|r| Cell::Float(r.values[k - 1])));
        let chosen: Vec<&str> = profile
            .results
            .iter()
            .filter(|r| r.selected_k == Some(k))
            .map(|r| r.criterion.name())
            .collect();
        row.push(Cell::Text(chosen.join(";")));
        table.push(row);
    }
    table
}

pub fn selected_json(profile: &CriterionProfile) -> Map<String, Value> {
    let selected: Map<String, Value> = profile
        .results
        .iter()
        .map(|r| {
            (
                r.criterion.name().to_owned(),
                r.selected_k.map_or(Value::Null, |k| Value::from(k as u64)),
            )
        })
        .collect();
    let mut extra = Map::new();
    extra.insert("selected".into(), Value::Object(selected));
    extra
}

pub fn success_rows(table: &SuccessTable) -> Table {
    let mut out = Table::new(&["criterion", "Ksim", "successes", "rate", "std_error"]);
    for (ci, c) in table.config.criteria.iter().enumerate() {
        for s in 0..table.config.n {
            out.push(vec![
                Cell::Text(c.name().to_owned()),
                Cell::Int(s as u64 + 1),
                Cell::Int(table.successes[ci][s]),
                Cell::Float(table.rates[ci][s]),
                Cell::Float(table.std_errors[ci][s]),
            ]);
        }
    }
    out
}

pub fn curves_table(
    a: f64,
    b: f64,
    n: usize,
    s: usize,
    k_min: usize,
    k_max: usize,
) -> CliResult<Table> {
    let points = criterion_curves(a, b, n, s, k_min, k_max)?;
    let mut out = Table::new(&[
        "K",
        "E_chi_sq",
        "E_F_sq",
        "AIC",
        "BIC",
        "RobustLargeK",
        "RobustExact",
    ]);
    for p in points {
        out.push(vec![
            Cell::Int(p.k as u64),
            Cell::Float(p.e_chi_sq),
            Cell::Float(p.e_f_sq),
            Cell::Float(p.aic),
            Cell::Float(p.bic),
            Cell::Float(p.robust_large_k),
            Cell::Float(p.robust_exact),
        ]);
    }
    Ok(out)
}

/// Column `s` (1-based) of a simulated draw as an `x,y,sigma` dataset.
pub fn draw_dataset(draw: &SimDraw, s: usize) -> Table {
    let n = draw.d.rows();
    let x = sample_points(n);
    let mut out = Table::new(&["x", "y", "sigma"]);
    for (i, xi) in x.into_iter().enumerate() {
        out.push(vec![
            Cell::Float(xi),
            Cell::Float(draw.d[(i, s - 1)]),
            Cell::Float(1.0),
        ]);
    }
    out
}

/// Report lines for `selfcheck`.
pub fn selfcheck_report(outcomes: &[CheckOutcome]) -> String {
    let width = outcomes.iter().map(|o| o.name.len()).max().unwrap_or(0);
    let mut text = String::new();
    for o in outcomes {
        let verdict = if o.passed { "PASS" } else { "FAIL" };
        text.push_str(&format!(
            "{verdict}  {:width$}  error {:.3e}  tolerance {:.1e}\n",
            o.name, o.error, o.tolerance
        ));
    }
    let failed = outcomes.iter().filter(|o| !o.passed).count();
    text.push_str(&format!("{} checks, {failed} failed\n", outcomes.len()));
    text
}
