//! Table builders for each subcommand. Every number comes straight from the
//! `projmeas` library.

use projmeas::closed_form::{info_gain, info_gain_limit, AnalyticReport};
use projmeas::estimator::{verification_rows, VerificationRow};

use crate::config::RunConfig;
use crate::error::CliResult;
use crate::output::{Cell, Table};

/// Largest |z| accepted by `verify`.
pub const MAX_Z: f64 = 5.0;

pub const UNDEFINED: &str = "undefined";

fn grid(config: &RunConfig) -> CliResult<Vec<(usize, usize)>> {
    let mut pairs = Vec::new();
    for &d in &config.dims {
        for r in config.ranks.ranks_for(d)? {
            pairs.push((d, r));
        }
    }
    Ok(pairs)
}

pub fn report_table(config: &RunConfig) -> CliResult<Table> {
    let mut table = Table::new(&[
        "d",
        "r",
        "kappa_sq",
        "info_bits",
        "fidelity",
        "probability",
        "efficiency",
    ]);
    for (d, r) in grid(config)? {
        let rep = AnalyticReport::new(d, r, config.kappa_sq)?;
        table.push(vec![
            d.into(),
            r.into(),
            rep.kappa_sq.into(),
            rep.info_bits.into(),
            rep.mean_fidelity.into(),
            rep.total_prob.into(),
            rep.efficiency.map_or(UNDEFINED.into(), Cell::from),
        ]);
    }
    Ok(table)
}

/// `(file stem, table)` for fig1..fig4.
pub fn figure_tables(dims: &[usize]) -> CliResult<Vec<(&'static str, Table)>> {
    let mut fig1 = Table::new(&["d", "r", "info_bits"]);
    let mut fig2 = Table::new(&["d", "r", "fidelity"]);
    let mut fig3 = Table::new(&["d", "info_bits", "fidelity"]);
    let mut fig4 = Table::new(&["d", "r", "efficiency"]);
    for &d in dims {
        for r in 1..=d {
            let rep = AnalyticReport::new(d, r, 1.0)?;
            fig1.push(vec![d.into(), r.into(), rep.info_bits.into()]);
            fig2.push(vec![d.into(), r.into(), rep.mean_fidelity.into()]);
            fig3.push(vec![
                d.into(),
                rep.info_bits.into(),
                rep.mean_fidelity.into(),
            ]);
            if let Some(e) = rep.efficiency {
                fig4.push(vec![d.into(), r.into(), e.into()]);
            }
        }
    }
    Ok(vec![
        ("fig1", fig1),
        ("fig2", fig2),
        ("fig3", fig3),
        ("fig4", fig4),
    ])
}

/// Verification rows for the configured grid, with `perturb_analytic` added
/// to every analytic value.
pub fn verify_rows(config: &RunConfig) -> CliResult<Vec<VerificationRow>> {
    let mut rows = Vec::new();
    for (d, r) in grid(config)? {
        for row in verification_rows(d, r, config.samples, config.seed)? {
            rows.push(if config.perturb_analytic == 0.0 {
                row
            } else {
                VerificationRow::new(
                    d,
                    r,
                    row.quantity,
                    row.analytic + config.perturb_analytic,
                    row.estimate,
                )
            });
        }
    }
    Ok(rows)
}

pub fn verify_table(rows: &[VerificationRow]) -> Table {
    let mut table = Table::new(&[
        "d",
        "r",
        "quantity",
        "analytic",
        "estimate",
        "stderr",
        "n_samples",
        "z_score",
        "status",
    ]);
    for row in rows {
        table.push(vec![
            row.dim.into(),
            row.rank.into(),
            row.quantity.label().into(),
            row.analytic.into(),
            row.estimate.value.into(),
            row.estimate.stderr.into(),
            row.estimate.n_samples.into(),
            row.z_score.into(),
            if row.passes(MAX_Z) { "ok" } else { "FAIL" }.into(),
        ]);
    }
    table
}

pub fn limits_table(dims: &[usize]) -> CliResult<Table> {
    let limit = info_gain_limit();
    let mut table = Table::new(&["d", "info_bits", "limit", "gap"]);
    for &d in dims {
        let i = info_gain(d, 1)?;
        table.push(vec![d.into(), i.into(), limit.into(), (limit - i).into()]);
    }
    Ok(table)
}
