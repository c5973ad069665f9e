//! Replicate fan-out over a rayon pool.

use rayon::prelude::*;

use evidencia_core::simlab::{cosine_design, tally_range, SimConfig, SuccessTable, Tally};

use crate::error::{CliError, CliResult};

/// Replicates per work unit. Fixed, so the partition never depends on the
/// worker count.
const BLOCK: u64 = 64;

/// Worker count from `EVIDENCIA_THREADS`; `0` or unset means one per core.
pub fn threads_from_env() -> CliResult<usize> {
    match std::env::var("EVIDENCIA_THREADS") {
        Ok(v) => v.trim().parse().map_err(|_| {
            CliError::input(format!(
                "EVIDENCIA_THREADS must be a non-negative integer, got '{v}'"
            ))
        }),
        Err(std::env::VarError::NotPresent) => Ok(0),
        Err(e) => Err(CliError::input(format!("EVIDENCIA_THREADS: {e}"))),
    }
}

/// Runs the success experiment on `threads` workers (`0` = automatic).
///
/// Tallies are integer counts merged in block order, so the table is
/// identical for every worker count.
pub fn run_parallel(config: &SimConfig, threads: usize) -> CliResult<SuccessTable> {
    config.validate()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| CliError::input(format!("cannot start worker pool: {e}")))?;
    let design = cosine_design(config.n);
    let blocks: Vec<u64> = (0..config.replicates.div_ceil(BLOCK)).collect();
    let parts = pool.install(|| {
        blocks
            .par_iter()
            .map(|&b| {
                let start = b * BLOCK;
                let end = (start + BLOCK).min(config.replicates);
                tally_range(config, &design, start..end)
            })
            .collect::<Result<Vec<Tally>, _>>()
    })?;
    let total = parts
        .iter()
        .fold(Tally::empty(config.criteria.len(), config.n), |acc, t| {
            acc.merge(t)
        });
    Ok(SuccessTable::from_tally(config.clone(), total)?)
}
