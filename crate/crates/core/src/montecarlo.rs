//! Replicated simulation with per-replication seeds `seed + r`.
//!
//! Results are gathered in replication order, so output does not depend on
//! the number of worker threads.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::acvf::{empirical_pacvf, Centering, Pacvf, PacvfMeta, PacvfMethod};
use crate::error::{Error, Result};
use crate::model::PeriodicModelSpec;
use crate::simulate::{simulate, SimConfig};

/// Environment variable capping worker threads.
pub const THREADS_ENV: &str = "PERARFIMA_THREADS";

/// Thread count from `PERARFIMA_THREADS`, if set to a positive integer.
pub fn thread_cap() -> Option<usize> {
    std::env::var(THREADS_ENV)
        .ok()?
        .trim()
        .parse()
        .ok()
        .filter(|&n: &usize| n > 0)
}

/// Runs `f` inside a pool honouring [`thread_cap`].
pub fn with_pool<T: Send>(f: impl FnOnce() -> T + Send) -> T {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = thread_cap() {
        builder = builder.num_threads(n);
    }
    match builder.build() {
        Ok(pool) => pool.install(f),
        Err(_) => f(),
    }
}

/// Mean and Monte Carlo standard error of replicated PACVF estimates.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PacvfSummary {
    pub mean: Pacvf,
    /// `sd / sqrt(reps)` per entry; zero for a single replication.
    pub std_error: Vec<Vec<f64>>,
    pub replications: usize,
}

/// Simulates `reps` paths and estimates their PACVF at lags `0..=jmax`.
pub fn replicate_pacvf(
    spec: &PeriodicModelSpec,
    cfg: &SimConfig,
    reps: usize,
    jmax: usize,
    centering: Centering,
) -> Result<Vec<Pacvf>> {
    if reps == 0 {
        return Err(Error::InvalidSpec("reps must be at least 1".into()));
    }
    spec.validate()?;
    spec.check_stationary()?;
    with_pool(|| {
        (0..reps)
            .into_par_iter()
            .map(|r| {
                let sample = simulate(spec, &cfg.with_seed(cfg.seed.wrapping_add(r as u64)))?;
                empirical_pacvf(&sample, jmax, centering)
            })
            .collect()
    })
}

/// Entrywise mean and standard error across replications.
pub fn summarize(runs: &[Pacvf]) -> Result<PacvfSummary> {
    let first = runs
        .first()
        .ok_or_else(|| Error::InvalidSpec("no replications".into()))?;
    let n = runs.len() as f64;
    let shape = |p: &Pacvf| (p.seasons, p.jmax());
    if runs.iter().any(|p| shape(p) != shape(first)) {
        return Err(Error::InvalidSpec("replications differ in shape".into()));
    }
    let mut mean = first.clone();
    let mut std_error = first.gamma.clone();
    for (s, (mean_row, se_row)) in mean.gamma.iter_mut().zip(std_error.iter_mut()).enumerate() {
        for (j, (mean_out, se_out)) in mean_row.iter_mut().zip(se_row.iter_mut()).enumerate() {
            let m = runs.iter().map(|p| p.gamma[s][j]).sum::<f64>() / n;
            let var = if runs.len() > 1 {
                runs.iter()
                    .map(|p| (p.gamma[s][j] - m).powi(2))
                    .sum::<f64>()
                    / (n - 1.0)
            } else {
                0.0
            };
            *mean_out = m;
            *se_out = (var / n).sqrt();
        }
    }
    mean.method = PacvfMethod::Empirical;
    mean.meta = PacvfMeta {
        replications: Some(runs.len()),
        ..first.meta.clone()
    };
    Ok(PacvfSummary {
        mean,
        std_error,
        replications: runs.len(),
    })
}
