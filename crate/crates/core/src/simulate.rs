//! Sample paths of models A, B and C.
//!
//! Innovations `u_{s,tau} ~ N(0, sigma_s^2)` are drawn from a ChaCha20 stream
//! seeded with `seed`, block by block and season by season within a block.
//! Fractional integration uses the `(1 - L)^{-D_s}` filter truncated at lag
//! `M`, applied to each season's block sequence. The generator first produces
//! `M` presample blocks so that every retained value sees the full filter,
//! then `burnin` blocks that are discarded, then the returned blocks.
//!
//! The operator order is the model: B runs the VAR recursion first and
//! integrates its output, C integrates the innovations first and feeds them
//! to the VAR recursion.

use std::io::{self, Write};

use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fracdiff::{causal_filter, psi_coeffs, DEFAULT_TRUNCATION};
use crate::model::{CompanionForm, ModelKind, PeriodicModelSpec};

pub const DEFAULT_LENGTH: usize = 1000;
pub const DEFAULT_BURNIN: usize = 2000;
pub const DEFAULT_SEED: u64 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimConfig {
    /// Number of returned observations `T`.
    pub length: usize,
    pub seed: u64,
    /// Discarded multivariate steps.
    pub burnin: usize,
    /// Fractional filter truncation `M`.
    pub truncation: usize,
}

impl Default for SimConfig {
    fn default() -> Self {
        SimConfig {
            length: DEFAULT_LENGTH,
            seed: DEFAULT_SEED,
            burnin: DEFAULT_BURNIN,
            truncation: DEFAULT_TRUNCATION,
        }
    }
}

impl SimConfig {
    pub fn with_seed(self, seed: u64) -> Self {
        SimConfig { seed, ..self }
    }
}

/// A simulated univariate series with interleaved seasons.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeriesSample {
    pub values: Vec<f64>,
    pub seasons: usize,
    pub seed: u64,
    pub kind: ModelKind,
    pub burnin: usize,
    pub truncation: usize,
}

impl SeriesSample {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Season (1-based) of observation `t` (1-based).
    pub fn season_of(&self, t: usize) -> usize {
        (t - 1) % self.seasons + 1
    }

    /// Per-season block sequences `x[s][tau]`.
    pub fn deinterleave(&self) -> Vec<Vec<f64>> {
        (0..self.seasons)
            .map(|s| {
                self.values
                    .iter()
                    .skip(s)
                    .step_by(self.seasons)
                    .copied()
                    .collect()
            })
            .collect()
    }

    /// Writes `t,season,value` rows with a header.
    pub fn write_csv<W: Write>(&self, mut out: W) -> io::Result<()> {
        writeln!(out, "t,season,value")?;
        for (i, v) in self.values.iter().enumerate() {
            writeln!(out, "{},{},{}", i + 1, self.season_of(i + 1), v)?;
        }
        Ok(())
    }
}

/// Draws a sample path of length `cfg.length` from `spec`.
pub fn simulate(spec: &PeriodicModelSpec, cfg: &SimConfig) -> Result<SeriesSample> {
    let companion = spec.check_stationary()?;
    if cfg.length == 0 {
        return Err(Error::InvalidSpec("sample size T must be positive".into()));
    }
    let s = spec.seasons;
    let blocks = cfg.length.div_ceil(s);
    let skip = cfg.truncation + cfg.burnin;
    let total = skip + blocks;

    let innovations = draw_innovations(spec, total, cfg.seed);
    let stacked = match spec.kind {
        ModelKind::ModelA => integrate_seasons(spec, &innovations, cfg.truncation),
        ModelKind::ModelBFivar => {
            let ar = var_filter(&companion, &innovations);
            integrate_seasons(spec, &ar, cfg.truncation)
        }
        ModelKind::ModelCVarfi => {
            let integrated = integrate_seasons(spec, &innovations, cfg.truncation);
            var_filter(&companion, &integrated)
        }
    };

    let mut values = Vec::with_capacity(blocks * s);
    for tau in skip..total {
        for season in &stacked {
            values.push(season[tau]);
        }
    }
    values.truncate(cfg.length);
    Ok(SeriesSample {
        values,
        seasons: s,
        seed: cfg.seed,
        kind: spec.kind,
        burnin: cfg.burnin,
        truncation: cfg.truncation,
    })
}

/// `u[s][tau]`, drawn in time order.
fn draw_innovations(spec: &PeriodicModelSpec, blocks: usize, seed: u64) -> Vec<Vec<f64>> {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let scale: Vec<f64> = spec.sigma2.iter().map(|v| v.sqrt()).collect();
    let mut u = vec![Vec::with_capacity(blocks); spec.seasons];
    for _ in 0..blocks {
        for (season, sd) in u.iter_mut().zip(&scale) {
            let z: f64 = StandardNormal.sample(&mut rng);
            season.push(sd * z);
        }
    }
    u
}

/// Applies `(1 - L)^{-D_s}` (truncated at `m`) to each season's block sequence.
fn integrate_seasons(spec: &PeriodicModelSpec, input: &[Vec<f64>], m: usize) -> Vec<Vec<f64>> {
    input
        .iter()
        .zip(&spec.orders)
        .map(|(x, &d)| {
            if d == 0.0 {
                x.clone()
            } else {
                causal_filter(x, psi_coeffs(d, m).as_slice())
            }
        })
        .collect()
}

/// Solves `Phi0 X_tau = sum_i Phi_i X_{tau-i} + e_tau` forward from zero presample.
fn var_filter(companion: &CompanionForm, input: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let s = companion.seasons;
    let n = input.first().map_or(0, Vec::len);
    let inv0 = companion.phi0_inverse();
    let lifted: Vec<_> = companion.phi.iter().map(|m| &inv0 * m).collect();
    let mut out = vec![vec![0.0; n]; s];
    let mut rhs = vec![0.0; s];
    for tau in 0..n {
        for (a, r) in rhs.iter_mut().enumerate() {
            let mut acc = 0.0;
            for (c, e) in input.iter().enumerate() {
                acc += inv0[(a, c)] * e[tau];
            }
            for (i, m) in lifted.iter().enumerate() {
                if tau > i {
                    let lagged = tau - 1 - i;
                    for (c, x) in out.iter().enumerate() {
                        acc += m[(a, c)] * x[lagged];
                    }
                }
            }
            *r = acc;
        }
        for (a, v) in rhs.iter().enumerate() {
            out[a][tau] = *v;
        }
    }
    out
}
