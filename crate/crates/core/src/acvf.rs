//! Periodic autocovariances `gamma^(s)(j) = Cov(X_{S tau + s}, X_{S tau + s + j})`.
//!
//! Three routes are provided:
//!
//! * [`exact_pacvf`] sums the S-variate moving-average representation
//!   (`C_j = sum_k Psi_k Pi_{j-k}` for model B, `H_j = sum_k Pi_k Psi_{j-k}`
//!   for model C) into block autocovariances `Gamma(h)` and reads the
//!   periodic autocovariances off them;
//! * [`asymptotic_pacvf_fivar`] and [`asymptotic_pacvf_varfi`] evaluate the
//!   hyperbolic large-lag approximations;
//! * [`empirical_pacvf`] estimates them from a sample.
//!
//! A univariate lag `j > 0` at season `s` maps to block lag `h + delta` and
//! target season `s + nu - S delta`, where `j = h S + nu` (see
//! [`decompose_lag`]).

use std::fmt;
use std::io::{self, Write};

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};
use statrs::function::gamma::gamma;

use crate::error::{Error, Result};
use crate::fracdiff::psi_coeffs;
use crate::model::{pi_matrices, pi_total, CompanionForm, ModelKind, PeriodicModelSpec};
use crate::simulate::SeriesSample;

/// Default truncation for theoretical tables.
pub const DEFAULT_EXACT_TRUNCATION: usize = 100_000;

/// `Pi_j` entries below this fraction of `max |Pi_0|` are dropped.
const PI_NEGLIGIBLE: f64 = 1e-17;
const PI_MAX_TERMS: usize = 200_000;

/// `j = h S + nu` with block carry `delta`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LagDecomposition {
    pub lag: usize,
    pub season: usize,
    pub h: usize,
    pub nu: usize,
    pub delta: usize,
}

impl LagDecomposition {
    /// Season of `X_{S tau + s + j}` within its block, in `1..=S`.
    pub fn target_season(&self, seasons: usize) -> usize {
        self.season + self.nu - seasons * self.delta
    }

    /// Block lag `h + delta` between the two observations.
    pub fn block_lag(&self) -> usize {
        self.h + self.delta
    }
}

/// Splits lag `j` at season `s` (1-based) into `(h, nu, delta)`.
///
/// `delta = 0` when `s + nu <= S` (including `s + nu = S`), `delta = 1`
/// otherwise.
pub fn decompose_lag(lag: usize, season: usize, seasons: usize) -> LagDecomposition {
    debug_assert!((1..=seasons).contains(&season));
    let h = lag / seasons;
    let nu = lag % seasons;
    let delta = usize::from(season + nu > seasons);
    LagDecomposition {
        lag,
        season,
        h,
        nu,
        delta,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PacvfMethod {
    Exact,
    AsymptoticFivar,
    AsymptoticVarfi,
    Empirical,
}

impl fmt::Display for PacvfMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            PacvfMethod::Exact => "exact",
            PacvfMethod::AsymptoticFivar => "asymptotic_fivar",
            PacvfMethod::AsymptoticVarfi => "asymptotic_varfi",
            PacvfMethod::Empirical => "empirical",
        };
        f.write_str(name)
    }
}

/// How the truncated moving-average sum is completed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TailCorrection {
    /// Autocovariance of the process whose fractional filters stop at lag `M`.
    None,
    /// Adds the power-law tail of the omitted terms beyond lag `M`.
    Asymptotic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactOptions {
    pub truncation: usize,
    pub tail: TailCorrection,
}

impl Default for ExactOptions {
    fn default() -> Self {
        ExactOptions {
            truncation: DEFAULT_EXACT_TRUNCATION,
            tail: TailCorrection::Asymptotic,
        }
    }
}

impl ExactOptions {
    pub fn truncated(truncation: usize) -> Self {
        ExactOptions {
            truncation,
            tail: TailCorrection::None,
        }
    }

    pub fn corrected(truncation: usize) -> Self {
        ExactOptions {
            truncation,
            tail: TailCorrection::Asymptotic,
        }
    }
}

/// Centering used by the sample autocovariance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Centering {
    /// Subtract each season's sample mean.
    SeasonalMean,
    /// The process is known to have zero mean.
    Zero,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct PacvfMeta {
    pub kind: Option<ModelKind>,
    pub truncation: Option<usize>,
    pub tail: Option<TailCorrection>,
    pub sample_size: Option<usize>,
    pub replications: Option<usize>,
    pub centering: Option<Centering>,
    /// Set when an asymptotic amplitude vanished because a relevant order is 0.
    pub degenerate: bool,
}

/// Grid `gamma^(s)(j)`, `s = 1..=S`, `j = 0..=jmax`.
///
/// Asymptotic grids hold `NaN` where `h + delta = 0` (the approximation is
/// not defined there).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Pacvf {
    pub seasons: usize,
    /// `gamma[s - 1][j]`.
    pub gamma: Vec<Vec<f64>>,
    pub method: PacvfMethod,
    pub meta: PacvfMeta,
}

impl Pacvf {
    pub const CSV_HEADER: &'static str = "s,j,h,nu,delta,gamma,method";

    fn new(seasons: usize, jmax: usize, method: PacvfMethod, meta: PacvfMeta) -> Self {
        Pacvf {
            seasons,
            gamma: vec![vec![0.0; jmax + 1]; seasons],
            method,
            meta,
        }
    }

    pub fn jmax(&self) -> usize {
        self.gamma[0].len() - 1
    }

    /// `gamma^(s)(j)` with 1-based season.
    pub fn get(&self, season: usize, lag: usize) -> f64 {
        self.gamma[season - 1][lag]
    }

    /// `gamma^(s)(-j) = gamma^(s')(j)`, `s'` the season `j` steps earlier.
    pub fn get_signed(&self, season: usize, lag: isize) -> f64 {
        if lag >= 0 {
            return self.get(season, lag as usize);
        }
        let back = lag.unsigned_abs();
        let s = self.seasons as isize;
        let earlier = ((season as isize - 1 - back as isize).rem_euclid(s) + 1) as usize;
        self.get(earlier, back)
    }

    /// Writes `s,j,h,nu,delta,gamma,method` rows with a header.
    pub fn write_csv<W: Write>(&self, mut out: W) -> io::Result<()> {
        writeln!(out, "{}", Self::CSV_HEADER)?;
        self.write_rows(out, "")
    }

    /// Data rows only, each prefixed with `prefix` (which should end in a
    /// comma when non-empty).
    pub fn write_rows<W: Write>(&self, mut out: W, prefix: &str) -> io::Result<()> {
        for s in 1..=self.seasons {
            for j in 0..=self.jmax() {
                let lag = decompose_lag(j, s, self.seasons);
                writeln!(
                    out,
                    "{}{},{},{},{},{},{},{}",
                    prefix,
                    s,
                    j,
                    lag.h,
                    lag.nu,
                    lag.delta,
                    self.get(s, j),
                    self.method
                )?;
            }
        }
        Ok(())
    }

    fn fill_from_blocks(&mut self, blocks: &[DMatrix<f64>]) {
        let seasons = self.seasons;
        for s in 1..=seasons {
            for j in 0..=self.jmax() {
                let lag = decompose_lag(j, s, seasons);
                let target = lag.target_season(seasons);
                self.gamma[s - 1][j] = blocks[lag.block_lag()][(s - 1, target - 1)];
            }
        }
    }
}

/// Largest block lag `h + delta` referenced by lags `0..=jmax`.
fn max_block_lag(jmax: usize, seasons: usize) -> usize {
    if jmax == 0 {
        0
    } else {
        jmax / seasons + 1
    }
}

/// Block autocovariances `Gamma(h)[a][b] = Cov(X_{a,tau}, X_{b,tau+h})`,
/// `h = 0..=hmax`, of the stacked process.
pub fn exact_block_autocovariances(
    spec: &PeriodicModelSpec,
    hmax: usize,
    opts: &ExactOptions,
) -> Result<Vec<DMatrix<f64>>> {
    let companion = spec.check_stationary()?;
    let s = spec.seasons;
    let m = opts.truncation;
    // psi_k(D_s) for k <= m + hmax + 1; entries past m only feed the tail
    let psi: Vec<Vec<f64>> = spec
        .orders
        .iter()
        .map(|&d| psi_coeffs(d, m + hmax + 1).coeffs)
        .collect();

    let mut blocks = match spec.kind {
        ModelKind::ModelA => diagonal_blocks(spec, &psi, m, hmax),
        ModelKind::ModelBFivar | ModelKind::ModelCVarfi => {
            let coefs = ma_coefficients(spec, &companion, &psi, m);
            blocks_from_coefficients(&coefs, s, &spec.sigma2, hmax)
        }
    };

    if opts.tail == TailCorrection::Asymptotic {
        let pi = pi_total(&companion)?;
        for (h, block) in blocks.iter_mut().enumerate() {
            for a in 0..s {
                for b in 0..s {
                    block[(a, b)] += match spec.kind {
                        ModelKind::ModelA => {
                            if a == b {
                                spec.sigma2[a]
                                    * power_tail(
                                        &psi[a],
                                        &psi[a],
                                        spec.orders[a],
                                        spec.orders[a],
                                        h,
                                        m,
                                    )
                            } else {
                                0.0
                            }
                        }
                        ModelKind::ModelBFivar => {
                            let amp: f64 = (0..s)
                                .map(|c| pi[(a, c)] * pi[(b, c)] * spec.sigma2[c])
                                .sum();
                            amp * power_tail(&psi[a], &psi[b], spec.orders[a], spec.orders[b], h, m)
                        }
                        ModelKind::ModelCVarfi => (0..s)
                            .map(|i| {
                                pi[(a, i)]
                                    * pi[(b, i)]
                                    * spec.sigma2[i]
                                    * power_tail(
                                        &psi[i],
                                        &psi[i],
                                        spec.orders[i],
                                        spec.orders[i],
                                        h,
                                        m,
                                    )
                            })
                            .sum(),
                    };
                }
            }
        }
    }
    Ok(blocks)
}

/// Exact periodic autocovariances for lags `0..=jmax`.
pub fn exact_pacvf(spec: &PeriodicModelSpec, jmax: usize, opts: &ExactOptions) -> Result<Pacvf> {
    let hmax = max_block_lag(jmax, spec.seasons);
    let blocks = exact_block_autocovariances(spec, hmax, opts)?;
    let meta = PacvfMeta {
        kind: Some(spec.kind),
        truncation: Some(opts.truncation),
        tail: Some(opts.tail),
        ..PacvfMeta::default()
    };
    let mut out = Pacvf::new(spec.seasons, jmax, PacvfMethod::Exact, meta);
    out.fill_from_blocks(&blocks);
    Ok(out)
}

fn diagonal_blocks(
    spec: &PeriodicModelSpec,
    psi: &[Vec<f64>],
    m: usize,
    hmax: usize,
) -> Vec<DMatrix<f64>> {
    let s = spec.seasons;
    (0..=hmax)
        .map(|h| {
            let mut block = DMatrix::zeros(s, s);
            for a in 0..s {
                if h <= m {
                    let p = &psi[a];
                    let sum: f64 = p[..=m - h].iter().zip(&p[h..=m]).map(|(x, y)| x * y).sum();
                    block[(a, a)] = spec.sigma2[a] * sum;
                }
            }
            block
        })
        .collect()
}

/// Number of `Pi_j` terms worth keeping.
fn pi_horizon(companion: &CompanionForm) -> Vec<DMatrix<f64>> {
    let order = companion.order().max(1);
    let mut pis = pi_matrices(companion, 0);
    let scale = pis[0].amax().max(f64::MIN_POSITIVE);
    let inv0 = pis[0].clone();
    let lifted: Vec<DMatrix<f64>> = companion.phi.iter().map(|m| &inv0 * m).collect();
    let mut quiet = 0;
    while pis.len() < PI_MAX_TERMS {
        let j = pis.len();
        let s = companion.seasons;
        let mut next = DMatrix::zeros(s, s);
        for (i, a) in lifted.iter().enumerate().take(j) {
            next += a * &pis[j - 1 - i];
        }
        let negligible = next.amax() <= PI_NEGLIGIBLE * scale;
        pis.push(next);
        quiet = if negligible { quiet + 1 } else { 0 };
        if quiet >= order {
            pis.truncate(pis.len() - quiet);
            break;
        }
    }
    pis
}

/// Moving-average coefficients of the stacked process with `Psi_k = 0`
/// for `k > m`, flattened row-major: `coefs[j * S * S + a * S + c]`.
fn ma_coefficients(
    spec: &PeriodicModelSpec,
    companion: &CompanionForm,
    psi: &[Vec<f64>],
    m: usize,
) -> Vec<f64> {
    let s = spec.seasons;
    let pis = pi_horizon(companion);
    let horizon = pis.len() - 1;
    let len = m + horizon + 1;
    let mut coefs = vec![0.0; len * s * s];
    match spec.kind {
        ModelKind::ModelBFivar => {
            // C_j = sum_k Psi_k Pi_{j-k}: row a of Pi_{j-k} scaled by psi_k(D_a)
            for j in 0..len {
                let block = &mut coefs[j * s * s..(j + 1) * s * s];
                let lo = j.saturating_sub(horizon);
                for k in lo..=j.min(m) {
                    let pi = &pis[j - k];
                    for a in 0..s {
                        let w = psi[a][k];
                        for c in 0..s {
                            block[a * s + c] += w * pi[(a, c)];
                        }
                    }
                }
            }
        }
        ModelKind::ModelCVarfi => {
            // H_j = sum_k Pi_{j-k} Psi_k: column c of Pi_{j-k} scaled by psi_k(D_c)
            for j in 0..len {
                let block = &mut coefs[j * s * s..(j + 1) * s * s];
                let lo = j.saturating_sub(horizon);
                for k in lo..=j.min(m) {
                    let pi = &pis[j - k];
                    for a in 0..s {
                        for c in 0..s {
                            block[a * s + c] += pi[(a, c)] * psi[c][k];
                        }
                    }
                }
            }
        }
        ModelKind::ModelA => unreachable!("model A uses the diagonal path"),
    }
    coefs
}

/// `Gamma(h) = sum_j Coef_j Omega Coef_{j+h}'`.
fn blocks_from_coefficients(
    coefs: &[f64],
    s: usize,
    sigma2: &[f64],
    hmax: usize,
) -> Vec<DMatrix<f64>> {
    let ss = s * s;
    let len = coefs.len() / ss;
    let scaled: Vec<f64> = coefs
        .iter()
        .enumerate()
        .map(|(i, v)| v * sigma2[i % s])
        .collect();
    (0..=hmax)
        .map(|h| {
            let mut acc = vec![0.0; ss];
            if h < len {
                for j in 0..len - h {
                    let left = &scaled[j * ss..(j + 1) * ss];
                    let right = &coefs[(j + h) * ss..(j + h + 1) * ss];
                    for a in 0..s {
                        let la = &left[a * s..(a + 1) * s];
                        for b in 0..s {
                            let rb = &right[b * s..(b + 1) * s];
                            acc[a * s + b] += la.iter().zip(rb).map(|(x, y)| x * y).sum::<f64>();
                        }
                    }
                }
            }
            DMatrix::from_row_slice(s, s, &acc)
        })
        .collect()
}

/// Approximates `sum_{k > m} psi_{k-h}(a) psi_k(b)` from the power-law form
/// `psi_n(d) ~ n^{d-1} (1 + d (d - 1) / (2n)) / Gamma(d)`, anchored at the
/// exact term `k = m + 1` and summed by Euler-Maclaurin.
pub(crate) fn power_tail(psi_a: &[f64], psi_b: &[f64], a: f64, b: f64, h: usize, m: usize) -> f64 {
    let k0 = m + 1;
    if k0 < h {
        // h beyond the truncation: nothing meaningful to anchor on
        return 0.0;
    }
    let f0 = psi_a[k0 - h] * psi_b[k0];
    if f0 == 0.0 {
        return 0.0;
    }
    let alpha = a + b - 2.0;
    let kappa = 0.5 * a * (a - 1.0) + 0.5 * b * (b - 1.0) - (a - 1.0) * h as f64;
    let x0 = k0 as f64;
    // f(x) ~ A x^alpha + B x^(alpha - 1)
    let c = f0 / x0.powf(alpha);
    let big_a = c * (1.0 - kappa / x0);
    let big_b = c * kappa;
    let integral =
        big_a * x0.powf(alpha + 1.0) / (-alpha - 1.0) + big_b * x0.powf(alpha) / (-alpha);
    let deriv = big_a * alpha * x0.powf(alpha - 1.0) + big_b * (alpha - 1.0) * x0.powf(alpha - 2.0);
    integral + 0.5 * f0 - deriv / 12.0
}

/// `Gamma(1 - Di - Dk) / (Gamma(Dk) Gamma(1 - Dk))`, zero when `Dk = 0`.
pub fn hyperbolic_prefactor(d_i: f64, d_k: f64) -> f64 {
    if d_k == 0.0 {
        return 0.0;
    }
    gamma(1.0 - d_i - d_k) / (gamma(d_k) * gamma(1.0 - d_k))
}

/// `Pi Omega Pi'`: entry `(l, m)` is `Pi_l' Omega Pi_m` over rows of `Pi = Phi(1)^{-1}`.
pub fn fivar_amplitudes(spec: &PeriodicModelSpec) -> Result<DMatrix<f64>> {
    let pi = pi_total(&spec.check_stationary()?)?;
    Ok(&pi * spec.omega() * pi.transpose())
}

/// Seasons (1-based) attaining the largest fractional order, by exact equality.
pub fn dominant_seasons(spec: &PeriodicModelSpec) -> Vec<usize> {
    let d_max = spec.d_max();
    spec.orders
        .iter()
        .enumerate()
        .filter(|(_, &d)| d == d_max)
        .map(|(i, _)| i + 1)
        .collect()
}

/// `sum_{i in F1} Pi(l, i) Pi(m, i) sigma_i^2`.
pub fn varfi_amplitudes(spec: &PeriodicModelSpec) -> Result<DMatrix<f64>> {
    let pi = pi_total(&spec.check_stationary()?)?;
    let s = spec.seasons;
    let dominant = dominant_seasons(spec);
    Ok(DMatrix::from_fn(s, s, |l, m| {
        dominant
            .iter()
            .map(|&i| pi[(l, i - 1)] * pi[(m, i - 1)] * spec.sigma2[i - 1])
            .sum()
    }))
}

/// Large-lag approximation for the PSFI-PAR (FIVAR) process:
/// `(h+delta)^{D_s + D_s' - 1} Gamma(1-D_s-D_s') / (Gamma(D_s') Gamma(1-D_s')) Pi_s' Omega Pi_s'`.
pub fn asymptotic_pacvf_fivar(spec: &PeriodicModelSpec, jmax: usize) -> Result<Pacvf> {
    let amp = fivar_amplitudes(spec)?;
    let s = spec.seasons;
    let mut meta = PacvfMeta {
        kind: Some(spec.kind),
        ..PacvfMeta::default()
    };
    meta.degenerate = spec.orders.contains(&0.0);
    let mut out = Pacvf::new(s, jmax, PacvfMethod::AsymptoticFivar, meta);
    for season in 1..=s {
        for j in 0..=jmax {
            let lag = decompose_lag(j, season, s);
            let target = lag.target_season(s);
            let (d_s, d_t) = (spec.orders[season - 1], spec.orders[target - 1]);
            out.gamma[season - 1][j] = if lag.block_lag() == 0 {
                f64::NAN
            } else {
                (lag.block_lag() as f64).powf(d_s + d_t - 1.0)
                    * hyperbolic_prefactor(d_s, d_t)
                    * amp[(season - 1, target - 1)]
            };
        }
    }
    Ok(out)
}

/// Large-lag approximation for the PAR-PSFI (VARFI) process:
/// `(h+delta)^{2 Dmax - 1} Gamma(1-2Dmax) / (Gamma(Dmax) Gamma(1-Dmax)) sum_{i in F1} Pi(s,i) Pi(s',i) sigma_i^2`.
pub fn asymptotic_pacvf_varfi(spec: &PeriodicModelSpec, jmax: usize) -> Result<Pacvf> {
    let amp = varfi_amplitudes(spec)?;
    let s = spec.seasons;
    let d_max = spec.d_max();
    let prefactor = hyperbolic_prefactor(d_max, d_max);
    let meta = PacvfMeta {
        kind: Some(spec.kind),
        degenerate: d_max == 0.0,
        ..PacvfMeta::default()
    };
    let mut out = Pacvf::new(s, jmax, PacvfMethod::AsymptoticVarfi, meta);
    for season in 1..=s {
        for j in 0..=jmax {
            let lag = decompose_lag(j, season, s);
            let target = lag.target_season(s);
            out.gamma[season - 1][j] = if lag.block_lag() == 0 {
                f64::NAN
            } else {
                (lag.block_lag() as f64).powf(2.0 * d_max - 1.0)
                    * prefactor
                    * amp[(season - 1, target - 1)]
            };
        }
    }
    Ok(out)
}

/// Sample periodic autocovariances of a simulated path.
pub fn empirical_pacvf(sample: &SeriesSample, jmax: usize, centering: Centering) -> Result<Pacvf> {
    let mut out = empirical_pacvf_from(&sample.values, sample.seasons, jmax, centering)?;
    out.meta.kind = Some(sample.kind);
    out.meta.truncation = Some(sample.truncation);
    Ok(out)
}

/// `gamma_hat^(s)(j) = (1/N) sum_tau (x_{s+S tau} - m_s)(x_{s+S tau+j} - m_{s+j})`
/// over the `N` available pairs. Observation `values[0]` is season 1.
pub fn empirical_pacvf_from(
    values: &[f64],
    seasons: usize,
    jmax: usize,
    centering: Centering,
) -> Result<Pacvf> {
    if seasons == 0 {
        return Err(Error::InvalidSpec("S must be at least 1".into()));
    }
    let required = seasons * (jmax / seasons + 2);
    if values.len() < required {
        return Err(Error::InsufficientData {
            required,
            actual: values.len(),
        });
    }
    let means: Vec<f64> = match centering {
        Centering::Zero => vec![0.0; seasons],
        Centering::SeasonalMean => (0..seasons)
            .map(|s| {
                let (sum, n) = values
                    .iter()
                    .skip(s)
                    .step_by(seasons)
                    .fold((0.0, 0usize), |(a, n), v| (a + v, n + 1));
                sum / n as f64
            })
            .collect(),
    };
    let meta = PacvfMeta {
        sample_size: Some(values.len()),
        centering: Some(centering),
        ..PacvfMeta::default()
    };
    let mut out = Pacvf::new(seasons, jmax, PacvfMethod::Empirical, meta);
    for s in 0..seasons {
        for j in 0..=jmax {
            let other = (s + j) % seasons;
            let mut acc = 0.0;
            let mut count = 0usize;
            let mut t = s;
            while t + j < values.len() {
                acc += (values[t] - means[s]) * (values[t + j] - means[other]);
                count += 1;
                t += seasons;
            }
            out.gamma[s][j] = acc / count as f64;
        }
    }
    Ok(out)
}

/// Least-squares slope of `log gamma^(s)(S h + nu)` against `log(h + delta)`
/// for `h` in `hmin..=hmax`.
pub fn decay_slope(
    pacvf: &Pacvf,
    season: usize,
    nu: usize,
    hmin: usize,
    hmax: usize,
) -> Result<f64> {
    let s = pacvf.seasons;
    if season == 0 || season > s || nu >= s {
        return Err(Error::InvalidSpec(format!(
            "season {season} / offset {nu} outside S = {s}"
        )));
    }
    if hmin >= hmax {
        return Err(Error::InvalidSpec("slope fit needs hmin < hmax".into()));
    }
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for h in hmin..=hmax {
        let j = s * h + nu;
        if j == 0 || j > pacvf.jmax() {
            return Err(Error::InvalidSpec(format!(
                "lag {j} outside 1..={}",
                pacvf.jmax()
            )));
        }
        let lag = decompose_lag(j, season, s);
        let value = pacvf.get(season, j);
        if value.is_nan() || value <= 0.0 {
            return Err(Error::NonPositive {
                season,
                lag: j,
                value,
            });
        }
        if lag.block_lag() == 0 {
            return Err(Error::InvalidSpec(format!("h + delta = 0 at lag {j}")));
        }
        xs.push((lag.block_lag() as f64).ln());
        ys.push(value.ln());
    }
    Ok(ls_slope(&xs, &ys))
}

fn ls_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    sxy / sxx
}
