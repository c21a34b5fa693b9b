//! Binomial coefficients of the fractional difference `(1 - z)^d` and
//! integration `(1 - z)^{-d}` operators, and their action at unit or
//! seasonal lag.
//!
//! Coefficients always come from the ratio recurrences
//! `c_j = c_{j-1} (j - 1 - d) / j` (difference) and
//! `c_j = c_{j-1} (j - 1 + d) / j` (integration), which never touch the
//! poles of the Gamma function.

use rustfft::num_complex::Complex;
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default truncation length for fractional filters used in simulation.
pub const DEFAULT_TRUNCATION: usize = 10_000;

/// Direct convolution below this many multiply-adds, FFT above.
const FFT_THRESHOLD: usize = 1 << 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FracKind {
    /// Coefficients of `(1 - z)^d`.
    Difference,
    /// Coefficients of `(1 - z)^{-d}`.
    Integration,
}

/// Coefficients `c_0 ..= c_M` of a truncated fractional operator.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FracCoeffs {
    pub d: f64,
    pub kind: FracKind,
    pub coeffs: Vec<f64>,
}

impl FracCoeffs {
    pub fn new(d: f64, kind: FracKind, m: usize) -> Self {
        let coeffs = match kind {
            FracKind::Difference => recurrence(-d, m),
            FracKind::Integration => recurrence(d, m),
        };
        FracCoeffs { d, kind, coeffs }
    }

    /// Truncation length `M` (the last retained index).
    pub fn truncation(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.coeffs
    }
}

/// `c_j = c_{j-1} (j - 1 + a) / j`: coefficients of `(1 - z)^{-a}`.
fn recurrence(a: f64, m: usize) -> Vec<f64> {
    let mut c = Vec::with_capacity(m + 1);
    c.push(1.0);
    for j in 1..=m {
        let jf = j as f64;
        c.push(c[j - 1] * (jf - 1.0 + a) / jf);
    }
    c
}

/// Coefficients of the difference operator `(1 - z)^d`, `j = 0..=m`.
pub fn pi_coeffs(d: f64, m: usize) -> FracCoeffs {
    FracCoeffs::new(d, FracKind::Difference, m)
}

/// Coefficients of the integration operator `(1 - z)^{-d}`, `j = 0..=m`.
pub fn psi_coeffs(d: f64, m: usize) -> FracCoeffs {
    FracCoeffs::new(d, FracKind::Integration, m)
}

/// Applies `(1 - L^S)^{d}` (`Difference`) or `(1 - L^S)^{-d}` (`Integration`)
/// using only in-sample history:
/// `out[t] = sum_{j <= t / S} c_j x[t - S j]`.
pub fn apply_seasonal(
    series: &[f64],
    season_count: usize,
    d: f64,
    kind: FracKind,
) -> Result<Vec<f64>> {
    if season_count == 0 {
        return Err(Error::InvalidSpec(
            "seasonal period S must be at least 1".into(),
        ));
    }
    let n = series.len();
    if n == 0 {
        return Ok(Vec::new());
    }
    let coeffs = FracCoeffs::new(d, kind, (n - 1) / season_count);
    let mut out = vec![0.0; n];
    for s in 0..season_count.min(n) {
        let sub: Vec<f64> = series[s..].iter().step_by(season_count).copied().collect();
        let filtered = causal_filter(&sub, coeffs.as_slice());
        for (k, v) in filtered.into_iter().enumerate() {
            out[s + k * season_count] = v;
        }
    }
    Ok(out)
}

/// Causal linear filter `out[t] = sum_{k=0}^{min(t, K)} kernel[k] x[t - k]`,
/// `t = 0..x.len()`. Switches to FFT convolution for large inputs.
pub fn causal_filter(x: &[f64], kernel: &[f64]) -> Vec<f64> {
    let n = x.len();
    if n == 0 || kernel.is_empty() {
        return vec![0.0; n];
    }
    let k = kernel.len().min(n);
    if n.saturating_mul(k) <= FFT_THRESHOLD {
        direct_filter(x, &kernel[..k])
    } else {
        fft_filter(x, &kernel[..k])
    }
}

fn direct_filter(x: &[f64], kernel: &[f64]) -> Vec<f64> {
    (0..x.len())
        .map(|t| {
            let upto = t.min(kernel.len() - 1);
            (0..=upto).map(|k| kernel[k] * x[t - k]).sum()
        })
        .collect()
}

fn fft_filter(x: &[f64], kernel: &[f64]) -> Vec<f64> {
    let n = x.len();
    // no wrap-around into outputs 0..n requires len >= n + K - 1
    let len = (n + kernel.len()).next_power_of_two();
    let mut planner = FftPlanner::<f64>::new();
    let fwd = planner.plan_fft_forward(len);
    let inv = planner.plan_fft_inverse(len);

    let mut a: Vec<Complex<f64>> = x.iter().map(|&v| Complex::new(v, 0.0)).collect();
    a.resize(len, Complex::new(0.0, 0.0));
    let mut b: Vec<Complex<f64>> = kernel.iter().map(|&v| Complex::new(v, 0.0)).collect();
    b.resize(len, Complex::new(0.0, 0.0));
    fwd.process(&mut a);
    fwd.process(&mut b);
    for (ai, bi) in a.iter_mut().zip(&b) {
        *ai *= bi;
    }
    inv.process(&mut a);
    let scale = 1.0 / len as f64;
    a.iter().take(n).map(|c| c.re * scale).collect()
}
