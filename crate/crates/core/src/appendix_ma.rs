//! Moving-average weights of the pure periodic fractional filter
//! `X_t = sum_j Psi_j(t) eps_{t-j}` with time-varying order `d_t`.
//!
//! Three independent routes: the one-line recursion, the explicit sum over
//! compositions of `j`, and forward substitution on the lower-triangular
//! difference operator.

use std::io::{self, Write};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fracdiff::pi_coeffs;

/// Enumeration over `2^{j-1}` compositions stops being practical past this.
pub const MAX_COMPOSITION_ORDER: usize = 14;
/// Size limit for the forward-substitution oracle.
pub const MAX_ORACLE_ORDER: usize = 200;

/// `psi[t - 1][j] = Psi_j(t)` for seasons `t = 1..=S`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MaTable {
    pub orders: Vec<f64>,
    pub psi: Vec<Vec<f64>>,
}

impl MaTable {
    pub fn seasons(&self) -> usize {
        self.orders.len()
    }

    pub fn jmax(&self) -> usize {
        self.psi[0].len() - 1
    }

    /// `Psi_j(t)` with 1-based season.
    pub fn get(&self, season: usize, lag: usize) -> f64 {
        self.psi[season - 1][lag]
    }

    /// Writes `t,j,psi` rows with a header.
    pub fn write_csv<W: Write>(&self, mut out: W) -> io::Result<()> {
        writeln!(out, "t,j,psi")?;
        for (t, row) in self.psi.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                writeln!(out, "{},{},{}", t + 1, j, v)?;
            }
        }
        Ok(())
    }
}

fn check_orders(orders: &[f64]) -> Result<()> {
    if orders.is_empty() {
        return Err(Error::InvalidSpec("need at least one season".into()));
    }
    for (i, &d) in orders.iter().enumerate() {
        if !d.is_finite() {
            return Err(Error::InvalidSpec(format!(
                "season {} has non-finite d",
                i + 1
            )));
        }
    }
    Ok(())
}

/// Season index (0-based) of time `t - back` when `t` is 0-based.
fn wrap(t: usize, back: usize, seasons: usize) -> usize {
    (t as isize - back as isize).rem_euclid(seasons as isize) as usize
}

/// `(1 - L)^{d_t}` coefficients per season: `a[t][i] = pi_i(d_t)`.
fn difference_weights(orders: &[f64], jmax: usize) -> Vec<Vec<f64>> {
    orders.iter().map(|&d| pi_coeffs(d, jmax).coeffs).collect()
}

/// `Psi_0(t) = 1`, `Psi_j(t) = -sum_{i=1}^{j} pi_i(d_t) Psi_{j-i}(t - i)`.
pub fn ma_recursion(orders: &[f64], jmax: usize) -> Result<MaTable> {
    check_orders(orders)?;
    let s = orders.len();
    let a = difference_weights(orders, jmax);
    let mut psi = vec![vec![0.0; jmax + 1]; s];
    for row in psi.iter_mut() {
        row[0] = 1.0;
    }
    for j in 1..=jmax {
        for t in 0..s {
            let mut acc = 0.0;
            for i in 1..=j {
                acc += a[t][i] * psi[wrap(t, i, s)][j - i];
            }
            psi[t][j] = -acc;
        }
    }
    Ok(MaTable {
        orders: orders.to_vec(),
        psi,
    })
}

/// `Psi_j(t)` as a signed sum over ordered compositions `j = i_1 + ... + i_k`:
/// `(-1)^k pi_{i_1}(d_t) pi_{i_2}(d_{t-i_1}) ...`. Returns the value and the
/// number of compositions visited. `season` is 1-based.
pub fn ma_composition_sum(orders: &[f64], season: usize, lag: usize) -> Result<(f64, u64)> {
    check_orders(orders)?;
    let s = orders.len();
    if season == 0 || season > s {
        return Err(Error::InvalidSpec(format!(
            "season {season} outside 1..={s}"
        )));
    }
    if lag > MAX_COMPOSITION_ORDER {
        return Err(Error::OrderTooLarge {
            order: lag,
            limit: MAX_COMPOSITION_ORDER,
        });
    }
    if lag == 0 {
        return Ok((1.0, 1));
    }
    let a = difference_weights(orders, lag);
    let mut total = 0.0;
    let mut count = 0u64;
    // bit b set means a part ends after position b + 1
    for mask in 0u32..(1 << (lag - 1)) {
        let mut term = 1.0;
        let mut t = season - 1;
        let mut start = 0;
        for pos in 1..=lag {
            if pos == lag || mask & (1 << (pos - 1)) != 0 {
                let part = pos - start;
                term *= -a[t][part];
                t = wrap(t, part, s);
                start = pos;
            }
        }
        total += term;
        count += 1;
    }
    Ok((total, count))
}

/// Impulse responses of the lower-triangular operator
/// `y_k + sum_{i=1}^{k} pi_i(d_{season(k)}) y_{k-i}`, solved by forward
/// substitution with a unit impulse at each starting season.
pub fn ma_oracle(orders: &[f64], jmax: usize) -> Result<MaTable> {
    check_orders(orders)?;
    if jmax > MAX_ORACLE_ORDER {
        return Err(Error::OrderTooLarge {
            order: jmax,
            limit: MAX_ORACLE_ORDER,
        });
    }
    let s = orders.len();
    let a = difference_weights(orders, jmax);
    let mut psi = vec![vec![0.0; jmax + 1]; s];
    for t0 in 0..s {
        // y_k is X at time t0 + k; Psi_j(t0 + j) = y_j
        let mut y = vec![0.0; jmax + 1];
        for k in 0..=jmax {
            let season = (t0 + k) % s;
            let rhs = if k == 0 { 1.0 } else { 0.0 };
            let lower: f64 = (1..=k).map(|i| a[season][i] * y[k - i]).sum();
            y[k] = rhs - lower;
        }
        for (j, &v) in y.iter().enumerate() {
            psi[(t0 + j) % s][j] = v;
        }
    }
    Ok(MaTable {
        orders: orders.to_vec(),
        psi,
    })
}
