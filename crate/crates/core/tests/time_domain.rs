//! Exact autocovariances checked against a direct univariate computation:
//! each observation is written as a weighted sum of past innovations and the
//! covariance is the weighted inner product of two such weight vectors.

use perarfima::{exact_pacvf, psi_coeffs, ExactOptions, ModelKind, PeriodicModelSpec};

const AR_LAGS: usize = 600;

fn season_of(t: i64, s: usize) -> usize {
    t.rem_euclid(s as i64) as usize + 1
}

/// `w[l]`: response of the PAR recursion at time `t` to `eps_{t-l}`.
fn par_response(spec: &PeriodicModelSpec, t: i64) -> Vec<f64> {
    let s = spec.seasons;
    // memo[season - 1][l] is w_l at any time of that season:
    // w_l(t) = sum_i phi_{s(t), i} w_{l-i}(t - i)
    let mut memo: Vec<Vec<f64>> = vec![vec![0.0; AR_LAGS + 1]; s];
    for row in memo.iter_mut() {
        row[0] = 1.0;
    }
    for l in 1..=AR_LAGS {
        for season in 1..=s {
            let mut acc = 0.0;
            for i in 1..=spec.p.min(l) {
                let earlier = season_of(season as i64 - 1 - i as i64, s);
                acc += spec.coefficient(season, i) * memo[earlier - 1][l - i];
            }
            memo[season - 1][l] = acc;
        }
    }
    memo[season_of(t, s) - 1].clone()
}

/// Innovation weights `g[u]` of `X_t` on `eps_{t-u}`, with the fractional
/// filter truncated at `m` blocks.
fn innovation_weights(spec: &PeriodicModelSpec, t: i64, m: usize) -> Vec<f64> {
    let s = spec.seasons;
    let len = m * s + AR_LAGS + 1;
    let mut g = vec![0.0; len];
    match spec.kind {
        ModelKind::ModelBFivar | ModelKind::ModelA => {
            let psi = psi_coeffs(spec.orders[season_of(t, s) - 1], m).coeffs;
            for (k, pk) in psi.iter().enumerate() {
                let w = par_response(spec, t - (k * s) as i64);
                for (l, wl) in w.iter().enumerate() {
                    g[k * s + l] += pk * wl;
                }
            }
        }
        ModelKind::ModelCVarfi => {
            let w = par_response(spec, t);
            for (l, wl) in w.iter().enumerate() {
                let psi = psi_coeffs(spec.orders[season_of(t - l as i64, s) - 1], m).coeffs;
                for (k, pk) in psi.iter().enumerate() {
                    g[l + k * s] += wl * pk;
                }
            }
        }
    }
    g
}

fn time_domain_cov(spec: &PeriodicModelSpec, season: usize, lag: usize, m: usize) -> f64 {
    let s = spec.seasons;
    let t = season as i64 - 1;
    let a = innovation_weights(spec, t, m);
    let b = innovation_weights(spec, t + lag as i64, m);
    (0..a.len())
        .filter(|u| u + lag < b.len())
        .map(|u| a[u] * b[u + lag] * spec.sigma2[season_of(t - u as i64, s) - 1])
        .sum()
}

fn check(spec: &PeriodicModelSpec, jmax: usize, m: usize) {
    let exact = exact_pacvf(spec, jmax, &ExactOptions::truncated(m)).unwrap();
    for season in 1..=spec.seasons {
        for lag in 0..=jmax {
            let direct = time_domain_cov(spec, season, lag, m);
            let got = exact.get(season, lag);
            assert!(
                (got - direct).abs() < 1e-10 * direct.abs().max(1.0),
                "{:?} s={season} j={lag}: {got} vs {direct}",
                spec.kind
            );
        }
    }
}

#[test]
fn fivar_example_matches_direct_sum() {
    let spec = PeriodicModelSpec::example(ModelKind::ModelBFivar, &[0.1, 0.2, 0.3, 0.4]);
    check(&spec, 9, 150);
}

#[test]
fn varfi_example_matches_direct_sum() {
    let spec = PeriodicModelSpec::example(ModelKind::ModelCVarfi, &[0.1, 0.2, 0.3, 0.4]);
    check(&spec, 9, 150);
}

#[test]
fn model_a_matches_direct_sum() {
    let mut spec = PeriodicModelSpec::model_a(&[0.45, 0.0, 0.25]);
    spec.sigma2 = vec![0.5, 2.0, 1.5];
    check(&spec, 7, 200);
}

#[test]
fn higher_order_ar_with_unequal_variances() {
    // p > S, so the block representation needs more than one lag matrix
    for kind in [ModelKind::ModelBFivar, ModelKind::ModelCVarfi] {
        let spec = PeriodicModelSpec {
            seasons: 2,
            p: 3,
            phi: vec![vec![0.3, -0.2, 0.1], vec![0.5, 0.1, -0.1]],
            orders: vec![0.35, 0.15],
            sigma2: vec![1.0, 0.25],
            kind,
        };
        check(&spec, 7, 150);
    }
}

#[test]
fn single_season_reduces_to_arfima() {
    let spec = PeriodicModelSpec::par1(ModelKind::ModelBFivar, &[0.5], &[0.2]);
    let c = spec.with_kind(ModelKind::ModelCVarfi);
    check(&spec, 5, 300);
    // with one season the two filters commute, truncation included
    let eb = exact_pacvf(&spec, 5, &ExactOptions::truncated(300)).unwrap();
    let ec = exact_pacvf(&c, 5, &ExactOptions::truncated(300)).unwrap();
    for j in 0..=5 {
        assert!((eb.get(1, j) - ec.get(1, j)).abs() < 1e-12);
    }
}
