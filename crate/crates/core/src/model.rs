//! Periodic AR model specification and its stacked S-variate companion form.
//!
//! Season `s` (1-based) at block `tau` is observation `t = S tau + s`. The
//! univariate recursion `x_t = sum_i phi_{s,i} x_{t-i} + e_t` becomes
//! `Phi0 X_tau = sum_{i=1}^{P} Phi_i X_{tau-i} + e_tau` with
//!
//! * `Phi0[s][j] = -phi_{s, s-j}` below the diagonal, 1 on it, 0 above;
//! * `Phi_i[s][j] = phi_{s, iS+s-j}` when `1 <= iS+s-j <= p`.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Moduli within this distance of 1 are treated as unit roots.
const UNIT_ROOT_TOL: f64 = 1e-10;

/// Which of the three model classes a specification describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ModelKind {
    /// `(1 - L^S)^{D_t} X_t = u_t`: seasonal fractional integration only.
    #[serde(rename = "A")]
    ModelA,
    /// `Phi_t(L) (1 - L^S)^{D_t} Y_t = u_t` (PSFI-PAR, FIVAR form).
    #[serde(rename = "B")]
    ModelBFivar,
    /// `Phi_t(L) Z_t = (1 - L^S)^{-D_t} u_t` (PAR-PSFI, VARFI form).
    #[serde(rename = "C")]
    ModelCVarfi,
}

impl ModelKind {
    pub fn label(self) -> &'static str {
        match self {
            ModelKind::ModelA => "A",
            ModelKind::ModelBFivar => "B",
            ModelKind::ModelCVarfi => "C",
        }
    }
}

/// Full parameterization of a periodic seasonally fractionally integrated
/// AR process. Serialized as
/// `{"S":4,"p":1,"phi":[[0.7],[0.8],[0.6],[0.4]],"D":[..],"sigma2":[..],"kind":"B"}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PeriodicModelSpec {
    #[serde(rename = "S")]
    pub seasons: usize,
    pub p: usize,
    /// `phi[s][i]`: coefficient of season `s + 1` on lag `i + 1`.
    #[serde(default)]
    pub phi: Vec<Vec<f64>>,
    /// Seasonal fractional orders `D_s`.
    #[serde(rename = "D")]
    pub orders: Vec<f64>,
    /// Innovation variances `sigma_s^2`.
    pub sigma2: Vec<f64>,
    pub kind: ModelKind,
}

/// AR coefficients of the four-season example used throughout the figures.
pub const EXAMPLE_AR: [f64; 4] = [0.7, 0.8, 0.6, 0.4];

impl PeriodicModelSpec {
    /// Pure seasonal fractional integration with unit innovation variances.
    pub fn model_a(orders: &[f64]) -> Self {
        let s = orders.len();
        PeriodicModelSpec {
            seasons: s,
            p: 0,
            phi: vec![Vec::new(); s],
            orders: orders.to_vec(),
            sigma2: vec![1.0; s],
            kind: ModelKind::ModelA,
        }
    }

    /// PAR(1) per season with unit innovation variances, of the given kind.
    pub fn par1(kind: ModelKind, ar: &[f64], orders: &[f64]) -> Self {
        assert_eq!(ar.len(), orders.len(), "one AR coefficient per season");
        PeriodicModelSpec {
            seasons: ar.len(),
            p: 1,
            phi: ar.iter().map(|&a| vec![a]).collect(),
            orders: orders.to_vec(),
            sigma2: vec![1.0; ar.len()],
            kind,
        }
    }

    /// The example FIVAR/VARFI process with `phi = (0.7, 0.8, 0.6, 0.4)`.
    pub fn example(kind: ModelKind, orders: &[f64]) -> Self {
        Self::par1(kind, &EXAMPLE_AR, orders)
    }

    pub fn with_kind(&self, kind: ModelKind) -> Self {
        PeriodicModelSpec {
            kind,
            ..self.clone()
        }
    }

    pub fn with_orders(&self, orders: &[f64]) -> Self {
        PeriodicModelSpec {
            orders: orders.to_vec(),
            ..self.clone()
        }
    }

    /// Checks shapes and parameter bands, filling empty `phi` rows when `p = 0`.
    pub fn validate(&self) -> Result<()> {
        let s = self.seasons;
        if s == 0 {
            return Err(Error::InvalidSpec("S must be at least 1".into()));
        }
        if self.orders.len() != s {
            return Err(Error::InvalidSpec(format!(
                "D has {} entries, expected S = {s}",
                self.orders.len()
            )));
        }
        if self.sigma2.len() != s {
            return Err(Error::InvalidSpec(format!(
                "sigma2 has {} entries, expected S = {s}",
                self.sigma2.len()
            )));
        }
        if self.kind == ModelKind::ModelA && self.p != 0 {
            return Err(Error::InvalidSpec("model A requires p = 0".into()));
        }
        let phi_ok = if self.p == 0 {
            self.phi.is_empty() || (self.phi.len() == s && self.phi.iter().all(Vec::is_empty))
        } else {
            self.phi.len() == s && self.phi.iter().all(|row| row.len() == self.p)
        };
        if !phi_ok {
            return Err(Error::InvalidSpec(format!(
                "phi must be an S x p = {s} x {} array",
                self.p
            )));
        }
        if self.phi.iter().flatten().any(|v| !v.is_finite()) {
            return Err(Error::InvalidSpec("phi entries must be finite".into()));
        }
        for (i, &d) in self.orders.iter().enumerate() {
            if !(0.0..0.5).contains(&d) {
                return Err(Error::OrderOutOfRange {
                    season: i + 1,
                    value: d,
                });
            }
        }
        for (i, &v) in self.sigma2.iter().enumerate() {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::InvalidSpec(format!(
                    "sigma2 for season {} must be positive, got {v}",
                    i + 1
                )));
            }
        }
        Ok(())
    }

    /// Validates the specification and the AR stationarity condition.
    pub fn check_stationary(&self) -> Result<CompanionForm> {
        self.validate()?;
        let companion = build_companion(self);
        let max = max_root_modulus(&companion);
        if max >= 1.0 - UNIT_ROOT_TOL {
            return Err(Error::Nonstationary { max_modulus: max });
        }
        Ok(companion)
    }

    /// `phi_{s,i}` with 1-based season and lag; zero outside `1..=p`.
    pub fn coefficient(&self, season: usize, lag: usize) -> f64 {
        if lag == 0 || lag > self.p {
            return 0.0;
        }
        self.phi[season - 1][lag - 1]
    }

    pub fn d_max(&self) -> f64 {
        self.orders.iter().copied().fold(0.0, f64::max)
    }

    /// `Omega = diag(sigma_1^2, ..., sigma_S^2)`.
    pub fn omega(&self) -> DMatrix<f64> {
        DMatrix::from_diagonal(&nalgebra::DVector::from_vec(self.sigma2.clone()))
    }
}

/// The S-variate representation `Phi0, Phi_1 .. Phi_P`.
#[derive(Debug, Clone, PartialEq)]
pub struct CompanionForm {
    pub seasons: usize,
    pub phi0: DMatrix<f64>,
    /// `phi[i - 1]` is `Phi_i`.
    pub phi: Vec<DMatrix<f64>>,
}

impl CompanionForm {
    /// Multivariate AR order `P`.
    pub fn order(&self) -> usize {
        self.phi.len()
    }

    /// `Phi0^{-1}`; `Phi0` is unit lower triangular so this always exists.
    pub fn phi0_inverse(&self) -> DMatrix<f64> {
        let eye = DMatrix::identity(self.seasons, self.seasons);
        self.phi0
            .solve_lower_triangular(&eye)
            .expect("unit lower triangular matrix is invertible")
    }

    /// `Phi(1) = Phi0 - sum_i Phi_i`.
    pub fn phi_at_one(&self) -> DMatrix<f64> {
        self.phi.iter().fold(self.phi0.clone(), |acc, m| acc - m)
    }

    /// Monic block companion matrix of `I z^P - sum_i Phi0^{-1} Phi_i z^{P-i}`.
    pub fn block_companion(&self) -> DMatrix<f64> {
        let s = self.seasons;
        let p = self.order();
        if p == 0 {
            return DMatrix::zeros(0, 0);
        }
        let inv0 = self.phi0_inverse();
        let mut big = DMatrix::zeros(s * p, s * p);
        for (i, m) in self.phi.iter().enumerate() {
            big.view_mut((0, i * s), (s, s)).copy_from(&(&inv0 * m));
        }
        for i in 1..p {
            big.view_mut((i * s, (i - 1) * s), (s, s))
                .fill_with_identity();
        }
        big
    }
}

/// `P = floor((p + 1) / S) + 1`.
pub fn companion_order(p: usize, seasons: usize) -> usize {
    (p + 1) / seasons + 1
}

/// Stacks the periodic AR coefficients into `Phi0, Phi_1 .. Phi_P`.
pub fn build_companion(spec: &PeriodicModelSpec) -> CompanionForm {
    let s = spec.seasons;
    let order = companion_order(spec.p, s);
    let mut phi0 = DMatrix::identity(s, s);
    for row in 1..=s {
        for col in 1..row {
            phi0[(row - 1, col - 1)] = -spec.coefficient(row, row - col);
        }
    }
    let phi = (1..=order)
        .map(|i| {
            DMatrix::from_fn(s, s, |r, c| {
                let lag = (i * s + r + 1) as isize - (c + 1) as isize;
                if lag >= 1 {
                    spec.coefficient(r + 1, lag as usize)
                } else {
                    0.0
                }
            })
        })
        .collect();
    CompanionForm {
        seasons: s,
        phi0,
        phi,
    }
}

/// Moduli of the roots of `det(I z^P - sum_i Phi0^{-1} Phi_i z^{P-i}) = 0`,
/// sorted in decreasing order (`S P` values, with multiplicity).
pub fn stationarity_roots(companion: &CompanionForm) -> Vec<f64> {
    let big = companion.block_companion();
    if big.nrows() == 0 {
        return Vec::new();
    }
    let mut moduli: Vec<f64> = big.complex_eigenvalues().iter().map(|z| z.norm()).collect();
    moduli.sort_by(|a, b| b.total_cmp(a));
    moduli
}

pub fn max_root_modulus(companion: &CompanionForm) -> f64 {
    stationarity_roots(companion)
        .first()
        .copied()
        .unwrap_or(0.0)
}

/// Coefficients `Pi_0 .. Pi_J` of `Phi(L)^{-1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct PiSequence {
    pub matrices: Vec<DMatrix<f64>>,
}

impl PiSequence {
    pub fn truncation(&self) -> usize {
        self.matrices.len() - 1
    }

    /// `sum_{j=0}^{J} Pi_j`.
    pub fn partial_sum(&self) -> DMatrix<f64> {
        let s = self.matrices[0].nrows();
        self.matrices
            .iter()
            .fold(DMatrix::zeros(s, s), |acc, m| acc + m)
    }
}

/// `Pi_0 = Phi0^{-1}`, `Pi_j = Phi0^{-1} sum_{i=1}^{min(j,P)} Phi_i Pi_{j-i}`.
pub fn pi_sequence(companion: &CompanionForm, truncation: usize) -> Result<PiSequence> {
    let max = max_root_modulus(companion);
    if max >= 1.0 - UNIT_ROOT_TOL {
        return Err(Error::Nonstationary { max_modulus: max });
    }
    Ok(PiSequence {
        matrices: pi_matrices(companion, truncation),
    })
}

pub(crate) fn pi_matrices(companion: &CompanionForm, truncation: usize) -> Vec<DMatrix<f64>> {
    let inv0 = companion.phi0_inverse();
    let lifted: Vec<DMatrix<f64>> = companion.phi.iter().map(|m| &inv0 * m).collect();
    let mut out = Vec::with_capacity(truncation + 1);
    out.push(inv0);
    for j in 1..=truncation {
        let s = companion.seasons;
        let mut next = DMatrix::zeros(s, s);
        for (i, a) in lifted.iter().enumerate().take(j) {
            next += a * &out[j - 1 - i];
        }
        out.push(next);
    }
    out
}

/// `Pi = Phi(1)^{-1}` by direct solve.
pub fn pi_total(companion: &CompanionForm) -> Result<DMatrix<f64>> {
    let at_one = companion.phi_at_one();
    let s = companion.seasons;
    let lu = at_one.lu();
    if lu.determinant().abs() < 1e-14 {
        return Err(Error::SingularAtUnity);
    }
    lu.solve(&DMatrix::identity(s, s))
        .ok_or(Error::SingularAtUnity)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn model_b() -> PeriodicModelSpec {
        PeriodicModelSpec::example(ModelKind::ModelBFivar, &[0.1, 0.2, 0.3, 0.4])
    }

    #[test]
    fn companion_matches_model_b_display() {
        let c = build_companion(&model_b());
        assert_eq!(c.order(), 1);
        let expected_phi0 = DMatrix::from_row_slice(
            4,
            4,
            &[
                1.0, 0.0, 0.0, 0.0, -0.8, 1.0, 0.0, 0.0, 0.0, -0.6, 1.0, 0.0, 0.0, 0.0, -0.4, 1.0,
            ],
        );
        assert_eq!(c.phi0, expected_phi0);
        let mut expected_phi1 = DMatrix::zeros(4, 4);
        expected_phi1[(0, 3)] = 0.7;
        assert_eq!(c.phi[0], expected_phi1);
    }

    #[test]
    fn pure_fractional_model_has_identity_companion() {
        let c = build_companion(&PeriodicModelSpec::model_a(&[0.1, 0.2, 0.3, 0.4]));
        assert_eq!(c.phi0, DMatrix::identity(4, 4));
        assert!(c.phi.iter().all(|m| m.iter().all(|&v| v == 0.0)));
        assert!(stationarity_roots(&c).iter().all(|&r| r == 0.0));
    }

    #[test]
    fn scalar_ar2_companion() {
        let spec = PeriodicModelSpec {
            seasons: 1,
            p: 2,
            phi: vec![vec![0.5, -0.3]],
            orders: vec![0.2],
            sigma2: vec![1.0],
            kind: ModelKind::ModelBFivar,
        };
        let c = build_companion(&spec);
        // floor(3 / 1) + 1
        assert_eq!(c.order(), 4);
        assert_eq!(c.phi0[(0, 0)], 1.0);
        assert_eq!(c.phi[0][(0, 0)], 0.5);
        assert_eq!(c.phi[1][(0, 0)], -0.3);
        assert_eq!(c.phi[2][(0, 0)], 0.0);
        assert_eq!(c.phi[3][(0, 0)], 0.0);
    }

    #[test]
    fn companion_order_formula() {
        assert_eq!(companion_order(1, 4), 1);
        assert_eq!(companion_order(0, 4), 1);
        assert_eq!(companion_order(3, 4), 2);
        assert_eq!(companion_order(7, 4), 3);
        assert_eq!(companion_order(2, 1), 4);
    }

    #[test]
    fn model_b_root_is_product_of_coefficients() {
        let roots = stationarity_roots(&build_companion(&model_b()));
        assert_eq!(roots.len(), 4);
        assert_relative_eq!(roots[0], 0.7 * 0.8 * 0.6 * 0.4, epsilon = 1e-10);
        assert!(roots[1..].iter().all(|&r| r < 1e-10));
    }

    #[test]
    fn unit_root_is_flagged() {
        let spec = PeriodicModelSpec {
            seasons: 1,
            p: 1,
            phi: vec![vec![1.0]],
            orders: vec![0.0],
            sigma2: vec![1.0],
            kind: ModelKind::ModelBFivar,
        };
        let c = build_companion(&spec);
        assert_relative_eq!(max_root_modulus(&c), 1.0, epsilon = 1e-12);
        assert!(matches!(
            spec.check_stationary(),
            Err(Error::Nonstationary { .. })
        ));
        assert!(pi_sequence(&c, 10).is_err());
        assert_eq!(pi_total(&c), Err(Error::SingularAtUnity));
    }

    #[test]
    fn pi_total_row_one_for_model_b() {
        let pi = pi_total(&build_companion(&model_b())).unwrap();
        // forward substitution on the displayed Phi(1), rounded to 5 places
        let expected = [1.15527, 0.19409, 0.32348, 0.80869];
        for (k, e) in expected.iter().enumerate() {
            assert!((pi[(0, k)] - e).abs() < 5e-6);
        }
        assert!((pi[(3, 3)].powi(2) - 1.3347).abs() < 1e-3);
    }

    #[test]
    fn pi_total_inverts_phi_at_one() {
        let c = build_companion(&model_b());
        let prod = c.phi_at_one() * pi_total(&c).unwrap();
        assert!((prod - DMatrix::identity(4, 4)).amax() < 1e-12);
    }

    #[test]
    fn pi_sequence_identity_without_ar() {
        let c = build_companion(&PeriodicModelSpec::model_a(&[0.3, 0.3]));
        let seq = pi_sequence(&c, 5).unwrap();
        assert_eq!(seq.matrices[0], DMatrix::identity(2, 2));
        assert!(seq.matrices[1..].iter().all(|m| m.amax() == 0.0));
        assert_eq!(pi_total(&c).unwrap(), DMatrix::identity(2, 2));
    }

    #[test]
    fn pi_sequence_inverts_the_polynomial() {
        let c = build_companion(&model_b());
        let seq = pi_sequence(&c, 30).unwrap();
        assert!((&c.phi0 * &seq.matrices[0] - DMatrix::identity(4, 4)).amax() < 1e-12);
        // Phi(L) Pi(L) = I coefficientwise
        for j in 1..=30 {
            let mut acc = &c.phi0 * &seq.matrices[j];
            for i in 1..=c.order().min(j) {
                acc -= &c.phi[i - 1] * &seq.matrices[j - i];
            }
            assert!(acc.amax() < 1e-10);
        }
    }

    #[test]
    fn pi_sequence_sums_to_pi_total() {
        let c = build_companion(&model_b());
        let seq = pi_sequence(&c, 50).unwrap();
        let total = pi_total(&c).unwrap();
        assert!((seq.partial_sum() - total).amax() < 1e-10);
    }

    #[test]
    fn validation_rejects_bad_specs() {
        let mut spec = model_b();
        spec.orders[2] = 0.6;
        assert_eq!(
            spec.validate(),
            Err(Error::OrderOutOfRange {
                season: 3,
                value: 0.6
            })
        );
        let mut spec = model_b();
        spec.sigma2[0] = 0.0;
        assert!(spec.validate().is_err());
        let mut spec = model_b();
        spec.kind = ModelKind::ModelA;
        assert!(spec.validate().is_err());
        let mut spec = model_b();
        spec.phi[1] = vec![0.1, 0.2];
        assert!(spec.validate().is_err());
    }

    #[test]
    fn spec_json_round_trip() {
        let json = r#"{"S":4,"p":1,"phi":[[0.7],[0.8],[0.6],[0.4]],"D":[0.1,0.2,0.3,0.4],"sigma2":[1,1,1,1],"kind":"C"}"#;
        let spec: PeriodicModelSpec = serde_json::from_str(json).unwrap();
        assert_eq!(
            spec,
            PeriodicModelSpec::example(ModelKind::ModelCVarfi, &[0.1, 0.2, 0.3, 0.4])
        );
        let back: PeriodicModelSpec =
            serde_json::from_str(&serde_json::to_string(&spec).unwrap()).unwrap();
        assert_eq!(back, spec);
        let a: PeriodicModelSpec =
            serde_json::from_str(r#"{"S":2,"p":0,"D":[0.1,0.2],"sigma2":[1,2],"kind":"A"}"#)
                .unwrap();
        assert!(a.validate().is_ok());
    }
}
