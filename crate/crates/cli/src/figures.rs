//! Built-in reproduction targets.

use std::str::FromStr;

use perarfima::acvf::{asymptotic_pacvf_fivar, asymptotic_pacvf_varfi};
use perarfima::{exact_pacvf, replicate_pacvf, summarize, ModelKind, PeriodicModelSpec};

use crate::{CliResult, FigureSeries, RunConfig};

/// Figure data sets: model A for fig1..fig4, model B alone (figB), model C
/// alone (figC) and B against C for fig5..fig8.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FigureTarget {
    Fig1,
    Fig2,
    Fig3,
    Fig4,
    Fig5,
    Fig6,
    Fig7,
    Fig8,
    FigB,
    FigC,
}

const D_1234: [f64; 4] = [0.1, 0.2, 0.3, 0.4];
const D_1244: [f64; 4] = [0.1, 0.2, 0.4, 0.4];
const D_1444: [f64; 4] = [0.1, 0.4, 0.4, 0.4];
const D_4444: [f64; 4] = [0.4, 0.4, 0.4, 0.4];

impl FigureTarget {
    pub const ALL: [FigureTarget; 10] = [
        FigureTarget::Fig1,
        FigureTarget::Fig2,
        FigureTarget::Fig3,
        FigureTarget::Fig4,
        FigureTarget::FigB,
        FigureTarget::FigC,
        FigureTarget::Fig5,
        FigureTarget::Fig6,
        FigureTarget::Fig7,
        FigureTarget::Fig8,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FigureTarget::Fig1 => "fig1",
            FigureTarget::Fig2 => "fig2",
            FigureTarget::Fig3 => "fig3",
            FigureTarget::Fig4 => "fig4",
            FigureTarget::Fig5 => "fig5",
            FigureTarget::Fig6 => "fig6",
            FigureTarget::Fig7 => "fig7",
            FigureTarget::Fig8 => "fig8",
            FigureTarget::FigB => "figB",
            FigureTarget::FigC => "figC",
        }
    }

    pub fn orders(self) -> [f64; 4] {
        match self {
            FigureTarget::Fig1 | FigureTarget::Fig5 | FigureTarget::FigB => D_1234,
            FigureTarget::Fig2 | FigureTarget::Fig6 | FigureTarget::FigC => D_1244,
            FigureTarget::Fig3 | FigureTarget::Fig7 => D_1444,
            FigureTarget::Fig4 | FigureTarget::Fig8 => D_4444,
        }
    }

    pub fn models(self) -> &'static [ModelKind] {
        match self {
            FigureTarget::Fig1 | FigureTarget::Fig2 | FigureTarget::Fig3 | FigureTarget::Fig4 => {
                &[ModelKind::ModelA]
            }
            FigureTarget::FigB => &[ModelKind::ModelBFivar],
            FigureTarget::FigC => &[ModelKind::ModelCVarfi],
            _ => &[ModelKind::ModelBFivar, ModelKind::ModelCVarfi],
        }
    }

    /// Largest plotted lag.
    pub fn jmax(self) -> usize {
        match self {
            FigureTarget::Fig1 | FigureTarget::Fig2 | FigureTarget::Fig3 | FigureTarget::Fig4 => 25,
            // gamma^(s)(4h + nu) for h up to 25
            FigureTarget::FigB => 103,
            _ => 100,
        }
    }

    /// Accepts a single name or `all`.
    pub fn parse_list(name: &str) -> Result<Vec<FigureTarget>, String> {
        if name.eq_ignore_ascii_case("all") {
            return Ok(Self::ALL.to_vec());
        }
        name.parse().map(|t| vec![t])
    }
}

impl FromStr for FigureTarget {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        FigureTarget::ALL
            .iter()
            .copied()
            .find(|t| t.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| {
                format!("unknown figure target '{s}' (expected fig1..fig8, figB, figC or all)")
            })
    }
}

/// Amplitude-grid targets of the `matrices` command.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatrixTarget {
    /// FIVAR amplitudes of the example model B.
    M41,
    /// VARFI amplitudes of the example model C with D = (0.1, 0.2, 0.3, 0.4).
    M42,
}

impl MatrixTarget {
    pub fn default_spec(self) -> PeriodicModelSpec {
        match self {
            MatrixTarget::M41 => PeriodicModelSpec::example(ModelKind::ModelBFivar, &D_1234),
            MatrixTarget::M42 => PeriodicModelSpec::example(ModelKind::ModelCVarfi, &D_1234),
        }
    }
}

impl FromStr for MatrixTarget {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "m41" => Ok(MatrixTarget::M41),
            "m42" => Ok(MatrixTarget::M42),
            _ => Err(format!("unknown matrix target '{s}' (expected m41 or m42)")),
        }
    }
}

/// Specification for one model of a figure, taking AR part and variances
/// from `base` when given.
pub fn figure_spec(
    kind: ModelKind,
    orders: &[f64],
    base: Option<&PeriodicModelSpec>,
) -> PeriodicModelSpec {
    match (kind, base) {
        (ModelKind::ModelA, Some(b)) => PeriodicModelSpec {
            sigma2: b.sigma2.clone(),
            ..PeriodicModelSpec::model_a(orders)
        },
        (ModelKind::ModelA, None) => PeriodicModelSpec::model_a(orders),
        (_, Some(b)) => b.with_kind(kind).with_orders(orders),
        (_, None) => PeriodicModelSpec::example(kind, orders),
    }
}

/// Empirical mean (with standard errors), exact and asymptotic curves for
/// every model of `target`.
pub fn figure_series(
    target: FigureTarget,
    base: Option<&PeriodicModelSpec>,
    cfg: &RunConfig,
) -> CliResult<Vec<FigureSeries>> {
    let jmax = cfg.jmax.unwrap_or(target.jmax());
    let orders = target.orders();
    if let Some(b) = base {
        if b.seasons != orders.len() {
            return Err(crate::CliError::Usage(format!(
                "figure targets have S = {}, spec has S = {}",
                orders.len(),
                b.seasons
            )));
        }
    }
    let mut out = Vec::new();
    for &kind in target.models() {
        let spec = figure_spec(kind, &orders, base);
        let runs = replicate_pacvf(
            &spec,
            &cfg.sim_config(),
            cfg.replications,
            jmax,
            cfg.centering,
        )?;
        let summary = summarize(&runs)?;
        let exact = exact_pacvf(&spec, jmax, &cfg.exact_options())?;
        let asymptotic = match kind {
            ModelKind::ModelCVarfi => asymptotic_pacvf_varfi(&spec, jmax)?,
            _ => asymptotic_pacvf_fivar(&spec, jmax)?,
        };
        let series = |pacvf, std_error| FigureSeries {
            figure: target.name().to_string(),
            model: kind,
            orders: orders.to_vec(),
            pacvf,
            std_error,
        };
        out.push(series(summary.mean, Some(summary.std_error)));
        out.push(series(exact, None));
        out.push(series(asymptotic, None));
    }
    Ok(out)
}
