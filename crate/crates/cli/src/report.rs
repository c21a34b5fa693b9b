use std::io::{self, Write};

use nalgebra::DMatrix;
use perarfima::{CompanionForm, MaTable, ModelKind, Pacvf, PeriodicModelSpec, SeriesSample};
use serde::Serialize;

use crate::Format;

/// Result of one subcommand.
#[derive(Debug, Clone, PartialEq)]
pub enum Report {
    Series(SeriesSample),
    Pacvf(PacvfReport),
    Companion(CompanionReport),
    Matrices(MatricesReport),
    Figures(Vec<FigureSeries>),
    Ma(MaTable),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PacvfReport {
    pub grids: Vec<Pacvf>,
    /// Monte Carlo standard errors of the first grid, `[s - 1][j]`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub std_error: Option<Vec<Vec<f64>>>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CompanionReport {
    pub seasons: usize,
    pub order: usize,
    pub phi0: Vec<Vec<f64>>,
    pub phi: Vec<Vec<Vec<f64>>>,
    pub root_moduli: Vec<f64>,
    pub max_modulus: f64,
    pub stationary: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pi_total: Option<Vec<Vec<f64>>>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MatricesReport {
    pub kind: ModelKind,
    #[serde(rename = "D")]
    pub orders: Vec<f64>,
    /// `Pi_l' Omega Pi_m`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fivar: Option<Vec<Vec<f64>>>,
    /// `sum over dominant seasons i of Pi(l, i) Pi(m, i) sigma_i^2`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub varfi: Option<Vec<Vec<f64>>>,
}

/// One curve family of a figure: a PACVF grid for one model and one method.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FigureSeries {
    pub figure: String,
    pub model: ModelKind,
    #[serde(rename = "D")]
    pub orders: Vec<f64>,
    pub pacvf: Pacvf,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub std_error: Option<Vec<Vec<f64>>>,
}

pub(crate) fn rows(m: &DMatrix<f64>) -> Vec<Vec<f64>> {
    (0..m.nrows())
        .map(|r| m.row(r).iter().copied().collect())
        .collect()
}

impl CompanionReport {
    pub fn new(
        c: &CompanionForm,
        roots: Vec<f64>,
        max_modulus: f64,
        pi: Option<DMatrix<f64>>,
    ) -> Self {
        CompanionReport {
            seasons: c.seasons,
            order: c.order(),
            phi0: rows(&c.phi0),
            phi: c.phi.iter().map(rows).collect(),
            root_moduli: roots,
            max_modulus,
            stationary: pi.is_some(),
            pi_total: pi.as_ref().map(rows),
        }
    }
}

impl MatricesReport {
    pub fn new(spec: &PeriodicModelSpec, fivar: DMatrix<f64>, varfi: DMatrix<f64>) -> Self {
        MatricesReport {
            kind: spec.kind,
            orders: spec.orders.clone(),
            fivar: Some(rows(&fivar)),
            varfi: Some(rows(&varfi)),
        }
    }

    pub fn only_fivar(self) -> Self {
        MatricesReport {
            varfi: None,
            ..self
        }
    }

    pub fn only_varfi(self) -> Self {
        MatricesReport {
            fivar: None,
            ..self
        }
    }
}

fn write_grid<W: Write>(out: &mut W, name: &str, lag: usize, grid: &[Vec<f64>]) -> io::Result<()> {
    for (r, row) in grid.iter().enumerate() {
        for (c, v) in row.iter().enumerate() {
            writeln!(out, "{name},{lag},{},{},{v}", r + 1, c + 1)?;
        }
    }
    Ok(())
}

impl Report {
    pub fn render<W: Write>(&self, format: Format, out: &mut W) -> io::Result<()> {
        match format {
            Format::Json => {
                match self {
                    Report::Series(s) => serde_json::to_writer_pretty(&mut *out, s),
                    Report::Pacvf(p) => serde_json::to_writer_pretty(&mut *out, p),
                    Report::Companion(c) => serde_json::to_writer_pretty(&mut *out, c),
                    Report::Matrices(m) => serde_json::to_writer_pretty(&mut *out, m),
                    Report::Figures(f) => serde_json::to_writer_pretty(&mut *out, f),
                    Report::Ma(m) => serde_json::to_writer_pretty(&mut *out, m),
                }
                .map_err(io::Error::other)?;
                writeln!(out)
            }
            Format::Csv => self.render_csv(out),
        }
    }

    fn render_csv<W: Write>(&self, out: &mut W) -> io::Result<()> {
        match self {
            Report::Series(s) => s.write_csv(out),
            Report::Ma(m) => m.write_csv(out),
            Report::Pacvf(p) => {
                writeln!(out, "{}", Pacvf::CSV_HEADER)?;
                for g in &p.grids {
                    g.write_rows(&mut *out, "")?;
                }
                Ok(())
            }
            Report::Companion(c) => {
                writeln!(out, "matrix,lag,row,col,value")?;
                write_grid(out, "phi0", 0, &c.phi0)?;
                for (i, m) in c.phi.iter().enumerate() {
                    write_grid(out, "phi", i + 1, m)?;
                }
                if let Some(pi) = &c.pi_total {
                    write_grid(out, "pi_total", 0, pi)?;
                }
                for (k, m) in c.root_moduli.iter().enumerate() {
                    writeln!(out, "root_modulus,0,{},1,{m}", k + 1)?;
                }
                Ok(())
            }
            Report::Matrices(m) => {
                writeln!(out, "grid,row,col,value")?;
                for (name, grid) in [("fivar", &m.fivar), ("varfi", &m.varfi)] {
                    if let Some(grid) = grid {
                        for (r, row) in grid.iter().enumerate() {
                            for (c, v) in row.iter().enumerate() {
                                writeln!(out, "{name},{},{},{v}", r + 1, c + 1)?;
                            }
                        }
                    }
                }
                Ok(())
            }
            Report::Figures(series) => {
                writeln!(out, "figure,model,{},se", Pacvf::CSV_HEADER)?;
                for f in series {
                    let prefix = format!("{},{},", f.figure, f.model.label());
                    // rows with an extra standard-error column; blank for theory curves
                    let mut buf = Vec::new();
                    f.pacvf.write_rows(&mut buf, &prefix)?;
                    let text = String::from_utf8(buf).map_err(io::Error::other)?;
                    let seasons = f.pacvf.seasons;
                    let width = f.pacvf.jmax() + 1;
                    for (i, line) in text.lines().enumerate() {
                        let se = f
                            .std_error
                            .as_ref()
                            .map(|se| se[i / width][i % width].to_string())
                            .unwrap_or_default();
                        debug_assert!(i / width < seasons);
                        writeln!(out, "{line},{se}")?;
                    }
                }
                Ok(())
            }
        }
    }
}
