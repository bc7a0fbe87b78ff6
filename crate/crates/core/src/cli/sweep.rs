use std::io::Write;

use num_complex::Complex64 as C64;
use rayon::prelude::*;

use super::config::{Axis, ModelKind, SweepConfig};
use crate::error::Result;
use crate::ho::{ho_chi_total, HOModel};
use crate::hydrogen::HydrogenResponse;
use crate::tensor::{atomic_volume, dimensionless, Matrix3, ResponseTensor};

pub const CSV_HEADER: &str = "omega,re_chi_11,im_chi_11,re_chi_12,im_chi_12,re_chi_13,im_chi_13,\
re_chi_21,im_chi_21,re_chi_22,im_chi_22,re_chi_23,im_chi_23,\
re_chi_31,im_chi_31,re_chi_32,im_chi_32,re_chi_33,im_chi_33,re_chi12_dimless,im_chi12_dimless";

#[derive(Clone, Debug, PartialEq)]
pub struct SweepRow {
    /// rad/s
    pub omega: f64,
    /// SI, C m / T
    pub chi: Matrix3,
    pub chi12_dimless: C64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepResult {
    pub model: ModelKind,
    pub axis: Axis,
    pub rows: Vec<SweepRow>,
}

enum Evaluator {
    Ho(HOModel),
    Hydrogen(Box<HydrogenResponse>),
}

impl Evaluator {
    fn chi(&self, omega: f64) -> Result<ResponseTensor> {
        match self {
            Evaluator::Ho(m) => ho_chi_total(m, omega),
            Evaluator::Hydrogen(r) => r.chi_total(omega),
        }
    }
}

/// Evaluate the total response on the configured grid. Frequencies run in
/// parallel; rows come back sorted by omega. The first pole in grid order
/// aborts the sweep.
pub fn run_sweep(cfg: &SweepConfig) -> Result<SweepResult> {
    cfg.validate()?;
    let (eval, volume) = match cfg.model {
        ModelKind::Ho => {
            let m = cfg.ho_model()?;
            (Evaluator::Ho(m), m.volume(cfg.volume_factor))
        }
        ModelKind::Hydrogen => {
            let r = HydrogenResponse::new(&cfg.hydrogen_model()?)?;
            (Evaluator::Hydrogen(Box::new(r)), atomic_volume())
        }
    };
    let results: Vec<Result<SweepRow>> = cfg
        .grid()
        .into_par_iter()
        .map(|omega| {
            let t = eval.chi(omega)?;
            let d = dimensionless(&t, volume)?;
            Ok(SweepRow { omega, chi: t.entries, chi12_dimless: d[0][1] })
        })
        .collect();
    let mut rows = results.into_iter().collect::<Result<Vec<_>>>()?;
    rows.sort_by(|a, b| a.omega.total_cmp(&b.omega));
    Ok(SweepResult { model: cfg.model, axis: cfg.axis, rows })
}

impl SweepResult {
    pub fn write_csv(&self, mut w: impl Write) -> Result<()> {
        writeln!(w, "{CSV_HEADER}")?;
        for row in &self.rows {
            let mut line = format!("{:e}", self.axis.convert(row.omega));
            for z in row.chi.iter().flatten().chain(std::iter::once(&row.chi12_dimless)) {
                line.push_str(&format!(",{:e},{:e}", z.re, z.im));
            }
            writeln!(w, "{line}")?;
        }
        Ok(())
    }

    pub fn to_csv_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf).expect("writing to memory");
        String::from_utf8(buf).expect("ascii output")
    }
}
