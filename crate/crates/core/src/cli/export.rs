use std::f64::consts::PI;
use std::io::Write;

use clap::ValueEnum;
use nalgebra::DVector;
use serde::Serialize;

use super::config::RunConfig;
use super::run::{build_norm, build_pair, Timings};
use crate::error::{Error, Result};
use crate::generators::BandlimitedGenerator;
use crate::matrix::{AssociatedNorm, EllipsoidGeometry};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ExportKind {
    /// `ψ̂` on a grid over its support's bounding box.
    Psi,
    /// `φ̂` likewise.
    Phi,
    /// Boundaries of `B^m(I_*)` for `m = 0..=3` (2-D only).
    Shells,
    /// Points of `Γ` and `Γ*` with `‖k‖_∞ ≤ resolution`.
    Lattice,
}

impl ExportKind {
    pub fn default_resolution(self) -> usize {
        match self {
            ExportKind::Psi | ExportKind::Phi => 201,
            ExportKind::Shells => 360,
            ExportKind::Lattice => 4,
        }
    }
}

fn num(x: f64) -> String {
    format!("{x:.16e}")
}

fn linspace(lo: f64, hi: f64, n: usize) -> impl Iterator<Item = f64> {
    (0..n).map(move |i| {
        if i + 1 == n {
            hi
        } else {
            lo + (hi - lo) * i as f64 / (n - 1) as f64
        }
    })
}

fn generator_rows(g: &BandlimitedGenerator, resolution: usize) -> Result<(Vec<String>, Vec<Vec<String>>)> {
    if resolution < 2 {
        return Err(Error::Config("resolution must be at least 2".into()));
    }
    let (lo, hi) = g.support().bounding_box();
    let rows = match g.dim() {
        1 => linspace(lo[0], hi[0], resolution)
            .map(|x| vec![num(x), num(g.eval(&DVector::from_element(1, x)))])
            .collect(),
        2 => {
            let xs: Vec<f64> = linspace(lo[0], hi[0], resolution).collect();
            let ys: Vec<f64> = linspace(lo[1], hi[1], resolution).collect();
            xs.iter()
                .flat_map(|&x| ys.iter().map(move |&y| (x, y)))
                .map(|(x, y)| vec![num(x), num(y), num(g.eval(&DVector::from_vec(vec![x, y])))])
                .collect()
        }
        n => return Err(Error::UnsupportedDimension(n)),
    };
    let mut head: Vec<String> = (1..=g.dim()).map(|i| format!("x{i}")).collect();
    head.push("value".into());
    Ok((head, rows))
}

fn shell_rows(norm: &AssociatedNorm, resolution: usize) -> Result<(Vec<String>, Vec<Vec<String>>)> {
    if norm.dim() != 2 {
        return Err(Error::UnsupportedDimension(norm.dim()));
    }
    if resolution == 0 {
        return Err(Error::Config("resolution must be positive".into()));
    }
    let mut rows = Vec::new();
    for m in 0..=3 {
        let geo = EllipsoidGeometry::new(&norm.quadratic_form_for_power(m));
        for i in 0..resolution {
            let theta = 2.0 * PI * i as f64 / resolution as f64;
            let p = geo.surface_point(&[theta])?;
            rows.push(vec![m.to_string(), num(theta), num(p[0]), num(p[1])]);
        }
    }
    Ok((vec!["m".into(), "theta".into(), "x1".into(), "x2".into()], rows))
}

fn lattice_rows(cfg: &RunConfig, resolution: usize) -> Result<(Vec<String>, Vec<Vec<String>>)> {
    let built = build_pair(cfg, &mut Timings::default())?;
    let n = built.pair.lattice.dim();
    let w = resolution as i64;
    let count = (2 * w + 1).pow(n as u32);
    let mut rows = Vec::new();
    for (name, l) in [
        ("gamma", &built.pair.lattice.gamma),
        ("gamma_star", &built.pair.lattice.gamma_star),
    ] {
        for lin in 0..count {
            let mut rest = lin;
            let k: Vec<i64> = (0..n)
                .map(|_| {
                    let v = rest % (2 * w + 1) - w;
                    rest /= 2 * w + 1;
                    v
                })
                .rev()
                .collect();
            let x = l.point(&k);
            let mut row = vec![name.to_string()];
            row.extend(k.iter().map(|v| v.to_string()));
            row.extend(x.iter().map(|v| num(*v)));
            rows.push(row);
        }
    }
    let mut head = vec!["set".to_string()];
    head.extend((1..=n).map(|i| format!("k{i}")));
    head.extend((1..=n).map(|i| format!("x{i}")));
    Ok((head, rows))
}

/// Writes the selected data set as CSV; returns the number of data rows.
pub fn export(cfg: &RunConfig, what: ExportKind, resolution: Option<usize>, out: &mut dyn Write) -> Result<usize> {
    let res = resolution.unwrap_or(what.default_resolution());
    let (head, rows) = match what {
        ExportKind::Psi => generator_rows(&build_pair(cfg, &mut Timings::default())?.pair.psi, res)?,
        ExportKind::Phi => generator_rows(&build_pair(cfg, &mut Timings::default())?.pair.phi, res)?,
        ExportKind::Shells => shell_rows(&*build_norm(cfg)?, res)?,
        ExportKind::Lattice => lattice_rows(cfg, res)?,
    };
    let mut w = csv::Writer::from_writer(out);
    w.write_record(&head)?;
    for r in &rows {
        w.write_record(r)?;
    }
    w.flush()?;
    Ok(rows.len())
}
