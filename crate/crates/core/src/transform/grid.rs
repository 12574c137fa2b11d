use std::path::Path;

use nalgebra::DVector;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// JSON sidecar describing a grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridHeader {
    pub dim: usize,
    pub lo: Vec<f64>,
    pub extent: Vec<f64>,
    pub points_per_axis: usize,
    pub spacing: Vec<f64>,
}

/// Complex samples on a uniform cell-centered grid over a box in ℝ¹ or ℝ².
///
/// Node `i` along an axis sits at `lo + (i + ½)h` with `h = extent / points`.
/// Values are stored with the last axis varying fastest.
#[derive(Debug, Clone, PartialEq)]
pub struct FrequencyGrid {
    lo: Vec<f64>,
    extent: Vec<f64>,
    points: usize,
    values: Vec<Complex64>,
}

impl FrequencyGrid {
    pub fn zeros(lo: Vec<f64>, extent: Vec<f64>, points: usize) -> Result<Self> {
        let n = lo.len();
        if n == 0 || n > 2 {
            return Err(Error::UnsupportedDimension(n));
        }
        if extent.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: extent.len(),
            });
        }
        if !points.is_power_of_two() || points < 2 {
            return Err(Error::Config(format!(
                "points per axis must be a power of two, got {points}"
            )));
        }
        if extent.iter().chain(lo.iter()).any(|v| !v.is_finite()) || extent.iter().any(|e| *e <= 0.0) {
            return Err(Error::Config("grid extents must be positive and finite".into()));
        }
        Ok(Self {
            lo,
            extent,
            points,
            values: vec![Complex64::new(0.0, 0.0); points.pow(n as u32)],
        })
    }

    /// A grid sampled from `f` at every node.
    pub fn from_fn(
        lo: Vec<f64>,
        extent: Vec<f64>,
        points: usize,
        f: impl Fn(&DVector<f64>) -> Complex64,
    ) -> Result<Self> {
        let mut g = Self::zeros(lo, extent, points)?;
        for i in 0..g.len() {
            g.values[i] = f(&g.node(i));
        }
        Ok(g)
    }

    /// Same geometry, zero values.
    pub fn zeros_like(&self) -> Self {
        Self {
            values: vec![Complex64::new(0.0, 0.0); self.values.len()],
            ..self.clone()
        }
    }

    pub fn dim(&self) -> usize {
        self.lo.len()
    }

    pub fn points_per_axis(&self) -> usize {
        self.points
    }

    pub fn lo(&self) -> &[f64] {
        &self.lo
    }

    pub fn extent(&self) -> &[f64] {
        &self.extent
    }

    pub fn spacing(&self) -> Vec<f64> {
        self.extent.iter().map(|e| e / self.points as f64).collect()
    }

    /// `hⁿ`, the Riemann-sum weight.
    pub fn cell_volume(&self) -> f64 {
        self.spacing().iter().product()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn node(&self, idx: usize) -> DVector<f64> {
        let h = self.spacing();
        match self.dim() {
            1 => DVector::from_element(1, self.lo[0] + (idx as f64 + 0.5) * h[0]),
            _ => {
                let (i, j) = (idx / self.points, idx % self.points);
                DVector::from_vec(vec![
                    self.lo[0] + (i as f64 + 0.5) * h[0],
                    self.lo[1] + (j as f64 + 0.5) * h[1],
                ])
            }
        }
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [Complex64] {
        &mut self.values
    }

    /// Discrete `L²` norm `(Σ |v|² hⁿ)^{1/2}`.
    pub fn l2_norm(&self) -> f64 {
        (self.values.iter().map(|v| v.norm_sqr()).sum::<f64>() * self.cell_volume()).sqrt()
    }

    pub fn header(&self) -> GridHeader {
        GridHeader {
            dim: self.dim(),
            lo: self.lo.clone(),
            extent: self.extent.clone(),
            points_per_axis: self.points,
            spacing: self.spacing(),
        }
    }

    /// CSV with columns `x1[,x2],real,imag` and one row per node.
    pub fn write_csv(&self, path: &Path) -> Result<()> {
        let mut w = csv::Writer::from_path(path)?;
        let mut head: Vec<String> = (1..=self.dim()).map(|i| format!("x{i}")).collect();
        head.extend(["real".to_string(), "imag".to_string()]);
        w.write_record(&head)?;
        for (i, v) in self.values.iter().enumerate() {
            let mut row: Vec<String> = self.node(i).iter().map(|x| format!("{x:.16e}")).collect();
            row.push(format!("{:.16e}", v.re));
            row.push(format!("{:.16e}", v.im));
            w.write_record(&row)?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn write_header(&self, path: &Path) -> Result<()> {
        std::fs::write(path, serde_json::to_string_pretty(&self.header())?)?;
        Ok(())
    }

    /// Reads values written by [`write_csv`](Self::write_csv) onto the grid
    /// described by `header`.
    pub fn read_csv(header: &GridHeader, path: &Path) -> Result<Self> {
        let mut g = Self::zeros(header.lo.clone(), header.extent.clone(), header.points_per_axis)?;
        let mut r = csv::Reader::from_path(path)?;
        let n = g.dim();
        let mut count = 0;
        for (i, rec) in r.records().enumerate() {
            let rec = rec?;
            if i >= g.len() || rec.len() != n + 2 {
                return Err(Error::Config(format!(
                    "grid CSV row {} does not match the header",
                    i + 1
                )));
            }
            let parse = |s: &str| {
                s.trim()
                    .parse::<f64>()
                    .map_err(|e| Error::Config(format!("bad number {s:?}: {e}")))
            };
            g.values[i] = Complex64::new(parse(&rec[n])?, parse(&rec[n + 1])?);
            count += 1;
        }
        if count != g.len() {
            return Err(Error::Config(format!(
                "grid CSV has {count} rows, expected {}",
                g.len()
            )));
        }
        Ok(g)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn geometry() {
        let g = FrequencyGrid::zeros(vec![-1.0, 0.0], vec![2.0, 4.0], 4).unwrap();
        assert_eq!(g.len(), 16);
        assert_eq!(g.spacing(), vec![0.5, 1.0]);
        assert_eq!(g.node(0).as_slice(), &[-0.75, 0.5]);
        assert_eq!(g.node(5).as_slice(), &[-0.25, 1.5]);
        assert!((g.cell_volume() - 0.5).abs() < 1e-15);
        assert!(FrequencyGrid::zeros(vec![0.0], vec![1.0], 6).is_err());
        assert!(matches!(
            FrequencyGrid::zeros(vec![0.0; 3], vec![1.0; 3], 4),
            Err(Error::UnsupportedDimension(3))
        ));
    }

    #[test]
    fn csv_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let g = FrequencyGrid::from_fn(vec![0.0, 0.0], vec![1.0, 1.0], 8, |x| {
            Complex64::new(x[0].sin(), x[1] * 1e-7 + 1.0 / 3.0)
        })
        .unwrap();
        let p = dir.path().join("g.csv");
        g.write_csv(&p).unwrap();
        let back = FrequencyGrid::read_csv(&g.header(), &p).unwrap();
        assert_eq!(back, g);
    }
}
