use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::path::Path;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use super::FrequencyGrid;
use crate::error::{Error, Result};
use crate::generators::{BandlimitedGenerator, DualFramePair};
use crate::verification::{orbit, star_bounds};

/// Nodes summed per partial accumulator. Fixed so the reduction order, and
/// therefore every output bit, is independent of the thread count.
const CHUNK: usize = 512;

/// Frame coefficients `c_{j,k}` keyed by scale and lattice index.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct CoefficientTable {
    entries: BTreeMap<(i32, Vec<i64>), Complex64>,
}

impl CoefficientTable {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, j: i32, k: &[i64]) -> Option<Complex64> {
        self.entries.get(&(j, k.to_vec())).copied()
    }

    pub fn insert(&mut self, j: i32, k: Vec<i64>, c: Complex64) {
        self.entries.insert((j, k), c);
    }

    pub fn iter(&self) -> impl Iterator<Item = (i32, &[i64], Complex64)> {
        self.entries.iter().map(|((j, k), c)| (*j, k.as_slice(), *c))
    }

    /// Scales present in the table, ascending.
    pub fn scales(&self) -> Vec<i32> {
        let mut s: Vec<i32> = self.entries.keys().map(|(j, _)| *j).collect();
        s.dedup();
        s
    }

    pub fn max_abs(&self) -> f64 {
        self.entries.values().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Largest `|c_{j,k}|` with `max_i |k_i| == w`, for each window radius `w`.
    pub fn decay_profile(&self) -> Vec<f64> {
        let mut out: Vec<f64> = Vec::new();
        for ((_, k), c) in &self.entries {
            let w = k.iter().map(|v| v.unsigned_abs() as usize).max().unwrap_or(0);
            if out.len() <= w {
                out.resize(w + 1, 0.0);
            }
            out[w] = out[w].max(c.norm());
        }
        out
    }

    /// Linear combination `self + s·other` over the union of keys.
    pub fn axpy(&self, s: Complex64, other: &CoefficientTable) -> CoefficientTable {
        let mut entries = self.entries.clone();
        for (key, c) in &other.entries {
            *entries.entry(key.clone()).or_insert(Complex64::new(0.0, 0.0)) += s * c;
        }
        CoefficientTable { entries }
    }

    /// CSV with columns `j,k1[,k2],real,imag`.
    pub fn write_csv(&self, path: &Path, dim: usize) -> Result<()> {
        let mut w = csv::Writer::from_path(path)?;
        let mut head = vec!["j".to_string()];
        head.extend((1..=dim).map(|i| format!("k{i}")));
        head.extend(["real".to_string(), "imag".to_string()]);
        w.write_record(&head)?;
        for ((j, k), c) in &self.entries {
            let mut row = vec![j.to_string()];
            row.extend(k.iter().map(|v| v.to_string()));
            row.push(format!("{:.16e}", c.re));
            row.push(format!("{:.16e}", c.im));
            w.write_record(&row)?;
        }
        w.flush()?;
        Ok(())
    }
}

/// Analysis parameters.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AnalysisOptions {
    pub j_range: (i32, i32),
    /// Lattice indices satisfy `max_i |k_i| ≤ k_window`.
    pub k_window: i64,
    /// Coefficients with `|c| ≤ drop_tol` are not stored.
    pub drop_tol: f64,
}

fn check_inputs(grid: &FrequencyGrid, pair: &DualFramePair, j_range: (i32, i32)) -> Result<()> {
    let n = pair.psi.dim();
    if n > 2 {
        return Err(Error::UnsupportedDimension(n));
    }
    if grid.dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: grid.dim(),
        });
    }
    if j_range.0 > j_range.1 {
        return Err(Error::Config(format!("empty scale range {:?}", j_range)));
    }
    Ok(())
}

/// Per-node data at one scale: weight and the lattice-coordinate phases `Pᵗ B^{−j} ξ`.
struct ScaleNodes {
    idx: Vec<usize>,
    t: Vec<[f64; 2]>,
    w: Vec<f64>,
}

fn scale_nodes(
    grid: &FrequencyGrid,
    g: &BandlimitedGenerator,
    pt: &DMatrix<f64>,
    b_inv_j: &DMatrix<f64>,
) -> ScaleNodes {
    let rows: Vec<Option<(usize, [f64; 2], f64)>> = (0..grid.len())
        .into_par_iter()
        .map(|i| {
            let eta = b_inv_j * grid.node(i);
            let w = g.eval(&eta);
            if w == 0.0 {
                return None;
            }
            let t = pt * &eta;
            Some((i, [t[0], if t.len() > 1 { t[1] } else { 0.0 }], w))
        })
        .collect();
    let mut out = ScaleNodes {
        idx: Vec::new(),
        t: Vec::new(),
        w: Vec::new(),
    };
    for (i, t, w) in rows.into_iter().flatten() {
        out.idx.push(i);
        out.t.push(t);
        out.w.push(w);
    }
    out
}

/// `z^k` for `k = −K..=K`, `z = e^{2πi·sign·t}`.
fn powers(t: f64, sign: f64, k: i64, buf: &mut Vec<Complex64>) {
    buf.clear();
    let z = Complex64::from_polar(1.0, sign * 2.0 * PI * t);
    // z^{−K} directly keeps the error of the repeated product at O(K ε).
    let mut p = Complex64::from_polar(1.0, -sign * 2.0 * PI * t * k as f64);
    for _ in -k..=k {
        buf.push(p);
        p *= z;
    }
}

/// Analysis coefficients
/// `c_{j,k} = Σ_ξ f̂(ξ) |det A|^{−j/2} e^{2πi⟨B^{−j}ξ, Pk⟩} φ̂(B^{−j}ξ) hⁿ`
/// with `Γ = Pℤⁿ`, for `j` in `opts.j_range`.
pub fn analyze(grid: &FrequencyGrid, pair: &DualFramePair, opts: &AnalysisOptions) -> Result<CoefficientTable> {
    check_inputs(grid, pair, opts.j_range)?;
    let n = grid.dim();
    let kw = opts.k_window;
    let side = (2 * kw + 1) as usize;
    let size = if n == 1 { side } else { side * side };
    let dil = pair.psi.dilation();
    let pt = pair.lattice.gamma.basis().transpose();
    let hvol = grid.cell_volume();
    let vals = grid.values();
    let mut table = CoefficientTable::default();

    for j in opts.j_range.0..=opts.j_range.1 {
        let nodes = scale_nodes(grid, &pair.phi, &pt, &dil.b_pow(-j));
        let scale = dil.det_abs().powf(-0.5 * j as f64) * hvol;
        let order: Vec<usize> = (0..nodes.idx.len())
            .filter(|&m| vals[nodes.idx[m]] != Complex64::new(0.0, 0.0))
            .collect();
        let partials: Vec<Vec<Complex64>> = order
            .par_chunks(CHUNK)
            .map(|chunk| {
                let mut acc = vec![Complex64::new(0.0, 0.0); size];
                let (mut p1, mut p2) = (Vec::new(), Vec::new());
                for &m in chunk {
                    let a = vals[nodes.idx[m]] * (nodes.w[m] * scale);
                    powers(nodes.t[m][0], 1.0, kw, &mut p1);
                    if n == 1 {
                        for (s, p) in acc.iter_mut().zip(&p1) {
                            *s += a * p;
                        }
                    } else {
                        powers(nodes.t[m][1], 1.0, kw, &mut p2);
                        for (r, q1) in p1.iter().enumerate() {
                            let b = a * q1;
                            for (s, q2) in acc[r * side..(r + 1) * side].iter_mut().zip(&p2) {
                                *s += b * q2;
                            }
                        }
                    }
                }
                acc
            })
            .collect();
        let mut acc = vec![Complex64::new(0.0, 0.0); size];
        for part in partials {
            for (s, v) in acc.iter_mut().zip(part) {
                *s += v;
            }
        }
        for (lin, c) in acc.into_iter().enumerate() {
            if c.norm() <= opts.drop_tol {
                continue;
            }
            let k = if n == 1 {
                vec![lin as i64 - kw]
            } else {
                vec![(lin / side) as i64 - kw, (lin % side) as i64 - kw]
            };
            table.insert(j, k, c);
        }
    }
    Ok(table)
}

/// Reconstruction `Σ_{j,k} c_{j,k} |det A|^{−j/2} e^{−2πi⟨B^{−j}ξ, Pk⟩} ψ̂(B^{−j}ξ)`
/// sampled on the nodes of `shape`.
pub fn synthesize(table: &CoefficientTable, pair: &DualFramePair, shape: &FrequencyGrid) -> Result<FrequencyGrid> {
    let n = shape.dim();
    if pair.psi.dim() > 2 {
        return Err(Error::UnsupportedDimension(pair.psi.dim()));
    }
    if n != pair.psi.dim() {
        return Err(Error::DimensionMismatch {
            expected: pair.psi.dim(),
            found: n,
        });
    }
    let mut out = shape.zeros_like();
    if table.is_empty() {
        return Ok(out);
    }
    let kw = table
        .iter()
        .flat_map(|(_, k, _)| k.iter().map(|v| v.abs()))
        .max()
        .unwrap_or(0);
    let side = (2 * kw + 1) as usize;
    let dil = pair.psi.dilation();
    let pt = pair.lattice.gamma.basis().transpose();

    for j in table.scales() {
        let mut dense = vec![Complex64::new(0.0, 0.0); if n == 1 { side } else { side * side }];
        for (_, k, c) in table.iter().filter(|(jj, _, _)| *jj == j) {
            if k.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: k.len(),
                });
            }
            let lin = if n == 1 {
                (k[0] + kw) as usize
            } else {
                (k[0] + kw) as usize * side + (k[1] + kw) as usize
            };
            dense[lin] = c;
        }
        let nodes = scale_nodes(shape, &pair.psi, &pt, &dil.b_pow(-j));
        let scale = dil.det_abs().powf(-0.5 * j as f64);
        let contrib: Vec<Complex64> = (0..nodes.idx.len())
            .into_par_iter()
            .map_init(
                || (Vec::new(), Vec::new()),
                |(p1, p2), m| {
                    powers(nodes.t[m][0], -1.0, kw, p1);
                    let s = if n == 1 {
                        dense.iter().zip(p1.iter()).map(|(c, p)| c * p).sum::<Complex64>()
                    } else {
                        powers(nodes.t[m][1], -1.0, kw, p2);
                        let mut s = Complex64::new(0.0, 0.0);
                        for (r, q1) in p1.iter().enumerate() {
                            let row: Complex64 = dense[r * side..(r + 1) * side]
                                .iter()
                                .zip(p2.iter())
                                .map(|(c, q)| c * q)
                                .sum();
                            s += row * q1;
                        }
                        s
                    };
                    s * (nodes.w[m] * scale)
                },
            )
            .collect();
        let vals = out.values_mut();
        for (m, v) in contrib.into_iter().enumerate() {
            vals[nodes.idx[m]] += v;
        }
    }
    Ok(out)
}

/// Smallest scale range `[j_lo, j_hi]` such that every node carrying signal
/// meets the ψ-support at some `B^{−j}ξ`.
pub fn covering_scales(grid: &FrequencyGrid, pair: &DualFramePair) -> Option<(i32, i32)> {
    let support = pair.psi.support();
    let norm = support.norm();
    let (a, b) = star_bounds(support);
    let ranges: Vec<(i32, i32)> = (0..grid.len())
        .into_par_iter()
        .filter(|&i| grid.values()[i] != Complex64::new(0.0, 0.0))
        .filter_map(|i| {
            let xi = grid.node(i);
            let (j0, pts) = orbit(norm, &xi, a, b);
            let hits: Vec<i32> = pts
                .iter()
                .enumerate()
                .filter(|(_, p)| support.contains(p))
                .map(|(m, _)| -(j0 + m as i32))
                .collect();
            Some((*hits.iter().min()?, *hits.iter().max()?))
        })
        .collect();
    ranges.into_iter().reduce(|x, y| (x.0.min(y.0), x.1.max(y.1)))
}

/// Fraction of `‖f̂‖²` on nodes where `Σ_{j∈range} φ̂ψ̂(B^{−j}ξ)` misses `d(Γ)`.
pub fn uncovered_energy(grid: &FrequencyGrid, pair: &DualFramePair, j_range: (i32, i32)) -> f64 {
    let support = pair.psi.support();
    let norm = support.norm();
    let (a, b) = star_bounds(support);
    let target = pair.d_gamma();
    let total: f64 = grid.values().iter().map(|v| v.norm_sqr()).sum();
    if total == 0.0 {
        return 0.0;
    }
    let missed: Vec<f64> = (0..grid.len())
        .into_par_iter()
        .map(|i| {
            let v = grid.values()[i];
            if v == Complex64::new(0.0, 0.0) {
                return 0.0;
            }
            let (j0, pts) = orbit(norm, &grid.node(i), a, b);
            let s: f64 = pts
                .iter()
                .enumerate()
                .filter(|(m, _)| (j_range.0..=j_range.1).contains(&-(j0 + *m as i32)))
                .map(|(_, p)| pair.phi.eval(p) * pair.psi.eval(p))
                .sum();
            if (s - target).abs() > 1e-6 * target {
                v.norm_sqr()
            } else {
                0.0
            }
        })
        .collect();
    missed.iter().sum::<f64>() / total
}

/// Scales at which some window frequency `(B^{−j})ᵗPk` exceeds the grid's
/// Nyquist limit `1/(2h)` along an axis, so the Riemann sums alias.
pub fn undersampled_scales(grid: &FrequencyGrid, pair: &DualFramePair, j_range: (i32, i32), k_window: i64) -> Vec<i32> {
    let dil = pair.psi.dilation();
    let p = pair.lattice.gamma.basis();
    let h = grid.spacing();
    (j_range.0..=j_range.1)
        .filter(|&j| {
            let m = dil.b_pow(-j).transpose() * p;
            (0..m.nrows()).any(|r| {
                let row: f64 = m.row(r).iter().map(|v| v.abs()).sum();
                row * k_window as f64 > (1.0 + 1e-9) / (2.0 * h[r])
            })
        })
        .collect()
}

/// Result of analysing and resynthesising a sampled signal.
#[derive(Debug, Clone, Serialize)]
pub struct RoundTrip {
    pub rel_err: f64,
    pub signal_norm: f64,
    pub stored_coefficients: usize,
    pub j_range: (i32, i32),
    pub k_window: i64,
    pub uncovered_energy: f64,
    pub coverage_warning: bool,
    pub undersampled_scales: Vec<i32>,
    /// Largest `|c_{j,k}|` on each window ring `max |k_i| = w`.
    pub decay_profile: Vec<f64>,
    #[serde(skip)]
    pub coefficients: CoefficientTable,
    #[serde(skip)]
    pub reconstruction: FrequencyGrid,
}

/// `‖f̂ − synthesize(analyze(f̂))‖ / ‖f̂‖` on the grid.
pub fn roundtrip(grid: &FrequencyGrid, pair: &DualFramePair, opts: &AnalysisOptions) -> Result<RoundTrip> {
    check_inputs(grid, pair, opts.j_range)?;
    let signal_norm = grid.l2_norm();
    if signal_norm == 0.0 {
        return Err(Error::ZeroSignal);
    }
    let uncovered = uncovered_energy(grid, pair, opts.j_range);
    let coverage_warning = uncovered > 1e-6;
    if coverage_warning {
        log::warn!(
            "{:.3e} of the signal energy lies outside the scales {:?}",
            uncovered,
            opts.j_range
        );
    }
    let undersampled = undersampled_scales(grid, pair, opts.j_range, opts.k_window);
    if !undersampled.is_empty() {
        log::warn!(
            "scales {:?} alias on this grid; refine it or shrink the window",
            undersampled
        );
    }
    let table = analyze(grid, pair, opts)?;
    let rec = synthesize(&table, pair, grid)?;
    let diff: f64 = grid
        .values()
        .iter()
        .zip(rec.values())
        .map(|(a, b)| (a - b).norm_sqr())
        .sum::<f64>()
        * grid.cell_volume();
    Ok(RoundTrip {
        rel_err: diff.sqrt() / signal_norm,
        signal_norm,
        stored_coefficients: table.len(),
        j_range: opts.j_range,
        k_window: opts.k_window,
        uncovered_energy: uncovered,
        coverage_warning,
        undersampled_scales: undersampled,
        decay_profile: table.decay_profile(),
        coefficients: table,
        reconstruction: rec,
    })
}
