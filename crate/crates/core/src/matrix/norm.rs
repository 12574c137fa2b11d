use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use super::dilation::DilationMatrix;
use crate::error::{Error, Result};
use crate::linalg;

/// Knobs for [`build_associated_norm`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct NormOptions {
    pub k_max: usize,
    /// Slack allowed on the minimum eigenvalue of `BᵗKB − λ²K`.
    pub psd_tol: f64,
    /// Bisection accuracy for λ.
    pub lambda_accuracy: f64,
}

impl Default for NormOptions {
    fn default() -> Self {
        Self {
            k_max: 64,
            psd_tol: 1e-9,
            lambda_accuracy: 1e-6,
        }
    }
}

/// The Hermitian norm `‖x‖_* = √(xᵗKx)` in which `B` expands by at least λ.
#[derive(Debug, Clone)]
pub struct AssociatedNorm {
    dilation: DilationMatrix,
    k_form: DMatrix<f64>,
    order: usize,
    lambda: f64,
    eig_q: DMatrix<f64>,
    eig_lambda: Vec<f64>,
    b_op_norm: f64,
}

fn psd_slack(b: &DMatrix<f64>, k: &DMatrix<f64>, lambda: f64) -> f64 {
    let m = b.transpose() * k * b - k * (lambda * lambda);
    linalg::sym_min_eigenvalue(&m)
}

/// `Σ_{i=0}^{k} (B^{-i})ᵗ B^{-i}`.
pub fn truncated_form(dilation: &DilationMatrix, k: usize) -> DMatrix<f64> {
    let n = dilation.dim();
    let mut acc = DMatrix::identity(n, n);
    let mut p = DMatrix::identity(n, n);
    for _ in 0..k {
        p = dilation.b_inv() * &p;
        acc += p.transpose() * &p;
    }
    acc
}

/// Finds the smallest truncation order whose form certifies expansion and
/// returns the largest certified λ for it.
pub fn build_associated_norm(dilation: &DilationMatrix, opts: &NormOptions) -> Result<AssociatedNorm> {
    let b = dilation.b();
    let lo0 = 1.0 + 1e-6;
    let hi0 = dilation.max_modulus();
    let passes = |k: &DMatrix<f64>, lam: f64| psd_slack(b, k, lam) >= -opts.psd_tol;
    for order in 0..=opts.k_max {
        let k = truncated_form(dilation, order);
        if !passes(&k, lo0) {
            continue;
        }
        let lambda = if passes(&k, hi0) {
            hi0
        } else {
            let (mut lo, mut hi) = (lo0, hi0);
            let acc = opts.lambda_accuracy * 0.1;
            while hi - lo > acc {
                let mid = 0.5 * (lo + hi);
                if passes(&k, mid) {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            lo
        };
        return AssociatedNorm::assemble(dilation.clone(), k, order, lambda);
    }
    Err(Error::NoCertificate {
        k_max: opts.k_max,
        tol: opts.psd_tol,
    })
}

impl AssociatedNorm {
    fn assemble(dilation: DilationMatrix, k_form: DMatrix<f64>, order: usize, lambda: f64) -> Result<Self> {
        let k_form = linalg::symmetrize(&k_form);
        let eig = k_form.clone().symmetric_eigen();
        let n = k_form.nrows();
        let mut idx: Vec<usize> = (0..n).collect();
        idx.sort_by(|&i, &j| eig.eigenvalues[j].total_cmp(&eig.eigenvalues[i]));
        let mut eig_q = DMatrix::zeros(n, n);
        let mut eig_lambda = Vec::with_capacity(n);
        for (col, &i) in idx.iter().enumerate() {
            let mut v = eig.eigenvectors.column(i).into_owned();
            let pivot = v
                .iter()
                .copied()
                .fold(0.0, |m: f64, x| if x.abs() > m.abs() { x } else { m });
            if pivot < 0.0 {
                v = -v;
            }
            eig_q.set_column(col, &v);
            eig_lambda.push(eig.eigenvalues[i]);
        }
        if eig_lambda.iter().any(|&l| l.is_nan() || l <= 0.0) {
            return Err(Error::Config("quadratic form is not positive definite".into()));
        }
        // ‖B‖ in the *-norm: √ of the largest generalized eigenvalue of (BᵗKB, K).
        let half_inv = &eig_q
            * DMatrix::from_diagonal(&DVector::from_iterator(n, eig_lambda.iter().map(|l| l.powf(-0.5))))
            * eig_q.transpose();
        let b = dilation.b();
        let pencil = &half_inv * b.transpose() * &k_form * b * &half_inv;
        let b_op_norm = linalg::sym_max_eigenvalue(&pencil).max(0.0).sqrt();
        Ok(Self {
            dilation,
            k_form,
            order,
            lambda,
            eig_q,
            eig_lambda,
            b_op_norm,
        })
    }

    /// A norm from an explicit positive-definite form, without certification.
    /// `lambda` is taken as given; useful for probing degenerate geometry.
    pub fn with_form(dilation: DilationMatrix, k_form: DMatrix<f64>, lambda: f64) -> Result<Self> {
        if k_form.nrows() != dilation.dim() || k_form.ncols() != dilation.dim() {
            return Err(Error::DimensionMismatch {
                expected: dilation.dim(),
                found: k_form.nrows(),
            });
        }
        Self::assemble(dilation, k_form, 0, lambda)
    }

    pub fn dilation(&self) -> &DilationMatrix {
        &self.dilation
    }

    pub fn dim(&self) -> usize {
        self.dilation.dim()
    }

    pub fn k(&self) -> &DMatrix<f64> {
        &self.k_form
    }

    /// Truncation order of the defining series.
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    /// Eigenvectors of K as columns, matching [`eig_lambda`](Self::eig_lambda).
    pub fn eig_q(&self) -> &DMatrix<f64> {
        &self.eig_q
    }

    /// Eigenvalues of K in decreasing order.
    pub fn eig_lambda(&self) -> &[f64] {
        &self.eig_lambda
    }

    /// Largest semi-principal axis `ℓ = 1/√(min λᵢ)` of the unit ball.
    pub fn max_semi_axis(&self) -> f64 {
        self.eig_lambda.last().unwrap().powf(-0.5)
    }

    /// Operator norm of B measured in the *-norm.
    pub fn b_op_norm(&self) -> f64 {
        self.b_op_norm
    }

    /// Minimum eigenvalue of `BᵗKB − λ²K`.
    pub fn certificate_slack(&self, lambda: f64) -> f64 {
        psd_slack(self.dilation.b(), &self.k_form, lambda)
    }

    pub fn norm_value(&self, x: &DVector<f64>) -> f64 {
        linalg::quad_form(&self.k_form, x).max(0.0).sqrt()
    }

    /// `(B^{-m})ᵗ K B^{-m}`: the form whose unit ball is `B^m(I_*)`.
    pub fn quadratic_form_for_power(&self, m: i32) -> DMatrix<f64> {
        let p = self.dilation.b_pow(-m);
        linalg::symmetrize(&(p.transpose() * &self.k_form * p))
    }

    /// The unique `j` with `‖B^j x‖_* ≤ 1 < ‖B^{j+1} x‖_*`.
    pub fn dilation_index(&self, x: &DVector<f64>) -> Result<i32> {
        if x.iter().all(|v| *v == 0.0) {
            return Err(Error::ZeroVector);
        }
        let b = self.dilation.b();
        let b_inv = self.dilation.b_inv();
        let mut y = x.clone();
        let mut j = 0;
        if self.norm_value(&y) <= 1.0 {
            loop {
                let next = b * &y;
                if self.norm_value(&next) > 1.0 {
                    return Ok(j);
                }
                y = next;
                j += 1;
            }
        } else {
            while self.norm_value(&y) > 1.0 {
                y = b_inv * &y;
                j -= 1;
            }
            Ok(j)
        }
    }

    /// Whether `x` lies in the annulus `O_* = I_* \ B⁻¹(I_*)`.
    pub fn in_annulus(&self, x: &DVector<f64>) -> bool {
        self.norm_value(x) <= 1.0 && self.norm_value(&(self.dilation.b() * x)) > 1.0
    }

    /// The same geometry after the change of variables `ξ ↦ Pᵗξ`:
    /// dilation `P⁻¹AP` and form `P⁻¹ K P⁻ᵗ`.
    pub fn transformed(&self, p: &DMatrix<f64>) -> Result<Self> {
        let dilation = self.dilation.conjugated(p)?;
        let p_inv = linalg::inverse(p)?;
        let k_form = &p_inv * &self.k_form * p_inv.transpose();
        Self::assemble(dilation, k_form, self.order, self.lambda)
    }
}

/// `B^c(I_*) \ B^{c−d−1}(I_*)`.
#[derive(Debug, Clone, Copy)]
pub struct EllipsoidShell<'a> {
    pub norm: &'a AssociatedNorm,
    pub c: i32,
    pub d: i32,
}

impl EllipsoidShell<'_> {
    pub fn contains(&self, x: &DVector<f64>) -> bool {
        let dil = self.norm.dilation();
        let outer = dil.b_pow(-self.c) * x;
        let inner = dil.b_pow(-(self.c - self.d - 1)) * x;
        self.norm.norm_value(&outer) <= 1.0 && self.norm.norm_value(&inner) > 1.0
    }
}
