use std::collections::BTreeSet;

use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use crate::error::{Error, Result};

/// Coset representatives of `Q⁻¹ℤⁿ / ℤⁿ`, stored as rational vectors
/// `numerators / denominator` with every coordinate in `[0, 1)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuotientRepresentatives {
    pub denominator: i64,
    pub numerators: Vec<Vec<i64>>,
}

impl QuotientRepresentatives {
    pub fn len(&self) -> usize {
        self.numerators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.numerators.is_empty()
    }

    pub fn to_vectors(&self) -> Vec<DVector<f64>> {
        let den = self.denominator as f64;
        self.numerators
            .iter()
            .map(|v| DVector::from_iterator(v.len(), v.iter().map(|&x| x as f64 / den)))
            .collect()
    }
}

fn to_integer(q: &DMatrix<f64>) -> Result<Vec<Vec<i128>>> {
    if q.nrows() != q.ncols() {
        return Err(Error::NotSquare {
            rows: q.nrows(),
            cols: q.ncols(),
        });
    }
    let mut out = vec![vec![0i128; q.ncols()]; q.nrows()];
    for i in 0..q.nrows() {
        for j in 0..q.ncols() {
            let v = q[(i, j)];
            if !v.is_finite() || (v - v.round()).abs() > 1e-9 {
                return Err(Error::NotInteger {
                    row: i,
                    col: j,
                    value: v,
                });
            }
            out[i][j] = v.round() as i128;
        }
    }
    Ok(out)
}

/// Fraction-free (Bareiss) determinant.
fn int_det(m: &[Vec<i128>]) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut a = m.to_vec();
    let mut sign = 1;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&r| a[r][k] != 0) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}

fn adjugate(m: &[Vec<i128>]) -> Vec<Vec<i128>> {
    let n = m.len();
    if n == 1 {
        return vec![vec![1]];
    }
    let cofactor = |i: usize, j: usize| {
        let minor: Vec<Vec<i128>> = (0..n)
            .filter(|&r| r != i)
            .map(|r| (0..n).filter(|&c| c != j).map(|c| m[r][c]).collect())
            .collect();
        let sign = if (i + j).is_multiple_of(2) { 1 } else { -1 };
        sign * int_det(&minor)
    };
    (0..n).map(|j| (0..n).map(|i| cofactor(i, j)).collect()).collect()
}

/// A transversal of `Q⁻¹ℤⁿ / ℤⁿ` for an integer matrix `Q`, found by scanning
/// `Q⁻¹k` over the box `k ∈ [0, |det Q|)ⁿ` and reducing mod `ℤⁿ`.
pub fn integer_quotient_representatives(q: &DMatrix<f64>) -> Result<QuotientRepresentatives> {
    let qi = to_integer(q)?;
    let n = qi.len();
    let det = int_det(&qi);
    if det == 0 {
        return Err(Error::Singular { det: 0.0 });
    }
    let den = det.abs();
    let adj = adjugate(&qi);
    let sgn = det.signum();
    let mut seen = BTreeSet::new();
    let mut k = vec![0i128; n];
    'scan: loop {
        let num: Vec<i64> = (0..n)
            .map(|i| {
                let s: i128 = (0..n).map(|j| adj[i][j] * k[j]).sum::<i128>() * sgn;
                s.rem_euclid(den) as i64
            })
            .collect();
        seen.insert(num);
        if seen.len() as i128 == den {
            break;
        }
        let mut i = 0;
        loop {
            if i == n {
                break 'scan;
            }
            k[i] += 1;
            if k[i] < den {
                break;
            }
            k[i] = 0;
            i += 1;
        }
    }
    Ok(QuotientRepresentatives {
        denominator: den as i64,
        numerators: seen.into_iter().collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_has_single_class() {
        let r = integer_quotient_representatives(&DMatrix::identity(3, 3)).unwrap();
        assert_eq!(r.numerators, vec![vec![0, 0, 0]]);
    }

    #[test]
    fn scalar_three() {
        let r = integer_quotient_representatives(&DMatrix::from_element(1, 1, 3.0)).unwrap();
        assert_eq!(r.denominator, 3);
        assert_eq!(r.numerators, vec![vec![0], vec![1], vec![2]]);
    }

    #[test]
    fn twice_identity() {
        let r = integer_quotient_representatives(&(DMatrix::identity(2, 2) * 2.0)).unwrap();
        assert_eq!(r.len(), 4);
        let v = r.to_vectors();
        assert!(v.iter().any(|x| x[0] == 0.5 && x[1] == 0.5));
    }

    #[test]
    fn quincunx_classes() {
        let q = DMatrix::from_row_slice(2, 2, &[1.0, -1.0, 1.0, 1.0]);
        let r = integer_quotient_representatives(&q).unwrap();
        assert_eq!(r.len(), 2);
        assert!(r.to_vectors().iter().any(|x| x[0] == 0.5 && x[1] == 0.5));
    }

    #[test]
    fn errors() {
        let frac = DMatrix::from_row_slice(1, 1, &[1.5]);
        assert!(matches!(
            integer_quotient_representatives(&frac),
            Err(Error::NotInteger { .. })
        ));
        let sing = DMatrix::from_row_slice(2, 2, &[1.0, 2.0, 2.0, 4.0]);
        assert!(matches!(
            integer_quotient_representatives(&sing),
            Err(Error::Singular { .. })
        ));
    }

    #[test]
    fn bareiss_matches_float_det() {
        let m = vec![vec![2, -1, 3], vec![0, 4, 1], vec![5, 2, -2]];
        let f = DMatrix::<f64>::from_row_slice(3, 3, &[2.0, -1.0, 3.0, 0.0, 4.0, 1.0, 5.0, 2.0, -2.0]);
        assert_eq!(int_det(&m) as f64, f.determinant().round());
    }
}
