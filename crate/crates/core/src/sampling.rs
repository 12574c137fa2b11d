//! Seeded low-discrepancy sampling in boxes.

use nalgebra::DVector;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

const PRIMES: [u64; 16] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53];

fn radical_inverse(mut i: u64, base: u64) -> f64 {
    let inv = 1.0 / base as f64;
    let mut f = inv;
    let mut r = 0.0;
    while i > 0 {
        r += f * (i % base) as f64;
        i /= base;
        f *= inv;
    }
    r
}

/// Halton sequence with a random Cranley–Patterson rotation drawn from `seed`.
#[derive(Debug, Clone)]
pub struct ShiftedHalton {
    shift: Vec<f64>,
    index: u64,
}

impl ShiftedHalton {
    pub fn new(dim: usize, seed: u64) -> Self {
        assert!(
            dim <= PRIMES.len(),
            "Halton sampling supports up to {} dimensions",
            PRIMES.len()
        );
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let shift = (0..dim).map(|_| rng.gen::<f64>()).collect();
        Self { shift, index: 1 }
    }

    /// Next point of the unit cube `[0, 1)ⁿ`.
    pub fn next_unit(&mut self) -> Vec<f64> {
        let i = self.index;
        self.index += 1;
        self.shift
            .iter()
            .zip(PRIMES)
            .map(|(s, p)| (radical_inverse(i, p) + s).fract())
            .collect()
    }
}

/// Draws `count` points of the box `[lo, hi]` accepted by `accept`.
///
/// Gives up with [`Error::SamplingExhausted`] after `200·count` proposals.
pub fn sample_in_box(
    lo: &DVector<f64>,
    hi: &DVector<f64>,
    count: usize,
    seed: u64,
    accept: impl Fn(&DVector<f64>) -> bool,
) -> Result<Vec<DVector<f64>>> {
    let n = lo.len();
    let mut seq = ShiftedHalton::new(n, seed);
    let mut out = Vec::with_capacity(count);
    let budget = count.saturating_mul(200).max(1000);
    for _ in 0..budget {
        if out.len() == count {
            break;
        }
        let u = seq.next_unit();
        let x = DVector::from_fn(n, |i, _| lo[i] + (hi[i] - lo[i]) * u[i]);
        if accept(&x) {
            out.push(x);
        }
    }
    if out.len() < count {
        return Err(Error::SamplingExhausted {
            wanted: count,
            got: out.len(),
        });
    }
    Ok(out)
}
