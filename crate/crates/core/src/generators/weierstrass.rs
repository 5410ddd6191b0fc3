use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::series::{GeneratorKind, Provenance, TimeSeries};

/// Terms whose amplitude falls below this contribute less than 1e-17 in total.
const MIN_AMPLITUDE: f64 = 1.0 / (1u64 << 60) as f64;

/// Truncated Weierstrass series `W(t) = sum cos(2^n t) / 2^((2-D) n)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeierstrassSpec {
    pub dimension: f64,
    pub num_points: usize,
    pub n_max: u32,
}

impl WeierstrassSpec {
    pub fn new(dimension: f64) -> Self {
        WeierstrassSpec { dimension, ..Default::default() }
    }
}

impl Default for WeierstrassSpec {
    fn default() -> Self {
        WeierstrassSpec { dimension: 1.5, num_points: 314_160, n_max: 1021 }
    }
}

pub fn weierstrass(spec: &WeierstrassSpec) -> Result<TimeSeries> {
    weierstrass_with(spec, Execution::default())
}

/// Samples the series at `N` points from 0 to 2 pi inclusive,
/// `t_k = 2 pi k / (N - 1)`, `k = 0..N`.
///
/// `2^n t_k` is never formed in floating point: the phase of term `n` is
/// `2 pi ((2^n k) mod (N - 1)) / (N - 1)` with `2^n mod (N - 1)` carried
/// exactly in integers, so every term indexes a cosine table.
///
/// The first and last samples coincide, so the window is one sample longer
/// than the period of every term and the sampled signal is not exactly
/// periodic.
pub fn weierstrass_with(spec: &WeierstrassSpec, exec: Execution) -> Result<TimeSeries> {
    let d = spec.dimension;
    if !(d > 1.0 && d < 2.0) {
        return Err(Error::InvalidParameter(format!("dimension {d} outside (1, 2)")));
    }
    let n = spec.num_points;
    if n < 2 {
        return Err(Error::InvalidParameter(format!("num_points {n} < 2")));
    }
    let modulus = (n - 1) as u64;

    let mut terms: Vec<(u64, f64)> = Vec::new();
    let mut residue = 1 % modulus;
    for term in 0..=spec.n_max {
        let amplitude = (-(2.0 - d) * f64::from(term)).exp2();
        if amplitude < MIN_AMPLITUDE {
            break;
        }
        terms.push((residue, amplitude));
        residue = mul_mod(residue, 2, modulus) as u64;
    }
    // smallest amplitudes first
    terms.reverse();

    let table = cosine_table(modulus as usize);
    let mut samples = vec![0.0; n];
    exec.fill(&mut samples, |i| {
        let k = i as u64 % modulus;
        terms
            .iter()
            .map(|&(r, amp)| amp * table[mul_mod(r, k, modulus)])
            .sum()
    });

    let meta = Provenance::generated(GeneratorKind::Weierstrass, d, None);
    Ok(TimeSeries::from_parts_unchecked(samples, meta))
}

fn mul_mod(a: u64, b: u64, m: u64) -> usize {
    if m <= u64::from(u32::MAX) {
        ((a * b) % m) as usize
    } else {
        ((u128::from(a) * u128::from(b)) % u128::from(m)) as usize
    }
}

/// `cos(2 pi m / n)` for `m = 0..n`, reduced to the first half-turn so the
/// argument stays small.
fn cosine_table(n: usize) -> Vec<f64> {
    (0..n)
        .map(|m| {
            let folded = m.min(n - m);
            (2.0 * PI * folded as f64 / n as f64).cos()
        })
        .collect()
}
