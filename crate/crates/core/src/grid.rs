//! Uniform frequency grid `omega_k = 2 pi k / n` and the transforms between
//! coefficient sequences and grid samples.
//!
//! Sequences are evaluated with the `e^{+ij omega}` convention, so a causal
//! sequence `a` maps to `A(omega) = sum_j a_j e^{ij omega}`.

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use crate::error::{Error, Result};
use crate::seq::{BiSeq, CausalSeq};

/// Smallest power of two that is `>= n` (and at least 2).
pub fn next_pow2(n: usize) -> usize {
    n.max(2).next_power_of_two()
}

#[derive(Clone)]
pub struct SpectralGrid {
    n: usize,
    // inverse (e^{+i}) and forward (e^{-i}) unnormalized transforms
    synth: Arc<dyn Fft<f64>>,
    analysis: Arc<dyn Fft<f64>>,
}

impl fmt::Debug for SpectralGrid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SpectralGrid").field("n", &self.n).finish()
    }
}

impl PartialEq for SpectralGrid {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n
    }
}

impl SpectralGrid {
    /// Grid with `n` frequencies; `n` must be a power of two.
    pub fn new(n: usize) -> Result<Self> {
        if n < 2 || !n.is_power_of_two() {
            return Err(Error::Domain(format!(
                "grid size must be a power of two >= 2, got {n}"
            )));
        }
        let mut planner = FftPlanner::new();
        Ok(SpectralGrid {
            n,
            synth: planner.plan_fft_inverse(n),
            analysis: planner.plan_fft_forward(n),
        })
    }

    /// Grid large enough to resolve sequences of length `len` without wrap-around.
    pub fn for_length(len: usize) -> Self {
        SpectralGrid::new(next_pow2(8 * len.max(1))).expect("power of two")
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn omega(&self, k: usize) -> f64 {
        2.0 * PI * k as f64 / self.n as f64
    }

    fn check_fits(&self, len: usize) -> Result<()> {
        if len > self.n {
            return Err(Error::Domain(format!(
                "sequence of length {len} does not fit on a grid of {} points",
                self.n
            )));
        }
        Ok(())
    }

    fn synthesize(&self, mut buf: Vec<Complex64>) -> Vec<Complex64> {
        self.synth.process(&mut buf);
        buf
    }

    /// `sum_j a_j e^{ij omega_k}` for a causal sequence.
    pub fn eval_causal(&self, a: &[f64]) -> Result<Vec<Complex64>> {
        self.check_fits(a.len())?;
        let mut buf = vec![Complex64::new(0.0, 0.0); self.n];
        for (b, &x) in buf.iter_mut().zip(a) {
            b.re = x;
        }
        Ok(self.synthesize(buf))
    }

    /// `sum_{j>=1} a_{-j} e^{-ij omega_k}` where `neg[i]` is `a_{-(i+1)}`.
    pub fn eval_anticausal(&self, neg: &[f64]) -> Result<Vec<Complex64>> {
        self.eval_bi(&BiSeq::new(neg.to_vec(), CausalSeq::default()))
    }

    /// Transform of a two-sided sequence.
    pub fn eval_bi(&self, s: &BiSeq) -> Result<Vec<Complex64>> {
        self.check_fits(s.neg.len() + s.pos.len())?;
        let mut buf = vec![Complex64::new(0.0, 0.0); self.n];
        for (j, &x) in s.pos.values().iter().enumerate() {
            buf[j].re = x;
        }
        for (i, &x) in s.neg.iter().enumerate() {
            buf[self.n - 1 - i].re += x;
        }
        Ok(self.synthesize(buf))
    }

    /// Conjugate-frequency transform `sum_j a_j e^{-ij omega_k}`.
    pub fn eval_causal_conj(&self, a: &[f64]) -> Result<Vec<Complex64>> {
        Ok(self.eval_causal(a)?.into_iter().map(|z| z.conj()).collect())
    }

    /// Fourier coefficients of grid samples: `a_j = n^{-1} sum_k V_k e^{-ij omega_k}`.
    /// Index `j` and `j - n` are aliased; negative indices appear at the end.
    pub fn coefficients(&self, samples: &[Complex64]) -> Result<Vec<Complex64>> {
        if samples.len() != self.n {
            return Err(Error::Domain(format!(
                "expected {} grid samples, got {}",
                self.n,
                samples.len()
            )));
        }
        let mut buf = samples.to_vec();
        self.analysis.process(&mut buf);
        let scale = 1.0 / self.n as f64;
        Ok(buf.into_iter().map(|z| z * scale).collect())
    }

    /// Samples of `e^{i m omega}` for signed `m`.
    pub fn exp_samples(&self, m: isize) -> Vec<Complex64> {
        let n = self.n as isize;
        (0..self.n)
            .map(|k| {
                let idx = (m * k as isize).rem_euclid(n);
                Complex64::from_polar(1.0, 2.0 * PI * idx as f64 / self.n as f64)
            })
            .collect()
    }
}

/// Largest pointwise modulus of a difference of two sample vectors.
pub fn sup_diff(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter()
        .zip(b)
        .fold(0.0_f64, |m, (x, y)| m.max((x - y).norm()))
}

pub fn sup_norm(a: &[Complex64]) -> f64 {
    a.iter().fold(0.0_f64, |m, x| m.max(x.norm()))
}
