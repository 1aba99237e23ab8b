//! Coefficient sequences and the index-range algebra on them.
//!
//! A [`CausalSeq`] holds `a_0, a_1, ..., a_L` and is implicitly zero beyond
//! `L`. A [`BiSeq`] splits a two-sided sequence into its negative-index block
//! `a_{-1}, a_{-2}, ...` and its causal block.

use serde::Serialize;

/// One-sided square-summable sequence, indexed from zero.
#[derive(Debug, Clone, PartialEq, Default, Serialize)]
pub struct CausalSeq(Vec<f64>);

impl CausalSeq {
    pub fn new(values: Vec<f64>) -> Self {
        CausalSeq(values)
    }

    pub fn zeros(len: usize) -> Self {
        CausalSeq(vec![0.0; len])
    }

    /// Unit vector `e_k`, stored with length `k + 1`.
    pub fn unit(k: usize) -> Self {
        let mut v = vec![0.0; k + 1];
        v[k] = 1.0;
        CausalSeq(v)
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }

    /// Number of stored coefficients.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Coefficient `j`, zero past the stored range.
    pub fn get(&self, j: usize) -> f64 {
        self.0.get(j).copied().unwrap_or(0.0)
    }

    pub fn energy(&self) -> f64 {
        self.0.iter().map(|x| x * x).sum()
    }

    pub fn sup_abs(&self) -> f64 {
        self.0.iter().fold(0.0_f64, |m, x| m.max(x.abs()))
    }

    /// Keeps the first `len` coefficients, padding with zeros if needed.
    pub fn truncated(&self, len: usize) -> CausalSeq {
        let mut v: Vec<f64> = self.0.iter().copied().take(len).collect();
        v.resize(len, 0.0);
        CausalSeq(v)
    }

    /// Energy of everything at index `>= from`.
    pub fn tail_energy(&self, from: usize) -> f64 {
        self.0.iter().skip(from).map(|x| x * x).sum()
    }
}

impl From<Vec<f64>> for CausalSeq {
    fn from(v: Vec<f64>) -> Self {
        CausalSeq(v)
    }
}

/// Two-sided sequence `(..., a_{-2}, a_{-1} | a_0, a_1, ...)`.
#[derive(Debug, Clone, PartialEq, Default, Serialize)]
pub struct BiSeq {
    /// `neg[i]` is the coefficient at index `-(i + 1)`.
    pub neg: Vec<f64>,
    pub pos: CausalSeq,
}

impl BiSeq {
    pub fn new(neg: Vec<f64>, pos: CausalSeq) -> Self {
        BiSeq { neg, pos }
    }

    /// Builds a two-sided sequence from contiguous values whose first entry
    /// sits at index `-offset`.
    pub fn from_offset(values: &[f64], offset: usize) -> Self {
        let split = offset.min(values.len());
        // values[i] sits at index i - offset
        let mut neg = vec![0.0; offset];
        for (i, &v) in values[..split].iter().enumerate() {
            neg[offset - 1 - i] = v;
        }
        BiSeq {
            neg,
            pos: CausalSeq::new(values[split..].to_vec()),
        }
    }

    /// Coefficient at signed index `i`.
    pub fn get(&self, i: isize) -> f64 {
        if i >= 0 {
            self.pos.get(i as usize)
        } else {
            self.neg.get((-i - 1) as usize).copied().unwrap_or(0.0)
        }
    }

    /// Delta at signed index `i`.
    pub fn delta(i: isize) -> Self {
        if i >= 0 {
            BiSeq::new(Vec::new(), CausalSeq::unit(i as usize))
        } else {
            let mut neg = vec![0.0; (-i) as usize];
            neg[(-i - 1) as usize] = 1.0;
            BiSeq::new(neg, CausalSeq::default())
        }
    }
}

/// `[a]_+`: restriction to the non-negative indices.
pub fn causal_part(seq: &BiSeq) -> CausalSeq {
    seq.pos.clone()
}

/// `[a]_-`: restriction to the negative indices, ordered `-1, -2, ...`.
pub fn anticausal_part(seq: &BiSeq) -> Vec<f64> {
    seq.neg.clone()
}

/// Full linear convolution of two finite sequences.
pub fn convolve(a: &[f64], b: &[f64]) -> Vec<f64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0.0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0.0 {
            continue;
        }
        for (o, &y) in out[i..].iter_mut().zip(b) {
            *o += x * y;
        }
    }
    out
}

/// Linear convolution truncated to the first `len` terms.
pub fn convolve_truncated(a: &[f64], b: &[f64], len: usize) -> Vec<f64> {
    let mut out = vec![0.0; len];
    for (i, &x) in a.iter().enumerate().take(len) {
        if x == 0.0 {
            continue;
        }
        for (o, &y) in out[i..].iter_mut().zip(b) {
            *o += x * y;
        }
    }
    out
}

/// Pairwise summation with a fixed split, so the result depends only on the
/// input order.
pub fn pairwise_sum(xs: &[f64]) -> f64 {
    const LEAF: usize = 32;
    if xs.len() <= LEAF {
        return xs.iter().sum();
    }
    let mid = xs.len() / 2;
    pairwise_sum(&xs[..mid]) + pairwise_sum(&xs[mid..])
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn causal_part_drops_negative_block() {
        let s = BiSeq::new(vec![2.0], CausalSeq::new(vec![1.0, 3.0]));
        assert_eq!(causal_part(&s).values(), &[1.0, 3.0]);
        assert_eq!(anticausal_part(&s), vec![2.0]);
    }

    #[test]
    fn zero_input_gives_zero_parts() {
        let s = BiSeq::new(vec![0.0; 3], CausalSeq::zeros(4));
        assert!(causal_part(&s).values().iter().all(|&x| x == 0.0));
        assert!(anticausal_part(&s).iter().all(|&x| x == 0.0));
    }

    #[test]
    fn from_offset_places_indices() {
        let s = BiSeq::from_offset(&[3.0, 2.0, 1.0, 5.0], 2);
        assert_eq!(s.get(-2), 3.0);
        assert_eq!(s.get(-1), 2.0);
        assert_eq!(s.get(0), 1.0);
        assert_eq!(s.get(1), 5.0);
        assert_eq!(s.get(-3), 0.0);
    }

    #[test]
    fn convolve_small() {
        assert_eq!(convolve(&[1.0, 2.0], &[1.0, -1.0, 3.0]), vec![1.0, 1.0, 1.0, 6.0]);
        assert_eq!(convolve_truncated(&[1.0, 2.0], &[1.0, -1.0, 3.0], 2), vec![1.0, 1.0]);
    }

    proptest! {
        #[test]
        fn reassembly_is_bit_exact(neg in prop::collection::vec(-1e3f64..1e3, 0..20),
                                   pos in prop::collection::vec(-1e3f64..1e3, 0..20)) {
            let s = BiSeq::new(neg, CausalSeq::new(pos));
            let back = BiSeq::new(anticausal_part(&s), causal_part(&s));
            prop_assert_eq!(back, s);
        }
    }
}
