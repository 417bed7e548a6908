//! Spectral sequences of canonical selfadjoint extensions.
//!
//! A simple, regular, closed symmetric operator with deficiency indices
//! (1,1) has a one-parameter family of canonical selfadjoint extensions,
//! each with simple discrete spectrum; the spectra of any two extensions
//! interlace and their union covers the real line. This module holds the
//! container for one such spectrum ([`SpectralSequence`]), the pairing of
//! two of them ([`ExtensionPair`]), generators for the operator models
//! shipped with the crate (momentum on `[-a,a]`, Neumann Laplacian and
//! Schrödinger operators on `[0,a]`, the rank-one-perturbed harmonic
//! oscillator), and the interlacing checker.

mod shooting;

pub use shooting::{schrodinger_spectrum, SampledPotential};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Asymptotic model `|x_j| ≈ C · j^p` for the far entries of a branch.
///
/// One model describes both branches: the positive and negative entries
/// of the spectra handled here share their growth law.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TailModel {
    /// Growth exponent `p`.
    pub exponent: f64,
    /// Growth coefficient `C`.
    pub coefficient: f64,
}

/// Branches below this length skip the tail-fit validation: the model is
/// an asymptotic statement and desk-sized prefixes need not obey it yet.
const TAIL_CHECK_MIN_LEN: usize = 32;

/// Ordered eigenvalue sequence of one canonical selfadjoint extension.
///
/// Entries are split into a strictly increasing positive branch and a
/// negative branch stored by increasing modulus; an eigenvalue at the
/// origin is recorded by `has_zero` rather than stored in a branch.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectralSequence {
    positive: Vec<f64>,
    negative: Vec<f64>,
    has_zero: bool,
    tail: Option<TailModel>,
}

impl SpectralSequence {
    /// Builds a sequence from pre-split branches, validating the
    /// invariants: finite simple entries, strict branch ordering, and
    /// (for long branches) a 5% tail-model fit over the last tenth.
    pub fn new(
        positive: Vec<f64>,
        negative: Vec<f64>,
        has_zero: bool,
        tail: Option<TailModel>,
    ) -> Result<Self> {
        for &x in positive.iter().chain(negative.iter()) {
            if !x.is_finite() {
                return Err(Error::InvalidParameter("non-finite eigenvalue".into()));
            }
        }
        if positive.iter().any(|&x| x <= 0.0) {
            return Err(Error::InvalidParameter(
                "positive branch contains a non-positive entry".into(),
            ));
        }
        if negative.iter().any(|&x| x >= 0.0) {
            return Err(Error::InvalidParameter(
                "negative branch contains a non-negative entry".into(),
            ));
        }
        if positive.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidParameter(
                "positive branch not strictly increasing".into(),
            ));
        }
        if negative.windows(2).any(|w| w[0] <= w[1]) {
            return Err(Error::InvalidParameter(
                "negative branch not strictly increasing in modulus".into(),
            ));
        }
        let seq = Self {
            positive,
            negative,
            has_zero,
            tail,
        };
        if let Some(model) = seq.tail {
            if model.coefficient <= 0.0 || !model.coefficient.is_finite() {
                return Err(Error::InvalidParameter(
                    "tail coefficient must be positive".into(),
                ));
            }
            for branch in [&seq.positive, &seq.negative] {
                if branch.len() >= TAIL_CHECK_MIN_LEN {
                    let start = branch.len() - branch.len().div_ceil(10);
                    for (i, &x) in branch.iter().enumerate().skip(start) {
                        let j = (i + 1) as f64;
                        let predicted = model.coefficient * j.powf(model.exponent);
                        if (x.abs() - predicted).abs() > 0.05 * predicted {
                            return Err(Error::InvalidParameter(format!(
                                "tail model misfit at branch index {}: |x| = {}, model = {}",
                                i + 1,
                                x.abs(),
                                predicted
                            )));
                        }
                    }
                }
            }
        }
        Ok(seq)
    }

    /// Builds a sequence from an unordered list of eigenvalues, sorting
    /// into branches. Values within `1e-12 · max(1, max|x|)` of the
    /// origin set the zero flag; duplicates are rejected.
    pub fn from_unsorted(values: Vec<f64>, tail: Option<TailModel>) -> Result<Self> {
        let scale = values.iter().fold(1.0f64, |m, v| m.max(v.abs()));
        let zero_tol = 1e-12 * scale;
        let mut positive = Vec::new();
        let mut negative = Vec::new();
        let mut has_zero = false;
        for v in values {
            if v.abs() <= zero_tol {
                if has_zero {
                    return Err(Error::InvalidParameter("repeated zero eigenvalue".into()));
                }
                has_zero = true;
            } else if v > 0.0 {
                positive.push(v);
            } else {
                negative.push(v);
            }
        }
        positive.sort_by(|a, b| a.partial_cmp(b).unwrap());
        negative.sort_by(|a, b| b.partial_cmp(a).unwrap());
        for branch in [&positive, &negative] {
            for w in branch.windows(2) {
                if eigenvalues_equal(w[0], w[1]) {
                    return Err(Error::InvalidParameter(format!(
                        "repeated eigenvalue near {}",
                        w[0]
                    )));
                }
            }
        }
        Self::new(positive, negative, has_zero, tail)
    }

    pub fn positive(&self) -> &[f64] {
        &self.positive
    }

    pub fn negative(&self) -> &[f64] {
        &self.negative
    }

    pub fn has_zero(&self) -> bool {
        self.has_zero
    }

    pub fn tail(&self) -> Option<TailModel> {
        self.tail
    }

    /// Drops the tail model, keeping the entries.
    pub fn without_tail(mut self) -> Self {
        self.tail = None;
        self
    }

    /// Number of stored entries, counting the origin flag.
    pub fn len(&self) -> usize {
        self.positive.len() + self.negative.len() + usize::from(self.has_zero)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Largest stored modulus.
    pub fn max_modulus(&self) -> f64 {
        let p = self.positive.last().copied().unwrap_or(0.0);
        let n = self.negative.last().map(|x| x.abs()).unwrap_or(0.0);
        p.max(n)
    }

    /// Nonzero entries merged across branches by increasing modulus.
    pub fn nonzero_by_modulus(&self) -> MergedByModulus<'_> {
        MergedByModulus {
            seq: self,
            i_pos: 0,
            i_neg: 0,
        }
    }

    /// All entries (including an origin eigenvalue) in increasing order.
    pub fn all_sorted(&self) -> Vec<f64> {
        let mut out: Vec<f64> = self.negative.iter().rev().copied().collect();
        if self.has_zero {
            out.push(0.0);
        }
        out.extend_from_slice(&self.positive);
        out
    }

    /// Serializes to the spectral-sequence JSON format.
    pub fn to_json(&self) -> Result<String> {
        let mut s = serde_json::to_string_pretty(self)?;
        s.push('\n');
        Ok(s)
    }

    /// Parses the spectral-sequence JSON format, re-validating invariants.
    pub fn from_json(text: &str) -> Result<Self> {
        let raw: SpectralSequence = serde_json::from_str(text)?;
        Self::new(raw.positive, raw.negative, raw.has_zero, raw.tail)
    }

    pub fn write_file(&self, path: &std::path::Path) -> Result<()> {
        std::fs::write(path, self.to_json()?)?;
        Ok(())
    }

    pub fn read_file(path: &std::path::Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }
}

/// Iterator over nonzero entries by increasing modulus.
pub struct MergedByModulus<'a> {
    seq: &'a SpectralSequence,
    i_pos: usize,
    i_neg: usize,
}

impl Iterator for MergedByModulus<'_> {
    type Item = f64;

    fn next(&mut self) -> Option<f64> {
        let p = self.seq.positive.get(self.i_pos);
        let n = self.seq.negative.get(self.i_neg);
        match (p, n) {
            (Some(&p), Some(&n)) => {
                if p <= n.abs() {
                    self.i_pos += 1;
                    Some(p)
                } else {
                    self.i_neg += 1;
                    Some(n)
                }
            }
            (Some(&p), None) => {
                self.i_pos += 1;
                Some(p)
            }
            (None, Some(&n)) => {
                self.i_neg += 1;
                Some(n)
            }
            (None, None) => None,
        }
    }
}

/// Eigenvalue equality at the root-finder noise floor: relative 1e-12,
/// absolute 1e-14 near the origin.
pub fn eigenvalues_equal(x: f64, y: f64) -> bool {
    (x - y).abs() <= f64::max(1e-14, 1e-12 * x.abs().max(y.abs()))
}

/// Which sequence of a pair an entry came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SequenceTag {
    A,
    B,
}

/// Result of the interlacing check, with a witness on failure.
#[derive(Debug, Clone, PartialEq)]
pub enum InterlacingOutcome {
    Interlaced,
    /// Two extensions claim the same real point; each real number belongs
    /// to the spectrum of exactly one canonical extension.
    SharedEigenvalue { a: f64, b: f64 },
    /// Two consecutive merged entries came from the same sequence inside
    /// the window where both sequences have entries.
    SameSourceAdjacent {
        first: f64,
        second: f64,
        source: SequenceTag,
    },
}

impl InterlacingOutcome {
    pub fn is_interlaced(&self) -> bool {
        matches!(self, InterlacingOutcome::Interlaced)
    }
}

/// Checks that two spectra strictly alternate on the window covered by
/// both. Entries outside the shorter sequence's reach are ignored: a
/// truncated branch says nothing about alternation beyond its last entry.
pub fn check_interlacing(
    seq_a: &SpectralSequence,
    seq_b: &SpectralSequence,
) -> Result<InterlacingOutcome> {
    if seq_a.is_empty() || seq_b.is_empty() {
        return Err(Error::InvalidParameter(
            "interlacing check needs two nonempty sequences".into(),
        ));
    }
    let a = seq_a.all_sorted();
    let b = seq_b.all_sorted();

    // Shared-eigenvalue scan over everything, not just the overlap window.
    {
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            if eigenvalues_equal(a[i], b[j]) {
                return Ok(InterlacingOutcome::SharedEigenvalue { a: a[i], b: b[j] });
            }
            if a[i] < b[j] {
                i += 1;
            } else {
                j += 1;
            }
        }
    }

    let lo = a[0].max(b[0]);
    let hi = a[a.len() - 1].min(b[b.len() - 1]);
    let mut merged: Vec<(f64, SequenceTag)> = a
        .iter()
        .map(|&x| (x, SequenceTag::A))
        .chain(b.iter().map(|&x| (x, SequenceTag::B)))
        .filter(|&(x, _)| x >= lo && x <= hi)
        .collect();
    merged.sort_by(|p, q| p.0.partial_cmp(&q.0).unwrap());

    for w in merged.windows(2) {
        if w[0].1 == w[1].1 {
            return Ok(InterlacingOutcome::SameSourceAdjacent {
                first: w[0].0,
                second: w[1].0,
                source: w[0].1,
            });
        }
    }
    Ok(InterlacingOutcome::Interlaced)
}

/// Two interlaced extension spectra: `seq_a` holds the zeros of `s_0`
/// and `seq_b` the zeros of `s_γ` for the stored `gamma ∈ (0, π)`.
#[derive(Debug, Clone)]
pub struct ExtensionPair {
    seq_a: SpectralSequence,
    seq_b: SpectralSequence,
    gamma: f64,
}

impl ExtensionPair {
    pub fn new(seq_a: SpectralSequence, seq_b: SpectralSequence, gamma: f64) -> Result<Self> {
        if !(gamma > 0.0 && gamma < std::f64::consts::PI) {
            return Err(Error::InvalidParameter(format!(
                "gamma must lie in (0, pi), got {gamma}"
            )));
        }
        match check_interlacing(&seq_a, &seq_b)? {
            InterlacingOutcome::Interlaced => Ok(Self {
                seq_a,
                seq_b,
                gamma,
            }),
            InterlacingOutcome::SharedEigenvalue { a, b } => Err(Error::SharedEigenvalue { a, b }),
            InterlacingOutcome::SameSourceAdjacent { first, second, .. } => {
                Err(Error::InvalidParameter(format!(
                    "sequences do not interlace: consecutive entries {first} and {second} \
                     come from the same extension"
                )))
            }
        }
    }

    pub fn seq_a(&self) -> &SpectralSequence {
        &self.seq_a
    }

    pub fn seq_b(&self) -> &SpectralSequence {
        &self.seq_b
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }
}

/// Spectrum of the momentum extension `A_γ` on `[-a, a]`: the points
/// `(γ + kπ)/a` over all integers `k`, `j_max` entries per branch.
pub fn momentum_spectrum(a: f64, gamma: f64, j_max: usize) -> Result<SpectralSequence> {
    use std::f64::consts::PI;
    if !(a > 0.0 && a.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "half-length a must be positive, got {a}"
        )));
    }
    if j_max == 0 {
        return Err(Error::InvalidParameter("j_max must be at least 1".into()));
    }
    if !(0.0..PI).contains(&gamma) {
        return Err(Error::InvalidParameter(format!(
            "gamma must lie in [0, pi), got {gamma}"
        )));
    }
    let tail = Some(TailModel {
        exponent: 1.0,
        coefficient: PI / a,
    });
    let has_zero = gamma == 0.0;
    let k_start = if has_zero { 1 } else { 0 };
    let positive: Vec<f64> = (0..j_max)
        .map(|j| (gamma + (k_start + j) as f64 * PI) / a)
        .collect();
    let negative: Vec<f64> = (1..=j_max).map(|k| (gamma - k as f64 * PI) / a).collect();
    SpectralSequence::new(positive, negative, has_zero, tail)
}

/// Spectrum of the Neumann-at-0 Laplacian extension `D_β` on `[0, a]`.
///
/// Eigenvalues `b` satisfy `√b · tan(√b a) = tan β`. The endpoints β = 0
/// and β = π/2 use the closed forms `(kπ/a)²` and `((2k−1)π/(2a))²`; other
/// β are solved by bisection between consecutive β = 0 eigenvalues, where
/// the boundary function changes sign exactly once. For β ∈ (π/2, π) the
/// single negative eigenvalue `-ν²` with `ν·tanh(νa) = -tan β` is included.
///
/// At β = 0 the constant function satisfies both boundary conditions; that
/// origin eigenvalue is recorded in the zero flag while the positive branch
/// lists `(kπ/a)²` for `k ≥ 1`.
pub fn neumann_laplacian_spectrum(a: f64, beta: f64, j_max: usize) -> Result<SpectralSequence> {
    use std::f64::consts::{FRAC_PI_2, PI};
    if !(a > 0.0 && a.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "length a must be positive, got {a}"
        )));
    }
    if j_max == 0 {
        return Err(Error::InvalidParameter("j_max must be at least 1".into()));
    }
    if !(0.0..PI).contains(&beta) {
        return Err(Error::InvalidParameter(format!(
            "beta must lie in [0, pi), got {beta}"
        )));
    }
    let tail = Some(TailModel {
        exponent: 2.0,
        coefficient: (PI / a) * (PI / a),
    });

    if beta == 0.0 {
        let positive = (1..=j_max)
            .map(|k| {
                let y = k as f64 * PI / a;
                y * y
            })
            .collect();
        return SpectralSequence::new(positive, Vec::new(), true, tail);
    }
    if beta == FRAC_PI_2 {
        let positive = (1..=j_max)
            .map(|k| {
                let y = (2 * k - 1) as f64 * PI / (2.0 * a);
                y * y
            })
            .collect();
        return SpectralSequence::new(positive, Vec::new(), false, tail);
    }

    // g(y) = y sin(ay) cos β - sin β cos(ay) vanishes exactly where
    // √b tan(√b a) = tan β (b = y²), and is continuous through the
    // tangent poles. At y = kπ/a it equals -sin β (-1)^k, so each
    // interval (kπ/a, (k+1)π/a) brackets exactly one root.
    let (sin_b, cos_b) = beta.sin_cos();
    let g = |y: f64| y * (a * y).sin() * cos_b - sin_b * (a * y).cos();
    let mut positive = Vec::with_capacity(j_max);
    for k in 0..j_max {
        let lo = k as f64 * PI / a;
        let hi = (k + 1) as f64 * PI / a;
        let y = bisect_root(g, lo, hi).ok_or(Error::Bracketing {
            lo,
            hi,
            detail: "no sign change for the Robin boundary function".into(),
        })?;
        positive.push(y * y);
    }

    let mut negative = Vec::new();
    if beta > FRAC_PI_2 {
        // One bound state: ν tanh(νa) = -tan β has a single positive root,
        // near ν = -tan β once that exceeds 1/a.
        let target = -beta.tan();
        let f = |nu: f64| nu * (a * nu).tanh() - target;
        let mut hi = (2.0 / a).max(2.0 * target);
        while f(hi) < 0.0 {
            hi *= 2.0;
            if !hi.is_finite() {
                return Err(Error::Bracketing {
                    lo: 0.0,
                    hi,
                    detail: "bound-state equation never changed sign".into(),
                });
            }
        }
        let nu = bisect_root(f, 0.0, hi).ok_or(Error::Bracketing {
            lo: 0.0,
            hi,
            detail: "bound-state bisection failed".into(),
        })?;
        negative.push(-nu * nu);
    }

    SpectralSequence::new(positive, negative, false, tail)
}

/// Bisection on a bracketing interval; `None` when the endpoints do not
/// straddle a sign change.
fn bisect_root(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> Option<f64> {
    let mut flo = f(lo);
    let fhi = f(hi);
    if flo == 0.0 {
        return Some(lo);
    }
    if fhi == 0.0 {
        return Some(hi);
    }
    if flo.signum() == fhi.signum() {
        return None;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let fm = f(mid);
        if fm == 0.0 {
            return Some(mid);
        }
        if fm.signum() == flo.signum() {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
        if hi - lo <= 1e-15 * hi.abs().max(1.0) {
            break;
        }
    }
    Some(0.5 * (lo + hi))
}

/// Spectrum of the harmonic-oscillator extension: `{2j - 1 : j ≥ 1}`.
pub fn harmonic_oscillator_spectrum(j_max: usize) -> Result<SpectralSequence> {
    if j_max == 0 {
        return Err(Error::InvalidParameter("j_max must be at least 1".into()));
    }
    let positive = (1..=j_max).map(|j| (2 * j - 1) as f64).collect();
    SpectralSequence::new(
        positive,
        Vec::new(),
        false,
        Some(TailModel {
            exponent: 1.0,
            coefficient: 2.0,
        }),
    )
}

/// Synthetic interlaced partner: midpoints of consecutive entries. Models
/// the spectrum of a rank-one perturbation sitting strictly between the
/// eigenvalues of the unperturbed extension; inherits the tail model.
pub fn midpoint_interlaced_partner(seq: &SpectralSequence) -> Result<SpectralSequence> {
    let all = seq.all_sorted();
    if all.len() < 2 {
        return Err(Error::InvalidParameter(
            "midpoint partner needs at least two entries".into(),
        ));
    }
    let mids: Vec<f64> = all.windows(2).map(|w| 0.5 * (w[0] + w[1])).collect();
    SpectralSequence::from_unsorted(mids, seq.tail())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::f64::consts::{FRAC_PI_2, PI};

    fn assert_close(x: f64, y: f64, tol: f64) {
        assert!(
            (x - y).abs() <= tol * y.abs().max(1.0),
            "{x} vs {y} (tol {tol})"
        );
    }

    #[test]
    fn momentum_paper_values() {
        let s = momentum_spectrum(PI, FRAC_PI_2, 3).unwrap();
        assert_eq!(s.positive(), &[0.5, 1.5, 2.5]);
        assert_eq!(s.negative(), &[-0.5, -1.5, -2.5]);
        assert!(!s.has_zero());
    }

    #[test]
    fn momentum_zero_gamma_flags_origin() {
        let s = momentum_spectrum(PI, 0.0, 2).unwrap();
        assert_eq!(s.positive(), &[1.0, 2.0]);
        assert_eq!(s.negative(), &[-1.0, -2.0]);
        assert!(s.has_zero());
    }

    #[test]
    fn momentum_direct_substitution() {
        let s = momentum_spectrum(1.0, 0.3, 1).unwrap();
        assert_close(s.positive()[0], 0.3, 1e-15);
        assert_close(s.negative()[0], 0.3 - PI, 1e-15);
        assert!(!s.has_zero());
    }

    #[test]
    fn momentum_rejects_bad_parameters() {
        assert!(momentum_spectrum(-1.0, 0.0, 3).is_err());
        assert!(momentum_spectrum(1.0, 0.0, 0).is_err());
        assert!(momentum_spectrum(1.0, PI, 3).is_err());
    }

    #[test]
    fn momentum_branches_are_arithmetic_progressions() {
        // Exact up to one rounding of each entry.
        let a = 1.7;
        let s = momentum_spectrum(a, 0.9, 500).unwrap();
        let step = PI / a;
        for w in s.positive().windows(2) {
            assert_close(w[1] - w[0], step, 1e-13);
        }
        for w in s.negative().windows(2) {
            assert_close(w[1] - w[0], -step, 1e-13);
        }
    }

    #[test]
    fn laplacian_closed_forms() {
        let s = neumann_laplacian_spectrum(PI, 0.0, 3).unwrap();
        assert_eq!(s.positive(), &[1.0, 4.0, 9.0]);
        assert!(s.has_zero());

        let s = neumann_laplacian_spectrum(PI, FRAC_PI_2, 2).unwrap();
        assert_close(s.positive()[0], 0.25, 1e-14);
        assert_close(s.positive()[1], 2.25, 1e-14);
        assert!(!s.has_zero());
    }

    #[test]
    fn laplacian_general_beta_root() {
        // Oracle: bisection on √b tan(√b) = 1 over (0, (π/2)²) done here
        // with the raw identity, independent of the generator's g(y).
        let f = |b: f64| b.sqrt() * b.sqrt().tan() - 1.0;
        let (mut lo, mut hi) = (1e-8, FRAC_PI_2 * FRAC_PI_2 - 1e-8);
        for _ in 0..90 {
            let mid = 0.5 * (lo + hi);
            if f(mid) > 0.0 {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        let oracle = 0.5 * (lo + hi);
        assert_close(oracle, 0.7402, 1e-3);

        let s = neumann_laplacian_spectrum(1.0, std::f64::consts::FRAC_PI_4, 1).unwrap();
        assert_close(s.positive()[0], oracle, 1e-10);
    }

    #[test]
    fn laplacian_matches_closed_form_at_half_pi_via_solver() {
        // Nudge beta off π/2 so the generic solver runs, then compare.
        let s1 = neumann_laplacian_spectrum(PI, FRAC_PI_2, 5).unwrap();
        let s2 = neumann_laplacian_spectrum(PI, FRAC_PI_2 - 1e-12, 5).unwrap();
        for (x, y) in s1.positive().iter().zip(s2.positive()) {
            assert_close(*x, *y, 1e-9);
        }
    }

    #[test]
    fn laplacian_bound_state_for_large_beta() {
        let beta = 2.5; // tan β < 0
        let s = neumann_laplacian_spectrum(1.0, beta, 3).unwrap();
        assert_eq!(s.negative().len(), 1);
        let nu = (-s.negative()[0]).sqrt();
        assert_close(nu * nu.tanh(), -beta.tan(), 1e-9);
    }

    #[test]
    fn harmonic_values_and_tail() {
        let s = harmonic_oscillator_spectrum(3).unwrap();
        assert_eq!(s.positive(), &[1.0, 3.0, 5.0]);
        assert!(s.negative().is_empty());
        let s = harmonic_oscillator_spectrum(1).unwrap();
        assert_eq!(s.positive(), &[1.0]);
        let s = harmonic_oscillator_spectrum(100).unwrap();
        assert_eq!(s.positive()[99], 199.0);
    }

    #[test]
    fn interlacing_momentum_pair() {
        let a = momentum_spectrum(PI, 0.0, 50).unwrap();
        let b = momentum_spectrum(PI, FRAC_PI_2, 50).unwrap();
        assert!(check_interlacing(&a, &b).unwrap().is_interlaced());
    }

    #[test]
    fn interlacing_same_source_witness() {
        let a = SpectralSequence::new(vec![1.0, 2.0], vec![], false, None).unwrap();
        let b = SpectralSequence::new(vec![1.1, 1.2], vec![], false, None).unwrap();
        match check_interlacing(&a, &b).unwrap() {
            InterlacingOutcome::SameSourceAdjacent { first, second, .. } => {
                assert_eq!((first, second), (1.1, 1.2));
            }
            other => panic!("expected same-source witness, got {other:?}"),
        }
    }

    #[test]
    fn interlacing_shared_eigenvalue() {
        let a = SpectralSequence::new(vec![1.0], vec![], false, None).unwrap();
        let b = SpectralSequence::new(vec![1.0], vec![], false, None).unwrap();
        match check_interlacing(&a, &b).unwrap() {
            InterlacingOutcome::SharedEigenvalue { a, b } => assert_eq!((a, b), (1.0, 1.0)),
            other => panic!("expected shared-eigenvalue violation, got {other:?}"),
        }
    }

    #[test]
    fn interlacing_rejects_empty() {
        let a = SpectralSequence::new(vec![1.0], vec![], false, None).unwrap();
        let b = SpectralSequence::new(vec![], vec![], false, None).unwrap();
        assert!(check_interlacing(&a, &b).is_err());
    }

    #[test]
    fn merged_by_modulus_interleaves() {
        let s = momentum_spectrum(PI, FRAC_PI_2, 3).unwrap();
        let merged: Vec<f64> = s.nonzero_by_modulus().collect();
        assert_eq!(merged, vec![0.5, -0.5, 1.5, -1.5, 2.5, -2.5]);
    }

    #[test]
    fn json_round_trip_is_stable() {
        let s = momentum_spectrum(PI, FRAC_PI_2, 10).unwrap();
        let once = s.to_json().unwrap();
        let back = SpectralSequence::from_json(&once).unwrap();
        assert_eq!(back.to_json().unwrap(), once);
        assert_eq!(back, s);
    }

    #[test]
    fn midpoint_partner_interlaces_harmonic() {
        let h = harmonic_oscillator_spectrum(200).unwrap();
        let m = midpoint_interlaced_partner(&h).unwrap();
        assert_eq!(m.positive()[0], 2.0);
        assert_eq!(m.positive()[1], 4.0);
        assert!(check_interlacing(&h, &m).unwrap().is_interlaced());
    }

    #[test]
    fn distinct_extension_spectra_are_disjoint() {
        let a = momentum_spectrum(2.0, 0.4, 200).unwrap();
        let b = momentum_spectrum(2.0, 1.9, 200).unwrap();
        let mut min_gap = f64::INFINITY;
        for x in a.all_sorted() {
            for y in b.all_sorted() {
                min_gap = min_gap.min((x - y).abs());
            }
        }
        assert!(min_gap > 1e-6, "min pairwise distance {min_gap}");
    }

    proptest! {
        #[test]
        fn momentum_pairs_interlace(
            a in 0.2f64..5.0,
            g1 in 0.0f64..PI,
            g2 in 0.0f64..PI,
            n in 2usize..40,
        ) {
            prop_assume!((g1 - g2).abs() > 1e-6);
            let s1 = momentum_spectrum(a, g1, n).unwrap();
            let s2 = momentum_spectrum(a, g2, n).unwrap();
            prop_assert!(check_interlacing(&s1, &s2).unwrap().is_interlaced());
        }

        #[test]
        fn laplacian_pairs_interlace(
            a in 0.4f64..4.0,
            b1 in 0.0f64..PI,
            b2 in 0.0f64..PI,
            n in 2usize..20,
        ) {
            prop_assume!((b1 - b2).abs() > 1e-4);
            let s1 = neumann_laplacian_spectrum(a, b1, n).unwrap();
            let s2 = neumann_laplacian_spectrum(a, b2, n).unwrap();
            prop_assert!(check_interlacing(&s1, &s2).unwrap().is_interlaced());
        }
    }
}
