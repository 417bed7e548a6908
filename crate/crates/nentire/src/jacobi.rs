//! Orthogonal-polynomial engine for semi-infinite Jacobi matrices.
//!
//! A Jacobi matrix with off-diagonal `b_k > 0` and diagonal `q_k` drives
//! the three-term recurrence
//!
//! ```text
//! b_k u_k = (z - q_k) u_{k-1} - b_{k-1} u_{k-2},     k ≥ 2,
//! ```
//!
//! whose two normalized solutions are the polynomials of the first kind
//! (P₀ ≡ 1) and second kind (Q₀ ≡ 0, Q₁ ≡ 1/b₁). The vector with
//! components P_{k-1}(z) pairs to exactly 1 against the first basis
//! vector for every z, which is the entire-gauge identity of this model;
//! the second-kind vector pairs to 1/b₁ against the second basis vector.
//! Whether Σ|P_k(z)|² converges off the real axis separates deficiency
//! indices (1,1) (limit circle) from (0,0) (limit point).

use num_complex::Complex64;
use serde::Deserialize;

use crate::error::{Error, Result};
use crate::spectra::SpectralSequence;

/// How finite coefficient lists continue past their stored prefix.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Extension {
    /// Repeat the stored block cyclically.
    Periodic,
    /// Repeat the last stored value.
    Last,
}

#[derive(Debug, Clone)]
enum Coeffs {
    Lists {
        b: Vec<f64>,
        q: Vec<f64>,
        extension: Extension,
    },
    /// `b ≡ 1`, `q ≡ 0`: the free Jacobi matrix, essentially selfadjoint.
    Free,
    /// `b_k = (k+1)²`, `q ≡ 0`: off-diagonal growth fast enough for
    /// limit-circle (log-concave b with Σ 1/b_k < ∞).
    SquareGrowth,
}

/// Semi-infinite Jacobi matrix given by closed-form coefficients or by
/// finite lists with an extension rule. Indices are 1-based to match the
/// recurrence above.
#[derive(Debug, Clone)]
pub struct JacobiMatrix {
    coeffs: Coeffs,
}

impl JacobiMatrix {
    pub fn from_lists(b: Vec<f64>, q: Vec<f64>, extension: Extension) -> Result<Self> {
        if b.is_empty() || q.is_empty() {
            return Err(Error::InvalidParameter(
                "need at least one b and one q entry".into(),
            ));
        }
        if b.iter().any(|&x| !(x > 0.0) || !x.is_finite()) {
            return Err(Error::InvalidParameter(
                "off-diagonal entries b_k must be positive".into(),
            ));
        }
        if q.iter().any(|&x| !x.is_finite()) {
            return Err(Error::InvalidParameter(
                "diagonal entries must be finite".into(),
            ));
        }
        Ok(Self {
            coeffs: Coeffs::Lists { b, q, extension },
        })
    }

    pub fn free() -> Self {
        Self {
            coeffs: Coeffs::Free,
        }
    }

    pub fn square_growth() -> Self {
        Self {
            coeffs: Coeffs::SquareGrowth,
        }
    }

    pub fn from_formula(name: &str) -> Result<Self> {
        match name {
            "free" => Ok(Self::free()),
            "square" => Ok(Self::square_growth()),
            other => Err(Error::InvalidParameter(format!(
                "unknown Jacobi formula '{other}' (known: free, square)"
            ))),
        }
    }

    /// Parses `{"b":[…],"q":[…],"extension":"periodic"|"last"|"formula:<name>"}`.
    pub fn from_json(text: &str) -> Result<Self> {
        #[derive(Deserialize)]
        struct Raw {
            #[serde(default)]
            b: Vec<f64>,
            #[serde(default)]
            q: Vec<f64>,
            extension: String,
        }
        let raw: Raw = serde_json::from_str(text)?;
        match raw.extension.as_str() {
            "periodic" => Self::from_lists(raw.b, raw.q, Extension::Periodic),
            "last" => Self::from_lists(raw.b, raw.q, Extension::Last),
            other => match other.strip_prefix("formula:") {
                Some(name) => Self::from_formula(name),
                None => Err(Error::InvalidParameter(format!(
                    "unknown extension rule '{other}'"
                ))),
            },
        }
    }

    /// Off-diagonal entry `b_k`, `k ≥ 1`.
    pub fn b(&self, k: usize) -> f64 {
        debug_assert!(k >= 1);
        match &self.coeffs {
            Coeffs::Free => 1.0,
            Coeffs::SquareGrowth => {
                let v = (k + 1) as f64;
                v * v
            }
            Coeffs::Lists { b, extension, .. } => extend(b, *extension, k),
        }
    }

    /// Diagonal entry `q_k`, `k ≥ 1`.
    pub fn q(&self, k: usize) -> f64 {
        debug_assert!(k >= 1);
        match &self.coeffs {
            Coeffs::Free | Coeffs::SquareGrowth => 0.0,
            Coeffs::Lists { q, extension, .. } => extend(q, *extension, k),
        }
    }
}

fn extend(list: &[f64], extension: Extension, k: usize) -> f64 {
    let i = k - 1;
    if i < list.len() {
        list[i]
    } else {
        match extension {
            Extension::Periodic => list[i % list.len()],
            Extension::Last => *list.last().unwrap(),
        }
    }
}

/// First `n` orthogonal polynomials of the first kind, `P₀(z) … P_{n-1}(z)`.
pub fn orthopoly_first(matrix: &JacobiMatrix, z: Complex64, n: usize) -> Result<Vec<Complex64>> {
    if n == 0 {
        return Err(Error::InvalidParameter("n must be at least 1".into()));
    }
    let mut out = Vec::with_capacity(n);
    out.push(Complex64::new(1.0, 0.0));
    if n >= 2 {
        out.push((z - matrix.q(1)) / matrix.b(1));
    }
    extend_by_recurrence(matrix, z, &mut out, n);
    Ok(out)
}

/// First `n` orthogonal polynomials of the second kind, `Q₀(z) … Q_{n-1}(z)`.
///
/// Initialized with Q₀ ≡ 0 and Q₁ ≡ 1/b₁ so that the second-kind vector
/// pairs to b₁⁻¹ against the second basis vector for every z.
pub fn orthopoly_second(matrix: &JacobiMatrix, z: Complex64, n: usize) -> Result<Vec<Complex64>> {
    if n == 0 {
        return Err(Error::InvalidParameter("n must be at least 1".into()));
    }
    let mut out = Vec::with_capacity(n);
    out.push(Complex64::new(0.0, 0.0));
    if n >= 2 {
        out.push(Complex64::new(1.0 / matrix.b(1), 0.0));
    }
    extend_by_recurrence(matrix, z, &mut out, n);
    Ok(out)
}

fn extend_by_recurrence(matrix: &JacobiMatrix, z: Complex64, out: &mut Vec<Complex64>, n: usize) {
    for k in out.len()..n {
        // b_k u_k = (z - q_k) u_{k-1} - b_{k-1} u_{k-2}
        let u = ((z - matrix.q(k)) * out[k - 1] - matrix.b(k - 1) * out[k - 2]) / matrix.b(k);
        out.push(u);
    }
}

/// Verdict of the limit-point / limit-circle heuristic.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DeficiencyVerdict {
    LimitCircle,
    LimitPoint,
    Inconclusive,
}

/// Heuristic verdict plus the diagnostics that produced it.
#[derive(Debug, Clone)]
pub struct DeficiencyReport {
    pub verdict: DeficiencyVerdict,
    /// ln Σ_{k<n_max} |P_k(z)|².
    pub ln_partial_sum: f64,
    /// Largest increment-to-sum ratio over the final window.
    pub max_window_ratio: f64,
    /// Fitted decay exponent of the increments |P_k|² ~ k^{-p}.
    pub increment_exponent: f64,
    /// Number of joint rescalings applied to keep the recurrence finite.
    pub rescale_count: usize,
}

/// Classifies the matrix at a non-real point by the growth of Σ|P_k(z)|².
///
/// Limit circle is reported when the final `window` increments fall below
/// 1e-12 of the partial sum, or when the increments decay like `k^{-p}`
/// with p safely above 1 (so their sum converges). Limit point is
/// reported when the fitted exponent sits safely below 1, which covers
/// both geometric growth and too-slow decay. The band in between is
/// inconclusive: finite data cannot certify convergence there.
pub fn deficiency_heuristic(
    matrix: &JacobiMatrix,
    z: Complex64,
    n_max: usize,
    window: usize,
) -> Result<DeficiencyReport> {
    if z.im == 0.0 {
        return Err(Error::InvalidParameter(
            "deficiency test point must be non-real".into(),
        ));
    }
    if window == 0 || n_max < 4 * window {
        return Err(Error::InvalidParameter(
            "need n_max >= 4 * window and a nonempty window".into(),
        ));
    }

    // Joint rescaling of (P_{k-1}, P_k) with the accumulated log tracked
    // separately; the partial sum stays in log space throughout.
    let mut p_prev = Complex64::new(1.0, 0.0); // P_0
    let mut p_cur = (z - matrix.q(1)) / matrix.b(1); // P_1
    let mut ln_scale = 0.0f64;
    let mut rescales = 0usize;
    let mut ln_sum = 0.0f64; // ln |P_0|^2
    let mut ln_increments = Vec::with_capacity(n_max);
    ln_increments.push(0.0);

    let push_increment = |ln_sum: &mut f64, ln_d: f64, store: &mut Vec<f64>| {
        store.push(ln_d);
        let hi = ln_sum.max(ln_d);
        *ln_sum = hi + ((*ln_sum - hi).exp() + (ln_d - hi).exp()).ln();
    };
    let ln_d1 = 2.0 * (p_cur.norm().ln() + ln_scale);
    push_increment(&mut ln_sum, ln_d1, &mut ln_increments);

    for k in 2..n_max {
        let next = ((z - matrix.q(k)) * p_cur - matrix.b(k - 1) * p_prev) / matrix.b(k);
        p_prev = p_cur;
        p_cur = next;
        let mag = p_cur.norm().max(p_prev.norm());
        if !(1e-100..=1e100).contains(&mag) && mag != 0.0 {
            p_prev /= mag;
            p_cur /= mag;
            ln_scale += mag.ln();
            rescales += 1;
        }
        let ln_d = 2.0 * (p_cur.norm().ln() + ln_scale);
        push_increment(&mut ln_sum, ln_d, &mut ln_increments);
    }

    let tail = &ln_increments[ln_increments.len() - window..];
    let max_window_ratio = tail
        .iter()
        .map(|&ln_d| (ln_d - ln_sum).exp())
        .fold(0.0f64, f64::max);

    // Decay exponent of the increments over the trailing half.
    let fit_from = ln_increments.len() / 2;
    let pts: Vec<(f64, f64)> = ln_increments
        .iter()
        .enumerate()
        .skip(fit_from)
        .map(|(k, &ln_d)| ((k as f64 + 1.0).ln(), ln_d))
        .collect();
    let slope = least_squares_slope(&pts);
    let increment_exponent = -slope;

    let verdict = if max_window_ratio < 1e-12 {
        DeficiencyVerdict::LimitCircle
    } else if increment_exponent > 1.05 {
        DeficiencyVerdict::LimitCircle
    } else if increment_exponent < 0.95 {
        DeficiencyVerdict::LimitPoint
    } else {
        DeficiencyVerdict::Inconclusive
    };

    Ok(DeficiencyReport {
        verdict,
        ln_partial_sum: ln_sum,
        max_window_ratio,
        increment_exponent,
        rescale_count: rescales,
    })
}

/// Largest normalized drift of the Wronskian-type invariant
/// `b_k (P_k Q_{k-1} - P_{k-1} Q_k)` from its initial value -1 over
/// `k ≤ k_max`.
///
/// Both solution pairs advance under one joint scale factor, and each
/// residual is measured against the magnitude of the two products whose
/// cancellation produces it — the honest yardstick once the polynomials
/// grow past the point where an O(1) difference is representable.
pub fn wronskian_residual(matrix: &JacobiMatrix, z: Complex64, k_max: usize) -> Result<f64> {
    if k_max < 2 {
        return Err(Error::InvalidParameter("k_max must be at least 2".into()));
    }
    let mut p_prev = Complex64::new(1.0, 0.0);
    let mut p_cur = (z - matrix.q(1)) / matrix.b(1);
    let mut q_prev = Complex64::new(0.0, 0.0);
    let mut q_cur = Complex64::new(1.0 / matrix.b(1), 0.0);
    let mut ln_scale = 0.0f64; // stored values are e^{-ln_scale} × true
    let mut worst = 0.0f64;
    for k in 2..=k_max {
        let advance = |cur: Complex64, prev: Complex64| {
            ((z - matrix.q(k)) * cur - matrix.b(k - 1) * prev) / matrix.b(k)
        };
        let p_next = advance(p_cur, p_prev);
        let q_next = advance(q_cur, q_prev);
        p_prev = p_cur;
        p_cur = p_next;
        q_prev = q_cur;
        q_cur = q_next;
        let mag = p_cur
            .norm()
            .max(p_prev.norm())
            .max(q_cur.norm())
            .max(q_prev.norm());
        if !(1e-100..=1e100).contains(&mag) && mag != 0.0 {
            p_prev /= mag;
            p_cur /= mag;
            q_prev /= mag;
            q_cur /= mag;
            ln_scale += mag.ln();
        }
        let t1 = p_cur * q_prev;
        let t2 = p_prev * q_cur;
        let w_scaled = matrix.b(k) * (t1 - t2);
        // True Wronskian is -1; in the scaled frame it appears as -e^{-2 ln s}.
        let expected = -(-2.0 * ln_scale).exp();
        let scale = (matrix.b(k) * (t1.norm() + t2.norm()))
            .max(expected.abs())
            .max(f64::MIN_POSITIVE);
        worst = worst.max((w_scaled - expected).norm() / scale);
    }
    Ok(worst)
}

fn least_squares_slope(pts: &[(f64, f64)]) -> f64 {
    let n = pts.len() as f64;
    let sx: f64 = pts.iter().map(|p| p.0).sum();
    let sy: f64 = pts.iter().map(|p| p.1).sum();
    let sxx: f64 = pts.iter().map(|p| p.0 * p.0).sum();
    let sxy: f64 = pts.iter().map(|p| p.0 * p.1).sum();
    let denom = n * sxx - sx * sx;
    if denom == 0.0 {
        return 0.0;
    }
    (n * sxy - sx * sy) / denom
}

/// Eigenvalues of the N×N leading principal submatrix, by bisection on
/// Sturm sign counts of the shifted LDLᵀ recurrence.
pub fn truncated_spectrum(matrix: &JacobiMatrix, n_dim: usize) -> Result<SpectralSequence> {
    if n_dim < 2 {
        return Err(Error::InvalidParameter(
            "submatrix dimension must be at least 2".into(),
        ));
    }
    let diag: Vec<f64> = (1..=n_dim).map(|k| matrix.q(k)).collect();
    let off: Vec<f64> = (1..n_dim).map(|k| matrix.b(k)).collect();

    // Gershgorin bounds.
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for i in 0..n_dim {
        let r = off.get(i.wrapping_sub(1)).copied().unwrap_or(0.0).abs()
            + off.get(i).copied().unwrap_or(0.0).abs();
        lo = lo.min(diag[i] - r);
        hi = hi.max(diag[i] + r);
    }
    let span = (hi - lo).max(1e-300);
    let count_below = |x: f64| -> usize {
        let mut cnt = 0;
        let mut d = diag[0] - x;
        if d < 0.0 {
            cnt += 1;
        }
        for i in 1..n_dim {
            let b = off[i - 1];
            let mut dn = (diag[i] - x) - b * b / d;
            if dn == 0.0 {
                dn = -1e-300;
            }
            if dn < 0.0 {
                cnt += 1;
            }
            d = dn;
        }
        cnt
    };

    let mut eigenvalues = Vec::with_capacity(n_dim);
    for i in 0..n_dim {
        let (mut a, mut b) = (lo - 1e-12 * span, hi + 1e-12 * span);
        for _ in 0..120 {
            let mid = 0.5 * (a + b);
            if count_below(mid) >= i + 1 {
                b = mid;
            } else {
                a = mid;
            }
            if b - a <= 1e-14 * span {
                break;
            }
        }
        eigenvalues.push(0.5 * (a + b));
    }
    SpectralSequence::from_unsorted(eigenvalues, None)
}
