//! Genus-0 canonical products over real zero sets, with symmetric limits.
//!
//! For a zero set {b_j} the product is
//!
//! ```text
//! h(z) = lim_{r→∞} ∏_{|b_j| ≤ r} (1 - z/b_j),
//! ```
//!
//! with a leading factor `z` when the origin is a zero (excluded from the
//! factors). Factors are consumed by increasing modulus, which pairs the
//! positive and negative branches and realizes the symmetric limit; the
//! running partial is renormalized into log space before it can leave the
//! representable range, with sign and phase tracked separately.
//!
//! Zeros beyond the truncation radius contribute through the branch tail
//! model `|b_j| ≈ C (j + δ)^p`: the omitted log-sum is approximated by the
//! midpoint Euler-Maclaurin formula applied to the expansion of
//! `log(1 - z/b)` in powers of `z/b`, and the deviation of the stored
//! zeros from the model near the cut feeds the returned error bound. For
//! linear growth (p = 1) a single branch diverges; only the paired
//! two-branch form, whose leading terms cancel, is summable — exactly the
//! shape the symmetric limit demands.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::spectra::SpectralSequence;

/// Zero set plus origin flag, evaluated as a symmetric-limit product.
#[derive(Debug, Clone)]
pub struct CanonicalProduct {
    zeros: SpectralSequence,
    origin_zero: bool,
    tail_pos: Option<BranchTail>,
    tail_neg: Option<BranchTail>,
}

/// Internal per-branch tail: model coefficient/exponent from the sequence,
/// index offset δ fitted from the stored entries, and the residual
/// deviation of the fit near the end of storage.
#[derive(Debug, Clone, Copy)]
struct BranchTail {
    coefficient: f64,
    exponent: f64,
    delta: f64,
    deviation: f64,
}

/// Evaluation result on the complex path. `value` is the product itself
/// when representable (`±inf`/0 otherwise); `ln_abs` and `phase` are
/// always meaningful.
#[derive(Debug, Clone, Copy)]
pub struct ProductValue {
    pub value: Complex64,
    pub ln_abs: f64,
    pub phase: f64,
    pub rel_error: f64,
}

/// Evaluation result on the real path; the imaginary part is identically
/// zero by construction.
#[derive(Debug, Clone, Copy)]
pub struct RealProductValue {
    pub value: f64,
    pub ln_abs: f64,
    pub sign: f64,
    pub rel_error: f64,
}

impl RealProductValue {
    fn zero() -> Self {
        Self {
            value: 0.0,
            ln_abs: f64::NEG_INFINITY,
            sign: 0.0,
            rel_error: 0.0,
        }
    }
}

const MANTISSA_HI: f64 = 1e150;
const MANTISSA_LO: f64 = 1e-150;

impl CanonicalProduct {
    /// Builds the product over a spectral sequence; the origin flag is
    /// inherited from the sequence's zero eigenvalue.
    pub fn from_sequence(zeros: &SpectralSequence) -> Self {
        let fit = |branch: &[f64]| -> Option<BranchTail> {
            let model = zeros.tail()?;
            if branch.is_empty() {
                return None;
            }
            let n = branch.len();
            let window = n.saturating_sub(n.div_ceil(10).max(8).min(n));
            let pts = &branch[window..];
            let mut delta_sum = 0.0;
            for (i, &x) in pts.iter().enumerate() {
                let j = (window + i + 1) as f64;
                delta_sum += (x.abs() / model.coefficient).powf(1.0 / model.exponent) - j;
            }
            let delta = delta_sum / pts.len() as f64;
            let mut deviation = 0.0f64;
            for (i, &x) in pts.iter().enumerate() {
                let j = (window + i + 1) as f64;
                let predicted = model.coefficient * (j + delta).powf(model.exponent);
                deviation = deviation.max((x.abs() - predicted).abs());
            }
            Some(BranchTail {
                coefficient: model.coefficient,
                exponent: model.exponent,
                delta,
                deviation,
            })
        };
        Self {
            tail_pos: fit(zeros.positive()),
            tail_neg: fit(zeros.negative()),
            origin_zero: zeros.has_zero(),
            zeros: zeros.clone(),
        }
    }

    pub fn zeros(&self) -> &SpectralSequence {
        &self.zeros
    }

    pub fn origin_zero(&self) -> bool {
        self.origin_zero
    }

    /// Exact-match lookup of a stored zero (the origin counts when the
    /// origin flag is set).
    fn is_stored_zero(&self, x: f64) -> bool {
        if x == 0.0 {
            return self.origin_zero;
        }
        let branch = if x > 0.0 {
            self.zeros.positive()
        } else {
            self.zeros.negative()
        };
        branch
            .binary_search_by(|probe| probe.abs().partial_cmp(&x.abs()).unwrap())
            .is_ok_and(|i| branch[i] == x)
    }

    /// Evaluates the product at `z`. Dispatches to the real arithmetic
    /// path for real `z`, so real inputs produce exactly real outputs.
    pub fn evaluate(&self, z: Complex64, r_max: f64, rel_tol: f64) -> Result<ProductValue> {
        if z.im == 0.0 {
            let r = self.evaluate_real(z.re, r_max, rel_tol)?;
            return Ok(ProductValue {
                value: Complex64::new(r.value, 0.0),
                ln_abs: r.ln_abs,
                phase: if r.sign >= 0.0 { 0.0 } else { std::f64::consts::PI },
                rel_error: r.rel_error,
            });
        }
        self.complex_core(z, r_max, rel_tol)
    }

    /// Real-axis evaluation with sign/log bookkeeping in `f64`.
    pub fn evaluate_real(&self, x: f64, r_max: f64, rel_tol: f64) -> Result<RealProductValue> {
        if self.is_stored_zero(x) {
            return Ok(RealProductValue::zero());
        }
        self.real_core(x, r_max, rel_tol, None)
    }

    /// h'(x) at a stored zero `x`: the derivative of the vanishing factor
    /// times the product of all the others, cross-checked against a
    /// centered finite difference of the full product.
    pub fn derivative_at_zero(&self, x: f64) -> Result<RealProductValue> {
        let analytic = self.derivative_at_zero_unchecked(x)?;
        let step = 1e-6 * x.abs().max(1.0);
        let hi = self.real_core(x + step, f64::INFINITY, 1e-9, None)?;
        let lo = self.real_core(x - step, f64::INFINITY, 1e-9, None)?;
        let fd = (hi.value - lo.value) / (2.0 * step);
        let scale = analytic.value.abs().max(fd.abs()).max(1e-300);
        if (analytic.value - fd).abs() > 1e-4 * scale {
            return Err(Error::NumericalFailure(format!(
                "derivative cross-check failed at {x}: analytic {} vs centered difference {}",
                analytic.value, fd
            )));
        }
        Ok(analytic)
    }

    /// Analytic derivative at a stored zero without the finite-difference
    /// cross-check. Series scans evaluate thousands of these at points
    /// where the fixed-relative-step difference would be coarser than the
    /// oscillation scale of the product.
    pub(crate) fn derivative_at_zero_unchecked(&self, x: f64) -> Result<RealProductValue> {
        if !self.is_stored_zero(x) {
            return Err(Error::InvalidParameter(format!(
                "{x} is not a stored zero of this product"
            )));
        }
        let rel_tol = 1e-9;
        if x == 0.0 {
            // Leading factor z differentiates to 1; all other factors are 1 at 0.
            self.real_core(0.0, f64::INFINITY, rel_tol, Some(SkipOrigin))
        } else {
            let rest = self.real_core(x, f64::INFINITY, rel_tol, Some(SkipValue(x)))?;
            Ok(scale_real(rest, -1.0 / x))
        }
    }

    fn real_core(
        &self,
        x: f64,
        r_max: f64,
        rel_tol: f64,
        skip: Option<Skip>,
    ) -> Result<RealProductValue> {
        let r_cut = r_max.min(self.zeros.max_modulus());
        let r_half = 0.5 * r_cut;
        let mut mant = 1.0f64;
        let mut ln_acc = 0.0f64;
        let mut count_pos = 0usize;
        let mut count_neg = 0usize;
        let mut half_mark: Option<(f64, f64, usize, usize)> = None; // (ln, sign, jp, jn)

        match skip {
            Some(SkipOrigin) => {}
            _ if self.origin_zero => {
                mant = x;
                if mant == 0.0 {
                    return Ok(RealProductValue::zero());
                }
            }
            _ => {}
        }

        let mut factors = 0usize;
        for b in self.zeros.nonzero_by_modulus() {
            if b.abs() > r_max {
                break;
            }
            if half_mark.is_none() && b.abs() > r_half {
                half_mark = Some((ln_acc + mant.abs().ln(), mant.signum(), count_pos, count_neg));
            }
            if b > 0.0 {
                count_pos += 1;
            } else {
                count_neg += 1;
            }
            if matches!(skip, Some(SkipValue(v)) if v == b) {
                continue;
            }
            if x != 0.0 && (x - b).abs() <= 1e-12 * x.abs().max(b.abs()) {
                return Err(Error::InvalidParameter(format!(
                    "evaluation point {x} lies within relative 1e-12 of the zero {b}"
                )));
            }
            mant *= 1.0 - x / b;
            factors += 1;
            let a = mant.abs();
            if !(MANTISSA_LO..=MANTISSA_HI).contains(&a) {
                if a == 0.0 {
                    return Ok(RealProductValue::zero());
                }
                // The sign stays in the renormalized mantissa.
                ln_acc += a.ln();
                mant = mant.signum();
            }
        }

        let (tail, tail_err) =
            self.tail_log(Complex64::new(x, 0.0), count_pos, count_neg, rel_tol)?;
        let ln_full = ln_acc + mant.abs().ln() + tail.re;
        let sign_full = mant.signum();

        // Drift check: the value assembled at half the radius (partial
        // product + its own tail) must agree with the full assembly.
        let mut drift = 0.0;
        if let Some((ln_h, sign_h, jp, jn)) = half_mark {
            if r_half >= 2.0 * x.abs() {
                let (tail_h, _) = self.tail_log(Complex64::new(x, 0.0), jp, jn, rel_tol)?;
                drift = (ln_h + tail_h.re - ln_full).abs();
                if sign_h != sign_full {
                    drift += 1.0;
                }
                if drift > (10.0 * rel_tol).max(1e-12) * ln_full.abs().max(1.0) && drift > 10.0 * rel_tol {
                    return Err(Error::NonConvergence {
                        r_max,
                        trace: vec![(r_half, ln_h + tail_h.re), (r_cut, ln_full)],
                        detail: "partial products drift between half and full radius".into(),
                    });
                }
            }
        }

        let rel_error = (factors as f64) * f64::EPSILON + tail_err + drift;
        Ok(RealProductValue {
            value: sign_full * ln_full.exp(),
            ln_abs: ln_full,
            sign: sign_full,
            rel_error,
        })
    }

    fn complex_core(&self, z: Complex64, r_max: f64, rel_tol: f64) -> Result<ProductValue> {
        let r_cut = r_max.min(self.zeros.max_modulus());
        let r_half = 0.5 * r_cut;
        let mut mant = Complex64::new(1.0, 0.0);
        let mut ln_acc = 0.0f64;
        let mut count_pos = 0usize;
        let mut count_neg = 0usize;
        let mut half_mark: Option<(f64, usize, usize)> = None;

        if self.origin_zero {
            mant = z;
        }

        let mut factors = 0usize;
        for b in self.zeros.nonzero_by_modulus() {
            if b.abs() > r_max {
                break;
            }
            if half_mark.is_none() && b.abs() > r_half {
                half_mark = Some((ln_acc + mant.norm().ln(), count_pos, count_neg));
            }
            if b > 0.0 {
                count_pos += 1;
            } else {
                count_neg += 1;
            }
            mant *= Complex64::new(1.0, 0.0) - z / b;
            factors += 1;
            let a = mant.norm();
            if !(MANTISSA_LO..=MANTISSA_HI).contains(&a) {
                if a == 0.0 {
                    return Ok(ProductValue {
                        value: Complex64::new(0.0, 0.0),
                        ln_abs: f64::NEG_INFINITY,
                        phase: 0.0,
                        rel_error: 0.0,
                    });
                }
                // Renormalizing by |mant| keeps the phase intact.
                ln_acc += a.ln();
                mant /= a;
            }
        }

        let (tail, tail_err) = self.tail_log(z, count_pos, count_neg, rel_tol)?;
        let ln_full = ln_acc + mant.norm().ln() + tail.re;
        let phase = mant.arg() + tail.im;

        let mut drift = 0.0;
        if let Some((ln_h, jp, jn)) = half_mark {
            if r_half >= 2.0 * z.norm() {
                let (tail_h, _) = self.tail_log(z, jp, jn, rel_tol)?;
                drift = (ln_h + tail_h.re - ln_full).abs();
                if drift > (10.0 * rel_tol).max(1e-12) * ln_full.abs().max(1.0) && drift > 10.0 * rel_tol {
                    return Err(Error::NonConvergence {
                        r_max,
                        trace: vec![(r_half, ln_h + tail_h.re), (r_cut, ln_full)],
                        detail: "partial products drift between half and full radius".into(),
                    });
                }
            }
        }

        let rel_error = (factors as f64) * f64::EPSILON + tail_err + drift;
        let value = if ln_full < 700.0 {
            Complex64::from_polar(ln_full.exp(), phase)
        } else {
            Complex64::new(f64::INFINITY, f64::INFINITY)
        };
        Ok(ProductValue {
            value,
            ln_abs: ln_full,
            phase,
            rel_error,
        })
    }

    /// Log-sum of the omitted factors: branch `sign·C(k+δ)^p` for
    /// `k > j_cut`, expanded in powers of `z/b` and summed with the
    /// midpoint Euler-Maclaurin formula. Returns `(Σ log-factor, error)`.
    fn tail_log(
        &self,
        z: Complex64,
        j_pos_cut: usize,
        j_neg_cut: usize,
        rel_tol: f64,
    ) -> Result<(Complex64, f64)> {
        struct Side {
            w: Complex64,
            u: f64,
            p: f64,
            deviation: f64,
            c: f64,
        }
        let mut sides = Vec::with_capacity(2);
        let mut exact = Complex64::new(0.0, 0.0);
        let mut err = 0.0f64;

        for (branch, cut, tail) in [
            (self.zeros.positive(), j_pos_cut, self.tail_pos),
            (self.zeros.negative(), j_neg_cut, self.tail_neg),
        ] {
            if cut >= branch.len() && tail.is_none() {
                continue; // finite branch, fully included
            }
            match tail {
                None => {
                    // No model: the stored zeros are the whole zero set;
                    // sum the omitted stored factors directly.
                    for &b in &branch[cut.min(branch.len())..] {
                        let f = Complex64::new(1.0, 0.0) - z / b;
                        exact += f.ln();
                    }
                }
                Some(t) => {
                    let sgn = if branch.first().copied().unwrap_or(1.0) > 0.0 {
                        1.0
                    } else {
                        -1.0
                    };
                    let u = cut as f64 + 0.5 + t.delta;
                    let first_omitted = t.coefficient * (cut as f64 + 1.0 + t.delta).powf(t.exponent);
                    if z.norm() > 0.6 * first_omitted {
                        return Err(Error::NonConvergence {
                            r_max: branch.get(cut.saturating_sub(1)).map(|b| b.abs()).unwrap_or(0.0),
                            trace: vec![],
                            detail: format!(
                                "|z| = {} too close to the first omitted zero {first_omitted}; \
                                 include more zeros or raise r_max",
                                z.norm()
                            ),
                        });
                    }
                    sides.push(Side {
                        w: z * sgn / t.coefficient,
                        u,
                        p: t.exponent,
                        deviation: t.deviation,
                        c: t.coefficient,
                    });
                }
            }
        }

        if sides.is_empty() {
            return Ok((exact, err));
        }

        // Deviation of stored zeros from the model propagates as
        // Σ |z|·dev/|b|² over the omitted range.
        for s in &sides {
            if s.deviation > 0.0 {
                let q = 2.0 * s.p;
                let sum_inv_sq = s.u.powf(1.0 - q) / (q - 1.0) / (s.c * s.c);
                err += 2.0 * z.norm() * s.deviation * sum_inv_sq;
            }
        }

        let mut total = exact;
        // m = 1 term: for p ≤ ~1 a lone branch diverges; a balanced pair
        // cancels to the finite w·ln(U₊/U₋).
        let p0 = sides[0].p;
        if p0 <= 1.15 {
            if sides.len() < 2 || (sides[0].p - sides[1].p).abs() > 1e-9 {
                return Err(Error::NonConvergence {
                    r_max: f64::NAN,
                    trace: vec![],
                    detail: format!(
                        "single-branch zero set growing like j^{p0:.2} has no symmetric limit"
                    ),
                });
            }
            let wsum = sides[0].w + sides[1].w;
            if wsum.norm() > 1e-9 * sides[0].w.norm().max(1e-300) {
                return Err(Error::NonConvergence {
                    r_max: f64::NAN,
                    trace: vec![],
                    detail: "branch densities differ: the symmetric limit drifts".into(),
                });
            }
            if (p0 - 1.0).abs() < 1e-6 {
                // ∫ -w/u du over both branches; the ln R parts cancel.
                total += sides[0].w * sides[0].u.ln() + sides[1].w * sides[1].u.ln();
            } else {
                let t1: Complex64 = sides
                    .iter()
                    .map(|s| s.w * s.u.powf(1.0 - p0))
                    .sum();
                total -= t1 / (p0 - 1.0);
            }
            // midpoint-rule correction for m = 1, per branch
            for s in &sides {
                total += s.w * s.p * s.u.powf(-s.p - 1.0) / 24.0;
            }
        } else {
            for s in &sides {
                let q = s.p;
                let integral = s.u.powf(1.0 - q) / (q - 1.0);
                let correction = q * s.u.powf(-q - 1.0) / 24.0;
                total -= s.w * (integral - correction);
            }
        }

        // m ≥ 2 terms, per branch.
        for s in &sides {
            let mut wm = s.w;
            let mut converged = false;
            for m in 2..=80 {
                wm *= s.w;
                let q = s.p * m as f64;
                let integral = s.u.powf(1.0 - q) / (q - 1.0);
                let correction = q * s.u.powf(-q - 1.0) / 24.0;
                let term = wm * (integral - correction) / m as f64;
                total -= term;
                if term.norm() < 0.01 * rel_tol + 1e-18 {
                    err += term.norm();
                    converged = true;
                    break;
                }
            }
            if !converged {
                return Err(Error::NonConvergence {
                    r_max: f64::NAN,
                    trace: vec![],
                    detail: "tail expansion did not converge; raise r_max".into(),
                });
            }
            // Euler-Maclaurin truncation: next correction scale.
            err += (s.w.norm() * s.u.powf(-s.p)).powi(2) * s.u.powf(-1.0) * 1e-2;
        }

        Ok((total, err))
    }
}

#[derive(Clone, Copy, PartialEq)]
enum Skip {
    SkipValue(f64),
    SkipOrigin,
}
use Skip::{SkipOrigin, SkipValue};

fn scale_real(v: RealProductValue, factor: f64) -> RealProductValue {
    RealProductValue {
        value: v.value * factor,
        ln_abs: v.ln_abs + factor.abs().ln(),
        sign: v.sign * factor.signum(),
        rel_error: v.rel_error,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectra::TailModel;
    use std::f64::consts::PI;

    /// Zeros {kπ : k ∈ ℤ} with the origin flagged: the product is sin z.
    fn sine_zeros(per_branch: usize) -> SpectralSequence {
        let pos: Vec<f64> = (1..=per_branch).map(|k| k as f64 * PI).collect();
        let neg: Vec<f64> = (1..=per_branch).map(|k| -(k as f64) * PI).collect();
        SpectralSequence::new(
            pos,
            neg,
            true,
            Some(TailModel {
                exponent: 1.0,
                coefficient: PI,
            }),
        )
        .unwrap()
    }

    /// Zeros {k²π² : k ≥ 1}: the product is sin(√z)/√z.
    fn sinc_sqrt_zeros(n: usize) -> SpectralSequence {
        let pos: Vec<f64> = (1..=n).map(|k| (k as f64 * PI).powi(2)).collect();
        SpectralSequence::new(
            pos,
            Vec::new(),
            false,
            Some(TailModel {
                exponent: 2.0,
                coefficient: PI * PI,
            }),
        )
        .unwrap()
    }

    #[test]
    fn empty_zero_set_gives_one() {
        let seq = SpectralSequence::new(vec![], vec![], false, None).unwrap();
        let h = CanonicalProduct::from_sequence(&seq);
        let v = h
            .evaluate(Complex64::new(3.3, -1.2), f64::INFINITY, 1e-10)
            .unwrap();
        assert_eq!(v.value, Complex64::new(1.0, 0.0));
    }

    #[test]
    fn reproduces_sine_on_the_real_axis() {
        let h = CanonicalProduct::from_sequence(&sine_zeros(10_000));
        let v = h.evaluate_real(PI / 2.0, f64::INFINITY, 1e-10).unwrap();
        assert!(
            (v.value - 1.0).abs() < 1e-9,
            "sin(π/2) via product: {}",
            v.value
        );
        let v = h.evaluate_real(2.0, f64::INFINITY, 1e-10).unwrap();
        assert!((v.value - 2.0f64.sin()).abs() < 1e-9, "{}", v.value);
    }

    #[test]
    fn reproduces_sine_at_complex_points() {
        let h = CanonicalProduct::from_sequence(&sine_zeros(10_000));
        for z in [
            Complex64::new(1.0, 1.0),
            Complex64::new(-4.4, 2.0),
            Complex64::new(0.3, -7.0),
        ] {
            let v = h.evaluate(z, f64::INFINITY, 1e-10).unwrap();
            let want = z.sin();
            assert!(
                (v.value - want).norm() < 1e-8 * want.norm(),
                "sin({z}) = {want}, product {}",
                v.value
            );
        }
    }

    #[test]
    fn laplacian_form_at_quarter_pi_squared() {
        // sin(√z)/√z at z = π²/4 equals 2/π.
        let h = CanonicalProduct::from_sequence(&sinc_sqrt_zeros(5_000));
        let v = h
            .evaluate_real(PI * PI / 4.0, f64::INFINITY, 1e-10)
            .unwrap();
        assert!(
            (v.value - 2.0 / PI).abs() < 1e-9,
            "expected 2/π ≈ 0.63662, got {}",
            v.value
        );
    }

    #[test]
    fn exact_zero_at_stored_zeros() {
        let h = CanonicalProduct::from_sequence(&sine_zeros(100));
        let v = h.evaluate_real(3.0 * PI, f64::INFINITY, 1e-9).unwrap();
        assert_eq!(v.value, 0.0);
        let v = h.evaluate_real(0.0, f64::INFINITY, 1e-9).unwrap();
        assert_eq!(v.value, 0.0);
    }

    #[test]
    fn near_zero_is_rejected() {
        let h = CanonicalProduct::from_sequence(&sine_zeros(100));
        let x = PI * (1.0 + 1e-14);
        assert!(h.evaluate_real(x, f64::INFINITY, 1e-9).is_err());
    }

    #[test]
    fn real_path_has_exactly_zero_imaginary_part() {
        let h = CanonicalProduct::from_sequence(&sine_zeros(500));
        let v = h
            .evaluate(Complex64::new(1.234, 0.0), f64::INFINITY, 1e-9)
            .unwrap();
        assert_eq!(v.value.im, 0.0);
    }

    #[test]
    fn storage_order_does_not_matter() {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let mut values: Vec<f64> = (1..=200)
            .flat_map(|k| [k as f64 * PI, -(k as f64) * PI])
            .collect();
        values.shuffle(&mut rng);
        let shuffled = SpectralSequence::from_unsorted(
            values,
            Some(TailModel {
                exponent: 1.0,
                coefficient: PI,
            }),
        )
        .unwrap();
        let mut sorted = sine_zeros(200);
        sorted = SpectralSequence::new(
            sorted.positive().to_vec(),
            sorted.negative().to_vec(),
            false, // shuffled set had no origin zero
            sorted.tail(),
        )
        .unwrap();
        let ha = CanonicalProduct::from_sequence(&shuffled);
        let hb = CanonicalProduct::from_sequence(&sorted);
        for x in [0.7, 2.9, -5.1] {
            let a = ha.evaluate_real(x, f64::INFINITY, 1e-12).unwrap();
            let b = hb.evaluate_real(x, f64::INFINITY, 1e-12).unwrap();
            assert!((a.value - b.value).abs() <= 1e-14 * b.value.abs().max(1.0));
        }
    }

    #[test]
    fn derivative_of_sine_product() {
        let h = CanonicalProduct::from_sequence(&sine_zeros(10_000));
        let d = h.derivative_at_zero(PI).unwrap();
        assert!((d.value + 1.0).abs() < 1e-7, "cos π = -1, got {}", d.value);
        let d = h.derivative_at_zero(0.0).unwrap();
        assert!((d.value - 1.0).abs() < 1e-7, "leading factor, got {}", d.value);
    }

    #[test]
    fn derivative_of_laplacian_product_matches_finite_differences() {
        let h = CanonicalProduct::from_sequence(&sinc_sqrt_zeros(5_000));
        let x = PI * PI;
        let d = h.derivative_at_zero(x).unwrap();
        // Independent check: d/dz sin(√z)/√z at z = π², where sin √z = 0:
        // derivative = cos(√z)/(2z) = -1/(2π²).
        let want = -1.0 / (2.0 * PI * PI);
        assert!(
            (d.value - want).abs() < 1e-6 * want.abs(),
            "got {}, want {want}",
            d.value
        );
    }

    #[test]
    fn one_sided_linear_growth_has_no_symmetric_limit() {
        let seq = crate::spectra::harmonic_oscillator_spectrum(1000).unwrap();
        let h = CanonicalProduct::from_sequence(&seq);
        match h.evaluate_real(0.4, f64::INFINITY, 1e-9) {
            Err(Error::NonConvergence { .. }) => {}
            other => panic!("expected non-convergence, got {other:?}"),
        }
    }

    #[test]
    fn momentum_scaling_law_smoke() {
        // |h₀(x_j) · h'_γ(x_j)| is constant in j for the momentum pair.
        let a = crate::spectra::momentum_spectrum(PI, 0.0, 4000).unwrap();
        let b = crate::spectra::momentum_spectrum(PI, std::f64::consts::FRAC_PI_2, 4000).unwrap();
        let h0 = CanonicalProduct::from_sequence(&a);
        let hg = CanonicalProduct::from_sequence(&b);
        let mut values = Vec::new();
        for j in [1usize, 5, 20, 100, 400] {
            let x = b.positive()[j - 1];
            let v0 = h0.evaluate_real(x, f64::INFINITY, 1e-10).unwrap();
            let dg = hg.derivative_at_zero(x).unwrap();
            values.push((v0.value * dg.value).abs());
        }
        for w in values.windows(2) {
            assert!(
                (w[0] - w[1]).abs() < 1e-8 * w[0].max(w[1]),
                "{:?}",
                values
            );
        }
    }
}
