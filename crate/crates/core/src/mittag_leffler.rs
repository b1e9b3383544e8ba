//! One-parameter Mittag-Leffler function
//!
//! E_α(z) = Σ_{k≥0} z^k / Γ(αk + 1),   0 < α ≤ 1,
//!
//! evaluated by its Taylor series in double-double arithmetic, together with
//! the fractional cosine and sine built from it:
//!
//! C_α(x) = [E_α(i^{-α} x) + E_α(-i^{-α} x)] / 2
//! S_α(x) = [E_α(i^{-α} x) - E_α(-i^{-α} x)] / (2 i^{-α})
//!
//! Branches are fixed once here and used everywhere downstream:
//! i^{-α} = exp(-iπα/2) and (-1)^{-α} = exp(-iπα).
//!
//! Every evaluation returns an absolute error bound made of the geometric
//! tail bound plus a running bound on double-double rounding and the final
//! rounding to `f64`. If that bound cannot be pushed under the requested
//! tolerance the call fails with [`Error::NonConvergence`] rather than
//! returning an uncertified value.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::dd::{self, ComplexDd, DoubleDouble};
use crate::error::{Error, Result};

/// Fractional order α ∈ (0, 1].
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct FractionalOrder(f64);

impl FractionalOrder {
    pub fn new(alpha: f64) -> Result<Self> {
        if alpha > 0.0 && alpha <= 1.0 {
            Ok(Self(alpha))
        } else {
            Err(Error::Domain(format!(
                "fractional order must lie in (0, 1], got {alpha}"
            )))
        }
    }

    #[inline]
    pub fn value(self) -> f64 {
        self.0
    }

    /// i^{-α} = exp(-iπα/2), principal branch.
    pub fn i_pow_neg(self) -> Complex64 {
        if self.0 == 1.0 {
            return Complex64::new(0.0, -1.0);
        }
        Complex64::from_polar(1.0, -0.5 * PI * self.0)
    }

    /// (-1)^{-α} = exp(-iπα) = (i^{-α})^2.
    pub fn neg_one_pow_neg(self) -> Complex64 {
        if self.0 == 1.0 {
            return Complex64::new(-1.0, 0.0);
        }
        Complex64::from_polar(1.0, -PI * self.0)
    }
}

impl TryFrom<f64> for FractionalOrder {
    type Error = Error;
    fn try_from(alpha: f64) -> Result<Self> {
        Self::new(alpha)
    }
}

impl std::fmt::Display for FractionalOrder {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.0.fmt(f)
    }
}

/// A value together with a certified absolute error bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MlResult {
    pub value: Complex64,
    pub error_bound: f64,
}

/// Per-α evaluator. Holds the term ratios Γ(α(k-1)+1)/Γ(αk+1) so that
/// repeated evaluations at the same order only pay for the summation.
#[derive(Debug, Clone)]
pub struct MittagLeffler {
    alpha: FractionalOrder,
    /// ratio[k] = Γ(α(k-1)+1) / Γ(αk+1), ratio[0] unused.
    ratio: Vec<DoubleDouble>,
    /// Relative error bound of ratio[k] beyond the error of ln Γ itself, in
    /// units of [`dd::EPS`]. Consecutive ratios share one computed ln Γ, so
    /// their product telescopes and only the last ln Γ error survives.
    ratio_err: Vec<f64>,
    /// Absolute error bound of the computed ln Γ(αk+1), in units of EPS.
    lgamma_err: Vec<f64>,
    /// 1/Γ(α+1), 1/Γ(2α+1), 1/Γ(3α+1) as f64, for small-argument limits.
    inv_gamma_small: [f64; 3],
}

/// Cap on the number of series terms regardless of α.
const TERM_CAP: usize = 60_000;

fn max_terms(alpha: f64) -> usize {
    ((400.0 / alpha).ceil() as usize + 100).min(TERM_CAP)
}

impl MittagLeffler {
    pub fn new(alpha: FractionalOrder) -> Self {
        let a = alpha.value();
        let n = max_terms(a) + 3;
        let mut ratio = Vec::with_capacity(n);
        let mut ratio_err = Vec::with_capacity(n);
        let mut lgamma_err = Vec::with_capacity(n);
        ratio.push(DoubleDouble::ONE);
        ratio_err.push(0.0);
        lgamma_err.push(0.0);
        let mut prev = DoubleDouble::ZERO;
        for k in 1..n {
            // αk + 1 held exactly: αk is an exact two-product.
            let x = DoubleDouble::prod(a, k as f64) + DoubleDouble::ONE;
            let cur = dd::ln_gamma(x);
            let diff = prev - cur;
            ratio.push(diff.exp());
            ratio_err.push(4.0 * diff.hi.abs() + 16.0);
            lgamma_err.push(8.0 * (cur.hi.abs() + 40.0));
            prev = cur;
        }
        let inv_gamma_small = [1, 2, 3].map(|m| {
            let x = DoubleDouble::prod(a, m as f64) + DoubleDouble::ONE;
            (-dd::ln_gamma(x)).exp().to_f64()
        });
        Self {
            alpha,
            ratio,
            ratio_err,
            lgamma_err,
            inv_gamma_small,
        }
    }

    #[inline]
    pub fn alpha(&self) -> FractionalOrder {
        self.alpha
    }

    /// 1/Γ(mα + 1) for m = 1, 2, 3.
    pub(crate) fn inv_gamma_multiple(&self, m: usize) -> f64 {
        self.inv_gamma_small[m - 1]
    }

    /// E_α(z) with absolute error at most `tol`.
    pub fn eval(&self, z: Complex64, tol: f64) -> Result<MlResult> {
        if !(tol > 0.0) {
            return Err(Error::Domain(format!("tolerance must be positive, got {tol}")));
        }
        if !(z.re.is_finite() && z.im.is_finite()) {
            return Err(Error::Domain(format!("argument must be finite, got {z}")));
        }
        if z == Complex64::new(0.0, 0.0) {
            return Ok(MlResult {
                value: Complex64::new(1.0, 0.0),
                error_bound: 0.0,
            });
        }
        let fail = |reason| Error::NonConvergence {
            alpha: self.alpha.value(),
            z,
            tol,
            t: None,
            reason,
        };
        let r_abs = z.norm();
        let k_max = self.ratio.len() - 3;

        let mut sum = ComplexDd::ONE;
        let mut term = ComplexDd::ONE;
        let mut abs_sum = 1.0_f64;
        // Relative error of the current term and the accumulated absolute
        // rounding error of the summation, both in units of EPS.
        let mut term_rel = 0.0_f64;
        let mut round = 0.0_f64;

        for k in 1..=k_max {
            term = term.mul_c64(z).scale(self.ratio[k]);
            if !term.is_finite() {
                return Err(fail("terms overflow working range"));
            }
            term_rel += 10.0 + self.ratio_err[k];
            let t_abs = term.norm_f64();
            abs_sum += t_abs;
            sum = sum + term;
            round += (term_rel + self.lgamma_err[k]) * t_abs;

            // Ratios decrease in k (log-convexity of Γ), so once r < 1 the
            // remaining terms are dominated by a geometric series.
            let next = t_abs * r_abs * self.ratio[k + 1].hi;
            let r = r_abs * self.ratio[k + 2].hi;
            if r < 1.0 && next <= t_abs {
                let tail = next / (1.0 - r);
                if tail <= 0.5 * tol {
                    let value = sum.to_c64();
                    let final_round = (value.re.abs() + value.im.abs()) * f64::EPSILON;
                    let accumulated = (round + 4.0 * k as f64 * abs_sum) * dd::EPS;
                    let error_bound = tail + accumulated + final_round;
                    if !(value.re.is_finite() && value.im.is_finite()) {
                        return Err(fail("value overflows f64"));
                    }
                    if error_bound > tol {
                        return Err(fail("rounding error exceeds tolerance"));
                    }
                    return Ok(MlResult { value, error_bound });
                }
            }
        }
        Err(fail("term budget exhausted before the tail bound met the tolerance"))
    }

    /// E_α(i^{-α}x) and E_α(-i^{-α}x), the two evaluations shared by C_α and S_α.
    fn rotated_pair(&self, x: Complex64, tol: f64) -> Result<(MlResult, MlResult)> {
        let w = self.alpha.i_pow_neg() * x;
        Ok((self.eval(w, tol)?, self.eval(-w, tol)?))
    }

    /// Fractional cosine C_α(x).
    pub fn frac_cos(&self, x: Complex64, tol: f64) -> Result<MlResult> {
        let (p, m) = self.rotated_pair(x, tol)?;
        Ok(combine_cos(p, m))
    }

    /// Fractional sine S_α(x).
    pub fn frac_sin(&self, x: Complex64, tol: f64) -> Result<MlResult> {
        let (p, m) = self.rotated_pair(x, tol)?;
        Ok(combine_sin(self.alpha, p, m))
    }

    /// Both C_α(x) and S_α(x) from a single pair of series evaluations.
    pub fn frac_cos_sin(&self, x: Complex64, tol: f64) -> Result<(MlResult, MlResult)> {
        let (p, m) = self.rotated_pair(x, tol)?;
        Ok((combine_cos(p, m), combine_sin(self.alpha, p, m)))
    }
}

fn combine_cos(p: MlResult, m: MlResult) -> MlResult {
    let value = (p.value + m.value) * 0.5;
    MlResult {
        value,
        error_bound: 0.5 * (p.error_bound + m.error_bound) + value.norm() * f64::EPSILON,
    }
}

fn combine_sin(alpha: FractionalOrder, p: MlResult, m: MlResult) -> MlResult {
    // |i^{-α}| = 1, so dividing by it does not scale the error.
    let value = (p.value - m.value) * alpha.i_pow_neg().conj() * 0.5;
    MlResult {
        value,
        error_bound: 0.5 * (p.error_bound + m.error_bound) + 2.0 * value.norm() * f64::EPSILON,
    }
}

/// E_α(z) with absolute error at most `tol`.
pub fn ml(alpha: FractionalOrder, z: Complex64, tol: f64) -> Result<MlResult> {
    MittagLeffler::new(alpha).eval(z, tol)
}

/// Fractional cosine C_α(x).
pub fn frac_cos(alpha: FractionalOrder, x: Complex64, tol: f64) -> Result<MlResult> {
    MittagLeffler::new(alpha).frac_cos(x, tol)
}

/// Fractional sine S_α(x).
pub fn frac_sin(alpha: FractionalOrder, x: Complex64, tol: f64) -> Result<MlResult> {
    MittagLeffler::new(alpha).frac_sin(x, tol)
}
