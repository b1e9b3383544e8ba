//! Direct power series for E_α, C_α and S_α.
//!
//! Extended precision is available for α ∈ {1/4, 1/2, 3/4, 1}, where every
//! Γ(αk + 1) is Γ(1 + r/4) times a product of rationals, so the only
//! transcendental inputs are three tabulated constants.

use num_bigint::BigInt;
use num_complex::Complex64;
use statrs::function::gamma::ln_gamma;

use crate::bigfloat::{BigComplex, BigFloat, PREC};
use crate::{OracleConfig, OracleError, OracleValue, Precision};

/// 1/Γ(5/4), 1/Γ(3/2), 1/Γ(7/4).
const INV_GAMMA_QUARTERS: [&str; 3] = [
    "1.10326265132083725743978215995325199903039687507203918100856337159050525861727068828814092462415183290964290395147241446123930244580690141874224465214726404687874537",
    "1.12837916709551257389615890312154517168810125865799771368817144342128493688298682897348732040421472688605669581272341470337986298965232573273097904003553798658567527",
    "1.0880652521310173081027812631344501510346444944123515923414109757592859516169434806601834139028846181774445604497643024176679728559298306746123504156050257510307859",
];

const HALF_SQRT_2: &str = "0.707106781186547524400844362104849039284835937688474036588339868995366239231053519425193767163820786367506923115456148512462418027925368606322060748549967915706611333";

/// Which series: y^k / Γ(g(k)) with g(k) = αk + 1, 2αk + 1 or (2k + 1)α + 1.
#[derive(Debug, Clone, Copy)]
enum Shape {
    Ml,
    Even,
    Odd,
}

impl Shape {
    /// Multiple of α in the Γ argument of term k.
    fn multiple(self, k: u64) -> u64 {
        match self {
            Shape::Ml => k,
            Shape::Even => 2 * k,
            Shape::Odd => 2 * k + 1,
        }
    }
}

/// α = p/4 with p ∈ 1..=4, if it is one.
pub fn quarter(alpha: f64) -> Option<u64> {
    let p = alpha * 4.0;
    (p.fract() == 0.0 && (1.0..=4.0).contains(&p)).then_some(p as u64)
}

fn check_alpha(alpha: f64) -> Result<(), OracleError> {
    if alpha > 0.0 && alpha <= 1.0 {
        Ok(())
    } else {
        Err(OracleError::Unsupported(format!("alpha={alpha} outside (0, 1]")))
    }
}

fn series_extended(p: u64, shape: Shape, y: &BigComplex, max_terms: usize) -> Result<(BigComplex, f64), OracleError> {
    const Q: u64 = 4;
    let seeds: Vec<BigFloat> = std::iter::once(BigFloat::one())
        .chain(INV_GAMMA_QUARTERS.iter().map(|s| BigFloat::from_decimal(s)))
        .collect();
    // inv_gamma[r] = 1/Γ(1 + r/4 + n[r]).
    let mut inv_gamma = seeds;
    let mut n = [0u64; 4];

    let mut sum = BigComplex::zero();
    let mut y_pow = BigComplex::one();
    let mut prev_mag = f64::INFINITY;
    let mut abs_bound = 0.0f64;
    let mut weighted = 0.0f64;
    for k in 0..max_terms as u64 {
        if k > 0 {
            y_pow = y_pow.mul(y);
        }
        let m = p * shape.multiple(k);
        let (target, r) = ((m / Q), (m % Q) as usize);
        while n[r] < target {
            n[r] += 1;
            let d = BigInt::from(r as u64 + Q * n[r]);
            inv_gamma[r] = inv_gamma[r].mul_int(Q).div_int(&d);
        }
        let term = y_pow.mul_real(&inv_gamma[r]);
        sum = sum.add(&term);

        let mag = term.log2();
        let t_abs = 2f64.powf(mag + 1.0);
        abs_bound += t_abs;
        weighted += t_abs * (4 * k + 20) as f64;
        if term.is_zero() || (mag < prev_mag && k >= 8 && (mag < sum.log2() - 200.0 || mag < -1200.0)) {
            let rounding = weighted * 2f64.powi(-(PREC as i32));
            let tail = 2.0 * t_abs;
            if !abs_bound.is_finite() {
                return Err(OracleError::Overflow);
            }
            return Ok((sum, rounding + tail));
        }
        prev_mag = mag;
    }
    Err(OracleError::NonConvergence { max_terms })
}

fn series_double(alpha: f64, shape: Shape, y: Complex64, max_terms: usize) -> Result<(Complex64, f64), OracleError> {
    let eps = f64::EPSILON;
    let mut sum = Complex64::new(0.0, 0.0);
    let mut abs_err = 0.0;
    let mut prev = f64::INFINITY;
    let ln_y = if y == Complex64::new(0.0, 0.0) {
        None
    } else {
        Some(y.ln())
    };
    for k in 0..max_terms as u64 {
        let g = alpha * shape.multiple(k) as f64 + 1.0;
        let lg = ln_gamma(g);
        let term = match ln_y {
            None if k > 0 => Complex64::new(0.0, 0.0),
            None => Complex64::new((-lg).exp(), 0.0),
            Some(l) => (l * k as f64 - lg).exp(),
        };
        sum += term;
        let t = term.norm();
        abs_err += t * 8.0 * eps * ((k as f64) * y.norm().ln().abs() + lg.abs() + 4.0);
        if t == 0.0 || (k >= 8 && t < prev && t < 1e-20 * sum.norm().max(1e-300)) {
            if !(sum.re.is_finite() && sum.im.is_finite()) {
                return Err(OracleError::Overflow);
            }
            return Ok((sum, abs_err + 2.0 * t + 2.0 * eps * sum.norm()));
        }
        prev = t;
    }
    Err(OracleError::NonConvergence { max_terms })
}

fn finish(sum: BigComplex, bound: f64) -> Result<OracleValue, OracleError> {
    let value = sum.to_c64();
    if !(value.re.is_finite() && value.im.is_finite()) {
        return Err(OracleError::Overflow);
    }
    let rounding = 2.0 * f64::EPSILON * (value.re.abs() + value.im.abs());
    Ok(OracleValue {
        value,
        error_bound: bound + rounding,
    })
}

/// e^{−iπα} for α = p/4, exact to the working precision.
fn rotation_quarter(p: u64) -> BigComplex {
    let h = BigFloat::from_decimal(HALF_SQRT_2);
    let (z, one) = (BigFloat::zero(), BigFloat::one());
    match p {
        1 => BigComplex::new(h.clone(), h.neg()),
        2 => BigComplex::new(z, one.neg()),
        3 => BigComplex::new(h.neg(), h.neg()),
        _ => BigComplex::new(one.neg(), z),
    }
}

fn require_quarter(alpha: f64) -> Result<u64, OracleError> {
    quarter(alpha).ok_or_else(|| {
        OracleError::Unsupported(format!(
            "extended precision needs alpha in {{1/4, 1/2, 3/4, 1}}, got {alpha}"
        ))
    })
}

/// E_α(z) by plain summation of z^k/Γ(αk + 1).
pub fn ml_reference(alpha: f64, z: Complex64, cfg: &OracleConfig) -> Result<OracleValue, OracleError> {
    check_alpha(alpha)?;
    match cfg.working_precision {
        Precision::Extended => {
            let p = require_quarter(alpha)?;
            let (sum, bound) = series_extended(p, Shape::Ml, &BigComplex::from_c64(z), cfg.max_terms)?;
            finish(sum, bound)
        }
        Precision::Double => {
            let (value, error_bound) = series_double(alpha, Shape::Ml, z, cfg.max_terms)?;
            Ok(OracleValue { value, error_bound })
        }
    }
}

/// C_α(x) = Σ_k e^{−iπαk} x^{2k} / Γ(2αk + 1).
pub fn frac_cos_series(alpha: f64, x: Complex64, cfg: &OracleConfig) -> Result<OracleValue, OracleError> {
    trig_series(alpha, x, cfg, Shape::Even)
}

/// S_α(x) = Σ_k e^{−iπαk} x^{2k+1} / Γ((2k + 1)α + 1).
pub fn frac_sin_series(alpha: f64, x: Complex64, cfg: &OracleConfig) -> Result<OracleValue, OracleError> {
    trig_series(alpha, x, cfg, Shape::Odd)
}

fn trig_series(alpha: f64, x: Complex64, cfg: &OracleConfig, shape: Shape) -> Result<OracleValue, OracleError> {
    check_alpha(alpha)?;
    match cfg.working_precision {
        Precision::Extended => {
            let p = require_quarter(alpha)?;
            let bx = BigComplex::from_c64(x);
            let y = rotation_quarter(p).mul(&bx.mul(&bx));
            let (mut sum, mut bound) = series_extended(p, shape, &y, cfg.max_terms)?;
            if let Shape::Odd = shape {
                sum = sum.mul(&bx);
                bound *= x.norm();
            }
            finish(sum, bound)
        }
        Precision::Double => {
            let y = Complex64::from_polar(1.0, -std::f64::consts::PI * alpha) * x * x;
            let (mut value, mut error_bound) = series_double(alpha, shape, y, cfg.max_terms)?;
            if let Shape::Odd = shape {
                value *= x;
                error_bound = error_bound * x.norm() + f64::EPSILON * value.norm();
            }
            Ok(OracleValue { value, error_bound })
        }
    }
}
