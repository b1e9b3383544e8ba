//! Traceless two-level Hamiltonians H = ħ_α σ·ω and the 2×2 complex algebra
//! the rest of the crate is written in.

use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

/// Dense 2×2 complex matrix, row-major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Matrix2(pub [[Complex64; 2]; 2]);

impl Matrix2 {
    pub const IDENTITY: Matrix2 = Matrix2([[ONE, ZERO], [ZERO, ONE]]);
    pub const ZERO: Matrix2 = Matrix2([[ZERO, ZERO], [ZERO, ZERO]]);

    pub const fn new(a11: Complex64, a12: Complex64, a21: Complex64, a22: Complex64) -> Self {
        Matrix2([[a11, a12], [a21, a22]])
    }

    pub fn diag(a: Complex64, b: Complex64) -> Self {
        Matrix2([[a, ZERO], [ZERO, b]])
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.0[row][col]
    }

    pub fn adjoint(&self) -> Self {
        let [[a, b], [c, d]] = self.0;
        Matrix2([[a.conj(), c.conj()], [b.conj(), d.conj()]])
    }

    pub fn trace(&self) -> Complex64 {
        self.0[0][0] + self.0[1][1]
    }

    pub fn det(&self) -> Complex64 {
        let [[a, b], [c, d]] = self.0;
        a * d - b * c
    }

    /// Inverse via the adjugate; `None` when the determinant vanishes.
    pub fn inverse(&self) -> Option<Self> {
        let det = self.det();
        if det == ZERO || !det.is_finite() {
            return None;
        }
        let [[a, b], [c, d]] = self.0;
        let inv = det.inv();
        Some(Matrix2([[d * inv, -b * inv], [-c * inv, a * inv]]))
    }

    pub fn scale(&self, s: Complex64) -> Self {
        let [[a, b], [c, d]] = self.0;
        Matrix2([[a * s, b * s], [c * s, d * s]])
    }

    pub fn apply(&self, v: [Complex64; 2]) -> [Complex64; 2] {
        let [[a, b], [c, d]] = self.0;
        [a * v[0] + b * v[1], c * v[0] + d * v[1]]
    }

    /// Induced ∞-norm: largest absolute row sum.
    pub fn norm_inf(&self) -> f64 {
        self.0
            .iter()
            .map(|row| row[0].norm() + row[1].norm())
            .fold(0.0, f64::max)
    }

    /// ‖A†A − I‖∞, zero exactly for unitary A.
    pub fn unitarity_defect(&self) -> f64 {
        (self.adjoint() * *self - Matrix2::IDENTITY).norm_inf()
    }

    /// ‖A − A†‖∞.
    pub fn hermiticity_defect(&self) -> f64 {
        (*self - self.adjoint()).norm_inf()
    }

    /// Eigenvalues of the Hermitian part, ascending. Exact for Hermitian input.
    pub fn hermitian_eigenvalues(&self) -> [f64; 2] {
        let a = self.0[0][0].re;
        let d = self.0[1][1].re;
        let b = 0.5 * (self.0[0][1] + self.0[1][0].conj());
        let mean = 0.5 * (a + d);
        let half_gap = (0.5 * (a - d)).hypot(b.norm());
        let (lo, hi) = (mean - half_gap, mean + half_gap);
        if mean > 0.0 && hi > 0.0 {
            // Small positive eigenvalue from det/hi, free of cancellation.
            [(a * d - b.norm_sqr()) / hi, hi]
        } else {
            [lo, hi]
        }
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().flatten().all(|z| z.is_finite())
    }
}

impl Mul for Matrix2 {
    type Output = Matrix2;
    fn mul(self, rhs: Matrix2) -> Matrix2 {
        let [[a, b], [c, d]] = self.0;
        let [[e, f], [g, h]] = rhs.0;
        Matrix2([[a * e + b * g, a * f + b * h], [c * e + d * g, c * f + d * h]])
    }
}

impl Add for Matrix2 {
    type Output = Matrix2;
    fn add(self, rhs: Matrix2) -> Matrix2 {
        let mut out = self;
        for (r, row) in out.0.iter_mut().enumerate() {
            for (c, x) in row.iter_mut().enumerate() {
                *x += rhs.0[r][c];
            }
        }
        out
    }
}

impl Sub for Matrix2 {
    type Output = Matrix2;
    fn sub(self, rhs: Matrix2) -> Matrix2 {
        self + rhs.scale(-ONE)
    }
}

/// Pauli matrix σ_k for k ∈ {1, 2, 3}.
pub fn pauli(k: usize) -> Result<Matrix2> {
    match k {
        1 => Ok(Matrix2::new(ZERO, ONE, ONE, ZERO)),
        2 => Ok(Matrix2::new(ZERO, -I, I, ZERO)),
        3 => Ok(Matrix2::diag(ONE, -ONE)),
        _ => Err(Error::Domain(format!("Pauli index must be 1, 2 or 3, got {k}"))),
    }
}

/// σ₊ = (σ₁ + iσ₂)/2.
pub fn sigma_plus() -> Matrix2 {
    Matrix2::new(ZERO, ONE, ZERO, ZERO)
}

/// σ₋ = (σ₁ − iσ₂)/2.
pub fn sigma_minus() -> Matrix2 {
    Matrix2::new(ZERO, ZERO, ONE, ZERO)
}

/// Complex field vector ω = (ω₁, ω₂, ω₃), units s^{-α}.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OmegaVector {
    pub w1: Complex64,
    pub w2: Complex64,
    pub w3: Complex64,
}

impl OmegaVector {
    pub fn new(w1: Complex64, w2: Complex64, w3: Complex64) -> Result<Self> {
        let v = Self { w1, w2, w3 };
        if [w1, w2, w3].iter().all(|w| w.is_finite()) {
            Ok(v)
        } else {
            Err(Error::Domain(format!("omega components must be finite, got {v:?}")))
        }
    }

    /// ω₁² + ω₂² + ω₃² (no conjugation).
    pub fn square_sum(&self) -> Complex64 {
        self.w1 * self.w1 + self.w2 * self.w2 + self.w3 * self.w3
    }

    /// True when every component is real, i.e. the Hamiltonian is Hermitian.
    pub fn is_real(&self) -> bool {
        self.w1.im == 0.0 && self.w2.im == 0.0 && self.w3.im == 0.0
    }

    /// σ·ω.
    pub fn dot_sigma(&self) -> Matrix2 {
        Matrix2::new(self.w3, self.w1 - I * self.w2, self.w1 + I * self.w2, -self.w3)
    }
}

/// Scale constant ħ_α > 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HbarAlpha(f64);

impl HbarAlpha {
    pub const ONE: HbarAlpha = HbarAlpha(1.0);

    pub fn new(hbar: f64) -> Result<Self> {
        if hbar > 0.0 && hbar.is_finite() {
            Ok(Self(hbar))
        } else {
            Err(Error::Domain(format!(
                "hbar_alpha must be positive and finite, got {hbar}"
            )))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

impl Default for HbarAlpha {
    fn default() -> Self {
        Self::ONE
    }
}

/// H = ħ_α (ω₁σ₁ + ω₂σ₂ + ω₃σ₃). The diagonal is ±ħω₃, so the trace is
/// exactly zero.
pub fn hamiltonian(omega: &OmegaVector, hbar: HbarAlpha) -> Matrix2 {
    omega.dot_sigma().scale(Complex64::new(hbar.value(), 0.0))
}

/// Δ = √(ω₁² + ω₂² + ω₃²), principal branch.
pub fn delta(omega: &OmegaVector) -> Complex64 {
    omega.square_sum().sqrt()
}

/// Pure two-level state in the σ₃ eigenbasis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StateVector {
    pub c_up: Complex64,
    pub c_down: Complex64,
}

impl StateVector {
    pub const SPIN_UP: StateVector = StateVector {
        c_up: ONE,
        c_down: ZERO,
    };
    pub const SPIN_DOWN: StateVector = StateVector {
        c_up: ZERO,
        c_down: ONE,
    };

    pub fn new(c_up: Complex64, c_down: Complex64) -> Result<Self> {
        let s = Self { c_up, c_down };
        if !(c_up.is_finite() && c_down.is_finite()) {
            return Err(Error::Domain(format!("state amplitudes must be finite, got {s:?}")));
        }
        if s.norm_sqr() == 0.0 {
            return Err(Error::DegenerateState);
        }
        Ok(s)
    }

    /// (1, 1)/√2.
    pub fn plus() -> Self {
        let h = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        Self { c_up: h, c_down: h }
    }

    /// (1, i)/√2.
    pub fn plus_i() -> Self {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        Self {
            c_up: Complex64::new(h, 0.0),
            c_down: Complex64::new(0.0, h),
        }
    }

    pub fn norm_sqr(&self) -> f64 {
        self.c_up.norm_sqr() + self.c_down.norm_sqr()
    }

    pub fn as_array(&self) -> [Complex64; 2] {
        [self.c_up, self.c_down]
    }

    pub fn from_array(v: [Complex64; 2]) -> Self {
        Self {
            c_up: v[0],
            c_down: v[1],
        }
    }

    /// ⟨self| A |self⟩.
    pub fn expectation(&self, a: &Matrix2) -> Complex64 {
        let av = a.apply(self.as_array());
        self.c_up.conj() * av[0] + self.c_down.conj() * av[1]
    }
}
