//! 2×2 complex matrices as plain arrays.

use num_complex::Complex64;

pub type Mat2 = [[Complex64; 2]; 2];

const Z: Complex64 = Complex64::new(0.0, 0.0);
const O: Complex64 = Complex64::new(1.0, 0.0);

pub fn identity() -> Mat2 {
    [[O, Z], [Z, O]]
}

pub fn matmul(a: &Mat2, b: &Mat2) -> Mat2 {
    let mut c = [[Z; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            c[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    c
}

pub fn adjoint(a: &Mat2) -> Mat2 {
    [[a[0][0].conj(), a[1][0].conj()], [a[0][1].conj(), a[1][1].conj()]]
}

pub fn inverse(a: &Mat2) -> Mat2 {
    let det = a[0][0] * a[1][1] - a[0][1] * a[1][0];
    [[a[1][1] / det, -a[0][1] / det], [-a[1][0] / det, a[0][0] / det]]
}

/// Largest absolute row sum.
pub fn norm_inf(a: &Mat2) -> f64 {
    a.iter().map(|r| r[0].norm() + r[1].norm()).fold(0.0, f64::max)
}

fn lin(a: Complex64, m: &Mat2, b: Complex64) -> Mat2 {
    // a·m + b·I
    [[a * m[0][0] + b, a * m[0][1]], [a * m[1][0], a * m[1][1] + b]]
}

fn add(a: &Mat2, b: &Mat2) -> Mat2 {
    [
        [a[0][0] + b[0][0], a[0][1] + b[0][1]],
        [a[1][0] + b[1][0], a[1][1] + b[1][1]],
    ]
}

/// exp(−iHt/ħ) from the eigenvalues μ₁, μ₂ of H and the spectral
/// projectors (H − μ₂)/(μ₁ − μ₂), (H − μ₁)/(μ₂ − μ₁).
pub fn expm_2x2(h: &Mat2, t: f64, hbar: f64) -> Mat2 {
    let tr = h[0][0] + h[1][1];
    let det = h[0][0] * h[1][1] - h[0][1] * h[1][0];
    let disc = (tr * tr * 0.25 - det).sqrt();
    let (mu1, mu2) = (tr * 0.5 + disc, tr * 0.5 - disc);
    let f = |mu: Complex64| (Complex64::new(0.0, -t / hbar) * mu).exp();
    if disc.norm() * t.abs().max(1.0) < 1e-7 {
        // Nearly degenerate: e^{−iμt}(I − it(H − μ)) with μ the mean, exact
        // up to O((disc·t)²).
        let mu = tr * 0.5;
        let k = lin(
            Complex64::new(0.0, -t / hbar),
            h,
            Complex64::new(0.0, t / hbar) * mu + 1.0,
        );
        let e = f(mu);
        return [[e * k[0][0], e * k[0][1]], [e * k[1][0], e * k[1][1]]];
    }
    let p1 = lin(1.0 / (mu1 - mu2), h, -mu2 / (mu1 - mu2));
    let p2 = lin(1.0 / (mu2 - mu1), h, -mu1 / (mu2 - mu1));
    let (e1, e2) = (f(mu1), f(mu2));
    add(&lin(e1, &p1, Z), &lin(e2, &p2, Z))
}

/// Positive square root of a Hermitian positive-definite matrix:
/// (M + √det·I)/√(tr M + 2√det).
pub fn psd_sqrt(m: &Mat2) -> Mat2 {
    let s = (m[0][0].re * m[1][1].re - m[0][1].norm_sqr()).sqrt();
    let scale = 1.0 / (m[0][0].re + m[1][1].re + 2.0 * s).sqrt();
    lin(Complex64::new(scale, 0.0), m, Complex64::new(s * scale, 0.0))
}

/// Θ(t) = U^{−†} Θ₀ U^{−1}, the metric that makes U an isometry.
pub fn metric_transport(u: &Mat2, theta0: &Mat2) -> Mat2 {
    let ui = inverse(u);
    matmul(&adjoint(&ui), &matmul(theta0, &ui))
}

/// The Hermitian positive Dyson map with η² = Θ.
pub fn dyson_from_metric(theta: &Mat2) -> Mat2 {
    psd_sqrt(theta)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn zero_hamiltonian() {
        assert_eq!(expm_2x2(&[[Z; 2]; 2], 3.0, 1.0), identity());
    }

    #[test]
    fn diagonal_phases() {
        let h = [[c(-0.5, 0.0), Z], [Z, c(0.5, 0.0)]];
        let u = expm_2x2(&h, 2.0, 1.0);
        assert!((u[0][0] - Complex64::from_polar(1.0, 1.0)).norm() < 1e-15);
        assert!((u[1][1] - Complex64::from_polar(1.0, -1.0)).norm() < 1e-15);
    }

    #[test]
    fn sigma_x_rotation() {
        let h = [[Z, O], [O, Z]];
        let t: f64 = 0.7;
        let u = expm_2x2(&h, t, 1.0);
        assert!((u[0][0] - t.cos()).norm() < 1e-15);
        assert!((u[0][1] - c(0.0, -t.sin())).norm() < 1e-15);
    }

    #[test]
    fn exceptional_point_is_continuous() {
        // Nilpotent H: exp(−iHt) = I − iHt exactly.
        let h = [[c(0.5, 0.0), c(0.0, 0.5)], [c(0.0, 0.5), c(-0.5, 0.0)]];
        let u = expm_2x2(&h, 2.0, 1.0);
        let want = lin(c(0.0, -2.0), &h, O);
        let diff = [
            [u[0][0] - want[0][0], u[0][1] - want[0][1]],
            [u[1][0] - want[1][0], u[1][1] - want[1][1]],
        ];
        assert!(norm_inf(&diff) < 1e-12);
    }

    #[test]
    fn square_root_squares_back() {
        let m = [[c(4.0, 0.0), c(1.0, -2.0)], [c(1.0, 2.0), c(3.0, 0.0)]];
        let r = psd_sqrt(&m);
        let back = matmul(&r, &r);
        for i in 0..2 {
            for j in 0..2 {
                assert!((back[i][j] - m[i][j]).norm() < 1e-14);
            }
        }
    }
}
