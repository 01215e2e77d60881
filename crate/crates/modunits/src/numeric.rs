//! Thin layer over MPFR/MPC arithmetic: working precision, complex
//! helpers, Gauss-Legendre quadrature nodes, and lattice reduction for
//! complex tori.
//!
//! All analytic code in this crate runs at a configurable binary
//! precision derived from a decimal digit count; doubling the digits is
//! how the robustness checks stress the pipeline.

use rug::float::Constant;
use rug::ops::{CompleteRound, Pow};
use rug::{Complex, Float};

/// Working precision in bits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Prec(pub u32);

impl Prec {
    /// Precision for roughly `digits` significant decimal digits, with
    /// guard bits for long accumulations.
    pub fn from_digits(digits: u32) -> Self {
        Prec(((digits + 8) as f64 * std::f64::consts::LOG2_10).ceil() as u32)
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn pi(self) -> Float {
        Float::with_val(self.0, Constant::Pi)
    }

    pub fn float(self, x: f64) -> Float {
        Float::with_val(self.0, x)
    }

    pub fn float_i64(self, x: i64) -> Float {
        Float::with_val(self.0, x)
    }

    pub fn complex(self, re: f64, im: f64) -> Complex {
        Complex::with_val(self.0, (re, im))
    }

    pub fn complex_zero(self) -> Complex {
        Complex::with_val(self.0, (0, 0))
    }

    /// e^{2 pi i z}.
    pub fn exp_2pii(self, z: &Complex) -> Complex {
        let two_pi = self.pi() * 2u32;
        let w = Complex::with_val(
            self.0,
            (-(two_pi.clone() * z.imag()), two_pi * z.real()),
        );
        w.exp()
    }
}

pub fn to_f64(x: &Float) -> f64 {
    x.to_f64()
}

pub fn c_to_f64(z: &Complex) -> (f64, f64) {
    (z.real().to_f64(), z.imag().to_f64())
}

/// |z|^2 as a Float.
pub fn norm_sqr(z: &Complex) -> Float {
    let prec = z.prec().0;
    (z.real() * z.real()).complete(prec) + (z.imag() * z.imag()).complete(prec)
}

/// Arithmetic-geometric mean of two positive reals.
pub fn agm(a: &Float, b: &Float) -> Float {
    a.clone().agm(b)
}

/// Gauss-Legendre nodes and weights on [-1, 1], computed by Newton
/// iteration on P_n from double-precision seeds.
pub fn gauss_legendre(n: usize, prec: Prec) -> Vec<(Float, Float)> {
    let mut out = Vec::with_capacity(n);
    for k in 0..n {
        // Chebyshev-flavored seed, then Newton at full precision.
        let seed = (std::f64::consts::PI * (k as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut x = prec.float(seed);
        for _ in 0..60 {
            let (p, dp) = legendre_with_deriv(n, &x, prec);
            let dx = p / dp;
            x -= &dx;
            if dx.abs().to_f64() < 1e-30 {
                let (p2, dp2) = legendre_with_deriv(n, &x, prec);
                let dx2 = p2 / dp2;
                x -= &dx2;
                break;
            }
        }
        let (_, dp) = legendre_with_deriv(n, &x, prec);
        let one_minus_x2 = prec.float(1.0) - x.clone().square();
        let w = prec.float(2.0) / (one_minus_x2 * dp.square());
        out.push((x, w));
    }
    out.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    out
}

/// Legendre polynomial P_n(x) and its derivative by the three-term
/// recurrence.
fn legendre_with_deriv(n: usize, x: &Float, prec: Prec) -> (Float, Float) {
    let mut p0 = prec.float(1.0);
    let mut p1 = x.clone();
    for k in 2..=n {
        let a = ((2 * k - 1) as u32, k as u32);
        let b = ((k - 1) as u32, k as u32);
        // p_k = ((2k-1) x p_{k-1} - (k-1) p_{k-2}) / k
        let t = (x * &p1).complete(prec.bits()) * a.0 / a.1 - (&p0 * b.0).complete(prec.bits()) / b.1;
        p0 = p1;
        p1 = t;
    }
    if n == 0 {
        return (p0, prec.float(0.0));
    }
    // P_n'(x) = n (x P_n - P_{n-1}) / (x^2 - 1)
    let num = ((x * &p1).complete(prec.bits()) - &p0) * n as u32;
    let den = (x * x).complete(prec.bits()) - 1u32;
    (p1, num / den)
}

/// Change of basis putting tau = w2/w1 into the fundamental domain
/// |Re tau| <= 1/2, |tau| >= 1 (and Im tau > 0).
///
/// Returns the reduced pair; the lattice they generate is the same.
pub fn reduce_basis(w1: &Complex, w2: &Complex) -> (Complex, Complex) {
    let prec = w1.prec().0;
    let mut a = w1.clone();
    let mut b = w2.clone();
    // Ensure Im(b/a) > 0.
    let tau = b.clone() / a.clone();
    if tau.imag().is_sign_negative() {
        b = -b;
    }
    for _ in 0..512 {
        let tau = b.clone() / a.clone();
        let re = tau.real().to_f64();
        if re.abs() > 0.5 + 1e-18 {
            let k = re.round();
            let shift = a.clone() * Float::with_val(prec, k);
            b -= shift;
            continue;
        }
        let n = norm_sqr(&tau).to_f64();
        if n < 1.0 - 1e-18 {
            // tau -> -1/tau corresponds to (a, b) -> (b, -a)
            std::mem::swap(&mut a, &mut b);
            b = -b;
            continue;
        }
        break;
    }
    (a, b)
}

/// Covolume |Im(conj(w1) * w2)| of the lattice Z w1 + Z w2.
pub fn covolume(w1: &Complex, w2: &Complex) -> Float {
    let prec = w1.prec().0;
    let prod = w1.clone().conj() * w2;
    prod.imag().clone().abs()
}

/// Express z in the basis (w1, w2): solves z = x w1 + y w2 over R.
pub fn basis_coords(z: &Complex, w1: &Complex, w2: &Complex) -> (Float, Float) {
    let prec = z.prec().0;
    // Solve the 2x2 real system by Cramer's rule.
    let det = (w1.real() * w2.imag()).complete(prec) - (w1.imag() * w2.real()).complete(prec);
    let xn = (z.real() * w2.imag()).complete(prec) - (z.imag() * w2.real()).complete(prec);
    let yn = (w1.real() * z.imag()).complete(prec) - (w1.imag() * z.real()).complete(prec);
    (xn / &det, yn / det)
}

/// Distance from z to the lattice Z w1 + Z w2, in absolute value.
pub fn lattice_distance(z: &Complex, w1: &Complex, w2: &Complex) -> Float {
    let prec = z.prec().0;
    let (x, y) = basis_coords(z, w1, w2);
    let xr = x.clone() - x.clone().round();
    let yr = y.clone() - y.clone().round();
    let mut best: Option<Float> = None;
    // The rounded remainder may not be the nearest lattice point for a
    // skew basis; check the four surrounding corners.
    for dx in [0i32, -1, 1] {
        for dy in [0i32, -1, 1] {
            let vx = xr.clone() + dx;
            let vy = yr.clone() + dy;
            let v = Complex::with_val(prec, w1 * Complex::with_val(prec, (vx, 0)))
                + Complex::with_val(prec, w2 * Complex::with_val(prec, (vy, 0)));
            let d = v.abs().real().clone();
            if best.as_ref().map_or(true, |b| d < *b) {
                best = Some(d);
            }
        }
    }
    best.unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gl_nodes_integrate_polynomials() {
        let prec = Prec::from_digits(30);
        let rule = gauss_legendre(12, prec);
        // integral of x^8 over [-1,1] = 2/9
        let mut acc = prec.float(0.0);
        for (x, w) in &rule {
            let x8 = x.clone().pow(8u32);
            acc += x8 * w;
        }
        let err = (acc - prec.float(2.0) / 9u32).abs().to_f64();
        assert!(err < 1e-28, "err = {err}");
    }

    #[test]
    fn reduce_basis_reaches_fundamental_domain() {
        let prec = Prec::from_digits(25);
        let w1 = prec.complex(1.0, 0.0);
        let w2 = prec.complex(17.3, 0.11);
        let (a, b) = reduce_basis(&w1, &w2);
        let tau = b.clone() / a.clone();
        assert!(tau.imag().to_f64() > 0.0);
        assert!(tau.real().to_f64().abs() <= 0.5 + 1e-12);
        assert!(norm_sqr(&tau).to_f64() >= 1.0 - 1e-12);
        // same covolume
        let c0 = covolume(&w1, &w2).to_f64();
        let c1 = covolume(&a, &b).to_f64();
        assert!((c0 - c1).abs() < 1e-12 * c0.abs());
    }

    #[test]
    fn lattice_distance_zero_on_points() {
        let prec = Prec::from_digits(25);
        let w1 = prec.complex(1.3, 0.0);
        let w2 = prec.complex(0.4, 1.9);
        let z = w1.clone() * 3u32 - Complex::with_val(prec.bits(), w2.clone() * 5u32);
        assert!(lattice_distance(&z, &w1, &w2).to_f64() < 1e-20);
        let z2 = z + prec.complex(0.21, 0.13);
        assert!(lattice_distance(&z2, &w1, &w2).to_f64() > 0.1);
    }
}
