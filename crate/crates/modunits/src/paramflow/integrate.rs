//! Numerical evaluation machinery for period integrals of
//! omega_f = 2 pi i f(z) dz: series evaluation with Gamma_0(N)-orbit
//! height improvement, weight-2 slash values, and the exponential-tail
//! quadrature along vertical lines into cusps.

use rug::ops::Pow;
use rug::{Complex, Float};

use crate::arith;
use crate::error::{Error, Result};
use crate::lseries::CoefficientTable;
use crate::numeric::{gauss_legendre, Prec};

/// Integer 2x2 matrix acting by Moebius transformation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Mat([i64; 4]);

impl Mat {
    pub fn new(a: i64, b: i64, c: i64, d: i64) -> Mat {
        Mat([a, b, c, d])
    }

    pub fn det(&self) -> i64 {
        self.0[0] * self.0[3] - self.0[1] * self.0[2]
    }

    pub fn apply(&self, z: &Complex, prec: Prec) -> Complex {
        let bits = prec.bits();
        let num = z.clone() * Float::with_val(bits, self.0[0]) + Float::with_val(bits, self.0[1]);
        let den = z.clone() * Float::with_val(bits, self.0[2]) + Float::with_val(bits, self.0[3]);
        num / den
    }

    /// c z + d.
    pub fn j_factor(&self, z: &Complex, prec: Prec) -> Complex {
        let bits = prec.bits();
        z.clone() * Float::with_val(bits, self.0[2]) + Float::with_val(bits, self.0[3])
    }
}

/// Evaluator for f, F and slashed values at one level, bound to a
/// coefficient table and a working precision.
pub struct Evaluator<'a> {
    pub table: &'a CoefficientTable,
    pub level: u64,
    pub prec: Prec,
    /// Tail target for every series evaluation.
    pub eps: f64,
    gl: Vec<(Float, Float)>,
}

impl<'a> Evaluator<'a> {
    pub fn new(table: &'a CoefficientTable, level: u64, prec: Prec, eps: f64) -> Evaluator<'a> {
        Evaluator {
            table,
            level,
            prec,
            eps,
            gl: gauss_legendre(24, prec),
        }
    }

    /// f(z) evaluated after moving z as high as possible in its
    /// Gamma_0(N)-orbit: f(z) = (cz+d)^{-2} f(gamma z) costs nothing in
    /// accuracy and keeps series lengths bounded near the real axis.
    pub fn f_improved(&self, z: &Complex) -> Result<Complex> {
        let bits = self.prec.bits();
        let mut z = z.clone();
        let mut jfac = self.prec.complex(1.0, 0.0);
        for _ in 0..64 {
            match self.best_improvement(&z) {
                Some(gamma) => {
                    let j = gamma.j_factor(&z, self.prec);
                    z = gamma.apply(&z, self.prec);
                    jfac *= j;
                }
                None => break,
            }
        }
        // Shift the real part near zero; exact for the q-series.
        let shift = z.real().to_f64().round();
        if shift != 0.0 {
            z -= Float::with_val(bits, shift);
        }
        let val = self.table.eval_f(&z, self.eps, self.prec)?.value;
        let j2 = jfac.clone() * jfac;
        Ok(val / j2)
    }

    /// Search gamma in Gamma_0(N) with |cz+d| minimal below 1; None when
    /// z is already highest in the searched window.
    fn best_improvement(&self, z: &Complex) -> Option<Mat> {
        let x = z.real().to_f64();
        let y = z.imag().to_f64();
        let n = self.level as i64;
        let mut best: Option<(f64, i64, i64)> = None;
        for k in 1..=8i64 {
            for c in [k * n, -k * n] {
                let d0 = (-c as f64 * x).round() as i64;
                for d in (d0 - 2)..=(d0 + 2) {
                    if arith::gcd(c.unsigned_abs(), d.unsigned_abs()) != 1 {
                        continue;
                    }
                    let re = c as f64 * x + d as f64;
                    let norm = re * re + (c as f64 * y) * (c as f64 * y);
                    if norm < 1.0 - 1e-9 && best.map_or(true, |(bn, _, _)| norm < bn) {
                        best = Some((norm, c, d));
                    }
                }
            }
        }
        let (_, c, d) = best?;
        // Complete (c, d) to a determinant-1 matrix.
        let (g, s, t) = arith::ext_gcd(d, -c);
        debug_assert_eq!(g, 1);
        Some(Mat::new(s, t, c, d))
    }

    /// (f | M)(w) = (det M) j(M, w)^{-2} f(Mw) for det-1 matrices.
    pub fn slash(&self, m: &Mat, w: &Complex) -> Result<Complex> {
        debug_assert_eq!(m.det(), 1);
        let mw = m.apply(w, self.prec);
        let j = m.j_factor(w, self.prec);
        let f = self.f_improved(&mw)?;
        Ok(f / (j.clone() * j))
    }

    /// F(z) = sum (a_n / n) q^n.
    pub fn big_f(&self, z: &Complex) -> Result<Complex> {
        self.table.eval_big_f(z, self.eps, self.prec)
    }

    /// integral_{y0}^{oo} (f|M)(iY) dY, where (f|M) decays like
    /// e^{-2 pi m0 Y / w} (w the cusp width, m0 >= 1 the vanishing
    /// order). Gauss-Legendre panels of one decay length each, stopped
    /// when the analytic tail bound falls below eps_tail.
    pub fn integrate_slash_vertical(
        &self,
        m: &Mat,
        y0: f64,
        width: u64,
        min_order: u64,
        eps_tail: f64,
    ) -> Result<Complex> {
        let bits = self.prec.bits();
        let rate = 2.0 * std::f64::consts::PI * min_order as f64 / width as f64;
        let panel = 1.0 / rate;
        // Scale estimate for the tail bound.
        let probe = self.slash(m, &self.prec.complex(0.0, y0 + panel))?;
        let scale = probe.abs().real().to_f64().max(1e-30) * ((y0 + panel) * rate).exp();

        let mut acc = self.prec.complex_zero();
        let mut lo = y0;
        for _ in 0..512 {
            let hi = lo + panel;
            // Map [-1, 1] -> [lo, hi].
            let half = self.prec.float((hi - lo) / 2.0);
            let mid = self.prec.float((hi + lo) / 2.0);
            for (xk, wk) in &self.gl {
                let yk = Float::with_val(bits, xk * &half) + &mid;
                let v = self.slash(m, &Complex::with_val(bits, (Float::new(bits), yk)))?;
                acc += v * Float::with_val(bits, wk * &half);
            }
            lo = hi;
            let tail = scale * (-rate * lo).exp() / rate;
            if tail < eps_tail {
                break;
            }
        }
        Ok(acc)
    }
}

/// Estimated order of vanishing at the cusp M(i oo), from the
/// log-magnitude slope of (f|M)(iY) between two heights, validated at a
/// third; heights follow the width of the cusp. Residual above 0.1 at
/// every ladder step is a precision failure.
pub fn vanishing_order_from_slash(
    ev: &Evaluator<'_>,
    m: &Mat,
    width: u64,
) -> Result<u64> {
    let w = width as f64;
    for attempt in 0..4 {
        let y1 = (1.0f64).max(w / 4.0) + attempt as f64 * w / 4.0;
        let y2 = y1 + w / 2.0;
        let y3 = y1 + w;
        let ln_s = |y: f64| -> Result<f64> {
            let v = ev.slash(m, &ev.prec.complex(0.0, y))?;
            let a = v.abs().real().to_f64();
            if a <= 0.0 || !a.is_finite() {
                return Err(Error::Precision {
                    what: "slash magnitude vanished".into(),
                    residual: a,
                    limit: 0.0,
                });
            }
            Ok(a.ln())
        };
        let (s1, s2, s3) = (ln_s(y1)?, ln_s(y2)?, ln_s(y3)?);
        let est12 = w * (s1 - s2) / (2.0 * std::f64::consts::PI * (y2 - y1));
        let est13 = w * (s1 - s3) / (2.0 * std::f64::consts::PI * (y3 - y1));
        let rounded = est12.round();
        if rounded >= 1.0
            && (est12 - rounded).abs() < 0.1
            && (est13 - rounded).abs() < 0.1
        {
            return Ok(rounded as u64);
        }
        // Subleading Fourier terms can pollute the lowest heights; move
        // the ladder up and retry.
    }
    Err(Error::Precision {
        what: "vanishing order slope did not stabilize".into(),
        residual: f64::NAN,
        limit: 0.1,
    })
}

/// sigma_d = (1, 0; d, 1), sending i oo to the cusp 1/d.
pub fn sigma_for_cusp(d: u64) -> Mat {
    Mat::new(1, 0, d as i64, 1)
}

/// (-1, 0; d, -1), sending i oo to the cusp -1/d.
pub fn sigma_for_negative_cusp(d: u64) -> Mat {
    Mat::new(-1, 0, d as i64, -1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::elliptic::WeierstrassCurve;
    use crate::lseries::an_table;

    fn ev_level_11(table: &CoefficientTable) -> Evaluator<'_> {
        Evaluator::new(table, 11, Prec::from_digits(16), 1e-14)
    }

    #[test]
    fn improvement_preserves_value() {
        let e = WeierstrassCurve::new([0, -1, 1, -10, -20], 11, "11a1").unwrap();
        let t = an_table(&e, 40000).unwrap();
        let ev = ev_level_11(&t);
        // A point low enough that improvement must kick in, but still
        // evaluable directly with the full table.
        let z = ev.prec.complex(1.0 / 11.0 + 0.003, 0.011);
        let direct = t.eval_f(&z, 1e-14, ev.prec).unwrap().value;
        let improved = ev.f_improved(&z).unwrap();
        let d = (direct - improved).abs().real().to_f64();
        assert!(d < 1e-11, "improvement changed value by {d}");
    }

    #[test]
    fn slash_of_identity_matches_f() {
        let e = WeierstrassCurve::new([0, -1, 1, -10, -20], 11, "11a1").unwrap();
        let t = an_table(&e, 4000).unwrap();
        let ev = ev_level_11(&t);
        let w = ev.prec.complex(0.3, 0.8);
        let s = ev.slash(&Mat::new(1, 0, 0, 1), &w).unwrap();
        let f = ev.f_improved(&w).unwrap();
        let d = (s - f).abs().real().to_f64();
        assert!(d < 1e-15);
    }

    #[test]
    fn vertical_integral_matches_termwise_at_infinity_cusp() {
        // sigma_N is in Gamma_0(N), so (f|sigma_N)(iY) = f(iY) and the
        // integral has the exact termwise value
        // sum a_n e^{-2 pi n Y0} / (2 pi n).
        let e = WeierstrassCurve::new([0, -1, 1, -10, -20], 11, "11a1").unwrap();
        let t = an_table(&e, 4000).unwrap();
        let ev = ev_level_11(&t);
        let y0 = 0.9;
        let got = ev
            .integrate_slash_vertical(&sigma_for_cusp(11), y0, 1, 1, 1e-15)
            .unwrap();
        let mut expect = 0.0f64;
        for n in 1..2000usize {
            expect += t.an(n) as f64 * (-2.0 * std::f64::consts::PI * n as f64 * y0).exp()
                / (2.0 * std::f64::consts::PI * n as f64);
        }
        let d = (got.real().to_f64() - expect).abs();
        assert!(d < 1e-12, "quadrature defect {d}");
        assert!(got.imag().to_f64().abs() < 1e-12);
    }

    #[test]
    fn order_at_infinity_cusp_is_one() {
        let e = WeierstrassCurve::new([0, -1, 1, -10, -20], 11, "11a1").unwrap();
        let t = an_table(&e, 4000).unwrap();
        let ev = ev_level_11(&t);
        let m = sigma_for_cusp(11);
        assert_eq!(vanishing_order_from_slash(&ev, &m, 1).unwrap(), 1);
    }
}
