//! Neron period lattice via the arithmetic-geometric mean, Weierstrass
//! wp and wp', the elliptic logarithm, and identification of lattice
//! coordinates as rational torsion points.
//!
//! Conventions. The Neron differential of the (minimal) model is
//! omega = dx / (2y + a1 x + a3) and the uniformization C/Lambda -> E(C)
//! is the standard one:
//!
//!   x = wp(z) - b2/12,     2y + a1 x + a3 = wp'(z).
//!
//! omega1 is real and positive; omega2 has Im(omega2/omega1) > 0. For
//! positive discriminant the lattice is rectangular (omega2 purely
//! imaginary); for negative discriminant Re(omega2) = omega1 / 2.

use rug::ops::{CompleteRound, Pow};
use rug::{Complex, Float};

use super::{CurvePoint, TorsionGroup, WeierstrassCurve};
use crate::error::{Error, Result};
use crate::numeric::{self, Prec};

/// Basis of the Neron lattice and its covolume.
#[derive(Debug, Clone)]
pub struct PeriodLattice {
    pub omega1: Complex,
    pub omega2: Complex,
    pub covolume: Float,
}

impl PeriodLattice {
    pub fn prec(&self) -> Prec {
        Prec(self.omega1.prec().0)
    }

    /// Absolute distance from z to the nearest lattice point.
    pub fn distance(&self, z: &Complex) -> Float {
        numeric::lattice_distance(z, &self.omega1, &self.omega2)
    }

    /// z reduced to the fundamental parallelogram (coordinates in [0,1)).
    pub fn reduce(&self, z: &Complex) -> Complex {
        let prec = self.prec();
        let (x, y) = numeric::basis_coords(z, &self.omega1, &self.omega2);
        let xf = x.clone() - x.floor();
        let yf = y.clone() - y.floor();
        (self.omega1.clone() * xf)
            + (self.omega2.clone() * yf)
    }
}

/// Period lattice of the Neron differential by AGM, split on the sign of
/// the discriminant.
pub fn period_lattice(curve: &WeierstrassCurve, prec: Prec) -> Result<PeriodLattice> {
    let bits = prec.bits();
    let b2 = bigint_to_float(&curve.b2(), prec);
    let b4 = bigint_to_float(&curve.b4(), prec);
    let b6 = bigint_to_float(&curve.b6(), prec);
    let disc = bigint_to_float(&curve.discriminant(), prec);
    let pi = prec.pi();

    let roots = cubic_roots(&b2, &b4, &b6, prec)?;
    let (omega1, omega2) = if disc.is_sign_positive() {
        // Three real roots e1 > e2 > e3.
        let mut es = roots.reals;
        if es.len() != 3 {
            return Err(Error::Internal(format!(
                "disc > 0 but {} real roots for {}",
                es.len(),
                curve.label
            )));
        }
        es.sort_by(|a, b| b.partial_cmp(a).unwrap());
        let (e1, e2, e3) = (&es[0], &es[1], &es[2]);
        let s13 = (e1.clone() - e3).sqrt();
        let s12 = (e1.clone() - e2).sqrt();
        let s23 = (e2.clone() - e3).sqrt();
        let om1 = pi.clone() / numeric::agm(&s13, &s12);
        let om2_im = pi / numeric::agm(&s13, &s23);
        (
            Complex::with_val(bits, (om1, Float::new(bits))),
            Complex::with_val(bits, (Float::new(bits), om2_im)),
        )
    } else {
        // One real root e1 and a conjugate pair u +- iv.
        if roots.reals.len() != 1 {
            return Err(Error::Internal(format!(
                "disc < 0 but {} real roots for {}",
                roots.reals.len(),
                curve.label
            )));
        }
        let e1 = &roots.reals[0];
        let (u, v) = roots
            .complex_pair
            .as_ref()
            .ok_or_else(|| Error::Internal("missing complex pair".into()))?;
        let a = (e1.clone() - u);
        let m = (a.clone().square() + v.clone().square()).sqrt();
        let sp = ((m.clone() + &a) / 2u32).sqrt();
        let sm = ((m.clone() - &a) / 2u32).sqrt();
        let sqm = m.sqrt();
        let om1 = (pi.clone() / numeric::agm(&sp, &sqm));
        let h = pi / numeric::agm(&sm, &sqm);
        (
            Complex::with_val(bits, (om1.clone(), Float::new(bits))),
            Complex::with_val(bits, (om1 / 2u32, h / 2u32)),
        )
    };

    let covolume = numeric::covolume(&omega1, &omega2);
    if !covolume.is_sign_positive() || covolume.is_zero() {
        return Err(Error::Internal(format!("degenerate lattice for {}", curve.label)));
    }
    Ok(PeriodLattice {
        omega1,
        omega2,
        covolume,
    })
}

struct CubicRoots {
    reals: Vec<Float>,
    complex_pair: Option<(Float, Float)>, // (u, v) with v > 0
}

/// Roots of 4x^3 + b2 x^2 + 2 b4 x + b6, seeded in doubles and polished
/// with full-precision Newton steps.
fn cubic_roots(b2: &Float, b4: &Float, b6: &Float, prec: Prec) -> Result<CubicRoots> {
    let bits = prec.bits();
    let (c2, c1, c0) = (b2.to_f64() / 4.0, 2.0 * b4.to_f64() / 4.0, b6.to_f64() / 4.0);
    // Depressed cubic t^3 + pt + q with x = t - c2/3.
    let p = c1 - c2 * c2 / 3.0;
    let q = 2.0 * c2.powi(3) / 27.0 - c2 * c1 / 3.0 + c0;
    let disc = -4.0 * p * p * p - 27.0 * q * q;
    let shift = c2 / 3.0;
    let mut seeds_real = Vec::new();
    let mut seed_pair = None;
    if disc > 0.0 {
        // three real roots
        let r = (-p / 3.0).sqrt();
        let theta = (3.0 * q / (2.0 * p * r)).clamp(-1.0, 1.0).acos() / 3.0;
        for k in 0..3 {
            seeds_real
                .push(2.0 * r * (theta - 2.0 * std::f64::consts::PI * k as f64 / 3.0).cos() - shift);
        }
    } else {
        let d = (q * q / 4.0 + p * p * p / 27.0).sqrt();
        let s = (-q / 2.0 + d).cbrt();
        let t = (-q / 2.0 - d).cbrt();
        let real = s + t - shift;
        seeds_real.push(real);
        seed_pair = Some((-(s + t) / 2.0 - shift, (s - t) * 3f64.sqrt() / 2.0));
    }

    let poly = |x: &Float| -> Float {
        let mut v = Float::with_val(bits, x * 4u32);
        v += b2;
        v *= x;
        v += Float::with_val(bits, b4 * 2u32);
        v *= x;
        v += b6;
        v
    };
    let dpoly = |x: &Float| -> Float {
        let mut v = Float::with_val(bits, x * 12u32);
        v += Float::with_val(bits, b2 * 2u32);
        v *= x;
        v += Float::with_val(bits, b4 * 2u32);
        v
    };

    let mut reals = Vec::new();
    for s in seeds_real {
        let mut x = prec.float(s);
        for _ in 0..80 {
            let dx = (poly(&x) / dpoly(&x));
            let done = dx.clone().abs().to_f64() < 1e-300 || {
                let rel = (dx.clone().abs() / (x.clone().abs() + 1u32));
                rel.to_f64() < 1e-37
            };
            x -= dx;
            if done {
                break;
            }
        }
        reals.push(x);
    }
    let complex_pair = match seed_pair {
        None => None,
        Some((u0, v0)) => {
            // Newton in complex arithmetic on the same polynomial.
            let mut z = prec.complex(u0, v0.abs().max(1e-8));
            for _ in 0..80 {
                let val = {
                    let mut v = z.clone() * 4u32;
                    v += b2;
                    v *= &z;
                    v += Float::with_val(bits, b4 * 2u32);
                    v *= &z;
                    v += b6;
                    v
                };
                let dval = {
                    let mut v = z.clone() * 12u32;
                    v += Float::with_val(bits, b2 * 2u32);
                    v *= &z;
                    v += Float::with_val(bits, b4 * 2u32);
                    v
                };
                let dz = val / dval;
                z -= &dz;
                if dz.clone().abs().real().to_f64() < 1e-37 * (1.0 + z.clone().abs().real().to_f64()) {
                    break;
                }
            }
            let (u, v) = (z.real().clone(), z.imag().clone().abs());
            Some((u, v))
        }
    };
    Ok(CubicRoots {
        reals,
        complex_pair,
    })
}

fn bigint_to_float(v: &num_bigint::BigInt, prec: Prec) -> Float {
    use std::str::FromStr;
    Float::with_val(prec.bits(), rug::Integer::from_str(&v.to_string()).unwrap())
}

/// Evaluator for wp and wp' on a fixed lattice, via q-series on a
/// reduced basis.
pub struct WpContext {
    base_a: Complex,
    q: Complex,
    tau: Complex,
    omega1: Complex,
    omega2: Complex,
    prec: Prec,
}

impl WpContext {
    pub fn new(lattice: &PeriodLattice) -> WpContext {
        let prec = lattice.prec();
        let (a, b) = numeric::reduce_basis(&lattice.omega1, &lattice.omega2);
        let tau = (b.clone() / a.clone());
        let q = prec.exp_2pii(&tau);
        WpContext {
            base_a: a,
            q,
            tau,
            omega1: lattice.omega1.clone(),
            omega2: lattice.omega2.clone(),
            prec,
        }
    }

    /// wp(z) for the lattice (not the normalized Z + Z tau one).
    pub fn wp(&self, z: &Complex) -> Complex {
        let (p, _) = self.wp_both(z);
        p
    }

    /// (wp(z), wp'(z)).
    pub fn wp_both(&self, z: &Complex) -> (Complex, Complex) {
        let bits = self.prec.bits();
        // w = z / a reduced to x + y tau with x, y in [-1/2, 1/2).
        let w = (z.clone() / &self.base_a);
        let one = self.prec.complex(1.0, 0.0);
        let (xr, yr) = numeric::basis_coords(&w, &one, &self.tau);
        let xf = xr.clone() - xr.clone().round();
        let yf = yr.clone() - yr.clone().round();
        let wred = self.prec.complex(0.0, 0.0)
            + Complex::with_val(bits, (xf, Float::new(bits)))
            + (self.tau.clone() * Complex::with_val(bits, (yf, Float::new(bits))))
                ;
        let u = self.prec.exp_2pii(&wred);

        // Series in u and q.
        let two_pi_i = Complex::with_val(bits, (Float::new(bits), self.prec.pi() * 2u32));
        let mut p_sum = {
            // 1/12 + u/(1-u)^2
            let denom = (one.clone() - &u);
            (u.clone() / (denom.clone() * &denom))
                
                + self.prec.complex(1.0 / 12.0, 0.0)
        };
        let mut dp_sum = {
            // u(1+u)/(1-u)^3
            let denom = (one.clone() - &u);
            let d3 = (denom.clone().pow(3u32));
            ((u.clone() * ((one.clone() + &u))) / d3)
                
        };
        let mut qn = self.q.clone();
        let eps = 0.25f64.powi(self.prec.bits() as i32 / 2) * 1e-20;
        for _ in 1..4096 {
            let qnu = (qn.clone() * &u);
            let qn_over_u = (qn.clone() / &u);
            // wp terms
            let t1 = {
                let d = (one.clone() - &qnu);
                (qnu.clone() / (d.clone() * &d))
            };
            let t2 = {
                let d = (one.clone() - &qn_over_u);
                (qn_over_u.clone() / (d.clone() * &d))
                    
            };
            let t3 = {
                let d = (one.clone() - &qn);
                (qn.clone() / (d.clone() * &d))
            };
            p_sum += t1.clone() + t2.clone() - (t3 * 2u32);
            // wp' terms
            let s1 = {
                let d = (one.clone() - &qnu);
                let d3 = d.pow(3u32);
                ((qnu.clone() * (one.clone() + &qnu))
                    
                    / d3)
                    
            };
            let s2 = {
                let d = (one.clone() - &qn_over_u);
                let d3 = d.pow(3u32);
                ((qn_over_u.clone() * (one.clone() + &qn_over_u))
                    
                    / d3)
                    
            };
            dp_sum += s1.clone() - s2.clone();
            let moved = t1.abs().real().to_f64()
                + t2.abs().real().to_f64()
                + s1.abs().real().to_f64()
                + s2.abs().real().to_f64();
            qn *= &self.q;
            if moved < eps && moved.is_finite() {
                break;
            }
        }
        // Scale back: wp_Lambda(z) = a^{-2} (2 pi i)^2 [series],
        // wp'_Lambda(z) = a^{-3} (2 pi i)^3 [series'].
        let factor_p = (two_pi_i.clone() / &self.base_a);
        let fp2 = (factor_p.clone() * &factor_p);
        let fp3 = (fp2.clone() * factor_p);
        (
            (p_sum * fp2),
            (dp_sum * fp3),
        )
    }

    /// Model coordinates (x, y) of the point with lattice coordinate z.
    pub fn z_to_xy(&self, curve: &WeierstrassCurve, z: &Complex) -> (Complex, Complex) {
        let bits = self.prec.bits();
        let (p, dp) = self.wp_both(z);
        let b2 = bigint_to_float(&curve.b2(), self.prec);
        let x = p - (b2 / 12u32);
        let y = ((dp
            - (x.clone() * Float::with_val(bits, curve.a1))
            - Float::with_val(bits, curve.a3))
            / 2u32)
            ;
        (x, y)
    }

    fn lattice(&self) -> (&Complex, &Complex) {
        (&self.omega1, &self.omega2)
    }
}

/// Elliptic logarithm of a point: the z mod Lambda with
/// (wp(z) - b2/12, (wp'(z) - a1 x - a3)/2) = (x, y).
/// log(oo) = 0.
pub fn elliptic_log(
    curve: &WeierstrassCurve,
    lattice: &PeriodLattice,
    point: &CurvePoint,
) -> Result<Complex> {
    let prec = lattice.prec();
    let bits = prec.bits();
    let (px, py) = match point {
        CurvePoint::Infinity => return Ok(prec.complex_zero()),
        CurvePoint::Affine { x, y } => (x, y),
    };
    if !curve.is_on_curve(point) {
        return Err(Error::Domain(format!("elliptic_log of off-curve point on {}", curve.label)));
    }
    let ctx = WpContext::new(lattice);
    let target_x = rational_to_float(px, prec);
    let target_y = rational_to_float(py, prec);
    // Targets in wp coordinates.
    let b2 = bigint_to_float(&curve.b2(), prec);
    let wp_target = (target_x.clone() + (b2 / 12u32));
    let wpp_target = (target_y.clone() * 2u32)
        + (target_x.clone() * Float::with_val(bits, curve.a1))
        + Float::with_val(bits, curve.a3);

    // 2-torsion points sit at half-periods, where wp' vanishes and
    // Newton on wp degenerates; match the three half-periods directly.
    if curve.point_order(point) == Some(2) {
        let mut best: Option<(f64, Complex)> = None;
        for (i, j) in [(1u32, 0u32), (0, 1), (1, 1)] {
            let z = (lattice.omega1.clone() * Float::with_val(bits, i)
                + Complex::with_val(bits, &lattice.omega2 * Float::with_val(bits, j)))
                / 2u32;
            let p = ctx.wp(&z);
            let d = (p - Complex::with_val(bits, (wp_target.clone(), Float::new(bits))))
                .abs()
                .real()
                .to_f64();
            if best.as_ref().map_or(true, |(bd, _)| d < *bd) {
                best = Some((d, z));
            }
        }
        let (resid, z) = best.unwrap();
        if resid > 1e-8 {
            return Err(Error::Precision {
                what: format!("2-torsion log on {}", curve.label),
                residual: resid,
                limit: 1e-8,
            });
        }
        return Ok(lattice.reduce(&z));
    }

    // Coarse grid over the fundamental parallelogram, then Newton on wp.
    let grid = 20;
    let mut best: Option<(f64, Complex)> = None;
    for i in 0..grid {
        for j in 0..grid {
            let s = (i as f64 + 0.5) / grid as f64;
            let t = (j as f64 + 0.5) / grid as f64;
            let z = (lattice.omega1.clone() * Float::with_val(bits, s))
                + (lattice.omega2.clone() * Float::with_val(bits, t));
            let p = ctx.wp(&z);
            let d = (p - Complex::with_val(bits, (wp_target.clone(), Float::new(bits))))
                .abs()
                .real()
                .to_f64();
            if best.as_ref().map_or(true, |(bd, _)| d < *bd) {
                best = Some((d, z));
            }
        }
    }
    let (_, mut z) = best.unwrap();
    for _ in 0..200 {
        let (p, dp) = ctx.wp_both(&z);
        let num = p - Complex::with_val(bits, (wp_target.clone(), Float::new(bits)));
        let step = num / dp;
        let moved = step.clone().abs().real().to_f64();
        z -= step;
        if moved < 1e-300 || moved < 2f64.powi(-(bits as i32) + 6) {
            break;
        }
    }
    // wp is even: z and -z both solve wp = x; pick the sign matching wp'.
    let (_, dp) = ctx.wp_both(&z);
    let want = Complex::with_val(bits, (wpp_target.clone(), Float::new(bits)));
    let d_plus = (dp.clone() - &want).abs().real().to_f64();
    let d_minus = (dp + &want).abs().real().to_f64();
    let z = if d_plus <= d_minus { z } else { -z };
    // Validate.
    let (x, y) = ctx.z_to_xy(curve, &z);
    let res = (x - Complex::with_val(bits, (target_x, Float::new(bits))))
        .abs()
        .real()
        .to_f64()
        + (y - Complex::with_val(bits, (target_y, Float::new(bits))))
            .abs()
            .real()
            .to_f64();
    if res > 1e-8 {
        return Err(Error::Precision {
            what: format!("elliptic_log on {}", curve.label),
            residual: res,
            limit: 1e-8,
        });
    }
    Ok(lattice.reduce(&z))
}

fn rational_to_float(r: &num_rational::BigRational, prec: Prec) -> Float {
    use std::str::FromStr;
    let n = Float::with_val(prec.bits(), rug::Integer::from_str(&r.numer().to_string()).unwrap());
    let d = Float::with_val(prec.bits(), rug::Integer::from_str(&r.denom().to_string()).unwrap());
    n / d
}

/// Elliptic logs of all torsion points, snapped to exact lattice
/// fractions (log of a point of order m is (i omega1 + j omega2)/m).
pub struct TorsionLogs {
    pub entries: Vec<(CurvePoint, Complex)>,
}

pub fn torsion_logs(
    curve: &WeierstrassCurve,
    lattice: &PeriodLattice,
    torsion: &TorsionGroup,
) -> Result<TorsionLogs> {
    let prec = lattice.prec();
    let bits = prec.bits();
    let exponent = torsion.structure.exponent();
    let mut entries = Vec::with_capacity(torsion.elements.len());
    for p in &torsion.elements {
        let raw = elliptic_log(curve, lattice, p)?;
        // Snap basis coordinates to nearest multiples of 1/exponent.
        let (x, y) = numeric::basis_coords(&raw, &lattice.omega1, &lattice.omega2);
        let m = Float::with_val(bits, exponent);
        let xs = ((x.clone() * &m)).round() / &m;
        let ys = ((y.clone() * &m)).round() / &m;
        let resid = ((x - xs.clone()).abs() + (y - ys.clone()).abs()).to_f64();
        if resid > 1e-6 {
            return Err(Error::Precision {
                what: format!("torsion log snap for {} on {}", p, curve.label),
                residual: resid,
                limit: 1e-6,
            });
        }
        let snapped = (lattice.omega1.clone() * Complex::with_val(bits, (xs, Float::new(bits))))
            
            + (lattice.omega2.clone() * Complex::with_val(bits, (ys, Float::new(bits))))
                ;
        entries.push((p.clone(), lattice.reduce(&snapped)));
    }
    Ok(TorsionLogs { entries })
}

/// The unique torsion point whose log matches z mod Lambda within tol;
/// None when nothing matches; two matches within tol is a precision
/// failure.
pub fn identify_torsion_point(
    lattice: &PeriodLattice,
    logs: &TorsionLogs,
    z: &Complex,
    tol: f64,
) -> Result<Option<CurvePoint>> {
    let bits = lattice.prec().bits();
    let mut hits: Vec<(f64, &CurvePoint)> = Vec::new();
    for (p, lz) in &logs.entries {
        let d = lattice
            .distance(&(z.clone() - lz))
            .to_f64();
        if d < tol {
            hits.push((d, p));
        }
    }
    match hits.len() {
        0 => Ok(None),
        1 => Ok(Some(hits[0].1.clone())),
        _ => {
            hits.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
            Err(Error::Precision {
                what: format!(
                    "torsion identification ambiguous between {} and {}",
                    hits[0].1, hits[1].1
                ),
                residual: hits[1].0,
                limit: tol,
            })
        }
    }
}

/// Reconstruct (c4, c6) from the lattice through Eisenstein series;
/// used as the internal consistency check of period computations:
/// c4 = 16 pi^4 E4(tau) / omega1^4 for the reduced basis.
pub fn reconstruct_c4_c6(lattice: &PeriodLattice) -> (Complex, Complex) {
    let prec = lattice.prec();
    let bits = prec.bits();
    let (a, b) = numeric::reduce_basis(&lattice.omega1, &lattice.omega2);
    let tau = (b / a.clone());
    let q = prec.exp_2pii(&tau);
    let mut e4 = prec.complex(1.0, 0.0);
    let mut e6 = prec.complex(1.0, 0.0);
    let mut qn = q.clone();
    for n in 1u64..400 {
        let s3 = sigma_k(n, 3);
        let s5 = sigma_k(n, 5);
        e4 += (qn.clone() * Float::with_val(bits, 240.0 * s3 as f64));
        e6 -= (qn.clone() * Float::with_val(bits, 504.0 * s5 as f64));
        qn *= &q;
        if qn.clone().abs().real().to_f64() * (n as f64).powi(6) < 1e-40 {
            break;
        }
    }
    let pi = prec.pi();
    let pi4 = pi.clone().pow(4u32);
    let pi6 = pi.pow(6u32);
    let a4 = a.clone().pow(4u32);
    let a6 = a.pow(6u32);
    let c4 = (e4 * Float::with_val(bits, 16) * pi4) / a4;
    let c6 = (e6 * Float::with_val(bits, 64) * pi6) / a6;
    (
        c4,
        c6,
    )
}

fn sigma_k(n: u64, k: u32) -> u64 {
    let mut s = 0u64;
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            s += d.pow(k);
            let e = n / d;
            if e != d {
                s += e.pow(k);
            }
        }
        d += 1;
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    fn prec() -> Prec {
        Prec::from_digits(25)
    }

    fn lattice_of(a: [i64; 5], n: u64, label: &str) -> (WeierstrassCurve, PeriodLattice) {
        let e = WeierstrassCurve::new(a, n, label).unwrap();
        let l = period_lattice(&e, prec()).unwrap();
        (e, l)
    }

    #[test]
    fn periods_11a1() {
        // AGM against the known real period of 11a1.
        let (_, l) = lattice_of([0, -1, 1, -10, -20], 11, "11a1");
        let om1 = l.omega1.real().to_f64();
        assert!((om1 - 1.269209304279553).abs() < 1e-12, "om1 = {om1}");
        assert!((l.covolume.to_f64() - 1.8515436234559593).abs() < 1e-12);
        assert!(l.omega2.imag().to_f64() > 0.0);
    }

    #[test]
    fn periods_37a1_positive_disc() {
        let (_, l) = lattice_of([0, 0, 1, -1, 0], 37, "37a1");
        assert!((l.omega1.real().to_f64() - 2.993458646231959).abs() < 1e-12);
        assert!(l.omega2.real().to_f64().abs() < 1e-20);
        assert!((l.omega2.imag().to_f64() - 2.45138938198679).abs() < 1e-12);
    }

    #[test]
    fn covolume_ratio_11a() {
        let (_, l1) = lattice_of([0, -1, 1, -10, -20], 11, "11a1");
        let (_, l3) = lattice_of([0, -1, 1, 0, 0], 11, "11a3");
        let ratio = l1.covolume.to_f64() / l3.covolume.to_f64();
        assert!((ratio - 0.2).abs() < 1e-12, "ratio = {ratio}");
    }

    #[test]
    fn c4_c6_reconstruction() {
        for (a, n, label) in [
            ([0i64, -1, 1, -10, -20], 11u64, "11a1"),
            ([0, 0, 1, -1, 0], 37, "37a1"),
            ([1, 1, 1, -10, -10], 15, "15a1"),
            ([1, -1, 0, -2, -1], 49, "49a1"),
        ] {
            let (e, l) = lattice_of(a, n, label);
            let (c4, c6) = reconstruct_c4_c6(&l);
            let c4_true = e.c4().to_f64().unwrap();
            let c6_true = e.c6().to_f64().unwrap();
            assert!(
                (c4.real().to_f64() - c4_true).abs() < 1e-9 * (1.0 + c4_true.abs()),
                "{label}: c4 {} vs {}",
                c4.real().to_f64(),
                c4_true
            );
            assert!(
                (c6.real().to_f64() - c6_true).abs() < 1e-9 * (1.0 + c6_true.abs()),
                "{label}: c6 {} vs {}",
                c6.real().to_f64(),
                c6_true
            );
            assert!(c4.imag().to_f64().abs() < 1e-15 * (1.0 + c4_true.abs()));
        }
    }

    #[test]
    fn log_round_trip_on_torsion() {
        let (e, l) = lattice_of([0, -1, 1, -10, -20], 11, "11a1");
        let t = e.torsion_subgroup().unwrap();
        let logs = torsion_logs(&e, &l, &t).unwrap();
        for (p, lz) in &logs.entries {
            let found = identify_torsion_point(&l, &logs, lz, 1e-6).unwrap();
            assert_eq!(found.as_ref(), Some(p));
        }
        // z = 0 identifies as infinity
        let z0 = prec().complex_zero();
        assert_eq!(
            identify_torsion_point(&l, &logs, &z0, 1e-6).unwrap(),
            Some(CurvePoint::Infinity)
        );
        // an arbitrary off-torsion z identifies as nothing
        let z = prec().complex(0.123, 0.456);
        assert_eq!(identify_torsion_point(&l, &logs, &z, 1e-6).unwrap(), None);
    }

    #[test]
    fn log_homomorphism_samples() {
        let (e, l) = lattice_of([1, 0, 1, 4, -6], 14, "14a1");
        let p = CurvePoint::affine_i64(9, 23);
        let q = CurvePoint::affine_i64(2, 2);
        let s = e.add(&p, &q).unwrap();
        let lp = elliptic_log(&e, &l, &p).unwrap();
        let lq = elliptic_log(&e, &l, &q).unwrap();
        let ls = elliptic_log(&e, &l, &s).unwrap();
        let bits = l.prec().bits();
        let d = l
            .distance(&((lp.clone() + lq) - ls))
            .to_f64();
        assert!(d < 1e-9, "homomorphism defect {d}");
        // n * log(P) in Lambda for P of order n
        let n = e.point_order(&p).unwrap();
        let nlp = (lp * Float::with_val(bits, n));
        assert!(l.distance(&nlp).to_f64() < 1e-9);
    }

    #[test]
    fn wp_pole_scale_doubling() {
        // Doubling working precision changes the covolume by < 1e-10 rel.
        let e = WeierstrassCurve::new([0, 1, 1, -9, -15], 19, "19a1").unwrap();
        let l1 = period_lattice(&e, Prec::from_digits(12)).unwrap();
        let l2 = period_lattice(&e, Prec::from_digits(24)).unwrap();
        let r = (l1.covolume.to_f64() - l2.covolume.to_f64()).abs() / l2.covolume.to_f64();
        assert!(r < 1e-10, "covolume drift {r}");
        // tau in the fundamental domain after reduction
        let (a, b) = numeric::reduce_basis(&l2.omega1, &l2.omega2);
        let bits = l2.prec().bits();
        let tau = (b / a);
        assert!(tau.imag().to_f64() > 0.86);
        assert!(tau.real().to_f64().abs() <= 0.500001);
    }
}
