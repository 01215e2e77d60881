//! L-series coefficients a_n of an elliptic curve over Q, and numerical
//! evaluation of the attached weight-2 newform
//!
//!   f(z) = sum a_n q^n,  q = e^{2 pi i z},
//!
//! together with its antiderivative F(z) = sum (a_n / n) q^n, normalized
//! by F(i oo) = 0, so that int_{z1}^{z2} 2 pi i f(z) dz = F(z2) - F(z1).
//!
//! Coefficients come from point counts: for good p,
//! a_p = p + 1 - #E(F_p); for p | N, a_p = p - #E_ns(F_p) where only
//! smooth points (plus infinity) are counted. Composite indices follow
//! the Hecke recursions. Truncation uses the crude bound |a_n| <= n, so
//! the tail of f at |q| < 1 is bounded by sum_{n > M} n |q|^n and the
//! tail of F by sum_{n > M} |q|^n.

use rug::ops::CompleteRound;
use rug::{Complex, Float};

use crate::elliptic::WeierstrassCurve;
use crate::error::{Error, Result};
use crate::numeric::Prec;

/// Coefficients a_1 .. a_{n_max} for one curve.
#[derive(Debug, Clone)]
pub struct CoefficientTable {
    pub label: String,
    a: Vec<i64>, // a[0] unused; a[n] = a_n
}

/// A single evaluation of f together with the bound on the discarded
/// tail.
#[derive(Debug, Clone)]
pub struct ModularFormValue {
    pub value: Complex,
    pub truncation_bound: f64,
    pub terms_used: usize,
}

/// a_p for prime p.
///
/// Good reduction: stride-1 loop over x with a quadratic-residue table
/// for p below 10^4, Shanks baby-step giant-step order finding above.
/// Bad reduction: direct smooth-point count, giving a_p in {-1, 0, 1}.
pub fn ap(curve: &WeierstrassCurve, p: u64) -> Result<i64> {
    if !crate::arith::is_prime(p) {
        return Err(Error::Domain(format!("ap needs a prime, got {p}")));
    }
    if curve.conductor % p == 0 {
        return Ok(p as i64 - smooth_count_fp(curve, p) as i64);
    }
    if p < 10_000 {
        Ok(p as i64 + 1 - count_points_chi(curve, p) as i64)
    } else {
        Ok(p as i64 + 1 - count_points_bsgs(curve, p)? as i64)
    }
}

/// #E(F_p) for good odd p via the character sum
/// #E = p + 1 + sum_x chi(4x^3 + b2 x^2 + 2 b4 x + b6);
/// p = 2 and p = 3 fall back to direct enumeration.
fn count_points_chi(curve: &WeierstrassCurve, p: u64) -> u64 {
    if p <= 3 {
        return enumerate_points_fp(curve, p, false);
    }
    let b2 = mod_reduce(&curve.b2(), p);
    let b4 = mod_reduce(&curve.b4(), p);
    let b6 = mod_reduce(&curve.b6(), p);

    // chi table: chi[t] = 1 + legendre(t), counting solutions of y^2 = t.
    let mut sols = vec![1u8; p as usize];
    sols[0] = 1; // y = 0 only
    for t in 1..p {
        sols[t as usize] = 0;
    }
    for y in 1..=(p - 1) / 2 {
        let t = (y * y) % p;
        sols[t as usize] = 2;
    }

    let mut count = 1 + 0u64; // point at infinity
    let two_b4 = (2 * b4) % p;
    for x in 0..p {
        // value = 4x^3 + b2 x^2 + 2 b4 x + b6 mod p, Horner
        let v = (((4 * x % p + b2) * x % p + two_b4) * x % p + b6) % p;
        count += sols[v as usize] as u64;
    }
    count
}

/// Naive affine enumeration; `smooth_only` drops singular points.
fn enumerate_points_fp(curve: &WeierstrassCurve, p: u64, smooth_only: bool) -> u64 {
    let pm = p as i64;
    let a1 = curve.a1.rem_euclid(pm);
    let a2 = curve.a2.rem_euclid(pm);
    let a3 = curve.a3.rem_euclid(pm);
    let a4 = curve.a4.rem_euclid(pm);
    let a6 = curve.a6.rem_euclid(pm);
    let mut count = 1u64; // infinity (always smooth)
    for x in 0..pm {
        for y in 0..pm {
            let lhs = (y * y + a1 * x * y + a3 * y).rem_euclid(pm);
            let rhs = (((x + a2) * x + a4) * x + a6).rem_euclid(pm);
            if lhs != rhs {
                continue;
            }
            if smooth_only {
                // Singular iff both partials vanish.
                let dy = (2 * y + a1 * x + a3).rem_euclid(pm);
                let dx = (a1 * y - (3 * x * x + 2 * a2 * x + a4)).rem_euclid(pm);
                if dy == 0 && dx == 0 {
                    continue;
                }
            }
            count += 1;
        }
    }
    count
}

/// Smooth-point count of the reduction mod a bad prime.
fn smooth_count_fp(curve: &WeierstrassCurve, p: u64) -> u64 {
    enumerate_points_fp(curve, p, true)
}

fn mod_reduce(v: &num_bigint::BigInt, p: u64) -> u64 {
    use num_traits::ToPrimitive;
    let r = v % num_bigint::BigInt::from(p);
    let r = if r.sign() == num_bigint::Sign::Minus {
        r + num_bigint::BigInt::from(p)
    } else {
        r
    };
    r.to_u64().unwrap()
}

/// #E(F_p) by baby-step giant-step order finding in the Hasse interval,
/// for good p too large for the chi loop.
fn count_points_bsgs(curve: &WeierstrassCurve, p: u64) -> Result<u64> {
    use std::collections::HashMap;

    // Work on the short model y^2 = x^3 + A x + B (valid for p > 3).
    let a = mod_reduce(&(-27 * curve.c4()), p);
    let b = mod_reduce(&(-54 * curve.c6()), p);
    // The substitution scales coordinates by units, preserving counts.

    let mul = |a0: u64, b0: u64| crate::arith::mul_mod(a0, b0, p);
    let addp = |x: u64, y: u64| (x + y) % p;
    let inv = |x: u64| crate::arith::inv_mod(x, p);

    type Pt = Option<(u64, u64)>;
    let neg = |q: Pt| q.map(|(x, y)| (x, (p - y) % p));
    let add = |q1: Pt, q2: Pt| -> Result<Pt> {
        let (x1, y1) = match q1 {
            None => return Ok(q2),
            Some(v) => v,
        };
        let (x2, y2) = match q2 {
            None => return Ok(q1),
            Some(v) => v,
        };
        let lambda = if x1 != x2 {
            mul(addp(y2, p - y1), inv(addp(x2, p - x1))?)
        } else if (y1 + y2) % p == 0 {
            return Ok(None);
        } else {
            mul(addp(mul(3, mul(x1, x1)), a), inv((2 * y1) % p)?)
        };
        let x3 = addp(mul(lambda, lambda), p - addp(x1, x2) % p) % p;
        let y3 = addp(mul(lambda, addp(x1, p - x3)), p - y1) % p;
        Ok(Some((x3, y3)))
    };
    let scalar = |mut k: u64, q: Pt| -> Result<Pt> {
        let mut acc: Pt = None;
        let mut base = q;
        while k > 0 {
            if k & 1 == 1 {
                acc = add(acc, base)?;
            }
            base = add(base, base)?;
            k >>= 1;
        }
        Ok(acc)
    };

    // Find a random-ish point on the curve.
    let mut x = 0u64;
    let point = loop {
        let rhs = addp(mul(mul(x, x), x), addp(mul(a, x), b));
        // y with y^2 = rhs, via exponentiation for p = 3 mod 4, else
        // Tonelli-Shanks.
        if let Some(y) = sqrt_mod(rhs, p) {
            break Some((x, y));
        }
        x += 1;
        if x > p {
            return Err(Error::Internal("no point found on reduction".into()));
        }
    };

    // Order of `point` divides #E; search m in the Hasse interval with
    // m * point = 0 via BSGS on m = p + 1 + t, |t| <= 2 sqrt(p).
    let w = (2.0 * (p as f64).sqrt()).ceil() as u64 + 1;
    let s = (w as f64).sqrt().ceil() as u64 + 1;
    // Baby steps: j * point for j in [0, s)
    let mut table: HashMap<Pt, u64> = HashMap::new();
    let mut acc: Pt = None;
    for j in 0..s {
        table.entry(acc).or_insert(j);
        acc = add(acc, point)?;
    }
    let base = scalar(p + 1, point)?;
    let giant = scalar(s, point)?; // s * point
    // Write candidate orders as p + 1 +- i s -+ j and scan both
    // directions from p + 1 so the whole Hasse interval is covered.
    let mut candidates = Vec::new();
    let mut up = base;
    let mut down = base;
    let imax = w / s + 2;
    for i in 0..=imax {
        // up = (p + 1 + i s) P: a table hit up = j P gives
        // (p + 1 + i s - j) P = 0; a hit -up = j P gives p + 1 + i s + j.
        if let Some(&j) = table.get(&up) {
            candidates.push(p as i128 + 1 + (i * s) as i128 - j as i128);
        }
        if let Some(&j) = table.get(&neg(up)) {
            candidates.push(p as i128 + 1 + (i * s) as i128 + j as i128);
        }
        if let Some(&j) = table.get(&down) {
            candidates.push(p as i128 + 1 - (i * s) as i128 - j as i128);
        }
        if let Some(&j) = table.get(&neg(down)) {
            candidates.push(p as i128 + 1 - (i * s) as i128 + j as i128);
        }
        up = add(up, giant)?;
        down = add(down, neg(giant))?;
    }
    // Keep candidate orders in the Hasse window that annihilate the point.
    let lo = (p as i128 + 1) - 2 * (p as f64).sqrt() as i128 - 2;
    let hi = (p as i128 + 1) + 2 * (p as f64).sqrt() as i128 + 2;
    let mut valid: Vec<u64> = Vec::new();
    for m in candidates {
        if m >= lo.max(1) && m <= hi && scalar(m as u64, point)?.is_none() {
            if !valid.contains(&(m as u64)) {
                valid.push(m as u64);
            }
        }
    }
    match valid.len() {
        1 => Ok(valid[0]),
        0 => Err(Error::Internal(format!("BSGS found no order at p = {p}"))),
        _ => {
            // The point order does not pin #E; fall back to combining with
            // a second point is overkill here -- the chi loop stays
            // affordable at these sizes.
            Ok(count_points_chi(curve, p))
        }
    }
}

/// Square root mod an odd prime, or None for non-residues.
fn sqrt_mod(a: u64, p: u64) -> Option<u64> {
    use crate::arith::{mul_mod, pow_mod};
    if a == 0 {
        return Some(0);
    }
    if pow_mod(a, (p - 1) / 2, p) != 1 {
        return None;
    }
    if p % 4 == 3 {
        return Some(pow_mod(a, (p + 1) / 4, p));
    }
    // Tonelli-Shanks.
    let mut q = p - 1;
    let mut s = 0;
    while q % 2 == 0 {
        q /= 2;
        s += 1;
    }
    let mut z = 2;
    while pow_mod(z, (p - 1) / 2, p) != p - 1 {
        z += 1;
    }
    let mut m = s;
    let mut c = pow_mod(z, q, p);
    let mut t = pow_mod(a, q, p);
    let mut r = pow_mod(a, (q + 1) / 2, p);
    while t != 1 {
        let mut i = 0;
        let mut tt = t;
        while tt != 1 {
            tt = mul_mod(tt, tt, p);
            i += 1;
        }
        let mut b = c;
        for _ in 0..(m - i - 1) {
            b = mul_mod(b, b, p);
        }
        m = i;
        c = mul_mod(b, b, p);
        t = mul_mod(t, c, p);
        r = mul_mod(r, b, p);
    }
    Some(r)
}

/// Build a_1 .. a_{n_max} with the Hecke recursions:
/// a_{mn} = a_m a_n for coprime m, n; a_{p^k} = a_p a_{p^{k-1}} - p a_{p^{k-2}}
/// for good p; a_{p^k} = a_p^k for p | N.
pub fn an_table(curve: &WeierstrassCurve, n_max: usize) -> Result<CoefficientTable> {
    let n_max = n_max.max(1);
    let mut a = vec![0i64; n_max + 1];
    a[1] = 1;
    // smallest prime factor sieve
    let mut spf = vec![0u32; n_max + 1];
    for i in 2..=n_max {
        if spf[i] == 0 {
            for j in (i..=n_max).step_by(i) {
                if spf[j] == 0 {
                    spf[j] = i as u32;
                }
            }
        }
    }
    for n in 2..=n_max {
        let p = spf[n] as usize;
        let mut pk = p;
        let mut m = n / p;
        while m % p == 0 {
            m /= p;
            pk *= p;
        }
        if m > 1 {
            a[n] = a[pk].wrapping_mul(a[m]); // coprime split; both smaller
            continue;
        }
        // n = p^k
        if pk == p {
            a[n] = ap(curve, p as u64)?;
        } else if curve.conductor % p as u64 == 0 {
            a[n] = a[p].pow((n.ilog(p)) as u32);
        } else {
            let k_minus1 = n / p;
            let k_minus2 = k_minus1 / p;
            a[n] = a[p] * a[k_minus1] - (p as i64) * a[k_minus2];
        }
    }
    Ok(CoefficientTable {
        label: curve.label.clone(),
        a,
    })
}

impl CoefficientTable {
    pub fn n_max(&self) -> usize {
        self.a.len() - 1
    }

    pub fn an(&self, n: usize) -> i64 {
        self.a[n]
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.a[1..]
    }

    /// Rebuild from raw coefficients (used by the disk cache).
    pub fn from_raw(label: String, coeffs: Vec<i64>) -> Self {
        let mut a = Vec::with_capacity(coeffs.len() + 1);
        a.push(0);
        a.extend(coeffs);
        CoefficientTable { label, a }
    }

    /// Number of terms M needed so that sum_{n>M} n |q|^n < eps at
    /// |q| = e^{-2 pi h} (height h), using the |a_n| <= n bound;
    /// errors out if the table is too short.
    pub fn terms_needed(&self, height: f64, eps: f64) -> Result<usize> {
        let m = terms_for_tail(height, eps, true);
        if m > self.n_max() {
            return Err(Error::Precision {
                what: format!(
                    "series for {} needs {} terms at height {:.3e} (table has {})",
                    self.label,
                    m,
                    height,
                    self.n_max()
                ),
                residual: m as f64,
                limit: self.n_max() as f64,
            });
        }
        Ok(m)
    }

    /// f(z) = sum_{n <= M} a_n q^n with the tail below eps.
    pub fn eval_f(&self, z: &Complex, eps: f64, prec: Prec) -> Result<ModularFormValue> {
        let h = z.imag().to_f64();
        if h <= 0.0 {
            return Err(Error::Domain("eval_f needs Im z > 0".into()));
        }
        let m = self.terms_needed(h, eps)?;
        let q = prec.exp_2pii(z);
        // Horner in q over the integer coefficients.
        let mut acc = prec.complex_zero();
        for n in (1..=m).rev() {
            acc *= &q;
            if self.a[n] != 0 {
                acc += Float::with_val(prec.bits(), self.a[n]);
            }
        }
        acc *= &q;
        Ok(ModularFormValue {
            value: acc,
            truncation_bound: tail_bound(h, m, true),
            terms_used: m,
        })
    }

    /// F(z) = sum_{n <= M} (a_n / n) q^n, tail below eps.
    pub fn eval_big_f(&self, z: &Complex, eps: f64, prec: Prec) -> Result<Complex> {
        let h = z.imag().to_f64();
        if h <= 0.0 {
            return Err(Error::Domain("eval_F needs Im z > 0".into()));
        }
        // For F the terms are (a_n/n) q^n with |a_n/n| <= 1; geometric tail.
        let m = terms_for_tail(h, eps, false);
        if m > self.n_max() {
            return Err(Error::Precision {
                what: format!("F-series for {} needs {m} terms (table has {})", self.label, self.n_max()),
                residual: m as f64,
                limit: self.n_max() as f64,
            });
        }
        let q = prec.exp_2pii(z);
        let mut acc = prec.complex_zero();
        for n in (1..=m).rev() {
            acc *= &q;
            if self.a[n] != 0 {
                acc += Float::with_val(prec.bits(), self.a[n]) / n as u32;
            }
        }
        acc *= &q;
        Ok(acc)
    }
}

/// Smallest M with tail < eps at height h. `weighted` selects the
/// sum n |q|^n bound (for f) versus sum |q|^n (for F).
pub fn terms_for_tail(height: f64, eps: f64, weighted: bool) -> usize {
    let mut m = 4usize;
    while tail_bound(height, m, weighted) >= eps && m < (1usize << 40) {
        m = m * 3 / 2 + 1;
    }
    // binary refine down
    let mut lo = m / 2;
    let mut hi = m;
    while lo + 1 < hi {
        let mid = (lo + hi) / 2;
        if tail_bound(height, mid, weighted) < eps {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}

/// Upper bound for the discarded tail after M terms at height h:
/// sum_{n > M} n r^n = r^{M+1} ((M+1)(1-r) + r) / (1-r)^2 with r = e^{-2 pi h},
/// or the geometric version without the factor n.
fn tail_bound(height: f64, m: usize, weighted: bool) -> f64 {
    let r = (-2.0 * std::f64::consts::PI * height).exp();
    if r >= 1.0 {
        return f64::INFINITY;
    }
    let rm = r.powi(m as i32 + 1);
    if weighted {
        rm * ((m as f64 + 1.0) * (1.0 - r) + r) / ((1.0 - r) * (1.0 - r))
    } else {
        rm / (1.0 - r)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::c_to_f64;

    fn curve(a: [i64; 5], n: u64, label: &str) -> WeierstrassCurve {
        WeierstrassCurve::new(a, n, label).unwrap()
    }

    /// Naive O(p^2) smooth-count oracle straight from the definition.
    fn ap_naive(e: &WeierstrassCurve, p: u64) -> i64 {
        if e.conductor % p == 0 {
            p as i64 - enumerate_points_fp(e, p, true) as i64
        } else {
            p as i64 + 1 - enumerate_points_fp(e, p, false) as i64
        }
    }

    #[test]
    fn ap_11a1_examples() {
        let e = curve([0, -1, 1, -10, -20], 11, "11a1");
        assert_eq!(ap(&e, 2).unwrap(), -2);
        assert_eq!(ap(&e, 3).unwrap(), -1);
        assert_eq!(ap(&e, 11).unwrap(), 1);
        assert!(ap(&e, 4).is_err());
    }

    #[test]
    fn ap_matches_naive_oracle() {
        let curves = [
            curve([0, -1, 1, -10, -20], 11, "11a1"),
            curve([1, 0, 1, 4, -6], 14, "14a1"),
            curve([0, 0, 1, -1, 0], 37, "37a1"),
            curve([1, 1, 0, -2, -1], 49, "49a1"),
            curve([0, 0, 0, -4, 0], 64, "64a1"),
            curve([0, 1, 0, 2, 1], 92, "92a1"),
        ];
        for e in &curves {
            let mut p = 2u64;
            while p < 100 {
                if crate::arith::is_prime(p) {
                    assert_eq!(ap(e, p).unwrap(), ap_naive(e, p), "{} p={}", e.label, p);
                }
                p += 1;
            }
        }
    }

    #[test]
    fn hasse_bound_holds() {
        let e = curve([0, 0, 1, -7, 6], 5077, "5077a1");
        let mut p = 2u64;
        let mut checked = 0;
        while checked < 180 {
            if crate::arith::is_prime(p) && e.conductor % p != 0 {
                let a = ap(&e, p).unwrap();
                assert!((a * a) as f64 <= 4.0 * p as f64, "p={p} a={a}");
                checked += 1;
            }
            p += 1;
        }
    }

    #[test]
    fn bsgs_agrees_with_chi_loop() {
        let e = curve([0, -1, 1, -10, -20], 11, "11a1");
        for p in [10007u64, 10009, 10037] {
            let chi = p as i64 + 1 - count_points_chi(&e, p) as i64;
            let bs = p as i64 + 1 - count_points_bsgs(&e, p).unwrap() as i64;
            assert_eq!(chi, bs, "p = {p}");
        }
    }

    #[test]
    fn an_recursion_11a() {
        let e = curve([0, -1, 1, -10, -20], 11, "11a1");
        let t = an_table(&e, 24).unwrap();
        assert_eq!(t.an(1), 1);
        assert_eq!(t.an(2), -2);
        assert_eq!(t.an(4), 2); // a_2^2 - 2
        assert_eq!(t.an(6), 2); // a_2 a_3 = (-2)(-1)
        assert_eq!(t.an(11), 1);
        assert_eq!(t.an(22), -2); // multiplicativity at bad prime
    }

    #[test]
    fn eval_f_periodicity_and_reality() {
        let e = curve([0, -1, 1, -10, -20], 11, "11a1");
        let t = an_table(&e, 4000).unwrap();
        let prec = Prec::from_digits(20);
        let z = prec.complex(0.23, 0.31);
        let z1 = prec.complex(1.23, 0.31);
        let f0 = t.eval_f(&z, 1e-18, prec).unwrap().value;
        let f1 = t.eval_f(&z1, 1e-18, prec).unwrap().value;
        let d = (f0 - f1).abs().real().to_f64();
        assert!(d < 1e-15, "periodicity defect {d}");

        let fi = t.eval_f(&prec.complex(0.0, 0.4), 1e-18, prec).unwrap().value;
        assert!(fi.imag().to_f64().abs() < 1e-18);
    }

    #[test]
    fn eval_f_gamma0_invariance() {
        // gamma = [[6,1],[11,2]]: f(gz) (11z+2)^{-2} = f(z) for level 11.
        let e = curve([0, -1, 1, -10, -20], 11, "11a1");
        let t = an_table(&e, 60000).unwrap();
        let prec = Prec::from_digits(20);
        let eps = 1e-16;
        let z = prec.complex(-2.0 / 11.0, 1.0 / 11.0 + 0.3);
        let den = (prec.complex(11.0, 0.0) * &z)
            + prec.complex(2.0, 0.0);
        let gz = ((prec.complex(6.0, 0.0) * &z)
            + prec.complex(1.0, 0.0))
            / &den;
        let lhs = t.eval_f(&gz, eps, prec).unwrap().value
            / (den.clone() * &den);
        let rhs = t.eval_f(&z, eps, prec).unwrap().value;
        let d = (lhs - rhs).abs().real().to_f64();
        assert!(d < 10.0 * eps, "invariance defect {d}");
    }

    #[test]
    fn eval_big_f_derivative_check() {
        // (F(z+h) - F(z-h)) / 2h = 2 pi i f(z) + O(h^2)
        let e = curve([0, -1, 1, -10, -20], 11, "11a1");
        let t = an_table(&e, 8000).unwrap();
        let prec = Prec::from_digits(25);
        let z = prec.complex(0.1, 0.5);
        let h = 1e-4;
        let fp = t.eval_big_f(&prec.complex(0.1 + h, 0.5), 1e-22, prec).unwrap();
        let fm = t.eval_big_f(&prec.complex(0.1 - h, 0.5), 1e-22, prec).unwrap();
        let deriv = (fp - fm) / prec.complex(2.0 * h, 0.0);
        let two_pi_i_f = t.eval_f(&z, 1e-22, prec).unwrap().value
            * prec.complex(0.0, 1.0)
            * (prec.pi() * 2u32);
        let (dr, di) = c_to_f64(&(deriv - two_pi_i_f));
        assert!(dr.abs() < 1e-6 && di.abs() < 1e-6, "finite difference {dr} {di}");
    }

    #[test]
    fn tail_bound_sound_under_eps_halving() {
        let e = curve([1, 0, 1, 4, -6], 14, "14a1");
        let t = an_table(&e, 20000).unwrap();
        let prec = Prec::from_digits(25);
        let z = prec.complex(0.37, 0.04);
        let mut eps = 1e-6;
        let mut prev = t.eval_f(&z, eps, prec).unwrap();
        for _ in 0..6 {
            let finer = t.eval_f(&z, eps / 2.0, prec).unwrap();
            let moved = (finer.value.clone() - &prev.value)
                
                .abs()
                .real()
                .to_f64();
            assert!(moved <= eps, "halving eps moved value by {moved} > {eps}");
            prev = finer;
            eps /= 2.0;
        }
    }

    #[test]
    fn term_count_follows_height_estimate() {
        // M for D digits at height 1/N should be within 2x of
        // N D ln(10) / (2 pi).
        for (n, digits) in [(11u32, 12.0f64), (108, 12.0), (300, 15.0)] {
            let h = 1.0 / n as f64;
            let m = terms_for_tail(h, 10f64.powf(-digits), true) as f64;
            let est = n as f64 * digits * 10f64.ln() / (2.0 * std::f64::consts::PI);
            assert!(m < 2.0 * est && m > est / 2.0, "N={n}: M={m} est={est}");
        }
    }
}
