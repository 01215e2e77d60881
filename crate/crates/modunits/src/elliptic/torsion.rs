//! Rational torsion subgroup by bounded Lutz-Nagell search.
//!
//! The order is first bounded by gcd of #E(F_p) over a few odd primes of
//! good reduction (torsion injects into every such reduction). Candidate
//! points are then enumerated on the integral short model
//! Y^2 = X^3 - 27 c4 X - 54 c6, where torsion points have integer
//! coordinates and Y = 0 or Y^2 | 6^12 Delta, and each candidate is
//! verified exactly.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use super::{CurvePoint, TorsionGroup, TorsionStructure, WeierstrassCurve};
use crate::arith;
use crate::error::{Error, Result};
use crate::lseries;

pub fn torsion_subgroup(curve: &WeierstrassCurve) -> Result<TorsionGroup> {
    let bound = order_bound(curve)?;

    let mut elements = vec![CurvePoint::Infinity];
    for (x, y) in candidate_points(curve)? {
        let p = CurvePoint::Affine { x, y };
        if !curve.is_on_curve(&p) {
            continue;
        }
        if elements.contains(&p) {
            continue;
        }
        if let Some(order) = curve.point_order(&p) {
            if bound % order as u64 == 0 {
                // Take the whole cyclic subgroup; multiples of a torsion
                // point can have coordinates the raw search misses only
                // through arithmetic slips, so add them all.
                let mut acc = p.clone();
                while !acc.is_infinity() {
                    if !elements.contains(&acc) {
                        elements.push(acc.clone());
                    }
                    acc = curve.add_unchecked(&acc, &p);
                }
            }
        }
    }
    elements.sort();

    let n = elements.len() as u32;
    if bound % n as u64 != 0 {
        return Err(Error::Consistency(format!(
            "torsion search on {} found {} points, incompatible with reduction bound {}",
            curve.label, n, bound
        )));
    }

    let mut exponent = 1u32;
    let mut orders = Vec::with_capacity(elements.len());
    for p in &elements {
        let o = curve.point_order(p).ok_or_else(|| {
            Error::Consistency(format!("non-torsion point slipped through on {}", curve.label))
        })?;
        exponent = num_integer::lcm(exponent, o);
        orders.push(o);
    }

    let structure = if exponent == n {
        TorsionStructure::Cyclic(n)
    } else if 2 * exponent == n && exponent % 2 == 0 {
        TorsionStructure::TwoByTwoN(exponent / 2)
    } else {
        return Err(Error::Consistency(format!(
            "torsion group of {} has order {n} and exponent {exponent}, outside Mazur shapes",
            curve.label
        )));
    };
    if !structure.in_mazur_list() {
        return Err(Error::Consistency(format!(
            "torsion structure {structure} of {} violates Mazur's theorem",
            curve.label
        )));
    }

    let mut generators = Vec::new();
    if n > 1 {
        let gi = orders.iter().position(|&o| o == exponent).unwrap();
        let g = elements[gi].clone();
        // Cyclic part generated by g.
        let mut cyc = Vec::new();
        let mut acc = CurvePoint::Infinity;
        for _ in 0..exponent {
            cyc.push(acc.clone());
            acc = curve.add_unchecked(&acc, &g);
        }
        generators.push(g);
        if let TorsionStructure::TwoByTwoN(_) = structure {
            let h = elements
                .iter()
                .find(|p| {
                    !p.is_infinity() && curve.point_order(p) == Some(2) && !cyc.contains(p)
                })
                .cloned()
                .ok_or_else(|| {
                    Error::Consistency(format!(
                        "no independent 2-torsion generator on {}",
                        curve.label
                    ))
                })?;
            generators.push(h);
        }
    }

    Ok(TorsionGroup {
        structure,
        generators,
        elements,
    })
}

/// gcd of #E(F_p) over the first three odd good primes. Rational torsion
/// injects into each reduction, so its order divides the gcd.
fn order_bound(curve: &WeierstrassCurve) -> Result<u64> {
    let mut bound = 0u64;
    let mut used = 0;
    let mut p = 3u64;
    while used < 3 {
        if arith::is_prime(p) && curve.conductor % p != 0 {
            let ap = lseries::ap(curve, p)?;
            let count = (p as i64 + 1 - ap) as u64;
            bound = arith::gcd(bound, count);
            used += 1;
        }
        p += 2;
    }
    Ok(bound)
}

/// Candidate affine torsion points on the original model, via the
/// integral model Y^2 = X^3 + A X + B with A = -27 c4, B = -54 c6, mapped
/// back through X = 36 x + 3 b2, Y = 108 (2 y + a1 x + a3).
fn candidate_points(curve: &WeierstrassCurve) -> Result<Vec<(BigRational, BigRational)>> {
    let a = -27 * curve.c4();
    let b = -54 * curve.c6();
    let disc_short: BigInt = BigInt::from(6u32).pow(12) * curve.discriminant();

    let mut ys = vec![BigInt::zero()];
    for y in square_divisor_candidates(&disc_short.abs())? {
        ys.push(y);
    }

    let b2 = curve.b2();
    let a1 = BigInt::from(curve.a1);
    let a3 = BigInt::from(curve.a3);

    let mut out = Vec::new();
    for y_big in &ys {
        let c = &b - y_big * y_big;
        for x_big in integer_cubic_roots(&a, &c) {
            // Map back: x = (X - 3 b2)/36, y = (Y/108 - a1 x - a3)/2.
            for y_sign in [y_big.clone(), -y_big.clone()] {
                let x = BigRational::new(&x_big - 3 * &b2, BigInt::from(36));
                let y = (BigRational::new(y_sign.clone(), BigInt::from(108))
                    - BigRational::from_integer(a1.clone()) * &x
                    - BigRational::from_integer(a3.clone()))
                    / BigRational::from_integer(BigInt::from(2));
                out.push((x, y));
                if y_big.is_zero() {
                    break;
                }
            }
        }
    }
    Ok(out)
}

/// All positive Y with Y^2 dividing d, from the factorization of d.
/// Conductor support keeps the divisor count small for database curves.
fn square_divisor_candidates(d: &BigInt) -> Result<Vec<BigInt>> {
    // d = 6^12 * Delta has prime support {2, 3} union primes(conductor),
    // all small; extract exponents by division.
    let mut rest = d.clone();
    let mut pairs: Vec<(BigInt, u32)> = Vec::new();
    let mut p = BigInt::from(2u32);
    while &p * &p <= rest {
        if (&rest % &p).is_zero() {
            let mut e = 0u32;
            while (&rest % &p).is_zero() {
                rest /= &p;
                e += 1;
            }
            pairs.push((p.clone(), e));
        }
        p += 1u32;
        if pairs.iter().map(|&(_, e)| e / 2 + 1).product::<u32>() > 4096 {
            return Err(Error::Internal("square divisor explosion".into()));
        }
    }
    if rest > BigInt::from(1u32) {
        pairs.push((rest, 1));
    }
    let mut out = vec![BigInt::from(1u32)];
    for (p, e) in pairs {
        let half = e / 2;
        let prev = out.clone();
        let mut pk = BigInt::from(1u32);
        for _ in 0..half {
            pk *= &p;
            out.extend(prev.iter().map(|v| v * &pk));
        }
    }
    Ok(out)
}

/// Integer roots of X^3 + a X + c, found from floating-point roots and
/// verified exactly in big-integer arithmetic.
fn integer_cubic_roots(a: &BigInt, c: &BigInt) -> Vec<BigInt> {
    let af = a.to_f64().unwrap_or(f64::MAX);
    let cf = c.to_f64().unwrap_or(f64::MAX);
    let mut seeds = Vec::new();
    // Real roots of x^3 + af x + cf by trigonometric/Cardano formulas.
    let q = af / 3.0;
    let r = -cf / 2.0;
    let disc = q * q * q + r * r;
    if disc >= 0.0 {
        let s = (r + disc.sqrt()).cbrt();
        let t = (r - disc.sqrt()).cbrt();
        seeds.push(s + t);
    } else {
        let rho = (-q).powf(1.5);
        let theta = (r / rho).clamp(-1.0, 1.0).acos() / 3.0;
        let m = 2.0 * (-q).sqrt();
        for k in 0..3 {
            seeds.push(m * (theta - 2.0 * std::f64::consts::PI * k as f64 / 3.0).cos());
        }
    }
    let mut out = Vec::new();
    for s in seeds {
        if !s.is_finite() || s.abs() > 9e17 {
            continue;
        }
        let base = s.round() as i64;
        for dx in -2i64..=2 {
            let x = BigInt::from(base + dx);
            if (&x * &x * &x + a * &x + c).is_zero() && !out.contains(&x) {
                out.push(x.clone());
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(a: [i64; 5], n: u64, label: &str) -> TorsionGroup {
        WeierstrassCurve::new(a, n, label)
            .unwrap()
            .torsion_subgroup()
            .unwrap()
    }

    #[test]
    fn torsion_11a3_is_z5() {
        let g = t([0, -1, 1, 0, 0], 11, "11a3");
        assert_eq!(g.structure, TorsionStructure::Cyclic(5));
        assert_eq!(g.order(), 5);
    }

    #[test]
    fn torsion_15a1_is_z4_x_z2() {
        let g = t([1, 1, 1, -10, -10], 15, "15a1");
        assert_eq!(g.structure, TorsionStructure::TwoByTwoN(2));
        assert_eq!(g.order(), 8);
        assert_eq!(g.generators.len(), 2);
    }

    #[test]
    fn torsion_49a1_is_z2_generated_by_expected_point() {
        let g = t([1, -1, 0, -2, -1], 49, "49a1");
        assert_eq!(g.structure, TorsionStructure::Cyclic(2));
        assert_eq!(g.generators.len(), 1);
        assert_eq!(g.generators[0], CurvePoint::affine_i64(2, -1));
    }

    #[test]
    fn torsion_11a1_has_order_5() {
        let g = t([0, -1, 1, -10, -20], 11, "11a1");
        assert_eq!(g.structure, TorsionStructure::Cyclic(5));
        assert!(g.contains(&CurvePoint::affine_i64(5, 5)));
        assert!(g.contains(&CurvePoint::affine_i64(16, -61)));
    }

    #[test]
    fn torsion_rank_one_trivial() {
        let g = t([0, 0, 1, -1, 0], 37, "37a1");
        assert_eq!(g.structure, TorsionStructure::Cyclic(1));
        assert_eq!(g.order(), 1);
    }

    #[test]
    fn torsion_full_two_torsion() {
        let g = t([1, -1, 1, -6, -4], 17, "17a2");
        assert_eq!(g.structure, TorsionStructure::TwoByTwoN(1));
        assert_eq!(g.order(), 4);
    }

    #[test]
    fn torsion_z8() {
        let g = t([1, 1, 1, 35, -28], 15, "15a4");
        assert_eq!(g.structure, TorsionStructure::Cyclic(8));
    }
}
