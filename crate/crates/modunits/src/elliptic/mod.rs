//! Elliptic curves over Q: Weierstrass models, exact chord-tangent group
//! law, rational torsion subgroups, and (in [`periods`]) the Neron period
//! lattice, Weierstrass functions and the elliptic logarithm.

mod torsion;
pub mod periods;

pub use periods::PeriodLattice;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;

use crate::error::{Error, Result};

/// Integral Weierstrass model y^2 + a1 x y + a3 y = x^3 + a2 x^2 + a4 x + a6
/// together with its conductor and database label.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeierstrassCurve {
    pub a1: i64,
    pub a2: i64,
    pub a3: i64,
    pub a4: i64,
    pub a6: i64,
    pub conductor: u64,
    pub label: String,
}

impl WeierstrassCurve {
    pub fn new(a: [i64; 5], conductor: u64, label: impl Into<String>) -> Result<Self> {
        let curve = WeierstrassCurve {
            a1: a[0],
            a2: a[1],
            a3: a[2],
            a4: a[3],
            a6: a[4],
            conductor,
            label: label.into(),
        };
        if curve.discriminant().is_zero() {
            return Err(Error::Domain(format!(
                "singular model {:?} for {}",
                a, curve.label
            )));
        }
        Ok(curve)
    }

    pub fn a_invariants(&self) -> [i64; 5] {
        [self.a1, self.a2, self.a3, self.a4, self.a6]
    }

    pub fn b2(&self) -> BigInt {
        BigInt::from(self.a1) * self.a1 + 4 * BigInt::from(self.a2)
    }

    pub fn b4(&self) -> BigInt {
        2 * BigInt::from(self.a4) + BigInt::from(self.a1) * self.a3
    }

    pub fn b6(&self) -> BigInt {
        BigInt::from(self.a3) * self.a3 + 4 * BigInt::from(self.a6)
    }

    pub fn b8(&self) -> BigInt {
        let a1 = BigInt::from(self.a1);
        let a2 = BigInt::from(self.a2);
        let a3 = BigInt::from(self.a3);
        let a4 = BigInt::from(self.a4);
        let a6 = BigInt::from(self.a6);
        &a1 * &a1 * &a6 + 4 * &a2 * &a6 - &a1 * &a3 * &a4 + &a2 * &a3 * &a3 - &a4 * &a4
    }

    pub fn c4(&self) -> BigInt {
        let b2 = self.b2();
        &b2 * &b2 - 24 * self.b4()
    }

    pub fn c6(&self) -> BigInt {
        let b2 = self.b2();
        -&b2 * &b2 * &b2 + 36 * &b2 * self.b4() - 216 * self.b6()
    }

    /// Discriminant of the model.
    pub fn discriminant(&self) -> BigInt {
        let b2 = self.b2();
        let b4 = self.b4();
        let b6 = self.b6();
        let b8 = self.b8();
        -&b2 * &b2 * &b8 - 8 * &b4 * &b4 * &b4 - 27 * &b6 * &b6 + 9 * &b2 * &b4 * &b6
    }

    /// True iff P is the point at infinity or satisfies the model exactly.
    pub fn is_on_curve(&self, p: &CurvePoint) -> bool {
        match p {
            CurvePoint::Infinity => true,
            CurvePoint::Affine { x, y } => {
                let a1 = big(self.a1);
                let a2 = big(self.a2);
                let a3 = big(self.a3);
                let a4 = big(self.a4);
                let a6 = big(self.a6);
                let lhs = y * y + &a1 * x * y + &a3 * y;
                let rhs = x * x * x + &a2 * x * x + &a4 * x + &a6;
                lhs == rhs
            }
        }
    }

    /// -P = (x, -y - a1 x - a3).
    pub fn neg(&self, p: &CurvePoint) -> CurvePoint {
        match p {
            CurvePoint::Infinity => CurvePoint::Infinity,
            CurvePoint::Affine { x, y } => CurvePoint::Affine {
                x: x.clone(),
                y: -y - big(self.a1) * x - big(self.a3),
            },
        }
    }

    /// Chord-tangent sum in exact rational arithmetic. Inputs must lie on
    /// the curve.
    pub fn add(&self, p: &CurvePoint, q: &CurvePoint) -> Result<CurvePoint> {
        if !self.is_on_curve(p) || !self.is_on_curve(q) {
            return Err(Error::Domain(format!(
                "point off curve {} in add",
                self.label
            )));
        }
        Ok(self.add_unchecked(p, q))
    }

    pub(crate) fn add_unchecked(&self, p: &CurvePoint, q: &CurvePoint) -> CurvePoint {
        let (x1, y1) = match p {
            CurvePoint::Infinity => return q.clone(),
            CurvePoint::Affine { x, y } => (x, y),
        };
        let (x2, y2) = match q {
            CurvePoint::Infinity => return p.clone(),
            CurvePoint::Affine { x, y } => (x, y),
        };
        let a1 = big(self.a1);
        let a2 = big(self.a2);
        let a3 = big(self.a3);
        let a4 = big(self.a4);

        let lambda = if x1 != x2 {
            (y2 - y1) / (x2 - x1)
        } else {
            // Same x: either opposite points or a doubling.
            let minus_y1 = -y1 - &a1 * x1 - &a3;
            if *y2 == minus_y1 {
                return CurvePoint::Infinity;
            }
            let num = big(3) * x1 * x1 + big(2) * &a2 * x1 + &a4 - &a1 * y1;
            let den = big(2) * y1 + &a1 * x1 + &a3;
            num / den
        };
        let nu = y1 - &lambda * x1;
        let x3 = &lambda * &lambda + &a1 * &lambda - &a2 - x1 - x2;
        let y3 = -(&lambda + &a1) * &x3 - &nu - &a3;
        CurvePoint::Affine { x: x3, y: y3 }
    }

    /// n P by repeated doubling (n may be negative).
    pub fn mul(&self, n: i64, p: &CurvePoint) -> Result<CurvePoint> {
        if !self.is_on_curve(p) {
            return Err(Error::Domain(format!(
                "point off curve {} in mul",
                self.label
            )));
        }
        let mut base = if n < 0 { self.neg(p) } else { p.clone() };
        let mut k = n.unsigned_abs();
        let mut acc = CurvePoint::Infinity;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add_unchecked(&acc, &base);
            }
            base = self.add_unchecked(&base, &base);
            k >>= 1;
        }
        Ok(acc)
    }

    /// Order of a rational torsion point; None if no multiple up to 12
    /// vanishes, which by Mazur's theorem certifies the point is not
    /// torsion.
    pub fn point_order(&self, p: &CurvePoint) -> Option<u32> {
        if p.is_infinity() {
            return Some(1);
        }
        let mut acc = p.clone();
        for k in 1..=12u32 {
            if acc.is_infinity() {
                return Some(k);
            }
            acc = self.add_unchecked(&acc, p);
        }
        None
    }

    /// The rational torsion subgroup.
    pub fn torsion_subgroup(&self) -> Result<TorsionGroup> {
        torsion::torsion_subgroup(self)
    }
}

fn big(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// A rational point: infinity or exact affine coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CurvePoint {
    Infinity,
    Affine { x: BigRational, y: BigRational },
}

impl CurvePoint {
    pub fn affine(x: impl Into<BigRational>, y: impl Into<BigRational>) -> Self {
        CurvePoint::Affine {
            x: x.into(),
            y: y.into(),
        }
    }

    pub fn affine_i64(x: i64, y: i64) -> Self {
        CurvePoint::Affine {
            x: big(x),
            y: big(y),
        }
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, CurvePoint::Infinity)
    }
}

impl fmt::Display for CurvePoint {
    /// Serialization used in all reports: `(x,y)` with exact rationals,
    /// `oo` for infinity.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CurvePoint::Infinity => write!(f, "oo"),
            CurvePoint::Affine { x, y } => write!(f, "({},{})", fmt_rat(x), fmt_rat(y)),
        }
    }
}

fn fmt_rat(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parse the report serialization back: `oo` or `(x,y)`.
pub fn parse_point(s: &str) -> Result<CurvePoint> {
    let s = s.trim();
    if s == "oo" {
        return Ok(CurvePoint::Infinity);
    }
    let inner = s
        .strip_prefix('(')
        .and_then(|t| t.strip_suffix(')'))
        .ok_or_else(|| Error::Domain(format!("bad point syntax {s:?}")))?;
    let (xs, ys) = inner
        .split_once(',')
        .ok_or_else(|| Error::Domain(format!("bad point syntax {s:?}")))?;
    let parse_rat = |t: &str| -> Result<BigRational> {
        let t = t.trim();
        let v = if let Some((n, d)) = t.split_once('/') {
            BigRational::new(
                n.trim().parse::<BigInt>().map_err(|e| Error::Domain(e.to_string()))?,
                d.trim().parse::<BigInt>().map_err(|e| Error::Domain(e.to_string()))?,
            )
        } else {
            BigRational::from_integer(t.parse::<BigInt>().map_err(|e| Error::Domain(e.to_string()))?)
        };
        Ok(v)
    };
    Ok(CurvePoint::Affine {
        x: parse_rat(xs)?,
        y: parse_rat(ys)?,
    })
}

/// Abstract structure of a finite torsion group in Mazur's list.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TorsionStructure {
    /// Z/nZ (n = 1 means trivial).
    Cyclic(u32),
    /// Z/2Z x Z/2nZ.
    TwoByTwoN(u32),
}

impl fmt::Display for TorsionStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TorsionStructure::Cyclic(n) => write!(f, "Z/{n}Z"),
            TorsionStructure::TwoByTwoN(n) => write!(f, "Z/2Z x Z/{}Z", 2 * n),
        }
    }
}

impl TorsionStructure {
    pub fn order(&self) -> u32 {
        match self {
            TorsionStructure::Cyclic(n) => *n,
            TorsionStructure::TwoByTwoN(n) => 4 * n,
        }
    }

    pub fn exponent(&self) -> u32 {
        match self {
            TorsionStructure::Cyclic(n) => *n,
            TorsionStructure::TwoByTwoN(n) => 2 * n,
        }
    }

    /// Mazur's theorem: Z/n for n <= 10 or n = 12, or Z/2 x Z/2n for n <= 4.
    pub fn in_mazur_list(&self) -> bool {
        match self {
            TorsionStructure::Cyclic(n) => (1..=10).contains(n) || *n == 12,
            TorsionStructure::TwoByTwoN(n) => (1..=4).contains(n),
        }
    }
}

/// The full rational torsion subgroup: structure, generators and the
/// complete element list.
#[derive(Debug, Clone)]
pub struct TorsionGroup {
    pub structure: TorsionStructure,
    pub generators: Vec<CurvePoint>,
    pub elements: Vec<CurvePoint>,
}

impl TorsionGroup {
    pub fn order(&self) -> u32 {
        self.elements.len() as u32
    }

    pub fn contains(&self, p: &CurvePoint) -> bool {
        self.elements.contains(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn curve_11a1() -> WeierstrassCurve {
        WeierstrassCurve::new([0, -1, 1, -10, -20], 11, "11a1").unwrap()
    }

    #[test]
    fn on_curve_examples() {
        let e = curve_11a1();
        assert!(e.is_on_curve(&CurvePoint::Infinity));
        assert!(e.is_on_curve(&CurvePoint::affine_i64(5, 5)));
        assert!(!e.is_on_curve(&CurvePoint::affine_i64(5, 6)));
    }

    #[test]
    fn add_identity_and_inverse() {
        let e = curve_11a1();
        let p = CurvePoint::affine_i64(5, 5);
        assert_eq!(e.add(&p, &CurvePoint::Infinity).unwrap(), p);
        let np = e.neg(&p);
        assert!(e.is_on_curve(&np));
        assert_eq!(e.add(&p, &np).unwrap(), CurvePoint::Infinity);
    }

    #[test]
    fn duplication_on_11a1() {
        // 2 * (5,5) = (16,-61): tangent slope lambda = 5.
        let e = curve_11a1();
        let p = CurvePoint::affine_i64(5, 5);
        let two_p = e.add(&p, &p).unwrap();
        assert_eq!(two_p, CurvePoint::affine_i64(16, -61));
    }

    #[test]
    fn group_law_associative_commutative() {
        // 14a1 has full torsion Z/6; sample its points as triples.
        let e = WeierstrassCurve::new([1, 0, 1, 4, -6], 14, "14a1").unwrap();
        let pts = [
            CurvePoint::Infinity,
            CurvePoint::affine_i64(9, 23),
            CurvePoint::affine_i64(1, -1),
            CurvePoint::affine_i64(2, -5),
            CurvePoint::affine_i64(2, 2),
            CurvePoint::affine_i64(9, -33),
        ];
        for p in &pts {
            assert!(e.is_on_curve(p));
            for q in &pts {
                let pq = e.add(p, q).unwrap();
                let qp = e.add(q, p).unwrap();
                assert_eq!(pq, qp);
                for r in &pts {
                    let lhs = e.add(&pq, r).unwrap();
                    let rhs = e.add(p, &e.add(q, r).unwrap()).unwrap();
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn singular_model_rejected() {
        assert!(WeierstrassCurve::new([0, 0, 0, 0, 0], 1, "bad").is_err());
    }

    #[test]
    fn point_display_round_trip() {
        let p = CurvePoint::affine(
            BigRational::new(BigInt::from(3), BigInt::from(4)),
            BigRational::from_integer(BigInt::from(-7)),
        );
        let s = p.to_string();
        assert_eq!(s, "(3/4,-7)");
        assert_eq!(parse_point(&s).unwrap(), p);
        assert_eq!(parse_point("oo").unwrap(), CurvePoint::Infinity);
    }
}
