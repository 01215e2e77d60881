//! Combinatorics of X_0(N) and X_1(N): cusp strata by denominator, cusp
//! counts, widths, the genus of X_1(N), diamond-operator matrices, the
//! degree bound phi(N) nu(N) / 12 for parametrizations by modular units,
//! and the finiteness screen built on Watkins-type degree growth.
//!
//! Everything assumes N >= 5: below that X_1(N) has irregular cusps or
//! elliptic points and the counting formulas here degenerate. No
//! conductor of an elliptic curve over Q is that small.

use num_rational::Ratio;

use crate::arith::{self, divisors, euler_phi, dedekind_nu, inv_mod};
use crate::error::{Error, Result};

/// Per-divisor cusp data: for d | N the stratum C_d of cusps of
/// denominator d, with counts on X_0(N) and X_1(N), the X_0(N)-width,
/// and (once measured) the ramification orders of the optimal
/// parametrizations at 1/d.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CuspStratum {
    pub d: u64,
    /// # cusps of denominator d on X_0(N): phi((d, N/d)).
    pub count_x0: u64,
    /// # cusps of denominator d on X_1(N): phi((d, N/d)) phi(N) / (2 (d, N/d)).
    pub count_x1: u64,
    /// Width of the cusp 1/d on Gamma_0(N): N / gcd(d^2, N).
    pub width: u64,
    /// Order of vanishing of omega_f at 1/d = ramification of phi_0.
    pub e_phi0: Option<u64>,
    /// Ramification of phi_1 at 1/d: (d, N/d) * e_phi0.
    pub e_phi1: Option<u64>,
}

/// One stratum per divisor of N, counts filled in, e-fields unset.
pub fn cusp_strata(n: u64) -> Result<Vec<CuspStratum>> {
    guard_level(n)?;
    let phi_n = euler_phi(n)?;
    let mut out = Vec::new();
    for d in divisors(n)? {
        let g = arith::gcd(d, n / d);
        let phi_g = euler_phi(g)?;
        let count_x1_num = phi_g * phi_n;
        if count_x1_num % (2 * g) != 0 {
            return Err(Error::Internal(format!(
                "non-integral cusp count at N = {n}, d = {d}"
            )));
        }
        out.push(CuspStratum {
            d,
            count_x0: phi_g,
            count_x1: count_x1_num / (2 * g),
            width: n / arith::gcd(d * d, n),
            e_phi0: None,
            e_phi1: None,
        });
    }
    Ok(out)
}

/// Total number of cusps of X_1(N).
pub fn cusp_count_x1(n: u64) -> Result<u64> {
    Ok(cusp_strata(n)?.iter().map(|s| s.count_x1).sum())
}

/// Genus of X_1(N) from #C_1(N) + 2g - 2 = phi(N) nu(N) / 12.
pub fn genus_x1(n: u64) -> Result<u64> {
    guard_level(n)?;
    let idx = euler_phi(n)? * dedekind_nu(n)?;
    if idx % 12 != 0 {
        return Err(Error::Internal(format!(
            "phi(N) nu(N) = {idx} not divisible by 12 at N = {n}"
        )));
    }
    let c1 = cusp_count_x1(n)?;
    let twice_g = (idx / 12 + 2).checked_sub(c1).ok_or_else(|| {
        Error::Internal(format!("negative genus at N = {n}"))
    })?;
    if twice_g % 2 != 0 {
        return Err(Error::Internal(format!("odd 2g = {twice_g} at N = {n}")));
    }
    Ok(twice_g / 2)
}

/// A matrix realizing the diamond operator <alpha> in Gamma_0(N):
/// determinant 1, lower-left divisible by N, lower-right congruent to
/// alpha mod N.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DiamondMatrix {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
}

impl DiamondMatrix {
    pub fn det(&self) -> i64 {
        self.a * self.d - self.b * self.c
    }

    /// Moebius action on a point of the upper half plane (as a pair of
    /// f64 for diagnostics; the analytic pipeline applies matrices at
    /// full precision itself).
    pub fn entries(&self) -> [i64; 4] {
        [self.a, self.b, self.c, self.d]
    }
}

/// <alpha> as (a, b; N, d') with d' = alpha mod N in [0, N),
/// a d' = 1 mod N, b = (a d' - 1)/N. <1> is the identity.
pub fn diamond_matrix(n: u64, alpha: u64) -> Result<DiamondMatrix> {
    guard_level(n)?;
    let d = alpha % n;
    if arith::gcd(d, n) != 1 {
        return Err(Error::Domain(format!(
            "diamond residue {alpha} not a unit mod {n}"
        )));
    }
    if d == 1 {
        return Ok(DiamondMatrix { a: 1, b: 0, c: 0, d: 1 });
    }
    let a = inv_mod(d, n)?;
    let b = ((a as i64) * (d as i64) - 1) / n as i64;
    Ok(DiamondMatrix {
        a: a as i64,
        b,
        c: n as i64,
        d: d as i64,
    })
}

/// The bound phi(N) nu(N) / 12 on the degree of any parametrization of an
/// elliptic curve by modular units of level N, as an exact rational.
pub fn unit_degree_bound(n: u64) -> Result<Ratio<i64>> {
    guard_level(n)?;
    let num = (euler_phi(n)? * dedekind_nu(n)?) as i64;
    Ok(Ratio::new(num, 12))
}

/// Outcome of the finiteness screen for one isogeny class at level N.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScreenResult {
    /// Least possible deg(phi_1) given deg(phi_0) and the torsion cap:
    /// (phi(N)/2) deg(phi_0) / cap.
    pub lhs_min: Ratio<i64>,
    /// The modular-unit degree bound phi(N) nu(N) / 12.
    pub rhs: Ratio<i64>,
    /// True when lhs_min > rhs, certifying that no curve of the class
    /// admits a parametrization by modular units of level N.
    pub screened: bool,
}

/// Compare the smallest conceivable X_1-degree, deg(pi) deg(phi_0) /
/// #E_1(Q)_tors >= (phi(N)/2) deg(phi_0) / cap, against the unit bound.
pub fn finiteness_screen(n: u64, deg_phi0: u64, torsion_cap: u64) -> Result<ScreenResult> {
    guard_level(n)?;
    if deg_phi0 == 0 || torsion_cap == 0 {
        return Err(Error::Domain("finiteness_screen needs positive inputs".into()));
    }
    let phi = euler_phi(n)? as i64;
    let lhs_min = Ratio::new(phi, 2) * Ratio::new(deg_phi0 as i64, torsion_cap as i64);
    let rhs = unit_degree_bound(n)?;
    Ok(ScreenResult {
        lhs_min,
        rhs,
        screened: lhs_min > rhs,
    })
}

fn guard_level(n: u64) -> Result<()> {
    if n < 5 {
        return Err(Error::Domain(format!(
            "level {n} < 5 not supported (degenerate cusp formulas)"
        )));
    }
    Ok(())
}
