//! Exact integer and modular arithmetic: factorization, Euler phi, the
//! Dedekind psi-type function nu, divisor enumeration, and generators of
//! the unit group (Z/NZ)^*.
//!
//! All functions here operate on `u64` and are exact. Factorization is by
//! trial division with a deterministic Miller-Rabin certificate for the
//! remaining cofactor; inputs in this crate are conductors and related
//! quantities, far below the range where that strategy struggles.

use crate::error::{Error, Result};

/// Prime factorization `n = prod p_i^{e_i}` with primes strictly increasing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pairs: Vec<(u64, u32)>,
}

impl Factorization {
    /// The (prime, exponent) pairs, sorted ascending by prime.
    pub fn pairs(&self) -> &[(u64, u32)] {
        &self.pairs
    }

    /// Primes dividing the factored integer, ascending.
    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.pairs.iter().map(|&(p, _)| p)
    }

    /// Reconstructs the factored integer.
    pub fn value(&self) -> u64 {
        self.pairs.iter().map(|&(p, e)| p.pow(e)).product()
    }
}

/// Factor a positive integer by trial division; every extracted cofactor is
/// certified prime by deterministic Miller-Rabin before being recorded.
pub fn factor(n: u64) -> Result<Factorization> {
    if n == 0 {
        return Err(Error::Domain("factor(0) is undefined".into()));
    }
    let mut pairs = Vec::new();
    let mut m = n;
    let mut p = 2u64;
    while p * p <= m {
        if m % p == 0 {
            let mut e = 0u32;
            while m % p == 0 {
                m /= p;
                e += 1;
            }
            debug_assert!(is_prime(p));
            pairs.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if m > 1 {
        debug_assert!(is_prime(m));
        pairs.push((m, 1));
    }
    Ok(Factorization { pairs })
}

/// Deterministic Miller-Rabin primality test, valid for all `u64`.
///
/// The witness set {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37} is known to
/// be sufficient below 3.3 * 10^24.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// `a * b mod m` without overflow.
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

/// `a^e mod m` by square-and-multiply.
pub fn pow_mod(a: u64, mut e: u64, m: u64) -> u64 {
    let mut base = a % m;
    let mut acc = 1u64 % m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        e >>= 1;
    }
    acc
}

pub fn gcd(a: u64, b: u64) -> u64 {
    let (mut a, mut b) = (a, b);
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Extended gcd on signed integers: returns `(g, s, t)` with `a*s + b*t = g`.
pub fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    let (mut old_r, mut r) = (a, b);
    let (mut old_s, mut s) = (1i64, 0i64);
    let (mut old_t, mut t) = (0i64, 1i64);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
        (old_t, t) = (t, old_t - q * t);
    }
    if old_r < 0 {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}

/// Inverse of `a` mod `m` (requires gcd(a, m) = 1).
pub fn inv_mod(a: u64, m: u64) -> Result<u64> {
    let (g, s, _) = ext_gcd((a % m) as i64, m as i64);
    if g != 1 {
        return Err(Error::Domain(format!("{a} is not invertible mod {m}")));
    }
    Ok(s.rem_euclid(m as i64) as u64)
}

/// Euler's totient `phi(n) = #(Z/nZ)^*`.
pub fn euler_phi(n: u64) -> Result<u64> {
    let f = factor(n)?;
    let mut phi = 1u64;
    for &(p, e) in f.pairs() {
        phi *= p.pow(e - 1) * (p - 1);
    }
    Ok(phi)
}

/// `nu(n) = n * prod_{p | n} (1 + 1/p)`, so that
/// `[SL_2(Z) : Gamma_1(N)] = phi(N) * nu(N)`.
pub fn dedekind_nu(n: u64) -> Result<u64> {
    let f = factor(n)?;
    let mut nu = n;
    for &(p, _) in f.pairs() {
        nu = nu / p * (p + 1);
    }
    Ok(nu)
}

/// All divisors of `n`, ascending.
pub fn divisors(n: u64) -> Result<Vec<u64>> {
    let f = factor(n)?;
    let mut divs = vec![1u64];
    for &(p, e) in f.pairs() {
        let prev = divs.clone();
        let mut pk = 1u64;
        for _ in 0..e {
            pk *= p;
            divs.extend(prev.iter().map(|d| d * pk));
        }
    }
    divs.sort_unstable();
    Ok(divs)
}

/// Generators of `(Z/NZ)^*` via CRT decomposition into prime-power
/// components.
///
/// For an odd prime power the component generator is the least primitive
/// root (verified by exhaustive order test); for 2^k with k >= 3 the
/// standard pair {-1, 5} is used. Each local generator is lifted to a
/// global residue that is 1 in the other components. The trivial group
/// (N = 2) yields an empty list.
pub fn unit_group_generators(n: u64) -> Result<Vec<u64>> {
    if n < 2 {
        return Err(Error::Domain(format!("unit group of Z/{n}Z needs n >= 2")));
    }
    let f = factor(n)?;
    let mut gens = Vec::new();
    for &(p, e) in f.pairs() {
        let q = p.pow(e);
        let rest = n / q;
        let local: Vec<u64> = if p == 2 {
            match e {
                1 => vec![],
                2 => vec![3],
                _ => vec![q - 1, 5],
            }
        } else {
            vec![primitive_root_odd_prime_power(p, e)?]
        };
        for g in local {
            gens.push(crt_lift(g, q, 1, rest)?);
        }
    }
    Ok(gens)
}

/// Least primitive root mod p^e for an odd prime p.
fn primitive_root_odd_prime_power(p: u64, e: u32) -> Result<u64> {
    let phi_p = p - 1;
    let fac = factor(phi_p)?;
    let mut g = 2u64;
    loop {
        if g >= p {
            return Err(Error::Internal(format!("no primitive root mod {p}")));
        }
        let ok = fac.primes().all(|q| pow_mod(g, phi_p / q, p) != 1);
        if ok {
            break;
        }
        g += 1;
    }
    if e == 1 {
        return Ok(g);
    }
    // g generates mod p; it generates mod p^e unless g^(p-1) = 1 mod p^2,
    // in which case g + p does.
    let p2 = p * p;
    let g = if pow_mod(g % p2, p - 1, p2) == 1 { g + p } else { g };
    Ok(g % p.pow(e))
}

/// CRT: the residue mod `m1*m2` that is `r1` mod `m1` and `r2` mod `m2`
/// (moduli coprime). `m2 = 1` returns `r1`.
fn crt_lift(r1: u64, m1: u64, r2: u64, m2: u64) -> Result<u64> {
    if m2 == 1 {
        return Ok(r1 % m1);
    }
    let m1_inv = inv_mod(m1 % m2, m2)?;
    let diff = (r2 + m2 - r1 % m2) % m2;
    let k = mul_mod(diff, m1_inv, m2);
    Ok((r1 as u128 + k as u128 * m1 as u128) as u64 % (m1 as u128 * m2 as u128) as u64)
}

/// Multiplicative order of `a` mod `n` (gcd(a, n) = 1).
pub fn order_mod(a: u64, n: u64) -> Result<u64> {
    if gcd(a % n, n) != 1 {
        return Err(Error::Domain(format!("order of non-unit {a} mod {n}")));
    }
    let phi = euler_phi(n)?;
    let mut ord = phi;
    for &(p, e) in factor(phi)?.pairs() {
        for _ in 0..e {
            if pow_mod(a, ord / p, n) == 1 {
                ord /= p;
            } else {
                break;
            }
        }
    }
    Ok(ord)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn phi_brute(n: u64) -> u64 {
        (1..=n).filter(|&k| gcd(k, n) == 1).count() as u64
    }

    #[test]
    fn factor_small() {
        assert_eq!(factor(1).unwrap().pairs(), &[] as &[(u64, u32)]);
        assert_eq!(factor(12).unwrap().pairs(), &[(2, 2), (3, 1)]);
        assert_eq!(factor(997).unwrap().pairs(), &[(997, 1)]);
        assert!(factor(0).is_err());
    }

    #[test]
    fn factor_reconstructs() {
        for n in 1..5000u64 {
            let f = factor(n).unwrap();
            assert_eq!(f.value(), n);
            for &(p, _) in f.pairs() {
                assert!(is_prime(p), "claimed prime {p} for n = {n}");
            }
        }
    }

    #[test]
    fn phi_matches_brute_force() {
        assert_eq!(euler_phi(1).unwrap(), 1);
        assert_eq!(euler_phi(11).unwrap(), 10);
        assert_eq!(euler_phi(20).unwrap(), 8);
        for n in 1..=2000u64 {
            assert_eq!(euler_phi(n).unwrap(), phi_brute(n), "phi({n})");
        }
    }

    #[test]
    fn nu_values() {
        assert_eq!(dedekind_nu(1).unwrap(), 1);
        for p in [2u64, 3, 5, 7, 11, 97] {
            assert_eq!(dedekind_nu(p).unwrap(), p + 1);
        }
        assert_eq!(dedekind_nu(20).unwrap(), 36);
    }

    #[test]
    fn divisors_small() {
        assert_eq!(divisors(1).unwrap(), vec![1]);
        assert_eq!(divisors(20).unwrap(), vec![1, 2, 4, 5, 10, 20]);
        assert_eq!(divisors(49).unwrap(), vec![1, 7, 49]);
    }

    #[test]
    fn multiplicative_on_coprime_pairs() {
        // Deterministic pseudo-random coprime pairs below 10^6.
        let mut x = 123456789u64;
        let mut next = move || {
            x = x.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (x >> 33) % 1_000_000 + 1
        };
        let mut tested = 0;
        while tested < 200 {
            let (m, n) = (next(), next());
            if gcd(m, n) != 1 {
                continue;
            }
            tested += 1;
            assert_eq!(
                euler_phi(m * n).unwrap(),
                euler_phi(m).unwrap() * euler_phi(n).unwrap()
            );
            assert_eq!(
                dedekind_nu(m * n).unwrap(),
                dedekind_nu(m).unwrap() * dedekind_nu(n).unwrap()
            );
            let fm = factor(m).unwrap();
            let fn_ = factor(n).unwrap();
            let fmn = factor(m * n).unwrap();
            assert_eq!(fmn.pairs().len(), fm.pairs().len() + fn_.pairs().len());
        }
    }

    #[test]
    fn unit_generators_generate() {
        assert_eq!(unit_group_generators(2).unwrap(), Vec::<u64>::new());
        assert_eq!(unit_group_generators(11).unwrap(), vec![2]);
        assert_eq!(order_mod(2, 11).unwrap(), 10);
        // 8: {-1, 5} reduced, i.e. {7, 5}; closure must give {1,3,5,7}.
        let g8 = unit_group_generators(8).unwrap();
        assert_eq!(subgroup_size(&g8, 8), 4);

        for n in 5..500u64 {
            let gens = unit_group_generators(n).unwrap();
            for &g in &gens {
                assert_eq!(gcd(g, n), 1, "generator {g} not a unit mod {n}");
            }
            let nfac = factor(n).unwrap().pairs().len();
            assert!(gens.len() <= nfac + 1);
            assert_eq!(subgroup_size(&gens, n), euler_phi(n).unwrap(), "N = {n}");
        }
    }

    /// Brute-force closure of the subgroup generated by `gens` in (Z/nZ)^*.
    fn subgroup_size(gens: &[u64], n: u64) -> u64 {
        let mut seen = vec![false; n as usize];
        seen[1 % n as usize] = true;
        let mut stack = vec![1u64 % n];
        let mut count = 1u64;
        while let Some(a) = stack.pop() {
            for &g in gens {
                let b = mul_mod(a, g, n);
                if !seen[b as usize] {
                    seen[b as usize] = true;
                    count += 1;
                    stack.push(b);
                }
            }
        }
        count
    }

    #[test]
    fn order_mod_examples() {
        assert_eq!(order_mod(2, 7).unwrap(), 3);
        assert_eq!(order_mod(3, 7).unwrap(), 6);
        assert!(order_mod(2, 8).is_err());
    }
}
