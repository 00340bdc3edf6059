//! Integer and modular arithmetic primitives.
//!
//! Everything here works on 64-bit moduli. Products are taken in 128-bit
//! arithmetic so no intermediate overflows for moduli below 2^63.

use std::f64::consts::TAU;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Extended Euclid: returns `(g, u, v)` with `g = gcd(|a|, |b|)` and
/// `u*a + v*b = g`.
///
/// The cofactor `u` is normalized into `[0, |b|/g)` whenever `b != 0`, which
/// makes the output unique.
pub fn egcd(a: i64, b: i64) -> Result<(u64, i64, i64)> {
    if a == 0 && b == 0 {
        return Err(Error::Domain("egcd(0, 0) is undefined".into()));
    }
    let (a, b) = (a as i128, b as i128);
    let (mut r0, mut r1) = (a.abs(), b.abs());
    let (mut s0, mut s1) = (1i128, 0i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    let g = r0;
    let mut u = if a < 0 { -s0 } else { s0 };
    let mut v = if b < 0 { -t0 } else { t0 };
    if b != 0 {
        // shift along the solution line u + k*(b/g), v - k*(a/g)
        let step_u = b.abs() / g;
        let k = u.div_euclid(step_u);
        u -= k * step_u;
        v += k * (a / g) * b.signum();
    }
    debug_assert_eq!(u * a + v * b, g);
    Ok((g as u64, u as i64, v as i64))
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// `gcd(|x|, m)` for a signed `x`.
#[inline]
pub fn gcd_signed(x: i64, m: u64) -> u64 {
    gcd(x.unsigned_abs(), m)
}

/// Canonical residue of `x` in `[0, m)`.
#[inline]
pub fn residue(x: i64, m: u64) -> u64 {
    (x as i128).rem_euclid(m as i128) as u64
}

#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Inverse of `x` modulo `m`, in `[1, m-1]`.
pub fn mod_inverse(x: i64, m: u64) -> Result<u64> {
    if m < 2 {
        return Err(Error::Domain(format!("modulus must be >= 2, got {m}")));
    }
    let xr = residue(x, m);
    let g = gcd(xr, m);
    if g != 1 {
        return Err(Error::NotInvertible { x, m, gcd: g });
    }
    let (_, u, _) = egcd(xr as i64, m as i64)?;
    Ok(residue(u, m))
}

/// Inverses of every residue `1..m` that is coprime to `m`; entry 0 and
/// non-invertible entries hold 0.
///
/// Uses the recurrence `inv(k) = -(m / k) * inv(m mod k)` for prime `m`, and
/// falls back to extended Euclid per entry otherwise.
pub fn inverse_table(m: u64) -> Vec<u64> {
    let n = m as usize;
    let mut inv = vec![0u64; n];
    if m < 2 {
        return inv;
    }
    if is_prime(m) {
        inv[1] = 1;
        for k in 2..n {
            let q = m / k as u64;
            inv[k] = mul_mod(m - q, inv[(m % k as u64) as usize], m);
        }
    } else {
        for (k, slot) in inv.iter_mut().enumerate().skip(1) {
            if let Ok(v) = mod_inverse(k as i64, m) {
                *slot = v;
            }
        }
    }
    inv
}

/// Prime factorization by trial division, ascending primes with exponents.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            let mut e = 0;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) {
        return false;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

pub fn euler_phi(m: u64) -> u64 {
    factorize(m)
        .into_iter()
        .fold(m, |acc, (q, _)| acc / q * (q - 1))
}

/// Number of divisors of `m`.
pub fn divisor_count(m: u64) -> u64 {
    factorize(m)
        .into_iter()
        .map(|(_, e)| e as u64 + 1)
        .product()
}

/// Exact `#{x : |x| <= bound, gcd(x, m) = 1}` by inclusion-exclusion over
/// the squarefree divisors of `m`.
///
/// Zero is coprime only to `m = 1`.
pub fn coprime_count_interval(bound: u64, m: u64) -> u64 {
    let primes: Vec<u64> = factorize(m).into_iter().map(|(q, _)| q).collect();
    let mut positive: i128 = 0;
    for mask in 0u32..(1u32 << primes.len()) {
        let mut d = 1u64;
        let mut overflow = false;
        for (i, &q) in primes.iter().enumerate() {
            if mask & (1 << i) != 0 {
                match d.checked_mul(q) {
                    Some(v) => d = v,
                    None => overflow = true,
                }
            }
        }
        if overflow || d > bound {
            continue;
        }
        let term = (bound / d) as i128;
        if mask.count_ones() % 2 == 0 {
            positive += term;
        } else {
            positive -= term;
        }
    }
    let zero = u64::from(m == 1);
    2 * positive as u64 + zero
}

/// Ascending list of all primes up to a bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeList {
    bound: u64,
    primes: Vec<u64>,
}

impl PrimeList {
    pub fn bound(&self) -> u64 {
        self.bound
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    /// pi(T)
    pub fn count(&self) -> usize {
        self.primes.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        self.primes.iter().copied()
    }
}

/// Sieve of Eratosthenes. Bounds below 2 give an empty list.
pub fn primes_up_to(bound: u64) -> PrimeList {
    if bound < 2 {
        return PrimeList {
            bound,
            primes: Vec::new(),
        };
    }
    let n = bound as usize;
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::new();
    for i in 2..=n {
        if composite[i] {
            continue;
        }
        primes.push(i as u64);
        let mut j = i.saturating_mul(i);
        while j <= n {
            composite[j] = true;
            j += i;
        }
    }
    PrimeList { bound, primes }
}

/// Smallest generator of the multiplicative group modulo an odd prime.
pub fn primitive_root(p: u64) -> Result<u64> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p == 2 {
        return Err(Error::Domain("primitive_root expects an odd prime".into()));
    }
    let order = p - 1;
    let factors = factorize(order);
    (2..p)
        .find(|&g| factors.iter().all(|&(q, _)| pow_mod(g, order / q, p) != 1))
        .ok_or_else(|| Error::Domain(format!("no primitive root found modulo {p}")))
}

/// Multiplicative order of `g` modulo `m`, by repeated multiplication.
pub fn multiplicative_order(g: u64, m: u64) -> Option<u64> {
    if gcd(g, m) != 1 || m < 2 {
        return None;
    }
    let mut x = g % m;
    let mut k = 1;
    while x != 1 {
        x = mul_mod(x, g, m);
        k += 1;
    }
    Some(k)
}

/// `exp(2 pi i z / m)`, reduced modulo `m` before the float conversion.
pub fn e_m(z: i64, m: u64) -> Complex64 {
    let r = residue(z, m);
    Complex64::from_polar(1.0, TAU * r as f64 / m as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn egcd_examples() {
        assert_eq!(egcd(0, 5).unwrap(), (5, 0, 1));
        assert_eq!(egcd(2, 7).unwrap(), (1, 4, -1));
        let (g, u, v) = egcd(12, 18).unwrap();
        assert_eq!(g, 6);
        assert_eq!(12 * u + 18 * v, 6);
        assert!(egcd(0, 0).is_err());
    }

    #[test]
    fn egcd_negative_inputs() {
        for (a, b) in [(-12, 18), (12, -18), (-7, -3), (-5, 0)] {
            let (g, u, v) = egcd(a, b).unwrap();
            assert_eq!(g, gcd(a.unsigned_abs(), b.unsigned_abs()));
            assert_eq!(u * a + v * b, g as i64);
        }
    }

    #[test]
    fn mod_inverse_examples() {
        assert_eq!(mod_inverse(1, 9).unwrap(), 1);
        assert_eq!(mod_inverse(2, 7).unwrap(), 4);
        assert_eq!(mod_inverse(-2, 7).unwrap(), 3);
        assert_eq!(
            mod_inverse(4, 8),
            Err(Error::NotInvertible { x: 4, m: 8, gcd: 4 })
        );
        assert!(mod_inverse(1, 1).is_err());
    }

    #[test]
    fn mod_inverse_exhaustive_small() {
        // every coprime pair below 300, plus a sweep of a larger modulus
        for m in 2..300u64 {
            for x in 1..m {
                if gcd(x, m) == 1 {
                    let y = mod_inverse(x as i64, m).unwrap();
                    assert!((1..m).contains(&y));
                    assert_eq!(mul_mod(x, y, m), 1);
                }
            }
        }
        let m = 10_000;
        for x in 1..m {
            if gcd(x, m) == 1 {
                assert_eq!(mul_mod(x, mod_inverse(x as i64, m).unwrap(), m), 1);
            }
        }
    }

    #[test]
    fn inverse_table_matches_mod_inverse() {
        for m in [2u64, 7, 12, 97, 100, 101] {
            let t = inverse_table(m);
            for x in 1..m {
                assert_eq!(t[x as usize], mod_inverse(x as i64, m).unwrap_or(0));
            }
        }
    }

    #[test]
    fn euler_phi_examples() {
        assert_eq!(euler_phi(1), 1);
        assert_eq!(euler_phi(7), 6);
        assert_eq!(euler_phi(12), 4);
        for m in 1..500u64 {
            let brute = (1..=m).filter(|&k| gcd(k, m) == 1).count() as u64;
            assert_eq!(euler_phi(m), brute, "m = {m}");
        }
    }

    #[test]
    fn coprime_count_examples() {
        assert_eq!(coprime_count_interval(5, 6), 4);
        assert_eq!(coprime_count_interval(9, 1), 19);
        assert_eq!(coprime_count_interval(3, 2), 4);
    }

    #[test]
    fn coprime_count_matches_enumeration() {
        for m in 1..=200u64 {
            for x in 1..=200u64 {
                let brute = (-(x as i64)..=x as i64)
                    .filter(|&v| gcd_signed(v, m) == 1)
                    .count() as u64;
                assert_eq!(coprime_count_interval(x, m), brute, "X={x} m={m}");
            }
        }
    }

    #[test]
    fn coprime_count_error_envelope() {
        for m in 1..=400u64 {
            let phi = euler_phi(m) as f64;
            let d = divisor_count(m) as f64;
            for x in [1u64, 2, 3, 10, 17, 99, 250, 1000] {
                let exact = coprime_count_interval(x, m) as f64;
                let main = 2.0 * x as f64 * phi / m as f64;
                assert!((exact - main).abs() <= d, "X={x} m={m}");
            }
        }
    }

    #[test]
    fn primes_examples() {
        assert_eq!(primes_up_to(10).primes(), &[2, 3, 5, 7]);
        assert_eq!(primes_up_to(2).primes(), &[2]);
        assert_eq!(primes_up_to(30).count(), 10);
        assert!(primes_up_to(1).primes().is_empty());
        let list = primes_up_to(10_000);
        assert_eq!(list.count(), 1229);
        assert!(list.primes().windows(2).all(|w| w[0] < w[1]));
        assert!(list.iter().all(is_prime));
    }

    #[test]
    fn primitive_root_examples() {
        assert_eq!(primitive_root(3).unwrap(), 2);
        assert_eq!(primitive_root(7).unwrap(), 3);
        assert_eq!(primitive_root(5).unwrap(), 2);
        assert_eq!(primitive_root(9), Err(Error::NotPrime(9)));
        for p in primes_up_to(2000).iter().skip(1) {
            let g = primitive_root(p).unwrap();
            assert_eq!(multiplicative_order(g, p), Some(p - 1));
            for smaller in 2..g {
                assert_ne!(multiplicative_order(smaller, p), Some(p - 1));
            }
        }
    }

    #[test]
    fn e_m_examples() {
        assert!((e_m(0, 5) - Complex64::new(1.0, 0.0)).norm() < 1e-15);
        assert!((e_m(2, 4) - Complex64::new(-1.0, 0.0)).norm() < 1e-15);
        assert!((e_m(1, 4) - Complex64::new(0.0, 1.0)).norm() < 1e-15);
    }

    proptest! {
        #[test]
        fn egcd_bezout(a in -1_000_000i64..1_000_000, b in -1_000_000i64..1_000_000) {
            prop_assume!(a != 0 || b != 0);
            let (g, u, v) = egcd(a, b).unwrap();
            prop_assert_eq!(u as i128 * a as i128 + v as i128 * b as i128, g as i128);
            prop_assert_eq!(a % g as i64, 0);
            prop_assert_eq!(b % g as i64, 0);
        }

        #[test]
        fn phi_multiplicative(m in 1u64..5000, n in 1u64..5000) {
            prop_assume!(gcd(m, n) == 1);
            prop_assert_eq!(euler_phi(m * n), euler_phi(m) * euler_phi(n));
        }

        #[test]
        fn e_m_periodic_and_unimodular(z in -1_000_000i64..1_000_000, m in 1u64..100_000) {
            let a = e_m(z, m);
            let b = e_m(z + m as i64, m);
            prop_assert!((a - b).norm() <= 1e-12);
            prop_assert!((a.norm() - 1.0).abs() <= 1e-12);
        }
    }
}
