//! Kloosterman sums `K_{r,s}(p)` and their Sato-Tate angles.
//!
//! Since `K_{r,s}(p) = K_{1,rs}(p)` whenever `p` does not divide `rs`, a
//! single table of `K_{1,a}(p)` for `a = 1..p-1` determines every angle
//! modulo `p`. Tables are built either by the direct `O(p^2)` double sum or
//! by writing `a = g^j` for a primitive root `g`, under which
//!
//! ```text
//! K_{1,g^j} = sum_k f(k) f(j - k),   f(k) = e_p(g^k),   indices mod p-1
//! ```
//!
//! is a cyclic self-convolution of length `p - 1`.

use std::f64::consts::TAU;

use num_complex::Complex64;

use crate::chirp::cyclic_self_convolution;
use crate::error::{Error, Result};
use crate::modmath::{e_m, inverse_table, is_prime, mod_inverse, mul_mod, primitive_root, residue};

/// Relative realness tolerance: `|Im K| <= REALNESS_TOL * sqrt(p)`.
pub const REALNESS_TOL: f64 = 1e-9;
/// Absolute slack allowed above `2 sqrt(p)` before an angle is refused.
pub const ANGLE_CLAMP_TOL: f64 = 1e-6;
/// Largest prime for which full tables are built.
pub const MAX_TABLE_PRIME: u64 = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Naive,
    Convolution,
}

impl Method {
    pub fn tag(self) -> u32 {
        match self {
            Method::Naive => 0,
            Method::Convolution => 1,
        }
    }

    pub fn from_tag(tag: u32) -> Option<Self> {
        match tag {
            0 => Some(Method::Naive),
            1 => Some(Method::Convolution),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Method::Naive => "naive",
            Method::Convolution => "convolution",
        }
    }
}

/// `K_{1,a}(p)` and `psi_{1,a}(p)` for `a = 1..p-1`.
#[derive(Debug, Clone, PartialEq)]
pub struct KloostermanTable {
    p: u64,
    values: Vec<f64>,
    angles: Vec<f64>,
    method: Method,
    max_imag: f64,
}

impl KloostermanTable {
    fn from_complex(p: u64, method: Method, raw: Vec<Complex64>) -> Result<Self> {
        let tol = REALNESS_TOL * (p as f64).sqrt();
        let max_imag = raw.iter().map(|z| z.im.abs()).fold(0.0, f64::max);
        if max_imag > tol {
            return Err(Error::Realness {
                p,
                imag: max_imag,
                tol,
            });
        }
        let values: Vec<f64> = raw.into_iter().map(|z| z.re).collect();
        let angles = values.iter().map(|&k| angle(k, p)).collect::<Result<_>>()?;
        Ok(KloostermanTable {
            p,
            values,
            angles,
            method,
            max_imag,
        })
    }

    /// Rebuilds a table from stored angles; values are recomputed as
    /// `2 sqrt(p) cos(psi)`.
    pub fn from_angles(p: u64, method: Method, angles: Vec<f64>) -> Result<Self> {
        if angles.len() as u64 != p.saturating_sub(1) {
            return Err(Error::Domain(format!(
                "expected {} angles for p = {p}, got {}",
                p.saturating_sub(1),
                angles.len()
            )));
        }
        if let Some(bad) = angles
            .iter()
            .find(|a| !(0.0..=std::f64::consts::PI).contains(*a))
        {
            return Err(Error::Domain(format!("angle {bad} outside [0, pi]")));
        }
        let scale = 2.0 * (p as f64).sqrt();
        let values = angles.iter().map(|a| scale * a.cos()).collect();
        Ok(KloostermanTable {
            p,
            values,
            angles,
            method,
            max_imag: 0.0,
        })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn method(&self) -> Method {
        self.method
    }

    /// Largest imaginary part seen before projecting onto the reals.
    pub fn max_imag(&self) -> f64 {
        self.max_imag
    }

    /// Values indexed `a - 1`.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Angles indexed `a - 1`.
    pub fn angles(&self) -> &[f64] {
        &self.angles
    }

    /// `K_{1,a}(p)` for `a` in `1..p`.
    pub fn value(&self, a: u64) -> f64 {
        self.values[(a - 1) as usize]
    }

    /// `psi_{1,a}(p)` for `a` in `1..p`.
    pub fn angle(&self, a: u64) -> f64 {
        self.angles[(a - 1) as usize]
    }
}

fn check_prime(p: u64) -> Result<()> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    Ok(())
}

/// `K_{r,s}(p)` by direct summation, with the imaginary part checked
/// against [`REALNESS_TOL`] before it is dropped.
///
/// Pairs with `p | r` or `p | s` are summed by the same definition (giving
/// `-1`, or `p - 1` when both vanish).
pub fn kloosterman_sum(r: i64, s: i64, p: u64) -> Result<f64> {
    check_prime(p)?;
    let (rr, sr) = (residue(r, p), residue(s, p));
    let mut acc = Complex64::new(0.0, 0.0);
    for n in 1..p {
        let inv = mod_inverse(n as i64, p)?;
        let phase = (mul_mod(rr, n, p) + mul_mod(sr, inv, p)) % p;
        acc += e_m(phase as i64, p);
    }
    let tol = REALNESS_TOL * (p as f64).sqrt();
    if acc.im.abs() > tol {
        return Err(Error::Realness {
            p,
            imag: acc.im.abs(),
            tol,
        });
    }
    Ok(acc.re)
}

/// Sato-Tate angle `arccos(K / 2 sqrt(p))` in `[0, pi]`.
pub fn angle(value: f64, p: u64) -> Result<f64> {
    let bound = 2.0 * (p as f64).sqrt();
    if !value.is_finite() || value.abs() > bound + ANGLE_CLAMP_TOL {
        return Err(Error::WeilViolation { value, p, bound });
    }
    Ok((value / bound).clamp(-1.0, 1.0).acos())
}

/// The table index `a = r s mod p` with `psi_{r,s}(p) = psi_{1,a}(p)`.
pub fn reduce_pair(r: i64, s: i64, p: u64) -> Result<u64> {
    let a = mul_mod(residue(r, p), residue(s, p), p);
    if a == 0 {
        return Err(Error::DegeneratePair { r, s, p });
    }
    Ok(a)
}

/// Full table of `K_{1,a}(p)`. For `p = 2` the naive path is always used.
pub fn kloosterman_all(p: u64, method: Method) -> Result<KloostermanTable> {
    check_prime(p)?;
    if p > MAX_TABLE_PRIME {
        return Err(Error::Limit(format!(
            "table prime {p} exceeds cap {MAX_TABLE_PRIME}"
        )));
    }
    match method {
        Method::Convolution if p > 2 => build_convolution(p),
        _ => build_naive(p),
    }
}

fn build_naive(p: u64) -> Result<KloostermanTable> {
    let inv = inverse_table(p);
    let twiddle: Vec<Complex64> = (0..p)
        .map(|k| Complex64::from_polar(1.0, TAU * k as f64 / p as f64))
        .collect();
    let raw = (1..p)
        .map(|a| {
            (1..p)
                .map(|n| twiddle[((n + mul_mod(a, inv[n as usize], p)) % p) as usize])
                .sum()
        })
        .collect();
    KloostermanTable::from_complex(p, Method::Naive, raw)
}

fn build_convolution(p: u64) -> Result<KloostermanTable> {
    let g = primitive_root(p)?;
    let order = (p - 1) as usize;
    let mut powers = Vec::with_capacity(order);
    let mut x = 1u64;
    for _ in 0..order {
        powers.push(x);
        x = mul_mod(x, g, p);
    }
    let f: Vec<Complex64> = powers
        .iter()
        .map(|&n| Complex64::from_polar(1.0, TAU * n as f64 / p as f64))
        .collect();
    let conv = cyclic_self_convolution(&f);
    let mut raw = vec![Complex64::new(0.0, 0.0); order];
    for (j, value) in conv.into_iter().enumerate() {
        raw[(powers[j] - 1) as usize] = value;
    }
    KloostermanTable::from_complex(p, Method::Convolution, raw)
}

/// Source of per-prime tables for the streaming statistics.
pub trait TableProvider: Sync {
    fn table(&self, p: u64) -> Result<KloostermanTable>;
}

/// Builds every requested table from scratch.
#[derive(Debug, Clone, Copy)]
pub struct BuildOnDemand(pub Method);

impl Default for BuildOnDemand {
    fn default() -> Self {
        BuildOnDemand(Method::Convolution)
    }
}

impl TableProvider for BuildOnDemand {
    fn table(&self, p: u64) -> Result<KloostermanTable> {
        kloosterman_all(p, self.0)
    }
}
