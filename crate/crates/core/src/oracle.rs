//! Brute-force reference implementations.
//!
//! These are only used to cross-check the fast paths. Nothing here calls
//! into `modmath`, `counting`, `kloosterman` or `satotate` beyond reading the
//! plain data carried by their types: every inverse is found by search,
//! every gcd is recomputed locally, every integral is done by quadrature.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::counting::{CountMode, SampleSet, Window};
use crate::kloosterman::KloostermanTable;
use crate::satotate::AngleWindow;

fn plain_gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

fn plain_mod(x: i128, m: i128) -> i128 {
    ((x % m) + m) % m
}

/// Literal double loop over `x` in the set and `y` in `[Z+1, Z+Y]`.
pub fn naive_count(a: i64, m: u64, set: &SampleSet, window: &Window, mode: CountMode) -> u64 {
    let mi = m as i128;
    let lo = window.z() as i128 + 1;
    let hi = window.z() as i128 + window.len() as i128;
    let mut total = 0;
    for x in set.iter() {
        let coprime = plain_gcd(x, m as i64) == 1;
        if !coprime && mode != CountMode::Multiple {
            continue;
        }
        let mut matches = 0;
        let mut y = lo;
        while y <= hi {
            let hit = match mode {
                // a / x = y  <=>  a = x y  for invertible x
                CountMode::Inverse => plain_mod(x as i128 * y - a as i128, mi) == 0,
                CountMode::Multiple | CountMode::MultipleCoprime => {
                    plain_mod(a as i128 * x as i128 - y, mi) == 0
                }
            };
            if hit {
                matches += 1;
            }
            y += 1;
        }
        if matches > 0 {
            total += 1;
        }
    }
    total
}

/// Direct `p - 1` term sum `sum_n exp(2 pi i (r n + s n^-1) / p)`, with the
/// complex value returned untouched.
pub fn naive_kloosterman(r: i64, s: i64, p: u64) -> Complex64 {
    let pi = p as i128;
    let mut acc = Complex64::new(0.0, 0.0);
    for n in 1..pi {
        let mut inv = 0;
        for cand in 1..pi {
            if (n * cand) % pi == 1 {
                inv = cand;
            }
        }
        let phase = plain_mod(r as i128 * n + s as i128 * inv, pi);
        let theta = 2.0 * PI * phase as f64 / p as f64;
        acc += Complex64::new(theta.cos(), theta.sin());
    }
    acc
}

/// Composite Simpson rule for `(2/pi) sin^2` over the window. An odd step
/// count is rounded up to the next even one.
pub fn naive_mu(window: &AngleWindow, steps: usize) -> f64 {
    let steps = (steps.max(2) + 1) & !1;
    let (a, b) = (window.alpha(), window.beta());
    let h = (b - a) / steps as f64;
    let density = |g: f64| 2.0 / PI * g.sin() * g.sin();
    let mut sum = density(a) + density(b);
    for k in 1..steps {
        let weight = if k % 2 == 1 { 4.0 } else { 2.0 };
        sum += weight * density(a + k as f64 * h);
    }
    sum * h / 3.0
}

/// Max over the grid `beta_k = k pi / grid` of the distance between the
/// empirical CDF of the angles and the Sato-Tate CDF.
pub fn naive_discrepancy_angles(angles: &[f64], grid: usize) -> f64 {
    let n = angles.len() as f64;
    let mut worst: f64 = 0.0;
    for k in 1..=grid {
        let beta = k as f64 * PI / grid as f64;
        let below = angles.iter().filter(|&&psi| psi <= beta).count() as f64;
        let target = beta / PI - (2.0 * beta).sin() / (2.0 * PI);
        worst = worst.max((below / n - target).abs());
    }
    worst
}

pub fn naive_discrepancy(table: &KloostermanTable, grid: usize) -> f64 {
    naive_discrepancy_angles(table.angles(), grid)
}
