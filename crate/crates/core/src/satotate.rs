//! Sato-Tate statistics of Kloosterman angles.
//!
//! Counts over pairs `(r, s)` with `0 < |r| <= R`, `0 < |s| <= S` only ever
//! consult the table entry `a = r s mod p`, so every statistic here streams
//! over primes with one table per prime. Pairs with `p | rs` have no angle
//! and are skipped at that prime.

use std::f64::consts::PI;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::kloosterman::{KloostermanTable, TableProvider};
use crate::modmath::{mod_inverse, mul_mod, primes_up_to, residue, PrimeList};

/// Largest `R * S` for which per-pair counters are allocated.
pub const MAX_PAIR_PRODUCT: u64 = 1 << 27;

/// Closed angle window `[alpha, beta]` with `0 <= alpha < beta <= pi`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AngleWindow {
    alpha: f64,
    beta: f64,
}

impl AngleWindow {
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        if !(alpha >= 0.0 && alpha < beta && beta <= PI) {
            return Err(Error::InvalidAngleWindow { alpha, beta });
        }
        Ok(AngleWindow { alpha, beta })
    }

    pub fn full() -> Self {
        AngleWindow {
            alpha: 0.0,
            beta: PI,
        }
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    #[inline]
    pub fn contains(&self, psi: f64) -> bool {
        self.alpha <= psi && psi <= self.beta
    }
}

/// Sato-Tate CDF `mu_ST(0, x)`.
pub fn sato_tate_cdf(x: f64) -> f64 {
    x / PI - (2.0 * x).sin() / (2.0 * PI)
}

/// `mu_ST(alpha, beta) = (2/pi) int_alpha^beta sin^2`.
pub fn mu_st(window: &AngleWindow) -> f64 {
    let (a, b) = (window.alpha, window.beta);
    (b - a) / PI - ((2.0 * b).sin() - (2.0 * a).sin()) / (2.0 * PI)
}

/// `#A_p(alpha, beta)`: residues `a` whose angle lies in the window.
pub fn angle_set_count(table: &KloostermanTable, window: &AngleWindow) -> u64 {
    table
        .angles()
        .iter()
        .filter(|&&psi| window.contains(psi))
        .count() as u64
}

/// Kolmogorov-Smirnov distance between the empirical distribution of the
/// angles and the Sato-Tate law, `sup_beta |F_n(beta) - mu_ST(0, beta)|`.
pub fn star_discrepancy(angles: &[f64]) -> f64 {
    if angles.is_empty() {
        return 0.0;
    }
    let mut sorted = angles.to_vec();
    sorted.sort_by(f64::total_cmp);
    let n = sorted.len() as f64;
    sorted
        .iter()
        .enumerate()
        .map(|(i, &x)| {
            let f = sato_tate_cdf(x);
            ((i + 1) as f64 / n - f).max(f - i as f64 / n)
        })
        .fold(0.0, f64::max)
}

/// Star discrepancy of the `p - 1` angles of a table.
pub fn discrepancy(table: &KloostermanTable) -> f64 {
    star_discrepancy(table.angles())
}

/// `#{s : 0 < |s| <= bound, s = c (mod p)}` for `c` not divisible by `p`.
fn class_count(c: u64, bound: u64, p: u64) -> u64 {
    let (c, b, p) = (c as i128, bound as i128, p as i128);
    let hi = (b - c).div_euclid(p);
    let lo = (-b - 1 - c).div_euclid(p);
    (hi - lo) as u64
}

fn window_mask(table: &KloostermanTable, window: &AngleWindow) -> Vec<bool> {
    // index by residue a; slot 0 never matches
    let mut mask = vec![false; table.p() as usize];
    for (i, &psi) in table.angles().iter().enumerate() {
        mask[i + 1] = window.contains(psi);
    }
    mask
}

/// `#Q_{alpha,beta}(R, S, p)`: pairs `0 < |r| <= R`, `0 < |s| <= S` with
/// `p` not dividing `rs` and `psi_{r,s}(p)` in the window.
///
/// For each outer value `r`, either the inner variable is swept directly or,
/// when the window holds fewer residues than the inner range, every window
/// residue `a` contributes the number of inner values in the class
/// `a r^-1 mod p`.
pub fn q_count(table: &KloostermanTable, r_bound: u64, s_bound: u64, window: &AngleWindow) -> u64 {
    let p = table.p();
    let mask = window_mask(table, window);
    let hits: Vec<u64> = (1..p).filter(|&a| mask[a as usize]).collect();
    let (outer, inner) = if r_bound <= s_bound {
        (r_bound, s_bound)
    } else {
        (s_bound, r_bound)
    };

    let mut total = 0;
    for r in -(outer as i64)..=outer as i64 {
        let rr = residue(r, p);
        if rr == 0 {
            continue;
        }
        if 2 * inner <= hits.len() as u64 {
            for s in -(inner as i64)..=inner as i64 {
                let a = mul_mod(rr, residue(s, p), p);
                if a != 0 && mask[a as usize] {
                    total += 1;
                }
            }
        } else {
            let r_inv = mod_inverse(r, p).expect("r is a unit modulo p");
            total += hits
                .iter()
                .map(|&a| class_count(mul_mod(a, r_inv, p), inner, p))
                .sum::<u64>();
        }
    }
    total
}

/// `pi_{r,s}(alpha, beta; T)`: primes `p <= T`, `p` not dividing `rs`, with
/// `psi_{r,s}(p)` in the window.
pub fn pi_rs(
    r: i64,
    s: i64,
    window: &AngleWindow,
    primes: &PrimeList,
    tables: &dyn TableProvider,
) -> Result<u64> {
    if r == 0 || s == 0 {
        return Err(Error::Domain("pi_rs needs nonzero r and s".into()));
    }
    let mut count = 0;
    for p in primes.iter() {
        let a = mul_mod(residue(r, p), residue(s, p), p);
        if a == 0 {
            continue;
        }
        if window.contains(tables.table(p)?.angle(a)) {
            count += 1;
        }
    }
    Ok(count)
}

fn check_bounds(r_bound: u64, s_bound: u64, t: u64) -> Result<()> {
    if r_bound == 0 || s_bound == 0 || t == 0 {
        return Err(Error::Domain("R, S and T must be positive".into()));
    }
    Ok(())
}

/// `sum_{p <= T} #Q(R, S, p)`, the numerator of `Pi`.
pub fn q_total(
    r_bound: u64,
    s_bound: u64,
    t: u64,
    window: &AngleWindow,
    tables: &dyn TableProvider,
) -> Result<u64> {
    check_bounds(r_bound, s_bound, t)?;
    let primes = primes_up_to(t);
    primes
        .primes()
        .par_iter()
        .map(|&p| Ok(q_count(&tables.table(p)?, r_bound, s_bound, window)))
        .sum()
}

/// `Pi_{alpha,beta}(R, S, T) = (1/4RS) sum_{p <= T} #Q(R, S, p)`.
pub fn pi_average(
    r_bound: u64,
    s_bound: u64,
    t: u64,
    window: &AngleWindow,
    tables: &dyn TableProvider,
) -> Result<f64> {
    let total = q_total(r_bound, s_bound, t, window, tables)?;
    Ok(total as f64 / (4 * r_bound * s_bound) as f64)
}

/// Per-pair prime counts `pi_{r,s}` for every `0 < |r| <= R`, `0 < |s| <= S`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairCounts {
    r_bound: u64,
    s_bound: u64,
    prime_count: usize,
    counts: Vec<u32>,
}

fn signed_index(v: i64, bound: u64) -> usize {
    let b = bound as i64;
    (if v < 0 { v + b } else { v + b - 1 }) as usize
}

fn signed_value(i: usize, bound: u64) -> i64 {
    let (i, b) = (i as i64, bound as i64);
    if i < b {
        i - b
    } else {
        i - b + 1
    }
}

impl PairCounts {
    pub fn r_bound(&self) -> u64 {
        self.r_bound
    }

    pub fn s_bound(&self) -> u64 {
        self.s_bound
    }

    /// `pi(T)`, the number of primes streamed.
    pub fn prime_count(&self) -> usize {
        self.prime_count
    }

    pub fn get(&self, r: i64, s: i64) -> u32 {
        assert!(
            r != 0
                && r.unsigned_abs() <= self.r_bound
                && s != 0
                && s.unsigned_abs() <= self.s_bound
        );
        let row = signed_index(r, self.r_bound);
        self.counts[row * 2 * self.s_bound as usize + signed_index(s, self.s_bound)]
    }

    /// `((r, s), pi_{r,s})` in row-major order, `r` and `s` ascending.
    pub fn iter(&self) -> impl Iterator<Item = ((i64, i64), u32)> + '_ {
        let width = 2 * self.s_bound as usize;
        self.counts.iter().enumerate().map(move |(i, &c)| {
            (
                (
                    signed_value(i / width, self.r_bound),
                    signed_value(i % width, self.s_bound),
                ),
                c,
            )
        })
    }
}

/// Accumulates `pi_{r,s}` for all pairs by streaming primes up to `T`.
pub fn pair_counts(
    r_bound: u64,
    s_bound: u64,
    t: u64,
    window: &AngleWindow,
    tables: &dyn TableProvider,
) -> Result<PairCounts> {
    check_bounds(r_bound, s_bound, t)?;
    if r_bound.saturating_mul(s_bound) > MAX_PAIR_PRODUCT {
        return Err(Error::Limit(format!(
            "R*S = {} exceeds the counter cap {MAX_PAIR_PRODUCT}",
            r_bound as u128 * s_bound as u128
        )));
    }
    let width = 2 * s_bound as usize;
    let mut counts = vec![0u32; 2 * r_bound as usize * width];
    let primes = primes_up_to(t);
    for p in primes.iter() {
        let table = tables.table(p)?;
        let mask = window_mask(&table, window);
        counts
            .par_chunks_mut(width)
            .enumerate()
            .for_each(|(row, slots)| {
                let rr = residue(signed_value(row, r_bound), p);
                if rr == 0 {
                    return;
                }
                for (col, slot) in slots.iter_mut().enumerate() {
                    let a = mul_mod(rr, residue(signed_value(col, s_bound), p), p);
                    if a != 0 && mask[a as usize] {
                        *slot += 1;
                    }
                }
            });
    }
    Ok(PairCounts {
        r_bound,
        s_bound,
        prime_count: primes.count(),
        counts,
    })
}

/// `Delta = (1/4RS) sum_{r,s} (pi_{r,s} - mu_ST pi(T))^2`.
pub fn dispersion_from_counts(counts: &PairCounts, window: &AngleWindow) -> f64 {
    let target = mu_st(window) * counts.prime_count as f64;
    let sum: f64 = counts
        .counts
        .iter()
        .map(|&c| {
            let d = c as f64 - target;
            d * d
        })
        .sum();
    sum / counts.counts.len() as f64
}

pub fn delta_dispersion(
    r_bound: u64,
    s_bound: u64,
    t: u64,
    window: &AngleWindow,
    tables: &dyn TableProvider,
) -> Result<f64> {
    let counts = pair_counts(r_bound, s_bound, t, window, tables)?;
    Ok(dispersion_from_counts(&counts, window))
}

/// `R S p^{-1/4} + (RS)^{1/2} p^{1/2}`
pub fn qcount_bound(p: u64, r_bound: u64, s_bound: u64) -> f64 {
    let (p, rs) = (p as f64, r_bound as f64 * s_bound as f64);
    rs * p.powf(-0.25) + rs.sqrt() * p.sqrt()
}

/// `T^{3/4} + (RS)^{-1/2} T^{3/2}`
pub fn average_bound(r_bound: u64, s_bound: u64, t: u64) -> f64 {
    let (t, rs) = (t as f64, r_bound as f64 * s_bound as f64);
    t.powf(0.75) + t.powf(1.5) / rs.sqrt()
}

/// `T^{7/4} + (RS)^{-1/2} T^3`
pub fn dispersion_bound(r_bound: u64, s_bound: u64, t: u64) -> f64 {
    let (t, rs) = (t as f64, r_bound as f64 * s_bound as f64);
    t.powf(1.75) + t.powi(3) / rs.sqrt()
}

/// Summary of one `(R, S, T, window)` configuration.
///
/// `qcount_bound` is evaluated at the largest prime not exceeding `T` (or at `T`
/// when there is none).
#[derive(Debug, Clone, PartialEq)]
pub struct STStats {
    pub r_bound: u64,
    pub s_bound: u64,
    pub t: u64,
    pub window: AngleWindow,
    pub pi_t: usize,
    pub mu: f64,
    pub pi: f64,
    pub delta: f64,
    pub qcount_bound: f64,
    pub average_bound: f64,
    pub dispersion_bound: f64,
}

impl STStats {
    pub fn compute(
        r_bound: u64,
        s_bound: u64,
        t: u64,
        window: &AngleWindow,
        tables: &dyn TableProvider,
    ) -> Result<Self> {
        let counts = pair_counts(r_bound, s_bound, t, window, tables)?;
        let total: u64 = counts.counts.iter().map(|&c| c as u64).sum();
        let largest = primes_up_to(t).primes().last().copied().unwrap_or(t);
        Ok(STStats {
            r_bound,
            s_bound,
            t,
            window: *window,
            pi_t: counts.prime_count,
            mu: mu_st(window),
            pi: total as f64 / (4 * r_bound * s_bound) as f64,
            delta: dispersion_from_counts(&counts, window),
            qcount_bound: qcount_bound(largest, r_bound, s_bound),
            average_bound: average_bound(r_bound, s_bound, t),
            dispersion_bound: dispersion_bound(r_bound, s_bound, t),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kloosterman::{angle, kloosterman_all, kloosterman_sum, BuildOnDemand, Method};
    use crate::oracle::{naive_discrepancy, naive_discrepancy_angles, naive_mu};

    fn win(a: f64, b: f64) -> AngleWindow {
        AngleWindow::new(a, b).unwrap()
    }

    #[test]
    fn window_validation() {
        assert!(AngleWindow::new(1.0, 1.0).is_err());
        assert!(AngleWindow::new(-0.1, 1.0).is_err());
        assert!(AngleWindow::new(0.0, PI + 1e-9).is_err());
        assert!(AngleWindow::new(f64::NAN, 1.0).is_err());
        assert!(win(0.5, 1.0).contains(0.5) && win(0.5, 1.0).contains(1.0));
    }

    #[test]
    fn mu_examples() {
        assert!((mu_st(&win(0.0, PI)) - 1.0).abs() < 1e-12);
        assert!((mu_st(&win(0.0, PI / 2.0)) - 0.5).abs() < 1e-12);
        let middle = win(PI / 3.0, 2.0 * PI / 3.0);
        let closed = 1.0 / 3.0 + 3f64.sqrt() / (2.0 * PI);
        assert!((mu_st(&middle) - closed).abs() < 1e-12);
        assert!((mu_st(&middle) - 0.608998).abs() < 1e-6);
        assert!((mu_st(&middle) - naive_mu(&middle, 2000)).abs() < 1e-10);
    }

    #[test]
    fn mu_additive_and_reflective() {
        let cuts = [0.0, 0.3, 1.1, 1.7, 2.9, PI];
        for i in 0..cuts.len() {
            for j in i + 1..cuts.len() {
                for k in j + 1..cuts.len() {
                    let (a, b, c) = (cuts[i], cuts[j], cuts[k]);
                    let lhs = mu_st(&win(a, c));
                    assert!((lhs - mu_st(&win(a, b)) - mu_st(&win(b, c))).abs() < 1e-12);
                }
                let (a, b) = (cuts[i], cuts[j]);
                assert!((mu_st(&win(a, b)) - mu_st(&win(PI - b, PI - a))).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn angle_set_examples() {
        for p in [3u64, 5, 7, 101] {
            let t = kloosterman_all(p, Method::Naive).unwrap();
            assert_eq!(angle_set_count(&t, &AngleWindow::full()), p - 1);
        }
        let t3 = kloosterman_all(3, Method::Naive).unwrap();
        // psi_{1,1}(3) ~ 1.8636, psi_{1,2}(3) = arccos(1/sqrt 3) ~ 0.9553
        assert_eq!(angle_set_count(&t3, &win(1.5, 2.0)), 1);
    }

    #[test]
    fn angle_set_matches_direct_sums() {
        for p in crate::modmath::primes_up_to(200).iter() {
            let t = kloosterman_all(p, Method::Convolution).unwrap();
            for w in [win(0.0, 1.0), win(0.7, 2.2), win(1.9, PI)] {
                let brute = (1..p as i64)
                    .filter(|&a| w.contains(angle(kloosterman_sum(1, a, p).unwrap(), p).unwrap()))
                    .count() as u64;
                assert_eq!(angle_set_count(&t, &w), brute, "p = {p}");
            }
        }
    }

    /// Angles at the midpoint quantiles `F^-1((i - 1/2)/n)`, found by bisection.
    fn quantile_angles(n: usize) -> Vec<f64> {
        (0..n)
            .map(|i| {
                let target = (i as f64 + 0.5) / n as f64;
                let (mut lo, mut hi) = (0.0, PI);
                for _ in 0..200 {
                    let mid = 0.5 * (lo + hi);
                    if sato_tate_cdf(mid) < target {
                        lo = mid;
                    } else {
                        hi = mid;
                    }
                }
                0.5 * (lo + hi)
            })
            .collect()
    }

    #[test]
    fn discrepancy_of_quantile_sample() {
        for n in [4usize, 10, 100] {
            let angles = quantile_angles(n);
            let d = star_discrepancy(&angles);
            assert!(d <= 1.0 / n as f64 + 1e-12);
            assert!(naive_discrepancy_angles(&angles, 1000) <= 1.0 / n as f64 + 1e-12);
        }
    }

    #[test]
    fn discrepancy_p5_by_hand() {
        let t = kloosterman_all(5, Method::Naive).unwrap();
        // independent sort-and-scan over the four angles
        let mut angles = t.angles().to_vec();
        angles.sort_by(f64::total_cmp);
        let mut hand: f64 = 0.0;
        for (i, &x) in angles.iter().enumerate() {
            let f = x / PI - (2.0 * x).sin() / (2.0 * PI);
            hand = hand
                .max((f - i as f64 / 4.0).abs())
                .max(((i + 1) as f64 / 4.0 - f).abs());
        }
        let d = discrepancy(&t);
        assert!((d - hand).abs() < 1e-15);
        let grid = 200_000;
        let coarse = naive_discrepancy(&t, grid);
        assert!(coarse <= d + 1e-12);
        assert!(d - coarse <= 1.0 / grid as f64);
        assert!(naive_discrepancy(&t, 1) <= d);
    }

    #[test]
    fn two_sided_windows_bounded_by_twice_star() {
        for p in [101u64, 211, 503] {
            let t = kloosterman_all(p, Method::Convolution).unwrap();
            let d = discrepancy(&t);
            let n = (p - 1) as f64;
            let grid = 300;
            let mut worst: f64 = 0.0;
            for i in 0..grid {
                for j in i + 1..=grid {
                    let w = win(i as f64 * PI / grid as f64, j as f64 * PI / grid as f64);
                    let emp = angle_set_count(&t, &w) as f64 / n;
                    worst = worst.max((emp - mu_st(&w)).abs());
                }
            }
            assert!(worst <= 2.0 * d + 1e-12, "p = {p}: {worst} vs {d}");
        }
    }

    #[test]
    fn class_count_matches_scan() {
        for p in [2u64, 3, 7, 31] {
            for c in 1..p {
                for bound in [1u64, 2, 5, 30, 64, 100] {
                    let brute = (-(bound as i64)..=bound as i64)
                        .filter(|&s| s != 0 && residue(s, p) == c)
                        .count() as u64;
                    assert_eq!(class_count(c, bound, p), brute);
                }
            }
        }
    }

    #[test]
    fn q_count_examples() {
        let t7 = kloosterman_all(7, Method::Naive).unwrap();
        assert_eq!(q_count(&t7, 3, 3, &AngleWindow::full()), 36);
        let t3 = kloosterman_all(3, Method::Naive).unwrap();
        let psi = t3.angle(1);
        // (1, 1) and (-1, -1) reduce to a = 1; (1, -1) and (-1, 1) reduce to a = 2
        assert_eq!(q_count(&t3, 1, 1, &win(psi - 0.01, psi + 0.01)), 2);
        assert_eq!(q_count(&t3, 1, 1, &AngleWindow::full()), 4);
    }

    #[test]
    fn q_count_full_window_product() {
        for p in [2u64, 3, 5, 7, 11] {
            let t = kloosterman_all(p, Method::Naive).unwrap();
            for (r, s) in [(1u64, 1u64), (3, 10), (12, 4), (25, 25)] {
                let coprime = |b: u64| (1..=b).filter(|v| v % p != 0).count() as u64 * 2;
                assert_eq!(
                    q_count(&t, r, s, &AngleWindow::full()),
                    coprime(r) * coprime(s)
                );
            }
        }
    }

    #[test]
    fn q_count_window_additive() {
        let t = kloosterman_all(97, Method::Convolution).unwrap();
        let cut = 1.234_567_890_123;
        assert!(t.angles().iter().all(|&a| a != cut));
        for (r, s) in [(3u64, 5u64), (40, 7), (60, 60)] {
            let whole = q_count(&t, r, s, &win(0.2, 2.8));
            let parts = q_count(&t, r, s, &win(0.2, cut)) + q_count(&t, r, s, &win(cut, 2.8));
            assert_eq!(whole, parts);
        }
    }

    #[test]
    fn pi_rs_examples() {
        let tables = BuildOnDemand(Method::Naive);
        let full = AngleWindow::full();
        assert_eq!(pi_rs(1, 1, &full, &primes_up_to(10), &tables).unwrap(), 4);
        let psi_2 = (1.0 / (2.0 * 2f64.sqrt())).acos();
        assert!((psi_2 - 1.2094).abs() < 1e-4);
        // excludes psi_{1,1}(3) ~ 1.8636
        assert_eq!(
            pi_rs(1, 1, &win(0.0, 1.5), &primes_up_to(3), &tables).unwrap(),
            1
        );
        assert_eq!(pi_rs(6, 1, &full, &primes_up_to(10), &tables).unwrap(), 2);
        assert!(pi_rs(0, 1, &full, &primes_up_to(10), &tables).is_err());
    }

    #[test]
    fn pi_average_examples() {
        let tables = BuildOnDemand::default();
        assert_eq!(
            pi_average(1, 1, 10, &AngleWindow::full(), &tables).unwrap(),
            4.0
        );
        assert!(pi_average(0, 1, 10, &AngleWindow::full(), &tables).is_err());
    }

    #[test]
    fn pi_average_monotone_in_window() {
        let tables = BuildOnDemand::default();
        let nested = [
            win(1.2, 1.6),
            win(1.0, 1.6),
            win(1.0, 2.0),
            win(0.5, 2.5),
            win(0.0, PI),
        ];
        let values: Vec<f64> = nested
            .iter()
            .map(|w| pi_average(4, 6, 60, w, &tables).unwrap())
            .collect();
        assert!(values.windows(2).all(|v| v[0] <= v[1]), "{values:?}");
    }

    #[test]
    fn dispersion_full_window_unit_pairs() {
        let tables = BuildOnDemand::default();
        for t in [2u64, 10, 30] {
            assert_eq!(
                delta_dispersion(1, 1, t, &AngleWindow::full(), &tables).unwrap(),
                0.0
            );
        }
    }

    #[test]
    fn pair_count_limit() {
        let tables = BuildOnDemand::default();
        let big = 1u64 << 14;
        assert!(matches!(
            pair_counts(big, big, 10, &AngleWindow::full(), &tables),
            Err(Error::Limit(_))
        ));
    }

    #[test]
    fn bound_examples() {
        assert!((qcount_bound(10_000, 100, 100) - 11_000.0).abs() < 1e-9);
        assert_eq!(average_bound(1, 1, 1), 2.0);
        assert_eq!(dispersion_bound(1, 1, 1), 2.0);
    }

    #[test]
    fn stats_consistent_with_parts() {
        let tables = BuildOnDemand::default();
        let w = win(PI / 4.0, 3.0 * PI / 4.0);
        let st = STStats::compute(5, 4, 80, &w, &tables).unwrap();
        assert_eq!(st.pi_t, 22);
        assert!((st.pi - pi_average(5, 4, 80, &w, &tables).unwrap()).abs() < 1e-12);
        assert!((st.delta - delta_dispersion(5, 4, 80, &w, &tables).unwrap()).abs() < 1e-12);
        assert!((0.0..=1.0).contains(&st.mu));
        assert_eq!(st.qcount_bound, qcount_bound(79, 5, 4));
    }
}
