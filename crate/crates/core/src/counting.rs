//! Window counts of modular ratios `a/x` and products `a*x`.
//!
//! For a modulus `m`, a sample set `X` of small integers and a residue
//! window `[Z+1, Z+Y]`, three counts are tracked for each residue `a`:
//!
//! * inverse: `x` coprime to `m` with `a * x^-1 mod m` in the window,
//! * multiple: any `x` with `a * x mod m` in the window,
//! * multiple (coprime): as above but restricted to `x` coprime to `m`.
//!
//! Residues `a` run over `1..=m`, with `a = m` standing for the zero class.

use crate::error::{Error, Result};
use crate::modmath::{
    coprime_count_interval, euler_phi, gcd_signed, mod_inverse, mul_mod, residue,
};

/// Largest modulus accepted by [`window_histogram`].
pub const MAX_MODULUS: u64 = 1 << 26;

/// A finite set of integers inside `[-bound, bound]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SampleSet {
    /// Every integer `x` with `|x| <= bound`, zero included.
    Full { bound: u64 },
    /// Strictly ascending elements, each with `|x| <= bound`.
    Explicit { bound: u64, elements: Vec<i64> },
}

impl SampleSet {
    pub fn full(bound: u64) -> Result<Self> {
        if bound == 0 {
            return Err(Error::Domain("sample bound X must be positive".into()));
        }
        if bound > i64::MAX as u64 / 4 {
            return Err(Error::Limit(format!("sample bound {bound} too large")));
        }
        Ok(SampleSet::Full { bound })
    }

    /// Builds an explicit set; input order is irrelevant, duplicates collapse.
    pub fn explicit(bound: u64, mut elements: Vec<i64>) -> Result<Self> {
        if let Some(&bad) = elements.iter().find(|x| x.unsigned_abs() > bound) {
            return Err(Error::Domain(format!(
                "element {bad} outside [-{bound}, {bound}]"
            )));
        }
        elements.sort_unstable();
        elements.dedup();
        Ok(SampleSet::Explicit { bound, elements })
    }

    pub fn bound(&self) -> u64 {
        match self {
            SampleSet::Full { bound } | SampleSet::Explicit { bound, .. } => *bound,
        }
    }

    pub fn is_full(&self) -> bool {
        matches!(self, SampleSet::Full { .. })
    }

    /// `#X`
    pub fn len(&self) -> u64 {
        match self {
            SampleSet::Full { bound } => 2 * bound + 1,
            SampleSet::Explicit { elements, .. } => elements.len() as u64,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Elements in ascending order.
    pub fn iter(&self) -> Box<dyn Iterator<Item = i64> + '_> {
        match self {
            SampleSet::Full { bound } => {
                let b = *bound as i64;
                Box::new(-b..=b)
            }
            SampleSet::Explicit { elements, .. } => Box::new(elements.iter().copied()),
        }
    }

    /// `#X_m`, the number of elements coprime to `m`.
    pub fn coprime_len(&self, m: u64) -> u64 {
        match self {
            SampleSet::Full { bound } => coprime_count_interval(*bound, m),
            SampleSet::Explicit { elements, .. } => {
                elements.iter().filter(|&&x| gcd_signed(x, m) == 1).count() as u64
            }
        }
    }

    /// The elements coprime to `m`.
    pub fn coprime_part(&self, m: u64) -> impl Iterator<Item = i64> + '_ {
        self.iter().filter(move |&x| gcd_signed(x, m) == 1)
    }
}

/// The residue window `{Z+1, ..., Z+Y} mod m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Window {
    z: i64,
    y: u64,
    m: u64,
}

impl Window {
    pub fn new(z: i64, y: u64, m: u64) -> Result<Self> {
        if m < 2 {
            return Err(Error::Domain(format!("modulus must be >= 2, got {m}")));
        }
        if y == 0 || y > m {
            return Err(Error::InvalidWindow { y, m });
        }
        Ok(Window { z, y, m })
    }

    pub fn z(&self) -> i64 {
        self.z
    }

    pub fn len(&self) -> u64 {
        self.y
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn modulus(&self) -> u64 {
        self.m
    }

    /// Canonical residue of the first window element `Z+1`.
    pub fn start(&self) -> u64 {
        residue(self.z, self.m).wrapping_add(1) % self.m
    }

    #[inline]
    pub fn contains(&self, r: u64) -> bool {
        let offset = (r % self.m + self.m - self.start()) % self.m;
        offset < self.y
    }

    /// The `Y` distinct residues of the window, in order `Z+1, ..., Z+Y`.
    pub fn residues(&self) -> impl Iterator<Item = u64> {
        let (start, m) = (self.start(), self.m);
        (0..self.y).map(move |k| (start + k) % m)
    }

    fn check_modulus(&self, m: u64) -> Result<()> {
        if self.m != m {
            return Err(Error::Domain(format!(
                "window modulus {} does not match m = {m}",
                self.m
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CountMode {
    Inverse,
    Multiple,
    MultipleCoprime,
}

impl CountMode {
    pub fn name(self) -> &'static str {
        match self {
            CountMode::Inverse => "inverse",
            CountMode::Multiple => "multiple",
            CountMode::MultipleCoprime => "multiple_coprime",
        }
    }
}

/// Observed count against its expectation for one residue `a`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeviationReport {
    pub a: u64,
    pub observed: u64,
    pub expected: f64,
    pub deviation: f64,
    pub squared: f64,
}

/// `M_{a,m}`: coprime `x` with `a * x^-1 mod m` inside the window.
pub fn count_inverse_window(a: i64, m: u64, set: &SampleSet, window: &Window) -> Result<u64> {
    window.check_modulus(m)?;
    let a = residue(a, m);
    let mut hits = 0;
    for x in set.iter() {
        if let Ok(inv) = mod_inverse(x, m) {
            if window.contains(mul_mod(a, inv, m)) {
                hits += 1;
            }
        }
    }
    Ok(hits)
}

/// `N_{a,m}`: any `x` with `a * x mod m` inside the window.
pub fn count_multiple_window(a: i64, m: u64, set: &SampleSet, window: &Window) -> Result<u64> {
    window.check_modulus(m)?;
    let a = residue(a, m);
    Ok(set
        .iter()
        .filter(|&x| window.contains(mul_mod(a, residue(x, m), m)))
        .count() as u64)
}

/// `N*_{a,m}`: coprime `x` with `a * x mod m` inside the window.
pub fn count_multiple_coprime_window(
    a: i64,
    m: u64,
    set: &SampleSet,
    window: &Window,
) -> Result<u64> {
    window.check_modulus(m)?;
    let a = residue(a, m);
    Ok(set
        .coprime_part(m)
        .filter(|&x| window.contains(mul_mod(a, residue(x, m), m)))
        .count() as u64)
}

pub fn count_window(
    a: i64,
    m: u64,
    set: &SampleSet,
    window: &Window,
    mode: CountMode,
) -> Result<u64> {
    match mode {
        CountMode::Inverse => count_inverse_window(a, m, set, window),
        CountMode::Multiple => count_multiple_window(a, m, set, window),
        CountMode::MultipleCoprime => count_multiple_coprime_window(a, m, set, window),
    }
}

/// `#X_m * Y / m`
pub fn expected_inverse(m: u64, set: &SampleSet, window: &Window) -> f64 {
    set.coprime_len(m) as f64 * window.len() as f64 / m as f64
}

/// `#X * Y / m`
pub fn expected_multiple(m: u64, set: &SampleSet, window: &Window) -> f64 {
    set.len() as f64 * window.len() as f64 / m as f64
}

/// Numerator of the expected count over the common denominator `m`.
fn expected_numerator(m: u64, set: &SampleSet, window: &Window, mode: CountMode) -> u128 {
    let size = match mode {
        CountMode::Inverse | CountMode::MultipleCoprime => set.coprime_len(m),
        CountMode::Multiple => set.len(),
    };
    size as u128 * window.len() as u128
}

pub fn expected_count(m: u64, set: &SampleSet, window: &Window, mode: CountMode) -> f64 {
    expected_numerator(m, set, window, mode) as f64 / m as f64
}

/// Counts for every residue `a = 1..=m` at once.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WindowHistogram {
    m: u64,
    counts: Vec<u64>,
}

impl WindowHistogram {
    fn zeroed(m: u64) -> Self {
        WindowHistogram {
            m,
            counts: vec![0; m as usize],
        }
    }

    #[inline]
    fn bump(&mut self, r: u64) {
        let slot = if r == 0 { self.m - 1 } else { r - 1 };
        self.counts[slot as usize] += 1;
    }

    pub fn modulus(&self) -> u64 {
        self.m
    }

    /// Count at residue `a` in `1..=m` (any integer is reduced first).
    pub fn get(&self, a: i64) -> u64 {
        let r = residue(a, self.m);
        let slot = if r == 0 { self.m - 1 } else { r - 1 };
        self.counts[slot as usize]
    }

    /// Counts indexed `a - 1` for `a = 1..=m`.
    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// `(a, count)` pairs for `a = 1..=m`.
    pub fn iter(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        self.counts
            .iter()
            .enumerate()
            .map(|(i, &c)| (i as u64 + 1, c))
    }
}

/// Evaluates the count of `mode` for all residues in `O(#X * Y)` time.
///
/// Instead of testing every `(a, x)` pair, each sample `x` and each window
/// residue `y` determine the residues `a` that solve the congruence, and
/// those are incremented directly.
pub fn window_histogram(
    m: u64,
    set: &SampleSet,
    window: &Window,
    mode: CountMode,
) -> Result<WindowHistogram> {
    window.check_modulus(m)?;
    if m > MAX_MODULUS {
        return Err(Error::Limit(format!(
            "modulus {m} exceeds cap {MAX_MODULUS}"
        )));
    }
    let mut hist = WindowHistogram::zeroed(m);
    let start = window.start();
    for x in set.iter() {
        let xr = residue(x, m);
        let g = gcd_signed(x, m);
        match mode {
            CountMode::Inverse => {
                if g != 1 {
                    continue;
                }
                // a = x*y, stepping y through the window
                let mut a = mul_mod(xr, start, m);
                for _ in 0..window.len() {
                    hist.bump(a);
                    a += xr;
                    if a >= m {
                        a -= m;
                    }
                }
            }
            CountMode::MultipleCoprime if g != 1 => {}
            CountMode::MultipleCoprime | CountMode::Multiple => {
                add_multiple_solutions(&mut hist, xr, g, window);
            }
        }
    }
    Ok(hist)
}

/// Increments every `a` with `a * x = y (mod m)` for some `y` in the window,
/// where `g = gcd(x, m)`. Solutions exist only for `g | y`, and then form a
/// single class modulo `m / g`, i.e. `g` residues modulo `m`.
fn add_multiple_solutions(hist: &mut WindowHistogram, xr: u64, g: u64, window: &Window) {
    let m = hist.m;
    let reduced_m = m / g;
    let reduced_inv = if reduced_m == 1 {
        0
    } else {
        mod_inverse((xr / g) as i64, reduced_m).expect("x/g is a unit modulo m/g")
    };
    // first offset k >= 0 with (start + k) divisible by g
    let start = window.start();
    let mut k = (g - start % g) % g;
    while k < window.len() {
        let y = (start + k) % m;
        let base = mul_mod(y / g, reduced_inv, reduced_m);
        for j in 0..g {
            hist.bump(base + j * reduced_m);
        }
        k += g;
    }
}

fn squared_deviation_sum(hist: &WindowHistogram, expected_num: u128) -> f64 {
    let m = hist.m as i128;
    let total: u128 = hist
        .counts
        .iter()
        .map(|&c| {
            let d = c as i128 * m - expected_num as i128;
            (d * d) as u128
        })
        .sum();
    total as f64 / (m * m) as f64
}

/// `sum_a (count_a - expected)^2` over `a = 1..=m`, accumulated exactly over
/// the denominator `m^2`.
pub fn variance_sum(m: u64, set: &SampleSet, window: &Window, mode: CountMode) -> Result<f64> {
    let hist = window_histogram(m, set, window, mode)?;
    Ok(squared_deviation_sum(
        &hist,
        expected_numerator(m, set, window, mode),
    ))
}

pub fn variance_sum_inverse(m: u64, set: &SampleSet, window: &Window) -> Result<f64> {
    variance_sum(m, set, window, CountMode::Inverse)
}

pub fn variance_sum_multiple(m: u64, set: &SampleSet, window: &Window) -> Result<f64> {
    variance_sum(m, set, window, CountMode::Multiple)
}

/// Per-residue deviations from the mode's expected count.
pub fn deviation_reports(
    m: u64,
    set: &SampleSet,
    window: &Window,
    mode: CountMode,
) -> Result<Vec<DeviationReport>> {
    let hist = window_histogram(m, set, window, mode)?;
    let expected = expected_count(m, set, window, mode);
    Ok(hist
        .iter()
        .map(|(a, observed)| {
            let deviation = observed as f64 - expected;
            DeviationReport {
                a,
                observed,
                expected,
                deviation,
                squared: deviation * deviation,
            }
        })
        .collect())
}

/// Reference value and deviation threshold for the almost-all statements
/// on the full interval `|x| <= X`.
///
/// Inverse mode: reference `2XY phi(m)/m^2`, threshold `Gamma XY phi(m)/m^2`.
/// Multiple mode: reference `2XY/m`, threshold `Gamma XY/m`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExceptionalCriterion {
    pub reference: f64,
    pub threshold: f64,
    // both scaled by `scale` are integers / integer * gamma
    ref_num: u128,
    thr_unit: u128,
    scale: u128,
    gamma: f64,
}

impl ExceptionalCriterion {
    pub fn new(m: u64, bound: u64, y: u64, gamma: f64, mode: CountMode) -> Result<Self> {
        if !(gamma > 0.0 && gamma < 1.0) {
            return Err(Error::Domain(format!(
                "Gamma must lie in (0, 1), got {gamma}"
            )));
        }
        let xy = bound as u128 * y as u128;
        let (unit, scale) = match mode {
            CountMode::Inverse => (xy * euler_phi(m) as u128, m as u128 * m as u128),
            CountMode::Multiple => (xy, m as u128),
            CountMode::MultipleCoprime => {
                return Err(Error::Domain(
                    "exceptional counts are defined for inverse and multiple modes".into(),
                ))
            }
        };
        Ok(ExceptionalCriterion {
            reference: 2.0 * unit as f64 / scale as f64,
            threshold: gamma * unit as f64 / scale as f64,
            ref_num: 2 * unit,
            thr_unit: unit,
            scale,
            gamma,
        })
    }

    /// `|count - reference| >= threshold`, compared after multiplying
    /// through by the common denominator.
    pub fn is_exceptional(&self, count: u64) -> bool {
        let lhs = (count as u128 * self.scale).abs_diff(self.ref_num);
        lhs as f64 >= self.gamma * self.thr_unit as f64
    }
}

/// Number of residues `a = 1..=m` whose count deviates from the reference
/// by at least the `Gamma` threshold. Requires a full-interval sample set.
pub fn exceptional_count(
    m: u64,
    set: &SampleSet,
    window: &Window,
    gamma: f64,
    mode: CountMode,
) -> Result<u64> {
    let SampleSet::Full { bound } = set else {
        return Err(Error::Domain(
            "exceptional counts require a full-interval sample set".into(),
        ));
    };
    let criterion = ExceptionalCriterion::new(m, *bound, window.len(), gamma, mode)?;
    let hist = window_histogram(m, set, window, mode)?;
    Ok(hist
        .counts()
        .iter()
        .filter(|&&c| criterion.is_exceptional(c))
        .count() as u64)
}

/// `Gamma^-2 Y^-1 (X^-1 + Y^-1) m^2`, the scale of the exceptional-set bound.
pub fn exceptional_scale(m: u64, bound: u64, y: u64, gamma: f64) -> f64 {
    let (m, x, y) = (m as f64, bound as f64, y as f64);
    m * m / (gamma * gamma * y) * (1.0 / x + 1.0 / y)
}
