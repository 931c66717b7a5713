//! Choosing `(m, k)` so that an order-`n` problem embeds into order
//! `m * 2^k`, and the padding analysis of Strassen's own rule
//! `k = floor(log2 n) - 4`, `m = floor(n / 2^k) + 1`.

use alloc::format;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_bigint::BigInt;

use crate::error::{domain, Error, Result};
use crate::exact::{ExactInt, ExactRatio};
use crate::flopmodel::{memory_units, strassen_flops};

/// A concrete embedding of an order-`n` problem into order `m * 2^k`,
/// together with its model cost.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParamChoice {
    pub n: u64,
    pub m: u64,
    pub k: u32,
    pub n_tilde: u64,
    pub d: u64,
    pub predicted_flops: ExactInt,
    pub predicted_memory: ExactInt,
}

impl ParamChoice {
    pub fn new(n: u64, m: u64, k: u32) -> Result<Self> {
        if n == 0 || m == 0 {
            return Err(domain("ParamChoice", "n and m must be positive"));
        }
        let n_tilde = m
            .checked_shl(k)
            .filter(|v| v >> k == m)
            .ok_or_else(|| domain("ParamChoice", format!("m * 2^k overflows for m={m}, k={k}")))?;
        if n_tilde < n {
            return Err(domain(
                "ParamChoice",
                format!("m * 2^k = {n_tilde} is smaller than n = {n}"),
            ));
        }
        Ok(ParamChoice {
            n,
            m,
            k,
            n_tilde,
            d: n_tilde - n,
            predicted_flops: strassen_flops(m, k)?,
            predicted_memory: memory_units(m, k)?,
        })
    }

    /// `n_tilde / n`
    pub fn padding_ratio(&self) -> ExactRatio {
        ExactRatio::new(self.n_tilde, self.n).unwrap()
    }
}

/// Parameter-selection strategy.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    /// `k = floor(log2 n) - 4`, `m = floor(n / 2^k) + 1`.
    StrassenOriginal,
    /// Flop-minimizing `(m, k)`.
    OptimalSearch,
    /// `m = 2^j`, `k = p - j` for `n = 2^p`.
    PowTwoCutoff(u32),
    Explicit {
        m: u64,
        k: u32,
    },
    /// Plain triple loop, i.e. `m = n`, `k = 0`.
    NaiveOnly,
}

impl Strategy {
    pub fn choose(&self, n: u64) -> Result<ParamChoice> {
        match *self {
            Strategy::StrassenOriginal => strassen_params(n),
            Strategy::OptimalSearch => optimal_params(n),
            Strategy::PowTwoCutoff(j) => {
                if n == 0 || !n.is_power_of_two() {
                    return Err(domain(
                        "PowTwoCutoff",
                        format!("n = {n} is not a power of two"),
                    ));
                }
                pow2_params(n.trailing_zeros(), j)
            }
            Strategy::Explicit { m, k } => ParamChoice::new(n, m, k),
            Strategy::NaiveOnly => ParamChoice::new(n, n, 0),
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Strategy::StrassenOriginal => f.write_str("strassen"),
            Strategy::OptimalSearch => f.write_str("optimal"),
            Strategy::PowTwoCutoff(j) => write!(f, "pow2cut:{j}"),
            Strategy::Explicit { m, k } => write!(f, "explicit:{m},{k}"),
            Strategy::NaiveOnly => f.write_str("naive"),
        }
    }
}

impl FromStr for Strategy {
    type Err = Error;

    /// Parses `naive`, `strassen`, `optimal`, `pow2cut:<j>` or `explicit:<m>,<k>`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || domain("Strategy", format!("unknown strategy {s:?}"));
        let s = s.trim();
        match s {
            "naive" => return Ok(Strategy::NaiveOnly),
            "strassen" => return Ok(Strategy::StrassenOriginal),
            "optimal" => return Ok(Strategy::OptimalSearch),
            _ => {}
        }
        if let Some(j) = s.strip_prefix("pow2cut:") {
            return j.parse().map(Strategy::PowTwoCutoff).map_err(|_| bad());
        }
        if let Some(rest) = s.strip_prefix("explicit:") {
            let (m, k) = rest.split_once(',').ok_or_else(bad)?;
            let m: u64 = m.trim().parse().map_err(|_| bad())?;
            let k: u32 = k.trim().parse().map_err(|_| bad())?;
            if m == 0 {
                return Err(domain("Strategy", "explicit m must be at least 1"));
            }
            return Ok(Strategy::Explicit { m, k });
        }
        Err(bad())
    }
}

/// `floor(log2 n)` from the bit length.
pub fn floor_log2(n: u64) -> u32 {
    debug_assert!(n > 0);
    63 - n.leading_zeros()
}

/// `ceil(log2 n)`; zero for `n = 1`.
pub fn ceil_log2(n: u64) -> u32 {
    debug_assert!(n > 0);
    if n == 1 {
        0
    } else {
        64 - (n - 1).leading_zeros()
    }
}

/// Strassen's rule. Always yields `m` in `17..=32` and `n < n_tilde <= 17n/16`.
pub fn strassen_params(n: u64) -> Result<ParamChoice> {
    if n < 16 {
        return Err(Error::BelowStrassenRange { n });
    }
    let k = floor_log2(n) - 4;
    let m = (n >> k) + 1;
    ParamChoice::new(n, m, k)
}

/// Flop-minimizing embedding. For a fixed `k` the smallest feasible `m` is
/// best since the cost grows with `m`, so only `k` is searched. Ties go to
/// the smaller `n_tilde`, then the smaller `k`.
pub fn optimal_params(n: u64) -> Result<ParamChoice> {
    if n == 0 {
        return Err(domain("optimal_params", "n must be at least 1"));
    }
    let mut best: Option<ParamChoice> = None;
    for k in 0..=ceil_log2(n) {
        let m = n.div_ceil(1u64 << k);
        let candidate = ParamChoice::new(n, m, k)?;
        let better = match &best {
            None => true,
            Some(b) => {
                (&candidate.predicted_flops, candidate.n_tilde, candidate.k)
                    < (&b.predicted_flops, b.n_tilde, b.k)
            }
        };
        if better {
            best = Some(candidate);
        }
    }
    Ok(best.expect("k = 0 is always feasible"))
}

/// `m = 2^j`, `k = p - j` on order `2^p`.
pub fn pow2_params(p: u32, j: u32) -> Result<ParamChoice> {
    if j > p {
        return Err(domain(
            "pow2_params",
            format!("cutoff j = {j} exceeds p = {p}"),
        ));
    }
    if p > 62 {
        return Err(domain("pow2_params", format!("p = {p} is out of range")));
    }
    ParamChoice::new(1u64 << p, 1u64 << j, p - j)
}

/// `argmin_j F_S(2^j, p - j)` over `j` in `0..=p`, smallest `j` on ties.
pub fn best_pow2_cutoff(p: u32) -> Result<u32> {
    if p < 3 {
        return Err(domain(
            "best_pow2_cutoff",
            format!("p must be at least 3 (got {p})"),
        ));
    }
    let mut best = (strassen_flops(1, p)?, 0u32);
    for j in 1..=p {
        let flops = strassen_flops(1u64 << j, p - j)?;
        if flops < best.0 {
            best = (flops, j);
        }
    }
    Ok(best.1)
}

/// The dyadic interval `alpha` with `2^alpha <= n < 2^(alpha+1)` and the
/// sub-interval `j` in `1..=16` with `(15+j) 2^(alpha-4) <= n < (16+j) 2^(alpha-4)`.
pub fn interval_of(n: u64) -> Result<(u32, u32)> {
    if n < 16 {
        return Err(Error::BelowStrassenRange { n });
    }
    let alpha = floor_log2(n);
    let j = (n >> (alpha - 4)) as u32 - 15;
    Ok((alpha, j))
}

/// Bounds `[lo, hi)` of `I^alpha` or of the sub-interval `I^alpha_j`.
pub fn interval_bounds(alpha: u32, j: Option<u32>) -> Result<(u64, u64)> {
    if !(4..=62).contains(&alpha) {
        return Err(domain(
            "interval_bounds",
            format!("alpha must be in 4..=62 (got {alpha})"),
        ));
    }
    match j {
        None => Ok((1u64 << alpha, 1u64 << (alpha + 1))),
        Some(j) if (1..=16).contains(&j) => {
            let width = 1u64 << (alpha - 4);
            Ok(((15 + j as u64) * width, (16 + j as u64) * width))
        }
        Some(j) => Err(domain(
            "interval_bounds",
            format!("j must be in 1..=16 (got {j})"),
        )),
    }
}

/// Exact statistics of Strassen's rule over `I^alpha` or `I^alpha_j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntervalStats {
    pub alpha: u32,
    pub j: Option<u32>,
    pub mean_n_tilde: ExactRatio,
    pub mean_n: ExactRatio,
    pub mean_d: ExactRatio,
    /// `mean_n_tilde / mean_n`
    pub rho: ExactRatio,
}

/// Enumerates every order in the interval and applies [`strassen_params`].
pub fn interval_stats(alpha: u32, j: Option<u32>) -> Result<IntervalStats> {
    let (lo, hi) = interval_bounds(alpha, j)?;
    let count = hi - lo;
    let (mut sum_n, mut sum_tilde, mut sum_d) = (0u128, 0u128, 0u128);
    for n in lo..hi {
        let choice = strassen_params(n)?;
        sum_n += n as u128;
        sum_tilde += choice.n_tilde as u128;
        sum_d += choice.d as u128;
    }
    let mean = |s: u128| ExactRatio::new(BigInt::from(s), count).unwrap();
    let mean_n = mean(sum_n);
    let mean_n_tilde = mean(sum_tilde);
    let rho = mean_n_tilde.checked_div(&mean_n)?;
    Ok(IntervalStats {
        alpha,
        j,
        mean_n_tilde,
        mean_n,
        mean_d: mean(sum_d),
        rho,
    })
}

/// Mean of `n_tilde / n` over the interval. This is not the quantity `rho`
/// (which divides the means) and is only reported for comparison.
pub fn interval_mean_ratio(alpha: u32, j: Option<u32>) -> Result<ExactRatio> {
    let (lo, hi) = interval_bounds(alpha, j)?;
    let mut sum = ExactRatio::zero();
    for n in lo..hi {
        sum = sum + strassen_params(n)?.padding_ratio();
    }
    sum.checked_div(&ExactRatio::from_integer(hi - lo))
}

/// `49 * 2^(alpha-5) / (2^alpha + 2^(alpha-1) - 1/2)`.
pub fn rho(alpha: u32) -> Result<ExactRatio> {
    if alpha < 4 {
        return Err(domain(
            "rho",
            format!("alpha must be at least 4 (got {alpha})"),
        ));
    }
    // numerator and denominator doubled: 49 * 2^(alpha-4) / (3 * 2^alpha - 1)
    let num = BigInt::from(49u32) << (alpha - 4);
    let den = (BigInt::from(3u32) << alpha) - 1u32;
    ExactRatio::new(num, den)
}

/// Weights `beta_j = 2^(j-4) / (2^(depth+1) - 1)` for `j` in `4..=4+depth`.
pub fn average_weights(depth: u32) -> Vec<ExactRatio> {
    let total = (BigInt::from(1u32) << (depth + 1)) - 1u32;
    (0..=depth)
        .map(|i| ExactRatio::new(BigInt::from(1u32) << i, total.clone()).unwrap())
        .collect()
}

/// `E_depth = sum_j beta_j rho(j)` over `I^4 u ... u I^(4+depth)`.
pub fn expected_ratio_partial(depth: u32) -> ExactRatio {
    average_weights(depth)
        .into_iter()
        .zip(4u32..)
        .fold(ExactRatio::zero(), |acc, (beta, j)| {
            acc + beta * rho(j).unwrap()
        })
}

/// Limit of [`expected_ratio_partial`].
pub fn average_limit() -> ExactRatio {
    ExactRatio::new(49, 48).unwrap()
}

/// Worst-case bound on `n_tilde / n` under Strassen's rule.
pub fn worst_case_bound() -> ExactRatio {
    ExactRatio::new(17, 16).unwrap()
}

/// True when `n = 2^p * l - 1` for some `p >= 0` and `l` in `16..=31`.
pub fn is_best_case_order(n: u64) -> bool {
    let Some(target) = n.checked_add(1) else {
        return false;
    };
    (0..=59u32).any(|p| target % (1u64 << p) == 0 && (16..=31).contains(&(target >> p)))
}

/// Outcome of an exhaustive padding scan under Strassen's rule.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WorstCaseReport {
    pub n_lo: u64,
    pub n_hi: u64,
    pub max_ratio: ExactRatio,
    pub argmax: Vec<u64>,
    pub min_d: u64,
    pub argmin_d: Vec<u64>,
    /// `n + 1 <= n_tilde <= 17n/16` for every scanned `n`.
    pub bounds_hold: bool,
    /// `n_tilde = 17n/16` exactly at the powers of two.
    pub upper_equality_at_powers_of_two: bool,
    /// `d = 1` exactly at the orders `2^p * l - 1`, `l` in `16..=31`.
    pub unit_padding_at_best_case_orders: bool,
    /// `m` in `17..=32` throughout.
    pub m_in_range: bool,
}

impl WorstCaseReport {
    pub fn all_pass(&self) -> bool {
        self.bounds_hold
            && self.upper_equality_at_powers_of_two
            && self.unit_padding_at_best_case_orders
            && self.m_in_range
    }
}

/// Scans `n_lo..=n_hi` and checks the padding bounds of Strassen's rule
/// with exact comparisons.
pub fn worst_case_check(n_lo: u64, n_hi: u64) -> Result<WorstCaseReport> {
    if n_lo < 16 {
        return Err(Error::BelowStrassenRange { n: n_lo });
    }
    if n_hi < n_lo {
        return Err(domain("worst_case_check", "empty range"));
    }
    let bound = worst_case_bound();
    let mut report = WorstCaseReport {
        n_lo,
        n_hi,
        max_ratio: ExactRatio::zero(),
        argmax: Vec::new(),
        min_d: u64::MAX,
        argmin_d: Vec::new(),
        bounds_hold: true,
        upper_equality_at_powers_of_two: true,
        unit_padding_at_best_case_orders: true,
        m_in_range: true,
    };
    for n in n_lo..=n_hi {
        let choice = strassen_params(n)?;
        let ratio = choice.padding_ratio();

        report.bounds_hold &= choice.n_tilde > n && ratio <= bound;
        report.upper_equality_at_powers_of_two &= (ratio == bound) == n.is_power_of_two();
        report.unit_padding_at_best_case_orders &= (choice.d == 1) == is_best_case_order(n);
        report.m_in_range &= (17..=32).contains(&choice.m);

        if ratio > report.max_ratio {
            report.max_ratio = ratio.clone();
            report.argmax.clear();
        }
        if ratio == report.max_ratio {
            report.argmax.push(n);
        }
        if choice.d < report.min_d {
            report.min_d = choice.d;
            report.argmin_d.clear();
        }
        if choice.d == report.min_d {
            report.argmin_d.push(n);
        }
    }
    Ok(report)
}
