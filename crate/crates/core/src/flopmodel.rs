//! Exact flop and memory model for the naive algorithm and for Strassen's
//! recursion on order `m * 2^k`.
//!
//! A flop is one scalar addition/subtraction or one scalar multiplication.
//! Everything here is computed in exact integer or rational arithmetic.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{domain, Result};
use crate::exact::{ExactInt, ExactRatio};

/// Limit of the one-step recursion ratio as `n -> inf`.
pub fn one_step_limit() -> ExactRatio {
    ExactRatio::new(7, 8).unwrap()
}

/// Limit of `ratio_f1` as `p -> inf`.
pub fn f1_limit() -> ExactRatio {
    ExactRatio::new(3757, 3136).unwrap()
}

/// Limit of `ratio_f2` as `p -> inf`.
pub fn f2_limit() -> ExactRatio {
    ExactRatio::new(148, 147).unwrap()
}

/// Limit of `ratio_r` as `p -> inf`. Reduced form of 11776/10976.
pub fn r_limit() -> ExactRatio {
    ExactRatio::new(11776, 10976).unwrap()
}

pub(crate) fn pow(base: u32, exp: u32) -> ExactInt {
    num_traits::pow(BigInt::from(base), exp as usize)
}

fn check_m(op: &'static str, m: u64) -> Result<()> {
    if m == 0 {
        return Err(domain(op, "base order m must be at least 1"));
    }
    Ok(())
}

/// `7^k m^2 (2m + 5) - 4^k 6 m^2`: flops of Strassen's algorithm on order
/// `m * 2^k` with naive multiplication of the `m x m` leaves.
pub fn strassen_flops(m: u64, k: u32) -> Result<ExactInt> {
    check_m("strassen_flops", m)?;
    let m = BigInt::from(m);
    let m2 = &m * &m;
    Ok(pow(7, k) * &m2 * (&m * 2u32 + 5u32) - pow(4, k) * 6u32 * m2)
}

/// Same count as [`strassen_flops`], obtained by unrolling the recursion:
/// seven half-size products plus eighteen half-size additions per level.
pub fn strassen_flops_recurrence(m: u64, k: u32) -> Result<ExactInt> {
    check_m("strassen_flops_recurrence", m)?;
    let mut total = naive_flops(m)?;
    for level in 1..=k {
        let half = BigInt::from(m) << (level - 1);
        total = total * 7u32 + &half * &half * 18u32;
    }
    Ok(total)
}

/// `2n^3 - n^2`.
pub fn naive_flops(n: u64) -> Result<ExactInt> {
    if n == 0 {
        return Err(domain("naive_flops", "order n must be at least 1"));
    }
    let n = BigInt::from(n);
    let n2 = &n * &n;
    Ok(&n2 * &n * 2u32 - n2)
}

/// Number of multiplications performed by Strassen's algorithm: `7^k m^3`.
pub fn strassen_muls(m: u64, k: u32) -> Result<ExactInt> {
    check_m("strassen_muls", m)?;
    Ok(pow(7, k) * BigInt::from(m).pow(3))
}

/// Smallest `p` for which full recursion down to `1 x 1` beats the naive
/// algorithm on order `2^p`.
pub fn crossover_power() -> u32 {
    (0u32..)
        .find(|&p| strassen_flops(1, p).unwrap() < naive_flops(1u64 << p).unwrap())
        .expect("crossover exists")
}

/// `(17/3)(7^p - 4^p)` units of memory for full recursion on order `2^p`.
pub fn memory_units_closed(p: u32) -> ExactInt {
    (pow(7, p) - pow(4, p)) * 17u32 / 3u32
}

/// `M(n) = 7 M(n/2) + (17/4) n^2` with `M(1) = 0`, evaluated at `n = 2^p`.
pub fn memory_units_recurrence(p: u32) -> ExactInt {
    let mut units = ExactInt::zero();
    for level in 1..=p {
        let n = BigInt::one() << level;
        // (17/4) n^2 = 17 (n/2)^2
        let half = &n >> 1u32;
        units = units * 7u32 + &half * &half * 17u32;
    }
    units
}

/// Memory model for base order `m` and depth `k`: `(17/3) m^2 (7^k - 4^k)`.
/// Reduces to [`memory_units_closed`] when `m = 1`; the `m x m` leaves are
/// multiplied naively without workspace.
pub fn memory_units(m: u64, k: u32) -> Result<ExactInt> {
    check_m("memory_units", m)?;
    let m = BigInt::from(m);
    Ok((pow(7, k) - pow(4, k)) * &m * &m * 17u32 / 3u32)
}

/// Flop ratio of one recursion level (naive products below) against the
/// naive algorithm: `(7n^3 + 11n^2) / (8n^3 - 4n^2)`.
pub fn one_step_ratio(n: u64) -> Result<ExactRatio> {
    if n < 2 || !n.is_multiple_of(2) {
        return Err(domain("one_step_ratio", "n must be even and at least 2"));
    }
    let n = BigInt::from(n);
    let n2 = &n * &n;
    let n3 = &n2 * &n;
    ExactRatio::new(&n3 * 7u32 + &n2 * 11u32, n3 * 8u32 - n2 * 4u32)
}

fn require_p(op: &'static str, p: u32, min: u32) -> Result<()> {
    if p < min {
        return Err(domain(
            op,
            alloc::format!("p must be at least {min} (got {p})"),
        ));
    }
    Ok(())
}

/// Strassen's own parameters at `n = 2^p`: `F_S(17, p - 4)`.
pub fn f1(p: u32) -> Result<ExactInt> {
    require_p("f1", p, 4)?;
    strassen_flops(17, p - 4)
}

/// No padding at `n = 2^p`: `F_S(16, p - 4)`.
pub fn f2(p: u32) -> Result<ExactInt> {
    require_p("f2", p, 4)?;
    strassen_flops(16, p - 4)
}

/// Optimal power-of-two cutoff at `n = 2^p`: `F_S(8, p - 3)`.
pub fn f3(p: u32) -> Result<ExactInt> {
    require_p("f3", p, 3)?;
    strassen_flops(8, p - 3)
}

pub fn ratio_f1(p: u32) -> Result<ExactRatio> {
    require_p("ratio_f1", p, 4)?;
    ExactRatio::new(f1(p)?, f3(p)?)
}

pub fn ratio_f2(p: u32) -> Result<ExactRatio> {
    require_p("ratio_f2", p, 4)?;
    ExactRatio::new(f2(p)?, f3(p)?)
}

/// Best case `n = 2^p - 1`: Strassen's parameters `F_S(32, p - 5)` against
/// padding by one and cutting off at 8, `F_S(8, p - 3)`.
pub fn ratio_r(p: u32) -> Result<ExactRatio> {
    require_p("ratio_r", p, 5)?;
    ExactRatio::new(strassen_flops(32, p - 5)?, strassen_flops(8, p - 3)?)
}
