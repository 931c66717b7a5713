//! Strassen's recursion on zero-padded operands.
//!
//! With quadrants `A11..A22`, `B11..B22` the seven products are
//!
//! ```text
//! H1 = (A11 + A22)(B11 + B22)    H2 = (A21 + A22) B11
//! H3 = A11 (B12 - B22)           H4 = A22 (B21 - B11)
//! H5 = (A11 + A12) B22           H6 = (A21 - A11)(B11 + B12)
//! H7 = (A12 - A22)(B21 + B22)
//! ```
//!
//! and `C = [[H1 + H4 - H5 + H7, H3 + H5], [H2 + H4, H1 + H3 - H2 + H6]]`,
//! evaluated left to right. Leaves of order `m` use the naive product.

use alloc::borrow::Cow;
use alloc::vec::Vec;

use super::counter::Hold;
use super::ops::{block_join, block_split, naive_unchecked, pad, unpad, zip_unchecked};
use super::{FlopCounter, Matrix, MemoryProbe};
use crate::error::{domain, Error, Result};
use crate::params::ParamChoice;

/// Knobs for [`strassen_multiply_with`].
#[derive(Debug, Clone, Copy)]
pub struct Options<'a> {
    /// Threads used for the seven top-level products. Values above 1 only
    /// take effect with the `std` feature; results are bit-identical to the
    /// sequential schedule either way.
    pub workers: usize,
    pub probe: Option<&'a MemoryProbe>,
}

impl Default for Options<'_> {
    fn default() -> Self {
        Options {
            workers: 1,
            probe: None,
        }
    }
}

/// `A B` for square `A`, `B` of order `choice.n`, padded to
/// `choice.n_tilde = m 2^k` and recursing exactly `k` levels. The counter
/// receives every scalar operation of the padded computation, which totals
/// `strassen_flops(m, k)`.
pub fn strassen_multiply(
    a: &Matrix,
    b: &Matrix,
    choice: &ParamChoice,
    counter: &mut FlopCounter,
) -> Result<Matrix> {
    strassen_multiply_with(a, b, choice, counter, &Options::default())
}

pub fn strassen_multiply_with(
    a: &Matrix,
    b: &Matrix,
    choice: &ParamChoice,
    counter: &mut FlopCounter,
    options: &Options<'_>,
) -> Result<Matrix> {
    if !a.is_square() || !b.is_square() || a.rows() != b.rows() {
        return Err(Error::DimensionMismatch {
            op: "strassen_multiply",
            left_rows: a.rows(),
            left_cols: a.cols(),
            right_rows: b.rows(),
            right_cols: b.cols(),
        });
    }
    let n = a.rows();
    if choice.n != n as u64 {
        return Err(domain(
            "strassen_multiply",
            alloc::format!(
                "parameters are for order {} but inputs have order {n}",
                choice.n
            ),
        ));
    }
    if choice.m.checked_shl(choice.k) != Some(choice.n_tilde)
        || choice.n_tilde >> choice.k != choice.m
        || choice.n_tilde < choice.n
    {
        return Err(domain(
            "strassen_multiply",
            "infeasible or inconsistent parameters",
        ));
    }
    let size = usize::try_from(choice.n_tilde)
        .map_err(|_| domain("strassen_multiply", "padded order does not fit in memory"))?;

    let padded_hold = (size > n)
        .then(|| hold(options.probe, 2 * size * size))
        .flatten();
    let pa = pad(a, size)?;
    let pb = pad(b, size)?;
    let c = recurse(&pa, &pb, choice.k, counter, options.probe, options.workers);
    drop((pa, pb, padded_hold));
    unpad(&c, n)
}

fn hold(probe: Option<&MemoryProbe>, elements: usize) -> Option<Hold<'_>> {
    probe.map(|p| p.hold(elements))
}

type Quads = (Matrix, Matrix, Matrix, Matrix);
type Operands<'m> = (Cow<'m, Matrix>, Cow<'m, Matrix>);

fn operands<'m>(
    index: usize,
    a: &'m Quads,
    b: &'m Quads,
    counter: &mut FlopCounter,
) -> Operands<'m> {
    let (a11, a12, a21, a22) = a;
    let (b11, b12, b21, b22) = b;
    let mut add = |x: &Matrix, y: &Matrix| Cow::Owned(zip_unchecked(x, y, counter, |p, q| p + q));
    match index {
        0 => (add(a11, a22), add(b11, b22)),
        1 => (add(a21, a22), Cow::Borrowed(b11)),
        2 => (Cow::Borrowed(a11), sub(b12, b22, counter)),
        3 => (Cow::Borrowed(a22), sub(b21, b11, counter)),
        4 => (add(a11, a12), Cow::Borrowed(b22)),
        5 => {
            let left = sub(a21, a11, counter);
            (
                left,
                Cow::Owned(zip_unchecked(b11, b12, counter, |p, q| p + q)),
            )
        }
        6 => {
            let left = sub(a12, a22, counter);
            (
                left,
                Cow::Owned(zip_unchecked(b21, b22, counter, |p, q| p + q)),
            )
        }
        _ => unreachable!("seven products"),
    }
}

fn sub<'m>(x: &Matrix, y: &Matrix, counter: &mut FlopCounter) -> Cow<'m, Matrix> {
    Cow::Owned(zip_unchecked(x, y, counter, |p, q| p - q))
}

fn owned_len(pair: &Operands<'_>) -> usize {
    [&pair.0, &pair.1]
        .iter()
        .filter(|c| matches!(c, Cow::Owned(_)))
        .map(|c| c.rows() * c.cols())
        .sum()
}

fn recurse(
    a: &Matrix,
    b: &Matrix,
    depth: u32,
    counter: &mut FlopCounter,
    probe: Option<&MemoryProbe>,
    workers: usize,
) -> Matrix {
    if depth == 0 {
        return naive_unchecked(a, b, counter);
    }
    let half = a.rows() / 2;
    let quarter = half * half;

    let _quadrants = hold(probe, 8 * quarter);
    let qa = block_split(a).expect("order is m 2^depth");
    let qb = block_split(b).expect("order is m 2^depth");

    let mut products: Vec<Matrix> = Vec::with_capacity(7);
    let mut _product_holds = Vec::with_capacity(7);

    #[cfg(feature = "std")]
    if workers > 1 {
        let pairs: Vec<Operands<'_>> = (0..7).map(|i| operands(i, &qa, &qb, counter)).collect();
        let _operand_hold = hold(probe, pairs.iter().map(owned_len).sum());
        let (computed, branch_counts) = parallel_products(&pairs, depth - 1, probe, workers);
        *counter += branch_counts;
        _product_holds.push(hold(probe, 7 * quarter));
        products = computed;
    }
    #[cfg(not(feature = "std"))]
    let _ = workers;

    if products.is_empty() {
        for i in 0..7 {
            let pair = operands(i, &qa, &qb, counter);
            let operand_hold = hold(probe, owned_len(&pair));
            products.push(recurse(&pair.0, &pair.1, depth - 1, counter, probe, 1));
            drop(operand_hold);
            _product_holds.push(hold(probe, quarter));
        }
    }

    let [h1, h2, h3, h4, h5, h6, h7]: [Matrix; 7] = products.try_into().expect("seven products");
    let mut add = |x: &Matrix, y: &Matrix| zip_unchecked(x, y, counter, |p, q| p + q);
    let s = add(&h1, &h4);
    let c12 = add(&h3, &h5);
    let c21 = add(&h2, &h4);
    let t = add(&h1, &h3);
    let s = zip_unchecked(&s, &h5, counter, |p, q| p - q);
    let c11 = zip_unchecked(&s, &h7, counter, |p, q| p + q);
    let t = zip_unchecked(&t, &h2, counter, |p, q| p - q);
    let c22 = zip_unchecked(&t, &h6, counter, |p, q| p + q);

    let _result_hold = hold(probe, 4 * quarter);
    block_join(&c11, &c12, &c21, &c22).expect("equal quadrants")
}

/// Runs the seven products on up to `workers` scoped threads, assigning
/// product `i` to thread `i mod threads`. Output order is the product index.
#[cfg(feature = "std")]
fn parallel_products(
    pairs: &[Operands<'_>],
    depth: u32,
    probe: Option<&MemoryProbe>,
    workers: usize,
) -> (Vec<Matrix>, FlopCounter) {
    let threads = workers.min(pairs.len());
    let mut results: Vec<(usize, Matrix, FlopCounter)> = std::thread::scope(|scope| {
        let handles: Vec<_> = (0..threads)
            .map(|t| {
                scope.spawn(move || {
                    (t..pairs.len())
                        .step_by(threads)
                        .map(|i| {
                            let mut local = FlopCounter::new();
                            let product =
                                recurse(&pairs[i].0, &pairs[i].1, depth, &mut local, probe, 1);
                            (i, product, local)
                        })
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("product worker panicked"))
            .collect()
    });
    results.sort_by_key(|(i, _, _)| *i);
    let mut total = FlopCounter::new();
    let products = results
        .into_iter()
        .map(|(_, product, local)| {
            total += local;
            product
        })
        .collect();
    (products, total)
}
