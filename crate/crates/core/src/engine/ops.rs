//! Elementwise sums, the naive product, zero padding and quadrant
//! split/join.

use alloc::vec::Vec;

use super::{FlopCounter, Matrix};
use crate::error::{domain, Error, Result};

fn mismatch(op: &'static str, a: &Matrix, b: &Matrix) -> Error {
    Error::DimensionMismatch {
        op,
        left_rows: a.rows(),
        left_cols: a.cols(),
        right_rows: b.rows(),
        right_cols: b.cols(),
    }
}

/// `A B` by the triple loop. Each entry accumulates its products in
/// ascending inner index starting from the first product, so an
/// `n x p` by `p x q` product costs `n q p` multiplications and
/// `n q (p - 1)` additions.
pub fn naive_multiply(a: &Matrix, b: &Matrix, counter: &mut FlopCounter) -> Result<Matrix> {
    if a.cols() != b.rows() {
        return Err(mismatch("naive_multiply", a, b));
    }
    Ok(naive_unchecked(a, b, counter))
}

pub(crate) fn naive_unchecked(a: &Matrix, b: &Matrix, counter: &mut FlopCounter) -> Matrix {
    let (n, p, q) = (a.rows(), a.cols(), b.cols());
    let mut c = Matrix::zeros(n, q);
    for i in 0..n {
        let a_row = a.row(i);
        let c_row = c.row_mut(i);
        let a0 = a_row[0];
        for (c, &b) in c_row.iter_mut().zip(b.row(0)) {
            *c = a0 * b;
        }
        for (t, &a_it) in a_row.iter().enumerate().skip(1) {
            for (c, &b) in c_row.iter_mut().zip(b.row(t)) {
                *c += a_it * b;
            }
        }
    }
    counter.muls += (n * q * p) as u64;
    counter.adds += (n * q * (p - 1)) as u64;
    c
}

pub fn mat_add(a: &Matrix, b: &Matrix, counter: &mut FlopCounter) -> Result<Matrix> {
    a.check_same_shape("mat_add", b)?;
    Ok(zip_unchecked(a, b, counter, |x, y| x + y))
}

pub fn mat_sub(a: &Matrix, b: &Matrix, counter: &mut FlopCounter) -> Result<Matrix> {
    a.check_same_shape("mat_sub", b)?;
    Ok(zip_unchecked(a, b, counter, |x, y| x - y))
}

pub(crate) fn zip_unchecked(
    a: &Matrix,
    b: &Matrix,
    counter: &mut FlopCounter,
    f: impl Fn(f64, f64) -> f64,
) -> Matrix {
    let data: Vec<f64> = a
        .as_slice()
        .iter()
        .zip(b.as_slice())
        .map(|(&x, &y)| f(x, y))
        .collect();
    counter.adds += data.len() as u64;
    Matrix::from_vec(a.rows(), a.cols(), data).expect("same shape")
}

/// Embeds `A` in the top-left corner of a `size x size` zero matrix.
pub fn pad(a: &Matrix, size: usize) -> Result<Matrix> {
    if size < a.rows().max(a.cols()) {
        return Err(domain(
            "pad",
            alloc::format!(
                "target order {size} is smaller than {}x{}",
                a.rows(),
                a.cols()
            ),
        ));
    }
    if size == a.rows() && size == a.cols() {
        return Ok(a.clone());
    }
    let mut out = Matrix::zeros(size, size);
    for i in 0..a.rows() {
        out.row_mut(i)[..a.cols()].copy_from_slice(a.row(i));
    }
    Ok(out)
}

/// Leading `size x size` block.
pub fn unpad(c: &Matrix, size: usize) -> Result<Matrix> {
    if size == 0 || size > c.rows().min(c.cols()) {
        return Err(domain(
            "unpad",
            alloc::format!(
                "cannot take a {size}x{size} block of a {}x{}",
                c.rows(),
                c.cols()
            ),
        ));
    }
    if size == c.rows() && size == c.cols() {
        return Ok(c.clone());
    }
    let mut data = Vec::with_capacity(size * size);
    for i in 0..size {
        data.extend_from_slice(&c.row(i)[..size]);
    }
    Matrix::from_vec(size, size, data)
}

/// Quadrants `(A11, A12, A21, A22)` of a square matrix of even order.
pub fn block_split(a: &Matrix) -> Result<(Matrix, Matrix, Matrix, Matrix)> {
    if !a.is_square() || !a.rows().is_multiple_of(2) {
        return Err(domain(
            "block_split",
            alloc::format!(
                "needs a square matrix of even order, got {}x{}",
                a.rows(),
                a.cols()
            ),
        ));
    }
    let h = a.rows() / 2;
    let quadrant = |r0: usize, c0: usize| {
        let mut data = Vec::with_capacity(h * h);
        for i in r0..r0 + h {
            data.extend_from_slice(&a.row(i)[c0..c0 + h]);
        }
        Matrix::from_vec(h, h, data).expect("quadrant shape")
    };
    Ok((
        quadrant(0, 0),
        quadrant(0, h),
        quadrant(h, 0),
        quadrant(h, h),
    ))
}

/// Inverse of [`block_split`].
pub fn block_join(c11: &Matrix, c12: &Matrix, c21: &Matrix, c22: &Matrix) -> Result<Matrix> {
    if !c11.is_square() {
        return Err(domain("block_join", "blocks must be square"));
    }
    for other in [c12, c21, c22] {
        c11.check_same_shape("block_join", other)?;
    }
    let h = c11.rows();
    let mut data = Vec::with_capacity(4 * h * h);
    for (left, right) in [(c11, c12), (c21, c22)] {
        for i in 0..h {
            data.extend_from_slice(left.row(i));
            data.extend_from_slice(right.row(i));
        }
    }
    Matrix::from_vec(2 * h, 2 * h, data)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::random_matrix;
    use alloc::vec;

    #[test]
    fn naive_identity_is_bit_exact() {
        let b = random_matrix(7, 7, 3);
        let mut counter = FlopCounter::new();
        let c = naive_multiply(&Matrix::identity(7), &b, &mut counter).unwrap();
        assert!(c.bit_eq(&b));
    }

    #[test]
    fn naive_counts() {
        let mut counter = FlopCounter::new();
        let a = Matrix::from_vec(1, 1, vec![3.0]).unwrap();
        let b = Matrix::from_vec(1, 1, vec![-2.5]).unwrap();
        let c = naive_multiply(&a, &b, &mut counter).unwrap();
        assert_eq!(c[(0, 0)], -7.5);
        assert_eq!(counter, FlopCounter { adds: 0, muls: 1 });

        for n in 1..=32u64 {
            let mut counter = FlopCounter::new();
            let a = random_matrix(n as usize, n as usize, n);
            naive_multiply(&a, &a, &mut counter).unwrap();
            assert_eq!(counter.total(), 2 * n * n * n - n * n);
        }
    }

    #[test]
    fn naive_rectangular() {
        let a = Matrix::from_vec(2, 3, vec![1.0, 2.0, 3.0, 4.0, 5.0, 6.0]).unwrap();
        let b = Matrix::from_vec(3, 1, vec![1.0, 0.0, -1.0]).unwrap();
        let mut counter = FlopCounter::new();
        let c = naive_multiply(&a, &b, &mut counter).unwrap();
        assert_eq!(c.as_slice(), &[-2.0, -2.0]);
        assert_eq!(counter, FlopCounter { adds: 4, muls: 6 });
        assert!(naive_multiply(&a, &a, &mut counter).is_err());
    }

    #[test]
    fn add_sub() {
        let a = random_matrix(3, 4, 1);
        let z = Matrix::zeros(3, 4);
        let mut counter = FlopCounter::new();
        assert!(mat_add(&a, &z, &mut counter).unwrap().bit_eq(&a));
        assert_eq!(counter.adds, 12);
        assert!(mat_sub(&a, &a, &mut counter).unwrap().bit_eq(&z));
        assert_eq!(counter, FlopCounter { adds: 24, muls: 0 });
        assert!(mat_add(&a, &Matrix::zeros(4, 3), &mut counter).is_err());
        assert!(mat_sub(&a, &Matrix::zeros(3, 3), &mut counter).is_err());
    }

    #[test]
    fn padding() {
        let a = Matrix::from_vec(1, 1, vec![5.0]).unwrap();
        assert_eq!(pad(&a, 2).unwrap().as_slice(), &[5.0, 0.0, 0.0, 0.0]);
        let b = random_matrix(5, 5, 9);
        assert!(pad(&b, 5).unwrap().bit_eq(&b));
        assert!(unpad(&pad(&b, 9).unwrap(), 5).unwrap().bit_eq(&b));
        assert!(pad(&b, 4).is_err());
        assert!(unpad(&b, 6).is_err());
        assert!(unpad(&b, 0).is_err());
    }

    #[test]
    fn split_and_join() {
        let a = Matrix::from_vec(2, 2, vec![1.0, 2.0, 3.0, 4.0]).unwrap();
        let (a11, a12, a21, a22) = block_split(&a).unwrap();
        assert_eq!(
            [a11[(0, 0)], a12[(0, 0)], a21[(0, 0)], a22[(0, 0)]],
            [1.0, 2.0, 3.0, 4.0]
        );
        for n in [2usize, 4, 6, 10] {
            let m = random_matrix(n, n, n as u64);
            let (a, b, c, d) = block_split(&m).unwrap();
            assert!(block_join(&a, &b, &c, &d).unwrap().bit_eq(&m));
        }
        let z = Matrix::zeros(3, 3);
        assert!(block_join(&z, &z, &z, &z)
            .unwrap()
            .bit_eq(&Matrix::zeros(6, 6)));
        assert!(block_split(&random_matrix(3, 3, 0)).is_err());
        assert!(block_split(&random_matrix(2, 4, 0)).is_err());
        assert!(block_join(&z, &z, &z, &Matrix::zeros(2, 2)).is_err());
    }
}
