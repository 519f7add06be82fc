//! Exact scalars, dense matrices, and the deterministic elimination kernel.

pub mod echelon;
pub mod matrix;
pub mod quotient;
pub mod scalar;
pub mod sparse;

pub use echelon::{kernel_sparse, rank_of, rref_of, solve_sparse, Echelon, Inconsistent, Rref};
pub use matrix::Matrix;
pub use quotient::{descend, induced_on_quotient, make_quotient, QuotientSpace};
pub use scalar::{is_prime, Fp, Scalar};
pub use sparse::SparseVec;

fn row_rref(m: &Matrix) -> Rref {
    rref_of(m.cols(), (0..m.rows()).map(|i| m.sparse_row(i)))
}

/// Reduced row echelon form with first-nonzero-column pivots.
pub fn rref(m: &Matrix) -> (Matrix, Vec<usize>, usize) {
    let r = row_rref(m);
    let mut out = Matrix::zeros(m.rows(), m.cols());
    for (i, row) in r.rows.iter().enumerate() {
        for (j, x) in row {
            out[(i, *j)] = x.clone();
        }
    }
    let rank = r.rank();
    (out, r.pivots, rank)
}

pub fn rank(m: &Matrix) -> usize {
    rank_of(m.cols(), (0..m.rows()).map(|i| m.sparse_row(i)), usize::MAX)
}

/// Particular solution of `a·x = b` with zeros in the free variables, or the rank certificate.
pub fn solve(a: &Matrix, b: &Matrix) -> Result<Matrix, Inconsistent> {
    assert_eq!(a.rows(), b.rows(), "solve: row mismatch");
    let n = a.cols();
    let k = b.cols();
    let rows = (0..a.rows()).map(|i| {
        let mut row = a.sparse_row(i);
        row.extend(b.sparse_row(i).into_iter().map(|(j, x)| (n + j, x)));
        row
    });
    let r = rref_of(n + k, rows);
    let coefficient_rank = r.pivots.iter().filter(|&&p| p < n).count();
    if coefficient_rank < r.rank() {
        return Err(Inconsistent {
            unknowns: n,
            equations: a.rows(),
            coefficient_rank,
            augmented_rank: r.rank(),
        });
    }
    let mut x = Matrix::zeros(n, k);
    for (row, &p) in r.rows.iter().zip(&r.pivots) {
        for (j, v) in row {
            if *j >= n {
                x[(p, j - n)] = v.clone();
            }
        }
    }
    Ok(x)
}

/// Rows form the standard free-variable basis of `ker a`.
pub fn kernel_basis(a: &Matrix) -> Matrix {
    let r = row_rref(a);
    let rows = r.kernel_basis().iter().map(|v| sparse::to_dense(v, a.cols())).collect();
    Matrix::from_rows(rows, a.cols())
}

pub fn inverse(a: &Matrix) -> Option<Matrix> {
    if !a.is_square() {
        return None;
    }
    solve(a, &Matrix::identity(a.rows())).ok().filter(|x| a.mul(x).is_identity())
}

pub fn is_invertible(a: &Matrix) -> bool {
    a.is_square() && rank(a) == a.rows()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> Matrix {
        Matrix::from_i64(rows)
    }

    #[test]
    fn rref_examples() {
        let (r, p, k) = rref(&m(&[&[0]]));
        assert_eq!((r, p, k), (m(&[&[0]]), vec![], 0));
        let (r, p, k) = rref(&Matrix::identity(3));
        assert_eq!((r, p, k), (Matrix::identity(3), vec![0, 1, 2], 3));
        let (r, p, k) = rref(&m(&[&[1, 2], &[2, 4]]));
        assert_eq!((r, p, k), (m(&[&[1, 2], &[0, 0]]), vec![0], 1));
    }

    #[test]
    fn rref_back_substitutes() {
        let (r, p, _) = rref(&m(&[&[0, 0, 1, 1], &[1, 2, 0, 3], &[1, 2, 1, 0]]));
        assert_eq!(p, vec![0, 2, 3]);
        assert_eq!(r, m(&[&[1, 2, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 1]]));
    }

    #[test]
    fn solve_examples() {
        let b = Matrix::column_vector(vec![Scalar::from_i64(3), Scalar::from_i64(5)]);
        assert_eq!(solve(&Matrix::identity(2), &b).unwrap(), b);
        let a = m(&[&[1, 2], &[2, 4]]);
        assert_eq!(solve(&a, &m(&[&[1], &[2]])).unwrap(), m(&[&[1], &[0]]));
        let e = solve(&a, &m(&[&[1], &[0]])).unwrap_err();
        assert_eq!((e.coefficient_rank, e.augmented_rank), (1, 2));
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(kernel_basis(&Matrix::identity(2)).rows(), 0);
        assert_eq!(kernel_basis(&Matrix::zeros(2, 2)).rows(), 2);
        assert_eq!(kernel_basis(&m(&[&[1, 2], &[2, 4]])), m(&[&[-2, 1]]));
    }

    #[test]
    fn quotient_examples() {
        let q = make_quotient(2, &Matrix::zeros(0, 2));
        assert_eq!(q.quotient_dim(), 2);
        assert!(q.projection().is_identity());
        assert_eq!(make_quotient(2, &Matrix::identity(2)).quotient_dim(), 0);
        let q = make_quotient(3, &m(&[&[1, -1, 0]]));
        assert_eq!(q.quotient_dim(), 2);
        assert_eq!(q.basis_columns(), &[1, 2]);
    }

    #[test]
    fn induced_examples() {
        let src = make_quotient(2, &m(&[&[1, -1]]));
        let dst = QuotientSpace::trivial(1);
        let f = induced_on_quotient(&m(&[&[1, 1]]), &src, &dst).unwrap();
        assert_eq!(f, m(&[&[1]]));
        assert!(induced_on_quotient(&m(&[&[1, 0]]), &src, &dst).is_err());
        let id = induced_on_quotient(&Matrix::identity(2), &src, &src).unwrap();
        assert!(id.is_identity());
        let z = induced_on_quotient(&Matrix::zeros(1, 2), &src, &dst).unwrap();
        assert!(z.is_zero());
    }

    #[test]
    fn inverse_roundtrip() {
        let a = m(&[&[2, 1], &[1, 1]]);
        let inv = inverse(&a).unwrap();
        assert!(a.mul(&inv).is_identity());
        assert!(inverse(&m(&[&[1, 2], &[2, 4]])).is_none());
    }
}
