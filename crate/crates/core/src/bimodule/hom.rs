use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Bimodule, BimoduleMap};
use crate::error::{Error, Result};
use crate::linalg::sparse::SparseVec;
use crate::linalg::{kernel_sparse, sparse, Matrix, Scalar};

fn check_pair(m: &Bimodule, n: &Bimodule) -> Result<()> {
    if m.left_alg() != n.left_alg() || m.right_alg() != n.right_alg() {
        return Err(Error::AlgebraMismatch(format!(
            "hom({}, {}) between different algebra pairs",
            m.name(),
            n.name()
        )));
    }
    Ok(())
}

/// Row-major flattenings (dst × src) of a basis of bimodule maps m → n.
pub fn hom_space(m: &Bimodule, n: &Bimodule) -> Result<Matrix> {
    let (p, q) = (n.dim(), m.dim());
    let basis = hom_kernel(m, n)?;
    let rows = basis.iter().map(|v| sparse::to_dense(v, p * q)).collect();
    Ok(Matrix::from_rows(rows, p * q))
}

pub fn hom_basis(m: &Bimodule, n: &Bimodule) -> Result<Vec<Matrix>> {
    let (p, q) = (n.dim(), m.dim());
    Ok(hom_kernel(m, n)?.iter().map(|v| Matrix::from_vec(p, q, sparse::to_dense(v, p * q))).collect())
}

fn hom_kernel(m: &Bimodule, n: &Bimodule) -> Result<Vec<SparseVec>> {
    check_pair(m, n)?;
    let (p, q) = (n.dim(), m.dim());
    let mut pairs: Vec<(Matrix, Matrix)> = m.left_generator_matrices().into_iter().zip(n.left_generator_matrices()).collect();
    pairs.extend(m.right_generator_matrices().into_iter().zip(n.right_generator_matrices()));
    let mut eqs = Vec::new();
    for (am, an) in &pairs {
        eqs.extend(commutation_rows(p, q, am, an));
    }
    Ok(kernel_sparse(p * q, eqs))
}

/// Rows of the linear system X·am − an·X = 0 for an unknown p×q matrix X (row-major).
pub(crate) fn commutation_rows(p: usize, q: usize, am: &Matrix, an: &Matrix) -> Vec<SparseVec> {
    let am_cols = am.sparse_columns();
    let an_rows: Vec<SparseVec> = (0..p).map(|i| an.sparse_row(i)).collect();
    let mut eqs = Vec::new();
    for i in 0..p {
        for j in 0..q {
            let mut row: Vec<(usize, Scalar)> = am_cols[j].iter().map(|(k, x)| (i * q + k, x.clone())).collect();
            row.extend(an_rows[i].iter().map(|(k, x)| (k * q + j, -x)));
            let row = sparse::normalize(row);
            if !row.is_empty() {
                eqs.push(row);
            }
        }
    }
    eqs
}

/// An invertible intertwiner m → n, or `NoneFound` (which proves nothing).
pub fn find_isomorphism(m: &Bimodule, n: &Bimodule) -> Result<BimoduleMap> {
    check_pair(m, n)?;
    if m.dim() != n.dim() {
        return Err(Error::NoneFound(format!("dimensions differ: {} vs {}", m.dim(), n.dim())));
    }
    if m.dim() == 0 {
        return BimoduleMap::new(m.clone(), n.clone(), Matrix::zeros(0, 0));
    }
    let basis = hom_basis(m, n)?;
    let found = |mat: &Matrix| crate::linalg::is_invertible(mat);
    let combine = |terms: &[(usize, i64)]| {
        let mut out = Matrix::zeros(n.dim(), m.dim());
        for (i, c) in terms {
            out.add_scaled(&basis[*i], &Scalar::from_i64(*c));
        }
        out
    };
    let mut candidates: Vec<Vec<(usize, i64)>> = (0..basis.len()).map(|i| vec![(i, 1)]).collect();
    let coeffs = [1i64, -1, 2];
    let k = basis.len();
    for i in 0..k {
        for j in i + 1..k {
            for &a in &coeffs {
                for &b in &coeffs {
                    candidates.push(vec![(i, a), (j, b)]);
                }
            }
        }
    }
    for i in 0..k {
        for j in i + 1..k {
            for l in j + 1..k {
                for &a in &coeffs {
                    for &b in &coeffs {
                        for &c in &coeffs {
                            candidates.push(vec![(i, a), (j, b), (l, c)]);
                        }
                    }
                }
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    for _ in 0..64 {
        candidates.push((0..k).map(|i| (i, rng.gen_range(-5i64..=5))).collect());
    }
    for terms in &candidates {
        let mat = combine(terms);
        if found(&mat) {
            return BimoduleMap::new(m.clone(), n.clone(), mat);
        }
    }
    Err(Error::NoneFound(format!(
        "no invertible map among {} candidates in a {k}-dim hom space",
        candidates.len()
    )))
}
