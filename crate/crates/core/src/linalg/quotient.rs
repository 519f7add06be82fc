use super::echelon::{Echelon, Rref};
use super::matrix::Matrix;
use super::scalar::Scalar;
use super::sparse::{self, SparseVec};
use crate::error::{Error, Result};

const NONE: u32 = u32::MAX;

/// Ambient space modulo a relation subspace, with the quotient basis given by
/// the non-pivot columns of the relations' RREF.
///
/// Relations are held as sparse RREF rows; `relation_basis`, `projection` and
/// `section` materialize the dense forms on request.
#[derive(Clone, Debug)]
pub struct QuotientSpace {
    ambient_dim: usize,
    rref: Rref,
    row_of: Vec<u32>,
    basis: Vec<usize>,
    coord_of: Vec<u32>,
}

impl QuotientSpace {
    pub fn from_rref(rref: Rref) -> QuotientSpace {
        let n = rref.ncols;
        let mut row_of = vec![NONE; n];
        for (r, &p) in rref.pivots.iter().enumerate() {
            row_of[p] = r as u32;
        }
        let basis = rref.free_columns();
        let mut coord_of = vec![NONE; n];
        for (k, &f) in basis.iter().enumerate() {
            coord_of[f] = k as u32;
        }
        QuotientSpace {
            ambient_dim: n,
            rref,
            row_of,
            basis,
            coord_of,
        }
    }

    pub fn from_relations(ambient_dim: usize, relations: impl IntoIterator<Item = SparseVec>) -> QuotientSpace {
        let mut e = Echelon::new(ambient_dim);
        for r in relations {
            if e.is_full() {
                break;
            }
            e.insert(&r);
        }
        QuotientSpace::from_rref(e.into_rref())
    }

    /// No relations: the quotient is the ambient space itself.
    pub fn trivial(n: usize) -> QuotientSpace {
        QuotientSpace::from_relations(n, std::iter::empty())
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn quotient_dim(&self) -> usize {
        self.basis.len()
    }

    pub fn rank(&self) -> usize {
        self.rref.rank()
    }

    /// Ambient indices of the standard vectors forming the quotient basis.
    pub fn basis_columns(&self) -> &[usize] {
        &self.basis
    }

    pub fn relation_rows(&self) -> &[SparseVec] {
        &self.rref.rows
    }

    pub fn relation_basis(&self) -> Matrix {
        let rows = self.rref.rows.iter().map(|r| sparse::to_dense(r, self.ambient_dim)).collect();
        Matrix::from_rows(rows, self.ambient_dim)
    }

    /// Quotient coordinates of an ambient vector.
    pub fn project(&self, v: &[(usize, Scalar)]) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); self.quotient_dim()];
        self.project_into(v, &mut out);
        out
    }

    fn project_into(&self, v: &[(usize, Scalar)], out: &mut [Scalar]) {
        for (j, x) in v {
            if x.is_zero() {
                continue;
            }
            let k = self.coord_of[*j];
            if k != NONE {
                out[k as usize] += x;
                continue;
            }
            let row = &self.rref.rows[self.row_of[*j] as usize];
            for (f, y) in &row[1..] {
                let kk = self.coord_of[*f] as usize;
                out[kk] = out[kk].sub_mul(x, y);
            }
        }
    }

    pub fn project_dense(&self, v: &[Scalar]) -> Vec<Scalar> {
        self.project(&sparse::from_dense(v))
    }

    /// Quotient coordinates of the class of the ambient basis vector `j`.
    pub fn project_basis(&self, j: usize) -> SparseVec {
        let k = self.coord_of[j];
        if k != NONE {
            return vec![(k as usize, Scalar::one())];
        }
        let row = &self.rref.rows[self.row_of[j] as usize];
        let mut out: SparseVec = row[1..].iter().map(|(f, y)| (self.coord_of[*f] as usize, -y)).collect();
        out.sort_by_key(|(i, _)| *i);
        out
    }

    /// Section: quotient coordinates to the ambient representative on basis columns.
    pub fn lift(&self, coords: &[Scalar]) -> SparseVec {
        coords
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(k, x)| (self.basis[k], x.clone()))
            .collect()
    }

    pub fn is_relation(&self, v: &[(usize, Scalar)]) -> bool {
        self.project(v).iter().all(|x| x.is_zero())
    }

    pub fn projection(&self) -> Matrix {
        let mut m = Matrix::zeros(self.quotient_dim(), self.ambient_dim);
        for j in 0..self.ambient_dim {
            for (k, x) in self.project_basis(j) {
                m[(k, j)] = x;
            }
        }
        m
    }

    pub fn section(&self) -> Matrix {
        let mut m = Matrix::zeros(self.ambient_dim, self.quotient_dim());
        for (k, &j) in self.basis.iter().enumerate() {
            m[(j, k)] = Scalar::one();
        }
        m
    }
}

pub fn make_quotient(ambient_dim: usize, relations: &Matrix) -> QuotientSpace {
    assert_eq!(relations.cols(), ambient_dim, "relations must live in the ambient space");
    QuotientSpace::from_relations(ambient_dim, (0..relations.rows()).map(|i| relations.sparse_row(i)))
}

/// Descends the linear map with the given ambient basis images to the quotients,
/// checking that every relation of `src` lands in the relations of `dst`.
pub fn descend(src: &QuotientSpace, dst: &QuotientSpace, mut image: impl FnMut(usize) -> SparseVec, what: &str) -> Result<Matrix> {
    let q = dst.quotient_dim();
    let mut cache: Vec<Option<Vec<Scalar>>> = vec![None; src.ambient_dim];
    let mut proj = |j: usize, cache: &mut Vec<Option<Vec<Scalar>>>| {
        if cache[j].is_none() {
            cache[j] = Some(dst.project(&image(j)));
        }
    };
    for (r, row) in src.rref.rows.iter().enumerate() {
        let mut acc = vec![Scalar::zero(); q];
        for (j, x) in row {
            proj(*j, &mut cache);
            for (a, y) in acc.iter_mut().zip(cache[*j].as_ref().unwrap()) {
                if !y.is_zero() {
                    *a += x * y;
                }
            }
        }
        if acc.iter().any(|x| !x.is_zero()) {
            return Err(Error::NotWellDefined(format!("{what}: relation row {r} leaves the target relation subspace")));
        }
    }
    let mut out = Matrix::zeros(q, src.quotient_dim());
    for (k, &j) in src.basis.iter().enumerate() {
        proj(j, &mut cache);
        for (i, y) in cache[j].as_ref().unwrap().iter().enumerate() {
            out[(i, k)] = y.clone();
        }
    }
    Ok(out)
}

/// `dst.projection ∘ f ∘ src.section`, failing when `f` does not preserve relations.
pub fn induced_on_quotient(f: &Matrix, src: &QuotientSpace, dst: &QuotientSpace) -> Result<Matrix> {
    assert_eq!((f.rows(), f.cols()), (dst.ambient_dim(), src.ambient_dim()), "map shape");
    let cols = f.sparse_columns();
    descend(src, dst, |j| cols[j].clone(), "induced_on_quotient")
}
