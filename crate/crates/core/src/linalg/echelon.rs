//! Incremental exact row echelon form over sparse rows.
//!
//! Rows are inserted one at a time and reduced against the pivots seen so
//! far; `into_rref` back-substitutes to the unique reduced form. Pivots are
//! first-nonzero-column, so the final RREF does not depend on insertion order.

use super::scalar::Scalar;
use super::sparse::{Accumulator, SparseVec};

const NONE: u32 = u32::MAX;

pub struct Echelon {
    ncols: usize,
    rows: Vec<SparseVec>,
    pivots: Vec<usize>,
    pivot_row: Vec<u32>,
    acc: Accumulator,
}

impl Echelon {
    pub fn new(ncols: usize) -> Echelon {
        Echelon {
            ncols,
            rows: Vec::new(),
            pivots: Vec::new(),
            pivot_row: vec![NONE; ncols],
            acc: Accumulator::new(ncols),
        }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.ncols
    }

    pub fn has_pivot(&self, col: usize) -> bool {
        self.pivot_row[col] != NONE
    }

    fn load(&mut self, row: &[(usize, Scalar)]) {
        for (j, x) in row {
            debug_assert!(*j < self.ncols);
            if !x.is_zero() {
                self.acc.add(*j, x);
            }
        }
    }

    /// Eliminates every pivot column from the loaded vector; returns the remainder.
    fn eliminate(&mut self) -> SparseVec {
        let mut rest: SparseVec = Vec::new();
        while let Some(c) = self.acc.pop_nonzero() {
            let r = self.pivot_row[c];
            if r == NONE {
                rest.push((c, self.acc.take(c)));
                continue;
            }
            let f = self.acc.take(c);
            let row = &self.rows[r as usize];
            for (j, x) in &row[1..] {
                self.acc.sub_mul(*j, &f, x);
            }
        }
        rest
    }

    /// Adds a row; returns true when it raised the rank.
    pub fn insert(&mut self, row: &[(usize, Scalar)]) -> bool {
        if self.is_full() {
            return false;
        }
        self.load(row);
        let rest = self.eliminate();
        if rest.is_empty() {
            return false;
        }
        let inv = rest[0].1.inv();
        let lead = rest[0].0;
        let normalized: SparseVec = rest
            .into_iter()
            .enumerate()
            .map(|(k, (j, x))| (j, if k == 0 { Scalar::one() } else { &x * &inv }))
            .collect();
        self.pivot_row[lead] = self.rows.len() as u32;
        self.pivots.push(lead);
        self.rows.push(normalized);
        true
    }

    /// Remainder of `v` modulo the current row space (supported on non-pivot columns).
    pub fn reduce(&mut self, v: &[(usize, Scalar)]) -> SparseVec {
        self.load(v);
        self.eliminate()
    }

    pub fn contains(&mut self, v: &[(usize, Scalar)]) -> bool {
        self.reduce(v).is_empty()
    }

    pub fn into_rref(self) -> Rref {
        let Echelon {
            ncols,
            rows,
            pivots,
            pivot_row,
            mut acc,
        } = self;
        let mut order: Vec<usize> = (0..rows.len()).collect();
        order.sort_by_key(|&r| std::cmp::Reverse(pivots[r]));
        let mut done: Vec<Option<SparseVec>> = vec![None; rows.len()];
        for r in order {
            let row = &rows[r];
            let lead = pivots[r];
            if row[1..].iter().all(|(j, _)| pivot_row[*j] == NONE) {
                done[r] = Some(row.clone());
                continue;
            }
            for (j, x) in &row[1..] {
                acc.add(*j, x);
            }
            let mut out: SparseVec = vec![(lead, Scalar::one())];
            while let Some(c) = acc.pop_nonzero() {
                let pr = pivot_row[c];
                if pr == NONE {
                    out.push((c, acc.take(c)));
                    continue;
                }
                let f = acc.take(c);
                let fin = done[pr as usize].as_ref().expect("larger pivots are finalized first");
                for (j, x) in &fin[1..] {
                    acc.sub_mul(*j, &f, x);
                }
            }
            done[r] = Some(out);
        }
        let mut pairs: Vec<(usize, SparseVec)> = pivots.into_iter().zip(done.into_iter().map(|r| r.unwrap())).collect();
        pairs.sort_by_key(|(p, _)| *p);
        let (pivots, rows) = pairs.into_iter().unzip();
        Rref { ncols, rows, pivots }
    }
}

/// Reduced row echelon form; rows sorted by pivot column, each with leading 1.
#[derive(Clone, Debug)]
pub struct Rref {
    pub ncols: usize,
    pub rows: Vec<SparseVec>,
    pub pivots: Vec<usize>,
}

impl Rref {
    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn free_columns(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ncols];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.ncols).filter(|&j| !is_pivot[j]).collect()
    }

    /// Standard free-variable kernel basis, one vector per free column in order.
    pub fn kernel_basis(&self) -> Vec<SparseVec> {
        let free = self.free_columns();
        let mut pos = vec![usize::MAX; self.ncols];
        for (k, &f) in free.iter().enumerate() {
            pos[f] = k;
        }
        let mut basis: Vec<SparseVec> = free.iter().map(|&f| vec![(f, Scalar::one())]).collect();
        for (r, row) in self.rows.iter().enumerate() {
            let p = self.pivots[r];
            for (j, x) in &row[1..] {
                basis[pos[*j]].push((p, -x));
            }
        }
        for b in &mut basis {
            b.sort_by_key(|(i, _)| *i);
        }
        basis
    }
}

pub fn rref_of(ncols: usize, rows: impl IntoIterator<Item = SparseVec>) -> Rref {
    let mut e = Echelon::new(ncols);
    for r in rows {
        if e.is_full() {
            break;
        }
        e.insert(&r);
    }
    e.into_rref()
}

/// Rank of a family of sparse vectors, stopping once `limit` is reached.
pub fn rank_of(ncols: usize, vectors: impl IntoIterator<Item = SparseVec>, limit: usize) -> usize {
    let mut e = Echelon::new(ncols);
    let limit = limit.min(ncols);
    for v in vectors {
        if e.rank() >= limit {
            break;
        }
        e.insert(&v);
    }
    e.rank()
}

/// Why a linear system had no solution: rank of the coefficient part vs the augmented system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Inconsistent {
    pub unknowns: usize,
    pub equations: usize,
    pub coefficient_rank: usize,
    pub augmented_rank: usize,
}

/// Solves sparse equations `Σ a_j x_j = rhs`; free variables are set to 0.
pub fn solve_sparse(nvars: usize, equations: impl IntoIterator<Item = (SparseVec, Scalar)>) -> Result<Vec<Scalar>, Inconsistent> {
    let mut e = Echelon::new(nvars + 1);
    let mut count = 0;
    for (mut row, rhs) in equations {
        count += 1;
        if !rhs.is_zero() {
            row.push((nvars, rhs));
        }
        e.insert(&row);
    }
    let r = e.into_rref();
    if r.pivots.last() == Some(&nvars) {
        let coefficient_rank = r.rank() - 1;
        return Err(Inconsistent {
            unknowns: nvars,
            equations: count,
            coefficient_rank,
            augmented_rank: r.rank(),
        });
    }
    let mut x = vec![Scalar::zero(); nvars];
    for (row, &p) in r.rows.iter().zip(&r.pivots) {
        if let Some((j, v)) = row.last() {
            if *j == nvars {
                x[p] = v.clone();
            }
        }
    }
    Ok(x)
}

/// Kernel of a sparse homogeneous system, as the standard free-variable basis.
pub fn kernel_sparse(nvars: usize, equations: impl IntoIterator<Item = SparseVec>) -> Vec<SparseVec> {
    rref_of(nvars, equations).kernel_basis()
}
