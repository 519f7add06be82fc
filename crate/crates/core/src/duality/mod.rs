//! Dual pairs of 1-cells and dualizability witnesses for 0-cells.

mod zero_cell;

pub use zero_cell::{
    dual_of_zero_cell_witness, one_dualizability_witness, separability_idempotent, two_dualizability_report, SeparabilityWitness, TwoDualizability,
    ZeroCellWitness,
};

use serde_json::json;

use crate::bimodule::{commutation_rows, compose, unit_bimodule, Bimodule, BimoduleMap, CompositeBimodule};
use crate::error::{Error, Result};
use crate::linalg::sparse::{self, SparseVec};
use crate::linalg::{descend, rref_of, solve_sparse, Matrix, QuotientSpace, Scalar};
use crate::report::{matrix_json, Report};

/// (M, N) with η: U_A → M⊙N and ε: N⊙M → U_B.
#[derive(Clone, Debug)]
pub struct DualPair {
    pub m: Bimodule,
    pub dual: Bimodule,
    pub coev: BimoduleMap,
    pub ev: BimoduleMap,
    pub mn: CompositeBimodule,
    pub nm: CompositeBimodule,
}

impl DualPair {
    /// ε·λ and η·λ⁻¹.
    pub fn rescaled(&self, lambda: &Scalar) -> DualPair {
        let mut out = self.clone();
        out.ev = self.ev.scaled(lambda);
        out.coev = self.coev.scaled(&lambda.inv());
        out
    }

    /// η(1) as a vector in the ambient space M⊗N.
    pub fn coev_unit_ambient(&self) -> SparseVec {
        let a = self.m.left_alg();
        let coords = self.coev.matrix.mul_vec(a.unit());
        self.mn.carrier.lift(&coords)
    }

    /// ε([φ_j ⊗ x_s]) as coordinates in B.
    pub fn ev_word(&self, j: usize, s: usize) -> SparseVec {
        let class = self.nm.class_of(&[j, s]);
        apply_sparse(&self.ev.matrix, &class)
    }
}

pub(crate) fn apply_sparse(m: &Matrix, v: &[(usize, Scalar)]) -> SparseVec {
    let mut out = vec![Scalar::zero(); m.rows()];
    for (j, x) in v {
        for (i, o) in out.iter_mut().enumerate() {
            let y = &m[(i, *j)];
            if !y.is_zero() {
                *o += x * y;
            }
        }
    }
    sparse::from_dense(&out)
}

fn two_factor_word(a: usize, b: usize, nb: usize) -> usize {
    a * nb + b
}

/// Right dual via the free cover on the standard basis.
pub fn right_dual_witness(m: &Bimodule) -> Result<DualPair> {
    right_dual_witness_with_cover(m, &Matrix::identity(m.dim()))
}

/// Right dual Hom_B(M, B) from the free cover B^n → M, e_t⊗b ↦ x_t·b, where the
/// x_t are the columns of `cover` (an invertible n×n matrix).
pub fn right_dual_witness_with_cover(m: &Bimodule, cover: &Matrix) -> Result<DualPair> {
    let a = m.left_alg();
    let b = m.right_alg();
    let n = m.dim();
    let db = b.dim();
    if cover.rows() != n || !crate::linalg::is_invertible(cover) {
        return Err(Error::invalid("cover", "cover generators must form a basis"));
    }
    let ub = unit_bimodule(b);
    let rb_mats = m.right_action();
    // p: n × (n·db), column t·db + c is x_t·e_c
    let mut p = Matrix::zeros(n, n * db);
    for t in 0..n {
        let x = cover.column(t);
        for (c, r) in rb_mats.iter().enumerate() {
            for (i, v) in r.mul_vec(&x).into_iter().enumerate() {
                p[(i, t * db + c)] = v;
            }
        }
    }
    // Section X ((n·db) × n): p·X = I and X·R^M_g = (I_n ⊗ R^B_g)·X.
    let rows = n * db;
    let mut eqs: Vec<(SparseVec, Scalar)> = Vec::new();
    for i in 0..n {
        for s in 0..n {
            let row: SparseVec = (0..rows).filter(|r| !p[(i, *r)].is_zero()).map(|r| (r * n + s, p[(i, r)].clone())).collect();
            eqs.push((row, if i == s { Scalar::one() } else { Scalar::zero() }));
        }
    }
    for g in b.generators() {
        let rm = m.right_element(g);
        let free = Matrix::identity(n).kron(&ub.right_element(g));
        eqs.extend(commutation_rows(rows, n, &rm, &free).into_iter().map(|r| (r, Scalar::zero())));
    }
    let x = solve_sparse(rows * n, eqs).map_err(|certificate| Error::NotRightDualizable {
        algebra: b.name().to_string(),
        certificate,
    })?;
    let x = Matrix::from_vec(rows, n, x);

    // Hom_B(M, B) as db×n matrices Y with Y·R^M_g = R^B_g·Y.
    let mut hom_eqs = Vec::new();
    for g in b.generators() {
        hom_eqs.extend(commutation_rows(db, n, &m.right_element(g), &ub.right_element(g)));
    }
    let rref = rref_of(db * n, hom_eqs);
    let free = rref.free_columns();
    let basis: Vec<Matrix> = rref
        .kernel_basis()
        .iter()
        .map(|v| Matrix::from_vec(db, n, sparse::to_dense(v, db * n)))
        .collect();
    let nd = basis.len();
    let coords = |y: &Matrix| -> Vec<Scalar> { free.iter().map(|&f| y.data()[f].clone()).collect() };
    let act = |f: &dyn Fn(&Matrix) -> Matrix| -> Matrix {
        let cols: Vec<Vec<Scalar>> = basis.iter().map(|y| coords(&f(y))).collect();
        let mut out = Matrix::zeros(nd, nd);
        for (j, c) in cols.iter().enumerate() {
            for (i, v) in c.iter().enumerate() {
                out[(i, j)] = v.clone();
            }
        }
        out
    };
    let left: Vec<Matrix> = (0..db)
        .map(|c| {
            let l = ub.left_matrix(c);
            act(&|y: &Matrix| l.mul(y))
        })
        .collect();
    let right: Vec<Matrix> = (0..a.dim())
        .map(|c| {
            let l = m.left_matrix(c);
            act(&|y: &Matrix| y.mul(&l))
        })
        .collect();
    let dual = Bimodule::new(&format!("{}*", m.name()), b.clone(), a.clone(), nd, left, right);

    let mn = compose(m, &dual)?;
    let nm = compose(&dual, m)?;
    // φ_t is the t-th block row of X.
    let phi: Vec<Vec<Scalar>> = (0..n)
        .map(|t| {
            let mut y = Matrix::zeros(db, n);
            for c in 0..db {
                for s in 0..n {
                    y[(c, s)] = x[(t * db + c, s)].clone();
                }
            }
            coords(&y)
        })
        .collect();
    // η(a) = Σ_t (a·x_t) ⊗ φ_t
    let mut coev = Matrix::zeros(mn.result.dim(), a.dim());
    for c in 0..a.dim() {
        let l = m.left_matrix(c);
        let mut amb: SparseVec = Vec::new();
        for t in 0..n {
            let ax = l.mul_vec(&cover.column(t));
            for (s, u) in ax.iter().enumerate() {
                if u.is_zero() {
                    continue;
                }
                for (j, v) in phi[t].iter().enumerate() {
                    if !v.is_zero() {
                        amb.push((two_factor_word(s, j, nd), u * v));
                    }
                }
            }
        }
        for (i, v) in mn.project(&sparse::normalize(amb)) {
            coev[(i, c)] = v;
        }
    }
    let basis_cols: Vec<Vec<SparseVec>> = basis.iter().map(|y| y.sparse_columns()).collect();
    let ev = descend(&nm.carrier, &QuotientSpace::trivial(db), |w| basis_cols[w / n][w % n].clone(), "evaluation")?;
    let coev = BimoduleMap::new(unit_bimodule(a), mn.result.clone(), coev)?;
    let ev = BimoduleMap::new(nm.result.clone(), ub, ev)?;
    let dp = DualPair {
        m: m.clone(),
        dual,
        coev,
        ev,
        mn,
        nm,
    };
    let rep = verify_triangles(&dp);
    if !rep.pass {
        return Err(Error::invalid("dual pair", rep.failures().join("; ")));
    }
    Ok(dp)
}

/// Both triangle composites M → M⊙N⊙M → M and N → N⊙M⊙N → N,
/// descended through the three-factor carriers.
pub fn triangle_composites(dp: &DualPair) -> Result<(Matrix, Matrix)> {
    let (m, d) = (&dp.m, &dp.dual);
    let (n, nd) = (m.dim(), d.dim());
    let coev1 = dp.coev_unit_ambient();
    let rm: Vec<Vec<SparseVec>> = (0..m.right_alg().dim()).map(|c| m.right_matrix(c).sparse_columns()).collect();
    let ld: Vec<Vec<SparseVec>> = (0..d.left_alg().dim()).map(|c| d.left_matrix(c).sparse_columns()).collect();

    let mnm = crate::bimodule::compose_chain(&[m.clone(), d.clone(), m.clone()])?;
    // x ↦ η(1) ⊗ x
    let mut first = Matrix::zeros(mnm.result.dim(), n);
    for x in 0..n {
        let amb: SparseVec = coev1.iter().map(|(w, c)| (w * n + x, c.clone())).collect();
        for (i, v) in mnm.project(&amb) {
            first[(i, x)] = v;
        }
    }
    // m_s ⊗ φ_j ⊗ x ↦ m_s · ε(φ_j ⊗ x)
    let second = descend(
        &mnm.carrier,
        &QuotientSpace::trivial(n),
        |w| {
            let (s, j, x) = (mnm.index.digit(w, 0), mnm.index.digit(w, 1), mnm.index.digit(w, 2));
            let mut out = Vec::new();
            for (c, bc) in dp.ev_word(j, x) {
                out.extend(rm[c][s].iter().map(|(i, y)| (*i, y * &bc)));
            }
            sparse::normalize(out)
        },
        "M triangle",
    )?;
    let t1 = second.mul(&first);

    let nmn = crate::bimodule::compose_chain(&[d.clone(), m.clone(), d.clone()])?;
    let mut first = Matrix::zeros(nmn.result.dim(), nd);
    for j in 0..nd {
        let amb: SparseVec = coev1.iter().map(|(w, c)| (j * n * nd + w, c.clone())).collect();
        for (i, v) in nmn.project(&amb) {
            first[(i, j)] = v;
        }
    }
    // φ_j ⊗ m_s ⊗ ψ ↦ ε(φ_j ⊗ m_s) · ψ
    let second = descend(
        &nmn.carrier,
        &QuotientSpace::trivial(nd),
        |w| {
            let (j, s, k) = (nmn.index.digit(w, 0), nmn.index.digit(w, 1), nmn.index.digit(w, 2));
            let mut out = Vec::new();
            for (c, bc) in dp.ev_word(j, s) {
                out.extend(ld[c][k].iter().map(|(i, y)| (*i, y * &bc)));
            }
            sparse::normalize(out)
        },
        "N triangle",
    )?;
    Ok((t1, second.mul(&first)))
}

pub fn verify_triangles(dp: &DualPair) -> Report {
    let claim = format!("triangle identities for ({}, {})", dp.m.name(), dp.dual.name());
    match triangle_composites(dp) {
        Err(e) => Report::new(claim, false, Some(json!({ "failures": [e.to_string()] }))),
        Ok((t1, t2)) => {
            let mut failures = Vec::new();
            let mut bad = Vec::new();
            if !t1.is_identity() {
                failures.push("(id⊙ε)∘(η⊙id) ≠ id on M".to_string());
                bad.push(json!({ "triangle": "M", "composite": matrix_json(&t1) }));
            }
            if !t2.is_identity() {
                failures.push("(ε⊙id)∘(id⊙η) ≠ id on N".to_string());
                bad.push(json!({ "triangle": "N", "composite": matrix_json(&t2) }));
            }
            if failures.is_empty() {
                Report::pass(claim)
            } else {
                Report::new(claim, false, Some(json!({ "failures": failures, "composites": bad })))
            }
        }
    }
}

/// The dual pair (M⊙N, N'⊙M') with nested coevaluation and evaluation.
pub fn compose_dual_pairs(p: &DualPair, q: &DualPair) -> Result<DualPair> {
    let mn = compose(&p.m, &q.m)?;
    let dn = compose(&q.dual, &p.dual)?;
    let big = compose(&mn.result, &dn.result)?;
    let rev = compose(&dn.result, &mn.result)?;
    let a = p.m.left_alg();
    let c_alg = q.m.right_alg();
    // η(1) = Σ [x_s ⊗ y_r] ⊗ [ψ_j ⊗ φ_i] over η_M(1) = Σ x_s⊗φ_i, η_N(1) = Σ y_r⊗ψ_j
    let nd_n = q.dual.dim();
    let mut amb: SparseVec = Vec::new();
    for (w1, c1) in p.coev_unit_ambient() {
        let (s, i) = (w1 / p.dual.dim(), w1 % p.dual.dim());
        for (w2, c2) in q.coev_unit_ambient() {
            let (r, j) = (w2 / nd_n, w2 % nd_n);
            let c = &c1 * &c2;
            for (u, x) in mn.class_of(&[s, r]) {
                for (v, y) in dn.class_of(&[j, i]) {
                    amb.push((u * dn.result.dim() + v, &c * &(&x * &y)));
                }
            }
        }
    }
    let unit_class = big.project(&sparse::normalize(amb));
    let mut coev = Matrix::zeros(big.result.dim(), a.dim());
    for c in 0..a.dim() {
        let l = big.result.left_matrix(c);
        for (i, v) in apply_sparse(&l, &unit_class) {
            coev[(i, c)] = v;
        }
    }
    let ln: Vec<Vec<SparseVec>> = (0..q.m.left_alg().dim()).map(|c| q.m.left_matrix(c).sparse_columns()).collect();
    let target = QuotientSpace::trivial(c_alg.dim());
    let ev = descend(
        &rev.carrier,
        &target,
        |w| {
            let dj = dn.representative(rev.index.digit(w, 0));
            let xs = mn.representative(rev.index.digit(w, 1));
            let (j, i, s, r) = (dj[0], dj[1], xs[0], xs[1]);
            // ψ_j ⊗ (ε_M(φ_i ⊗ x_s) · y_r)
            let mut amb: SparseVec = Vec::new();
            for (cb, b) in p.ev_word(i, s) {
                for (t, y) in &ln[cb][r] {
                    amb.push((j * q.m.dim() + t, &b * y));
                }
            }
            let class = q.nm.project(&sparse::normalize(amb));
            apply_sparse(&q.ev.matrix, &class)
        },
        "composite evaluation",
    )?;
    let coev = BimoduleMap::new(unit_bimodule(a), big.result.clone(), coev)?;
    let ev = BimoduleMap::new(rev.result.clone(), unit_bimodule(c_alg), ev)?;
    Ok(DualPair {
        m: mn.result.clone(),
        dual: dn.result.clone(),
        coev,
        ev,
        mn: big,
        nm: rev,
    })
}

#[cfg(test)]
mod tests;
