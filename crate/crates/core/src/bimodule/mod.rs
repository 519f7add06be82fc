//! 1-cells (bimodules) and 2-cells (intertwiners) of the algebra bicategory.

mod cells;
mod compose;
mod hom;

use std::fmt;
use std::sync::{Arc, OnceLock};

pub use cells::{canonical_cells, direct_sum, gamma, serre_dual, serre_dual_composite, serre_dual_map, tensor_k, tensor_k_maps, unit_bimodule, SerreReading};
pub use compose::{
    associator, chain_carrier, compose, compose_chain, compose_maps, compose_maps_chain, left_unitor, right_unitor, ChainIndex, CompositeBimodule,
};
pub(crate) use hom::commutation_rows;
pub use hom::{find_isomorphism, hom_basis, hom_space};

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::linalg::sparse::SparseVec;
use crate::linalg::{self, Matrix, Scalar};
use crate::report::Report;

/// How an algebra acts: explicit matrices per basis element, or a Kronecker
/// product of two actions (the ⊗ over k of two modules), never materialized.
#[derive(Clone)]
pub enum Action {
    Explicit {
        space: usize,
        mats: Arc<Vec<Matrix>>,
    },
    /// Acts on `first.space ⊗ second.space`. The algebra basis is (i,p) ↦ i·dim2 + p,
    /// or (p,i) ↦ p·dim1 + i when `swapped`.
    Tensor {
        first: Arc<Action>,
        second: Arc<Action>,
        dim1: usize,
        dim2: usize,
        swapped: bool,
    },
    /// Basis matrices computed on first use (descended actions of composites).
    Lazy {
        space: usize,
        make: Arc<dyn Fn(usize) -> Matrix + Send + Sync>,
        cache: Arc<Vec<OnceLock<Matrix>>>,
    },
}

impl Action {
    pub fn explicit(space: usize, mats: Vec<Matrix>) -> Action {
        Action::Explicit { space, mats: Arc::new(mats) }
    }

    pub fn tensor(first: Action, second: Action, dim1: usize, dim2: usize, swapped: bool) -> Action {
        Action::Tensor {
            first: Arc::new(first),
            second: Arc::new(second),
            dim1,
            dim2,
            swapped,
        }
    }

    pub fn lazy(space: usize, algebra_dim: usize, make: impl Fn(usize) -> Matrix + Send + Sync + 'static) -> Action {
        Action::Lazy {
            space,
            make: Arc::new(make),
            cache: Arc::new((0..algebra_dim).map(|_| OnceLock::new()).collect()),
        }
    }

    pub fn space(&self) -> usize {
        match self {
            Action::Explicit { space, .. } | Action::Lazy { space, .. } => *space,
            Action::Tensor { first, second, .. } => first.space() * second.space(),
        }
    }

    pub fn algebra_dim(&self) -> usize {
        match self {
            Action::Explicit { mats, .. } => mats.len(),
            Action::Lazy { cache, .. } => cache.len(),
            Action::Tensor { dim1, dim2, .. } => dim1 * dim2,
        }
    }

    fn split(&self, idx: usize) -> (usize, usize) {
        match self {
            Action::Tensor { dim1, dim2, swapped, .. } => {
                if *swapped {
                    (idx % dim1, idx / dim1)
                } else {
                    (idx / dim2, idx % dim2)
                }
            }
            _ => unreachable!(),
        }
    }

    /// Matrix of a basis element of the acting algebra.
    pub fn matrix(&self, idx: usize) -> Matrix {
        match self {
            Action::Explicit { mats, .. } => mats[idx].clone(),
            Action::Lazy { make, cache, .. } => cache[idx].get_or_init(|| make(idx)).clone(),
            Action::Tensor { first, second, .. } => {
                let (i, p) = self.split(idx);
                first.matrix(i).kron(&second.matrix(p))
            }
        }
    }

    /// Matrix of an arbitrary algebra element.
    pub fn element(&self, v: &[(usize, Scalar)]) -> Matrix {
        match self {
            Action::Explicit { space, mats } => {
                let mut out = Matrix::zeros(*space, *space);
                for (i, x) in v {
                    out.add_scaled(&mats[*i], x);
                }
                out
            }
            Action::Lazy { space, .. } => {
                let mut out = Matrix::zeros(*space, *space);
                for (i, x) in v {
                    out.add_scaled(&self.matrix(*i), x);
                }
                out
            }
            Action::Tensor { first, second, .. } => {
                // group by the first-factor index: Σ_i L_i ⊗ (Σ_p v_ip L'_p)
                let mut groups: Vec<(usize, SparseVec)> = Vec::new();
                for (idx, x) in v {
                    let (i, p) = self.split(*idx);
                    match groups.iter_mut().find(|(j, _)| *j == i) {
                        Some((_, g)) => g.push((p, x.clone())),
                        None => groups.push((i, vec![(p, x.clone())])),
                    }
                }
                let n = self.space();
                let mut out = Matrix::zeros(n, n);
                for (i, g) in groups {
                    let g = linalg::sparse::normalize(g);
                    out = out.add(&first.matrix(i).kron(&second.element(&g)));
                }
                out
            }
        }
    }

    pub fn materialize(&self) -> Vec<Matrix> {
        (0..self.algebra_dim()).map(|i| self.matrix(i)).collect()
    }
}

#[derive(Clone)]
pub struct Bimodule {
    name: String,
    left: Algebra,
    right: Algebra,
    left_action: Action,
    right_action: Action,
}

impl fmt::Debug for Bimodule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Bimodule({}: ({}, {}), dim {})", self.name, self.left.name(), self.right.name(), self.dim())
    }
}

impl Bimodule {
    /// Unvalidated constructor from explicit per-basis-element matrices.
    pub fn new(name: &str, left: Algebra, right: Algebra, dim: usize, left_action: Vec<Matrix>, right_action: Vec<Matrix>) -> Bimodule {
        assert_eq!(left_action.len(), left.dim(), "one left matrix per basis element");
        assert_eq!(right_action.len(), right.dim(), "one right matrix per basis element");
        Bimodule::from_actions(name, left, right, Action::explicit(dim, left_action), Action::explicit(dim, right_action))
    }

    pub fn from_actions(name: &str, left: Algebra, right: Algebra, left_action: Action, right_action: Action) -> Bimodule {
        assert_eq!(left_action.space(), right_action.space());
        assert_eq!(left_action.algebra_dim(), left.dim());
        assert_eq!(right_action.algebra_dim(), right.dim());
        Bimodule {
            name: name.to_string(),
            left,
            right,
            left_action,
            right_action,
        }
    }

    /// Constructor that refuses invalid data.
    pub fn checked(name: &str, left: Algebra, right: Algebra, dim: usize, l: Vec<Matrix>, r: Vec<Matrix>) -> Result<Bimodule> {
        let shape_ok = |ms: &Vec<Matrix>, n: usize| ms.len() == n && ms.iter().all(|m| m.rows() == dim && m.cols() == dim);
        if !shape_ok(&l, left.dim()) || !shape_ok(&r, right.dim()) {
            return Err(Error::invalid("bimodule", format!("{name}: action shapes do not match dim {dim}")));
        }
        let m = Bimodule::new(name, left, right, dim, l, r);
        let rep = validate_bimodule(&m);
        if !rep.pass {
            return Err(Error::invalid("bimodule", format!("{name}: {}", rep.failures().join("; "))));
        }
        Ok(m)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn renamed(&self, name: &str) -> Bimodule {
        let mut m = self.clone();
        m.name = name.to_string();
        m
    }

    pub fn left_alg(&self) -> &Algebra {
        &self.left
    }

    pub fn right_alg(&self) -> &Algebra {
        &self.right
    }

    pub fn dim(&self) -> usize {
        self.left_action.space()
    }

    pub fn left(&self) -> &Action {
        &self.left_action
    }

    pub fn right(&self) -> &Action {
        &self.right_action
    }

    pub fn left_matrix(&self, i: usize) -> Matrix {
        self.left_action.matrix(i)
    }

    pub fn right_matrix(&self, j: usize) -> Matrix {
        self.right_action.matrix(j)
    }

    pub fn left_element(&self, a: &[(usize, Scalar)]) -> Matrix {
        self.left_action.element(a)
    }

    pub fn right_element(&self, b: &[(usize, Scalar)]) -> Matrix {
        self.right_action.element(b)
    }

    /// Materialized per-basis-element action lists.
    pub fn left_action(&self) -> Vec<Matrix> {
        self.left_action.materialize()
    }

    pub fn right_action(&self) -> Vec<Matrix> {
        self.right_action.materialize()
    }

    pub fn left_generator_matrices(&self) -> Vec<Matrix> {
        self.left.generators().iter().map(|g| self.left_element(g)).collect()
    }

    pub fn right_generator_matrices(&self) -> Vec<Matrix> {
        self.right.generators().iter().map(|g| self.right_element(g)).collect()
    }

    pub fn same_shape(&self, o: &Bimodule) -> bool {
        self.dim() == o.dim() && self.left == o.left && self.right == o.right
    }
}

/// Checks unit, multiplicativity and commutation. Multiplicativity is checked
/// as L_g·L_x = L_{gx} for algebra generators g and all basis x, which implies
/// the full condition because the generators generate.
pub fn validate_bimodule(m: &Bimodule) -> Report {
    let mut failures = Vec::new();
    let n = m.dim();
    let id = Matrix::identity(n);
    if m.left_element(&m.left.unit_sparse()) != id {
        failures.push("left unit axiom: L_unit is not the identity".to_string());
    }
    if m.right_element(&m.right.unit_sparse()) != id {
        failures.push("right unit axiom: R_unit is not the identity".to_string());
    }
    let lg = m.left_generator_matrices();
    let rg = m.right_generator_matrices();
    let (lm, rm) = (m.left_action(), m.right_action());
    let combo = |mats: &[Matrix], v: &[(usize, Scalar)]| {
        let mut out = Matrix::zeros(n, n);
        for (i, c) in v {
            out.add_scaled(&mats[*i], c);
        }
        out
    };
    for (gi, g) in m.left.generators().iter().enumerate() {
        for (x, lx) in lm.iter().enumerate() {
            let gx = m.left.mul_sparse(g, &[(x, Scalar::one())]);
            if lg[gi].mul(lx) != combo(&lm, &gx) {
                failures.push(format!("left action not multiplicative at generator {gi}, basis {x}"));
            }
        }
    }
    for (gi, g) in m.right.generators().iter().enumerate() {
        for (x, rx) in rm.iter().enumerate() {
            // (m·x)·g = m·(xg)
            let xg = m.right.mul_sparse(&[(x, Scalar::one())], g);
            if rg[gi].mul(rx) != combo(&rm, &xg) {
                failures.push(format!("right action not multiplicative at basis {x}, generator {gi}"));
            }
        }
    }
    for (i, l) in lg.iter().enumerate() {
        for (j, r) in rg.iter().enumerate() {
            if l.mul(r) != r.mul(l) {
                failures.push(format!("actions do not commute at generators ({i},{j})"));
            }
        }
    }
    Report::from_failures(format!("bimodule {} satisfies the action axioms", m.name()), failures)
}

#[derive(Clone, Debug)]
pub struct BimoduleMap {
    pub src: Bimodule,
    pub dst: Bimodule,
    pub matrix: Matrix,
}

impl BimoduleMap {
    /// Checked constructor: shapes, algebras and intertwining on generators.
    pub fn new(src: Bimodule, dst: Bimodule, matrix: Matrix) -> Result<BimoduleMap> {
        if src.left != dst.left || src.right != dst.right {
            return Err(Error::AlgebraMismatch(format!(
                "map {} -> {} between different algebra pairs",
                src.name(),
                dst.name()
            )));
        }
        if matrix.rows() != dst.dim() || matrix.cols() != src.dim() {
            return Err(Error::invalid(
                "map",
                format!("matrix {}x{} for {} -> {}", matrix.rows(), matrix.cols(), src.dim(), dst.dim()),
            ));
        }
        let f = BimoduleMap { src, dst, matrix };
        let bad = f.intertwining_failures();
        if !bad.is_empty() {
            return Err(Error::invalid("map", bad.join("; ")));
        }
        Ok(f)
    }

    pub fn intertwining_failures(&self) -> Vec<String> {
        let mut out = Vec::new();
        for (i, g) in self.src.left.generators().iter().enumerate() {
            if self.matrix.mul(&self.src.left_element(g)) != self.dst.left_element(g).mul(&self.matrix) {
                out.push(format!("not left-linear at generator {i}"));
            }
        }
        for (i, g) in self.src.right.generators().iter().enumerate() {
            if self.matrix.mul(&self.src.right_element(g)) != self.dst.right_element(g).mul(&self.matrix) {
                out.push(format!("not right-linear at generator {i}"));
            }
        }
        out
    }

    pub fn identity(m: &Bimodule) -> BimoduleMap {
        BimoduleMap {
            src: m.clone(),
            dst: m.clone(),
            matrix: Matrix::identity(m.dim()),
        }
    }

    pub fn scaled(&self, c: &Scalar) -> BimoduleMap {
        BimoduleMap {
            src: self.src.clone(),
            dst: self.dst.clone(),
            matrix: self.matrix.scale(c),
        }
    }

    /// `g ∘ self`.
    pub fn then(&self, g: &BimoduleMap) -> Result<BimoduleMap> {
        if !self.dst.same_shape(&g.src) {
            return Err(Error::AlgebraMismatch(format!(
                "cannot compose {} -> {} with {} -> {}",
                self.src.name(),
                self.dst.name(),
                g.src.name(),
                g.dst.name()
            )));
        }
        Ok(BimoduleMap {
            src: self.src.clone(),
            dst: g.dst.clone(),
            matrix: g.matrix.mul(&self.matrix),
        })
    }

    pub fn is_invertible(&self) -> bool {
        linalg::is_invertible(&self.matrix)
    }

    pub fn inverse(&self) -> Option<BimoduleMap> {
        linalg::inverse(&self.matrix).map(|m| BimoduleMap {
            src: self.dst.clone(),
            dst: self.src.clone(),
            matrix: m,
        })
    }

    pub fn is_endomorphism(&self) -> bool {
        self.src.same_shape(&self.dst)
    }
}

#[cfg(test)]
mod tests;
