use std::sync::Arc;

use super::{Action, Bimodule, BimoduleMap};
use crate::error::{Error, Result};
use crate::linalg::sparse::SparseVec;
use crate::linalg::{descend, sparse, Matrix, QuotientSpace, Scalar};

/// Mixed-radix indexing of M_0 ⊗ … ⊗ M_{n-1}; the first factor is most significant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainIndex {
    dims: Vec<usize>,
    strides: Vec<usize>,
    total: usize,
}

impl ChainIndex {
    pub fn new(dims: &[usize]) -> ChainIndex {
        let mut strides = vec![1; dims.len()];
        for t in (0..dims.len().saturating_sub(1)).rev() {
            strides[t] = strides[t + 1] * dims[t + 1];
        }
        ChainIndex {
            dims: dims.to_vec(),
            strides,
            total: dims.iter().product(),
        }
    }

    pub fn total(&self) -> usize {
        self.total
    }

    pub fn len(&self) -> usize {
        self.dims.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dims.is_empty()
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn stride(&self, t: usize) -> usize {
        self.strides[t]
    }

    pub fn digit(&self, w: usize, t: usize) -> usize {
        (w / self.strides[t]) % self.dims[t]
    }

    pub fn encode(&self, digits: &[usize]) -> usize {
        digits.iter().zip(&self.strides).map(|(d, s)| d * s).sum()
    }

    pub fn decode(&self, w: usize) -> Vec<usize> {
        (0..self.dims.len()).map(|t| self.digit(w, t)).collect()
    }

    /// Image of word `w` when factor `t` is replaced by the sparse column `col`.
    pub fn replace(&self, w: usize, t: usize, col: &[(usize, Scalar)]) -> SparseVec {
        let base = w - self.digit(w, t) * self.strides[t];
        col.iter().map(|(s, x)| (base + s * self.strides[t], x.clone())).collect()
    }

    /// Kronecker image of word `w` under per-factor column maps.
    pub fn kron_image(&self, w: usize, cols: &[&[SparseVec]], dst: &ChainIndex) -> SparseVec {
        let mut acc: SparseVec = vec![(0, Scalar::one())];
        for (t, c) in cols.iter().enumerate() {
            let col = &c[self.digit(w, t)];
            let mut next = Vec::with_capacity(acc.len() * col.len());
            for (i, x) in &acc {
                for (s, y) in col {
                    next.push((i + s * dst.strides[t], x * y));
                }
            }
            acc = next;
        }
        sparse::normalize(acc)
    }
}

/// Balance relations of a chain of bimodules, one family per junction. A cyclic
/// chain also balances the last factor against the first (the shadow carrier).
pub fn chain_carrier(factors: &[Bimodule], cyclic: bool) -> Result<(ChainIndex, QuotientSpace)> {
    let n = factors.len();
    let index = ChainIndex::new(&factors.iter().map(|f| f.dim()).collect::<Vec<_>>());
    let junctions = if cyclic { n } else { n.saturating_sub(1) };
    let mut families = Vec::new();
    for t in 0..junctions {
        let u = (t + 1) % n;
        let alg = factors[t].right_alg();
        if alg != factors[u].left_alg() {
            return Err(Error::AlgebraMismatch(format!(
                "{} is right over {} but {} is left over {}",
                factors[t].name(),
                alg.name(),
                factors[u].name(),
                factors[u].left_alg().name()
            )));
        }
        for g in alg.generators() {
            let r = factors[t].right_element(g).sparse_columns();
            let l = factors[u].left_element(g).sparse_columns();
            families.push((t, u, r, l));
        }
    }
    let total = index.total();
    let idx = &index;
    let rows = families.iter().flat_map(move |(t, u, r, l)| {
        (0..total).map(move |w| {
            let mut row = idx.replace(w, *t, &r[idx.digit(w, *t)]);
            for (i, x) in idx.replace(w, *u, &l[idx.digit(w, *u)]) {
                row.push((i, -x));
            }
            sparse::normalize(row)
        })
    });
    let q = QuotientSpace::from_relations(total, rows);
    Ok((index, q))
}

#[derive(Clone, Debug)]
pub struct CompositeBimodule {
    pub result: Bimodule,
    pub carrier: Arc<QuotientSpace>,
    pub factors: Vec<Bimodule>,
    pub index: ChainIndex,
}

impl CompositeBimodule {
    /// Quotient coordinates of the class of an ambient word given by digits.
    pub fn class_of(&self, digits: &[usize]) -> SparseVec {
        self.carrier.project_basis(self.index.encode(digits))
    }

    /// Quotient coordinates of an ambient vector.
    pub fn project(&self, v: &[(usize, Scalar)]) -> SparseVec {
        sparse::from_dense(&self.carrier.project(v))
    }

    /// Ambient representative of a quotient basis vector, as digits.
    pub fn representative(&self, k: usize) -> Vec<usize> {
        self.index.decode(self.carrier.basis_columns()[k])
    }
}

fn descended_action(carrier: &Arc<QuotientSpace>, index: &ChainIndex, t: usize, action: &Action, alg_dim: usize, what: &str) -> Action {
    let carrier = carrier.clone();
    let index = index.clone();
    let action = action.clone();
    let what = what.to_string();
    Action::lazy(carrier.quotient_dim(), alg_dim, move |i| {
        let cols = action.matrix(i).sparse_columns();
        descend(&carrier, &carrier, |w| index.replace(w, t, &cols[index.digit(w, t)]), &what).expect("action descends for valid factors")
    })
}

fn check_descends(carrier: &QuotientSpace, index: &ChainIndex, t: usize, m: &Matrix, what: &str) -> Result<()> {
    let cols = m.sparse_columns();
    descend(carrier, carrier, |w| index.replace(w, t, &cols[index.digit(w, t)]), what).map(|_| ())
}

/// M_0 ⊙ … ⊙ M_{n-1} as one quotient of the full Kronecker product.
pub fn compose_chain(factors: &[Bimodule]) -> Result<CompositeBimodule> {
    if factors.is_empty() {
        return Err(Error::invalid("compose", "empty chain"));
    }
    let (index, q) = chain_carrier(factors, false)?;
    let carrier = Arc::new(q);
    let first = &factors[0];
    let last = &factors[factors.len() - 1];
    let n = factors.len() - 1;
    // Generators are checked eagerly; they generate, so the rest descend too.
    for g in first.left_alg().generators() {
        check_descends(&carrier, &index, 0, &first.left_element(g), "left action on composite")?;
    }
    for g in last.right_alg().generators() {
        check_descends(&carrier, &index, n, &last.right_element(g), "right action on composite")?;
    }
    let left = descended_action(&carrier, &index, 0, first.left(), first.left_alg().dim(), "left action on composite");
    let right = descended_action(&carrier, &index, n, last.right(), last.right_alg().dim(), "right action on composite");
    let name = factors.iter().map(|f| f.name()).collect::<Vec<_>>().join("⊙");
    let result = Bimodule::from_actions(&name, first.left_alg().clone(), last.right_alg().clone(), left, right);
    Ok(CompositeBimodule {
        result,
        carrier,
        factors: factors.to_vec(),
        index,
    })
}

pub fn compose(m: &Bimodule, n: &Bimodule) -> Result<CompositeBimodule> {
    if m.right_alg() != n.left_alg() {
        return Err(Error::AlgebraMismatch(format!(
            "cannot compose {} (right {}) with {} (left {})",
            m.name(),
            m.right_alg().name(),
            n.name(),
            n.left_alg().name()
        )));
    }
    compose_chain(&[m.clone(), n.clone()])
}

/// f_0 ⊙ … ⊙ f_{n-1} descended from `src` to `dst`.
pub fn compose_maps_chain(fs: &[&BimoduleMap], src: &CompositeBimodule, dst: &CompositeBimodule) -> Result<BimoduleMap> {
    if fs.len() != src.factors.len() || fs.len() != dst.factors.len() {
        return Err(Error::invalid("compose_maps", "chain length mismatch"));
    }
    for (t, f) in fs.iter().enumerate() {
        if !f.src.same_shape(&src.factors[t]) || !f.dst.same_shape(&dst.factors[t]) {
            return Err(Error::AlgebraMismatch(format!("map {t} does not match the composite factors")));
        }
    }
    let cols: Vec<Vec<SparseVec>> = fs.iter().map(|f| f.matrix.sparse_columns()).collect();
    let refs: Vec<&[SparseVec]> = cols.iter().map(|c| c.as_slice()).collect();
    let m = descend(&src.carrier, &dst.carrier, |w| src.index.kron_image(w, &refs, &dst.index), "compose_maps")?;
    BimoduleMap::new(src.result.clone(), dst.result.clone(), m)
}

pub fn compose_maps(f: &BimoduleMap, g: &BimoduleMap, cm: &CompositeBimodule, cm2: &CompositeBimodule) -> Result<BimoduleMap> {
    compose_maps_chain(&[f, g], cm, cm2)
}

/// U_A ⊙ M → M, a⊗m ↦ a·m.
pub fn left_unitor(um: &CompositeBimodule) -> Result<BimoduleMap> {
    let m = &um.factors[1];
    let cols: Vec<SparseVec> = (0..m.left_alg().dim()).flat_map(|a| m.left_matrix(a).sparse_columns()).collect();
    let target = QuotientSpace::trivial(m.dim());
    // word (a, s) ↦ column s of L_a
    let mat = descend(&um.carrier, &target, |w| cols[w].clone(), "left unitor")?;
    BimoduleMap::new(um.result.clone(), m.clone(), mat)
}

/// M ⊙ U_B → M, m⊗b ↦ m·b.
pub fn right_unitor(mu: &CompositeBimodule) -> Result<BimoduleMap> {
    let m = &mu.factors[0];
    let rs: Vec<Vec<SparseVec>> = (0..m.right_alg().dim()).map(|b| m.right_matrix(b).sparse_columns()).collect();
    let target = QuotientSpace::trivial(m.dim());
    let nb = m.right_alg().dim();
    let mat = descend(&mu.carrier, &target, |w| rs[w % nb][w / nb].clone(), "right unitor")?;
    BimoduleMap::new(mu.result.clone(), m.clone(), mat)
}

/// (M⊙N)⊙P → M⊙(N⊙P) on the nested composites built here.
pub fn associator(m: &Bimodule, n: &Bimodule, p: &Bimodule) -> Result<(CompositeBimodule, CompositeBimodule, BimoduleMap)> {
    let mn = compose(m, n)?;
    let np = compose(n, p)?;
    let lhs = compose(&mn.result, p)?;
    let rhs = compose(m, &np.result)?;
    let map = descend(
        &lhs.carrier,
        &rhs.carrier,
        |w| {
            let (q, c) = (lhs.index.digit(w, 0), lhs.index.digit(w, 1));
            let rep = mn.representative(q);
            np.class_of(&[rep[1], c])
                .into_iter()
                .map(|(k, x)| (rhs.index.encode(&[rep[0], k]), x))
                .collect()
        },
        "associator",
    )?;
    let f = BimoduleMap::new(lhs.result.clone(), rhs.result.clone(), map)?;
    Ok((lhs, rhs, f))
}
