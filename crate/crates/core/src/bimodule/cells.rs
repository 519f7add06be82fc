use super::compose::{compose, CompositeBimodule};
use super::{Action, Bimodule, BimoduleMap};
use crate::algebra::{ground_field, opposite, tensor_algebra, Algebra};
use crate::error::{Error, Result};
use crate::linalg::sparse;
use crate::linalg::Matrix;

fn left_regular(a: &Algebra) -> Action {
    Action::explicit(a.dim(), (0..a.dim()).map(|i| a.left_mult_matrix(&sparse::unit(i))).collect())
}

fn right_regular(a: &Algebra) -> Action {
    Action::explicit(a.dim(), (0..a.dim()).map(|j| a.right_mult_matrix(&sparse::unit(j))).collect())
}

fn trivial_action(d: usize) -> Action {
    Action::explicit(d, vec![Matrix::identity(d)])
}

/// U_A: A acting on itself by multiplication on both sides. Tensor-product
/// algebras get the Kronecker product of the factors' unit bimodules.
pub fn unit_bimodule(a: &Algebra) -> Bimodule {
    let factors = a.tensor_factors();
    let name = format!("U_{}", a.name());
    if factors.len() > 1 {
        let mut left = left_regular(&factors[0]);
        let mut right = right_regular(&factors[0]);
        let mut d = factors[0].dim();
        for f in &factors[1..] {
            left = Action::tensor(left, left_regular(f), d, f.dim(), false);
            right = Action::tensor(right, right_regular(f), d, f.dim(), false);
            d *= f.dim();
        }
        return Bimodule::from_actions(&name, a.clone(), a.clone(), left, right);
    }
    Bimodule::from_actions(&name, a.clone(), a.clone(), left_regular(a), right_regular(a))
}

/// M ⊗_k N over (A⊗C, B⊗D); basis (s,t) ↦ s·dim N + t.
pub fn tensor_k(m: &Bimodule, n: &Bimodule) -> Result<Bimodule> {
    let left = tensor_algebra(m.left_alg(), n.left_alg())?;
    let right = tensor_algebra(m.right_alg(), n.right_alg())?;
    let l = Action::tensor(m.left().clone(), n.left().clone(), m.left_alg().dim(), n.left_alg().dim(), false);
    let r = Action::tensor(m.right().clone(), n.right().clone(), m.right_alg().dim(), n.right_alg().dim(), false);
    Ok(Bimodule::from_actions(&format!("{}⊗{}", m.name(), n.name()), left, right, l, r))
}

pub fn tensor_k_maps(f: &BimoduleMap, g: &BimoduleMap) -> Result<BimoduleMap> {
    let src = tensor_k(&f.src, &g.src)?;
    let dst = tensor_k(&f.dst, &g.dst)?;
    Ok(BimoduleMap {
        src,
        dst,
        matrix: f.matrix.kron(&g.matrix),
    })
}

/// (A^op, C_A over (k, A⊗A^op), E_A over (A^op⊗A, k)), both on the space A.
pub fn canonical_cells(a: &Algebra) -> (Algebra, Bimodule, Bimodule) {
    let d = a.dim();
    let a_op = opposite(a);
    let k = ground_field(a.field());
    let ls: Vec<Matrix> = (0..d).map(|i| a.left_mult_matrix(&sparse::unit(i))).collect();
    let rs: Vec<Matrix> = (0..d).map(|i| a.right_mult_matrix(&sparse::unit(i))).collect();
    // C: a·(x⊗y^op) = y·a·x.  E: (x^op⊗y)·a = y·a·x.  Both index (x, y) ↦ x·d + y.
    let mats: Vec<Matrix> = (0..d * d).map(|xy| ls[xy % d].mul(&rs[xy / d])).collect();
    let aa_op = tensor_algebra(a, &a_op).expect("same field");
    let a_op_a = tensor_algebra(&a_op, a).expect("same field");
    let c = Bimodule::from_actions(
        &format!("C_{}", a.name()),
        k.clone(),
        aa_op,
        trivial_action(d),
        Action::explicit(d, mats.clone()),
    );
    let e = Bimodule::from_actions(&format!("E_{}", a.name()), a_op_a, k, Action::explicit(d, mats), trivial_action(d));
    (a_op, c, e)
}

/// Γ over (A⊗B, B⊗A): (x⊗y)·(b'⊗a') = (x·a')⊗(y·b').
pub fn gamma(a: &Algebra, b: &Algebra) -> Result<Bimodule> {
    let ab = tensor_algebra(a, b)?;
    let ba = tensor_algebra(b, a)?;
    let u = unit_bimodule(&ab);
    let right = Action::tensor(unit_bimodule(a).right().clone(), unit_bimodule(b).right().clone(), a.dim(), b.dim(), true);
    Ok(Bimodule::from_actions(&format!("Γ_{},{}", a.name(), b.name()), ab, ba, u.left().clone(), right))
}

/// ⊏M⊐ over (B^op, A^op) on the same space.
pub fn serre_dual(m: &Bimodule) -> Bimodule {
    let name = match m.name().strip_prefix('⊏').and_then(|s| s.strip_suffix('⊐')) {
        Some(inner) => inner.to_string(),
        None => format!("⊏{}⊐", m.name()),
    };
    Bimodule::from_actions(&name, opposite(m.right_alg()), opposite(m.left_alg()), m.right().clone(), m.left().clone())
}

pub fn serre_dual_map(f: &BimoduleMap) -> Result<BimoduleMap> {
    BimoduleMap::new(serre_dual(&f.src), serre_dual(&f.dst), f.matrix.clone())
}

/// Two readings of the whiskering in the Serre-dual composite.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum SerreReading {
    /// (U_{B^op}⊗C_A) ⊙ (U_{B^op}⊗M⊗U_{A^op}) ⊙ (E_B⊗U_{A^op}).
    #[default]
    Whiskered,
    /// Routes the A-strand past B^op with Γ cells before meeting M:
    /// (C_A⊗U_{B^op}) ⊙ (U_A⊗Γ_{A^op,B^op}) ⊙ (Γ_{A,B^op}⊗U_{A^op}) ⊙ (U_{B^op}⊗M⊗U_{A^op}) ⊙ (E_B⊗U_{A^op}).
    Crossed,
}

/// The Serre dual built from duality cells, composed pairwise left to right so
/// that each intermediate quotient stays small.
pub fn serre_dual_composite(m: &Bimodule, reading: SerreReading) -> Result<CompositeBimodule> {
    let a = m.left_alg();
    let b = m.right_alg();
    let (a_op, c_a, _) = canonical_cells(a);
    let (b_op, _, e_b) = canonical_cells(b);
    let u_a = unit_bimodule(a);
    let u_aop = unit_bimodule(&a_op);
    let u_bop = unit_bimodule(&b_op);
    let whiskered_m = tensor_k(&tensor_k(&u_bop, m)?, &u_aop)?;
    let tail = tensor_k(&e_b, &u_aop)?;
    let chain = match reading {
        SerreReading::Whiskered => vec![tensor_k(&u_bop, &c_a)?, whiskered_m, tail],
        SerreReading::Crossed => vec![
            tensor_k(&c_a, &u_bop)?,
            tensor_k(&u_a, &gamma(&a_op, &b_op)?)?,
            tensor_k(&gamma(a, &b_op)?, &u_aop)?,
            whiskered_m,
            tail,
        ],
    };
    let mut acc = chain[0].clone();
    let mut last = None;
    for next in &chain[1..] {
        let c = compose(&acc, next)?;
        acc = c.result.clone();
        last = Some(c);
    }
    let mut out = last.ok_or_else(|| Error::invalid("serre_dual_composite", "empty chain"))?;
    out.result = out.result.renamed(&format!("⊏{}⊐~", m.name()));
    Ok(out)
}

fn block_diag(x: &Matrix, y: &Matrix) -> Matrix {
    let (p, q) = (x.rows(), y.rows());
    let mut out = Matrix::zeros(p + q, p + q);
    for i in 0..p {
        for j in 0..p {
            out[(i, j)] = x[(i, j)].clone();
        }
    }
    for i in 0..q {
        for j in 0..q {
            out[(p + i, p + j)] = y[(i, j)].clone();
        }
    }
    out
}

/// M ⊕ N, basis of M first.
pub fn direct_sum(m: &Bimodule, n: &Bimodule) -> Result<Bimodule> {
    if m.left_alg() != n.left_alg() || m.right_alg() != n.right_alg() {
        return Err(Error::AlgebraMismatch(format!("{} ⊕ {} over different algebra pairs", m.name(), n.name())));
    }
    let l = m.left_action().iter().zip(n.left_action()).map(|(x, y)| block_diag(x, &y)).collect();
    let r = m.right_action().iter().zip(n.right_action()).map(|(x, y)| block_diag(x, &y)).collect();
    Ok(Bimodule::new(
        &format!("{}⊕{}", m.name(), n.name()),
        m.left_alg().clone(),
        m.right_alg().clone(),
        m.dim() + n.dim(),
        l,
        r,
    ))
}
