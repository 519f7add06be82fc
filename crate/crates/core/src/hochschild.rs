//! Hochschild complexes, HH₀ as the shadow, and its structure maps.

use std::sync::Arc;

use serde_json::json;

use crate::algebra::{tensor_algebra, Algebra};
use crate::bimodule::{associator, chain_carrier, compose, left_unitor, right_unitor, unit_bimodule, Bimodule, BimoduleMap, ChainIndex, CompositeBimodule};
use crate::error::{Error, Result};
use crate::linalg::sparse::{self, Accumulator, SparseVec};
use crate::linalg::{self, descend, induced_on_quotient, rank_of, Matrix, QuotientSpace, Scalar};
use crate::report::{matrix_json, Report};

/// The Hochschild complex C_n = M ⊗ A^{⊗n}, indexed by (m, a_1, …, a_n) with m most significant.
#[derive(Clone, Debug)]
pub struct HochschildComplex {
    pub algebra: Algebra,
    pub coefficients: Bimodule,
    pub cap: usize,
    /// dim C_0 … dim C_{cap+1}.
    pub chain_dims: Vec<usize>,
    /// b_1 … b_{cap+1}, stored by columns.
    boundaries: Vec<Vec<SparseVec>>,
}

fn endo_algebra(m: &Bimodule) -> Result<Algebra> {
    if m.left_alg() != m.right_alg() {
        return Err(Error::AlgebraMismatch(format!("{} is not an (A,A)-bimodule", m.name())));
    }
    Ok(m.left_alg().clone())
}

/// b(m⊗a_1⊗…⊗a_n) by columns.
fn boundary_columns(a: &Algebra, m: &Bimodule, n: usize) -> Vec<SparseVec> {
    let d = a.dim();
    let dm = m.dim();
    let lc: Vec<Vec<SparseVec>> = (0..d).map(|i| m.left_matrix(i).sparse_columns()).collect();
    let rc: Vec<Vec<SparseVec>> = (0..d).map(|i| m.right_matrix(i).sparse_columns()).collect();
    let tail = d.pow(n as u32);
    let below = d.pow(n as u32 - 1);
    let mut cols = Vec::with_capacity(dm * tail);
    let mut digits = vec![0usize; n];
    for mi in 0..dm {
        for w in 0..tail {
            let mut x = w;
            for k in (0..n).rev() {
                digits[k] = x % d;
                x /= d;
            }
            let mut acc = Accumulator::new(dm * below);
            let rest = |from: usize, to: usize| digits[from..to].iter().fold(0usize, |s, &q| s * d + q);
            // (m·a_1) ⊗ a_2 … a_n
            let r = rest(1, n);
            for (s, y) in &rc[digits[0]][mi] {
                acc.add(s * below + r, y);
            }
            // (−1)^i m ⊗ … (a_i a_{i+1}) …
            for i in 0..n - 1 {
                let sign = if (i + 1) % 2 == 0 { Scalar::one() } else { -Scalar::one() };
                let pre = rest(0, i);
                let post = &digits[i + 2..n];
                let post_len = post.len();
                let post_val = post.iter().fold(0usize, |s, &q| s * d + q);
                for (k, y) in a.mul_basis(digits[i], digits[i + 1]) {
                    let idx = ((pre * d + k) * d.pow(post_len as u32)) + post_val;
                    acc.add(mi * below + idx, &(&sign * y));
                }
            }
            // (−1)^n (a_n·m) ⊗ a_1 … a_{n−1}
            let sign = if n.is_multiple_of(2) { Scalar::one() } else { -Scalar::one() };
            let r = rest(0, n - 1);
            for (s, y) in &lc[digits[n - 1]][mi] {
                acc.add(s * below + r, &(&sign * y));
            }
            cols.push(acc.drain_sorted());
        }
    }
    cols
}

impl HochschildComplex {
    /// Builds b_1 … b_{cap+1}, enough to compute HH_0 … HH_cap.
    pub fn new(m: &Bimodule, cap: usize) -> Result<HochschildComplex> {
        let a = endo_algebra(m)?;
        let d = a.dim();
        let chain_dims = (0..=cap + 1).map(|n| m.dim() * d.pow(n as u32)).collect();
        let boundaries = (1..=cap + 1).map(|n| boundary_columns(&a, m, n)).collect();
        Ok(HochschildComplex {
            algebra: a,
            coefficients: m.clone(),
            cap,
            chain_dims,
            boundaries,
        })
    }

    pub fn boundary_columns(&self, n: usize) -> &[SparseVec] {
        &self.boundaries[n - 1]
    }

    /// Dense b_n: C_n → C_{n−1}.
    pub fn boundary(&self, n: usize) -> Matrix {
        Matrix::from_sparse_columns(self.chain_dims[n - 1], self.boundary_columns(n))
    }

    /// Columns of b_{n} ∘ b_{n+1} that fail to vanish.
    pub fn dd_failures(&self) -> Vec<String> {
        let mut out = Vec::new();
        for n in 1..=self.cap {
            let lower = self.boundary_columns(n);
            for (j, col) in self.boundary_columns(n + 1).iter().enumerate() {
                let mut acc = Accumulator::new(self.chain_dims[n - 1]);
                for (k, x) in col {
                    for (i, y) in &lower[*k] {
                        acc.add(*i, &(x * y));
                    }
                }
                if acc.pop_nonzero().is_some() {
                    out.push(format!("b_{n}∘b_{} ≠ 0 on basis chain {j}", n + 1));
                    break;
                }
            }
        }
        out
    }

    pub fn dd_report(&self) -> Report {
        Report::from_failures(
            format!("b∘b = 0 for {} up to degree {}", self.coefficients.name(), self.cap + 1),
            self.dd_failures(),
        )
    }

    /// HH_0 … HH_cap.
    pub fn homology_dims(&self) -> Vec<usize> {
        let mut ranks = vec![0usize; self.cap + 2];
        for n in 1..=self.cap {
            ranks[n] = rank_of(self.chain_dims[n - 1], self.boundary_columns(n).iter().cloned(), usize::MAX);
        }
        let top = self.cap + 1;
        let kernel_top = self.chain_dims[self.cap] - ranks[self.cap];
        ranks[top] = rank_of(self.chain_dims[top - 1], self.boundary_columns(top).iter().cloned(), kernel_top);
        (0..=self.cap).map(|n| self.chain_dims[n] - ranks[n] - ranks[n + 1]).collect()
    }
}

pub fn hochschild_boundary(m: &Bimodule, n: usize) -> Result<Matrix> {
    assert!(n >= 1, "degree must be at least 1");
    let a = endo_algebra(m)?;
    Ok(Matrix::from_sparse_columns(m.dim() * a.dim().pow(n as u32 - 1), &boundary_columns(&a, m, n)))
}

pub fn hh_dims(m: &Bimodule, cap: usize) -> Result<Vec<usize>> {
    Ok(HochschildComplex::new(m, cap)?.homology_dims())
}

/// ⟨M_0 ⊙ … ⊙ M_{n−1}⟩ realized as the cyclic quotient of M_0 ⊗ … ⊗ M_{n−1}.
/// A single factor gives HH₀(A; M).
#[derive(Clone, Debug)]
pub struct HH0Space {
    pub factors: Vec<Bimodule>,
    pub index: ChainIndex,
    pub carrier: Arc<QuotientSpace>,
}

impl HH0Space {
    pub fn dim(&self) -> usize {
        self.carrier.quotient_dim()
    }

    pub fn class_of(&self, digits: &[usize]) -> SparseVec {
        self.carrier.project_basis(self.index.encode(digits))
    }

    pub fn project(&self, v: &[(usize, Scalar)]) -> SparseVec {
        sparse::from_dense(&self.carrier.project(v))
    }

    /// Ambient words representing the basis classes.
    pub fn basis_representatives(&self) -> Vec<Vec<usize>> {
        self.carrier.basis_columns().iter().map(|&w| self.index.decode(w)).collect()
    }
}

pub fn shadow(factors: &[Bimodule]) -> Result<HH0Space> {
    let (index, q) = chain_carrier(factors, true)?;
    Ok(HH0Space {
        factors: factors.to_vec(),
        index,
        carrier: Arc::new(q),
    })
}

pub fn hh0(m: &Bimodule) -> Result<HH0Space> {
    endo_algebra(m)?;
    shadow(std::slice::from_ref(m))
}

pub fn hh0_induced(f: &BimoduleMap, src: &HH0Space, dst: &HH0Space) -> Result<Matrix> {
    induced_on_quotient(&f.matrix, &src.carrier, &dst.carrier)
}

/// ⟨(M_0⊙…).result⟩ → ⟨M_0, …⟩: a basis class goes to its representative word.
pub fn composite_to_shadow(cm: &CompositeBimodule, src: &HH0Space, dst: &HH0Space) -> Result<Matrix> {
    let reps = cm.carrier.basis_columns().to_vec();
    descend(&src.carrier, &dst.carrier, |q| sparse::unit(reps[q]), "composite to cyclic shadow")
}

/// ⟨M_0, …⟩ → ⟨(M_0⊙…).result⟩.
pub fn shadow_to_composite(cm: &CompositeBimodule, src: &HH0Space, dst: &HH0Space) -> Result<Matrix> {
    descend(&src.carrier, &dst.carrier, |w| cm.carrier.project_basis(w), "cyclic shadow to composite")
}

/// ⟨M_0, …, M_{n−1}⟩ → ⟨M_k, …, M_{n−1}, M_0, …, M_{k−1}⟩.
pub fn rotate_shadow(src: &HH0Space, dst: &HH0Space, k: usize) -> Result<Matrix> {
    let n = src.factors.len();
    descend(
        &src.carrier,
        &dst.carrier,
        |w| {
            let d = src.index.decode(w);
            let rotated: Vec<usize> = (0..n).map(|t| d[(t + k) % n]).collect();
            sparse::unit(dst.index.encode(&rotated))
        },
        "shadow rotation",
    )
}

/// θ: ⟨M⊙N⟩ → ⟨N⊙M⟩ induced by m⊗n ↦ n⊗m.
pub fn shadow_iso(m: &Bimodule, n: &Bimodule) -> Result<Matrix> {
    let mn = compose(m, n)?;
    let nm = compose(n, m)?;
    shadow_iso_on(&mn, &nm)
}

pub fn shadow_iso_on(mn: &CompositeBimodule, nm: &CompositeBimodule) -> Result<Matrix> {
    let h_mn = hh0(&mn.result)?;
    let h_nm = hh0(&nm.result)?;
    let s_mn = shadow(&mn.factors)?;
    let s_nm = shadow(&nm.factors)?;
    let a = composite_to_shadow(mn, &h_mn, &s_mn)?;
    let r = rotate_shadow(&s_mn, &s_nm, 1)?;
    let b = shadow_to_composite(nm, &s_nm, &h_nm)?;
    Ok(b.mul(&r).mul(&a))
}

/// [x]⊗[y] ↦ [x⊗y]: HH₀(A)⊗HH₀(B) → HH₀(A⊗B), on the chosen quotient bases.
pub fn kunneth0(a: &Algebra, b: &Algebra) -> Result<Matrix> {
    let ha = hh0(&unit_bimodule(a))?;
    let hb = hh0(&unit_bimodule(b))?;
    let ab = tensor_algebra(a, b)?;
    let hab = hh0(&unit_bimodule(&ab))?;
    let mut out = Matrix::zeros(hab.dim(), ha.dim() * hb.dim());
    for (i, &x) in ha.carrier.basis_columns().iter().enumerate() {
        for (j, &y) in hb.carrier.basis_columns().iter().enumerate() {
            for (k, v) in hab.carrier.project_basis(x * b.dim() + y) {
                out[(k, i * hb.dim() + j)] = v;
            }
        }
    }
    if !linalg::is_invertible(&out) {
        return Err(Error::invalid("kunneth0", format!("not invertible for {} ⊗ {}", a.name(), b.name())));
    }
    Ok(out)
}

/// HH₀(A⊗B) → HH₀(B⊗A) induced by x⊗y ↦ y⊗x, computed as K_{B,A} ∘ swap ∘ K_{A,B}⁻¹.
pub fn kunneth_swap(a: &Algebra, b: &Algebra) -> Result<Matrix> {
    let kab = kunneth0(a, b)?;
    let kba = kunneth0(b, a)?;
    let ha = hh0(&unit_bimodule(a))?.dim();
    let hb = hh0(&unit_bimodule(b))?.dim();
    let mut swap = Matrix::zeros(ha * hb, ha * hb);
    for i in 0..ha {
        for j in 0..hb {
            swap[(j * ha + i, i * hb + j)] = Scalar::one();
        }
    }
    Ok(kba.mul(&swap).mul(&linalg::inverse(&kab).expect("kunneth0 checks invertibility")))
}

fn matrices_agree(claim: String, lhs: Result<Matrix>, rhs: Result<Matrix>) -> Report {
    match (lhs, rhs) {
        (Ok(l), Ok(r)) if l == r => Report::pass(claim),
        (Ok(l), Ok(r)) => Report::new(claim, false, Some(json!({ "lhs": matrix_json(&l), "rhs": matrix_json(&r) }))),
        (Err(e), _) | (_, Err(e)) => Report::new(claim, false, Some(json!({ "failures": [e.to_string()] }))),
    }
}

/// Hexagon for θ and the associator on ⟨M⊙N⊙P⟩, the unit triangle on ⟨X⊙U⟩
/// with X = M⊙N⊙P, and θ_{N⊙P,M}∘θ_{M,N⊙P} = id.
pub fn verify_shadow_axioms(samples: &[(Bimodule, Bimodule, Bimodule)]) -> Report {
    let mut parts = Vec::new();
    for (m, n, p) in samples {
        let tag = format!("({}, {}, {})", m.name(), n.name(), p.name());
        parts.push(hexagon(m, n, p, &tag));
        parts.push(unit_triangle(m, n, p, &tag));
        parts.push(theta_involution(m, n, p, &tag));
    }
    Report::all("shadow axioms", parts)
}

fn hh0_of_map(f: &BimoduleMap) -> Result<Matrix> {
    hh0_induced(f, &hh0(&f.src)?, &hh0(&f.dst)?)
}

fn hexagon(m: &Bimodule, n: &Bimodule, p: &Bimodule, tag: &str) -> Report {
    let run = || -> Result<(Matrix, Matrix)> {
        // upper: ⟨(MN)P⟩ →θ ⟨P(MN)⟩ →α⁻¹ ⟨(PM)N⟩ →θ ⟨N(PM)⟩
        let (mn_p, m_np, a1) = associator(m, n, p)?;
        let (pm_n, p_mn, a2) = associator(p, m, n)?;
        let (np_m, n_pm, a3) = associator(n, p, m)?;
        let mn_p_rev = compose(p, &mn_p.factors[0])?;
        let t1 = shadow_iso_on(&mn_p, &mn_p_rev)?;
        // re-express ⟨P⊙(M⊙N)⟩ built from the same factors as the associator's target
        let fix = hh0_of_map(&same_object(&mn_p_rev.result, &p_mn.result)?)?;
        let a2_inv = hh0_of_map(&a2.inverse().ok_or_else(|| Error::invalid("associator", "not invertible"))?)?;
        let pm_n_rev = compose(&pm_n.factors[1], &pm_n.factors[0])?;
        let t2 = shadow_iso_on(&pm_n, &pm_n_rev)?;
        let fix2 = hh0_of_map(&same_object(&pm_n_rev.result, &n_pm.result)?)?;
        let upper = fix2.mul(&t2).mul(&a2_inv).mul(&fix).mul(&t1);
        // lower: ⟨(MN)P⟩ →α ⟨M(NP)⟩ →θ ⟨(NP)M⟩ →α ⟨N(PM)⟩
        let m_np_rev = compose(&m_np.factors[1], &m_np.factors[0])?;
        let t3 = shadow_iso_on(&m_np, &m_np_rev)?;
        let fix3 = hh0_of_map(&same_object(&m_np_rev.result, &np_m.result)?)?;
        let lower = hh0_of_map(&a3)?.mul(&fix3).mul(&t3).mul(&hh0_of_map(&a1)?);
        Ok((upper, lower))
    };
    match run() {
        Ok((u, l)) => matrices_agree(format!("shadow hexagon on {tag}"), Ok(u), Ok(l)),
        Err(e) => Report::new(format!("shadow hexagon on {tag}"), false, Some(json!({ "failures": [e.to_string()] }))),
    }
}

/// Two composites of the same factors built separately share carriers, so the identity matrix is the canonical map.
fn same_object(x: &Bimodule, y: &Bimodule) -> Result<BimoduleMap> {
    BimoduleMap::new(x.clone(), y.clone(), Matrix::identity(x.dim()))
}

fn unit_triangle(m: &Bimodule, n: &Bimodule, p: &Bimodule, tag: &str) -> Report {
    let run = || -> Result<(Matrix, Matrix)> {
        let x = compose(&compose(m, n)?.result, p)?.result;
        let u = unit_bimodule(x.right_alg());
        let xu = compose(&x, &u)?;
        let ux = compose(&u, &x)?;
        let theta = shadow_iso_on(&xu, &ux)?;
        let l = hh0_of_map(&left_unitor(&ux)?)?;
        let r = hh0_of_map(&right_unitor(&xu)?)?;
        Ok((l.mul(&theta), r))
    };
    let claim = format!("shadow unit triangle on {tag}");
    match run() {
        Ok((a, b)) => matrices_agree(claim, Ok(a), Ok(b)),
        Err(e) => Report::new(claim, false, Some(json!({ "failures": [e.to_string()] }))),
    }
}

fn theta_involution(m: &Bimodule, n: &Bimodule, p: &Bimodule, tag: &str) -> Report {
    let run = || -> Result<Matrix> {
        let np = compose(n, p)?.result;
        let a = compose(m, &np)?;
        let b = compose(&np, m)?;
        Ok(shadow_iso_on(&b, &a)?.mul(&shadow_iso_on(&a, &b)?))
    };
    let claim = format!("θ∘θ = id on {tag}");
    match run() {
        Ok(t) if t.is_identity() => Report::pass(claim),
        Ok(t) => Report::new(claim, false, Some(json!({ "composite": matrix_json(&t) }))),
        Err(e) => Report::new(claim, false, Some(json!({ "failures": [e.to_string()] }))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{cyclic_group_algebra, ground_field, matrix_algebra, s3_algebra, Field};
    use crate::duality::right_dual_witness;
    use crate::library::module;

    #[test]
    fn boundary_examples() {
        let uk = unit_bimodule(&ground_field(Field::Q));
        assert_eq!(hochschild_boundary(&uk, 1).unwrap(), Matrix::zeros(1, 1));
        let u = unit_bimodule(&s3_algebra());
        let c = HochschildComplex::new(&u, 1).unwrap();
        assert!(c.boundary(1).mul(&c.boundary(2)).is_zero());
        let um = unit_bimodule(&matrix_algebra(2));
        assert_eq!(linalg::rank(&hochschild_boundary(&um, 1).unwrap()), 3);
    }

    #[test]
    fn hh_dims_examples() {
        assert_eq!(hh_dims(&unit_bimodule(&ground_field(Field::Q)), 2).unwrap(), vec![1, 0, 0]);
        assert_eq!(hh_dims(&unit_bimodule(&cyclic_group_algebra(2)), 2).unwrap(), vec![2, 0, 0]);
        assert_eq!(hh_dims(&unit_bimodule(&s3_algebra()), 2).unwrap(), vec![3, 0, 0]);
        // Q[x]/x² is not separable: HH_1 and HH_2 survive
        let d = hh_dims(&unit_bimodule(&crate::algebra::truncated_polynomial(2)), 2).unwrap();
        assert_eq!(d, vec![2, 1, 1]);
    }

    #[test]
    fn hh0_examples() {
        assert_eq!(hh0(&unit_bimodule(&ground_field(Field::Q))).unwrap().dim(), 1);
        let h = hh0(&unit_bimodule(&matrix_algebra(2))).unwrap();
        assert_eq!(h.dim(), 1);
        assert_eq!(h.class_of(&[0]), vec![(0, Scalar::one())]);
        assert_eq!(hh0(&unit_bimodule(&s3_algebra())).unwrap().dim(), 3);
    }

    #[test]
    fn hh0_induced_examples() {
        let a = cyclic_group_algebra(2);
        let u = unit_bimodule(&a);
        let h = hh0(&u).unwrap();
        let id = BimoduleMap::identity(&u);
        assert!(hh0_induced(&id, &h, &h).unwrap().is_identity());
        let two = Scalar::from_i64(2);
        assert_eq!(hh0_induced(&id.scaled(&two), &h, &h).unwrap(), Matrix::scalar(2, &two));
        // multiplication by g swaps the classes 1 and g
        let g = BimoduleMap::new(u.clone(), u.clone(), a.left_mult_matrix(&[(1, Scalar::one())])).unwrap();
        assert_eq!(hh0_induced(&g, &h, &h).unwrap(), Matrix::from_i64(&[&[0, 1], &[1, 0]]));
    }

    #[test]
    fn shadow_iso_examples() {
        let uk = unit_bimodule(&ground_field(Field::Q));
        assert!(shadow_iso(&uk, &uk).unwrap().is_identity());
        let v = module("Vstd").unwrap();
        let dp = right_dual_witness(&v).unwrap();
        let t = shadow_iso(&v, &dp.dual).unwrap();
        let back = shadow_iso(&dp.dual, &v).unwrap();
        assert!(back.mul(&t).is_identity());
        assert!(linalg::is_invertible(&t));
    }

    #[test]
    fn kunneth_examples() {
        let k = ground_field(Field::Q);
        assert!(kunneth0(&k, &k).unwrap().is_identity());
        assert_eq!(kunneth0(&s3_algebra(), &matrix_algebra(2)).unwrap().rows(), 3);
        assert_eq!(kunneth0(&cyclic_group_algebra(2), &cyclic_group_algebra(2)).unwrap().rows(), 4);
    }

    #[test]
    fn shadow_axioms_examples() {
        let uk = unit_bimodule(&ground_field(Field::Q));
        let v = module("Vstd").unwrap();
        let dp = right_dual_witness(&v).unwrap();
        let um = unit_bimodule(&matrix_algebra(2));
        let r = verify_shadow_axioms(&[
            (uk.clone(), uk.clone(), uk),
            (v, dp.dual.clone(), unit_bimodule(&s3_algebra())),
            (um.clone(), um.clone(), um),
        ]);
        assert!(r.pass, "{r:?}");
    }
}
