//! Twisted traces, Euler characteristics, scalar traces and the HH₀ pairing.

use serde::Serialize;
use serde_json::{json, Value};

use crate::algebra::{ground_field, Algebra};
use crate::bimodule::{canonical_cells, compose, left_unitor, right_unitor, serre_dual, serre_dual_map, unit_bimodule, Bimodule, BimoduleMap};
use crate::duality::{apply_sparse, right_dual_witness, separability_idempotent, DualPair};
use crate::error::{Error, Result};
use crate::hochschild::{hh0, hh0_induced, hh_dims, kunneth0, rotate_shadow, shadow, HH0Space};
use crate::linalg::sparse::{self, SparseVec};
use crate::linalg::{self, descend, Matrix, Scalar};
use crate::report::{matrix_json, Report};

/// A linear map HH₀(P) → HH₀(Q) on the deterministic quotient bases.
#[derive(Clone, Debug)]
pub struct TraceMap {
    pub src: HH0Space,
    pub dst: HH0Space,
    pub matrix: Matrix,
    /// The dual pair and carriers the map was computed from.
    pub via: String,
}

impl TraceMap {
    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        self.matrix.mul_vec(v)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "via": self.via,
            "src_basis": basis_labels(&self.src),
            "dst_basis": basis_labels(&self.dst),
            "matrix": matrix_json(&self.matrix),
        })
    }
}

/// Labels for the representative words of an HH₀ basis. Unit bimodules use
/// the algebra's basis labels; other factors use `name#index`.
pub fn basis_labels(h: &HH0Space) -> Vec<String> {
    h.basis_representatives()
        .iter()
        .map(|word| {
            word.iter()
                .zip(&h.factors)
                .map(|(&d, f)| {
                    let a = f.left_alg();
                    if f.name() == format!("U_{}", a.name()) && a.labels().len() == a.dim() {
                        a.label(d).to_string()
                    } else {
                        format!("{}#{d}", f.name())
                    }
                })
                .collect::<Vec<_>>()
                .join("⊗")
        })
        .collect()
}

fn check_endo(f: &BimoduleMap) -> Result<()> {
    if !f.is_endomorphism() {
        return Err(Error::invalid("trace", format!("{} → {} is not an endomorphism", f.src.name(), f.dst.name())));
    }
    Ok(())
}

/// ⟨P⟩ → ⟨P⊙M⊙N⟩ → ⟨M⊙Q⊙N⟩ → ⟨N⊙M⊙Q⟩ → ⟨Q⟩ for f: P⊙M → M⊙Q.
pub fn twisted_trace(f: &BimoduleMap, dp: &DualPair, p: &Bimodule, q: &Bimodule) -> Result<TraceMap> {
    let (m, n) = (&dp.m, &dp.dual);
    let pm = compose(p, m)?;
    let mq = compose(m, q)?;
    if !f.src.same_shape(&pm.result) || !f.dst.same_shape(&mq.result) {
        return Err(Error::AlgebraMismatch(format!(
            "2-cell {} → {} does not match {}⊙{} → {}⊙{}",
            f.src.name(),
            f.dst.name(),
            p.name(),
            m.name(),
            m.name(),
            q.name()
        )));
    }
    let hp = hh0(p)?;
    let hq = hh0(q)?;
    let s1 = shadow(&[p.clone(), m.clone(), n.clone()])?;
    let s2 = shadow(&[m.clone(), q.clone(), n.clone()])?;
    let s3 = shadow(&[n.clone(), m.clone(), q.clone()])?;
    let nd = n.dim();
    let coev = dp.coev_unit_ambient();

    // x ↦ x ⊗ η(1)
    let a1 = descend(
        &hp.carrier,
        &s1.carrier,
        |x| sparse::normalize(coev.iter().map(|(w, c)| (s1.index.encode(&[x, w / nd, w % nd]), c.clone())).collect()),
        "P → P⊙M⊙N",
    )?;
    // f ⊙ id_N, with f's output lifted to representative words of M⊗Q
    let mut images: Vec<Option<Vec<(usize, usize, Scalar)>>> = vec![None; p.dim() * m.dim()];
    let a2 = descend(
        &s1.carrier,
        &s2.carrier,
        |w| {
            let d = s1.index.decode(w);
            let slot = d[0] * m.dim() + d[1];
            let img = images[slot].get_or_insert_with(|| {
                let out = apply_sparse(&f.matrix, &pm.class_of(&d[..2]));
                out.into_iter()
                    .map(|(k, c)| {
                        let r = mq.representative(k);
                        (r[0], r[1], c)
                    })
                    .collect()
            });
            sparse::normalize(img.iter().map(|(s, y, c)| (s2.index.encode(&[*s, *y, d[2]]), c.clone())).collect())
        },
        "f ⊙ id",
    )?;
    let a3 = rotate_shadow(&s2, &s3, 2)?;
    // φ ⊗ x ⊗ y ↦ ε(φ ⊗ x)·y
    let lq: Vec<Vec<SparseVec>> = (0..q.left_alg().dim()).map(|c| q.left_matrix(c).sparse_columns()).collect();
    let a4 = descend(
        &s3.carrier,
        &hq.carrier,
        |w| {
            let d = s3.index.decode(w);
            let mut out = Vec::new();
            for (c, b) in dp.ev_word(d[0], d[1]) {
                out.extend(lq[c][d[2]].iter().map(|(i, y)| (*i, y * &b)));
            }
            sparse::normalize(out)
        },
        "ε ⊙ id",
    )?;
    let matrix = a4.mul(&a3).mul(&a2).mul(&a1);
    Ok(TraceMap {
        src: hp,
        dst: hq,
        matrix,
        via: format!("twisted trace through ({}, {})", m.name(), n.name()),
    })
}

/// tr(f): HH₀(A) → HH₀(B) for an endomorphism f of M, through ⟨M⊙N⟩ and ⟨N⊙M⟩.
pub fn endo_trace(f: &BimoduleMap, dp: &DualPair) -> Result<TraceMap> {
    check_endo(f)?;
    let (m, n) = (&dp.m, &dp.dual);
    if !f.src.same_shape(m) {
        return Err(Error::AlgebraMismatch(format!("{} is not an endomorphism of {}", f.src.name(), m.name())));
    }
    let ha = hh0(&unit_bimodule(m.left_alg()))?;
    let hb = hh0(&unit_bimodule(m.right_alg()))?;
    let s_mn = shadow(&[m.clone(), n.clone()])?;
    let s_nm = shadow(&[n.clone(), m.clone()])?;
    let coev = &dp.coev.matrix;
    let a1 = descend(&ha.carrier, &s_mn.carrier, |a| dp.mn.carrier.lift(&coev.column(a)), "η")?;
    let fc = f.matrix.sparse_columns();
    let nd = n.dim();
    // x_s ⊗ φ_j ↦ φ_j ⊗ f(x_s)
    let a2 = descend(
        &s_mn.carrier,
        &s_nm.carrier,
        |w| fc[w / nd].iter().map(|(t, c)| (s_nm.index.encode(&[w % nd, *t]), c.clone())).collect(),
        "f ⊙ id then θ",
    )?;
    let md = m.dim();
    let a3 = descend(&s_nm.carrier, &hb.carrier, |w| dp.ev_word(w / md, w % md), "ε")?;
    Ok(TraceMap {
        src: ha,
        dst: hb,
        matrix: a3.mul(&a2).mul(&a1),
        via: format!("trace through ({}, {})", m.name(), n.name()),
    })
}

/// An endomorphism f of M as the 2-cell U_A⊙M → M → M → M⊙U_B.
pub fn unit_cell(f: &BimoduleMap) -> Result<BimoduleMap> {
    check_endo(f)?;
    let m = &f.src;
    let um = compose(&unit_bimodule(m.left_alg()), m)?;
    let mu = compose(m, &unit_bimodule(m.right_alg()))?;
    let r = right_unitor(&mu)?.inverse().ok_or_else(|| Error::invalid("right unitor", "not invertible"))?;
    left_unitor(&um)?.then(f)?.then(&r)
}

/// χ(M) = tr(id_M).
pub fn euler_characteristic(m: &Bimodule) -> Result<TraceMap> {
    euler_characteristic_with(&right_dual_witness(m)?)
}

pub fn euler_characteristic_with(dp: &DualPair) -> Result<TraceMap> {
    endo_trace(&BimoduleMap::identity(&dp.m), dp)
}

/// tr(f) on its own right dual.
pub fn trace_of(f: &BimoduleMap) -> Result<TraceMap> {
    endo_trace(f, &right_dual_witness(&f.src)?)
}

/// tr(⊏f⊐): HH₀(B^op) → HH₀(A^op).
pub fn serre_trace(f: &BimoduleMap) -> Result<TraceMap> {
    let g = serre_dual_map(f)?;
    endo_trace(&g, &right_dual_witness(&g.src)?)
}

#[derive(Clone, Debug, Serialize)]
pub struct ScalarTrace {
    pub value: Scalar,
    pub hh_dims: Vec<usize>,
    /// True when HH_1 … HH_cap vanish, so the value is the full graded trace.
    pub higher_vanish: bool,
}

impl ScalarTrace {
    pub fn warning(&self) -> Option<&'static str> {
        (!self.higher_vanish).then_some("higher HH nonvanishing: scalar trace is degree-0 only")
    }
}

pub fn scalar_trace(f: &BimoduleMap, m: &Bimodule) -> Result<ScalarTrace> {
    scalar_trace_with_cap(f, m, 2)
}

/// Trace of ⟨f⟩ on HH₀(A; M), with HH_1 … HH_cap reported alongside.
pub fn scalar_trace_with_cap(f: &BimoduleMap, m: &Bimodule, cap: usize) -> Result<ScalarTrace> {
    check_endo(f)?;
    if !f.src.same_shape(m) {
        return Err(Error::AlgebraMismatch(format!("{} is not an endomorphism of {}", f.src.name(), m.name())));
    }
    let h = hh0(m)?;
    let value = hh0_induced(f, &h, &h)?.trace();
    let dims = hh_dims(m, cap)?;
    let higher_vanish = dims.iter().skip(1).all(|&d| d == 0);
    Ok(ScalarTrace {
        value,
        hh_dims: dims,
        higher_vanish,
    })
}

/// The copairing k → HH₀(A)⊗HH₀(A^op) and pairing HH₀(A)⊗HH₀(A^op) → k,
/// both stored as dim HH₀(A) × dim HH₀(A^op) matrices (left factor indexes rows).
#[derive(Clone, Debug)]
pub struct PairingData {
    pub algebra: Algebra,
    pub opposite: Algebra,
    pub hh: HH0Space,
    pub hh_op: HH0Space,
    pub copair: Matrix,
    pub pair: Matrix,
}

impl PairingData {
    /// Both contractions of copair against pair give identities.
    pub fn snake_report(&self) -> Report {
        let claim = format!("snake identities for the pairing of {}", self.algebra.name());
        let left = self.copair.mul(&self.pair.transpose());
        let right = self.copair.transpose().mul(&self.pair);
        let mut failures = Vec::new();
        if !left.is_identity() {
            failures.push(format!("contraction on HH₀({}) is not the identity", self.algebra.name()));
        }
        if !right.is_identity() {
            failures.push(format!("contraction on HH₀({}) is not the identity", self.opposite.name()));
        }
        if failures.is_empty() {
            Report::pass(claim)
        } else {
            Report::new(
                claim,
                false,
                Some(json!({ "failures": failures, "left": matrix_json(&left), "right": matrix_json(&right) })),
            )
        }
    }

    /// pair(x ⊗ y) for coordinate vectors.
    pub fn pair_vectors(&self, x: &[Scalar], y: &[Scalar]) -> Scalar {
        let py = self.pair.mul_vec(y);
        x.iter().zip(&py).map(|(a, b)| a * b).sum()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "algebra": self.algebra.name(),
            "hh_basis": basis_labels(&self.hh),
            "hh_op_basis": basis_labels(&self.hh_op),
            "copair": matrix_json(&self.copair),
            "pair": matrix_json(&self.pair),
        })
    }
}

fn reshape(v: &[Scalar], rows: usize, cols: usize) -> Matrix {
    Matrix::from_vec(rows, cols, v.to_vec())
}

/// Copairing from χ(C_A), pairing from χ(E_A), both transported through Künneth.
pub fn pairing_copairing(a: &Algebra) -> Result<PairingData> {
    separability_idempotent(a)?;
    let (a_op, c, e) = canonical_cells(a);
    let hh = hh0(&unit_bimodule(a))?;
    let hh_op = hh0(&unit_bimodule(&a_op))?;
    let (h, h2) = (hh.dim(), hh_op.dim());

    let chi_c = euler_characteristic(&c)?;
    let k_aa = kunneth0(a, &a_op)?;
    let k_inv = linalg::inverse(&k_aa).expect("kunneth0 checks invertibility");
    let copair = reshape(&k_inv.mul_vec(&chi_c.matrix.column(0)), h, h2);

    let chi_e = euler_characteristic(&e)?;
    let row = chi_e.matrix.mul(&kunneth0(&a_op, a)?);
    // HH₀(A)⊗HH₀(A^op) → HH₀(A^op)⊗HH₀(A): (i, j) ↦ (j, i)
    let mut pair = Matrix::zeros(h, h2);
    for i in 0..h {
        for j in 0..h2 {
            pair[(i, j)] = row[(0, j * h + i)].clone();
        }
    }
    let data = PairingData {
        algebra: a.clone(),
        opposite: a_op,
        hh,
        hh_op,
        copair,
        pair,
    };
    let rep = data.snake_report();
    if !rep.pass {
        return Err(Error::invalid("pairing", rep.failures().join("; ")));
    }
    Ok(data)
}

/// The pairing read directly off the E-action: [x]⊗[y^op] ↦ tr(a ↦ y·a·x).
pub fn pairing_by_action_trace(a: &Algebra, hh: &HH0Space, hh_op: &HH0Space) -> Matrix {
    let xs = hh.carrier.basis_columns();
    let ys = hh_op.carrier.basis_columns();
    let mut out = Matrix::zeros(xs.len(), ys.len());
    for (i, &x) in xs.iter().enumerate() {
        let rx = a.right_mult_matrix(&sparse::unit(x));
        for (j, &y) in ys.iter().enumerate() {
            out[(i, j)] = a.left_mult_matrix(&sparse::unit(y)).mul(&rx).trace();
        }
    }
    out
}

/// The Hattori–Stallings class of M over (k, A): χ(M) applied to 1.
pub fn eu_class(m: &Bimodule) -> Result<Vec<Scalar>> {
    eu_class_with(&right_dual_witness(m)?)
}

pub fn eu_class_with(dp: &DualPair) -> Result<Vec<Scalar>> {
    let k = ground_field(dp.m.left_alg().field());
    if dp.m.left_alg() != &k {
        return Err(Error::AlgebraMismatch(format!("{} is not a (k, A)-bimodule", dp.m.name())));
    }
    Ok(euler_characteristic_with(dp)?.matrix.column(0))
}

/// D(M) = ⊏Hom_A(M, A)⊐ over (k, A^op).
pub fn d_functor(m: &Bimodule) -> Result<Bimodule> {
    let k = ground_field(m.left_alg().field());
    if m.left_alg() != &k {
        return Err(Error::AlgebraMismatch(format!("{} is not a (k, A)-bimodule", m.name())));
    }
    let dp = right_dual_witness(m)?;
    Ok(serre_dual(&dp.dual).renamed(&format!("D({})", m.name())))
}

/// C_Aᵀ·tᵀ·P_B: the prediction for tr(⊏f⊐) from tr(f).
pub fn serre_transpose(t: &Matrix, pa: &PairingData, pb: &PairingData) -> Matrix {
    pa.copair.transpose().mul(&t.transpose()).mul(&pb.pair)
}

#[cfg(test)]
mod tests;
