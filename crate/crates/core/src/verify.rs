//! Exact verifiers for the trace identities, over explicit cases and the battery.
//!
//! Each verifier computes its two sides along separate routes: the left side
//! from HH₀ of a composite, the right side from traces and the pairing.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{ground_field, group_algebra, opposite, tensor_algebra, Algebra, Field};
use crate::bimodule::{
    canonical_cells, compose, compose_maps, direct_sum, find_isomorphism, gamma, hom_basis, hom_space, serre_dual, serre_dual_composite, serre_dual_map,
    tensor_k, tensor_k_maps, unit_bimodule, validate_bimodule, Bimodule, BimoduleMap, SerreReading,
};
use crate::duality::{compose_dual_pairs, one_dualizability_witness, right_dual_witness, separability_idempotent, verify_triangles};
use crate::error::{Error, Result};
use crate::hochschild::{hh0, kunneth0, kunneth_swap};
use crate::library;
use crate::linalg::{self, induced_on_quotient, Matrix, Scalar};
use crate::trace::{
    d_functor, endo_trace, eu_class, euler_characteristic, pairing_by_action_trace, pairing_copairing, scalar_trace_with_cap, serre_transpose, PairingData,
};

/// The data of one Riemann–Roch instance.
#[derive(Clone, Debug)]
pub struct VerificationCase {
    pub label: String,
    pub a: Algebra,
    pub b: Algebra,
    pub m: Bimodule,
    pub n: Bimodule,
    pub f: BimoduleMap,
    pub g: BimoduleMap,
    pub seed: u64,
}

impl VerificationCase {
    /// Validates m and n and the endomorphisms; `None` means the identity.
    pub fn new(label: &str, m: Bimodule, n: Bimodule, f: Option<Matrix>, g: Option<Matrix>) -> Result<VerificationCase> {
        for x in [&m, &n] {
            let rep = validate_bimodule(x);
            if !rep.pass {
                return Err(Error::invalid("case", format!("{label}: {}: {}", x.name(), rep.failures().join("; "))));
            }
        }
        let endo = |x: &Bimodule, mat: Option<Matrix>| match mat {
            None => Ok(BimoduleMap::identity(x)),
            Some(mat) => BimoduleMap::new(x.clone(), x.clone(), mat),
        };
        let f = endo(&m, f)?;
        let g = endo(&n, g)?;
        Ok(VerificationCase {
            label: label.to_string(),
            a: m.left_alg().clone(),
            b: m.right_alg().clone(),
            m,
            n,
            f,
            g,
            seed: 0,
        })
    }

    /// Same modules with seeded random endomorphisms.
    pub fn randomized(&self, seed: u64) -> Result<VerificationCase> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut out = self.clone();
        out.f = random_endomorphism(&self.m, &mut rng)?;
        out.g = random_endomorphism(&self.n, &mut rng)?;
        out.seed = seed;
        out.label = format!("{} seed {seed}", self.label);
        Ok(out)
    }
}

/// An integer combination (coefficients in [-3, 3]) of a hom-space basis.
pub fn random_endomorphism(m: &Bimodule, rng: &mut ChaCha8Rng) -> Result<BimoduleMap> {
    let basis = hom_basis(m, m)?;
    let mut mat = Matrix::zeros(m.dim(), m.dim());
    for b in &basis {
        mat.add_scaled(b, &Scalar::from_i64(rng.gen_range(-3i64..=3)));
    }
    BimoduleMap::new(m.clone(), m.clone(), mat)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Inequality,
    Hypothesis,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub case: String,
    pub theorem: String,
    pub lhs: Vec<String>,
    pub rhs: Vec<String>,
    pub pass: bool,
    pub status: Status,
    pub hypothesis: Option<String>,
    pub notes: Vec<String>,
}

impl VerificationReport {
    fn compare(case: &str, theorem: &str, lhs: Vec<String>, rhs: Vec<String>, notes: Vec<String>) -> VerificationReport {
        let pass = lhs == rhs;
        let status = if pass { Status::Pass } else { Status::Inequality };
        VerificationReport {
            case: case.into(),
            theorem: theorem.into(),
            lhs,
            rhs,
            pass,
            status,
            hypothesis: None,
            notes,
        }
    }

    fn failed(case: &str, theorem: &str, f: Failure) -> VerificationReport {
        let (status, hypothesis, notes) = match f {
            Failure::Hypothesis(h) => (Status::Hypothesis, Some(format!("hypothesis failed: {h}")), vec![]),
            Failure::Error(e) => (Status::Inequality, None, vec![e]),
        };
        VerificationReport {
            case: case.into(),
            theorem: theorem.into(),
            lhs: vec![],
            rhs: vec![],
            pass: false,
            status,
            hypothesis,
            notes,
        }
    }

    pub fn line(&self) -> String {
        match self.status {
            Status::Pass => format!("PASS {} [{}]", self.theorem, self.case),
            Status::Inequality => format!(
                "FAIL {} [{}]: lhs {:?} rhs {:?} {}",
                self.theorem,
                self.case,
                self.lhs,
                self.rhs,
                self.notes.join("; ")
            ),
            Status::Hypothesis => format!("SKIP {} [{}]: {}", self.theorem, self.case, self.hypothesis.as_deref().unwrap_or("")),
        }
    }
}

/// 0 when everything passes, 1 on any inequality, otherwise 2 on a missing hypothesis.
pub fn exit_code(reports: &[VerificationReport]) -> i32 {
    if reports.iter().any(|r| r.status == Status::Inequality) {
        1
    } else if reports.iter().any(|r| r.status == Status::Hypothesis) {
        2
    } else {
        0
    }
}

enum Failure {
    Hypothesis(String),
    Error(String),
}

/// Dualizability failures become hypothesis failures; anything else is an error.
fn need<T>(r: Result<T>, what: &str) -> std::result::Result<T, Failure> {
    r.map_err(|e| match e {
        Error::NotSeparable { .. } | Error::NotRightDualizable { .. } | Error::Hypothesis(_) => Failure::Hypothesis(format!("{what} ({e})")),
        other => Failure::Error(format!("{what}: {other}")),
    })
}

fn plain<T>(r: Result<T>) -> std::result::Result<T, Failure> {
    r.map_err(|e| Failure::Error(e.to_string()))
}

/// lhs, rhs and notes.
type Sides = (Vec<String>, Vec<String>, Vec<String>);

fn finish(case: &str, theorem: &str, r: std::result::Result<Sides, Failure>) -> VerificationReport {
    match r {
        Ok((l, r, notes)) => VerificationReport::compare(case, theorem, l, r, notes),
        Err(f) => VerificationReport::failed(case, theorem, f),
    }
}

/// pair_B ∘ (t_f ⊗ t_g) ∘ copair_A applied to 1.
pub fn pairing_sandwich(pa: &PairingData, pb: &PairingData, tf: &Matrix, tg: &Matrix) -> Scalar {
    let x = tf.mul(&pa.copair).mul(&tg.transpose());
    x.data().iter().zip(pb.pair.data()).map(|(a, b)| a * b).sum()
}

fn pairings(a: &Algebra, b: &Algebra) -> std::result::Result<(PairingData, PairingData), Failure> {
    let pa = need(pairing_copairing(a), &format!("2-dualizability of {}", a.name()))?;
    let pb = need(pairing_copairing(b), &format!("2-dualizability of {}", b.name()))?;
    Ok((pa, pb))
}

fn lhs_scalar(f: &BimoduleMap, g: &BimoduleMap, m: &Bimodule, n: &Bimodule, cap: usize) -> std::result::Result<(Scalar, Vec<String>), Failure> {
    let mn = plain(compose(m, n))?;
    let fg = plain(compose_maps(f, g, &mn, &mn))?;
    let s = plain(scalar_trace_with_cap(&fg, &mn.result, cap))?;
    let notes = s.warning().map(|w| vec![format!("{w}; HH dims {:?}", s.hh_dims)]).unwrap_or_default();
    Ok((s.value, notes))
}

/// tr⟨f⊙g⟩ on HH₀(A; M⊙N) against pair_B ∘ (tr f ⊗ tr ⊏g⊐) ∘ copair_A.
pub fn verify_rr1(case: &VerificationCase, cap: usize) -> VerificationReport {
    let run = || {
        if case.n.left_alg() != &case.b || case.n.right_alg() != &case.a {
            return Err(Failure::Error(format!(
                "{} is not a ({}, {})-bimodule",
                case.n.name(),
                case.b.name(),
                case.a.name()
            )));
        }
        let (pa, pb) = pairings(&case.a, &case.b)?;
        let dm = need(right_dual_witness(&case.m), &format!("right dual of {}", case.m.name()))?;
        let tf = plain(endo_trace(&case.f, &dm))?;
        let sg = plain(serre_dual_map(&case.g))?;
        let dn = need(right_dual_witness(&sg.src), &format!("right dual of {}", sg.src.name()))?;
        let tg = plain(endo_trace(&sg, &dn))?;
        let rhs = pairing_sandwich(&pa, &pb, &tf.matrix, &tg.matrix);
        let (lhs, notes) = lhs_scalar(&case.f, &case.g, &case.m, &case.n, cap)?;
        Ok((vec![lhs.to_string()], vec![rhs.to_string()], notes))
    };
    finish(&case.label, "rr1", run())
}

/// N over (A^op, B^op): tr⟨f⊙⊏g⊐⟩ against pair_B ∘ (tr f ⊗ tr g) ∘ copair_A.
pub fn verify_rr2(case: &VerificationCase, cap: usize) -> VerificationReport {
    let run = || {
        let (pa, pb) = pairings(&case.a, &case.b)?;
        if case.n.left_alg() != &pa.opposite || case.n.right_alg() != &pb.opposite {
            return Err(Failure::Error(format!(
                "{} is not over ({}, {})",
                case.n.name(),
                pa.opposite.name(),
                pb.opposite.name()
            )));
        }
        let dm = need(right_dual_witness(&case.m), &format!("right dual of {}", case.m.name()))?;
        let tf = plain(endo_trace(&case.f, &dm))?;
        let dn = need(right_dual_witness(&case.n), &format!("right dual of {}", case.n.name()))?;
        let tg = plain(endo_trace(&case.g, &dn))?;
        let rhs = pairing_sandwich(&pa, &pb, &tf.matrix, &tg.matrix);
        let sg = plain(serre_dual_map(&case.g))?;
        let (lhs, notes) = lhs_scalar(&case.f, &sg, &case.m, &sg.src, cap)?;
        Ok((vec![lhs.to_string()], vec![rhs.to_string()], notes))
    };
    finish(&case.label, "rr2", run())
}

/// dim Hom_A(m, n) against pair_A(eu(n) ⊗ eu(D m)) for right A-modules.
pub fn verify_hrr(a: &Algebra, m: &Bimodule, n: &Bimodule) -> VerificationReport {
    let case = format!("{}: ({}, {})", a.name(), m.name(), n.name());
    let run = || {
        let pa = need(pairing_copairing(a), "separability")?;
        for x in [m, n] {
            if x.right_alg() != a || x.left_alg().dim() != 1 {
                return Err(Failure::Error(format!("{} is not a right {}-module", x.name(), a.name())));
            }
        }
        let lhs = plain(hom_space(m, n))?.rows();
        let eu_n = need(eu_class(n), &format!("projectivity of {}", n.name()))?;
        let dm = need(d_functor(m), &format!("projectivity of {}", m.name()))?;
        let eu_dm = need(eu_class(&dm), &format!("projectivity of {}", dm.name()))?;
        let rhs = pa.pair_vectors(&eu_n, &eu_dm);
        Ok((vec![lhs.to_string()], vec![rhs.to_string()], vec![]))
    };
    finish(&case, "hrr", run())
}

/// χ(V) on the HH₀ class of each group element against tr ρ(g).
pub fn verify_character(table: &[Vec<usize>], reps: &[Bimodule]) -> Vec<VerificationReport> {
    let a = match group_algebra("G", table, (0..table.len()).map(|g| format!("g{g}")).collect()) {
        Ok(a) => a,
        Err(e) => return vec![VerificationReport::failed("group", "character", Failure::Error(e.to_string()))],
    };
    reps.iter()
        .map(|v| {
            let run = || {
                if v.left_alg() != &a || v.right_alg().dim() != 1 {
                    return Err(Failure::Error(format!("{} is not a (Q[G], Q)-bimodule", v.name())));
                }
                let chi = need(euler_characteristic(v), &format!("right dual of {}", v.name()))?;
                let mut lhs = Vec::new();
                let mut rhs = Vec::new();
                for g in 0..a.dim() {
                    let class = crate::linalg::sparse::to_dense(&chi.src.class_of(&[g]), chi.src.dim());
                    lhs.push(chi.apply(&class)[0].to_string());
                    rhs.push(v.left_matrix(g).trace().to_string());
                }
                Ok((lhs, rhs, vec![]))
            };
            finish(v.name(), "character", run())
        })
        .collect()
}

fn mat_str(m: &Matrix) -> String {
    let rows: Vec<String> = m
        .row_vecs()
        .iter()
        .map(|r| format!("[{}]", r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")))
        .collect();
    format!("[{}]", rows.join(","))
}

/// A as a left module over itself, as an (A, k)-bimodule.
pub fn left_regular_module(a: &Algebra) -> Bimodule {
    let k = ground_field(a.field());
    Bimodule::new(
        &format!("{}_reg", a.name()),
        a.clone(),
        k,
        a.dim(),
        (0..a.dim()).map(|i| a.left_mult_matrix(&crate::linalg::sparse::unit(i))).collect(),
        vec![Matrix::identity(a.dim())],
    )
}

/// A as a right module over itself, as a (k, A)-bimodule.
pub fn right_regular_module(a: &Algebra) -> Bimodule {
    let k = ground_field(a.field());
    Bimodule::new(
        &format!("{}_reg^r", a.name()),
        k,
        a.clone(),
        a.dim(),
        vec![Matrix::identity(a.dim())],
        (0..a.dim()).map(|i| a.right_mult_matrix(&crate::linalg::sparse::unit(i))).collect(),
    )
}

/// One check per sample; any failure in a sample is kept with its label.
fn per_sample<T>(
    theorem: &str,
    samples: &[T],
    label: impl Fn(&T) -> String,
    run: impl Fn(&T) -> std::result::Result<(String, String), Failure>,
) -> VerificationReport {
    let mut lhs = Vec::new();
    let mut rhs = Vec::new();
    let mut notes = Vec::new();
    let mut hypothesis = None;
    let mut errored = false;
    for s in samples {
        let tag = label(s);
        match run(s) {
            Ok((l, r)) => {
                lhs.push(format!("{tag}: {l}"));
                rhs.push(format!("{tag}: {r}"));
            }
            Err(Failure::Hypothesis(h)) => hypothesis = Some(format!("hypothesis failed: {tag}: {h}")),
            Err(Failure::Error(e)) => {
                errored = true;
                notes.push(format!("{tag}: {e}"));
            }
        }
    }
    let mut r = VerificationReport::compare("battery", theorem, lhs, rhs, notes);
    if errored {
        r.pass = false;
        r.status = Status::Inequality;
    } else if r.pass && hypothesis.is_some() {
        r.pass = false;
        r.status = Status::Hypothesis;
    }
    r.hypothesis = hypothesis;
    r
}

/// Sample endomorphisms are drawn from one generator per theorem, seeded by
/// the theorem's position so runs are reproducible.
fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

fn pairs(battery: &[Algebra], max_dim: usize) -> Vec<(Algebra, Algebra)> {
    let mut out = Vec::new();
    for (i, a) in battery.iter().enumerate() {
        for b in &battery[i + 1..] {
            if a.dim() > 1 && b.dim() > 1 && a.dim() * b.dim() <= max_dim {
                out.push((a.clone(), b.clone()));
            }
        }
    }
    out
}

/// tr(f₁⊙f₂) = tr(f₂)·tr(f₁) for U_A ⊙ A_reg.
pub fn check_composite_trace(battery: &[Algebra], seed: u64) -> VerificationReport {
    per_sample(
        "composite_trace",
        battery,
        |a| a.name().to_string(),
        |a| {
            let mut rng = rng_for(seed, 1);
            let m1 = unit_bimodule(a);
            let m2 = left_regular_module(a);
            let f1 = plain(random_endomorphism(&m1, &mut rng))?;
            let f2 = plain(random_endomorphism(&m2, &mut rng))?;
            let d1 = need(right_dual_witness(&m1), "right dual of U")?;
            let d2 = need(right_dual_witness(&m2), "right dual of the regular module")?;
            let d12 = plain(compose_dual_pairs(&d1, &d2))?;
            let mm = &d12.m;
            let cm = plain(compose(&m1, &m2))?;
            let f12 = plain(compose_maps(&f1, &f2, &cm, &cm))?;
            let f12 = plain(BimoduleMap::new(mm.clone(), mm.clone(), f12.matrix))?;
            let lhs = plain(endo_trace(&f12, &d12))?.matrix;
            let rhs = plain(endo_trace(&f2, &d2))?.matrix.mul(&plain(endo_trace(&f1, &d1))?.matrix);
            Ok((mat_str(&lhs), mat_str(&rhs)))
        },
    )
}

/// tr(f⊗g) = K_{k,k}·(tr f ⊗ tr g)·K_{A,B}⁻¹ on regular modules.
pub fn check_trace_monoidal(battery: &[Algebra], seed: u64) -> VerificationReport {
    let samples = pairs(battery, 24);
    per_sample(
        "trace_monoidal",
        &samples,
        |(a, b)| format!("{}⊗{}", a.name(), b.name()),
        |(a, b)| {
            let mut rng = rng_for(seed, 2);
            let (m, n) = (left_regular_module(a), left_regular_module(b));
            let f = plain(random_endomorphism(&m, &mut rng))?;
            let g = plain(random_endomorphism(&n, &mut rng))?;
            let fg = plain(tensor_k_maps(&f, &g))?;
            let lhs = plain(endo_trace(&fg, &need(right_dual_witness(&fg.src), "right dual of M⊗N")?))?.matrix;
            let tf = plain(endo_trace(&f, &need(right_dual_witness(&m), "right dual of M")?))?.matrix;
            let tg = plain(endo_trace(&g, &need(right_dual_witness(&n), "right dual of N")?))?.matrix;
            let k_in = plain(kunneth0(a, b))?;
            let rhs = tf.kron(&tg).mul(&linalg::inverse(&k_in).expect("checked invertible"));
            Ok((mat_str(&lhs), mat_str(&rhs)))
        },
    )
}

/// χ(Γ_{A,B}) = K_{B,A} ∘ swap ∘ K_{A,B}⁻¹.
pub fn check_gamma_symmetry(battery: &[Algebra], _seed: u64) -> VerificationReport {
    let samples = pairs(battery, 24);
    per_sample(
        "gamma_symmetry",
        &samples,
        |(a, b)| format!("Γ_{},{}", a.name(), b.name()),
        |(a, b)| {
            let g = plain(gamma(a, b))?;
            let lhs = plain(euler_characteristic(&g))?.matrix;
            let rhs = plain(kunneth_swap(a, b))?;
            Ok((mat_str(&lhs), mat_str(&rhs)))
        },
    )
}

/// The raw copairing Σ e_ij [x_i]⊗[y_j] from the separability idempotent, in HH₀(A)⊗HH₀(A^op).
pub fn raw_copairing(a: &Algebra, p: &PairingData) -> Result<Matrix> {
    let w = separability_idempotent(a)?;
    let d = a.dim();
    let mut out = Matrix::zeros(p.hh.dim(), p.hh_op.dim());
    for (ij, e) in w.idempotent.iter().enumerate() {
        if e.is_zero() {
            continue;
        }
        for (r, x) in p.hh.carrier.project_basis(ij / d) {
            for (c, y) in p.hh_op.carrier.project_basis(ij % d) {
                out[(r, c)] += &(e * &(&x * &y));
            }
        }
    }
    Ok(out)
}

/// χ(C_A) and χ(E_A) through Künneth equal the raw copairing and pairing.
pub fn check_ec_e_and_c(battery: &[Algebra], _seed: u64) -> VerificationReport {
    per_sample(
        "ec_e_and_c",
        battery,
        |a| a.name().to_string(),
        |a| {
            let p = need(pairing_copairing(a), "2-dualizability")?;
            let lhs = format!("copair {} pair {}", mat_str(&p.copair), mat_str(&p.pair));
            let raw_c = plain(raw_copairing(a, &p))?;
            let raw_p = pairing_by_action_trace(a, &p.hh, &p.hh_op);
            Ok((lhs, format!("copair {} pair {}", mat_str(&raw_c), mat_str(&raw_p))))
        },
    )
}

/// A⊗B is 1-dualizable, with coherence composites equal to identities.
pub fn check_one_dual_composites(battery: &[Algebra], _seed: u64) -> VerificationReport {
    let mut samples = pairs(battery, 8);
    samples.truncate(3);
    per_sample(
        "one_dual_composites",
        &samples,
        |(a, b)| format!("{}⊗{}", a.name(), b.name()),
        |(a, b)| {
            let ab = plain(tensor_algebra(a, b))?;
            let w = need(one_dualizability_witness(&ab), "1-dualizability")?;
            let rep = w.report();
            Ok((rep.pass.to_string(), "true".to_string()))
        },
    )
}

/// ⟨M⟩ ≅ ⟨⊏M⊐⟩ by the identity of the underlying space, natural in f;
/// the cell-built Serre dual is isomorphic to ⊏M⊐ on small samples.
pub fn check_serre_dual_shadow(battery: &[Algebra], seed: u64) -> VerificationReport {
    per_sample(
        "serre_dual_shadow",
        battery,
        |a| a.name().to_string(),
        |a| {
            let mut rng = rng_for(seed, 6);
            let m = unit_bimodule(a);
            let f = plain(random_endomorphism(&m, &mut rng))?;
            let sm = serre_dual(&m);
            let (h, hs) = (plain(hh0(&m))?, plain(hh0(&sm))?);
            let iso = plain(induced_on_quotient(&Matrix::identity(m.dim()), &h.carrier, &hs.carrier))?;
            let ff = plain(crate::hochschild::hh0_induced(&f, &h, &h))?;
            let sf = plain(serre_dual_map(&f))?;
            let sff = plain(crate::hochschild::hh0_induced(&sf, &hs, &hs))?;
            let mut lhs = format!("invertible {} natural {}", linalg::is_invertible(&iso), iso.mul(&ff) == sff.mul(&iso));
            let mut rhs = "invertible true natural true".to_string();
            if a.dim() <= 4 {
                let r = left_regular_module(a);
                let c = plain(serre_dual_composite(&r, SerreReading::Whiskered))?;
                lhs.push_str(&format!(" cells {}", find_isomorphism(&serre_dual(&r), &c.result).is_ok()));
                rhs.push_str(" cells true");
            }
            Ok((lhs, rhs))
        },
    )
}

/// tr(⊏f⊐) = C_Aᵀ·tr(f)ᵀ·P_k for the regular module.
pub fn check_serre_dual_trace(battery: &[Algebra], seed: u64) -> VerificationReport {
    per_sample(
        "serre_dual_trace",
        battery,
        |a| a.name().to_string(),
        |a| {
            let mut rng = rng_for(seed, 7);
            let m = left_regular_module(a);
            let f = plain(random_endomorphism(&m, &mut rng))?;
            let pa = need(pairing_copairing(a), "2-dualizability")?;
            let pk = need(pairing_copairing(m.right_alg()), "2-dualizability of k")?;
            let t = plain(endo_trace(&f, &need(right_dual_witness(&m), "right dual of M")?))?.matrix;
            let sf = plain(serre_dual_map(&f))?;
            let lhs = plain(endo_trace(&sf, &need(right_dual_witness(&sf.src), "right dual of ⊏M⊐")?))?.matrix;
            Ok((mat_str(&lhs), mat_str(&serre_transpose(&t, &pa, &pk))))
        },
    )
}

/// pair ∘ (tr f ⊗ tr g) ∘ copair = tr of id_C ⊙ (f⊗g) ⊙ id_Γ ⊙ id_E on the scalar composite.
pub fn check_main_pairing(battery: &[Algebra], seed: u64) -> VerificationReport {
    per_sample(
        "main_pairing",
        battery,
        |a| a.name().to_string(),
        |a| {
            let mut rng = rng_for(seed, 8);
            let k = ground_field(a.field());
            let (pa, pk) = pairings(a, &k)?;
            let m = left_regular_module(a);
            let n = serre_dual(&right_regular_module(a));
            let f = plain(random_endomorphism(&m, &mut rng))?;
            let g = plain(random_endomorphism(&n, &mut rng))?;
            let tf = plain(endo_trace(&f, &need(right_dual_witness(&m), "right dual of M")?))?.matrix;
            let tg = plain(endo_trace(&g, &need(right_dual_witness(&n), "right dual of N")?))?.matrix;
            let rhs = pairing_sandwich(&pa, &pk, &tf, &tg);

            let (_, c_a, _) = canonical_cells(a);
            let (_, _, e_k) = canonical_cells(&k);
            let gm = plain(gamma(&k, &opposite(&k)))?;
            let mn = plain(tensor_k(&m, &n))?;
            let fg = plain(tensor_k_maps(&f, &g))?;
            let mut acc = c_a.clone();
            let mut map = BimoduleMap::identity(&c_a);
            for (next, h) in [
                (mn.clone(), fg),
                (gm.clone(), BimoduleMap::identity(&gm)),
                (e_k.clone(), BimoduleMap::identity(&e_k)),
            ] {
                let c = plain(compose(&acc, &next))?;
                map = plain(compose_maps(&map, &h, &c, &c))?;
                acc = c.result;
            }
            let lhs = plain(scalar_trace_with_cap(&map, &acc, 0))?.value;
            Ok((lhs.to_string(), rhs.to_string()))
        },
    )
}

/// ⊏M⊐ is right dualizable with valid triangles when M is.
pub fn check_serre_dual_dualizable(battery: &[Algebra], _seed: u64) -> VerificationReport {
    per_sample(
        "serre_dual_dualizable",
        battery,
        |a| a.name().to_string(),
        |a| {
            need(separability_idempotent(a), "2-dualizability")?;
            let mut out = Vec::new();
            for m in [unit_bimodule(a), left_regular_module(a)] {
                need(right_dual_witness(&m), "right dual of M")?;
                let dp = need(right_dual_witness(&serre_dual(&m)), "right dual of ⊏M⊐")?;
                out.push(verify_triangles(&dp).pass.to_string());
            }
            Ok((out.join(","), "true,true".to_string()))
        },
    )
}

pub const STRUCTURAL_THEOREMS: &[&str] = &[
    "composite_trace",
    "trace_monoidal",
    "gamma_symmetry",
    "ec_e_and_c",
    "one_dual_composites",
    "serre_dual_shadow",
    "serre_dual_trace",
    "main_pairing",
    "serre_dual_dualizable",
];

pub fn structural_check(theorem: &str, battery: &[Algebra], seed: u64) -> Option<VerificationReport> {
    let f: fn(&[Algebra], u64) -> VerificationReport = match theorem {
        "composite_trace" => check_composite_trace,
        "trace_monoidal" => check_trace_monoidal,
        "gamma_symmetry" => check_gamma_symmetry,
        "ec_e_and_c" => check_ec_e_and_c,
        "one_dual_composites" => check_one_dual_composites,
        "serre_dual_shadow" => check_serre_dual_shadow,
        "serre_dual_trace" => check_serre_dual_trace,
        "main_pairing" => check_main_pairing,
        "serre_dual_dualizable" => check_serre_dual_dualizable,
        _ => return None,
    };
    Some(f(battery, seed))
}

/// All nine structural checks, run in parallel and returned in a fixed order.
pub fn verify_structural_suite(battery: &[Algebra], seed: u64) -> Vec<VerificationReport> {
    verify_structural(STRUCTURAL_THEOREMS, battery, seed)
}

/// The named structural checks, run in parallel and returned in the given order.
pub fn verify_structural(theorems: &[&str], battery: &[Algebra], seed: u64) -> Vec<VerificationReport> {
    std::thread::scope(|s| {
        let handles: Vec<_> = theorems
            .iter()
            .map(|t| s.spawn(move || structural_check(t, battery, seed).expect("known theorem")))
            .collect();
        handles.into_iter().map(|h| h.join().expect("verifier thread panicked")).collect()
    })
}

fn trivial_left(a: &Algebra) -> Result<Bimodule> {
    library::left_module(&format!("triv_{}", a.name()), a, (0..a.dim()).map(|_| Matrix::identity(1)).collect())
}

/// Small reducible left modules, so random endomorphisms are not scalars.
fn grid_left(a: &Algebra) -> Result<Bimodule> {
    match a.name() {
        "QS3" => direct_sum(&library::module("Vstd")?, &library::module("Vtriv")?),
        "M2" => direct_sum(&library::column_module(2)?, &library::column_module(2)?),
        "QC2" => direct_sum(&trivial_left(a)?, &library::cyclic_sign_module(2)?),
        _ if a.dim() == 1 => Ok(unit_bimodule(a)),
        _ => Ok(left_regular_module(a)),
    }
}

fn grid_right(a: &Algebra) -> Result<Bimodule> {
    match a.name() {
        "QS3" => direct_sum(&library::module("Vstd^r")?, &library::module("Vtriv^r")?),
        "M2" => direct_sum(&library::row_module(2)?, &library::row_module(2)?),
        "QC2" => {
            let sign = sign_right(a)?;
            direct_sum(&library::right_module("triv^r", a, vec![Matrix::identity(1); 2])?, &sign)
        }
        _ if a.dim() == 1 => Ok(unit_bimodule(a)),
        _ => Ok(right_regular_module(a)),
    }
}

fn sign_right(a: &Algebra) -> Result<Bimodule> {
    library::right_module("sign^r", a, vec![Matrix::identity(1), Matrix::from_i64(&[&[-1]])])
}

/// Riemann–Roch grid: (A, B) ∈ {QS3, M2, QC2} × {k, QC2}, identity and seeded
/// random endomorphisms. The second element of each pair is the rr2 variant.
pub fn rr_grid(seed: u64) -> Result<Vec<(VerificationCase, VerificationCase)>> {
    let mut out = Vec::new();
    let k = ground_field(Field::Q);
    for a_name in ["QS3", "M2", "QC2"] {
        let a = library::algebra(a_name)?;
        for b in [k.clone(), library::algebra("QC2")?] {
            let m = tensor_k(&grid_left(&a)?, &grid_right(&b)?)?;
            let n = tensor_k(&grid_left(&b)?, &grid_right(&a)?)?;
            let label = format!("{}→{}", a.name(), b.name());
            let c1 = VerificationCase::new(&label, m.clone(), n.clone(), None, None)?;
            let c2 = VerificationCase::new(&label, m, serre_dual(&n), None, None)?;
            let s = seed.wrapping_add(out.len() as u64);
            out.push((c1.randomized(s)?, c2.randomized(s)?));
            out.push((c1, c2));
        }
    }
    Ok(out)
}

/// Ordered pairs of irreducible right QS3-modules, then the M2 row module with itself.
pub fn hrr_grid() -> Result<Vec<(Algebra, Bimodule, Bimodule)>> {
    let s3 = library::algebra("QS3")?;
    let mut out = Vec::new();
    for m in ["Vtriv^r", "Vsign^r", "Vstd^r"] {
        for n in ["Vtriv^r", "Vsign^r", "Vstd^r"] {
            out.push((s3.clone(), library::module(m)?, library::module(n)?));
        }
    }
    out.push((library::algebra("M2")?, library::row_module(2)?, library::row_module(2)?));
    Ok(out)
}

/// Configuration of `verify suite`.
#[derive(Clone, Debug, Serialize, serde::Deserialize)]
pub struct SuiteConfig {
    pub battery: Vec<String>,
    pub seed: u64,
    pub degree_cap: usize,
    /// Theorem ids to run; empty means all of [`SUITE_THEOREMS`].
    #[serde(default)]
    pub cases: Vec<String>,
}

/// Every id `verify suite` knows, in run order.
pub const SUITE_THEOREMS: &[&str] = &[
    "character",
    "composite_trace",
    "trace_monoidal",
    "gamma_symmetry",
    "ec_e_and_c",
    "one_dual_composites",
    "serre_dual_shadow",
    "serre_dual_trace",
    "main_pairing",
    "serre_dual_dualizable",
    "rr1",
    "rr2",
    "hrr",
];

impl SuiteConfig {
    pub fn selects(&self, id: &str) -> bool {
        self.cases.is_empty() || self.cases.iter().any(|c| c == id)
    }
}

impl Default for SuiteConfig {
    fn default() -> SuiteConfig {
        SuiteConfig {
            battery: library::BATTERY.iter().map(|s| s.to_string()).collect(),
            seed: 0,
            degree_cap: 2,
            cases: Vec::new(),
        }
    }
}

/// Characters, the structural suite, the Riemann–Roch grid and HRR, in that order.
pub fn run_suite(cfg: &SuiteConfig) -> Result<Vec<VerificationReport>> {
    if let Some(bad) = cfg.cases.iter().find(|c| !SUITE_THEOREMS.contains(&c.as_str())) {
        return Err(Error::Parse(format!("unknown theorem id {bad:?}")));
    }
    let battery: Vec<Algebra> = cfg.battery.iter().map(|n| library::algebra(n)).collect::<Result<_>>()?;
    let mut out = Vec::new();
    if cfg.selects("character") {
        let s3_reps = ["triv", "sign", "std"].iter().map(|w| library::s3_module(w)).collect::<Result<Vec<_>>>()?;
        out.extend(verify_character(&crate::algebra::s3_table(), &s3_reps));
    }
    let structural: Vec<&str> = STRUCTURAL_THEOREMS.iter().copied().filter(|t| cfg.selects(t)).collect();
    out.extend(verify_structural(&structural, &battery, cfg.seed));
    let (rr1, rr2) = (cfg.selects("rr1"), cfg.selects("rr2"));
    if rr1 || rr2 {
        let grid = rr_grid(cfg.seed)?;
        let rr: Vec<VerificationReport> = std::thread::scope(|s| {
            let hs: Vec<_> = grid
                .iter()
                .map(|(c1, c2)| {
                    s.spawn(move || {
                        let mut v = Vec::new();
                        if rr1 {
                            v.push(verify_rr1(c1, cfg.degree_cap));
                        }
                        if rr2 {
                            v.push(verify_rr2(c2, cfg.degree_cap));
                        }
                        v
                    })
                })
                .collect();
            hs.into_iter().flat_map(|h| h.join().expect("verifier thread panicked")).collect()
        });
        out.extend(rr);
    }
    if cfg.selects("hrr") {
        for (a, m, n) in hrr_grid()? {
            out.push(verify_hrr(&a, &m, &n));
        }
    }
    Ok(out)
}
