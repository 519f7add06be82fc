use super::*;
use crate::algebra::{cyclic_group_algebra, matrix_algebra, s3_algebra, Field};
use crate::bimodule::find_isomorphism;
use crate::duality::right_dual_witness_with_cover;
use crate::library::{algebra, left_module, module, row_module, s3_character};

fn ints(v: &[i64]) -> Vec<Scalar> {
    v.iter().map(|&x| Scalar::from_i64(x)).collect()
}

fn k() -> Algebra {
    ground_field(Field::Q)
}

fn qn(n: usize) -> Bimodule {
    left_module("Q^n", &k(), vec![Matrix::identity(n)]).unwrap()
}

/// χ(V) on the HH₀ classes of e, (01), (012).
fn character_values(t: &TraceMap) -> Vec<Scalar> {
    [0usize, 1, 4]
        .iter()
        .map(|&g| t.apply(&sparse::to_dense(&t.src.class_of(&[g]), t.src.dim()))[0].clone())
        .collect()
}

#[test]
fn twisted_trace_of_scalar_over_k() {
    let m = qn(3);
    let dp = right_dual_witness(&m).unwrap();
    let u = unit_bimodule(&k());
    let f = unit_cell(&BimoduleMap::identity(&m).scaled(&Scalar::from_i64(5))).unwrap();
    let t = twisted_trace(&f, &dp, &u, &u).unwrap();
    assert_eq!(t.matrix, Matrix::from_i64(&[&[15]]));
    let id = unit_cell(&BimoduleMap::identity(&m)).unwrap();
    assert_eq!(twisted_trace(&id, &dp, &u, &u).unwrap().matrix, Matrix::from_i64(&[&[3]]));
}

#[test]
fn twisted_trace_of_unit_cells_matches_endo_trace() {
    let m = module("Vstd").unwrap();
    let dp = right_dual_witness(&m).unwrap();
    let hom = crate::bimodule::hom_basis(&m, &m).unwrap();
    let f = BimoduleMap::new(m.clone(), m.clone(), hom[0].scale(&Scalar::from_i64(-3))).unwrap();
    let direct = endo_trace(&f, &dp).unwrap();
    let cell = unit_cell(&f).unwrap();
    let twisted = twisted_trace(&cell, &dp, &unit_bimodule(m.left_alg()), &unit_bimodule(m.right_alg())).unwrap();
    assert_eq!(direct.matrix, twisted.matrix);
}

#[test]
fn characters_of_s3() {
    for (which, expected) in [("triv", [1, 1, 1]), ("sign", [1, -1, 1]), ("std", [2, 0, -1])] {
        // the matrix-trace oracle first
        assert_eq!(s3_character(which).unwrap().to_vec(), ints(&expected));
        let t = euler_characteristic(&module(&format!("V{which}")).unwrap()).unwrap();
        assert_eq!(character_values(&t), ints(&expected), "{which}");
    }
}

#[test]
fn euler_characteristic_of_unit_is_identity() {
    for name in ["QC2", "QS3", "M2"] {
        let a = algebra(name).unwrap();
        assert!(euler_characteristic(&unit_bimodule(&a)).unwrap().matrix.is_identity(), "{name}");
    }
}

#[test]
fn euler_characteristic_of_regular_module() {
    let a = matrix_algebra(2);
    let reg = left_module("M2_reg", &a, (0..4).map(|i| a.left_mult_matrix(&sparse::unit(i))).collect()).unwrap();
    let t = euler_characteristic(&reg).unwrap();
    // HH₀(M2) is spanned by [e11]; L_{e11} on M2 has trace 2
    let e11 = t.src.class_of(&[0]);
    assert_eq!(t.apply(&sparse::to_dense(&e11, 1)), ints(&[2]));
}

#[test]
fn witness_independence() {
    let m = module("Vstd").unwrap();
    let a = euler_characteristic(&m).unwrap();
    let dp = right_dual_witness_with_cover(&m, &Matrix::from_i64(&[&[2, 1], &[1, 1]])).unwrap();
    assert_eq!(euler_characteristic_with(&dp).unwrap().matrix, a.matrix);
    assert_eq!(
        euler_characteristic_with(&right_dual_witness(&m).unwrap().rescaled(&Scalar::from_i64(7)))
            .unwrap()
            .matrix,
        a.matrix
    );
}

#[test]
fn scalar_traces() {
    let u = unit_bimodule(&k());
    let s = scalar_trace(&BimoduleMap::identity(&u).scaled(&Scalar::from_i64(5)), &u).unwrap();
    assert_eq!(s.value, Scalar::from_i64(5));
    assert!(s.higher_vanish && s.warning().is_none());

    let uc2 = unit_bimodule(&cyclic_group_algebra(2));
    // the quotient oracle: HH₀(QC2) is all of QC2, so id has trace 2
    assert_eq!(crate::hochschild::hh0(&uc2).unwrap().dim(), 2);
    assert_eq!(scalar_trace(&BimoduleMap::identity(&uc2), &uc2).unwrap().value, Scalar::from_i64(2));

    let v = module("Vstd").unwrap();
    let dp = right_dual_witness(&v).unwrap();
    let end = dp.mn.result.clone();
    assert_eq!(scalar_trace(&BimoduleMap::identity(&end), &end).unwrap().value, Scalar::one());
}

#[test]
fn scalar_trace_flags_higher_homology() {
    let u = unit_bimodule(&crate::algebra::truncated_polynomial(2));
    let s = scalar_trace(&BimoduleMap::identity(&u), &u).unwrap();
    assert_eq!(s.value, Scalar::from_i64(2));
    assert!(!s.higher_vanish && s.warning().is_some());
}

#[test]
fn pairing_over_k_and_m2() {
    let p = pairing_copairing(&k()).unwrap();
    assert_eq!((p.copair.clone(), p.pair.clone()), (Matrix::identity(1), Matrix::identity(1)));
    let p = pairing_copairing(&matrix_algebra(2)).unwrap();
    assert_eq!(p.pair, Matrix::identity(1));
    assert_eq!(basis_labels(&p.hh), vec!["e22".to_string()]);
    let e11 = sparse::to_dense(&p.hh.class_of(&[0]), 1);
    let e11_op = sparse::to_dense(&p.hh_op.class_of(&[0]), 1);
    assert_eq!(p.pair_vectors(&e11, &e11_op), Scalar::one());
}

#[test]
fn pairing_over_s3_is_nondegenerate() {
    let a = s3_algebra();
    let p = pairing_copairing(&a).unwrap();
    assert_eq!(linalg::rank(&p.pair), 3);
    assert!(p.snake_report().pass);
    // the action-trace oracle agrees with the χ(E) route
    assert_eq!(pairing_by_action_trace(&a, &p.hh, &p.hh_op), p.pair);
}

#[test]
fn pairing_matches_action_trace_on_battery() {
    for name in ["QC2", "QC3", "M2", "QC2xM2"] {
        let a = algebra(name).unwrap();
        let p = pairing_copairing(&a).unwrap();
        assert_eq!(pairing_by_action_trace(&a, &p.hh, &p.hh_op), p.pair, "{name}");
    }
}

#[test]
fn pairing_requires_separability() {
    assert!(matches!(
        pairing_copairing(&crate::algebra::truncated_polynomial(2)),
        Err(Error::NotSeparable { .. })
    ));
}

#[test]
fn eu_classes() {
    let a = matrix_algebra(2);
    let free = crate::library::right_module("M2_free", &a, (0..4).map(|j| a.right_mult_matrix(&sparse::unit(j))).collect()).unwrap();
    let hh = crate::hochschild::hh0(&unit_bimodule(&a)).unwrap();
    let one = hh.project(&a.unit_sparse());
    assert_eq!(eu_class(&free).unwrap(), sparse::to_dense(&one, 1));
    // dual-basis oracle: the row module is e11·M2, so its class is [e11]
    assert_eq!(eu_class(&row_module(2).unwrap()).unwrap(), sparse::to_dense(&hh.class_of(&[0]), 1));
    assert_eq!(sparse::to_dense(&one, 1), ints(&[2]));
}

#[test]
fn eu_class_of_trivial_s3_module() {
    let m = module("Vtriv^r").unwrap();
    let eu = eu_class(&m).unwrap();
    let hh = crate::hochschild::hh0(&unit_bimodule(&s3_algebra())).unwrap();
    // dual-basis oracle: the class of the idempotent (1/6)Σg
    let avg: SparseVec = (0..6).map(|g| (g, Scalar::ratio(1, 6))).collect();
    assert_eq!(
        eu,
        hh.project(&avg).iter().fold(vec![Scalar::zero(); 3], |mut v, (i, x)| {
            v[*i] = x.clone();
            v
        })
    );
}

#[test]
fn d_functor_dims_and_involution() {
    let a = matrix_algebra(2);
    let free = crate::library::right_module("M2_free", &a, (0..4).map(|j| a.right_mult_matrix(&sparse::unit(j))).collect()).unwrap();
    assert_eq!(d_functor(&free).unwrap().dim(), 4);
    let s = row_module(2).unwrap();
    let ds = d_functor(&s).unwrap();
    assert_eq!(ds.dim(), 2);
    for m in [s, module("Vstd^r").unwrap(), module("Vsign^r").unwrap()] {
        let dd = d_functor(&d_functor(&m).unwrap()).unwrap();
        assert!(find_isomorphism(&m, &dd).is_ok(), "{}", m.name());
    }
}

#[test]
fn serre_dual_trace_is_transpose() {
    let m = module("Vstd").unwrap();
    let hom = crate::bimodule::hom_basis(&m, &m).unwrap();
    let f = BimoduleMap::new(m.clone(), m.clone(), hom[0].scale(&Scalar::from_i64(3))).unwrap();
    let t = trace_of(&f).unwrap();
    let s = serre_trace(&f).unwrap();
    let pa = pairing_copairing(m.left_alg()).unwrap();
    let pb = pairing_copairing(m.right_alg()).unwrap();
    assert_eq!(s.matrix, serre_transpose(&t.matrix, &pa, &pb));
}

#[test]
fn trace_map_json_names_bases() {
    let t = euler_characteristic(&module("Vsign").unwrap()).unwrap();
    let j = t.to_json();
    assert_eq!(j["src_basis"].as_array().unwrap().len(), 3);
    assert_eq!(j["matrix"][0].as_array().unwrap().len(), 3);
}
