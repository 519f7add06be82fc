use super::*;
use crate::algebra::{cyclic_group_algebra, ground_field, matrix_algebra, s3_algebra, truncated_polynomial, Field};
use crate::library::{column_module, left_module, module};

#[test]
fn unit_k_is_self_dual() {
    let u = unit_bimodule(&ground_field(Field::Q));
    let dp = right_dual_witness(&u).unwrap();
    assert_eq!(dp.dual.dim(), 1);
    assert!(dp.coev.matrix.is_identity() && dp.ev.matrix.is_identity());
}

#[test]
fn s3_std_dual() {
    let dp = right_dual_witness(&module("Vstd").unwrap()).unwrap();
    assert_eq!(dp.dual.dim(), 2);
    assert!(verify_triangles(&dp).pass);
    assert!(crate::bimodule::validate_bimodule(&dp.dual).pass);
}

#[test]
fn nilpotent_module_is_rejected() {
    // the 1-dim module over Q[x]/x² with x acting by 0, as a right module
    let b = truncated_polynomial(2);
    let m = crate::library::right_module("k_x", &b, vec![Matrix::identity(1), Matrix::zeros(1, 1)]).unwrap();
    match right_dual_witness(&m) {
        Err(Error::NotRightDualizable { certificate, .. }) => assert!(certificate.coefficient_rank < certificate.augmented_rank),
        other => panic!("expected rejection, got {other:?}"),
    }
}

#[test]
fn scaled_coevaluation_breaks_triangles() {
    let dp = right_dual_witness(&module("Vstd").unwrap()).unwrap();
    let mut bad = dp.clone();
    bad.coev = dp.coev.scaled(&Scalar::from_i64(2));
    let r = verify_triangles(&bad);
    assert!(!r.pass);
    assert!(r.certificate.unwrap()["composites"].as_array().unwrap().len() == 2);
    assert!(verify_triangles(&dp.rescaled(&Scalar::from_i64(2))).pass);
}

#[test]
fn other_covers_give_valid_pairs() {
    let m = column_module(2).unwrap();
    let dp = right_dual_witness_with_cover(&m, &Matrix::from_i64(&[&[1, 1], &[0, 1]])).unwrap();
    assert!(verify_triangles(&dp).pass);
}

#[test]
fn dual_pairs_compose() {
    let p = right_dual_witness(&unit_bimodule(&s3_algebra())).unwrap();
    let q = right_dual_witness(&module("Vstd").unwrap()).unwrap();
    let pq = compose_dual_pairs(&p, &q).unwrap();
    assert!(verify_triangles(&pq).pass);
    let m = left_module("sgn", &cyclic_group_algebra(2), vec![Matrix::identity(1), Matrix::from_i64(&[&[-1]])]).unwrap();
    let r = right_dual_witness(&m).unwrap();
    let s = right_dual_witness(&unit_bimodule(&ground_field(Field::Q))).unwrap();
    assert!(verify_triangles(&compose_dual_pairs(&r, &s).unwrap()).pass);
}

#[test]
fn one_dualizability_small() {
    for a in [ground_field(Field::Q), cyclic_group_algebra(2), matrix_algebra(2)] {
        let w = one_dualizability_witness(&a).unwrap();
        let r = w.report();
        assert!(r.pass, "{}: {:?}", a.name(), r);
    }
    let w = one_dualizability_witness(&cyclic_group_algebra(2)).unwrap();
    assert_eq!(w.t.result.dim(), 2);
}

#[test]
fn separability_examples() {
    let w = separability_idempotent(&ground_field(Field::Q)).unwrap();
    assert_eq!(w.idempotent, vec![Scalar::one()]);
    let w = separability_idempotent(&cyclic_group_algebra(2)).unwrap();
    let h = Scalar::ratio(1, 2);
    assert_eq!(w.idempotent, vec![h.clone(), Scalar::zero(), Scalar::zero(), h]);
    assert!(separability_idempotent(&matrix_algebra(2)).is_ok());
    assert!(matches!(separability_idempotent(&truncated_polynomial(2)), Err(Error::NotSeparable { .. })));
}

#[test]
fn two_dualizability() {
    let t = two_dualizability_report(&s3_algebra());
    assert!(t.report.pass);
    let t = two_dualizability_report(&truncated_polynomial(2));
    assert!(!t.report.pass);
    assert!(t.c_dual.is_none() && t.separability.is_none());
}

#[test]
fn dual_zero_cell() {
    for a in [ground_field(Field::Q), cyclic_group_algebra(2), matrix_algebra(2)] {
        let w = one_dualizability_witness(&a).unwrap();
        let t = two_dualizability_report(&a);
        let wd = dual_of_zero_cell_witness(&w, t.c_dual.as_ref().unwrap(), t.e_dual.as_ref().unwrap()).unwrap();
        assert!(wd.report().pass, "{}", a.name());
    }
}
