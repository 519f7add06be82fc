use super::*;
use crate::algebra::{cyclic_group_algebra, ground_field, matrix_algebra, s3_algebra, Field};
use crate::library::{column_module, module, row_module, s3_module};

fn k() -> Algebra {
    ground_field(Field::Q)
}

#[test]
fn unit_bimodules_validate() {
    let u = unit_bimodule(&k());
    assert_eq!(u.dim(), 1);
    assert!(validate_bimodule(&u).pass);
    let u = unit_bimodule(&matrix_algebra(2));
    assert_eq!(u.dim(), 4);
    assert_eq!(u.left_matrix(0), matrix_algebra(2).left_mult_matrix(&[(0, Scalar::one())]));
    assert!(validate_bimodule(&unit_bimodule(&s3_algebra())).pass);
}

#[test]
fn broken_unit_is_reported() {
    let a = cyclic_group_algebra(2);
    let m = Bimodule::new(
        "bad",
        a.clone(),
        k(),
        1,
        vec![Matrix::from_i64(&[&[2]]), Matrix::from_i64(&[&[1]])],
        vec![Matrix::identity(1)],
    );
    let r = validate_bimodule(&m);
    assert!(!r.pass);
    assert!(r.failures()[0].contains("left unit"));
}

#[test]
fn s3_std_validates() {
    assert!(validate_bimodule(&s3_module("std").unwrap()).pass);
}

#[test]
fn compose_with_unit_keeps_dimension() {
    let v = s3_module("std").unwrap();
    let c = compose(&unit_bimodule(&s3_algebra()), &v).unwrap();
    assert_eq!(c.result.dim(), 2);
    let f = left_unitor(&c).unwrap();
    assert!(f.is_invertible());
    let c = compose(&v, &unit_bimodule(&k())).unwrap();
    let f = right_unitor(&c).unwrap();
    assert!(f.is_invertible());
}

#[test]
fn compose_over_k_is_plain_tensor() {
    let v = module("Vstd").unwrap();
    let w = module("Vstd^r").unwrap();
    let c = compose(&v, &w).unwrap();
    assert_eq!(c.result.dim(), 4);
    assert!(validate_bimodule(&c.result).pass);
}

#[test]
fn compose_over_s3_matches_relation_rank() {
    // V^r ⊙ V over QS3: brute-force the 6·2·2 relation rows densely.
    let w = module("Vstd^r").unwrap();
    let v = module("Vstd").unwrap();
    let c = compose(&w, &v).unwrap();
    let a = s3_algebra();
    let mut rows = Vec::new();
    for g in 0..6 {
        let r = w.right_matrix(g);
        let l = v.left_matrix(g);
        for s in 0..2 {
            for t in 0..2 {
                let mut row = vec![Scalar::zero(); 4];
                for s2 in 0..2 {
                    row[s2 * 2 + t] += &r[(s2, s)];
                }
                for t2 in 0..2 {
                    row[s * 2 + t2] -= &l[(t2, t)];
                }
                rows.push(row);
            }
        }
    }
    let rank = crate::linalg::rank(&Matrix::from_rows(rows, 4));
    assert_eq!(c.result.dim(), 4 - rank);
    assert_eq!(c.result.dim(), 1);
    let _ = a;
}

#[test]
fn compose_maps_identity_and_scaling() {
    let w = module("Vstd^r").unwrap();
    let v = module("Vstd").unwrap();
    let c = compose(&v, &w).unwrap();
    let id = compose_maps(&BimoduleMap::identity(&v), &BimoduleMap::identity(&w), &c, &c).unwrap();
    assert!(id.matrix.is_identity());
    let three = Scalar::from_i64(3);
    let f = compose_maps(&BimoduleMap::identity(&v).scaled(&three), &BimoduleMap::identity(&w), &c, &c).unwrap();
    assert_eq!(f.matrix, Matrix::scalar(4, &three));
}

#[test]
fn compose_maps_rejects_non_intertwiner() {
    let u = unit_bimodule(&s3_algebra());
    let v = module("Vstd").unwrap();
    let c = compose(&u, &v).unwrap();
    // right multiplication by a transposition is not left-linear over QS3
    let f = BimoduleMap {
        src: u.clone(),
        dst: u.clone(),
        matrix: s3_algebra().left_mult_matrix(&[(1, Scalar::one())]),
    };
    assert!(compose_maps(&f, &BimoduleMap::identity(&v), &c, &c).is_err());
}

#[test]
fn matrix_units_compose_to_scalars() {
    let c = compose(&row_module(2).unwrap(), &column_module(2).unwrap()).unwrap();
    assert_eq!(c.result.dim(), 1);
    let c = compose(&column_module(2).unwrap(), &row_module(2).unwrap()).unwrap();
    assert_eq!(c.result.dim(), 4);
    assert!(find_isomorphism(&c.result, &unit_bimodule(&matrix_algebra(2))).is_ok());
}

#[test]
fn hom_space_examples() {
    let u = unit_bimodule(&k());
    assert_eq!(hom_space(&u, &u).unwrap().rows(), 1);
    let v = module("Vstd").unwrap();
    let t = module("Vtriv").unwrap();
    assert_eq!(hom_space(&v, &t).unwrap().rows(), 0);
    assert_eq!(hom_space(&v, &v).unwrap().rows(), 1);
}

#[test]
fn find_isomorphism_examples() {
    let v = module("Vstd").unwrap();
    assert!(find_isomorphism(&v, &v).unwrap().is_invertible());
    let t = module("Vtriv").unwrap();
    assert!(matches!(find_isomorphism(&v, &t), Err(Error::NoneFound(_))));
    let u = unit_bimodule(&s3_algebra());
    let uu = compose(&u, &u).unwrap();
    assert!(find_isomorphism(&u, &uu.result).is_ok());
}

#[test]
fn tensor_k_examples() {
    let v = module("Vstd").unwrap();
    let uk = unit_bimodule(&k());
    let vk = tensor_k(&v, &uk).unwrap();
    assert_eq!(vk.dim(), 2);
    assert!(vk.left_alg() == v.left_alg());
    assert!(validate_bimodule(&vk).pass);
    let w = tensor_k(&v, &row_module(2).unwrap()).unwrap();
    assert_eq!(w.dim(), 4);
    assert!(validate_bimodule(&w).pass);
    let id = tensor_k_maps(&BimoduleMap::identity(&v), &BimoduleMap::identity(&uk)).unwrap();
    assert!(id.matrix.is_identity());
}

#[test]
fn canonical_cells_examples() {
    let (_, c, e) = canonical_cells(&k());
    assert_eq!((c.dim(), e.dim()), (1, 1));
    let a = cyclic_group_algebra(2);
    let (_, c, e) = canonical_cells(&a);
    // g⊗g^op has index 1·2 + 1; acting on 1 gives g·1·g = 1
    assert_eq!(c.right_matrix(3).mul_vec(&[Scalar::one(), Scalar::zero()]), vec![Scalar::one(), Scalar::zero()]);
    assert!(validate_bimodule(&c).pass && validate_bimodule(&e).pass);
    let (_, c, e) = canonical_cells(&matrix_algebra(2));
    assert!(validate_bimodule(&c).pass && validate_bimodule(&e).pass);
}

#[test]
fn gamma_examples() {
    let g = gamma(&k(), &k()).unwrap();
    assert_eq!(g.dim(), 1);
    let a = s3_algebra();
    let g = gamma(&a, &k()).unwrap();
    assert!(find_isomorphism(&g, &unit_bimodule(&a)).is_ok());
    let g = gamma(&cyclic_group_algebra(2), &matrix_algebra(2)).unwrap();
    assert!(validate_bimodule(&g).pass);
    let back = gamma(&matrix_algebra(2), &cyclic_group_algebra(2)).unwrap();
    let gg = compose(&g, &back).unwrap();
    assert!(find_isomorphism(&gg.result, &unit_bimodule(g.left_alg())).is_ok());
}

#[test]
fn serre_dual_examples() {
    let u = unit_bimodule(&k());
    let s = serre_dual(&u);
    assert_eq!(s.dim(), 1);
    let v = module("Vstd").unwrap();
    let s = serre_dual(&v);
    assert_eq!(s.right_action(), v.left_action());
    let ss = serre_dual(&s);
    assert!(ss.left_alg() == v.left_alg() && ss.right_alg() == v.right_alg());
    assert_eq!(ss.left_action(), v.left_action());
    assert_eq!(ss.right_action(), v.right_action());
    assert_eq!(ss.name(), v.name());
    assert!(validate_bimodule(&s).pass);
}

#[test]
fn serre_dual_composite_examples() {
    for reading in [SerreReading::Whiskered, SerreReading::Crossed] {
        let c = serre_dual_composite(&unit_bimodule(&k()), reading).unwrap();
        assert_eq!(c.result.dim(), 1);
        let v = module("Vstd").unwrap();
        let c = serre_dual_composite(&v, reading).unwrap();
        assert_eq!(c.result.dim(), 2);
        assert!(find_isomorphism(&c.result, &serre_dual(&v)).is_ok(), "{reading:?}");
    }
}

#[test]
fn associator_is_invertible() {
    let v = module("Vstd").unwrap();
    let w = module("Vstd^r").unwrap();
    let (_, _, f) = associator(&w, &v, &w).unwrap();
    assert!(f.is_invertible());
}
