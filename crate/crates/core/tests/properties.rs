use proptest::prelude::*;

use shadowtrace::algebra::{opposite, tensor_algebra, validate_algebra, Algebra};
use shadowtrace::bimodule::{hom_space, serre_dual, unit_bimodule, BimoduleMap};
use shadowtrace::duality::{right_dual_witness, right_dual_witness_with_cover, verify_triangles};
use shadowtrace::hochschild::HochschildComplex;
use shadowtrace::io::{parse_workspace, AlgebraDef, Workspace, WorkspaceFile};
use shadowtrace::library;
use shadowtrace::linalg::{self, make_quotient, Matrix, Scalar};
use shadowtrace::trace::{endo_trace, euler_characteristic_with, trace_of};

fn scalar() -> impl Strategy<Value = Scalar> {
    prop_oneof![
        3 => (-4i64..=4).prop_map(Scalar::from_i64),
        1 => ((-9i64..=9), (1i64..=5)).prop_map(|(n, d)| Scalar::ratio(n, d)),
    ]
}

/// Entries large enough to overflow i64 products.
fn wide_scalar() -> impl Strategy<Value = Scalar> {
    (any::<i64>(), 1i64..i64::MAX).prop_map(|(n, d)| Scalar::ratio(n, d))
}

fn matrix(max_rows: usize, max_cols: usize) -> impl Strategy<Value = Matrix> {
    (1..=max_rows, 1..=max_cols).prop_flat_map(|(r, c)| proptest::collection::vec(scalar(), r * c).prop_map(move |d| Matrix::from_vec(r, c, d)))
}

fn small_algebra() -> impl Strategy<Value = Algebra> {
    prop::sample::select(vec!["k", "QC2", "QC3", "M2", "Qx2", "Qx3"]).prop_map(|n| library::algebra(n).unwrap())
}

fn config() -> ProptestConfig {
    ProptestConfig {
        cases: 48,
        ..ProptestConfig::default()
    }
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn scalar_field_axioms(a in wide_scalar(), b in wide_scalar(), c in scalar()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a - &b) + &b, a.clone());
        if !a.is_zero() {
            prop_assert!((&a * &a.inv()).is_one());
        }
    }

    #[test]
    fn scalar_string_round_trip(a in wide_scalar()) {
        prop_assert_eq!(a.to_string().parse::<Scalar>().unwrap(), a);
    }

    #[test]
    fn finite_field_inverse(v in 1i128..6, p in prop::sample::select(vec![2u64, 3, 5, 7, 101])) {
        let x = Scalar::from_fp(v, p);
        if !x.is_zero() {
            prop_assert!((&x * &x.inv()).is_one());
        }
    }

    #[test]
    fn rref_is_idempotent(m in matrix(5, 6)) {
        let (r, _, _) = linalg::rref(&m);
        prop_assert_eq!(linalg::rref(&r).0, r);
    }

    #[test]
    fn rank_nullity(m in matrix(5, 6)) {
        let k = linalg::kernel_basis(&m);
        prop_assert_eq!(linalg::rank(&m) + k.rows(), m.cols());
        prop_assert!(m.mul(&k.transpose()).is_zero());
    }

    #[test]
    fn solve_reproduces_consistent_rhs(a in matrix(4, 5), x in proptest::collection::vec(scalar(), 5)) {
        let x = Matrix::column_vector(x[..a.cols()].to_vec());
        let b = a.mul(&x);
        let y = linalg::solve(&a, &b).unwrap();
        prop_assert_eq!(a.mul(&y), b);
    }

    #[test]
    fn quotient_projection_and_section(rel in matrix(4, 6)) {
        let q = make_quotient(rel.cols(), &rel);
        let p = q.projection();
        prop_assert!(p.mul(&q.section()).is_identity() || q.quotient_dim() == 0);
        prop_assert!(p.mul(&rel.transpose()).is_zero());
        prop_assert_eq!(q.quotient_dim() + linalg::rank(&rel), rel.cols());
    }

    #[test]
    fn tensor_and_opposite_commute(a in small_algebra(), b in small_algebra()) {
        let ab = tensor_algebra(&a, &b).unwrap();
        prop_assert!(validate_algebra(&ab).pass);
        let lhs = opposite(&ab);
        let rhs = tensor_algebra(&opposite(&a), &opposite(&b)).unwrap();
        let d = lhs.dim();
        for i in 0..d {
            for j in 0..d {
                prop_assert_eq!(lhs.mul_basis(i, j), rhs.mul_basis(i, j));
            }
        }
    }

    #[test]
    fn tensor_is_associative(a in small_algebra(), b in small_algebra(), c in small_algebra()) {
        let l = tensor_algebra(&tensor_algebra(&a, &b).unwrap(), &c).unwrap();
        let r = tensor_algebra(&a, &tensor_algebra(&b, &c).unwrap()).unwrap();
        let d = l.dim();
        for i in 0..d {
            for j in 0..d {
                prop_assert_eq!(l.mul_basis(i, j), r.mul_basis(i, j));
            }
        }
    }

    #[test]
    fn boundary_squares_vanish(a in small_algebra()) {
        let cx = HochschildComplex::new(&unit_bimodule(&a), 2).unwrap();
        prop_assert!(cx.dd_failures().is_empty());
    }

    #[test]
    fn serre_dual_preserves_hom_dims(i in 0usize..6, j in 0usize..6) {
        let names = ["Vtriv", "Vsign", "Vstd", "Vtriv^r", "Vstd^r", "col2"];
        let (m, n) = (library::module(names[i]).unwrap(), library::module(names[j]).unwrap());
        if m.left_alg() == n.left_alg() && m.right_alg() == n.right_alg() {
            let h = hom_space(&m, &n).unwrap().rows();
            prop_assert_eq!(hom_space(&serre_dual(&m), &serre_dual(&n)).unwrap().rows(), h);
        }
    }

    #[test]
    fn trace_is_linear(x in scalar(), y in scalar(), name in prop::sample::select(vec!["Vstd", "col2", "signC2"])) {
        let m = library::module(name).unwrap();
        let dp = right_dual_witness(&m).unwrap();
        let basis = shadowtrace::bimodule::hom_basis(&m, &m).unwrap();
        let f = BimoduleMap::new(m.clone(), m.clone(), basis[0].scale(&x)).unwrap();
        let g = BimoduleMap::identity(&m).scaled(&y);
        let sum = BimoduleMap::new(m.clone(), m.clone(), f.matrix.add(&g.matrix)).unwrap();
        let tf = endo_trace(&f, &dp).unwrap().matrix;
        let tg = endo_trace(&g, &dp).unwrap().matrix;
        prop_assert_eq!(endo_trace(&sum, &dp).unwrap().matrix, tf.add(&tg));
    }

    #[test]
    fn witness_independence(cover in proptest::collection::vec(-2i64..=2, 4), lambda in prop::sample::select(vec![2i64, -3, 5])) {
        let m = library::module("Vstd").unwrap();
        let c = Matrix::from_i64(&[&cover[..2], &cover[2..]]);
        prop_assume!(linalg::is_invertible(&c));
        let dp = right_dual_witness_with_cover(&m, &c).unwrap();
        prop_assert!(verify_triangles(&dp).pass);
        let base = trace_of(&BimoduleMap::identity(&m)).unwrap().matrix;
        prop_assert_eq!(&euler_characteristic_with(&dp).unwrap().matrix, &base);
        let scaled = dp.rescaled(&Scalar::from_i64(lambda));
        prop_assert!(verify_triangles(&scaled).pass);
        prop_assert_eq!(&euler_characteristic_with(&scaled).unwrap().matrix, &base);
    }

    #[test]
    fn algebra_definitions_round_trip(a in small_algebra(), b in small_algebra()) {
        let ab = tensor_algebra(&a, &b).unwrap().renamed("AB");
        let text = serde_json::to_string(&WorkspaceFile { algebras: vec![AlgebraDef::from_algebra(&ab)], ..Default::default() }).unwrap();
        let mut ws = Workspace::default();
        prop_assert!(ws.add_file(&parse_workspace(&text).unwrap()).unwrap()[0].pass);
        let back = &ws.algebras["AB"];
        prop_assert_eq!(AlgebraDef::from_algebra(back), AlgebraDef::from_algebra(&ab));
    }
}
