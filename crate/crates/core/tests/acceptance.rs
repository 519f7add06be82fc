//! The nine acceptance criteria, one PASS/FAIL line each.

use std::time::{Duration, Instant};

use shadowtrace::algebra::{validate_algebra, Algebra};
use shadowtrace::bimodule::{canonical_cells, gamma, unit_bimodule, validate_bimodule, Bimodule};
use shadowtrace::duality::{one_dualizability_witness, right_dual_witness, separability_idempotent, verify_triangles};
use shadowtrace::error::Error;
use shadowtrace::hochschild::{verify_shadow_axioms, HochschildComplex};
use shadowtrace::library;
use shadowtrace::linalg::{Matrix, Scalar};
use shadowtrace::trace::{euler_characteristic, pairing_copairing};
use shadowtrace::verify::{hrr_grid, rr_grid, run_suite, verify_hrr, verify_rr1, verify_rr2, verify_structural_suite, SuiteConfig, VerificationReport};

type Outcome = Result<String, String>;
type Criterion<'a> = (&'static str, Option<Duration>, Box<dyn Fn() -> Outcome + 'a>);

fn all_pass(reports: &[VerificationReport]) -> Outcome {
    match reports.iter().find(|r| !r.pass) {
        Some(r) => Err(r.line()),
        None => Ok(format!("{} reports", reports.len())),
    }
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn criterion_1(battery: &[Algebra]) -> Outcome {
    let mut n = 0;
    for a in battery {
        ensure(validate_algebra(a).pass, || format!("{} fails validation", a.name()))?;
        let (a_op, c, e) = canonical_cells(a);
        ensure(validate_algebra(&a_op).pass, || format!("{} fails validation", a_op.name()))?;
        for m in [unit_bimodule(a), c, e] {
            let r = validate_bimodule(&m);
            ensure(r.pass, || format!("{}: {:?}", m.name(), r.failures()))?;
            n += 1;
        }
    }
    for a in battery {
        for b in battery {
            let g = gamma(a, b).map_err(|e| e.to_string())?;
            let r = validate_bimodule(&g);
            ensure(r.pass, || format!("{}: {:?}", g.name(), r.failures()))?;
            n += 1;
        }
    }
    Ok(format!("{} algebras, {n} cells", battery.len()))
}

fn criterion_2(battery: &[Algebra]) -> Outcome {
    let expected = [1, 2, 3, 3, 1, 1, 2];
    for (a, &d0) in battery.iter().zip(&expected) {
        let cx = HochschildComplex::new(&unit_bimodule(a), 2).map_err(|e| e.to_string())?;
        ensure(cx.dd_failures().is_empty(), || format!("{}: b∘b ≠ 0: {:?}", a.name(), cx.dd_failures()))?;
        let dims = cx.homology_dims();
        ensure(dims == [d0, 0, 0], || format!("{}: HH dims {dims:?}, expected ({d0}, 0, 0)", a.name()))?;
    }
    let samples = shadow_samples().map_err(|e| e.to_string())?;
    let r = verify_shadow_axioms(&samples);
    ensure(r.pass, || format!("shadow axioms: {:?}", r.failures()))?;
    Ok(format!(
        "HH dims match on {} algebras; shadow axioms on {} triples",
        battery.len(),
        samples.len()
    ))
}

fn shadow_samples() -> shadowtrace::Result<Vec<(Bimodule, Bimodule, Bimodule)>> {
    let uk = unit_bimodule(&library::algebra("k")?);
    let mut out = vec![(uk.clone(), uk.clone(), uk)];
    for (name, alg) in [("Vstd", "QS3"), ("col2", "M2"), ("signC2", "QC2")] {
        let v = library::module(name)?;
        let dual = right_dual_witness(&v)?.dual;
        out.push((v, dual, unit_bimodule(&library::algebra(alg)?)));
    }
    let um = unit_bimodule(&library::algebra("M2")?);
    out.push((um.clone(), um.clone(), um));
    Ok(out)
}

fn criterion_3(battery: &[Algebra]) -> Outcome {
    let mut modules: Vec<Bimodule> = ["Vtriv", "Vsign", "Vstd", "col2"].iter().map(|n| library::module(n).unwrap()).collect();
    modules.extend(battery.iter().map(unit_bimodule));
    for m in &modules {
        let dp = right_dual_witness(m).map_err(|e| format!("{}: {e}", m.name()))?;
        let r = verify_triangles(&dp);
        ensure(r.pass, || format!("{}: {:?}", m.name(), r.failures()))?;
    }
    let qx2 = library::algebra("Qx2").unwrap();
    let nilpotent = library::right_module("k_x", &qx2, vec![Matrix::identity(1), Matrix::zeros(1, 1)]).unwrap();
    match right_dual_witness(&nilpotent) {
        Err(Error::NotRightDualizable { certificate, .. }) if certificate.coefficient_rank < certificate.augmented_rank => {}
        other => return Err(format!("non-projective module not rejected: {:?}", other.map(|d| d.dual.name().to_string()))),
    }
    match separability_idempotent(&qx2) {
        Err(Error::NotSeparable { certificate, .. }) if certificate.coefficient_rank < certificate.augmented_rank => {}
        _ => return Err("Qx2 not rejected as non-separable".into()),
    }
    Ok(format!("{} dual pairs; both rejections certified", modules.len()))
}

fn criterion_4(battery: &[Algebra]) -> Outcome {
    for a in battery {
        let w = one_dualizability_witness(a).map_err(|e| format!("{}: {e}", a.name()))?;
        let r = w.report();
        ensure(r.pass, || format!("{}: {:?}", a.name(), r.failures()))?;
        let s = separability_idempotent(a).map_err(|e| format!("{}: {e}", a.name()))?;
        ensure(s.report().pass, || format!("{}: separability idempotent fails", a.name()))?;
        let p = pairing_copairing(a).map_err(|e| format!("{}: {e}", a.name()))?;
        ensure(p.snake_report().pass, || format!("{}: snake identities fail", a.name()))?;
    }
    Ok(format!("{} algebras", battery.len()))
}

fn criterion_5() -> Outcome {
    let mut rows = Vec::new();
    for (which, expected) in [("triv", [1, 1, 1]), ("sign", [1, -1, 1]), ("std", [2, 0, -1])] {
        // the matrix-trace oracle
        let oracle = library::s3_character(which).map_err(|e| e.to_string())?;
        let expected: Vec<Scalar> = expected.iter().map(|&x| Scalar::from_i64(x)).collect();
        ensure(oracle.to_vec() == expected, || format!("{which}: matrix traces {oracle:?}"))?;
        let t = euler_characteristic(&library::s3_module(which).unwrap()).map_err(|e| e.to_string())?;
        // classes of e, (01), (012)
        let got: Vec<Scalar> = [0usize, 1, 4]
            .iter()
            .map(|&g| {
                let x = shadowtrace::linalg::sparse::to_dense(&t.src.class_of(&[g]), t.src.dim());
                t.apply(&x)[0].clone()
            })
            .collect();
        ensure(got == expected, || format!("{which}: χ gives {got:?}"))?;
        rows.push(format!("{which} ({})", got.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")));
    }
    Ok(rows.join("; "))
}

fn criterion_6(battery: &[Algebra]) -> Outcome {
    all_pass(&verify_structural_suite(battery, 0))
}

fn criterion_7() -> Outcome {
    let grid = rr_grid(0).map_err(|e| e.to_string())?;
    ensure(grid.len() >= 12, || format!("only {} cases", grid.len()))?;
    let reports: Vec<VerificationReport> = grid.iter().flat_map(|(c1, c2)| [verify_rr1(c1, 2), verify_rr2(c2, 2)]).collect();
    all_pass(&reports).map(|s| format!("{} cases, {s}", grid.len()))
}

fn criterion_8() -> Outcome {
    let cases = hrr_grid().map_err(|e| e.to_string())?;
    let mut reports = Vec::new();
    for (a, m, n) in &cases {
        let r = verify_hrr(a, m, n);
        // hom_space oracle: Schur, and End of the M2 row module is k
        let expected = if m.name() == n.name() { "1" } else { "0" };
        ensure(r.lhs == [expected], || format!("{}: dim Hom {:?}", r.case, r.lhs))?;
        reports.push(r);
    }
    all_pass(&reports)
}

fn criterion_9() -> Outcome {
    let cfg = SuiteConfig::default();
    let a = serde_json::to_string(&run_suite(&cfg).map_err(|e| e.to_string())?).unwrap();
    let b = serde_json::to_string(&run_suite(&cfg).map_err(|e| e.to_string())?).unwrap();
    ensure(a == b, || "suite reports differ between runs".into())?;
    Ok(format!("{} bytes identical", a.len()))
}

fn main() {
    let battery = library::battery();
    let criteria: Vec<Criterion> = vec![
        ("axiom suite", Some(Duration::from_secs(5)), Box::new(|| criterion_1(&battery))),
        ("shadow suite", Some(Duration::from_secs(120)), Box::new(|| criterion_2(&battery))),
        ("duality suite", Some(Duration::from_secs(10)), Box::new(|| criterion_3(&battery))),
        ("1-/2-dualizability", Some(Duration::from_secs(30)), Box::new(|| criterion_4(&battery))),
        ("S3 characters", None, Box::new(criterion_5)),
        ("structural theorems", Some(Duration::from_secs(120)), Box::new(|| criterion_6(&battery))),
        ("Riemann-Roch", Some(Duration::from_secs(60)), Box::new(criterion_7)),
        ("HRR", Some(Duration::from_secs(30)), Box::new(criterion_8)),
        ("determinism", None, Box::new(criterion_9)),
    ];
    let mut failed = 0;
    for (i, (name, budget, run)) in criteria.iter().enumerate() {
        let t0 = Instant::now();
        let outcome = run();
        let elapsed = t0.elapsed();
        let over = budget.is_some_and(|b| elapsed > b);
        let (status, detail) = match (&outcome, over) {
            (Ok(d), false) => ("PASS", d.clone()),
            (Ok(d), true) => ("FAIL", format!("{d}; over the {:?} budget", budget.unwrap())),
            (Err(e), _) => ("FAIL", e.clone()),
        };
        if status == "FAIL" {
            failed += 1;
        }
        println!("criterion {} {status} {name} ({:.2}s): {detail}", i + 1, elapsed.as_secs_f64());
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
