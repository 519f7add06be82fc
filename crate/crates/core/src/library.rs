//! Built-in algebras and modules used by the battery, the examples and the CLI.

use crate::algebra::{cyclic_group_algebra, ground_field, matrix_algebra, s3_algebra, s3_elements, tensor_algebra, truncated_polynomial, Algebra, Field};
use crate::bimodule::Bimodule;
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Scalar};

pub const ALGEBRA_NAMES: &[&str] = &["k", "QC2", "QC3", "QS3", "M2", "M3", "QC2xM2", "Qx2"];

/// The acceptance battery, in order.
pub const BATTERY: &[&str] = &["k", "QC2", "QC3", "QS3", "M2", "M3", "QC2xM2"];

pub fn algebra(name: &str) -> Result<Algebra> {
    Ok(match name {
        "k" | "Q" => ground_field(Field::Q),
        "QC2" => cyclic_group_algebra(2),
        "QC3" => cyclic_group_algebra(3),
        "QS3" => s3_algebra(),
        "M2" => matrix_algebra(2),
        "M3" => matrix_algebra(3),
        "QC2xM2" => tensor_algebra(&cyclic_group_algebra(2), &matrix_algebra(2))?,
        "Qx2" => truncated_polynomial(2),
        _ => {
            if let Some(n) = name.strip_prefix('M').and_then(|s| s.parse::<usize>().ok()).filter(|n| *n >= 1) {
                return Ok(matrix_algebra(n));
            }
            if let Some(n) = name.strip_prefix("QC").and_then(|s| s.parse::<usize>().ok()).filter(|n| *n >= 1) {
                return Ok(cyclic_group_algebra(n));
            }
            if let Some(n) = name.strip_prefix("Qx").and_then(|s| s.parse::<usize>().ok()).filter(|n| *n >= 1) {
                return Ok(truncated_polynomial(n));
            }
            return Err(Error::Parse(format!("unknown algebra {name:?}")));
        }
    })
}

pub fn battery() -> Vec<Algebra> {
    BATTERY.iter().map(|n| algebra(n).expect("battery names resolve")).collect()
}

fn permutation_sign(p: &[usize; 3]) -> i64 {
    let mut s = 1;
    for i in 0..3 {
        for j in i + 1..3 {
            if p[i] > p[j] {
                s = -s;
            }
        }
    }
    s
}

/// Left action matrices of the irreducible S3 representations, in element order.
pub fn s3_rep(which: &str) -> Result<Vec<Matrix>> {
    let els = s3_elements();
    Ok(match which {
        "triv" => els.iter().map(|_| Matrix::identity(1)).collect(),
        "sign" => els.iter().map(|p| Matrix::from_i64(&[&[permutation_sign(p)]])).collect(),
        "std" => els
            .iter()
            .map(|g| {
                // basis v1 = e0 − e1, v2 = e1 − e2 of the sum-zero plane; (a,b,c) = x·v1 + y·v2 ⇒ x = a, y = −c
                let image = |v: [i64; 3]| {
                    let mut w = [0i64; 3];
                    for i in 0..3 {
                        w[g[i]] += v[i];
                    }
                    (w[0], -w[2])
                };
                let (a, c) = image([1, -1, 0]);
                let (b, d) = image([0, 1, -1]);
                Matrix::from_i64(&[&[a, b], &[c, d]])
            })
            .collect(),
        _ => return Err(Error::Parse(format!("unknown S3 representation {which:?}"))),
    })
}

/// Index of g⁻¹ for each S3 element.
pub fn s3_inverses() -> Vec<usize> {
    let els = s3_elements();
    els.iter()
        .map(|g| {
            let mut inv = [0usize; 3];
            for i in 0..3 {
                inv[g[i]] = i;
            }
            els.iter().position(|q| *q == inv).unwrap()
        })
        .collect()
}

/// A (A, k)-bimodule from left action matrices.
pub fn left_module(name: &str, a: &Algebra, mats: Vec<Matrix>) -> Result<Bimodule> {
    let dim = mats.first().map(|m| m.rows()).unwrap_or(0);
    let k = ground_field(a.field());
    Bimodule::checked(name, a.clone(), k, dim, mats, vec![Matrix::identity(dim)])
}

/// A (k, A)-bimodule from right action matrices.
pub fn right_module(name: &str, a: &Algebra, mats: Vec<Matrix>) -> Result<Bimodule> {
    let dim = mats.first().map(|m| m.rows()).unwrap_or(0);
    let k = ground_field(a.field());
    Bimodule::checked(name, k, a.clone(), dim, vec![Matrix::identity(dim)], mats)
}

/// V_triv, V_sign, V_std as (QS3, k)-bimodules.
pub fn s3_module(which: &str) -> Result<Bimodule> {
    left_module(&format!("V{which}"), &s3_algebra(), s3_rep(which)?)
}

/// The same representation as a right module via g ↦ ρ(g⁻¹).
pub fn s3_right_module(which: &str) -> Result<Bimodule> {
    let rep = s3_rep(which)?;
    let inv = s3_inverses();
    right_module(&format!("V{which}^r"), &s3_algebra(), inv.iter().map(|&i| rep[i].clone()).collect())
}

fn matrix_unit(n: usize, p: usize, q: usize) -> Matrix {
    let mut m = Matrix::zeros(n, n);
    m[(p, q)] = Scalar::one();
    m
}

/// k^n as a left M_n-module (column vectors).
pub fn column_module(n: usize) -> Result<Bimodule> {
    let mats = (0..n * n).map(|pq| matrix_unit(n, pq / n, pq % n)).collect();
    left_module(&format!("col{n}"), &matrix_algebra(n), mats)
}

/// k^n as a right M_n-module (row vectors): v·E_pq puts v_p in slot q.
pub fn row_module(n: usize) -> Result<Bimodule> {
    let mats = (0..n * n).map(|pq| matrix_unit(n, pq % n, pq / n)).collect();
    right_module(&format!("row{n}"), &matrix_algebra(n), mats)
}

/// The sign character of C_n when n is even, the trivial one otherwise; as a left module.
pub fn cyclic_sign_module(n: usize) -> Result<Bimodule> {
    let s = if n.is_multiple_of(2) { -1 } else { 1 };
    let mats = (0..n).map(|i| Matrix::from_i64(&[&[if i % 2 == 1 { s } else { 1 }]])).collect();
    left_module(&format!("sign_C{n}"), &cyclic_group_algebra(n), mats)
}

/// Names accepted by [`module`].
pub const MODULE_NAMES: &[&str] = &[
    "Vtriv", "Vsign", "Vstd", "Vtriv^r", "Vsign^r", "Vstd^r", "col2", "row2", "col3", "row3", "signC2",
];

pub fn module(name: &str) -> Result<Bimodule> {
    match name {
        "Vtriv" => s3_module("triv"),
        "Vsign" => s3_module("sign"),
        "Vstd" => s3_module("std"),
        "Vtriv^r" => s3_right_module("triv"),
        "Vsign^r" => s3_right_module("sign"),
        "Vstd^r" => s3_right_module("std"),
        "col2" => column_module(2),
        "col3" => column_module(3),
        "row2" => row_module(2),
        "row3" => row_module(3),
        "signC2" => cyclic_sign_module(2),
        _ => {
            if let Some(a) = name.strip_prefix("U_") {
                return Ok(crate::bimodule::unit_bimodule(&algebra(a)?));
            }
            Err(Error::Parse(format!("unknown module {name:?}")))
        }
    }
}

/// ρ(g) traces on the class representatives e, (01), (012).
pub fn s3_character(which: &str) -> Result<[Scalar; 3]> {
    let rep = s3_rep(which)?;
    Ok([rep[0].trace(), rep[1].trace(), rep[4].trace()])
}
