//! Finite-dimensional unital associative algebras by structure constants.

use std::fmt;
use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::sparse::{self, SparseVec};
use crate::linalg::{Matrix, Scalar};
use crate::report::Report;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Field {
    Q,
    GF(u64),
}

impl Field {
    pub fn modulus(self) -> Option<u64> {
        match self {
            Field::Q => None,
            Field::GF(p) => Some(p),
        }
    }

    pub fn coerce(self, x: &Scalar) -> Scalar {
        x.to_field(self.modulus())
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Q => write!(f, "Q"),
            Field::GF(p) => write!(f, "GF{p}"),
        }
    }
}

enum Structure {
    /// `products[i*dim + j]` = e_i·e_j.
    Table(Vec<SparseVec>),
    /// Lexicographic tensor of table algebras; the product table is built on first use.
    Tensor(Vec<Algebra>, OnceLock<Vec<SparseVec>>),
}

struct AlgebraData {
    name: String,
    field: Field,
    dim: usize,
    structure: Structure,
    unit: Vec<Scalar>,
    /// Algebra generators (unit omitted); bimodule checks only need these.
    generators: Vec<SparseVec>,
    labels: Vec<String>,
}

/// Cheap-to-clone handle. Equality compares structure, not names.
#[derive(Clone)]
pub struct Algebra(Arc<AlgebraData>);

impl PartialEq for Algebra {
    fn eq(&self, o: &Algebra) -> bool {
        if Arc::ptr_eq(&self.0, &o.0) {
            return true;
        }
        if self.0.field != o.0.field || self.0.dim != o.0.dim || self.0.unit != o.0.unit {
            return false;
        }
        match (&self.0.structure, &o.0.structure) {
            (Structure::Tensor(a, _), Structure::Tensor(b, _)) if a.len() == b.len() => a == b,
            _ => self.products() == o.products(),
        }
    }
}

impl fmt::Debug for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Algebra({}, dim {})", self.0.name, self.0.dim)
    }
}

impl Algebra {
    /// Raw constructor; `products[i*dim+j]` is the sparse product e_i·e_j.
    pub fn from_products(name: &str, field: Field, dim: usize, products: Vec<SparseVec>, unit: Vec<Scalar>, labels: Vec<String>) -> Algebra {
        assert_eq!(products.len(), dim * dim);
        assert_eq!(unit.len(), dim);
        let unit_sparse = sparse::from_dense(&unit);
        let generators = (0..dim).map(sparse::unit).filter(|g| *g != unit_sparse).collect();
        Algebra::assemble(name, field, dim, Structure::Table(products), unit, generators, labels)
    }

    fn assemble(name: &str, field: Field, dim: usize, structure: Structure, unit: Vec<Scalar>, generators: Vec<SparseVec>, labels: Vec<String>) -> Algebra {
        let labels = if labels.len() == dim {
            labels
        } else {
            (0..dim).map(|i| format!("e{i}")).collect()
        };
        Algebra(Arc::new(AlgebraData {
            name: name.to_string(),
            field,
            dim,
            structure,
            unit,
            generators,
            labels,
        }))
    }

    fn products(&self) -> &[SparseVec] {
        match &self.0.structure {
            Structure::Table(p) => p,
            Structure::Tensor(factors, cell) => cell.get_or_init(|| tensor_table(factors)),
        }
    }

    /// Table factors when this is a tensor product (a single-element list otherwise).
    pub fn tensor_factors(&self) -> Vec<Algebra> {
        match &self.0.structure {
            Structure::Table(_) => vec![self.clone()],
            Structure::Tensor(f, _) => f.clone(),
        }
    }

    /// From structure-constant triples `(i, j, k, c)`; omitted triples are 0.
    pub fn from_structure(name: &str, field: Field, dim: usize, triples: &[(usize, usize, usize, Scalar)], unit: Vec<Scalar>) -> Result<Algebra> {
        let mut raw: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); dim * dim];
        for (i, j, k, c) in triples {
            if *i >= dim || *j >= dim || *k >= dim {
                return Err(Error::invalid("structure", format!("triple ({i},{j},{k}) out of range for dim {dim}")));
            }
            raw[i * dim + j].push((*k, field.coerce(c)));
        }
        if unit.len() != dim {
            return Err(Error::invalid("unit", format!("length {} != dim {dim}", unit.len())));
        }
        let unit = unit.iter().map(|x| field.coerce(x)).collect();
        Ok(Algebra::from_products(
            name,
            field,
            dim,
            raw.into_iter().map(sparse::normalize).collect(),
            unit,
            Vec::new(),
        ))
    }

    pub fn name(&self) -> &str {
        &self.0.name
    }

    pub fn field(&self) -> Field {
        self.0.field
    }

    pub fn dim(&self) -> usize {
        self.0.dim
    }

    pub fn unit(&self) -> &[Scalar] {
        &self.0.unit
    }

    pub fn unit_sparse(&self) -> SparseVec {
        sparse::from_dense(&self.0.unit)
    }

    pub fn generators(&self) -> &[SparseVec] {
        &self.0.generators
    }

    pub fn labels(&self) -> &[String] {
        &self.0.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.0.labels[i]
    }

    pub fn renamed(&self, name: &str) -> Algebra {
        let d = &self.0;
        let structure = match &d.structure {
            Structure::Table(p) => Structure::Table(p.clone()),
            Structure::Tensor(f, _) => Structure::Tensor(f.clone(), OnceLock::new()),
        };
        Algebra::assemble(name, d.field, d.dim, structure, d.unit.clone(), d.generators.clone(), d.labels.clone())
    }

    /// e_i·e_j.
    pub fn mul_basis(&self, i: usize, j: usize) -> &SparseVec {
        &self.products()[i * self.0.dim + j]
    }

    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> Scalar {
        self.mul_basis(i, j)
            .iter()
            .find(|(kk, _)| *kk == k)
            .map_or_else(Scalar::zero, |(_, c)| c.clone())
    }

    pub fn mul_sparse(&self, x: &[(usize, Scalar)], y: &[(usize, Scalar)]) -> SparseVec {
        let mut acc = Vec::new();
        for (i, a) in x {
            for (j, b) in y {
                let ab = a * b;
                for (k, c) in self.mul_basis(*i, *j) {
                    acc.push((*k, &ab * c));
                }
            }
        }
        sparse::normalize(acc)
    }

    pub fn mul(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        sparse::to_dense(&self.mul_sparse(&sparse::from_dense(x), &sparse::from_dense(y)), self.dim())
    }

    /// Matrix of y ↦ x·y.
    pub fn left_mult_matrix(&self, x: &[(usize, Scalar)]) -> Matrix {
        let d = self.dim();
        let cols: Vec<SparseVec> = (0..d).map(|j| self.mul_sparse(x, &sparse::unit(j))).collect();
        Matrix::from_sparse_columns(d, &cols)
    }

    /// Matrix of y ↦ y·x.
    pub fn right_mult_matrix(&self, x: &[(usize, Scalar)]) -> Matrix {
        let d = self.dim();
        let cols: Vec<SparseVec> = (0..d).map(|j| self.mul_sparse(&sparse::unit(j), x)).collect();
        Matrix::from_sparse_columns(d, &cols)
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(); self.dim()];
        v[i] = Scalar::one();
        v
    }

    pub fn is_commutative(&self) -> bool {
        let d = self.dim();
        (0..d).all(|i| (0..d).all(|j| self.mul_basis(i, j) == self.mul_basis(j, i)))
    }

    /// The same algebra read over GF(p).
    pub fn over_field(&self, field: Field) -> Result<Algebra> {
        if field == self.field() {
            return Ok(self.clone());
        }
        if self.field() != Field::Q {
            return Err(Error::FieldMismatch(self.field().to_string(), field.to_string()));
        }
        let d = &self.0;
        if let Structure::Tensor(f, _) = &d.structure {
            let fs = f.iter().map(|a| a.over_field(field)).collect::<Result<Vec<_>>>()?;
            return Ok(tensor_of_factors(&d.name, fs, d.labels.clone()));
        }
        let conv = |v: &SparseVec| -> SparseVec { v.iter().map(|(i, x)| (*i, field.coerce(x))).filter(|(_, x)| !x.is_zero()).collect() };
        let products = self.products().iter().map(conv).collect();
        let unit = d.unit.iter().map(|x| field.coerce(x)).collect();
        let gens = d.generators.iter().map(conv).collect();
        Ok(Algebra::assemble(
            &d.name,
            field,
            d.dim,
            Structure::Table(products),
            unit,
            gens,
            d.labels.clone(),
        ))
    }
}

/// The ground field as a 1-dimensional algebra.
pub fn ground_field(field: Field) -> Algebra {
    Algebra::from_products("k", field, 1, vec![sparse::unit(0)], vec![Scalar::one()], vec!["1".into()])
}

pub fn validate_algebra(a: &Algebra) -> Report {
    let d = a.dim();
    let mut failures = Vec::new();
    for i in 0..d {
        for j in 0..d {
            let ij = a.mul_basis(i, j);
            for k in 0..d {
                let lhs = a.mul_sparse(ij, &sparse::unit(k));
                let rhs = a.mul_sparse(&sparse::unit(i), a.mul_basis(j, k));
                if lhs != rhs {
                    failures.push(format!("associativity fails at ({i},{j},{k})"));
                }
            }
        }
    }
    let u = a.unit_sparse();
    for j in 0..d {
        let e = sparse::unit(j);
        if a.mul_sparse(&u, &e) != e || a.mul_sparse(&e, &u) != e {
            failures.push(format!("unit law fails at basis index {j}"));
        }
    }
    Report::from_failures(format!("algebra {} is unital associative", a.name()), failures)
}

fn op_name(name: &str) -> String {
    match name.strip_suffix("^op") {
        Some(base) => base.to_string(),
        None => format!("{name}^op"),
    }
}

/// c^op[i][j][k] = c[j][i][k].
pub fn opposite(a: &Algebra) -> Algebra {
    let d = a.dim();
    let d0 = &a.0;
    if let Structure::Tensor(f, _) = &d0.structure {
        // (A⊗B)^op = A^op⊗B^op on the identical basis
        return tensor_of_factors(&op_name(&d0.name), f.iter().map(opposite).collect(), d0.labels.clone());
    }
    let products = (0..d * d).map(|ij| a.mul_basis(ij % d, ij / d).clone()).collect();
    Algebra::assemble(
        &op_name(&d0.name),
        d0.field,
        d,
        Structure::Table(products),
        d0.unit.clone(),
        d0.generators.clone(),
        d0.labels.clone(),
    )
}

fn kron_sparse(x: &[(usize, Scalar)], y: &[(usize, Scalar)], ny: usize) -> SparseVec {
    let mut out = Vec::with_capacity(x.len() * y.len());
    for (i, a) in x {
        for (j, b) in y {
            out.push((i * ny + j, a * b));
        }
    }
    out
}

/// Basis (i,p) ↦ i·dim(b) + p; generators g⊗1 and 1⊗h.
pub fn tensor_algebra(a: &Algebra, b: &Algebra) -> Result<Algebra> {
    if a.field() != b.field() {
        return Err(Error::FieldMismatch(a.field().to_string(), b.field().to_string()));
    }
    // k⊗B and A⊗k have literally the same structure constants as B and A.
    if a.dim() == 1 {
        return Ok(b.clone());
    }
    if b.dim() == 1 {
        return Ok(a.clone());
    }
    let labels = a.labels().iter().flat_map(|x| b.labels().iter().map(move |y| format!("{x}⊗{y}"))).collect();
    let name = format!("{}⊗{}", paren(a.name()), paren(b.name()));
    let mut factors = a.tensor_factors();
    factors.extend(b.tensor_factors());
    Ok(tensor_of_factors(&name, factors, labels))
}

fn tensor_of_factors(name: &str, factors: Vec<Algebra>, labels: Vec<String>) -> Algebra {
    let mut dim = 1;
    let mut unit: SparseVec = sparse::unit(0);
    let mut gens: Vec<SparseVec> = Vec::new();
    for f in &factors {
        let uf = f.unit_sparse();
        gens = gens.iter().map(|g| kron_sparse(g, &uf, f.dim())).collect();
        gens.extend(f.generators().iter().map(|h| kron_sparse(&unit, h, f.dim())));
        unit = kron_sparse(&unit, &uf, f.dim());
        dim *= f.dim();
    }
    let field = factors[0].field();
    let unit = sparse::to_dense(&unit, dim);
    Algebra::assemble(name, field, dim, Structure::Tensor(factors, OnceLock::new()), unit, gens, labels)
}

fn tensor_table(factors: &[Algebra]) -> Vec<SparseVec> {
    let mut table: Vec<SparseVec> = vec![sparse::unit(0)];
    let mut dim = 1;
    for f in factors {
        let db = f.dim();
        let d = dim * db;
        let mut next = Vec::with_capacity(d * d);
        // (i,p,j,q) nested in this order enumerates ((i,p),(j,q)) row-major.
        for i in 0..dim {
            for p in 0..db {
                for j in 0..dim {
                    for q in 0..db {
                        next.push(kron_sparse(&table[i * dim + j], f.mul_basis(p, q), db));
                    }
                }
            }
        }
        table = next;
        dim = d;
    }
    table
}

fn paren(s: &str) -> String {
    if s.contains('⊗') {
        format!("({s})")
    } else {
        s.to_string()
    }
}

/// Checks closure, associativity, identity and inverses; returns the identity index.
pub fn check_group_table(table: &[Vec<usize>]) -> Result<usize> {
    let n = table.len();
    if n == 0 {
        return Err(Error::NotAGroup("empty table".into()));
    }
    for (i, row) in table.iter().enumerate() {
        if row.len() != n {
            return Err(Error::NotAGroup(format!("row {i} has length {}", row.len())));
        }
        if let Some(&x) = row.iter().find(|&&x| x >= n) {
            return Err(Error::NotAGroup(format!("closure: entry {x} in row {i}")));
        }
    }
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if table[table[a][b]][c] != table[a][table[b][c]] {
                    return Err(Error::NotAGroup(format!("associativity at ({a},{b},{c})")));
                }
            }
        }
    }
    let e = (0..n)
        .find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x))
        .ok_or_else(|| Error::NotAGroup("no identity element".into()))?;
    for a in 0..n {
        if !(0..n).any(|b| table[a][b] == e && table[b][a] == e) {
            return Err(Error::NotAGroup(format!("element {a} has no inverse")));
        }
    }
    Ok(e)
}

pub fn group_algebra(name: &str, table: &[Vec<usize>], labels: Vec<String>) -> Result<Algebra> {
    let e = check_group_table(table)?;
    let n = table.len();
    let products = (0..n * n).map(|ij| sparse::unit(table[ij / n][ij % n])).collect();
    let mut unit = vec![Scalar::zero(); n];
    unit[e] = Scalar::one();
    // greedy: keep g unless it already lies in the subgroup generated so far
    let mut gens = Vec::new();
    let mut reached = vec![false; n];
    reached[e] = true;
    for g in 0..n {
        if reached[g] {
            continue;
        }
        gens.push(sparse::unit(g));
        let mut frontier: Vec<usize> = (0..n).filter(|&x| reached[x]).collect();
        while let Some(x) = frontier.pop() {
            for h in gens.iter().map(|v| v[0].0) {
                let y = table[x][h];
                if !reached[y] {
                    reached[y] = true;
                    frontier.push(y);
                }
            }
        }
    }
    Ok(Algebra::assemble(name, Field::Q, n, Structure::Table(products), unit, gens, labels))
}

/// e_{pq}e_{rs} = δ_{qr} e_{ps}; basis index p·n + q.
pub fn matrix_algebra(n: usize) -> Algebra {
    assert!(n >= 1);
    let d = n * n;
    let mut products = Vec::with_capacity(d * d);
    for i in 0..d {
        for j in 0..d {
            let (p, q) = (i / n, i % n);
            let (r, s) = (j / n, j % n);
            products.push(if q == r { sparse::unit(p * n + s) } else { Vec::new() });
        }
    }
    let mut unit = vec![Scalar::zero(); d];
    for p in 0..n {
        unit[p * n + p] = Scalar::one();
    }
    let labels = (0..d).map(|i| format!("e{}{}", i / n + 1, i % n + 1)).collect();
    let name = if n == 1 { "k".to_string() } else { format!("M{n}") };
    // e_{p,p+1} and e_{p+1,p} generate: e_{pq} is a product of adjacent ones and e_pp = e_{p,p+1}e_{p+1,p}
    let gens: Vec<SparseVec> = (0..n.saturating_sub(1))
        .flat_map(|p| [sparse::unit(p * n + p + 1), sparse::unit((p + 1) * n + p)])
        .collect();
    if gens.is_empty() {
        return Algebra::from_products(&name, Field::Q, d, products, unit, labels);
    }
    Algebra::assemble(&name, Field::Q, d, Structure::Table(products), unit, gens, labels)
}

/// Q[x]/(x^n), basis 1, x, …, x^{n−1}.
pub fn truncated_polynomial(n: usize) -> Algebra {
    assert!(n >= 1);
    let products = (0..n * n)
        .map(|ij| if ij / n + ij % n < n { sparse::unit(ij / n + ij % n) } else { Vec::new() })
        .collect();
    let mut unit = vec![Scalar::zero(); n];
    unit[0] = Scalar::one();
    let labels = (0..n).map(|i| if i == 0 { "1".into() } else { format!("x^{i}") }).collect();
    Algebra::from_products(&format!("Qx{n}"), Field::Q, n, products, unit, labels)
}

pub fn cyclic_group_table(n: usize) -> Vec<Vec<usize>> {
    (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect()
}

/// Permutations of {0,1,2} in the order e, (01), (02), (12), (012), (021); product is composition.
pub fn s3_elements() -> Vec<[usize; 3]> {
    vec![[0, 1, 2], [1, 0, 2], [2, 1, 0], [0, 2, 1], [1, 2, 0], [2, 0, 1]]
}

pub fn s3_labels() -> Vec<String> {
    ["e", "(01)", "(02)", "(12)", "(012)", "(021)"].iter().map(|s| s.to_string()).collect()
}

pub fn s3_table() -> Vec<Vec<usize>> {
    let els = s3_elements();
    let index = |p: [usize; 3]| els.iter().position(|&q| q == p).unwrap();
    els.iter().map(|g| els.iter().map(|h| index([g[h[0]], g[h[1]], g[h[2]]])).collect()).collect()
}

pub fn cyclic_group_algebra(n: usize) -> Algebra {
    let labels = (0..n)
        .map(|i| {
            if i == 0 {
                "1".into()
            } else if i == 1 {
                "g".into()
            } else {
                format!("g^{i}")
            }
        })
        .collect();
    group_algebra(&format!("QC{n}"), &cyclic_group_table(n), labels).expect("cyclic table is a group")
}

pub fn s3_algebra() -> Algebra {
    group_algebra("QS3", &s3_table(), s3_labels()).expect("S3 table is a group")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validated_constructors() {
        assert!(validate_algebra(&ground_field(Field::Q)).pass);
        assert!(validate_algebra(&matrix_algebra(2)).pass);
        assert!(validate_algebra(&matrix_algebra(3)).pass);
        assert!(validate_algebra(&s3_algebra()).pass);
        assert!(validate_algebra(&truncated_polynomial(2)).pass);
    }

    #[test]
    fn unit_law_failure_is_reported() {
        let a = Algebra::from_structure("bad", Field::Q, 2, &[(0, 0, 0, Scalar::one())], vec![Scalar::one(), Scalar::zero()]).unwrap();
        let r = validate_algebra(&a);
        assert!(!r.pass);
        assert!(r.failures().iter().any(|f| f.contains("unit law fails at basis index 1")));
    }

    #[test]
    fn matrix_units() {
        let m2 = matrix_algebra(2);
        // e12·e21 = e11
        assert_eq!(m2.mul_basis(1, 2), &sparse::unit(0));
        let op = opposite(&m2);
        // in the opposite, e12*e21 = e21·e12 = e22
        assert_eq!(op.mul_basis(1, 2), &sparse::unit(3));
        assert_eq!(opposite(&op), m2);
        assert_eq!(opposite(&op).name(), "M2");
    }

    #[test]
    fn tensor_of_cyclic_groups_is_klein_four() {
        let c2 = cyclic_group_algebra(2);
        let t = tensor_algebra(&c2, &c2).unwrap();
        let klein: Vec<Vec<usize>> = (0..4).map(|i: usize| (0..4).map(|j: usize| i ^ j).collect()).collect();
        let v4 = group_algebra("V4", &klein, vec![]).unwrap();
        assert_eq!(t, v4);
        let k = ground_field(Field::Q);
        assert_eq!(tensor_algebra(&k, &c2).unwrap(), c2);
    }

    #[test]
    fn group_table_errors() {
        let bad = vec![vec![0, 1], vec![1, 1]];
        assert!(matches!(check_group_table(&bad), Err(Error::NotAGroup(_))));
        let open = vec![vec![0, 2], vec![1, 0]];
        assert!(matches!(check_group_table(&open), Err(Error::NotAGroup(_))));
        let trivial = group_algebra("1", &[vec![0]], vec![]).unwrap();
        assert_eq!(trivial, ground_field(Field::Q));
    }

    #[test]
    fn opposite_of_tensor_is_tensor_of_opposites() {
        let a = matrix_algebra(2);
        let b = s3_algebra();
        let lhs = opposite(&tensor_algebra(&a, &b).unwrap());
        let rhs = tensor_algebra(&opposite(&a), &opposite(&b)).unwrap();
        assert_eq!(lhs, rhs);
    }

    /// Span of all words in the generators, with the unit.
    fn generated_rank(a: &Algebra) -> usize {
        let mut ech = crate::linalg::Echelon::new(a.dim());
        let mut queue = vec![a.unit_sparse()];
        ech.insert(&queue[0]);
        while let Some(w) = queue.pop() {
            for g in a.generators() {
                let gw = a.mul_sparse(g, &w);
                if ech.insert(&gw) {
                    queue.push(gw);
                }
            }
        }
        ech.rank()
    }

    #[test]
    fn generators_generate() {
        for a in [
            s3_algebra(),
            matrix_algebra(2),
            matrix_algebra(3),
            cyclic_group_algebra(3),
            truncated_polynomial(3),
            tensor_algebra(&s3_algebra(), &matrix_algebra(2)).unwrap(),
        ] {
            assert_eq!(generated_rank(&a), a.dim(), "{}", a.name());
        }
        assert_eq!(s3_algebra().generators().len(), 2);
        assert_eq!(matrix_algebra(3).generators().len(), 4);
    }
}
