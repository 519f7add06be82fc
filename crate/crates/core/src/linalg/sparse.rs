use std::cmp::Reverse;
use std::collections::BinaryHeap;

use super::scalar::Scalar;

/// Sparse vector as `(index, value)` pairs, sorted by index, no explicit zeros.
pub type SparseVec = Vec<(usize, Scalar)>;

pub fn to_dense(v: &[(usize, Scalar)], n: usize) -> Vec<Scalar> {
    let mut out = vec![Scalar::zero(); n];
    for (i, x) in v {
        out[*i] += x;
    }
    out
}

pub fn from_dense(v: &[Scalar]) -> SparseVec {
    v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i, x.clone())).collect()
}

pub fn unit(i: usize) -> SparseVec {
    vec![(i, Scalar::one())]
}

pub fn scale(v: &[(usize, Scalar)], c: &Scalar) -> SparseVec {
    if c.is_zero() {
        return Vec::new();
    }
    v.iter().map(|(i, x)| (*i, x * c)).collect()
}

/// Sums an arbitrary bag of entries into canonical sparse form.
pub fn normalize(mut v: Vec<(usize, Scalar)>) -> SparseVec {
    v.sort_by_key(|(i, _)| *i);
    let mut out: SparseVec = Vec::with_capacity(v.len());
    for (i, x) in v {
        match out.last_mut() {
            Some((j, y)) if *j == i => *y += &x,
            _ => out.push((i, x)),
        }
    }
    out.retain(|(_, x)| !x.is_zero());
    out
}

pub fn add(a: &[(usize, Scalar)], b: &[(usize, Scalar)]) -> SparseVec {
    let mut v: Vec<(usize, Scalar)> = a.to_vec();
    v.extend_from_slice(b);
    normalize(v)
}

pub fn sub(a: &[(usize, Scalar)], b: &[(usize, Scalar)]) -> SparseVec {
    let mut v: Vec<(usize, Scalar)> = a.to_vec();
    v.extend(b.iter().map(|(i, x)| (*i, -x)));
    normalize(v)
}

/// Dense scratch vector with a min-heap of touched indices; reused across eliminations.
pub(crate) struct Accumulator {
    vals: Vec<Scalar>,
    queued: Vec<bool>,
    heap: BinaryHeap<Reverse<usize>>,
}

impl Accumulator {
    pub fn new(n: usize) -> Accumulator {
        Accumulator {
            vals: vec![Scalar::zero(); n],
            queued: vec![false; n],
            heap: BinaryHeap::new(),
        }
    }

    pub fn add(&mut self, i: usize, x: &Scalar) {
        self.vals[i] += x;
        self.touch(i);
    }

    pub fn sub_mul(&mut self, i: usize, a: &Scalar, b: &Scalar) {
        self.vals[i] = self.vals[i].sub_mul(a, b);
        self.touch(i);
    }

    fn touch(&mut self, i: usize) {
        if !self.queued[i] {
            self.queued[i] = true;
            self.heap.push(Reverse(i));
        }
    }

    /// Pops the smallest touched index whose value is nonzero, leaving its value in place.
    pub fn pop_nonzero(&mut self) -> Option<usize> {
        while let Some(Reverse(i)) = self.heap.pop() {
            self.queued[i] = false;
            if !self.vals[i].is_zero() {
                return Some(i);
            }
        }
        None
    }

    pub fn take(&mut self, i: usize) -> Scalar {
        std::mem::take(&mut self.vals[i])
    }

    /// Drains every remaining nonzero entry in increasing index order.
    pub fn drain_sorted(&mut self) -> SparseVec {
        let mut out = Vec::new();
        while let Some(i) = self.pop_nonzero() {
            out.push((i, self.take(i)));
        }
        out
    }
}
