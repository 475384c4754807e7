//! Sparse rational matrices and rank by incremental elimination.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};

use super::Coeff;

/// Square sparse matrix, stored by rows.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SparseMatrix {
    n: usize,
    rows: Vec<BTreeMap<usize, Coeff>>,
}

impl SparseMatrix {
    pub fn zeros(n: usize) -> Self {
        SparseMatrix { n, rows: vec![BTreeMap::new(); n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.set(i, i, Coeff::one());
        }
        m
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> Coeff {
        self.rows[i].get(&j).cloned().unwrap_or_else(Coeff::zero)
    }

    pub fn set(&mut self, i: usize, j: usize, c: Coeff) {
        if c.is_zero() {
            self.rows[i].remove(&j);
        } else {
            self.rows[i].insert(j, c);
        }
    }

    pub fn add_at(&mut self, i: usize, j: usize, c: &Coeff) {
        let v = self.get(i, j) + c;
        self.set(i, j, v);
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(BTreeMap::is_empty)
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Coeff)> {
        self.rows.iter().enumerate().flat_map(|(i, r)| r.iter().map(move |(j, c)| (i, *j, c)))
    }

    pub fn add(&self, other: &SparseMatrix) -> SparseMatrix {
        let mut out = self.clone();
        for (i, j, c) in other.entries() {
            out.add_at(i, j, c);
        }
        out
    }

    pub fn scale(&self, c: &Coeff) -> SparseMatrix {
        let mut out = Self::zeros(self.n);
        for (i, j, v) in self.entries() {
            out.set(i, j, v * c);
        }
        out
    }

    pub fn sub(&self, other: &SparseMatrix) -> SparseMatrix {
        self.add(&other.scale(&-Coeff::one()))
    }

    pub fn mul(&self, other: &SparseMatrix) -> SparseMatrix {
        let mut out = Self::zeros(self.n);
        for (i, row) in self.rows.iter().enumerate() {
            for (k, a) in row {
                for (j, b) in &other.rows[*k] {
                    out.add_at(i, *j, &(a * b));
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut out = Self::zeros(self.n);
        for (i, j, c) in self.entries() {
            out.set(j, i, c.clone());
        }
        out
    }

    /// Row-major flattening, for rank computations over sets of matrices.
    pub fn flatten(&self) -> BTreeMap<usize, Coeff> {
        self.entries().map(|(i, j, c)| (i * self.n + j, c.clone())).collect()
    }
}

/// Echelon basis grown one vector at a time; rows are kept with leading
/// coefficient one and distinct leading indices.
#[derive(Default, Debug, Clone)]
pub struct RowSpace {
    pivots: HashMap<usize, BTreeMap<usize, Coeff>>,
}

impl RowSpace {
    pub fn new() -> Self {
        RowSpace::default()
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Reduce `v` against the basis; returns the remainder.
    pub fn reduce(&self, mut v: BTreeMap<usize, Coeff>) -> BTreeMap<usize, Coeff> {
        let mut out = BTreeMap::new();
        while let Some((&lead, c)) = v.iter().next() {
            let c = c.clone();
            match self.pivots.get(&lead) {
                Some(row) => {
                    for (j, r) in row {
                        let nv = v.get(j).cloned().unwrap_or_else(Coeff::zero) - &c * r;
                        if nv.is_zero() {
                            v.remove(j);
                        } else {
                            v.insert(*j, nv);
                        }
                    }
                }
                None => {
                    out.insert(lead, c);
                    v.remove(&lead);
                }
            }
        }
        out
    }

    /// Adds `v`; true if it was independent of the current span.
    pub fn insert(&mut self, v: BTreeMap<usize, Coeff>) -> bool {
        let mut r = self.reduce(v);
        let Some((&lead, c)) = r.iter().next() else { return false };
        let inv = Coeff::one() / c.clone();
        for val in r.values_mut() {
            *val *= &inv;
        }
        // keep the basis fully reduced so `reduce` only meets pivots once
        for row in self.pivots.values_mut() {
            if let Some(f) = row.get(&lead).cloned() {
                for (j, x) in &r {
                    let nv = row.get(j).cloned().unwrap_or_else(Coeff::zero) - &f * x;
                    if nv.is_zero() {
                        row.remove(j);
                    } else {
                        row.insert(*j, nv);
                    }
                }
            }
        }
        self.pivots.insert(lead, std::mem::take(&mut r));
        true
    }

    pub fn contains(&self, v: BTreeMap<usize, Coeff>) -> bool {
        self.reduce(v).is_empty()
    }
}

pub fn rank(vectors: impl IntoIterator<Item = BTreeMap<usize, Coeff>>) -> usize {
    let mut space = RowSpace::new();
    for v in vectors {
        space.insert(v);
    }
    space.rank()
}
