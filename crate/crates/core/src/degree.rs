//! Multi-degrees in `N^k` and `Z^k`.

use std::fmt;
use std::ops::{Add, Sub};

/// A degree in `N^k`, ordered coordinatewise.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Degree(Vec<u32>);

impl Degree {
    pub fn zero(k: usize) -> Self {
        Degree(vec![0; k])
    }

    /// The standard generator `e_i` (`i` is zero-based).
    pub fn unit(k: usize, i: usize) -> Self {
        let mut d = vec![0; k];
        d[i] = 1;
        Degree(d)
    }

    pub fn uniform(k: usize, n: u32) -> Self {
        Degree(vec![n; k])
    }

    pub fn from_vec(coords: Vec<u32>) -> Self {
        Degree(coords)
    }

    pub fn k(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[u32] {
        &self.0
    }

    pub fn get(&self, i: usize) -> u32 {
        self.0[i]
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Coordinatewise `self <= other`.
    pub fn le(&self, other: &Degree) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// Coordinatewise maximum `self ∨ other`.
    pub fn join(&self, other: &Degree) -> Degree {
        Degree(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn meet(&self, other: &Degree) -> Degree {
        Degree(self.0.iter().zip(&other.0).map(|(a, b)| *a.min(b)).collect())
    }

    /// `self - other`, or `None` when some coordinate would go negative.
    pub fn checked_sub(&self, other: &Degree) -> Option<Degree> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(Degree)
    }

    pub fn signed(&self) -> DegreeZ {
        DegreeZ(self.0.iter().map(|&c| c as i64).collect())
    }

    /// Every degree `m` with `0 <= m <= self`, in lexicographic order.
    pub fn box_below(&self) -> Vec<Degree> {
        let mut out = vec![Vec::with_capacity(self.k())];
        for &bound in &self.0 {
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    (0..=bound).map(move |c| {
                        let mut p = prefix.clone();
                        p.push(c);
                        p
                    })
                })
                .collect();
        }
        out.into_iter().map(Degree).collect()
    }

    /// Coordinatewise scalar multiple.
    pub fn scale(&self, n: u32) -> Degree {
        Degree(self.0.iter().map(|c| c * n).collect())
    }
}

impl Add for &Degree {
    type Output = Degree;
    fn add(self, rhs: &Degree) -> Degree {
        Degree(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_tuple(f, self.0.iter())
    }
}

/// A degree in `Z^k`; the grading group of the Kumjian-Pask algebra.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct DegreeZ(Vec<i64>);

impl DegreeZ {
    pub fn zero(k: usize) -> Self {
        DegreeZ(vec![0; k])
    }

    pub fn from_vec(coords: Vec<i64>) -> Self {
        DegreeZ(coords)
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }
}

impl Add for &DegreeZ {
    type Output = DegreeZ;
    fn add(self, rhs: &DegreeZ) -> DegreeZ {
        DegreeZ(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &DegreeZ {
    type Output = DegreeZ;
    fn sub(self, rhs: &DegreeZ) -> DegreeZ {
        DegreeZ(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl fmt::Display for DegreeZ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_tuple(f, self.0.iter())
    }
}

fn write_tuple<T: fmt::Display>(
    f: &mut fmt::Formatter<'_>,
    items: impl Iterator<Item = T>,
) -> fmt::Result {
    f.write_str("(")?;
    for (i, c) in items.enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{c}")?;
    }
    f.write_str(")")
}
