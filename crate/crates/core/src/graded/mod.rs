//! Graded-commutative Q-algebras truncated at a degree cutoff.

mod free;
mod ring;
pub mod standard;
mod validate;

pub use free::{free_gc_basis, Generator, GeneratorList, Monomial};
pub use ring::{GradedRing, ProductEntry, RingBuilder};
pub use validate::{validate_ring, InvariantCheck, ValidationReport};

use num_traits::Zero;
use serde::{Deserialize, Serialize};
use std::ops::Add;

use crate::linalg::{is_zero_vec, unit_vec, zero_vec, Q};

/// Hodge type `(p, q)` of a basis element; `p + q` is its degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Bidegree {
    pub p: usize,
    pub q: usize,
}

impl Bidegree {
    pub const fn new(p: usize, q: usize) -> Self {
        Bidegree { p, q }
    }

    pub fn total(self) -> usize {
        self.p + self.q
    }
}

impl Add for Bidegree {
    type Output = Bidegree;
    fn add(self, o: Bidegree) -> Bidegree {
        Bidegree::new(self.p + o.p, self.q + o.q)
    }
}

/// Per-degree dimensions (and basis labels) for degrees `0..=cutoff`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GradedVectorSpace {
    pub cutoff: usize,
    pub dims: Vec<usize>,
    pub labels: Vec<Vec<String>>,
}

impl GradedVectorSpace {
    /// Unlabelled space; labels are left empty.
    pub fn from_dims(dims: Vec<usize>) -> Self {
        GradedVectorSpace {
            cutoff: dims.len().saturating_sub(1),
            labels: vec![Vec::new(); dims.len()],
            dims,
        }
    }

    /// Dimension in `degree`, zero beyond the cutoff.
    pub fn dim(&self, degree: usize) -> usize {
        self.dims.get(degree).copied().unwrap_or(0)
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    /// Scales every dimension by `factor`.
    pub fn scaled(&self, factor: usize) -> Self {
        GradedVectorSpace::from_dims(self.dims.iter().map(|d| d * factor).collect())
    }
}

/// Homogeneous element: a degree and coordinates in that degree's basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Element {
    pub degree: usize,
    pub coeffs: Vec<Q>,
}

impl Element {
    pub fn new(degree: usize, coeffs: Vec<Q>) -> Self {
        Element { degree, coeffs }
    }

    pub fn zero(degree: usize, dim: usize) -> Self {
        Element::new(degree, zero_vec(dim))
    }

    pub fn basis(degree: usize, dim: usize, idx: usize) -> Self {
        Element::new(degree, unit_vec(dim, idx))
    }

    pub fn is_zero(&self) -> bool {
        is_zero_vec(&self.coeffs)
    }

    pub fn scale(&self, c: &Q) -> Element {
        Element::new(self.degree, self.coeffs.iter().map(|x| x * c).collect())
    }

    /// Sum of two elements of the same degree.
    pub fn add(&self, other: &Element) -> Element {
        assert_eq!(
            self.degree, other.degree,
            "adding elements of different degrees"
        );
        Element::new(
            self.degree,
            self.coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    /// Linear combination `sum c_i * e_i` over basis elements of one degree.
    pub fn combination(degree: usize, dim: usize, terms: &[(usize, Q)]) -> Self {
        let mut coeffs = zero_vec(dim);
        for (i, c) in terms {
            coeffs[*i] += c;
        }
        Element::new(degree, coeffs)
    }

    /// The single coefficient of an element in a one-dimensional degree.
    pub fn scalar(&self) -> Option<&Q> {
        match self.coeffs.as_slice() {
            [c] => Some(c),
            [] => None,
            _ => None,
        }
    }

    pub fn nonzero_terms(&self) -> impl Iterator<Item = (usize, &Q)> {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero())
    }
}
