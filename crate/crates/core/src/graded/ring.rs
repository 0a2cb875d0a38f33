use num_traits::Zero;
use std::collections::BTreeMap;

use super::{Bidegree, Element, GradedVectorSpace};
use crate::error::{Error, Result};
use crate::linalg::{is_zero_vec, unit_vec, zero_vec, Q};

/// A finite-dimensional graded-commutative algebra over Q, truncated at a
/// degree cutoff. Products are stored as structure tensors: for every degree
/// pair `(i, j)` with `i + j <= cutoff`, entry `a * dim_j + b` holds the
/// expansion of `basis_i[a] * basis_j[b]` in `basis_{i+j}`. Missing pairs are
/// zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedRing {
    space: GradedVectorSpace,
    unit: usize,
    products: BTreeMap<(usize, usize), Vec<Vec<Q>>>,
    hodge: Vec<Vec<Option<Bidegree>>>,
    names: BTreeMap<String, Element>,
}

impl GradedRing {
    pub fn cutoff(&self) -> usize {
        self.space.cutoff
    }

    pub fn space(&self) -> &GradedVectorSpace {
        &self.space
    }

    pub fn dim(&self, degree: usize) -> usize {
        self.space.dim(degree)
    }

    pub fn dims(&self) -> &[usize] {
        &self.space.dims
    }

    pub fn unit_index(&self) -> usize {
        self.unit
    }

    pub fn labels(&self, degree: usize) -> &[String] {
        &self.space.labels[degree]
    }

    pub fn label(&self, degree: usize, idx: usize) -> &str {
        &self.space.labels[degree][idx]
    }

    /// Finds a basis element by label.
    pub fn locate(&self, label: &str) -> Option<(usize, usize)> {
        self.space
            .labels
            .iter()
            .enumerate()
            .find_map(|(d, ls)| ls.iter().position(|l| l == label).map(|i| (d, i)))
    }

    pub fn hodge(&self, degree: usize, idx: usize) -> Option<Bidegree> {
        self.hodge[degree][idx]
    }

    pub fn has_hodge(&self) -> bool {
        self.hodge.iter().flatten().any(Option::is_some)
    }

    pub fn names(&self) -> &BTreeMap<String, Element> {
        &self.names
    }

    /// A named class, or a basis element looked up by its label.
    pub fn element(&self, name: &str) -> Option<Element> {
        self.names.get(name).cloned().or_else(|| {
            self.locate(name)
                .map(|(d, i)| Element::basis(d, self.dim(d), i))
        })
    }

    pub fn one(&self) -> Element {
        Element::basis(0, self.dim(0), self.unit)
    }

    pub fn zero(&self, degree: usize) -> Element {
        Element::zero(degree, self.dim(degree))
    }

    /// Raw structure-tensor entry; zero when absent.
    pub fn basis_product(&self, i: usize, a: usize, j: usize, b: usize) -> Result<Vec<Q>> {
        let k = i + j;
        if k > self.cutoff() {
            return Err(Error::BeyondCutoff {
                degree: k,
                cutoff: self.cutoff(),
            });
        }
        Ok(self
            .products
            .get(&(i, j))
            .map(|t| t[a * self.dim(j) + b].clone())
            .unwrap_or_else(|| zero_vec(self.dim(k))))
    }

    pub fn cup(&self, x: &Element, y: &Element) -> Result<Element> {
        let k = x.degree + y.degree;
        if k > self.cutoff() {
            return Err(Error::BeyondCutoff {
                degree: k,
                cutoff: self.cutoff(),
            });
        }
        if x.coeffs.len() != self.dim(x.degree) || y.coeffs.len() != self.dim(y.degree) {
            return Err(Error::DimensionMismatch(
                "element does not match ring dimensions".into(),
            ));
        }
        let mut out = zero_vec(self.dim(k));
        let Some(tensor) = self.products.get(&(x.degree, y.degree)) else {
            return Ok(Element::new(k, out));
        };
        let dj = self.dim(y.degree);
        for (a, xa) in x.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (b, yb) in y.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                let coeff = xa * yb;
                for (o, t) in out.iter_mut().zip(&tensor[a * dj + b]) {
                    if !t.is_zero() {
                        *o += &coeff * t;
                    }
                }
            }
        }
        Ok(Element::new(k, out))
    }

    /// Same ring restricted to degrees `<= cutoff`.
    pub fn truncate(&self, cutoff: usize) -> Result<GradedRing> {
        if cutoff > self.cutoff() {
            return Err(Error::BeyondCutoff {
                degree: cutoff,
                cutoff: self.cutoff(),
            });
        }
        let mut r = self.clone();
        r.space.cutoff = cutoff;
        r.space.dims.truncate(cutoff + 1);
        r.space.labels.truncate(cutoff + 1);
        r.hodge.truncate(cutoff + 1);
        r.products.retain(|&(i, j), _| i + j <= cutoff);
        r.names.retain(|_, e| e.degree <= cutoff);
        Ok(r)
    }

    /// Overwrites one structure-tensor entry without touching its swapped
    /// partner. Only useful for producing deliberately inconsistent rings.
    pub fn with_raw_product(
        mut self,
        i: usize,
        a: usize,
        j: usize,
        b: usize,
        value: Vec<Q>,
    ) -> Self {
        let (di, dj, dk) = (self.dim(i), self.dim(j), self.dim(i + j));
        let t = self
            .products
            .entry((i, j))
            .or_insert_with(|| vec![zero_vec(dk); di * dj]);
        t[a * dj + b] = value;
        self
    }

    /// Tensor product ring with the Koszul sign rule
    /// `(x (x) y)(x' (x) y') = (-1)^{|y||x'|} xx' (x) yy'`.
    pub fn kunneth(&self, other: &GradedRing) -> Result<GradedRing> {
        let n = self.cutoff();
        if other.cutoff() != n {
            return Err(Error::DimensionMismatch(format!(
                "Kunneth factors have cutoffs {} and {}",
                n,
                other.cutoff()
            )));
        }
        // Basis of degree m: blocks (i, m - i) in increasing i, each block
        // row-major in (a, b).
        let mut offsets = vec![vec![0usize; n + 1]; n + 1];
        let mut basis: Vec<Vec<String>> = Vec::with_capacity(n + 1);
        let mut hodge: Vec<Vec<Option<Bidegree>>> = Vec::with_capacity(n + 1);
        for m in 0..=n {
            let mut labels = Vec::new();
            let mut tags = Vec::new();
            for i in 0..=m {
                let j = m - i;
                offsets[m][i] = labels.len();
                for a in 0..self.dim(i) {
                    for b in 0..other.dim(j) {
                        labels.push(format!("{}*{}", self.label(i, a), other.label(j, b)));
                        tags.push(match (self.hodge(i, a), other.hodge(j, b)) {
                            (Some(x), Some(y)) => Some(x + y),
                            _ => None,
                        });
                    }
                }
            }
            basis.push(labels);
            hodge.push(tags);
        }
        let unit = offsets[0][0] + self.unit * other.dim(0) + other.unit;
        let mut builder = RingBuilder::new(n, basis)?.unit(unit);
        for (m, tags) in hodge.iter().enumerate() {
            for (idx, t) in tags.iter().enumerate() {
                if let Some(t) = t {
                    builder = builder.hodge(m, idx, *t);
                }
            }
        }
        let dims = builder.dims.clone();
        for m1 in 0..=n {
            for m2 in 0..=(n - m1) {
                let target = m1 + m2;
                let mut tensor = vec![zero_vec(dims[target]); dims[m1] * dims[m2]];
                let mut nonzero = false;
                for i1 in 0..=m1 {
                    let j1 = m1 - i1;
                    for i2 in 0..=m2 {
                        let j2 = m2 - i2;
                        let sign_negative = (j1 * i2) % 2 == 1;
                        for a1 in 0..self.dim(i1) {
                            for a2 in 0..self.dim(i2) {
                                let xa = self.basis_product(i1, a1, i2, a2)?;
                                if is_zero_vec(&xa) {
                                    continue;
                                }
                                for b1 in 0..other.dim(j1) {
                                    for b2 in 0..other.dim(j2) {
                                        let yb = other.basis_product(j1, b1, j2, b2)?;
                                        if is_zero_vec(&yb) {
                                            continue;
                                        }
                                        let src1 = offsets[m1][i1] + a1 * other.dim(j1) + b1;
                                        let src2 = offsets[m2][i2] + a2 * other.dim(j2) + b2;
                                        let entry = &mut tensor[src1 * dims[m2] + src2];
                                        let base = offsets[target][i1 + i2];
                                        let width = other.dim(j1 + j2);
                                        for (p, xp) in
                                            xa.iter().enumerate().filter(|(_, c)| !c.is_zero())
                                        {
                                            for (s, ys) in
                                                yb.iter().enumerate().filter(|(_, c)| !c.is_zero())
                                            {
                                                let v = xp * ys;
                                                let slot = &mut entry[base + p * width + s];
                                                if sign_negative {
                                                    *slot -= v;
                                                } else {
                                                    *slot += v;
                                                }
                                                nonzero = true;
                                            }
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
                if nonzero {
                    builder.products.insert((m1, m2), tensor);
                }
            }
        }
        builder.build_unchecked()
    }
}

/// Incremental construction of a [`GradedRing`]. Setting a product also sets
/// its graded-commutative partner; unit products are filled in by `build`.
#[derive(Clone, Debug)]
pub struct RingBuilder {
    cutoff: usize,
    basis: Vec<Vec<String>>,
    dims: Vec<usize>,
    unit: usize,
    products: BTreeMap<(usize, usize), Vec<Vec<Q>>>,
    hodge: Vec<Vec<Option<Bidegree>>>,
    names: BTreeMap<String, Element>,
}

impl RingBuilder {
    /// `basis[d]` lists the labels of degree `d`; there must be exactly
    /// `cutoff + 1` entries and degree 0 must be nonempty.
    pub fn new(cutoff: usize, basis: Vec<Vec<String>>) -> Result<Self> {
        if basis.len() != cutoff + 1 {
            return Err(Error::InvalidRing(format!(
                "basis lists {} degrees but cutoff {cutoff} needs {}",
                basis.len(),
                cutoff + 1
            )));
        }
        if basis[0].is_empty() {
            return Err(Error::InvalidRing("degree 0 has no unit".into()));
        }
        let mut seen = std::collections::HashSet::new();
        for label in basis.iter().flatten() {
            if !seen.insert(label.as_str()) {
                return Err(Error::InvalidRing(format!(
                    "duplicate basis label `{label}`"
                )));
            }
        }
        let dims: Vec<usize> = basis.iter().map(Vec::len).collect();
        let hodge = dims.iter().map(|&d| vec![None; d]).collect();
        Ok(RingBuilder {
            cutoff,
            basis,
            dims,
            unit: 0,
            products: BTreeMap::new(),
            hodge,
            names: BTreeMap::new(),
        })
    }

    /// Basis labels generated as `{prefix}{degree}_{index}` from a dimension list.
    pub fn with_dims(dims: &[usize]) -> Result<Self> {
        let basis = dims
            .iter()
            .enumerate()
            .map(|(d, &n)| {
                (0..n)
                    .map(|i| {
                        if d == 0 && i == 0 {
                            "1".to_string()
                        } else {
                            format!("b{d}_{i}")
                        }
                    })
                    .collect()
            })
            .collect();
        RingBuilder::new(dims.len().saturating_sub(1), basis)
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn unit(mut self, idx: usize) -> Self {
        self.unit = idx;
        self
    }

    pub fn hodge(mut self, degree: usize, idx: usize, tag: Bidegree) -> Self {
        self.hodge[degree][idx] = Some(tag);
        self
    }

    pub fn name(mut self, name: impl Into<String>, element: Element) -> Self {
        self.names.insert(name.into(), element);
        self
    }

    fn locate(&self, label: &str) -> Result<(usize, usize)> {
        self.basis
            .iter()
            .enumerate()
            .find_map(|(d, ls)| ls.iter().position(|l| l == label).map(|i| (d, i)))
            .ok_or_else(|| Error::InvalidRing(format!("unknown basis label `{label}`")))
    }

    /// Sets `basis_i[a] * basis_j[b]` and, by graded commutativity, the swapped product.
    pub fn product(
        mut self,
        i: usize,
        a: usize,
        j: usize,
        b: usize,
        value: Vec<Q>,
    ) -> Result<Self> {
        let k = i + j;
        if k > self.cutoff {
            return Err(Error::BeyondCutoff {
                degree: k,
                cutoff: self.cutoff,
            });
        }
        if a >= self.dims[i] || b >= self.dims[j] {
            return Err(Error::InvalidRing(format!(
                "product index ({i},{a})x({j},{b}) out of range"
            )));
        }
        if value.len() != self.dims[k] {
            return Err(Error::DimensionMismatch(format!(
                "product in degree {k} has {} coefficients but dimension is {}",
                value.len(),
                self.dims[k]
            )));
        }
        let swapped: Vec<Q> = if (i * j) % 2 == 1 {
            value.iter().map(|c| -c).collect()
        } else {
            value.clone()
        };
        self.set(i, a, j, b, value);
        self.set(j, b, i, a, swapped);
        Ok(self)
    }

    pub fn product_by_label(self, x: &str, y: &str, value: Vec<Q>) -> Result<Self> {
        let (i, a) = self.locate(x)?;
        let (j, b) = self.locate(y)?;
        self.product(i, a, j, b, value)
    }

    /// `x * y = c * z` for basis labels.
    pub fn product_scalar(self, x: &str, y: &str, c: Q, z: &str) -> Result<Self> {
        let (k, t) = self.locate(z)?;
        let mut value = zero_vec(self.dims[k]);
        value[t] = c;
        let (i, _) = self.locate(x)?;
        let (j, _) = self.locate(y)?;
        if i + j != k {
            return Err(Error::InvalidRing(format!(
                "{x} * {y} has degree {} but {z} has degree {k}",
                i + j
            )));
        }
        self.product_by_label(x, y, value)
    }

    fn set(&mut self, i: usize, a: usize, j: usize, b: usize, value: Vec<Q>) {
        let (di, dj, dk) = (self.dims[i], self.dims[j], self.dims[i + j]);
        let t = self
            .products
            .entry((i, j))
            .or_insert_with(|| vec![zero_vec(dk); di * dj]);
        t[a * dj + b] = value;
    }

    fn build_unchecked(self) -> Result<GradedRing> {
        let RingBuilder {
            cutoff,
            basis,
            dims,
            unit,
            products,
            hodge,
            names,
        } = self;
        if unit >= dims[0] {
            return Err(Error::InvalidRing(format!(
                "unit index {unit} out of range"
            )));
        }
        for (name, e) in &names {
            if e.degree > cutoff || e.coeffs.len() != dims[e.degree] {
                return Err(Error::InvalidRing(format!(
                    "named class `{name}` does not fit the basis"
                )));
            }
        }
        Ok(GradedRing {
            space: GradedVectorSpace {
                cutoff,
                dims,
                labels: basis,
            },
            unit,
            products,
            hodge,
            names,
        })
    }

    /// Fills unit products and finishes. Invariants are not checked here; use
    /// [`super::validate_ring`] for that.
    pub fn build(mut self) -> Result<GradedRing> {
        if self.unit >= self.dims[0] {
            return Err(Error::InvalidRing(format!(
                "unit index {} out of range",
                self.unit
            )));
        }
        for d in 0..=self.cutoff {
            for idx in 0..self.dims[d] {
                let e = unit_vec(self.dims[d], idx);
                let u = self.unit;
                self.set(0, u, d, idx, e.clone());
                self.set(d, idx, 0, u, e);
            }
        }
        self.products
            .retain(|_, t| t.iter().any(|v| !is_zero_vec(v)));
        self.build_unchecked()
    }
}

/// One stored product `basis_i[a] * basis_j[b]`, keyed as `(degree, index)` pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductEntry {
    pub left: (usize, usize),
    pub right: (usize, usize),
    pub coeffs: Vec<Q>,
}

impl GradedRing {
    /// All nonzero products other than those involving the unit, one per
    /// unordered pair (the lexicographically smaller factor on the left).
    pub fn canonical_products(&self) -> Vec<ProductEntry> {
        let mut out = Vec::new();
        for (&(i, j), tensor) in &self.products {
            for a in 0..self.dim(i) {
                for b in 0..self.dim(j) {
                    if (i == 0 && a == self.unit) || (j == 0 && b == self.unit) {
                        continue;
                    }
                    if (i, a) > (j, b) {
                        continue;
                    }
                    let v = &tensor[a * self.dim(j) + b];
                    if !is_zero_vec(v) {
                        out.push(ProductEntry {
                            left: (i, a),
                            right: (j, b),
                            coeffs: v.clone(),
                        });
                    }
                }
            }
        }
        out
    }

    pub(crate) fn product_tensors(&self) -> &BTreeMap<(usize, usize), Vec<Vec<Q>>> {
        &self.products
    }

    /// Coefficient matrix of `x -> x * x` restricted to one degree, as a list
    /// of symmetric matrices, one per basis element of degree `2 * degree`.
    pub fn square_form(&self, degree: usize) -> Result<Vec<crate::linalg::Matrix>> {
        let n = self.dim(degree);
        let target = 2 * degree;
        if target > self.cutoff() {
            return Err(Error::BeyondCutoff {
                degree: target,
                cutoff: self.cutoff(),
            });
        }
        let mut forms = vec![crate::linalg::Matrix::zeros(n, n); self.dim(target)];
        for a in 0..n {
            for b in 0..n {
                let v = self.basis_product(degree, a, degree, b)?;
                for (t, c) in v.into_iter().enumerate() {
                    forms[t].set(a, b, c);
                }
            }
        }
        Ok(forms)
    }
}
