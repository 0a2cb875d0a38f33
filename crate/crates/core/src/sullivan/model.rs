use num_traits::Zero;
use serde::Serialize;
use std::collections::HashMap;

use super::cdga::Cdga;
use super::free_dga::{FreeDga, Polynomial};
use crate::error::{Error, Result};
use crate::graded::{standard, Element, Generator, GeneratorList, Monomial};
use crate::linalg::{Matrix, SubspaceBasis, Q};

/// Minimal free model of a simply connected CDGA through a degree cutoff,
/// together with the quasi-isomorphism onto the target.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinimalModel {
    pub generators: GeneratorList,
    /// `d` of each generator in the free-monomial basis.
    pub differential: Vec<Polynomial>,
    /// Image of each generator, as coordinates in the target's basis of the
    /// generator's degree.
    pub target_map: Vec<Element>,
    pub verified_through: usize,
}

/// Per-degree outcome of comparing H(model) with H(target).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeCertificate {
    pub degree: usize,
    pub model_dim: usize,
    pub target_dim: usize,
    pub kernel_dim: usize,
    pub image_dim: usize,
}

impl DegreeCertificate {
    pub fn is_isomorphism(&self) -> bool {
        self.kernel_dim == 0 && self.image_dim == self.target_dim
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomotopyTable {
    pub verified_through: usize,
    /// `dims[i]` is the dimension of the i-th rational homotopy group; degrees 0 and 1 are zero.
    pub dims: Vec<usize>,
}

impl HomotopyTable {
    pub fn pi(&self, degree: usize) -> usize {
        self.dims.get(degree).copied().unwrap_or(0)
    }
}

/// Quadratic part of `d` on the generators of one degree. For a target
/// generator `y`, `matrix[(y, pair)]` is the coefficient of the monomial
/// `g_a g_b` (with `a <= b`) in `dy`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticKInvariant {
    pub degree: usize,
    /// Indices of generators that can occur in a quadratic term.
    pub sources: Vec<usize>,
    /// Indices of the degree-`degree` generators.
    pub targets: Vec<usize>,
    /// Canonical unordered source pairs `(a, b)`, `a <= b`, with a nonzero
    /// product of degree `degree + 1`.
    pub pairs: Vec<(usize, usize)>,
    pub matrix: Matrix,
}

impl QuadraticKInvariant {
    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    /// The bilinear form on sources attached to target `t`, graded-symmetric:
    /// entry `(a, b)` with `a != b` holds half the monomial coefficient so
    /// that `sum_ab T_ab v_a v_b` recovers `dy_t` on even sources.
    pub fn tensor(&self, gens: &GeneratorList, t: usize) -> Matrix {
        let n = self.sources.len();
        let pos = |g: usize| self.sources.iter().position(|&s| s == g).expect("source");
        let mut m = Matrix::zeros(n, n);
        let half = Q::new(1.into(), 2.into());
        for (col, &(a, b)) in self.pairs.iter().enumerate() {
            let c = self.matrix.get(t, col).clone();
            if c.is_zero() {
                continue;
            }
            let (i, j) = (pos(a), pos(b));
            if i == j {
                m.set(i, i, c);
            } else {
                let v = &c * &half;
                let odd = gens.get(a).is_odd() && gens.get(b).is_odd();
                m.set(i, j, v.clone());
                m.set(j, i, if odd { -v } else { v });
            }
        }
        m
    }
}

struct Builder<'a> {
    target: &'a Cdga,
    dga: FreeDga,
    images: Vec<Element>,
    d_memo: HashMap<Monomial, Polynomial>,
    phi_memo: HashMap<Monomial, Vec<Q>>,
}

impl<'a> Builder<'a> {
    fn new(target: &'a Cdga) -> Self {
        Builder {
            target,
            dga: FreeDga::default(),
            images: Vec::new(),
            d_memo: HashMap::new(),
            phi_memo: HashMap::new(),
        }
    }

    fn from_model(target: &'a Cdga, model: &MinimalModel) -> Self {
        Builder {
            target,
            dga: FreeDga::new(model.generators.clone(), model.differential.clone()),
            images: model.target_map.clone(),
            d_memo: HashMap::new(),
            phi_memo: HashMap::new(),
        }
    }

    fn target_dim(&self, k: usize) -> usize {
        self.target.dim(k)
    }

    /// Image of a monomial in the target; zero above the target's cutoff.
    fn phi_monomial(&mut self, m: &Monomial) -> Vec<Q> {
        if let Some(v) = self.phi_memo.get(m) {
            return v.clone();
        }
        let degree = self.dga.gens.degree_of(m);
        let v = if degree > self.target.cutoff() {
            Vec::new()
        } else {
            match m.split_first() {
                None => self.target.ring().one().coeffs,
                Some((g, rest)) => {
                    let r = Element::new(
                        degree - self.dga.gens.get(g).degree,
                        self.phi_monomial(&rest),
                    );
                    self.target
                        .ring()
                        .cup(&self.images[g], &r)
                        .expect("degree within cutoff")
                        .coeffs
                }
            }
        };
        self.phi_memo.insert(m.clone(), v.clone());
        v
    }

    fn phi_matrix(&mut self, degree: usize, basis: &[Monomial]) -> Matrix {
        let columns: Vec<Vec<Q>> = basis.iter().map(|m| self.phi_monomial(m)).collect();
        Matrix::from_columns(self.target_dim(degree), &columns).expect("target dimension")
    }

    fn d_matrix(&mut self, degree: usize) -> (Vec<Monomial>, Matrix) {
        let source = self.dga.basis(degree);
        let target = self.dga.basis(degree + 1);
        let m = self.dga.d_matrix(&source, &target, &mut self.d_memo);
        (source, m)
    }

    fn add_generator(
        &mut self,
        name: String,
        degree: usize,
        d: Polynomial,
        image: Element,
    ) -> Result<()> {
        self.dga.gens.push(Generator::new(name, degree))?;
        self.dga.d.push(d);
        self.images.push(image);
        Ok(())
    }

    /// Target cocycle classes of degree `m` not hit by H^m(model).
    fn cokernel_representatives(&mut self, m: usize) -> Vec<Vec<Q>> {
        let (basis, d) = self.d_matrix(m);
        let phi = self.phi_matrix(m, &basis);
        let mut spanning: Vec<Vec<Q>> = d
            .kernel_basis()
            .vectors
            .iter()
            .map(|z| phi.mul_vec(z).expect("shape"))
            .collect();
        spanning.extend(self.target.coboundaries(m).vectors);
        let hit = SubspaceBasis::echelon(self.target_dim(m), spanning);
        hit.extend_from(&self.target.cocycles(m).vectors)
    }

    /// Cocycles `z` of degree `m + 1` whose image is a coboundary `d a`,
    /// modulo coboundaries of the model, each paired with such an `a`.
    fn kernel_representatives(
        &mut self,
        m: usize,
    ) -> Result<(Vec<Monomial>, Vec<(Vec<Q>, Vec<Q>)>)> {
        let (basis, d_next) = self.d_matrix(m + 1);
        let phi = self.phi_matrix(m + 1, &basis);
        let d_target = self.target.d(m);
        let (nz, na) = (basis.len(), self.target_dim(m));
        let rows = d_next.rows() + phi.rows();
        let mut block = Matrix::zeros(rows, nz + na);
        for r in 0..d_next.rows() {
            for c in 0..nz {
                block.set(r, c, d_next.get(r, c).clone());
            }
        }
        for r in 0..phi.rows() {
            for c in 0..nz {
                block.set(d_next.rows() + r, c, phi.get(r, c).clone());
            }
            for c in 0..na {
                block.set(d_next.rows() + r, nz + c, -d_target.get(r, c).clone());
            }
        }
        let projections: Vec<Vec<Q>> = block
            .kernel_basis()
            .vectors
            .into_iter()
            .map(|v| v[..nz].to_vec())
            .collect();
        let kernel = SubspaceBasis::echelon(nz, projections);
        let (_, d_here) = self.d_matrix(m);
        let boundaries = d_here.image_basis();
        let mut out = Vec::new();
        for z in boundaries.extend_from(&kernel.vectors) {
            let image = phi.mul_vec(&z)?;
            let a = d_target.solve(&image)?.ok_or_else(|| {
                Error::Certification(format!("kernel class in degree {} has no primitive", m + 1))
            })?;
            out.push((z, a));
        }
        Ok((basis, out))
    }

    fn run(mut self, cutoff: usize) -> Result<MinimalModel> {
        for m in 2..=cutoff {
            let closed = self.cokernel_representatives(m);
            let count = closed.len();
            for (k, a) in closed.into_iter().enumerate() {
                let name = generator_name('x', m, k, count);
                self.add_generator(name, m, Polynomial::zero(), Element::new(m, a))?;
            }
            // Injectivity on H^{m+1} needs the target in degree m + 1.
            if m + 1 > self.target.cutoff() {
                continue;
            }
            let (basis, killers) = self.kernel_representatives(m)?;
            let count = killers.len();
            for (k, (z, a)) in killers.into_iter().enumerate() {
                let name = generator_name('y', m, k, count);
                let d = Polynomial::from_vector(&basis, &z);
                self.add_generator(name, m, d, Element::new(m, a))?;
            }
        }
        let model = MinimalModel {
            generators: self.dga.gens.clone(),
            differential: self.dga.d.clone(),
            target_map: self.images.clone(),
            verified_through: cutoff,
        };
        Ok(model)
    }

    fn certificate(&mut self, i: usize) -> Result<DegreeCertificate> {
        let (basis, d) = self.d_matrix(i);
        let cocycles = d.kernel_basis();
        let boundaries = if i == 0 {
            SubspaceBasis::empty(basis.len())
        } else {
            self.d_matrix(i - 1).1.image_basis()
        };
        let phi = self.phi_matrix(i, &basis);
        // Pairs (c, c') with phi(Z c) = B c'; B has independent columns, so
        // the kernel projects isomorphically onto the cocycle coordinates.
        let z_cols = Matrix::from_columns(basis.len(), &cocycles.vectors)?;
        let neg_b: Vec<Vec<Q>> = self
            .target
            .coboundaries(i)
            .vectors
            .iter()
            .map(|v| v.iter().map(|x| -x).collect())
            .collect();
        let neg_b = Matrix::from_columns(self.target_dim(i), &neg_b)?;
        let preimage_dim = phi.mul(&z_cols)?.hstack(&neg_b)?.kernel_basis().dim();
        let model_dim = cocycles.dim() - boundaries.dim();
        let target_dim = self.target.cohomology_dim(i);
        let kernel_dim = preimage_dim - boundaries.dim();
        Ok(DegreeCertificate {
            degree: i,
            model_dim,
            target_dim,
            kernel_dim,
            image_dim: model_dim - kernel_dim,
        })
    }
}

fn generator_name(prefix: char, degree: usize, k: usize, count: usize) -> String {
    if count == 1 {
        format!("{prefix}{degree}")
    } else {
        format!("{prefix}{degree}_{}", k + 1)
    }
}

/// Builds the minimal model of `target` through `cutoff` and certifies it.
/// Requires `H^0 = Q` and `H^1 = 0`, both computed from `target`.
pub fn build_minimal_model(target: &Cdga, cutoff: usize) -> Result<MinimalModel> {
    if cutoff > target.cutoff() {
        return Err(Error::BeyondCutoff {
            degree: cutoff,
            cutoff: target.cutoff(),
        });
    }
    let h0 = target.cohomology_dim(0);
    if h0 != 1 {
        return Err(Error::Hypothesis(format!(
            "H^0 has dimension {h0}, expected 1"
        )));
    }
    if target.cutoff() >= 1 {
        let h1 = target.cohomology_dim(1);
        if h1 != 0 {
            return Err(Error::Hypothesis(format!(
                "H^1 has dimension {h1}, expected 0"
            )));
        }
    }
    let model = Builder::new(target).run(cutoff)?;
    for c in certify(&model, target)? {
        if !c.is_isomorphism() {
            return Err(Error::Certification(format!(
                "degree {}: model {} vs target {}, kernel {}, image {}",
                c.degree, c.model_dim, c.target_dim, c.kernel_dim, c.image_dim
            )));
        }
    }
    if !model.is_minimal() {
        return Err(Error::Certification(
            "differential has a linear part".into(),
        ));
    }
    if !model.d_squared_vanishes() {
        return Err(Error::Certification("d o d does not vanish".into()));
    }
    Ok(model)
}

/// Recomputes the induced map on cohomology in every degree up to
/// `model.verified_through`. Also checks that the target map is a chain map
/// on generators.
pub fn certify(model: &MinimalModel, target: &Cdga) -> Result<Vec<DegreeCertificate>> {
    let mut b = Builder::from_model(target, model);
    for (g, gen) in model.generators.iter().enumerate() {
        let dg = &model.differential[g];
        let deg = gen.degree + 1;
        let basis = b.dga.basis(deg);
        let phi = b.phi_matrix(deg, &basis);
        let lhs = phi.mul_vec(&dg.to_vector(&basis))?;
        let rhs = target.d(gen.degree).mul_vec(&model.target_map[g].coeffs)?;
        if lhs != rhs {
            return Err(Error::Certification(format!(
                "target map is not a chain map on `{}`",
                gen.name
            )));
        }
    }
    (0..=model.verified_through)
        .map(|i| b.certificate(i))
        .collect()
}

impl MinimalModel {
    pub fn dga(&self) -> FreeDga {
        FreeDga::new(self.generators.clone(), self.differential.clone())
    }

    /// No generator has a linear term in its differential.
    pub fn is_minimal(&self) -> bool {
        self.differential
            .iter()
            .all(|d| d.word_length_part(1).is_zero())
    }

    pub fn d_squared_vanishes(&self) -> bool {
        let dga = self.dga();
        let mut memo = HashMap::new();
        self.differential
            .iter()
            .all(|d| dga.d_polynomial(d, &mut memo).is_zero())
    }

    /// The model truncated at `cutoff` as an explicit CDGA (free ring with
    /// differential matrices).
    pub fn to_cdga(&self, cutoff: usize) -> Result<Cdga> {
        let ring = standard::free_ring(&self.generators, cutoff);
        let dga = self.dga();
        let mut memo = HashMap::new();
        let d = (0..cutoff)
            .map(|i| dga.d_matrix(&dga.basis(i), &dga.basis(i + 1), &mut memo))
            .collect();
        Cdga::new(ring, d)
    }

    pub fn generators_in_degree(&self, degree: usize) -> Vec<usize> {
        self.generators
            .iter()
            .enumerate()
            .filter(|(_, g)| g.degree == degree)
            .map(|(i, _)| i)
            .collect()
    }

    pub fn format_polynomial(&self, p: &Polynomial) -> String {
        format_polynomial(&self.generators, p)
    }
}

pub fn format_polynomial(gens: &GeneratorList, p: &Polynomial) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (m, c)) in p.terms().enumerate() {
        let mono = gens.format_monomial(m);
        let negative = *c < Q::zero();
        let abs = if negative { -c } else { c.clone() };
        if i == 0 {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        if abs == Q::from_integer(1.into()) {
            out.push_str(&mono);
        } else {
            out.push_str(&format!("{abs}*{mono}"));
        }
    }
    out
}

pub fn homotopy_table(m: &MinimalModel) -> HomotopyTable {
    let mut dims = vec![0; m.verified_through + 1];
    for g in m.generators.iter() {
        if g.degree <= m.verified_through {
            dims[g.degree] += 1;
        }
    }
    HomotopyTable {
        verified_through: m.verified_through,
        dims,
    }
}

pub fn k_invariant_quadratic(m: &MinimalModel, degree: usize) -> Result<QuadraticKInvariant> {
    let targets = m.generators_in_degree(degree);
    if targets.is_empty() {
        return Err(Error::Hypothesis(format!(
            "model has no generators in degree {degree}"
        )));
    }
    let gens = &m.generators;
    let sources: Vec<usize> = gens
        .iter()
        .enumerate()
        .filter(|(_, g)| g.degree < degree)
        .map(|(i, _)| i)
        .collect();
    let mut pairs = Vec::new();
    for (ia, &a) in sources.iter().enumerate() {
        for &b in &sources[ia..] {
            let (ga, gb) = (gens.get(a), gens.get(b));
            if ga.degree + gb.degree != degree + 1 {
                continue;
            }
            if a == b && ga.is_odd() {
                continue;
            }
            pairs.push((a, b));
        }
    }
    let mut matrix = Matrix::zeros(targets.len(), pairs.len());
    for (row, &t) in targets.iter().enumerate() {
        let quad = m.differential[t].word_length_part(2);
        for (col, &(a, b)) in pairs.iter().enumerate() {
            let (_, mono) = gens
                .multiply(&Monomial::generator(a), &Monomial::generator(b))
                .expect("nonvanishing pair");
            matrix.set(row, col, quad.coefficient(&mono));
        }
    }
    Ok(QuadraticKInvariant {
        degree,
        sources,
        targets,
        pairs,
        matrix,
    })
}
