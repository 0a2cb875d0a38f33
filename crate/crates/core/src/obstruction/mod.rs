//! Maps into the rationalized 2-sphere: the two-stage tower
//! K(V2, 2) x_{K(V3, 4)} *, the lifting criterion `eta^2 = 0`, isotropy of
//! rational quadratic forms, and homotopy of the resulting mapping spaces.

mod quadratic;

pub use quadratic::{
    isotropic_over_closure, isotropic_over_q, primitive_integer, rational_sqrt, ClosureIsotropy,
    IsotropyQ, QuadraticFormQ, Witness,
};

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graded::{validate_ring, Element, GradedRing};
use crate::linalg::{quotient_dim, unit_vec, Matrix, SubspaceBasis, Q};
use crate::sullivan::{MinimalModel, QuadraticKInvariant};

/// A two-stage Postnikov tower with `pi_2 = V2`, `pi_3 = V3` and
/// k-invariant `sigma: Sym^2 V2 -> V3`, one symmetric matrix per V3 coordinate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoStageTower {
    v2_dim: usize,
    v3_dim: usize,
    sigma: Vec<Matrix>,
}

impl TwoStageTower {
    pub fn new(v2_dim: usize, sigma: Vec<Matrix>) -> Result<Self> {
        for s in &sigma {
            if s.rows() != v2_dim || s.cols() != v2_dim || !s.is_symmetric() {
                return Err(Error::InvalidTower(format!(
                    "sigma components must be symmetric {v2_dim}x{v2_dim} matrices"
                )));
            }
        }
        Ok(TwoStageTower {
            v2_dim,
            v3_dim: sigma.len(),
            sigma,
        })
    }

    /// The tower of S^2 with a nonzero scalar k-invariant.
    pub fn standard_with_sigma(sigma: Q) -> Result<Self> {
        if sigma.is_zero() {
            return Err(Error::InvalidTower(
                "the sphere tower needs a nonzero k-invariant".into(),
            ));
        }
        TwoStageTower::new(1, vec![Matrix::new(1, 1, vec![sigma])?])
    }

    /// Tower read off a minimal model in degrees 2 and 3.
    pub fn from_model(model: &MinimalModel, k: &QuadraticKInvariant) -> Result<Self> {
        let v2: Vec<usize> = model.generators_in_degree(2);
        if k.degree != 3 || k.sources != v2 {
            return Err(Error::InvalidTower(
                "k-invariant must map Sym^2 pi_2 to pi_3".into(),
            ));
        }
        let sigma = (0..k.targets.len())
            .map(|t| k.tensor(&model.generators, t))
            .collect();
        TwoStageTower::new(v2.len(), sigma)
    }

    pub fn v2_dim(&self) -> usize {
        self.v2_dim
    }

    pub fn v3_dim(&self) -> usize {
        self.v3_dim
    }

    pub fn sigma(&self) -> &[Matrix] {
        &self.sigma
    }

    pub fn is_product(&self) -> bool {
        self.sigma.iter().all(Matrix::is_zero)
    }

    /// `sigma(x, y)` as a vector in V3.
    pub fn evaluate(&self, x: &[Q], y: &[Q]) -> Result<Vec<Q>> {
        self.sigma
            .iter()
            .map(|s| Ok(x.iter().zip(&s.mul_vec(y)?).map(|(a, b)| a * b).sum()))
            .collect()
    }
}

pub fn standard_s2_tower() -> TwoStageTower {
    TwoStageTower::standard_with_sigma(Q::from_integer(1.into())).expect("nonzero sigma")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Field {
    Rationals,
    Closure,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Eta {
    Rational(Element),
    /// Solution that only exists after adjoining square roots.
    OverClosure(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftSolution {
    pub eta: Eta,
    pub field: Field,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LiftOutcome {
    Solutions(Vec<LiftSolution>),
    /// Only `eta = 0` lifts.
    NoNonzero,
    Undetermined(String),
}

/// The form `x -> x * x` on H^2 when H^4 is one-dimensional.
pub fn square_form_h2(h: &GradedRing) -> Result<QuadraticFormQ> {
    let forms = h.square_form(2)?;
    match forms.len() {
        0 => Ok(QuadraticFormQ::new(Matrix::zeros(h.dim(2), h.dim(2)))?),
        1 => QuadraticFormQ::new(forms.into_iter().next().expect("one form")),
        n => Err(Error::Hypothesis(format!(
            "H^4 has dimension {n}, expected at most 1"
        ))),
    }
}

/// Whether `eta` in H^2 satisfies `eta * eta = 0` exactly.
pub fn is_lift(h: &GradedRing, eta: &Element) -> Result<bool> {
    Ok(h.cup(eta, eta)?.is_zero())
}

/// Nonzero classes `eta` in H^2 along which a map to H^2 lifts through the
/// standard tower, i.e. `eta * eta = 0`.
pub fn lift_exists(
    h: &GradedRing,
    t: &TwoStageTower,
    field: Field,
    search_height: u64,
) -> Result<LiftOutcome> {
    if let Some(f) = validate_ring(h).failures().next() {
        return Err(Error::InvalidRing(f.name.to_string()));
    }
    if t.v2_dim() != 1 || t.v3_dim() != 1 {
        return Err(Error::Hypothesis(
            "only towers with pi_2 = pi_3 = Q are supported".into(),
        ));
    }
    let n = h.dim(2);
    if n == 0 {
        return Ok(LiftOutcome::NoNonzero);
    }
    let rational = |v: Vec<Q>| -> Result<LiftSolution> {
        let eta = Element::new(2, v);
        if !t.is_product() && !is_lift(h, &eta)? {
            return Err(Error::Certification(
                "returned class has nonzero square".into(),
            ));
        }
        Ok(LiftSolution {
            eta: Eta::Rational(eta),
            field,
        })
    };
    if t.is_product() {
        return Ok(LiftOutcome::Solutions(vec![rational(unit_vec(n, 0))?]));
    }
    let dim4 = h.dim(4);
    if dim4 > 1 {
        return Ok(match field {
            Field::Rationals => LiftOutcome::Undetermined(format!(
                "H^4 has dimension {dim4}; only the single-equation case is decided over Q"
            )),
            Field::Closure if n > dim4 => LiftOutcome::Solutions(vec![LiftSolution {
                eta: Eta::OverClosure(format!(
                    "{dim4} quadrics in {n} variables meet nontrivially"
                )),
                field,
            }]),
            Field::Closure => {
                LiftOutcome::Undetermined(format!("{dim4} quadrics in {n} variables"))
            }
        });
    }
    let form = square_form_h2(h)?;
    match field {
        Field::Rationals => match isotropic_over_q(&form, search_height)? {
            IsotropyQ::Yes(v) => {
                let v = v.into_iter().map(Q::from_integer).collect();
                Ok(LiftOutcome::Solutions(vec![rational(v)?]))
            }
            IsotropyQ::No => Ok(LiftOutcome::NoNonzero),
            IsotropyQ::Undetermined => Ok(LiftOutcome::Undetermined(format!(
                "no isotropic vector of height <= {search_height}"
            ))),
        },
        Field::Closure => {
            let c = isotropic_over_closure(&form);
            match c.witness {
                None => Ok(LiftOutcome::NoNonzero),
                Some(Witness::Vector(v)) => {
                    let v = v
                        .iter()
                        .map(|s| s.parse::<Q>().expect("integer witness"))
                        .collect();
                    Ok(LiftOutcome::Solutions(vec![rational(v)?]))
                }
                Some(Witness::Description(d)) => Ok(LiftOutcome::Solutions(vec![LiftSolution {
                    eta: Eta::OverClosure(d),
                    field,
                }])),
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MappingSpacePi1 {
    pub dim: usize,
    /// Echelon-form representatives in H^2 of a basis of `H^2 / (eta)`.
    pub basis: Vec<Vec<Q>>,
    pub warning: Option<String>,
}

/// pi_1 of the mapping space at the point given by `eta`: the cokernel of
/// multiplication by `eta` from H^0 to H^2 (the nonzero constant is taken to be 1).
pub fn mapping_space_pi1(h: &GradedRing, eta: &Element) -> Result<MappingSpacePi1> {
    for d in [1, 3] {
        if h.dim(d) != 0 {
            return Err(Error::Hypothesis(format!(
                "H^{d} must vanish, has dimension {}",
                h.dim(d)
            )));
        }
    }
    let n = h.dim(2);
    if eta.degree != 2 || eta.coeffs.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "eta must be a vector of length {n} in H^2"
        )));
    }
    if !is_lift(h, eta)? {
        return Err(Error::Constraint(
            "eta * eta is nonzero, so no such point exists".into(),
        ));
    }
    let image = h.cup(&h.one(), eta)?;
    let sub = SubspaceBasis::echelon(n, vec![image.coeffs]);
    let units: Vec<Vec<Q>> = (0..n).map(|i| unit_vec(n, i)).collect();
    let basis = sub.extend_from(&units);
    let warning = eta
        .is_zero()
        .then(|| "basepoint has eta = 0; the quotient analysis assumes eta nonzero".to_string());
    Ok(MappingSpacePi1 {
        dim: quotient_dim(n, &sub)?,
        basis,
        warning,
    })
}

/// `pi_i Hom(X, K(Q^a, n)) = H^{n-i}(X)^a`.
pub fn pi_hom_em(h: &GradedRing, coeff_rank: usize, n: usize, i: usize) -> usize {
    if i > n || n - i > h.cutoff() {
        return 0;
    }
    coeff_rank * h.dim(n - i)
}
