//! The blow-up of a surface at a point: its bigraded cohomology ring, the
//! constraint `eta^2 = n^2 H.H - m^2` for `eta = m[E] + n[H]`, the excision
//! scalars and the resulting secondary class pairing `m^2 * omega(alpha ^ beta)(P)`.

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graded::{Bidegree, Element, GradedRing, RingBuilder};
use crate::linalg::{homology_dims, ExactnessReport, Matrix, Q};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlowupScenario {
    /// `h^{2,0}` of the surface.
    pub pg: usize,
    /// `h^{1,1}` of the surface; at least 1 because of the ample class.
    pub h11_z: usize,
    /// Self-intersection `H.H` of the pulled-back ample class.
    pub hh: i64,
    #[serde(serialize_with = "crate::io::ser_q")]
    pub m: Q,
    #[serde(serialize_with = "crate::io::ser_q")]
    pub n: Q,
}

impl BlowupScenario {
    pub fn new(pg: usize, h11_z: usize, hh: i64, m: Q, n: Q) -> Result<Self> {
        if h11_z == 0 {
            return Err(Error::Constraint("h11_z must be at least 1".into()));
        }
        Ok(BlowupScenario {
            pg,
            h11_z,
            hh,
            m,
            n,
        })
    }

    pub fn h2_dim(&self) -> usize {
        2 * self.pg + self.h11_z + 1
    }

    fn hh_q(&self) -> Q {
        Q::from_integer(self.hh.into())
    }
}

/// Index of `[E]` in the H^2 basis; `[H]` follows it.
pub fn e_index(s: &BlowupScenario) -> usize {
    s.pg
}

/// H^*_Dol of the blow-up, cutoff 4. The H^2 basis is `w1..` of type (2,0),
/// then `E`, `H`, then the remaining (1,1) classes `c1..` of the surface,
/// then `wbar1..` of type (0,2). `w_i * wbar_i = pt`, `E^2 = -pt`,
/// `H^2 = hh pt`, `c_k^2 = -pt`, all other H^2 products vanish.
pub fn blowup_ring(s: &BlowupScenario) -> Result<GradedRing> {
    if s.h11_z == 0 {
        return Err(Error::Constraint("h11_z must be at least 1".into()));
    }
    let mut h2: Vec<String> = (1..=s.pg).map(|i| format!("w{i}")).collect();
    h2.push("E".into());
    h2.push("H".into());
    h2.extend((1..s.h11_z).map(|k| format!("c{k}")));
    h2.extend((1..=s.pg).map(|i| format!("wbar{i}")));
    let basis = vec![
        vec!["1".into()],
        vec![],
        h2.clone(),
        vec![],
        vec!["pt".into()],
    ];
    let mut b = RingBuilder::new(4, basis)?
        .hodge(0, 0, Bidegree::new(0, 0))
        .hodge(4, 0, Bidegree::new(2, 2));
    let e = e_index(s);
    for idx in 0..h2.len() {
        let tag = if idx < s.pg {
            Bidegree::new(2, 0)
        } else if idx >= e + 1 + s.h11_z {
            Bidegree::new(0, 2)
        } else {
            Bidegree::new(1, 1)
        };
        b = b.hodge(2, idx, tag);
    }
    let one = Q::one();
    for i in 1..=s.pg {
        b = b.product_scalar(&format!("w{i}"), &format!("wbar{i}"), one.clone(), "pt")?;
    }
    b = b.product_scalar("E", "E", -one.clone(), "pt")?;
    b = b.product_scalar("H", "H", s.hh_q(), "pt")?;
    for k in 1..s.h11_z {
        b = b.product_scalar(&format!("c{k}"), &format!("c{k}"), -one.clone(), "pt")?;
    }
    let n = h2.len();
    b = b
        .name("E", Element::basis(2, n, e))
        .name("H", Element::basis(2, n, e + 1))
        .name("eta", eta(s));
    b.build()
}

/// `eta = m[E] + n[H]` in the H^2 basis of [`blowup_ring`].
pub fn eta(s: &BlowupScenario) -> Element {
    let e = e_index(s);
    Element::combination(2, s.h2_dim(), &[(e, s.m.clone()), (e + 1, s.n.clone())])
}

/// `eta^2 = n^2 H.H - m^2`, checked against the cup product in the ring.
pub fn eta_square(s: &BlowupScenario) -> Result<Q> {
    let formula = &s.n * &s.n * s.hh_q() - &s.m * &s.m;
    let r = blowup_ring(s)?;
    let e = eta(s);
    let cup = r.cup(&e, &e)?;
    if cup.coeffs != vec![formula.clone()] {
        return Err(Error::Certification(format!(
            "eta^2 is {} by formula but {:?} by cup product",
            formula, cup.coeffs
        )));
    }
    Ok(formula)
}

fn require_lift(s: &BlowupScenario) -> Result<()> {
    let sq = eta_square(s)?;
    if !sq.is_zero() {
        return Err(Error::Constraint(format!(
            "eta^2 = {sq} is nonzero, so the secondary class is undefined"
        )));
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExcisionComponents {
    /// Coefficient on the `[H]^2` side: `-n^2 H.H`.
    #[serde(serialize_with = "crate::io::ser_q")]
    pub b: Q,
    /// Coefficient on the point side: `m^2`, using `[E]^2 -> -[P]`.
    #[serde(serialize_with = "crate::io::ser_q")]
    pub c: Q,
}

pub fn excision_components(s: &BlowupScenario) -> Result<ExcisionComponents> {
    require_lift(s)?;
    let b = -(&s.n * &s.n) * s.hh_q();
    let c = &s.m * &s.m;
    if !(&b + &c).is_zero() {
        return Err(Error::Certification(format!(
            "b + c = {} should vanish",
            &b + &c
        )));
    }
    Ok(ExcisionComponents { b, c })
}

/// `lambda * [P] = lambda(P) [P]`: multiplying the point class by a function
/// only sees the function's value at the point.
pub fn point_class_scale(value_at_point: &Q, point_coefficient: &Q) -> Q {
    value_at_point * point_coefficient
}

/// Pairing of the secondary class on `alpha ^ beta` with a 2-form `omega`,
/// given `omega(alpha ^ beta)(P)`. Projects onto the point component of the
/// excision decomposition, so the result is `m^2 * omega_val`.
pub fn secondary_pairing(s: &BlowupScenario, omega_val: &Q) -> Result<Q> {
    if s.pg == 0 && !omega_val.is_zero() {
        return Err(Error::Constraint(
            "no holomorphic 2-forms when pg = 0".into(),
        ));
    }
    let ex = excision_components(s)?;
    Ok(point_class_scale(omega_val, &ex.c))
}

pub fn kappa_is_nonzero(s: &BlowupScenario) -> Result<bool> {
    require_lift(s)?;
    Ok(s.pg > 0 && !s.m.is_zero())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Tangent {
    Alpha,
    Beta,
}

/// A 2-form at the point, recorded by its value on `alpha ^ beta`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoForm {
    pub on_alpha_beta: Q,
}

impl TwoForm {
    pub fn on(&self, first: Tangent, second: Tangent) -> Q {
        match (first, second) {
            (Tangent::Alpha, Tangent::Beta) => self.on_alpha_beta.clone(),
            (Tangent::Beta, Tangent::Alpha) => -self.on_alpha_beta.clone(),
            _ => Q::zero(),
        }
    }
}

/// A finite sequence of vector spaces and linear maps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LesData {
    pub spaces: Vec<usize>,
    /// `maps[i]` goes from `spaces[i]` to `spaces[i + 1]`.
    pub maps: Vec<Matrix>,
}

pub fn les_check(l: &LesData) -> Result<ExactnessReport> {
    homology_dims(&l.spaces, &l.maps)
}
