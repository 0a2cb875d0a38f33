use num_traits::One;
use serde::Serialize;

use super::GradedRing;
use crate::linalg::{is_zero_vec, unit_vec, zero_vec, Q};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvariantCheck {
    pub name: &'static str,
    pub passed: bool,
    /// First offending basis indices, written as `(degree, index)` tuples.
    pub counterexample: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub checks: Vec<InvariantCheck>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &InvariantCheck> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&InvariantCheck> {
        self.checks.iter().find(|c| c.name == name)
    }
}

fn check(name: &'static str, counterexample: Option<String>) -> InvariantCheck {
    InvariantCheck {
        name,
        passed: counterexample.is_none(),
        counterexample,
    }
}

/// Runs every ring invariant: tensor shapes, unit law, graded commutativity,
/// associativity and (where tagged) Hodge bidegree additivity.
pub fn validate_ring(r: &GradedRing) -> ValidationReport {
    let checks = vec![
        check("shape", shape(r)),
        check("unit", unit(r)),
        check("graded_commutativity", commutativity(r)),
        check("associativity", associativity(r)),
        check("hodge_degree", hodge_degree(r)),
        check("hodge_additivity", hodge_additivity(r)),
    ];
    ValidationReport { checks }
}

fn shape(r: &GradedRing) -> Option<String> {
    let n = r.cutoff();
    if r.dims().len() != n + 1 {
        return Some(format!("{} dims for cutoff {n}", r.dims().len()));
    }
    for (&(i, j), t) in r.product_tensors() {
        if i + j > n {
            return Some(format!("product ({i},{j}) beyond cutoff"));
        }
        if t.len() != r.dim(i) * r.dim(j) || t.iter().any(|v| v.len() != r.dim(i + j)) {
            return Some(format!("product tensor ({i},{j}) has wrong shape"));
        }
    }
    None
}

fn unit(r: &GradedRing) -> Option<String> {
    let u = r.unit_index();
    for d in 0..=r.cutoff() {
        for x in 0..r.dim(d) {
            let e = unit_vec(r.dim(d), x);
            if r.basis_product(0, u, d, x).ok()? != e {
                return Some(format!("1 * ({d},{x})"));
            }
            if r.basis_product(d, x, 0, u).ok()? != e {
                return Some(format!("({d},{x}) * 1"));
            }
        }
    }
    None
}

fn commutativity(r: &GradedRing) -> Option<String> {
    let n = r.cutoff();
    for i in 0..=n {
        for j in i..=(n - i) {
            for a in 0..r.dim(i) {
                for b in 0..r.dim(j) {
                    let xy = r.basis_product(i, a, j, b).ok()?;
                    let yx = r.basis_product(j, b, i, a).ok()?;
                    let sign = if (i * j) % 2 == 1 {
                        -Q::one()
                    } else {
                        Q::one()
                    };
                    let ok = xy.iter().zip(&yx).all(|(p, q)| *p == q * &sign);
                    if !ok {
                        return Some(format!("({i},{a}) x ({j},{b})"));
                    }
                }
            }
        }
    }
    None
}

fn associativity(r: &GradedRing) -> Option<String> {
    let n = r.cutoff();
    // Degree-0 factors are covered by the unit check for connected rings but
    // not in general, so all triples are visited.
    for i in 0..=n {
        for j in 0..=(n - i) {
            for k in 0..=(n - i - j) {
                let total = r.dim(i + j + k);
                if total == 0 {
                    continue;
                }
                for a in 0..r.dim(i) {
                    for b in 0..r.dim(j) {
                        let ab = r.basis_product(i, a, j, b).ok()?;
                        for c in 0..r.dim(k) {
                            let bc = r.basis_product(j, b, k, c).ok()?;
                            let mut left = zero_vec(total);
                            for (s, x) in ab
                                .iter()
                                .enumerate()
                                .filter(|(_, x)| !num_traits::Zero::is_zero(*x))
                            {
                                let v = r.basis_product(i + j, s, k, c).ok()?;
                                for (l, y) in left.iter_mut().zip(v) {
                                    *l += x * y;
                                }
                            }
                            let mut right = zero_vec(total);
                            for (s, x) in bc
                                .iter()
                                .enumerate()
                                .filter(|(_, x)| !num_traits::Zero::is_zero(*x))
                            {
                                let v = r.basis_product(i, a, j + k, s).ok()?;
                                for (l, y) in right.iter_mut().zip(v) {
                                    *l += x * y;
                                }
                            }
                            if left != right {
                                return Some(format!("({i},{a}) x ({j},{b}) x ({k},{c})"));
                            }
                        }
                    }
                }
            }
        }
    }
    None
}

fn hodge_degree(r: &GradedRing) -> Option<String> {
    for d in 0..=r.cutoff() {
        for x in 0..r.dim(d) {
            if let Some(h) = r.hodge(d, x) {
                if h.total() != d {
                    return Some(format!("({d},{x}) tagged ({},{})", h.p, h.q));
                }
            }
        }
    }
    None
}

fn hodge_additivity(r: &GradedRing) -> Option<String> {
    if !r.has_hodge() {
        return None;
    }
    let n = r.cutoff();
    for i in 0..=n {
        for j in 0..=(n - i) {
            for a in 0..r.dim(i) {
                let Some(ha) = r.hodge(i, a) else { continue };
                for b in 0..r.dim(j) {
                    let Some(hb) = r.hodge(j, b) else { continue };
                    let v = r.basis_product(i, a, j, b).ok()?;
                    if is_zero_vec(&v) {
                        continue;
                    }
                    let expected = ha + hb;
                    for (t, c) in v.iter().enumerate() {
                        if num_traits::Zero::is_zero(c) {
                            continue;
                        }
                        if let Some(ht) = r.hodge(i + j, t) {
                            if ht != expected {
                                return Some(format!("({i},{a}) x ({j},{b}) -> ({},{t})", i + j));
                            }
                        }
                    }
                }
            }
        }
    }
    None
}
