use num_traits::One;

use crate::error::{Error, Result};
use crate::graded::{validate_ring, GradedRing, InvariantCheck, ValidationReport};
use crate::linalg::{Matrix, SubspaceBasis, Q};

/// A graded ring with a degree +1 differential. Degrees above the ring's
/// cutoff are treated as zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cdga {
    ring: GradedRing,
    /// `differential[i]` is the `dim(i+1) x dim(i)` matrix of `d` on degree `i`,
    /// for `i < cutoff`.
    differential: Vec<Matrix>,
}

impl Cdga {
    pub fn new(ring: GradedRing, differential: Vec<Matrix>) -> Result<Self> {
        let n = ring.cutoff();
        if differential.len() != n {
            return Err(Error::DimensionMismatch(format!(
                "cutoff {n} needs {n} differential matrices, got {}",
                differential.len()
            )));
        }
        for (i, d) in differential.iter().enumerate() {
            if d.cols() != ring.dim(i) || d.rows() != ring.dim(i + 1) {
                return Err(Error::DimensionMismatch(format!(
                    "differential on degree {i} is {}x{}",
                    d.rows(),
                    d.cols()
                )));
            }
        }
        Ok(Cdga { ring, differential })
    }

    pub fn ring(&self) -> &GradedRing {
        &self.ring
    }

    pub fn cutoff(&self) -> usize {
        self.ring.cutoff()
    }

    pub fn dim(&self, degree: usize) -> usize {
        if degree > self.cutoff() {
            0
        } else {
            self.ring.dim(degree)
        }
    }

    pub fn is_formal_input(&self) -> bool {
        self.differential.iter().all(Matrix::is_zero)
    }

    /// Matrix of `d` from degree `i` to `i + 1`, zero-sized beyond the cutoff.
    pub fn d(&self, i: usize) -> Matrix {
        match self.differential.get(i) {
            Some(m) => m.clone(),
            None => Matrix::zeros(self.dim(i + 1), self.dim(i)),
        }
    }

    pub fn cocycles(&self, i: usize) -> SubspaceBasis {
        self.d(i).kernel_basis()
    }

    pub fn coboundaries(&self, i: usize) -> SubspaceBasis {
        if i == 0 {
            SubspaceBasis::empty(self.dim(0))
        } else {
            self.d(i - 1).image_basis()
        }
    }

    pub fn cohomology_dim(&self, i: usize) -> usize {
        self.cocycles(i).dim() - self.coboundaries(i).dim()
    }

    /// Checks `d o d = 0` and the Leibniz rule
    /// `d(xy) = (dx)y + (-1)^{|x|} x(dy)` on basis pairs of total degree
    /// below the cutoff.
    pub fn validate(&self) -> ValidationReport {
        let mut checks = validate_ring(&self.ring).checks;
        let n = self.cutoff();
        let mut square = None;
        for i in 0..n.saturating_sub(1) {
            let dd = self.differential[i + 1].mul(&self.differential[i]);
            if !dd.map(|m| m.is_zero()).unwrap_or(false) {
                square = Some(format!("d o d on degree {i}"));
                break;
            }
        }
        checks.push(InvariantCheck {
            name: "d_squared",
            passed: square.is_none(),
            counterexample: square,
        });
        let leibniz = self.leibniz_counterexample();
        checks.push(InvariantCheck {
            name: "leibniz",
            passed: leibniz.is_none(),
            counterexample: leibniz,
        });
        ValidationReport { checks }
    }

    fn apply_d(&self, degree: usize, v: &[Q]) -> Vec<Q> {
        self.d(degree).mul_vec(v).expect("shape")
    }

    fn leibniz_counterexample(&self) -> Option<String> {
        let r = &self.ring;
        let n = self.cutoff();
        for i in 0..n {
            for j in 0..(n - i) {
                for a in 0..r.dim(i) {
                    let x = crate::graded::Element::basis(i, r.dim(i), a);
                    let dx = crate::graded::Element::new(i + 1, self.apply_d(i, &x.coeffs));
                    for b in 0..r.dim(j) {
                        let y = crate::graded::Element::basis(j, r.dim(j), b);
                        let dy = crate::graded::Element::new(j + 1, self.apply_d(j, &y.coeffs));
                        let xy = r.cup(&x, &y).ok()?;
                        let lhs = self.apply_d(i + j, &xy.coeffs);
                        let t1 = r.cup(&dx, &y).ok()?;
                        let t2 = r.cup(&x, &dy).ok()?;
                        let sign = if i % 2 == 0 { Q::one() } else { -Q::one() };
                        let rhs: Vec<Q> = t1
                            .coeffs
                            .iter()
                            .zip(&t2.coeffs)
                            .map(|(p, q)| p + &sign * q)
                            .collect();
                        if lhs != rhs {
                            return Some(format!("({i},{a}) x ({j},{b})"));
                        }
                    }
                }
            }
        }
        None
    }
}

/// The ring with zero differential. Requires a valid, connected, simply
/// connected ring.
pub fn formal_cdga(r: &GradedRing) -> Result<Cdga> {
    let report = validate_ring(r);
    if let Some(f) = report.failures().next() {
        return Err(Error::InvalidRing(format!(
            "{} fails at {}",
            f.name,
            f.counterexample.as_deref().unwrap_or("?")
        )));
    }
    if r.dim(0) != 1 {
        return Err(Error::Hypothesis(format!(
            "H^0 has dimension {}, expected 1 (connected input)",
            r.dim(0)
        )));
    }
    if r.dim(1) != 0 {
        return Err(Error::Hypothesis(format!(
            "H^1 has dimension {}, expected 0 (simply connected input)",
            r.dim(1)
        )));
    }
    let d = (0..r.cutoff())
        .map(|i| Matrix::zeros(r.dim(i + 1), r.dim(i)))
        .collect();
    Cdga::new(r.clone(), d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded::standard;
    use crate::linalg::q;

    #[test]
    fn formal_examples() {
        let c = formal_cdga(&standard::sphere(2, 8)).unwrap();
        assert!(c.is_formal_input());
        assert!(c.validate().passed());
        assert_eq!(c.cohomology_dim(2), 1);

        assert!(matches!(
            formal_cdga(&standard::circle(4)),
            Err(Error::Hypothesis(_))
        ));
        assert!(matches!(
            formal_cdga(&standard::two_points(4)),
            Err(Error::Hypothesis(_))
        ));
    }

    #[test]
    fn rejects_invalid_ring() {
        let r = standard::wedge_y(q(1), q(1)).with_raw_product(2, 0, 2, 1, vec![q(1)]);
        assert!(matches!(formal_cdga(&r), Err(Error::InvalidRing(_))));
    }

    #[test]
    fn nonformal_differential_cohomology() {
        // Lambda(x2, y3) with dy = x^2 in cutoff 6: the model of S^2.
        let gens = crate::graded::GeneratorList::new(vec![
            crate::graded::Generator::new("x", 2),
            crate::graded::Generator::new("y", 3),
        ])
        .unwrap();
        let ring = standard::free_ring(&gens, 6);
        let mut d: Vec<Matrix> = (0..6)
            .map(|i| Matrix::zeros(ring.dim(i + 1), ring.dim(i)))
            .collect();
        // basis: deg3 [y], deg4 [x^2], deg5 [xy], deg6 [x^3]
        d[3] = Matrix::from_i64(&[&[1]]);
        d[5] = Matrix::from_i64(&[&[1]]);
        let c = Cdga::new(ring, d).unwrap();
        assert!(c.validate().passed(), "{:?}", c.validate());
        let h: Vec<usize> = (0..=6).map(|i| c.cohomology_dim(i)).collect();
        assert_eq!(h, vec![1, 0, 1, 0, 0, 0, 0]);
    }

    #[test]
    fn leibniz_violation_detected() {
        let gens = crate::graded::GeneratorList::new(vec![
            crate::graded::Generator::new("x", 2),
            crate::graded::Generator::new("y", 3),
        ])
        .unwrap();
        let ring = standard::free_ring(&gens, 6);
        let mut d: Vec<Matrix> = (0..6)
            .map(|i| Matrix::zeros(ring.dim(i + 1), ring.dim(i)))
            .collect();
        d[3] = Matrix::from_i64(&[&[1]]);
        let c = Cdga::new(ring, d).unwrap();
        let rep = c.validate();
        assert!(!rep.check("leibniz").unwrap().passed);
    }
}
