use num_traits::{One, Zero};
use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};

use crate::graded::{free_gc_basis, GeneratorList, Monomial};
use crate::linalg::{Matrix, Q};

/// A linear combination of canonical monomials in a free graded-commutative algebra.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, Q>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial::default()
    }

    pub fn term(m: Monomial, c: Q) -> Self {
        let mut p = Polynomial::zero();
        p.add_term(m, c);
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_assign(&mut self, other: &Polynomial) {
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c.clone());
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Q)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> Q {
        self.terms.get(m).cloned().unwrap_or_else(Q::zero)
    }

    /// Coordinates over an explicit monomial basis.
    pub fn to_vector(&self, basis: &[Monomial]) -> Vec<Q> {
        basis.iter().map(|m| self.coefficient(m)).collect()
    }

    pub fn from_vector(basis: &[Monomial], v: &[Q]) -> Self {
        let mut p = Polynomial::zero();
        for (m, c) in basis.iter().zip(v) {
            p.add_term(m.clone(), c.clone());
        }
        p
    }

    /// Terms with exactly `len` generator factors.
    pub fn word_length_part(&self, len: u32) -> Polynomial {
        Polynomial {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.word_length() == len)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }
}

/// Free graded-commutative algebra with a differential given on generators.
#[derive(Clone, Debug, Default)]
pub struct FreeDga {
    pub(crate) gens: GeneratorList,
    pub(crate) d: Vec<Polynomial>,
}

impl FreeDga {
    pub fn new(gens: GeneratorList, d: Vec<Polynomial>) -> Self {
        assert_eq!(gens.len(), d.len(), "one differential per generator");
        FreeDga { gens, d }
    }

    pub fn generators(&self) -> &GeneratorList {
        &self.gens
    }

    pub fn basis(&self, degree: usize) -> Vec<Monomial> {
        free_gc_basis(&self.gens, degree)
    }

    pub fn mul(&self, a: &Polynomial, b: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (ma, ca) in a.terms() {
            for (mb, cb) in b.terms() {
                if let Some((negative, m)) = self.gens.multiply(ma, mb) {
                    let c = ca * cb;
                    out.add_term(m, if negative { -c } else { c });
                }
            }
        }
        out
    }

    /// `d` of a canonical monomial via the Leibniz rule on its first factor:
    /// `d(g * r) = dg * r + (-1)^{|g|} g * dr`.
    pub fn d_monomial(&self, m: &Monomial, memo: &mut HashMap<Monomial, Polynomial>) -> Polynomial {
        if let Some(p) = memo.get(m) {
            return p.clone();
        }
        let result = match m.split_first() {
            None => Polynomial::zero(),
            Some((g, rest)) => {
                let rest_poly = Polynomial::term(rest.clone(), Q::one());
                let g_poly = Polynomial::term(Monomial::generator(g), Q::one());
                let mut out = self.mul(&self.d[g], &rest_poly);
                let dr = self.d_monomial(&rest, memo);
                let mut second = self.mul(&g_poly, &dr);
                if self.gens.get(g).is_odd() {
                    second = scale(&second, &-Q::one());
                }
                out.add_assign(&second);
                out
            }
        };
        memo.insert(m.clone(), result.clone());
        result
    }

    pub fn d_polynomial(
        &self,
        p: &Polynomial,
        memo: &mut HashMap<Monomial, Polynomial>,
    ) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m, c) in p.terms() {
            out.add_assign(&scale(&self.d_monomial(m, memo), c));
        }
        out
    }

    /// Matrix of `d` from `source` basis to `target` basis.
    pub fn d_matrix(
        &self,
        source: &[Monomial],
        target: &[Monomial],
        memo: &mut HashMap<Monomial, Polynomial>,
    ) -> Matrix {
        let index: HashMap<&Monomial, usize> =
            target.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let mut mat = Matrix::zeros(target.len(), source.len());
        for (col, m) in source.iter().enumerate() {
            for (t, c) in self.d_monomial(m, memo).terms() {
                let row = *index.get(t).expect("differential leaves its degree");
                mat.set(row, col, c.clone());
            }
        }
        mat
    }
}

pub fn scale(p: &Polynomial, c: &Q) -> Polynomial {
    let mut out = Polynomial::zero();
    for (m, x) in p.terms() {
        out.add_term(m.clone(), x * c);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded::Generator;
    use crate::linalg::q;

    fn s2_model() -> FreeDga {
        let gens =
            GeneratorList::new(vec![Generator::new("x", 2), Generator::new("y", 3)]).unwrap();
        let x2 = Monomial::new(vec![2]);
        FreeDga::new(gens, vec![Polynomial::zero(), Polynomial::term(x2, q(1))])
    }

    #[test]
    fn leibniz_on_products() {
        let m = s2_model();
        let mut memo = HashMap::new();
        // d(x y) = x * x^2 = x^3
        let xy = Monomial::new(vec![1, 1]);
        assert_eq!(
            m.d_monomial(&xy, &mut memo),
            Polynomial::term(Monomial::new(vec![3]), q(1))
        );
    }

    #[test]
    fn cancellation_removes_terms() {
        let mut p = Polynomial::term(Monomial::generator(0), q(2));
        p.add_term(Monomial::generator(0), q(-2));
        assert!(p.is_zero());
    }

    #[test]
    fn odd_generator_sign() {
        // Lambda(u3, v3, w5) with dw = u v; d(u w) = -u * u v = 0, d(v w) = -v u v = 0,
        // and d(w * x) for x even picks up no sign.
        let gens = GeneratorList::new(vec![
            Generator::new("x", 2),
            Generator::new("u", 3),
            Generator::new("v", 3),
            Generator::new("w", 5),
        ])
        .unwrap();
        let uv = Monomial::new(vec![0, 1, 1]);
        let m = FreeDga::new(
            gens,
            vec![
                Polynomial::zero(),
                Polynomial::zero(),
                Polynomial::zero(),
                Polynomial::term(uv, q(1)),
            ],
        );
        let mut memo = HashMap::new();
        assert!(m
            .d_monomial(&Monomial::new(vec![0, 1, 0, 1]), &mut memo)
            .is_zero());
        assert_eq!(
            m.d_monomial(&Monomial::new(vec![1, 0, 0, 1]), &mut memo),
            Polynomial::term(Monomial::new(vec![1, 1, 1]), q(1))
        );
    }
}
