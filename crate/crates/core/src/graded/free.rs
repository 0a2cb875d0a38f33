//! Free graded-commutative algebras: polynomial on even generators, exterior
//! on odd ones. Monomials are kept in canonical order (generators ascending),
//! so a monomial is just an exponent vector.

use serde::{Deserialize, Serialize};
use std::collections::HashSet;
use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Generator {
    pub name: String,
    pub degree: usize,
}

impl Generator {
    pub fn new(name: impl Into<String>, degree: usize) -> Self {
        Generator {
            name: name.into(),
            degree,
        }
    }

    pub fn is_odd(&self) -> bool {
        self.degree % 2 == 1
    }
}

/// Ordered generators of a free graded-commutative algebra. Order matters:
/// it fixes the canonical form of monomials and hence every sign.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GeneratorList(Vec<Generator>);

impl GeneratorList {
    pub fn new(gens: Vec<Generator>) -> Result<Self> {
        let mut seen = HashSet::new();
        for g in &gens {
            if g.degree == 0 {
                return Err(Error::InvalidRing(format!(
                    "generator `{}` has degree 0",
                    g.name
                )));
            }
            if !seen.insert(g.name.as_str()) {
                return Err(Error::InvalidRing(format!(
                    "duplicate generator name `{}`",
                    g.name
                )));
            }
        }
        Ok(GeneratorList(gens))
    }

    /// `count` generators `{prefix}1, {prefix}2, ...` all of the same degree.
    pub fn uniform(prefix: &str, count: usize, degree: usize) -> Result<Self> {
        GeneratorList::new(
            (1..=count)
                .map(|i| Generator::new(format!("{prefix}{i}"), degree))
                .collect(),
        )
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Generator> {
        self.0.iter()
    }

    pub fn get(&self, i: usize) -> &Generator {
        &self.0[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|g| g.name == name)
    }

    pub fn push(&mut self, g: Generator) -> Result<usize> {
        if g.degree == 0 {
            return Err(Error::InvalidRing(format!(
                "generator `{}` has degree 0",
                g.name
            )));
        }
        if self.index_of(&g.name).is_some() {
            return Err(Error::InvalidRing(format!(
                "duplicate generator name `{}`",
                g.name
            )));
        }
        self.0.push(g);
        Ok(self.0.len() - 1)
    }

    pub fn degree_of(&self, m: &Monomial) -> usize {
        m.exponents()
            .iter()
            .enumerate()
            .map(|(i, &e)| e as usize * self.0[i].degree)
            .sum()
    }

    /// Product of two canonical monomials: `None` when it vanishes (a repeated
    /// odd generator), otherwise the Koszul sign and the canonical product.
    pub fn multiply(&self, a: &Monomial, b: &Monomial) -> Option<(bool, Monomial)> {
        let n = a.0.len().max(b.0.len());
        let mut exps = vec![0u32; n];
        let mut negative = false;
        // Odd generators of `a` strictly after position i, counted as we go.
        let mut odd_in_a_above = vec![0u32; n + 1];
        for i in (0..n).rev() {
            let odd_here = self.0[i].is_odd() && a.exponent(i) > 0;
            odd_in_a_above[i] = odd_in_a_above[i + 1] + u32::from(odd_here);
        }
        for i in 0..n {
            let (ea, eb) = (a.exponent(i), b.exponent(i));
            if self.0[i].is_odd() {
                if ea + eb > 1 {
                    return None;
                }
                // Each odd factor of `b` moves left past the odd factors of `a`
                // with a larger index.
                if eb == 1 && odd_in_a_above[i + 1] % 2 == 1 {
                    negative = !negative;
                }
            }
            exps[i] = ea + eb;
        }
        Some((negative, Monomial::new(exps)))
    }

    pub fn format_monomial(&self, m: &Monomial) -> String {
        let parts: Vec<String> = m
            .exponents()
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| {
                if e == 1 {
                    self.0[i].name.clone()
                } else {
                    format!("{}^{e}", self.0[i].name)
                }
            })
            .collect();
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

/// Exponent vector of a canonical monomial, trailing zeros trimmed so that
/// monomials compare equal regardless of how many generators exist.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(mut exps: Vec<u32>) -> Self {
        while exps.last() == Some(&0) {
            exps.pop();
        }
        Monomial(exps)
    }

    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn generator(i: usize) -> Self {
        let mut e = vec![0; i + 1];
        e[i] = 1;
        Monomial(e)
    }

    pub fn exponent(&self, i: usize) -> u32 {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    /// Number of generator factors counted with multiplicity.
    pub fn word_length(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Splits off the first generator factor: `self = g_i * rest` with no sign,
    /// since `g_i` is already leftmost in canonical order.
    pub fn split_first(&self) -> Option<(usize, Monomial)> {
        let i = self.0.iter().position(|&e| e > 0)?;
        let mut rest = self.0.clone();
        rest[i] -= 1;
        Some((i, Monomial::new(rest)))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// All monomials of total degree `degree`. Odd generators appear with exponent
/// at most 1. Order: lexicographic in generator order with larger exponents of
/// earlier generators first.
pub fn free_gc_basis(gens: &GeneratorList, degree: usize) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut exps = vec![0u32; gens.len()];
    fill(gens, 0, degree, &mut exps, &mut out);
    out
}

fn fill(
    gens: &GeneratorList,
    i: usize,
    remaining: usize,
    exps: &mut [u32],
    out: &mut Vec<Monomial>,
) {
    if remaining == 0 {
        out.push(Monomial::new(exps.to_vec()));
        return;
    }
    if i == gens.len() {
        return;
    }
    let g = gens.get(i);
    let max = if g.is_odd() {
        usize::from(g.degree <= remaining)
    } else {
        remaining / g.degree
    };
    for e in (0..=max).rev() {
        exps[i] = e as u32;
        fill(gens, i + 1, remaining - e * g.degree, exps, out);
    }
    exps[i] = 0;
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn basis_examples() {
        let x = GeneratorList::new(vec![Generator::new("x", 2)]).unwrap();
        assert_eq!(free_gc_basis(&x, 6), vec![Monomial::new(vec![3])]);

        let y = GeneratorList::new(vec![Generator::new("y", 3)]).unwrap();
        assert!(free_gc_basis(&y, 6).is_empty());

        let w = GeneratorList::uniform("w", 2, 1).unwrap();
        assert!(free_gc_basis(&w, 3).is_empty());
        assert_eq!(free_gc_basis(&w, 2), vec![Monomial::new(vec![1, 1])]);
    }

    #[test]
    fn degree_one_of_the_empty_word() {
        let g = GeneratorList::default();
        assert_eq!(free_gc_basis(&g, 0), vec![Monomial::one()]);
        assert!(free_gc_basis(&g, 3).is_empty());
    }

    #[test]
    fn rejects_bad_generators() {
        assert!(GeneratorList::new(vec![Generator::new("a", 0)]).is_err());
        assert!(GeneratorList::new(vec![Generator::new("a", 2), Generator::new("a", 3)]).is_err());
    }

    #[test]
    fn odd_generators_anticommute() {
        let g = GeneratorList::uniform("u", 2, 3).unwrap();
        let (a, b) = (Monomial::generator(0), Monomial::generator(1));
        let (s1, ab) = g.multiply(&a, &b).unwrap();
        let (s2, ba) = g.multiply(&b, &a).unwrap();
        assert_eq!(ab, ba);
        assert!(!s1 && s2);
        assert!(g.multiply(&a, &a).is_none());
    }

    #[test]
    fn mixed_parity_commutes() {
        let g = GeneratorList::new(vec![Generator::new("x", 2), Generator::new("y", 3)]).unwrap();
        let (x, y) = (Monomial::generator(0), Monomial::generator(1));
        assert_eq!(
            g.multiply(&y, &x).unwrap(),
            (false, Monomial::new(vec![1, 1]))
        );
    }

    /// Coefficients of prod_even 1/(1-t^d) * prod_odd (1+t^d), computed by
    /// polynomial multiplication truncated at `cutoff`.
    fn series(degrees: &[usize], cutoff: usize) -> Vec<u64> {
        let mut c = vec![0u64; cutoff + 1];
        c[0] = 1;
        for &d in degrees {
            if d % 2 == 1 {
                for k in (d..=cutoff).rev() {
                    c[k] += c[k - d];
                }
            } else {
                for k in d..=cutoff {
                    c[k] += c[k - d];
                }
            }
        }
        c
    }

    proptest! {
        #[test]
        fn counts_match_generating_function(degrees in prop::collection::vec(1usize..6, 0..5)) {
            let cutoff = 12;
            let gens = GeneratorList::new(
                degrees.iter().enumerate().map(|(i, &d)| Generator::new(format!("g{i}"), d)).collect()
            ).unwrap();
            let expected = series(&degrees, cutoff);
            for (d, &e) in expected.iter().enumerate() {
                let basis = free_gc_basis(&gens, d);
                prop_assert_eq!(basis.len() as u64, e);
                for m in &basis {
                    prop_assert_eq!(gens.degree_of(m), d);
                }
            }
        }
    }
}
