//! Rational cohomology of Eilenberg-MacLane spaces K(Q^a, n) and the Koszul
//! complexes `Lambda^j V (x) Sym^k V` of fixed weight `j + k` that drive the
//! inductive computation.
//!
//! Over a field of characteristic zero, H*(K(Q^a, n); Q) is the free
//! graded-commutative algebra on `a` generators of degree `n`: exterior when
//! `n` is odd, polynomial when `n` is even.

use num_traits::One;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graded::{free_gc_basis, GeneratorList, GradedVectorSpace, Monomial};
use crate::linalg::{homology_dims, ExactnessReport, Matrix, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct EmSpace {
    pub rank: usize,
    pub degree: usize,
}

impl EmSpace {
    pub fn new(rank: usize, degree: usize) -> Result<Self> {
        if degree == 0 {
            return Err(Error::Hypothesis(
                "Eilenberg-MacLane degree must be at least 1".into(),
            ));
        }
        Ok(EmSpace { rank, degree })
    }
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// Dimensions of H^i(K(Q^a, n); Q) for `i <= cutoff`: `C(a, i/n)` for odd
/// `n` and `C(a + i/n - 1, i/n)` for even `n`, zero when `n` does not divide `i`.
pub fn em_dims(s: EmSpace, cutoff: usize) -> GradedVectorSpace {
    let dims = (0..=cutoff)
        .map(|i| {
            if i % s.degree != 0 {
                return 0;
            }
            let k = i / s.degree;
            if s.degree % 2 == 1 {
                binomial(s.rank, k)
            } else if k == 0 {
                1
            } else {
                binomial(s.rank + k - 1, k)
            }
        })
        .collect();
    GradedVectorSpace::from_dims(dims)
}

/// Cohomology with coefficients in a `coeff_dim`-dimensional vector space.
pub fn em_cohomology_with_coeffs(s: EmSpace, coeff_dim: usize, cutoff: usize) -> GradedVectorSpace {
    em_dims(s, cutoff).scaled(coeff_dim)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum KoszulVariant {
    /// `Lambda^j (x) Sym^k -> Lambda^{j-1} (x) Sym^{k+1}`, contraction.
    Odd,
    /// `Lambda^j (x) Sym^k -> Lambda^{j+1} (x) Sym^{k-1}`, differentiation
    /// of the symmetric factor wedged into the exterior one.
    Even,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KoszulTerm {
    pub exterior: usize,
    pub symmetric: usize,
    pub dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KoszulComplex {
    pub generator_rank: usize,
    pub total_weight: usize,
    pub variant: KoszulVariant,
    pub terms: Vec<KoszulTerm>,
    /// `differentials[t]` maps `terms[t]` to `terms[t + 1]`.
    pub differentials: Vec<Matrix>,
}

impl KoszulComplex {
    pub fn dims(&self) -> Vec<usize> {
        self.terms.iter().map(|t| t.dim).collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.terms
            .iter()
            .enumerate()
            .map(|(i, t)| {
                if i % 2 == 0 {
                    t.dim as i64
                } else {
                    -(t.dim as i64)
                }
            })
            .sum()
    }

    /// `d o d = 0` checked as exact matrix products.
    pub fn squares_to_zero(&self) -> bool {
        self.differentials
            .windows(2)
            .all(|p| p[1].mul(&p[0]).map(|m| m.is_zero()).unwrap_or(false))
    }
}

/// Basis of `Lambda^j V (x) Sym^k V` for `dim V = rank`: exterior monomials
/// (subsets) crossed with symmetric monomials (multisets).
fn term_basis(
    ext: &GeneratorList,
    sym: &GeneratorList,
    j: usize,
    k: usize,
) -> Vec<(Monomial, Monomial)> {
    let lam = free_gc_basis(ext, j);
    let sy = free_gc_basis(sym, 2 * k);
    lam.iter()
        .flat_map(|l| sy.iter().map(move |s| (l.clone(), s.clone())))
        .collect()
}

fn with_exponent(m: &Monomial, i: usize, delta: i64, len: usize) -> Monomial {
    let mut e: Vec<u32> = (0..len).map(|t| m.exponent(t)).collect();
    e[i] = (e[i] as i64 + delta) as u32;
    Monomial::new(e)
}

pub fn build_koszul(rank: usize, weight: usize, variant: KoszulVariant) -> Result<KoszulComplex> {
    if rank == 0 {
        return Err(Error::Hypothesis(
            "Koszul complex needs rank at least 1".into(),
        ));
    }
    // Degree-1 generators give the exterior algebra, degree-2 ones the
    // symmetric algebra (in doubled degree).
    let ext = GeneratorList::uniform("v", rank, 1)?;
    let sym = GeneratorList::uniform("s", rank, 2)?;
    let exterior_sequence: Vec<usize> = match variant {
        KoszulVariant::Odd => (0..=weight).rev().collect(),
        KoszulVariant::Even => (0..=weight).collect(),
    };
    let bases: Vec<Vec<(Monomial, Monomial)>> = exterior_sequence
        .iter()
        .map(|&j| term_basis(&ext, &sym, j, weight - j))
        .collect();
    let terms = exterior_sequence
        .iter()
        .zip(&bases)
        .map(|(&j, b)| KoszulTerm {
            exterior: j,
            symmetric: weight - j,
            dim: b.len(),
        })
        .collect();

    let mut differentials = Vec::new();
    for t in 0..weight {
        let (src, dst) = (&bases[t], &bases[t + 1]);
        let mut d = Matrix::zeros(dst.len(), src.len());
        let index = |pair: &(Monomial, Monomial)| {
            dst.iter().position(|x| x == pair).expect("target in basis")
        };
        for (col, (lam, s)) in src.iter().enumerate() {
            match variant {
                KoszulVariant::Odd => {
                    // Remove exterior factors left to right with sign (-1)^position.
                    let support: Vec<usize> = (0..rank).filter(|&i| lam.exponent(i) > 0).collect();
                    for (pos, &i) in support.iter().enumerate() {
                        let target = (
                            with_exponent(lam, i, -1, rank),
                            with_exponent(s, i, 1, rank),
                        );
                        let row = index(&target);
                        let sign = if pos % 2 == 0 { Q::one() } else { -Q::one() };
                        let v = d.get(row, col) + sign;
                        d.set(row, col, v);
                    }
                }
                KoszulVariant::Even => {
                    for i in 0..rank {
                        let mult = s.exponent(i);
                        if mult == 0 || lam.exponent(i) > 0 {
                            continue;
                        }
                        let before = (0..i).filter(|&t| lam.exponent(t) > 0).count();
                        let target = (
                            with_exponent(lam, i, 1, rank),
                            with_exponent(s, i, -1, rank),
                        );
                        let row = index(&target);
                        let mut c = Q::from_integer(mult.into());
                        if before % 2 == 1 {
                            c = -c;
                        }
                        let v = d.get(row, col) + c;
                        d.set(row, col, v);
                    }
                }
            }
        }
        differentials.push(d);
    }
    Ok(KoszulComplex {
        generator_rank: rank,
        total_weight: weight,
        variant,
        terms,
        differentials,
    })
}

/// Homology at every position, ends included.
pub fn check_exactness(c: &KoszulComplex) -> Result<ExactnessReport> {
    homology_dims(&c.dims(), &c.differentials)
}

/// Zeroes one differential; used to demonstrate the exactness checker.
pub fn with_zeroed_differential(mut c: KoszulComplex, idx: usize) -> KoszulComplex {
    let d = &c.differentials[idx];
    c.differentials[idx] = Matrix::zeros(d.rows(), d.cols());
    c
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::q;
    use num_traits::Zero;

    fn em(a: usize, n: usize, cutoff: usize) -> Vec<usize> {
        em_dims(EmSpace::new(a, n).unwrap(), cutoff).dims
    }

    #[test]
    fn closed_forms() {
        assert_eq!(em(1, 2, 8), vec![1, 0, 1, 0, 1, 0, 1, 0, 1]);
        assert_eq!(em(1, 3, 8), vec![1, 0, 0, 1, 0, 0, 0, 0, 0]);
        assert_eq!(em(2, 1, 4), vec![1, 2, 1, 0, 0]);
        assert_eq!(em(0, 2, 4), vec![1, 0, 0, 0, 0]);
    }

    #[test]
    fn coefficients_scale() {
        let s = EmSpace::new(1, 2).unwrap();
        assert_eq!(em_cohomology_with_coeffs(s, 1, 6), em_dims(s, 6));
        assert_eq!(em_cohomology_with_coeffs(s, 3, 4).dims, vec![3, 0, 3, 0, 3]);
        assert_eq!(em_cohomology_with_coeffs(s, 0, 4).dims, vec![0; 5]);
    }

    #[test]
    fn degree_zero_rejected() {
        assert!(EmSpace::new(1, 0).is_err());
    }

    #[test]
    fn koszul_shapes() {
        let c = build_koszul(2, 2, KoszulVariant::Odd).unwrap();
        assert_eq!(c.dims(), vec![1, 4, 3]);
        assert_eq!(c.euler_characteristic(), 0);

        let c = build_koszul(1, 1, KoszulVariant::Odd).unwrap();
        assert_eq!(c.dims(), vec![1, 1]);
        assert_eq!(c.differentials[0], Matrix::from_i64(&[&[1]]));

        let c = build_koszul(3, 3, KoszulVariant::Odd).unwrap();
        assert_eq!(c.euler_characteristic(), 0);
    }

    #[test]
    fn weight_zero_has_homology() {
        let c = build_koszul(2, 0, KoszulVariant::Even).unwrap();
        assert_eq!(check_exactness(&c).unwrap().homology(), vec![1]);
    }

    #[test]
    fn zeroed_differential_reports_homology() {
        let c = with_zeroed_differential(build_koszul(2, 2, KoszulVariant::Odd).unwrap(), 0);
        let r = check_exactness(&c).unwrap();
        assert!(!r.is_exact());
        assert_eq!(r.homology(), vec![1, 1, 0]);
    }

    #[test]
    fn odd_variant_weight_two_matrix() {
        // v1^v2 (x) 1 -> v2 (x) s1 - v1 (x) s2
        let c = build_koszul(2, 2, KoszulVariant::Odd).unwrap();
        let col = c.differentials[0].column(0);
        assert_eq!(col.iter().filter(|x| !x.is_zero()).count(), 2);
        assert!(col.contains(&q(1)) && col.contains(&q(-1)));
    }

    #[test]
    fn exact_at_desk_scale() {
        for a in 1..=3 {
            for w in 1..=6 {
                for v in [KoszulVariant::Odd, KoszulVariant::Even] {
                    let c = build_koszul(a, w, v).unwrap();
                    assert!(c.squares_to_zero());
                    assert!(check_exactness(&c).unwrap().is_exact(), "a={a} w={w} {v:?}");
                    assert_eq!(c.euler_characteristic(), 0);
                }
            }
        }
    }
}
