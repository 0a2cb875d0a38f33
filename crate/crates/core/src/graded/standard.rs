//! Cohomology rings of a few standard spaces, used as fixtures and as the
//! source of the bundled corpus.

use num_traits::{One, Zero};

use super::{free_gc_basis, GeneratorList, GradedRing, RingBuilder};
use crate::linalg::{q, Q};

fn empty_basis(cutoff: usize) -> Vec<Vec<String>> {
    let mut b = vec![Vec::new(); cutoff + 1];
    b[0].push("1".to_string());
    b
}

/// H*(point).
pub fn point(cutoff: usize) -> GradedRing {
    RingBuilder::new(cutoff, empty_basis(cutoff))
        .and_then(RingBuilder::build)
        .expect("point ring")
}

/// H*(S^n) = Q[e]/(e^2) with `e` in degree `n`.
pub fn sphere(n: usize, cutoff: usize) -> GradedRing {
    assert!(n >= 1, "sphere dimension must be positive");
    let mut basis = empty_basis(cutoff);
    if n <= cutoff {
        basis[n].push("e".to_string());
    }
    RingBuilder::new(cutoff, basis)
        .and_then(RingBuilder::build)
        .expect("sphere ring")
}

/// H*(CP^k) = Q[h]/(h^{k+1}) with `h` in degree 2.
pub fn complex_projective(k: usize, cutoff: usize) -> GradedRing {
    let mut basis = empty_basis(cutoff);
    for p in 1..=k {
        if 2 * p <= cutoff {
            basis[2 * p].push(if p == 1 { "h".into() } else { format!("h{p}") });
        }
    }
    let mut b = RingBuilder::new(cutoff, basis).expect("projective ring");
    for p1 in 1..=k {
        for p2 in p1..=k {
            let d = 2 * (p1 + p2);
            if d > cutoff || p1 + p2 > k {
                continue;
            }
            b = b
                .product(2 * p1, 0, 2 * p2, 0, vec![Q::one()])
                .expect("projective ring");
        }
    }
    b.build().expect("projective ring")
}

/// H*(CP^2).
pub fn projective_plane(cutoff: usize) -> GradedRing {
    complex_projective(2, cutoff)
}

/// H* of a wedge of `count` copies of S^n: all products of positive-degree
/// classes vanish.
pub fn wedge_of_spheres(count: usize, n: usize, cutoff: usize) -> GradedRing {
    let mut basis = empty_basis(cutoff);
    if n <= cutoff {
        basis[n] = (0..count)
            .map(|i| match (count, i) {
                (2, 0) => "e".to_string(),
                (2, 1) => "f".to_string(),
                _ => format!("e{}", i + 1),
            })
            .collect();
    }
    RingBuilder::new(cutoff, basis)
        .and_then(RingBuilder::build)
        .expect("wedge ring")
}

/// H* of S^2 v S^2 with a 4-cell attached along the class with diagonal
/// matrix `(r, s)`: `e*e = r t`, `f*f = s t`, `e*f = 0`. Cutoff 4.
pub fn wedge_y(r: Q, s: Q) -> GradedRing {
    let basis = vec![
        vec!["1".into()],
        vec![],
        vec!["e".into(), "f".into()],
        vec![],
        vec!["t".into()],
    ];
    RingBuilder::new(4, basis)
        .and_then(|b| b.product_scalar("e", "e", r, "t"))
        .and_then(|b| b.product_scalar("f", "f", s, "t"))
        .and_then(RingBuilder::build)
        .expect("wedge_y ring")
}

/// The free graded-commutative algebra on `gens`, truncated at `cutoff`.
/// Basis elements are labelled by their monomials.
pub fn free_ring(gens: &GeneratorList, cutoff: usize) -> GradedRing {
    let bases: Vec<_> = (0..=cutoff).map(|d| free_gc_basis(gens, d)).collect();
    let labels = bases
        .iter()
        .map(|ms| ms.iter().map(|m| gens.format_monomial(m)).collect())
        .collect();
    let mut b = RingBuilder::new(cutoff, labels).expect("free ring");
    for i in 1..=cutoff {
        for j in i..=(cutoff - i) {
            for (a, ma) in bases[i].iter().enumerate() {
                for (c, mc) in bases[j].iter().enumerate() {
                    if i == j && c < a {
                        continue;
                    }
                    let Some((negative, prod)) = gens.multiply(ma, mc) else {
                        continue;
                    };
                    let idx = bases[i + j]
                        .iter()
                        .position(|m| *m == prod)
                        .expect("product in basis");
                    let mut v = vec![Q::zero(); bases[i + j].len()];
                    v[idx] = if negative { -Q::one() } else { Q::one() };
                    b = b.product(i, a, j, c, v).expect("free ring");
                }
            }
        }
    }
    b.build().expect("free ring")
}

/// Rational cohomology of K(Q, 2) x K(Q, 3): Q[x] (x) Lambda[y].
pub fn kq2_times_kq3(cutoff: usize) -> GradedRing {
    let gens = GeneratorList::new(vec![
        super::Generator::new("x", 2),
        super::Generator::new("y", 3),
    ])
    .expect("generators");
    free_ring(&gens, cutoff)
}

/// H*(S^1), a non simply connected input.
pub fn circle(cutoff: usize) -> GradedRing {
    sphere(1, cutoff)
}

/// Two points: H^0 = Q^2, with the second basis element idempotent.
pub fn two_points(cutoff: usize) -> GradedRing {
    let mut basis = empty_basis(cutoff);
    basis[0].push("p".to_string());
    RingBuilder::new(cutoff, basis)
        .and_then(|b| b.product(0, 1, 0, 1, vec![q(0), q(1)]))
        .and_then(RingBuilder::build)
        .expect("two points")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded::{validate_ring, Element};

    #[test]
    fn s2_square_vanishes() {
        let r = sphere(2, 8);
        let e = r.element("e").unwrap();
        assert!(r.cup(&e, &e).unwrap().is_zero());
        assert_eq!(r.cup(&r.one(), &e).unwrap(), e);
    }

    #[test]
    fn cup_beyond_cutoff_is_rejected() {
        let r = projective_plane(4);
        let h = r.element("h").unwrap();
        let h2 = r.element("h2").unwrap();
        assert_eq!(
            r.cup(&h, &h2),
            Err(crate::Error::BeyondCutoff {
                degree: 6,
                cutoff: 4
            })
        );
    }

    #[test]
    fn cp2_relations() {
        let r = projective_plane(8);
        let h = r.element("h").unwrap();
        let h2 = r.cup(&h, &h).unwrap();
        assert_eq!(h2, Element::basis(4, 1, 0));
        assert!(r.cup(&h, &h2).unwrap().is_zero());
        assert_eq!(r.dims(), &[1, 0, 1, 0, 1, 0, 0, 0, 0]);
    }

    #[test]
    fn wedge_y_products() {
        let r = wedge_y(q(2), q(-3));
        let e = r.element("e").unwrap();
        let f = r.element("f").unwrap();
        assert_eq!(r.cup(&e, &e).unwrap().coeffs, vec![q(2)]);
        assert_eq!(r.cup(&f, &f).unwrap().coeffs, vec![q(-3)]);
        assert!(r.cup(&e, &f).unwrap().is_zero());
    }

    #[test]
    fn free_rings_validate() {
        assert!(validate_ring(&kq2_times_kq3(9)).passed());
        let g = GeneratorList::uniform("u", 3, 1).unwrap();
        assert!(validate_ring(&free_ring(&g, 4)).passed());
        assert!(validate_ring(&two_points(3)).passed());
    }
}
