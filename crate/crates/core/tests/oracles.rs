//! Cross-checks against independently computed values.

use num_traits::Zero;

use postnikov::em::{em_dims, EmSpace};
use postnikov::graded::{free_gc_basis, standard, GeneratorList};
use postnikov::linalg::{q, q_frac, unit_vec, Matrix};
use postnikov::obstruction::{
    isotropic_over_closure, isotropic_over_q, mapping_space_pi1, pi_hom_em, IsotropyQ,
    QuadraticFormQ,
};
use postnikov::secondary::{blowup_ring, eta, les_check, BlowupScenario, LesData};
use postnikov::sullivan::{
    build_minimal_model, formal_cdga, homotopy_table, k_invariant_quadratic,
};
use postnikov::{quotient_dim, validate_ring, Element, SubspaceBasis};

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

#[test]
fn kunneth_of_two_spheres() {
    let s = standard::sphere(2, 4);
    let p = s.kunneth(&s).unwrap();
    assert_eq!(p.dims(), &[1, 0, 2, 0, 1]);
    assert!(validate_ring(&p).passed());
    // (e (x) 1)(1 (x) e) = e (x) e spans the top class.
    let a = p.element("e*1").unwrap();
    let b = p.element("1*e").unwrap();
    assert_eq!(p.cup(&a, &b).unwrap().coeffs, vec![q(1)]);
    assert!(p.cup(&a, &a).unwrap().is_zero());
}

#[test]
fn kunneth_dims_are_convolutions() {
    let rings = [
        standard::sphere(3, 6),
        standard::projective_plane(6),
        standard::kq2_times_kq3(6),
        standard::wedge_of_spheres(3, 2, 6),
    ];
    for a in &rings {
        for b in &rings {
            let p = a.kunneth(b).unwrap();
            let expected: Vec<usize> = (0..=6)
                .map(|m| (0..=m).map(|i| a.dim(i) * b.dim(m - i)).sum())
                .collect();
            assert_eq!(p.dims(), expected.as_slice());
            assert!(validate_ring(&p).passed());
        }
    }
}

#[test]
fn em_closed_forms_match_monomial_counts() {
    for rank in 0..=3 {
        for degree in 1..=4 {
            let gens = GeneratorList::uniform("u", rank, degree).unwrap();
            let counted: Vec<usize> = (0..=10).map(|d| free_gc_basis(&gens, d).len()).collect();
            assert_eq!(
                em_dims(EmSpace::new(rank, degree).unwrap(), 10).dims,
                counted
            );
        }
    }
    // Exterior on 4 odd classes: binomial coefficients.
    let d = em_dims(EmSpace::new(4, 3).unwrap(), 12).dims;
    for k in 0..=4 {
        assert_eq!(d[3 * k], binomial(4, k));
    }
}

#[test]
fn em_model_consistency() {
    for a in 1..=3 {
        for n in [2, 3, 4] {
            let cutoff = 9;
            let gens = GeneratorList::uniform("u", a, n).unwrap();
            let ring = standard::free_ring(&gens, cutoff);
            let through = cutoff.min(2 * n);
            let m = build_minimal_model(&formal_cdga(&ring).unwrap(), through).unwrap();
            assert_eq!(m.generators.len(), a, "a={a} n={n}");
            assert!(m.generators.iter().all(|g| g.degree == n));
            assert!(m.differential.iter().all(|d| d.is_zero()));
        }
    }
}

#[test]
fn wedge_pi3_is_sym2_minus_top_class() {
    // dim Sym^2(Q^2) - dim H^4 = 3 - 1.
    for (r, s) in [(1, 1), (1, -1), (2, -3), (5, 7)] {
        let ring = standard::wedge_y(q(r), q(s));
        let m = build_minimal_model(&formal_cdga(&ring).unwrap(), 4).unwrap();
        assert_eq!(homotopy_table(&m).pi(3), 3 - ring.dim(4));
    }
}

#[test]
fn wedge_k_invariant_spans_quadratic_cocycles() {
    let ring = standard::wedge_of_spheres(2, 2, 4);
    let m = build_minimal_model(&formal_cdga(&ring).unwrap(), 3).unwrap();
    let k = k_invariant_quadratic(&m, 3).unwrap();
    // Rows are the images of the three y's in the basis x1^2, x1 x2, x2^2.
    let rows: Vec<Vec<_>> = (0..3).map(|r| k.matrix.row(r).to_vec()).collect();
    assert_eq!(SubspaceBasis::echelon(3, rows).dim(), 3);
}

/// Isotropy over the closure for diagonal forms, decided by constructing a
/// witness: a zero entry gives a basis vector; otherwise with two nonzero
/// entries `x1 = 1, x2 = t` where `t^2 = -d1/d2` works since
/// `d1 + d2 * (-d1/d2) = 0`.
fn closure_oracle(d: &[i64]) -> bool {
    if d.contains(&0) {
        return true;
    }
    if d.len() < 2 {
        return false;
    }
    let t_squared = q_frac(-d[0], d[1]);
    (q(d[0]) + q(d[1]) * t_squared).is_zero()
}

fn diagonal_grid(dim: usize) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..dim {
        out = out
            .into_iter()
            .flat_map(|v| (-3..=3).map(move |x| [v.clone(), vec![x]].concat()))
            .collect();
    }
    out
}

#[test]
fn closure_isotropy_matches_oracle() {
    for dim in 1..=3 {
        for d in diagonal_grid(dim) {
            let f = QuadraticFormQ::diagonal(&d.iter().map(|&x| q(x)).collect::<Vec<_>>());
            assert_eq!(
                isotropic_over_closure(&f).exists,
                closure_oracle(&d),
                "{d:?}"
            );
        }
    }
}

fn small_search(d: &[i64], h: i64) -> bool {
    let n = d.len();
    let mut x = vec![-h; n];
    loop {
        if x.iter().any(|&v| v != 0) && d.iter().zip(&x).map(|(a, v)| a * v * v).sum::<i64>() == 0 {
            return true;
        }
        let mut i = 0;
        while i < n && x[i] == h {
            x[i] = -h;
            i += 1;
        }
        if i == n {
            return false;
        }
        x[i] += 1;
    }
}

#[test]
fn rational_isotropy_is_sound() {
    for dim in 1..=3 {
        for d in diagonal_grid(dim) {
            let f = QuadraticFormQ::diagonal(&d.iter().map(|&x| q(x)).collect::<Vec<_>>());
            match isotropic_over_q(&f, 12).unwrap() {
                IsotropyQ::Yes(v) => {
                    let v: Vec<_> = v.into_iter().map(postnikov::Q::from_integer).collect();
                    assert!(f.evaluate(&v).is_zero());
                }
                IsotropyQ::No => assert!(!small_search(&d, 6), "{d:?}"),
                IsotropyQ::Undetermined => assert!(dim >= 3 && !small_search(&d, 6), "{d:?}"),
            }
        }
    }
}

#[test]
fn mapping_space_matches_quotient_dim() {
    for pg in 0..=2 {
        for h11 in 1..=3 {
            let s = BlowupScenario::new(pg, h11, 4, q(2), q(1)).unwrap();
            let r = blowup_ring(&s).unwrap();
            let e = eta(&s);
            let pi1 = mapping_space_pi1(&r, &e).unwrap();
            let sub = SubspaceBasis::echelon(r.dim(2), vec![e.coeffs.clone()]);
            assert_eq!(pi1.dim, quotient_dim(r.dim(2), &sub).unwrap());
            assert_eq!(pi1.dim, 2 * pg + h11);
        }
    }
}

#[test]
fn pi_hom_em_table() {
    let s = BlowupScenario::new(1, 1, 4, q(2), q(1)).unwrap();
    let r = blowup_ring(&s).unwrap();
    assert_eq!(pi_hom_em(&r, 1, 2, 0), 4);
    assert_eq!(pi_hom_em(&r, 1, 2, 2), 1);
    assert_eq!(pi_hom_em(&r, 1, 2, 3), 0);
    for a in 1..=3 {
        for i in 0..=4 {
            assert_eq!(pi_hom_em(&r, 2 * a, 4, i), 2 * pi_hom_em(&r, a, 4, i));
        }
    }
}

#[test]
fn les_surjectivity_criterion() {
    // H1(C) -> H1(A) -> H2(Z) = 0 is exact at H1(A) iff the first map is onto.
    let onto = Matrix::from_i64(&[&[1, 0, 1], &[0, 1, 1]]);
    let not_onto = Matrix::from_i64(&[&[1, 2, 3], &[2, 4, 6]]);
    for (m, exact) in [(onto, true), (not_onto, false)] {
        let l = LesData {
            spaces: vec![3, 2, 0],
            maps: vec![m, Matrix::zeros(0, 2)],
        };
        let r = les_check(&l).unwrap();
        assert_eq!(r.positions[1].homology == 0, exact);
    }
}

#[test]
fn eta_zero_basepoint_is_flagged() {
    let s = BlowupScenario::new(1, 1, 4, q(0), q(0)).unwrap();
    let r = blowup_ring(&s).unwrap();
    let pi1 = mapping_space_pi1(&r, &Element::zero(2, 4)).unwrap();
    assert_eq!(pi1.dim, 4);
    assert!(pi1.warning.is_some());
    assert_eq!(
        pi1.basis,
        (0..4).map(|i| unit_vec(4, i)).collect::<Vec<_>>()
    );
}
