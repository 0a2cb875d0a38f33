use num_traits::{Signed, Zero};
use proptest::prelude::*;

use postnikov::graded::{standard, Generator, GeneratorList};
use postnikov::io;
use postnikov::linalg::{q, Matrix};
use postnikov::obstruction::{isotropic_over_q, IsotropyQ, QuadraticFormQ};
use postnikov::secondary::{blowup_ring, eta, eta_square, secondary_pairing, BlowupScenario};
use postnikov::sullivan::{build_minimal_model, certify, formal_cdga, homotopy_table};
use postnikov::{validate_ring, Q};

fn nonzero_q() -> impl Strategy<Value = Q> {
    (-9i64..=9, 1i64..=5)
        .prop_filter("nonzero", |(a, _)| *a != 0)
        .prop_map(|(a, b)| Q::new(a.into(), b.into()))
}

fn small_q() -> impl Strategy<Value = Q> {
    (-9i64..=9, 1i64..=5).prop_map(|(a, b)| Q::new(a.into(), b.into()))
}

fn scenario() -> impl Strategy<Value = BlowupScenario> {
    (0usize..3, 1usize..3, -5i64..=5, small_q(), small_q())
        .prop_map(|(pg, h11, hh, m, n)| BlowupScenario::new(pg, h11, hh, m, n).unwrap())
}

fn symmetric3() -> impl Strategy<Value = Matrix> {
    prop::collection::vec(-4i64..=4, 6).prop_map(|v| {
        Matrix::from_i64(&[
            &[v[0], v[1], v[2]],
            &[v[1], v[3], v[4]],
            &[v[2], v[4], v[5]],
        ])
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn wedge_models_certify((r, s) in (nonzero_q(), nonzero_q())) {
        let ring = standard::wedge_y(r, s);
        let target = formal_cdga(&ring).unwrap();
        let m = build_minimal_model(&target, 4).unwrap();
        prop_assert!(m.is_minimal());
        prop_assert!(m.d_squared_vanishes());
        prop_assert!(certify(&m, &target).unwrap().iter().all(|c| c.is_isomorphism()));
        let t = homotopy_table(&m);
        prop_assert_eq!((t.pi(2), t.pi(3)), (2, 2));
    }

    #[test]
    fn free_ring_models_are_their_generators(degrees in prop::collection::vec(2usize..6, 1..4)) {
        let cutoff = 7;
        let gens = GeneratorList::new(
            degrees.iter().enumerate().map(|(i, &d)| Generator::new(format!("g{i}"), d)).collect(),
        ).unwrap();
        let ring = standard::free_ring(&gens, cutoff);
        let m = build_minimal_model(&formal_cdga(&ring).unwrap(), cutoff).unwrap();
        let t = homotopy_table(&m);
        for d in 2..=cutoff {
            prop_assert_eq!(t.pi(d), degrees.iter().filter(|&&x| x == d).count());
        }
        prop_assert!(m.differential.iter().all(|p| p.is_zero()));
    }

    #[test]
    fn eta_square_two_paths_agree(s in scenario()) {
        let expected = &s.n * &s.n * Q::from_integer(s.hh.into()) - &s.m * &s.m;
        let r = blowup_ring(&s).unwrap();
        let e = eta(&s);
        prop_assert_eq!(r.cup(&e, &e).unwrap().coeffs, vec![expected.clone()]);
        prop_assert_eq!(eta_square(&s).unwrap(), expected);
    }

    #[test]
    fn pairing_is_linear_in_omega(t in nonzero_q(), w1 in small_q(), w2 in small_q()) {
        let s = BlowupScenario::new(1, 1, 4, &t * q(2), t.clone()).unwrap();
        let p = |w: &Q| secondary_pairing(&s, w).unwrap();
        prop_assert_eq!(p(&(&w1 + &w2)), p(&w1) + p(&w2));
        prop_assert_eq!(p(&w1), q(4) * &t * &t * &w1);
    }

    #[test]
    fn blowup_rings_validate_and_round_trip(s in scenario()) {
        let r = blowup_ring(&s).unwrap();
        prop_assert!(validate_ring(&r).passed());
        prop_assert_eq!(io::parse_ring(&io::emit_ring(&r)).unwrap(), r);
    }

    #[test]
    fn kunneth_of_wedges_validates((r, s) in (nonzero_q(), nonzero_q())) {
        let a = standard::wedge_y(r, s);
        let p = a.kunneth(&standard::sphere(2, 4)).unwrap();
        prop_assert_eq!(p.dims(), &[1, 0, 3, 0, 3]);
        prop_assert!(validate_ring(&p).passed());
    }

    #[test]
    fn congruence_diagonalizes(m in symmetric3()) {
        let f = QuadraticFormQ::new(m.clone()).unwrap();
        let (d, p) = f.diagonalize();
        let pt = p.transpose();
        let c = pt.mul(&m).unwrap().mul(&p).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let want = if i == j { d[i].clone() } else { Q::zero() };
                prop_assert_eq!(c.get(i, j), &want);
            }
        }
        prop_assert_eq!(p.rank(), 3);
    }

    #[test]
    fn rational_isotropy_answers_are_sound(m in symmetric3()) {
        let f = QuadraticFormQ::new(m).unwrap();
        match isotropic_over_q(&f, 6).unwrap() {
            IsotropyQ::Yes(v) => {
                let v: Vec<Q> = v.into_iter().map(Q::from_integer).collect();
                prop_assert!(v.iter().any(|x| !x.is_zero()));
                prop_assert!(f.evaluate(&v).is_zero());
            }
            IsotropyQ::No => {
                // Only definite forms are declared anisotropic in three variables.
                let (d, _) = f.diagonalize();
                prop_assert!(d.iter().all(|x| x.is_positive()) || d.iter().all(|x| x.is_negative()));
            }
            IsotropyQ::Undetermined => {}
        }
    }
}
