//! Property-test groups for the algebraic identities the solver relies on.

mod common;

use proptest::prelude::*;

use simplest_thue::decimal::dec;

use simplest_thue::forms::{dual, make_form, normalize_sign, orbit, Family, SolutionPair};
use simplest_thue::poly::{isolate_real_roots, Poly};
use simplest_thue::ring::{enumerate_disc_int, QuadInt, RingSpec};
use simplest_thue::solver::{solve_relative, SolveOptions};

const RINGS: [i64; 6] = [1, 2, 3, 5, 7, 11];

fn family() -> impl Strategy<Value = Family> {
    prop_oneof![Just(Family::Quartic), Just(Family::Sextic)]
}

fn family_t(range: i64) -> impl Strategy<Value = (Family, i64)> {
    (family(), -range..=range).prop_filter("reducible", |(f, t)| f.is_valid_t(*t))
}

fn elem(m: i64, r: i64) -> impl Strategy<Value = QuadInt> {
    (-r..=r, -r..=r).prop_map(move |(a, b)| QuadInt::new(RingSpec::new(m).unwrap(), a, b))
}

mod norm_multiplicativity {
    use super::*;

    proptest! {
        #[test]
        fn product_norm(mi in 0..RINGS.len(), a1 in -10_000i64..10_000, a2 in -10_000i64..10_000,
                        b1 in -10_000i64..10_000, b2 in -10_000i64..10_000) {
            let ring = RingSpec::new(RINGS[mi]).unwrap();
            let a = QuadInt::new(ring, a1, a2);
            let b = QuadInt::new(ring, b1, b2);
            prop_assert_eq!(a.mul(&b).unwrap().norm(), a.norm() * b.norm());
        }

        #[test]
        fn conjugate_product_is_norm(mi in 0..RINGS.len(), a1 in -10_000i64..10_000, a2 in -10_000i64..10_000) {
            let ring = RingSpec::new(RINGS[mi]).unwrap();
            let a = QuadInt::new(ring, a1, a2);
            prop_assert_eq!(a.mul(&a.conj()).unwrap(), ring.from_int(a.norm() as i64));
        }
    }
}

mod enumeration_completeness {
    use super::*;

    #[test]
    fn disc_matches_coefficient_box_up_to_radius_100() {
        for m in RINGS {
            let ring = RingSpec::new(m).unwrap();
            for r_sq in [0i64, 1, 2, 3, 4, 5, 17, 100, 1000, 4321, 10_000] {
                let mut lib: Vec<(i64, i64)> =
                    enumerate_disc_int(ring, r_sq as i128).iter().map(|z| (z.a1, z.a2)).collect();
                let mut naive = common::disc(m, r_sq);
                lib.sort_unstable();
                naive.sort_unstable();
                assert_eq!(lib, naive, "m={m} r^2={r_sq}");
            }
        }
    }

    proptest! {
        #[test]
        fn disc_is_exactly_the_norm_ball(mi in 0..RINGS.len(), r_sq in 0i128..3000) {
            let ring = RingSpec::new(RINGS[mi]).unwrap();
            let d = enumerate_disc_int(ring, r_sq);
            prop_assert!(d.iter().all(|z| z.norm() <= r_sq));
            prop_assert_eq!(d.len(), common::disc(RINGS[mi], r_sq as i64).len());
        }
    }
}

mod orbit_duality_homogeneity {
    use super::*;

    proptest! {
        #[test]
        fn orbit_preserves_value((f, t) in family_t(500), mi in 0..RINGS.len(), seed in any::<u64>()) {
            let m = RINGS[mi];
            let ring = RingSpec::new(m).unwrap();
            let x = QuadInt::new(ring, (seed % 41) as i64 - 20, ((seed >> 8) % 41) as i64 - 20);
            let y = QuadInt::new(ring, ((seed >> 16) % 41) as i64 - 20, ((seed >> 24) % 41) as i64 - 20);
            let form = make_form(f, t).unwrap();
            let v = form.evaluate(&x, &y).unwrap();
            for p in orbit(f, &SolutionPair::new(x, y)) {
                prop_assert_eq!(form.evaluate(&p.x, &p.y).unwrap(), v);
            }
        }

        #[test]
        fn dual_swaps_arguments((f, t) in family_t(10_000), x in elem(7, 25), y in elem(7, 25)) {
            let form = make_form(f, t).unwrap();
            let (t2, p) = dual(f, t, &SolutionPair::new(x, y)).unwrap();
            let g = make_form(f, t2).unwrap();
            prop_assert_eq!(g.evaluate(&p.x, &p.y).unwrap(), form.evaluate(&x, &y).unwrap());
            prop_assert_eq!(f.dual_t(t2), t);
        }

        #[test]
        fn homogeneity((f, t) in family_t(1000), x in elem(3, 12), y in elem(3, 12), g in -5i64..=5) {
            let form = make_form(f, t).unwrap();
            let ring = x.ring();
            let lhs = form.evaluate(&x.scale(g).unwrap(), &y.scale(g).unwrap()).unwrap();
            let rhs = ring.from_int(g).pow(form.degree()).unwrap().mul(&form.evaluate(&x, &y).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(16))]

        #[test]
        fn solution_sets_transport_under_duality((f, t) in family_t(120), mi in 0..RINGS.len()) {
            let m = RINGS[mi];
            let a = solve_relative(f, t, m, SolveOptions::default()).unwrap();
            let b = solve_relative(f, f.dual_t(t), m, SolveOptions::default()).unwrap();
            let swapped: Vec<_> = a.solutions.iter().map(|p| p.swap()).collect();
            prop_assert_eq!(normalize_sign(&swapped), b.solutions);
        }

        #[test]
        fn unit_closure((f, t) in family_t(120), m in prop_oneof![Just(1i64), Just(3i64)]) {
            let r = solve_relative(f, t, m, SolveOptions::default()).unwrap();
            let ring = RingSpec::new(m).unwrap();
            let mut closed = Vec::new();
            for p in &r.solutions {
                for u in ring.units() {
                    closed.push(SolutionPair::new(p.x.mul(&u).unwrap(), p.y.mul(&u).unwrap()));
                }
            }
            prop_assert_eq!(normalize_sign(&closed), r.solutions.clone());
            let base: &[(i64, i64)] = match f {
                Family::Quartic => &[(0, 0), (0, 1), (1, 0)],
                Family::Sextic => &[(0, 0), (0, 1), (1, 0), (1, -1)],
            };
            for &(x, y) in base {
                let p = SolutionPair::new(ring.from_int(x), ring.from_int(y));
                prop_assert!(r.solutions.contains(&normalize_sign(&[p])[0]));
            }
        }
    }
}

mod sturm_certificates {
    use super::*;

    /// Ascending coefficients of `p(x) * (x - r)`.
    fn times_linear(p: &[i64], r: i64) -> Vec<i64> {
        let mut out = vec![0; p.len() + 1];
        for (i, &c) in p.iter().enumerate() {
            out[i + 1] += c;
            out[i] -= r * c;
        }
        out
    }

    proptest! {
        #[test]
        fn family_roots_are_real_and_certified((f, t) in family_t(1000)) {
            let form = make_form(f, t).unwrap();
            let p = Poly::from_i64(&form.ascending());
            let roots = isolate_real_roots(&p, &dec("0.0000001")).unwrap();
            prop_assert_eq!(roots.len(), form.degree() as usize);
            let chain = p.sturm_chain();
            for iv in &roots {
                prop_assert!(iv.width() <= dec("0.0000001"));
                prop_assert!(iv.is_exact() || chain.count(&iv.lo, &iv.hi) == 1);
                if !iv.is_exact() {
                    prop_assert_ne!(p.sign_at(&iv.lo), p.sign_at(&iv.hi));
                }
            }
            for w in roots.windows(2) {
                prop_assert!(w[0].hi < w[1].lo);
            }
        }

        #[test]
        fn random_square_free_products(a in -20i64..20, b in -20i64..20, c in -20i64..20) {
            prop_assume!(a != b && b != c && a != c);
            // (x - a)(x - b)(x - c)(x^2 + 1)
            let mut coeffs = vec![1i64, 0, 1];
            for r in [a, b, c] {
                coeffs = times_linear(&coeffs, r);
            }
            let p = Poly::from_i64(&coeffs);
            let roots = isolate_real_roots(&p, &dec("0.001")).unwrap();
            prop_assert_eq!(roots.len(), 3);
            let mut want = vec![a, b, c];
            want.sort_unstable();
            for (iv, w) in roots.iter().zip(want) {
                prop_assert!(iv.contains(&dec(&w.to_string())));
            }
        }
    }
}
