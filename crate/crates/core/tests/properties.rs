mod common;

use fgcalc::divisor::Divisor;
use fgcalc::fgl::{universal_fgl, Fgl};
use fgcalc::hopf::{self, FiniteHopf};
use fgcalc::parse::{parse_laurent, parse_series};
use fgcalc::residue::{laurent_invert, residue};
use fgcalc::ring::{Polynomial, Ring, RingElem};
use fgcalc::series::{LaurentSeries, TruncSeries};
use fgcalc::weierstrass;
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;

use common::{int, ring, POOL};

/// `c0 + c1 e + c2 e^2 + c3 a + c4 a e` in `Z/12[e;e^3,a]`.
fn elem(r: &Ring, c: &[i64]) -> RingElem {
    let e = RingElem::generator(r, 0);
    let a = RingElem::generator(r, 1);
    let basis = [RingElem::one(r), e.clone(), e.pow(2), a.clone(), &a * &e];
    basis.iter().zip(c).fold(RingElem::zero(r), |acc, (b, &k)| &acc + &b.mul_int(k))
}

fn series(r: &Ring, coeffs: &[i64], order: u32) -> TruncSeries {
    TruncSeries::from_terms(r, &["x"], order, coeffs.iter().enumerate().map(|(k, &c)| (vec![k as u32], int(r, c))))
        .unwrap()
}

fn coeffs(len: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-20i64..20, len)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_laws(a in coeffs(5), b in coeffs(5), c in coeffs(5)) {
        let r = ring("Z/12[e;e^3,a]");
        let (a, b, c) = (elem(&r, &a), elem(&r, &b), elem(&r, &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a - &b) + &b, a.clone());
        if a.is_unit() {
            prop_assert!((&a * &a.invert_unit().unwrap()).is_one());
        }
        // nilpotent + unit stays a unit
        if a.is_unit() && b.is_nilpotent() {
            prop_assert!((&a + &b).is_unit());
        }
    }

    #[test]
    fn invert_round_trip(mut c in coeffs(7), unit in prop::sample::select(vec![1i64, -1])) {
        let r = ring("Z");
        c[0] = unit;
        let a = series(&r, &c, 7);
        let inv = a.invert().unwrap();
        prop_assert_eq!(a.checked_mul(&inv).unwrap(), TruncSeries::one(&r, &["x"], 7));
    }

    #[test]
    fn revert_round_trip(mut c in coeffs(7)) {
        let r = ring("Z");
        c[0] = 0;
        c[1] = 1;
        let f = series(&r, &c, 7);
        let g = f.revert().unwrap();
        let x = TruncSeries::var(&r, &["x"], 0, 7);
        prop_assert_eq!(f.compose(std::slice::from_ref(&g)).unwrap(), x.clone());
        prop_assert_eq!(g.compose(&[f]).unwrap(), x);
    }

    #[test]
    fn compose_is_associative(f in coeffs(6), mut g in coeffs(6), mut h in coeffs(6)) {
        let r = ring("Z/9");
        g[0] = 0;
        h[0] = 0;
        let (f, g, h) = (series(&r, &f, 6), series(&r, &g, 6), series(&r, &h, 6));
        let left = f.compose(&[g.compose(std::slice::from_ref(&h)).unwrap()]).unwrap();
        let right = f.compose(std::slice::from_ref(&g)).unwrap().compose(&[h]).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn leibniz(a in coeffs(8), b in coeffs(8)) {
        let r = ring("Z");
        let (a, b) = (series(&r, &a, 8), series(&r, &b, 8));
        let lhs = a.checked_mul(&b).unwrap().derivative(0);
        let rhs = a.derivative(0).checked_mul(&b).unwrap().checked_add(&a.checked_mul(&b.derivative(0)).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn n_series_is_additive(m in -3i64..4, n in -3i64..4) {
        let r = ring("Z[a:-1]");
        let f = Fgl::h(&RingElem::generator(&r, 0), 6);
        let sum = f.n_series(m + n).unwrap();
        let fm = f.n_series(m).unwrap();
        let fnn = f.n_series(n).unwrap();
        prop_assert_eq!(f.series().compose(&[fm, fnn]).unwrap(), sum);
    }

    #[test]
    fn weierstrass_reduce_is_remainder(seed in any::<u64>(), q in coeffs(3), rem in coeffs(3)) {
        let mut rng = StdRng::seed_from_u64(seed);
        let r = ring(POOL[(seed % 3) as usize]);
        let n = 1 + (seed % 3) as u32;
        let g = common::weierstrass(&r, &mut rng, n, 8);
        let h = weierstrass::factor(&g).unwrap().h;
        let rem: Vec<RingElem> = rem.iter().take(n as usize).map(|&c| int(&r, c)).collect();
        let rem = Polynomial::new(&r, rem).unwrap();
        let q = Polynomial::new(&r, q.iter().map(|&c| int(&r, c)).collect()).unwrap();
        let f = h.checked_mul(&q).unwrap().checked_add(&rem).unwrap();
        let f = TruncSeries::from_polynomial(&f, "x", 8);
        prop_assert_eq!(weierstrass::reduce(&f, &g).unwrap(), rem);
    }

    #[test]
    fn factor_is_idempotent(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let r = ring(POOL[(seed % 3) as usize]);
        let g = common::weierstrass(&r, &mut rng, (seed % 4) as u32, 7);
        let first = weierstrass::factor(&g).unwrap();
        let second = weierstrass::factor(&TruncSeries::from_polynomial(&first.h, "x", 7)).unwrap();
        prop_assert_eq!(second.h, first.h);
    }

    #[test]
    fn residue_is_linear_and_kills_derivatives(seed in any::<u64>(), s in -3i64..4) {
        let mut rng = StdRng::seed_from_u64(seed);
        let r = ring(POOL[(seed % 3) as usize]);
        let f = common::laurent(&r, &mut rng, -3, 0, 6);
        let g = common::laurent(&r, &mut rng, -2, -1, 6);
        prop_assert!(residue(&f.derivative()).is_zero());
        let comb = f.scale(&int(&r, s)).unwrap().checked_add(&g).unwrap();
        prop_assert_eq!(residue(&comb), &residue(&f).mul_int(s) + &residue(&g));
    }

    #[test]
    fn laurent_inverse(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let r = ring(POOL[(seed % 3) as usize]);
        let f = common::laurent(&r, &mut rng, -2, (seed % 3) as i64 - 1, 24);
        let p = f.checked_mul(&laurent_invert(&f).unwrap()).unwrap();
        prop_assert!(p.order() > 0);
        let one = LaurentSeries::monomial(&RingElem::one(&r), "x", 0, p.order()).unwrap();
        prop_assert_eq!(p.truncate(p.order()), one);
    }

    #[test]
    fn series_print_parse_round_trip(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let r = ring(POOL[(seed % 3) as usize]);
        let g = common::weierstrass(&r, &mut rng, (seed % 4) as u32, 6);
        prop_assert_eq!(parse_series(&g.to_string(), &r, &["x"], 6).unwrap(), g);
        let f = common::laurent(&r, &mut rng, -3, -1, 4);
        prop_assert_eq!(parse_laurent(&f.to_string(), &r, "x", 4).unwrap(), f);
    }

    #[test]
    fn whitney_sum(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let r = ring("Z/4[e;e^2]");
        let roots = |rng: &mut StdRng, k: usize| (0..k).map(|_| common::nilpotent(&r, rng)).collect::<Vec<_>>();
        let d = Divisor::from_points(&r, &roots(&mut rng, (seed % 3) as usize)).unwrap();
        let e = Divisor::from_points(&r, &roots(&mut rng, 2)).unwrap();
        // total Chern classes 1 + c_1 + ... multiply
        let total = |d: &Divisor| {
            let mut c = vec![RingElem::one(&r)];
            c.extend(d.chern());
            Polynomial::new(&r, c).unwrap()
        };
        prop_assert_eq!(total(&d.sum(&e).unwrap()), total(&d).checked_mul(&total(&e)).unwrap());
    }

    #[test]
    fn random_structure_constants_dualize_involutively(seed in any::<u64>(), m in 1usize..4) {
        let mut rng = StdRng::seed_from_u64(seed);
        let r = ring("Z/8[e;e^2]");
        let mut any = || common::any(&r, &mut rng);
        let mut cube = || (0..m).map(|_| (0..m).map(|_| (0..m).map(|_| any()).collect()).collect()).collect();
        let (mult, comult) = (cube(), cube());
        let mut any = || common::any(&r, &mut rng);
        let unit = (0..m).map(|_| any()).collect();
        let counit = (0..m).map(|_| any()).collect();
        let chi = (0..m).map(|_| (0..m).map(|_| any()).collect()).collect();
        let h = FiniteHopf::new(&r, mult, unit, comult, counit, Some(chi)).unwrap();
        prop_assert_eq!(h.cartier_dual().cartier_dual(), h);
    }
}

#[test]
fn universal_relations_are_antisymmetric() {
    for order in 2..=6 {
        let u = universal_fgl(order).unwrap();
        for r in &u.relations {
            let (i, j, k) = (r.exponent[0], r.exponent[1], r.exponent[2]);
            let mirror = u.relations.iter().find(|s| s.exponent == vec![k, j, i]);
            let expected = -&r.poly;
            match mirror {
                Some(s) => assert_eq!(s.poly, expected, "order {order}, exponent {:?}", r.exponent),
                None => panic!("no mirror relation for {:?}", r.exponent),
            }
        }
    }
}

#[test]
fn bundled_hopf_properties() {
    for name in hopf::BUNDLED_EXAMPLES {
        let h = hopf::example(name).unwrap();
        let chi = match h.antipode() {
            Some(chi) => chi.clone(),
            None => h.compute_antipode().unwrap(),
        };
        // commutative and cocommutative examples: chi is an involution
        let m = h.rank();
        let commutative = (0..m).all(|i| (0..m).all(|j| h.mult()[i][j] == h.mult()[j][i]));
        let cocommutative = (0..m).all(|i| (0..m).all(|j| (0..m).all(|k| h.comult()[i][j][k] == h.comult()[i][k][j])));
        if commutative && cocommutative {
            for (i, row) in chi.iter().enumerate() {
                let twice = h.apply_linear(&chi, row);
                let mut e = vec![RingElem::zero(h.ring()); m];
                e[i] = RingElem::one(h.ring());
                assert_eq!(twice, e, "{name}: chi(chi(e_{i}))");
            }
        }
        // a grouplike v pairs as an algebra map on the dual
        let d = h.cartier_dual();
        for i in 0..m {
            let mut v = vec![RingElem::zero(h.ring()); m];
            v[i] = RingElem::one(h.ring());
            if !h.is_grouplike(&v).unwrap() {
                continue;
            }
            let pair = |w: &[RingElem]| w[i].clone();
            for a in 0..m {
                for b in 0..m {
                    let prod = &d.mult()[a][b];
                    let lhs = pair(prod);
                    let rhs = &pair(&unit_vec(h.ring(), m, a)) * &pair(&unit_vec(h.ring(), m, b));
                    assert_eq!(lhs, rhs, "{name}: grouplike e_{i} on dual basis ({a}, {b})");
                }
            }
            assert!(pair(d.unit()).is_one(), "{name}: grouplike e_{i} on the dual unit");
        }
    }
}

fn unit_vec(r: &Ring, m: usize, i: usize) -> Vec<RingElem> {
    let mut v = vec![RingElem::zero(r); m];
    v[i] = RingElem::one(r);
    v
}
