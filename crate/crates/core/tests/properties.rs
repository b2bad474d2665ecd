//! Property suites for the free-algebra and codomain layers.

use njordan::blift::{b_exact_varset_component, lift};
use njordan::freealg::{multilinear_component, rational, sum_of_generators};
use njordan::{Generator, Mode, Modes, Poly, Polynomial, VarSet, Word};
use num_traits::One;
use proptest::prelude::*;

fn mode() -> impl Strategy<Value = Mode> {
    prop_oneof![Just(Mode::Commutative), Just(Mode::Noncommutative)]
}

fn terms() -> impl Strategy<Value = Vec<(Vec<usize>, i64, i64)>> {
    prop::collection::vec(
        (prop::collection::vec(1usize..=3, 0..=3), -5i64..=5, 1i64..=3),
        0..=4,
    )
}

fn build(raw: &[(Vec<usize>, i64, i64)], mode: Mode) -> Polynomial {
    Polynomial::from_terms(
        raw.iter().map(|(w, num, den)| {
            let letters = w.iter().map(|&i| Generator::new(i, 8).unwrap()).collect();
            (Word::new(letters, mode), rational(*num, *den))
        }),
        mode,
    )
}

fn triple() -> impl Strategy<Value = (Polynomial, Polynomial, Polynomial)> {
    (mode(), terms(), terms(), terms()).prop_map(|(m, a, b, c)| (build(&a, m), build(&b, m), build(&c, m)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn mul_is_associative((p, q, r) in triple()) {
        let left = p.mul(&q).unwrap().mul(&r).unwrap();
        let right = p.mul(&q.mul(&r).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn mul_distributes_over_add((p, q, r) in triple()) {
        let left = p.mul(&q.add(&r).unwrap()).unwrap();
        let right = p.mul(&q).unwrap().add(&p.mul(&r).unwrap()).unwrap();
        prop_assert_eq!(left, right);
        let left = q.add(&r).unwrap().mul(&p).unwrap();
        let right = q.mul(&p).unwrap().add(&r.mul(&p).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn add_is_commutative_with_inverse((p, q, _r) in triple()) {
        prop_assert_eq!(p.add(&q).unwrap(), q.add(&p).unwrap());
        prop_assert!(p.add(&p.neg()).unwrap().is_zero());
        prop_assert_eq!(p.mul(&Poly::one(p.mode())).unwrap(), p.clone());
    }

    #[test]
    fn commutative_mode_multiplication_commutes(a in terms(), b in terms()) {
        let (p, q) = (build(&a, Mode::Commutative), build(&b, Mode::Commutative));
        prop_assert_eq!(p.mul(&q).unwrap(), q.mul(&p).unwrap());
    }

    #[test]
    fn stored_values_are_canonical((p, q, r) in triple()) {
        for v in [p.clone(), p.mul(&q).unwrap(), q.add(&r).unwrap(), r.pow(2)] {
            prop_assert!(v.is_canonical());
            prop_assert_eq!(v.canonicalize(), v);
        }
    }

    #[test]
    fn components_partition_polynomial((p, _q, _r) in triple()) {
        let mut rebuilt = Polynomial::zero(p.mode());
        for s in VarSet::full(3).subsets() {
            rebuilt = rebuilt.add(&p.exact_varset_component(s)).unwrap();
        }
        prop_assert_eq!(rebuilt, p);
    }

    #[test]
    fn lift_is_linear_and_injective((p, q, _r) in triple(), b in mode()) {
        let modes = Modes::new(p.mode(), b);
        let lp = lift(&p, modes).unwrap();
        let lq = lift(&q, modes).unwrap();
        prop_assert_eq!(lift(&p.add(&q).unwrap(), modes).unwrap(), lp.add(&lq).unwrap());
        prop_assert_eq!(lp == lq, p == q);
        prop_assert_eq!(lp.len(), p.len());
    }

    #[test]
    fn b_components_partition((p, q, _r) in triple(), b in mode()) {
        let modes = Modes::new(p.mode(), b);
        let bp = lift(&p, modes).unwrap().mul(&lift(&q, modes).unwrap()).unwrap();
        let mut rebuilt = njordan::BPolynomial::zero(modes);
        for s in VarSet::full(3).subsets() {
            rebuilt = rebuilt.add(&b_exact_varset_component(&bp, s)).unwrap();
        }
        prop_assert!(bp.is_canonical());
        prop_assert_eq!(rebuilt, bp);
    }
}

#[test]
fn noncommutative_witness_pair() {
    let nc = Mode::Noncommutative;
    let x1 = njordan::freealg::generator(Generator::new(1, 8).unwrap(), nc);
    let x2 = njordan::freealg::generator(Generator::new(2, 8).unwrap(), nc);
    assert_ne!(x1.mul(&x2).unwrap(), x2.mul(&x1).unwrap());
}

#[test]
fn power_term_counts() {
    for k in 1..=6usize {
        let s = sum_of_generators(VarSet::full(k), Mode::Noncommutative).unwrap();
        for n in 0..=6u32 {
            let p = s.pow(n);
            assert_eq!(p.len(), k.pow(n), "k={k} n={n}");
            assert!(p.terms().values().all(One::is_one));
        }
    }
}

#[test]
fn multilinear_counts() {
    let mut fact = 1usize;
    for n in 1..=6usize {
        fact *= n;
        let nc = sum_of_generators(VarSet::full(n), Mode::Noncommutative).unwrap().pow(n as u32);
        let ml = multilinear_component(&nc, n);
        assert_eq!(ml.len(), fact);
        assert!(ml.terms().values().all(One::is_one));
        assert_eq!(ml, nc.exact_varset_component(VarSet::full(n)));

        let c = sum_of_generators(VarSet::full(n), Mode::Commutative).unwrap().pow(n as u32);
        let mlc = multilinear_component(&c, n);
        assert_eq!(mlc.len(), 1);
        assert_eq!(mlc.terms().values().next().unwrap(), &rational(fact as i64, 1));
    }
}

#[test]
fn codomain_degree_bookkeeping() {
    for n in 2..=5usize {
        let modes = Modes::new(Mode::Noncommutative, Mode::Noncommutative);
        let s = sum_of_generators(VarSet::full(n), modes.a).unwrap();
        let image = lift(&s, modes).unwrap().pow(n as u32);
        assert_eq!(image.len(), n.pow(n as u32));
        for bw in image.terms().keys() {
            let letters: usize = bw.letters().iter().map(|h| h.arg().degree()).sum();
            assert_eq!(letters, n);
            if bw.varset() == VarSet::full(n) {
                let mut seen: Vec<usize> = bw
                    .letters()
                    .iter()
                    .flat_map(|h| h.arg().letters().iter().map(|g| g.index()))
                    .collect();
                seen.sort();
                assert_eq!(seen, (1..=n).collect::<Vec<_>>());
            }
        }
    }
}
