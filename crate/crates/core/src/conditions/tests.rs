use num_bigint::BigInt;
use proptest::prelude::*;

use super::*;
use crate::coeffrings::{augmentation, builtin_kp2, sparse, Coords};
use crate::equivariant::{comm_wheel_membership, Ordering as QOrdering};
use crate::laurent::Integers;

fn kp2() -> KSurfaceModel<BigInt> {
    builtin_kp2()
}

fn b(v: i64) -> BigInt {
    BigInt::from(v)
}

/// Rank map `s ↦ 0` in every slot: the coefficient of basis index 0.
fn rank_map(x: &SurfacePoly<BigInt>) -> Laurent<Integers<BigInt>> {
    x.map_coeffs(Integers::new(), |c| augmentation(c))
}

fn zpoly(n: usize, terms: &[(i64, &[i32])]) -> Laurent<Integers<BigInt>> {
    Laurent::from_terms(Integers::new(), n, 0, terms.iter().map(|(c, e)| (e.to_vec(), b(*c))))
}

fn slot_elem(ring: &ModelRing<BigInt>, parts: &[(usize, &[(usize, BigInt)])]) -> Coords<BigInt> {
    ring.place(parts).unwrap()
}

fn s() -> Coords<BigInt> {
    vec![(1, b(1))]
}

#[test]
fn phi_of_one_variable_is_one() {
    let k = kp2();
    let phi = multiplier_phi(1, &k, Orientation::Ji).unwrap();
    assert_eq!(phi, Laurent::one(tensor_power(k.ring(), 1).unwrap(), 1, 0));
}

#[test]
fn phi_rank_map_for_two_variables() {
    let k = kp2();
    let phi = multiplier_phi(2, &k, Orientation::Ji).unwrap();
    // (1 - 2x + x²)(1 - 2/x + 1/x²) with x = z2/z1
    let a = zpoly(2, &[(1, &[0, 0]), (-2, &[-1, 1]), (1, &[-2, 2])]);
    let bb = zpoly(2, &[(1, &[0, 0]), (-2, &[1, -1]), (1, &[2, -2])]);
    assert_eq!(rank_map(&phi), &a * &bb);
    let other = multiplier_phi(2, &k, Orientation::Ij).unwrap();
    assert_eq!(rank_map(&other), &a * &bb);
    assert_ne!(phi, other);
}

#[test]
fn phi_two_variables_by_hand() {
    // Expand both factors directly from the wedge classes.
    let k = kp2();
    let ring = tensor_power(k.ring(), 2).unwrap();
    let w = k.wedge_w();
    let swap = |c: &Coords<BigInt>| ring.permute_slots(c, &[1, 0]);
    let f12 = Laurent::from_terms(
        ring.clone(),
        2,
        0,
        [(vec![0, 0], w[0].clone()), (vec![-1, 1], sparse::neg(&w[1])), (vec![-2, 2], w[2].clone())],
    );
    let f21 = Laurent::from_terms(
        ring.clone(),
        2,
        0,
        [(vec![0, 0], swap(&w[0])), (vec![1, -1], sparse::neg(&swap(&w[1]))), (vec![2, -2], swap(&w[2]))],
    );
    assert_eq!(multiplier_phi(2, &k, Orientation::Ji).unwrap(), &f12 * &f21);
}

#[test]
fn phi_is_symmetric() {
    let k = kp2();
    for n in 1..=3 {
        for o in [Orientation::Ji, Orientation::Ij] {
            assert!(multiplier_phi(n, &k, o).unwrap().is_symmetric().unwrap());
        }
    }
}

fn ring2() -> ModelRing<BigInt> {
    tensor_power(kp2().ring(), 2).unwrap()
}

fn h2() -> SurfacePoly<BigInt> {
    let r = ring2();
    Laurent::from_terms(r.clone(), 2, 0, [(vec![1, 0], r.basis_elem(3)), (vec![0, -1], r.from_scalar(b(2)))])
}

#[test]
fn pole_check_examples() {
    let k = kp2();
    let r = ring2();
    let zero = RatElem::from_laurent(Laurent::zero(r.clone(), 2, 0));
    assert_eq!(pole_check(&zero, &k, Orientation::Ji).unwrap(), PoleResult::Laurent(Laurent::zero(r.clone(), 2, 0)));
    let phi = multiplier_phi(2, &k, Orientation::Ji).unwrap();
    let h = h2();
    let plain = RatElem::from_laurent(h.clone());
    assert_eq!(pole_check(&plain, &k, Orientation::Ji).unwrap(), PoleResult::Laurent(&phi * &h));

    let lvec: Coords<BigInt> = vec![(0, b(1)), (1, b(1))];
    let c = slot_elem(&r, &[(0, &lvec)]);
    let f = BinomialFactor::new(UnitCoeff::new(&r, c, vec![]).unwrap(), 1, 0).unwrap();
    let good = RatElem::new(h.mul_binomial(&f), [f.clone()]).unwrap();
    assert_eq!(pole_check(&good, &k, Orientation::Ji).unwrap(), PoleResult::Laurent(&phi * &h));
    let f2 = BinomialFactor::new(UnitCoeff::new(&r, r.neg(&f.unit.coeff), vec![]).unwrap(), 1, 0).unwrap();
    let bad = RatElem::new(h.mul_binomial(&f), [f2.clone()]).unwrap();
    assert_eq!(pole_check(&bad, &k, Orientation::Ji).unwrap(), PoleResult::Violation(f2));
}

#[test]
fn pole_check_rejects_wrong_ring() {
    let k = kp2();
    let r3 = tensor_power(k.ring(), 3).unwrap();
    let x = RatElem::from_laurent(Laurent::one(r3, 2, 0));
    assert_eq!(pole_check(&x, &k, Orientation::Ji), Err(ConditionError::RingMismatch));
}

#[test]
fn restriction_examples() {
    let k = kp2();
    let r3 = tensor_power(k.ring(), 3).unwrap();
    let one = Laurent::one(r3.clone(), 3, 0);
    let merged = restrict_small_diagonal(&one, (0, 1, 2)).unwrap();
    assert_eq!(merged.terms().map(|(_, c)| c.clone()).collect::<Vec<_>>(), vec![vec![(0, b(1))]]);
    assert_eq!(merged.ring().slot_count(), Some(1));

    let ss1 = Laurent::constant(r3.clone(), 3, 0, slot_elem(&r3, &[(0, &s()), (1, &s())]));
    let m = restrict_small_diagonal(&ss1, (0, 1, 2)).unwrap();
    assert_eq!(m.terms().map(|(_, c)| c.clone()).collect::<Vec<_>>(), vec![vec![(2, b(1))]]);

    let sss = Laurent::constant(r3.clone(), 3, 0, slot_elem(&r3, &[(0, &s()), (1, &s()), (2, &s())]));
    assert!(restrict_small_diagonal(&sss, (2, 0, 1)).unwrap().is_zero());
    assert_eq!(restrict_small_diagonal(&sss, (0, 0, 1)), Err(ConditionError::BadTriple(3)));
}

#[test]
fn restriction_keeps_other_slots_in_order() {
    let k = kp2();
    let r4 = tensor_power(k.ring(), 4).unwrap();
    let s2: Coords<BigInt> = vec![(2, b(1))];
    // s in slot 0, s in slot 2, s² in slot 3; merge (1, 2, 3) into slot 1
    let x = Laurent::monomial(r4.clone(), 4, 0, vec![1, 0, 0, -1], slot_elem(&r4, &[(0, &s()), (2, &s()), (3, &s2)]));
    let m = restrict_small_diagonal(&x, (3, 1, 2)).unwrap();
    assert!(m.is_zero());
    let y = Laurent::monomial(r4.clone(), 4, 0, vec![1, 0, 0, -1], slot_elem(&r4, &[(0, &s2), (2, &s())]));
    let m = restrict_small_diagonal(&y, (3, 1, 2)).unwrap();
    // s²⊗s in the two remaining slots: index 2*3 + 1
    assert_eq!(m.terms().collect::<Vec<_>>(), vec![(&vec![1, 0, 0, -1], &vec![(7, b(1))])]);
    assert_eq!(m.n_vars(), 4);
}

/// The restricted ring for three variables, and the wheel ideal in it.
fn restricted3() -> (ModelRing<BigInt>, WheelIdeal<ModelRing<BigInt>>) {
    let k = kp2();
    let r = tensor_power(k.ring(), 1).unwrap();
    let ideal = WheelIdeal::surface(&r, 3, 0, &k).unwrap();
    (r, ideal)
}

#[test]
fn surface_wheel_examples() {
    let k = kp2();
    let (r, ideal) = restricted3();
    let t = (0, 1, 2);
    let [g1, g2] = ideal.generators(t);
    assert!(surface_wheel_membership(&g1, t, &k).unwrap());
    assert!(surface_wheel_membership(&g2, t, &k).unwrap());
    let h = Laurent::from_terms(r.clone(), 3, 0, [(vec![2, -1, 0], r.basis_elem(1)), (vec![0, 3, 1], r.one())]);
    assert!(surface_wheel_membership(&(&g2 * &h), t, &k).unwrap());
    assert!(!surface_wheel_membership(&Laurent::one(r.clone(), 3, 0), t, &k).unwrap());
    assert!(!surface_wheel_membership(&g1, (1, 0, 2), &k).unwrap());
}

#[test]
fn oracle_examples() {
    let (r, ideal) = restricted3();
    let t = (0, 1, 2);
    let gens = ideal.generators(t);
    let bx = OracleBox::cube(3, -2, 2);
    assert!(membership_oracle(&gens[0], &gens, &bx).unwrap().is_certified());
    let v = Laurent::monomial(r.clone(), 3, 0, vec![0, 1, -1], r.one());
    let x = &v * &gens[1];
    assert_eq!(membership_oracle(&x, &gens, &bx).unwrap(), OracleOutcome::Certified { integral: true });
    assert!(surface_wheel_membership(&x, t, &kp2()).unwrap());
    let one = Laurent::one(r.clone(), 3, 0);
    assert_eq!(membership_oracle(&one, &gens, &bx).unwrap(), OracleOutcome::NotInBox);
    let huge = OracleBox::cube(3, -30, 30);
    assert!(matches!(membership_oracle(&one, &gens, &huge), Err(ConditionError::BoxTooLarge { .. })));
}

#[test]
fn torus_wheel_members_vanish_at_both_points() {
    let ideal = WheelIdeal::<Integers<BigInt>>::torus(3);
    let t = (0, 1, 2);
    let [g1, g2] = ideal.generators(t);
    for g in [&g1, &g2] {
        assert!(wheel_membership(g, t, &ideal).unwrap());
    }
    let x = &g2 * &Laurent::param(Integers::new(), 3, 2, 0);
    for o in [QOrdering::Q1Q2, QOrdering::Q2Q1] {
        assert!(comm_wheel_membership(&x, t, o).unwrap());
        assert!(comm_wheel_membership(&g1.scale(&b(3)), t, o).unwrap());
    }
}

fn arb_restricted() -> impl Strategy<Value = SurfacePoly<BigInt>> {
    let r = tensor_power(kp2().ring(), 1).unwrap();
    prop::collection::vec((prop::sample::select(vec![-2i64, -1, 1, 2]), 0usize..3, prop::collection::vec(-2i32..=2, 3)), 0..5)
        .prop_map(move |ts| Laurent::from_terms(r.clone(), 3, 0, ts.into_iter().map(|(c, i, e)| (e, vec![(i, b(c))]))))
}

fn arb_torus3() -> impl Strategy<Value = Laurent<Integers<BigInt>>> {
    prop::collection::vec((-2i64..=2, prop::collection::vec(-1i32..=1, 5)), 0..4)
        .prop_map(|ts| Laurent::from_terms(Integers::new(), 3, 2, ts.into_iter().map(|(c, e)| (e, b(c)))))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn surface_membership_is_an_ideal(a in arb_restricted(), c in arb_restricted(), h in arb_restricted()) {
        let k = kp2();
        let (_, ideal) = restricted3();
        let t = (0, 1, 2);
        let [g1, g2] = ideal.generators(t);
        let x = &(&a * &g1) + &(&c * &g2);
        prop_assert!(surface_wheel_membership(&x, t, &k).unwrap());
        prop_assert!(surface_wheel_membership(&(&x * &h), t, &k).unwrap());
    }

    #[test]
    fn torus_members_satisfy_both_substitutions(a in arb_torus3(), c in arb_torus3(), t in 0usize..6) {
        let triple = crate::equivariant::ordered_triples(3)[t];
        let ideal = WheelIdeal::<Integers<BigInt>>::torus(3);
        let [g1, g2] = ideal.generators(triple);
        let x = &(&a * &g1) + &(&c * &g2);
        prop_assert!(wheel_membership(&x, triple, &ideal).unwrap());
        for o in [QOrdering::Q1Q2, QOrdering::Q2Q1] {
            prop_assert!(comm_wheel_membership(&x, triple, o).unwrap());
        }
    }

    #[test]
    fn pole_roundtrip(h in arb_h2(), e in -1i32..=1) {
        let k = kp2();
        let r = ring2();
        let unit = r.place(&[(1, &[(0, b(1)), (2, b(1))][..])]).unwrap();
        let f = BinomialFactor::new(UnitCoeff::new(&r, unit, vec![]).unwrap(), if e > 0 { 0 } else { 1 }, if e > 0 { 1 } else { 0 }).unwrap();
        let with = RatElem::new(h.mul_binomial(&f), [f]).unwrap();
        let without = RatElem::from_laurent(h);
        prop_assert_eq!(pole_check(&with, &k, Orientation::Ji).unwrap(), pole_check(&without, &k, Orientation::Ji).unwrap());
    }
}

fn arb_h2() -> impl Strategy<Value = SurfacePoly<BigInt>> {
    let r = ring2();
    prop::collection::vec((prop::sample::select(vec![-2i64, -1, 1, 2]), 0usize..9, prop::collection::vec(-1i32..=1, 2)), 0..4)
        .prop_map(move |ts| Laurent::from_terms(r.clone(), 2, 0, ts.into_iter().map(|(c, i, e)| (e, vec![(i, b(c))]))))
}

#[test]
fn small_cross_validation_agrees() {
    let cfg = CrossConfig { members: 20, randoms: 20, seed: 7 };
    let s = surface_cross_validation(&kp2(), &cfg).unwrap();
    assert_eq!(s.failed(), 0, "{:?}", s.lines.iter().find(|l| !l.agrees()));
    let c = comm_cross_validation(&cfg).unwrap();
    assert_eq!(c.failed(), 0);
    assert!(s.lines.iter().filter(|l| l.kind == InstanceKind::Member).all(|l| l.member));
}
