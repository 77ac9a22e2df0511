use std::sync::Arc;

use num_bigint::BigInt;
use proptest::prelude::*;

use super::*;
use crate::coeffrings::{builtin_kp2, tensor_power, RingModel};

type Z = Integers<BigInt>;

fn z() -> Z {
    Integers::new()
}

/// Torus polynomial from `(coeff, z-exps, q-exps)`.
fn tp(n: usize, terms: &[(i64, &[i32], [i32; 2])]) -> Laurent<Z> {
    Laurent::from_terms(
        z(),
        n,
        2,
        terms.iter().map(|(c, e, q)| {
            let mut v = e.to_vec();
            v.extend_from_slice(q);
            (v, BigInt::from(*c))
        }),
    )
}

fn plain(n: usize, terms: &[(i64, &[i32])]) -> Laurent<Z> {
    Laurent::from_terms(z(), n, 0, terms.iter().map(|(c, e)| (e.to_vec(), BigInt::from(*c))))
}

fn qunit(q: [i32; 2]) -> UnitCoeff<BigInt> {
    UnitCoeff::param(&z(), q.to_vec())
}

#[test]
fn cancellation_gives_empty_term_map() {
    let x = plain(2, &[(1, &[1, 0])]);
    assert!((&x + &x.neg()).is_zero());
}

#[test]
fn difference_of_squares() {
    let a = plain(2, &[(1, &[0, 0]), (-1, &[-1, 1])]);
    let b = plain(2, &[(1, &[0, 0]), (1, &[-1, 1])]);
    assert_eq!(&a * &b, plain(2, &[(1, &[0, 0]), (-1, &[-2, 2])]));
}

#[test]
fn like_denominators_add() {
    let f = BinomialFactor::plain(&z(), 0, 1, 0);
    let x = RatElem::new(plain(2, &[(1, &[0, 0])]), [f.clone()]).unwrap();
    let s = x.try_add(&x).unwrap();
    assert_eq!(s.numerator(), &plain(2, &[(2, &[0, 0])]));
    assert_eq!(s.denominator().get(&f), Some(&1));
    assert_eq!(s.denominator().len(), 1);
}

#[test]
fn unlike_denominators_cross_multiply_missing_factors_only() {
    let f = BinomialFactor::plain(&z(), 0, 1, 0);
    let g = BinomialFactor::plain(&z(), 0, 0, 1);
    let one = plain(2, &[(1, &[0, 0])]);
    let a = RatElem::new(one.clone(), [f.clone()]).unwrap();
    let b = RatElem::new(one.clone(), [f.clone(), g.clone()]).unwrap();
    let s = a.try_add(&b).unwrap();
    assert_eq!(s.denominator_factors(), vec![g.clone(), f.clone()].into_iter().collect::<std::collections::BTreeSet<_>>().into_iter().collect::<Vec<_>>());
    let expect = &Laurent::binomial(z(), 2, 0, &g) + &one;
    assert_eq!(s.numerator(), &expect);
}

#[test]
fn substitution_kills_generator() {
    // z2 - q2 z1 under z2 -> q2 z1
    let x = tp(2, &[(1, &[0, 1], [0, 0]), (-1, &[1, 0], [0, 1])]);
    assert!(x.substitute(1, &qunit([0, 1]), &[1, 0]).unwrap().is_zero());
}

#[test]
fn substitution_kills_koszul_class() {
    // 1 - q2^-1 z3/z2 under z3 -> q2 z2
    let x = tp(3, &[(1, &[0, 0, 0], [0, 0]), (-1, &[0, -1, 1], [0, -1])]);
    assert!(x.substitute(2, &qunit([0, 1]), &[0, 1, 0]).unwrap().is_zero());
}

#[test]
fn substitution_of_square() {
    let x = tp(2, &[(1, &[0, 2], [0, 0])]);
    let y = x.substitute(1, &qunit([1, 0]), &[1, 0]).unwrap();
    assert_eq!(y, tp(2, &[(1, &[2, 0], [2, 0])]));
}

#[test]
fn substitution_rejects_self_reference() {
    let x = tp(2, &[(1, &[0, 1], [0, 0])]);
    assert!(x.substitute(1, &qunit([0, 0]), &[0, 1]).is_err());
}

#[test]
fn non_unit_coefficient_is_rejected() {
    assert_eq!(UnitCoeff::new(&z(), BigInt::from(2), vec![0, 0]), Err(LaurentError::NotUnit));
    assert!(UnitCoeff::new(&z(), BigInt::from(-1), vec![0, 0]).is_ok());
}

#[test]
fn divide_constructed_product() {
    let f = BinomialFactor::plain(&z(), 0, 1, 0);
    let x = plain(2, &[(1, &[0, 0]), (-1, &[-2, 2])]);
    assert_eq!(x.divide_exact(&f).unwrap(), plain(2, &[(1, &[0, 0]), (1, &[-1, 1])]));
}

#[test]
fn one_is_not_divisible() {
    let f = BinomialFactor::plain(&z(), 0, 1, 0);
    assert_eq!(plain(2, &[(1, &[0, 0])]).divide_exact(&f), Err(LaurentError::NotDivisible));
}

#[test]
fn divide_with_nilpotent_coefficients() {
    let k = builtin_kp2();
    let ring = tensor_power(k.ring(), 2).unwrap();
    // unit 1 + s⊗1, which is 1 plus a nilpotent
    let c = ring.place(&[(0, &[(0, BigInt::from(1)), (1, BigInt::from(1))][..])]).unwrap();
    let f = BinomialFactor::new(UnitCoeff::new(&ring, c, vec![]).unwrap(), 1, 0).unwrap();
    let h = Laurent::from_terms(
        ring.clone(),
        2,
        0,
        [(vec![0, 0], ring.basis_elem(4)), (vec![2, -1], ring.basis_elem(2)), (vec![0, 3], ring.one())],
    );
    let x = h.mul_binomial(&f);
    assert_eq!(x.divide_exact(&f).unwrap(), h);
    let wrong = BinomialFactor::new(UnitCoeff::one(&ring, 0), 1, 0).unwrap();
    assert_eq!(x.divide_exact(&wrong), Err(LaurentError::NotDivisible));
}

fn kp2_square() -> Arc<RingModel<BigInt>> {
    tensor_power(builtin_kp2().ring(), 2).unwrap()
}

#[test]
fn symmetrize_invariant_constant() {
    let r = kp2_square();
    let x = Laurent::one(r.clone(), 2, 0);
    let s = x.symmetrize().unwrap();
    assert_eq!(s, Laurent::constant(r.clone(), 2, 0, r.from_scalar(BigInt::from(2))));
}

#[test]
fn symmetrize_variable() {
    let x = plain(2, &[(1, &[1, 0])]);
    assert_eq!(x.symmetrize().unwrap(), plain(2, &[(1, &[1, 0]), (1, &[0, 1])]));
    assert!(x.symmetrize().unwrap().is_symmetric().unwrap());
    assert!(!x.is_symmetric().unwrap());
}

#[test]
fn symmetrize_moves_tensor_slots() {
    let r = kp2_square();
    // s⊗1 is index 3, 1⊗s is index 1
    let x = Laurent::monomial(r.clone(), 2, 0, vec![1, 0], r.basis_elem(3));
    let expect = Laurent::from_terms(r.clone(), 2, 0, [(vec![1, 0], r.basis_elem(3)), (vec![0, 1], r.basis_elem(1))]);
    assert_eq!(x.symmetrize().unwrap(), expect);
}

#[test]
fn symmetrize_needs_matching_tensor_power() {
    let k = builtin_kp2();
    let x = Laurent::one(k.ring().clone(), 2, 0);
    assert_eq!(x.symmetrize(), Err(LaurentError::NotTensorPower));
    let cube = tensor_power(k.ring(), 3).unwrap();
    let y = Laurent::one(cube, 2, 0);
    assert_eq!(y.symmetrize(), Err(LaurentError::NotTensorPower));
}

#[test]
fn rational_symmetry_is_denominator_aware() {
    // 1/(1 - z2/z1) + 1/(1 - z1/z2) = 1, stored over both factors
    let f = BinomialFactor::plain(&z(), 0, 1, 0);
    let one = plain(2, &[(1, &[0, 0])]);
    let x = RatElem::new(one.clone(), [f.clone()]).unwrap();
    let s = x.symmetrize().unwrap();
    assert!(s.is_symmetric().unwrap());
    assert!(s.value_eq(&RatElem::from_laurent(one)));
    assert_eq!(s.reduce().denominator().len(), 0);
}

#[test]
fn element_file_roundtrip() {
    let text = "# the proof class\n1 ; 0 0 0 ; 0 0\n-1 ; 0 -1 1 ; 0 -1\ndenom 1 1 0 ; 2 ; 1\n";
    let raw = RawElement::parse(text).unwrap();
    let x = raw.build(z(), 3, 2, scalar_coeff::<BigInt>).unwrap();
    assert_eq!(x.numerator().len(), 2);
    assert_eq!(x.denominator_factors().len(), 1);
    let again = RawElement::parse(&write_element(&x)).unwrap().build(z(), 3, 2, scalar_coeff::<BigInt>).unwrap();
    assert_eq!(again, x);
}

#[test]
fn surface_element_file_roundtrip() {
    let r = kp2_square();
    let x = Laurent::from_terms(r.clone(), 2, 0, [(vec![1, -1], r.basis_elem(3)), (vec![0, 0], r.from_scalar(BigInt::from(-2)))]);
    let x = RatElem::from_laurent(x);
    let text = write_element(&x);
    let raw = RawElement::parse(&text).unwrap();
    assert_eq!(raw.coeff_len(), Some(9));
    let back = raw
        .build(r.clone(), 2, 0, |c| Some(crate::coeffrings::sparse::from_dense(c)))
        .unwrap();
    assert_eq!(back, x);
}

#[test]
fn element_file_errors_carry_line_numbers() {
    let err = RawElement::parse("1 ; 0 0\n1 ; x\n").unwrap_err();
    assert!(matches!(err, LaurentError::Parse { line: 2, .. }));
}

fn arb_plain(n: usize) -> impl Strategy<Value = Laurent<Z>> {
    prop::collection::vec((-3i64..=3, prop::collection::vec(-2i32..=2, n)), 0..6)
        .prop_map(move |ts| Laurent::from_terms(z(), n, 0, ts.into_iter().map(|(c, e)| (e, BigInt::from(c)))))
}

fn arb_torus(n: usize) -> impl Strategy<Value = Laurent<Z>> {
    prop::collection::vec((-3i64..=3, prop::collection::vec(-2i32..=2, n + 2)), 0..6)
        .prop_map(move |ts| Laurent::from_terms(z(), n, 2, ts.into_iter().map(|(c, e)| (e, BigInt::from(c)))))
}

fn arb_factor(n: usize) -> impl Strategy<Value = BinomialFactor<BigInt>> {
    (0..n, 1..n, prop::bool::ANY, prop::collection::vec(-2i32..=2, 2)).prop_map(move |(a, off, neg, q)| {
        let c = if neg { BigInt::from(-1) } else { BigInt::from(1) };
        BinomialFactor::new(UnitCoeff::new(&z(), c, q).unwrap(), a, (a + off) % n).unwrap()
    })
}

fn arb_tensor3() -> impl Strategy<Value = Laurent<ModelRing<BigInt>>> {
    let r = tensor_power(builtin_kp2().ring(), 3).unwrap();
    prop::collection::vec((prop::sample::select(vec![-3i64, -2, -1, 1, 2, 3]), 0usize..27, prop::collection::vec(-1i32..=1, 3)), 0..5).prop_map(move |ts| {
        Laurent::from_terms(r.clone(), 3, 0, ts.into_iter().map(|(c, i, e)| (e, vec![(i, BigInt::from(c))])))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn divide_roundtrip(h in arb_torus(3), f in arb_factor(3)) {
        prop_assert_eq!(h.mul_binomial(&f).divide_exact(&f).unwrap(), h);
    }

    #[test]
    fn substitution_is_a_homomorphism(x in arb_torus(3), y in arb_torus(3), q in prop::collection::vec(-2i32..=2, 2), m in prop::collection::vec(-2i32..=2, 2)) {
        let u = UnitCoeff::param(&z(), q);
        let rep = vec![m[0], m[1], 0];
        let s = |p: &Laurent<Z>| p.substitute(2, &u, &rep).unwrap();
        prop_assert_eq!(s(&(&x * &y)), &s(&x) * &s(&y));
        prop_assert_eq!(s(&(&x + &y)), &s(&x) + &s(&y));
        prop_assert!(s(&x).terms().all(|(e, _)| e[2] == 0));
    }

    #[test]
    fn symmetrize_is_symmetric_and_scales(x in arb_tensor3()) {
        let s = x.symmetrize().unwrap();
        prop_assert!(s.is_symmetric().unwrap());
        prop_assert_eq!(s.symmetrize().unwrap(), s.scale_int(&BigInt::from(6)));
    }

    #[test]
    fn transpositions_satisfy_coxeter_relations(x in arb_tensor3(), y in arb_plain(4)) {
        let t = |p: &Laurent<ModelRing<BigInt>>, i: usize| p.permute(&transposition(3, i, i + 1)).unwrap();
        prop_assert_eq!(t(&t(&x, 0), 0), x.clone());
        prop_assert_eq!(t(&t(&t(&x, 0), 1), 0), t(&t(&t(&x, 1), 0), 1));
        let s = |p: &Laurent<Z>, i: usize| p.permute(&transposition(4, i, i + 1)).unwrap();
        prop_assert_eq!(s(&s(&s(&y, 1), 2), 1), s(&s(&s(&y, 2), 1), 2));
        prop_assert_eq!(s(&s(&y, 0), 2), s(&s(&y, 2), 0));
    }

    #[test]
    fn permutation_action_composes(x in arb_tensor3(), a in Just(vec![1usize, 2, 0]), b in Just(vec![2usize, 0, 1])) {
        // σ·(τ·x) = (στ)·x
        let composed: Vec<usize> = (0..3).map(|i| a[b[i]]).collect();
        prop_assert_eq!(x.permute(&b).unwrap().permute(&a).unwrap(), x.permute(&composed).unwrap());
    }

    #[test]
    fn rational_add_matches_value(x in arb_torus(2), y in arb_torus(2), f in arb_factor(2), g in arb_factor(2)) {
        let a = RatElem::new(x.clone(), [f.clone()]).unwrap();
        let b = RatElem::new(y.clone(), [g.clone()]).unwrap();
        let s = a.try_add(&b).unwrap();
        let full = RatElem::new(&x.mul_binomial(&g) + &y.mul_binomial(&f), [f, g]).unwrap();
        prop_assert!(s.value_eq(&full));
    }
}
