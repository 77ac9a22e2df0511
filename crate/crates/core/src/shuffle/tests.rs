use itertools::Itertools;
use num_bigint::BigInt;
use proptest::prelude::*;

use super::*;
use crate::coeffrings::{builtin_kp2, sparse};

type Z = Integers<BigInt>;
type Tor = TorusFamily<BigInt>;

fn tor() -> Tor {
    TorusFamily::new()
}

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

fn elem(x: Laurent<Z>) -> GradedElem<Z> {
    GradedElem::new(RatElem::from_laurent(x))
}

/// The monomial symmetric polynomial with exponent multiset `lambda`.
fn msym(lambda: &[i32]) -> GradedElem<Z> {
    let n = lambda.len();
    let mut body = Laurent::zero(z(), n, 2);
    for mut e in lambda.iter().copied().permutations(n).unique() {
        e.extend([0, 0]);
        body.add_term(e, BigInt::from(1));
    }
    elem(body)
}

fn qf(q: [i32; 2], num: usize, den: usize) -> BinomialFactor<BigInt> {
    BinomialFactor::new(UnitCoeff::param(&z(), q.to_vec()), num, den).unwrap()
}

/// `ζ(z_a/z_b)` for the plane kernel, written out directly.
fn zeta(n: usize, a: usize, b: usize) -> RatElem<Z> {
    let mut ea = vec![0; n];
    ea[a] = 1;
    ea[b] = -1;
    let one = vec![0; n];
    let lin = |q: [i32; 2]| tp(n, &[(1, &one, [0, 0]), (-1, &ea, q)]);
    RatElem::new(&lin([1, 0]) * &lin([0, 1]), [qf([0, 0], a, b), qf([1, 1], a, b)]).unwrap()
}

#[test]
fn plane_kernel_factor_counts() {
    let k = default_plane_kernel::<BigInt>();
    assert_eq!(k.numerator.len(), 2);
    assert_eq!(k.denominator.len(), 2);
    assert!(!k.is_trivial());
    assert!(KernelSpec::<BigInt>::trivial().is_trivial());
}

#[test]
fn plane_kernel_is_q_symmetric() {
    let k = default_plane_kernel::<BigInt>();
    let swapped = |v: &[UnitCoeff<BigInt>]| -> Vec<Vec<i32>> {
        v.iter().map(|u| vec![u.params[1], u.params[0]]).sorted().collect()
    };
    let plain = |v: &[UnitCoeff<BigInt>]| -> Vec<Vec<i32>> { v.iter().map(|u| u.params.clone()).sorted().collect() };
    assert_eq!(swapped(&k.numerator), plain(&k.numerator));
    assert_eq!(swapped(&k.denominator), plain(&k.denominator));
}

#[test]
fn plane_kernel_is_trivial_at_q_equal_one() {
    let k = default_plane_kernel::<BigInt>();
    let at_one = |v: &[UnitCoeff<BigInt>]| -> Vec<BigInt> { v.iter().map(|u| u.coeff.clone()).sorted().collect() };
    assert_eq!(at_one(&k.numerator), at_one(&k.denominator));
}

#[test]
fn unit_is_two_sided_identity() {
    let k = default_plane_kernel::<BigInt>();
    let u = unit_element(&tor()).unwrap();
    let f = elem(tp(2, &[(1, &[1, 0], [0, 0]), (1, &[0, 1], [0, 0]), (-3, &[0, 0], [1, 2])]));
    assert!(shuffle_product(&tor(), &f, &u, &k).unwrap().body.value_eq(&f.body));
    assert!(shuffle_product(&tor(), &u, &f, &k).unwrap().body.value_eq(&f.body));
}

#[test]
fn product_of_degree_one_units() {
    let k = default_plane_kernel::<BigInt>();
    let one = msym(&[0]);
    let p = shuffle_product(&tor(), &one, &one, &k).unwrap();
    let expected = zeta(2, 0, 1).try_add(&zeta(2, 1, 0)).unwrap();
    assert_eq!(expected.denominator().len(), 4);
    assert!(p.body.value_eq(&expected));
    assert_eq!(p.degree, 2);
    assert!(p.body.is_symmetric().unwrap());
}

#[test]
fn pole_on_the_diagonal_cancels() {
    let diag = [qf([0, 0], 0, 1), qf([0, 0], 1, 0)];
    for x in [zeta(2, 0, 1), zeta(2, 1, 0)] {
        let r = x.reduce();
        assert!(diag.iter().any(|f| r.denominator().contains_key(f)));
    }
    let sum = zeta(2, 0, 1).try_add(&zeta(2, 1, 0)).unwrap().reduce();
    assert!(diag.iter().all(|f| !sum.denominator().contains_key(f)));
    assert!(sum.denominator().contains_key(&qf([1, 1], 0, 1)));
}

#[test]
fn shuffle_is_not_commutative() {
    let k = default_plane_kernel::<BigInt>();
    let (a, b) = (msym(&[1]), msym(&[0]));
    let ab = shuffle_product(&tor(), &a, &b, &k).unwrap();
    let ba = shuffle_product(&tor(), &b, &a, &k).unwrap();
    assert!(!ab.body.value_eq(&ba.body));
    let fa = shuffle_formal(&tor(), &FormalSum::from_elem(&a), &FormalSum::from_elem(&b), &k).unwrap();
    let fb = shuffle_formal(&tor(), &FormalSum::from_elem(&b), &FormalSum::from_elem(&a), &k).unwrap();
    assert_ne!(fa.grouped(), fb.grouped());
}

#[test]
fn cosets_are_minimal_representatives() {
    assert_eq!(shuffle_cosets(2, 1), vec![vec![0, 1, 2], vec![0, 2, 1], vec![1, 2, 0]]);
    assert_eq!(shuffle_cosets(2, 3).len(), 10);
    assert_eq!(shuffle_cosets(0, 3), vec![vec![0, 1, 2]]);
}

#[test]
fn formal_sum_assembles_to_product() {
    let k = default_plane_kernel::<BigInt>();
    let (f, g) = (msym(&[-1, 1]), msym(&[0]));
    let formal = shuffle_formal(&tor(), &FormalSum::from_elem(&f), &FormalSum::from_elem(&g), &k).unwrap();
    assert_eq!(formal.terms().len(), 3);
    let assembled = formal.assemble().unwrap();
    let p = shuffle_product(&tor(), &f, &g, &k).unwrap();
    assert!(assembled.body.value_eq(&p.body));
    // Grouping never changes the value.
    let mut regrouped = p.body.zero_like();
    for (den, num) in formal.grouped() {
        let factors = den.iter().flat_map(|(f, &m)| std::iter::repeat_n(f.clone(), m as usize));
        regrouped = regrouped.try_add(&RatElem::new(num, factors).unwrap()).unwrap();
    }
    assert!(regrouped.value_eq(&p.body));
}

#[test]
fn triple_of_units_is_full_symmetrization() {
    let k = default_plane_kernel::<BigInt>();
    let one = msym(&[0]);
    let left = shuffle_product(&tor(), &shuffle_product(&tor(), &one, &one, &k).unwrap(), &one, &k).unwrap();
    let right = shuffle_product(&tor(), &one, &shuffle_product(&tor(), &one, &one, &k).unwrap(), &k).unwrap();
    let all = zeta(3, 0, 1).try_mul(&zeta(3, 0, 2)).unwrap().try_mul(&zeta(3, 1, 2)).unwrap();
    let sym = all.symmetrize().unwrap();
    assert!(left.body.value_eq(&sym));
    assert!(right.body.value_eq(&sym));
    assert!(associativity_check(&tor(), &one, &one, &one, &k).unwrap());
}

#[test]
fn associativity_check_matches_assembled_comparison() {
    let k = default_plane_kernel::<BigInt>();
    for (f, g, h) in [(msym(&[1]), msym(&[-1]), msym(&[0])), (msym(&[0, 1]), msym(&[1]), msym(&[-1]))] {
        let left = shuffle_product(&tor(), &shuffle_product(&tor(), &f, &g, &k).unwrap(), &h, &k).unwrap();
        let right = shuffle_product(&tor(), &f, &shuffle_product(&tor(), &g, &h, &k).unwrap(), &k).unwrap();
        assert!(left.body.value_eq(&right.body));
        assert!(associativity_check(&tor(), &f, &g, &h, &k).unwrap());
    }
}

/// `Σ_{S_{n+m}} F(z_1..z_n)G(z_{n+1}..z_{n+m}) / (n! m!)`, built directly.
fn plain_symmetrized(f: &Laurent<Z>, g: &Laurent<Z>) -> Laurent<Z> {
    let (n, m) = (f.n_vars(), g.n_vars());
    let mut prod = Laurent::zero(z(), n + m, 2);
    for (ef, cf) in f.terms() {
        for (eg, cg) in g.terms() {
            let mut e = ef[..n].to_vec();
            e.extend_from_slice(&eg[..m]);
            e.extend((0..2).map(|p| ef[n + p] + eg[m + p]));
            prod.add_term(e, cf * cg);
        }
    }
    let k = BigInt::from((1..=n).product::<usize>() * (1..=m).product::<usize>());
    let sym = prod.symmetrize().unwrap();
    sym.map_coeffs(z(), |c| {
        assert_eq!(c % &k, BigInt::from(0));
        c / &k
    })
}

#[test]
fn trivial_kernel_is_symmetrized_multiplication() {
    let k = KernelSpec::trivial();
    let all: Vec<GradedElem<Z>> = [vec![0], vec![1], vec![-1], vec![0, 1], vec![-1, 1], vec![0, 0, 1]]
        .iter()
        .map(|l| msym(l))
        .collect();
    for f in &all {
        for g in &all {
            let p = shuffle_product(&tor(), f, g, &k).unwrap();
            assert!(p.body.is_laurent());
            let oracle = plain_symmetrized(f.body.numerator(), g.body.numerator());
            assert_eq!(p.body.numerator(), &oracle);
            let lib = symmetrized_product(&tor(), f, g).unwrap().unwrap();
            assert_eq!(lib.body.numerator(), &oracle);
        }
    }
}

#[test]
fn generator_element_examples() {
    let one = generator_element(&tor(), tp(1, &[(1, &[0], [0, 0])])).unwrap();
    assert_eq!(one.degree, 1);
    assert_eq!(one.body.numerator(), &tp(1, &[(1, &[0], [0, 0])]));
    let zz = generator_element(&tor(), tp(1, &[(1, &[1], [0, 0])])).unwrap();
    assert_eq!(zz.body.numerator().coeff(&[1, 0, 0]), BigInt::from(1));
    assert_eq!(
        generator_element(&tor(), tp(2, &[(1, &[0, 0], [0, 0])])),
        Err(ShuffleError::RingMismatch(1))
    );

    let kp2 = builtin_kp2();
    let fam = SurfaceFamily::new(kp2.ring().clone());
    let r1 = fam.ring(1).unwrap();
    let s = vec![(1, BigInt::from(1))];
    let f = Laurent::monomial(r1, 1, 0, vec![1], s.clone());
    let x = generator_element(&fam, f).unwrap();
    assert_eq!(x.body.numerator().coeff(&[1]), s);
}

#[test]
fn mismatched_rings_are_rejected() {
    let k = default_plane_kernel::<BigInt>();
    let mut bad = msym(&[0, 1]);
    bad.degree = 3;
    assert_eq!(shuffle_product(&tor(), &bad, &msym(&[0]), &k), Err(ShuffleError::RingMismatch(3)));
}

fn surface_kernel() -> KernelSpec<Coords<BigInt>> {
    let kp2 = builtin_kp2();
    let ring = kp2.ring();
    let sq = kp2.square();
    let l = kp2.hyperplane().unwrap().clone();
    let l_inv = ring.invert(&l).unwrap();
    let a = sq.place(&[(0, &l), (1, &l_inv)]).unwrap();
    let b = sq.place(&[(0, kp2.omega()), (1, ring.unit())]).unwrap();
    KernelSpec {
        numerator: vec![UnitCoeff::new(sq, a, vec![]).unwrap()],
        denominator: vec![UnitCoeff::new(sq, b, vec![]).unwrap()],
    }
}

#[test]
fn surface_products_are_symmetric_and_associative() {
    let kp2 = builtin_kp2();
    let fam = SurfaceFamily::new(kp2.ring().clone());
    let k = surface_kernel();
    let r1 = fam.ring(1).unwrap();
    let gens: Vec<GradedElem<ModelRing<BigInt>>> = [
        vec![(vec![0], vec![(0, 1)])],
        vec![(vec![1], vec![(1, 1)])],
        vec![(vec![0], vec![(0, 2), (2, -1)]), (vec![-1], vec![(1, 1)])],
    ]
    .into_iter()
    .map(|terms| {
        let f = Laurent::from_terms(
            r1.clone(),
            1,
            0,
            terms.into_iter().map(|(e, c)| (e, c.into_iter().map(|(i, v)| (i, BigInt::from(v))).collect())),
        );
        generator_element(&fam, f).unwrap()
    })
    .collect();
    for a in &gens {
        for b in &gens {
            let p = shuffle_product(&fam, a, b, &k).unwrap();
            assert!(p.body.is_symmetric().unwrap());
        }
    }
    assert!(associativity_check(&fam, &gens[0], &gens[1], &gens[2], &k).unwrap());
    assert!(associativity_check(&fam, &gens[2], &gens[2], &gens[1], &KernelSpec::trivial()).unwrap());
    let u = unit_element(&fam).unwrap();
    assert!(shuffle_product(&fam, &gens[2], &u, &k).unwrap().body.value_eq(&gens[2].body));
    assert_eq!(sparse::to_dense(&fam.ring(2).unwrap().one(), 9)[0], BigInt::from(1));
}

fn arb_gen() -> impl Strategy<Value = GradedElem<Z>> {
    prop::collection::vec((-2i64..=2, -1i32..=1, 0i32..=1, 0i32..=1), 1..=3).prop_map(|ts| {
        let mut f = Laurent::zero(z(), 1, 2);
        for (c, e, a, b) in ts {
            f.add_term(vec![e, a, b], BigInt::from(c));
        }
        if f.is_zero() {
            f = tp(1, &[(1, &[0], [0, 0])]);
        }
        elem(f)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn products_are_symmetric_and_graded(a in arb_gen(), b in arb_gen(), c in arb_gen()) {
        let k = default_plane_kernel::<BigInt>();
        let ab = shuffle_product(&tor(), &a, &b, &k).unwrap();
        prop_assert_eq!(ab.degree, 2);
        prop_assert!(ab.body.is_symmetric().unwrap());
        let abc = shuffle_product(&tor(), &ab, &c, &k).unwrap();
        prop_assert_eq!(abc.degree, 3);
        prop_assert!(abc.body.is_symmetric().unwrap());
    }

    #[test]
    fn associativity_on_generators(a in arb_gen(), b in arb_gen(), c in arb_gen()) {
        prop_assert!(associativity_check(&tor(), &a, &b, &c, &default_plane_kernel()).unwrap());
        prop_assert!(associativity_check(&tor(), &a, &b, &c, &KernelSpec::trivial()).unwrap());
    }
}
