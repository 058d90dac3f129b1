use brauer_fusion::exactnum::{int, rat, Polynomial, Rational, RationalFunction};
use brauer_fusion::shapes::{dim_sym_irrep, standard_tableaux, Partition, SkewShape, StandardTableau};
use brauer_fusion::symalg::{
    e_tableau, e_tableau_via, fusion_e, fusion_function, idempotency_scalar, ChainRule, ConstraintMode,
    GroupAlgebraElement, Permutation,
};
use brauer_fusion::tensorop::{act, perm_op, q_op, site_power, BilinearForm, FormKind};
use brauer_fusion::Operator;
use num_traits::{One, Zero};
use proptest::prelude::*;

fn small_rational() -> impl Strategy<Value = Rational> {
    (-12i64..=12, 1i64..=6).prop_map(|(n, d)| rat(n, d))
}

fn polynomial() -> impl Strategy<Value = Polynomial> {
    prop::collection::vec(small_rational(), 0..4).prop_map(Polynomial::new)
}

fn rational_function() -> impl Strategy<Value = RationalFunction> {
    (polynomial(), polynomial())
        .prop_filter("nonzero denominator", |(_, d)| !d.is_zero())
        .prop_map(|(n, d)| RationalFunction::new(n, d).unwrap())
}

fn partition(max_parts: usize, max_part: usize) -> impl Strategy<Value = Partition> {
    prop::collection::vec(1..=max_part, 0..=max_parts).prop_map(|mut v| {
        v.sort_unstable_by(|a, b| b.cmp(a));
        Partition::new(v).unwrap()
    })
}

/// A standard tableau of a straight shape with at most `max_boxes` boxes.
fn tableau(max_boxes: usize) -> impl Strategy<Value = StandardTableau> {
    (1..=max_boxes)
        .prop_flat_map(|l| prop::sample::select(Partition::all_of_size(l)))
        .prop_flat_map(|p| prop::sample::select(standard_tableaux(&SkewShape::straight(p))))
}

fn permutation(n: usize) -> impl Strategy<Value = Permutation> {
    Just((1..=n).collect::<Vec<_>>()).prop_shuffle().prop_map(|v| Permutation::from_images(&v).unwrap())
}

fn element(n: usize) -> impl Strategy<Value = GroupAlgebraElement<Rational>> {
    prop::collection::vec((permutation(n), small_rational()), 0..4).prop_map(move |terms| {
        terms.into_iter().fold(GroupAlgebraElement::zero(n), |acc, (p, c)| &acc + &GroupAlgebraElement::from_perm(p).scale(&c))
    })
}

fn form(kind: FormKind, n: usize) -> BilinearForm {
    BilinearForm::standard(kind, n).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn conjugation_is_an_involution(p in partition(5, 5)) {
        prop_assert_eq!(p.conjugate().conjugate(), p.clone());
        prop_assert_eq!(p.conjugate().size(), p.size());
    }

    #[test]
    fn tableau_count_is_the_hook_dimension(p in partition(4, 4)) {
        let count = standard_tableaux(&SkewShape::straight(p.clone())).len() as u64;
        prop_assert_eq!(count, dim_sym_irrep(&p));
    }

    #[test]
    fn rational_functions_form_a_field(a in rational_function(), b in rational_function(), c in rational_function()) {
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a - &a, RationalFunction::zero());
        if !a.is_zero() {
            prop_assert_eq!(&a * &a.inverse().unwrap(), RationalFunction::one());
        }
    }

    #[test]
    fn evaluation_at_zero_is_multiplicative(a in rational_function(), b in rational_function()) {
        if let (Ok(x), Ok(y)) = (a.eval_at_zero(), b.eval_at_zero()) {
            prop_assert_eq!((&a * &b).eval_at_zero().unwrap(), &x * &y);
            prop_assert_eq!((&a + &b).eval_at_zero().unwrap(), &x + &y);
        }
    }

    #[test]
    fn young_elements_are_scaled_idempotents(t in tableau(4)) {
        let e = e_tableau(&t).unwrap();
        prop_assert_eq!(&e * &e, e.scale(&idempotency_scalar(t.shape().lambda())));
    }

    #[test]
    fn young_element_is_route_independent(t in tableau(5)) {
        let e = e_tableau(&t).unwrap();
        prop_assert_eq!(&e, &e_tableau_via(&t, ChainRule::Largest).unwrap());
        prop_assert_eq!(&e, &fusion_e(&t, ConstraintMode::Row).unwrap());
        prop_assert_eq!(&e, &fusion_e(&t, ConstraintMode::Column).unwrap());
    }

    #[test]
    fn action_is_a_homomorphism(a in element(3), b in element(3), n in 1usize..=3) {
        let lhs: Operator = act(&(&a * &b), n);
        prop_assert_eq!(lhs, &act(&a, n) * &act(&b, n));
    }

    #[test]
    fn permutation_operators_compose(s in permutation(3), t in permutation(3)) {
        let lhs: Operator = perm_op(&s.compose(&t).unwrap(), 2);
        prop_assert_eq!(lhs, &perm_op::<Rational>(&s, 2) * &perm_op(&t, 2));
    }

    #[test]
    fn q_squares_to_the_trace(n in 1usize..=4, symmetric in any::<bool>(), slots in 2usize..=3) {
        let (kind, n) = if symmetric { (FormKind::Symmetric, n) } else { (FormKind::Alternating, 2 * n.min(2)) };
        let g = form(kind, n);
        let q = q_op(1, 2, &g, slots).unwrap();
        prop_assert_eq!(&q * &q, q.scale(&int(n as i64)));
        prop_assert_eq!(q_op(2, 1, &g, slots).unwrap(), q);
    }

    #[test]
    fn q_is_basis_independent(entries in prop::collection::vec(-3i64..=3, 4), symmetric in any::<bool>()) {
        let a: Vec<Vec<Rational>> = entries.chunks(2).map(|r| r.iter().map(|&x| int(x)).collect()).collect();
        let det = &a[0][0] * &a[1][1] - &a[0][1] * &a[1][0];
        prop_assume!(!det.is_zero());
        let kind = if symmetric { FormKind::Symmetric } else { FormKind::Alternating };
        let g = form(kind, 2);
        let h = g.change_basis(&a).unwrap();
        let t = site_power(&a, 2);
        prop_assert_eq!(&q_op(1, 2, &g, 2).unwrap() * &t, &t * &q_op(1, 2, &h, 2).unwrap());
    }

    #[test]
    fn fusion_functions_satisfy_yang_baxter(x in small_rational(), y in small_rational(), z in small_rational()) {
        prop_assume!(x != y && x != z && y != z);
        let f = |i, j, a: &Rational, b: &Rational| fusion_function(3, i, j, a, b).unwrap();
        let lhs = &(&f(1, 2, &x, &y) * &f(1, 3, &x, &z)) * &f(2, 3, &y, &z);
        let rhs = &(&f(2, 3, &y, &z) * &f(1, 3, &x, &z)) * &f(1, 2, &x, &y);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn disjoint_fusion_functions_commute(x in small_rational(), y in small_rational(), z in small_rational(), w in small_rational()) {
        prop_assume!(x != y && z != w);
        let a = fusion_function(4, 1, 2, &x, &y).unwrap();
        let b = fusion_function(4, 3, 4, &z, &w).unwrap();
        prop_assert_eq!(&a * &b, &b * &a);
    }
}

#[test]
fn fusion_function_unitarity() {
    let (x, y) = (rat(3, 2), rat(-1, 3));
    let f = fusion_function(2, 1, 2, &x, &y).unwrap();
    let g = fusion_function(2, 1, 2, &y, &x).unwrap();
    let d = &x - &y;
    let expected = GroupAlgebraElement::identity(2).scale(&(Rational::one() - Rational::one() / (&d * &d)));
    assert_eq!(&f * &g, expected);
}
