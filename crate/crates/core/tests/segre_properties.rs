//! Complexification and Segre varieties on constructed real inputs.
//!
//! Real inputs are produced as `g * swap(g)`, which is real by construction
//! (the swap is a multiplicative involution), so acceptance by the reality
//! check is known in advance.

use leviflat::algebra::conjugate::conjugate_swap;
use leviflat::algebra::gaussian::gi;
use leviflat::algebra::poly::roster;
use leviflat::algebra::text::parse_expr;
use leviflat::segre::{
    complexify, complexify_real, degenerate_locus_system, is_segre_degenerate, satisfies_degenerate_system,
    segre_symmetry_check, segre_variety,
};
use leviflat::{Error, ExactComplex, Poly, Roster};
use num_traits::Zero;
use proptest::prelude::*;

const PAIRS: [(&str, &str); 2] = [("z1", "w1"), ("z2", "w2")];

fn zw() -> Roster {
    roster(&["z1", "z2", "w1", "w2"])
}

fn poly_from(terms: &[(i64, i64, [u32; 4])]) -> Poly {
    terms.iter().fold(Poly::zero(zw()), |acc, (re, im, e)| {
        &acc + &Poly::monomial(zw(), e.to_vec(), gi(*re, *im))
    })
}

fn terms() -> impl Strategy<Value = Vec<(i64, i64, [u32; 4])>> {
    prop::collection::vec((-3i64..=3, -3i64..=3, prop::array::uniform4(0u32..=1)), 1..4)
}

fn point() -> impl Strategy<Value = Vec<ExactComplex>> {
    prop::collection::vec((-3i64..=3, -3i64..=3).prop_map(|(a, b)| gi(a, b)), 2)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn products_with_the_swap_are_real(t in terms()) {
        let g = poly_from(&t);
        prop_assume!(!g.is_zero());
        let phi = &g * &conjugate_swap(&g).unwrap();
        prop_assert_eq!(conjugate_swap(&phi).unwrap(), phi.clone());
        prop_assert!(complexify(&phi, &PAIRS).is_ok());
    }

    #[test]
    fn reality_check_matches_the_fixed_point_test(t in terms()) {
        let phi = poly_from(&t);
        prop_assume!(!phi.is_zero());
        let fixed = conjugate_swap(&phi).unwrap() == phi;
        match complexify(&phi, &PAIRS) {
            Ok(_) => prop_assert!(fixed),
            Err(Error::RealityViolation { .. }) => prop_assert!(!fixed),
            Err(e) => prop_assert!(false, "unexpected error {e}"),
        }
    }

    #[test]
    fn segre_symmetry_and_self_membership(t in terms(), p in point(), q in point()) {
        let g = poly_from(&t);
        prop_assume!(!g.is_zero());
        let h = complexify(&(&g * &conjugate_swap(&g).unwrap()), &PAIRS).unwrap();
        prop_assert!(segre_symmetry_check(&h, &p, &q).unwrap());
        // direct oracle: phi_C(p, conj q) and phi_C(q, conj p) are conjugate
        prop_assert_eq!(h.pairing(&p, &q).unwrap(), h.pairing(&q, &p).unwrap().conj());
        if h.value_at(&q).unwrap().is_zero() {
            let s = segre_variety(&h, &q).unwrap();
            prop_assert!(s.poly.eval(&q).unwrap().is_zero());
        }
    }

    #[test]
    fn degenerate_system_agrees_with_degeneracy(t in terms(), q in point()) {
        let g = poly_from(&t);
        prop_assume!(!g.is_zero());
        let h = complexify(&(&g * &conjugate_swap(&g).unwrap()), &PAIRS).unwrap();
        let sys = degenerate_locus_system(&h);
        prop_assert_eq!(satisfies_degenerate_system(&sys, &q).unwrap(), is_segre_degenerate(&h, &q).unwrap());
        // random points are rarely degenerate, so check the origin explicitly
        let origin = vec![gi(0, 0), gi(0, 0)];
        prop_assert_eq!(satisfies_degenerate_system(&sys, &origin).unwrap(), is_segre_degenerate(&h, &origin).unwrap());
    }
}

#[test]
fn brunella_segre_varieties_contain_the_leaves() {
    let v = roster(&["x", "y", "s", "t"]);
    let phi = parse_expr("t^2 - 4*(y^2 + s)*y^2", &v).unwrap();
    let h = complexify_real(&phi, &[("x", "y"), ("s", "t")], &["z1", "z2"], &["w1", "w2"]).unwrap();
    let z = h.z_roster();
    let z1 = Poly::var_index(z.clone(), 0);
    for c in -2..=2 {
        for (a, b) in [(0, 1), (1, 2), (-3, 1), (2, -1)] {
            // q on the leaf z2 = (z1 + c)^2 with Im q1 = b != 0
            let q1 = gi(a, b);
            let shifted = q1.clone() + gi(c, 0);
            let q = vec![q1, shifted.clone() * shifted];
            assert!(h.value_at(&q).unwrap().is_zero());
            let sigma = segre_variety(&h, &q).unwrap().poly;
            let leaf = {
                let s = &z1 + &Poly::constant(z.clone(), gi(c, 0));
                &s * &s
            };
            let on_leaf = sigma.compose(&[z1.clone(), leaf]).unwrap();
            assert!(on_leaf.is_zero(), "c = {c}, q1 = {a}+{b}i");
        }
    }
}

#[test]
fn lebl_degenerate_locus_is_the_origin() {
    let phi = parse_expr("-i*(z1*w2 - w1*z2)", &zw()).unwrap();
    let h = complexify(&phi, &PAIRS).unwrap();
    let sys = degenerate_locus_system(&h);
    let w = h.w_roster();
    assert_eq!(sys.len(), 2);
    assert!(sys.contains(&Poly::var_index(w.clone(), 0)));
    assert!(sys.contains(&Poly::var_index(w, 1)));
}
