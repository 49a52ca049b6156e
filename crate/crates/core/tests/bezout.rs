//! Global intersection accounting over seeded random pairs of plane curves,
//! with every intersection point re-derived by an independent local route.

use leviflat::curves::intersect::intersection_points;
use leviflat::curves::sample::random_form;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn bezout_totals_and_local_recount() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for _ in 0..30 {
        let df = rng.gen_range(1..=4);
        let dg = rng.gen_range(1..=4);
        let f = random_form(&mut rng, df, 3);
        let g = random_form(&mut rng, dg, 3);
        let set = intersection_points(&f, &g, &mut rng).unwrap();
        assert_eq!(set.total_multiplicity(), (df * dg) as u64);
        for k in 0..set.records.len() {
            // resultant order under fresh shears against the Puiseux branch sum
            let lm = set.verify(k, &mut rng, None).unwrap();
            assert_eq!(lm.value, set.records[k].multiplicity);
            if lm.exact_branches {
                assert_eq!(lm.branch_orders.iter().sum::<u32>(), lm.value);
            }
        }
    }
}

#[test]
fn degenerate_pairs_with_tangencies_still_sum() {
    // pencils through a common tangency: members of Pencil(z0 z2 - z1^2, z1^2)
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let vars = leviflat::curves::sample::plane_roster();
    let parse = |s: &str| {
        leviflat::HomogeneousForm::from_poly(leviflat::algebra::text::parse_expr(s, &vars).unwrap()).unwrap()
    };
    let cases = [
        ("z0*z2 - z1^2", "z0*z2 - 2*z1^2", 4u64),
        ("z0*z2 - z1^2", "z0^2", 4),
        ("z2*z1^2 - z0^3 - z0^2*z2", "z1", 3),
        ("(z1 - z0)^2*z2 - z0^3", "z1^3 - z0*z2^2 + (1+i)*z0^3", 9),
    ];
    for (a, b, total) in cases {
        let set = intersection_points(&parse(a), &parse(b), &mut rng).unwrap();
        assert_eq!(set.total_multiplicity(), total, "{a} / {b}");
        for k in 0..set.records.len() {
            set.verify(k, &mut rng, None).unwrap();
        }
    }
}
