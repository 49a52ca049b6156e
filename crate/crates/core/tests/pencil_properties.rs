//! The pencil mechanism on seeded random pencils: profile agreement among
//! members, profile mismatch for curves outside the pencil, the level
//! identity, and membership round trips.

use leviflat::algebra::gaussian::gi;
use leviflat::curves::intersect::intersection_points;
use leviflat::curves::point::PlanePoint;
use leviflat::curves::sample::{random_form, random_smooth_form};
use leviflat::pencil::{
    intersection_profile, pencil_foliation_form, pencil_membership, verify_level_invariance, Membership, Pencil,
};
use leviflat::{ExactComplex, Poly};
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn unit_pair<R: Rng>(rng: &mut R) -> (ExactComplex, ExactComplex) {
    loop {
        let a = gi(rng.gen_range(-4..=4), rng.gen_range(-2..=2));
        let b = gi(rng.gen_range(-4..=4), rng.gen_range(-2..=2));
        if !b.is_zero() {
            return (a, b);
        }
    }
}

fn smooth_pencil<R: Rng>(rng: &mut R, d: u32) -> Pencil {
    loop {
        let f = random_smooth_form(rng, d, 3);
        let g = random_smooth_form(rng, d, 3);
        if let Ok(p) = Pencil::new(&f, &g) {
            if intersection_points(p.f(), p.g(), rng).is_ok() {
                return p;
            }
        }
    }
}

#[test]
fn members_share_the_profile_and_outsiders_do_not() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for round in 0..6 {
        let d = 2 + round % 2;
        let pen = smooth_pencil(&mut rng, d);
        let reference = pen.f().clone();
        let base = intersection_points(pen.f(), pen.g(), &mut rng).unwrap();
        let mut sing: Vec<PlanePoint> = base.records.iter().map(|r| r.point.clone()).collect();

        let (a, b) = unit_pair(&mut rng);
        let first = intersection_profile(&reference, &pen.member(&a, &b), &sing, &mut rng, None).unwrap();
        for _ in 0..2 {
            let (a, b) = unit_pair(&mut rng);
            let other = intersection_profile(&reference, &pen.member(&a, &b), &sing, &mut rng, None).unwrap();
            assert_eq!(first, other);
            assert!(other.max_order() <= d * d);
        }

        // an outsider meets the reference curve off the base locus as well
        let h = random_smooth_form(&mut rng, d, 3);
        assert_eq!(pencil_membership(&h, &pen).unwrap(), Membership::NotInPencil);
        let extra = intersection_points(&reference, &h, &mut rng).unwrap();
        sing.extend(extra.records.iter().map(|r| r.point.clone()));
        let member = intersection_profile(&reference, &pen.member(&a, &b), &sing, &mut rng, None).unwrap();
        let outsider = intersection_profile(&reference, &h, &sing, &mut rng, None).unwrap();
        assert!(outsider.has_contained() || outsider != member);
    }
}

#[test]
fn level_identity_and_euler_contraction() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..25 {
        let d = rng.gen_range(1..=3);
        let Ok(pen) = Pencil::new(&random_form(&mut rng, d, 3), &random_form(&mut rng, d, 3)) else {
            continue;
        };
        let (a, b) = unit_pair(&mut rng);
        let cert = verify_level_invariance(&pen, &a, &b).unwrap();
        assert_eq!(&cert.cofactor, pen.member(&a, &b).poly());
        let w = pencil_foliation_form(&pen).unwrap();
        assert!(w.euler_contraction().is_zero());
        assert!(w.integrability().iter().all(Poly::is_zero));
    }
}

#[test]
fn membership_recovers_coordinates() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut checked = 0;
    while checked < 100 {
        let d = rng.gen_range(1..=3);
        let Ok(pen) = Pencil::new(&random_form(&mut rng, d, 2), &random_form(&mut rng, d, 2)) else {
            continue;
        };
        let (a, b) = unit_pair(&mut rng);
        let a = if rng.gen_bool(0.2) { gi(0, 0) } else { a };
        let want = if a.is_zero() { [a.clone(), gi(1, 0)] } else { [gi(1, 0), b.clone() / a.clone()] };
        assert_eq!(pencil_membership(&pen.member(&a, &b), &pen).unwrap(), Membership::Member(want));
        checked += 1;
    }
}
