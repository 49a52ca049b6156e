//! Levi-form and tangency properties on constructed inputs whose answers
//! are known by construction.

use leviflat::algebra::conjugate::conjugate_swap;
use leviflat::algebra::division::exact_divide;
use leviflat::algebra::gaussian::{gi, rat};
use leviflat::algebra::poly::roster;
use leviflat::curves::sample::random_form;
use leviflat::leviflat::{
    curve_invariance, flatness_certificate, hypersurface_tangency, levi_matrix, restrict_foliation, AffineForm,
    FlatnessEvidence, FlatnessVerdict, OneForm, PlaneMap, SampleOptions, TangencyEvidence, TangencyVerdict,
};
use leviflat::pencil::{pencil_foliation_form, verify_level_invariance, FoliationForm, Pencil};
use leviflat::segre::complexify;
use leviflat::{ExactComplex, HomogeneousForm, Monomial, Poly, Roster};
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const PAIRS2: [(&str, &str); 2] = [("z1", "w1"), ("z2", "w2")];

fn zw2() -> Roster {
    roster(&["z1", "z2", "w1", "w2"])
}

fn small<R: Rng>(rng: &mut R) -> ExactComplex {
    gi(rng.gen_range(-3..=3), rng.gen_range(-3..=3))
}

/// A random polynomial of degree at most `d` in the first `k` variables of `vars`.
fn random_poly<R: Rng>(rng: &mut R, vars: &Roster, k: usize, d: u32) -> Poly {
    loop {
        let mut p = Poly::zero(vars.clone());
        for _ in 0..4 {
            let mut e = vec![0u32; vars.len()];
            let mut left = rng.gen_range(0..=d);
            for slot in e.iter_mut().take(k) {
                let x = rng.gen_range(0..=left);
                *slot = x;
                left -= x;
            }
            p = &p + &Poly::monomial(vars.clone(), e, small(rng));
        }
        if !p.is_zero() {
            return p;
        }
    }
}

/// `conj` of a holomorphic polynomial, moved onto the `w` block.
fn antiholomorphic(p: &Poly) -> Poly {
    conjugate_swap(p).unwrap()
}

#[test]
fn levi_matrix_is_hermitian_on_real_inputs() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..60 {
        let g = random_poly(&mut rng, &zw2(), 4, 3);
        let phi = &g * &antiholomorphic(&g);
        let h = complexify(&phi, &PAIRS2).unwrap();
        assert!(levi_matrix(&h).is_hermitian());
    }
}

#[test]
fn real_hyperplanes_are_exactly_flat() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let zw3 = roster(&["z1", "z2", "z3", "w1", "w2", "w3"]);
    let pairs3 = [("z1", "w1"), ("z2", "w2"), ("z3", "w3")];
    let opts = SampleOptions {
        samples: 4,
        ..SampleOptions::default()
    };
    for round in 0..20 {
        let (vars, pairs): (Roster, &[(&str, &str)]) = if round % 2 == 0 {
            (zw2(), &PAIRS2)
        } else {
            (zw3.clone(), &pairs3)
        };
        let n = pairs.len();
        // phi = l(z) + conj l(z) + r with r real
        let mut l = Poly::zero(vars.clone());
        for k in 0..n {
            l = &l + &Poly::var_index(vars.clone(), k).scale(&small(&mut rng));
        }
        if l.is_zero() {
            continue;
        }
        let r = Poly::constant(vars.clone(), gi(rng.gen_range(-5..=5), 0));
        let phi = &(&l + &antiholomorphic(&l)) + &r;
        let h = complexify(&phi, pairs).unwrap();
        let cert = flatness_certificate(&h, &opts, &mut rng).unwrap();
        assert_eq!(cert.verdict, FlatnessVerdict::ExactFlat);
        assert_eq!(cert.evidence, FlatnessEvidence::Cofactor(Poly::zero(vars.clone())));
    }
}

#[test]
fn pencil_members_are_invariant_curves() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let mut checked = 0;
    while checked < 30 {
        let d = rng.gen_range(1..=3);
        let (f, g) = (random_form(&mut rng, d, 3), random_form(&mut rng, d, 3));
        let Ok(pen) = Pencil::new(&f, &g) else { continue };
        let Ok(omega) = pencil_foliation_form(&pen) else { continue };
        let (a, b) = (small(&mut rng), small(&mut rng));
        if a.is_zero() && b.is_zero() {
            continue;
        }
        let member = pen.member(&a, &b);
        if !leviflat::algebra::gcd::is_squarefree(member.poly()) {
            continue;
        }
        verify_level_invariance(&pen, &a, &b).unwrap();
        let report = curve_invariance(&OneForm::Projective(omega), member.poly()).unwrap();
        assert_eq!(report.verdict, TangencyVerdict::Invariant);
        checked += 1;
    }
}

#[test]
fn pencil_levels_are_tangent_to_the_pencil_foliation() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    let z = roster(&["z1", "z2"]);
    let opts = SampleOptions {
        samples: 8,
        ..SampleOptions::default()
    };
    let mut checked = 0;
    while checked < 20 {
        let d = rng.gen_range(1..=2);
        let f = random_poly(&mut rng, &z, 2, d);
        let g = random_poly(&mut rng, &z, 2, d);
        let c = rat(rng.gen_range(1..=4), rng.gen_range(1..=3));
        let c2 = ExactComplex::from(&c * &c);
        let (fl, gl) = (f.with_vars(&zw2()).unwrap(), g.with_vars(&zw2()).unwrap());
        let phi = &(&fl * &antiholomorphic(&fl)) - &(&gl * &antiholomorphic(&gl)).scale(&c2);
        let Ok(h) = complexify(&phi, &PAIRS2) else { continue };
        if !leviflat::algebra::gcd::is_squarefree(h.phi_c()) {
            continue;
        }
        // omega = G dF - F dG in the affine chart
        let a = &(&g * &f.partial_index(0)) - &(&f * &g.partial_index(0));
        let b = &(&g * &f.partial_index(1)) - &(&f * &g.partial_index(1));
        let Ok(omega) = AffineForm::new(&[a, b]) else { continue };
        let report = hypersurface_tangency(&omega, &h, &opts, &mut rng).unwrap();
        assert_eq!(report.verdict, TangencyVerdict::Invariant);
        // oracle: tau = (F_1 G_2 - F_2 G_1) phi_C
        let jac = &(&f.partial_index(0) * &g.partial_index(1)) - &(&f.partial_index(1) * &g.partial_index(0));
        let jac = jac.with_vars(&zw2()).unwrap();
        assert_eq!(report.tau[0], &jac * h.phi_c());
        if let TangencyEvidence::Cofactors(q) = &report.evidence {
            assert_eq!(exact_divide(&report.tau[0], h.phi_c()).unwrap(), q[0]);
        } else {
            panic!("expected an exact certificate");
        }
        checked += 1;
    }
}

#[test]
fn generic_planes_keep_a_discrete_singular_set() {
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    let v = roster(&["z0", "z1", "z2", "z3"]);
    let q = |s: &[(i64, [u32; 4])]| {
        HomogeneousForm::from_poly(s.iter().fold(Poly::zero(v.clone()), |acc, (c, e)| {
            &acc + &Poly::from_terms(v.clone(), [(Monomial::new(e.to_vec()), gi(*c, 0))])
        }))
        .unwrap()
    };
    let f = q(&[(1, [1, 0, 0, 1]), (-1, [0, 1, 1, 0])]);
    let g = q(&[(1, [2, 0, 0, 0]), (1, [0, 0, 0, 2]), (2, [0, 1, 0, 1])]);
    let omega: FoliationForm = pencil_foliation_form(&Pencil::new(&f, &g).unwrap()).unwrap();
    let mut planes = 0;
    while planes < 100 {
        let rows = [0, 1, 2].map(|_| (0..4).map(|_| small(&mut rng)).collect::<Vec<_>>());
        let Ok(plane) = PlaneMap::new(rows) else { continue };
        let r = restrict_foliation(&omega, &plane).unwrap();
        assert!(r.discrete_singular_set, "plane {:?}", plane.rows());
        planes += 1;
    }
}
