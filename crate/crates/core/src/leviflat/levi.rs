//! Levi form and Levi-flatness certificates.

use num_rational::BigRational;
use num_traits::Zero;
use rand::Rng;

use super::sampling::{certify_on_surface, SampleOptions, SampleOutcome, SampleTable, SurfacePoint, Witness};
use crate::algebra::conjugate::conjugate_swap;
use crate::algebra::division::exact_divide;
use crate::algebra::gcd::is_squarefree;
use crate::error::{Error, Result};
use crate::numeric::ball::Ball;
use crate::segre::ComplexifiedHypersurface;
use crate::{ExactComplex, Poly};

/// The matrix of mixed partials `d^2 phi / dz_i dzbar_j`, as polynomials on
/// the complexified roster `(z, w)`.
#[derive(Clone, Debug, PartialEq)]
pub struct LeviMatrix {
    pub entries: Vec<Vec<Poly>>,
}

pub fn levi_matrix(h: &ComplexifiedHypersurface) -> LeviMatrix {
    let n = h.n();
    let phi = h.phi_c();
    let entries = (0..n)
        .map(|i| {
            let di = phi.partial_index(i);
            (0..n).map(|j| di.partial_index(n + j)).collect()
        })
        .collect();
    LeviMatrix { entries }
}

impl LeviMatrix {
    pub fn n(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(Poly::is_zero)
    }

    /// Entry `(i, j)` is the swap-conjugate of entry `(j, i)`.
    pub fn is_hermitian(&self) -> bool {
        let n = self.n();
        (0..n).all(|i| {
            (0..n).all(|j| conjugate_swap(&self.entries[i][j]).map_or(false, |c| c == self.entries[j][i]))
        })
    }

    /// `L_z(v) = sum_{i,j} L_ij(z) v_i conj(v_j)` at an exact point `z`.
    pub fn value(&self, z: &[ExactComplex], v: &[ExactComplex]) -> Result<ExactComplex> {
        let point: Vec<ExactComplex> = z.iter().cloned().chain(z.iter().map(|c| c.conj())).collect();
        let mut acc = ExactComplex::zero();
        for (i, row) in self.entries.iter().enumerate() {
            for (j, e) in row.iter().enumerate() {
                acc = acc + e.eval(&point)? * v[i].clone() * v[j].conj();
            }
        }
        Ok(acc)
    }
}

/// Entries of the Levi form on the complex tangent space, spanned where
/// `phi_{z_k} != 0` by `v_a = phi_{z_k} e_a - phi_{z_a} e_k`, `a != k`.
/// Returned row-major over `a, b != k`.
pub fn tangential_levi_entries(h: &ComplexifiedHypersurface, k: usize) -> Vec<Poly> {
    let n = h.n();
    let phi = h.phi_c();
    let l = levi_matrix(h);
    let dz: Vec<Poly> = (0..n).map(|i| phi.partial_index(i)).collect();
    let dw: Vec<Poly> = (0..n).map(|i| phi.partial_index(n + i)).collect();
    let zero = Poly::zero(phi.vars().clone());
    let vec_z = |a: usize| -> Vec<Poly> {
        (0..n)
            .map(|i| {
                if i == a {
                    dz[k].clone()
                } else if i == k {
                    -&dz[a]
                } else {
                    zero.clone()
                }
            })
            .collect()
    };
    let vec_w = |b: usize| -> Vec<Poly> {
        (0..n)
            .map(|j| {
                if j == b {
                    dw[k].clone()
                } else if j == k {
                    -&dw[b]
                } else {
                    zero.clone()
                }
            })
            .collect()
    };
    let mut out = Vec::new();
    for a in (0..n).filter(|&a| a != k) {
        let va = vec_z(a);
        for b in (0..n).filter(|&b| b != k) {
            let vb = vec_w(b);
            let mut acc = zero.clone();
            for i in 0..n {
                if va[i].is_zero() {
                    continue;
                }
                for j in 0..n {
                    if vb[j].is_zero() || l.entries[i][j].is_zero() {
                        continue;
                    }
                    acc = &acc + &(&(&va[i] * &l.entries[i][j]) * &vb[j]);
                }
            }
            out.push(acc);
        }
    }
    out
}

/// The restricted Levi scalar of a hypersurface in `C^2`:
/// `phi_{z1 w1} |phi_{z2}|^2 + phi_{z2 w2} |phi_{z1}|^2 - 2 Re(phi_{z1 w2} phi_{w1} phi_{z2})`,
/// complexified.
pub fn levi_scalar(h: &ComplexifiedHypersurface) -> Result<Poly> {
    if h.n() != 2 {
        return Err(Error::InvalidInput("the restricted Levi scalar needs n = 2".into()));
    }
    Ok(tangential_levi_entries(h, 1).remove(0))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FlatnessVerdict {
    ExactFlat,
    NumericallyFlat,
    NotFlat,
}

#[derive(Clone, Debug, PartialEq)]
pub enum FlatnessEvidence {
    /// `Lambda = cofactor * phi_C` exactly.
    Cofactor(Poly),
    Samples(SampleTable),
    Witness(Witness),
}

#[derive(Clone, Debug, PartialEq)]
pub struct FlatnessCertificate {
    pub verdict: FlatnessVerdict,
    pub evidence: FlatnessEvidence,
}

/// Rejects defining functions that are not squarefree: on those the
/// gradient vanishes along whole components of the hypersurface.
pub fn check_reduced(h: &ComplexifiedHypersurface) -> Result<()> {
    if is_squarefree(h.phi_c()) {
        Ok(())
    } else {
        Err(Error::NonReduced)
    }
}

/// Decides Levi-flatness of `{phi = 0}`.
///
/// The exact tier (n = 2, or a Levi matrix that vanishes identically) divides
/// the restricted Levi scalar by `phi_C`; success proves flatness. Otherwise
/// the tangential Levi form is evaluated on certified sample points.
pub fn flatness_certificate<R: Rng>(
    h: &ComplexifiedHypersurface,
    opts: &SampleOptions,
    rng: &mut R,
) -> Result<FlatnessCertificate> {
    check_reduced(h)?;
    let n = h.n();
    if levi_matrix(h).is_zero() {
        return Ok(FlatnessCertificate {
            verdict: FlatnessVerdict::ExactFlat,
            evidence: FlatnessEvidence::Cofactor(Poly::zero(h.vars().clone())),
        });
    }
    if n == 2 {
        if let Ok(q) = exact_divide(&levi_scalar(h)?, h.phi_c()) {
            return Ok(FlatnessCertificate {
                verdict: FlatnessVerdict::ExactFlat,
                evidence: FlatnessEvidence::Cofactor(q),
            });
        }
    }
    sampled_flatness(h, opts, rng)
}

/// The numeric tier of [`flatness_certificate`] on its own: the tangential
/// Levi form must vanish to `opts.tol` at every certified sample point.
pub fn sampled_flatness<R: Rng>(
    h: &ComplexifiedHypersurface,
    opts: &SampleOptions,
    rng: &mut R,
) -> Result<FlatnessCertificate> {
    let n = h.n();
    let pivots: Vec<(Poly, Vec<Poly>)> = (0..n)
        .map(|k| (h.phi_c().partial_index(k), tangential_levi_entries(h, k)))
        .collect();
    let values = |p: &SurfacePoint| -> Result<Vec<Ball>> {
        let x = p.zw_balls();
        let mut best: Option<(BigRational, usize)> = None;
        for (k, (dk, _)) in pivots.iter().enumerate() {
            let lo = dk.map_coeffs(Ball::exact).eval(&x)?.abs_lower();
            if best.as_ref().map_or(true, |(b, _)| &lo > b) {
                best = Some((lo, k));
            }
        }
        let (lo, k) = best.expect("n >= 1");
        if lo.is_zero() {
            // no holomorphic partial is certified nonzero: the point is
            // regular only through an antiholomorphic direction, which
            // cannot happen for a real phi; report nothing to test
            return Ok(Vec::new());
        }
        pivots[k].1.iter().map(|e| e.map_coeffs(Ball::exact).eval(&x)).collect()
    };
    Ok(match certify_on_surface(h, opts, rng, values)? {
        SampleOutcome::Vanishes(t) => FlatnessCertificate {
            verdict: FlatnessVerdict::NumericallyFlat,
            evidence: FlatnessEvidence::Samples(t),
        },
        SampleOutcome::Witness(w) => FlatnessCertificate {
            verdict: FlatnessVerdict::NotFlat,
            evidence: FlatnessEvidence::Witness(w),
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::gaussian::gi;
    use crate::algebra::poly::roster;
    use crate::algebra::text::parse_expr;
    use crate::segre::{complexify, complexify_real};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn c2(s: &str) -> ComplexifiedHypersurface {
        let v = roster(&["z1", "z2", "w1", "w2"]);
        complexify(&parse_expr(s, &v).unwrap(), &[("z1", "w1"), ("z2", "w2")]).unwrap()
    }

    fn opts(samples: usize) -> SampleOptions {
        SampleOptions {
            samples,
            ..SampleOptions::default()
        }
    }

    #[test]
    fn sphere_levi_matrix_is_identity_and_not_flat() {
        let h = c2("z1*w1 + z2*w2 - 1");
        let l = levi_matrix(&h);
        assert!(l.is_hermitian());
        assert_eq!(l.entries[0][0], Poly::one(h.vars().clone()));
        assert!(l.entries[0][1].is_zero());
        assert_eq!(l.value(&[gi(1, 0), gi(0, 0)], &[gi(0, 0), gi(1, 0)]).unwrap(), gi(1, 0));
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let cert = flatness_certificate(&h, &opts(20), &mut rng).unwrap();
        assert_eq!(cert.verdict, FlatnessVerdict::NotFlat);
        match cert.evidence {
            FlatnessEvidence::Witness(w) => {
                let v = h.value_at(&w.point).unwrap();
                assert!(crate::algebra::gaussian::norm_sqr(&v) < crate::algebra::gaussian::rat(1, 1_000_000));
            }
            e => panic!("unexpected evidence {e:?}"),
        }
    }

    #[test]
    fn imaginary_part_is_exactly_flat() {
        let h = c2("-1/2*i*(z2 - w2)");
        assert!(levi_matrix(&h).is_zero());
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let cert = flatness_certificate(&h, &opts(5), &mut rng).unwrap();
        assert_eq!(cert.verdict, FlatnessVerdict::ExactFlat);
        assert_eq!(cert.evidence, FlatnessEvidence::Cofactor(Poly::zero(h.vars().clone())));
    }

    #[test]
    fn brunella_is_flat() {
        let v = roster(&["x", "y", "s", "t"]);
        let phi = parse_expr("t^2 - 4*(y^2 + s)*y^2", &v).unwrap();
        let h = complexify_real(&phi, &[("x", "y"), ("s", "t")], &["z1", "z2"], &["w1", "w2"]).unwrap();
        assert!(levi_matrix(&h).is_hermitian());
        assert!(!levi_matrix(&h).is_zero());
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let cert = flatness_certificate(&h, &opts(30), &mut rng).unwrap();
        assert_eq!(cert.verdict, FlatnessVerdict::ExactFlat);
        let numeric = sampled_flatness(&h, &opts(30), &mut rng).unwrap();
        assert_eq!(numeric.verdict, FlatnessVerdict::NumericallyFlat, "{numeric:?}");
    }

    #[test]
    fn squared_defining_function_is_rejected() {
        let h = c2("-1/4*(z2 - w2)^2");
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert_eq!(flatness_certificate(&h, &opts(5), &mut rng), Err(Error::NonReduced));
    }
}
