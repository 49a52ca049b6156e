//! Certified sample points on a real hypersurface.
//!
//! Points are found by restricting `phi` (in real coordinates) to random real
//! lines through random rational base points and isolating the real roots of
//! the resulting univariate polynomial. Each point is carried as an exact
//! isolating interval on its line, so every evaluation at it is an honest
//! ball enclosure.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rand::Rng;

use crate::algebra::gaussian::rat;
use crate::algebra::poly::roster;
use crate::algebra::univariate::UniPoly;
use crate::error::{Error, Result};
use crate::numeric::ball::{compare_abs, Ball};
use crate::numeric::real_roots::{isolate_real_roots, refine_root, RealRoot};
use crate::segre::ComplexifiedHypersurface;
use crate::{ExactComplex, Poly};

/// Working precision of ball evaluations at sample points, in bits.
const BALL_BITS: u32 = 160;

/// Isolation widths tried in turn when an evaluation is inconclusive.
pub fn width_schedule() -> [BigRational; 3] {
    let e12 = rat(1, 1_000_000_000_000);
    let e24 = &e12 * &e12;
    let e48 = &e24 * &e24;
    [e12, e24, e48]
}

/// Sampling parameters: number of points wanted and the tolerance used when
/// deciding that a quantity vanishes at a point.
#[derive(Clone, Debug, PartialEq)]
pub struct SampleOptions {
    pub samples: usize,
    pub tol: BigRational,
}

impl Default for SampleOptions {
    fn default() -> Self {
        SampleOptions {
            samples: 200,
            tol: rat(1, 1_000_000_000),
        }
    }
}

/// A point of `{phi = 0}` on the real line `base + tau * dir`, with `tau`
/// isolated in `root`.
#[derive(Clone, Debug, PartialEq)]
pub struct SurfacePoint {
    /// Index of the line in the sampling sequence.
    pub line: usize,
    pub base: Vec<BigRational>,
    pub dir: Vec<BigRational>,
    pub root: RealRoot,
    restriction: UniPoly<BigRational>,
}

impl SurfacePoint {
    /// Midpoint and radius of each real coordinate.
    pub fn real_enclosure(&self) -> Vec<(BigRational, BigRational)> {
        let mid = self.root.mid();
        let half = self.root.width() / BigRational::from_integer(BigInt::from(2));
        self.base
            .iter()
            .zip(&self.dir)
            .map(|(b, d)| (b + d * &mid, d.abs() * &half))
            .collect()
    }

    /// Balls for the complex coordinates `z` followed by `w = conj z`.
    pub fn zw_balls(&self) -> Vec<Ball> {
        let real = self.real_enclosure();
        let n = real.len() / 2;
        let z: Vec<Ball> = (0..n)
            .map(|k| {
                let (x, rx) = &real[2 * k];
                let (y, ry) = &real[2 * k + 1];
                Ball::new(&ExactComplex::new(x.clone(), y.clone()), rx + ry, BALL_BITS)
            })
            .collect();
        let w: Vec<Ball> = z.iter().map(|b| Ball { im: -b.im.clone(), ..b.clone() }).collect();
        z.into_iter().chain(w).collect()
    }

    /// Balls for the real coordinates, as complex balls on the real axis.
    pub fn real_balls(&self) -> Vec<Ball> {
        self.real_enclosure()
            .into_iter()
            .map(|(c, r)| Ball::new(&ExactComplex::new(c, BigRational::zero()), r, BALL_BITS))
            .collect()
    }

    /// Rational approximation of the complex coordinates.
    pub fn z_center(&self) -> Vec<ExactComplex> {
        let real = self.real_enclosure();
        (0..real.len() / 2)
            .map(|k| ExactComplex::new(real[2 * k].0.clone(), real[2 * k + 1].0.clone()))
            .collect()
    }

    /// Radius bound of the complex coordinates around [`SurfacePoint::z_center`].
    pub fn z_radius(&self) -> BigRational {
        self.real_enclosure()
            .iter()
            .map(|(_, r)| r.clone())
            .fold(BigRational::zero(), |a, b| if b > a { b } else { a })
            * BigRational::from_integer(BigInt::from(2))
    }

    /// The same point with its line parameter isolated to `width`.
    pub fn refined(&self, width: &BigRational) -> SurfacePoint {
        SurfacePoint {
            root: refine_root(&self.restriction, &self.root, width),
            ..self.clone()
        }
    }
}

/// Points found on the hypersurface together with the bookkeeping needed to
/// report and replay the search.
#[derive(Clone, Debug, PartialEq)]
pub struct SampleSet {
    pub points: Vec<SurfacePoint>,
    pub lines_tried: usize,
    /// Roots discarded because the gradient could not be certified nonzero.
    pub singular_skipped: usize,
}

/// Draws random lines until `count` regular points of `{phi = 0}` are found
/// or the line budget runs out. Fails only if no point at all is found.
pub fn sample_surface<R: Rng>(h: &ComplexifiedHypersurface, count: usize, rng: &mut R) -> Result<SampleSet> {
    let real = h.real_form();
    let grad = real.gradient();
    let dim = real.nvars();
    let t = roster(&["tau"]);
    let budget = 20 * count + 100;
    let widths = width_schedule();
    let mut set = SampleSet {
        points: Vec::new(),
        lines_tried: 0,
        singular_skipped: 0,
    };
    while set.points.len() < count && set.lines_tried < budget {
        let line = set.lines_tried;
        set.lines_tried += 1;
        let base: Vec<BigRational> = (0..dim).map(|_| rat(rng.gen_range(-16..=16), 8)).collect();
        let mut dir: Vec<BigRational> = (0..dim).map(|_| rat(rng.gen_range(-3..=3), 1)).collect();
        if dir.iter().all(Zero::is_zero) {
            dir[0] = rat(1, 1);
        }
        let images: Vec<Poly> = base
            .iter()
            .zip(&dir)
            .map(|(b, d)| {
                Poly::from_terms(
                    t.clone(),
                    [
                        (crate::Monomial::new(vec![0]), ExactComplex::from(b.clone())),
                        (crate::Monomial::new(vec![1]), ExactComplex::from(d.clone())),
                    ],
                )
            })
            .collect();
        let restricted = real.compose(&images)?;
        let uni = UniPoly::from_multi(&restricted, 0).expect("univariate restriction");
        if uni.is_zero() {
            // the whole line lies on the hypersurface; skip it rather than
            // pick arbitrary points
            continue;
        }
        let uni = uni.map(|c| c.re.clone()).squarefree_part();
        for root in isolate_real_roots(&uni, &widths[0]) {
            if set.points.len() == count {
                break;
            }
            let mut p = SurfacePoint {
                line,
                base: base.clone(),
                dir: dir.clone(),
                root,
                restriction: uni.clone(),
            };
            let mut regular = false;
            for w in &widths {
                p = p.refined(w);
                if is_regular(&grad, &p)? {
                    regular = true;
                    break;
                }
            }
            if regular {
                set.points.push(p);
            } else {
                set.singular_skipped += 1;
            }
        }
    }
    if set.points.is_empty() {
        return Err(Error::NoSamplePoints(set.lines_tried));
    }
    Ok(set)
}

fn is_regular(grad: &[Poly], p: &SurfacePoint) -> Result<bool> {
    let x = p.real_balls();
    for g in grad {
        if g.map_coeffs(Ball::exact).eval(&x)?.excludes_zero() {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Outcome of testing whether a family of quantities vanishes at one point.
#[derive(Clone, Debug, PartialEq)]
pub enum PointCheck {
    /// All quantities are certified at most `tol` in absolute value; the
    /// largest upper bound is recorded.
    Small(BigRational),
    /// One quantity is certified above `tol`; its enclosure is recorded.
    Large(Ball),
}

/// Evaluates `values` at `p`, refining the point along the width schedule
/// until every value is certified small or one is certified large. If the
/// finest width still leaves the question open, the midpoint magnitudes
/// decide. Returns the refined point and the verdict.
pub fn check_point<F>(p: &SurfacePoint, tol: &BigRational, values: F) -> Result<(SurfacePoint, PointCheck)>
where
    F: Fn(&SurfacePoint) -> Result<Vec<Ball>>,
{
    let widths = width_schedule();
    let mut last = None;
    for w in &widths {
        let q = p.refined(w);
        let vals = values(&q)?;
        let mut all_small = true;
        let mut upper = BigRational::zero();
        for v in &vals {
            match compare_abs(v, tol) {
                Some(false) => return Ok((q, PointCheck::Large(v.clone()))),
                Some(true) => {
                    let u = v.abs_upper_l2();
                    if u > upper {
                        upper = u;
                    }
                }
                None => all_small = false,
            }
        }
        if all_small {
            return Ok((q, PointCheck::Small(upper)));
        }
        last = Some((q, vals));
    }
    let (q, vals) = last.expect("nonempty schedule");
    for v in &vals {
        let c = Ball::exact(&v.center());
        if c.abs_upper_l2() > *tol {
            return Ok((q, PointCheck::Large(v.clone())));
        }
    }
    let upper = vals
        .iter()
        .map(|v| Ball::exact(&v.center()).abs_upper_l2())
        .fold(BigRational::zero(), |a, b| if b > a { b } else { a });
    Ok((q, PointCheck::Small(upper)))
}

/// Summary of a successful sampling certification.
#[derive(Clone, Debug, PartialEq)]
pub struct SampleTable {
    pub points: usize,
    pub lines_tried: usize,
    pub singular_skipped: usize,
    /// Largest certified upper bound on the tested quantities.
    pub max_upper: BigRational,
    pub tol: BigRational,
}

/// A sample point at which a tested quantity is certified above tolerance.
#[derive(Clone, Debug, PartialEq)]
pub struct Witness {
    pub line: usize,
    /// Rational approximation of the point's complex coordinates.
    pub point: Vec<ExactComplex>,
    /// Bound on the distance from `point` to the true point, per coordinate.
    pub radius: BigRational,
    /// Enclosure of the offending value.
    pub value: ExactComplex,
    pub value_radius: BigRational,
}

/// Either every sample passes, or a witness where one fails.
#[derive(Clone, Debug, PartialEq)]
pub enum SampleOutcome {
    Vanishes(SampleTable),
    Witness(Witness),
}

/// Samples the hypersurface and checks that `values` vanish (to `tol`) at
/// every regular sample point.
pub fn certify_on_surface<R, F>(
    h: &ComplexifiedHypersurface,
    opts: &SampleOptions,
    rng: &mut R,
    values: F,
) -> Result<SampleOutcome>
where
    R: Rng,
    F: Fn(&SurfacePoint) -> Result<Vec<Ball>>,
{
    let set = sample_surface(h, opts.samples, rng)?;
    let mut max_upper = BigRational::zero();
    for p in &set.points {
        match check_point(p, &opts.tol, &values)? {
            (_, PointCheck::Small(u)) => {
                if u > max_upper {
                    max_upper = u;
                }
            }
            (q, PointCheck::Large(v)) => {
                return Ok(SampleOutcome::Witness(Witness {
                    line: q.line,
                    point: q.z_center(),
                    radius: q.z_radius(),
                    value: v.center(),
                    value_radius: v.rad.clone(),
                }))
            }
        }
    }
    Ok(SampleOutcome::Vanishes(SampleTable {
        points: set.points.len(),
        lines_tried: set.lines_tried,
        singular_skipped: set.singular_skipped,
        max_upper,
        tol: opts.tol.clone(),
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::text::parse_expr;
    use crate::segre::complexify;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn sphere_samples_lie_on_the_sphere() {
        let v = roster(&["z1", "z2", "w1", "w2"]);
        let h = complexify(
            &parse_expr("z1*w1 + z2*w2 - 1", &v).unwrap(),
            &[("z1", "w1"), ("z2", "w2")],
        )
        .unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let set = sample_surface(&h, 20, &mut rng).unwrap();
        assert_eq!(set.points.len(), 20);
        let tol = rat(1, 1_000_000_000);
        for p in &set.points {
            let val = h.phi_c().map_coeffs(Ball::exact).eval(&p.zw_balls()).unwrap();
            assert_eq!(compare_abs(&val, &tol), Some(true));
        }
    }

    #[test]
    fn empty_hypersurface_has_no_samples() {
        let v = roster(&["z1", "w1"]);
        let h = complexify(&parse_expr("z1*w1 + 1", &v).unwrap(), &[("z1", "w1")]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        assert!(matches!(sample_surface(&h, 3, &mut rng), Err(Error::NoSamplePoints(_))));
    }
}
