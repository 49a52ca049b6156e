//! Projective linear coordinate changes of P^2.

use num_traits::{One, Zero};
use rand::Rng;

use crate::algebra::gaussian::gi;
use crate::algebra::poly::Roster;
use crate::error::{Error, Result};
use crate::{ExactComplex, Poly};

/// An invertible 3x3 matrix `T`; a point with transformed coordinates `w`
/// has original coordinates `T w`, and a form `F` pulls back to `F(T w)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Transform {
    pub m: [[ExactComplex; 3]; 3],
}

fn det3(m: &[[ExactComplex; 3]; 3]) -> ExactComplex {
    let a = |i: usize, j: usize| m[i][j].clone();
    a(0, 0) * (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1)) - a(0, 1) * (a(1, 0) * a(2, 2) - a(1, 2) * a(2, 0))
        + a(0, 2) * (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0))
}

impl Transform {
    pub fn identity() -> Self {
        let mut m: [[ExactComplex; 3]; 3] = Default::default();
        for (i, row) in m.iter_mut().enumerate() {
            for (j, x) in row.iter_mut().enumerate() {
                *x = if i == j { ExactComplex::one() } else { ExactComplex::zero() };
            }
        }
        Transform { m }
    }

    /// The matrix whose columns are the given vectors.
    pub fn from_columns(cols: [[ExactComplex; 3]; 3]) -> Result<Self> {
        let mut m: [[ExactComplex; 3]; 3] = Default::default();
        for (j, c) in cols.iter().enumerate() {
            for i in 0..3 {
                m[i][j] = c[i].clone();
            }
        }
        let t = Transform { m };
        if t.det().is_zero() {
            return Err(Error::InvalidInput("singular coordinate change".into()));
        }
        Ok(t)
    }

    pub fn det(&self) -> ExactComplex {
        det3(&self.m)
    }

    pub fn column(&self, j: usize) -> [ExactComplex; 3] {
        [self.m[0][j].clone(), self.m[1][j].clone(), self.m[2][j].clone()]
    }

    pub fn inverse(&self) -> Transform {
        let d = self.det();
        let a = |i: usize, j: usize| self.m[i][j].clone();
        let mut inv: [[ExactComplex; 3]; 3] = Default::default();
        for i in 0..3 {
            for j in 0..3 {
                // cofactor of (j, i)
                let (r0, r1) = match j {
                    0 => (1, 2),
                    1 => (0, 2),
                    _ => (0, 1),
                };
                let (c0, c1) = match i {
                    0 => (1, 2),
                    1 => (0, 2),
                    _ => (0, 1),
                };
                let minor = a(r0, c0) * a(r1, c1) - a(r0, c1) * a(r1, c0);
                let sign = if (i + j) % 2 == 0 { ExactComplex::one() } else { -ExactComplex::one() };
                inv[i][j] = sign * minor / d.clone();
            }
        }
        Transform { m: inv }
    }

    /// `T w`
    pub fn apply<C>(&self, w: &[C; 3]) -> [C; 3]
    where
        C: crate::scalar::Scalar + From<ExactComplex>,
    {
        std::array::from_fn(|i| {
            (0..3).fold(C::zero(), |acc, j| acc + C::from(self.m[i][j].clone()) * w[j].clone())
        })
    }

    pub fn apply_exact(&self, w: &[ExactComplex; 3]) -> [ExactComplex; 3] {
        std::array::from_fn(|i| (0..3).fold(ExactComplex::zero(), |acc, j| acc + self.m[i][j].clone() * w[j].clone()))
    }

    /// The pull-back `F(T w)` of a form on the three-variable roster.
    pub fn pull_back(&self, f: &Poly) -> Result<Poly> {
        let vars: &Roster = f.vars();
        if vars.len() != 3 {
            return Err(Error::ArityMismatch {
                expected: 3,
                found: vars.len(),
            });
        }
        let w: Vec<Poly> = (0..3).map(|j| Poly::var_index(vars.clone(), j)).collect();
        let images: Vec<Poly> = (0..3)
            .map(|i| (0..3).fold(Poly::zero(vars.clone()), |acc, j| &acc + &w[j].scale(&self.m[i][j])))
            .collect();
        f.compose(&images)
    }

    /// A random coordinate change with small Gaussian-integer entries.
    pub fn random<R: Rng>(rng: &mut R) -> Self {
        loop {
            let m: [[ExactComplex; 3]; 3] =
                std::array::from_fn(|_| std::array::from_fn(|_| gi(rng.gen_range(-7..=7), rng.gen_range(-2..=2))));
            let t = Transform { m };
            if !t.det().is_zero() {
                return t;
            }
        }
    }

    /// A random change whose first column is `p` (so `[1:0:0]` maps to `p`).
    pub fn random_through<R: Rng>(p: &[ExactComplex; 3], rng: &mut R) -> Self {
        loop {
            let mut t = Transform::random(rng);
            for i in 0..3 {
                t.m[i][0] = p[i].clone();
            }
            if !t.det().is_zero() {
                return t;
            }
        }
    }
}

/// Compact text for reports: rows of `a+bi` entries.
pub fn describe(t: &Transform) -> Vec<Vec<String>> {
    t.m.iter()
        .map(|row| row.iter().map(crate::algebra::gaussian::format_complex_short).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn inverse_round_trips() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let t = Transform::random(&mut rng);
            let w = [gi(1, 2), gi(-3, 0), gi(0, 5)];
            assert_eq!(t.inverse().apply_exact(&t.apply_exact(&w)), w);
        }
    }

    #[test]
    fn pull_back_matches_point_evaluation() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let v = crate::algebra::poly::roster(&["z0", "z1", "z2"]);
        let f = crate::algebra::text::parse_poly("(1 + 0 i) * z0 z2 + (-1 + 0 i) * z1^2", &v).unwrap();
        let t = Transform::random(&mut rng);
        let g = t.pull_back(&f).unwrap();
        let w = [gi(2, 1), gi(-1, 0), gi(0, 3)];
        assert_eq!(g.eval(&w).unwrap(), f.eval(&t.apply_exact(&w)).unwrap());
    }
}
