use super::poly::{Monomial, MultiPoly};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Swaps the z-block and w-block of the roster exponent-wise and conjugates
/// every coefficient. The roster is split in half: the first `n` variables
/// are `z`, the last `n` are `w`. Fixed points are exactly the real
/// polynomials `phi(z, conj z)`.
pub fn conjugate_swap<C: Scalar>(p: &MultiPoly<C>) -> Result<MultiPoly<C>> {
    let nv = p.nvars();
    if nv % 2 != 0 {
        return Err(Error::OddRoster(nv));
    }
    let n = nv / 2;
    Ok(MultiPoly::from_terms(
        p.vars().clone(),
        p.terms().map(|(m, c)| {
            let e = m.exps();
            let swapped: Vec<u32> = e[n..].iter().chain(&e[..n]).copied().collect();
            (Monomial::new(swapped), c.conj())
        }),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::gaussian::gi;
    use crate::algebra::poly::roster;
    use crate::Poly;

    fn zw() -> Vec<Poly> {
        let v = roster(&["z1", "z2", "w1", "w2"]);
        (0..4).map(|i| Poly::var_index(v.clone(), i)).collect()
    }

    #[test]
    fn swaps_blocks_and_conjugates() {
        let x = zw();
        let p = (&x[0] * &x[3]).scale(&gi(2, 5));
        assert_eq!(conjugate_swap(&p).unwrap(), (&x[2] * &x[1]).scale(&gi(2, -5)));
        assert_eq!(conjugate_swap(&x[0]).unwrap(), x[2]);
    }

    #[test]
    fn lebl_form_is_fixed() {
        let x = zw();
        let p = (&(&x[0] * &x[3]) - &(&x[2] * &x[1])).scale(&gi(0, -1));
        assert_eq!(conjugate_swap(&p).unwrap(), p);
    }

    #[test]
    fn odd_roster_rejected() {
        let p = Poly::var_index(roster(&["a", "b", "c"]), 0);
        assert_eq!(conjugate_swap(&p), Err(Error::OddRoster(3)));
    }
}
