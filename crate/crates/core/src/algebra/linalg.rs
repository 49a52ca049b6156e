//! Dense exact linear algebra over an [`ExactField`].

use crate::scalar::ExactField;

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref<C: ExactField>(m: &mut [Vec<C>]) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = C::one() / m[r][c].clone();
        for x in m[r].iter_mut() {
            *x = x.clone() * inv.clone();
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..cols {
                    let d = f.clone() * m[r][j].clone();
                    m[i][j] = m[i][j].clone() - d;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank<C: ExactField>(m: &[Vec<C>]) -> usize {
    let mut a = m.to_vec();
    rref(&mut a).len()
}

/// A basis of the left kernel `{x : x^T m = 0}` (linear relations among rows).
pub fn row_relations<C: ExactField>(m: &[Vec<C>]) -> Vec<Vec<C>> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    // transpose so relations among rows become the right kernel
    let t: Vec<Vec<C>> = (0..cols).map(|j| (0..rows).map(|i| m[i][j].clone()).collect()).collect();
    kernel(&t, rows)
}

/// Basis of the right kernel of `m` (with `ncols` columns).
pub fn kernel<C: ExactField>(m: &[Vec<C>], ncols: usize) -> Vec<Vec<C>> {
    let mut a = m.to_vec();
    let pivots = rref(&mut a);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![C::zero(); ncols];
            v[f] = C::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -a[r][f].clone();
            }
            v
        })
        .collect()
}
