//! Double description over exact rationals.
//!
//! `dd_cone` enumerates the lineality space and extreme rays of
//! {z : row·z ≤ 0 for every row}. Constraints are processed in sorted order;
//! adjacency of rays is decided by the algebraic rank of their common tight
//! set, and the output is filtered down to exactly the extreme rays.

use crate::numeric::*;
use num::{Signed, Zero};

const MAX_ROWS: usize = 128;

struct Ray {
    dir: Vec<Rat>,
    /// Tight-set bitmask over processed row indices.
    tight: u128,
}

pub struct ConeGenerators {
    pub lineality: Vec<Vec<Rat>>,
    pub rays: Vec<Vec<Int>>,
}

/// Lineality basis and extreme rays of the cone {z : rows·z ≤ 0} in R^dim.
pub fn dd_cone(dim: usize, rows: &[Vec<Rat>]) -> ConeGenerators {
    assert!(rows.len() <= MAX_ROWS, "constraint count exceeds desk scale");
    let mut lineality: Vec<Vec<Rat>> = (0..dim)
        .map(|i| {
            let mut v = vec![Rat::zero(); dim];
            v[i] = Rat::one();
            v
        })
        .collect();
    let mut rays: Vec<Ray> = Vec::new();

    for (idx, row) in rows.iter().enumerate() {
        let lin_hit = lineality.iter().position(|l| !dot(row, l).is_zero());
        if let Some(p) = lin_hit {
            // Fold the lineality direction that violates the new halfspace.
            let mut l0 = lineality.remove(p);
            let s0 = dot(row, &l0);
            if s0.is_positive() {
                l0 = l0.iter().map(|x| -x).collect();
            }
            let s0 = dot(row, &l0);
            for l in lineality.iter_mut() {
                let f = dot(row, l) / &s0;
                if !f.is_zero() {
                    *l = sub_vec(l, &scale_vec(&l0, &f));
                }
            }
            for r in rays.iter_mut() {
                let f = dot(row, &r.dir) / &s0;
                if !f.is_zero() {
                    r.dir = sub_vec(&r.dir, &scale_vec(&l0, &f));
                }
                r.tight |= 1 << idx;
            }
            // l0 itself becomes a ray, tight at every earlier row.
            let tight = (1u128 << idx) - 1;
            rays.push(Ray {
                dir: normalize(&l0),
                tight,
            });
            continue;
        }

        let vals: Vec<Rat> = rays.iter().map(|r| dot(row, &r.dir)).collect();
        let mut keep: Vec<Ray> = Vec::new();
        let mut plus: Vec<Ray> = Vec::new();
        let mut minus_idx: Vec<usize> = Vec::new();
        for (r, v) in rays.into_iter().zip(&vals) {
            if v.is_zero() {
                keep.push(Ray {
                    dir: r.dir,
                    tight: r.tight | (1 << idx),
                });
            } else if v.is_positive() {
                plus.push(r);
            } else {
                minus_idx.push(keep.len());
                keep.push(r);
            }
        }
        let lin_rank = lineality.len();
        for rp in &plus {
            let vp = dot(row, &rp.dir);
            for &mi in &minus_idx {
                let rm = &keep[mi];
                let common = rp.tight & rm.tight;
                if !adjacent(common, rows, dim, lin_rank) {
                    continue;
                }
                let vm = dot(row, &rm.dir);
                // positive combination tight at the new row
                let dir = sub_vec(&scale_vec(&rm.dir, &vp), &scale_vec(&rp.dir, &vm));
                if is_zero_vec(&dir) {
                    continue;
                }
                keep.push(Ray {
                    dir: normalize(&dir),
                    tight: common | (1 << idx),
                });
            }
        }
        rays = keep;
    }

    // Keep exactly the extreme rays: the minimal face of an extreme ray has
    // dimension lin_rank + 1.
    let lin_rank = lineality.len();
    let all_rows = rows;
    let mut out: Vec<Vec<Int>> = Vec::new();
    for r in &rays {
        let tight: Vec<Vec<Rat>> = all_rows
            .iter()
            .filter(|row| dot(row, &r.dir).is_zero())
            .cloned()
            .collect();
        if rank_rat(&tight) == dim - lin_rank - 1 {
            out.push(clear_denominators(&r.dir));
        }
    }
    out.sort();
    out.dedup();

    ConeGenerators {
        lineality,
        rays: out,
    }
}

fn normalize(v: &[Rat]) -> Vec<Rat> {
    int_to_rat_vec(&crate::lattice::primitive_int_vector(&clear_denominators(v)))
}

fn adjacent(common: u128, rows: &[Vec<Rat>], dim: usize, lin_rank: usize) -> bool {
    if dim < lin_rank + 2 {
        return false;
    }
    let tight: Vec<Vec<Rat>> = (0..rows.len())
        .filter(|i| common & (1 << i) != 0)
        .map(|i| rows[i].clone())
        .collect();
    rank_rat(&tight) == dim - lin_rank - 2
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::rats;

    #[test]
    fn quadrant() {
        // {x ≤ 0, y ≤ 0}: extreme rays -e1, -e2
        let g = dd_cone(2, &[rats(&[1, 0]), rats(&[0, 1])]);
        assert!(g.lineality.is_empty());
        assert_eq!(g.rays, vec![ints(&[-1, 0]), ints(&[0, -1])]);
    }

    #[test]
    fn halfspace_has_lineality() {
        let g = dd_cone(2, &[rats(&[1, 0])]);
        assert_eq!(g.lineality.len(), 1);
        assert_eq!(g.rays, vec![ints(&[-1, 0])]);
    }

    #[test]
    fn origin_only() {
        let g = dd_cone(2, &[rats(&[1, 0]), rats(&[-1, 0]), rats(&[0, 1]), rats(&[0, -1])]);
        assert!(g.lineality.is_empty());
        assert!(g.rays.is_empty());
    }
}
