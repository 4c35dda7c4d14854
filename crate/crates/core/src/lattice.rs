//! Integral lattice routines: primitive vectors, Hermite normal form,
//! basis extension and lattice bases inside a cone.

use crate::error::{Error, Result};
use crate::numeric::*;
use num::{Integer, One, Signed, Zero};

/// The unique positive rational multiple of `v` that is integral with gcd 1.
pub fn primitive_vector(v: &[Rat]) -> Result<Vec<Int>> {
    if is_zero_vec(v) {
        return Err(Error::ZeroVector);
    }
    let ints = clear_denominators(v);
    let g = gcd_of(&ints);
    Ok(ints.iter().map(|x| x / &g).collect())
}

/// Primitive form of a nonzero integral vector (gcd divided out, sign kept).
pub fn primitive_int_vector(v: &[Int]) -> Vec<Int> {
    let g = gcd_of(v);
    if g.is_zero() {
        return v.to_vec();
    }
    v.iter().map(|x| x / &g).collect()
}

struct HnfUpper {
    h: Vec<Vec<Int>>,
    u: Vec<Vec<Int>>,
    uinv: Vec<Vec<Int>>,
    pivots: Vec<(usize, usize)>,
}

/// Classic row HNF: pivots left to right, zeros below each pivot, entries
/// above reduced into [0, pivot). Tracks U and U^{-1} through the row ops.
fn hnf_upper(a: &IntMatrix) -> HnfUpper {
    let m = a.nrows();
    let n = a.ncols();
    let mut h: Vec<Vec<Int>> = a.rows().to_vec();
    let mut u = IntMatrix::identity(m).into_rows();
    let mut uinv = IntMatrix::identity(m).into_rows();
    let mut pivots = Vec::new();
    let mut r = 0;

    let row_sub = |h: &mut Vec<Vec<Int>>,
                   u: &mut Vec<Vec<Int>>,
                   uinv: &mut Vec<Vec<Int>>,
                   i: usize,
                   src: usize,
                   q: &Int| {
        // row_i -= q * row_src; inverse is the column op col_src += q * col_i.
        for j in 0..h[i].len() {
            let v = &h[i][j] - q * &h[src][j];
            h[i][j] = v;
        }
        for j in 0..u[i].len() {
            let v = &u[i][j] - q * &u[src][j];
            u[i][j] = v;
        }
        for row in uinv.iter_mut() {
            let v = &row[src] + q * &row[i];
            row[src] = v;
        }
    };

    for c in 0..n {
        if r == m {
            break;
        }
        loop {
            let nz: Vec<usize> = (r..m).filter(|&i| !h[i][c].is_zero()).collect();
            if nz.is_empty() {
                break;
            }
            let best = *nz
                .iter()
                .min_by(|&&i, &&j| h[i][c].abs().cmp(&h[j][c].abs()).then(i.cmp(&j)))
                .unwrap();
            if best != r {
                h.swap(r, best);
                u.swap(r, best);
                for row in uinv.iter_mut() {
                    row.swap(r, best);
                }
            }
            if nz.len() == 1 && !h[r][c].is_zero() {
                break;
            }
            let mut reduced = true;
            for i in r + 1..m {
                if !h[i][c].is_zero() {
                    let q = &h[i][c] / &h[r][c];
                    if !q.is_zero() {
                        row_sub(&mut h, &mut u, &mut uinv, i, r, &q);
                    }
                    if !h[i][c].is_zero() {
                        reduced = false;
                    }
                }
            }
            if reduced {
                break;
            }
        }
        if !h[r][c].is_zero() {
            if h[r][c].is_negative() {
                for v in h[r].iter_mut() {
                    *v = -v.clone();
                }
                for v in u[r].iter_mut() {
                    *v = -v.clone();
                }
                for row in uinv.iter_mut() {
                    row[r] = -row[r].clone();
                }
            }
            for i in 0..r {
                let q = h[i][c].div_floor(&h[r][c]);
                if !q.is_zero() {
                    row_sub(&mut h, &mut u, &mut uinv, i, r, &q);
                }
            }
            pivots.push((r, c));
            r += 1;
        }
    }
    HnfUpper { h, u, uinv, pivots }
}

fn reverse_mat(rows: &[Vec<Int>]) -> Vec<Vec<Int>> {
    rows.iter()
        .rev()
        .map(|r| r.iter().rev().cloned().collect())
        .collect()
}

/// Hermite normal form of a full-row-rank integer matrix.
///
/// Returns (H, U) with H = U·W, U unimodular, and H in the row convention
/// used throughout this crate: lower-triangular pivot structure with each
/// row ending at its positive pivot, and entries below a pivot reduced
/// into [0, pivot).
pub fn hnf(w: &IntMatrix) -> Result<(IntMatrix, IntMatrix)> {
    let m = w.nrows();
    let rev = IntMatrix::new(reverse_mat(w.rows()), w.ncols())?;
    let out = hnf_upper(&rev);
    if out.pivots.len() < m {
        return Err(Error::RankDeficient);
    }
    let h = IntMatrix::new(reverse_mat(&out.h), w.ncols())?;
    // U for the reversed problem, conjugated by the row reversal.
    let u = IntMatrix::new(reverse_mat(&out.u), m)?;
    debug_assert_eq!(u.mul(w), h);
    Ok((h, u))
}

struct ColumnHnf {
    /// k×k lower-triangular matrix L with W·Uc = [L | 0].
    l: Vec<Vec<Int>>,
    /// Rows of Uc^{-1}; the first k rows are a basis of Z^n ∩ span(W).
    uc_inv_rows: Vec<Vec<Int>>,
}

/// Column-style HNF via the transpose; requires full row rank.
fn column_hnf(w: &IntMatrix) -> Result<ColumnHnf> {
    let k = w.nrows();
    let n = w.ncols();
    let t = w.transpose(); // n×k
    let out = hnf_upper(&t);
    if out.pivots.len() < k {
        return Err(Error::RankDeficient);
    }
    // H_T = U·Wᵀ upper triangular with pivots (i, i)  ⇒  W·Uᵀ = [L | 0].
    let l: Vec<Vec<Int>> = (0..k)
        .map(|i| (0..k).map(|j| out.h[j][i].clone()).collect())
        .collect();
    // Uc = Uᵀ, so Uc^{-1} = (U^{-1})ᵀ: row j is column j of U^{-1}.
    let uc_inv_rows: Vec<Vec<Int>> = (0..n)
        .map(|j| (0..n).map(|m_| out.uinv[m_][j].clone()).collect())
        .collect();
    Ok(ColumnHnf { l, uc_inv_rows })
}

/// A basis of the saturation Z^n ∩ span(W) of the row lattice of W.
pub fn saturation_basis(w: &IntMatrix) -> Result<IntMatrix> {
    let k = w.nrows();
    let out = column_hnf(w)?;
    IntMatrix::new(out.uc_inv_rows[..k].to_vec(), w.ncols())
}

/// Extend the rows w_1..w_k of a primitive sublattice to a basis of Z^n,
/// keeping the input rows verbatim as the first k rows.
pub fn extend_to_lattice_basis(w: &IntMatrix) -> Result<LatticeBasis> {
    let k = w.nrows();
    let n = w.ncols();
    let out = column_hnf(w)?;
    // Primitive iff the row lattice of L is all of Z^k.
    let diag_one = (0..k).all(|i| out.l[i][i].is_one());
    if !diag_one {
        // Find a standard vector outside the row lattice of L: solve y·L = e_i.
        let lt_rows: Vec<Vec<Rat>> = (0..k)
            .map(|i| (0..k).map(|j| Rat::from_integer(out.l[j][i].clone())).collect())
            .collect();
        for i in 0..k {
            let mut e = vec![Rat::zero(); k];
            e[i] = Rat::one();
            let y = solve_rat(&lt_rows, &e).expect("L is invertible");
            if y.iter().any(|v| !v.is_integer()) {
                return Err(Error::NotPrimitive {
                    witness: out.uc_inv_rows[i].clone(),
                });
            }
        }
    }
    let mut rows = w.rows().to_vec();
    rows.extend(out.uc_inv_rows[k..n].to_vec());
    LatticeBasis::new(IntMatrix::new(rows, n)?)
}

/// An integral basis of Z^n ∩ span(g_1..g_k) whose vectors lie in
/// cone(g_1..g_k). The generators must be linearly independent.
///
/// Starts from the primitive generators and repeatedly swaps in a lattice
/// point of the half-open parallelepiped; the sublattice index strictly
/// decreases, so the loop terminates with a lattice-free parallelepiped.
pub fn basis_in_cone(gens: &[Vec<Rat>], n: usize) -> Result<IntMatrix> {
    let k = gens.len();
    if k == 0 {
        return IntMatrix::new(vec![], n);
    }
    if rank_rat(gens) < k {
        return Err(Error::RankDeficient);
    }
    let mut h: Vec<Vec<Int>> = gens
        .iter()
        .map(|g| primitive_vector(g))
        .collect::<Result<_>>()?;
    let sat = saturation_basis(&IntMatrix::new(h.clone(), n)?)?;
    let sat_t_rows: Vec<Vec<Rat>> = (0..n)
        .map(|j| (0..k).map(|i| Rat::from_integer(sat.row(i)[j].clone())).collect())
        .collect();

    loop {
        // Coordinates of each h_i in the saturation basis; integral by construction.
        let c: Vec<Vec<Int>> = h
            .iter()
            .map(|hi| {
                let x = solve_rat(&sat_t_rows, &int_to_rat_vec(hi)).expect("h_i lies in span");
                x.iter()
                    .map(|v| {
                        debug_assert!(v.is_integer());
                        v.to_integer()
                    })
                    .collect()
            })
            .collect();
        let cm = IntMatrix::new(c.clone(), k)?;
        let index = cm.det_bareiss().abs();
        debug_assert!(!index.is_zero());
        if index.is_one() {
            return IntMatrix::new(h, n);
        }

        let found = parallelepiped_point(&c, k).expect("index > 1 forces a lattice point");
        let (y, lambda) = found;
        // Replace the generator with the largest coefficient.
        let mut j_best = 0;
        for j in 1..k {
            if lambda[j] > lambda[j_best] {
                j_best = j;
            }
        }
        debug_assert!(lambda[j_best].is_positive());
        let p: Vec<Int> = (0..n)
            .map(|m_| {
                let mut acc = Int::zero();
                for (i, yi) in y.iter().enumerate() {
                    acc += yi * &sat.row(i)[m_];
                }
                acc
            })
            .collect();
        h[j_best] = p;
    }
}

/// A nonzero lattice point of the half-open parallelepiped of the rows of C
/// (coordinates w.r.t. the saturation basis), as (y, λ) with y = λ·C,
/// λ ∈ [0,1)^k, λ ≠ 0. None if the parallelepiped is lattice-free.
fn parallelepiped_point(c: &[Vec<Int>], k: usize) -> Option<(Vec<Int>, Vec<Rat>)> {
    let mut lo = vec![Int::zero(); k];
    let mut hi = vec![Int::zero(); k];
    for j in 0..k {
        for row in c {
            if row[j].is_negative() {
                lo[j] += &row[j];
            } else {
                hi[j] += &row[j];
            }
        }
    }
    let ct_rows: Vec<Vec<Rat>> = (0..k)
        .map(|j| (0..k).map(|i| Rat::from_integer(c[i][j].clone())).collect())
        .collect();
    let mut y = lo.clone();
    loop {
        if !is_zero_int_vec(&y) {
            let yr = int_to_rat_vec(&y);
            if let Some(lambda) = solve_rat(&ct_rows, &yr) {
                let inside = lambda.iter().all(|l| !l.is_negative() && *l < Rat::one());
                if inside && !is_zero_vec(&lambda) {
                    return Some((y, lambda));
                }
            }
        }
        // odometer increment over the integer box [lo, hi]
        let mut j = 0;
        loop {
            if j == k {
                return None;
            }
            y[j] += 1;
            if y[j] <= hi[j] {
                break;
            }
            y[j] = lo[j].clone();
            j += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{ints, rat, rats};
    use num::Integer as _;

    #[test]
    fn primitive_vector_examples() {
        assert_eq!(
            primitive_vector(&[rat(1, 2), rat(1, 4)]).unwrap(),
            ints(&[2, 1])
        );
        assert_eq!(primitive_vector(&rats(&[3, 6])).unwrap(), ints(&[1, 2]));
        assert_eq!(
            primitive_vector(&[rat(0, 1), rat(-5, 3)]).unwrap(),
            ints(&[0, -1])
        );
        assert_eq!(primitive_vector(&rats(&[0, 0])), Err(Error::ZeroVector));
    }

    /// Row-lattice membership: is v an integer combination of the rows of m?
    fn in_row_lattice(m: &IntMatrix, v: &[Int]) -> bool {
        let t_rows: Vec<Vec<Rat>> = (0..m.ncols())
            .map(|j| {
                (0..m.nrows())
                    .map(|i| Rat::from_integer(m.row(i)[j].clone()))
                    .collect()
            })
            .collect();
        match solve_rat(&t_rows, &int_to_rat_vec(v)) {
            Some(x) => x.iter().all(|c| c.is_integer()),
            None => false,
        }
    }

    fn check_hnf(w: IntMatrix) {
        let (h, u) = hnf(&w).unwrap();
        assert_eq!(u.mul(&w), h);
        assert!(u.det_bareiss().abs().is_one());
        // mutual row-lattice containment
        for r in h.rows() {
            assert!(in_row_lattice(&w, r));
        }
        for r in w.rows() {
            assert!(in_row_lattice(&h, r));
        }
    }

    #[test]
    fn hnf_examples() {
        let id = IntMatrix::identity(2);
        let (h, u) = hnf(&id).unwrap();
        assert_eq!(h, IntMatrix::identity(2));
        assert_eq!(u, IntMatrix::identity(2));

        let w = IntMatrix::new(vec![ints(&[2, 1]), ints(&[0, 1])], 2).unwrap();
        let (h, _) = hnf(&w).unwrap();
        assert_eq!(h.rows(), &[ints(&[2, 0]), ints(&[0, 1])]);
        check_hnf(w);

        let w = IntMatrix::new(vec![ints(&[2, 0]), ints(&[0, 2])], 2).unwrap();
        let (h, _) = hnf(&w).unwrap();
        assert_eq!(h.rows(), &[ints(&[2, 0]), ints(&[0, 2])]);
        check_hnf(w);

        let dep = IntMatrix::new(vec![ints(&[1, 2]), ints(&[2, 4])], 2).unwrap();
        assert_eq!(hnf(&dep), Err(Error::RankDeficient));
    }

    #[test]
    fn extend_examples() {
        let w = IntMatrix::new(vec![ints(&[1, 0])], 2).unwrap();
        let b = extend_to_lattice_basis(&w).unwrap();
        assert_eq!(b.row(0), &ints(&[1, 0])[..]);

        let w = IntMatrix::new(vec![ints(&[1, 2])], 2).unwrap();
        let b = extend_to_lattice_basis(&w).unwrap();
        assert_eq!(b.row(0), &ints(&[1, 2])[..]);
        assert!(b.matrix().det_bareiss().abs().is_one());

        let w = IntMatrix::new(vec![ints(&[2, 0])], 2).unwrap();
        match extend_to_lattice_basis(&w) {
            Err(Error::NotPrimitive { witness }) => {
                // witness must be in Z² ∩ span but not in the row lattice
                assert_eq!(witness[1], Int::zero());
                assert!(witness[0].is_odd());
            }
            other => panic!("expected NotPrimitive, got {other:?}"),
        }
    }

    #[test]
    fn basis_in_cone_examples() {
        let g = vec![rats(&[1, 0]), rats(&[0, 1])];
        let b = basis_in_cone(&g, 2).unwrap();
        assert_eq!(b.rows(), &[ints(&[1, 0]), ints(&[0, 1])]);

        let g = vec![rats(&[1, 1])];
        let b = basis_in_cone(&g, 2).unwrap();
        assert_eq!(b.rows(), &[ints(&[1, 1])]);

        let g = vec![rats(&[1, 0]), rats(&[1, 2])];
        let b = basis_in_cone(&g, 2).unwrap();
        let m = IntMatrix::new(b.rows().to_vec(), 2).unwrap();
        assert!(m.det_bareiss().abs().is_one());
        // each output vector is a nonnegative combination of the generators
        for w in b.rows() {
            let coeffs = solve_rat(
                &[rats(&[1, 1]), rats(&[0, 2])],
                &int_to_rat_vec(w),
            )
            .unwrap();
            assert!(coeffs.iter().all(|c| !c.is_negative()), "{w:?} outside cone");
        }
    }
}
