//! Exact scalars and small dense linear algebra.
//!
//! All geometry in this crate runs on arbitrary-precision rationals; there is
//! no floating point anywhere. Determinants of integer matrices use
//! fraction-free (Bareiss) elimination so intermediates stay integral.

use crate::error::{Error, Result};
use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Integer, One, Signed, Zero};

pub type Int = BigInt;
pub type Rat = BigRational;

pub fn int(n: i64) -> Int {
    Int::from(n)
}

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(Int::from(n), Int::from(d))
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(Int::from(n))
}

pub fn floor_int(r: &Rat) -> Int {
    r.floor().to_integer()
}

pub fn ceil_int(r: &Rat) -> Int {
    r.ceil().to_integer()
}

pub fn ints(v: &[i64]) -> Vec<Int> {
    v.iter().map(|&x| Int::from(x)).collect()
}

pub fn rats(v: &[i64]) -> Vec<Rat> {
    v.iter().map(|&x| rat_int(x)).collect()
}

pub fn int_to_rat_vec(v: &[Int]) -> Vec<Rat> {
    v.iter().map(|x| Rat::from_integer(x.clone())).collect()
}

pub fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    debug_assert_eq!(a.len(), b.len());
    let mut acc = Rat::zero();
    for (x, y) in a.iter().zip(b) {
        acc += x * y;
    }
    acc
}

pub fn dot_int(a: &[Int], b: &[Int]) -> Int {
    debug_assert_eq!(a.len(), b.len());
    let mut acc = Int::zero();
    for (x, y) in a.iter().zip(b) {
        acc += x * y;
    }
    acc
}

/// Integral row against a rational point.
pub fn dot_ir(a: &[Int], x: &[Rat]) -> Rat {
    debug_assert_eq!(a.len(), x.len());
    let mut acc = Rat::zero();
    for (c, v) in a.iter().zip(x) {
        acc += Rat::from_integer(c.clone()) * v;
    }
    acc
}

pub fn is_zero_vec(v: &[Rat]) -> bool {
    v.iter().all(|x| x.is_zero())
}

pub fn is_zero_int_vec(v: &[Int]) -> bool {
    v.iter().all(|x| x.is_zero())
}

pub fn add_vec(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub_vec(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale_vec(a: &[Rat], s: &Rat) -> Vec<Rat> {
    a.iter().map(|x| x * s).collect()
}

pub fn neg_int_vec(a: &[Int]) -> Vec<Int> {
    a.iter().map(|x| -x).collect()
}

/// A dense integer matrix stored row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: Vec<Vec<Int>>,
    ncols: usize,
}

impl IntMatrix {
    pub fn new(rows: Vec<Vec<Int>>, ncols: usize) -> Result<Self> {
        for r in &rows {
            if r.len() != ncols {
                return Err(Error::DimensionMismatch {
                    expected: ncols,
                    got: r.len(),
                });
            }
        }
        Ok(IntMatrix { rows, ncols })
    }

    pub fn identity(n: usize) -> Self {
        let rows = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { Int::one() } else { Int::zero() })
                    .collect()
            })
            .collect();
        IntMatrix { rows, ncols: n }
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rows(&self) -> &[Vec<Int>] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &[Int] {
        &self.rows[i]
    }

    pub fn into_rows(self) -> Vec<Vec<Int>> {
        self.rows
    }

    pub fn transpose(&self) -> IntMatrix {
        let rows = (0..self.ncols)
            .map(|j| self.rows.iter().map(|r| r[j].clone()).collect())
            .collect();
        IntMatrix {
            rows,
            ncols: self.nrows(),
        }
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.ncols, other.nrows());
        let rows = self
            .rows
            .iter()
            .map(|r| {
                (0..other.ncols)
                    .map(|j| {
                        let mut acc = Int::zero();
                        for (k, x) in r.iter().enumerate() {
                            acc += x * &other.rows[k][j];
                        }
                        acc
                    })
                    .collect()
            })
            .collect();
        IntMatrix {
            rows,
            ncols: other.ncols,
        }
    }

    /// Determinant of a square matrix by fraction-free Gaussian elimination.
    pub fn det_bareiss(&self) -> Int {
        let n = self.nrows();
        assert_eq!(n, self.ncols, "determinant of non-square matrix");
        if n == 0 {
            return Int::one();
        }
        let mut m: Vec<Vec<Int>> = self.rows.clone();
        let mut prev = Int::one();
        let mut sign = 1i8;
        for k in 0..n - 1 {
            if m[k][k].is_zero() {
                match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                    Some(i) => {
                        m.swap(k, i);
                        sign = -sign;
                    }
                    None => return Int::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                    // Bareiss: division by the previous pivot is exact.
                    m[i][j] = &num / &prev;
                }
                m[i][k] = Int::zero();
            }
            prev = m[k][k].clone();
        }
        let d = m[n - 1][n - 1].clone();
        if sign < 0 {
            -d
        } else {
            d
        }
    }

    pub fn rank(&self) -> usize {
        rank_rat(
            &self
                .rows
                .iter()
                .map(|r| int_to_rat_vec(r))
                .collect::<Vec<_>>(),
        )
    }
}

/// An n×n integral matrix with determinant ±1; its rows generate Z^n.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeBasis {
    mat: IntMatrix,
}

impl LatticeBasis {
    pub fn new(mat: IntMatrix) -> Result<Self> {
        if mat.nrows() != mat.ncols() {
            return Err(Error::DimensionMismatch {
                expected: mat.ncols(),
                got: mat.nrows(),
            });
        }
        let d = mat.det_bareiss();
        if !d.abs().is_one() {
            return Err(Error::RankDeficient);
        }
        Ok(LatticeBasis { mat })
    }

    pub fn dim(&self) -> usize {
        self.mat.ncols()
    }

    pub fn rows(&self) -> &[Vec<Int>] {
        self.mat.rows()
    }

    pub fn row(&self, i: usize) -> &[Int] {
        self.mat.row(i)
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.mat
    }
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(m: &mut Vec<Vec<Rat>>) -> Vec<usize> {
    let nrows = m.len();
    if nrows == 0 {
        return vec![];
    }
    let ncols = m[0].len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(pr) = (r..nrows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, pr);
        let inv = m[r][c].recip();
        for j in c..ncols {
            let v = &m[r][j] * &inv;
            m[r][j] = v;
        }
        for i in 0..nrows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..ncols {
                    let v = &m[i][j] - &f * &m[r][j];
                    m[i][j] = v;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == nrows {
            break;
        }
    }
    pivots
}

pub fn rank_rat(rows: &[Vec<Rat>]) -> usize {
    let mut m: Vec<Vec<Rat>> = rows.to_vec();
    rref(&mut m).len()
}

/// Any exact solution x of `rows · x = rhs`, or None if inconsistent.
pub fn solve_rat(rows: &[Vec<Rat>], rhs: &[Rat]) -> Option<Vec<Rat>> {
    assert_eq!(rows.len(), rhs.len());
    if rows.is_empty() {
        return Some(vec![]);
    }
    let n = rows[0].len();
    let mut aug: Vec<Vec<Rat>> = rows
        .iter()
        .zip(rhs)
        .map(|(r, b)| {
            let mut v = r.clone();
            v.push(b.clone());
            v
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.contains(&n) {
        return None; // pivot in the rhs column: inconsistent
    }
    let mut x = vec![Rat::zero(); n];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = aug[i][n].clone();
    }
    Some(x)
}

/// A basis of the solution space of `rows · x = 0` in dimension `n`.
pub fn nullspace(rows: &[Vec<Rat>], n: usize) -> Vec<Vec<Rat>> {
    let mut m: Vec<Vec<Rat>> = rows.to_vec();
    let pivots = rref(&mut m);
    let mut basis = Vec::new();
    for free in 0..n {
        if pivots.contains(&free) {
            continue;
        }
        let mut v = vec![Rat::zero(); n];
        v[free] = Rat::one();
        for (i, &p) in pivots.iter().enumerate() {
            v[p] = -m[i][free].clone();
        }
        basis.push(v);
    }
    basis
}

/// Scale a rational vector to an integral one by the lcm of denominators.
pub fn clear_denominators(v: &[Rat]) -> Vec<Int> {
    let mut l = Int::one();
    for x in v {
        l = l.lcm(x.denom());
    }
    v.iter().map(|x| (x * Rat::from_integer(l.clone())).to_integer()).collect()
}

pub fn gcd_of(v: &[Int]) -> Int {
    let mut g = Int::zero();
    for x in v {
        g = g.gcd(x);
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bareiss_det() {
        let m = IntMatrix::new(vec![ints(&[2, 1]), ints(&[0, 3])], 2).unwrap();
        assert_eq!(m.det_bareiss(), int(6));
        let m = IntMatrix::new(vec![ints(&[1, 2]), ints(&[2, 4])], 2).unwrap();
        assert_eq!(m.det_bareiss(), int(0));
        let m = IntMatrix::new(
            vec![ints(&[2, 0, 1]), ints(&[1, 3, -1]), ints(&[0, 1, 4])],
            3,
        )
        .unwrap();
        // expansion: 2*(12+1) - 0 + 1*(1-0) = 27
        assert_eq!(m.det_bareiss(), int(27));
    }

    #[test]
    fn solve_and_nullspace() {
        let rows = vec![rats(&[1, 1]), rats(&[1, -1])];
        let x = solve_rat(&rows, &rats(&[3, 1])).unwrap();
        assert_eq!(x, rats(&[2, 1]));
        assert!(solve_rat(&vec![rats(&[1, 1]), rats(&[2, 2])], &rats(&[1, 3])).is_none());

        let ns = nullspace(&[rats(&[1, 2, 3])], 3);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            assert!(dot(&rats(&[1, 2, 3]), v).is_zero());
        }
    }

    #[test]
    fn lattice_basis_rejects_singular() {
        let m = IntMatrix::new(vec![ints(&[2, 0]), ints(&[0, 1])], 2).unwrap();
        assert!(LatticeBasis::new(m).is_err());
        let m = IntMatrix::new(vec![ints(&[1, 2]), ints(&[0, 1])], 2).unwrap();
        assert!(LatticeBasis::new(m).is_ok());
    }
}
