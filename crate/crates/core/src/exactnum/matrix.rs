//! Dense rational matrices with exact elimination.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::rational::{self, Rational};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RMatrix {
    rows: usize,
    cols: usize,
    #[serde(with = "rational::serde_vec")]
    data: Vec<Rational>,
}

impl RMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RMatrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    pub fn from_rows(rows: &[Vec<Rational>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |v| v.len());
        if rows.iter().any(|v| v.len() != c) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        Ok(RMatrix {
            rows: r,
            cols: c,
            data: rows.iter().flatten().cloned().collect(),
        })
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_cols(cols: &[Vec<Rational>]) -> Result<Self> {
        Ok(Self::from_rows(cols)?.transpose())
    }

    pub fn from_i64(rows: &[&[i64]]) -> Result<Self> {
        let v: Vec<Vec<Rational>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| rational::int(x)).collect())
            .collect();
        Self::from_rows(&v)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = &self[(i, l)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(l, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Result<Vec<Rational>> {
        if v.len() != self.cols {
            return Err(Error::Dimension(format!(
                "{}x{} times vector of length {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect())
    }

    /// Exact determinant by Bareiss elimination on an integer rescaling.
    pub fn det(&self) -> Result<Rational> {
        if !self.is_square() {
            return Err(Error::Dimension(format!(
                "determinant of {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(Rational::one());
        }
        // Clear denominators row by row; det(M) = det(K) / Π scale_i.
        let mut scale = BigInt::one();
        let mut a: Vec<Vec<BigInt>> = Vec::with_capacity(n);
        for i in 0..n {
            let l = self
                .row(i)
                .iter()
                .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            a.push(
                self.row(i)
                    .iter()
                    .map(|x| x.numer() * (&l / x.denom()))
                    .collect(),
            );
            scale *= l;
        }
        let d = bareiss(&mut a);
        Ok(Rational::new(d, scale))
    }

    /// Solves `self · X = rhs` for square nonsingular `self`.
    pub fn solve(&self, rhs: &RMatrix) -> Result<RMatrix> {
        if !self.is_square() || rhs.rows != self.rows {
            return Err(Error::Dimension("solve needs square system".into()));
        }
        let n = self.rows;
        let w = n + rhs.cols;
        let mut aug: Vec<Vec<Rational>> = (0..n)
            .map(|i| {
                let mut r = self.row(i).to_vec();
                r.extend_from_slice(rhs.row(i));
                r
            })
            .collect();
        for c in 0..n {
            let p = (c..n)
                .find(|&r| !aug[r][c].is_zero())
                .ok_or_else(|| Error::Singular("singular matrix in solve".into()))?;
            aug.swap(c, p);
            let inv = aug[c][c].recip();
            for x in aug[c][c..w].iter_mut() {
                *x *= &inv;
            }
            let pivot_row = aug[c].clone();
            for (r, row) in aug.iter_mut().enumerate() {
                if r == c || row[c].is_zero() {
                    continue;
                }
                let f = row[c].clone();
                for j in c..w {
                    if !pivot_row[j].is_zero() {
                        row[j] -= &f * &pivot_row[j];
                    }
                }
            }
        }
        let mut out = RMatrix::zeros(n, rhs.cols);
        for i in 0..n {
            for j in 0..rhs.cols {
                out[(i, j)] = aug[i][n + j].clone();
            }
        }
        Ok(out)
    }

    pub fn solve_vec(&self, b: &[Rational]) -> Result<Vec<Rational>> {
        let rhs = RMatrix::from_cols(&[b.to_vec()])?;
        Ok(self.solve(&rhs)?.col(0))
    }

    pub fn inverse(&self) -> Result<RMatrix> {
        self.solve(&RMatrix::identity(self.rows))
    }

    /// Rank by exact row reduction.
    pub fn rank(&self) -> usize {
        let mut a: Vec<Vec<Rational>> = (0..self.rows).map(|i| self.row(i).to_vec()).collect();
        let mut rank = 0;
        for c in 0..self.cols {
            let Some(p) = (rank..self.rows).find(|&r| !a[r][c].is_zero()) else {
                continue;
            };
            a.swap(rank, p);
            let pr = a[rank].clone();
            for row in a.iter_mut().skip(rank + 1) {
                if row[c].is_zero() {
                    continue;
                }
                let f = &row[c] / &pr[c];
                for j in c..self.cols {
                    row[j] -= &f * &pr[j];
                }
            }
            rank += 1;
        }
        rank
    }
}

/// In-place Bareiss elimination; returns the determinant.
fn bareiss(a: &mut [Vec<BigInt>]) -> BigInt {
    let n = a.len();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n.saturating_sub(1) {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

impl std::ops::Index<(usize, usize)> for RMatrix {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for RMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Display for RMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let cells: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

/// `b×b` matrix with 1 on the diagonal and 2 elsewhere.
pub fn upsilon(b: usize) -> RMatrix {
    let mut m = RMatrix::zeros(b, b);
    for i in 0..b {
        for j in 0..b {
            m[(i, j)] = rational::int(if i == j { 1 } else { 2 });
        }
    }
    m
}

/// `upsilon(b)` with the off-diagonal entries of row and column `a` (1-based) set to 0.
pub fn upsilon_punctured(b: usize, a: usize) -> Result<RMatrix> {
    if a == 0 || a > b {
        return Err(Error::OutOfRange(format!("puncture index {a} not in 1..={b}")));
    }
    let mut m = upsilon(b);
    let a = a - 1;
    for j in 0..b {
        if j != a {
            m[(a, j)] = Rational::zero();
            m[(j, a)] = Rational::zero();
        }
    }
    Ok(m)
}

/// Affine coordinates of `p` with respect to the vertex list `verts`.
///
/// Solves `Σ λ_i v_i = p`, `Σ λ_i = 1`. Points off the affine hull are rejected;
/// points outside the simplex come back with some negative coordinate.
pub fn barycentric_coords(p: &[Rational], verts: &[Vec<Rational>]) -> Result<Vec<Rational>> {
    let m = verts.len();
    if m == 0 {
        return Err(Error::Dimension("empty simplex".into()));
    }
    let dim = p.len();
    if verts.iter().any(|v| v.len() != dim) {
        return Err(Error::Dimension("vertex and point dimensions differ".into()));
    }
    // Augmented (dim+1) x (m+1) system.
    let rows = dim + 1;
    let mut a: Vec<Vec<Rational>> = Vec::with_capacity(rows);
    for i in 0..dim {
        let mut r: Vec<Rational> = verts.iter().map(|v| v[i].clone()).collect();
        r.push(p[i].clone());
        a.push(r);
    }
    a.push(vec![Rational::one(); m + 1]);

    let mut r = 0;
    for c in 0..m {
        let Some(pr) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            return Err(Error::Singular("simplex vertices are affinely dependent".into()));
        };
        a.swap(r, pr);
        let inv = a[r][c].recip();
        for x in a[r][c..].iter_mut() {
            *x *= &inv;
        }
        let prow = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for j in c..=m {
                if !prow[j].is_zero() {
                    row[j] -= &f * &prow[j];
                }
            }
        }
        r += 1;
    }
    if a[r..].iter().any(|row| !row[m].is_zero()) {
        return Err(Error::Domain("point is off the affine hull of the simplex".into()));
    }
    Ok((0..m).map(|i| a[i][m].clone()).collect())
}

/// `Σ λ_i v_i`.
pub fn combine(lambda: &[Rational], verts: &[Vec<Rational>]) -> Vec<Rational> {
    let dim = verts.first().map_or(0, |v| v.len());
    let mut out = vec![Rational::zero(); dim];
    for (l, v) in lambda.iter().zip(verts) {
        if l.is_zero() {
            continue;
        }
        for (o, x) in out.iter_mut().zip(v) {
            *o += l * x;
        }
    }
    out
}

/// Squared Euclidean distance.
pub fn dist2(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter()
        .zip(b)
        .map(|(x, y)| {
            let d = x - y;
            &d * &d
        })
        .sum()
}

/// Sign of the determinant, as -1, 0 or 1.
pub fn det_sign(m: &RMatrix) -> Result<i32> {
    let d = m.det()?;
    Ok(if d.is_zero() {
        0
    } else if d.is_positive() {
        1
    } else {
        -1
    })
}
