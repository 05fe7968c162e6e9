//! Dense square matrices over a finite field: companion matrices, direct
//! sums, Jordan blocks, polynomial evaluation at a matrix, invariant factors
//! and similarity, kernel descriptions and the two-companion span dimension.

mod kernel;
mod smith;
mod text;

pub use kernel::{kernel_description, nullity_sequence, span_dimension_cd, KernelDescription};
pub use smith::{
    elementary_divisors, invariant_factors, recombine, similar, ElementaryDivisors,
    InvariantFactors,
};
pub use text::{format_matrix, parse_matrix};

use crate::error::{Error, Result};
use crate::ffpoly::{Fe, Field, Poly};

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    n: usize,
    entries: Vec<Fe>,
}

impl std::fmt::Debug for Matrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "Matrix {}x{} over {}:", self.n, self.n, self.field)?;
        for i in 0..self.n {
            let row: Vec<String> = (0..self.n)
                .map(|j| self.at(i, j).code().to_string())
                .collect();
            writeln!(f, "  [{}]", row.join(" "))?;
        }
        Ok(())
    }
}

impl Matrix {
    pub fn zero(field: &Field, n: usize) -> Matrix {
        Matrix {
            field: field.clone(),
            n,
            entries: vec![field.zero(); n * n],
        }
    }

    pub fn identity(field: &Field, n: usize) -> Matrix {
        let mut m = Matrix::zero(field, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn scalar(field: &Field, n: usize, c: Fe) -> Matrix {
        let mut m = Matrix::zero(field, n);
        for i in 0..n {
            m.set(i, i, c);
        }
        m
    }

    pub fn from_rows(field: &Field, rows: &[Vec<Fe>]) -> Matrix {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "matrix must be square");
        Matrix {
            field: field.clone(),
            n,
            entries: rows.iter().flatten().copied().collect(),
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn at(&self, i: usize, j: usize) -> Fe {
        self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Fe) {
        self.entries[i * self.n + j] = v;
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        if self.n != other.n || self.field != other.field {
            return Err(Error::ShapeMismatch);
        }
        let f = &self.field;
        let entries = self
            .entries
            .iter()
            .zip(other.entries.iter())
            .map(|(&a, &b)| f.add(a, b))
            .collect();
        Ok(Matrix {
            field: f.clone(),
            n: self.n,
            entries,
        })
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.n != other.n || self.field != other.field {
            return Err(Error::ShapeMismatch);
        }
        let f = &self.field;
        let n = self.n;
        let mut out = Matrix::zero(f, n);
        for i in 0..n {
            for k in 0..n {
                let a = self.at(i, k);
                if a == f.zero() {
                    continue;
                }
                for j in 0..n {
                    let v = f.add(out.at(i, j), f.mul(a, other.at(k, j)));
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: Fe) -> Matrix {
        let f = &self.field;
        Matrix {
            field: f.clone(),
            n: self.n,
            entries: self.entries.iter().map(|&a| f.mul(a, c)).collect(),
        }
    }

    pub fn pow(&self, e: usize) -> Matrix {
        let mut acc = Matrix::identity(&self.field, self.n);
        for _ in 0..e {
            acc = acc.mul(self).unwrap();
        }
        acc
    }

    pub fn trace(&self) -> Fe {
        let f = &self.field;
        (0..self.n).fold(f.zero(), |acc, i| f.add(acc, self.at(i, i)))
    }

    pub fn apply(&self, v: &[Fe]) -> Vec<Fe> {
        let f = &self.field;
        assert_eq!(v.len(), self.n);
        (0..self.n)
            .map(|i| (0..self.n).fold(f.zero(), |acc, j| f.add(acc, f.mul(self.at(i, j), v[j]))))
            .collect()
    }

    /// Row echelon form in place; returns the rank.
    fn echelonize(field: &Field, rows: &mut [Vec<Fe>]) -> usize {
        let ncols = rows.first().map_or(0, |r| r.len());
        Matrix::echelonize_within(field, rows, ncols)
    }

    /// Row echelon form pivoting only on the first `pivot_cols` columns;
    /// later columns are carried along (for augmented systems).
    pub(crate) fn echelonize_within(
        field: &Field,
        rows: &mut [Vec<Fe>],
        pivot_cols: usize,
    ) -> usize {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        let mut rank = 0;
        for col in 0..pivot_cols {
            let pivot = (rank..nrows).find(|&r| rows[r][col] != field.zero());
            let Some(pr) = pivot else { continue };
            rows.swap(rank, pr);
            let inv = field.inv(rows[rank][col]).unwrap();
            for j in col..ncols {
                rows[rank][j] = field.mul(rows[rank][j], inv);
            }
            for r in 0..nrows {
                if r == rank || rows[r][col] == field.zero() {
                    continue;
                }
                let factor = rows[r][col];
                for j in col..ncols {
                    let sub = field.mul(factor, rows[rank][j]);
                    rows[r][j] = field.sub(rows[r][j], sub);
                }
            }
            rank += 1;
            if rank == nrows {
                break;
            }
        }
        rank
    }

    pub fn rank(&self) -> usize {
        let mut rows: Vec<Vec<Fe>> = (0..self.n)
            .map(|i| (0..self.n).map(|j| self.at(i, j)).collect())
            .collect();
        Matrix::echelonize(&self.field, &mut rows)
    }

    pub fn nullity(&self) -> usize {
        self.n - self.rank()
    }

    pub fn det(&self) -> Fe {
        let f = self.field.clone();
        let n = self.n;
        let mut a = self.entries.clone();
        let mut det = f.one();
        for col in 0..n {
            let pivot = (col..n).find(|&r| a[r * n + col] != f.zero());
            let Some(pr) = pivot else { return f.zero() };
            if pr != col {
                for j in 0..n {
                    a.swap(pr * n + j, col * n + j);
                }
                det = f.neg(det);
            }
            let pv = a[col * n + col];
            det = f.mul(det, pv);
            let inv = f.inv(pv).unwrap();
            for r in col + 1..n {
                let factor = f.mul(a[r * n + col], inv);
                if factor == f.zero() {
                    continue;
                }
                for j in col..n {
                    let sub = f.mul(factor, a[col * n + j]);
                    a[r * n + j] = f.sub(a[r * n + j], sub);
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Result<Matrix> {
        let f = self.field.clone();
        let n = self.n;
        let mut rows: Vec<Vec<Fe>> = (0..n)
            .map(|i| {
                let mut r: Vec<Fe> = (0..n).map(|j| self.at(i, j)).collect();
                r.extend((0..n).map(|j| if i == j { f.one() } else { f.zero() }));
                r
            })
            .collect();
        let rank = Matrix::echelonize_within(&f, &mut rows, n);
        if rank < n {
            return Err(Error::Singular);
        }
        let mut out = Matrix::zero(&f, n);
        for i in 0..n {
            for j in 0..n {
                out.set(i, j, rows[i][n + j]);
            }
        }
        Ok(out)
    }

    /// Basis of the null space, as row vectors in reduced form.
    pub fn null_space(&self) -> Vec<Vec<Fe>> {
        let f = self.field.clone();
        let n = self.n;
        let mut rows: Vec<Vec<Fe>> = (0..n)
            .map(|i| (0..n).map(|j| self.at(i, j)).collect())
            .collect();
        let rank = Matrix::echelonize(&f, &mut rows);
        let mut pivots = Vec::new();
        let mut r = 0;
        for col in 0..n {
            if r < rank && rows[r][col] == f.one() && pivots.len() == r {
                pivots.push(col);
                r += 1;
            }
        }
        let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut v = vec![f.zero(); n];
                v[fc] = f.one();
                for (ri, &pc) in pivots.iter().enumerate() {
                    v[pc] = f.neg(rows[ri][fc]);
                }
                v
            })
            .collect()
    }
}

/// Companion matrix of a monic polynomial of degree at least 1.
pub fn companion(f: &Poly) -> Result<Matrix> {
    if !f.is_monic() {
        return Err(Error::NotMonic);
    }
    if f.degree() < 1 {
        return Err(Error::ConstantPolynomial);
    }
    let field = f.field().clone();
    let n = f.degree();
    let mut m = Matrix::zero(&field, n);
    for i in 1..n {
        m.set(i, i - 1, field.one());
    }
    for i in 0..n {
        m.set(i, n - 1, field.neg(f.coeff(i)));
    }
    Ok(m)
}

/// Jordan block with eigenvalue `a` and ones on the superdiagonal.
pub fn jordan_block(field: &Field, a: Fe, size: usize) -> Matrix {
    assert!(size >= 1, "empty Jordan block");
    let mut m = Matrix::scalar(field, size, a);
    for i in 0..size - 1 {
        m.set(i, i + 1, field.one());
    }
    m
}

pub fn direct_sum(blocks: &[Matrix]) -> Result<Matrix> {
    let first = blocks.first().ok_or(Error::ShapeMismatch)?;
    let field = first.field.clone();
    if blocks.iter().any(|b| b.field != field) {
        return Err(Error::ShapeMismatch);
    }
    let n: usize = blocks.iter().map(|b| b.n).sum();
    let mut m = Matrix::zero(&field, n);
    let mut off = 0;
    for b in blocks {
        for i in 0..b.n {
            for j in 0..b.n {
                m.set(off + i, off + j, b.at(i, j));
            }
        }
        off += b.n;
    }
    Ok(m)
}

/// `g(A)` by Horner evaluation.
pub fn evaluate_poly(g: &Poly, a: &Matrix) -> Result<Matrix> {
    if g.field() != &a.field {
        return Err(Error::ShapeMismatch);
    }
    let field = a.field.clone();
    let mut acc = Matrix::zero(&field, a.n);
    for i in (0..=g.degree()).rev() {
        acc = acc.mul(a)?;
        let c = g.coeff(i);
        if c != field.zero() {
            acc = acc.add(&Matrix::scalar(&field, a.n, c))?;
        }
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffpoly::Field;

    fn gf(p: u64) -> Field {
        Field::prime(p)
    }

    fn poly(f: &Field, codes: &[u64]) -> Poly {
        Poly::from_codes(f, codes)
    }

    #[test]
    fn companion_examples() {
        let f2 = gf(2);
        let c = companion(&poly(&f2, &[1, 1, 1])).unwrap();
        assert_eq!(
            c,
            Matrix::from_rows(&f2, &[vec![Fe(0), Fe(1)], vec![Fe(1), Fe(1)]])
        );
        let one = companion(&Poly::x(&f2)).unwrap();
        assert_eq!(one, Matrix::zero(&f2, 1));
        let f3 = gf(3);
        let c3 = companion(&poly(&f3, &[2, 2, 1])).unwrap();
        assert_eq!(
            c3,
            Matrix::from_rows(&f3, &[vec![Fe(0), Fe(1)], vec![Fe(1), Fe(1)]])
        );
        assert_eq!(companion(&poly(&f3, &[1, 2])).unwrap_err(), Error::NotMonic);
        assert_eq!(
            companion(&Poly::one(&f2)).unwrap_err(),
            Error::ConstantPolynomial
        );
    }

    #[test]
    fn jordan_and_direct_sum() {
        let f2 = gf(2);
        let j = jordan_block(&f2, Fe(0), 2);
        assert_eq!(
            j,
            Matrix::from_rows(&f2, &[vec![Fe(0), Fe(1)], vec![Fe(0), Fe(0)]])
        );
        let m = jordan_block(&f2, Fe(1), 2);
        assert_eq!(direct_sum(std::slice::from_ref(&m)).unwrap(), m);
        let s = direct_sum(&[
            jordan_block(&f2, Fe(0), 3),
            jordan_block(&f2, Fe(0), 1),
            jordan_block(&f2, Fe(1), 1),
        ])
        .unwrap();
        assert_eq!(s.size(), 5);
        assert_eq!(s.at(0, 1), Fe(1));
        assert_eq!(s.at(4, 4), Fe(1));
        assert_eq!(s.at(3, 3), Fe(0));
    }

    #[test]
    fn evaluate_poly_examples() {
        let f2 = gf(2);
        let cf = companion(&poly(&f2, &[1, 1, 0, 0, 1])).unwrap();
        assert_eq!(evaluate_poly(&Poly::x(&f2), &cf).unwrap(), cf);
        let g = poly(&f2, &[0, 1, 1]);
        let m = evaluate_poly(&g, &cf).unwrap();
        let col: Vec<Fe> = (0..4).map(|i| m.at(i, 0)).collect();
        assert_eq!(col, vec![Fe(0), Fe(1), Fe(1), Fe(0)]);
        assert_eq!(
            evaluate_poly(&Poly::zero(&f2), &cf).unwrap(),
            Matrix::zero(&f2, 4)
        );
    }

    #[test]
    fn rank_det_inverse() {
        let f3 = gf(3);
        let m = Matrix::from_rows(&f3, &[vec![Fe(1), Fe(2)], vec![Fe(2), Fe(1)]]);
        // det = 1 − 4 = −3 ≡ 0 (mod 3), so m is singular of rank 1
        assert_eq!(m.rank(), 1);
        assert_eq!(m.det(), Fe(0));
        assert_eq!(m.inverse().unwrap_err(), Error::Singular);
        let m2 = Matrix::from_rows(&f3, &[vec![Fe(1), Fe(2)], vec![Fe(2), Fe(2)]]);
        let inv = m2.inverse().unwrap();
        assert_eq!(m2.mul(&inv).unwrap(), Matrix::identity(&f3, 2));
        assert_eq!(m2.det(), Fe(1)); // 2 − 4 = −2 ≡ 1 mod 3
        assert_eq!(m2.trace(), Fe(0));
    }

    #[test]
    fn null_space_of_nilpotent_block() {
        let f2 = gf(2);
        let j = jordan_block(&f2, Fe(0), 3);
        let ns = j.null_space();
        assert_eq!(ns.len(), 1);
        assert_eq!(j.apply(&ns[0]), vec![Fe(0); 3]);
    }
}
