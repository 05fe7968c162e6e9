//! Invariant factors via the Smith normal form of XI − A over F[X],
//! elementary divisors, and similarity testing.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::ffpoly::{poly_factor, Poly};

use super::Matrix;

/// The divisibility chain q_1 | q_2 | … | q_r of monic nonconstant
/// polynomials; the product of their degrees equals the matrix size and q_r
/// is the minimal polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantFactors {
    pub factors: Vec<Poly>,
}

impl InvariantFactors {
    pub fn new(factors: Vec<Poly>) -> Result<InvariantFactors> {
        for w in factors.windows(2) {
            if !w[1].rem(&w[0])?.is_zero() {
                return Err(Error::Parse("invariant factors must form a chain".into()));
            }
        }
        if factors.iter().any(|q| !q.is_monic() || q.is_constant()) {
            return Err(Error::NotMonic);
        }
        Ok(InvariantFactors { factors })
    }

    pub fn minimal_polynomial(&self) -> &Poly {
        self.factors.last().expect("nonempty chain")
    }

    pub fn size(&self) -> usize {
        self.factors.iter().map(|q| q.degree()).sum()
    }

    pub fn is_cyclic(&self) -> bool {
        self.factors.len() == 1
    }
}

/// Map from each monic irreducible p to the ascending exponent multiset of
/// its prime-power elementary divisors.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ElementaryDivisors {
    pub parts: BTreeMap<Poly, Vec<usize>>,
}

impl ElementaryDivisors {
    pub fn insert(&mut self, p: Poly, exponent: usize) {
        let exps = self.parts.entry(p).or_default();
        let pos = exps.partition_point(|&e| e <= exponent);
        exps.insert(pos, exponent);
    }

    pub fn size(&self) -> usize {
        self.parts
            .iter()
            .map(|(p, exps)| p.degree() * exps.iter().sum::<usize>())
            .sum()
    }
}

/// Smith normal form diagonal of XI − A, computed over F[X] as a matrix of
/// polynomials, pivoting on a least-degree nonzero entry.
fn smith_diagonal(a: &Matrix) -> Vec<Poly> {
    let field = a.field().clone();
    let n = a.size();
    // XI − A as a grid of polynomials
    let mut m: Vec<Vec<Poly>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let mut c = Poly::constant(&field, field.neg(a.at(i, j)));
                    if i == j {
                        c = &c + &Poly::x(&field);
                    }
                    c
                })
                .collect()
        })
        .collect();
    for t in 0..n {
        loop {
            // pick a least-degree nonzero pivot in the trailing submatrix
            let mut best: Option<(usize, usize)> = None;
            for i in t..n {
                for j in t..n {
                    if m[i][j].is_zero() {
                        continue;
                    }
                    if best.is_none_or(|(bi, bj)| m[i][j].degree() < m[bi][bj].degree()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else {
                return (0..n).map(|i| m[i][i].clone()).collect();
            };
            m.swap(t, bi);
            for row in m.iter_mut() {
                row.swap(t, bj);
            }
            let mut again = false;
            for i in t + 1..n {
                if m[i][t].is_zero() {
                    continue;
                }
                let (q, _) = m[i][t].divrem(&m[t][t]).unwrap();
                for j in t..n {
                    m[i][j] = &m[i][j] - &(&q * &m[t][j]);
                }
                again |= !m[i][t].is_zero();
            }
            for j in t + 1..n {
                if m[t][j].is_zero() {
                    continue;
                }
                let (q, _) = m[t][j].divrem(&m[t][t]).unwrap();
                for i in t..n {
                    m[i][j] = &m[i][j] - &(&q * &m[i][t]);
                }
                again |= !m[t][j].is_zero();
            }
            if again {
                continue;
            }
            // pivot row and column are clear; force divisibility into the rest
            let offender = (t + 1..n)
                .flat_map(|i| (t + 1..n).map(move |j| (i, j)))
                .find(|&(i, j)| !m[i][j].rem(&m[t][t]).unwrap().is_zero());
            match offender {
                Some((i, _)) => {
                    let row = m[i].clone();
                    for j in t..n {
                        m[t][j] = &m[t][j] + &row[j];
                    }
                }
                None => break,
            }
        }
    }
    (0..n).map(|i| m[i][i].clone()).collect()
}

/// Invariant factors of a matrix: the nonconstant monic diagonal entries of
/// the Smith normal form of XI − A, in divisibility order.
pub fn invariant_factors(a: &Matrix) -> InvariantFactors {
    let diag = smith_diagonal(a);
    let factors: Vec<Poly> = diag
        .into_iter()
        .filter(|d| !d.is_constant())
        .map(|d| d.make_monic())
        .collect();
    InvariantFactors { factors }
}

/// Splits each invariant factor into prime powers.
pub fn elementary_divisors(invs: &InvariantFactors) -> ElementaryDivisors {
    let mut ed = ElementaryDivisors::default();
    for q in &invs.factors {
        for (p, e) in poly_factor(q).expect("nonzero factor").factors {
            ed.insert(p, e);
        }
    }
    ed
}

/// Rebuilds the invariant-factor chain from elementary divisors: for each
/// prime the largest remaining exponent feeds the last invariant factor.
pub fn recombine(ed: &ElementaryDivisors) -> InvariantFactors {
    let r = ed.parts.values().map(|v| v.len()).max().unwrap_or(0);
    let mut factors = Vec::with_capacity(r);
    for slot in 0..r {
        // slot 0 is the last (largest) invariant factor
        let mut q: Option<Poly> = None;
        for (p, exps) in &ed.parts {
            if slot >= exps.len() {
                continue;
            }
            let e = exps[exps.len() - 1 - slot];
            let pe = p.pow(e);
            q = Some(match q {
                Some(acc) => &acc * &pe,
                None => pe,
            });
        }
        factors.push(q.expect("slot nonempty"));
    }
    factors.reverse();
    InvariantFactors { factors }
}

/// Two matrices are similar iff they share invariant factors.
pub fn similar(a: &Matrix, b: &Matrix) -> Result<bool> {
    if a.size() != b.size() || a.field() != b.field() {
        return Err(Error::ShapeMismatch);
    }
    Ok(invariant_factors(a) == invariant_factors(b))
}
