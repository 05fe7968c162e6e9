//! Kernel of y(g(C_f)) without building the matrix, nullity sequences of
//! prime powers, and the span dimension of products of two companion
//! matrices.

use crate::error::{Error, Result};
use crate::ffpoly::{is_irreducible, Fe, Poly};

use super::{companion, evaluate_poly, Matrix};

/// The kernel of y(g(C_f)): z = gcd(y(g(X)) mod f, f), h = f/z, and the
/// coordinate vectors [h], [Xh], …, [X^{d−1}h] forming a basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelDescription {
    pub z: Poly,
    pub d: usize,
    pub h: Poly,
    pub basis: Vec<Vec<Fe>>,
}

pub fn kernel_description(y: &Poly, g: &Poly, f: &Poly) -> Result<KernelDescription> {
    if !f.is_monic() {
        return Err(Error::NotMonic);
    }
    if f.degree() < 1 {
        return Err(Error::ConstantPolynomial);
    }
    let n = f.degree();
    let yg = y.compose(g).rem(f)?;
    let z = if yg.is_zero() { f.clone() } else { yg.gcd(f)? };
    let d = if z.is_constant() { 0 } else { z.degree() };
    let h = f.div_exact(&z.make_monic());
    let basis = (0..d)
        .map(|j| {
            let xjh = h.mul_xpow(j);
            (0..n).map(|i| xjh.coeff(i)).collect()
        })
        .collect();
    Ok(KernelDescription {
        z: z.make_monic(),
        d,
        h,
        basis,
    })
}

/// d_i = dim ker p^i(A) / deg p for i = 1, 2, …, listed through the first
/// repeated value (where the sequence stabilizes).
pub fn nullity_sequence(a: &Matrix, p: &Poly) -> Result<Vec<usize>> {
    if !is_irreducible(p) {
        return Err(Error::Reducible);
    }
    let mut seq = Vec::new();
    let mut pi = p.clone();
    for _ in 1..=a.size() + 1 {
        let m = evaluate_poly(&pi, a)?;
        let d = m.nullity() / p.degree();
        if seq.last() == Some(&d) {
            seq.push(d);
            break;
        }
        seq.push(d);
        pi = &pi * p;
    }
    Ok(seq)
}

/// Dimension of span{C^i D^j : 0 ≤ i, j < n} for C = C_f, D = C_g, found by
/// row-reducing the n² flattened products; equals n + (n−m)(n−1) with
/// m = deg gcd(f, g).
pub fn span_dimension_cd(f: &Poly, g: &Poly) -> Result<usize> {
    if !f.is_monic() || !g.is_monic() {
        return Err(Error::NotMonic);
    }
    if f.degree() != g.degree() {
        return Err(Error::DegreeMismatch);
    }
    let n = f.degree();
    let c = companion(f)?;
    let d = companion(g)?;
    let field = f.field().clone();
    let mut rows: Vec<Vec<Fe>> = Vec::with_capacity(n * n);
    let mut ci = Matrix::identity(&field, n);
    for _ in 0..n {
        let mut cidj = ci.clone();
        for _ in 0..n {
            rows.push(cidj.entries.clone());
            cidj = cidj.mul(&d)?;
        }
        ci = ci.mul(&c)?;
    }
    Ok(Matrix::echelonize(&field, &mut rows))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffpoly::{parse_poly, resultant, Field, Poly};

    fn gf2() -> Field {
        Field::prime(2)
    }

    #[test]
    fn kernel_of_companion_of_x_squared() {
        let f2 = gf2();
        let x = Poly::x(&f2);
        let f = parse_poly(&f2, "X^2").unwrap();
        let k = kernel_description(&x, &x, &f).unwrap();
        assert_eq!(k.z, x);
        assert_eq!(k.h, x);
        assert_eq!(k.basis, vec![vec![Fe(0), Fe(1)]]);
    }

    #[test]
    fn eigenvector_example() {
        let f2 = gf2();
        let x = Poly::x(&f2);
        let y = parse_poly(&f2, "X+1").unwrap();
        let f = parse_poly(&f2, "X^2+X").unwrap(); // (X+1)·X
        let k = kernel_description(&y, &x, &f).unwrap();
        assert_eq!(k.h, x);
        assert_eq!(k.basis, vec![vec![Fe(0), Fe(1)]]);
    }

    #[test]
    fn invertible_case_empty_kernel() {
        let f2 = gf2();
        let x = Poly::x(&f2);
        let g = parse_poly(&f2, "X^2+X").unwrap();
        let f = parse_poly(&f2, "X^4+X+1").unwrap();
        let k = kernel_description(&x, &g, &f).unwrap();
        assert_eq!(k.d, 0);
        assert!(k.basis.is_empty());
    }

    #[test]
    fn kernel_dimension_matches_matrix_nullity() {
        // the basis size must equal the nullity of the explicit matrix
        let f2 = gf2();
        let f3 = Field::prime(3);
        for field in [f2, f3] {
            for f in Poly::monic_polys(&field, 4) {
                for gc in 0..field.order().pow(2) {
                    let g = Poly::from_codes(&field, &[gc % field.order(), gc / field.order(), 1]);
                    let y = Poly::x(&field);
                    let k = kernel_description(&y, &g, &f).unwrap();
                    let m = evaluate_poly(&g, &companion(&f).unwrap()).unwrap();
                    assert_eq!(k.d, m.nullity());
                    for v in &k.basis {
                        assert!(m.apply(v).iter().all(|&c| c == field.zero()));
                    }
                }
            }
        }
    }

    #[test]
    fn nullity_sequence_nilpotent_blocks() {
        let f2 = gf2();
        let a = crate::matrix::direct_sum(&[
            crate::matrix::jordan_block(&f2, Fe(0), 3),
            crate::matrix::jordan_block(&f2, Fe(0), 1),
        ])
        .unwrap();
        let x = Poly::x(&f2);
        assert_eq!(nullity_sequence(&a, &x).unwrap(), vec![2, 3, 4, 4]);
        // p not dividing the minimal polynomial gives all zeros
        let p = parse_poly(&f2, "X+1").unwrap();
        assert_eq!(nullity_sequence(&a, &p).unwrap(), vec![0, 0]);
        let r = parse_poly(&f2, "X^2+1").unwrap(); // (X+1)^2, reducible
        assert_eq!(nullity_sequence(&a, &r).unwrap_err(), Error::Reducible);
    }

    #[test]
    fn span_dimension_examples() {
        let f2 = gf2();
        let f = parse_poly(&f2, "X^2+X+1").unwrap();
        assert_eq!(span_dimension_cd(&f, &f).unwrap(), 2);
        let g = parse_poly(&f2, "X^2+1").unwrap();
        assert_eq!(span_dimension_cd(&f, &g).unwrap(), 4);
        assert!(resultant(&f, &g).unwrap() != Fe(0));
        let h = parse_poly(&f2, "X^3").unwrap();
        assert_eq!(
            span_dimension_cd(&f, &h).unwrap_err(),
            Error::DegreeMismatch
        );
    }

    #[test]
    fn span_dimension_formula_small() {
        let f2 = gf2();
        for n in 1..=3usize {
            for f in Poly::monic_polys(&f2, n) {
                for g in Poly::monic_polys(&f2, n) {
                    let m = f.gcd(&g).unwrap().degree();
                    let expect = n + (n - m) * (n - 1);
                    assert_eq!(span_dimension_cd(&f, &g).unwrap(), expect);
                }
            }
        }
    }
}
