//! Constructive witness strategies: each takes the elementary divisors of A
//! and, when its shape precondition holds, returns a candidate (f, g) with
//! deg f = n; callers verify via explicit similarity before trusting it.

use crate::ffpoly::{poly_crt, Fe, Field, Poly};
use crate::matrix::{companion, direct_sum, jordan_block, Matrix};
use crate::simtype::solve_linear;

use super::{ell_table, pick_fresh_conjugate, stabilizers, ElementaryDivisors};

/// Linear polynomial X − a.
fn x_minus(field: &Field, a: Fe) -> Poly {
    Poly::new(field.clone(), vec![field.neg(a), field.one()])
}

/// Eigenvalue of a linear monic polynomial X − a.
fn root_of_linear(p: &Poly) -> Fe {
    p.field().neg(p.coeff(0))
}

fn crt_assemble(pairs: Vec<(Poly, Poly)>) -> Option<(Poly, Poly)> {
    let g = poly_crt(&pairs).ok()?;
    let f = pairs
        .iter()
        .map(|(_, m)| m)
        .fold(Poly::one(pairs[0].1.field()), |acc, m| &acc * m);
    Some((f, g))
}

/// All divisors linear with exponent 1: A ~ ⊕ a_i·I_{m_i}; take
/// f_i = (X−a_i)^{m_i} with constant g_i = a_i.
pub fn witness_diagonalizable(ed: &ElementaryDivisors, field: &Field) -> Option<(Poly, Poly)> {
    if ed.parts.is_empty() {
        return None;
    }
    let mut pairs = Vec::new();
    for (p, exps) in &ed.parts {
        if p.degree() != 1 || exps.iter().any(|&e| e != 1) {
            return None;
        }
        let a = root_of_linear(p);
        pairs.push((Poly::constant(field, a), p.pow(exps.len())));
    }
    crt_assemble(pairs)
}

/// Divisors (X−a_1)², (X−a_2), …, (X−a_{n−1}), all linear with exactly one
/// square: the (X−a_1)-part C⊕a_1·I_m is g(C_{X^{m+2}}) for
/// g = X^{m+1} + a_1; each remaining eigenvalue block b_i·I uses a constant
/// g and a fresh modulus (X−c_i)^{m_i} with distinct nonzero c_i.
pub fn witness_near_diagonal(ed: &ElementaryDivisors, field: &Field) -> Option<(Poly, Poly)> {
    let mut square: Option<(Fe, usize)> = None; // (a_1, m = # exponent-1 copies)
    let mut others: Vec<(Fe, usize)> = Vec::new();
    for (p, exps) in &ed.parts {
        if p.degree() != 1 {
            return None;
        }
        let a = root_of_linear(p);
        let twos = exps.iter().filter(|&&e| e == 2).count();
        if exps.iter().any(|&e| e > 2) || twos > 1 {
            return None;
        }
        if twos == 1 {
            if square.is_some() {
                return None;
            }
            square = Some((a, exps.len() - 1));
        } else {
            others.push((a, exps.len()));
        }
    }
    let (a1, m) = square?;
    let mut pairs = vec![(
        &Poly::monomial(field, field.one(), m + 1) + &Poly::constant(field, a1),
        Poly::monomial(field, field.one(), m + 2),
    )];
    // distinct nonzero c_i, so the moduli stay pairwise coprime
    let mut cs = field.elements().filter(|&c| c != field.zero());
    for (b, mult) in others {
        let c = cs.next()?;
        pairs.push((Poly::constant(field, b), x_minus(field, c).pow(mult)));
    }
    crt_assemble(pairs)
}

/// Inverse of `a` modulo `m`, when gcd(a, m) = 1.
fn inverse_mod(a: &Poly, m: &Poly) -> Option<Poly> {
    let (d, u, _) = a.ext_gcd(m).ok()?;
    if !d.is_one() {
        return None;
    }
    Some(u.rem(m).expect("nonzero modulus"))
}

/// p-adic valuation of `w`: the largest v with p^v | w, or None for w = 0.
fn valuation(w: &Poly, p: &Poly) -> Option<usize> {
    if w.is_zero() {
        return None;
    }
    let mut w = w.clone();
    let mut v = 0;
    loop {
        let (q, r) = w.divrem(p).expect("p is nonzero");
        if !r.is_zero() {
            return Some(v);
        }
        v += 1;
        w = q;
    }
}

/// Newton-lifts the tautological root X of the irreducible p to a
/// polynomial c with p(c(X)) ≡ 0 (mod p^k) and p-adic valuation of p(c)
/// exactly k. Irreducibles over a finite field are separable, so p'(c)
/// stays a unit throughout and the lift always exists.
fn lift_root(p: &Poly, k: usize) -> Poly {
    let dp = p.derivative();
    let mut c = Poly::x(p.field());
    let mut prec = 1usize;
    while prec < k {
        prec = (prec * 2).min(k);
        let modulus = p.pow(prec);
        let pc = p.compose(&c).rem(&modulus).expect("nonzero modulus");
        let inv = inverse_mod(&dp.compose(&c), &modulus).expect("p is separable");
        c = (&c - &(&pc * &inv)).rem(&modulus).expect("nonzero modulus");
    }
    // pin the valuation at exactly k: if p(c) overshoots, perturbing by p^k
    // contributes p'(c)·p^k, a unit times p^k
    if valuation(&p.compose(&c), p) != Some(k) {
        c = &c + &p.pow(k);
    }
    c
}

/// A cyclic matrix B with minimal polynomial p^{ik} commuting with the
/// k-fold direct sum ⊕C_{p^i}. Requires p(0) ≠ 0 and p irreducible.
///
/// Construction: lift a root of p to c with p(c) ≡ 0 (mod p^k), valuation
/// exactly k. Then S = F[X]/(p^{ik}) is a free rank-k module over F[c], and
/// in a module basis w_s, c·w_s, …, c^{ik·deg p − 1}·w_s multiplication by
/// c is literally ⊕C_{p^i} while multiplication by X remains cyclic with
/// minimal polynomial p^{ik}; B is the matrix of the latter. For k = 1 this
/// reduces to C_{p^i}.
pub fn build_commuting_cyclic(p: &Poly, i: usize, k: usize) -> crate::Result<Matrix> {
    let field = p.field().clone();
    if p.coeff(0) == field.zero() {
        return Err(crate::Error::ZeroConstantTerm);
    }
    let d = p.degree();
    let m = i * d;
    let n = k * m;
    let fk = p.pow(i * k);
    let pk = p.pow(k);
    let c = lift_root(p, k);
    let mut c_pows = Vec::with_capacity(m);
    let mut acc = Poly::one(&field);
    for _ in 0..m {
        c_pows.push(acc.clone());
        acc = (&acc * &c).rem(&fk).expect("nonzero modulus");
    }
    let pad = |q: &Poly, len: usize| {
        let mut v = vec![field.zero(); len];
        for (t, &coef) in q.coeffs().iter().enumerate() {
            v[t] = coef;
        }
        v
    };
    // block generators: residues w_s mod p^k whose spans under c-multiples
    // (c^j·w_s, j < deg p) are jointly independent; these generate S freely
    let kd = k * d;
    let mut ws: Vec<Poly> = Vec::with_capacity(k);
    let mut rows: Vec<Vec<Fe>> = Vec::new();
    for t in 0..n {
        if ws.len() == k {
            break;
        }
        let w = Poly::monomial(&field, field.one(), t);
        let mut trial = rows.clone();
        for cj in c_pows.iter().take(d) {
            trial.push(pad(&(cj * &w).rem(&pk).expect("nonzero modulus"), kd));
        }
        let rank = Matrix::echelonize_within(&field, &mut trial, kd);
        if rank == rows.len() + d {
            trial.truncate(rank);
            rows = trial;
            ws.push(w);
        }
    }
    assert_eq!(ws.len(), k, "free module basis must exist");
    // change of basis: column s·m+j holds c^j·w_s in the power basis of S
    let mut pm = Matrix::zero(&field, n);
    for (s, w) in ws.iter().enumerate() {
        for (j, cj) in c_pows.iter().enumerate() {
            let col = pad(&(cj * w).rem(&fk).expect("nonzero modulus"), n);
            for (r, &coef) in col.iter().enumerate() {
                pm.set(r, s * m + j, coef);
            }
        }
    }
    let pinv = pm.inverse()?;
    pinv.mul(&companion(&fk)?).and_then(|t| t.mul(&pm))
}

/// Solves A′ = g(B) for g of degree < size, where B is cyclic and A′
/// commutes with it.
fn solve_poly_in(b: &Matrix, target: &Matrix) -> Option<Poly> {
    let field = b.field().clone();
    let n = b.size();
    let mut cols = Vec::with_capacity(n);
    let mut power = Matrix::identity(&field, n);
    for _ in 0..n {
        cols.push((0..n * n).map(|i| power.at(i / n, i % n)).collect());
        power = power.mul(b).ok()?;
    }
    let rhs: Vec<Fe> = (0..n * n).map(|i| target.at(i / n, i % n)).collect();
    let sol = solve_linear(&field, &cols, &rhs)?;
    Some(Poly::new(field, sol))
}

/// Per-prime homogeneous shapes: for each p all exponents equal i with
/// multiplicity k. The p = X part is (f, g) = (X^{ik}, X^k); other p use the
/// commuting cyclic block matrix and a linear solve.
pub fn witness_homogeneous(ed: &ElementaryDivisors, field: &Field) -> Option<(Poly, Poly)> {
    if ed.parts.is_empty() {
        return None;
    }
    let x = Poly::x(field);
    let mut pairs = Vec::new();
    for (p, exps) in &ed.parts {
        let i = exps[0];
        if exps.iter().any(|&e| e != i) {
            return None;
        }
        let k = exps.len();
        if *p == x {
            pairs.push((
                Poly::monomial(field, field.one(), k),
                Poly::monomial(field, field.one(), i * k),
            ));
            continue;
        }
        let b = build_commuting_cyclic(p, i, k).ok()?;
        let block = companion(&p.pow(i)).ok()?;
        let target = direct_sum(&vec![block; k]).ok()?;
        let g_p = solve_poly_in(&b, &target)?;
        pairs.push((g_p, p.pow(i * k)));
    }
    crt_assemble(pairs)
}

/// All divisors linear and at most q Jordan blocks: build a cyclic
/// D = ⊕J_{m_i}(b_i) with distinct b_i and solve A′ = g(D).
pub fn witness_jordan(ed: &ElementaryDivisors, field: &Field) -> Option<(Poly, Poly)> {
    if ed.parts.is_empty() || ed.parts.keys().any(|p| p.degree() != 1) {
        return None;
    }
    let blocks: Vec<(Fe, usize)> = ed
        .parts
        .iter()
        .flat_map(|(p, exps)| exps.iter().map(|&e| (root_of_linear(p), e)))
        .collect();
    if blocks.len() as u64 > field.order() {
        return None;
    }
    let bs: Vec<Fe> = field.elements().take(blocks.len()).collect();
    let d = direct_sum(
        &blocks
            .iter()
            .zip(&bs)
            .map(|(&(_, m), &b)| jordan_block(field, b, m))
            .collect::<Vec<_>>(),
    )
    .ok()?;
    let target = direct_sum(
        &blocks
            .iter()
            .map(|&(a, m)| jordan_block(field, a, m))
            .collect::<Vec<_>>(),
    )
    .ok()?;
    let g = solve_poly_in(&d, &target)?;
    let f = blocks
        .iter()
        .zip(&bs)
        .map(|(&(_, m), &b)| x_minus(field, b).pow(m))
        .fold(Poly::one(field), |acc, q| &acc * &q);
    Some((f, g))
}

/// The general conjugate route: when every prime p of the minimal polynomial
/// has enough Ω-conjugates (|F^+| ≥ ℓ(p) with trivial additive stabilizer,
/// else |F^*| ≥ ℓ(p)), replace each divisor p^e by r^e for a fresh conjugate
/// r = p^{(a,b)} and use the linear g_i = aX + b, assembled by CRT.
pub fn witness_via_conjugates(ed: &ElementaryDivisors, field: &Field) -> Option<(Poly, Poly)> {
    if ed.parts.is_empty() {
        return None;
    }
    let q = field.order();
    for (p, ell) in ell_table(ed) {
        let (s, t) = stabilizers(&p);
        let enough = if s.len() == 1 {
            q >= ell as u64
        } else if t.len() == 1 {
            q > ell as u64
        } else {
            false
        };
        if !enough {
            return None;
        }
    }
    let mut used: Vec<Poly> = Vec::new();
    let mut pairs = Vec::new();
    for (p, exps) in &ed.parts {
        for &e in exps {
            let (r, m) = pick_fresh_conjugate(p, &used).ok()?;
            used.push(r.clone());
            let g_i = Poly::new(field.clone(), vec![m.b, m.a]);
            pairs.push((g_i, r.pow(e)));
        }
    }
    crt_assemble(pairs)
}
