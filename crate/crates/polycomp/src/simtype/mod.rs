//! Similarity type of g(C_f) computed purely from f and g, elementary
//! divisors of g(A) for arbitrary A, structure predicates (semisimple,
//! cyclic, diagonalizable) and data about algebraic elements g(α).

use crate::error::{Error, Result};
use crate::ffpoly::{is_irreducible, poly_factor, Fe, Field, Poly};
use crate::matrix::{companion, ElementaryDivisors, InvariantFactors, Matrix};

/// For one irreducible p occurring for g(C_f): the kernel-dimension sequence
/// d_i = deg gcd(p^i(g(X)), f)/deg p through its first repeat, and the
/// multiplicities b_i = 2d_i − d_{i+1} − d_{i−1} of p^i among the elementary
/// divisors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeSequence {
    pub p: Poly,
    pub d: Vec<usize>,
    pub b: Vec<usize>,
}

/// Full analysis of the similarity type of g(C_f).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GcfAnalysis {
    /// (irreducible factor r of f, minimal polynomial p of g modulo r)
    pub pairs: Vec<(Poly, Poly)>,
    pub sequences: Vec<PrimeSequence>,
    pub divisors: ElementaryDivisors,
}

/// Monic minimal polynomial of g(X) modulo the irreducible r, found as the
/// first linear dependence among the powers 1, g, g², … reduced mod r.
pub fn min_poly_mod(g: &Poly, r: &Poly) -> Result<Poly> {
    if !is_irreducible(r) {
        return Err(Error::Reducible);
    }
    let field = r.field().clone();
    let n = r.degree();
    let g = g.rem(r)?;
    let mut powers: Vec<Vec<Fe>> = Vec::with_capacity(n + 1);
    let mut cur = Poly::one(&field);
    for _ in 0..=n {
        powers.push((0..n).map(|i| cur.coeff(i)).collect());
        cur = (&cur * &g).rem(r)?;
    }
    for m in 1..=n {
        let Some(sol) = solve_linear(&field, &powers[..m], &powers[m]) else {
            continue;
        };
        // g^m = Σ sol_i g^i, so p = X^m − Σ sol_i X^i
        let mut coeffs: Vec<Fe> = sol.iter().map(|&c| field.neg(c)).collect();
        coeffs.push(field.one());
        return Ok(Poly::new(field, coeffs));
    }
    unreachable!("every residue has a minimal polynomial of degree <= deg r")
}

/// Solves Σ x_j·cols[j] = rhs; returns the solution with free variables set
/// to zero, or None when inconsistent.
pub(crate) fn solve_linear(field: &Field, cols: &[Vec<Fe>], rhs: &[Fe]) -> Option<Vec<Fe>> {
    let m = cols.len();
    let mut rows: Vec<Vec<Fe>> = (0..rhs.len())
        .map(|i| {
            cols.iter()
                .map(|c| c[i])
                .chain(std::iter::once(rhs[i]))
                .collect()
        })
        .collect();
    let rank = Matrix::echelonize_within(field, &mut rows, m);
    if rows[rank..].iter().any(|row| row[m] != field.zero()) {
        return None;
    }
    let mut sol = vec![field.zero(); m];
    for row in &rows[..rank] {
        let col = (0..m).find(|&c| row[c] != field.zero()).expect("pivot");
        sol[col] = row[m];
    }
    Some(sol)
}

/// Similarity type of g(C_f), never constructing the matrix.
pub fn simtype_of_g_cf(f: &Poly, g: &Poly) -> Result<GcfAnalysis> {
    if !f.is_monic() {
        return Err(Error::NotMonic);
    }
    if f.degree() < 1 {
        return Err(Error::ConstantPolynomial);
    }
    let factors = poly_factor(f)?.factors;
    simtype_with_factors(f, &factors, g)
}

/// As `simtype_of_g_cf`, with f's factorization supplied by the caller (the
/// brute-force sweep factors each f once and reuses it across all g).
pub(crate) fn simtype_with_factors(
    f: &Poly,
    factors: &[(Poly, usize)],
    g: &Poly,
) -> Result<GcfAnalysis> {
    let g = g.rem(f)?;
    let mut pairs = Vec::with_capacity(factors.len());
    let mut distinct: Vec<Poly> = Vec::new();
    for (r, _) in factors {
        let p = min_poly_mod(&g, r)?;
        if !distinct.contains(&p) {
            distinct.push(p.clone());
        }
        pairs.push((r.clone(), p));
    }
    distinct.sort();
    let mut sequences = Vec::with_capacity(distinct.len());
    let mut divisors = ElementaryDivisors::default();
    for p in distinct {
        // gcd(p^i(g(X)), f) = gcd(h^i, f) for h = gcd(p(g(X)) mod f, f)
        let pg = p.compose(&g).rem(f)?;
        let h = if pg.is_zero() { f.clone() } else { pg.gcd(f)? };
        let d = d_sequence(f, &h, p.degree())?;
        let b = multiplicities(&d);
        for (i, &bi) in b.iter().enumerate() {
            for _ in 0..bi {
                divisors.insert(p.clone(), i + 1);
            }
        }
        sequences.push(PrimeSequence { p, d, b });
    }
    Ok(GcfAnalysis {
        pairs,
        sequences,
        divisors,
    })
}

/// d_i = deg gcd(h^i, f)/deg p for i = 1, 2, …, stopping at the first
/// repeat (the sequence is constant from there on), capped at deg f.
fn d_sequence(f: &Poly, h: &Poly, degp: usize) -> Result<Vec<usize>> {
    let mut d = Vec::new();
    let mut hi = Poly::one(f.field());
    for _ in 1..=f.degree() {
        hi = (&hi * h).rem(f)?;
        let gi = if hi.is_zero() { f.clone() } else { hi.gcd(f)? };
        let di = gi.degree() / degp;
        if d.last() == Some(&di) {
            break;
        }
        d.push(di);
    }
    Ok(d)
}

/// b_i = 2d_i − d_{i+1} − d_{i−1}, with d_0 = 0 and d constant past the end.
fn multiplicities(d: &[usize]) -> Vec<usize> {
    let m = d.len();
    let at = |i: usize| -> usize {
        match i {
            0 => 0,
            i if i <= m => d[i - 1],
            _ => d[m - 1],
        }
    };
    (1..=m).map(|i| 2 * at(i) - at(i + 1) - at(i - 1)).collect()
}

/// Elementary divisors of g(A) from the invariant factors of A: the merge of
/// the per-block analyses.
pub fn eldiv_of_g_a(invs: &InvariantFactors, g: &Poly) -> Result<ElementaryDivisors> {
    let mut out = ElementaryDivisors::default();
    for q in &invs.factors {
        let analysis = simtype_of_g_cf(q, g)?;
        for (p, exps) in analysis.divisors.parts {
            for e in exps {
                out.insert(p.clone(), e);
            }
        }
    }
    Ok(out)
}

/// The monic polynomial a^{−deg f}·f(g(X)) of degree deg f · deg g, where a
/// is the leading coefficient of g; g(C_{inflate(f,g)}) is similar to
/// deg g copies of C_f.
pub fn inflate(f: &Poly, g: &Poly) -> Result<Poly> {
    if !f.is_monic() {
        return Err(Error::NotMonic);
    }
    if g.degree() < 1 {
        return Err(Error::ConstantPolynomial);
    }
    Ok(f.compose(g).make_monic())
}

/// Structure report for g(A), computed by gcd criteria against the minimal
/// polynomial of A.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CsdReport {
    pub semisimple: bool,
    pub cyclic: bool,
    /// present iff every minimal polynomial p of g mod a factor of f is
    /// linear; then g(A) has all eigenvalues in F
    pub eigenvalues_in_f: Option<Vec<Fe>>,
    /// present iff the eigenvalues are
    pub diagonalizable: Option<bool>,
}

pub fn csd_report(invs: &InvariantFactors, g: &Poly) -> Result<CsdReport> {
    let f = invs.minimal_polynomial();
    let field = f.field().clone();
    let g = g.rem(f)?;
    let mut ps: Vec<Poly> = Vec::new();
    for (r, _) in poly_factor(f)?.factors {
        let p = min_poly_mod(&g, &r)?;
        if !ps.contains(&p) {
            ps.push(p);
        }
    }
    ps.sort();
    let gcd_with_f = |y: &Poly| -> Result<Poly> {
        let ym = y.rem(f)?;
        Ok(if ym.is_zero() { f.clone() } else { ym.gcd(f)? })
    };
    let mut semisimple = true;
    let mut cyclic = invs.is_cyclic();
    for p in &ps {
        let g1 = gcd_with_f(&p.compose(&g))?;
        let g2 = gcd_with_f(&(p * p).compose(&g))?;
        semisimple &= g1 == g2;
        cyclic &= g1.degree() == p.degree();
    }
    let all_linear = ps.iter().all(|p| p.degree() == 1);
    let eigenvalues_in_f = all_linear.then(|| {
        let mut eigs: Vec<Fe> = ps.iter().map(|p| field.neg(p.coeff(0))).collect();
        eigs.sort_by_key(|e| e.code());
        eigs
    });
    let diagonalizable = match &eigenvalues_in_f {
        None => None,
        Some(eigs) => {
            let mut diag = true;
            for &a in eigs {
                let ga = &g - &Poly::constant(&field, a);
                diag &= gcd_with_f(&ga)? == gcd_with_f(&(&ga * &ga))?;
            }
            Some(diag)
        }
    };
    Ok(CsdReport {
        semisimple,
        cyclic,
        eigenvalues_in_f,
        diagonalizable,
    })
}

/// Data about the algebraic element β = g(α) for α a root of the irreducible
/// f: its matrix in the power basis, minimal polynomial, trace, norm and
/// (for β ≠ 0) inverse as a polynomial in α.
#[derive(Clone, Debug)]
pub struct ElementData {
    pub f: Poly,
    pub g: Poly,
    pub rep: Matrix,
    pub minpoly: Poly,
    pub trace: Fe,
    pub norm: Fe,
    pub inverse: Option<Poly>,
}

pub fn element_data(f: &Poly, g: &Poly) -> Result<ElementData> {
    if !is_irreducible(f) {
        return Err(Error::Reducible);
    }
    let field = f.field().clone();
    let g = g.rem(f)?;
    let n = f.degree();
    let cf = companion(f)?;
    // columns [g], C_f[g], …, C_f^{n−1}[g]
    let mut col: Vec<Fe> = (0..n).map(|i| g.coeff(i)).collect();
    let mut rep = Matrix::zero(&field, n);
    for j in 0..n {
        for (i, &c) in col.iter().enumerate() {
            rep.set(i, j, c);
        }
        col = cf.apply(&col);
    }
    let minpoly = min_poly_mod(&g, f)?;
    let inverse = if g.is_zero() {
        None
    } else {
        let (_, u, _) = g.ext_gcd(f)?;
        Some(u.rem(f)?)
    };
    Ok(ElementData {
        f: f.clone(),
        g: g.clone(),
        trace: rep.trace(),
        norm: rep.det(),
        rep,
        minpoly,
        inverse,
    })
}

/// Oracle path: elementary divisors of g(C_f) via the explicit matrix and
/// its Smith form. Exists to cross-check the rational engine.
pub fn eldiv_oracle(f: &Poly, g: &Poly) -> Result<ElementaryDivisors> {
    let m = crate::matrix::evaluate_poly(g, &companion(f)?)?;
    Ok(crate::matrix::elementary_divisors(
        &crate::matrix::invariant_factors(&m),
    ))
}

/// d-sequence computed without the gcd(h^i, f) shortcut, directly from
/// p^i(g(X)); used to validate the shortcut.
#[cfg(test)]
fn d_sequence_direct(f: &Poly, g: &Poly, p: &Poly) -> Result<Vec<usize>> {
    let mut d = Vec::new();
    let mut pi = Poly::one(f.field());
    for _ in 1..=f.degree() {
        pi = &pi * p;
        let v = pi.compose(g).rem(f)?;
        let gi = if v.is_zero() { f.clone() } else { v.gcd(f)? };
        let di = gi.degree() / p.degree();
        if d.last() == Some(&di) {
            break;
        }
        d.push(di);
    }
    Ok(d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffpoly::{parse_poly, Field};

    fn gf(p: u64) -> Field {
        Field::prime(p)
    }

    fn pp(f: &Field, s: &str) -> Poly {
        parse_poly(f, s).unwrap()
    }

    #[test]
    fn min_poly_mod_examples() {
        let f2 = gf(2);
        let r = pp(&f2, "X^4+X+1");
        let g = pp(&f2, "X^2+X");
        assert_eq!(min_poly_mod(&g, &r).unwrap(), pp(&f2, "X^2+X+1"));
        assert_eq!(min_poly_mod(&Poly::x(&f2), &r).unwrap(), r);
        let r2 = pp(&f2, "X^2+X+1");
        assert_eq!(min_poly_mod(&g, &r2).unwrap(), pp(&f2, "X+1"));
        assert_eq!(
            min_poly_mod(&g, &pp(&f2, "X^2")).unwrap_err(),
            Error::Reducible
        );
    }

    #[test]
    fn simtype_near_diagonal_example() {
        let f2 = gf(2);
        let a = simtype_of_g_cf(&pp(&f2, "X^4"), &pp(&f2, "X^3+1")).unwrap();
        let x1 = pp(&f2, "X+1");
        assert_eq!(a.divisors.parts[&x1], vec![1, 1, 2]);
        assert_eq!(a.sequences.len(), 1);
        assert_eq!(a.sequences[0].d, vec![3, 4]);
        assert_eq!(a.sequences[0].b, vec![2, 1]);
    }

    #[test]
    fn simtype_two_equal_blocks() {
        let f2 = gf(2);
        let a = simtype_of_g_cf(&pp(&f2, "X^4+X+1"), &pp(&f2, "X^2+X")).unwrap();
        let p = pp(&f2, "X^2+X+1");
        assert_eq!(a.divisors.parts.len(), 1);
        assert_eq!(a.divisors.parts[&p], vec![1, 1]);
    }

    #[test]
    fn simtype_identity_g_gives_prime_powers_of_f() {
        let f3 = gf(3);
        for s in ["X^6+2*X^2+2", "X^4+X+2", "X^5"] {
            let f = pp(&f3, s);
            let a = simtype_of_g_cf(&f, &Poly::x(&f3)).unwrap();
            let mut expect = ElementaryDivisors::default();
            for (p, e) in poly_factor(&f).unwrap().factors {
                expect.insert(p, e);
            }
            assert_eq!(a.divisors, expect);
        }
    }

    #[test]
    fn degree_conservation() {
        let f2 = gf(2);
        for f in Poly::monic_polys(&f2, 4) {
            for g in Poly::polys_below_degree(&f2, 4) {
                let a = simtype_of_g_cf(&f, &g).unwrap();
                assert_eq!(a.divisors.size(), 4, "f={} g={}", f, g);
            }
        }
    }

    #[test]
    fn oracle_equivalence_small() {
        let f3 = gf(3);
        for f in Poly::monic_polys(&f3, 3) {
            for g in Poly::polys_below_degree(&f3, 3) {
                let engine = simtype_of_g_cf(&f, &g).unwrap().divisors;
                let oracle = eldiv_oracle(&f, &g).unwrap();
                assert_eq!(engine, oracle, "f={} g={}", f, g);
            }
        }
    }

    #[test]
    fn shortcut_matches_direct_d_sequence() {
        let f2 = gf(2);
        for f in Poly::monic_polys(&f2, 5) {
            for g in Poly::polys_below_degree(&f2, 3) {
                let a = simtype_of_g_cf(&f, &g).unwrap();
                for seq in &a.sequences {
                    assert_eq!(
                        seq.d,
                        d_sequence_direct(&f, &g.rem(&f).unwrap(), &seq.p).unwrap(),
                        "f={} g={} p={}",
                        f,
                        g,
                        seq.p
                    );
                }
            }
        }
    }

    #[test]
    fn eldiv_of_g_a_examples() {
        let f2 = gf(2);
        let invs = InvariantFactors::new(vec![pp(&f2, "X+1"), pp(&f2, "X^2+X")]).unwrap();
        let ed = eldiv_of_g_a(&invs, &pp(&f2, "X^2")).unwrap();
        assert_eq!(ed.parts[&pp(&f2, "X")], vec![1]);
        assert_eq!(ed.parts[&pp(&f2, "X+1")], vec![1, 1]);
        // single block reduces to simtype
        let f = pp(&f2, "X^4+X+1");
        let g = pp(&f2, "X^2+X");
        let single = InvariantFactors::new(vec![f.clone()]).unwrap();
        assert_eq!(
            eldiv_of_g_a(&single, &g).unwrap(),
            simtype_of_g_cf(&f, &g).unwrap().divisors
        );
    }

    #[test]
    fn inflate_examples() {
        let f2 = gf(2);
        assert_eq!(
            inflate(&pp(&f2, "X^2+X+1"), &pp(&f2, "X^2+X")).unwrap(),
            pp(&f2, "X^4+X+1")
        );
        let f3 = gf(3);
        assert_eq!(
            inflate(&pp(&f3, "X^2+1"), &pp(&f3, "X^4")).unwrap(),
            pp(&f3, "X^8+1")
        );
        let f = pp(&f2, "X^3+X+1");
        assert_eq!(inflate(&f, &Poly::x(&f2)).unwrap(), f);
        assert_eq!(
            inflate(&f, &Poly::one(&f2)).unwrap_err(),
            Error::ConstantPolynomial
        );
    }

    #[test]
    fn inflate_law_instances() {
        use rand_core::{RngCore, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for q in [2u64, 3, 5] {
            let field = gf(q);
            for _ in 0..20 {
                let df = 1 + (rng.next_u64() % 3) as usize;
                let dg = 1 + (rng.next_u64() % 3) as usize;
                let f = Poly::new(
                    field.clone(),
                    (0..df)
                        .map(|_| field.from_u64(rng.next_u64() % q))
                        .chain(std::iter::once(field.one()))
                        .collect(),
                );
                let mut gc: Vec<Fe> = (0..=dg)
                    .map(|_| field.from_u64(rng.next_u64() % q))
                    .collect();
                if *gc.last().unwrap() == field.zero() {
                    *gc.last_mut().unwrap() = field.one();
                }
                let g = Poly::new(field.clone(), gc);
                let big = inflate(&f, &g).unwrap();
                let got = simtype_of_g_cf(&big, &g).unwrap().divisors;
                let mut expect = ElementaryDivisors::default();
                for (p, e) in poly_factor(&f).unwrap().factors {
                    for _ in 0..dg {
                        expect.insert(p.clone(), e);
                    }
                }
                assert_eq!(got, expect, "f={} g={}", f, g);
            }
        }
    }

    #[test]
    fn csd_examples() {
        let f2 = gf(2);
        let invs = InvariantFactors::new(vec![pp(&f2, "X^4")]).unwrap();
        let r = csd_report(&invs, &pp(&f2, "X^3+1")).unwrap();
        assert!(!r.semisimple);
        assert!(!r.cyclic);
        assert_eq!(r.eigenvalues_in_f, Some(vec![Fe(1)]));
        assert_eq!(r.diagonalizable, Some(false));

        let invs = InvariantFactors::new(vec![pp(&f2, "X^2+X")]).unwrap();
        let r = csd_report(&invs, &Poly::x(&f2)).unwrap();
        assert!(r.semisimple);
        assert!(r.cyclic);
        assert_eq!(r.diagonalizable, Some(true));

        let invs = InvariantFactors::new(vec![pp(&f2, "X^4+X+1")]).unwrap();
        let r = csd_report(&invs, &pp(&f2, "X^2+X")).unwrap();
        assert!(r.semisimple);
        assert!(!r.cyclic);
        assert_eq!(r.eigenvalues_in_f, None);
        assert_eq!(r.diagonalizable, None);
    }

    #[test]
    fn element_data_examples() {
        let f2 = gf(2);
        let f = pp(&f2, "X^4+X+1");
        let g = pp(&f2, "X^2+X");
        let ed = element_data(&f, &g).unwrap();
        assert_eq!(ed.minpoly, pp(&f2, "X^2+X+1"));
        assert_eq!(ed.norm, Fe(1));
        assert_eq!(ed.trace, Fe(0));
        let inv = ed.inverse.unwrap();
        assert!((&g * &inv).rem(&f).unwrap().is_one());

        let ed = element_data(&f, &Poly::one(&f2)).unwrap();
        assert_eq!(ed.minpoly, pp(&f2, "X+1"));
        assert_eq!(ed.trace, Fe(0)); // 4·1 = 0 in characteristic 2
        assert_eq!(ed.norm, Fe(1));
        assert!(ed.inverse.unwrap().is_one());

        let f3 = gf(3);
        let f = pp(&f3, "X^2+2*X+2");
        let ed = element_data(&f, &Poly::x(&f3)).unwrap();
        assert_eq!(ed.minpoly, f);
        assert_eq!(ed.trace, Fe(1));
        assert_eq!(ed.norm, Fe(2));

        assert!(element_data(&pp(&f2, "X^2"), &Poly::x(&f2)).is_err());
        assert!(element_data(&pp(&f2, "X^2+X+1"), &Poly::zero(&f2))
            .unwrap()
            .inverse
            .is_none());
    }
}
