//! Polynomial factorization over finite fields: squarefree decomposition,
//! distinct-degree splitting, then equal-degree splitting with a seeded
//! deterministic pseudo-random sequence.

use std::sync::atomic::{AtomicU64, Ordering};

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::error::{Error, Result};

use super::field::{Fe, Field};
use super::poly::Poly;

pub const DEFAULT_FACTOR_SEED: u64 = 0x5eed_0001;

static FACTOR_SEED: AtomicU64 = AtomicU64::new(DEFAULT_FACTOR_SEED);

/// Sets the seed used by [`poly_factor`] for equal-degree splitting.
/// The CLI exposes this as `--seed`.
pub fn set_default_seed(seed: u64) {
    FACTOR_SEED.store(seed, Ordering::Relaxed);
}

/// Complete factorization of a nonzero polynomial: `unit * Π factor^mult`,
/// factors monic irreducible, pairwise distinct, in canonical order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub unit: Fe,
    pub factors: Vec<(Poly, usize)>,
}

impl Factorization {
    pub fn product(&self) -> Poly {
        let field = self
            .factors
            .first()
            .map(|(p, _)| p.field().clone())
            .expect("factorization of a constant has no field handle");
        let mut acc = Poly::constant(&field, self.unit);
        for (p, e) in &self.factors {
            acc = &acc * &p.pow(*e);
        }
        acc
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|(_, e)| *e == 1)
    }
}

pub fn poly_factor(f: &Poly) -> Result<Factorization> {
    poly_factor_seeded(f, FACTOR_SEED.load(Ordering::Relaxed))
}

pub fn poly_factor_seeded(f: &Poly, seed: u64) -> Result<Factorization> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let unit = f.lc();
    let monic = f.make_monic();
    let mut factors: Vec<(Poly, usize)> = Vec::new();
    if monic.degree() >= 1 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for (sqf, mult) in squarefree_parts(&monic) {
            for (prod, d) in distinct_degree_parts(&sqf) {
                for irr in equal_degree_split(&prod, d, &mut rng) {
                    merge(&mut factors, irr, mult);
                }
            }
        }
    }
    factors.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(Factorization { unit, factors })
}

fn merge(factors: &mut Vec<(Poly, usize)>, p: Poly, mult: usize) {
    for (q, e) in factors.iter_mut() {
        if *q == p {
            *e += mult;
            return;
        }
    }
    factors.push((p, mult));
}

/// Squarefree decomposition of a monic polynomial over a perfect field of
/// characteristic p. Returns pairwise coprime squarefree monic parts with
/// their multiplicities; parts with multiplicity divisible by p are
/// recovered through p-th root extraction.
fn squarefree_parts(f: &Poly) -> Vec<(Poly, usize)> {
    let field = f.field().clone();
    let mut out = Vec::new();
    if f.degree() == 0 {
        return out;
    }
    let deriv = f.derivative();
    if deriv.is_zero() {
        let root = pth_root(f);
        let p = field.p() as usize;
        for (g, m) in squarefree_parts(&root) {
            out.push((g, m * p));
        }
        return out;
    }
    let mut c = f.gcd(&deriv).unwrap();
    let mut w = f.div_exact(&c);
    let mut i = 1usize;
    while !w.is_one() {
        let y = w.gcd(&c).unwrap();
        let z = w.div_exact(&y);
        if !z.is_one() {
            out.push((z, i));
        }
        i += 1;
        w = y;
        c = c.div_exact(&w);
    }
    if !c.is_one() {
        let root = pth_root(&c);
        let p = field.p() as usize;
        for (g, m) in squarefree_parts(&root) {
            out.push((g, m * p));
        }
    }
    out
}

/// For `f` with zero derivative, `f = u(X^p)`; returns the polynomial whose
/// p-th power is `f`.
fn pth_root(f: &Poly) -> Poly {
    let field = f.field().clone();
    let p = field.p() as usize;
    let mut coeffs = Vec::with_capacity(f.degree() / p + 1);
    let mut i = 0;
    while i <= f.degree() {
        coeffs.push(field.pth_root(f.coeff(i)));
        i += p;
    }
    Poly::new(field, coeffs)
}

/// Splits a squarefree monic polynomial into products of irreducibles of a
/// common degree: returns `(product, degree)` pairs.
fn distinct_degree_parts(f: &Poly) -> Vec<(Poly, usize)> {
    let field = f.field().clone();
    let q = field.order();
    let x = Poly::x(&field);
    let mut out = Vec::new();
    let mut g = f.clone();
    let mut h = x.clone();
    let mut d = 0usize;
    while g.degree() >= 1 {
        d += 1;
        if g.degree() < 2 * d {
            out.push((g.clone(), g.degree()));
            break;
        }
        h = h.pow_mod(q as u128, &g);
        let split = (&h - &x).gcd(&g).unwrap();
        if split.degree() >= 1 {
            out.push((split.clone(), d));
            g = g.div_exact(&split);
            h = h.rem(&g).unwrap();
        }
    }
    out
}

fn random_poly_below(field: &Field, n: usize, rng: &mut ChaCha8Rng) -> Poly {
    let q = field.order();
    let coeffs = (0..n).map(|_| field.from_u64(rng.next_u64() % q)).collect();
    Poly::new(field.clone(), coeffs)
}

/// Equal-degree splitting of a monic squarefree product of irreducibles of
/// degree `d` (Cantor-Zassenhaus; trace map in characteristic 2).
fn equal_degree_split(f: &Poly, d: usize, rng: &mut ChaCha8Rng) -> Vec<Poly> {
    if f.degree() == d {
        return vec![f.clone()];
    }
    let field = f.field().clone();
    let q = field.order() as u128;
    loop {
        let a = random_poly_below(&field, f.degree(), rng);
        if a.is_zero() {
            continue;
        }
        let b = if field.p() == 2 {
            // trace map over F_2: a + a^2 + a^4 + ... with k*d terms
            let terms = field.order().trailing_zeros() as usize * d;
            let mut t = a.rem(f).unwrap();
            let mut acc = t.clone();
            for _ in 1..terms {
                t = (&t * &t).rem(f).unwrap();
                acc = &acc + &t;
            }
            acc
        } else {
            let e = (q.pow(d as u32) - 1) / 2;
            &a.pow_mod(e, f) - &Poly::one(&field)
        };
        if b.is_zero() {
            continue;
        }
        let g = b.gcd(f).unwrap();
        if g.degree() >= 1 && g.degree() < f.degree() {
            let mut out = equal_degree_split(&g, d, rng);
            out.extend(equal_degree_split(&f.div_exact(&g), d, rng));
            return out;
        }
    }
}

/// Deterministic irreducibility test (no randomness involved).
pub fn is_irreducible(f: &Poly) -> bool {
    if f.degree() < 1 || f.is_zero() {
        return false;
    }
    let f = f.make_monic();
    let n = f.degree();
    if n == 1 {
        return true;
    }
    let field = f.field().clone();
    let q = field.order() as u128;
    let x = Poly::x(&field);
    // x^(q^n) ≡ x mod f, and gcd(x^(q^(n/t)) - x, f) = 1 for prime t | n
    let frob = |m: usize| {
        let mut h = x.rem(&f).unwrap();
        for _ in 0..m {
            h = h.pow_mod(q, &f);
        }
        h
    };
    if frob(n) != x.rem(&f).unwrap() {
        return false;
    }
    let mut m = n;
    let mut t = 2usize;
    let mut primes = Vec::new();
    while t * t <= m {
        if m.is_multiple_of(t) {
            primes.push(t);
            while m.is_multiple_of(t) {
                m /= t;
            }
        }
        t += 1;
    }
    if m > 1 {
        primes.push(m);
    }
    for t in primes {
        let h = frob(n / t);
        let g = (&h - &x).gcd(&f).unwrap();
        if !g.is_one() {
            return false;
        }
    }
    true
}

/// Number of monic irreducible polynomials of degree `d` over the field,
/// by the Möbius-sum closed form `N(d) = (1/d) Σ_{e|d} μ(d/e) q^e`.
pub fn count_irreducibles(field: &Field, d: usize) -> Result<u64> {
    if d < 1 {
        return Err(Error::DegreeTooSmall);
    }
    let q = field.order() as i128;
    let mut total: i128 = 0;
    for e in 1..=d {
        if !d.is_multiple_of(e) {
            continue;
        }
        let mu = mobius(d / e);
        if mu == 0 {
            continue;
        }
        total += mu as i128 * q.pow(e as u32);
    }
    Ok((total / d as i128) as u64)
}

fn mobius(mut n: usize) -> i32 {
    let mut count = 0;
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            n /= d;
            if n.is_multiple_of(d) {
                return 0;
            }
            count += 1;
        }
        d += 1;
    }
    if n > 1 {
        count += 1;
    }
    if count % 2 == 0 {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffpoly::field_make;

    fn gf(p: u64) -> Field {
        Field::prime(p)
    }

    fn poly(f: &Field, codes: &[u64]) -> Poly {
        Poly::from_codes(f, codes)
    }

    #[test]
    fn factor_gol_example() {
        // over F_3: X^6 + 2X^2 + 2 = (X^3+2X^2+2X+2)(X^3+X^2+2X+1)
        let f3 = gf(3);
        let h = poly(&f3, &[2, 0, 2, 0, 0, 0, 1]);
        let fac = poly_factor(&h).unwrap();
        assert_eq!(fac.unit, f3.one());
        assert_eq!(
            fac.factors,
            vec![(poly(&f3, &[1, 2, 1, 1]), 1), (poly(&f3, &[2, 2, 2, 1]), 1),]
        );
    }

    #[test]
    fn factor_x8_x_1_over_gf2() {
        let f2 = gf(2);
        let h = poly(&f2, &[1, 1, 0, 0, 0, 0, 0, 0, 1]);
        let fac = poly_factor(&h).unwrap();
        assert_eq!(
            fac.factors,
            vec![
                (poly(&f2, &[1, 1, 1]), 1),
                (poly(&f2, &[1, 0, 1, 1, 0, 1, 1]), 1),
            ]
        );
    }

    #[test]
    fn factor_pure_power() {
        let f2 = gf(2);
        let x4 = Poly::monomial(&f2, f2.one(), 4);
        let fac = poly_factor(&x4).unwrap();
        assert_eq!(fac.factors, vec![(Poly::x(&f2), 4)]);
    }

    #[test]
    fn factor_zero_rejected() {
        let f2 = gf(2);
        assert_eq!(
            poly_factor(&Poly::zero(&f2)).unwrap_err(),
            Error::ZeroPolynomial
        );
    }

    #[test]
    fn count_irreducibles_examples() {
        assert_eq!(count_irreducibles(&gf(2), 1).unwrap(), 2);
        assert_eq!(count_irreducibles(&gf(2), 3).unwrap(), 2);
        assert_eq!(count_irreducibles(&gf(3), 2).unwrap(), 3);
        assert_eq!(
            count_irreducibles(&gf(2), 0).unwrap_err(),
            Error::DegreeTooSmall
        );
    }

    #[test]
    fn counts_match_exhaustive_enumeration() {
        let fields = [gf(2), gf(3), field_make(2, 2, None).unwrap(), gf(5)];
        for field in &fields {
            for d in 1..=4 {
                let brute = Poly::monic_polys(field, d).filter(is_irreducible).count() as u64;
                assert_eq!(count_irreducibles(field, d).unwrap(), brute);
            }
        }
    }

    #[test]
    fn factorization_is_deterministic() {
        let f3 = gf(3);
        let h = poly(&f3, &[1, 2, 0, 1, 2, 0, 1]);
        let a = poly_factor_seeded(&h, 7).unwrap();
        let b = poly_factor_seeded(&h, 7).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn factor_roundtrip_small_sweep() {
        // every monic polynomial of degree <= 5 over GF(2) and GF(3)
        for field in [gf(2), gf(3)] {
            for d in 1..=5 {
                for f in Poly::monic_polys(&field, d) {
                    let fac = poly_factor(&f).unwrap();
                    assert_eq!(fac.product(), f);
                    for (p, _) in &fac.factors {
                        assert!(is_irreducible(p), "{:?} not irreducible", p);
                    }
                }
            }
        }
    }

    #[test]
    fn factor_over_extension_field() {
        let f4 = field_make(2, 2, None).unwrap();
        // X^4 + X + t splits as stated for the GF(4) fixtures: multiplicity free
        let h = Poly::new(f4.clone(), vec![Fe(2), Fe(1), Fe(0), Fe(0), Fe(1)]);
        let fac = poly_factor(&h).unwrap();
        assert!(fac.is_squarefree());
        assert_eq!(fac.product(), h);
    }
}
