use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};

use super::field::{Fe, Field};

/// Dense univariate polynomial over a finite field. Coefficients are stored
/// constant first with no trailing zeros; the zero polynomial is empty.
#[derive(Clone)]
pub struct Poly {
    field: Field,
    coeffs: Vec<Fe>,
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.coeffs == other.coeffs
    }
}
impl Eq for Poly {}

impl Hash for Poly {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.field.hash(state);
        self.coeffs.hash(state);
    }
}

impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Canonical polynomial order: graded by degree, then lexicographic on the
/// coefficient tuple constant-first, elements ordered by their codes.
impl Ord for Poly {
    fn cmp(&self, other: &Self) -> Ordering {
        assert_eq!(self.field, other.field, "mixed fields");
        let da = self.coeffs.len();
        let db = other.coeffs.len();
        if da != db {
            return da.cmp(&db);
        }
        self.coeffs.cmp(&other.coeffs)
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Poly {
    pub fn new(field: Field, mut coeffs: Vec<Fe>) -> Poly {
        while coeffs.last() == Some(&Fe(0)) {
            coeffs.pop();
        }
        Poly { field, coeffs }
    }

    pub fn from_codes(field: &Field, codes: &[u64]) -> Poly {
        let coeffs = codes.iter().map(|&c| field.from_u64(c)).collect();
        Poly::new(field.clone(), coeffs)
    }

    pub fn zero(field: &Field) -> Poly {
        Poly::new(field.clone(), Vec::new())
    }

    pub fn one(field: &Field) -> Poly {
        Poly::constant(field, field.one())
    }

    pub fn constant(field: &Field, c: Fe) -> Poly {
        Poly::new(field.clone(), vec![c])
    }

    pub fn x(field: &Field) -> Poly {
        Poly::new(field.clone(), vec![field.zero(), field.one()])
    }

    pub fn monomial(field: &Field, c: Fe, e: usize) -> Poly {
        let mut v = vec![field.zero(); e + 1];
        v[e] = c;
        Poly::new(field.clone(), v)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[Fe] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Fe {
        self.coeffs.get(i).copied().unwrap_or(Fe(0))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; 0 for constants and for the zero polynomial.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn lc(&self) -> Fe {
        self.coeffs.last().copied().unwrap_or(Fe(0))
    }

    pub fn is_monic(&self) -> bool {
        self.lc() == self.field.one()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0] == self.field.one()
    }

    pub fn scale(&self, c: Fe) -> Poly {
        let f = &self.field;
        Poly::new(
            f.clone(),
            self.coeffs.iter().map(|&a| f.mul(a, c)).collect(),
        )
    }

    pub fn make_monic(&self) -> Poly {
        if self.is_zero() || self.is_monic() {
            return self.clone();
        }
        self.scale(
            self.field
                .inv(self.lc())
                .expect("nonzero leading coefficient"),
        )
    }

    pub fn mul_xpow(&self, e: usize) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let mut v = vec![self.field.zero(); e];
        v.extend_from_slice(&self.coeffs);
        Poly::new(self.field.clone(), v)
    }

    pub fn divrem(&self, d: &Poly) -> Result<(Poly, Poly)> {
        assert_eq!(self.field, d.field, "mixed fields");
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let f = &self.field;
        let dl = d.coeffs.len();
        if self.coeffs.len() < dl {
            return Ok((Poly::zero(f), self.clone()));
        }
        let lead_inv = f.inv(d.lc()).expect("nonzero leading coefficient");
        let mut rem = self.coeffs.clone();
        let mut quo = vec![f.zero(); rem.len() - dl + 1];
        for i in (0..quo.len()).rev() {
            let c = f.mul(rem[i + dl - 1], lead_inv);
            quo[i] = c;
            if c == Fe(0) {
                continue;
            }
            for (j, &dc) in d.coeffs.iter().enumerate() {
                rem[i + j] = f.sub(rem[i + j], f.mul(c, dc));
            }
        }
        Ok((Poly::new(f.clone(), quo), Poly::new(f.clone(), rem)))
    }

    pub fn rem(&self, d: &Poly) -> Result<Poly> {
        Ok(self.divrem(d)?.1)
    }

    /// Exact division; panics if the division leaves a remainder.
    pub fn div_exact(&self, d: &Poly) -> Poly {
        let (q, r) = self.divrem(d).expect("nonzero divisor");
        assert!(r.is_zero(), "division was not exact");
        q
    }

    pub fn derivative(&self) -> Poly {
        let f = &self.field;
        let mut v = Vec::with_capacity(self.coeffs.len().saturating_sub(1));
        for (i, &c) in self.coeffs.iter().enumerate().skip(1) {
            let mut s = f.zero();
            for _ in 0..(i as u64 % f.p()) {
                s = f.add(s, c);
            }
            v.push(s);
        }
        Poly::new(f.clone(), v)
    }

    pub fn eval(&self, x: Fe) -> Fe {
        let f = &self.field;
        let mut acc = f.zero();
        for &c in self.coeffs.iter().rev() {
            acc = f.add(f.mul(acc, x), c);
        }
        acc
    }

    /// `self(inner(X))`, expanded exactly.
    pub fn compose(&self, inner: &Poly) -> Poly {
        assert_eq!(self.field, inner.field, "mixed fields");
        let f = &self.field;
        let mut acc = Poly::zero(f);
        for &c in self.coeffs.iter().rev() {
            acc = &(&acc * inner) + &Poly::constant(f, c);
        }
        acc
    }

    pub fn pow(&self, e: usize) -> Poly {
        let mut acc = Poly::one(&self.field);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn pow_mod(&self, mut e: u128, m: &Poly) -> Poly {
        let mut base = self.rem(m).expect("nonzero modulus");
        let mut acc = Poly::one(&self.field).rem(m).expect("nonzero modulus");
        while e > 0 {
            if e & 1 == 1 {
                acc = (&acc * &base).rem(m).unwrap();
            }
            base = (&base * &base).rem(m).unwrap();
            e >>= 1;
        }
        acc
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Poly) -> Result<Poly> {
        assert_eq!(self.field, other.field, "mixed fields");
        if self.is_zero() && other.is_zero() {
            return Err(Error::BothZero);
        }
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r;
        }
        Ok(a.make_monic())
    }

    /// Extended Euclid: returns `(d, u, v)` with `u*self + v*other = d`,
    /// `d` monic.
    pub fn ext_gcd(&self, other: &Poly) -> Result<(Poly, Poly, Poly)> {
        assert_eq!(self.field, other.field, "mixed fields");
        if self.is_zero() && other.is_zero() {
            return Err(Error::BothZero);
        }
        let f = &self.field;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut u0, mut u1) = (Poly::one(f), Poly::zero(f));
        let (mut v0, mut v1) = (Poly::zero(f), Poly::one(f));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1)?;
            r0 = r1;
            r1 = r;
            let nu = &u0 - &(&q * &u1);
            u0 = u1;
            u1 = nu;
            let nv = &v0 - &(&q * &v1);
            v0 = v1;
            v1 = nv;
        }
        let c = f.inv(r0.lc()).expect("nonzero gcd");
        Ok((r0.scale(c), u0.scale(c), v0.scale(c)))
    }

    /// All monic polynomials of degree `d`, in canonical order.
    pub fn monic_polys(field: &Field, d: usize) -> impl Iterator<Item = Poly> {
        let field = field.clone();
        let q = field.order();
        let total = q.pow(d as u32);
        (0..total).map(move |m| {
            let mut coeffs = Vec::with_capacity(d + 1);
            // c_0 is the most significant digit of the index
            let mut rest = m;
            let mut digits = vec![0u64; d];
            for i in (0..d).rev() {
                digits[i] = rest % q;
                rest /= q;
            }
            for &c in &digits {
                coeffs.push(field.from_u64(c));
            }
            coeffs.push(field.one());
            Poly::new(field.clone(), coeffs)
        })
    }

    /// All polynomials of degree `< n` (including zero), in canonical order.
    pub fn polys_below_degree(field: &Field, n: usize) -> impl Iterator<Item = Poly> {
        let field = field.clone();
        let q = field.order();
        let zero = std::iter::once(Poly::zero(&field));
        let f2 = field.clone();
        let rest = (0..n).flat_map(move |d| {
            let field = f2.clone();
            let total = q.pow(d as u32 + 1);
            (0..total).filter_map(move |m| {
                let mut rest = m;
                let mut digits = vec![0u64; d + 1];
                for i in (0..=d).rev() {
                    digits[i] = rest % q;
                    rest /= q;
                }
                if digits[d] == 0 {
                    return None;
                }
                let coeffs = digits.iter().map(|&c| field.from_u64(c)).collect();
                Some(Poly::new(field.clone(), coeffs))
            })
        });
        zero.chain(rest)
    }

    /// The polynomial at position `idx` in the canonical order used by
    /// `polys_below_degree` (0 is the zero polynomial). Allows random access
    /// for partitioned sweeps.
    pub(crate) fn nth_in_canonical_order(field: &Field, idx: u64) -> Poly {
        if idx == 0 {
            return Poly::zero(field);
        }
        let q = field.order();
        let mut rest = idx - 1;
        let mut d = 0usize;
        loop {
            let block = (q - 1) * q.pow(d as u32);
            if rest < block {
                break;
            }
            rest -= block;
            d += 1;
        }
        // within the degree-d block: leading coefficient cycles fastest
        let prefix = rest / (q - 1);
        let lead = 1 + rest % (q - 1);
        let mut digits = vec![0u64; d + 1];
        digits[d] = lead;
        let mut p = prefix;
        for i in (0..d).rev() {
            digits[i] = p % q;
            p /= q;
        }
        Poly::new(
            field.clone(),
            digits.iter().map(|&c| field.from_u64(c)).collect(),
        )
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        assert_eq!(self.field, rhs.field, "mixed fields");
        let f = &self.field;
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let v = (0..n).map(|i| f.add(self.coeff(i), rhs.coeff(i))).collect();
        Poly::new(f.clone(), v)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        assert_eq!(self.field, rhs.field, "mixed fields");
        let f = &self.field;
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let v = (0..n).map(|i| f.sub(self.coeff(i), rhs.coeff(i))).collect();
        Poly::new(f.clone(), v)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        let f = &self.field;
        Poly::new(f.clone(), self.coeffs.iter().map(|&c| f.neg(c)).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        assert_eq!(self.field, rhs.field, "mixed fields");
        let f = &self.field;
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero(f);
        }
        let mut v = vec![f.zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == Fe(0) {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                v[i + j] = f.add(v[i + j], f.mul(a, b));
            }
        }
        Poly::new(f.clone(), v)
    }
}

/// Chinese remainder reconstruction: the unique `g` with `g ≡ g_i mod f_i`
/// and `deg g < Σ deg f_i`. Moduli must be monic, nonconstant and pairwise
/// coprime.
pub fn poly_crt(pairs: &[(Poly, Poly)]) -> Result<Poly> {
    assert!(!pairs.is_empty(), "empty residue list");
    for (_, m) in pairs {
        if m.is_constant() {
            return Err(Error::ConstantPolynomial);
        }
        if !m.is_monic() {
            return Err(Error::NotMonic);
        }
    }
    let (mut g, mut m) = (pairs[0].0.rem(&pairs[0].1)?, pairs[0].1.clone());
    for (gi, fi) in &pairs[1..] {
        let (d, u, _) = m.ext_gcd(fi)?;
        if !d.is_one() {
            return Err(Error::NonCoprimeModuli);
        }
        // g + m * (u * (gi - g) mod fi) satisfies both congruences
        let t = (&u * &(gi - &g)).rem(fi)?;
        g = &g + &(&m * &t);
        m = &m * fi;
        g = g.rem(&m)?;
    }
    Ok(g)
}

/// Resultant of two nonzero polynomials via the Sylvester determinant.
pub fn resultant(f: &Poly, g: &Poly) -> Result<Fe> {
    assert_eq!(f.field, g.field, "mixed fields");
    if f.is_zero() || g.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let fld = f.field.clone();
    let (m, n) = (f.degree(), g.degree());
    if m == 0 {
        return Ok(fld.pow(f.coeff(0), n as u128));
    }
    if n == 0 {
        return Ok(fld.pow(g.coeff(0), m as u128));
    }
    let s = m + n;
    let mut a = vec![fld.zero(); s * s];
    for row in 0..n {
        for (j, i) in (0..=m).rev().enumerate() {
            a[row * s + row + j] = f.coeff(i);
        }
    }
    for row in 0..m {
        for (j, i) in (0..=n).rev().enumerate() {
            a[(n + row) * s + row + j] = g.coeff(i);
        }
    }
    // determinant by Gaussian elimination
    let mut det = fld.one();
    for col in 0..s {
        let pivot = (col..s).find(|&r| a[r * s + col] != Fe(0));
        let pr = match pivot {
            Some(pr) => pr,
            None => return Ok(fld.zero()),
        };
        if pr != col {
            for j in 0..s {
                a.swap(pr * s + j, col * s + j);
            }
            det = fld.neg(det);
        }
        let pv = a[col * s + col];
        det = fld.mul(det, pv);
        let inv = fld.inv(pv).unwrap();
        for r in col + 1..s {
            let factor = fld.mul(a[r * s + col], inv);
            if factor == Fe(0) {
                continue;
            }
            for j in col..s {
                let sub = fld.mul(factor, a[col * s + j]);
                a[r * s + j] = fld.sub(a[r * s + j], sub);
            }
        }
    }
    Ok(det)
}
