use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use crate::error::{Error, Result};

use super::poly::Poly;

/// Largest field order for which multiplication and inverse tables are precomputed.
const TABLE_LIMIT: u64 = 256;

/// An element of a finite field, encoded as its index in the canonical
/// enumeration: the element with coefficient vector `(c_0, ..., c_{k-1})`
/// over `Z_p` has code `c_0 + c_1 p + ... + c_{k-1} p^{k-1}`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Fe(pub(crate) u64);

impl Fe {
    pub fn code(self) -> u64 {
        self.0
    }
}

pub(crate) struct FieldRepr {
    p: u64,
    k: usize,
    q: u64,
    /// Coefficients of the monic irreducible modulus over `Z_p`, constant
    /// first, length `k + 1`. Empty for prime fields.
    modulus: Vec<u64>,
    mul_tab: Option<Vec<u64>>,
    inv_tab: Option<Vec<u64>>,
}

/// A finite field `F_{p^k}`. Cheap to clone; equality compares `p`, `k`
/// and the modulus.
#[derive(Clone)]
pub struct Field(Arc<FieldRepr>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.0.p == other.0.p && self.0.k == other.0.k && self.0.modulus == other.0.modulus
    }
}
impl Eq for Field {}

impl Hash for Field {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.p.hash(state);
        self.0.k.hash(state);
        self.0.modulus.hash(state);
    }
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{})", self.0.p, self.0.k)
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

impl Field {
    fn from_repr(p: u64, k: usize, modulus: Vec<u64>) -> Field {
        let q = p.pow(k as u32);
        let mut repr = FieldRepr {
            p,
            k,
            q,
            modulus,
            mul_tab: None,
            inv_tab: None,
        };
        if q <= TABLE_LIMIT {
            let field = Field(Arc::new(FieldRepr {
                p,
                k,
                q,
                modulus: repr.modulus.clone(),
                mul_tab: None,
                inv_tab: None,
            }));
            let mut mul = vec![0u64; (q * q) as usize];
            for a in 0..q {
                for b in a..q {
                    let c = field.mul_raw(Fe(a), Fe(b)).0;
                    mul[(a * q + b) as usize] = c;
                    mul[(b * q + a) as usize] = c;
                }
            }
            let mut inv = vec![0u64; q as usize];
            for a in 1..q {
                for b in 1..q {
                    if mul[(a * q + b) as usize] == 1 {
                        inv[a as usize] = b;
                        break;
                    }
                }
            }
            repr.mul_tab = Some(mul);
            repr.inv_tab = Some(inv);
        }
        Field(Arc::new(repr))
    }

    /// The prime field `F_p`. Panics if `p` is not prime; use [`field_make`]
    /// for validated construction.
    pub fn prime(p: u64) -> Field {
        assert!(is_prime(p), "{} is not prime", p);
        Field::from_repr(p, 1, Vec::new())
    }

    pub fn p(&self) -> u64 {
        self.0.p
    }

    pub fn extension_degree(&self) -> usize {
        self.0.k
    }

    /// Field order `p^k`.
    pub fn order(&self) -> u64 {
        self.0.q
    }

    /// Modulus coefficients over `Z_p`, constant first; empty for prime fields.
    pub fn modulus_coeffs(&self) -> &[u64] {
        &self.0.modulus
    }

    pub fn zero(&self) -> Fe {
        Fe(0)
    }

    pub fn one(&self) -> Fe {
        Fe(1)
    }

    /// Element with code `n mod q`. For prime fields this is the residue.
    pub fn from_u64(&self, n: u64) -> Fe {
        Fe(n % self.0.q)
    }

    /// Canonical enumeration of all field elements, starting at 0.
    pub fn elements(&self) -> impl Iterator<Item = Fe> {
        (0..self.0.q).map(Fe)
    }

    fn decode(&self, a: Fe) -> Vec<u64> {
        let mut v = vec![0u64; self.0.k];
        let mut c = a.0;
        for d in v.iter_mut() {
            *d = c % self.0.p;
            c /= self.0.p;
        }
        v
    }

    fn encode(&self, v: &[u64]) -> Fe {
        let mut c = 0u64;
        for &d in v.iter().rev() {
            c = c * self.0.p + d % self.0.p;
        }
        Fe(c)
    }

    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        if self.0.k == 1 {
            return Fe((a.0 + b.0) % self.0.p);
        }
        let (x, y) = (self.decode(a), self.decode(b));
        let v: Vec<u64> = x
            .iter()
            .zip(y.iter())
            .map(|(&u, &w)| (u + w) % self.0.p)
            .collect();
        self.encode(&v)
    }

    pub fn neg(&self, a: Fe) -> Fe {
        if self.0.k == 1 {
            return Fe((self.0.p - a.0) % self.0.p);
        }
        let x = self.decode(a);
        let v: Vec<u64> = x.iter().map(|&u| (self.0.p - u) % self.0.p).collect();
        self.encode(&v)
    }

    pub fn sub(&self, a: Fe, b: Fe) -> Fe {
        self.add(a, self.neg(b))
    }

    fn mul_raw(&self, a: Fe, b: Fe) -> Fe {
        let p = self.0.p;
        if self.0.k == 1 {
            return Fe(a.0 * b.0 % p);
        }
        let (x, y) = (self.decode(a), self.decode(b));
        let k = self.0.k;
        let mut prod = vec![0u64; 2 * k - 1];
        for (i, &u) in x.iter().enumerate() {
            for (j, &w) in y.iter().enumerate() {
                prod[i + j] = (prod[i + j] + u * w) % p;
            }
        }
        // reduce modulo the field modulus
        for i in (k..prod.len()).rev() {
            let c = prod[i];
            if c == 0 {
                continue;
            }
            prod[i] = 0;
            for j in 0..k {
                let m = self.0.modulus[j];
                prod[i - k + j] = (prod[i - k + j] + c * (p - m)) % p;
            }
        }
        prod.truncate(k);
        self.encode(&prod)
    }

    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        match &self.0.mul_tab {
            Some(t) => Fe(t[(a.0 * self.0.q + b.0) as usize]),
            None => self.mul_raw(a, b),
        }
    }

    pub fn pow(&self, a: Fe, mut e: u128) -> Fe {
        let mut base = a;
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: Fe) -> Result<Fe> {
        if a.0 == 0 {
            return Err(Error::ZeroElement);
        }
        match &self.0.inv_tab {
            Some(t) => Ok(Fe(t[a.0 as usize])),
            None => Ok(self.pow(a, (self.0.q - 2) as u128)),
        }
    }

    pub fn div(&self, a: Fe, b: Fe) -> Result<Fe> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// p-th root, well defined since the field is perfect.
    pub fn pth_root(&self, a: Fe) -> Fe {
        if self.0.k == 1 {
            return a;
        }
        let e = self.0.p.pow(self.0.k as u32 - 1);
        self.pow(a, e as u128)
    }
}

/// Validated field construction. For `k > 1` without an explicit modulus the
/// canonically least monic irreducible of degree `k` over `F_p` is chosen.
pub fn field_make(p: u64, k: usize, modulus: Option<&Poly>) -> Result<Field> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if k == 0 {
        return Err(Error::BadExtensionDegree);
    }
    if p.checked_pow(k as u32).is_none() {
        return Err(Error::BadExtensionDegree);
    }
    if k == 1 {
        if modulus.is_some() {
            return Err(Error::BadModulus { expected: 1 });
        }
        return Ok(Field::from_repr(p, 1, Vec::new()));
    }
    let base = Field::from_repr(p, 1, Vec::new());
    let m = match modulus {
        Some(m) => {
            if m.field() != &base
                || m.degree() != k
                || !m.is_monic()
                || !super::factor::is_irreducible(m)
            {
                return Err(Error::BadModulus { expected: k });
            }
            m.clone()
        }
        None => Poly::monic_polys(&base, k)
            .find(super::factor::is_irreducible)
            .expect("an irreducible polynomial of every degree exists"),
    };
    let digits: Vec<u64> = m.coeffs().iter().map(|c| c.code()).collect();
    Ok(Field::from_repr(p, k, digits))
}
