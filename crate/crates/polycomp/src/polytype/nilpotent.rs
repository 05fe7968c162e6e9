//! Nilpotent profiles 1^{c(1)}|…|n^{c(n)} and the complete decision
//! procedure for whether such a matrix is of polynomial type: a fast
//! product-formula route when enough irreducibles exist, else an exhaustive
//! search of the equivalent diophantine system.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::ffpoly::{count_irreducibles, is_irreducible, Field, Poly};
use crate::matrix::{direct_sum, jordan_block, ElementaryDivisors, Matrix};
use crate::simtype::simtype_of_g_cf;

use super::{PolytypeVerdict, Status};

/// Direct sum of c(i) nilpotent Jordan blocks of size i.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NilpotentProfile {
    /// block size → count, zero counts omitted
    pub c: BTreeMap<usize, usize>,
}

impl NilpotentProfile {
    pub fn new(c: BTreeMap<usize, usize>) -> Result<NilpotentProfile> {
        let c: BTreeMap<usize, usize> = c.into_iter().filter(|&(_, k)| k > 0).collect();
        if c.is_empty() {
            return Err(Error::BadProfile("no blocks".into()));
        }
        if c.keys().any(|&i| i == 0) {
            return Err(Error::BadProfile("zero block size".into()));
        }
        Ok(NilpotentProfile { c })
    }

    /// Parses a comma-separated list of block sizes, e.g. `1,3,5` or `2,2,3`.
    pub fn parse(s: &str) -> Result<NilpotentProfile> {
        let mut c = BTreeMap::new();
        for part in s.split(',') {
            let size: usize = part
                .trim()
                .parse()
                .map_err(|_| Error::BadProfile(format!("bad block size `{}`", part.trim())))?;
            *c.entry(size).or_insert(0) += 1;
        }
        NilpotentProfile::new(c)
    }

    /// Total matrix size Σ i·c(i).
    pub fn n(&self) -> usize {
        self.c.iter().map(|(&i, &k)| i * k).sum()
    }

    /// Nilpotency class: the largest block size.
    pub fn class(&self) -> usize {
        *self.c.keys().last().expect("nonempty")
    }

    /// Nullity targets s_i = Σ_j c(j)·min(i, j) for i = 1..=class; strictly
    /// increasing with s_class = n.
    pub fn s_sequence(&self) -> Vec<usize> {
        (1..=self.class())
            .map(|i| self.c.iter().map(|(&j, &k)| k * i.min(j)).sum())
            .collect()
    }

    /// r(i) = number of block sizes j with c(j) = c(i).
    pub fn r(&self, i: usize) -> usize {
        let ci = self.c.get(&i).copied().unwrap_or(0);
        self.c.values().filter(|&&k| k == ci).count()
    }

    /// The matrix itself, blocks in ascending size order.
    pub fn matrix(&self, field: &Field) -> Matrix {
        let blocks: Vec<Matrix> = self
            .c
            .iter()
            .flat_map(|(&i, &k)| (0..k).map(move |_| i))
            .map(|i| jordan_block(field, field.zero(), i))
            .collect();
        direct_sum(&blocks).expect("same field")
    }

    /// Elementary divisors {X: block sizes with multiplicity}.
    pub fn target_divisors(&self, field: &Field) -> ElementaryDivisors {
        let mut ed = ElementaryDivisors::default();
        for (&i, &k) in &self.c {
            for _ in 0..k {
                ed.insert(Poly::x(field), i);
            }
        }
        ed
    }
}

/// First `count` monic irreducibles of degree d in canonical order.
fn irreducibles(field: &Field, d: usize, count: usize) -> Vec<Poly> {
    Poly::monic_polys(field, d)
        .filter(is_irreducible)
        .take(count)
        .collect()
}

/// Product-formula route: when N(c(i)) ≥ r(i) for all i with c(i) ≠ 0, pick
/// distinct irreducibles q_i of degree c(i) and use g = Π q_i, f = Π q_i^i.
fn product_formula(profile: &NilpotentProfile, field: &Field) -> Option<(Poly, Poly)> {
    for &i in profile.c.keys() {
        let ci = profile.c[&i];
        let need = profile.r(i) as u64;
        if count_irreducibles(field, ci).ok()? < need {
            return None;
        }
    }
    // sizes grouped by their count value share a degree, so they need
    // distinct irreducibles of that degree
    let mut by_count: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (&i, &k) in &profile.c {
        by_count.entry(k).or_default().push(i);
    }
    let mut f = Poly::one(field);
    let mut g = Poly::one(field);
    for (&count, sizes) in &by_count {
        let qs = irreducibles(field, count, sizes.len());
        if qs.len() < sizes.len() {
            return None;
        }
        for (&i, q) in sizes.iter().zip(&qs) {
            g = &g * q;
            f = &f * &q.pow(i);
        }
    }
    Some((f, g))
}

/// One solution of the diophantine system: k parts (d_j, a_j, b_j) meaning
/// an irreducible of degree d_j with multiplicity a_j in f and b_j in g.
type Parts = Vec<(usize, usize, usize)>;

/// Searches for distinct irreducibles r_j of degree d_j and exponents
/// 1 ≤ b_j ≤ a_j with Σ a_j d_j = n and Σ min(i·b_j, a_j)·d_j = s_i for all
/// i; availability per degree is bounded by N(d). The matrix is of
/// polynomial type iff a solution exists.
fn search_parts(field: &Field, n: usize, s: &[usize]) -> Option<Parts> {
    fn satisfies(parts: &Parts, s: &[usize]) -> bool {
        s.iter().enumerate().all(|(idx, &si)| {
            let i = idx + 1;
            parts
                .iter()
                .map(|&(d, a, b)| (i * b).min(a) * d)
                .sum::<usize>()
                == si
        })
    }
    fn rec(
        field: &Field,
        parts: &mut Parts,
        rem_n: usize,
        rem_s1: usize,
        max_tuple: (usize, usize, usize),
        used_per_degree: &mut BTreeMap<usize, usize>,
        s: &[usize],
    ) -> bool {
        if rem_n == 0 {
            return rem_s1 == 0 && !parts.is_empty() && satisfies(parts, s);
        }
        // enumerate tuples (d, a, b) in nonincreasing lex order to avoid
        // revisiting permutations of the same multiset
        for d in (1..=max_tuple.0.min(rem_n)).rev() {
            let available = count_irreducibles(field, d).unwrap_or(0);
            let used = *used_per_degree.get(&d).unwrap_or(&0);
            if (used as u64) >= available {
                continue;
            }
            let a_hi = if d == max_tuple.0 {
                max_tuple.1.min(rem_n / d)
            } else {
                rem_n / d
            };
            for a in (1..=a_hi).rev() {
                let b_hi = if d == max_tuple.0 && a == max_tuple.1 {
                    max_tuple.2
                } else {
                    a
                }
                .min(rem_s1 / d)
                .min(a);
                for b in (1..=b_hi).rev() {
                    parts.push((d, a, b));
                    *used_per_degree.entry(d).or_insert(0) += 1;
                    if rec(
                        field,
                        parts,
                        rem_n - a * d,
                        rem_s1 - b * d,
                        (d, a, b),
                        used_per_degree,
                        s,
                    ) {
                        return true;
                    }
                    *used_per_degree.get_mut(&d).unwrap() -= 1;
                    parts.pop();
                }
            }
        }
        false
    }
    let mut parts = Vec::new();
    let mut used = BTreeMap::new();
    rec(field, &mut parts, n, s[0], (n, n, n), &mut used, s).then_some(parts)
}

/// Instantiates a solution with concrete irreducibles: f = Π r_j^{a_j},
/// g = Π r_j^{b_j}.
fn instantiate(field: &Field, parts: &Parts) -> (Poly, Poly) {
    let mut need: BTreeMap<usize, usize> = BTreeMap::new();
    for &(d, _, _) in parts {
        *need.entry(d).or_insert(0) += 1;
    }
    let pool: BTreeMap<usize, Vec<Poly>> = need
        .iter()
        .map(|(&d, &k)| (d, irreducibles(field, d, k)))
        .collect();
    let mut next: BTreeMap<usize, usize> = need.keys().map(|&d| (d, 0)).collect();
    let mut f = Poly::one(field);
    let mut g = Poly::one(field);
    for &(d, a, b) in parts {
        let idx = next[&d];
        *next.get_mut(&d).unwrap() += 1;
        let r = &pool[&d][idx];
        f = &f * &r.pow(a);
        g = &g * &r.pow(b);
    }
    (f, g)
}

/// Complete decision for nilpotent profiles: Yes with a verified witness, or
/// No when the equivalent diophantine system has no solution.
pub fn nilpotent_decide(profile: &NilpotentProfile, field: &Field) -> PolytypeVerdict {
    let target = profile.target_divisors(field);
    let verify = |f: &Poly, g: &Poly| -> bool {
        simtype_of_g_cf(f, g)
            .map(|a| a.divisors == target)
            .unwrap_or(false)
    };
    if let Some((f, g)) = product_formula(profile, field) {
        if verify(&f, &g) {
            return PolytypeVerdict {
                status: Status::Yes,
                witness: Some((f, g)),
                strategy: "product_formula",
                stats: None,
            };
        }
    }
    let s = profile.s_sequence();
    if let Some(parts) = search_parts(field, profile.n(), &s) {
        let (f, g) = instantiate(field, &parts);
        if verify(&f, &g) {
            return PolytypeVerdict {
                status: Status::Yes,
                witness: Some((f, g)),
                strategy: "nilpotent_search",
                stats: None,
            };
        }
    }
    PolytypeVerdict {
        status: Status::No,
        witness: None,
        strategy: "nilpotent_search",
        stats: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffpoly::parse_poly;
    use crate::polytype::verify_witness;

    fn pp(f: &Field, s: &str) -> Poly {
        parse_poly(f, s).unwrap()
    }

    #[test]
    fn profile_parsing_and_invariants() {
        let p = NilpotentProfile::parse("1,3,5").unwrap();
        assert_eq!(p.n(), 9);
        assert_eq!(p.class(), 5);
        assert_eq!(p.s_sequence(), vec![3, 5, 7, 8, 9]);
        assert_eq!(p.r(1), 3);
        let p2 = NilpotentProfile::parse("2,2,3").unwrap();
        assert_eq!(p2.c[&2], 2);
        assert_eq!(p2.n(), 7);
        assert!(NilpotentProfile::parse("").is_err());
        assert!(NilpotentProfile::parse("0,1").is_err());
        assert!(NilpotentProfile::parse("x").is_err());
    }

    #[test]
    fn profile_matrix_matches_targets() {
        let f2 = Field::prime(2);
        let p = NilpotentProfile::parse("1,2").unwrap();
        let m = p.matrix(&f2);
        assert_eq!(m.size(), 3);
        let ed = crate::matrix::elementary_divisors(&crate::matrix::invariant_factors(&m));
        assert_eq!(ed, p.target_divisors(&f2));
    }

    #[test]
    fn product_formula_example() {
        let f2 = Field::prime(2);
        let p = NilpotentProfile::parse("1,2").unwrap();
        let v = nilpotent_decide(&p, &f2);
        assert_eq!(v.status, Status::Yes);
        assert_eq!(v.strategy, "product_formula");
        let (f, g) = v.witness.unwrap();
        assert_eq!(f, pp(&f2, "X^3+X"));
        assert_eq!(g, pp(&f2, "X^2+X"));
        assert!(verify_witness(&p.matrix(&f2), &f, &g));
    }

    #[test]
    fn single_part_profiles() {
        let f2 = Field::prime(2);
        for (spec, n) in [("3", 3usize), ("2,2", 4), ("4,4,4", 12)] {
            let p = NilpotentProfile::parse(spec).unwrap();
            let v = nilpotent_decide(&p, &f2);
            assert_eq!(v.status, Status::Yes, "profile {}", spec);
            let (f, g) = v.witness.unwrap();
            assert_eq!(f.degree(), n);
            assert!(verify_witness(&p.matrix(&f2), &f, &g));
        }
    }

    #[test]
    fn hard_positive_profiles() {
        // 1|2|i and 1|3|4 are of polynomial type over GF(2) even though the
        // product formula's irreducible-count condition fails
        let f2 = Field::prime(2);
        for spec in ["1,2,3", "1,2,4", "1,3,4"] {
            let p = NilpotentProfile::parse(spec).unwrap();
            let v = nilpotent_decide(&p, &f2);
            assert_eq!(v.status, Status::Yes, "profile {}", spec);
            let (f, g) = v.witness.unwrap();
            assert!(verify_witness(&p.matrix(&f2), &f, &g), "profile {}", spec);
        }
    }

    #[test]
    fn one_three_five_is_refuted() {
        let f2 = Field::prime(2);
        let p = NilpotentProfile::parse("1,3,5").unwrap();
        let v = nilpotent_decide(&p, &f2);
        assert_eq!(v.status, Status::No);
        // over GF(3) there are enough linear polynomials, so it flips to Yes
        let f3 = Field::prime(3);
        let v3 = nilpotent_decide(&p, &f3);
        assert_eq!(v3.status, Status::Yes);
        let (f, g) = v3.witness.unwrap();
        assert!(verify_witness(&p.matrix(&f3), &f, &g));
    }

    #[test]
    fn all_profiles_up_to_size_8_are_yes() {
        // every nilpotent matrix of size ≤ 8 over any field is of
        // polynomial type; spot-check GF(2), the tightest field
        let f2 = Field::prime(2);
        fn partitions(n: usize, max: usize) -> Vec<Vec<usize>> {
            if n == 0 {
                return vec![vec![]];
            }
            let mut out = Vec::new();
            for first in (1..=max.min(n)).rev() {
                for mut rest in partitions(n - first, first) {
                    rest.push(first);
                    out.push(rest);
                }
            }
            out
        }
        for n in 1..=8usize {
            for part in partitions(n, n) {
                let mut c = BTreeMap::new();
                for i in part {
                    *c.entry(i).or_insert(0) += 1;
                }
                let p = NilpotentProfile::new(c).unwrap();
                let v = nilpotent_decide(&p, &f2);
                assert_eq!(v.status, Status::Yes, "profile {:?}", p.c);
                let (f, g) = v.witness.unwrap();
                assert!(verify_witness(&p.matrix(&f2), &f, &g), "profile {:?}", p.c);
            }
        }
    }
}
