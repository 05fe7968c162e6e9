//! Exhaustive sweep over (f, g) pairs in canonical order, with a sound
//! factor-shape prune and an optional data-parallel inner loop.

use std::time::Instant;

use crate::ffpoly::{poly_factor, Poly};
use crate::matrix::{elementary_divisors, invariant_factors, ElementaryDivisors, Matrix};
use crate::simtype::simtype_with_factors;

use super::{PolytypeVerdict, SearchStats, Status};

/// Default pair budget: 2²⁴.
pub const DEFAULT_BUDGET: u64 = 1 << 24;

/// Sound prune: if simtype(f, g) = target for some g, each irreducible
/// factor r of f (multiplicity u) maps to a target prime p with
/// deg p | deg r; per p the mapped weights Σ u·deg r must total
/// deg p · Σ exponents, and max u must reach p's top exponent. When no such
/// assignment exists, no g can work for this f.
fn assignment_feasible(factors: &[(Poly, usize)], shape: &[(usize, usize, usize)]) -> bool {
    let k = shape.len();
    // remaining weight and best multiplicity seen, per target prime
    let mut remaining: Vec<usize> = shape.iter().map(|&(_, w, _)| w).collect();
    let mut best_u: Vec<usize> = vec![0; k];
    fn rec(
        factors: &[(Poly, usize)],
        idx: usize,
        shape: &[(usize, usize, usize)],
        remaining: &mut [usize],
        best_u: &mut [usize],
    ) -> bool {
        if idx == factors.len() {
            return remaining.iter().all(|&w| w == 0)
                && shape
                    .iter()
                    .zip(best_u.iter())
                    .all(|(&(_, _, emax), &u)| u >= emax);
        }
        let (r, u) = &factors[idx];
        let w = r.degree() * u;
        for t in 0..shape.len() {
            if r.degree() % shape[t].0 != 0 || remaining[t] < w {
                continue;
            }
            remaining[t] -= w;
            let prev = best_u[t];
            best_u[t] = prev.max(*u);
            if rec(factors, idx + 1, shape, remaining, best_u) {
                return true;
            }
            best_u[t] = prev;
            remaining[t] += w;
        }
        false
    }
    rec(factors, 0, shape, &mut remaining, &mut best_u)
}

fn matches(f: &Poly, factors: &[(Poly, usize)], g: &Poly, target: &ElementaryDivisors) -> bool {
    simtype_with_factors(f, factors, g)
        .map(|a| a.divisors == *target)
        .unwrap_or(false)
}

#[cfg(feature = "parallel")]
fn scan(
    f: &Poly,
    factors: &[(Poly, usize)],
    target: &ElementaryDivisors,
    take: u64,
    parallel: bool,
) -> Option<u64> {
    if parallel {
        use rayon::prelude::*;
        (0..take).into_par_iter().find_first(|&i| {
            let g = Poly::nth_in_canonical_order(f.field(), i);
            matches(f, factors, &g, target)
        })
    } else {
        scan_serial(f, factors, target, take)
    }
}

#[cfg(not(feature = "parallel"))]
fn scan(
    f: &Poly,
    factors: &[(Poly, usize)],
    target: &ElementaryDivisors,
    take: u64,
    _parallel: bool,
) -> Option<u64> {
    scan_serial(f, factors, target, take)
}

fn scan_serial(
    f: &Poly,
    factors: &[(Poly, usize)],
    target: &ElementaryDivisors,
    take: u64,
) -> Option<u64> {
    (0..take).find(|&i| {
        let g = Poly::nth_in_canonical_order(f.field(), i);
        matches(f, factors, &g, target)
    })
}

fn brute_impl(a: &Matrix, budget: u64, parallel: bool) -> PolytypeVerdict {
    let field = a.field().clone();
    let n = a.size();
    let per_f = field.order().pow(n as u32);
    let target = elementary_divisors(&invariant_factors(a));
    // per target prime: (deg p, deg p · Σ exponents, max exponent)
    let shape: Vec<(usize, usize, usize)> = target
        .parts
        .iter()
        .map(|(p, exps)| {
            (
                p.degree(),
                p.degree() * exps.iter().sum::<usize>(),
                *exps.last().expect("nonempty"),
            )
        })
        .collect();
    let start = Instant::now();
    let mut pairs = 0u64;
    let mut pruned = 0u64;
    for f in Poly::monic_polys(&field, n) {
        let factors = poly_factor(&f).expect("monic f").factors;
        if !assignment_feasible(&factors, &shape) {
            pairs += per_f;
            pruned += per_f;
            continue;
        }
        let take = budget.saturating_sub(pairs).min(per_f);
        let hit = scan(&f, &factors, &target, take, parallel);
        pairs += take;
        if let Some(i) = hit {
            // only the pairs up to and including the hit were examined
            pairs -= take - (i + 1);
            let g = Poly::nth_in_canonical_order(&field, i);
            return PolytypeVerdict {
                status: Status::Yes,
                witness: Some((f, g)),
                strategy: "brute_force",
                stats: Some(SearchStats {
                    pairs,
                    pruned,
                    budget,
                    elapsed: start.elapsed(),
                }),
            };
        }
        if take < per_f {
            return PolytypeVerdict {
                status: Status::Unknown,
                witness: None,
                strategy: "brute_force",
                stats: Some(SearchStats {
                    pairs,
                    pruned,
                    budget,
                    elapsed: start.elapsed(),
                }),
            };
        }
    }
    PolytypeVerdict {
        status: Status::No,
        witness: None,
        strategy: "brute_force",
        stats: Some(SearchStats {
            pairs,
            pruned,
            budget,
            elapsed: start.elapsed(),
        }),
    }
}

/// Sweep all (f, g) in canonical order; Yes with the first witness, No when
/// the whole q^{2n} space is covered, Unknown when the budget runs out.
/// Parallelizes the inner g loop when the `parallel` feature is on; the
/// first-hit-in-canonical-order merge keeps verdicts identical either way.
pub fn brute_force(a: &Matrix, budget: u64) -> PolytypeVerdict {
    brute_impl(a, budget, cfg!(feature = "parallel"))
}

/// Single-threaded variant, for benchmarking against the parallel sweep.
pub fn brute_force_serial(a: &Matrix, budget: u64) -> PolytypeVerdict {
    brute_impl(a, budget, false)
}
