//! Deciding whether a matrix is of polynomial type: constructive witness
//! strategies, a brute-force sweep with exhaustion certificates, the
//! counterexample family showing some matrices are not of polynomial type,
//! and the nilpotent-profile theory.

mod brute;
mod nilpotent;
mod witness;

pub use brute::{brute_force, brute_force_serial, DEFAULT_BUDGET};
pub use nilpotent::{nilpotent_decide, NilpotentProfile};
pub use witness::{
    build_commuting_cyclic, witness_diagonalizable, witness_homogeneous, witness_jordan,
    witness_near_diagonal, witness_via_conjugates,
};

use crate::error::{Error, Result};
use crate::ffpoly::{Fe, Field, Poly};
use crate::matrix::{
    companion, direct_sum, evaluate_poly, invariant_factors, jordan_block, similar,
    ElementaryDivisors, Matrix,
};

/// An affine substitution X ↦ aX + b with a ≠ 0, acting on polynomials by
/// f ↦ a^{−deg f}·f(aX+b).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OmegaElement {
    pub a: Fe,
    pub b: Fe,
}

impl OmegaElement {
    pub fn identity(field: &Field) -> OmegaElement {
        OmegaElement {
            a: field.one(),
            b: field.zero(),
        }
    }

    /// Group law, as 2×2 matrices [[a, b], [0, 1]]; the action is a right
    /// action: acting by `self` then by `other` equals acting by
    /// `self.compose(other)`.
    pub fn compose(&self, other: &OmegaElement, field: &Field) -> OmegaElement {
        OmegaElement {
            a: field.mul(self.a, other.a),
            b: field.add(field.mul(self.a, other.b), self.b),
        }
    }
}

/// f^M = a^{−deg f}·f(aX + b); degree-, monicity- and irreducibility-
/// preserving.
pub fn omega_act(m: &OmegaElement, f: &Poly) -> Poly {
    if f.is_zero() {
        return f.clone();
    }
    let field = f.field().clone();
    let sub = Poly::new(field.clone(), vec![m.b, m.a]);
    let scaled = f.compose(&sub);
    let c = field
        .inv(field.pow(m.a, f.degree() as u128))
        .expect("a nonzero");
    scaled.scale(c)
}

/// (S_f, T_f): the additive stabilizer {b : f(X+b) ~ f} and multiplicative
/// stabilizer {a : a^{−m} f(aX) = f}, by exhaustive action.
pub fn stabilizers(f: &Poly) -> (Vec<Fe>, Vec<Fe>) {
    let field = f.field().clone();
    let s = field
        .elements()
        .filter(|&b| omega_act(&OmegaElement { a: field.one(), b }, f) == *f)
        .collect();
    let t = field
        .elements()
        .filter(|&a| a != field.zero())
        .filter(|&a| omega_act(&OmegaElement { a, b: field.zero() }, f) == *f)
        .collect();
    (s, t)
}

/// True when g is in the Ω-orbit of f.
pub fn omega_conjugate(f: &Poly, g: &Poly) -> bool {
    let field = f.field().clone();
    field.elements().filter(|&a| a != field.zero()).any(|a| {
        field
            .elements()
            .any(|b| omega_act(&OmegaElement { a, b }, f) == *g)
    })
}

/// First Ω-conjugate of p (scanning F^+ when S_p is trivial, else F^* when
/// T_p is trivial) not in `used`, together with the group element that
/// produced it.
pub fn pick_fresh_conjugate(p: &Poly, used: &[Poly]) -> Result<(Poly, OmegaElement)> {
    let field = p.field().clone();
    let (s, t) = stabilizers(p);
    let candidates: Vec<OmegaElement> = if s.len() == 1 {
        field
            .elements()
            .map(|b| OmegaElement { a: field.one(), b })
            .collect()
    } else if t.len() == 1 {
        field
            .elements()
            .filter(|&a| a != field.zero())
            .map(|a| OmegaElement { a, b: field.zero() })
            .collect()
    } else {
        return Err(Error::StabilizerDichotomy);
    };
    for m in candidates {
        let r = omega_act(&m, p);
        if !used.contains(&r) {
            return Ok((r, m));
        }
    }
    Err(Error::ConjugatesExhausted)
}

/// ℓ(p) for each irreducible p among the elementary divisors: the total
/// multiplicity of divisors that are powers of an Ω-conjugate of p.
pub fn ell_table(ed: &ElementaryDivisors) -> Vec<(Poly, usize)> {
    ed.parts
        .keys()
        .map(|p| {
            let ell = ed
                .parts
                .iter()
                .filter(|(p2, _)| omega_conjugate(p, p2))
                .map(|(_, exps)| exps.len())
                .sum();
            (p.clone(), ell)
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Yes,
    No,
    Unknown,
}

#[derive(Clone, Copy, Debug)]
pub struct SearchStats {
    pub pairs: u64,
    pub pruned: u64,
    pub budget: u64,
    pub elapsed: std::time::Duration,
}

impl SearchStats {
    /// Flat key=value block recording an exhaustion certificate.
    pub fn certificate(&self, field: &Field, n: usize) -> String {
        format!(
            "field={}\nn={}\npairs={}\npruned={}\nelapsed_ms={}\n",
            field,
            n,
            self.pairs,
            self.pruned,
            self.elapsed.as_millis()
        )
    }
}

#[derive(Clone, Debug)]
pub struct PolytypeVerdict {
    pub status: Status,
    pub witness: Option<(Poly, Poly)>,
    pub strategy: &'static str,
    pub stats: Option<SearchStats>,
}

impl PolytypeVerdict {
    fn yes(f: Poly, g: Poly, strategy: &'static str) -> PolytypeVerdict {
        PolytypeVerdict {
            status: Status::Yes,
            witness: Some((f, g)),
            strategy,
            stats: None,
        }
    }
}

/// Checks a candidate witness by explicit construction and Smith-form
/// similarity; every emitted Yes passes through here.
pub(crate) fn verify_witness(a: &Matrix, f: &Poly, g: &Poly) -> bool {
    if f.degree() != a.size() {
        return false;
    }
    companion(f)
        .and_then(|c| evaluate_poly(g, &c))
        .and_then(|m| similar(a, &m))
        .unwrap_or(false)
}

/// Shifts a witness for A into one for A + aI.
pub fn shift_witness(witness: (Poly, Poly), a: Fe) -> (Poly, Poly) {
    let (f, g) = witness;
    let shifted = &g + &Poly::constant(f.field(), a);
    (f, shifted)
}

/// The strategy chain: cheap constructive witnesses first, brute force with
/// the given pair budget as last resort.
pub fn polytype_decide(a: &Matrix, budget: u64) -> PolytypeVerdict {
    let field = a.field().clone();
    let invs = invariant_factors(a);
    if invs.is_cyclic() {
        let f = invs.factors[0].clone();
        let g = Poly::x(&field);
        if verify_witness(a, &f, &g) {
            return PolytypeVerdict::yes(f, g, "cyclic");
        }
    }
    let ed = crate::matrix::elementary_divisors(&invs);
    type Strategy = fn(&ElementaryDivisors, &Field) -> Option<(Poly, Poly)>;
    let strategies: [(&'static str, Strategy); 5] = [
        ("diagonalizable", witness_diagonalizable),
        ("near_diagonal", witness_near_diagonal),
        ("homogeneous", witness_homogeneous),
        ("jordan", witness_jordan),
        ("conjugates_crt", witness_via_conjugates),
    ];
    for (label, strategy) in strategies {
        if let Some((f, g)) = strategy(&ed, &field) {
            if verify_witness(a, &f, &g) {
                return PolytypeVerdict::yes(f, g, label);
            }
        }
    }
    brute_force(a, budget)
}

/// The (q+3)×(q+3) matrix J_3(0)⊕J_1(0)⊕J_1(a_2)⊕…⊕J_1(a_q) over a field
/// with q elements; it is not of polynomial type.
pub fn counterexample_matrix(field: &Field) -> Matrix {
    let mut blocks = vec![jordan_block(field, field.zero(), 3)];
    for a in field.elements() {
        blocks.push(jordan_block(field, a, 1));
    }
    direct_sum(&blocks).expect("same field")
}
