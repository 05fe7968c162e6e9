//! Text grammar for fields and polynomials.
//!
//! Field specs: `GF(p)`, `GF(p^k)`, `GF(p^k;mod=<poly in t>)`.
//! Polynomials: terms joined by `+`, each `c`, `c*X^e`, `X^e`, or `X`;
//! extension-field coefficients are parenthesized polynomials in `t`.

use std::fmt;

use crate::error::{Error, Result};

use super::field::{Fe, Field};
use super::poly::Poly;

pub fn format_element(field: &Field, c: Fe) -> String {
    if field.extension_degree() == 1 || c.code() < field.p() {
        return c.code().to_string();
    }
    let p = field.p();
    let mut digits = Vec::new();
    let mut code = c.code();
    while code > 0 {
        digits.push(code % p);
        code /= p;
    }
    let mut s = String::from("(");
    let mut first = true;
    for (e, &d) in digits.iter().enumerate().rev() {
        if d == 0 {
            continue;
        }
        if !first {
            s.push('+');
        }
        first = false;
        match e {
            0 => s.push_str(&d.to_string()),
            _ => {
                if d != 1 {
                    s.push_str(&d.to_string());
                    s.push('*');
                }
                s.push('t');
                if e > 1 {
                    s.push_str(&format!("^{}", e));
                }
            }
        }
    }
    s.push(')');
    s
}

fn format_poly(field: &Field, coeffs: &[Fe], var: char) -> String {
    if coeffs.is_empty() {
        return "0".to_string();
    }
    let mut s = String::new();
    for (e, &c) in coeffs.iter().enumerate().rev() {
        if c == Fe(0) {
            continue;
        }
        if !s.is_empty() {
            s.push('+');
        }
        if e == 0 {
            s.push_str(&format_element(field, c));
            continue;
        }
        if c != field.one() {
            s.push_str(&format_element(field, c));
            s.push('*');
        }
        s.push(var);
        if e > 1 {
            s.push_str(&format!("^{}", e));
        }
    }
    if s.is_empty() {
        s.push('0');
    }
    s
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_poly(self.field(), self.coeffs(), 'X'))
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = self.p();
        let k = self.extension_degree();
        if k == 1 {
            return write!(f, "GF({})", p);
        }
        let default = super::field::field_make(p, k, None).expect("valid field");
        if default.modulus_coeffs() == self.modulus_coeffs() {
            write!(f, "GF({}^{})", p, k)
        } else {
            let base = Field::prime(p);
            let coeffs: Vec<Fe> = self
                .modulus_coeffs()
                .iter()
                .map(|&c| base.from_u64(c))
                .collect();
            write!(
                f,
                "GF({}^{};mod={})",
                p,
                k,
                format_poly(&base, &coeffs, 't')
            )
        }
    }
}

/// Parses a field spec like `GF(2)`, `GF(3^2)` or `GF(2^3;mod=t^3+t+1)`.
pub fn parse_field(s: &str) -> Result<Field> {
    let s = s.trim();
    let inner = s
        .strip_prefix("GF(")
        .and_then(|r| r.strip_suffix(')'))
        .ok_or_else(|| Error::Parse(format!("bad field spec `{}`", s)))?;
    let (base, modpart) = match inner.split_once(';') {
        Some((b, m)) => (b, Some(m)),
        None => (inner, None),
    };
    let (p, k) = match base.split_once('^') {
        Some((p, k)) => (parse_u64(p.trim())?, parse_u64(k.trim())? as usize),
        None => (parse_u64(base.trim())?, 1usize),
    };
    let modulus = match modpart {
        Some(m) => {
            let m = m
                .trim()
                .strip_prefix("mod=")
                .ok_or_else(|| Error::Parse(format!("bad field spec `{}`", s)))?;
            let prime = super::field::field_make(p, 1, None)?;
            Some(parse_poly_var(&prime, m, 't')?)
        }
        None => None,
    };
    super::field::field_make(p, k, modulus.as_ref())
}

fn parse_u64(s: &str) -> Result<u64> {
    s.parse()
        .map_err(|_| Error::Parse(format!("bad integer `{}`", s)))
}

/// Parses a polynomial in `X` over the given field.
pub fn parse_poly(field: &Field, s: &str) -> Result<Poly> {
    parse_poly_var(field, s, 'X')
}

fn parse_poly_var(field: &Field, s: &str, var: char) -> Result<Poly> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(Error::Parse("empty polynomial".to_string()));
    }
    let mut acc = Poly::zero(field);
    for term in split_top_level(&s)? {
        acc = &acc + &parse_term(field, term, var)?;
    }
    Ok(acc)
}

fn split_top_level(s: &str) -> Result<Vec<&str>> {
    let mut parts = Vec::new();
    let mut depth = 0usize;
    let mut start = 0usize;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => {
                depth = depth
                    .checked_sub(1)
                    .ok_or_else(|| Error::Parse(format!("unbalanced parens in `{}`", s)))?;
            }
            '+' if depth == 0 => {
                parts.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    if depth != 0 {
        return Err(Error::Parse(format!("unbalanced parens in `{}`", s)));
    }
    parts.push(&s[start..]);
    Ok(parts)
}

fn parse_term(field: &Field, term: &str, var: char) -> Result<Poly> {
    if term.is_empty() {
        return Err(Error::Parse("empty term".to_string()));
    }
    // split into coefficient part and variable part
    let (coeff, rest) = if let Some(inner_end) = term.starts_with('(').then(|| {
        let mut depth = 0usize;
        for (i, c) in term.char_indices() {
            if c == '(' {
                depth += 1;
            } else if c == ')' {
                depth -= 1;
                if depth == 0 {
                    return Some(i);
                }
            }
        }
        None
    }) {
        let end = inner_end.ok_or_else(|| Error::Parse(format!("bad term `{}`", term)))?;
        let elem = parse_element(field, &term[..=end])?;
        (elem, &term[end + 1..])
    } else if term.starts_with(|c: char| c.is_ascii_digit()) {
        let split = term
            .find(|c: char| !c.is_ascii_digit())
            .unwrap_or(term.len());
        let code = parse_u64(&term[..split])?;
        if code >= field.p() && field.extension_degree() > 1 {
            return Err(Error::Parse(format!(
                "coefficient `{}` out of prime-field range",
                &term[..split]
            )));
        }
        (field.from_u64(code % field.order()), &term[split..])
    } else if !term.starts_with(var) && field.extension_degree() > 1 {
        // bare generator coefficient, e.g. `t*X^2` or a trailing `t`
        let (celem, rest) = match term.split_once('*') {
            Some((c, r)) => (c, r),
            None => (term, ""),
        };
        let prime = Field::prime(field.p());
        let tp = parse_poly_var(&prime, celem, 't')?;
        if tp.degree() >= field.extension_degree() && !tp.is_zero() {
            return Err(Error::Parse(format!("element `{}` out of range", celem)));
        }
        let mut code = 0u64;
        for c in tp.coeffs().iter().rev() {
            code = code * field.p() + c.code();
        }
        if rest.is_empty() {
            return Ok(Poly::constant(field, field.from_u64(code)));
        }
        (field.from_u64(code), rest)
    } else {
        (field.one(), term)
    };
    let rest = rest.strip_prefix('*').unwrap_or(rest);
    if rest.is_empty() {
        return Ok(Poly::constant(field, coeff));
    }
    let rest = rest
        .strip_prefix(var)
        .ok_or_else(|| Error::Parse(format!("bad term `{}`", term)))?;
    let exp = if rest.is_empty() {
        1usize
    } else {
        let digits = rest
            .strip_prefix('^')
            .ok_or_else(|| Error::Parse(format!("bad term `{}`", term)))?;
        parse_u64(digits)? as usize
    };
    Ok(Poly::monomial(field, coeff, exp))
}

/// Parses a standalone field element: a decimal digit string or a
/// parenthesized polynomial in `t`.
pub fn parse_element(field: &Field, s: &str) -> Result<Fe> {
    let s = s.trim();
    if let Some(inner) = s.strip_prefix('(').and_then(|r| r.strip_suffix(')')) {
        if field.extension_degree() == 1 {
            return Err(Error::Parse(format!(
                "parenthesized element `{}` in a prime field",
                s
            )));
        }
        let prime = Field::prime(field.p());
        let tp = parse_poly_var(&prime, inner, 't')?;
        if tp.degree() >= field.extension_degree() && !tp.is_zero() {
            return Err(Error::Parse(format!("element `{}` out of range", s)));
        }
        let mut code = 0u64;
        for c in tp.coeffs().iter().rev() {
            code = code * field.p() + c.code();
        }
        return Ok(field.from_u64(code));
    }
    let code = parse_u64(s)?;
    if field.extension_degree() > 1 && code >= field.p() {
        return Err(Error::Parse(format!("element `{}` out of range", s)));
    }
    Ok(field.from_u64(code % field.order()))
}
