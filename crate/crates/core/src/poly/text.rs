use crate::error::{ParseError, Result};
use crate::rational::Rational;

use super::{Monomial, Poly, Ring, VarId};

pub(super) fn write_poly(p: &Poly) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let ring = p.ring();
    let mut out = String::new();
    for (idx, (m, c)) in p.terms().iter().enumerate() {
        if idx > 0 {
            out.push_str(" + ");
        }
        out.push_str(&c.to_string());
        for (v, e) in m.iter() {
            out.push('*');
            out.push_str(&ring.var_at(v).to_string());
            if e > 1 {
                out.push('^');
                out.push_str(&e.to_string());
            }
        }
    }
    out
}

fn parse_var(s: &str) -> Result<VarId, ParseError> {
    let bad = || ParseError::Variable(s.to_string());
    let rest = s.strip_prefix('x').ok_or_else(bad)?;
    let mut idx = [0usize; 3];
    let mut rest = rest;
    for slot in idx.iter_mut() {
        let inner = rest.strip_prefix('[').ok_or_else(bad)?;
        let close = inner.find(']').ok_or_else(bad)?;
        *slot = inner[..close].trim().parse().map_err(|_| bad())?;
        rest = &inner[close + 1..];
    }
    if !rest.is_empty() {
        return Err(bad());
    }
    Ok(VarId::new(idx[0], idx[1], idx[2]))
}

pub(super) fn parse_poly(ring: Ring, s: &str) -> Result<Poly> {
    let s = s.trim();
    if s == "0" || s.is_empty() {
        return Ok(Poly::zero(ring));
    }
    let nv = ring.num_vars();
    let mut terms = Vec::new();
    for term in s.split(" + ") {
        let term = term.trim();
        let mut factors = term.split('*');
        let first = factors.next().ok_or_else(|| ParseError::Term(term.to_string()))?;
        let mut exps = vec![0u32; nv];
        let coeff = if first.starts_with('x') {
            add_factor(ring, &mut exps, first)?;
            Rational::ONE
        } else if let Some(rest) = first.strip_prefix("-x") {
            add_factor(ring, &mut exps, &format!("x{rest}"))?;
            -Rational::ONE
        } else {
            first.parse::<Rational>()?
        };
        for f in factors {
            add_factor(ring, &mut exps, f.trim())?;
        }
        terms.push((Monomial::from_exponents(&exps), coeff));
    }
    Ok(Poly::from_terms(ring, terms))
}

fn add_factor(ring: Ring, exps: &mut [u32], f: &str) -> Result<()> {
    let (var, e) = match f.split_once('^') {
        Some((v, e)) => (v, e.parse::<u32>().map_err(|_| ParseError::Term(f.to_string()))?),
        None => (f, 1),
    };
    let v = parse_var(var)?;
    exps[ring.index_of(v)?] += e;
    Ok(())
}
