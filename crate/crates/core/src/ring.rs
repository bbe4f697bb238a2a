//! Polynomial rings, monomials and monomial orders.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use serde::Serialize;
use smallvec::SmallVec;

use crate::error::{AlgebraError, Result};
use crate::field::CoefficientField;

/// Exponent vector with cached total degree.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: SmallVec<[u16; 16]>,
    degree: u32,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial { exps: SmallVec::from_elem(0, nvars), degree: 0 }
    }

    pub fn from_exponents(exps: &[u16]) -> Self {
        let degree = exps.iter().map(|&e| e as u32).sum();
        Monomial { exps: SmallVec::from_slice(exps), degree }
    }

    pub fn variable(nvars: usize, idx: usize, exp: u16) -> Self {
        let mut m = Monomial::one(nvars);
        m.exps[idx] = exp;
        m.degree = exp as u32;
        m
    }

    #[inline]
    pub fn exponents(&self) -> &[u16] {
        &self.exps
    }

    #[inline]
    pub fn exponent(&self, idx: usize) -> u16 {
        self.exps[idx]
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let exps = self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect();
        Monomial { exps, degree: self.degree + other.degree }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.degree <= other.degree && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self`, if `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        let exps = other.exps.iter().zip(&self.exps).map(|(a, b)| a - b).collect();
        Some(Monomial { exps, degree: other.degree - self.degree })
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let exps: SmallVec<[u16; 16]> =
            self.exps.iter().zip(&other.exps).map(|(a, b)| *a.max(b)).collect();
        let degree = exps.iter().map(|&e| e as u32).sum();
        Monomial { exps, degree }
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let exps: SmallVec<[u16; 16]> =
            self.exps.iter().zip(&other.exps).map(|(a, b)| *a.min(b)).collect();
        let degree = exps.iter().map(|&e| e as u32).sum();
        Monomial { exps, degree }
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| *a == 0 || *b == 0)
    }

    pub fn is_squarefree(&self) -> bool {
        self.exps.iter().all(|&e| e <= 1)
    }

    /// Radical of the monomial: every positive exponent replaced by 1.
    pub fn squarefree_part(&self) -> Monomial {
        let exps: SmallVec<[u16; 16]> = self.exps.iter().map(|&e| e.min(1)).collect();
        let degree = exps.iter().map(|&e| e as u32).sum();
        Monomial { exps, degree }
    }

    /// Indices of variables with positive exponent.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.exps.iter().enumerate().filter(|(_, &e)| e > 0).map(|(i, _)| i)
    }

    /// Bitmask of the support (valid for at most 64 variables).
    pub fn support_mask(&self) -> u64 {
        self.support().fold(0u64, |acc, i| acc | (1u64 << i))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MonomialOrder {
    Degrevlex,
    Lex,
    /// Eliminates the first `k` variables: degrevlex on the first block
    /// decides, then degrevlex on the rest.
    Block(usize),
}

fn degrevlex_range(a: &[u16], b: &[u16]) -> Ordering {
    let da: u32 = a.iter().map(|&e| e as u32).sum();
    let db: u32 = b.iter().map(|&e| e as u32).sum();
    match da.cmp(&db) {
        Ordering::Equal => {}
        o => return o,
    }
    for (x, y) in a.iter().zip(b).rev() {
        if x != y {
            return y.cmp(x);
        }
    }
    Ordering::Equal
}

impl MonomialOrder {
    /// Total order on monomials; `Greater` means `a` ranks above `b`.
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::Degrevlex => match a.degree.cmp(&b.degree) {
                Ordering::Equal => {
                    for (x, y) in a.exps.iter().zip(&b.exps).rev() {
                        if x != y {
                            return y.cmp(x);
                        }
                    }
                    Ordering::Equal
                }
                o => o,
            },
            MonomialOrder::Lex => a.exps.cmp(&b.exps),
            MonomialOrder::Block(k) => {
                let k = (*k).min(a.exps.len());
                match degrevlex_range(&a.exps[..k], &b.exps[..k]) {
                    Ordering::Equal => degrevlex_range(&a.exps[k..], &b.exps[k..]),
                    o => o,
                }
            }
        }
    }
}

impl fmt::Display for MonomialOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MonomialOrder::Degrevlex => write!(f, "degrevlex"),
            MonomialOrder::Lex => write!(f, "lex"),
            MonomialOrder::Block(k) => write!(f, "block({k})"),
        }
    }
}

/// `k[vars]` with a monomial order. The first variable is the largest.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolyRing {
    vars: Vec<String>,
    field: CoefficientField,
    order: MonomialOrder,
}

pub(crate) fn valid_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl PolyRing {
    pub fn new<S: AsRef<str>>(
        vars: &[S],
        field: CoefficientField,
        order: MonomialOrder,
    ) -> Result<Arc<PolyRing>> {
        let mut names: Vec<String> = Vec::with_capacity(vars.len());
        for v in vars {
            let v = v.as_ref().trim();
            if !valid_identifier(v) {
                return Err(AlgebraError::InvalidVariable(v.to_string()));
            }
            if names.iter().any(|n| n == v) {
                return Err(AlgebraError::DuplicateVariable(v.to_string()));
            }
            names.push(v.to_string());
        }
        Ok(Arc::new(PolyRing { vars: names, field, order }))
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn field(&self) -> CoefficientField {
        self.field
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn has_var(&self, name: &str) -> bool {
        self.var_index(name).is_some()
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.order.cmp(a, b)
    }

    /// Same variables and field, different order.
    pub fn with_order(&self, order: MonomialOrder) -> Arc<PolyRing> {
        Arc::new(PolyRing { vars: self.vars.clone(), field: self.field, order })
    }

    /// Same field and order kind on a different variable list.
    pub fn with_vars<S: AsRef<str>>(&self, vars: &[S]) -> Result<Arc<PolyRing>> {
        let order = match self.order {
            MonomialOrder::Block(_) => MonomialOrder::Degrevlex,
            o => o,
        };
        PolyRing::new(vars, self.field, order)
    }

    /// A variable name not used in this ring, derived from `base`.
    pub fn fresh_name(&self, base: &str) -> String {
        if !self.has_var(base) {
            return base.to_string();
        }
        (1..)
            .map(|i| format!("{base}{i}"))
            .find(|n| !self.has_var(n))
            .expect("unbounded search")
    }

    /// Ring with `extra` variables placed in front and an order that
    /// eliminates them.
    pub fn extend_front(&self, extra: &[String]) -> Result<Arc<PolyRing>> {
        let mut vars = extra.to_vec();
        vars.extend(self.vars.iter().cloned());
        PolyRing::new(&vars, self.field, MonomialOrder::Block(extra.len()))
    }
}

impl fmt::Display for PolyRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}] ({})", self.field, self.vars.join(","), self.order)
    }
}
