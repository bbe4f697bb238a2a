//! Sparse multivariate polynomials in canonical form.
//!
//! Terms are kept strictly decreasing in the ring's monomial order with no
//! zero coefficients; the zero polynomial has no terms. Values are never
//! mutated in place once handed out.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Signed};

use crate::error::{AlgebraError, Result};
use crate::field::{Coeff, CoefficientField};
use crate::ring::{Monomial, PolyRing};

/// Largest total degree any guarded operation may produce.
pub const MAX_DEGREE: u32 = 512;
/// Largest term count any guarded operation may produce.
pub const MAX_TERMS: usize = 1_000_000;

pub type Term = (Monomial, Coeff);

#[derive(Clone, Debug)]
pub struct Polynomial {
    ring: Arc<PolyRing>,
    terms: Vec<Term>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms && (Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring)
    }
}

impl Eq for Polynomial {}

impl Polynomial {
    pub fn zero(ring: &Arc<PolyRing>) -> Self {
        Polynomial { ring: ring.clone(), terms: Vec::new() }
    }

    pub fn one(ring: &Arc<PolyRing>) -> Self {
        Self::constant(ring, ring.field().one())
    }

    pub fn constant(ring: &Arc<PolyRing>, c: Coeff) -> Self {
        Self::monomial(ring, Monomial::one(ring.nvars()), c)
    }

    pub fn from_i64(ring: &Arc<PolyRing>, v: i64) -> Self {
        Self::constant(ring, ring.field().from_i64(v))
    }

    pub fn monomial(ring: &Arc<PolyRing>, m: Monomial, c: Coeff) -> Self {
        if ring.field().is_zero(&c) {
            return Self::zero(ring);
        }
        Polynomial { ring: ring.clone(), terms: vec![(m, c)] }
    }

    pub fn var_by_index(ring: &Arc<PolyRing>, idx: usize) -> Self {
        Self::monomial(ring, Monomial::variable(ring.nvars(), idx, 1), ring.field().one())
    }

    pub fn var(ring: &Arc<PolyRing>, name: &str) -> Result<Self> {
        let idx = ring
            .var_index(name)
            .ok_or_else(|| AlgebraError::UnknownIdentifier(name.to_string()))?;
        Ok(Self::var_by_index(ring, idx))
    }

    /// Builds a canonical polynomial from arbitrary terms: merges duplicate
    /// monomials, drops zeros and sorts.
    pub fn from_terms(ring: &Arc<PolyRing>, terms: Vec<Term>) -> Self {
        let field = ring.field();
        let mut acc: HashMap<Monomial, Coeff> = HashMap::with_capacity(terms.len());
        for (m, c) in terms {
            match acc.get_mut(&m) {
                Some(existing) => *existing = field.add(existing, &c),
                None => {
                    acc.insert(m, c);
                }
            }
        }
        Self::from_map(ring, acc)
    }

    fn from_map(ring: &Arc<PolyRing>, acc: HashMap<Monomial, Coeff>) -> Self {
        let field = ring.field();
        let mut terms: Vec<Term> = acc.into_iter().filter(|(_, c)| !field.is_zero(c)).collect();
        terms.sort_by(|a, b| ring.cmp(&b.0, &a.0));
        Polynomial { ring: ring.clone(), terms }
    }

    /// Trusts that `terms` is already canonical.
    pub(crate) fn from_sorted(ring: &Arc<PolyRing>, terms: Vec<Term>) -> Self {
        debug_assert!(terms.windows(2).all(|w| ring.cmp(&w[0].0, &w[1].0) == Ordering::Greater));
        Polynomial { ring: ring.clone(), terms }
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn field(&self) -> CoefficientField {
        self.ring.field()
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<Term> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.is_one())
    }

    /// Nonzero constant (a unit of the field).
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one()
    }

    pub fn is_one(&self) -> bool {
        self.is_unit() && self.field().is_one(&self.terms[0].1)
    }

    pub fn constant_term(&self) -> Coeff {
        match self.terms.last() {
            Some((m, c)) if m.is_one() => c.clone(),
            _ => self.field().zero(),
        }
    }

    pub fn leading_term(&self) -> Option<&Term> {
        self.terms.first()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.0)
    }

    pub fn leading_coeff(&self) -> Option<&Coeff> {
        self.terms.first().map(|t| &t.1)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|t| t.0.degree()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some((m0, _)) => self.terms.iter().all(|(m, _)| m.degree() == m0.degree()),
        }
    }

    /// Indices of variables that occur in some term.
    pub fn variables(&self) -> Vec<usize> {
        let mut used = vec![false; self.ring.nvars()];
        for (m, _) in &self.terms {
            for i in m.support() {
                used[i] = true;
            }
        }
        used.iter().enumerate().filter(|(_, &u)| u).map(|(i, _)| i).collect()
    }

    /// Greatest common divisor of all term monomials.
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.iter();
        match it.next() {
            None => Monomial::one(self.ring.nvars()),
            Some((m0, _)) => it.fold(m0.clone(), |acc, (m, _)| acc.gcd(m)),
        }
    }

    pub fn check_guard(&self) -> Result<()> {
        if self.terms.len() > MAX_TERMS {
            return Err(AlgebraError::Resource(format!(
                "polynomial with {} terms exceeds {MAX_TERMS}",
                self.terms.len()
            )));
        }
        if let Some(d) = self.total_degree() {
            if d > MAX_DEGREE {
                return Err(AlgebraError::Resource(format!(
                    "polynomial of degree {d} exceeds {MAX_DEGREE}"
                )));
            }
        }
        Ok(())
    }

    fn same_ring(&self, other: &Polynomial) {
        debug_assert!(
            Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring,
            "polynomials from different rings"
        );
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        self.combine(other, false)
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.combine(other, true)
    }

    fn combine(&self, other: &Polynomial, negate: bool) -> Polynomial {
        self.same_ring(other);
        let field = self.field();
        let ring = &self.ring;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            let (ma, ca) = &self.terms[i];
            let (mb, cb) = &other.terms[j];
            match ring.cmp(ma, mb) {
                Ordering::Greater => {
                    out.push((ma.clone(), ca.clone()));
                    i += 1;
                }
                Ordering::Less => {
                    let c = if negate { field.neg(cb) } else { cb.clone() };
                    out.push((mb.clone(), c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate { field.sub(ca, cb) } else { field.add(ca, cb) };
                    if !field.is_zero(&c) {
                        out.push((ma.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(self.terms[i..].iter().cloned());
        for (m, c) in &other.terms[j..] {
            let c = if negate { field.neg(c) } else { c.clone() };
            out.push((m.clone(), c));
        }
        Polynomial::from_sorted(ring, out)
    }

    pub fn neg(&self) -> Polynomial {
        let field = self.field();
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), field.neg(c))).collect();
        Polynomial::from_sorted(&self.ring, terms)
    }

    pub fn scale(&self, c: &Coeff) -> Polynomial {
        let field = self.field();
        if field.is_zero(c) {
            return Polynomial::zero(&self.ring);
        }
        let terms = self.terms.iter().map(|(m, d)| (m.clone(), field.mul(c, d))).collect();
        Polynomial::from_sorted(&self.ring, terms)
    }

    /// `c * m * self`. Monomial multiplication preserves the order, so no sort.
    pub fn mul_term(&self, m: &Monomial, c: &Coeff) -> Polynomial {
        let field = self.field();
        if field.is_zero(c) {
            return Polynomial::zero(&self.ring);
        }
        let terms = self.terms.iter().map(|(n, d)| (n.mul(m), field.mul(c, d))).collect();
        Polynomial::from_sorted(&self.ring, terms)
    }

    /// `self - c * m * g`, merged in one pass.
    pub fn sub_mul_term(&self, c: &Coeff, m: &Monomial, g: &Polynomial) -> Polynomial {
        self.same_ring(g);
        let field = self.field();
        let ring = &self.ring;
        let mut out = Vec::with_capacity(self.terms.len() + g.terms.len());
        let mut i = 0;
        let mut gi = g.terms.iter().peekable();
        let mut pending: Option<Term> = gi.next().map(|(n, d)| (n.mul(m), field.neg(&field.mul(c, d))));
        while let Some((pm, pc)) = pending.take() {
            while i < self.terms.len() && ring.cmp(&self.terms[i].0, &pm) == Ordering::Greater {
                out.push(self.terms[i].clone());
                i += 1;
            }
            if i < self.terms.len() && self.terms[i].0 == pm {
                let s = field.add(&self.terms[i].1, &pc);
                if !field.is_zero(&s) {
                    out.push((pm, s));
                }
                i += 1;
            } else {
                out.push((pm, pc));
            }
            pending = gi.next().map(|(n, d)| (n.mul(m), field.neg(&field.mul(c, d))));
        }
        out.extend(self.terms[i..].iter().cloned());
        Polynomial::from_sorted(ring, out)
    }

    /// Unguarded product. Use [`Polynomial::try_mul`] on user-controlled input.
    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        self.same_ring(other);
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        let (small, big) = if self.len() <= other.len() { (self, other) } else { (other, self) };
        if small.len() == 1 {
            let (m, c) = &small.terms[0];
            return big.mul_term(m, c);
        }
        let field = self.field();
        let mut acc: HashMap<Monomial, Coeff> = HashMap::with_capacity(small.len() * big.len());
        for (ma, ca) in &small.terms {
            for (mb, cb) in &big.terms {
                let m = ma.mul(mb);
                let c = field.mul(ca, cb);
                match acc.get_mut(&m) {
                    Some(e) => *e = field.add(e, &c),
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        Polynomial::from_map(&self.ring, acc)
    }

    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        let d = self.total_degree().unwrap_or(0) + other.total_degree().unwrap_or(0);
        if d > MAX_DEGREE {
            return Err(AlgebraError::Resource(format!("product degree {d} exceeds {MAX_DEGREE}")));
        }
        if self.len().saturating_mul(other.len()) > MAX_TERMS.saturating_mul(16) {
            return Err(AlgebraError::Resource("product term count too large".into()));
        }
        let p = self.mul(other);
        p.check_guard()?;
        Ok(p)
    }

    pub fn pow(&self, e: u32) -> Result<Polynomial> {
        if let Some(d) = self.total_degree() {
            if (d as u64) * (e as u64) > MAX_DEGREE as u64 {
                return Err(AlgebraError::Resource(format!(
                    "power of degree {} exceeds {MAX_DEGREE}",
                    d as u64 * e as u64
                )));
            }
        }
        let mut result = Polynomial::one(&self.ring);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = result.try_mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.try_mul(&base)?;
            }
        }
        Ok(result)
    }

    /// Scales so the leading coefficient is 1. Zero stays zero.
    pub fn monic(&self) -> Polynomial {
        match self.leading_coeff() {
            None => self.clone(),
            Some(lc) if self.field().is_one(lc) => self.clone(),
            Some(lc) => self.scale(&self.field().inv(lc)),
        }
    }

    /// Formal partial derivative; integer factors are reduced in the field,
    /// so `d/dx x^p = 0` in characteristic `p`.
    pub fn derivative(&self, var: usize) -> Polynomial {
        let field = self.field();
        let mut terms = Vec::new();
        for (m, c) in &self.terms {
            let e = m.exponent(var);
            if e == 0 {
                continue;
            }
            let c = field.mul(c, &field.from_i64(e as i64));
            if field.is_zero(&c) {
                continue;
            }
            let mut exps = m.exponents().to_vec();
            exps[var] -= 1;
            terms.push((Monomial::from_exponents(&exps), c));
        }
        Polynomial::from_terms(&self.ring, terms)
    }

    pub fn derivative_by_name(&self, var: &str) -> Result<Polynomial> {
        let idx = self
            .ring
            .var_index(var)
            .ok_or_else(|| AlgebraError::UnknownIdentifier(var.to_string()))?;
        Ok(self.derivative(idx))
    }

    /// Ring homomorphism image: bound variables are replaced by their
    /// images, unbound ones map to the variable of the same name in `target`.
    pub fn substitute(
        &self,
        bindings: &HashMap<String, Polynomial>,
        target: &Arc<PolyRing>,
    ) -> Result<Polynomial> {
        let mut images: Vec<Polynomial> = Vec::with_capacity(self.ring.nvars());
        let used = self.variables();
        for (i, name) in self.ring.vars().iter().enumerate() {
            if let Some(p) = bindings.get(name) {
                if p.ring() != target {
                    return Err(AlgebraError::RingMismatch(format!(
                        "binding for `{name}` does not live in the target ring"
                    )));
                }
                images.push(p.clone());
            } else if let Some(j) = target.var_index(name) {
                images.push(Polynomial::var_by_index(target, j));
            } else if used.contains(&i) {
                return Err(AlgebraError::RingMismatch(format!(
                    "target ring lacks variable `{name}`"
                )));
            } else {
                images.push(Polynomial::zero(target));
            }
        }
        self.evaluate_with(&images, target)
    }

    /// Evaluates at polynomial images of each variable (indexed by position).
    pub fn evaluate_with(&self, images: &[Polynomial], target: &Arc<PolyRing>) -> Result<Polynomial> {
        let mut cache: BTreeMap<(usize, u16), Polynomial> = BTreeMap::new();
        let mut acc = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let mut term = Polynomial::constant(target, c.clone());
            for i in m.support() {
                let e = m.exponent(i);
                let key = (i, e);
                if !cache.contains_key(&key) {
                    cache.insert(key, images[i].pow(e as u32)?);
                }
                term = term.try_mul(&cache[&key])?;
                if term.is_zero() {
                    break;
                }
            }
            acc = acc.add(&term);
            acc.check_guard()?;
        }
        Ok(acc)
    }

    /// Moves the polynomial into `target` by variable name. Fails if a used
    /// variable is missing there.
    pub fn map_to(&self, target: &Arc<PolyRing>) -> Result<Polynomial> {
        if &self.ring == target {
            return Ok(Polynomial { ring: target.clone(), terms: self.terms.clone() });
        }
        if self.field() != target.field() {
            return Err(AlgebraError::RingMismatch("coefficient fields differ".into()));
        }
        let mut index = Vec::with_capacity(self.ring.nvars());
        for name in self.ring.vars() {
            index.push(target.var_index(name));
        }
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let mut exps = vec![0u16; target.nvars()];
            for i in m.support() {
                match index[i] {
                    Some(j) => exps[j] = m.exponent(i),
                    None => {
                        return Err(AlgebraError::RingMismatch(format!(
                            "target ring lacks variable `{}`",
                            self.ring.vars()[i]
                        )))
                    }
                }
            }
            terms.push((Monomial::from_exponents(&exps), c.clone()));
        }
        Ok(Polynomial::from_terms(target, terms))
    }

    /// Substitutes field constants for some variables and moves the result
    /// into `target`, which must contain every remaining variable.
    pub fn specialize(&self, values: &HashMap<String, Coeff>, target: &Arc<PolyRing>) -> Result<Polynomial> {
        let field = self.field();
        let mut terms = Vec::with_capacity(self.terms.len());
        let idx: Vec<Option<usize>> = self.ring.vars().iter().map(|n| target.var_index(n)).collect();
        for (m, c) in &self.terms {
            let mut coeff = c.clone();
            let mut exps = vec![0u16; target.nvars()];
            for i in m.support() {
                let name = &self.ring.vars()[i];
                let e = m.exponent(i);
                if let Some(v) = values.get(name) {
                    coeff = field.mul(&coeff, &field.pow(v, e as u32));
                } else if let Some(j) = idx[i] {
                    exps[j] = e;
                } else {
                    return Err(AlgebraError::RingMismatch(format!("target ring lacks variable `{name}`")));
                }
            }
            terms.push((Monomial::from_exponents(&exps), coeff));
        }
        Ok(Polynomial::from_terms(target, terms))
    }

    /// Value at a point given as one field element per variable.
    pub fn evaluate_at(&self, point: &[Coeff]) -> Coeff {
        let field = self.field();
        let mut acc = field.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for i in m.support() {
                t = field.mul(&t, &field.pow(&point[i], m.exponent(i) as u32));
            }
            acc = field.add(&acc, &t);
        }
        acc
    }

    /// Exact division by a polynomial known to divide `self`; `None` if the
    /// division leaves a remainder.
    pub fn exact_div(&self, divisor: &Polynomial) -> Option<Polynomial> {
        let field = self.field();
        let (dm, dc) = divisor.leading_term()?;
        let mut rem = self.clone();
        let mut quotient = Vec::new();
        while let Some((m, c)) = rem.leading_term() {
            let q = dm.quotient_of(m)?;
            let qc = field.div(c, dc);
            rem = rem.sub_mul_term(&qc, &q, divisor);
            quotient.push((q, qc));
        }
        Some(Polynomial::from_sorted(&self.ring, quotient))
    }

    pub fn render(&self) -> String {
        self.render_with(self.ring.vars())
    }

    /// Renders with substitute variable names (same length as the ring's).
    pub fn render_with(&self, names: &[String]) -> String {
        self.render_terms(names, self.terms.iter())
    }

    /// Like [`render_with`](Self::render_with), but the first term with a
    /// positive coefficient is moved to the front: `c^2 - a^3` rather than
    /// `-a^3 + c^2`.
    pub fn render_positive_first(&self, names: &[String]) -> String {
        let field = self.field();
        let lead = self.terms.iter().position(|(_, c)| !field.is_negative(c)).unwrap_or(0);
        let rest = self.terms.iter().enumerate().filter(|(k, _)| *k != lead).map(|(_, t)| t);
        self.render_terms(names, self.terms.get(lead).into_iter().chain(rest))
    }

    fn render_terms<'a>(&self, names: &[String], terms: impl Iterator<Item = &'a Term>) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let field = self.field();
        let mut out = String::new();
        for (k, (m, c)) in terms.enumerate() {
            let value = field.display_value(c);
            let negative = value.is_negative();
            let abs = value.abs();
            if k == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let mut factors: Vec<String> = Vec::new();
            if m.is_one() || !abs.is_one() {
                if abs.is_integer() {
                    factors.push(abs.numer().to_string());
                } else {
                    factors.push(format!("{}/{}", abs.numer(), abs.denom()));
                }
            }
            for i in m.support() {
                let e = m.exponent(i);
                if e == 1 {
                    factors.push(names[i].clone());
                } else {
                    factors.push(format!("{}^{}", names[i], e));
                }
            }
            out.push_str(&factors.join("*"));
        }
        out
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl std::ops::Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        Polynomial::add(self, rhs)
    }
}

impl std::ops::Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        Polynomial::sub(self, rhs)
    }
}

impl std::ops::Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        Polynomial::mul(self, rhs)
    }
}

impl std::ops::Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial::neg(self)
    }
}
