//! Fat points: finite local algebras `k[u]/(J + m^{n+1})` with a monomial
//! basis and an explicit multiplication table.
//!
//! The basis consists of the standard monomials for the local order that
//! ranks lower degree higher and breaks ties lexicographically. It is
//! closed under division, contains `1`, and is listed by degree and then
//! lexicographically (`u^2, u*v, v^2`).

use std::cmp::Ordering;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{AlgebraError, Result};
use crate::field::{Coeff, CoefficientField};
use crate::groebner::normal_form;
use crate::ideal::Ideal;
use crate::poly::Polynomial;
use crate::ring::{Monomial, MonomialOrder, PolyRing};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FatPointKind {
    Linear,
    Germ,
}

/// Structure constants: `b_i * b_j = Σ_k table[i][j][k] b_k`.
#[derive(Clone, Debug, PartialEq)]
pub struct MultiplicationTable {
    field: CoefficientField,
    entries: Vec<Vec<Vec<Coeff>>>,
}

impl MultiplicationTable {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn product(&self, i: usize, j: usize) -> &[Coeff] {
        &self.entries[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Vec<Coeff>) {
        self.entries[i][j] = value;
    }

    /// Product of two coordinate vectors.
    pub fn multiply(&self, x: &[Coeff], y: &[Coeff]) -> Vec<Coeff> {
        let f = self.field;
        let l = self.len();
        let mut out = vec![f.zero(); l];
        for (i, xi) in x.iter().enumerate() {
            if f.is_zero(xi) {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if f.is_zero(yj) {
                    continue;
                }
                let c = f.mul(xi, yj);
                for (k, t) in self.entries[i][j].iter().enumerate() {
                    if !f.is_zero(t) {
                        out[k] = f.add(&out[k], &f.mul(&c, t));
                    }
                }
            }
        }
        out
    }

    fn unit_vector(&self, i: usize) -> Vec<Coeff> {
        let mut v = vec![self.field.zero(); self.len()];
        v[i] = self.field.one();
        v
    }

    /// Associativity, commutativity, `b_0 = 1` as identity, and nilpotency
    /// of every other basis element.
    pub fn check(&self) -> bool {
        let l = self.len();
        if l == 0 {
            return false;
        }
        let f = self.field;
        for i in 0..l {
            if self.entries[i].len() != l || self.entries[i].iter().any(|v| v.len() != l) {
                return false;
            }
            if self.entries[0][i] != self.unit_vector(i) || self.entries[i][0] != self.unit_vector(i) {
                return false;
            }
            for j in 0..l {
                if self.entries[i][j] != self.entries[j][i] {
                    return false;
                }
            }
        }
        for i in 0..l {
            for j in 0..l {
                let ij = &self.entries[i][j];
                for k in 0..l {
                    let left = self.multiply(ij, &self.unit_vector(k));
                    let right = self.multiply(&self.unit_vector(i), &self.entries[j][k]);
                    if left != right {
                        return false;
                    }
                }
            }
        }
        for i in 1..l {
            let mut power = self.unit_vector(i);
            for _ in 0..l {
                power = self.multiply(&power, &self.unit_vector(i));
            }
            if power.iter().any(|c| !f.is_zero(c)) {
                return false;
            }
        }
        true
    }
}

#[derive(Clone, Debug)]
pub struct FatPoint {
    kind: FatPointKind,
    order: usize,
    ring: Arc<PolyRing>,
    germ_ideal: Ideal,
    basis: Vec<Monomial>,
    table: MultiplicationTable,
    /// Rows of the reduced echelon form of `J` truncated at degree `order`,
    /// keyed by pivot monomial.
    echelon: Vec<(Monomial, Vec<(Monomial, Coeff)>)>,
}

/// Local order: lower degree first, ties by lex with the first variable largest.
fn local_cmp(a: &Monomial, b: &Monomial) -> Ordering {
    b.degree().cmp(&a.degree()).then_with(|| a.exponents().cmp(b.exponents()))
}

fn monomials_up_to(nvars: usize, max_degree: usize) -> Vec<Monomial> {
    let mut out = vec![Monomial::one(nvars)];
    let mut frontier = vec![Monomial::one(nvars)];
    for _ in 0..max_degree {
        let mut next = Vec::new();
        for m in &frontier {
            for v in 0..nvars {
                let n = m.mul(&Monomial::variable(nvars, v, 1));
                if !next.contains(&n) {
                    next.push(n);
                }
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out.sort_by(|a, b| local_cmp(b, a));
    out
}

impl FatPoint {
    /// `Spec k[t]/(t^{n+1})`.
    pub fn linear_jet(n: usize, field: CoefficientField) -> Result<FatPoint> {
        let ring = PolyRing::new(&["t"], field, MonomialOrder::Degrevlex)?;
        let mut fp = Self::build(&Ideal::zero(&ring), n)?;
        fp.kind = FatPointKind::Linear;
        Ok(fp)
    }

    /// `n`-th order jet at the origin of the germ cut out by `germ_ideal`.
    pub fn germ_jet(germ_ideal: &Ideal, n: usize) -> Result<FatPoint> {
        for g in germ_ideal.generators() {
            let field = g.field();
            if !field.is_zero(&g.constant_term()) {
                return Err(AlgebraError::NotLocal(g.render()));
            }
        }
        Self::build(germ_ideal, n)
    }

    fn build(germ_ideal: &Ideal, n: usize) -> Result<FatPoint> {
        let ring = germ_ideal.ring().clone();
        let field = ring.field();
        let nv = ring.nvars();
        let monos = monomials_up_to(nv, n);
        if monos.len() > 5000 {
            return Err(AlgebraError::Resource(format!("fat point with {} monomials", monos.len())));
        }
        // Span of all truncated multiples of the generators.
        let mut rows: Vec<Vec<(Monomial, Coeff)>> = Vec::new();
        for g in germ_ideal.generators() {
            for m in &monos {
                let prod = g.mul_term(m, &field.one());
                let truncated: Vec<(Monomial, Coeff)> =
                    prod.terms().iter().filter(|(t, _)| t.degree() as usize <= n).cloned().collect();
                if !truncated.is_empty() {
                    rows.push(truncated);
                }
            }
        }
        let echelon = row_reduce(field, rows);
        let pivots: Vec<&Monomial> = echelon.iter().map(|(p, _)| p).collect();
        let basis: Vec<Monomial> = monos.iter().filter(|m| !pivots.contains(m)).cloned().collect();
        let mut fp = FatPoint {
            kind: FatPointKind::Germ,
            order: n,
            ring,
            germ_ideal: germ_ideal.clone(),
            basis,
            table: MultiplicationTable { field, entries: Vec::new() },
            echelon,
        };
        let l = fp.basis.len();
        let mut entries = vec![vec![Vec::new(); l]; l];
        for i in 0..l {
            for j in i..l {
                let v = fp.reduce_monomial(&fp.basis[i].mul(&fp.basis[j]));
                entries[i][j] = v.clone();
                entries[j][i] = v;
            }
        }
        fp.table.entries = entries;
        Ok(fp)
    }

    pub fn kind(&self) -> FatPointKind {
        self.kind
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn length(&self) -> usize {
        self.basis.len()
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn field(&self) -> CoefficientField {
        self.ring.field()
    }

    pub fn germ_vars(&self) -> &[String] {
        self.ring.vars()
    }

    pub fn germ_ideal(&self) -> &Ideal {
        &self.germ_ideal
    }

    pub fn basis(&self) -> &[Monomial] {
        &self.basis
    }

    pub fn basis_names(&self) -> Vec<String> {
        let ring = &self.ring;
        self.basis
            .iter()
            .map(|m| Polynomial::monomial(ring, m.clone(), ring.field().one()).render())
            .collect()
    }

    pub fn table(&self) -> &MultiplicationTable {
        &self.table
    }

    /// `J + m^{n+1}` in the germ ring.
    pub fn defining_ideal(&self) -> Result<Ideal> {
        let nv = self.ring.nvars();
        let mut gens = self.germ_ideal.generators().to_vec();
        for m in monomials_up_to(nv, self.order + 1) {
            if m.degree() as usize == self.order + 1 {
                gens.push(Polynomial::monomial(&self.ring, m, self.field().one()));
            }
        }
        Ideal::new(&self.ring, gens)
    }

    /// Indices of the basis elements of degree one, a basis of `m/m^2`.
    pub fn linear_basis_indices(&self) -> Vec<usize> {
        (0..self.basis.len()).filter(|&i| self.basis[i].degree() == 1).collect()
    }

    /// Coordinates of a monomial in the basis.
    pub fn reduce_monomial(&self, m: &Monomial) -> Vec<Coeff> {
        let field = self.field();
        let mut out = vec![field.zero(); self.basis.len()];
        if m.degree() as usize > self.order {
            return out;
        }
        if let Some(k) = self.basis.iter().position(|b| b == m) {
            out[k] = field.one();
            return out;
        }
        // m is a pivot: m = -(rest of its row) modulo J.
        let (_, row) = self.echelon.iter().find(|(p, _)| p == m).expect("monomial is basis or pivot");
        for (t, c) in row.iter().skip(1) {
            let k = self.basis.iter().position(|b| b == t).expect("reduced row lives on the basis");
            out[k] = field.sub(&out[k], c);
        }
        out
    }

    /// Coordinates of a germ-ring polynomial in the basis.
    pub fn reduce(&self, f: &Polynomial) -> Vec<Coeff> {
        let field = self.field();
        let mut out = vec![field.zero(); self.basis.len()];
        for (m, c) in f.terms() {
            for (k, v) in self.reduce_monomial(m).iter().enumerate() {
                if !field.is_zero(v) {
                    out[k] = field.add(&out[k], &field.mul(c, v));
                }
            }
        }
        out
    }

    pub fn multiplication_table_check(&self) -> bool {
        self.table.check()
    }

    /// Compares every table entry with multiplication followed by the normal
    /// form against a global Gröbner basis of `J + m^{n+1}`; the two bases
    /// differ in general, so both sides are reduced before comparing.
    pub fn agrees_with_groebner(&self) -> Result<bool> {
        let j = self.defining_ideal()?;
        let gb = j.groebner()?;
        let ring = &self.ring;
        let one = self.field().one();
        let as_poly = |v: &[Coeff]| -> Polynomial {
            let terms = v.iter().zip(&self.basis).map(|(c, m)| (m.clone(), c.clone())).collect();
            Polynomial::from_terms(ring, terms)
        };
        let l = self.length();
        if gb.is_unit() {
            return Ok(false);
        }
        let staircase = count_standard_monomials(gb.elements(), self.order, ring.nvars());
        if staircase != l {
            return Ok(false);
        }
        for i in 0..l {
            for k in i..l {
                let direct = Polynomial::monomial(ring, self.basis[i].mul(&self.basis[k]), one.clone());
                let via_table = as_poly(self.table.product(i, k));
                if normal_form(&direct, gb.elements()) != normal_form(&via_table, gb.elements()) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

fn count_standard_monomials(gb: &[Polynomial], max_degree: usize, nvars: usize) -> usize {
    monomials_up_to(nvars, max_degree)
        .iter()
        .filter(|m| !gb.iter().any(|g| g.leading_monomial().is_some_and(|lm| lm.divides(m))))
        .count()
}

/// Reduced row echelon form with pivots at the locally largest monomial.
/// Each row starts with its pivot, normalized to coefficient one.
fn row_reduce(field: CoefficientField, rows: Vec<Vec<(Monomial, Coeff)>>) -> Vec<(Monomial, Vec<(Monomial, Coeff)>)> {
    let normalize = |mut r: Vec<(Monomial, Coeff)>| -> Vec<(Monomial, Coeff)> {
        r.sort_by(|a, b| local_cmp(&b.0, &a.0));
        let mut merged: Vec<(Monomial, Coeff)> = Vec::new();
        for (m, c) in r {
            match merged.last_mut() {
                Some(last) if last.0 == m => last.1 = field.add(&last.1, &c),
                _ => merged.push((m, c)),
            }
        }
        merged.retain(|(_, c)| !field.is_zero(c));
        merged
    };
    let eliminate = |row: &[(Monomial, Coeff)], pivot: &Monomial, by: &[(Monomial, Coeff)]| {
        let Some((_, c)) = row.iter().find(|(m, _)| m == pivot) else { return row.to_vec() };
        let c = c.clone();
        let mut out = row.to_vec();
        for (m, d) in by {
            out.push((m.clone(), field.neg(&field.mul(&c, d))));
        }
        normalize(out)
    };
    let mut basis: Vec<(Monomial, Vec<(Monomial, Coeff)>)> = Vec::new();
    for row in rows {
        let mut r = normalize(row);
        for (p, b) in &basis {
            r = eliminate(&r, p, b);
        }
        if r.is_empty() {
            continue;
        }
        let inv = field.inv(&r[0].1);
        let r: Vec<(Monomial, Coeff)> = r.into_iter().map(|(m, c)| (m, field.mul(&inv, &c))).collect();
        let pivot = r[0].0.clone();
        for entry in basis.iter_mut() {
            entry.1 = eliminate(&entry.1, &pivot, &r);
        }
        basis.push((pivot, r));
    }
    basis.sort_by(|a, b| local_cmp(&b.0, &a.0));
    basis
}
