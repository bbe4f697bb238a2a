//! Buchberger's algorithm with the Gebauer–Möller pair update.

use std::cmp::Ordering;
use std::sync::Arc;

use crate::error::{AlgebraError, Result};
use crate::poly::Polynomial;
use crate::ring::{Monomial, PolyRing};

/// Reduced Gröbner basis: monic, interreduced and sorted by decreasing
/// leading monomial, hence unique for a given ideal and order.
#[derive(Clone, Debug, PartialEq)]
pub struct GroebnerBasis {
    ring: Arc<PolyRing>,
    elements: Vec<Polynomial>,
}

/// Cap on S-pair reductions per basis computation.
pub const MAX_PAIRS: usize = 2_000_000;

impl GroebnerBasis {
    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn elements(&self) -> &[Polynomial] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.elements.len() == 1 && self.elements[0].is_one()
    }

    pub fn leading_monomials(&self) -> impl Iterator<Item = &Monomial> {
        self.elements.iter().filter_map(|g| g.leading_monomial())
    }

    pub fn normal_form(&self, f: &Polynomial) -> Polynomial {
        normal_form(f, &self.elements)
    }

    pub fn reduces_to_zero(&self, f: &Polynomial) -> bool {
        self.normal_form(f).is_zero()
    }
}

/// Complete reduction of `f` by `divisors`, which must have monic leading
/// coefficients. No term of the result is divisible by a leading monomial.
pub fn normal_form(f: &Polynomial, divisors: &[Polynomial]) -> Polynomial {
    let ring = f.ring().clone();
    let mut rest = f.clone();
    let mut remainder = Vec::new();
    while let Some((m, c)) = rest.leading_term() {
        let hit = divisors.iter().find_map(|g| {
            let lm = g.leading_monomial()?;
            lm.quotient_of(m).map(|q| (q, g))
        });
        match hit {
            Some((q, g)) => {
                let c = c.clone();
                rest = rest.sub_mul_term(&c, &q, g);
            }
            None => {
                remainder.push((m.clone(), c.clone()));
                rest = Polynomial::from_sorted(&ring, rest.terms()[1..].to_vec());
            }
        }
    }
    Polynomial::from_sorted(&ring, remainder)
}

/// Reduces only while the leading term is divisible.
fn top_reduce(f: &Polynomial, divisors: &[&Polynomial]) -> Polynomial {
    let mut rest = f.clone();
    loop {
        let Some((m, c)) = rest.leading_term() else { return rest };
        let hit = divisors.iter().find_map(|g| {
            let lm = g.leading_monomial()?;
            lm.quotient_of(m).map(|q| (q, *g))
        });
        match hit {
            Some((q, g)) => {
                let c = c.clone();
                rest = rest.sub_mul_term(&c, &q, g);
            }
            None => return rest,
        }
    }
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

struct Builder {
    ring: Arc<PolyRing>,
    polys: Vec<Polynomial>,
    active: Vec<bool>,
    pairs: Vec<Pair>,
}

impl Builder {
    fn lm(&self, i: usize) -> &Monomial {
        self.polys[i].leading_monomial().expect("nonzero basis element")
    }

    fn update(&mut self, h: usize) {
        let lm_h = self.lm(h).clone();
        let mut candidates: Vec<Pair> = (0..h)
            .filter(|&g| self.active[g])
            .map(|g| Pair { i: g, j: h, lcm: self.lm(g).lcm(&lm_h) })
            .collect();
        let mut kept: Vec<(Pair, bool)> = Vec::new();
        while let Some(p) = (!candidates.is_empty()).then(|| candidates.remove(0)) {
            let coprime = self.lm(p.i).is_coprime(&lm_h);
            let dominated = candidates.iter().any(|q| q.lcm.divides(&p.lcm))
                || kept.iter().any(|(q, _)| q.lcm.divides(&p.lcm));
            if coprime || !dominated {
                kept.push((p, coprime));
            }
        }
        self.pairs.retain(|p| {
            !(lm_h.divides(&p.lcm)
                && self.polys[p.i].leading_monomial().map(|m| m.lcm(&lm_h)) != Some(p.lcm.clone())
                && self.polys[p.j].leading_monomial().map(|m| m.lcm(&lm_h)) != Some(p.lcm.clone()))
        });
        self.pairs.extend(kept.into_iter().filter(|(_, coprime)| !coprime).map(|(p, _)| p));
        for g in 0..h {
            if self.active[g] && lm_h.divides(self.lm(g)) {
                self.active[g] = false;
            }
        }
        self.active.push(true);
    }

    fn push(&mut self, p: Polynomial) -> Result<()> {
        p.check_guard()?;
        self.polys.push(p.monic());
        let h = self.polys.len() - 1;
        self.update(h);
        Ok(())
    }

    /// Normal strategy: smallest lcm by degree, then by the ring order,
    /// then by index for determinism.
    fn next_pair(&mut self) -> Option<Pair> {
        if self.pairs.is_empty() {
            return None;
        }
        let ring = &self.ring;
        let mut best = 0;
        for k in 1..self.pairs.len() {
            let a = &self.pairs[k];
            let b = &self.pairs[best];
            let ord = a
                .lcm
                .degree()
                .cmp(&b.lcm.degree())
                .then_with(|| ring.cmp(&a.lcm, &b.lcm))
                .then_with(|| (a.j, a.i).cmp(&(b.j, b.i)));
            if ord == Ordering::Less {
                best = k;
            }
        }
        Some(self.pairs.swap_remove(best))
    }

    fn s_polynomial(&self, p: &Pair) -> Polynomial {
        let f = &self.polys[p.i];
        let g = &self.polys[p.j];
        let qf = f.leading_monomial().unwrap().quotient_of(&p.lcm).unwrap();
        let qg = g.leading_monomial().unwrap().quotient_of(&p.lcm).unwrap();
        let one = self.ring.field().one();
        f.mul_term(&qf, &one).sub_mul_term(&one, &qg, g)
    }
}

/// Reduced Gröbner basis of the ideal generated by `gens` in `ring`.
pub fn groebner_basis(gens: &[Polynomial], ring: &Arc<PolyRing>) -> Result<GroebnerBasis> {
    for g in gens {
        if g.ring() != ring {
            return Err(AlgebraError::RingMismatch("generator outside the ring".into()));
        }
    }
    let mut b = Builder { ring: ring.clone(), polys: Vec::new(), active: Vec::new(), pairs: Vec::new() };
    let mut input: Vec<Polynomial> = gens.iter().filter(|g| !g.is_zero()).map(|g| g.monic()).collect();
    // Deterministic start independent of the caller's generator order.
    input.sort_by(|a, b| cmp_poly(ring, a, b));
    input.dedup();
    if input.iter().any(|g| g.is_unit()) {
        return Ok(GroebnerBasis { ring: ring.clone(), elements: vec![Polynomial::one(ring)] });
    }
    for g in input {
        let active: Vec<&Polynomial> = b.polys.iter().zip(&b.active).filter(|(_, a)| **a).map(|(p, _)| p).collect();
        let r = top_reduce(&g, &active);
        if !r.is_zero() {
            if r.is_unit() {
                return Ok(GroebnerBasis { ring: ring.clone(), elements: vec![Polynomial::one(ring)] });
            }
            b.push(r)?;
        }
    }
    let mut steps = 0usize;
    while let Some(pair) = b.next_pair() {
        steps += 1;
        if steps > MAX_PAIRS {
            return Err(AlgebraError::Resource(format!("more than {MAX_PAIRS} S-pairs")));
        }
        let s = b.s_polynomial(&pair);
        let active: Vec<&Polynomial> = b.polys.iter().zip(&b.active).filter(|(_, a)| **a).map(|(p, _)| p).collect();
        let r = top_reduce(&s, &active);
        if r.is_zero() {
            continue;
        }
        if r.is_unit() {
            return Ok(GroebnerBasis { ring: ring.clone(), elements: vec![Polynomial::one(ring)] });
        }
        b.push(r)?;
    }
    let basis: Vec<Polynomial> =
        b.polys.into_iter().zip(b.active).filter(|(_, a)| *a).map(|(p, _)| p).collect();
    Ok(GroebnerBasis { ring: ring.clone(), elements: reduce_basis(ring, basis) })
}

/// Minimizes and interreduces a Gröbner basis, then sorts it.
fn reduce_basis(ring: &Arc<PolyRing>, mut basis: Vec<Polynomial>) -> Vec<Polynomial> {
    basis.sort_by(|a, b| ring.cmp(b.leading_monomial().unwrap(), a.leading_monomial().unwrap()));
    let mut minimal: Vec<Polynomial> = Vec::new();
    for (k, g) in basis.iter().enumerate() {
        let lm = g.leading_monomial().unwrap();
        let redundant = basis.iter().enumerate().any(|(l, h)| {
            let hl = h.leading_monomial().unwrap();
            l != k && hl.divides(lm) && (hl != lm || l > k)
        });
        if !redundant {
            minimal.push(g.clone());
        }
    }
    let mut reduced = Vec::with_capacity(minimal.len());
    for k in 0..minimal.len() {
        let others: Vec<Polynomial> =
            minimal.iter().enumerate().filter(|(l, _)| *l != k).map(|(_, g)| g.clone()).collect();
        reduced.push(normal_form(&minimal[k], &others).monic());
    }
    reduced.sort_by(|a, b| ring.cmp(b.leading_monomial().unwrap(), a.leading_monomial().unwrap()));
    reduced
}

/// Total order on polynomials: term by term, leading terms first.
pub(crate) fn cmp_poly(ring: &PolyRing, a: &Polynomial, b: &Polynomial) -> Ordering {
    for (ta, tb) in a.terms().iter().zip(b.terms()) {
        match ring.cmp(&ta.0, &tb.0) {
            Ordering::Equal => {}
            o => return o.reverse(),
        }
        let field = ring.field();
        let (va, vb) = (field.display_value(&ta.1), field.display_value(&tb.1));
        match va.cmp(&vb) {
            Ordering::Equal => {}
            o => return o,
        }
    }
    a.len().cmp(&b.len())
}
