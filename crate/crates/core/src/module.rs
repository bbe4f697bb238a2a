//! Submodules of free modules `R^r`: Gröbner bases under a
//! position-over-term order and syzygies.

use std::cmp::Ordering;
use std::sync::Arc;

use crate::error::{AlgebraError, Result};
use crate::field::Coeff;
use crate::groebner::MAX_PAIRS;
use crate::poly::{Polynomial, MAX_TERMS};
use crate::ring::{Monomial, PolyRing};

/// Element of `R^rank` given componentwise.
#[derive(Clone, Debug, PartialEq)]
pub struct FreeModuleElement {
    components: Vec<Polynomial>,
}

impl FreeModuleElement {
    pub fn new(components: Vec<Polynomial>) -> Self {
        FreeModuleElement { components }
    }

    pub fn zero(ring: &Arc<PolyRing>, rank: usize) -> Self {
        FreeModuleElement { components: vec![Polynomial::zero(ring); rank] }
    }

    /// `f` times the `k`-th standard basis vector.
    pub fn basis(ring: &Arc<PolyRing>, rank: usize, k: usize, f: Polynomial) -> Self {
        let mut e = Self::zero(ring, rank);
        e.components[k] = f;
        e
    }

    pub fn rank(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[Polynomial] {
        &self.components
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Polynomial::is_zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        let components = self.components.iter().zip(&other.components).map(|(a, b)| a.add(b)).collect();
        FreeModuleElement { components }
    }

    pub fn scale(&self, f: &Polynomial) -> Result<Self> {
        let components = self.components.iter().map(|a| a.try_mul(f)).collect::<Result<Vec<_>>>()?;
        Ok(FreeModuleElement { components })
    }

    pub fn render(&self) -> String {
        let parts: Vec<String> = self.components.iter().map(|c| c.render()).collect();
        format!("[{}]", parts.join(", "))
    }
}

/// Sparse module vector; terms strictly decreasing in position-over-term
/// order, where a lower component index ranks higher.
#[derive(Clone, Debug, PartialEq)]
pub(crate) struct MVec {
    terms: Vec<(usize, Monomial, Coeff)>,
}

fn pot_cmp(ring: &PolyRing, a: (usize, &Monomial), b: (usize, &Monomial)) -> Ordering {
    match b.0.cmp(&a.0) {
        Ordering::Equal => ring.cmp(a.1, b.1),
        o => o,
    }
}

impl MVec {
    fn from_dense(e: &FreeModuleElement, offset: usize) -> Self {
        let mut terms = Vec::new();
        for (k, p) in e.components.iter().enumerate() {
            for (m, c) in p.terms() {
                terms.push((k + offset, m.clone(), c.clone()));
            }
        }
        MVec { terms }
    }

    fn concat(mut self, other: MVec) -> MVec {
        self.terms.extend(other.terms);
        self
    }

    fn to_dense(&self, ring: &Arc<PolyRing>, from: usize, rank: usize) -> FreeModuleElement {
        let mut buckets: Vec<Vec<(Monomial, Coeff)>> = vec![Vec::new(); rank];
        for (k, m, c) in &self.terms {
            if *k >= from && *k < from + rank {
                buckets[k - from].push((m.clone(), c.clone()));
            }
        }
        FreeModuleElement {
            components: buckets.into_iter().map(|t| Polynomial::from_sorted(ring, t)).collect(),
        }
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn lead(&self) -> Option<(usize, &Monomial, &Coeff)> {
        self.terms.first().map(|(k, m, c)| (*k, m, c))
    }

    fn max_component_below(&self, bound: usize) -> bool {
        self.terms.iter().any(|(k, _, _)| *k < bound)
    }

    fn scale(&self, ring: &PolyRing, c: &Coeff) -> MVec {
        let f = ring.field();
        MVec { terms: self.terms.iter().map(|(k, m, d)| (*k, m.clone(), f.mul(c, d))).collect() }
    }

    fn monic(&self, ring: &PolyRing) -> MVec {
        match self.lead() {
            Some((_, _, c)) if !ring.field().is_one(c) => self.scale(ring, &ring.field().inv(c)),
            _ => self.clone(),
        }
    }

    /// `self - c * m * g`.
    fn sub_mul_term(&self, ring: &PolyRing, c: &Coeff, m: &Monomial, g: &MVec) -> MVec {
        let field = ring.field();
        let mut out = Vec::with_capacity(self.terms.len() + g.terms.len());
        let mut i = 0;
        for (gk, gm, gc) in &g.terms {
            let pm = gm.mul(m);
            let pc = field.neg(&field.mul(c, gc));
            while i < self.terms.len()
                && pot_cmp(ring, (self.terms[i].0, &self.terms[i].1), (*gk, &pm)) == Ordering::Greater
            {
                out.push(self.terms[i].clone());
                i += 1;
            }
            if i < self.terms.len() && self.terms[i].0 == *gk && self.terms[i].1 == pm {
                let s = field.add(&self.terms[i].2, &pc);
                if !field.is_zero(&s) {
                    out.push((*gk, pm, s));
                }
                i += 1;
            } else {
                out.push((*gk, pm, pc));
            }
        }
        out.extend(self.terms[i..].iter().cloned());
        MVec { terms: out }
    }

    fn mul_term(&self, ring: &PolyRing, c: &Coeff, m: &Monomial) -> MVec {
        let field = ring.field();
        MVec { terms: self.terms.iter().map(|(k, n, d)| (*k, n.mul(m), field.mul(c, d))).collect() }
    }

    fn sort(mut self, ring: &PolyRing) -> MVec {
        self.terms.sort_by(|a, b| pot_cmp(ring, (b.0, &b.1), (a.0, &a.1)));
        // Merge duplicates.
        let field = ring.field();
        let mut merged: Vec<(usize, Monomial, Coeff)> = Vec::with_capacity(self.terms.len());
        for (k, m, c) in self.terms {
            match merged.last_mut() {
                Some(last) if last.0 == k && last.1 == m => last.2 = field.add(&last.2, &c),
                _ => merged.push((k, m, c)),
            }
        }
        merged.retain(|t| !field.is_zero(&t.2));
        MVec { terms: merged }
    }
}

fn mod_normal_form(ring: &PolyRing, f: &MVec, divisors: &[MVec], full: bool) -> MVec {
    let mut rest = f.clone();
    let mut remainder = Vec::new();
    loop {
        let Some((k, m, c)) = rest.lead() else { break };
        let hit = divisors.iter().find_map(|g| {
            let (gk, gm, _) = g.lead()?;
            if gk != k {
                return None;
            }
            gm.quotient_of(m).map(|q| (q, g))
        });
        match hit {
            Some((q, g)) => {
                let c = c.clone();
                rest = rest.sub_mul_term(ring, &c, &q, g);
            }
            None if full => {
                remainder.push((k, m.clone(), c.clone()));
                rest.terms.remove(0);
            }
            None => return rest,
        }
    }
    MVec { terms: remainder }
}

struct Pair {
    i: usize,
    j: usize,
    comp: usize,
    lcm: Monomial,
}

/// Buchberger for modules with the chain criterion only; the coprime
/// criterion does not hold for module elements.
fn module_groebner(ring: &Arc<PolyRing>, gens: Vec<MVec>) -> Result<Vec<MVec>> {
    let mut polys: Vec<MVec> = Vec::new();
    let mut active: Vec<bool> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();

    let add = |h: MVec, polys: &mut Vec<MVec>, active: &mut Vec<bool>, pairs: &mut Vec<Pair>| -> Result<()> {
        if h.terms.len() > MAX_TERMS {
            return Err(AlgebraError::Resource("module element too large".into()));
        }
        let h = h.monic(ring);
        let (hk, hm, _) = h.lead().expect("nonzero");
        let (hk, hm) = (hk, hm.clone());
        let idx = polys.len();
        let mut candidates: Vec<Pair> = (0..idx)
            .filter(|&g| active[g] && polys[g].lead().unwrap().0 == hk)
            .map(|g| Pair { i: g, j: idx, comp: hk, lcm: polys[g].lead().unwrap().1.lcm(&hm) })
            .collect();
        let mut kept: Vec<Pair> = Vec::new();
        while !candidates.is_empty() {
            let p = candidates.remove(0);
            let dominated = candidates.iter().any(|q| q.lcm.divides(&p.lcm))
                || kept.iter().any(|q| q.lcm.divides(&p.lcm));
            if !dominated {
                kept.push(p);
            }
        }
        pairs.retain(|p| {
            if p.comp != hk || !hm.divides(&p.lcm) {
                return true;
            }
            let li = polys[p.i].lead().unwrap().1.lcm(&hm);
            let lj = polys[p.j].lead().unwrap().1.lcm(&hm);
            li == p.lcm || lj == p.lcm
        });
        pairs.extend(kept);
        for g in 0..idx {
            if active[g] {
                let (gk, gm, _) = polys[g].lead().unwrap();
                if gk == hk && hm.divides(gm) {
                    active[g] = false;
                }
            }
        }
        polys.push(h);
        active.push(true);
        Ok(())
    };

    for g in gens {
        let current: Vec<MVec> = polys.iter().zip(&active).filter(|(_, a)| **a).map(|(p, _)| p.clone()).collect();
        let r = mod_normal_form(ring, &g, &current, false);
        if !r.is_zero() {
            add(r, &mut polys, &mut active, &mut pairs)?;
        }
    }
    let mut steps = 0usize;
    while !pairs.is_empty() {
        steps += 1;
        if steps > MAX_PAIRS {
            return Err(AlgebraError::Resource(format!("more than {MAX_PAIRS} module S-pairs")));
        }
        let mut best = 0;
        for k in 1..pairs.len() {
            let (a, b) = (&pairs[k], &pairs[best]);
            let ord = a
                .lcm
                .degree()
                .cmp(&b.lcm.degree())
                .then_with(|| pot_cmp(ring, (a.comp, &a.lcm), (b.comp, &b.lcm)))
                .then_with(|| (a.j, a.i).cmp(&(b.j, b.i)));
            if ord == Ordering::Less {
                best = k;
            }
        }
        let p = pairs.swap_remove(best);
        let one = ring.field().one();
        let f = &polys[p.i];
        let g = &polys[p.j];
        let qf = f.lead().unwrap().1.quotient_of(&p.lcm).unwrap();
        let qg = g.lead().unwrap().1.quotient_of(&p.lcm).unwrap();
        let s = f.mul_term(ring, &one, &qf).sub_mul_term(ring, &one, &qg, g);
        let current: Vec<MVec> = polys.iter().zip(&active).filter(|(_, a)| **a).map(|(p, _)| p.clone()).collect();
        let r = mod_normal_form(ring, &s, &current, false);
        if !r.is_zero() {
            add(r, &mut polys, &mut active, &mut pairs)?;
        }
    }
    let mut basis: Vec<MVec> = polys.into_iter().zip(active).filter(|(_, a)| *a).map(|(p, _)| p).collect();
    // Minimize and interreduce.
    basis.sort_by(|a, b| {
        let (ak, am, _) = a.lead().unwrap();
        let (bk, bm, _) = b.lead().unwrap();
        pot_cmp(ring, (bk, bm), (ak, am))
    });
    let mut minimal: Vec<MVec> = Vec::new();
    for (k, g) in basis.iter().enumerate() {
        let (gk, gm, _) = g.lead().unwrap();
        let redundant = basis.iter().enumerate().any(|(l, h)| {
            let (hk, hm, _) = h.lead().unwrap();
            l != k && hk == gk && hm.divides(gm) && (hm != gm || l > k)
        });
        if !redundant {
            minimal.push(g.clone());
        }
    }
    let mut reduced = Vec::with_capacity(minimal.len());
    for k in 0..minimal.len() {
        let others: Vec<MVec> = minimal.iter().enumerate().filter(|(l, _)| *l != k).map(|(_, g)| g.clone()).collect();
        reduced.push(mod_normal_form(ring, &minimal[k], &others, true).monic(ring));
    }
    Ok(reduced)
}

/// Submodule of `R^rank` given by generators.
#[derive(Clone, Debug)]
pub struct Submodule {
    ring: Arc<PolyRing>,
    rank: usize,
    gens: Vec<FreeModuleElement>,
}

impl Submodule {
    pub fn new(ring: &Arc<PolyRing>, rank: usize, gens: Vec<FreeModuleElement>) -> Result<Self> {
        for g in &gens {
            if g.rank() != rank {
                return Err(AlgebraError::Invariant(format!(
                    "generator of rank {} in a submodule of rank {rank}",
                    g.rank()
                )));
            }
            if g.components.iter().any(|c| c.ring() != ring) {
                return Err(AlgebraError::RingMismatch("module generator outside the ring".into()));
            }
        }
        let gens = gens.into_iter().filter(|g| !g.is_zero()).collect();
        Ok(Submodule { ring: ring.clone(), rank, gens })
    }

    /// `I · R^1`, whose cokernel is `R/I`.
    pub fn from_ideal(ideal: &crate::ideal::Ideal) -> Self {
        let gens = ideal.generators().iter().map(|g| FreeModuleElement::new(vec![g.clone()])).collect();
        Submodule { ring: ideal.ring().clone(), rank: 1, gens }
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn generators(&self) -> &[FreeModuleElement] {
        &self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    /// Reduced Gröbner basis under position-over-term order.
    pub fn groebner(&self) -> Result<ModuleGroebnerBasis> {
        let gens = self.gens.iter().map(|g| MVec::from_dense(g, 0).sort(&self.ring)).collect();
        let elements = module_groebner(&self.ring, gens)?;
        Ok(ModuleGroebnerBasis { ring: self.ring.clone(), rank: self.rank, elements })
    }

    /// Generators of the module of relations among the generators.
    pub fn syzygies(&self) -> Result<Submodule> {
        let m = self.gens.len();
        let r = self.rank;
        let gens: Vec<MVec> = self
            .gens
            .iter()
            .enumerate()
            .map(|(i, g)| {
                let tag = FreeModuleElement::basis(&self.ring, m, i, Polynomial::one(&self.ring));
                MVec::from_dense(g, 0).concat(MVec::from_dense(&tag, r)).sort(&self.ring)
            })
            .collect();
        let basis = module_groebner(&self.ring, gens)?;
        let syz = basis
            .iter()
            .filter(|v| !v.max_component_below(r))
            .map(|v| v.to_dense(&self.ring, r, m))
            .collect();
        Submodule::new(&self.ring, m, syz)
    }

    /// Preimage in `R^a` of this submodule under the map sending the `k`-th
    /// basis vector to `images[k]`; i.e. the kernel of `R^a -> R^rank / self`.
    pub fn kernel_of_map(&self, images: &[FreeModuleElement]) -> Result<Submodule> {
        let a = images.len();
        let r = self.rank;
        let mut gens: Vec<MVec> = images
            .iter()
            .enumerate()
            .map(|(k, img)| {
                let tag = FreeModuleElement::basis(&self.ring, a, k, Polynomial::one(&self.ring));
                MVec::from_dense(img, 0).concat(MVec::from_dense(&tag, r)).sort(&self.ring)
            })
            .collect();
        gens.extend(self.gens.iter().map(|g| MVec::from_dense(g, 0).sort(&self.ring)));
        let basis = module_groebner(&self.ring, gens)?;
        let kernel = basis
            .iter()
            .filter(|v| !v.max_component_below(r))
            .map(|v| v.to_dense(&self.ring, r, a))
            .collect();
        Submodule::new(&self.ring, a, kernel)
    }

    pub fn contains(&self, e: &FreeModuleElement) -> Result<bool> {
        Ok(self.groebner()?.reduces_to_zero(e))
    }

    pub fn contains_submodule(&self, other: &Submodule) -> Result<bool> {
        let g = self.groebner()?;
        Ok(other.gens.iter().all(|e| g.reduces_to_zero(e)))
    }
}

#[derive(Clone, Debug)]
pub struct ModuleGroebnerBasis {
    ring: Arc<PolyRing>,
    rank: usize,
    elements: Vec<MVec>,
}

impl ModuleGroebnerBasis {
    pub fn elements(&self) -> Vec<FreeModuleElement> {
        self.elements.iter().map(|v| v.to_dense(&self.ring, 0, self.rank)).collect()
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn normal_form(&self, e: &FreeModuleElement) -> FreeModuleElement {
        let v = MVec::from_dense(e, 0).sort(&self.ring);
        mod_normal_form(&self.ring, &v, &self.elements, true).to_dense(&self.ring, 0, self.rank)
    }

    pub fn reduces_to_zero(&self, e: &FreeModuleElement) -> bool {
        let v = MVec::from_dense(e, 0).sort(&self.ring);
        mod_normal_form(&self.ring, &v, &self.elements, false).is_zero()
    }
}

/// Module Gröbner basis of `m` together with generators of its syzygies.
pub fn module_groebner_and_syzygies(m: &Submodule) -> Result<(ModuleGroebnerBasis, Submodule)> {
    Ok((m.groebner()?, m.syzygies()?))
}
