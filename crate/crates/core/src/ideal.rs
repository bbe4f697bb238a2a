//! Ideals and the ideal-theoretic operations built on Gröbner bases.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use serde::Serialize;

use crate::error::{AlgebraError, Result};
use crate::field::Coeff;
use crate::groebner::{groebner_basis, GroebnerBasis};
use crate::matrix::jacobian_matrix;
use crate::parse::parse_polynomial;
use crate::poly::Polynomial;
use crate::ring::{Monomial, MonomialOrder, PolyRing};

/// Largest ring on which the independent-set dimension search runs.
pub const MAX_DIMENSION_VARS: usize = 24;
/// Lexicographic bases are only attempted in small rings.
const MAX_LEX_VARS: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RadicalStatus {
    CertifiedRadical,
    Unknown,
}

impl fmt::Display for RadicalStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RadicalStatus::CertifiedRadical => write!(f, "certified-radical"),
            RadicalStatus::Unknown => write!(f, "unknown"),
        }
    }
}

/// An ideal given by generators; its Gröbner basis is computed lazily and
/// cached.
#[derive(Clone, Debug)]
pub struct Ideal {
    ring: Arc<PolyRing>,
    gens: Vec<Polynomial>,
    gb: OnceLock<GroebnerBasis>,
}

impl Ideal {
    pub fn new(ring: &Arc<PolyRing>, gens: Vec<Polynomial>) -> Result<Self> {
        for g in &gens {
            if g.ring() != ring {
                return Err(AlgebraError::RingMismatch(format!("generator `{g}` is not in {ring}")));
            }
        }
        let gens = gens.into_iter().filter(|g| !g.is_zero()).collect();
        Ok(Ideal { ring: ring.clone(), gens, gb: OnceLock::new() })
    }

    pub fn parse(ring: &Arc<PolyRing>, gens: &[&str]) -> Result<Self> {
        let ps = gens.iter().map(|s| parse_polynomial(s, ring)).collect::<Result<Vec<_>>>()?;
        Ideal::new(ring, ps)
    }

    pub fn zero(ring: &Arc<PolyRing>) -> Self {
        Ideal { ring: ring.clone(), gens: Vec::new(), gb: OnceLock::new() }
    }

    pub fn unit(ring: &Arc<PolyRing>) -> Self {
        Ideal { ring: ring.clone(), gens: vec![Polynomial::one(ring)], gb: OnceLock::new() }
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.gens
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn groebner(&self) -> Result<&GroebnerBasis> {
        if let Some(g) = self.gb.get() {
            return Ok(g);
        }
        let g = groebner_basis(&self.gens, &self.ring)?;
        Ok(self.gb.get_or_init(|| g))
    }

    /// Ideal generated by its own reduced Gröbner basis.
    pub fn canonical(&self) -> Result<Ideal> {
        let g = self.groebner()?.clone();
        let gens = g.elements().to_vec();
        let out = Ideal { ring: self.ring.clone(), gens, gb: OnceLock::new() };
        let _ = out.gb.set(g);
        Ok(out)
    }

    pub fn is_unit(&self) -> Result<bool> {
        Ok(self.groebner()?.is_unit())
    }

    pub fn normal_form(&self, f: &Polynomial) -> Result<Polynomial> {
        Ok(self.groebner()?.normal_form(f))
    }

    pub fn contains(&self, f: &Polynomial) -> Result<bool> {
        if f.is_zero() {
            return Ok(true);
        }
        Ok(self.groebner()?.reduces_to_zero(f))
    }

    pub fn contains_ideal(&self, other: &Ideal) -> Result<bool> {
        let other = other.map_to(&self.ring)?;
        for g in other.generators() {
            if !self.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Equality as ideals (same variable names required).
    pub fn equals(&self, other: &Ideal) -> Result<bool> {
        let other = other.map_to(&self.ring)?;
        Ok(self.groebner()?.elements() == other.groebner()?.elements())
    }

    /// `f ∈ √I`, by testing `1 ∈ I + (1 - w f)` with a fresh variable `w`.
    pub fn radical_contains(&self, f: &Polynomial) -> Result<bool> {
        if f.is_zero() {
            return Ok(true);
        }
        let w = self.ring.fresh_name("w");
        let big = self.ring.extend_front(&[w])?;
        let mut gens = self.lift_gens(&big)?;
        let f = f.map_to(&big)?;
        let wf = Polynomial::var_by_index(&big, 0).mul(&f);
        gens.push(Polynomial::one(&big).sub(&wf));
        Ideal::new(&big, gens)?.is_unit()
    }

    pub fn radical_contains_ideal(&self, other: &Ideal) -> Result<bool> {
        let other = other.map_to(&self.ring)?;
        for g in other.generators() {
            if !self.contains(g)? && !self.radical_contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn lift_gens(&self, target: &Arc<PolyRing>) -> Result<Vec<Polynomial>> {
        self.gens.iter().map(|g| g.map_to(target)).collect()
    }

    /// The same ideal viewed in another ring that contains every variable
    /// used by the generators.
    pub fn map_to(&self, target: &Arc<PolyRing>) -> Result<Ideal> {
        if &self.ring == target {
            return Ok(self.clone());
        }
        Ideal::new(target, self.lift_gens(target)?)
    }

    pub fn with_order(&self, order: MonomialOrder) -> Result<Ideal> {
        self.map_to(&self.ring.with_order(order))
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        let other = other.map_to(&self.ring)?;
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        Ideal::new(&self.ring, gens)
    }

    pub fn add_generators(&self, extra: &[Polynomial]) -> Result<Ideal> {
        let mut gens = self.gens.clone();
        gens.extend(extra.iter().cloned());
        Ideal::new(&self.ring, gens)
    }

    pub fn product(&self, other: &Ideal) -> Result<Ideal> {
        let other = other.map_to(&self.ring)?;
        let mut gens = Vec::with_capacity(self.gens.len() * other.gens.len());
        for f in &self.gens {
            for g in &other.gens {
                gens.push(f.try_mul(g)?);
            }
        }
        Ideal::new(&self.ring, gens)
    }

    /// `I ∩ k[keep]`, returned in the subring on `keep` (declaration order
    /// of this ring is preserved).
    pub fn eliminate(&self, keep: &[&str]) -> Result<Ideal> {
        for k in keep {
            if !self.ring.has_var(k) {
                return Err(AlgebraError::UnknownIdentifier(k.to_string()));
            }
        }
        let kept: Vec<String> = self.ring.vars().iter().filter(|v| keep.contains(&v.as_str())).cloned().collect();
        let dropped: Vec<String> =
            self.ring.vars().iter().filter(|v| !keep.contains(&v.as_str())).cloned().collect();
        let sub = self.ring.with_vars(&kept)?;
        if dropped.is_empty() {
            return self.map_to(&sub);
        }
        let mut order = dropped.clone();
        order.extend(kept.iter().cloned());
        let elim = PolyRing::new(&order, self.ring.field(), MonomialOrder::Block(dropped.len()))?;
        let g = self.map_to(&elim)?;
        let basis = g.groebner()?;
        let mask: Vec<usize> = (0..dropped.len()).collect();
        let survivors = basis
            .elements()
            .iter()
            .filter(|p| p.variables().iter().all(|v| !mask.contains(v)))
            .map(|p| p.map_to(&sub))
            .collect::<Result<Vec<_>>>()?;
        Ideal::new(&sub, survivors)
    }

    /// Eliminates the first variable of an extended ring and returns to
    /// this ring.
    fn eliminate_tag(&self, big: &Arc<PolyRing>, gens: Vec<Polynomial>) -> Result<Ideal> {
        let basis = Ideal::new(big, gens)?;
        let basis = basis.groebner()?;
        let survivors = basis
            .elements()
            .iter()
            .filter(|p| p.terms().iter().all(|(m, _)| m.exponent(0) == 0))
            .map(|p| p.map_to(&self.ring))
            .collect::<Result<Vec<_>>>()?;
        Ideal::new(&self.ring, survivors)
    }

    /// `I : f^∞`.
    pub fn saturate(&self, f: &Polynomial) -> Result<Ideal> {
        if f.is_zero() {
            return Err(AlgebraError::Invariant("saturation by zero".into()));
        }
        if f.is_unit() {
            return Ok(self.clone());
        }
        let w = self.ring.fresh_name("w");
        let big = self.ring.extend_front(&[w])?;
        let mut gens = self.lift_gens(&big)?;
        let wf = Polynomial::var_by_index(&big, 0).try_mul(&f.map_to(&big)?)?;
        gens.push(Polynomial::one(&big).sub(&wf));
        self.eliminate_tag(&big, gens)
    }

    pub fn intersect(&self, other: &Ideal) -> Result<Ideal> {
        let other = other.map_to(&self.ring)?;
        if self.is_zero_ideal() || other.is_zero_ideal() {
            return Ok(Ideal::zero(&self.ring));
        }
        let w = self.ring.fresh_name("w");
        let big = self.ring.extend_front(&[w])?;
        let tag = Polynomial::var_by_index(&big, 0);
        let cotag = Polynomial::one(&big).sub(&tag);
        let mut gens = Vec::new();
        for g in self.lift_gens(&big)? {
            gens.push(tag.mul(&g));
        }
        for g in other.lift_gens(&big)? {
            gens.push(cotag.mul(&g));
        }
        self.eliminate_tag(&big, gens)
    }

    /// `I : (g)`.
    pub fn quotient_by(&self, g: &Polynomial) -> Result<Ideal> {
        if g.is_zero() {
            return Ok(Ideal::unit(&self.ring));
        }
        let principal = Ideal::new(&self.ring, vec![g.clone()])?;
        let meet = self.intersect(&principal)?;
        let gens = meet
            .generators()
            .iter()
            .map(|h| {
                h.exact_div(g)
                    .ok_or_else(|| AlgebraError::Invariant("intersection element not divisible".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        Ideal::new(&self.ring, gens)
    }

    /// `I : J`; the quotient by the zero ideal is the whole ring.
    pub fn quotient(&self, other: &Ideal) -> Result<Ideal> {
        let other = other.map_to(&self.ring)?;
        let mut acc: Option<Ideal> = None;
        for g in other.generators() {
            let q = self.quotient_by(g)?;
            acc = Some(match acc {
                None => q,
                Some(a) => a.intersect(&q)?,
            });
        }
        Ok(acc.unwrap_or_else(|| Ideal::unit(&self.ring)))
    }

    /// Krull dimension of `R/I`; `-1` for the unit ideal.
    pub fn krull_dimension(&self) -> Result<i64> {
        let n = self.ring.nvars();
        if n > MAX_DIMENSION_VARS {
            return Err(AlgebraError::TooManyVariables(n));
        }
        let g = self.groebner()?;
        if g.is_unit() {
            return Ok(-1);
        }
        let supports: Vec<u64> = g.leading_monomials().map(|m| m.support_mask()).collect();
        Ok(n as i64 - min_hitting_set(&supports, n) as i64)
    }

    /// A maximal set of variables independent modulo the initial ideal.
    pub fn independent_set(&self) -> Result<Vec<usize>> {
        let n = self.ring.nvars();
        if n > MAX_DIMENSION_VARS {
            return Err(AlgebraError::TooManyVariables(n));
        }
        let g = self.groebner()?;
        if g.is_unit() {
            return Ok(Vec::new());
        }
        let supports: Vec<u64> = g.leading_monomials().map(|m| m.support_mask()).collect();
        let cover = hitting_set(&supports, n);
        Ok((0..n).filter(|i| cover & (1 << i) == 0).collect())
    }

    /// Sufficient test for `I = √I`: a squarefree initial ideal under one
    /// of several orders, or a generically smooth complete intersection.
    pub fn radical_certificate(&self) -> Result<RadicalStatus> {
        if self.groebner()?.is_unit() || self.is_zero_ideal() {
            return Ok(RadicalStatus::CertifiedRadical);
        }
        if squarefree_initial(self.groebner()?) {
            return Ok(RadicalStatus::CertifiedRadical);
        }
        // the quotient is unchanged up to isomorphism by solving graph variables
        let graph = solve_linear_variables(self)?;
        if !graph.solved.is_empty() {
            return graph.ideal.radical_certificate();
        }
        let reversed: Vec<String> = self.ring.vars().iter().rev().cloned().collect();
        for order in [MonomialOrder::Degrevlex, MonomialOrder::Lex] {
            if order == MonomialOrder::Lex && self.ring.nvars() > MAX_LEX_VARS {
                continue;
            }
            for vars in [self.ring.vars().to_vec(), reversed.clone()] {
                let r = PolyRing::new(&vars, self.ring.field(), order)?;
                if *r == *self.ring {
                    continue;
                }
                if squarefree_initial(self.map_to(&r)?.groebner()?) {
                    return Ok(RadicalStatus::CertifiedRadical);
                }
            }
        }
        if self.generically_smooth_complete_intersection()? {
            return Ok(RadicalStatus::CertifiedRadical);
        }
        Ok(RadicalStatus::Unknown)
    }

    /// A complete intersection is unmixed, so it is radical once its
    /// Jacobian singular locus has smaller dimension.
    fn generically_smooth_complete_intersection(&self) -> Result<bool> {
        let n = self.ring.nvars();
        if n > MAX_DIMENSION_VARS {
            return Ok(false);
        }
        let dim = self.krull_dimension()?;
        let codim = n as i64 - dim;
        if codim != self.gens.len() as i64 || codim <= 0 {
            return Ok(false);
        }
        let vars: Vec<usize> = (0..n).collect();
        let jac = jacobian_matrix(&self.gens, &vars, &self.ring)?;
        let minors = match jac.minors(codim as usize) {
            Ok(m) => m,
            Err(AlgebraError::Resource(_)) => return Ok(false),
            Err(e) => return Err(e),
        };
        let sing = self.add_generators(&minors)?;
        Ok(sing.krull_dimension()? < dim)
    }

    /// Substitutes field constants; the result lives in the ring on the
    /// remaining variables.
    pub fn specialize(&self, bindings: &HashMap<String, Coeff>) -> Result<Ideal> {
        for k in bindings.keys() {
            if !self.ring.has_var(k) {
                return Err(AlgebraError::UnknownIdentifier(k.clone()));
            }
        }
        let rest: Vec<String> = self.ring.vars().iter().filter(|v| !bindings.contains_key(*v)).cloned().collect();
        let target = self.ring.with_vars(&rest)?;
        let gens = self.gens.iter().map(|g| g.specialize(bindings, &target)).collect::<Result<Vec<_>>>()?;
        Ideal::new(&target, gens)
    }

    /// Ideal of the point with the given coordinates (one per variable).
    pub fn point(ring: &Arc<PolyRing>, coords: &[Coeff]) -> Result<Ideal> {
        let gens = coords
            .iter()
            .enumerate()
            .map(|(i, c)| Polynomial::var_by_index(ring, i).sub(&Polynomial::constant(ring, c.clone())))
            .collect();
        Ideal::new(ring, gens)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.gens.iter().all(|g| g.is_homogeneous())
    }

    pub fn render(&self) -> Vec<String> {
        self.gens.iter().map(|g| g.render()).collect()
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.render().join(", "))
    }
}

fn squarefree_initial(g: &GroebnerBasis) -> bool {
    g.leading_monomials().all(Monomial::is_squarefree)
}

fn min_hitting_set(supports: &[u64], n: usize) -> u32 {
    hitting_set(supports, n).count_ones()
}

/// Smallest variable set meeting every support, by branch and bound.
fn hitting_set(supports: &[u64], n: usize) -> u64 {
    let mut sets: Vec<u64> = supports.to_vec();
    sets.sort_by_key(|s| s.count_ones());
    sets.dedup();
    let mut best = if n >= 64 { u64::MAX } else { (1u64 << n) - 1 };
    search(&sets, 0, &mut best);
    best
}

fn search(sets: &[u64], chosen: u64, best: &mut u64) {
    if chosen.count_ones() >= best.count_ones() {
        return;
    }
    match sets.iter().find(|&&s| s & chosen == 0) {
        None => *best = chosen,
        Some(&s) => {
            let mut bits = s;
            while bits != 0 {
                let b = bits & bits.wrapping_neg();
                bits ^= b;
                search(sets, chosen | b, best);
            }
        }
    }
}

/// Result of solving away variables that occur in exactly one term of a
/// generator, linearly and with a constant coefficient.
#[derive(Clone, Debug)]
pub struct GraphReduction {
    pub ideal: Ideal,
    /// `(v, p)` meaning `v = p` on the variety.
    pub solved: Vec<(String, Polynomial)>,
}

impl GraphReduction {
    /// The variety is an affine space on the remaining variables.
    pub fn is_affine_space(&self) -> bool {
        self.ideal.is_zero_ideal()
    }
}

fn solvable_variable(g: &Polynomial) -> Option<(usize, Coeff)> {
    let mut best = None;
    for (m, c) in g.terms() {
        if m.degree() != 1 {
            continue;
        }
        let v = m.support().next().expect("degree one");
        let alone = g.terms().iter().filter(|(t, _)| t.exponent(v) > 0).count() == 1;
        if alone && best.as_ref().is_none_or(|(b, _)| v > *b) {
            best = Some((v, c.clone()));
        }
    }
    best
}

/// Repeatedly uses a generator `c*v + p` with `v` absent from `p` to
/// eliminate `v`. The result lives on the remaining variables.
pub fn solve_linear_variables(ideal: &Ideal) -> Result<GraphReduction> {
    let ring = ideal.ring().clone();
    let field = ring.field();
    let mut gens: Vec<Polynomial> = ideal.generators().to_vec();
    let mut solved: Vec<(String, Polynomial)> = Vec::new();
    loop {
        let found = gens.iter().enumerate().find_map(|(k, g)| solvable_variable(g).map(|(v, c)| (k, v, c)));
        let Some((k, v, c)) = found else { break };
        let g = gens.remove(k);
        let vpoly = Polynomial::var_by_index(&ring, v);
        let rest = g.sub(&vpoly.scale(&c));
        let value = rest.scale(&field.neg(&field.inv(&c)));
        let name = ring.vars()[v].clone();
        let binding = HashMap::from([(name.clone(), value.clone())]);
        gens = gens.iter().map(|h| h.substitute(&binding, &ring)).collect::<Result<Vec<_>>>()?;
        gens.retain(|h| !h.is_zero());
        for (_, p) in solved.iter_mut() {
            *p = p.substitute(&binding, &ring)?;
        }
        solved.push((name, value));
    }
    let names: Vec<&String> = solved.iter().map(|(n, _)| n).collect();
    let rest: Vec<String> = ring.vars().iter().filter(|v| !names.contains(v)).cloned().collect();
    let sub = ring.with_vars(&rest)?;
    let ideal = if gens.iter().any(|g| g.is_constant()) {
        Ideal::unit(&sub)
    } else {
        Ideal::new(&sub, gens.iter().map(|g| g.map_to(&sub)).collect::<Result<Vec<_>>>()?)?
    };
    Ok(GraphReduction { ideal, solved })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::CoefficientField;

    fn ring(ch: u64, vars: &[&str]) -> Arc<PolyRing> {
        PolyRing::new(vars, CoefficientField::from_characteristic(ch).unwrap(), MonomialOrder::Degrevlex).unwrap()
    }

    fn p(r: &Arc<PolyRing>, s: &str) -> Polynomial {
        parse_polynomial(s, r).unwrap()
    }

    #[test]
    fn membership() {
        let r = ring(0, &["e", "f"]);
        let i = Ideal::parse(&r, &["e^2", "2*e*f"]).unwrap();
        assert!(!i.contains(&p(&r, "e")).unwrap());
        assert!(i.radical_contains(&p(&r, "e")).unwrap());
        assert!(Ideal::parse(&r, &["e"]).unwrap().contains(&p(&r, "e")).unwrap());
        assert!(i.contains(&Polynomial::zero(&r)).unwrap());
        let r = ring(0, &["x", "y"]);
        assert!(Ideal::parse(&r, &["x + y", "y"]).unwrap().contains(&p(&r, "x")).unwrap());
        assert!(!Ideal::parse(&r, &["x"]).unwrap().radical_contains(&p(&r, "1")).unwrap());
    }

    #[test]
    fn elimination() {
        let r = ring(0, &["a", "b", "c", "d", "f"]);
        let i = Ideal::parse(&r, &["a*c", "a*d + b*c - f"]).unwrap();
        assert!(i.eliminate(&["f"]).unwrap().is_zero_ideal());
        let r = ring(0, &["x", "f"]);
        assert!(Ideal::parse(&r, &["x - f"]).unwrap().eliminate(&["f"]).unwrap().is_zero_ideal());
        let e = Ideal::parse(&r, &["f"]).unwrap().eliminate(&["f"]).unwrap();
        assert_eq!(e.render(), vec!["f"]);
    }

    #[test]
    fn saturation() {
        let r = ring(0, &["x", "y"]);
        let i = Ideal::parse(&r, &["x*y"]).unwrap().saturate(&p(&r, "y")).unwrap();
        assert_eq!(i.canonical().unwrap().render(), vec!["x"]);
        assert!(Ideal::parse(&r, &["x^2"]).unwrap().saturate(&p(&r, "x")).unwrap().is_unit().unwrap());
        let r = ring(2, &["a", "b", "c", "d", "e", "f"]);
        let i = Ideal::parse(&r, &["a^2 - c^2*e", "c^2*f"]).unwrap().saturate(&p(&r, "f")).unwrap();
        assert!(i.equals(&Ideal::parse(&r, &["a^2 - c^2*e", "c^2"]).unwrap()).unwrap());
    }

    #[test]
    fn intersection_and_quotient() {
        let r = ring(0, &["x", "y"]);
        let x = Ideal::parse(&r, &["x"]).unwrap();
        let y = Ideal::parse(&r, &["y"]).unwrap();
        assert_eq!(x.intersect(&y).unwrap().canonical().unwrap().render(), vec!["x*y"]);
        assert!(x.intersect(&x).unwrap().equals(&x).unwrap());
        let xy = Ideal::parse(&r, &["x*y"]).unwrap();
        assert!(xy.quotient(&x).unwrap().equals(&y).unwrap());
        assert!(xy.quotient(&Ideal::zero(&r)).unwrap().is_unit().unwrap());
    }

    #[test]
    fn dimensions() {
        let r = ring(0, &["a", "b", "c", "d", "f"]);
        assert_eq!(Ideal::parse(&r, &["a*c", "a*d + b*c - f"]).unwrap().krull_dimension().unwrap(), 3);
        assert_eq!(Ideal::zero(&r).krull_dimension().unwrap(), 5);
        assert_eq!(Ideal::unit(&r).krull_dimension().unwrap(), -1);
        let r = ring(0, &["a", "b", "c", "d", "e", "f"]);
        assert_eq!(Ideal::parse(&r, &["a^2", "c"]).unwrap().krull_dimension().unwrap(), 4);
    }

    #[test]
    fn radical_certificates() {
        let r = ring(0, &["a", "b", "c", "d", "f"]);
        let node = Ideal::parse(&r, &["a*c", "a*d + b*c - f"]).unwrap();
        assert_eq!(node.radical_certificate().unwrap(), RadicalStatus::CertifiedRadical);
        let cubic = Ideal::parse(&r, &["c^2 - a^3", "2*c*d - 3*a^2*b - f"]).unwrap();
        assert_eq!(cubic.radical_certificate().unwrap(), RadicalStatus::CertifiedRadical);
        let r = ring(0, &["e", "x"]);
        assert_eq!(Ideal::parse(&r, &["e^2"]).unwrap().radical_certificate().unwrap(), RadicalStatus::Unknown);
        assert_eq!(Ideal::parse(&r, &["x - 1"]).unwrap().radical_certificate().unwrap(), RadicalStatus::CertifiedRadical);
    }

    #[test]
    fn specialization() {
        let r = ring(0, &["a", "b", "c", "d", "f"]);
        let i = Ideal::parse(&r, &["a*c", "a*d + b*c - f"]).unwrap();
        let mut b = HashMap::new();
        b.insert("f".to_string(), r.field().zero());
        let s = i.specialize(&b).unwrap();
        assert_eq!(s.ring().vars(), &["a", "b", "c", "d"]);
        assert_eq!(s.render(), vec!["a*c", "b*c + a*d"]);
        assert!(i.specialize(&HashMap::new()).unwrap().equals(&i).unwrap());
        let r = ring(2, &["a", "b", "c", "d", "e", "f"]);
        let i = Ideal::parse(&r, &["a^2 - c^2*e", "c^2*f"]).unwrap();
        let mut b = HashMap::new();
        b.insert("e".to_string(), r.field().zero());
        b.insert("f".to_string(), r.field().zero());
        assert_eq!(i.specialize(&b).unwrap().render(), vec!["a^2"]);
    }
}
