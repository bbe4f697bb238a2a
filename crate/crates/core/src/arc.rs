//! Equations of arc spaces: morphisms from a fat point into a deformation
//! family, obtained by substituting generic algebra elements and reading
//! off coefficients in the fat point basis.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, OnceLock};

use serde::Serialize;

use crate::error::{AlgebraError, Result};
use crate::fatpoint::{FatPoint, FatPointKind, MultiplicationTable};
use crate::field::{Coeff, CoefficientField};
use crate::ideal::{Ideal, RadicalStatus};
use crate::parse::parse_polynomial;
use crate::poly::Polynomial;
use crate::ring::{MonomialOrder, PolyRing};

/// A family `F_i(x; t)` over the parameters `t`; its central fibre is
/// `(F_i(x; 0))`.
#[derive(Clone, Debug)]
pub struct DeformationFamily {
    ring: Arc<PolyRing>,
    x_vars: Vec<String>,
    params: Vec<String>,
    polys: Vec<Polynomial>,
}

impl DeformationFamily {
    pub fn new(ring: &Arc<PolyRing>, x_vars: &[String], params: &[String], polys: Vec<Polynomial>) -> Result<Self> {
        for v in ring.vars() {
            let roles = x_vars.contains(v) as usize + params.contains(v) as usize;
            if roles != 1 {
                return Err(AlgebraError::MismatchedParameters(format!(
                    "variable `{v}` must be either a coordinate or a parameter"
                )));
            }
        }
        if x_vars.len() + params.len() != ring.nvars() {
            return Err(AlgebraError::MismatchedParameters("role list names a variable outside the ring".into()));
        }
        for p in &polys {
            if p.ring() != ring {
                return Err(AlgebraError::RingMismatch(format!("`{p}` is not in the family ring")));
            }
        }
        Ok(DeformationFamily { ring: ring.clone(), x_vars: x_vars.to_vec(), params: params.to_vec(), polys })
    }

    /// Coordinates first, then parameters, degrevlex.
    pub fn parse(field: CoefficientField, x_vars: &[&str], params: &[&str], polys: &[&str]) -> Result<Self> {
        let mut vars: Vec<&str> = x_vars.to_vec();
        vars.extend_from_slice(params);
        let ring = PolyRing::new(&vars, field, MonomialOrder::Degrevlex)?;
        let polys = polys.iter().map(|p| parse_polynomial(p, &ring)).collect::<Result<Vec<_>>>()?;
        let owned = |v: &[&str]| v.iter().map(|s| s.to_string()).collect::<Vec<_>>();
        DeformationFamily::new(&ring, &owned(x_vars), &owned(params), polys)
    }

    /// The trivial family `X × Z → Z`.
    pub fn trivial(x: &Ideal) -> Result<Self> {
        let vars = x.ring().vars().to_vec();
        DeformationFamily::new(x.ring(), &vars, &[], x.generators().to_vec())
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn x_vars(&self) -> &[String] {
        &self.x_vars
    }

    pub fn params(&self) -> &[String] {
        &self.params
    }

    pub fn polys(&self) -> &[Polynomial] {
        &self.polys
    }

    pub fn field(&self) -> CoefficientField {
        self.ring.field()
    }

    /// `I_X = (F_i(x; 0))` in the ring of the coordinates.
    pub fn central_fiber(&self) -> Result<Ideal> {
        let target = self.ring.with_vars(&self.x_vars)?;
        let zeros: HashMap<String, Coeff> = self.params.iter().map(|p| (p.clone(), self.field().zero())).collect();
        let gens = self.polys.iter().map(|p| p.specialize(&zeros, &target)).collect::<Result<Vec<_>>>()?;
        Ideal::new(&target, gens)
    }
}

/// Canonical coefficient names.
pub fn x_coefficient_name(i: usize, m: usize) -> String {
    format!("a_{i}_{m}")
}

pub fn endo_coefficient_name(j: usize, m: usize) -> String {
    format!("e_{j}_{m}")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum GeneratorSource {
    /// A defining polynomial of the family.
    Family,
    /// A generator of the fat point's germ ideal, pulled back along the
    /// endomorphism.
    FatPoint,
}

/// One coefficient of one substituted equation. `equation` and
/// `basis_index` are 1-based.
#[derive(Clone, Debug)]
pub struct ArcGenerator {
    pub source: GeneratorSource,
    pub equation: usize,
    pub basis_index: usize,
    pub poly: Polynomial,
}

/// Result of [`reduce_arc_ideal`]: the ideal on the surviving variables,
/// the variables forced to vanish, and the same ideal in the original ring.
#[derive(Clone, Debug)]
pub struct ReducedIdeal {
    pub ideal: Ideal,
    pub eliminated: Vec<String>,
    pub full: Ideal,
}

/// Replaces generators by simpler ones with the same radical until nothing
/// changes: monomials by their squarefree part, and a variable appearing
/// as a generator is set to zero everywhere and removed from the ring.
pub fn reduce_arc_ideal(raw: &Ideal) -> Result<ReducedIdeal> {
    let ring = raw.ring().clone();
    let field = ring.field();
    let mut gens: Vec<Polynomial> = raw.generators().to_vec();
    let mut eliminated: Vec<usize> = Vec::new();
    let mut unit = false;
    loop {
        if gens.iter().any(|g| g.is_constant() && !g.is_zero()) {
            unit = true;
            break;
        }
        let mut changed = false;
        for g in gens.iter_mut() {
            if g.len() == 1 {
                let (m, c) = &g.terms()[0];
                if !m.is_squarefree() || !field.is_one(c) {
                    *g = Polynomial::monomial(&ring, m.squarefree_part(), field.one());
                    changed = true;
                }
            }
        }
        let standalone = gens
            .iter()
            .find(|g| g.len() == 1 && g.terms()[0].0.degree() == 1)
            .map(|g| g.terms()[0].0.support().next().expect("degree one"));
        if let Some(v) = standalone {
            eliminated.push(v);
            let zero: HashMap<String, Coeff> = HashMap::from([(ring.vars()[v].clone(), field.zero())]);
            gens = gens.iter().map(|g| g.specialize(&zero, &ring)).collect::<Result<Vec<_>>>()?;
            changed = true;
        }
        gens.retain(|g| !g.is_zero());
        let mut seen: Vec<Polynomial> = Vec::with_capacity(gens.len());
        for g in gens.drain(..) {
            if !seen.contains(&g) {
                seen.push(g);
            }
        }
        gens = seen;
        if !changed {
            break;
        }
    }
    let eliminated_names: Vec<String> = eliminated.iter().map(|&v| ring.vars()[v].clone()).collect();
    let rest: Vec<String> = ring.vars().iter().filter(|v| !eliminated_names.contains(v)).cloned().collect();
    let sub = ring.with_vars(&rest)?;
    if unit {
        return Ok(ReducedIdeal { ideal: Ideal::unit(&sub), eliminated: eliminated_names, full: Ideal::unit(&ring) });
    }
    let ideal = Ideal::new(&sub, gens.iter().map(|g| g.map_to(&sub)).collect::<Result<Vec<_>>>()?)?;
    let mut full_gens = gens;
    full_gens.extend(eliminated.iter().map(|&v| Polynomial::var_by_index(&ring, v)));
    let full = Ideal::new(&ring, full_gens)?;
    Ok(ReducedIdeal { ideal, eliminated: eliminated_names, full })
}

/// Elements of `A ⊗ k[coefficients]` as coordinate vectors in the fat
/// point basis.
struct Algebra<'a> {
    table: &'a MultiplicationTable,
    ring: &'a Arc<PolyRing>,
}

impl Algebra<'_> {
    fn len(&self) -> usize {
        self.table.len()
    }

    fn constant(&self, c: Coeff) -> Vec<Polynomial> {
        let mut out = vec![Polynomial::zero(self.ring); self.len()];
        out[0] = Polynomial::constant(self.ring, c);
        out
    }

    fn mul(&self, x: &[Polynomial], y: &[Polynomial]) -> Result<Vec<Polynomial>> {
        let field = self.ring.field();
        let mut out = vec![Polynomial::zero(self.ring); self.len()];
        for (i, xi) in x.iter().enumerate().filter(|(_, p)| !p.is_zero()) {
            for (j, yj) in y.iter().enumerate().filter(|(_, p)| !p.is_zero()) {
                let structure = self.table.product(i, j);
                if structure.iter().all(|c| field.is_zero(c)) {
                    continue;
                }
                let prod = xi.try_mul(yj)?;
                for (k, c) in structure.iter().enumerate() {
                    if !field.is_zero(c) {
                        out[k] = out[k].add(&prod.scale(c));
                        out[k].check_guard()?;
                    }
                }
            }
        }
        Ok(out)
    }

    /// `f(images)`, with `images[v]` the element substituted for variable `v`.
    fn evaluate(&self, f: &Polynomial, images: &[Vec<Polynomial>]) -> Result<Vec<Polynomial>> {
        let mut powers: BTreeMap<(usize, u16), Vec<Polynomial>> = BTreeMap::new();
        let mut acc = vec![Polynomial::zero(self.ring); self.len()];
        for (m, c) in f.terms() {
            let mut term = self.constant(c.clone());
            for v in m.support() {
                let e = m.exponent(v);
                let p = self.power(&mut powers, images, v, e)?;
                term = self.mul(&term, &p)?;
                if term.iter().all(|t| t.is_zero()) {
                    break;
                }
            }
            for (a, t) in acc.iter_mut().zip(&term) {
                *a = a.add(t);
            }
        }
        Ok(acc)
    }

    fn power(
        &self,
        cache: &mut BTreeMap<(usize, u16), Vec<Polynomial>>,
        images: &[Vec<Polynomial>],
        v: usize,
        e: u16,
    ) -> Result<Vec<Polynomial>> {
        if e == 1 {
            return Ok(images[v].clone());
        }
        if let Some(p) = cache.get(&(v, e)) {
            return Ok(p.clone());
        }
        let lower = self.power(cache, images, v, e - 1)?;
        let p = self.mul(&lower, &images[v])?;
        cache.insert((v, e), p.clone());
        Ok(p)
    }
}

/// The arc system of a family over a fat point.
#[derive(Clone, Debug)]
pub struct ArcSystem {
    fat_point: FatPoint,
    family: Option<DeformationFamily>,
    full_ring: Arc<PolyRing>,
    raw: Vec<ArcGenerator>,
    reduced: ReducedIdeal,
    x_vars: Vec<String>,
    params: Vec<String>,
    base_vars: Vec<String>,
    radical: OnceLock<RadicalStatus>,
}

impl ArcSystem {
    fn build(fat_point: &FatPoint, family: Option<&DeformationFamily>, nparams: usize) -> Result<ArcSystem> {
        let l = fat_point.length();
        if l == 0 || !fat_point.basis()[0].is_one() {
            return Err(AlgebraError::Invariant("fat point basis must start with 1".into()));
        }
        let field = fat_point.field();
        let x_vars: Vec<String> = family.map(|f| f.x_vars().to_vec()).unwrap_or_default();
        let params: Vec<String> = match family {
            Some(f) => f.params().to_vec(),
            None => fat_point.germ_vars().to_vec(),
        };
        let mut names = Vec::new();
        for i in 1..=x_vars.len() {
            names.extend((1..=l).map(|m| x_coefficient_name(i, m)));
        }
        for j in 1..=nparams {
            names.extend((2..=l).map(|m| endo_coefficient_name(j, m)));
        }
        let ring = PolyRing::new(&names, field, MonomialOrder::Degrevlex)?;
        let algebra = Algebra { table: fat_point.table(), ring: &ring };
        let x_hat: Vec<Vec<Polynomial>> = (0..x_vars.len())
            .map(|i| (0..l).map(|m| Polynomial::var_by_index(&ring, i * l + m)).collect())
            .collect();
        let offset = x_vars.len() * l;
        let t_hat: Vec<Vec<Polynomial>> = (0..nparams)
            .map(|j| {
                let mut el = vec![Polynomial::zero(&ring)];
                el.extend((1..l).map(|m| Polynomial::var_by_index(&ring, offset + j * (l - 1) + m - 1)));
                el
            })
            .collect();
        let mut raw = Vec::new();
        if let Some(f) = family {
            let images: Vec<Vec<Polynomial>> = f
                .ring()
                .vars()
                .iter()
                .map(|v| match f.x_vars().iter().position(|x| x == v) {
                    Some(i) => x_hat[i].clone(),
                    None => {
                        let j = f.params().iter().position(|p| p == v).expect("family roles are total");
                        t_hat.get(j).cloned().unwrap_or_else(|| vec![Polynomial::zero(&ring); l])
                    }
                })
                .collect();
            for (e, p) in f.polys().iter().enumerate() {
                for (m, c) in algebra.evaluate(p, &images)?.into_iter().enumerate() {
                    raw.push(ArcGenerator { source: GeneratorSource::Family, equation: e + 1, basis_index: m + 1, poly: c });
                }
            }
        }
        if nparams > 0 {
            for (e, g) in fat_point.germ_ideal().generators().iter().enumerate() {
                for (m, c) in algebra.evaluate(g, &t_hat)?.into_iter().enumerate() {
                    raw.push(ArcGenerator { source: GeneratorSource::FatPoint, equation: e + 1, basis_index: m + 1, poly: c });
                }
            }
        }
        let raw_ideal = Ideal::new(&ring, raw.iter().map(|g| g.poly.clone()).collect())?;
        let reduced = reduce_arc_ideal(&raw_ideal)?;
        let base_vars = ring.vars().iter().filter(|v| v.starts_with("e_")).cloned().collect();
        Ok(ArcSystem {
            fat_point: fat_point.clone(),
            family: family.cloned(),
            full_ring: ring,
            raw,
            reduced,
            x_vars,
            params,
            base_vars,
            radical: OnceLock::new(),
        })
    }

    pub fn fat_point(&self) -> &FatPoint {
        &self.fat_point
    }

    pub fn family(&self) -> Option<&DeformationFamily> {
        self.family.as_ref()
    }

    /// Ring on every coefficient variable, eliminated ones included.
    pub fn full_ring(&self) -> &Arc<PolyRing> {
        &self.full_ring
    }

    /// Ring on the variables that survive reduction.
    pub fn ring(&self) -> &Arc<PolyRing> {
        self.reduced.ideal.ring()
    }

    pub fn ideal(&self) -> &Ideal {
        &self.reduced.ideal
    }

    /// The reduced ideal in the full ring, with each eliminated variable
    /// as a generator.
    pub fn full_ideal(&self) -> &Ideal {
        &self.reduced.full
    }

    pub fn raw_generators(&self) -> &[ArcGenerator] {
        &self.raw
    }

    pub fn raw_ideal(&self) -> Result<Ideal> {
        Ideal::new(&self.full_ring, self.raw.iter().map(|g| g.poly.clone()).collect())
    }

    pub fn eliminated(&self) -> &[String] {
        &self.reduced.eliminated
    }

    pub fn x_vars(&self) -> &[String] {
        &self.x_vars
    }

    pub fn params(&self) -> &[String] {
        &self.params
    }

    /// `a_{i,1}`: the image of the closed point.
    pub fn constant_vars(&self) -> Vec<String> {
        (1..=self.x_vars.len()).map(|i| x_coefficient_name(i, 1)).collect()
    }

    /// The `e_{j,m}`: coordinates on the endomorphisms of the fat point.
    pub fn endo_vars(&self) -> Vec<String> {
        self.full_ring.vars().iter().filter(|v| v.starts_with("e_")).cloned().collect()
    }

    /// Coordinates of the base of the map under study; the endomorphism
    /// variables unless overridden.
    pub fn base_vars(&self) -> &[String] {
        &self.base_vars
    }

    pub fn with_base_vars(mut self, vars: &[String]) -> Result<ArcSystem> {
        for v in vars {
            if !self.full_ring.has_var(v) {
                return Err(AlgebraError::UnknownIdentifier(v.clone()));
            }
        }
        self.base_vars = vars.to_vec();
        Ok(self)
    }

    pub fn dimension(&self) -> Result<i64> {
        self.reduced.ideal.krull_dimension()
    }

    pub fn radical_status(&self) -> Result<RadicalStatus> {
        if let Some(s) = self.radical.get() {
            return Ok(*s);
        }
        let s = self.reduced.ideal.radical_certificate()?;
        Ok(*self.radical.get_or_init(|| s))
    }

    /// The trivial endomorphism `O`: every endomorphism variable at zero.
    pub fn origin(&self) -> HashMap<String, Coeff> {
        let zero = self.full_ring.field().zero();
        self.endo_vars().into_iter().map(|v| (v, zero.clone())).collect()
    }

    /// Paper-style short names: single letters in declaration order when the
    /// fat point has length two, indexed names otherwise.
    pub fn alias_map(&self) -> Vec<(String, String)> {
        let l = self.fat_point.length();
        let nx = self.x_vars.len();
        let np = self.endo_vars().len() / l.saturating_sub(1).max(1);
        let mut out = Vec::new();
        if l == 2 && nx * 2 + np * 2 <= 26 {
            let mut letter = b'a';
            for i in 1..=nx {
                for m in 1..=2 {
                    out.push((x_coefficient_name(i, m), (letter as char).to_string()));
                    letter += 1;
                }
            }
            for j in 1..=np {
                // the constant term of the endomorphism is absent but keeps its letter
                letter += 1;
                out.push((endo_coefficient_name(j, 2), (letter as char).to_string()));
                letter += 1;
            }
            return out;
        }
        let index = |a: usize, b: usize| if a > 9 || b > 9 { format!("{a}_{b}") } else { format!("{a}{b}") };
        for i in 1..=nx {
            for m in 1..=l {
                out.push((x_coefficient_name(i, m), format!("a{}", index(i, m))));
            }
        }
        for j in 1..=np {
            for m in 2..=l {
                let alias = if np == 1 && m + 4 <= 26 {
                    ((b'e' + (m - 1) as u8) as char).to_string()
                } else {
                    format!("e{}", index(j, m))
                };
                out.push((endo_coefficient_name(j, m), alias));
            }
        }
        out
    }

    /// Short names for the variables of `ring`; unknown names pass through.
    pub fn aliased_names(&self, ring: &PolyRing) -> Vec<String> {
        let map: HashMap<String, String> = self.alias_map().into_iter().collect();
        ring.vars().iter().map(|v| map.get(v).cloned().unwrap_or_else(|| v.clone())).collect()
    }

    /// Renders a polynomial in any ring on canonical names with the aliases.
    pub fn render_aliased(&self, p: &Polynomial) -> String {
        p.render_with(&self.aliased_names(p.ring()))
    }
}

impl fmt::Display for ArcSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.reduced.ideal)
    }
}

/// `A_Z(Y)`: morphisms from `Z` into the family `Y` over `Z`, with the
/// family's parameters matched to the germ variables of `Z` by position.
pub fn build_arc_system(family: &DeformationFamily, z: &FatPoint) -> Result<ArcSystem> {
    if family.field() != z.field() {
        return Err(AlgebraError::RingMismatch("family and fat point use different fields".into()));
    }
    let np = family.params().len();
    if np > 0 && np != z.germ_vars().len() {
        return Err(AlgebraError::MismatchedParameters(format!(
            "{np} parameter(s) against {} germ variable(s)",
            z.germ_vars().len()
        )));
    }
    ArcSystem::build(z, Some(family), np)
}

/// `A_Z`: endomorphisms of `Z` fixing the closed point.
pub fn build_endo_system(z: &FatPoint) -> Result<ArcSystem> {
    ArcSystem::build(z, None, z.germ_vars().len())
}

/// `Hom(Z, X)` for the trivial family: no endomorphism variables.
pub fn build_hom_system(x: &Ideal, z: &FatPoint) -> Result<ArcSystem> {
    let family = DeformationFamily::trivial(x)?;
    if family.field() != z.field() {
        return Err(AlgebraError::RingMismatch("family and fat point use different fields".into()));
    }
    ArcSystem::build(z, Some(&family), 0)
}

/// `θ⁻¹(point)` in the ring of the `a` variables, reduced.
pub fn theta_fiber(s: &ArcSystem, point: &HashMap<String, Coeff>) -> Result<ReducedIdeal> {
    let endo = s.endo_vars();
    for v in &endo {
        if !point.contains_key(v) {
            return Err(AlgebraError::MismatchedParameters(format!("no value for `{v}`")));
        }
    }
    for k in point.keys() {
        if !endo.contains(k) {
            return Err(AlgebraError::UnknownIdentifier(k.clone()));
        }
    }
    reduce_arc_ideal(&s.raw_ideal()?.specialize(point)?)
}

/// `π⁻¹(X_sing)`: the system plus `X_sing` evaluated on the constant terms.
pub fn pi_singular_preimage(s: &ArcSystem, x_sing: &Ideal) -> Result<ReducedIdeal> {
    let ring = s.full_ring();
    let images: Vec<Polynomial> = x_sing
        .ring()
        .vars()
        .iter()
        .map(|v| match s.x_vars().iter().position(|x| x == v) {
            Some(i) => Polynomial::var(ring, &x_coefficient_name(i + 1, 1)),
            None => Err(AlgebraError::UnknownIdentifier(v.clone())),
        })
        .collect::<Result<Vec<_>>>()?;
    let extra = x_sing.generators().iter().map(|g| g.evaluate_with(&images, ring)).collect::<Result<Vec<_>>>()?;
    reduce_arc_ideal(&s.full_ideal().add_generators(&extra)?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DeformationCheck {
    Flat,
    NotFlat,
    Unknown,
}

/// Flatness of `Y → Spec k[t]/(t^{n+1})` for linear jets: every
/// `(I_Y : t^j)` must equal `I_Y + (t^{n+1-j})`.
pub fn validate_deformation(family: &DeformationFamily, z: &FatPoint) -> Result<DeformationCheck> {
    if z.kind() != FatPointKind::Linear {
        return Ok(DeformationCheck::Unknown);
    }
    if family.params().len() > 1 {
        return Err(AlgebraError::MismatchedParameters("a linear jet has one parameter".into()));
    }
    let Some(t) = family.params().first() else {
        return Ok(DeformationCheck::Flat);
    };
    let ring = family.ring();
    let t = Polynomial::var(ring, t)?;
    let n = z.order() as u32;
    let mut gens = family.polys().to_vec();
    gens.push(t.pow(n + 1)?);
    let iy = Ideal::new(ring, gens)?;
    for j in 1..=n {
        let lhs = iy.quotient_by(&t.pow(j)?)?;
        let rhs = iy.add_generators(&[t.pow(n + 1 - j)?])?;
        if !lhs.equals(&rhs)? {
            return Ok(DeformationCheck::NotFlat);
        }
    }
    Ok(DeformationCheck::Flat)
}
