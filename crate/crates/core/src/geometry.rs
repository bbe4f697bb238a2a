//! Components, singular loci, local dimensions and flatness tests for arc
//! systems.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::arc::{reduce_arc_ideal, ArcSystem};
use crate::error::{AlgebraError, Result};
use crate::field::{Coeff, CoefficientField};
use crate::homology::{cohen_macaulay_report, tor_one};
use crate::ideal::{Ideal, RadicalStatus};
pub use crate::ideal::{solve_linear_variables, GraphReduction};
use crate::matrix::jacobian_matrix;
use crate::poly::Polynomial;
use crate::ring::{Monomial, PolyRing};

const MAX_LEAVES: usize = 64;
const MAX_DEPTH: usize = 24;
/// Largest prime field searched exhaustively for roots.
const MAX_ROOT_SEARCH: u32 = 1 << 12;
/// Largest integer factored by trial division when listing root candidates.
const MAX_TRIAL: u64 = 1 << 40;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ComponentStatus {
    /// The split ended in a graph over an affine space.
    CertifiedPrime,
    Heuristic,
}

impl fmt::Display for ComponentStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ComponentStatus::CertifiedPrime => "certified-prime-by-split-exhaustion",
            ComponentStatus::Heuristic => "heuristic",
        })
    }
}

#[derive(Clone, Debug)]
pub struct Component {
    pub ideal: Ideal,
    pub dimension: i64,
    pub status: ComponentStatus,
    /// Split choices leading to this component, outermost first.
    pub path: Vec<String>,
}

#[derive(Clone, Debug, Default)]
pub struct ComponentSet {
    pub components: Vec<Component>,
}

impl ComponentSet {
    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Component> {
        self.components.iter()
    }

    pub fn is_equidimensional(&self) -> bool {
        self.components.windows(2).all(|w| w[0].dimension == w[1].dimension)
    }

    pub fn dimension(&self) -> i64 {
        self.components.iter().map(|c| c.dimension).max().unwrap_or(-1)
    }

    pub fn all_certified(&self) -> bool {
        self.components.iter().all(|c| c.status == ComponentStatus::CertifiedPrime)
    }
}

fn small_divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let n = n.abs().to_u64()?;
    if n == 0 || n > MAX_TRIAL {
        return None;
    }
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(BigInt::from(d));
            if d * d != n {
                out.push(BigInt::from(n / d));
            }
        }
        d += 1;
    }
    out.sort();
    Some(out)
}

/// A root in the coefficient field of a univariate polynomial in `v`.
fn find_root(g: &Polynomial, v: usize) -> Option<Coeff> {
    let field = g.field();
    let n = g.ring().nvars();
    let at = |x: &Coeff| {
        let mut point = vec![field.zero(); n];
        point[v] = x.clone();
        g.evaluate_at(&point)
    };
    match field {
        CoefficientField::PrimeField(p) => {
            if p > MAX_ROOT_SEARCH {
                return None;
            }
            (0..p as i64).map(|k| field.from_i64(k)).find(|x| field.is_zero(&at(x)))
        }
        CoefficientField::Rationals => {
            // clear denominators, then p/q with p | a_0 and q | a_d
            let mut lcm = BigInt::one();
            for (_, c) in g.terms() {
                if let Coeff::Rational(r) = c {
                    lcm = lcm.lcm(r.denom());
                }
            }
            let int = |c: &Coeff| match c {
                Coeff::Rational(r) => r.numer() * (&lcm / r.denom()),
                Coeff::Modular(_) => unreachable!("rational field"),
            };
            let lead = int(g.leading_coeff()?);
            let constant = int(&g.constant_term());
            if constant.is_zero() {
                return Some(field.zero());
            }
            let ps = small_divisors(&constant)?;
            let qs = small_divisors(&lead)?;
            for q in &qs {
                for p in &ps {
                    for sign in [1, -1] {
                        let x = field.from_fraction(&(p * sign), q).ok()?;
                        if field.is_zero(&at(&x)) {
                            return Some(x);
                        }
                    }
                }
            }
            None
        }
    }
}

/// The only variable of `g`, if it has exactly one.
fn univariate(g: &Polynomial) -> Option<usize> {
    let vars = g.variables();
    (vars.len() == 1).then(|| vars[0])
}

fn variable_product(ring: &Arc<PolyRing>, m: &Monomial) -> Polynomial {
    Polynomial::monomial(ring, m.squarefree_part(), ring.field().one())
}

/// One splitting step on the first reduced Gröbner basis element that
/// factors visibly.
fn split_step(i: &Ideal) -> Result<Option<Vec<(Ideal, String)>>> {
    let ring = i.ring();
    let field = ring.field();
    let name = |v: usize| ring.vars()[v].clone();
    for g in i.groebner()?.elements() {
        let content = g.monomial_content();
        if g.len() == 1 {
            let m = &g.terms()[0].0;
            if m.degree() == 1 {
                continue;
            }
            let branches = m
                .support()
                .map(|v| Ok((i.add_generators(&[Polynomial::var_by_index(ring, v)])?, format!("{}=0", name(v)))))
                .collect::<Result<Vec<_>>>()?;
            return Ok(Some(branches));
        }
        if !content.is_one() {
            let mono = Polynomial::monomial(ring, content.clone(), field.one());
            let h = g.exact_div(&mono).ok_or_else(|| AlgebraError::Invariant("monomial content".into()))?;
            let mut branches = content
                .support()
                .map(|v| Ok((i.add_generators(&[Polynomial::var_by_index(ring, v)])?, format!("{}=0", name(v)))))
                .collect::<Result<Vec<_>>>()?;
            let residual = i.add_generators(std::slice::from_ref(&h))?.saturate(&variable_product(ring, &content))?;
            branches.push((residual, format!("{}=0", h.render())));
            return Ok(Some(branches));
        }
        if let Some(v) = univariate(g) {
            if g.total_degree().unwrap_or(0) < 2 {
                continue;
            }
            if let Some(r) = find_root(g, v) {
                let linear = Polynomial::var_by_index(ring, v).sub(&Polynomial::constant(ring, r));
                let q = g.exact_div(&linear).ok_or_else(|| AlgebraError::Invariant("root division".into()))?;
                return Ok(Some(vec![
                    (i.add_generators(std::slice::from_ref(&linear))?, format!("{}=0", linear.render())),
                    (i.add_generators(std::slice::from_ref(&q))?, format!("{}=0", q.render())),
                ]));
            }
        }
    }
    Ok(None)
}

fn explore(i: Ideal, path: Vec<String>, leaves: &mut Vec<(Ideal, Vec<String>)>) -> Result<()> {
    if i.is_unit()? {
        return Ok(());
    }
    if path.len() >= MAX_DEPTH || leaves.len() >= MAX_LEAVES {
        leaves.push((i, path));
        return Ok(());
    }
    match split_step(&i)? {
        None => leaves.push((i, path)),
        Some(branches) => {
            for (b, label) in branches {
                let mut p = path.clone();
                p.push(label);
                explore(b, p, leaves)?;
            }
        }
    }
    Ok(())
}

/// Splits `V(I)` along monomial factors and rational roots of univariate
/// elements. Components are reduced Gröbner bases sorted by their rendering;
/// those contained in another are dropped.
pub fn split_components(ideal: &Ideal) -> Result<ComponentSet> {
    let mut leaves = Vec::new();
    explore(ideal.clone(), Vec::new(), &mut leaves)?;
    let mut found: Vec<(Ideal, Vec<String>, Vec<String>)> = Vec::new();
    for (i, path) in leaves {
        let c = i.canonical()?;
        let key = c.render();
        if !found.iter().any(|(_, _, k)| *k == key) {
            found.push((c, path, key));
        }
    }
    found.sort_by(|a, b| a.2.cmp(&b.2));
    let mut keep = vec![true; found.len()];
    for p in 0..found.len() {
        for q in 0..found.len() {
            if p == q || !keep[q] {
                continue;
            }
            // V(P) ⊆ V(Q) makes P redundant
            if found[p].0.radical_contains_ideal(&found[q].0)? {
                keep[p] = false;
                break;
            }
        }
    }
    let mut components = Vec::new();
    for ((ideal, path, _), k) in found.into_iter().zip(keep) {
        if !k {
            continue;
        }
        let dimension = ideal.krull_dimension()?;
        let status = if solve_linear_variables(&ideal)?.is_affine_space() {
            ComponentStatus::CertifiedPrime
        } else {
            ComponentStatus::Heuristic
        };
        components.push(Component { ideal, dimension, status, path });
    }
    Ok(ComponentSet { components })
}

/// Jacobian criterion on an equidimensional ideal; returns the radical-
/// simplified locus.
fn jacobian_locus(i: &Ideal) -> Result<Ideal> {
    let ring = i.ring();
    let dim = i.krull_dimension()?;
    if dim < 0 {
        return Ok(Ideal::unit(ring));
    }
    let codim = ring.nvars() - dim as usize;
    let vars: Vec<usize> = (0..ring.nvars()).collect();
    let gens = i.canonical()?.generators().to_vec();
    let minors = jacobian_matrix(&gens, &vars, ring)?.minors(codim)?;
    Ok(reduce_arc_ideal(&i.add_generators(&minors)?)?.full)
}

/// `I + (c×c Jacobian minors)` with `c` the codimension; for ideals with
/// components of different dimensions, the union of the components'
/// singular loci and their pairwise intersections.
pub fn singular_locus(ideal: &Ideal) -> Result<Ideal> {
    let comps = split_components(ideal)?;
    let out = if comps.is_equidimensional() {
        jacobian_locus(ideal)?
    } else {
        let mut acc = Ideal::unit(ideal.ring());
        for (k, c) in comps.iter().enumerate() {
            acc = acc.intersect(&jacobian_locus(&c.ideal)?)?;
            for d in comps.iter().skip(k + 1) {
                acc = acc.intersect(&c.ideal.sum(&d.ideal)?)?;
            }
        }
        acc
    };
    out.canonical()
}

/// Largest dimension of a component through `point` (one coordinate per
/// variable); `-1` if the point is not on the variety.
pub fn local_dimension_at(ideal: &Ideal, point: &[Coeff]) -> Result<i64> {
    if point.len() != ideal.ring().nvars() {
        return Err(AlgebraError::RingMismatch("point has the wrong number of coordinates".into()));
    }
    let field = ideal.ring().field();
    let comps = split_components(ideal)?;
    Ok(comps
        .iter()
        .filter(|c| c.ideal.generators().iter().all(|g| field.is_zero(&g.evaluate_at(point))))
        .map(|c| c.dimension)
        .max()
        .unwrap_or(-1))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FlatnessMethod {
    Dominance,
    Miracle,
    Tor,
}

impl fmt::Display for FlatnessMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FlatnessMethod::Dominance => "dominance",
            FlatnessMethod::Miracle => "miracle",
            FlatnessMethod::Tor => "tor",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Flat,
    NotFlat,
    Unknown,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Flat => "flat",
            Verdict::NotFlat => "not-flat",
            Verdict::Unknown => "unknown",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FlatnessVerdict {
    pub method: FlatnessMethod,
    pub verdict: Verdict,
    pub evidence: BTreeMap<String, String>,
    pub caveats: Vec<String>,
}

impl FlatnessVerdict {
    fn new(method: FlatnessMethod) -> Self {
        FlatnessVerdict { method, verdict: Verdict::Unknown, evidence: BTreeMap::new(), caveats: Vec::new() }
    }

    fn note(&mut self, key: &str, value: impl ToString) {
        self.evidence.insert(key.to_string(), value.to_string());
    }
}

fn base_names(s: &ArcSystem) -> Vec<&str> {
    s.base_vars().iter().map(String::as_str).collect()
}

/// Flat over a one-dimensional base iff every component dominates it.
pub fn flatness_by_dominance(s: &ArcSystem) -> Result<FlatnessVerdict> {
    let mut v = FlatnessVerdict::new(FlatnessMethod::Dominance);
    let base = base_names(s);
    if base.is_empty() {
        v.caveats.push("no base variables".into());
        return Ok(v);
    }
    let radical = s.radical_status()?;
    v.note("radical", radical);
    if radical != RadicalStatus::CertifiedRadical {
        v.caveats.push("arc ideal not certified radical".into());
        return Ok(v);
    }
    let comps = split_components(s.full_ideal())?;
    if comps.is_empty() {
        v.verdict = Verdict::Flat;
        v.caveats.push("empty total space".into());
        return Ok(v);
    }
    if !comps.all_certified() {
        v.caveats.push("heuristic components".into());
    }
    let mut vertical = None;
    for (k, c) in comps.iter().enumerate() {
        let image = c.ideal.eliminate(&base)?;
        let label = format!("component {}", k + 1);
        if image.is_zero_ideal() {
            v.note(&label, "dominant");
        } else {
            v.note(&label, format!("image in {image}"));
            vertical.get_or_insert(k + 1);
        }
    }
    if let Some(k) = vertical {
        v.verdict = Verdict::NotFlat;
        v.note("witness", format!("component {k} does not dominate the base"));
    } else if base.len() == 1 {
        v.verdict = Verdict::Flat;
    } else {
        v.caveats.push("dominance decides flatness only over a one-dimensional base".into());
    }
    Ok(v)
}

/// Deterministic sample point `(1, 2, 3, ...)` on the base.
fn generic_base_point(s: &ArcSystem) -> HashMap<String, Coeff> {
    let field = s.full_ring().field();
    s.base_vars().iter().enumerate().map(|(k, n)| (n.clone(), field.from_i64(k as i64 + 1))).collect()
}

fn base_fiber(s: &ArcSystem, point: &HashMap<String, Coeff>) -> Result<Ideal> {
    s.full_ideal().specialize(point)
}

/// Miracle flatness over the affine base: equal fibre dimensions at `O`
/// and at a generic sample point, matching `dim − dim base`, plus the
/// Cohen–Macaulay property. A fibre through the origin larger than the
/// local dimension allows is a witness against flatness.
pub fn flatness_by_miracle(s: &ArcSystem) -> Result<FlatnessVerdict> {
    let mut v = FlatnessVerdict::new(FlatnessMethod::Miracle);
    if s.base_vars().is_empty() {
        v.caveats.push("no base variables".into());
        return Ok(v);
    }
    let field = s.full_ring().field();
    let b = s.base_vars().len() as i64;
    let total = s.full_ideal().krull_dimension()?;
    let zero: HashMap<String, Coeff> = s.base_vars().iter().map(|n| (n.clone(), field.zero())).collect();
    let f0_ideal = base_fiber(s, &zero)?;
    let f0 = f0_ideal.krull_dimension()?;
    let generic = generic_base_point(s);
    let f1 = base_fiber(s, &generic)?.krull_dimension()?;
    let origin = vec![field.zero(); s.full_ring().nvars()];
    let local = local_dimension_at(s.full_ideal(), &origin)?;
    let fiber_origin = vec![field.zero(); f0_ideal.ring().nvars()];
    let local_fiber = local_dimension_at(&f0_ideal, &fiber_origin)?;
    v.note("total dimension", total);
    v.note("base dimension", b);
    v.note("fiber dimension at O", f0);
    let sample: Vec<String> = s.base_vars().iter().map(|n| format!("{n}={}", generic[n].display(field))).collect();
    v.note("fiber dimension at generic sample", format!("{f1} ({})", sample.join(", ")));
    v.note("local dimension at origin", local);
    v.note("fiber local dimension at origin", local_fiber);
    if local >= 0 && local_fiber > local - b {
        v.verdict = Verdict::NotFlat;
        v.note("witness", format!("fiber dimension {local_fiber} at the origin exceeds {local} - {b}"));
        return Ok(v);
    }
    let cm = cohen_macaulay_report(s.ideal())?;
    v.note("depth", cm.depth);
    v.note("cohen-macaulay", cm.cohen_macaulay);
    if cm.non_graded_input {
        v.caveats.push("inhomogeneous ideal: Cohen-Macaulay test is local at the origin".into());
    }
    v.caveats.push("fiber dimensions are sampled at two points".into());
    if f0 == f1 && f0 == total - b && cm.cohen_macaulay {
        v.verdict = Verdict::Flat;
    }
    Ok(v)
}

/// `Tor_1` of the total space against the fibre over a base point;
/// vanishing means flat along that fibre.
pub fn flatness_by_tor(s: &ArcSystem, point: &HashMap<String, Coeff>) -> Result<FlatnessVerdict> {
    let mut v = FlatnessVerdict::new(FlatnessMethod::Tor);
    if s.base_vars().is_empty() {
        v.caveats.push("no base variables".into());
        return Ok(v);
    }
    let ring = s.full_ring();
    let mut gens = Vec::new();
    let mut label = Vec::new();
    for n in s.base_vars() {
        let c = point.get(n).ok_or_else(|| AlgebraError::MismatchedParameters(format!("no value for `{n}`")))?;
        gens.push(Polynomial::var(ring, n)?.sub(&Polynomial::constant(ring, c.clone())));
        label.push(format!("{n}={}", c.display(ring.field())));
    }
    let fiber = Ideal::new(ring, gens)?;
    let tor = tor_one(s.full_ideal(), &fiber)?;
    v.note("base point", label.join(", "));
    v.note("tor1 support dimension", tor.support_dimension);
    v.verdict = if tor.is_zero { Verdict::Flat } else { Verdict::NotFlat };
    v.caveats.push("verdict concerns the fiber over this point only".into());
    Ok(v)
}

/// Ideal of the points where `θ` is not smooth: the arc ideal plus the
/// Jacobian minors with respect to the fibre variables, sized by the
/// fibre codimension.
pub fn relative_smooth_locus(s: &ArcSystem) -> Result<Ideal> {
    let i = s.ideal();
    let ring = i.ring();
    let fiber_vars: Vec<usize> =
        (0..ring.nvars()).filter(|&k| !s.base_vars().contains(&ring.vars()[k])).collect();
    let base_present = ring.nvars() - fiber_vars.len();
    let dim = i.krull_dimension()?;
    if dim < 0 {
        return Ok(Ideal::unit(ring));
    }
    let relative = dim - base_present as i64;
    let codim = (fiber_vars.len() as i64 - relative).max(0) as usize;
    let gens = i.canonical()?.generators().to_vec();
    let minors = jacobian_matrix(&gens, &fiber_vars, ring)?.minors(codim)?;
    reduce_arc_ideal(&i.add_generators(&minors)?)?.full.canonical()
}

trait DisplayIn {
    fn display(&self, field: CoefficientField) -> String;
}

impl DisplayIn for Coeff {
    fn display(&self, field: CoefficientField) -> String {
        field.display_value(self).to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arc::{build_arc_system, DeformationFamily};
    use crate::fatpoint::FatPoint;
    use crate::ring::MonomialOrder;

    fn ring(ch: u64, vars: &[&str]) -> Arc<PolyRing> {
        PolyRing::new(vars, CoefficientField::from_characteristic(ch).unwrap(), MonomialOrder::Degrevlex).unwrap()
    }

    fn rendered(c: &ComponentSet) -> Vec<Vec<String>> {
        c.iter().map(|c| c.ideal.render()).collect()
    }

    #[test]
    fn node_components() {
        let r = ring(0, &["x", "y"]);
        let c = split_components(&Ideal::parse(&r, &["x*y"]).unwrap()).unwrap();
        assert_eq!(rendered(&c), vec![vec!["x"], vec!["y"]]);
        assert!(c.all_certified());
    }

    #[test]
    fn deformed_node_components() {
        let r = ring(0, &["a", "b", "c", "d", "f"]);
        let c = split_components(&Ideal::parse(&r, &["a*c", "a*d + b*c - f"]).unwrap()).unwrap();
        assert_eq!(c.len(), 2);
        assert!(c.iter().all(|c| c.dimension == 3));
        assert!(c.all_certified());
    }

    #[test]
    fn cubic_is_one_heuristic_component() {
        let r = ring(0, &["a", "b", "c", "d", "f"]);
        let c = split_components(&Ideal::parse(&r, &["c^2 - a^3", "2*c*d - 3*a^2*b - f"]).unwrap()).unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!(c.components[0].status, ComponentStatus::Heuristic);
    }

    #[test]
    fn rational_root_split() {
        let r = ring(0, &["x", "y"]);
        let c = split_components(&Ideal::parse(&r, &["x^2 - 3*x + 2", "y"]).unwrap()).unwrap();
        assert_eq!(rendered(&c), vec![vec!["x - 1", "y"], vec!["x - 2", "y"]]);
    }

    #[test]
    fn singular_loci() {
        let r = ring(0, &["x", "y"]);
        let origin = Ideal::parse(&r, &["x", "y"]).unwrap();
        assert!(singular_locus(&Ideal::parse(&r, &["x*y"]).unwrap()).unwrap().equals(&origin).unwrap());
        assert!(singular_locus(&Ideal::parse(&r, &["y^2 - x^3"]).unwrap()).unwrap().equals(&origin).unwrap());
        assert!(singular_locus(&Ideal::parse(&r, &["x"]).unwrap()).unwrap().is_unit().unwrap());
        let r3 = ring(0, &["x", "y", "z"]);
        let mixed = Ideal::parse(&r3, &["x*z", "y*z"]).unwrap();
        let expected = Ideal::parse(&r3, &["x", "y", "z"]).unwrap();
        assert!(singular_locus(&mixed).unwrap().equals(&expected).unwrap());
    }

    #[test]
    fn local_dimensions() {
        let r = ring(0, &["x", "y"]);
        let q = CoefficientField::Rationals;
        let xy = Ideal::parse(&r, &["x*y"]).unwrap();
        assert_eq!(local_dimension_at(&xy, &[q.one(), q.zero()]).unwrap(), 1);
        assert_eq!(local_dimension_at(&xy, &[q.one(), q.one()]).unwrap(), -1);
        assert_eq!(local_dimension_at(&Ideal::zero(&r), &[q.one(), q.one()]).unwrap(), 2);
    }

    #[test]
    fn graph_reduction() {
        let r = ring(0, &["a", "b", "c", "d", "g", "h"]);
        let i = Ideal::parse(&r, &["c^2 - g", "2*c*d - a^3 - h"]).unwrap();
        let red = solve_linear_variables(&i).unwrap();
        assert!(red.is_affine_space());
        assert_eq!(red.ideal.ring().nvars(), 4);
    }

    fn node_system() -> ArcSystem {
        let q = CoefficientField::Rationals;
        let y = DeformationFamily::parse(q, &["x", "y"], &["t"], &["x*y - t"]).unwrap();
        build_arc_system(&y, &FatPoint::linear_jet(1, q).unwrap()).unwrap()
    }

    #[test]
    fn node_flatness() {
        let s = node_system();
        assert_eq!(flatness_by_dominance(&s).unwrap().verdict, Verdict::Flat);
        assert_eq!(flatness_by_miracle(&s).unwrap().verdict, Verdict::Flat);
        assert_eq!(flatness_by_tor(&s, &s.origin()).unwrap().verdict, Verdict::Flat);
        let locus = relative_smooth_locus(&s).unwrap();
        assert!(locus.radical_contains(&Polynomial::var(locus.ring(), "e_1_2").unwrap()).unwrap());
    }

    #[test]
    fn vertical_component_is_not_flat() {
        let q = CoefficientField::Rationals;
        let y = DeformationFamily::parse(q, &["x", "y"], &["t"], &["t*x", "t*y"]).unwrap();
        let s = build_arc_system(&y, &FatPoint::linear_jet(1, q).unwrap()).unwrap();
        assert_eq!(flatness_by_dominance(&s).unwrap().verdict, Verdict::NotFlat);
    }
}
