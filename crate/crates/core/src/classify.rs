//! Strength of deformations, defect sequences over a range of jet orders,
//! and the dimension bookkeeping of motivic terms.

use std::fmt;
use std::ops::RangeInclusive;

use num_rational::Rational64;
use serde::{Serialize, Serializer};
use sha2::{Digest, Sha256};

use crate::arc::{build_arc_system, build_endo_system, endo_coefficient_name, pi_singular_preimage, ArcSystem, DeformationFamily};
use crate::error::{AlgebraError, Result};
use crate::fatpoint::{FatPoint, FatPointKind};
use crate::geometry::singular_locus;
use crate::ideal::Ideal;
use crate::matrix::PolyMatrix;
use crate::poly::Polynomial;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum StrengthClass {
    VeryStrong,
    Strong,
    Weak,
}

impl fmt::Display for StrengthClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StrengthClass::VeryStrong => "very-strong",
            StrengthClass::Strong => "strong",
            StrengthClass::Weak => "weak",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Membership {
    pub variable: String,
    pub in_radical: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StrengthVerdict {
    pub class: StrengthClass,
    /// Radical membership of each endomorphism variable in `I_V`.
    pub memberships: Vec<Membership>,
    /// Radical membership of the determinant of the linear part.
    pub determinant_in_radical: bool,
    pub determinant: String,
    /// Endomorphism variables outside `√I_V`.
    pub witnesses: Vec<String>,
    /// `V` is empty.
    pub vacuous: bool,
    pub preimage_dimension: i64,
}

/// Matrix of the endomorphism's action on `m/m^2`: row `l` holds the
/// linear coordinates of the image of the `l`-th degree-one basis element.
pub fn linear_part_matrix(s: &ArcSystem) -> Result<PolyMatrix> {
    let z = s.fat_point();
    let ring = s.full_ring();
    let linear = z.linear_basis_indices();
    let mut rows = Vec::with_capacity(linear.len());
    for &l in &linear {
        let var = z.basis()[l].support().next().expect("degree one basis element");
        let row = linear
            .iter()
            .map(|&k| Polynomial::var(ring, &endo_coefficient_name(var + 1, k + 1)))
            .collect::<Result<Vec<_>>>()?;
        rows.push(row);
    }
    PolyMatrix::new(ring, rows)
}

/// Compares `V = π⁻¹(X_sing)` with `θ⁻¹(O)` and with the locus where the
/// linear part degenerates. For linear jets the two notions coincide and
/// the class is reported as strong.
pub fn classify_deformation(s: &ArcSystem, x_sing: &Ideal) -> Result<StrengthVerdict> {
    let v = pi_singular_preimage(s, x_sing)?.full;
    let ring = s.full_ring();
    let det = if s.endo_vars().is_empty() {
        Polynomial::zero(ring)
    } else {
        linear_part_matrix(s)?.determinant()?
    };
    if v.is_unit()? {
        return Ok(StrengthVerdict {
            class: StrengthClass::VeryStrong,
            memberships: s.endo_vars().into_iter().map(|variable| Membership { variable, in_radical: true }).collect(),
            determinant_in_radical: true,
            determinant: det.render(),
            witnesses: Vec::new(),
            vacuous: true,
            preimage_dimension: -1,
        });
    }
    let mut memberships = Vec::new();
    for name in s.endo_vars() {
        let in_radical = v.radical_contains(&Polynomial::var(ring, &name)?)?;
        memberships.push(Membership { variable: name, in_radical });
    }
    let witnesses: Vec<String> = memberships.iter().filter(|m| !m.in_radical).map(|m| m.variable.clone()).collect();
    let determinant_in_radical = v.radical_contains(&det)?;
    let very_strong = witnesses.is_empty();
    let class = match s.fat_point().kind() {
        FatPointKind::Linear if very_strong => StrengthClass::Strong,
        FatPointKind::Linear => StrengthClass::Weak,
        FatPointKind::Germ if very_strong => StrengthClass::VeryStrong,
        FatPointKind::Germ if determinant_in_radical => StrengthClass::Strong,
        FatPointKind::Germ => StrengthClass::Weak,
    };
    Ok(StrengthVerdict {
        class,
        memberships,
        determinant_in_radical,
        determinant: det.render(),
        witnesses,
        vacuous: false,
        preimage_dimension: v.krull_dimension()?,
    })
}

/// Exact rational shown as `p/q`, or `p` for integers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Fraction(pub Rational64);

impl Fraction {
    pub fn new(num: i64, den: i64) -> Self {
        Fraction(Rational64::new(num, den))
    }
}

impl fmt::Display for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if *self.0.denom() == 1 {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl Serialize for Fraction {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DefectRow {
    pub n: usize,
    pub l: usize,
    /// `dim A_{Z_n}`.
    pub delta: i64,
    #[serde(rename = "dimA")]
    pub dim_a: i64,
    /// `None` when the central fibre is smooth.
    #[serde(rename = "dimV")]
    pub dim_v: Option<i64>,
    pub d: i64,
    pub phi: Option<Fraction>,
    pub dstar: Fraction,
    pub e: Fraction,
    #[serde(rename = "R")]
    pub r: Option<Fraction>,
}

impl DefectRow {
    pub fn from_dimensions(n: usize, l: usize, delta: i64, dim_a: i64, dim_v: Option<i64>, d: i64) -> Self {
        let li = l as i64;
        DefectRow {
            n,
            l,
            delta,
            dim_a,
            dim_v,
            d,
            phi: dim_v.map(|v| Fraction::new(v - d * li, li)),
            dstar: Fraction::new(dim_a - d * li, li),
            e: Fraction::new(delta, li),
            r: (delta != 0).then(|| Fraction::new(dim_a - d * li, delta)),
        }
    }

    /// `Φ ≤ δ*` and `e ≤ δ*`.
    pub fn satisfies_inequalities(&self) -> bool {
        self.phi.is_none_or(|p| p <= self.dstar) && self.e <= self.dstar
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Monotonicity {
    Constant,
    Increasing,
    Decreasing,
    NonDecreasing,
    NonIncreasing,
    Mixed,
    /// Fewer than two values.
    Undetermined,
}

pub fn monotonicity(values: &[Fraction]) -> Monotonicity {
    if values.len() < 2 {
        return Monotonicity::Undetermined;
    }
    let pairs: Vec<std::cmp::Ordering> = values.windows(2).map(|w| w[1].cmp(&w[0])).collect();
    use std::cmp::Ordering::*;
    let all = |o: std::cmp::Ordering| pairs.iter().all(|p| *p == o);
    if all(Equal) {
        Monotonicity::Constant
    } else if all(Greater) {
        Monotonicity::Increasing
    } else if all(Less) {
        Monotonicity::Decreasing
    } else if pairs.iter().all(|p| *p != Less) {
        Monotonicity::NonDecreasing
    } else if pairs.iter().all(|p| *p != Greater) {
        Monotonicity::NonIncreasing
    } else {
        Monotonicity::Mixed
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DefectMonotonicity {
    pub phi: Monotonicity,
    pub dstar: Monotonicity,
    pub e: Monotonicity,
    #[serde(rename = "R")]
    pub r: Monotonicity,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DefectTable {
    pub fingerprint: String,
    pub rows: Vec<DefectRow>,
    pub monotonicity: DefectMonotonicity,
}

/// SHA-256 of the family's rendered polynomials and role lists.
pub fn family_fingerprint(family: &DeformationFamily) -> String {
    let mut h = Sha256::new();
    h.update(family.field().to_string());
    h.update(b"\n");
    h.update(family.x_vars().join(","));
    h.update(b"\n");
    h.update(family.params().join(","));
    for p in family.polys() {
        h.update(b"\n");
        h.update(p.render());
    }
    hex::encode(h.finalize())
}

/// The fat point of order `n`: a linear jet, or the jet of `germ`.
pub fn jet(n: usize, family: &DeformationFamily, germ: Option<&Ideal>) -> Result<FatPoint> {
    match germ {
        Some(g) => FatPoint::germ_jet(g, n),
        None => FatPoint::linear_jet(n, family.field()),
    }
}

/// One row per order with every dimension computed from scratch.
pub fn defect_row(family: &DeformationFamily, n: usize, germ: Option<&Ideal>) -> Result<DefectRow> {
    let x = family.central_fiber()?;
    let d = x.krull_dimension()?;
    let x_sing = singular_locus(&x)?;
    let z = jet(n, family, germ)?;
    let endo = build_endo_system(&z)?;
    let s = build_arc_system(family, &z)?;
    let dim_v = if x_sing.is_unit()? {
        None
    } else {
        Some(pi_singular_preimage(&s, &x_sing)?.full.krull_dimension()?)
    };
    Ok(DefectRow::from_dimensions(n, z.length(), endo.dimension()?, s.dimension()?, dim_v, d))
}

pub fn defect_table(
    family: &DeformationFamily,
    orders: RangeInclusive<usize>,
    germ: Option<&Ideal>,
) -> Result<DefectTable> {
    if orders.is_empty() {
        return Err(AlgebraError::Unsupported("empty order range".into()));
    }
    let rows = orders.map(|n| defect_row(family, n, germ)).collect::<Result<Vec<_>>>()?;
    let column = |f: &dyn Fn(&DefectRow) -> Option<Fraction>| rows.iter().filter_map(f).collect::<Vec<_>>();
    let monotonicity = DefectMonotonicity {
        phi: monotonicity(&column(&|r| r.phi)),
        dstar: monotonicity(&column(&|r| Some(r.dstar))),
        e: monotonicity(&column(&|r| Some(r.e))),
        r: monotonicity(&column(&|r| r.r)),
    };
    Ok(DefectTable { fingerprint: family_fingerprint(family), rows, monotonicity })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeakCurveBounds {
    pub lower: i64,
    pub upper: i64,
    pub holds: bool,
    /// Curve, pure and irreducible arc space: the setting where the bounds
    /// are expected.
    pub hypotheses_met: bool,
}

/// `n + 2 ≤ dim V_n ≤ 2n` for weak deformations of curves.
pub fn check_weak_curve_bounds(row: &DefectRow, purity: bool, irreducible: bool) -> WeakCurveBounds {
    let n = row.n as i64;
    let (lower, upper) = (n + 2, 2 * n);
    let holds = row.dim_v.is_some_and(|v| lower <= v && v <= upper);
    WeakCurveBounds { lower, upper, holds, hypotheses_met: row.d == 1 && purity && irreducible }
}

/// `coefficient · [class] · 𝕃^power`, where the class has the given
/// dimension.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MotivicTerm {
    pub coefficient: i64,
    pub class: String,
    pub dimension: i64,
    pub power: i64,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct MotivicExpr {
    pub terms: Vec<MotivicTerm>,
}

impl MotivicExpr {
    pub fn term(class: &str, dimension: i64, power: i64) -> Self {
        MotivicExpr { terms: vec![MotivicTerm { coefficient: 1, class: class.to_string(), dimension, power }] }
    }

    pub fn add(&self, other: &MotivicExpr) -> MotivicExpr {
        let mut terms = self.terms.clone();
        for t in &other.terms {
            match terms.iter_mut().find(|s| s.class == t.class && s.dimension == t.dimension && s.power == t.power) {
                Some(s) => s.coefficient += t.coefficient,
                None => terms.push(t.clone()),
            }
        }
        terms.retain(|t| t.coefficient != 0);
        MotivicExpr { terms }
    }

    /// Multiplication by `𝕃^k`.
    pub fn shift(&self, k: i64) -> MotivicExpr {
        let terms = self.terms.iter().map(|t| MotivicTerm { power: t.power + k, ..t.clone() }).collect();
        MotivicExpr { terms }
    }

    pub fn virtual_dimension(&self) -> Option<i64> {
        self.terms.iter().map(|t| t.dimension + t.power).max()
    }
}

pub const SINGULAR_CLASS: &str = "pi^-1(X_sing)";
pub const SMOOTH_CLASS: &str = "smooth part";

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MotivicSequence {
    pub terms: Vec<MotivicExpr>,
    /// Virtual dimension of the singular term per row.
    pub normalized: Vec<Option<i64>>,
    /// Strictly decreasing singular virtual dimensions; vacuously true for
    /// fewer than two singular terms.
    pub convergence: bool,
}

/// Per row: `[π⁻¹(X_sing)]·𝕃^{-dℓ-δ} + [smooth part]·𝕃^{-dℓ-δ}` where the
/// smooth part has dimension `dℓ + δ`.
pub fn motivic_sequence(rows: &[DefectRow]) -> MotivicSequence {
    let mut terms = Vec::with_capacity(rows.len());
    let mut normalized = Vec::with_capacity(rows.len());
    for r in rows {
        let expected = r.d * r.l as i64 + r.delta;
        let mut e = MotivicExpr::term(SMOOTH_CLASS, expected, -expected);
        if let Some(v) = r.dim_v {
            e = MotivicExpr::term(SINGULAR_CLASS, v, -expected).add(&e);
        }
        normalized.push(r.dim_v.map(|v| v - expected));
        terms.push(e);
    }
    let singular: Vec<i64> = normalized.iter().flatten().copied().collect();
    let convergence = singular.windows(2).all(|w| w[1] < w[0]);
    MotivicSequence { terms, normalized, convergence }
}
