//! Koszul homology, depth, the Cohen–Macaulay test and `Tor_1`.

use std::sync::Arc;

use serde::Serialize;

use crate::error::Result;
use crate::ideal::{solve_linear_variables, Ideal};
use crate::matrix::combinations;
use crate::module::{FreeModuleElement, Submodule};
use crate::poly::Polynomial;
use crate::ring::PolyRing;

/// `H_i` presented as `cycles / boundaries`, both inside the same free
/// module `K_i ⊗ R^r`.
#[derive(Clone, Debug)]
pub struct KoszulHomology {
    pub index: usize,
    pub cycles: Submodule,
    pub boundaries: Submodule,
}

impl KoszulHomology {
    pub fn is_zero(&self) -> Result<bool> {
        if self.cycles.is_zero() {
            return Ok(true);
        }
        self.boundaries.contains_submodule(&self.cycles)
    }
}

/// Koszul complex of `seq` tensored with `R^rank`.
struct Koszul<'a> {
    ring: &'a Arc<PolyRing>,
    seq: &'a [Polynomial],
    rank: usize,
}

impl Koszul<'_> {
    fn subsets(&self, i: usize) -> Vec<Vec<usize>> {
        combinations(self.seq.len(), i)
    }

    /// Image of `e_J ⊗ e_q` under `d(e_J) = Σ_k (-1)^k s_{j_k} e_{J \ j_k}`.
    fn differential(&self, subset: &[usize], q: usize, target: &[Vec<usize>]) -> FreeModuleElement {
        let mut e = FreeModuleElement::zero(self.ring, target.len() * self.rank);
        let mut comps = e.components().to_vec();
        for (k, &j) in subset.iter().enumerate() {
            let mut face = subset.to_vec();
            face.remove(k);
            let pos = target.iter().position(|t| *t == face).expect("face of a subset");
            let s = &self.seq[j];
            comps[pos * self.rank + q] = if k % 2 == 0 { s.clone() } else { s.neg() };
        }
        e = FreeModuleElement::new(comps);
        e
    }

    fn images(&self, i: usize) -> Vec<FreeModuleElement> {
        let source = self.subsets(i);
        let target = self.subsets(i - 1);
        let mut out = Vec::with_capacity(source.len() * self.rank);
        for subset in &source {
            for q in 0..self.rank {
                out.push(self.differential(subset, q, &target));
            }
        }
        out
    }

    /// `N` placed in every block of `K_i ⊗ R^r`.
    fn relations(&self, n: &Submodule, i: usize) -> Vec<FreeModuleElement> {
        let blocks = self.subsets(i).len();
        let mut out = Vec::new();
        for b in 0..blocks {
            for g in n.generators() {
                let mut comps = vec![Polynomial::zero(self.ring); blocks * self.rank];
                for (q, c) in g.components().iter().enumerate() {
                    comps[b * self.rank + q] = c.clone();
                }
                out.push(FreeModuleElement::new(comps));
            }
        }
        out
    }
}

/// `H_i(seq; R^r / M)`.
pub fn koszul_homology(seq: &[Polynomial], m: &Submodule, i: usize) -> Result<KoszulHomology> {
    let ring = m.ring();
    let r = m.rank();
    let k = Koszul { ring, seq, rank: r };
    let n = seq.len();
    let width = if i <= n { k.subsets(i).len() * r } else { 0 };
    if i > n {
        let empty = Submodule::new(ring, 0, Vec::new())?;
        return Ok(KoszulHomology { index: i, cycles: empty.clone(), boundaries: empty });
    }
    let cycles = if i == 0 {
        let gens = (0..r).map(|q| FreeModuleElement::basis(ring, r, q, Polynomial::one(ring))).collect();
        Submodule::new(ring, r, gens)?
    } else {
        let target_width = k.subsets(i - 1).len() * r;
        let relations = Submodule::new(ring, target_width, k.relations(m, i - 1))?;
        relations.kernel_of_map(&k.images(i))?
    };
    let mut bgens = k.relations(m, i);
    if i < n {
        bgens.extend(k.images(i + 1));
    }
    let boundaries = Submodule::new(ring, width, bgens)?;
    Ok(KoszulHomology { index: i, cycles, boundaries })
}

/// Depth of `R^r / M` along `seq`: scanning `i = 1..n`, the first vanishing
/// `H_i` gives `n - i + 1`; `0` if none vanishes.
pub fn depth(m: &Submodule, seq: &[Polynomial]) -> Result<usize> {
    let n = seq.len();
    for i in 1..=n {
        if koszul_homology(seq, m, i)?.is_zero()? {
            return Ok(n - i + 1);
        }
    }
    Ok(0)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CohenMacaulayReport {
    pub depth: usize,
    pub dimension: i64,
    pub cohen_macaulay: bool,
    /// Set when the graded criterion was applied to inhomogeneous generators.
    pub non_graded_input: bool,
}

/// Compares the depth of `R/I` at the irrelevant ideal with `dim R/I`.
/// Variables solved by a generator `c*v + p` are removed first; when the
/// remaining ideal is a complete intersection the quotient is
/// Cohen–Macaulay without any homology computation.
pub fn cohen_macaulay_report(ideal: &Ideal) -> Result<CohenMacaulayReport> {
    let non_graded_input = !ideal.is_homogeneous();
    let dimension = ideal.krull_dimension()?;
    let graph = solve_linear_variables(ideal)?;
    let reduced = &graph.ideal;
    if dimension >= 0 {
        let codim = reduced.ring().nvars() as i64 - dimension;
        if reduced.generators().len() as i64 == codim {
            let depth = dimension as usize;
            return Ok(CohenMacaulayReport { depth, dimension, cohen_macaulay: true, non_graded_input });
        }
    }
    // the isomorphism preserves the origin only if no solved value has a constant term
    let target = if graph.solved.iter().all(|(_, p)| p.field().is_zero(&p.constant_term())) { reduced } else { ideal };
    let ring = target.ring();
    let vars: Vec<Polynomial> = (0..ring.nvars()).map(|i| Polynomial::var_by_index(ring, i)).collect();
    let m = Submodule::from_ideal(&target.canonical()?);
    let depth = depth(&m, &vars)?;
    Ok(CohenMacaulayReport { depth, dimension, cohen_macaulay: depth as i64 == dimension, non_graded_input })
}

pub fn cohen_macaulay_test(ideal: &Ideal) -> Result<bool> {
    Ok(cohen_macaulay_report(ideal)?.cohen_macaulay)
}

/// `Tor_1(R/J, R/I) ≅ (I ∩ J) / (I J)`.
#[derive(Clone, Debug)]
pub struct TorResult {
    pub numerator: Ideal,
    pub denominator: Ideal,
    pub annihilator: Ideal,
    pub is_zero: bool,
    /// Dimension of the support; `-1` for the zero module.
    pub support_dimension: i64,
}

pub fn tor_one(i: &Ideal, j: &Ideal) -> Result<TorResult> {
    let j = j.map_to(i.ring())?;
    let numerator = i.intersect(&j)?;
    let denominator = i.product(&j)?;
    let is_zero = denominator.contains_ideal(&numerator)?;
    let annihilator = denominator.quotient(&numerator)?;
    let support_dimension = annihilator.krull_dimension()?;
    Ok(TorResult { numerator, denominator, annihilator, is_zero, support_dimension })
}
