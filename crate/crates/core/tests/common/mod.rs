#![allow(dead_code)]

use std::sync::Arc;

use autoarc::arc::{build_arc_system, x_coefficient_name, endo_coefficient_name, ArcSystem, DeformationFamily};
use autoarc::fatpoint::FatPoint;
use autoarc::{CoefficientField, Polynomial, PolyRing};

/// A family over a linear jet, as used throughout the test corpus.
pub struct CorpusEntry {
    pub name: &'static str,
    pub characteristic: u64,
    pub x_vars: &'static [&'static str],
    pub params: &'static [&'static str],
    pub polys: &'static [&'static str],
    pub order: usize,
    pub base: Option<&'static [&'static str]>,
}

impl CorpusEntry {
    pub fn field(&self) -> CoefficientField {
        CoefficientField::from_characteristic(self.characteristic).unwrap()
    }

    pub fn family(&self) -> DeformationFamily {
        DeformationFamily::parse(self.field(), self.x_vars, self.params, self.polys).unwrap()
    }

    pub fn system(&self) -> ArcSystem {
        let z = FatPoint::linear_jet(self.order, self.field()).unwrap();
        let s = build_arc_system(&self.family(), &z).unwrap();
        match self.base {
            Some(b) => s.with_base_vars(&b.iter().map(|v| v.to_string()).collect::<Vec<_>>()).unwrap(),
            None => s,
        }
    }
}

pub const CORPUS: &[CorpusEntry] = &[
    CorpusEntry {
        name: "cubic-dual",
        characteristic: 0,
        x_vars: &["x", "y"],
        params: &["t"],
        polys: &["y^2 - x^3 - t"],
        order: 1,
        base: None,
    },
    CorpusEntry {
        name: "cubic-dual-char2",
        characteristic: 2,
        x_vars: &["x", "y"],
        params: &["t"],
        polys: &["y^2 - x^3 - t"],
        order: 1,
        base: None,
    },
    CorpusEntry {
        name: "node-dual",
        characteristic: 0,
        x_vars: &["x", "y"],
        params: &["t"],
        polys: &["x*y - t"],
        order: 1,
        base: None,
    },
    CorpusEntry {
        name: "node-versal-2",
        characteristic: 0,
        x_vars: &["x", "y"],
        params: &["t"],
        polys: &["x*y - t"],
        order: 2,
        base: None,
    },
    CorpusEntry {
        name: "node-second-order",
        characteristic: 0,
        x_vars: &["x", "y"],
        params: &["t"],
        polys: &["x*y - t^2 - t"],
        order: 2,
        base: None,
    },
    CorpusEntry {
        name: "node-far",
        characteristic: 0,
        x_vars: &["x", "y"],
        params: &["t"],
        polys: &["x*y - t^2*(x + y)"],
        order: 2,
        base: None,
    },
    CorpusEntry {
        name: "cusp-third-order",
        characteristic: 0,
        x_vars: &["x", "y"],
        params: &["t"],
        polys: &["y^2 - x^3 - t"],
        order: 3,
        base: None,
    },
    CorpusEntry {
        name: "parabola",
        characteristic: 0,
        x_vars: &["x", "y"],
        params: &["t"],
        polys: &["y - x^2 - t"],
        order: 2,
        base: None,
    },
    CorpusEntry {
        name: "whitney-char2",
        characteristic: 2,
        x_vars: &["x", "y", "z"],
        params: &[],
        polys: &["x^2 - y^2*z"],
        order: 1,
        base: Some(&["a_3_1", "a_3_2"]),
    },
    CorpusEntry {
        name: "whitney",
        characteristic: 0,
        x_vars: &["x", "y", "z"],
        params: &[],
        polys: &["x^2 - y^2*z"],
        order: 1,
        base: Some(&["a_3_1", "a_3_2"]),
    },
];

pub fn entry(name: &str) -> &'static CorpusEntry {
    CORPUS.iter().find(|e| e.name == name).expect("corpus entry")
}

/// Parses `text` written with the system's short names into its reduced ring.
pub fn aliased(s: &ArcSystem, text: &str) -> Polynomial {
    let aliases: std::collections::HashMap<String, String> = s.alias_map().into_iter().collect();
    let ring = s.ring();
    let names: Vec<String> = ring.vars().iter().map(|v| aliases.get(v).cloned().unwrap_or_else(|| v.clone())).collect();
    let alias_ring = PolyRing::new(&names, ring.field(), ring.order()).unwrap();
    let p = autoarc::parse_polynomial(text, &alias_ring).unwrap();
    Polynomial::from_terms(ring, p.terms().to_vec())
}

/// Truncated power series in `t` with polynomial coefficients, used as an
/// independent reference for the arc expansion over `k[t]/(t^{n+1})`.
#[derive(Clone)]
pub struct Series {
    pub coeffs: Vec<Polynomial>,
}

impl Series {
    fn zero(ring: &Arc<PolyRing>, n: usize) -> Self {
        Series { coeffs: vec![Polynomial::zero(ring); n + 1] }
    }

    fn constant(ring: &Arc<PolyRing>, n: usize, c: Polynomial) -> Self {
        let mut s = Self::zero(ring, n);
        s.coeffs[0] = c;
        s
    }

    fn mul(&self, other: &Series) -> Series {
        let n = self.coeffs.len() - 1;
        let ring = self.coeffs[0].ring().clone();
        let mut out = Self::zero(&ring, n);
        for i in 0..=n {
            for j in 0..=n - i {
                out.coeffs[i + j] = out.coeffs[i + j].add(&self.coeffs[i].mul(&other.coeffs[j]));
            }
        }
        out
    }

    fn add(&self, other: &Series) -> Series {
        Series { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.add(b)).collect() }
    }
}

/// Coefficients of `t^0..t^n` of each family polynomial after substituting
/// `x_i = Σ a_i_{k+1} t^k` and `t_1 = Σ_{k≥1} e_1_{k+1} t^k`.
pub fn series_expansion(family: &DeformationFamily, n: usize, ring: &Arc<PolyRing>) -> Vec<Vec<Polynomial>> {
    let fam_ring = family.ring();
    let images: Vec<Series> = fam_ring
        .vars()
        .iter()
        .map(|v| {
            let mut s = Series::zero(ring, n);
            if let Some(i) = family.x_vars().iter().position(|x| x == v) {
                for k in 0..=n {
                    s.coeffs[k] = Polynomial::var(ring, &x_coefficient_name(i + 1, k + 1)).unwrap();
                }
            } else {
                let j = family.params().iter().position(|p| p == v).unwrap();
                for k in 1..=n {
                    s.coeffs[k] = Polynomial::var(ring, &endo_coefficient_name(j + 1, k + 1)).unwrap();
                }
            }
            s
        })
        .collect();
    family
        .polys()
        .iter()
        .map(|f| {
            let mut acc = Series::zero(ring, n);
            for (m, c) in f.terms() {
                let mut term = Series::constant(ring, n, Polynomial::constant(ring, c.clone()));
                for v in m.support() {
                    for _ in 0..m.exponent(v) {
                        term = term.mul(&images[v]);
                    }
                }
                acc = acc.add(&term);
            }
            acc.coeffs
        })
        .collect()
}

/// A random family in up to three coordinates and one parameter.
pub fn random_family<R: rand::Rng>(rng: &mut R, field: CoefficientField) -> DeformationFamily {
    let nx = rng.gen_range(1..=3);
    let x_vars: Vec<&str> = ["x", "y", "z"][..nx].to_vec();
    let mut vars: Vec<&str> = x_vars.clone();
    vars.push("t");
    let ring = PolyRing::new(&vars, field, autoarc::MonomialOrder::Degrevlex).unwrap();
    let npolys = rng.gen_range(1..=2);
    let polys = (0..npolys)
        .map(|_| {
            let terms = (0..rng.gen_range(1..=4))
                .map(|_| {
                    let exps: Vec<u16> = (0..vars.len()).map(|_| rng.gen_range(0..=2)).collect();
                    let mut c = 0;
                    while c == 0 {
                        c = rng.gen_range(-3..=3);
                    }
                    (autoarc::Monomial::from_exponents(&exps), field.from_i64(c))
                })
                .collect();
            Polynomial::from_terms(&ring, terms)
        })
        .collect();
    let owned = |v: &[&str]| v.iter().map(|s| s.to_string()).collect::<Vec<_>>();
    DeformationFamily::new(&ring, &owned(&x_vars), &owned(&["t"]), polys).unwrap()
}
