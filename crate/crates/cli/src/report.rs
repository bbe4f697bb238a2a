//! Running a job and rendering its report.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::path::Path;
use std::time::{Duration, Instant};

use serde::Serialize;

use autoarc::arc::{build_arc_system, build_endo_system, validate_deformation, ArcSystem, DeformationFamily};
use autoarc::classify::{classify_deformation, defect_table, motivic_sequence, DefectMonotonicity, DefectRow, MotivicExpr};
use autoarc::fatpoint::FatPoint;
use autoarc::geometry::{
    flatness_by_dominance, flatness_by_miracle, flatness_by_tor, singular_locus, split_components, ComponentStatus,
    FlatnessVerdict,
};
use autoarc::{CoefficientField, Coeff, Ideal, MonomialOrder, PolyRing, Polynomial, RadicalStatus};

use crate::error::{JobError, Result};
use crate::job::{FatPointSpec, Format, Job, Task};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AliasEntry {
    pub canonical: String,
    pub alias: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentReport {
    pub generators: Vec<String>,
    pub dimension: i64,
    pub status: ComponentStatus,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassificationReport {
    pub class: String,
    pub witnesses: Vec<String>,
    pub witness_aliases: Vec<String>,
    pub determinant: String,
    pub determinant_in_radical: bool,
    pub vacuous: bool,
    pub preimage_dimension: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MotivicReport {
    pub terms: Vec<MotivicExpr>,
    pub normalized: Vec<Option<i64>>,
    pub convergence: bool,
}

/// Everything a job produced. Timings are kept out of the serialized
/// payload so identical jobs give identical result files.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub job: Job,
    pub task: Task,
    pub ideal: Option<Vec<String>>,
    pub ideal_aliased: Option<Vec<String>>,
    pub alias_map: Option<Vec<AliasEntry>>,
    pub dimension: Option<i64>,
    pub radical: Option<RadicalStatus>,
    pub components: Option<Vec<ComponentReport>>,
    pub flatness: Option<Vec<FlatnessVerdict>>,
    pub classification: Option<ClassificationReport>,
    pub defect_table: Option<Vec<DefectRow>>,
    pub defect_monotonicity: Option<DefectMonotonicity>,
    pub fingerprint: Option<String>,
    pub motivic: Option<MotivicReport>,
    pub validation: Option<autoarc::arc::DeformationCheck>,
    pub warnings: Vec<String>,
    pub status: String,
    #[serde(skip)]
    pub timings: Vec<(String, Duration)>,
}

impl Report {
    fn new(job: &Job) -> Self {
        Report {
            job: job.clone(),
            task: job.task.run,
            ideal: None,
            ideal_aliased: None,
            alias_map: None,
            dimension: None,
            radical: None,
            components: None,
            flatness: None,
            classification: None,
            defect_table: None,
            defect_monotonicity: None,
            fingerprint: None,
            motivic: None,
            validation: None,
            warnings: Vec::new(),
            status: "ok".into(),
            timings: Vec::new(),
        }
    }

    fn heuristic(&mut self, why: &str) {
        self.status = "ok (heuristic)".into();
        let w = format!("heuristic: {why}");
        if !self.warnings.contains(&w) {
            self.warnings.push(w);
        }
    }

    fn timed<T>(&mut self, label: &str, f: impl FnOnce() -> autoarc::Result<T>) -> Result<T> {
        let start = Instant::now();
        let out = f()?;
        self.timings.push((label.to_string(), start.elapsed()));
        Ok(out)
    }

    fn describe_system(&mut self, s: &ArcSystem) -> Result<()> {
        let names = s.aliased_names(s.ring());
        let gens = s.ideal().generators();
        self.ideal = Some(gens.iter().map(|g| g.render_positive_first(s.ring().vars())).collect());
        self.ideal_aliased = Some(gens.iter().map(|g| g.render_positive_first(&names)).collect());
        self.alias_map =
            Some(s.alias_map().into_iter().map(|(canonical, alias)| AliasEntry { canonical, alias }).collect());
        self.dimension = Some(self.timed("dimension", || s.dimension())?);
        Ok(())
    }

    fn check_radical(&mut self, s: &ArcSystem) -> Result<()> {
        let status = self.timed("radical certificate", || s.radical_status())?;
        self.radical = Some(status);
        if status != RadicalStatus::CertifiedRadical {
            self.heuristic("arc ideal not certified radical; dimensions refer to the reduced scheme");
        }
        Ok(())
    }
}

fn field_of(job: &Job) -> Result<CoefficientField> {
    Ok(CoefficientField::from_characteristic(job.ring.characteristic)?)
}

fn germ_ideal(job: &Job) -> Result<Option<Ideal>> {
    match &job.fatpoint {
        FatPointSpec::Linear { .. } => Ok(None),
        FatPointSpec::Germ { vars, ideal, .. } => {
            let ring = PolyRing::new(vars, field_of(job)?, MonomialOrder::Degrevlex)?;
            let gens: Vec<&str> = ideal.iter().map(String::as_str).collect();
            Ok(Some(Ideal::parse(&ring, &gens)?))
        }
    }
}

fn fat_point(job: &Job, order: usize) -> Result<FatPoint> {
    Ok(match germ_ideal(job)? {
        Some(g) => FatPoint::germ_jet(&g, order)?,
        None => FatPoint::linear_jet(order, field_of(job)?)?,
    })
}

fn family(job: &Job) -> Result<DeformationFamily> {
    let d = job.deformation.as_ref().ok_or_else(|| JobError::Invalid("no deformation section".into()))?;
    let x: Vec<&str> = job.ring.vars.iter().map(String::as_str).collect();
    let params: Vec<&str> = d.params.iter().map(String::as_str).collect();
    let polys: Vec<&str> = d.polys.iter().map(String::as_str).collect();
    Ok(DeformationFamily::parse(field_of(job)?, &x, &params, &polys)?)
}

fn base_origin(s: &ArcSystem) -> HashMap<String, Coeff> {
    let zero = s.full_ring().field().zero();
    s.base_vars().iter().map(|v| (v.clone(), zero.clone())).collect()
}

fn central_singular_locus(f: &DeformationFamily) -> autoarc::Result<Ideal> {
    singular_locus(&f.central_fiber()?)
}

/// Parses and runs the job file at `path`.
pub fn run_job(path: &Path) -> Result<Report> {
    let text = std::fs::read_to_string(path)
        .map_err(|source| JobError::Io { path: path.display().to_string(), source })?;
    run(&Job::parse(&text)?)
}

pub fn run(job: &Job) -> Result<Report> {
    let mut report = Report::new(job);
    let field = field_of(job)?;
    if field.characteristic() > 0 {
        report.warnings.push(format!(
            "characteristic {}: results may differ from characteristic 0",
            field.characteristic()
        ));
    }
    if job.task.range.is_some() && !matches!(job.task.run, Task::Defects | Task::Motivic) {
        report.warnings.push(format!("range is ignored by task `{}`", job.task.run));
    }
    let order = job.fatpoint.order();
    match job.task.run {
        Task::EndoIdeal => {
            let z = fat_point(job, order)?;
            let s = report.timed("endomorphism system", || build_endo_system(&z))?;
            report.describe_system(&s)?;
        }
        Task::ArcIdeal | Task::Dimension => {
            let f = family(job)?;
            let z = fat_point(job, order)?;
            let s = report.timed("arc system", || build_arc_system(&f, &z))?;
            report.describe_system(&s)?;
            if job.task.run == Task::Dimension {
                report.check_radical(&s)?;
            }
        }
        Task::Components => {
            let f = family(job)?;
            let z = fat_point(job, order)?;
            let s = report.timed("arc system", || build_arc_system(&f, &z))?;
            report.describe_system(&s)?;
            let comps = report.timed("components", || split_components(s.ideal()))?;
            if !comps.all_certified() {
                report.heuristic("components not certified prime");
            }
            report.components = Some(
                comps
                    .iter()
                    .map(|c| ComponentReport {
                        generators: c.ideal.generators().iter().map(Polynomial::render).collect(),
                        dimension: c.dimension,
                        status: c.status,
                    })
                    .collect(),
            );
        }
        Task::Flatness => {
            let f = family(job)?;
            let z = fat_point(job, order)?;
            let s = report.timed("arc system", || build_arc_system(&f, &z))?;
            report.describe_system(&s)?;
            report.check_radical(&s)?;
            let verdicts = vec![
                report.timed("dominance", || flatness_by_dominance(&s))?,
                report.timed("miracle", || flatness_by_miracle(&s))?,
                report.timed("tor", || flatness_by_tor(&s, &base_origin(&s)))?,
            ];
            if verdicts.iter().any(|v| v.caveats.iter().any(|c| c.contains("heuristic"))) {
                report.heuristic("flatness used heuristic components");
            }
            report.flatness = Some(verdicts);
        }
        Task::Classify => {
            let f = family(job)?;
            let z = fat_point(job, order)?;
            let s = report.timed("arc system", || build_arc_system(&f, &z))?;
            report.describe_system(&s)?;
            let x_sing = report.timed("singular locus", || central_singular_locus(&f))?;
            let v = report.timed("classification", || classify_deformation(&s, &x_sing))?;
            let aliases: HashMap<String, String> = s.alias_map().into_iter().collect();
            report.classification = Some(ClassificationReport {
                class: v.class.to_string(),
                witness_aliases: v.witnesses.iter().map(|w| aliases.get(w).cloned().unwrap_or_else(|| w.clone())).collect(),
                witnesses: v.witnesses,
                determinant: v.determinant,
                determinant_in_radical: v.determinant_in_radical,
                vacuous: v.vacuous,
                preimage_dimension: v.preimage_dimension,
            });
            if v.vacuous {
                report.warnings.push("central fiber is smooth: classification is vacuous".into());
            }
        }
        Task::Defects | Task::Motivic => {
            let f = family(job)?;
            let germ = germ_ideal(job)?;
            let range = job.task.range.clone().expect("validated by the parser");
            let table = report.timed("defect table", || defect_table(&f, range, germ.as_ref()))?;
            if job.task.run == Task::Motivic {
                let m = motivic_sequence(&table.rows);
                report.motivic =
                    Some(MotivicReport { terms: m.terms, normalized: m.normalized, convergence: m.convergence });
            }
            report.fingerprint = Some(table.fingerprint);
            report.defect_monotonicity = Some(table.monotonicity);
            report.defect_table = Some(table.rows);
        }
        Task::Validate => {
            let f = family(job)?;
            let z = fat_point(job, order)?;
            report.validation = Some(report.timed("validation", || validate_deformation(&f, &z))?);
        }
    }
    Ok(report)
}

/// Canonical JSON payload; timings are excluded.
pub fn render_json(r: &Report) -> String {
    let mut s = serde_json::to_string_pretty(r).expect("report serializes");
    s.push('\n');
    s
}

fn fmt_opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map_or_else(|| "-".to_string(), T::to_string)
}

pub fn render_text(r: &Report) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "task: {}", r.task);
    let _ = writeln!(out, "status: {}", r.status);
    if let (Some(ideal), Some(aliased)) = (&r.ideal, &r.ideal_aliased) {
        let _ = writeln!(out, "ideal:");
        for (c, a) in ideal.iter().zip(aliased) {
            if c == a {
                let _ = writeln!(out, "  {c}");
            } else {
                let _ = writeln!(out, "  {a}    [{c}]");
            }
        }
        if ideal.is_empty() {
            let _ = writeln!(out, "  (zero ideal)");
        }
    }
    if let Some(d) = r.dimension {
        let _ = writeln!(out, "dimension: {d}");
    }
    if let Some(rad) = r.radical {
        let _ = writeln!(out, "radical: {rad}");
    }
    if let Some(comps) = &r.components {
        let _ = writeln!(out, "components: {}", comps.len());
        for (k, c) in comps.iter().enumerate() {
            let _ = writeln!(out, "  {}: ({}) dim {} [{}]", k + 1, c.generators.join(", "), c.dimension, c.status);
        }
    }
    if let Some(verdicts) = &r.flatness {
        let _ = writeln!(out, "flatness:");
        for v in verdicts {
            let _ = writeln!(out, "  {}: {}", v.method, v.verdict);
            for (k, e) in &v.evidence {
                let _ = writeln!(out, "    {k}: {e}");
            }
            for c in &v.caveats {
                let _ = writeln!(out, "    caveat: {c}");
            }
        }
    }
    if let Some(c) = &r.classification {
        let _ = writeln!(out, "classification: {}", c.class);
        let pairs: Vec<String> =
            c.witnesses.iter().zip(&c.witness_aliases).map(|(w, a)| if w == a { w.clone() } else { format!("{w} ({a})") }).collect();
        let _ = writeln!(out, "  witnesses: {}", if pairs.is_empty() { "none".into() } else { pairs.join(", ") });
        let _ = writeln!(out, "  determinant: {} (in radical: {})", c.determinant, c.determinant_in_radical);
        let _ = writeln!(out, "  dim V: {}", c.preimage_dimension);
    }
    if let Some(rows) = &r.defect_table {
        let _ = writeln!(out, "{:>3} {:>3} {:>5} {:>5} {:>5} {:>7} {:>7} {:>7} {:>7}", "n", "l", "delta", "dimA", "dimV", "phi", "dstar", "e", "R");
        for row in rows {
            let _ = writeln!(
                out,
                "{:>3} {:>3} {:>5} {:>5} {:>5} {:>7} {:>7} {:>7} {:>7}",
                row.n,
                row.l,
                row.delta,
                row.dim_a,
                fmt_opt(&row.dim_v),
                fmt_opt(&row.phi),
                row.dstar.to_string(),
                row.e.to_string(),
                fmt_opt(&row.r)
            );
        }
    }
    if let Some(m) = &r.motivic {
        let normalized: Vec<String> = m.normalized.iter().map(fmt_opt).collect();
        let _ = writeln!(out, "motivic: normalized [{}], convergence {}", normalized.join(", "), m.convergence);
    }
    if let Some(v) = &r.validation {
        let _ = writeln!(out, "deformation: {}", serde_json::to_value(v).expect("serializes").as_str().unwrap_or("?"));
    }
    for w in &r.warnings {
        let _ = writeln!(out, "warning: {w}");
    }
    for (label, t) in &r.timings {
        let _ = writeln!(out, "time {label}: {t:.2?}");
    }
    out
}

pub fn render_report(r: &Report, format: Format) -> String {
    match format {
        Format::Text => render_text(r),
        Format::Json => render_json(r),
    }
}
