//! Declarative job files.
//!
//! ```text
//! ring { char = 0 ; vars = x, y }
//! fatpoint { kind = linear ; order = 2 }
//! deformation { params = t ; polys = x*y - t^2 - t }
//! task { run = classify }
//! output { format = json ; file = out.json }
//! ```
//!
//! Blocks may span lines, `#` starts a comment, and `;` separates keys.
//! A segment without `key =` continues the previous `polys` or `ideal`
//! list, so several polynomials are written `polys = f ; g`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::RangeInclusive;
use std::path::PathBuf;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{JobError, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RingSpec {
    #[serde(rename = "char")]
    pub characteristic: u64,
    pub vars: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum FatPointSpec {
    Linear { order: usize },
    Germ { vars: Vec<String>, ideal: Vec<String>, order: usize },
}

impl FatPointSpec {
    pub fn order(&self) -> usize {
        match self {
            FatPointSpec::Linear { order } | FatPointSpec::Germ { order, .. } => *order,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct DeformationSpec {
    pub params: Vec<String>,
    pub polys: Vec<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Task {
    ArcIdeal,
    EndoIdeal,
    Dimension,
    Components,
    Flatness,
    Classify,
    Defects,
    Motivic,
    Validate,
}

impl Task {
    const ALL: [(&'static str, Task); 9] = [
        ("arc-ideal", Task::ArcIdeal),
        ("endo-ideal", Task::EndoIdeal),
        ("dimension", Task::Dimension),
        ("components", Task::Components),
        ("flatness", Task::Flatness),
        ("classify", Task::Classify),
        ("defects", Task::Defects),
        ("motivic", Task::Motivic),
        ("validate", Task::Validate),
    ];

    pub fn name(self) -> &'static str {
        Task::ALL.iter().find(|(_, t)| *t == self).map(|(n, _)| *n).expect("every task is named")
    }

    fn needs_range(self) -> bool {
        matches!(self, Task::Defects | Task::Motivic)
    }

    fn needs_deformation(self) -> bool {
        !matches!(self, Task::EndoIdeal)
    }
}

impl fmt::Display for Task {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Task {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Task::ALL.iter().find(|(n, _)| *n == s).map(|(_, t)| *t).ok_or_else(|| {
            let names: Vec<&str> = Task::ALL.iter().map(|(n, _)| *n).collect();
            format!("unknown task `{s}` (expected one of {})", names.join(", "))
        })
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Format {
    #[default]
    Text,
    Json,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "text" => Ok(Format::Text),
            "json" => Ok(Format::Json),
            _ => Err(format!("unknown format `{s}` (expected text or json)")),
        }
    }
}

fn serialize_range<S: Serializer>(r: &Option<RangeInclusive<usize>>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match r {
        Some(r) => s.serialize_str(&format!("{}..{}", r.start(), r.end())),
        None => s.serialize_none(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TaskSpec {
    pub run: Task,
    #[serde(serialize_with = "serialize_range")]
    pub range: Option<RangeInclusive<usize>>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct OutputSpec {
    pub format: Format,
    pub file: Option<PathBuf>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Job {
    pub ring: RingSpec,
    pub fatpoint: FatPointSpec,
    pub deformation: Option<DeformationSpec>,
    pub task: TaskSpec,
    pub output: OutputSpec,
}

/// A `key = value` entry; list keys may collect several `;`-separated parts.
#[derive(Debug)]
struct Entry {
    line: usize,
    parts: Vec<String>,
}

#[derive(Debug)]
struct Section {
    line: usize,
    entries: BTreeMap<String, Entry>,
}

impl Section {
    fn take(&mut self, key: &str) -> Option<Entry> {
        self.entries.remove(key)
    }

    fn single(&mut self, name: &str, key: &str) -> Result<Option<(usize, String)>> {
        match self.take(key) {
            None => Ok(None),
            Some(e) if e.parts.len() == 1 => Ok(Some((e.line, e.parts[0].clone()))),
            Some(e) => Err(JobError::Parse { line: e.line, msg: format!("`{name}.{key}` takes a single value") }),
        }
    }

    fn required(&mut self, name: &str, key: &str) -> Result<(usize, String)> {
        self.single(name, key)?
            .ok_or_else(|| JobError::Parse { line: self.line, msg: format!("section `{name}` needs `{key}`") })
    }

    fn finish(self, name: &str) -> Result<()> {
        match self.entries.into_iter().next() {
            Some((k, e)) => Err(JobError::Parse { line: e.line, msg: format!("unknown key `{k}` in `{name}`") }),
            None => Ok(()),
        }
    }
}

const LIST_KEYS: [&str; 2] = ["polys", "ideal"];
const SECTIONS: [&str; 5] = ["ring", "fatpoint", "deformation", "task", "output"];

fn strip_comments(text: &str) -> String {
    text.lines().map(|l| l.split('#').next().unwrap_or("")).collect::<Vec<_>>().join("\n")
}

fn line_of(text: &str, pos: usize) -> usize {
    text[..pos].matches('\n').count() + 1
}

fn parse_body(body: &str, base: usize, text: &str) -> Result<BTreeMap<String, Entry>> {
    let mut entries: BTreeMap<String, Entry> = BTreeMap::new();
    let mut last: Option<String> = None;
    let mut offset = base;
    for segment in body.split(';') {
        let line = line_of(text, offset + segment.len() - segment.trim_start().len());
        offset += segment.len() + 1;
        let seg = segment.trim();
        let key_value = seg.split_once('=').filter(|(k, _)| {
            let k = k.trim();
            !k.is_empty() && k.chars().all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-')
        });
        match key_value {
            Some((k, v)) => {
                let k = k.trim().to_string();
                if entries.contains_key(&k) {
                    return Err(JobError::Parse { line, msg: format!("duplicate key `{k}`") });
                }
                entries.insert(k.clone(), Entry { line, parts: vec![v.trim().to_string()] });
                last = Some(k);
            }
            None if seg.is_empty() => {}
            None => match last.as_deref() {
                Some(k) if LIST_KEYS.contains(&k) => {
                    entries.get_mut(k).expect("last key exists").parts.push(seg.to_string());
                }
                _ => return Err(JobError::Parse { line, msg: format!("expected `key = value`, found `{seg}`") }),
            },
        }
    }
    Ok(entries)
}

fn split_sections(text: &str) -> Result<BTreeMap<String, Section>> {
    let mut sections = BTreeMap::new();
    let mut rest = 0;
    loop {
        let tail = &text[rest..];
        let skipped = tail.len() - tail.trim_start().len();
        let start = rest + skipped;
        if start >= text.len() {
            break;
        }
        let open = text[start..]
            .find('{')
            .map(|k| start + k)
            .ok_or_else(|| JobError::Parse { line: line_of(text, start), msg: "expected `name { ... }`".into() })?;
        let name = text[start..open].trim();
        let line = line_of(text, start);
        if !SECTIONS.contains(&name) {
            return Err(JobError::Parse { line, msg: format!("unknown section `{name}`") });
        }
        let close = text[open..]
            .find('}')
            .map(|k| open + k)
            .ok_or_else(|| JobError::Parse { line, msg: format!("section `{name}` is not closed") })?;
        let body = &text[open + 1..close];
        if body.contains('{') {
            return Err(JobError::Parse { line, msg: format!("nested braces in section `{name}`") });
        }
        let entries = parse_body(body, open + 1, text)?;
        if sections.insert(name.to_string(), Section { line, entries }).is_some() {
            return Err(JobError::Parse { line, msg: format!("duplicate section `{name}`") });
        }
        rest = close + 1;
    }
    Ok(sections)
}

fn list(value: &str) -> Vec<String> {
    value.split(',').map(str::trim).filter(|s| !s.is_empty()).map(String::from).collect()
}

fn number(line: usize, what: &str, value: &str) -> Result<usize> {
    value.trim().parse().map_err(|_| JobError::Parse { line, msg: format!("`{what}` must be a non-negative integer") })
}

fn parse_range(line: usize, value: &str) -> Result<RangeInclusive<usize>> {
    let (a, b) = value
        .split_once("..")
        .ok_or_else(|| JobError::Parse { line, msg: format!("range `{value}` must look like `1..4`") })?;
    let (a, b) = (number(line, "range", a)?, number(line, "range", b.trim_start_matches('='))?);
    if a > b {
        return Err(JobError::Parse { line, msg: format!("range `{value}` is empty") });
    }
    Ok(a..=b)
}

impl Job {
    pub fn parse(text: &str) -> Result<Job> {
        let text = strip_comments(text);
        let mut sections = split_sections(&text)?;
        let missing = |name: &str| JobError::Parse { line: 1, msg: format!("missing section `{name}`") };

        let mut s = sections.remove("ring").ok_or_else(|| missing("ring"))?;
        let (line, ch) = s.required("ring", "char")?;
        let characteristic =
            ch.parse().map_err(|_| JobError::Parse { line, msg: format!("characteristic `{ch}` is not a number") })?;
        let vars = s.single("ring", "vars")?.map(|(_, v)| list(&v)).unwrap_or_default();
        s.finish("ring")?;
        let ring = RingSpec { characteristic, vars };

        let mut s = sections.remove("fatpoint").ok_or_else(|| missing("fatpoint"))?;
        let (kline, kind) = s.required("fatpoint", "kind")?;
        let (oline, order) = s.required("fatpoint", "order")?;
        let order = number(oline, "order", &order)?;
        let fatpoint = match kind.as_str() {
            "linear" => FatPointSpec::Linear { order },
            "germ" => {
                let (_, vars) = s.required("fatpoint", "vars")?;
                let ideal = s
                    .take("ideal")
                    .ok_or_else(|| JobError::Parse { line: kline, msg: "a germ fat point needs `ideal`".into() })?
                    .parts;
                FatPointSpec::Germ { vars: list(&vars), ideal, order }
            }
            other => return Err(JobError::Parse { line: kline, msg: format!("unknown fat point kind `{other}`") }),
        };
        s.finish("fatpoint")?;

        let deformation = match sections.remove("deformation") {
            Some(mut s) => {
                let params = s.single("deformation", "params")?.map(|(_, v)| list(&v)).unwrap_or_default();
                let polys = s
                    .take("polys")
                    .ok_or_else(|| JobError::Parse { line: s.line, msg: "section `deformation` needs `polys`".into() })?
                    .parts
                    .into_iter()
                    .filter(|p| !p.is_empty())
                    .collect();
                s.finish("deformation")?;
                Some(DeformationSpec { params, polys })
            }
            None => None,
        };

        let mut s = sections.remove("task").ok_or_else(|| missing("task"))?;
        let (rline, run) = s.required("task", "run")?;
        if run.is_empty() {
            return Err(JobError::Parse { line: rline, msg: "empty task list".into() });
        }
        let run: Task = run.parse().map_err(|msg| JobError::Parse { line: rline, msg })?;
        let range = s.single("task", "range")?.map(|(l, v)| parse_range(l, &v)).transpose()?;
        s.finish("task")?;
        if run.needs_range() && range.is_none() {
            return Err(JobError::Parse { line: rline, msg: format!("task `{run}` needs a nonempty `range`") });
        }
        if run.needs_deformation() && deformation.is_none() {
            return Err(JobError::Parse { line: rline, msg: format!("task `{run}` needs a `deformation` section") });
        }
        let task = TaskSpec { run, range };

        let output = match sections.remove("output") {
            Some(mut s) => {
                let format = match s.single("output", "format")? {
                    Some((l, f)) => f.parse().map_err(|msg| JobError::Parse { line: l, msg })?,
                    None => Format::default(),
                };
                let file = s.single("output", "file")?.map(|(_, f)| PathBuf::from(f));
                s.finish("output")?;
                OutputSpec { format, file }
            }
            None => OutputSpec::default(),
        };
        Ok(Job { ring, fatpoint, deformation, task, output })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const DNODE: &str = "
        # second-order node
        ring { char = 0 ; vars = x, y }
        fatpoint { kind = linear ; order = 2 }
        deformation { params = t ; polys = x*y - t^2 - t }
        task { run = classify }
        output { format = json ; file = out.json }
    ";

    #[test]
    fn parses_a_full_job() {
        let job = Job::parse(DNODE).unwrap();
        assert_eq!(job.ring.vars, vec!["x", "y"]);
        assert_eq!(job.fatpoint, FatPointSpec::Linear { order: 2 });
        assert_eq!(job.deformation.unwrap().polys, vec!["x*y - t^2 - t"]);
        assert_eq!(job.task.run, Task::Classify);
        assert_eq!(job.output.format, Format::Json);
        assert_eq!(job.output.file, Some(PathBuf::from("out.json")));
    }

    #[test]
    fn polynomial_lists_continue_across_semicolons() {
        let job = Job::parse(
            "ring { char = 2 ; vars = x, y }
             fatpoint { kind = germ ; vars = u, v ; ideal = v^2 - u^3 ; u*v ; order = 3 }
             deformation {
                params = u, v ;
                polys = x*y - u ; x^2 - v
             }
             task { run = defects ; range = 1..3 }",
        )
        .unwrap();
        assert_eq!(job.deformation.unwrap().polys, vec!["x*y - u", "x^2 - v"]);
        match job.fatpoint {
            FatPointSpec::Germ { ideal, order, .. } => {
                assert_eq!(ideal, vec!["v^2 - u^3", "u*v"]);
                assert_eq!(order, 3);
            }
            other => panic!("{other:?}"),
        }
        assert_eq!(job.task.range, Some(1..=3));
    }

    #[test]
    fn rejects_malformed_jobs() {
        let cases = [
            "ring { char = 0 }",
            "ring { char = 0 ; vars = x } fatpoint { kind = linear ; order = 1 } task { run = }",
            "ring { char = 0 ; vars = x } fatpoint { kind = linear ; order = 1 } task { run = nope }",
            "ring { char = 0 ; vars = x } fatpoint { kind = linear ; order = 1 } task { run = endo-ideal ; bogus = 1 }",
            "ring { char = 0 ; vars = x } fatpoint { kind = linear ; order = 1 } task { run = defects ; range = 3..1 }",
            "ring { char = 0 ; vars = x } fatpoint { kind = linear ; order = 1 } task { run = classify }",
            "ring { char = 0 ; vars = x ",
            "ring { char = 0 ; vars = x } ring { char = 0 }",
        ];
        for c in cases {
            let err = Job::parse(c).unwrap_err();
            assert_eq!(err.exit_code(), 2, "{c}: {err}");
        }
    }

    #[test]
    fn reports_line_numbers() {
        let err = Job::parse("ring { char = 0 ; vars = x }\nfatpoint {\n kind = cube ; order = 1 }").unwrap_err();
        assert!(err.to_string().starts_with("line 3:"), "{err}");
    }
}
