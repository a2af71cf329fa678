use std::collections::BTreeMap;
use std::path::PathBuf;

use knotrep_core::characters::{orbit_representative, Character};
use knotrep_core::fox::invariant_factors_q;
use knotrep_core::homology::order_check;
use knotrep_core::knot::{fixture, parse_fixture_table};
use knotrep_core::poly::cyclotomic_root_profile;
use knotrep_core::reps::{build_gl_rep, build_numeric_sample, MetabelianRep, MonomialMatrix, DEFAULT_TOLERANCE};
use knotrep_core::{
    alexander_module, alexander_polynomial, braid_to_wirtinger, build_faithful_reducible, build_sl_rep,
    character_order, count_report, enumerate_characters, existence_report, parse_braid, parse_pd, verify_rep,
    AlexanderModulePresentation, Error, Tower, WirtingerPresentation,
};
use serde::Deserialize;
use serde_json::{json, Value};

/// Failure of a job, classified by exit code.
#[derive(Debug)]
pub enum JobError {
    Input(String),
    Internal(String),
}

impl JobError {
    pub fn exit_code(&self) -> i32 {
        match self {
            JobError::Input(_) => 2,
            JobError::Internal(_) => 3,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            JobError::Input(m) | JobError::Internal(m) => m,
        }
    }
}

impl From<Error> for JobError {
    fn from(e: Error) -> Self {
        if e.is_input_error() {
            JobError::Input(e.to_string())
        } else {
            JobError::Internal(e.to_string())
        }
    }
}

pub type JobResult<T> = Result<T, JobError>;

fn input(msg: impl Into<String>) -> JobError {
    JobError::Input(msg.into())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    Alexander,
    Homology,
    Count,
    Reps,
    Analyze,
    Verify,
}

/// One unit of work: a knot, a command and its options. Batch files hold
/// one of these per line as JSON.
#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobSpec {
    pub command: Option<Command>,
    pub fixture: Option<String>,
    pub fixture_file: Option<PathBuf>,
    pub braid: Option<String>,
    /// Inline PD code.
    pub pd: Option<String>,
    pub pd_file: Option<PathBuf>,
    pub braid_file: Option<PathBuf>,
    pub n: Option<u32>,
    pub n_range: Option<String>,
    pub nmax: Option<u32>,
    #[serde(default)]
    pub emit_matrices: bool,
    #[serde(default)]
    pub verify: bool,
    #[serde(default)]
    pub numeric: bool,
    /// `p/q`: build `GL` representations with corner `exp(2 pi i p/q)`.
    pub gl: Option<String>,
    /// Values on the free part of an infinite cover, `[[a, b], ...]`.
    pub free_exponents: Option<Vec<[f64; 2]>>,
    /// Representation file for `verify`.
    pub rep_file: Option<PathBuf>,
}

pub struct Knot {
    pub label: String,
    pub w: WirtingerPresentation,
    pub a: AlexanderModulePresentation,
}

fn read(path: &PathBuf) -> JobResult<String> {
    std::fs::read_to_string(path).map_err(|e| input(format!("{}: {e}", path.display())))
}

impl JobSpec {
    pub fn knot(&self) -> JobResult<Knot> {
        let sources = [
            self.fixture.is_some(),
            self.braid.is_some(),
            self.pd.is_some(),
            self.pd_file.is_some(),
            self.braid_file.is_some(),
        ];
        match sources.iter().filter(|&&s| s).count() {
            0 => return Err(input("no knot given (use --fixture, --braid, --braid-file or --pd)")),
            1 => {}
            _ => return Err(input("give exactly one knot source")),
        }
        let (label, w) = if let Some(name) = &self.fixture {
            let f = match &self.fixture_file {
                Some(path) => parse_fixture_table(&read(path)?)?
                    .into_iter()
                    .find(|f| &f.name == name)
                    .ok_or_else(|| input(format!("no fixture {name:?} in {}", path.display())))?,
                None => fixture(name)?,
            };
            (f.name, braid_to_wirtinger(&f.braid)?)
        } else if let Some(b) = &self.braid {
            (format!("braid {b}"), braid_to_wirtinger(&parse_braid(b)?)?)
        } else if let Some(path) = &self.braid_file {
            let text = read(path)?;
            (format!("braid {}", text.trim()), braid_to_wirtinger(&parse_braid(&text)?)?)
        } else if let Some(pd) = &self.pd {
            ("pd".to_string(), parse_pd(pd)?)
        } else {
            let path = self.pd_file.as_ref().expect("counted above");
            (path.display().to_string(), parse_pd(&read(path)?)?)
        };
        let a = alexander_module(&w);
        Ok(Knot { label, w, a })
    }

    /// The requested values of `n`, or `default` when none were given.
    pub fn ns(&self, default: std::ops::RangeInclusive<u32>) -> JobResult<Vec<u32>> {
        let ns: Vec<u32> = match (self.n, &self.n_range) {
            (Some(_), Some(_)) => return Err(input("give --n or --n-range, not both")),
            (Some(n), None) => vec![n],
            (None, Some(r)) => {
                let (a, b) = r
                    .split_once("..")
                    .ok_or_else(|| input(format!("bad range {r:?}, expected A..B")))?;
                let b = b.strip_prefix('=').unwrap_or(b);
                let parse = |s: &str| s.trim().parse::<u32>().map_err(|_| input(format!("bad range {r:?}")));
                (parse(a)?..=parse(b)?).collect()
            }
            (None, None) => default.collect(),
        };
        if ns.is_empty() || ns.contains(&0) {
            return Err(input("n must be at least 1"));
        }
        Ok(ns)
    }

    fn gl_exponent(&self) -> JobResult<Option<(u64, u64)>> {
        let Some(s) = &self.gl else { return Ok(None) };
        let (p, q) = s.split_once('/').unwrap_or((s, "1"));
        let parse = |x: &str| x.trim().parse::<u64>().map_err(|_| input(format!("bad z exponent {s:?}, expected p/q")));
        let (p, q) = (parse(p)?, parse(q)?);
        if q == 0 {
            return Err(input("z exponent has zero denominator"));
        }
        Ok(Some((p, q)))
    }
}

pub fn run(spec: &JobSpec) -> JobResult<Value> {
    let command = spec.command.ok_or_else(|| input("missing command"))?;
    let k = spec.knot()?;
    let mut out = match command {
        Command::Alexander => alexander(&k)?,
        Command::Homology => homology(spec, &k)?,
        Command::Count => count(spec, &k)?,
        Command::Reps => reps(spec, &k)?,
        Command::Analyze => analyze(spec, &k)?,
        Command::Verify => verify(spec, &k)?,
    };
    out["knot"] = json!(k.label);
    Ok(out)
}

fn to_value<T: serde::Serialize>(v: &T) -> JobResult<Value> {
    serde_json::to_value(v).map_err(|e| JobError::Internal(e.to_string()))
}

fn alexander(k: &Knot) -> JobResult<Value> {
    let delta = alexander_polynomial(&k.a)?;
    let profile = cyclotomic_root_profile(&delta);
    let factors: Vec<String> = invariant_factors_q(&k.a).iter().map(|f| f.to_string()).collect();
    Ok(json!({
        "command": "alexander",
        "delta": delta.to_string(),
        "delta_coeffs": delta,
        "invariant_factors": factors,
        "cyclotomic_divisors": profile.divisors(),
        "cyclotomic_multiplicities": profile.multiplicities,
        "m": profile.m,
        "all_roots_of_unity": profile.all_roots_of_unity,
    }))
}

fn homology(spec: &JobSpec, k: &Knot) -> JobResult<Value> {
    let delta = alexander_polynomial(&k.a)?;
    let tower = Tower::new(k.a.clone());
    let mut covers = Vec::new();
    for n in spec.ns(1..=6)? {
        let c = tower.get(n);
        let check = order_check(&c, &delta);
        if !check.agree {
            return Err(JobError::Internal(format!("n={n}: Smith form and resultant disagree")));
        }
        let mut v = to_value(&c.summary())?;
        v["resultant"] = to_value(&check)?["resultant_value"].clone();
        v["agree"] = json!(check.agree);
        covers.push(v);
    }
    Ok(json!({ "command": "homology", "covers": covers }))
}

fn count(spec: &JobSpec, k: &Knot) -> JobResult<Value> {
    let tower = Tower::new(k.a.clone());
    let mut counts = Vec::new();
    for n in spec.ns(2..=6)? {
        let r = count_report(&tower, n)?;
        if r.agree == Some(false) {
            return Err(JobError::Internal(format!("n={n}: direct and Moebius counts disagree")));
        }
        counts.push(to_value(&r)?);
    }
    Ok(json!({ "command": "count", "counts": counts }))
}

fn analyze(spec: &JobSpec, k: &Knot) -> JobResult<Value> {
    let delta = alexander_polynomial(&k.a)?;
    let tower = Tower::new(k.a.clone());
    let nmax = spec.nmax.unwrap_or(8);
    if nmax < 2 {
        return Err(input("--nmax must be at least 2"));
    }
    let mut v = to_value(&existence_report(&tower, &delta, nmax)?)?;
    v["command"] = json!("analyze");
    v["delta"] = json!(delta.to_string());
    Ok(v)
}

/// Entry strings `"0"` or `"z^k"` with `z = exp(2 pi i / N)`.
fn expanded(m: &MonomialMatrix) -> Vec<Vec<String>> {
    let mut rows = vec![vec!["0".to_string(); m.n]; m.n];
    for (col, (&row, &e)) in m.perm.iter().zip(&m.exps).enumerate() {
        rows[row][col] = if e == 0 { "1".into() } else { format!("z^{e}") };
    }
    rows
}

fn rep_value(spec: &JobSpec, k: &Knot, r: &MetabelianRep) -> JobResult<Value> {
    let mut v = json!({});
    if spec.emit_matrices {
        v["rep"] = to_value(r)?;
        v["expanded"] = json!(r.images.iter().map(expanded).collect::<Vec<_>>());
    }
    if spec.verify {
        let report = verify_rep(r, &k.w);
        if !report.all_pass() {
            return Err(JobError::Internal(format!("verification failed: {report:?}")));
        }
        v["verification"] = to_value(&report)?;
    }
    Ok(v)
}

fn reps(spec: &JobSpec, k: &Knot) -> JobResult<Value> {
    let mut out = json!({ "command": "reps" });
    if spec.numeric {
        let r = build_faithful_reducible(&k.w, &k.a, DEFAULT_TOLERANCE)?;
        out["faithful"] = to_value(&r)?;
    }
    if spec.n.is_none() && spec.n_range.is_none() {
        if spec.numeric {
            return Ok(out);
        }
        return Err(input("reps needs --n or --n-range"));
    }
    let gl = spec.gl_exponent()?;
    let tower = Tower::new(k.a.clone());
    let mut per_n = Vec::new();
    for n in spec.ns(2..=2)? {
        let c = tower.get(n);
        let mut entry = json!({ "n": n, "homology": to_value(&c.summary())? });
        if c.free_rank() > 0 {
            entry["verdict"] = to_value(&count_report(&tower, n)?.direct)?;
            entry["classes"] = json!([]);
            if let Some(free) = &spec.free_exponents {
                if !spec.numeric {
                    return Err(input("--free-exponents needs --numeric"));
                }
                let chi = Character { free_exponents: Some(free.clone()), ..Character::trivial(&c)? };
                let sample = build_numeric_sample(&k.w, &tower, &chi, DEFAULT_TOLERANCE).map_err(|e| match e {
                    Error::DimensionMismatch(m) => input(m),
                    e => e.into(),
                })?;
                entry["numeric_sample"] = to_value(&sample)?;
            }
            per_n.push(entry);
            continue;
        }
        let mut classes: BTreeMap<Vec<u64>, u64> = BTreeMap::new();
        for chi in enumerate_characters(&c)?.filter(|chi| character_order(chi, &tower) == n) {
            *classes.entry(orbit_representative(&chi, &c)?).or_default() += 1;
        }
        let moduli: Vec<u64> = knotrep_core::characters::torsion_moduli(&c)?;
        let mut listed = Vec::new();
        for (id, size) in classes {
            if size != n as u64 {
                return Err(Error::DivisibilityViolation { n, count: size }.into());
            }
            let chi = Character { n, exponents: id.clone(), moduli: moduli.clone(), free_exponents: None };
            let r = match gl {
                Some((p, q)) => build_gl_rep(&k.w, &tower, &chi, p, q)?,
                None => build_sl_rep(&k.w, &tower, &chi)?,
            };
            let mut v = rep_value(spec, k, &r)?;
            v["class_id"] = json!(id);
            v["character"] = json!({ "exponents": id, "moduli": moduli });
            listed.push(v);
        }
        entry["class_count"] = json!(listed.len());
        entry["classes"] = json!(listed);
        per_n.push(entry);
    }
    out["results"] = json!(per_n);
    Ok(out)
}

/// Re-verify representations read from a file written by `reps
/// --emit-matrices`, or a single serialized representation.
fn verify(spec: &JobSpec, k: &Knot) -> JobResult<Value> {
    let path = spec.rep_file.as_ref().ok_or_else(|| input("verify needs --rep FILE"))?;
    let doc: Value = serde_json::from_str(&read(path)?).map_err(|e| input(format!("{}: {e}", path.display())))?;
    let mut found = Vec::new();
    collect_reps(&doc, &mut found);
    if found.is_empty() {
        return Err(input(format!("{}: no representations found", path.display())));
    }
    let mut reports = Vec::new();
    let mut all_pass = true;
    for v in found {
        let r: MetabelianRep = serde_json::from_value(v).map_err(|e| input(format!("bad representation: {e}")))?;
        let report = verify_rep(&r, &k.w);
        all_pass &= report.all_pass();
        reports.push(json!({ "n": r.n, "character": r.chi.exponents, "all_pass": report.all_pass(), "report": report }));
    }
    if !all_pass {
        return Err(input(format!("{}: verification failed: {}", path.display(), Value::from(reports))));
    }
    Ok(json!({ "command": "verify", "all_pass": all_pass, "reports": reports }))
}

fn collect_reps(v: &Value, out: &mut Vec<Value>) {
    match v {
        Value::Object(map) if map.contains_key("images") && map.contains_key("chi") => out.push(v.clone()),
        Value::Object(map) => map.values().for_each(|x| collect_reps(x, out)),
        Value::Array(xs) => xs.iter().for_each(|x| collect_reps(x, out)),
        _ => {}
    }
}
