//! `knotrep`: metabelian representations of knot groups from the command line.

mod job;

use std::io::{BufRead, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use job::{Command, JobError, JobSpec};
use rayon::prelude::*;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "knotrep", version, about = "Irreducible metabelian SL(n,C) representations of knot groups")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Alexander polynomial, invariant factors and cyclotomic profile.
    Alexander(Common),
    /// Homology of the n-fold branched covers (default n = 1..6).
    Homology(Common),
    /// Number of conjugacy classes per n (default n = 2..6).
    Count(Common),
    /// Build one representation per conjugacy class.
    Reps(Common),
    /// Existence verdicts for 2 <= n <= nmax.
    Analyze(Common),
    /// Re-check representations previously written by `reps --emit-matrices`.
    Verify {
        #[command(flatten)]
        common: Common,
        /// JSON file holding the representations.
        #[arg(long = "rep")]
        rep: PathBuf,
    },
    /// Run JSON-lines jobs in parallel; output lines keep input order.
    Batch {
        /// Input file, `-` for stdin.
        input: PathBuf,
        /// Output file, `-` (default) for stdout.
        #[arg(long, default_value = "-")]
        json: PathBuf,
    },
}

#[derive(Args, Clone)]
struct Common {
    /// Built-in fixture name, or a name from --fixture-file.
    #[arg(long)]
    fixture: Option<String>,
    /// Fixture table with lines `name = braid word`.
    #[arg(long)]
    fixture_file: Option<PathBuf>,
    /// Braid word such as "1 1 1 @2".
    #[arg(long, allow_hyphen_values = true)]
    braid: Option<String>,
    /// File holding a braid word.
    #[arg(long)]
    braid_file: Option<PathBuf>,
    /// File holding a PD code.
    #[arg(long)]
    pd: Option<PathBuf>,
    #[arg(long)]
    n: Option<u32>,
    /// Inclusive range `A..B`.
    #[arg(long)]
    n_range: Option<String>,
    /// Largest n for `analyze` (default 8).
    #[arg(long)]
    nmax: Option<u32>,
    /// Write JSON to this file (`-` for stdout) instead of text.
    #[arg(long)]
    json: Option<PathBuf>,
    /// Include matrices in the output.
    #[arg(long)]
    emit_matrices: bool,
    /// Verify every representation that is built.
    #[arg(long)]
    verify: bool,
    /// Also build numeric representations (faithful reducible, free-part samples).
    #[arg(long)]
    numeric: bool,
    /// Build GL(n) representations with z = exp(2 pi i p/q).
    #[arg(long, value_name = "P/Q")]
    gl: Option<String>,
    /// Values on the free part, as `a,b;a,b;...` meaning exp(2 pi i (a + b i)).
    #[arg(long, allow_hyphen_values = true)]
    free_exponents: Option<String>,
}

impl Common {
    fn spec(&self, command: Command) -> Result<JobSpec, JobError> {
        let free_exponents = match &self.free_exponents {
            None => None,
            Some(s) => Some(parse_free(s).ok_or_else(|| JobError::Input(format!("bad --free-exponents {s:?}")))?),
        };
        Ok(JobSpec {
            command: Some(command),
            fixture: self.fixture.clone(),
            fixture_file: self.fixture_file.clone(),
            braid: self.braid.clone(),
            braid_file: self.braid_file.clone(),
            pd_file: self.pd.clone(),
            n: self.n,
            n_range: self.n_range.clone(),
            nmax: self.nmax,
            emit_matrices: self.emit_matrices,
            verify: self.verify,
            numeric: self.numeric,
            gl: self.gl.clone(),
            free_exponents,
            ..JobSpec::default()
        })
    }
}

fn parse_free(s: &str) -> Option<Vec<[f64; 2]>> {
    s.split(';')
        .filter(|p| !p.trim().is_empty())
        .map(|p| {
            let (a, b) = p.split_once(',').unwrap_or((p, "0"));
            Some([a.trim().parse().ok()?, b.trim().parse().ok()?])
        })
        .collect()
}

fn write_out(path: &PathBuf, text: &str) -> Result<(), JobError> {
    if path.as_os_str() == "-" {
        let mut out = std::io::stdout().lock();
        writeln!(out, "{text}").map_err(|e| JobError::Internal(e.to_string()))
    } else {
        std::fs::write(path, format!("{text}\n")).map_err(|e| JobError::Input(format!("{}: {e}", path.display())))
    }
}

fn single(common: &Common, spec: JobSpec) -> Result<(), JobError> {
    let v = job::run(&spec)?;
    match &common.json {
        Some(path) => {
            let text = serde_json::to_string_pretty(&v).map_err(|e| JobError::Internal(e.to_string()))?;
            write_out(path, &text)?;
            if path.as_os_str() != "-" {
                print!("{}", render(&v));
            }
        }
        None => print!("{}", render(&v)),
    }
    Ok(())
}

fn batch(input: &PathBuf, output: &PathBuf) -> Result<(), JobError> {
    let text = if input.as_os_str() == "-" {
        let mut lines = Vec::new();
        for l in std::io::stdin().lock().lines() {
            lines.push(l.map_err(|e| JobError::Input(e.to_string()))?);
        }
        lines.join("\n")
    } else {
        std::fs::read_to_string(input).map_err(|e| JobError::Input(format!("{}: {e}", input.display())))?
    };
    let lines: Vec<&str> = text.lines().filter(|l| !l.trim().is_empty()).collect();
    let results: Vec<Value> = lines
        .par_iter()
        .enumerate()
        .map(|(i, line)| {
            let outcome = serde_json::from_str::<JobSpec>(line)
                .map_err(|e| JobError::Input(format!("line {}: {e}", i + 1)))
                .and_then(|spec| job::run(&spec));
            match outcome {
                Ok(v) => json!({ "line": i + 1, "ok": true, "result": v }),
                Err(e) => json!({ "line": i + 1, "ok": false, "exit_code": e.exit_code(), "error": e.message() }),
            }
        })
        .collect();
    let body: Vec<String> = results.iter().map(Value::to_string).collect();
    write_out(output, &body.join("\n"))
}

/// Plain-text summary of a job result.
fn render(v: &Value) -> String {
    let mut s = String::new();
    let knot = v["knot"].as_str().unwrap_or("?");
    let plain = |x: &Value| match x {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        x => x.to_string(),
    };
    match v["command"].as_str().unwrap_or("") {
        "alexander" => {
            s += &format!("knot: {knot}\nDelta(t) = {}\n", plain(&v["delta"]));
            s += &format!("invariant factors over Q: {}\n", plain(&v["invariant_factors"]));
            s += &format!("cyclotomic divisors: {}\n", plain(&v["cyclotomic_divisors"]));
            s += &format!("m = {}\n", plain(&v["m"]));
        }
        "homology" => {
            s += &format!("knot: {knot}\n{:>4}  {:>6}  {:>4}  {:>10}  torsion\n", "n", "order", "rank", "resultant");
            for c in v["covers"].as_array().into_iter().flatten() {
                s += &format!(
                    "{:>4}  {:>6}  {:>4}  {:>10}  {}\n",
                    plain(&c["n"]),
                    plain(&c["order"]),
                    plain(&c["rank"]),
                    plain(&c["resultant"]),
                    plain(&c["torsion"])
                );
            }
        }
        "count" => {
            s += &format!("knot: {knot}\n");
            for c in v["counts"].as_array().into_iter().flatten() {
                s += &format!(
                    "n={}: {} (Moebius {}, agree {})\n",
                    plain(&c["n"]),
                    plain(&c["direct"]),
                    plain(&c["mobius"]),
                    plain(&c["agree"])
                );
            }
        }
        "analyze" => {
            s += &format!("knot: {knot}\nDelta(t) = {}\nm = {}\n", plain(&v["delta"]), plain(&v["m"]));
            for c in v["verdicts"].as_array().into_iter().flatten() {
                s += &format!("n={}: {} (b1 {}, order {})\n", plain(&c["n"]), plain(&c["verdict"]), plain(&c["betti"]), plain(&c["order"]));
            }
            for note in v["notes"].as_array().into_iter().flatten() {
                s += &format!("note: {}\n", plain(note));
            }
        }
        "reps" => {
            s += &format!("knot: {knot}\n");
            if let Some(f) = v.get("faithful") {
                s += &format!("faithful reducible representation: dimension {}, residual {}\n", plain(&f["dim"]), plain(&f["residual"]));
            }
            for r in v["results"].as_array().into_iter().flatten() {
                match r.get("class_count") {
                    Some(k) => s += &format!("n={}: {} classes\n", plain(&r["n"]), plain(k)),
                    None => s += &format!("n={}: infinite cover, {}\n", plain(&r["n"]), plain(&r["verdict"])),
                }
                for c in r["classes"].as_array().into_iter().flatten() {
                    s += &format!("  class {}", plain(&c["class_id"]));
                    if c.get("verification").is_some() {
                        s += "  verified";
                    }
                    s += "\n";
                    for (g, m) in c["expanded"].as_array().into_iter().flatten().enumerate() {
                        s += &format!("    x{g} = {}\n", plain(m));
                    }
                }
            }
        }
        "verify" => {
            for r in v["reports"].as_array().into_iter().flatten() {
                s += &format!("n={} character {}: {}\n", plain(&r["n"]), plain(&r["character"]), if r["all_pass"] == json!(true) { "PASS" } else { "FAIL" });
            }
        }
        _ => s += &format!("{v}\n"),
    }
    s
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let result = match &cli.command {
        Cmd::Alexander(c) => c.spec(Command::Alexander).and_then(|s| single(c, s)),
        Cmd::Homology(c) => c.spec(Command::Homology).and_then(|s| single(c, s)),
        Cmd::Count(c) => c.spec(Command::Count).and_then(|s| single(c, s)),
        Cmd::Reps(c) => c.spec(Command::Reps).and_then(|s| single(c, s)),
        Cmd::Analyze(c) => c.spec(Command::Analyze).and_then(|s| single(c, s)),
        Cmd::Verify { common, rep } => common
            .spec(Command::Verify)
            .map(|s| JobSpec { rep_file: Some(rep.clone()), ..s })
            .and_then(|s| single(common, s)),
        Cmd::Batch { input, json } => batch(input, json),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
