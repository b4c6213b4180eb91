//! Command-line front end.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Read, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value as Json};

use lexdepth_core::depth::{self, ClassifyOptions, Flag};
use lexdepth_core::reduction::{self, monte_carlo_r_leq_1};
use lexdepth_core::{hilbert, HilbertError, MonomialIdeal2};

use crate::cache::{self, Cache};
use crate::eval::{evaluate, Env, Value};
use crate::parse::parse_program;
use crate::report::{text_table, ClassifyReport, DepthsReport, InvariantsReport, ProbeJson, ReductionJson};
use crate::survey::{self, RowOutcome, SurveyRow};
use crate::verify::{self, Fixtures};
use crate::ExitCode;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(name = "lexdepth", version, about = "Depths of blowup algebras of monomial ideals in K[x,y]")]
pub struct Cli {
    /// Output format (`csv` applies to `survey` only).
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Probe and Hilbert-function horizon.
    #[arg(long, global = true)]
    pub horizon: Option<u32>,
    /// Random reduction pairs per ideal; 0 skips sampling.
    #[arg(long, global = true, default_value_t = 3)]
    pub trials: u32,
    #[arg(long, global = true, default_value_t = reduction::DEFAULT_PRIME)]
    pub prime: u64,
    #[arg(long, global = true, env = "STAIRCASE_SEED", default_value_t = 0)]
    pub seed: u64,
    /// Worker threads for `survey` and `verify-paper`.
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
    pub jobs: u32,
    /// Directory holding the result cache.
    #[arg(long, global = true)]
    pub cache: Option<PathBuf>,
    /// Exit with status 2 when any result is inconclusive.
    #[arg(long, global = true)]
    pub strict: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Classify a lex-segment ideal. EXPR may be `-` (stdin) or `@FILE`.
    Classify { expr: String },
    /// Hilbert coefficients and generator counts.
    Invariants { expr: String },
    /// Colon probes for depth zero of gr_I(R) and F(I).
    Depths { expr: String },
    /// Monte-Carlo test for reduction number at most one.
    Reduction { expr: String },
    /// Evaluate a program of assignments and expressions.
    Eval { program: String },
    /// Check the worked examples and survey claims against a fixture file.
    VerifyPaper {
        #[arg(long)]
        fixtures: Option<PathBuf>,
    },
    /// Classify every lex-segment ideal in a range.
    Survey {
        #[arg(long, default_value_t = 6, value_parser = clap::value_parser!(u32).range(1..))]
        dmax: u32,
        #[arg(long, default_value_t = 9)]
        amax: u32,
        /// Write rows here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug)]
struct Failure {
    code: ExitCode,
    message: String,
}

fn usage(message: impl Into<String>) -> Failure {
    Failure { code: ExitCode::Usage, message: message.into() }
}

fn io_failure(what: &str, e: io::Error) -> Failure {
    Failure { code: ExitCode::Io, message: format!("{what}: {e}") }
}

fn inconclusive(message: impl Into<String>) -> Failure {
    Failure { code: ExitCode::Inconclusive, message: message.into() }
}

fn hilbert_failure(e: HilbertError) -> Failure {
    match e {
        HilbertError::Inconclusive { .. } => inconclusive(e.to_string()),
        other => usage(other.to_string()),
    }
}

/// Parses `args`, runs the command and returns the exit status.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                ExitCode::Usage
            } else {
                let _ = write!(out, "{text}");
                ExitCode::Ok
            };
        }
    };
    let mut session = Session { cli: &cli, stdin, out, err };
    match session.dispatch() {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(session.err, "error: {}", f.message);
            f.code
        }
    }
}

struct Session<'a> {
    cli: &'a Cli,
    stdin: &'a mut dyn Read,
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
}

impl Session<'_> {
    fn dispatch(&mut self) -> Result<ExitCode, Failure> {
        let cli = self.cli;
        if cli.format == Some(Format::Csv) && !matches!(cli.command, Command::Survey { .. }) {
            return Err(usage("--format csv applies to survey only"));
        }
        match &cli.command {
            Command::Classify { expr } => self.classify(expr),
            Command::Invariants { expr } => self.invariants(expr),
            Command::Depths { expr } => self.depths(expr),
            Command::Reduction { expr } => self.reduction(expr),
            Command::Eval { program } => self.eval(program),
            Command::VerifyPaper { fixtures } => self.verify_paper(fixtures.as_deref()),
            Command::Survey { dmax, amax, out } => self.survey(*dmax, *amax, out.as_deref()),
        }
    }

    fn read_source(&mut self, arg: &str) -> Result<String, Failure> {
        let text = if arg == "-" {
            let mut s = String::new();
            self.stdin.read_to_string(&mut s).map_err(|e| io_failure("reading stdin", e))?;
            s
        } else if let Some(path) = arg.strip_prefix('@') {
            std::fs::read_to_string(path).map_err(|e| io_failure(path, e))?
        } else {
            arg.to_string()
        };
        Ok(text.trim_end().to_string())
    }

    fn poly_ideal(&mut self, arg: &str) -> Result<(String, MonomialIdeal2), Failure> {
        let src = self.read_source(arg)?;
        match evaluate(&src) {
            Ok(Value::Poly(i)) if i.is_zero() => Err(usage("the zero ideal is not supported")),
            Ok(Value::Poly(i)) => Ok((src, i)),
            Ok(other) => Err(usage(format!("expected an ideal of K[x,y], got one of {}", other.ring()))),
            Err(e) => Err(usage(e.to_string())),
        }
    }

    fn open_cache(&mut self) -> Result<Option<Cache>, Failure> {
        let Some(dir) = &self.cli.cache else { return Ok(None) };
        let cache = Cache::open(dir).map_err(|e| io_failure(&dir.display().to_string(), e))?;
        for w in &cache.warnings {
            let _ = writeln!(self.err, "warning: {w}");
        }
        Ok(Some(cache))
    }

    /// Looks `key` up in the cache, or computes, stores and returns the JSON.
    fn cached<F>(&mut self, canonical: &str, command: &str, params: &Json, compute: F) -> Result<Json, Failure>
    where
        F: FnOnce() -> Result<Json, Failure>,
    {
        let mut cache = self.open_cache()?;
        let key = cache::key(canonical, command, params);
        if let Some(hit) = cache.as_ref().and_then(|c| c.get(&key)) {
            return serde_json::from_str(hit).map_err(|e| usage(format!("unreadable cache entry: {e}")));
        }
        let value = compute()?;
        if let Some(c) = cache.as_mut() {
            c.put(key, value.to_string()).map_err(|e| io_failure("writing cache", e))?;
        }
        Ok(value)
    }

    fn emit(&mut self, text: &str) -> Result<(), Failure> {
        self.out.write_all(text.as_bytes()).and_then(|_| self.out.flush()).map_err(|e| io_failure("writing output", e))
    }

    fn emit_report(&mut self, report: &Json) -> Result<(), Failure> {
        let text = match self.cli.format {
            Some(Format::Json) => format!("{}\n", serde_json::to_string_pretty(report).expect("json")),
            _ => text_table(report),
        };
        self.emit(&text)
    }

    fn common_params(&self, input: &str) -> Json {
        let c = self.cli;
        json!({ "input": input, "horizon": c.horizon, "trials": c.trials, "prime": c.prime, "seed": c.seed })
    }

    fn options(&self) -> ClassifyOptions {
        ClassifyOptions {
            horizon: self.cli.horizon,
            trials: self.cli.trials,
            prime: self.cli.prime,
            seed: self.cli.seed,
        }
    }

    fn strict_or_ok(&self, inconclusive: bool) -> ExitCode {
        if inconclusive && self.cli.strict {
            ExitCode::Inconclusive
        } else {
            ExitCode::Ok
        }
    }

    fn classify(&mut self, arg: &str) -> Result<ExitCode, Failure> {
        let (src, ideal) = self.poly_ideal(arg)?;
        let spec = ideal.is_lex_segment().ok_or_else(|| usage("not lex-segment"))?;
        let opts = self.options();
        let params = self.common_params(&src);
        let report = self.cached(&ideal.to_string(), "classify", &params, || {
            let v = depth::classify(&ideal, &opts).map_err(|e| usage(e.to_string()))?;
            Ok(to_json(&ClassifyReport::new(&src, &ideal, &spec, &v)))
        })?;
        self.emit_report(&report)?;
        let flags: Vec<Flag> = serde_json::from_value(report["flags"].clone()).unwrap_or_default();
        if flags.iter().any(|f| f.is_violation()) {
            return Ok(ExitCode::Violation);
        }
        Ok(self.strict_or_ok(flags.iter().any(|f| f.is_inconclusive())))
    }

    fn invariants(&mut self, arg: &str) -> Result<ExitCode, Failure> {
        let (src, ideal) = self.poly_ideal(arg)?;
        let horizon = self.cli.horizon;
        let params = json!({ "input": src, "horizon": horizon });
        let report = self.cached(&ideal.to_string(), "invariants", &params, || {
            let s = hilbert::summarize(&ideal, horizon).map_err(hilbert_failure)?;
            Ok(to_json(&InvariantsReport::new(&src, &ideal, &s)))
        })?;
        self.emit_report(&report)?;
        Ok(ExitCode::Ok)
    }

    fn depths(&mut self, arg: &str) -> Result<ExitCode, Failure> {
        let (src, ideal) = self.poly_ideal(arg)?;
        let horizon = self.cli.horizon.unwrap_or_else(|| hilbert::default_horizon(&ideal));
        let params = json!({ "input": src, "horizon": horizon });
        let report = self.cached(&ideal.to_string(), "depths", &params, || {
            let gr = depth::gr_positive_depth_probe(&ideal, horizon).map_err(|e| usage(e.to_string()))?;
            let fiber = depth::fiber_positive_depth_probe(&ideal, horizon).map_err(|e| usage(e.to_string()))?;
            let r = DepthsReport {
                input: src.clone(),
                canonical: ideal.to_string(),
                horizon,
                gr: ProbeJson::from(&gr),
                fiber: ProbeJson::from(&fiber),
            };
            Ok(to_json(&r))
        })?;
        self.emit_report(&report)?;
        Ok(self.strict_or_ok(report["fiber"]["status"] == "inconclusive"))
    }

    fn reduction(&mut self, arg: &str) -> Result<ExitCode, Failure> {
        let (src, ideal) = self.poly_ideal(arg)?;
        let (trials, prime, seed) = (self.cli.trials, self.cli.prime, self.cli.seed);
        let params = json!({ "input": src, "trials": trials, "prime": prime, "seed": seed });
        let report = self.cached(&ideal.to_string(), "reduction", &params, || {
            let l = ideal.split_common_factor().map_err(|e| usage(e.to_string()))?.cofactor;
            if !l.is_m_primary() {
                return Err(usage("the ideal has no m-primary factor to reduce"));
            }
            let e0 = hilbert::newton_e0(&l).map_err(hilbert_failure)?;
            let r = monte_carlo_r_leq_1(&l, trials, prime, seed).map_err(|e| usage(e.to_string()))?;
            Ok(to_json(&ReductionJson::new(&src, &ideal, &l, e0, &r)))
        })?;
        self.emit_report(&report)?;
        Ok(self.strict_or_ok(report["r_leq_1"] == "inconclusive"))
    }

    fn eval(&mut self, arg: &str) -> Result<ExitCode, Failure> {
        let src = self.read_source(arg)?;
        let program = parse_program(&src).map_err(|e| usage(e.to_string()))?;
        let (shown, last) = Env::default().run(&program).map_err(|e| usage(e.to_string()))?;
        let values: Vec<String> =
            if shown.is_empty() { last.into_iter().collect() } else { shown }.iter().map(Value::to_string).collect();
        let text = match self.cli.format {
            Some(Format::Json) => {
                format!("{}\n", serde_json::to_string_pretty(&json!({ "values": values })).expect("json"))
            }
            _ => values.iter().map(|v| format!("{v}\n")).collect(),
        };
        self.emit(&text)?;
        Ok(ExitCode::Ok)
    }

    fn verify_paper(&mut self, path: Option<&Path>) -> Result<ExitCode, Failure> {
        let text = match path {
            Some(p) => std::fs::read_to_string(p).map_err(|e| io_failure(&p.display().to_string(), e))?,
            None => verify::DEFAULT_FIXTURES.to_string(),
        };
        let fixtures: Fixtures = serde_json::from_str(&text).map_err(|e| usage(format!("bad fixture file: {e}")))?;
        let report = verify::run(&fixtures, self.cli.jobs as usize);
        let text = match self.cli.format {
            Some(Format::Json) => format!("{}\n", serde_json::to_string_pretty(&report).expect("json")),
            _ => report.text(),
        };
        self.emit(&text)?;
        Ok(if report.all_pass() { ExitCode::Ok } else { ExitCode::Violation })
    }

    fn survey(&mut self, dmax: u32, amax: u32, out: Option<&Path>) -> Result<ExitCode, Failure> {
        let cli = self.cli;
        let opts = ClassifyOptions { horizon: Some(cli.horizon.unwrap_or(8)), ..self.options() };
        let specs = survey::enumerate(dmax, amax);
        let params = json!({ "horizon": opts.horizon, "trials": opts.trials, "prime": opts.prime, "seed": opts.seed });
        let mut cache = self.open_cache()?;
        let keys: Vec<String> =
            specs.iter().map(|s| cache::key(&s.to_ideal().to_string(), "survey-row", &params)).collect();

        let mut outcomes: Vec<Option<RowOutcome>> = keys
            .iter()
            .map(|k| cache.as_ref().and_then(|c| c.get(k)).and_then(|hit| serde_json::from_str(hit).ok()))
            .collect();
        let missing: Vec<usize> = (0..specs.len()).filter(|&i| outcomes[i].is_none()).collect();
        let todo: Vec<_> = missing.iter().map(|&i| specs[i].clone()).collect();
        let computed = survey::compute_rows(&todo, cli.jobs as usize, |s| survey::compute_row(s, &opts));
        let mut fresh = Vec::new();
        for (&i, result) in missing.iter().zip(computed) {
            let o = result.map_err(|e| Failure { code: ExitCode::Violation, message: format!("{}: {e}", specs[i]) })?;
            fresh.push((keys[i].clone(), serde_json::to_string(&o).expect("json")));
            outcomes[i] = Some(o);
        }
        if let Some(c) = cache.as_mut() {
            c.put_all(fresh).map_err(|e| io_failure("writing cache", e))?;
        }
        let outcomes: Vec<RowOutcome> = outcomes.into_iter().map(|o| o.expect("filled")).collect();
        let rows: Vec<SurveyRow> = outcomes.iter().map(|o| o.row.clone()).collect();

        let write = |w: &mut dyn Write| -> io::Result<()> {
            match cli.format.unwrap_or(Format::Csv) {
                Format::Csv => survey::write_csv(&rows, &mut *w)?,
                Format::Text => survey::write_text(&rows, &mut *w)?,
                Format::Json => {
                    serde_json::to_writer_pretty(&mut *w, &rows)?;
                    w.write_all(b"\n")?;
                }
            }
            w.flush()
        };
        match out {
            Some(path) => {
                let f = File::create(path).map_err(|e| io_failure(&path.display().to_string(), e))?;
                write(&mut BufWriter::new(f)).map_err(|e| io_failure(&path.display().to_string(), e))?;
            }
            None => write(&mut *self.out).map_err(|e| io_failure("writing output", e))?,
        }

        let disagreements = rows.iter().filter(|r| !r.agrees()).count();
        let undecided = outcomes.iter().filter(|o| o.inconclusive).count();
        let _ = writeln!(
            self.err,
            "survey: {} ideals, {disagreements} disagreements, {undecided} inconclusive",
            rows.len()
        );
        if disagreements > 0 {
            return Ok(ExitCode::Violation);
        }
        Ok(self.strict_or_ok(undecided > 0))
    }
}

fn to_json<T: Serialize>(report: &T) -> Json {
    serde_json::to_value(report).expect("serializable report")
}
