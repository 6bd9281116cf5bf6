//! The JSON batch interface behind the `daha-leonard` binary.
//!
//! Every subcommand prints one JSON document (to stdout, or to `--out FILE`)
//! holding a [`RunReport`]. Exit codes: 0 success, 1 parse error, 2
//! validation failure, 3 not linked, 4 infeasible module.

use std::ffi::OsString;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::daha::{
    build_module, derived_identity_report, is_feasible, link_check, link_construct,
    restricted_leonard_pairs, sample_valid_params, twist, u_basis, verify_hq_relations,
    Automorphism, Check, DahaError, HqModule, Report, Representation, RootSign, XType,
};
use crate::exactfield::FieldElement;
use crate::exactlinalg::ExactMatrix;
use crate::leonard::{check_huang_admissible, huang_equivalent, HuangData};

pub const EXIT_OK: i32 = 0;
pub const EXIT_PARSE: i32 = 1;
pub const EXIT_VALIDATION: i32 = 2;
pub const EXIT_NOT_LINKED: i32 = 3;
pub const EXIT_INFEASIBLE: i32 = 4;

#[derive(Debug, Parser)]
#[command(
    name = "daha-leonard",
    version,
    about = "Exact H_q modules of type (C1v,C1), their q-Racah Leonard pairs, and linked pairs"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub global: GlobalArgs,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalArgs {
    /// Square root used for k0 when a link is realised by a DS module.
    #[arg(long, value_enum, global = true)]
    pub sign: Option<SignArg>,
    /// Seed for the sampled suite.
    #[arg(long, default_value_t = 1, global = true)]
    pub seed: u64,
    /// Largest n sampled by the suite.
    #[arg(long = "max-n", default_value_t = 9, global = true)]
    pub max_n: usize,
    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SignArg {
    Plus,
    Minus,
}

impl From<SignArg> for RootSign {
    fn from(s: SignArg) -> Self {
        match s {
            SignArg::Plus => RootSign::Plus,
            SignArg::Minus => RootSign::Minus,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a module from a descriptor {"xtype","n","q","k"} and verify it.
    Construct { descriptor: PathBuf },
    /// Check the defining relations and derived identities of a module file.
    Verify { module: PathBuf },
    /// Huang data of the Leonard pairs on both eigenspaces of t0.
    Extract { module: PathBuf },
    /// Decide whether two Leonard pairs (Huang-data files) are linked.
    Link {
        h: PathBuf,
        h2: PathBuf,
        /// Also build the module realising the link.
        #[arg(long)]
        construct: bool,
    },
    /// Admissibility of Huang data, and equivalence with a second file.
    CheckHuang { h: PathBuf, h2: Option<PathBuf> },
    /// Sampled verification battery over all five X-types.
    Suite {
        /// Number of sampled instances.
        #[arg(long, default_value_t = 50)]
        count: usize,
    },
}

/// A construction descriptor; `t` is present in files written by `construct`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ModuleFile {
    pub xtype: XType,
    pub n: usize,
    pub q: FieldElement,
    pub k: [FieldElement; 4],
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t: Option<[ExactMatrix; 4]>,
}

impl ModuleFile {
    pub fn from_module(m: &HqModule) -> Self {
        ModuleFile {
            xtype: m.xtype,
            n: m.params.n,
            q: m.params.q.clone(),
            k: m.params.k.clone(),
            t: Some(m.rep.t.clone()),
        }
    }
}

/// Huang data together with the `q` they refer to.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct HuangFile {
    pub q: FieldElement,
    pub a: FieldElement,
    pub b: FieldElement,
    pub c: FieldElement,
    pub d: usize,
}

impl HuangFile {
    pub fn new(h: &HuangData, q: &FieldElement) -> Self {
        HuangFile {
            q: q.clone(),
            a: h.a.clone(),
            b: h.b.clone(),
            c: h.c.clone(),
            d: h.d,
        }
    }

    pub fn huang(&self) -> HuangData {
        HuangData::new(self.a.clone(), self.b.clone(), self.c.clone(), self.d)
    }
}

/// The document every subcommand emits. Identical invocations give
/// byte-identical reports apart from `wall_time_ms`.
#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub command: Vec<String>,
    pub exit_code: i32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub failures: usize,
    pub checks: Vec<Check>,
    pub result: Value,
    pub wall_time_ms: u128,
}

/// What a subcommand produced before it is wrapped into a [`RunReport`].
#[derive(Debug)]
pub struct Outcome {
    pub exit_code: i32,
    pub error: Option<String>,
    pub report: Report,
    pub result: Value,
}

impl Outcome {
    fn ok(report: Report, result: Value) -> Self {
        let exit_code = if report.all_passed() { EXIT_OK } else { EXIT_VALIDATION };
        Outcome {
            exit_code,
            error: None,
            report,
            result,
        }
    }

    fn fail(exit_code: i32, error: impl Into<String>, report: Report, result: Value) -> Self {
        Outcome {
            exit_code,
            error: Some(error.into()),
            report,
            result,
        }
    }

    fn parse(error: impl Into<String>) -> Self {
        Outcome::fail(EXIT_PARSE, error, Report::default(), Value::Null)
    }

    fn from_error(e: DahaError, report: Report, result: Value) -> Self {
        Outcome::fail(exit_code_for(&e), e.to_string(), report, result)
    }
}

/// The exit code for a library error.
pub fn exit_code_for(e: &DahaError) -> i32 {
    match e {
        DahaError::Infeasible(_) => EXIT_INFEASIBLE,
        DahaError::NotLinked => EXIT_NOT_LINKED,
        _ => EXIT_VALIDATION,
    }
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let value: Value =
        serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    // A report written by `construct` carries the module under "module".
    let value = match value {
        Value::Object(mut map) if map.contains_key("result") && !map.contains_key("xtype") => {
            match map.remove("result") {
                Some(Value::Object(mut r)) if r.contains_key("module") => {
                    r.remove("module").unwrap_or(Value::Null)
                }
                Some(other) => other,
                None => Value::Null,
            }
        }
        other => other,
    };
    serde_json::from_value(value).map_err(|e| format!("{}: {e}", path.display()))
}

/// Builds the module a file describes. When the file carries matrices they
/// must satisfy the relations and coincide with the construction.
fn load_module(file: &ModuleFile, report: &mut Report) -> Result<HqModule, DahaError> {
    if let Some(t) = &file.t {
        let given = Representation {
            q: file.q.clone(),
            k: file.k.clone(),
            t: t.clone(),
        };
        let rel = verify_hq_relations(&given);
        let failed = rel.first_failure().map(|c| c.name.clone());
        report.extend(rel);
        if let Some(name) = failed {
            return Err(DahaError::CheckFailed(format!("given matrices: {name}")));
        }
    }
    let module = build_module(file.xtype, file.n, &file.k, &file.q)?;
    if let Some(t) = &file.t {
        let same = t == &module.rep.t;
        report.push(Check::flag("given matrices equal the construction", same));
        if !same {
            return Err(DahaError::CheckFailed(
                "given matrices differ from the construction for these parameters".into(),
            ));
        }
    }
    Ok(module)
}

fn cmd_construct(path: &Path) -> Outcome {
    let file: ModuleFile = match read_json(path) {
        Ok(f) => f,
        Err(e) => return Outcome::parse(e),
    };
    let module = match build_module(file.xtype, file.n, &file.k, &file.q) {
        Ok(m) => m,
        Err(e) => return Outcome::from_error(e, Report::default(), Value::Null),
    };
    let mut report = verify_hq_relations(&module);
    report.extend(derived_identity_report(&module));
    let result = json!({
        "module": ModuleFile::from_module(&module),
        "mu": module.mu,
    });
    Outcome::ok(report, result)
}

fn cmd_verify(path: &Path) -> Outcome {
    let file: ModuleFile = match read_json(path) {
        Ok(f) => f,
        Err(e) => return Outcome::parse(e),
    };
    let mut report = Report::default();
    let module = match load_module(&file, &mut report) {
        Ok(m) => m,
        Err(e) => return Outcome::from_error(e, report, Value::Null),
    };
    if file.t.is_none() {
        report.extend(verify_hq_relations(&module));
    }
    report.extend(derived_identity_report(&module));
    match u_basis(&module) {
        Ok(ub) => report.extend(ub.report),
        Err(e) => return Outcome::from_error(e, report, Value::Null),
    }
    Outcome::ok(report, json!({ "xtype": module.xtype, "n": module.params.n }))
}

fn cmd_extract(path: &Path) -> Outcome {
    let file: ModuleFile = match read_json(path) {
        Ok(f) => f,
        Err(e) => return Outcome::parse(e),
    };
    let mut report = Report::default();
    let module = match load_module(&file, &mut report) {
        Ok(m) => m,
        Err(e) => return Outcome::from_error(e, report, Value::Null),
    };
    let feas = match is_feasible(&module) {
        Ok(f) => f,
        Err(e) => return Outcome::from_error(e, report, Value::Null),
    };
    if let Some(clause) = &feas.failed_clause {
        report.extend(feas.report.clone());
        return Outcome::fail(
            EXIT_INFEASIBLE,
            format!("module is not feasible: {clause}"),
            report,
            json!({ "feasibility": feas }),
        );
    }
    report.extend(feas.report);
    match restricted_leonard_pairs(&module) {
        Ok(pairs) => {
            report.extend(pairs.report);
            let q = &module.params.q;
            let result = json!({
                "plus": HuangFile::new(&pairs.plus.huang, q),
                "minus": HuangFile::new(&pairs.minus.huang, q),
                "closed_form": {
                    "plus": HuangFile::new(&pairs.plus.closed_form, q),
                    "minus": HuangFile::new(&pairs.minus.closed_form, q),
                },
            });
            Outcome::ok(report, result)
        }
        Err(e) => Outcome::from_error(e, report, Value::Null),
    }
}

fn read_pair(h: &Path, h2: &Path) -> Result<(HuangData, HuangData, FieldElement), Outcome> {
    let f1: HuangFile = read_json(h).map_err(Outcome::parse)?;
    let f2: HuangFile = read_json(h2).map_err(Outcome::parse)?;
    if f1.q != f2.q {
        return Err(Outcome::fail(
            EXIT_VALIDATION,
            "the two Huang-data files use different q",
            Report::default(),
            Value::Null,
        ));
    }
    Ok((f1.huang(), f2.huang(), f1.q))
}

fn cmd_link(h: &Path, h2: &Path, construct: bool, sign: Option<RootSign>) -> Outcome {
    let (h, h2, q) = match read_pair(h, h2) {
        Ok(x) => x,
        Err(o) => return o,
    };
    let mut report = Report::default();
    let adm = (check_huang_admissible(&h, &q), check_huang_admissible(&h2, &q));
    report.push(Check::flag("first Huang data admissible", adm.0));
    report.push(Check::flag("second Huang data admissible", adm.1));
    if !(adm.0 && adm.1) {
        return Outcome::fail(EXIT_VALIDATION, "Huang data not admissible", report, Value::Null);
    }
    let cases = link_check(&h, &h2, &q);
    let mut result = json!({ "cases": cases });
    if cases.is_empty() {
        return Outcome::fail(EXIT_NOT_LINKED, "the Leonard pairs are not linked", report, result);
    }
    if construct {
        match link_construct(&h, &h2, &q, sign) {
            Ok((case, module)) => {
                let pairs = match restricted_leonard_pairs(&module) {
                    Ok(p) => p,
                    Err(e) => return Outcome::from_error(e, report, result),
                };
                // Cases vi and vii realise the inputs in the exchanged order.
                let (x, y) = if case.case_id.exchanged().is_some() {
                    (&h2, &h)
                } else {
                    (&h, &h2)
                };
                report.push(Check::flag(
                    "extracted Huang data reproduce the inputs",
                    huang_equivalent(&pairs.plus.huang, x) && huang_equivalent(&pairs.minus.huang, y),
                ));
                result["construction"] = json!({
                    "case": case,
                    "module": ModuleFile::from_module(&module),
                    "plus": HuangFile::new(&pairs.plus.huang, &q),
                    "minus": HuangFile::new(&pairs.minus.huang, &q),
                });
            }
            Err(e) => return Outcome::from_error(e, report, result),
        }
    }
    Outcome::ok(report, result)
}

fn cmd_check_huang(h: &Path, h2: Option<&Path>) -> Outcome {
    let f1: HuangFile = match read_json(h) {
        Ok(f) => f,
        Err(e) => return Outcome::parse(e),
    };
    let mut report = Report::default();
    let mut result = json!({});
    let first = check_huang_admissible(&f1.huang(), &f1.q);
    report.push(Check::flag("first Huang data admissible", first));
    result["admissible"] = json!(first);
    if let Some(path) = h2 {
        let f2: HuangFile = match read_json(path) {
            Ok(f) => f,
            Err(e) => return Outcome::parse(e),
        };
        let second = check_huang_admissible(&f2.huang(), &f2.q);
        report.push(Check::flag("second Huang data admissible", second));
        result["admissible2"] = json!(second);
        result["equivalent"] = json!(f1.q == f2.q && huang_equivalent(&f1.huang(), &f2.huang()));
    }
    Outcome::ok(report, result)
}

/// Runs every module-level check on one instance, prefixing check names
/// with `label`. Returns whether the instance was feasible.
fn suite_instance(label: &str, xtype: XType, n: usize, k: &[FieldElement; 4], q: &FieldElement, out: &mut Report) -> bool {
    let add = |r: Report, out: &mut Report| {
        for c in r.checks {
            out.push(Check {
                name: format!("{label}: {}", c.name),
                ..c
            });
        }
    };
    let fail = |what: &str, e: DahaError, out: &mut Report| {
        out.push(Check::flag(format!("{label}: {what}: {e}"), false));
    };
    let module = match build_module(xtype, n, k, q) {
        Ok(m) => m,
        Err(e) => {
            fail("build", e, out);
            return false;
        }
    };
    add(verify_hq_relations(&module), out);
    add(derived_identity_report(&module), out);
    match u_basis(&module) {
        Ok(ub) => add(ub.report, out),
        Err(e) => fail("u-basis", e, out),
    }
    for which in [Automorphism::Rho, Automorphism::Sigma] {
        match twist(&module, which) {
            Ok((_, r)) => add(r, out),
            Err(e) => fail("twist", e, out),
        }
    }
    let feas = match is_feasible(&module) {
        Ok(f) => f,
        Err(e) => {
            fail("feasibility", e, out);
            return false;
        }
    };
    if !feas.feasible {
        return false;
    }
    let pairs = match restricted_leonard_pairs(&module) {
        Ok(p) => p,
        Err(e) => {
            fail("restricted pairs", e, out);
            return true;
        }
    };
    add(pairs.report, out);
    let (h, h2) = (&pairs.plus.huang, &pairs.minus.huang);
    out.push(Check::flag(
        format!("{label}: restricted pairs linked"),
        !link_check(h, h2, q).is_empty(),
    ));
    if let Err(e) = link_construct(h, h2, q, None) {
        fail("link construction", e, out);
    }
    true
}

fn cmd_suite(seed: u64, max_n: usize, count: usize) -> Outcome {
    let instances = sample_valid_params(seed, count, max_n);
    let mut report = Report::default();
    let mut summary = Vec::new();
    for (i, (xtype, p)) in instances.iter().enumerate() {
        let label = format!("#{i} {xtype} n={}", p.n);
        let before = report.len();
        let feasible = suite_instance(&label, *xtype, p.n, &p.k, &p.q, &mut report);
        summary.push(json!({
            "index": i,
            "xtype": xtype,
            "n": p.n,
            "q": p.q,
            "k": p.k,
            "feasible": feasible,
            "checks": report.len() - before,
        }));
    }
    Outcome::ok(report, json!({ "seed": seed, "max_n": max_n, "instances": summary }))
}

/// Runs a parsed command.
pub fn execute(cli: &Cli) -> Outcome {
    let sign = cli.global.sign.map(RootSign::from);
    match &cli.command {
        Command::Construct { descriptor } => cmd_construct(descriptor),
        Command::Verify { module } => cmd_verify(module),
        Command::Extract { module } => cmd_extract(module),
        Command::Link { h, h2, construct } => cmd_link(h, h2, *construct, sign),
        Command::CheckHuang { h, h2 } => cmd_check_huang(h, h2.as_deref()),
        Command::Suite { count } => cmd_suite(cli.global.seed, cli.global.max_n, *count),
    }
}

/// Parses `args` (including the program name), runs the command, writes
/// the report and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_PARSE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let start = Instant::now();
    let outcome = execute(&cli);
    let report = RunReport {
        command: args.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect(),
        exit_code: outcome.exit_code,
        error: outcome.error.clone(),
        failures: outcome.report.failures().count(),
        checks: outcome.report.checks,
        result: outcome.result,
        wall_time_ms: start.elapsed().as_millis(),
    };
    let text = serde_json::to_string_pretty(&report).expect("report serializes");
    if let Some(e) = &report.error {
        eprintln!("error: {e}");
    }
    match &cli.global.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, text + "\n") {
                eprintln!("error: {}: {e}", path.display());
                return EXIT_VALIDATION;
            }
        }
        None => {
            use std::io::Write;
            // A closed pipe (for example `| head`) is not an error of the command.
            let _ = writeln!(std::io::stdout().lock(), "{text}");
        }
    }
    report.exit_code
}

/// Entry point for the binary.
pub fn main() -> ! {
    std::process::exit(run(std::env::args_os()))
}
