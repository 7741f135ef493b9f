//! Command-line front end for braid-simplex.

use std::fmt::Display;
use std::fs;
use std::io::Write;
use std::panic::{self, AssertUnwindSafe};
use std::path::PathBuf;

use braid_simplex_core::exactalg::{parse_rational, EdgeMatrix, Field, JsonScalar, Rational};
use braid_simplex_core::export::orbit;
use braid_simplex_core::garside::{max_q_degree, normal_form, qdegree_experiment, DualPositiveWord};
use braid_simplex_core::noncrossing::{enumerate_nc, five_permutations, NcPartition, Permutation, Side};
use braid_simplex_core::rep::{
    act_on_norms, evaluate_word, evaluate_word_at, verify_relations, verify_theorem_a, verify_theorem_b,
    BraidWord, RepMode, Report,
};
use braid_simplex_core::rescale::{rescaling_matrix, RescalingSpec};
use braid_simplex_core::simplex::{is_nondegenerate, EdgeNormVector};
use braid_simplex_core::Error;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

pub const EXIT_OK: i32 = 0;
pub const EXIT_COUNTEREXAMPLE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "braid-simplex", version, about = "Braid group actions on labeled euclidean simplices")]
pub struct Cli {
    /// Machine-readable output
    #[arg(long, global = true)]
    json: bool,
    /// Seed for every randomized run
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Scalar domain
    #[arg(long, global = true, value_enum)]
    mode: Option<Mode>,
    /// Value substituted for q (rational, e.g. 3/2)
    #[arg(long, global = true)]
    q: Option<String>,
    /// Value substituted for t
    #[arg(long, global = true)]
    t: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Mode {
    Symbolic,
    Rational,
    Float,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Rep {
    Lkb,
    Simplicial,
    Perm,
}

impl From<Rep> for RepMode {
    fn from(r: Rep) -> Self {
        match r {
            Rep::Lkb => RepMode::Lkb,
            Rep::Simplicial => RepMode::Simplicial,
            Rep::Perm => RepMode::Permutation,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SideArg {
    Left,
    Right,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Off,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Noncrossing partitions
    #[command(subcommand)]
    Nc(NcCommand),
    /// Representation matrices and actions
    #[command(subcommand)]
    Rep(RepCommand),
    /// Edge rescaling matrices
    #[command(subcommand)]
    Rescale(RescaleCommand),
    /// Verification suites
    #[command(subcommand)]
    Verify(VerifyCommand),
    /// Normal forms of dual-positive words
    #[command(subcommand)]
    Garside(GarsideCommand),
    /// Mesh export
    #[command(subcommand)]
    Export(ExportCommand),
}

#[derive(Subcommand, Debug)]
enum NcCommand {
    /// All noncrossing partitions of [n]
    List {
        #[arg(long)]
        n: usize,
    },
    /// Left or right complement of a noncrossing permutation
    Complement {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        perm: String,
        #[arg(long, value_enum)]
        side: SideArg,
    },
    /// Complementary permutations of a reduced product s1 s2
    Five {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        s1: String,
        #[arg(long)]
        s2: String,
    },
}

#[derive(Args, Debug)]
struct WordArgs {
    #[arg(long)]
    n: usize,
    /// Word such as "s12 s23' d{1,3,4}"
    #[arg(long)]
    word: String,
}

#[derive(Subcommand, Debug)]
enum RepCommand {
    /// Matrix of a word
    Matrix {
        #[command(flatten)]
        word: WordArgs,
        #[arg(long, value_enum, default_value = "simplicial")]
        rep: Rep,
    },
    /// Image of an edge norm vector under a word
    Act {
        #[command(flatten)]
        word: WordArgs,
        /// JSON file: {"n": N, "a": [...]} or a bare array
        #[arg(long)]
        norms: PathBuf,
        #[arg(long, value_enum, default_value = "simplicial")]
        rep: Rep,
    },
}

#[derive(Subcommand, Debug)]
enum RescaleCommand {
    /// Matrix of the rescaling with the given scaled and fixed blocks
    Matrix {
        #[arg(long)]
        n: usize,
        /// Partition such as "{1,2}" (singletons implied)
        #[arg(long)]
        scaled: String,
        #[arg(long)]
        fixed: String,
    },
}

#[derive(Subcommand, Debug)]
enum VerifyCommand {
    /// Braid relations and the dual multiplication rule
    Relations {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "simplicial")]
        rep: Rep,
    },
    /// Positivity and nondegeneracy of images of random simplices
    TheoremA {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 15)]
        len: usize,
    },
    /// Relabel-and-rescale factorization of every dual simple
    TheoremB {
        #[arg(long)]
        n: usize,
    },
}

#[derive(Subcommand, Debug)]
enum GarsideCommand {
    /// Greedy normal form of a positive word
    Nf {
        #[command(flatten)]
        word: WordArgs,
    },
    /// Top q power against twice the dual length on random words
    Qdeg {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 6)]
        max_factors: usize,
    },
}

#[derive(Subcommand, Debug)]
enum ExportCommand {
    /// Regular simplex pushed through a word repeatedly
    Orbit {
        #[command(flatten)]
        word: WordArgs,
        #[arg(long, default_value_t = 1)]
        steps: usize,
        #[arg(long, value_enum, default_value = "off")]
        format: Format,
        /// Directory for one file per stage; stdout when absent
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

enum Failure {
    Usage(String),
    Core(Error),
    Io(std::io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e)
    }
}

type Outcome = std::result::Result<i32, Failure>;

/// Broken internal invariants map to 3, anything else the input caused to 2.
pub fn exit_code_for(e: &Error) -> i32 {
    if e.is_internal() {
        EXIT_INTERNAL
    } else {
        EXIT_USAGE
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    let result = panic::catch_unwind(AssertUnwindSafe(|| execute(&cli, out)));
    match result {
        Ok(Ok(code)) => code,
        Ok(Err(Failure::Usage(msg))) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Ok(Err(Failure::Core(e))) => {
            let _ = writeln!(err, "error: {e}");
            exit_code_for(&e)
        }
        Ok(Err(Failure::Io(e))) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| payload.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "internal assertion failed".into());
            let _ = writeln!(err, "internal error: {msg}");
            EXIT_INTERNAL
        }
    }
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Outcome {
    match &cli.command {
        Command::Nc(cmd) => nc(cli, cmd, out),
        Command::Rep(cmd) => rep(cli, cmd, out),
        Command::Rescale(RescaleCommand::Matrix { n, scaled, fixed }) => {
            let spec = RescalingSpec::new(NcPartition::parse(scaled, *n)?, NcPartition::parse(fixed, *n)?)?;
            emit_matrix(cli, &rescaling_matrix(&spec)?, out)
        }
        Command::Verify(cmd) => verify(cli, cmd, out),
        Command::Garside(cmd) => garside(cli, cmd, out),
        Command::Export(ExportCommand::Orbit { word, steps, format, out: dir }) => {
            export(cli, word, *steps, *format, dir.as_ref(), out)
        }
    }
}

fn print_json(out: &mut dyn Write, value: &Value) -> Outcome {
    writeln!(out, "{}", serde_json::to_string_pretty(value).expect("json values serialize"))?;
    Ok(EXIT_OK)
}

fn nc(cli: &Cli, cmd: &NcCommand, out: &mut dyn Write) -> Outcome {
    match cmd {
        NcCommand::List { n } => {
            let all = enumerate_nc(*n)?;
            if cli.json {
                return print_json(out, &json!({ "n": n, "count": all.len(), "partitions": all }));
            }
            for p in &all {
                writeln!(out, "{p}\t{}", p.to_permutation())?;
            }
            writeln!(out, "{} partitions", all.len())?;
        }
        NcCommand::Complement { n, perm, side } => {
            let sigma = NcPartition::from_permutation(&Permutation::parse(perm, *n)?)?;
            let side = match side {
                SideArg::Left => Side::Left,
                SideArg::Right => Side::Right,
            };
            let c = sigma.complement(side)?;
            if cli.json {
                return print_json(
                    out,
                    &json!({
                        "input": sigma, "side": side.to_string(),
                        "complement": c, "permutation": c.to_permutation().to_string(),
                    }),
                );
            }
            writeln!(out, "{}\t{}", c.to_permutation(), c)?;
        }
        NcCommand::Five { n, s1, s2 } => {
            let s1 = NcPartition::from_permutation(&Permutation::parse(s1, *n)?)?;
            let s2 = NcPartition::from_permutation(&Permutation::parse(s2, *n)?)?;
            let five = five_permutations(&s1, &s2)?;
            let named = [("s1", &s1), ("s2", &s2), ("s3", &five.s3), ("s4", &five.s4), ("s5", &five.s5)];
            if cli.json {
                let map: serde_json::Map<String, Value> = named
                    .iter()
                    .map(|(k, p)| (k.to_string(), Value::String(p.to_permutation().to_string())))
                    .collect();
                return print_json(out, &Value::Object(map));
            }
            for (k, p) in named {
                writeln!(out, "{k} = {}", p.to_permutation())?;
            }
        }
    }
    Ok(EXIT_OK)
}

/// Domain for a command whose natural default is `default`.
fn mode_or(cli: &Cli, default: Mode) -> Mode {
    match cli.mode {
        Some(m) => m,
        None if default == Mode::Symbolic && (cli.q.is_some() || cli.t.is_some()) => Mode::Rational,
        None => default,
    }
}

fn required_q(cli: &Cli) -> std::result::Result<Rational, Failure> {
    let q = cli.q.as_deref().ok_or_else(|| Failure::Usage("--q is required here".into()))?;
    let q = parse_rational(q)?;
    if q == Rational::from_integer(0.into()) {
        return Err(Failure::Usage("--q must be nonzero".into()));
    }
    Ok(q)
}

fn t_value(cli: &Cli, rep: RepMode) -> std::result::Result<Rational, Failure> {
    match (&cli.t, rep) {
        (Some(t), _) => Ok(parse_rational(t)?),
        (None, RepMode::Lkb) => Err(Failure::Usage("--t is required to evaluate LKB matrices".into())),
        (None, _) => Ok(Rational::from_integer(1.into())),
    }
}

fn to_float(r: &Rational) -> f64 {
    Field::to_f64(r)
}

fn emit_matrix<S: braid_simplex_core::exactalg::Scalar + JsonScalar + Display>(cli: &Cli, m: &EdgeMatrix<S>, out: &mut dyn Write) -> Outcome {
    if cli.json {
        return print_json(out, &m.to_json());
    }
    for r in 0..m.dim() {
        let row: Vec<String> = m.row(r).iter().map(ToString::to_string).collect();
        writeln!(out, "[{}]", row.join(", "))?;
    }
    Ok(EXIT_OK)
}

fn read_norms<F: Field + JsonScalar>(path: &PathBuf, n: usize) -> std::result::Result<EdgeNormVector<F>, Failure> {
    let text = fs::read_to_string(path)?;
    let value: Value = serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    let value = if value.is_array() { json!({ "n": n, "a": value }) } else { value };
    let v = EdgeNormVector::<F>::from_json(&value)?;
    if v.n() != n {
        return Err(Failure::Usage(format!("norms are for n = {}, word is in B_{n}", v.n())));
    }
    Ok(v)
}

fn act<F: Field + JsonScalar + Display>(
    cli: &Cli,
    m: &EdgeMatrix<F>,
    v: &EdgeNormVector<F>,
    out: &mut dyn Write,
) -> Outcome {
    let image = act_on_norms(m, v)?;
    let valid = is_nondegenerate(&image).unwrap_or(false);
    if cli.json {
        return print_json(out, &json!({ "input": v.to_json(), "image": image.to_json(), "nondegenerate": valid }));
    }
    let entries: Vec<String> = image.entries().iter().map(ToString::to_string).collect();
    writeln!(out, "({})", entries.join(", "))?;
    writeln!(out, "nondegenerate: {valid}")?;
    Ok(EXIT_OK)
}

fn rep(cli: &Cli, cmd: &RepCommand, out: &mut dyn Write) -> Outcome {
    match cmd {
        RepCommand::Matrix { word, rep } => {
            let mode: RepMode = (*rep).into();
            let w = BraidWord::parse(&word.word, word.n)?;
            match mode_or(cli, Mode::Symbolic) {
                Mode::Symbolic => emit_matrix(cli, &evaluate_word(&w, mode)?, out),
                Mode::Rational => {
                    let m = evaluate_word_at(&w, mode, &required_q(cli)?, &t_value(cli, mode)?)?;
                    emit_matrix(cli, &m, out)
                }
                Mode::Float => {
                    let (q, t) = (to_float(&required_q(cli)?), to_float(&t_value(cli, mode)?));
                    emit_matrix(cli, &evaluate_word_at(&w, mode, &q, &t)?, out)
                }
            }
        }
        RepCommand::Act { word, norms, rep } => {
            let mode: RepMode = (*rep).into();
            let w = BraidWord::parse(&word.word, word.n)?;
            let (q, t) = (required_q(cli)?, t_value(cli, mode)?);
            match mode_or(cli, Mode::Rational) {
                Mode::Float => {
                    let m = evaluate_word_at(&w, mode, &to_float(&q), &to_float(&t))?;
                    act(cli, &m, &read_norms::<f64>(norms, word.n)?, out)
                }
                _ => {
                    let m = evaluate_word_at(&w, mode, &q, &t)?;
                    act(cli, &m, &read_norms::<Rational>(norms, word.n)?, out)
                }
            }
        }
    }
}

fn report_outcome(cli: &Cli, reports: &[Report], out: &mut dyn Write) -> Outcome {
    let ok = reports.iter().all(Report::all_passed);
    if cli.json {
        print_json(out, &serde_json::to_value(reports).expect("reports serialize"))?;
    } else {
        for r in reports {
            for c in r.failures() {
                writeln!(out, "FAIL {}{}", c.name, c.detail.as_ref().map(|d| format!(": {d}")).unwrap_or_default())?;
            }
            writeln!(out, "{}", r.summary())?;
        }
    }
    Ok(if ok { EXIT_OK } else { EXIT_COUNTEREXAMPLE })
}

fn verify(cli: &Cli, cmd: &VerifyCommand, out: &mut dyn Write) -> Outcome {
    match cmd {
        VerifyCommand::Relations { n, rep } => report_outcome(cli, &[verify_relations(*n, (*rep).into())?], out),
        VerifyCommand::TheoremB { n } => report_outcome(cli, &[verify_theorem_b(*n)?], out),
        VerifyCommand::TheoremA { n, trials, len } => {
            let qs = match &cli.q {
                Some(q) => vec![parse_rational(q)?],
                None => ["1/3", "1/2", "2", "3"].iter().map(|s| parse_rational(s)).collect::<Result<_, _>>()?,
            };
            if qs.iter().any(|q| !q.is_positive()) {
                return Err(Failure::Usage("q must be positive".into()));
            }
            let report = verify_theorem_a(*n, &qs, *len, *trials, cli.seed)?;
            if cli.json {
                print_json(out, &serde_json::to_value(&report).expect("report serializes"))?;
            } else {
                for v in &report.violations {
                    writeln!(out, "VIOLATION trial {} q={} word {}: {}", v.trial, v.q, v.word, v.reason)?;
                }
                writeln!(out, "{}", report.summary())?;
            }
            Ok(if report.all_passed() { EXIT_OK } else { EXIT_COUNTEREXAMPLE })
        }
    }
}

fn garside(cli: &Cli, cmd: &GarsideCommand, out: &mut dyn Write) -> Outcome {
    match cmd {
        GarsideCommand::Nf { word } => {
            let w = DualPositiveWord::parse(&word.word, word.n)?;
            let nf = normal_form(&w)?;
            let degree = max_q_degree(&w.matrix()?);
            if cli.json {
                let factors: Vec<String> = nf.factors().iter().map(ToString::to_string).collect();
                return print_json(
                    out,
                    &json!({
                        "word": w.to_string(), "normal_form": factors,
                        "dual_length": nf.len(), "max_q_degree": degree,
                    }),
                );
            }
            writeln!(out, "{nf}")?;
            writeln!(out, "dual length {}, max q-degree {degree}", nf.len())?;
        }
        GarsideCommand::Qdeg { n, trials, max_factors } => {
            // mismatches are findings of the experiment, not failures
            let report = qdegree_experiment(*n, *trials, *max_factors, cli.seed)?;
            if cli.json {
                return print_json(out, &serde_json::to_value(&report).expect("report serializes"));
            }
            for w in &report.mismatches {
                writeln!(
                    out,
                    "MISMATCH trial {}: {} -> {} (length {}, degree {})",
                    w.trial, w.word, w.normal_form, w.dual_length, w.max_q_degree
                )?;
            }
            writeln!(out, "{}", report.summary())?;
        }
    }
    Ok(EXIT_OK)
}

fn export(
    cli: &Cli,
    word: &WordArgs,
    steps: usize,
    format: Format,
    dir: Option<&PathBuf>,
    out: &mut dyn Write,
) -> Outcome {
    if !(3..=4).contains(&word.n) {
        return Err(Failure::Usage("export needs --n 3 or --n 4".into()));
    }
    let w = BraidWord::parse(&word.word, word.n)?;
    let q = required_q(cli)?;
    if !q.is_positive() {
        return Err(Failure::Usage("--q must be positive".into()));
    }
    let stages: Vec<(Value, String)> = match mode_or(cli, Mode::Rational) {
        Mode::Float => orbit(&w, &to_float(&q), steps)?.iter().map(|s| (s.to_json(), s.mesh.to_off())).collect(),
        _ => orbit::<Rational>(&w, &q, steps)?.iter().map(|s| (s.to_json(), s.mesh.to_off())).collect(),
    };
    match dir {
        Some(dir) => {
            fs::create_dir_all(dir)?;
            for (k, (value, off)) in stages.iter().enumerate() {
                let (name, body) = match format {
                    Format::Off => (format!("stage_{k:03}.off"), off.clone()),
                    Format::Json => (format!("stage_{k:03}.json"), serde_json::to_string_pretty(value).expect("json") + "\n"),
                };
                let path = dir.join(name);
                fs::write(&path, body)?;
                writeln!(out, "{}", path.display())?;
            }
        }
        None => match format {
            Format::Off => {
                for (_, off) in &stages {
                    out.write_all(off.as_bytes())?;
                }
            }
            Format::Json => {
                let values: Vec<Value> = stages.into_iter().map(|(v, _)| v).collect();
                print_json(out, &Value::Array(values))?;
            }
        },
    }
    Ok(EXIT_OK)
}
