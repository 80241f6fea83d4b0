//! The `tiltmut` command line. [`run`] is the whole program; `main` only
//! wires it to the process.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;
use tiltmut::algebra::{compile, parse, BasedAlgebra};
use tiltmut::cluster::{asymmetry_sign_test, good_graph, good_mutation};
use tiltmut::homology::{analyze, cartan, extended_quiver};
use tiltmut::matops::{fz_mutate, mutation_class, parse_matrix, IntMatrix, Quiver, Sign};
use tiltmut::mutation::{bb_module, module_endomorphism_algebra, mutation_report, tilting_status};
use tiltmut::{Caps, Error};

mod corpus;

pub const EXIT_OK: i32 = 0;
/// The computation succeeded and the verdict is negative.
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_CAP: i32 = 3;
/// An internal consistency check failed. Always a bug.
pub const EXIT_INTERNAL: i32 = 4;

#[derive(Parser, Debug)]
#[command(
    name = "tiltmut",
    version,
    about = "Mutations of finite-dimensional algebras at a vertex"
)]
struct Cli {
    /// Report format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[command(flatten)]
    caps: CapArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct CapArgs {
    /// Longest irreducible path before an algebra counts as infinite.
    #[arg(long, default_value_t = 64, global = true)]
    len_cap: usize,
    /// Maximum number of rewriting rules or basis words.
    #[arg(long, default_value_t = 20000, global = true)]
    size_cap: usize,
    /// Maximum length of a projective resolution.
    #[arg(long, default_value_t = 32, global = true)]
    resolution_cap: usize,
    /// Maximum size of an enumerated mutation class.
    #[arg(long, default_value_t = 10000, global = true)]
    class_cap: usize,
}

impl CapArgs {
    fn caps(&self) -> Caps {
        Caps {
            len_cap: self.len_cap,
            size_cap: self.size_cap,
            resolution_cap: self.resolution_cap,
            class_cap: self.class_cap,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SignArg {
    Minus,
    Plus,
}

impl From<SignArg> for Sign {
    fn from(s: SignArg) -> Sign {
        match s {
            SignArg::Minus => Sign::Minus,
            SignArg::Plus => Sign::Plus,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Dimensions, Cartan, Euler and asymmetry matrices, global dimension,
    /// extended quiver.
    Analyze { alg: PathBuf },
    /// Tilting check at a vertex and, when defined, the mutated algebra.
    Mutate {
        alg: PathBuf,
        #[arg(short = 'k', long = "vertex")]
        k: usize,
        #[arg(long, value_enum)]
        sign: SignArg,
    },
    /// The BB-tilting module at a vertex and its endomorphism algebra.
    Bb {
        alg: PathBuf,
        #[arg(short = 'k', long = "vertex")]
        k: usize,
    },
    /// Whether the passage from the first algebra to the second at `k` is a
    /// good mutation.
    Good {
        a: PathBuf,
        b: PathBuf,
        #[arg(short = 'k', long = "vertex")]
        k: usize,
    },
    /// The sign test on two Cartan matrices.
    GoodNumeric {
        a: PathBuf,
        b: PathBuf,
        #[arg(short = 'k', long = "vertex")]
        k: usize,
        /// Assert that neither quiver has a loop at `k`. A bare matrix
        /// cannot show this, and the test is meaningless otherwise.
        #[arg(long)]
        assert_no_loops: bool,
    },
    /// Exchange-matrix mutation of a skew-symmetric matrix.
    Fz {
        mat: PathBuf,
        #[arg(short = 'k', long = "vertex")]
        k: usize,
    },
    /// Extended quiver of an algebra of global dimension at most 2.
    ExtQuiver { alg: PathBuf },
    /// Mutation class of the quiver of an algebra or quiver file.
    Class {
        input: PathBuf,
        /// Overrides --class-cap.
        #[arg(long)]
        max: Option<usize>,
    },
    /// Good-mutation graph of a type-A quiver.
    GoodGraph {
        quiver: PathBuf,
        /// Overrides --class-cap.
        #[arg(long)]
        max: Option<usize>,
        /// Print the graph in DOT instead of a table.
        #[arg(long)]
        dot: bool,
    },
    /// Runs the built-in regression examples and prints a pass/fail table.
    Corpus,
}

/// What a subcommand produced: the rendered report and its exit code.
struct Outcome {
    text: String,
    code: i32,
}

impl Outcome {
    fn new(text: String, code: i32) -> Self {
        Outcome { text, code }
    }
}

enum Failure {
    Lib(Error),
    Input(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

type CmdResult = Result<Outcome, Failure>;

fn exit_code(e: &Error) -> i32 {
    match e {
        e if e.is_cap() => EXIT_CAP,
        Error::NotDefined { .. } => EXIT_NEGATIVE,
        Error::Postcondition(_) => EXIT_INTERNAL,
        _ => EXIT_INPUT,
    }
}

/// Parses `argv` (program name first), runs the subcommand and writes the
/// report to `out` and diagnostics to `err`. Returns the exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    configure_threads();
    match dispatch(&cli) {
        Ok(o) => {
            let _ = write!(out, "{}", o.text);
            if !o.text.ends_with('\n') {
                let _ = writeln!(out);
            }
            o.code
        }
        Err(Failure::Input(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_INPUT
        }
        Err(Failure::Lib(e)) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

/// `TILTMUT_THREADS` bounds the worker pool; the pool can only be set once
/// per process, so later calls are no-ops.
fn configure_threads() {
    if let Some(n) = std::env::var("TILTMUT_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
    {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load_algebra(path: &Path, caps: &Caps) -> Result<BasedAlgebra, Failure> {
    let text = read(path)?;
    let mut p = parse(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    if p.name.is_empty() {
        p.name = path
            .file_stem()
            .map_or_else(String::new, |s| s.to_string_lossy().into_owned());
    }
    Ok(compile(&p, caps)?)
}

fn load_quiver(path: &Path) -> Result<Quiver, Failure> {
    let text = read(path)?;
    parse(&text)
        .map(|p| p.quiver)
        .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load_matrix(path: &Path) -> Result<IntMatrix, Failure> {
    let text = read(path)?;
    let m = parse_matrix(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    m.to_int()
        .ok_or_else(|| Failure::Input(format!("{}: entries must be integers", path.display())))
}

fn render<T: Serialize>(format: Format, value: &T, text: impl FnOnce(&T) -> String) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(value).expect("reports serialize"),
        Format::Text => text(value),
    }
}

fn code_if(ok: bool) -> i32 {
    if ok {
        EXIT_OK
    } else {
        EXIT_NEGATIVE
    }
}

fn dispatch(cli: &Cli) -> CmdResult {
    let caps = cli.caps.caps();
    let format = cli.format;
    match &cli.command {
        Command::Analyze { alg } => {
            let b = load_algebra(alg, &caps)?;
            let report = analyze(&b, &caps);
            Ok(Outcome::new(render(format, &report, |r| r.format_text()), EXIT_OK))
        }
        Command::Mutate { alg, k, sign } => {
            let b = load_algebra(alg, &caps)?;
            let (mutated, report) = mutation_report(&b, *k, (*sign).into(), &caps)?;
            let mut text = render(format, &report, |r| r.format_text());
            if let (Some(m), Format::Text) = (&mutated, format) {
                text += &format!("mutated algebra:\n{}", m.format_text());
            }
            Ok(Outcome::new(text, code_if(mutated.is_some())))
        }
        Command::Bb { alg, k } => bb(&load_algebra(alg, &caps)?, *k, &caps, format),
        Command::Good { a, b, k } => {
            let (la, lb) = (load_algebra(a, &caps)?, load_algebra(b, &caps)?);
            let v = good_mutation(&la, &lb, *k)?;
            let text = render(format, &v, |v| {
                let mut s = format!(
                    "vertex {}: {}\nBB tilting of the first algebra: {}\nBB tilting of the opposite of the second: {}\n",
                    v.vertex,
                    if v.good { "good" } else { "not good" },
                    defined(v.bb_on_left),
                    defined(v.bb_on_right_op)
                );
                if let Some(c) = &v.corroboration {
                    s += &format!(
                        "corroboration: Cartan {}, quiver {}\n",
                        matches(c.cartan_matches),
                        matches(c.quiver_matches)
                    );
                }
                s
            });
            Ok(Outcome::new(text, code_if(v.good)))
        }
        Command::GoodNumeric {
            a,
            b,
            k,
            assert_no_loops,
        } => {
            if !assert_no_loops {
                return Err(Failure::Input(
                    "the sign test needs quivers without loops at the vertex; \
                     pass --assert-no-loops to assert this for bare Cartan matrices"
                        .into(),
                ));
            }
            let (ca, cb) = (load_matrix(a)?, load_matrix(b)?);
            let t = asymmetry_sign_test(&ca, &cb, *k)?;
            let text = render(format, &t, |t| {
                format!(
                    "vertex {}: {}\ncolumn of S: {}\ncolumn of S'^-1: {}\n",
                    t.left.vertex,
                    if t.good { "good" } else { "not good" },
                    join_rats(&t.left.column),
                    join_rats(&t.right.column)
                )
            });
            Ok(Outcome::new(text, code_if(t.good)))
        }
        Command::Fz { mat, k } => {
            let b = load_matrix(mat)?;
            let m = fz_mutate(&b, *k)?;
            Ok(Outcome::new(render(format, &m, |m| m.to_string()), EXIT_OK))
        }
        Command::ExtQuiver { alg } => {
            let b = load_algebra(alg, &caps)?;
            let q = extended_quiver(&b, caps.resolution_cap)?;
            Ok(Outcome::new(render(format, &q, |q| q.format_text()), EXIT_OK))
        }
        Command::Class { input, max } => {
            let q = load_quiver(input)?;
            let cap = max.unwrap_or(caps.class_cap);
            let class = mutation_class(&q, cap)?;
            let members: Vec<_> = class
                .members
                .iter()
                .map(|(key, q)| json!({"key": key.to_compact(), "quiver": q}))
                .collect();
            let value = json!({"complete": class.complete, "size": class.len(), "members": members});
            let text = render(format, &value, |_| {
                let mut s = format!(
                    "{} quivers{}\n",
                    class.len(),
                    if class.complete {
                        ""
                    } else {
                        " (incomplete: cap reached)"
                    }
                );
                for (key, q) in &class.members {
                    s += &format!("{}  {q}\n", key.to_compact());
                }
                s
            });
            Ok(Outcome::new(text, if class.complete { EXIT_OK } else { EXIT_CAP }))
        }
        Command::GoodGraph { quiver, max, dot } => {
            let q = load_quiver(quiver)?;
            let caps = Caps {
                class_cap: max.unwrap_or(caps.class_cap),
                ..caps
            };
            let g = good_graph(&q, &caps)?;
            let text = if *dot {
                g.to_dot()
            } else {
                render(format, &g, |g| {
                    let mut s = format!("{} algebras, {} mutations\n", g.nodes.len(), g.edges.len());
                    for n in &g.nodes {
                        s += &format!("node {} {} dim {} relations {}\n", n.id, n.quiver, n.dim, n.relations);
                    }
                    for e in &g.edges {
                        s += &format!(
                            "edge {} -> {} at {}: {}{}\n",
                            e.from,
                            e.to,
                            e.vertex,
                            if e.good { "good" } else { "not good" },
                            match e.corroborated {
                                Some(false) => " (corroboration FAILED)",
                                _ => "",
                            }
                        );
                    }
                    s
                })
            };
            let ok = g.corroborated() && g.criteria_agree();
            Ok(Outcome::new(text, if ok { EXIT_OK } else { EXIT_INTERNAL }))
        }
        Command::Corpus => {
            let rows = corpus::run(&caps);
            let ok = rows.iter().all(|r| r.pass);
            let text = render(format, &rows, |rows| corpus::format_table(rows));
            Ok(Outcome::new(text, code_if(ok)))
        }
    }
}

fn bb(b: &BasedAlgebra, k: usize, caps: &Caps, format: Format) -> CmdResult {
    let t = match bb_module(b, k, caps) {
        Ok(t) => t,
        Err(Error::NotDefined { .. }) => {
            let status = tilting_status(b, k, Sign::Minus)?;
            let value = json!({"vertex": k, "defined": false, "kernel_dims": status.kernel_dims});
            let text = render(format, &value, |_| {
                format!(
                    "vertex {k}: BB tilting not defined (kernel dimension vector {:?})\n",
                    status.kernel_dims
                )
            });
            return Ok(Outcome::new(text, EXIT_NEGATIVE));
        }
        Err(e) => return Err(e.into()),
    };
    let end = module_endomorphism_algebra(&format!("{}_bb{k}", b.name()), b, &t.summands)?;
    let dims: Vec<Vec<i64>> = t.summands.iter().map(|m| m.dim_vector()).collect();
    let value = json!({
        "vertex": k,
        "defined": true,
        "summand_dims": dims,
        "validation": t.validation,
        "endomorphism_cartan": cartan(&end),
        "endomorphism_quiver": end.arrow_basis().quiver,
    });
    let ok = t.validation.ok();
    let text = render(format, &value, |_| {
        let mut s = format!("vertex {k}: BB tilting module defined\n");
        for (i, d) in dims.iter().enumerate() {
            s += &format!("T_{} dimension vector {:?}\n", i + 1, d);
        }
        s += &format!("validation: {}\n", if ok { "ok" } else { "FAILED" });
        s += &format!("endomorphism algebra:\n{}", end.format_text());
        s
    });
    Ok(Outcome::new(text, if ok { EXIT_OK } else { EXIT_INTERNAL }))
}

fn defined(b: bool) -> &'static str {
    if b {
        "defined"
    } else {
        "not defined"
    }
}

fn matches(b: bool) -> &'static str {
    if b {
        "matches"
    } else {
        "differs"
    }
}

fn join_rats(v: &[tiltmut::rational::Rat]) -> String {
    v.iter()
        .map(tiltmut::rational::format_rat)
        .collect::<Vec<_>>()
        .join(" ")
}
