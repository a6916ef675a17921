mod suites;

use std::fmt;
use std::path::Path;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use maltlab_core::{
    all_congruences, catalog, check_sequence, check_tm, enumerate_tolerances, free_algebra, level,
    load_algebra, star_transform, Budget, CloneLimits, Error as CoreError, FiniteAlgebra,
    LevelOutcome, SequenceKind, TermOperation, ValidityReport,
};
use serde::Serialize;

use suites::{run_suite, Suite, SuiteParams, SuiteStatus};

const EXIT_PASS: u8 = 0;
const EXIT_FAIL: u8 = 1;
const EXIT_ERROR: u8 = 2;
const EXIT_INCONCLUSIVE: u8 = 3;

/// Workbench for finite algebras: Maltsev-condition levels, congruence
/// lattices, term-sequence transformations and identity verification.
#[derive(Parser)]
#[command(name = "maltlab", version, about)]
struct Cli {
    /// Worker threads for the engines (0 = one per core); results do not
    /// depend on this.
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Jonsson,
    Alvin,
    Gumm,
    Day,
}

impl From<KindArg> for SequenceKind {
    fn from(value: KindArg) -> Self {
        match value {
            KindArg::Jonsson => SequenceKind::Jonsson,
            KindArg::Alvin => SequenceKind::Alvin,
            KindArg::Gumm => SequenceKind::Gumm,
            KindArg::Day => SequenceKind::Day,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Validate an algebra file and show its signature.
    Info {
        algebra: String,
        #[arg(long)]
        json: bool,
    },
    /// Compute the congruence lattice and check the lattice laws.
    Conlat {
        algebra: String,
        #[arg(long)]
        json: bool,
    },
    /// Compute the minimal sequence length of the given kind.
    Level {
        algebra: String,
        #[arg(long, value_enum)]
        kind: KindArg,
        /// Give up when no sequence of length ≤ this exists.
        #[arg(long, default_value_t = maltlab_core::DEFAULT_LEVEL_CAP)]
        cap_n: usize,
        /// Cap on generated clone members.
        #[arg(long, default_value_t = maltlab_core::DEFAULT_CLONE_CAP)]
        cap_clone: usize,
        /// Allow the Day-level search on algebras with more than two
        /// elements (the quaternary state space grows quickly).
        #[arg(long)]
        force_day: bool,
        #[arg(long)]
        json: bool,
    },
    /// Emit the free algebra on k generators in the standard JSON format.
    Free {
        algebra: String,
        #[arg(long)]
        arity: usize,
        #[arg(long, default_value_t = maltlab_core::DEFAULT_CLONE_CAP)]
        cap_clone: usize,
    },
    /// Star-transform a term sequence and re-validate it.
    Star {
        algebra: String,
        /// JSON file holding the sequence as an array of row-major tables.
        sequence: String,
        #[arg(long, value_enum, default_value = "gumm")]
        kind: KindArg,
        /// How many times to apply the star construction.
        #[arg(long, default_value_t = 1)]
        times: usize,
        /// Also check (T_m) for this m against every tolerance.
        #[arg(long)]
        check_tm: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Run a verification suite; exit 0 iff every assertion holds.
    Verify {
        algebra: String,
        #[arg(long, value_enum)]
        suite: Suite,
        /// Restrict corollary6 to one clause (1-4).
        #[arg(long)]
        clause: Option<u8>,
        /// Chain length parameter ℓ where applicable.
        #[arg(long)]
        ell: Option<usize>,
        #[arg(long, default_value_t = maltlab_core::DEFAULT_LEVEL_CAP)]
        cap_n: usize,
        #[arg(long)]
        force_day: bool,
        #[arg(long)]
        json: bool,
    },
}

enum CliError {
    Core(CoreError),
    Io(String, std::io::Error),
    Usage(String),
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        CliError::Core(e)
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Io(path, e) => write!(f, "{path}: {e}"),
            CliError::Usage(msg) => write!(f, "{msg}"),
        }
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(CoreError::BudgetExceeded { .. })
            | CliError::Core(CoreError::PartialClone { .. }) => EXIT_INCONCLUSIVE,
            _ => EXIT_ERROR,
        }
    }
}

fn load(path: &str) -> Result<FiniteAlgebra, CliError> {
    if Path::new(path).exists() {
        let text =
            std::fs::read_to_string(path).map_err(|e| CliError::Io(path.to_owned(), e))?;
        return Ok(load_algebra(&text)?);
    }
    let stem = Path::new(path)
        .file_stem()
        .and_then(|s| s.to_str())
        .unwrap_or(path);
    catalog::by_name(path)
        .or_else(|| catalog::by_name(stem))
        .ok_or_else(|| {
            CliError::Usage(format!(
                "{path}: no such file, and no bundled algebra of that name (bundled: {})",
                catalog::NAMES.join(", ")
            ))
        })
}

fn limits(cap_clone: usize) -> CloneLimits {
    CloneLimits {
        max_members: cap_clone,
        budget: Budget::from_env(),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let threads = cli.threads;
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
        Ok(pool) => pool,
        Err(e) => {
            eprintln!("maltlab: cannot build thread pool: {e}");
            return ExitCode::from(EXIT_ERROR);
        }
    };
    let code = pool.install(|| match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("maltlab: {e}");
            e.exit_code()
        }
    });
    ExitCode::from(code)
}

fn run(command: Command) -> Result<u8, CliError> {
    match command {
        Command::Info { algebra, json } => cmd_info(&load(&algebra)?, json),
        Command::Conlat { algebra, json } => cmd_conlat(&load(&algebra)?, json),
        Command::Level {
            algebra,
            kind,
            cap_n,
            cap_clone,
            force_day,
            json,
        } => {
            let algebra = load(&algebra)?;
            let kind = SequenceKind::from(kind);
            guard_day(&algebra, kind, force_day)?;
            cmd_level(&algebra, kind, cap_n, &limits(cap_clone), json)
        }
        Command::Free {
            algebra,
            arity,
            cap_clone,
        } => cmd_free(&load(&algebra)?, arity, &limits(cap_clone)),
        Command::Star {
            algebra,
            sequence,
            kind,
            times,
            check_tm,
            json,
        } => {
            let algebra = load(&algebra)?;
            let kind = SequenceKind::from(kind);
            if kind == SequenceKind::Day {
                return Err(CliError::Usage(
                    "the star construction is ternary; pick jonsson, alvin or gumm".into(),
                ));
            }
            cmd_star(&algebra, &sequence, kind, times, check_tm, json)
        }
        Command::Verify {
            algebra,
            suite,
            clause,
            ell,
            cap_n,
            force_day,
            json,
        } => {
            let algebra = load(&algebra)?;
            if matches!(suite, Suite::Theorem8 | Suite::Remark7) {
                guard_day(&algebra, SequenceKind::Day, force_day)?;
            }
            let params = SuiteParams {
                clause,
                ell,
                cap_n,
                budget: Budget::from_env(),
            };
            cmd_verify(&algebra, suite, &params, json)
        }
    }
}

fn guard_day(
    algebra: &FiniteAlgebra,
    kind: SequenceKind,
    force_day: bool,
) -> Result<(), CliError> {
    if kind == SequenceKind::Day && algebra.size() > 2 && !force_day {
        return Err(CliError::Usage(format!(
            "day-level search on a {}-element algebra can be expensive; pass --force-day to run it",
            algebra.size()
        )));
    }
    Ok(())
}

#[derive(Serialize)]
struct InfoDoc<'a> {
    name: &'a str,
    size: usize,
    operations: Vec<InfoOp<'a>>,
    valid: bool,
}

#[derive(Serialize)]
struct InfoOp<'a> {
    name: &'a str,
    arity: usize,
}

fn cmd_info(algebra: &FiniteAlgebra, json: bool) -> Result<u8, CliError> {
    if json {
        let doc = InfoDoc {
            name: algebra.name(),
            size: algebra.size(),
            operations: algebra
                .signature()
                .iter()
                .map(|(name, arity)| InfoOp { name, arity })
                .collect(),
            valid: true,
        };
        print_json(&doc);
    } else {
        println!("algebra {}: {} elements", algebra.name(), algebra.size());
        for (name, arity) in algebra.signature().iter() {
            println!("  {name}/{arity}");
        }
        println!("valid");
    }
    Ok(EXIT_PASS)
}

#[derive(Serialize)]
struct ConlatDoc<'a> {
    algebra: &'a str,
    count: usize,
    congruences: Vec<Vec<Vec<usize>>>,
    modular: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    modularity_witness: Option<(usize, usize, usize)>,
    distributive: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    distributivity_witness: Option<(usize, usize, usize)>,
}

fn cmd_conlat(algebra: &FiniteAlgebra, json: bool) -> Result<u8, CliError> {
    let lattice = all_congruences(algebra, &Budget::from_env())?;
    let modularity_witness = lattice.modularity_violation();
    let distributivity_witness = lattice.distributivity_violation();
    if json {
        let doc = ConlatDoc {
            algebra: algebra.name(),
            count: lattice.len(),
            congruences: lattice
                .congruences()
                .iter()
                .map(|c| c.blocks().to_vec())
                .collect(),
            modular: modularity_witness.is_none(),
            modularity_witness,
            distributive: distributivity_witness.is_none(),
            distributivity_witness,
        };
        print_json(&doc);
    } else {
        println!("Con({}): {} congruences", algebra.name(), lattice.len());
        for (i, c) in lattice.congruences().iter().enumerate() {
            println!("  [{i}] {c}");
        }
        match modularity_witness {
            None => println!("modular: yes"),
            Some(w) => println!("modular: no (witness {w:?})"),
        }
        match distributivity_witness {
            None => println!("distributive: yes"),
            Some(w) => println!("distributive: no (witness {w:?})"),
        }
    }
    Ok(EXIT_PASS)
}

#[derive(Serialize)]
struct LevelDoc<'a> {
    algebra: &'a str,
    kind: &'a str,
    level: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    cap: Option<usize>,
    witness: Vec<&'a [usize]>,
    witness_terms: Vec<String>,
}

fn cmd_level(
    algebra: &FiniteAlgebra,
    kind: SequenceKind,
    cap_n: usize,
    limits: &CloneLimits,
    json: bool,
) -> Result<u8, CliError> {
    let report = level(algebra, kind, cap_n, limits)?;
    let (level_value, cap) = match report.outcome {
        LevelOutcome::Level(n) => (Some(n), None),
        LevelOutcome::NoneUpToCap(cap) => (None, Some(cap)),
    };
    if json {
        let doc = LevelDoc {
            algebra: algebra.name(),
            kind: kind.name(),
            level: level_value,
            cap,
            witness: report.witness.iter().map(|w| w.table()).collect(),
            witness_terms: report.witness_terms.iter().map(|t| t.to_string()).collect(),
        };
        print_json(&doc);
    } else {
        match level_value {
            Some(n) => {
                println!("{} level = {n}", kind.name());
                for (i, term) in report.witness_terms.iter().enumerate() {
                    println!("  t_{i} = {term}");
                }
                for (i, op) in report.witness.iter().enumerate() {
                    println!("  table t_{i}: {:?}", op.table());
                }
            }
            None => println!("{} level: none up to {}", kind.name(), cap.unwrap()),
        }
    }
    Ok(if level_value.is_some() {
        EXIT_PASS
    } else {
        EXIT_INCONCLUSIVE
    })
}

fn cmd_free(algebra: &FiniteAlgebra, arity: usize, limits: &CloneLimits) -> Result<u8, CliError> {
    let (free, generators) = free_algebra(algebra, arity, limits)?;
    print!("{}", free.to_json_with_generators(Some(generators)));
    Ok(EXIT_PASS)
}

fn parse_sequence(
    algebra: &FiniteAlgebra,
    text: &str,
    kind: SequenceKind,
) -> Result<Vec<TermOperation>, CliError> {
    let tables: Vec<Vec<usize>> =
        serde_json::from_str(text).map_err(|e| CliError::Core(CoreError::Parse(e)))?;
    let n = algebra.size();
    let arity = kind.arity();
    let expected = n.pow(arity as u32);
    tables
        .into_iter()
        .map(|table| {
            if table.len() != expected {
                return Err(CliError::Usage(format!(
                    "sequence table has length {}, expected {} (= {}^{}) for a {} sequence",
                    table.len(),
                    expected,
                    n,
                    arity,
                    kind.name()
                )));
            }
            Ok(TermOperation::new(n, arity, table)?)
        })
        .collect()
}

#[derive(Serialize)]
struct StarDoc<'a> {
    algebra: &'a str,
    kind: &'a str,
    times: usize,
    sequence: Vec<&'a [usize]>,
    validity: &'a ValidityReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    check_tm: Option<TmDoc>,
}

#[derive(Serialize)]
struct TmDoc {
    m: usize,
    tolerances: usize,
    valid: bool,
}

fn cmd_star(
    algebra: &FiniteAlgebra,
    sequence_path: &str,
    kind: SequenceKind,
    times: usize,
    tm: Option<usize>,
    json: bool,
) -> Result<u8, CliError> {
    let text = std::fs::read_to_string(sequence_path)
        .map_err(|e| CliError::Io(sequence_path.to_owned(), e))?;
    let seq = parse_sequence(algebra, &text, kind)?;
    let input_report = check_sequence(algebra, &seq, kind)?;
    if !input_report.valid {
        let v = &input_report.violations[0];
        return Err(CliError::Usage(format!(
            "input is not a valid {} sequence: ({}) fails at position {} on {:?}",
            kind.name(),
            v.equation,
            v.index,
            v.point
        )));
    }
    let mut out = seq;
    for _ in 0..times {
        out = star_transform(&out)?;
    }
    let validity = check_sequence(algebra, &out, kind)?;
    let tm_doc = match tm {
        Some(m) => {
            if out.len() < 2 {
                return Err(CliError::Usage(
                    "--check-tm needs a sequence with at least two terms".into(),
                ));
            }
            let tolerances = enumerate_tolerances(algebra)?;
            let mut valid = true;
            for theta in &tolerances {
                valid &= check_tm(algebra, &out[1], theta, m)?.valid;
            }
            Some(TmDoc {
                m,
                tolerances: tolerances.len(),
                valid,
            })
        }
        None => None,
    };
    let pass = validity.valid && tm_doc.as_ref().is_none_or(|d| d.valid);
    if json {
        let doc = StarDoc {
            algebra: algebra.name(),
            kind: kind.name(),
            times,
            sequence: out.iter().map(|o| o.table()).collect(),
            validity: &validity,
            check_tm: tm_doc,
        };
        print_json(&doc);
    } else {
        println!(
            "star^{times} of a valid {} sequence ({} terms)",
            kind.name(),
            out.len()
        );
        for (i, op) in out.iter().enumerate() {
            println!("  t_{i}: {:?}", op.table());
        }
        println!("validity after transform: {}", verdict(validity.valid));
        if let Some(d) = &tm_doc {
            println!(
                "(T_{}) on {} tolerances: {}",
                d.m,
                d.tolerances,
                verdict(d.valid)
            );
        }
    }
    Ok(if pass { EXIT_PASS } else { EXIT_FAIL })
}

fn verdict(pass: bool) -> &'static str {
    if pass {
        "PASS"
    } else {
        "FAIL"
    }
}

#[derive(Serialize)]
struct SuiteDoc<'a> {
    algebra: &'a str,
    suite: &'a str,
    #[serde(skip_serializing_if = "Option::is_none")]
    inconclusive: Option<&'a str>,
    assertions: &'a [suites::Assertion],
    pass: bool,
}

fn cmd_verify(
    algebra: &FiniteAlgebra,
    suite: Suite,
    params: &SuiteParams,
    json: bool,
) -> Result<u8, CliError> {
    let outcome = run_suite(algebra, suite, params)?;
    let pass = outcome.assertions.iter().all(|a| a.pass);
    let (inconclusive, code) = match &outcome.status {
        SuiteStatus::Complete => (None, if pass { EXIT_PASS } else { EXIT_FAIL }),
        SuiteStatus::Inconclusive(reason) => (Some(reason.as_str()), EXIT_INCONCLUSIVE),
    };
    if json {
        let doc = SuiteDoc {
            algebra: algebra.name(),
            suite: suite.name(),
            inconclusive,
            assertions: &outcome.assertions,
            pass: pass && inconclusive.is_none(),
        };
        print_json(&doc);
    } else {
        println!("suite {} on {}", suite.name(), algebra.name());
        for a in &outcome.assertions {
            println!("{}  {} — {}", verdict(a.pass), a.label, a.detail);
        }
        if let Some(reason) = inconclusive {
            println!("INCONCLUSIVE  {reason}");
        }
    }
    Ok(code)
}

fn print_json<T: Serialize>(doc: &T) {
    println!(
        "{}",
        serde_json::to_string_pretty(doc).expect("report serializes")
    );
}
