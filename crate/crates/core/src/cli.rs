//! Command-line front end: build, evaluate, draw and verify.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::automata::format::{dfa_to_dot, dfao_to_dot, write_dfao, AutomatonFile};
use crate::automata::{Dfao, DEFAULT_STATE_CAP};
use crate::error::{Error, Result};
use crate::numeration::{digits_to_string, encode_base_k};
use crate::oracles::{FactorKind, FactorTable, PrefixView};
use crate::sequences::{load, Sequence};
use crate::synchro::{
    analyze, build_appearance_sync, build_block_count_dfao, build_power_count_sync, build_primitive_count_sync,
    build_rho_sync, BuildOptions, SyncFunction,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_MALFORMED: i32 = 2;
pub const EXIT_CAP: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "autosync", version, about = "Synchronized automata for factor complexity of automatic sequences")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Analysis {
    Complexity,
    Appearance,
    Powers,
    Primitive,
    Blockcount,
}

impl Analysis {
    fn name(self) -> &'static str {
        match self {
            Analysis::Complexity => "complexity",
            Analysis::Appearance => "appearance",
            Analysis::Powers => "powers",
            Analysis::Primitive => "primitive",
            Analysis::Blockcount => "blockcount",
        }
    }
}

#[derive(Debug, clap::Args)]
pub struct Limits {
    /// Maximum number of fixed-point iterations.
    #[arg(long, default_value_t = 64, value_parser = clap::value_parser!(u64).range(1..))]
    pub iter_cap: u64,
    /// Maximum number of states in any intermediate automaton.
    #[arg(long, default_value_t = DEFAULT_STATE_CAP as u64, value_parser = clap::value_parser!(u64).range(1..))]
    pub state_cap: u64,
    /// Expected numeration base of the sequence.
    #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u32).range(2..))]
    pub base: u32,
}

impl Limits {
    fn options(&self) -> BuildOptions {
        BuildOptions { iter_cap: self.iter_cap as usize, state_cap: self.state_cap as usize }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build an automaton for one analysis and write it to a file.
    Build {
        /// Built-in sequence name or path to a DFAO file.
        #[arg(long)]
        seq: String,
        #[arg(long, value_enum)]
        analysis: Analysis,
        #[arg(long)]
        out: PathBuf,
        /// Also write a Graphviz rendering.
        #[arg(long)]
        dot: Option<PathBuf>,
        #[command(flatten)]
        limits: Limits,
    },
    /// Evaluate a built automaton.
    Eval {
        /// Automaton file produced by `build`.
        file: PathBuf,
        #[arg(long, conflicts_with = "range", required_unless_present = "range")]
        n: Option<u64>,
        /// Inclusive range `a..b`; prints a tab-separated table.
        #[arg(long)]
        range: Option<String>,
    },
    /// Print which positions hold novel occurrences, one row per length.
    Diagram {
        #[arg(long)]
        seq: String,
        #[arg(long, default_value_t = 9)]
        nmax: usize,
        #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u32).range(2..))]
        base: u32,
    },
    /// Check every construction against brute force.
    Verify {
        #[arg(long)]
        seq: String,
        #[arg(long, default_value_t = 256)]
        nmax: usize,
        #[command(flatten)]
        limits: Limits,
    },
}

pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::StateCapExceeded { .. } | Error::IterationCapExceeded { .. } | Error::Instability { .. } => EXIT_CAP,
        Error::BrokenInvariant { .. } | Error::LeadingZeros(_) => EXIT_VERIFY_FAILED,
        _ => EXIT_MALFORMED,
    }
}

/// Parses arguments, runs the command and returns the process exit code.
pub fn main_with<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_MALFORMED } else { EXIT_OK };
        }
    };
    match run(&cli.command) {
        Ok(outcome) => {
            print!("{}", outcome.stdout);
            outcome.code
        }
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

/// Text for standard output and the exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub code: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { stdout, code: EXIT_OK }
    }
}

pub fn run(cmd: &Command) -> Result<Outcome> {
    match cmd {
        Command::Build { seq, analysis, out, dot, limits } => {
            let seq = load_checked(seq, limits.base)?;
            let artifact = build(&seq, *analysis, &limits.options())?;
            fs::write(out, &artifact.text)?;
            if let Some(path) = dot {
                fs::write(path, &artifact.dot)?;
            }
            let iterations = artifact.iterations.map(|i| format!(", {i} iterations")).unwrap_or_default();
            Ok(Outcome::ok(format!(
                "{} of {}: {} states{iterations}, written to {}\n",
                analysis.name(),
                seq.name,
                artifact.states,
                out.display()
            )))
        }
        Command::Eval { file, n, range } => {
            let loaded = Artifact::load(file)?;
            match (n, range) {
                (Some(n), _) => {
                    let v = loaded.value(*n)?;
                    Ok(Outcome::ok(format!("{v}\n{}\n", digits_to_string(&encode_base_k(v, loaded.base())))))
                }
                (None, Some(r)) => {
                    let (a, b) = parse_range(r)?;
                    let mut out = String::from("n\tvalue\tvalue_base_k\n");
                    for n in a..=b {
                        let v = loaded.value(n)?;
                        let _ = writeln!(out, "{n}\t{v}\t{}", digits_to_string(&encode_base_k(v, loaded.base())));
                    }
                    Ok(Outcome::ok(out))
                }
                (None, None) => Err(Error::Malformed("give --n or --range".into())),
            }
        }
        Command::Diagram { seq, nmax, base } => {
            let seq = load_checked(seq, *base)?;
            Ok(Outcome::ok(diagram(&seq, *nmax)?))
        }
        Command::Verify { seq, nmax, limits } => {
            let seq = load_checked(seq, limits.base)?;
            let report = verify(&seq, *nmax, &limits.options())?;
            let code = if report.passed() { EXIT_OK } else { EXIT_VERIFY_FAILED };
            Ok(Outcome { stdout: report.to_string(), code })
        }
    }
}

fn load_checked(spec: &str, base: u32) -> Result<Sequence> {
    let seq = load(spec)?;
    if seq.dfao.base() != base {
        return Err(Error::AlphabetMismatch(format!(
            "`{}` is base {}, expected base {base}",
            seq.name,
            seq.dfao.base()
        )));
    }
    Ok(seq)
}

fn parse_range(r: &str) -> Result<(u64, u64)> {
    let bad = || Error::Malformed(format!("range `{r}` is not of the form a..b"));
    let (a, b) = r.split_once("..").ok_or_else(bad)?;
    let a: u64 = a.trim().parse().map_err(|_| bad())?;
    let b: u64 = b.trim().parse().map_err(|_| bad())?;
    if a > b {
        return Err(bad());
    }
    Ok((a, b))
}

/// A serialized build result.
#[derive(Debug, Clone)]
pub struct BuiltArtifact {
    pub text: String,
    pub dot: String,
    pub states: usize,
    /// Fixed-point steps, for the analyses that iterate.
    pub iterations: Option<usize>,
}

pub fn build(seq: &Sequence, analysis: Analysis, opts: &BuildOptions) -> Result<BuiltArtifact> {
    let x = &seq.dfao;
    let header = |iterations: Option<usize>, states: usize| {
        let mut h = vec![format!("source {}", seq.name), format!("analysis {}", analysis.name())];
        if let Some(i) = iterations {
            h.push(format!("iterations {i}"));
        }
        h.push(format!("states {states}"));
        h
    };
    let sync = |f: SyncFunction, iterations: Option<usize>| {
        let states = f.num_states();
        BuiltArtifact {
            text: f.to_text(&header(iterations, states)),
            dot: dfa_to_dot(f.graph(), &format!("{}_{}", seq.name, analysis.name())),
            states,
            iterations,
        }
    };
    Ok(match analysis {
        Analysis::Complexity => {
            let a = analyze(x, opts)?;
            sync(a.subword_complexity, Some(a.iterations))
        }
        Analysis::Appearance => sync(build_appearance_sync(x, opts)?, None),
        Analysis::Powers => sync(build_power_count_sync(x, opts)?, None),
        Analysis::Primitive => {
            let rho = build_rho_sync(x, opts)?;
            sync(build_primitive_count_sync(&rho, &build_power_count_sync(x, opts)?)?, None)
        }
        Analysis::Blockcount => {
            let novel = crate::predicates::PredicateCompiler::with_state_cap(x, opts.state_cap).novel()?;
            let b = build_block_count_dfao(&novel, opts)?;
            let states = b.dfao.num_states();
            let mut comments = header(None, states);
            comments.push(format!("bound {}", b.bound));
            BuiltArtifact {
                text: write_dfao(&b.dfao, &comments),
                dot: dfao_to_dot(&b.dfao, &format!("{}_blockcount", seq.name)),
                states,
                iterations: None,
            }
        }
    })
}

/// A file read back for evaluation: a function graph or a DFAO.
#[derive(Debug, Clone)]
pub enum Artifact {
    Function(SyncFunction),
    Sequence(Dfao),
}

impl Artifact {
    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path)?;
        Artifact::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self> {
        let file = AutomatonFile::parse(text)?;
        if file.outputs.is_some() {
            let dfao = file.to_dfao()?;
            if dfao.alphabet().tracks() != 1 {
                return Err(Error::Malformed("a DFAO artifact reads one track".into()));
            }
            Ok(Artifact::Sequence(dfao))
        } else {
            Ok(Artifact::Function(SyncFunction::new(file.to_dfa()?)?))
        }
    }

    pub fn base(&self) -> u32 {
        match self {
            Artifact::Function(f) => f.base(),
            Artifact::Sequence(d) => d.base(),
        }
    }

    pub fn value(&self, n: u64) -> Result<u64> {
        match self {
            Artifact::Function(f) => f.eval(n),
            Artifact::Sequence(d) => Ok(d.output(n) as u64),
        }
    }
}

/// Rows of `#` (novel occurrence) and `.` for lengths `1..=nmax`, each
/// followed by the block count and the blocks.
pub fn diagram(seq: &Sequence, nmax: usize) -> Result<String> {
    let table = FactorTable::build(&PrefixView::from_dfao(&seq.name, &seq.dfao), nmax.max(1))?;
    let sets: Vec<_> = (1..=nmax).map(|n| table.novel_set(n)).collect();
    let width = sets.iter().filter_map(|s| s.positions.last()).max().map_or(0, |&p| p + 1);
    let pad = nmax.to_string().len();
    let mut out = String::new();
    for set in &sets {
        let cells: String = (0..width).map(|i| if set.contains(i) { '#' } else { '.' }).collect();
        let blocks: Vec<String> =
            set.blocks().iter().map(|&(a, b)| if a == b { a.to_string() } else { format!("{a}-{b}") }).collect();
        let _ = writeln!(out, "{:>pad$} {cells}  {} blocks: {}", set.n, set.block_count, blocks.join("|"));
    }
    Ok(out)
}

/// One named check with a witness on failure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    fn record(&mut self, name: &str, failure: Option<String>, success: String) {
        let passed = failure.is_none();
        self.checks.push(Check { name: name.to_string(), passed, detail: failure.unwrap_or(success) });
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

impl std::fmt::Display for Report {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for c in &self.checks {
            writeln!(f, "{} {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail)?;
        }
        let failed = self.checks.iter().filter(|c| !c.passed).count();
        writeln!(f, "{} checks, {failed} failed", self.checks.len())
    }
}

/// First `n` in `range` where `got(n) != want(n)`, formatted as a witness.
fn first_mismatch(
    range: impl IntoIterator<Item = usize>,
    mut got: impl FnMut(usize) -> Result<u64>,
    mut want: impl FnMut(usize) -> u64,
) -> Option<String> {
    for n in range {
        match got(n) {
            Ok(g) if g == want(n) => {}
            Ok(g) => return Some(format!("n={n}: automaton {g}, brute force {}", want(n))),
            Err(e) => return Some(format!("n={n}: {e}")),
        }
    }
    None
}

/// Cross-checks the sequence automaton and every construction up to `nmax`.
pub fn verify(seq: &Sequence, nmax: usize, opts: &BuildOptions) -> Result<Report> {
    let mut report = Report::default();
    let x = &seq.dfao;

    if seq.generator.is_some() {
        let upto = (64 * nmax as u64).max(1 << 12);
        let bad = seq.first_generator_mismatch(upto);
        report.record(
            "dfao matches reference generator",
            bad.map(|n| format!("n={n}: automaton {}, generator {}", x.output(n), (seq.generator.unwrap())(n))),
            format!("n <= {upto}"),
        );
    }
    report.record(
        "dfao ignores leading zeros",
        x.check_leading_zeros().err().map(|e| e.to_string()),
        "all states".into(),
    );

    let table = FactorTable::build(&PrefixView::from_dfao(&seq.name, x), nmax + 1)?;
    let analysis = analyze(x, opts)?;
    let rho = &analysis.subword_complexity;
    let alpha = build_appearance_sync(x, opts)?;
    let pw = build_power_count_sync(x, opts)?;
    let prim = build_primitive_count_sync(rho, &pw)?;
    let range = || 0..=nmax;

    for (name, f, kind) in [
        ("subword complexity", rho, FactorKind::Factors),
        ("power count", &pw, FactorKind::Powers),
        ("primitive count", &prim, FactorKind::Primitive),
    ] {
        report.record(
            &format!("{name} equals brute force"),
            first_mismatch(range(), |n| f.eval(n as u64), |n| table.count(n, kind)),
            format!("n <= {nmax}, {} states", f.num_states()),
        );
    }
    report.record(
        "appearance equals brute force",
        first_mismatch(range(), |n| alpha.eval(n as u64), |n| table.appearance(n)),
        format!("n <= {nmax}, {} states", alpha.num_states()),
    );
    report.record(
        "block counts equal brute force",
        first_mismatch(
            range(),
            |n| Ok(analysis.block_counts.dfao.output(n as u64) as u64),
            |n| table.novel_set(n).block_count as u64,
        ),
        format!("n <= {nmax}, at most {} blocks", analysis.block_counts.bound),
    );
    report.record(
        "complexity is powers plus primitive",
        first_mismatch(
            range(),
            |n| Ok(pw.eval(n as u64)? + prim.eval(n as u64)?),
            |n| table.count(n, FactorKind::Factors),
        ),
        format!("n <= {nmax}"),
    );
    report.record(
        "complexity graph is a function",
        rho.check_function_graph(nmax as u64)
            .map_err(|e| e.to_string())
            .and_then(|ok| if ok { Ok(()) } else { Err("some n has zero or several values".into()) })
            .err(),
        format!("n <= {nmax}"),
    );
    report.record(
        "fixed point within block bound",
        (analysis.iterations > analysis.block_counts.bound as usize + 1)
            .then(|| format!("{} iterations, bound {}", analysis.iterations, analysis.block_counts.bound)),
        format!("{} iterations", analysis.iterations),
    );

    let block_bound = (1..=nmax).find_map(|n| {
        let blocks = table.novel_set(n).block_count as u64;
        let limit = table.count(n, FactorKind::Factors) + 1 - table.count(n - 1, FactorKind::Factors);
        (blocks > limit).then(|| format!("n={n}: {blocks} blocks, difference bound {limit}"))
    });
    report.record("blocks <= rho(n) - rho(n-1) + 1", block_bound, format!("1 <= n <= {nmax}"));

    report.record("novel occurrences persist", monotonicity_violation(&table, nmax), format!("n, i <= {nmax}"));

    if seq.name == "powers_of_two_char" {
        report.record("unbordered factors of length 2^r+1", unbordered_violation(x)?, "2 <= r <= 9".into());
    }
    Ok(report)
}

/// Checks `i in E(n) => i in E(n+1)` and, for `i >= 1`, `i-1 in E(n+1)`.
pub fn monotonicity_violation(table: &FactorTable, nmax: usize) -> Option<String> {
    for n in 0..nmax.min(table.nmax()) {
        let (now, next) = (table.novel_set(n), table.novel_set(n + 1));
        for &i in now.positions.iter().filter(|&&i| i <= nmax) {
            if !next.contains(i) {
                return Some(format!("n={n}, i={i}: novel at length n but not n+1"));
            }
            if i >= 1 && !next.contains(i - 1) {
                return Some(format!("n={n}, i={i}: position i-1 not novel at length n+1"));
            }
        }
    }
    None
}

fn unbordered_violation(x: &Dfao) -> Result<Option<String>> {
    let table = FactorTable::build(&PrefixView::from_dfao("powers_of_two_char", x), (1 << 9) + 1)?;
    for r in 2..=9u32 {
        let len = (1usize << r) + 1;
        let got = table.count(len, FactorKind::Unbordered);
        if got != r as u64 + 2 {
            return Ok(Some(format!("r={r}: {got} unbordered factors, expected {}", r + 2)));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sequences::builtin;

    #[test]
    fn ranges() {
        assert_eq!(parse_range("3..7").unwrap(), (3, 7));
        assert!(parse_range("7..3").is_err());
        assert!(parse_range("x").is_err());
    }

    #[test]
    fn thue_morse_diagram() {
        let d = diagram(&builtin("thue_morse").unwrap(), 9).unwrap();
        let rows: Vec<&str> = d.lines().collect();
        assert_eq!(rows.len(), 9);
        assert!(rows[0].starts_with("1 ##."));
        assert!(rows[5].contains(" 5 blocks: "));
    }

    #[test]
    fn exit_codes() {
        assert_eq!(exit_code(&Error::IterationCapExceeded { cap: 3 }), EXIT_CAP);
        assert_eq!(exit_code(&Error::Domain(0)), EXIT_MALFORMED);
        assert_eq!(exit_code(&Error::Malformed(String::new())), EXIT_MALFORMED);
    }
}
