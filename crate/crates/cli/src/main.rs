use std::fs;
use std::io::{self, BufReader, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use cylkit::bao::equation::{ca_axioms, failing_axioms, CheckMode};
use cylkit::bao::frame::check_ca_frame;
use cylkit::bao::structure::CaAtomStructure;
use cylkit::constructions::{
    basic_matrices, bin_forb, ca_over_hyperbasis, enumerate_hypernetworks, full_set_algebra, hh_ra, is_hyperbasis,
    johnson_extend, monk_atoms, split_ca_atom, split_ra_atom, three_cube, BinForb, PsiBound, SplitPolicy,
};
use cylkit::games::{
    ca_network_dot, play_interactive, ra_network_dot, replay, solve, structure_dot, Arena, CaArena, CaNetwork, GameSpec,
    RaArena, RaNetwork, Side, SolveOptions, Transcript, DEFAULT_BUDGET,
};
use cylkit::neat::{nr, ra_reduct, rd_rho, restriction_iso, rl_x, rl_x_witness};
use cylkit::ra::{check_ra_axioms, cyclic_group_ra, RaAtomStructure};
use cylkit::{AtomSet, Error};

/// Exit statuses.
const PASS: u8 = 0;
const CHECK_FAILED: u8 = 1;
const USAGE: u8 = 2;
const BUDGET: u8 = 3;

#[derive(Parser)]
#[command(name = "cylkit", version, about = "Finite cylindric and relation algebra atom structures")]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Subcommand)]
enum Verb {
    /// Generate a structure as JSON.
    Gen {
        #[command(subcommand)]
        kind: GenKind,
    },
    /// Run a check on a structure file.
    Check {
        #[command(subcommand)]
        kind: CheckKind,
    },
    /// Neat reduct to the indices in --gamma, as a quotient frame.
    Nr {
        file: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        gamma: Vec<usize>,
        /// Proceed when an off-gamma relation is not an equivalence.
        #[arg(long)]
        force: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Reduct along an injection of indices.
    Rd {
        file: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        rho: Vec<usize>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Relativize to a set of atoms, or check the matrix witness.
    Rl {
        file: Option<PathBuf>,
        /// Atoms of the relativizing element.
        #[arg(long, value_delimiter = ',', conflicts_with = "witness")]
        x: Option<Vec<usize>>,
        /// Check the relativization witness between matrix dimensions.
        #[arg(long)]
        witness: bool,
        #[arg(long, default_value_t = 4)]
        mbig: usize,
        #[arg(long, default_value_t = 3)]
        msmall: usize,
        #[command(flatten)]
        bin: BinArgs,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Relation algebra reduct of a cylindric structure of dimension >= 3.
    RaReduct {
        file: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check the restriction isomorphism between matrix dimensions.
    IsoCheck {
        #[arg(long)]
        msmall: usize,
        #[arg(long)]
        mbig: usize,
        #[command(flatten)]
        bin: BinArgs,
    },
    /// Split an atom into copies that inherit its relations.
    Split {
        file: PathBuf,
        #[arg(long)]
        atom: usize,
        #[arg(long, default_value_t = 2)]
        copies: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Write the embedding of old atoms as JSON.
        #[arg(long)]
        map: Option<PathBuf>,
    },
    /// Solve, play or replay a truncated network game.
    Game {
        #[command(subcommand)]
        kind: GameKind,
    },
    /// Re-export a structure file as canonical JSON or DOT.
    Export {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Run the acceptance battery and print a pass/fail table.
    Suite {
        /// Run only these criteria.
        #[arg(long, value_delimiter = ',')]
        only: Vec<usize>,
        /// Print JSON instead of a table.
        #[arg(long)]
        json: bool,
    },
}

#[derive(Subcommand)]
enum GenKind {
    /// Monk's structure on m points with n colours.
    Monk {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        /// Add the transposition relations.
        #[arg(long)]
        johnson: bool,
        /// Write a readable listing of the atoms.
        #[arg(long)]
        listing: Option<PathBuf>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// All tuples over a finite base.
    SetAlgebra {
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        base: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Tuples of length 3 over 3 points.
    ThreeCube {
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// The relation algebra hh_ra(n, r, psi-cap).
    Hh {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        psi_cap: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// The relation algebra on Bin(n, r) with its forbidden triples.
    Bin {
        #[command(flatten)]
        bin: BinArgs,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Basic matrices of dimension m over Bin(n, r).
    Matrices {
        #[arg(long)]
        m: usize,
        #[command(flatten)]
        bin: BinArgs,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// The group relation algebra of Z_k.
    Cyclic {
        #[arg(long)]
        k: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// The cylindric structure over all hypernetworks of a relation algebra.
    Hyperbasis {
        ra: PathBuf,
        #[command(flatten)]
        hyper: HyperArgs,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum CheckKind {
    /// Frame conditions of a cylindric structure.
    CaFrame { file: PathBuf },
    /// The cylindric axioms on the complex algebra.
    CaEquations {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Mode::Exhaustive)]
        mode: Mode,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
    },
    /// Relation algebra axioms on atoms.
    RaAxioms { file: PathBuf },
    /// Whether all hypernetworks of a relation algebra form a hyperbasis.
    Hyperbasis {
        file: PathBuf,
        #[command(flatten)]
        hyper: HyperArgs,
    },
}

#[derive(Subcommand)]
enum GameKind {
    /// Solve the game exactly and print the result as JSON.
    Solve {
        #[command(flatten)]
        game: GameArgs,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Write the opening network of the winning strategy as DOT.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Play against the engine on stdin/stdout.
    Play {
        #[command(flatten)]
        game: GameArgs,
        #[arg(long, value_enum, default_value_t = SideArg::Forall)]
        side: SideArg,
        /// Write the transcript as JSON.
        #[arg(long)]
        transcript: Option<PathBuf>,
        /// Write the final network as DOT.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Check a transcript against the game and print its final network.
    Replay {
        #[command(flatten)]
        game: GameArgs,
        #[arg(long)]
        transcript: PathBuf,
        #[arg(long)]
        dot: Option<PathBuf>,
    },
}

#[derive(Args)]
struct BinArgs {
    #[arg(long = "n", default_value_t = 3)]
    bin_n: usize,
    #[arg(long = "r", default_value_t = 1)]
    bin_r: usize,
    /// Colours per index pair; omit for the exact value.
    #[arg(long)]
    psi_cap: Option<usize>,
}

impl BinArgs {
    fn build(&self) -> cylkit::Result<BinForb> {
        let bound = self.psi_cap.map_or(PsiBound::Exact, PsiBound::Cap);
        bin_forb(self.bin_n, self.bin_r, bound)
    }
}

#[derive(Args)]
struct HyperArgs {
    #[arg(long, default_value_t = 3)]
    m: usize,
    #[arg(long, default_value_t = 3)]
    n_wide: usize,
    #[arg(long, default_value_t = 1)]
    labels: usize,
}

#[derive(Args)]
struct GameArgs {
    #[arg(long, value_enum)]
    variant: VariantArg,
    #[arg(long)]
    rounds: usize,
    #[arg(long)]
    pebbles: Option<usize>,
    #[arg(long)]
    structure: PathBuf,
    #[arg(long)]
    atom: usize,
    /// Worker threads; 0 uses every core.
    #[arg(long, default_value_t = 0)]
    threads: usize,
    /// Disable the position memo.
    #[arg(long)]
    no_memo: bool,
    /// Do not identify networks up to renaming of nodes.
    #[arg(long)]
    raw: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantArg {
    G,
    F,
    Ra,
}

#[derive(Clone, Copy, ValueEnum)]
enum SideArg {
    Exists,
    Forall,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Exhaustive,
    Atoms,
    Sample,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
}

enum Loaded {
    Ca(CaAtomStructure),
    Ra(RaAtomStructure),
}

fn read(path: &Path) -> cylkit::Result<String> {
    Ok(fs::read_to_string(path)?)
}

fn load(path: &Path) -> cylkit::Result<Loaded> {
    let text = read(path)?;
    let doc: Value = serde_json::from_str(&text)?;
    if doc.get("dim").is_some() {
        Ok(Loaded::Ca(CaAtomStructure::from_json(&text)?))
    } else {
        Ok(Loaded::Ra(RaAtomStructure::from_json(&text)?))
    }
}

fn load_ca(path: &Path) -> cylkit::Result<CaAtomStructure> {
    match load(path)? {
        Loaded::Ca(s) => Ok(s),
        Loaded::Ra(_) => Err(Error::Parameter(format!("{} holds a relation algebra, not a cylindric structure", path.display()))),
    }
}

fn load_ra(path: &Path) -> cylkit::Result<RaAtomStructure> {
    match load(path)? {
        Loaded::Ra(s) => Ok(s),
        Loaded::Ca(_) => Err(Error::Parameter(format!("{} holds a cylindric structure, not a relation algebra", path.display()))),
    }
}

/// Writes to the file, or to stdout without one.
fn emit(output: Option<&Path>, text: &str) -> cylkit::Result<()> {
    let mut text = text.to_string();
    if !text.ends_with('\n') {
        text.push('\n');
    }
    match output {
        Some(p) => fs::write(p, text)?,
        None => io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn pretty(v: &impl serde::Serialize) -> String {
    serde_json::to_string_pretty(v).expect("plain data")
}

fn verdict(passed: bool) -> u8 {
    if passed {
        PASS
    } else {
        CHECK_FAILED
    }
}

/// Search budget: `CYLKIT_BUDGET` caps the states explored.
fn budget() -> cylkit::Result<u64> {
    match std::env::var("CYLKIT_BUDGET") {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Error::Parameter(format!("CYLKIT_BUDGET must be a non-negative integer, got {v:?}"))),
        Err(_) => Ok(DEFAULT_BUDGET),
    }
}

fn parse_atoms(n: usize, idx: &[usize]) -> cylkit::Result<AtomSet> {
    if let Some(&bad) = idx.iter().find(|&&a| a >= n) {
        return Err(Error::IndexOutOfRange { index: bad, bound: n });
    }
    Ok(AtomSet::from_indices(n, idx.iter().copied()))
}

fn run(cli: Cli) -> cylkit::Result<u8> {
    match cli.verb {
        Verb::Gen { kind } => generate(kind),
        Verb::Check { kind } => check(kind),
        Verb::Nr {
            file,
            gamma,
            force,
            output,
        } => {
            let s = load_ca(&file)?;
            let r = nr(&s, &gamma, force)?;
            if let Some(p) = output {
                fs::write(p, r.frame.structure.to_json())?;
            }
            emit(None, &r.report.to_json())?;
            Ok(verdict(r.report.passed))
        }
        Verb::Rd { file, rho, output } => {
            let s = load_ca(&file)?;
            let out = rd_rho(&s, &rho)?;
            emit(output.as_deref(), &out.to_json())?;
            Ok(PASS)
        }
        Verb::Rl {
            file,
            x,
            witness,
            mbig,
            msmall,
            bin,
            output,
        } => {
            if witness {
                let w = rl_x_witness(mbig, msmall, &bin.build()?)?;
                emit(output.as_deref(), &pretty(&w))?;
                return Ok(verdict(w.report.passed));
            }
            let (Some(file), Some(x)) = (file, x) else {
                return Err(Error::Parameter("rl needs a structure file and --x, or --witness".into()));
            };
            let s = load_ca(&file)?;
            let el = s.element_from_set(parse_atoms(s.atom_count(), &x)?)?;
            let rel = rl_x(&s, &el)?;
            let probe = rel.commutation_probe();
            if let Some(p) = output {
                fs::write(p, rel.structure.to_json())?;
            }
            let report = json!({
                "transform": "rl",
                "params": { "x": x },
                "certificate_level": "exhaustive",
                "passed": probe.commute,
                "counterexample": probe.witness.map(|(i, j, a)| format!("c{i} c{j} and c{j} c{i} differ on atom {}", s.label(a))),
            });
            emit(None, &pretty(&report))?;
            Ok(verdict(probe.commute))
        }
        Verb::RaReduct { file, output } => {
            let s = load_ca(&file)?;
            let ra = ra_reduct(&s)?.atom_structure()?;
            let report = check_ra_axioms(&ra, u128::from(budget()?))?;
            if let Some(p) = output {
                fs::write(p, ra.to_json())?;
            }
            emit(None, &pretty(&report))?;
            Ok(verdict(report.all_passed()))
        }
        Verb::IsoCheck { msmall, mbig, bin } => {
            let r = restriction_iso(msmall, mbig, &bin.build()?)?;
            emit(None, &r.to_json())?;
            Ok(verdict(r.passed))
        }
        Verb::Split {
            file,
            atom,
            copies,
            output,
            map,
        } => {
            let policy = SplitPolicy::inherit(copies);
            let (text, embedding) = match load(&file)? {
                Loaded::Ca(s) => {
                    let sp = split_ca_atom(&s, atom, &policy)?;
                    (sp.structure.to_json(), sp.map.embedding)
                }
                Loaded::Ra(s) => {
                    let sp = split_ra_atom(&s, atom, &policy)?;
                    (sp.structure.to_json(), sp.map.embedding)
                }
            };
            if let Some(p) = map {
                let rows: Vec<Vec<usize>> = embedding.iter().map(|e| e.iter().collect()).collect();
                fs::write(p, pretty(&json!({ "split_atom": atom, "copies": copies, "embedding": rows })))?;
            }
            emit(output.as_deref(), &text)?;
            Ok(PASS)
        }
        Verb::Game { kind } => game(kind),
        Verb::Export { file, format, output } => {
            let text = match (load(&file)?, format) {
                (Loaded::Ca(s), Format::Json) => s.to_json(),
                (Loaded::Ca(s), Format::Dot) => structure_dot(&s),
                (Loaded::Ra(s), Format::Json) => s.to_json(),
                (Loaded::Ra(_), Format::Dot) => {
                    return Err(Error::Parameter("DOT export covers cylindric structures and networks".into()))
                }
            };
            emit(output.as_deref(), &text)?;
            Ok(PASS)
        }
        Verb::Suite { only, json } => {
            let results: Vec<_> = if only.is_empty() {
                cylkit::suite::run_all()
            } else {
                let mut out = Vec::new();
                for id in only {
                    out.push(
                        cylkit::suite::run(id)
                            .ok_or_else(|| Error::Parameter(format!("no criterion {id}; there are {}", cylkit::suite::CRITERIA)))?,
                    );
                }
                out
            };
            if json {
                emit(None, &pretty(&results))?;
            } else {
                let mut table = String::new();
                for r in &results {
                    table.push_str(&format!("{r}\n"));
                }
                let passed = results.iter().filter(|r| r.passed).count();
                table.push_str(&format!("{passed}/{} passed", results.len()));
                emit(None, &table)?;
            }
            Ok(verdict(results.iter().all(|r| r.passed)))
        }
    }
}

fn generate(kind: GenKind) -> cylkit::Result<u8> {
    let (text, output) = match kind {
        GenKind::Monk {
            m,
            n,
            johnson,
            listing,
            output,
        } => {
            let g = monk_atoms(m, n)?;
            if let Some(p) = listing {
                fs::write(p, g.listing())?;
            }
            let s = if johnson { johnson_extend(&g)? } else { g.structure };
            (s.to_json(), output)
        }
        GenKind::SetAlgebra { dim, base, output } => (full_set_algebra(dim, base)?.to_json(), output),
        GenKind::ThreeCube { output } => (three_cube().to_json(), output),
        GenKind::Hh { n, r, psi_cap, output } => (hh_ra(n, r, psi_cap)?.to_json(), output),
        GenKind::Bin { bin, output } => (bin.build()?.ra.to_json(), output),
        GenKind::Matrices { m, bin, output } => (basic_matrices(m, &bin.build()?)?.structure.to_json(), output),
        GenKind::Cyclic { k, output } => (cyclic_group_ra(k)?.to_json(), output),
        GenKind::Hyperbasis { ra, hyper, output } => {
            let ra = load_ra(&ra)?;
            let h = enumerate_hypernetworks(&ra, hyper.m, hyper.n_wide, hyper.labels, u128::from(budget()?))?;
            (ca_over_hyperbasis(&ra, &h)?.to_json(), output)
        }
    };
    emit(output.as_deref(), &text)?;
    Ok(PASS)
}

fn check(kind: CheckKind) -> cylkit::Result<u8> {
    match kind {
        CheckKind::CaFrame { file } => {
            let r = check_ca_frame(&load_ca(&file)?);
            emit(None, &pretty(&r))?;
            Ok(verdict(r.ca_passed()))
        }
        CheckKind::CaEquations {
            file,
            mode,
            seed,
            samples,
        } => {
            let s = load_ca(&file)?;
            let mode = match mode {
                Mode::Exhaustive => CheckMode::Exhaustive,
                Mode::Atoms => CheckMode::Atoms,
                Mode::Sample => CheckMode::Sample { seed, count: samples },
            };
            let failing = failing_axioms(&s, &ca_axioms(s.dim()), mode)?;
            emit(None, &pretty(&json!({ "passed": failing.is_empty(), "failing": failing })))?;
            Ok(verdict(failing.is_empty()))
        }
        CheckKind::RaAxioms { file } => {
            let r = check_ra_axioms(&load_ra(&file)?, u128::from(budget()?))?;
            emit(None, &pretty(&r))?;
            Ok(verdict(r.all_passed()))
        }
        CheckKind::Hyperbasis { file, hyper } => {
            let ra = load_ra(&file)?;
            let h = enumerate_hypernetworks(&ra, hyper.m, hyper.n_wide, hyper.labels, u128::from(budget()?))?;
            let r = is_hyperbasis(&ra, &h);
            emit(None, &pretty(&json!({ "hypernetworks": h.len(), "report": r })))?;
            Ok(verdict(r.passed))
        }
    }
}

fn spec_of(g: &GameArgs) -> cylkit::Result<GameSpec> {
    let pebbles = || g.pebbles.ok_or_else(|| Error::Parameter("this variant needs --pebbles".into()));
    Ok(match g.variant {
        VariantArg::G => GameSpec::g(g.rounds),
        VariantArg::F => GameSpec::f(pebbles()?, g.rounds),
        VariantArg::Ra => GameSpec::ra_triangle(pebbles()?, g.rounds),
    })
}

fn options(g: &GameArgs) -> cylkit::Result<SolveOptions> {
    Ok(SolveOptions {
        threads: g.threads,
        memo: !g.no_memo,
        budget: budget()?,
    })
}

/// What a game verb does once the arena is built.
enum GameAction {
    Solve { output: Option<PathBuf>, dot: Option<PathBuf> },
    Play { side: Side, transcript: Option<PathBuf>, dot: Option<PathBuf> },
    Replay { transcript: PathBuf, dot: Option<PathBuf> },
}

fn game(kind: GameKind) -> cylkit::Result<u8> {
    let (g, action) = match kind {
        GameKind::Solve { game, output, dot } => (game, GameAction::Solve { output, dot }),
        GameKind::Play {
            game,
            side,
            transcript,
            dot,
        } => {
            let side = match side {
                SideArg::Exists => Side::Exists,
                SideArg::Forall => Side::Forall,
            };
            (game, GameAction::Play { side, transcript, dot })
        }
        GameKind::Replay { game, transcript, dot } => (game, GameAction::Replay { transcript, dot }),
    };
    let spec = spec_of(&g)?;
    let opts = options(&g)?;
    match (load(&g.structure)?, g.variant) {
        (Loaded::Ca(s), VariantArg::G | VariantArg::F) => {
            let mut arena = CaArena::new(&s, spec, g.atom)?;
            arena.canonicalize = !g.raw;
            let dim = s.dim();
            let draw = |key: &str| -> cylkit::Result<String> { Ok(ca_network_dot(&s, &CaNetwork::from_key(dim, key)?)) };
            act(&arena, &opts, action, draw)
        }
        (Loaded::Ra(ra), VariantArg::Ra) => {
            let mut arena = RaArena::new(&ra, spec, g.atom)?;
            arena.canonicalize = !g.raw;
            let draw = |key: &str| -> cylkit::Result<String> { Ok(ra_network_dot(&ra, &RaNetwork::from_key(key)?)) };
            act(&arena, &opts, action, draw)
        }
        _ => Err(Error::Parameter(
            "variants g and f need a cylindric structure, variant ra a relation algebra".into(),
        )),
    }
}

fn act<A: Arena>(
    arena: &A,
    opts: &SolveOptions,
    action: GameAction,
    draw: impl Fn(&str) -> cylkit::Result<String>,
) -> cylkit::Result<u8> {
    let write_dot = |path: Option<PathBuf>, key: &str| -> cylkit::Result<()> {
        match path {
            Some(p) if !key.is_empty() => Ok(fs::write(p, draw(key)?)?),
            Some(_) => Err(Error::Parameter("there is no network to draw".into())),
            None => Ok(()),
        }
    };
    match action {
        GameAction::Solve { output, dot } => {
            let r = solve(arena, opts)?;
            write_dot(dot, r.opening.as_deref().unwrap_or(""))?;
            emit(output.as_deref(), &pretty(&r))?;
        }
        GameAction::Play { side, transcript, dot } => {
            let stdin = io::stdin();
            let mut input = BufReader::new(stdin.lock());
            let mut out = io::stdout();
            let t = play_interactive(arena, side, opts, &mut input, &mut out)?;
            writeln!(out, "winner: {}", serde_json::to_value(t.winner)?.as_str().unwrap_or_default())?;
            write_dot(dot, &t.final_position)?;
            if let Some(p) = transcript {
                fs::write(p, pretty(&t))?;
            }
        }
        GameAction::Replay { transcript, dot } => {
            let t: Transcript = serde_json::from_str(&read(&transcript)?)?;
            let last = replay(arena, &t, opts.budget)?;
            write_dot(dot, &last)?;
            emit(None, &pretty(&json!({ "legal": true, "winner": t.winner, "final_position": last })))?;
        }
    }
    Ok(PASS)
}

fn status(e: &Error) -> u8 {
    match e {
        Error::Budget { .. } | Error::BoundExceeded(_) => BUDGET,
        Error::Verification(_) | Error::NotHyperbasis(_) | Error::IllegalMove(_) => CHECK_FAILED,
        _ => USAGE,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { USAGE } else { PASS });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(status(&e))
        }
    }
}
