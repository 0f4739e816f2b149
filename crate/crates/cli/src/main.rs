use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use mhgarside::arrangement::{
    check_om_circuit_axioms, check_simplicial, check_simplicial_complex, check_symmetric,
    circuits_from_topes, completed_complex, om_rank, parse_sign_vectors, save_covectors,
};
use mhgarside::{
    abelianization, build_salvetti, check_lmh, check_mh, check_proper, check_qmh,
    covectors_from_hyperplanes, dual_complex, find_involution, fixtures, make_context,
    parse_complex, presentation, verify_garside, Arrangement, CellComplex, DualComplex,
    FaceLattice, FixtureData, FixtureId, GarsideError, HemisphereMaps, Letter, PathOracle,
    PositivePath, SalvettiComplex, SignVector,
};

#[derive(Parser)]
#[command(
    name = "mhgarside",
    version,
    about = "Salvetti complexes and Garside structures of arrangements and MH complexes"
)]
struct Cli {
    /// Bundled input: I22, I23, I2<m>, S4, GEN4 or NONPAP.
    #[arg(long, global = true)]
    fixture: Option<FixtureId>,
    /// Arrangement, covector or complex file.
    #[arg(long, global = true)]
    input: Option<PathBuf>,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Longest morphism enumerated by `verify`.
    #[arg(long, global = true, default_value_t = 3)]
    max_len: usize,
    /// Restrict elementary moves to paths inside the cell.
    #[arg(long, global = true)]
    confine_to_cell: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate the input and print it in canonical form.
    Ingest,
    /// Print the dual complex of an arrangement or covector input.
    Dual,
    /// Print the circuits and the rank.
    Circuits,
    /// Run one property check.
    Check { property: Property },
    /// Print the QMH, LMH and MH verdicts with witnesses.
    MhReport,
    /// Construct and print a derived object.
    Build {
        target: Target,
        /// Tietze-reduce the presentation to one vertex group.
        #[arg(long)]
        reduce: bool,
    },
    /// Solve the word problem in the fundamental groupoid.
    Word {
        mode: WordMode,
        /// Words of Salvetti letters (`e<label>` or `e<label>^-1`) or vertex paths.
        words: Vec<String>,
        /// File with one word per line.
        #[arg(long)]
        words_file: Option<PathBuf>,
        /// Start vertex for words that do not determine it.
        #[arg(long)]
        start: Option<String>,
    },
    /// Check the Garside axioms exhaustively up to --max-len.
    Verify,
    /// Brute-force path equivalence queries.
    Oracle {
        op: OracleOp,
        /// Positive paths as whitespace-separated vertices.
        paths: Vec<String>,
        /// File with one path per line.
        #[arg(long)]
        paths_file: Option<PathBuf>,
    },
}

#[derive(Copy, Clone, ValueEnum)]
enum Property {
    Qmh,
    Lmh,
    Mh,
    Flat,
    Involutive,
    Simplicial,
    Proper,
    Symmetric,
    OmAxioms,
}

#[derive(Copy, Clone, ValueEnum)]
enum Target {
    Dual,
    Completed,
    Salvetti,
    Presentation,
}

#[derive(Copy, Clone, ValueEnum)]
enum WordMode {
    NormalForm,
    Equal,
    Trivial,
}

#[derive(Copy, Clone, ValueEnum)]
enum OracleOp {
    Geodesics,
    Moves,
    Class,
    Key,
    Equivalent,
    LeftDivides,
    RightDivides,
    Meet,
    Join,
}

enum Source {
    Arrangement(Arrangement),
    Covectors(Vec<SignVector>),
    Complex(CellComplex),
}

impl Source {
    fn load(cli: &Cli) -> Result<Source> {
        match (&cli.fixture, &cli.input) {
            (Some(_), Some(_)) => bail!("give either --fixture or --input, not both"),
            (None, None) => bail!("no input: pass --fixture <id> or --input <path>"),
            (Some(id), None) => Ok(match fixtures::load(*id) {
                FixtureData::Hyperplanes(a) => Source::Arrangement(a),
                FixtureData::Covectors(fl) => Source::Covectors(fl.covectors().to_vec()),
            }),
            (None, Some(path)) => Source::read(path),
        }
    }

    fn read(path: &Path) -> Result<Source> {
        let text =
            fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        let first = text
            .lines()
            .map(|l| l.split('#').next().unwrap().trim())
            .find(|l| !l.is_empty())
            .ok_or_else(|| anyhow!("{} is empty", path.display()))?;
        if first.starts_with("cells") {
            Ok(Source::Complex(parse_complex(&text)?))
        } else if first.chars().all(|c| matches!(c, '+' | '-' | '0')) && first.len() > 1 {
            Ok(Source::Covectors(parse_sign_vectors(&text)?))
        } else {
            Ok(Source::Arrangement(text.parse()?))
        }
    }

    fn lattice(&self) -> Result<FaceLattice> {
        match self {
            Source::Arrangement(a) => Ok(covectors_from_hyperplanes(a)),
            Source::Covectors(vs) => {
                let n = vs.first().map_or(0, |x| x.len());
                Ok(FaceLattice::new(n, vs.iter().cloned())?)
            }
            Source::Complex(_) => bail!("this command needs an arrangement or covector input"),
        }
    }

    /// The complex Q: the dual complex, or a complex input as given.
    fn complex(&self) -> Result<CellComplex> {
        match self {
            Source::Complex(q) => Ok(q.clone()),
            _ => Ok(dual_complex(&self.lattice()?)?),
        }
    }

    /// The complex the Garside structure lives on: the completed dual, or a
    /// complex input as given.
    fn garside_complex(&self) -> Result<CellComplex> {
        match self {
            Source::Complex(q) => Ok(q.clone()),
            _ => Ok(DualComplex::new(&self.lattice()?)?
                .completed()
                .into_complex()),
        }
    }
}

enum Status {
    Pass,
    Fail,
}

impl Status {
    fn of(ok: bool) -> Status {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

fn verdict_line(name: &str, ok: bool, witness: Option<String>) -> String {
    match (ok, witness) {
        (true, _) => format!("{name} PASS\n"),
        (false, Some(w)) => format!("{name} FAIL witness={w}\n"),
        (false, None) => format!("{name} FAIL\n"),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = String::new();
    let status = match run(&cli, &mut out) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(2);
        }
    };
    let written = match &cli.output {
        Some(path) => fs::write(path, &out).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{out}");
            Ok(())
        }
    };
    if let Err(e) = written {
        eprintln!("error: {e:#}");
        return ExitCode::from(2);
    }
    match status {
        Status::Pass => ExitCode::SUCCESS,
        Status::Fail => ExitCode::from(1),
    }
}

fn run(cli: &Cli, out: &mut String) -> Result<Status> {
    let source = Source::load(cli)?;
    match &cli.command {
        Command::Ingest => ingest(&source, out),
        Command::Dual => {
            out.push_str(&dual_complex(&source.lattice()?)?.to_text());
            Ok(Status::Pass)
        }
        Command::Circuits => {
            let cs = circuits_from_topes(&source.lattice()?);
            for c in cs.circuits() {
                writeln!(out, "{c}")?;
            }
            match om_rank(&cs) {
                Ok(r) => writeln!(out, "# rank {r}")?,
                Err(e) => writeln!(out, "# {e}")?,
            }
            Ok(Status::Pass)
        }
        Command::Check { property } => check(cli, &source, *property, out),
        Command::MhReport => {
            let q = source.complex()?;
            let report = check_mh(&q);
            out.push_str(&report.render(&q));
            Ok(Status::of(report.mh.passed()))
        }
        Command::Build { target, reduce } => build(&source, *target, *reduce, out),
        Command::Word {
            mode,
            words,
            words_file,
            start,
        } => {
            let words = gather(words, words_file.as_deref())?;
            word(&source, *mode, &words, start.as_deref(), out)
        }
        Command::Verify => verify(cli, &source, out),
        Command::Oracle {
            op,
            paths,
            paths_file,
        } => {
            let paths = gather(paths, paths_file.as_deref())?;
            oracle(cli, &source, *op, &paths, out)
        }
    }
}

fn gather(items: &[String], file: Option<&Path>) -> Result<Vec<String>> {
    let mut all = items.to_vec();
    if let Some(path) = file {
        let text =
            fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        all.extend(
            text.lines()
                .map(|l| l.split('#').next().unwrap().trim())
                .filter(|l| !l.is_empty())
                .map(String::from),
        );
    }
    Ok(all)
}

fn ingest(source: &Source, out: &mut String) -> Result<Status> {
    match source {
        Source::Complex(q) => {
            writeln!(out, "# complex with f-vector {:?}", q.f_vector())?;
            out.push_str(&q.to_text());
        }
        _ => {
            let fl = source.lattice()?;
            if let Source::Arrangement(a) = source {
                writeln!(out, "# {} hyperplanes in dimension {}", a.len(), a.dim())?;
            }
            writeln!(out, "# {} covectors, {} topes", fl.len(), fl.topes().len())?;
            out.push_str(&save_covectors(&fl));
        }
    }
    Ok(Status::Pass)
}

fn check(cli: &Cli, source: &Source, property: Property, out: &mut String) -> Result<Status> {
    let (name, ok, witness) = match property {
        Property::Qmh | Property::Lmh | Property::Mh => {
            let q = source.complex()?;
            let (name, verdict) = match property {
                Property::Qmh => ("qmh", check_qmh(&q).qmh),
                Property::Lmh => ("lmh", check_lmh(&q)),
                _ => ("mh", check_mh(&q).mh),
            };
            out.push_str(&format!("{name} {}\n", verdict.render(&q)));
            return Ok(Status::of(verdict.passed()));
        }
        Property::Flat => {
            let q = source.garside_complex()?;
            let maps = HemisphereMaps::compute(&q)?;
            let found = PathOracle::new(&q, maps)
                .confined(cli.confine_to_cell)
                .check_flat()?;
            let w = found.map(|(a, b)| format!("[{}] and [{}]", a.render(&q), b.render(&q)));
            ("flat", w.is_none(), w)
        }
        Property::Involutive => {
            let q = source.complex()?;
            match find_involution(&q) {
                Ok(phi) => {
                    let images: Vec<&str> =
                        phi.as_slice().iter().map(|&v| q.vertex_label(v)).collect();
                    writeln!(out, "involutive PASS phi={}", images.join(","))?;
                    return Ok(Status::Pass);
                }
                Err(e) => ("involutive", false, Some(e.to_string())),
            }
        }
        Property::Simplicial => match source {
            Source::Complex(q) => {
                let w = check_simplicial_complex(q)
                    .map(|w| format!("{} {}", q.vertex_label(w.vertex), w.reason));
                ("simplicial", w.is_none(), w)
            }
            _ => {
                let w = check_simplicial(&source.lattice()?)?.map(|w| w.to_string());
                ("simplicial", w.is_none(), w)
            }
        },
        Property::Proper => match source {
            Source::Arrangement(a) => ("proper", check_proper(a), None),
            // a covector input realizes a proper central arrangement
            Source::Covectors(_) => ("proper", true, None),
            Source::Complex(_) => bail!("proper needs an arrangement or covector input"),
        },
        Property::Symmetric => {
            let vectors = match source {
                Source::Covectors(vs) => vs.clone(),
                _ => source.lattice()?.covectors().to_vec(),
            };
            let w = check_symmetric(&vectors).map(|x| format!("{x} without {}", x.neg()));
            ("symmetric", w.is_none(), w)
        }
        Property::OmAxioms => {
            let report = check_om_circuit_axioms(&circuits_from_topes(&source.lattice()?));
            let w = report.failure.map(|(axiom, cs)| {
                let cs: Vec<String> = cs.iter().map(|c| c.to_string()).collect();
                format!("{axiom} {}", cs.join(","))
            });
            ("om-axioms", w.is_none(), w)
        }
    };
    out.push_str(&verdict_line(name, ok, witness));
    Ok(Status::of(ok))
}

fn build(source: &Source, target: Target, reduce: bool, out: &mut String) -> Result<Status> {
    match target {
        Target::Dual => out.push_str(&source.complex()?.to_text()),
        Target::Completed => {
            let q = match source {
                Source::Complex(q) => completed_complex(q),
                _ => source.garside_complex()?,
            };
            out.push_str(&q.to_text());
        }
        Target::Salvetti => out.push_str(&build_salvetti(&source.complex()?)?.complex().to_text()),
        Target::Presentation => {
            let q = source.garside_complex()?;
            let sal = build_salvetti(&q)?;
            let mut p = presentation(&q, &sal)?;
            if reduce {
                p = p.reduce(&sal, 0);
            }
            write!(out, "{p}")?;
            writeln!(out, "# abelianization {}", abelianization(&p))?;
        }
    }
    Ok(Status::Pass)
}

fn parse_vertex(q: &CellComplex, tok: &str) -> Result<usize> {
    if let Some(v) = q.lookup(tok).and_then(|id| q.as_vertex(id)) {
        return Ok(v);
    }
    tok.parse::<usize>()
        .ok()
        .filter(|&v| v < q.num_vertices())
        .ok_or_else(|| anyhow!("unknown vertex `{tok}`"))
}

fn parse_path(q: &CellComplex, text: &str) -> Result<PositivePath> {
    let vs = text
        .split_whitespace()
        .map(|t| parse_vertex(q, t))
        .collect::<Result<Vec<_>>>()?;
    Ok(PositivePath::new(q, vs)?)
}

/// A word of Salvetti letters, or a positive path read as one.
fn parse_word(
    sal: &SalvettiComplex,
    q: &CellComplex,
    text: &str,
) -> Result<(Option<usize>, Vec<Letter>)> {
    let letters: Result<Vec<Letter>, _> = sal.parse_word(text);
    match letters {
        Ok(w) if !w.is_empty() => Ok((mhgarside::garside::word_source(sal, &w), w)),
        _ => {
            let p = parse_path(q, text)?;
            let w = sal
                .lift(&p)
                .into_iter()
                .map(|edge| Letter {
                    edge,
                    inverse: false,
                })
                .collect();
            Ok((Some(p.source()), w))
        }
    }
}

fn word(
    source: &Source,
    mode: WordMode,
    words: &[String],
    start: Option<&str>,
    out: &mut String,
) -> Result<Status> {
    let q = source.garside_complex()?;
    let sal = build_salvetti(&q)?;
    let ctx = make_context(&q, &HemisphereMaps::compute(&q)?)?;
    let start = start.map(|s| parse_vertex(&q, s)).transpose()?;
    let expected = match mode {
        WordMode::NormalForm => None,
        WordMode::Equal => Some(2),
        WordMode::Trivial => Some(1),
    };
    if let Some(n) = expected {
        if words.len() != n {
            bail!("expected {n} word(s), got {}", words.len());
        }
    }
    let mut elements = Vec::new();
    for text in words {
        let (src, w) = parse_word(&sal, &q, text)?;
        let from = start
            .or(src)
            .ok_or_else(|| anyhow!("cannot tell where `{text}` starts; pass --start"))?;
        if src.is_some_and(|s| s != from) {
            bail!("`{text}` does not start at the given start vertex");
        }
        let e = ctx
            .word_to_element(&sal, from, &w)
            .with_context(|| format!("word `{text}`"))?;
        elements.push((from, e));
    }
    match mode {
        WordMode::NormalForm => {
            for (_, e) in &elements {
                writeln!(out, "{}", ctx.render_element(e))?;
            }
            Ok(Status::Pass)
        }
        WordMode::Equal => {
            let same = elements[0] == elements[1];
            writeln!(out, "{}", if same { "EQUAL" } else { "NOT-EQUAL" })?;
            Ok(Status::of(same))
        }
        WordMode::Trivial => {
            let e = &elements[0].1;
            let trivial = e.p == 0 && e.positive.is_identity();
            writeln!(out, "{}", if trivial { "TRIVIAL" } else { "NONTRIVIAL" })?;
            Ok(Status::of(trivial))
        }
    }
}

fn verify(cli: &Cli, source: &Source, out: &mut String) -> Result<Status> {
    if cli.max_len == 0 {
        bail!("--max-len must be at least 1");
    }
    let q = source.garside_complex()?;
    let maps = HemisphereMaps::compute(&q)?;
    let ctx = match make_context(&q, &maps) {
        Ok(ctx) => ctx,
        Err(
            e @ (GarsideError::NotMh(_)
            | GarsideError::NotFlat(_)
            | GarsideError::NotInvolutive(_)
            | GarsideError::NotSimplicial(_)),
        ) => {
            writeln!(out, "context FAIL {e}")?;
            return Ok(Status::Fail);
        }
        Err(e) => return Err(e.into()),
    };
    let report = verify_garside(&ctx, cli.max_len);
    let cases: usize = report.checks.iter().map(|c| c.cases).sum();
    write!(out, "{report}")?;
    writeln!(
        out,
        "{} ({} cases, lengths <= {}, {} vertices)",
        if report.all_passed() {
            "ALL PASS"
        } else {
            "FAIL"
        },
        cases,
        cli.max_len,
        q.num_vertices()
    )?;
    Ok(Status::of(report.all_passed()))
}

fn oracle(
    cli: &Cli,
    source: &Source,
    op: OracleOp,
    paths: &[String],
    out: &mut String,
) -> Result<Status> {
    let q = source.garside_complex()?;
    let o = PathOracle::new(&q, HemisphereMaps::compute(&q)?).confined(cli.confine_to_cell);
    let arity = match op {
        OracleOp::Geodesics | OracleOp::Moves | OracleOp::Class | OracleOp::Key => 1,
        _ => 2,
    };
    if paths.len() != arity {
        bail!("expected {arity} path(s), got {}", paths.len());
    }
    if let OracleOp::Geodesics = op {
        let ends: Vec<usize> = paths[0]
            .split_whitespace()
            .map(|t| parse_vertex(&q, t))
            .collect::<Result<_>>()?;
        let [v, w] = ends[..] else {
            bail!("geodesics takes two vertices");
        };
        for p in o.enumerate_minimal_paths(v, w) {
            writeln!(out, "{}", p.render(&q))?;
        }
        return Ok(Status::Pass);
    }
    let ps: Vec<PositivePath> = paths
        .iter()
        .map(|t| parse_path(&q, t))
        .collect::<Result<_>>()?;
    let yes_no = |b: bool, out: &mut String| -> Result<Status> {
        writeln!(out, "{}", if b { "YES" } else { "NO" })?;
        Ok(Status::of(b))
    };
    match op {
        OracleOp::Geodesics => unreachable!(),
        OracleOp::Moves => {
            for m in o.elementary_moves(&ps[0]) {
                writeln!(out, "{}", m.render(&q))?;
            }
        }
        OracleOp::Class => {
            for m in &o.class(&ps[0])?.members {
                writeln!(out, "{}", m.render(&q))?;
            }
        }
        OracleOp::Key => writeln!(out, "{}", o.key(&ps[0])?.render(&q))?,
        OracleOp::Equivalent => return yes_no(o.equivalent(&ps[0], &ps[1])?, out),
        OracleOp::LeftDivides => return yes_no(o.left_divides(&ps[0], &ps[1])?, out),
        OracleOp::RightDivides => return yes_no(o.right_divides(&ps[0], &ps[1])?, out),
        OracleOp::Meet => writeln!(out, "{}", o.meet(&ps[0], &ps[1])?.render(&q))?,
        OracleOp::Join => writeln!(out, "{}", o.join(&ps[0], &ps[1])?.render(&q))?,
    }
    Ok(Status::Pass)
}
