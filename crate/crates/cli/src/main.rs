//! `fewev`: build, inspect and certify graphs with few distinct eigenvalues.
//!
//! Graphs travel as graph6 lines on stdin/stdout; lines starting with `#`
//! are comments. Output is buffered: a usage or format error prints nothing
//! on stdout, and a failed check prints only a complete report (census diff,
//! feasibility checks) before its one-line error on stderr.
//! Exit codes: 0 pass, 1 check failed, 2 usage or format error.

mod exact;

use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use fewev::census::{compare_tables, parse_table, CellKey, CensusTable, TableDiff};
use fewev::construct::{
    mohar_graph, paley_graph, spider, standard_family, symplectic_graph, symplectic_rep, theorem1_graph,
    theorem3_graph, ComplementSpectrum, Side,
};
use fewev::graphcore::{complete_bipartite, graph6, Graph};
use fewev::spectra::{cluster, graph_spectrum, srg_certificate, MatrixKind, Spectrum, DEFAULT_CLUSTER_TOL};
use fewev::twograph::{audit, detect, putative_three_ev_check};
use fewev::{Error, Execution};
use serde::Deserialize;

#[derive(Parser)]
#[command(name = "fewev", version, about = "Graphs with few distinct eigenvalues and many valencies")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Emit a construction as graph6.
    Build {
        #[command(subcommand)]
        what: Construction,
    },
    /// Adjacency (or Seidel) spectrum of each input graph.
    Spectrum {
        /// Clustering tolerance.
        #[arg(long, default_value_t = DEFAULT_CLUSTER_TOL)]
        tol: f64,
        /// Print quadratic surds in closed form.
        #[arg(long)]
        exact: bool,
        /// Use the Seidel matrix J − I − 2A.
        #[arg(long)]
        seidel: bool,
    },
    /// Certify each input graph.
    Verify {
        /// Strongly regular parameters.
        #[arg(long)]
        srg: bool,
        /// Regular two-graph parameters of the switching class.
        #[arg(long)]
        two_graph: bool,
    },
    /// Census of the switching class of the input graph.
    Census {
        #[command(flatten)]
        threads: Threads,
        /// Split a cell `rho:valencies` into isomorphism classes (repeatable).
        #[arg(long)]
        cell: Vec<String>,
        /// Compare against a stored table and emit the differences.
        #[arg(long, value_name = "REF")]
        table: Option<PathBuf>,
        /// Write one graph6 representative per classified class to this file.
        #[arg(long, value_name = "FILE")]
        reps: Option<PathBuf>,
    },
    /// Embed the input pattern in a symplectic graph and switch on its image.
    Embed,
    /// Structural audit inside the input graph's regular two-graph.
    Audit {
        /// Audit every member of the switching class.
        #[arg(long)]
        class: bool,
        #[command(flatten)]
        threads: Threads,
    },
    /// Consistency checks of a putative parameter set (JSON).
    Feasibility { file: PathBuf },
}

#[derive(Args)]
struct Threads {
    /// Worker threads; 1 runs sequentially.
    #[arg(long)]
    threads: Option<usize>,
}

#[derive(Subcommand)]
enum Construction {
    /// Path with f pendant paths of length two at its centre.
    Spider { f: usize },
    CompleteBipartite { a: usize, b: usize },
    /// Bipartite five-eigenvalue graph on the standard family with t valencies.
    Theorem1 {
        t: u32,
        /// Colour class joined to the apex, one A or B per component, e.g. `AB`.
        #[arg(long)]
        side: Option<String>,
    },
    /// Complement of the standard family with t valencies.
    Theorem3 { t: u32 },
    /// Standard family with an apex joined to chosen vertices of each component.
    Mohar {
        t: u32,
        /// Comma-separated vertex indices, one flag per component.
        #[arg(long, required = true)]
        attach: Vec<String>,
    },
    /// Symplectic two-graph representative on 2^(2r) vertices.
    SymplecticRep { r: u32 },
    /// Symplectic graph Sp(2r).
    Symplectic { r: u32 },
    Paley { q: usize },
}

/// Why a command stopped.
enum Failure {
    Usage(String),
    Check(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Check(_) => 1,
            Failure::Usage(_) => 2,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Check(m) | Failure::Usage(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let msg = e.to_string();
        match e {
            Error::Graph6 { .. } | Error::InvalidParameter(_) | Error::SizeExceeded { .. } | Error::UnknownCell(_) => {
                Failure::Usage(msg)
            }
            _ => Failure::Check(msg),
        }
    }
}

type Outcome = Result<String, Failure>;

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn read_file(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))
}

fn read_graphs(input: &str) -> Result<Vec<Graph>, Failure> {
    let mut graphs = Vec::new();
    for (i, line) in input.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        graphs.push(graph6::decode(line).map_err(|e| usage(format!("line {}: {e}", i + 1)))?);
    }
    if graphs.is_empty() {
        return Err(usage("no graph6 input"));
    }
    Ok(graphs)
}

fn read_one(input: &str) -> Result<Graph, Failure> {
    let mut graphs = read_graphs(input)?;
    if graphs.len() != 1 {
        return Err(usage(format!("expected one graph, got {}", graphs.len())));
    }
    Ok(graphs.remove(0))
}

fn execution(threads: &Threads) -> Result<Execution, Failure> {
    match threads.threads {
        Some(0) => Err(usage("--threads must be positive")),
        Some(1) => Ok(Execution::Sequential),
        #[cfg(not(feature = "parallel"))]
        Some(_) => Err(usage("--threads above 1 needs the parallel feature")),
        _ => Ok(Execution::default()),
    }
}

/// Runs `f` on a pool of the requested size when one was asked for.
fn with_threads<T: Send>(threads: &Threads, f: impl FnOnce() -> T + Send) -> Result<T, Failure> {
    #[cfg(feature = "parallel")]
    if let Some(n) = threads.threads.filter(|&n| n > 1) {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(n).build().map_err(|e| usage(e.to_string()))?;
        return Ok(pool.install(f));
    }
    let _ = threads;
    Ok(f())
}

fn parse_sides(spec: &str, f: usize) -> Result<Vec<Side>, Failure> {
    let sides: Vec<Side> = spec
        .chars()
        .map(|c| match c {
            'A' | 'a' => Ok(Side::A),
            'B' | 'b' => Ok(Side::B),
            _ => Err(usage(format!("--side: expected A or B, found {c:?}"))),
        })
        .collect::<Result<_, _>>()?;
    if sides.len() != f {
        return Err(usage(format!("--side needs {f} letters, got {}", sides.len())));
    }
    Ok(sides)
}

fn parse_indices(list: &str) -> Result<Vec<usize>, Failure> {
    list.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| s.trim().parse().map_err(|_| usage(format!("--attach: bad vertex index {s:?}"))))
        .collect()
}

fn build(what: &Construction) -> Result<Graph, Failure> {
    Ok(match what {
        Construction::Spider { f } => spider(*f),
        Construction::CompleteBipartite { a, b } => complete_bipartite(*a, *b),
        Construction::Theorem1 { t, side } => {
            let fam = standard_family(*t)?;
            let sides = match side {
                Some(s) => parse_sides(s, fam.f())?,
                None => vec![Side::default(); fam.f()],
            };
            theorem1_graph(&fam, &sides)
        }
        Construction::Theorem3 { t } => {
            let fam = standard_family(*t)?;
            ComplementSpectrum::new(fam.order(), fam.e(), fam.f()).check_distinct(DEFAULT_CLUSTER_TOL)?;
            theorem3_graph(&fam)?
        }
        Construction::Mohar { t, attach } => {
            let fam = standard_family(*t)?;
            let attach = attach.iter().map(|a| parse_indices(a)).collect::<Result<Vec<_>, _>>()?;
            mohar_graph(&fam, &attach)?
        }
        Construction::SymplecticRep { r } => symplectic_rep(*r)?,
        Construction::Symplectic { r } => symplectic_graph(*r)?,
        Construction::Paley { q } => paley_graph(*q)?,
    })
}

fn spectrum_line(spec: &Spectrum, exact: bool) -> String {
    if exact {
        exact::format_exact(spec)
    } else {
        spec.to_string()
    }
}

fn cmd_spectrum(input: &str, tol: f64, exact: bool, seidel: bool) -> Outcome {
    let kind = if seidel { MatrixKind::Seidel } else { MatrixKind::Adjacency };
    let mut out = String::new();
    for g in read_graphs(input)? {
        out += &spectrum_line(&graph_spectrum(&g, kind, tol)?, exact);
        out.push('\n');
    }
    Ok(out)
}

fn cmd_verify(input: &str, srg: bool, two_graph: bool) -> Outcome {
    let mut out = String::new();
    for (i, g) in read_graphs(input)?.iter().enumerate() {
        let mut fields = Vec::new();
        if srg {
            let p = srg_certificate(g).map_err(|e| Failure::Check(format!("graph {}: {e}", i + 1)))?;
            fields.push(format!("srg {p}"));
        }
        if two_graph {
            let p = detect(g).map_err(|e| Failure::Check(format!("graph {}: {e}", i + 1)))?;
            fields.push(format!("two-graph {p}"));
        }
        out += &fields.join("\t");
        out.push('\n');
    }
    Ok(out)
}

fn cmd_census(input: &str, threads: &Threads, cells: &[String], table: Option<&Path>, reps: Option<&Path>) -> Outcome {
    let exec = execution(threads)?;
    let keys = cells.iter().map(|c| c.parse::<CellKey>().map_err(usage)).collect::<Result<Vec<_>, _>>()?;
    let reference = match table {
        Some(path) => Some(parse_table(&read_file(path)?).map_err(|e| usage(format!("{}: {e}", path.display())))?),
        None => None,
    };
    let g = read_one(input)?;
    let table: CensusTable = with_threads(threads, || -> Result<CensusTable, Error> {
        let mut table = fewev::census::census_table_with(&g, exec)?;
        for key in &keys {
            table.classify(&g, key, exec)?;
        }
        Ok(table)
    })??;
    if let Some(path) = reps {
        std::fs::write(path, table.representatives_tsv())
            .map_err(|e| usage(format!("cannot write {}: {e}", path.display())))?;
    }
    let mut out = table.to_tsv();
    out += &format!("# total\t{}\n", table.total());
    if let Some(reference) = reference {
        let diffs: Vec<TableDiff> = compare_tables(&table, &reference);
        out += &format!("# diff\t{}\n", diffs.len());
        for d in &diffs {
            out += &format!("# {d}\n");
        }
        if !diffs.is_empty() {
            // The table and its diff are the result; the failure is the mismatch.
            print!("{out}");
            return Err(Failure::Check(format!("census differs from reference in {} cells", diffs.len())));
        }
    }
    Ok(out)
}

fn cmd_embed(input: &str) -> Outcome {
    let delta = read_one(input)?;
    let rep = fewev::embed::theorem8_build(&delta)?;
    let mut out = graph6::encode(&rep.result);
    out.push('\n');
    let image = rep.image_valencies();
    let map: Vec<String> = rep.embedding.map.iter().map(|v| v.to_string()).collect();
    out += &format!("# rank\t{}\n", rep.r);
    out += &format!("# order\t{}\n", rep.result.order());
    out += &format!("# embedding\t{}\n", map.join(","));
    out += &format!("# spectrum\t{}\n", rep.spectrum);
    out += &format!("# image valencies\t{image}\n");
    out += &format!("# predicted valencies\t{}\n", rep.predicted_valencies);
    let local = match rep.local_graph_check {
        Some(true) => "recovers pattern",
        Some(false) => "differs from pattern",
        None => "no unique vertex of valency n",
    };
    out += &format!("# local graph\t{local}\n");
    for note in &rep.notes {
        out += &format!("# note\t{note}\n");
    }
    if image != rep.predicted_valencies {
        return Err(Failure::Check(format!("image valencies {image} differ from predicted {}", rep.predicted_valencies)));
    }
    if rep.local_graph_check == Some(false) {
        return Err(Failure::Check("local graph of the valency-n vertex is not the pattern".into()));
    }
    Ok(out)
}

fn cmd_audit(input: &str, class: bool, threads: &Threads) -> Outcome {
    let exec = execution(threads)?;
    let g = read_one(input)?;
    let mut out = String::new();
    if class {
        let a = with_threads(threads, || fewev::census::audit_class(&g, exec))??;
        out += &format!("two-graph\t{}\n", a.params);
        out += &format!("members\t{}\n", a.members);
        out += &format!("disconnected\t{}\n", a.disconnected);
        out += &format!("at most three eigenvalues\t{}\n", a.few_eigenvalues);
        out += &format!("bipartite\t{}\n", a.bipartite);
        for (p, n) in &a.srgs {
            out += &format!("srg {p}\t{n}\n");
        }
        out += &format!("violations\t{}\n", a.violations.len());
        if let Some((mask, v)) = a.violations.first() {
            return Err(Failure::Check(format!("member {mask}: {v}")));
        }
    } else {
        let p = detect(&g)?;
        let rep = audit(&g, &p)?;
        out += &format!("two-graph\t{p}\n");
        out += &format!("edges\t{}\n", rep.edges);
        out += &format!("distinct eigenvalues\t{}\n", rep.distinct_eigenvalues);
        out += &format!("connected\t{}\nbipartite\t{}\nregular\t{}\n", rep.connected, rep.bipartite, rep.regular);
        for b in &rep.fired {
            out += &format!("branch\t{b:?}\n");
        }
        if let Some(s) = rep.srg {
            out += &format!("srg {s}\n");
        }
        out += &format!("violations\t{}\n", rep.violations.len());
        if let Some(v) = rep.violations.first() {
            return Err(Failure::Check(v.clone()));
        }
    }
    Ok(out)
}

/// Parameter file for `feasibility`.
#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PutativeParams {
    quotient: Vec<Vec<i64>>,
    /// `[value, multiplicity]` pairs.
    spectrum: Vec<(f64, usize)>,
    /// `[valency, class size]` pairs.
    valencies: Vec<(i64, i64)>,
}

fn cmd_feasibility(path: &Path) -> Outcome {
    let params: PutativeParams =
        serde_json::from_str(&read_file(path)?).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    let values: Vec<f64> = params.spectrum.iter().flat_map(|&(x, m)| std::iter::repeat_n(x, m)).collect();
    let report = putative_three_ev_check(&params.quotient, &cluster(&values, DEFAULT_CLUSTER_TOL), &params.valencies);
    let mut out = String::new();
    for c in &report.checks {
        out += &format!("{}\t{}\t{}\n", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail);
    }
    if let Some(c) = report.checks.iter().find(|c| !c.passed) {
        print!("{out}");
        return Err(Failure::Check(format!("{}: {}", c.name, c.detail)));
    }
    Ok(out)
}

fn stdin_text() -> Result<String, Failure> {
    let mut s = String::new();
    std::io::stdin().read_to_string(&mut s).map_err(|e| usage(format!("cannot read stdin: {e}")))?;
    Ok(s)
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Build { what } => Ok(graph6::encode(&build(&what)?) + "\n"),
        Command::Spectrum { tol, exact, seidel } => {
            if !(tol > 0.0 && tol < 1.0) {
                return Err(usage("--tol must lie in (0, 1)"));
            }
            cmd_spectrum(&stdin_text()?, tol, exact, seidel)
        }
        Command::Verify { srg, two_graph } => {
            if !srg && !two_graph {
                return Err(usage("verify needs --srg, --two-graph, or both"));
            }
            cmd_verify(&stdin_text()?, srg, two_graph)
        }
        Command::Census { threads, cell, table, reps } => {
            execution(&threads)?;
            cmd_census(&stdin_text()?, &threads, &cell, table.as_deref(), reps.as_deref())
        }
        Command::Embed => cmd_embed(&stdin_text()?),
        Command::Audit { class, threads } => {
            execution(&threads)?;
            cmd_audit(&stdin_text()?, class, &threads)
        }
        Command::Feasibility { file } => cmd_feasibility(&file),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let text = e.to_string();
            let first = text.lines().next().unwrap_or("invalid arguments");
            eprintln!("error: {}", first.trim_start_matches("error: "));
            return ExitCode::from(2);
        }
    };
    match run(cli) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(out.as_bytes()).and_then(|_| stdout.flush()).is_err() {
                return ExitCode::from(2);
            }
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("error: {}", f.message().replace('\n', " "));
            ExitCode::from(f.code())
        }
    }
}
