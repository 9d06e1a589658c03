//! `qgeom`: command-line front end for the finite geometry workbench.
//!
//! Exit codes: 0 on success, 1 on errors, 2 when a search ran out of nodes,
//! 10 when a search certified that no solution exists.

use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use qgeom_core::designs::{self, BlockSet, DesignParams, LambdaTriangle};
use qgeom_core::gq::{self, IncidenceStructure};
use qgeom_core::search::{self, Mode, SearchCertificate, SearchOptions};
use qgeom_core::{BilinearForm, FieldReduction, FieldSpec, PointId, ProjectiveSpace, SCHEMA_VERSION};

const EXIT_BUDGET: u8 = 2;
const EXIT_NONEXISTENCE: u8 = 10;

#[derive(Parser)]
#[command(name = "qgeom", version, about = "Finite geometry workbench")]
struct Cli {
    /// Machine-readable output.
    #[arg(long, global = true)]
    json: bool,
    /// Also write a run report (command, input digest, payload, wall time).
    #[arg(long, global = true, value_name = "FILE")]
    report: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Arithmetic tables of F_q, or the multiplication matrices of F_{q^k} over F_q.
    Field {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        k: Option<usize>,
    },
    /// λ-triangle and admissibility of t-(v,k,λ)_q.
    Lambda(ParamArgs),
    #[command(subcommand)]
    Gq(GqCommand),
    #[command(subcommand)]
    Search(SearchCommand),
    #[command(subcommand)]
    Design(DesignCommand),
}

#[derive(Args, Clone, Copy)]
struct ParamArgs {
    #[arg(long)]
    t: usize,
    #[arg(long)]
    v: usize,
    #[arg(long)]
    k: usize,
    /// λ
    #[arg(long, short = 'l', default_value_t = 1)]
    l: u64,
    #[arg(long)]
    q: u32,
}

impl ParamArgs {
    fn params(&self) -> Result<DesignParams> {
        Ok(DesignParams::new(self.t, self.v, self.k, self.l, self.q)?)
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum GqType {
    #[value(name = "W")]
    W,
    #[value(name = "Q4")]
    Q4,
}

#[derive(Subcommand)]
enum GqCommand {
    /// Build W(q) or Q(4,q).
    Build {
        #[arg(long = "type", value_enum)]
        kind: GqType,
        #[arg(long)]
        q: u32,
        #[arg(long, default_value = "-")]
        out: String,
    },
    /// Check the quadrangle axioms and report the order.
    Check { file: String },
    /// Swap points and lines.
    Dual {
        file: String,
        #[arg(long, default_value = "-")]
        out: String,
    },
    /// Search for an incidence-preserving bijection.
    Iso {
        a: String,
        b: String,
        #[arg(long, default_value_t = gq::ISO_NODE_LIMIT)]
        limit: u64,
    },
}

#[derive(Args, Clone)]
struct SearchFlags {
    /// first | all | count | nonexistence
    #[arg(long)]
    mode: Option<Mode>,
    /// Node budget; scientific notation such as 1e7 is accepted.
    #[arg(long, value_parser = parse_count)]
    limit: Option<u64>,
    #[arg(long, default_value_t = 1)]
    max_solutions: usize,
    /// Shuffles the option order; absent means seed 0.
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, env = "QGEOM_WORKERS", default_value_t = 1)]
    workers: usize,
    /// Certificate destination.
    #[arg(long, default_value = "-")]
    out: String,
}

impl SearchFlags {
    fn options(&self, default_mode: Mode) -> SearchOptions {
        SearchOptions {
            mode: self.mode.unwrap_or(default_mode),
            max_solutions: self.max_solutions,
            node_limit: self.limit.unwrap_or(search::DEFAULT_NODE_LIMIT),
            seed: Some(self.seed.unwrap_or(0)),
            workers: self.workers,
        }
    }
}

fn parse_count(s: &str) -> std::result::Result<u64, String> {
    if let Ok(n) = s.parse::<u64>() {
        return Ok(n);
    }
    match s.parse::<f64>() {
        Ok(x) if x >= 0.0 && x.fract() == 0.0 && x <= u64::MAX as f64 => Ok(x as u64),
        _ => Err(format!("not a node count: {s}")),
    }
}

#[derive(Subcommand)]
enum SearchCommand {
    /// All spreads of a quadrangle.
    Spreads {
        file: String,
        #[command(flatten)]
        flags: SearchFlags,
    },
    /// All ovoids of a quadrangle.
    Ovoids {
        file: String,
        #[command(flatten)]
        flags: SearchFlags,
    },
    /// Partitions of the line set into spreads.
    PartitionSpreads {
        file: String,
        #[command(flatten)]
        flags: SearchFlags,
    },
    /// Partitions of the point set into ovoids.
    PartitionOvoids {
        file: String,
        #[command(flatten)]
        flags: SearchFlags,
    },
    /// Line spreads of PG(v-1,q).
    PgSpreads {
        #[arg(long)]
        v: usize,
        #[arg(long)]
        q: u32,
        #[command(flatten)]
        flags: SearchFlags,
        /// Write one spread as a block set.
        #[arg(long)]
        blocks_out: Option<String>,
        /// Choose the first spread that is not geometric for --blocks-out.
        #[arg(long)]
        pick_non_geometric: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum FormArg {
    Standard,
    Symplectic,
}

#[derive(Subcommand)]
enum DesignCommand {
    /// Check the t-design property.
    Check {
        file: String,
        #[command(flatten)]
        params: ParamArgs,
    },
    /// Orthogonal complements of all blocks.
    Dual {
        file: String,
        #[arg(long, value_enum, default_value = "standard")]
        form: FormArg,
        #[arg(long, default_value = "-")]
        out: String,
    },
    /// Blocks through a point, in the quotient by that point.
    Derive {
        file: String,
        #[arg(long)]
        point: usize,
        #[arg(long, default_value = "-")]
        out: String,
    },
    /// The Desarguesian (k-1)-spread of PG(v-1,q).
    SpreadGen {
        #[arg(long)]
        v: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        q: u32,
        #[arg(long, default_value = "-")]
        out: String,
    },
    /// Whether a spread is geometric.
    Geometric { file: String },
    /// Whether the derived design at a point is a geometric spread.
    Alpha {
        file: String,
        #[arg(long)]
        point: usize,
    },
    /// The β-flat micro-model over F_q and the checks on it.
    BetaModel {
        #[arg(long)]
        q: u32,
    },
}

/// What a command produced.
struct Outcome {
    /// Human rendering.
    text: String,
    /// Machine rendering; written instead of `text` under `--json`.
    payload: Value,
    /// Document written to `--out`, if the command has one.
    document: Option<(String, Value)>,
    exit: u8,
}

impl Outcome {
    fn report(text: String, payload: Value) -> Self {
        Outcome { text, payload, document: None, exit: 0 }
    }

    fn document<T: Serialize>(out: &str, value: &T, text: String) -> Result<Self> {
        let v = serde_json::to_value(value)?;
        Ok(Outcome { text, payload: v.clone(), document: Some((out.to_string(), v)), exit: 0 })
    }
}

#[derive(Serialize)]
struct RunReport {
    schema_version: u32,
    version: &'static str,
    command: Vec<String>,
    inputs_digest: String,
    output: Value,
    wall_time_ms: u128,
    exit_code: u8,
}

/// Reads every input once so that the report can hash them.
#[derive(Default)]
struct Inputs {
    hasher: Sha256,
    stdin_used: bool,
}

impl Inputs {
    fn read(&mut self, path: &str) -> Result<Vec<u8>> {
        let mut buf = Vec::new();
        if path == "-" {
            if std::mem::replace(&mut self.stdin_used, true) {
                bail!("stdin can be read only once");
            }
            std::io::stdin().read_to_end(&mut buf).context("reading stdin")?;
        } else {
            buf = std::fs::read(path).with_context(|| format!("reading {path}"))?;
        }
        self.hasher.update(&buf);
        Ok(buf)
    }

    fn json<T: serde::de::DeserializeOwned>(&mut self, path: &str) -> Result<T> {
        let buf = self.read(path)?;
        serde_json::from_slice(&buf).with_context(|| format!("parsing {path}"))
    }
}

fn write_to(path: &str, text: &str) -> Result<()> {
    if path == "-" {
        let mut out = std::io::stdout().lock();
        out.write_all(text.as_bytes())?;
        out.flush()?;
    } else {
        std::fs::write(path, text).with_context(|| format!("writing {path}"))?;
    }
    Ok(())
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let mut inputs = Inputs::default();
    let result = run(&cli.command, &mut inputs);
    let outcome = match result {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(1);
        }
    };
    if let Err(e) = emit(&cli, &outcome, inputs, start) {
        eprintln!("error: {e:#}");
        return ExitCode::from(1);
    }
    ExitCode::from(outcome.exit)
}

fn emit(cli: &Cli, outcome: &Outcome, inputs: Inputs, start: Instant) -> Result<()> {
    let doc_to_stdout = matches!(&outcome.document, Some((p, _)) if p == "-");
    if let Some((path, doc)) = &outcome.document {
        write_to(path, &pretty(doc))?;
    }
    let summary = if cli.json { pretty(&outcome.payload) } else { format!("{}\n", outcome.text) };
    if doc_to_stdout {
        // the document owns stdout
        if !cli.json {
            eprint!("{summary}");
        }
    } else {
        write_to("-", &summary)?;
    }
    if let Some(path) = &cli.report {
        let report = RunReport {
            schema_version: SCHEMA_VERSION,
            version: env!("CARGO_PKG_VERSION"),
            command: std::env::args().collect(),
            inputs_digest: hex::encode(inputs.hasher.finalize()),
            output: outcome.payload.clone(),
            wall_time_ms: start.elapsed().as_millis(),
            exit_code: outcome.exit,
        };
        std::fs::write(path, pretty(&serde_json::to_value(report)?)).with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(())
}

fn run(cmd: &Command, inputs: &mut Inputs) -> Result<Outcome> {
    match cmd {
        Command::Field { q, k } => cmd_field(*q, *k),
        Command::Lambda(p) => cmd_lambda(p),
        Command::Gq(g) => cmd_gq(g, inputs),
        Command::Search(s) => cmd_search(s, inputs),
        Command::Design(d) => cmd_design(d, inputs),
    }
}

fn cmd_field(q: u32, k: Option<usize>) -> Result<Outcome> {
    let f = FieldSpec::new(q)?;
    let elems: Vec<_> = f.elements().collect();
    let names: Vec<String> = elems.iter().map(|&a| f.render(a)).collect();
    let table = |op: &dyn Fn(_, _) -> qgeom_core::FieldElement| -> Vec<Vec<usize>> {
        elems.iter().map(|&a| elems.iter().map(|&b| op(a, b).index()).collect()).collect()
    };
    let add = table(&|a, b| f.add(a, b));
    let mul = table(&|a, b| f.mul(a, b));
    let mut payload = json!({
        "schema_version": SCHEMA_VERSION,
        "q": f.q(), "p": f.p(), "e": f.e(),
        "modulus": f.modulus(),
        "elements": names,
        "add": add,
        "mul": mul,
    });
    let mut text = format!("F_{q} = F_{}[x]/({})\nelements: {}\n", f.p(), render_modulus(f.modulus()), names.join(", "));
    text.push_str(&render_table("+", &names, &add));
    text.push_str(&render_table("*", &names, &mul));
    if let Some(k) = k {
        let fr = FieldReduction::new(q, k)?;
        let mats: Vec<Vec<Vec<usize>>> = fr
            .mul_matrices()
            .iter()
            .map(|m| m.iter().map(|r| r.iter().map(|x| x.index()).collect()).collect())
            .collect();
        let ext: Vec<usize> = fr.ext_modulus().iter().map(|x| x.index()).collect();
        payload["reduction"] = json!({ "k": k, "ext_order": fr.ext_order(), "ext_modulus": ext, "matrices": mats });
        text.push_str(&format!("F_{} over F_{q}: {} multiplication matrices of size {k}x{k}\n", fr.ext_order(), mats.len()));
    }
    Ok(Outcome::report(text.trim_end().to_string(), payload))
}

fn render_modulus(coeffs: &[u32]) -> String {
    let mut terms = Vec::new();
    for (i, &c) in coeffs.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let mono = match i {
            0 => String::new(),
            1 => "x".into(),
            _ => format!("x^{i}"),
        };
        terms.push(match (c, mono.is_empty()) {
            (_, true) => c.to_string(),
            (1, false) => mono,
            _ => format!("{c}{mono}"),
        });
    }
    terms.join("+")
}

fn render_table(op: &str, names: &[String], t: &[Vec<usize>]) -> String {
    let w = names.iter().map(String::len).max().unwrap_or(1);
    let mut s = format!("{op:>w$} |");
    for n in names {
        s.push_str(&format!(" {n:>w$}"));
    }
    s.push('\n');
    for (i, row) in t.iter().enumerate() {
        s.push_str(&format!("{:>w$} |", names[i]));
        for &x in row {
            s.push_str(&format!(" {:>w$}", names[x]));
        }
        s.push('\n');
    }
    s
}

fn cmd_lambda(p: &ParamArgs) -> Result<Outcome> {
    let params = p.params()?;
    let tri = LambdaTriangle::new(&params);
    let adm = designs::admissible(&params);
    let rows: Vec<Vec<String>> = tri.rows.iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect();
    let verdict = match adm.first_failure {
        None => "admissible".to_string(),
        Some(s) => format!("not admissible (λ_{s} = {})", adm.lambdas[s]),
    };
    let mut text = format!("{params}\n{tri}");
    text.push_str(&verdict);
    let payload = json!({
        "schema_version": SCHEMA_VERSION,
        "params": params,
        "triangle": rows,
        "admissible": adm.admissible,
        "lambdas": adm.lambdas.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
        "first_failure": adm.first_failure,
    });
    Ok(Outcome::report(text, payload))
}

fn cmd_gq(cmd: &GqCommand, inputs: &mut Inputs) -> Result<Outcome> {
    match cmd {
        GqCommand::Build { kind, q, out } => {
            let (s, name) = match kind {
                GqType::W => (gq::build_w(*q)?, format!("W({q})")),
                GqType::Q4 => (gq::build_q4(*q)?, format!("Q(4,{q})")),
            };
            let text = format!("{name}: {} points, {} lines", s.n_points(), s.n_lines());
            Outcome::document(out, &s, text)
        }
        GqCommand::Check { file } => {
            let s: IncidenceStructure = inputs.json(file)?;
            let r = gq::check_gq(&s);
            let text = match (r.order, r.is_gq()) {
                (Some(o), _) => format!(
                    "GQ of order ({},{}){}",
                    o.s,
                    o.t,
                    if r.degenerate { ", degenerate" } else { "" }
                ),
                (None, true) => "GQ without constant order".to_string(),
                (None, false) => {
                    let failed: Vec<&str> = [(r.nonempty, "nonempty"), (r.axiom_i, "(i)"), (r.axiom_ii, "(ii)"), (r.axiom_iii, "(iii)")]
                        .iter()
                        .filter(|(ok, _)| !ok)
                        .map(|(_, n)| *n)
                        .collect();
                    format!("not a GQ: {} fails", failed.join(", "))
                }
            };
            let mut payload = serde_json::to_value(&r)?;
            payload["schema_version"] = json!(SCHEMA_VERSION);
            Ok(Outcome::report(text, payload))
        }
        GqCommand::Dual { file, out } => {
            let s: IncidenceStructure = inputs.json(file)?;
            let d = gq::dualize_structure(&s);
            let text = format!("dual: {} points, {} lines", d.n_points(), d.n_lines());
            Outcome::document(out, &d, text)
        }
        GqCommand::Iso { a, b, limit } => {
            let sa: IncidenceStructure = inputs.json(a)?;
            let sb: IncidenceStructure = inputs.json(b)?;
            let iso = gq::is_isomorphic_with_limit(&sa, &sb, *limit)?;
            let text = match &iso {
                Some(m) => format!("isomorphic\npoints: {:?}\nlines: {:?}", m.points, m.lines),
                None => "not isomorphic".to_string(),
            };
            let payload = json!({ "schema_version": SCHEMA_VERSION, "isomorphic": iso.is_some(), "bijection": iso });
            Ok(Outcome::report(text, payload))
        }
    }
}

fn certificate_exit(c: &SearchCertificate) -> u8 {
    if !c.completed {
        EXIT_BUDGET
    } else if c.certifies_nonexistence() {
        EXIT_NONEXISTENCE
    } else {
        0
    }
}

fn summarize(what: &str, c: &SearchCertificate) -> String {
    let status = if !c.completed {
        "budget exceeded"
    } else if c.certifies_nonexistence() {
        "nonexistence certified"
    } else if c.exhausted {
        "complete"
    } else {
        "stopped at solution cap"
    };
    let mut sizes: Vec<usize> = c.solutions.iter().map(Vec::len).collect();
    sizes.sort_unstable();
    sizes.dedup();
    let sizes: Vec<String> = sizes.iter().map(usize::to_string).collect();
    let size_note = if sizes.is_empty() { String::new() } else { format!(", sizes {}", sizes.join("/")) };
    format!("{what}: {} found{size_note}, {} nodes, {status}", c.solution_count, c.nodes)
}

fn cmd_search(cmd: &SearchCommand, inputs: &mut Inputs) -> Result<Outcome> {
    match cmd {
        SearchCommand::Spreads { file, flags } | SearchCommand::Ovoids { file, flags } => {
            let s: IncidenceStructure = inputs.json(file)?;
            let opts = flags.options(Mode::All);
            let (what, c) = if matches!(cmd, SearchCommand::Spreads { .. }) {
                ("spreads", search::enumerate_gq_spreads(&s, &opts)?)
            } else {
                ("ovoids", search::enumerate_gq_ovoids(&s, &opts)?)
            };
            let mut o = Outcome::document(&flags.out, &c, summarize(what, &c))?;
            o.exit = certificate_exit(&c);
            Ok(o)
        }
        SearchCommand::PartitionSpreads { file, flags } | SearchCommand::PartitionOvoids { file, flags } => {
            let s: IncidenceStructure = inputs.json(file)?;
            let opts = flags.options(Mode::All);
            let spreads = matches!(cmd, SearchCommand::PartitionSpreads { .. });
            let result = if spreads {
                search::partition_into_spreads(&s, &opts)
            } else {
                search::partition_into_ovoids(&s, &opts)
            };
            let p = match result {
                Err(qgeom_core::Error::BudgetExceeded(m)) => {
                    eprintln!("budget exceeded: {m}");
                    let payload = json!({ "schema_version": SCHEMA_VERSION, "completed": false });
                    return Ok(Outcome { text: "budget exceeded".into(), payload, document: None, exit: EXIT_BUDGET });
                }
                r => r?,
            };
            let (part, whole) = if spreads { ("spreads", "line set") } else { ("ovoids", "point set") };
            let m = search::pairwise_intersection_matrix(&p.parts);
            let text = format!(
                "{}\npairwise intersecting: {}\n{}",
                summarize(part, &p.parts),
                search::all_pairs_intersect(&m),
                summarize(&format!("partitions of the {whole} into {part}"), &p.partition)
            );
            let mut o = Outcome::document(&flags.out, &p, text)?;
            o.exit = certificate_exit(&p.partition);
            Ok(o)
        }
        SearchCommand::PgSpreads { v, q, flags, blocks_out, pick_non_geometric } => {
            let opts = flags.options(Mode::First);
            let r = search::enumerate_pg_line_spreads(*v, *q, &opts)?;
            let spreads = r.spreads()?;
            let mut text = summarize(&format!("line spreads of PG({},{q})", v - 1), &r.certificate);
            let mut chosen = None;
            let mut geometric_count = 0;
            for (i, b) in spreads.iter().enumerate() {
                let g = designs::is_geometric_spread(&r.space, b)?;
                geometric_count += g.geometric as usize;
                if chosen.is_none() && (!*pick_non_geometric || !g.geometric) {
                    chosen = Some(i);
                }
            }
            text.push_str(&format!("\ngeometric: {geometric_count} of {}", spreads.len()));
            if let Some(path) = blocks_out {
                match chosen {
                    Some(i) => {
                        write_to(path, &pretty(&serde_json::to_value(&spreads[i])?))?;
                        text.push_str(&format!("\nwrote spread {i}"));
                    }
                    None => bail!("no spread matches the selection"),
                }
            }
            let mut o = Outcome::document(&flags.out, &r.certificate, text)?;
            o.exit = certificate_exit(&r.certificate);
            Ok(o)
        }
    }
}

fn space_of(b: &BlockSet) -> Result<ProjectiveSpace> {
    Ok(ProjectiveSpace::with_q(b.v(), b.q())?)
}

fn cmd_design(cmd: &DesignCommand, inputs: &mut Inputs) -> Result<Outcome> {
    match cmd {
        DesignCommand::Check { file, params } => {
            let b: BlockSet = inputs.json(file)?;
            let params = params.params()?;
            let r = designs::is_design(&space_of(&b)?, &b, &params)?;
            let text = if r.pass {
                format!("pass: {} blocks form a {params} design", b.len())
            } else {
                let w: Vec<String> = r.witnesses.iter().map(|w| format!("  {} in {} blocks", w.subspace, w.count)).collect();
                format!("fail: {} of {} {}-subspaces covered wrongly\n{}", r.mismatches, r.checked, params.t, w.join("\n"))
            };
            Ok(Outcome::report(text, serde_json::to_value(&r)?))
        }
        DesignCommand::Dual { file, form, out } => {
            let b: BlockSet = inputs.json(file)?;
            let sp = space_of(&b)?;
            let form = match form {
                FormArg::Standard => BilinearForm::standard(sp.field(), sp.v()),
                FormArg::Symplectic => BilinearForm::symplectic(sp.field(), sp.v())?,
            };
            let d = designs::dual_design(&sp, &b, &form)?;
            Outcome::document(out, &d, format!("dual: {} blocks of dimension {}", d.len(), d.k()))
        }
        DesignCommand::Derive { file, point, out } => {
            let b: BlockSet = inputs.json(file)?;
            let d = designs::derived_design(&space_of(&b)?, &b, PointId(*point))?;
            Outcome::document(out, &d, format!("derived: {} blocks of dimension {} in F_{}^{}", d.len(), d.k(), d.q(), d.v()))
        }
        DesignCommand::SpreadGen { v, k, q, out } => {
            let sp = ProjectiveSpace::with_q(*v, *q)?;
            let s = designs::desarguesian_spread(&sp, *k)?;
            Outcome::document(out, &s, format!("Desarguesian spread: {} blocks of dimension {k} in F_{q}^{v}", s.len()))
        }
        DesignCommand::Geometric { file } => {
            let b: BlockSet = inputs.json(file)?;
            let g = designs::is_geometric_spread(&space_of(&b)?, &b)?;
            let text = match &g.witness {
                None => "geometric: true".to_string(),
                Some(w) => format!(
                    "geometric: false, witness {}-subspace: {} contains {} blocks",
                    w.subspace.dim(),
                    w.subspace,
                    w.count
                ),
            };
            Ok(Outcome::report(text, serde_json::to_value(&g)?))
        }
        DesignCommand::Alpha { file, point } => {
            let b: BlockSet = inputs.json(file)?;
            let a = designs::is_alpha_point(&space_of(&b)?, &b, PointId(*point))?;
            Ok(Outcome::report(format!("alpha point: {a}"), json!({ "schema_version": SCHEMA_VERSION, "alpha": a })))
        }
        DesignCommand::BetaModel { q } => {
            let (sp, focal, blocks) = designs::beta_flat_model(*q)?;
            let r = designs::check_beta_flat_structure(&sp, &blocks, &sp.whole(), &focal)?;
            let text = format!(
                "{} planes through {focal}\n(a) other points covered once: {}, quotient is a line spread: {}\n(b) poor iff focal point missing: {} ({} poor, {} rich)\n(c) traces on poor solids are line spreads: {}",
                r.block_count, r.part_a, r.part_a_quotient_spread, r.part_b, r.poor, r.rich, r.part_c
            );
            Ok(Outcome::report(text, serde_json::to_value(&r)?))
        }
    }
}
