use std::fs::{self, File};
use std::io::{self, BufReader, BufWriter, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Deserialize;
use serde_json::{json, Value};

use pathpebble::bench::{bench, Family};
use pathpebble::graph::{self, Format, Graph};
use pathpebble::guest::{
    embed_in_binary_tree, generate_obstructions, GuestTree, TokenLabel, MAX_GUEST_HEIGHT,
};
use pathpebble::pebbling::{
    run, trace, GuestChoice, OutcomeReport, RelabelMode, RunOptions, Strategy, TokenEmbedding,
};
use pathpebble::selftest;
use pathpebble::verify::{
    exact_pathwidth_with_limit, validate_decomposition, validate_embedding, EmbeddingCertificate,
    PathDecomposition, DEFAULT_ORACLE_LIMIT, MAX_ORACLE_LIMIT,
};

#[derive(Parser)]
#[command(
    name = "pathpebble",
    version,
    about = "Pathwidth by pebbling: small path-decompositions or certified obstructions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the pebbling algorithm on a graph. Exit 0: decomposition, 2: fat
    /// factor, 3: edge-bound reject, 1: error.
    Decompose(DecomposeArgs),
    /// Check a decomposition or an embedding certificate. Exit 0 if valid.
    Verify(VerifyArgs),
    /// Exact pathwidth of a small graph.
    Oracle(OracleArgs),
    /// Tree obstructions for pathwidth t, optionally placed in a binary tree.
    GenObstruction(GenArgs),
    /// Time runs on growing random hosts and report the work counter.
    Bench(BenchArgs),
    /// Run the acceptance checks.
    Selftest,
}

#[derive(Args)]
struct DecomposeArgs {
    #[arg(long)]
    t: u32,
    /// Graph file, or - for stdin.
    #[arg(long, default_value = "-")]
    input: String,
    #[arg(long, default_value = "edge-list")]
    format: Format,
    /// obstruction, complete, or a file of flagged token labels.
    #[arg(long, default_value = "obstruction")]
    guest: String,
    #[arg(long, default_value = "shift")]
    relabel: RelabelMode,
    #[arg(long, default_value = "deepest")]
    strategy: Strategy,
    #[arg(long)]
    seed: Option<u64>,
    /// Write an NDJSON event trace here.
    #[arg(long)]
    trace: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Host graph file.
    #[arg(long)]
    graph: PathBuf,
    #[arg(long, default_value = "edge-list")]
    format: Format,
    /// Decomposition JSON (bags or a decompose report).
    #[arg(long, conflicts_with = "certificate")]
    decomposition: Option<PathBuf>,
    /// Certificate JSON (index form, token form, or a decompose report).
    #[arg(long, required_unless_present = "decomposition")]
    certificate: Option<PathBuf>,
    /// Guest graph file for an index-form certificate, or a token-label file
    /// the certificate's tokens must match.
    #[arg(long)]
    guest: Option<PathBuf>,
}

#[derive(Args)]
struct OracleArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long, default_value = "edge-list")]
    format: Format,
    /// Allow up to 22 vertices instead of 20.
    #[arg(long)]
    force: bool,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long)]
    t: u32,
    /// Also place each obstruction in the binary tree of height 2t + 2.
    #[arg(long)]
    embed: bool,
    /// Write obstruction-I.txt (and obstruction-I.flags) files here.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long, default_value = "random-tree")]
    family: Family,
    /// Comma-separated host sizes.
    #[arg(long, value_delimiter = ',', num_args = 0..)]
    sizes: Vec<usize>,
    #[arg(long, default_value_t = 2)]
    t: u32,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// obstruction, complete, or a file of flagged token labels.
    #[arg(long, default_value = "obstruction")]
    guest: String,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Decompose(a) => decompose(a),
        Command::Verify(a) => verify(a),
        Command::Oracle(a) => oracle(a),
        Command::GenObstruction(a) => gen_obstruction(a),
        Command::Bench(a) => cmd_bench(a),
        Command::Selftest => cmd_selftest(),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

type CmdResult = Result<u8, Box<dyn std::error::Error>>;

fn print_json(value: &impl serde::Serialize) -> io::Result<()> {
    let stdout = io::stdout();
    let mut out = stdout.lock();
    serde_json::to_writer_pretty(&mut out, value)?;
    writeln!(out)
}

fn read_graph_file(path: &str, format: Format) -> Result<Graph, Box<dyn std::error::Error>> {
    let g = if path == "-" {
        graph::read_graph(io::stdin().lock(), format)
    } else {
        let file = File::open(path).map_err(|e| format!("{path}: {e}"))?;
        graph::read_graph(BufReader::new(file), format)
    };
    Ok(g.map_err(|e| format!("{path}: {e}"))?)
}

fn read_labels(path: &Path) -> Result<Vec<TokenLabel>, Box<dyn std::error::Error>> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let mut labels = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        labels.push(
            line.parse()
                .map_err(|e| format!("{}:{}: {e}", path.display(), i + 1))?,
        );
    }
    Ok(labels)
}

fn guest_choice(name: &str, t: u32) -> Result<GuestChoice, Box<dyn std::error::Error>> {
    Ok(match name {
        "obstruction" => GuestChoice::Obstruction,
        "complete" => GuestChoice::Complete,
        path => {
            let labels = read_labels(Path::new(path))?;
            let height = pathpebble::guest::guest_height(t).min(MAX_GUEST_HEIGHT);
            let needed = labels.iter().map(|l| l.len() + 1).max().unwrap_or(1);
            GuestChoice::Custom(GuestTree::with_flags(height.max(needed), labels)?)
        }
    })
}

fn decompose(a: DecomposeArgs) -> CmdResult {
    let host = read_graph_file(&a.input, a.format)?;
    let options = RunOptions {
        guest: guest_choice(&a.guest, a.t)?,
        relabel: a.relabel,
        strategy: a.strategy,
        seed: a.seed,
        trace: a.trace.is_some(),
        check_invariants: false,
    };
    let report = run(&host, a.t, &options)?;
    if let Some(path) = &a.trace {
        let file = File::create(path).map_err(|e| format!("{}: {e}", path.display()))?;
        trace::write_ndjson(BufWriter::new(file), &report.trace)?;
    }
    print_json(&report.to_json())?;
    Ok(report.outcome.exit_code() as u8)
}

fn read_json(path: &Path) -> Result<Value, Box<dyn std::error::Error>> {
    let mut text = String::new();
    File::open(path)
        .and_then(|mut f| f.read_to_string(&mut text))
        .map_err(|e| format!("{}: {e}", path.display()))?;
    Ok(serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))?)
}

fn is_report(v: &Value) -> bool {
    v.get("outcome").is_some()
}

fn verdict(result: Result<Value, Value>) -> CmdResult {
    let (ok, body) = match result {
        Ok(body) => (true, body),
        Err(body) => (false, body),
    };
    let mut report = json!({ "ok": ok });
    if let (Value::Object(r), Value::Object(b)) = (&mut report, body) {
        r.extend(b);
    }
    print_json(&report)?;
    Ok(if ok { 0 } else { 1 })
}

fn verify(a: VerifyArgs) -> CmdResult {
    let host = read_graph_file(&a.graph.to_string_lossy(), a.format)?;
    if let Some(path) = &a.decomposition {
        let v = read_json(path)?;
        if is_report(&v) {
            return verify_report(OutcomeReport::deserialize(v)?, &host, a.guest.as_deref());
        }
        let d = PathDecomposition::deserialize(v)?;
        return verdict(check_decomposition(&d, &host));
    }
    let path = a.certificate.expect("clap requires one of the two");
    let v = read_json(&path)?;
    if is_report(&v) {
        return verify_report(OutcomeReport::deserialize(v)?, &host, a.guest.as_deref());
    }
    if v.get("tokenHost").is_some() {
        let emb = TokenEmbedding::deserialize(v)?;
        return verdict(check_tokens(&emb, &host, a.guest.as_deref())?);
    }
    let cert = EmbeddingCertificate::deserialize(v)?;
    let guest_path = a.guest.ok_or("an index-form certificate needs --guest")?;
    let guest = read_graph_file(&guest_path.to_string_lossy(), a.format)?;
    verdict(check_embedding(&cert, &guest, &host))
}

fn check_decomposition(d: &PathDecomposition, g: &Graph) -> Result<Value, Value> {
    validate_decomposition(d, g)
        .map(|w| json!({ "width": w, "bags": d.bags.len() }))
        .map_err(|v| json!({ "violation": v }))
}

fn check_embedding(c: &EmbeddingCertificate, guest: &Graph, host: &Graph) -> Result<Value, Value> {
    validate_embedding(c, guest, host)
        .map(|()| json!({ "guestVertices": guest.n(), "guestEdges": guest.m() }))
        .map_err(|v| json!({ "violation": v }))
}

fn check_tokens(
    emb: &TokenEmbedding,
    host: &Graph,
    labels: Option<&Path>,
) -> Result<Result<Value, Value>, Box<dyn std::error::Error>> {
    let (guest, tokens, cert) = emb.to_certificate()?;
    if let Some(path) = labels {
        let mut want = read_labels(path)?;
        want.sort();
        want.dedup();
        if want != tokens {
            return Ok(Err(
                json!({ "violation": { "violation": "guest-mismatch" } }),
            ));
        }
    }
    Ok(check_embedding(&cert, &guest, host))
}

fn verify_report(report: OutcomeReport, host: &Graph, labels: Option<&Path>) -> CmdResult {
    use pathpebble::pebbling::Outcome;
    match report.outcome {
        Outcome::FullDecomposition { decomposition } => {
            verdict(check_decomposition(&decomposition, host))
        }
        Outcome::EdgeBoundReject { edge_count, bound } => {
            let body = json!({ "edgeCount": host.m(), "bound": bound });
            verdict(if edge_count == host.m() && host.m() as u64 > bound {
                Ok(body)
            } else {
                Err(body)
            })
        }
        Outcome::FatFactor(ff) => {
            let same = ff.reassemble().is_ok_and(|g| &g == host);
            if !same {
                return verdict(Err(
                    json!({ "violation": { "violation": "factorization" } }),
                ));
            }
            if let Err(v) = check_decomposition(&ff.decomposition, &ff.factor.graph) {
                return verdict(Err(v));
            }
            let width = ff.decomposition.width();
            match check_tokens(&ff.certificate, host, labels)? {
                Ok(mut body) => {
                    body["width"] = json!(width);
                    verdict(Ok(body))
                }
                err => verdict(err),
            }
        }
    }
}

fn oracle(a: OracleArgs) -> CmdResult {
    let g = read_graph_file(&a.graph.to_string_lossy(), a.format)?;
    let limit = if a.force {
        MAX_ORACLE_LIMIT
    } else {
        DEFAULT_ORACLE_LIMIT
    };
    match exact_pathwidth_with_limit(&g, limit) {
        Ok(pw) => {
            print_json(&json!({ "n": g.n(), "m": g.m(), "pathwidth": pw }))?;
            Ok(0)
        }
        Err(e) => {
            print_json(&json!({ "n": g.n(), "error": e.to_string() }))?;
            Ok(1)
        }
    }
}

fn gen_obstruction(a: GenArgs) -> CmdResult {
    let trees = generate_obstructions(a.t)?;
    if let Some(dir) = &a.out {
        fs::create_dir_all(dir)?;
    }
    let mut rows = Vec::new();
    for (i, obs) in trees.iter().enumerate() {
        let mut row = json!({
            "index": i,
            "order": obs.order(),
            "edges": obs.graph.edges().collect::<Vec<_>>(),
        });
        let embedded = if a.embed {
            embed_in_binary_tree(obs).ok()
        } else {
            None
        };
        if a.embed {
            row["flags"] = match &embedded {
                Some(e) => json!(e.guest.flagged()),
                None => Value::Null,
            };
            row["depth"] = json!(embedded.as_ref().map(|e| e.depth));
        }
        if let Some(dir) = &a.out {
            fs::write(
                dir.join(format!("obstruction-{i}.txt")),
                graph::io::to_string(&obs.graph, Format::EdgeList),
            )?;
            if let Some(e) = &embedded {
                let text: String = e.guest.flagged().iter().map(|l| format!("{l}\n")).collect();
                fs::write(dir.join(format!("obstruction-{i}.flags")), text)?;
            }
        }
        rows.push(row);
    }
    print_json(&json!({ "t": a.t, "count": trees.len(), "obstructions": rows }))?;
    Ok(0)
}

fn cmd_bench(a: BenchArgs) -> CmdResult {
    let options = RunOptions {
        guest: guest_choice(&a.guest, a.t)?,
        ..RunOptions::default()
    };
    let rows = bench(a.family, &a.sizes, a.t, a.seed, &options)?;
    let ok = rows.iter().all(|r| r.within_budget());
    print_json(&rows)?;
    Ok(if ok { 0 } else { 1 })
}

fn cmd_selftest() -> CmdResult {
    let checks = selftest::run_all();
    for c in &checks {
        let status = if c.passed { "PASS" } else { "FAIL" };
        eprintln!("{status} {}. {}: {}", c.id, c.name, c.detail);
    }
    let ok = checks.iter().all(|c| c.passed);
    print_json(&json!({ "passed": ok, "checks": checks }))?;
    Ok(if ok { 0 } else { 1 })
}
