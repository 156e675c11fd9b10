use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use commtree::formulas::{verify_ledger, Classification, LedgerOptions, Scope};
use commtree::graph::{full_commuting_graph, GraphError};
use commtree::group::{make_family, profile, Family, FamilyParams, GroupTable};
use commtree::partitions::{
    find_partition, lower_bound_blocks, verify_partition, PartitionCertificate, PartitionError,
    SearchMode,
};
use commtree::spec::{build_group, SpecError};
use commtree::treecount::{
    kappa_ac, kappa_all, kappa_auto, kappa_matrix_tree, kappa_modular, kappa_spectrum, KappaResult,
    ModularOptions, TreeCountError,
};

const EXIT_MISMATCH: u8 = 1;
const EXIT_PARSE: u8 = 2;
const EXIT_BUILD: u8 = 3;
const EXIT_INAPPLICABLE: u8 = 4;

#[derive(Parser)]
#[command(
    name = "commtree",
    version,
    about = "Spanning-tree counts of commuting graphs of finite groups"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the structural profile of a group.
    Group(GroupArgs),
    /// Count spanning trees of the commuting graph.
    Kappa {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long, value_enum, default_value_t = Method::Auto)]
        method: Method,
        /// Run every applicable engine and compare.
        #[arg(long)]
        cross_check: bool,
    },
    /// Find, verify or bound abelian partitions.
    Partition {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long, value_enum, group = "mode")]
        find: Option<FindMode>,
        /// Certificate JSON to check.
        #[arg(long, value_name = "CERT", group = "mode")]
        verify: Option<PathBuf>,
        /// Lower bound on the number of blocks.
        #[arg(long, group = "mode")]
        bound: bool,
        /// Largest block count the heuristic search may return.
        #[arg(long)]
        n_max: Option<usize>,
    },
    /// Check every closed form against the engines.
    Verify {
        #[arg(long, value_enum, default_value_t = ScopeArg::Default)]
        scope: ScopeArg,
        /// Record per-entry wall-clock milliseconds.
        #[arg(long)]
        timings: bool,
    },
}

#[derive(Args)]
struct GroupArgs {
    /// Group spec JSON file (`-` for standard input).
    spec: Option<PathBuf>,
    #[arg(long)]
    family: Option<String>,
    #[arg(long)]
    k: Option<i64>,
    #[arg(long)]
    p: Option<i64>,
    #[arg(long)]
    q: Option<i64>,
    #[arg(long)]
    d: Option<i64>,
    #[arg(long)]
    n: Option<i64>,
    #[arg(long)]
    a: Option<i64>,
    #[arg(long)]
    b: Option<i64>,
    #[arg(long)]
    u: Option<i64>,
    /// Write the commuting graph as an edge list.
    #[arg(long, value_name = "FILE")]
    dump_graph: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Auto,
    Matrix,
    Modular,
    Ac,
    Spectrum,
}

#[derive(Clone, Copy, ValueEnum)]
enum FindMode {
    Exact,
    Heuristic,
}

#[derive(Clone, Copy, ValueEnum)]
enum ScopeArg {
    Default,
    Full,
}

struct Failure {
    code: u8,
    msg: String,
}

fn fail(code: u8, msg: impl ToString) -> Failure {
    Failure {
        code,
        msg: msg.to_string(),
    }
}

impl From<SpecError> for Failure {
    fn from(e: SpecError) -> Self {
        let code = if e.is_parse_error() {
            EXIT_PARSE
        } else {
            EXIT_BUILD
        };
        fail(code, e)
    }
}

impl From<TreeCountError> for Failure {
    fn from(e: TreeCountError) -> Self {
        match e {
            TreeCountError::ExactCapExceeded { .. }
            | TreeCountError::BitBoundTooLarge { .. }
            | TreeCountError::Graph(GraphError::NotACGroup) => fail(EXIT_INAPPLICABLE, e),
            other => fail(EXIT_BUILD, other),
        }
    }
}

impl From<PartitionError> for Failure {
    fn from(e: PartitionError) -> Self {
        match e {
            PartitionError::Group(g) => fail(EXIT_BUILD, g),
            other => fail(EXIT_INAPPLICABLE, other),
        }
    }
}

fn read_input(path: &Path) -> Result<String, Failure> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::Read::read_to_string(&mut std::io::stdin(), &mut s)
            .map_err(|e| fail(EXIT_PARSE, e))?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(|e| fail(EXIT_PARSE, format!("{}: {e}", path.display())))
    }
}

impl GroupArgs {
    fn family_params(&self) -> FamilyParams {
        let flags = [
            ("k", self.k),
            ("p", self.p),
            ("q", self.q),
            ("d", self.d),
            ("n", self.n),
            ("a", self.a),
            ("b", self.b),
            ("u", self.u),
        ];
        flags
            .into_iter()
            .filter_map(|(k, v)| Some((k.to_string(), v?)))
            .collect()
    }

    fn build(&self) -> Result<GroupTable, Failure> {
        let g = match (&self.spec, &self.family) {
            (Some(_), Some(_)) => {
                return Err(fail(EXIT_PARSE, "give a spec file or --family, not both"))
            }
            (None, None) => return Err(fail(EXIT_PARSE, "a spec file or --family is required")),
            (Some(path), None) => build_group(&read_input(path)?)?,
            (None, Some(name)) => {
                let family = Family::from_params(name, &self.family_params())
                    .map_err(|e| fail(EXIT_PARSE, e))?;
                make_family(&family).map_err(|e| fail(EXIT_BUILD, e))?
            }
        };
        if let Some(path) = &self.dump_graph {
            fs::write(path, full_commuting_graph(&g).edge_list())
                .map_err(|e| fail(EXIT_BUILD, format!("{}: {e}", path.display())))?;
        }
        Ok(g)
    }
}

fn kappa_json(g: &GroupTable, r: &KappaResult) -> Value {
    let mut v = r.to_json();
    let obj = v.as_object_mut().expect("object");
    obj.insert("group".into(), json!(g.name()));
    let engines: Vec<Value> = r
        .engines
        .iter()
        .map(|(m, value)| json!({"method": m.as_str(), "value": value.to_str_radix(10)}))
        .collect();
    obj.insert("engines".into(), Value::Array(engines));
    if !r.notes.is_empty() {
        obj.insert("notes".into(), json!(r.notes));
    }
    v
}

fn cmd_kappa(g: &GroupTable, method: Method, cross_check: bool) -> Result<Value, Failure> {
    let graph = || full_commuting_graph(g);
    let mut r = match method {
        Method::Auto => kappa_auto(g)?,
        Method::Matrix => kappa_matrix_tree(&graph())?,
        Method::Modular => kappa_modular(&graph(), ModularOptions::default())?,
        Method::Ac => kappa_ac(g)?,
        Method::Spectrum => kappa_spectrum(g)?,
    };
    if cross_check {
        r.record(&kappa_all(g)?);
    }
    Ok(kappa_json(g, &r))
}

fn cmd_partition(
    g: &GroupTable,
    find: Option<FindMode>,
    verify: Option<&Path>,
    bound: bool,
    n_max: Option<usize>,
) -> Result<Value, Failure> {
    if bound {
        return Ok(json!(lower_bound_blocks(g)));
    }
    if let Some(path) = verify {
        let cert: PartitionCertificate = serde_json::from_str(&read_input(path)?)
            .map_err(|e| fail(EXIT_PARSE, format!("{}: {e}", path.display())))?;
        return Ok(match verify_partition(g, &cert) {
            Ok(()) => json!({"verified": true, "n": cert.n}),
            Err(v) => {
                let mut report = serde_json::to_value(&v).expect("violation serializes");
                report["verified"] = json!(false);
                report["message"] = json!(v.to_string());
                report
            }
        });
    }
    let mode = match find.unwrap_or(FindMode::Exact) {
        FindMode::Exact => SearchMode::exact(),
        FindMode::Heuristic => SearchMode::Heuristic,
    };
    Ok(match find_partition(g, mode, n_max)? {
        Some(cert) => {
            let mut v = cert.to_json();
            v["result"] = json!("found");
            v
        }
        None => json!({"result": "not_found"}),
    })
}

fn cmd_verify(scope: ScopeArg, timings: bool) -> (Value, bool) {
    let scope = match scope {
        ScopeArg::Default => Scope::Default,
        ScopeArg::Full => Scope::Full,
    };
    let entries = verify_ledger(LedgerOptions { scope, timings });
    let clean = entries
        .iter()
        .all(|e| e.classification != Classification::UnexpectedMismatch);
    (
        serde_json::to_value(&entries).expect("ledger serializes"),
        clean,
    )
}

fn run(cli: Cli) -> Result<(Value, u8), Failure> {
    match cli.command {
        Command::Group(args) => {
            let g = args.build()?;
            Ok((profile(&g).to_json(), 0))
        }
        Command::Kappa {
            group,
            method,
            cross_check,
        } => {
            let g = group.build()?;
            Ok((cmd_kappa(&g, method, cross_check)?, 0))
        }
        Command::Partition {
            group,
            find,
            verify,
            bound,
            n_max,
        } => {
            let g = group.build()?;
            Ok((cmd_partition(&g, find, verify.as_deref(), bound, n_max)?, 0))
        }
        Command::Verify { scope, timings } => {
            let (v, clean) = cmd_verify(scope, timings);
            if !clean {
                eprintln!("error: unexpected mismatch in the ledger");
            }
            Ok((v, if clean { 0 } else { EXIT_MISMATCH }))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_PARSE } else { 0 });
        }
    };
    match run(cli) {
        Ok((value, code)) => {
            let mut out = std::io::stdout().lock();
            let text = serde_json::to_string_pretty(&value).expect("output serializes");
            if writeln!(out, "{text}").is_err() {
                return ExitCode::from(EXIT_BUILD);
            }
            ExitCode::from(code)
        }
        Err(f) => {
            eprintln!("error: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}
