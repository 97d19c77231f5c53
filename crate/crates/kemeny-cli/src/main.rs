//! Command-line front end: exact Kemeny constants, resistances and moments,
//! barbell closed forms, Braess-set checks and scans, and the verification
//! suites. JSON is the machine format and is byte-stable for a fixed seed;
//! table output is human-readable sugar with no stability guarantee.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use kemeny::braess::{braess_scan, canonical_edge_set, delta_kemeny_direct, graph_id};
use kemeny::closed_forms::{kemeny_barbell, kemeny_barbell_best, kemeny_barbell_thirds};
use kemeny::constant::{kemeny_hitting_oracle, kemeny_resistance, moment};
use kemeny::families::make_barbell;
use kemeny::resistance::resistance_matrix;
use kemeny::verify::{run_suite, Suite, SuiteReport, VerifyCaps};
use kemeny::{Graph, Rational, Scalar, DEFAULT_FLOAT_CUTOFF};

#[derive(Parser)]
#[command(
    name = "kemeny",
    version,
    about = "Kemeny's constant, effective resistances, and Braess sets of simple connected graphs",
    max_term_width = 100
)]
struct Cli {
    #[command(flatten)]
    config: Config,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Config {
    /// Force exact rational arithmetic regardless of graph size
    #[arg(long, global = true, conflicts_with = "float")]
    exact: bool,

    /// Force binary64 floating point
    #[arg(long, global = true)]
    float: bool,

    /// Vertex count above which floating point is used unless --exact
    #[arg(long, global = true, default_value_t = DEFAULT_FLOAT_CUTOFF)]
    float_cutoff: usize,

    /// Emit JSON (the default)
    #[arg(long, global = true, conflicts_with = "table")]
    json: bool,

    /// Emit a human-readable table instead of JSON
    #[arg(long, global = true)]
    table: bool,

    /// Worker threads (also settable via KEMENY_THREADS)
    #[arg(long, global = true)]
    threads: Option<usize>,
}

impl Config {
    fn use_exact(&self, n: usize) -> bool {
        if self.exact {
            return true;
        }
        if self.float {
            return false;
        }
        n <= self.float_cutoff
    }
}

#[derive(Subcommand)]
enum Command {
    /// Kemeny's constant of a graph from an edge-list file, by both methods
    Compute {
        /// Edge-list file: lines "u v [weight]", '#' comments, optional "n <count>" header
        file: PathBuf,

        /// Include the full effective-resistance matrix
        #[arg(long)]
        resistances: bool,

        /// Include vertex moments: a vertex index or "all"
        #[arg(long)]
        moments: Option<String>,
    },

    /// Closed-form and direct Kemeny's constant of the barbell B(1, a, b, c)
    Barbell {
        #[arg(required_unless_present = "corollary_n")]
        a: Option<usize>,
        #[arg(required_unless_present = "corollary_n")]
        b: Option<usize>,
        #[arg(required_unless_present = "corollary_n")]
        c: Option<usize>,

        /// Skip the direct cross-check
        #[arg(long)]
        closed_form_only: bool,

        /// Evaluate the balanced and maximal special-case closed forms at
        /// this n (divisible by 3)
        #[arg(long)]
        corollary_n: Option<usize>,
    },

    /// Braess-set checks: does adding edges increase Kemeny's constant?
    #[command(subcommand)]
    Braess(BraessCommand),

    /// Run a verification suite; exits 1 on any failed check
    Verify {
        /// closed-forms | separation | trees | braess | all
        suite: Suite,

        /// Size cap steering every sweep in the suite
        #[arg(long, default_value_t = 5)]
        max_n: usize,

        /// Seed for the randomized sweeps
        #[arg(long, default_value_t = 7)]
        seed: u64,

        /// Random chains to test in the separation suite
        #[arg(long, default_value_t = 25)]
        chains: usize,

        /// Random samples for oracle and pendant-star sweeps
        #[arg(long, default_value_t = 50)]
        samples: usize,

        /// Largest edge-set size in the Braess decomposition sweep
        #[arg(long, default_value_t = 2)]
        max_set_size: usize,
    },
}

#[derive(Subcommand)]
enum BraessCommand {
    /// Exact delta of one explicit edge set
    Check {
        file: PathBuf,

        /// Edge set as "u-v,u-v,..."
        #[arg(long)]
        edges: String,
    },

    /// Exhaustive scan over all non-edge subsets up to a size
    Scan {
        file: PathBuf,

        #[arg(long, default_value_t = 2)]
        max_set_size: usize,

        /// Refuse graphs with more non-edges than this
        #[arg(long, default_value_t = 20)]
        max_non_edges: usize,
    },
}

fn exit_code_for(err: &kemeny::Error) -> ExitCode {
    match err {
        kemeny::Error::CapExceeded(_) => ExitCode::from(3),
        _ => ExitCode::from(2),
    }
}

fn fail(err: kemeny::Error) -> ExitCode {
    eprintln!("error: {err}");
    exit_code_for(&err)
}

fn read_graph(path: &PathBuf) -> Result<Graph, kemeny::Error> {
    let text = std::fs::read_to_string(path)?;
    kemeny::io::parse_edge_list(&text)
}

fn rational_pair(value: &Rational) -> (Value, Value) {
    (json!(value.to_string()), json!(Scalar::to_f64(value)))
}

/// Inserts `name` (exact "p/q" or null) and `name_float` fields.
fn put_number(
    obj: &mut serde_json::Map<String, Value>,
    name: &str,
    value: Option<&Rational>,
    float: f64,
) {
    match value {
        Some(v) => {
            let (exact, _) = rational_pair(v);
            obj.insert(name.to_string(), exact);
        }
        None => {
            obj.insert(name.to_string(), Value::Null);
        }
    }
    obj.insert(format!("{name}_float"), json!(float));
}

fn print_value(config: &Config, value: &Value) {
    if config.table {
        print_table(value, 0);
    } else {
        println!(
            "{}",
            serde_json::to_string_pretty(value).expect("serializable")
        );
    }
}

fn print_table(value: &Value, indent: usize) {
    let pad = "  ".repeat(indent);
    match value {
        Value::Object(map) => {
            for (k, v) in map {
                match v {
                    Value::Object(_) | Value::Array(_) => {
                        println!("{pad}{k}:");
                        print_table(v, indent + 1);
                    }
                    _ => println!("{pad}{k}: {v}"),
                }
            }
        }
        Value::Array(items) => {
            for item in items {
                match item {
                    Value::Object(_) | Value::Array(_) => {
                        print_table(item, indent + 1);
                        println!();
                    }
                    _ => println!("{pad}- {item}"),
                }
            }
        }
        other => println!("{pad}{other}"),
    }
}

fn cmd_compute(
    config: &Config,
    file: &PathBuf,
    with_resistances: bool,
    moments_arg: Option<&str>,
) -> Result<Value, kemeny::Error> {
    let graph = read_graph(file)?;
    if !graph.is_connected() {
        return Err(kemeny::Error::Disconnected);
    }
    let n = graph.n();
    let exact_mode = config.use_exact(n);
    let mut obj = serde_json::Map::new();
    obj.insert("file".into(), json!(file.display().to_string()));
    obj.insert("graph".into(), json!(graph_id(&graph)));
    obj.insert("n".into(), json!(n));
    obj.insert("m".into(), json!(graph.m()));
    obj.insert(
        "mode".into(),
        json!(if exact_mode { "exact" } else { "float" }),
    );

    if exact_mode {
        let by_resistance = kemeny_resistance::<Rational>(&graph)?;
        let by_hitting = kemeny_hitting_oracle::<Rational>(&graph)?;
        let agree = by_resistance.kemeny == by_hitting.kemeny;
        put_number(
            &mut obj,
            "kemeny",
            Some(&by_resistance.kemeny),
            Scalar::to_f64(&by_resistance.kemeny),
        );
        put_number(
            &mut obj,
            "kemeny_hitting",
            Some(&by_hitting.kemeny),
            Scalar::to_f64(&by_hitting.kemeny),
        );
        obj.insert("methods_agree".into(), json!(agree));
    } else {
        let by_resistance = kemeny_resistance::<f64>(&graph)?;
        let by_hitting = kemeny_hitting_oracle::<f64>(&graph)?;
        let agree = <f64 as Scalar>::values_agree(&by_resistance.kemeny, &by_hitting.kemeny);
        put_number(&mut obj, "kemeny", None, by_resistance.kemeny);
        put_number(&mut obj, "kemeny_hitting", None, by_hitting.kemeny);
        obj.insert("methods_agree".into(), json!(agree));
    }

    if with_resistances {
        if exact_mode {
            let r = resistance_matrix::<Rational>(&graph)?;
            let rows: Vec<Vec<String>> = (0..n)
                .map(|i| (0..n).map(|j| r.get(i, j).to_string()).collect())
                .collect();
            let floats: Vec<Vec<f64>> = (0..n)
                .map(|i| (0..n).map(|j| Scalar::to_f64(r.get(i, j))).collect())
                .collect();
            obj.insert("resistances".into(), json!(rows));
            obj.insert("resistances_float".into(), json!(floats));
        } else {
            let r = resistance_matrix::<f64>(&graph)?;
            let floats: Vec<Vec<f64>> = (0..n)
                .map(|i| (0..n).map(|j| *r.get(i, j)).collect())
                .collect();
            obj.insert("resistances".into(), Value::Null);
            obj.insert("resistances_float".into(), json!(floats));
        }
    }

    if let Some(arg) = moments_arg {
        if graph.is_weighted() {
            return Err(kemeny::Error::WeightedUnsupported);
        }
        let vertices: Vec<usize> = if arg == "all" {
            (0..n).collect()
        } else {
            let v: usize = arg.parse().map_err(|_| kemeny::Error::Parse {
                line: 0,
                message: format!("--moments expects a vertex index or 'all', got '{arg}'"),
            })?;
            vec![v]
        };
        let mut entries = Vec::new();
        for v in vertices {
            let mut entry = serde_json::Map::new();
            entry.insert("vertex".into(), json!(v));
            if exact_mode {
                let value = moment::<Rational>(&graph, v)?.value;
                let f = Scalar::to_f64(&value);
                put_number(&mut entry, "value", Some(&value), f);
            } else {
                let value = moment::<f64>(&graph, v)?.value;
                put_number(&mut entry, "value", None, value);
            }
            entries.push(Value::Object(entry));
        }
        obj.insert("moments".into(), json!(entries));
    }

    Ok(Value::Object(obj))
}

fn cmd_barbell(
    a: usize,
    b: usize,
    c: usize,
    closed_form_only: bool,
) -> Result<Value, kemeny::Error> {
    let result = kemeny::closed_forms::barbell_result(a, b, c, !closed_form_only)?;
    let mut obj = serde_json::Map::new();
    obj.insert("a".into(), json!(a));
    obj.insert("b".into(), json!(b));
    obj.insert("c".into(), json!(c));
    obj.insert(
        "m".into(),
        json!(kemeny::families::barbell_edge_count(a, b, c)),
    );
    put_number(
        &mut obj,
        "closed_form",
        Some(&result.value),
        Scalar::to_f64(&result.value),
    );
    if closed_form_only {
        obj.insert("direct".into(), Value::Null);
        obj.insert("equal".into(), Value::Null);
    } else {
        let g = make_barbell(1, a, b, c)?;
        let direct = kemeny_resistance::<Rational>(&g)?.kemeny;
        put_number(&mut obj, "direct", Some(&direct), Scalar::to_f64(&direct));
        obj.insert(
            "equal".into(),
            json!(result.verified_against_direct == Some(true)),
        );
    }
    Ok(Value::Object(obj))
}

fn cmd_barbell_corollaries(n: usize) -> Result<Value, kemeny::Error> {
    let thirds = kemeny_barbell_thirds::<Rational>(n)?;
    let best = kemeny_barbell_best::<Rational>(n)?;
    let third = n / 3;
    let thirds_theorem = kemeny_barbell::<Rational>(third, third, third)?;
    let best_theorem = kemeny_barbell::<Rational>(third + 2, third - 1, third - 1)?;
    let mut obj = serde_json::Map::new();
    obj.insert("n".into(), json!(n));
    put_number(&mut obj, "thirds", Some(&thirds), Scalar::to_f64(&thirds));
    put_number(&mut obj, "best", Some(&best), Scalar::to_f64(&best));
    obj.insert(
        "thirds_equals_theorem".into(),
        json!(thirds == thirds_theorem),
    );
    obj.insert("best_equals_theorem".into(), json!(best == best_theorem));
    obj.insert("best_greater".into(), json!(best > thirds));
    Ok(Value::Object(obj))
}

fn parse_edge_arg(arg: &str) -> Result<Vec<(usize, usize)>, kemeny::Error> {
    let mut edges = Vec::new();
    for (i, piece) in arg.split(',').enumerate() {
        let piece = piece.trim();
        if piece.is_empty() {
            continue;
        }
        let parsed = piece.split_once('-').and_then(|(u, v)| {
            Some((
                u.trim().parse::<usize>().ok()?,
                v.trim().parse::<usize>().ok()?,
            ))
        });
        match parsed {
            Some(edge) => edges.push(edge),
            None => {
                return Err(kemeny::Error::Parse {
                    line: i + 1,
                    message: format!("invalid edge '{piece}' (expected 'u-v')"),
                })
            }
        }
    }
    if edges.is_empty() {
        return Err(kemeny::Error::Parse {
            line: 0,
            message: "--edges lists no edges".into(),
        });
    }
    Ok(edges)
}

fn cmd_braess_check(file: &PathBuf, edges_arg: &str) -> Result<Value, kemeny::Error> {
    let graph = read_graph(file)?;
    let set = canonical_edge_set(&parse_edge_arg(edges_arg)?);
    let delta = delta_kemeny_direct::<Rational>(&graph, &set)?;
    let is_braess = delta > Rational::from_i64(0);
    Ok(json!({
        "graph": graph_id(&graph),
        "file": file.display().to_string(),
        "edge_set": set.iter().map(|&(u, v)| json!([u, v])).collect::<Vec<_>>(),
        "delta": delta.to_string(),
        "delta_float": Scalar::to_f64(&delta),
        "terms": Value::Null,
        "is_braess": is_braess,
        "sufficient": Value::Null,
    }))
}

fn cmd_braess_scan(
    file: &PathBuf,
    max_set_size: usize,
    max_non_edges: usize,
) -> Result<Value, kemeny::Error> {
    let graph = read_graph(file)?;
    let reports = braess_scan(&graph, max_set_size, max_non_edges)?;
    let braess_count = reports.iter().filter(|r| r.is_braess).count();
    Ok(json!({
        "graph": graph_id(&graph),
        "file": file.display().to_string(),
        "max_set_size": max_set_size,
        "subsets": reports.len(),
        "braess_sets": braess_count,
        "reports": reports.iter().map(|r| r.to_json()).collect::<Vec<_>>(),
    }))
}

fn suite_to_value(report: &SuiteReport) -> Value {
    serde_json::to_value(report).expect("serializable")
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    kemeny::init_thread_pool(cli.config.threads);

    let result: Result<(Value, ExitCode), kemeny::Error> = match &cli.command {
        Command::Compute {
            file,
            resistances,
            moments,
        } => cmd_compute(&cli.config, file, *resistances, moments.as_deref())
            .map(|v| (v, ExitCode::SUCCESS)),
        Command::Barbell {
            a,
            b,
            c,
            closed_form_only,
            corollary_n,
        } => match corollary_n {
            Some(n) => cmd_barbell_corollaries(*n).map(|v| (v, ExitCode::SUCCESS)),
            None => cmd_barbell(
                a.expect("clap enforces"),
                b.expect("clap enforces"),
                c.expect("clap enforces"),
                *closed_form_only,
            )
            .map(|v| (v, ExitCode::SUCCESS)),
        },
        Command::Braess(BraessCommand::Check { file, edges }) => {
            cmd_braess_check(file, edges).map(|v| (v, ExitCode::SUCCESS))
        }
        Command::Braess(BraessCommand::Scan {
            file,
            max_set_size,
            max_non_edges,
        }) => cmd_braess_scan(file, *max_set_size, *max_non_edges).map(|v| (v, ExitCode::SUCCESS)),
        Command::Verify {
            suite,
            max_n,
            seed,
            chains,
            samples,
            max_set_size,
        } => {
            let caps = VerifyCaps {
                max_n: *max_n,
                seed: *seed,
                chains: *chains,
                samples: *samples,
                max_set_size: *max_set_size,
            };
            run_suite(*suite, caps).map(|report| {
                let code = if report.ok {
                    ExitCode::SUCCESS
                } else {
                    ExitCode::from(1)
                };
                (suite_to_value(&report), code)
            })
        }
    };

    match result {
        Ok((value, code)) => {
            print_value(&cli.config, &value);
            code
        }
        Err(err) => fail(err),
    }
}
