//! Command-line front end: compute graph polynomials and differential forms,
//! and run the verification suites. Exit status 0 means every requested
//! check passed, 1 is a check failure, 2 an input error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;

use graphforms::forms::{
    alpha_form, dipole_phi, phi_form, phi_form_hafnian, sign_factor, subdivision_check,
    verify_main_identity, PhiMethod,
};
use graphforms::graph::{
    graph_to_json, graph_to_text, parse_graph_json, parse_graph_text, CycleBasis, EdgeSet, Graph,
};
use graphforms::integrate::{integrate_dipole, IntegrationConfig};
use graphforms::polynomials::{
    dodgson, laplacian_bundle, symanzik, DodgsonMethod, SymanzikMethod,
};
use graphforms::report::CheckReport;
use graphforms::suite::{self, Report, SuiteOptions};

#[derive(Parser)]
#[command(
    name = "graphforms",
    about = "Exact graph polynomials and Pfaffian/topological differential forms",
    version
)]
struct Cli {
    /// Output mode.
    #[arg(long, global = true, value_enum, default_value_t = OutputMode::Text)]
    output: OutputMode,
    /// Force the graph input format (default: by file extension).
    #[arg(long, global = true, value_enum, default_value_t = InputFormat::Auto)]
    input_format: InputFormat,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputMode {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum InputFormat {
    Auto,
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SymanzikArg {
    Trees,
    ExpandedDet,
    CycleDet,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum DodgsonArg {
    Det,
    Expansion,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PhiArg {
    Direct,
    Trees,
    Hafnian,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SuiteArg {
    Main,
    Laplacian,
    Signs,
    Forms,
    Routes,
    All,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SchemeArg {
    Quadrature,
    MonteCarlo,
}

#[derive(Subcommand)]
enum Command {
    /// Symanzik polynomial of a graph.
    Symanzik {
        graph: PathBuf,
        #[arg(long, value_enum, default_value_t = SymanzikArg::Trees)]
        method: SymanzikArg,
    },
    /// Dodgson polynomial for row/column index sets of the expanded
    /// Laplacian (edges are 1..m, vertex columns m+1..).
    Dodgson {
        graph: PathBuf,
        /// Comma-separated row indices, e.g. `--a 1,3`.
        #[arg(long, value_delimiter = ',')]
        a: Vec<usize>,
        /// Comma-separated column indices.
        #[arg(long, value_delimiter = ',')]
        b: Vec<usize>,
        #[arg(long, value_enum, default_value_t = DodgsonArg::Det)]
        method: DodgsonArg,
    },
    /// All Laplacian-family matrices of a graph.
    Laplacians {
        graph: PathBuf,
        /// Spanning tree (edge labels) for the fundamental cycle basis.
        #[arg(long, value_delimiter = ',')]
        tree: Option<Vec<usize>>,
    },
    /// Topological form of a graph.
    Alpha { graph: PathBuf },
    /// Pfaffian form of a graph.
    Phi {
        graph: PathBuf,
        #[arg(long, value_enum, default_value_t = PhiArg::Direct)]
        method: PhiArg,
        /// Spanning tree (edge labels) for the fundamental cycle basis.
        #[arg(long, value_delimiter = ',')]
        tree: Option<Vec<usize>>,
        /// Explicit cycle basis: columns separated by `;`, entries by `,`.
        #[arg(long)]
        basis: Option<String>,
    },
    /// Run verification suites; with a graph argument, verify that graph.
    Verify {
        graph: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = SuiteArg::All)]
        suite: SuiteArg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Number of random graphs per randomized suite.
        #[arg(long, default_value_t = 50)]
        count: usize,
        #[arg(long, default_value_t = 9)]
        max_edges: usize,
        /// Spanning tree for the cycle basis (single-graph mode).
        #[arg(long, value_delimiter = ',')]
        tree: Option<Vec<usize>>,
    },
    /// Closed-form dipole Pfaffian form, optionally integrated numerically.
    Dipole {
        /// Dipole index: the graph has 2i+1 parallel edges.
        #[arg(long)]
        i: usize,
        #[arg(long)]
        integrate: bool,
        #[arg(long, value_enum, default_value_t = SchemeArg::Quadrature)]
        scheme: SchemeArg,
        /// Evaluation budget (quadrature) or sample count (Monte Carlo).
        #[arg(long)]
        budget: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Subdivide an edge; with `--check`, verify the subdivision identities.
    Subdivide {
        graph: PathBuf,
        #[arg(long)]
        edge: usize,
        #[arg(long)]
        check: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn load_graph(path: &PathBuf, format: InputFormat) -> Result<Graph, String> {
    let content = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    let json = match format {
        InputFormat::Json => true,
        InputFormat::Text => false,
        InputFormat::Auto => path.extension().is_some_and(|e| e == "json"),
    };
    let parsed = if json {
        parse_graph_json(&content)
    } else {
        parse_graph_text(&content)
    };
    parsed.map_err(|e| format!("{}: {e}", path.display()))
}

fn parse_tree(g: &Graph, labels: &[usize]) -> Result<EdgeSet, String> {
    let set = EdgeSet::new(labels.to_vec()).map_err(|e| e.to_string())?;
    if !g.is_spanning_tree(&set) {
        return Err(format!("{set} is not a spanning tree"));
    }
    Ok(set)
}

fn choose_basis(
    g: &Graph,
    tree: &Option<Vec<usize>>,
    basis: &Option<String>,
) -> Result<CycleBasis, String> {
    if let Some(text) = basis {
        let columns: Result<Vec<Vec<i64>>, String> = text
            .split(';')
            .map(|col| {
                col.split(',')
                    .map(|x| x.trim().parse::<i64>().map_err(|e| e.to_string()))
                    .collect()
            })
            .collect();
        return CycleBasis::from_columns(g, columns?).map_err(|e| e.to_string());
    }
    if let Some(labels) = tree {
        let set = parse_tree(g, labels)?;
        return g.fundamental_cycle_basis(&set).map_err(|e| e.to_string());
    }
    Ok(g.default_basis())
}

fn print_reports(reports: &[Report], mode: OutputMode) -> bool {
    let all_passed = reports.iter().all(|r| r.passed());
    match mode {
        OutputMode::Text => {
            for r in reports {
                print!("{}", r.render_text());
            }
            let pass = reports.iter().filter(|r| r.passed()).count();
            println!("summary: {pass}/{} reports passed", reports.len());
        }
        OutputMode::Json => {
            let value = serde_json::json!({
                "reports": reports,
                "passed": all_passed,
            });
            println!("{}", serde_json::to_string_pretty(&value).unwrap());
        }
    }
    all_passed
}

fn poly_rows(m: &graphforms::Matrix<graphforms::MultiPoly>) -> Vec<Vec<String>> {
    (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| m.at(i, j).to_string()).collect())
        .collect()
}

fn int_rows(m: &graphforms::Matrix<BigInt>) -> Vec<Vec<String>> {
    (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| m.at(i, j).to_string()).collect())
        .collect()
}

fn run(cli: &Cli) -> Result<bool, String> {
    match &cli.command {
        Command::Symanzik { graph, method } => {
            let g = load_graph(graph, cli.input_format)?;
            let method = match method {
                SymanzikArg::Trees => SymanzikMethod::Trees,
                SymanzikArg::ExpandedDet => SymanzikMethod::ExpandedDet,
                SymanzikArg::CycleDet => SymanzikMethod::CycleDet,
            };
            let psi = symanzik(&g, method);
            match cli.output {
                OutputMode::Text => println!("{psi}"),
                OutputMode::Json => println!(
                    "{}",
                    serde_json::json!({
                        "graph": g.fingerprint(),
                        "symanzik": psi.to_string(),
                        "structured": psi.to_json_value(),
                    })
                ),
            }
            Ok(true)
        }
        Command::Dodgson {
            graph,
            a,
            b,
            method,
        } => {
            let g = load_graph(graph, cli.input_format)?;
            let method = match method {
                DodgsonArg::Det => DodgsonMethod::Det,
                DodgsonArg::Expansion => DodgsonMethod::Expansion,
            };
            let poly = dodgson(&g, a, b, method).map_err(|e| e.to_string())?;
            match cli.output {
                OutputMode::Text => println!("{poly}"),
                OutputMode::Json => println!(
                    "{}",
                    serde_json::json!({
                        "graph": g.fingerprint(),
                        "a": a,
                        "b": b,
                        "dodgson": poly.to_string(),
                        "structured": poly.to_json_value(),
                    })
                ),
            }
            Ok(true)
        }
        Command::Laplacians { graph, tree } => {
            let g = load_graph(graph, cli.input_format)?;
            let basis = choose_basis(&g, tree, &None)?;
            let bundle = laplacian_bundle(&g, &basis);
            match cli.output {
                OutputMode::Text => {
                    println!("graph {}", g.fingerprint());
                    println!("edge variable matrix D:\n{}", bundle.edge_vars);
                    println!("incidence matrix I:\n{}", bundle.incidence);
                    println!("cycle incidence matrix C:\n{}", basis.matrix());
                    println!("expanded vertex Laplacian M:\n{}", bundle.expanded);
                    println!(
                        "vertex Laplacian cleared of denominators (prod_a * I^T D^-1 I):\n{}",
                        bundle.vertex_cleared
                    );
                    println!("cycle Laplacian C^T D C:\n{}", bundle.cycle);
                }
                OutputMode::Json => {
                    println!(
                        "{}",
                        serde_json::to_string_pretty(&serde_json::json!({
                            "graph": g.fingerprint(),
                            "edge_vars": poly_rows(&bundle.edge_vars),
                            "incidence": int_rows(&bundle.incidence),
                            "cycle_basis": int_rows(&basis.matrix()),
                            "expanded": poly_rows(&bundle.expanded),
                            "vertex_cleared": poly_rows(&bundle.vertex_cleared),
                            "cycle": poly_rows(&bundle.cycle),
                        }))
                        .unwrap()
                    );
                }
            }
            Ok(true)
        }
        Command::Alpha { graph } => {
            let g = load_graph(graph, cli.input_format)?;
            let alpha = alpha_form(&g).map_err(|e| e.to_string())?;
            match cli.output {
                OutputMode::Text => println!("{alpha}"),
                OutputMode::Json => println!(
                    "{}",
                    serde_json::json!({
                        "graph": g.fingerprint(),
                        "alpha": alpha.to_string(),
                        "structured": alpha.to_json_value(),
                    })
                ),
            }
            Ok(true)
        }
        Command::Phi {
            graph,
            method,
            tree,
            basis,
        } => {
            let g = load_graph(graph, cli.input_format)?;
            let basis = choose_basis(&g, tree, basis)?;
            let phi = match method {
                PhiArg::Direct => phi_form(&g, &basis, PhiMethod::Direct),
                PhiArg::Trees => phi_form(&g, &basis, PhiMethod::DodgsonTrees),
                PhiArg::Hafnian => phi_form_hafnian(&g, &basis),
            }
            .map_err(|e| e.to_string())?;
            let note = if g.loop_number() % 2 == 1 {
                Some("odd loop number")
            } else {
                None
            };
            match cli.output {
                OutputMode::Text => match note {
                    Some(note) => println!("{phi}  # {note}"),
                    None => println!("{phi}"),
                },
                OutputMode::Json => println!(
                    "{}",
                    serde_json::json!({
                        "graph": g.fingerprint(),
                        "phi": phi.to_string(),
                        "structured": phi.to_json_value(),
                        "note": note,
                    })
                ),
            }
            Ok(true)
        }
        Command::Verify {
            graph,
            suite: which,
            seed,
            count,
            max_edges,
            tree,
        } => {
            let opts = SuiteOptions {
                seed: *seed,
                count: *count,
                max_edges: *max_edges,
            };
            let reports: Vec<Report> = match graph {
                Some(path) => {
                    let g = load_graph(path, cli.input_format)?;
                    let basis = choose_basis(&g, tree, &None)?;
                    single_graph_reports(&g, &basis, *which)
                }
                None => match which {
                    SuiteArg::Main => suite::main_identity_suite(&opts),
                    SuiteArg::Laplacian => suite::laplacian_suite(&opts),
                    SuiteArg::Signs => suite::signs_suite(&opts),
                    SuiteArg::Forms => suite::forms_suite(&opts),
                    SuiteArg::Routes => suite::route_equivalence_suite(&opts),
                    SuiteArg::All => suite::all_suites(&opts),
                },
            };
            Ok(print_reports(&reports, cli.output))
        }
        Command::Dipole {
            i,
            integrate,
            scheme,
            budget,
            seed,
        } => {
            if *i == 0 {
                return Err("the dipole index starts at 1".into());
            }
            let phi = dipole_phi(*i);
            let mut estimate = None;
            if *integrate {
                let mut config = match scheme {
                    SchemeArg::Quadrature => IntegrationConfig::quadrature(),
                    SchemeArg::MonteCarlo => IntegrationConfig::monte_carlo(),
                };
                if let Some(b) = budget {
                    config.budget = *b;
                }
                config.seed = *seed;
                let est = integrate_dipole(*i, &config).map_err(|e| e.to_string())?;
                estimate = Some(est);
            }
            match cli.output {
                OutputMode::Text => {
                    println!("phi = {phi}");
                    if let Some(est) = estimate {
                        println!(
                            "integral = {:.6} (error estimate {:.2e}, {} evaluations; exact value 1)",
                            est.value, est.error, est.evaluations
                        );
                    }
                }
                OutputMode::Json => {
                    let mut value = serde_json::json!({
                        "index": i,
                        "phi": phi.to_string(),
                    });
                    if let Some(est) = estimate {
                        value["integral"] = serde_json::json!({
                            "value": est.value,
                            "error": est.error,
                            "evaluations": est.evaluations,
                        });
                    }
                    println!("{}", serde_json::to_string_pretty(&value).unwrap());
                }
            }
            if let Some(est) = estimate {
                let tol = match scheme {
                    SchemeArg::Quadrature => 1e-3,
                    SchemeArg::MonteCarlo => 2e-2,
                };
                return Ok((est.value - 1.0).abs() < tol);
            }
            Ok(true)
        }
        Command::Subdivide { graph, edge, check } => {
            let g = load_graph(graph, cli.input_format)?;
            let sub = g.subdivide_edge(*edge).map_err(|e| e.to_string())?;
            match cli.output {
                OutputMode::Text => print!("{}", graph_to_text(&sub)),
                OutputMode::Json => println!("{}", graph_to_json(&sub)),
            }
            if *check {
                let report = subdivision_check(&g, *edge);
                return Ok(print_reports(&[Report::Form(report)], cli.output));
            }
            Ok(true)
        }
    }
}

/// Reports for one explicit graph, scoped by the suite choice.
fn single_graph_reports(g: &Graph, basis: &CycleBasis, which: SuiteArg) -> Vec<Report> {
    let mut out = Vec::new();
    let path = g.path_matrix(None).expect("connected graph");
    if matches!(which, SuiteArg::Main | SuiteArg::All) {
        out.push(Report::Form(verify_main_identity(g, basis)));
    }
    if matches!(which, SuiteArg::Routes | SuiteArg::All) {
        let mut report = CheckReport::new(g.fingerprint(), "route equivalence");
        let trees = symanzik(g, SymanzikMethod::Trees);
        report.add(
            "graph polynomial three ways",
            trees == symanzik(g, SymanzikMethod::ExpandedDet)
                && trees == symanzik(g, SymanzikMethod::CycleDet),
            "",
        );
        let mut dodgson_ok = true;
        for i in 1..=g.num_edges() {
            for j in 1..=g.num_edges() {
                let det = dodgson(g, &[i], &[j], DodgsonMethod::Det).expect("edge indices");
                let exp = dodgson(g, &[i], &[j], DodgsonMethod::Expansion).expect("edge indices");
                if det != exp {
                    dodgson_ok = false;
                }
            }
        }
        report.add("Dodgson determinant vs expansion", dodgson_ok, "");
        let routes_ok = match (
            phi_form(g, basis, PhiMethod::Direct),
            phi_form(g, basis, PhiMethod::DodgsonTrees),
            phi_form_hafnian(g, basis),
        ) {
            (Ok(a), Ok(b), Ok(c)) => {
                a.equals(&b).unwrap_or(false) && a.equals(&c).unwrap_or(false)
            }
            _ => false,
        };
        report.add("Pfaffian form three ways", routes_ok, "");
        out.push(Report::Check(report));
    }
    if matches!(which, SuiteArg::Laplacian | SuiteArg::All) {
        out.push(Report::Check(
            graphforms::identities::laplacian_inverse_report(g, basis),
        ));
        out.push(Report::Check(
            graphforms::identities::concatenated_determinant_report(g, basis, &path),
        ));
    }
    if matches!(which, SuiteArg::Signs | SuiteArg::All) {
        let mut report = CheckReport::new(g.fingerprint(), "labelling signs");
        match sign_factor(g, basis, &path) {
            Ok(s) => report.add(
                "concatenated determinant is a path-independent unit",
                true,
                format!("det[C|P] = {s}"),
            ),
            Err(e) => report.add(
                "concatenated determinant is a path-independent unit",
                false,
                e.to_string(),
            ),
        }
        out.push(Report::Check(report));
    }
    if matches!(which, SuiteArg::Forms | SuiteArg::All) {
        out.push(Report::Form(graphforms::forms::property_checks(g)));
    }
    out
}
