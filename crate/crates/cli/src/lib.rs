//! Command dispatch for the `sepsys` binary, kept in a library so tests can
//! drive it without spawning processes.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use num_traits::ToPrimitive;

use sepsys::dsep::{level_of_separability_capped, DEFAULT_SEARCH_CAP};
use sepsys::format::{
    parse_certificate, parse_graph, parse_partition, parse_rational, parse_system_with, render_certificate,
};
use sepsys::graph::{
    classify, find_feasible_assignment, reliability_closed_form, reliability_polynomial, utility_and_difficulty,
    Category, DEFAULT_SUBSET_CAP,
};
use sepsys::partition::partition_decide_capped;
use sepsys::report::{
    qs, AssignmentSection, ClassificationSection, DsepSection, HyperplaneRow, PartitionSection, PolynomialSection,
    ReliabilitySection, SeparabilitySection, WeightedWord, Q,
};
use sepsys::{
    is_separable, mincut_certificate, verify_certificate, AnalysisReport, Caps, CertificateCheck, Error, Graph,
    HyperplaneCertificate, Rational, SeparabilityLevel, SeparabilityVerdict, System, Threshold,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_CAP: i32 = 3;

/// Default hyperplane budget for `dsep min` and `report`.
pub const DEFAULT_MAX_D: usize = 4;

#[derive(Parser, Debug)]
#[command(
    name = "sepsys",
    version,
    about = "Separability and exact reliability of stochastic binary systems"
)]
struct Cli {
    /// Emit the analysis report as JSON
    #[arg(long, global = true)]
    json: bool,

    /// Component cap for exhaustive enumeration (module defaults otherwise)
    #[arg(long, global = true, value_name = "N")]
    max_n: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Classify a graph for all-terminal separability
    Classify { graph: PathBuf },
    /// Exact reliability of a graph or system file
    Reliability {
        input: PathBuf,
        /// Also count the coefficients of the reliability polynomial (graphs only)
        #[arg(long)]
        polynomial: bool,
        /// Override every component probability
        #[arg(long, value_name = "a/b")]
        p: Option<String>,
    },
    /// Decide separability with the exact margin program
    Separable { input: PathBuf },
    /// Level-of-separability certificates
    Dsep {
        #[command(subcommand)]
        action: DsepAction,
    },
    /// Decide PARTITION through the threshold-system reduction
    Partition { values: PathBuf },
    /// Feasible cost assignment for a separable graph
    Assign { graph: PathBuf },
    /// Run every applicable analysis
    Report {
        input: PathBuf,
        #[arg(long, value_name = "K", default_value_t = DEFAULT_MAX_D)]
        max_d: usize,
    },
}

#[derive(Subcommand, Debug)]
enum DsepAction {
    /// Check a certificate file against a system
    Verify { system: PathBuf, certificate: PathBuf },
    /// One hyperplane per mincut
    Bound { system: PathBuf },
    /// Smallest certificate with at most K hyperplanes
    Min {
        system: PathBuf,
        #[arg(long, value_name = "K", default_value_t = DEFAULT_MAX_D)]
        max_d: usize,
    },
}

enum Input {
    Graph(Graph),
    System(System),
}

impl Input {
    fn load(path: &Path) -> sepsys::Result<Self> {
        let text = read(path)?;
        let first = text
            .lines()
            .map(str::trim)
            .find(|l| !l.is_empty() && !l.starts_with('#'))
            .and_then(|l| l.split_whitespace().next());
        if first == Some("graph") {
            return Ok(Input::Graph(parse_graph(&text)?));
        }
        let base = path.parent().map(Path::to_path_buf).unwrap_or_default();
        Ok(Input::System(parse_system_with(&text, |name| read(&base.join(name)))?))
    }

    fn system(self, caps: Caps) -> sepsys::Result<System> {
        let system = match self {
            Input::Graph(g) => System::from_graph(g)?,
            Input::System(s) => s,
        };
        Ok(system.with_caps(caps))
    }
}

fn read(path: &Path) -> sepsys::Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Validation(format!("cannot read {}: {e}", path.display())))
}

fn graph_only(path: &Path) -> sepsys::Result<Graph> {
    match Input::load(path)? {
        Input::Graph(g) => Ok(g),
        Input::System(_) => Err(Error::Validation(format!("{} is not a graph file", path.display()))),
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Size { .. } => EXIT_CAP,
        _ => EXIT_INPUT,
    }
}

/// Parses `argv` (including the program name), runs the command and writes
/// its output. Returns the process exit code.
pub fn run_command<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let informational = matches!(
                e.kind(),
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion
            );
            let sink: &mut dyn Write = if informational { out } else { err };
            let _ = write!(sink, "{}", e.render());
            return if informational { EXIT_OK } else { EXIT_USAGE };
        }
    };
    match execute(&cli) {
        Ok((report, human)) => {
            let text = if cli.json { report.to_json() + "\n" } else { human };
            let _ = out.write_all(text.as_bytes());
            EXIT_OK
        }
        Err(e) => {
            let _ = writeln!(err, "sepsys: {e}");
            exit_code(&e)
        }
    }
}

fn caps(max_n: Option<usize>) -> Caps {
    match max_n {
        Some(n) => Caps {
            eval: n,
            reliability: n,
        },
        None => Caps::default(),
    }
}

fn execute(cli: &Cli) -> sepsys::Result<(AnalysisReport, String)> {
    let caps = caps(cli.max_n);
    match &cli.command {
        Command::Classify { graph } => {
            let g = graph_only(graph)?;
            let mut report = AnalysisReport::new(graph.display().to_string());
            report.components = Some(g.edge_count());
            let section = classification(&g)?;
            let human = format!("{} corank={}\n", section.category, section.corank);
            report.classification = Some(section);
            Ok((report, human))
        }
        Command::Reliability { input, polynomial, p } => {
            let mut report = AnalysisReport::new(input.display().to_string());
            let loaded = Input::load(input)?;
            let graph = match &loaded {
                Input::Graph(g) => Some(g.clone()),
                Input::System(_) => None,
            };
            let mut system = loaded.system(caps)?;
            if let Some(p) = p {
                let p = parse_rational(0, p).map_err(|_| Error::Validation(format!("`{p}` is not a rational")))?;
                system = system.clone().with_probs(vec![p; system.component_count()])?;
            }
            report.components = Some(system.component_count());
            let section = reliability(&system, graph.as_ref(), *polynomial, cli.max_n)?;
            let mut human = format!("R = {}\n", section.value);
            if let Some(poly) = &section.polynomial {
                human += &render_polynomial(poly, system.component_count());
            }
            report.reliability = Some(section);
            Ok((report, human))
        }
        Command::Separable { input } => {
            let system = Input::load(input)?.system(caps)?;
            let mut report = AnalysisReport::new(input.display().to_string());
            report.components = Some(system.component_count());
            let section = separability(&system)?;
            let human = render_separability(&section);
            report.separability = Some(section);
            Ok((report, human))
        }
        Command::Dsep { action } => dsep(action, caps, cli.max_n),
        Command::Partition { values } => {
            let instance = parse_partition(&read(values)?)?;
            let decision = partition_decide_capped::<Rational>(&instance, cli.max_n.unwrap_or(caps.reliability))?;
            let section = PartitionSection {
                values: instance.values().to_vec(),
                answer: decision.is_yes(),
                witness: decision.witness.clone().unwrap_or_default(),
                difference: Q(decision.difference),
                half_sum_count: decision.half_sum_count,
            };
            let mut human = if section.answer {
                let ids: Vec<String> = section.witness.iter().map(usize::to_string).collect();
                format!("YES {}\n", ids.join(" "))
            } else {
                "NO\n".to_string()
            };
            let _ = writeln!(human, "difference = {}", section.difference);
            let mut report = AnalysisReport::new(values.display().to_string());
            report.components = Some(instance.len());
            report.partition = Some(section);
            Ok((report, human))
        }
        Command::Assign { graph } => {
            let g = graph_only(graph)?;
            let section = assignment(&g)?;
            let human = if section.feasible {
                let costs: Vec<String> = section.costs.iter().map(Q::to_string).collect();
                format!(
                    "ASSIGNMENT {}\nS = {} mst = {} mincut = {}\n",
                    costs.join(" "),
                    section.total.as_ref().expect("feasible assignments carry totals"),
                    section
                        .min_path_cost
                        .as_ref()
                        .expect("feasible assignments carry totals"),
                    section
                        .min_cut_cost
                        .as_ref()
                        .expect("feasible assignments carry totals"),
                )
            } else {
                format!("NONE {}\n", section.category)
            };
            let mut report = AnalysisReport::new(graph.display().to_string());
            report.components = Some(g.edge_count());
            report.assignment = Some(section);
            Ok((report, human))
        }
        Command::Report { input, max_d } => {
            let report = full_report(input, caps, cli.max_n, *max_d)?;
            let human = report.to_text();
            Ok((report, human))
        }
    }
}

fn classification(g: &Graph) -> sepsys::Result<ClassificationSection> {
    let class = classify(g);
    let ud = utility_and_difficulty(g).ok();
    Ok(ClassificationSection {
        category: class.category.name().to_string(),
        corank: class.corank,
        connectivity: ud.map(|u| u.connectivity),
        utility: ud.map(|u| u.utility),
        difficulty: ud.map(|u| u.difficulty),
    })
}

fn reliability(
    system: &System,
    graph: Option<&Graph>,
    polynomial: bool,
    max_n: Option<usize>,
) -> sepsys::Result<ReliabilitySection> {
    let closed = graph.filter(|g| classify(*g).category.is_separable());
    let (value, method) = match closed {
        Some(g) => (reliability_closed_form(g, system.probs())?, "closed-form"),
        None => (system.reliability()?, "exhaustive"),
    };
    let polynomial = if polynomial {
        let g = graph.ok_or_else(|| Error::Validation("the reliability polynomial needs a graph file".into()))?;
        let poly = reliability_polynomial(g, max_n.unwrap_or(DEFAULT_SUBSET_CAP))?;
        Some(PolynomialSection {
            coefficients: poly.coefficients.clone(),
            tree_number: poly
                .tree_number
                .to_u64()
                .ok_or_else(|| Error::Validation("spanning tree count overflows".into()))?,
            connectivity: poly.connectivity,
        })
    } else {
        None
    };
    Ok(ReliabilitySection {
        value: Q(value),
        method: method.to_string(),
        polynomial,
    })
}

fn render_polynomial(poly: &PolynomialSection, m: usize) -> String {
    let terms: Vec<String> = poly
        .coefficients
        .iter()
        .enumerate()
        .filter(|(_, &c)| c > 0)
        .map(|(i, c)| match (m - i, i) {
            (up, 0) => format!("{c} r^{up}"),
            (0, down) => format!("{c} (1-r)^{down}"),
            (up, down) => format!("{c} r^{up} (1-r)^{down}"),
        })
        .collect();
    let counts: Vec<String> = poly.coefficients.iter().map(u64::to_string).collect();
    format!(
        "R(r) = {}\ncoefficients = {}\ntrees = {}\nconnectivity = {}\n",
        terms.join(" + "),
        counts.join(" "),
        poly.tree_number,
        poly.connectivity
    )
}

fn row(h: &Threshold) -> HyperplaneRow {
    HyperplaneRow {
        weights: qs(h.weights()),
        cmp: h.comparison().symbol().to_string(),
        alpha0: Q(h.alpha0().clone()),
    }
}

fn weighted(terms: &[(Rational, sepsys::StateWord)]) -> Vec<WeightedWord> {
    terms
        .iter()
        .map(|(w, s)| WeightedWord {
            weight: Q(w.clone()),
            word: s.to_string(),
        })
        .collect()
}

fn separability(system: &System) -> sepsys::Result<SeparabilitySection> {
    Ok(match is_separable(system)? {
        SeparabilityVerdict::Separable { hyperplane, margin } => SeparabilitySection {
            separable: true,
            margin: Q(margin),
            hyperplane: Some(row(&hyperplane)),
            pathsets: vec![],
            cutsets: vec![],
            point: vec![],
        },
        SeparabilityVerdict::Nonseparable { margin, certificate } => SeparabilitySection {
            separable: false,
            margin: Q(margin),
            hyperplane: None,
            pathsets: weighted(&certificate.pathsets),
            cutsets: weighted(&certificate.cutsets),
            point: qs(&certificate.point),
        },
    })
}

fn join<T: ToString>(items: &[T]) -> String {
    items.iter().map(T::to_string).collect::<Vec<_>>().join(" ")
}

fn render_separability(s: &SeparabilitySection) -> String {
    let words = |list: &[WeightedWord]| -> String {
        list.iter()
            .map(|w| format!("{}:{}", w.weight, w.word))
            .collect::<Vec<_>>()
            .join(" ")
    };
    match &s.hyperplane {
        Some(h) if s.separable => format!(
            "SEPARABLE margin={}\nhyperplane {} {} {}\n",
            s.margin,
            join(&h.weights),
            h.cmp,
            h.alpha0
        ),
        _ => format!(
            "NONSEPARABLE\nmargin = {}\npathsets {}\ncutsets {}\npoint {}\n",
            s.margin,
            words(&s.pathsets),
            words(&s.cutsets),
            join(&s.point)
        ),
    }
}

fn certificate_section(mode: &str, cert: &HyperplaneCertificate<Rational>) -> DsepSection {
    DsepSection {
        mode: mode.to_string(),
        max_d: None,
        d: Some(cert.d()),
        side: Some(cert.side.keyword().to_string()),
        hyperplanes: cert
            .hyperplanes
            .iter()
            .map(|h| HyperplaneRow {
                weights: qs(h.weights()),
                cmp: ">=".to_string(),
                alpha0: Q(h.alpha0().clone()),
            })
            .collect(),
        valid: None,
        counterexample: None,
    }
}

fn dsep(action: &DsepAction, caps: Caps, max_n: Option<usize>) -> sepsys::Result<(AnalysisReport, String)> {
    match action {
        DsepAction::Verify { system, certificate } => {
            let sys = Input::load(system)?.system(caps)?;
            let cert = parse_certificate(&read(certificate)?)?;
            let check = verify_certificate(&sys, &cert)?;
            let mut section = certificate_section("verify", &cert);
            section.valid = Some(check.is_valid());
            let human = match check {
                CertificateCheck::Valid => format!("VALID {} d={}\n", cert.side, cert.d()),
                CertificateCheck::IncludedViolates { state, hyperplane } => {
                    section.counterexample = Some(state.to_string());
                    format!("INVALID {state} violates hyperplane {}\n", hyperplane + 1)
                }
                CertificateCheck::ExcludedSatisfiesAll { state } => {
                    section.counterexample = Some(state.to_string());
                    format!("INVALID {state} satisfies every hyperplane\n")
                }
            };
            let mut report = AnalysisReport::new(system.display().to_string());
            report.components = Some(sys.component_count());
            report.dsep = Some(section);
            Ok((report, human))
        }
        DsepAction::Bound { system } => {
            let sys = Input::load(system)?.system(caps)?;
            let cert = mincut_certificate(&sys)?;
            let mut report = AnalysisReport::new(system.display().to_string());
            report.components = Some(sys.component_count());
            report.dsep = Some(certificate_section("bound", &cert));
            Ok((report, render_certificate(&cert)))
        }
        DsepAction::Min { system, max_d } => {
            let sys = Input::load(system)?.system(caps)?;
            let (section, cert) = minimal_level(&sys, *max_d, max_n)?;
            let human = match cert {
                Some(cert) => render_certificate(&cert),
                None => format!("EXCEEDS max-d={max_d}\n"),
            };
            let mut report = AnalysisReport::new(system.display().to_string());
            report.components = Some(sys.component_count());
            report.dsep = Some(section);
            Ok((report, human))
        }
    }
}

fn minimal_level(
    sys: &System,
    max_d: usize,
    max_n: Option<usize>,
) -> sepsys::Result<(DsepSection, Option<HyperplaneCertificate<Rational>>)> {
    let level = level_of_separability_capped(sys, max_d, max_n.unwrap_or(DEFAULT_SEARCH_CAP))?;
    let (mut section, cert) = match level {
        SeparabilityLevel::Level { certificate, .. } => (certificate_section("min", &certificate), Some(certificate)),
        SeparabilityLevel::Exceeds { .. } => (
            DsepSection {
                mode: "min".to_string(),
                max_d: None,
                d: None,
                side: None,
                hyperplanes: vec![],
                valid: None,
                counterexample: None,
            },
            None,
        ),
    };
    section.max_d = Some(max_d);
    Ok((section, cert))
}

fn assignment(g: &Graph) -> sepsys::Result<AssignmentSection> {
    let category = classify(g).category;
    let none = AssignmentSection {
        category: category.name().to_string(),
        feasible: false,
        costs: vec![],
        total: None,
        min_path_cost: None,
        min_cut_cost: None,
    };
    if !category.is_separable() || category == Category::Disconnected || g.node_count() < 2 {
        return Ok(none);
    }
    let a = find_feasible_assignment(g)?;
    Ok(AssignmentSection {
        feasible: a.is_feasible(),
        costs: qs(&a.costs),
        total: Some(Q(a.total)),
        min_path_cost: Some(Q(a.min_path_cost)),
        min_cut_cost: Some(Q(a.min_cut_cost)),
        ..none
    })
}

/// Skips analyses whose enumeration would exceed the caps or whose
/// preconditions fail (non-monotone systems, disconnected graphs).
fn full_report(path: &Path, caps: Caps, max_n: Option<usize>, max_d: usize) -> sepsys::Result<AnalysisReport> {
    let mut report = AnalysisReport::new(path.display().to_string());
    let loaded = Input::load(path)?;
    let graph = match &loaded {
        Input::Graph(g) => Some(g.clone()),
        Input::System(_) => None,
    };
    let system = loaded.system(caps)?;
    let n = system.component_count();
    report.components = Some(n);

    let skip_soft = |r: sepsys::Result<()>| match r {
        Err(Error::Size { .. } | Error::Model(_) | Error::Disconnected | Error::Domain(_)) => Ok(()),
        other => other,
    };
    if let Some(g) = &graph {
        report.classification = Some(classification(g)?);
        report.assignment = Some(assignment(g)?);
    }
    let wants_polynomial = graph.as_ref().is_some_and(|g| g.is_connected());
    skip_soft(
        reliability(&system, graph.as_ref(), wants_polynomial, max_n)
            .or_else(|e| match e {
                Error::Size { .. } if wants_polynomial => reliability(&system, graph.as_ref(), false, max_n),
                e => Err(e),
            })
            .map(|s| report.reliability = Some(s)),
    )?;
    skip_soft(separability(&system).map(|s| report.separability = Some(s)))?;
    if report.separability.is_some() {
        skip_soft(minimal_level(&system, max_d, max_n).map(|(s, _)| report.dsep = Some(s)))?;
    }
    Ok(report)
}
