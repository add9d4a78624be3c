use std::fmt::Display;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use toruschart::quandle::{dihedral_fixed_dimension, ColoringError, QuandleError};
use toruschart::unknotting::{self, handle_surgery_experiment, is_spun_shape, UnknottingError};
use toruschart::{BoundsReport, BraidError, BraidWord, ChartError, CountMethod, Quandle, TorusCoveringChart};

#[derive(Debug, Parser)]
#[command(name = "toruschart", version, about = "Torus-covering charts, quandle colorings and unknotting bounds")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check a braid or chart against its invariants
    Validate(Input),
    /// Count quandle colorings of a closed braid or a chart
    ColorCount(Input),
    /// Lower and upper bounds on the unknotting number of a chart
    Bounds(Input),
    /// Apply the turning map (v, h) -> (v, h·v)
    Turn(Input),
    /// Number of components of the closure or of the surface
    Components(Input),
    /// Single 1-handle surgery counts for every pair of arc positions
    HandleExperiment(Input),
    /// Tabulate Φ and the bounds for cl(σ₁³σ₂³⋯σₙ³)
    ReproduceThm(Reproduce),
}

#[derive(Debug, Args)]
#[group(id = "source", required = true, multiple = false)]
struct Source {
    /// A braid word, read as its closure
    #[arg(long)]
    braid: Option<String>,
    /// Spun chart (β, e)
    #[arg(long)]
    spun: Option<String>,
    /// Turned spun chart (β, β)
    #[arg(long)]
    turned_spun: Option<String>,
    /// Symmetry-spun chart (β², β)
    #[arg(long)]
    symmetry_spun: Option<String>,
    /// Chart document (JSON)
    #[arg(long)]
    chart: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct Input {
    #[command(flatten)]
    source: Source,
    /// Braid degree m; inferred from the highest generator when omitted
    #[arg(long)]
    degree: Option<usize>,
    /// Dihedral modulus p, or a path to a quandle table
    #[arg(long, default_value = "3")]
    quandle: String,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
}

#[derive(Debug, Args)]
struct Reproduce {
    #[arg(long, default_value_t = 6)]
    max_n: usize,
    /// Largest n counted by brute force; the linear fast path takes over above it
    #[arg(long, default_value_t = 6)]
    brute_force_max: usize,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Structured,
}

/// Why a run stopped. Usage errors exit 2, violated invariants exit 1.
#[derive(Debug)]
enum Failure {
    Usage(String),
    Invalid { invariant: &'static str, detail: String },
}

impl Failure {
    fn invalid(invariant: &'static str, detail: impl Display) -> Self {
        Failure::Invalid { invariant, detail: detail.to_string() }
    }
}

impl From<BraidError> for Failure {
    fn from(e: BraidError) -> Self {
        let invariant = match e {
            BraidError::ZeroDegree(_) => "braid degree",
            BraidError::Syntax { .. } => "braid grammar",
            BraidError::IndexOutOfRange { .. } => "generator range",
            BraidError::ExponentTooLarge(_) => "exponent bound",
            BraidError::DegreeMismatch { .. } => "braid degree",
        };
        Failure::invalid(invariant, e)
    }
}

impl From<ChartError> for Failure {
    fn from(e: ChartError) -> Self {
        let invariant = match &e {
            ChartError::Braid(b) => return b.clone().into(),
            ChartError::DegreeMismatch { .. } => "boundary degree",
            ChartError::LabelOutOfRange { .. } => "label range",
            ChartError::NonCommuting { .. } => "boundary braids commute",
            ChartError::TooFewBlackVertices { .. } => "free edge endpoints",
            ChartError::HasVertices { .. } => "turn needs a vertex-free chart",
            ChartError::NotUnimodular(_) => "gluing matrix unimodular",
            ChartError::Document(_) => "chart document format",
        };
        Failure::invalid(invariant, e)
    }
}

impl From<QuandleError> for Failure {
    fn from(e: QuandleError) -> Self {
        let invariant = match e {
            QuandleError::Axioms(_) => "quandle axioms",
            QuandleError::NotPrime(_) | QuandleError::DihedralOrder(_) => "dihedral modulus",
            QuandleError::CountOverflow { .. } => "count fits in 64 bits",
            _ => "quandle table format",
        };
        Failure::invalid(invariant, e)
    }
}

impl From<ColoringError> for Failure {
    fn from(e: ColoringError) -> Self {
        let invariant = match e {
            ColoringError::CapExceeded { .. } => "enumeration cap",
            _ => "coloring input",
        };
        Failure::invalid(invariant, e)
    }
}

impl From<UnknottingError> for Failure {
    fn from(e: UnknottingError) -> Self {
        match e {
            UnknottingError::Chart(e) => e.into(),
            UnknottingError::Coloring(e) => e.into(),
            UnknottingError::Quandle(e) => e.into(),
            UnknottingError::NotAKnot(_) => Failure::invalid("knot closure", e),
            UnknottingError::NotPowerOf { .. } => Failure::invalid("Φ is a power of p", e),
            UnknottingError::ReductionMismatch { .. } => Failure::invalid("spun reduction", e),
            UnknottingError::Inconsistent { .. } => Failure::invalid("lower <= upper", e),
        }
    }
}

type Outcome = Result<String, Failure>;

/// What the source flags describe.
enum Subject {
    Braid(BraidWord),
    Chart(TorusCoveringChart),
}

impl Subject {
    fn chart(self, command: &str) -> Result<TorusCoveringChart, Failure> {
        match self {
            Subject::Chart(c) => Ok(c),
            Subject::Braid(_) => Err(Failure::Usage(format!(
                "{command} needs a chart: use --spun, --turned-spun, --symmetry-spun or --chart"
            ))),
        }
    }
}

fn parse_word(text: &str, degree: Option<usize>) -> Result<BraidWord, Failure> {
    if let Some(m) = degree {
        return Ok(BraidWord::parse(text, m)?);
    }
    let wide = BraidWord::parse(text, usize::MAX)?;
    let m = wide.letters().iter().map(|l| l.index + 1).max().unwrap_or(1);
    Ok(BraidWord::new(m, wide.letters().to_vec())?)
}

fn load_subject(input: &Input) -> Result<Subject, Failure> {
    let s = &input.source;
    let word = |t: &str| parse_word(t, input.degree);
    if let Some(t) = &s.braid {
        return Ok(Subject::Braid(word(t)?));
    }
    let chart = if let Some(t) = &s.spun {
        TorusCoveringChart::spun(&word(t)?)
    } else if let Some(t) = &s.turned_spun {
        TorusCoveringChart::turned_spun(&word(t)?)
    } else if let Some(t) = &s.symmetry_spun {
        TorusCoveringChart::symmetry_spun(&word(t)?)
    } else {
        let path = s.chart.as_ref().expect("clap enforces one source");
        let text = std::fs::read_to_string(path)
            .map_err(|e| Failure::Usage(format!("cannot read chart file {}: {e}", path.display())))?;
        let chart = TorusCoveringChart::from_json(&text)?;
        if let Some(m) = input.degree.filter(|&m| m != chart.degree()) {
            return Err(Failure::invalid(
                "boundary degree",
                format!("--degree {m} but the chart document has degree {}", chart.degree()),
            ));
        }
        chart
    };
    Ok(Subject::Chart(chart))
}

fn load_quandle(spec: &str) -> Result<Quandle, Failure> {
    if let Ok(p) = spec.parse::<u64>() {
        return Ok(Quandle::dihedral(p)?);
    }
    let text = std::fs::read_to_string(spec)
        .map_err(|e| Failure::Usage(format!("--quandle is neither a modulus nor a readable file ({spec}): {e}")))?;
    Ok(Quandle::parse(&text)?)
}

fn render<T: Serialize>(format: Format, report: &T, table: impl FnOnce(&T) -> String) -> String {
    match format {
        Format::Structured => serde_json::to_string_pretty(report).expect("reports always serialize"),
        Format::Table => table(report),
    }
}

fn lines(rows: &[(&str, String)]) -> String {
    let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    rows.iter().map(|(k, v)| format!("{k:<width$}  {v}")).collect::<Vec<_>>().join("\n")
}

#[derive(Debug, Serialize, Deserialize)]
struct ValidateReport {
    valid: bool,
    kind: String,
    degree: usize,
    components: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    braid: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    class: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    quandle_order: Option<usize>,
}

fn validate(input: &Input) -> Outcome {
    let quandle = load_quandle(&input.quandle)?;
    let report = match load_subject(input)? {
        Subject::Braid(w) => ValidateReport {
            valid: true,
            kind: "braid".into(),
            degree: w.degree(),
            components: w.closure_component_count(),
            braid: Some(w.to_string()),
            class: None,
            quandle_order: Some(quandle.order()),
        },
        Subject::Chart(c) => ValidateReport {
            valid: true,
            kind: "chart".into(),
            degree: c.degree(),
            components: c.component_count()?,
            braid: None,
            class: Some(c.classify().to_string()),
            quandle_order: Some(quandle.order()),
        },
    };
    Ok(render(input.format, &report, |r| {
        let mut rows = vec![("valid", r.valid.to_string()), ("kind", r.kind.clone()), ("degree", r.degree.to_string())];
        if let Some(b) = &r.braid {
            rows.push(("braid", b.clone()));
        }
        if let Some(c) = &r.class {
            rows.push(("class", c.clone()));
        }
        rows.push(("components", r.components.to_string()));
        if let Some(q) = r.quandle_order {
            rows.push(("quandle order", q.to_string()));
        }
        lines(&rows)
    }))
}

#[derive(Debug, Serialize, Deserialize)]
struct CountReport {
    kind: String,
    degree: usize,
    quandle_order: usize,
    count: u64,
    /// Set when the count is not certified to be a surface invariant.
    heuristic: bool,
}

fn color_count(input: &Input) -> Outcome {
    let quandle = load_quandle(&input.quandle)?;
    let (kind, degree, count, heuristic) = match load_subject(input)? {
        Subject::Braid(w) => ("braid", w.degree(), quandle.coloring_count(&w)?, false),
        Subject::Chart(c) => {
            let count = match quandle.dihedral_modulus() {
                Some(p) => unknotting::chart_coloring_count(&c, p)?,
                None => quandle.common_fixed_vectors(&[c.v_braid(), c.h_braid()])?.len() as u64,
            };
            ("chart", c.degree(), count, !c.has_vertices() && !is_spun_shape(&c))
        }
    };
    let report = CountReport { kind: kind.into(), degree, quandle_order: quandle.order(), count, heuristic };
    Ok(render(input.format, &report, |r| {
        let label = if r.heuristic { format!("{} (heuristic Φ)", r.count) } else { r.count.to_string() };
        lines(&[("colorings", label), ("quandle order", r.quandle_order.to_string()), ("degree", r.degree.to_string())])
    }))
}

fn bounds(input: &Input) -> Outcome {
    if input.quandle != "3" {
        return Err(Failure::Usage("bounds always uses the dihedral quandle R_3; drop --quandle".into()));
    }
    let chart = load_subject(input)?.chart("bounds")?;
    let report = unknotting::unknotting_bounds(&chart)?;
    Ok(match input.format {
        Format::Structured => report.to_json(),
        Format::Table => bounds_table(&report),
    })
}

fn bounds_table(r: &BoundsReport) -> String {
    let show = |x: Option<u32>| x.map_or_else(|| "-".to_string(), |v| v.to_string());
    let mut out = lines(&[
        ("Φ (R_3)", r.coloring_count.to_string()),
        ("lower", r.lower.to_string()),
        ("upper", show(r.upper)),
        ("exact", show(r.exact)),
    ]);
    for note in &r.notes {
        out.push_str("\nnote: ");
        out.push_str(note);
    }
    out
}

fn turn(input: &Input) -> Outcome {
    let turned = load_subject(input)?.chart("turn")?.turn()?;
    Ok(match input.format {
        Format::Structured => turned.to_json(),
        Format::Table => lines(&[
            ("degree", turned.degree().to_string()),
            ("v_braid", turned.v_braid().to_string()),
            ("h_braid", turned.h_braid().to_string()),
            ("class", turned.classify().to_string()),
        ]),
    })
}

#[derive(Debug, Serialize, Deserialize)]
struct ComponentsReport {
    kind: String,
    degree: usize,
    components: usize,
}

fn components(input: &Input) -> Outcome {
    let (kind, degree, components) = match load_subject(input)? {
        Subject::Braid(w) => ("braid", w.degree(), w.closure_component_count()),
        Subject::Chart(c) => ("chart", c.degree(), c.component_count()?),
    };
    let report = ComponentsReport { kind: kind.into(), degree, components };
    Ok(render(input.format, &report, |r| lines(&[("components", r.components.to_string())])))
}

#[derive(Debug, Serialize, Deserialize)]
struct ExperimentReport {
    braid: String,
    phi: u64,
    order: u64,
    pairs: usize,
    distinct_counts: Vec<u64>,
    dichotomy_holds: bool,
    outcomes: Vec<unknotting::SurgeryOutcome>,
}

fn handle_experiment(input: &Input) -> Outcome {
    let p: u64 = input
        .quandle
        .parse()
        .map_err(|_| Failure::Usage("handle-experiment needs a dihedral modulus for --quandle".into()))?;
    let word = match load_subject(input)? {
        Subject::Braid(w) => w,
        Subject::Chart(c) if !c.has_vertices() && is_spun_shape(&c) => c.v_braid().clone(),
        Subject::Chart(_) => {
            return Err(Failure::invalid(
                "spun reduction",
                "handle-experiment works on cl(β); the chart is not (β, e), (β, β) or (β, β⁻¹)",
            ))
        }
    };
    let exp = handle_surgery_experiment(&word, p)?;
    let report = ExperimentReport {
        braid: word.to_string(),
        phi: exp.phi,
        order: exp.order,
        pairs: exp.outcomes.len(),
        distinct_counts: exp.distinct_counts().into_iter().collect(),
        dichotomy_holds: exp.dichotomy_holds(),
        outcomes: exp.outcomes,
    };
    Ok(render(input.format, &report, |r| {
        let counts = r.distinct_counts.iter().map(u64::to_string).collect::<Vec<_>>().join(", ");
        lines(&[
            ("braid", r.braid.clone()),
            ("Φ", r.phi.to_string()),
            ("position pairs", r.pairs.to_string()),
            ("counts", format!("{{{counts}}}")),
            (&format!("all in {{Φ, Φ/{}}}", r.order), r.dichotomy_holds.to_string()),
        ])
    }))
}

#[derive(Debug, Serialize, Deserialize)]
struct TheoremRow {
    n: usize,
    phi: u64,
    lower: u32,
    upper: Option<u32>,
    exact: Option<u32>,
    method: String,
}

fn reproduce(args: &Reproduce) -> Outcome {
    if args.max_n == 0 {
        return Err(Failure::Usage("--max-n must be at least 1".into()));
    }
    let mut rows = Vec::with_capacity(args.max_n);
    for n in 1..=args.max_n {
        let beta = BraidWord::cubed_chain(n);
        let method = if n <= args.brute_force_max { CountMethod::BruteForce } else { CountMethod::Linear };
        for chart in [TorusCoveringChart::spun(&beta), TorusCoveringChart::turned_spun(&beta)] {
            if dihedral_fixed_dimension(3, &[chart.v_braid(), chart.h_braid()])? >= 64 {
                return Err(QuandleError::CountOverflow { p: 3, exponent: n as u32 + 1 }.into());
            }
            let r = unknotting::unknotting_bounds_using(&chart, method)?;
            if rows.last().is_some_and(|row: &TheoremRow| row.n == n) {
                let prev = rows.last().unwrap();
                if (prev.phi, prev.lower, prev.upper) != (r.coloring_count, r.lower, r.upper) {
                    return Err(Failure::invalid(
                        "spun and turned spun agree",
                        format!("n = {n}: spun gives Φ = {}, turned spun gives Φ = {}", prev.phi, r.coloring_count),
                    ));
                }
                continue;
            }
            let label = if method == CountMethod::BruteForce { "brute-force" } else { "linear" };
            rows.push(TheoremRow {
                n,
                phi: r.coloring_count,
                lower: r.lower,
                upper: r.upper,
                exact: r.exact,
                method: label.into(),
            });
        }
    }
    Ok(render(args.format, &rows, |rows| {
        let show = |x: Option<u32>| x.map_or_else(|| "-".to_string(), |v| v.to_string());
        let mut out = format!("{:>3}  {:>20}  {:>5}  {:>5}  {:>5}  {}", "n", "Φ", "lower", "upper", "exact", "method");
        for r in rows {
            out.push_str(&format!(
                "\n{:>3}  {:>20}  {:>5}  {:>5}  {:>5}  {}",
                r.n,
                r.phi,
                r.lower,
                show(r.upper),
                show(r.exact),
                r.method
            ));
        }
        out
    }))
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Validate(i) => validate(&i),
        Command::ColorCount(i) => color_count(&i),
        Command::Bounds(i) => bounds(&i),
        Command::Turn(i) => turn(&i),
        Command::Components(i) => components(&i),
        Command::HandleExperiment(i) => handle_experiment(&i),
        Command::ReproduceThm(r) => reproduce(&r),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(report) => {
            println!("{report}");
            ExitCode::SUCCESS
        }
        Err(Failure::Invalid { invariant, detail }) => {
            if detail.starts_with("invariant `") {
                eprintln!("error: {detail}");
            } else {
                eprintln!("error: invariant `{invariant}` violated: {detail}");
            }
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
