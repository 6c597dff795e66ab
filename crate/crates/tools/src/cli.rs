//! The `mbqc` command line.
//!
//! Exit status: 0 on success or a passing check, 1 when the analysis answer
//! is negative (no flow, failed verification, nondeterminism), 2 on usage or
//! input errors.

use std::ffi::OsString;
use std::io::{Read, Write};

use clap::{Parser, Subcommand, ValueEnum};
use mbqc_core::flow::{find_flow, find_gflow, path_cover_from_flow, verify_flow, verify_gflow, Witness};
use mbqc_core::generators::{gen_hc, gen_hn, gen_hprime, gen_linear_cluster, gen_random_flow_graph};
use mbqc_core::graph::{OpenGraph, Vertex};
use mbqc_core::rewrite::{classify, classify_flow_transition, pauli_rewrite, PauliBasis};
use mbqc_core::schedule::{
    canonical_order, degree_lower_bound, lazy_schedule, min_qr_exact, min_qr_flow, min_qr_greedy, Event,
    ResidencyResult, DEFAULT_EXACT_CAP,
};
use mbqc_core::sim::{branch_determinism_check, execute, Outcomes, DEFAULT_BRANCH_CAP};
use serde_json::{json, Value};

use crate::document::{emit_document, parse_document, GraphDocument, Parsed};
use crate::dot::{emit_dot, DotAnnotations};
use crate::ToolError;

/// Environment variable overriding the default vertex cap of `minqr --exact`.
pub const EXACT_CAP_ENV: &str = "MBQC_EXACT_CAP";

#[derive(Parser, Debug)]
#[command(name = "mbqc", version, about = "Flow, gflow and qubit-residency analysis of open graphs")]
struct Cli {
    /// Report style; `structured` prints JSON.
    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Structured,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Find or check a causal flow.
    Flow {
        #[command(subcommand)]
        action: Action,
    },
    /// Find or check a generalized flow.
    Gflow {
        #[command(subcommand)]
        action: Action,
    },
    /// Path cover induced by a flow.
    Paths { file: Option<String> },
    /// Lazy execution schedule with its live-qubit profile.
    Schedule {
        file: Option<String>,
        /// `auto` or a comma-separated measurement order.
        #[arg(long, default_value = "auto")]
        order: String,
    },
    /// Minimum number of simultaneously live qubits.
    Minqr {
        file: Option<String>,
        #[arg(long, conflicts_with = "greedy")]
        exact: bool,
        #[arg(long)]
        greedy: bool,
        /// Largest graph the exact search accepts.
        #[arg(long)]
        cap: Option<usize>,
    },
    /// Eliminate a Pauli-measured auxiliary vertex.
    Rewrite {
        file: Option<String>,
        #[arg(long)]
        vertex: String,
        #[arg(long, value_enum, ignore_case = true)]
        basis: Basis,
        #[arg(long)]
        neighbor: Option<String>,
    },
    /// Flow class of the graph, or its change under a Pauli elimination.
    Classify {
        file: Option<String>,
        #[arg(long, requires = "basis")]
        vertex: Option<String>,
        #[arg(long, value_enum, ignore_case = true, requires = "vertex")]
        basis: Option<Basis>,
    },
    /// Run the pattern on the streaming simulator.
    Simulate {
        file: Option<String>,
        #[arg(long, value_enum, conflicts_with = "seed")]
        branches: Option<Branches>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        check_determinism: bool,
    },
    /// Print a generated graph document.
    Gen {
        #[arg(value_enum)]
        family: Family,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Re-emit the document canonically, or as Graphviz with `--dot`.
    Export {
        file: Option<String>,
        #[arg(long)]
        dot: bool,
    },
}

#[derive(Subcommand, Debug)]
enum Action {
    Find { file: Option<String> },
    Verify { file: Option<String> },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Basis {
    X,
    Y,
    Z,
}

impl From<Basis> for PauliBasis {
    fn from(b: Basis) -> Self {
        match b {
            Basis::X => PauliBasis::X,
            Basis::Y => PauliBasis::Y,
            Basis::Z => PauliBasis::Z,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Branches {
    All,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Family {
    Hn,
    Hprime,
    Hc,
    Chain,
    Random,
}

struct Report {
    code: i32,
    human: String,
    structured: Value,
}

impl Report {
    fn ok(human: String, structured: Value) -> Self {
        Self {
            code: 0,
            human,
            structured,
        }
    }

    fn negative(human: String, structured: Value) -> Self {
        Self {
            code: 1,
            human,
            structured,
        }
    }

    /// A graph document, printed the same way in both formats.
    fn document(text: String) -> Self {
        let structured = serde_json::from_str(&text).expect("emitted documents are JSON");
        Self::ok(text, structured)
    }
}

struct Io<'a> {
    stdin: &'a mut dyn Read,
}

impl Io<'_> {
    fn load(&mut self, file: &Option<String>) -> Result<Parsed, ToolError> {
        let text = match file.as_deref() {
            None | Some("-") => {
                let mut s = String::new();
                self.stdin.read_to_string(&mut s)?;
                s
            }
            Some(path) => std::fs::read_to_string(path).map_err(|e| ToolError::Usage(format!("{path}: {e}")))?,
        };
        parse_document(&text)
    }
}

/// Runs one invocation and returns its exit status.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let out: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = write!(out, "{}", e.render());
            return code;
        }
    };
    let format = cli.format;
    let mut io = Io { stdin };
    match dispatch(cli.command, &mut io) {
        Ok(report) => {
            let text = match format {
                Format::Human => report.human,
                Format::Structured => serde_json::to_string_pretty(&report.structured).expect("reports serialise"),
            };
            let _ = writeln!(stdout, "{}", text.trim_end());
            report.code
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            2
        }
    }
}

/// `n`, `m` and the reference values every report carries.
fn summary(og: &OpenGraph) -> (String, Value) {
    let m = og.vertex_count();
    let (ni, no) = (og.inputs().len(), og.outputs().len());
    let mut human = format!("m = {m}, |I| = {ni}, |O| = {no}");
    let mut value = json!({"m": m, "inputs": ni, "outputs": no, "m_minus_2": m.saturating_sub(2)});
    if ni == no {
        human += &format!(", n = {ni}, min(n+1, m) = {}", (ni + 1).min(m));
        value["n"] = json!(ni);
        value["min_n_plus_1_m"] = json!((ni + 1).min(m));
    }
    human += &format!(", m-2 = {}", m.saturating_sub(2));
    (human, value)
}

fn with_summary(og: &OpenGraph, body: String, mut value: Value) -> (String, Value) {
    let (h, s) = summary(og);
    value["graph"] = s;
    (format!("{h}\n{body}"), value)
}

fn names(og: &OpenGraph, vs: impl IntoIterator<Item = Vertex>) -> Vec<String> {
    vs.into_iter().map(|v| og.name(v).to_string()).collect()
}

fn describe_witness(og: &OpenGraph, w: &Witness) -> String {
    let mut lines = Vec::new();
    match w {
        Witness::Flow(f) => {
            for (i, c) in f.pairs() {
                lines.push(format!("  f({}) = {}", og.name(i), og.name(c)));
            }
        }
        Witness::Gflow(g) => {
            for (i, k) in g.entries() {
                lines.push(format!("  g({}) = {}", og.name(i), og.format_set(k)));
            }
        }
    }
    let layers = w.layers();
    let top = layers.iter().copied().max().unwrap_or(0);
    for l in (0..=top).rev() {
        let members = og.vertices().filter(|v| layers[v.0] == l);
        lines.push(format!("  layer {l}: {}", og.format_list(members)));
    }
    lines.join("\n")
}

/// The document's witness if it verifies, otherwise a found flow or gflow.
fn dependency(parsed: &Parsed) -> Result<Result<Witness, String>, ToolError> {
    let og = &parsed.graph;
    if let Some(w) = &parsed.witness {
        let report = w.verify(og)?;
        if !report.is_pass() {
            let gflow = matches!(w, Witness::Gflow(_));
            let why: Vec<_> = report.violations.iter().map(|v| v.describe(og, gflow)).collect();
            return Ok(Err(format!("document witness fails verification: {}", why.join("; "))));
        }
        return Ok(Ok(w.clone()));
    }
    if let Some(f) = find_flow(og) {
        return Ok(Ok(Witness::Flow(f)));
    }
    match find_gflow(og) {
        Some(g) => Ok(Ok(Witness::Gflow(g))),
        None => Ok(Err("no gflow exists, so no measurement order is deterministic".into())),
    }
}

fn negative_report(og: &OpenGraph, msg: String) -> Report {
    let (human, value) = with_summary(og, msg.clone(), json!({"error": msg}));
    Report::negative(human, value)
}

fn dispatch(command: Command, io: &mut Io<'_>) -> Result<Report, ToolError> {
    match command {
        Command::Flow { action } => flow_command(action, io, false),
        Command::Gflow { action } => flow_command(action, io, true),
        Command::Paths { file } => paths(&io.load(&file)?),
        Command::Schedule { file, order } => schedule(&io.load(&file)?, &order),
        Command::Minqr {
            file,
            exact,
            greedy,
            cap,
        } => minqr(&io.load(&file)?, exact, greedy, cap),
        Command::Rewrite {
            file,
            vertex,
            basis,
            neighbor,
        } => rewrite(&io.load(&file)?, &vertex, basis.into(), neighbor.as_deref()),
        Command::Classify { file, vertex, basis } => {
            let parsed = io.load(&file)?;
            classify_command(&parsed, vertex.as_deref().zip(basis.map(Into::into)))
        }
        Command::Simulate {
            file,
            branches,
            seed,
            check_determinism,
        } => simulate(&io.load(&file)?, branches.is_some(), seed, check_determinism),
        Command::Gen { family, n, m, seed } => generate(family, n, m, seed),
        Command::Export { file, dot } => export(&io.load(&file)?, dot),
    }
}

fn flow_command(action: Action, io: &mut Io<'_>, gflow: bool) -> Result<Report, ToolError> {
    let kind = if gflow { "gflow" } else { "flow" };
    match action {
        Action::Find { file } => {
            let parsed = io.load(&file)?;
            let og = &parsed.graph;
            let found = if gflow {
                find_gflow(og).map(Witness::Gflow)
            } else {
                find_flow(og).map(Witness::Flow)
            };
            match found {
                Some(w) => {
                    let doc = GraphDocument::from_parts(og, parsed.pattern.as_ref(), Some(&w));
                    let (human, _) = with_summary(og, format!("{kind} found:\n{}", describe_witness(og, &w)), json!({}));
                    Ok(Report::ok(human, serde_json::to_value(doc).expect("documents serialise")))
                }
                None => {
                    let msg = if gflow {
                        "no gflow".to_string()
                    } else if find_gflow(og).is_some() {
                        "no flow; gflow exists (try: gflow find)".to_string()
                    } else {
                        "no flow; no gflow either".to_string()
                    };
                    Ok(negative_report(og, msg))
                }
            }
        }
        Action::Verify { file } => {
            let parsed = io.load(&file)?;
            let og = &parsed.graph;
            let report = match (&parsed.witness, gflow) {
                (Some(Witness::Flow(f)), false) => verify_flow(og, f)?,
                (Some(Witness::Flow(f)), true) => verify_gflow(og, &f.to_gflow())?,
                (Some(Witness::Gflow(g)), true) => verify_gflow(og, g)?,
                (Some(Witness::Gflow(_)), false) => {
                    return Err(ToolError::Usage("document carries a gflow; use `gflow verify`".into()))
                }
                (None, _) => return Err(ToolError::Usage(format!("document has no {kind} witness to verify"))),
            };
            let why: Vec<String> = report.violations.iter().map(|v| v.describe(og, gflow)).collect();
            let body = if why.is_empty() {
                format!("{kind} verifies")
            } else {
                format!("{kind} fails:\n  {}", why.join("\n  "))
            };
            let (human, value) = with_summary(og, body, json!({"pass": why.is_empty(), "violations": why}));
            Ok(Report {
                code: if why.is_empty() { 0 } else { 1 },
                human,
                structured: value,
            })
        }
    }
}

fn paths(parsed: &Parsed) -> Result<Report, ToolError> {
    let og = &parsed.graph;
    let flow = match &parsed.witness {
        Some(Witness::Flow(f)) if verify_flow(og, f)?.is_pass() => Some(f.clone()),
        Some(Witness::Flow(_)) => return Ok(negative_report(og, "document flow fails verification".into())),
        _ => find_flow(og),
    };
    let Some(flow) = flow else {
        return Ok(negative_report(og, "no flow, so no path cover".into()));
    };
    if og.inputs().len() != og.outputs().len() {
        return Ok(negative_report(og, "a path cover needs |I| = |O|".into()));
    }
    let cover = path_cover_from_flow(og, &flow)?;
    let lines: Vec<String> = cover
        .paths()
        .iter()
        .enumerate()
        .map(|(k, p)| format!("  path {k}: {}", names(og, p.iter().copied()).join(" -> ")))
        .collect();
    let value = json!({"paths": cover.paths().iter().map(|p| names(og, p.iter().copied())).collect::<Vec<_>>()});
    let (human, value) = with_summary(og, format!("{} paths\n{}", cover.paths().len(), lines.join("\n")), value);
    Ok(Report::ok(human, value))
}

fn parse_order(og: &OpenGraph, layers: &[usize], text: &str) -> Result<Vec<Vertex>, ToolError> {
    if text == "auto" {
        return Ok(canonical_order(og, layers));
    }
    let order = text
        .split(',')
        .map(|s| og.vertex(s.trim()))
        .collect::<Result<Vec<_>, _>>()?;
    if let Some(p) = order.windows(2).find(|p| layers[p[0].0] < layers[p[1].0]) {
        return Err(ToolError::Usage(format!(
            "`{}` must be measured before `{}`",
            og.name(p[1]),
            og.name(p[0])
        )));
    }
    Ok(order)
}

fn event_text(og: &OpenGraph, e: &Event) -> (String, Value) {
    match *e {
        Event::Prepare(v) => (format!("prepare {}", og.name(v)), json!(["prepare", og.name(v)])),
        Event::Entangle(u, v) => (
            format!("entangle {} {}", og.name(u), og.name(v)),
            json!(["entangle", og.name(u), og.name(v)]),
        ),
        Event::Measure(v) => (format!("measure {}", og.name(v)), json!(["measure", og.name(v)])),
        Event::Discard(v) => (format!("discard {}", og.name(v)), json!(["discard", og.name(v)])),
    }
}

fn schedule(parsed: &Parsed, order: &str) -> Result<Report, ToolError> {
    let og = &parsed.graph;
    let w = match dependency(parsed)? {
        Ok(w) => w,
        Err(msg) => return Ok(negative_report(og, msg)),
    };
    let order = parse_order(og, w.layers(), order)?;
    let s = lazy_schedule(og, &order)?;
    let mut lines = vec![format!("  start with {} live", s.initial_live())];
    let mut events = Vec::new();
    for (e, live) in s.events().iter().zip(s.live_profile()) {
        let (h, v) = event_text(og, e);
        lines.push(format!("  {h:<24} live {live}"));
        events.push(v);
    }
    lines.push(format!("residency_max = {}", s.residency_max()));
    let value = json!({
        "order": names(og, order.iter().copied()),
        "events": events,
        "live_profile": s.live_profile(),
        "residency_max": s.residency_max(),
    });
    let body = format!("lazy schedule for order {}\n{}", names(og, order.iter().copied()).join(", "), lines.join("\n"));
    let (human, value) = with_summary(og, body, value);
    Ok(Report::ok(human, value))
}

fn exact_cap(flag: Option<usize>) -> Result<usize, ToolError> {
    if let Some(c) = flag {
        return Ok(c);
    }
    match std::env::var(EXACT_CAP_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| ToolError::Usage(format!("{EXACT_CAP_ENV}={v:?} is not a number"))),
        Err(_) => Ok(DEFAULT_EXACT_CAP),
    }
}

fn minqr(parsed: &Parsed, exact: bool, greedy: bool, cap: Option<usize>) -> Result<Report, ToolError> {
    let og = &parsed.graph;
    let w = match dependency(parsed)? {
        Ok(w) => w,
        Err(msg) => return Ok(negative_report(og, msg)),
    };
    let (method, result): (&str, ResidencyResult) = if exact {
        let cap = exact_cap(cap)?;
        match min_qr_exact(og, w.layers(), cap) {
            Ok(r) => ("exact", r),
            Err(mbqc_core::Error::CapExceeded { size, cap }) => {
                return Ok(negative_report(
                    og,
                    format!("exact search is capped at {cap} vertices, graph has {size} (use --cap or {EXACT_CAP_ENV})"),
                ))
            }
            Err(e) => return Err(e.into()),
        }
    } else if greedy {
        ("greedy upper bound", min_qr_greedy(og, w.layers())?)
    } else {
        match &w {
            Witness::Flow(f) if og.unitary_width().is_ok() => ("flow formula", min_qr_flow(og, f)?),
            _ => ("greedy upper bound", min_qr_greedy(og, w.layers())?),
        }
    };
    let lower = degree_lower_bound(og).ok();
    let mut body = format!(
        "min_QR = {} ({method})\nwitness order: {}",
        result.min_qr,
        names(og, result.witness_order.iter().copied()).join(", ")
    );
    if let Some(l) = lower {
        body += &format!("\ndegree lower bound: {l}");
    }
    let value = json!({
        "method": method,
        "min_qr": result.min_qr,
        "witness_order": names(og, result.witness_order.iter().copied()),
        "profile": result.profile,
        "degree_lower_bound": lower,
        "witness": if matches!(w, Witness::Flow(_)) { "flow" } else { "gflow" },
    });
    let (human, value) = with_summary(og, body, value);
    Ok(Report::ok(human, value))
}

fn rewrite(parsed: &Parsed, vertex: &str, basis: PauliBasis, neighbor: Option<&str>) -> Result<Report, ToolError> {
    let og = &parsed.graph;
    let w = og.vertex(vertex)?;
    let b = neighbor.map(|n| og.vertex(n)).transpose()?;
    let rw = pauli_rewrite(og, w, basis, b)?;
    let t = classify_flow_transition(og, w, basis)?;
    let mut report = Report::document(emit_document(&rw.graph, None, None));
    let cliffords = rw.describe_cliffords();
    let body = format!(
        "eliminated {vertex} measured in {basis}\nflow class: {t}\nlocal Cliffords (+1 outcome): {}\nresult:\n{}",
        if cliffords.is_empty() { "none".into() } else { cliffords.join(", ") },
        report.human
    );
    report.human = with_summary(&rw.graph, body, json!({})).0;
    Ok(report)
}

fn classify_command(parsed: &Parsed, target: Option<(&str, PauliBasis)>) -> Result<Report, ToolError> {
    let og = &parsed.graph;
    let (body, value) = match target {
        None => {
            let c = classify(og);
            (format!("flow class: {c}"), json!({"class": c.to_string()}))
        }
        Some((name, basis)) => {
            let t = classify_flow_transition(og, og.vertex(name)?, basis)?;
            (
                format!("measuring {name} in {basis}: {t}"),
                json!({"vertex": name, "basis": basis.to_string(), "before": t.before.to_string(), "after": t.after.to_string()}),
            )
        }
    };
    let (human, value) = with_summary(og, body, value);
    Ok(Report::ok(human, value))
}

fn state_text(amps: &[num_complex::Complex64]) -> Vec<String> {
    amps.iter().map(|a| format!("{:+.6}{:+.6}i", a.re, a.im)).collect()
}

fn simulate(parsed: &Parsed, all_branches: bool, seed: Option<u64>, check: bool) -> Result<Report, ToolError> {
    let og = &parsed.graph;
    let Some(pattern) = &parsed.pattern else {
        return Err(ToolError::Usage("document has no `angles`, nothing to simulate".into()));
    };
    let w = match dependency(parsed)? {
        Ok(w) => w,
        Err(msg) => return Ok(negative_report(og, msg)),
    };
    let s = lazy_schedule(og, &canonical_order(og, w.layers()))?;
    let outputs = names(og, og.outputs().iter()).join(", ");

    if check {
        let rep = branch_determinism_check(pattern, &s, Some(&w), DEFAULT_BRANCH_CAP)?;
        let body = format!(
            "determinism: {} over {} branches ({} impossible), max distance {:.3e}",
            if rep.pass { "pass" } else { "FAIL" },
            rep.branches,
            rep.degenerate,
            rep.max_distance
        );
        let value = json!({"pass": rep.pass, "branches": rep.branches, "degenerate": rep.degenerate, "max_distance": rep.max_distance});
        let (human, value) = with_summary(og, body, value);
        return Ok(Report {
            code: if rep.pass { 0 } else { 1 },
            human,
            structured: value,
        });
    }

    let runs = if all_branches {
        let width = og.non_outputs().len();
        if width > DEFAULT_BRANCH_CAP {
            return Err(mbqc_core::Error::CapExceeded {
                size: width,
                cap: DEFAULT_BRANCH_CAP,
            }
            .into());
        }
        let mut runs = Vec::new();
        for k in 0..1usize << width {
            let bits: Vec<bool> = (0..width).map(|b| k >> b & 1 == 1).collect();
            match execute(pattern, &s, Some(&w), Outcomes::Forced(&bits)) {
                Ok(r) => runs.push(r),
                Err(mbqc_core::Error::DegenerateBranch(_)) => {}
                Err(e) => return Err(e.into()),
            }
        }
        runs
    } else {
        vec![execute(pattern, &s, Some(&w), Outcomes::Seeded(seed.unwrap_or(0)))?]
    };

    let mut lines = vec![format!(
        "schedule peak: {} live qubits (a full state would hold {})",
        s.residency_max(),
        og.vertex_count()
    )];
    let mut values = Vec::new();
    for r in &runs {
        let outcomes: Vec<String> = r.outcomes.iter().map(|&(v, b)| format!("{}={}", og.name(v), u8::from(b))).collect();
        lines.push(format!("outcomes {}", outcomes.join(" ")));
        lines.push(format!("  state over ({outputs}): [{}]", state_text(&r.output_state).join(", ")));
        values.push(json!({
            "outcomes": r.outcomes.iter().map(|&(v, b)| (og.name(v).to_string(), json!(b))).collect::<serde_json::Map<_, _>>(),
            "output_state": r.output_state.iter().map(|a| [a.re, a.im]).collect::<Vec<_>>(),
            "peak_live": r.peak_live,
        }));
    }
    let value = json!({"outputs": names(og, og.outputs().iter()), "peak_live": s.residency_max(), "runs": values});
    let (human, value) = with_summary(og, lines.join("\n"), value);
    Ok(Report::ok(human, value))
}

fn generate(family: Family, n: Option<usize>, m: Option<usize>, seed: u64) -> Result<Report, ToolError> {
    let need = |v: Option<usize>, flag: &str| v.ok_or_else(|| ToolError::Usage(format!("this family needs --{flag}")));
    let inst = match family {
        Family::Hn => gen_hn(need(n, "n")?, need(m, "m")?),
        Family::Hprime => gen_hprime(need(n, "n")?, need(m, "m")?),
        Family::Hc => gen_hc(need(n, "n")?, need(m, "m")?),
        Family::Chain => gen_linear_cluster(need(m, "m")?),
        Family::Random => gen_random_flow_graph(need(n, "n")?, need(m, "m")?, seed),
    }?;
    Ok(Report::document(emit_document(&inst.graph, None, inst.witness.as_ref())))
}

fn export(parsed: &Parsed, dot: bool) -> Result<Report, ToolError> {
    let og = &parsed.graph;
    if !dot {
        return Ok(Report::document(emit_document(og, parsed.pattern.as_ref(), parsed.witness.as_ref())));
    }
    let witness = match &parsed.witness {
        Some(w) => Some(w.clone()),
        None => find_flow(og).map(Witness::Flow),
    };
    let cover = match &witness {
        Some(Witness::Flow(f)) if og.unitary_width().is_ok() && verify_flow(og, f)?.is_pass() => {
            path_cover_from_flow(og, f).ok()
        }
        _ => None,
    };
    let text = emit_dot(
        og,
        DotAnnotations {
            layers: witness.as_ref().map(|w| w.layers()),
            paths: cover.as_ref(),
        },
    );
    Ok(Report::ok(text.clone(), Value::String(text)))
}
