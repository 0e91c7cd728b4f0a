//! Report builders behind each CLI subcommand. Every function is pure
//! given (inputs, config): reports are assembled deterministically so a
//! repeated run produces byte-identical output.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::PathBuf;

use renorm_core::algebra::TargetElement;
use renorm_core::classify_scheme;
use renorm_core::graph::{critical_degree, parse_graph_doc, EdgeSet, FeynmanGraph, TheoryConfig};
use renorm_core::hopf::{Forest, LinearForm, Session};
use renorm_core::renorm::{
    bogoliubov, bwh_verify, exponential_left, exponential_right, random_character_for, BwhPair,
    Method, RenormError,
};

use crate::acceptance;
use crate::config::{OutputFormat, WorkbenchConfig};
use crate::dsl;

/// Success: report text (already rendered) plus the process exit code.
pub struct CommandOutput {
    pub report: String,
    pub exit: i32,
}

/// Hard failure: message for stderr plus the process exit code.
#[derive(Debug)]
pub struct Failure {
    pub message: String,
    pub exit: i32,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Failure {
            message: message.into(),
            exit: 2,
        }
    }
}

/// Scheme rejection is a verdict (the degree table fails its
/// inequality), not a usage error; everything else is.
fn renorm_failure(e: RenormError) -> Failure {
    let exit = match &e {
        RenormError::SchemeRejected { .. } => 1,
        _ => 2,
    };
    Failure {
        message: e.to_string(),
        exit,
    }
}

/// The parsed input set: declared theories and named graphs, plus a
/// human-readable description of where they came from.
pub struct Inputs {
    pub theories: Vec<TheoryConfig>,
    pub graphs: Vec<(String, FeynmanGraph)>,
    pub source: String,
}

/// Reads graph documents. With no files, the built-in corpus is used;
/// otherwise each file is parsed as JSON (`.json`) or as the graph DSL,
/// and any diagnostics abort with exit code 2, all of them listed.
pub fn load_inputs(files: &[PathBuf]) -> Result<Inputs, Failure> {
    if files.is_empty() {
        let out = dsl::parse_graph_dsl(crate::CORPUS_DSL);
        if !out.diagnostics.is_empty() {
            let lines: Vec<String> = out.diagnostics.iter().map(|d| d.to_string()).collect();
            return Err(Failure::usage(format!(
                "built-in corpus failed to parse:\n{}",
                lines.join("\n")
            )));
        }
        return Ok(Inputs {
            theories: out.theories,
            graphs: out.graphs,
            source: "built-in corpus".to_string(),
        });
    }
    let mut theories = Vec::new();
    let mut graphs = Vec::new();
    let mut problems: Vec<String> = Vec::new();
    for path in files {
        let text = match std::fs::read_to_string(path) {
            Ok(t) => t,
            Err(e) => {
                problems.push(format!("{}: {e}", path.display()));
                continue;
            }
        };
        if path.extension().is_some_and(|e| e == "json") {
            match parse_graph_doc(&text) {
                Ok((ts, gs)) => {
                    theories.extend(ts);
                    graphs.extend(gs);
                }
                Err(e) => problems.push(format!("{}: {e}", path.display())),
            }
        } else {
            let out = dsl::parse_graph_dsl(&text);
            for d in &out.diagnostics {
                problems.push(format!("{}: {d}", path.display()));
            }
            theories.extend(out.theories);
            graphs.extend(out.graphs);
        }
    }
    if !problems.is_empty() {
        return Err(Failure::usage(problems.join("\n")));
    }
    let source = files
        .iter()
        .map(|p| p.display().to_string())
        .collect::<Vec<_>>()
        .join(", ");
    Ok(Inputs {
        theories,
        graphs,
        source,
    })
}

/// Registers every input graph and closes the algebra session.
pub fn build_session(inputs: &Inputs, max_grade: u32) -> Result<Session, Failure> {
    let mut session = Session::new(max_grade);
    for (name, graph) in &inputs.graphs {
        session
            .register_named(name, graph)
            .map_err(|e| Failure::usage(format!("cannot register graph '{name}': {e}")))?;
    }
    session
        .close()
        .map_err(|e| Failure::usage(format!("cannot close the session: {e}")))?;
    Ok(session)
}

/// Splits positional arguments into file paths and an optional
/// `random:seed=N` character request.
pub fn split_character_args(args: &[String]) -> Result<(Vec<PathBuf>, Option<u64>), Failure> {
    let mut files = Vec::new();
    let mut char_seed = None;
    for arg in args {
        if let Some(rest) = arg.strip_prefix("random:") {
            let seed = rest
                .strip_prefix("seed=")
                .and_then(|s| s.parse::<u64>().ok())
                .ok_or_else(|| {
                    Failure::usage(format!(
                        "bad character request '{arg}': expected random:seed=<integer>"
                    ))
                })?;
            if char_seed.replace(seed).is_some() {
                return Err(Failure::usage(
                    "more than one random:seed=<N> character request",
                ));
            }
        } else {
            files.push(PathBuf::from(arg));
        }
    }
    Ok((files, char_seed))
}

fn member_edge_indices(mask: EdgeSet) -> Vec<u32> {
    (0u32..64).filter(|i| mask & (1u64 << i) != 0).collect()
}

fn member_label(mask: EdgeSet) -> String {
    let inner: Vec<String> = member_edge_indices(mask)
        .iter()
        .map(|i| format!("e{i}"))
        .collect();
    format!("{{{}}}", inner.join(","))
}

fn forest_label(session: &Session, forest: &Forest) -> String {
    if forest.is_unit() {
        return "1".to_string();
    }
    let mut parts = Vec::new();
    for (id, mult) in forest.factors() {
        let name = session.name(id);
        if mult == 1 {
            parts.push(name.to_string());
        } else {
            parts.push(format!("{name}^{mult}"));
        }
    }
    parts.join("·")
}

fn edge_legend(g: &FeynmanGraph) -> String {
    g.edges()
        .iter()
        .enumerate()
        .map(|(i, (a, b))| {
            format!(
                "e{i}={}-{}",
                g.vertex_names()[*a as usize],
                g.vertex_names()[*b as usize]
            )
        })
        .collect::<Vec<_>>()
        .join(" ")
}

/// `wood`: every spinney of every input graph, via edge indices into the
/// graph's normalised edge list.
pub fn wood(config: &WorkbenchConfig, files: &[PathBuf]) -> Result<CommandOutput, Failure> {
    let inputs = load_inputs(files)?;
    match config.format {
        OutputFormat::Text => {
            let mut report = String::new();
            let _ = writeln!(report, "wood report");
            let _ = writeln!(
                report,
                "inputs: {} ({} graphs)",
                inputs.source,
                inputs.graphs.len()
            );
            for (name, g) in &inputs.graphs {
                let wood = g
                    .wood()
                    .map_err(|e| Failure::usage(format!("wood of '{name}': {e}")))?;
                let _ = writeln!(report);
                let noun = if wood.len() == 1 { "spinney" } else { "spinneys" };
                let _ = writeln!(
                    report,
                    "graph {name} (theory {}): {} {noun}",
                    g.theory().name(),
                    wood.len()
                );
                if !wood.is_empty() {
                    let _ = writeln!(report, "  edges: {}", edge_legend(g));
                }
                for (i, spinney) in wood.iter().enumerate() {
                    let members: Vec<String> = spinney
                        .members()
                        .iter()
                        .map(|&m| member_label(m))
                        .collect();
                    let _ = writeln!(report, "  S{}: {}", i + 1, members.join(" "));
                }
            }
            Ok(CommandOutput { report, exit: 0 })
        }
        OutputFormat::Json => {
            let mut rows = Vec::new();
            for (name, g) in &inputs.graphs {
                let wood = g
                    .wood()
                    .map_err(|e| Failure::usage(format!("wood of '{name}': {e}")))?;
                let spinneys: Vec<Vec<Vec<u32>>> = wood
                    .iter()
                    .map(|s| {
                        s.members()
                            .iter()
                            .map(|&m| member_edge_indices(m))
                            .collect()
                    })
                    .collect();
                rows.push(serde_json::json!({
                    "name": name,
                    "theory": g.theory().name(),
                    "spinneyCount": spinneys.len(),
                    "spinneys": spinneys,
                }));
            }
            let value = serde_json::json!({
                "command": "wood",
                "inputs": inputs.source,
                "graphs": rows,
            });
            Ok(CommandOutput {
                report: pretty(&value),
                exit: 0,
            })
        }
    }
}

/// `degrees`: loop number, internal lines, vertices, superficial degree
/// and oversubtraction degree for every input graph.
pub fn degrees(config: &WorkbenchConfig, files: &[PathBuf]) -> Result<CommandOutput, Failure> {
    let inputs = load_inputs(files)?;
    let mut rows = Vec::new();
    for (name, g) in &inputs.graphs {
        let pc = g.power_counting();
        let abar = if g.is_divergent() && g.is_one_particle_irreducible() {
            Some(
                critical_degree(g)
                    .map_err(|e| Failure::usage(format!("degree of '{name}': {e}")))?,
            )
        } else {
            None
        };
        rows.push((name.clone(), g.theory().name().to_string(), pc, abar));
    }
    match config.format {
        OutputFormat::Text => {
            let name_w = rows
                .iter()
                .map(|(n, ..)| n.len())
                .chain(["graph".len()])
                .max()
                .unwrap_or(5);
            let theory_w = rows
                .iter()
                .map(|(_, t, ..)| t.len())
                .chain(["theory".len()])
                .max()
                .unwrap_or(6);
            let mut report = String::new();
            let _ = writeln!(report, "degrees report");
            let _ = writeln!(report, "inputs: {}", inputs.source);
            let _ = writeln!(report);
            let _ = writeln!(
                report,
                "{:<name_w$}  {:<theory_w$}  {:>3} {:>3} {:>3} {:>6} {:>5}",
                "graph", "theory", "L", "l", "V", "omega", "abar"
            );
            for (name, theory, pc, abar) in &rows {
                let abar = abar.map(|v| v.to_string()).unwrap_or_else(|| "-".into());
                let _ = writeln!(
                    report,
                    "{:<name_w$}  {:<theory_w$}  {:>3} {:>3} {:>3} {:>6} {:>5}",
                    name, theory, pc.loops, pc.internal_edges, pc.vertices, pc.omega, abar
                );
            }
            Ok(CommandOutput { report, exit: 0 })
        }
        OutputFormat::Json => {
            let rows: Vec<serde_json::Value> = rows
                .iter()
                .map(|(name, theory, pc, abar)| {
                    serde_json::json!({
                        "name": name,
                        "theory": theory,
                        "loops": pc.loops,
                        "internalEdges": pc.internal_edges,
                        "vertices": pc.vertices,
                        "legs": pc.legs,
                        "omega": pc.omega,
                        "abar": abar,
                    })
                })
                .collect();
            let value = serde_json::json!({
                "command": "degrees",
                "inputs": inputs.source,
                "graphs": rows,
            });
            Ok(CommandOutput {
                report: pretty(&value),
                exit: 0,
            })
        }
    }
}

/// `coproduct`: the reduced-coproduct expansion of every input graph in
/// the closed session it generates.
pub fn coproduct(config: &WorkbenchConfig, files: &[PathBuf]) -> Result<CommandOutput, Failure> {
    let inputs = load_inputs(files)?;
    let session = build_session(&inputs, config.max_grade)?;
    let mut per_graph = Vec::new();
    for (name, _) in &inputs.graphs {
        let id = session
            .generator_by_name(name)
            .ok_or_else(|| Failure::usage(format!("graph '{name}' is not registered")))?;
        let sum = session
            .coproduct(&Forest::generator(id))
            .map_err(|e| Failure::usage(format!("coproduct of '{name}': {e}")))?;
        let terms: Vec<(String, String, u64)> = sum
            .terms()
            .map(|(l, r, m)| (forest_label(&session, l), forest_label(&session, r), m))
            .collect();
        per_graph.push((name.clone(), terms));
    }
    match config.format {
        OutputFormat::Text => {
            let mut report = String::new();
            let _ = writeln!(report, "coproduct report (max grade {})", config.max_grade);
            let _ = writeln!(report, "inputs: {}", inputs.source);
            let _ = writeln!(report);
            for (name, terms) in &per_graph {
                let rendered: Vec<String> = terms
                    .iter()
                    .map(|(l, r, m)| {
                        if *m == 1 {
                            format!("{l} ⊗ {r}")
                        } else {
                            format!("{m}·{l} ⊗ {r}")
                        }
                    })
                    .collect();
                let _ = writeln!(report, "Δ({name}) = {}", rendered.join(" + "));
            }
            Ok(CommandOutput { report, exit: 0 })
        }
        OutputFormat::Json => {
            let rows: Vec<serde_json::Value> = per_graph
                .iter()
                .map(|(name, terms)| {
                    let terms: Vec<serde_json::Value> = terms
                        .iter()
                        .map(|(l, r, m)| {
                            serde_json::json!({
                                "left": l,
                                "right": r,
                                "multiplicity": m,
                            })
                        })
                        .collect();
                    serde_json::json!({ "name": name, "terms": terms })
                })
                .collect();
            let value = serde_json::json!({
                "command": "coproduct",
                "inputs": inputs.source,
                "maxGrade": config.max_grade,
                "graphs": rows,
            });
            Ok(CommandOutput {
                report: pretty(&value),
                exit: 0,
            })
        }
    }
}

/// `classify`: run both identity families over the session corpus and
/// report which projector sides absorb the product structure.
pub fn classify(config: &WorkbenchConfig, files: &[PathBuf]) -> Result<CommandOutput, Failure> {
    let inputs = load_inputs(files)?;
    let session = build_session(&inputs, config.max_grade)?;
    let scheme = config
        .scheme
        .resolve(&session)
        .map_err(Failure::usage)?;
    let cls = classify_scheme(&scheme, &session, config.samples, config.seed)
        .map_err(renorm_failure)?;
    let exit = if cls.ct.is_confirmed() || cls.rt.is_confirmed() {
        0
    } else {
        1
    };
    match config.format {
        OutputFormat::Text => {
            let mut report = String::new();
            let _ = writeln!(report, "classification report");
            let _ = writeln!(report, "scheme: {} (model {})", cls.scheme_name, cls.model);
            let _ = writeln!(
                report,
                "samples per instance: {}   seed: {}   classes: {}",
                cls.samples,
                cls.seed,
                session.generator_count()
            );
            let _ = writeln!(report);
            for (label, status, witnesses) in [
                ("counterterm identity", &cls.ct, &cls.ct_witnesses),
                ("renormalised identity", &cls.rt, &cls.rt_witnesses),
            ] {
                let _ = writeln!(report, "{label}: {}", status.label());
                if let renorm_core::IdentityStatus::Refuted(w) = status {
                    let spinney: Vec<String> =
                        w.spinney.iter().map(|&m| member_label(m)).collect();
                    let _ = writeln!(
                        report,
                        "  first counterexample: graph {}, spinney {}, sample {}",
                        w.graph,
                        spinney.join(" "),
                        w.sample
                    );
                    for (role, value) in &w.values {
                        let _ = writeln!(report, "    {role} = {value}");
                    }
                    let _ = writeln!(report, "    product of projections = {}", w.rhs);
                    let _ = writeln!(report, "    projector applied once = {}", w.lhs);
                }
                if witnesses.len() > 1 {
                    let rest: Vec<String> = witnesses
                        .iter()
                        .skip(1)
                        .map(|w| {
                            let spinney: Vec<String> =
                                w.spinney.iter().map(|&m| member_label(m)).collect();
                            format!("{} {}", w.graph, spinney.join(" "))
                        })
                        .collect();
                    let _ = writeln!(report, "  further failing instances: {}", rest.join("; "));
                }
            }
            let _ = writeln!(
                report,
                "splitting on both sides: {}",
                if cls.st_confirmed() { "yes" } else { "no" }
            );
            Ok(CommandOutput { report, exit })
        }
        OutputFormat::Json => {
            let mut value = cls.to_json();
            if let serde_json::Value::Object(map) = &mut value {
                map.insert("command".into(), "classify".into());
                map.insert(
                    "counterexamples".into(),
                    serde_json::json!({
                        "counterterm": cls.ct_witnesses,
                        "renormalised": cls.rt_witnesses,
                    }),
                );
            }
            Ok(CommandOutput {
                report: pretty(&value),
                exit,
            })
        }
    }
}

fn character_values_lines(
    session: &Session,
    label: &str,
    form: &LinearForm,
    grade: u32,
    out: &mut String,
) {
    for id in session.generators() {
        if session.grade(id) > grade {
            continue;
        }
        let value = form
            .generator_value(id)
            .cloned()
            .unwrap_or_else(|| TargetElement::zero(form.model()));
        let _ = writeln!(out, "  {label}({}) = {}", session.name(id), value);
    }
}

/// `renormalize`: run one construction and verify the factorisation it
/// claims.
pub fn renormalize(
    config: &WorkbenchConfig,
    method: Method,
    args: &[String],
) -> Result<CommandOutput, Failure> {
    let (files, char_seed) = split_character_args(args)?;
    let inputs = load_inputs(&files)?;
    let session = build_session(&inputs, config.max_grade)?;
    let scheme = config.scheme.resolve(&session).map_err(Failure::usage)?;
    let seed = char_seed.unwrap_or(config.seed);
    let n = config.max_grade;
    let phi = random_character_for(&session, &scheme, n, seed).map_err(renorm_failure)?;

    let mut bog_result = None;
    let mut steps: Vec<(u32, bool, bool)> = Vec::new();
    let pair: BwhPair = match method {
        Method::Bogoliubov => {
            let res = bogoliubov(&phi, &scheme, &session, n).map_err(renorm_failure)?;
            let pair = res.as_bwh_pair();
            bog_result = Some(res);
            pair
        }
        Method::ExpLeft | Method::ExpRight => {
            let run = if method == Method::ExpLeft {
                exponential_left(&phi, &scheme, &session, n).map_err(renorm_failure)?
            } else {
                exponential_right(&phi, &scheme, &session, n).map_err(renorm_failure)?
            };
            steps = run
                .steps
                .iter()
                .map(|s| (s.grade, s.upsilon_check.holds, s.phi_minus_check.holds))
                .collect();
            run.pair
        }
    };
    let verified = bwh_verify(&phi, &pair, &scheme, &session, n).map_err(renorm_failure)?;
    let exit = if verified { 0 } else { 1 };

    match config.format {
        OutputFormat::Text => {
            let mut report = String::new();
            let _ = writeln!(report, "renormalisation report");
            let _ = writeln!(
                report,
                "scheme: {} (model {})   method: {}   max grade: {}",
                scheme.name(),
                scheme.model(),
                method.name(),
                n
            );
            let _ = writeln!(report, "inputs: {}   character: random:seed={seed}", inputs.source);
            let _ = writeln!(report);
            if let Some(res) = &bog_result {
                for record in res.generator_records(&session) {
                    let _ = writeln!(report, "{}:", record.name);
                    let _ = writeln!(report, "  C    = {}", record.c);
                    let _ = writeln!(report, "  Rbar = {}", record.rbar);
                    let _ = writeln!(report, "  R    = {}", record.r);
                }
            } else {
                for (grade, upsilon_ok, minus_ok) in &steps {
                    let _ = writeln!(
                        report,
                        "grade {grade}: correction factor on the regular side: {}; \
                         accumulated singular part on the singular side: {}",
                        yes_no(*upsilon_ok),
                        yes_no(*minus_ok)
                    );
                }
                let _ = writeln!(report);
                character_values_lines(&session, "phi-", &pair.phi_minus, n, &mut report);
                character_values_lines(&session, "phi+", &pair.phi_plus, n, &mut report);
            }
            let _ = writeln!(report);
            let equation = match pair.method {
                Method::ExpRight => "phi * phi+ = phi-",
                _ => "phi- * phi = phi+",
            };
            let _ = writeln!(
                report,
                "verification: {equation} with the stated side membership through grade {n}: {}",
                yes_no(verified)
            );
            Ok(CommandOutput { report, exit })
        }
        OutputFormat::Json => {
            let to_json = |form: &LinearForm| {
                form.to_json(&session)
                    .map_err(|e| Failure::usage(e.to_string()))
            };
            let mut value = serde_json::json!({
                "command": "renormalize",
                "method": method.name(),
                "scheme": scheme.name(),
                "model": scheme.model().to_string(),
                "maxGrade": n,
                "characterSeed": seed,
                "phi": to_json(&phi)?,
                "phiMinus": to_json(&pair.phi_minus)?,
                "phiPlus": to_json(&pair.phi_plus)?,
                "verified": verified,
            });
            if let Some(res) = &bog_result {
                if let serde_json::Value::Object(map) = &mut value {
                    map.insert("results".into(), res.to_json(&session));
                }
            } else if let serde_json::Value::Object(map) = &mut value {
                let steps: Vec<serde_json::Value> = steps
                    .iter()
                    .map(|(grade, u, m)| {
                        serde_json::json!({
                            "grade": grade,
                            "regularSideHolds": u,
                            "singularSideHolds": m,
                        })
                    })
                    .collect();
                map.insert("steps".into(), serde_json::Value::Array(steps));
            }
            Ok(CommandOutput {
                report: pretty(&value),
                exit,
            })
        }
    }
}

/// `compare`: run all three constructions on the same character and diff
/// the counterterm and renormalised sides forest by forest.
pub fn compare(config: &WorkbenchConfig, args: &[String]) -> Result<CommandOutput, Failure> {
    let (files, char_seed) = split_character_args(args)?;
    let inputs = load_inputs(&files)?;
    let session = build_session(&inputs, config.max_grade)?;
    let scheme = config.scheme.resolve(&session).map_err(Failure::usage)?;
    let seed = char_seed.unwrap_or(config.seed);
    let n = config.max_grade;
    let phi = random_character_for(&session, &scheme, n, seed).map_err(renorm_failure)?;

    let bog = bogoliubov(&phi, &scheme, &session, n)
        .map_err(renorm_failure)?
        .as_bwh_pair();
    let left = exponential_left(&phi, &scheme, &session, n)
        .map_err(renorm_failure)?
        .pair;
    let right = exponential_right(&phi, &scheme, &session, n)
        .map_err(renorm_failure)?
        .pair
        .normal_pair(&session)
        .map_err(renorm_failure)?;
    // Diff both halves on every forest up to the working grade.
    let forests = session
        .forests_up_to(n)
        .map_err(|e| Failure::usage(e.to_string()))?;
    let sides: [(&str, [(&str, &LinearForm); 3]); 2] = [
        (
            "C",
            [
                ("bogoliubov", &bog.phi_minus),
                ("exp-left", &left.phi_minus),
                ("exp-right", &right.0),
            ],
        ),
        (
            "R",
            [
                ("bogoliubov", &bog.phi_plus),
                ("exp-left", &left.phi_plus),
                ("exp-right", &right.1),
            ],
        ),
    ];
    let mut diffs: Vec<(String, String, Vec<(String, TargetElement)>)> = Vec::new();
    for forest in &forests {
        for (side, forms) in &sides {
            let mut values = Vec::new();
            for (name, form) in forms {
                let v = form
                    .eval(&session, forest)
                    .map_err(|e| Failure::usage(e.to_string()))?;
                values.push((name.to_string(), v));
            }
            let identical = values.windows(2).all(|w| w[0].1 == w[1].1);
            if !identical {
                diffs.push((forest_label(&session, forest), side.to_string(), values));
            }
        }
    }
    let exit = if diffs.is_empty() { 0 } else { 1 };

    match config.format {
        OutputFormat::Text => {
            let mut report = String::new();
            let _ = writeln!(report, "comparison report");
            let _ = writeln!(
                report,
                "scheme: {} (model {})   max grade: {}   character: random:seed={seed}",
                scheme.name(),
                scheme.model(),
                n
            );
            let _ = writeln!(report, "inputs: {}", inputs.source);
            let _ = writeln!(
                report,
                "methods: bogoliubov, exp-left, exp-right (right pair normalised to the left equation)"
            );
            let _ = writeln!(report);
            if diffs.is_empty() {
                let _ = writeln!(report, "all methods identical");
            } else {
                let _ = writeln!(
                    report,
                    "{} forest value(s) differ between methods:",
                    diffs.len()
                );
                for (forest, side, values) in &diffs {
                    let _ = writeln!(report, "forest {forest}, side {side}:");
                    for (method, value) in values {
                        let _ = writeln!(report, "  {method:<11} {value}");
                    }
                }
            }
            Ok(CommandOutput { report, exit })
        }
        OutputFormat::Json => {
            let diffs: Vec<serde_json::Value> = diffs
                .iter()
                .map(|(forest, side, values)| {
                    let values: BTreeMap<String, &TargetElement> = values
                        .iter()
                        .map(|(m, v)| (m.clone(), v))
                        .collect();
                    serde_json::json!({
                        "forest": forest,
                        "side": side,
                        "values": values,
                    })
                })
                .collect();
            let value = serde_json::json!({
                "command": "compare",
                "scheme": scheme.name(),
                "model": scheme.model().to_string(),
                "maxGrade": n,
                "characterSeed": seed,
                "identical": diffs.is_empty(),
                "differences": diffs,
            });
            Ok(CommandOutput {
                report: pretty(&value),
                exit,
            })
        }
    }
}

/// `selftest`: the full acceptance suite, one line per criterion.
pub fn selftest(config: &WorkbenchConfig) -> Result<CommandOutput, Failure> {
    let outcomes = acceptance::run_all();
    let all_pass = outcomes.iter().all(|o| o.pass);
    let exit = if all_pass { 0 } else { 1 };
    match config.format {
        OutputFormat::Text => {
            let mut report = String::new();
            for line in acceptance::render_lines(&outcomes) {
                let _ = writeln!(report, "{line}");
            }
            let _ = writeln!(
                report,
                "selftest: {}/{} criteria passed",
                outcomes.iter().filter(|o| o.pass).count(),
                outcomes.len()
            );
            Ok(CommandOutput { report, exit })
        }
        OutputFormat::Json => {
            let rows: Vec<serde_json::Value> = outcomes
                .iter()
                .map(|o| {
                    serde_json::json!({
                        "criterion": o.index,
                        "description": o.description,
                        "pass": o.pass,
                        "detail": o.detail,
                    })
                })
                .collect();
            let value = serde_json::json!({
                "command": "selftest",
                "pass": all_pass,
                "criteria": rows,
            });
            Ok(CommandOutput {
                report: pretty(&value),
                exit,
            })
        }
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn pretty(value: &serde_json::Value) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("reports serialise");
    text.push('\n');
    text
}
