//! A small text format for theories and graphs, with total parsing and
//! source-located diagnostics.
//!
//! Grammar:
//!
//! ```text
//! file       := (theoryDecl | graphDecl)*
//! theoryDecl := "theory" ident "{" "dimension" int ";" "valence" int ";" "}"
//! graphDecl  := "graph" ident ":" ident "{"
//!                 "vertices" ident+ ";"
//!                 ("edge" ident ident ";")*
//!                 ("leg" ident ";")*
//!               "}"
//! ```
//!
//! `#` starts a comment running to the end of the line. Duplicate `edge`
//! lines express multigraphs, and repeating a `leg` vertex attaches more
//! than one external line to it. The parser never aborts: every syntax
//! error and every semantic violation (unknown theory, unknown or
//! duplicate vertex, wrong vertex valence, disconnected graph) is
//! collected with its line and column, recovering at the next `;` or `}`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use renorm_core::graph::{FeynmanGraph, TheoryConfig};

/// One located problem in the input text. Lines and columns are 1-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostic {
    pub line: u32,
    pub col: u32,
    pub message: String,
}

impl Diagnostic {
    fn new(line: u32, col: u32, message: impl Into<String>) -> Self {
        Diagnostic {
            line,
            col,
            message: message.into(),
        }
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.col, self.message)
    }
}

/// Everything a parse produces: the declarations that survived their
/// checks, plus every diagnostic. An input is valid iff `diagnostics`
/// is empty.
#[derive(Debug, Default)]
pub struct DslOutcome {
    pub theories: Vec<TheoryConfig>,
    pub graphs: Vec<(String, FeynmanGraph)>,
    pub diagnostics: Vec<Diagnostic>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum TokKind {
    Ident,
    Int,
    LBrace,
    RBrace,
    Colon,
    Semi,
}

#[derive(Clone, Debug)]
struct Tok {
    kind: TokKind,
    text: String,
    line: u32,
    col: u32,
}

fn lex(text: &str) -> (Vec<Tok>, Vec<Diagnostic>) {
    let mut toks = Vec::new();
    let mut diags = Vec::new();
    let mut line: u32 = 1;
    let mut col: u32 = 1;
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        if c == '\n' {
            chars.next();
            line += 1;
            col = 1;
        } else if c.is_whitespace() {
            chars.next();
            col += 1;
        } else if c == '#' {
            while let Some(&c) = chars.peek() {
                if c == '\n' {
                    break;
                }
                chars.next();
            }
        } else if c.is_ascii_alphabetic() || c == '_' {
            let (start_line, start_col) = (line, col);
            let mut text = String::new();
            while let Some(&c) = chars.peek() {
                if c.is_ascii_alphanumeric() || c == '_' {
                    text.push(c);
                    chars.next();
                    col += 1;
                } else {
                    break;
                }
            }
            toks.push(Tok {
                kind: TokKind::Ident,
                text,
                line: start_line,
                col: start_col,
            });
        } else if c.is_ascii_digit() {
            let (start_line, start_col) = (line, col);
            let mut text = String::new();
            while let Some(&c) = chars.peek() {
                if c.is_ascii_digit() {
                    text.push(c);
                    chars.next();
                    col += 1;
                } else {
                    break;
                }
            }
            toks.push(Tok {
                kind: TokKind::Int,
                text,
                line: start_line,
                col: start_col,
            });
        } else {
            let kind = match c {
                '{' => Some(TokKind::LBrace),
                '}' => Some(TokKind::RBrace),
                ':' => Some(TokKind::Colon),
                ';' => Some(TokKind::Semi),
                _ => None,
            };
            match kind {
                Some(kind) => toks.push(Tok {
                    kind,
                    text: c.to_string(),
                    line,
                    col,
                }),
                None => diags.push(Diagnostic::new(
                    line,
                    col,
                    format!("unexpected character '{c}'"),
                )),
            }
            chars.next();
            col += 1;
        }
    }
    (toks, diags)
}

#[derive(Debug)]
struct RawTheory {
    name: Tok,
    dimension: i64,
    valence: i64,
}

#[derive(Debug)]
struct RawGraph {
    name: Tok,
    theory: Tok,
    vertices: Vec<Tok>,
    edges: Vec<(Tok, Tok)>,
    legs: Vec<Tok>,
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
    diags: Vec<Diagnostic>,
    last_line: u32,
    last_col: u32,
}

impl Parser {
    fn new(toks: Vec<Tok>, diags: Vec<Diagnostic>) -> Self {
        let (last_line, last_col) = toks
            .last()
            .map(|t| (t.line, t.col + t.text.len() as u32))
            .unwrap_or((1, 1));
        Parser {
            toks,
            pos: 0,
            diags,
            last_line,
            last_col,
        }
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn here(&self) -> (u32, u32) {
        self.peek()
            .map(|t| (t.line, t.col))
            .unwrap_or((self.last_line, self.last_col))
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn error_here(&mut self, message: impl Into<String>) {
        let (line, col) = self.here();
        self.diags.push(Diagnostic::new(line, col, message));
    }

    fn describe(&self) -> String {
        match self.peek() {
            Some(t) => format!("'{}'", t.text),
            None => "end of input".to_string(),
        }
    }

    /// Skips forward until just past the next `;` or `}`, the statement
    /// boundaries the grammar guarantees.
    fn recover(&mut self) {
        while let Some(t) = self.peek() {
            let stop = matches!(t.kind, TokKind::Semi | TokKind::RBrace);
            self.pos += 1;
            if stop {
                return;
            }
        }
    }

    fn expect_kind(&mut self, kind: TokKind, what: &str) -> Option<Tok> {
        match self.peek() {
            Some(t) if t.kind == kind => self.bump(),
            _ => {
                let found = self.describe();
                self.error_here(format!("expected {what}, found {found}"));
                None
            }
        }
    }

    fn expect_keyword(&mut self, word: &str) -> Option<Tok> {
        match self.peek() {
            Some(t) if t.kind == TokKind::Ident && t.text == word => self.bump(),
            _ => {
                let found = self.describe();
                self.error_here(format!("expected '{word}', found {found}"));
                None
            }
        }
    }

    fn expect_int(&mut self, what: &str) -> Option<i64> {
        let tok = self.expect_kind(TokKind::Int, what)?;
        match tok.text.parse::<i64>() {
            Ok(v) => Some(v),
            Err(_) => {
                self.diags.push(Diagnostic::new(
                    tok.line,
                    tok.col,
                    format!("integer '{}' is out of range", tok.text),
                ));
                None
            }
        }
    }

    fn at_keyword(&self, word: &str) -> bool {
        matches!(self.peek(), Some(t) if t.kind == TokKind::Ident && t.text == word)
    }

    fn parse_file(&mut self) -> (Vec<RawTheory>, Vec<RawGraph>) {
        let mut theories = Vec::new();
        let mut graphs = Vec::new();
        while self.peek().is_some() {
            if self.at_keyword("theory") {
                if let Some(t) = self.parse_theory() {
                    theories.push(t);
                }
            } else if self.at_keyword("graph") {
                if let Some(g) = self.parse_graph() {
                    graphs.push(g);
                }
            } else {
                let found = self.describe();
                self.error_here(format!("expected 'theory' or 'graph', found {found}"));
                self.recover();
            }
        }
        (theories, graphs)
    }

    fn parse_theory(&mut self) -> Option<RawTheory> {
        self.expect_keyword("theory")?;
        let parsed = (|| {
            let name = self.expect_kind(TokKind::Ident, "a theory name")?;
            self.expect_kind(TokKind::LBrace, "'{'")?;
            self.expect_keyword("dimension")?;
            let dimension = self.expect_int("the dimension")?;
            self.expect_kind(TokKind::Semi, "';'")?;
            self.expect_keyword("valence")?;
            let valence = self.expect_int("the valence")?;
            self.expect_kind(TokKind::Semi, "';'")?;
            self.expect_kind(TokKind::RBrace, "'}'")?;
            Some(RawTheory {
                name,
                dimension,
                valence,
            })
        })();
        if parsed.is_none() {
            self.recover();
        }
        parsed
    }

    fn parse_graph(&mut self) -> Option<RawGraph> {
        self.expect_keyword("graph")?;
        let header = (|| {
            let name = self.expect_kind(TokKind::Ident, "a graph name")?;
            self.expect_kind(TokKind::Colon, "':'")?;
            let theory = self.expect_kind(TokKind::Ident, "a theory name")?;
            self.expect_kind(TokKind::LBrace, "'{'")?;
            Some((name, theory))
        })();
        let Some((name, theory)) = header else {
            self.recover();
            return None;
        };

        let mut graph = RawGraph {
            name,
            theory,
            vertices: Vec::new(),
            edges: Vec::new(),
            legs: Vec::new(),
        };

        // The vertex list.
        if self.expect_keyword("vertices").is_some() {
            while matches!(self.peek(), Some(t) if t.kind == TokKind::Ident) {
                graph.vertices.push(self.bump().unwrap());
            }
            if graph.vertices.is_empty() {
                self.error_here("expected at least one vertex name");
            }
            if self.expect_kind(TokKind::Semi, "';'").is_none() {
                self.recover();
            }
        } else {
            self.recover();
        }

        // Edge and leg statements, then the closing brace.
        loop {
            if self.at_keyword("edge") {
                self.bump();
                let ok = (|| {
                    let a = self.expect_kind(TokKind::Ident, "a vertex name")?;
                    let b = self.expect_kind(TokKind::Ident, "a vertex name")?;
                    self.expect_kind(TokKind::Semi, "';'")?;
                    graph.edges.push((a, b));
                    Some(())
                })();
                if ok.is_none() {
                    self.recover();
                }
            } else if self.at_keyword("leg") {
                self.bump();
                let ok = (|| {
                    let v = self.expect_kind(TokKind::Ident, "a vertex name")?;
                    self.expect_kind(TokKind::Semi, "';'")?;
                    graph.legs.push(v);
                    Some(())
                })();
                if ok.is_none() {
                    self.recover();
                }
            } else if matches!(self.peek(), Some(t) if t.kind == TokKind::RBrace) {
                self.bump();
                break;
            } else if self.peek().is_none() {
                self.error_here("expected 'edge', 'leg' or '}', found end of input");
                break;
            } else {
                let found = self.describe();
                self.error_here(format!("expected 'edge', 'leg' or '}}', found {found}"));
                self.recover();
            }
        }
        Some(graph)
    }
}

/// Parses a whole document. Never panics; see [`DslOutcome`].
pub fn parse_graph_dsl(text: &str) -> DslOutcome {
    let (toks, lex_diags) = lex(text);
    let mut parser = Parser::new(toks, lex_diags);
    let (raw_theories, raw_graphs) = parser.parse_file();
    let mut out = DslOutcome {
        diagnostics: parser.diags,
        ..DslOutcome::default()
    };

    // Resolve theories first so graphs may reference a theory declared
    // anywhere in the file.
    let mut theory_map: BTreeMap<String, TheoryConfig> = BTreeMap::new();
    for raw in &raw_theories {
        if theory_map.contains_key(&raw.name.text) {
            out.diagnostics.push(Diagnostic::new(
                raw.name.line,
                raw.name.col,
                format!("theory '{}' is declared twice", raw.name.text),
            ));
            continue;
        }
        let valence = u32::try_from(raw.valence).unwrap_or(0);
        match TheoryConfig::new(&raw.name.text, raw.dimension, valence) {
            Ok(t) => {
                theory_map.insert(raw.name.text.clone(), t.clone());
                out.theories.push(t);
            }
            Err(e) => out.diagnostics.push(Diagnostic::new(
                raw.name.line,
                raw.name.col,
                format!("invalid theory '{}': {e}", raw.name.text),
            )),
        }
    }

    let mut graph_names = BTreeSet::new();
    for raw in &raw_graphs {
        let mut bad = false;
        if !graph_names.insert(raw.name.text.clone()) {
            out.diagnostics.push(Diagnostic::new(
                raw.name.line,
                raw.name.col,
                format!("graph '{}' is declared twice", raw.name.text),
            ));
            continue;
        }
        let theory = match theory_map.get(&raw.theory.text) {
            Some(t) => t.clone(),
            None => {
                out.diagnostics.push(Diagnostic::new(
                    raw.theory.line,
                    raw.theory.col,
                    format!("unknown theory '{}'", raw.theory.text),
                ));
                continue;
            }
        };

        // Vertex table; duplicates are reported at the repeat.
        let mut vertex_span: BTreeMap<&str, (u32, u32)> = BTreeMap::new();
        for v in &raw.vertices {
            if vertex_span.contains_key(v.text.as_str()) {
                out.diagnostics.push(Diagnostic::new(
                    v.line,
                    v.col,
                    format!("vertex '{}' is declared twice", v.text),
                ));
                bad = true;
            } else {
                vertex_span.insert(v.text.as_str(), (v.line, v.col));
            }
        }
        let is_first = |v: &Tok| vertex_span.get(v.text.as_str()) == Some(&(v.line, v.col));

        // Endpoint resolution; each unknown name is reported where used.
        let mut degree: BTreeMap<&str, u32> = raw
            .vertices
            .iter()
            .map(|v| (v.text.as_str(), 0u32))
            .collect();
        let mut adjacency: BTreeMap<&str, Vec<&str>> = BTreeMap::new();
        let check_endpoint = |tok: &Tok,
                                  diags: &mut Vec<Diagnostic>,
                                  degree: &mut BTreeMap<&str, u32>|
         -> bool {
            if degree.contains_key(tok.text.as_str()) {
                true
            } else {
                diags.push(Diagnostic::new(
                    tok.line,
                    tok.col,
                    format!("unknown vertex '{}'", tok.text),
                ));
                false
            }
        };
        for (a, b) in &raw.edges {
            let ok_a = check_endpoint(a, &mut out.diagnostics, &mut degree);
            let ok_b = check_endpoint(b, &mut out.diagnostics, &mut degree);
            if ok_a && ok_b {
                *degree.get_mut(a.text.as_str()).unwrap() += 1;
                *degree.get_mut(b.text.as_str()).unwrap() += 1;
                adjacency.entry(a.text.as_str()).or_default().push(&b.text);
                adjacency.entry(b.text.as_str()).or_default().push(&a.text);
            } else {
                bad = true;
            }
        }
        for v in &raw.legs {
            if check_endpoint(v, &mut out.diagnostics, &mut degree) {
                *degree.get_mut(v.text.as_str()).unwrap() += 1;
            } else {
                bad = true;
            }
        }

        // Valence: every vertex carries exactly `valence` line ends.
        for v in &raw.vertices {
            if let Some(&d) = degree.get(v.text.as_str()) {
                if is_first(v) && d != theory.valence() {
                    out.diagnostics.push(Diagnostic::new(
                        v.line,
                        v.col,
                        format!(
                            "vertex '{}' has degree {} but theory '{}' requires valence {}",
                            v.text,
                            d,
                            theory.name(),
                            theory.valence()
                        ),
                    ));
                    bad = true;
                }
            }
        }

        // Connectivity over internal edges.
        if let Some(first) = raw.vertices.first() {
            let mut seen = BTreeSet::from([first.text.as_str()]);
            let mut stack = vec![first.text.as_str()];
            while let Some(v) = stack.pop() {
                for &w in adjacency.get(v).into_iter().flatten() {
                    if seen.insert(w) {
                        stack.push(w);
                    }
                }
            }
            for v in &raw.vertices {
                if is_first(v) && !seen.contains(v.text.as_str()) {
                    out.diagnostics.push(Diagnostic::new(
                        v.line,
                        v.col,
                        format!(
                            "graph '{}' is disconnected: vertex '{}' is not reachable from '{}'",
                            raw.name.text, v.text, first.text
                        ),
                    ));
                    bad = true;
                }
            }
        }

        if bad {
            continue;
        }
        let vertices: Vec<&str> = raw.vertices.iter().map(|v| v.text.as_str()).collect();
        let edges: Vec<(&str, &str)> = raw
            .edges
            .iter()
            .map(|(a, b)| (a.text.as_str(), b.text.as_str()))
            .collect();
        let legs: Vec<&str> = raw.legs.iter().map(|v| v.text.as_str()).collect();
        match FeynmanGraph::new(&theory, &vertices, &edges, &legs) {
            Ok(g) => out.graphs.push((raw.name.text.clone(), g)),
            Err(e) => out.diagnostics.push(Diagnostic::new(
                raw.name.line,
                raw.name.col,
                format!("invalid graph '{}': {e}", raw.name.text),
            )),
        }
    }
    out
}

/// Writes theories and graphs back out in the canonical layout the
/// parser accepts, so that parse → render → parse is the identity on
/// graph classes.
pub fn render_dsl(theories: &[TheoryConfig], graphs: &[(String, FeynmanGraph)]) -> String {
    let mut out = String::new();
    for t in theories {
        out.push_str(&format!(
            "theory {} {{ dimension {}; valence {}; }}\n",
            t.name(),
            t.dimension(),
            t.valence()
        ));
    }
    for (name, g) in graphs {
        if !out.is_empty() {
            out.push('\n');
        }
        out.push_str(&format!("graph {} : {} {{\n", name, g.theory().name()));
        out.push_str("  vertices");
        for v in g.vertex_names() {
            out.push(' ');
            out.push_str(v);
        }
        out.push_str(";\n");
        for &(a, b) in g.edges() {
            out.push_str(&format!(
                "  edge {} {};\n",
                g.vertex_names()[a as usize],
                g.vertex_names()[b as usize]
            ));
        }
        for (_, v) in g.legs() {
            out.push_str(&format!("  leg {};\n", g.vertex_names()[*v as usize]));
        }
        out.push_str("}\n");
    }
    out
}
