//! DOT rendering of the fibration graph and a small grammar check for it.

use std::collections::{BTreeMap, BTreeSet};

use gueo_core::strata::{StratumGraph, StratumLabel};

pub fn node_id(s: StratumLabel) -> String {
    format!("w_{}_{}", s.k, s.l)
}

/// Nodes are grouped into one `rank=same` row per stratum dimension, lowest at the bottom.
pub fn render(graph: &StratumGraph) -> String {
    let mut out = format!("digraph \"strata_n{}\" {{\n", graph.n);
    out.push_str("  rankdir=BT;\n");
    out.push_str("  node [shape=plaintext];\n");
    let mut rows: BTreeMap<usize, Vec<StratumLabel>> = BTreeMap::new();
    for r in &graph.nodes {
        out.push_str(&format!("  \"{}\" [label=\"w_{{{},{}}}\"];\n", node_id(r.label), r.label.k, r.label.l));
        rows.entry(r.dim.unwrap_or(0)).or_default().push(r.label);
    }
    for (dim, labels) in &rows {
        let ids: Vec<String> = labels.iter().map(|&s| format!("\"{}\";", node_id(s))).collect();
        out.push_str(&format!("  {{ rank=same; /* dim {dim} */ {} }}\n", ids.join(" ")));
    }
    for (a, b) in &graph.edges {
        out.push_str(&format!("  \"{}\" -> \"{}\" [style=solid];\n", node_id(*a), node_id(*b)));
    }
    out.push_str("}\n");
    out
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DotSummary {
    pub directed: bool,
    /// Every node mentioned in a node or edge statement.
    pub nodes: BTreeSet<String>,
    pub edges: Vec<(String, String)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Token {
    Id(String),
    Punct(&'static str),
}

fn tokenize(text: &str) -> Result<Vec<Token>, String> {
    let chars: Vec<char> = text.chars().collect();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c == '/' && chars.get(i + 1) == Some(&'*') {
            let end = (i + 2..chars.len().saturating_sub(1))
                .find(|&j| chars[j] == '*' && chars[j + 1] == '/')
                .ok_or("unterminated comment")?;
            i = end + 2;
        } else if c == '/' && chars.get(i + 1) == Some(&'/') || c == '#' {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
        } else if c == '"' {
            let mut s = String::new();
            i += 1;
            loop {
                match chars.get(i) {
                    None => return Err("unterminated string".to_string()),
                    Some('"') => break,
                    Some('\\') if i + 1 < chars.len() => {
                        s.push(chars[i + 1]);
                        i += 2;
                    }
                    Some(&ch) => {
                        s.push(ch);
                        i += 1;
                    }
                }
            }
            i += 1;
            tokens.push(Token::Id(s));
        } else if c == '-' && matches!(chars.get(i + 1), Some('>') | Some('-')) {
            tokens.push(Token::Punct(if chars[i + 1] == '>' { "->" } else { "--" }));
            i += 2;
        } else if let Some(p) = ["{", "}", "[", "]", ";", ",", "=", ":"].iter().find(|p| p.starts_with(c)) {
            tokens.push(Token::Punct(p));
            i += 1;
        } else if c.is_alphanumeric() || c == '_' || c == '.' || c == '-' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_' || chars[i] == '.') || i == start {
                i += 1;
            }
            let word: String = chars[start..i].iter().collect();
            let numeral = word.trim_start_matches('-').chars().all(|ch| ch.is_ascii_digit() || ch == '.');
            let ident = !word.starts_with(|ch: char| ch.is_ascii_digit() || ch == '-' || ch == '.')
                && !word.contains('.');
            if !numeral && !ident {
                return Err(format!("bad identifier `{word}`"));
            }
            tokens.push(Token::Id(word));
        } else {
            return Err(format!("unexpected character `{c}`"));
        }
    }
    Ok(tokens)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    summary: DotSummary,
}

const KEYWORDS: [&str; 6] = ["strict", "graph", "digraph", "node", "edge", "subgraph"];

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn peek_punct(&self, p: &str) -> bool {
        matches!(self.peek(), Some(Token::Punct(q)) if *q == p)
    }

    fn peek_keyword(&self, k: &str) -> bool {
        matches!(self.peek(), Some(Token::Id(s)) if s.eq_ignore_ascii_case(k))
    }

    fn expect(&mut self, p: &str) -> Result<(), String> {
        if self.peek_punct(p) {
            self.pos += 1;
            Ok(())
        } else {
            Err(format!("expected `{p}` at token {}, found {:?}", self.pos, self.peek()))
        }
    }

    fn id(&mut self) -> Result<String, String> {
        match self.peek() {
            Some(Token::Id(s)) if !KEYWORDS.iter().any(|k| s.eq_ignore_ascii_case(k)) => {
                let s = s.clone();
                self.pos += 1;
                Ok(s)
            }
            other => Err(format!("expected an identifier at token {}, found {other:?}", self.pos)),
        }
    }

    fn graph(&mut self) -> Result<(), String> {
        if self.peek_keyword("strict") {
            self.pos += 1;
        }
        if self.peek_keyword("digraph") {
            self.summary.directed = true;
        } else if !self.peek_keyword("graph") {
            return Err("expected `graph` or `digraph`".to_string());
        }
        self.pos += 1;
        if !self.peek_punct("{") {
            self.id()?;
        }
        self.expect("{")?;
        self.stmt_list()?;
        self.expect("}")?;
        if self.pos != self.tokens.len() {
            return Err(format!("trailing input at token {}", self.pos));
        }
        Ok(())
    }

    fn stmt_list(&mut self) -> Result<(), String> {
        while !self.peek_punct("}") {
            if self.peek().is_none() {
                return Err("unbalanced braces".to_string());
            }
            self.stmt()?;
            if self.peek_punct(";") {
                self.pos += 1;
            }
        }
        Ok(())
    }

    fn stmt(&mut self) -> Result<(), String> {
        if self.peek_keyword("graph") || self.peek_keyword("node") || self.peek_keyword("edge") {
            self.pos += 1;
            return self.attr_list(true);
        }
        if matches!(self.tokens.get(self.pos + 1), Some(Token::Punct("="))) {
            self.id()?;
            self.pos += 1;
            self.id()?;
            return Ok(());
        }
        let mut left = self.endpoint()?;
        while self.peek_punct("->") || self.peek_punct("--") {
            let op_directed = self.peek_punct("->");
            if op_directed != self.summary.directed {
                return Err(format!("edge operator does not match the graph kind at token {}", self.pos));
            }
            self.pos += 1;
            let right = self.endpoint()?;
            for a in &left {
                for b in &right {
                    self.summary.edges.push((a.clone(), b.clone()));
                }
            }
            left = right;
        }
        self.attr_list(false)
    }

    /// A node id or a subgraph; returns the nodes it stands for.
    fn endpoint(&mut self) -> Result<Vec<String>, String> {
        if self.peek_keyword("subgraph") || self.peek_punct("{") {
            let before: BTreeSet<String> = self.summary.nodes.clone();
            if self.peek_keyword("subgraph") {
                self.pos += 1;
                if !self.peek_punct("{") {
                    self.id()?;
                }
            }
            self.expect("{")?;
            self.stmt_list()?;
            self.expect("}")?;
            return Ok(self.summary.nodes.difference(&before).cloned().collect());
        }
        let id = self.id()?;
        if self.peek_punct(":") {
            self.pos += 1;
            self.id()?;
            if self.peek_punct(":") {
                self.pos += 1;
                self.id()?;
            }
        }
        self.summary.nodes.insert(id.clone());
        Ok(vec![id])
    }

    fn attr_list(&mut self, required: bool) -> Result<(), String> {
        if required && !self.peek_punct("[") {
            return Err(format!("expected an attribute list at token {}", self.pos));
        }
        while self.peek_punct("[") {
            self.pos += 1;
            while !self.peek_punct("]") {
                self.id()?;
                self.expect("=")?;
                self.id()?;
                if self.peek_punct(";") || self.peek_punct(",") {
                    self.pos += 1;
                }
            }
            self.expect("]")?;
        }
        Ok(())
    }
}

/// Checks `text` against the DOT grammar (graphs, statements, attribute
/// lists, subgraphs, quoted and plain identifiers, comments) and summarizes it.
pub fn check(text: &str) -> Result<DotSummary, String> {
    let mut parser = Parser {
        tokens: tokenize(text)?,
        pos: 0,
        summary: DotSummary::default(),
    };
    parser.graph()?;
    Ok(parser.summary)
}
