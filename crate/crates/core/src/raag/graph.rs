use std::collections::{BTreeSet, HashMap};

use serde::Serialize;
use thiserror::Error;

use crate::elements::ElementsError;

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("loop at vertex {0}")]
    Loop(String),
    #[error("edge {0} -- {1} listed twice")]
    MultiEdge(String, String),
    #[error("vertex {0} declared twice")]
    DuplicateVertex(String),
    #[error("embedding verification failed: {0}")]
    Verification(String),
    #[error(transparent)]
    Elements(#[from] ElementsError),
}

/// A finite simple graph with ordered vertex labels.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DefiningGraph {
    vertices: Vec<String>,
    /// Pairs (a, b) with a < b.
    edges: BTreeSet<(usize, usize)>,
}

impl DefiningGraph {
    pub fn new(vertices: Vec<String>, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut seen = BTreeSet::new();
        for v in &vertices {
            if !seen.insert(v.as_str()) {
                return Err(GraphError::DuplicateVertex(v.clone()));
            }
        }
        let mut set = BTreeSet::new();
        for &(a, b) in edges {
            if a == b {
                return Err(GraphError::Loop(vertices[a].clone()));
            }
            if !set.insert((a.min(b), a.max(b))) {
                return Err(GraphError::MultiEdge(
                    vertices[a].clone(),
                    vertices[b].clone(),
                ));
            }
        }
        Ok(Self {
            vertices,
            edges: set,
        })
    }

    fn numbered(n: usize, edges: &[(usize, usize)]) -> Self {
        let labels = (0..n).map(|i| format!("v{i}")).collect();
        Self::new(labels, edges).expect("generated graphs are simple")
    }

    pub fn complete(n: usize) -> Self {
        let edges: Vec<_> = (0..n)
            .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
            .collect();
        Self::numbered(n, &edges)
    }

    pub fn edgeless(n: usize) -> Self {
        Self::numbered(n, &[])
    }

    pub fn path(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|b| (b - 1, b)).collect();
        Self::numbered(n, &edges)
    }

    pub fn cycle(n: usize) -> Self {
        let mut edges: Vec<_> = (1..n).map(|b| (b - 1, b)).collect();
        edges.push((0, n - 1));
        Self::numbered(n, &edges)
    }

    /// Every graph on vertices 0..n, one per edge subset.
    pub fn all_on(n: usize) -> Vec<Self> {
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
            .collect();
        (0u64..1 << pairs.len())
            .map(|mask| {
                let edges: Vec<_> = pairs
                    .iter()
                    .enumerate()
                    .filter(|(k, _)| mask >> k & 1 == 1)
                    .map(|(_, &e)| e)
                    .collect();
                Self::numbered(n, &edges)
            })
            .collect()
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn adjacent(&self, a: usize, b: usize) -> bool {
        self.edges.contains(&(a.min(b), a.max(b)))
    }

    pub fn is_complete(&self) -> bool {
        let n = self.len();
        self.edges.len() == n * n.saturating_sub(1) / 2
    }

    pub fn complement(&self) -> Self {
        let n = self.len();
        let edges: Vec<_> = (0..n)
            .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
            .filter(|&(a, b)| !self.adjacent(a, b))
            .collect();
        Self::new(self.vertices.clone(), &edges).expect("complement of a simple graph is simple")
    }

    /// Induced subgraph on `subset` (in the given order).
    pub fn induced(&self, subset: &[usize]) -> Self {
        let labels = subset.iter().map(|&v| self.vertices[v].clone()).collect();
        let mut edges = Vec::new();
        for (i, &a) in subset.iter().enumerate() {
            for (j, &b) in subset.iter().enumerate().skip(i + 1) {
                if self.adjacent(a, b) {
                    edges.push((i, j));
                }
            }
        }
        Self::new(labels, &edges).expect("induced subgraph of a simple graph is simple")
    }

    /// Connected components, each sorted, ordered by least vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.len();
        let mut uf = petgraph::unionfind::UnionFind::<usize>::new(n);
        for (a, b) in self.edges() {
            uf.union(a, b);
        }
        let mut groups: Vec<Vec<usize>> = Vec::new();
        let mut index: HashMap<usize, usize> = HashMap::new();
        for v in 0..n {
            let r = uf.find(v);
            let k = *index.entry(r).or_insert_with(|| {
                groups.push(Vec::new());
                groups.len() - 1
            });
            groups[k].push(v);
        }
        groups
    }

    /// Edge-list text: `v name` declares a vertex, `a b` adds an edge,
    /// `#` starts a comment. Vertices first seen in an edge are declared
    /// there.
    pub fn parse_edge_list(text: &str) -> Result<Self, GraphError> {
        let mut b = Builder::default();
        for (k, raw) in text.lines().enumerate() {
            let line = k + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let tokens: Vec<&str> = content.split_whitespace().collect();
            match tokens.as_slice() {
                ["v", name] => b.declare(name)?,
                ["v", ..] => return Err(parse_err(line, "vertex declaration takes one name")),
                [x, y] => b.edge(x, y),
                _ => {
                    return Err(parse_err(
                        line,
                        format!("expected `v name` or `a b`, found `{content}`"),
                    ))
                }
            }
        }
        b.finish()
    }

    /// The DOT subset `[strict] graph [name] { stmt; ... }` where a statement
    /// is a node id or a chain `a -- b -- c`. Attribute lists are ignored.
    pub fn parse_dot(text: &str) -> Result<Self, GraphError> {
        let body = strip_dot_comments(text);
        let open = body.find('{').ok_or_else(|| parse_err(1, "missing `{`"))?;
        let close = body.rfind('}').ok_or_else(|| parse_err(1, "missing `}`"))?;
        let header: Vec<&str> = body[..open].split_whitespace().collect();
        match header.as_slice() {
            ["graph"] | ["graph", _] | ["strict", "graph"] | ["strict", "graph", _] => {}
            [.., "digraph"] | [.., "digraph", _] => {
                return Err(parse_err(1, "directed graphs are not allowed"))
            }
            _ => return Err(parse_err(1, "expected `graph` header")),
        }
        if !body[close + 1..].trim().is_empty() {
            return Err(parse_err(1, "trailing content after `}`"));
        }
        let mut b = Builder::default();
        for (k, stmt) in body[open + 1..close].split([';', '\n']).enumerate() {
            let stmt = match stmt.find('[') {
                Some(i) => &stmt[..i],
                None => stmt,
            }
            .trim();
            if stmt.is_empty() {
                continue;
            }
            if stmt.contains("->") {
                return Err(parse_err(k + 1, "directed edge in an undirected graph"));
            }
            let ids: Vec<&str> = stmt
                .split("--")
                .map(|s| s.trim().trim_matches('"'))
                .collect();
            if ids
                .iter()
                .any(|s| s.is_empty() || s.contains(char::is_whitespace) || s.contains('='))
            {
                return Err(parse_err(k + 1, format!("unsupported statement `{stmt}`")));
            }
            if ids.len() == 1 {
                b.touch(ids[0]);
            }
            for pair in ids.windows(2) {
                b.edge(pair[0], pair[1]);
            }
        }
        b.finish()
    }

    pub fn parse_any(text: &str) -> Result<Self, GraphError> {
        if text.contains('{') {
            Self::parse_dot(text)
        } else {
            Self::parse_edge_list(text)
        }
    }

    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        for v in &self.vertices {
            out.push_str(&format!("v {v}\n"));
        }
        for (a, b) in self.edges() {
            out.push_str(&format!("{} {}\n", self.vertices[a], self.vertices[b]));
        }
        out
    }
}

fn parse_err(line: usize, message: impl Into<String>) -> GraphError {
    GraphError::Parse {
        line,
        message: message.into(),
    }
}

fn strip_dot_comments(text: &str) -> String {
    text.lines()
        .map(|l| l.split("//").next().unwrap_or(""))
        .collect::<Vec<_>>()
        .join("\n")
}

#[derive(Default)]
struct Builder {
    labels: Vec<String>,
    index: HashMap<String, usize>,
    edges: Vec<(usize, usize)>,
}

impl Builder {
    fn declare(&mut self, name: &str) -> Result<(), GraphError> {
        if self.index.contains_key(name) {
            return Err(GraphError::DuplicateVertex(name.to_string()));
        }
        self.touch(name);
        Ok(())
    }

    fn touch(&mut self, name: &str) -> usize {
        if let Some(&i) = self.index.get(name) {
            return i;
        }
        self.labels.push(name.to_string());
        self.index.insert(name.to_string(), self.labels.len() - 1);
        self.labels.len() - 1
    }

    fn edge(&mut self, a: &str, b: &str) {
        let (a, b) = (self.touch(a), self.touch(b));
        self.edges.push((a, b));
    }

    fn finish(self) -> Result<DefiningGraph, GraphError> {
        DefiningGraph::new(self.labels, &self.edges)
    }
}
