//! Named-graph mini-language used by the command line and tests.
//!
//! ```text
//! K{m}            complete graph K_m
//! K{p},{q}        complete bipartite K_{p,q}
//! P{k}            path with k edges (k + 1 vertices)
//! C{k}            cycle on k vertices
//! S{k}            star K_{1,k}
//! split{p},{q}    complete (p, q)-split graph
//! paw             triangle with a pendant vertex (alias: K3+pendant, K13+pendant)
//! ```
//!
//! Underscores and braces are ignored, so `K_{1,4}` reads as `K1,4`. Two
//! suffixes may follow any name: `+e` adds the least missing edge (colex
//! order) and `+pendant` attaches a new vertex to vertex 0.

use crate::error::{Error, Result};
use crate::graph::{named_graph, unslot, Family, Graph};

fn bad(spec: &str) -> Error {
    Error::Invalid(format!("unrecognised graph name `{spec}`"))
}

fn numbers(s: &str, count: usize, spec: &str) -> Result<Vec<usize>> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != count {
        return Err(bad(spec));
    }
    parts.iter().map(|p| p.parse::<usize>().map_err(|_| bad(spec))).collect()
}

fn paw() -> Graph {
    Graph::from_edges(4, &[(0, 1), (0, 2), (1, 2), (2, 3)]).expect("paw is valid")
}

/// Parses a graph name such as `P4`, `K_{1,4}` or `split1,7+e`.
pub fn parse_named(spec: &str) -> Result<Graph> {
    let clean: String =
        spec.chars().filter(|c| !matches!(c, '_' | '{' | '}') && !c.is_whitespace()).collect();
    let lower = clean.to_ascii_lowercase();
    if matches!(lower.as_str(), "paw" | "k3+pendant" | "k13+pendant" | "triangle+pendant") {
        return Ok(paw());
    }
    let (base, suffixes) = match clean.find('+') {
        Some(i) => (&clean[..i], &clean[i..]),
        None => (clean.as_str(), ""),
    };
    let mut g = if let Some(rest) = base.strip_prefix("split") {
        let v = numbers(rest, 2, spec)?;
        named_graph(Family::CompleteSplit(v[0], v[1]))?
    } else {
        let mut chars = base.chars();
        let head = chars.next().ok_or_else(|| bad(spec))?;
        let rest = chars.as_str();
        match head.to_ascii_uppercase() {
            'K' if rest.contains(',') => {
                let v = numbers(rest, 2, spec)?;
                named_graph(Family::CompleteBipartite(v[0], v[1]))?
            }
            'K' => named_graph(Family::Complete(numbers(rest, 1, spec)?[0]))?,
            'P' => named_graph(Family::Path(numbers(rest, 1, spec)?[0]))?,
            'C' => named_graph(Family::Cycle(numbers(rest, 1, spec)?[0]))?,
            'S' => named_graph(Family::Star(numbers(rest, 1, spec)?[0]))?,
            _ => return Err(bad(spec)),
        }
    };
    for suffix in suffixes.split('+').skip(1) {
        g = match suffix {
            "e" => add_least_missing_edge(&g).ok_or_else(|| bad(spec))?,
            "pendant" => add_pendant(&g)?,
            _ => return Err(bad(spec)),
        };
    }
    Ok(g)
}

fn add_least_missing_edge(g: &Graph) -> Option<Graph> {
    let missing = g.edges().complement();
    let s = missing.slots().next()?;
    let mut edges = g.edges();
    let (u, v) = unslot(s);
    edges.insert(u, v);
    Some(Graph::from_edge_set(edges))
}

fn add_pendant(g: &Graph) -> Result<Graph> {
    let n = g.n() + 1;
    if n > crate::graph::MAX_VERTICES {
        return Err(Error::VertexCount(n));
    }
    let mut edges = g.edges().widen(n);
    edges.insert(0, n - 1);
    Ok(Graph::from_edge_set(edges))
}
