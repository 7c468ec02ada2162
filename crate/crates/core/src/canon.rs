//! Canonical labelling and automorphism group order.
//!
//! Individualisation-refinement: the vertex partition is refined to an
//! equitable one, then the first non-singleton cell is split by
//! individualising each of its vertices in turn. Leaves of the search tree
//! are discrete partitions, i.e. labellings; the canonical form is the
//! labelling whose relabelled edge bitmap is largest. Automorphisms found
//! at equivalent leaves prune sibling subtrees in the same orbit, and the
//! orbit sizes along the first path give `|Aut(G)|` by orbit-stabiliser.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::graph::{slot, EdgeSet, Graph, VertexSet, MAX_VERTICES};

/// Canonical code of a graph plus the order of its automorphism group.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm {
    /// Vertex count followed by the canonical edge bitmap, big-endian.
    pub code: Vec<u8>,
    pub aut_count: u64,
    /// `labeling[i]` is the original vertex placed at canonical position `i`.
    pub labeling: Vec<usize>,
}

impl CanonicalForm {
    pub fn n(&self) -> usize {
        self.code[0] as usize
    }

    /// The canonically relabelled graph.
    pub fn graph(&self) -> Graph {
        let n = self.n();
        let mut bits = 0u128;
        for &b in &self.code[1..] {
            bits = bits << 8 | b as u128;
        }
        Graph::from_edge_set(EdgeSet::from_bits(n, bits).expect("canonical code is in range"))
    }

    /// Lowercase hex of `code`.
    pub fn hex(&self) -> String {
        self.code.iter().map(|b| format!("{b:02x}")).collect()
    }
}

impl fmt::Debug for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalForm({}, aut={})", self.hex(), self.aut_count)
    }
}

impl Serialize for CanonicalForm {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.hex())
    }
}

type Perm = [u8; MAX_VERTICES];

struct Search<'a> {
    g: &'a Graph,
    n: usize,
    first: Option<Leaf>,
    best: Option<Leaf>,
    generators: Vec<Perm>,
    aut_count: u64,
}

struct Leaf {
    code: u128,
    lab: Vec<u8>,
    path: Vec<u8>,
}

type Partition = Vec<Vec<u8>>;

fn cell_mask(cell: &[u8]) -> VertexSet {
    cell.iter().fold(0, |m, &v| m | 1 << v)
}

/// Refines to the coarsest equitable partition finer than `cells`.
fn refine(g: &Graph, cells: &mut Partition) {
    'outer: loop {
        for s in 0..cells.len() {
            let splitter = cell_mask(&cells[s]);
            for i in 0..cells.len() {
                if cells[i].len() < 2 {
                    continue;
                }
                let count = |v: u8| (g.row(v as usize) & splitter).count_ones();
                let c0 = count(cells[i][0]);
                if cells[i].iter().all(|&v| count(v) == c0) {
                    continue;
                }
                let mut cell = std::mem::take(&mut cells[i]);
                cell.sort_by_key(|&v| (count(v), v));
                let mut parts: Vec<Vec<u8>> = Vec::new();
                let mut last = None;
                for v in cell {
                    let c = count(v);
                    if last != Some(c) {
                        parts.push(Vec::new());
                        last = Some(c);
                    }
                    parts.last_mut().unwrap().push(v);
                }
                cells.splice(i..=i, parts);
                continue 'outer;
            }
        }
        break;
    }
}

fn leaf_code(g: &Graph, lab: &[u8]) -> u128 {
    let mut code = 0u128;
    for j in 1..lab.len() {
        let row = g.row(lab[j] as usize);
        for i in 0..j {
            if row >> lab[i] & 1 == 1 {
                code |= 1u128 << slot(i, j);
            }
        }
    }
    code
}

fn common_prefix(a: &[u8], b: &[u8]) -> usize {
    a.iter().zip(b).take_while(|(x, y)| x == y).count()
}

impl Search<'_> {
    /// Orbit representatives under the generators that fix `prefix`.
    fn orbits(&self, prefix: &[u8]) -> [u8; MAX_VERTICES] {
        let mut parent: [u8; MAX_VERTICES] = std::array::from_fn(|i| i as u8);
        fn find(p: &mut [u8; MAX_VERTICES], mut x: u8) -> u8 {
            while p[x as usize] != x {
                p[x as usize] = p[p[x as usize] as usize];
                x = p[x as usize];
            }
            x
        }
        for gen in &self.generators {
            if prefix.iter().any(|&p| gen[p as usize] != p) {
                continue;
            }
            for v in 0..self.n {
                let (a, b) = (find(&mut parent, v as u8), find(&mut parent, gen[v]));
                if a != b {
                    parent[a.max(b) as usize] = a.min(b);
                }
            }
        }
        let mut out = [0u8; MAX_VERTICES];
        for v in 0..self.n {
            out[v] = find(&mut parent, v as u8);
        }
        out
    }

    fn record_automorphism(&mut self, from: &[u8], to: &[u8]) {
        let mut gen: Perm = std::array::from_fn(|i| i as u8);
        for (&a, &b) in from.iter().zip(to) {
            gen[a as usize] = b;
        }
        self.generators.push(gen);
    }

    /// Returns `Some(depth)` to unwind to the ancestor at that depth.
    fn visit(&mut self, cells: Partition, prefix: &mut Vec<u8>) -> Option<usize> {
        let Some(target) = cells.iter().position(|c| c.len() > 1) else {
            let lab: Vec<u8> = cells.into_iter().flatten().collect();
            return self.leaf(lab, prefix);
        };
        let depth = prefix.len();
        let mut children = cells[target].clone();
        children.sort_unstable();
        let mut explored: Vec<u8> = Vec::new();
        for &w in &children {
            if !explored.is_empty() {
                let orbit = self.orbits(prefix);
                if explored.iter().any(|&u| orbit[u as usize] == orbit[w as usize]) {
                    continue;
                }
            }
            let mut child = cells.clone();
            let rest: Vec<u8> = child[target].iter().copied().filter(|&v| v != w).collect();
            child.splice(target..=target, [vec![w], rest]);
            refine(self.g, &mut child);
            prefix.push(w);
            let jump = self.visit(child, prefix);
            prefix.pop();
            explored.push(w);
            if let Some(to) = jump {
                if to < depth {
                    return Some(to);
                }
            }
        }
        let on_first_path = self
            .first
            .as_ref()
            .is_some_and(|f| f.path.len() > depth && f.path[..depth] == prefix[..]);
        if on_first_path {
            let first_child = self.first.as_ref().unwrap().path[depth];
            let orbit = self.orbits(prefix);
            let size = (0..self.n).filter(|&v| orbit[v] == orbit[first_child as usize]).count();
            self.aut_count *= size as u64;
        }
        None
    }

    fn leaf(&mut self, lab: Vec<u8>, prefix: &[u8]) -> Option<usize> {
        let code = leaf_code(self.g, &lab);
        let Some(first) = &self.first else {
            let leaf = Leaf { code, lab: lab.clone(), path: prefix.to_vec() };
            self.first = Some(Leaf { code, lab, path: prefix.to_vec() });
            self.best = Some(leaf);
            return None;
        };
        if code == first.code {
            let (from, to) = (first.lab.clone(), lab);
            let back = common_prefix(&first.path, prefix);
            self.record_automorphism(&from, &to);
            return Some(back);
        }
        let best = self.best.as_ref().unwrap();
        if code == best.code {
            let (from, to) = (best.lab.clone(), lab);
            let back = common_prefix(&best.path, prefix);
            self.record_automorphism(&from, &to);
            return Some(back);
        }
        if code > best.code {
            self.best = Some(Leaf { code, lab, path: prefix.to_vec() });
        }
        None
    }
}

/// Computes the canonical form of `g`.
pub fn canonical_form(g: &Graph) -> CanonicalForm {
    let n = g.n();
    let mut cells: Partition = vec![(0..n as u8).collect()];
    refine(g, &mut cells);
    let mut search = Search { g, n, first: None, best: None, generators: Vec::new(), aut_count: 1 };
    search.visit(cells, &mut Vec::new());
    let best = search.best.expect("search reaches at least one leaf");
    let m = crate::graph::choose2(n);
    let nbytes = m.div_ceil(8);
    let mut code = Vec::with_capacity(1 + nbytes);
    code.push(n as u8);
    for i in (0..nbytes).rev() {
        code.push((best.code >> (8 * i)) as u8);
    }
    CanonicalForm {
        code,
        aut_count: search.aut_count,
        labeling: best.lab.iter().map(|&v| v as usize).collect(),
    }
}

/// True iff `a` and `b` are isomorphic.
pub fn isomorphic(a: &Graph, b: &Graph) -> bool {
    a.n() == b.n()
        && a.e() == b.e()
        && a.degree_sequence() == b.degree_sequence()
        && canonical_form(a).code == canonical_form(b).code
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete_graph, named_graph, Family};

    fn brute_aut(g: &Graph) -> u64 {
        let n = g.n();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut count = 0;
        loop {
            if g.permute(&perm) == *g {
                count += 1;
            }
            // next lexicographic permutation
            let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| perm[i] < perm[i + 1]) else {
                break;
            };
            let j = (i + 1..n).rev().find(|&j| perm[j] > perm[i]).unwrap();
            perm.swap(i, j);
            perm[i + 1..].reverse();
        }
        count
    }

    #[test]
    fn path_three_has_two_automorphisms() {
        let p3 = named_graph(Family::Path(3)).unwrap();
        assert_eq!(brute_aut(&p3), 2);
        assert_eq!(canonical_form(&p3).aut_count, 2);
    }

    #[test]
    fn complete_graph_groups() {
        assert_eq!(canonical_form(&complete_graph(4).unwrap()).aut_count, 24);
        let k16 = canonical_form(&complete_graph(16).unwrap());
        assert_eq!(k16.aut_count, (1..=16u64).product::<u64>());
        let e16 = canonical_form(&Graph::empty(16).unwrap());
        assert_eq!(e16.aut_count, (1..=16u64).product::<u64>());
    }

    #[test]
    fn relabelling_invariance() {
        let c5 = named_graph(Family::Cycle(5)).unwrap();
        let h = c5.permute(&[3, 0, 4, 1, 2]);
        assert_eq!(canonical_form(&c5).code, canonical_form(&h).code);
        assert_eq!(canonical_form(&c5).aut_count, 10);
        assert!(isomorphic(&c5, &h));
        assert!(!isomorphic(&c5, &named_graph(Family::Path(4)).unwrap()));
    }

    #[test]
    fn canonical_graph_is_isomorphic_relabelling() {
        let g = Graph::from_edges(6, &[(0, 1), (1, 2), (2, 0), (2, 3), (4, 5)]).unwrap();
        let cf = canonical_form(&g);
        let mut inverse = vec![0; 6];
        for (pos, &v) in cf.labeling.iter().enumerate() {
            inverse[v] = pos;
        }
        assert_eq!(g.permute(&inverse), cf.graph());
    }

    #[test]
    fn small_graphs_match_brute_force() {
        // every graph on 5 vertices by edge bitmap
        for bits in 0u128..(1 << 10) {
            let g = Graph::from_edge_set(EdgeSet::from_bits(5, bits).unwrap());
            assert_eq!(canonical_form(&g).aut_count, brute_aut(&g), "{g:?}");
        }
    }
}
