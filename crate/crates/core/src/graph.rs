//! Compact graphs on at most 16 vertices.
//!
//! Edges of `K_n` are indexed in colex order: the pair `u < v` lives in slot
//! `v(v-1)/2 + u`. The order is frozen; graph6, the coloring line format and
//! every oracle witness depend on it. A useful consequence is that the slots
//! of `K_m` are a prefix of the slots of `K_n` for `m <= n`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported vertex count.
pub const MAX_VERTICES: usize = 16;

/// Bitmask over the vertices of a graph (bit `v` is vertex `v`).
pub type VertexSet = u16;

/// Number of unordered pairs of an `n`-set.
#[inline]
pub const fn choose2(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// Slot of the pair `{u, v}` (order of the arguments does not matter).
#[inline]
pub const fn slot(u: usize, v: usize) -> usize {
    let (lo, hi) = if u < v { (u, v) } else { (v, u) };
    hi * (hi - 1) / 2 + lo
}

const UNSLOT: [(u8, u8); choose2(MAX_VERTICES)] = {
    let mut table = [(0u8, 0u8); choose2(MAX_VERTICES)];
    let mut v = 1;
    while v < MAX_VERTICES {
        let mut u = 0;
        while u < v {
            table[v * (v - 1) / 2 + u] = (u as u8, v as u8);
            u += 1;
        }
        v += 1;
    }
    table
};

/// Inverse of [`slot`]: the pair `(u, v)` with `u < v`.
#[inline]
pub fn unslot(s: usize) -> (usize, usize) {
    let (u, v) = UNSLOT[s];
    (u as usize, v as usize)
}

fn check_order(n: usize) -> Result<()> {
    if (1..=MAX_VERTICES).contains(&n) {
        Ok(())
    } else {
        Err(Error::VertexCount(n))
    }
}

/// A subset of the edge slots of `K_n`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct EdgeSet {
    n: u8,
    bits: u128,
}

impl EdgeSet {
    /// The empty edge set of `K_n`.
    pub fn empty(n: usize) -> Self {
        assert!(n <= MAX_VERTICES, "K_{n} exceeds the vertex cap");
        EdgeSet { n: n as u8, bits: 0 }
    }

    /// Every slot of `K_n`.
    pub fn full(n: usize) -> Self {
        EdgeSet { n: n as u8, bits: Self::full_mask(n) }
    }

    /// Bitmap with the low `C(n,2)` bits set.
    #[inline]
    pub fn full_mask(n: usize) -> u128 {
        let m = choose2(n);
        if m == 128 {
            u128::MAX
        } else {
            (1u128 << m) - 1
        }
    }

    pub fn from_bits(n: usize, bits: u128) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::VertexCount(n));
        }
        if bits & !Self::full_mask(n) != 0 {
            return Err(Error::Invalid(format!("edge bitmap has bits beyond slot C({n},2)-1")));
        }
        Ok(EdgeSet { n: n as u8, bits })
    }

    pub fn from_pairs(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let mut set = EdgeSet::empty(n);
        for &(u, v) in pairs {
            if u == v || u >= n || v >= n {
                return Err(Error::Invalid(format!("pair ({u},{v}) is not an edge of K_{n}")));
            }
            set.insert(u, v);
        }
        Ok(set)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n as usize
    }

    #[inline]
    pub fn bits(&self) -> u128 {
        self.bits
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.bits.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    #[inline]
    pub fn contains(&self, u: usize, v: usize) -> bool {
        self.contains_slot(slot(u, v))
    }

    #[inline]
    pub fn contains_slot(&self, s: usize) -> bool {
        (self.bits >> s) & 1 == 1
    }

    pub fn insert(&mut self, u: usize, v: usize) {
        debug_assert!(u != v && u < self.n() && v < self.n());
        self.bits |= 1u128 << slot(u, v);
    }

    pub fn remove(&mut self, u: usize, v: usize) {
        self.bits &= !(1u128 << slot(u, v));
    }

    /// Slots of `K_n` not in this set.
    pub fn complement(&self) -> EdgeSet {
        EdgeSet { n: self.n, bits: !self.bits & Self::full_mask(self.n()) }
    }

    /// Number of slots shared with `other`.
    #[inline]
    pub fn intersection_len(&self, other: &EdgeSet) -> usize {
        (self.bits & other.bits).count_ones() as usize
    }

    /// Iterates over the occupied slots in increasing order.
    pub fn slots(&self) -> impl Iterator<Item = usize> {
        let mut rest = self.bits;
        std::iter::from_fn(move || {
            if rest == 0 {
                None
            } else {
                let s = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(s)
            }
        })
    }

    /// Iterates over the occupied pairs `(u, v)`, `u < v`.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> {
        self.slots().map(unslot)
    }

    /// Vertices touched by at least one edge.
    pub fn support(&self) -> VertexSet {
        self.pairs().fold(0, |acc, (u, v)| acc | (1 << u) | (1 << v))
    }

    /// Re-embeds this edge set into `K_m` (`m >= n`), keeping slot numbers.
    pub fn widen(&self, m: usize) -> EdgeSet {
        assert!(m >= self.n() && m <= MAX_VERTICES);
        EdgeSet { n: m as u8, bits: self.bits }
    }

    /// The graph on `n` vertices with exactly these edges.
    pub fn to_graph(&self) -> Graph {
        Graph::from_edge_set(*self)
    }
}

impl fmt::Debug for EdgeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "EdgeSet(n={}, {{", self.n)?;
        for (i, (u, v)) in self.pairs().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{u}{v}")?;
        }
        write!(f, "}})")
    }
}

/// A simple undirected graph on `1..=16` vertices.
///
/// Stores both adjacency rows and the flat edge bitmap; the two views are
/// kept consistent by every constructor.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: [VertexSet; MAX_VERTICES],
    edges: EdgeSet,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self> {
        check_order(n)?;
        Ok(Graph { adj: [0; MAX_VERTICES], edges: EdgeSet::empty(n) })
    }

    pub fn from_edges(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        check_order(n)?;
        Ok(Graph::from_edge_set(EdgeSet::from_pairs(n, pairs)?))
    }

    pub fn from_edge_set(edges: EdgeSet) -> Self {
        let mut adj = [0; MAX_VERTICES];
        for (u, v) in edges.pairs() {
            adj[u] |= 1 << v;
            adj[v] |= 1 << u;
        }
        Graph { adj, edges }
    }

    /// Builds a graph from adjacency rows; rows must be symmetric and loop-free.
    pub fn from_adjacency(rows: &[VertexSet]) -> Result<Self> {
        let n = rows.len();
        check_order(n)?;
        let mut edges = EdgeSet::empty(n);
        for (v, &row) in rows.iter().enumerate() {
            if row >> n != 0 && n < 16 {
                return Err(Error::Invalid(format!("row {v} has bits beyond vertex {}", n - 1)));
            }
            if row >> v & 1 == 1 {
                return Err(Error::Invalid(format!("loop at vertex {v}")));
            }
            for u in 0..n {
                if row >> u & 1 == 1 {
                    if rows[u] >> v & 1 == 0 {
                        return Err(Error::Invalid(format!("asymmetric adjacency at ({v},{u})")));
                    }
                    edges.insert(u, v);
                }
            }
        }
        Ok(Graph::from_edge_set(edges))
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.edges.n()
    }

    /// Number of edges.
    #[inline]
    pub fn e(&self) -> usize {
        self.edges.len()
    }

    #[inline]
    pub fn edges(&self) -> EdgeSet {
        self.edges
    }

    /// Neighbourhood of `v` as a bit row.
    #[inline]
    pub fn row(&self, v: usize) -> VertexSet {
        self.adj[v]
    }

    pub fn rows(&self) -> &[VertexSet] {
        &self.adj[..self.n()]
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u] >> v & 1 == 1
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    /// All vertices as a mask.
    #[inline]
    pub fn vertex_mask(&self) -> VertexSet {
        if self.n() == 16 {
            u16::MAX
        } else {
            (1 << self.n()) - 1
        }
    }

    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d: Vec<usize> = (0..self.n()).map(|v| self.degree(v)).collect();
        d.sort_unstable();
        d
    }

    /// Vertices with at least one neighbour.
    pub fn non_isolated(&self) -> VertexSet {
        (0..self.n()).filter(|&v| self.adj[v] != 0).fold(0, |acc, v| acc | 1 << v)
    }

    /// Subgraph induced by `keep`, relabelled `0..|keep|` in increasing order.
    pub fn induced(&self, keep: VertexSet) -> Result<Graph> {
        let verts: Vec<usize> = (0..self.n()).filter(|&v| keep >> v & 1 == 1).collect();
        let mut pairs = Vec::new();
        for (i, &a) in verts.iter().enumerate() {
            for (j, &b) in verts.iter().enumerate().skip(i + 1) {
                if self.has_edge(a, b) {
                    pairs.push((i, j));
                }
            }
        }
        Graph::from_edges(verts.len(), &pairs)
    }

    /// Drops isolated vertices. An edgeless graph collapses to `K_1`.
    pub fn strip_isolated(&self) -> Graph {
        let keep = self.non_isolated();
        if keep == 0 {
            return Graph::empty(1).expect("K_1 is in range");
        }
        self.induced(keep).expect("subset of a valid graph")
    }

    /// Relabels vertex `v` as `perm[v]`.
    pub fn permute(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n());
        let mut edges = EdgeSet::empty(self.n());
        for (u, v) in self.edges.pairs() {
            edges.insert(perm[u], perm[v]);
        }
        Graph::from_edge_set(edges)
    }

    /// Disjoint union, `other` placed on the vertices after `self`.
    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph> {
        let shift = self.n();
        let mut pairs: Vec<(usize, usize)> = self.edges.pairs().collect();
        pairs.extend(other.edges.pairs().map(|(u, v)| (u + shift, v + shift)));
        Graph::from_edges(shift + other.n(), &pairs)
    }

    /// Complement within `K_n`.
    pub fn complement(&self) -> Graph {
        Graph::from_edge_set(self.edges.complement())
    }

    /// Number of edges with both ends in `w`.
    #[inline]
    pub fn induced_edge_count(&self, w: VertexSet) -> usize {
        let mut twice = 0;
        let mut rest = w;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            twice += (self.adj[v] & w).count_ones();
        }
        (twice / 2) as usize
    }

    /// Number of edges between `x` and its complement.
    #[inline]
    pub fn cut_size(&self, x: VertexSet) -> usize {
        let y = !x & self.vertex_mask();
        let mut cut = 0;
        let mut rest = x;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            cut += (self.adj[v] & y).count_ones();
        }
        cut as usize
    }

    /// Two-colours the vertices if the graph has no odd cycle.
    ///
    /// The returned mask is one side of a bipartition; vertex 0 of every
    /// component is placed on the side not in the mask.
    pub fn bipartition(&self) -> Option<VertexSet> {
        let n = self.n();
        let mut side: VertexSet = 0;
        let mut seen: VertexSet = 0;
        for root in 0..n {
            if seen >> root & 1 == 1 {
                continue;
            }
            seen |= 1 << root;
            let mut stack = vec![root];
            while let Some(v) = stack.pop() {
                let v_side = side >> v & 1;
                let mut nbrs = self.adj[v];
                while nbrs != 0 {
                    let u = nbrs.trailing_zeros() as usize;
                    nbrs &= nbrs - 1;
                    if seen >> u & 1 == 0 {
                        seen |= 1 << u;
                        if v_side == 0 {
                            side |= 1 << u;
                        }
                        stack.push(u);
                    } else if side >> u & 1 == v_side {
                        return None;
                    }
                }
            }
        }
        Some(side)
    }

    pub fn is_bipartite(&self) -> bool {
        self.bipartition().is_some()
    }

    pub fn is_connected(&self) -> bool {
        let mut seen: VertexSet = 1;
        let mut frontier: VertexSet = 1;
        while frontier != 0 {
            let mut next = 0;
            let mut rest = frontier;
            while rest != 0 {
                let v = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                next |= self.adj[v];
            }
            frontier = next & !seen;
            seen |= next;
        }
        seen == self.vertex_mask()
    }

    /// Connected and `e = n - 1`.
    pub fn is_tree(&self) -> bool {
        self.e() + 1 == self.n() && self.is_connected()
    }

    /// Checks the internal consistency of the two stored views.
    pub fn check_invariants(&self) -> bool {
        let n = self.n();
        let mut twice = 0;
        for v in 0..MAX_VERTICES {
            let row = self.adj[v];
            if v >= n {
                if row != 0 {
                    return false;
                }
                continue;
            }
            if row >> v & 1 == 1 || (n < 16 && row >> n != 0) {
                return false;
            }
            for u in 0..n {
                if (row >> u & 1 == 1) != self.edges.contains_slot_checked(u, v) {
                    return false;
                }
            }
            twice += row.count_ones() as usize;
        }
        twice == 2 * self.e()
    }
}

impl EdgeSet {
    fn contains_slot_checked(&self, u: usize, v: usize) -> bool {
        u != v && self.contains(u, v)
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n(), self.edges)
    }
}

/// Complete graph `K_n`.
pub fn complete_graph(n: usize) -> Result<Graph> {
    check_order(n)?;
    Ok(Graph::from_edge_set(EdgeSet::full(n)))
}

/// Standard graph families.
///
/// `Path(k)` and `Star(k)` are indexed by their number of edges: `P_k` has
/// `k + 1` vertices and `K_{1,k}` has `k` leaves.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    Path(usize),
    Star(usize),
    Cycle(usize),
    Complete(usize),
    CompleteBipartite(usize, usize),
    /// Complete `(p, q)`-split graph: a `K_p` on vertices `0..p`, an
    /// independent set of size `q`, and every edge between the two parts.
    CompleteSplit(usize, usize),
}

pub fn named_graph(family: Family) -> Result<Graph> {
    let bad = |what: &str| Err(Error::Invalid(format!("{family:?}: {what}")));
    match family {
        Family::Path(k) => {
            if k + 1 > MAX_VERTICES {
                return bad("too many vertices");
            }
            let pairs: Vec<_> = (0..k).map(|i| (i, i + 1)).collect();
            Graph::from_edges(k + 1, &pairs)
        }
        Family::Star(k) => named_graph(Family::CompleteBipartite(1, k)),
        Family::Cycle(k) => {
            if k < 3 {
                return bad("cycles need at least 3 vertices");
            }
            check_order(k)?;
            let pairs: Vec<_> = (0..k).map(|i| (i, (i + 1) % k)).collect();
            Graph::from_edges(k, &pairs)
        }
        Family::Complete(m) => complete_graph(m),
        Family::CompleteBipartite(p, q) => {
            if p == 0 || q == 0 {
                return bad("both parts must be nonempty");
            }
            check_order(p + q)?;
            let pairs: Vec<_> = (0..p).flat_map(|a| (p..p + q).map(move |b| (a, b))).collect();
            Graph::from_edges(p + q, &pairs)
        }
        Family::CompleteSplit(p, q) => {
            if p + q == 0 {
                return bad("empty vertex set");
            }
            check_order(p + q)?;
            let mut pairs = Vec::new();
            for a in 0..p {
                for b in a + 1..p + q {
                    pairs.push((a, b));
                }
            }
            Graph::from_edges(p + q, &pairs)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn slot_bijection() {
        let mut seen = vec![false; choose2(MAX_VERTICES)];
        for v in 1..MAX_VERTICES {
            for u in 0..v {
                let s = slot(u, v);
                assert_eq!(unslot(s), (u, v));
                assert!(!seen[s]);
                seen[s] = true;
            }
        }
        assert!(seen.into_iter().all(|b| b));
    }

    #[test]
    fn complete_graph_sizes() {
        assert_eq!(complete_graph(4).unwrap().e(), 6);
        assert_eq!(complete_graph(1).unwrap().e(), 0);
        assert_eq!(complete_graph(16).unwrap().e(), 120);
        assert!(complete_graph(0).is_err());
        assert!(complete_graph(17).is_err());
    }

    #[test]
    fn named_families() {
        let p4 = named_graph(Family::Path(4)).unwrap();
        assert_eq!((p4.n(), p4.e()), (5, 4));
        let s = named_graph(Family::CompleteSplit(1, 7)).unwrap();
        assert_eq!((s.n(), s.e()), (8, 7));
        assert_eq!(s.degree(0), 7);
        let k23 = named_graph(Family::CompleteBipartite(2, 3)).unwrap();
        assert_eq!(k23.e(), 6);
        let split = named_graph(Family::CompleteSplit(2, 3)).unwrap();
        assert_eq!(split.e(), 1 + 6);
        assert!(named_graph(Family::Cycle(2)).is_err());
        assert!(named_graph(Family::Path(16)).is_err());
    }

    #[test]
    fn bipartite_checks() {
        let c6 = named_graph(Family::Cycle(6)).unwrap();
        let side = c6.bipartition().unwrap();
        for (u, v) in c6.edges().pairs() {
            assert_ne!(side >> u & 1, side >> v & 1);
        }
        assert!(!named_graph(Family::Cycle(5)).unwrap().is_bipartite());
        assert!(!complete_graph(4).unwrap().is_bipartite());
    }

    #[test]
    fn views_stay_consistent() {
        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (3, 4)]).unwrap();
        assert!(g.check_invariants());
        assert!(g.complement().check_invariants());
        assert_eq!(g.complement().e(), 10 - 3);
        let h = g.permute(&[4, 3, 2, 1, 0]);
        assert!(h.check_invariants());
        assert!(h.has_edge(4, 3));
        assert!(Graph::from_adjacency(&[0b10, 0b00]).is_err());
    }

    #[test]
    fn cut_and_induced_counts() {
        let k4 = complete_graph(4).unwrap();
        assert_eq!(k4.cut_size(0b0001), 3);
        assert_eq!(k4.cut_size(0b0011), 4);
        assert_eq!(k4.induced_edge_count(0b0111), 3);
    }

    #[test]
    fn strip_isolated_relabels() {
        let g = Graph::from_edges(6, &[(1, 4), (4, 5)]).unwrap();
        let h = g.strip_isolated();
        assert_eq!((h.n(), h.e()), (3, 2));
        assert!(h.has_edge(0, 1) && h.has_edge(1, 2));
    }
}
