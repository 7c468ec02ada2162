//! Edge-replacement reconfiguration of copies of a graph inside `K_n`.
//!
//! Nodes are the copies of `G` in `K_n` (as edge sets), and two copies are
//! adjacent when one is obtained from the other by removing one edge and
//! adding one non-edge. A graph behaves as an amoeba at `n` when this
//! reconfiguration graph is connected. Only finite windows of `n` can be
//! tested, so verdicts are always stated per `n`.

use std::collections::{HashMap, VecDeque};

use serde::Serialize;

use crate::canon::canonical_form;
use crate::coloring::Coloring;
use crate::embed::{count_embeddings, enumerate_embeddings};
use crate::error::{Error, Result};
use crate::graph::{EdgeSet, Graph, MAX_VERTICES};
use crate::graph6::to_graph6;
use crate::par::{self, Jobs};

/// Default cap on the number of copies (reconfiguration nodes).
pub const DEFAULT_NODE_BUDGET: u128 = 2_000_000;

/// Representatives listed per verdict.
const SAMPLE_REPRESENTATIVES: usize = 8;

#[derive(Clone, Copy, Debug)]
pub struct AmoebaOptions {
    pub node_budget: u128,
    pub jobs: Jobs,
}

impl Default for AmoebaOptions {
    fn default() -> Self {
        AmoebaOptions { node_budget: DEFAULT_NODE_BUDGET, jobs: Jobs::default() }
    }
}

/// Copies of `g` obtained from `copy` by one edge replacement.
///
/// Candidates are screened by degree sequence before the canonical code of
/// the candidate (isolated vertices stripped) is compared with that of `g`.
pub fn edge_replacements(copy: &EdgeSet, g: &Graph, n: usize) -> Result<Vec<EdgeSet>> {
    if copy.n() != n {
        return Err(Error::Precondition(format!("copy lives in K_{} but n = {n}", copy.n())));
    }
    let core = g.strip_isolated();
    let target = canonical_form(&core).code;
    let same_shape = |cand: &EdgeSet| {
        let h = cand.to_graph().strip_isolated();
        h.n() == core.n()
            && h.degree_sequence() == core.degree_sequence()
            && canonical_form(&h).code == target
    };
    if copy.len() != g.e() || !same_shape(copy) {
        return Err(Error::Precondition("copy is not isomorphic to the pattern".into()));
    }
    let mut out = Vec::new();
    for removed in copy.slots() {
        for added in copy.complement().slots() {
            let cand = EdgeSet::from_bits(n, copy.bits() ^ (1u128 << removed) ^ (1u128 << added))?;
            if same_shape(&cand) {
                out.push(cand);
            }
        }
    }
    out.sort_unstable();
    Ok(out)
}

/// Reconfiguration graph over all copies, with an index for membership.
struct Reconfiguration {
    n: usize,
    nodes: Vec<EdgeSet>,
    index: HashMap<u128, u32>,
}

impl Reconfiguration {
    /// `spanning` allows `n(G) = n` (used for chains, where a spanning
    /// pattern simply has no moves).
    fn build(g: &Graph, n: usize, budget: u128, spanning: bool) -> Result<Self> {
        let too_small = if spanning { g.n() > n } else { g.n() >= n };
        if too_small || n > MAX_VERTICES {
            return Err(Error::Precondition(format!("need n(G) = {} < n <= 16, got n = {n}", g.n())));
        }
        if g.e() == 0 || g.non_isolated() != g.vertex_mask() {
            return Err(Error::Precondition("pattern must have edges and no isolated vertices".into()));
        }
        let count = count_embeddings(g, n);
        if count > budget {
            return Err(Error::Budget { what: format!("copies of the pattern in K_{n}"), needed: count, budget });
        }
        let nodes = enumerate_embeddings(g, n)?;
        let index = nodes.iter().enumerate().map(|(i, e)| (e.bits(), i as u32)).collect();
        Ok(Reconfiguration { n, nodes, index })
    }

    fn neighbours(&self, i: u32) -> Vec<u32> {
        let bits = self.nodes[i as usize].bits();
        let free = !bits & EdgeSet::full_mask(self.n);
        let mut out = Vec::new();
        let mut removed = bits;
        while removed != 0 {
            let s = removed.trailing_zeros();
            removed &= removed - 1;
            let base = bits ^ (1u128 << s);
            let mut added = free;
            while added != 0 {
                let t = added.trailing_zeros();
                added &= added - 1;
                if let Some(&j) = self.index.get(&(base | 1u128 << t)) {
                    out.push(j);
                }
            }
        }
        out
    }

    /// Component label (index of its least node) for every node.
    fn components(&self, jobs: Jobs) -> Vec<u32> {
        const UNSEEN: u32 = u32::MAX;
        let mut label = vec![UNSEEN; self.nodes.len()];
        for root in 0..self.nodes.len() as u32 {
            if label[root as usize] != UNSEEN {
                continue;
            }
            label[root as usize] = root;
            let mut frontier = vec![root];
            while !frontier.is_empty() {
                let chunks: Vec<&[u32]> = frontier.chunks(512).collect();
                let found = par::map(&chunks, jobs, |chunk| {
                    chunk.iter().flat_map(|&i| self.neighbours(i)).collect::<Vec<u32>>()
                });
                let mut next = Vec::new();
                for j in found.into_iter().flatten() {
                    if label[j as usize] == UNSEEN {
                        label[j as usize] = root;
                        next.push(j);
                    }
                }
                frontier = next;
            }
        }
        label
    }

    fn shortest_path(&self, from: u32, to: u32) -> Option<Vec<u32>> {
        let mut parent = vec![u32::MAX; self.nodes.len()];
        parent[from as usize] = from;
        let mut queue = VecDeque::from([from]);
        while let Some(i) = queue.pop_front() {
            if i == to {
                let mut path = vec![to];
                let mut cur = to;
                while cur != from {
                    cur = parent[cur as usize];
                    path.push(cur);
                }
                path.reverse();
                return Some(path);
            }
            for j in self.neighbours(i) {
                if parent[j as usize] == u32::MAX {
                    parent[j as usize] = i;
                    queue.push_back(j);
                }
            }
        }
        None
    }
}

/// Connectivity of the reconfiguration graph at one `n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConnectivityAtN {
    pub n: usize,
    pub connected: bool,
    pub num_copies: usize,
    pub num_components: usize,
    /// Least copy of each component, for the first few components.
    pub representatives: Vec<EdgeSet>,
}

pub fn is_amoeba_at(g: &Graph, n: usize, opts: &AmoebaOptions) -> Result<ConnectivityAtN> {
    let rc = Reconfiguration::build(g, n, opts.node_budget, false)?;
    let label = rc.components(opts.jobs);
    let roots: Vec<u32> = label.iter().enumerate().filter(|&(i, &l)| i as u32 == l).map(|(i, _)| i as u32).collect();
    Ok(ConnectivityAtN {
        n,
        connected: roots.len() == 1,
        num_copies: rc.nodes.len(),
        num_components: roots.len(),
        representatives: roots.iter().take(SAMPLE_REPRESENTATIVES).map(|&i| rc.nodes[i as usize]).collect(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AmoebaVerdict {
    pub graph6: String,
    pub n_min: usize,
    pub n_max: usize,
    pub per_n: Vec<ConnectivityAtN>,
    /// Connected at every tested `n`. Says nothing about larger `n`.
    pub connected_on_range: bool,
    pub verdict: String,
}

pub fn amoeba_verdict(g: &Graph, n_min: usize, n_max: usize, opts: &AmoebaOptions) -> Result<AmoebaVerdict> {
    if n_min > n_max {
        return Err(Error::OutOfRange(format!("empty range {n_min}..={n_max}")));
    }
    let per_n = (n_min..=n_max).map(|n| is_amoeba_at(g, n, opts)).collect::<Result<Vec<_>>>()?;
    let connected_on_range = per_n.iter().all(|c| c.connected);
    let verdict = if connected_on_range {
        format!("amoeba on [{n_min},{n_max}]")
    } else {
        let bad: Vec<String> = per_n.iter().filter(|c| !c.connected).map(|c| c.n.to_string()).collect();
        format!("not an amoeba on [{n_min},{n_max}]: disconnected at n = {}", bad.join(", "))
    };
    Ok(AmoebaVerdict { graph6: to_graph6(g), n_min, n_max, per_n, connected_on_range, verdict })
}

/// A chain of copies, one edge replacement per step, with the red/blue
/// split of each copy under a fixed colouring.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ToneChain {
    pub copies: Vec<EdgeSet>,
    /// `(removed slot, added slot)` for each step.
    pub steps: Vec<(usize, usize)>,
    /// `(red, blue)` edge counts of each copy.
    pub tones: Vec<(usize, usize)>,
}

impl ToneChain {
    fn from_copies(c: &Coloring, e: usize, copies: Vec<EdgeSet>) -> Self {
        let steps = copies
            .windows(2)
            .map(|w| {
                let removed = (w[0].bits() & !w[1].bits()).trailing_zeros() as usize;
                let added = (w[1].bits() & !w[0].bits()).trailing_zeros() as usize;
                (removed, added)
            })
            .collect();
        let tones = copies.iter().map(|copy| (c.tone(copy), e - c.tone(copy))).collect();
        ToneChain { copies, steps, tones }
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Checks one-edge steps, isomorphism to `g`, unit tone changes, and
    /// `r + b = e(G)` at every copy.
    pub fn check(&self, c: &Coloring, g: &Graph) -> bool {
        let target = canonical_form(&g.strip_isolated()).code;
        let iso = |e: &EdgeSet| canonical_form(&e.to_graph().strip_isolated()).code == target;
        self.copies.iter().all(iso)
            && self.copies.windows(2).zip(&self.steps).all(|(w, &(rem, add))| {
                (w[0].bits() ^ w[1].bits()).count_ones() == 2
                    && w[0].contains_slot(rem)
                    && !w[1].contains_slot(rem)
                    && w[1].contains_slot(add)
                    && !w[0].contains_slot(add)
            })
            && self.tones.windows(2).all(|w| w[0].0.abs_diff(w[1].0) <= 1)
            && self.copies.iter().zip(&self.tones).all(|(copy, &(r, b))| r == c.tone(copy) && r + b == g.e())
    }

    /// Every red count between the two endpoint counts occurs in the chain.
    pub fn covers_intermediate_tones(&self) -> bool {
        let (Some(first), Some(last)) = (self.tones.first(), self.tones.last()) else {
            return true;
        };
        let (lo, hi) = (first.0.min(last.0), first.0.max(last.0));
        (lo..=hi).all(|r| self.tones.iter().any(|t| t.0 == r))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "status")]
pub enum ChainOutcome {
    Chain(ToneChain),
    /// `from` and `to` lie in different components.
    NotConnected,
}

/// Shortest edge-replacement chain from `from` to `to` inside `K_{c.n}`.
pub fn interpolation_chain(
    c: &Coloring,
    g: &Graph,
    from: &EdgeSet,
    to: &EdgeSet,
    opts: &AmoebaOptions,
) -> Result<ChainOutcome> {
    let core = g.strip_isolated();
    let n = c.n();
    if from == to {
        let check = enumerate_embeddings(&core, n)?;
        if check.binary_search(from).is_err() {
            return Err(Error::Precondition("endpoint is not a copy of the pattern".into()));
        }
        return Ok(ChainOutcome::Chain(ToneChain::from_copies(c, g.e(), vec![*from])));
    }
    let rc = Reconfiguration::build(&core, n, opts.node_budget, true)?;
    let (Some(&a), Some(&b)) = (rc.index.get(&from.bits()), rc.index.get(&to.bits())) else {
        return Err(Error::Precondition("endpoint is not a copy of the pattern".into()));
    };
    Ok(match rc.shortest_path(a, b) {
        Some(path) => {
            let copies = path.into_iter().map(|i| rc.nodes[i as usize]).collect();
            ChainOutcome::Chain(ToneChain::from_copies(c, g.e(), copies))
        }
        None => ChainOutcome::NotConnected,
    })
}
