//! Exhaustive ground truth for small `n`.
//!
//! `bal`, `bal_r` and `ot` are maxima of `min{e(R), e(B)}` over the
//! colourings of `K_n` that avoid a tone pattern. Every pattern here is
//! invariant under swapping colours, so only colourings with the last slot
//! blue are scanned. The scan walks red bitmaps in Gray-code order; each
//! step flips one slot and updates the red count of just the copies through
//! that slot, together with a histogram of copies per tone, so the pattern
//! test is a lookup. Work is split by the high bits of the bitmap and each
//! part reports its own maximum and extremal set; the merge is ordered.
//!
//! `ex` is a depth-first search over edge subsets that never completes a
//! copy of the pattern, with a counting bound.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use serde::Serialize;

use crate::canon::canonical_form;
use crate::coloring::{tone_set_of, tones_balanced, Coloring};
use crate::embed::{enumerate_embeddings, SlotIndex};
use crate::error::{Error, Result};
use crate::graph::{choose2, EdgeSet, Graph};
use crate::graph6::to_graph6;
use crate::par::{self, Jobs};

/// Default cap on scanned colourings: all of `K_8` up to colour swap.
pub const DEFAULT_COLORING_BUDGET: u128 = 1 << 27;
/// Default cap on search nodes for `ex`.
pub const DEFAULT_EX_NODE_BUDGET: u128 = 1 << 32;

/// Pending extremal bitmaps kept before they are reduced to canonical codes.
const PENDING_LIMIT: usize = 1 << 14;
/// High bits used to split the scan into independent parts.
const PREFIX_BITS: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "mode")]
pub enum Mode {
    /// Balanced copy; `strong` requires both patterns when `e(G)` is odd.
    Bal { strong: bool },
    /// A copy with `r` or `e(G) - r` red edges.
    BalR { r: usize },
    /// Copies of every tone `0..=e(G)`.
    Ot,
    /// Turán number: largest `G`-free graph.
    Ex,
}

impl Mode {
    pub fn name(&self) -> &'static str {
        match self {
            Mode::Bal { .. } => "bal",
            Mode::BalR { .. } => "bal_r",
            Mode::Ot => "ot",
            Mode::Ex => "ex",
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct OracleOptions {
    pub coloring_budget: u128,
    pub ex_node_budget: u128,
    pub jobs: Jobs,
}

impl Default for OracleOptions {
    fn default() -> Self {
        OracleOptions {
            coloring_budget: DEFAULT_COLORING_BUDGET,
            ex_node_budget: DEFAULT_EX_NODE_BUDGET,
            jobs: Jobs::default(),
        }
    }
}

/// One extremal graph, up to isomorphism and colour swap.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtremalMember {
    /// Canonical code (hex) of the smaller colour class (`ex`: the graph).
    pub code: String,
    pub graph6: String,
    /// A colouring realising it, with the smaller class red.
    pub coloring: Coloring,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OracleResult {
    #[serde(flatten)]
    pub mode: Mode,
    pub n: usize,
    pub graph6: String,
    /// `None` when no colouring avoids the pattern (no `G`-free graph for
    /// `ex`); serialised as `-1`.
    #[serde(serialize_with = "sentinel")]
    pub value: Option<usize>,
    pub extremal: Vec<ExtremalMember>,
    /// Colourings evaluated (half of all colourings) or `ex` search nodes.
    pub colorings_scanned: u128,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl OracleResult {
    /// `value` with `-1` standing for "nonexistent".
    pub fn value_or_sentinel(&self) -> i64 {
        self.value.map_or(-1, |v| v as i64)
    }
}

fn sentinel<S: serde::Serializer>(v: &Option<usize>, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_i64(v.map_or(-1, |v| v as i64))
}

/// The tone pattern whose presence is tested.
#[derive(Clone, Copy, Debug)]
enum Pattern {
    AnyOf([usize; 2]),
    AllOf([usize; 2]),
    Full,
}

impl Pattern {
    fn for_mode(mode: Mode, e: usize) -> Result<Self> {
        Ok(match mode {
            Mode::Bal { strong } => {
                let t = [e / 2, e.div_ceil(2)];
                if strong {
                    Pattern::AllOf(t)
                } else {
                    Pattern::AnyOf(t)
                }
            }
            Mode::BalR { r } => {
                if r == 0 || r > e / 2 {
                    return Err(Error::OutOfRange(format!("r = {r} must satisfy 0 < r <= {}", e / 2)));
                }
                Pattern::AnyOf([r, e - r])
            }
            Mode::Ot => Pattern::Full,
            Mode::Ex => unreachable!("ex is not a colouring scan"),
        })
    }

    #[inline]
    fn present(&self, hist: &[u32]) -> bool {
        match *self {
            Pattern::AnyOf([a, b]) => hist[a] > 0 || hist[b] > 0,
            Pattern::AllOf([a, b]) => hist[a] > 0 && hist[b] > 0,
            Pattern::Full => hist.iter().all(|&c| c > 0),
        }
    }
}

/// Per-part result: best value and the extremal colourings found at it.
struct PartResult {
    best: i64,
    family: BTreeMap<Vec<u8>, u128>,
}

/// Canonical key of a colouring up to isomorphism and colour swap, with
/// the representative normalised so red is the key's class.
fn family_key(n: usize, red: u128) -> (Vec<u8>, u128) {
    let full = EdgeSet::full_mask(n);
    let blue = !red & full;
    let (r, b) = (red.count_ones(), blue.count_ones());
    let code_of = |bits: u128| canonical_form(&Graph::from_edge_set(EdgeSet::from_bits(n, bits).unwrap())).code;
    if r < b {
        (code_of(red), red)
    } else if b < r {
        (code_of(blue), blue)
    } else {
        let (cr, cb) = (code_of(red), code_of(blue));
        if cr <= cb {
            (cr, red)
        } else {
            (cb, blue)
        }
    }
}

fn absorb(n: usize, family: &mut BTreeMap<Vec<u8>, u128>, pending: &mut Vec<u128>) {
    for red in pending.drain(..) {
        let (code, rep) = family_key(n, red);
        family.entry(code).and_modify(|r| *r = (*r).min(rep)).or_insert(rep);
    }
}

struct Scanner<'a> {
    n: usize,
    slots: usize,
    low_bits: usize,
    embeddings: &'a [EdgeSet],
    index: &'a SlotIndex,
    e: usize,
    pattern: Pattern,
}

impl Scanner<'_> {
    fn scan_part(&self, prefix: u128) -> PartResult {
        let mut red: u128 = prefix << self.low_bits;
        let mut counts: Vec<u8> = self.embeddings.iter().map(|m| (m.bits() & red).count_ones() as u8).collect();
        let mut hist = vec![0u32; self.e + 1];
        for &c in &counts {
            hist[c as usize] += 1;
        }
        let mut red_count = red.count_ones() as i64;
        let total = self.slots as i64;
        let mut best = -1i64;
        let mut family = BTreeMap::new();
        let mut pending: Vec<u128> = Vec::new();

        let mut evaluate = |red: u128, red_count: i64, hist: &[u32], best: &mut i64| {
            let m = red_count.min(total - red_count);
            if m < *best || self.pattern.present(hist) {
                return;
            }
            if m > *best {
                *best = m;
                family.clear();
                pending.clear();
            }
            pending.push(red);
            if pending.len() >= PENDING_LIMIT {
                absorb(self.n, &mut family, &mut pending);
            }
        };

        evaluate(red, red_count, &hist, &mut best);
        let steps: u128 = 1u128 << self.low_bits;
        for step in 1..steps {
            let bit = step.trailing_zeros() as usize;
            red ^= 1u128 << bit;
            if red >> bit & 1 == 1 {
                red_count += 1;
                for &i in self.index.through(bit) {
                    let c = &mut counts[i as usize];
                    hist[*c as usize] -= 1;
                    *c += 1;
                    hist[*c as usize] += 1;
                }
            } else {
                red_count -= 1;
                for &i in self.index.through(bit) {
                    let c = &mut counts[i as usize];
                    hist[*c as usize] -= 1;
                    *c -= 1;
                    hist[*c as usize] += 1;
                }
            }
            evaluate(red, red_count, &hist, &mut best);
        }
        absorb(self.n, &mut family, &mut pending);
        PartResult { best, family }
    }
}

fn check_pattern(n: usize, g: &Graph) -> Result<()> {
    if g.e() == 0 {
        return Err(Error::Precondition("pattern needs at least one edge".into()));
    }
    if g.n() > n {
        return Err(Error::Precondition(format!("pattern has {} vertices, more than n = {n}", g.n())));
    }
    Ok(())
}

fn merge(parts: Vec<PartResult>) -> (i64, BTreeMap<Vec<u8>, u128>) {
    let best = parts.iter().map(|p| p.best).max().unwrap_or(-1);
    let mut family = BTreeMap::new();
    for p in parts.into_iter().filter(|p| p.best == best && best >= 0) {
        for (code, rep) in p.family {
            family.entry(code).and_modify(|r: &mut u128| *r = (*r).min(rep)).or_insert(rep);
        }
    }
    (best, family)
}

fn members(n: usize, family: BTreeMap<Vec<u8>, u128>) -> Vec<ExtremalMember> {
    family
        .into_iter()
        .map(|(code, rep)| {
            let red = EdgeSet::from_bits(n, rep).expect("scanned bitmap is in range");
            ExtremalMember {
                code: code.iter().map(|b| format!("{b:02x}")).collect(),
                graph6: to_graph6(&red.to_graph()),
                coloring: Coloring::new(red),
            }
        })
        .collect()
}

fn scan_colorings(n: usize, g: &Graph, mode: Mode, opts: &OracleOptions) -> Result<OracleResult> {
    let start = Instant::now();
    check_pattern(n, g)?;
    let pattern = Pattern::for_mode(mode, g.e())?;
    let slots = choose2(n);
    let free = slots - 1;
    let scanned = 1u128 << free;
    if scanned > opts.coloring_budget {
        return Err(Error::Budget {
            what: format!("colourings of K_{n} up to colour swap"),
            needed: scanned,
            budget: opts.coloring_budget,
        });
    }
    let embeddings = enumerate_embeddings(g, n)?;
    let index = SlotIndex::new(&embeddings, slots);
    let prefix_bits = PREFIX_BITS.min(free);
    let scanner = Scanner {
        n,
        slots,
        low_bits: free - prefix_bits,
        embeddings: &embeddings,
        index: &index,
        e: g.e(),
        pattern,
    };
    let prefixes: Vec<u128> = (0..1u128 << prefix_bits).collect();
    let parts = par::map(&prefixes, opts.jobs, |&p| scanner.scan_part(p));
    let (best, family) = merge(parts);
    Ok(OracleResult {
        mode,
        n,
        graph6: to_graph6(g),
        value: (best >= 0).then_some(best as usize),
        extremal: members(n, family),
        colorings_scanned: scanned,
        elapsed: start.elapsed(),
    })
}

/// `bal(n, G)` and its extremal family.
pub fn brute_force_bal(n: usize, g: &Graph, strong: bool, opts: &OracleOptions) -> Result<OracleResult> {
    scan_colorings(n, g, Mode::Bal { strong }, opts)
}

/// `bal_r(n, G)`: the pattern is a copy with `r` or `e(G) - r` red edges.
pub fn brute_force_bal_r(n: usize, g: &Graph, r: usize, opts: &OracleOptions) -> Result<OracleResult> {
    scan_colorings(n, g, Mode::BalR { r }, opts)
}

/// `ot(n, G)`: the pattern is full tone coverage.
pub fn brute_force_ot(n: usize, g: &Graph, opts: &OracleOptions) -> Result<OracleResult> {
    scan_colorings(n, g, Mode::Ot, opts)
}

struct ExSearch<'a> {
    n: usize,
    slots: usize,
    embeddings: &'a [EdgeSet],
    index: &'a SlotIndex,
    nodes: u128,
    budget: u128,
    best: i64,
    family: BTreeMap<Vec<u8>, u128>,
}

impl ExSearch<'_> {
    fn completes_copy(&self, cur: u128, s: usize) -> bool {
        self.index.through(s).iter().any(|&i| self.embeddings[i as usize].bits() & !cur == 1u128 << s)
    }

    fn dfs(&mut self, s: usize, cur: u128, count: i64) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::Budget { what: "ex search nodes".into(), needed: self.nodes, budget: self.budget });
        }
        if count + ((self.slots - s) as i64) < self.best {
            return Ok(());
        }
        if s == self.slots {
            if count > self.best {
                self.best = count;
                self.family.clear();
            }
            let code = canonical_form(&Graph::from_edge_set(EdgeSet::from_bits(self.n, cur)?)).code;
            self.family.entry(code).and_modify(|r| *r = (*r).min(cur)).or_insert(cur);
            return Ok(());
        }
        if !self.completes_copy(cur, s) {
            self.dfs(s + 1, cur | 1u128 << s, count + 1)?;
        }
        self.dfs(s + 1, cur, count)
    }
}

/// `ex(n, G)` and the family `Ex(n, G)` of extremal graphs.
pub fn brute_force_ex(n: usize, g: &Graph, opts: &OracleOptions) -> Result<OracleResult> {
    let start = Instant::now();
    check_pattern(n, g)?;
    let slots = choose2(n);
    let embeddings = enumerate_embeddings(g, n)?;
    let index = SlotIndex::new(&embeddings, slots);
    // Split on the first few slots; each part searches its own subtree.
    let split = 4.min(slots);
    let prefixes: Vec<u128> = (0..1u128 << split)
        .filter(|&p| {
            // keep only prefixes that are themselves G-free
            embeddings.iter().all(|m| m.bits() & !p != 0)
        })
        .collect();
    let budget = opts.ex_node_budget;
    let parts = par::map(&prefixes, opts.jobs, |&p| {
        let mut search = ExSearch {
            n,
            slots,
            embeddings: &embeddings,
            index: &index,
            nodes: 0,
            budget,
            best: -1,
            family: BTreeMap::new(),
        };
        search.dfs(split, p, p.count_ones() as i64).map(|_| (search.best, search.family, search.nodes))
    });
    let mut nodes = 0;
    let mut results = Vec::new();
    for part in parts {
        let (best, family, used) = part?;
        nodes += used;
        results.push(PartResult { best, family });
    }
    if nodes > budget {
        return Err(Error::Budget { what: "ex search nodes".into(), needed: nodes, budget });
    }
    let (best, family) = merge(results);
    Ok(OracleResult {
        mode: Mode::Ex,
        n,
        graph6: to_graph6(g),
        value: (best >= 0).then_some(best as usize),
        extremal: members(n, family),
        colorings_scanned: nodes,
        elapsed: start.elapsed(),
    })
}

/// Which pattern [`verify_extremal`] checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum VerifyMode {
    Bal,
    Ot,
}

/// True iff `min{e(R), e(B)} = claimed` and the pattern is absent.
pub fn verify_extremal(c: &Coloring, g: &Graph, mode: VerifyMode, claimed: usize) -> Result<bool> {
    check_pattern(c.n(), g)?;
    if c.min_class() != claimed {
        return Ok(false);
    }
    let copies = enumerate_embeddings(g, c.n())?;
    let tones = tone_set_of(c, g.e(), &copies);
    let present = match mode {
        VerifyMode::Bal => tones_balanced(&tones, false),
        VerifyMode::Ot => tones.is_full(),
    };
    Ok(!present)
}
