//! Red/blue colourings of `K_n` and pattern search inside them.
//!
//! A colouring stores its red edge set; blue is the complement. The line
//! format is `n;hex`, where `hex` is the red bitmap (bit `s` = slot `s` in
//! colex order) written most significant digit first, zero-padded to
//! `ceil(C(n,2)/4)` lowercase digits.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::embed::enumerate_embeddings;
use crate::error::{Error, Result};
use crate::graph::{choose2, slot, EdgeSet, Graph, VertexSet, MAX_VERTICES};

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Coloring {
    red: EdgeSet,
}

impl Coloring {
    pub fn new(red: EdgeSet) -> Self {
        Coloring { red }
    }

    pub fn all_blue(n: usize) -> Self {
        Coloring { red: EdgeSet::empty(n) }
    }

    pub fn all_red(n: usize) -> Self {
        Coloring { red: EdgeSet::full(n) }
    }

    pub fn n(&self) -> usize {
        self.red.n()
    }

    pub fn red(&self) -> EdgeSet {
        self.red
    }

    pub fn blue(&self) -> EdgeSet {
        self.red.complement()
    }

    pub fn red_count(&self) -> usize {
        self.red.len()
    }

    pub fn blue_count(&self) -> usize {
        choose2(self.n()) - self.red.len()
    }

    /// `min{e(R), e(B)}`.
    pub fn min_class(&self) -> usize {
        self.red_count().min(self.blue_count())
    }

    /// Swaps the colours.
    pub fn swapped(&self) -> Coloring {
        Coloring { red: self.blue() }
    }

    #[inline]
    pub fn is_red(&self, u: usize, v: usize) -> bool {
        self.red.contains(u, v)
    }

    /// Red edges of a copy.
    #[inline]
    pub fn tone(&self, copy: &EdgeSet) -> usize {
        self.red.intersection_len(copy)
    }

    pub fn to_line(&self) -> String {
        let digits = choose2(self.n()).div_ceil(4).max(1);
        format!("{};{:0width$x}", self.n(), self.red.bits(), width = digits)
    }
}

impl fmt::Display for Coloring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_line())
    }
}

impl fmt::Debug for Coloring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Coloring({})", self.to_line())
    }
}

impl Serialize for Coloring {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_line())
    }
}

impl FromStr for Coloring {
    type Err = Error;

    fn from_str(line: &str) -> Result<Self> {
        let bad = |why: &str| Error::ColoringFormat(format!("`{line}`: {why}"));
        let (n, hex) = line.trim().split_once(';').ok_or_else(|| bad("missing `;`"))?;
        let n: usize = n.trim().parse().map_err(|_| bad("vertex count is not an integer"))?;
        if !(1..=MAX_VERTICES).contains(&n) {
            return Err(bad("vertex count outside 1..=16"));
        }
        let hex = hex.trim();
        if hex.len() != choose2(n).div_ceil(4).max(1) {
            return Err(bad("wrong number of hex digits"));
        }
        let bits = u128::from_str_radix(hex, 16).map_err(|_| bad("not hexadecimal"))?;
        let red = EdgeSet::from_bits(n, bits).map_err(|_| bad("bits beyond C(n,2)"))?;
        Ok(Coloring { red })
    }
}

fn check_nt(n: usize, t: usize) -> Result<()> {
    if t >= 1 && t < n && n <= MAX_VERTICES {
        Ok(())
    } else {
        Err(Error::OutOfRange(format!("need 1 <= t < n <= 16, got n = {n}, t = {t}")))
    }
}

fn clique_edges(n: usize, verts: impl Iterator<Item = usize> + Clone) -> EdgeSet {
    let mut red = EdgeSet::empty(n);
    for a in verts.clone() {
        for b in verts.clone() {
            if a < b {
                red.insert(a, b);
            }
        }
    }
    red
}

/// Red is the clique on `0..t`.
pub fn type_a_coloring(n: usize, t: usize) -> Result<Coloring> {
    check_nt(n, t)?;
    Ok(Coloring::new(clique_edges(n, 0..t)))
}

/// Red is the complete bipartite graph between `0..t` and `t..n`.
pub fn type_b_coloring(n: usize, t: usize) -> Result<Coloring> {
    check_nt(n, t)?;
    let mut red = EdgeSet::empty(n);
    for a in 0..t {
        for b in t..n {
            red.insert(a, b);
        }
    }
    Ok(Coloring::new(red))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum TypeKind {
    A,
    B,
}

/// Every `t` in `1..n` for which the type-A(t) or type-B(t) colouring of
/// `K_n` has exactly as many red as blue edges. Pure arithmetic; any `n`.
pub fn balanced_type_params(n: u64, kind: TypeKind) -> Vec<u64> {
    let total = n * n.saturating_sub(1) / 2;
    if total % 2 == 1 {
        return Vec::new();
    }
    let half = total / 2;
    (1..n)
        .filter(|&t| match kind {
            TypeKind::A => t * (t - 1) / 2 == half,
            TypeKind::B => t * (n - t) == half,
        })
        .collect()
}

/// Red is the complete `(p, n - p)`-split graph; with `extra_edge`, the
/// least slot inside the independent part is also red.
pub fn split_graph_coloring(n: usize, p: usize, extra_edge: bool) -> Result<Coloring> {
    if p >= n || n > MAX_VERTICES || (extra_edge && n - p < 2) {
        return Err(Error::OutOfRange(format!("split colouring with n = {n}, p = {p}, extra = {extra_edge}")));
    }
    let mut red = EdgeSet::empty(n);
    for a in 0..p {
        for b in a + 1..n {
            red.insert(a, b);
        }
    }
    if extra_edge {
        red.insert(p, p + 1);
    }
    Ok(Coloring::new(red))
}

/// A member of the extremal family for full tone coverage of `K_{1,k}`.
pub fn ot_star_extremal(n: usize, k: usize) -> Result<Coloring> {
    if k == 0 || n < 4 * k || n > MAX_VERTICES {
        return Err(Error::OutOfRange(format!("need k >= 1 and 4k <= n <= 16, got n = {n}, k = {k}")));
    }
    let mut red = EdgeSet::empty(n);
    match k {
        1 => {}
        2 => {
            for i in 0..n / 2 {
                red.insert(2 * i, 2 * i + 1);
            }
        }
        3 => {
            for i in 0..n {
                red.insert(i, (i + 1) % n);
            }
        }
        _ => return split_graph_coloring(n, k - 2, false),
    }
    Ok(Coloring::new(red))
}

/// Whether `class` (one colour class of `K_n`) belongs to the extremal
/// family for full tone coverage of `K_{1,k}`: empty for `k = 1`, a maximum
/// matching for `k = 2`, a disjoint union of cycles for `k = 3`, the complete
/// `(k-2, n-k+2)`-split graph for `k >= 4`.
pub fn in_ot_star_family(class: &EdgeSet, k: usize) -> bool {
    let n = class.n();
    let g = class.to_graph();
    let degrees = g.degree_sequence();
    match k {
        0 => false,
        1 => class.is_empty(),
        2 => class.len() == n / 2 && degrees.iter().all(|&d| d <= 1),
        3 => degrees.iter().all(|&d| d == 2),
        _ => {
            k - 2 < n
                && crate::canon::isomorphic(&g, &split_graph_coloring(n, k - 2, false).expect("k - 2 < n").red().to_graph())
        }
    }
}

/// `floor(n/4)` disjoint red 4-cycles plus `J` on the leftover vertices:
/// nothing for `n = 0, 1 (mod 4)`, an edge for 2, a 2-edge path for 3.
pub fn bal_k4_extremal(n: usize) -> Result<Coloring> {
    if !(5..=MAX_VERTICES).contains(&n) {
        return Err(Error::OutOfRange(format!("need 5 <= n <= 16, got {n}")));
    }
    let mut red = EdgeSet::empty(n);
    let q = n / 4;
    for i in 0..q {
        let b = 4 * i;
        for j in 0..4 {
            red.insert(b + j, b + (j + 1) % 4);
        }
    }
    let b = 4 * q;
    match n % 4 {
        2 => red.insert(b, b + 1),
        3 => {
            red.insert(b, b + 1);
            red.insert(b + 1, b + 2);
        }
        _ => {}
    }
    Ok(Coloring::new(red))
}

/// Red-edge counts realised by copies of a pattern.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ToneSet {
    pub e: usize,
    /// `witness[r]` is the least copy with exactly `r` red edges.
    pub witness: Vec<Option<EdgeSet>>,
}

impl ToneSet {
    pub fn contains(&self, r: usize) -> bool {
        self.witness.get(r).is_some_and(Option::is_some)
    }

    pub fn achieved(&self) -> Vec<usize> {
        (0..=self.e).filter(|&r| self.contains(r)).collect()
    }

    pub fn is_full(&self) -> bool {
        self.witness.iter().all(Option::is_some)
    }
}

/// Tones over a precomputed list of copies.
pub fn tone_set_of(c: &Coloring, e: usize, copies: &[EdgeSet]) -> ToneSet {
    let mut witness = vec![None; e + 1];
    for copy in copies {
        let r = c.tone(copy);
        if witness[r].is_none() {
            witness[r] = Some(*copy);
        }
    }
    ToneSet { e, witness }
}

pub fn tone_set(c: &Coloring, g: &Graph) -> Result<ToneSet> {
    let copies = enumerate_embeddings(g, c.n())?;
    Ok(tone_set_of(c, g.e(), &copies))
}

/// Tones that count as balanced for a pattern with `e` edges.
pub fn balanced_tones(e: usize) -> Vec<usize> {
    if e.is_multiple_of(2) {
        vec![e / 2]
    } else {
        vec![e / 2, e / 2 + 1]
    }
}

/// Whether a tone set contains a balanced copy; `strong` asks for both
/// patterns when `e` is odd.
pub fn tones_balanced(tones: &ToneSet, strong: bool) -> bool {
    let targets = balanced_tones(tones.e);
    if strong {
        targets.iter().all(|&r| tones.contains(r))
    } else {
        targets.iter().any(|&r| tones.contains(r))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BalancedCopy {
    pub present: bool,
    /// One balanced copy per balanced tone found.
    pub witnesses: Vec<(usize, EdgeSet)>,
}

pub fn contains_balanced(c: &Coloring, g: &Graph, strong: bool) -> Result<BalancedCopy> {
    let tones = tone_set(c, g)?;
    let witnesses = balanced_tones(g.e())
        .into_iter()
        .filter_map(|r| tones.witness[r].map(|w| (r, w)))
        .collect();
    Ok(BalancedCopy { present: tones_balanced(&tones, strong), witnesses })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TypedClique {
    pub kind: TypeKind,
    pub vertices: VertexSet,
    /// True when the clique is monochromatic (accepted as type A).
    pub monochromatic: bool,
}

/// Red-degree profile of a colour class restricted to `s`.
fn class_rows(c: &Coloring, s: VertexSet, red: bool) -> [VertexSet; MAX_VERTICES] {
    let mut rows = [0; MAX_VERTICES];
    let verts: Vec<usize> = (0..c.n()).filter(|&v| s >> v & 1 == 1).collect();
    for (i, &a) in verts.iter().enumerate() {
        for &b in &verts[i + 1..] {
            if c.red.contains_slot(slot(a, b)) == red {
                rows[a] |= 1 << b;
                rows[b] |= 1 << a;
            }
        }
    }
    rows
}

/// The class (given by rows restricted to `s`) is a clique on exactly `t`
/// vertices of `s` and nothing else.
fn is_t_clique(rows: &[VertexSet; MAX_VERTICES], s: VertexSet, t: usize) -> bool {
    let touched: VertexSet = (0..MAX_VERTICES).filter(|&v| rows[v] != 0).fold(0, |m, v| m | 1 << v);
    if t == 1 {
        return touched == 0;
    }
    touched.count_ones() as usize == t
        && (0..MAX_VERTICES).filter(|&v| touched >> v & 1 == 1).all(|v| rows[v] == touched & !(1 << v))
        && touched & !s == 0
}

/// The class is a complete bipartite `K_{t,t}` spanning `s`.
fn is_t_biclique(rows: &[VertexSet; MAX_VERTICES], s: VertexSet, t: usize) -> bool {
    let first = s.trailing_zeros() as usize;
    let other = rows[first];
    if other.count_ones() as usize != t {
        return false;
    }
    let side = s & !other;
    (0..MAX_VERTICES).filter(|&v| s >> v & 1 == 1).all(|v| {
        if side >> v & 1 == 1 {
            rows[v] == other
        } else {
            rows[v] == side
        }
    })
}

/// Searches for `2t` vertices whose induced colouring is type A (one
/// colour is a `K_t`) or type B (one colour is a `K_{t,t}`).
///
/// Non-monochromatic matches are preferred; a monochromatic `K_{2t}` is
/// returned as type A only when nothing else exists.
pub fn find_type_ab_clique(c: &Coloring, t: usize) -> Result<Option<TypedClique>> {
    let n = c.n();
    if t == 0 || 2 * t > n {
        return Err(Error::OutOfRange(format!("need 1 <= t and 2t <= n, got n = {n}, t = {t}")));
    }
    let mut mono = None;
    let mut subset: Vec<usize> = (0..2 * t).collect();
    loop {
        let s: VertexSet = subset.iter().fold(0, |m, &v| m | 1 << v);
        let red_rows = class_rows(c, s, true);
        let blue_rows = class_rows(c, s, false);
        let red_edges: u32 = red_rows.iter().map(|r| r.count_ones()).sum::<u32>() / 2;
        let is_mono = red_edges == 0 || red_edges as usize == choose2(2 * t);
        if is_mono {
            if mono.is_none() {
                mono = Some(TypedClique { kind: TypeKind::A, vertices: s, monochromatic: true });
            }
        } else if is_t_clique(&red_rows, s, t) || is_t_clique(&blue_rows, s, t) {
            return Ok(Some(TypedClique { kind: TypeKind::A, vertices: s, monochromatic: false }));
        } else if is_t_biclique(&red_rows, s, t) || is_t_biclique(&blue_rows, s, t) {
            return Ok(Some(TypedClique { kind: TypeKind::B, vertices: s, monochromatic: false }));
        }
        let k = 2 * t;
        let Some(i) = (0..k).rev().find(|&i| subset[i] < n - k + i) else {
            break;
        };
        subset[i] += 1;
        for j in i + 1..k {
            subset[j] = subset[j - 1] + 1;
        }
    }
    Ok(mono)
}
