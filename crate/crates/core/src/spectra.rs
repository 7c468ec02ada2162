//! Cut and induced-edge spectra, and the tonality deciders built on them.
//!
//! A graph `G` is `r`-tonal iff some cut `e(X, Y)` and some induced edge
//! count `e(G[W])` lie in `{r, e(G) - r}`; it is balanceable iff this holds
//! for `{floor(e/2), ceil(e/2)}`, and omnitonal iff both spectra are the whole
//! range `0..=e(G)`. Both spectra are computed by exhaustive enumeration,
//! which is at most `2^16` popcount passes under the vertex cap.

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::graph6::to_graph6;

/// Achievable values in `0..=max`, each with the least vertex mask
/// realising it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Spectrum {
    max: usize,
    witness: Vec<Option<VertexSet>>,
}

impl Spectrum {
    fn new(max: usize) -> Self {
        Spectrum { max, witness: vec![None; max + 1] }
    }

    fn offer(&mut self, value: usize, set: VertexSet) {
        let slot = &mut self.witness[value];
        if slot.is_none() {
            *slot = Some(set);
        }
    }

    pub fn max(&self) -> usize {
        self.max
    }

    pub fn contains(&self, value: usize) -> bool {
        self.witness.get(value).is_some_and(Option::is_some)
    }

    pub fn witness(&self, value: usize) -> Option<VertexSet> {
        self.witness.get(value).copied().flatten()
    }

    pub fn achieved(&self) -> Vec<usize> {
        (0..=self.max).filter(|&v| self.contains(v)).collect()
    }

    pub fn missing(&self) -> Vec<usize> {
        (0..=self.max).filter(|&v| !self.contains(v)).collect()
    }

    pub fn is_full(&self) -> bool {
        self.witness.iter().all(Option::is_some)
    }

    /// First value of `targets` present, with its witness.
    pub fn hit(&self, targets: &[usize]) -> Option<(usize, VertexSet)> {
        targets.iter().find_map(|&t| self.witness(t).map(|w| (t, w)))
    }
}

impl Serialize for Spectrum {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let achieved = self.achieved();
        let witnesses: Vec<VertexSet> = achieved.iter().map(|&v| self.witness(v).unwrap()).collect();
        let mut st = s.serialize_struct("Spectrum", 3)?;
        st.serialize_field("max", &self.max)?;
        st.serialize_field("achieved", &achieved)?;
        st.serialize_field("witnesses", &witnesses)?;
        st.end()
    }
}

/// Cut sizes over all bipartitions. Each bipartition is visited once, by
/// the side that avoids the last vertex; that side is the witness.
pub fn cut_spectrum(g: &Graph) -> Spectrum {
    let mut spec = Spectrum::new(g.e());
    let half: u32 = 1 << (g.n() - 1);
    for x in 0..half {
        spec.offer(g.cut_size(x as VertexSet), x as VertexSet);
    }
    spec
}

/// Induced edge counts over all vertex subsets.
pub fn induced_spectrum(g: &Graph) -> Spectrum {
    let mut spec = Spectrum::new(g.e());
    let all: u32 = 1 << g.n();
    for w in 0..all {
        spec.offer(g.induced_edge_count(w as VertexSet), w as VertexSet);
    }
    spec
}

/// Outcome of a tonality test with its witnesses.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TonalVerdict {
    pub holds: bool,
    /// `(value, X)` with `e(X, V - X) = value`, when one exists.
    pub cut: Option<(usize, VertexSet)>,
    /// `(value, W)` with `e(G[W]) = value`, when one exists.
    pub induced: Option<(usize, VertexSet)>,
}

fn verdict(cut: &Spectrum, induced: &Spectrum, targets: &[usize]) -> TonalVerdict {
    let c = cut.hit(targets);
    let i = induced.hit(targets);
    TonalVerdict { holds: c.is_some() && i.is_some(), cut: c, induced: i }
}

fn balance_targets(e: usize) -> [usize; 2] {
    [e / 2, e.div_ceil(2)]
}

pub fn is_r_tonal(g: &Graph, r: usize) -> Result<TonalVerdict> {
    let e = g.e();
    if r == 0 || r > e / 2 {
        return Err(Error::OutOfRange(format!("r = {r} must satisfy 0 < r <= {}", e / 2)));
    }
    Ok(verdict(&cut_spectrum(g), &induced_spectrum(g), &[r, e - r]))
}

pub fn is_balanceable(g: &Graph) -> Result<TonalVerdict> {
    if g.e() == 0 {
        return Err(Error::Precondition("balanceability needs at least one edge".into()));
    }
    Ok(verdict(&cut_spectrum(g), &induced_spectrum(g), &balance_targets(g.e())))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OmnitonalVerdict {
    pub holds: bool,
    pub cut_spectrum: Spectrum,
    pub induced_spectrum: Spectrum,
}

pub fn is_omnitonal(g: &Graph) -> Result<OmnitonalVerdict> {
    if g.e() == 0 {
        return Err(Error::Precondition("omnitonality needs at least one edge".into()));
    }
    let cut = cut_spectrum(g);
    let induced = induced_spectrum(g);
    Ok(OmnitonalVerdict { holds: cut.is_full() && induced.is_full(), cut_spectrum: cut, induced_spectrum: induced })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RTonal {
    pub r: usize,
    pub tonal: bool,
}

/// Everything the deciders know about one graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TonalityReport {
    pub graph6: String,
    pub n: usize,
    pub e: usize,
    pub cut_spectrum: Spectrum,
    pub induced_spectrum: Spectrum,
    pub balanceable: bool,
    pub omnitonal: bool,
    /// One entry per `r` in `1..=floor(e/2)`.
    pub r_tonal: Vec<RTonal>,
    pub bipartite: bool,
    /// One side of a bipartition, when bipartite.
    pub bipartition: Option<VertexSet>,
}

impl TonalityReport {
    /// Bit `r - 1` set iff the graph is `r`-tonal.
    pub fn r_tonal_mask(&self) -> u64 {
        self.r_tonal.iter().filter(|t| t.tonal).fold(0, |m, t| m | 1 << (t.r - 1))
    }

    /// omnitonal => balanceable, omnitonal => bipartite, and balanceable
    /// agrees with r-tonality at `floor(e/2)`.
    pub fn implications_hold(&self) -> bool {
        let top = self.r_tonal.last().map(|t| t.tonal);
        (!self.omnitonal || self.balanceable)
            && (!self.omnitonal || self.bipartite)
            && top.is_none_or(|t| t == self.balanceable)
    }
}

/// Computes both spectra once and derives every verdict from them.
///
/// Edgeless graphs are reported balanceable and omnitonal: both spectra are
/// `{0}`, which is the whole range.
pub fn tonal_report(g: &Graph) -> TonalityReport {
    let e = g.e();
    let cut = cut_spectrum(g);
    let induced = induced_spectrum(g);
    let balanceable = verdict(&cut, &induced, &balance_targets(e)).holds;
    let omnitonal = cut.is_full() && induced.is_full();
    let r_tonal = (1..=e / 2)
        .map(|r| RTonal { r, tonal: verdict(&cut, &induced, &[r, e - r]).holds })
        .collect();
    let bipartition = g.bipartition();
    TonalityReport {
        graph6: to_graph6(g),
        n: g.n(),
        e,
        cut_spectrum: cut,
        induced_spectrum: induced,
        balanceable,
        omnitonal,
        r_tonal,
        bipartite: bipartition.is_some(),
        bipartition,
    }
}
