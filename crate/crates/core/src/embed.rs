//! Copies of a pattern graph inside `K_n`.
//!
//! A copy is identified with its edge set; isolated vertices of the pattern
//! are stripped first. Labelled copies on a fixed vertex set are the orbit
//! of the pattern's bitmap under the symmetric group, generated here by
//! adjacent transpositions, so the work is proportional to the output.

use std::collections::HashSet;

use crate::canon::canonical_form;
use crate::error::{Error, Result};
use crate::graph::{slot, unslot, EdgeSet, Graph};

fn swap_labels(bits: u128, a: usize, b: usize) -> u128 {
    let relabel = |v: usize| {
        if v == a {
            b
        } else if v == b {
            a
        } else {
            v
        }
    };
    let mut out = 0u128;
    let mut rest = bits;
    while rest != 0 {
        let s = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        let (u, v) = unslot(s);
        out |= 1u128 << slot(relabel(u), relabel(v));
    }
    out
}

/// All distinct edge sets of copies of `g` spanning exactly `0..g.n()`.
/// `g` must have no isolated vertices.
fn labelled_copies(g: &Graph) -> Vec<u128> {
    let m = g.n();
    let start = g.edges().bits();
    let mut seen: HashSet<u128> = HashSet::from([start]);
    let mut stack = vec![start];
    while let Some(bits) = stack.pop() {
        for i in 0..m.saturating_sub(1) {
            let next = swap_labels(bits, i, i + 1);
            if seen.insert(next) {
                stack.push(next);
            }
        }
    }
    let mut out: Vec<u128> = seen.into_iter().collect();
    out.sort_unstable();
    out
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Number of copies of `g` in `K_n`, without enumerating them.
pub fn count_embeddings(g: &Graph, n: usize) -> u128 {
    if g.e() == 0 {
        return 1;
    }
    let core = g.strip_isolated();
    let m = core.n();
    if m > n {
        return 0;
    }
    let perms: u128 = (1..=m as u128).product();
    binomial(n, m) * perms / canonical_form(&core).aut_count as u128
}

/// Every copy of `g` in `K_n`, sorted by bitmap.
///
/// An edgeless pattern has exactly one copy, the empty edge set.
pub fn enumerate_embeddings(g: &Graph, n: usize) -> Result<Vec<EdgeSet>> {
    if n < g.n() || n > crate::graph::MAX_VERTICES {
        return Err(Error::Precondition(format!(
            "ambient size {n} must lie in {}..=16",
            g.n()
        )));
    }
    if g.e() == 0 {
        return Ok(vec![EdgeSet::empty(n)]);
    }
    let core = g.strip_isolated();
    let m = core.n();
    let local = labelled_copies(&core);
    let mut out = Vec::with_capacity(local.len() * binomial(n, m) as usize);
    let mut subset: Vec<usize> = (0..m).collect();
    let local_slots = crate::graph::choose2(m);
    let mut slot_map = vec![0usize; local_slots];
    loop {
        for (s, target) in slot_map.iter_mut().enumerate() {
            let (u, v) = unslot(s);
            *target = slot(subset[u], subset[v]);
        }
        for &bits in &local {
            let mut global = 0u128;
            let mut rest = bits;
            while rest != 0 {
                let s = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                global |= 1u128 << slot_map[s];
            }
            out.push(EdgeSet::from_bits(n, global)?);
        }
        // next m-subset of 0..n in lexicographic order
        let Some(i) = (0..m).rev().find(|&i| subset[i] < n - m + i) else {
            break;
        };
        subset[i] += 1;
        for j in i + 1..m {
            subset[j] = subset[j - 1] + 1;
        }
    }
    out.sort_unstable();
    Ok(out)
}

/// Per-slot index of the embeddings containing that slot.
///
/// Stored flat: the embeddings through slot `s` are
/// `members[offsets[s]..offsets[s + 1]]`.
#[derive(Clone, Debug)]
pub struct SlotIndex {
    pub offsets: Vec<usize>,
    pub members: Vec<u32>,
}

impl SlotIndex {
    pub fn new(embeddings: &[EdgeSet], slots: usize) -> Self {
        let mut buckets: Vec<Vec<u32>> = vec![Vec::new(); slots];
        for (i, e) in embeddings.iter().enumerate() {
            for s in e.slots() {
                buckets[s].push(i as u32);
            }
        }
        let mut offsets = Vec::with_capacity(slots + 1);
        let mut members = Vec::new();
        offsets.push(0);
        for b in buckets {
            members.extend(b);
            offsets.push(members.len());
        }
        SlotIndex { offsets, members }
    }

    #[inline]
    pub fn through(&self, s: usize) -> &[u32] {
        &self.members[self.offsets[s]..self.offsets[s + 1]]
    }
}
