//! Spectra and deciders against a plain pair-list evaluation.

use std::collections::BTreeSet;

use omnitonal::spectra::{cut_spectrum, induced_spectrum, is_balanceable, is_omnitonal, is_r_tonal};
use omnitonal::{EdgeSet, Graph};

fn naive(n: usize, pairs: &[(usize, usize)]) -> (BTreeSet<usize>, BTreeSet<usize>) {
    let mut cut = BTreeSet::new();
    let mut ind = BTreeSet::new();
    for w in 0u32..1 << n {
        let inside = |v: usize| w >> v & 1 == 1;
        cut.insert(pairs.iter().filter(|&&(a, b)| inside(a) != inside(b)).count());
        ind.insert(pairs.iter().filter(|&&(a, b)| inside(a) && inside(b)).count());
    }
    (cut, ind)
}

#[test]
fn all_labelled_graphs_up_to_five_vertices() {
    for n in 1..=5usize {
        let slots = n * (n - 1) / 2;
        for bits in 0u128..1 << slots {
            let set = EdgeSet::from_bits(n, bits).unwrap();
            let pairs: Vec<(usize, usize)> = set.pairs().collect();
            let g = Graph::from_edge_set(set);
            let (cut, ind) = naive(n, &pairs);
            let got_cut: BTreeSet<usize> = cut_spectrum(&g).achieved().into_iter().collect();
            let got_ind: BTreeSet<usize> = induced_spectrum(&g).achieved().into_iter().collect();
            assert_eq!(got_cut, cut);
            assert_eq!(got_ind, ind);
            let e = pairs.len();
            if e == 0 {
                continue;
            }
            let hit = |t: &[usize]| t.iter().any(|x| cut.contains(x)) && t.iter().any(|x| ind.contains(x));
            assert_eq!(is_balanceable(&g).unwrap().holds, hit(&[e / 2, e.div_ceil(2)]));
            assert_eq!(is_omnitonal(&g).unwrap().holds, cut.len() == e + 1 && ind.len() == e + 1);
            for r in 1..=e / 2 {
                assert_eq!(is_r_tonal(&g, r).unwrap().holds, hit(&[r, e - r]));
            }
        }
    }
}
