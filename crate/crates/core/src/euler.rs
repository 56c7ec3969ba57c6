//! Euler tours of transition graphs and the cycles they spell.

use serde::Serialize;
use thiserror::Error;

use crate::family::Family;
use crate::graph::{GraphError, Imbalance, TransitionGraph};
use crate::word::Symbol;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EulerError {
    #[error("graph is not balanced: vertex [{}] has in-degree {} and out-degree {}", .0.vertex, .0.in_degree, .0.out_degree)]
    NotBalanced(Imbalance),
    #[error("graph is not weakly connected: {} components of sizes {:?}", .0.components, .0.component_sizes)]
    NotConnected(Disconnection),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

impl EulerError {
    /// True when the graph was built but has no Euler tour.
    pub fn is_nonexistence(&self) -> bool {
        matches!(
            self,
            EulerError::NotBalanced(_) | EulerError::NotConnected(_)
        )
    }
}

/// Component summary reported when a graph falls apart.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Disconnection {
    pub components: usize,
    pub component_sizes: Vec<usize>,
    /// Smallest vertex of each component.
    pub witnesses: Vec<String>,
}

/// A cyclic sequence in which consecutive objects of length `L` overlap in
/// `s` symbols; object `j` starts at offset `j·(L − s)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CycleResult {
    pub symbols: Vec<Symbol>,
    pub family: String,
    pub overlap: usize,
    pub object_count: usize,
    pub object_length: usize,
}

impl CycleResult {
    /// Symbols contributed by each object, `L − s`.
    pub fn step(&self) -> usize {
        self.object_length - self.overlap
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    /// The `j`-th object read off the cycle, with wraparound.
    pub fn window(&self, j: usize) -> Vec<Symbol> {
        window_at(&self.symbols, j * self.step(), self.object_length)
    }

    /// Rotates to the lexicographically least rotation that keeps object
    /// boundaries aligned (a multiple of `L − s`).
    pub fn canonicalize(&mut self) {
        let step = self.step();
        if self.symbols.is_empty() || step == 0 {
            return;
        }
        let blocks: Vec<&[Symbol]> = self.symbols.chunks(step).collect();
        let start = least_rotation(&blocks) * step;
        self.symbols.rotate_left(start);
    }

    pub fn canonical(mut self) -> Self {
        self.canonicalize();
        self
    }
}

pub(crate) fn window_at(symbols: &[Symbol], start: usize, len: usize) -> Vec<Symbol> {
    let n = symbols.len();
    (0..len).map(|i| symbols[(start + i) % n]).collect()
}

/// Index of the lexicographically least rotation (Booth's algorithm).
pub fn least_rotation<T: Ord>(items: &[T]) -> usize {
    let n = items.len();
    if n == 0 {
        return 0;
    }
    let at = |i: usize| &items[i % n];
    let mut failure: Vec<isize> = vec![-1; 2 * n];
    let mut k = 0usize;
    for j in 1..2 * n {
        let mut i = failure[j - k - 1];
        while i != -1 && at(j) != at(k + i as usize + 1) {
            if at(j) < at(k + i as usize + 1) {
                k = j - i as usize - 1;
            }
            i = failure[i as usize];
        }
        if i == -1 && at(j) != at(k + (i + 1) as usize) {
            if at(j) < at(k) {
                k = j;
            }
            failure[j - k] = -1;
        } else {
            failure[j - k] = i + 1;
        }
    }
    k % n
}

/// Closed Euler tour as a list of edge ids.
///
/// The tour starts at the smallest vertex with an outgoing edge and always
/// leaves a vertex by its lexicographically smallest unused edge, so the
/// result depends only on the graph.
pub fn euler_tour(g: &TransitionGraph) -> Result<Vec<usize>, EulerError> {
    if let Some(bad) = g.imbalance() {
        return Err(EulerError::NotBalanced(bad));
    }
    let components = g.weakly_connected_components();
    if components.count() > 1 {
        return Err(EulerError::NotConnected(Disconnection {
            components: components.count(),
            component_sizes: components.sizes(),
            witnesses: components
                .groups()
                .iter()
                .map(|grp| crate::word::render_symbols(g.vertex(grp[0])))
                .collect(),
        }));
    }
    let Some(start) = (0..g.vertex_count()).find(|&v| g.out_degree(v) > 0) else {
        return Ok(Vec::new());
    };

    let mut cursor = vec![0usize; g.vertex_count()];
    // (vertex, edge used to enter it)
    let mut stack: Vec<(usize, Option<usize>)> = vec![(start, None)];
    let mut tour = Vec::with_capacity(g.edge_count());
    while let Some(&(v, entered_by)) = stack.last() {
        let out = g.out_edges(v);
        if cursor[v] < out.len() {
            let e = out[cursor[v]] as usize;
            cursor[v] += 1;
            stack.push((g.head(e), Some(e)));
        } else {
            stack.pop();
            if let Some(e) = entered_by {
                tour.push(e);
            }
        }
    }
    tour.reverse();
    debug_assert_eq!(tour.len(), g.edge_count());
    Ok(tour)
}

/// Concatenates the first `L − s` symbols of each edge word along the tour.
pub fn spell(tour: &[usize], g: &TransitionGraph) -> CycleResult {
    let len = g.word_len();
    let step = len - g.overlap();
    let mut symbols = Vec::with_capacity(tour.len() * step);
    for &e in tour {
        symbols.extend_from_slice(&g.edge_word(e)[..step]);
    }
    CycleResult {
        symbols,
        family: g.label().to_string(),
        overlap: g.overlap(),
        object_count: tour.len(),
        object_length: len,
    }
}

/// Builds the transition graph, finds an Euler tour and spells it.
///
/// No coprimality condition is imposed up front; the graph decides.
pub fn generate(family: &Family, overlap: usize) -> Result<CycleResult, EulerError> {
    let g = TransitionGraph::build(family, overlap)?;
    let tour = euler_tour(&g)?;
    Ok(spell(&tour, &g))
}

/// Universal cycle: overlap `L − 1`.
pub fn generate_ucycle(family: &Family) -> Result<CycleResult, EulerError> {
    generate(family, family.ucycle_overlap())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeMap;

    fn fam(d: &str) -> Family {
        d.parse().unwrap()
    }

    fn digits(c: &CycleResult) -> String {
        c.symbols.iter().map(|s| s.to_string()).collect()
    }

    fn all_rotations(s: &str) -> Vec<String> {
        (0..s.len())
            .map(|i| format!("{}{}", &s[i..], &s[..i]))
            .collect()
    }

    #[test]
    fn de_bruijn_calibration() {
        let c = generate_ucycle(&fam("bin:n=3")).unwrap();
        assert_eq!(c.len(), 8);
        assert!(all_rotations("00010111").contains(&digits(&c)));
        assert_eq!(digits(&c.canonical()), "00010111");
    }

    #[test]
    fn single_letter() {
        let c = generate_ucycle(&fam("wn:n=1")).unwrap();
        assert_eq!(c.symbols, vec![0]);
        assert_eq!(c.overlap, 0);
    }

    #[test]
    fn permutation_prefixes() {
        // ms:1,2,3 in prefix form: words of length 2 with overlap 1
        let words = fam("ms:1,2,3").enumerate().unwrap().truncated(2);
        let g = TransitionGraph::from_words("prefixes", words, 1).unwrap();
        let c = spell(&euler_tour(&g).unwrap(), &g);
        assert_eq!(c.len(), 6);
        let mut windows: Vec<Vec<Symbol>> = (0..6).map(|j| c.window(j)).collect();
        windows.sort();
        assert_eq!(
            windows,
            vec![
                vec![1, 2],
                vec![1, 3],
                vec![2, 1],
                vec![2, 3],
                vec![3, 1],
                vec![3, 2]
            ]
        );
    }

    #[test]
    fn tour_is_closed_and_complete() {
        for (d, s) in [
            ("wn:n=4", 3),
            ("wn:n=4", 2),
            ("wn:n=5", 1),
            ("wkn:n=5,k=4", 3),
        ] {
            let g = TransitionGraph::build(&fam(d), s).unwrap();
            let tour = euler_tour(&g).unwrap();
            assert_eq!(tour.len(), g.edge_count());
            let mut used = vec![false; g.edge_count()];
            for &e in &tour {
                assert!(!std::mem::replace(&mut used[e], true));
            }
            for pair in tour.windows(2) {
                assert_eq!(g.head(pair[0]), g.tail(pair[1]));
            }
            assert_eq!(g.head(*tour.last().unwrap()), g.tail(tour[0]));
            assert_eq!(g.tail(tour[0]), 0);
        }
    }

    #[test]
    fn expected_lengths() {
        assert_eq!(generate(&fam("wn:n=3"), 2).unwrap().len(), 13);
        assert_eq!(generate(&fam("wkn:n=4,k=3"), 2).unwrap().len(), 16);
        assert_eq!(generate(&fam("wn:n=4"), 2).unwrap().len(), 150);
    }

    #[test]
    fn distinct_four_overlap_two_is_disconnected() {
        match generate(&fam("ms:1,2,3,4"), 2) {
            Err(EulerError::NotConnected(d)) => {
                assert_eq!(d.components, 3);
                assert_eq!(d.component_sizes, vec![4, 4, 4]);
                assert_eq!(d.witnesses, vec!["1 2", "1 3", "1 4"]);
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            generate_ucycle(&fam("wnh:n=3,h=2")),
            Err(EulerError::NotConnected(_))
        ));
    }

    #[test]
    fn single_loop_tour() {
        let c = generate_ucycle(&fam("wnh:n=5,h=0")).unwrap();
        assert_eq!(c.symbols, vec![0]);
        assert_eq!(c.window(0), vec![0; 5]);
    }

    #[test]
    fn deterministic() {
        let a = generate(&fam("wn:n=5"), 3).unwrap();
        let b = generate(&fam("wn:n=5"), 3).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn canonical_keeps_alignment() {
        let c = generate(&fam("wn:n=4"), 2).unwrap();
        let canon = c.clone().canonical();
        let count = |c: &CycleResult| {
            let mut m = BTreeMap::new();
            for j in 0..c.object_count {
                *m.entry(c.window(j)).or_insert(0) += 1;
            }
            m
        };
        assert_eq!(count(&c), count(&canon));
        assert_eq!(canon.symbols[..4], [0, 0, 0, 0]);
    }

    #[test]
    fn booth_matches_brute_force() {
        let cases: Vec<Vec<u8>> = vec![
            vec![],
            vec![1],
            vec![2, 1],
            vec![1, 1, 1],
            vec![0, 1, 0, 0, 1],
            vec![3, 1, 2, 1, 2, 1],
            vec![1, 0, 1, 0],
            b"bbaaccaadd".to_vec(),
        ];
        for items in cases {
            let n = items.len();
            let got = least_rotation(&items);
            if n == 0 {
                assert_eq!(got, 0);
                continue;
            }
            let rot = |i: usize| [&items[i..], &items[..i]].concat();
            let best = (0..n).map(rot).min().unwrap();
            assert_eq!(rot(got), best, "{items:?}");
        }
    }
}
