//! Overlap transition graphs.
//!
//! Each word of a family becomes one edge, running from its length-`s`
//! prefix to its length-`s` suffix. An Euler tour of this multigraph spells
//! an `s`-overlap cycle; `s = L − 1` gives a universal cycle.

use std::collections::HashMap;
use std::fmt::Write as _;

use serde::Serialize;
use thiserror::Error;

use crate::family::{Family, FamilyError, WordList};
use crate::word::{render_symbols, PartialWord, Symbol};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("overlap {overlap} is not valid for words of length {word_len} (use 1..={max})", max = word_len.saturating_sub(1))]
    OverlapTooLarge { overlap: usize, word_len: usize },
    #[error(transparent)]
    Family(#[from] FamilyError),
}

/// Vertex `v` has in-degree different from out-degree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Imbalance {
    pub vertex: String,
    pub in_degree: usize,
    pub out_degree: usize,
}

/// Directed multigraph whose edges are family words and whose vertices are
/// the distinct `s`-prefixes and `s`-suffixes of those words.
///
/// Vertices are stored in lexicographic order, so vertex 0 is the minimum.
/// Out-edges of each vertex are stored in lexicographic order of their words.
#[derive(Debug, Clone)]
pub struct TransitionGraph {
    label: String,
    overlap: usize,
    words: WordList,
    vertices: WordList,
    tails: Vec<u32>,
    heads: Vec<u32>,
    out_start: Vec<usize>,
    out_edges: Vec<u32>,
    in_degree: Vec<usize>,
}

impl TransitionGraph {
    /// Builds the graph for `family` with overlap `s`.
    pub fn build(family: &Family, overlap: usize) -> Result<Self, GraphError> {
        check_overlap(overlap, family.word_length())?;
        let words = family.enumerate()?;
        Self::from_words(family.to_string(), words, overlap)
    }

    /// Builds the graph from an explicit word list. `s = 0` is accepted only
    /// for words of length 1, where every word is a loop on the empty vertex.
    pub fn from_words(
        label: impl Into<String>,
        words: WordList,
        overlap: usize,
    ) -> Result<Self, GraphError> {
        let len = words.word_len();
        check_overlap(overlap, len)?;
        if words.is_empty() {
            return Err(FamilyError::EmptyFamily(label.into()).into());
        }

        let mut index: HashMap<&[Symbol], u32> = HashMap::new();
        let mut order: Vec<&[Symbol]> = Vec::new();
        let mut raw_tails = Vec::with_capacity(words.len());
        let mut raw_heads = Vec::with_capacity(words.len());
        for w in words.iter() {
            for (key, ends) in [
                (&w[..overlap], &mut raw_tails),
                (&w[len - overlap..], &mut raw_heads),
            ] {
                let id = *index.entry(key).or_insert_with(|| {
                    order.push(key);
                    (order.len() - 1) as u32
                });
                ends.push(id);
            }
        }

        // relabel so vertex ids follow lexicographic order
        let mut sorted: Vec<u32> = (0..order.len() as u32).collect();
        sorted.sort_by(|&a, &b| order[a as usize].cmp(order[b as usize]));
        let mut rank = vec![0u32; order.len()];
        for (new, &old) in sorted.iter().enumerate() {
            rank[old as usize] = new as u32;
        }
        let vertices = WordList::from_words(overlap, sorted.iter().map(|&v| order[v as usize]));
        let tails: Vec<u32> = raw_tails.iter().map(|&v| rank[v as usize]).collect();
        let heads: Vec<u32> = raw_heads.iter().map(|&v| rank[v as usize]).collect();

        let vcount = vertices.len();
        let mut out_start = vec![0usize; vcount + 1];
        let mut in_degree = vec![0usize; vcount];
        for (&t, &h) in tails.iter().zip(&heads) {
            out_start[t as usize + 1] += 1;
            in_degree[h as usize] += 1;
        }
        for v in 0..vcount {
            out_start[v + 1] += out_start[v];
        }
        // stable fill keeps each vertex's out-list in word order
        let mut fill = out_start.clone();
        let mut out_edges = vec![0u32; tails.len()];
        let mut edge_order: Vec<u32> = (0..words.len() as u32).collect();
        edge_order.sort_by(|&a, &b| words.get(a as usize).cmp(words.get(b as usize)));
        for e in edge_order {
            let t = tails[e as usize] as usize;
            out_edges[fill[t]] = e;
            fill[t] += 1;
        }

        Ok(TransitionGraph {
            label: label.into(),
            overlap,
            words,
            vertices,
            tails,
            heads,
            out_start,
            out_edges,
            in_degree,
        })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn overlap(&self) -> usize {
        self.overlap
    }

    /// Length `L` of the object words.
    pub fn word_len(&self) -> usize {
        self.words.word_len()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.words.len()
    }

    pub fn vertex(&self, v: usize) -> &[Symbol] {
        self.vertices.get(v)
    }

    pub fn vertex_word(&self, v: usize) -> PartialWord {
        PartialWord::new(self.vertex(v).to_vec())
    }

    pub fn vertices(&self) -> impl Iterator<Item = &[Symbol]> + '_ {
        self.vertices.iter()
    }

    /// The object word carried by edge `e`.
    pub fn edge_word(&self, e: usize) -> &[Symbol] {
        self.words.get(e)
    }

    pub fn words(&self) -> &WordList {
        &self.words
    }

    pub fn tail(&self, e: usize) -> usize {
        self.tails[e] as usize
    }

    pub fn head(&self, e: usize) -> usize {
        self.heads[e] as usize
    }

    /// Edge ids leaving `v`, in lexicographic order of their words.
    pub fn out_edges(&self, v: usize) -> &[u32] {
        &self.out_edges[self.out_start[v]..self.out_start[v + 1]]
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.out_start[v + 1] - self.out_start[v]
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.in_degree[v]
    }

    /// The first vertex (in lexicographic order) whose in- and out-degree
    /// differ, if any.
    pub fn imbalance(&self) -> Option<Imbalance> {
        (0..self.vertex_count())
            .find(|&v| self.in_degree(v) != self.out_degree(v))
            .map(|v| Imbalance {
                vertex: render_symbols(self.vertex(v)),
                in_degree: self.in_degree(v),
                out_degree: self.out_degree(v),
            })
    }

    pub fn is_balanced(&self) -> bool {
        self.imbalance().is_none()
    }

    /// Components of the underlying undirected graph, ignoring vertices
    /// with no incident edges.
    pub fn weakly_connected_components(&self) -> Components {
        let mut dsu = DisjointSets::new(self.vertex_count());
        for (&t, &h) in self.tails.iter().zip(&self.heads) {
            dsu.union(t as usize, h as usize);
        }
        let mut root_to_group: HashMap<usize, usize> = HashMap::new();
        let mut groups: Vec<Vec<usize>> = Vec::new();
        let mut of_vertex = vec![None; self.vertex_count()];
        for (v, slot) in of_vertex.iter_mut().enumerate() {
            if self.in_degree(v) + self.out_degree(v) == 0 {
                continue;
            }
            let root = dsu.find(v);
            let g = *root_to_group.entry(root).or_insert_with(|| {
                groups.push(Vec::new());
                groups.len() - 1
            });
            groups[g].push(v);
            *slot = Some(g);
        }
        Components { groups, of_vertex }
    }

    pub fn summary(&self) -> GraphSummary {
        let components = self.weakly_connected_components();
        GraphSummary {
            family: self.label.clone(),
            overlap: self.overlap,
            word_length: self.word_len(),
            vertices: self.vertex_count(),
            edges: self.edge_count(),
            components: components.count(),
            component_sizes: components.sizes(),
            balanced: self.is_balanced(),
            imbalance: self.imbalance(),
        }
    }

    /// Graphviz rendering. Each weakly connected component is a cluster;
    /// vertices and edges appear in lexicographic order.
    pub fn to_dot(&self) -> String {
        let components = self.weakly_connected_components();
        let mut out = String::new();
        let _ = writeln!(out, "digraph \"{} s={}\" {{", self.label, self.overlap);
        for (c, group) in components.groups().iter().enumerate() {
            let _ = writeln!(out, "  subgraph cluster_{c} {{");
            for &v in group {
                let _ = writeln!(
                    out,
                    "    v{v} [label=\"{}\"];",
                    render_symbols(self.vertex(v))
                );
            }
            out.push_str("  }\n");
        }
        for v in 0..self.vertex_count() {
            for &e in self.out_edges(v) {
                let e = e as usize;
                let _ = writeln!(
                    out,
                    "  v{} -> v{} [label=\"{}\"];",
                    self.tail(e),
                    self.head(e),
                    render_symbols(self.edge_word(e))
                );
            }
        }
        out.push_str("}\n");
        out
    }
}

fn check_overlap(overlap: usize, word_len: usize) -> Result<(), GraphError> {
    let ok = if word_len == 1 {
        overlap == 0
    } else {
        overlap >= 1 && overlap < word_len
    };
    if ok {
        Ok(())
    } else {
        Err(GraphError::OverlapTooLarge { overlap, word_len })
    }
}

/// Weakly connected components as lists of vertex ids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Components {
    groups: Vec<Vec<usize>>,
    of_vertex: Vec<Option<usize>>,
}

impl Components {
    pub fn count(&self) -> usize {
        self.groups.len()
    }

    /// Groups ordered by their smallest vertex; each group is sorted.
    pub fn groups(&self) -> &[Vec<usize>] {
        &self.groups
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.groups.iter().map(Vec::len).collect()
    }

    pub fn component_of(&self, v: usize) -> Option<usize> {
        self.of_vertex[v]
    }
}

/// JSON summary printed by `inspect`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GraphSummary {
    pub family: String,
    pub overlap: usize,
    pub word_length: usize,
    pub vertices: usize,
    pub edges: usize,
    pub components: usize,
    pub component_sizes: Vec<usize>,
    pub balanced: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub imbalance: Option<Imbalance>,
}

/// Union-find with path halving and union by size.
#[derive(Debug, Clone)]
pub struct DisjointSets {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl DisjointSets {
    pub fn new(n: usize) -> Self {
        DisjointSets {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns false if `a` and `b` were already joined.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            return false;
        }
        if self.size[a] < self.size[b] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a;
        self.size[a] += self.size[b];
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn fam(d: &str) -> Family {
        d.parse().unwrap()
    }

    #[test]
    fn w3_ucycle_graph() {
        let g = TransitionGraph::build(&fam("wn:n=3"), 2).unwrap();
        assert_eq!(g.edge_count(), 13);
        let verts: Vec<Vec<Symbol>> = g.vertices().map(<[Symbol]>::to_vec).collect();
        // distinct length-2 prefixes of the 13 words, computed by hand
        let by_hand: BTreeSet<Vec<Symbol>> = fam("wn:n=3")
            .enumerate()
            .unwrap()
            .iter()
            .flat_map(|w| [w[..2].to_vec(), w[1..].to_vec()])
            .collect();
        assert_eq!(verts, by_hand.into_iter().collect::<Vec<_>>());
        assert_eq!(
            verts,
            vec![
                vec![0, 0],
                vec![0, 1],
                vec![0, 2],
                vec![1, 0],
                vec![1, 1],
                vec![1, 2],
                vec![2, 0],
                vec![2, 1]
            ]
        );
        assert!(g.is_balanced());
        assert_eq!(g.weakly_connected_components().count(), 1);
    }

    #[test]
    fn distinct_four_overlap_two_graph() {
        let g = TransitionGraph::build(&fam("ms:1,2,3,4"), 2).unwrap();
        assert_eq!(g.vertex_count(), 12);
        assert_eq!(g.edge_count(), 24);
        assert!(g.is_balanced());
        let comps = g.weakly_connected_components();
        assert_eq!(comps.sizes(), vec![4, 4, 4]);
        let named: Vec<BTreeSet<String>> = comps
            .groups()
            .iter()
            .map(|grp| {
                grp.iter()
                    .map(|&v| g.vertex(v).iter().map(|s| s.to_string()).collect())
                    .collect()
            })
            .collect();
        let expect: Vec<BTreeSet<String>> = [
            ["12", "21", "34", "43"],
            ["13", "31", "24", "42"],
            ["14", "41", "23", "32"],
        ]
        .iter()
        .map(|g| g.iter().map(|s| s.to_string()).collect())
        .collect();
        assert_eq!(named, expect);
    }

    #[test]
    fn de_bruijn_graph() {
        let g = TransitionGraph::build(&fam("bin:n=3"), 2).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (4, 8));
        assert!(g.is_balanced());
    }

    #[test]
    fn single_loop() {
        let g = TransitionGraph::build(&fam("wnh:n=4,h=0"), 3).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (1, 1));
        assert_eq!(g.tail(0), g.head(0));
        assert!(g.is_balanced());
        let g = TransitionGraph::build(&fam("wn:n=1"), 0).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (1, 1));
        assert!(g.vertex(0).is_empty());
        let dot = g.to_dot();
        assert_eq!(dot.matches("[label=").count(), 2);
    }

    #[test]
    fn permutations_split_into_cycles() {
        let g = TransitionGraph::build(&fam("wnh:n=3,h=2"), 2).unwrap();
        assert!(g.weakly_connected_components().count() > 1);
    }

    #[test]
    fn edges_follow_words() {
        let g = TransitionGraph::build(&fam("wn:n=4"), 2).unwrap();
        for e in 0..g.edge_count() {
            let w = g.edge_word(e);
            assert_eq!(g.vertex(g.tail(e)), &w[..2]);
            assert_eq!(g.vertex(g.head(e)), &w[2..]);
        }
        for v in 0..g.vertex_count() {
            let words: Vec<&[Symbol]> = g
                .out_edges(v)
                .iter()
                .map(|&e| g.edge_word(e as usize))
                .collect();
            assert!(words.windows(2).all(|p| p[0] < p[1]));
        }
    }

    #[test]
    fn overlap_bounds() {
        let f = fam("wn:n=3");
        assert!(matches!(
            TransitionGraph::build(&f, 0),
            Err(GraphError::OverlapTooLarge { .. })
        ));
        assert!(matches!(
            TransitionGraph::build(&f, 3),
            Err(GraphError::OverlapTooLarge { .. })
        ));
        assert!(TransitionGraph::build(&fam("wn:n=1"), 1).is_err());
    }

    #[test]
    fn vertices_are_all_windows() {
        // for full weak-order families the length-s vertices are every
        // length-s window of every weak order
        for n in 2..=5 {
            let f = Family::all_weak_orders(n).unwrap();
            let words = f.enumerate().unwrap();
            for s in 1..n {
                let g = TransitionGraph::build(&f, s).unwrap();
                let windows: BTreeSet<Vec<Symbol>> = words
                    .iter()
                    .flat_map(|w| (0..=n - s).map(move |i| w[i..i + s].to_vec()))
                    .collect();
                let verts: Vec<Vec<Symbol>> = g.vertices().map(<[Symbol]>::to_vec).collect();
                assert_eq!(verts, windows.into_iter().collect::<Vec<_>>());
            }
        }
    }

    #[test]
    fn unbalanced_graph_reports_witness() {
        let words = WordList::from_words(2, [[0, 1], [1, 1]]);
        let g = TransitionGraph::from_words("test", words, 1).unwrap();
        let bad = g.imbalance().unwrap();
        assert_eq!(bad.vertex, "0");
        assert_eq!((bad.in_degree, bad.out_degree), (0, 1));
    }

    #[test]
    fn dot_output() {
        let g = TransitionGraph::build(&fam("ms:1,2,3,4"), 2).unwrap();
        let dot = g.to_dot();
        assert_eq!(dot.matches("subgraph cluster_").count(), 3);
        assert_eq!(dot.matches(" -> ").count(), 24);
        assert!(dot.contains("[label=\"1 2\"]"));
        assert!(dot.contains("[label=\"1 2 3 4\"]"));
        assert_eq!(
            dot,
            TransitionGraph::build(&fam("ms:1,2,3,4"), 2)
                .unwrap()
                .to_dot()
        );

        let g = TransitionGraph::build(&fam("wn:n=3"), 2).unwrap();
        let dot = g.to_dot();
        assert_eq!(dot.matches(" -> ").count(), 13);
        assert_eq!(dot.lines().filter(|l| l.starts_with("    v")).count(), 8);
    }

    #[test]
    fn union_find() {
        let mut d = DisjointSets::new(5);
        assert!(d.union(0, 1));
        assert!(d.union(3, 4));
        assert!(!d.union(1, 0));
        assert_eq!(d.find(0), d.find(1));
        assert_ne!(d.find(0), d.find(3));
        assert_ne!(d.find(2), d.find(4));
    }
}
