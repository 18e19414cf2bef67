//! Birooted involutive word graphs and folding.
//!
//! Edges are stored with their positive label only; reading `a⁻¹` along an
//! edge `x -a-> y` goes from `y` to `x`. Folding is done by [`Folder`], a
//! union-find over vertices with one transition slot per signed symbol.

use std::collections::VecDeque;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::words::{Alphabet, Letter, Sign, Sym, Word};
use crate::error::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Edge {
    pub source: usize,
    /// Generator index into the graph's alphabet.
    pub label: usize,
    pub target: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WordGraph {
    alphabet: Alphabet,
    vertex_count: usize,
    edges: Vec<Edge>,
    start: usize,
    end: usize,
}

impl WordGraph {
    /// Unfolded path graph reading `word` from vertex 0 to vertex `|word|`.
    pub fn linear(alphabet: &Alphabet, word: &Word) -> Result<WordGraph> {
        let syms = alphabet.encode(word)?;
        let edges = syms
            .iter()
            .enumerate()
            .map(|(i, s)| {
                if s.is_inverse() {
                    Edge { source: i + 1, label: s.gen(), target: i }
                } else {
                    Edge { source: i, label: s.gen(), target: i + 1 }
                }
            })
            .collect();
        Ok(WordGraph {
            alphabet: alphabet.clone(),
            vertex_count: syms.len() + 1,
            edges,
            start: 0,
            end: syms.len(),
        })
    }

    pub fn from_parts(
        alphabet: Alphabet,
        vertex_count: usize,
        edges: Vec<Edge>,
        start: usize,
        end: usize,
    ) -> WordGraph {
        WordGraph { alphabet, vertex_count, edges, start, end }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn labeled_edges(&self) -> impl Iterator<Item = (usize, Letter, usize)> + '_ {
        self.edges.iter().map(|e| {
            (e.source, Letter { name: self.alphabet.names()[e.label].clone(), sign: Sign::Pos }, e.target)
        })
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn end(&self) -> usize {
        self.end
    }

    pub fn is_deterministic(&self) -> bool {
        let n = self.alphabet.sym_count();
        let mut slots = vec![false; self.vertex_count * n];
        for e in &self.edges {
            let fwd = e.source * n + 2 * e.label;
            let bwd = e.target * n + 2 * e.label + 1;
            if slots[fwd] || slots[bwd] {
                return false;
            }
            slots[fwd] = true;
            slots[bwd] = true;
        }
        true
    }

    /// Underlying undirected graph is a tree (connected, |E| = |V| - 1).
    pub fn is_tree(&self) -> bool {
        self.edges.len() + 1 == self.vertex_count && self.is_connected()
    }

    pub fn is_connected(&self) -> bool {
        let mut adj = vec![Vec::new(); self.vertex_count];
        for e in &self.edges {
            adj[e.source].push(e.target);
            adj[e.target].push(e.source);
        }
        let mut seen = vec![false; self.vertex_count];
        let mut stack = vec![self.start];
        seen[self.start] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &u in &adj[v] {
                if !seen[u] {
                    seen[u] = true;
                    count += 1;
                    stack.push(u);
                }
            }
        }
        count == self.vertex_count
    }

    /// Follows `word` from `from` in a deterministic graph.
    pub fn walk(&self, from: usize, word: &Word) -> Option<usize> {
        let syms = self.alphabet.encode(word).ok()?;
        let table = self.transitions();
        let n = self.alphabet.sym_count();
        let mut v = from;
        for s in syms {
            v = table[v * n + s.index()]?;
        }
        Some(v)
    }

    /// True when `word` labels a path from start to end.
    pub fn accepts(&self, word: &Word) -> bool {
        self.walk(self.start, word) == Some(self.end)
    }

    fn transitions(&self) -> Vec<Option<usize>> {
        let n = self.alphabet.sym_count();
        let mut t = vec![None; self.vertex_count * n];
        for e in &self.edges {
            t[e.source * n + 2 * e.label] = Some(e.target);
            t[e.target * n + 2 * e.label + 1] = Some(e.source);
        }
        t
    }

    /// DOT rendering: start vertex double circle, end vertex shaded.
    pub fn to_dot(&self, name: &str) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "digraph \"{name}\" {{");
        out.push_str("  rankdir=LR;\n  node [shape=circle];\n");
        for v in 0..self.vertex_count {
            let mut attrs = Vec::new();
            if v == self.start {
                attrs.push("shape=doublecircle");
            }
            if v == self.end {
                attrs.push("style=filled");
                attrs.push("fillcolor=gray");
            }
            if attrs.is_empty() {
                let _ = writeln!(out, "  {v};");
            } else {
                let _ = writeln!(out, "  {v} [{}];", attrs.join(", "));
            }
        }
        for e in &self.edges {
            let _ = writeln!(
                out,
                "  {} -> {} [label=\"{}\"];",
                e.source,
                e.target,
                self.alphabet.names()[e.label]
            );
        }
        out.push_str("}\n");
        out
    }
}

const NONE: u32 = u32::MAX;

/// Incremental folding engine.
///
/// Invariant after every public call: for each live vertex and each signed
/// symbol there is at most one transition (up to `find`).
#[derive(Debug, Clone)]
pub(crate) struct Folder {
    nsym: usize,
    parent: Vec<u32>,
    trans: Vec<u32>,
    live: usize,
    pending: Vec<(u32, u32)>,
}

impl Folder {
    pub(crate) fn new(nsym: usize) -> Folder {
        Folder { nsym, parent: Vec::new(), trans: Vec::new(), live: 0, pending: Vec::new() }
    }

    pub(crate) fn from_graph(g: &WordGraph) -> Folder {
        let mut f = Folder::new(g.alphabet.sym_count());
        for _ in 0..g.vertex_count {
            f.new_vertex();
        }
        for e in &g.edges {
            f.add_edge(e.source as u32, Sym(2 * e.label as u32), e.target as u32);
        }
        f
    }

    pub(crate) fn live(&self) -> usize {
        self.live
    }

    pub(crate) fn new_vertex(&mut self) -> u32 {
        let id = self.parent.len() as u32;
        self.parent.push(id);
        self.trans.extend(std::iter::repeat_n(NONE, self.nsym));
        self.live += 1;
        id
    }

    pub(crate) fn find(&mut self, mut v: u32) -> u32 {
        let mut root = v;
        while self.parent[root as usize] != root {
            root = self.parent[root as usize];
        }
        while self.parent[v as usize] != root {
            let next = self.parent[v as usize];
            self.parent[v as usize] = root;
            v = next;
        }
        root
    }

    fn slot(&self, v: u32, s: Sym) -> usize {
        v as usize * self.nsym + s.index()
    }

    pub(crate) fn target(&mut self, v: u32, s: Sym) -> Option<u32> {
        let v = self.find(v);
        let t = self.trans[self.slot(v, s)];
        if t == NONE {
            None
        } else {
            Some(self.find(t))
        }
    }

    pub(crate) fn walk(&mut self, from: u32, word: &[Sym]) -> Option<u32> {
        let mut v = from;
        for &s in word {
            v = self.target(v, s)?;
        }
        Some(self.find(v))
    }

    /// Adds `x -s-> y` (and the reverse `y -s⁻¹-> x`) and folds.
    pub(crate) fn add_edge(&mut self, x: u32, s: Sym, y: u32) {
        self.link(x, s, y);
        self.drain();
    }

    fn link(&mut self, x: u32, s: Sym, y: u32) {
        let x = self.find(x);
        let y = self.find(y);
        let fwd = self.slot(x, s);
        match self.trans[fwd] {
            NONE => self.trans[fwd] = y,
            z => self.pending.push((z, y)),
        }
        let bwd = self.slot(y, s.inverse());
        match self.trans[bwd] {
            NONE => self.trans[bwd] = x,
            z => self.pending.push((z, x)),
        }
    }

    pub(crate) fn identify(&mut self, x: u32, y: u32) {
        self.pending.push((x, y));
        self.drain();
    }

    fn drain(&mut self) {
        while let Some((a, b)) = self.pending.pop() {
            let a = self.find(a);
            let b = self.find(b);
            if a == b {
                continue;
            }
            let (keep, gone) = if a < b { (a, b) } else { (b, a) };
            self.parent[gone as usize] = keep;
            self.live -= 1;
            for s in 0..self.nsym {
                let g = self.trans[gone as usize * self.nsym + s];
                if g == NONE {
                    continue;
                }
                let k = &mut self.trans[keep as usize * self.nsym + s];
                if *k == NONE {
                    *k = g;
                } else {
                    self.pending.push((*k, g));
                }
            }
        }
    }

    /// Sews a fresh path labeled `word` from `x` to `y`, then folds.
    pub(crate) fn sew(&mut self, x: u32, word: &[Sym], y: u32) {
        if word.is_empty() {
            self.identify(x, y);
            return;
        }
        let mut cur = x;
        for (i, &s) in word.iter().enumerate() {
            let next = if i + 1 == word.len() { y } else { self.new_vertex() };
            self.link(cur, s, next);
            cur = next;
        }
        self.drain();
    }

    /// Live vertices reachable from `start`, in canonical breadth-first order.
    pub(crate) fn canonical_order(&mut self, start: u32) -> Vec<u32> {
        let start = self.find(start);
        let mut index = std::collections::HashMap::new();
        let mut order = vec![start];
        index.insert(start, 0usize);
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            for s in 0..self.nsym {
                if let Some(t) = self.target(v, Sym(s as u32)) {
                    if let std::collections::hash_map::Entry::Vacant(e) = index.entry(t) {
                        e.insert(order.len());
                        order.push(t);
                        queue.push_back(t);
                    }
                }
            }
        }
        order
    }

    /// Canonical renumbering (BFS from `start`, neighbors by symbol order).
    pub(crate) fn snapshot(&mut self, alphabet: &Alphabet, start: u32, end: u32) -> WordGraph {
        let order = self.canonical_order(start);
        let mut id = std::collections::HashMap::with_capacity(order.len());
        for (i, &v) in order.iter().enumerate() {
            id.insert(v, i);
        }
        let mut edges = Vec::new();
        for (i, &v) in order.iter().enumerate() {
            for g in 0..self.nsym / 2 {
                if let Some(t) = self.target(v, Sym(2 * g as u32)) {
                    edges.push(Edge { source: i, label: g, target: id[&t] });
                }
            }
        }
        edges.sort();
        let end = self.find(end);
        WordGraph {
            alphabet: alphabet.clone(),
            vertex_count: order.len(),
            edges,
            start: 0,
            end: id[&end],
        }
    }
}

/// Quotient of `g` in which no vertex has two out-edges with the same signed
/// label; result is canonically numbered.
pub fn fold(g: &WordGraph) -> WordGraph {
    let order: Vec<usize> = (0..g.edges.len()).collect();
    fold_in_order(g, &order)
}

fn fold_in_order(g: &WordGraph, order: &[usize]) -> WordGraph {
    let mut f = Folder::new(g.alphabet.sym_count());
    for _ in 0..g.vertex_count {
        f.new_vertex();
    }
    for &i in order {
        let e = g.edges[i];
        f.add_edge(e.source as u32, Sym(2 * e.label as u32), e.target as u32);
    }
    f.snapshot(&g.alphabet, g.start as u32, g.end as u32)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::w;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;

    fn abc() -> Alphabet {
        Alphabet::new(["a", "b", "z"]).unwrap()
    }

    #[test]
    fn fold_out_and_back() {
        let g = fold(&WordGraph::linear(&abc(), &w("aA")).unwrap());
        assert_eq!(g.vertex_count(), 2);
        assert_eq!(g.edge_count(), 1);
        assert_eq!(g.start(), g.end());
    }

    #[test]
    fn fold_fixpoint() {
        let g = fold(&WordGraph::linear(&abc(), &w("abz")).unwrap());
        assert_eq!(fold(&g), g);
    }

    #[test]
    fn fold_a_a_inverse_squared_is_path() {
        let g = fold(&WordGraph::linear(&abc(), &w("aaAA")).unwrap());
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.edge_count(), 2);
        assert!(g.is_tree());
        assert_eq!(g.start(), g.end());
    }

    #[test]
    fn fold_cycle_collapses_loops() {
        // x -a-> y, x -a-> x forces y = x and a single loop remains
        let g = WordGraph::from_parts(
            abc(),
            2,
            vec![Edge { source: 0, label: 0, target: 1 }, Edge { source: 0, label: 0, target: 0 }],
            0,
            1,
        );
        let f = fold(&g);
        assert_eq!(f.vertex_count(), 1);
        assert_eq!(f.edges(), &[Edge { source: 0, label: 0, target: 0 }]);
        assert!(f.accepts(&w("aaA")));
    }

    #[test]
    fn fold_confluence_random_orders() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let words = ["abAzBaZa", "aaAAbbBzZa", "abABabAB", "zazAZAazZ"];
        for s in words {
            // glue the path to its own reverse to get nontrivial cycles
            let base = WordGraph::linear(&abc(), &w(s)).unwrap();
            let mut edges = base.edges().to_vec();
            let n = base.vertex_count();
            edges.push(Edge { source: n - 1, label: 0, target: 0 });
            let g = WordGraph::from_parts(abc(), n, edges, 0, n / 2);
            let reference = fold(&g);
            for _ in 0..20 {
                let mut order: Vec<usize> = (0..g.edges().len()).collect();
                order.shuffle(&mut rng);
                assert_eq!(fold_in_order(&g, &order), reference);
            }
        }
    }

    #[test]
    fn dot_marks_roots() {
        let g = fold(&WordGraph::linear(&abc(), &w("aAz")).unwrap());
        let dot = g.to_dot("m");
        assert!(dot.contains("0 [shape=doublecircle]"));
        assert!(dot.contains(&format!("{} [style=filled, fillcolor=gray]", g.end())));
        assert!(dot.contains("0 -> 1 [label=\"a\"]"));
    }
}
