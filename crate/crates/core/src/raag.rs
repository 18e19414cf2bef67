//! Right-angled Artin groups `A(Γ)`: generators are the vertices of a finite
//! simplicial graph and two generators commute exactly when joined by an edge.
//!
//! Normal form: the lexicographically least word (letter order = vertex
//! declaration order, `x` before `x⁻¹`) among the fully cancelled shuffle
//! representatives of an element.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::words::{Alphabet, Sym, Word};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "GraphJson", into = "GraphJson")]
pub struct SimpGraph {
    vertices: Alphabet,
    edges: BTreeSet<(usize, usize)>,
    adjacent: Vec<Vec<bool>>,
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    vertices: Vec<String>,
    edges: Vec<[String; 2]>,
}

impl TryFrom<GraphJson> for SimpGraph {
    type Error = Error;

    fn try_from(j: GraphJson) -> Result<SimpGraph> {
        let edges: Vec<(&str, &str)> = j.edges.iter().map(|[u, v]| (u.as_str(), v.as_str())).collect();
        SimpGraph::new(Alphabet::new(&j.vertices)?, &edges)
    }
}

impl From<SimpGraph> for GraphJson {
    fn from(g: SimpGraph) -> GraphJson {
        let names = g.vertices.names();
        GraphJson {
            vertices: names.iter().map(|n| n.to_string()).collect(),
            edges: g.edges.iter().map(|&(i, j)| [names[i].to_string(), names[j].to_string()]).collect(),
        }
    }
}

impl SimpGraph {
    pub fn new(vertices: Alphabet, edges: &[(&str, &str)]) -> Result<SimpGraph> {
        let n = vertices.len();
        let mut set = BTreeSet::new();
        for &(u, v) in edges {
            let i = vertices.index_of(u).ok_or_else(|| Error::UnknownVertex(u.into()))?;
            let j = vertices.index_of(v).ok_or_else(|| Error::UnknownVertex(v.into()))?;
            if i == j {
                return Err(Error::InvalidGraph(format!("loop at {u}")));
            }
            set.insert((i.min(j), i.max(j)));
        }
        let mut adjacent = vec![vec![false; n]; n];
        for &(i, j) in &set {
            adjacent[i][j] = true;
            adjacent[j][i] = true;
        }
        Ok(SimpGraph { vertices, edges: set, adjacent })
    }

    /// Path on `n` vertices named `a, b, c, …` (or `v1 … vn` beyond 26).
    pub fn path(n: usize) -> SimpGraph {
        let names: Vec<String> = if n <= 26 {
            (0..n).map(|i| ((b'a' + i as u8) as char).to_string()).collect()
        } else {
            (1..=n).map(|i| format!("v{i}")).collect()
        };
        let edges: Vec<(&str, &str)> = names.windows(2).map(|p| (p[0].as_str(), p[1].as_str())).collect();
        SimpGraph::new(Alphabet::new(&names).expect("valid names"), &edges).expect("valid path")
    }

    /// The path `a – b – c – d`.
    pub fn p4() -> SimpGraph {
        SimpGraph::path(4)
    }

    pub fn vertices(&self) -> &Alphabet {
        &self.vertices
    }

    pub fn edge_names(&self) -> Vec<(String, String)> {
        let names = self.vertices.names();
        self.edges.iter().map(|&(i, j)| (names[i].to_string(), names[j].to_string())).collect()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, u: &str, v: &str) -> bool {
        match (self.vertices.index_of(u), self.vertices.index_of(v)) {
            (Some(i), Some(j)) => self.adjacent[i][j],
            _ => false,
        }
    }

    /// Distinct adjacent generators, or the same generator.
    pub(crate) fn commute(&self, x: usize, y: usize) -> bool {
        x == y || self.adjacent[x][y]
    }

    pub(crate) fn index_set(&self, delta: &[&str]) -> Result<Vec<bool>> {
        let mut mask = vec![false; self.vertices.len()];
        for d in delta {
            let i = self.vertices.index_of(d).ok_or_else(|| Error::UnknownVertex(d.to_string()))?;
            mask[i] = true;
        }
        Ok(mask)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalForm<'g> {
    pub word: Word,
    pub graph: &'g SimpGraph,
}

impl NormalForm<'_> {
    pub fn is_identity(&self) -> bool {
        self.word.is_empty()
    }

    /// Names of the generators that occur.
    pub fn support(&self) -> BTreeSet<String> {
        self.word.letters().iter().map(|l| l.name.to_string()).collect()
    }
}

/// Deletes pairs `x … x⁻¹` whose intermediate letters all commute with `x`,
/// until none remain.
pub(crate) fn shuffle_cancel(g: &SimpGraph, w: &mut Vec<Sym>) {
    'outer: loop {
        for i in 0..w.len() {
            let x = w[i];
            for j in i + 1..w.len() {
                if w[j] == x.inverse() {
                    w.remove(j);
                    w.remove(i);
                    continue 'outer;
                }
                if !g.commute(x.gen(), w[j].gen()) {
                    break;
                }
            }
        }
        return;
    }
}

/// Normal form on encoded words.
pub(crate) fn normal_form_syms(g: &SimpGraph, w: &[Sym]) -> Vec<Sym> {
    let mut rest = w.to_vec();
    shuffle_cancel(g, &mut rest);
    let mut out = Vec::with_capacity(rest.len());
    while !rest.is_empty() {
        let mut best: Option<usize> = None;
        for i in 0..rest.len() {
            let movable = rest[..i].iter().all(|p| p.gen() != rest[i].gen() && g.commute(p.gen(), rest[i].gen()));
            if movable && best.is_none_or(|b| rest[i] < rest[b]) {
                best = Some(i);
            }
        }
        let i = best.expect("the first letter is always movable");
        out.push(rest.remove(i));
    }
    out
}

pub fn raag_normal_form<'g>(g: &'g SimpGraph, w: &Word) -> Result<NormalForm<'g>> {
    let syms = g.vertices.encode(w)?;
    Ok(NormalForm { word: g.vertices.decode(&normal_form_syms(g, &syms)), graph: g })
}

pub fn raag_equal(g: &SimpGraph, u: &Word, v: &Word) -> Result<bool> {
    Ok(raag_normal_form(g, u)?.word == raag_normal_form(g, v)?.word)
}

/// If `w` lies in the parabolic subgroup `A(Δ)`, returns its normal form,
/// which is then a word over `Δ`.
pub fn parabolic_membership(g: &SimpGraph, delta: &[&str], w: &Word) -> Result<Option<Word>> {
    let mask = g.index_set(delta)?;
    let syms = g.vertices.encode(w)?;
    Ok(parabolic_syms(g, &mask, &syms).map(|nf| g.vertices.decode(&nf)))
}

pub(crate) fn parabolic_syms(g: &SimpGraph, mask: &[bool], w: &[Sym]) -> Option<Vec<Sym>> {
    let nf = normal_form_syms(g, w);
    nf.iter().all(|s| mask[s.gen()]).then_some(nf)
}

/// Subgraph induced by `delta`, vertices kept in declaration order.
pub fn induced_subgraph(g: &SimpGraph, delta: &[&str]) -> Result<SimpGraph> {
    let mask = g.index_set(delta)?;
    let names: Vec<&str> =
        g.vertices.names().iter().enumerate().filter(|(i, _)| mask[*i]).map(|(_, n)| &**n).collect();
    let edges: Vec<(String, String)> = g
        .edge_names()
        .into_iter()
        .filter(|(u, v)| names.contains(&u.as_str()) && names.contains(&v.as_str()))
        .collect();
    let edges: Vec<(&str, &str)> = edges.iter().map(|(u, v)| (u.as_str(), v.as_str())).collect();
    SimpGraph::new(Alphabet::new(names)?, &edges)
}

pub type VertexMap = BTreeMap<String, String>;

/// True when `map` is defined on all of `from`, lands in `to`, and sends every
/// edge to an edge (or collapses it to one vertex).
pub fn sends_edges_to_edges(from: &SimpGraph, to: &SimpGraph, map: &VertexMap) -> bool {
    let total = from
        .vertices
        .names()
        .iter()
        .all(|n| map.get(&**n).is_some_and(|m| to.vertices.contains(m)));
    total
        && from.edge_names().iter().all(|(u, v)| {
            let (x, y) = (&map[u], &map[v]);
            x == y || to.has_edge(x, y)
        })
}

/// Letterwise image of `w` under a vertex map.
pub fn apply_vertex_map(map: &VertexMap, w: &Word) -> Result<Word> {
    w.letters()
        .iter()
        .map(|l| {
            map.get(&*l.name)
                .map(|m| crate::words::Letter { name: m.as_str().into(), sign: l.sign })
                .ok_or_else(|| Error::UnknownVertex(l.name.to_string()))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::w;

    #[test]
    fn normal_form_examples() {
        let p4 = SimpGraph::p4();
        assert_eq!(raag_normal_form(&p4, &w("ba")).unwrap().word, w("ab"));
        assert_eq!(raag_normal_form(&p4, &w("da")).unwrap().word, w("da"));
        assert_eq!(raag_normal_form(&p4, &w("abA")).unwrap().word, w("b"));
        assert!(matches!(raag_normal_form(&p4, &w("e")), Err(Error::UnknownVertex(_))));
    }

    #[test]
    fn equality_examples() {
        let p4 = SimpGraph::p4();
        assert!(raag_equal(&p4, &w("ab"), &w("ba")).unwrap());
        assert!(!raag_equal(&p4, &w("ad"), &w("da")).unwrap());
        assert!(raag_equal(&p4, &Word::empty(), &w("aA")).unwrap());
        // c commutes with b and d but not a
        assert!(raag_equal(&p4, &w("cbdC"), &w("bd")).unwrap());
        assert!(!raag_equal(&p4, &w("caC"), &w("a")).unwrap());
    }

    #[test]
    fn cancellation_through_commuting_letters() {
        let p4 = SimpGraph::p4();
        assert_eq!(raag_normal_form(&p4, &w("bcB")).unwrap().word, w("c"));
        assert_eq!(raag_normal_form(&p4, &w("bcdBD")).unwrap().word, w("bcdBD"));
        assert_eq!(raag_normal_form(&p4, &w("bcaB")).unwrap().word, w("ca"));
        assert_eq!(raag_normal_form(&p4, &w("bcdB")).unwrap().word, w("bcdB"));
    }

    #[test]
    fn parabolic_examples() {
        let p4 = SimpGraph::p4();
        let d1 = ["a", "b", "c"];
        assert_eq!(parabolic_membership(&p4, &d1, &w("ca")).unwrap(), Some(w("ca")));
        assert_eq!(parabolic_membership(&p4, &d1, &w("d")).unwrap(), None);
        assert_eq!(parabolic_membership(&p4, &d1, &w("dDa")).unwrap(), Some(w("a")));
        assert_eq!(parabolic_membership(&p4, &d1, &w("cbdCD")).unwrap(), Some(w("b")));
        let all = ["a", "b", "c", "d"];
        assert!(parabolic_membership(&p4, &all, &w("dcbaDC")).unwrap().is_some());
        assert_eq!(parabolic_membership(&p4, &[], &w("aA")).unwrap(), Some(Word::empty()));
        assert_eq!(parabolic_membership(&p4, &[], &w("a")).unwrap(), None);
    }

    #[test]
    fn induced_examples() {
        let p4 = SimpGraph::p4();
        let d1 = induced_subgraph(&p4, &["a", "b", "c"]).unwrap();
        assert_eq!(d1, SimpGraph::path(3));
        let d2 = induced_subgraph(&p4, &["b", "c", "d"]).unwrap();
        assert_eq!(d2.edge_names(), vec![("b".into(), "c".into()), ("c".into(), "d".into())]);
        let ad = induced_subgraph(&p4, &["a", "d"]).unwrap();
        assert_eq!(ad.edge_count(), 0);
        assert_eq!(ad.vertices().len(), 2);
        assert!(induced_subgraph(&p4, &["q"]).is_err());
    }

    #[test]
    fn graph_json() {
        let p4 = SimpGraph::p4();
        let s = serde_json::to_string(&p4).unwrap();
        assert_eq!(s, r#"{"vertices":["a","b","c","d"],"edges":[["a","b"],["b","c"],["c","d"]]}"#);
        let back: SimpGraph = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p4);
        assert!(serde_json::from_str::<SimpGraph>(r#"{"vertices":["a"],"edges":[["a","a"]]}"#).is_err());
    }

    #[test]
    fn shift_map_is_a_homomorphism() {
        let p4 = SimpGraph::p4();
        let d1 = induced_subgraph(&p4, &["a", "b", "c"]).unwrap();
        let psi: VertexMap = [("a", "b"), ("b", "c"), ("c", "d")].iter().map(|(x, y)| (x.to_string(), y.to_string())).collect();
        assert!(sends_edges_to_edges(&d1, &p4, &psi));
        let bad: VertexMap = [("a", "a"), ("b", "c"), ("c", "b")].iter().map(|(x, y)| (x.to_string(), y.to_string())).collect();
        assert!(!sends_edges_to_edges(&d1, &p4, &bad));
        for (u, v) in [("ab", "ba"), ("abcBA", "c"), ("acbCA", "b"), ("ca", "ac")] {
            let (u, v) = (w(u), w(v));
            assert_eq!(
                raag_equal(&d1, &u, &v).unwrap(),
                raag_equal(&p4, &apply_vertex_map(&psi, &u).unwrap(), &apply_vertex_map(&psi, &v).unwrap()).unwrap()
            );
        }
    }
}
