//! Word problem of the free inverse monoid via Munn trees, plus a brute-force
//! closure under the Vagner generating pairs used to cross-check it.

use std::collections::{HashMap, HashSet, VecDeque};

use crate::error::{Error, Result};
use crate::graph::{Folder, WordGraph};
use crate::words::{inverse_syms, Alphabet, Sym, Word};

/// Largest closure [`vagner_oracle`] will explore.
pub const VAGNER_GUARD: usize = 1_000_000;

/// A folded, canonically numbered Munn tree.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MunnTree(WordGraph);

impl MunnTree {
    pub fn graph(&self) -> &WordGraph {
        &self.0
    }

    pub fn into_graph(self) -> WordGraph {
        self.0
    }
}

/// Munn tree of `w` over the sorted alphabet of letters occurring in `w`.
pub fn munn_tree(w: &Word) -> MunnTree {
    munn_tree_in(&Alphabet::spanning([w]), w).expect("alphabet spans the word")
}

pub fn munn_tree_in(alphabet: &Alphabet, w: &Word) -> Result<MunnTree> {
    let syms = alphabet.encode(w)?;
    let mut f = Folder::new(alphabet.sym_count());
    let start = f.new_vertex();
    let mut cur = start;
    for &s in &syms {
        cur = match f.target(cur, s) {
            Some(t) => t,
            None => {
                let t = f.new_vertex();
                f.add_edge(cur, s, t);
                t
            }
        };
    }
    Ok(MunnTree(f.snapshot(alphabet, start, cur)))
}

/// `[u] = [v]` in the free inverse monoid.
pub fn fim_equal(u: &Word, v: &Word) -> bool {
    let a = Alphabet::spanning([u, v]);
    munn_tree_in(&a, u).expect("spanning") == munn_tree_in(&a, v).expect("spanning")
}

/// `[u] ≤ [v]` in the natural partial order: the tree of `v` maps into the
/// tree of `u` fixing both roots. Since the tree of `v` is spanned by the
/// path of `v`, that happens exactly when `v` is readable start to end in
/// the tree of `u`.
pub fn fim_leq(u: &Word, v: &Word) -> bool {
    let a = Alphabet::spanning([u, v]);
    munn_tree_in(&a, u).expect("spanning").0.accepts(v)
}

fn is_factor(x: &[Sym], at: usize, w: &[Sym]) -> bool {
    x.len() >= at + w.len() && &x[at..at + w.len()] == w
}

fn is_inverse_factor(x: &[Sym], at: usize, w: &[Sym]) -> bool {
    x.len() >= at + w.len() && w.iter().rev().zip(&x[at..at + w.len()]).all(|(a, b)| a.inverse() == *b)
}

/// One-step rewrites of `x` by a Vagner generating pair, either direction,
/// keeping length at most `radius`.
fn vagner_neighbors(x: &[Sym], radius: usize, out: &mut Vec<Vec<Sym>>) {
    let n = x.len();
    for i in 0..n {
        for l in 1..=n - i {
            let w = &x[i..i + l];
            // w w⁻¹ w -> w
            if i + 3 * l <= n && is_inverse_factor(x, i + l, w) && is_factor(x, i + 2 * l, w) {
                let mut y = x[..i + l].to_vec();
                y.extend_from_slice(&x[i + 3 * l..]);
                out.push(y);
            }
            // w -> w w⁻¹ w
            if n + 2 * l <= radius {
                let mut y = x[..i + l].to_vec();
                y.extend(inverse_syms(w));
                y.extend_from_slice(w);
                y.extend_from_slice(&x[i + l..]);
                out.push(y);
            }
            // w w⁻¹ u u⁻¹ -> u u⁻¹ w w⁻¹ (the pair is symmetric)
            if i + 2 * l < n && is_inverse_factor(x, i + l, w) {
                let j = i + 2 * l;
                for m in 1..=(n - j) / 2 {
                    let u = &x[j..j + m];
                    if is_inverse_factor(x, j + m, u) {
                        let mut y = x[..i].to_vec();
                        y.extend_from_slice(&x[j..j + 2 * m]);
                        y.extend_from_slice(&x[i..j]);
                        y.extend_from_slice(&x[j + 2 * m..]);
                        out.push(y);
                    }
                }
            }
        }
    }
}

fn vagner_closure(start: &[Sym], radius: usize) -> Result<HashSet<Vec<Sym>>> {
    let mut seen = HashSet::new();
    seen.insert(start.to_vec());
    if start.len() > radius {
        return Ok(seen);
    }
    let mut queue = VecDeque::from([start.to_vec()]);
    let mut buf = Vec::new();
    while let Some(x) = queue.pop_front() {
        buf.clear();
        vagner_neighbors(&x, radius, &mut buf);
        for y in buf.drain(..) {
            if !seen.contains(&y) {
                if seen.len() >= VAGNER_GUARD {
                    return Err(Error::BudgetExceeded(format!(
                        "Vagner closure exceeded {VAGNER_GUARD} words"
                    )));
                }
                seen.insert(y.clone());
                queue.push_back(y);
            }
        }
    }
    Ok(seen)
}

/// True iff `v` is reachable from `u` by rewriting factors with the Vagner
/// pairs `(ww⁻¹w, w)` and `(ww⁻¹uu⁻¹, uu⁻¹ww⁻¹)`, never passing through a word
/// longer than `radius`. Sound always; complete once the radius is large
/// enough.
pub fn vagner_oracle(u: &Word, v: &Word, radius: usize) -> Result<bool> {
    if u == v {
        return Ok(true);
    }
    let a = Alphabet::spanning([u, v]);
    let us = a.encode(u)?;
    let vs = a.encode(v)?;
    Ok(vagner_closure(&us, radius)?.contains(&vs))
}

/// Batch form of [`vagner_oracle`] that memoizes closures. A closure at a
/// given radius is an equivalence class, so each class is computed once.
#[derive(Debug)]
pub struct VagnerOracle {
    alphabet: Alphabet,
    class_of: HashMap<(usize, Vec<Sym>), usize>,
    classes: usize,
}

impl VagnerOracle {
    pub fn new(alphabet: Alphabet) -> VagnerOracle {
        VagnerOracle { alphabet, class_of: HashMap::new(), classes: 0 }
    }

    pub fn equivalent(&mut self, u: &Word, v: &Word, radius: usize) -> Result<bool> {
        let us = self.alphabet.encode(u)?;
        let vs = self.alphabet.encode(v)?;
        let cu = self.class(&us, radius)?;
        Ok(self.class_of.get(&(radius, vs)) == Some(&cu))
    }

    fn class(&mut self, x: &[Sym], radius: usize) -> Result<usize> {
        if let Some(&c) = self.class_of.get(&(radius, x.to_vec())) {
            return Ok(c);
        }
        let id = self.classes;
        self.classes += 1;
        for y in vagner_closure(x, radius)? {
            self.class_of.insert((radius, y), id);
        }
        Ok(id)
    }
}
