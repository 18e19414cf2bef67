//! Independent reference deciders used to label test data: the bicyclic
//! monoid's normal form, and brute-force word equivalence in a RAAG.

use crate::error::{Error, Result};
use crate::raag::SimpGraph;
use crate::words::{Letter, Sign, Sym, Word};

/// `(m, n)` with `w = (a⁻¹)^m aⁿ` in `Inv⟨a | aa⁻¹ = 1⟩`.
pub fn bicyclic_normal_form(w: &Word) -> Result<(usize, usize)> {
    let (mut m, mut n) = (0usize, 0usize);
    for l in w.letters() {
        if &*l.name != "a" {
            return Err(Error::UnknownVertex(l.name.to_string()));
        }
        match l.sign {
            Sign::Pos => n += 1,
            Sign::Neg if n > 0 => n -= 1,
            Sign::Neg => m += 1,
        }
    }
    Ok((m, n))
}

pub fn bicyclic_equal(u: &Word, v: &Word) -> Result<bool> {
    Ok(bicyclic_normal_form(u)? == bicyclic_normal_form(v)?)
}

/// `(a⁻¹)^m aⁿ`.
pub fn bicyclic_word(m: usize, n: usize) -> Word {
    std::iter::repeat_n(Letter::neg("a"), m).chain(std::iter::repeat_n(Letter::pos("a"), n)).collect()
}

/// Largest word table [`RaagBfsOracle`] will build.
pub const RAAG_TABLE_GUARD: u64 = 60_000_000;

/// Connected components of the graph on all words of length at most
/// `horizon` whose edges are adjacent commutations of adjacent generators and
/// deletions of adjacent `xx⁻¹` factors. Two words in one component are equal
/// in `A(Γ)`; with enough headroom the converse holds for short words.
#[derive(Debug, Clone)]
pub struct RaagBfsOracle {
    graph: SimpGraph,
    nsym: u64,
    horizon: usize,
    offsets: Vec<u64>,
    parent: Vec<u32>,
}

impl RaagBfsOracle {
    pub fn new(graph: &SimpGraph, horizon: usize) -> Result<RaagBfsOracle> {
        let nsym = graph.vertices().sym_count() as u64;
        let mut offsets = vec![0u64];
        let mut size = 0u64;
        for len in 0..=horizon {
            size = size
                .checked_add(nsym.checked_pow(len as u32).unwrap_or(u64::MAX))
                .filter(|&s| s <= RAAG_TABLE_GUARD)
                .ok_or_else(|| Error::BudgetExceeded(format!("more than {RAAG_TABLE_GUARD} words up to length {horizon}")))?;
            offsets.push(size);
        }
        let mut o = RaagBfsOracle { graph: graph.clone(), nsym, horizon, offsets, parent: (0..size as u32).collect() };
        o.build();
        Ok(o)
    }

    pub fn horizon(&self) -> usize {
        self.horizon
    }

    pub fn word_count(&self) -> usize {
        self.parent.len()
    }

    fn code(&self, digits: &[u32]) -> usize {
        let v = digits.iter().fold(0u64, |acc, &d| acc * self.nsym + d as u64);
        (self.offsets[digits.len()] + v) as usize
    }

    fn build(&mut self) {
        let mut digits = Vec::with_capacity(self.horizon);
        for len in 1..=self.horizon {
            let count = self.nsym.pow(len as u32);
            digits.resize(len, 0);
            digits.iter_mut().for_each(|d| *d = 0);
            for _ in 0..count {
                let me = self.code(&digits);
                for i in 0..len - 1 {
                    let (x, y) = (Sym(digits[i]), Sym(digits[i + 1]));
                    if x.gen() != y.gen() && self.graph.commute(x.gen(), y.gen()) {
                        digits.swap(i, i + 1);
                        let other = self.code(&digits);
                        digits.swap(i, i + 1);
                        self.union(me, other);
                    } else if y == x.inverse() {
                        let mut shorter = digits[..i].to_vec();
                        shorter.extend_from_slice(&digits[i + 2..]);
                        let other = self.code(&shorter);
                        self.union(me, other);
                    }
                }
                // next word in base-nsym counting order
                for d in digits.iter_mut().rev() {
                    *d += 1;
                    if (*d as u64) < self.nsym {
                        break;
                    }
                    *d = 0;
                }
            }
        }
        for i in 0..self.parent.len() {
            let r = self.find(i);
            self.parent[i] = r as u32;
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] as usize != x {
            let p = self.parent[x] as usize;
            self.parent[x] = self.parent[p];
            x = p;
        }
        x
    }

    fn union(&mut self, x: usize, y: usize) {
        let (rx, ry) = (self.find(x), self.find(y));
        if rx != ry {
            let (lo, hi) = (rx.min(ry), rx.max(ry));
            self.parent[hi] = lo as u32;
        }
    }

    /// Component label of an encoded word, when it fits the horizon.
    pub fn class_syms(&self, w: &[Sym]) -> Option<u32> {
        if w.len() > self.horizon {
            return None;
        }
        let digits: Vec<u32> = w.iter().map(|s| s.0).collect();
        Some(self.parent[self.code(&digits)])
    }

    pub fn class(&self, w: &Word) -> Result<Option<u32>> {
        Ok(self.class_syms(&self.graph.vertices().encode(w)?))
    }

    /// `None` when a word is longer than the horizon.
    pub fn equal(&self, u: &Word, v: &Word) -> Result<Option<bool>> {
        Ok(match (self.class(u)?, self.class(v)?) {
            (Some(x), Some(y)) => Some(x == y),
            _ => None,
        })
    }
}
