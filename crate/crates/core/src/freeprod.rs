//! Free products `H ∗ FG(t)` in reduced-sequence normal form, bounded
//! submonoid membership, and executable checks of the free-product facts
//! the membership reduction relies on.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt::{self, Debug};
use std::hash::Hash;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::words::{reduce_syms, Alphabet, Sym};

/// Largest set of elements a bounded search may hold.
pub const SEARCH_GUARD: usize = 1_000_000;

/// Behavioral interface to a group `H`.
pub trait GroupOracle {
    type Elem: Clone + Eq + Hash + Ord + Debug;

    fn identity(&self) -> Self::Elem;
    fn multiply(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    fn invert(&self, x: &Self::Elem) -> Self::Elem;

    fn is_identity(&self, x: &Self::Elem) -> bool {
        *x == self.identity()
    }

    /// All elements, when the group is finite.
    fn elements(&self) -> Option<Vec<Self::Elem>>;

    fn describe(&self, x: &Self::Elem) -> String;
}

/// Finite group given by its multiplication table; element `0` is the identity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "TableJson", into = "TableJson")]
pub struct FiniteGroup {
    table: Vec<Vec<usize>>,
    names: Vec<String>,
    inverses: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct TableJson {
    order: usize,
    table: Vec<Vec<usize>>,
    #[serde(default)]
    names: Vec<String>,
}

impl TryFrom<TableJson> for FiniteGroup {
    type Error = Error;

    fn try_from(j: TableJson) -> Result<FiniteGroup> {
        if j.table.len() != j.order {
            return Err(Error::InvalidTable(format!("order {} but {} rows", j.order, j.table.len())));
        }
        FiniteGroup::new(j.table, if j.names.is_empty() { None } else { Some(j.names) })
    }
}

impl From<FiniteGroup> for TableJson {
    fn from(g: FiniteGroup) -> TableJson {
        TableJson { order: g.table.len(), table: g.table, names: g.names }
    }
}

impl FiniteGroup {
    /// Validates the table: identity at id 0, Latin square, associativity.
    pub fn new(table: Vec<Vec<usize>>, names: Option<Vec<String>>) -> Result<FiniteGroup> {
        let n = table.len();
        if n == 0 {
            return Err(Error::InvalidTable("empty table".into()));
        }
        for (i, row) in table.iter().enumerate() {
            if row.len() != n || row.iter().any(|&x| x >= n) {
                return Err(Error::InvalidTable(format!("row {i} is not a row of ids below {n}")));
            }
            let distinct: BTreeSet<_> = row.iter().collect();
            if distinct.len() != n {
                return Err(Error::InvalidTable(format!("row {i} repeats an element")));
            }
        }
        for (i, row) in table.iter().enumerate() {
            if table[0][i] != i || row[0] != i {
                return Err(Error::InvalidTable("element 0 must be the identity".into()));
            }
        }
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    if table[table[x][y]][z] != table[x][table[y][z]] {
                        return Err(Error::InvalidTable(format!("not associative at ({x},{y},{z})")));
                    }
                }
            }
        }
        let names = names.unwrap_or_else(|| (0..n).map(|i| if i == 0 { "1".into() } else { format!("h{i}") }).collect());
        if names.len() != n {
            return Err(Error::InvalidTable(format!("{} names for order {n}", names.len())));
        }
        let inverses = (0..n).map(|x| (0..n).find(|&y| table[x][y] == 0).expect("Latin square")).collect();
        Ok(FiniteGroup { table, names, inverses })
    }

    /// `Z/n` with elements `1, g, g2, …`.
    pub fn cyclic(n: usize) -> FiniteGroup {
        let table = (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect();
        let names = (0..n)
            .map(|i| match i {
                0 => "1".to_string(),
                1 => "g".to_string(),
                k => format!("g{k}"),
            })
            .collect();
        FiniteGroup::new(table, Some(names)).expect("cyclic table")
    }

    /// Symmetric group on three points; composition `(xy)(i) = x(y(i))`.
    pub fn symmetric3() -> FiniteGroup {
        let perms: [[usize; 3]; 6] = [[0, 1, 2], [1, 0, 2], [0, 2, 1], [2, 1, 0], [1, 2, 0], [2, 0, 1]];
        let names = ["1", "s12", "s23", "s13", "r", "r2"].map(String::from).to_vec();
        let index = |p: [usize; 3]| perms.iter().position(|q| *q == p).expect("closed");
        let table = perms
            .iter()
            .map(|x| perms.iter().map(|y| index([x[y[0]], x[y[1]], x[y[2]]])).collect())
            .collect();
        FiniteGroup::new(table, Some(names)).expect("S3 table")
    }

    /// CSV rows of ids; an optional first row of names.
    pub fn from_csv(text: &str) -> Result<FiniteGroup> {
        let mut rdr = csv::ReaderBuilder::new().has_headers(false).trim(csv::Trim::All).from_reader(text.as_bytes());
        let mut rows: Vec<Vec<String>> = Vec::new();
        for rec in rdr.records() {
            let rec = rec.map_err(|e| Error::Parse(e.to_string()))?;
            rows.push(rec.iter().map(String::from).collect());
        }
        let mut names = None;
        if rows.first().is_some_and(|r| r.iter().any(|c| c.parse::<usize>().is_err())) {
            names = Some(rows.remove(0));
        }
        let table = rows
            .iter()
            .map(|r| r.iter().map(|c| c.parse::<usize>().map_err(|e| Error::Parse(format!("{c:?}: {e}")))).collect())
            .collect::<Result<Vec<Vec<usize>>>>()?;
        FiniteGroup::new(table, names)
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn element(&self, name: &str) -> Result<usize> {
        self.names.iter().position(|n| n == name).ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }

    /// Submonoid generated by `gens`, with the length of a shortest factorization.
    pub fn submonoid_closure(&self, gens: &[usize]) -> HashMap<usize, usize> {
        let mut depth = HashMap::from([(0usize, 0usize)]);
        let mut frontier = vec![0usize];
        let mut d = 0;
        while !frontier.is_empty() {
            d += 1;
            let mut next = Vec::new();
            for &x in &frontier {
                for &g in gens {
                    let y = self.table[x][g];
                    if let std::collections::hash_map::Entry::Vacant(e) = depth.entry(y) {
                        e.insert(d);
                        next.push(y);
                    }
                }
            }
            frontier = next;
        }
        depth
    }
}

impl GroupOracle for FiniteGroup {
    type Elem = usize;

    fn identity(&self) -> usize {
        0
    }

    fn multiply(&self, x: &usize, y: &usize) -> usize {
        self.table[*x][*y]
    }

    fn invert(&self, x: &usize) -> usize {
        self.inverses[*x]
    }

    fn elements(&self) -> Option<Vec<usize>> {
        Some((0..self.order()).collect())
    }

    fn describe(&self, x: &usize) -> String {
        self.names[*x].clone()
    }
}

/// Free group on an alphabet; elements are freely reduced symbol words.
#[derive(Debug, Clone)]
pub struct FreeGroup {
    pub alphabet: Alphabet,
}

impl GroupOracle for FreeGroup {
    type Elem = Vec<Sym>;

    fn identity(&self) -> Vec<Sym> {
        Vec::new()
    }

    fn multiply(&self, x: &Vec<Sym>, y: &Vec<Sym>) -> Vec<Sym> {
        let mut out = x.clone();
        out.extend_from_slice(y);
        reduce_syms(&out)
    }

    fn invert(&self, x: &Vec<Sym>) -> Vec<Sym> {
        crate::words::inverse_syms(x)
    }

    fn elements(&self) -> Option<Vec<Vec<Sym>>> {
        None
    }

    fn describe(&self, x: &Vec<Sym>) -> String {
        self.alphabet.decode(x).to_string()
    }
}

impl FreeGroup {
    /// Reduced words of length at most `len`.
    pub fn elements_up_to(&self, len: usize) -> Vec<Vec<Sym>> {
        let n = self.alphabet.sym_count() as u32;
        let mut out = vec![Vec::new()];
        let mut layer = vec![Vec::new()];
        for _ in 0..len {
            let mut next = Vec::new();
            for x in &layer {
                for s in 0..n {
                    let s = Sym(s);
                    if x.last() != Some(&s.inverse()) {
                        let mut y: Vec<Sym> = x.clone();
                        y.push(s);
                        next.push(y);
                    }
                }
            }
            out.extend(next.iter().cloned());
            layer = next;
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum FpSyllable<E> {
    H(E),
    /// Nonzero power of `t`.
    T(i64),
}

/// Reduced sequence: nonidentity syllables alternating between the factors.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct FreeProdElement<E> {
    syllables: Vec<FpSyllable<E>>,
}

impl<E> FreeProdElement<E> {
    pub fn syllables(&self) -> &[FpSyllable<E>] {
        &self.syllables
    }
}

/// `H ∗ FG(t)` over a group oracle for `H`.
#[derive(Debug, Clone, Copy)]
pub struct FreeProduct<'h, G> {
    pub h: &'h G,
}

impl<'h, G: GroupOracle> FreeProduct<'h, G> {
    pub fn new(h: &'h G) -> Self {
        FreeProduct { h }
    }

    pub fn identity(&self) -> FreeProdElement<G::Elem> {
        FreeProdElement { syllables: Vec::new() }
    }

    pub fn h(&self, x: G::Elem) -> FreeProdElement<G::Elem> {
        self.from_syllables([FpSyllable::H(x)])
    }

    pub fn t_pow(&self, k: i64) -> FreeProdElement<G::Elem> {
        self.from_syllables([FpSyllable::T(k)])
    }

    /// `t x t⁻¹`.
    pub fn conj(&self, x: G::Elem) -> FreeProdElement<G::Elem> {
        self.from_syllables([FpSyllable::T(1), FpSyllable::H(x), FpSyllable::T(-1)])
    }

    /// Multiplies out an arbitrary syllable list.
    pub fn from_syllables(&self, syl: impl IntoIterator<Item = FpSyllable<G::Elem>>) -> FreeProdElement<G::Elem> {
        let mut out = Vec::new();
        for s in syl {
            self.push(&mut out, s);
        }
        FreeProdElement { syllables: out }
    }

    fn push(&self, out: &mut Vec<FpSyllable<G::Elem>>, s: FpSyllable<G::Elem>) {
        match (out.last_mut(), s) {
            (Some(FpSyllable::H(a)), FpSyllable::H(b)) => {
                let c = self.h.multiply(a, &b);
                if self.h.is_identity(&c) {
                    out.pop();
                } else {
                    *a = c;
                }
            }
            (Some(FpSyllable::T(a)), FpSyllable::T(b)) => {
                *a += b;
                if *a == 0 {
                    out.pop();
                }
            }
            (_, FpSyllable::H(b)) => {
                if !self.h.is_identity(&b) {
                    out.push(FpSyllable::H(b));
                }
            }
            (_, FpSyllable::T(b)) => {
                if b != 0 {
                    out.push(FpSyllable::T(b));
                }
            }
        }
    }

    /// Concatenation followed by seam reduction.
    pub fn multiply(&self, x: &FreeProdElement<G::Elem>, y: &FreeProdElement<G::Elem>) -> FreeProdElement<G::Elem> {
        let mut out = x.syllables.clone();
        for s in &y.syllables {
            self.push(&mut out, s.clone());
        }
        FreeProdElement { syllables: out }
    }

    pub fn inverse(&self, x: &FreeProdElement<G::Elem>) -> FreeProdElement<G::Elem> {
        FreeProdElement {
            syllables: x
                .syllables
                .iter()
                .rev()
                .map(|s| match s {
                    FpSyllable::H(e) => FpSyllable::H(self.h.invert(e)),
                    FpSyllable::T(k) => FpSyllable::T(-k),
                })
                .collect(),
        }
    }

    pub fn is_reduced(&self, x: &FreeProdElement<G::Elem>) -> bool {
        x.syllables.iter().all(|s| match s {
            FpSyllable::H(e) => !self.h.is_identity(e),
            FpSyllable::T(k) => *k != 0,
        }) && x.syllables.windows(2).all(|p| {
            matches!((&p[0], &p[1]), (FpSyllable::H(_), FpSyllable::T(_)) | (FpSyllable::T(_), FpSyllable::H(_)))
        })
    }

    pub fn describe(&self, x: &FreeProdElement<G::Elem>) -> String {
        if x.syllables.is_empty() {
            return "1".into();
        }
        x.syllables
            .iter()
            .map(|s| match s {
                FpSyllable::H(e) => self.h.describe(e),
                FpSyllable::T(1) => "t".into(),
                FpSyllable::T(k) => format!("t^{k}"),
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// Syllable count of the reduced sequence.
pub fn fp_length<E>(x: &FreeProdElement<E>) -> usize {
    x.syllables.len()
}

/// Image under `t ↦ t, h ↦ 1` in `FG(t) ≅ ℤ`, as the exponent of `t`.
pub fn theta_to_fgt<E>(x: &FreeProdElement<E>) -> i64 {
    x.syllables
        .iter()
        .map(|s| match s {
            FpSyllable::T(k) => *k,
            FpSyllable::H(_) => 0,
        })
        .sum()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Membership {
    /// Found as a product of this many generators.
    Yes(usize),
    NotFound,
}

impl Membership {
    pub fn is_yes(&self) -> bool {
        matches!(self, Membership::Yes(_))
    }
}

/// All products of at most `max_factors` generators (including the empty
/// product), with the fewest factors needed for each.
pub fn bounded_closure<G: GroupOracle>(
    fp: &FreeProduct<'_, G>,
    gens: &[FreeProdElement<G::Elem>],
    max_factors: usize,
) -> Result<HashMap<FreeProdElement<G::Elem>, usize>> {
    let mut seen = HashMap::from([(fp.identity(), 0usize)]);
    let mut frontier = vec![fp.identity()];
    for d in 1..=max_factors {
        let mut next = Vec::new();
        for x in &frontier {
            for g in gens {
                let y = fp.multiply(x, g);
                if !seen.contains_key(&y) {
                    if seen.len() >= SEARCH_GUARD {
                        return Err(Error::BudgetExceeded(format!("submonoid search exceeded {SEARCH_GUARD} elements")));
                    }
                    seen.insert(y.clone(), d);
                    next.push(y);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        frontier = next;
    }
    Ok(seen)
}

/// Breadth-first search for `target` among products of at most
/// `max_factors` generators.
pub fn submonoid_member_bounded<G: GroupOracle>(
    fp: &FreeProduct<'_, G>,
    gens: &[FreeProdElement<G::Elem>],
    target: &FreeProdElement<G::Elem>,
    max_factors: usize,
) -> Result<Membership> {
    if target.syllables.is_empty() {
        return Ok(Membership::Yes(0));
    }
    let mut seen = HashSet::from([fp.identity()]);
    let mut frontier = vec![fp.identity()];
    for d in 1..=max_factors {
        let mut next = Vec::new();
        for x in &frontier {
            for g in gens {
                let y = fp.multiply(x, g);
                if &y == target {
                    return Ok(Membership::Yes(d));
                }
                if !seen.contains(&y) {
                    if seen.len() >= SEARCH_GUARD {
                        return Err(Error::BudgetExceeded(format!("submonoid search exceeded {SEARCH_GUARD} elements")));
                    }
                    seen.insert(y.clone());
                    next.push(y);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        frontier = next;
    }
    Ok(Membership::NotFound)
}

/// Generators `{t} ∪ H ∪ tWt⁻¹` of `S`, identity elements dropped.
pub fn s_generators(fp: &FreeProduct<'_, FiniteGroup>, w: &[usize]) -> Vec<FreeProdElement<usize>> {
    let h = fp.h;
    let mut gens = vec![fp.t_pow(1)];
    gens.extend((1..h.order()).map(|x| fp.h(x)));
    let mut conj: Vec<usize> = w.iter().copied().filter(|&x| x != 0).collect();
    conj.sort();
    conj.dedup();
    gens.extend(conj.into_iter().map(|x| fp.conj(x)));
    gens
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KeyClaimReport {
    pub h: String,
    pub w: Vec<String>,
    pub h_in_t: bool,
    /// Shortest factorization of `h` over `W`, when `h ∈ T`.
    pub t_factors: Option<usize>,
    pub conj_in_s: Membership,
    pub agree: bool,
}

/// Compares `h ∈ T = ⟨W⟩` (exact, finite closure) with `tht⁻¹ ∈ S` found by
/// bounded search in `S = ⟨{t} ∪ H ∪ tWt⁻¹⟩`.
pub fn key_claim_check(h_group: &FiniteGroup, w: &[usize], h: usize, max_factors: usize) -> Result<KeyClaimReport> {
    let fp = FreeProduct::new(h_group);
    let closure = h_group.submonoid_closure(w);
    let gens = s_generators(&fp, w);
    let target = fp.conj(h);
    let conj_in_s = submonoid_member_bounded(&fp, &gens, &target, max_factors)?;
    Ok(key_claim_verdict(h_group, w, h, &closure, conj_in_s))
}

fn key_claim_verdict(
    g: &FiniteGroup,
    w: &[usize],
    h: usize,
    closure: &HashMap<usize, usize>,
    conj_in_s: Membership,
) -> KeyClaimReport {
    let t_factors = closure.get(&h).copied();
    let agree = match (t_factors, conj_in_s) {
        // forward direction must be witnessed within the T-factorization length
        (Some(l), Membership::Yes(k)) => k <= l || h == 0,
        (None, Membership::NotFound) => true,
        _ => false,
    };
    KeyClaimReport {
        h: g.describe(&h),
        w: w.iter().map(|x| g.describe(x)).collect(),
        h_in_t: t_factors.is_some(),
        t_factors,
        conj_in_s,
        agree,
    }
}

/// Runs [`key_claim_check`] for every `h ∈ H`, sharing one bounded
/// enumeration of `S` across all `h`.
pub fn key_claim_all(h_group: &FiniteGroup, w: &[usize], max_factors: usize) -> Result<Vec<KeyClaimReport>> {
    let fp = FreeProduct::new(h_group);
    let closure = h_group.submonoid_closure(w);
    let gens = s_generators(&fp, w);
    let reach = bounded_closure(&fp, &gens, max_factors)?;
    Ok((0..h_group.order())
        .map(|h| {
            let m = match reach.get(&fp.conj(h)) {
                Some(&d) => Membership::Yes(d),
                None => Membership::NotFound,
            };
            key_claim_verdict(h_group, w, h, &closure, m)
        })
        .collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealReport {
    pub max_factors: usize,
    pub u_elements: usize,
    pub v_elements: usize,
    pub complement_elements: usize,
    /// Elements of `V` whose `θ`-image is not the identity.
    pub v_theta_violations: usize,
    /// Elements of `U ∖ V` without strictly positive `t`-exponent.
    pub complement_theta_violations: usize,
    pub t_in_complement: bool,
    pub ideal_samples: usize,
    /// Sampled `x·u·y` (u ∈ U∖V) that landed in `V` or had `θ ≤ 0`.
    pub ideal_violations: usize,
}

impl IdealReport {
    pub fn passed(&self) -> bool {
        self.v_theta_violations == 0
            && self.complement_theta_violations == 0
            && self.t_in_complement
            && self.ideal_violations == 0
    }
}

/// Enumerates `U = ⟨{t} ∪ H ∪ tHt⁻¹⟩` and `V = ⟨H ∪ tHt⁻¹⟩` up to
/// `max_factors` and checks the `θ`-image description of `V` and `U ∖ V`,
/// plus sampled ideal closure `x·(U∖V)·y ⊆ U∖V`.
pub fn ideal_complement_check(h_group: &FiniteGroup, sample_size: usize, max_factors: usize, seed: u64) -> Result<IdealReport> {
    let fp = FreeProduct::new(h_group);
    let all: Vec<usize> = (0..h_group.order()).collect();
    let u_gens = s_generators(&fp, &all);
    let v_gens: Vec<_> = u_gens[1..].to_vec();
    let u = bounded_closure(&fp, &u_gens, max_factors)?;
    let v = bounded_closure(&fp, &v_gens, max_factors)?;

    let v_theta_violations = v.keys().filter(|x| theta_to_fgt(x) != 0).count();
    let mut complement: Vec<_> = u.keys().filter(|x| !v.contains_key(*x)).cloned().collect();
    complement.sort();
    let complement_theta_violations = complement.iter().filter(|x| theta_to_fgt(x) <= 0).count();
    let t_in_complement = complement.contains(&fp.t_pow(1));

    let mut u_list: Vec<_> = u.keys().cloned().collect();
    u_list.sort();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut ideal_violations = 0;
    let mut ideal_samples = 0;
    if !complement.is_empty() {
        for _ in 0..sample_size {
            let x = u_list.choose(&mut rng).expect("nonempty");
            let c = complement.choose(&mut rng).expect("nonempty");
            let y = u_list.choose(&mut rng).expect("nonempty");
            let p = fp.multiply(&fp.multiply(x, c), y);
            ideal_samples += 1;
            if v.contains_key(&p) || theta_to_fgt(&p) <= 0 {
                ideal_violations += 1;
            }
        }
    }
    Ok(IdealReport {
        max_factors,
        u_elements: u.len(),
        v_elements: v.len(),
        complement_elements: complement.len(),
        v_theta_violations,
        complement_theta_violations,
        t_in_complement,
        ideal_samples,
        ideal_violations,
    })
}

impl<E: fmt::Debug> fmt::Display for FreeProdElement<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.syllables)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn multiply_examples() {
        let z2 = FiniteGroup::cyclic(2);
        let fp = FreeProduct::new(&z2);
        assert_eq!(fp.multiply(&fp.t_pow(1), &fp.t_pow(-1)), fp.identity());
        let tht = fp.from_syllables([FpSyllable::T(1), FpSyllable::H(1), FpSyllable::T(-1)]);
        assert_eq!(fp_length(&tht), 3);
        assert_eq!(fp.multiply(&fp.h(1), &fp.h(1)), fp.identity());
        // cascade through the seam
        let x = fp.from_syllables([FpSyllable::H(1), FpSyllable::T(1), FpSyllable::H(1)]);
        assert_eq!(fp.multiply(&x, &fp.inverse(&x)), fp.identity());
    }

    #[test]
    fn length_and_theta_examples() {
        let z3 = FiniteGroup::cyclic(3);
        let fp = FreeProduct::new(&z3);
        assert_eq!(fp_length(&fp.identity()), 0);
        assert_eq!(fp_length(&fp.conj(1)), 3);
        assert_eq!(fp_length(&fp.multiply(&fp.t_pow(1), &fp.t_pow(1))), 1);
        assert_eq!(theta_to_fgt(&fp.conj(2)), 0);
        assert_eq!(theta_to_fgt(&fp.t_pow(1)), 1);
        assert_eq!(theta_to_fgt(&fp.h(1)), 0);
    }

    #[test]
    fn membership_examples() {
        let z2 = FiniteGroup::cyclic(2);
        let fp = FreeProduct::new(&z2);
        assert_eq!(submonoid_member_bounded(&fp, &[fp.t_pow(1)], &fp.identity(), 0).unwrap(), Membership::Yes(0));
        assert_eq!(submonoid_member_bounded(&fp, &[fp.t_pow(1)], &fp.t_pow(3), 3).unwrap(), Membership::Yes(3));
        assert_eq!(submonoid_member_bounded(&fp, &[fp.t_pow(1)], &fp.t_pow(-1), 5).unwrap(), Membership::NotFound);
        let gens = s_generators(&fp, &[1]);
        assert_eq!(submonoid_member_bounded(&fp, &gens, &fp.conj(1), 2).unwrap(), Membership::Yes(1));
    }

    #[test]
    fn key_claim_examples() {
        let z2 = FiniteGroup::cyclic(2);
        let r = key_claim_check(&z2, &[1], 1, 2).unwrap();
        assert!(r.h_in_t && r.conj_in_s.is_yes() && r.agree);
        let z3 = FiniteGroup::cyclic(3);
        let r = key_claim_check(&z3, &[], 1, 3).unwrap();
        assert!(!r.h_in_t);
        assert_eq!(r.conj_in_s, Membership::NotFound);
        assert!(r.agree);
        let s3 = FiniteGroup::symmetric3();
        let r = key_claim_check(&s3, &[], 0, 6).unwrap();
        assert!(r.h_in_t && r.conj_in_s.is_yes() && r.agree);
    }

    #[test]
    fn key_claim_all_matches_single() {
        let s3 = FiniteGroup::symmetric3();
        let w = [1, 4];
        let all = key_claim_all(&s3, &w, 4).unwrap();
        for (h, r) in all.iter().enumerate() {
            assert_eq!(*r, key_claim_check(&s3, &w, h, 4).unwrap());
        }
    }

    #[test]
    fn ideal_examples() {
        let z2 = FiniteGroup::cyclic(2);
        let r = ideal_complement_check(&z2, 200, 4, 1).unwrap();
        assert!(r.passed(), "{r:?}");
        assert!(r.t_in_complement);
        let fp = FreeProduct::new(&z2);
        let hth = fp.from_syllables([FpSyllable::H(1), FpSyllable::T(1), FpSyllable::H(1)]);
        assert_eq!(theta_to_fgt(&hth), 1);
        let v_gens = s_generators(&fp, &[0, 1])[1..].to_vec();
        assert_eq!(submonoid_member_bounded(&fp, &v_gens, &hth, 6).unwrap(), Membership::NotFound);
    }

    #[test]
    fn tables_are_validated() {
        assert!(FiniteGroup::new(vec![vec![0, 1], vec![1, 1]], None).is_err());
        assert!(FiniteGroup::new(vec![vec![1, 0], vec![0, 1]], None).is_err());
        let s3 = FiniteGroup::symmetric3();
        assert_eq!(s3.order(), 6);
        // nonabelian
        assert_ne!(s3.multiply(&1, &2), s3.multiply(&2, &1));
    }

    #[test]
    fn table_formats() {
        let json = r#"{"order":2,"table":[[0,1],[1,0]],"names":["e","h"]}"#;
        let g: FiniteGroup = serde_json::from_str(json).unwrap();
        assert_eq!(g.element("h").unwrap(), 1);
        assert_eq!(serde_json::to_string(&g).unwrap(), json);
        let csv = "e,g,g2\n0,1,2\n1,2,0\n2,0,1\n";
        let c = FiniteGroup::from_csv(csv).unwrap();
        assert_eq!(c, FiniteGroup::new(FiniteGroup::cyclic(3).table.clone(), Some(vec!["e".into(), "g".into(), "g2".into()])).unwrap());
        assert!(FiniteGroup::from_csv("0,1\n1,0\n").is_ok());
        assert!(serde_json::from_str::<FiniteGroup>(r#"{"order":3,"table":[[0,1],[1,0]]}"#).is_err());
    }

    #[test]
    fn free_group_oracle() {
        let f = FreeGroup { alphabet: Alphabet::new(["a", "b"]).unwrap() };
        // 1 + 4 + 12 reduced words of length <= 2
        assert_eq!(f.elements_up_to(2).len(), 17);
        let fp = FreeProduct::new(&f);
        let x = fp.h(vec![Sym(0)]);
        let y = fp.h(vec![Sym(1)]);
        assert_eq!(fp.multiply(&x, &y), fp.identity());
    }

    /// `⟨X⟩ ∩ V = ⟨X ∩ V⟩` inside `U`, with `U ∖ V` an ideal.
    #[test]
    fn intersection_with_ideal_complement() {
        let z3 = FiniteGroup::cyclic(3);
        let fp = FreeProduct::new(&z3);
        let all = [0, 1, 2];
        let u_gens = s_generators(&fp, &all);
        let v_gens: Vec<_> = u_gens[1..].to_vec();
        let u2: Vec<_> = {
            let mut v: Vec<_> = bounded_closure(&fp, &u_gens, 2).unwrap().into_keys().collect();
            v.sort();
            v
        };
        let in_v = |x: &FreeProdElement<usize>, k: usize| submonoid_member_bounded(&fp, &v_gens, x, k).unwrap().is_yes();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let x: Vec<_> = u2.choose_multiple(&mut rng, 4).cloned().collect();
            let x_cap_v: Vec<_> = x.iter().filter(|e| in_v(e, 2)).cloned().collect();
            let k = 3;
            let lhs: BTreeSet<_> = bounded_closure(&fp, &x, k).unwrap().into_keys().filter(|e| in_v(e, 2 * k)).collect();
            let rhs: BTreeSet<_> = bounded_closure(&fp, &x_cap_v, k).unwrap().into_keys().collect();
            assert_eq!(lhs, rhs);
        }
    }

    fn fp_strategy() -> impl Strategy<Value = Vec<FpSyllable<usize>>> {
        proptest::collection::vec(
            prop_oneof![(0usize..6).prop_map(FpSyllable::H), (-3i64..=3).prop_map(FpSyllable::T)],
            0..8,
        )
    }

    proptest! {
        #[test]
        fn group_laws(a in fp_strategy(), b in fp_strategy(), c in fp_strategy()) {
            let s3 = FiniteGroup::symmetric3();
            let fp = FreeProduct::new(&s3);
            let (x, y, z) = (fp.from_syllables(a), fp.from_syllables(b), fp.from_syllables(c));
            prop_assert!(fp.is_reduced(&x));
            prop_assert_eq!(fp.multiply(&x, &fp.identity()), x.clone());
            prop_assert_eq!(fp.multiply(&x, &fp.inverse(&x)), fp.identity());
            prop_assert_eq!(fp.multiply(&fp.multiply(&x, &y), &z), fp.multiply(&x, &fp.multiply(&y, &z)));
            prop_assert_eq!(theta_to_fgt(&fp.multiply(&x, &y)), theta_to_fgt(&x) + theta_to_fgt(&y));
        }
    }
}
