//! HNN extensions `A(Γ, ψ)` of right-angled Artin groups along an isomorphism
//! `ψ: Δ₁ → Δ₂` of induced subgraphs, with word problem by Britton reduction.
//!
//! The instance on the path `a – b – c – d` with `ψ = (a→b, b→c, c→d)` is the
//! one-relator group `Gp⟨a, t | a·tat⁻¹ = tat⁻¹·a⟩`, which gives a decision
//! procedure for `Gp⟨a, z | azaz⁻¹a⁻¹za⁻¹z⁻¹ = 1⟩` after renaming `z` to `t`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::raag::{induced_subgraph, normal_form_syms, parabolic_syms, raag_normal_form, SimpGraph};
use crate::words::{formal_inverse, w, Alphabet, Letter, Sign, Sym, Word};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "HnnJson", into = "HnnJson")]
pub struct HnnPresentation {
    base: SimpGraph,
    delta1: Vec<String>,
    delta2: Vec<String>,
    psi: BTreeMap<String, String>,
    stable: String,
    // derived
    ext: Alphabet,
    mask1: Vec<bool>,
    mask2: Vec<bool>,
    fwd: Vec<usize>,
    bwd: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct HnnJson {
    graph: SimpGraph,
    delta1: Vec<String>,
    delta2: Vec<String>,
    psi: BTreeMap<String, String>,
    stable: String,
}

impl TryFrom<HnnJson> for HnnPresentation {
    type Error = Error;

    fn try_from(j: HnnJson) -> Result<HnnPresentation> {
        HnnPresentation::new(j.graph, j.delta1, j.delta2, j.psi, j.stable)
    }
}

impl From<HnnPresentation> for HnnJson {
    fn from(h: HnnPresentation) -> HnnJson {
        HnnJson { graph: h.base, delta1: h.delta1, delta2: h.delta2, psi: h.psi, stable: h.stable }
    }
}

impl HnnPresentation {
    pub fn new(
        base: SimpGraph,
        delta1: Vec<String>,
        delta2: Vec<String>,
        psi: BTreeMap<String, String>,
        stable: String,
    ) -> Result<HnnPresentation> {
        let ext = base.vertices().with(&stable).map_err(|_| Error::InvalidHnn(format!("stable letter {stable:?} is not fresh")))?;
        let d1: Vec<&str> = delta1.iter().map(String::as_str).collect();
        let d2: Vec<&str> = delta2.iter().map(String::as_str).collect();
        let mask1 = base.index_set(&d1)?;
        let mask2 = base.index_set(&d2)?;
        if psi.len() != delta1.len() || d1.iter().any(|x| !psi.contains_key(*x)) {
            return Err(Error::InvalidHnn("psi must be defined exactly on delta1".into()));
        }
        let mut image: Vec<&str> = psi.values().map(String::as_str).collect();
        image.sort();
        image.dedup();
        let mut d2_sorted = d2.clone();
        d2_sorted.sort();
        if image != d2_sorted || d2_sorted.windows(2).any(|p| p[0] == p[1]) {
            return Err(Error::InvalidHnn("psi must be a bijection onto delta2".into()));
        }
        let g1 = induced_subgraph(&base, &d1)?;
        for x in &d1 {
            for y in &d1 {
                if x < y && g1.has_edge(x, y) != base.has_edge(&psi[*x], &psi[*y]) {
                    return Err(Error::InvalidHnn(format!("psi does not preserve adjacency of {x},{y}")));
                }
            }
        }
        let n = base.vertices().len();
        let mut fwd = vec![usize::MAX; n];
        let mut bwd = vec![usize::MAX; n];
        for (x, y) in &psi {
            let i = base.vertices().index_of(x).expect("checked");
            let j = base.vertices().index_of(y).expect("checked");
            fwd[i] = j;
            bwd[j] = i;
        }
        Ok(HnnPresentation { base, delta1, delta2, psi, stable, ext, mask1, mask2, fwd, bwd })
    }

    pub fn base(&self) -> &SimpGraph {
        &self.base
    }

    pub fn stable(&self) -> &str {
        &self.stable
    }

    pub fn delta1(&self) -> &[String] {
        &self.delta1
    }

    pub fn delta2(&self) -> &[String] {
        &self.delta2
    }

    pub fn psi(&self) -> &BTreeMap<String, String> {
        &self.psi
    }

    /// Base vertices followed by the stable letter.
    pub fn alphabet(&self) -> &Alphabet {
        &self.ext
    }

    fn t_gen(&self) -> usize {
        self.base.vertices().len()
    }

    /// `ψ` applied letterwise to a word over `Δ₁`.
    pub fn apply_psi(&self, w: &Word) -> Result<Word> {
        let syms = self.base.vertices().encode(w)?;
        let mapped = self.map_syms(&syms, &self.fwd)?;
        Ok(self.base.vertices().decode(&mapped))
    }

    fn map_syms(&self, w: &[Sym], table: &[usize]) -> Result<Vec<Sym>> {
        w.iter()
            .map(|s| {
                let g = table[s.gen()];
                if g == usize::MAX {
                    Err(Error::UnknownVertex(self.base.vertices().names()[s.gen()].to_string()))
                } else {
                    Ok(Sym::new(g, if s.is_inverse() { Sign::Neg } else { Sign::Pos }))
                }
            })
            .collect()
    }
}

/// The path `a – b – c – d` with `Δ₁ = {a,b,c}`, `Δ₂ = {b,c,d}`,
/// `ψ = (a→b, b→c, c→d)` and stable letter `t`.
pub fn p4_instance() -> HnnPresentation {
    let s = |v: &[&str]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>();
    let psi = [("a", "b"), ("b", "c"), ("c", "d")].iter().map(|(x, y)| (x.to_string(), y.to_string())).collect();
    HnnPresentation::new(SimpGraph::p4(), s(&["a", "b", "c"]), s(&["b", "c", "d"]), psi, "t".into())
        .expect("the P4 instance is valid")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Syllable {
    /// Nonzero power of the stable letter.
    Stable(i64),
    /// Nonempty RAAG normal form.
    Base(Word),
}

/// Pinch-free form: alternating stable powers and base normal forms.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BrittonForm {
    pub syllables: Vec<Syllable>,
}

impl BrittonForm {
    pub fn is_identity(&self) -> bool {
        self.syllables.is_empty()
    }

    pub fn stable_letters(&self) -> u64 {
        self.syllables
            .iter()
            .map(|s| match s {
                Syllable::Stable(k) => k.unsigned_abs(),
                Syllable::Base(_) => 0,
            })
            .sum()
    }

    pub fn to_word(&self, stable: &str) -> Word {
        let mut out = Vec::new();
        for s in &self.syllables {
            match s {
                Syllable::Stable(k) => {
                    let l = if *k > 0 { Letter::pos(stable) } else { Letter::neg(stable) };
                    out.extend(std::iter::repeat_n(l, k.unsigned_abs() as usize));
                }
                Syllable::Base(w) => out.extend_from_slice(w.letters()),
            }
        }
        Word(out)
    }
}

impl fmt::Display for BrittonForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.syllables.is_empty() {
            return f.write_str("[]");
        }
        let parts: Vec<String> = self
            .syllables
            .iter()
            .map(|s| match s {
                Syllable::Stable(k) => format!("t^{k}"),
                Syllable::Base(w) => format!("({w})"),
            })
            .collect();
        write!(f, "[{}]", parts.join(" · "))
    }
}

/// Finds the leftmost pinch among consecutive stable letters.
fn find_pinch(h: &HnnPresentation, w: &[Sym]) -> Option<(usize, usize, Vec<Sym>)> {
    let t = h.t_gen();
    let ts: Vec<usize> = (0..w.len()).filter(|&i| w[i].gen() == t).collect();
    for pair in ts.windows(2) {
        let (p, q) = (pair[0], pair[1]);
        if w[p] == w[q] {
            continue;
        }
        let inner = &w[p + 1..q];
        let replaced = if !w[p].is_inverse() {
            parabolic_syms(&h.base, &h.mask1, inner).map(|nf| h.map_syms(&nf, &h.fwd))
        } else {
            parabolic_syms(&h.base, &h.mask2, inner).map(|nf| h.map_syms(&nf, &h.bwd))
        };
        if let Some(r) = replaced {
            return Some((p, q, r.expect("normal form is supported on the associated subgraph")));
        }
    }
    None
}

pub(crate) fn britton_syms(h: &HnnPresentation, w: &[Sym]) -> BrittonForm {
    let mut cur = w.to_vec();
    while let Some((p, q, repl)) = find_pinch(h, &cur) {
        cur.splice(p..=q, repl);
    }
    let t = h.t_gen();
    let mut syllables = Vec::new();
    let mut segment: Vec<Sym> = Vec::new();
    let flush = |segment: &mut Vec<Sym>, syllables: &mut Vec<Syllable>| {
        let nf = normal_form_syms(&h.base, segment);
        segment.clear();
        if !nf.is_empty() {
            syllables.push(Syllable::Base(h.base.vertices().decode(&nf)));
        }
    };
    for s in cur {
        if s.gen() == t {
            flush(&mut segment, &mut syllables);
            let step = if s.is_inverse() { -1 } else { 1 };
            match syllables.last_mut() {
                Some(Syllable::Stable(k)) => *k += step,
                _ => syllables.push(Syllable::Stable(step)),
            }
        } else {
            segment.push(s);
        }
    }
    flush(&mut segment, &mut syllables);
    BrittonForm { syllables }
}

/// Removes pinches `t g t⁻¹` (g ∈ A(Δ₁)) and `t⁻¹ g t` (g ∈ A(Δ₂)), leftmost
/// first, until none remain.
pub fn britton_reduce(h: &HnnPresentation, w: &Word) -> Result<BrittonForm> {
    let syms = h.ext.encode(w)?;
    Ok(britton_syms(h, &syms))
}

/// By Britton's lemma a pinch-free word containing a stable letter is
/// nontrivial, so the element is trivial iff the reduced form is empty.
pub fn hnn_is_trivial(h: &HnnPresentation, w: &Word) -> Result<bool> {
    Ok(britton_reduce(h, w)?.is_identity())
}

pub fn hnn_equal(h: &HnnPresentation, u: &Word, v: &Word) -> Result<bool> {
    hnn_is_trivial(h, &u.concat(&formal_inverse(v)))
}

/// `a ↦ a, b ↦ tat⁻¹, c ↦ t²at⁻², d ↦ t³at⁻³`.
pub fn theta_embed(w: &Word) -> Result<Word> {
    let mut out = Vec::new();
    for l in w.letters() {
        let k = match &*l.name {
            "a" => 0,
            "b" => 1,
            "c" => 2,
            "d" => 3,
            other => return Err(Error::UnknownVertex(other.to_string())),
        };
        out.extend(std::iter::repeat_n(Letter::pos("t"), k));
        out.push(Letter { name: "a".into(), sign: l.sign });
        out.extend(std::iter::repeat_n(Letter::neg("t"), k));
    }
    Ok(Word(out))
}

/// `azaz⁻¹a⁻¹za⁻¹z⁻¹`.
pub fn one_relator() -> Word {
    w("azaZAzAZ")
}

/// Triviality in `Gp⟨a, z | azaz⁻¹a⁻¹za⁻¹z⁻¹ = 1⟩` through its isomorphism
/// with `A(P₄, ψ)` sending `a ↦ a`, `z ↦ t`.
pub fn one_relator_wp(u: &Word) -> Result<bool> {
    let renamed: Word = u
        .letters()
        .iter()
        .map(|l| match &*l.name {
            "a" => Ok(l.clone()),
            "z" => Ok(Letter { name: "t".into(), sign: l.sign }),
            other => Err(Error::UnknownVertex(other.to_string())),
        })
        .collect::<Result<_>>()?;
    thread_local! {
        static P4: HnnPresentation = p4_instance();
    }
    P4.with(|h| hnn_is_trivial(h, &renamed))
}

/// All words over `alphabet` (both signs) of length at most `max_len` that are
/// their own RAAG normal form, in shortlex order.
pub fn enumerate_normal_forms(g: &SimpGraph, max_len: usize) -> Vec<Word> {
    let nsym = g.vertices().sym_count() as u32;
    let mut out = Vec::new();
    let mut layer: Vec<Vec<Sym>> = vec![Vec::new()];
    out.push(Word::empty());
    for _ in 0..max_len {
        let mut next = Vec::new();
        for x in &layer {
            for s in 0..nsym {
                let mut y = x.clone();
                y.push(Sym(s));
                // prefixes of normal forms are normal forms
                if normal_form_syms(g, &y) == y {
                    next.push(y);
                }
            }
        }
        out.extend(next.iter().map(|y| g.vertices().decode(y)));
        layer = next;
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmbeddingReport {
    pub max_letters: usize,
    pub relator_images_trivial: usize,
    pub relator_images_failed: usize,
    pub normal_forms_checked: usize,
    pub nontrivial_images: usize,
    pub failures: Vec<Word>,
}

impl EmbeddingReport {
    pub fn passed(&self) -> bool {
        self.relator_images_failed == 0 && self.failures.is_empty()
    }
}

/// The defining relators `[a,b]`, `[b,c]`, `[c,d]` of `A(P₄)`.
pub fn p4_relators() -> Vec<Word> {
    vec![w("abAB"), w("bcBC"), w("cdCD")]
}

/// Checks that `θ` kills the relators of `A(P₄)` and sends every nontrivial
/// normal form with at most `max_letters` letters to a nontrivial element.
pub fn verify_embedding_sample(max_letters: usize) -> EmbeddingReport {
    let h = p4_instance();
    let mut report = EmbeddingReport {
        max_letters,
        relator_images_trivial: 0,
        relator_images_failed: 0,
        normal_forms_checked: 0,
        nontrivial_images: 0,
        failures: Vec::new(),
    };
    for r in p4_relators() {
        if hnn_is_trivial(&h, &theta_embed(&r).expect("P4 letters")).expect("a,t letters") {
            report.relator_images_trivial += 1;
        } else {
            report.relator_images_failed += 1;
        }
    }
    for u in enumerate_normal_forms(h.base(), max_letters).into_iter().skip(1) {
        report.normal_forms_checked += 1;
        let image = theta_embed(&u).expect("P4 letters");
        if hnn_is_trivial(&h, &image).expect("a,t letters") {
            report.failures.push(u);
        } else {
            report.nontrivial_images += 1;
        }
    }
    report
}

/// Injectivity on pairs: for all distinct normal forms `u ≠ v` with at most
/// `max_letters` letters, `θ(u) ≠ θ(v)`. Returns (pairs checked, failures).
pub fn verify_embedding_pairs(max_letters: usize) -> (usize, Vec<(Word, Word)>) {
    let h = p4_instance();
    let nfs = enumerate_normal_forms(h.base(), max_letters);
    let images: Vec<Word> = nfs.iter().map(|u| theta_embed(u).expect("P4 letters")).collect();
    let mut checked = 0;
    let mut failures = Vec::new();
    for i in 0..nfs.len() {
        for j in i + 1..nfs.len() {
            checked += 1;
            if hnn_equal(&h, &images[i], &images[j]).expect("a,t letters") {
                failures.push((nfs[i].clone(), nfs[j].clone()));
            }
        }
    }
    (checked, failures)
}

/// The three relators left after eliminating `d`, `c`, `b` from the
/// presentation of `A(P₄, ψ)`; the last two are conjugates of the first by `t`.
pub fn eliminated_relators() -> [Word; 3] {
    let commutator = |x: &Word, y: &Word| x.concat(y).concat(&formal_inverse(x)).concat(&formal_inverse(y));
    let a = w("a");
    let b = w("taT");
    let c = w("ttaTT");
    let d = w("tttaTTT");
    [commutator(&a, &b), commutator(&b, &c), commutator(&c, &d)]
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsomorphismReport {
    /// Relators of `A(P₄, ψ)` pushed to `G` and found trivial there.
    pub hnn_relators_trivial_in_g: usize,
    pub hnn_relators_total: usize,
    /// Generators of `A(P₄, ψ)` fixed by the round trip through `G`.
    pub generators_fixed: usize,
    pub generators_total: usize,
    pub one_relator_trivial_in_hnn: bool,
}

impl IsomorphismReport {
    pub fn passed(&self) -> bool {
        self.hnn_relators_trivial_in_g == self.hnn_relators_total
            && self.generators_fixed == self.generators_total
            && self.one_relator_trivial_in_hnn
    }
}

/// Behavioral check of `G ≅ A(P₄, ψ)` on generators and relators.
pub fn verify_isomorphism() -> IsomorphismReport {
    let h = p4_instance();
    // A(P4, ψ) -> G: base letters via θ, t ↦ z
    let to_g = |u: &Word| -> Word {
        let mut out = Vec::new();
        for l in u.letters() {
            if &*l.name == "t" {
                out.push(Letter { name: "z".into(), sign: l.sign });
            } else {
                let img = theta_embed(&Word(vec![l.clone()])).expect("P4 letter");
                out.extend(img.letters().iter().map(|x| {
                    if &*x.name == "t" { Letter { name: "z".into(), sign: x.sign } } else { x.clone() }
                }));
            }
        }
        Word(out)
    };
    let to_hnn = |u: &Word| -> Word {
        u.letters()
            .iter()
            .map(|l| if &*l.name == "z" { Letter { name: "t".into(), sign: l.sign } } else { l.clone() })
            .collect()
    };
    let mut hnn_relators = p4_relators();
    for (x, y) in [("a", "b"), ("b", "c"), ("c", "d")] {
        // t x t⁻¹ y⁻¹
        hnn_relators.push(Word::gen(x).conjugate_by("t").concat(&formal_inverse(&Word::gen(y))));
    }
    let trivial = hnn_relators.iter().filter(|r| one_relator_wp(&to_g(r)).unwrap_or(false)).count();
    let gens = ["a", "b", "c", "d", "t"];
    let fixed = gens
        .iter()
        .filter(|g| {
            let x = Word::gen(g);
            hnn_equal(&h, &to_hnn(&to_g(&x)), &x).unwrap_or(false)
        })
        .count();
    IsomorphismReport {
        hnn_relators_trivial_in_g: trivial,
        hnn_relators_total: hnn_relators.len(),
        generators_fixed: fixed,
        generators_total: gens.len(),
        one_relator_trivial_in_hnn: hnn_is_trivial(&h, &to_hnn(&one_relator())).unwrap_or(false),
    }
}

/// Normal form of the base part, exposed for callers that build HNN words.
pub fn base_normal_form(h: &HnnPresentation, w: &Word) -> Result<Word> {
    Ok(raag_normal_form(h.base(), w)?.word)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn p4_instance_is_valid() {
        let h = p4_instance();
        assert_eq!(induced_subgraph(h.base(), &["a", "b", "c"]).unwrap(), SimpGraph::path(3));
        assert!(!h.base().vertices().contains("t"));
        assert_eq!(h.alphabet().names().len(), 5);
    }

    #[test]
    fn invalid_instances_rejected() {
        let s = |v: &[&str]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>();
        let m = |v: &[(&str, &str)]| v.iter().map(|(x, y)| (x.to_string(), y.to_string())).collect();
        // a,b adjacent but images a,d are not
        assert!(HnnPresentation::new(SimpGraph::p4(), s(&["a", "b"]), s(&["a", "d"]), m(&[("a", "a"), ("b", "d")]), "t".into()).is_err());
        // stable letter clashes
        assert!(HnnPresentation::new(SimpGraph::p4(), s(&["a"]), s(&["b"]), m(&[("a", "b")]), "a".into()).is_err());
        // not a bijection
        assert!(HnnPresentation::new(SimpGraph::p4(), s(&["a", "c"]), s(&["b", "d"]), m(&[("a", "b"), ("c", "b")]), "t".into()).is_err());
    }

    #[test]
    fn britton_examples() {
        let h = p4_instance();
        assert_eq!(britton_reduce(&h, &w("taT")).unwrap().syllables, vec![Syllable::Base(w("b"))]);
        assert!(britton_reduce(&h, &w("taTtAT")).unwrap().is_identity());
        let f = britton_reduce(&h, &w("tdT")).unwrap();
        assert_eq!(f.syllables, vec![Syllable::Stable(1), Syllable::Base(w("d")), Syllable::Stable(-1)]);
        // t⁻¹ b t = a
        assert_eq!(britton_reduce(&h, &w("Tbt")).unwrap().syllables, vec![Syllable::Base(w("a"))]);
        assert_eq!(britton_reduce(&h, &w("tt")).unwrap().syllables, vec![Syllable::Stable(2)]);
    }

    #[test]
    fn triviality_examples() {
        let h = p4_instance();
        assert!(hnn_is_trivial(&h, &w("a taT A tAT")).unwrap());
        assert!(hnn_is_trivial(&h, &w("ttaTT tttaTTT ttATT tttATTT")).unwrap());
        assert!(!hnn_is_trivial(&h, &w("a tttaTTT A tttATTT")).unwrap());
    }

    #[test]
    fn equality_examples() {
        let h = p4_instance();
        assert!(hnn_equal(&h, &w("taT"), &w("taT")).unwrap());
        assert!(hnn_equal(&h, &w("ataT"), &w("taTa")).unwrap());
        assert!(!hnn_equal(&h, &w("a"), &w("taT")).unwrap());
    }

    #[test]
    fn conjugation_identities() {
        let h = p4_instance();
        for x in ["a", "b", "c"] {
            let lhs = Word::gen(x).conjugate_by("t");
            let rhs = h.apply_psi(&Word::gen(x)).unwrap();
            assert!(hnn_equal(&h, &lhs, &rhs).unwrap(), "{x}");
        }
        assert!(h.apply_psi(&w("d")).is_err());
    }

    #[test]
    fn theta_examples() {
        assert_eq!(theta_embed(&w("b")).unwrap(), w("taT"));
        assert_eq!(theta_embed(&Word::empty()).unwrap(), Word::empty());
        assert_eq!(theta_embed(&w("D")).unwrap(), w("tttATTT"));
        assert!(theta_embed(&w("t")).is_err());
    }

    #[test]
    fn one_relator_examples() {
        assert!(one_relator_wp(&one_relator()).unwrap());
        assert!(!one_relator_wp(&w("a")).unwrap());
        assert!(!one_relator_wp(&w("zaZA")).unwrap());
        assert!(one_relator_wp(&w("az")).is_ok_and(|t| !t));
        assert!(one_relator_wp(&w("q")).is_err());
    }

    #[test]
    fn eliminated_relators_are_trivial() {
        let h = p4_instance();
        for r in eliminated_relators() {
            assert!(hnn_is_trivial(&h, &r).unwrap(), "{r}");
        }
    }

    #[test]
    fn isomorphism_checks() {
        assert!(verify_isomorphism().passed());
    }

    #[test]
    fn small_embedding_sample() {
        let r = verify_embedding_sample(2);
        assert!(r.passed());
        assert_eq!(r.relator_images_trivial, 3);
        let (n, bad) = verify_embedding_pairs(1);
        assert_eq!(n, 9 * 8 / 2);
        assert!(bad.is_empty());
    }

    #[test]
    fn britton_output_is_pinch_free_and_equal() {
        let h = p4_instance();
        for s in ["tatTAT", "TTdttaT", "tAbTtdT", "ttTaTt", "tbcTTdt"] {
            let x = w(s);
            let f = britton_reduce(&h, &x).unwrap();
            let syms = h.alphabet().encode(&f.to_word("t")).unwrap();
            assert!(find_pinch(&h, &syms).is_none(), "{s}");
            assert!(hnn_equal(&h, &x, &f.to_word("t")).unwrap());
            assert!(f.stable_letters() as usize <= x.len());
        }
    }
}
