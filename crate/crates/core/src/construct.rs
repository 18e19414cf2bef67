//! Compiles submonoid membership in a group `G = Gp⟨A | R⟩` into right
//! invertibility in a special one-relation-per-relator inverse monoid
//! `M = Inv⟨A, t | e·r₁ = 1, r₂ = 1, …⟩`.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hnn::{one_relator, one_relator_wp};
use crate::presentation::{max_group_image, GroupPresentation, InvPresentation, Relation};
use crate::stephen::{is_right_invertible, stephen_equal, Budget, RightInvertible, Verdict};
use crate::words::{formal_inverse, idempotent_word, reduce, Alphabet, Letter, Word, WordSrc};

pub const SEMANTICS: &str = "u in T iff probe right invertible";

/// Attached to instances over the one-relator group.
pub const HEADLINE_NOTE: &str =
    "for a suitable finite W over {a,z} the submonoid membership problem of G is undecidable, \
     and the compiled monoid then has undecidable word problem";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "InstanceJson")]
pub struct ConstructionInstance {
    pub group: GroupPresentation,
    pub wset: Vec<Word>,
    pub stable: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Deserialize)]
struct InstanceJson {
    group: GroupPresentation,
    #[serde(default)]
    wset: Vec<WordSrc>,
    #[serde(default = "default_stable")]
    stable: String,
    #[serde(default)]
    note: Option<String>,
}

fn default_stable() -> String {
    "t".into()
}

impl TryFrom<InstanceJson> for ConstructionInstance {
    type Error = Error;

    fn try_from(j: InstanceJson) -> Result<ConstructionInstance> {
        let wset = j.wset.iter().map(|s| s.resolve(Some(&j.group.alphabet))).collect::<Result<_>>()?;
        let mut ci = ConstructionInstance::new(j.group, wset, &j.stable)?;
        ci.note = j.note;
        Ok(ci)
    }
}

impl ConstructionInstance {
    pub fn new(group: GroupPresentation, wset: Vec<Word>, stable: &str) -> Result<ConstructionInstance> {
        let ci = ConstructionInstance { group, wset, stable: stable.to_string(), note: None };
        ci.validate()?;
        Ok(ci)
    }

    pub fn validate(&self) -> Result<()> {
        crate::words::validate_name(&self.stable)?;
        if self.group.alphabet.contains(&self.stable) {
            return Err(Error::StableLetterClash(self.stable.clone()));
        }
        if self.group.relators.is_empty() {
            return Err(Error::NotConstructionShape("at least one relator is required (use the empty word for none)".into()));
        }
        for r in &self.group.relators {
            self.group.alphabet.check(r)?;
        }
        for w in &self.wset {
            self.group.alphabet.check(w)?;
        }
        Ok(())
    }

    /// `A ∪ {t}` with `t` last.
    pub fn alphabet(&self) -> Result<Alphabet> {
        self.group.alphabet.with(&self.stable)
    }

    /// `e(a₁, …, a_n, tw₁t⁻¹, …, tw_kt⁻¹, a₁⁻¹, …, a_n⁻¹)`.
    pub fn e_word(&self) -> Word {
        let names = self.group.alphabet.names();
        let factors: Vec<Word> = names
            .iter()
            .map(|a| Word::gen(a))
            .chain(self.wset.iter().map(|w| w.conjugate_by(&self.stable)))
            .chain(names.iter().map(|a| Word(vec![Letter::neg(a)])))
            .collect();
        idempotent_word(&factors).unwrap_or_default()
    }

    /// `t u t⁻¹`.
    pub fn probe(&self, u: &Word) -> Result<Word> {
        self.group.alphabet.check(u)?;
        Ok(u.conjugate_by(&self.stable))
    }

    /// Recovers the instance from a presentation built by [`build_presentation`].
    pub fn from_presentation(p: &InvPresentation) -> Result<ConstructionInstance> {
        let shape = |m: &str| Error::NotConstructionShape(m.to_string());
        let names = p.alphabet.names();
        let (stable, base) = names.split_last().ok_or_else(|| shape("empty alphabet"))?;
        if p.relations.is_empty() || !p.is_special() {
            return Err(shape("expected relations of the form r = 1"));
        }
        let first = p.relations[0].lhs.letters();
        let mut pos = 0;
        let expect = |l: Letter, pos: &mut usize| -> Result<()> {
            if first.get(*pos) == Some(&l) {
                *pos += 1;
                Ok(())
            } else {
                Err(shape("first relation does not start with the idempotent word"))
            }
        };
        for a in base {
            expect(Letter::pos(a), &mut pos)?;
            expect(Letter::neg(a), &mut pos)?;
        }
        let mut wset = Vec::new();
        while first.get(pos) == Some(&Letter::pos(stable)) {
            let close = first[pos + 1..]
                .iter()
                .position(|l| *l == Letter::neg(stable))
                .ok_or_else(|| shape("unterminated conjugate"))?;
            let wj = Word(first[pos + 1..pos + 1 + close].to_vec());
            pos += close + 2;
            for l in formal_inverse(&wj).conjugate_by(stable).letters() {
                expect(l.clone(), &mut pos)?;
            }
            wset.push(wj);
        }
        for a in base {
            expect(Letter::neg(a), &mut pos)?;
            expect(Letter::pos(a), &mut pos)?;
        }
        let r1 = Word(first[pos..].to_vec());
        let relators: Vec<Word> = std::iter::once(r1).chain(p.relations[1..].iter().map(|r| r.lhs.clone())).collect();
        let group = GroupPresentation::new(Alphabet::new(base)?, relators)
            .map_err(|_| shape("relators mention the stable letter"))?;
        let ci = ConstructionInstance { group, wset, stable: stable.to_string(), note: None };
        ci.validate()?;
        if build_presentation(&ci)? != *p {
            return Err(shape("presentation does not round-trip"));
        }
        Ok(ci)
    }
}

/// `Inv⟨A ∪ {t} | e·r₁ = 1, r₂ = 1, …, r_m = 1⟩`.
pub fn build_presentation(ci: &ConstructionInstance) -> Result<InvPresentation> {
    ci.validate()?;
    let e = ci.e_word();
    let relators: Vec<Word> = ci
        .group
        .relators
        .iter()
        .enumerate()
        .map(|(i, r)| if i == 0 { e.concat(r) } else { r.clone() })
        .collect();
    InvPresentation::special(ci.alphabet()?, relators)
}

/// The split form `[e = 1, rᵢ = 1]` and the expanded form
/// `[rᵢ = 1, aa⁻¹ = 1, a⁻¹a = 1, tw_jt⁻¹tw_j⁻¹t⁻¹ = 1]`.
pub fn equivalent_presentations(p: &InvPresentation) -> Result<Vec<InvPresentation>> {
    let ci = ConstructionInstance::from_presentation(p)?;
    let alphabet = ci.alphabet()?;
    let split = std::iter::once(ci.e_word()).chain(ci.group.relators.iter().cloned()).collect();
    let mut expanded: Vec<Word> = ci.group.relators.clone();
    for a in ci.group.alphabet.names() {
        expanded.push(Word(vec![Letter::pos(a), Letter::neg(a)]));
        expanded.push(Word(vec![Letter::neg(a), Letter::pos(a)]));
    }
    for w in &ci.wset {
        let c = w.conjugate_by(&ci.stable);
        expanded.push(c.concat(&formal_inverse(&c)));
    }
    Ok(vec![InvPresentation::special(alphabet.clone(), split)?, InvPresentation::special(alphabet, expanded)?])
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QueryBundle {
    pub presentation: InvPresentation,
    pub probe: Word,
    /// `probe·probe⁻¹ = ε` over `presentation`.
    pub wp_instance: Relation,
    pub semantics: String,
}

pub fn membership_query(ci: &ConstructionInstance, u: &Word) -> Result<QueryBundle> {
    let probe = ci.probe(u)?;
    Ok(QueryBundle {
        presentation: build_presentation(ci)?,
        wp_instance: Relation::new(probe.concat(&formal_inverse(&probe)), Word::empty()),
        probe,
        semantics: SEMANTICS.to_string(),
    })
}

/// Budgeted right invertibility of the probe `tut⁻¹`.
pub fn probe_right_invertible(ci: &ConstructionInstance, u: &Word, budget: Budget) -> Result<RightInvertible> {
    let bundle = membership_query(ci, u)?;
    is_right_invertible(&bundle.presentation, &bundle.probe, budget)
}

/// Decides triviality of words in a fixed group.
pub trait GroupWordProblem: Send + Sync {
    fn is_trivial(&self, w: &Word) -> Result<bool>;

    fn name(&self) -> String;

    fn equal(&self, u: &Word, v: &Word) -> Result<bool> {
        self.is_trivial(&u.concat(&formal_inverse(v)))
    }
}

/// Free group: free reduction.
#[derive(Debug, Clone, Copy, Default)]
pub struct FreeGroupWp;

impl GroupWordProblem for FreeGroupWp {
    fn is_trivial(&self, w: &Word) -> Result<bool> {
        Ok(reduce(w).is_empty())
    }

    fn name(&self) -> String {
        "free group".into()
    }
}

/// `Gp⟨a, z | azaz⁻¹a⁻¹za⁻¹z⁻¹⟩`.
#[derive(Debug, Clone, Copy, Default)]
pub struct OneRelatorWp;

impl GroupWordProblem for OneRelatorWp {
    fn is_trivial(&self, w: &Word) -> Result<bool> {
        one_relator_wp(w)
    }

    fn name(&self) -> String {
        "Gp<a,z | azaz^-1a^-1za^-1z^-1>".into()
    }
}

/// `G ∗ F(X)`: a base group extended by free letters `X`.
pub struct FreeProductWp {
    pub base: Box<dyn GroupWordProblem>,
    pub free_letters: BTreeSet<String>,
}

enum Segment {
    Base(Word),
    Free(Word),
}

impl GroupWordProblem for FreeProductWp {
    /// Deletes trivial syllables and merges neighbours until the
    /// alternating sequence is reduced.
    fn is_trivial(&self, w: &Word) -> Result<bool> {
        let mut segs: Vec<Segment> = Vec::new();
        for l in w.letters() {
            let free = self.free_letters.contains(&*l.name);
            match segs.last_mut() {
                Some(Segment::Free(x)) if free => x.0.push(l.clone()),
                Some(Segment::Base(x)) if !free => x.0.push(l.clone()),
                _ if free => segs.push(Segment::Free(Word(vec![l.clone()]))),
                _ => segs.push(Segment::Base(Word(vec![l.clone()]))),
            }
        }
        loop {
            let mut trivial = None;
            for (i, s) in segs.iter().enumerate() {
                let t = match s {
                    Segment::Free(x) => reduce(x).is_empty(),
                    Segment::Base(x) => self.base.is_trivial(x)?,
                };
                if t {
                    trivial = Some(i);
                    break;
                }
            }
            let Some(i) = trivial else { break };
            segs.remove(i);
            if i > 0 && i < segs.len() {
                let next = segs.remove(i);
                match (&mut segs[i - 1], next) {
                    (Segment::Free(x), Segment::Free(y)) | (Segment::Base(x), Segment::Base(y)) => x.0.extend(y.0),
                    _ => unreachable!("neighbours of a removed syllable share a factor"),
                }
            }
        }
        Ok(segs.is_empty())
    }

    fn name(&self) -> String {
        let xs: Vec<&str> = self.free_letters.iter().map(String::as_str).collect();
        format!("({}) * F({})", self.base.name(), xs.join(","))
    }
}

/// The headline group `Gp⟨a, z | azaz⁻¹a⁻¹za⁻¹z⁻¹⟩`.
pub fn headline_group() -> GroupPresentation {
    GroupPresentation::new(Alphabet::new(["a", "z"]).expect("valid"), vec![one_relator()]).expect("valid")
}

pub fn headline_instance(wset: Vec<Word>) -> Result<ConstructionInstance> {
    let mut ci = ConstructionInstance::new(headline_group(), wset, "t")?;
    ci.note = Some(HEADLINE_NOTE.to_string());
    Ok(ci)
}

/// Same alphabet `{a, z}` with only the empty relator, so `G` is free.
pub fn toy_free_instance(wset: Vec<Word>) -> Result<ConstructionInstance> {
    let g = GroupPresentation::new(Alphabet::new(["a", "z"]).expect("valid"), vec![Word::empty()])?;
    ConstructionInstance::new(g, wset, "t")
}

/// A bundled oracle for `Gp⟨X | R⟩` when `R` reduces to nothing, or to the
/// headline relator over `a, z` (other letters free).
pub fn bundled_oracle(g: &GroupPresentation) -> Option<Box<dyn GroupWordProblem>> {
    let live: Vec<Word> = g.relators.iter().map(reduce).filter(|r| !r.is_empty()).collect();
    if live.is_empty() {
        return Some(Box::new(FreeGroupWp));
    }
    let headline = one_relator();
    if !live.iter().all(|r| *r == headline) || !g.alphabet.contains("a") || !g.alphabet.contains("z") {
        return None;
    }
    let free_letters: BTreeSet<String> =
        g.alphabet.names().iter().filter(|n| !matches!(&***n, "a" | "z")).map(|n| n.to_string()).collect();
    if free_letters.is_empty() {
        Some(Box::new(OneRelatorWp))
    } else {
        Some(Box::new(FreeProductWp { base: Box::new(OneRelatorWp), free_letters }))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Validity {
    Valid,
    Invalid,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub u: Word,
    /// 1-based indices into `W`.
    pub factorization: Vec<usize>,
    pub product: Word,
    pub probe: Word,
    pub oracle: String,
    pub validity: Validity,
}

/// Checks `u = w_{j₁}⋯w_{j_l}` in `G`; when valid, `tut⁻¹` is a product of
/// the right units `tw_jt⁻¹` in `M`.
pub fn forward_certificate(
    ci: &ConstructionInstance,
    u: &Word,
    factorization: &[usize],
    group_wp: Option<&dyn GroupWordProblem>,
) -> Result<Certificate> {
    let oracle = group_wp.ok_or_else(|| Error::OracleMissing(ci.group.to_string()))?;
    let mut product = Word::empty();
    for &j in factorization {
        let wj = ci.wset.get(j.wrapping_sub(1)).ok_or(Error::InvalidFactor(j))?;
        product = product.concat(wj);
    }
    let probe = ci.probe(u)?;
    let validity = if oracle.equal(u, &product)? { Validity::Valid } else { Validity::Invalid };
    Ok(Certificate { u: u.clone(), factorization: factorization.to_vec(), product, probe, oracle: oracle.name(), validity })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConsistencyRow {
    pub u: Word,
    pub v: Word,
    pub verdict: Verdict,
    /// Present when the monoid verdict was `Equal`.
    pub group_equal: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConsistencyReport {
    pub oracle: String,
    pub budget: Budget,
    pub rows: Vec<ConsistencyRow>,
    pub violations: usize,
}

/// Equality in `M` must survive in the maximal group image.
pub fn max_group_consistency(p: &InvPresentation, pairs: &[(Word, Word)], budget: Budget) -> Result<ConsistencyReport> {
    let image = max_group_image(p);
    let oracle = bundled_oracle(&image).ok_or_else(|| Error::OracleMissing(image.to_string()))?;
    let mut rows = Vec::new();
    let mut violations = 0;
    for (u, v) in pairs {
        let verdict = stephen_equal(p, u, v, budget)?;
        let group_equal = if verdict.is_equal() { Some(oracle.equal(u, v)?) } else { None };
        if group_equal == Some(false) {
            violations += 1;
        }
        rows.push(ConsistencyRow { u: u.clone(), v: v.clone(), verdict, group_equal });
    }
    Ok(ConsistencyReport { oracle: oracle.name(), budget, rows, violations })
}

impl fmt::Display for ConstructionInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ws: Vec<String> = self.wset.iter().map(|w| w.to_string()).collect();
        write!(f, "G = {}, W = {{{}}}, t = {}", self.group, ws.join(", "), self.stable)
    }
}
