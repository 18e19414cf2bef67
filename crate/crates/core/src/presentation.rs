//! Inverse monoid and group presentations.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::words::{formal_inverse, Alphabet, Word, WordSrc};

/// Resolves words against `alphabet`, or infers a sorted alphabet from them.
fn resolve_all(alphabet: Option<Alphabet>, srcs: &[&WordSrc]) -> Result<(Alphabet, Vec<Word>)> {
    let words = srcs.iter().map(|s| s.resolve(alphabet.as_ref())).collect::<Result<Vec<_>>>()?;
    let alphabet = alphabet.unwrap_or_else(|| Alphabet::spanning(&words));
    Ok((alphabet, words))
}

#[derive(Deserialize)]
struct RelationJson {
    lhs: WordSrc,
    #[serde(default = "empty_src")]
    rhs: WordSrc,
}

fn empty_src() -> WordSrc {
    WordSrc::Letters(Vec::new())
}

/// File form: words may be letter lists or strings; `relators` is shorthand
/// for relations with empty right-hand side; `alphabet` may be omitted.
#[derive(Deserialize)]
struct InvPresentationJson {
    alphabet: Option<Alphabet>,
    #[serde(default)]
    relations: Vec<RelationJson>,
    #[serde(default)]
    relators: Vec<WordSrc>,
}

impl TryFrom<InvPresentationJson> for InvPresentation {
    type Error = crate::Error;

    fn try_from(j: InvPresentationJson) -> Result<InvPresentation> {
        let mut srcs: Vec<&WordSrc> = j.relations.iter().flat_map(|r| [&r.lhs, &r.rhs]).collect();
        srcs.extend(&j.relators);
        let (alphabet, words) = resolve_all(j.alphabet, &srcs)?;
        let n = 2 * j.relations.len();
        let mut relations: Vec<Relation> =
            words[..n].chunks(2).map(|p| Relation::new(p[0].clone(), p[1].clone())).collect();
        relations.extend(words[n..].iter().cloned().map(Relation::relator));
        InvPresentation::new(alphabet, relations)
    }
}

#[derive(Deserialize)]
struct GroupPresentationJson {
    alphabet: Option<Alphabet>,
    #[serde(default)]
    relators: Vec<WordSrc>,
}

impl TryFrom<GroupPresentationJson> for GroupPresentation {
    type Error = crate::Error;

    fn try_from(j: GroupPresentationJson) -> Result<GroupPresentation> {
        let srcs: Vec<&WordSrc> = j.relators.iter().collect();
        let (alphabet, words) = resolve_all(j.alphabet, &srcs)?;
        GroupPresentation::new(alphabet, words)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Relation {
    pub lhs: Word,
    pub rhs: Word,
}

impl Relation {
    pub fn new(lhs: Word, rhs: Word) -> Relation {
        Relation { lhs, rhs }
    }

    /// `r = 1`.
    pub fn relator(r: Word) -> Relation {
        Relation { lhs: r, rhs: Word::empty() }
    }
}

/// `Inv⟨A | uᵢ = vᵢ⟩`. A relation `w = 1` has an empty right-hand side.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "InvPresentationJson")]
pub struct InvPresentation {
    pub alphabet: Alphabet,
    pub relations: Vec<Relation>,
}

impl InvPresentation {
    pub fn new(alphabet: Alphabet, relations: Vec<Relation>) -> Result<InvPresentation> {
        for r in &relations {
            alphabet.check(&r.lhs)?;
            alphabet.check(&r.rhs)?;
        }
        Ok(InvPresentation { alphabet, relations })
    }

    /// Free inverse monoid on `alphabet`.
    pub fn free(alphabet: Alphabet) -> InvPresentation {
        InvPresentation { alphabet, relations: Vec::new() }
    }

    /// `Inv⟨a | aa⁻¹ = 1⟩`.
    pub fn bicyclic() -> InvPresentation {
        InvPresentation {
            alphabet: Alphabet::new(["a"]).expect("valid"),
            relations: vec![Relation::relator(crate::words::w("aA"))],
        }
    }

    pub fn special(alphabet: Alphabet, relators: Vec<Word>) -> Result<InvPresentation> {
        InvPresentation::new(alphabet, relators.into_iter().map(Relation::relator).collect())
    }

    pub fn is_special(&self) -> bool {
        self.relations.iter().all(|r| r.rhs.is_empty())
    }
}

impl fmt::Display for InvPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Inv⟨{} | ", self.alphabet.names().join(","))?;
        for (i, r) in self.relations.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            let rhs = if r.rhs.is_empty() { "1".to_string() } else { r.rhs.to_string() };
            write!(f, "{} = {}", r.lhs, rhs)?;
        }
        f.write_str("⟩")
    }
}

/// `Gp⟨A | R⟩`, each relator `r` meaning `r = 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "GroupPresentationJson")]
pub struct GroupPresentation {
    pub alphabet: Alphabet,
    pub relators: Vec<Word>,
}

impl GroupPresentation {
    pub fn new(alphabet: Alphabet, relators: Vec<Word>) -> Result<GroupPresentation> {
        for r in &relators {
            alphabet.check(r)?;
        }
        Ok(GroupPresentation { alphabet, relators })
    }

    /// True when every relator freely reduces to the empty word, so the group is free.
    pub fn is_free(&self) -> bool {
        self.relators.iter().all(crate::words::is_idempotent_word)
    }
}

impl fmt::Display for GroupPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Gp⟨{} | ", self.alphabet.names().join(","))?;
        for (i, r) in self.relators.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{r} = 1")?;
        }
        f.write_str("⟩")
    }
}

/// Maximal group image: same generators, relation `u = v` read as relator `uv⁻¹`.
pub fn max_group_image(pres: &InvPresentation) -> GroupPresentation {
    GroupPresentation {
        alphabet: pres.alphabet.clone(),
        relators: pres.relations.iter().map(|r| r.lhs.concat(&formal_inverse(&r.rhs))).collect(),
    }
}
