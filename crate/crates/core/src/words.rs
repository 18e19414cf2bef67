//! Letters, alphabets and words over `A ∪ A⁻¹`.
//!
//! A [`Word`] is a plain sequence of signed letters; nothing is reduced
//! implicitly. Algorithms that need speed work on the dense encoding
//! [`Sym`] obtained from an [`Alphabet`], where generator `i` is `2i` and its
//! inverse is `2i + 1`.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Letter names are ASCII identifiers (`[A-Za-z_][A-Za-z0-9_]*`). A single
/// uppercase character is reserved for the inverse of its lowercase letter.
pub fn validate_name(name: &str) -> Result<()> {
    let mut chars = name.chars();
    let head_ok = chars.next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_');
    if !head_ok
        || !chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
        || (name.len() == 1 && name.as_bytes()[0].is_ascii_uppercase())
    {
        return Err(Error::InvalidLetter(name.to_string()));
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "i8", into = "i8")]
pub enum Sign {
    Pos,
    Neg,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Pos => Sign::Neg,
            Sign::Neg => Sign::Pos,
        }
    }
}

impl From<Sign> for i8 {
    fn from(s: Sign) -> i8 {
        match s {
            Sign::Pos => 1,
            Sign::Neg => -1,
        }
    }
}

impl TryFrom<i8> for Sign {
    type Error = String;

    fn try_from(v: i8) -> std::result::Result<Sign, String> {
        match v {
            1 => Ok(Sign::Pos),
            -1 => Ok(Sign::Neg),
            other => Err(format!("sign must be 1 or -1, got {other}")),
        }
    }
}

/// Serialized as the token `name` or `name^-1`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Letter {
    pub name: Arc<str>,
    pub sign: Sign,
}

impl Letter {
    pub fn new(name: &str, sign: Sign) -> Result<Letter> {
        validate_name(name)?;
        Ok(Letter { name: name.into(), sign })
    }

    pub fn pos(name: &str) -> Letter {
        Letter::new(name, Sign::Pos).expect("valid letter name")
    }

    pub fn neg(name: &str) -> Letter {
        Letter::new(name, Sign::Neg).expect("valid letter name")
    }

    pub fn inverse(&self) -> Letter {
        Letter { name: self.name.clone(), sign: self.sign.flip() }
    }

    pub fn is_inverse_of(&self, other: &Letter) -> bool {
        self.name == other.name && self.sign != other.sign
    }
}

impl From<Letter> for String {
    fn from(l: Letter) -> String {
        match l.sign {
            Sign::Pos => l.name.to_string(),
            Sign::Neg => format!("{}^-1", l.name),
        }
    }
}

impl TryFrom<String> for Letter {
    type Error = Error;

    fn try_from(tok: String) -> Result<Letter> {
        match tok.strip_suffix("^-1") {
            Some(name) => Letter::new(name, Sign::Neg),
            None => Letter::new(&tok, Sign::Pos),
        }
    }
}

fn short_name(name: &str) -> bool {
    name.len() == 1 && name.as_bytes()[0].is_ascii_lowercase()
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.sign {
            Sign::Pos => f.write_str(&self.name),
            Sign::Neg if short_name(&self.name) => {
                write!(f, "{}", self.name.to_ascii_uppercase())
            }
            Sign::Neg => write!(f, "{}^-1", self.name),
        }
    }
}

/// Finite sequence of signed letters, possibly empty.
///
/// Serialized as a list of letter tokens; also deserializes from a string in
/// the syntax of [`parse_word`].
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "WordSrc", into = "Vec<Letter>")]
pub struct Word(pub Vec<Letter>);

impl From<Word> for Vec<Letter> {
    fn from(w: Word) -> Vec<Letter> {
        w.0
    }
}

/// A word as written in a JSON file, before an alphabet is known.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum WordSrc {
    Letters(Vec<Letter>),
    Text(String),
}

impl WordSrc {
    pub fn resolve(&self, alphabet: Option<&Alphabet>) -> Result<Word> {
        match self {
            WordSrc::Letters(ls) => {
                let w = Word(ls.clone());
                if let Some(a) = alphabet {
                    a.check(&w)?;
                }
                Ok(w)
            }
            WordSrc::Text(t) => parse_word(t, alphabet),
        }
    }
}

impl TryFrom<WordSrc> for Word {
    type Error = Error;

    fn try_from(src: WordSrc) -> Result<Word> {
        src.resolve(None)
    }
}

fn compact_token(base: &str) -> bool {
    !base.is_empty() && base.chars().all(|c| c.is_ascii_alphabetic())
}

/// Parses whitespace-separated tokens. A token is `name`, `name^k` or
/// `name^-1`; `ε`, `1` and the empty string denote the empty word.
///
/// In compact mode every character is a letter and an uppercase character is
/// the inverse of its lowercase letter (`aAz` is `a a⁻¹ z`); an exponent then
/// applies to the last character. Compact mode is used when the alphabet
/// consists of one-character lowercase names, or, with no alphabet, when every
/// token is made of ASCII letters only.
pub fn parse_word(text: &str, alphabet: Option<&Alphabet>) -> Result<Word> {
    let text = text.trim();
    if text.is_empty() || text == "ε" || text == "1" {
        return Ok(Word::empty());
    }
    let text = text.replace('⁻', "^-").replace('¹', "1");
    let tokens: Vec<(&str, i64)> = text
        .split_whitespace()
        .map(|tok| match tok.split_once('^') {
            Some((base, e)) => e
                .parse::<i64>()
                .map(|e| (base, e))
                .map_err(|_| Error::Parse(format!("bad exponent in {tok:?}"))),
            None => Ok((tok, 1)),
        })
        .collect::<Result<_>>()?;
    let compact = match alphabet {
        Some(a) => a.is_single_char(),
        None => tokens.iter().all(|(b, _)| compact_token(b)),
    };
    let mut out = Vec::new();
    for (base, e) in tokens {
        let last = if compact {
            if !compact_token(base) {
                return Err(Error::Parse(format!("{base:?} is not a run of one-character letters")));
            }
            let mut chars: Vec<Letter> = base
                .chars()
                .map(|c| {
                    let name = c.to_ascii_lowercase().to_string();
                    Letter::new(&name, if c.is_ascii_uppercase() { Sign::Neg } else { Sign::Pos })
                })
                .collect::<Result<_>>()?;
            let last = chars.pop().expect("nonempty");
            out.extend(chars);
            last
        } else if base.len() == 1 && base.as_bytes()[0].is_ascii_uppercase() {
            Letter::new(&base.to_ascii_lowercase(), Sign::Neg)?
        } else {
            Letter::new(base, Sign::Pos)?
        };
        let l = if e < 0 { last.inverse() } else { last };
        out.extend(std::iter::repeat_n(l, e.unsigned_abs() as usize));
    }
    let w = Word(out);
    if let Some(a) = alphabet {
        a.check(&w)?;
    }
    Ok(w)
}

impl Word {
    pub fn empty() -> Word {
        Word(Vec::new())
    }

    pub fn from_letters(letters: impl IntoIterator<Item = Letter>) -> Word {
        Word(letters.into_iter().collect())
    }

    /// Word made of one positive letter.
    pub fn gen(name: &str) -> Word {
        Word(vec![Letter::pos(name)])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut out = self.0.clone();
        out.extend_from_slice(&other.0);
        Word(out)
    }

    pub fn pow(&self, n: usize) -> Word {
        Word(self.0.iter().cloned().cycle().take(self.0.len() * n).collect())
    }

    /// `t w t⁻¹` for a letter name `t`.
    pub fn conjugate_by(&self, stable: &str) -> Word {
        let mut out = Vec::with_capacity(self.len() + 2);
        out.push(Letter::pos(stable));
        out.extend_from_slice(&self.0);
        out.push(Letter::neg(stable));
        Word(out)
    }

    /// Letter names in order of first occurrence.
    pub fn names(&self) -> Vec<Arc<str>> {
        let mut seen: Vec<Arc<str>> = Vec::new();
        for l in &self.0 {
            if !seen.contains(&l.name) {
                seen.push(l.name.clone());
            }
        }
        seen
    }

    pub fn mentions(&self, name: &str) -> bool {
        self.0.iter().any(|l| &*l.name == name)
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Self {
        Word(iter.into_iter().collect())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("ε");
        }
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

/// Free reduction: deletes adjacent `x x⁻¹` pairs to exhaustion.
pub fn reduce(w: &Word) -> Word {
    let mut out: Vec<Letter> = Vec::with_capacity(w.len());
    for l in &w.0 {
        if out.last().is_some_and(|top| top.is_inverse_of(l)) {
            out.pop();
        } else {
            out.push(l.clone());
        }
    }
    Word(out)
}

pub fn formal_inverse(w: &Word) -> Word {
    w.0.iter().rev().map(Letter::inverse).collect()
}

/// All prefixes of the raw (unreduced) word, shortest first.
pub fn prefixes(w: &Word) -> Vec<Word> {
    (0..=w.len()).map(|k| Word(w.0[..k].to_vec())).collect()
}

pub fn is_idempotent_word(w: &Word) -> bool {
    reduce(w).is_empty()
}

/// `e(u₁, …, u_m) = u₁u₁⁻¹u₂u₂⁻¹…u_mu_m⁻¹`.
pub fn idempotent_word(us: &[Word]) -> Result<Word> {
    if us.is_empty() {
        return Err(Error::EmptyList);
    }
    let mut out = Vec::new();
    for u in us {
        out.extend_from_slice(&u.0);
        out.extend(formal_inverse(u).0);
    }
    Ok(Word(out))
}

/// Dense signed symbol: `2 * generator + (1 if inverse)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Sym(pub u32);

impl Sym {
    pub fn new(gen: usize, sign: Sign) -> Sym {
        Sym(2 * gen as u32 + u32::from(sign == Sign::Neg))
    }

    pub fn gen(self) -> usize {
        (self.0 >> 1) as usize
    }

    pub fn is_inverse(self) -> bool {
        self.0 & 1 == 1
    }

    pub fn inverse(self) -> Sym {
        Sym(self.0 ^ 1)
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

pub fn reduce_syms(w: &[Sym]) -> Vec<Sym> {
    let mut out: Vec<Sym> = Vec::with_capacity(w.len());
    for &s in w {
        if out.last() == Some(&s.inverse()) {
            out.pop();
        } else {
            out.push(s);
        }
    }
    out
}

pub fn inverse_syms(w: &[Sym]) -> Vec<Sym> {
    w.iter().rev().map(|s| s.inverse()).collect()
}

/// Ordered set of generator names; declaration order is the canonical order.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<String>", into = "Vec<String>")]
pub struct Alphabet {
    names: Vec<Arc<str>>,
}

impl Alphabet {
    pub fn new<S: AsRef<str>>(names: impl IntoIterator<Item = S>) -> Result<Alphabet> {
        let mut out: Vec<Arc<str>> = Vec::new();
        for n in names {
            let n = n.as_ref();
            validate_name(n)?;
            if out.iter().any(|m| &**m == n) {
                return Err(Error::DuplicateName(n.to_string()));
            }
            out.push(n.into());
        }
        Ok(Alphabet { names: out })
    }

    /// Alphabet of the names used by the given words, sorted by name.
    pub fn spanning<'a>(words: impl IntoIterator<Item = &'a Word>) -> Alphabet {
        let mut names: Vec<Arc<str>> = words.into_iter().flat_map(|w| w.names()).collect();
        names.sort();
        names.dedup();
        Alphabet { names }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[Arc<str>] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| &**n == name)
    }

    pub fn contains(&self, name: &str) -> bool {
        self.index_of(name).is_some()
    }

    /// Number of signed symbols.
    pub fn sym_count(&self) -> usize {
        2 * self.names.len()
    }

    pub fn with(&self, name: &str) -> Result<Alphabet> {
        Alphabet::new(self.names.iter().map(|n| &**n).chain(std::iter::once(name)))
    }

    /// True when every name is one lowercase ASCII character.
    pub fn is_single_char(&self) -> bool {
        self.names.iter().all(|n| short_name(n))
    }

    pub fn letter(&self, s: Sym) -> Letter {
        Letter {
            name: self.names[s.gen()].clone(),
            sign: if s.is_inverse() { Sign::Neg } else { Sign::Pos },
        }
    }

    pub fn encode(&self, w: &Word) -> Result<Vec<Sym>> {
        w.0.iter()
            .map(|l| {
                self.index_of(&l.name)
                    .map(|g| Sym::new(g, l.sign))
                    .ok_or_else(|| Error::UnknownVertex(l.name.to_string()))
            })
            .collect()
    }

    pub fn decode(&self, w: &[Sym]) -> Word {
        w.iter().map(|&s| self.letter(s)).collect()
    }

    pub fn check(&self, w: &Word) -> Result<()> {
        self.encode(w).map(|_| ())
    }
}

impl TryFrom<Vec<String>> for Alphabet {
    type Error = Error;

    fn try_from(v: Vec<String>) -> Result<Alphabet> {
        Alphabet::new(v)
    }
}

impl From<Alphabet> for Vec<String> {
    fn from(a: Alphabet) -> Vec<String> {
        a.names.iter().map(|n| n.to_string()).collect()
    }
}

/// Every word over `alphabet` of length at most `max_len`, in shortlex
/// order by symbol encoding.
pub fn all_words(alphabet: &Alphabet, max_len: usize) -> Vec<Word> {
    let n = alphabet.sym_count() as u32;
    let mut out = vec![Word::empty()];
    let mut layer: Vec<Vec<Sym>> = vec![Vec::new()];
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|x| {
                (0..n).map(move |s| {
                    let mut y = x.clone();
                    y.push(Sym(s));
                    y
                })
            })
            .collect();
        out.extend(layer.iter().map(|y| alphabet.decode(y)));
    }
    out
}

/// Builds a word from a compact one-char spec, `A` meaning `a⁻¹`.
/// Intended for tests and fixed constructions; panics on bad input.
pub fn w(spec: &str) -> Word {
    spec.chars()
        .filter(|c| !c.is_whitespace())
        .map(|c| {
            if c.is_ascii_uppercase() {
                Letter::neg(&c.to_ascii_lowercase().to_string())
            } else {
                Letter::pos(&c.to_string())
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn all_words_counts() {
        let a = Alphabet::new(["a", "z"]).unwrap();
        let ws = all_words(&a, 2);
        assert_eq!(ws.len(), 21);
        assert_eq!(ws[1], w("a"));
        assert_eq!(ws[5], w("aa"));
    }

    #[test]
    fn parse_examples() {
        assert_eq!(parse_word("a A z", None).unwrap(), w("aAz"));
        assert_eq!(parse_word("aAz", None).unwrap(), w("aAz"));
        assert_eq!(parse_word("a^-1 z^3", None).unwrap(), w("Azzz"));
        assert_eq!(parse_word("az^-2", None).unwrap(), w("aZZ"));
        assert_eq!(parse_word("a⁻¹", None).unwrap(), w("A"));
        for e in ["", "  ", "ε", "1"] {
            assert_eq!(parse_word(e, None).unwrap(), Word::empty());
        }
        let x = parse_word("x1 x1^-1 A", None).unwrap();
        assert_eq!(x.0, vec![Letter::pos("x1"), Letter::neg("x1"), Letter::neg("a")]);
        let ab = Alphabet::new(["ab", "c"]).unwrap();
        assert_eq!(parse_word("ab c^-1", Some(&ab)).unwrap().0, vec![Letter::pos("ab"), Letter::neg("c")]);
        assert!(matches!(parse_word("ab d", Some(&ab)), Err(Error::UnknownVertex(_))));
        assert!(parse_word("a^x", None).is_err());
        assert!(Letter::new("A", Sign::Pos).is_err());
    }

    #[test]
    fn json_forms() {
        let x = w("aZ");
        assert_eq!(serde_json::to_string(&x).unwrap(), r#"["a","z^-1"]"#);
        assert_eq!(serde_json::from_str::<Word>(r#"["a","z^-1"]"#).unwrap(), x);
        assert_eq!(serde_json::from_str::<Word>(r#""a Z""#).unwrap(), x);
        assert!(serde_json::from_str::<Word>(r#"["a^"]"#).is_err());
    }

    #[test]
    fn reduce_examples() {
        assert_eq!(reduce(&w("aAz")), w("z"));
        assert_eq!(reduce(&Word::empty()), Word::empty());
        assert_eq!(reduce(&w("azaZAzAZ")), w("azaZAzAZ"));
        assert_eq!(reduce(&w("azZA")), Word::empty());
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(formal_inverse(&w("az")), w("ZA"));
        assert_eq!(formal_inverse(&Word::empty()), Word::empty());
        assert_eq!(formal_inverse(&w("A")), w("a"));
    }

    #[test]
    fn prefixes_examples() {
        assert_eq!(prefixes(&w("ab")), vec![w(""), w("a"), w("ab")]);
        assert_eq!(prefixes(&Word::empty()), vec![Word::empty()]);
        assert_eq!(prefixes(&w("aA")), vec![w(""), w("a"), w("aA")]);
    }

    #[test]
    fn idempotent_examples() {
        assert!(is_idempotent_word(&w("aA")));
        assert!(!is_idempotent_word(&w("a")));
        assert!(is_idempotent_word(&w("aAzZ")));
        assert_eq!(idempotent_word(&[w("a")]).unwrap(), w("aA"));
        assert_eq!(idempotent_word(&[w("a"), w("z")]).unwrap(), w("aAzZ"));
        assert_eq!(idempotent_word(&[w("taT")]).unwrap(), w("taTtAT"));
        assert_eq!(idempotent_word(&[]), Err(Error::EmptyList));
    }

    #[test]
    fn names_are_validated() {
        assert!(Letter::new("x1", Sign::Pos).is_ok());
        for bad in ["", "a b", "a^", "a-", "a'", "a\"", "a,b", "é"] {
            assert!(Letter::new(bad, Sign::Pos).is_err(), "{bad}");
        }
        assert!(matches!(Alphabet::new(["a", "a"]), Err(Error::DuplicateName(_))));
    }

    #[test]
    fn display_uses_case_for_short_names() {
        assert_eq!(w("aAz").to_string(), "a A z");
        let long = Word(vec![Letter::neg("x1"), Letter::pos("y")]);
        assert_eq!(long.to_string(), "x1^-1 y");
        assert_eq!(Word::empty().to_string(), "ε");
    }

    #[test]
    fn encode_roundtrip_and_unknown() {
        let a = Alphabet::new(["a", "z"]).unwrap();
        let enc = a.encode(&w("aZ")).unwrap();
        assert_eq!(enc, vec![Sym(0), Sym(3)]);
        assert_eq!(a.decode(&enc), w("aZ"));
        assert!(matches!(a.encode(&w("b")), Err(Error::UnknownVertex(_))));
    }

    fn word_strategy(max: usize) -> impl Strategy<Value = Word> {
        proptest::collection::vec(0u8..4, 0..=max).prop_map(|v| {
            v.into_iter()
                .map(|c| match c {
                    0 => Letter::pos("a"),
                    1 => Letter::neg("a"),
                    2 => Letter::pos("z"),
                    _ => Letter::neg("z"),
                })
                .collect()
        })
    }

    proptest! {
        #[test]
        fn reduce_is_idempotent_and_shrinking(x in word_strategy(20)) {
            let r = reduce(&x);
            prop_assert_eq!(reduce(&r), r.clone());
            prop_assert!(r.len() <= x.len());
            prop_assert!(r.0.windows(2).all(|p| !p[0].is_inverse_of(&p[1])));
        }

        #[test]
        fn inverse_commutes_with_reduce(x in word_strategy(20)) {
            prop_assert_eq!(formal_inverse(&reduce(&x)), reduce(&formal_inverse(&x)));
            prop_assert_eq!(formal_inverse(&formal_inverse(&x)), x);
        }

        #[test]
        fn idempotent_word_is_idempotent(us in proptest::collection::vec(word_strategy(6), 1..5)) {
            prop_assert!(is_idempotent_word(&idempotent_word(&us).unwrap()));
        }

        #[test]
        fn prefixes_chain(x in word_strategy(20)) {
            let ps = prefixes(&x);
            prop_assert_eq!(ps.len(), x.len() + 1);
            for pair in ps.windows(2) {
                prop_assert!(pair[1].0.starts_with(&pair[0].0));
            }
        }

        #[test]
        fn display_parses_back(x in word_strategy(12), long in any::<bool>()) {
            let x = if long {
                x.0.iter().map(|l| Letter { name: format!("{}1", l.name).into(), sign: l.sign }).collect()
            } else {
                x
            };
            let a = Alphabet::spanning([&x]);
            prop_assert_eq!(parse_word(&x.to_string(), Some(&a)).unwrap(), x.clone());
            prop_assert_eq!(parse_word(&x.to_string(), None).unwrap(), x.clone());
            let json = serde_json::to_string(&x).unwrap();
            prop_assert_eq!(serde_json::from_str::<Word>(&json).unwrap(), x);
        }
    }
}
