//! Letters, words over them, identities and substitutions.
//!
//! A [`Letter`] is a structured symbol: a lowercase base name, an optional
//! integer subscript tuple and an optional superscript. This is enough to
//! name every letter the word families need (`x`, `s_3`, `x[1,2]^4`, ...).

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Deref, Index};
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("invalid letter: {0}")]
    InvalidLetter(String),
    #[error("letter {letter} has fewer than {index} occurrences")]
    MissingOccurrence { letter: String, index: usize },
    #[error("occurrence {first_index} of {first} does not precede occurrence {second_index} of {second}")]
    WrongOrder {
        first: String,
        first_index: usize,
        second: String,
        second_index: usize,
    },
    #[error("empty pattern")]
    EmptyPattern,
}

fn syntax(pos: usize, msg: impl Into<String>) -> WordError {
    WordError::Syntax {
        pos,
        msg: msg.into(),
    }
}

/// A structured letter `base_sub^sup`.
///
/// Ordering is lexicographic on the base, then on the subscript tuple, then
/// on the superscript with an absent superscript sorting first.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    base: String,
    sub: Vec<u32>,
    sup: Option<u32>,
}

impl Letter {
    pub fn new(base: &str, sub: Vec<u32>, sup: Option<u32>) -> Result<Letter, WordError> {
        if base.is_empty() || !base.bytes().all(|b| b.is_ascii_lowercase()) {
            return Err(WordError::InvalidLetter(format!("bad base name {base:?}")));
        }
        if sup == Some(0) {
            return Err(WordError::InvalidLetter("superscript must be positive".into()));
        }
        // A bare multi-character base would read back as several letters.
        if base.len() > 1 && sub.is_empty() && sup.is_none() {
            return Err(WordError::InvalidLetter(format!(
                "multi-character base {base:?} needs a subscript or superscript"
            )));
        }
        Ok(Letter {
            base: base.to_owned(),
            sub,
            sup,
        })
    }

    /// A plain single-character letter such as `x`.
    pub fn plain(c: char) -> Letter {
        assert!(c.is_ascii_lowercase(), "plain letters are lowercase ascii");
        Letter {
            base: c.to_string(),
            sub: Vec::new(),
            sup: None,
        }
    }

    /// Letter with a subscript tuple and optional superscript; panics on an
    /// invalid base. Used by the family constructors where names are fixed.
    pub(crate) fn sym(base: &str, sub: &[u32], sup: Option<u32>) -> Letter {
        Letter::new(base, sub.to_vec(), sup).expect("well-formed built-in letter")
    }

    pub fn base(&self) -> &str {
        &self.base
    }

    pub fn sub(&self) -> &[u32] {
        &self.sub
    }

    pub fn sup(&self) -> Option<u32> {
        self.sup
    }

    fn is_compact(&self) -> bool {
        self.base.len() == 1 && self.sub.is_empty() && self.sup.is_none()
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.base)?;
        match self.sub.as_slice() {
            [] => {}
            [k] => write!(f, "_{k}")?,
            many => {
                f.write_str("[")?;
                for (i, k) in many.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{k}")?;
                }
                f.write_str("]")?;
            }
        }
        if let Some(j) = self.sup {
            write!(f, "^{j}")?;
        }
        Ok(())
    }
}

impl FromStr for Letter {
    type Err = WordError;

    fn from_str(s: &str) -> Result<Letter, WordError> {
        let w = parse_word(s)?;
        match w.letters() {
            [l] => Ok(l.clone()),
            _ => Err(WordError::InvalidLetter(format!("{s:?} is not a single letter"))),
        }
    }
}

impl Serialize for Letter {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Letter {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Letter, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// An element of the free monoid: a finite sequence of letters. The empty
/// word is the identity element.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Word {
        Word(Vec::new())
    }

    pub fn from_letters(letters: Vec<Letter>) -> Word {
        Word(letters)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.0
    }

    pub fn push(&mut self, l: Letter) {
        self.0.push(l);
    }

    pub fn extend_from(&mut self, other: &Word) {
        self.0.extend_from_slice(&other.0);
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut out = self.0.clone();
        out.extend_from_slice(&other.0);
        Word(out)
    }

    /// The factor occupying positions `start..end` (0-based, half-open).
    pub fn factor(&self, start: usize, end: usize) -> Word {
        Word(self.0[start..end].to_vec())
    }

    pub fn content(&self) -> BTreeSet<Letter> {
        self.0.iter().cloned().collect()
    }

    /// Letters in order of first occurrence.
    pub fn letters_by_first_occurrence(&self) -> Vec<Letter> {
        let mut seen = BTreeSet::new();
        self.0
            .iter()
            .filter(|l| seen.insert(*l))
            .cloned()
            .collect()
    }

    pub fn occurrence_counts(&self) -> BTreeMap<Letter, usize> {
        let mut counts = BTreeMap::new();
        for l in &self.0 {
            *counts.entry(l.clone()).or_insert(0) += 1;
        }
        counts
    }

    pub fn occurrences(&self, l: &Letter) -> usize {
        self.0.iter().filter(|x| *x == l).count()
    }

    pub fn simple_letters(&self) -> BTreeSet<Letter> {
        self.occurrence_counts()
            .into_iter()
            .filter(|(_, c)| *c == 1)
            .map(|(l, _)| l)
            .collect()
    }

    pub fn multiple_letters(&self) -> BTreeSet<Letter> {
        self.occurrence_counts()
            .into_iter()
            .filter(|(_, c)| *c >= 2)
            .map(|(l, _)| l)
            .collect()
    }

    /// Subsequence of `self` consisting of the occurrences of kept letters.
    pub fn restrict(&self, keep: &BTreeSet<Letter>) -> Word {
        Word(self.0.iter().filter(|l| keep.contains(*l)).cloned().collect())
    }

    pub fn reverse(&self) -> Word {
        Word(self.0.iter().rev().cloned().collect())
    }

    /// 0-based position of the `index`th (1-based) occurrence of `l`.
    pub fn position_of(&self, l: &Letter, index: usize) -> Option<usize> {
        if index == 0 {
            return None;
        }
        self.0
            .iter()
            .enumerate()
            .filter(|(_, x)| *x == l)
            .nth(index - 1)
            .map(|(p, _)| p)
    }

    /// The factor strictly between the `i`th occurrence of `a` and the `j`th
    /// occurrence of `b` (occurrences are 1-based).
    pub fn subword_between(
        &self,
        a: &Letter,
        i: usize,
        b: &Letter,
        j: usize,
    ) -> Result<Word, WordError> {
        let pa = self
            .position_of(a, i)
            .ok_or_else(|| WordError::MissingOccurrence {
                letter: a.to_string(),
                index: i,
            })?;
        let pb = self
            .position_of(b, j)
            .ok_or_else(|| WordError::MissingOccurrence {
                letter: b.to_string(),
                index: j,
            })?;
        if pa >= pb {
            return Err(WordError::WrongOrder {
                first: a.to_string(),
                first_index: i,
                second: b.to_string(),
                second_index: j,
            });
        }
        Ok(self.factor(pa + 1, pb))
    }

    /// Number of (possibly overlapping) occurrences of `pattern` as a factor.
    pub fn count_factor(&self, pattern: &Word) -> Result<usize, WordError> {
        if pattern.is_empty() {
            return Err(WordError::EmptyPattern);
        }
        Ok(self.0.windows(pattern.len()).filter(|w| *w == pattern.letters()).count())
    }

    pub fn is_linear(&self) -> bool {
        self.content().len() == self.len()
    }
}

impl Deref for Word {
    type Target = [Letter];

    fn deref(&self) -> &[Letter] {
        &self.0
    }
}

impl Index<usize> for Word {
    type Output = Letter;

    fn index(&self, i: usize) -> &Letter {
        &self.0[i]
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Word {
        Word(iter.into_iter().collect())
    }
}

impl<'a> IntoIterator for &'a Word {
    type Item = &'a Letter;
    type IntoIter = std::slice::Iter<'a, Letter>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        if self.0.iter().all(Letter::is_compact) {
            for l in &self.0 {
                f.write_str(&l.base)?;
            }
            return Ok(());
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

impl FromStr for Word {
    type Err = WordError;

    fn from_str(s: &str) -> Result<Word, WordError> {
        parse_word(s)
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Word, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Parses the word grammar.
///
/// Whitespace separates tokens. A token with no `[`, `_` or `^` is compact:
/// each character is a letter of its own. Otherwise the token is a single
/// structured letter `base[i,j,..]^k` or `base_i^k`. The tokens `1` and `λ`
/// denote the empty word.
pub fn parse_word(text: &str) -> Result<Word, WordError> {
    let mut letters = Vec::new();
    let mut pos = 0;
    for token in text.split_whitespace() {
        let start = pos + text[pos..].find(token).expect("token comes from text");
        pos = start + token.len();
        if token == "1" || token == "λ" {
            continue;
        }
        if token.contains(['[', '_', '^']) {
            letters.push(parse_structured(token, start)?);
        } else {
            for (off, c) in token.char_indices() {
                if !c.is_ascii_lowercase() {
                    return Err(syntax(start + off, format!("unexpected character {c:?}")));
                }
                letters.push(Letter::plain(c));
            }
        }
    }
    Ok(Word(letters))
}

fn parse_structured(token: &str, offset: usize) -> Result<Letter, WordError> {
    let bytes = token.as_bytes();
    let mut i = 0;
    while i < bytes.len() && bytes[i].is_ascii_lowercase() {
        i += 1;
    }
    if i == 0 {
        return Err(syntax(offset, "letter must start with a lowercase base"));
    }
    let base = &token[..i];

    let read_int = |i: &mut usize| -> Result<u32, WordError> {
        let s = *i;
        while *i < bytes.len() && bytes[*i].is_ascii_digit() {
            *i += 1;
        }
        if s == *i {
            return Err(syntax(offset + s, "expected an integer"));
        }
        token[s..*i]
            .parse()
            .map_err(|_| syntax(offset + s, "integer out of range"))
    };

    let mut sub = Vec::new();
    if i < bytes.len() && bytes[i] == b'[' {
        i += 1;
        loop {
            sub.push(read_int(&mut i)?);
            match bytes.get(i) {
                Some(b',') => i += 1,
                Some(b']') => {
                    i += 1;
                    break;
                }
                _ => return Err(syntax(offset + i, "expected ',' or ']'")),
            }
        }
    }
    if i < bytes.len() && bytes[i] == b'_' {
        if !sub.is_empty() {
            return Err(syntax(offset + i, "subscript given twice"));
        }
        i += 1;
        sub.push(read_int(&mut i)?);
    }
    let mut sup = None;
    if i < bytes.len() && bytes[i] == b'^' {
        i += 1;
        let at = i;
        let j = read_int(&mut i)?;
        if j == 0 {
            return Err(syntax(offset + at, "superscript must be positive"));
        }
        sup = Some(j);
    }
    if i != bytes.len() {
        return Err(syntax(offset + i, format!("unexpected {:?}", &token[i..])));
    }
    Letter::new(base, sub, sup).map_err(|e| syntax(offset, e.to_string()))
}

pub fn format_word(w: &Word) -> String {
    w.to_string()
}

/// An identity `lhs ≈ rhs`, optionally named.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Identity {
    pub lhs: Word,
    pub rhs: Word,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub name: Option<String>,
}

impl Identity {
    pub fn new(lhs: Word, rhs: Word) -> Identity {
        Identity {
            lhs,
            rhs,
            name: None,
        }
    }

    pub fn named(name: &str, lhs: Word, rhs: Word) -> Identity {
        Identity {
            lhs,
            rhs,
            name: Some(name.to_owned()),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.lhs == self.rhs
    }

    pub fn content(&self) -> BTreeSet<Letter> {
        let mut c = self.lhs.content();
        c.extend(self.rhs.content());
        c
    }

    /// The identity with both sides reversed (the dual identity).
    pub fn reversed(&self) -> Identity {
        Identity {
            lhs: self.lhs.reverse(),
            rhs: self.rhs.reverse(),
            name: self.name.as_ref().map(|n| format!("rev({n})")),
        }
    }

    pub fn swapped(&self) -> Identity {
        Identity {
            lhs: self.rhs.clone(),
            rhs: self.lhs.clone(),
            name: self.name.clone(),
        }
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(n) = &self.name {
            write!(f, "{n}: ")?;
        }
        write!(f, "{} = {}", self.lhs, self.rhs)
    }
}

impl FromStr for Identity {
    type Err = WordError;

    /// Parses `[name:] LHS = RHS`; `≈` is accepted in place of `=`.
    fn from_str(s: &str) -> Result<Identity, WordError> {
        let (name, body, body_off) = match s.find(':') {
            Some(c) => (Some(s[..c].trim().to_owned()), &s[c + 1..], c + 1),
            None => (None, s, 0),
        };
        let (eq, eq_len) = match (body.find('='), body.find('≈')) {
            (Some(i), _) => (i, 1),
            (None, Some(i)) => (i, '≈'.len_utf8()),
            (None, None) => return Err(syntax(body_off, "expected '='")),
        };
        let shift = |e: WordError, by: usize| match e {
            WordError::Syntax { pos, msg } => WordError::Syntax { pos: pos + by, msg },
            other => other,
        };
        let lhs = parse_word(&body[..eq]).map_err(|e| shift(e, body_off))?;
        let rhs = parse_word(&body[eq + eq_len..]).map_err(|e| shift(e, body_off + eq + eq_len))?;
        if body[eq + eq_len..].contains(['=', '≈']) {
            return Err(syntax(body_off + eq + eq_len, "more than one '='"));
        }
        Ok(Identity {
            lhs,
            rhs,
            name: name.filter(|n| !n.is_empty()),
        })
    }
}

/// An endomorphism of the free monoid with identity, given on finitely many
/// letters. Unmapped letters are fixed, or erased when `erase_unmapped` is
/// set.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Substitution {
    map: BTreeMap<Letter, Word>,
    erase_unmapped: bool,
}

impl Substitution {
    pub fn identity() -> Substitution {
        Substitution::default()
    }

    /// A substitution sending every letter not explicitly mapped to λ.
    pub fn erasing() -> Substitution {
        Substitution {
            map: BTreeMap::new(),
            erase_unmapped: true,
        }
    }

    pub fn from_pairs<I: IntoIterator<Item = (Letter, Word)>>(pairs: I) -> Substitution {
        Substitution {
            map: pairs.into_iter().collect(),
            erase_unmapped: false,
        }
    }

    pub fn set(&mut self, l: Letter, image: Word) {
        self.map.insert(l, image);
    }

    pub fn image(&self, l: &Letter) -> Word {
        match self.map.get(l) {
            Some(w) => w.clone(),
            None if self.erase_unmapped => Word::empty(),
            None => Word(vec![l.clone()]),
        }
    }

    pub fn get(&self, l: &Letter) -> Option<&Word> {
        self.map.get(l)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Letter, &Word)> {
        self.map.iter()
    }

    pub fn apply(&self, w: &Word) -> Word {
        let mut out = Vec::with_capacity(w.len());
        for l in w {
            match self.map.get(l) {
                Some(img) => out.extend_from_slice(img.letters()),
                None if self.erase_unmapped => {}
                None => out.push(l.clone()),
            }
        }
        Word(out)
    }
}

impl fmt::Display for Substitution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (l, w)) in self.map.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{l} -> {w}")?;
        }
        if self.erase_unmapped {
            f.write_str(if self.map.is_empty() { "* -> 1" } else { ", * -> 1" })?;
        }
        f.write_str("}")
    }
}

impl Serialize for Substitution {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_map(self.map.iter().map(|(l, w)| (l.to_string(), w.to_string())))
    }
}

/// Shorthand used throughout the crate and its tests: parse a word that is
/// known to be well formed.
pub fn w(text: &str) -> Word {
    parse_word(text).unwrap_or_else(|e| panic!("bad word {text:?}: {e}"))
}

/// Shorthand for a known-good identity.
pub fn ident(text: &str) -> Identity {
    text.parse()
        .unwrap_or_else(|e| panic!("bad identity {text:?}: {e}"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn set(text: &str) -> BTreeSet<Letter> {
        w(text).content()
    }

    #[test]
    fn parses_compact_and_structured() {
        assert_eq!(w("abcdxcbyezaed").len(), 13);
        assert!(w("").is_empty());
        let s = w("x[1,2]^3 s_1 y");
        assert_eq!(
            s.letters(),
            &[
                Letter::new("x", vec![1, 2], Some(3)).unwrap(),
                Letter::new("s", vec![1], None).unwrap(),
                Letter::plain('y'),
            ]
        );
        assert_eq!(s.to_string(), "x[1,2]^3 s_1 y");
        assert_eq!(w("x[3]").to_string(), "x_3");
        assert_eq!(w("x_0").letters()[0].sub(), &[0]);
    }

    #[test]
    fn syntax_errors_carry_positions() {
        for (text, pos) in [("x[1,", 4), ("ab x[1;2]", 6), ("x^0", 2), ("X", 0), ("x_1 y^", 6), ("_1", 0)] {
            match parse_word(text) {
                Err(WordError::Syntax { pos: p, .. }) => assert_eq!(p, pos, "{text}"),
                other => panic!("{text}: {other:?}"),
            }
        }
    }

    #[test]
    fn content_and_letter_kinds() {
        assert!(Word::empty().content().is_empty());
        assert_eq!(w("xysxty").content(), set("xyst"));
        let ex = w("abcdxcbyezaed");
        assert_eq!(ex.simple_letters(), set("xyz"));
        assert_eq!(ex.multiple_letters(), set("abcde"));
        assert!(w("xx").simple_letters().is_empty());
        assert_eq!(w("xx").multiple_letters(), set("x"));
        assert_eq!(w("xysxty").simple_letters(), set("st"));
        assert_eq!(w("xysxty").multiple_letters(), set("xy"));
    }

    #[test]
    fn restrict_keeps_order() {
        assert_eq!(w("xysxty").restrict(&set("xt")), w("xxt"));
        assert_eq!(w("abcdxcbyezaed").restrict(&set("ae")), w("aeae"));
        let u = w("abcdxcbyezaed");
        assert_eq!(u.restrict(&u.content()), u);
    }

    #[test]
    fn reverse_examples() {
        assert_eq!(Word::empty().reverse(), Word::empty());
        assert_eq!(w("xysxty").reverse(), w("ytxsyx"));
    }

    #[test]
    fn substitution_deletes_and_fixes() {
        let del_t = Substitution::from_pairs([(Letter::plain('t'), Word::empty())]);
        assert_eq!(del_t.apply(&w("xyzxty")), w("xyzxy"));
        assert_eq!(Substitution::identity().apply(&w("abcdxcbyezaed")), w("abcdxcbyezaed"));
        let mut er = Substitution::erasing();
        er.set(Letter::plain('x'), w("ab"));
        assert_eq!(er.apply(&w("xyx")), w("abab"));
    }

    #[test]
    fn subword_between_examples() {
        let (x, a, b) = (Letter::plain('x'), Letter::plain('a'), Letter::plain('b'));
        assert_eq!(w("xysxty").subword_between(&x, 1, &x, 2).unwrap(), w("ys"));
        assert_eq!(w("xx").subword_between(&x, 1, &x, 2).unwrap(), Word::empty());
        assert_eq!(w("abcdxcbyezaed").subword_between(&b, 2, &a, 2).unwrap(), w("yez"));
        assert!(matches!(
            w("xx").subword_between(&x, 1, &x, 3),
            Err(WordError::MissingOccurrence { .. })
        ));
        assert!(matches!(
            w("xyx").subword_between(&x, 2, &x, 1),
            Err(WordError::WrongOrder { .. })
        ));
    }

    #[test]
    fn factor_counts() {
        assert_eq!(w("xysxty").count_factor(&w("xy")).unwrap(), 1);
        assert_eq!(w("aaa").count_factor(&w("aa")).unwrap(), 2);
        assert_eq!(w("xysxty").count_factor(&w("zz")).unwrap(), 0);
        assert_eq!(w("x").count_factor(&Word::empty()), Err(WordError::EmptyPattern));
    }

    #[test]
    fn identity_parsing() {
        let id: Identity = "sigma1: xyzxty = yxzxty".parse().unwrap();
        assert_eq!(id.name.as_deref(), Some("sigma1"));
        assert_eq!(id.rhs, w("yxzxty"));
        let id: Identity = "x = 1".parse().unwrap();
        assert!(id.rhs.is_empty());
        assert!("xy".parse::<Identity>().is_err());
        assert!("x = y = z".parse::<Identity>().is_err());
        assert_eq!(ident("xy ≈ yx").rhs, w("yx"));
    }

    fn arb_letter() -> impl Strategy<Value = Letter> {
        prop_oneof![
            (0u8..6).prop_map(|c| Letter::plain((b'a' + c) as char)),
            (0u8..3, prop::collection::vec(0u32..4, 1..4), prop::option::of(1u32..4))
                .prop_map(|(c, sub, sup)| Letter::new(&((b'p' + c) as char).to_string(), sub, sup).unwrap()),
        ]
    }

    fn arb_word() -> impl Strategy<Value = Word> {
        prop::collection::vec(arb_letter(), 0..12).prop_map(Word::from_letters)
    }

    fn arb_subst() -> impl Strategy<Value = Substitution> {
        prop::collection::vec((arb_letter(), arb_word()), 0..5).prop_map(Substitution::from_pairs)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn format_parse_round_trip(u in arb_word()) {
            prop_assert_eq!(parse_word(&u.to_string()).unwrap(), u);
        }

        #[test]
        fn substitution_is_an_endomorphism(s in arb_subst(), u in arb_word(), v in arb_word()) {
            prop_assert_eq!(s.apply(&u.concat(&v)), s.apply(&u).concat(&s.apply(&v)));
        }

        #[test]
        fn reverse_is_an_antihomomorphic_involution(u in arb_word(), v in arb_word()) {
            prop_assert_eq!(u.reverse().reverse(), u.clone());
            prop_assert_eq!(u.concat(&v).reverse(), v.reverse().concat(&u.reverse()));
        }

        #[test]
        fn content_and_counts_are_additive(u in arb_word(), v in arb_word()) {
            let uv = u.concat(&v);
            let mut c = u.content();
            c.extend(v.content());
            prop_assert_eq!(uv.content(), c);
            for l in uv.content() {
                prop_assert_eq!(uv.occurrences(&l), u.occurrences(&l) + v.occurrences(&l));
            }
        }

        #[test]
        fn concatenation_is_associative_with_unit(u in arb_word(), v in arb_word(), x in arb_word()) {
            prop_assert_eq!(u.concat(&v).concat(&x), u.concat(&v.concat(&x)));
            prop_assert_eq!(u.concat(&Word::empty()), u.clone());
            prop_assert_eq!(Word::empty().concat(&u), u);
        }
    }
}
