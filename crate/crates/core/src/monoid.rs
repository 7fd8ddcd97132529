//! Finite monoids given by multiplication tables, the Rees quotients S(W),
//! and brute-force identity checking over them.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::word::{Identity, Letter, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MonoidError {
    #[error("table has {got} entries, expected {expected}")]
    TableShape { expected: usize, got: usize },
    #[error("table entry {0} is out of range")]
    OutOfRange(usize),
    #[error("element {0} is not a two-sided identity")]
    NotNeutral(usize),
    #[error("operation is not associative at ({0}, {1}, {2})")]
    NotAssociative(usize, usize, usize),
    #[error("letter {0} has no assigned value")]
    Unassigned(String),
    #[error("symmetric group of degree {0} is too large (max 5)")]
    DegreeTooLarge(usize),
    #[error("element names must be unique")]
    DuplicateName,
}

/// A finite monoid on elements `0..size`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteMonoid {
    names: Vec<String>,
    identity: usize,
    table: Vec<usize>,
    zero: Option<usize>,
    /// Element index -> word, for monoids built as S(W). The zero has no word.
    subwords: Option<Vec<Word>>,
}

impl FiniteMonoid {
    /// Builds a monoid from a row-major table, checking neutrality and
    /// associativity. A zero element, if any, is detected.
    pub fn from_table(
        names: Vec<String>,
        identity: usize,
        table: Vec<usize>,
    ) -> Result<FiniteMonoid, MonoidError> {
        let n = names.len();
        if table.len() != n * n {
            return Err(MonoidError::TableShape {
                expected: n * n,
                got: table.len(),
            });
        }
        if let Some(&bad) = table.iter().find(|&&e| e >= n) {
            return Err(MonoidError::OutOfRange(bad));
        }
        if identity >= n {
            return Err(MonoidError::OutOfRange(identity));
        }
        if names.iter().collect::<BTreeSet<_>>().len() != n {
            return Err(MonoidError::DuplicateName);
        }
        let mul = |a: usize, b: usize| table[a * n + b];
        if (0..n).any(|a| mul(identity, a) != a || mul(a, identity) != a) {
            return Err(MonoidError::NotNeutral(identity));
        }
        for a in 0..n {
            for b in 0..n {
                let ab = mul(a, b);
                for c in 0..n {
                    if mul(ab, c) != mul(a, mul(b, c)) {
                        return Err(MonoidError::NotAssociative(a, b, c));
                    }
                }
            }
        }
        let zero = (0..n).find(|&z| (0..n).all(|a| mul(z, a) == z && mul(a, z) == z));
        Ok(FiniteMonoid {
            names,
            identity,
            table,
            zero,
            subwords: None,
        })
    }

    pub fn trivial() -> FiniteMonoid {
        FiniteMonoid::from_table(vec!["1".into()], 0, vec![0]).expect("trivial monoid")
    }

    pub fn size(&self) -> usize {
        self.names.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn zero(&self) -> Option<usize> {
        self.zero
    }

    pub fn name(&self, e: usize) -> &str {
        &self.names[e]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// For S(W): the subword an element stands for (`None` for the zero or
    /// for monoids not built from words).
    pub fn subword(&self, e: usize) -> Option<&Word> {
        self.subwords.as_ref().and_then(|s| s.get(e))
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.size() + b]
    }

    pub fn row(&self, a: usize) -> &[usize] {
        let n = self.size();
        &self.table[a * n..(a + 1) * n]
    }

    pub fn is_commutative(&self) -> bool {
        let n = self.size();
        (0..n).all(|a| (0..n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    fn product(&self, elems: impl IntoIterator<Item = usize>) -> usize {
        elems.into_iter().fold(self.identity, |acc, e| self.mul(acc, e))
    }

    fn power(&self, g: usize, k: usize) -> usize {
        (0..k).fold(self.identity, |acc, _| self.mul(acc, g))
    }
}

#[derive(Serialize, Deserialize)]
struct MonoidFile {
    elements: Vec<String>,
    identity: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    zero: Option<usize>,
    table: Vec<Vec<usize>>,
}

impl Serialize for FiniteMonoid {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        MonoidFile {
            elements: self.names.clone(),
            identity: self.identity,
            zero: self.zero,
            table: (0..self.size()).map(|a| self.row(a).to_vec()).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for FiniteMonoid {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<FiniteMonoid, D::Error> {
        let f = MonoidFile::deserialize(d)?;
        let table = f.table.into_iter().flatten().collect();
        let m = FiniteMonoid::from_table(f.elements, f.identity, table)
            .map_err(serde::de::Error::custom)?;
        if f.zero.is_some() && f.zero != m.zero {
            return Err(serde::de::Error::custom("declared zero is not absorbing"));
        }
        // Recover the subword labels of an S(W) table, if they parse.
        let mut m = m;
        if m.zero.is_some() {
            let words: Option<Vec<Word>> = (0..m.size())
                .map(|e| {
                    if Some(e) == m.zero {
                        Some(Word::empty())
                    } else {
                        m.names[e].parse().ok()
                    }
                })
                .collect();
            if let Some(ws) = words {
                let consistent = ws[m.identity].is_empty()
                    && (0..m.size()).filter(|e| Some(*e) != m.zero).all(|e| ws[e].is_empty() == (e == m.identity));
                if consistent {
                    m.subwords = Some(ws);
                }
            }
        }
        Ok(m)
    }
}

/// All factors of the words of `set`, including the empty word: λ first,
/// then by length, then by order of discovery.
pub fn subword_closure(set: &[Word]) -> Vec<Word> {
    let mut seen: BTreeSet<&[Letter]> = BTreeSet::new();
    let mut out = vec![Word::empty()];
    let max = set.iter().map(|w| w.len()).max().unwrap_or(0);
    for len in 1..=max {
        for w in set {
            for f in w.letters().windows(len) {
                if seen.insert(f) {
                    out.push(Word::from_letters(f.to_vec()));
                }
            }
        }
    }
    out
}

/// The Rees quotient S(W): subwords of W plus a zero, with `u·v = uv` when
/// `uv` is a subword and `0` otherwise.
pub fn build_sw(set: &[Word]) -> FiniteMonoid {
    let words = subword_closure(set);
    let n = words.len() + 1;
    let zero = n - 1;
    let index: HashMap<&[Letter], usize> = words
        .iter()
        .enumerate()
        .map(|(i, w)| (w.letters(), i))
        .collect();
    let mut table = vec![zero; n * n];
    let mut buf = Vec::new();
    for (a, u) in words.iter().enumerate() {
        for (b, v) in words.iter().enumerate() {
            buf.clear();
            buf.extend_from_slice(u.letters());
            buf.extend_from_slice(v.letters());
            if let Some(&c) = index.get(buf.as_slice()) {
                table[a * n + b] = c;
            }
        }
    }
    let mut names: Vec<String> = words.iter().map(|w| w.to_string()).collect();
    names.push("0".into());
    let mut m = FiniteMonoid::from_table(names, 0, table).expect("S(W) is a monoid");
    debug_assert_eq!(m.zero, Some(zero));
    let mut subwords = words;
    subwords.push(Word::empty());
    m.subwords = Some(subwords);
    m
}

pub fn direct_product(a: &FiniteMonoid, b: &FiniteMonoid) -> FiniteMonoid {
    let (na, nb) = (a.size(), b.size());
    let n = na * nb;
    let mut names = Vec::with_capacity(n);
    for i in 0..na {
        for j in 0..nb {
            names.push(format!("({},{})", a.name(i), b.name(j)));
        }
    }
    let mut table = vec![0; n * n];
    for x in 0..n {
        let (xa, xb) = (x / nb, x % nb);
        for y in 0..n {
            let (ya, yb) = (y / nb, y % nb);
            table[x * n + y] = a.mul(xa, ya) * nb + b.mul(xb, yb);
        }
    }
    FiniteMonoid::from_table(names, a.identity * nb + b.identity, table)
        .expect("product of monoids is a monoid")
}

/// The symmetric group on `n` points as a monoid. Permutations are listed
/// in lexicographic order of their one-line notation (so the identity comes
/// first) and multiplied left to right: `p·q` applies `p`, then `q`.
pub fn symmetric_group_monoid(n: usize) -> Result<FiniteMonoid, MonoidError> {
    if n > 5 {
        return Err(MonoidError::DegreeTooLarge(n));
    }
    let mut perms: Vec<Vec<usize>> = vec![(0..n).collect()];
    // next-permutation enumeration
    loop {
        let mut p = perms.last().expect("nonempty").clone();
        let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
            break;
        };
        let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).expect("pivot");
        p.swap(i - 1, j);
        p[i..].reverse();
        perms.push(p);
    }
    let index: HashMap<Vec<usize>, usize> =
        perms.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
    let m = perms.len();
    let mut table = vec![0; m * m];
    for (a, p) in perms.iter().enumerate() {
        for (b, q) in perms.iter().enumerate() {
            let pq: Vec<usize> = p.iter().map(|&i| q[i]).collect();
            table[a * m + b] = index[&pq];
        }
    }
    let names = perms
        .iter()
        .map(|p| {
            if p.is_empty() {
                "()".to_owned()
            } else {
                p.iter().map(|i| (i + 1).to_string()).collect::<String>()
            }
        })
        .collect();
    FiniteMonoid::from_table(names, 0, table)
}

/// Values of letters in a finite monoid.
pub type Assignment = BTreeMap<Letter, usize>;

pub fn evaluate(m: &FiniteMonoid, w: &Word, a: &Assignment) -> Result<usize, MonoidError> {
    w.iter().try_fold(m.identity, |acc, l| {
        a.get(l)
            .map(|&e| m.mul(acc, e))
            .ok_or_else(|| MonoidError::Unassigned(l.to_string()))
    })
}

/// An assignment under which the two sides of an identity differ.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    /// (letter, element name) in first-occurrence order of the identity.
    pub assignment: Vec<(Letter, String)>,
    pub lhs_value: String,
    pub rhs_value: String,
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .assignment
            .iter()
            .map(|(l, e)| format!("{l}->{e}"))
            .collect();
        write!(f, "{} gives {} vs {}", parts.join(", "), self.lhs_value, self.rhs_value)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Satisfaction {
    pub holds: bool,
    pub witness: Option<Witness>,
}

/// An identity with its letters replaced by dense indices.
struct Compiled {
    letters: Vec<Letter>,
    lhs: Vec<usize>,
    rhs: Vec<usize>,
}

fn compile(id: &Identity) -> Compiled {
    let mut letters: Vec<Letter> = Vec::new();
    let mut ix: BTreeMap<Letter, usize> = BTreeMap::new();
    let mut enc = |w: &Word| -> Vec<usize> {
        w.iter()
            .map(|l| {
                *ix.entry(l.clone()).or_insert_with(|| {
                    letters.push(l.clone());
                    letters.len() - 1
                })
            })
            .collect()
    };
    let lhs = enc(&id.lhs);
    let rhs = enc(&id.rhs);
    Compiled { letters, lhs, rhs }
}

impl Compiled {
    fn witness(&self, m: &FiniteMonoid, vals: &[usize]) -> Witness {
        let eval = |side: &[usize]| m.product(side.iter().map(|&i| vals[i]));
        Witness {
            assignment: self
                .letters
                .iter()
                .zip(vals)
                .map(|(l, &e)| (l.clone(), m.name(e).to_owned()))
                .collect(),
            lhs_value: m.name(eval(&self.lhs)).to_owned(),
            rhs_value: m.name(eval(&self.rhs)).to_owned(),
        }
    }
}

/// Checks every assignment, in lexicographic order of element indices with
/// letters taken in first-occurrence order, and reports the first one under
/// which the sides differ.
pub fn satisfies_identity_exhaustive(m: &FiniteMonoid, id: &Identity) -> Satisfaction {
    let c = compile(id);
    let k = c.letters.len();
    let n = m.size();
    let mut vals = vec![0usize; k];
    loop {
        let l = m.product(c.lhs.iter().map(|&i| vals[i]));
        let r = m.product(c.rhs.iter().map(|&i| vals[i]));
        if l != r {
            return Satisfaction {
                holds: false,
                witness: Some(c.witness(m, &vals)),
            };
        }
        // odometer, last letter fastest
        let mut pos = k;
        loop {
            if pos == 0 {
                return Satisfaction {
                    holds: true,
                    witness: None,
                };
            }
            pos -= 1;
            vals[pos] += 1;
            if vals[pos] < n {
                break;
            }
            vals[pos] = 0;
        }
    }
}

/// Exact satisfaction check.
///
/// For a monoid with a zero, assignments under which both sides are zero
/// are skipped: the scan enumerates assignments of the letters of one side
/// in its first-occurrence order, abandons a branch as soon as an already
/// determined prefix of that side is zero, and compares with the other side
/// at the leaves; then the roles are swapped. Monoids without a zero get the
/// full scan. The witness is the first one met in this order.
pub fn satisfies_identity(m: &FiniteMonoid, id: &Identity) -> Satisfaction {
    let Some(zero) = m.zero else {
        return satisfies_identity_exhaustive(m, id);
    };
    let c = compile(id);
    for (primary, other) in [(&c.lhs, &c.rhs), (&c.rhs, &c.lhs)] {
        if let Some(vals) = pruned_scan(m, zero, c.letters.len(), primary, other) {
            return Satisfaction {
                holds: false,
                witness: Some(c.witness(m, &vals)),
            };
        }
    }
    Satisfaction {
        holds: true,
        witness: None,
    }
}

/// Searches for an assignment with `primary` nonzero and `other` different
/// from it.
fn pruned_scan(
    m: &FiniteMonoid,
    zero: usize,
    nletters: usize,
    primary: &[usize],
    other: &[usize],
) -> Option<Vec<usize>> {
    let mut order: Vec<usize> = Vec::with_capacity(nletters);
    for &l in primary.iter().chain(other) {
        if !order.contains(&l) {
            order.push(l);
        }
    }
    let in_primary = primary.iter().collect::<BTreeSet<_>>().len();
    // prefix_len[k]: longest prefix of `primary` whose letters are among the
    // first k letters of `order`
    let mut prefix_len = vec![0; order.len() + 1];
    for k in 1..=order.len() {
        let known = &order[..k];
        prefix_len[k] = primary.iter().take_while(|l| known.contains(l)).count();
    }

    struct Search<'a> {
        m: &'a FiniteMonoid,
        zero: usize,
        order: Vec<usize>,
        prefix_len: Vec<usize>,
        in_primary: usize,
        primary: &'a [usize],
        other: &'a [usize],
        vals: Vec<usize>,
    }

    impl Search<'_> {
        fn go(&mut self, depth: usize, prefix_val: usize) -> bool {
            if depth == self.order.len() {
                let o = self.m.product(self.other.iter().map(|&i| self.vals[i]));
                return o != prefix_val;
            }
            let letter = self.order[depth];
            for e in 0..self.m.size() {
                self.vals[letter] = e;
                let mut v = prefix_val;
                if depth < self.in_primary {
                    let (from, to) = (self.prefix_len[depth], self.prefix_len[depth + 1]);
                    for &i in &self.primary[from..to] {
                        v = self.m.mul(v, self.vals[i]);
                    }
                    if v == self.zero {
                        continue;
                    }
                }
                if self.go(depth + 1, v) {
                    return true;
                }
            }
            false
        }
    }

    let mut s = Search {
        m,
        zero,
        order,
        prefix_len,
        in_primary,
        primary,
        other,
        vals: vec![0; nletters],
    };
    // The empty primary word evaluates to the identity, never to the zero
    // (unless the monoid is trivial, where nothing can differ).
    if s.go(0, m.identity) {
        Some(s.vals)
    } else {
        None
    }
}

/// Outcome of a bounded isoterm search.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict")]
pub enum IsotermVerdict {
    /// No nontrivial identity `w ≈ w'` holds for `w'` within the bounds.
    Isoterm { max_len: usize, max_mult: usize },
    NotIsoterm { witness: Word },
}

impl IsotermVerdict {
    pub fn is_isoterm(&self) -> bool {
        matches!(self, IsotermVerdict::Isoterm { .. })
    }
}

/// Looks for `w' != w` over the letters of `w`, of length at most `max_len`
/// and with each letter used at most `max_mult` times, such that the monoid
/// satisfies `w ≈ w'`. Candidates are tried by length, then
/// lexicographically; the first hit is returned.
pub fn is_isoterm_bounded(
    m: &FiniteMonoid,
    w: &Word,
    max_len: usize,
    max_mult: usize,
) -> IsotermVerdict {
    let letters: Vec<Letter> = w.content().into_iter().collect();
    let counts = w.occurrence_counts();
    let target: Vec<usize> = letters.iter().map(|l| counts[l]).collect();

    // Sending one letter to g and the others to 1 gives g^(count) on each
    // side, so any count vector disagreeing there is refuted wholesale.
    let max_pow = max_mult.max(target.iter().copied().max().unwrap_or(0));
    let pow: Vec<Vec<usize>> = (0..m.size())
        .map(|g| (0..=max_pow).map(|k| m.power(g, k)).collect())
        .collect();
    let count_ok = |c: usize, t: usize| (0..m.size()).all(|g| pow[g][c] == pow[g][t]);
    let allowed: Vec<Vec<usize>> = target
        .iter()
        .map(|&t| (0..=max_mult).filter(|&c| count_ok(c, t)).collect())
        .collect();

    for len in 0..=max_len {
        let mut candidates: Vec<Vec<usize>> = Vec::new();
        let mut counts = vec![0; letters.len()];
        count_vectors(&allowed, len, 0, &mut counts, &mut |cv| {
            arrangements(cv, &mut candidates);
        });
        candidates.sort_unstable();
        let found = candidates.par_iter().find_first(|cand| {
            let cand_word: Word = cand.iter().map(|&i| letters[i].clone()).collect();
            cand_word != *w && satisfies_identity(m, &Identity::new(w.clone(), cand_word)).holds
        });
        if let Some(c) = found {
            return IsotermVerdict::NotIsoterm {
                witness: c.iter().map(|&i| letters[i].clone()).collect(),
            };
        }
    }
    IsotermVerdict::Isoterm { max_len, max_mult }
}

fn count_vectors(
    allowed: &[Vec<usize>],
    remaining: usize,
    i: usize,
    cur: &mut Vec<usize>,
    f: &mut impl FnMut(&[usize]),
) {
    if i == allowed.len() {
        if remaining == 0 {
            f(cur);
        }
        return;
    }
    for &c in &allowed[i] {
        if c <= remaining {
            cur[i] = c;
            count_vectors(allowed, remaining - c, i + 1, cur, f);
        }
    }
}

/// All sequences with `counts[i]` copies of symbol `i`.
fn arrangements(counts: &[usize], out: &mut Vec<Vec<usize>>) {
    fn go(left: &mut [usize], cur: &mut Vec<usize>, total: usize, out: &mut Vec<Vec<usize>>) {
        if cur.len() == total {
            out.push(cur.clone());
            return;
        }
        for i in 0..left.len() {
            if left[i] > 0 {
                left[i] -= 1;
                cur.push(i);
                go(left, cur, total, out);
                cur.pop();
                left[i] += 1;
            }
        }
    }
    let total = counts.iter().sum();
    go(&mut counts.to_vec(), &mut Vec::with_capacity(total), total, out);
}
