//! Equational derivations: matching identity sides against factors of a
//! word (letter images may be empty), one-step rewrites, bounded
//! bidirectional search, and σ2-canonical forms.
//!
//! Letters that occur only on the replacement side of a rule are sent to λ.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::blocks::{full_decompose, BlockClass, BlockError};
use crate::system::IdentitySystem;
use crate::word::{Identity, Letter, Substitution, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Direction {
    /// Rewrite an instance of the left side into the right side.
    Forward,
    Backward,
}

impl Direction {
    pub fn flip(self) -> Direction {
        match self {
            Direction::Forward => Direction::Backward,
            Direction::Backward => Direction::Forward,
        }
    }

    fn sides(self, id: &Identity) -> (&Word, &Word) {
        match self {
            Direction::Forward => (&id.lhs, &id.rhs),
            Direction::Backward => (&id.rhs, &id.lhs),
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::Forward => "->",
            Direction::Backward => "<-",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Match {
    pub prefix: Word,
    pub substitution: Substitution,
    pub suffix: Word,
}

impl Match {
    /// `prefix · ξ(side) · suffix`.
    pub fn instantiate(&self, side: &Word) -> Word {
        self.prefix
            .concat(&self.substitution.apply(side))
            .concat(&self.suffix)
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DeriveError {
    #[error("search limits must be positive")]
    InvalidLimits,
    #[error("step {step}: {reason}")]
    Replay { step: usize, reason: String },
}

/// Dense letter codes shared by every word in one search.
#[derive(Default)]
struct Interner {
    codes: BTreeMap<Letter, u32>,
    letters: Vec<Letter>,
}

impl Interner {
    fn code(&mut self, l: &Letter) -> u32 {
        if let Some(&c) = self.codes.get(l) {
            return c;
        }
        self.letters.push(l.clone());
        let c = (self.letters.len() - 1) as u32;
        self.codes.insert(l.clone(), c);
        c
    }

    fn encode(&mut self, w: &Word) -> Vec<u32> {
        w.iter().map(|l| self.code(l)).collect()
    }

    fn decode(&self, w: &[u32]) -> Word {
        w.iter().map(|&c| self.letters[c as usize].clone()).collect()
    }
}

/// One side of an identity as a rewrite pattern over rule-local letter
/// indices; `replacement` may use indices the pattern lacks.
struct Rule {
    letters: Vec<Letter>,
    pattern: Vec<usize>,
    replacement: Vec<usize>,
}

impl Rule {
    fn new(pattern: &Word, replacement: &Word) -> Rule {
        let mut letters: Vec<Letter> = Vec::new();
        let index = |l: &Letter, letters: &mut Vec<Letter>| match letters.iter().position(|m| m == l) {
            Some(i) => i,
            None => {
                letters.push(l.clone());
                letters.len() - 1
            }
        };
        let pattern = pattern.iter().map(|l| index(l, &mut letters)).collect();
        let replacement = replacement.iter().map(|l| index(l, &mut letters)).collect();
        Rule {
            letters,
            pattern,
            replacement,
        }
    }
}

type Span = (usize, usize);
type Visit<'a> = dyn FnMut(usize, usize, &[Option<Span>]) + 'a;

/// Calls `f(start, end, spans)` for every way to read `pat` off a factor
/// `subject[start..end]`, leftmost start first, then shorter images first
/// in pattern order.
fn scan(subject: &[u32], pat: &[usize], nletters: usize, f: &mut Visit) {
    let mut assigned: Vec<Option<Span>> = vec![None; nletters];
    for start in 0..=subject.len() {
        scan_from(subject, pat, 0, start, start, &mut assigned, f);
    }
}

fn scan_from(
    subject: &[u32],
    pat: &[usize],
    pi: usize,
    pos: usize,
    start: usize,
    assigned: &mut [Option<Span>],
    f: &mut Visit,
) {
    if pi == pat.len() {
        f(start, pos, assigned);
        return;
    }
    let k = pat[pi];
    if let Some((a, b)) = assigned[k] {
        let len = b - a;
        if pos + len <= subject.len() && subject[pos..pos + len] == subject[a..b] {
            scan_from(subject, pat, pi + 1, pos + len, start, assigned, f);
        }
        return;
    }
    for end in pos..=subject.len() {
        assigned[k] = Some((pos, end));
        scan_from(subject, pat, pi + 1, end, start, assigned, f);
    }
    assigned[k] = None;
}

fn images(subject: &[u32], spans: &[Option<Span>]) -> Vec<Vec<u32>> {
    spans
        .iter()
        .map(|s| s.map_or_else(Vec::new, |(a, b)| subject[a..b].to_vec()))
        .collect()
}

fn rewrite(subject: &[u32], start: usize, end: usize, repl: &[usize], imgs: &[Vec<u32>]) -> Vec<u32> {
    let mut out = Vec::with_capacity(subject.len());
    out.extend_from_slice(&subject[..start]);
    for &k in repl {
        out.extend_from_slice(&imgs[k]);
    }
    out.extend_from_slice(&subject[end..]);
    out
}

fn substitution_of(letters: &[Letter], imgs: impl Fn(usize) -> Word) -> Substitution {
    Substitution::from_pairs(letters.iter().enumerate().map(|(i, l)| (l.clone(), imgs(i))))
}

/// All ways to write `subject = prefix · ξ(pattern) · suffix`.
pub fn match_pattern(pattern: &Word, subject: &Word) -> Vec<Match> {
    let mut interner = Interner::default();
    let subj = interner.encode(subject);
    let rule = Rule::new(pattern, &Word::empty());
    let mut out = Vec::new();
    scan(&subj, &rule.pattern, rule.letters.len(), &mut |start, end, spans| {
        let imgs = images(&subj, spans);
        out.push(Match {
            prefix: subject.factor(0, start),
            substitution: substitution_of(&rule.letters, |i| interner.decode(&imgs[i])),
            suffix: subject.factor(end, subject.len()),
        });
    });
    out
}

/// Every word other than `w` obtained by one application of `id` in the
/// given direction.
pub fn one_step(w: &Word, id: &Identity, direction: Direction) -> BTreeSet<Word> {
    let (pattern, replacement) = direction.sides(id);
    let mut interner = Interner::default();
    let subj = interner.encode(w);
    let rule = Rule::new(pattern, replacement);
    let mut out = BTreeSet::new();
    scan(&subj, &rule.pattern, rule.letters.len(), &mut |start, end, spans| {
        let next = rewrite(&subj, start, end, &rule.replacement, &images(&subj, spans));
        if next != subj {
            out.insert(interner.decode(&next));
        }
    });
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Step {
    pub from: Word,
    pub to: Word,
    pub identity: String,
    pub direction: Direction,
    pub matched: Match,
}

impl Step {
    /// Length of the prefix, i.e. the 0-based position of the rewrite.
    pub fn position(&self) -> usize {
        self.matched.prefix.len()
    }
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} {} at {} [{}] gives {}",
            self.from,
            self.identity,
            self.direction,
            self.position(),
            self.matched.substitution,
            self.to
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DerivationTrace {
    pub source: Word,
    pub target: Word,
    pub steps: Vec<Step>,
}

impl DerivationTrace {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Re-applies every step using the identities of `system` and checks
    /// that the chain runs from `source` to `target`.
    pub fn replay(&self, system: &IdentitySystem) -> Result<(), DeriveError> {
        let mut cur = self.source.clone();
        for (i, s) in self.steps.iter().enumerate() {
            let fail = |reason: String| DeriveError::Replay { step: i, reason };
            let id = system
                .get(&s.identity)
                .ok_or_else(|| fail(format!("unknown identity {}", s.identity)))?;
            let (pattern, replacement) = s.direction.sides(id);
            if s.from != cur {
                return Err(fail(format!("starts at {} instead of {cur}", s.from)));
            }
            if s.matched.instantiate(pattern) != s.from {
                return Err(fail("match does not reproduce the source word".into()));
            }
            let next = s.matched.instantiate(replacement);
            if next != s.to {
                return Err(fail(format!("rewrite gives {next}, not {}", s.to)));
            }
            cur = next;
        }
        if cur != self.target {
            return Err(DeriveError::Replay {
                step: self.steps.len(),
                reason: format!("ends at {cur} instead of {}", self.target),
            });
        }
        Ok(())
    }
}

impl fmt::Display for DerivationTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.steps.len();
        writeln!(f, "{} = {} in {n} step{}", self.source, self.target, if n == 1 { "" } else { "s" })?;
        for s in &self.steps {
            writeln!(f, "  {s}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DeriveLimits {
    pub max_depth: usize,
    pub max_len: usize,
    pub max_states: usize,
}

impl DeriveLimits {
    /// Depth 8, length slack 2, 10^4 states.
    pub fn for_identity(id: &Identity) -> DeriveLimits {
        DeriveLimits {
            max_depth: 8,
            max_len: id.lhs.len().max(id.rhs.len()) + 2,
            max_states: 10_000,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExhaustReason {
    /// Every word within `max_len` reachable from one side was visited.
    Closed,
    Depth,
    States,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Exhaustion {
    pub reason: ExhaustReason,
    pub states: usize,
    pub depth: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "result", rename_all = "kebab-case")]
pub enum DeriveOutcome {
    Derived(DerivationTrace),
    Exhausted(Exhaustion),
}

impl DeriveOutcome {
    pub fn trace(&self) -> Option<&DerivationTrace> {
        match self {
            DeriveOutcome::Derived(t) => Some(t),
            DeriveOutcome::Exhausted(_) => None,
        }
    }
}

/// How a visited word was reached from its parent.
#[derive(Clone)]
struct Edge {
    parent: Vec<u32>,
    rule: usize,
    prefix: usize,
    suffix: usize,
    images: Vec<Vec<u32>>,
}

struct Rules {
    rules: Vec<(Rule, String, Direction)>,
}

impl Rules {
    fn new(system: &IdentitySystem) -> Rules {
        let mut rules = Vec::new();
        for id in system.identities() {
            let name = id.name.clone().unwrap_or_default();
            for d in [Direction::Forward, Direction::Backward] {
                let (p, r) = d.sides(id);
                rules.push((Rule::new(p, r), name.clone(), d));
            }
        }
        Rules { rules }
    }

    /// Distinct neighbours of `w` within `max_len`, first match kept.
    fn neighbours(&self, w: &[u32], max_len: usize) -> Vec<(Vec<u32>, Edge)> {
        let mut seen: HashSet<Vec<u32>> = HashSet::new();
        let mut out = Vec::new();
        for (ri, (rule, _, _)) in self.rules.iter().enumerate() {
            scan(w, &rule.pattern, rule.letters.len(), &mut |start, end, spans| {
                let imgs = images(w, spans);
                let grown: usize = rule.replacement.iter().map(|&k| imgs[k].len()).sum();
                if w.len() - (end - start) + grown > max_len {
                    return;
                }
                let next = rewrite(w, start, end, &rule.replacement, &imgs);
                if next != w && seen.insert(next.clone()) {
                    out.push((
                        next,
                        Edge {
                            parent: w.to_vec(),
                            rule: ri,
                            prefix: start,
                            suffix: w.len() - end,
                            images: imgs,
                        },
                    ));
                }
            });
        }
        out
    }

    /// The step `from -> to` along `e`, read forwards (`from` is the
    /// parent) or backwards (`to` is the parent).
    fn step(&self, interner: &Interner, e: &Edge, child: &[u32], backwards: bool) -> Step {
        let (rule, name, dir) = &self.rules[e.rule];
        let parent = interner.decode(&e.parent);
        let child = interner.decode(child);
        let matched = Match {
            prefix: parent.factor(0, e.prefix),
            substitution: substitution_of(&rule.letters, |i| interner.decode(&e.images[i])),
            suffix: parent.factor(parent.len() - e.suffix, parent.len()),
        };
        let (from, to, direction) = if backwards {
            (child, parent, dir.flip())
        } else {
            (parent, child, *dir)
        };
        Step {
            from,
            to,
            identity: name.clone(),
            direction,
            matched,
        }
    }
}

type Visited = HashMap<Vec<u32>, Option<Edge>>;

/// Bounded bidirectional breadth-first search for a derivation of `id`
/// from `system`. Exhaustion only means nothing was found within bounds.
pub fn derives(
    system: &IdentitySystem,
    id: &Identity,
    limits: DeriveLimits,
) -> Result<DeriveOutcome, DeriveError> {
    if limits.max_depth == 0 || limits.max_len == 0 || limits.max_states == 0 {
        return Err(DeriveError::InvalidLimits);
    }
    let mut interner = Interner::default();
    let src = interner.encode(&id.lhs);
    let tgt = interner.encode(&id.rhs);
    for i in system.identities() {
        interner.encode(&i.lhs);
        interner.encode(&i.rhs);
    }
    let rules = Rules::new(system);
    let trace = |vs: &Visited, vt: &Visited, meet: &[u32]| {
        let mut steps = Vec::new();
        let mut cur = meet.to_vec();
        while let Some(Some(e)) = vs.get(&cur) {
            steps.push(rules.step(&interner, e, &cur, false));
            cur = e.parent.clone();
        }
        steps.reverse();
        let mut cur = meet.to_vec();
        while let Some(Some(e)) = vt.get(&cur) {
            steps.push(rules.step(&interner, e, &cur, true));
            cur = e.parent.clone();
        }
        DeriveOutcome::Derived(DerivationTrace {
            source: id.lhs.clone(),
            target: id.rhs.clone(),
            steps,
        })
    };

    let mut visited: [Visited; 2] = [HashMap::new(), HashMap::new()];
    visited[0].insert(src.clone(), None);
    if src == tgt {
        return Ok(trace(&visited[0], &visited[1], &src));
    }
    visited[1].insert(tgt.clone(), None);
    let mut frontier = [vec![src], vec![tgt]];
    let mut depth = [0usize; 2];
    let exhausted = |reason, visited: &[Visited; 2], depth: &[usize; 2]| {
        Ok(DeriveOutcome::Exhausted(Exhaustion {
            reason,
            states: visited[0].len() + visited[1].len(),
            depth: depth[0] + depth[1],
        }))
    };
    loop {
        if frontier[0].is_empty() || frontier[1].is_empty() {
            return exhausted(ExhaustReason::Closed, &visited, &depth);
        }
        if depth[0] + depth[1] >= limits.max_depth {
            return exhausted(ExhaustReason::Depth, &visited, &depth);
        }
        let side = usize::from(frontier[1].len() < frontier[0].len());
        let expanded: Vec<Vec<(Vec<u32>, Edge)>> = frontier[side]
            .par_iter()
            .map(|w| rules.neighbours(w, limits.max_len))
            .collect();
        let mut next = Vec::new();
        for (word, edge) in expanded.into_iter().flatten() {
            if visited[side].contains_key(&word) {
                continue;
            }
            let met = visited[1 - side].contains_key(&word);
            visited[side].insert(word.clone(), Some(edge));
            if met {
                let (vs, vt) = (&visited[0], &visited[1]);
                return Ok(trace(vs, vt, &word));
            }
            if visited[0].len() + visited[1].len() > limits.max_states {
                return exhausted(ExhaustReason::States, &visited, &depth);
            }
            next.push(word);
        }
        frontier[side] = next;
        depth[side] += 1;
    }
}

/// Sorts the letters of every 2-block of a reduced word.
pub fn sigma2_canonical(w: &Word) -> Result<Word, BlockError> {
    let f = full_decompose(w)?;
    let mut out = Word::empty();
    for (t, b) in f.dividers.iter().zip(&f.blocks) {
        if let Some(t) = t {
            out.push(t.clone());
        }
        let mut letters = b.letters.letters().to_vec();
        if b.class == BlockClass::TwoBlock {
            letters.sort();
        }
        out.extend_from(&Word::from_letters(letters));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{sigma1, sigma2};
    use crate::word::{ident, w};

    fn system(ids: &[Identity]) -> IdentitySystem {
        IdentitySystem::from_identities("test", ids.iter().cloned()).unwrap()
    }

    #[test]
    fn single_letter_pattern() {
        let ms = match_pattern(&w("x"), &w("ab"));
        let images: Vec<(usize, String)> = ms
            .iter()
            .map(|m| (m.prefix.len(), m.substitution.image(&Letter::plain('x')).to_string()))
            .collect();
        let expect = [(0, "1"), (0, "a"), (0, "ab"), (1, "1"), (1, "b"), (2, "1")];
        assert_eq!(
            images,
            expect.iter().map(|(p, s)| (*p, s.to_string())).collect::<Vec<_>>()
        );
        for m in &ms {
            assert_eq!(m.instantiate(&w("x")), w("ab"));
        }
    }

    #[test]
    fn repeated_letter_pattern() {
        let ms = match_pattern(&w("xx"), &w("abab"));
        assert!(ms
            .iter()
            .any(|m| m.substitution.image(&Letter::plain('x')) == w("ab")));
        for m in &ms {
            assert_eq!(m.instantiate(&w("xx")), w("abab"));
        }
    }

    #[test]
    fn empty_images() {
        let ms = match_pattern(&w("xyzxty"), &w("xyzxy"));
        let erased_t = ms.iter().find(|m| {
            m.prefix.is_empty()
                && m.suffix.is_empty()
                && m.substitution.image(&Letter::plain('t')).is_empty()
                && m.substitution.image(&Letter::plain('x')) == w("x")
        });
        let m = erased_t.expect("t erased");
        assert_eq!(m.substitution.image(&Letter::plain('y')), w("y"));
        assert_eq!(m.substitution.image(&Letter::plain('z')), w("z"));
        assert_eq!(m.instantiate(&w("xyzxty")), w("xyzxy"));
    }

    #[test]
    fn one_steps() {
        assert!(one_step(&w("xyzxy"), &sigma1(), Direction::Forward).contains(&w("yxzxy")));
        assert!(one_step(&w("xtyzxy"), &sigma2(), Direction::Forward).contains(&w("xtyzyx")));
        assert!(one_step(&Word::empty(), &sigma1(), Direction::Forward).is_empty());
        // x -> 1 on λ: the only match maps x to λ
        assert!(one_step(&Word::empty(), &ident("x = 1"), Direction::Forward).is_empty());
        assert!(one_step(&w("ab"), &ident("x = 1"), Direction::Forward).contains(&w("a")));
    }

    #[test]
    fn one_step_derivations() {
        let s1 = system(&[sigma1()]);
        let target = ident("xyzxy = yxzxy");
        let out = derives(&s1, &target, DeriveLimits { max_depth: 1, max_len: 6, max_states: 10_000 }).unwrap();
        let t = out.trace().expect("derivable");
        assert_eq!(t.len(), 1);
        assert!(t.steps[0].matched.substitution.image(&Letter::plain('t')).is_empty());
        t.replay(&s1).unwrap();

        let s2 = system(&[sigma2()]);
        let out = derives(&s2, &ident("xtyzxy = xtyzyx"), DeriveLimits { max_depth: 1, max_len: 8, max_states: 10_000 }).unwrap();
        assert_eq!(out.trace().unwrap().len(), 1);
    }

    #[test]
    fn empty_system_exhausts() {
        let out = derives(&IdentitySystem::new("none"), &ident("x = y"), DeriveLimits { max_depth: 4, max_len: 3, max_states: 100 }).unwrap();
        assert!(matches!(out, DeriveOutcome::Exhausted(Exhaustion { reason: ExhaustReason::Closed, .. })));
        assert_eq!(
            derives(&IdentitySystem::new("none"), &ident("x = y"), DeriveLimits { max_depth: 0, max_len: 3, max_states: 100 }),
            Err(DeriveError::InvalidLimits)
        );
    }

    #[test]
    fn trivial_identity_has_empty_trace() {
        let out = derives(&IdentitySystem::new("none"), &ident("xy = xy"), DeriveLimits::for_identity(&ident("xy = xy"))).unwrap();
        assert!(out.trace().unwrap().is_empty());
    }

    #[test]
    fn multi_step_trace_replays() {
        let s2 = system(&[sigma2()]);
        // reverse a 3-letter 2-block
        let id = ident("abcxabc = abcxcba");
        let out = derives(&s2, &id, DeriveLimits { max_depth: 6, max_len: 7, max_states: 100_000 }).unwrap();
        let t = out.trace().expect("2-block permutations are reachable");
        assert_eq!(t.len(), 2);
        t.replay(&s2).unwrap();
        let mut broken = t.clone();
        broken.steps[1].to = w("abcxabc");
        assert!(broken.replay(&s2).is_err());
    }

    #[test]
    fn canonical_forms() {
        assert_eq!(sigma2_canonical(&w("xtyzxy")).unwrap(), sigma2_canonical(&w("xtyzyx")).unwrap());
        assert_eq!(sigma2_canonical(&w("xtyzyx")).unwrap(), w("xtyzxy"));
        assert_eq!(sigma2_canonical(&w("xsx")).unwrap(), w("xsx"));
        assert!(sigma2_canonical(&w("xxx")).is_err());
        let b1 = crate::families::build_b(1).unwrap();
        let c = sigma2_canonical(&b1).unwrap();
        for blk in full_decompose(&c).unwrap().blocks {
            if blk.class == BlockClass::TwoBlock {
                assert!(blk.letters.letters().windows(2).all(|p| p[0] <= p[1]));
            }
        }
    }
}
