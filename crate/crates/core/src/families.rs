//! The indexed word families `c_n`, `d_n^(k)`, `e_m`, `f_m`, `a_n`, `b_n`
//! (and primed versions), the endomorphism η, the ζ-variants, and the named
//! identity systems.
//!
//! Letter naming: `x_γ^(j)` is base `x` with subscript tuple γ and
//! superscript `j`; plain indexed letters such as `x_m` use the 1-tuple
//! `(m)` and no superscript, so the two never collide.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::system::IdentitySystem;
use crate::varieties::VarietyId;
use crate::word::{ident, Identity, Letter, Substitution, Word};

/// Default cap on the number of letters of a constructed word.
pub const DEFAULT_LETTER_CAP: usize = 5000;
/// Default cap on the size of an index set.
pub const DEFAULT_TUPLE_CAP: usize = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("{what} would have size {size}, over the cap of {cap}")]
    TooLarge { what: String, size: u128, cap: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("zeta constraint violated: {0}")]
    ZetaConstraint(String),
}

/// An element `(1, i_1, ..., i_{k-1})` of `M_n^k`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct IndexTuple(Vec<u32>);

impl IndexTuple {
    pub fn new(entries: Vec<u32>) -> Result<IndexTuple, FamilyError> {
        if entries.first() != Some(&1) || entries.contains(&0) {
            return Err(FamilyError::InvalidArgument(format!(
                "index tuple {entries:?} must start with 1 and have positive entries"
            )));
        }
        Ok(IndexTuple(entries))
    }

    /// `γ + j`: append `j`.
    pub fn extend(&self, j: u32) -> IndexTuple {
        let mut v = self.0.clone();
        v.push(j);
        IndexTuple(v)
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    /// The smallest element `(1, 1, ..., 1)` of `M_n^k`.
    pub fn smallest(k: usize) -> IndexTuple {
        IndexTuple(vec![1; k])
    }
}

impl fmt::Display for IndexTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

fn too_large(what: String, size: u128, cap: usize) -> FamilyError {
    FamilyError::TooLarge { what, size, cap }
}

fn pow(n: u128, e: usize) -> u128 {
    (0..e).fold(1u128, |acc, _| acc.saturating_mul(n))
}

/// `M_n^k` in ascending lexicographic order.
pub fn index_set(n: usize, k: usize) -> Result<Vec<IndexTuple>, FamilyError> {
    index_set_capped(n, k, DEFAULT_TUPLE_CAP)
}

pub fn index_set_capped(n: usize, k: usize, cap: usize) -> Result<Vec<IndexTuple>, FamilyError> {
    if n == 0 || k == 0 {
        return Err(FamilyError::InvalidArgument("n and k must be at least 1".into()));
    }
    let size = pow(n as u128, k - 1);
    if size > cap as u128 {
        return Err(too_large(format!("M_{n}^{k}"), size, cap));
    }
    let mut out = Vec::with_capacity(size as usize);
    let mut cur = vec![1u32; k];
    loop {
        out.push(IndexTuple(cur.clone()));
        let mut pos = k;
        loop {
            pos -= 1;
            if pos == 0 {
                return Ok(out);
            }
            if (cur[pos] as usize) < n {
                cur[pos] += 1;
                break;
            }
            cur[pos] = 1;
        }
    }
}

fn x_at(g: &IndexTuple, j: u32) -> Letter {
    Letter::sym("x", g.entries(), Some(j))
}

fn s_at(g: &IndexTuple, j: u32) -> Letter {
    Letter::sym("s", g.entries(), Some(j))
}

fn idx(base: &str, m: usize) -> Letter {
    Letter::sym(base, &[m as u32], None)
}

fn plain(c: char) -> Letter {
    Letter::plain(c)
}

fn len_c(n: u128) -> u128 {
    pow(n, n as usize).saturating_mul(2 * n)
}

fn len_d(n: u128, k: usize) -> u128 {
    pow(n, k - 1).saturating_mul(n * (n + 1)).saturating_add(1)
}

fn check_len(what: String, len: u128, cap: usize) -> Result<(), FamilyError> {
    if len > cap as u128 {
        Err(too_large(what, len, cap))
    } else {
        Ok(())
    }
}

pub fn build_c(n: usize) -> Result<Word, FamilyError> {
    build_c_capped(n, DEFAULT_LETTER_CAP)
}

pub fn build_c_capped(n: usize, cap: usize) -> Result<Word, FamilyError> {
    if n == 0 {
        return Err(FamilyError::InvalidArgument("c_n needs n >= 1".into()));
    }
    check_len(format!("c_{n}"), len_c(n as u128), cap)?;
    let mut out = Word::empty();
    push_c(&mut out, n)?;
    Ok(out)
}

fn push_c(out: &mut Word, n: usize) -> Result<(), FamilyError> {
    for g in index_set(n, n)? {
        for j in 1..=n as u32 {
            out.push(s_at(&g, j));
            out.push(x_at(&g, j));
        }
    }
    Ok(())
}

pub fn build_d(n: usize, k: usize) -> Result<Word, FamilyError> {
    build_d_capped(n, k, DEFAULT_LETTER_CAP)
}

pub fn build_d_capped(n: usize, k: usize, cap: usize) -> Result<Word, FamilyError> {
    if n == 0 || k == 0 {
        return Err(FamilyError::InvalidArgument("d_n^(k) needs n, k >= 1".into()));
    }
    check_len(format!("d_{n}^({k})"), len_d(n as u128, k), cap)?;
    let mut out = Word::empty();
    push_d(&mut out, n, k, &|_, l| Word::from_letters(vec![l]))?;
    Ok(out)
}

/// Appends `d_n^(k)`, passing each inner letter `x_{γ+j}^(ℓ)` through
/// `inner(γ+j, letter)`.
fn push_d(
    out: &mut Word,
    n: usize,
    k: usize,
    inner: &dyn Fn(&IndexTuple, Letter) -> Word,
) -> Result<(), FamilyError> {
    out.push(idx("s", k));
    for g in index_set(n, k)? {
        for j in 1..=n as u32 {
            out.push(x_at(&g, j));
            let gj = g.extend(j);
            for l in 1..=n as u32 {
                out.extend_from(&inner(&gj, x_at(&gj, l)));
            }
        }
    }
    Ok(())
}

pub fn build_e(m: usize) -> Word {
    Word::from_letters(vec![idx("s", m), idx("x", m), idx("t", m), idx("y", m)])
}

pub fn build_f(m: usize) -> Word {
    Word::from_letters(vec![
        idx("s", m),
        idx("x", m),
        idx("x", m + 1),
        idx("y", m + 1),
        idx("y", m),
    ])
}

fn len_a(n: usize) -> u128 {
    let big = 2 * n as u128;
    let odd: u128 = (1..=n).map(|i| len_d(big, 2 * i - 1)).fold(0, u128::saturating_add);
    let even: u128 = (1..n).map(|i| len_d(big, 2 * i)).fold(0, u128::saturating_add);
    odd.saturating_add(even)
        .saturating_add(len_c(big))
        .saturating_add(5 + big)
}

/// Zeta maps for the a-variant, keyed by α ∈ M_{2n}^ℓ for odd ℓ. Missing
/// keys mean the identity map.
pub type AZetas = BTreeMap<IndexTuple, Substitution>;

fn a_word(n: usize, swap_lead: bool, zetas: &AZetas, cap: usize) -> Result<Word, FamilyError> {
    if n == 0 {
        return Err(FamilyError::InvalidArgument("a_n needs n >= 1".into()));
    }
    check_len(format!("a_{n}"), len_a(n), cap)?;
    let big = 2 * n;
    let apply = |g: &IndexTuple, l: Letter| -> Word {
        match zetas.get(g) {
            Some(z) => z.apply(&Word::from_letters(vec![l])),
            None => Word::from_letters(vec![l]),
        }
    };
    let plain_inner = |_: &IndexTuple, l: Letter| Word::from_letters(vec![l]);

    let mut out = Word::empty();
    if swap_lead {
        out.push(plain('y'));
        out.push(plain('x'));
    } else {
        out.push(plain('x'));
        out.push(plain('y'));
    }
    for i in 1..=n {
        push_d(&mut out, big, 2 * i - 1, &plain_inner)?;
    }
    push_c(&mut out, big)?;
    for i in (1..n).rev() {
        push_d(&mut out, big, 2 * i, &apply)?;
    }
    out.push(plain('s'));
    out.push(plain('x'));
    let one = IndexTuple::smallest(1);
    for i in 1..=big as u32 {
        out.extend_from(&apply(&one, x_at(&one, i)));
    }
    out.push(plain('y'));
    Ok(out)
}

pub fn build_a(n: usize) -> Result<Word, FamilyError> {
    build_a_capped(n, DEFAULT_LETTER_CAP)
}

pub fn build_a_capped(n: usize, cap: usize) -> Result<Word, FamilyError> {
    a_word(n, false, &AZetas::new(), cap)
}

pub fn build_a_prime(n: usize) -> Result<Word, FamilyError> {
    build_a_prime_capped(n, DEFAULT_LETTER_CAP)
}

pub fn build_a_prime_capped(n: usize, cap: usize) -> Result<Word, FamilyError> {
    a_word(n, true, &AZetas::new(), cap)
}

/// The word obtained from `a_n` by applying `ζ_α` to the letters
/// `x_α^(i)` in the second-occurrence groups. Each `ζ_α` must permute
/// `{x_α^(1), ..., x_α^(2n)}` and α must lie in `M_{2n}^ℓ` with `ℓ` odd.
pub fn build_a_variant(n: usize, zetas: &AZetas) -> Result<Word, FamilyError> {
    if n == 0 {
        return Err(FamilyError::InvalidArgument("a_n needs n >= 1".into()));
    }
    let big = 2 * n as u32;
    for (alpha, z) in zetas {
        let ok_index = alpha.arity() % 2 == 1
            && alpha.arity() < 2 * n
            && alpha.entries().iter().all(|&e| e >= 1 && e <= big);
        if !ok_index {
            return Err(FamilyError::ZetaConstraint(format!(
                "{alpha} is not in M_{big}^l for an odd l < {big}"
            )));
        }
        let letters: BTreeSet<Word> = (1..=big)
            .map(|i| Word::from_letters(vec![x_at(alpha, i)]))
            .collect();
        let images: BTreeSet<Word> = (1..=big)
            .map(|i| z.apply(&Word::from_letters(vec![x_at(alpha, i)])))
            .collect();
        if images != letters {
            return Err(FamilyError::ZetaConstraint(format!(
                "zeta_{alpha} does not permute the letters x_{alpha}^(i)"
            )));
        }
    }
    a_word(n, false, zetas, DEFAULT_LETTER_CAP)
}

fn b_word(n: usize, swap_lead: bool, zetas: Option<&[Substitution]>) -> Result<Word, FamilyError> {
    if n == 0 {
        return Err(FamilyError::InvalidArgument("b_n needs n >= 1".into()));
    }
    let mut out = Word::empty();
    if swap_lead {
        out.push(idx("y", 0));
        out.push(idx("x", 0));
    } else {
        out.push(idx("x", 0));
        out.push(idx("y", 0));
    }
    for i in 1..=n {
        out.extend_from(&build_f(2 * i - 1));
    }
    out.extend_from(&build_e(2 * n));
    for i in (0..n).rev() {
        match zetas {
            None => out.extend_from(&build_f(2 * i)),
            Some(z) => {
                let zeta = &z[i];
                out.push(idx("s", 2 * i));
                out.push(idx("x", 2 * i));
                out.extend_from(&zeta.apply(&Word::from_letters(vec![idx("x", 2 * i + 1)])));
                out.extend_from(&zeta.apply(&Word::from_letters(vec![idx("y", 2 * i + 1)])));
                out.push(idx("y", 2 * i));
            }
        }
    }
    Ok(out)
}

pub fn build_b(n: usize) -> Result<Word, FamilyError> {
    b_word(n, false, None)
}

pub fn build_b_prime(n: usize) -> Result<Word, FamilyError> {
    b_word(n, true, None)
}

/// The word obtained from `b_n` by replacing each trailing factor `f_{2i}`
/// with `s_{2i} x_{2i} ζ_i(x_{2i+1}) ζ_i(y_{2i+1}) y_{2i}`. Each `ζ_ℓ` must
/// map `{x_{2ℓ+1}, y_{2ℓ+1}}` onto itself.
pub fn build_b_variant(n: usize, zetas: &[Substitution]) -> Result<Word, FamilyError> {
    if zetas.len() != n {
        return Err(FamilyError::InvalidArgument(format!(
            "b-variant for n = {n} needs {n} zeta maps, got {}",
            zetas.len()
        )));
    }
    for (l, z) in zetas.iter().enumerate() {
        let pair: BTreeSet<Word> = [idx("x", 2 * l + 1), idx("y", 2 * l + 1)]
            .into_iter()
            .map(|c| Word::from_letters(vec![c]))
            .collect();
        let images: BTreeSet<Word> = pair.iter().map(|c| z.apply(c)).collect();
        if images != pair {
            return Err(FamilyError::ZetaConstraint(format!(
                "zeta_{l} does not map {{x_{k}, y_{k}}} onto itself",
                k = 2 * l + 1
            )));
        }
    }
    b_word(n, false, Some(zetas))
}

/// The swap `x_{2ℓ+1} <-> y_{2ℓ+1}`, one of the two admissible `ζ_ℓ`.
pub fn b_zeta_swap(l: usize) -> Substitution {
    let (x, y) = (idx("x", 2 * l + 1), idx("y", 2 * l + 1));
    Substitution::from_pairs([
        (x.clone(), Word::from_letters(vec![y.clone()])),
        (y, Word::from_letters(vec![x])),
    ])
}

/// The permutation `x_α^(i) -> x_α^(perm[i-1])`.
pub fn a_zeta_perm(alpha: &IndexTuple, perm: &[u32]) -> Substitution {
    Substitution::from_pairs(
        perm.iter()
            .enumerate()
            .map(|(i, &p)| (x_at(alpha, i as u32 + 1), Word::from_letters(vec![x_at(alpha, p)]))),
    )
}

/// The endomorphism η used to map `a`-words onto `b`-words.
pub fn eta(n: usize) -> Substitution {
    let big = 2 * n;
    let mut s = Substitution::erasing();
    let one = |l: Letter| Word::from_letters(vec![l]);
    s.set(plain('x'), one(idx("x", 0)));
    s.set(plain('y'), one(idx("y", 0)));
    s.set(plain('s'), one(idx("s", 0)));
    for q in 1..big {
        s.set(idx("s", q), one(idx("s", q)));
    }
    for q in 1..=big {
        let g = IndexTuple::smallest(q);
        s.set(x_at(&g, 1), one(idx("x", q)));
        s.set(x_at(&g, 2), one(idx("y", q)));
    }
    let top = IndexTuple::smallest(big);
    s.set(s_at(&top, 1), one(idx("s", big)));
    s.set(s_at(&top, 2), one(idx("t", big)));
    s
}

/// Every factor of length two occurs exactly once.
pub fn unique_bigrams(w: &Word) -> bool {
    let mut seen = BTreeSet::new();
    w.letters().windows(2).all(|p| seen.insert(p))
}

/// A divider (or `None` for `t_0`) followed by its block's subblocks.
pub type BlockShape = Vec<(Option<Letter>, Vec<Vec<Letter>>)>;

/// The full decomposition of `a_n` (or `a_n'` when `primed`) read off
/// directly from its block/subblock layout, without going through the word.
pub fn a_decomposition_layout(n: usize, primed: bool) -> Result<BlockShape, FamilyError> {
    if n == 0 {
        return Err(FamilyError::InvalidArgument("a_n needs n >= 1".into()));
    }
    check_len(format!("a_{n}"), len_a(n), DEFAULT_LETTER_CAP)?;
    let big = 2 * n as u32;
    let mut shape: BlockShape = Vec::new();
    let lead = if primed { vec![plain('y'), plain('x')] } else { vec![plain('x'), plain('y')] };
    shape.push((None, vec![lead]));

    // 1-blocks after s_{2i-1}, i < n: x_γ^(j) | x_{γ+j}^(1..2n) | ...
    // and the 2-blocks after s_{2i}: same layout
    let grouped = |k: usize| -> Result<Vec<Vec<Letter>>, FamilyError> {
        let mut parts = Vec::new();
        for g in index_set(big as usize, k)? {
            for j in 1..=big {
                parts.push(vec![x_at(&g, j)]);
                let gj = g.extend(j);
                parts.push((1..=big).map(|l| x_at(&gj, l)).collect());
            }
        }
        Ok(parts)
    };
    for i in 1..n {
        shape.push((Some(idx("s", 2 * i - 1)), grouped(2 * i - 1)?));
    }
    // 1-block after s_{2n-1}: x_γ^(j) | x_{γ+j}^(1) | ... | x_{γ+j}^(2n)
    let mut parts = Vec::new();
    for g in index_set(big as usize, 2 * n - 1)? {
        for j in 1..=big {
            parts.push(vec![x_at(&g, j)]);
            let gj = g.extend(j);
            for l in 1..=big {
                parts.push(vec![x_at(&gj, l)]);
            }
        }
    }
    shape.push((Some(idx("s", 2 * n - 1)), parts));
    for g in index_set(big as usize, 2 * n)? {
        for j in 1..=big {
            shape.push((Some(s_at(&g, j)), vec![vec![x_at(&g, j)]]));
        }
    }
    for i in (1..n).rev() {
        shape.push((Some(idx("s", 2 * i)), grouped(2 * i)?));
    }
    let one = IndexTuple::smallest(1);
    shape.push((
        Some(plain('s')),
        vec![
            vec![plain('x')],
            (1..=big).map(|i| x_at(&one, i)).collect(),
            vec![plain('y')],
        ],
    ));
    Ok(shape)
}

fn phi() -> Vec<Identity> {
    vec![
        ident("phi1: xxy = yxx"),
        ident("phi2: xxyz = xyxzx"),
        ident("sigma3: xzxyty = xzyxty"),
    ]
}

pub fn sigma1() -> Identity {
    ident("sigma1: xyzxty = yxzxty")
}

pub fn sigma2() -> Identity {
    ident("sigma2: xtyzxy = xtyzyx")
}

pub fn sigma3() -> Identity {
    ident("sigma3: xzxyty = xzyxty")
}

/// The defining identities of a variety.
pub fn variety_basis(v: VarietyId) -> IdentitySystem {
    let ids: Vec<Identity> = match v {
        VarietyId::T => vec![ident("trivial: x = 1")],
        VarietyId::SL => vec![ident("idem: x = xx"), ident("comm: xy = yx")],
        VarietyId::C => vec![ident("x2x3: xx = xxx"), ident("comm: xy = yx")],
        VarietyId::D1 => vec![
            ident("x2x3: xx = xxx"),
            ident("d1a: xxy = xyx"),
            ident("d1b: xyx = yxx"),
        ],
        VarietyId::D2 => {
            let mut b = phi();
            b.extend([sigma1(), sigma2()]);
            b
        }
        VarietyId::M => {
            let mut b = phi();
            b.extend([ident("m1: xyzxy = yxzxy"), sigma2()]);
            b
        }
        VarietyId::N => {
            let mut b = phi();
            b.push(sigma2());
            b
        }
        VarietyId::DualM => return variety_basis(VarietyId::M).dual(),
        VarietyId::DualN => return variety_basis(VarietyId::N).dual(),
    };
    IdentitySystem::from_identities(&v.to_string(), ids).expect("basis names are distinct")
}

/// `{a_n ≈ a_n' : n ∈ K, n ≤ cap}`.
pub fn sigma_k(k: &BTreeSet<usize>, cap: usize) -> Result<IdentitySystem, FamilyError> {
    let mut sys = IdentitySystem::new("sigma_K");
    for &n in k.iter().filter(|&&n| n <= cap) {
        let id = Identity::named(&format!("a{n}"), build_a(n)?, build_a_prime(n)?);
        sys.push(id).expect("names a1, a2, ... are distinct");
    }
    Ok(sys)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::blocks::{are_1_equivalent, full_decompose, is_reduced};
    use crate::word::w;

    fn t(v: &[u32]) -> IndexTuple {
        IndexTuple::new(v.to_vec()).unwrap()
    }

    #[test]
    fn index_sets() {
        assert_eq!(index_set(2, 1).unwrap(), vec![t(&[1])]);
        assert_eq!(index_set(2, 2).unwrap(), vec![t(&[1, 1]), t(&[1, 2])]);
        assert_eq!(
            index_set(2, 3).unwrap(),
            vec![t(&[1, 1, 1]), t(&[1, 1, 2]), t(&[1, 2, 1]), t(&[1, 2, 2])]
        );
        assert_eq!(index_set(3, 4).unwrap().len(), 27);
        assert!(index_set(0, 1).is_err());
        assert!(matches!(
            index_set_capped(10, 8, 1000),
            Err(FamilyError::TooLarge { .. })
        ));
        assert_eq!(t(&[1, 2]).extend(3), t(&[1, 2, 3]));
        assert!(IndexTuple::new(vec![2, 1]).is_err());
    }

    #[test]
    fn small_families() {
        assert_eq!(build_e(2), w("s_2 x_2 t_2 y_2"));
        assert_eq!(build_f(0), w("s_0 x_0 x_1 y_1 y_0"));
        assert_eq!(
            build_c(2).unwrap(),
            w("s[1,1]^1 x[1,1]^1 s[1,1]^2 x[1,1]^2 s[1,2]^1 x[1,2]^1 s[1,2]^2 x[1,2]^2")
        );
        assert_eq!(
            build_d(2, 1).unwrap(),
            w("s_1 x_1^1 x[1,1]^1 x[1,1]^2 x_1^2 x[1,2]^1 x[1,2]^2")
        );
    }

    #[test]
    fn b1_expansion() {
        assert_eq!(
            build_b(1).unwrap(),
            w("x_0 y_0 s_1 x_1 x_2 y_2 y_1 s_2 x_2 t_2 y_2 s_0 x_0 x_1 y_1 y_0")
        );
        assert_eq!(
            build_b_prime(1).unwrap(),
            w("y_0 x_0 s_1 x_1 x_2 y_2 y_1 s_2 x_2 t_2 y_2 s_0 x_0 x_1 y_1 y_0")
        );
        assert_eq!(build_b(2).unwrap().len(), 26);
    }

    #[test]
    fn a1_expansion() {
        let a1 = build_a(1).unwrap();
        let expected = w(
            "x y s_1 x_1^1 x[1,1]^1 x[1,1]^2 x_1^2 x[1,2]^1 x[1,2]^2 \
             s[1,1]^1 x[1,1]^1 s[1,1]^2 x[1,1]^2 s[1,2]^1 x[1,2]^1 s[1,2]^2 x[1,2]^2 \
             s x x_1^1 x_1^2 y",
        );
        assert_eq!(a1, expected);
        assert_eq!(a1.len(), 22);
        assert_eq!(a1.content().len(), 14);
        let a1p = build_a_prime(1).unwrap();
        assert_eq!(a1p[0], a1[1]);
        assert_eq!(a1p[1], a1[0]);
        assert_eq!(a1p.factor(2, a1p.len()), a1.factor(2, a1.len()));
    }

    #[test]
    fn a2_size_and_cap() {
        assert_eq!(build_a(2).unwrap().len(), 944);
        assert!(matches!(build_a(3), Err(FamilyError::TooLarge { .. })));
        assert!(build_a_capped(3, 1_000_000).is_ok());
    }

    #[test]
    fn families_are_reduced() {
        for n in 1..=2 {
            for word in [build_a(n), build_a_prime(n), build_b(n), build_b_prime(n)] {
                assert!(is_reduced(&word.unwrap()));
            }
            assert!(are_1_equivalent(&build_a(n).unwrap(), &build_a_prime(n).unwrap()).unwrap());
        }
    }

    #[test]
    fn layout_matches_decomposition() {
        for n in 1..=2 {
            for primed in [false, true] {
                let word = if primed { build_a_prime(n) } else { build_a(n) }.unwrap();
                assert_eq!(
                    full_decompose(&word).unwrap().shape(),
                    a_decomposition_layout(n, primed).unwrap()
                );
            }
        }
    }

    #[test]
    fn eta_maps_a_to_b() {
        for n in 1..=2 {
            let e = eta(n);
            assert_eq!(e.apply(&build_a(n).unwrap()), build_b(n).unwrap());
            assert_eq!(e.apply(&build_a_prime(n).unwrap()), build_b_prime(n).unwrap());
        }
        assert_eq!(eta(1).apply(&w("z")), Word::empty());
    }

    #[test]
    fn b_variants() {
        let id = vec![Substitution::identity()];
        assert_eq!(build_b_variant(1, &id).unwrap(), build_b(1).unwrap());
        let swapped = build_b_variant(1, &[b_zeta_swap(0)]).unwrap();
        assert!(swapped.to_string().ends_with("s_0 x_0 y_1 x_1 y_0"));
        let bad = Substitution::from_pairs([(idx("x", 1), w("z"))]);
        assert!(matches!(
            build_b_variant(1, &[bad]),
            Err(FamilyError::ZetaConstraint(_))
        ));
        assert!(build_b_variant(2, &id).is_err());
    }

    #[test]
    fn a_variants() {
        assert_eq!(build_a_variant(1, &AZetas::new()).unwrap(), build_a(1).unwrap());
        assert_eq!(build_a_variant(2, &AZetas::new()).unwrap(), build_a(2).unwrap());
        let one = IndexTuple::smallest(1);
        let mut z = AZetas::new();
        z.insert(one.clone(), a_zeta_perm(&one, &[2, 1]));
        let v = build_a_variant(1, &z).unwrap();
        assert!(v.to_string().ends_with("s x x_1^2 x_1^1 y"));
        assert!(unique_bigrams(&v));
        let mut bad = AZetas::new();
        bad.insert(one.clone(), a_zeta_perm(&one, &[1, 1]));
        assert!(build_a_variant(1, &bad).is_err());
        let mut even = AZetas::new();
        even.insert(t(&[1, 1]), Substitution::identity());
        assert!(build_a_variant(1, &even).is_err());
    }

    #[test]
    fn bigrams() {
        assert!(!unique_bigrams(&w("xyxy")));
        assert!(unique_bigrams(&w("xyzx")));
        assert!(unique_bigrams(&build_b(1).unwrap()));
        assert!(unique_bigrams(&build_a(2).unwrap()));
    }

    #[test]
    fn bases_and_sigma_k() {
        let n = variety_basis(VarietyId::N);
        let sides: Vec<(Word, Word)> = n.identities().iter().map(|i| (i.lhs.clone(), i.rhs.clone())).collect();
        assert_eq!(
            sides,
            vec![
                (w("xxy"), w("yxx")),
                (w("xxyz"), w("xyxzx")),
                (w("xzxyty"), w("xzyxty")),
                (w("xtyzxy"), w("xtyzyx")),
            ]
        );
        assert!(sigma_k(&BTreeSet::new(), 3).unwrap().is_empty());
        let s = sigma_k(&BTreeSet::from([1]), 3).unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(s.identities()[0].lhs, build_a(1).unwrap());
        assert_eq!(s.identities()[0].rhs, build_a_prime(1).unwrap());
        assert!(sigma_k(&BTreeSet::from([3]), 3).is_err());
        assert!(sigma_k(&BTreeSet::from([3]), 2).unwrap().is_empty());
        assert_eq!(variety_basis(VarietyId::DualM).len(), 5);
    }
}
