//! Dividers, blocks and subblocks of words.
//!
//! The simple letters of a word `w` (in order) are its dividers `t_1..t_m`,
//! and `w = w_0 t_1 w_1 ... t_m w_m` where the blocks `w_i` are possibly
//! empty words over the multiple letters. `t_0` is the empty divider.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::word::{Letter, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BlockError {
    #[error("word {0} is not reduced")]
    NotReduced(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Decomposition {
    /// `dividers[0]` is the empty divider `t_0` and is always `None`.
    pub dividers: Vec<Option<Letter>>,
    pub blocks: Vec<Word>,
}

impl Decomposition {
    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    /// Simple letters t_1..t_m.
    pub fn divider_letters(&self) -> impl Iterator<Item = &Letter> {
        self.dividers.iter().flatten()
    }

    pub fn reassemble(&self) -> Word {
        let mut out = Word::empty();
        for (t, b) in self.dividers.iter().zip(&self.blocks) {
            if let Some(t) = t {
                out.push(t.clone());
            }
            out.extend_from(b);
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "ranks")]
pub enum BlockClass {
    Empty,
    OneBlock,
    TwoBlock,
    /// Occurrence rank of each letter of the block, in block order.
    Mixed(Vec<usize>),
}

impl BlockClass {
    fn is_reduced_ok(&self) -> bool {
        !matches!(self, BlockClass::Mixed(_))
    }
}

/// Per-position bookkeeping shared by the decomposition queries.
struct Positions {
    /// occurrence rank (1-based) of the letter at each position
    rank: Vec<usize>,
    /// block index of each position; dividers get the index of the block
    /// that follows them
    block: Vec<usize>,
}

fn positions(w: &Word) -> Positions {
    let counts = w.occurrence_counts();
    let mut seen: BTreeMap<&Letter, usize> = BTreeMap::new();
    let mut rank = Vec::with_capacity(w.len());
    let mut block = Vec::with_capacity(w.len());
    let mut current = 0;
    for l in w {
        let r = seen.entry(l).or_insert(0);
        *r += 1;
        rank.push(*r);
        if counts[l] == 1 {
            current += 1;
        }
        block.push(current);
    }
    Positions { rank, block }
}

pub fn decompose(w: &Word) -> Decomposition {
    let counts = w.occurrence_counts();
    let mut dividers = vec![None];
    let mut blocks = vec![Word::empty()];
    for l in w {
        if counts[l] == 1 {
            dividers.push(Some(l.clone()));
            blocks.push(Word::empty());
        } else {
            blocks.last_mut().expect("at least one block").push(l.clone());
        }
    }
    Decomposition { dividers, blocks }
}

fn classify_all(w: &Word) -> Vec<BlockClass> {
    let pos = positions(w);
    let counts = w.occurrence_counts();
    let nblocks = 1 + counts.values().filter(|c| **c == 1).count();
    let mut ranks: Vec<Vec<usize>> = vec![Vec::new(); nblocks];
    for (i, l) in w.iter().enumerate() {
        if counts[l] > 1 {
            ranks[pos.block[i]].push(pos.rank[i]);
        }
    }
    ranks
        .into_iter()
        .map(|r| {
            if r.is_empty() {
                BlockClass::Empty
            } else if r.iter().all(|k| *k == 1) {
                BlockClass::OneBlock
            } else if r.iter().all(|k| *k == 2) {
                BlockClass::TwoBlock
            } else {
                BlockClass::Mixed(r)
            }
        })
        .collect()
}

/// Classifies block `i` of `w`. `dec` must be the decomposition of `w`.
pub fn classify_block(w: &Word, dec: &Decomposition, i: usize) -> BlockClass {
    debug_assert_eq!(dec.num_blocks(), decompose(w).num_blocks());
    classify_all(w).swap_remove(i)
}

/// Every block is a 1-block or a 2-block (empty blocks are allowed).
pub fn is_reduced(w: &Word) -> bool {
    classify_all(w).iter().all(BlockClass::is_reduced_ok)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Subblock {
    pub letters: Word,
    /// For a subblock of a 1-block: the block holding the second occurrences
    /// of its letters. For a 2-block: the block holding the first ones.
    pub target: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FullBlock {
    pub letters: Word,
    pub class: BlockClass,
    pub subblocks: Vec<Subblock>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FullDecomposition {
    pub dividers: Vec<Option<Letter>>,
    pub blocks: Vec<FullBlock>,
}

impl FullDecomposition {
    pub fn reassemble(&self) -> Word {
        let mut out = Word::empty();
        for (t, b) in self.dividers.iter().zip(&self.blocks) {
            if let Some(t) = t {
                out.push(t.clone());
            }
            for sb in &b.subblocks {
                out.extend_from(&sb.letters);
            }
        }
        out
    }

    /// Contents of the subblocks of block `i`, in order.
    pub fn subblock_contents(&self, i: usize) -> Vec<BTreeSet<Letter>> {
        self.blocks[i]
            .subblocks
            .iter()
            .map(|s| s.letters.content())
            .collect()
    }

    /// Subblock partition of each block as plain letter lists; the shape
    /// used when comparing against hand-built decompositions.
    pub fn shape(&self) -> Vec<(Option<Letter>, Vec<Vec<Letter>>)> {
        self.dividers
            .iter()
            .zip(&self.blocks)
            .map(|(t, b)| {
                let parts = b.subblocks.iter().map(|s| s.letters.letters().to_vec()).collect();
                (t.clone(), parts)
            })
            .collect()
    }
}

/// Prints dividers as `_t_` and separates subblocks with `|`; empty blocks
/// are omitted.
impl fmt::Display for FullDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (t, b) in self.dividers.iter().zip(&self.blocks) {
            if let Some(t) = t {
                parts.push(format!("_{t}_"));
            }
            if !b.subblocks.is_empty() {
                let sbs: Vec<String> = b.subblocks.iter().map(|s| s.letters.to_string()).collect();
                parts.push(sbs.join("|"));
            }
        }
        f.write_str(&parts.join(" "))
    }
}

pub fn full_decompose(w: &Word) -> Result<FullDecomposition, BlockError> {
    let classes = classify_all(w);
    if !classes.iter().all(BlockClass::is_reduced_ok) {
        return Err(BlockError::NotReduced(w.to_string()));
    }
    let dec = decompose(w);
    let pos = positions(w);
    let mut first_block: BTreeMap<&Letter, usize> = BTreeMap::new();
    let mut second_block: BTreeMap<&Letter, usize> = BTreeMap::new();
    for (i, l) in w.iter().enumerate() {
        match pos.rank[i] {
            1 => first_block.insert(l, pos.block[i]),
            _ => second_block.insert(l, pos.block[i]),
        };
    }

    let blocks = dec
        .blocks
        .iter()
        .zip(classes)
        .map(|(block, class)| {
            let target_of = |l: &Letter| match class {
                BlockClass::OneBlock => second_block[l],
                _ => first_block[l],
            };
            let mut subblocks: Vec<Subblock> = Vec::new();
            for l in block {
                let t = target_of(l);
                match subblocks.last_mut() {
                    Some(sb) if sb.target == t => sb.letters.push(l.clone()),
                    _ => subblocks.push(Subblock {
                        letters: Word::from_letters(vec![l.clone()]),
                        target: t,
                    }),
                }
            }
            FullBlock {
                letters: block.clone(),
                class,
                subblocks,
            }
        })
        .collect();

    Ok(FullDecomposition {
        dividers: dec.dividers,
        blocks,
    })
}

/// Same divider sequence and blockwise equal content.
pub fn are_equivalent(u: &Word, v: &Word) -> bool {
    let du = decompose(u);
    let dv = decompose(v);
    du.dividers == dv.dividers
        && du
            .blocks
            .iter()
            .zip(&dv.blocks)
            .all(|(a, b)| a.content() == b.content())
}

/// Equivalent, and corresponding 1-blocks have subblocks with equal
/// contents. Both words must be reduced.
pub fn are_1_equivalent(u: &Word, v: &Word) -> Result<bool, BlockError> {
    let fu = full_decompose(u)?;
    let fv = full_decompose(v)?;
    if !are_equivalent(u, v) {
        return Ok(false);
    }
    Ok((0..fu.blocks.len())
        .filter(|&i| fu.blocks[i].class == BlockClass::OneBlock)
        .all(|i| fu.subblock_contents(i) == fv.subblock_contents(i)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::w;

    const EXAMPLE: &str = "abcdxcbyezaed";

    fn l(c: char) -> Letter {
        Letter::plain(c)
    }

    #[test]
    fn decomposes_example_word() {
        let d = decompose(&w(EXAMPLE));
        assert_eq!(d.dividers, vec![None, Some(l('x')), Some(l('y')), Some(l('z'))]);
        assert_eq!(d.blocks, vec![w("abcd"), w("cb"), w("e"), w("aed")]);
        assert_eq!(d.reassemble(), w(EXAMPLE));
    }

    #[test]
    fn decomposes_empty_word() {
        let d = decompose(&Word::empty());
        assert_eq!(d.dividers, vec![None]);
        assert_eq!(d.blocks, vec![Word::empty()]);
    }

    #[test]
    fn decomposes_sigma1_side() {
        let d = decompose(&w("xyzxty"));
        assert_eq!(d.dividers, vec![None, Some(l('z')), Some(l('t'))]);
        assert_eq!(d.blocks, vec![w("xy"), w("x"), w("y")]);
    }

    #[test]
    fn classifies_blocks() {
        let u = w(EXAMPLE);
        let d = decompose(&u);
        assert_eq!(classify_block(&u, &d, 0), BlockClass::OneBlock);
        assert_eq!(classify_block(&u, &d, 1), BlockClass::TwoBlock);
        assert_eq!(classify_block(&u, &d, 2), BlockClass::OneBlock);
        assert_eq!(classify_block(&u, &d, 3), BlockClass::TwoBlock);
        let v = w("xzxyty");
        let d = decompose(&v);
        assert_eq!(classify_block(&v, &d, 1), BlockClass::Mixed(vec![2, 1]));
        let e = w("xstx");
        let d = decompose(&e);
        assert_eq!(classify_block(&e, &d, 1), BlockClass::Empty);
    }

    #[test]
    fn reducedness() {
        assert!(is_reduced(&w(EXAMPLE)));
        assert!(!is_reduced(&w("xzxyty")));
        assert!(!is_reduced(&w("xtxsx")));
        assert!(is_reduced(&Word::empty()));
        assert!(is_reduced(&w("xstx")));
    }

    #[test]
    fn full_decomposition_of_example() {
        let f = full_decompose(&w(EXAMPLE)).unwrap();
        assert_eq!(f.to_string(), "a|bc|d _x_ cb _y_ e _z_ a|e|d");
        assert_eq!(f.reassemble(), w(EXAMPLE));
        let f = full_decompose(&w("xyzxty")).unwrap();
        assert_eq!(f.blocks[0].subblocks.len(), 2);
        assert_eq!(f.to_string(), "x|y _z_ x _t_ y");
        assert_eq!(
            full_decompose(&w("xzxyty")),
            Err(BlockError::NotReduced("xzxyty".into()))
        );
    }

    #[test]
    fn empty_blocks_have_no_subblocks() {
        let f = full_decompose(&w("xstx")).unwrap();
        assert!(f.blocks[1].subblocks.is_empty());
        assert_eq!(f.to_string(), "x _s_ _t_ x");
    }

    #[test]
    fn equivalence_examples() {
        assert!(are_equivalent(&w("xyzxty"), &w("yxzxty")));
        assert!(!are_equivalent(&w("xyzxty"), &w("xzxyty")));
        assert!(are_equivalent(&w(EXAMPLE), &w(EXAMPLE)));
        assert!(!are_equivalent(&w("xsx"), &w("xtx")));
    }

    #[test]
    fn one_equivalence_examples() {
        assert!(!are_1_equivalent(&w("xysxty"), &w("yxsxty")).unwrap());
        assert!(are_1_equivalent(&w("xtyzxy"), &w("xtyzyx")).unwrap());
        assert!(are_1_equivalent(&w("xysyx"), &w("yxsxy")).unwrap());
        assert!(are_1_equivalent(&w("xzxyty"), &w("xzxyty")).is_err());
    }
}
