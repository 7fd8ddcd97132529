//! Seeded generators of reduced words and identities for randomized checks.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::blocks::{full_decompose, is_reduced, BlockClass};
use crate::word::{Identity, Letter, Word};

const ALPHABET: &[u8] = b"abcdefghijklmnopqrstuvwxyz";

fn pool(n: usize) -> Vec<Letter> {
    ALPHABET[..n].iter().map(|&c| Letter::plain(c as char)).collect()
}

/// A random reduced word over the first `max_letters` letters of the
/// alphabet with at most `max_len` letters. The numbers of simple and
/// multiple letters are drawn first, then a uniformly random arrangement of
/// that multiset is drawn until it is reduced.
pub fn random_reduced_word<R: Rng + ?Sized>(rng: &mut R, max_letters: usize, max_len: usize) -> Word {
    assert!(max_letters >= 1 && max_len >= 1, "need room for one letter");
    let max_letters = max_letters.min(ALPHABET.len());
    // (simple, multiple) splits that fit; a word with multiple letters needs
    // a divider to be reduced
    let shapes: Vec<(usize, usize)> = (1..=max_letters)
        .flat_map(|k| (0..=k).map(move |p| (k - p, p)))
        .filter(|&(m, p)| m + 2 * p <= max_len && (p == 0 || m >= 1))
        .collect();
    let &(simple, multiple) = shapes.choose(rng).expect("a single simple letter always fits");
    let mut letters = pool(simple + multiple);
    letters.shuffle(rng);
    let mut multiset: Vec<Letter> = letters.clone();
    multiset.extend_from_slice(&letters[simple..]);
    loop {
        multiset.shuffle(rng);
        let w = Word::from_letters(multiset.clone());
        if is_reduced(&w) {
            return w;
        }
    }
}

/// Permutes the letters inside every 2-block of a reduced word.
pub fn shuffle_two_blocks<R: Rng + ?Sized>(rng: &mut R, w: &Word) -> Word {
    shuffle_blocks(rng, w, |c| *c == BlockClass::TwoBlock)
}

/// Permutes the letters inside every block of a reduced word.
pub fn shuffle_all_blocks<R: Rng + ?Sized>(rng: &mut R, w: &Word) -> Word {
    shuffle_blocks(rng, w, |_| true)
}

fn shuffle_blocks<R: Rng + ?Sized>(rng: &mut R, w: &Word, pick: impl Fn(&BlockClass) -> bool) -> Word {
    let f = full_decompose(w).expect("input must be reduced");
    let mut out = Word::empty();
    for (t, b) in f.dividers.iter().zip(&f.blocks) {
        if let Some(t) = t {
            out.push(t.clone());
        }
        let mut letters = b.letters.letters().to_vec();
        if pick(&b.class) {
            letters.shuffle(rng);
        }
        out.extend_from(&Word::from_letters(letters));
    }
    out
}

/// Permutes the second occurrences of the multiple letters among all
/// 2-block positions, keeping 1-blocks and dividers in place. The result
/// need not be reduced.
pub fn scatter_second_occurrences<R: Rng + ?Sized>(rng: &mut R, w: &Word) -> Word {
    let f = full_decompose(w).expect("input must be reduced");
    let mut seconds: Vec<Letter> = f
        .blocks
        .iter()
        .filter(|b| b.class == BlockClass::TwoBlock)
        .flat_map(|b| b.letters.letters().to_vec())
        .collect();
    seconds.shuffle(rng);
    let mut next = seconds.into_iter();
    let mut out = Word::empty();
    for (t, b) in f.dividers.iter().zip(&f.blocks) {
        if let Some(t) = t {
            out.push(t.clone());
        }
        for l in b.letters.iter() {
            if b.class == BlockClass::TwoBlock {
                out.push(next.next().expect("same number of positions"));
            } else {
                out.push(l.clone());
            }
        }
    }
    out
}

/// A random identity with both sides reduced. The right side is one of: an
/// independent reduced word, a shuffle of every block of the left side, a
/// shuffle of its 2-blocks, or the left side with two adjacent letters
/// exchanged (when that stays reduced).
pub fn random_reduced_identity<R: Rng + ?Sized>(rng: &mut R, max_letters: usize, max_len: usize) -> Identity {
    let u = random_reduced_word(rng, max_letters, max_len);
    let v = match rng.gen_range(0..4) {
        0 => random_reduced_word(rng, max_letters, max_len),
        1 => shuffle_all_blocks(rng, &u),
        2 => shuffle_two_blocks(rng, &u),
        _ => {
            let mut letters = u.letters().to_vec();
            if letters.len() >= 2 {
                let i = rng.gen_range(0..letters.len() - 1);
                letters.swap(i, i + 1);
            }
            let v = Word::from_letters(letters);
            if is_reduced(&v) {
                v
            } else {
                shuffle_all_blocks(rng, &u)
            }
        }
    };
    Identity::new(u, v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::blocks::are_equivalent;
    use rand::rngs::StdRng;
    use rand::SeedableRng;

    #[test]
    fn words_are_reduced_and_bounded() {
        let mut rng = StdRng::seed_from_u64(7);
        for _ in 0..500 {
            let w = random_reduced_word(&mut rng, 5, 10);
            assert!(is_reduced(&w));
            assert!(w.len() <= 10 && w.content().len() <= 5 && !w.is_empty());
            for b in full_decompose(&w).unwrap().blocks {
                assert!(b.letters.is_linear());
            }
        }
    }

    #[test]
    fn shuffles_keep_structure() {
        let mut rng = StdRng::seed_from_u64(8);
        for _ in 0..300 {
            let u = random_reduced_word(&mut rng, 5, 10);
            for v in [shuffle_all_blocks(&mut rng, &u), shuffle_two_blocks(&mut rng, &u)] {
                assert!(is_reduced(&v));
                assert!(are_equivalent(&u, &v));
            }
            let s = scatter_second_occurrences(&mut rng, &u);
            assert_eq!(s.occurrence_counts(), u.occurrence_counts());
        }
    }

    #[test]
    fn identities_are_reduced_and_reproducible() {
        let draw = |seed| {
            let mut rng = StdRng::seed_from_u64(seed);
            (0..50).map(|_| random_reduced_identity(&mut rng, 5, 10)).collect::<Vec<_>>()
        };
        let a = draw(3);
        assert_eq!(a, draw(3));
        for id in &a {
            assert!(is_reduced(&id.lhs) && is_reduced(&id.rhs));
        }
    }
}
