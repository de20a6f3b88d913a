//! Binary words over the alphabet `{a, b}` with `a ≺ b`.
//!
//! A step sequence on `C_n(a,b)` is a word: letter `a` for a bond of the
//! smaller step size, letter `b` for the larger one.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::numtheory::{binomial, divisors, gcd_unchecked, moebius, BigCount};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[repr(u8)]
pub enum Letter {
    A = 0,
    B = 1,
}

impl Letter {
    pub fn as_char(self) -> char {
        match self {
            Letter::A => 'a',
            Letter::B => 'b',
        }
    }
}

/// A nonempty word. Ordering is lexicographic on letters, so a proper prefix
/// precedes all of its extensions.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word {
    letters: Vec<Letter>,
}

/// `word == root^repetition` with `root` primitive.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WordDecomposition {
    pub root: Word,
    pub repetition: usize,
}

impl Word {
    pub fn new(letters: Vec<Letter>) -> Result<Self> {
        if letters.is_empty() {
            return Err(Error::InvalidWord("words must be nonempty".into()));
        }
        Ok(Word { letters })
    }

    /// Word of length `len` whose `i`-th letter is `b` iff bit `i` of `mask` is set.
    pub fn from_mask(len: usize, mask: u64) -> Result<Self> {
        if len > 64 {
            return Err(Error::InvalidWord(format!("mask words are limited to 64 letters, got {len}")));
        }
        Word::new(
            (0..len)
                .map(|i| if mask >> i & 1 == 1 { Letter::B } else { Letter::A })
                .collect(),
        )
    }

    /// Parses a word written over `{a, b}`.
    pub fn parse_ab(s: &str) -> Result<Self> {
        let letters = s
            .chars()
            .map(|c| match c {
                'a' => Ok(Letter::A),
                'b' => Ok(Letter::B),
                other => Err(Error::InvalidWord(format!("unexpected letter {other:?} in {s:?}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Word::new(letters)
    }

    /// Parses a word written in step notation for the step sizes `(a, b)`.
    ///
    /// Accepts comma-separated step sizes (`"5,14,14"`), or, when both step
    /// sizes are single digits, bare digits (`"114"`). Words over `{a, b}`
    /// are accepted as well.
    pub fn parse_steps(s: &str, a: u64, b: u64) -> Result<Self> {
        if s.chars().all(|c| c == 'a' || c == 'b') {
            return Word::parse_ab(s);
        }
        let to_letter = |step: u64| {
            if step == a {
                Ok(Letter::A)
            } else if step == b {
                Ok(Letter::B)
            } else {
                Err(Error::InvalidWord(format!("step {step} is neither {a} nor {b}")))
            }
        };
        let steps: Vec<u64> = if s.contains(',') || a >= 10 || b >= 10 {
            s.split(',')
                .map(|t| {
                    t.trim()
                        .parse()
                        .map_err(|_| Error::InvalidWord(format!("bad step {t:?} in {s:?}")))
                })
                .collect::<Result<_>>()?
        } else {
            s.chars()
                .map(|c| {
                    c.to_digit(10)
                        .map(u64::from)
                        .ok_or_else(|| Error::InvalidWord(format!("bad step digit {c:?} in {s:?}")))
                })
                .collect::<Result<_>>()?
        };
        Word::new(steps.into_iter().map(to_letter).collect::<Result<_>>()?)
    }

    /// Renders the word in step notation: bare digits when both step sizes
    /// are single digits, comma-separated step sizes otherwise.
    pub fn to_steps(&self, a: u64, b: u64) -> String {
        let step = |l: &Letter| match l {
            Letter::A => a,
            Letter::B => b,
        };
        if a < 10 && b < 10 {
            self.letters.iter().map(|l| step(l).to_string()).collect()
        } else {
            self.letters
                .iter()
                .map(|l| step(l).to_string())
                .collect::<Vec<_>>()
                .join(",")
        }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    /// Always false; kept for clippy's `len_without_is_empty`.
    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn b_count(&self) -> usize {
        self.letters.iter().filter(|&&l| l == Letter::B).count()
    }

    /// `σ^s(w)`: moves the first `s` letters (mod length) to the end.
    pub fn rotate(&self, s: i64) -> Word {
        let len = self.len() as i64;
        let shift = s.rem_euclid(len) as usize;
        let mut letters = self.letters.clone();
        letters.rotate_left(shift);
        Word { letters }
    }

    /// Concatenation of `r` copies.
    pub fn pow(&self, r: usize) -> Result<Word> {
        if r == 0 {
            return Err(Error::InvalidWord("zeroth power is the empty word".into()));
        }
        Ok(Word {
            letters: self.letters.repeat(r),
        })
    }

    /// Smallest period `p` dividing the length with `w = (w[..p])^(len/p)`.
    pub fn decompose(&self) -> WordDecomposition {
        let p = smallest_period(&self.letters);
        WordDecomposition {
            root: Word {
                letters: self.letters[..p].to_vec(),
            },
            repetition: self.len() / p,
        }
    }

    pub fn is_primitive(&self) -> bool {
        smallest_period(&self.letters) == self.len()
    }

    /// True iff the word strictly precedes each of its nontrivial rotations.
    pub fn is_lyndon(&self) -> bool {
        self.is_primitive() && least_rotation(&self.letters) == 0
    }

    /// The Lyndon word in the rotation class, or `None` for nonprimitive words.
    pub fn lyndon_rotation(&self) -> Option<Word> {
        if !self.is_primitive() {
            return None;
        }
        Some(self.rotate(least_rotation(&self.letters) as i64))
    }
}

impl AsRef<[Letter]> for Word {
    fn as_ref(&self) -> &[Letter] {
        &self.letters
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.letters {
            write!(f, "{}", l.as_char())?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Word::parse_ab(s)
    }
}

/// Smallest `p | len` such that the sequence is a power of its length-`p` prefix.
pub(crate) fn smallest_period<T: PartialEq>(seq: &[T]) -> usize {
    let n = seq.len();
    if n == 0 {
        return 0;
    }
    // KMP failure function: border[i] = length of the longest proper border of seq[..=i].
    let mut border = vec![0usize; n];
    for i in 1..n {
        let mut j = border[i - 1];
        while j > 0 && seq[i] != seq[j] {
            j = border[j - 1];
        }
        if seq[i] == seq[j] {
            j += 1;
        }
        border[i] = j;
    }
    let p = n - border[n - 1];
    if n.is_multiple_of(p) {
        p
    } else {
        n
    }
}

/// Start index of the lexicographically least rotation (the smallest index
/// when several rotations tie).
pub(crate) fn least_rotation<T: Ord>(seq: &[T]) -> usize {
    let n = seq.len();
    let (mut i, mut j, mut k) = (0usize, 1usize, 0usize);
    while i < n && j < n && k < n {
        let x = &seq[(i + k) % n];
        let y = &seq[(j + k) % n];
        match x.cmp(y) {
            std::cmp::Ordering::Equal => k += 1,
            std::cmp::Ordering::Greater => {
                i += k + 1;
                if i == j {
                    i += 1;
                }
                k = 0;
            }
            std::cmp::Ordering::Less => {
                j += k + 1;
                if i == j {
                    j += 1;
                }
                k = 0;
            }
        }
    }
    i.min(j)
}

fn check_length_and_count(l: u64, k: u64) -> Result<()> {
    if l == 0 {
        return Err(Error::RejectedParameters("word length must be at least 1".into()));
    }
    if k > l {
        return Err(Error::RejectedParameters(format!(
            "b-count {k} exceeds length {l}"
        )));
    }
    Ok(())
}

/// `gcd(l, k)` with the convention `gcd(l, 0) = l`.
fn common_period_bound(l: u64, k: u64) -> u64 {
    gcd_unchecked(l, k)
}

/// Signed sum `Σ_{m | gcd(l,k)} μ(m) C(l/m, k/m)`, optionally skipping `m = 1`.
fn moebius_binomial_sum(l: u64, k: u64, skip_one: bool) -> Result<BigInt> {
    let mut sum = BigInt::zero();
    for m in divisors(common_period_bound(l, k))? {
        if skip_one && m == 1 {
            continue;
        }
        let mu = moebius(m)?;
        if mu == 0 {
            continue;
        }
        let c = binomial(l / m, (k / m) as i64).to_bigint();
        if mu > 0 {
            sum += c;
        } else {
            sum -= c;
        }
    }
    Ok(sum)
}

/// Number of Lyndon words of length `l` with exactly `k` letters `b`.
pub fn count_lyndon(l: u64, k: u64) -> Result<BigCount> {
    check_length_and_count(l, k)?;
    let sum = moebius_binomial_sum(l, k, false)?;
    let l_big = BigInt::from(l);
    if !(&sum % &l_big).is_zero() {
        return Err(Error::NonIntegerResult(format!(
            "Lyndon sum {sum} for ({l}, {k}) is not divisible by {l}"
        )));
    }
    BigCount::try_from_bigint(sum / l_big)
}

/// Number of nonprimitive words of length `l` with exactly `k` letters `b`,
/// by inclusion-exclusion over the common divisors of `l` and `k`.
pub fn count_nonprimitive(l: u64, k: u64) -> Result<BigCount> {
    check_length_and_count(l, k)?;
    let sum = -moebius_binomial_sum(l, k, true)?;
    if sum.is_negative() {
        return Err(Error::NonIntegerResult(format!("negative nonprimitive count {sum}")));
    }
    BigCount::try_from_bigint(sum)
}

/// Iterator over all words of length `l` with `k` letters `b`, advancing the
/// `b` positions as combinations in colex order.
pub struct FixedContentWords {
    len: usize,
    positions: Vec<usize>,
    done: bool,
}

impl FixedContentWords {
    pub fn new(len: usize, b_count: usize) -> Self {
        FixedContentWords {
            len,
            positions: (0..b_count).collect(),
            done: len == 0 || b_count > len,
        }
    }
}

impl Iterator for FixedContentWords {
    type Item = Word;

    fn next(&mut self) -> Option<Word> {
        if self.done {
            return None;
        }
        let mut letters = vec![Letter::A; self.len];
        for &p in &self.positions {
            letters[p] = Letter::B;
        }
        let k = self.positions.len();
        // advance to the next combination
        let mut i = 0;
        loop {
            if i == k {
                self.done = true;
                break;
            }
            let limit = if i + 1 < k { self.positions[i + 1] } else { self.len };
            if self.positions[i] + 1 < limit {
                self.positions[i] += 1;
                for (j, p) in self.positions.iter_mut().enumerate().take(i) {
                    *p = j;
                }
                break;
            }
            i += 1;
        }
        Some(Word { letters })
    }
}

/// All Lyndon words of length `l` with `k` letters `b`, in lexicographic
/// order. Fails when `l * C(l, k)` exceeds `budget`.
pub fn list_lyndon(l: u64, k: u64, budget: u128) -> Result<Vec<Word>> {
    check_length_and_count(l, k)?;
    let candidates = binomial(l, k as i64).into_inner() * l;
    if candidates > budget.into() {
        return Err(Error::BudgetExceeded {
            what: format!("listing Lyndon words of length {l} with b-count {k}"),
            needed: u128::try_from(candidates).unwrap_or(u128::MAX),
            budget,
        });
    }
    let mut out: Vec<Word> = FixedContentWords::new(l as usize, k as usize)
        .filter(Word::is_lyndon)
        .collect();
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn rotate_examples() {
        assert_eq!(w("aab").rotate(1), w("aba"));
        assert_eq!(w("abba").rotate(0), w("abba"));
        assert_eq!(w("abb").rotate(3), w("abb"));
        assert_eq!(w("aab").rotate(-1), w("baa"));
    }

    #[test]
    fn decompose_examples() {
        let d = Word::parse_steps("114114114", 1, 4).unwrap().decompose();
        assert_eq!(d.root, w("aab"));
        assert_eq!(d.repetition, 3);

        let d = w("aabab").decompose();
        assert_eq!((d.root, d.repetition), (w("aabab"), 1));

        let d = w("abb").pow(10).unwrap().decompose();
        assert_eq!(d.repetition, 10);
        assert_eq!(d.root, w("abb"));

        let d = w("aaaa").decompose();
        assert_eq!((d.root, d.repetition), (w("a"), 4));
    }

    #[test]
    fn lyndon_examples() {
        assert!(Word::parse_steps("111111444", 1, 4).unwrap().is_lyndon());
        assert!(!w("aba").is_lyndon());
        assert!(!w("abab").is_lyndon());
        assert!(w("a").is_lyndon());
        assert!(w("b").is_lyndon());
        assert!(!w("aa").is_lyndon());
    }

    #[test]
    fn lyndon_rotation_examples() {
        assert_eq!(w("aba").lyndon_rotation(), Some(w("aab")));
        assert_eq!(w("abab").lyndon_rotation(), None);
        assert_eq!(w("baa").lyndon_rotation(), Some(w("aab")));
    }

    #[test]
    fn least_rotation_handles_ties() {
        assert_eq!(least_rotation(&[1, 0, 1, 0]), 1);
        assert_eq!(least_rotation(&[0, 0, 0]), 0);
        assert_eq!(least_rotation(&[2, 1, 1, 2, 1]), 1);
    }

    #[test]
    fn count_lyndon_examples() {
        assert_eq!(count_lyndon(9, 3).unwrap(), 9);
        assert_eq!(count_lyndon(1, 0).unwrap(), 1);
        for l in 2..=30 {
            assert_eq!(count_lyndon(l, 0).unwrap(), 0, "l = {l}");
            assert_eq!(count_lyndon(l, l).unwrap(), 0, "l = {l}");
        }
        assert_eq!(count_lyndon(4, 2).unwrap(), 1);
        assert!(count_lyndon(3, 4).is_err());
        assert!(count_lyndon(0, 0).is_err());
    }

    #[test]
    fn count_nonprimitive_examples() {
        assert_eq!(count_nonprimitive(9, 3).unwrap(), 3);
        assert_eq!(count_nonprimitive(5, 2).unwrap(), 0);
        // abbabb, babbab, bbabba
        assert_eq!(count_nonprimitive(6, 4).unwrap(), 3);
    }

    #[test]
    fn list_lyndon_examples() {
        let nine: Vec<String> = list_lyndon(9, 3, 1 << 20)
            .unwrap()
            .iter()
            .map(|x| x.to_steps(1, 4))
            .collect();
        assert_eq!(
            nine,
            [
                "111111444", "111114144", "111114414", "111141144", "111141414", "111144114",
                "111411144", "111411414", "111414114",
            ]
        );
        assert_eq!(list_lyndon(1, 1, 10).unwrap(), vec![w("b")]);
        assert_eq!(list_lyndon(3, 1, 10).unwrap(), vec![w("aab")]);
        assert!(matches!(list_lyndon(40, 20, 1 << 20), Err(Error::BudgetExceeded { .. })));
    }

    #[test]
    fn fixed_content_words_cover_every_word_once() {
        for len in 1..=10usize {
            for k in 0..=len {
                let mut words: Vec<Word> = FixedContentWords::new(len, k).collect();
                assert!(words.iter().all(|x| x.len() == len && x.b_count() == k));
                let total = words.len();
                words.sort();
                words.dedup();
                assert_eq!(words.len(), total);
                assert_eq!(binomial(len as u64, k as i64), total as u64);
            }
        }
    }

    #[test]
    fn step_notation_round_trip() {
        let x = Word::parse_steps("5,14,14", 5, 14).unwrap();
        assert_eq!(x, w("abb"));
        assert_eq!(x.to_steps(5, 14), "5,14,14");
        assert_eq!(Word::parse_steps("aab", 1, 4).unwrap(), w("aab"));
        assert!(Word::parse_steps("115", 1, 4).is_err());
        assert!(Word::parse_ab("").is_err());
        assert!(Word::parse_ab("abc").is_err());
    }
}
