use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::str::FromStr;

use super::{GrpError, DEFAULT_DEPTH_CAP};

/// A generator or its inverse, coded as `2·generator + inverse`.
///
/// The induced order is `a < A < b < B < …`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter(u8);

impl Letter {
    pub const MAX_RANK: usize = 26;

    pub fn new(generator: usize, inverse: bool) -> Self {
        assert!(generator < Self::MAX_RANK, "generator index out of range");
        Letter((2 * generator) as u8 | inverse as u8)
    }

    pub fn generator(self) -> usize {
        (self.0 >> 1) as usize
    }

    pub fn is_inverse(self) -> bool {
        self.0 & 1 == 1
    }

    pub fn inverse(self) -> Self {
        Letter(self.0 ^ 1)
    }

    pub fn code(self) -> usize {
        self.0 as usize
    }

    pub fn from_code(code: usize) -> Self {
        assert!(code < 2 * Self::MAX_RANK);
        Letter(code as u8)
    }

    pub fn to_char(self) -> char {
        let c = (b'a' + self.generator() as u8) as char;
        if self.is_inverse() {
            c.to_ascii_uppercase()
        } else {
            c
        }
    }

    pub fn from_char(c: char) -> Result<Self, GrpError> {
        if c.is_ascii_lowercase() {
            Ok(Letter::new((c as u8 - b'a') as usize, false))
        } else if c.is_ascii_uppercase() {
            Ok(Letter::new((c as u8 - b'A') as usize, true))
        } else {
            Err(GrpError::InvalidLetter(c))
        }
    }
}

/// A freely reduced word in the free group.
///
/// Words order shortlex: by length, then lexicographically by letter.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    /// Freely reduces the letter sequence.
    pub fn from_letters<I: IntoIterator<Item = Letter>>(letters: I) -> Self {
        let mut out: Vec<Letter> = Vec::new();
        for l in letters {
            if out.last() == Some(&l.inverse()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word(out)
    }

    pub fn generator(g: usize) -> Self {
        Word(alloc::vec![Letter::new(g, false)])
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Largest generator index used plus one.
    pub fn rank_needed(&self) -> usize {
        self.0.iter().map(|l| l.generator() + 1).max().unwrap_or(0)
    }

    pub fn inverse(&self) -> Self {
        Word(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    pub fn concat(&self, other: &Word) -> Self {
        Word::from_letters(self.0.iter().chain(other.0.iter()).copied())
    }

    /// `k · self · k⁻¹`.
    pub fn conjugate_by(&self, k: &Word) -> Self {
        k.concat(self).concat(&k.inverse())
    }

    pub fn pow(&self, n: i32) -> Self {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut out = Word::empty();
        for _ in 0..n.unsigned_abs() {
            out = out.concat(&base);
        }
        out
    }

    pub fn is_cyclically_reduced(&self) -> bool {
        match (self.0.first(), self.0.last()) {
            (Some(f), Some(l)) => self.0.len() == 1 || *f != l.inverse(),
            _ => true,
        }
    }

    /// Strips inverse letter pairs from the two ends.
    pub fn cyclic_reduction(&self) -> Self {
        let s = &self.0;
        let (mut i, mut j) = (0, s.len());
        while j - i >= 2 && s[i] == s[j - 1].inverse() {
            i += 1;
            j -= 1;
        }
        Word(s[i..j].to_vec())
    }

    /// The rotation starting at letter `k`.
    pub fn rotate(&self, k: usize) -> Self {
        let n = self.0.len();
        if n == 0 {
            return self.clone();
        }
        let k = k % n;
        let mut v = Vec::with_capacity(n);
        v.extend_from_slice(&self.0[k..]);
        v.extend_from_slice(&self.0[..k]);
        Word(v)
    }

    /// Sum of the exponents of generator `g`.
    pub fn exponent_sum(&self, g: usize) -> i64 {
        self.0
            .iter()
            .filter(|l| l.generator() == g)
            .map(|l| if l.is_inverse() { -1 } else { 1 })
            .sum()
    }

    pub(crate) fn push_unchecked(&mut self, l: Letter) {
        self.0.push(l);
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl FromStr for Word {
    type Err = GrpError;

    /// Parses `aBab`-style words. `""` and `"1"` denote the empty word.
    fn from_str(s: &str) -> Result<Self, GrpError> {
        let s = s.trim();
        if s == "1" {
            return Ok(Word::empty());
        }
        let letters = s.chars().map(Letter::from_char).collect::<Result<Vec<_>, _>>()?;
        Ok(Word::from_letters(letters))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for l in &self.0 {
            write!(f, "{}", l.to_char())?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({self})")
    }
}

impl From<&Word> for String {
    fn from(w: &Word) -> String {
        alloc::format!("{w}")
    }
}

#[cfg(feature = "serde")]
impl serde::Serialize for Word {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[cfg(feature = "serde")]
impl<'de> serde::Deserialize<'de> for Word {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = <String as serde::Deserialize>::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Number of freely reduced words of length at most `depth` in the free
/// group of the given rank, or `None` on overflow.
pub fn ball_size(rank: usize, depth: usize) -> Option<usize> {
    if rank == 0 {
        return Some(1);
    }
    let mut total: usize = 1;
    let mut level: usize = 2 * rank;
    for _ in 0..depth {
        total = total.checked_add(level)?;
        level = level.checked_mul(2 * rank - 1)?;
    }
    Some(total)
}

/// All freely reduced words of length at most `depth`, in shortlex order.
///
/// Each nonempty word is its parent (the word without its last letter)
/// followed by one letter, so evaluations can be built incrementally.
#[derive(Debug, Clone)]
pub struct Ball {
    rank: usize,
    depth: usize,
    words: Vec<Word>,
    parents: Vec<usize>,
}

impl Ball {
    /// Enumerates the ball, refusing anything larger than the rank-2 ball
    /// of depth `cap`.
    pub fn enumerate(rank: usize, depth: usize, cap: usize) -> Result<Self, GrpError> {
        if depth == 0 {
            return Err(GrpError::InvalidDepth);
        }
        let limit = ball_size(2, cap).unwrap_or(usize::MAX);
        match ball_size(rank, depth) {
            Some(n) if n <= limit => {}
            _ => return Err(GrpError::DepthCap { depth, cap }),
        }
        Ok(Self::build(rank, depth))
    }

    /// Enumerates with the default cap.
    pub fn new(rank: usize, depth: usize) -> Result<Self, GrpError> {
        Self::enumerate(rank, depth, DEFAULT_DEPTH_CAP)
    }

    fn build(rank: usize, depth: usize) -> Self {
        let n = ball_size(rank, depth).unwrap_or(0);
        let mut words = Vec::with_capacity(n);
        let mut parents = Vec::with_capacity(n);
        words.push(Word::empty());
        parents.push(0);
        let mut level_start = 0;
        for _ in 0..depth {
            let level_end = words.len();
            for p in level_start..level_end {
                let last = words[p].letters().last().copied();
                for code in 0..2 * rank {
                    let l = Letter::from_code(code);
                    if last == Some(l.inverse()) {
                        continue;
                    }
                    let mut w = words[p].clone();
                    w.push_unchecked(l);
                    words.push(w);
                    parents.push(p);
                }
            }
            level_start = level_end;
        }
        Ball {
            rank,
            depth,
            words,
            parents,
        }
    }

    /// Rebuilds a ball from its word list, as stored by [`Ball::words`].
    /// The list must be exactly the shortlex-ordered ball.
    pub fn from_words(rank: usize, depth: usize, words: Vec<Word>) -> Result<Self, GrpError> {
        let bad = || GrpError::InvalidParameter(alloc::format!("not the ball of rank {rank} and depth {depth}"));
        if depth == 0 {
            return Err(GrpError::InvalidDepth);
        }
        if Some(words.len()) != ball_size(rank, depth)
            || words.first().is_none_or(|w| !w.is_empty())
            || words.windows(2).any(|p| p[0] >= p[1])
            || words.iter().any(|w| w.len() > depth || w.rank_needed() > rank)
        {
            return Err(bad());
        }
        // strictly increasing reduced words of bounded length, as many as
        // the ball holds, are the ball itself
        let parents = words
            .iter()
            .map(|w| {
                let n = w.len().saturating_sub(1);
                let prefix = Word(w.letters()[..n].to_vec());
                words.binary_search(&prefix).map_err(|_| bad())
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Ball {
            rank,
            depth,
            words,
            parents,
        })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    /// Index of the parent of word `i`; the empty word is its own parent.
    pub fn parent(&self, i: usize) -> usize {
        self.parents[i]
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn parse_and_reduce() {
        assert_eq!(w("aAb"), w("b"));
        assert_eq!(w("1"), Word::empty());
        assert_eq!(w("abBA"), Word::empty());
        assert_eq!(alloc::format!("{}", w("aBab")), "aBab");
        assert!(matches!("a-b".parse::<Word>(), Err(GrpError::InvalidLetter('-'))));
    }

    #[test]
    fn inverse_and_cyclic_reduction() {
        assert_eq!(w("aBc").inverse(), w("CbA"));
        assert_eq!(w("baBB").cyclic_reduction(), w("aB"));
        assert_eq!(w("abA").cyclic_reduction(), w("b"));
        assert!(w("aba").is_cyclically_reduced());
        assert!(!w("abA").is_cyclically_reduced());
        assert_eq!(w("ab").pow(-2), w("BABA"));
    }

    #[test]
    fn ball_sizes() {
        assert_eq!(Ball::new(2, 1).unwrap().len(), 5);
        assert_eq!(Ball::new(2, 3).unwrap().len(), 53);
        assert_eq!(Ball::new(2, 8).unwrap().len(), 13121);
        assert_eq!(ball_size(3, 2), Some(1 + 6 + 30));
        assert_eq!(Ball::new(2, 0).unwrap_err(), GrpError::InvalidDepth);
        assert_eq!(
            Ball::new(2, 13).unwrap_err(),
            GrpError::DepthCap { depth: 13, cap: 12 }
        );
    }

    #[test]
    fn ball_is_shortlex_and_reduced() {
        let ball = Ball::new(2, 4).unwrap();
        for pair in ball.words().windows(2) {
            assert!(pair[0] < pair[1]);
        }
        for (i, word) in ball.words().iter().enumerate().skip(1) {
            let parent = &ball.words()[ball.parent(i)];
            assert_eq!(parent.len() + 1, word.len());
            assert!(word.letters().starts_with(parent.letters()));
            assert_eq!(Word::from_letters(word.letters().iter().copied()), *word);
        }
        assert_eq!(
            ball.words()[..5].iter().map(|w| alloc::format!("{w}")).collect::<Vec<_>>(),
            ["1", "a", "A", "b", "B"]
        );
    }

    #[test]
    fn ball_round_trips_through_words() {
        let ball = Ball::new(2, 3).unwrap();
        let back = Ball::from_words(2, 3, ball.words().to_vec()).unwrap();
        assert_eq!(back.words(), ball.words());
        assert!((0..ball.len()).all(|i| back.parent(i) == ball.parent(i)));
        let mut shuffled = ball.words().to_vec();
        shuffled.swap(3, 4);
        assert!(Ball::from_words(2, 3, shuffled).is_err());
        assert!(Ball::from_words(2, 2, ball.words().to_vec()).is_err());
    }
}
