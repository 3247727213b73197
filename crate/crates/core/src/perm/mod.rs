//! Plain and signed permutations, their enumeration, statistics and the
//! brute-force distribution polynomials built from them.

mod cache;
mod enumerate;
mod family;
mod stats;

use std::fmt;
use std::str::FromStr;

use crate::error::{invalid, Error, Result};

pub use cache::{DistributionCache, Distributions};
pub use enumerate::{
    count, enumerate, euler_number, fold_plain, fold_signed, is_up_down, EnumKind, PlainPerms, SignedPerms,
};
pub use family::{distribution, FamilyId};
pub use stats::{lpk, plain_profile, signed_profile, stat_profile, StatProfile};

/// A word of distinct positive letters. Values are 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Vec<u32>);

impl Permutation {
    /// Accepts any word of distinct positive letters.
    pub fn from_word(values: Vec<u32>) -> Result<Self> {
        if values.contains(&0) {
            return invalid("letters must be positive");
        }
        let mut sorted = values.clone();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return invalid(format!("repeated letter in {values:?}"));
        }
        Ok(Permutation(values))
    }

    /// Requires the letters to be exactly `1..=n`.
    pub fn new(values: Vec<u32>) -> Result<Self> {
        let p = Self::from_word(values)?;
        if !p.is_standard() {
            return invalid(format!("{p} is not a permutation of [{}]", p.len()));
        }
        Ok(p)
    }

    pub fn identity(n: usize) -> Self {
        Permutation((1..=n as u32).collect())
    }

    pub(crate) fn from_vec_unchecked(values: Vec<u32>) -> Self {
        Permutation(values)
    }

    pub fn is_standard(&self) -> bool {
        let n = self.0.len() as u32;
        self.0.iter().all(|&v| v >= 1 && v <= n)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn values(&self) -> &[u32] {
        &self.0
    }

    pub fn complement(&self) -> Result<Permutation> {
        if !self.is_standard() {
            return invalid("complement needs a permutation of [n]");
        }
        let n = self.0.len() as u32;
        Ok(Permutation(self.0.iter().map(|&v| n + 1 - v).collect()))
    }

    pub fn inversions(&self) -> u32 {
        stats::inversions(&self.0)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_word(f, self.0.iter().map(|&v| i64::from(v)))
    }
}

impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let letters = parse_word(s)?;
        let values = letters
            .into_iter()
            .map(|v| u32::try_from(v).map_err(|_| Error::Parse(format!("negative letter in `{s}`"))))
            .collect::<Result<Vec<_>>>()?;
        Permutation::from_word(values)
    }
}

/// A signed permutation `σ(1)..σ(n)`; `σ(0) = 0` is implicit.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedPermutation(Vec<i32>);

impl SignedPermutation {
    pub fn new(values: Vec<i32>) -> Result<Self> {
        let abs: Vec<u32> = values.iter().map(|v| v.unsigned_abs()).collect();
        Permutation::new(abs)?;
        Ok(SignedPermutation(values))
    }

    pub(crate) fn from_vec_unchecked(values: Vec<i32>) -> Self {
        SignedPermutation(values)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn values(&self) -> &[i32] {
        &self.0
    }

    pub fn negate(&self) -> SignedPermutation {
        SignedPermutation(self.0.iter().map(|v| -v).collect())
    }

    /// The underlying unsigned word `|σ|`.
    pub fn abs(&self) -> Permutation {
        Permutation(self.0.iter().map(|v| v.unsigned_abs()).collect())
    }

    /// Descent positions in `{0} ∪ [n-1]`.
    pub fn descent_set(&self) -> Vec<usize> {
        let mut prev = 0i32;
        let mut out = Vec::new();
        for (i, &v) in self.0.iter().enumerate() {
            if prev > v {
                out.push(i);
            }
            prev = v;
        }
        out
    }
}

impl fmt::Display for SignedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let letters: Vec<String> = self.0.iter().map(|v| v.to_string()).collect();
        f.write_str(&letters.join(" "))
    }
}

impl FromStr for SignedPermutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let values = parse_word(s)?
            .into_iter()
            .map(|v| i32::try_from(v).map_err(|_| Error::Parse(format!("letter out of range in `{s}`"))))
            .collect::<Result<Vec<_>>>()?;
        SignedPermutation::new(values)
    }
}

/// Either kind of permutation, for operations that take both.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Word {
    Plain(Permutation),
    Signed(SignedPermutation),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Involution {
    Complement,
    Negate,
}

pub fn involution(w: &Word, kind: Involution) -> Result<Word> {
    match (w, kind) {
        (Word::Plain(p), Involution::Complement) => Ok(Word::Plain(p.complement()?)),
        (Word::Signed(s), Involution::Negate) => Ok(Word::Signed(s.negate())),
        (Word::Plain(_), Involution::Negate) => invalid("negate applies to signed permutations"),
        (Word::Signed(_), Involution::Complement) => invalid("complement applies to plain permutations"),
    }
}

// Words of single-digit letters print concatenated ("562314"); anything
// else prints space separated.
fn write_word(f: &mut fmt::Formatter<'_>, letters: impl Iterator<Item = i64> + Clone) -> fmt::Result {
    let compact = letters.clone().all(|v| (0..10).contains(&v));
    for (i, v) in letters.enumerate() {
        if i > 0 && !compact {
            f.write_str(" ")?;
        }
        write!(f, "{v}")?;
    }
    Ok(())
}

/// Parses "562314", "5 6 2 3 1 4", "5,6,2" or "2 -1".
fn parse_word(s: &str) -> Result<Vec<i64>> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::Parse("empty word".into()));
    }
    let separated = s.contains(|c: char| c == ',' || c.is_whitespace());
    if !separated && s.chars().all(|c| c.is_ascii_digit()) {
        return Ok(s.chars().map(|c| i64::from(c.to_digit(10).unwrap())).collect());
    }
    s.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<i64>().map_err(|_| Error::Parse(format!("bad letter `{t}` in `{s}`"))))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_render() {
        let p: Permutation = "562314".parse().unwrap();
        assert_eq!(p.values(), &[5, 6, 2, 3, 1, 4]);
        assert_eq!(p.to_string(), "562314");
        let s: SignedPermutation = "2 -1".parse().unwrap();
        assert_eq!(s.values(), &[2, -1]);
        assert_eq!(s.to_string(), "2 -1");
        let big = Permutation::new((1..=11).rev().collect()).unwrap();
        assert!(big.to_string().starts_with("11 10 9"));
        assert_eq!(big.to_string().parse::<Permutation>().unwrap(), big);
    }

    #[test]
    fn rejects_invalid() {
        assert!("1123".parse::<Permutation>().is_err());
        assert!(Permutation::new(vec![1, 3]).is_err());
        assert!(Permutation::from_word(vec![1, 3]).is_ok());
        assert!("1 -1".parse::<SignedPermutation>().is_err());
        assert!("".parse::<Permutation>().is_err());
        assert!("1 x".parse::<Permutation>().is_err());
    }

    #[test]
    fn involutions() {
        let p = Word::Plain("132".parse().unwrap());
        assert_eq!(involution(&p, Involution::Complement).unwrap(), Word::Plain("312".parse().unwrap()));
        let s = Word::Signed("2 -1".parse().unwrap());
        assert_eq!(involution(&s, Involution::Negate).unwrap(), Word::Signed("-2 1".parse().unwrap()));
        assert!(involution(&p, Involution::Negate).is_err());
        assert!(involution(&s, Involution::Complement).is_err());
    }

    #[test]
    fn signed_descent_set_includes_zero() {
        let s: SignedPermutation = "-1 2".parse().unwrap();
        assert_eq!(s.descent_set(), vec![0]);
    }
}
