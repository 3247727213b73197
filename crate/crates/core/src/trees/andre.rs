use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::MinMaxTree;
use crate::error::{invalid, Error, Result};
use crate::exactalg::{qnum, MultiPoly, Var};
use crate::perm::{fold_plain, Permutation};

/// `π = w1 · w2 · π(i) · w4 · w5`, where `w2` (resp. `w4`) is the longest
/// factor ending just before (resp. starting just after) position `i` whose
/// letters all exceed `π(i)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Factorization {
    pub w1: Vec<u32>,
    pub w2: Vec<u32>,
    pub pivot: u32,
    pub w4: Vec<u32>,
    pub w5: Vec<u32>,
}

impl Factorization {
    pub fn concat(&self) -> Vec<u32> {
        let mut out = self.w1.clone();
        out.extend(&self.w2);
        out.push(self.pivot);
        out.extend(&self.w4);
        out.extend(&self.w5);
        out
    }
}

/// The factorization around the 1-based position `i`.
pub fn factorize(word: &[u32], i: usize) -> Result<Factorization> {
    if i == 0 || i > word.len() {
        return invalid(format!("position {i} outside 1..={}", word.len()));
    }
    let p = i - 1;
    let pivot = word[p];
    let start = word[..p].iter().rposition(|&v| v < pivot).map_or(0, |k| k + 1);
    let end = word[p + 1..].iter().position(|&v| v < pivot).map_or(word.len(), |k| p + 1 + k);
    Ok(Factorization {
        w1: word[..start].to_vec(),
        w2: word[start..p].to_vec(),
        pivot,
        w4: word[p + 1..end].to_vec(),
        w5: word[end..].to_vec(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClassKind {
    AndreFirst,
    Simsun,
    AndreSecond,
}

impl ClassKind {
    pub const ALL: [ClassKind; 3] = [ClassKind::AndreFirst, ClassKind::Simsun, ClassKind::AndreSecond];

    pub fn name(self) -> &'static str {
        match self {
            ClassKind::AndreFirst => "andre_first",
            ClassKind::Simsun => "simsun",
            ClassKind::AndreSecond => "andre_second",
        }
    }
}

impl fmt::Display for ClassKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ClassKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ClassKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown class `{s}`")))
    }
}

fn has_double_descent(w: &[u32]) -> bool {
    w.windows(3).any(|t| t[0] > t[1] && t[1] > t[2])
}

fn ends_with_descent(w: &[u32]) -> bool {
    w.len() >= 2 && w[w.len() - 2] > w[w.len() - 1]
}

fn andre_by_factorization(w: &[u32]) -> bool {
    if has_double_descent(w) || ends_with_descent(w) {
        return false;
    }
    (1..w.len().saturating_sub(1)).all(|k| {
        if !(w[k - 1] > w[k] && w[k] < w[k + 1]) {
            return true;
        }
        let f = factorize(w, k + 1).expect("position in range");
        f.w2.iter().max() < f.w4.iter().max()
    })
}

/// The restrictions of `w` to its `k` smallest letters, for `k = 1..=n`.
fn restrictions(w: &[u32]) -> impl Iterator<Item = Vec<u32>> + '_ {
    let mut sorted = w.to_vec();
    sorted.sort_unstable();
    sorted.into_iter().map(move |bound| w.iter().copied().filter(|&v| v <= bound).collect())
}

pub fn classify(perm: &Permutation, kind: ClassKind) -> Result<bool> {
    let w = perm.values();
    Ok(match kind {
        ClassKind::AndreFirst => {
            let by_definition = andre_by_factorization(w);
            let by_tree = MinMaxTree::build(w)?.all_interior_min();
            if by_definition != by_tree {
                return Err(Error::Inconsistency(format!(
                    "{perm}: factorization test says {by_definition}, tree test says {by_tree}"
                )));
            }
            by_definition
        }
        ClassKind::Simsun => restrictions(w).all(|r| !has_double_descent(&r)),
        ClassKind::AndreSecond => restrictions(w).all(|r| !has_double_descent(&r) && !ends_with_descent(&r)),
    })
}

fn descents(w: &[u32]) -> usize {
    w.windows(2).filter(|p| p[0] > p[1]).count()
}

/// Descent statistics of the André permutations of length `n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AndreTable {
    pub n: usize,
    /// `d(n, i)` for `0 ≤ i ≤ ⌊n/2⌋`.
    pub d: Vec<u64>,
    /// `d̄(n, i) = Σ_{j≥i} C(j,i) d(n,j)`.
    pub d_bar: Vec<u64>,
    /// `D_n(x) = Σ_i d(n,i) x^i`.
    pub dn: MultiPoly,
    /// Descent polynomial of the Simsun permutations of length `n-1`.
    pub rs: MultiPoly,
}

impl AndreTable {
    pub fn total(&self) -> u64 {
        self.d.iter().sum()
    }
}

fn descent_histogram(n: usize, kind: ClassKind) -> Result<Vec<u64>> {
    let (hist, err) = fold_plain(
        n,
        || (vec![0u64; n.max(1)], None::<Error>),
        |(hist, err), w| {
            if err.is_some() {
                return;
            }
            match classify(&Permutation::from_vec_unchecked(w.to_vec()), kind) {
                Ok(true) => hist[descents(w)] += 1,
                Ok(false) => {}
                Err(e) => *err = Some(e),
            }
        },
        |(mut a, ea), (b, eb)| {
            for (x, y) in a.iter_mut().zip(b) {
                *x += y;
            }
            (a, ea.or(eb))
        },
    );
    match err {
        Some(e) => Err(e),
        None => Ok(hist),
    }
}

fn poly_of(counts: &[u64]) -> MultiPoly {
    let coeffs: Vec<BigInt> = counts.iter().map(|&c| c.into()).collect();
    MultiPoly::univariate(Var::X, &coeffs)
}

pub fn andre_tables(n: usize) -> Result<AndreTable> {
    if n == 0 {
        return invalid("André tables need n >= 1");
    }
    let m = n / 2;
    let mut d = descent_histogram(n, ClassKind::AndreFirst)?;
    if d[m + 1..].iter().any(|&c| c != 0) {
        return Err(Error::Inconsistency(format!("André permutation of length {n} with more than {m} descents")));
    }
    d.resize(m + 1, 0);
    let d_bar = (0..=m).map(|i| (i..=m).map(|j| u64::try_from(qnum::binomial(j, i)).unwrap() * d[j]).sum()).collect();
    let rs = if n == 1 { MultiPoly::one() } else { poly_of(&descent_histogram(n - 1, ClassKind::Simsun)?) };
    Ok(AndreTable { n, dn: poly_of(&d), d, d_bar, rs })
}
