//! Subset/composition coding, the counting coefficients `α_n(S, q)` and
//! `α_n^+(S)`, the sieve polynomials, and the series blocks built from them.

mod blocks;

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::exactalg::qnum;
use crate::exactalg::{Monomial, MultiPoly, Var};
use crate::perm::{fold_plain, fold_signed, EnumKind};

pub use blocks::{block_series, BlockKind};

/// A subset `S ⊆ [n-1]`, kept sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PositionSubset {
    n: usize,
    members: Vec<usize>,
}

impl PositionSubset {
    pub fn new(n: usize, mut members: Vec<usize>) -> Result<Self> {
        if n == 0 {
            return invalid("ambient length must be positive");
        }
        members.sort_unstable();
        if members.windows(2).any(|w| w[0] == w[1]) {
            return invalid(format!("repeated member in {members:?}"));
        }
        if members.iter().any(|&s| s == 0 || s >= n) {
            return invalid(format!("{members:?} is not inside [1, {}]", n - 1));
        }
        Ok(PositionSubset { n, members })
    }

    pub fn empty(n: usize) -> Self {
        PositionSubset { n, members: Vec::new() }
    }

    pub fn full(n: usize) -> Self {
        PositionSubset { n, members: (1..n).collect() }
    }

    /// Subset whose bit `i-1` of `mask` marks member `i`.
    pub fn from_mask(n: usize, mask: u32) -> Self {
        PositionSubset { n, members: (1..n).filter(|i| mask >> (i - 1) & 1 == 1).collect() }
    }

    pub fn mask(&self) -> u32 {
        self.members.iter().fold(0, |m, &s| m | 1 << (s - 1))
    }

    /// All `2^(n-1)` subsets of `[n-1]`, by mask.
    pub fn all(n: usize) -> impl Iterator<Item = PositionSubset> {
        let count = 1u32 << n.saturating_sub(1);
        (0..count).map(move |m| Self::from_mask(n, m))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn odd_count(&self) -> usize {
        self.members.iter().filter(|&&s| s % 2 == 1).count()
    }

    pub fn even_count(&self) -> usize {
        self.members.iter().filter(|&&s| s % 2 == 0).count()
    }

    pub fn all_odd(&self) -> bool {
        self.members.iter().all(|&s| s % 2 == 1)
    }

    /// `co(S) = (s_1, s_2 - s_1, ..., n - s_k)`.
    pub fn code(&self) -> Composition {
        let mut parts = Vec::with_capacity(self.members.len() + 1);
        let mut prev = 0;
        for &s in self.members.iter().chain(std::iter::once(&self.n)) {
            parts.push(s - prev);
            prev = s;
        }
        Composition { parts }
    }
}

impl fmt::Display for PositionSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m: Vec<String> = self.members.iter().map(|s| s.to_string()).collect();
        write!(f, "{{{}}} in [{}]", m.join(","), self.n)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Composition {
    parts: Vec<usize>,
}

impl Composition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.is_empty() || parts.contains(&0) {
            return invalid(format!("malformed composition {parts:?}"));
        }
        Ok(Composition { parts })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn n(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Inverse of [`PositionSubset::code`]: the partial sums.
    pub fn decode(&self) -> PositionSubset {
        let mut members = Vec::with_capacity(self.parts.len() - 1);
        let mut acc = 0;
        for &p in &self.parts[..self.parts.len() - 1] {
            acc += p;
            members.push(acc);
        }
        PositionSubset { n: self.n(), members }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AlphaMode {
    Brute,
    Closed,
}

impl FromStr for AlphaMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "brute" => Ok(AlphaMode::Brute),
            "closed" => Ok(AlphaMode::Closed),
            other => invalid(format!("unknown mode `{other}`")),
        }
    }
}

fn descent_mask(w: &[u32]) -> u32 {
    w.windows(2).enumerate().fold(0, |m, (i, p)| if p[0] > p[1] { m | 1 << i } else { m })
}

fn signed_descent_mask(w: &[i32]) -> u32 {
    // bit i-1 for descent at position i >= 1; position 0 goes to bit 31
    let mut m = if w[0] < 0 { 1 << 31 } else { 0 };
    for (i, p) in w.windows(2).enumerate() {
        if p[0] > p[1] {
            m |= 1 << i;
        }
    }
    m
}

/// `α_n(S, q) = Σ q^inv` over `σ ∈ S_n` with `D(σ) ⊆ S`.
pub fn alpha_a(subset: &PositionSubset, mode: AlphaMode) -> Result<MultiPoly> {
    match mode {
        AlphaMode::Closed => qnum::q_multinomial_composition(subset.n, subset.code().parts()),
        AlphaMode::Brute => {
            let n = subset.n;
            let allowed = subset.mask();
            let counts = fold_plain(
                n,
                HashMap::<u32, u64>::new,
                |acc, w| {
                    if descent_mask(w) & !allowed == 0 {
                        *acc.entry(crate::perm::plain_profile(w).inv).or_default() += 1;
                    }
                },
                merge_counts,
            );
            Ok(inv_poly(counts))
        }
    }
}

fn merge_counts<K: std::hash::Hash + Eq>(mut a: HashMap<K, u64>, b: HashMap<K, u64>) -> HashMap<K, u64> {
    for (k, c) in b {
        *a.entry(k).or_default() += c;
    }
    a
}

fn inv_poly(counts: HashMap<u32, u64>) -> MultiPoly {
    MultiPoly::from_terms(counts.into_iter().map(|(e, c)| (Monomial::from_powers(&[(Var::Q, e)]), BigInt::from(c))))
}

/// Brute `α_n(S, q)` for every `S ⊆ [n-1]` from one pass over `S_n`:
/// a descent-set histogram followed by a superset-sum transform.
pub fn alpha_a_brute_table(n: usize) -> Vec<MultiPoly> {
    let hist = fold_plain(
        n,
        HashMap::<(u32, u32), u64>::new,
        |acc, w| {
            let inv = crate::perm::plain_profile(w).inv;
            *acc.entry((descent_mask(w), inv)).or_default() += 1;
        },
        merge_counts,
    );
    let size = 1usize << n.saturating_sub(1);
    let mut table = vec![MultiPoly::zero(); size];
    for ((mask, inv), c) in hist {
        table[mask as usize].add_term(Monomial::from_powers(&[(Var::Q, inv)]), BigInt::from(c));
    }
    // zeta transform over subsets: table[S] = Σ_{D ⊆ S} hist[D]
    for bit in 0..n.saturating_sub(1) {
        for s in 0..size {
            if s >> bit & 1 == 1 {
                let lower = table[s ^ 1 << bit].clone();
                table[s] += &lower;
            }
        }
    }
    table
}

/// `α_n^+(S)`: signed permutations with `σ(1) > 0` and `D(σ) ⊆ S`.
pub fn alpha_b_plus(subset: &PositionSubset, mode: AlphaMode) -> BigInt {
    let n = subset.n;
    match mode {
        AlphaMode::Closed => {
            let s1 = subset.members.first().copied().unwrap_or(n);
            qnum::multinomial(n, subset.code().parts()) << (n - s1)
        }
        AlphaMode::Brute => {
            let allowed = subset.mask();
            let count = fold_signed(
                n,
                EnumKind::BPlus,
                || 0u64,
                |acc, w| {
                    if signed_descent_mask(w) & !allowed == 0 {
                        *acc += 1;
                    }
                },
                |a, b| a + b,
            );
            BigInt::from(count)
        }
    }
}

/// Brute `α_n^+(S)` for every `S ⊆ [n-1]`, indexed by mask.
pub fn alpha_b_plus_brute_table(n: usize) -> Vec<BigInt> {
    let hist = fold_signed(
        n,
        EnumKind::BPlus,
        HashMap::<u32, u64>::new,
        |acc, w| *acc.entry(signed_descent_mask(w)).or_default() += 1,
        merge_counts,
    );
    let size = 1usize << n.saturating_sub(1);
    let mut table = vec![BigInt::zero(); size];
    for (mask, c) in hist {
        // σ(1) > 0 rules out a descent at position 0
        debug_assert!(mask >> 31 == 0);
        table[mask as usize] += c;
    }
    for bit in 0..n.saturating_sub(1) {
        for s in 0..size {
            if s >> bit & 1 == 1 {
                let lower = table[s ^ 1 << bit].clone();
                table[s] += lower;
            }
        }
    }
    table
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SieveFamily {
    A,
    BPlus,
}

impl FromStr for SieveFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "A" => Ok(SieveFamily::A),
            "B_plus" | "B+" => Ok(SieveFamily::BPlus),
            other => invalid(format!("unknown sieve family `{other}`")),
        }
    }
}

/// `Σ_{S ⊆ [n-1]} α(S) x^{|S_o|} y^{|S_e|}` with closed-form `α`.
pub fn sieve_poly(n: usize, family: SieveFamily) -> Result<MultiPoly> {
    if n == 0 {
        return invalid("sieve polynomial needs n >= 1");
    }
    let mut out = MultiPoly::zero();
    for s in PositionSubset::all(n) {
        let weight = Monomial::from_powers(&[(Var::X, s.odd_count() as u32), (Var::Y, s.even_count() as u32)]);
        let alpha = match family {
            SieveFamily::A => alpha_a(&s, AlphaMode::Closed)?,
            SieveFamily::BPlus => MultiPoly::constant(alpha_b_plus(&s, AlphaMode::Closed)),
        };
        out += &(&alpha * &MultiPoly::term(1, weight));
    }
    Ok(out)
}

/// Stirling numbers of the second kind by `S(n,k) = k S(n-1,k) + S(n-1,k-1)`.
pub fn stirling2(n: usize, k: usize) -> BigInt {
    let mut row = vec![BigInt::one()];
    for m in 1..=n {
        let mut next = vec![BigInt::zero(); m + 1];
        for j in 1..=m {
            let stay = if j < m { &row[j] * BigInt::from(j) } else { BigInt::zero() };
            next[j] = stay + &row[j - 1];
        }
        row = next;
    }
    row.get(k).cloned().unwrap_or_default()
}
