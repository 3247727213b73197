use serde::{Deserialize, Serialize};

use super::Word;

/// Parity-refined descent statistics of one (signed) permutation.
///
/// Plain words use positions `1..n-1`; signed words are read as
/// `0 σ(1) .. σ(n)` and use positions `0..n-1`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct StatProfile {
    pub asc0: u32,
    pub asc1: u32,
    pub des0: u32,
    pub des1: u32,
    pub inv: u32,
    pub altdes: u32,
    pub lpk: u32,
}

impl StatProfile {
    pub fn des(&self) -> u32 {
        self.des0 + self.des1
    }
}

pub(crate) fn inversions<T: PartialOrd>(w: &[T]) -> u32 {
    let mut inv = 0;
    for i in 0..w.len() {
        for j in i + 1..w.len() {
            if w[i] > w[j] {
                inv += 1;
            }
        }
    }
    inv
}

/// Left peaks: `1 <= i < n` with `u(i-1) < u(i) > u(i+1)`, `u(0) = 0`.
pub fn lpk(u: &[u32]) -> u32 {
    let mut count = 0;
    let mut prev = 0;
    for i in 0..u.len().saturating_sub(1) {
        if prev < u[i] && u[i] > u[i + 1] {
            count += 1;
        }
        prev = u[i];
    }
    count
}

// Shared tally: `less(i)` says whether the letter before position `i`
// (in the caller's indexing) is smaller than the letter after it.
fn tally(positions: impl Iterator<Item = (usize, bool)>) -> StatProfile {
    let mut p = StatProfile::default();
    for (i, ascent) in positions {
        match (i % 2 == 0, ascent) {
            (true, true) => p.asc0 += 1,
            (false, true) => p.asc1 += 1,
            (true, false) => p.des0 += 1,
            (false, false) => p.des1 += 1,
        }
    }
    p.altdes = p.des1 + p.asc0;
    p
}

pub fn plain_profile(w: &[u32]) -> StatProfile {
    let mut p = tally(w.windows(2).enumerate().map(|(k, pair)| (k + 1, pair[0] < pair[1])));
    p.inv = inversions(w);
    p.lpk = lpk(w);
    p
}

pub fn signed_profile(w: &[i32]) -> StatProfile {
    let first = w.first().map(|&v| (0usize, 0 < v));
    let rest = w.windows(2).enumerate().map(|(k, pair)| (k + 1, pair[0] < pair[1]));
    let mut p = tally(first.into_iter().chain(rest));
    p.inv = inversions(w);
    let abs: Vec<u32> = w.iter().map(|v| v.unsigned_abs()).collect();
    p.lpk = lpk(&abs);
    p
}

pub fn stat_profile(w: &Word) -> StatProfile {
    match w {
        Word::Plain(p) => plain_profile(p.values()),
        Word::Signed(s) => signed_profile(s.values()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::{fold_plain, fold_signed, EnumKind};

    #[test]
    fn examples() {
        let p = plain_profile(&[2, 1]);
        assert_eq!((p.des1, p.des0, p.asc1, p.inv, p.lpk), (1, 0, 0, 1, 1));
        let s = signed_profile(&[-1, 2]);
        assert_eq!((s.des0, s.asc1, s.des1, s.asc0), (1, 1, 0, 0));
        assert_eq!(plain_profile(&[1]).lpk, 0);
        // the last letter is never a left peak
        assert_eq!(lpk(&[1, 3]), 0);
        assert_eq!(lpk(&[3, 1, 4, 2]), 2);
    }

    #[test]
    fn parity_sums_type_a() {
        for n in 1..=8 {
            let ok = fold_plain(
                n,
                || true,
                |ok, w| {
                    let p = plain_profile(w);
                    *ok &= p.des0 + p.asc0 == ((n - 1) / 2) as u32 && p.des1 + p.asc1 == (n / 2) as u32;
                    *ok &= p.altdes == p.des1 + p.asc0;
                },
                |a, b| a && b,
            );
            assert!(ok, "n={n}");
        }
    }

    #[test]
    fn parity_sums_type_b() {
        for n in 1..=7 {
            let ok = fold_signed(
                n,
                EnumKind::B,
                || true,
                |ok, w| {
                    let p = signed_profile(w);
                    *ok &= p.des0 + p.asc0 == n.div_ceil(2) as u32 && p.des1 + p.asc1 == (n / 2) as u32;
                },
                |a, b| a && b,
            );
            assert!(ok, "n={n}");
        }
    }

    #[test]
    fn complement_swaps_descents_and_ascents() {
        for n in 1..=6 {
            let ok = fold_plain(
                n,
                || true,
                |ok, w| {
                    let c: Vec<u32> = w.iter().map(|&v| n as u32 + 1 - v).collect();
                    let (a, b) = (plain_profile(w), plain_profile(&c));
                    *ok &= a.des0 == b.asc0 && a.des1 == b.asc1;
                },
                |a, b| a && b,
            );
            assert!(ok);
        }
    }

    #[test]
    fn negation_complements_descent_counts() {
        for n in 1..=6 {
            let ok = fold_signed(
                n,
                EnumKind::B,
                || true,
                |ok, w| {
                    let neg: Vec<i32> = w.iter().map(|v| -v).collect();
                    let (a, b) = (signed_profile(w), signed_profile(&neg));
                    *ok &= a.des1 + b.des1 == (n / 2) as u32 && a.des0 + b.des0 == n.div_ceil(2) as u32;
                    *ok &= (w[0] > 0) != (neg[0] > 0);
                },
                |a, b| a && b,
            );
            assert!(ok);
        }
    }
}
