use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::perm::{lpk, Permutation, SignedPermutation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Plus,
    Minus,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Letter {
    Peak,
    Valley,
    DoubleAscent,
    DoubleDescent,
}

/// Kind of each letter `u(j)`, `j = 1..=n`, read in `0 u(1) .. u(n) n+1`.
fn letter_kinds(u: &[u32]) -> Vec<Letter> {
    let n = u.len() as u32;
    let padded: Vec<u32> = std::iter::once(0).chain(u.iter().copied()).chain([n + 1]).collect();
    padded
        .windows(3)
        .map(|t| match (t[0] < t[1], t[1] < t[2]) {
            (true, false) => Letter::Peak,
            (false, true) => Letter::Valley,
            (true, true) => Letter::DoubleAscent,
            (false, false) => Letter::DoubleDescent,
        })
        .collect()
}

/// 1-based positions of the valleys of `0 u n+1`.
pub fn valleys(u: &[u32]) -> Vec<usize> {
    positions_of(u, Letter::Valley)
}

fn positions_of(u: &[u32], kind: Letter) -> Vec<usize> {
    letter_kinds(u).into_iter().enumerate().filter(|&(_, k)| k == kind).map(|(j, _)| j + 1).collect()
}

/// Positions controlled by a peak: `j - 1` for a peak at even `j`, `j`
/// for a peak at odd `j`.
fn peak_controlled(u: &[u32]) -> Vec<usize> {
    positions_of(u, Letter::Peak).into_iter().map(|j| if j % 2 == 0 { j - 1 } else { j }).collect()
}

/// Odd positions of `[n-1]` not controlled by a peak; the admissible
/// choices of `D` are the subsets of this set.
pub fn free_positions(u: &[u32]) -> Vec<usize> {
    let controlled = peak_controlled(u);
    (1..u.len()).step_by(2).filter(|l| !controlled.contains(l)).collect()
}

/// Signs the letters of `u`: the valleys as given, then the letters
/// forced by the peaks, by `D`, and by even double descents.
pub fn process_a(u: &Permutation, valley_signs: &[Sign], d: &[usize]) -> Result<SignedPermutation> {
    let w = u.values();
    let n = w.len();
    let kinds = letter_kinds(w);
    let valley_positions = valleys(w);
    if valley_positions.len() != lpk(w) as usize {
        return Err(Error::Inconsistency(format!(
            "{u} has {} valleys but {} left peaks",
            valley_positions.len(),
            lpk(w)
        )));
    }
    if valley_signs.len() != valley_positions.len() {
        return invalid(format!("{u} has {} valleys, got {} signs", valley_positions.len(), valley_signs.len()));
    }
    let free = free_positions(w);
    if let Some(l) = d.iter().find(|l| !free.contains(l)) {
        return invalid(format!("position {l} is not free in {u}; free positions are {free:?}"));
    }
    let mut negative = vec![false; n + 1];
    for (&j, &s) in valley_positions.iter().zip(valley_signs) {
        negative[j] = s == Sign::Minus;
    }
    for (j, kind) in kinds.iter().enumerate().map(|(k, kind)| (k + 1, kind)) {
        if *kind == Letter::Peak && j % 2 == 0 {
            negative[j] = true;
        }
    }
    for &l in &free {
        let ascent = w[l - 1] < w[l];
        let target = match (d.contains(&l), ascent) {
            (true, true) => Some((l + 1, Letter::DoubleAscent)),
            (false, false) => Some((l, Letter::DoubleDescent)),
            _ => None,
        };
        if let Some((j, expected)) = target {
            if kinds[j - 1] != expected {
                return Err(Error::Inconsistency(format!("{u}: letter {j} was expected to be a {expected:?}")));
            }
            negative[j] = true;
        }
    }
    for j in (2..=n).step_by(2) {
        if kinds[j - 1] == Letter::DoubleDescent {
            negative[j] = true;
        }
    }
    let signed = w.iter().enumerate().map(|(k, &v)| if negative[k + 1] { -(v as i32) } else { v as i32 }).collect();
    SignedPermutation::new(signed)
}
