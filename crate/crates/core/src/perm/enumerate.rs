use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{Permutation, SignedPermutation, Word};
use crate::error::{invalid, Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum EnumKind {
    S,
    B,
    BPlus,
    BMinus,
    UpDown,
}

impl EnumKind {
    pub fn is_signed(self) -> bool {
        matches!(self, EnumKind::B | EnumKind::BPlus | EnumKind::BMinus)
    }
}

impl FromStr for EnumKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "S" => Ok(EnumKind::S),
            "B" => Ok(EnumKind::B),
            "B_plus" | "B+" => Ok(EnumKind::BPlus),
            "B_minus" | "B-" => Ok(EnumKind::BMinus),
            "UpDown" | "UD" => Ok(EnumKind::UpDown),
            other => invalid(format!("unknown enumeration kind `{other}`")),
        }
    }
}

/// Rearranges `a` into the next permutation in lexicographic order.
/// Returns false (leaving `a` sorted ascending) after the last one.
pub(crate) fn next_permutation(a: &mut [u32]) -> bool {
    if a.len() < 2 {
        return false;
    }
    let mut i = a.len() - 1;
    while i > 0 && a[i - 1] >= a[i] {
        i -= 1;
    }
    if i == 0 {
        a.reverse();
        return false;
    }
    let mut j = a.len() - 1;
    while a[j] <= a[i - 1] {
        j -= 1;
    }
    a.swap(i - 1, j);
    a[i..].reverse();
    true
}

pub fn is_up_down(w: &[u32]) -> bool {
    w.windows(2).enumerate().all(|(i, p)| if i % 2 == 0 { p[0] < p[1] } else { p[0] > p[1] })
}

/// All permutations of `[n]` in lexicographic order.
pub struct PlainPerms {
    current: Vec<u32>,
    done: bool,
}

impl PlainPerms {
    pub fn new(n: usize) -> Self {
        PlainPerms { current: (1..=n as u32).collect(), done: false }
    }
}

impl Iterator for PlainPerms {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        if self.done {
            return None;
        }
        let out = Permutation::from_vec_unchecked(self.current.clone());
        self.done = !next_permutation(&mut self.current);
        Some(out)
    }
}

/// Signed permutations ordered by `|σ|` lexicographically, then by sign
/// mask (bit `i` set means letter `i` is negative).
pub struct SignedPerms {
    perms: PlainPerms,
    base: Option<Permutation>,
    mask: u32,
    kind: EnumKind,
}

impl SignedPerms {
    pub fn new(n: usize, kind: EnumKind) -> Self {
        let mut perms = PlainPerms::new(n);
        let base = perms.next();
        SignedPerms { perms, base, mask: 0, kind }
    }
}

fn mask_allowed(mask: u32, kind: EnumKind) -> bool {
    match kind {
        EnumKind::BPlus => mask & 1 == 0,
        EnumKind::BMinus => mask & 1 == 1,
        _ => true,
    }
}

fn apply_mask(w: &[u32], mask: u32, out: &mut Vec<i32>) {
    out.clear();
    out.extend(w.iter().enumerate().map(|(i, &v)| if mask >> i & 1 == 1 { -(v as i32) } else { v as i32 }));
}

impl Iterator for SignedPerms {
    type Item = SignedPermutation;

    fn next(&mut self) -> Option<SignedPermutation> {
        loop {
            let base = self.base.as_ref()?;
            let limit = 1u32 << base.len();
            if self.mask >= limit {
                self.base = self.perms.next();
                self.mask = 0;
                continue;
            }
            let mask = self.mask;
            self.mask += 1;
            if mask_allowed(mask, self.kind) {
                let mut v = Vec::with_capacity(base.len());
                apply_mask(base.values(), mask, &mut v);
                return Some(SignedPermutation::from_vec_unchecked(v));
            }
        }
    }
}

/// Streams the elements of the requested set.
pub fn enumerate(n: usize, kind: EnumKind) -> Result<Box<dyn Iterator<Item = Word> + Send>> {
    if n == 0 {
        return invalid("enumeration needs n >= 1");
    }
    Ok(match kind {
        EnumKind::S => Box::new(PlainPerms::new(n).map(Word::Plain)),
        EnumKind::UpDown => Box::new(PlainPerms::new(n).filter(|p| is_up_down(p.values())).map(Word::Plain)),
        _ => Box::new(SignedPerms::new(n, kind).map(Word::Signed)),
    })
}

/// Expected cardinality of each set, from closed forms.
pub fn count(n: usize, kind: EnumKind) -> u128 {
    let fact: u128 = (1..=n as u128).product();
    match kind {
        EnumKind::S => fact,
        EnumKind::B => fact << n,
        EnumKind::BPlus | EnumKind::BMinus => fact << n.saturating_sub(1),
        EnumKind::UpDown => euler_number(n),
    }
}

/// Euler (zigzag) numbers via the Seidel–Entringer triangle.
pub fn euler_number(n: usize) -> u128 {
    let mut row: Vec<u128> = vec![1];
    for k in 1..=n {
        let mut next = vec![0u128; k + 1];
        for j in 1..=k {
            next[j] = next[j - 1] + row[k - j];
        }
        row = next;
    }
    *row.last().unwrap()
}

/// Prefixes of length up to two, used as parallel work units.
fn prefixes(n: usize) -> Vec<Vec<u32>> {
    let depth = n.min(2);
    let mut out: Vec<Vec<u32>> = vec![vec![]];
    for _ in 0..depth {
        out = out
            .into_iter()
            .flat_map(|p| {
                (1..=n as u32)
                    .filter(|v| !p.contains(v))
                    .map(|v| {
                        let mut q = p.clone();
                        q.push(v);
                        q
                    })
                    .collect::<Vec<_>>()
            })
            .collect();
    }
    out
}

fn for_each_with_prefix(n: usize, prefix: &[u32], mut f: impl FnMut(&[u32])) {
    let mut w: Vec<u32> = prefix.to_vec();
    w.extend((1..=n as u32).filter(|v| !prefix.contains(v)));
    let k = prefix.len();
    loop {
        f(&w);
        if !next_permutation(&mut w[k..]) {
            break;
        }
    }
}

/// Parallel fold over `S_n`. `merge` must be associative and commutative.
pub fn fold_plain<A, I, F, M>(n: usize, init: I, f: F, merge: M) -> A
where
    A: Send,
    I: Fn() -> A + Sync + Send,
    F: Fn(&mut A, &[u32]) + Sync + Send,
    M: Fn(A, A) -> A + Sync + Send,
{
    prefixes(n)
        .into_par_iter()
        .map(|prefix| {
            let mut acc = init();
            for_each_with_prefix(n, &prefix, |w| f(&mut acc, w));
            acc
        })
        .reduce(&init, &merge)
}

/// Parallel fold over `B_n`, `B_n^+` or `B_n^-`.
pub fn fold_signed<A, I, F, M>(n: usize, kind: EnumKind, init: I, f: F, merge: M) -> A
where
    A: Send,
    I: Fn() -> A + Sync + Send,
    F: Fn(&mut A, &[i32]) + Sync + Send,
    M: Fn(A, A) -> A + Sync + Send,
{
    assert!(kind.is_signed(), "fold_signed needs a signed kind");
    prefixes(n)
        .into_par_iter()
        .map(|prefix| {
            let mut acc = init();
            let mut buf = Vec::with_capacity(n);
            for_each_with_prefix(n, &prefix, |w| {
                for mask in 0..1u32 << n {
                    if mask_allowed(mask, kind) {
                        apply_mask(w, mask, &mut buf);
                        f(&mut acc, &buf);
                    }
                }
            });
            acc
        })
        .reduce(&init, &merge)
}
