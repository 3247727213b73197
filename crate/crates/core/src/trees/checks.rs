use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{andre_tables, classify, ClassKind, MinMaxTree};
use crate::error::{invalid, Error, Result};
use crate::exactalg::{IdentityReport, Mismatch, MultiPoly, QMode};
use crate::perm::{enumerate, fold_plain, EnumKind, Permutation, PlainPerms};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TreeCheck {
    pub id: &'static str,
    pub nmax: usize,
    pub max_n: usize,
    pub summary: &'static str,
}

const fn check(id: &'static str, nmax: usize, max_n: usize, summary: &'static str) -> TreeCheck {
    TreeCheck { id, nmax, max_n, summary }
}

pub const TREE_CHECKS: &[TreeCheck] = &[
    check("TREE_FIG1", 6, 6, "min-max tree of 562314 and its image under psi_2"),
    check("TREE_ROUNDTRIP", 7, 9, "inorder readout of M(w) is w"),
    check("HR_INVOLUTION", 6, 8, "psi_i is an involution preserving min-max trees"),
    check("HR_COMMUTE", 6, 7, "psi_i and psi_j commute"),
    check("ANDRE_HR", 8, 9, "André permutations are those whose interior nodes are all min nodes"),
    check("ANDRE_LISTS", 4, 4, "André and Simsun permutations of lengths 3 and 4"),
    check("EULER_SUM", 9, 9, "number of André permutations is the Euler number"),
    check("DN_RS", 9, 9, "André descent polynomial equals the Simsun descent polynomial"),
];

const RANDOM_CASES: usize = 10_000;
const RANDOM_LENGTHS: [usize; 2] = [8, 10];
const SEED: u64 = 0x6d69_6e6d_6178;

pub fn lookup(id: &str) -> Result<&'static TreeCheck> {
    TREE_CHECKS.iter().find(|c| c.id == id).ok_or_else(|| Error::InvalidArgument(format!("unknown tree check `{id}`")))
}

fn violations(n: usize, count: usize) -> Option<Mismatch> {
    (count > 0).then(|| Mismatch { n, lhs: MultiPoly::constant(count as u64), rhs: MultiPoly::zero() })
}

/// Counts words of length `n` failing `bad`, in parallel.
fn count_bad(n: usize, bad: impl Fn(&[u32]) -> usize + Sync + Send) -> usize {
    fold_plain(n, || 0usize, |acc, w| *acc += bad(w), |a, b| a + b)
}

fn involution_failures(t: &MinMaxTree) -> usize {
    (1..=t.len())
        .filter(|&i| {
            let s = t.psi(i).unwrap();
            s.psi(i).unwrap() != *t || MinMaxTree::build(s.word()).unwrap() != s
        })
        .count()
}

fn commute_failures(t: &MinMaxTree, pairs: impl Iterator<Item = (usize, usize)>) -> usize {
    pairs.filter(|&(i, j)| t.psi(i).unwrap().psi(j).unwrap() != t.psi(j).unwrap().psi(i).unwrap()).count()
}

fn random_trees(n: usize, salt: u64) -> impl Iterator<Item = MinMaxTree> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ salt ^ n as u64);
    let mut w: Vec<u32> = (1..=n as u32).collect();
    (0..RANDOM_CASES).map(move |_| {
        w.shuffle(&mut rng);
        MinMaxTree::build(&w).unwrap()
    })
}

fn random_pairs(n: usize, salt: u64) -> impl Iterator<Item = (MinMaxTree, usize, usize)> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ salt ^ (n as u64) << 8);
    random_trees(n, salt).map(move |t| {
        let (i, j) = (rng.gen_range(1..=n), rng.gen_range(1..=n));
        (t, i, j)
    })
}

fn first_failure(
    range: impl Iterator<Item = usize>,
    mut f: impl FnMut(usize) -> Result<Option<Mismatch>>,
) -> Result<Option<Mismatch>> {
    for n in range {
        if let Some(m) = f(n)? {
            return Ok(Some(m));
        }
    }
    Ok(None)
}

fn sorted_members(n: usize, kind: ClassKind) -> Result<Vec<String>> {
    let mut out = Vec::new();
    for p in PlainPerms::new(n) {
        if classify(&p, kind)? {
            out.push(p.to_string());
        }
    }
    out.sort();
    Ok(out)
}

const FIG1_BEFORE: &str = "6 [max]\n  L 5\n  R 1 [min]\n    L 2 [min]\n      R 3\n    R 4\n";
const FIG1_AFTER: &str = "1 [min]\n  L 5\n  R 2 [min]\n    L 3 [min]\n      R 4\n    R 6\n";

/// Runs one tree check for every length up to `nmax`.
pub fn verify_tree(id: &str, nmax: usize) -> Result<IdentityReport> {
    let spec = lookup(id)?;
    if nmax == 0 || nmax > spec.max_n {
        return invalid(format!("{id}: n must lie in 1..={}", spec.max_n));
    }
    let start = Instant::now();
    let mismatch = match spec.id {
        "TREE_FIG1" => {
            let t = MinMaxTree::build(&[5, 6, 2, 3, 1, 4])?;
            let s = t.psi(2)?;
            let bad = [t.render() != FIG1_BEFORE, s.render() != FIG1_AFTER, s.word() != [5, 1, 3, 4, 2, 6]];
            violations(6, bad.iter().filter(|&&b| b).count())
        }
        "TREE_ROUNDTRIP" => first_failure(1..=nmax, |n| {
            Ok(violations(n, count_bad(n, |w| usize::from(MinMaxTree::build(w).unwrap().word() != w))))
        })?,
        "HR_INVOLUTION" => {
            let exhaustive = first_failure(1..=nmax, |n| {
                Ok(violations(n, count_bad(n, |w| involution_failures(&MinMaxTree::build(w).unwrap()))))
            })?;
            exhaustive.or_else(|| {
                RANDOM_LENGTHS
                    .iter()
                    .find_map(|&n| violations(n, random_trees(n, 1).map(|t| involution_failures(&t)).sum()))
            })
        }
        "HR_COMMUTE" => {
            let exhaustive = first_failure(1..=nmax, |n| {
                Ok(violations(
                    n,
                    count_bad(n, |w| {
                        let t = MinMaxTree::build(w).unwrap();
                        commute_failures(&t, (1..=n).flat_map(|i| (i + 1..=n).map(move |j| (i, j))))
                    }),
                ))
            })?;
            exhaustive.or_else(|| {
                RANDOM_LENGTHS.iter().find_map(|&n| {
                    let bad = random_pairs(n, 2).map(|(t, i, j)| commute_failures(&t, [(i, j)].into_iter())).sum();
                    violations(n, bad)
                })
            })
        }
        "ANDRE_HR" => first_failure(1..=nmax, |n| {
            // classify raises an inconsistency whenever the two criteria disagree
            let failures = fold_plain(
                n,
                || 0usize,
                |acc, w| {
                    *acc += usize::from(
                        classify(&Permutation::from_vec_unchecked(w.to_vec()), ClassKind::AndreFirst).is_err(),
                    )
                },
                |a, b| a + b,
            );
            Ok(violations(n, failures))
        })?,
        "ANDRE_LISTS" => {
            let expected: [(usize, ClassKind, &[&str]); 3] = [
                (4, ClassKind::AndreFirst, &["1234", "1324", "2134", "2314", "3124"]),
                (3, ClassKind::Simsun, &["123", "132", "213", "231", "312"]),
                (4, ClassKind::AndreSecond, &["1234", "1423", "3124", "3412", "4123"]),
            ];
            let mut found = None;
            for (n, kind, list) in expected {
                let got = sorted_members(n, kind)?;
                let missing = list.iter().filter(|s| !got.iter().any(|g| g == *s)).count();
                let extra = got.iter().filter(|g| !list.contains(&g.as_str())).count();
                if found.is_none() {
                    found = violations(n, missing + extra);
                }
            }
            found
        }
        "EULER_SUM" => first_failure(1..=nmax, |n| {
            let total = andre_tables(n)?.total();
            let up_down = enumerate(n, EnumKind::UpDown)?.count() as u64;
            Ok((total != up_down).then(|| Mismatch {
                n,
                lhs: MultiPoly::constant(total),
                rhs: MultiPoly::constant(up_down),
            }))
        })?,
        "DN_RS" => first_failure(1..=nmax, |n| {
            let t = andre_tables(n)?;
            Ok((t.dn != t.rs).then_some(Mismatch { n, lhs: t.dn, rhs: t.rs }))
        })?,
        _ => unreachable!("catalog ids are matched above"),
    };
    let report = IdentityReport::new(spec.id, nmax, QMode::One, mismatch);
    Ok(report.with_elapsed(start.elapsed().as_millis() as u64))
}
