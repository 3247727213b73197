use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::exactalg::qnum;
use crate::perm::{fold_plain, fold_signed, lpk, plain_profile, signed_profile, EnumKind};
use crate::trees::andre_tables;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TableKind {
    /// Permutations with no even descents, by odd descents.
    A,
    /// Permutations with no even ascents, by odd descents.
    ABar,
    /// Signed permutations with no even descents, by odd descents.
    B,
    /// Signed permutations with no even ascents, by odd descents.
    BBar,
    /// Permutations by left peaks.
    G,
    /// `ḡ(n,j) = Σ_i C(i+j, j) g(n, i+j) 2^i`.
    GBar,
    /// André permutations by descents.
    D,
    /// `d̄(n,i) = Σ_j C(j,i) d(n,j)`.
    DBar,
}

impl TableKind {
    pub const ALL: [TableKind; 8] = [
        TableKind::A,
        TableKind::ABar,
        TableKind::B,
        TableKind::BBar,
        TableKind::G,
        TableKind::GBar,
        TableKind::D,
        TableKind::DBar,
    ];

    pub fn name(self) -> &'static str {
        match self {
            TableKind::A => "a",
            TableKind::ABar => "a_bar",
            TableKind::B => "b",
            TableKind::BBar => "b_bar",
            TableKind::G => "g",
            TableKind::GBar => "g_bar",
            TableKind::D => "d",
            TableKind::DBar => "d_bar",
        }
    }

    pub fn is_signed(self) -> bool {
        matches!(self, TableKind::B | TableKind::BBar)
    }

    pub fn max_n(self) -> usize {
        if self.is_signed() {
            8
        } else {
            10
        }
    }
}

impl fmt::Display for TableKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TableKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        TableKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown table `{s}`")))
    }
}

/// One row of a coefficient triangle, indexed `0..=⌊n/2⌋`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountTable {
    pub n: usize,
    pub kind: TableKind,
    pub values: Vec<BigInt>,
}

fn add_rows(mut a: Vec<u64>, b: Vec<u64>) -> Vec<u64> {
    for (x, y) in a.iter_mut().zip(b) {
        *x += y;
    }
    a
}

fn row(counts: Vec<u64>) -> Vec<BigInt> {
    counts.into_iter().map(BigInt::from).collect()
}

pub fn count_table(n: usize, kind: TableKind) -> Result<CountTable> {
    if n == 0 || n > kind.max_n() {
        return invalid(format!("table {kind} is available for 1 <= n <= {}", kind.max_n()));
    }
    let m = n / 2;
    let values = match kind {
        TableKind::A | TableKind::ABar => row(fold_plain(
            n,
            || vec![0u64; m + 1],
            |acc, w| {
                let p = plain_profile(w);
                let avoided = if kind == TableKind::A { p.des0 } else { p.asc0 };
                if avoided == 0 {
                    acc[p.des1 as usize] += 1;
                }
            },
            add_rows,
        )),
        TableKind::B | TableKind::BBar => row(fold_signed(
            n,
            EnumKind::B,
            || vec![0u64; m + 1],
            |acc, w| {
                let p = signed_profile(w);
                let avoided = if kind == TableKind::B { p.des0 } else { p.asc0 };
                if avoided == 0 {
                    acc[p.des1 as usize] += 1;
                }
            },
            add_rows,
        )),
        TableKind::G => row(fold_plain(n, || vec![0u64; m + 1], |acc, w| acc[lpk(w) as usize] += 1, add_rows)),
        TableKind::GBar => {
            let g = count_table(n, TableKind::G)?.values;
            (0..=m)
                .map(|j| (0..=m - j).map(|i| qnum::binomial(i + j, j) * &g[i + j] * (BigInt::from(1) << i)).sum())
                .collect()
        }
        TableKind::D => andre_tables(n)?.d.into_iter().map(BigInt::from).collect(),
        TableKind::DBar => andre_tables(n)?.d_bar.into_iter().map(BigInt::from).collect(),
    };
    Ok(CountTable { n, kind, values })
}

/// Triangle for `n = 1..=nmax` as CSV with header `n,j0,j1,...`. Entries
/// beyond `⌊n/2⌋` are zero.
pub fn csv_triangle(kind: TableKind, nmax: usize) -> Result<String> {
    let rows = (1..=nmax).map(|n| count_table(n, kind)).collect::<Result<Vec<_>>>()?;
    let width = nmax / 2 + 1;
    let mut out = String::from("n");
    for j in 0..width {
        out.push_str(&format!(",j{j}"));
    }
    out.push('\n');
    for t in rows {
        out.push_str(&t.n.to_string());
        for j in 0..width {
            match t.values.get(j) {
                Some(v) => out.push_str(&format!(",{v}")),
                None => out.push_str(",0"),
            }
        }
        out.push('\n');
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vals(n: usize, kind: TableKind) -> Vec<i64> {
        count_table(n, kind).unwrap().values.iter().map(|v| i64::try_from(v).unwrap()).collect()
    }

    #[test]
    fn small_rows() {
        assert_eq!(vals(3, TableKind::A), [1, 2]);
        assert_eq!(vals(3, TableKind::ABar), [2, 1]);
        assert_eq!(vals(2, TableKind::G), [1, 1]);
        assert_eq!(vals(2, TableKind::GBar), [3, 1]);
        assert_eq!(vals(4, TableKind::D), [1, 4, 0]);
    }

    #[test]
    fn row_sums() {
        // every permutation has some number of left peaks
        assert_eq!(vals(6, TableKind::G).iter().sum::<i64>(), 720);
        assert!(count_table(0, TableKind::G).is_err());
        assert!(count_table(9, TableKind::B).is_err());
    }

    #[test]
    fn csv_layout() {
        let csv = csv_triangle(TableKind::G, 3).unwrap();
        assert_eq!(csv, "n,j0,j1\n1,1,0\n2,1,1\n3,1,5\n");
    }
}
