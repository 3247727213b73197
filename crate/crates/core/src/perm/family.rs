use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::enumerate::{fold_plain, fold_signed, is_up_down, EnumKind};
use super::stats::{plain_profile, signed_profile, StatProfile};
use crate::error::{invalid, Error, Result};
use crate::exactalg::{Monomial, MultiPoly, Var};

pub const MAX_PLAIN: usize = 10;
pub const MAX_SIGNED: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FamilyId {
    /// `Σ x0^asc0 x1^asc1 y0^des0 y1^des1 q^inv` over `S_n`.
    PA,
    /// `Σ x^des1 y^des0 q^inv`.
    A,
    /// `Σ x^des1 y^asc0 q^inv`.
    AHat,
    /// `Σ q^inv` over up-down permutations.
    E,
    /// `Σ x^des1 y^des0` over `B_n`.
    B,
    /// `Σ x^des1 y^asc0` over `B_n`.
    BHat,
    /// Four-variable polynomial over `B_n`.
    PB,
    BPlus,
    BMinus,
    ATilde,
    ABar,
    BTilde,
    BBar,
    /// `Σ x^altdes` over `S_n`.
    AltA,
    /// `Σ x^altdes` over `B_n`.
    AltB,
}

impl FamilyId {
    pub const ALL: [FamilyId; 15] = [
        FamilyId::PA,
        FamilyId::A,
        FamilyId::AHat,
        FamilyId::E,
        FamilyId::B,
        FamilyId::BHat,
        FamilyId::PB,
        FamilyId::BPlus,
        FamilyId::BMinus,
        FamilyId::ATilde,
        FamilyId::ABar,
        FamilyId::BTilde,
        FamilyId::BBar,
        FamilyId::AltA,
        FamilyId::AltB,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FamilyId::PA => "P_A",
            FamilyId::A => "A",
            FamilyId::AHat => "A_hat",
            FamilyId::E => "E",
            FamilyId::B => "B",
            FamilyId::BHat => "B_hat",
            FamilyId::PB => "P_B",
            FamilyId::BPlus => "B_plus",
            FamilyId::BMinus => "B_minus",
            FamilyId::ATilde => "A_tilde",
            FamilyId::ABar => "A_bar",
            FamilyId::BTilde => "B_tilde",
            FamilyId::BBar => "B_bar",
            FamilyId::AltA => "ALT_A",
            FamilyId::AltB => "ALT_B",
        }
    }

    pub fn is_signed(self) -> bool {
        matches!(
            self,
            FamilyId::B
                | FamilyId::BHat
                | FamilyId::PB
                | FamilyId::BPlus
                | FamilyId::BMinus
                | FamilyId::BTilde
                | FamilyId::BBar
                | FamilyId::AltB
        )
    }

    pub fn max_n(self) -> usize {
        if self.is_signed() {
            MAX_SIGNED
        } else {
            MAX_PLAIN
        }
    }

    /// The family this one is derived from by a `(1+y)` scaling, if any.
    fn parent(self) -> Option<FamilyId> {
        match self {
            FamilyId::ATilde => Some(FamilyId::A),
            FamilyId::ABar => Some(FamilyId::AHat),
            FamilyId::BTilde => Some(FamilyId::B),
            FamilyId::BBar => Some(FamilyId::BHat),
            _ => None,
        }
    }

    fn enum_kind(self) -> EnumKind {
        match self {
            FamilyId::E => EnumKind::UpDown,
            FamilyId::BPlus => EnumKind::BPlus,
            FamilyId::BMinus => EnumKind::BMinus,
            f if f.is_signed() => EnumKind::B,
            _ => EnumKind::S,
        }
    }

    fn monomial(self, p: &StatProfile) -> Monomial {
        use Var::*;
        match self {
            FamilyId::PA | FamilyId::PB => Monomial::from_powers(&[
                (X0, p.asc0),
                (X1, p.asc1),
                (Y0, p.des0),
                (Y1, p.des1),
                (Q, if self == FamilyId::PA { p.inv } else { 0 }),
            ]),
            FamilyId::A => Monomial::from_powers(&[(X, p.des1), (Y, p.des0), (Q, p.inv)]),
            FamilyId::AHat => Monomial::from_powers(&[(X, p.des1), (Y, p.asc0), (Q, p.inv)]),
            FamilyId::E => Monomial::from_powers(&[(Q, p.inv)]),
            FamilyId::B | FamilyId::BPlus | FamilyId::BMinus => Monomial::from_powers(&[(X, p.des1), (Y, p.des0)]),
            FamilyId::BHat => Monomial::from_powers(&[(X, p.des1), (Y, p.asc0)]),
            FamilyId::AltA | FamilyId::AltB => Monomial::from_powers(&[(X, p.altdes)]),
            FamilyId::ATilde | FamilyId::ABar | FamilyId::BTilde | FamilyId::BBar => {
                unreachable!("derived families have no per-permutation monomial")
            }
        }
    }
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FamilyId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        FamilyId::ALL.into_iter().find(|f| f.name().eq_ignore_ascii_case(s)).ok_or_else(|| {
            let names: Vec<_> = FamilyId::ALL.iter().map(|f| f.name()).collect();
            Error::InvalidArgument(format!("unknown family `{s}` (expected one of {})", names.join(", ")))
        })
    }
}

type Tally = HashMap<Monomial, u64>;

fn merge(mut a: Tally, b: Tally) -> Tally {
    if a.len() < b.len() {
        return merge(b, a);
    }
    for (m, c) in b {
        *a.entry(m).or_default() += c;
    }
    a
}

fn into_poly(t: Tally) -> MultiPoly {
    MultiPoly::from_terms(t.into_iter().map(|(m, c)| (m, BigInt::from(c))))
}

pub(crate) fn check_range(n: usize, family: FamilyId) -> Result<()> {
    if n == 0 {
        return invalid("distribution needs n >= 1");
    }
    if n > family.max_n() {
        return invalid(format!("{family} is supported for n <= {}, got {n}", family.max_n()));
    }
    Ok(())
}

/// Brute-force sum over the family's index set of its monomials.
pub(crate) fn enumerate_family(n: usize, family: FamilyId) -> MultiPoly {
    let kind = family.enum_kind();
    let tally = if kind.is_signed() {
        fold_signed(
            n,
            kind,
            Tally::new,
            |t, w| {
                *t.entry(family.monomial(&signed_profile(w))).or_default() += 1;
            },
            merge,
        )
    } else {
        fold_plain(
            n,
            Tally::new,
            |t, w| {
                if kind == EnumKind::UpDown && !is_up_down(w) {
                    return;
                }
                *t.entry(family.monomial(&plain_profile(w))).or_default() += 1;
            },
            merge,
        )
    };
    into_poly(tally)
}

/// Applies the `(1+y)` scalings that define the tilde and bar families.
pub(crate) fn derive_scaled(n: usize, family: FamilyId, parent: &MultiPoly) -> Result<MultiPoly> {
    let base = parent.at_q_one();
    let one_plus_y = MultiPoly::one() + MultiPoly::var(Var::Y);
    match (family, n.is_multiple_of(2)) {
        (FamilyId::ATilde | FamilyId::ABar, true) => Ok(&base * &one_plus_y),
        (FamilyId::ATilde | FamilyId::ABar, false) => Ok(base),
        (FamilyId::BTilde | FamilyId::BBar, true) => Ok(base),
        (FamilyId::BTilde | FamilyId::BBar, false) => base.div_one_plus(Var::Y),
        _ => unreachable!(),
    }
}

/// Exact distribution polynomial of `family` at length `n`, uncached.
pub fn distribution(n: usize, family: FamilyId) -> Result<MultiPoly> {
    check_range(n, family)?;
    match family.parent() {
        Some(parent) => derive_scaled(n, family, &enumerate_family(n, parent)),
        None => Ok(enumerate_family(n, family)),
    }
}

pub(crate) fn parent_of(family: FamilyId) -> Option<FamilyId> {
    family.parent()
}
