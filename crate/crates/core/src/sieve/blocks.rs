use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::exactalg::{MultiPoly, QMode, QSeries, Var};

/// Rational series used by the sieve lemmas, each given as a
/// (numerator, denominator) pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BlockKind {
    /// `(1+2x)(cosh_q t - 1) / (1 - x(cosh_q t - 1))`, as printed.
    BPrinted,
    /// `cosh_q t - 1 + x sinh_q² t / (1 - x(cosh_q t - 1))`.
    BProof,
    C,
    G,
    H,
    F,
    L,
}

impl BlockKind {
    pub const ALL: [BlockKind; 7] =
        [BlockKind::BPrinted, BlockKind::BProof, BlockKind::C, BlockKind::G, BlockKind::H, BlockKind::F, BlockKind::L];

    pub fn name(self) -> &'static str {
        match self {
            BlockKind::BPrinted => "B_printed",
            BlockKind::BProof => "B_proof",
            BlockKind::C => "C",
            BlockKind::G => "G",
            BlockKind::H => "H",
            BlockKind::F => "F",
            BlockKind::L => "L",
        }
    }

    /// G, H, F and L are only defined at `q = 1`.
    pub fn needs_q_one(self) -> bool {
        matches!(self, BlockKind::G | BlockKind::H | BlockKind::F | BlockKind::L)
    }
}

impl fmt::Display for BlockKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BlockKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        BlockKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown block `{s}`")))
    }
}

fn x() -> MultiPoly {
    MultiPoly::var(Var::X)
}

pub fn block_series(kind: BlockKind, order: usize, mode: QMode) -> Result<(QSeries, QSeries)> {
    if order == 0 {
        return invalid("block series need order >= 1");
    }
    if kind.needs_q_one() && mode != QMode::One {
        return invalid(format!("block {kind} is only defined at q = 1"));
    }
    let one = QSeries::one(mode, order);
    let xs = x();
    Ok(match kind {
        BlockKind::BPrinted | BlockKind::BProof | BlockKind::C => {
            let cosh_m1 = &QSeries::cosh(mode, order) - &one;
            let sinh = QSeries::sinh(mode, order);
            let den = &one - &cosh_m1.scale(&xs);
            let num = match kind {
                BlockKind::BPrinted => cosh_m1.scale(&(MultiPoly::one() + xs.scale(&2.into()))),
                BlockKind::BProof => &(&cosh_m1 * &den) + &(&sinh * &sinh).scale(&xs),
                _ => sinh,
            };
            (num, den)
        }
        _ => {
            let four = MultiPoly::constant(4);
            let c1 = QSeries::cosh(mode, order);
            let s1 = QSeries::sinh(mode, order);
            let c2 = QSeries::even(mode, order, &four);
            let s2 = QSeries::odd(mode, order, &MultiPoly::constant(2), &four);
            let den = &one - &(&c2 - &one).scale(&xs);
            let num = match kind {
                BlockKind::G => &(&(&c1 - &one) * &den) + &(&s1 * &s2).scale(&xs),
                BlockKind::H => &(&(&c2 - &one) * &den) + &(&s2 * &s2).scale(&xs),
                BlockKind::F => s2,
                _ => s1,
            };
            (num, den)
        }
    })
}
