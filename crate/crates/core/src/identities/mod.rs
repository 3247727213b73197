//! The identity catalog. Every entry pairs a brute-force left side with a
//! closed-form right side and is verified exactly, either by
//! cross-multiplication of truncated series or coefficient by coefficient.

mod build;

use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::exactalg::{cross_check, IdentityReport, QMode, QSeries};
use crate::perm::Distributions;

pub use build::{lhs_series, rhs_series};

/// Which q-modes an identity is expected to hold in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum QScope {
    /// Holds as a polynomial identity in `q` (and hence at `q = 1`).
    Generic,
    /// Meaningful only at `q = 1`.
    QOne,
    /// Required at `q = 1`; the generic-`q` outcome is measured and recorded.
    QOneRecordGeneric,
}

impl QScope {
    pub fn allows(self, mode: QMode) -> bool {
        !(self == QScope::QOne && mode == QMode::Generic)
    }

    /// Whether a run in `mode` is part of the required suite.
    pub fn required(self, mode: QMode) -> bool {
        match self {
            QScope::Generic => true,
            QScope::QOne | QScope::QOneRecordGeneric => mode == QMode::One,
        }
    }

    /// The modes a full catalog run uses.
    pub fn modes(self) -> &'static [QMode] {
        match self {
            QScope::Generic => &[QMode::Generic],
            QScope::QOne => &[QMode::One],
            QScope::QOneRecordGeneric => &[QMode::One, QMode::Generic],
        }
    }
}

/// Whether a check is about plain (type A) or signed (type B) permutations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Class {
    #[serde(rename = "A")]
    TypeA,
    #[serde(rename = "B")]
    TypeB,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Shape {
    /// `lhs · den = num` as truncated series.
    Series,
    /// A polynomial identity for each `n` separately.
    PerN,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IdentitySpec {
    pub id: &'static str,
    pub class: Class,
    pub scope: QScope,
    /// Default truncation used by full runs.
    pub nmax: usize,
    /// Largest truncation the left side can be computed for.
    pub max_order: usize,
    pub summary: &'static str,
    pub(crate) shape: Shape,
}

const fn spec(
    id: &'static str,
    class: Class,
    scope: QScope,
    nmax: usize,
    max_order: usize,
    shape: Shape,
    summary: &'static str,
) -> IdentitySpec {
    IdentitySpec { id, class, scope, nmax, max_order, summary, shape }
}

use Class::{TypeA, TypeB};
use QScope::{Generic, QOne, QOneRecordGeneric};
use Shape::{PerN, Series};

const PLAIN: usize = 10;
const SIGNED: usize = 8;
const SIEVE: usize = 12;

pub const CATALOG: &[IdentitySpec] = &[
    spec("CS_Q", TypeA, QOneRecordGeneric, 8, PLAIN, Series, "four-variable Carlitz-Scoville generating function"),
    spec("ANDRE_Q", TypeA, Generic, 8, PLAIN, Series, "q-Euler numbers: tan_q + sec_q"),
    spec("PZ1", TypeA, QOneRecordGeneric, 8, PLAIN, Series, "generating function of A_n(x,y,q)"),
    spec("PZ2", TypeA, QOneRecordGeneric, 8, PLAIN, Series, "generating function of A-hat_n(x,y,q)"),
    spec("STANLEY_Q", TypeA, Generic, 8, PLAIN, Series, "q-Eulerian polynomials via exp_q"),
    spec("CF", TypeA, QOne, 8, PLAIN, Series, "homogeneous Eulerian polynomials"),
    spec("CHEBIKIN", TypeA, QOne, 8, PLAIN, Series, "alternating Eulerian polynomials via sec + tan"),
    spec("TILDE_REL", TypeA, Generic, 8, PLAIN, PerN, "A-hat_n(x,y,q) = y^floor((n-1)/2) A_n(x,1/y,q)"),
    spec("PREL", TypeA, Generic, 8, PLAIN, PerN, "P_n recovered from A_n by homogenization"),
    spec("B1", TypeB, QOne, 7, SIGNED, Series, "type B, even lengths"),
    spec("B2", TypeB, QOne, 7, SIGNED, Series, "type B, odd lengths"),
    spec("TYPEB_EULER", TypeB, QOne, 7, SIGNED, Series, "type B Eulerian polynomials"),
    spec("Z1", TypeB, QOne, 7, SIGNED, Series, "type B alternating, even lengths"),
    spec("Z2", TypeB, QOne, 7, SIGNED, Series, "type B alternating, odd lengths"),
    spec("P6", TypeB, QOne, 7, SIGNED, Series, "type B alternating Eulerian polynomials via cos/sin"),
    spec("BB_REL", TypeB, QOne, 7, SIGNED, PerN, "B-hat_n(x,y) = y^floor((n+1)/2) B_n(x,1/y)"),
    spec("PBB_REL", TypeB, QOne, 7, SIGNED, PerN, "P^B_n recovered from B_n by homogenization"),
    spec("TB3E", TypeB, QOne, 7, SIGNED, Series, "four-variable type B, even lengths"),
    spec("TB3O", TypeB, QOne, 7, SIGNED, Series, "four-variable type B, odd lengths"),
    spec("KEY0", TypeA, Generic, 7, PLAIN, PerN, "alpha_n(S,q) is a q-multinomial coefficient"),
    spec("ALPHAB", TypeB, QOne, 7, SIGNED, PerN, "alpha^+_n(S) = multinomial * 2^(n-s_1)"),
    spec("PA_LINK", TypeA, Generic, 8, PLAIN, PerN, "sieve polynomial P_n versus A_n"),
    spec("BQLINK", TypeB, QOne, 7, SIGNED, PerN, "sieve polynomial Q^+_n versus B^+_n"),
    spec("KEY2C", TypeA, Generic, 8, SIEVE, Series, "odd-length sieve series C"),
    spec("KEY2B_PROOF", TypeA, Generic, 8, SIEVE, Series, "even-length sieve series B, proof form"),
    spec("KEY2B_PRINTED", TypeA, QOneRecordGeneric, 8, SIEVE, Series, "even-length sieve series B, printed form"),
    spec("KEY3", TypeA, Generic, 8, SIEVE, Series, "full sieve series B/(1 - yB) and C/(1 - yB)"),
    spec("GH", TypeB, QOne, 7, SIEVE, Series, "type B sieve blocks G and H"),
    spec("FL", TypeB, QOne, 7, SIEVE, Series, "type B sieve blocks F and L"),
    spec("GFQ", TypeB, QOne, 7, SIEVE, Series, "generating function of Q^+_n"),
    spec("BP12", TypeB, QOne, 7, SIGNED, Series, "B^+ even lengths"),
    spec("OBP13", TypeB, QOne, 7, SIGNED, Series, "B^+ odd lengths"),
    spec("BP11", TypeB, QOne, 7, SIGNED, Series, "B^- even lengths"),
    spec("OBP14", TypeB, QOne, 7, SIGNED, Series, "B^- odd lengths"),
    spec("RHOLINK", TypeB, QOne, 7, SIGNED, PerN, "B^-_n is the reflection of B^+_n"),
    spec("FROBENIUS", TypeA, QOne, 9, PLAIN, PerN, "Eulerian polynomials via Stirling numbers"),
];

pub fn lookup(id: &str) -> Result<&'static IdentitySpec> {
    CATALOG.iter().find(|s| s.id == id).ok_or_else(|| Error::InvalidArgument(format!("unknown identity id `{id}`")))
}

pub fn ids() -> impl Iterator<Item = &'static str> {
    CATALOG.iter().map(|s| s.id)
}

fn check_args(spec: &IdentitySpec, order: usize, mode: QMode) -> Result<()> {
    if order < 2 {
        return invalid(format!("{}: truncation {order} is too small to be informative", spec.id));
    }
    if order > spec.max_order {
        return invalid(format!("{}: truncation {order} exceeds the supported {}", spec.id, spec.max_order));
    }
    if !spec.scope.allows(mode) {
        return invalid(format!("{} is only defined at q = 1", spec.id));
    }
    Ok(())
}

/// Verifies one catalog identity up to `order`.
pub fn verify(id: &str, order: usize, mode: QMode, ctx: &Distributions) -> Result<IdentityReport> {
    let spec = lookup(id)?;
    check_args(spec, order, mode)?;
    let start = Instant::now();
    let report = match spec.shape {
        Shape::Series => {
            let (lhs, num, den) = build::series_sides(spec.id, order, mode, ctx)?;
            cross_check(spec.id, &lhs, &num, &den)?
        }
        Shape::PerN => build::per_n(spec.id, order, mode, ctx)?,
    };
    Ok(report.with_elapsed(start.elapsed().as_millis() as u64))
}

/// Left side, numerator and denominator of a series identity.
pub fn sides(id: &str, order: usize, mode: QMode, ctx: &Distributions) -> Result<(QSeries, QSeries, QSeries)> {
    let spec = lookup(id)?;
    check_args(spec, order, mode)?;
    build::series_sides(spec.id, order, mode, ctx)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_are_unique() {
        let mut all: Vec<_> = ids().collect();
        all.sort_unstable();
        let before = all.len();
        all.dedup();
        assert_eq!(before, all.len());
    }

    #[test]
    fn argument_checks() {
        let ctx = Distributions::new();
        assert!(verify("NOPE", 4, QMode::One, &ctx).is_err());
        assert!(verify("B1", 1, QMode::One, &ctx).is_err());
        assert!(verify("B1", 4, QMode::Generic, &ctx).is_err());
        assert!(verify("B1", 9, QMode::One, &ctx).is_err());
    }

    #[test]
    fn small_runs() {
        let ctx = Distributions::new();
        assert!(verify("B1", 4, QMode::One, &ctx).unwrap().passed());
        assert!(verify("STANLEY_Q", 4, QMode::Generic, &ctx).unwrap().passed());
        assert!(verify("CS_Q", 2, QMode::One, &ctx).unwrap().passed());
        let generic = verify("CS_Q", 2, QMode::Generic, &ctx).unwrap();
        assert_eq!(generic.first_mismatch.unwrap().n, 2);
    }
}
