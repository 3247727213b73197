use serde::{Deserialize, Serialize};

use super::poly::MultiPoly;
use super::series::{QMode, QSeries};
use crate::error::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// First coefficient at which the two sides of an identity differ.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mismatch {
    pub n: usize,
    pub lhs: MultiPoly,
    pub rhs: MultiPoly,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub id: String,
    pub nmax: usize,
    pub qmode: QMode,
    pub status: Status,
    pub first_mismatch: Option<Mismatch>,
    pub elapsed_ms: u64,
}

impl IdentityReport {
    pub fn new(id: impl Into<String>, nmax: usize, qmode: QMode, first_mismatch: Option<Mismatch>) -> Self {
        IdentityReport {
            id: id.into(),
            nmax,
            qmode,
            status: if first_mismatch.is_none() { Status::Pass } else { Status::Fail },
            first_mismatch,
            elapsed_ms: 0,
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn with_elapsed(mut self, ms: u64) -> Self {
        self.elapsed_ms = ms;
        self
    }

    /// Same outcome, ignoring timing.
    pub fn same_outcome(&self, other: &IdentityReport) -> bool {
        self.id == other.id
            && self.nmax == other.nmax
            && self.qmode == other.qmode
            && self.status == other.status
            && self.first_mismatch == other.first_mismatch
    }
}

/// Verifies `lhs · den = num` coefficient-wise up to the common order.
pub fn cross_check(id: &str, lhs: &QSeries, num: &QSeries, den: &QSeries) -> Result<IdentityReport> {
    let mismatch = lhs.cross_check(num, den)?.map(|(n, lhs, rhs)| Mismatch { n, lhs, rhs });
    Ok(IdentityReport::new(id, lhs.order(), lhs.mode(), mismatch))
}

/// Compares two sides of a per-`n` polynomial identity for `n` in `range`.
pub fn compare_each<F>(
    id: &str,
    qmode: QMode,
    range: std::ops::RangeInclusive<usize>,
    mut sides: F,
) -> Result<IdentityReport>
where
    F: FnMut(usize) -> Result<(MultiPoly, MultiPoly)>,
{
    let nmax = *range.end();
    for n in range {
        let (lhs, rhs) = sides(n)?;
        let (lhs, rhs) = (qmode.apply(lhs), qmode.apply(rhs));
        if lhs != rhs {
            return Ok(IdentityReport::new(id, nmax, qmode, Some(Mismatch { n, lhs, rhs })));
        }
    }
    Ok(IdentityReport::new(id, nmax, qmode, None))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_shape() {
        let r = IdentityReport::new(
            "B1",
            4,
            QMode::One,
            Some(Mismatch { n: 2, lhs: "1 + 1*x".parse().unwrap(), rhs: MultiPoly::one() }),
        );
        let v: serde_json::Value = serde_json::to_value(&r).unwrap();
        assert_eq!(v["status"], "fail");
        assert_eq!(v["qmode"], "one");
        assert_eq!(v["first_mismatch"]["lhs"], "1 + 1*x");
        let back: IdentityReport = serde_json::from_value(v).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn compare_each_stops_at_first() {
        let r = compare_each("T", QMode::Generic, 1..=5, |n| {
            Ok((MultiPoly::constant(n as i64), MultiPoly::constant(if n < 3 { n as i64 } else { 0 })))
        })
        .unwrap();
        assert_eq!(r.first_mismatch.unwrap().n, 3);
    }
}
