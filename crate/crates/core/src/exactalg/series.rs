//! Truncated series `Σ c_n t^n / n!_q` with polynomial coefficients.
//!
//! Products use the q-binomial convolution, so `t^a/a!_q * t^b/b!_q`
//! equals `[a+b choose a]_q t^{a+b}/(a+b)!_q`. In [`QMode::One`] every
//! coefficient is kept at `q = 1` and the product is the ordinary EGF one.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::poly::MultiPoly;
use super::qnum;
use crate::error::{invalid, Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum QMode {
    Generic,
    One,
}

impl QMode {
    pub fn name(self) -> &'static str {
        match self {
            QMode::Generic => "generic",
            QMode::One => "one",
        }
    }

    /// Normalizes a coefficient for this mode.
    pub fn apply(self, p: MultiPoly) -> MultiPoly {
        match self {
            QMode::Generic => p,
            QMode::One => p.at_q_one(),
        }
    }
}

impl fmt::Display for QMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for QMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "generic" => Ok(QMode::Generic),
            "one" | "1" => Ok(QMode::One),
            other => invalid(format!("unknown q mode `{other}` (expected one|generic)")),
        }
    }
}

/// Row `n` of the binomial triangle in the given mode.
fn binomial_row(n: usize, mode: QMode) -> Vec<MultiPoly> {
    (0..=n)
        .map(|k| match mode {
            QMode::Generic => qnum::q_binomial(n, k).expect("k <= n"),
            QMode::One => MultiPoly::constant(qnum::binomial(n, k)),
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QSeries {
    mode: QMode,
    coeffs: Vec<MultiPoly>,
}

impl QSeries {
    /// Series of order `order` (so `order + 1` coefficients).
    pub fn new(mode: QMode, coeffs: Vec<MultiPoly>) -> Self {
        assert!(!coeffs.is_empty(), "a series needs at least c_0");
        let coeffs = coeffs.into_iter().map(|c| mode.apply(c)).collect();
        QSeries { mode, coeffs }
    }

    pub fn from_fn(mode: QMode, order: usize, f: impl FnMut(usize) -> MultiPoly) -> Self {
        Self::new(mode, (0..=order).map(f).collect())
    }

    pub fn try_from_fn(mode: QMode, order: usize, f: impl FnMut(usize) -> Result<MultiPoly>) -> Result<Self> {
        Ok(Self::new(mode, (0..=order).map(f).collect::<Result<_>>()?))
    }

    pub fn zero(mode: QMode, order: usize) -> Self {
        Self::from_fn(mode, order, |_| MultiPoly::zero())
    }

    pub fn constant(mode: QMode, order: usize, c: MultiPoly) -> Self {
        let mut c = Some(c);
        Self::from_fn(mode, order, |n| if n == 0 { c.take().unwrap() } else { MultiPoly::zero() })
    }

    pub fn one(mode: QMode, order: usize) -> Self {
        Self::constant(mode, order, MultiPoly::one())
    }

    /// `Σ_n base^n t^n/n!_q`, the q-exponential `e_q(base·t)`.
    pub fn exp(mode: QMode, order: usize, base: &MultiPoly) -> Self {
        Self::from_fn(mode, order, |n| base.pow(n as u32))
    }

    /// `Σ_k base^k t^{2k}/(2k)!_q`: `cosh_q(a t)` with `a² = base`.
    pub fn even(mode: QMode, order: usize, base: &MultiPoly) -> Self {
        Self::from_fn(mode, order, |n| if n % 2 == 0 { base.pow((n / 2) as u32) } else { MultiPoly::zero() })
    }

    /// `Σ_k lead·base^k t^{2k+1}/(2k+1)!_q`: `lead·sinh_q(a t)/a` with `a² = base`.
    pub fn odd(mode: QMode, order: usize, lead: &MultiPoly, base: &MultiPoly) -> Self {
        Self::from_fn(mode, order, |n| if n % 2 == 1 { lead * &base.pow((n / 2) as u32) } else { MultiPoly::zero() })
    }

    pub fn cosh(mode: QMode, order: usize) -> Self {
        Self::even(mode, order, &MultiPoly::one())
    }

    pub fn sinh(mode: QMode, order: usize) -> Self {
        Self::odd(mode, order, &MultiPoly::one(), &MultiPoly::one())
    }

    /// `cos_q(u t)`.
    pub fn cos(mode: QMode, order: usize, u: &MultiPoly) -> Self {
        Self::even(mode, order, &-(u * u))
    }

    /// `sin_q(u t)`.
    pub fn sin(mode: QMode, order: usize, u: &MultiPoly) -> Self {
        Self::odd(mode, order, u, &-(u * u))
    }

    pub fn mode(&self) -> QMode {
        self.mode
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, n: usize) -> &MultiPoly {
        &self.coeffs[n]
    }

    pub fn coeffs(&self) -> &[MultiPoly] {
        &self.coeffs
    }

    fn compatible(&self, other: &QSeries) -> Result<()> {
        if self.mode != other.mode {
            return invalid(format!("mixed q modes: {} and {}", self.mode, other.mode));
        }
        if self.order() != other.order() {
            return invalid(format!("mismatched truncation orders: {} and {}", self.order(), other.order()));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &QSeries) -> Result<QSeries> {
        self.compatible(other)?;
        Ok(QSeries { mode: self.mode, coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect() })
    }

    pub fn try_sub(&self, other: &QSeries) -> Result<QSeries> {
        self.compatible(other)?;
        Ok(QSeries { mode: self.mode, coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect() })
    }

    pub fn try_mul(&self, other: &QSeries) -> Result<QSeries> {
        self.compatible(other)?;
        let coeffs = (0..=self.order())
            .map(|n| {
                let row = binomial_row(n, self.mode);
                let mut acc = MultiPoly::zero();
                for (m, b) in row.iter().enumerate() {
                    let (f, g) = (&self.coeffs[m], &other.coeffs[n - m]);
                    if f.is_zero() || g.is_zero() {
                        continue;
                    }
                    acc += &(&(b * f) * g);
                }
                acc
            })
            .collect();
        Ok(QSeries { mode: self.mode, coeffs })
    }

    pub fn scale(&self, c: &MultiPoly) -> QSeries {
        QSeries::new(self.mode, self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn scale_int(&self, c: i64) -> QSeries {
        let c = BigInt::from(c);
        QSeries { mode: self.mode, coeffs: self.coeffs.iter().map(|a| a.scale(&c)).collect() }
    }

    /// Keeps the coefficients with even index.
    pub fn even_part(&self) -> QSeries {
        self.filter(|n| n % 2 == 0)
    }

    pub fn odd_part(&self) -> QSeries {
        self.filter(|n| n % 2 == 1)
    }

    fn filter(&self, keep: impl Fn(usize) -> bool) -> QSeries {
        QSeries {
            mode: self.mode,
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(n, c)| if keep(n) { c.clone() } else { MultiPoly::zero() })
                .collect(),
        }
    }

    /// Replaces `c_0`.
    pub fn with_constant(mut self, c: MultiPoly) -> QSeries {
        self.coeffs[0] = self.mode.apply(c);
        self
    }

    /// Smallest index where `self·den` and `num` disagree, with both sides.
    pub fn cross_check(&self, num: &QSeries, den: &QSeries) -> Result<Option<(usize, MultiPoly, MultiPoly)>> {
        self.compatible(num)?;
        self.compatible(den)?;
        let lhs = self.try_mul(den)?;
        Ok(lhs
            .coeffs
            .into_iter()
            .zip(&num.coeffs)
            .enumerate()
            .find(|(_, (a, b))| a != *b)
            .map(|(n, (a, b))| (n, a, b.clone())))
    }
}

macro_rules! series_binop {
    ($tr:ident, $method:ident, $inner:ident) => {
        impl $tr for &QSeries {
            type Output = QSeries;
            fn $method(self, rhs: &QSeries) -> QSeries {
                self.$inner(rhs).expect("incompatible series")
            }
        }
        impl $tr for QSeries {
            type Output = QSeries;
            fn $method(self, rhs: QSeries) -> QSeries {
                (&self).$inner(&rhs).expect("incompatible series")
            }
        }
    };
}

series_binop!(Add, add, try_add);
series_binop!(Sub, sub, try_sub);
series_binop!(Mul, mul, try_mul);

impl Neg for &QSeries {
    type Output = QSeries;
    fn neg(self) -> QSeries {
        self.scale_int(-1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::var::Var;

    fn t(mode: QMode, order: usize) -> QSeries {
        QSeries::from_fn(mode, order, |n| if n == 1 { MultiPoly::one() } else { MultiPoly::zero() })
    }

    #[test]
    fn t_squared() {
        let sq = &t(QMode::Generic, 3) * &t(QMode::Generic, 3);
        assert_eq!(sq.coeff(2).to_string(), "1 + 1*q");
        let sq1 = &t(QMode::One, 3) * &t(QMode::One, 3);
        assert_eq!(sq1.coeff(2).to_string(), "2");
    }

    #[test]
    fn scale_by_zero() {
        let f = QSeries::exp(QMode::Generic, 4, &MultiPoly::var(Var::X));
        assert_eq!(f.scale(&MultiPoly::zero()), QSeries::zero(QMode::Generic, 4));
    }

    #[test]
    fn mixed_modes_rejected() {
        let a = QSeries::one(QMode::One, 3);
        let b = QSeries::one(QMode::Generic, 3);
        assert!(a.try_mul(&b).is_err());
        assert!(QSeries::one(QMode::One, 2).try_add(&a).is_err());
    }

    #[test]
    fn q_one_mode_drops_q() {
        let f = QSeries::from_fn(QMode::One, 2, |_| "1 + 1*q".parse().unwrap());
        assert_eq!(f.coeff(1).to_string(), "2");
    }

    #[test]
    fn exp_is_multiplicative_at_q_one() {
        let x = MultiPoly::var(Var::X);
        let y = MultiPoly::var(Var::Y);
        let lhs = &QSeries::exp(QMode::One, 6, &x) * &QSeries::exp(QMode::One, 6, &y);
        assert_eq!(lhs, QSeries::exp(QMode::One, 6, &(&x + &y)));
    }

    #[test]
    fn cosh_squared_minus_sinh_squared() {
        let c = QSeries::cosh(QMode::One, 8);
        let s = QSeries::sinh(QMode::One, 8);
        assert_eq!(&(&c * &c) - &(&s * &s), QSeries::one(QMode::One, 8));
        // fails at generic q already at t^2
        let cq = QSeries::cosh(QMode::Generic, 4);
        let sq = QSeries::sinh(QMode::Generic, 4);
        let diff = &(&cq * &cq) - &(&sq * &sq);
        assert_ne!(diff, QSeries::one(QMode::Generic, 4));
    }

    #[test]
    fn cross_check_reports_first_index() {
        let f = QSeries::exp(QMode::Generic, 5, &MultiPoly::var(Var::X));
        let g = QSeries::cos(QMode::Generic, 5, &MultiPoly::var(Var::Y));
        let prod = &f * &g;
        assert_eq!(f.cross_check(&prod, &g).unwrap(), None);
        let mut broken = prod.coeffs().to_vec();
        broken[3] += &MultiPoly::one();
        let broken = QSeries::new(QMode::Generic, broken);
        assert_eq!(f.cross_check(&broken, &g).unwrap().unwrap().0, 3);
    }

    #[test]
    fn mode_parse() {
        assert_eq!("one".parse::<QMode>().unwrap(), QMode::One);
        assert_eq!("generic".parse::<QMode>().unwrap(), QMode::Generic);
        assert!("two".parse::<QMode>().is_err());
    }
}
