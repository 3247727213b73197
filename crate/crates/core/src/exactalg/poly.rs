//! Sparse multivariate polynomials with arbitrary-precision integer
//! coefficients over the fixed alphabet in [`Var`].
//!
//! Terms live in a `BTreeMap` keyed by exponent tuples, so iteration order
//! is the canonical lexicographic order and the text form is unique.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::var::{Var, NVARS};
use crate::error::{Error, Result};

/// Exponent tuple over the alphabet, ordered lexicographically.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial([u16; NVARS]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0; NVARS]);

    pub fn var(v: Var) -> Self {
        Self::ONE.with_exponent(v, 1)
    }

    pub fn from_powers(powers: &[(Var, u32)]) -> Self {
        let mut m = Self::ONE;
        for &(v, e) in powers {
            m.0[v.index()] += exp16(e);
        }
        m
    }

    pub fn exponent(&self, v: Var) -> u32 {
        u32::from(self.0[v.index()])
    }

    pub fn with_exponent(mut self, v: Var, e: u32) -> Self {
        self.0[v.index()] = exp16(e);
        self
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().map(|&e| u32::from(e)).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = *self;
        for (a, b) in out.0.iter_mut().zip(other.0.iter()) {
            *a = a.checked_add(*b).expect("monomial exponent overflow");
        }
        out
    }
}

fn exp16(e: u32) -> u16 {
    u16::try_from(e).expect("monomial exponent overflow")
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for v in Var::ALL {
            let e = self.exponent(v);
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    terms: BTreeMap<Monomial, BigInt>,
}

impl MultiPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::term(c, Monomial::ONE)
    }

    pub fn var(v: Var) -> Self {
        Self::term(1, Monomial::var(v))
    }

    pub fn term(c: impl Into<BigInt>, m: Monomial) -> Self {
        let mut p = Self::zero();
        p.add_term(m, c.into());
        p
    }

    /// Builds `c * v1^e1 * v2^e2 ...`.
    pub fn monomial(c: impl Into<BigInt>, powers: &[(Var, u32)]) -> Self {
        Self::term(c, Monomial::from_powers(powers))
    }

    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, BigInt)>,
    {
        let mut p = Self::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    /// Univariate polynomial `Σ coeffs[k] v^k`.
    pub fn univariate(v: Var, coeffs: &[BigInt]) -> Self {
        Self::from_terms(coeffs.iter().enumerate().map(|(k, c)| (Monomial::ONE.with_exponent(v, k as u32), c.clone())))
    }

    pub fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(slot) => {
                slot.insert(c);
            }
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&Monomial::ONE).is_some_and(|c| c.is_one())
    }

    /// Number of stored (nonzero) terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn constant_term(&self) -> BigInt {
        self.coefficient(&Monomial::ONE)
    }

    /// Returns the value if this polynomial is a constant.
    pub fn as_constant(&self) -> Option<BigInt> {
        match self.terms.len() {
            0 => Some(BigInt::zero()),
            1 => self.terms.get(&Monomial::ONE).cloned(),
            _ => None,
        }
    }

    pub fn degree_in(&self, v: Var) -> u32 {
        self.terms.keys().map(|m| m.exponent(v)).max().unwrap_or(0)
    }

    pub fn uses(&self, v: Var) -> bool {
        self.terms.keys().any(|m| m.exponent(v) > 0)
    }

    /// Variables occurring with a positive exponent, in canonical order.
    pub fn variables(&self) -> Vec<Var> {
        Var::ALL.into_iter().filter(|&v| self.uses(v)).collect()
    }

    pub fn scale(&self, c: &BigInt) -> MultiPoly {
        if c.is_zero() {
            return Self::zero();
        }
        MultiPoly { terms: self.terms.iter().map(|(m, a)| (*m, a * c)).collect() }
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        let mut result = Self::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Sets `v = 0`.
    pub fn substitute_zero(&self, v: Var) -> MultiPoly {
        MultiPoly {
            terms: self.terms.iter().filter(|(m, _)| m.exponent(v) == 0).map(|(m, c)| (*m, c.clone())).collect(),
        }
    }

    /// Coefficient of `v^k`, as a polynomial in the remaining variables.
    pub fn coeff_of(&self, v: Var, k: u32) -> MultiPoly {
        MultiPoly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.exponent(v) == k)
                .map(|(m, c)| (m.with_exponent(v, 0), c.clone()))
                .collect(),
        }
    }

    /// Sets `v` to an integer value.
    pub fn evaluate(&self, v: Var, value: &BigInt) -> MultiPoly {
        let mut powers: Vec<BigInt> = vec![BigInt::one()];
        let mut out = MultiPoly::zero();
        for (m, c) in &self.terms {
            let e = m.exponent(v) as usize;
            while powers.len() <= e {
                let next = powers.last().unwrap() * value;
                powers.push(next);
            }
            out.add_term(m.with_exponent(v, 0), c * &powers[e]);
        }
        out
    }

    pub fn at_q_one(&self) -> MultiPoly {
        if !self.uses(Var::Q) {
            return self.clone();
        }
        self.evaluate(Var::Q, &BigInt::one())
    }

    /// Simultaneous substitution of polynomials for variables.
    pub fn substitute(&self, subs: &[(Var, MultiPoly)]) -> MultiPoly {
        let mut cache: HashMap<(usize, u32), MultiPoly> = HashMap::new();
        let mut out = MultiPoly::zero();
        for (m, c) in &self.terms {
            let mut rest = *m;
            let mut factor = MultiPoly::constant(c.clone());
            for (slot, (v, image)) in subs.iter().enumerate() {
                let e = m.exponent(*v);
                rest = rest.with_exponent(*v, 0);
                if e == 0 {
                    continue;
                }
                let p = cache.entry((slot, e)).or_insert_with(|| image.pow(e));
                factor = &factor * &*p;
            }
            out += &(&factor * &MultiPoly::term(1, rest));
        }
        out
    }

    pub fn rename(&self, from: Var, to: Var) -> MultiPoly {
        self.map_monomials(|m| {
            let e = m.exponent(from);
            let moved = m.with_exponent(from, 0);
            moved.with_exponent(to, moved.exponent(to) + e)
        })
    }

    /// `v^d * p(..., 1/v, ...)`; fails if some exponent of `v` exceeds `d`.
    pub fn reflect(&self, v: Var, d: u32) -> Result<MultiPoly> {
        self.try_map_monomials(|m| {
            let e = m.exponent(v);
            if e > d {
                return Err(Error::Inconsistency(format!("reflect: exponent {e} of {v} exceeds {d}")));
            }
            Ok(m.with_exponent(v, d - e))
        })
    }

    /// Multiplies each monomial carrying `v^e` by `partner^(d-e)`.
    pub fn homogenize(&self, v: Var, partner: Var, d: u32) -> Result<MultiPoly> {
        self.try_map_monomials(|m| {
            let e = m.exponent(v);
            if e > d {
                return Err(Error::Inconsistency(format!("homogenize: exponent {e} of {v} exceeds {d}")));
            }
            Ok(m.with_exponent(partner, m.exponent(partner) + d - e))
        })
    }

    pub fn map_monomials(&self, f: impl Fn(&Monomial) -> Monomial) -> MultiPoly {
        MultiPoly::from_terms(self.terms.iter().map(|(m, c)| (f(m), c.clone())))
    }

    fn try_map_monomials(&self, f: impl Fn(&Monomial) -> Result<Monomial>) -> Result<MultiPoly> {
        let mut out = MultiPoly::zero();
        for (m, c) in &self.terms {
            out.add_term(f(m)?, c.clone());
        }
        Ok(out)
    }

    /// Replaces every monomial by a polynomial image: `Σ c_m f(m)`.
    pub fn expand_monomials(&self, f: impl Fn(&Monomial) -> MultiPoly) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (m, c) in &self.terms {
            out += &f(m).scale(c);
        }
        out
    }

    /// Exact division by `1 + v`. A nonzero remainder is an inconsistency.
    pub fn div_one_plus(&self, v: Var) -> Result<MultiPoly> {
        let d = self.degree_in(v);
        let mut quotient = MultiPoly::zero();
        let mut carry = MultiPoly::zero();
        // c_k = q_k + q_{k-1}  =>  q_k = c_k - q_{k-1}
        for k in 0..=d {
            let ck = self.coeff_of(v, k);
            let qk = &ck - &carry;
            if k == d {
                if !qk.is_zero() {
                    return Err(Error::Inconsistency(format!("division by (1+{v}) leaves remainder {qk}")));
                }
                break;
            }
            let lifted = qk.map_monomials(|m| m.with_exponent(v, k));
            quotient += &lifted;
            carry = qk;
        }
        Ok(quotient)
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            if m.is_one() {
                write!(f, "{c}")?;
            } else {
                write!(f, "{c}*{m}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for MultiPoly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let mut p = MultiPoly::zero();
        for term in s.split(" + ") {
            let mut factors = term.split('*');
            let head = factors.next().unwrap_or_default().trim();
            let coeff: BigInt =
                head.parse().map_err(|_| Error::Parse(format!("bad coefficient `{head}` in `{term}`")))?;
            let mut m = Monomial::ONE;
            for factor in factors {
                let (name, e) = match factor.split_once('^') {
                    Some((name, e)) => {
                        let e: u32 = e.parse().map_err(|_| Error::Parse(format!("bad exponent in `{factor}`")))?;
                        (name, e)
                    }
                    None => (factor, 1),
                };
                let v: Var = name.parse().map_err(|_| Error::Parse(format!("unknown variable `{name}`")))?;
                m = m.mul(&Monomial::from_powers(&[(v, e)]));
            }
            p.add_term(m, coeff);
        }
        Ok(p)
    }
}

impl Serialize for MultiPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for MultiPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl From<i64> for MultiPoly {
    fn from(c: i64) -> Self {
        MultiPoly::constant(c)
    }
}

impl From<BigInt> for MultiPoly {
    fn from(c: BigInt) -> Self {
        MultiPoly::constant(c)
    }
}

impl From<Var> for MultiPoly {
    fn from(v: Var) -> Self {
        MultiPoly::var(v)
    }
}

impl AddAssign<&MultiPoly> for MultiPoly {
    fn add_assign(&mut self, rhs: &MultiPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, c.clone());
        }
    }
}

impl SubAssign<&MultiPoly> for MultiPoly {
    fn sub_assign(&mut self, rhs: &MultiPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, -c);
        }
    }
}

impl MulAssign<&MultiPoly> for MultiPoly {
    fn mul_assign(&mut self, rhs: &MultiPoly) {
        *self = &*self * rhs;
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        if self.is_zero() || rhs.is_zero() {
            return MultiPoly::zero();
        }
        let mut acc: HashMap<Monomial, BigInt> = HashMap::with_capacity(self.len() * rhs.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                *acc.entry(ma.mul(mb)).or_default() += ca * cb;
            }
        }
        MultiPoly { terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect() }
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly { terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect() }
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}

macro_rules! forward_owned {
    ($($tr:ident :: $method:ident),*) => {$(
        impl $tr<MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: MultiPoly) -> MultiPoly { (&self).$method(&rhs) }
        }
        impl $tr<&MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: &MultiPoly) -> MultiPoly { (&self).$method(rhs) }
        }
        impl $tr<MultiPoly> for &MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: MultiPoly) -> MultiPoly { self.$method(&rhs) }
        }
    )*};
}

forward_owned!(Add::add, Sub::sub, Mul::mul);

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> MultiPoly {
        MultiPoly::var(Var::X)
    }
    fn y() -> MultiPoly {
        MultiPoly::var(Var::Y)
    }
    fn p(s: &str) -> MultiPoly {
        s.parse().unwrap()
    }

    #[test]
    fn difference_of_squares() {
        let one = MultiPoly::one();
        let prod = (&one + &x()) * (&one - &x());
        assert_eq!(prod, &one - &x().pow(2));
        assert_eq!(prod.to_string(), "1 + -1*x^2");
    }

    #[test]
    fn substitute_zero_drops_monomials() {
        let b2 = p("1 + 3*x + 1*x*y + 3*y");
        assert_eq!(b2.substitute_zero(Var::Y), p("1 + 3*x"));
    }

    #[test]
    fn coeff_of_extracts() {
        let a2 = p("1 + 1*q*x");
        assert_eq!(a2.coeff_of(Var::Q, 1), x());
        assert_eq!(a2.coeff_of(Var::Q, 0), MultiPoly::one());
    }

    #[test]
    fn canonical_render() {
        let a2 = &MultiPoly::one() + &MultiPoly::monomial(1, &[(Var::Q, 1), (Var::X, 1)]);
        assert_eq!(a2.to_string(), "1 + 1*q*x");
        let pa2 = p("1*x1 + 1*q*y1");
        assert_eq!(pa2.to_string(), "1*x1 + 1*q*y1");
        assert_eq!(MultiPoly::zero().to_string(), "0");
        assert_eq!(p("0"), MultiPoly::zero());
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!("".parse::<MultiPoly>().is_err());
        assert!("1*z".parse::<MultiPoly>().is_err());
        assert!("a*x".parse::<MultiPoly>().is_err());
        assert!("1*x^-2".parse::<MultiPoly>().is_err());
    }

    #[test]
    fn reflect_and_homogenize() {
        let a3 = p("1 + 2*x + 1*x*y + 2*y");
        // y^1 * A_3(x, 1/y)
        assert_eq!(a3.reflect(Var::Y, 1).unwrap(), p("2 + 1*x + 2*x*y + 1*y"));
        assert!(a3.reflect(Var::Y, 0).is_err());
        let h = x().homogenize(Var::X, Var::X1, 2).unwrap();
        assert_eq!(h, MultiPoly::monomial(1, &[(Var::X, 1), (Var::X1, 1)]));
    }

    #[test]
    fn divide_by_one_plus() {
        let b1 = &MultiPoly::one() + &y();
        assert_eq!(b1.div_one_plus(Var::Y).unwrap(), MultiPoly::one());
        let b3 = p("1 + 1*x^2*y + 2*y + 1*y^2");
        assert!(b3.div_one_plus(Var::Y).is_err());
        let prod = (&MultiPoly::one() + &y()) * p("3 + 2*x*y + 5*x^2*y^3");
        assert_eq!(prod.div_one_plus(Var::Y).unwrap(), p("3 + 2*x*y + 5*x^2*y^3"));
    }

    #[test]
    fn substitution_is_simultaneous() {
        let f = &x() + &(&y() * &y());
        let g = f.substitute(&[(Var::X, y()), (Var::Y, x())]);
        assert_eq!(g, &y() + &(&x() * &x()));
        assert_eq!(f.evaluate(Var::Y, &BigInt::from(3)), &x() + &MultiPoly::constant(9));
    }
}
