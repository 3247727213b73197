//! q-integers, q-factorials, q-binomials and q-multinomials, plus their
//! ordinary integer counterparts.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::poly::MultiPoly;
use super::var::Var;
use crate::error::{invalid, Error, Result};

/// Which q-number to build.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QNumber {
    Factorial(usize),
    Binomial(usize, usize),
    Multinomial(usize, Vec<usize>),
}

pub fn q_number(kind: &QNumber) -> Result<MultiPoly> {
    match kind {
        QNumber::Factorial(n) => Ok(q_factorial(*n)),
        QNumber::Binomial(n, k) => q_binomial(*n, *k),
        QNumber::Multinomial(n, parts) => q_multinomial(*n, parts),
    }
}

// Dense coefficient vectors in q, lowest degree first.
type Dense = Vec<BigInt>;

fn dense_q_integer(i: usize) -> Dense {
    vec![BigInt::one(); i.max(1)]
}

fn dense_mul(a: &Dense, b: &Dense) -> Dense {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            out[i + j] += ai * bj;
        }
    }
    out
}

fn trim(mut a: Dense) -> Dense {
    while a.len() > 1 && a.last().is_some_and(Zero::is_zero) {
        a.pop();
    }
    a
}

/// Exact long division; any remainder is reported.
fn dense_div_exact(num: &Dense, den: &Dense) -> Result<Dense> {
    let num = trim(num.clone());
    let den = trim(den.clone());
    let lead = den.last().cloned().unwrap_or_default();
    if lead.is_zero() {
        return invalid("division by the zero polynomial");
    }
    if num.len() < den.len() {
        return if num.iter().all(Zero::is_zero) {
            Ok(vec![BigInt::zero()])
        } else {
            Err(Error::Inconsistency("q-division leaves a remainder".into()))
        };
    }
    let mut rem = num;
    let qlen = rem.len() - den.len() + 1;
    let mut quot = vec![BigInt::zero(); qlen];
    for k in (0..qlen).rev() {
        let top = &rem[k + den.len() - 1];
        if top.is_zero() {
            continue;
        }
        if !(top % &lead).is_zero() {
            return Err(Error::Inconsistency("q-division is not integral".into()));
        }
        let c = top / &lead;
        for (j, dj) in den.iter().enumerate() {
            rem[k + j] -= &c * dj;
        }
        quot[k] = c;
    }
    if rem.iter().any(|c| !c.is_zero()) {
        return Err(Error::Inconsistency("q-division leaves a remainder".into()));
    }
    Ok(quot)
}

fn dense_factorial(n: usize) -> Dense {
    (1..=n).fold(vec![BigInt::one()], |acc, i| dense_mul(&acc, &dense_q_integer(i)))
}

fn to_poly(d: &Dense) -> MultiPoly {
    MultiPoly::univariate(Var::Q, d)
}

/// `[i]_q = 1 + q + ... + q^{i-1}`.
pub fn q_integer(i: usize) -> MultiPoly {
    if i == 0 {
        return MultiPoly::zero();
    }
    to_poly(&dense_q_integer(i))
}

/// `n!_q = [1]_q [2]_q ... [n]_q`.
pub fn q_factorial(n: usize) -> MultiPoly {
    to_poly(&dense_factorial(n))
}

pub fn q_binomial(n: usize, k: usize) -> Result<MultiPoly> {
    if k > n {
        return invalid(format!("q-binomial needs 0 <= k <= n, got n={n}, k={k}"));
    }
    q_multinomial(n, &[k, n - k])
}

/// `n!_q / (λ_1!_q ... λ_l!_q)`. Parts must be positive and sum to `n`;
/// zero parts are tolerated only through [`q_binomial`].
pub fn q_multinomial(n: usize, parts: &[usize]) -> Result<MultiPoly> {
    if parts.iter().sum::<usize>() != n {
        return invalid(format!("composition {parts:?} does not sum to {n}"));
    }
    let den = parts.iter().fold(vec![BigInt::one()], |acc, &p| dense_mul(&acc, &dense_factorial(p)));
    let quot = dense_div_exact(&dense_factorial(n), &den)?;
    Ok(to_poly(&quot))
}

/// Validates a composition (positive parts) before forming the multinomial.
pub fn q_multinomial_composition(n: usize, parts: &[usize]) -> Result<MultiPoly> {
    if parts.is_empty() || parts.contains(&0) {
        return invalid(format!("malformed composition {parts:?}"));
    }
    q_multinomial(n, parts)
}

pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

pub fn multinomial(n: usize, parts: &[usize]) -> BigInt {
    debug_assert_eq!(parts.iter().sum::<usize>(), n);
    parts.iter().fold(factorial(n), |acc, &p| acc / factorial(p))
}
