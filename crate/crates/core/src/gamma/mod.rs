//! Expansions of the symmetric bi-Eulerian families in the bases
//! `(x+y)^j (1+xy)^(m-j)` and `(x+y)^j (1+x+y+xy)^(m-j)`, the coefficient
//! tables they produce, and Process A.

mod checks;
mod process;
mod tables;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactalg::{qnum, MultiPoly, Var};

pub use checks::{verify_gamma, GammaCheck, GAMMA_CHECKS};
pub use process::{free_positions, process_a, valleys, Sign};
pub use tables::{count_table, csv_triangle, CountTable, TableKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Basis {
    /// `(x+y)^j (1+xy)^(m-j)`.
    Sym,
    /// `(x+y)^j (1+x+y+xy)^(m-j)`.
    Gamma,
}

impl Basis {
    pub fn name(self) -> &'static str {
        match self {
            Basis::Sym => "sym",
            Basis::Gamma => "gamma",
        }
    }

    /// The `j`-th basis element of half-degree `m`.
    pub fn element(self, m: usize, j: usize) -> MultiPoly {
        let (x, y) = (MultiPoly::var(Var::X), MultiPoly::var(Var::Y));
        let xy = &x * &y;
        let rest = match self {
            Basis::Sym => MultiPoly::one() + xy,
            Basis::Gamma => &(&(MultiPoly::one() + x.clone()) + &y) + &xy,
        };
        &(&x + &y).pow(j as u32) * &rest.pow((m - j) as u32)
    }

    /// `Σ_j c_j · element(m, j)`.
    pub fn combine(self, m: usize, coeffs: &[BigInt]) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (j, c) in coeffs.iter().enumerate() {
            if c.sign() != num_bigint::Sign::NoSign {
                out += &self.element(m, j).scale(c);
            }
        }
        out
    }
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Basis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sym" => Ok(Basis::Sym),
            "gamma" => Ok(Basis::Gamma),
            _ => Err(Error::InvalidArgument(format!("unknown basis `{s}`"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisExpansion {
    pub m: usize,
    pub basis: Basis,
    pub coeffs: Vec<BigInt>,
}

impl BasisExpansion {
    pub fn reexpand(&self) -> MultiPoly {
        self.basis.combine(self.m, &self.coeffs)
    }
}

/// Coefficients read off from `poly(x, 0)`, without the certificate.
pub(crate) fn extract(poly: &MultiPoly, m: usize, basis: Basis) -> Vec<BigInt> {
    let at_zero = poly.substitute_zero(Var::Y);
    let p: Vec<BigInt> =
        (0..=m).map(|k| at_zero.coeff_of(Var::X, k as u32).as_constant().unwrap_or_default()).collect();
    match basis {
        Basis::Sym => p,
        Basis::Gamma => {
            // x^k coefficient of Σ_j c_j x^j (1+x)^(m-j) is Σ_{j≤k} c_j C(m-j, k-j)
            let mut c: Vec<BigInt> = Vec::with_capacity(m + 1);
            for (k, pk) in p.iter().enumerate() {
                let known: BigInt = c.iter().enumerate().map(|(j, cj)| cj * qnum::binomial(m - j, k - j)).sum();
                c.push(pk - known);
            }
            c
        }
    }
}

/// Expands a polynomial in `x, y` in the chosen basis of half-degree `m`.
///
/// Fails with [`Error::NotRepresentable`] when re-expanding the extracted
/// coefficients does not give back `poly`.
pub fn expand(poly: &MultiPoly, m: usize, basis: Basis) -> Result<BasisExpansion> {
    if poly.variables().iter().any(|v| !matches!(v, Var::X | Var::Y)) {
        return Err(Error::InvalidArgument(format!("{poly} is not a polynomial in x and y")));
    }
    let expansion = BasisExpansion { m, basis, coeffs: extract(poly, m, basis) };
    let back = expansion.reexpand();
    if back != *poly {
        return Err(Error::NotRepresentable(format!(
            "{poly} is not a combination of the {basis} basis with m = {m} (nearest candidate {back})"
        )));
    }
    Ok(expansion)
}
