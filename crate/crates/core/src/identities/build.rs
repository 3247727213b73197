//! Left and right sides of every catalog identity.

use num_bigint::BigInt;

use super::{lookup, Shape};
use crate::error::{invalid, Result};
use crate::exactalg::report::compare_each;
use crate::exactalg::{qnum, IdentityReport, Mismatch, MultiPoly, QMode, QSeries, Var};
use crate::perm::{Distributions, FamilyId};
use crate::sieve::{
    alpha_a, alpha_a_brute_table, alpha_b_plus, alpha_b_plus_brute_table, block_series, sieve_poly, stirling2,
    AlphaMode, BlockKind, PositionSubset, SieveFamily,
};

fn v(var: Var) -> MultiPoly {
    MultiPoly::var(var)
}

fn c(k: i64) -> MultiPoly {
    MultiPoly::constant(k)
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Parity {
    All,
    Even,
    Odd,
}

impl Parity {
    fn keeps(self, n: usize) -> bool {
        match self {
            Parity::All => true,
            Parity::Even => n.is_multiple_of(2),
            Parity::Odd => n % 2 == 1,
        }
    }
}

/// Left side `c_0 + Σ_{n≥1} f(n) t^n/n!_q` with `f(n)` derived from `family`.
fn family_series(
    ctx: &Distributions,
    family: FamilyId,
    order: usize,
    mode: QMode,
    parity: Parity,
    c0: MultiPoly,
    f: impl Fn(MultiPoly) -> MultiPoly,
) -> Result<QSeries> {
    let mut c0 = Some(c0);
    QSeries::try_from_fn(mode, order, |n| {
        if n == 0 {
            return Ok(c0.take().unwrap());
        }
        if !parity.keeps(n) {
            return Ok(MultiPoly::zero());
        }
        Ok(f(ctx.get(family, n)?))
    })
}

fn sieve_series(order: usize, mode: QMode, parity: Parity, f: impl Fn(usize) -> Result<MultiPoly>) -> Result<QSeries> {
    QSeries::try_from_fn(mode, order, |n| if n == 0 || !parity.keeps(n) { Ok(MultiPoly::zero()) } else { f(n) })
}

fn map_series(s: &QSeries, f: impl Fn(&MultiPoly) -> MultiPoly) -> QSeries {
    QSeries::new(s.mode(), s.coeffs().iter().map(f).collect())
}

/// `Σ_{k≥1} α^{k-1} t^{2k}/(2k)!_q`.
fn shifted_even(mode: QMode, order: usize, alpha: &MultiPoly) -> QSeries {
    QSeries::from_fn(
        mode,
        order,
        |n| {
            if n >= 2 && n % 2 == 0 {
                alpha.pow((n / 2 - 1) as u32)
            } else {
                MultiPoly::zero()
            }
        },
    )
}

/// The four-variable Carlitz-Scoville right side as (numerator, denominator).
fn carlitz_scoville(mode: QMode, order: usize) -> (QSeries, QSeries) {
    let alpha = &(v(Var::Y0) - v(Var::X0)) * &(v(Var::Y1) - v(Var::X1));
    let even = shifted_even(mode, order, &alpha);
    let odd = QSeries::odd(mode, order, &MultiPoly::one(), &alpha);
    let lead = v(Var::X1) + v(Var::Y1);
    let den_lead = &v(Var::X0) * &v(Var::Y1) + &v(Var::X1) * &v(Var::Y0);
    let num = &even.scale(&lead) + &odd;
    let den = &QSeries::one(mode, order) - &even.scale(&den_lead);
    (num, den)
}

fn specialize(pair: &(QSeries, QSeries), subs: &[(Var, MultiPoly)]) -> (QSeries, QSeries) {
    (map_series(&pair.0, |p| p.substitute(subs)), map_series(&pair.1, |p| p.substitute(subs)))
}

/// Type B numerator/denominator shape shared by the even-length theorems:
/// `(c1 cosh(2at) + α cosh(at) - c2) / (c2 - c1 cosh(2at))`.
fn type_b_even(mode: QMode, order: usize, alpha: &MultiPoly, c1: &MultiPoly, c2: &MultiPoly) -> (QSeries, QSeries) {
    let one = QSeries::one(mode, order);
    let cosh2 = QSeries::even(mode, order, &alpha.scale(&BigInt::from(4)));
    let cosh1 = QSeries::even(mode, order, alpha);
    let num = &(&cosh2.scale(c1) + &cosh1.scale(alpha)) - &one.scale(c2);
    let den = &one.scale(c2) - &cosh2.scale(c1);
    (num, den)
}

fn type_b_odd(
    mode: QMode,
    order: usize,
    alpha: &MultiPoly,
    c1: &MultiPoly,
    c2: &MultiPoly,
    lead: &MultiPoly,
) -> (QSeries, QSeries) {
    let (_, den) = type_b_even(mode, order, alpha, c1, c2);
    (QSeries::odd(mode, order, lead, alpha), den)
}

fn alpha_xy() -> MultiPoly {
    &(c(1) - v(Var::X)) * &(c(1) - v(Var::Y))
}

/// `Σ_{S ⊆ odd positions of [n-1]} weight(S) x^{|S|}`.
fn odd_subset_sum(n: usize, weight: impl Fn(&PositionSubset) -> BigInt) -> MultiPoly {
    let mut out = MultiPoly::zero();
    for s in PositionSubset::all(n).filter(|s| s.all_odd()) {
        out += &MultiPoly::monomial(weight(&s), &[(Var::X, s.len() as u32)]);
    }
    out
}

fn two_pow(n: usize) -> BigInt {
    BigInt::from(1) << n
}

pub(crate) fn series_sides(
    id: &str,
    order: usize,
    mode: QMode,
    ctx: &Distributions,
) -> Result<(QSeries, QSeries, QSeries)> {
    let one = QSeries::one(mode, order);
    let (x, y) = (v(Var::X), v(Var::Y));
    let fam = |family, parity, c0: MultiPoly, f: &dyn Fn(MultiPoly) -> MultiPoly| {
        family_series(ctx, family, order, mode, parity, c0, f)
    };
    let same = |p: MultiPoly| p;
    let diagonal = |p: MultiPoly| p.rename(Var::Y, Var::X);
    Ok(match id {
        "CS_Q" => {
            let (num, den) = carlitz_scoville(mode, order);
            (fam(FamilyId::PA, Parity::All, MultiPoly::zero(), &same)?, num, den)
        }
        "ANDRE_Q" => {
            let (num, den) = specialize(
                &carlitz_scoville(mode, order),
                &[(Var::X0, c(0)), (Var::X1, c(1)), (Var::Y0, c(1)), (Var::Y1, c(0))],
            );
            // the constant term 1 of the left side moves the denominator into the numerator
            (fam(FamilyId::E, Parity::All, MultiPoly::one(), &same)?, &num + &den, den)
        }
        "PZ1" => {
            let (num, den) = specialize(
                &carlitz_scoville(mode, order),
                &[(Var::X0, c(1)), (Var::X1, c(1)), (Var::Y0, y.clone()), (Var::Y1, x.clone())],
            );
            (fam(FamilyId::A, Parity::All, MultiPoly::zero(), &same)?, num, den)
        }
        "PZ2" => {
            let (num, den) = specialize(
                &carlitz_scoville(mode, order),
                &[(Var::X0, y.clone()), (Var::X1, c(1)), (Var::Y0, c(1)), (Var::Y1, x.clone())],
            );
            (fam(FamilyId::AHat, Parity::All, MultiPoly::zero(), &same)?, num, den)
        }
        "STANLEY_Q" => {
            let lhs = fam(FamilyId::A, Parity::All, MultiPoly::one(), &|p| &x * &diagonal(p))?;
            let num = one.scale(&(c(1) - x.clone()));
            let den = &one - &QSeries::exp(mode, order, &(c(1) - x.clone())).scale(&x);
            (lhs, num, den)
        }
        "CF" => {
            let subs = [(Var::X0, y.clone()), (Var::X1, y.clone()), (Var::Y0, x.clone()), (Var::Y1, x.clone())];
            let lhs = fam(FamilyId::PA, Parity::All, MultiPoly::zero(), &|p| p.substitute(&subs))?;
            let ex = QSeries::exp(mode, order, &x);
            let ey = QSeries::exp(mode, order, &y);
            let num = &ex - &ey;
            let den = &ey.scale(&x) - &ex.scale(&y);
            (lhs, num, den)
        }
        "CHEBIKIN" => {
            let lhs = fam(FamilyId::AHat, Parity::All, MultiPoly::one(), &|p| &x * &diagonal(p))?;
            let u = c(1) - x.clone();
            let cos = QSeries::cos(mode, order, &u);
            let sin = QSeries::sin(mode, order, &u);
            let num = cos.scale(&u);
            let den = &(&cos - &one.scale(&x)) - &sin.scale(&x);
            (lhs, num, den)
        }
        "B1" | "B2" => {
            let alpha = alpha_xy();
            let (c1, c2) = (&x + &y, c(1) + &x * &y);
            if id == "B1" {
                let (num, den) = type_b_even(mode, order, &alpha, &c1, &c2);
                (fam(FamilyId::B, Parity::Even, MultiPoly::zero(), &same)?, num, den)
            } else {
                let lead = &(&y * &y - c(1)) * &(&x - &c(1));
                let (num, den) = type_b_odd(mode, order, &alpha, &c1, &c2, &lead);
                (fam(FamilyId::B, Parity::Odd, MultiPoly::zero(), &same)?, num, den)
            }
        }
        "Z1" | "Z2" => {
            let beta = -alpha_xy();
            let (c1, c2) = (c(1) + &x * &y, &x + &y);
            if id == "Z1" {
                let (num, den) = type_b_even(mode, order, &beta, &c1, &c2);
                (fam(FamilyId::BHat, Parity::Even, MultiPoly::zero(), &same)?, num, den)
            } else {
                let lead = &(c(1) + y.clone()) * &beta;
                let (num, den) = type_b_odd(mode, order, &beta, &c1, &c2, &lead);
                (fam(FamilyId::BHat, Parity::Odd, MultiPoly::zero(), &same)?, num, den)
            }
        }
        "TB3E" | "TB3O" => {
            let (x0, x1, y0, y1) = (v(Var::X0), v(Var::X1), v(Var::Y0), v(Var::Y1));
            let alpha = &(&y0 - &x0) * &(&y1 - &x1);
            let c1 = &(&x0 * &y1) + &(&x1 * &y0);
            let c2 = &(&x0 * &x1) + &(&y0 * &y1);
            if id == "TB3E" {
                let (num, den) = type_b_even(mode, order, &alpha, &c1, &c2);
                (fam(FamilyId::PB, Parity::Even, MultiPoly::zero(), &same)?, num, den)
            } else {
                let lead = &(&(&y0 * &y0) - &(&x0 * &x0)) * &(&y1 - &x1);
                let (num, den) = type_b_odd(mode, order, &alpha, &c1, &c2, &lead);
                (fam(FamilyId::PB, Parity::Odd, MultiPoly::zero(), &same)?, num, den)
            }
        }
        "TYPEB_EULER" => {
            let lhs = fam(FamilyId::B, Parity::All, MultiPoly::one(), &diagonal)?;
            let xm1 = &x - &c(1);
            let num = QSeries::exp(mode, order, &xm1).scale(&xm1);
            let den = &one.scale(&x) - &QSeries::exp(mode, order, &xm1.scale(&BigInt::from(2)));
            (lhs, num, den)
        }
        "P6" => {
            let lhs = fam(FamilyId::BHat, Parity::All, MultiPoly::one(), &diagonal)?;
            let u = c(1) - x.clone();
            let num = one.scale(&(&x - &c(1)));
            let den = &QSeries::cos(mode, order, &u).scale(&(&x - &c(1)))
                + &QSeries::sin(mode, order, &u).scale(&(&x + &c(1)));
            (lhs, num, den)
        }
        "KEY2C" | "KEY2B_PROOF" | "KEY2B_PRINTED" => {
            let (kind, parity) = match id {
                "KEY2C" => (BlockKind::C, Parity::Odd),
                "KEY2B_PROOF" => (BlockKind::BProof, Parity::Even),
                _ => (BlockKind::BPrinted, Parity::Even),
            };
            let lhs =
                sieve_series(order, mode, parity, |n| Ok(sieve_poly(n, SieveFamily::A)?.substitute_zero(Var::Y)))?;
            let (num, den) = block_series(kind, order, mode)?;
            (lhs, num, den)
        }
        "KEY3" => {
            // even part B/(1-yB) plus odd part C/(1-yB) over the common denominator
            let lhs = sieve_series(order, mode, Parity::All, |n| sieve_poly(n, SieveFamily::A))?;
            let (nb, db) = block_series(BlockKind::BProof, order, mode)?;
            let den = &db - &nb.scale(&y);
            let num = &nb + &QSeries::sinh(mode, order);
            (lhs, num, den)
        }
        "GH" | "FL" => {
            // the second block enters with a factor y; both sides are y-free
            // otherwise, so one comparison checks both lemmas
            let (first, second, parity) = if id == "GH" {
                (BlockKind::G, BlockKind::H, Parity::Even)
            } else {
                (BlockKind::F, BlockKind::L, Parity::Odd)
            };
            let lhs = sieve_series(order, mode, parity, |n| {
                let multinomial_weight = |s: &PositionSubset| qnum::multinomial(n, s.code().parts()) * two_pow(n);
                let b_plus_weight = |s: &PositionSubset| alpha_b_plus(s, AlphaMode::Closed);
                Ok(if id == "GH" {
                    let g = sieve_poly(n, SieveFamily::BPlus)?.substitute_zero(Var::Y);
                    &g + &(&y * &odd_subset_sum(n, multinomial_weight))
                } else {
                    &odd_subset_sum(n, multinomial_weight) + &(&y * &odd_subset_sum(n, b_plus_weight))
                })
            })?;
            let (n1, d1) = block_series(first, order, mode)?;
            let (n2, d2) = block_series(second, order, mode)?;
            debug_assert_eq!(d1, d2);
            (lhs, &n1 + &n2.scale(&y), d1)
        }
        "GFQ" => {
            // even part G/(1-yH), odd part L + yFG/(1-yH), over D(D - yN_H)
            let lhs = sieve_series(order, mode, Parity::All, |n| sieve_poly(n, SieveFamily::BPlus))?;
            let (ng, d) = block_series(BlockKind::G, order, mode)?;
            let (nh, _) = block_series(BlockKind::H, order, mode)?;
            let (nf, _) = block_series(BlockKind::F, order, mode)?;
            let (nl, _) = block_series(BlockKind::L, order, mode)?;
            let dq = &d - &nh.scale(&y);
            let num = &(&(&ng * &d) + &(&nl * &dq)) + &(&nf * &ng).scale(&y);
            (lhs, num, &d * &dq)
        }
        "BP12" | "OBP13" | "BP11" | "OBP14" => {
            let alpha = alpha_xy();
            let cosh_a = QSeries::even(mode, order, &alpha);
            let sinh_a = QSeries::odd(mode, order, &MultiPoly::one(), &alpha);
            let cosh_2a = QSeries::even(mode, order, &alpha.scale(&BigInt::from(4)));
            let den = &one.scale(&(c(1) + &x * &y)) - &cosh_2a.scale(&(&x + &y));
            let cm1 = &cosh_a - &one;
            let xm1 = &x - &c(1);
            let (family, parity, num) = match id {
                "BP12" => (
                    FamilyId::BPlus,
                    Parity::Even,
                    &cm1 * &(&cosh_a.scale(&x.scale(&BigInt::from(2))) + &one.scale(&(&x + &c(1)))),
                ),
                "OBP13" => (
                    FamilyId::BPlus,
                    Parity::Odd,
                    &sinh_a.scale(&xm1) * &(&cosh_a.scale(&y.scale(&BigInt::from(2))) - &one.scale(&(&y + &c(1)))),
                ),
                "BP11" => (
                    FamilyId::BMinus,
                    Parity::Even,
                    (&cm1 * &(&cosh_a.scale_int(2) + &one.scale(&(&x + &c(1))))).scale(&y),
                ),
                _ => (
                    FamilyId::BMinus,
                    Parity::Odd,
                    (&sinh_a.scale(&xm1) * &(&one.scale(&(&y + &c(1))) - &cosh_a.scale_int(2))).scale(&y),
                ),
            };
            (fam(family, parity, MultiPoly::zero(), &same)?, num, den)
        }
        other => return invalid(format!("{other} has no series form")),
    })
}

/// Right side of a series identity as (numerator, denominator).
pub fn rhs_series(id: &str, order: usize, mode: QMode, ctx: &Distributions) -> Result<(QSeries, QSeries)> {
    let (_, num, den) = super::sides(id, order, mode, ctx)?;
    Ok((num, den))
}

pub fn lhs_series(id: &str, order: usize, mode: QMode, ctx: &Distributions) -> Result<QSeries> {
    Ok(super::sides(id, order, mode, ctx)?.0)
}

fn floor_half(n: usize) -> u32 {
    (n / 2) as u32
}

/// Sends `x^a y^b` to `y1^a x1^(h1-a) y0^b x0^(h0-b)`.
fn four_variable(p: &MultiPoly, h1: u32, h0: u32) -> Result<MultiPoly> {
    p.rename(Var::X, Var::Y1).rename(Var::Y, Var::Y0).homogenize(Var::Y1, Var::X1, h1)?.homogenize(Var::Y0, Var::X0, h0)
}

/// `Σ c x^a y^b ...` ↦ `Σ c x^a (1+x)^(hx-a) y^b (1+y)^(hy-b) ...`.
fn sieve_expand(p: &MultiPoly, hx: u32, hy: u32) -> MultiPoly {
    let one_x = c(1) + v(Var::X);
    let one_y = c(1) + v(Var::Y);
    p.expand_monomials(|m| {
        let (a, b) = (m.exponent(Var::X), m.exponent(Var::Y));
        let base = MultiPoly::term(1, *m);
        &(&base * &one_x.pow(hx - a)) * &one_y.pow(hy - b)
    })
}

pub(crate) fn per_n(id: &str, order: usize, mode: QMode, ctx: &Distributions) -> Result<IdentityReport> {
    debug_assert_eq!(lookup(id)?.shape, Shape::PerN);
    let range = 1..=order;
    match id {
        "TILDE_REL" => compare_each(id, mode, range, |n| {
            Ok((ctx.get(FamilyId::AHat, n)?, ctx.get(FamilyId::A, n)?.reflect(Var::Y, ((n - 1) / 2) as u32)?))
        }),
        "PREL" => compare_each(id, mode, range, |n| {
            let a = ctx.get(FamilyId::A, n)?;
            Ok((ctx.get(FamilyId::PA, n)?, four_variable(&a, floor_half(n), ((n - 1) / 2) as u32)?))
        }),
        "BB_REL" => compare_each(id, mode, range, |n| {
            Ok((ctx.get(FamilyId::BHat, n)?, ctx.get(FamilyId::B, n)?.reflect(Var::Y, n.div_ceil(2) as u32)?))
        }),
        "PBB_REL" => compare_each(id, mode, range, |n| {
            let b = ctx.get(FamilyId::B, n)?;
            Ok((ctx.get(FamilyId::PB, n)?, four_variable(&b, floor_half(n), n.div_ceil(2) as u32)?))
        }),
        "PA_LINK" => compare_each(id, mode, range, |n| {
            let a = ctx.get(FamilyId::A, n)?;
            Ok((sieve_poly(n, SieveFamily::A)?, sieve_expand(&a, floor_half(n), ((n - 1) / 2) as u32)))
        }),
        "BQLINK" => compare_each(id, mode, range, |n| {
            let b = ctx.get(FamilyId::BPlus, n)?;
            Ok((sieve_poly(n, SieveFamily::BPlus)?, sieve_expand(&b, floor_half(n), ((n - 1) / 2) as u32)))
        }),
        "RHOLINK" => compare_each(id, mode, range, |n| {
            let b = ctx.get(FamilyId::BPlus, n)?;
            Ok((
                ctx.get(FamilyId::BMinus, n)?,
                b.reflect(Var::X, floor_half(n))?.reflect(Var::Y, n.div_ceil(2) as u32)?,
            ))
        }),
        "FROBENIUS" => compare_each(id, mode, range, |n| {
            let eulerian = ctx.get(FamilyId::A, n)?.at_q_one().rename(Var::Y, Var::X);
            let one_minus_x = c(1) - v(Var::X);
            let mut rhs = MultiPoly::zero();
            for k in 1..=n {
                let coeff = qnum::factorial(k) * stirling2(n, k);
                let term = &MultiPoly::monomial(coeff, &[(Var::X, (k - 1) as u32)]) * &one_minus_x.pow((n - k) as u32);
                rhs += &term;
            }
            Ok((eulerian, rhs))
        }),
        "KEY0" => {
            for n in range {
                let brute = alpha_a_brute_table(n);
                for s in PositionSubset::all(n) {
                    let closed = alpha_a(&s, AlphaMode::Closed)?;
                    let lhs = mode.apply(brute[s.mask() as usize].clone());
                    let rhs = mode.apply(closed);
                    if lhs != rhs {
                        return Ok(IdentityReport::new(id, order, mode, Some(Mismatch { n, lhs, rhs })));
                    }
                }
            }
            Ok(IdentityReport::new(id, order, mode, None))
        }
        "ALPHAB" => {
            for n in range {
                let brute = alpha_b_plus_brute_table(n);
                for s in PositionSubset::all(n) {
                    let closed = alpha_b_plus(&s, AlphaMode::Closed);
                    let found = &brute[s.mask() as usize];
                    if *found != closed {
                        let mismatch = Mismatch { n, lhs: found.clone().into(), rhs: closed.into() };
                        return Ok(IdentityReport::new(id, order, mode, Some(mismatch)));
                    }
                }
            }
            Ok(IdentityReport::new(id, order, mode, None))
        }
        other => invalid(format!("{other} is not a per-n identity")),
    }
}
