//! Brute-force results checked against independent, deliberately naive
//! reimplementations and against values printed in the literature.

use desparity::exactalg::{qnum, MultiPoly, Var};
use desparity::gamma::{count_table, TableKind};
use desparity::perm::{distribution, euler_number, FamilyId, PlainPerms};
use desparity::trees::andre_tables;

fn p(s: &str) -> MultiPoly {
    s.parse().unwrap()
}

/// All permutations of 1..=n by recursive insertion.
fn perms(n: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for w in perms(n - 1) {
        for pos in 0..=w.len() {
            let mut v = w.clone();
            v.insert(pos, n);
            out.push(v);
        }
    }
    out
}

fn signed(n: u32) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    for w in perms(n) {
        for mask in 0..1u32 << n {
            out.push(
                w.iter().enumerate().map(|(i, &v)| if mask >> i & 1 == 1 { -(v as i64) } else { v as i64 }).collect(),
            );
        }
    }
    out
}

/// `(position, is_descent)` for every comparison of `word`, whose first
/// entry sits at position `first`.
fn comparisons(word: &[i64], first: usize) -> Vec<(usize, bool)> {
    (0..word.len() - 1).map(|k| (first + k, word[k] > word[k + 1])).collect()
}

fn naive_inv(word: &[i64]) -> u32 {
    let mut c = 0;
    for i in 0..word.len() {
        for j in i + 1..word.len() {
            c += u32::from(word[i] > word[j]);
        }
    }
    c
}

fn term(powers: &[(Var, usize)]) -> MultiPoly {
    let powers: Vec<(Var, u32)> = powers.iter().map(|&(v, e)| (v, e as u32)).collect();
    MultiPoly::monomial(1, &powers)
}

fn count(cmp: &[(usize, bool)], parity: usize, descent: bool) -> usize {
    cmp.iter().filter(|&&(i, d)| i % 2 == parity && d == descent).count()
}

fn naive_plain(n: u32, family: FamilyId) -> MultiPoly {
    let mut total = MultiPoly::zero();
    for w in perms(n) {
        let w: Vec<i64> = w.into_iter().map(i64::from).collect();
        let cmp = comparisons(&w, 1);
        let inv = naive_inv(&w) as usize;
        let (d0, d1, a0, a1) =
            (count(&cmp, 0, true), count(&cmp, 1, true), count(&cmp, 0, false), count(&cmp, 1, false));
        let t = match family {
            FamilyId::A => term(&[(Var::X, d1), (Var::Y, d0), (Var::Q, inv)]),
            FamilyId::AHat => term(&[(Var::X, d1), (Var::Y, a0), (Var::Q, inv)]),
            FamilyId::PA => term(&[(Var::X0, a0), (Var::X1, a1), (Var::Y0, d0), (Var::Y1, d1), (Var::Q, inv)]),
            FamilyId::AltA => term(&[(Var::X, d1 + a0)]),
            FamilyId::E => {
                let up_down = cmp.iter().all(|&(i, d)| d == (i % 2 == 0));
                if !up_down {
                    continue;
                }
                term(&[(Var::Q, inv)])
            }
            _ => unreachable!(),
        };
        total += &t;
    }
    total
}

fn naive_signed(n: u32, family: FamilyId) -> MultiPoly {
    let mut total = MultiPoly::zero();
    for w in signed(n) {
        let padded: Vec<i64> = std::iter::once(0).chain(w.iter().copied()).collect();
        let cmp = comparisons(&padded, 0);
        let (d0, d1, a0, a1) =
            (count(&cmp, 0, true), count(&cmp, 1, true), count(&cmp, 0, false), count(&cmp, 1, false));
        let t = match family {
            FamilyId::B => term(&[(Var::X, d1), (Var::Y, d0)]),
            FamilyId::BHat => term(&[(Var::X, d1), (Var::Y, a0)]),
            FamilyId::PB => term(&[(Var::X0, a0), (Var::X1, a1), (Var::Y0, d0), (Var::Y1, d1)]),
            FamilyId::BPlus if w[0] > 0 => term(&[(Var::X, d1), (Var::Y, d0)]),
            FamilyId::BMinus if w[0] < 0 => term(&[(Var::X, d1), (Var::Y, d0)]),
            FamilyId::AltB => term(&[(Var::X, d1 + a0)]),
            _ => continue,
        };
        total += &t;
    }
    total
}

#[test]
fn plain_families_match_naive_enumeration() {
    for n in 1..=6 {
        for family in [FamilyId::A, FamilyId::AHat, FamilyId::PA, FamilyId::AltA, FamilyId::E] {
            assert_eq!(distribution(n as usize, family).unwrap(), naive_plain(n, family), "{family} n={n}");
        }
    }
}

#[test]
fn signed_families_match_naive_enumeration() {
    for n in 1..=5 {
        for family in [FamilyId::B, FamilyId::BHat, FamilyId::PB, FamilyId::BPlus, FamilyId::BMinus, FamilyId::AltB] {
            assert_eq!(distribution(n as usize, family).unwrap(), naive_signed(n, family), "{family} n={n}");
        }
    }
}

#[test]
fn scaled_families() {
    let one_y = p("1 + 1*y");
    for n in 1..=6usize {
        let a = distribution(n, FamilyId::A).unwrap().at_q_one();
        let tilde = distribution(n, FamilyId::ATilde).unwrap();
        assert_eq!(tilde, if n % 2 == 0 { &a * &one_y } else { a });
    }
    for n in 1..=5usize {
        let b = distribution(n, FamilyId::BHat).unwrap();
        let bar = distribution(n, FamilyId::BBar).unwrap();
        assert_eq!(if n % 2 == 1 { &bar * &one_y } else { bar }, b);
    }
}

#[test]
fn small_values_from_the_text() {
    assert_eq!(distribution(2, FamilyId::A).unwrap(), p("1 + 1*q*x"));
    assert_eq!(distribution(3, FamilyId::ATilde).unwrap(), p("1 + 2*x + 2*y + 1*x*y"));
    assert_eq!(distribution(2, FamilyId::BTilde).unwrap(), p("1 + 3*x + 3*y + 1*x*y"));
    assert_eq!(distribution(2, FamilyId::BBar).unwrap(), p("3 + 1*x + 1*y + 3*x*y"));
}

fn eulerian_row(n: usize) -> Vec<u64> {
    // A(n,k) = (k+1)A(n-1,k) + (n-k)A(n-1,k-1)
    let mut row = vec![1u64];
    for m in 2..=n {
        let mut next = vec![0u64; m];
        for k in 0..m {
            let keep = if k < row.len() { (k as u64 + 1) * row[k] } else { 0 };
            let shift = if k > 0 { (m - k) as u64 * row[k - 1] } else { 0 };
            next[k] = keep + shift;
        }
        row = next;
    }
    row
}

fn type_b_eulerian_row(n: usize) -> Vec<u64> {
    // B(n,k) = (2k+1)B(n-1,k) + (2n-2k+1)B(n-1,k-1)
    let mut row = vec![1u64];
    for m in 1..=n {
        let mut next = vec![0u64; m + 1];
        for k in 0..=m {
            let keep = if k < row.len() { (2 * k as u64 + 1) * row[k] } else { 0 };
            let shift = if k > 0 { (2 * (m - k) as u64 + 1) * row[k - 1] } else { 0 };
            next[k] = keep + shift;
        }
        row = next;
    }
    row
}

fn coefficients(poly: &MultiPoly) -> Vec<u64> {
    (0..=poly.degree_in(Var::X)).map(|k| u64::try_from(poly.coeff_of(Var::X, k).constant_term()).unwrap()).collect()
}

#[test]
fn eulerian_numbers() {
    assert_eq!(eulerian_row(4), [1, 11, 11, 1]);
    assert_eq!(type_b_eulerian_row(3), [1, 23, 23, 1]);
    for n in 1..=7 {
        let diag = distribution(n, FamilyId::A).unwrap().at_q_one().rename(Var::Y, Var::X);
        assert_eq!(coefficients(&diag), eulerian_row(n), "n={n}");
    }
    for n in 1..=6 {
        let diag = distribution(n, FamilyId::B).unwrap().rename(Var::Y, Var::X);
        assert_eq!(coefficients(&diag), type_b_eulerian_row(n), "n={n}");
    }
}

#[test]
fn euler_numbers() {
    let expected = [1u128, 1, 1, 2, 5, 16, 61, 272, 1385, 7936];
    for (n, &e) in expected.iter().enumerate() {
        assert_eq!(euler_number(n), e);
    }
    for (n, &e) in expected.iter().enumerate().take(9).skip(1) {
        assert_eq!(distribution(n, FamilyId::E).unwrap().at_q_one(), MultiPoly::constant(e as u64));
    }
}

fn q_binomial_by_pascal(n: usize, k: usize) -> MultiPoly {
    // [n,k] = [n-1,k-1] + q^k [n-1,k]
    if k == 0 || k == n {
        return MultiPoly::one();
    }
    if k > n {
        return MultiPoly::zero();
    }
    let shifted = &MultiPoly::monomial(1, &[(Var::Q, k as u32)]) * &q_binomial_by_pascal(n - 1, k);
    &q_binomial_by_pascal(n - 1, k - 1) + &shifted
}

#[test]
fn q_binomials() {
    assert_eq!(qnum::q_binomial(4, 2).unwrap(), p("1 + 1*q + 2*q^2 + 1*q^3 + 1*q^4"));
    for n in 0..=8 {
        for k in 0..=n {
            assert_eq!(qnum::q_binomial(n, k).unwrap(), q_binomial_by_pascal(n, k), "[{n},{k}]");
        }
    }
}

/// André permutations read directly off the prose: no double descents,
/// final ascent, and at every interior valley the largest letter of the
/// maximal run of larger letters on the left is smaller than the one on the
/// right.
fn naive_andre(w: &[u32]) -> bool {
    let n = w.len();
    if n >= 2 && w[n - 2] > w[n - 1] {
        return false;
    }
    for i in 1..n.saturating_sub(1) {
        if w[i - 1] > w[i] && w[i] > w[i + 1] {
            return false;
        }
        if w[i - 1] > w[i] && w[i] < w[i + 1] {
            let left = w[..i].iter().rev().take_while(|&&v| v > w[i]).max();
            let right = w[i + 1..].iter().take_while(|&&v| v > w[i]).max();
            if left >= right {
                return false;
            }
        }
    }
    true
}

#[test]
fn andre_tables_match_naive_classification() {
    for n in 1..=7usize {
        let mut d = vec![0u64; n / 2 + 1];
        for w in PlainPerms::new(n) {
            if naive_andre(w.values()) {
                d[w.values().windows(2).filter(|p| p[0] > p[1]).count()] += 1;
            }
        }
        assert_eq!(andre_tables(n).unwrap().d, d, "n={n}");
    }
    assert_eq!(andre_tables(5).unwrap().d, [1, 11, 4]);
    assert_eq!(andre_tables(6).unwrap().d, [1, 26, 34, 0]);
}

#[test]
fn coefficient_tables_from_their_definitions() {
    // a(n,j): no even descents, j odd descents
    for n in 1..=6u32 {
        let mut a = vec![0i64; n as usize / 2 + 1];
        let mut g = vec![0i64; n as usize / 2 + 1];
        for w in perms(n) {
            let w: Vec<i64> = w.into_iter().map(i64::from).collect();
            let cmp = comparisons(&w, 1);
            if count(&cmp, 0, true) == 0 {
                a[count(&cmp, 1, true)] += 1;
            }
            let padded: Vec<i64> = std::iter::once(0).chain(w.iter().copied()).collect();
            let peaks = (1..w.len()).filter(|&i| padded[i - 1] < padded[i] && padded[i] > padded[i + 1]).count();
            g[peaks] += 1;
        }
        let as_i64 = |kind| -> Vec<i64> {
            count_table(n as usize, kind).unwrap().values.iter().map(|v| i64::try_from(v).unwrap()).collect()
        };
        assert_eq!(as_i64(TableKind::A), a, "a n={n}");
        assert_eq!(as_i64(TableKind::G), g, "g n={n}");
    }
}
