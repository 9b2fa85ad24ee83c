#![allow(dead_code)]

use num_traits::Zero;
use rand::Rng;
use topzeta::criterion::{assembled_contribution, ProofFacetFrame};
use topzeta::exactnum::Rational;

/// Residue at `s0`, zero when `s0` is not a pole; `None` for higher order.
pub fn residue_or_zero(f: &topzeta::FactoredRatFunc, s0: &Rational) -> Option<Rational> {
    match f.pole_order(s0) {
        0 => Some(Rational::zero()),
        1 => f.residue_simple(s0).ok(),
        _ => None,
    }
}

fn left_neighbor<R: Rng>(rng: &mut R, k: i64, l: i64, m: i64, n: i64) -> (i64, i64) {
    if k == 0 || rng.gen_bool(0.3) {
        return (k, l + rng.gen_range(1..=3));
    }
    for _ in 0..20 {
        let a = rng.gen_range(0..k);
        let b = l + rng.gen_range(1..=30);
        // strictly convex turn at (k, l)
        if (k - a) * (n - l) - (l - b) * (m - k) > 0 {
            return (a, b);
        }
    }
    (k, l + 1)
}

fn right_neighbor<R: Rng>(rng: &mut R, k: i64, l: i64, m: i64, n: i64) -> (i64, i64) {
    if n == 0 || rng.gen_bool(0.3) {
        return (m + rng.gen_range(1..=3), n);
    }
    for _ in 0..20 {
        let c = m + rng.gen_range(1..=30);
        let d = rng.gen_range(0..n);
        if (m - k) * (d - n) - (n - l) * (c - m) > 0 {
            return (c, d);
        }
    }
    (m + 1, n)
}

/// A random frame whose candidate is a simple pole of the three-term sum (or
/// cancels), with `k ≠ l`, `m ≠ n` and candidate `≠ −1`.
pub fn random_frame<R: Rng>(rng: &mut R, max: i64) -> ProofFacetFrame {
    loop {
        let k = if rng.gen_bool(0.25) { 0 } else { rng.gen_range(0..max) };
        let m = if rng.gen_bool(0.2) { k + 1 } else { rng.gen_range(k + 1..=max) };
        let n = if rng.gen_bool(0.25) { 0 } else { rng.gen_range(0..max) };
        let l = if rng.gen_bool(0.2) { n + 1 } else { rng.gen_range(n + 1..=max) };
        let left = left_neighbor(rng, k, l, m, n);
        let right = right_neighbor(rng, k, l, m, n);
        let Ok(f) = ProofFacetFrame::new((k, l), (m, n), left, right) else {
            continue;
        };
        if k == l || m == n || f.pole_n() == f.pole_nu() {
            continue;
        }
        if assembled_contribution(&f).pole_order(&f.candidate()) > 1 {
            continue;
        }
        return f;
    }
}
