//! Fixed-point evaluation of `cos(2πj/m)` with explicit error bounds.

use std::cell::RefCell;
use std::collections::HashMap;
use std::rc::Rc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Values `round(cos(2πj/m) · 2^prec)` for `j < m`, each within `err`
/// units of the true value.
pub(crate) struct CosTable {
    pub values: Vec<BigInt>,
    pub err: BigInt,
}

thread_local! {
    static TABLES: RefCell<HashMap<(usize, u32), Rc<CosTable>>> = RefCell::new(HashMap::new());
}

/// `atan(1/k) · 2^prec` with a truncation-error count in units.
fn atan_inv(k: u64, prec: u32) -> (BigInt, u64) {
    let one = BigInt::one() << prec;
    let k = BigInt::from(k);
    let k2 = &k * &k;
    let mut power = &one / &k; // 1/k^(2i+1)
    let mut sum = BigInt::zero();
    let mut i = 0u64;
    let mut steps = 0u64;
    while !power.is_zero() {
        let term = &power / BigInt::from(2 * i + 1);
        if i.is_multiple_of(2) {
            sum += term;
        } else {
            sum -= term;
        }
        power /= &k2;
        i += 1;
        steps += 2;
    }
    (sum, steps + 2)
}

/// `π · 2^prec` via Machin's formula, with an error bound in units.
fn pi_fixed(prec: u32) -> (BigInt, u64) {
    let (a, ea) = atan_inv(5, prec);
    let (b, eb) = atan_inv(239, prec);
    (a * 16 - b * 4, 16 * ea + 4 * eb)
}

/// `cos(x)` for `0 <= x <= π` in fixed point (Taylor series); returns the
/// value and the number of truncation steps.
fn cos_fixed(x: &BigInt, prec: u32) -> (BigInt, u64) {
    let one = BigInt::one() << prec;
    let x2 = (x * x) >> prec;
    let mut term = one.clone();
    let mut sum = one;
    let mut k = 0u64;
    let mut steps = 1u64;
    loop {
        term = (&term * &x2) >> prec;
        term /= BigInt::from((k + 1) * (k + 2));
        k += 2;
        steps += 2;
        if term.is_zero() {
            break;
        }
        if (k / 2) % 2 == 1 {
            sum -= &term;
        } else {
            sum += &term;
        }
    }
    (sum, steps)
}

fn build(m: usize, prec: u32) -> CosTable {
    let (pi, epi) = pi_fixed(prec);
    let mut values = Vec::with_capacity(m);
    let mut worst_steps = 0u64;
    let mut half: Vec<Option<BigInt>> = vec![None; m / 2 + 1];
    for j in 0..m {
        let jj = if 2 * j <= m { j } else { m - j };
        if half[jj].is_none() {
            // x = 2π·jj/m <= π.
            let x = (&pi * BigInt::from(2 * jj)) / BigInt::from(m as u64);
            let (c, steps) = cos_fixed(&x, prec);
            worst_steps = worst_steps.max(steps);
            half[jj] = Some(c);
        }
        values.push(half[jj].clone().unwrap());
    }
    // The argument error is at most epi + 1 units and |cos'| <= 1; per-step
    // truncation is amplified by at most e^π < 24. Padded generously.
    let err = BigInt::from(32 * epi + 32 * worst_steps + 256);
    CosTable { values, err }
}

pub(crate) fn cos_table(m: usize, prec: u32) -> Rc<CosTable> {
    TABLES.with(|t| t.borrow_mut().entry((m, prec)).or_insert_with(|| Rc::new(build(m, prec))).clone())
}

/// Sign of `Σ c_j cos(2πj/m)` for coefficients not all making a zero
/// element; loops with doubling precision until the sign is certain.
pub(crate) fn sign_of_cos_sum(m: usize, coeffs: &[i128]) -> i8 {
    let weight: BigInt = coeffs.iter().map(|c| BigInt::from(c.unsigned_abs())).sum();
    let mut prec = 96u32;
    loop {
        let table = cos_table(m, prec);
        let mut s = BigInt::zero();
        for (j, &c) in coeffs.iter().enumerate() {
            if c != 0 {
                s += &table.values[j] * BigInt::from(c);
            }
        }
        let bound = &weight * &table.err;
        if s.abs() > bound {
            return if s.is_positive() { 1 } else { -1 };
        }
        prec = prec.checked_mul(2).expect("sign refinement did not terminate");
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    #[test]
    fn table_matches_floats() {
        let prec = 80;
        let t = cos_table(12, prec);
        for j in 0..12 {
            let approx = t.values[j].to_f64().unwrap() / 2f64.powi(prec as i32);
            let exact = (2.0 * std::f64::consts::PI * j as f64 / 12.0).cos();
            assert!((approx - exact).abs() < 1e-15, "j = {j}");
        }
    }

    #[test]
    fn pi_digits() {
        let (pi, _) = pi_fixed(64);
        let f = pi.to_f64().unwrap() / 2f64.powi(64);
        assert!((f - std::f64::consts::PI).abs() < 1e-15);
    }

    #[test]
    fn sign_of_small_difference() {
        // cos(2π/5) - 0.309 > 0 with a tiny gap: 1000·cos(2π/5) - 309·cos(0).
        assert_eq!(sign_of_cos_sum(5, &[-309, 1000]), 1);
        assert_eq!(sign_of_cos_sum(5, &[-310, 1000]), -1);
    }
}
