//! Conway polynomials: lookup table plus the defining search.
//!
//! The Conway polynomial C_{p,n} is the smallest monic primitive polynomial of
//! degree n, under the ordering that compares (a_{n-1}, ..., a_0) where
//! f = x^n - a_{n-1} x^{n-1} + a_{n-2} x^{n-2} - ..., subject to the
//! compatibility condition that x^{(p^n-1)/(p^d-1)} is a root of C_{p,d}
//! for every proper divisor d of n.

use super::poly::{self, Poly};
use crate::error::{Error, Result};

/// Precomputed values, coefficients low degree first.
const TABLE: &[(u32, u32, &[u32])] = &[
    (3, 1, &[1, 1]),
    (3, 2, &[2, 2, 1]),
    (3, 3, &[1, 2, 0, 1]),
    (3, 4, &[2, 0, 0, 2, 1]),
    (3, 5, &[1, 2, 0, 0, 0, 1]),
    (3, 6, &[2, 2, 1, 0, 2, 0, 1]),
    (3, 7, &[1, 0, 2, 0, 0, 0, 0, 1]),
    (3, 8, &[2, 2, 2, 0, 1, 2, 0, 0, 1]),
    (3, 9, &[1, 1, 2, 2, 0, 0, 0, 0, 0, 1]),
    (3, 10, &[2, 1, 0, 0, 2, 2, 2, 0, 0, 0, 1]),
    (3, 11, &[1, 0, 2, 0, 0, 0, 0, 0, 0, 0, 0, 1]),
    (3, 12, &[2, 0, 1, 0, 1, 1, 1, 0, 0, 0, 0, 0, 1]),
    (5, 1, &[3, 1]),
    (5, 2, &[2, 4, 1]),
    (5, 3, &[3, 3, 0, 1]),
    (5, 4, &[2, 4, 4, 0, 1]),
    (5, 5, &[3, 4, 0, 0, 0, 1]),
    (5, 6, &[2, 0, 1, 4, 1, 0, 1]),
    (7, 1, &[4, 1]),
    (7, 2, &[3, 6, 1]),
    (7, 3, &[4, 0, 6, 1]),
    (7, 4, &[3, 4, 5, 0, 1]),
    (7, 5, &[4, 1, 0, 0, 0, 1]),
    (7, 6, &[3, 6, 4, 5, 1, 0, 1]),
];

/// Largest field size for which [`search`] is attempted.
pub const SEARCH_LIMIT: u64 = 1 << 22;

/// Conway polynomial for (p, n), from the table when available.
pub fn conway_polynomial(p: u32, n: u32) -> Result<Vec<u32>> {
    if let Some(&(_, _, c)) = TABLE.iter().find(|&&(tp, tn, _)| tp == p && tn == n) {
        return Ok(c.to_vec());
    }
    search(p, n)
}

/// Runs the defining search, ignoring the table except for proper subfields.
pub fn search(p: u32, n: u32) -> Result<Vec<u32>> {
    if !poly::is_prime(p as u64) {
        return Err(Error::pre(format!("p = {p} is not prime")));
    }
    if n == 0 {
        return Err(Error::pre("extension degree must be positive"));
    }
    let q = (p as u64)
        .checked_pow(n)
        .filter(|&q| q <= SEARCH_LIMIT)
        .ok_or_else(|| Error::Budget {
            what: "Conway search field size".into(),
            actual: (p as u64).saturating_pow(n),
            limit: SEARCH_LIMIT,
        })?;
    let order = q - 1;
    let factors = poly::prime_factors(order);
    let subs: Vec<(u32, Vec<u32>)> = (1..n)
        .filter(|d| n.is_multiple_of(*d))
        .map(|d| conway_polynomial(p, d).map(|c| (d, c)))
        .collect::<Result<_>>()?;

    let n_us = n as usize;
    // seq[0] = a_{n-1}, ..., seq[n-1] = a_0, counted lexicographically
    let mut seq = vec![0u32; n_us];
    loop {
        let mut f = vec![0u32; n_us + 1];
        f[n_us] = 1;
        for (pos, &a) in seq.iter().enumerate() {
            let i = n_us - 1 - pos;
            f[i] = if (n_us - i).is_multiple_of(2) {
                a
            } else {
                (p - a) % p
            };
        }
        if f[0] != 0 && poly::x_is_primitive(&f, p, order, &factors) && compatible(&f, p, q, &subs)
        {
            return Ok(f);
        }
        // increment, last position fastest
        let mut pos = n_us;
        loop {
            if pos == 0 {
                return Err(Error::Inconsistency(format!(
                    "no Conway polynomial found for p={p}, n={n}"
                )));
            }
            pos -= 1;
            seq[pos] += 1;
            if seq[pos] < p {
                break;
            }
            seq[pos] = 0;
        }
    }
}

fn compatible(f: &[u32], p: u32, q: u64, subs: &[(u32, Vec<u32>)]) -> bool {
    let x: Poly = vec![0, 1];
    subs.iter().all(|(d, cd)| {
        let e = (q - 1) / ((p as u64).pow(*d) - 1);
        let y = poly::powmod(&x, e as u128, f, p);
        // Horner evaluation of C_d at y modulo f
        let mut acc: Poly = Vec::new();
        for &c in cd.iter().rev() {
            acc = poly::mulmod(&acc, &y, f, p);
            let mut t = acc.clone();
            if t.is_empty() {
                t.push(0);
            }
            t[0] = (t[0] + c) % p;
            acc = poly::normalize(t);
        }
        acc.is_empty()
    })
}
