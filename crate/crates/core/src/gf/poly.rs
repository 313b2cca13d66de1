//! Dense polynomials over the prime field F_p.
//!
//! Coefficients are stored low degree first and kept normalized: no trailing
//! zeros, so the zero polynomial is the empty vector.

pub(crate) type Poly = Vec<u32>;

pub(crate) fn normalize(mut a: Poly) -> Poly {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

pub(crate) fn degree(a: &[u32]) -> Option<usize> {
    a.iter().rposition(|&c| c != 0)
}

pub(crate) fn inv_mod_p(a: u32, p: u32) -> u32 {
    debug_assert!(!a.is_multiple_of(p));
    pow_mod_p(a, p - 2, p)
}

pub(crate) fn pow_mod_p(a: u32, mut e: u32, p: u32) -> u32 {
    let m = p as u64;
    let mut r = 1u64;
    let mut b = (a % p) as u64;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r as u32
}

pub(crate) fn sub(a: &[u32], b: &[u32], p: u32) -> Poly {
    let len = a.len().max(b.len());
    let mut r = vec![0u32; len];
    for (i, slot) in r.iter_mut().enumerate() {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        *slot = (x + p - y) % p;
    }
    normalize(r)
}

pub(crate) fn mul(a: &[u32], b: &[u32], p: u32) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut r = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            r[i + j] += (x as u64) * (y as u64);
        }
    }
    normalize(r.into_iter().map(|c| (c % p as u64) as u32).collect())
}

/// Remainder of `a` modulo `m` (m nonzero).
pub(crate) fn rem(a: &[u32], m: &[u32], p: u32) -> Poly {
    let dm = degree(m).expect("division by zero polynomial");
    let lead_inv = inv_mod_p(m[dm], p);
    let mut r: Poly = normalize(a.to_vec());
    while let Some(dr) = degree(&r) {
        if dr < dm {
            break;
        }
        let c = (r[dr] as u64 * lead_inv as u64 % p as u64) as u32;
        let shift = dr - dm;
        for (i, &mc) in m.iter().enumerate().take(dm + 1) {
            let t = (c as u64 * mc as u64 % p as u64) as u32;
            r[shift + i] = (r[shift + i] + p - t) % p;
        }
        r = normalize(r);
    }
    r
}

pub(crate) fn mulmod(a: &[u32], b: &[u32], m: &[u32], p: u32) -> Poly {
    rem(&mul(a, b, p), m, p)
}

pub(crate) fn powmod(base: &[u32], mut e: u128, m: &[u32], p: u32) -> Poly {
    let mut r: Poly = rem(&[1], m, p);
    let mut b = rem(base, m, p);
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(&r, &b, m, p);
        }
        e >>= 1;
        if e > 0 {
            b = mulmod(&b, &b, m, p);
        }
    }
    r
}

pub(crate) fn gcd(a: &[u32], b: &[u32], p: u32) -> Poly {
    let mut x = normalize(a.to_vec());
    let mut y = normalize(b.to_vec());
    while !y.is_empty() {
        let r = rem(&x, &y, p);
        x = y;
        y = r;
    }
    x
}

/// Ben-Or irreducibility test: `f` of degree n is irreducible iff
/// gcd(f, x^{p^d} - x) = 1 for every d in 1..=n/2.
pub(crate) fn is_irreducible(f: &[u32], p: u32) -> bool {
    let n = match degree(f) {
        Some(d) if d >= 1 => d,
        _ => return false,
    };
    if n == 1 {
        return true;
    }
    let x: Poly = vec![0, 1];
    let mut h = rem(&x, f, p);
    for _ in 1..=n / 2 {
        h = powmod(&h, p as u128, f, p);
        let g = gcd(f, &sub(&h, &x, p), p);
        if degree(&g) != Some(0) {
            return false;
        }
    }
    true
}

pub(crate) fn prime_factors(mut m: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= m {
        if m.is_multiple_of(d) {
            out.push(d);
            while m.is_multiple_of(d) {
                m /= d;
            }
        }
        d += 1;
    }
    if m > 1 {
        out.push(m);
    }
    out
}

pub(crate) fn is_prime(m: u64) -> bool {
    m >= 2 && prime_factors(m) == [m]
}

/// True iff the class of x has order exactly p^n - 1 modulo the irreducible `f`.
pub(crate) fn x_is_primitive(f: &[u32], p: u32, order: u64, factors: &[u64]) -> bool {
    let x: Poly = vec![0, 1];
    element_has_order(&x, f, p, order, factors)
}

pub(crate) fn element_has_order(g: &[u32], f: &[u32], p: u32, order: u64, factors: &[u64]) -> bool {
    let one = rem(&[1], f, p);
    if powmod(g, order as u128, f, p) != one {
        return false;
    }
    factors
        .iter()
        .all(|&r| powmod(g, (order / r) as u128, f, p) != one)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rem_and_gcd_small() {
        // (x+1)(x+2) = x^2 + 2 over F_3
        let a = mul(&[1, 1], &[2, 1], 3);
        assert_eq!(a, vec![2, 0, 1]);
        assert!(rem(&a, &[1, 1], 3).is_empty());
        assert_eq!(gcd(&a, &[1, 1], 3), vec![1, 1]);
    }

    #[test]
    fn irreducibility_known_cases() {
        assert!(is_irreducible(&[1, 0, 1], 3)); // x^2+1
        assert!(!is_irreducible(&[2, 0, 1], 3)); // x^2-1
        assert!(is_irreducible(&[2, 1, 0, 0, 1], 3)); // x^4+x-1
        assert!(!is_irreducible(&[1, 0, 2, 0, 1], 3)); // (x^2+1)^2
        assert!(is_irreducible(&[2, 4, 1], 5));
    }

    #[test]
    fn primitive_root_of_x4_x_minus_1() {
        let f = [2, 1, 0, 0, 1];
        let fac = prime_factors(80);
        assert!(x_is_primitive(&f, 3, 80, &fac));
        // x^2+1 over F_3: x has order 4, not 8
        assert!(!x_is_primitive(&[1, 0, 1], 3, 8, &prime_factors(8)));
    }
}
