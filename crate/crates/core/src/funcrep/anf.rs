//! Algebraic normal form over polynomial-basis coordinates.

use std::fmt;
use std::sync::Arc;

use super::PFunction;
use crate::error::{Error, Result};
use crate::gf::poly::inv_mod_p;
use crate::gf::FieldCtx;

/// f(x_0, ..., x_{n-1}) = sum_e c_e prod x_i^{e_i}, each e_i < p.
///
/// `coeffs` is indexed like the truth table: the monomial with exponent
/// tuple e sits at sum e_i p^i, and x_i is the i-th polynomial-basis
/// coordinate of the input.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Anf {
    p: u32,
    n: u32,
    coeffs: Vec<u8>,
}

/// Vandermonde V[x][e] = x^e over F_p and its inverse.
fn vandermonde(p: u32) -> (Vec<Vec<u32>>, Vec<Vec<u32>>) {
    let v: Vec<Vec<u32>> = (0..p)
        .map(|x| {
            (0..p)
                .map(|e| if e == 0 { 1 } else { x.pow(e) % p })
                .collect()
        })
        .collect();
    let inv = invert(&v, p);
    (v, inv)
}

fn invert(m: &[Vec<u32>], p: u32) -> Vec<Vec<u32>> {
    let n = m.len();
    let mut a: Vec<Vec<u64>> = m
        .iter()
        .enumerate()
        .map(|(i, r)| {
            r.iter()
                .map(|&v| v as u64)
                .chain((0..n).map(|j| (i == j) as u64))
                .collect()
        })
        .collect();
    let p64 = p as u64;
    for c in 0..n {
        let piv = (c..n)
            .find(|&r| !a[r][c].is_multiple_of(p64))
            .expect("Vandermonde is invertible");
        a.swap(c, piv);
        let iv = inv_mod_p(a[c][c] as u32, p) as u64;
        for v in a[c].iter_mut() {
            *v = *v * iv % p64;
        }
        for r in 0..n {
            if r != c && a[r][c] != 0 {
                let f = a[r][c];
                for k in 0..2 * n {
                    a[r][k] = (a[r][k] + p64 * p64 - f * a[c][k] % p64) % p64;
                }
            }
        }
    }
    a.into_iter()
        .map(|r| r[n..].iter().map(|&v| v as u32).collect())
        .collect()
}

/// Applies `mat` along every axis of a p^n table in place.
fn transform(data: &mut [u8], p: u32, n: u32, mat: &[Vec<u32>]) {
    let p_us = p as usize;
    let mut stride = 1usize;
    let mut buf = vec![0u32; p_us];
    for _ in 0..n {
        let block = stride * p_us;
        for base in (0..data.len()).step_by(block) {
            for off in 0..stride {
                for (i, slot) in buf.iter_mut().enumerate() {
                    *slot = data[base + off + i * stride] as u32;
                }
                for (r, row) in mat.iter().enumerate() {
                    let s: u32 = row.iter().zip(&buf).map(|(a, b)| a * b).sum();
                    data[base + off + r * stride] = (s % p) as u8;
                }
            }
        }
        stride = block;
    }
}

impl Anf {
    pub fn from_truth(f: &PFunction) -> Anf {
        let ctx = f.ctx();
        let (_, inv) = vandermonde(ctx.p());
        let mut coeffs = f.values().to_vec();
        transform(&mut coeffs, ctx.p(), ctx.n(), &inv);
        Anf {
            p: ctx.p(),
            n: ctx.n(),
            coeffs,
        }
    }

    /// Builds an ANF from (exponent tuple, coefficient) pairs.
    pub fn from_terms(p: u32, n: u32, terms: &[(Vec<u32>, u32)]) -> Result<Anf> {
        let mut coeffs = vec![0u8; (p as usize).pow(n)];
        for (e, c) in terms {
            if e.len() != n as usize || e.iter().any(|&d| d >= p) {
                return Err(Error::pre(format!("bad exponent tuple {e:?}")));
            }
            let idx = e
                .iter()
                .rev()
                .fold(0usize, |acc, &d| acc * p as usize + d as usize);
            coeffs[idx] = ((coeffs[idx] as u32 + c) % p) as u8;
        }
        Ok(Anf { p, n, coeffs })
    }

    /// Evaluates on every point of the field's coordinate space.
    pub fn to_truth(&self, ctx: &Arc<FieldCtx>) -> Result<PFunction> {
        if ctx.p() != self.p || ctx.n() != self.n {
            return Err(Error::pre("ANF and field disagree on (p, n)"));
        }
        let (v, _) = vandermonde(self.p);
        let mut values = self.coeffs.clone();
        transform(&mut values, self.p, self.n, &v);
        PFunction::new(ctx.clone(), values)
    }

    /// Uniform coefficients on every monomial of total degree <= `max_degree`.
    pub fn random(p: u32, n: u32, max_degree: u32, rng: &mut impl rand::Rng) -> Anf {
        let mut a = Anf {
            p,
            n,
            coeffs: vec![0; (p as usize).pow(n)],
        };
        for i in 0..a.coeffs.len() {
            if a.exponents(i).iter().sum::<u32>() <= max_degree {
                a.coeffs[i] = rng.gen_range(0..p) as u8;
            }
        }
        a
    }

    pub fn coeffs(&self) -> &[u8] {
        &self.coeffs
    }

    /// Exponent tuple of the monomial at `idx`.
    pub fn exponents(&self, mut idx: usize) -> Vec<u32> {
        (0..self.n)
            .map(|_| {
                let d = (idx % self.p as usize) as u32;
                idx /= self.p as usize;
                d
            })
            .collect()
    }

    /// Nonzero terms as (exponents, coefficient).
    pub fn terms(&self) -> Vec<(Vec<u32>, u32)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| (self.exponents(i), c as u32))
            .collect()
    }

    /// Total degree; 0 for constants and for the zero function.
    pub fn degree(&self) -> u32 {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, _)| self.exponents(i).iter().sum())
            .max()
            .unwrap_or(0)
    }
}

impl fmt::Display for Anf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (e, c) in self.terms() {
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &d)| d > 0)
                .map(|(i, &d)| {
                    if d == 1 {
                        format!("x{}", i + 1)
                    } else {
                        format!("x{}^{d}", i + 1)
                    }
                })
                .collect();
            let mono = mono.join("*");
            parts.push(match (c, mono.is_empty()) {
                (_, true) => c.to_string(),
                (1, false) => mono,
                _ => format!("{c}*{mono}"),
            });
        }
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn zero_function() {
        let ctx = FieldCtx::conway(3, 3).unwrap();
        let a = Anf::from_truth(&PFunction::zero(ctx));
        assert!(a.coeffs().iter().all(|&c| c == 0));
        assert_eq!(a.degree(), 0);
    }

    #[test]
    fn single_variable_square() {
        let ctx = FieldCtx::conway(3, 1).unwrap();
        let f = PFunction::new(ctx, vec![0, 1, 1]).unwrap();
        let a = Anf::from_truth(&f);
        assert_eq!(a.terms(), vec![(vec![2], 1)]);
        assert_eq!(a.to_string(), "x1^2");
    }

    #[test]
    fn round_trip_random() {
        for (p, n) in [(3, 3), (5, 2), (7, 2)] {
            let ctx = FieldCtx::conway(p, n).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(11);
            for _ in 0..10 {
                let f = PFunction::random(ctx.clone(), &mut rng);
                assert_eq!(Anf::from_truth(&f).to_truth(&ctx).unwrap(), f);
            }
        }
    }

    #[test]
    fn from_terms_evaluates() {
        let ctx = FieldCtx::conway(3, 2).unwrap();
        let a = Anf::from_terms(3, 2, &[(vec![2, 0], 1), (vec![0, 2], 1)]).unwrap();
        let f = a.to_truth(&ctx).unwrap();
        for x in ctx.elements() {
            let c = ctx.coeffs(x);
            assert_eq!(f.at(x), (c[0] * c[0] + c[1] * c[1]) % 3);
        }
    }
}
