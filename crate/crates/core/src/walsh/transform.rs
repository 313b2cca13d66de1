//! Size-p DFT passes over F_p^n on unreduced Z[w] vectors.
//!
//! Each position holds a length-p integer vector (the coefficients of
//! 1, w, ..., w^{p-1}). Multiplying by w^t is a rotation, so a pass needs
//! only additions.

use rayon::prelude::*;

const MIN_PAR_LEN: usize = 1 << 11;

/// Computes out[u] = sum_c w^{sign * u.c} in[c] for all u in F_p^n.
///
/// `data` is flattened as data[idx * p + r]; idx encodes a vector of F_p^n
/// with digit i the i-th coordinate.
pub(crate) fn dft(mut a: Vec<i64>, p: usize, n: u32, sign: i64) -> Vec<i64> {
    let q = a.len() / p;
    debug_assert_eq!(q, p.pow(n));
    let mut b = vec![0i64; a.len()];
    let mut stride = 1usize;
    for _ in 0..n {
        let src = &a;
        let kernel = |(idx, out): (usize, &mut [i64])| {
            out.iter_mut().for_each(|v| *v = 0);
            let u = (idx / stride) % p;
            let base = idx - u * stride;
            for c in 0..p {
                let off = (base + c * stride) * p;
                let v = &src[off..off + p];
                let t = (sign * (u * c) as i64).rem_euclid(p as i64) as usize;
                for (r, &x) in v.iter().enumerate() {
                    let k = r + t;
                    out[if k >= p { k - p } else { k }] += x;
                }
            }
        };
        if q >= MIN_PAR_LEN {
            b.par_chunks_mut(p)
                .enumerate()
                .with_min_len(MIN_PAR_LEN / 4)
                .for_each(kernel);
        } else {
            b.chunks_mut(p).enumerate().for_each(kernel);
        }
        std::mem::swap(&mut a, &mut b);
        stride *= p;
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_axis_matches_definition() {
        // f(c) = c^2 on F_3: T[u] = sum_c w^{c^2 - u c}
        let p = 3;
        let mut a = vec![0i64; 9];
        for c in 0..3 {
            a[c * p + (c * c) % 3] = 1;
        }
        let t = dft(a, p, 1, -1);
        for u in 0..3 {
            let mut expect = [0i64; 3];
            for c in 0..3 {
                expect[(c * c + 3 * 3 - u * c) % 3] += 1;
            }
            assert_eq!(&t[u * 3..u * 3 + 3], &expect[..]);
        }
    }
}
