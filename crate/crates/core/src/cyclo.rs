//! Exact arithmetic in Z[w], w = exp(2 pi i / p).
//!
//! Values are kept in the canonical basis 1, w, ..., w^{p-2}; w^{p-1} is
//! always rewritten as -(1 + w + ... + w^{p-2}). Coordinates are i128 and
//! every multiplication is overflow-checked.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct CycInt {
    p: u32,
    coords: Vec<i128>,
}

impl CycInt {
    pub fn zero(p: u32) -> CycInt {
        CycInt {
            p,
            coords: vec![0; (p - 1) as usize],
        }
    }

    pub fn from_int(p: u32, c: i128) -> CycInt {
        let mut z = Self::zero(p);
        z.coords[0] = c;
        z
    }

    pub fn one(p: u32) -> CycInt {
        Self::from_int(p, 1)
    }

    /// w^j for any integer j.
    pub fn omega_pow(p: u32, j: i64) -> CycInt {
        let j = j.rem_euclid(p as i64) as usize;
        let mut counts = vec![0i128; p as usize];
        counts[j] = 1;
        Self::from_unreduced(p, &counts)
    }

    /// Builds sum_i c_i w^i from canonical coordinates (length p - 1).
    pub fn from_coords(p: u32, coords: Vec<i128>) -> Result<CycInt> {
        if coords.len() != (p - 1) as usize {
            return Err(Error::pre(format!(
                "expected {} coordinates, got {}",
                p - 1,
                coords.len()
            )));
        }
        Ok(CycInt { p, coords })
    }

    /// Reduces sum_{i<p} c_i w^i (length p) to canonical form.
    pub fn from_unreduced(p: u32, c: &[i128]) -> CycInt {
        debug_assert_eq!(c.len(), p as usize);
        let top = c[p as usize - 1];
        CycInt {
            p,
            coords: c[..p as usize - 1].iter().map(|&v| v - top).collect(),
        }
    }

    /// Same as [`from_unreduced`](Self::from_unreduced) for i64 counts.
    pub fn from_counts(p: u32, c: &[i64]) -> CycInt {
        debug_assert_eq!(c.len(), p as usize);
        let top = c[p as usize - 1] as i128;
        CycInt {
            p,
            coords: c[..p as usize - 1]
                .iter()
                .map(|&v| v as i128 - top)
                .collect(),
        }
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn coords(&self) -> &[i128] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    /// The rational integer this value equals, if it is one.
    pub fn as_integer(&self) -> Option<i128> {
        self.coords[1..]
            .iter()
            .all(|&c| c == 0)
            .then_some(self.coords[0])
    }

    pub fn try_add(&self, o: &CycInt) -> Result<CycInt> {
        self.zip(o, i128::checked_add)
    }

    pub fn try_sub(&self, o: &CycInt) -> Result<CycInt> {
        self.zip(o, i128::checked_sub)
    }

    fn zip(&self, o: &CycInt, f: fn(i128, i128) -> Option<i128>) -> Result<CycInt> {
        assert_eq!(self.p, o.p, "mixing cyclotomic rings");
        let coords = self
            .coords
            .iter()
            .zip(&o.coords)
            .map(|(&a, &b)| f(a, b).ok_or(Error::Overflow("CycInt add")))
            .collect::<Result<_>>()?;
        Ok(CycInt { p: self.p, coords })
    }

    pub fn try_mul(&self, o: &CycInt) -> Result<CycInt> {
        assert_eq!(self.p, o.p, "mixing cyclotomic rings");
        let p = self.p as usize;
        let mut acc = vec![0i128; p];
        for (i, &a) in self.coords.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.coords.iter().enumerate() {
                let t = a.checked_mul(b).ok_or(Error::Overflow("CycInt mul"))?;
                let k = (i + j) % p;
                acc[k] = acc[k].checked_add(t).ok_or(Error::Overflow("CycInt mul"))?;
            }
        }
        Ok(Self::from_unreduced(self.p, &acc))
    }

    pub fn try_scalar_mul(&self, k: i128) -> Result<CycInt> {
        let coords = self
            .coords
            .iter()
            .map(|&c| c.checked_mul(k).ok_or(Error::Overflow("CycInt scalar mul")))
            .collect::<Result<_>>()?;
        Ok(CycInt { p: self.p, coords })
    }

    pub fn scalar_mul(&self, k: i128) -> CycInt {
        self.try_scalar_mul(k).expect("CycInt overflow")
    }

    /// Multiplies by w^s (a cyclic shift in the unreduced basis).
    pub fn mul_omega(&self, s: i64) -> CycInt {
        let p = self.p as usize;
        let s = s.rem_euclid(p as i64) as usize;
        let mut acc = vec![0i128; p];
        for (i, &c) in self.coords.iter().enumerate() {
            acc[(i + s) % p] = c;
        }
        Self::from_unreduced(self.p, &acc)
    }

    /// Complex conjugate: w -> w^{p-1}.
    pub fn conj(&self) -> CycInt {
        let p = self.p as usize;
        let mut acc = vec![0i128; p];
        for (i, &c) in self.coords.iter().enumerate() {
            acc[(p - i) % p] = c;
        }
        Self::from_unreduced(self.p, &acc)
    }

    /// x * conj(x).
    pub fn norm_sq(&self) -> CycInt {
        self * &self.conj()
    }

    /// True iff the value is fixed by conjugation.
    pub fn is_real(&self) -> bool {
        self.conj() == *self
    }

    /// Decimal strings of the canonical coordinates, for JSON reports.
    pub fn coord_strings(&self) -> Vec<String> {
        self.coords.iter().map(|c| c.to_string()).collect()
    }
}

/// g = sum_{x in F_p} w^{x^2}. Satisfies g * conj(g) = p.
pub fn gauss_sum(p: u32) -> CycInt {
    let mut counts = vec![0i128; p as usize];
    for x in 0..p as u64 {
        counts[(x * x % p as u64) as usize] += 1;
    }
    CycInt::from_unreduced(p, &counts)
}

/// Outcome of matching a value against +-p^{n/2} times a root of unity.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct UnitPower {
    /// +1 or -1.
    pub sign: i8,
    /// The exponent j of w, in [0, p).
    pub dual_value: u32,
}

/// For even n, matches x = +-p^{n/2} w^j. For odd n, matches
/// x * conj(g) = +-p^{(n+1)/2} w^j with g the Gauss sum, which absorbs the
/// factor i of the odd-degree normal form when p = 3 mod 4.
pub fn recognize_unit_times_power(x: &CycInt, n: u32) -> Option<UnitPower> {
    let p = x.p;
    let (v, half) = if n.is_multiple_of(2) {
        (x.clone(), n / 2)
    } else {
        (x.try_mul(&gauss_sum(p).conj()).ok()?, n.div_ceil(2))
    };
    let mag = (p as i128).checked_pow(half)?;
    let nz: Vec<usize> = (0..v.coords.len()).filter(|&i| v.coords[i] != 0).collect();
    if nz.len() == 1 && v.coords[nz[0]].abs() == mag {
        let sign = if v.coords[nz[0]] > 0 { 1 } else { -1 };
        return Some(UnitPower {
            sign,
            dual_value: nz[0] as u32,
        });
    }
    // w^{p-1} = -(1 + ... + w^{p-2})
    let c0 = v.coords[0];
    if c0.abs() == mag && v.coords.iter().all(|&c| c == c0) {
        let sign = if c0 > 0 { -1 } else { 1 };
        return Some(UnitPower {
            sign,
            dual_value: p - 1,
        });
    }
    None
}

/// Rebuilds the value that [`recognize_unit_times_power`] would map to `u`.
pub fn unit_times_power(p: u32, n: u32, u: UnitPower) -> CycInt {
    let base = if n.is_multiple_of(2) {
        CycInt::from_int(p, (p as i128).pow(n / 2))
    } else {
        gauss_sum(p).scalar_mul((p as i128).pow((n - 1) / 2))
    };
    base.mul_omega(u.dual_value as i64)
        .scalar_mul(u.sign as i128)
}

impl<'a> Add<&'a CycInt> for &'a CycInt {
    type Output = CycInt;
    fn add(self, o: &CycInt) -> CycInt {
        self.try_add(o).expect("CycInt overflow")
    }
}

impl<'a> Sub<&'a CycInt> for &'a CycInt {
    type Output = CycInt;
    fn sub(self, o: &CycInt) -> CycInt {
        self.try_sub(o).expect("CycInt overflow")
    }
}

impl<'a> Mul<&'a CycInt> for &'a CycInt {
    type Output = CycInt;
    fn mul(self, o: &CycInt) -> CycInt {
        self.try_mul(o).expect("CycInt overflow")
    }
}

impl Add for CycInt {
    type Output = CycInt;
    fn add(self, o: CycInt) -> CycInt {
        &self + &o
    }
}

impl Sub for CycInt {
    type Output = CycInt;
    fn sub(self, o: CycInt) -> CycInt {
        &self - &o
    }
}

impl Mul for CycInt {
    type Output = CycInt;
    fn mul(self, o: CycInt) -> CycInt {
        &self * &o
    }
}

impl Neg for &CycInt {
    type Output = CycInt;
    fn neg(self) -> CycInt {
        CycInt {
            p: self.p,
            coords: self.coords.iter().map(|&c| -c).collect(),
        }
    }
}

impl Neg for CycInt {
    type Output = CycInt;
    fn neg(self) -> CycInt {
        -&self
    }
}

impl fmt::Display for CycInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coords
            .iter()
            .enumerate()
            .map(|(i, c)| match i {
                0 => c.to_string(),
                1 => format!("{c}*w"),
                _ => format!("{c}*w^{i}"),
            })
            .collect();
        f.write_str(&terms.join(" + "))
    }
}

impl Serialize for CycInt {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.coord_strings().serialize(s)
    }
}
