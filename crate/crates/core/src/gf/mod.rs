//! Arithmetic in F_{p^n}.
//!
//! Elements are packed as integers: the element with polynomial-basis
//! coordinates (c_0, ..., c_{n-1}) (so x = sum c_i a^i for a root a of the
//! modulus) has index sum c_i p^i. Enumerating indices 0..p^n therefore
//! walks the field in lexicographic order of reversed coordinate lists, and
//! that index is what truth tables are keyed by.
//!
//! Addition runs through digit tables shared by every field of the same
//! characteristic. Multiplication uses discrete-log tables, built at
//! construction for fields of at most 3^8 elements and on first use above
//! that. Fields larger than [`TABLE_LIMIT`] fall back to polynomial
//! multiplication.

pub mod conway;
pub(crate) mod poly;

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Fields up to this size get eager log tables.
pub const EAGER_TABLE_LIMIT: u32 = 6561;
/// Fields above this size never get log tables.
pub const TABLE_LIMIT: u32 = 1 << 22;
/// Largest supported characteristic.
pub const MAX_P: u32 = 251;

/// A field element, stored as its index in the fixed enumeration.
///
/// The value is only meaningful together with the [`FieldCtx`] it came from.
#[derive(
    Copy, Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize,
)]
pub struct FFElem(pub(crate) u32);

impl FFElem {
    pub const ZERO: FFElem = FFElem(0);
    pub const ONE: FFElem = FFElem(1);

    /// Index of this element in the field enumeration.
    #[inline]
    pub fn index(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

struct DigitTables {
    /// p^w for the largest w with p^w <= 729.
    base: u32,
    add: Vec<u16>,
    neg: Vec<u16>,
}

fn digit_tables(p: u32) -> Arc<DigitTables> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<DigitTables>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().unwrap_or_else(|e| e.into_inner());
    guard
        .entry(p)
        .or_insert_with(|| Arc::new(build_digit_tables(p)))
        .clone()
}

fn build_digit_tables(p: u32) -> DigitTables {
    let mut width = 1;
    while p.pow(width + 1) <= 729 {
        width += 1;
    }
    let base = p.pow(width);
    let digits = |mut v: u32| {
        let mut d = [0u32; 16];
        for slot in d.iter_mut().take(width as usize) {
            *slot = v % p;
            v /= p;
        }
        d
    };
    let pack = |d: &[u32; 16]| {
        let mut v = 0u32;
        for i in (0..width as usize).rev() {
            v = v * p + d[i];
        }
        v
    };
    let mut add = vec![0u16; (base * base) as usize];
    let mut neg = vec![0u16; base as usize];
    for x in 0..base {
        let dx = digits(x);
        let mut dn = [0u32; 16];
        for i in 0..width as usize {
            dn[i] = (p - dx[i]) % p;
        }
        neg[x as usize] = pack(&dn) as u16;
        for y in 0..base {
            let dy = digits(y);
            let mut ds = [0u32; 16];
            for i in 0..width as usize {
                ds[i] = (dx[i] + dy[i]) % p;
            }
            add[(x * base + y) as usize] = pack(&ds) as u16;
        }
    }
    DigitTables { base, add, neg }
}

struct LogTables {
    /// exp[i] = primitive^i for i in 0..2(q-1).
    exp: Vec<u32>,
    /// log[x] for x != 0; log[0] is unused.
    log: Vec<u32>,
    /// Absolute trace of every element, as an F_p residue.
    trace: Vec<u8>,
}

/// A concrete realization of F_{p^n}.
///
/// Immutable after construction and cheap to share behind an [`Arc`].
pub struct FieldCtx {
    p: u32,
    n: u32,
    q: u32,
    modulus: Vec<u32>,
    primitive: FFElem,
    pows: Vec<u32>,
    digits: Arc<DigitTables>,
    /// Tr(a^i) for the polynomial basis.
    basis_trace: Vec<u32>,
    tables: OnceLock<Option<LogTables>>,
}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldCtx")
            .field("p", &self.p)
            .field("n", &self.n)
            .field("modulus", &self.modulus)
            .field("primitive", &self.primitive.0)
            .finish()
    }
}

/// Parsed form of a field spec string such as `p=3 n=4 mod=[2,1,0,0,1]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldSpec {
    pub p: u32,
    pub n: u32,
    /// Low-to-high coefficients; `None` selects the Conway polynomial.
    pub modulus: Option<Vec<u32>>,
}

impl FieldSpec {
    /// Parses `p=P n=N [mod=[c0,c1,...]]`. Byte offsets in errors are
    /// shifted by `offset`.
    pub fn parse_at(s: &str, offset: usize) -> Result<FieldSpec> {
        let mut p = None;
        let mut n = None;
        let mut modulus = None;
        let bytes = s.as_bytes();
        let mut i = 0;
        while i < bytes.len() {
            if bytes[i].is_ascii_whitespace() {
                i += 1;
                continue;
            }
            let start = i;
            while i < bytes.len() && bytes[i] != b'=' && !bytes[i].is_ascii_whitespace() {
                i += 1;
            }
            let key = &s[start..i];
            while i < bytes.len() && bytes[i].is_ascii_whitespace() {
                i += 1;
            }
            if i >= bytes.len() || bytes[i] != b'=' {
                return Err(Error::parse(
                    offset + start,
                    format!("expected '=' after '{key}'"),
                ));
            }
            i += 1;
            while i < bytes.len() && bytes[i].is_ascii_whitespace() {
                i += 1;
            }
            match key {
                "p" | "n" => {
                    let vs = i;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                    let v: u32 = s[vs..i].parse().map_err(|_| {
                        Error::parse(offset + vs, format!("expected a number for '{key}'"))
                    })?;
                    if key == "p" {
                        p = Some(v);
                    } else {
                        n = Some(v);
                    }
                }
                "mod" => {
                    if i >= bytes.len() || bytes[i] != b'[' {
                        return Err(Error::parse(offset + i, "expected '[' to open the modulus"));
                    }
                    let open = i;
                    let close = s[i..]
                        .find(']')
                        .map(|c| c + i)
                        .ok_or_else(|| Error::parse(offset + open, "unterminated modulus list"))?;
                    let mut coeffs = Vec::new();
                    let mut pos = open + 1;
                    for part in s[open + 1..close].split(',') {
                        let t = part.trim();
                        let v: i64 = t.parse().map_err(|_| {
                            Error::parse(offset + pos, format!("bad coefficient '{t}'"))
                        })?;
                        coeffs.push(v);
                        pos += part.len() + 1;
                    }
                    modulus = Some((open, coeffs));
                    i = close + 1;
                }
                _ => return Err(Error::parse(offset + start, format!("unknown key '{key}'"))),
            }
        }
        let p = p.ok_or_else(|| Error::parse(offset, "missing 'p='"))?;
        let n = n.ok_or_else(|| Error::parse(offset, "missing 'n='"))?;
        if p == 0 {
            return Err(Error::parse(offset, "p must be positive"));
        }
        let modulus = modulus.map(|(_, c)| {
            c.into_iter()
                .map(|v| v.rem_euclid(p as i64) as u32)
                .collect::<Vec<_>>()
        });
        Ok(FieldSpec { p, n, modulus })
    }

    pub fn parse(s: &str) -> Result<FieldSpec> {
        Self::parse_at(s, 0)
    }

    pub fn build(&self) -> Result<Arc<FieldCtx>> {
        match &self.modulus {
            Some(m) => FieldCtx::new(self.p, self.n, m.clone()),
            None => FieldCtx::conway(self.p, self.n),
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "p={} n={}", self.p, self.n)?;
        if let Some(m) = &self.modulus {
            let s: Vec<String> = m.iter().map(|c| c.to_string()).collect();
            write!(f, " mod=[{}]", s.join(","))?;
        }
        Ok(())
    }
}

impl FieldCtx {
    /// Builds F_{p^n} from an explicit monic modulus (low-to-high coefficients).
    ///
    /// Irreducibility is always checked. The primitive element is the root
    /// of the modulus when that root is primitive, otherwise the element of
    /// smallest index that is.
    pub fn new(p: u32, n: u32, modulus: Vec<u32>) -> Result<Arc<FieldCtx>> {
        if !poly::is_prime(p as u64) || p > MAX_P {
            return Err(Error::pre(format!(
                "p = {p} must be a prime no larger than {MAX_P}"
            )));
        }
        if n == 0 {
            return Err(Error::pre("extension degree n must be at least 1"));
        }
        let q64 = (p as u64).checked_pow(n).unwrap_or(u64::MAX);
        if q64 > u32::MAX as u64 / 2 {
            return Err(Error::Budget {
                what: "field size".into(),
                actual: q64,
                limit: u32::MAX as u64 / 2,
            });
        }
        let q = q64 as u32;
        let modulus: Vec<u32> = modulus.into_iter().map(|c| c % p).collect();
        if modulus.len() != n as usize + 1 || modulus[n as usize] != 1 {
            return Err(Error::pre(format!(
                "modulus must be monic of degree {n} (got {} coefficients)",
                modulus.len()
            )));
        }
        if !poly::is_irreducible(&modulus, p) {
            return Err(Error::pre(format!(
                "modulus {modulus:?} is reducible over F_{p}"
            )));
        }
        let pows: Vec<u32> = (0..=n).map(|i| p.pow(i)).collect();
        let order = q64 - 1;
        let factors = poly::prime_factors(order);
        let to_poly = |idx: u32| -> Vec<u32> {
            poly::normalize((0..n).map(|i| idx / pows[i as usize] % p).collect())
        };
        let root = if n == 1 { (p - modulus[0]) % p } else { p };
        let primitive = if poly::element_has_order(&to_poly(root), &modulus, p, order, &factors) {
            root
        } else {
            (1..q)
                .find(|&g| poly::element_has_order(&to_poly(g), &modulus, p, order, &factors))
                .ok_or_else(|| Error::Inconsistency("no primitive element found".into()))?
        };
        let basis_trace = (0..n)
            .map(|i| {
                let mut acc = 0u32;
                let mut a = poly::powmod(&[0, 1], i as u128, &modulus, p);
                for _ in 0..n {
                    acc = (acc + a.first().copied().unwrap_or(0)) % p;
                    a = poly::powmod(&a, p as u128, &modulus, p);
                }
                // the trace is in F_p, so only the constant coordinate can be nonzero
                acc
            })
            .collect();
        let ctx = FieldCtx {
            p,
            n,
            q,
            modulus,
            primitive: FFElem(primitive),
            pows,
            digits: digit_tables(p),
            basis_trace,
            tables: OnceLock::new(),
        };
        if q <= EAGER_TABLE_LIMIT {
            ctx.tables();
        }
        Ok(Arc::new(ctx))
    }

    /// Builds F_{p^n} from its Conway polynomial.
    pub fn conway(p: u32, n: u32) -> Result<Arc<FieldCtx>> {
        if !poly::is_prime(p as u64) {
            return Err(Error::pre(format!("p = {p} is not prime")));
        }
        Self::new(p, n, conway::conway_polynomial(p, n)?)
    }

    /// Builds a field from a spec string such as `p=3 n=4 mod=[2,1,0,0,1]`.
    pub fn from_spec(s: &str) -> Result<Arc<FieldCtx>> {
        FieldSpec::parse(s)?.build()
    }

    fn tables(&self) -> Option<&LogTables> {
        self.tables
            .get_or_init(|| (self.q <= TABLE_LIMIT).then(|| self.build_tables()))
            .as_ref()
    }

    fn build_tables(&self) -> LogTables {
        let q = self.q as usize;
        let m = q - 1;
        let mut exp = vec![0u32; 2 * m.max(1)];
        let mut log = vec![0u32; q];
        let mut cur = 1u32;
        for (i, slot) in exp.iter_mut().enumerate().take(m) {
            *slot = cur;
            log[cur as usize] = i as u32;
            cur = self.mul_poly(cur, self.primitive.0);
        }
        for i in m..2 * m {
            exp[i] = exp[i - m];
        }
        let mut trace = vec![0u8; q];
        for x in 0..q as u32 {
            trace[x as usize] = self.trace_linear(x) as u8;
        }
        LogTables { exp, log, trace }
    }

    fn trace_linear(&self, mut x: u32) -> u32 {
        let mut acc = 0u32;
        for &t in &self.basis_trace {
            acc += (x % self.p) * t;
            x /= self.p;
        }
        acc % self.p
    }

    fn mul_poly(&self, x: u32, y: u32) -> u32 {
        let a = self.coeffs(FFElem(x));
        let b = self.coeffs(FFElem(y));
        let r = poly::mulmod(&a, &b, &self.modulus, self.p);
        self.pack(&r)
    }

    fn pack(&self, c: &[u32]) -> u32 {
        c.iter().rev().fold(0u32, |acc, &d| acc * self.p + d)
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn n(&self) -> u32 {
        self.n
    }

    /// Field size p^n.
    #[inline]
    pub fn size(&self) -> u32 {
        self.q
    }

    /// Monic modulus, low-to-high coefficients.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn spec(&self) -> FieldSpec {
        FieldSpec {
            p: self.p,
            n: self.n,
            modulus: Some(self.modulus.clone()),
        }
    }

    /// The fixed primitive element.
    #[inline]
    pub fn primitive(&self) -> FFElem {
        self.primitive
    }

    /// The class of x modulo the modulus (the polynomial-basis generator).
    pub fn root(&self) -> FFElem {
        if self.n == 1 {
            FFElem((self.p - self.modulus[0]) % self.p)
        } else {
            FFElem(self.p)
        }
    }

    /// Element with the given index.
    pub fn elem(&self, index: u32) -> Result<FFElem> {
        if index < self.q {
            Ok(FFElem(index))
        } else {
            Err(Error::pre(format!(
                "index {index} outside a field of size {}",
                self.q
            )))
        }
    }

    /// Embeds an integer into the prime subfield.
    pub fn from_int(&self, c: i64) -> FFElem {
        FFElem(c.rem_euclid(self.p as i64) as u32)
    }

    /// Element from polynomial-basis coordinates (missing high ones are zero).
    pub fn from_coeffs(&self, c: &[u32]) -> Result<FFElem> {
        if c.len() > self.n as usize || c.iter().any(|&d| d >= self.p) {
            return Err(Error::pre(format!(
                "{c:?} is not a coordinate vector of F_{}^{}",
                self.p, self.n
            )));
        }
        Ok(FFElem(self.pack(c)))
    }

    /// Polynomial-basis coordinates, length n.
    pub fn coeffs(&self, x: FFElem) -> Vec<u32> {
        let mut v = x.0;
        (0..self.n)
            .map(|_| {
                let d = v % self.p;
                v /= self.p;
                d
            })
            .collect()
    }

    /// All elements in enumeration order.
    pub fn elements(&self) -> impl Iterator<Item = FFElem> + '_ {
        (0..self.q).map(FFElem)
    }

    #[inline]
    pub fn add(&self, x: FFElem, y: FFElem) -> FFElem {
        let t = &*self.digits;
        if self.q <= t.base {
            return FFElem(t.add[(x.0 * t.base + y.0) as usize] as u32);
        }
        let (mut a, mut b) = (x.0, y.0);
        let mut r = 0u32;
        let mut scale = 1u32;
        while a != 0 || b != 0 {
            let d = t.add[((a % t.base) * t.base + b % t.base) as usize] as u32;
            r += d * scale;
            a /= t.base;
            b /= t.base;
            scale = scale.wrapping_mul(t.base);
        }
        FFElem(r)
    }

    #[inline]
    pub fn neg(&self, x: FFElem) -> FFElem {
        let t = &*self.digits;
        if self.q <= t.base {
            return FFElem(t.neg[x.0 as usize] as u32);
        }
        let mut a = x.0;
        let mut r = 0u32;
        let mut scale = 1u32;
        while a != 0 {
            r += t.neg[(a % t.base) as usize] as u32 * scale;
            a /= t.base;
            scale = scale.wrapping_mul(t.base);
        }
        FFElem(r)
    }

    #[inline]
    pub fn sub(&self, x: FFElem, y: FFElem) -> FFElem {
        self.add(x, self.neg(y))
    }

    /// Multiplies by an element of the prime field given as a residue.
    pub fn scale(&self, c: u32, x: FFElem) -> FFElem {
        match c % self.p {
            0 => FFElem::ZERO,
            1 => x,
            c if c == self.p - 1 => self.neg(x),
            c => self.mul(self.from_int(c as i64), x),
        }
    }

    #[inline]
    pub fn mul(&self, x: FFElem, y: FFElem) -> FFElem {
        if x.0 == 0 || y.0 == 0 {
            return FFElem::ZERO;
        }
        match self.tables() {
            Some(t) => FFElem(t.exp[(t.log[x.0 as usize] + t.log[y.0 as usize]) as usize]),
            None => FFElem(self.mul_poly(x.0, y.0)),
        }
    }

    pub fn inv(&self, x: FFElem) -> Result<FFElem> {
        if x.is_zero() {
            return Err(Error::ZeroInverse);
        }
        Ok(self.pow(x, (self.q - 2) as u128))
    }

    pub fn div(&self, x: FFElem, y: FFElem) -> Result<FFElem> {
        Ok(self.mul(x, self.inv(y)?))
    }

    /// x^e. For nonzero x the exponent is reduced mod p^n - 1; 0^0 = 1.
    pub fn pow(&self, x: FFElem, e: u128) -> FFElem {
        if e == 0 {
            return FFElem::ONE;
        }
        if x.is_zero() {
            return FFElem::ZERO;
        }
        let m = (self.q - 1) as u128;
        let e = (e % m) as u64;
        match self.tables() {
            Some(t) => {
                let l = t.log[x.0 as usize] as u64;
                FFElem(t.exp[((l * e) % m as u64) as usize])
            }
            None => {
                let r = poly::powmod(&self.coeffs(x), e as u128, &self.modulus, self.p);
                FFElem(self.pack(&r))
            }
        }
    }

    /// x^e for a signed exponent; negative exponents need x != 0.
    pub fn pow_signed(&self, x: FFElem, e: i128) -> Result<FFElem> {
        if e >= 0 {
            return Ok(self.pow(x, e as u128));
        }
        if x.is_zero() {
            return Err(Error::ZeroInverse);
        }
        let m = (self.q - 1) as i128;
        Ok(self.pow(x, e.rem_euclid(m) as u128))
    }

    /// primitive^m for any integer m.
    pub fn gen_pow(&self, m: i64) -> FFElem {
        let e = (m as i128).rem_euclid((self.q - 1) as i128) as u128;
        self.pow(self.primitive, e)
    }

    /// Discrete logarithm to the base of the primitive element.
    pub fn log(&self, x: FFElem) -> Option<u32> {
        if x.is_zero() {
            return None;
        }
        match self.tables() {
            Some(t) => Some(t.log[x.0 as usize]),
            None => {
                let mut cur = FFElem::ONE;
                for i in 0..self.q - 1 {
                    if cur == x {
                        return Some(i);
                    }
                    cur = self.mul(cur, self.primitive);
                }
                None
            }
        }
    }

    /// primitive^e for 0 <= e < 2(p^n - 1), via the exp table when present.
    #[inline]
    pub(crate) fn exp_raw(&self, e: usize) -> FFElem {
        match self.tables() {
            Some(t) => FFElem(t.exp[e]),
            None => self.gen_pow(e as i64),
        }
    }

    /// Frobenius power x^{p^e}, with e taken mod n (negative allowed).
    pub fn frobenius(&self, x: FFElem, e: i64) -> FFElem {
        let e = e.rem_euclid(self.n as i64) as u32;
        if e == 0 || x.is_zero() {
            return x;
        }
        self.pow(x, self.pows[e as usize] as u128)
    }

    /// Absolute trace Tr_1^n(x) as a residue in [0, p).
    #[inline]
    pub fn trace(&self, x: FFElem) -> u32 {
        match self.tables() {
            Some(t) => t.trace[x.0 as usize] as u32,
            None => self.trace_linear(x.0),
        }
    }

    /// Relative trace Tr_k^n(x) = sum_{i < n/k} x^{p^{ik}}.
    pub fn rel_trace(&self, x: FFElem, k: u32) -> Result<FFElem> {
        if k == 0 || !self.n.is_multiple_of(k) {
            return Err(Error::pre(format!("{k} does not divide n = {}", self.n)));
        }
        let mut acc = FFElem::ZERO;
        let mut y = x;
        for _ in 0..self.n / k {
            acc = self.add(acc, y);
            y = self.frobenius(y, k as i64);
        }
        Ok(acc)
    }

    /// True iff x lies in the subfield F_{p^k} (k must divide n).
    pub fn in_subfield(&self, x: FFElem, k: u32) -> bool {
        k != 0 && self.n.is_multiple_of(k) && self.frobenius(x, k as i64) == x
    }

    /// The elements of the subfield F_{p^k}, sorted by index.
    pub fn subfield_elements(&self, k: u32) -> Result<Vec<FFElem>> {
        if k == 0 || !self.n.is_multiple_of(k) {
            return Err(Error::pre(format!("{k} does not divide n = {}", self.n)));
        }
        let sub = self.p.pow(k) - 1;
        let step = ((self.q - 1) / sub) as i64;
        let mut v: Vec<FFElem> = std::iter::once(FFElem::ZERO)
            .chain((0..sub as i64).map(|i| self.gen_pow(i * step)))
            .collect();
        v.sort();
        Ok(v)
    }

    /// Positive divisors of n, ascending.
    pub fn divisors(&self) -> Vec<u32> {
        (1..=self.n).filter(|d| self.n.is_multiple_of(*d)).collect()
    }

    /// The polynomial basis a^0, ..., a^{n-1}.
    pub fn basis(&self) -> Vec<FFElem> {
        (0..self.n).map(|i| FFElem(self.pows[i as usize])).collect()
    }

    /// Gram matrix Tr(a^i a^j) of the polynomial basis.
    pub fn gram_matrix(&self) -> Vec<Vec<u32>> {
        let b = self.basis();
        b.iter()
            .map(|&x| b.iter().map(|&y| self.trace(self.mul(x, y))).collect())
            .collect()
    }

    /// Trace-dual basis: Tr(a^i * dual[j]) = [i == j].
    pub fn dual_basis(&self) -> Result<Vec<FFElem>> {
        let g = self.gram_matrix();
        let inv = invert_mod_p(&g, self.p)
            .ok_or_else(|| Error::Inconsistency("trace form is degenerate".into()))?;
        let n = self.n as usize;
        Ok((0..n)
            .map(|j| {
                let coords: Vec<u32> = (0..n).map(|k| inv[k][j]).collect();
                FFElem(self.pack(&coords))
            })
            .collect())
    }

    /// Index of the vector (Tr(a^0 y), ..., Tr(a^{n-1} y)) in F_p^n.
    ///
    /// Under this map Tr(x y) becomes the dot product of the coordinates of
    /// x with the returned vector.
    pub fn trace_coords(&self, y: FFElem) -> u32 {
        let mut acc = 0u32;
        let mut b = y;
        for i in 0..self.n as usize {
            acc += self.trace(b) * self.pows[i];
            b = self.mul(b, self.root());
        }
        acc
    }
}

/// Inverts a square matrix over F_p, or returns None if singular.
pub(crate) fn invert_mod_p(m: &[Vec<u32>], p: u32) -> Option<Vec<Vec<u32>>> {
    let n = m.len();
    let mut a: Vec<Vec<u32>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| (i == j) as u32));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_multiple_of(p))?;
        a.swap(col, piv);
        let inv = poly::inv_mod_p(a[col][col], p);
        for v in a[col].iter_mut() {
            *v = *v * inv % p;
        }
        for r in 0..n {
            if r != col && a[r][col] != 0 {
                let f = a[r][col];
                for c in 0..2 * n {
                    a[r][c] = (a[r][c] + p * p - f * a[col][c] % p) % p;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}
