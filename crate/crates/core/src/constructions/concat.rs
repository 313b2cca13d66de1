//! Bent concatenation f(x, y) = f_y(x) and its special form
//! f(x, y1, y2) = g_{y2}(x) + y1 . pi(y2).
//!
//! Outputs live on F_{p^{n+m}} with truth-table index idx(x) + p^n idx(y).
//! Duals are taken for the pairing Tr(x s) + y . t (trace on the inner
//! field, dot product on the outer coordinates).

use std::sync::Arc;

use crate::cyclo::{recognize_unit_times_power, CycInt};
use crate::error::{Error, Result};
use crate::funcrep::PFunction;
use crate::gf::{FFElem, FieldCtx};
use crate::walsh::{vector_walsh, walsh_fast, BentCertificate};

/// Slices f_y on a common inner field, y ranging over F_p^m in digit order.
#[derive(Clone, Debug)]
pub struct ConcatenationFamily {
    inner: Arc<FieldCtx>,
    m: u32,
    slices: Vec<PFunction>,
}

impl ConcatenationFamily {
    pub fn new(m: u32, slices: Vec<PFunction>) -> Result<ConcatenationFamily> {
        let first = slices.first().ok_or_else(|| Error::pre("empty family"))?;
        let inner = first.ctx().clone();
        let want = (inner.p() as usize)
            .checked_pow(m)
            .ok_or(Error::Overflow("family size"))?;
        if slices.len() != want {
            return Err(Error::pre(format!(
                "need p^m = {want} slices, got {}",
                slices.len()
            )));
        }
        if slices
            .iter()
            .any(|s| s.ctx().modulus() != inner.modulus() || s.ctx().p() != inner.p())
        {
            return Err(Error::pre("slices live on different fields"));
        }
        Ok(ConcatenationFamily { inner, m, slices })
    }

    pub fn inner(&self) -> &Arc<FieldCtx> {
        &self.inner
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn slices(&self) -> &[PFunction] {
        &self.slices
    }

    /// The concatenated function on F_{p^{n+m}}.
    pub fn function(&self) -> Result<PFunction> {
        let ctx = FieldCtx::conway(self.inner.p(), self.inner.n() + self.m)?;
        let values = self
            .slices
            .iter()
            .flat_map(|s| s.values().iter().copied())
            .collect();
        PFunction::new(ctx, values)
    }
}

/// Spectrum for the pairing Tr(x s) + y . t, indexed by idx(s) + p^n idx(t).
pub fn product_walsh(inner: &FieldCtx, m: u32, values: &[u8]) -> Vec<CycInt> {
    let p = inner.p();
    let q = inner.size() as usize;
    let t = vector_walsh(p, inner.n() + m, values);
    let outer = (p as usize).pow(m);
    let mut out = Vec::with_capacity(t.len());
    for ti in 0..outer {
        for s in 0..q {
            let u = inner.trace_coords(FFElem(s as u32)) as usize;
            out.push(t[u + q * ti].clone());
        }
    }
    out
}

fn certify(f: &PFunction, what: &str) -> Result<BentCertificate> {
    let s = walsh_fast(f);
    if !s.is_bent() {
        return Err(Error::pre(format!("{what} is not bent")));
    }
    s.certificate()
}

/// Signs and dual values of a dot-product spectrum, if bent.
fn vector_certificate(spec: &[CycInt], n: u32) -> Option<(Vec<i8>, Vec<u8>)> {
    let mut signs = Vec::with_capacity(spec.len());
    let mut dual = Vec::with_capacity(spec.len());
    for w in spec {
        let u = recognize_unit_times_power(w, n)?;
        signs.push(u.sign);
        dual.push(u.dual_value as u8);
    }
    Some((signs, dual))
}

#[derive(Clone, Debug)]
pub struct ConcatReport {
    pub function: PFunction,
    /// u_y(s) independent of y for every s.
    pub units_constant: bool,
    /// phi_s(y) = f*_y(s) bent for every s.
    pub phi_bent: bool,
    /// Construction verdict: units constant and every phi_s bent.
    pub bent: bool,
    /// Direct check on the product spectrum.
    pub spectral_bent: bool,
    /// f*(s, t) = phi*_s(t) when the construction applies.
    pub dual: Option<PFunction>,
    /// u(s) v_s(t) constant, when the construction applies.
    pub weakly_regular: Option<bool>,
}

pub fn bent_concatenation(fam: &ConcatenationFamily) -> Result<ConcatReport> {
    let inner = fam.inner();
    let (p, n, m) = (inner.p(), inner.n(), fam.m());
    let q = inner.size() as usize;
    let certs = fam
        .slices()
        .iter()
        .enumerate()
        .map(|(y, s)| certify(s, &format!("slice {y}")))
        .collect::<Result<Vec<_>>>()?;
    let function = fam.function()?;
    let spectral_bent = {
        let spec = product_walsh(inner, m, function.values());
        let total = (q as i128) * (p as i128).pow(m);
        spec.iter().all(|w| w.norm_sq().as_integer() == Some(total))
    };

    let units_constant = (0..q).all(|s| certs.iter().all(|c| c.signs[s] == certs[0].signs[s]));
    let outer = certs.len();
    let mut phi_bent = true;
    let mut dual_vals = vec![0u8; q * outer];
    let mut overall_signs = Vec::with_capacity(q * outer);
    for s in 0..q {
        let phi: Vec<u8> = certs.iter().map(|c| c.dual.values()[s]).collect();
        match vector_certificate(&vector_walsh(p, m, &phi), m) {
            Some((signs, dual)) => {
                for (t, (&e, &d)) in signs.iter().zip(&dual).enumerate() {
                    dual_vals[s + q * t] = d;
                    overall_signs.push(e * certs[0].signs[s]);
                }
            }
            None => phi_bent = false,
        }
    }
    let applies = units_constant && phi_bent;
    let (dual, weakly_regular) = if applies {
        let ctx = function.ctx().clone();
        let wr = overall_signs.iter().all(|&s| s == overall_signs[0]);
        (Some(PFunction::new(ctx, dual_vals)?), Some(wr))
    } else {
        (None, None)
    };
    let _ = n;
    Ok(ConcatReport {
        function,
        units_constant,
        phi_bent,
        bent: applies,
        spectral_bent,
        dual,
        weakly_regular,
    })
}

#[derive(Clone, Debug)]
pub struct SpecialFormOutput {
    pub function: PFunction,
    /// f*(s, t1, t2) = g*_{c}(s) - t2 . c with c = pi^{-1}(t1).
    pub dual: PFunction,
}

fn digits(mut v: usize, p: usize, len: u32) -> Vec<usize> {
    (0..len)
        .map(|_| {
            let d = v % p;
            v /= p;
            d
        })
        .collect()
}

fn dot(u: usize, v: usize, p: usize, len: u32) -> usize {
    digits(u, p, len)
        .iter()
        .zip(digits(v, p, len))
        .map(|(a, b)| a * b)
        .sum::<usize>()
        % p
}

/// f(x, y1, y2) = g_{y2}(x) + y1 . pi(y2) on F_p^{n+2d}.
pub fn mm_special_form(g: &[PFunction], d: u32, pi: &[u32]) -> Result<SpecialFormOutput> {
    if d == 0 {
        return Err(Error::pre("d must be at least 1"));
    }
    let first = g.first().ok_or_else(|| Error::pre("empty family"))?;
    let inner = first.ctx().clone();
    let p = inner.p() as usize;
    let r = p.checked_pow(d).ok_or(Error::Overflow("family size"))?;
    if g.len() != r || pi.len() != r {
        return Err(Error::pre(format!(
            "need p^d = {r} slices and permutation entries"
        )));
    }
    let mut inv = vec![usize::MAX; r];
    for (c, &v) in pi.iter().enumerate() {
        if v as usize >= r || inv[v as usize] != usize::MAX {
            return Err(Error::pre("pi is not a permutation of F_p^d"));
        }
        inv[v as usize] = c;
    }
    if g.iter().any(|s| s.ctx().modulus() != inner.modulus()) {
        return Err(Error::pre("slices live on different fields"));
    }
    let certs = g
        .iter()
        .enumerate()
        .map(|(c, s)| certify(s, &format!("slice {c}")))
        .collect::<Result<Vec<_>>>()?;

    let q = inner.size() as usize;
    let ctx = FieldCtx::conway(inner.p(), inner.n() + 2 * d)?;
    let mut values = vec![0u8; q * r * r];
    let mut dual = vec![0u8; q * r * r];
    for y2 in 0..r {
        for y1 in 0..r {
            let lin = dot(y1, pi[y2] as usize, p, d);
            let base = q * (y1 + r * y2);
            for x in 0..q {
                values[base + x] = ((g[y2].values()[x] as usize + lin) % p) as u8;
            }
        }
    }
    for t2 in 0..r {
        for t1 in 0..r {
            let c = inv[t1];
            let lin = dot(t2, c, p, d);
            let base = q * (t1 + r * t2);
            for s in 0..q {
                dual[base + s] = ((certs[c].dual.values()[s] as usize + p - lin) % p) as u8;
            }
        }
    }
    Ok(SpecialFormOutput {
        function: PFunction::new(ctx.clone(), values)?,
        dual: PFunction::new(ctx, dual)?,
    })
}

/// The d = 1, pi = identity case: g_{x_{n+2}}(x) + x_{n+1} x_{n+2}.
pub fn construction1_k1(g: &[PFunction]) -> Result<PFunction> {
    let p = g.first().map(|s| s.ctx().p()).unwrap_or(0);
    let id: Vec<u32> = (0..p).collect();
    Ok(mm_special_form(g, 1, &id)?.function)
}
