//! Univariate and relative trace forms.

use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;

use super::PFunction;
use crate::error::{Error, Result};
use crate::gf::{FFElem, FieldCtx};

/// Largest field handled by the quadratic-time interpolation.
pub const UNIVARIATE_LIMIT: u32 = 59049;

/// Base-p digit sum of `e`.
pub fn p_weight(mut e: u64, p: u32) -> u32 {
    let mut w = 0;
    while e > 0 {
        w += (e % p as u64) as u32;
        e /= p as u64;
    }
    w
}

/// Cyclotomic coset leaders of p modulo p^n - 1, with class sizes.
///
/// Covers exponents 0..p^n-1; the exponent p^n - 1 is handled separately.
pub fn coset_leaders(p: u32, n: u32) -> Vec<(u64, u32)> {
    let m = (p as u64).pow(n) - 1;
    let mut seen = vec![false; m as usize];
    let mut out = Vec::new();
    for j in 0..m {
        if seen[j as usize] {
            continue;
        }
        let mut size = 0;
        let mut e = j;
        loop {
            seen[e as usize] = true;
            size += 1;
            e = e * p as u64 % m;
            if e == j {
                break;
            }
        }
        out.push((j, size));
    }
    out
}

/// Coefficients a_0..a_{q-1} with f(x) = sum a_i x^i for every x.
///
/// Uses a_i = -sum_{x != 0} f(x) x^{-i} for 0 < i < q-1 (only on coset
/// leaders; a_{pi} = a_i^p fills the rest) and a_{q-1} = -sum_x f(x).
pub fn truth_to_univariate(f: &PFunction) -> Result<Vec<FFElem>> {
    let ctx = f.ctx().clone();
    let q = ctx.size();
    if q > UNIVARIATE_LIMIT {
        return Err(Error::Budget {
            what: "interpolation field size".into(),
            actual: q as u64,
            limit: UNIVARIATE_LIMIT as u64,
        });
    }
    let p = ctx.p();
    let m = (q - 1) as usize;
    let mut a = vec![FFElem::ZERO; q as usize];
    a[0] = ctx.from_int(f.at(FFElem::ZERO) as i64);
    let total: u32 = f.values().iter().map(|&v| v as u32).sum::<u32>() % p;
    a[m] = ctx.neg(ctx.from_int(total as i64));
    // f along the exponent axis: fv[k] = f(g^k)
    let fv: Vec<u8> = (0..m).map(|k| f.at(ctx.exp_raw(k)) as u8).collect();
    let leaders: Vec<(u64, u32)> = coset_leaders(p, ctx.n())
        .into_iter()
        .filter(|&(j, _)| j != 0)
        .collect();
    let coeff_of = |i: usize| -> FFElem {
        let mut acc = vec![FFElem::ZERO; p as usize];
        let mut e = 0usize;
        for &v in &fv {
            if v != 0 {
                acc[v as usize] = ctx.add(acc[v as usize], ctx.exp_raw(e));
            }
            e = (e + m - i) % m;
        }
        let mut s = FFElem::ZERO;
        for (v, &x) in acc.iter().enumerate().skip(1) {
            s = ctx.add(s, ctx.scale(v as u32, x));
        }
        ctx.neg(s)
    };
    let computed: Vec<(u64, u32, FFElem)> = if q >= super::PAR_THRESHOLD {
        leaders
            .par_iter()
            .map(|&(j, o)| (j, o, coeff_of(j as usize)))
            .collect()
    } else {
        leaders
            .iter()
            .map(|&(j, o)| (j, o, coeff_of(j as usize)))
            .collect()
    };
    for (j, o, c) in computed {
        if ctx.frobenius(c, o as i64) != c {
            return Err(Error::Inconsistency(format!(
                "coefficient of x^{j} is outside F_{p}^{o}"
            )));
        }
        let mut e = j as usize;
        let mut v = c;
        for _ in 0..o {
            a[e] = v;
            e = e * p as usize % m;
            v = ctx.frobenius(v, 1);
        }
    }
    Ok(a)
}

/// Evaluates sum a_i x^i; fails if some value leaves the prime field.
pub fn univariate_eval(ctx: &Arc<FieldCtx>, coeffs: &[FFElem]) -> Result<PFunction> {
    let q = ctx.size() as usize;
    if coeffs.len() != q {
        return Err(Error::pre(format!(
            "expected {q} coefficients, got {}",
            coeffs.len()
        )));
    }
    let m = q - 1;
    let nz: Vec<(usize, usize)> = coeffs
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, &c)| (i, ctx.log(c).unwrap_or(0) as usize))
        .collect();
    let value_at = |x: u32| -> Result<u8> {
        let s = if x == 0 {
            coeffs[0]
        } else {
            let k = ctx.log(FFElem(x)).unwrap_or(0) as usize;
            nz.iter().fold(FFElem::ZERO, |acc, &(i, l)| {
                ctx.add(acc, ctx.exp_raw((l + k * (i % m) % m) % m))
            })
        };
        if s.index() >= ctx.p() {
            return Err(Error::Inconsistency(format!(
                "value at element {x} is not in F_{}",
                ctx.p()
            )));
        }
        Ok(s.index() as u8)
    };
    let values: Vec<u8> = (0..q as u32).map(value_at).collect::<Result<_>>()?;
    PFunction::new(ctx.clone(), values)
}

/// One term Tr_{o(j)}(a_j x^j) of a relative trace form.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct RtfEntry {
    pub leader: u64,
    /// o(j): the size of the cyclotomic class of j.
    pub class_size: u32,
    pub coef: FFElem,
}

/// f(x) = sum_{j in leaders} Tr_{o(j)}(a_j x^j) + a_{q-1} x^{q-1}.
#[derive(Clone, Debug)]
pub struct RelativeTraceForm {
    ctx: Arc<FieldCtx>,
    entries: Vec<RtfEntry>,
    top_coeff: u32,
}

impl RelativeTraceForm {
    pub fn from_function(f: &PFunction) -> Result<RelativeTraceForm> {
        let ctx = f.ctx().clone();
        let a = truth_to_univariate(f)?;
        let p = ctx.p();
        let entries = coset_leaders(p, ctx.n())
            .into_iter()
            .filter(|&(j, _)| !a[j as usize].is_zero())
            .map(|(j, o)| RtfEntry {
                leader: j,
                class_size: o,
                coef: a[j as usize],
            })
            .collect();
        let top = a[a.len() - 1];
        if top.index() >= p {
            return Err(Error::Inconsistency("top coefficient outside F_p".into()));
        }
        Ok(RelativeTraceForm {
            ctx,
            entries,
            top_coeff: top.index(),
        })
    }

    pub fn ctx(&self) -> &Arc<FieldCtx> {
        &self.ctx
    }

    pub fn entries(&self) -> &[RtfEntry] {
        &self.entries
    }

    pub fn top_coeff(&self) -> u32 {
        self.top_coeff
    }

    /// Entries whose exponent has p-weight at least 2.
    pub fn nonlinear_entries(&self) -> Vec<RtfEntry> {
        let p = self.ctx.p();
        self.entries
            .iter()
            .copied()
            .filter(|e| p_weight(e.leader, p) >= 2)
            .collect()
    }

    /// Number of nonlinear terms, counting the x^{q-1} term when present.
    pub fn nonlinear_term_count(&self) -> usize {
        self.nonlinear_entries().len() + (self.top_coeff != 0) as usize
    }

    /// Expands back to the full univariate coefficient list.
    pub fn to_univariate(&self) -> Vec<FFElem> {
        let ctx = &self.ctx;
        let q = ctx.size() as usize;
        let m = q - 1;
        let mut a = vec![FFElem::ZERO; q];
        for e in &self.entries {
            let mut j = e.leader as usize;
            let mut v = e.coef;
            for _ in 0..e.class_size {
                a[j] = v;
                j = j * ctx.p() as usize % m.max(1);
                v = ctx.frobenius(v, 1);
            }
        }
        a[m] = ctx.from_int(self.top_coeff as i64);
        a
    }

    pub fn eval(&self) -> Result<PFunction> {
        univariate_eval(&self.ctx, &self.to_univariate())
    }
}

impl fmt::Display for RelativeTraceForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ctx = &self.ctx;
        let mut parts: Vec<String> = self
            .entries
            .iter()
            .map(|e| {
                let c = if e.coef == FFElem::ONE {
                    String::new()
                } else {
                    format!("g^{}*", ctx.log(e.coef).unwrap_or(0))
                };
                format!("Tr_{}({c}x^{})", e.class_size, e.leader)
            })
            .collect();
        if self.top_coeff != 0 {
            parts.push(format!("{}*x^{}", self.top_coeff, ctx.size() - 1));
        }
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}
