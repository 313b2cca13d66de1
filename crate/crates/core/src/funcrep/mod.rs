//! Representations of p-ary functions F_{p^n} -> F_p.
//!
//! [`PFunction`] is the truth table every analysis works on. Trace forms,
//! relative trace forms, univariate coefficient lists and the ANF convert
//! to and from it.

mod anf;
pub mod spec;
mod univariate;

use std::fmt;
use std::sync::Arc;

use rand::Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::gf::{FFElem, FieldCtx};

pub use anf::Anf;
pub use spec::{Coef, FunctionSpec, ParsedFunction};
pub use univariate::{
    coset_leaders, p_weight, truth_to_univariate, univariate_eval, RelativeTraceForm,
};

/// Fields at least this large are evaluated in parallel.
pub(crate) const PAR_THRESHOLD: u32 = 1 << 12;

/// A function F_{p^n} -> F_p stored as its truth table.
#[derive(Clone)]
pub struct PFunction {
    ctx: Arc<FieldCtx>,
    values: Vec<u8>,
}

impl fmt::Debug for PFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "PFunction(p={}, n={}, {:?})",
            self.ctx.p(),
            self.ctx.n(),
            self.values
        )
    }
}

impl PartialEq for PFunction {
    fn eq(&self, o: &PFunction) -> bool {
        self.values == o.values
            && self.ctx.p() == o.ctx.p()
            && self.ctx.modulus() == o.ctx.modulus()
    }
}

impl Eq for PFunction {}

impl PFunction {
    /// Wraps a truth table indexed by element index.
    pub fn new(ctx: Arc<FieldCtx>, values: Vec<u8>) -> Result<PFunction> {
        if values.len() != ctx.size() as usize {
            return Err(Error::pre(format!(
                "truth table has {} entries, field has {}",
                values.len(),
                ctx.size()
            )));
        }
        if let Some(v) = values.iter().find(|&&v| v as u32 >= ctx.p()) {
            return Err(Error::pre(format!(
                "value {v} is not a residue mod {}",
                ctx.p()
            )));
        }
        Ok(PFunction { ctx, values })
    }

    pub fn zero(ctx: Arc<FieldCtx>) -> PFunction {
        let q = ctx.size() as usize;
        PFunction {
            ctx,
            values: vec![0; q],
        }
    }

    /// Tabulates `f` at every element.
    pub fn from_fn(ctx: Arc<FieldCtx>, f: impl Fn(FFElem) -> u32 + Sync) -> PFunction {
        let p = ctx.p();
        let values = if ctx.size() >= PAR_THRESHOLD {
            (0..ctx.size())
                .into_par_iter()
                .map(|i| (f(FFElem(i)) % p) as u8)
                .collect()
        } else {
            (0..ctx.size()).map(|i| (f(FFElem(i)) % p) as u8).collect()
        };
        PFunction { ctx, values }
    }

    /// Uniformly random truth table.
    pub fn random(ctx: Arc<FieldCtx>, rng: &mut impl Rng) -> PFunction {
        let p = ctx.p();
        let values = (0..ctx.size()).map(|_| rng.gen_range(0..p) as u8).collect();
        PFunction { ctx, values }
    }

    #[inline]
    pub fn ctx(&self) -> &Arc<FieldCtx> {
        &self.ctx
    }

    #[inline]
    pub fn values(&self) -> &[u8] {
        &self.values
    }

    #[inline]
    pub fn at(&self, x: FFElem) -> u32 {
        self.values[x.index() as usize] as u32
    }

    /// x -> f(x) + g(x).
    pub fn add(&self, g: &PFunction) -> Result<PFunction> {
        self.same_field(g)?;
        let p = self.ctx.p() as u8;
        let values = self
            .values
            .iter()
            .zip(&g.values)
            .map(|(a, b)| (a + b) % p)
            .collect();
        Ok(PFunction {
            ctx: self.ctx.clone(),
            values,
        })
    }

    /// x -> c f(x).
    pub fn scale(&self, c: u32) -> PFunction {
        let p = self.ctx.p();
        let values = self
            .values
            .iter()
            .map(|&v| ((v as u32 * c) % p) as u8)
            .collect();
        PFunction {
            ctx: self.ctx.clone(),
            values,
        }
    }

    /// x -> f(-x).
    pub fn reflect(&self) -> PFunction {
        let ctx = self.ctx.clone();
        PFunction::from_fn(ctx.clone(), |x| self.at(ctx.neg(x)))
    }

    /// x -> f(x) + Tr(c x) + e.
    pub fn add_affine(&self, c: FFElem, e: u32) -> PFunction {
        let ctx = self.ctx.clone();
        PFunction::from_fn(ctx.clone(), |x| self.at(x) + ctx.trace(ctx.mul(c, x)) + e)
    }

    pub(crate) fn same_field(&self, g: &PFunction) -> Result<()> {
        if self.ctx.p() != g.ctx.p() || self.ctx.modulus() != g.ctx.modulus() {
            return Err(Error::pre("functions live on different fields"));
        }
        Ok(())
    }

    /// D_a f(x) = f(x + a) - f(x).
    pub fn derivative(&self, a: FFElem) -> PFunction {
        let ctx = self.ctx.clone();
        let p = ctx.p();
        PFunction::from_fn(ctx.clone(), |x| self.at(ctx.add(x, a)) + p - self.at(x))
    }

    /// D_a D_b f(x) = f(x+a+b) - f(x+a) - f(x+b) + f(x).
    pub fn second_derivative(&self, a: FFElem, b: FFElem) -> PFunction {
        let ctx = self.ctx.clone();
        let p = ctx.p();
        let ab = ctx.add(a, b);
        PFunction::from_fn(ctx.clone(), |x| {
            self.at(ctx.add(x, ab)) + 2 * p - self.at(ctx.add(x, a)) - self.at(ctx.add(x, b))
                + self.at(x)
        })
    }

    /// Counts of each value 0..p.
    pub fn histogram(&self) -> Vec<u64> {
        let mut h = vec![0u64; self.ctx.p() as usize];
        for &v in &self.values {
            h[v as usize] += 1;
        }
        h
    }

    /// True iff every value of F_p is taken p^{n-1} times.
    pub fn is_balanced(&self) -> bool {
        let each = (self.ctx.size() / self.ctx.p()) as u64;
        self.histogram().iter().all(|&c| c == each)
    }

    /// The constant value, if the function is constant.
    pub fn constant_value(&self) -> Option<u32> {
        let v0 = self.values[0];
        self.values.iter().all(|&v| v == v0).then_some(v0 as u32)
    }

    /// Algebraic degree: total degree of the ANF.
    pub fn algebraic_degree(&self) -> u32 {
        Anf::from_truth(self).degree()
    }

    /// Algebraic degree from the univariate form: max p-weight of a
    /// nonzero coefficient. Quadratic in the field size.
    pub fn algebraic_degree_univariate(&self) -> Result<u32> {
        let u = truth_to_univariate(self)?;
        let p = self.ctx.p();
        Ok(u.iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, _)| p_weight(i as u64, p))
            .max()
            .unwrap_or(0))
    }

    pub fn to_anf(&self) -> Anf {
        Anf::from_truth(self)
    }

    pub fn to_relative_trace_form(&self) -> Result<RelativeTraceForm> {
        RelativeTraceForm::from_function(self)
    }
}

/// One term a x^d of a trace form.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct TraceTerm {
    pub coef: FFElem,
    pub exp: u64,
}

/// Tr_1^n(sum a_i x^{d_i}) + constant.
#[derive(Clone, Debug)]
pub struct TraceForm {
    ctx: Arc<FieldCtx>,
    terms: Vec<TraceTerm>,
    constant: u32,
}

impl TraceForm {
    /// Builds a trace form, merging repeated exponents.
    pub fn new(
        ctx: Arc<FieldCtx>,
        terms: impl IntoIterator<Item = (FFElem, u64)>,
        constant: u32,
    ) -> Result<TraceForm> {
        let q = ctx.size() as u64;
        let mut merged: Vec<TraceTerm> = Vec::new();
        for (coef, exp) in terms {
            if exp >= q {
                return Err(Error::pre(format!(
                    "exponent {exp} is not below the field size {q}"
                )));
            }
            if coef.index() >= q as u32 {
                return Err(Error::pre("coefficient is not an element of the field"));
            }
            match merged.iter_mut().find(|t| t.exp == exp) {
                Some(t) => t.coef = ctx.add(t.coef, coef),
                None => merged.push(TraceTerm { coef, exp }),
            }
        }
        merged.retain(|t| !t.coef.is_zero());
        let constant = constant % ctx.p();
        Ok(TraceForm {
            ctx,
            terms: merged,
            constant,
        })
    }

    pub fn ctx(&self) -> &Arc<FieldCtx> {
        &self.ctx
    }

    pub fn terms(&self) -> &[TraceTerm] {
        &self.terms
    }

    pub fn constant(&self) -> u32 {
        self.constant
    }

    /// Value at a single point.
    pub fn eval_at(&self, x: FFElem) -> u32 {
        let ctx = &self.ctx;
        let mut s = FFElem::ZERO;
        for t in &self.terms {
            s = ctx.add(s, ctx.mul(t.coef, ctx.pow(x, t.exp as u128)));
        }
        (ctx.trace(s) + self.constant) % ctx.p()
    }

    /// Truth table of the form.
    pub fn eval(&self) -> PFunction {
        let ctx = self.ctx.clone();
        let p = ctx.p();
        let m = (ctx.size() - 1) as u64;
        // Tr(a x^d) summed via discrete logs: x = g^k, a = g^l gives g^{l + k d}.
        let logs: Vec<(u64, u64)> = self
            .terms
            .iter()
            .map(|t| (ctx.log(t.coef).unwrap_or(0) as u64, t.exp % m.max(1)))
            .collect();
        let zero_val = self
            .terms
            .iter()
            .filter(|t| t.exp == 0)
            .fold(FFElem::ZERO, |acc, t| ctx.add(acc, t.coef));
        let at_zero = (ctx.trace(zero_val) + self.constant) % p;
        let c = self.constant;
        let tr_pow = |e: u64| ctx.trace(ctx.exp_raw(e as usize));
        let compute = |i: u32| -> u8 {
            if i == 0 {
                return at_zero as u8;
            }
            let k = ctx.log(FFElem(i)).unwrap_or(0) as u64;
            let mut acc = c;
            for &(l, d) in &logs {
                acc += tr_pow((l + k * d % m) % m);
            }
            (acc % p) as u8
        };
        let values = if ctx.size() >= PAR_THRESHOLD {
            (0..ctx.size()).into_par_iter().map(compute).collect()
        } else {
            (0..ctx.size()).map(compute).collect()
        };
        PFunction { ctx, values }
    }
}

impl fmt::Display for TraceForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ctx = &self.ctx;
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|t| {
                let coef = if t.coef == FFElem::ONE {
                    String::new()
                } else {
                    format!("g^{}*", ctx.log(t.coef).unwrap_or(0))
                };
                format!("{coef}x^{}", t.exp)
            })
            .collect();
        let body = if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join("+")
        };
        write!(f, "Tr({body})")?;
        if self.constant != 0 {
            write!(f, "+{}", self.constant)?;
        }
        Ok(())
    }
}
