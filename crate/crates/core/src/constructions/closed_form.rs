//! Explicit Walsh values and dual of the trinomial for odd k,
//! j in {0, 2k} and t = (3^k - 1)/2.
//!
//! Coordinates over F_{3^k}: y = y_0 + y_1 a + y_2 a^2 + y_3 a^3, read off as
//! y_0 = Tr^n_k(y), y_3 = Tr^n_k(a y), y_2 = Tr^n_k(a^2 y), y_1 = Tr^n_k(a^3 y).

use serde::Serialize;

use super::trinomial::{Trinomial, TrinomialParams};
use crate::cyclo::CycInt;
use crate::error::{Error, Result};
use crate::funcrep::{PFunction, RelativeTraceForm};
use crate::gf::{FFElem, FieldCtx};
use crate::walsh::walsh_fast;

/// Which formula produced a value.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    ZeroY0,
    Degenerate,
    Generic,
}

/// Evaluator for W_f(-y).
pub struct ClosedForm {
    tri: Trinomial,
    s_k: FFElem,
    s_j: FFElem,
    big_b: FFElem,
}

impl ClosedForm {
    pub fn new(params: TrinomialParams) -> Result<ClosedForm> {
        if !params.has_closed_form() {
            return Err(Error::pre(
                "closed form needs k odd, j in {0, 2k} and t = (3^k - 1)/2",
            ));
        }
        let tri = Trinomial::new(params)?;
        let ctx = &tri.ctx;
        let sign = |e: u32| ctx.from_int(if e.is_multiple_of(2) { 1 } else { -1 });
        let s_k = sign((params.k - 1) / 2);
        let s_j = sign(params.j / 2);
        let big_b = ctx.mul(ctx.inv(tri.b)?, ctx.pow(tri.a, 20));
        if !ctx.in_subfield(big_b, params.k) {
            return Err(Error::Inconsistency("b^{-1} a^20 is not in F_{3^k}".into()));
        }
        Ok(ClosedForm {
            tri,
            s_k,
            s_j,
            big_b,
        })
    }

    pub fn trinomial(&self) -> &Trinomial {
        &self.tri
    }

    /// (y_0, y_1, y_2, y_3).
    pub fn coordinates(&self, y: FFElem) -> [FFElem; 4] {
        let ctx = &self.tri.ctx;
        let k = self.tri.params.k;
        let a = self.tri.a;
        let rt = |x: FFElem| ctx.rel_trace(x, k).expect("k divides n");
        let a2 = ctx.mul(a, a);
        [
            rt(y),
            rt(ctx.mul(ctx.mul(a2, a), y)),
            rt(ctx.mul(a2, y)),
            rt(ctx.mul(a, y)),
        ]
    }

    /// Quadratic character of F_{3^k}.
    fn eta(&self, z: FFElem) -> i128 {
        let ctx = &self.tri.ctx;
        let e = (3u128.pow(self.tri.params.k) - 1) / 2;
        if ctx.pow(z, e) == FFElem::ONE {
            1
        } else {
            -1
        }
    }

    /// Returns (W_f(-y), branch).
    pub fn walsh_at_neg(&self, y: FFElem) -> (CycInt, Branch) {
        let ctx = &self.tri.ctx;
        let big = 9i128.pow(self.tri.params.k);
        // Tr_k of a subfield element equals Tr_n, as n/k = 4 = 1 mod 3.
        let tr = |z: FFElem| ctx.trace(z) as i64;
        let (m, a, s) = (
            |x, y| ctx.mul(x, y),
            |x, y| ctx.add(x, y),
            |x, y| ctx.sub(x, y),
        );
        let [y0, y1, y2, y3] = self.coordinates(y);
        let (sk, sj, b) = (self.s_k, self.s_j, self.big_b);
        let binv = ctx.inv(b).expect("B is nonzero");

        if y0.is_zero() {
            let u = a(m(a(y1, y3), a(y1, y3)), m(a(y1, y2), a(y1, y2)));
            let e = tr(m(m(sj, b), u));
            return (CycInt::omega_pow(3, e).scalar_mul(-big), Branch::ZeroY0);
        }
        let sby0 = m(m(sk, b), y0);
        let sjbi = m(sj, binv);
        let big_a = s(sby0, sjbi);
        let a2 = ctx.neg(a(sby0, sjbi));
        let h = ctx.neg(sby0);
        let l1 = a(a(m(sj, y0), y1), y3);
        let l2 = a(s(m(m(sk, m(b, b)), m(y0, y0)), m(sj, y0)), a(y1, y2));
        let kk = a(a(sby0, m(m(sj, b), m(y0, y0))), m(m(b, y0), y1));

        if big_a.is_zero() {
            let x2 = m(m(sj, b), l1);
            let e = tr(a(a(m(a2, m(x2, x2)), m(l2, x2)), kk));
            return (CycInt::omega_pow(3, e).scalar_mul(big), Branch::Degenerate);
        }
        let d = s(m(big_a, a2), m(h, h));
        let ainv = ctx.inv(big_a).expect("A is nonzero");
        let adinv = ctx.inv(m(big_a, d)).expect("A D is nonzero");
        let t = a(m(big_a, l2), m(h, l1));
        let e = tr(s(s(kk, m(m(l1, l1), ainv)), m(m(t, t), adinv)));
        (
            CycInt::omega_pow(3, e).scalar_mul(-big * self.eta(d)),
            Branch::Generic,
        )
    }
}

/// W_f(-y) for the closed-form parameter set.
pub fn trinomial_closed_form_walsh(params: TrinomialParams, y: FFElem) -> Result<CycInt> {
    Ok(ClosedForm::new(params)?.walsh_at_neg(y).0)
}

/// The dual of the trinomial, read from its fast spectrum.
pub fn trinomial_dual(tri: &Trinomial) -> Result<PFunction> {
    let s = walsh_fast(&tri.function());
    if !s.is_bent() {
        return Err(Error::Inconsistency(
            "trinomial spectrum is not bent".into(),
        ));
    }
    Ok(s.certificate()?.dual)
}

pub fn trinomial_dual_degree(params: TrinomialParams) -> Result<u32> {
    if !params.has_closed_form() {
        return Err(Error::pre(
            "dual degree is reported for k odd, j in {0, 2k}, t = (3^k - 1)/2",
        ));
    }
    Ok(trinomial_dual(&Trinomial::new(params)?)?.algebraic_degree())
}

impl ClosedForm {
    /// The function y -> poly(y_0, y_1, y_2, y_3).
    pub fn coordinate_function(&self, poly: impl Fn([u32; 4]) -> u32 + Sync) -> PFunction {
        let ctx = self.tri.ctx.clone();
        PFunction::from_fn(ctx, |y| poly(self.coordinates(y).map(|c| c.index())) % 3)
    }

    fn coordinate_table(&self) -> Vec<FFElem> {
        let ctx = &self.tri.ctx;
        let m = 3usize.pow(self.tri.params.k);
        let mut table = vec![FFElem::ZERO; ctx.size() as usize];
        for y in ctx.elements() {
            let c = self.coordinates(y);
            let i = c
                .iter()
                .rev()
                .fold(0, |acc, v| acc * m + v.index() as usize);
            table[i] = y;
        }
        table
    }
}

/// g(y) = h(y') where y' has coordinates (y_0, y_1 - y_2 - y_3, y_2 + y_3, y_3).
pub fn example1_substitution(cf: &ClosedForm, h: &PFunction) -> Result<PFunction> {
    let ctx = cf.trinomial().ctx.clone();
    if h.ctx().modulus() != ctx.modulus() || cf.trinomial().params.k != 1 {
        return Err(Error::pre("substitution is defined on the k = 1 field"));
    }
    let back = cf.coordinate_table();
    Ok(PFunction::from_fn(ctx.clone(), |y| {
        let [c0, c1, c2, c3] = cf.coordinates(y).map(|c| c.index() as usize);
        let moved = [c0, (c1 + 6 - c2 - c3) % 3, (c2 + c3) % 3, c3];
        h.at(back[moved[0] + 3 * moved[1] + 9 * moved[2] + 27 * moved[3]])
    }))
}

/// Relative trace form of y -> f*(-y) after the substitution, k = 1.
pub fn example1_dual_presentation(params: TrinomialParams) -> Result<RelativeTraceForm> {
    if params.k != 1 {
        return Err(Error::pre(
            "the presentation is defined for k = 1, j in {0, 2}, t = 1",
        ));
    }
    let cf = ClosedForm::new(params)?;
    let dual = trinomial_dual(cf.trinomial())?;
    example1_substitution(&cf, &dual.reflect())?.to_relative_trace_form()
}

/// The k = 1 trinomial in special-form coordinates.
#[derive(Clone, Debug)]
pub struct Decomposition {
    /// f~(x0, x1, x2, x3) = f(x0 + x1 a + x2 a^2 + (x1 + x2 - B x3) a^3), stored
    /// at index x1 + 3 x2 + 9 x0 + 27 x3 of the Conway field F_81.
    pub transformed: PFunction,
    /// g~_c(x1, x2) = f~(0, x1, x2, c) on the Conway field F_9.
    pub slices: Vec<PFunction>,
}

pub fn trinomial_k1_decomposition(params: TrinomialParams) -> Result<Decomposition> {
    if params.k != 1 {
        return Err(Error::pre("the decomposition is realized for k = 1"));
    }
    let cf = ClosedForm::new(params)?;
    let tri = cf.trinomial();
    let ctx = &tri.ctx;
    let f = tri.function();
    let b = cf.big_b.index();
    let point = |x: [u32; 4]| {
        let top = (x[1] + x[2] + 2 * b * x[3]) % 3;
        f.at(ctx
            .from_coeffs(&[x[0], x[1], x[2], top])
            .expect("digits below 3"))
    };
    let outer = FieldCtx::conway(3, 4)?;
    let transformed = PFunction::from_fn(outer, |e| {
        let i = e.index();
        point([i / 9 % 3, i % 3, i / 3 % 3, i / 27])
    });
    let inner = FieldCtx::conway(3, 2)?;
    let slices = (0..3)
        .map(|c| {
            PFunction::from_fn(inner.clone(), |e| {
                point([0, e.index() % 3, e.index() / 3, c])
            })
        })
        .collect();
    Ok(Decomposition {
        transformed,
        slices,
    })
}
