//! The ternary trinomial family
//! f(x) = Tr_n(x^{3^k+2} - x^{2*3^k+1} + b x^{3^j+1}), n = 4k,
//! with b = zeta^{t(3^k+1)/2} and zeta primitive in F_{3^{2k}}.

use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::funcrep::{PFunction, TraceForm};
use crate::gf::{FFElem, FieldCtx};

/// (k, j, t) with j of opposite parity to k and t odd.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TrinomialParams {
    pub k: u32,
    pub j: u32,
    pub t: u64,
}

impl TrinomialParams {
    pub fn new(k: u32, j: u32, t: u64) -> Result<TrinomialParams> {
        if k == 0 {
            return Err(Error::pre("k must be positive"));
        }
        if j >= 4 * k {
            return Err(Error::pre(format!(
                "j = {j} must lie in [0, 4k) = [0, {})",
                4 * k
            )));
        }
        if t.is_multiple_of(2) {
            return Err(Error::pre(format!("t = {t} must be odd")));
        }
        if j % 2 == k % 2 {
            let want = if k.is_multiple_of(2) { "odd" } else { "even" };
            return Err(Error::pre(format!(
                "j must be {want} when k is {}: got k = {k}, j = {j}",
                if k.is_multiple_of(2) { "even" } else { "odd" }
            )));
        }
        Ok(TrinomialParams { k, j, t })
    }

    pub fn n(&self) -> u32 {
        4 * self.k
    }

    /// True for k odd, j in {0, 2k}, t = (3^k - 1)/2.
    pub fn has_closed_form(&self) -> bool {
        self.k % 2 == 1
            && (self.j == 0 || self.j == 2 * self.k)
            && self.t == (3u64.pow(self.k) - 1) / 2
    }

    /// The closed-form parameters for odd k.
    pub fn closed_form(k: u32, j: u32) -> Result<TrinomialParams> {
        if k.is_multiple_of(2) || !(j == 0 || j == 2 * k) {
            return Err(Error::pre("closed form needs k odd and j in {0, 2k}"));
        }
        TrinomialParams::new(k, j, (3u64.pow(k) - 1) / 2)
    }
}

/// A realized instance: field, the root a of X^4 + X - 1, zeta and b.
#[derive(Clone, Debug)]
pub struct Trinomial {
    pub params: TrinomialParams,
    pub ctx: Arc<FieldCtx>,
    pub a: FFElem,
    pub zeta: FFElem,
    pub b: FFElem,
}

/// F_{3^{4k}} together with a root a of X^4 + X - 1.
///
/// For k = 1 the modulus is X^4 + X - 1 itself and a = X. Otherwise the
/// Conway field is used and a is the smallest root in F_81.
pub fn trinomial_field(k: u32) -> Result<(Arc<FieldCtx>, FFElem)> {
    if k == 1 {
        let ctx = FieldCtx::new(3, 4, vec![2, 1, 0, 0, 1])?;
        let a = ctx.root();
        return Ok((ctx, a));
    }
    let ctx = FieldCtx::conway(3, 4 * k)?;
    let one = FFElem::ONE;
    let a = ctx
        .subfield_elements(4)?
        .into_iter()
        .find(|&x| ctx.add(ctx.add(ctx.pow(x, 4), x), ctx.neg(one)).is_zero())
        .ok_or_else(|| Error::Inconsistency("X^4 + X - 1 has no root in F_81".into()))?;
    Ok((ctx, a))
}

impl Trinomial {
    pub fn new(params: TrinomialParams) -> Result<Trinomial> {
        let (ctx, a) = trinomial_field(params.k)?;
        let n = params.n();
        let q2k = 3u128.pow(2 * params.k) - 1;
        let zeta = ctx.pow(ctx.primitive(), (3u128.pow(n) - 1) / q2k);
        let e = (params.t as u128 % q2k) * 3u128.pow(params.k).div_ceil(2) % q2k;
        let b = ctx.pow(zeta, e);
        Ok(Trinomial {
            params,
            ctx,
            a,
            zeta,
            b,
        })
    }

    fn qk(&self) -> u64 {
        3u64.pow(self.params.k)
    }

    pub fn form(&self) -> TraceForm {
        let q = self.qk();
        let ctx = &self.ctx;
        let terms = [
            (FFElem::ONE, q + 2),
            (ctx.from_int(-1), 2 * q + 1),
            (self.b, 3u64.pow(self.params.j) + 1),
        ];
        TraceForm::new(ctx.clone(), terms, 0).expect("exponents below 3^n")
    }

    pub fn function(&self) -> PFunction {
        self.form().eval()
    }

    /// x -> x^{3^e}, e may be negative.
    fn frob(&self, x: FFElem, e: i64) -> FFElem {
        self.ctx.frobenius(x, e)
    }

    /// b c^{3^j} + b^{3^{-j}} c^{3^{-j}}
    pub fn lemma_element(&self, c: FFElem) -> FFElem {
        let ctx = &self.ctx;
        let j = self.params.j as i64;
        ctx.add(
            ctx.mul(self.b, self.frob(c, j)),
            ctx.mul(self.frob(self.b, -j), self.frob(c, -j)),
        )
    }

    /// Some d with Tr_n(e(c) d) != 0, searched in F_{3^k}, F_{3^{2k}}, then
    /// the whole field.
    pub fn lemma2_witness(&self, c: FFElem) -> Result<FFElem> {
        let ctx = &self.ctx;
        let k = self.params.k;
        if c.is_zero() {
            return Err(Error::pre("c must be nonzero"));
        }
        let in_cases =
            ctx.in_subfield(c, 2 * k) || !ctx.rel_trace(ctx.mul(self.b, c), k)?.is_zero();
        if !in_cases {
            return Err(Error::pre("c lies outside F_{3^{2k}} and Tr^n_k(bc) = 0"));
        }
        let e = self.lemma_element(c);
        let hit = |d: &FFElem| ctx.trace(ctx.mul(e, *d)) != 0;
        for sub in [k, 2 * k] {
            if let Some(d) = ctx.subfield_elements(sub)?.into_iter().find(hit) {
                return Ok(d);
            }
        }
        ctx.elements()
            .find(hit)
            .ok_or_else(|| Error::Inconsistency(format!("no witness d for c = {}", c.index())))
    }

    /// D_c f as an explicit trace form.
    pub fn first_derivative_form(&self, c: FFElem) -> TraceForm {
        let ctx = &self.ctx;
        let q = self.qk();
        let pj = 3u64.pow(self.params.j);
        let pw = |e: u64| ctx.pow(c, e as u128);
        let b = self.b;
        let neg = |x: FFElem| ctx.neg(x);
        let constant = ctx.add(
            ctx.add(neg(pw(2 * q + 1)), pw(q + 2)),
            ctx.mul(b, pw(pj + 1)),
        );
        let terms = vec![
            (constant, 0),
            (ctx.mul(b, c), pj),
            (ctx.mul(b, pw(pj)), 1),
            (neg(ctx.add(pw(2 * q), pw(q + 1))), 1),
            (ctx.add(pw(2), pw(q + 1)), q),
            (ctx.sub(pw(q), c), q + 1),
            (pw(q), 2),
            (neg(c), 2 * q),
        ];
        TraceForm::new(ctx.clone(), terms, 0).expect("exponents below 3^n")
    }

    /// L_c(d) = (c^{3^k}-c)^{3^{3k}} d^{3^{3k}} + (c^{3^k}-c) d^{3^k} + (c^{3^{2k}}-c)^{3^k} d.
    pub fn linearized(&self, c: FFElem, d: FFElem) -> FFElem {
        let ctx = &self.ctx;
        let k = self.params.k as i64;
        let u = ctx.sub(self.frob(c, k), c);
        let v = self.frob(ctx.sub(self.frob(c, 2 * k), c), k);
        let t1 = ctx.mul(self.frob(u, 3 * k), self.frob(d, 3 * k));
        let t2 = ctx.mul(u, self.frob(d, k));
        ctx.add(ctx.add(t1, t2), ctx.mul(v, d))
    }

    /// The direction pair used when Tr^n_k(bc) = 0 and c is outside F_{3^k}:
    /// c = b^{-1}(l - l^{3^k}), d = l^{3^{3k}} + l, and the constant K with
    /// D_{c, d s} f = Tr_k(Tr^n_k(K) s) for s in F_{3^k}.
    pub fn zero_trace_direction(&self, l: FFElem) -> Option<ZeroTraceDirection> {
        let ctx = &self.ctx;
        let k = self.params.k as i64;
        if ctx.in_subfield(l, 2 * self.params.k) {
            return None;
        }
        let binv = ctx.inv(self.b).expect("b is nonzero");
        let c = ctx.mul(binv, ctx.sub(l, self.frob(l, k)));
        let d = ctx.add(self.frob(l, 3 * k), l);
        let w = ctx.sub(self.frob(c, 2 * k), c);
        let w = ctx.pow(w, 3u128.pow(self.params.k) + 1);
        let k_const = ctx.mul(ctx.add(w, self.lemma_element(c)), d);
        Some(ZeroTraceDirection { c, d, k_const })
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct ZeroTraceDirection {
    pub c: FFElem,
    pub d: FFElem,
    pub k_const: FFElem,
}

pub fn trinomial_bent(params: TrinomialParams) -> Result<TraceForm> {
    Ok(Trinomial::new(params)?.form())
}

pub fn lemma2_witness(c: FFElem, params: TrinomialParams) -> Result<FFElem> {
    Trinomial::new(params)?.lemma2_witness(c)
}

pub fn trinomial_first_derivative_form(params: TrinomialParams, c: FFElem) -> Result<TraceForm> {
    Ok(Trinomial::new(params)?.first_derivative_form(c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::derivanalysis::{
        cubic_like_certificate, quad_like_implication_check, second_derivative_constant,
    };
    use crate::walsh::{classify, walsh_fast, Classification};

    fn tri(k: u32, j: u32, t: u64) -> Trinomial {
        Trinomial::new(TrinomialParams::new(k, j, t).unwrap()).unwrap()
    }

    #[test]
    fn parity_is_enforced() {
        assert!(TrinomialParams::new(1, 1, 1).is_err());
        assert!(TrinomialParams::new(2, 2, 1).is_err());
        assert!(TrinomialParams::new(1, 2, 2).is_err());
        assert!(TrinomialParams::new(1, 4, 1).is_err());
        assert!(TrinomialParams::new(2, 1, 3).is_ok());
    }

    #[test]
    fn k1_field_and_coefficient() {
        let t = tri(1, 2, 1);
        let ctx = &t.ctx;
        assert_eq!(ctx.modulus(), &[2, 1, 0, 0, 1]);
        assert_eq!(ctx.primitive(), t.a);
        assert_eq!(t.zeta, ctx.gen_pow(10));
        assert_eq!(t.b, ctx.gen_pow(20));
        assert_eq!(t.form().to_string(), "Tr(x^5+g^40*x^7+g^20*x^10)");
    }

    #[test]
    fn b_properties() {
        for (k, j, t) in [(1, 0, 1), (1, 2, 3), (2, 1, 1), (2, 3, 5)] {
            let tr = tri(k, j, t);
            let ctx = &tr.ctx;
            assert_eq!(ctx.frobenius(tr.b, k as i64), ctx.neg(tr.b));
            assert!(ctx.rel_trace(tr.b, k).unwrap().is_zero());
            assert!(ctx.in_subfield(tr.zeta, 2 * k));
            assert_eq!(
                ctx.log(tr.zeta)
                    .map(|l| l % ((ctx.size() - 1) / (3u32.pow(2 * k) - 1))),
                Some(0)
            );
        }
    }

    #[test]
    fn root_of_defining_quartic() {
        let (ctx, a) = trinomial_field(2).unwrap();
        let v = ctx.add(ctx.add(ctx.pow(a, 4), a), ctx.from_int(-1));
        assert!(v.is_zero());
        assert_eq!(ctx.pow(a, 80), FFElem::ONE);
        assert_ne!(ctx.pow(a, 40), FFElem::ONE);
        assert_ne!(ctx.pow(a, 16), FFElem::ONE);
    }

    #[test]
    fn k1_is_cubic_non_weakly_regular_both_routes() {
        for (j, t) in [(0, 1), (2, 1), (0, 3), (2, 5)] {
            let f = tri(1, j, t).function();
            assert_eq!(f.algebraic_degree(), 3);
            assert!(
                matches!(classify(&f), Classification::NonWeaklyRegular { .. }),
                "j={j} t={t}"
            );
            assert!(cubic_like_certificate(&f).complete);
        }
    }

    #[test]
    fn derivative_form_matches_generic_derivative() {
        let tr = tri(1, 2, 1);
        let f = tr.function();
        for c in tr.ctx.elements() {
            assert_eq!(
                tr.first_derivative_form(c).eval(),
                f.derivative(c),
                "c={}",
                c.index()
            );
        }
        assert!(tr.first_derivative_form(FFElem::ZERO).terms().is_empty());
        let tr = tri(2, 1, 1);
        let f = tr.function();
        for i in [1u32, 2, 100, 4321] {
            let c = FFElem(i);
            assert_eq!(tr.first_derivative_form(c).eval(), f.derivative(c));
        }
    }

    #[test]
    fn derivative_in_prime_field_is_affine() {
        let tr = tri(1, 2, 1);
        let ctx = &tr.ctx;
        for c in [FFElem::ONE, ctx.from_int(2)] {
            let form = tr.first_derivative_form(c);
            let e = tr.lemma_element(c);
            let pj = 3u128.pow(tr.params.j) + 1;
            let expect =
                TraceForm::new(ctx.clone(), [(ctx.mul(tr.b, ctx.pow(c, pj)), 0), (e, 1)], 0)
                    .unwrap();
            assert_eq!(form.eval(), expect.eval());
            assert!(!e.is_zero());
        }
    }

    #[test]
    fn lemma_witnesses() {
        let tr = tri(1, 2, 1);
        let ctx = &tr.ctx;
        let d = tr.lemma2_witness(FFElem::ONE).unwrap();
        assert_ne!(ctx.trace(ctx.mul(tr.lemma_element(FFElem::ONE), d)), 0);
        for c in ctx.subfield_elements(2).unwrap().into_iter().skip(1) {
            let d = tr.lemma2_witness(c).unwrap();
            assert!(ctx.in_subfield(d, 2) && !d.is_zero());
        }
        let outside = ctx
            .elements()
            .find(|&c| {
                !ctx.in_subfield(c, 2) && ctx.rel_trace(ctx.mul(tr.b, c), 1).unwrap().is_zero()
            })
            .unwrap();
        assert!(matches!(
            tr.lemma2_witness(outside),
            Err(Error::Precondition(_))
        ));
        assert!(tr.lemma2_witness(FFElem::ZERO).is_err());
    }

    #[test]
    fn lemma_witness_gives_constant_second_derivative() {
        let tr = tri(1, 0, 1);
        let f = tr.function();
        for c in [FFElem::ONE, tr.ctx.from_int(2)] {
            let d = tr.lemma2_witness(c).unwrap();
            let l = second_derivative_constant(&f, c, d).unwrap();
            assert_ne!(l, 0);
            assert!(quad_like_implication_check(&f, c, d).unwrap());
        }
    }

    #[test]
    fn zero_trace_directions() {
        for (j, t) in [(0, 1), (2, 1)] {
            let tr = tri(1, j, t);
            let ctx = &tr.ctx;
            let f = tr.function();
            let mut seen = 0;
            for l in ctx.elements() {
                let Some(z) = tr.zero_trace_direction(l) else {
                    continue;
                };
                seen += 1;
                assert!(ctx.rel_trace(ctx.mul(tr.b, z.c), 1).unwrap().is_zero());
                assert!(!ctx.in_subfield(z.c, 1));
                assert!(tr.linearized(z.c, z.d).is_zero());
                assert!(tr.linearized(z.c, FFElem::ONE).is_zero());
                let tk = ctx.trace(z.k_const);
                assert_ne!(tk, 0);
                for s in 1..3u32 {
                    let d = ctx.scale(s, z.d);
                    assert_eq!(second_derivative_constant(&f, z.c, d), Some(s * tk % 3));
                }
            }
            assert_eq!(seen, 81 - 9);
        }
    }

    #[test]
    fn k2_is_bent_and_non_weakly_regular() {
        let f = tri(2, 1, 1).function();
        let s = walsh_fast(&f);
        assert!(s.is_bent() && s.parseval_holds());
        assert!(s.certificate().unwrap().constant_sign().is_none());
    }
}
