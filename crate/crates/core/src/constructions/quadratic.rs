//! Adding a quadratic q(x) = Tr(sum_j a_j x^{p^j+1}) to a weakly regular
//! bent function, and the search for quadratics without nontrivial zeros.
//!
//! With L(c) = sum_j (a_j^{p^{n-j}} c^{p^{n-j}} + a_j c^{p^j}) one has
//! D_c q(x) = Tr(L(c) x) + q(c), so
//! W_{D_c g}(0) = w^{q(c)} W_{D_c f}(-L(c)) and g = f + q is bent exactly
//! when W_{D_c f}(-L(c)) = 0 for every c != 0.

use std::sync::Arc;

use serde::Serialize;

use crate::derivanalysis::derivative_walsh_at;
use crate::error::{Error, Result};
use crate::funcrep::{truth_to_univariate, Anf, PFunction, TraceForm};
use crate::gf::{FFElem, FieldCtx};
use crate::walsh::{classify, walsh_fast};

#[derive(Clone, Debug)]
pub struct AddQuadraticReport {
    pub g: PFunction,
    pub q: PFunction,
    /// Some c != 0 has q(c) = 0.
    pub q_vanishes: bool,
    /// For all c != 0: q(c) != 0 or W_{D_c f}(L(c)) = 0.
    pub sufficient_condition: bool,
    /// For all c != 0: W_{D_c f}(-L(c)) = 0.
    pub exact_condition: bool,
    pub spectral_bent: bool,
}

/// Counts over c != 0 where the two conditions disagree with the spectrum.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ConditionTally {
    pub tested: usize,
    pub sufficient_false_positives: usize,
    pub exact_mismatches: usize,
}

pub fn linear_part(ctx: &FieldCtx, a: &[FFElem], c: FFElem) -> FFElem {
    let n = ctx.n() as i64;
    a.iter().enumerate().fold(FFElem::ZERO, |acc, (j, &aj)| {
        let j = j as i64;
        let back = ctx.frobenius(ctx.mul(aj, c), n - j);
        let fwd = ctx.mul(aj, ctx.frobenius(c, j));
        ctx.add(acc, ctx.add(back, fwd))
    })
}

pub fn quadratic_trace_form(ctx: &Arc<FieldCtx>, a: &[FFElem]) -> Result<TraceForm> {
    if a.len() > ctx.n() as usize {
        return Err(Error::pre(format!("at most n = {} coefficients", ctx.n())));
    }
    let p = ctx.p() as u64;
    TraceForm::new(
        ctx.clone(),
        a.iter()
            .enumerate()
            .map(|(j, &aj)| (aj, p.pow(j as u32) + 1)),
        0,
    )
}

pub fn add_quadratic(f: &PFunction, a: &[FFElem]) -> Result<AddQuadraticReport> {
    if !classify(f).is_weakly_regular() {
        return Err(Error::pre("f must be weakly regular bent"));
    }
    let ctx = f.ctx();
    let q = quadratic_trace_form(ctx, a)?.eval();
    let g = f.add(&q)?;
    let mut q_vanishes = false;
    let mut sufficient_condition = true;
    let mut exact_condition = true;
    for c in ctx.elements().skip(1) {
        let l = linear_part(ctx, a, c);
        let qc = q.at(c);
        q_vanishes |= qc == 0;
        if qc == 0 && sufficient_condition && !derivative_walsh_at(f, c, l).is_zero() {
            sufficient_condition = false;
        }
        if exact_condition && !derivative_walsh_at(f, c, ctx.neg(l)).is_zero() {
            exact_condition = false;
        }
    }
    let spectral_bent = walsh_fast(&g).is_bent();
    Ok(AddQuadraticReport {
        g,
        q,
        q_vanishes,
        sufficient_condition,
        exact_condition,
        spectral_bent,
    })
}

#[derive(Clone, Debug)]
pub struct NonvanishingQuadratic {
    pub anf: Anf,
    /// a_0..a_{n/2} with q = Tr(sum a_j x^{p^j+1}).
    pub coeffs: Vec<FFElem>,
    pub function: PFunction,
}

/// Search budget in (forms x points).
const SEARCH_LIMIT: u64 = 20_000_000;

/// First homogeneous quadratic (lexicographic, x_1^2 coefficient most
/// significant) with q(c) != 0 for all c != 0. Beyond the exhaustive range
/// the answer is None: for n >= 3 the Chevalley-Warning bound forces a
/// nontrivial zero.
pub fn nonvanishing_quadratic_search(p: u32, n: u32) -> Result<Option<NonvanishingQuadratic>> {
    if n == 0 {
        return Err(Error::pre("n must be positive"));
    }
    let pairs: Vec<(usize, usize)> = (0..n as usize)
        .flat_map(|i| (i..n as usize).map(move |j| (i, j)))
        .collect();
    let forms = (p as u64).checked_pow(pairs.len() as u32);
    let points = (p as u64).checked_pow(n);
    let exhaustive =
        matches!((forms, points), (Some(f), Some(q)) if f.saturating_mul(q) <= SEARCH_LIMIT);
    if !exhaustive {
        if n >= 3 {
            return Ok(None);
        }
        return Err(Error::Budget {
            what: "quadratic search".into(),
            actual: u64::MAX,
            limit: SEARCH_LIMIT,
        });
    }
    let (forms, q) = (forms.unwrap(), points.unwrap() as usize);
    let pu = p as usize;
    let coords: Vec<Vec<usize>> = (0..q)
        .map(|mut x| {
            (0..n)
                .map(|_| {
                    let d = x % pu;
                    x /= pu;
                    d
                })
                .collect()
        })
        .collect();
    let mut coef = vec![0usize; pairs.len()];
    for code in 1..forms {
        // most significant digit first
        let mut v = code as usize;
        for slot in coef.iter_mut().rev() {
            *slot = v % pu;
            v /= pu;
        }
        let anisotropic = coords.iter().skip(1).all(|x| {
            pairs
                .iter()
                .zip(&coef)
                .map(|(&(i, j), &cf)| cf * x[i] * x[j])
                .sum::<usize>()
                % pu
                != 0
        });
        if anisotropic {
            let terms: Vec<(Vec<u32>, u32)> = pairs
                .iter()
                .zip(&coef)
                .filter(|(_, &cf)| cf != 0)
                .map(|(&(i, j), &cf)| {
                    let mut e = vec![0u32; n as usize];
                    e[i] += 1;
                    e[j] += 1;
                    (e, cf as u32)
                })
                .collect();
            let anf = Anf::from_terms(p, n, &terms)?;
            let ctx = FieldCtx::conway(p, n)?;
            let function = anf.to_truth(&ctx)?;
            let coeffs = trace_coefficients(&function)?;
            if quadratic_trace_form(&ctx, &coeffs)?.eval() != function {
                return Err(Error::Inconsistency(
                    "trace form of the quadratic does not re-evaluate".into(),
                ));
            }
            return Ok(Some(NonvanishingQuadratic {
                anf,
                coeffs,
                function,
            }));
        }
    }
    Ok(None)
}

/// a_0..a_{floor(n/2)} from the univariate expansion of a quadratic form.
fn trace_coefficients(q: &PFunction) -> Result<Vec<FFElem>> {
    let ctx = q.ctx();
    let (p, n) = (ctx.p() as usize, ctx.n());
    if p == 2 {
        return Err(Error::pre("quadratic forms need odd p"));
    }
    let u = truth_to_univariate(q)?;
    let half_inv = ctx.inv(ctx.from_int(2))?;
    Ok((0..=n / 2)
        .map(|j| {
            let v = u[p.pow(j) + 1];
            // x^{p^{n/2}+1} collects a_{n/2} and a_{n/2}^{p^{n/2}}
            if n % 2 == 0 && j == n / 2 {
                ctx.mul(v, half_inv)
            } else {
                v
            }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::walsh::classify;

    fn all_functions(ctx: &Arc<FieldCtx>) -> impl Iterator<Item = PFunction> + '_ {
        let q = ctx.size() as usize;
        let p = ctx.p() as usize;
        (0..p.pow(q as u32)).map(move |mut code| {
            let v = (0..q)
                .map(|_| {
                    let d = code % p;
                    code /= p;
                    d as u8
                })
                .collect();
            PFunction::new(ctx.clone(), v).unwrap()
        })
    }

    #[test]
    fn search_small_dimensions() {
        let one = nonvanishing_quadratic_search(3, 1).unwrap().unwrap();
        assert_eq!(one.anf.terms(), vec![(vec![2], 1)]);
        let two = nonvanishing_quadratic_search(3, 2).unwrap().unwrap();
        assert_eq!(two.anf.terms(), vec![(vec![2, 0], 1), (vec![0, 2], 1)]);
        assert!(nonvanishing_quadratic_search(3, 3).unwrap().is_none());
        assert!(nonvanishing_quadratic_search(3, 4).unwrap().is_none());
        assert!(nonvanishing_quadratic_search(5, 2).unwrap().is_some());
        assert!(nonvanishing_quadratic_search(3, 9).unwrap().is_none());
    }

    #[test]
    fn zero_quadratic_keeps_f() {
        let ctx = FieldCtx::conway(3, 2).unwrap();
        let f = TraceForm::new(ctx.clone(), [(FFElem::ONE, 2)], 0)
            .unwrap()
            .eval();
        let r = add_quadratic(&f, &[]).unwrap();
        assert_eq!(r.g, f);
        assert!(r.sufficient_condition && r.exact_condition && r.spectral_bent);
    }

    #[test]
    fn rejects_non_weakly_regular() {
        let ctx = FieldCtx::conway(3, 2).unwrap();
        assert!(matches!(
            add_quadratic(&PFunction::zero(ctx), &[FFElem::ONE]),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn x_squared_on_prime_field() {
        let ctx = FieldCtx::conway(3, 1).unwrap();
        let f = TraceForm::new(ctx.clone(), [(FFElem::ONE, 2)], 0)
            .unwrap()
            .eval();
        let r = add_quadratic(&f, &[FFElem::ONE]).unwrap();
        assert_eq!(r.g, f.scale(2));
        assert!(!r.q_vanishes && r.sufficient_condition && r.spectral_bent && r.exact_condition);
        // f = -x^2 cancels q entirely
        let r = add_quadratic(&f.scale(2), &[FFElem::ONE]).unwrap();
        assert!(r.sufficient_condition);
        assert!(!r.spectral_bent && !r.exact_condition);
    }

    /// The exact condition agrees with the spectrum on every weakly regular
    /// bent function of F_3 and F_9; the sufficient condition does not.
    fn tally(n: u32) -> ConditionTally {
        let ctx = FieldCtx::conway(3, n).unwrap();
        let q = nonvanishing_quadratic_search(3, n).unwrap().unwrap();
        let mut t = ConditionTally::default();
        for f in all_functions(&ctx).filter(|f| classify(f).is_weakly_regular()) {
            let r = add_quadratic(&f, &q.coeffs).unwrap();
            t.tested += 1;
            t.sufficient_false_positives += (r.sufficient_condition && !r.spectral_bent) as usize;
            t.exact_mismatches += (r.exact_condition != r.spectral_bent) as usize;
        }
        t
    }

    #[test]
    fn exact_condition_on_prime_field() {
        let t = tally(1);
        assert_eq!(t.tested, 18);
        assert_eq!(t.exact_mismatches, 0);
        assert_eq!(t.sufficient_false_positives, 9);
    }

    #[test]
    #[ignore = "scans all 3^9 tables on F_9"]
    fn exact_condition_on_f9() {
        let t = tally(2);
        assert_eq!(t.tested, 486);
        assert_eq!(t.exact_mismatches, 0);
        assert_eq!(t.sufficient_false_positives, 135);
    }

    #[test]
    fn coefficients_re_evaluate() {
        for n in 1..=2 {
            let q = nonvanishing_quadratic_search(3, n).unwrap().unwrap();
            let ctx = q.function.ctx().clone();
            assert_eq!(
                quadratic_trace_form(&ctx, &q.coeffs).unwrap().eval(),
                q.function
            );
            for c in ctx.elements() {
                let l = linear_part(&ctx, &q.coeffs, c);
                assert_eq!(ctx.trace(ctx.mul(l, c)), 2 * q.function.at(c) % 3);
            }
        }
    }
}
