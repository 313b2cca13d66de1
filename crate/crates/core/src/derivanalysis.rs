//! Second-order derivative certificates and first-derivative spectral
//! identities of weakly regular bent functions.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::cyclo::CycInt;
use crate::error::{Error, Result};
use crate::funcrep::PFunction;
use crate::gf::{FFElem, FieldCtx};
use crate::walsh::{walsh_fast, WalshSpectrum};

/// For each direction a, the first b (in element order) with D_{a,b} f a
/// nonzero constant.
#[derive(Clone, Debug, Serialize)]
pub struct CubicLikeCertificate {
    /// Indexed by a; entry 0 is always `None`.
    pub witnesses: Vec<Option<(FFElem, u32)>>,
    pub complete: bool,
}

impl CubicLikeCertificate {
    pub fn witness(&self, a: FFElem) -> Option<(FFElem, u32)> {
        self.witnesses[a.index() as usize]
    }

    /// Nonzero directions without a witness.
    pub fn missing(&self) -> Vec<FFElem> {
        (1..self.witnesses.len())
            .filter(|&a| self.witnesses[a].is_none())
            .map(|a| FFElem(a as u32))
            .collect()
    }
}

/// D_{a,b} f as a constant, or `None` if it varies.
pub fn second_derivative_constant(f: &PFunction, a: FFElem, b: FFElem) -> Option<u32> {
    let ctx = f.ctx();
    let p = ctx.p();
    let ab = ctx.add(a, b);
    let at = |x: FFElem| {
        let v = f.at(ctx.add(x, ab)) + f.at(x) + 2 * p - f.at(ctx.add(x, a)) - f.at(ctx.add(x, b));
        v % p
    };
    let lambda = at(FFElem::ZERO);
    ctx.elements()
        .skip(1)
        .all(|x| at(x) == lambda)
        .then_some(lambda)
}

pub fn cubic_like_certificate(f: &PFunction) -> CubicLikeCertificate {
    let ctx = f.ctx();
    let find = |a: u32| -> Option<(FFElem, u32)> {
        if a == 0 {
            return None;
        }
        let a = FFElem(a);
        ctx.elements().skip(1).find_map(|b| {
            second_derivative_constant(f, a, b)
                .filter(|&l| l != 0)
                .map(|l| (b, l))
        })
    };
    let witnesses: Vec<_> = (0..ctx.size())
        .into_par_iter()
        .with_min_len(8)
        .map(find)
        .collect();
    let complete = witnesses.iter().skip(1).all(|w| w.is_some()) && witnesses.len() > 1;
    CubicLikeCertificate {
        witnesses,
        complete,
    }
}

/// E_f = {a : D_a f is constant}, in element order.
pub fn derivative_linear_space(f: &PFunction) -> Vec<FFElem> {
    let ctx = f.ctx();
    ctx.elements()
        .filter(|&a| derivative_constant(f, a).is_some())
        .collect()
}

fn derivative_constant(f: &PFunction, a: FFElem) -> Option<u32> {
    let ctx = f.ctx();
    let p = ctx.p();
    let d = |x: FFElem| (f.at(ctx.add(x, a)) + p - f.at(x)) % p;
    let c = d(FFElem::ZERO);
    ctx.elements().skip(1).all(|x| d(x) == c).then_some(c)
}

/// For degree at most 2: some a with D_a q a nonzero constant, which exists
/// iff q is balanced.
pub fn quadratic_balance_witness(q: &PFunction) -> Result<Option<FFElem>> {
    let deg = q.algebraic_degree();
    if deg > 2 {
        return Err(Error::pre(format!(
            "quadratic balance test needs degree <= 2, got {deg}"
        )));
    }
    Ok(derivative_linear_space(q)
        .into_iter()
        .find(|&a| derivative_constant(q, a) != Some(0)))
}

/// W_{D_c f}(b) = sum_x w^{f(x+c) - f(x) - Tr(b x)}.
pub fn derivative_walsh_at(f: &PFunction, c: FFElem, b: FFElem) -> CycInt {
    let ctx = f.ctx();
    let p = ctx.p();
    let mut cnt = vec![0i64; p as usize];
    for x in ctx.elements() {
        let v = f.at(ctx.add(x, c)) + 2 * p - f.at(x) - ctx.trace(ctx.mul(b, x));
        cnt[(v % p) as usize] += 1;
    }
    CycInt::from_counts(p, &cnt)
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WrCheck {
    /// W_{D_c f}(b) = W_{D_c f}(-b) = W_{D_{-c} f}(b)
    Symmetry,
    /// W_{D_c f}(b) = w^{Tr(bc)} W_{D_b f*}(-c)
    CrossDual,
    /// Tr(bc) != 0 implies W_{D_c f}(b) = 0
    Vanishing,
    /// Tr(bc) = 0 implies W_{D_c f}(b) = W_{D_b f*}(c), a real number
    ZeroTrace,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WrViolation {
    pub b: FFElem,
    pub c: FFElem,
    pub check: WrCheck,
}

#[derive(Clone, Debug, Serialize)]
pub struct WrIdentityReport {
    pub exhaustive: bool,
    pub pairs_checked: usize,
    pub violation_count: usize,
    /// Per check: [symmetry, cross_dual, vanishing, zero_trace].
    pub counts_by_check: [usize; 4],
    /// The first violations in (c, b) order, at most `MAX_RECORDED`.
    pub violations: Vec<WrViolation>,
}

impl WrIdentityReport {
    pub const MAX_RECORDED: usize = 64;

    pub fn is_clean(&self) -> bool {
        self.violation_count == 0
    }
}

/// Pair selection for [`wr_identity_check`].
#[derive(Copy, Clone, Debug)]
pub struct WrOptions {
    pub seed: u64,
    /// Exhaustive when p^{2n} is at most this.
    pub exhaustive_limit: u64,
    pub sample_pairs: usize,
    /// Sampled b per c when c ranges over a proper subfield.
    pub subfield_b_per_c: usize,
}

impl Default for WrOptions {
    fn default() -> Self {
        WrOptions {
            seed: 0,
            exhaustive_limit: 6561,
            sample_pairs: 10_000,
            subfield_b_per_c: 32,
        }
    }
}

/// Selects (c, b) pairs, sorted and deduplicated.
fn select_pairs(ctx: &FieldCtx, opts: &WrOptions) -> (bool, Vec<(u32, u32)>) {
    let q = ctx.size();
    if (q as u64) * (q as u64) <= opts.exhaustive_limit {
        return (
            true,
            (0..q).flat_map(|c| (0..q).map(move |b| (c, b))).collect(),
        );
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut pairs: Vec<(u32, u32)> = (0..opts.sample_pairs)
        .map(|_| (rng.gen_range(0..q), rng.gen_range(0..q)))
        .collect();
    let all: Vec<u32> = (0..q).collect();
    for k in ctx.divisors().into_iter().filter(|&k| k < ctx.n()) {
        for c in ctx.subfield_elements(k).expect("divisor") {
            pairs.extend(
                all.choose_multiple(&mut rng, opts.subfield_b_per_c)
                    .map(|&b| (c.index(), b)),
            );
        }
    }
    pairs.sort_unstable();
    pairs.dedup();
    (false, pairs)
}

/// Checks the first-derivative identities claimed for weakly regular bent
/// functions and records every failure.
///
/// Only `CrossDual` holds for all weakly regular f; a `CrossDual` violation
/// certifies non-weak-regularity. The other three checks fail already on
/// Tr(x^2) and are reported for comparison.
pub fn wr_identity_check(f: &PFunction, opts: &WrOptions) -> Result<WrIdentityReport> {
    let spectrum: WalshSpectrum = walsh_fast(f);
    if !spectrum.is_bent() {
        return Err(Error::pre("identity check needs a bent function"));
    }
    let dual = spectrum.certificate()?.dual;
    let ctx = f.ctx();
    let (exhaustive, pairs) = select_pairs(ctx, opts);

    let check = |&(c, b): &(u32, u32)| -> Vec<WrCheck> {
        let (c, b) = (FFElem(c), FFElem(b));
        let w = derivative_walsh_at(f, c, b);
        let mut bad = Vec::new();
        if w != derivative_walsh_at(f, c, ctx.neg(b)) || w != derivative_walsh_at(f, ctx.neg(c), b)
        {
            bad.push(WrCheck::Symmetry);
        }
        let t = ctx.trace(ctx.mul(b, c));
        let wd = derivative_walsh_at(&dual, b, ctx.neg(c));
        if w != wd.mul_omega(t as i64) {
            bad.push(WrCheck::CrossDual);
        }
        if t != 0 {
            if !w.is_zero() {
                bad.push(WrCheck::Vanishing);
            }
        } else if !w.is_real() || w != derivative_walsh_at(&dual, b, c) {
            bad.push(WrCheck::ZeroTrace);
        }
        bad
    };
    let results: Vec<Vec<WrCheck>> = pairs.par_iter().with_min_len(16).map(check).collect();

    let mut counts = [0usize; 4];
    let mut violations = Vec::new();
    let mut total = 0;
    for (&(c, b), bad) in pairs.iter().zip(&results) {
        for &k in bad {
            counts[k as usize] += 1;
            total += 1;
            if violations.len() < WrIdentityReport::MAX_RECORDED {
                violations.push(WrViolation {
                    b: FFElem(b),
                    c: FFElem(c),
                    check: k,
                });
            }
        }
    }
    Ok(WrIdentityReport {
        exhaustive,
        pairs_checked: pairs.len(),
        violation_count: total,
        counts_by_check: counts,
        violations,
    })
}

/// Given D_{c,d} f = lambda != 0, checks W_{D_c f}(b) = 0 whenever
/// Tr(b d) != lambda.
pub fn quad_like_implication_check(f: &PFunction, c: FFElem, d: FFElem) -> Result<bool> {
    let lambda = match second_derivative_constant(f, c, d) {
        Some(l) if l != 0 => l,
        _ => return Err(Error::pre("D_{c,d} f is not a nonzero constant")),
    };
    let ctx = f.ctx();
    let s = walsh_fast(&f.derivative(c));
    Ok(ctx
        .elements()
        .filter(|&b| ctx.trace(ctx.mul(b, d)) != lambda)
        .all(|b| s.at(b).is_zero()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::funcrep::{Anf, TraceForm};
    use crate::walsh::classify;

    fn tr_sq(n: u32) -> PFunction {
        let ctx = FieldCtx::conway(3, n).unwrap();
        TraceForm::new(ctx, [(FFElem::ONE, 2)], 0).unwrap().eval()
    }

    #[test]
    fn quadratic_bent_has_complete_certificate() {
        let f = tr_sq(4);
        let cert = cubic_like_certificate(&f);
        assert!(cert.complete);
        for a in f.ctx().elements().skip(1) {
            let (b, l) = cert.witness(a).unwrap();
            assert_eq!(f.second_derivative(a, b).constant_value(), Some(l));
            assert_ne!(l, 0);
        }
    }

    #[test]
    fn zero_function_has_no_witness() {
        let ctx = FieldCtx::conway(3, 2).unwrap();
        let cert = cubic_like_certificate(&PFunction::zero(ctx));
        assert!(!cert.complete);
        assert_eq!(cert.missing().len(), 8);
    }

    #[test]
    fn balance_witness_examples() {
        let ctx = FieldCtx::conway(3, 1).unwrap();
        let sq = PFunction::new(ctx, vec![0, 1, 1]).unwrap();
        assert_eq!(quadratic_balance_witness(&sq).unwrap(), None);

        let ctx = FieldCtx::conway(3, 3).unwrap();
        let c = ctx.gen_pow(4);
        let lin = TraceForm::new(ctx.clone(), [(c, 1)], 0).unwrap().eval();
        let a = quadratic_balance_witness(&lin).unwrap().unwrap();
        assert_ne!(ctx.trace(ctx.mul(c, a)), 0);

        let cubic = TraceForm::new(ctx, [(FFElem::ONE, 4), (FFElem::ONE, 13)], 0)
            .unwrap()
            .eval();
        if cubic.algebraic_degree() > 2 {
            assert!(quadratic_balance_witness(&cubic).is_err());
        }
    }

    #[test]
    fn two_variable_quadratics_exhaustive() {
        let ctx = FieldCtx::conway(3, 2).unwrap();
        let monos = [
            vec![2, 0],
            vec![1, 1],
            vec![0, 2],
            vec![1, 0],
            vec![0, 1],
            vec![0, 0],
        ];
        for pattern in 0..729u32 {
            let mut t = Vec::new();
            let mut r = pattern;
            for m in &monos {
                t.push((m.clone(), r % 3));
                r /= 3;
            }
            let q = Anf::from_terms(3, 2, &t).unwrap().to_truth(&ctx).unwrap();
            assert_eq!(
                q.is_balanced(),
                quadratic_balance_witness(&q).unwrap().is_some(),
                "pattern {pattern}"
            );
        }
    }

    #[test]
    fn linear_space_examples() {
        let ctx = FieldCtx::conway(3, 2).unwrap();
        let lin = TraceForm::new(ctx.clone(), [(ctx.gen_pow(3), 1)], 1)
            .unwrap()
            .eval();
        assert_eq!(derivative_linear_space(&lin).len(), 9);
        assert_eq!(derivative_linear_space(&tr_sq(2)), vec![FFElem::ZERO]);
    }

    #[test]
    fn weakly_regular_quadratics_satisfy_cross_dual() {
        for n in [2, 4] {
            let f = tr_sq(n);
            let opts = WrOptions {
                sample_pairs: 600,
                ..Default::default()
            };
            let r = wr_identity_check(&f, &opts).unwrap();
            assert_eq!(r.counts_by_check[WrCheck::CrossDual as usize], 0, "n={n}");
            assert!(r.exhaustive);
        }
    }

    #[test]
    fn square_breaks_symmetry_claims() {
        // D_c Tr(x^2) = Tr(2cx + c^2) is affine: its spectrum is one spike at
        // b = 2c with value 9 w^{Tr(c^2)}, so Tr(bc) = Tr(2c^2) may be nonzero.
        let f = tr_sq(2);
        let ctx = f.ctx();
        let c = ctx
            .elements()
            .find(|&c| ctx.trace(ctx.mul(c, c)) != 0)
            .unwrap();
        let b = ctx.scale(2, c);
        let w = derivative_walsh_at(&f, c, b);
        assert_eq!(
            w,
            CycInt::from_int(3, 9).mul_omega(ctx.trace(ctx.mul(c, c)) as i64)
        );
        assert!(!w.is_real());
        assert!(derivative_walsh_at(&f, c, ctx.neg(b)).is_zero());
        let r = wr_identity_check(&f, &WrOptions::default()).unwrap();
        assert!(r.counts_by_check[WrCheck::Vanishing as usize] > 0);
        assert!(r.counts_by_check[WrCheck::Symmetry as usize] > 0);
    }

    #[test]
    fn non_weakly_regular_has_violations() {
        let ctx = FieldCtx::conway(3, 3).unwrap();
        let f = TraceForm::new(ctx, [(FFElem::ONE, 8), (FFElem::ONE, 14)], 0)
            .unwrap()
            .eval();
        assert!(!classify(&f).is_weakly_regular());
        let r = wr_identity_check(&f, &WrOptions::default()).unwrap();
        assert!(r.counts_by_check[WrCheck::CrossDual as usize] > 0);
        assert!(r.violations.len() <= WrIdentityReport::MAX_RECORDED);
    }

    #[test]
    fn identity_check_rejects_non_bent() {
        let ctx = FieldCtx::conway(3, 2).unwrap();
        assert!(wr_identity_check(&PFunction::zero(ctx), &WrOptions::default()).is_err());
    }

    #[test]
    fn quad_like_on_square() {
        let f = tr_sq(2);
        let ctx = f.ctx();
        let mut tested = 0;
        for c in ctx.elements().skip(1) {
            for d in ctx.elements().skip(1) {
                if matches!(second_derivative_constant(&f, c, d), Some(l) if l != 0) {
                    assert!(quad_like_implication_check(&f, c, d).unwrap());
                    tested += 1;
                }
            }
        }
        assert!(tested > 0);
        assert!(quad_like_implication_check(&f, FFElem::ONE, FFElem::ZERO).is_err());
    }
}

#[cfg(test)]
mod props {
    use super::*;
    use crate::funcrep::Anf;
    use crate::walsh::walsh_fast;
    use proptest::prelude::*;

    fn random_quadratic(p: u32, n: u32, coeffs: &[u32]) -> Vec<(Vec<u32>, u32)> {
        let mut t = Vec::new();
        let mut k = 0;
        for i in 0..n as usize {
            for j in i..n as usize {
                let mut e = vec![0; n as usize];
                e[i] += 1;
                e[j] += 1;
                t.push((e, coeffs[k % coeffs.len()] % p));
                k += 1;
            }
        }
        t
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]

        #[test]
        fn linear_space_is_subspace(coeffs in prop::collection::vec(0u32..3, 6)) {
            let ctx = FieldCtx::conway(3, 3).unwrap();
            let q = Anf::from_terms(3, 3, &random_quadratic(3, 3, &coeffs)).unwrap().to_truth(&ctx).unwrap();
            let e = derivative_linear_space(&q);
            prop_assert!([1usize, 3, 9, 27].contains(&e.len()));
            for &a in &e {
                for &b in &e {
                    prop_assert!(e.contains(&ctx.add(a, b)));
                }
                prop_assert!(e.contains(&ctx.scale(2, a)));
            }
        }

        #[test]
        fn complete_certificate_implies_bent(seed in any::<u64>()) {
            use rand::SeedableRng;
            let ctx = FieldCtx::conway(3, 2).unwrap();
            let f = PFunction::random(ctx, &mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
            if cubic_like_certificate(&f).complete {
                prop_assert!(walsh_fast(&f).is_bent());
            }
        }
    }
}
