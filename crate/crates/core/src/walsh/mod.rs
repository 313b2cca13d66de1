//! Walsh spectra, bentness and regularity classification.
//!
//! W_f(y) = sum_x w^{f(x) - Tr(x y)}, computed exactly in Z[w].

mod transform;

use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::cyclo::{recognize_unit_times_power, CycInt};
use crate::error::{Error, Result};
use crate::funcrep::PFunction;
use crate::gf::{FFElem, FieldCtx};

/// Largest field for the quadratic-time naive transform.
pub const NAIVE_LIMIT: u32 = 59049;

const PAR_MIN: u32 = 1 << 10;

/// Which algorithm produced a spectrum.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    Naive,
    Fast,
}

/// All Walsh values of a function, indexed by y.
#[derive(Clone, Debug)]
pub struct WalshSpectrum {
    ctx: Arc<FieldCtx>,
    values: Vec<CycInt>,
    provenance: Provenance,
}

/// Whether the normal form carries a factor i (odd n with p = 3 mod 4).
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum UnitClass {
    Real,
    Imaginary,
}

impl UnitClass {
    pub fn of(p: u32, n: u32) -> UnitClass {
        if n % 2 == 1 && p % 4 == 3 {
            UnitClass::Imaginary
        } else {
            UnitClass::Real
        }
    }
}

/// Dual, sign map and unit class of a bent function.
#[derive(Clone, Debug)]
pub struct BentCertificate {
    pub dual: PFunction,
    pub signs: Vec<i8>,
    pub unit_class: UnitClass,
}

impl BentCertificate {
    /// (number of +1 signs, number of -1 signs).
    pub fn sign_histogram(&self) -> (usize, usize) {
        let plus = self.signs.iter().filter(|&&s| s > 0).count();
        (plus, self.signs.len() - plus)
    }

    /// The common sign, if the sign map is constant.
    pub fn constant_sign(&self) -> Option<i8> {
        let s0 = self.signs[0];
        self.signs.iter().all(|&s| s == s0).then_some(s0)
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum Classification {
    NotBent,
    Regular,
    WeaklyRegular { sign: i8 },
    NonWeaklyRegular { dual_bent: bool },
}

impl Classification {
    pub fn is_bent(&self) -> bool {
        !matches!(self, Classification::NotBent)
    }

    /// Regular or weakly regular.
    pub fn is_weakly_regular(&self) -> bool {
        matches!(
            self,
            Classification::Regular | Classification::WeaklyRegular { .. }
        )
    }

    pub fn name(&self) -> &'static str {
        match self {
            Classification::NotBent => "NotBent",
            Classification::Regular => "Regular",
            Classification::WeaklyRegular { .. } => "WeaklyRegular",
            Classification::NonWeaklyRegular { .. } => "NonWeaklyRegular",
        }
    }
}

fn counts_at(ctx: &FieldCtx, f: &PFunction, y: FFElem) -> Vec<i64> {
    let p = ctx.p();
    let mut cnt = vec![0i64; p as usize];
    for x in ctx.elements() {
        let t = ctx.trace(ctx.mul(x, y));
        cnt[((f.at(x) + p - t) % p) as usize] += 1;
    }
    cnt
}

/// W_f(y) at a single point, by direct summation.
pub fn walsh_at(f: &PFunction, y: FFElem) -> CycInt {
    let ctx = f.ctx();
    CycInt::from_counts(ctx.p(), &counts_at(ctx, f, y))
}

/// Direct O(p^{2n}) transform using field multiplication and the trace.
pub fn walsh_naive(f: &PFunction) -> Result<WalshSpectrum> {
    let ctx = f.ctx().clone();
    if ctx.size() > NAIVE_LIMIT {
        return Err(Error::Budget {
            what: "naive transform field size".into(),
            actual: ctx.size() as u64,
            limit: NAIVE_LIMIT as u64,
        });
    }
    let at = |y: u32| walsh_at(f, FFElem(y));
    let values = if ctx.size() >= PAR_MIN {
        (0..ctx.size()).into_par_iter().map(at).collect()
    } else {
        (0..ctx.size()).map(at).collect()
    };
    Ok(WalshSpectrum {
        ctx,
        values,
        provenance: Provenance::Naive,
    })
}

/// Spectrum over F_p^n with the dot-product pairing:
/// out[u] = sum_c w^{values[c] - u.c}, indices in base-p digit order.
pub fn vector_walsh(p: u32, n: u32, values: &[u8]) -> Vec<CycInt> {
    let pu = p as usize;
    let mut data = vec![0i64; values.len() * pu];
    for (c, &v) in values.iter().enumerate() {
        data[c * pu + v as usize] = 1;
    }
    let t = transform::dft(data, pu, n, -1);
    t.chunks(pu).map(|c| CycInt::from_counts(p, c)).collect()
}

/// Fast transform: n passes of size-p DFTs.
///
/// With x = sum c_i a^i, Tr(x y) = sum c_i u_i where u_i = Tr(a^i y), so
/// W_f(y) is the vector-space transform evaluated at u(y).
pub fn walsh_fast(f: &PFunction) -> WalshSpectrum {
    let ctx = f.ctx().clone();
    let t = vector_walsh(ctx.p(), ctx.n(), f.values());
    let gram = gram_columns(&ctx);
    let values = (0..ctx.size())
        .map(|y| t[dual_index(&ctx, &gram, y) as usize].clone())
        .collect();
    WalshSpectrum {
        ctx,
        values,
        provenance: Provenance::Fast,
    }
}

/// u(a^j) for each basis element: columns of the Gram matrix as indices.
fn gram_columns(ctx: &FieldCtx) -> Vec<FFElem> {
    ctx.basis()
        .into_iter()
        .map(|b| FFElem(ctx.trace_coords(b)))
        .collect()
}

/// u(y) assembled linearly from the Gram columns.
fn dual_index(ctx: &FieldCtx, gram: &[FFElem], y: u32) -> u32 {
    let mut acc = FFElem::ZERO;
    for (j, c) in ctx.coeffs(FFElem(y)).into_iter().enumerate() {
        if c != 0 {
            acc = ctx.add(acc, ctx.scale(c, gram[j]));
        }
    }
    acc.index()
}

/// Recovers f from its spectrum: p^n w^{f(x)} = sum_y W_f(y) w^{Tr(x y)}.
pub fn inverse_walsh(s: &WalshSpectrum) -> Result<PFunction> {
    let ctx = s.ctx.clone();
    let p = ctx.p() as usize;
    let q = ctx.size() as usize;
    let gram = gram_columns(&ctx);
    let mut data = vec![0i64; q * p];
    for (y, w) in s.values.iter().enumerate() {
        let u = dual_index(&ctx, &gram, y as u32) as usize;
        for (r, &c) in w.coords().iter().enumerate() {
            data[u * p + r] = i64::try_from(c).map_err(|_| Error::Overflow("inverse transform"))?;
        }
    }
    let t = transform::dft(data, p, ctx.n(), 1);
    let qi = q as i128;
    let mut values = Vec::with_capacity(q);
    for (x, c) in t.chunks(p).enumerate() {
        let v = CycInt::from_counts(p as u32, c);
        let co = v.coords();
        let j = if let Some(j) = (0..p - 1).find(|&j| co[j] == qi) {
            (co.iter().filter(|&&z| z != 0).count() == 1).then_some(j)
        } else {
            co.iter().all(|&z| z == -qi).then_some(p - 1)
        };
        match j {
            Some(j) => values.push(j as u8),
            None => {
                return Err(Error::pre(format!(
                    "not the spectrum of a function: inversion at element {x} gives {v}"
                )))
            }
        }
    }
    PFunction::new(ctx, values)
}

impl WalshSpectrum {
    pub fn ctx(&self) -> &Arc<FieldCtx> {
        &self.ctx
    }

    pub fn values(&self) -> &[CycInt] {
        &self.values
    }

    pub fn at(&self, y: FFElem) -> &CycInt {
        &self.values[y.index() as usize]
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    /// sum_y |W(y)|^2 as an element of Z[w].
    pub fn parseval_sum(&self) -> CycInt {
        let p = self.ctx.p();
        self.values
            .iter()
            .fold(CycInt::zero(p), |acc, w| &acc + &w.norm_sq())
    }

    /// True iff sum_y |W(y)|^2 = p^{2n} exactly.
    pub fn parseval_holds(&self) -> bool {
        let q = self.ctx.size() as i128;
        self.parseval_sum().as_integer() == Some(q * q)
    }

    /// True iff |W(y)|^2 = p^n for every y.
    pub fn is_bent(&self) -> bool {
        let q = self.ctx.size() as i128;
        self.values
            .iter()
            .all(|w| w.norm_sq().as_integer() == Some(q))
    }

    /// Sign map and dual, read off value by value.
    pub fn certificate(&self) -> Result<BentCertificate> {
        let ctx = &self.ctx;
        let mut signs = Vec::with_capacity(self.values.len());
        let mut dual = Vec::with_capacity(self.values.len());
        for (y, w) in self.values.iter().enumerate() {
            match recognize_unit_times_power(w, ctx.n()) {
                Some(u) => {
                    signs.push(u.sign);
                    dual.push(u.dual_value as u8);
                }
                None if self.is_bent() => {
                    return Err(Error::Inconsistency(format!(
                        "bent spectrum value {w} at {y} has no normal form"
                    )))
                }
                None => return Err(Error::pre("function is not bent")),
            }
        }
        Ok(BentCertificate {
            dual: PFunction::new(ctx.clone(), dual)?,
            signs,
            unit_class: UnitClass::of(ctx.p(), ctx.n()),
        })
    }
}

/// Spectral classification together with the data it was derived from.
#[derive(Clone, Debug)]
pub struct BentAnalysis {
    pub spectrum: WalshSpectrum,
    pub certificate: Option<BentCertificate>,
    pub classification: Classification,
    /// Whether the dual is bent; `None` for non-bent input.
    pub dual_bent: Option<bool>,
}

/// Classifies from an existing spectrum. The dual's spectrum is computed
/// with the fast transform.
pub fn analyze_spectrum(spectrum: WalshSpectrum) -> Result<BentAnalysis> {
    if !spectrum.is_bent() {
        return Ok(BentAnalysis {
            spectrum,
            certificate: None,
            classification: Classification::NotBent,
            dual_bent: None,
        });
    }
    let cert = spectrum.certificate()?;
    let dual_bent = walsh_fast(&cert.dual).is_bent();
    let classification = match cert.constant_sign() {
        Some(1) if cert.unit_class == UnitClass::Real => Classification::Regular,
        Some(s) => Classification::WeaklyRegular { sign: s },
        None => Classification::NonWeaklyRegular { dual_bent },
    };
    Ok(BentAnalysis {
        spectrum,
        certificate: Some(cert),
        classification,
        dual_bent: Some(dual_bent),
    })
}

/// Fast-transform analysis.
pub fn analyze(f: &PFunction) -> Result<BentAnalysis> {
    analyze_spectrum(walsh_fast(f))
}

/// NotBent, Regular, WeaklyRegular or NonWeaklyRegular.
pub fn classify(f: &PFunction) -> Classification {
    // certificate failure on a bent spectrum is an internal bug; surface it loudly
    analyze(f)
        .expect("bent spectrum without normal form")
        .classification
}

/// Outcome of iterating the dual of a weakly regular bent function.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DualIterationReport {
    /// f**(x) = f(-x)
    pub second_is_reflection: bool,
    /// f***(x) = f*(-x)
    pub third_is_reflected_dual: bool,
    /// f**** = f
    pub fourth_is_identity: bool,
}

impl DualIterationReport {
    pub fn all_hold(&self) -> bool {
        self.second_is_reflection && self.third_is_reflected_dual && self.fourth_is_identity
    }
}

pub fn dual_iteration_check(f: &PFunction) -> Result<DualIterationReport> {
    let dual = |g: &PFunction| -> Result<PFunction> {
        let s = walsh_fast(g);
        if !s.is_bent() {
            return Err(Error::pre("an iterated dual is not bent"));
        }
        Ok(s.certificate()?.dual)
    };
    let a = analyze(f)?;
    if !a.classification.is_weakly_regular() {
        return Err(Error::pre(format!(
            "dual iteration needs a weakly regular bent function, got {}",
            a.classification.name()
        )));
    }
    let f1 = a.certificate.expect("bent").dual;
    let f2 = dual(&f1)?;
    let f3 = dual(&f2)?;
    let f4 = dual(&f3)?;
    Ok(DualIterationReport {
        second_is_reflection: f2 == f.reflect(),
        third_is_reflected_dual: f3 == f1.reflect(),
        fourth_is_identity: &f4 == f,
    })
}

/// Bent iff D_a f is balanced for every a != 0.
pub fn bent_via_derivatives(f: &PFunction) -> bool {
    let ctx = f.ctx();
    let p = ctx.p();
    let each = (ctx.size() / p) as u64;
    let check = |a: u32| {
        let a = FFElem(a);
        let mut h = vec![0u64; p as usize];
        for x in ctx.elements() {
            h[((f.at(ctx.add(x, a)) + p - f.at(x)) % p) as usize] += 1;
        }
        h.iter().all(|&c| c == each)
    };
    if ctx.size() >= PAR_MIN {
        (1..ctx.size()).into_par_iter().all(check)
    } else {
        (1..ctx.size()).all(check)
    }
}

/// sum_{c,d} w^{D_{c,d} f(x)} for every x.
pub fn second_derivative_pointwise_sums(f: &PFunction) -> Vec<CycInt> {
    let ctx = f.ctx();
    let p = ctx.p();
    let at = |x: u32| {
        let x = FFElem(x);
        let mut cnt = vec![0i64; p as usize];
        for c in ctx.elements() {
            let xc = ctx.add(x, c);
            let base = f.at(x) + 2 * p - f.at(xc);
            for d in ctx.elements() {
                let v = base + f.at(ctx.add(xc, d)) - f.at(ctx.add(x, d));
                cnt[(v % p) as usize] += 1;
            }
        }
        CycInt::from_counts(p, &cnt)
    };
    if ctx.size() >= PAR_MIN / 4 {
        (0..ctx.size()).into_par_iter().map(at).collect()
    } else {
        (0..ctx.size()).map(at).collect()
    }
}

/// Bent iff sum_{c,d,x} w^{D_{c,d} f(x)} = p^{2n}.
pub fn bent_via_second_derivative_sum(f: &PFunction) -> bool {
    let p = f.ctx().p();
    let q = f.ctx().size() as i128;
    let total = second_derivative_pointwise_sums(f)
        .iter()
        .fold(CycInt::zero(p), |acc, v| &acc + v);
    total.as_integer() == Some(q * q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::funcrep::TraceForm;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn tr(n: u32, terms: &[(i64, u64)]) -> PFunction {
        let ctx = FieldCtx::conway(3, n).unwrap();
        let t: Vec<(FFElem, u64)> = terms.iter().map(|&(m, e)| (ctx.gen_pow(m), e)).collect();
        TraceForm::new(ctx, t, 0).unwrap().eval()
    }

    #[test]
    fn zero_function_spike() {
        let ctx = FieldCtx::conway(3, 3).unwrap();
        let s = walsh_naive(&PFunction::zero(ctx)).unwrap();
        assert_eq!(s.values()[0], CycInt::from_int(3, 27));
        assert!(s.values()[1..].iter().all(|w| w.is_zero()));
        assert!(!s.is_bent());
    }

    #[test]
    fn linear_function_spike() {
        let f = tr(3, &[(5, 1)]);
        let a = f.ctx().gen_pow(5);
        let s = walsh_naive(&f).unwrap();
        for (y, w) in s.values().iter().enumerate() {
            if y as u32 == a.index() {
                assert_eq!(*w, CycInt::from_int(3, 27));
            } else {
                assert!(w.is_zero());
            }
        }
    }

    #[test]
    fn square_on_prime_field() {
        let ctx = FieldCtx::conway(3, 1).unwrap();
        let f = PFunction::new(ctx, vec![0, 1, 1]).unwrap();
        let s = walsh_naive(&f).unwrap();
        assert_eq!(s.values()[0], CycInt::from_coords(3, vec![1, 2]).unwrap());
        // 2 + w^2 = 1 - w
        assert_eq!(s.values()[1], CycInt::from_coords(3, vec![1, -1]).unwrap());
        assert_eq!(walsh_fast(&f).values(), s.values());
    }

    #[test]
    fn fast_matches_naive_random() {
        for (p, n) in [(3, 3), (3, 4), (5, 2), (7, 2), (5, 3)] {
            let ctx = FieldCtx::conway(p, n).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(p as u64 * 100 + n as u64);
            for _ in 0..5 {
                let f = PFunction::random(ctx.clone(), &mut rng);
                let a = walsh_naive(&f).unwrap();
                let b = walsh_fast(&f);
                assert_eq!(a.values(), b.values());
                assert!(b.parseval_holds());
                assert_eq!(inverse_walsh(&b).unwrap(), f);
            }
        }
    }

    #[test]
    fn inverse_rejects_non_spectrum() {
        let f = tr(2, &[(0, 2)]);
        let mut s = walsh_fast(&f);
        s.values[0] = CycInt::from_int(3, 1);
        assert!(matches!(inverse_walsh(&s), Err(Error::Precondition(_))));
    }

    #[test]
    fn quadratic_baselines() {
        assert_eq!(classify(&tr(2, &[(0, 2)])), Classification::Regular);
        assert_eq!(
            classify(&tr(4, &[(0, 2)])),
            Classification::WeaklyRegular { sign: -1 }
        );
        assert_eq!(classify(&tr(6, &[(0, 2)])), Classification::Regular);
        assert!(!classify(&tr(2, &[(0, 1)])).is_bent());
    }

    #[test]
    fn odd_degree_is_imaginary() {
        let f = tr(3, &[(0, 2)]);
        let a = analyze(&f).unwrap();
        assert_eq!(a.certificate.unwrap().unit_class, UnitClass::Imaginary);
        assert!(a.classification.is_weakly_regular());
    }

    #[test]
    fn dual_iteration_on_quadratics() {
        for n in [2, 4, 6] {
            let r = dual_iteration_check(&tr(n, &[(0, 2)])).unwrap();
            assert!(r.all_hold(), "n={n}: {r:?}");
        }
        assert!(dual_iteration_check(&tr(2, &[(0, 1)])).is_err());
    }

    #[test]
    fn derivative_criteria() {
        let f = tr(2, &[(0, 2)]);
        assert!(bent_via_derivatives(&f));
        assert!(bent_via_second_derivative_sum(&f));
        let z = PFunction::zero(f.ctx().clone());
        assert!(!bent_via_derivatives(&z));
        assert!(!bent_via_second_derivative_sum(&z));
    }
}
