//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Criteria 7 and 12 state identities that do not hold (see the reasons
//! shown with them). They are expected to FAIL; the test asserts that
//! they still fail for the documented reason and that every other
//! criterion passes.

use std::io::Write;
use std::time::{Duration, Instant};

use pbent::constructions::{
    add_quadratic, example1_dual_presentation, nonvanishing_quadratic_search, trinomial_dual,
    ClosedForm, Trinomial, TrinomialParams,
};
use pbent::derivanalysis::{
    cubic_like_certificate, quadratic_balance_witness, wr_identity_check, WrCheck, WrOptions,
};
use pbent::walsh::{
    bent_via_derivatives, bent_via_second_derivative_sum, classify, walsh_fast, walsh_naive,
    Classification,
};
use pbent::{
    list_catalog, verify_entry, Anf, FFElem, FieldCtx, PFunction, TraceForm, VerifyStatus,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 0x5eed;
const K1_TIME_LIMIT: Duration = Duration::from_secs(5);
const K2_TIME_LIMIT: Duration = Duration::from_secs(300);
/// Every comparison below is exact; this is the allowed number of exceptions.
const EXCEPTIONS_ALLOWED: usize = 0;
const RANDOM_SAMPLES: usize = 200;
const SAMPLED_PAIRS_N4: usize = 500;
const BENT_CUBICS_WANTED: usize = 20;
const CUBIC_DRAW_LIMIT: usize = 200_000;

/// Criteria whose statement is false; they must print FAIL.
const KNOWN_UNATTAINABLE: [(u32, &str); 2] = [
    (
        7,
        "for Tr(x^2), D_c f is affine and W_{D_c f} is a single spike at b = 2c, so vanishing, \
         realness and the dual equality fail; only W_{D_c f}(b) = w^{Tr(bc)} W_{D_b f*}(-c) holds",
    ),
    (12, "f = -q is weakly regular bent and f + q = 0 is not bent; the sign of L(c) in the condition is flipped"),
];

struct Outcome {
    id: u32,
    name: &'static str,
    pass: bool,
    detail: String,
}

fn sq(n: u32) -> PFunction {
    TraceForm::new(FieldCtx::conway(3, n).unwrap(), [(FFElem::ONE, 2)], 0)
        .unwrap()
        .eval()
}

fn is_nwr(c: &Classification) -> bool {
    matches!(c, Classification::NonWeaklyRegular { .. })
}

fn all_tables(ctx: &std::sync::Arc<FieldCtx>) -> impl Iterator<Item = PFunction> + '_ {
    let q = ctx.size() as usize;
    (0..3usize.pow(q as u32)).map(move |mut code| {
        let v = (0..q)
            .map(|_| {
                let d = code % 3;
                code /= 3;
                d as u8
            })
            .collect();
        PFunction::new(ctx.clone(), v).unwrap()
    })
}

fn c1() -> Outcome {
    let start = Instant::now();
    let mut ok = true;
    let mut parts = Vec::new();
    for j in [0, 2] {
        let tri = Trinomial::new(TrinomialParams::new(1, j, 1).unwrap()).unwrap();
        let f = tri.function();
        let class = classify(&f);
        let cert = cubic_like_certificate(&f);
        let wr = wr_identity_check(&f, &WrOptions::default()).unwrap();
        let cross = wr.counts_by_check[WrCheck::CrossDual as usize];
        let deg = f.algebraic_degree();
        ok &= walsh_fast(&f).is_bent() && is_nwr(&class) && deg == 3 && cert.complete && cross > 0;
        parts.push(format!("j={j}: spectral {}, cubic-like complete {}, cross-dual violations {cross}, degree {deg}", class.name(), cert.complete));
    }
    let t = start.elapsed();
    Outcome {
        id: 1,
        name: "trinomial k=1 is cubic non-weakly regular bent (two routes)",
        pass: ok && t < K1_TIME_LIMIT,
        detail: format!("{}; {:.2?}", parts.join("; "), t),
    }
}

fn c2() -> Outcome {
    let start = Instant::now();
    let mut ok = true;
    let mut parts = Vec::new();
    for (j, t) in [(1, 1), (3, 3)] {
        let f = Trinomial::new(TrinomialParams::new(2, j, t).unwrap())
            .unwrap()
            .function();
        let s = walsh_fast(&f);
        let class = classify(&f);
        ok &= s.is_bent() && is_nwr(&class) && f.algebraic_degree() == 3;
        parts.push(format!("(j={j}, t={t}): {}", class.name()));
    }
    let t = start.elapsed();
    Outcome {
        id: 2,
        name: "trinomial k=2 (n=8) via fast transform",
        pass: ok && t < K2_TIME_LIMIT,
        detail: format!("{}; {:.2?}", parts.join(", "), t),
    }
}

fn c3() -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    for e in list_catalog()
        .iter()
        .filter(|e| e.label.starts_with("table1"))
    {
        let r = verify_entry(e).unwrap();
        let exponent = match r.status {
            VerifyStatus::Match => Some(e.primitive_exponent),
            VerifyStatus::PrimitiveDependent { exponent } => Some(exponent),
            VerifyStatus::Mismatch => None,
        };
        ok &= exponent.is_some() && is_nwr(&r.classification) && r.dual_bent == Some(e.dual_bent);
        parts.push(format!(
            "{} {} db={:?} xi^{:?}",
            e.label,
            r.classification.name(),
            r.dual_bent,
            exponent
        ));
    }
    Outcome {
        id: 3,
        name: "Table 1 rows non-weakly regular with matching db/ndb",
        pass: ok,
        detail: parts.join("; "),
    }
}

fn c4() -> Outcome {
    let ctx = FieldCtx::conway(3, 4).unwrap();
    let f = TraceForm::new(ctx, [(FFElem::ONE, 34), (FFElem::ONE, 2)], 0)
        .unwrap()
        .eval();
    let c = classify(&f);
    Outcome {
        id: 4,
        name: "Tr_4(x^34 + x^2) weakly regular bent",
        pass: c.is_weakly_regular(),
        detail: format!("{c:?}"),
    }
}

fn c5() -> Outcome {
    let params = TrinomialParams::closed_form(1, 2).unwrap();
    let tri = Trinomial::new(params).unwrap();
    let dual = trinomial_dual(&tri).unwrap();
    let (df, dd) = (tri.function().algebraic_degree(), dual.algebraic_degree());
    let raw = dual
        .to_relative_trace_form()
        .unwrap()
        .nonlinear_term_count();
    let terms = example1_dual_presentation(params)
        .unwrap()
        .nonlinear_term_count();
    Outcome {
        id: 5,
        name: "Example 1 dual: degree 4 and 12 nonlinear terms",
        pass: df == 3 && dd == 4 && terms == 12,
        detail: format!("deg f = {df}, deg f* = {dd}, substituted presentation {terms} terms (unsubstituted {raw})"),
    }
}

fn c6() -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    for j in [2, 0] {
        let cf = ClosedForm::new(TrinomialParams::closed_form(1, j).unwrap()).unwrap();
        let ctx = cf.trinomial().ctx.clone();
        let spec = walsh_naive(&cf.trinomial().function()).unwrap();
        let mut mismatches = 0;
        let (mut plus, mut minus) = (0, 0);
        for y in ctx.elements() {
            let (w, _) = cf.walsh_at_neg(y);
            mismatches += usize::from(&w != spec.at(ctx.neg(y)));
        }
        let cert = spec.certificate().unwrap();
        for &s in &cert.signs {
            if s > 0 {
                plus += 1
            } else {
                minus += 1
            }
        }
        ok &= mismatches == EXCEPTIONS_ALLOWED && plus > 0 && minus > 0;
        parts.push(format!(
            "j={j}: {mismatches} mismatches / 81, signs +{plus} -{minus}"
        ));
    }
    Outcome {
        id: 6,
        name: "closed-form Walsh values match the naive spectrum",
        pass: ok,
        detail: parts.join("; "),
    }
}

fn c7() -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    for n in [2, 4] {
        let opts = WrOptions {
            seed: SEED,
            sample_pairs: SAMPLED_PAIRS_N4,
            ..WrOptions::default()
        };
        let r = wr_identity_check(&sq(n), &opts).unwrap();
        let k = r.counts_by_check;
        let claimed = k[WrCheck::Vanishing as usize] + k[WrCheck::ZeroTrace as usize];
        ok &= claimed == EXCEPTIONS_ALLOWED
            && r.pairs_checked >= SAMPLED_PAIRS_N4.min(3usize.pow(2 * n));
        parts.push(format!(
            "n={n}: {} pairs (exhaustive {}), vanishing {} realness/dual {} symmetry {} cross-dual {}",
            r.pairs_checked, r.exhaustive, k[WrCheck::Vanishing as usize], k[WrCheck::ZeroTrace as usize],
            k[WrCheck::Symmetry as usize], k[WrCheck::CrossDual as usize]
        ));
    }
    Outcome {
        id: 7,
        name: "first-derivative identities for weakly regular Tr(x^2)",
        pass: ok,
        detail: parts.join("; "),
    }
}

fn c8() -> Outcome {
    let ctx = FieldCtx::conway(3, 2).unwrap();
    let monomials = [[0, 0], [1, 0], [0, 1], [2, 0], [1, 1], [0, 2]];
    let mut exceptions = 0;
    let mut witnessed = 0;
    for code in 0..3usize.pow(6) {
        let terms: Vec<(Vec<u32>, u32)> = monomials
            .iter()
            .enumerate()
            .map(|(i, e)| (e.to_vec(), (code / 3usize.pow(i as u32) % 3) as u32))
            .collect();
        let q = Anf::from_terms(3, 2, &terms)
            .unwrap()
            .to_truth(&ctx)
            .unwrap();
        let w = quadratic_balance_witness(&q).unwrap();
        witnessed += usize::from(w.is_some());
        exceptions += usize::from(w.is_some() != q.is_balanced());
    }
    Outcome {
        id: 8,
        name: "degree-2 balance iff constant nonzero derivative",
        pass: exceptions == EXCEPTIONS_ALLOWED,
        detail: format!("729 patterns, {witnessed} balanced, {exceptions} exceptions"),
    }
}

fn c9() -> Outcome {
    let ctx = FieldCtx::conway(3, 3).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let (mut exceptions, mut bent, mut drawn) = (0, 0, 0);
    // the fixed sample, then further draws until some bent cubics are in
    while drawn < RANDOM_SAMPLES || (bent < BENT_CUBICS_WANTED && drawn < CUBIC_DRAW_LIMIT) {
        let f = Anf::random(3, 3, 3, &mut rng).to_truth(&ctx).unwrap();
        drawn += 1;
        let b = walsh_fast(&f).is_bent();
        bent += usize::from(b);
        exceptions += usize::from(b != cubic_like_certificate(&f).complete);
    }
    Outcome {
        id: 9,
        name: "cubic: bent iff cubic-like",
        pass: exceptions == EXCEPTIONS_ALLOWED && drawn >= RANDOM_SAMPLES,
        detail: format!("{drawn} random cubics on F_27, {bent} bent, {exceptions} exceptions"),
    }
}

fn c10() -> Outcome {
    let ctx = FieldCtx::conway(3, 3).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 1);
    let mut fs: Vec<PFunction> = (0..RANDOM_SAMPLES)
        .map(|_| PFunction::random(ctx.clone(), &mut rng))
        .collect();
    fs.extend(list_catalog().iter().map(|e| e.function().unwrap()));
    let (mut diff, mut parseval) = (0, 0);
    for f in &fs {
        let fast = walsh_fast(f);
        let naive = walsh_naive(f).unwrap();
        diff += usize::from(fast.values() != naive.values());
        parseval += usize::from(!fast.parseval_holds() || !naive.parseval_holds());
    }
    Outcome {
        id: 10,
        name: "fast transform equals naive; Parseval",
        pass: diff == EXCEPTIONS_ALLOWED && parseval == EXCEPTIONS_ALLOWED,
        detail: format!(
            "{} functions, {diff} spectrum mismatches, {parseval} Parseval failures",
            fs.len()
        ),
    }
}

fn c11() -> Outcome {
    let ctx = FieldCtx::conway(3, 2).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 2);
    let (mut exceptions, mut bent) = (0, 0);
    for _ in 0..RANDOM_SAMPLES {
        let f = PFunction::random(ctx.clone(), &mut rng);
        let b = walsh_fast(&f).is_bent();
        bent += usize::from(b);
        exceptions +=
            usize::from(b != bent_via_derivatives(&f) || b != bent_via_second_derivative_sum(&f));
    }
    Outcome {
        id: 11,
        name: "three bentness criteria agree",
        pass: exceptions == EXCEPTIONS_ALLOWED,
        detail: format!(
            "{RANDOM_SAMPLES} random functions on F_9, {bent} bent, {exceptions} exceptions"
        ),
    }
}

fn c12() -> Outcome {
    let mut parts = Vec::new();
    let mut exists = true;
    let mut all_bent = true;
    for n in [1, 2] {
        let q = nonvanishing_quadratic_search(3, n).unwrap();
        let Some(q) = q else {
            exists = false;
            continue;
        };
        let ctx = q.function.ctx().clone();
        let (mut tested, mut not_bent, mut exact_mismatch) = (0, 0, 0);
        for f in all_tables(&ctx).filter(|f| classify(f).is_weakly_regular()) {
            let r = add_quadratic(&f, &q.coeffs).unwrap();
            tested += 1;
            not_bent += usize::from(!r.spectral_bent);
            exact_mismatch += usize::from(r.exact_condition != r.spectral_bent);
        }
        all_bent &= not_bent == 0;
        parts.push(format!(
            "n={n}: q = {:?}, {tested} weakly regular f, {not_bent} with f+q not bent, exact criterion mismatches {exact_mismatch}",
            q.anf.terms()
        ));
    }
    let none3 = nonvanishing_quadratic_search(3, 3).unwrap().is_none();
    parts.push(format!("n=3: search returns None = {none3}"));
    Outcome {
        id: 12,
        name: "nonvanishing quadratic keeps every weakly regular f bent",
        pass: exists && all_bent && none3,
        detail: parts.join("; "),
    }
}

#[test]
fn acceptance() {
    let outcomes = [
        c1(),
        c2(),
        c3(),
        c4(),
        c5(),
        c6(),
        c7(),
        c8(),
        c9(),
        c10(),
        c11(),
        c12(),
    ];
    // written past the harness capture so the report shows in plain `cargo test`
    let mut report = String::from("\n");
    for o in &outcomes {
        let verdict = if o.pass { "PASS" } else { "FAIL" };
        report += &format!("{verdict} [{:>2}] {}: {}\n", o.id, o.name, o.detail);
        if let Some((_, why)) = KNOWN_UNATTAINABLE.iter().find(|(id, _)| *id == o.id) {
            report += &format!("          known unattainable: {why}\n");
        }
    }
    let mut out = std::io::stdout().lock();
    out.write_all(report.as_bytes()).expect("stdout");
    out.flush().expect("stdout");
    for o in &outcomes {
        let known = KNOWN_UNATTAINABLE.iter().any(|(id, _)| *id == o.id);
        assert_eq!(
            o.pass, !known,
            "criterion {} changed status: {}",
            o.id, o.detail
        );
    }
}
