//! Seeded invariant batteries run by `pbent property-suite`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::catalog::{verify_catalog, VerifyStatus};
use crate::constructions::{mm_special_form, Trinomial, TrinomialParams};
use crate::derivanalysis::{cubic_like_certificate, quadratic_balance_witness};
use crate::error::{Error, Result};
use crate::funcrep::{Anf, PFunction};
use crate::gf::FieldCtx;
use crate::walsh::{
    bent_via_derivatives, bent_via_second_derivative_sum, classify, dual_iteration_check,
    walsh_fast, walsh_naive, Classification,
};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Level {
    Quick,
    Full,
}

impl std::str::FromStr for Level {
    type Err = Error;

    fn from_str(s: &str) -> Result<Level> {
        match s {
            "quick" => Ok(Level::Quick),
            "full" => Ok(Level::Full),
            _ => Err(Error::parse(
                0,
                format!("unknown level '{s}', expected quick or full"),
            )),
        }
    }
}

impl Level {
    fn samples(self) -> usize {
        match self {
            Level::Quick => 20,
            Level::Full => 200,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub name: &'static str,
    pub cases: usize,
    pub failures: usize,
    pub passed: bool,
}

impl CheckResult {
    fn new(name: &'static str, outcomes: impl IntoIterator<Item = bool>) -> CheckResult {
        let (mut cases, mut failures) = (0, 0);
        for ok in outcomes {
            cases += 1;
            failures += usize::from(!ok);
        }
        CheckResult {
            name,
            cases,
            failures,
            passed: failures == 0,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub seed: u64,
    pub level: Level,
    pub checks: Vec<CheckResult>,
    pub passed: bool,
}

fn randoms(ctx: &std::sync::Arc<FieldCtx>, count: usize, rng: &mut ChaCha8Rng) -> Vec<PFunction> {
    (0..count)
        .map(|_| PFunction::random(ctx.clone(), rng))
        .collect()
}

pub fn run_suite(seed: u64, level: Level) -> Result<SuiteReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let m = level.samples();
    let f27 = FieldCtx::conway(3, 3)?;
    let f9 = FieldCtx::conway(3, 2)?;
    let mut checks = Vec::new();

    let sample = randoms(&f27, m, &mut rng);
    checks.push(CheckResult::new(
        "fast_equals_naive",
        sample.iter().map(|f| {
            walsh_naive(f)
                .map(|s| s.values() == walsh_fast(f).values())
                .unwrap_or(false)
        }),
    ));
    checks.push(CheckResult::new(
        "parseval",
        sample.iter().map(|f| walsh_fast(f).parseval_holds()),
    ));

    let mut small = randoms(&f9, m, &mut rng);
    small.extend(
        crate::catalog::list_catalog()
            .iter()
            .filter_map(|e| e.function().ok())
            .filter(|f| f.ctx().size() == 9),
    );
    checks.push(CheckResult::new(
        "bent_criteria_agree",
        small.iter().map(|f| {
            let b = walsh_fast(f).is_bent();
            b == bent_via_derivatives(f) && b == bent_via_second_derivative_sum(f)
        }),
    ));

    let quads: Vec<PFunction> = (0..3usize.pow(6))
        .map(|code| {
            let terms: Vec<(Vec<u32>, u32)> = [[2, 0], [1, 1], [0, 2], [1, 0], [0, 1], [0, 0]]
                .iter()
                .enumerate()
                .map(|(i, e)| (e.to_vec(), (code / 3usize.pow(i as u32) % 3) as u32))
                .collect();
            Anf::from_terms(3, 2, &terms)
                .and_then(|a| a.to_truth(&f9))
                .expect("valid quadratic")
        })
        .collect();
    checks.push(CheckResult::new(
        "quadratic_balance_witness",
        quads.iter().map(
            |q| matches!(quadratic_balance_witness(q), Ok(w) if w.is_some() == q.is_balanced()),
        ),
    ));

    let cubics: Vec<PFunction> = (0..m)
        .map(|_| {
            Anf::random(3, 3, 3, &mut rng)
                .to_truth(&f27)
                .expect("field matches")
        })
        .collect();
    checks.push(CheckResult::new(
        "cubic_like_iff_bent",
        cubics
            .iter()
            .map(|f| walsh_fast(f).is_bent() == cubic_like_certificate(f).complete),
    ));

    let wr: Vec<PFunction> = crate::catalog::list_catalog()
        .iter()
        .filter_map(|e| e.function().ok())
        .filter(|f| classify(f).is_weakly_regular())
        .collect();
    checks.push(CheckResult::new(
        "dual_iteration",
        wr.iter().map(|f| {
            dual_iteration_check(f)
                .map(|r| r.all_hold())
                .unwrap_or(false)
        }),
    ));

    let bent9: Vec<PFunction> = randoms(&f9, 40 * m, &mut rng)
        .into_iter()
        .filter(|f| walsh_fast(f).is_bent())
        .collect();
    checks.push(CheckResult::new(
        "special_form_bent",
        bent9.chunks_exact(3).map(|g| {
            mm_special_form(g, 1, &[1, 2, 0])
                .map(|o| walsh_fast(&o.function).is_bent())
                .unwrap_or(false)
        }),
    ));

    let tri = [(0u32, 1u64), (2, 1)].map(|(j, t)| {
        TrinomialParams::new(1, j, t)
            .and_then(Trinomial::new)
            .map(|tr| {
                matches!(
                    classify(&tr.function()),
                    Classification::NonWeaklyRegular { .. }
                )
            })
            .unwrap_or(false)
    });
    checks.push(CheckResult::new("trinomial_k1_non_weakly_regular", tri));

    if level == Level::Full {
        checks.push(CheckResult::new(
            "catalog",
            verify_catalog()?
                .into_iter()
                .map(|r| r.status == VerifyStatus::Match),
        ));
    }

    let passed = checks.iter().all(|c| c.passed);
    Ok(SuiteReport {
        seed,
        level,
        checks,
        passed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quick_suite_passes_and_is_deterministic() {
        let a = run_suite(7, Level::Quick).unwrap();
        assert!(a.passed, "{:?}", a.checks);
        let b = run_suite(7, Level::Quick).unwrap();
        let cases = |r: &SuiteReport| r.checks.iter().map(|c| c.cases).collect::<Vec<_>>();
        assert_eq!(cases(&a), cases(&b));
        assert!(a.checks.iter().all(|c| c.cases > 0), "{:?}", a.checks);
    }

    #[test]
    fn level_parses() {
        assert_eq!("full".parse::<Level>().unwrap(), Level::Full);
        assert!("fast".parse::<Level>().is_err());
    }
}
