use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;
use std::sync::Arc;
use std::time::Instant;

use pbent::catalog::{verify_catalog, VerifyReport, VerifyStatus};
use pbent::constructions::{
    add_quadratic, bent_concatenation, mm_special_form, nonvanishing_quadratic_search,
    ConcatenationFamily, Trinomial, TrinomialParams,
};
use pbent::derivanalysis::{cubic_like_certificate, wr_identity_check, WrOptions};
use pbent::funcrep::ParsedFunction;
use pbent::suite::{run_suite, Level, SuiteReport};
use pbent::walsh::{analyze_spectrum, walsh_fast, walsh_naive, Classification, WalshSpectrum};
use pbent::{FFElem, FieldCtx, PFunction};
use serde::Serialize;

use crate::error::{CliError, CliResult};

/// Size limits for a single run.
#[derive(Copy, Clone, Debug)]
pub struct Budget {
    /// Largest p^n for which a spectrum is computed.
    pub spectrum: u64,
    /// Largest p^n for pairwise scans (certificates, identity checks).
    pub pairs: u64,
}

impl Budget {
    fn check(limit: u64, what: &str, p: u32, n: u32) -> CliResult<()> {
        let size = (p as u64).checked_pow(n).unwrap_or(u64::MAX);
        if size > limit {
            return Err(pbent::Error::Budget {
                what: what.into(),
                actual: size,
                limit,
            }
            .into());
        }
        Ok(())
    }
}

fn parse_function(spec: &str, budget: Budget) -> CliResult<PFunction> {
    let parsed = ParsedFunction::parse(spec)?;
    let field = parsed.field.as_ref().ok_or_else(|| pbent::Error::Parse {
        pos: 0,
        msg: "missing field 'p=.. n=..'".into(),
    })?;
    Budget::check(budget.spectrum, "field size p^n", field.p, field.n)?;
    let (_, tf) = parsed.build()?;
    Ok(tf.eval())
}

fn read_file(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

#[derive(Serialize)]
pub struct SignHistogram {
    pub plus: usize,
    pub minus: usize,
}

#[derive(Serialize)]
pub struct CubicLikeSummary {
    pub complete: bool,
    pub missing: usize,
}

#[derive(Serialize)]
pub struct WrSummary {
    pub exhaustive: bool,
    pub pairs_checked: usize,
    pub violations: usize,
    pub symmetry: usize,
    pub cross_dual: usize,
    pub vanishing: usize,
    pub zero_trace: usize,
}

#[derive(Serialize)]
pub struct AnalysisReport {
    pub input: String,
    pub p: u32,
    pub n: u32,
    pub transform: &'static str,
    pub bent: bool,
    pub classification: Classification,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sign_histogram: Option<SignHistogram>,
    pub algebraic_degree: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dual_degree: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dual_bent: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cubic_like: Option<CubicLikeSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wr_identity: Option<WrSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dual_form: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings_ms: Option<BTreeMap<&'static str, f64>>,
}

#[derive(Copy, Clone, Debug, Default)]
pub struct AnalyzeFlags {
    pub naive: bool,
    pub certify: bool,
    pub dual_form: bool,
    pub timings: bool,
    pub seed: u64,
}

struct Clock {
    on: bool,
    laps: BTreeMap<&'static str, f64>,
}

impl Clock {
    fn time<T>(&mut self, name: &'static str, f: impl FnOnce() -> T) -> T {
        let t = Instant::now();
        let out = f();
        if self.on {
            self.laps.insert(name, t.elapsed().as_secs_f64() * 1e3);
        }
        out
    }
}

pub fn analyze_function(
    input: String,
    f: &PFunction,
    flags: AnalyzeFlags,
    budget: Budget,
) -> CliResult<AnalysisReport> {
    let ctx = f.ctx().clone();
    let mut clock = Clock {
        on: flags.timings,
        laps: BTreeMap::new(),
    };
    let spectrum: WalshSpectrum = clock.time("spectrum", || {
        if flags.naive {
            walsh_naive(f)
        } else {
            Ok(walsh_fast(f))
        }
    })?;
    let bent = spectrum.is_bent();
    let analysis = clock.time("classify", || analyze_spectrum(spectrum))?;
    let algebraic_degree = clock.time("degree", || f.algebraic_degree());
    let cert = analysis.certificate.as_ref();
    let sign_histogram = cert.map(|c| {
        let (plus, minus) = c.sign_histogram();
        SignHistogram { plus, minus }
    });
    let dual_degree = cert.map(|c| c.dual.algebraic_degree());

    let (mut cubic_like, mut wr_identity) = (None, None);
    if flags.certify {
        Budget::check(budget.pairs, "certificate scan p^n", ctx.p(), ctx.n())?;
        let c = clock.time("cubic_like", || cubic_like_certificate(f));
        cubic_like = Some(CubicLikeSummary {
            complete: c.complete,
            missing: c.missing().len(),
        });
        if bent {
            let opts = WrOptions {
                seed: flags.seed,
                ..WrOptions::default()
            };
            let r = clock.time("wr_identity", || wr_identity_check(f, &opts))?;
            let k = r.counts_by_check;
            wr_identity = Some(WrSummary {
                exhaustive: r.exhaustive,
                pairs_checked: r.pairs_checked,
                violations: r.violation_count,
                symmetry: k[0],
                cross_dual: k[1],
                vanishing: k[2],
                zero_trace: k[3],
            });
        }
    }
    let dual_form = match (flags.dual_form, cert) {
        (true, Some(c)) => Some(
            clock
                .time("dual_form", || c.dual.to_relative_trace_form())?
                .to_string(),
        ),
        (true, None) => {
            return Err(
                pbent::Error::Precondition("--dual-form needs a bent function".into()).into(),
            )
        }
        _ => None,
    };
    Ok(AnalysisReport {
        input,
        p: ctx.p(),
        n: ctx.n(),
        transform: if flags.naive { "naive" } else { "fast" },
        bent,
        classification: analysis.classification,
        sign_histogram,
        algebraic_degree,
        dual_degree,
        dual_bent: analysis.dual_bent,
        cubic_like,
        wr_identity,
        dual_form,
        timings_ms: flags.timings.then_some(clock.laps),
    })
}

pub fn analyze(spec: &str, flags: AnalyzeFlags, budget: Budget) -> CliResult<AnalysisReport> {
    let f = parse_function(spec, budget)?;
    analyze_function(spec.to_string(), &f, flags, budget)
}

/// `index,c0,...,c{p-2}` with W(y) = sum c_i w^i, rows in element order.
pub fn spectrum_csv(spec: &str, naive: bool, budget: Budget) -> CliResult<String> {
    let f = parse_function(spec, budget)?;
    let s = if naive {
        walsh_naive(&f)?
    } else {
        walsh_fast(&f)
    };
    let p = f.ctx().p();
    let mut out = String::from("index");
    for i in 0..p - 1 {
        write!(out, ",c{i}").expect("string write");
    }
    out.push('\n');
    for (i, w) in s.values().iter().enumerate() {
        write!(out, "{i}").expect("string write");
        for c in w.coords() {
            write!(out, ",{c}").expect("string write");
        }
        out.push('\n');
    }
    Ok(out)
}

#[derive(Serialize)]
pub struct TrinomialReport {
    pub k: u32,
    pub j: u32,
    pub t: u64,
    pub p: u32,
    pub n: u32,
    pub form: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub analysis: Option<AnalysisReport>,
}

pub fn construct_trinomial(
    k: u32,
    j: u32,
    t: u64,
    analyze: bool,
    flags: AnalyzeFlags,
    budget: Budget,
) -> CliResult<TrinomialReport> {
    let params = TrinomialParams::new(k, j, t)?;
    Budget::check(budget.spectrum, "field size 3^(4k)", 3, params.n())?;
    let tri = Trinomial::new(params)?;
    let form = tri.form().to_string();
    let analysis = if analyze {
        Some(analyze_function(
            form.clone(),
            &tri.function(),
            flags,
            budget,
        )?)
    } else {
        None
    };
    Ok(TrinomialReport {
        k,
        j,
        t,
        p: 3,
        n: params.n(),
        form,
        analysis,
    })
}

#[derive(Serialize)]
pub struct ConstructionReport {
    pub construction: &'static str,
    pub p: u32,
    pub n: u32,
    pub bent: bool,
    pub classification: Classification,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub units_constant: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub phi_bent: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub values: Option<Vec<u8>>,
}

fn read_slices(
    path: &Path,
    default_field: Option<&str>,
    budget: Budget,
) -> CliResult<Vec<PFunction>> {
    let text = read_file(path)?;
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| match default_field {
            Some(field) if !l.contains("p=") => parse_function(&format!("{field} {l}"), budget),
            _ => parse_function(l, budget),
        })
        .collect()
}

fn outer_dimension(p: u32, count: usize) -> CliResult<u32> {
    let mut m = 0;
    let mut size = 1usize;
    while size < count {
        size *= p as usize;
        m += 1;
    }
    if size != count || count == 0 {
        return Err(pbent::Error::Precondition(format!(
            "slice count {count} is not a power of {p}"
        ))
        .into());
    }
    Ok(m)
}

pub fn construct_concat(
    slices: &Path,
    pi: Option<&Path>,
    field: Option<&str>,
    emit_table: bool,
    budget: Budget,
) -> CliResult<ConstructionReport> {
    let g = read_slices(slices, field, budget)?;
    let inner = g
        .first()
        .ok_or_else(|| pbent::Error::Precondition("no slices given".into()))?
        .ctx()
        .clone();
    let (p, n) = (inner.p(), inner.n());
    let d = outer_dimension(p, g.len())?;
    match pi {
        Some(pi_path) => {
            let perm = read_file(pi_path)?
                .split_whitespace()
                .map(|w| {
                    w.parse::<u32>().map_err(|_| pbent::Error::Parse {
                        pos: 0,
                        msg: format!("bad permutation entry '{w}'"),
                    })
                })
                .collect::<Result<Vec<u32>, _>>()?;
            Budget::check(budget.spectrum, "output size p^(n+2d)", p, n + 2 * d)?;
            let out = mm_special_form(&g, d, &perm)?;
            let f = out.function;
            let s = walsh_fast(&f);
            let classification = analyze_spectrum(s)?.classification;
            Ok(ConstructionReport {
                construction: "special_form",
                p,
                n: f.ctx().n(),
                bent: classification.is_bent(),
                classification,
                units_constant: None,
                phi_bent: None,
                values: emit_table.then(|| f.values().to_vec()),
            })
        }
        None => {
            Budget::check(budget.spectrum, "output size p^(n+m)", p, n + d)?;
            let fam = ConcatenationFamily::new(d, g)?;
            let r = bent_concatenation(&fam)?;
            let classification = pbent::classify(&r.function);
            Ok(ConstructionReport {
                construction: "concatenation",
                p,
                n: r.function.ctx().n(),
                bent: r.spectral_bent,
                classification,
                units_constant: Some(r.units_constant),
                phi_bent: Some(r.phi_bent),
                values: emit_table.then(|| r.function.values().to_vec()),
            })
        }
    }
}

#[derive(Serialize)]
pub struct AddQuadraticOutput {
    pub p: u32,
    pub n: u32,
    pub coefficients: Vec<String>,
    pub q_vanishes: bool,
    pub sufficient_condition: bool,
    pub exact_condition: bool,
    pub spectral_bent: bool,
    pub classification: Classification,
}

fn parse_coefficient(ctx: &Arc<FieldCtx>, s: &str) -> CliResult<FFElem> {
    let s = s.trim();
    let bad = || {
        CliError::from(pbent::Error::Parse {
            pos: 0,
            msg: format!("bad coefficient '{s}'"),
        })
    };
    if let Some(e) = s.strip_prefix("g^") {
        return Ok(ctx.gen_pow(e.parse().map_err(|_| bad())?));
    }
    Ok(ctx.from_int(s.parse().map_err(|_| bad())?))
}

pub fn construct_add_quadratic(
    spec: &str,
    coeffs: Option<&str>,
    budget: Budget,
) -> CliResult<AddQuadraticOutput> {
    let f = parse_function(spec, budget)?;
    let ctx = f.ctx().clone();
    Budget::check(budget.pairs, "derivative scan p^n", ctx.p(), ctx.n())?;
    let (a, labels) = match coeffs {
        Some(list) => {
            let labels: Vec<String> = list.split(',').map(|s| s.trim().to_string()).collect();
            let a = labels
                .iter()
                .map(|s| parse_coefficient(&ctx, s))
                .collect::<CliResult<Vec<_>>>()?;
            (a, labels)
        }
        None => {
            let found = nonvanishing_quadratic_search(ctx.p(), ctx.n())?.ok_or_else(|| {
                pbent::Error::Precondition(format!(
                    "no quadratic without nontrivial zeros exists for n = {}",
                    ctx.n()
                ))
            })?;
            if found.function.ctx().modulus() != ctx.modulus() {
                return Err(pbent::Error::Precondition(
                    "the searched quadratic lives on the Conway field; pass --a".into(),
                )
                .into());
            }
            let labels = found.coeffs.iter().map(|&c| match ctx.log(c) {
                Some(e) => format!("g^{e}"),
                None => "0".into(),
            });
            (found.coeffs.clone(), labels.collect())
        }
    };
    let r = add_quadratic(&f, &a)?;
    Ok(AddQuadraticOutput {
        p: ctx.p(),
        n: ctx.n(),
        coefficients: labels,
        q_vanishes: r.q_vanishes,
        sufficient_condition: r.sufficient_condition,
        exact_condition: r.exact_condition,
        spectral_bent: r.spectral_bent,
        classification: pbent::classify(&r.g),
    })
}

pub fn verify_table1() -> CliResult<Vec<(pbent::CatalogEntry, VerifyReport)>> {
    let entries = pbent::list_catalog();
    let reports = verify_catalog()?;
    Ok(entries.into_iter().zip(reports).collect())
}

pub fn verify_table1_text(rows: &[(pbent::CatalogEntry, VerifyReport)]) -> String {
    let mut out = String::new();
    writeln!(
        out,
        "{:<12} {:<34} {:<17} {:<6} {:<4} status",
        "label", "function", "class", "db", "deg"
    )
    .expect("string write");
    for (e, r) in rows {
        let status = match &r.status {
            VerifyStatus::Match => "match".to_string(),
            VerifyStatus::Mismatch => "MISMATCH".to_string(),
            VerifyStatus::PrimitiveDependent { exponent } => {
                format!("primitive-dependent (xi^{exponent})")
            }
        };
        let db = r.dual_bent.map_or(
            "-".to_string(),
            |b| if b { "db".into() } else { "ndb".into() },
        );
        writeln!(
            out,
            "{:<12} {:<34} {:<17} {:<6} {:<4} {status}",
            e.label,
            e.spec,
            r.classification.name(),
            db,
            r.algebraic_degree
        )
        .expect("string write");
    }
    out
}

pub fn property_suite(seed: u64, level: Level) -> CliResult<SuiteReport> {
    Ok(run_suite(seed, level)?)
}
