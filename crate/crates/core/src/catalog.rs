//! Built-in known functions and a harness that re-derives their class.

use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::funcrep::{PFunction, ParsedFunction};
use crate::gf::FieldCtx;
use crate::walsh::{classify, Classification};

const DATA: &str = include_str!("../data/catalog.txt");

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ExpectedClass {
    NonWeaklyRegular,
    WeaklyRegular,
    Regular,
}

impl ExpectedClass {
    fn parse(s: &str) -> Option<ExpectedClass> {
        match s {
            "nwr" => Some(ExpectedClass::NonWeaklyRegular),
            "wr" => Some(ExpectedClass::WeaklyRegular),
            "regular" => Some(ExpectedClass::Regular),
            _ => None,
        }
    }

    pub fn accepts(self, c: &Classification) -> bool {
        match self {
            ExpectedClass::NonWeaklyRegular => matches!(c, Classification::NonWeaklyRegular { .. }),
            ExpectedClass::WeaklyRegular => c.is_weakly_regular(),
            ExpectedClass::Regular => matches!(c, Classification::Regular),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CatalogEntry {
    pub label: String,
    pub spec: String,
    pub expected: ExpectedClass,
    pub dual_bent: bool,
    /// Pinned primitive exponent: g is read as xi^s.
    pub primitive_exponent: i64,
    pub note: String,
}

impl CatalogEntry {
    pub fn parsed(&self) -> Result<ParsedFunction> {
        ParsedFunction::parse(&self.spec)
    }

    pub fn field(&self) -> Result<Arc<FieldCtx>> {
        let parsed = self.parsed()?;
        parsed
            .field
            .as_ref()
            .ok_or_else(|| Error::parse(0, "catalog entry lacks a field"))?
            .build()
    }

    /// The function with g read as xi^s.
    pub fn function_with(&self, s: i64) -> Result<PFunction> {
        let ctx = self.field()?;
        Ok(self.parsed()?.function.instantiate_with(&ctx, s)?.eval())
    }

    pub fn function(&self) -> Result<PFunction> {
        self.function_with(self.primitive_exponent)
    }
}

fn parse_line(no: usize, line: &str) -> Result<CatalogEntry> {
    let cols: Vec<&str> = line.split('|').map(str::trim).collect();
    let bad = |msg: &str| Error::parse(no, format!("catalog line {}: {msg}", no + 1));
    if cols.len() != 6 {
        return Err(bad("expected 6 columns"));
    }
    Ok(CatalogEntry {
        label: cols[0].to_string(),
        spec: cols[1].to_string(),
        expected: ExpectedClass::parse(cols[2]).ok_or_else(|| bad("unknown class"))?,
        dual_bent: cols[3]
            .parse()
            .map_err(|_| bad("dual-bent must be true or false"))?,
        primitive_exponent: cols[4].parse().map_err(|_| bad("bad exponent"))?,
        note: cols[5].to_string(),
    })
}

/// All built-in entries in file order.
pub fn list_catalog() -> Vec<CatalogEntry> {
    DATA.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
        .map(|(i, l)| parse_line(i, l).expect("built-in catalog is well formed"))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum VerifyStatus {
    Match,
    Mismatch,
    /// Fails for the pinned exponent but holds for xi^s.
    PrimitiveDependent {
        exponent: i64,
    },
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub label: String,
    pub status: VerifyStatus,
    pub classification: Classification,
    pub dual_bent: Option<bool>,
    pub algebraic_degree: u32,
}

fn dual_bent_of(c: &Classification) -> Option<bool> {
    match c {
        Classification::NotBent => None,
        Classification::Regular | Classification::WeaklyRegular { .. } => Some(true),
        Classification::NonWeaklyRegular { dual_bent } => Some(*dual_bent),
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn verify_entry(e: &CatalogEntry) -> Result<VerifyReport> {
    let check = |f: &PFunction| {
        let c = classify(f);
        let ok = e.expected.accepts(&c) && dual_bent_of(&c) == Some(e.dual_bent);
        (ok, c)
    };
    let f = e.function()?;
    let (ok, classification) = check(&f);
    let mut report = VerifyReport {
        label: e.label.clone(),
        status: if ok {
            VerifyStatus::Match
        } else {
            VerifyStatus::Mismatch
        },
        dual_bent: dual_bent_of(&classification),
        classification,
        algebraic_degree: f.algebraic_degree(),
    };
    if ok || !e.parsed()?.function.uses_generator() {
        return Ok(report);
    }
    let m = e.field()?.size() as u64 - 1;
    for s in (1..m).filter(|&s| gcd(s, m) == 1 && s as i64 != e.primitive_exponent) {
        let g = e.function_with(s as i64)?;
        let (ok, c) = check(&g);
        if ok {
            report.status = VerifyStatus::PrimitiveDependent { exponent: s as i64 };
            report.dual_bent = dual_bent_of(&c);
            report.classification = c;
            report.algebraic_degree = g.algebraic_degree();
            break;
        }
    }
    Ok(report)
}

/// Verifies every entry, in catalog order.
pub fn verify_catalog() -> Result<Vec<VerifyReport>> {
    list_catalog().par_iter().map(verify_entry).collect()
}
