//! Exact Walsh spectra, bentness classification and constructions for
//! functions F_{p^n} -> F_p.
//!
//! Spectra are computed in the cyclotomic ring Z[w], w = e^{2 pi i / p}, so
//! every verdict (bent, regular, weakly regular, dual-bent) is exact.

pub mod catalog;
pub mod constructions;
pub mod cyclo;
pub mod derivanalysis;
pub mod error;
pub mod funcrep;
pub mod gf;
pub mod suite;
pub mod walsh;

pub use catalog::{list_catalog, verify_entry, CatalogEntry, VerifyStatus};
pub use constructions::{Trinomial, TrinomialParams};
pub use cyclo::CycInt;
pub use error::{Error, Result};
pub use funcrep::{Anf, PFunction, RelativeTraceForm, TraceForm};
pub use gf::{FFElem, FieldCtx, FieldSpec};
pub use walsh::{
    classify, walsh_fast, walsh_naive, BentCertificate, Classification, WalshSpectrum,
};
