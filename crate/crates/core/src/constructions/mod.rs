//! Generators of bent functions.

mod closed_form;
mod concat;
mod quadratic;
mod trinomial;

pub use closed_form::{
    example1_dual_presentation, example1_substitution, trinomial_closed_form_walsh, trinomial_dual,
    trinomial_dual_degree, trinomial_k1_decomposition, Branch, ClosedForm, Decomposition,
};
pub use concat::{
    bent_concatenation, construction1_k1, mm_special_form, product_walsh, ConcatReport,
    ConcatenationFamily, SpecialFormOutput,
};
pub use quadratic::{
    add_quadratic, linear_part, nonvanishing_quadratic_search, quadratic_trace_form,
    AddQuadraticReport, ConditionTally, NonvanishingQuadratic,
};
pub use trinomial::*;
