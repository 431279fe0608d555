//! Free Z2-graded algebra on the mode generators `t[i,j;k]`, the mode
//! relations and straightening to normal form.

mod algelem;
mod normal;
mod relations;
mod rules;

pub use algelem::{generator_parity, sign_exponent, super_commutator, AlgElem, GeneratorId, Word};
pub use normal::{
    normal_form, normal_form_checked, normal_form_with, reduces_to_zero, NormalStatus, Strategy, DEFAULT_MAX_PASSES,
};
pub use relations::{
    classical_limit, derive_mode_relations, enumerate_relations, series_coefficient, Half, RelationId, SignPair,
};
pub use rules::{pair_is_ordered, Coverage, MinusOrientation, Pair, RewriteRule, RuleSet};
