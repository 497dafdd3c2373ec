//! Structural reductions and example families.

mod decomposition;
mod equations;
mod families;
mod matrix;
mod trinomial;

pub use decomposition::{equidimensional_reduce, strip_principal_part, EquidimensionalReport, StripReport, StrippedIdeal};
pub use equations::{expected_equations_check, hilbert_burch_check, jacobian_dual, linear_forms, ExpectedEquations};
pub use families::{
    cycle_edge_ideal, herzog_northcott, monomial_curve_ideal, parametrized_curve_ideal, CurveIdeal, HNIdeal,
};
pub use matrix::PolyMatrix;
pub use trinomial::{trinomialize, TrinomialReduction};
