//! Exact arithmetic substrate: rationals, integer forms, Smith normal form
//! and finite abelian groups.

pub mod group;
pub mod matrix;
pub mod snf;

pub use group::{
    all_subgroups, cokernel, homomorphisms, quotient, subgroups_of_order, two_torsion, FinAbGroup,
    GroupElement, GroupHom, Presentation, Quotient, Subgroup,
};
pub use matrix::{det_big, signature_i64, signature_rational, IntSymMatrix};
pub use snf::{smith_normal_form, Snf};

/// Exact rational scalar used throughout.
pub type ExactRational = num_rational::BigRational;

pub fn rat(n: i64, d: i64) -> ExactRational {
    ExactRational::new(n.into(), d.into())
}

pub fn format_rational(x: &ExactRational) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}
