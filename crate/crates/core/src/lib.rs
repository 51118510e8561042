//! Exact Todd numbers, characteristic numbers and degree-formula
//! incompressibility criteria for complete intersections in projective space.
//!
//! ```
//! use degform_core::variety::{euler_char, CompleteIntersection};
//! use degform_core::criteria::build_report;
//!
//! // A conic whose closed points all have even degree.
//! let conic = CompleteIntersection::new(2, vec![2], Some(2.into())).unwrap();
//! assert_eq!(euler_char(&conic).unwrap(), 1.into());
//! let report = build_report(&conic).unwrap();
//! assert_eq!(report.overall.as_str(), "incompressible-proven");
//! ```

pub mod arith;
pub mod criteria;
mod decimal;
pub mod error;
pub mod series;
pub mod sweep;
pub mod symfun;
pub mod variety;

pub use error::{Error, Result};

// Compile the guide's snippets as doctests so the book cannot drift.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../README.md")]
    mod readme {}
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/todd-numbers.md")]
    mod todd_numbers {}
    #[doc = include_str!("../../../book/src/power-series.md")]
    mod power_series {}
    #[doc = include_str!("../../../book/src/symmetric-functions.md")]
    mod symmetric_functions {}
    #[doc = include_str!("../../../book/src/characteristic-numbers.md")]
    mod characteristic_numbers {}
    #[doc = include_str!("../../../book/src/degree-formula.md")]
    mod degree_formula {}
    #[doc = include_str!("../../../book/src/parity-of-threefolds.md")]
    mod parity_of_threefolds {}
    #[doc = include_str!("../../../book/src/command-line.md")]
    mod command_line {}
}
