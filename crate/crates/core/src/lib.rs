//! Exact arithmetic on finitary power semigroups over numerical semigroups.
//!
//! The crate is `no_std` and only needs `alloc`. It covers:
//!
//! - [`set`]: finite nonempty sets of naturals with sumset addition, dilation,
//!   translation, reflection and gap sets.
//! - [`semigroup`]: numerical semigroups and monoids stored by their finite
//!   complement.
//! - [`power`]: finite windows of `P(S)` and `P0(S)`, the involution
//!   `X -> max(X) - X + min(X)`, translation classes and the normalizing map
//!   onto `P0(N)`.
//! - [`lab`]: candidate automorphisms on windows, structural checks, and an
//!   exhaustive constraint-propagating automorphism search.
//!
//! ```
//! use semipower_core::*;
//!
//! let s = NumericalSemigroup::from_generators(&[3, 5], true)?;
//! assert_eq!(s.gaps(), &[1, 2, 4, 7]);
//! assert_eq!((s.frobenius(), s.critical()), (Some(7), 8));
//!
//! let x: NaturalSet = "0,5,8,10".parse()?;
//! let y = NaturalSet::interval(2, 3)?;
//! assert_eq!(x.add(&y)?.to_string(), "2,3,7,8,10,11,12,13");
//! assert_eq!(sigma(&"2,4,5".parse()?).to_string(), "2,3,5");
//!
//! let window = WindowCarrier::enumerate(&s, 13, false, DEFAULT_CARRIER_CAP)?;
//! let report = search_automorphisms(&window, &SearchConfig::filtered())?;
//! assert_eq!(report.classes(), [lab::MapClass::Identity]);
//! # Ok::<(), Box<dyn std::error::Error>>(())
//! ```

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod lab;
pub mod power;
pub mod semigroup;
pub mod set;

pub use lab::{
    check_additivity, element_automorphism_search, induced_quotient_map, lemma_suite,
    measure_params, search_automorphisms, sigma_restriction_obstruction,
    translation_equivariance_check, verify_growth_formula, CandidateMap, Filter, LabError,
    MapClass, MeasuredParams, SearchConfig, SearchMode, SearchReport,
};
pub use power::{
    equivalent, phi, phi_inv, sigma, EquivClassRep, WindowCarrier, WindowError, DEFAULT_CARRIER_CAP,
};
pub use semigroup::{NumericalSemigroup, SemigroupError};
pub use set::{NaturalSet, SetError};
