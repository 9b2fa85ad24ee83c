//! Local topological zeta functions of nondegenerate plane curves, computed
//! exactly from the Newton polygon, together with pole and residue analysis
//! and the B₁-facet pole criterion.
//!
//! ```
//! use topzeta::{cli::parse_polynomial, polygon::build_polygon, zeta::topological_zeta};
//!
//! let support = parse_polynomial("x^2 + y^3").unwrap();
//! let z = topological_zeta(&build_polygon(&support)).zeta;
//! assert_eq!(z.to_string(), "(4s+5)/((s+1)(6s+5))");
//! ```

pub mod cli;
pub mod criterion;
pub mod exactnum;
pub mod poles;
pub mod polygon;
pub mod zeta;

pub use exactnum::{FactoredRatFunc, LinFactor, Rational, UniPoly};
pub use polygon::{build_polygon, NewtonPolygon, Support};
pub use zeta::{topological_zeta, ZetaResult};
