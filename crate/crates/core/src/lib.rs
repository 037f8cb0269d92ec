//! Exact computation of Hall polynomials for coherent sheaves on weighted
//! projective lines: line bundles, extension bundles and torsion sheaves,
//! together with their tame-quiver reformulations and a brute-force
//! finite-field oracle that validates every desk-scale identity.

pub mod error;
pub mod extbundle;
pub mod hall;
pub mod lgroup;
pub mod oracle;
pub mod polyring;
pub mod quiverside;
pub mod sheafcat;
pub mod tubes;

pub use error::{Error, Result};
pub use extbundle::ExtensionBundle;
pub use lgroup::{LElement, WeightType};
pub use oracle::{IsoType, NilpRep};
pub use polyring::{LaurentPoly, RationalFn};
pub use sheafcat::K0Class;
pub use tubes::{TorsionSheaf, TubeIndec};
