//! Combinatorial computations in free products of fusion rule sets and in
//! the Fuss-Catalan diagram algebras.

pub mod diagram;
pub mod free_product;
pub mod fusion;
pub mod fuss_catalan;
pub mod laurent;
pub mod polygon;

pub use diagram::{boundary_word, dim_formula, enumerate_basis, AlgebraElement, ColorPattern, DiagramError, PlanarDiagram};
pub use free_product::{concat_status, Concat, FormalSum, FreeProductError, FreeProductRing, Letter, Word};
pub use fusion::{FusionRing, FusionSum, Label, RingError};
pub use fuss_catalan::{FcError, MiddlePattern};
pub use laurent::{is_generic, quantum_int, Genericity, LaurentError, LaurentPoly, ParamSpec, Var};
pub use polygon::{LabeledPolygon, Polygon, PolygonError, Triangulation};
