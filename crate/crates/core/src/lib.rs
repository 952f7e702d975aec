//! Exact invariants of horospherical embeddings: root data, colored fans,
//! rational functions in `q = uv`, and the stringy E-function pipeline.

pub mod catalog;
pub mod fan;
pub mod qfun;
pub mod roots;
pub mod stringy;
pub mod zlinalg;

pub use fan::{
    ColoredFan, Cone, ConeSpec, DatumError, FanCone, FanInput, HorosphericalDatum, LatticeSpec, OrbitInfo,
    Violation,
};
pub use qfun::{Exponent, QError, QPoly, QRat};
pub use roots::{Family, NodeSubset, RootError, RootSystem, SimpleType};
pub use stringy::{InvariantReport, OmegaFunction, StringyError};
pub use zlinalg::{IntMatrix, LinAlgError, SmithDecomposition};
