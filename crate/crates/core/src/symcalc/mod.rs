//! Exact symbolic algebra of Laurent polynomials in `z` and `z̄`.
//!
//! Every function here is generic over the coefficient field
//! ([`Coefficient`](crate::scalar::Coefficient)); the crate root fixes the
//! usual choice, Gaussian rationals, as [`Poly`](crate::Poly).

mod almansi;
mod bilaurent;
mod cellular;
mod json;
mod lagrange;
pub mod operators;
pub mod random;

pub use almansi::{almansi_decompose, AlmansiForm, AltAlmansiForm, ExtensionPoly};
pub use bilaurent::{BiLaurent, Exponent};
pub use cellular::{cellular_decompose, entangled_v1_from_v0, l_solution, CellularForm, PieceCheck};
pub use lagrange::{lagrange_polys, lagrange_reconstruct, EvenPoly, LagrangeFrame};
pub use operators::{
    apply_l, dz, dzbar, euler, is_harmonic, is_n_harmonic, kernel_laurent_at_one, laplacian, laplacian_pow,
    mul_disk_weight,
};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SymcalcError {
    #[error("input is not {order}-harmonic")]
    NotPolyharmonic { order: u32 },
    #[error("piece {index} is not harmonic")]
    NotHarmonic { index: usize },
    #[error("Laurent terms with negative exponents have no Almansi grouping")]
    NegativeExponent,
    #[error("kernel index j = {j} outside 0..={n} (or N = 0)")]
    BadIndex { j: u32, n: u32 },
    #[error("order {order} with {pieces} pieces")]
    BadOrder { order: u32, pieces: usize },
    #[error("degenerate interpolation radii: {0}")]
    DegenerateRadii(String),
    #[error("|z| = {radius} is not inside the smallest interpolation circle")]
    RadiusViolation { radius: f64 },
    #[error("at least 16 angular nodes are required, got {0}")]
    TooFewNodes(usize),
    #[error("postcondition failed: {0}")]
    PostconditionFailed(String),
}
