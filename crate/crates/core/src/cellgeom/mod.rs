//! Exact geometry of the `(p, α)` plane: the curves `b_{j,N}`, `a_{j,N}`,
//! the sawtooth `β(N, ·)` and the cells of the admissible region.

mod cells;
mod classify;
mod curves;
mod piecewise;

pub use cells::{enumerate_cells, enumerate_cells_clipped, Cell, Trapezoid};
pub use classify::{cell_id, classify, CellDescriptor, CellPoint};
pub use curves::{a_curve, b_curve, beta_curve, beta_unbounded, local_critical_alpha, polyanalytic_beta};
pub use piecewise::{Affine, PiecewiseAffine};

/// Default right end of the `p` range for exported pictures.
pub const DEFAULT_P_MAX: i64 = 3;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CellgeomError {
    #[error("curve index j = {j} invalid for N = {n}")]
    BadIndex { j: u32, n: u32 },
    #[error("p = {0} outside the domain")]
    OutOfDomain(String),
    #[error("malformed piecewise-affine data: {0}")]
    Malformed(String),
    #[error("jump at breakpoint p = {0}")]
    Discontinuous(String),
}
