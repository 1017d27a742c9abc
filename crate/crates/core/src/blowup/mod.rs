//! Blow ups of affine schemes, one chart per generator of the center.
//!
//! For a center `(f_1, …, f_n)` in `A = Q[vars]/R` and a selected generator
//! `g = f_k`, the chart is `A[T_j : j ≠ k] / (g·T_j − f_j)` with the
//! `g`-torsion removed, i.e. the relations saturated by `g`. Its exceptional
//! divisor is the principal ideal `(g)`.

pub(crate) mod chart;
mod tree;

pub use chart::{blowup_charts, controlled_transform, strict_transform, total_transform, verify_principal_on_chart, BlowupStep, Center, Chart};
pub use tree::{extend_tree, ChartNode, ChartTree, TransformRecord, TransformRule};

#[cfg(test)]
mod tests;
