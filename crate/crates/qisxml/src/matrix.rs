//! Dense complex matrices realized from sparse transformations.

use crate::model::{UnitaryTransformation, ValueError};
use ndarray::Array2;
use num_complex::Complex64;
use std::collections::HashMap;
use thiserror::Error;

/// The dense matrix type used across the crate.
pub type CMatrix = Array2<Complex64>;

/// Largest transformation size (in qubits) [`realize_matrix`] will turn into
/// a dense matrix: 2^12 × 2^12 complex entries is 256 MiB; beyond that the
/// document is asking for trouble, not a matrix.
pub const MAX_REALIZE_SIZE: u32 = 12;

/// Errors realizing a transformation.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum MatrixError {
    #[error("cell ({row},{col}) is outside the {dimension}×{dimension} matrix")]
    CellOutOfRange {
        row: u32,
        col: u32,
        dimension: usize,
    },
    #[error("cell ({row},{col}): {source}")]
    CellValue {
        row: u32,
        col: u32,
        source: ValueError,
    },
    #[error("multiplier: {0}")]
    Multiplier(ValueError),
    #[error("unbound parameter `{0}`")]
    UnboundParameter(String),
    #[error("transformation size {0} exceeds the dense-matrix limit of {MAX_REALIZE_SIZE} qubits")]
    TooLarge(u32),
    #[error("matrix is not square ({rows}×{cols})")]
    NotSquare { rows: usize, cols: usize },
}

fn lift_value_error(row: u32, col: u32, source: ValueError) -> MatrixError {
    // Surface unbound parameters directly: callers match on them to decide
    // whether a gate is merely parameterized or actually broken.
    if let ValueError::Expression {
        source: crate::symexpr::ExprError::UnboundParameter(ref name),
        ..
    } = source
    {
        return MatrixError::UnboundParameter(name.clone());
    }
    MatrixError::CellValue { row, col, source }
}

/// Builds the dense 2^size × 2^size matrix of a transformation, evaluating
/// symbolic cells under `bindings` and applying the multiplier to every
/// listed cell. Unlisted cells are zero.
pub fn realize_matrix(
    transformation: &UnitaryTransformation,
    bindings: &HashMap<String, f64>,
) -> Result<CMatrix, MatrixError> {
    if transformation.size > MAX_REALIZE_SIZE {
        return Err(MatrixError::TooLarge(transformation.size));
    }
    let dimension = transformation.dimension();
    let multiplier = match &transformation.multiplier {
        Some(value) => match value.resolve(bindings) {
            Ok(z) => z,
            Err(ValueError::Expression {
                source: crate::symexpr::ExprError::UnboundParameter(name),
                ..
            }) => return Err(MatrixError::UnboundParameter(name)),
            Err(err) => return Err(MatrixError::Multiplier(err)),
        },
        None => Complex64::new(1.0, 0.0),
    };
    let mut matrix = CMatrix::zeros((dimension, dimension));
    for cell in &transformation.cells {
        if cell.row < 1
            || cell.col < 1
            || cell.row as usize > dimension
            || cell.col as usize > dimension
        {
            return Err(MatrixError::CellOutOfRange {
                row: cell.row,
                col: cell.col,
                dimension,
            });
        }
        let value = cell
            .value
            .resolve(bindings)
            .map_err(|err| lift_value_error(cell.row, cell.col, err))?;
        matrix[(cell.row as usize - 1, cell.col as usize - 1)] = multiplier * value;
    }
    Ok(matrix)
}

/// The conjugate transpose (adjoint) of a square matrix.
pub fn conjugate_transpose(matrix: &CMatrix) -> Result<CMatrix, MatrixError> {
    if matrix.nrows() != matrix.ncols() {
        return Err(MatrixError::NotSquare {
            rows: matrix.nrows(),
            cols: matrix.ncols(),
        });
    }
    Ok(matrix.t().mapv(|z| z.conj()))
}

/// The largest entrywise absolute difference between two same-shaped
/// matrices.
pub fn max_abs_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    debug_assert_eq!(a.dim(), b.dim());
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

/// How far a square matrix is from unitarity: ‖U·U† − I‖ entrywise.
pub fn unitarity_defect(matrix: &CMatrix) -> f64 {
    let adjoint = matrix.t().mapv(|z| z.conj());
    let product = matrix.dot(&adjoint);
    let identity = CMatrix::eye(matrix.nrows());
    max_abs_diff(&product, &identity)
}
