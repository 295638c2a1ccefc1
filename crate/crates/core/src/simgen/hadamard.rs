use std::path::Path;

use crate::csvio::read_numeric_csv;
use crate::error::{Error, Result};
use crate::numerics::Matrix;

/// Sylvester's Hadamard matrix of order `m` (a power of two):
/// `H_1 = [1]`, `H_2k = [[H_k, H_k], [H_k, -H_k]]`.
pub fn sylvester_hadamard(m: usize) -> Result<Matrix> {
    if m == 0 || !m.is_power_of_two() {
        return Err(Error::invalid(
            "hadamard_order",
            format!("must be a power of two, got {m}"),
        ));
    }
    // Entry (i, j) is (-1)^popcount(i & j).
    Ok(Matrix::from_fn(m, m, |i, j| {
        if (i & j).count_ones() % 2 == 0 {
            1.0
        } else {
            -1.0
        }
    }))
}

#[derive(Clone, Debug)]
pub struct KroneckerDesign {
    pub matrix: Matrix,
    /// Entries of the base design that are not `+1` or `-1`.
    pub non_binary_entries: usize,
}

/// `H ⊗ D`: entry `(i * n0 + r, j * p0 + s)` is `H[i, j] * D[r, s]`.
pub fn kronecker_design(h: &Matrix, d: &Matrix) -> Result<KroneckerDesign> {
    if h.rows() != h.cols() {
        return Err(Error::DimensionMismatch(format!(
            "Hadamard factor must be square, got {}x{}",
            h.rows(),
            h.cols()
        )));
    }
    let (n0, p0) = (d.rows(), d.cols());
    let non_binary_entries = d
        .as_slice()
        .iter()
        .filter(|&&v| v != 1.0 && v != -1.0)
        .count();
    let matrix = Matrix::from_fn(h.rows() * n0, h.cols() * p0, |a, b| {
        h.get(a / n0, b / p0) * d.get(a % n0, b % p0)
    });
    Ok(KroneckerDesign {
        matrix,
        non_binary_entries,
    })
}

/// Loads a two-level base design: CSV of `±1` entries without a header.
pub fn load_base_design(path: &Path) -> Result<Matrix> {
    let table = read_numeric_csv(path)?;
    if table.header.is_some() {
        return Err(Error::Parse {
            path: path.to_path_buf(),
            line: 1,
            reason: "base design must be numeric without a header".to_string(),
        });
    }
    table.to_matrix()
}
