//! Minimum-norm least squares through a complete orthogonal decomposition.
//!
//! The design is first factored by Householder QR with column pivoting,
//! `A P = Q [R11 R12; 0 R22]`, and the rank `r` is read off the diagonal of
//! `R` (entries below `1e-10 * |R[0,0]|` are treated as zero, which drops
//! `R22`). When `r` is smaller than the column count the trapezoid
//! `[R11 R12]` is factored again from the right, `[R11 R12]' = Z L'`, which
//! yields the Moore-Penrose solution rather than the basic solution a plain
//! pivoted back-substitution would produce.

use crate::error::{Error, Result};
use crate::numerics::matrix::Matrix;

/// Relative threshold on the pivoted diagonal of `R` below which a column is
/// considered linearly dependent on the ones already factored.
pub const RANK_TOLERANCE: f64 = 1e-10;

#[derive(Clone, Debug, PartialEq)]
pub struct LeastSquaresSolution {
    pub coef: Vec<f64>,
    /// Numerical rank of the design.
    pub rank: usize,
}

/// Returns the minimum-Euclidean-norm minimizer of `||y - A b||^2`.
pub fn min_norm_least_squares(a: &Matrix, y: &[f64]) -> Result<Vec<f64>> {
    solve_least_squares(a, y).map(|s| s.coef)
}

pub fn solve_least_squares(a: &Matrix, y: &[f64]) -> Result<LeastSquaresSolution> {
    if y.len() != a.rows() {
        return Err(Error::DimensionMismatch(format!(
            "design has {} rows but response has length {}",
            a.rows(),
            y.len()
        )));
    }
    Ok(solve_unchecked(a, y))
}

/// A Householder reflector `I - tau v v'` acting on the trailing part of a
/// vector starting at `offset`.
struct Reflector {
    offset: usize,
    v: Vec<f64>,
    tau: f64,
}

impl Reflector {
    /// Builds the reflector that maps `x` onto `alpha e1`; returns it with
    /// `alpha`.
    fn annihilate(offset: usize, x: &[f64]) -> (Self, f64) {
        let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
        if norm == 0.0 {
            let r = Reflector {
                offset,
                v: Vec::new(),
                tau: 0.0,
            };
            return (r, 0.0);
        }
        let alpha = if x[0] >= 0.0 { -norm } else { norm };
        let mut v = x.to_vec();
        v[0] -= alpha;
        let vv: f64 = v.iter().map(|t| t * t).sum();
        let tau = if vv > 0.0 { 2.0 / vv } else { 0.0 };
        (Reflector { offset, v, tau }, alpha)
    }

    fn apply(&self, w: &mut [f64]) {
        if self.tau == 0.0 {
            return;
        }
        let tail = &mut w[self.offset..];
        let s: f64 = self.v.iter().zip(tail.iter()).map(|(a, b)| a * b).sum();
        let f = self.tau * s;
        if f != 0.0 {
            for (t, &vi) in tail.iter_mut().zip(&self.v) {
                *t -= f * vi;
            }
        }
    }
}

fn solve_unchecked(a: &Matrix, y: &[f64]) -> LeastSquaresSolution {
    let m = a.rows();
    let k = a.cols();
    // Column-major working copy: cols[j] is column j of A P.
    let mut cols: Vec<Vec<f64>> = (0..k).map(|j| a.column(j)).collect();
    let mut perm: Vec<usize> = (0..k).collect();
    let mut b = y.to_vec();
    let mut diag: Vec<f64> = Vec::new();

    for s in 0..m.min(k) {
        let mut best = s;
        let mut best_norm = -1.0;
        for (j, col) in cols.iter().enumerate().skip(s) {
            let nrm: f64 = col[s..].iter().map(|v| v * v).sum();
            if nrm > best_norm {
                best_norm = nrm;
                best = j;
            }
        }
        if best_norm <= 0.0 {
            break;
        }
        cols.swap(s, best);
        perm.swap(s, best);

        let (h, alpha) = Reflector::annihilate(s, &cols[s][s..]);
        cols[s][s] = alpha;
        for v in cols[s][s + 1..].iter_mut() {
            *v = 0.0;
        }
        for col in cols.iter_mut().skip(s + 1) {
            h.apply(col);
        }
        h.apply(&mut b);
        diag.push(alpha);
    }

    let lead = diag.first().map_or(0.0, |d| d.abs());
    let rank = diag
        .iter()
        .take_while(|d| lead > 0.0 && d.abs() > RANK_TOLERANCE * lead)
        .count();

    let mut coef = vec![0.0; k];
    if rank == 0 {
        return LeastSquaresSolution { coef, rank };
    }

    // R[i][j] for the leading `rank` rows.
    let r_at = |i: usize, j: usize| cols[j][i];
    let rhs = &b[..rank];

    let z = if rank == k {
        let mut z = vec![0.0; k];
        for i in (0..k).rev() {
            let mut acc = rhs[i];
            for j in i + 1..k {
                acc -= r_at(i, j) * z[j];
            }
            z[i] = acc / r_at(i, i);
        }
        z
    } else {
        // QR of the k x rank matrix T' = [R11 R12]'.
        let mut t: Vec<Vec<f64>> = (0..rank)
            .map(|i| {
                (0..k)
                    .map(|j| if j >= i { r_at(i, j) } else { 0.0 })
                    .collect()
            })
            .collect();
        let mut reflectors = Vec::with_capacity(rank);
        let mut r2 = vec![vec![0.0; rank]; rank];
        for i in 0..rank {
            let (h, alpha) = Reflector::annihilate(i, &t[i][i..]);
            for l in 0..i {
                r2[l][i] = t[i][l];
            }
            r2[i][i] = alpha;
            for col in t.iter_mut().skip(i + 1) {
                h.apply(col);
            }
            reflectors.push(h);
        }
        // T = R2' Z', so the min-norm solution is Z (R2')^{-1} rhs.
        let mut w = vec![0.0; k];
        for i in 0..rank {
            let mut acc = rhs[i];
            for l in 0..i {
                acc -= r2[l][i] * w[l];
            }
            w[i] = acc / r2[i][i];
        }
        for h in reflectors.iter().rev() {
            h.apply(&mut w);
        }
        w
    };

    for (j, &pj) in perm.iter().enumerate() {
        coef[pj] = z[j];
    }
    LeastSquaresSolution { coef, rank }
}
