use serde::Serialize;

use super::Matrix;
use crate::error::{Error, Result};

/// Homology of one node of a sequence `V_0 -> V_1 -> ... -> V_k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PositionReport {
    pub position: usize,
    pub dim: usize,
    pub incoming_rank: usize,
    pub outgoing_kernel: usize,
    pub homology: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExactnessReport {
    /// Every consecutive composite is the zero matrix.
    pub composites_vanish: bool,
    pub positions: Vec<PositionReport>,
}

impl ExactnessReport {
    /// Exact at every position, the two ends included (zero maps are implied
    /// beyond the ends).
    pub fn is_exact(&self) -> bool {
        self.composites_vanish && self.positions.iter().all(|p| p.homology == 0)
    }

    /// Exact at every position except possibly the two ends.
    pub fn is_exact_interior(&self) -> bool {
        let n = self.positions.len();
        self.composites_vanish
            && self
                .positions
                .iter()
                .filter(|p| p.position != 0 && p.position + 1 != n)
                .all(|p| p.homology == 0)
    }

    pub fn homology(&self) -> Vec<usize> {
        self.positions.iter().map(|p| p.homology).collect()
    }
}

/// Computes homology at every node of `V_0 -> ... -> V_k`, where `maps[i]`
/// is a `dims[i+1] x dims[i]` matrix. Rejects shape mismatches; a nonzero
/// composite is reported rather than rejected.
pub fn homology_dims(dims: &[usize], maps: &[Matrix]) -> Result<ExactnessReport> {
    if maps.len() + 1 != dims.len() && !(dims.is_empty() && maps.is_empty()) {
        return Err(Error::DimensionMismatch(format!(
            "{} spaces need {} maps, got {}",
            dims.len(),
            dims.len().saturating_sub(1),
            maps.len()
        )));
    }
    for (i, m) in maps.iter().enumerate() {
        if m.cols() != dims[i] || m.rows() != dims[i + 1] {
            return Err(Error::DimensionMismatch(format!(
                "map {i} is {}x{} between spaces of dimension {} and {}",
                m.rows(),
                m.cols(),
                dims[i],
                dims[i + 1]
            )));
        }
    }
    let mut composites_vanish = true;
    for pair in maps.windows(2) {
        if !pair[1].mul(&pair[0])?.is_zero() {
            composites_vanish = false;
        }
    }
    let ranks: Vec<usize> = maps.iter().map(Matrix::rank).collect();
    let positions = dims
        .iter()
        .enumerate()
        .map(|(i, &dim)| {
            let incoming_rank = if i == 0 { 0 } else { ranks[i - 1] };
            let outgoing_kernel = if i < maps.len() { dim - ranks[i] } else { dim };
            PositionReport {
                position: i,
                dim,
                incoming_rank,
                outgoing_kernel,
                homology: outgoing_kernel.saturating_sub(incoming_rank),
            }
        })
        .collect();
    Ok(ExactnessReport {
        composites_vanish,
        positions,
    })
}
