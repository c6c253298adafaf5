use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::{Degeneracy, PsiError};
use crate::geom::{Point, Polygon};
use crate::newton::{GapData, PolytopePair};

/// Critical-curve data: `Σ` translated to touch both axes, and the gaps.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SigmaData {
    pub sigma: Polygon,
    pub gaps: GapData,
}

/// Exponents `u + v − (1, 1)` with `u ∈ A1`, `v ∈ A2` lattice points and `det(u, v) ≠ 0`.
pub fn jacobian_support(pair: &PolytopePair) -> Result<BTreeSet<(i64, i64)>, PsiError> {
    let p1 = pair.a1().lattice_points_i64()?;
    let p2 = pair.a2().lattice_points_i64()?;
    let mut out = BTreeSet::new();
    for &(u1, u2) in &p1 {
        for &(v1, v2) in &p2 {
            if u1 * v2 != u2 * v1 {
                out.insert((u1 + v1 - 1, u2 + v2 - 1));
            }
        }
    }
    Ok(out)
}

pub fn sigma_data(pair: &PolytopePair) -> Result<SigmaData, PsiError> {
    let support = jacobian_support(pair)?;
    if support.is_empty() {
        return Err(PsiError::Degenerate(Degeneracy::EmptyJacobian));
    }
    let m_v = support.iter().map(|s| s.0).min().unwrap();
    let m_h = support.iter().map(|s| s.1).min().unwrap();
    let shifted: Vec<(i64, i64)> = support.iter().map(|&(x, y)| (x - m_v, y - m_h)).collect();
    let sigma = Polygon::lattice(&shifted);
    debug_assert_eq!(sigma.corner(), Point::origin());
    let gaps = GapData {
        m_v: m_v as u64,
        m_h: m_h as u64,
        m_c: u8::from(sigma.dim() >= 1),
    };
    Ok(SigmaData { sigma, gaps })
}
