//! The polyhedral type `Ψ(A)` of a conical pair and the polytopes it is built from.

mod delta;
mod edges;
mod sigma;

pub use delta::{
    correction_term, delta_polytope, delta_rays, face_length, fan_polytope, lifted_polytope,
    mv_identity_sides, DeltaFunctional, SAFETY,
};
pub use edges::{gamma_polytopes, pair_edges, EdgeFlags, PairEdge};
pub use sigma::{jacobian_support, sigma_data, SigmaData};

use std::fmt;

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geom::{minkowski, mixed_volume, GeomError, Polygon};
use crate::newton::{delta_ind, is_conical, newton_number, with_origin, NewtonError, PolytopePair};

/// Why a pair yields no `Ψ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Degeneracy {
    /// No pair of lattice points has a non-zero determinant.
    EmptyJacobian,
    /// `Σ` is a point or a segment, so `Δ` cannot be reconstructed.
    SigmaNotFullDimensional,
}

impl fmt::Display for Degeneracy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Degeneracy::EmptyJacobian => "empty-jacobian",
            Degeneracy::SigmaNotFullDimensional => "sigma-not-full-dimensional",
        })
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PsiError {
    #[error("A{0} is not conical")]
    NotConical(usize),
    #[error("degenerate pair: {0}")]
    Degenerate(Degeneracy),
    #[error("internal inconsistency: {0} long dicritical edges (at most 2 expected)")]
    TooManyDicriticalEdges(usize),
    #[error("test polytope {0} leaves the non-negative quadrant")]
    OutsideQuadrant(String),
    #[error("rays do not span a fan: {0}")]
    BadFan(String),
    #[error("internal inconsistency: {0}")]
    Inconsistency(String),
    #[error(transparent)]
    Geom(#[from] GeomError),
    #[error(transparent)]
    Newton(#[from] NewtonError),
}

impl PsiError {
    /// Errors that signal a bug or a failed invariant rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(
            self,
            PsiError::TooManyDicriticalEdges(_) | PsiError::Inconsistency(_) | PsiError::BadFan(_)
        ) || matches!(self, PsiError::Newton(NewtonError::NegativeNewtonNumber(_)))
    }
}

/// `Ψ(A)` together with the polytopes it was computed from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PolyhedralType {
    pub psi: Option<[u64; 12]>,
    pub sigma_data: Option<SigmaData>,
    pub delta: Option<Polygon>,
    pub gammas: Vec<Polygon>,
    pub degenerate: Option<Degeneracy>,
}

fn nonneg(v: i64, what: &str) -> Result<u64, PsiError> {
    u64::try_from(v).map_err(|_| PsiError::Inconsistency(format!("{what} is negative ({v})")))
}

fn integer(r: crate::geom::Rational, what: &str) -> Result<i64, PsiError> {
    if !r.is_integer() {
        return Err(PsiError::Inconsistency(format!("{what} = {r} is not an integer")));
    }
    r.to_integer()
        .to_i64()
        .ok_or_else(|| PsiError::Inconsistency(format!("{what} overflows")))
}

/// `∘P + 𝒩(P)` and `∘P + δ(P)` of a non-properness polytope.
fn gamma_sums(p: &Polygon) -> Result<(i64, i64), PsiError> {
    let interior = p.interior_count()? as i64;
    Ok((
        interior + newton_number(p)? as i64,
        interior + i64::from(delta_ind(p)?),
    ))
}

pub fn psi(pair: &PolytopePair) -> Result<PolyhedralType, PsiError> {
    for i in 0..2 {
        if !is_conical(pair.get(i))? {
            return Err(PsiError::NotConical(i + 1));
        }
    }
    polyhedral_type(pair)
}

/// [`psi`] without the conical precondition; degenerate pairs come back flagged.
pub fn polyhedral_type(pair: &PolytopePair) -> Result<PolyhedralType, PsiError> {
    let degenerate = |d, sigma_data, gammas| PolyhedralType {
        psi: None,
        sigma_data,
        delta: None,
        gammas,
        degenerate: Some(d),
    };
    let edges = pair_edges(pair);
    let gammas = edges::gamma_polytopes_from(pair, &edges)?;
    let sd = match sigma_data(pair) {
        Ok(sd) => sd,
        Err(PsiError::Degenerate(d)) => return Ok(degenerate(d, None, gammas)),
        Err(e) => return Err(e),
    };
    let delta = match delta::delta_from(pair, &sd, &edges) {
        Ok(d) => d,
        Err(PsiError::Degenerate(d)) => return Ok(degenerate(d, Some(sd), gammas)),
        Err(e) => return Err(e),
    };

    let zero = with_origin(pair);
    let mut psi = [0i64; 12];
    psi[0] = integer(mixed_volume(zero.a1(), zero.a2()), "MV(A⁰)")?;
    let sigma_interior = sd.sigma.interior_count()? as i64;
    psi[1] = sigma_interior;
    psi[2] = newton_number(&sd.sigma)? as i64;
    let (c, h, v) = (i64::from(sd.gaps.m_c), sd.gaps.m_h as i64, sd.gaps.m_v as i64);
    psi[3] = c + h + v;
    psi[4] = c * h + c * v + h * v;
    psi[5] = c * h * v;
    psi[6] = delta.interior_count()? as i64 - sigma_interior + i64::from(delta_ind(&delta)?);

    match gammas.as_slice() {
        [] => {}
        [g] => {
            let (n, d) = gamma_sums(g)?;
            psi[8] = n;
            psi[10] = d;
        }
        [g, g2] => {
            let sum = minkowski(g, g2);
            psi[7] = integer(mixed_volume(g, g2), "MV(Γ, Γ′)")? + newton_number(&sum)? as i64
                - newton_number(g)? as i64
                - newton_number(g2)? as i64;
            let (n1, d1) = gamma_sums(g)?;
            let (n2, d2) = gamma_sums(g2)?;
            psi[8] = n1 + n2;
            psi[9] = n1 * n2;
            psi[10] = d1 + d2;
            psi[11] = d1 * d2;
        }
        more => return Err(PsiError::TooManyDicriticalEdges(more.len())),
    }

    let mut out = [0u64; 12];
    for (i, &v) in psi.iter().enumerate() {
        out[i] = nonneg(v, &format!("Ψ{}", i + 1))?;
    }
    Ok(PolyhedralType {
        psi: Some(out),
        sigma_data: Some(sd),
        delta: Some(delta),
        gammas,
        degenerate: None,
    })
}
