//! Edges of the origin-augmented pair and the non-properness polytopes they induce.

use serde::Serialize;

use super::PsiError;
use crate::geom::{hull, minkowski, Point, Polygon};
use crate::geom::Direction;
use crate::newton::{with_origin, PolytopePair};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct EdgeFlags {
    pub long: bool,
    pub short: bool,
    pub semi_origin: bool,
    pub origin: bool,
    pub dicritical: bool,
    pub lower: bool,
    pub upper: bool,
}

/// An edge `γ1 ⊕ γ2` of `A1⁰ ⊕ A2⁰` with its pair of faces.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairEdge {
    pub gamma1: Polygon,
    pub gamma2: Polygon,
    pub direction: Direction,
    pub inner_normal: Direction,
    pub flags: EdgeFlags,
}

impl PairEdge {
    pub fn gamma(&self, side: usize) -> &Polygon {
        match side {
            0 => &self.gamma1,
            1 => &self.gamma2,
            _ => panic!("side {side} out of range"),
        }
    }

    /// For a semi-origin edge that is not an origin edge, the side whose face misses the origin.
    pub fn far_side(&self) -> Option<usize> {
        if !self.flags.semi_origin || self.flags.origin {
            return None;
        }
        let origin = Point::origin();
        (0..2).find(|&i| !self.gamma(i).contains(&origin))
    }

    /// Long dicritical edge whose faces do not both contain the origin.
    pub fn is_long_dicritical_non_origin(&self) -> bool {
        self.flags.long && self.flags.dicritical && !self.flags.origin
    }
}

fn classify(gamma1: &Polygon, gamma2: &Polygon, alpha: Direction) -> EdgeFlags {
    let origin = Point::origin();
    let has0 = [gamma1.contains(&origin), gamma2.contains(&origin)];
    let dims = [gamma1.dim(), gamma2.dim()];
    let long = dims == [1, 1];
    let vertex_faces_at_origin = (0..2).all(|i| dims[i] != 0 || has0[i]);
    let semi_origin = (has0[0] || has0[1]) && vertex_faces_at_origin;
    let negative = alpha.dx < 0 || alpha.dy < 0;
    EdgeFlags {
        long,
        short: !long,
        semi_origin,
        origin: has0[0] && has0[1],
        dicritical: semi_origin && negative,
        lower: alpha.dx < 0,
        upper: alpha.dy < 0,
    }
}

/// Every edge of `A1⁰ ⊕ A2⁰`, counter-clockwise, classified.
pub fn pair_edges(pair: &PolytopePair) -> Vec<PairEdge> {
    let zero = with_origin(pair);
    let sum = minkowski(zero.a1(), zero.a2());
    let Ok(normals) = sum.inner_normals() else {
        return Vec::new();
    };
    normals
        .into_iter()
        .map(|alpha| {
            let gamma1 = zero.a1().face(alpha);
            let gamma2 = zero.a2().face(alpha);
            let flags = classify(&gamma1, &gamma2, alpha);
            PairEdge {
                gamma1,
                gamma2,
                direction: -alpha.rotate90(),
                inner_normal: alpha,
                flags,
            }
        })
        .collect()
}

/// Lattice length of `γ ∩ A` for a face `γ` of `A⁰`.
fn trimmed_length(gamma: &Polygon, a: &Polygon) -> Result<u64, PsiError> {
    let pts: Vec<Point> = gamma
        .lattice_points()?
        .into_iter()
        .filter(|p| a.contains(p))
        .collect();
    if pts.is_empty() {
        return Ok(0);
    }
    Ok(hull(pts)?.lattice_length()?)
}

/// Minimal and maximal `k` with `k·v ∈ A`, over the lattice points of the face `γ ∋ 0`.
fn multiples_in(gamma: &Polygon, a: &Polygon, v: Direction) -> Result<(i64, i64), PsiError> {
    let len = gamma.lattice_length()? as i64;
    let ks: Vec<i64> = (0..=len)
        .filter(|&k| a.contains(&Point::int(k * v.dx, k * v.dy)))
        .collect();
    match (ks.first(), ks.last()) {
        (Some(&m), Some(&n)) => Ok((m, n)),
        _ => Err(PsiError::Inconsistency(format!(
            "origin edge face {gamma} has no lattice multiple of {v} in {a}"
        ))),
    }
}

/// Newton polytopes of the non-properness components, one per long dicritical edge.
pub fn gamma_polytopes(pair: &PolytopePair) -> Result<Vec<Polygon>, PsiError> {
    gamma_polytopes_from(pair, &pair_edges(pair))
}

pub(crate) fn gamma_polytopes_from(
    pair: &PolytopePair,
    edges: &[PairEdge],
) -> Result<Vec<Polygon>, PsiError> {
    let mut out = Vec::new();
    for e in edges.iter().filter(|e| e.flags.long && e.flags.dicritical) {
        let gamma = if e.flags.origin {
            let v = e.direction;
            let v = if v.dx < 0 || v.dy < 0 { -v } else { v };
            let (m1, n1) = multiples_in(&e.gamma1, pair.a1(), v)?;
            let (m2, n2) = multiples_in(&e.gamma2, pair.a2(), v)?;
            Polygon::lattice(&[(m2, 0), (n2, 0), (0, m1), (0, n1)])
        } else {
            let i = e.far_side().expect("semi-origin, non-origin edge");
            let len = trimmed_length(e.gamma(i), pair.get(i))? as i64;
            // The side through the origin picks the axis: side 1 the x-axis, side 2 the y-axis.
            if i == 1 {
                Polygon::lattice(&[(0, 0), (len, 0)])
            } else {
                Polygon::lattice(&[(0, 0), (0, len)])
            }
        };
        out.push(gamma);
    }
    if out.len() > 2 {
        return Err(PsiError::TooManyDicriticalEdges(out.len()));
    }
    Ok(out)
}
