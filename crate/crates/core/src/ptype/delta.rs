//! Reconstruction of the discriminant polytope `Δ` from mixed-volume evaluations.
//!
//! For a test polytope `Π` touching both axes, `MV(Δ, Π) = MV(Σ, Lft(Π)) − T_A(Π)`.
//! Choosing `Π` with a normal fan refining that of `Δ`, the lattice length of
//! the edge of `Δ` with inner normal `ρ` is the drop of the right-hand side
//! when `Π` is shaved by one lattice step on its `ρ` side.

use std::cell::RefCell;
use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use super::edges::PairEdge;
use super::sigma::SigmaData;
use super::{Degeneracy, PsiError};
use crate::geom::{hull, minkowski, mixed_volume, rat, Direction, Extremum, Point, Polygon, Rational};
use crate::newton::PolytopePair;

/// Minimal lattice length of every edge of a fan polytope is `2 * SAFETY`.
pub const SAFETY: i64 = 1;
const FAN_SEARCH_LIMIT: usize = 4_000_000;

/// `conv ⋃_b (b1·A1 ⊕ b2·A2)` over the vertices `b` of `Π`.
pub fn lifted_polytope(pair: &PolytopePair, pi: &Polygon) -> Result<Polygon, PsiError> {
    if !pi.in_nonnegative_quadrant() {
        return Err(PsiError::OutsideQuadrant(pi.to_string()));
    }
    let mut pts = Vec::new();
    for b in pi.vertices() {
        let sum = minkowski(&pair.a1().scale_nonneg(&b.x), &pair.a2().scale_nonneg(&b.y));
        pts.extend(sum.vertices().iter().cloned());
    }
    Ok(hull(pts)?)
}

/// Far side and lattice length of each long dicritical edge whose faces do not both contain 0.
fn correction_weights(edges: &[PairEdge]) -> Vec<(usize, u64)> {
    edges
        .iter()
        .filter(|e| e.is_long_dicritical_non_origin())
        .map(|e| {
            let i = e.far_side().expect("non-origin semi-origin edge");
            (i, e.gamma(i).lattice_length().expect("edge face is a lattice segment"))
        })
        .collect()
}

fn correction_from(weights: &[(usize, u64)], pi: &Polygon) -> Rational {
    let axis = [Direction { dx: 1, dy: 0 }, Direction { dx: 0, dy: 1 }];
    weights
        .iter()
        .map(|&(i, len)| pi.support_value(axis[i], Extremum::Max) * rat(len as i64))
        .sum()
}

/// `T_A(Π)`: the sum over the long dicritical edges `γ` with `0 ∉ γ_i` of
/// `ℓ(γ_i)·max_b b_i`, the maximum taken over the vertices `b` of `Π`.
pub fn correction_term(pair: &PolytopePair, pi: &Polygon) -> Result<Rational, PsiError> {
    if !pi.in_nonnegative_quadrant() {
        return Err(PsiError::OutsideQuadrant(pi.to_string()));
    }
    Ok(correction_from(&correction_weights(&super::pair_edges(pair)), pi))
}

/// `Π ↦ MV(Σ, Lft(Π)) − T_A(Π)`, evaluated on `Π` translated to touch both axes.
///
/// [`DeltaFunctional::eval`] uses `MV(Σ, K) = Σ_e ℓ(e)·h_K(u_e)` over the edges `e`
/// of `Σ` with primitive outer normals `u_e`, and `h_{Lft(Π)}(u) = h_Π(g_A(u))` with
/// `g_A(u) = (h_{A1}(u), h_{A2}(u))`. [`DeltaFunctional::eval_lifted`] builds
/// `Lft(Π)` explicitly instead.
pub struct DeltaFunctional<'a> {
    pair: &'a PolytopePair,
    sigma: &'a Polygon,
    sigma_terms: Vec<(i64, (i64, i64))>,
    weights: Vec<(usize, u64)>,
}

impl<'a> DeltaFunctional<'a> {
    pub fn new(pair: &'a PolytopePair, sigma: &'a SigmaData, edges: &[PairEdge]) -> Self {
        let sigma_terms = sigma
            .sigma
            .outer_normals()
            .map(|normals| {
                let lengths = sigma.sigma.edge_vectors().into_iter().map(|e| {
                    let v = e.to_lattice().expect("Σ is a lattice polygon");
                    crate::geom::lattice_segment_length((0, 0), v) as i64
                });
                normals
                    .into_iter()
                    .zip(lengths)
                    .map(|(u, len)| (len, support_pair(pair, u)))
                    .collect()
            })
            .unwrap_or_default();
        Self {
            pair,
            sigma: &sigma.sigma,
            sigma_terms,
            weights: correction_weights(edges),
        }
    }

    pub fn eval(&self, pi: &Polygon) -> Result<Rational, PsiError> {
        if self.sigma.dim() < 2 {
            return self.eval_lifted(pi);
        }
        let pi = pi.normalized();
        if !pi.in_nonnegative_quadrant() {
            return Err(PsiError::OutsideQuadrant(pi.to_string()));
        }
        let mut total = Rational::zero();
        for &(len, (w1, w2)) in &self.sigma_terms {
            let h = pi
                .vertices()
                .iter()
                .map(|b| &b.x * BigInt::from(w1) + &b.y * BigInt::from(w2))
                .max()
                .expect("polygon has a vertex");
            total += h * BigInt::from(len);
        }
        Ok(total - correction_from(&self.weights, &pi))
    }

    /// Same value as [`DeltaFunctional::eval`], computed from the lifted polytope.
    pub fn eval_lifted(&self, pi: &Polygon) -> Result<Rational, PsiError> {
        let pi = pi.normalized();
        let lift = lifted_polytope(self.pair, &pi)?;
        Ok(mixed_volume(self.sigma, &lift) - correction_from(&self.weights, &pi))
    }

    /// Lattice length of the edge of `Δ` with inner normal `rho`, read off `Π`.
    pub fn face_length(&self, pi: &Polygon, rho: Direction) -> Result<u64, PsiError> {
        let shaved = pi.shave(rho).map_err(|e| {
            PsiError::Inconsistency(format!("cannot shave {pi} along {rho}: {e}"))
        })?;
        let drop = self.eval(pi)? - self.eval(&shaved)?;
        if !drop.is_integer() || drop.is_negative() {
            return Err(PsiError::Inconsistency(format!(
                "face length along {rho} is {drop}, not a non-negative integer"
            )));
        }
        drop.to_integer()
            .to_u64()
            .ok_or_else(|| PsiError::Inconsistency(format!("face length {drop} overflows")))
    }
}

/// Candidate inner normals of `Δ`, in counter-clockwise order.
///
/// Each outer normal `u` of `Σ` contributes the reversed direction of
/// `(max_{A1} <·, u>, max_{A2} <·, u>)`; the four axis directions are always added.
pub fn delta_rays(pair: &PolytopePair, sigma: &SigmaData) -> Result<Vec<Direction>, PsiError> {
    let outer = sigma
        .sigma
        .outer_normals()
        .map_err(|_| PsiError::Degenerate(Degeneracy::SigmaNotFullDimensional))?;
    let mut rays: Vec<Direction> = vec![
        Direction { dx: 1, dy: 0 },
        Direction { dx: 0, dy: 1 },
        Direction { dx: -1, dy: 0 },
        Direction { dx: 0, dy: -1 },
    ];
    for u in outer {
        let (g1, g2) = support_pair(pair, u);
        if let Some(d) = Direction::new(-g1, -g2) {
            rays.push(d);
        }
    }
    rays.sort_by(|a, b| a.angle_cmp(b));
    rays.dedup();
    Ok(rays)
}

/// `(max_{A1} <·, u>, max_{A2} <·, u>)`.
fn support_pair(pair: &PolytopePair, u: Direction) -> (i64, i64) {
    let h = |p: &Polygon| {
        p.support_value(u, Extremum::Max)
            .to_integer()
            .to_i64()
            .expect("lattice coordinates fit in i64")
    };
    (h(pair.a1()), h(pair.a2()))
}

fn positively_spanning(sorted: &[Direction]) -> bool {
    let n = sorted.len();
    n >= 3
        && (0..n).all(|i| {
            let (a, b) = (sorted[i], sorted[(i + 1) % n]);
            a.dx as i128 * b.dy as i128 - a.dy as i128 * b.dx as i128 > 0
        })
}

/// Edge direction of a counter-clockwise polygon with inner normal `rho`.
fn edge_direction(rho: Direction) -> Direction {
    -rho.rotate90()
}

thread_local! {
    static FAN_CACHE: RefCell<HashMap<Vec<Direction>, Polygon>> = RefCell::new(HashMap::new());
}
const FAN_CACHE_LIMIT: usize = 1 << 16;

/// A lattice polygon whose inner normals are exactly `rays`, every edge of lattice
/// length at least `2·SAFETY`, with minimal total edge length. Translated to touch
/// both axes.
pub fn fan_polytope(rays: &[Direction]) -> Result<Polygon, PsiError> {
    if let Some(p) = FAN_CACHE.with(|c| c.borrow().get(rays).cloned()) {
        return Ok(p);
    }
    let p = build_fan_polytope(rays)?;
    FAN_CACHE.with(|c| {
        let mut c = c.borrow_mut();
        if c.len() >= FAN_CACHE_LIMIT {
            c.clear();
        }
        c.insert(rays.to_vec(), p.clone());
    });
    Ok(p)
}

fn build_fan_polytope(rays: &[Direction]) -> Result<Polygon, PsiError> {
    let mut sorted = rays.to_vec();
    sorted.sort_by(|a, b| a.angle_cmp(b));
    sorted.dedup();
    if sorted.len() != rays.len() || !positively_spanning(&sorted) {
        return Err(PsiError::BadFan(format!("{rays:?}")));
    }
    let base = 2 * SAFETY;
    let target = sorted.iter().fold((0i64, 0i64), |acc, r| {
        (acc.0 - base * r.dx, acc.1 - base * r.dy)
    });
    let extra = shortest_combination(&sorted, target)
        .ok_or_else(|| PsiError::BadFan(format!("search limit reached for {rays:?}")))?;
    let mut v = (0i64, 0i64);
    let mut walk = Vec::with_capacity(sorted.len());
    for (r, t) in sorted.iter().zip(extra) {
        walk.push(v);
        let k = base + t as i64;
        let e = edge_direction(*r);
        v = (v.0 + k * e.dx, v.1 + k * e.dy);
    }
    debug_assert_eq!(v, (0, 0));
    Ok(Polygon::lattice(&walk).normalized())
}

/// Non-negative integers `t` minimizing `Σ t_i` with `Σ t_i·ρ_i = target`,
/// by breadth-first search over partial sums.
fn shortest_combination(rays: &[Direction], target: (i64, i64)) -> Option<Vec<u64>> {
    let mut parent: HashMap<(i64, i64), usize> = HashMap::new();
    parent.insert((0, 0), usize::MAX);
    let mut frontier = vec![(0i64, 0i64)];
    while !parent.contains_key(&target) {
        if frontier.is_empty() || parent.len() > FAN_SEARCH_LIMIT {
            return None;
        }
        let mut next = Vec::new();
        for &s in &frontier {
            for (i, r) in rays.iter().enumerate() {
                let t = (s.0 + r.dx, s.1 + r.dy);
                if let std::collections::hash_map::Entry::Vacant(slot) = parent.entry(t) {
                    slot.insert(i);
                    next.push(t);
                }
            }
        }
        frontier = next;
    }
    let mut counts = vec![0u64; rays.len()];
    let mut s = target;
    while s != (0, 0) {
        let i = parent[&s];
        counts[i] += 1;
        s = (s.0 - rays[i].dx, s.1 - rays[i].dy);
    }
    Some(counts)
}

/// Length of the edge of `Δ` with inner normal `rho`, measured on the test polytope `pi`.
pub fn face_length(
    pair: &PolytopePair,
    sigma: &SigmaData,
    pi: &Polygon,
    rho: Direction,
) -> Result<u64, PsiError> {
    DeltaFunctional::new(pair, sigma, &super::pair_edges(pair)).face_length(pi, rho)
}

pub fn delta_polytope(pair: &PolytopePair) -> Result<Polygon, PsiError> {
    let sigma = super::sigma_data(pair)?;
    delta_from(pair, &sigma, &super::pair_edges(pair))
}

pub(crate) fn delta_from(
    pair: &PolytopePair,
    sigma: &SigmaData,
    edges: &[PairEdge],
) -> Result<Polygon, PsiError> {
    let rays = delta_rays(pair, sigma)?;
    let pi = fan_polytope(&rays)?;
    let functional = DeltaFunctional::new(pair, sigma, edges);
    let mut v = (0i64, 0i64);
    let mut walk = Vec::with_capacity(rays.len());
    for &rho in &rays {
        let len = functional.face_length(&pi, rho)? as i64;
        if len == 0 {
            continue;
        }
        walk.push(v);
        let e = edge_direction(rho);
        v = (v.0 + len * e.dx, v.1 + len * e.dy);
    }
    if v != (0, 0) {
        return Err(PsiError::Inconsistency(format!(
            "discriminant edge walk does not close: ends at {v:?}"
        )));
    }
    if walk.is_empty() {
        return Ok(Polygon::point(Point::origin()));
    }
    Ok(Polygon::lattice(&walk).normalized())
}

/// Both sides of `MV(Δ, Π) = MV(Σ, Lft(Π)) − T_A(Π)` for `Π` translated to touch both
/// axes, the right one through the explicit lifted polytope.
pub fn mv_identity_sides(
    functional: &DeltaFunctional<'_>,
    delta: &Polygon,
    pi: &Polygon,
) -> Result<(Rational, Rational), PsiError> {
    let pi = pi.normalized();
    Ok((mixed_volume(delta, &pi), functional.eval_lifted(&pi)?))
}
