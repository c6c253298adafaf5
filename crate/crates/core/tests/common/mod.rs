#![allow(dead_code)]

use std::collections::BTreeSet;

use polytype::geom::{Point, Polygon};
use polytype::newton::conical_det;

pub fn lattice_of(p: &Polygon) -> Vec<(i64, i64)> {
    p.lattice_vertices().unwrap()
}

pub fn orient(a: (i64, i64), b: (i64, i64), c: (i64, i64)) -> i64 {
    (b.0 - a.0) * (c.1 - a.1) - (b.1 - a.1) * (c.0 - a.0)
}

pub fn on_segment(a: (i64, i64), b: (i64, i64), q: (i64, i64)) -> bool {
    orient(a, b, q) == 0
        && a.0.min(b.0) <= q.0
        && q.0 <= a.0.max(b.0)
        && a.1.min(b.1) <= q.1
        && q.1 <= a.1.max(b.1)
}

/// Lattice points of the bounding box classified as (interior, boundary) with integer tests.
pub fn box_count(p: &Polygon) -> (u64, u64) {
    let v = lattice_of(p);
    let n = v.len();
    let (x0, x1) = (v.iter().map(|p| p.0).min().unwrap(), v.iter().map(|p| p.0).max().unwrap());
    let (y0, y1) = (v.iter().map(|p| p.1).min().unwrap(), v.iter().map(|p| p.1).max().unwrap());
    let (mut interior, mut boundary) = (0, 0);
    for x in x0..=x1 {
        for y in y0..=y1 {
            let q = (x, y);
            let on_boundary = (0..n).any(|i| on_segment(v[i], v[(i + 1) % n], q));
            let inside = (0..n).all(|i| orient(v[i], v[(i + 1) % n], q) >= 0);
            if on_boundary {
                boundary += 1;
            } else if inside {
                interior += 1;
            }
        }
    }
    (interior, boundary)
}

/// `2·Vol(Σ0) − a − b + 1`, with `Σ0` cut into triangles from the origin over the
/// compact faces of `P` seen from the origin.
pub fn newton_number_by_cones(p: &Polygon) -> i64 {
    let v = lattice_of(p);
    if v.contains(&(0, 0)) {
        return 0;
    }
    let a = v.iter().filter(|q| q.1 == 0).map(|q| q.0).min();
    let b = v.iter().filter(|q| q.0 == 0).map(|q| q.1).min();
    let (a, b) = (a.unwrap(), b.unwrap());
    let n = v.len();
    let mut twice_area = 0;
    if n == 2 {
        twice_area = (v[0].0 * v[1].1 - v[0].1 * v[1].0).abs();
    } else {
        for i in 0..n {
            let (s, t) = (v[i], v[(i + 1) % n]);
            // edge faces the origin iff the origin lies strictly on its outer side
            if orient(s, t, (0, 0)) < 0 {
                twice_area += (s.0 * t.1 - s.1 * t.0).abs();
            }
        }
    }
    twice_area - a - b + 1
}

/// Every lattice polygon with vertices among `pts`, by hulling every non-empty subset.
pub fn subset_hulls(pts: &[(i64, i64)]) -> BTreeSet<Polygon> {
    let n = pts.len();
    assert!(n < 20, "too many points for subset enumeration");
    (1u32..1 << n)
        .map(|mask| {
            let chosen: Vec<(i64, i64)> = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| pts[i]).collect();
            Polygon::lattice(&chosen)
        })
        .collect()
}

/// Conical iff some 5 nonzero lattice points give a nonzero determinant.
pub fn conical_by_subsets(p: &Polygon) -> bool {
    let pts: Vec<Point> = p
        .lattice_points()
        .unwrap()
        .into_iter()
        .filter(|q| *q != Point::origin())
        .collect();
    let n = pts.len();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                for d in c + 1..n {
                    for e in d + 1..n {
                        let s = [pts[a].clone(), pts[b].clone(), pts[c].clone(), pts[d].clone(), pts[e].clone()];
                        if !num_traits::Zero::is_zero(&conical_det(&s).unwrap()) {
                            return true;
                        }
                    }
                }
            }
        }
    }
    false
}
