//! Exact convex geometry in the plane.
//!
//! Everything here works over the rationals with arbitrary-precision integers.
//! Points and segments are ordinary [`Polygon`]s of lower dimension; each
//! operation documents what it does on them.

mod json;
mod lattice;
mod point;
mod polygon;

pub use point::{cross, orient, rat, rat_frac, Direction, Point, Rational};
pub use lattice::lattice_segment_length;
pub use polygon::{hull, minkowski, mixed_volume, Extremum, Polygon};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GeomError {
    #[error("empty point set")]
    EmptyPointSet,
    #[error("lattice operation on rational polygon")]
    NotLattice,
    #[error("no 2-dimensional normal fan")]
    NoNormalFan,
    #[error("lattice length of a 2-dimensional polygon")]
    NotAFace,
    #[error("polytope too small to shave")]
    TooSmallToShave,
    #[error("scale factor must be positive, got {0}")]
    NonPositiveScale(String),
    #[error("coordinate does not fit in a machine integer")]
    Overflow,
}

/// Quarter turn counter-clockwise of a direction, `(-v_y, v_x)`.
pub fn rotate90(v: Direction) -> Direction {
    v.rotate90()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lat(points: &[(i64, i64)]) -> Polygon {
        Polygon::lattice(points)
    }

    fn dir(dx: i64, dy: i64) -> Direction {
        Direction::new(dx, dy).unwrap()
    }

    #[test]
    fn hull_discards_interior_point() {
        let pts = vec![
            Point::int(0, 0),
            Point::int(1, 0),
            Point::int(0, 1),
            Point::new(rat_frac(1, 4), rat_frac(1, 4)),
        ];
        assert_eq!(hull(pts).unwrap(), lat(&[(0, 0), (1, 0), (0, 1)]));
    }

    #[test]
    fn hull_keeps_quadrilateral() {
        let p = lat(&[(0, 2), (2, 2), (4, 4), (2, 6)]);
        assert_eq!(p.vertices().len(), 4);
        assert_eq!(
            p.vertices(),
            &[Point::int(0, 2), Point::int(2, 2), Point::int(4, 4), Point::int(2, 6)]
        );
    }

    #[test]
    fn hull_of_collinear_points_is_segment() {
        let p = lat(&[(0, 0), (2, 0), (1, 0)]);
        assert_eq!(p.dim(), 1);
        assert_eq!(p.vertices(), &[Point::int(0, 0), Point::int(2, 0)]);
    }

    #[test]
    fn hull_of_nothing_fails() {
        assert_eq!(hull(Vec::new()), Err(GeomError::EmptyPointSet));
    }

    #[test]
    fn minkowski_examples() {
        let seg = lat(&[(0, 0), (0, 2)]);
        let quad = lat(&[(2, 0), (5, 0), (0, 2), (0, 4)]);
        assert_eq!(
            minkowski(&seg, &quad),
            lat(&[(2, 0), (5, 0), (5, 2), (0, 6), (0, 2)])
        );
        let tri = Polygon::simplex(2);
        let pt = lat(&[(3, 7)]);
        assert_eq!(minkowski(&tri, &pt), tri.translate(&Point::int(3, 7)));
        let ex = lat(&[(0, 0), (1, 0)]);
        let ey = lat(&[(0, 0), (0, 1)]);
        assert_eq!(minkowski(&ex, &ey), lat(&[(0, 0), (1, 0), (1, 1), (0, 1)]));
    }

    #[test]
    fn minkowski_of_parallel_segments() {
        let a = lat(&[(0, 0), (2, 1)]);
        let b = lat(&[(1, 1), (5, 3)]);
        assert_eq!(minkowski(&a, &b), lat(&[(1, 1), (7, 4)]));
    }

    #[test]
    fn volume_examples() {
        assert_eq!(Polygon::simplex(1).volume(), rat_frac(1, 2));
        assert_eq!(lat(&[(2, 0), (5, 0), (0, 2), (0, 4)]).volume(), rat(8));
        assert_eq!(lat(&[(1, 1)]).volume(), rat(0));
        assert_eq!(lat(&[(1, 1), (4, 7)]).volume(), rat(0));
    }

    #[test]
    fn mixed_volume_examples() {
        let s = Polygon::simplex(1);
        assert_eq!(mixed_volume(&s, &s), rat(1));
        let seg = lat(&[(0, 0), (0, 2)]);
        let quad = lat(&[(2, 0), (5, 0), (0, 2), (0, 4)]);
        assert_eq!(mixed_volume(&seg, &quad), rat(10));
    }

    #[test]
    fn lattice_point_examples() {
        let pts = Polygon::simplex(2).lattice_points().unwrap();
        let expect: Vec<Point> = [(0, 0), (0, 1), (0, 2), (1, 0), (1, 1), (2, 0)]
            .iter()
            .map(|&(x, y)| Point::int(x, y))
            .collect();
        assert_eq!(pts, expect);
        assert_eq!(
            lat(&[(0, 2), (2, 6)]).lattice_points().unwrap(),
            vec![Point::int(0, 2), Point::int(1, 4), Point::int(2, 6)]
        );
        assert_eq!(lat(&[(3, 3)]).lattice_points().unwrap(), vec![Point::int(3, 3)]);
    }

    #[test]
    fn lattice_ops_reject_rational_polygons() {
        let p = hull(vec![Point::int(0, 0), Point::new(rat_frac(1, 2), rat(0)), Point::int(0, 1)])
            .unwrap();
        assert_eq!(p.lattice_points(), Err(GeomError::NotLattice));
        assert_eq!(p.interior_count(), Err(GeomError::NotLattice));
    }

    #[test]
    fn interior_count_examples() {
        assert_eq!(Polygon::simplex(3).interior_count().unwrap(), 1);
        assert_eq!(lat(&[(2, 0), (5, 0), (0, 2), (0, 4)]).interior_count().unwrap(), 5);
        assert_eq!(lat(&[(0, 0), (9, 3)]).interior_count().unwrap(), 0);
    }

    #[test]
    fn face_examples() {
        assert_eq!(Polygon::simplex(2).face(dir(1, 1)), lat(&[(0, 0)]));
        let quad = lat(&[(2, 0), (5, 0), (0, 2), (0, 4)]);
        assert_eq!(quad.face(dir(1, 1)), lat(&[(2, 0), (0, 2)]));
    }

    #[test]
    fn support_value_examples() {
        let a1 = lat(&[(0, 2), (2, 2), (4, 4), (2, 6)]);
        assert_eq!(a1.support_value(dir(0, 1), Extremum::Max), rat(6));
        assert_eq!(Polygon::simplex(2).support_value(dir(1, 0), Extremum::Min), rat(0));
    }

    #[test]
    fn normal_examples() {
        assert_eq!(
            Polygon::simplex(2).inner_normals().unwrap(),
            vec![dir(0, 1), dir(-1, -1), dir(1, 0)]
        );
        let delta = lat(&[(0, 4), (0, 32), (4, 0), (15, 20), (30, 0), (30, 6)]);
        let mut got = delta.inner_normals().unwrap();
        got.sort();
        let mut want = vec![dir(0, 1), dir(1, 0), dir(1, 1), dir(-1, 0), dir(-4, -5), dir(-14, -15)];
        want.sort();
        assert_eq!(got, want);
        let quad = lat(&[(2, 0), (5, 0), (0, 2), (0, 4)]);
        assert_eq!(quad.inner_normals().unwrap().len(), 4);
        assert_eq!(
            quad.outer_normals().unwrap(),
            quad.inner_normals().unwrap().into_iter().map(|d| -d).collect::<Vec<_>>()
        );
        assert_eq!(lat(&[(0, 0), (1, 1)]).inner_normals(), Err(GeomError::NoNormalFan));
    }

    #[test]
    fn lattice_length_examples() {
        assert_eq!(lat(&[(0, 2), (2, 6)]).lattice_length().unwrap(), 2);
        assert_eq!(lat(&[(5, 5)]).lattice_length().unwrap(), 0);
        assert_eq!(lat(&[(0, 0), (0, 2)]).lattice_length().unwrap(), 2);
        assert_eq!(Polygon::simplex(1).lattice_length(), Err(GeomError::NotAFace));
    }

    #[test]
    fn shave_examples() {
        assert_eq!(
            Polygon::simplex(3).shave(dir(1, 0)).unwrap(),
            lat(&[(1, 0), (3, 0), (1, 2)])
        );
        let square = lat(&[(0, 0), (3, 0), (3, 3), (0, 3)]);
        assert_eq!(square.shave(dir(0, 1)).unwrap(), lat(&[(0, 1), (3, 1), (3, 3), (0, 3)]));
        assert_eq!(Polygon::simplex(1).shave(dir(1, 0)), Err(GeomError::TooSmallToShave));
        assert_eq!(lat(&[(0, 0), (4, 0)]).shave(dir(0, 1)), Err(GeomError::TooSmallToShave));
    }

    #[test]
    fn shave_can_produce_rational_vertices() {
        let tri = lat(&[(0, 0), (3, 0), (0, 2)]);
        let shaved = tri.shave(dir(1, 0)).unwrap();
        assert!(!shaved.is_lattice());
        assert!(shaved.vertices().contains(&Point::new(rat(1), rat_frac(4, 3))));
    }

    #[test]
    fn contains_and_dim() {
        let s = Polygon::simplex(2);
        assert!(s.contains(&Point::int(1, 1)));
        assert!(!s.contains(&Point::int(2, 1)));
        assert_eq!(s.dim(), 2);
        let seg = lat(&[(0, 0), (2, 2)]);
        assert!(seg.contains(&Point::int(1, 1)));
        assert!(!seg.contains(&Point::int(3, 3)));
        assert_eq!(rotate90(dir(2, 1)), dir(-1, 2));
    }

    #[test]
    fn json_round_trip_and_shorthand() {
        let p = lat(&[(0, 2), (2, 2), (4, 4), (2, 6)]);
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, r#"{"vertices":[[0,2],[2,2],[4,4],[2,6]]}"#);
        let back: Polygon = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
        let q: Polygon =
            serde_json::from_str(r#"{"vertices":[[1,2,0,1],[2,1,0,1],[0,1,3,1]]}"#).unwrap();
        assert!(!q.is_lattice());
        let again: Polygon = serde_json::from_str(&serde_json::to_string(&q).unwrap()).unwrap();
        assert_eq!(again, q);
        // non-canonical input order is canonicalized
        let r: Polygon = serde_json::from_str(r#"{"vertices":[[2,6],[0,2],[4,4],[2,2]]}"#).unwrap();
        assert_eq!(r, p);
        assert!(serde_json::from_str::<Polygon>(r#"{"vertices":[]}"#).is_err());
    }
}
