//! Newton-polygon invariants: convenience, Newton number, the conical test and
//! origin-augmented pairs.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geom::{hull, rat, Direction, Extremum, GeomError, Point, Polygon};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NewtonError {
    #[error("Newton number undefined: polygon is not convenient")]
    NotConvenient,
    #[error("polygon {0} leaves the non-negative quadrant")]
    OutsideQuadrant(String),
    #[error("polygon {0} is not a lattice polygon")]
    NotLattice(String),
    #[error("conical subset must be 5 distinct non-zero lattice points: {0}")]
    BadConicalSubset(String),
    #[error("internal inconsistency: negative Newton number {0}")]
    NegativeNewtonNumber(i64),
    #[error(transparent)]
    Geom(#[from] GeomError),
}

/// A pair `(A1, A2)` of lattice polygons in the non-negative quadrant.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "PairWire", into = "PairWire")]
pub struct PolytopePair {
    a1: Polygon,
    a2: Polygon,
}

#[derive(Serialize, Deserialize)]
struct PairWire {
    #[serde(rename = "A1")]
    a1: Polygon,
    #[serde(rename = "A2")]
    a2: Polygon,
}

impl TryFrom<PairWire> for PolytopePair {
    type Error = NewtonError;
    fn try_from(w: PairWire) -> Result<Self, Self::Error> {
        PolytopePair::new(w.a1, w.a2)
    }
}

impl From<PolytopePair> for PairWire {
    fn from(p: PolytopePair) -> Self {
        PairWire { a1: p.a1, a2: p.a2 }
    }
}

impl PolytopePair {
    pub fn new(a1: Polygon, a2: Polygon) -> Result<Self, NewtonError> {
        for p in [&a1, &a2] {
            if !p.is_lattice() {
                return Err(NewtonError::NotLattice(p.to_string()));
            }
            if !p.in_nonnegative_quadrant() {
                return Err(NewtonError::OutsideQuadrant(p.to_string()));
            }
        }
        Ok(Self { a1, a2 })
    }

    pub fn a1(&self) -> &Polygon {
        &self.a1
    }

    pub fn a2(&self) -> &Polygon {
        &self.a2
    }

    /// `(A2, A1)`.
    pub fn swapped(&self) -> Self {
        Self {
            a1: self.a2.clone(),
            a2: self.a1.clone(),
        }
    }

    pub fn get(&self, index: usize) -> &Polygon {
        match index {
            0 => &self.a1,
            1 => &self.a2,
            _ => panic!("pair index {index} out of range"),
        }
    }
}

/// Multiplicities of the critical locus: vertical gap, horizontal gap and the
/// indicator of a non-trivial critical curve.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GapData {
    pub m_v: u64,
    pub m_h: u64,
    pub m_c: u8,
}

/// True iff the polygon meets both coordinate axes.
pub fn is_convenient(p: &Polygon) -> bool {
    let meets = |dir: Direction| {
        !p.support_value(dir, Extremum::Min).is_positive()
            && !p.support_value(dir, Extremum::Max).is_negative()
    };
    meets(Direction { dx: 1, dy: 0 }) && meets(Direction { dx: 0, dy: 1 })
}

/// Newton number `2·Vol(Σ0) − a − b + 1`, where `Σ0` is the bounded component
/// of the quadrant minus `P` and `a`, `b` are the near axis intercepts.
pub fn newton_number(p: &Polygon) -> Result<u64, NewtonError> {
    if !p.in_nonnegative_quadrant() {
        return Err(NewtonError::OutsideQuadrant(p.to_string()));
    }
    if !is_convenient(p) {
        return Err(NewtonError::NotConvenient);
    }
    let origin = Point::origin();
    if p.contains(&origin) {
        return Ok(0);
    }
    let mut with_origin: Vec<Point> = p.vertices().to_vec();
    with_origin.push(origin);
    let cavity = hull(with_origin)?.volume() - p.volume();
    // In the quadrant, convenience makes the bottom face lie on y = 0 and the left face on x = 0.
    let a = p
        .face(Direction { dx: 0, dy: 1 })
        .support_value(Direction { dx: 1, dy: 0 }, Extremum::Min);
    let b = p
        .face(Direction { dx: 1, dy: 0 })
        .support_value(Direction { dx: 0, dy: 1 }, Extremum::Min);
    let value = cavity * rat(2) - a - b + rat(1);
    debug_assert!(value.is_integer() || !p.is_lattice());
    let value = value.to_integer();
    if value.is_negative() {
        return Err(NewtonError::NegativeNewtonNumber(value.to_i64().unwrap_or(i64::MIN)));
    }
    value.to_u64().ok_or(NewtonError::Geom(GeomError::Overflow))
}

/// `0` iff the Newton number vanishes, `1` otherwise.
pub fn delta_ind(p: &Polygon) -> Result<u8, NewtonError> {
    Ok(u8::from(newton_number(p)? != 0))
}

fn conic_row(x: i64, y: i64) -> [BigInt; 5] {
    [x, y, x * x, x * y, y * y].map(BigInt::from)
}

/// Rank of an integer matrix by fraction-free (Bareiss) elimination.
fn rank(mut rows: Vec<[BigInt; 5]>) -> usize {
    let mut r = 0;
    let mut prev = BigInt::from(1);
    for col in 0..5 {
        let Some(pivot) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, pivot);
        for i in r + 1..rows.len() {
            for c in col + 1..5 {
                let v = (&rows[r][col] * &rows[i][c] - &rows[i][col] * &rows[r][c]) / &prev;
                rows[i][c] = v;
            }
            rows[i][col] = BigInt::zero();
        }
        prev = rows[r][col].clone();
        r += 1;
        if r == 5 {
            break;
        }
    }
    r
}

/// Whether the non-zero lattice points of `P` contain 5 points whose conic
/// matrix `(s1, s2, s1², s1·s2, s2²)` is non-singular.
pub fn is_conical(p: &Polygon) -> Result<bool, NewtonError> {
    let rows: Vec<[BigInt; 5]> = p
        .lattice_points_i64()?
        .into_iter()
        .filter(|&(x, y)| (x, y) != (0, 0))
        .map(|(x, y)| conic_row(x, y))
        .collect();
    if rows.len() < 5 {
        return Ok(false);
    }
    Ok(rank(rows) == 5)
}

/// Exact determinant of the conic matrix of five non-zero lattice points, rows in the given order.
pub fn conical_det(points: &[Point]) -> Result<BigInt, NewtonError> {
    if points.len() != 5 {
        return Err(NewtonError::BadConicalSubset(format!("{} points", points.len())));
    }
    let mut m = Vec::with_capacity(5);
    for p in points {
        let (x, y) = p
            .to_lattice()
            .ok_or_else(|| NewtonError::BadConicalSubset(format!("{p} is not integral")))?;
        if (x, y) == (0, 0) {
            return Err(NewtonError::BadConicalSubset("origin in subset".into()));
        }
        m.push(conic_row(x, y));
    }
    Ok(bareiss_det(m))
}

fn bareiss_det(mut m: Vec<[BigInt; 5]>) -> BigInt {
    let n = 5;
    let mut sign = 1;
    let mut prev = BigInt::from(1);
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    &m[n - 1][n - 1] * sign
}

/// `(conv({0} ∪ A1), conv({0} ∪ A2))`.
pub fn with_origin(pair: &PolytopePair) -> PolytopePair {
    let add_origin = |p: &Polygon| {
        let mut pts = p.vertices().to_vec();
        pts.push(Point::origin());
        hull(pts).expect("non-empty")
    };
    PolytopePair {
        a1: add_origin(&pair.a1),
        a2: add_origin(&pair.a2),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lat(points: &[(i64, i64)]) -> Polygon {
        Polygon::lattice(points)
    }

    #[test]
    fn convenience() {
        assert!(is_convenient(&lat(&[(0, 1), (1, 0)])));
        assert!(is_convenient(&lat(&[(2, 0), (5, 0), (0, 2), (0, 4)])));
        assert!(!is_convenient(&lat(&[(1, 1)])));
        assert!(!is_convenient(&lat(&[(1, 0), (3, 2)])));
    }

    #[test]
    fn newton_number_examples() {
        assert_eq!(newton_number(&lat(&[(2, 0), (5, 0), (0, 2), (0, 4)])).unwrap(), 1);
        assert_eq!(
            newton_number(&lat(&[(2, 0), (5, 0), (5, 2), (0, 6), (0, 2)])).unwrap(),
            1
        );
        assert_eq!(newton_number(&lat(&[(0, 1), (1, 0)])).unwrap(), 0);
        assert_eq!(newton_number(&Polygon::simplex(3)).unwrap(), 0);
        assert_eq!(newton_number(&lat(&[(0, 0), (0, 2)])).unwrap(), 0);
        // x^3 + y^2: Milnor number (3-1)(2-1) = 2
        assert_eq!(newton_number(&lat(&[(3, 0), (0, 2)])).unwrap(), 2);
        assert_eq!(newton_number(&lat(&[(1, 1), (2, 2)])), Err(NewtonError::NotConvenient));
    }

    #[test]
    fn delta_indicator() {
        assert_eq!(delta_ind(&lat(&[(2, 0), (5, 0), (0, 2), (0, 4)])).unwrap(), 1);
        assert_eq!(delta_ind(&lat(&[(0, 0), (0, 2)])).unwrap(), 0);
        assert_eq!(delta_ind(&Polygon::simplex(2)).unwrap(), 0);
    }

    #[test]
    fn conical_examples() {
        assert!(is_conical(&Polygon::simplex(2)).unwrap());
        assert!(!is_conical(&Polygon::simplex(1)).unwrap());
        assert!(!is_conical(&lat(&[(0, 1), (7, 8)])).unwrap());
        assert!(is_conical(&lat(&[(1, 0), (2, 0), (0, 2), (0, 1)])).unwrap());
    }

    #[test]
    fn conical_det_examples() {
        let s: Vec<Point> = [(1, 0), (2, 0), (0, 1), (1, 1), (0, 2)]
            .iter()
            .map(|&(x, y)| Point::int(x, y))
            .collect();
        assert_eq!(conical_det(&s).unwrap(), BigInt::from(-4));
        let swapped: Vec<Point> = [(1, 0), (0, 1), (2, 0), (1, 1), (0, 2)]
            .iter()
            .map(|&(x, y)| Point::int(x, y))
            .collect();
        assert_eq!(conical_det(&swapped).unwrap(), BigInt::from(4));
        let line: Vec<Point> = (1..=5).map(|k| Point::int(k, 2 * k + 1)).collect();
        assert_eq!(conical_det(&line).unwrap(), BigInt::zero());
        let mut with_zero = s.clone();
        with_zero[0] = Point::origin();
        assert!(conical_det(&with_zero).is_err());
        assert!(conical_det(&s[..4]).is_err());
    }

    #[test]
    fn origin_augmentation() {
        let pair = PolytopePair::new(
            lat(&[(0, 2), (2, 2), (4, 4), (2, 6)]),
            lat(&[(1, 2), (2, 2), (5, 5), (3, 6)]),
        )
        .unwrap();
        let z = with_origin(&pair);
        assert_eq!(z.a1().vertices()[0], Point::origin());
        assert_eq!(z.a2().vertices()[0], Point::origin());
        assert_eq!(with_origin(&z), z);
        let pts = PolytopePair::new(lat(&[(1, 1)]), lat(&[(2, 3)])).unwrap();
        let z = with_origin(&pts);
        assert_eq!(z.a1(), &lat(&[(0, 0), (1, 1)]));
        assert_eq!(z.a2(), &lat(&[(0, 0), (2, 3)]));
    }

    #[test]
    fn pair_json() {
        let json = r#"{"A1":{"vertices":[[0,2],[2,2],[4,4],[2,6]]},"A2":{"vertices":[[1,2],[2,2],[5,5],[3,6]]}}"#;
        let pair: PolytopePair = serde_json::from_str(json).unwrap();
        assert_eq!(serde_json::to_string(&pair).unwrap(), json);
        let bad = r#"{"A1":{"vertices":[[-1,0],[1,1]]},"A2":{"vertices":[[1,1]]}}"#;
        assert!(serde_json::from_str::<PolytopePair>(bad).is_err());
    }
}
