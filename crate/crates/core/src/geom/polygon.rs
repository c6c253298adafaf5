use std::fmt;

use num_traits::{One, Signed, Zero};

use super::point::{cross, orient, rat, Direction, Point, Rational};
use super::GeomError;

/// Which extremum of a linear functional to take over a polygon.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Extremum {
    Min,
    Max,
}

/// A convex polygon of dimension 0, 1 or 2 with exact rational vertices.
///
/// Vertices are stored counter-clockwise, starting at the lexicographically
/// smallest one, with no vertex lying on the segment joining its neighbours.
/// Two polygons are equal iff their vertex lists are identical.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Polygon {
    vertices: Vec<Point>,
    is_lattice: bool,
}

impl Polygon {
    /// Wraps a vertex list that is already in canonical form.
    pub(crate) fn from_canonical(vertices: Vec<Point>) -> Self {
        debug_assert!(!vertices.is_empty());
        let is_lattice = vertices.iter().all(Point::is_integral);
        Self {
            vertices,
            is_lattice,
        }
    }

    pub fn point(p: Point) -> Self {
        Self::from_canonical(vec![p])
    }

    /// Convex hull of integer points; panics on an empty slice.
    pub fn lattice(points: &[(i64, i64)]) -> Self {
        hull(points.iter().map(|&(x, y)| Point::int(x, y)).collect())
            .expect("lattice polygon from an empty point list")
    }

    /// The `k`-th dilate of the standard simplex, `k·σ`.
    pub fn simplex(k: i64) -> Self {
        Self::lattice(&[(0, 0), (k, 0), (0, k)])
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn is_lattice(&self) -> bool {
        self.is_lattice
    }

    pub fn dim(&self) -> usize {
        self.vertices.len().min(3) - 1
    }

    /// Vertex coordinates as integers; `None` unless the polygon is a lattice polygon
    /// whose coordinates fit in `i64`.
    pub fn lattice_vertices(&self) -> Option<Vec<(i64, i64)>> {
        self.vertices.iter().map(Point::to_lattice).collect()
    }

    /// Edge vectors in counter-clockwise order; a segment has its two opposite edges.
    pub fn edge_vectors(&self) -> Vec<Point> {
        let n = self.vertices.len();
        if n == 1 {
            return Vec::new();
        }
        (0..n)
            .map(|i| &self.vertices[(i + 1) % n] - &self.vertices[i])
            .collect()
    }

    /// Edges as `(start, end)` vertex pairs in counter-clockwise order.
    pub fn edges(&self) -> Vec<(Point, Point)> {
        let n = self.vertices.len();
        if n < 3 {
            return Vec::new();
        }
        (0..n)
            .map(|i| (self.vertices[i].clone(), self.vertices[(i + 1) % n].clone()))
            .collect()
    }

    pub fn translate(&self, t: &Point) -> Polygon {
        Polygon::from_canonical(self.vertices.iter().map(|v| v + t).collect())
    }

    pub fn scale(&self, factor: &Rational) -> Result<Polygon, GeomError> {
        if !factor.is_positive() {
            return Err(GeomError::NonPositiveScale(factor.to_string()));
        }
        Ok(Polygon::from_canonical(
            self.vertices.iter().map(|v| v.scaled(factor)).collect(),
        ))
    }

    /// Scaling by a non-negative factor; the zero factor collapses to the origin.
    pub fn scale_nonneg(&self, factor: &Rational) -> Polygon {
        if factor.is_zero() {
            Polygon::point(Point::origin())
        } else {
            self.scale(factor).expect("positive factor")
        }
    }

    pub fn contains(&self, p: &Point) -> bool {
        match self.vertices.len() {
            1 => &self.vertices[0] == p,
            2 => {
                let (a, b) = (&self.vertices[0], &self.vertices[1]);
                orient(a, b, p).is_zero() && a <= p && p <= b
            }
            n => (0..n).all(|i| {
                !orient(&self.vertices[i], &self.vertices[(i + 1) % n], p).is_negative()
            }),
        }
    }

    pub fn support_value(&self, dir: Direction, mode: Extremum) -> Rational {
        let values = self.vertices.iter().map(|v| v.pair(dir));
        match mode {
            Extremum::Min => values.min(),
            Extremum::Max => values.max(),
        }
        .expect("polygon has at least one vertex")
    }

    /// The face on which `<dir, ·>` attains its minimum.
    pub fn face(&self, dir: Direction) -> Polygon {
        let m = self.support_value(dir, Extremum::Min);
        let pts: Vec<Point> = self
            .vertices
            .iter()
            .filter(|v| v.pair(dir) == m)
            .cloned()
            .collect();
        hull(pts).expect("minimizing face is non-empty")
    }

    /// Primitive inner normals, one per edge, in counter-clockwise edge order.
    pub fn inner_normals(&self) -> Result<Vec<Direction>, GeomError> {
        if self.dim() < 2 {
            return Err(GeomError::NoNormalFan);
        }
        Ok(self
            .edge_vectors()
            .iter()
            .map(|e| {
                Direction::from_vector(e)
                    .expect("edges of a canonical polygon are non-zero")
                    .rotate90()
            })
            .collect())
    }

    /// Primitive outer normals, the negation of [`Polygon::inner_normals`].
    pub fn outer_normals(&self) -> Result<Vec<Direction>, GeomError> {
        Ok(self.inner_normals()?.into_iter().map(|d| -d).collect())
    }

    pub fn volume(&self) -> Rational {
        if self.vertices.len() < 3 {
            return Rational::zero();
        }
        let n = self.vertices.len();
        let twice: Rational = (0..n)
            .map(|i| cross(&self.vertices[i], &self.vertices[(i + 1) % n]))
            .sum();
        twice / rat(2)
    }

    /// `P ∩ {q : <q, ρ> ≥ m + 1}` with `m` the minimum of `<·, ρ>` over `P`.
    pub fn shave(&self, rho: Direction) -> Result<Polygon, GeomError> {
        if self.dim() < 2 {
            return Err(GeomError::TooSmallToShave);
        }
        let level = self.support_value(rho, Extremum::Min) + Rational::one();
        let clipped = from_convex_cycle(clip_halfplane(&self.vertices, rho, &level));
        match clipped {
            Some(p) if p.dim() == 2 => Ok(p),
            _ => Err(GeomError::TooSmallToShave),
        }
    }

    /// Translate so that the minimal x and minimal y coordinates are both zero.
    pub fn normalized(&self) -> Polygon {
        let min_x = self.vertices.iter().map(|v| &v.x).min().unwrap().clone();
        let min_y = self.vertices.iter().map(|v| &v.y).min().unwrap().clone();
        self.translate(&Point::new(-min_x, -min_y))
    }

    /// Lower-left corner of the bounding box.
    pub fn corner(&self) -> Point {
        let min_x = self.vertices.iter().map(|v| &v.x).min().unwrap().clone();
        let min_y = self.vertices.iter().map(|v| &v.y).min().unwrap().clone();
        Point::new(min_x, min_y)
    }

    pub fn in_nonnegative_quadrant(&self) -> bool {
        self.vertices
            .iter()
            .all(|v| !v.x.is_negative() && !v.y.is_negative())
    }
}

impl fmt::Debug for Polygon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.vertices.iter()).finish()
    }
}

impl fmt::Display for Polygon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "conv{{")?;
        for (i, v) in self.vertices.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

/// Convex hull of a non-empty point set, in canonical form (monotone chain).
pub fn hull(mut points: Vec<Point>) -> Result<Polygon, GeomError> {
    if points.is_empty() {
        return Err(GeomError::EmptyPointSet);
    }
    points.sort();
    points.dedup();
    if points.len() <= 2 {
        return Ok(Polygon::from_canonical(points));
    }
    let mut lower: Vec<Point> = Vec::with_capacity(points.len());
    for p in &points {
        while lower.len() >= 2 && !orient(&lower[lower.len() - 2], &lower[lower.len() - 1], p).is_positive() {
            lower.pop();
        }
        lower.push(p.clone());
    }
    let mut upper: Vec<Point> = Vec::with_capacity(points.len());
    for p in points.iter().rev() {
        while upper.len() >= 2 && !orient(&upper[upper.len() - 2], &upper[upper.len() - 1], p).is_positive() {
            upper.pop();
        }
        upper.push(p.clone());
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    Ok(Polygon::from_canonical(lower))
}

/// Minkowski sum by merging the two counter-clockwise edge sequences.
pub fn minkowski(p: &Polygon, q: &Polygon) -> Polygon {
    if p.vertices.len() == 1 {
        return q.translate(&p.vertices[0]);
    }
    if q.vertices.len() == 1 {
        return p.translate(&q.vertices[0]);
    }
    let ep = p.edge_vectors();
    let eq = q.edge_vectors();
    let dp: Vec<Direction> = ep.iter().map(|e| Direction::from_vector(e).unwrap()).collect();
    let dq: Vec<Direction> = eq.iter().map(|e| Direction::from_vector(e).unwrap()).collect();

    let mut current = &p.vertices[0] + &q.vertices[0];
    let mut out = vec![current.clone()];
    let (mut i, mut j) = (0, 0);
    let mut pending: Option<(Direction, Point)> = None;
    while i < ep.len() || j < eq.len() {
        let take_p = match (i < ep.len(), j < eq.len()) {
            (true, false) => Some(true),
            (false, true) => Some(false),
            _ => match dp[i].angle_cmp(&dq[j]) {
                std::cmp::Ordering::Less => Some(true),
                std::cmp::Ordering::Greater => Some(false),
                std::cmp::Ordering::Equal => None,
            },
        };
        let (dir, step) = match take_p {
            Some(true) => {
                i += 1;
                (dp[i - 1], ep[i - 1].clone())
            }
            Some(false) => {
                j += 1;
                (dq[j - 1], eq[j - 1].clone())
            }
            None => {
                i += 1;
                j += 1;
                (dp[i - 1], &ep[i - 1] + &eq[j - 1])
            }
        };
        pending = match pending {
            Some((d, acc)) if d == dir => Some((d, &acc + &step)),
            Some((_, acc)) => {
                current = &current + &acc;
                out.push(current.clone());
                Some((dir, step))
            }
            None => Some((dir, step)),
        };
    }
    // The final pending edge closes the walk back to the start vertex.
    debug_assert!({
        let (_, acc) = pending.as_ref().unwrap();
        &current + acc == out[0]
    });
    Polygon::from_canonical(out)
}

/// `Vol(P ⊕ Q) − Vol(P) − Vol(Q)`.
pub fn mixed_volume(p: &Polygon, q: &Polygon) -> Rational {
    minkowski(p, q).volume() - p.volume() - q.volume()
}

/// Canonical form of a counter-clockwise cycle of points in convex position,
/// possibly with repeated or collinear points. `None` for an empty cycle.
fn from_convex_cycle(cycle: Vec<Point>) -> Option<Polygon> {
    let mut pts: Vec<Point> = Vec::with_capacity(cycle.len());
    for p in cycle {
        if pts.last() != Some(&p) {
            pts.push(p);
        }
    }
    while pts.len() > 1 && pts.first() == pts.last() {
        pts.pop();
    }
    if pts.len() <= 2 {
        return hull(pts).ok();
    }
    let n = pts.len();
    let kept: Vec<Point> = (0..n)
        .filter(|&i| !orient(&pts[(i + n - 1) % n], &pts[i], &pts[(i + 1) % n]).is_zero())
        .map(|i| pts[i].clone())
        .collect();
    if kept.len() < 3 {
        return hull(pts).ok();
    }
    let start = (0..kept.len()).min_by(|&a, &b| kept[a].cmp(&kept[b])).unwrap();
    let mut out = kept[start..].to_vec();
    out.extend_from_slice(&kept[..start]);
    Some(Polygon::from_canonical(out))
}

/// Sutherland–Hodgman clip of a convex vertex cycle against `<q, dir> ≥ level`.
fn clip_halfplane(vertices: &[Point], dir: Direction, level: &Rational) -> Vec<Point> {
    let n = vertices.len();
    let values: Vec<Rational> = vertices.iter().map(|v| v.pair(dir) - level).collect();
    let mut out = Vec::new();
    for i in 0..n {
        let j = (i + 1) % n;
        let (a, b) = (&vertices[i], &vertices[j]);
        let (va, vb) = (&values[i], &values[j]);
        if !va.is_negative() {
            out.push(a.clone());
        }
        if (va.is_negative() && vb.is_positive()) || (va.is_positive() && vb.is_negative()) {
            let t = va / (va - vb);
            out.push(a + &(b - a).scaled(&t));
        }
    }
    out
}
