//! Lattice-point counting on lattice polygons.

use num_integer::Integer;
use num_traits::ToPrimitive;

use super::point::Point;
use super::polygon::Polygon;
use super::GeomError;

impl Polygon {
    fn require_lattice(&self) -> Result<Vec<(i64, i64)>, GeomError> {
        if !self.is_lattice() {
            return Err(GeomError::NotLattice);
        }
        self.lattice_vertices().ok_or(GeomError::Overflow)
    }

    /// All integer points of the polygon, sorted lexicographically.
    pub fn lattice_points(&self) -> Result<Vec<Point>, GeomError> {
        Ok(self
            .lattice_points_i64()?
            .into_iter()
            .map(|(x, y)| Point::int(x, y))
            .collect())
    }

    /// Same as [`Polygon::lattice_points`] with machine-integer coordinates.
    pub fn lattice_points_i64(&self) -> Result<Vec<(i64, i64)>, GeomError> {
        let verts = self.require_lattice()?;
        let n = verts.len();
        if n == 1 {
            return Ok(verts);
        }
        if n == 2 {
            let (a, b) = (verts[0], verts[1]);
            let g = (b.0 - a.0).gcd(&(b.1 - a.1));
            let step = ((b.0 - a.0) / g, (b.1 - a.1) / g);
            return Ok((0..=g).map(|k| (a.0 + k * step.0, a.1 + k * step.1)).collect());
        }
        let min_x = verts.iter().map(|v| v.0).min().unwrap();
        let max_x = verts.iter().map(|v| v.0).max().unwrap();
        let mut out = Vec::new();
        for x in min_x..=max_x {
            // Column x: intersect with every edge's half-plane a*y >= c / a*y <= c.
            let mut lo = i64::MIN;
            let mut hi = i64::MAX;
            for i in 0..n {
                let (p, q) = (verts[i], verts[(i + 1) % n]);
                // orient(p, q, (x, y)) >= 0  <=>  ex*(y - py) - ey*(x - px) >= 0
                let (ex, ey) = (q.0 - p.0, q.1 - p.1);
                let rhs = ey * (x - p.0);
                if ex > 0 {
                    // y >= py + rhs / ex
                    lo = lo.max(p.1 + Integer::div_ceil(&rhs, &ex));
                } else if ex < 0 {
                    // y <= py + rhs / ex
                    hi = hi.min(p.1 + Integer::div_floor(&rhs, &ex));
                } else if rhs > 0 {
                    // vertical edge: requires -ey*(x - px) >= 0
                    hi = i64::MIN;
                }
            }
            if lo <= hi {
                out.extend((lo..=hi).map(|y| (x, y)));
            }
        }
        Ok(out)
    }

    /// Number of lattice points on the boundary (all lattice points for dimension < 2).
    pub fn boundary_count(&self) -> Result<u64, GeomError> {
        let verts = self.require_lattice()?;
        match verts.len() {
            1 => Ok(1),
            2 => Ok(lattice_segment_length(verts[0], verts[1]) + 1),
            n => Ok((0..n)
                .map(|i| lattice_segment_length(verts[i], verts[(i + 1) % n]))
                .sum()),
        }
    }

    /// Number of lattice points in the relative interior of a 2-dimensional polygon;
    /// zero in lower dimension. Uses Pick's formula.
    pub fn interior_count(&self) -> Result<u64, GeomError> {
        self.require_lattice()?;
        if self.dim() < 2 {
            return Ok(0);
        }
        let twice_area = (self.volume() * super::point::rat(2)).to_integer();
        let boundary = self.boundary_count()? as i64;
        let twice_area = twice_area.to_i64().ok_or(GeomError::Overflow)?;
        // 2A = 2I + B - 2
        Ok(((twice_area - boundary + 2) / 2) as u64)
    }

    /// Lattice points minus one on a point or segment.
    pub fn lattice_length(&self) -> Result<u64, GeomError> {
        let verts = self.require_lattice()?;
        match verts.len() {
            1 => Ok(0),
            2 => Ok(lattice_segment_length(verts[0], verts[1])),
            _ => Err(GeomError::NotAFace),
        }
    }
}

/// Lattice length of the segment `[a, b]`.
pub fn lattice_segment_length(a: (i64, i64), b: (i64, i64)) -> u64 {
    (b.0 - a.0).gcd(&(b.1 - a.1)) as u64
}
