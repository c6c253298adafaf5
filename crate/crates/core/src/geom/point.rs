use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

/// Exact rational scalar used throughout the kernel.
pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat_frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// A point of the plane with exact rational coordinates.
///
/// The derived ordering is lexicographic on `(x, y)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    pub x: Rational,
    pub y: Rational,
}

impl Point {
    pub fn new(x: Rational, y: Rational) -> Self {
        Self { x, y }
    }

    pub fn int(x: i64, y: i64) -> Self {
        Self::new(rat(x), rat(y))
    }

    pub fn origin() -> Self {
        Self::int(0, 0)
    }

    pub fn is_integral(&self) -> bool {
        self.x.is_integer() && self.y.is_integer()
    }

    pub fn is_origin(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    /// Integer coordinates, if the point is integral and fits in `i64`.
    pub fn to_lattice(&self) -> Option<(i64, i64)> {
        if !self.is_integral() {
            return None;
        }
        Some((self.x.to_integer().to_i64()?, self.y.to_integer().to_i64()?))
    }

    pub fn scaled(&self, factor: &Rational) -> Point {
        Point::new(&self.x * factor, &self.y * factor)
    }

    /// `<dir, self>`.
    pub fn pair(&self, dir: Direction) -> Rational {
        &self.x * BigInt::from(dir.dx) + &self.y * BigInt::from(dir.dy)
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl Add for &Point {
    type Output = Point;
    fn add(self, rhs: &Point) -> Point {
        Point::new(&self.x + &rhs.x, &self.y + &rhs.y)
    }
}

impl Sub for &Point {
    type Output = Point;
    fn sub(self, rhs: &Point) -> Point {
        Point::new(&self.x - &rhs.x, &self.y - &rhs.y)
    }
}

impl Neg for &Point {
    type Output = Point;
    fn neg(self) -> Point {
        Point::new(-&self.x, -&self.y)
    }
}

/// `a.x * b.y - a.y * b.x`.
pub fn cross(a: &Point, b: &Point) -> Rational {
    &a.x * &b.y - &a.y * &b.x
}

/// Orientation of the turn `a -> b -> c`: positive for counter-clockwise.
pub fn orient(a: &Point, b: &Point, c: &Point) -> Rational {
    cross(&(b - a), &(c - a))
}

/// A primitive integer vector: a supporting direction, an edge direction or a normal.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Direction {
    pub dx: i64,
    pub dy: i64,
}

impl Direction {
    /// Reduces `(dx, dy)` to its primitive representative. `None` for the zero vector.
    pub fn new(dx: i64, dy: i64) -> Option<Self> {
        if dx == 0 && dy == 0 {
            return None;
        }
        let g = dx.gcd(&dy);
        Some(Self {
            dx: dx / g,
            dy: dy / g,
        })
    }

    /// Primitive direction of a non-zero rational vector.
    pub fn from_vector(v: &Point) -> Option<Self> {
        if v.is_origin() {
            return None;
        }
        let l = v.x.denom().lcm(v.y.denom());
        let x = (&v.x * Rational::from_integer(l.clone())).to_integer();
        let y = (&v.y * Rational::from_integer(l)).to_integer();
        let g = x.gcd(&y);
        Some(Self {
            dx: (x / &g).to_i64()?,
            dy: (y / &g).to_i64()?,
        })
    }

    /// Quarter turn counter-clockwise: `(-dy, dx)`.
    pub fn rotate90(self) -> Self {
        Self {
            dx: -self.dy,
            dy: self.dx,
        }
    }

    pub fn as_point(self) -> Point {
        Point::int(self.dx, self.dy)
    }

    /// Half-plane index used for angular sorting: 0 for angles in `(-90°, 90°]`.
    fn half(self) -> u8 {
        if self.dx > 0 || (self.dx == 0 && self.dy > 0) {
            0
        } else {
            1
        }
    }

    /// Counter-clockwise angular order starting just after the downward direction `(0, -1)`.
    pub fn angle_cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.half().cmp(&other.half()).then_with(|| {
            let c = self.dx as i128 * other.dy as i128 - self.dy as i128 * other.dx as i128;
            0i128.cmp(&c)
        })
    }

    pub fn is_nonnegative(self) -> bool {
        self.dx >= 0 && self.dy >= 0
    }
}

impl Neg for Direction {
    type Output = Direction;
    fn neg(self) -> Direction {
        Direction {
            dx: -self.dx,
            dy: -self.dy,
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.dx, self.dy)
    }
}
