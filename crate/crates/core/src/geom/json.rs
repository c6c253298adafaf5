//! JSON form of a polygon: `{"vertices": [[x, y], ...]}` when every coordinate is
//! integral, otherwise `{"vertices": [[x_num, x_den, y_num, y_den], ...]}`.
//! Both shapes are accepted on input, and the vertex list is re-canonicalized.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::point::{Point, Rational};
use super::polygon::{hull, Polygon};

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum Int {
    Small(i64),
    Big(String),
}

impl Int {
    fn from_big(v: &BigInt) -> Self {
        match v.to_i64() {
            Some(x) => Int::Small(x),
            None => Int::Big(v.to_string()),
        }
    }

    fn to_big<E: serde::de::Error>(&self) -> Result<BigInt, E> {
        match self {
            Int::Small(x) => Ok(BigInt::from(*x)),
            Int::Big(s) => s
                .parse()
                .map_err(|_| E::custom(format!("invalid integer {s:?}"))),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct Wire {
    vertices: Vec<Vec<Int>>,
}

impl Serialize for Polygon {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let vertices = if self.is_lattice() {
            self.vertices()
                .iter()
                .map(|v| vec![Int::from_big(v.x.numer()), Int::from_big(v.y.numer())])
                .collect()
        } else {
            self.vertices()
                .iter()
                .map(|v| {
                    vec![
                        Int::from_big(v.x.numer()),
                        Int::from_big(v.x.denom()),
                        Int::from_big(v.y.numer()),
                        Int::from_big(v.y.denom()),
                    ]
                })
                .collect()
        };
        Wire { vertices }.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Polygon {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let wire = Wire::deserialize(deserializer)?;
        let mut points = Vec::with_capacity(wire.vertices.len());
        for coords in &wire.vertices {
            let point = match coords.as_slice() {
                [x, y] => Point::new(
                    Rational::from_integer(x.to_big()?),
                    Rational::from_integer(y.to_big()?),
                ),
                [xn, xd, yn, yd] => {
                    let (xd, yd) = (xd.to_big::<D::Error>()?, yd.to_big::<D::Error>()?);
                    if xd.is_zero() || yd.is_zero() {
                        return Err(D::Error::custom("zero denominator"));
                    }
                    Point::new(
                        Rational::new(xn.to_big()?, xd),
                        Rational::new(yn.to_big()?, yd),
                    )
                }
                _ => return Err(D::Error::custom("vertex must have 2 or 4 entries")),
            };
            points.push(point);
        }
        hull(points).map_err(D::Error::custom)
    }
}

impl Serialize for super::point::Direction {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        [self.dx, self.dy].serialize(serializer)
    }
}
