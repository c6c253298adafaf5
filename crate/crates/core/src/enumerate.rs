//! Listing the lattice polygons inside `k·σ`.
//!
//! Polygons are grown as vertex words `w1 w2 … wn` read counter-clockwise
//! from the lexicographically smallest vertex. A word extends by `v` when `v`
//! lies strictly left of `w1→w2`, `w1→wn` and `w(n-1)→wn`, and `w1 <lex v`.
//! Every convex polygon has exactly one such word and every prefix of it is
//! again admissible, so a breadth-first search visits each polygon once,
//! layer `n` holding the polygons with `n` vertices.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::geom::{hull, Point, Polygon};
use crate::newton::{is_conical, PolytopePair};

pub const DEFAULT_MAX_K: u32 = 9;
const BRUTE_FORCE_MAX_K: u32 = 4;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EnumError {
    #[error("k must be at least 1")]
    ZeroK,
    #[error("k = {k} exceeds the cap {cap}")]
    KTooLarge { k: u32, cap: u32 },
    #[error("min_dim must be 0, 1 or 2, got {0}")]
    BadMinDim(u8),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumOptions {
    pub k: u32,
    pub min_dim: u8,
    pub up_to_translation: bool,
    pub max_k: u32,
}

impl EnumOptions {
    pub fn new(k: u32) -> Self {
        Self {
            k,
            min_dim: 2,
            up_to_translation: false,
            max_k: DEFAULT_MAX_K,
        }
    }

    pub fn min_dim(mut self, d: u8) -> Self {
        self.min_dim = d;
        self
    }

    pub fn up_to_translation(mut self, yes: bool) -> Self {
        self.up_to_translation = yes;
        self
    }

    fn validate(&self, cap: u32) -> Result<(), EnumError> {
        if self.k == 0 {
            return Err(EnumError::ZeroK);
        }
        if self.k > cap {
            return Err(EnumError::KTooLarge { k: self.k, cap });
        }
        if self.min_dim > 2 {
            return Err(EnumError::BadMinDim(self.min_dim));
        }
        Ok(())
    }

    fn keeps(&self, word: &[(i64, i64)]) -> bool {
        if word.len().min(3) - 1 < usize::from(self.min_dim) {
            return false;
        }
        !self.up_to_translation
            || (word.iter().map(|v| v.0).min() == Some(0) && word.iter().map(|v| v.1).min() == Some(0))
    }
}

/// The lattice points of `k·σ` in lexicographic order.
pub fn simplex_points(k: u32) -> Vec<(i64, i64)> {
    let k = i64::from(k);
    (0..=k)
        .flat_map(|x| (0..=k - x).map(move |y| (x, y)))
        .collect()
}

fn orient(a: (i64, i64), b: (i64, i64), c: (i64, i64)) -> i64 {
    (b.0 - a.0) * (c.1 - a.1) - (b.1 - a.1) * (c.0 - a.0)
}

fn admissible(word: &[(i64, i64)], v: (i64, i64)) -> bool {
    let n = word.len();
    let (w1, w2, wn, wm) = (word[0], word[1], word[n - 1], word[n - 2]);
    w1 < v && orient(w1, w2, v) > 0 && orient(w1, wn, v) > 0 && orient(wm, wn, v) > 0
}

fn word_polygon(word: &[(i64, i64)]) -> Polygon {
    Polygon::lattice(word)
}

/// Deterministic breadth-first stream of the polygons of `k·σ`.
pub struct PolygonStream {
    opts: EnumOptions,
    points: Vec<(i64, i64)>,
    layer: Vec<Vec<(i64, i64)>>,
    next: Vec<Vec<(i64, i64)>>,
    pos: usize,
}

impl Iterator for PolygonStream {
    type Item = Polygon;

    fn next(&mut self) -> Option<Polygon> {
        loop {
            if self.pos == self.layer.len() {
                if self.next.is_empty() {
                    return None;
                }
                self.layer = std::mem::take(&mut self.next);
                self.pos = 0;
            }
            let word = &self.layer[self.pos];
            self.pos += 1;
            if word.len() >= 2 {
                for &v in &self.points {
                    if admissible(word, v) {
                        let mut child = word.clone();
                        child.push(v);
                        self.next.push(child);
                    }
                }
            }
            if self.opts.keeps(word) {
                return Some(word_polygon(word));
            }
        }
    }
}

pub fn enumerate_polygons(opts: EnumOptions) -> Result<PolygonStream, EnumError> {
    opts.validate(opts.max_k)?;
    let points = simplex_points(opts.k);
    let mut layer: Vec<Vec<(i64, i64)>> = points.iter().map(|&p| vec![p]).collect();
    for (i, &a) in points.iter().enumerate() {
        for &b in &points[i + 1..] {
            layer.push(vec![a, b]);
        }
    }
    Ok(PolygonStream {
        opts,
        points,
        layer,
        next: Vec::new(),
        pos: 0,
    })
}

/// Hulls of all non-empty subsets of `k·σ`'s lattice points, for `k ≤ 4`.
pub fn brute_force_polygons(opts: EnumOptions) -> Result<BTreeSet<Polygon>, EnumError> {
    opts.validate(BRUTE_FORCE_MAX_K.min(opts.max_k))?;
    let points = simplex_points(opts.k);
    let mut out = BTreeSet::new();
    for mask in 1u32..(1 << points.len()) {
        let subset: Vec<Point> = points
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &(x, y))| Point::int(x, y))
            .collect();
        let p = hull(subset).expect("non-empty subset");
        let word = p.lattice_vertices().expect("small coordinates");
        if opts.keeps(&word) {
            out.insert(p);
        }
    }
    Ok(out)
}

/// Full-dimensional conical polygons of `k·σ`, in enumeration order.
pub fn conical_polygons(k: u32) -> Result<Vec<Polygon>, EnumError> {
    Ok(enumerate_polygons(EnumOptions::new(k))?
        .filter(|p| is_conical(p).expect("lattice polygon"))
        .collect())
}

/// Index pairs `(i, j)`, `i ≤ j`, of a list of `n` items in row-major order.
pub fn pair_indices(n: usize) -> impl Iterator<Item = (usize, usize)> + Clone {
    (0..n).flat_map(move |i| (i..n).map(move |j| (i, j)))
}

/// Unordered pairs with repetition of [`conical_polygons`].
pub fn conical_pairs(k: u32) -> Result<impl Iterator<Item = PolytopePair>, EnumError> {
    let polys = conical_polygons(k)?;
    Ok(pair_indices(polys.len()).map(move |(i, j)| {
        PolytopePair::new(polys[i].clone(), polys[j].clone()).expect("polygons lie in k·σ")
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simplex_point_counts() {
        assert_eq!(simplex_points(1).len(), 3);
        assert_eq!(simplex_points(2).len(), 6);
        assert_eq!(simplex_points(4).len(), 15);
        let pts = simplex_points(3);
        assert!(pts.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn small_enumerations() {
        let one: Vec<_> = enumerate_polygons(EnumOptions::new(1)).unwrap().collect();
        assert_eq!(one, vec![Polygon::simplex(1)]);
        let two: Vec<_> = enumerate_polygons(EnumOptions::new(2)).unwrap().collect();
        assert_eq!(two.len(), 23);
        assert_eq!(two.iter().filter(|p| p.vertices().len() == 3).count(), 17);
        assert_eq!(two.iter().filter(|p| p.vertices().len() == 4).count(), 6);
        let all = enumerate_polygons(EnumOptions::new(2).min_dim(0)).unwrap().count();
        assert_eq!(all, 44);
    }

    #[test]
    fn layers_are_vertex_counts() {
        let sizes: Vec<usize> = enumerate_polygons(EnumOptions::new(4).min_dim(0))
            .unwrap()
            .map(|p| p.vertices().len())
            .collect();
        assert!(sizes.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn option_errors() {
        assert_eq!(enumerate_polygons(EnumOptions::new(0)).err(), Some(EnumError::ZeroK));
        assert_eq!(
            enumerate_polygons(EnumOptions::new(10)).err(),
            Some(EnumError::KTooLarge { k: 10, cap: 9 })
        );
        assert!(brute_force_polygons(EnumOptions::new(5)).is_err());
        assert!(enumerate_polygons(EnumOptions::new(2).min_dim(3)).is_err());
    }

    #[test]
    fn conical_small_degrees() {
        assert!(conical_polygons(1).unwrap().is_empty());
        assert!(conical_polygons(2).unwrap().contains(&Polygon::simplex(2)));
        assert_eq!(conical_pairs(1).unwrap().count(), 0);
        let n = conical_polygons(3).unwrap().len();
        assert_eq!(conical_pairs(3).unwrap().count(), n * (n + 1) / 2);
    }

    #[test]
    fn pair_index_order() {
        let v: Vec<_> = pair_indices(3).collect();
        assert_eq!(v, vec![(0, 0), (0, 1), (0, 2), (1, 1), (1, 2), (2, 2)]);
    }
}
