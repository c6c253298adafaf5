use std::collections::BTreeSet;

use polytype::enumerate::{
    brute_force_polygons, conical_pairs, conical_polygons, enumerate_polygons, simplex_points, EnumOptions,
};
use polytype::geom::Polygon;

mod common;
use common::{conical_by_subsets, lattice_of, subset_hulls};

fn oracle(opts: EnumOptions) -> BTreeSet<Polygon> {
    subset_hulls(&simplex_points(opts.k))
        .into_iter()
        .filter(|p| p.dim() >= usize::from(opts.min_dim))
        .filter(|p| {
            let v = lattice_of(p);
            !opts.up_to_translation
                || (v.iter().map(|q| q.0).min() == Some(0) && v.iter().map(|q| q.1).min() == Some(0))
        })
        .collect()
}

fn all_options(k: u32) -> impl Iterator<Item = EnumOptions> {
    (0..=2u8).flat_map(move |d| [false, true].map(|t| EnumOptions::new(k).min_dim(d).up_to_translation(t)))
}

#[test]
fn stream_equals_subset_hulls() {
    for k in 1..=3 {
        for opts in all_options(k) {
            let got: Vec<Polygon> = enumerate_polygons(opts).unwrap().collect();
            let set: BTreeSet<Polygon> = got.iter().cloned().collect();
            assert_eq!(set.len(), got.len(), "duplicates for {opts:?}");
            assert_eq!(set, oracle(opts), "{opts:?}");
        }
    }
}

#[test]
fn library_brute_force_agrees_at_k4() {
    for opts in all_options(4) {
        let got: BTreeSet<Polygon> = enumerate_polygons(opts).unwrap().collect();
        assert_eq!(got, brute_force_polygons(opts).unwrap(), "{opts:?}");
    }
}

#[test]
fn no_duplicates_and_inside_the_simplex() {
    for k in 1..=5 {
        let got: Vec<Polygon> = enumerate_polygons(EnumOptions::new(k)).unwrap().collect();
        let set: BTreeSet<&Polygon> = got.iter().collect();
        assert_eq!(set.len(), got.len(), "k = {k}");
        let k = i64::from(k);
        for p in &got {
            assert_eq!(p.dim(), 2);
            assert!(lattice_of(p).iter().all(|&(x, y)| x >= 0 && y >= 0 && x + y <= k));
        }
    }
}

#[test]
fn counts_for_small_degrees() {
    let counts: Vec<usize> = (1..=4)
        .map(|k| enumerate_polygons(EnumOptions::new(k)).unwrap().count())
        .collect();
    assert_eq!(counts, [1, 23, 220, 1499]);
    let conical: Vec<usize> = (1..=4).map(|k| conical_polygons(k).unwrap().len()).collect();
    assert_eq!(conical, [0, 2, 86, 1038]);
}

#[test]
fn conical_filter_matches_subset_determinants() {
    let all: Vec<Polygon> = enumerate_polygons(EnumOptions::new(3)).unwrap().collect();
    let want: Vec<Polygon> = all.into_iter().filter(conical_by_subsets).collect();
    assert_eq!(conical_polygons(3).unwrap(), want);
}

#[test]
fn pairs_are_unordered_with_repetition() {
    let n = conical_polygons(3).unwrap().len();
    let pairs: Vec<_> = conical_pairs(3).unwrap().collect();
    assert_eq!(pairs.len(), n * (n + 1) / 2);
    let distinct: BTreeSet<(Polygon, Polygon)> =
        pairs.iter().map(|p| (p.a1().clone(), p.a2().clone())).collect();
    assert_eq!(distinct.len(), pairs.len());
}
