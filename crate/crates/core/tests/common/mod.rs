#![allow(dead_code)]

use std::sync::OnceLock;

use matroid_minor::weak::enumerate_matroids;
use matroid_minor::{GroundSet, Matroid};
use proptest::prelude::*;

pub fn lettered(s: &str) -> GroundSet {
    GroundSet::new(s.chars().map(|c| c.to_string())).unwrap()
}

pub fn uniform(r: usize, s: &str) -> Matroid {
    Matroid::uniform(r, lettered(s)).unwrap()
}

pub fn isthmus(a: &str) -> Matroid {
    Matroid::isthmus(a).unwrap()
}

pub fn loop_on(a: &str) -> Matroid {
    Matroid::loop_on(a).unwrap()
}

pub fn free_chain(parts: &[Matroid]) -> Matroid {
    parts
        .iter()
        .fold(Matroid::empty(), |acc, m| acc.free_product(m).unwrap())
}

/// All matroids on `{0, …, n-1}` for `n ≤ 6`.
pub fn pool(n: usize) -> &'static [Matroid] {
    static POOL: OnceLock<Vec<Vec<Matroid>>> = OnceLock::new();
    &POOL.get_or_init(|| {
        (0..=6)
            .map(|k| enumerate_matroids(&GroundSet::standard(k), None).unwrap())
            .collect()
    })[n]
}

pub fn with_prefix(m: &Matroid, prefix: &str) -> Matroid {
    let names: Vec<String> = (0..m.size()).map(|i| format!("{prefix}{i}")).collect();
    m.relabel(&names).unwrap()
}

/// A matroid with `lo..=hi` elements labeled `{prefix}0, {prefix}1, …`.
pub fn matroid(lo: usize, hi: usize, prefix: &'static str) -> impl Strategy<Value = Matroid> {
    (lo..=hi).prop_flat_map(move |n| {
        (0..pool(n).len()).prop_map(move |i| with_prefix(&pool(n)[i], prefix))
    })
}

/// Two matroids on disjoint ground sets with at most `total` elements.
pub fn disjoint_pair(total: usize) -> impl Strategy<Value = (Matroid, Matroid)> {
    (0..=total).prop_flat_map(move |t| {
        (0..=t).prop_flat_map(move |k| (matroid(k, k, "p"), matroid(t - k, t - k, "q")))
    })
}
