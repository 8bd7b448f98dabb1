//! Finite posets and their Möbius functions.
//!
//! Elements are addressed by index. The order relation is stored as a bit
//! matrix and checked for the partial-order axioms at construction.

use std::collections::HashMap;
use std::hash::Hash;
use std::sync::{Arc, Mutex};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PosetError {
    #[error("relation is not reflexive at element {0}")]
    NotReflexive(usize),
    #[error("relation is not antisymmetric at elements {0} and {1}")]
    NotAntisymmetric(usize, usize),
    #[error("relation is not transitive at elements {0}, {1}, {2}")]
    NotTransitive(usize, usize, usize),
    #[error("duplicate element at index {0}")]
    DuplicateElement(usize),
    #[error("elements {0} and {1} are not in the required order")]
    NotComparable(usize, usize),
    #[error("element {0} is not the minimum")]
    NoMinimum(usize),
    #[error("map is not a closure operator: {0}")]
    NotAClosure(&'static str),
    #[error("index {0} out of range")]
    OutOfRange(usize),
}

type Result<T> = std::result::Result<T, PosetError>;

#[derive(Clone)]
struct BitMatrix {
    n: usize,
    words: usize,
    data: Vec<u64>,
}

impl BitMatrix {
    fn new(n: usize) -> Self {
        let words = n.div_ceil(64).max(1);
        BitMatrix {
            n,
            words,
            data: vec![0; n * words],
        }
    }

    fn set(&mut self, i: usize, j: usize) {
        self.data[i * self.words + j / 64] |= 1 << (j % 64);
    }

    fn get(&self, i: usize, j: usize) -> bool {
        self.data[i * self.words + j / 64] >> (j % 64) & 1 == 1
    }

    fn row(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        let row = &self.data[i * self.words..(i + 1) * self.words];
        row.iter().enumerate().flat_map(move |(w, &word)| {
            let mut word = word;
            std::iter::from_fn(move || {
                if word == 0 {
                    None
                } else {
                    let b = word.trailing_zeros() as usize;
                    word &= word - 1;
                    Some(w * 64 + b)
                }
            })
        })
        .filter(move |&j| j < self.n)
    }
}

/// A finite poset with memoized Möbius rows.
pub struct Poset<K> {
    elements: Vec<K>,
    leq: BitMatrix,
    /// Elements sorted by the size of their down-set: a linear extension.
    topo: Vec<usize>,
    topo_pos: Vec<usize>,
    mobius_rows: Mutex<HashMap<usize, Arc<Vec<i64>>>>,
}

impl<K: Clone> Clone for Poset<K> {
    fn clone(&self) -> Self {
        Poset {
            elements: self.elements.clone(),
            leq: self.leq.clone(),
            topo: self.topo.clone(),
            topo_pos: self.topo_pos.clone(),
            mobius_rows: Mutex::new(self.mobius_rows.lock().expect("poisoned").clone()),
        }
    }
}

impl<K: std::fmt::Debug> std::fmt::Debug for Poset<K> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Poset")
            .field("elements", &self.elements)
            .field("hasse", &self.hasse_edges())
            .finish()
    }
}

impl<K> Poset<K> {
    /// Builds the poset and checks reflexivity, antisymmetry and
    /// transitivity of `leq`.
    pub fn new(elements: Vec<K>, leq: impl Fn(&K, &K) -> bool) -> Result<Self> {
        let n = elements.len();
        let mut m = BitMatrix::new(n);
        for i in 0..n {
            for j in 0..n {
                if leq(&elements[i], &elements[j]) {
                    m.set(i, j);
                }
            }
        }
        Self::from_matrix(elements, m)
    }

    /// Builds from an explicit relation given as `relation[i][j] = i ≤ j`.
    pub fn from_relation(elements: Vec<K>, relation: &[Vec<bool>]) -> Result<Self> {
        let n = elements.len();
        let mut m = BitMatrix::new(n);
        for (i, row) in relation.iter().enumerate().take(n) {
            for (j, &v) in row.iter().enumerate().take(n) {
                if v {
                    m.set(i, j);
                }
            }
        }
        Self::from_matrix(elements, m)
    }

    fn from_matrix(elements: Vec<K>, m: BitMatrix) -> Result<Self> {
        let n = elements.len();
        for i in 0..n {
            if !m.get(i, i) {
                return Err(PosetError::NotReflexive(i));
            }
        }
        for i in 0..n {
            for j in m.row(i) {
                if i != j && m.get(j, i) {
                    return Err(PosetError::NotAntisymmetric(i, j));
                }
                for k in m.row(j) {
                    if !m.get(i, k) {
                        return Err(PosetError::NotTransitive(i, j, k));
                    }
                }
            }
        }
        let down: Vec<usize> = (0..n).map(|j| (0..n).filter(|&i| m.get(i, j)).count()).collect();
        let mut topo: Vec<usize> = (0..n).collect();
        topo.sort_by_key(|&i| (down[i], i));
        let mut topo_pos = vec![0; n];
        for (p, &i) in topo.iter().enumerate() {
            topo_pos[i] = p;
        }
        Ok(Poset {
            elements,
            leq: m,
            topo,
            topo_pos,
            mobius_rows: Mutex::new(HashMap::new()),
        })
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[K] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &K {
        &self.elements[i]
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.leq.get(i, j)
    }

    pub fn lt(&self, i: usize, j: usize) -> bool {
        i != j && self.leq.get(i, j)
    }

    /// Indices `j` with `i ≤ j`.
    pub fn up_set(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.leq.row(i)
    }

    /// Indices in a fixed linear extension of the order.
    pub fn linear_extension(&self) -> &[usize] {
        &self.topo
    }

    /// Cover relations `(i, j)`, `i ⋖ j`.
    pub fn hasse_edges(&self) -> Vec<(usize, usize)> {
        let mut edges = Vec::new();
        for i in 0..self.len() {
            for j in self.up_set(i) {
                if i != j && !self.up_set(i).any(|k| k != i && k != j && self.lt(k, j)) {
                    edges.push((i, j));
                }
            }
        }
        edges
    }

    /// The unique minimum, if any.
    pub fn minimum(&self) -> Option<usize> {
        (0..self.len()).find(|&x| (0..self.len()).all(|y| self.leq(x, y)))
    }

    fn check(&self, i: usize) -> Result<()> {
        if i < self.len() {
            Ok(())
        } else {
            Err(PosetError::OutOfRange(i))
        }
    }

    fn mobius_row(&self, x: usize) -> Arc<Vec<i64>> {
        if let Some(row) = self.mobius_rows.lock().expect("poisoned").get(&x) {
            return row.clone();
        }
        let row = Arc::new(mobius_in(self, x, |_| true));
        self.mobius_rows
            .lock()
            .expect("poisoned")
            .entry(x)
            .or_insert(row)
            .clone()
    }

    /// `μ(x, z)` by the defining recursion.
    pub fn mobius(&self, x: usize, z: usize) -> Result<i64> {
        self.check(x)?;
        self.check(z)?;
        if !self.leq(x, z) {
            return Err(PosetError::NotComparable(x, z));
        }
        Ok(self.mobius_row(x)[z])
    }

    /// `μ(x, z)` as the signed count of chains from `x` to `z`.
    pub fn mobius_hall(&self, x: usize, z: usize) -> Result<i64> {
        self.check(x)?;
        self.check(z)?;
        if !self.leq(x, z) {
            return Err(PosetError::NotComparable(x, z));
        }
        fn walk<K>(p: &Poset<K>, cur: usize, z: usize, len: u32, acc: &mut i64) {
            if cur == z {
                *acc += if len.is_multiple_of(2) { 1 } else { -1 };
                return;
            }
            for y in p.up_set(cur) {
                if y != cur && p.leq(y, z) {
                    walk(p, y, z, len + 1, acc);
                }
            }
        }
        let mut acc = 0;
        walk(self, x, z, 0, &mut acc);
        Ok(acc)
    }

    /// `μ_Q(x, z)`: Möbius value inside `{x, z} ∪ ([x, z] ∩ Q)`.
    pub fn mobius_relative(&self, in_q: impl Fn(usize) -> bool, x: usize, z: usize) -> Result<i64> {
        self.check(x)?;
        self.check(z)?;
        if !self.leq(x, z) {
            return Err(PosetError::NotComparable(x, z));
        }
        Ok(mobius_in(self, x, |y| y == z || (in_q(y) && self.leq(y, z)))[z])
    }

    /// Rota's closure identity at `(a, b)`.
    pub fn check_rota(&self, phi: &ClosureMap, a: usize, b: usize) -> Verdict {
        let row = self.mobius_row(a);
        let lhs: i64 = (0..self.len())
            .filter(|&x| phi.apply(x) == b && self.leq(a, x))
            .map(|x| row[x])
            .sum();
        let rhs = if phi.is_closed(a) && phi.is_closed(b) && self.leq(a, b) {
            mobius_in(self, a, |y| phi.is_closed(y))[b]
        } else {
            0
        };
        Verdict::compare(lhs, rhs)
    }

    /// Split identity `μ_P(x,z) = Σ_{y ∈ [x,z)_Q} μ_P(x,y) μ_R(y,z)`,
    /// `R` the complement of `Q`.
    pub fn check_split(&self, in_q: impl Fn(usize) -> bool, x: usize, z: usize) -> Result<Verdict> {
        self.check(x)?;
        self.check(z)?;
        if !self.lt(x, z) {
            return Err(PosetError::NotComparable(x, z));
        }
        let lhs = self.mobius(x, z)?;
        let row = self.mobius_row(x);
        let mut rhs = 0;
        for y in self.up_set(x) {
            if y == z || !self.leq(y, z) || !(y == x || in_q(y)) {
                continue;
            }
            rhs += row[y] * self.mobius_relative(|w| !in_q(w), y, z)?;
        }
        Ok(Verdict::compare(lhs, rhs))
    }

    /// Indices `j` for which `μ(x, j) ≠ 0`; `x` must be the minimum.
    pub fn nonzero_support_indices(&self, x: usize) -> Result<Vec<usize>> {
        self.check(x)?;
        if (0..self.len()).any(|y| !self.leq(x, y)) {
            return Err(PosetError::NoMinimum(x));
        }
        let row = self.mobius_row(x);
        Ok((0..self.len()).filter(|&y| row[y] != 0).collect())
    }
}

impl<K: Clone> Poset<K> {
    /// Induced subposet on `indices`, in the given order.
    pub fn subposet(&self, indices: &[usize]) -> Poset<K> {
        let n = indices.len();
        let mut m = BitMatrix::new(n);
        for (a, &i) in indices.iter().enumerate() {
            for (b, &j) in indices.iter().enumerate() {
                if self.leq(i, j) {
                    m.set(a, b);
                }
            }
        }
        let elements = indices.iter().map(|&i| self.elements[i].clone()).collect();
        Self::from_matrix(elements, m).expect("induced order is a partial order")
    }

    /// `P̂ = {y : μ(x, y) ≠ 0}` for the minimum `x`. Indices are renumbered
    /// in increasing order of the original ones.
    pub fn nonzero_support(&self, x: usize) -> Result<Poset<K>> {
        Ok(self.subposet(&self.nonzero_support_indices(x)?))
    }
}

impl<K: Eq + Hash> Poset<K> {
    pub fn index_of(&self, key: &K) -> Option<usize> {
        self.elements.iter().position(|k| k == key)
    }

    /// Rejects posets with repeated keys.
    pub fn check_distinct(&self) -> Result<()> {
        let mut seen = HashMap::new();
        for (i, k) in self.elements.iter().enumerate() {
            if seen.insert(k, i).is_some() {
                return Err(PosetError::DuplicateElement(i));
            }
        }
        Ok(())
    }
}

/// Möbius values `μ(x, ·)` in the subposet `{x} ∪ {y ≥ x : member(y)}`;
/// entries outside it are 0.
fn mobius_in<K>(p: &Poset<K>, x: usize, member: impl Fn(usize) -> bool) -> Vec<i64> {
    let mut mu = vec![0i64; p.len()];
    let mut seen: Vec<usize> = Vec::new();
    for &z in &p.topo[p.topo_pos[x]..] {
        if !p.leq(x, z) || !(z == x || member(z)) {
            continue;
        }
        mu[z] = if z == x {
            1
        } else {
            -seen.iter().filter(|&&y| p.leq(y, z)).map(|&y| mu[y]).sum::<i64>()
        };
        seen.push(z);
    }
    mu
}

/// Outcome of an identity check: both sides and whether they agree.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Verdict {
    pub lhs: i64,
    pub rhs: i64,
    pub pass: bool,
}

impl Verdict {
    pub fn compare(lhs: i64, rhs: i64) -> Self {
        Verdict {
            lhs,
            rhs,
            pass: lhs == rhs,
        }
    }
}

/// A closure operator on a poset, as an index map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosureMap {
    map: Vec<usize>,
}

impl ClosureMap {
    /// Checks that `map` is extensive, idempotent and order-preserving on `p`.
    pub fn new<K>(p: &Poset<K>, map: Vec<usize>) -> Result<Self> {
        if map.len() != p.len() {
            return Err(PosetError::NotAClosure("length mismatch"));
        }
        if let Some(&bad) = map.iter().find(|&&m| m >= p.len()) {
            return Err(PosetError::OutOfRange(bad));
        }
        for x in 0..p.len() {
            if !p.leq(x, map[x]) {
                return Err(PosetError::NotAClosure("not extensive"));
            }
            if map[map[x]] != map[x] {
                return Err(PosetError::NotAClosure("not idempotent"));
            }
            for y in p.up_set(x) {
                if !p.leq(map[x], map[y]) {
                    return Err(PosetError::NotAClosure("not order-preserving"));
                }
            }
        }
        Ok(ClosureMap { map })
    }

    pub fn identity(n: usize) -> Self {
        ClosureMap {
            map: (0..n).collect(),
        }
    }

    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    pub fn is_closed(&self, x: usize) -> bool {
        self.map[x] == x
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain(n: usize) -> Poset<usize> {
        Poset::new((0..n).collect(), |a, b| a <= b).unwrap()
    }

    fn boolean(n: u32) -> Poset<u32> {
        Poset::new((0..1 << n).collect(), |a, b| a & !b == 0).unwrap()
    }

    #[test]
    fn chain_mobius() {
        let p = chain(3);
        assert_eq!(p.mobius(0, 2).unwrap(), 0);
        assert_eq!(p.mobius(0, 1).unwrap(), -1);
        assert_eq!(p.mobius(1, 1).unwrap(), 1);
        assert_eq!(p.mobius(2, 0), Err(PosetError::NotComparable(2, 0)));
    }

    #[test]
    fn hall_examples() {
        let p = chain(2);
        assert_eq!(p.mobius_hall(0, 1).unwrap(), -1);
        let b = boolean(2);
        assert_eq!(b.mobius_hall(0, 3).unwrap(), 1);
        let b3 = boolean(3);
        assert_eq!(b3.mobius(0, 7).unwrap(), -1);
        for x in 0..8 {
            for z in b3.up_set(x) {
                assert_eq!(b3.mobius(x, z).unwrap(), b3.mobius_hall(x, z).unwrap());
            }
        }
    }

    #[test]
    fn relative_examples() {
        let b = boolean(2);
        assert_eq!(b.mobius_relative(|_| false, 0, 3).unwrap(), -1);
        assert_eq!(b.mobius_relative(|_| true, 0, 3).unwrap(), b.mobius(0, 3).unwrap());
        // keep only one atom: a 3-chain
        assert_eq!(b.mobius_relative(|y| y == 1, 0, 3).unwrap(), 0);
    }

    #[test]
    fn order_axioms_enforced() {
        assert_eq!(
            Poset::new(vec![0, 1], |a, b| a < b).unwrap_err(),
            PosetError::NotReflexive(0)
        );
        assert!(matches!(
            Poset::new(vec![0, 1], |_, _| true).unwrap_err(),
            PosetError::NotAntisymmetric(..)
        ));
        let rel = vec![
            vec![true, true, false],
            vec![false, true, true],
            vec![false, false, true],
        ];
        assert!(matches!(
            Poset::from_relation(vec![0, 1, 2], &rel).unwrap_err(),
            PosetError::NotTransitive(..)
        ));
    }

    #[test]
    fn closure_validation() {
        let b = boolean(2);
        // x ↦ x | 1
        let phi = ClosureMap::new(&b, (0..4).map(|x| x | 1).collect()).unwrap();
        assert!(phi.is_closed(3));
        assert!(!phi.is_closed(2));
        assert!(ClosureMap::new(&b, vec![0, 0, 2, 3]).is_err());
        assert!(ClosureMap::new(&b, vec![3, 3, 3, 3]).is_ok());
        // not idempotent on a 3-chain
        let c = chain(3);
        assert_eq!(
            ClosureMap::new(&c, vec![1, 2, 2]).unwrap_err(),
            PosetError::NotAClosure("not idempotent")
        );
    }

    #[test]
    fn rota_examples() {
        let b = boolean(3);
        let id = ClosureMap::identity(8);
        for a in 0..8 {
            for bb in b.up_set(a) {
                let v = b.check_rota(&id, a, bb);
                assert!(v.pass);
                assert_eq!(v.lhs, b.mobius(a, bb).unwrap());
            }
        }
        let phi = ClosureMap::new(&b, (0..8).map(|x| x | 1).collect()).unwrap();
        for a in 0..8 {
            for bb in 0..8 {
                assert!(b.check_rota(&phi, a, bb).pass, "{a} {bb}");
            }
        }
        // non-closed 2 is not in any fiber; closed 3 with a = 0 non-closed
        let v = b.check_rota(&phi, 0, 3);
        assert_eq!(v.rhs, 0);
    }

    #[test]
    fn split_examples() {
        let b = boolean(3);
        for x in 0..8 {
            for z in b.up_set(x) {
                if x == z {
                    continue;
                }
                assert!(b.check_split(|_| false, x, z).unwrap().pass);
                assert!(b.check_split(|_| true, x, z).unwrap().pass);
                assert!(b.check_split(|y| y.count_ones() == 1, x, z).unwrap().pass);
            }
        }
        assert!(b.check_split(|_| true, 1, 1).is_err());
    }

    #[test]
    fn nonzero_support_examples() {
        let c = chain(3);
        let s = c.nonzero_support(0).unwrap();
        assert_eq!(s.elements(), &[0, 1]);
        // antichain over a bottom
        let p = Poset::new(vec![0, 1, 2, 3], |a, b| a == b || *a == 0).unwrap();
        assert_eq!(p.nonzero_support(0).unwrap().len(), 4);
        assert_eq!(p.nonzero_support(1).unwrap_err(), PosetError::NoMinimum(1));
    }

    #[test]
    fn hasse_of_boolean() {
        assert_eq!(boolean(2).hasse_edges(), vec![(0, 1), (0, 2), (1, 3), (2, 3)]);
        assert_eq!(chain(3).minimum(), Some(0));
    }
}
