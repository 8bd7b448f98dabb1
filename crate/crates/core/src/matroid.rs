//! Labeled matroids stored as explicit basis families.
//!
//! Every subset of a ground set is a bit pattern ([`Mask`]) whose bit `i`
//! stands for the `i`-th label of the [`GroundSet`]. Ground sets keep their
//! labels sorted, so two matroids on the same label set always agree on bit
//! positions and can be compared basis-by-basis.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, OnceLock};

use thiserror::Error;

/// A subset of a ground set, one bit per label.
pub type Mask = u32;

/// Largest ground set a [`Matroid`] can hold.
pub const MAX_GROUND: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatroidError {
    #[error("basis family is empty")]
    EmptyBases,
    #[error("bases {first} and {second} have different cardinalities")]
    UnequalCardinality { first: String, second: String },
    #[error("exchange axiom fails for bases {first} and {second} at element {element}")]
    ExchangeAxiomViolation {
        first: String,
        second: String,
        element: String,
    },
    #[error("rank {rank} out of range for a ground set of size {size}")]
    RankOutOfRange { rank: usize, size: usize },
    #[error("ground sets overlap in {0}")]
    GroundOverlap(String),
    #[error("minor bounds are not nested")]
    NotNested,
    #[error("set is not a subset of the ground set")]
    NotASubset,
    #[error("matroid is empty")]
    EmptyMatroid,
    #[error("ground set of size {size} exceeds the limit of {max}")]
    GroundTooLarge { size: usize, max: usize },
    #[error("duplicate label {0}")]
    DuplicateLabel(String),
    #[error("labels must be nonempty")]
    EmptyLabel,
    #[error("unknown label {0}")]
    UnknownLabel(String),
    #[error("set chain is not a strictly increasing chain from the empty set to the ground set")]
    ChainMismatch,
    #[error("word letter is reducible")]
    ReducibleLetter,
}

type Result<T> = std::result::Result<T, MatroidError>;

/// An element name.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Label(Arc<str>);

impl Label {
    pub fn new(name: &str) -> Result<Self> {
        if name.is_empty() {
            return Err(MatroidError::EmptyLabel);
        }
        Ok(Label(Arc::from(name)))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Sorted, duplicate-free sequence of labels.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroundSet {
    labels: Arc<[Label]>,
}

impl GroundSet {
    pub fn new<I, S>(labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut out = labels
            .into_iter()
            .map(|s| Label::new(s.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        out.sort();
        if let Some(w) = out.windows(2).find(|w| w[0] == w[1]) {
            return Err(MatroidError::DuplicateLabel(w[0].to_string()));
        }
        if out.len() > MAX_GROUND {
            return Err(MatroidError::GroundTooLarge {
                size: out.len(),
                max: MAX_GROUND,
            });
        }
        Ok(GroundSet {
            labels: out.into(),
        })
    }

    pub fn empty() -> Self {
        GroundSet {
            labels: Arc::from(Vec::new()),
        }
    }

    /// Ground set `{0, 1, ..., n-1}`, zero-padded so that string order
    /// matches numeric order.
    pub fn standard(n: usize) -> Self {
        let width = n.saturating_sub(1).to_string().len();
        GroundSet::new((0..n).map(|i| format!("{i:0width$}"))).expect("standard labels are valid")
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn full(&self) -> Mask {
        full_mask(self.len())
    }

    pub fn position(&self, name: &str) -> Option<usize> {
        self.labels
            .binary_search_by(|l| l.as_str().cmp(name))
            .ok()
    }

    pub fn mask_of<S: AsRef<str>>(&self, names: &[S]) -> Result<Mask> {
        names.iter().try_fold(0, |acc, n| {
            let n = n.as_ref();
            self.position(n)
                .map(|p| acc | (1 << p))
                .ok_or_else(|| MatroidError::UnknownLabel(n.to_string()))
        })
    }

    pub fn labels_of(&self, mask: Mask) -> Vec<&Label> {
        bits(mask).map(|i| &self.labels[i]).collect()
    }

    /// Renders a subset as `{a,b,c}`.
    pub fn format_subset(&self, mask: Mask) -> String {
        let names: Vec<&str> = bits(mask).map(|i| self.labels[i].as_str()).collect();
        format!("{{{}}}", names.join(","))
    }

    pub fn union(&self, other: &GroundSet) -> Result<GroundSet> {
        if let Some(l) = self
            .labels
            .iter()
            .find(|l| other.position(l.as_str()).is_some())
        {
            return Err(MatroidError::GroundOverlap(l.to_string()));
        }
        let mut all: Vec<Label> = self.labels.iter().chain(other.labels.iter()).cloned().collect();
        all.sort();
        if all.len() > MAX_GROUND {
            return Err(MatroidError::GroundTooLarge {
                size: all.len(),
                max: MAX_GROUND,
            });
        }
        Ok(GroundSet { labels: all.into() })
    }

    /// Sub-ground consisting of the labels in `mask`.
    pub fn subset(&self, mask: Mask) -> GroundSet {
        GroundSet {
            labels: bits(mask).map(|i| self.labels[i].clone()).collect(),
        }
    }

    /// Bit positions in `sup` of this ground set's labels; `None` unless
    /// `self` is contained in `sup`.
    pub fn positions_in(&self, sup: &GroundSet) -> Option<Vec<u8>> {
        self.labels
            .iter()
            .map(|l| sup.position(l.as_str()).map(|p| p as u8))
            .collect()
    }

    /// Mask of this ground set inside `sup`.
    pub fn mask_in(&self, sup: &GroundSet) -> Option<Mask> {
        self.positions_in(sup).map(|ps| embed(full_mask(self.len()), &ps))
    }
}

impl fmt::Display for GroundSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format_subset(self.full()))
    }
}

pub(crate) fn full_mask(n: usize) -> Mask {
    if n >= 32 {
        Mask::MAX
    } else {
        (1 << n) - 1
    }
}

/// Indices of the set bits of `mask`, ascending.
pub fn bits(mut mask: Mask) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let i = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(i)
        }
    })
}

/// Maps bit `i` of `mask` to bit `positions[i]`.
pub fn embed(mask: Mask, positions: &[u8]) -> Mask {
    bits(mask).fold(0, |acc, i| acc | (1 << positions[i]))
}

/// Inverse of [`embed`]: collects bit `positions[i]` of `mask` into bit `i`.
pub fn pull_back(mask: Mask, positions: &[u8]) -> Mask {
    positions
        .iter()
        .enumerate()
        .fold(0, |acc, (i, &p)| acc | (((mask >> p) & 1) << i))
}

/// Removes the bits outside `keep` and packs the remaining ones downwards.
pub fn compress(mask: Mask, keep: Mask) -> Mask {
    bits(keep)
        .enumerate()
        .fold(0, |acc, (i, p)| acc | (((mask >> p) & 1) << i))
}

/// All `k`-subsets of an `n`-set in ascending numeric order.
pub fn subsets_of_size(n: usize, k: usize) -> Vec<Mask> {
    if k > n {
        return Vec::new();
    }
    if k == 0 {
        return vec![0];
    }
    let limit: u64 = 1 << n;
    let mut out = Vec::new();
    let mut v: u64 = (1 << k) - 1;
    while v < limit {
        out.push(v as Mask);
        // Gosper's hack
        let c = v & v.wrapping_neg();
        let r = v + c;
        v = (((r ^ v) >> 2) / c) | r;
    }
    out
}

/// A matroid on a labeled ground set, given by its bases.
pub struct Matroid {
    ground: GroundSet,
    rank: usize,
    bases: Vec<Mask>,
    rank_table: OnceLock<Box<[u8]>>,
    canonical: OnceLock<Box<[Mask]>>,
}

impl Clone for Matroid {
    fn clone(&self) -> Self {
        Matroid {
            ground: self.ground.clone(),
            rank: self.rank,
            bases: self.bases.clone(),
            rank_table: self.rank_table.clone(),
            canonical: self.canonical.clone(),
        }
    }
}

impl PartialEq for Matroid {
    fn eq(&self, other: &Self) -> bool {
        self.ground == other.ground && self.bases == other.bases
    }
}

impl Eq for Matroid {}

impl Hash for Matroid {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.ground.hash(state);
        self.bases.hash(state);
    }
}

impl PartialOrd for Matroid {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Ground set first, then rank, then the sorted basis family.
impl Ord for Matroid {
    fn cmp(&self, other: &Self) -> Ordering {
        self.ground
            .cmp(&other.ground)
            .then(self.rank.cmp(&other.rank))
            .then_with(|| self.bases.cmp(&other.bases))
    }
}

impl fmt::Debug for Matroid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Matroid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "M{}[r={}:", self.ground, self.rank)?;
        for b in &self.bases {
            write!(f, " {}", self.ground.format_subset(*b))?;
        }
        write!(f, "]")
    }
}

impl Matroid {
    /// Validates a basis family and builds the matroid.
    pub fn build(ground: GroundSet, bases: impl IntoIterator<Item = Mask>) -> Result<Self> {
        let mut bases: Vec<Mask> = bases.into_iter().collect();
        bases.sort_unstable();
        bases.dedup();
        let first = *bases.first().ok_or(MatroidError::EmptyBases)?;
        if bases.iter().any(|b| b & !ground.full() != 0) {
            return Err(MatroidError::NotASubset);
        }
        let rank = first.count_ones() as usize;
        if let Some(b) = bases.iter().find(|b| b.count_ones() as usize != rank) {
            return Err(MatroidError::UnequalCardinality {
                first: ground.format_subset(first),
                second: ground.format_subset(*b),
            });
        }
        if let Some((b1, b2, x)) = exchange_violation(&bases) {
            return Err(MatroidError::ExchangeAxiomViolation {
                first: ground.format_subset(b1),
                second: ground.format_subset(b2),
                element: ground.labels()[x].to_string(),
            });
        }
        Ok(Self::from_parts(ground, rank, bases))
    }

    /// Builds from label lists, e.g. `&[&["a"], &["b"]]`.
    pub fn from_labels<S: AsRef<str>>(ground: GroundSet, bases: &[&[S]]) -> Result<Self> {
        let masks = bases
            .iter()
            .map(|b| ground.mask_of(b))
            .collect::<Result<Vec<_>>>()?;
        Self::build(ground, masks)
    }

    /// Trusted constructor: `bases` must be sorted, deduplicated and valid.
    pub(crate) fn from_parts(ground: GroundSet, rank: usize, bases: Vec<Mask>) -> Self {
        debug_assert!(bases.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(exchange_violation(&bases).is_none());
        Matroid {
            ground,
            rank,
            bases,
            rank_table: OnceLock::new(),
            canonical: OnceLock::new(),
        }
    }

    fn from_unsorted(ground: GroundSet, rank: usize, mut bases: Vec<Mask>) -> Self {
        bases.sort_unstable();
        bases.dedup();
        Self::from_parts(ground, rank, bases)
    }

    /// The matroid on the empty set; its only basis is the empty set.
    pub fn empty() -> Self {
        Self::from_parts(GroundSet::empty(), 0, vec![0])
    }

    pub fn uniform(rank: usize, ground: GroundSet) -> Result<Self> {
        if rank > ground.len() {
            return Err(MatroidError::RankOutOfRange {
                rank,
                size: ground.len(),
            });
        }
        let bases = subsets_of_size(ground.len(), rank);
        Ok(Self::from_parts(ground, rank, bases))
    }

    /// Single loop `Z(a)`.
    pub fn loop_on(label: &str) -> Result<Self> {
        Self::uniform(0, GroundSet::new([label])?)
    }

    /// Single isthmus `I(a)`.
    pub fn isthmus(label: &str) -> Result<Self> {
        Self::uniform(1, GroundSet::new([label])?)
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn size(&self) -> usize {
        self.ground.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ground.is_empty()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Sorted basis family.
    pub fn bases(&self) -> &[Mask] {
        &self.bases
    }

    pub fn is_basis(&self, b: Mask) -> bool {
        self.bases.binary_search(&b).is_ok()
    }

    /// `rho(A)`, the size of a largest independent subset of `A`.
    pub fn rank_of(&self, a: Mask) -> Result<usize> {
        if a & !self.ground.full() != 0 {
            return Err(MatroidError::NotASubset);
        }
        Ok(self.rank_unchecked(a))
    }

    pub(crate) fn rank_unchecked(&self, a: Mask) -> usize {
        self.rank_table.get_or_init(|| self.build_rank_table())[a as usize] as usize
    }

    fn build_rank_table(&self) -> Box<[u8]> {
        let size = 1usize << self.size();
        let mut indep = vec![false; size];
        for &b in &self.bases {
            indep[b as usize] = true;
        }
        for m in (0..size).rev() {
            if indep[m] {
                for i in bits(m as Mask) {
                    indep[m & !(1 << i)] = true;
                }
            }
        }
        let mut rank = vec![0u8; size];
        for m in 1..size {
            rank[m] = if indep[m] {
                (m as Mask).count_ones() as u8
            } else {
                bits(m as Mask)
                    .map(|i| rank[m & !(1 << i)])
                    .max()
                    .unwrap_or(0)
            };
        }
        rank.into_boxed_slice()
    }

    pub fn is_independent(&self, a: Mask) -> bool {
        self.rank_unchecked(a) == a.count_ones() as usize
    }

    pub fn is_spanning(&self, a: Mask) -> bool {
        self.rank_unchecked(a) == self.rank
    }

    /// Nullity `|A| - rho(A)`.
    pub fn nullity(&self, a: Mask) -> usize {
        a.count_ones() as usize - self.rank_unchecked(a)
    }

    pub fn dual(&self) -> Matroid {
        let full = self.ground.full();
        Self::from_unsorted(
            self.ground.clone(),
            self.size() - self.rank,
            self.bases.iter().map(|b| full & !b).collect(),
        )
    }

    pub fn direct_sum(&self, other: &Matroid) -> Result<Matroid> {
        let ground = self.ground.union(&other.ground)?;
        let ps = self.ground.positions_in(&ground).expect("subset of union");
        let pt = other.ground.positions_in(&ground).expect("subset of union");
        let mut bases = Vec::with_capacity(self.bases.len() * other.bases.len());
        for &b1 in &self.bases {
            let e1 = embed(b1, &ps);
            for &b2 in &other.bases {
                bases.push(e1 | embed(b2, &pt));
            }
        }
        Ok(Self::from_unsorted(ground, self.rank + other.rank, bases))
    }

    /// Free product `self □ other`: bases are the sets `B` with
    /// `|B| = r(self) + r(other)` such that `B ∩ S` is independent in
    /// `self` and `B ∩ T` spans `other`.
    pub fn free_product(&self, other: &Matroid) -> Result<Matroid> {
        let ground = self.ground.union(&other.ground)?;
        let ps = self.ground.positions_in(&ground).expect("subset of union");
        let pt = other.ground.positions_in(&ground).expect("subset of union");
        let rank = self.rank + other.rank;
        let bases = subsets_of_size(ground.len(), rank)
            .into_iter()
            .filter(|&b| {
                self.is_independent(pull_back(b, &ps)) && other.is_spanning(pull_back(b, &pt))
            })
            .collect();
        Ok(Self::from_parts(ground, rank, bases))
    }

    /// The minor `M(A, B) = (M|B)/A` on ground `B \ A`.
    pub fn minor(&self, a: Mask, b: Mask) -> Result<Matroid> {
        if b & !self.ground.full() != 0 || a & !self.ground.full() != 0 {
            return Err(MatroidError::NotASubset);
        }
        if a & !b != 0 {
            return Err(MatroidError::NotNested);
        }
        Ok(self.minor_unchecked(a, b))
    }

    pub(crate) fn minor_unchecked(&self, a: Mask, b: Mask) -> Matroid {
        let rb = self.rank_unchecked(b);
        let ra = self.rank_unchecked(a);
        let keep = b & !a;
        let bases = self
            .bases
            .iter()
            .filter(|&&x| (x & b).count_ones() as usize == rb && (x & a).count_ones() as usize == ra)
            .map(|&x| compress(x & keep, keep))
            .collect();
        Self::from_unsorted(self.ground.subset(keep), rb - ra, bases)
    }

    pub fn restrict(&self, u: Mask) -> Result<Matroid> {
        self.minor(0, u)
    }

    pub fn contract(&self, u: Mask) -> Result<Matroid> {
        self.minor(u, self.ground.full())
    }

    /// True iff `M = M|U □ M/U` exactly.
    pub fn is_free_separator(&self, u: Mask) -> Result<bool> {
        if u & !self.ground.full() != 0 {
            return Err(MatroidError::NotASubset);
        }
        Ok(self.is_free_separator_unchecked(u))
    }

    fn is_free_separator_unchecked(&self, u: Mask) -> bool {
        // B ⊆ S is a basis of M|U □ M/U iff |B| = r(M), B ∩ U is independent
        // and B ∪ U spans; every basis of M already satisfies this, so
        // equality is a count comparison.
        let full = self.ground.full();
        let count = subsets_of_size(self.size(), self.rank)
            .into_iter()
            .filter(|&b| self.is_independent(b & u) && self.is_spanning(b | u))
            .count();
        debug_assert!(u == 0 || u == full || count >= self.bases.len());
        count == self.bases.len()
    }

    /// Nonempty proper subsets in order of (cardinality, bit pattern).
    fn proper_subsets(&self) -> impl Iterator<Item = Mask> {
        let n = self.size();
        (1..n).flat_map(move |k| subsets_of_size(n, k))
    }

    pub fn is_irreducible(&self) -> Result<bool> {
        if self.is_empty() {
            return Err(MatroidError::EmptyMatroid);
        }
        Ok(!self
            .proper_subsets()
            .any(|u| self.is_free_separator_unchecked(u)))
    }

    /// Splits into irreducible factors whose free product, taken left to
    /// right, is `self`. The leftmost factor is the restriction to the
    /// first free separator, in (cardinality, bit pattern) order, whose
    /// restriction is irreducible.
    pub fn factor(&self) -> Result<Vec<Matroid>> {
        if self.is_empty() {
            return Err(MatroidError::EmptyMatroid);
        }
        let mut factors = Vec::new();
        let mut rest = self.clone();
        'outer: loop {
            for u in rest.proper_subsets() {
                if !rest.is_free_separator_unchecked(u) {
                    continue;
                }
                let left = rest.minor_unchecked(0, u);
                if left.is_irreducible()? {
                    let right = rest.minor_unchecked(u, rest.ground.full());
                    factors.push(left);
                    rest = right;
                    continue 'outer;
                }
            }
            factors.push(rest);
            return Ok(factors);
        }
    }

    /// Same matroid with bit `i` moved to bit `perm[i]`; labels unchanged.
    pub fn permute(&self, perm: &[usize]) -> Matroid {
        assert_eq!(perm.len(), self.size(), "permutation length");
        let bases = self
            .bases
            .iter()
            .map(|&b| bits(b).fold(0, |acc, i| acc | (1 << perm[i])))
            .collect();
        Self::from_unsorted(self.ground.clone(), self.rank, bases)
    }

    /// Renames the label at position `i` to `names[i]`.
    pub fn relabel<S: AsRef<str>>(&self, names: &[S]) -> Result<Matroid> {
        assert_eq!(names.len(), self.size(), "label count");
        let ground = GroundSet::new(names.iter().map(|s| s.as_ref()))?;
        let positions: Vec<u8> = names
            .iter()
            .map(|n| ground.position(n.as_ref()).expect("label present") as u8)
            .collect();
        let bases = self.bases.iter().map(|&b| embed(b, &positions)).collect();
        Ok(Self::from_unsorted(ground, self.rank, bases))
    }

    /// Basis family of the lexicographically least relabeling onto
    /// positions `0..n`.
    pub(crate) fn canonical_bases(&self) -> &[Mask] {
        self.canonical.get_or_init(|| {
            let n = self.size();
            let mut best = self.bases.clone();
            let mut scratch = Vec::with_capacity(self.bases.len());
            for_each_permutation(n, |perm| {
                scratch.clear();
                scratch.extend(
                    self.bases
                        .iter()
                        .map(|&b| bits(b).fold(0, |acc, i| acc | (1 << perm[i]))),
                );
                scratch.sort_unstable();
                if scratch < best {
                    best.clone_from(&scratch);
                }
            });
            best.into_boxed_slice()
        })
    }

    pub fn canonicalize(&self) -> IsoClass {
        let bases = self.canonical_bases().to_vec();
        IsoClass {
            canonical: Matroid::from_parts(GroundSet::standard(self.size()), self.rank, bases),
        }
    }

    pub fn is_isomorphic(&self, other: &Matroid) -> bool {
        self.size() == other.size()
            && self.rank == other.rank
            && self.bases.len() == other.bases.len()
            && self.canonical_bases() == other.canonical_bases()
    }
}

/// Calls `f` on every permutation of `0..n` (Heap's algorithm).
pub fn for_each_permutation(n: usize, mut f: impl FnMut(&[usize])) {
    let mut perm: Vec<usize> = (0..n).collect();
    let mut c = vec![0usize; n];
    f(&perm);
    let mut i = 1;
    while i < n {
        if c[i] < i {
            let j = if i % 2 == 0 { 0 } else { c[i] };
            perm.swap(j, i);
            f(&perm);
            c[i] += 1;
            i = 1;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}

/// First `(B1, B2, x)` for which no exchange partner exists.
fn exchange_violation(sorted_bases: &[Mask]) -> Option<(Mask, Mask, usize)> {
    let contains = |b: Mask| sorted_bases.binary_search(&b).is_ok();
    for &b1 in sorted_bases {
        for &b2 in sorted_bases {
            for x in bits(b1 & !b2) {
                let base = b1 & !(1 << x);
                if !bits(b2 & !b1).any(|y| contains(base | (1 << y))) {
                    return Some((b1, b2, x));
                }
            }
        }
    }
    None
}

/// Isomorphism class of a matroid, stored as its canonical representative
/// on the standard ground set.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IsoClass {
    canonical: Matroid,
}

impl IsoClass {
    pub fn matroid(&self) -> &Matroid {
        &self.canonical
    }

    pub fn size(&self) -> usize {
        self.canonical.size()
    }

    pub fn rank(&self) -> usize {
        self.canonical.rank()
    }

    pub fn empty() -> Self {
        Matroid::empty().canonicalize()
    }
}

impl fmt::Debug for IsoClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}>", self.canonical)
    }
}

impl fmt::Display for IsoClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}>", self.canonical)
    }
}
