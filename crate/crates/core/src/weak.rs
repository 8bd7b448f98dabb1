//! Matroid enumeration and the rank-preserving weak order.
//!
//! `M ≤ N` iff both live on the same ground set and every basis of `M` is a
//! basis of `N` (which forces equal rank). Enumeration walks basis families
//! in a fixed subset order and discards a partial family as soon as some
//! exchange step `(B1, B2, x)` has all of its candidate targets decided
//! and absent.

use thiserror::Error;

use crate::matroid::{
    bits, for_each_permutation, subsets_of_size, GroundSet, IsoClass, Mask, Matroid, MatroidError,
};
use crate::poset::{ClosureMap, Poset, PosetError};

/// Enumeration is exhaustive, so ground sets stay small.
pub const MAX_ENUM: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WeakError {
    #[error("ground set of size {size} exceeds the enumeration limit of {max}")]
    GroundTooLarge { size: usize, max: usize },
    #[error("iso classes differ in size or rank")]
    SizeMismatch,
    #[error("matroids are not on the same ground set with the same rank")]
    Incomparable,
    #[error(transparent)]
    Matroid(#[from] MatroidError),
    #[error(transparent)]
    Poset(#[from] PosetError),
}

type Result<T> = std::result::Result<T, WeakError>;

fn check_size(n: usize) -> Result<()> {
    if n > MAX_ENUM {
        Err(WeakError::GroundTooLarge {
            size: n,
            max: MAX_ENUM,
        })
    } else {
        Ok(())
    }
}

/// `a ≤ b` in the weak order.
pub fn weak_leq(a: &Matroid, b: &Matroid) -> bool {
    a.ground() == b.ground() && a.rank() == b.rank() && is_sorted_subset(a.bases(), b.bases())
}

fn is_sorted_subset(small: &[Mask], big: &[Mask]) -> bool {
    let mut it = big.iter();
    small.iter().all(|x| it.any(|y| y == x))
}

/// Depth-first search over basis families of one rank stratum.
struct FamilySearch {
    candidates: Vec<Mask>,
    index: Vec<usize>,
    forced: u64,
    allowed: u64,
}

impl FamilySearch {
    fn new(n: usize, rank: usize, forced: &[Mask], allowed: Option<&[Mask]>) -> Self {
        let candidates = subsets_of_size(n, rank);
        let mut index = vec![usize::MAX; 1 << n];
        for (i, &c) in candidates.iter().enumerate() {
            index[c as usize] = i;
        }
        let to_bits = |ms: &[Mask]| ms.iter().fold(0u64, |acc, &m| acc | 1 << index[m as usize]);
        let forced = to_bits(forced);
        let allowed = allowed.map_or(u64::MAX, to_bits) | forced;
        FamilySearch {
            candidates,
            index,
            forced,
            allowed,
        }
    }

    fn run(&self) -> Vec<Vec<Mask>> {
        let mut out = Vec::new();
        if self.forced & !self.allowed != 0 {
            return out;
        }
        self.step(0, 0, &mut out);
        out
    }

    /// `fam` holds decisions for candidates `< i`.
    fn step(&self, i: usize, fam: u64, out: &mut Vec<Vec<Mask>>) {
        if i == self.candidates.len() {
            if fam != 0 {
                out.push(
                    (0..self.candidates.len())
                        .filter(|&k| fam >> k & 1 == 1)
                        .map(|k| self.candidates[k])
                        .collect(),
                );
            }
            return;
        }
        let bit = 1u64 << i;
        if self.allowed & bit != 0 {
            let with = fam | bit;
            if !self.dead_after_include(i, with) {
                self.step(i + 1, with, out);
            }
        }
        if self.forced & bit == 0 && !self.dead_after_exclude(i, fam) {
            self.step(i + 1, fam, out);
        }
    }

    /// True if exchange at `(b1, b2, x)` can no longer be satisfied once the
    /// first `decided` candidates are fixed.
    fn dead(&self, b1: Mask, b2: Mask, x: usize, fam: u64, decided: usize) -> bool {
        let base = b1 & !(1 << x);
        bits(b2 & !b1).all(|y| {
            let t = self.index[(base | 1 << y) as usize];
            t < decided && fam >> t & 1 == 0
        })
    }

    fn members(&self, fam: u64) -> impl Iterator<Item = Mask> + '_ {
        let mut f = fam;
        std::iter::from_fn(move || {
            if f == 0 {
                None
            } else {
                let k = f.trailing_zeros() as usize;
                f &= f - 1;
                Some(self.candidates[k])
            }
        })
    }

    fn dead_after_include(&self, i: usize, fam: u64) -> bool {
        let b = self.candidates[i];
        let decided = i + 1;
        self.members(fam).any(|other| {
            bits(b & !other).any(|x| self.dead(b, other, x, fam, decided))
                || bits(other & !b).any(|x| self.dead(other, b, x, fam, decided))
        })
    }

    fn dead_after_exclude(&self, i: usize, fam: u64) -> bool {
        let c = self.candidates[i];
        let decided = i + 1;
        // c = b1 - x + y for members b1 one swap away from c
        self.members(fam).any(|b1| {
            if (b1 & c).count_ones() + 1 != c.count_ones() {
                return false;
            }
            let x = (b1 & !c).trailing_zeros() as usize;
            let y = (c & !b1).trailing_zeros() as usize;
            self.members(fam)
                .any(|b2| b2 >> y & 1 == 1 && b2 >> x & 1 == 0 && self.dead(b1, b2, x, fam, decided))
        })
    }
}

fn families_to_matroids(ground: &GroundSet, rank: usize, fams: Vec<Vec<Mask>>) -> Vec<Matroid> {
    let mut out: Vec<Matroid> = fams
        .into_iter()
        .map(|f| Matroid::from_parts(ground.clone(), rank, f))
        .collect();
    out.sort();
    out
}

/// Every matroid on `ground` (of rank `rank` if given), each exactly once,
/// ordered by rank then basis family.
pub fn enumerate_matroids(ground: &GroundSet, rank: Option<usize>) -> Result<Vec<Matroid>> {
    let n = ground.len();
    check_size(n)?;
    let ranks: Vec<usize> = match rank {
        Some(r) if r > n => return Ok(Vec::new()),
        Some(r) => vec![r],
        None => (0..=n).collect(),
    };
    let mut out = Vec::new();
    for r in ranks {
        let fams = FamilySearch::new(n, r, &[], None).run();
        out.extend(families_to_matroids(ground, r, fams));
    }
    Ok(out)
}

/// All `L` with `lo ≤ L ≤ hi`, sorted.
pub fn weak_interval(lo: &Matroid, hi: &Matroid) -> Result<Vec<Matroid>> {
    check_size(lo.size())?;
    if lo.ground() != hi.ground() || lo.rank() != hi.rank() {
        return Err(WeakError::Incomparable);
    }
    let fams = FamilySearch::new(lo.size(), lo.rank(), lo.bases(), Some(hi.bases())).run();
    Ok(families_to_matroids(lo.ground(), lo.rank(), fams))
}

/// The order filter `{N : N ≥ m}`, with `m` first.
pub fn upper_set(m: &Matroid) -> Result<Vec<Matroid>> {
    check_size(m.size())?;
    let fams = FamilySearch::new(m.size(), m.rank(), m.bases(), None).run();
    let mut out = families_to_matroids(m.ground(), m.rank(), fams);
    let pos = out.iter().position(|x| x == m).expect("filter contains its minimum");
    let first = out.remove(pos);
    out.insert(0, first);
    Ok(out)
}

/// Weak order on a list of matroids.
pub fn weak_poset(matroids: Vec<Matroid>) -> Poset<Matroid> {
    Poset::new(matroids, weak_leq).expect("weak order is a partial order")
}

/// `W_M`, its reducible part `R_M` and the irreducibles of `W_M` other
/// than `M`. `M` is element 0 of both posets.
#[derive(Debug, Clone)]
pub struct FilterTriple {
    pub wfilter: Poset<Matroid>,
    pub rfilter: Poset<Matroid>,
    pub iset: Vec<Matroid>,
}

impl FilterTriple {
    pub fn minimum(&self) -> &Matroid {
        self.wfilter.element(0)
    }
}

pub fn order_filter(m: &Matroid) -> Result<FilterTriple> {
    let all = upper_set(m)?;
    let mut reducible = vec![m.clone()];
    let mut iset = Vec::new();
    for n in all.iter().skip(1) {
        if n.is_irreducible()? {
            iset.push(n.clone());
        } else {
            reducible.push(n.clone());
        }
    }
    Ok(FilterTriple {
        wfilter: weak_poset(all),
        rfilter: weak_poset(reducible),
        iset,
    })
}

/// `φ_U(M) = M|U □ M/U`.
pub fn phi_u(m: &Matroid, u: Mask) -> Result<Matroid> {
    let left = m.restrict(u)?;
    let right = m.contract(u)?;
    Ok(left.free_product(&right)?)
}

/// `φ_U` as a closure map on a weak poset. Panics if the poset is not
/// closed under `φ_U`.
pub fn phi_u_closure(p: &Poset<Matroid>, u: Mask) -> Result<ClosureMap> {
    let map = p
        .elements()
        .iter()
        .map(|m| {
            let image = phi_u(m, u)?;
            Ok(p.index_of(&image).expect("poset closed under phi_U"))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ClosureMap::new(p, map)?)
}

/// All `L` on `S ∪ T` with `L|S = p` and `L/S = q`, found by scanning the
/// rank stratum and testing both minors.
pub fn fiber_interval(p: &Matroid, q: &Matroid) -> Result<Vec<Matroid>> {
    let ground = p.ground().union(q.ground())?;
    check_size(ground.len())?;
    let s = p.ground().mask_in(&ground).expect("subset of union");
    let stratum = enumerate_matroids(&ground, Some(p.rank() + q.rank()))?;
    Ok(stratum
        .into_iter()
        .filter(|l| {
            l.restrict(s).map(|x| &x == p).unwrap_or(false)
                && l.contract(s).map(|x| &x == q).unwrap_or(false)
        })
        .collect())
}

/// `⟨a⟩ ≤ ⟨b⟩`: some relabeling of `a`'s representative is below `b`'s.
pub fn iso_weak_leq(a: &IsoClass, b: &IsoClass) -> Result<bool> {
    if a.size() != b.size() || a.rank() != b.rank() {
        return Err(WeakError::SizeMismatch);
    }
    let (ma, mb) = (a.matroid(), b.matroid());
    if ma.bases().len() > mb.bases().len() {
        return Ok(false);
    }
    let mut found = false;
    for_each_permutation(a.size(), |perm| {
        if !found {
            found = ma
                .bases()
                .iter()
                .all(|&bs| mb.is_basis(bits(bs).fold(0, |acc, i| acc | 1 << perm[i])));
        }
    });
    Ok(found)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> GroundSet {
        GroundSet::new(s.chars().map(|c| c.to_string())).unwrap()
    }

    fn u(r: usize, s: &str) -> Matroid {
        Matroid::uniform(r, g(s)).unwrap()
    }

    fn i(a: &str) -> Matroid {
        Matroid::isthmus(a).unwrap()
    }

    fn z(a: &str) -> Matroid {
        Matroid::loop_on(a).unwrap()
    }

    fn fp(ms: &[Matroid]) -> Matroid {
        ms[1..]
            .iter()
            .fold(ms[0].clone(), |acc, m| acc.free_product(m).unwrap())
    }

    fn d() -> Matroid {
        u(1, "ab").direct_sum(&u(1, "cd")).unwrap()
    }

    /// Brute force: every nonempty family of r-subsets that passes the
    /// basis axioms.
    fn brute_count(n: usize, r: usize) -> usize {
        let cands = subsets_of_size(n, r);
        let ground = GroundSet::standard(n);
        (1u64..1 << cands.len())
            .filter(|fam| {
                let bases: Vec<Mask> = (0..cands.len())
                    .filter(|k| fam >> k & 1 == 1)
                    .map(|k| cands[k])
                    .collect();
                Matroid::build(ground.clone(), bases).is_ok()
            })
            .count()
    }

    #[test]
    fn enumeration_small_cases() {
        let one = enumerate_matroids(&g("a"), None).unwrap();
        assert_eq!(one, vec![z("a"), i("a")]);
        let two = enumerate_matroids(&g("ab"), Some(1)).unwrap();
        assert_eq!(two.len(), 3);
        assert!(two.contains(&u(1, "ab")));
        assert!(two.contains(&z("a").direct_sum(&i("b")).unwrap()));
        assert!(two.contains(&i("a").direct_sum(&z("b")).unwrap()));
        assert!(matches!(
            enumerate_matroids(&GroundSet::standard(7), None),
            Err(WeakError::GroundTooLarge { .. })
        ));
    }

    #[test]
    fn enumeration_matches_brute_force() {
        // Counts fixed from the brute-force oracle above.
        let golden: &[(usize, &[usize])] = &[
            (3, &[1, 7, 7, 1]),
            (4, &[1, 15, 36, 15, 1]),
            (5, &[1, 31, 171, 171, 31, 1]),
        ];
        for &(n, counts) in golden {
            for (r, &c) in counts.iter().enumerate() {
                assert_eq!(brute_count(n, r), c, "oracle n={n} r={r}");
                let got = enumerate_matroids(&GroundSet::standard(n), Some(r)).unwrap();
                assert_eq!(got.len(), c, "n={n} r={r}");
            }
        }
    }

    #[test]
    fn enumeration_is_sorted_and_distinct() {
        let all = enumerate_matroids(&g("abcd"), Some(2)).unwrap();
        assert!(all.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn filter_of_d() {
        let f = order_filter(&d()).unwrap();
        let p1 = fp(&[i("a"), z("b"), i("c"), z("d")]);
        let p2 = fp(&[i("c"), z("d"), i("a"), z("b")]);
        let q = u(2, "abcd");
        let w = &f.wfilter;
        assert_eq!(w.len(), 4);
        assert_eq!(w.element(0), &d());
        let (ip1, ip2, iq) = (
            w.index_of(&p1).unwrap(),
            w.index_of(&p2).unwrap(),
            w.index_of(&q).unwrap(),
        );
        assert!(w.lt(0, ip1) && w.lt(0, ip2) && w.lt(ip1, iq) && w.lt(ip2, iq));
        assert!(!w.leq(ip1, ip2) && !w.leq(ip2, ip1));
        assert_eq!(f.rfilter.len(), 4);
        assert!(f.iset.is_empty());
    }

    #[test]
    fn filter_of_uniform_is_singleton() {
        let f = order_filter(&u(2, "abcd")).unwrap();
        assert_eq!(f.wfilter.len(), 1);
    }

    #[test]
    fn phi_u_examples() {
        let ab = d().ground().mask_of(&["a", "b"]).unwrap();
        assert_eq!(phi_u(&d(), ab).unwrap(), fp(&[i("a"), z("b"), i("c"), z("d")]));
        assert_eq!(phi_u(&d(), 0).unwrap(), d());
        assert_eq!(phi_u(&d(), 0b1111).unwrap(), d());
        assert!(phi_u(&d(), 0b10000).is_err());
    }

    #[test]
    fn fiber_examples() {
        assert_eq!(fiber_interval(&i("a"), &i("b")).unwrap(), vec![u(2, "ab")]);
        let f = fiber_interval(&i("a"), &z("b")).unwrap();
        assert_eq!(f.len(), 2);
        assert!(f.contains(&i("a").direct_sum(&z("b")).unwrap()));
        assert!(f.contains(&u(1, "ab")));
        assert_eq!(
            fiber_interval(&Matroid::empty(), &Matroid::empty()).unwrap(),
            vec![Matroid::empty()]
        );
        assert!(fiber_interval(&i("a"), &z("a")).is_err());
    }

    #[test]
    fn iso_order_examples() {
        let p1 = fp(&[i("a"), z("b"), i("c"), z("d")]);
        let (cd, cp, cq) = (
            d().canonicalize(),
            p1.canonicalize(),
            u(2, "abcd").canonicalize(),
        );
        assert!(iso_weak_leq(&cd, &cp).unwrap());
        assert!(iso_weak_leq(&cp, &cq).unwrap());
        assert!(iso_weak_leq(&cq, &cq).unwrap());
        let iz = i("a").direct_sum(&z("b")).unwrap().canonicalize();
        let u12 = u(1, "ab").canonicalize();
        assert!(iso_weak_leq(&iz, &u12).unwrap());
        assert!(!iso_weak_leq(&u12, &iz).unwrap());
        assert_eq!(
            iso_weak_leq(&iz, &cq).unwrap_err(),
            WeakError::SizeMismatch
        );
    }
}
