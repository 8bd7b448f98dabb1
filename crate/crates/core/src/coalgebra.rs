//! The matroid-minor coalgebra on labeled matroids.
//!
//! The coproduct is `δ(M) = Σ_{A⊆S} M|A ⊗ M/A` and the counit picks out
//! the empty matroid. Its graded dual algebra multiplies two matroids on
//! disjoint ground sets into the sum of the weak-order interval between
//! their direct sum and their free product.

use num_traits::{One, Zero};
use thiserror::Error;

use crate::linalg::RationalMatrix;
use crate::lincomb::{rat, LinComb, Rational};
use crate::matroid::{subsets_of_size, GroundSet, Matroid, MatroidError};
use crate::poset::PosetError;
use crate::weak::{enumerate_matroids, order_filter, weak_interval, WeakError, MAX_ENUM};

pub type FormalSum = LinComb<Matroid>;
pub type TensorSum = LinComb<(Matroid, Matroid)>;

/// Exhaustive linear algebra over a whole grade stays at this size.
pub const MAX_GRADE: usize = 4;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoalgebraError {
    #[error("element has nonzero counit {0}")]
    NonzeroCounit(Rational),
    #[error("ground set of size {size} exceeds the limit of {max}")]
    GroundTooLarge { size: usize, max: usize },
    #[error(transparent)]
    Weak(#[from] WeakError),
    #[error(transparent)]
    Matroid(#[from] MatroidError),
    #[error(transparent)]
    Poset(#[from] PosetError),
}

type Result<T> = std::result::Result<T, CoalgebraError>;

fn check_size(n: usize, max: usize) -> Result<()> {
    if n > max {
        Err(CoalgebraError::GroundTooLarge { size: n, max })
    } else {
        Ok(())
    }
}

pub fn counit(x: &FormalSum) -> Rational {
    x.coef(&Matroid::empty())
}

pub fn coproduct(m: &Matroid) -> TensorSum {
    let full = m.ground().full();
    (0..=full)
        .filter(|a| a & !full == 0)
        .map(|a| {
            (
                (m.minor_unchecked(0, a), m.minor_unchecked(a, full)),
                Rational::one(),
            )
        })
        .collect()
}

pub fn coproduct_sum(x: &FormalSum) -> TensorSum {
    x.map_linear(coproduct)
}

/// `δ̄(x) = δ(x) - 1⊗x - x⊗1` for `x` with zero counit.
pub fn reduced_coproduct(x: &FormalSum) -> Result<TensorSum> {
    let c = counit(x);
    if !c.is_zero() {
        return Err(CoalgebraError::NonzeroCounit(c));
    }
    Ok(x.map_linear(|m| {
        let full = m.ground().full();
        (1..full)
            .map(|a| {
                (
                    (m.minor_unchecked(0, a), m.minor_unchecked(a, full)),
                    Rational::one(),
                )
            })
            .collect()
    }))
}

/// Product in the dual algebra: the sum over the interval
/// `[p ⊕ q, p □ q]`, or zero if the ground sets meet.
pub fn dual_product(p: &Matroid, q: &Matroid) -> Result<FormalSum> {
    let (Ok(lo), Ok(hi)) = (p.direct_sum(q), p.free_product(q)) else {
        return Ok(FormalSum::zero());
    };
    check_size(lo.size(), MAX_ENUM)?;
    Ok(weak_interval(&lo, &hi)?
        .into_iter()
        .map(|l| (l, Rational::one()))
        .collect())
}

/// Bilinear extension of [`dual_product`].
pub fn dual_product_sums(x: &FormalSum, y: &FormalSum) -> Result<FormalSum> {
    let mut out = FormalSum::zero();
    for (p, a) in x.iter() {
        for (q, b) in y.iter() {
            out += dual_product(p, q)?.scale(&(a * b));
        }
    }
    Ok(out)
}

/// `M_1 · M_2 ··· M_k` in the dual algebra, multiplied left to right.
pub fn dual_product_many(ms: &[Matroid]) -> Result<FormalSum> {
    let mut acc = FormalSum::basis(Matroid::empty());
    for m in ms {
        acc = dual_product_sums(&acc, &FormalSum::basis(m.clone()))?;
    }
    Ok(acc)
}

/// `⟨x, y⟩` with matroids orthonormal.
pub fn pairing(x: &FormalSum, y: &FormalSum) -> Rational {
    x.iter().map(|(k, a)| a * y.coef(k)).sum()
}

pub fn pairing_tensor(x: &TensorSum, y: &TensorSum) -> Rational {
    x.iter().map(|(k, a)| a * y.coef(k)).sum()
}

/// Terms of `x` on the ground set `s`.
pub fn project_grade(x: &FormalSum, s: &GroundSet) -> FormalSum {
    x.filter(|m| m.ground() == s)
}

/// Ground sets occurring in `x`.
pub fn grades(x: &FormalSum) -> Vec<GroundSet> {
    let mut gs: Vec<GroundSet> = x.keys().map(|m| m.ground().clone()).collect();
    gs.dedup();
    gs
}

/// Decided through the reduced coproduct.
pub fn is_primitive(x: &FormalSum) -> bool {
    counit(x).is_zero() && reduced_coproduct(x).is_ok_and(|d| d.is_zero())
}

/// Which left factors the orthogonality test ranges over.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LeftFactors {
    All,
    Irreducible,
}

/// Primitivity via orthogonality to the products `P·Q` of nonempty
/// matroids on complementary parts of each grade of `x`.
pub fn is_primitive_perp(x: &FormalSum, left: LeftFactors) -> Result<bool> {
    if !counit(x).is_zero() {
        return Ok(false);
    }
    for s in grades(x) {
        let xs = project_grade(x, &s);
        for row in product_generators(&s, left)? {
            if !pairing(&row, &xs).is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// All products `P·Q` with `P(U)`, `Q(V)` nonempty and `U + V = s`.
pub fn product_generators(s: &GroundSet, left: LeftFactors) -> Result<Vec<FormalSum>> {
    let n = s.len();
    check_size(n, MAX_ENUM)?;
    let mut out = Vec::new();
    for k in 1..n {
        for u in subsets_of_size(n, k) {
            let (gu, gv) = (s.subset(u), s.subset(s.full() & !u));
            let rights = enumerate_matroids(&gv, None)?;
            for p in enumerate_matroids(&gu, None)? {
                if left == LeftFactors::Irreducible && !p.is_irreducible()? {
                    continue;
                }
                for q in &rights {
                    out.push(dual_product(&p, q)?);
                }
            }
        }
    }
    Ok(out)
}

/// Coefficient matrix of `sums` against the basis `columns`.
pub fn coefficient_matrix(sums: &[FormalSum], columns: &[Matroid]) -> RationalMatrix {
    RationalMatrix::from_rows(
        sums.iter()
            .map(|x| columns.iter().map(|m| x.coef(m)).collect())
            .collect(),
    )
}

/// Dimension of the span of the products on grade `s`.
pub fn product_span_rank(s: &GroundSet, left: LeftFactors) -> Result<usize> {
    check_size(s.len(), MAX_GRADE)?;
    let columns = enumerate_matroids(s, None)?;
    let rows = product_generators(s, left)?;
    if rows.is_empty() {
        return Ok(0);
    }
    Ok(coefficient_matrix(&rows, &columns).rank())
}

/// Dimension of the primitive space of grade `s`: the orthogonal
/// complement of the products in `C_S`.
pub fn primitive_dimension(s: &GroundSet) -> Result<usize> {
    check_size(s.len(), MAX_GRADE)?;
    if s.is_empty() {
        return Ok(0);
    }
    let total = enumerate_matroids(s, None)?.len();
    Ok(total - product_span_rank(s, LeftFactors::All)?)
}

/// `w_M = Σ_{N ≥ M} μ_W(M, N) N`.
pub fn w_basis(m: &Matroid) -> Result<FormalSum> {
    let f = order_filter(m)?;
    let w = &f.wfilter;
    Ok((0..w.len())
        .map(|j| (w.element(j).clone(), rat(w.mobius(0, j).expect("filter minimum"))))
        .collect())
}

/// `r_M = Σ_{N ∈ R_M} μ_R(M, N) N`.
pub fn r_basis(m: &Matroid) -> Result<FormalSum> {
    let f = order_filter(m)?;
    let r = &f.rfilter;
    Ok((0..r.len())
        .map(|j| (r.element(j).clone(), rat(r.mobius(0, j).expect("filter minimum"))))
        .collect())
}

/// `w_M` rebuilt from the `r` basis: `Σ_{N ∈ I_M} μ_W(M, N) r_N`, where
/// `I_M` is `M` together with the irreducibles above it.
pub fn w_via_r(m: &Matroid) -> Result<FormalSum> {
    let f = order_filter(m)?;
    let w = &f.wfilter;
    let mut out = r_basis(m)?;
    for n in &f.iset {
        let j = w.index_of(n).expect("irreducible lies in the filter");
        out += r_basis(n)?.scale(&rat(w.mobius(0, j)?));
    }
    Ok(out)
}

/// `r_M` rebuilt from the `w` basis:
/// `w_M - Σ_{N ∈ I_M \ M} μ_R(M, N) w_N`, with `μ_R(M, N)` taken in
/// `R_M ∪ {N}`.
pub fn r_via_w(m: &Matroid) -> Result<FormalSum> {
    let f = order_filter(m)?;
    let w = &f.wfilter;
    let mut out = w_basis(m)?;
    for n in &f.iset {
        let j = w.index_of(n).expect("irreducible lies in the filter");
        let in_r = |k: usize| f.rfilter.index_of(w.element(k)).is_some();
        let mu = w.mobius_relative(in_r, 0, j)?;
        out += w_basis(n)?.scale(&rat(-mu));
    }
    Ok(out)
}

/// Matroids on `s` that are irreducible.
pub fn irreducibles(s: &GroundSet) -> Result<Vec<Matroid>> {
    let mut out = Vec::new();
    for m in enumerate_matroids(s, None)? {
        if !m.is_empty() && m.is_irreducible()? {
            out.push(m);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weak::weak_leq;

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

    fn d() -> Matroid {
        u(1, "ab").direct_sum(&u(1, "cd")).unwrap()
    }

    fn one() -> Matroid {
        Matroid::empty()
    }

    fn t(a: Matroid, b: Matroid) -> TensorSum {
        TensorSum::basis((a, b))
    }

    #[test]
    fn coproduct_examples() {
        assert_eq!(coproduct(&i("a")), t(one(), i("a")) + t(i("a"), one()));
        let m = u(1, "ab");
        let expected = t(one(), m.clone()) + t(i("a"), z("b")) + t(i("b"), z("a")) + t(m.clone(), one());
        assert_eq!(coproduct(&m), expected);
    }

    #[test]
    fn reduced_coproduct_examples() {
        assert!(reduced_coproduct(&FormalSum::basis(i("a"))).unwrap().is_zero());
        let r = reduced_coproduct(&FormalSum::basis(u(1, "ab"))).unwrap();
        assert_eq!(r, t(i("a"), z("b")) + t(i("b"), z("a")));
        assert!(matches!(
            reduced_coproduct(&FormalSum::basis(one())),
            Err(CoalgebraError::NonzeroCounit(_))
        ));
    }

    #[test]
    fn dual_product_examples() {
        let p = dual_product(&i("a"), &z("b")).unwrap();
        let expected = FormalSum::basis(i("a").direct_sum(&z("b")).unwrap()) + FormalSum::basis(u(1, "ab"));
        assert_eq!(p, expected);
        assert!(dual_product(&i("a"), &i("a")).unwrap().is_zero());
        let prod = dual_product_many(&[z("a"), z("b"), i("c"), i("d")]).unwrap();
        let sum = [z("b"), i("c"), i("d")]
            .iter()
            .fold(z("a"), |acc, m| acc.direct_sum(m).unwrap());
        assert_eq!(prod, FormalSum::basis(sum));
    }

    #[test]
    fn primitive_examples() {
        assert!(is_primitive(&FormalSum::basis(i("a"))));
        assert!(!is_primitive(&FormalSum::basis(u(1, "ab"))));
        assert!(!is_primitive(&FormalSum::basis(one())));
        let w = w_basis(&d()).unwrap();
        assert!(is_primitive(&w));
        assert!(is_primitive_perp(&w, LeftFactors::All).unwrap());
        assert!(is_primitive_perp(&w, LeftFactors::Irreducible).unwrap());
        assert!(!is_primitive_perp(&FormalSum::basis(u(1, "ab")), LeftFactors::All).unwrap());
    }

    #[test]
    fn w_basis_examples() {
        assert_eq!(w_basis(&i("a")).unwrap(), FormalSum::basis(i("a")));
        let w = w_basis(&d()).unwrap();
        assert_eq!(w.len(), 4);
        // Möbius inversion: M = Σ_{N ≥ M} w_N
        let f = order_filter(&d()).unwrap();
        let mut total = FormalSum::zero();
        for n in f.wfilter.elements() {
            total += w_basis(n).unwrap();
        }
        assert_eq!(total, FormalSum::basis(d()));
    }

    #[test]
    fn r_basis_examples() {
        assert_eq!(r_basis(&d()).unwrap(), w_basis(&d()).unwrap());
        assert_eq!(r_basis(&u(1, "ab")).unwrap(), FormalSum::basis(u(1, "ab")));
        assert_eq!(w_via_r(&d()).unwrap(), w_basis(&d()).unwrap());
        assert_eq!(r_via_w(&d()).unwrap(), r_basis(&d()).unwrap());
    }

    #[test]
    fn primitive_dimension_small() {
        assert_eq!(primitive_dimension(&g("a")).unwrap(), 2);
        assert_eq!(primitive_dimension(&g("ab")).unwrap(), 0);
        assert_eq!(primitive_dimension(&g("abc")).unwrap(), 0);
        assert!(matches!(
            primitive_dimension(&g("abcde")),
            Err(CoalgebraError::GroundTooLarge { .. })
        ));
    }

    #[test]
    fn product_terms_lie_in_interval() {
        let (p, q) = (u(1, "ab"), u(1, "cd"));
        let lo = p.direct_sum(&q).unwrap();
        let hi = p.free_product(&q).unwrap();
        for (l, _) in dual_product(&p, &q).unwrap().iter() {
            assert!(weak_leq(&lo, l) && weak_leq(l, &hi));
        }
    }
}
