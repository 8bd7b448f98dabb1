//! Verification suite: exact checks of the library's identities on small
//! matroids.

use std::time::Instant;

use matroid_minor::coalgebra::{
    coproduct, counit, irreducibles, is_primitive, primitive_dimension, product_span_rank,
    r_basis, w_basis, FormalSum, LeftFactors,
};
use matroid_minor::hopf::{
    h_coproduct, h_product, h_tensor_product, iso_classes, iso_sum_from_ints, p_basis,
    phi_matrix, project_iso, solve_leading_primitive, verify_phi_coalgebra_map, word_of,
};
use matroid_minor::linalg::RationalMatrix;
use matroid_minor::poset::Poset;
use matroid_minor::weak::{
    enumerate_matroids, fiber_interval, order_filter, phi_u_closure, weak_interval, weak_poset,
};
use matroid_minor::{ratio, GroundSet, LinComb, Matroid, Rational};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

pub const SUITES: &[&str] = &["golden", "coalgebra", "order", "hopf", "factor", "all"];

#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub suite: &'static str,
    pub name: &'static str,
    pub passed: bool,
    pub cases: usize,
    pub detail: String,
    pub millis: u128,
}

struct Runner {
    max_size: usize,
    results: Vec<CheckResult>,
}

/// Outcome of one check: number of cases and the first failure, if any.
type Outcome = (usize, Option<String>);

impl Runner {
    fn run(&mut self, suite: &'static str, name: &'static str, f: impl FnOnce(usize) -> Outcome) {
        let start = Instant::now();
        let (cases, failure) = f(self.max_size);
        self.results.push(CheckResult {
            suite,
            name,
            passed: failure.is_none(),
            cases,
            detail: failure.unwrap_or_default(),
            millis: start.elapsed().as_millis(),
        });
    }
}

/// Runs the named suite (or `all`) on matroids of at most `max_size`
/// elements. `None` for an unknown suite name.
pub fn run_suite(suite: &str, max_size: usize) -> Option<Vec<CheckResult>> {
    if !SUITES.contains(&suite) {
        return None;
    }
    let mut r = Runner {
        max_size,
        results: Vec::new(),
    };
    let want = |s: &str| suite == "all" || suite == s;
    if want("golden") {
        r.run("golden", "w_D = r_D = D - P1 - P2 + Q", golden_d);
        r.run("golden", "phi matrix of U(2,3)+U(1,2)", golden_phi);
    }
    if want("coalgebra") {
        r.run("coalgebra", "counit and coassociativity", coassociativity);
        r.run("coalgebra", "dim of primitives = #irreducibles", primitive_dimensions);
        r.run("coalgebra", "products with irreducible left factor span", span_equality);
        r.run("coalgebra", "w_M and r_M primitive for irreducible M", w_r_primitive);
    }
    if want("order") {
        r.run("order", "free product duality", duality);
        r.run("order", "free product rank formula", rank_formula);
        r.run("order", "fiber = weak interval", fibers);
        r.run("order", "Rota closure identity for phi_U", rota);
        r.run("order", "mobius = Hall chain count", mobius_hall);
        r.run("order", "split identity over reducibles", split);
    }
    if want("hopf") {
        r.run("hopf", "pi(r_M) = p_M for irreducible M", projected_r);
        r.run("hopf", "leading primitive is unique", leading_primitive);
        r.run("hopf", "phi is a coalgebra map", phi_coalgebra_map);
        r.run("hopf", "H coproduct is multiplicative", hopf_compatibility);
    }
    if want("factor") {
        r.run("factor", "factor classes invariant under relabeling", factor_relabeling);
    }
    Some(r.results)
}

fn fail(msg: impl Into<String>) -> Option<String> {
    Some(msg.into())
}

fn labels(prefix: &str, n: usize) -> GroundSet {
    GroundSet::new((0..n).map(|i| format!("{prefix}{i}"))).expect("distinct labels")
}

fn lettered(s: &str) -> GroundSet {
    GroundSet::new(s.chars().map(|c| c.to_string())).expect("distinct labels")
}

fn uniform(r: usize, s: &str) -> Matroid {
    Matroid::uniform(r, lettered(s)).expect("valid uniform matroid")
}

fn chain(parts: &[Matroid]) -> Matroid {
    parts
        .iter()
        .fold(Matroid::empty(), |acc, m| acc.free_product(m).expect("disjoint"))
}

fn d_matroid() -> Matroid {
    uniform(1, "ab").direct_sum(&uniform(1, "cd")).expect("disjoint")
}

fn iz(i: &str, z: &str) -> Vec<Matroid> {
    vec![
        Matroid::isthmus(i).expect("label"),
        Matroid::loop_on(z).expect("label"),
    ]
}

fn golden_d(n: usize) -> Outcome {
    if n < 4 {
        return (0, None);
    }
    let d = d_matroid();
    let p1 = chain(&[iz("a", "b"), iz("c", "d")].concat());
    let p2 = chain(&[iz("c", "d"), iz("a", "b")].concat());
    let q = uniform(2, "abcd");
    let expected = FormalSum::basis(d.clone()) - FormalSum::basis(p1) - FormalSum::basis(p2)
        + FormalSum::basis(q);
    let (w, r) = (w_basis(&d).expect("small"), r_basis(&d).expect("small"));
    if w != expected {
        return (1, fail(format!("w_D = {w}")));
    }
    if r != expected {
        return (1, fail(format!("r_D = {r}")));
    }
    if !is_primitive(&w) {
        return (1, fail("w_D is not primitive"));
    }
    (1, None)
}

fn golden_phi(n: usize) -> Outcome {
    if n < 5 {
        return (0, None);
    }
    let m = uniform(2, "abc").direct_sum(&uniform(1, "de")).expect("disjoint");
    let pm = phi_matrix(&m).expect("small");
    let ints = |rows: &[[i64; 5]]| -> Vec<Vec<Rational>> {
        rows.iter().map(|r| r.iter().map(|&x| ratio(x, 1)).collect()).collect()
    };
    let phi = ints(&[
        [1, 12, 3, 36, 72],
        [0, 12, 0, 24, 84],
        [0, 0, 1, 24, 96],
        [0, 0, 0, 12, 108],
        [0, 0, 0, 0, 120],
    ]);
    let phi_inv: Vec<Vec<Rational>> = vec![
        vec![ratio(1, 1), ratio(-1, 1), ratio(-3, 1), ratio(5, 1), ratio(-2, 1)],
        vec![ratio(0, 1), ratio(1, 12), ratio(0, 1), ratio(-1, 6), ratio(11, 120)],
        vec![ratio(0, 1), ratio(0, 1), ratio(1, 1), ratio(-2, 1), ratio(1, 1)],
        vec![ratio(0, 1), ratio(0, 1), ratio(0, 1), ratio(1, 12), ratio(-3, 40)],
        vec![ratio(0, 1), ratio(0, 1), ratio(0, 1), ratio(0, 1), ratio(1, 120)],
    ];
    // Reference classes by their factor words.
    let word_names = ["", "I·Z·I·I·Z", "I·D", "I·I·Z·I·Z", "I·I·I·Z·Z"];
    if pm.classes.len() != 5 {
        return (1, fail(format!("{} classes", pm.classes.len())));
    }
    let mut perm = [0usize; 5];
    for (i, c) in pm.classes.iter().enumerate().skip(1) {
        let w = word_of(c).to_string();
        match word_names.iter().position(|&x| x == w) {
            Some(j) => perm[i] = j,
            None => return (1, fail(format!("unexpected class {w}"))),
        }
    }
    let permute = |rows: &[Vec<Rational>]| -> RationalMatrix {
        RationalMatrix::from_rows(
            (0..5)
                .map(|i| (0..5).map(|j| rows[perm[i]][perm[j]].clone()).collect())
                .collect(),
        )
    };
    if pm.phi != permute(&phi) {
        return (1, fail(format!("phi = {:?}", pm.phi)));
    }
    if pm.phi_inv != permute(&phi_inv) {
        return (1, fail(format!("phi_inv = {:?}", pm.phi_inv)));
    }
    let coefs = [1, -1, -3, 5, -2];
    let row: Vec<i64> = perm.iter().map(|&j| coefs[j]).collect();
    let expected = iso_sum_from_ints(&pm.classes, &row);
    let p = p_basis(&m).expect("small");
    if p != expected {
        return (1, fail(format!("p_M = {p}")));
    }
    (1, None)
}

type Triple = LinComb<(Matroid, Matroid, Matroid)>;

fn coassociativity(n: usize) -> Outcome {
    let mut cases = 0;
    for k in 0..=n.min(4) {
        for m in enumerate_matroids(&labels("s", k), None).expect("small") {
            cases += 1;
            let d = coproduct(&m);
            let mut left = Triple::zero();
            let mut right = Triple::zero();
            for ((a, b), c) in d.iter() {
                for ((x, y), e) in coproduct(a).iter() {
                    left.add_term((x.clone(), y.clone(), b.clone()), c * e);
                }
                for ((x, y), e) in coproduct(b).iter() {
                    right.add_term((a.clone(), x.clone(), y.clone()), c * e);
                }
            }
            if left != right {
                return (cases, fail(format!("coassociativity fails at {m}")));
            }
            let mut lc = FormalSum::zero();
            let mut rc = FormalSum::zero();
            for ((a, b), c) in d.iter() {
                lc += FormalSum::term(b.clone(), counit(&FormalSum::basis(a.clone())) * c);
                rc += FormalSum::term(a.clone(), counit(&FormalSum::basis(b.clone())) * c);
            }
            if lc != FormalSum::basis(m.clone()) || rc != FormalSum::basis(m.clone()) {
                return (cases, fail(format!("counit fails at {m}")));
            }
        }
    }
    (cases, None)
}

fn primitive_dimensions(n: usize) -> Outcome {
    let expected = [0, 2, 0, 0, 3];
    let mut cases = 0;
    for (k, &want) in expected.iter().enumerate().take(n.min(4) + 1).skip(1) {
        cases += 1;
        let s = labels("s", k);
        let dim = primitive_dimension(&s).expect("small");
        let irr = irreducibles(&s).expect("small").len();
        if dim != irr || dim != want {
            return (cases, fail(format!("|S| = {k}: dim {dim}, irreducibles {irr}")));
        }
    }
    (cases, None)
}

fn span_equality(n: usize) -> Outcome {
    let mut cases = 0;
    for k in 2..=n.min(4) {
        cases += 1;
        let s = labels("s", k);
        let all = product_span_rank(&s, LeftFactors::All).expect("small");
        let irr = product_span_rank(&s, LeftFactors::Irreducible).expect("small");
        if all != irr {
            return (cases, fail(format!("|S| = {k}: ranks {all} vs {irr}")));
        }
    }
    (cases, None)
}

fn w_r_primitive(n: usize) -> Outcome {
    let mut cases = 0;
    for k in 1..=n.min(5) {
        for m in irreducibles(&labels("s", k)).expect("small") {
            cases += 1;
            let (w, r) = (w_basis(&m).expect("small"), r_basis(&m).expect("small"));
            if !is_primitive(&w) || !is_primitive(&r) {
                return (cases, fail(format!("not primitive at {m}")));
            }
        }
    }
    (cases, None)
}

fn all_matroids(n: usize) -> Vec<Vec<Matroid>> {
    (0..=n)
        .map(|k| enumerate_matroids(&labels("s", k), None).expect("small"))
        .collect()
}

fn relabeled(m: &Matroid, prefix: &str) -> Matroid {
    let names: Vec<String> = (0..m.size()).map(|i| format!("{prefix}{i}")).collect();
    m.relabel(&names).expect("distinct labels")
}

fn duality(n: usize) -> Outcome {
    let n = n.min(6);
    let pool = all_matroids(n);
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for case in 0..100 {
        let total = rng.gen_range(0..=n);
        let k = rng.gen_range(0..=total);
        let p = relabeled(pool[k].choose(&mut rng).expect("nonempty"), "p");
        let q = relabeled(pool[total - k].choose(&mut rng).expect("nonempty"), "q");
        let lhs = p.free_product(&q).expect("disjoint").dual();
        let rhs = q.dual().free_product(&p.dual()).expect("disjoint");
        if lhs != rhs {
            return (case + 1, fail(format!("P = {p}, Q = {q}")));
        }
    }
    (100, None)
}

/// Pairs `(P, Q)` on `{p..}`, `{q..}` with at most `n` elements in total.
fn pairs(n: usize) -> Vec<(Matroid, Matroid)> {
    let pool = all_matroids(n);
    let mut out = Vec::new();
    for total in 0..=n {
        for k in 0..=total {
            for p in &pool[k] {
                for q in &pool[total - k] {
                    out.push((relabeled(p, "p"), relabeled(q, "q")));
                }
            }
        }
    }
    out
}

fn rank_formula(n: usize) -> Outcome {
    let list = pairs(n.min(5));
    for (p, q) in &list {
        let m = p.free_product(q).expect("disjoint");
        let s = p.ground().mask_in(m.ground()).expect("subset");
        let t = m.ground().full() & !s;
        let sp = p.ground().positions_in(m.ground()).expect("subset");
        let tp = q.ground().positions_in(m.ground()).expect("subset");
        for a in 0..=m.ground().full() {
            let (a_s, a_t) = (a & s, a & t);
            let pa = p.rank_of(matroid_minor::matroid::pull_back(a_s, &sp)).expect("in range");
            let qa = q.rank_of(matroid_minor::matroid::pull_back(a_t, &tp)).expect("in range");
            let expected = (pa + a_t.count_ones() as usize).min(p.rank() + qa);
            if m.rank_of(a).expect("in range") != expected {
                return (list.len(), fail(format!("P = {p}, Q = {q}, A = {}", m.ground().format_subset(a))));
            }
        }
    }
    (list.len(), None)
}

fn fibers(n: usize) -> Outcome {
    let list = pairs(n.min(5));
    for (p, q) in &list {
        let lo = p.direct_sum(q).expect("disjoint");
        let hi = p.free_product(q).expect("disjoint");
        let fiber = fiber_interval(p, q).expect("small");
        let interval = weak_interval(&lo, &hi).expect("comparable");
        if fiber != interval {
            return (list.len(), fail(format!("P = {p}, Q = {q}")));
        }
    }
    (list.len(), None)
}

fn rota(n: usize) -> Outcome {
    let k = n.min(4);
    let g = labels("s", k);
    let mut cases = 0;
    for r in 0..=k {
        let p = weak_poset(enumerate_matroids(&g, Some(r)).expect("small"));
        for u in 0..=g.full() {
            let phi = match phi_u_closure(&p, u) {
                Ok(phi) => phi,
                Err(e) => return (cases, fail(format!("phi_U not a closure: {e}"))),
            };
            for a in 0..p.len() {
                for b in 0..p.len() {
                    cases += 1;
                    if !p.check_rota(&phi, a, b).pass {
                        return (cases, fail(format!("rank {r}, U = {}, ({a}, {b})", g.format_subset(u))));
                    }
                }
            }
        }
    }
    (cases, None)
}

fn filter_posets(n: usize) -> Vec<(Poset<Matroid>, Vec<bool>)> {
    let mut ms = Vec::new();
    if n >= 4 {
        ms.push(d_matroid());
    }
    if n >= 5 {
        ms.push(uniform(2, "abc").direct_sum(&uniform(1, "de")).expect("disjoint"));
    }
    ms.iter()
        .map(|m| {
            let f = order_filter(m).expect("small");
            let reducible = f
                .wfilter
                .elements()
                .iter()
                .map(|x| !x.is_irreducible().expect("nonempty"))
                .collect();
            (f.wfilter, reducible)
        })
        .collect()
}

fn mobius_hall(n: usize) -> Outcome {
    let mut cases = 0;
    for (p, _) in filter_posets(n) {
        for x in 0..p.len() {
            for z in p.up_set(x).collect::<Vec<_>>() {
                cases += 1;
                if p.mobius(x, z) != p.mobius_hall(x, z) {
                    return (cases, fail(format!("interval ({x}, {z})")));
                }
            }
        }
    }
    (cases, None)
}

fn split(n: usize) -> Outcome {
    let mut cases = 0;
    for (p, reducible) in filter_posets(n) {
        for x in 0..p.len() {
            for z in p.up_set(x).filter(|&z| z != x).collect::<Vec<_>>() {
                cases += 1;
                match p.check_split(|y| reducible[y], x, z) {
                    Ok(v) if v.pass => {}
                    other => return (cases, fail(format!("interval ({x}, {z}): {other:?}"))),
                }
            }
        }
    }
    (cases, None)
}

fn irreducible_list(n: usize) -> Vec<Matroid> {
    (1..=n)
        .flat_map(|k| irreducibles(&labels("s", k)).expect("small"))
        .collect()
}

fn projected_r(n: usize) -> Outcome {
    let list = irreducible_list(n.min(5));
    for m in &list {
        let lhs = project_iso(&r_basis(m).expect("small"));
        let rhs = p_basis(m).expect("small");
        if lhs != rhs {
            return (list.len(), fail(format!("M = {m}")));
        }
    }
    (list.len(), None)
}

fn leading_primitive(n: usize) -> Outcome {
    let mut cases = 0;
    for k in 1..=n.min(5) {
        for c in iso_classes(k, None).expect("small") {
            if !c.matroid().is_irreducible().expect("nonempty") {
                continue;
            }
            cases += 1;
            let p = p_basis(c.matroid()).expect("small");
            if solve_leading_primitive(c.matroid()).expect("small") != Some(p) {
                return (cases, fail(format!("M = {c}")));
            }
        }
    }
    (cases, None)
}

fn phi_coalgebra_map(n: usize) -> Outcome {
    let mut cases = 0;
    for k in 0..=n.min(5) {
        for c in iso_classes(k, None).expect("small") {
            cases += 1;
            if !verify_phi_coalgebra_map(c.matroid()).expect("small").pass {
                return (cases, fail(format!("M = {c}")));
            }
        }
    }
    (cases, None)
}

fn hopf_compatibility(n: usize) -> Outcome {
    let n = n.min(5);
    let classes: Vec<Vec<_>> = (0..=n).map(|k| iso_classes(k, None).expect("small")).collect();
    let mut cases = 0;
    for total in 0..=n {
        for k in 0..=total {
            for a in &classes[k] {
                for b in &classes[total - k] {
                    cases += 1;
                    let lhs = h_coproduct(&h_product(a, b));
                    let rhs = h_tensor_product(&h_coproduct(a), &h_coproduct(b));
                    if lhs != rhs {
                        return (cases, fail(format!("{a} · {b}")));
                    }
                }
            }
        }
    }
    (cases, None)
}

fn factor_relabeling(n: usize) -> Outcome {
    let n = n.min(6);
    let pool: Vec<Matroid> = all_matroids(n).into_iter().skip(1).flatten().collect();
    let mut rng = ChaCha8Rng::seed_from_u64(0xfac7);
    let mut cases = 0;
    for _ in 0..20 {
        let m = pool.choose(&mut rng).expect("nonempty");
        let factors = m.factor().expect("nonempty");
        if &chain(&factors) != m {
            return (cases, fail(format!("factors of {m} do not recompose")));
        }
        let classes: Vec<_> = factors.iter().map(Matroid::canonicalize).collect();
        for _ in 0..50 {
            cases += 1;
            let mut names: Vec<String> = (0..m.size()).map(|i| format!("x{i}")).collect();
            names.shuffle(&mut rng);
            let moved = m.relabel(&names).expect("distinct labels");
            let moved_factors = moved.factor().expect("nonempty");
            let moved_classes: Vec<_> = moved_factors.iter().map(Matroid::canonicalize).collect();
            if moved_classes != classes || chain(&moved_factors) != moved {
                return (cases, fail(format!("M = {m}, labels {names:?}")));
            }
        }
    }
    (cases, None)
}
