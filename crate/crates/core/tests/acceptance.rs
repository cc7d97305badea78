//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Run with `cargo test -p tropwall --test acceptance`. Every comparison is
//! exact (rational arithmetic, tolerance zero). Each criterion also has a
//! wall-clock limit; exceeding it is a failure.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use tropwall::gr2m::{
    build_m, build_mtilde, crossing_quadruples, gamma, gamma_inv, is_standard, nohara_ueda, rewrite, straighten, GrPair,
};
use tropwall::kernel::{Constraint, HRep, Polyhedron, Rat, RatMat, RatVec};
use tropwall::mutation::{body_from_triple, build_sigma, dual_slice, nabla, worked_matrix, worked_triple};
use tropwall::trees::{adjacency, adjacent_pairs, enumerate_trees, num_pairs, pair_index, TrivalentTree};
use tropwall::tropcore::{hypersurface_11, initial_form, Poly, TermOrder};
use tropwall::wallcross::{crossing_data, no_body, verify_counterexample, verify_gr2m, ConePairInput, Mode};

/// Exact comparisons only.
const TOLERANCE: i64 = 0;
const SEED: u64 = 20240601;
/// Points per pair in sample mode.
const SAMPLE_POINTS: usize = 200;
const STRAIGHTEN_SAMPLES: usize = 1000;

const LIMIT_1: Duration = Duration::from_secs(1);
const LIMIT_2: Duration = Duration::from_secs(30);
const LIMIT_3: Duration = Duration::from_secs(120);
const LIMIT_4: Duration = Duration::from_secs(300);
const LIMIT_5: Duration = Duration::from_secs(600);
const LIMIT_6: Duration = Duration::from_secs(1);
const LIMIT_7: Duration = Duration::from_secs(5);
const LIMIT_8: Duration = Duration::from_secs(300);
const LIMIT_9: Duration = Duration::from_secs(60);

type Outcome = Result<String, String>;
type Criterion = (&'static str, Duration, fn() -> Outcome);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e<T: std::fmt::Display>(x: T) -> String {
    x.to_string()
}

fn tree(m: usize, splits: &[&[usize]]) -> TrivalentTree {
    TrivalentTree::new(m, &splits.iter().map(|s| s.to_vec()).collect::<Vec<_>>()).expect("valid tree")
}

fn ineq(a: &[i64], b: i64) -> Constraint {
    Constraint::new(RatVec::from_ints(a), Rat::int(b))
}

// ---------------------------------------------------------------- 1

fn stack(top: &[&'static [i64]], last: &'static [i64]) -> RatMat {
    let mut rows = top.to_vec();
    rows.push(last);
    RatMat::from_ints(&rows)
}

fn golden_matrices() -> Outcome {
    let top4: [&[i64]; 4] = [&[1, 1, 1, 1, 1, 1], &[1, 0, 0, 1, 1, 0], &[0, 1, 0, 1, 0, 1], &[0, 0, 1, 0, 1, 1]];
    let top5: [&[i64]; 6] = [
        &[1, 1, 1, 1, 1, 1, 1, 1, 1, 1],
        &[1, 0, 0, 0, 1, 1, 1, 0, 0, 0],
        &[0, 1, 0, 0, 1, 0, 0, 1, 1, 0],
        &[0, 0, 1, 0, 0, 1, 0, 1, 0, 1],
        &[0, 0, 0, 1, 0, 0, 1, 0, 1, 1],
        &[1, 1, 0, 0, 1, 0, 0, 0, 0, 1],
    ];
    let cases = [
        (
            tree(4, &[&[1, 2]]),
            tree(4, &[&[1, 4]]),
            stack(&top4, &[1, 0, 0, 0, 0, 1]),
            stack(&top4, &[0, 0, 1, 1, 0, 0]),
        ),
        (
            tree(5, &[&[4, 5], &[1, 2]]),
            tree(5, &[&[4, 5], &[2, 3]]),
            stack(&top5, &[1, 0, 0, 0, 0, 0, 0, 1, 1, 1]),
            stack(&top5, &[0, 0, 1, 1, 1, 0, 0, 0, 0, 1]),
        ),
    ];
    for (t1, t2, p1, p2) in &cases {
        let adj = adjacency(t1, t2).map_err(e)?;
        let (m1, m2) = (build_m(&adj.t1), build_m(&adj.t2));
        ensure(&m1 == p1, || format!("M_tau1 for m={}: {m1:?}", t1.m()))?;
        ensure(&m2 == p2, || format!("M_tau2 for m={}: {m2:?}", t1.m()))?;
    }
    let printed_tilde = RatMat::from_ints(&[
        &[1, 1, 1, 0, 0, 0],
        &[1, 0, 0, 1, 1, 0],
        &[0, 1, 0, 1, 0, 1],
        &[0, 0, 1, 0, 1, 1],
        &[0, 1, 1, 1, 1, 0],
    ]);
    let mt = build_mtilde(&tree(4, &[&[1, 2]]));
    ensure(mt == printed_tilde, || format!("Mtilde_tau1: {mt:?}"))?;
    Ok("4 weight matrices and 1 tilde matrix equal entry-for-entry".into())
}

// ---------------------------------------------------------------- 2

fn nohara_ueda_description() -> Outcome {
    let t = tree(4, &[&[1, 2]]);
    let mt = build_mtilde(&t);
    let listed = vec![
        ineq(&[-1, 1, 0, 0, 1], 0),
        ineq(&[1, -1, 0, 0, 1], 0),
        ineq(&[1, 1, 0, 0, -1], 0),
        ineq(&[0, 0, -1, 1, 1], 0),
        ineq(&[0, 0, 1, -1, 1], 0),
        ineq(&[0, 0, 1, 1, -1], 0),
    ];
    let cone = Polyhedron::cone_hull(&mt.columns()).map_err(e)?.dd_convert();
    let want = HRep { inequalities: listed.clone(), equations: vec![] };
    ensure(cone.hrep().canonical(5) == want.canonical(5), || format!("cone facets {:?}", cone.hrep()))?;
    // With the level equation the same rows cut out the polytope.
    let level = ineq(&[1, 1, 1, 1, 0], 2);
    let poly = Polyhedron::from_hrep(5, HRep { inequalities: listed, equations: vec![level] }).map_err(e)?;
    ensure(poly.set_eq(&Polyhedron::convex_hull(&mt.columns()).map_err(e)?), || "level slice differs".into())?;

    let mut count = 0;
    for m in 4..=6 {
        for t in enumerate_trees(m).map_err(e)? {
            let cone = Polyhedron::cone_hull(&build_mtilde(&t).columns()).map_err(e)?.dd_convert();
            let nu = nohara_ueda(&t);
            ensure(cone.set_eq(&nu.cone()), || format!("cone differs for {t:?}"))?;
            let hull = Polyhedron::convex_hull(&build_mtilde(&t).columns()).map_err(e)?;
            ensure(hull.set_eq(&nu.polytope()), || format!("polytope differs for {t:?}"))?;
            count += 1;
        }
    }
    Ok(format!("6 listed facets match; {count} trees with m <= 6 agree with the triangle inequalities"))
}

// ---------------------------------------------------------------- 3

fn common_projection() -> Outcome {
    let mut count = 0;
    for m in 4..=6 {
        for (t1, t2) in adjacent_pairs(m).map_err(e)? {
            let inp = ConePairInput::from_trees(&t1, &t2).map_err(e)?;
            let p1 = no_body(&inp.m1).map_err(e)?.project_drop_last().map_err(e)?;
            let p2 = no_body(&inp.m2).map_err(e)?.project_drop_last().map_err(e)?;
            ensure(p1.set_eq(&p2), || format!("projections differ for {t1:?} / {t2:?}"))?;
            count += 1;
        }
    }
    Ok(format!("{count} adjacent pairs, 0 violations"))
}

// ---------------------------------------------------------------- 4

fn fiber_lengths() -> Outcome {
    let mut points = 0;
    let mut pairs = 0;
    for (m, mode) in [(4, Mode::Exact), (5, Mode::Exact), (6, Mode::Sample)] {
        // Degree 0: only the fiber checks, flip = Theta is criterion 5.
        let r = verify_gr2m(m, 0, mode, SEED).map_err(e)?;
        for p in &r.results {
            ensure(p.kappa == Rat::one(), || format!("kappa = {} for {:?} / {:?}", p.kappa, p.t1, p.t2))?;
            ensure(p.failures.is_empty(), || format!("{:?} / {:?}: {:?}", p.t1, p.t2, p.failures))?;
            if mode == Mode::Sample {
                ensure(p.points_checked >= SAMPLE_POINTS, || format!("only {} points", p.points_checked))?;
            }
            points += p.points_checked;
        }
        pairs += r.pairs;
    }
    Ok(format!("{pairs} pairs, kappa = 1, equal fiber lengths at {points} points"))
}

// ---------------------------------------------------------------- 5

fn flip_equals_theta() -> Outcome {
    let mut checked = 0;
    for (m, degree) in [(4, 4), (5, 4), (6, 3)] {
        for (t1, t2) in adjacent_pairs(m).map_err(e)? {
            let (gp, _) = GrPair::relabeled(&t1, &t2).map_err(e)?;
            let r = gp.verify_flip_equals_theta(degree);
            ensure(r.violations.is_empty(), || format!("{t1:?} / {t2:?}: {:?}", r.violations.first()))?;
            checked += r.checked;
        }
    }
    Ok(format!("{checked} standard exponents, 0 violations"))
}

// ---------------------------------------------------------------- 6

fn counterexample() -> Outcome {
    let inp = ConePairInput::hypersurface_11();
    let f = hypersurface_11();
    let want1 = Poly::from_ints(4, &[(&[0, 11, 0, 0], 1), (&[6, 0, 4, 1], -1)]).map_err(e)?;
    let want2 = Poly::from_ints(4, &[(&[0, 11, 0, 0], 1), (&[7, 0, 1, 3], -1)]).map_err(e)?;
    ensure(initial_form(&f, &inp.m1, TermOrder::DegreeRefinedLex).map_err(e)? == want1, || "init_M1".into())?;
    ensure(initial_form(&f, &inp.m2, TermOrder::DegreeRefinedLex).map_err(e)? == want2, || "init_M2".into())?;

    // Theta by hand: x2 is standard; x2^11 straightens to x1^6 x3^4 x4.
    let theta_1 = inp.m2.mul_exponent(&[0, 1, 0, 0]).map_err(e)?;
    let theta_11 = inp.m2.mul_exponent(&[6, 0, 4, 1]).map_err(e)?;
    ensure(theta_1 == RatVec::from_ints(&[1, 1, 0]), || format!("Theta(1,1,0) = {theta_1}"))?;
    ensure(theta_11 == RatVec::from_ints(&[11, 11, 11]), || format!("Theta(11,11,0) = {theta_11}"))?;
    ensure(theta_11 != theta_1.scale(&Rat::int(11)), || "Theta is additive".into())?;

    let r = verify_counterexample().map_err(e)?;
    ensure(r.passed(), || format!("{:?}", r.checks.iter().filter(|c| !c.passed).collect::<Vec<_>>()))?;
    let p = RatVec::from_ints(&[1, 1, 0]);
    ensure(r.flip_image != p && r.shift_image != p, || "a geometric map fixes (1,1,0)".into())?;
    let rep = crossing_data(&inp, Mode::Exact, SEED).map_err(e)?;
    ensure(rep.flip(&p).map_err(e)? == r.flip_image, || "flip image differs".into())?;
    Ok(format!("Theta(11,11,0) = {theta_11}; flip(1,1,0) = {}; shift(1,1,0) = {}", r.flip_image, r.shift_image))
}

// ---------------------------------------------------------------- 7

fn triple_example() -> Outcome {
    let a = worked_matrix();
    let t = worked_triple();
    let nab = [nabla(&t, 0).map_err(e)?, nabla(&t, 1).map_err(e)?, nabla(&t, 2).map_err(e)?];
    let (s1, s2) = build_sigma(&nab).map_err(e)?;
    for (side, rows, sigma) in [(1, [0, 1, 2, 3], &s1), (2, [0, 1, 2, 4], &s2)] {
        let hull = Polyhedron::convex_hull(&a.select_rows(&rows).columns()).map_err(e)?;
        let body = body_from_triple(&t, side).map_err(e)?;
        ensure(body.set_eq(&hull), || format!("body {side}: {body:?}"))?;
        ensure(dual_slice(sigma).map_err(e)?.set_eq(&hull), || format!("dual slice {side} differs"))?;
    }
    Ok("both bodies equal the column hulls and the dual slices".into())
}

// ---------------------------------------------------------------- 8

fn rand_rat(rng: &mut ChaCha8Rng, lo: i64, hi: i64) -> Rat {
    Rat::new(rng.gen_range(lo * 6..=hi * 6), 6)
}

fn rand_points(rng: &mut ChaCha8Rng, n: usize, d: usize) -> Vec<RatVec> {
    (0..n).map(|_| (0..d).map(|_| Rat::int(rng.gen_range(-3..=3))).collect()).collect()
}

/// A random point of the cone over the columns.
fn cone_point(rng: &mut ChaCha8Rng, m: &RatMat) -> RatVec {
    let mut x = RatVec::zeros(m.nrows());
    for c in m.columns() {
        x = &x + &c.scale(&rand_rat(rng, 0, 2));
    }
    x
}

/// Points of `pts` not in the hull of the others.
fn extreme_points(pts: &[RatVec]) -> Vec<RatVec> {
    let mut uniq: Vec<RatVec> = pts.to_vec();
    uniq.sort();
    uniq.dedup();
    let mut out = Vec::new();
    for (i, p) in uniq.iter().enumerate() {
        let others: Vec<RatVec> = uniq.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, q)| q.clone()).collect();
        if others.is_empty() || !Polyhedron::convex_hull(&others).expect("hull").contains_point(p) {
            out.push(p.clone());
        }
    }
    out
}

fn property_suites() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut counts = [0usize; 5];

    // Flip and shift are involutions up to reversing the pair; gamma is a bijection.
    for m in [4, 5] {
        for (t1, t2) in adjacent_pairs(m).map_err(e)? {
            let (gp, _) = GrPair::relabeled(&t1, &t2).map_err(e)?;
            let back = gp.reversed();
            for _ in 0..20 {
                let y = cone_point(&mut rng, &gp.m1);
                let f = gp.flip(&y).map_err(e)?;
                ensure(back.flip(&f).map_err(e)? == y, || format!("flip not involutive at {y}"))?;
                let s = gp.shift(&y).map_err(e)?;
                ensure(back.shift(&s).map_err(e)? == y, || format!("shift not inverted at {y}"))?;
                let z: RatVec = (0..y.dim()).map(|_| rand_rat(&mut rng, -3, 3)).collect();
                ensure(gamma_inv(&gamma(&z, m).map_err(e)?, m).map_err(e)? == z, || format!("gamma at {z}"))?;
                ensure(gamma(&gamma_inv(&z, m).map_err(e)?, m).map_err(e)? == z, || format!("gamma_inv at {z}"))?;
                counts[0] += 1;
            }
            for (zt, y) in gp.mtilde1.columns().iter().zip(gp.m1.columns()) {
                ensure(gamma(zt, m).map_err(e)? == y, || format!("gamma does not map {zt} to {y}"))?;
            }
        }
    }

    // Straightening: same value, standard result, independent of rewrite order.
    let trees: Vec<TrivalentTree> = [5, 6]
        .iter()
        .flat_map(|&m| adjacent_pairs(m).expect("pairs").into_iter().take(8))
        .map(|(t1, t2)| GrPair::relabeled(&t1, &t2).expect("relabel").0.adj.t1)
        .collect();
    for _ in 0..STRAIGHTEN_SAMPLES {
        let t = trees.choose(&mut rng).expect("nonempty");
        let m = t.m();
        let mut alpha = vec![0u32; num_pairs(m)];
        for _ in 0..rng.gen_range(2..=8) {
            let i = rng.gen_range(1..m);
            let j = rng.gen_range(i + 1..=m);
            alpha[pair_index(m, i, j)] += 1;
        }
        let s = straighten(&alpha, t).map_err(e)?;
        let mt = build_m(t);
        ensure(is_standard(&s, m), || format!("{s:?} not standard"))?;
        ensure(mt.mul_exponent(&s).map_err(e)? == mt.mul_exponent(&alpha).map_err(e)?, || {
            format!("value of {alpha:?}")
        })?;
        let mut shuffled = alpha.clone();
        loop {
            let qs = crossing_quadruples(&shuffled, m);
            let Some(q) = qs.choose(&mut rng) else { break };
            rewrite(&mut shuffled, t, *q).map_err(e)?;
        }
        ensure(shuffled == s, || format!("order dependence at {alpha:?}: {shuffled:?} vs {s:?}"))?;
        counts[1] += 1;
    }

    // Double description: round trip and vertices against a brute-force oracle.
    for d in [2, 3, 4] {
        for _ in 0..15 {
            let pts = rand_points(&mut rng, d + 4, d);
            let p = Polyhedron::convex_hull(&pts).map_err(e)?;
            let q = Polyhedron::from_hrep(d, p.hrep().clone()).map_err(e)?;
            ensure(q.set_eq(&p), || format!("round trip of {pts:?}"))?;
            let mut got = q.vertices().to_vec();
            got.sort();
            ensure(got == extreme_points(&pts), || format!("vertices of {pts:?}"))?;
            counts[2] += 1;
        }
    }

    // Dual cone involution.
    for d in [2, 3, 4] {
        for _ in 0..15 {
            let gens = rand_points(&mut rng, d + 2, d);
            let c = Polyhedron::cone_hull(&gens).map_err(e)?;
            let dd = c.dual_cone().map_err(e)?.dual_cone().map_err(e)?;
            ensure(dd.set_eq(&c), || format!("double dual of cone over {gens:?}"))?;
            counts[3] += 1;
        }
    }

    // Minkowski identities.
    for d in [2, 3] {
        for _ in 0..10 {
            let [p, q, r] = [0, 1, 2].map(|_| Polyhedron::convex_hull(&rand_points(&mut rng, 4, d)).expect("hull"));
            let pq = p.minkowski_sum(&q).map_err(e)?;
            ensure(pq.set_eq(&q.minkowski_sum(&p).map_err(e)?), || "commutativity".into())?;
            let left = pq.minkowski_sum(&r).map_err(e)?;
            let right = p.minkowski_sum(&q.minkowski_sum(&r).map_err(e)?).map_err(e)?;
            ensure(left.set_eq(&right), || "associativity".into())?;
            let origin = Polyhedron::convex_hull(&[RatVec::zeros(d)]).map_err(e)?;
            ensure(p.minkowski_sum(&origin).map_err(e)?.set_eq(&p), || "identity".into())?;
            let sums: Vec<RatVec> = p.vertices().iter().flat_map(|a| q.vertices().iter().map(move |b| a + b)).collect();
            ensure(pq.set_eq(&Polyhedron::convex_hull(&sums).map_err(e)?), || "vertex sums".into())?;
            counts[4] += 1;
        }
    }
    Ok(format!(
        "{} flip/shift/gamma, {} straighten, {} dd, {} dual, {} minkowski cases",
        counts[0], counts[1], counts[2], counts[3], counts[4]
    ))
}

// ---------------------------------------------------------------- 9

/// All sets of `m - 3` pairwise compatible nontrivial splits, by brute force.
fn brute_force_trees(m: usize) -> Vec<Vec<u32>> {
    let full: u32 = (1 << m) - 1;
    let splits: Vec<u32> =
        (1..full).filter(|&s| s & 1 == 1 && s.count_ones() >= 2 && (full ^ s).count_ones() >= 2).collect();
    let compatible = |a: u32, b: u32| a & b == 0 || a & !b & full == 0 || !a & b & full == 0 || (a | b) == full;
    fn rec(
        splits: &[u32],
        start: usize,
        need: usize,
        cur: &mut Vec<u32>,
        out: &mut Vec<Vec<u32>>,
        ok: &dyn Fn(u32, u32) -> bool,
    ) {
        if cur.len() == need {
            out.push(cur.clone());
            return;
        }
        for i in start..splits.len() {
            if cur.iter().all(|&c| ok(c, splits[i])) {
                cur.push(splits[i]);
                rec(splits, i + 1, need, cur, out, ok);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(&splits, 0, m - 3, &mut Vec::new(), &mut out, &compatible);
    out
}

/// A tree's splits as bitmasks on the side containing leaf 1.
fn masks(t: &TrivalentTree) -> Vec<u32> {
    let m = t.m();
    let full: u32 = (1 << m) - 1;
    let mut v: Vec<u32> = t
        .splits()
        .iter()
        .map(|s| {
            let b: u32 = s.iter().map(|&l| 1u32 << (l - 1)).sum();
            if b & 1 == 1 {
                b
            } else {
                full ^ b
            }
        })
        .collect();
    v.sort();
    v
}

fn tree_combinatorics() -> Outcome {
    let expected = [3, 15, 105, 945];
    for (m, want) in (4..=7).zip(expected) {
        let trees = enumerate_trees(m).map_err(e)?;
        let mut got: Vec<Vec<u32>> = trees.iter().map(masks).collect();
        got.sort();
        let mut oracle = brute_force_trees(m);
        oracle.sort();
        ensure(oracle.len() == want, || format!("oracle found {} trees for m={m}", oracle.len()))?;
        ensure(got == oracle, || format!("enumeration differs from oracle for m={m}"))?;
        if m <= 6 {
            for t in &trees {
                let n = t.neighbors();
                ensure(n.len() == 2 * (m - 3), || format!("{t:?} has {} neighbors", n.len()))?;
                let mine = masks(t);
                let by_oracle = oracle.iter().filter(|o| o.iter().filter(|s| !mine.contains(s)).count() == 1).count();
                ensure(by_oracle == 2 * (m - 3), || format!("oracle neighbors of {t:?}: {by_oracle}"))?;
            }
        }
    }
    Ok("3, 15, 105, 945 trees; 2(m-3) neighbors each".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("golden matrices", LIMIT_1, golden_matrices),
        ("Nohara-Ueda description", LIMIT_2, nohara_ueda_description),
        ("common projection", LIMIT_3, common_projection),
        ("fiber lengths", LIMIT_4, fiber_lengths),
        ("flip = Theta", LIMIT_5, flip_equals_theta),
        ("counterexample", LIMIT_6, counterexample),
        ("triple example", LIMIT_7, triple_example),
        ("property suites", LIMIT_8, property_suites),
        ("tree combinatorics", LIMIT_9, tree_combinatorics),
    ];
    println!("tolerance: {TOLERANCE} (exact rationals), seed {SEED}");
    let mut failed = 0;
    for (i, (name, limit, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = run();
        let took = start.elapsed();
        let (ok, detail) = match result {
            Ok(d) if took <= *limit => (true, d),
            Ok(d) => (false, format!("{d}; took {took:.2?}, over the {limit:?} limit")),
            Err(d) => (false, d),
        };
        if !ok {
            failed += 1;
        }
        println!("{} {}. {name} [{took:.2?} / {limit:?}]: {detail}", if ok { "PASS" } else { "FAIL" }, i + 1);
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
