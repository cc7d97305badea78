//! Worked examples recomputed from scratch and compared with their printed values.

use clap::ValueEnum;
use serde::Serialize;
use serde_json::{json, Value};

use tropwall::gr2m::{build_m, build_mtilde, nohara_ueda, straighten, GrPair};
use tropwall::kernel::{Constraint, HRep, Polyhedron, Rat, RatMat, RatVec};
use tropwall::mutation::verify_worked_example;
use tropwall::trees::{adjacency, num_pairs, pair_index, TrivalentTree};
use tropwall::tropcore::monomials_up_to;
use tropwall::wallcross::{verify_counterexample, Check};
use tropwall::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Item {
    Gr24Matrices,
    Gr25Matrices,
    IneqsGemoMaps,
    Gr24AlgMap,
    Counterexample,
    AppendixExample,
}

#[derive(Debug, Serialize)]
pub struct Assertion {
    pub name: String,
    pub passed: bool,
    pub expected: Value,
    pub actual: Value,
}

#[derive(Debug, Serialize)]
pub struct Reproduction {
    pub item: Item,
    pub passed: bool,
    pub assertions: Vec<Assertion>,
}

fn assert_eq_json<T: Serialize + PartialEq>(name: &str, expected: &T, actual: &T) -> Assertion {
    Assertion {
        name: name.into(),
        passed: expected == actual,
        expected: serde_json::to_value(expected).expect("serializable"),
        actual: serde_json::to_value(actual).expect("serializable"),
    }
}

fn assert_true(name: &str, ok: bool, detail: impl Into<String>) -> Assertion {
    Assertion {
        name: name.into(),
        passed: ok,
        expected: json!(true),
        actual: json!({ "holds": ok, "detail": detail.into() }),
    }
}

fn from_check(c: &Check) -> Assertion {
    Assertion {
        name: c.name.clone(),
        passed: c.passed,
        expected: json!("pass"),
        actual: json!({ "passed": c.passed, "detail": c.detail, "witness": c.witness }),
    }
}

fn tree(m: usize, splits: &[&[usize]]) -> Result<TrivalentTree> {
    TrivalentTree::new(m, &splits.iter().map(|s| s.to_vec()).collect::<Vec<_>>())
}

fn printed_gr24() -> (RatMat, RatMat) {
    let top: [&[i64]; 4] = [&[1, 1, 1, 1, 1, 1], &[1, 0, 0, 1, 1, 0], &[0, 1, 0, 1, 0, 1], &[0, 0, 1, 0, 1, 1]];
    let with = |last: &'static [i64]| {
        let mut rows = top.to_vec();
        rows.push(last);
        RatMat::from_ints(&rows)
    };
    (with(&[1, 0, 0, 0, 0, 1]), with(&[0, 0, 1, 1, 0, 0]))
}

fn printed_gr25() -> (RatMat, RatMat) {
    let top: [&[i64]; 6] = [
        &[1, 1, 1, 1, 1, 1, 1, 1, 1, 1],
        &[1, 0, 0, 0, 1, 1, 1, 0, 0, 0],
        &[0, 1, 0, 0, 1, 0, 0, 1, 1, 0],
        &[0, 0, 1, 0, 0, 1, 0, 1, 0, 1],
        &[0, 0, 0, 1, 0, 0, 1, 0, 1, 1],
        &[1, 1, 0, 0, 1, 0, 0, 0, 0, 1],
    ];
    let with = |last: &'static [i64]| {
        let mut rows = top.to_vec();
        rows.push(last);
        RatMat::from_ints(&rows)
    };
    (with(&[1, 0, 0, 0, 0, 0, 0, 1, 1, 1]), with(&[0, 0, 1, 1, 1, 0, 0, 0, 0, 1]))
}

fn matrices(t1: &TrivalentTree, t2: &TrivalentTree, printed: (RatMat, RatMat)) -> Result<Vec<Assertion>> {
    let adj = adjacency(t1, t2)?;
    let (m1, m2) = (build_m(&adj.t1), build_m(&adj.t2));
    Ok(vec![assert_eq_json("M_tau1", &printed.0, &m1), assert_eq_json("M_tau2", &printed.1, &m2)])
}

fn ineq(a: &[i64], b: i64) -> Constraint {
    Constraint::new(RatVec::from_ints(a), Rat::int(b))
}

fn ineqs_gemo_maps() -> Result<Vec<Assertion>> {
    let t1 = tree(4, &[&[1, 2]])?;
    let printed = RatMat::from_ints(&[
        &[1, 1, 1, 0, 0, 0],
        &[1, 0, 0, 1, 1, 0],
        &[0, 1, 0, 1, 0, 1],
        &[0, 0, 1, 0, 1, 1],
        &[0, 1, 1, 1, 1, 0],
    ]);
    let mt = build_mtilde(&t1);
    let mut out = vec![assert_eq_json("Mtilde_tau1", &printed, &mt)];

    // z_x <= z_y + z_w at the two interior vertices, written as >= 0.
    let listed = HRep {
        inequalities: vec![
            ineq(&[-1, 1, 0, 0, 1], 0),
            ineq(&[1, -1, 0, 0, 1], 0),
            ineq(&[1, 1, 0, 0, -1], 0),
            ineq(&[0, 0, -1, 1, 1], 0),
            ineq(&[0, 0, 1, -1, 1], 0),
            ineq(&[0, 0, 1, 1, -1], 0),
        ],
        equations: vec![],
    };
    let cone = Polyhedron::cone_hull(&mt.columns())?;
    out.push(assert_eq_json("cone-facets", &listed.canonical(5), &cone.hrep().canonical(5)));
    let nu = nohara_ueda(&t1);
    let hull = Polyhedron::convex_hull(&mt.columns())?;
    out.push(assert_true(
        "tilde-polytope",
        nu.polytope().set_eq(&hull),
        "level 2 slice equals the hull of the columns",
    ));

    let y_desc = Polyhedron::from_hrep(
        5,
        HRep {
            inequalities: vec![
                ineq(&[0, 2, 1, 1, -1], 1),
                ineq(&[0, -2, -1, -1, -1], -3),
                ineq(&[0, 0, -1, -1, 1], -1),
                ineq(&[0, 0, -1, 1, -1], -1),
                ineq(&[0, 0, 1, -1, -1], -1),
                ineq(&[0, 0, 1, 1, 1], 1),
            ],
            equations: vec![ineq(&[1, 0, 0, 0, 0], 1)],
        },
    )?;
    let body = Polyhedron::convex_hull(&build_m(&t1).columns())?;
    out.push(assert_true(
        "body-inequalities",
        y_desc.set_eq(&body),
        "listed y-inequalities cut out the hull of M_tau1",
    ));

    let pair = GrPair::new(&t1, &tree(4, &[&[1, 4]])?)?;
    let closed_flip = |z: &RatVec| {
        let z1 = &z[0];
        let (z2, z3, z4, z5) = (&z[1], &z[2], &z[3], &z[4]);
        let v = -z5.clone() + (z1 + z4).min(z2 + z3) + (z1 - z2).abs().max((z3 - z4).abs());
        z.with_last(v)
    };
    let closed_shift = |z: &RatVec| {
        let (z1, z2, z3, z4) = (&z[0], &z[1], &z[2], &z[3]);
        let v = z[4].clone() + (z1 - z4).abs().max((z2 - z3).abs()) - (z1 - z2).abs().max((z3 - z4).abs());
        z.with_last(v)
    };
    let mut points = mt.columns();
    points.push(RatVec::new(vec![Rat::new(1, 2), Rat::new(1, 3), Rat::new(2, 3), Rat::new(1, 2), Rat::new(3, 4)]));
    for z in &points {
        out.push(assert_eq_json(&format!("flip {z}"), &closed_flip(z), &pair.flip_tilde(z)?));
        out.push(assert_eq_json(&format!("shift {z}"), &closed_shift(z), &pair.shift_tilde(z)?));
    }
    Ok(out)
}

fn gr24_alg_map() -> Result<Vec<Assertion>> {
    let t1 = tree(4, &[&[1, 2]])?;
    let pair = GrPair::new(&t1, &tree(4, &[&[1, 4]])?)?;
    let e = |pairs: &[(usize, usize)]| {
        let mut a = vec![0u32; num_pairs(4)];
        for &(i, j) in pairs {
            a[pair_index(4, i, j)] += 1;
        }
        a
    };
    let mut out = vec![
        assert_eq_json("straighten e13+e24", &e(&[(1, 4), (2, 3)]), &straighten(&e(&[(1, 3), (2, 4)]), &t1)?),
        assert_eq_json(
            "straighten 2e13+e24",
            &e(&[(1, 3), (1, 4), (2, 3)]),
            &straighten(&e(&[(1, 3), (1, 3), (2, 4)]), &t1)?,
        ),
    ];
    // Closed form: alpha_13, alpha_24 -> max(0, a13 - a24), max(0, a24 - a13),
    // with min(a13, a24) moved onto alpha_14 and alpha_23.
    let mut bad = Vec::new();
    let all = monomials_up_to(6, 4);
    for a in &all {
        let k = a[1].min(a[4]);
        let beta = vec![a[0], a[1] - k, a[2] + k, a[3] + k, a[4] - k, a[5]];
        let s = pair.m1.mul_exponent(a)?;
        let expected = pair.m2.mul_exponent(&beta)?;
        if pair.theta(&s, a)? != expected {
            bad.push(a.clone());
        }
    }
    out.push(assert_eq_json(
        &format!("closed form on {} exponents of degree <= 4", all.len()),
        &Vec::<Vec<u32>>::new(),
        &bad,
    ));
    Ok(out)
}

fn counterexample() -> Result<Vec<Assertion>> {
    let r = verify_counterexample()?;
    let mut out: Vec<Assertion> = r.checks.iter().map(from_check).collect();
    out.push(assert_eq_json("flip(1,1,0)", &RatVec::from_ints(&[1, 1, 1]), &r.flip_image));
    out.push(assert_eq_json(
        "shift(1,1,0)",
        &RatVec::new(vec![Rat::one(), Rat::one(), Rat::new(1, 6)]),
        &r.shift_image,
    ));
    Ok(out)
}

pub fn run(item: Item) -> Result<Reproduction> {
    let assertions = match item {
        Item::Gr24Matrices => matrices(&tree(4, &[&[1, 2]])?, &tree(4, &[&[1, 4]])?, printed_gr24())?,
        Item::Gr25Matrices => matrices(&tree(5, &[&[4, 5], &[1, 2]])?, &tree(5, &[&[4, 5], &[2, 3]])?, printed_gr25())?,
        Item::IneqsGemoMaps => ineqs_gemo_maps()?,
        Item::Gr24AlgMap => gr24_alg_map()?,
        Item::Counterexample => counterexample()?,
        Item::AppendixExample => verify_worked_example()?.checks.iter().map(from_check).collect(),
    };
    let passed = assertions.iter().all(|a| a.passed);
    Ok(Reproduction { item, passed, assertions })
}
