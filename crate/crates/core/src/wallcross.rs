//! Wall-crossing from weight matrices alone: bodies, fiber envelopes, the
//! constant `kappa`, and the shift and flip maps between adjacent bodies.
//!
//! Bodies live in `Q^(d+1)`; the first `d` coordinates (first one equal to 1)
//! are shared by both sides, the last one is the fiber direction.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::gr2m::{build_m, theta_with, BinomialStraightening, GrPair, StandardMonomials};
use crate::kernel::{refinement_vertices, PLFunction, Polyhedron, Rat, RatMat, RatVec};
use crate::trees::{adjacency, adjacent_pairs, TrivalentTree};
use crate::tropcore::{hypersurface_11, initial_form, Poly, TermOrder};

/// Two weight matrices agreeing except in the last row.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ConePairInput {
    pub m1: RatMat,
    pub m2: RatMat,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

impl ConePairInput {
    pub fn new(m1: RatMat, m2: RatMat) -> Result<ConePairInput> {
        let inp = ConePairInput { m1, m2, labels: None };
        inp.validate()?;
        Ok(inp)
    }

    pub fn validate(&self) -> Result<()> {
        let (a, b) = (&self.m1, &self.m2);
        if a.nrows() != b.nrows() || a.ncols() != b.ncols() {
            return invalid("the two matrices have different shapes");
        }
        if a.nrows() < 2 || a.ncols() == 0 {
            return invalid("matrices need at least two rows and one column");
        }
        for m in [a, b] {
            if m.row(0).iter().any(|x| *x != Rat::one()) {
                return invalid("the first row must be all ones");
            }
        }
        for i in 0..a.nrows() - 1 {
            if a.row(i) != b.row(i) {
                return invalid(format!("row {} differs; only the last row may", i + 1));
            }
        }
        if let Some(l) = &self.labels {
            if l.len() != a.ncols() {
                return invalid("one label per column expected");
            }
        }
        Ok(())
    }

    /// The same pair with the sides exchanged.
    pub fn reversed(&self) -> ConePairInput {
        ConePairInput { m1: self.m2.clone(), m2: self.m1.clone(), labels: self.labels.clone() }
    }

    /// `M_tau1`, `M_tau2` of two adjacent trees (re-indexed so that only the
    /// last row differs).
    pub fn from_trees(t1: &TrivalentTree, t2: &TrivalentTree) -> Result<ConePairInput> {
        let adj = adjacency(t1, t2)?;
        ConePairInput::new(build_m(&adj.t1), build_m(&adj.t2))
    }

    pub fn from_gr_pair(p: &GrPair) -> ConePairInput {
        ConePairInput { m1: p.m1.clone(), m2: p.m2.clone(), labels: None }
    }

    /// The hypersurface `x2^11 - x1^6 x3^4 x4 - x1^7 x3 x4^3` and its two
    /// adjacent cones.
    pub fn hypersurface_11() -> ConePairInput {
        ConePairInput {
            m1: RatMat::from_ints(&[&[1, 1, 1, 1], &[0, 1, 2, 3], &[0, 0, -1, 4]]),
            m2: RatMat::from_ints(&[&[1, 1, 1, 1], &[0, 1, 2, 3], &[0, 0, 3, -1]]),
            labels: Some((1..=4).map(|i| format!("x{i}")).collect()),
        }
    }
}

/// Convex hull of the columns.
pub fn no_body(m: &RatMat) -> Result<Polyhedron> {
    Polyhedron::convex_hull(&m.columns())
}

/// Cone over the columns.
pub fn no_cone(m: &RatMat) -> Result<Polyhedron> {
    Polyhedron::cone_hull(&m.columns())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Check at every vertex of the common refinement of the envelopes.
    Exact,
    /// Check at seeded random rational points of the base.
    Sample,
}

pub const SAMPLE_POINTS: usize = 200;
pub const MAX_DENOMINATOR: u32 = 1000;

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<RatVec>,
}

impl Check {
    pub fn pass(name: &str, detail: impl Into<String>) -> Check {
        Check { name: name.into(), passed: true, detail: detail.into(), witness: None }
    }

    pub fn fail(name: &str, detail: impl Into<String>, witness: Option<RatVec>) -> Check {
        Check { name: name.into(), passed: false, detail: detail.into(), witness }
    }

    pub fn from_bool(name: &str, ok: bool, detail: impl Into<String>) -> Check {
        Check { name: name.into(), passed: ok, detail: detail.into(), witness: None }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CrossingReport {
    pub mode: Mode,
    pub seed: u64,
    pub base: Polyhedron,
    /// True when the base has smaller dimension than its ambient slice.
    pub degenerate_base: bool,
    pub body1: Polyhedron,
    pub body2: Polyhedron,
    pub kappa: Rat,
    pub phi1: PLFunction,
    pub psi1: PLFunction,
    pub phi2: PLFunction,
    pub psi2: PLFunction,
    pub points_checked: usize,
    pub checks: Vec<Check>,
}

impl CrossingReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    /// Fiber length of the first body over `b`.
    pub fn length1(&self, b: &RatVec) -> Result<Rat> {
        Ok(self.psi1.eval(b)? - self.phi1.eval(b)?)
    }

    pub fn length2(&self, b: &RatVec) -> Result<Rat> {
        Ok(self.psi2.eval(b)? - self.phi2.eval(b)?)
    }

    fn level_one(&self, x: &RatVec) -> Result<Option<(Rat, RatVec)>> {
        if x.dim() != self.body1.dim() {
            return invalid(format!("point of dimension {} for bodies of dimension {}", x.dim(), self.body1.dim()));
        }
        let s = x[0].clone();
        if s.is_zero() && x.is_zero() {
            return Ok(None);
        }
        if !s.is_positive() {
            return Err(Error::Domain { point: x.clone(), reason: "not in the cone over the first body".into() });
        }
        let v = x.scale(&s.recip());
        if !self.body1.contains_point(&v) {
            return Err(Error::Domain { point: x.clone(), reason: "not in the cone over the first body".into() });
        }
        Ok(Some((s, v)))
    }

    /// `(1, v, z) -> (1, v, kappa (z - phi1) + phi2)`, extended to the cone.
    pub fn shift(&self, x: &RatVec) -> Result<RatVec> {
        let Some((s, v)) = self.level_one(x)? else {
            return Ok(x.clone());
        };
        let b = v.head(v.dim() - 1);
        let z = &self.kappa * &(v.last() - &self.phi1.eval(&b)?) + self.phi2.eval(&b)?;
        Ok(v.with_last(z).scale(&s))
    }

    /// `(1, v, z) -> (1, v, kappa (phi1 - z) + psi2)`, extended to the cone.
    pub fn flip(&self, x: &RatVec) -> Result<RatVec> {
        let Some((s, v)) = self.level_one(x)? else {
            return Ok(x.clone());
        };
        let b = v.head(v.dim() - 1);
        let z = &self.kappa * &(self.phi1.eval(&b)? - v.last()) + self.psi2.eval(&b)?;
        Ok(v.with_last(z).scale(&s))
    }
}

pub fn shift_generic(rep: &CrossingReport, x: &RatVec) -> Result<RatVec> {
    rep.shift(x)
}

pub fn flip_generic(rep: &CrossingReport, x: &RatVec) -> Result<RatVec> {
    rep.flip(x)
}

/// Rational points of the base: convex combinations of its vertices with
/// integer weights summing to at most [`MAX_DENOMINATOR`].
pub fn sample_points(base: &Polyhedron, count: usize, seed: u64) -> Vec<RatVec> {
    let vs = base.vertices();
    if vs.is_empty() {
        return Vec::new();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let q: u32 = rng.gen_range(1..=MAX_DENOMINATOR);
            let mut cuts: Vec<u32> = (0..vs.len() - 1).map(|_| rng.gen_range(0..=q)).collect();
            cuts.push(0);
            cuts.push(q);
            cuts.sort_unstable();
            let mut acc = RatVec::zeros(vs[0].dim());
            for (k, v) in vs.iter().enumerate() {
                let w = Rat::new((cuts[k + 1] - cuts[k]) as i64, q as i64);
                if !w.is_zero() {
                    acc = &acc + &v.scale(&w);
                }
            }
            acc
        })
        .collect()
}

/// A base point over which the first body has a fiber of positive length:
/// the barycenter, else midpoints towards the vertices and between vertices.
fn kappa_point(base: &Polyhedron, l1: impl Fn(&RatVec) -> Result<Rat>) -> Result<Option<RatVec>> {
    let Some(c) = base.barycenter() else {
        return Ok(None);
    };
    let half = Rat::new(1, 2);
    let vs = base.vertices();
    let mut candidates = vec![c.clone()];
    candidates.extend(vs.iter().map(|v| (&c + v).scale(&half)));
    for (i, a) in vs.iter().enumerate() {
        candidates.extend(vs[i + 1..].iter().map(|b| (a + b).scale(&half)));
    }
    for p in candidates {
        if l1(&p)?.is_positive() {
            return Ok(Some(p));
        }
    }
    Ok(None)
}

/// Bodies, envelopes, `kappa` and the fiber-length check for a pair of
/// weight matrices.
pub fn crossing_data(inp: &ConePairInput, mode: Mode, seed: u64) -> Result<CrossingReport> {
    inp.validate()?;
    let body1 = no_body(&inp.m1)?.dd_convert();
    let body2 = no_body(&inp.m2)?.dd_convert();
    let base = body1.project_drop_last()?.dd_convert();
    let base2 = body2.project_drop_last()?;
    if !base.set_eq(&base2) {
        let witness = base2
            .vertices()
            .iter()
            .chain(base.vertices())
            .find(|v| !(base.contains_point(v) && base2.contains_point(v)))
            .cloned();
        return Err(Error::TheoremViolation { what: "the two bodies project to different polytopes".into(), witness });
    }
    let d = base.dim();
    let degenerate_base = base.affine_dim().is_some_and(|k| k + 1 < d);
    let (phi1, psi1) = body1.envelopes()?;
    let (phi2, psi2) = body2.envelopes()?;
    let len = |phi: &PLFunction, psi: &PLFunction, b: &RatVec| -> Result<Rat> { Ok(psi.eval(b)? - phi.eval(b)?) };

    let mut checks = vec![Check::pass("projections-equal", "both bodies project onto the same base")];
    let kappa = match kappa_point(&base, |b| len(&phi1, &psi1, b))? {
        Some(p) => {
            let k = len(&phi2, &psi2, &p)? / len(&phi1, &psi1, &p)?;
            checks.push(Check::from_bool(
                "kappa-positive",
                k.is_positive(),
                format!("kappa = {k} from base point {p}"),
            ));
            k
        }
        None => {
            checks.push(Check::pass("kappa-positive", "every fiber of the first body is a point; kappa = 1"));
            Rat::one()
        }
    };

    let points = match mode {
        Mode::Exact => refinement_vertices(&base, &[&phi1, &psi1, &phi2, &psi2])?,
        Mode::Sample => sample_points(&base, SAMPLE_POINTS, seed),
    };
    let bad: Vec<Option<RatVec>> = points
        .par_iter()
        .map(|p| -> Result<Option<RatVec>> {
            let ok = &kappa * &len(&phi1, &psi1, p)? == len(&phi2, &psi2, p)?;
            Ok((!ok).then(|| p.clone()))
        })
        .collect::<Result<_>>()?;
    let failures: Vec<RatVec> = bad.into_iter().flatten().collect();
    let name = "fiber-lengths";
    checks.push(match failures.first() {
        None => Check::pass(name, format!("kappa * L1 = L2 at {} points", points.len())),
        Some(w) => Check::fail(name, format!("{} of {} points fail", failures.len(), points.len()), Some(w.clone())),
    });

    // Every column is a value of the first valuation; its flip must land in
    // the second cone.
    let cone2 = no_cone(&inp.m2)?;
    let rep = CrossingReport {
        mode,
        seed,
        base,
        degenerate_base,
        body1,
        body2,
        kappa,
        phi1,
        psi1,
        phi2,
        psi2,
        points_checked: points.len(),
        checks,
    };
    let mut outside = None;
    for c in inp.m1.columns() {
        match rep.flip(&c) {
            Ok(f) if cone2.contains_point(&f) => {}
            Ok(f) => {
                outside = Some(f);
                break;
            }
            Err(_) => {
                outside = Some(c);
                break;
            }
        }
    }
    let mut rep = rep;
    rep.checks.push(match outside {
        None => Check::pass("columns-cross", "flip sends every column of M1 into the second cone"),
        Some(w) => Check::fail("columns-cross", "a column leaves the cones", Some(w)),
    });
    Ok(rep)
}

#[derive(Clone, Debug, Serialize)]
pub struct CounterexampleReport {
    pub checks: Vec<Check>,
    /// `x2^11` straightened to the standard monomial of equal `M1`-value.
    pub straightening_witness: (Vec<u32>, Vec<u32>),
    pub flip_image: RatVec,
    pub shift_image: RatVec,
}

impl CounterexampleReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// The hypersurface example: the value-semigroup bijection is not additive
/// and agrees with neither geometric map.
pub fn verify_counterexample() -> Result<CounterexampleReport> {
    let inp = ConePairInput::hypersurface_11();
    let f = hypersurface_11();
    let basis = BinomialStraightening::hypersurface_11();
    let mut checks = Vec::new();

    let init1 = initial_form(&f, &inp.m1, TermOrder::DegreeRefinedLex)?;
    let init2 = initial_form(&f, &inp.m2, TermOrder::DegreeRefinedLex)?;
    let want1 = Poly::from_ints(4, &[(&[0, 11, 0, 0], 1), (&[6, 0, 4, 1], -1)])?;
    let want2 = Poly::from_ints(4, &[(&[0, 11, 0, 0], 1), (&[7, 0, 1, 3], -1)])?;
    checks.push(Check::from_bool("initial-form-1", init1 == want1, "x2^11 - x1^6 x3^4 x4"));
    checks.push(Check::from_bool("initial-form-2", init2 == want2, "x2^11 - x1^7 x3 x4^3"));

    let theta = |s: &[i64], a: &[u32]| theta_with(&inp.m1, &inp.m2, &basis, &RatVec::from_ints(s), a);
    let t1 = theta(&[1, 1, 0], &[0, 1, 0, 0])?;
    let t11 = theta(&[11, 11, 0], &[0, 11, 0, 0])?;
    checks.push(Check::from_bool("theta-110", t1 == RatVec::from_ints(&[1, 1, 0]), format!("Theta(1,1,0) = {t1}")));
    checks.push(Check::from_bool(
        "theta-11-11-0",
        t11 == RatVec::from_ints(&[11, 11, 11]),
        format!("Theta(11,11,0) = {t11}"),
    ));
    let scaled = t1.scale(&Rat::int(11));
    checks.push(Check::from_bool("theta-not-additive", t11 != scaled, format!("11 * Theta(1,1,0) = {scaled}")));
    // Additivity does hold on the generator x1 in low degree.
    let g1 = theta(&[1, 0, 0], &[1, 0, 0, 0])?;
    let g2 = theta(&[2, 0, 0], &[2, 0, 0, 0])?;
    checks.push(Check::from_bool("theta-additive-on-x1", g2 == g1.scale(&Rat::int(2)), format!("Theta(2,0,0) = {g2}")));

    let rep = crossing_data(&inp, Mode::Exact, 0)?;
    let p = RatVec::from_ints(&[1, 1, 0]);
    let flip_image = rep.flip(&p)?;
    let shift_image = rep.shift(&p)?;
    checks.push(Check::from_bool("flip-moves-point", flip_image != p, format!("flip(1,1,0) = {flip_image}")));
    checks.push(Check::from_bool("shift-moves-point", shift_image != p, format!("shift(1,1,0) = {shift_image}")));
    checks.extend(rep.checks.iter().cloned());

    let straightened = basis.straighten(&[0, 11, 0, 0])?;
    checks.push(Check::from_bool(
        "straightening-witness",
        straightened == vec![6, 0, 4, 1]
            && inp.m1.mul_exponent(&straightened)? == inp.m1.mul_exponent(&[0, 11, 0, 0])?,
        "x2^11 and x1^6 x3^4 x4 have the same M1-value",
    ));
    Ok(CounterexampleReport {
        checks,
        straightening_witness: (vec![0, 11, 0, 0], straightened),
        flip_image,
        shift_image,
    })
}

/// Result of sweeping all adjacent tree pairs on `m` leaves.
#[derive(Clone, Debug, Serialize)]
pub struct PairResult {
    pub t1: TrivalentTree,
    pub t2: TrivalentTree,
    pub kappa: Rat,
    pub points_checked: usize,
    pub flip_theta_checked: usize,
    pub failures: Vec<Check>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub flip_theta_violations: Vec<crate::gr2m::FlipThetaViolation>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepReport {
    pub m: usize,
    pub degree: u32,
    pub mode: Mode,
    pub seed: u64,
    pub pairs: usize,
    pub results: Vec<PairResult>,
}

impl SweepReport {
    pub fn passed(&self) -> bool {
        self.results.iter().all(|r| r.failures.is_empty() && r.flip_theta_violations.is_empty())
    }
}

/// For every adjacent pair on `m` leaves: the crossing checks (with
/// `kappa = 1` required) and `flip = Theta` up to the given degree.
pub fn verify_gr2m(m: usize, degree: u32, mode: Mode, seed: u64) -> Result<SweepReport> {
    let pairs = adjacent_pairs(m)?;
    let results: Vec<PairResult> = pairs
        .par_iter()
        .map(|(t1, t2)| -> Result<PairResult> {
            let rep = crossing_data(&ConePairInput::from_trees(t1, t2)?, mode, seed)?;
            let mut failures: Vec<Check> = rep.checks.iter().filter(|c| !c.passed).cloned().collect();
            if rep.kappa != Rat::one() {
                failures.push(Check::fail("kappa-one", format!("kappa = {}", rep.kappa), None));
            }
            let (gp, _) = GrPair::relabeled(t1, t2)?;
            let ft = gp.verify_flip_equals_theta(degree);
            Ok(PairResult {
                t1: t1.clone(),
                t2: t2.clone(),
                kappa: rep.kappa.clone(),
                points_checked: rep.points_checked,
                flip_theta_checked: ft.checked,
                failures,
                flip_theta_violations: ft.violations,
            })
        })
        .collect::<Result<_>>()?;
    Ok(SweepReport { m, degree, mode, seed, pairs: results.len(), results })
}
