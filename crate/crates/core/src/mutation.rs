//! Bodies cut out by triples of concave piecewise-linear functions, their
//! dual polyhedra `nabla_i`, the cones `sigma_i` and the slices `D_i`.
//!
//! The base lives in `Q^d` inside the slice `x_1 = 1`; bodies live in
//! `Q^(d+1)` with the fiber coordinate last.

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{invalid, Error, Result};
use crate::kernel::{
    refinement_vertices, Affine, Combiner, Constraint, HRep, PLForm, PLFunction, Polyhedron, Rat, RatMat, RatVec, VRep,
};
use crate::wallcross::Check;

/// Base polytope and concave functions `Psi_0, Psi_1, Psi_2` on it.
#[derive(Clone, Debug)]
pub struct PLTriple {
    pub base: Polyhedron,
    pub psi: [PLFunction; 3],
}

/// Turn `c . x + k` into the linear form `(c + k e_1) . x`, which agrees with
/// it on `x_1 = 1`.
fn homogenize(a: &Affine) -> RatVec {
    let mut u = a.coeffs.clone();
    u.set(0, &u[0] + &a.constant);
    u
}

impl PLTriple {
    pub fn new(base: Polyhedron, psi0: PLFunction, psi1: PLFunction, psi2: PLFunction) -> Result<PLTriple> {
        let t = PLTriple { base, psi: [psi0, psi1, psi2] };
        t.validate()?;
        Ok(t)
    }

    pub fn validate(&self) -> Result<()> {
        let d = self.base.dim();
        if d == 0 || self.base.is_empty() || !self.base.is_bounded() {
            return invalid("the base must be a nonempty polytope");
        }
        if self.base.vertices().iter().any(|v| v[0] != Rat::one()) {
            return invalid("the base must lie in the slice x_1 = 1");
        }
        for (i, f) in self.psi.iter().enumerate() {
            if f.domain.dim() != d {
                return invalid(format!("Psi_{i} is defined on a space of the wrong dimension"));
            }
            match &f.form {
                PLForm::Envelope { combiner: Combiner::Max, pieces } if pieces.len() > 1 => {
                    return invalid(format!("Psi_{i} is a max of affine pieces, which is not concave"));
                }
                PLForm::Envelope { pieces, .. } if pieces.is_empty() => {
                    return invalid(format!("Psi_{i} has no pieces"));
                }
                PLForm::Envelope { .. } => {}
                PLForm::Triangulated { vertices, values, .. } => {
                    for v in vertices {
                        if !self.base.contains_point(v) {
                            return invalid(format!("Psi_{i}: triangulation vertex {v} is outside the base"));
                        }
                    }
                    for v in self.base.vertices() {
                        if !vertices.contains(v) {
                            return invalid(format!("Psi_{i}: base vertex {v} is not a triangulation vertex"));
                        }
                    }
                    // Concave iff every simplex interpolant dominates all vertex values.
                    for u in f.pieces()? {
                        if let Some((v, _)) = vertices.iter().zip(values).find(|(v, val)| homogenize(&u).dot(v) < **val)
                        {
                            return Err(Error::Domain { point: v.clone(), reason: format!("Psi_{i} is not concave") });
                        }
                    }
                }
            }
        }
        for v in self.base.vertices() {
            let s: Rat = (0..3).map(|i| self.eval(i, v)).sum::<Result<Rat>>()?;
            if s.is_negative() {
                return Err(Error::Domain { point: v.clone(), reason: "Psi_0 + Psi_1 + Psi_2 < 0".into() });
            }
        }
        Ok(())
    }

    /// Linear pieces of `Psi_i`; `Psi_i` is their minimum on the base.
    pub fn pieces(&self, i: usize) -> Result<Vec<RatVec>> {
        let mut out: Vec<RatVec> = self.psi[i].pieces()?.iter().map(homogenize).collect();
        out.sort();
        out.dedup();
        Ok(out)
    }

    pub fn eval(&self, i: usize, x: &RatVec) -> Result<Rat> {
        self.pieces(i)?
            .iter()
            .map(|u| u.dot(x))
            .min()
            .ok_or_else(|| Error::InvalidInput(format!("Psi_{i} has no pieces")))
    }

    /// `Psi_0 - l1 - l2`, `Psi_1 + l1`, `Psi_2 + l2` for linear `l1`, `l2`:
    /// the sum is unchanged and the bodies are sheared.
    pub fn sheared(&self, l1: &RatVec, l2: &RatVec) -> Result<PLTriple> {
        let l0 = -&(l1 + l2);
        let [p0, p1, p2] = &self.psi;
        PLTriple::new(self.base.clone(), add_linear(p0, &l0)?, add_linear(p1, l1)?, add_linear(p2, l2)?)
    }

    /// Points at which every `Psi_i` is determined: triangulation vertices,
    /// or vertices of the envelope's regions.
    fn nodes(&self, i: usize) -> Result<Vec<RatVec>> {
        match &self.psi[i].form {
            PLForm::Triangulated { vertices, .. } => Ok(vertices.clone()),
            PLForm::Envelope { .. } => refinement_vertices(&self.base, &[&self.psi[i]]),
        }
    }
}

fn add_linear(f: &PLFunction, l: &RatVec) -> Result<PLFunction> {
    if l.dim() != f.domain.dim() {
        return invalid("linear function of the wrong dimension");
    }
    let form = match &f.form {
        PLForm::Envelope { combiner, pieces } => PLForm::Envelope {
            combiner: *combiner,
            pieces: pieces.iter().map(|p| Affine::new(&p.coeffs + l, p.constant.clone())).collect(),
        },
        PLForm::Triangulated { vertices, simplices, values } => PLForm::Triangulated {
            vertices: vertices.clone(),
            simplices: simplices.clone(),
            values: vertices.iter().zip(values).map(|(v, x)| x + &l.dot(v)).collect(),
        },
    };
    Ok(PLFunction::new(f.domain.clone(), form))
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum PsiJson {
    Triangulated {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        vertices: Option<Vec<RatVec>>,
        simplices: Vec<Vec<usize>>,
        values: Vec<Rat>,
    },
    Envelope {
        combiner: Combiner,
        pieces: Vec<Affine>,
    },
}

#[derive(Serialize, Deserialize)]
struct TripleJson {
    base: Polyhedron,
    psi: Vec<PsiJson>,
}

impl Serialize for PLTriple {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let psi = self
            .psi
            .iter()
            .map(|f| match &f.form {
                PLForm::Triangulated { vertices, simplices, values } => PsiJson::Triangulated {
                    vertices: Some(vertices.clone()),
                    simplices: simplices.clone(),
                    values: values.clone(),
                },
                PLForm::Envelope { combiner, pieces } => {
                    PsiJson::Envelope { combiner: *combiner, pieces: pieces.clone() }
                }
            })
            .collect();
        TripleJson { base: self.base.clone(), psi }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for PLTriple {
    /// Triangulations without `vertices` index into the base vertices as
    /// listed in the input.
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<PLTriple, D::Error> {
        use serde::de::Error as _;
        let j = TripleJson::deserialize(d)?;
        if j.psi.len() != 3 {
            return Err(D::Error::custom("a triple needs exactly three functions"));
        }
        let base = j.base;
        let fs: Vec<PLFunction> = j
            .psi
            .into_iter()
            .map(|p| match p {
                PsiJson::Triangulated { vertices, simplices, values } => {
                    let vertices = vertices.unwrap_or_else(|| base.generators().vertices.clone());
                    PLFunction::triangulated(base.clone(), vertices, simplices, values)
                }
                PsiJson::Envelope { combiner, pieces } => {
                    Ok(PLFunction::new(base.clone(), PLForm::Envelope { combiner, pieces }))
                }
            })
            .collect::<Result<_>>()
            .map_err(D::Error::custom)?;
        let [p0, p1, p2]: [PLFunction; 3] = fs.try_into().expect("three functions");
        PLTriple::new(base, p0, p1, p2).map_err(D::Error::custom)
    }
}

fn lift(a: &RatVec, last: Rat) -> RatVec {
    let mut v = a.clone();
    v.push(last);
    v
}

/// `{(x, y) : x in base, -Psi_1 <= y <= Psi_2 + Psi_0}` for side 1, with
/// `Psi_1` and `Psi_2` exchanged for side 2.
pub fn body_from_triple(t: &PLTriple, side: usize) -> Result<Polyhedron> {
    let (low, up) = match side {
        1 => (1, 2),
        2 => (2, 1),
        _ => return invalid(format!("side must be 1 or 2, got {side}")),
    };
    let d = t.base.dim();
    let bh = t.base.hrep();
    let mut h = HRep {
        inequalities: bh.inequalities.iter().map(|c| Constraint::new(lift(&c.a, Rat::zero()), c.b.clone())).collect(),
        equations: bh.equations.iter().map(|c| Constraint::new(lift(&c.a, Rat::zero()), c.b.clone())).collect(),
    };
    for u in t.pieces(low)? {
        // y + u . x >= 0
        h.inequalities.push(Constraint::new(lift(&u, Rat::one()), Rat::zero()));
    }
    let zero_pieces = t.pieces(0)?;
    for u in t.pieces(up)? {
        for w in &zero_pieces {
            // (u + w) . x - y >= 0
            h.inequalities.push(Constraint::new(lift(&(&u + w), -Rat::one()), Rat::zero()));
        }
    }
    Ok(Polyhedron::from_hrep(d + 1, h)?.dd_convert())
}

/// `{u : <u, x> >= Psi_i(x) for all x in the base}`.
pub fn nabla(t: &PLTriple, i: usize) -> Result<Polyhedron> {
    if i > 2 {
        return invalid("function index must be 0, 1 or 2");
    }
    let inequalities = t
        .nodes(i)?
        .into_iter()
        .map(|v| {
            let val = t.eval(i, &v)?;
            Ok(Constraint::new(v, val))
        })
        .collect::<Result<_>>()?;
    Ok(Polyhedron::from_hrep(t.base.dim(), HRep { inequalities, equations: Vec::new() })?.dd_convert())
}

/// `Cone(pos + e, neg - e)` in `Q^(d+1)`.
fn cone_over(pos: &Polyhedron, neg: &Polyhedron) -> Result<Polyhedron> {
    let d = pos.dim();
    let mut rays = Vec::new();
    let mut lineality = Vec::new();
    for (p, s) in [(pos, Rat::one()), (neg, -Rat::one())] {
        let g = p.vrep();
        rays.extend(g.vertices.iter().map(|v| lift(v, s.clone())));
        rays.extend(g.rays.iter().map(|r| lift(r, Rat::zero())));
        lineality.extend(g.lineality.iter().map(|l| lift(l, Rat::zero())));
    }
    Polyhedron::from_vrep(d + 1, VRep { vertices: vec![RatVec::zeros(d + 1)], rays, lineality })
}

/// `sigma_1 = Cone(nabla_1 + e, nabla_2 + nabla_0 - e)` and `sigma_2` with
/// `nabla_1`, `nabla_2` exchanged.
pub fn build_sigma(nabla: &[Polyhedron; 3]) -> Result<(Polyhedron, Polyhedron)> {
    let [n0, n1, n2] = nabla;
    let sigma1 = cone_over(n1, &n2.minkowski_sum(n0)?)?.dd_convert();
    let sigma2 = cone_over(n2, &n1.minkowski_sum(n0)?)?.dd_convert();
    Ok((sigma1, sigma2))
}

/// `sigma^dual` intersected with `x_1 = 1`.
pub fn dual_slice(sigma: &Polyhedron) -> Result<Polyhedron> {
    Ok(sigma.dual_cone()?.with_equation(RatVec::unit(sigma.dim(), 0), Rat::one())?.dd_convert())
}

/// `{u in sigma : <u, (eta, 0)> = 1}`.
pub fn slice(sigma: &Polyhedron, eta: &RatVec) -> Result<Polyhedron> {
    Ok(sigma.with_equation(lift(eta, Rat::zero()), Rat::one())?.dd_convert())
}

#[derive(Clone, Debug, Serialize)]
pub struct MutationFrame {
    pub nabla: [Polyhedron; 3],
    pub sigma1: Polyhedron,
    pub sigma2: Polyhedron,
    pub eta: RatVec,
    pub d1: Polyhedron,
    pub d2: Polyhedron,
}

/// Check that `eta` is interior with `Psi_1, Psi_2 > 0`, `Psi_0 = 0` there and
/// orthogonal to every vertex of `nabla_0`.
pub fn check_eta(t: &PLTriple, nabla0: &Polyhedron, eta: &RatVec) -> Result<()> {
    if eta.dim() != t.base.dim() {
        return invalid("eta has the wrong dimension");
    }
    let h = t.base.hrep();
    if h.equations.iter().any(|c| !c.slack(eta).is_zero()) || h.inequalities.iter().any(|c| !c.slack(eta).is_positive())
    {
        return invalid(format!("eta = {eta} is not in the interior of the base"));
    }
    let v: Vec<Rat> = (0..3).map(|i| t.eval(i, eta)).collect::<Result<_>>()?;
    if !v[1].is_positive() || !v[2].is_positive() || !v[0].is_zero() {
        return invalid(format!(
            "need Psi_1(eta), Psi_2(eta) > 0 and Psi_0(eta) = 0; got {}, {}, {}",
            v[1], v[2], v[0]
        ));
    }
    if let Some(u) = nabla0.vertices().iter().find(|u| !u.dot(eta).is_zero()) {
        return invalid(format!("vertex {u} of nabla_0 is not orthogonal to eta = {eta}"));
    }
    Ok(())
}

pub fn mutation_frame(t: &PLTriple, eta: &RatVec) -> Result<MutationFrame> {
    let nabla = [nabla(t, 0)?, nabla(t, 1)?, nabla(t, 2)?];
    check_eta(t, &nabla[0], eta)?;
    let (sigma1, sigma2) = build_sigma(&nabla)?;
    let (d1, d2) = mutation_slices(&sigma1, &sigma2, eta)?;
    Ok(MutationFrame { nabla, sigma1, sigma2, eta: eta.clone(), d1, d2 })
}

pub fn mutation_slices(sigma1: &Polyhedron, sigma2: &Polyhedron, eta: &RatVec) -> Result<(Polyhedron, Polyhedron)> {
    Ok((slice(sigma1, eta)?, slice(sigma2, eta)?))
}

/// Image of `p` under `(x, y) -> (x, y - l . x)`.
pub fn shear_last(p: &Polyhedron, l: &RatVec) -> Result<Polyhedron> {
    let d = p.dim();
    if l.dim() + 1 != d {
        return invalid("shear of the wrong dimension");
    }
    let f = |v: &RatVec| v.with_last(v.last() - &l.dot(&v.head(d - 1)));
    let g = p.generators();
    Polyhedron::from_vrep(
        d,
        VRep {
            vertices: g.vertices.iter().map(f).collect(),
            rays: g.rays.iter().map(f).collect(),
            lineality: g.lineality.iter().map(f).collect(),
        },
    )
}

/// The 5 x 5 weight matrix of the worked example: rows `u1, u2, u3, w1, w2`.
pub fn worked_matrix() -> RatMat {
    RatMat::from_ints(&[&[1, 1, 1, 1, 1], &[1, -1, 0, 0, 0], &[0, 0, 0, 0, 1], &[1, 0, 0, 1, 1], &[0, 0, 1, 0, 0]])
}

/// The triangle with vertices `(1,-1,0), (1,1,0), (1,0,1)` and the three
/// functions on it (`Psi_2` vanishes).
pub fn worked_triple() -> PLTriple {
    let p = |a: i64, b: i64| RatVec::from_ints(&[1, a, b]);
    let vertices = vec![p(-1, 0), p(0, 0), p(1, 0), p(0, 1)];
    let base = Polyhedron::convex_hull(&[p(-1, 0), p(1, 0), p(0, 1)]).expect("triangle");
    let split = vec![vec![0, 1, 3], vec![1, 2, 3]];
    let f = |simplices: Vec<Vec<usize>>, values: &[i64]| {
        PLFunction::triangulated(
            base.clone(),
            vertices.clone(),
            simplices,
            values.iter().map(|&x| Rat::int(x)).collect(),
        )
        .expect("valid triangulation")
    };
    PLTriple::new(
        base.clone(),
        f(split.clone(), &[0, 1, 1, 1]),
        f(split, &[0, 0, -1, -1]),
        f(vec![vec![0, 2, 3]], &[0, 0, 0, 0]),
    )
    .expect("valid triple")
}

/// Linear functions `l1`, `l2` moving the example into a position where an
/// admissible `eta` exists: `Psi_0 - l1 - l2 = min(x_2, 0)`.
pub fn worked_shear() -> (RatVec, RatVec) {
    (RatVec::from_ints(&[1, 0, -1]), RatVec::from_ints(&[0, 0, 1]))
}

/// `eta = (1, 0, 1/4)`.
pub fn worked_eta() -> RatVec {
    RatVec::new(vec![Rat::one(), Rat::zero(), Rat::new(1, 4)])
}

#[derive(Clone, Debug, Serialize)]
pub struct WorkedExampleReport {
    pub checks: Vec<Check>,
    pub body1: Polyhedron,
    pub body2: Polyhedron,
    pub frame: MutationFrame,
}

impl WorkedExampleReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Bodies and dual description of the worked example.
pub fn verify_worked_example() -> Result<WorkedExampleReport> {
    let a = worked_matrix();
    let t = worked_triple();
    let mut checks = Vec::new();
    let hull1 = Polyhedron::convex_hull(&a.select_rows(&[0, 1, 2, 3]).columns())?;
    let hull2 = Polyhedron::convex_hull(&a.select_rows(&[0, 1, 2, 4]).columns())?;
    let body1 = body_from_triple(&t, 1)?;
    let body2 = body_from_triple(&t, 2)?;
    checks.push(Check::from_bool("body-1", body1.set_eq(&hull1), "side 1 equals the hull without row 5"));
    checks.push(Check::from_bool("body-2", body2.set_eq(&hull2), "side 2 equals the hull without row 4"));

    let nab = [nabla(&t, 0)?, nabla(&t, 1)?, nabla(&t, 2)?];
    let (s1, s2) = build_sigma(&nab)?;
    checks.push(Check::from_bool("dual-1", dual_slice(&s1)?.set_eq(&body1), "sigma_1 dual at x_1 = 1 is body 1"));
    checks.push(Check::from_bool("dual-2", dual_slice(&s2)?.set_eq(&body2), "sigma_2 dual at x_1 = 1 is body 2"));

    let eta = worked_eta();
    let raw = check_eta(&t, &nab[0], &eta);
    checks.push(Check::from_bool(
        "raw-eta-rejected",
        raw.is_err(),
        "Psi_2 vanishes, so no eta with Psi_2(eta) > 0 exists before shearing",
    ));

    let (l1, l2) = worked_shear();
    let ts = t.sheared(&l1, &l2)?;
    let frame = mutation_frame(&ts, &eta)?;
    let sb1 = body_from_triple(&ts, 1)?;
    let sb2 = body_from_triple(&ts, 2)?;
    checks.push(Check::from_bool(
        "sheared-bodies",
        sb1.set_eq(&shear_last(&hull1, &l1)?) && sb2.set_eq(&shear_last(&hull2, &l2)?),
        "shearing the functions shears the bodies",
    ));
    checks.push(Check::from_bool(
        "sheared-duality",
        dual_slice(&frame.sigma1)?.set_eq(&sb1) && dual_slice(&frame.sigma2)?.set_eq(&sb2),
        "duality after shearing",
    ));
    let recovered = |d: &Polyhedron, s: &Polyhedron| -> Result<bool> {
        Ok(d.is_bounded() && Polyhedron::cone_hull(d.vertices())?.set_eq(s))
    };
    checks.push(Check::from_bool(
        "slices-generate",
        recovered(&frame.d1, &frame.sigma1)? && recovered(&frame.d2, &frame.sigma2)?,
        "each sigma_i is the cone over D_i",
    ));
    checks.push(Check::from_bool("mutation-nontrivial", !frame.d1.set_eq(&frame.d2), "D_1 differs from D_2"));
    Ok(WorkedExampleReport { checks, body1, body2, frame })
}
