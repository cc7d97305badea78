//! Convex polyhedra with both a generator (V) and a constraint (H) description.

use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::Signed;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::dd::cone_generators;
use super::linalg::{first_sign, make_primitive, primitive, rank, rref, to_rat};
use super::plfunc::{Affine, Combiner, PLForm, PLFunction};
use super::rat::{Rat, RatVec};
use crate::error::{invalid, Error, Result};

/// Generators: `conv(vertices) + cone(rays) + span(lineality)`.
///
/// A nonempty polyhedron always has at least one vertex; a list without
/// vertices describes the empty set.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct VRep {
    pub vertices: Vec<RatVec>,
    #[serde(default)]
    pub rays: Vec<RatVec>,
    #[serde(default)]
    pub lineality: Vec<RatVec>,
}

/// The constraint `a . x >= b` (inequality) or `a . x = b` (equation).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Constraint {
    pub a: RatVec,
    pub b: Rat,
}

impl Constraint {
    pub fn new(a: RatVec, b: Rat) -> Constraint {
        Constraint { a, b }
    }

    /// `a . x - b`.
    pub fn slack(&self, x: &RatVec) -> Rat {
        self.a.dot(x) - &self.b
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct HRep {
    #[serde(default)]
    pub inequalities: Vec<Constraint>,
    #[serde(default)]
    pub equations: Vec<Constraint>,
}

impl HRep {
    fn infeasible(dim: usize) -> HRep {
        HRep { inequalities: vec![Constraint::new(RatVec::zeros(dim), Rat::one())], equations: Vec::new() }
    }

    /// A canonical form for comparing constraint systems: equations in
    /// reduced echelon form, inequalities reduced modulo the equations and
    /// scaled to primitive integer rows, everything sorted.
    pub fn canonical(&self, dim: usize) -> HRep {
        let eq_rows: Vec<RatVec> = self.equations.iter().map(augmented).collect();
        let (eqs, pivots) = rref(&eq_rows, dim + 1);
        let mut inequalities: Vec<Constraint> = self
            .inequalities
            .iter()
            .map(|c| {
                let mut row = augmented(c);
                for (e, &p) in eqs.iter().zip(&pivots) {
                    let f = row[p].clone();
                    if !f.is_zero() {
                        row = &row - &e.scale(&f);
                    }
                }
                let v = to_rat(&primitive(&row));
                Constraint::new(v.head(dim), -v[dim].clone())
            })
            .collect();
        inequalities.sort();
        inequalities.dedup();
        let equations = eqs.iter().map(|e| Constraint::new(e.head(dim), -e[dim].clone())).collect();
        HRep { inequalities, equations }
    }
}

fn augmented(c: &Constraint) -> RatVec {
    let mut row = c.a.clone();
    row.push(-&c.b);
    row
}

/// A convex polyhedron in `Q^dim`.
///
/// Whichever description the value was built from is kept as given; the
/// minimal descriptions are computed on demand and cached.
#[derive(Clone)]
pub struct Polyhedron {
    dim: usize,
    given_v: Option<VRep>,
    given_h: Option<HRep>,
    vrep: OnceLock<VRep>,
    hrep: OnceLock<HRep>,
}

impl Polyhedron {
    pub fn from_vrep(dim: usize, v: VRep) -> Result<Polyhedron> {
        for x in v.vertices.iter().chain(&v.rays).chain(&v.lineality) {
            if x.dim() != dim {
                return invalid(format!("generator {x:?} does not have dimension {dim}"));
            }
        }
        if v.vertices.is_empty() && !(v.rays.is_empty() && v.lineality.is_empty()) {
            return invalid("rays or lineality given without any vertex");
        }
        Ok(Polyhedron { dim, given_v: Some(v), given_h: None, vrep: OnceLock::new(), hrep: OnceLock::new() })
    }

    pub fn from_hrep(dim: usize, h: HRep) -> Result<Polyhedron> {
        for c in h.inequalities.iter().chain(&h.equations) {
            if c.a.dim() != dim {
                return invalid(format!("constraint {:?} does not have dimension {dim}", c.a));
            }
        }
        Ok(Polyhedron { dim, given_v: None, given_h: Some(h), vrep: OnceLock::new(), hrep: OnceLock::new() })
    }

    pub fn empty(dim: usize) -> Polyhedron {
        Polyhedron::from_vrep(dim, VRep::default()).expect("empty V-rep is valid")
    }

    /// All of `Q^dim`.
    pub fn universe(dim: usize) -> Polyhedron {
        Polyhedron::from_hrep(dim, HRep::default()).expect("empty H-rep is valid")
    }

    pub fn convex_hull(points: &[RatVec]) -> Result<Polyhedron> {
        let Some(first) = points.first() else {
            return invalid("convex hull of no points");
        };
        Polyhedron::from_vrep(first.dim(), VRep { vertices: points.to_vec(), ..VRep::default() })
    }

    pub fn cone_hull(gens: &[RatVec]) -> Result<Polyhedron> {
        let Some(first) = gens.first() else {
            return invalid("cone over no generators");
        };
        let dim = first.dim();
        Polyhedron::from_vrep(
            dim,
            VRep { vertices: vec![RatVec::zeros(dim)], rays: gens.to_vec(), lineality: Vec::new() },
        )
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Minimal generators.
    pub fn vrep(&self) -> &VRep {
        self.vrep.get_or_init(|| match &self.given_h {
            Some(h) => h_to_v(self.dim, h),
            None => h_to_v(self.dim, self.hrep()),
        })
    }

    /// Minimal constraints.
    pub fn hrep(&self) -> &HRep {
        self.hrep.get_or_init(|| match &self.given_v {
            Some(v) => v_to_h(self.dim, v),
            None => v_to_h(self.dim, self.vrep()),
        })
    }

    /// Generators, possibly redundant (cheapest available).
    pub fn generators(&self) -> &VRep {
        self.given_v.as_ref().unwrap_or_else(|| self.vrep())
    }

    /// Constraints, possibly redundant (cheapest available).
    pub fn constraints(&self) -> &HRep {
        self.given_h.as_ref().unwrap_or_else(|| self.hrep())
    }

    /// A copy with both minimal descriptions populated.
    pub fn dd_convert(&self) -> Polyhedron {
        let v = self.vrep().clone();
        let h = self.hrep().clone();
        let p = Polyhedron::from_vrep(self.dim, v.clone()).expect("consistent dimensions");
        let _ = p.vrep.set(v);
        let _ = p.hrep.set(h);
        p
    }

    pub fn vertices(&self) -> &[RatVec] {
        &self.vrep().vertices
    }

    pub fn is_empty(&self) -> bool {
        self.generators().vertices.is_empty()
    }

    pub fn is_bounded(&self) -> bool {
        let v = self.vrep();
        v.rays.is_empty() && v.lineality.is_empty()
    }

    pub fn is_cone(&self) -> bool {
        let v = self.vrep();
        v.vertices.len() == 1 && v.vertices[0].is_zero()
    }

    /// Dimension of the affine hull, `None` for the empty set.
    pub fn affine_dim(&self) -> Option<usize> {
        let v = self.vrep();
        let first = v.vertices.first()?;
        let mut rows: Vec<RatVec> = v.vertices[1..].iter().map(|x| x - first).collect();
        rows.extend(v.rays.iter().cloned());
        rows.extend(v.lineality.iter().cloned());
        Some(rank(&rows, self.dim))
    }

    pub fn contains_point(&self, x: &RatVec) -> bool {
        let h = self.constraints();
        h.equations.iter().all(|c| c.slack(x).is_zero()) && h.inequalities.iter().all(|c| !c.slack(x).is_negative())
    }

    /// Whether `other` is a subset of `self`.
    pub fn contains(&self, other: &Polyhedron) -> bool {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        let g = other.generators();
        if g.vertices.is_empty() {
            return true;
        }
        let h = self.constraints();
        let dir_ok = |c: &Constraint, r: &RatVec, strict: bool| {
            let s = c.a.dot(r);
            if strict {
                s.is_zero()
            } else {
                !s.is_negative()
            }
        };
        g.vertices.iter().all(|v| {
            h.equations.iter().all(|c| c.slack(v).is_zero()) && h.inequalities.iter().all(|c| !c.slack(v).is_negative())
        }) && g.rays.iter().all(|r| {
            h.equations.iter().all(|c| dir_ok(c, r, true)) && h.inequalities.iter().all(|c| dir_ok(c, r, false))
        }) && g.lineality.iter().all(|l| h.equations.iter().chain(&h.inequalities).all(|c| dir_ok(c, l, true)))
    }

    /// Set equality by mutual containment.
    pub fn set_eq(&self, other: &Polyhedron) -> bool {
        self.dim == other.dim && self.contains(other) && other.contains(self)
    }

    /// Image under the coordinate projection keeping `keep` (in that order).
    pub fn project(&self, keep: &[usize]) -> Result<Polyhedron> {
        if let Some(&i) = keep.iter().find(|&&i| i >= self.dim) {
            return invalid(format!("coordinate {i} out of range for dimension {}", self.dim));
        }
        let g = self.generators();
        let sel = |xs: &[RatVec]| xs.iter().map(|x| x.select(keep)).collect::<Vec<_>>();
        Polyhedron::from_vrep(
            keep.len(),
            VRep { vertices: sel(&g.vertices), rays: sel(&g.rays), lineality: sel(&g.lineality) },
        )
    }

    /// Projection forgetting the last coordinate.
    pub fn project_drop_last(&self) -> Result<Polyhedron> {
        let keep: Vec<usize> = (0..self.dim.saturating_sub(1)).collect();
        self.project(&keep)
    }

    pub fn minkowski_sum(&self, other: &Polyhedron) -> Result<Polyhedron> {
        if self.dim != other.dim {
            return invalid("Minkowski sum of polyhedra of different dimensions");
        }
        if self.is_empty() || other.is_empty() {
            return Ok(Polyhedron::empty(self.dim));
        }
        let (a, b) = (self.vrep(), other.vrep());
        let mut vertices = Vec::with_capacity(a.vertices.len() * b.vertices.len());
        for x in &a.vertices {
            for y in &b.vertices {
                vertices.push(x + y);
            }
        }
        let rays = a.rays.iter().chain(&b.rays).cloned().collect();
        let lineality = a.lineality.iter().chain(&b.lineality).cloned().collect();
        Polyhedron::from_vrep(self.dim, VRep { vertices, rays, lineality })
    }

    /// `{u : u . x >= 0 for all x in self}`; `self` must be a cone.
    pub fn dual_cone(&self) -> Result<Polyhedron> {
        let given = self.generators();
        let g = if !given.vertices.is_empty() && given.vertices.iter().all(RatVec::is_zero) {
            given
        } else if self.is_cone() {
            self.vrep()
        } else {
            return invalid("dual cone of a polyhedron that is not a cone");
        };
        let inequalities = g.rays.iter().map(|r| Constraint::new(r.clone(), Rat::zero())).collect();
        let equations = g.lineality.iter().map(|l| Constraint::new(l.clone(), Rat::zero())).collect();
        Polyhedron::from_hrep(self.dim, HRep { inequalities, equations })
    }

    pub fn intersect(&self, other: &Polyhedron) -> Result<Polyhedron> {
        if self.dim != other.dim {
            return invalid("intersection of polyhedra of different dimensions");
        }
        let (a, b) = (self.constraints(), other.constraints());
        Polyhedron::from_hrep(
            self.dim,
            HRep {
                inequalities: a.inequalities.iter().chain(&b.inequalities).cloned().collect(),
                equations: a.equations.iter().chain(&b.equations).cloned().collect(),
            },
        )
    }

    /// Intersection with the hyperplane `a . x = b`.
    pub fn with_equation(&self, a: RatVec, b: Rat) -> Result<Polyhedron> {
        let mut h = self.constraints().clone();
        h.equations.push(Constraint::new(a, b));
        Polyhedron::from_hrep(self.dim, h)
    }

    /// Image under `x -> t x`.
    pub fn scale(&self, t: &Rat) -> Result<Polyhedron> {
        let g = self.generators();
        let vertices = g.vertices.iter().map(|v| v.scale(t)).collect();
        Polyhedron::from_vrep(self.dim, VRep { vertices, rays: g.rays.clone(), lineality: g.lineality.clone() })
    }

    /// Average of the minimal vertices.
    pub fn barycenter(&self) -> Option<RatVec> {
        let vs = self.vertices();
        let first = vs.first()?;
        let mut acc = RatVec::zeros(first.dim());
        for v in vs {
            acc = &acc + v;
        }
        Some(acc.scale(&Rat::new(1, vs.len() as i64)))
    }

    /// Range of the last coordinate over the fiber above `base`.
    ///
    /// Returns `Ok(None)` when the fiber is empty.
    pub fn fiber_interval(&self, base: &RatVec) -> Result<Option<(Rat, Rat)>> {
        if base.dim() + 1 != self.dim {
            return invalid(format!("base point of dimension {} for polyhedron of dimension {}", base.dim(), self.dim));
        }
        let k = self.dim - 1;
        let h = self.constraints();
        let mut lo: Option<Rat> = None;
        let mut hi: Option<Rat> = None;
        for c in &h.equations {
            let rest = c.b.clone() - c.a.head(k).dot(base);
            let t = &c.a[k];
            if t.is_zero() {
                if !rest.is_zero() {
                    return Ok(None);
                }
            } else {
                let z = rest / t;
                lo = Some(lo.map_or(z.clone(), |l| l.max(z.clone())));
                hi = Some(hi.map_or(z.clone(), |u| u.min(z)));
            }
        }
        for c in &h.inequalities {
            let rest = c.b.clone() - c.a.head(k).dot(base);
            let t = &c.a[k];
            if t.is_zero() {
                if rest.is_positive() {
                    return Ok(None);
                }
            } else if t.is_positive() {
                let z = rest / t;
                lo = Some(lo.map_or(z.clone(), |l| l.max(z)));
            } else {
                let z = rest / t;
                hi = Some(hi.map_or(z.clone(), |u| u.min(z)));
            }
        }
        match (lo, hi) {
            (Some(l), Some(u)) => Ok(if l > u { None } else { Some((l, u)) }),
            _ => {
                if self.is_empty() {
                    Ok(None)
                } else {
                    Err(Error::Unbounded)
                }
            }
        }
    }

    /// Lower and upper envelopes of the last coordinate as functions on the
    /// projection forgetting it.
    pub fn envelopes(&self) -> Result<(PLFunction, PLFunction)> {
        if self.dim == 0 {
            return invalid("envelopes of a 0-dimensional polyhedron");
        }
        let k = self.dim - 1;
        let domain = self.project_drop_last()?;
        let h = self.hrep();
        let piece = |c: &Constraint| {
            let t = &c.a[k];
            Affine::new(c.a.head(k).scale(&(-t.recip())), &c.b / t)
        };
        let (lower, upper) = if let Some(e) = h.equations.iter().find(|c| !c.a[k].is_zero()) {
            (vec![piece(e)], vec![piece(e)])
        } else {
            let lower: Vec<Affine> = h.inequalities.iter().filter(|c| c.a[k].is_positive()).map(piece).collect();
            let upper: Vec<Affine> = h.inequalities.iter().filter(|c| c.a[k].is_negative()).map(piece).collect();
            (lower, upper)
        };
        if !self.is_empty() && (lower.is_empty() || upper.is_empty()) {
            return Err(Error::Unbounded);
        }
        Ok((
            PLFunction::new(domain.clone(), PLForm::Envelope { combiner: Combiner::Max, pieces: lower }),
            PLFunction::new(domain, PLForm::Envelope { combiner: Combiner::Min, pieces: upper }),
        ))
    }
}

impl fmt::Debug for Polyhedron {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Polyhedron").field("dim", &self.dim).field("vrep", self.generators()).finish()
    }
}

fn ints(v: &RatVec) -> Vec<BigInt> {
    primitive(v)
}

fn homogenize(b: &Rat, a: &RatVec) -> Vec<BigInt> {
    let mut row = Vec::with_capacity(a.dim() + 1);
    row.push(-b);
    row.extend(a.iter().cloned());
    primitive(&row)
}

fn sign_normalized(mut v: Vec<BigInt>) -> Vec<BigInt> {
    if first_sign(&v) < 0 {
        v.iter_mut().for_each(|x| *x = -&*x);
    }
    v
}

fn h_to_v(dim: usize, h: &HRep) -> VRep {
    let mut ineqs = Vec::with_capacity(h.inequalities.len() + 1);
    let mut t = vec![BigInt::from(0); dim + 1];
    t[0] = BigInt::from(1);
    ineqs.push(t);
    ineqs.extend(h.inequalities.iter().map(|c| homogenize(&c.b, &c.a)));
    let eqs: Vec<Vec<BigInt>> = h.equations.iter().map(|c| homogenize(&c.b, &c.a)).collect();
    let g = cone_generators(dim + 1, &ineqs, &eqs);

    let mut out = VRep::default();
    for r in &g.rays {
        if r[0].is_positive() {
            let t = Rat::from_bigint(r[0].clone());
            out.vertices.push(r[1..].iter().map(|x| Rat::from_bigint(x.clone()) / &t).collect());
        } else {
            out.rays.push(to_rat(&r[1..]));
        }
    }
    if out.vertices.is_empty() {
        return VRep::default();
    }
    out.lineality = g.lineality.into_iter().map(|l| to_rat(&sign_normalized(l[1..].to_vec()))).collect();
    out.vertices.sort();
    out.rays.sort();
    out
}

fn v_to_h(dim: usize, v: &VRep) -> HRep {
    if v.vertices.is_empty() {
        return HRep::infeasible(dim);
    }
    let lift = |t: i64, x: &RatVec| {
        let mut row = Vec::with_capacity(dim + 1);
        row.push(Rat::int(t));
        row.extend(x.iter().cloned());
        ints(&RatVec::new(row))
    };
    let mut gens: Vec<Vec<BigInt>> = v.vertices.iter().map(|x| lift(1, x)).collect();
    gens.extend(v.rays.iter().map(|x| lift(0, x)));
    let lin: Vec<Vec<BigInt>> = v.lineality.iter().map(|x| lift(0, x)).collect();
    let g = cone_generators(dim + 1, &gens, &lin);

    let mut out = HRep::default();
    for c in g.rays {
        if c[1..].iter().all(|x| x.sign() == num_bigint::Sign::NoSign) {
            continue;
        }
        out.inequalities.push(Constraint::new(to_rat(&c[1..]), Rat::from_bigint(-&c[0])));
    }
    for mut c in g.lineality {
        make_primitive(&mut c);
        let c = sign_normalized_tail(c);
        out.equations.push(Constraint::new(to_rat(&c[1..]), Rat::from_bigint(-&c[0])));
    }
    out.inequalities.sort();
    out
}

/// Normalize so that the first nonzero coefficient of `a` is positive.
fn sign_normalized_tail(mut c: Vec<BigInt>) -> Vec<BigInt> {
    if first_sign(&c[1..]) < 0 {
        c.iter_mut().for_each(|x| *x = -&*x);
    }
    c
}

#[derive(Serialize, Deserialize)]
struct PolyhedronJson {
    dim: usize,
    #[serde(default)]
    vertices: Vec<RatVec>,
    #[serde(default)]
    rays: Vec<RatVec>,
    #[serde(default)]
    lineality: Vec<RatVec>,
    #[serde(default)]
    inequalities: Vec<Constraint>,
    #[serde(default)]
    equations: Vec<Constraint>,
}

impl Serialize for Polyhedron {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let v = self.vrep().clone();
        let h = self.hrep().clone();
        PolyhedronJson {
            dim: self.dim,
            vertices: v.vertices,
            rays: v.rays,
            lineality: v.lineality,
            inequalities: h.inequalities,
            equations: h.equations,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Polyhedron {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Polyhedron, D::Error> {
        use serde::de::Error as _;
        let j = PolyhedronJson::deserialize(d)?;
        let p = if j.vertices.is_empty() && j.rays.is_empty() && j.lineality.is_empty() {
            Polyhedron::from_hrep(j.dim, HRep { inequalities: j.inequalities, equations: j.equations })
        } else {
            Polyhedron::from_vrep(j.dim, VRep { vertices: j.vertices, rays: j.rays, lineality: j.lineality })
        };
        p.map_err(D::Error::custom)
    }
}
