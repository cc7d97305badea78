//! Piecewise-linear functions on polyhedra.

use serde::{Deserialize, Serialize};

use std::collections::BTreeSet;

use super::linalg::solve;
use super::polyhedron::{Constraint, HRep, Polyhedron};
use super::rat::{Rat, RatVec};
use crate::error::{invalid, Error, Result};

/// `x -> coeffs . x + constant`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Affine {
    pub coeffs: RatVec,
    pub constant: Rat,
}

impl Affine {
    pub fn new(coeffs: RatVec, constant: Rat) -> Affine {
        Affine { coeffs, constant }
    }

    pub fn eval(&self, x: &RatVec) -> Rat {
        self.coeffs.dot(x) + &self.constant
    }

    pub fn sub(&self, other: &Affine) -> Affine {
        Affine::new(&self.coeffs - &other.coeffs, &self.constant - &other.constant)
    }

    pub fn add(&self, other: &Affine) -> Affine {
        Affine::new(&self.coeffs + &other.coeffs, &self.constant + &other.constant)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Combiner {
    Min,
    Max,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "form", rename_all = "lowercase")]
pub enum PLForm {
    /// Pointwise min or max of affine pieces.
    Envelope { combiner: Combiner, pieces: Vec<Affine> },
    /// Affine interpolation of vertex values on each simplex.
    Triangulated { vertices: Vec<RatVec>, simplices: Vec<Vec<usize>>, values: Vec<Rat> },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PLFunction {
    pub domain: Polyhedron,
    #[serde(flatten)]
    pub form: PLForm,
}

impl PLFunction {
    pub fn new(domain: Polyhedron, form: PLForm) -> PLFunction {
        PLFunction { domain, form }
    }

    /// A triangulated function; checks indices and that every simplex is
    /// affinely independent.
    pub fn triangulated(
        domain: Polyhedron,
        vertices: Vec<RatVec>,
        simplices: Vec<Vec<usize>>,
        values: Vec<Rat>,
    ) -> Result<PLFunction> {
        if vertices.len() != values.len() {
            return invalid("triangulated function needs one value per vertex");
        }
        let f = PLFunction::new(domain, PLForm::Triangulated { vertices, simplices, values });
        f.simplex_pieces()?;
        Ok(f)
    }

    pub fn eval(&self, x: &RatVec) -> Result<Rat> {
        match &self.form {
            PLForm::Envelope { combiner, pieces } => {
                let vals = pieces.iter().map(|p| p.eval(x));
                let v = match combiner {
                    Combiner::Min => vals.min(),
                    Combiner::Max => vals.max(),
                };
                v.ok_or_else(|| Error::InvalidInput("envelope with no pieces".into()))
            }
            PLForm::Triangulated { vertices, simplices, values } => {
                for s in simplices {
                    if let Some(w) = barycentric(vertices, s, x) {
                        if w.iter().all(|c| !c.is_negative()) {
                            return Ok(s.iter().zip(&w).map(|(&i, c)| c * &values[i]).sum());
                        }
                    }
                }
                Err(Error::Domain { point: x.clone(), reason: "no simplex contains the point".into() })
            }
        }
    }

    /// Affine pieces: the envelope pieces, or one interpolant per simplex.
    ///
    /// Simplex vertices are points with first coordinate 1, and the pieces
    /// returned for them are linear (constant 0).
    pub fn pieces(&self) -> Result<Vec<Affine>> {
        match &self.form {
            PLForm::Envelope { pieces, .. } => Ok(pieces.clone()),
            PLForm::Triangulated { .. } => self.simplex_pieces(),
        }
    }

    /// Regions on which the function is affine, as constraint systems
    /// (without the domain constraints).
    ///
    /// For an envelope, piece `i` owns the region where it attains the min
    /// or max; for a triangulation, each simplex is a region.
    pub fn cells(&self) -> Result<Vec<HRep>> {
        match &self.form {
            PLForm::Envelope { combiner, pieces } => {
                let mut ps = pieces.clone();
                ps.sort();
                ps.dedup();
                Ok(ps
                    .iter()
                    .map(|p| {
                        let inequalities = ps
                            .iter()
                            .filter(|q| *q != p)
                            .map(|q| {
                                // Max: p - q >= 0.  Min: q - p >= 0.
                                let d = match combiner {
                                    Combiner::Max => p.sub(q),
                                    Combiner::Min => q.sub(p),
                                };
                                Constraint::new(d.coeffs, -d.constant)
                            })
                            .collect();
                        HRep { inequalities, equations: Vec::new() }
                    })
                    .collect())
            }
            PLForm::Triangulated { vertices, simplices, .. } => simplices
                .iter()
                .map(|s| {
                    let pts: Vec<RatVec> = s.iter().map(|&i| vertices[i].clone()).collect();
                    Ok(Polyhedron::convex_hull(&pts)?.hrep().clone())
                })
                .collect(),
        }
    }

    fn simplex_pieces(&self) -> Result<Vec<Affine>> {
        let PLForm::Triangulated { vertices, simplices, values } = &self.form else {
            return Ok(Vec::new());
        };
        let dim = self.domain.dim();
        simplices
            .iter()
            .map(|s| {
                if s.len() != dim || s.iter().any(|&i| i >= vertices.len()) {
                    return invalid(format!("simplex {s:?} is not a list of {dim} vertex indices"));
                }
                let rows: Vec<RatVec> = s.iter().map(|&i| vertices[i].clone()).collect();
                if super::linalg::rank(&rows, dim) < dim {
                    return invalid(format!("simplex {s:?} is degenerate"));
                }
                let b: Vec<Rat> = s.iter().map(|&i| values[i].clone()).collect();
                let u = solve(&rows, &b, dim).expect("full rank system");
                Ok(Affine::new(u, Rat::zero()))
            })
            .collect()
    }
}

/// Coordinates of `x` in the linear basis given by the simplex vertices.
fn barycentric(vertices: &[RatVec], s: &[usize], x: &RatVec) -> Option<Vec<Rat>> {
    let dim = x.dim();
    // Solve sum_k w_k v_k = x, i.e. the transposed system.
    let rows: Vec<RatVec> = (0..dim).map(|r| s.iter().map(|&i| vertices[i][r].clone()).collect()).collect();
    let w = solve(&rows, x, s.len())?;
    let back: RatVec = (0..dim).map(|r| s.iter().zip(w.iter()).map(|(&i, c)| c * &vertices[i][r]).sum()).collect();
    (back == *x).then(|| w.to_vec())
}

/// Vertices of the common refinement of the affine regions of `fns` inside
/// `domain`. Every function is affine on each cell of the refinement, so
/// an identity between them holds on the domain iff it holds at these points
/// (for a bounded domain).
pub fn refinement_vertices(domain: &Polyhedron, fns: &[&PLFunction]) -> Result<Vec<RatVec>> {
    let dim = domain.dim();
    let cells: Vec<Vec<HRep>> = fns.iter().map(|f| f.cells()).collect::<Result<_>>()?;
    for c in cells.iter().flatten() {
        if c.inequalities.iter().chain(&c.equations).any(|k| k.a.dim() != dim) {
            return invalid("function cells do not match the domain dimension");
        }
    }
    let mut out = BTreeSet::new();
    refine(dim, domain.hrep().clone(), &cells, &mut out)?;
    Ok(out.into_iter().collect())
}

fn refine(dim: usize, acc: HRep, cells: &[Vec<HRep>], out: &mut BTreeSet<RatVec>) -> Result<()> {
    let Some((first, rest)) = cells.split_first() else {
        let p = Polyhedron::from_hrep(dim, acc)?;
        if !p.is_bounded() {
            return Err(Error::Unbounded);
        }
        out.extend(p.vertices().iter().cloned());
        return Ok(());
    };
    for c in first {
        let mut h = acc.clone();
        h.inequalities.extend(c.inequalities.iter().cloned());
        h.equations.extend(c.equations.iter().cloned());
        let p = Polyhedron::from_hrep(dim, h)?;
        if p.is_empty() {
            continue;
        }
        refine(dim, p.hrep().clone(), rest, out)?;
    }
    Ok(())
}
