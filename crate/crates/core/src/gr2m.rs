//! Weight matrices, closed-form wall-crossing and straightening for `Gr(2,m)`.
//!
//! Coordinates: rows of `M_tau` and `M~_tau` follow the edge order of the
//! tree (see [`crate::trees`]), columns follow the lexicographic pair order.

use serde::Serialize;

use crate::error::{invalid, Error, Result};
use crate::kernel::{Constraint, HRep, Polyhedron, Rat, RatMat, RatVec};
use crate::trees::{adjacency, check_groebner_cone, groebner_relabel, num_pairs, pair_index, Adjacency, TrivalentTree};
use crate::tropcore::monomials_up_to;

/// Exponent vector over the pair variables (or any variables).
pub type Exponent = Vec<u32>;

/// `M_tau`: the all-ones row, pendant distances for leaves `2..=m`, then
/// `1 - d_e` for each interior edge.
pub fn build_m(t: &TrivalentTree) -> RatMat {
    let n = num_pairs(t.m());
    let mut rows = vec![RatVec::new(vec![Rat::one(); n])];
    for e in 1..t.num_edges() {
        let d = t.tree_distance(e).expect("valid edge");
        if e < t.m() {
            rows.push(d);
        } else {
            rows.push(d.iter().map(|x| Rat::one() - x).collect());
        }
    }
    RatMat::from_rows(rows).expect("rectangular")
}

/// `M~_tau`: row `a` is the path indicator of edge `a`.
pub fn build_mtilde(t: &TrivalentTree) -> RatMat {
    RatMat::from_rows((0..t.num_edges()).map(|e| t.tree_distance(e).expect("valid edge")).collect())
        .expect("rectangular")
}

fn check_len(v: &RatVec, m: usize) -> Result<()> {
    if v.dim() != 2 * m - 3 {
        return invalid(format!("expected a vector of length {}, got {}", 2 * m - 3, v.dim()));
    }
    Ok(())
}

/// The linear isomorphism taking the cone of `M~_tau` to the cone of `M_tau`.
pub fn gamma(z: &RatVec, m: usize) -> Result<RatVec> {
    check_len(z, m)?;
    let half_sum: Rat = z[..m].iter().sum::<Rat>() / Rat::int(2);
    let mut y = z.clone();
    y.set(0, half_sum.clone());
    for a in m..z.dim() {
        y.set(a, &half_sum - &z[a]);
    }
    Ok(y)
}

pub fn gamma_inv(y: &RatVec, m: usize) -> Result<RatVec> {
    check_len(y, m)?;
    let rest: Rat = y[1..m].iter().sum();
    let mut z = y.clone();
    z.set(0, Rat::int(2) * &y[0] - rest);
    for a in m..y.dim() {
        z.set(a, &y[0] - &y[a]);
    }
    Ok(z)
}

/// Triangle inequalities at the interior vertices of a tree.
#[derive(Clone, Debug)]
pub struct NoharaUeda {
    pub m: usize,
    /// Homogeneous inequalities `a . z >= 0`.
    pub inequalities: Vec<Constraint>,
    /// `z_1 + ... + z_m = 2`.
    pub level: Constraint,
}

impl NoharaUeda {
    /// The cone cut out by the inequalities.
    pub fn cone(&self) -> Polyhedron {
        Polyhedron::from_hrep(2 * self.m - 3, HRep { inequalities: self.inequalities.clone(), equations: vec![] })
            .expect("consistent dimensions")
    }

    /// The polytope: the cone at level 2.
    pub fn polytope(&self) -> Polyhedron {
        Polyhedron::from_hrep(
            2 * self.m - 3,
            HRep { inequalities: self.inequalities.clone(), equations: vec![self.level.clone()] },
        )
        .expect("consistent dimensions")
    }

    /// The first violated inequality at `z`, if any.
    pub fn violated(&self, z: &RatVec) -> Option<&Constraint> {
        self.inequalities.iter().find(|c| c.slack(z).is_negative())
    }
}

pub fn nohara_ueda(t: &TrivalentTree) -> NoharaUeda {
    let n = t.num_edges();
    let mut inequalities = Vec::with_capacity(3 * (t.m() - 2));
    for [a, b, c] in t.interior_vertices() {
        for (x, y, z) in [(a, b, c), (b, a, c), (c, a, b)] {
            // z_y + z_z - z_x >= 0
            let mut v = RatVec::zeros(n);
            v.set(x, -Rat::one());
            v.set(y, Rat::one());
            v.set(z, Rat::one());
            inequalities.push(Constraint::new(v, Rat::zero()));
        }
    }
    let level: RatVec = (0..n).map(|e| if e < t.m() { Rat::one() } else { Rat::zero() }).collect();
    NoharaUeda { m: t.m(), inequalities, level: Constraint::new(level, Rat::int(2)) }
}

/// How a tree splits four leaves `i<j<k<l`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Quartet {
    /// `ij | kl`
    Parallel,
    /// `il | jk`
    Nested,
    /// `ik | jl`: impossible for a tree in the Gröbner cone.
    Crossing,
}

pub fn quartet(t: &TrivalentTree, q: [usize; 4]) -> Quartet {
    let [i, j, k, l] = q;
    let bit = |x: usize| 1u64 << (x - 1);
    for &s in t.split_sets() {
        let inside: u64 = [i, j, k, l].iter().map(|&x| s & bit(x)).fold(0, |a, b| a | b);
        if inside.count_ones() != 2 {
            continue;
        }
        let pair = |a: usize, b: usize| inside == bit(a) | bit(b);
        if pair(i, j) || pair(k, l) {
            return Quartet::Parallel;
        }
        if pair(i, l) || pair(j, k) {
            return Quartet::Nested;
        }
        return Quartet::Crossing;
    }
    unreachable!("every quartet is resolved in a trivalent tree")
}

/// Whether no crossing pair `(ik)(jl)`, `i<j<k<l`, occurs in `alpha`.
pub fn is_standard(alpha: &[u32], m: usize) -> bool {
    crossing_quadruples(alpha, m).is_empty()
}

/// All `i<j<k<l` with `alpha_ik > 0` and `alpha_jl > 0`, lexicographically.
pub fn crossing_quadruples(alpha: &[u32], m: usize) -> Vec<[usize; 4]> {
    let mut out = Vec::new();
    for i in 1..=m {
        for j in i + 1..=m {
            for k in j + 1..=m {
                if alpha[pair_index(m, i, k)] == 0 {
                    continue;
                }
                for l in k + 1..=m {
                    if alpha[pair_index(m, j, l)] > 0 {
                        out.push([i, j, k, l]);
                    }
                }
            }
        }
    }
    out
}

/// Replace one crossing pair `(ik)(jl)` by the pair of the same
/// `M_tau`-value: `(il)(jk)` for an `ij|kl` quartet, `(ij)(kl)` for `il|jk`.
pub fn rewrite(alpha: &mut [u32], t: &TrivalentTree, q: [usize; 4]) -> Result<()> {
    let m = t.m();
    let [i, j, k, l] = q;
    let (ik, jl) = (pair_index(m, i, k), pair_index(m, j, l));
    if alpha[ik] == 0 || alpha[jl] == 0 {
        return invalid(format!("{q:?} is not a crossing pair of the exponent"));
    }
    let (p, r) = match quartet(t, q) {
        Quartet::Parallel => (pair_index(m, i, l), pair_index(m, j, k)),
        Quartet::Nested => (pair_index(m, i, j), pair_index(m, k, l)),
        Quartet::Crossing => {
            return invalid(format!("tree {t:?} splits {q:?} as ik|jl; relabel the trees with groebner_relabel first"))
        }
    };
    alpha[ik] -= 1;
    alpha[jl] -= 1;
    alpha[p] += 1;
    alpha[r] += 1;
    Ok(())
}

/// `sum alpha_ij * g (m + 1 - g)` with `g = j - i`; every rewrite lowers it.
pub fn straighten_potential(alpha: &[u32], m: usize) -> u64 {
    crate::trees::pairs(m)
        .iter()
        .zip(alpha)
        .map(|(&(i, j), &a)| {
            let g = (j - i) as u64;
            a as u64 * g * (m as u64 + 1 - g)
        })
        .sum()
}

/// The standard exponent with the same `M_tau`-value, rewriting the
/// lexicographically smallest crossing pair first.
pub fn straighten(alpha: &[u32], t: &TrivalentTree) -> Result<Exponent> {
    let m = t.m();
    if alpha.len() != num_pairs(m) {
        return invalid("exponent length does not match the number of pairs");
    }
    let mut a = alpha.to_vec();
    while let Some(&q) = crossing_quadruples(&a, m).first() {
        rewrite(&mut a, t, q)?;
    }
    Ok(a)
}

/// A set of standard monomials with a value-preserving rewriting to it.
pub trait StandardMonomials {
    fn is_standard(&self, alpha: &[u32]) -> bool;
    fn straighten(&self, alpha: &[u32]) -> Result<Exponent>;
}

/// Standard monomials of the Plücker ideal, straightened along a tree.
pub struct TreeStraightening<'a>(pub &'a TrivalentTree);

impl StandardMonomials for TreeStraightening<'_> {
    fn is_standard(&self, alpha: &[u32]) -> bool {
        is_standard(alpha, self.0.m())
    }

    fn straighten(&self, alpha: &[u32]) -> Result<Exponent> {
        straighten(alpha, self.0)
    }
}

/// Monomials not divisible by `x^leading`, with `x^leading -> x^replacement`.
pub struct BinomialStraightening {
    pub leading: Exponent,
    pub replacement: Exponent,
}

impl BinomialStraightening {
    /// Standard monomials for the initial ideal generated by `x2^11`.
    pub fn hypersurface_11() -> BinomialStraightening {
        BinomialStraightening { leading: vec![0, 11, 0, 0], replacement: vec![6, 0, 4, 1] }
    }
}

impl StandardMonomials for BinomialStraightening {
    fn is_standard(&self, alpha: &[u32]) -> bool {
        alpha.iter().zip(&self.leading).any(|(a, l)| a < l)
    }

    fn straighten(&self, alpha: &[u32]) -> Result<Exponent> {
        if alpha.len() != self.leading.len() {
            return invalid("exponent length does not match");
        }
        if !self.is_standard(&self.replacement) {
            return invalid("replacement monomial must be standard");
        }
        let mut a = alpha.to_vec();
        while !self.is_standard(&a) {
            for ((x, l), r) in a.iter_mut().zip(&self.leading).zip(&self.replacement) {
                *x = *x - l + r;
            }
        }
        Ok(a)
    }
}

/// `Theta(s)` with witness `alpha` (`s = M1 alpha`): `M2` times the standard
/// representative of `alpha`.
pub fn theta_with(
    m1: &RatMat,
    m2: &RatMat,
    basis: &dyn StandardMonomials,
    s: &RatVec,
    alpha: &[u32],
) -> Result<RatVec> {
    if &m1.mul_exponent(alpha)? != s {
        return invalid(format!("witness {alpha:?} does not map to {s:?}"));
    }
    m2.mul_exponent(&basis.straighten(alpha)?)
}

/// Two adjacent trees in the common Gröbner cone with their matrices.
#[derive(Clone, Debug)]
pub struct GrPair {
    pub adj: Adjacency,
    pub m1: RatMat,
    pub m2: RatMat,
    pub mtilde1: RatMat,
    pub mtilde2: RatMat,
    nu1: NoharaUeda,
}

impl GrPair {
    pub fn new(t1: &TrivalentTree, t2: &TrivalentTree) -> Result<GrPair> {
        let adj = match adjacency(t1, t2) {
            Ok(a) => a,
            Err(Error::NotAdjacent) => return invalid("trees are not adjacent"),
            Err(e) => return Err(e),
        };
        for t in [&adj.t1, &adj.t2] {
            if !check_groebner_cone(t) {
                return invalid(format!(
                    "tree {t:?} is not in the Gröbner cone of the crossing order; relabel with groebner_relabel"
                ));
            }
        }
        let m1 = build_m(&adj.t1);
        let m2 = build_m(&adj.t2);
        let last = m1.nrows() - 1;
        for i in 0..last {
            assert_eq!(m1.row(i), m2.row(i), "matrices must agree away from the last row");
        }
        let mtilde1 = build_mtilde(&adj.t1);
        let mtilde2 = build_mtilde(&adj.t2);
        let nu1 = nohara_ueda(&adj.t1);
        Ok(GrPair { adj, m1, m2, mtilde1, mtilde2, nu1 })
    }

    /// Relabel both trees into the common Gröbner cone, then build the pair.
    /// Returns the permutation used.
    pub fn relabeled(t1: &TrivalentTree, t2: &TrivalentTree) -> Result<(GrPair, Vec<usize>)> {
        let perm = groebner_relabel(t1, t2)?;
        let pair = GrPair::new(&t1.relabel(&perm)?, &t2.relabel(&perm)?)?;
        Ok((pair, perm))
    }

    /// The pair crossing the wall the other way.
    pub fn reversed(&self) -> GrPair {
        GrPair::new(&self.adj.t2, &self.adj.t1).expect("adjacency is symmetric")
    }

    pub fn m(&self) -> usize {
        self.adj.t1.m()
    }

    fn envelope_terms(&self, z: &RatVec) -> [Rat; 4] {
        let [a, b, c, d] = self.adj.flanks.map(|e| z[e].clone());
        let phi1 = (&a - &b).abs().max((&c - &d).abs());
        let phi2 = (&a - &d).abs().max((&b - &c).abs());
        let psi1 = (&a + &b).min(&c + &d);
        let psi2 = (&a + &d).min(&b + &c);
        [phi1, psi1, phi2, psi2]
    }

    fn check_tilde(&self, z: &RatVec) -> Result<()> {
        check_len(z, self.m())?;
        if let Some(c) = self.nu1.violated(z) {
            return Err(Error::Domain { point: z.clone(), reason: format!("violates {:?} >= 0", c.a) });
        }
        Ok(())
    }

    pub fn flip_tilde(&self, z: &RatVec) -> Result<RatVec> {
        self.check_tilde(z)?;
        let [phi1, _, _, psi2] = self.envelope_terms(z);
        Ok(z.with_last(-z.last() + psi2 + phi1))
    }

    pub fn shift_tilde(&self, z: &RatVec) -> Result<RatVec> {
        self.check_tilde(z)?;
        let [phi1, _, phi2, _] = self.envelope_terms(z);
        Ok(z.with_last(z.last() + phi2 - phi1))
    }

    pub fn flip(&self, y: &RatVec) -> Result<RatVec> {
        let m = self.m();
        let z = gamma_inv(y, m)?;
        let out = self
            .flip_tilde(&z)
            .map_err(|_| Error::Domain { point: y.clone(), reason: "outside the cone of the first tree".into() })?;
        gamma(&out, m)
    }

    pub fn shift(&self, y: &RatVec) -> Result<RatVec> {
        let m = self.m();
        let z = gamma_inv(y, m)?;
        let out = self
            .shift_tilde(&z)
            .map_err(|_| Error::Domain { point: y.clone(), reason: "outside the cone of the first tree".into() })?;
        gamma(&out, m)
    }

    /// `Theta(s)` given a witness exponent with `M1 alpha = s`.
    pub fn theta(&self, s: &RatVec, alpha: &[u32]) -> Result<RatVec> {
        theta_with(&self.m1, &self.m2, &TreeStraightening(&self.adj.t1), s, alpha)
    }

    /// Check `flip(M1 alpha) = M2 alpha` for every standard `alpha` of degree
    /// at most `max_degree`.
    pub fn verify_flip_equals_theta(&self, max_degree: u32) -> FlipThetaReport {
        let m = self.m();
        let mut report = FlipThetaReport::default();
        for alpha in monomials_up_to(num_pairs(m), max_degree) {
            if !is_standard(&alpha, m) {
                continue;
            }
            report.checked += 1;
            let s = self.m1.mul_exponent(&alpha).expect("matching lengths");
            let expected = self.m2.mul_exponent(&alpha).expect("matching lengths");
            match self.flip(&s) {
                Ok(f) if f == expected => {}
                Ok(f) => report.violations.push(FlipThetaViolation { alpha, flip: Some(f), expected }),
                Err(_) => report.violations.push(FlipThetaViolation { alpha, flip: None, expected }),
            }
        }
        report
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct FlipThetaReport {
    pub checked: usize,
    pub violations: Vec<FlipThetaViolation>,
}

#[derive(Clone, Debug, Serialize)]
pub struct FlipThetaViolation {
    pub alpha: Exponent,
    pub flip: Option<RatVec>,
    pub expected: RatVec,
}
