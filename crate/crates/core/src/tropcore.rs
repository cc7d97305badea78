//! Polynomials with rational coefficients, weight valuations and initial forms.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{invalid, Result};
use crate::kernel::{Rat, RatMat, RatVec};
use crate::trees::{num_pairs, pair_index};

/// Exponent vector of a monomial.
pub type Monomial = Vec<u32>;

/// A polynomial in `nvars` variables; zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Monomial, Rat>,
}

impl Poly {
    pub fn new(nvars: usize, terms: impl IntoIterator<Item = (Monomial, Rat)>) -> Result<Poly> {
        let mut map: BTreeMap<Monomial, Rat> = BTreeMap::new();
        for (e, c) in terms {
            if e.len() != nvars {
                return invalid(format!("exponent {e:?} does not have length {nvars}"));
            }
            *map.entry(e).or_insert_with(Rat::zero) += c;
        }
        map.retain(|_, c| !c.is_zero());
        Ok(Poly { nvars, terms: map })
    }

    pub fn from_ints(nvars: usize, terms: &[(&[u32], i64)]) -> Result<Poly> {
        Poly::new(nvars, terms.iter().map(|(e, c)| (e.to_vec(), Rat::int(*c))))
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Rat> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    e: Monomial,
    c: Rat,
}

#[derive(Serialize, Deserialize)]
struct PolyJson {
    vars: usize,
    terms: Vec<TermJson>,
}

impl Serialize for Poly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PolyJson {
            vars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| TermJson { e: e.clone(), c: c.clone() }).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Poly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Poly, D::Error> {
        let j = PolyJson::deserialize(d)?;
        Poly::new(j.vars, j.terms.into_iter().map(|t| (t.e, t.c))).map_err(serde::de::Error::custom)
    }
}

/// How weight vectors are compared when selecting the minimal terms.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TermOrder {
    /// Plain lexicographic comparison; for a single row this is the usual
    /// minimum of `w . u`.
    Lex,
    /// The first coordinate compared in reverse (larger degree is smaller),
    /// the rest lexicographically.
    DegreeRefinedLex,
}

impl TermOrder {
    pub fn cmp(&self, a: &RatVec, b: &RatVec) -> Ordering {
        match self {
            TermOrder::Lex => a.cmp(b),
            TermOrder::DegreeRefinedLex => match (a.first(), b.first()) {
                (Some(x), Some(y)) => y.cmp(x).then_with(|| a[1..].cmp(&b[1..])),
                _ => a.cmp(b),
            },
        }
    }
}

/// `M e`.
pub fn weight_value(m: &RatMat, e: &[u32]) -> Result<RatVec> {
    m.mul_exponent(e)
}

/// The terms of `f` whose weight `M u` is minimal for `ord`.
pub fn initial_form(f: &Poly, m: &RatMat, ord: TermOrder) -> Result<Poly> {
    if f.is_zero() {
        return invalid("initial form of the zero polynomial");
    }
    let weights: Vec<(RatVec, &Monomial, &Rat)> =
        f.terms.iter().map(|(e, c)| Ok((weight_value(m, e)?, e, c))).collect::<Result<_>>()?;
    let min = weights.iter().map(|(w, _, _)| w).min_by(|a, b| ord.cmp(a, b)).expect("nonzero polynomial").clone();
    Poly::new(
        f.nvars,
        weights
            .into_iter()
            .filter(|(w, _, _)| ord.cmp(w, &min) == Ordering::Equal)
            .map(|(_, e, c)| (e.clone(), c.clone())),
    )
}

/// Initial form for a single weight vector.
pub fn initial_form_weight(f: &Poly, w: &RatVec) -> Result<Poly> {
    initial_form(f, &RatMat::from_rows(vec![w.clone()])?, TermOrder::Lex)
}

/// Whether `w` lies on the tropical hypersurface of `f`.
pub fn trop_member_principal(f: &Poly, w: &RatVec) -> Result<bool> {
    Ok(initial_form_weight(f, w)?.len() >= 2)
}

/// All exponent vectors in `n` variables of total degree at most `d`,
/// in lexicographic order.
pub fn monomials_up_to(n: usize, d: u32) -> Vec<Monomial> {
    fn rec(n: usize, left: u32, cur: &mut Monomial, out: &mut Vec<Monomial>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for a in 0..=left {
            cur.push(a);
            rec(n, left - a, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, d, &mut Vec::with_capacity(n), &mut out);
    out
}

/// The three-term Plücker relations, one per quadruple `i<j<k<l` in
/// lexicographic order, in the pair variables.
pub fn plucker_quadrics(m: usize) -> Result<Vec<Poly>> {
    if m < 4 {
        return invalid(format!("Plücker quadrics need m >= 4, got {m}"));
    }
    let n = num_pairs(m);
    let mono = |a: (usize, usize), b: (usize, usize)| {
        let mut e = vec![0u32; n];
        e[pair_index(m, a.0, a.1)] += 1;
        e[pair_index(m, b.0, b.1)] += 1;
        e
    };
    let mut out = Vec::new();
    for i in 1..=m {
        for j in i + 1..=m {
            for k in j + 1..=m {
                for l in k + 1..=m {
                    out.push(Poly::new(
                        n,
                        [
                            (mono((i, j), (k, l)), Rat::one()),
                            (mono((i, k), (j, l)), -Rat::one()),
                            (mono((i, l), (j, k)), Rat::one()),
                        ],
                    )?);
                }
            }
        }
    }
    Ok(out)
}

/// The hypersurface `x2^11 - x1^6 x3^4 x4 - x1^7 x3 x4^3` used as the
/// counterexample to geometric wall-crossing.
pub fn hypersurface_11() -> Poly {
    Poly::from_ints(4, &[(&[0, 11, 0, 0], 1), (&[6, 0, 4, 1], -1), (&[7, 0, 1, 3], -1)])
        .expect("well-formed polynomial")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hypersurface_initial_forms() {
        let f = hypersurface_11();
        let i1 = initial_form_weight(&f, &RatVec::from_ints(&[0, 0, -1, 4])).unwrap();
        assert_eq!(i1, Poly::from_ints(4, &[(&[0, 11, 0, 0], 1), (&[6, 0, 4, 1], -1)]).unwrap());
        let i2 = initial_form_weight(&f, &RatVec::from_ints(&[0, 0, 3, -1])).unwrap();
        assert_eq!(i2, Poly::from_ints(4, &[(&[0, 11, 0, 0], 1), (&[7, 0, 1, 3], -1)]).unwrap());
        assert_eq!(initial_form_weight(&f, &RatVec::zeros(4)).unwrap(), f);
    }

    #[test]
    fn membership() {
        let f = hypersurface_11();
        assert!(trop_member_principal(&f, &RatVec::from_ints(&[0, 0, -1, 4])).unwrap());
        assert!(trop_member_principal(&f, &RatVec::zeros(4)).unwrap());
        // Term weights 0, 6, 7: a unique minimum.
        assert!(!trop_member_principal(&f, &RatVec::from_ints(&[1, 0, 0, 0])).unwrap());
    }

    #[test]
    fn plucker_counts() {
        assert_eq!(plucker_quadrics(4).unwrap().len(), 1);
        assert_eq!(plucker_quadrics(5).unwrap().len(), 5);
        let q6 = plucker_quadrics(6).unwrap();
        assert_eq!(q6.len(), 15);
        for q in &q6 {
            let mut vars = std::collections::BTreeSet::new();
            for e in q.terms().keys() {
                assert_eq!(e.iter().sum::<u32>(), 2);
                vars.extend(e.iter().enumerate().filter(|(_, &x)| x > 0).map(|(i, _)| i));
            }
            assert_eq!(vars.len(), 6);
        }
        assert!(plucker_quadrics(3).is_err());
    }

    #[test]
    fn m4_quadric() {
        let q = &plucker_quadrics(4).unwrap()[0];
        let expected =
            Poly::from_ints(6, &[(&[1, 0, 0, 0, 0, 1], 1), (&[0, 1, 0, 0, 1, 0], -1), (&[0, 0, 1, 1, 0, 0], 1)])
                .unwrap();
        assert_eq!(q, &expected);
    }

    #[test]
    fn degree_refined_order_prefers_higher_degree() {
        let a = RatVec::from_ints(&[2, 5]);
        let b = RatVec::from_ints(&[1, 0]);
        assert_eq!(TermOrder::DegreeRefinedLex.cmp(&a, &b), Ordering::Less);
        assert_eq!(TermOrder::Lex.cmp(&a, &b), Ordering::Greater);
    }

    #[test]
    fn monomial_counts() {
        // C(n + d, d)
        assert_eq!(monomials_up_to(4, 3).len(), 35);
        assert_eq!(monomials_up_to(6, 0), vec![vec![0; 6]]);
    }

    #[test]
    fn zero_polynomial_rejected() {
        let z = Poly::new(2, []).unwrap();
        assert!(initial_form_weight(&z, &RatVec::zeros(2)).is_err());
    }
}
