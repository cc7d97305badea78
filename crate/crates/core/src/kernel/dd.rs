//! Double description: extreme rays and lineality of `{y : A y >= 0, E y = 0}`.
//!
//! Vectors are kept as primitive integer vectors so that each update is a
//! pair of integer multiplications followed by a gcd division.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::linalg::{icombine, idot, make_primitive, nullspace, primitive, to_rat};
use super::rat::RatVec;

#[derive(Clone, Debug, Default)]
pub struct ConeGenerators {
    pub rays: Vec<Vec<BigInt>>,
    pub lineality: Vec<Vec<BigInt>>,
}

#[derive(Clone)]
struct Bits(Vec<u64>);

impl Bits {
    fn new(n: usize) -> Bits {
        Bits(vec![0; n.div_ceil(64).max(1)])
    }

    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn and(&self, other: &Bits) -> Bits {
        Bits(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }

    fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    fn subset_of(&self, other: &Bits) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a & !b == 0)
    }
}

struct Ray {
    v: Vec<BigInt>,
    zero: Bits,
}

/// Generators of the cone `{y in R^dim : a . y >= 0 for a in ineqs, e . y = 0 for e in eqs}`.
///
/// The returned rays are exactly the extreme rays modulo the lineality space,
/// and the lineality vectors form a basis of it.
pub fn cone_generators(dim: usize, ineqs: &[Vec<BigInt>], eqs: &[Vec<BigInt>]) -> ConeGenerators {
    let eq_rows: Vec<RatVec> = eqs.iter().map(|e| to_rat(e)).collect();
    let mut lin: Vec<Vec<BigInt>> = nullspace(&eq_rows, dim).iter().map(|v| primitive(v)).collect();
    let space_dim = lin.len();
    let n = ineqs.len();
    let mut rays: Vec<Ray> = Vec::new();

    for (t, a) in ineqs.iter().enumerate() {
        if let Some(pos) = lin.iter().position(|l| !idot(a, l).is_zero()) {
            let mut l0 = lin.swap_remove(pos);
            let mut al0 = idot(a, &l0);
            if al0.is_negative() {
                l0.iter_mut().for_each(|x| *x = -&*x);
                al0 = -al0;
            }
            for l in lin.iter_mut() {
                let al = idot(a, l);
                if !al.is_zero() {
                    *l = icombine(&al0, l, &al, &l0);
                    make_primitive(l);
                }
            }
            for r in rays.iter_mut() {
                let ar = idot(a, &r.v);
                if !ar.is_zero() {
                    r.v = icombine(&al0, &r.v, &ar, &l0);
                    make_primitive(&mut r.v);
                }
                r.zero.set(t);
            }
            let mut zero = Bits::new(n);
            for s in 0..t {
                zero.set(s);
            }
            rays.push(Ray { v: l0, zero });
            continue;
        }

        let vals: Vec<BigInt> = rays.iter().map(|r| idot(a, &r.v)).collect();
        if vals.iter().all(|v| !v.is_negative()) {
            for (r, v) in rays.iter_mut().zip(&vals) {
                if v.is_zero() {
                    r.zero.set(t);
                }
            }
            continue;
        }

        let plus: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_positive()).collect();
        let minus: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_negative()).collect();
        let cone_dim = space_dim - lin.len();
        let mut fresh = Vec::new();
        for &p in &plus {
            for &q in &minus {
                let z = rays[p].zero.and(&rays[q].zero);
                if z.count() + 2 < cone_dim {
                    continue;
                }
                let blocked = rays.iter().enumerate().any(|(i, r)| i != p && i != q && z.subset_of(&r.zero));
                if blocked {
                    continue;
                }
                let mut v = icombine(&vals[p], &rays[q].v, &vals[q], &rays[p].v);
                make_primitive(&mut v);
                let mut zero = z;
                zero.set(t);
                fresh.push(Ray { v, zero });
            }
        }
        let mut kept: Vec<Ray> = Vec::with_capacity(rays.len() + fresh.len());
        for (mut r, v) in rays.into_iter().zip(vals) {
            if v.is_negative() {
                continue;
            }
            if v.is_zero() {
                r.zero.set(t);
            }
            kept.push(r);
        }
        kept.extend(fresh);
        rays = kept;
    }

    ConeGenerators { rays: rays.into_iter().map(|r| r.v).collect(), lineality: lin }
}
