//! Exact linear algebra helpers: row reduction over the rationals and
//! primitive integer vectors for the double description code.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::rat::{Rat, RatVec};

/// Reduced row echelon form. Returns the nonzero rows and the pivot columns.
pub fn rref(rows: &[RatVec], ncols: usize) -> (Vec<RatVec>, Vec<usize>) {
    let mut m: Vec<Vec<Rat>> = rows.iter().map(|r| r.to_vec()).collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..ncols {
                    let t = &f * &m[r][j];
                    m[i][j] -= &t;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    m.truncate(r);
    (m.into_iter().map(RatVec::new).collect(), pivots)
}

pub fn rank(rows: &[RatVec], ncols: usize) -> usize {
    rref(rows, ncols).1.len()
}

/// A basis of `{x : row . x = 0 for every row}`.
pub fn nullspace(rows: &[RatVec], ncols: usize) -> Vec<RatVec> {
    let (r, pivots) = rref(rows, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = RatVec::zeros(ncols);
            v.set(f, Rat::one());
            for (row, &p) in r.iter().zip(&pivots) {
                v.set(p, -&row[f]);
            }
            v
        })
        .collect()
}

/// Some solution of `A x = b`, if one exists.
pub fn solve(a: &[RatVec], b: &[Rat], ncols: usize) -> Option<RatVec> {
    let aug: Vec<RatVec> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut v = row.clone();
            v.push(bi.clone());
            v
        })
        .collect();
    let (r, pivots) = rref(&aug, ncols + 1);
    if pivots.contains(&ncols) {
        return None;
    }
    let mut x = RatVec::zeros(ncols);
    for (row, &p) in r.iter().zip(&pivots) {
        x.set(p, row[ncols].clone());
    }
    Some(x)
}

/// Scale a rational vector to a primitive integer vector with the same direction.
pub fn primitive(v: &[Rat]) -> Vec<BigInt> {
    let l = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let mut out: Vec<BigInt> = v.iter().map(|x| x.numer() * (&l / x.denom())).collect();
    make_primitive(&mut out);
    out
}

/// Divide an integer vector by the gcd of its entries.
pub fn make_primitive(v: &mut [BigInt]) {
    let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in v.iter_mut() {
            *x = &*x / &g;
        }
    }
}

pub fn idot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// `s * a - t * b`, entrywise.
pub fn icombine(s: &BigInt, a: &[BigInt], t: &BigInt, b: &[BigInt]) -> Vec<BigInt> {
    a.iter().zip(b).map(|(x, y)| s * x - t * y).collect()
}

pub fn to_rat(v: &[BigInt]) -> RatVec {
    v.iter().map(|x| Rat::from_bigint(x.clone())).collect()
}

pub fn is_zero_int(v: &[BigInt]) -> bool {
    v.iter().all(Zero::is_zero)
}

pub fn first_sign(v: &[BigInt]) -> i32 {
    match v.iter().find(|x| !x.is_zero()) {
        Some(x) if x.is_positive() => 1,
        Some(_) => -1,
        None => 0,
    }
}
