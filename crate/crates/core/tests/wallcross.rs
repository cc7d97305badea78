//! Generic crossing maps against the closed Grassmannian formulas.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use tropwall::gr2m::GrPair;
use tropwall::kernel::{Polyhedron, Rat, RatMat, RatVec};
use tropwall::trees::adjacent_pairs;
use tropwall::wallcross::{
    crossing_data, flip_generic, sample_points, shift_generic, ConePairInput, Mode, MAX_DENOMINATOR,
};

fn random_body_point(rng: &mut ChaCha8Rng, m: &RatMat) -> RatVec {
    let cols = m.columns();
    let w: Vec<i64> = cols.iter().map(|_| rng.gen_range(0..=6)).collect();
    let total: i64 = w.iter().sum::<i64>().max(1);
    let mut x = RatVec::zeros(m.nrows());
    for (c, &k) in cols.iter().zip(&w) {
        x = &x + &c.scale(&Rat::new(k, total));
    }
    if w.iter().all(|&k| k == 0) {
        return cols[0].clone();
    }
    x
}

#[test]
fn generic_maps_match_closed_forms() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for m in [4, 5] {
        for (t1, t2) in adjacent_pairs(m).unwrap() {
            let (gp, _) = GrPair::relabeled(&t1, &t2).unwrap();
            let rep = crossing_data(&ConePairInput::from_gr_pair(&gp), Mode::Exact, 0).unwrap();
            assert!(rep.passed());
            let body = Polyhedron::convex_hull(&gp.m1.columns()).unwrap();
            let mut points: Vec<RatVec> = body.vertices().to_vec();
            points.extend((0..100).map(|_| random_body_point(&mut rng, &gp.m1)));
            for y in &points {
                assert_eq!(flip_generic(&rep, y).unwrap(), gp.flip(y).unwrap(), "flip at {y}");
                assert_eq!(shift_generic(&rep, y).unwrap(), gp.shift(y).unwrap(), "shift at {y}");
            }
        }
    }
}

#[test]
fn maps_are_positively_homogeneous() {
    let inp = ConePairInput::hypersurface_11();
    let rep = crossing_data(&inp, Mode::Exact, 0).unwrap();
    let x = RatVec::new(vec![Rat::one(), Rat::new(1, 2), Rat::new(1, 4)]);
    for t in [Rat::new(1, 3), Rat::int(2), Rat::int(7)] {
        assert_eq!(rep.flip(&x.scale(&t)).unwrap(), rep.flip(&x).unwrap().scale(&t));
        assert_eq!(rep.shift(&x.scale(&t)).unwrap(), rep.shift(&x).unwrap().scale(&t));
    }
}

#[test]
fn flip_reverses_fibers() {
    let inp = ConePairInput::hypersurface_11();
    let rep = crossing_data(&inp, Mode::Exact, 0).unwrap();
    for b in sample_points(&rep.base, 50, 3) {
        let (lo1, hi1) = rep.body1.fiber_interval(&b).unwrap().unwrap();
        let (lo2, hi2) = rep.body2.fiber_interval(&b).unwrap().unwrap();
        assert_eq!(&hi1 - &lo1, &hi2 - &lo2);
        let mut bottom = b.clone();
        bottom.push(lo1);
        assert_eq!(rep.flip(&bottom).unwrap().last(), &hi2);
        assert_eq!(rep.shift(&bottom).unwrap().last(), &lo2);
    }
}

#[test]
fn sample_points_are_seeded_and_bounded() {
    let base = Polyhedron::convex_hull(&[
        RatVec::from_ints(&[1, 0, 0]),
        RatVec::from_ints(&[1, 3, 0]),
        RatVec::from_ints(&[1, 0, 2]),
    ])
    .unwrap();
    let a = sample_points(&base, 200, 5);
    assert_eq!(a, sample_points(&base, 200, 5));
    assert_ne!(a, sample_points(&base, 200, 6));
    for p in &a {
        assert!(base.contains_point(p));
        assert!(p.iter().all(|x| x.denom() <= &num_bigint::BigInt::from(MAX_DENOMINATOR)));
    }
}

#[test]
fn reversed_input_inverts_flip() {
    let inp = ConePairInput::hypersurface_11();
    let fwd = crossing_data(&inp, Mode::Exact, 0).unwrap();
    let back = crossing_data(&inp.reversed(), Mode::Exact, 0).unwrap();
    for v in fwd.body1.vertices() {
        assert_eq!(back.flip(&fwd.flip(v).unwrap()).unwrap(), *v);
        assert_eq!(back.shift(&fwd.shift(v).unwrap()).unwrap(), *v);
    }
}
