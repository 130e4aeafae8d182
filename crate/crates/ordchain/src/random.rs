//! Seedable random builders for order-preserving and wrap-style maps,
//! used by property tests and randomized verification suites.

use rand::Rng;

use crate::ext::ExtRat;
use crate::interval::{interior_between, Bound, BoundKind, Interval};
use crate::iso::canonical_iso;
use crate::piecewise::{Piece, PiecewiseMap};
use crate::rat::Rat;

/// A random rational strictly between the two points, found by a few steps
/// of randomized bisection.
pub fn random_point_between(rng: &mut impl Rng, lo: &ExtRat, hi: &ExtRat) -> Rat {
    let mut lo = lo.clone();
    let mut hi = hi.clone();
    for _ in 0..rng.random_range(1..=4u32) {
        let mid = ExtRat::Finite(interior_between(&lo, &hi));
        if rng.random_bool(0.5) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    interior_between(&lo, &hi)
}

fn sorted_distinct_points(rng: &mut impl Rng, lo: &ExtRat, hi: &ExtRat, k: usize) -> Vec<Rat> {
    let mut pts: Vec<Rat> = (0..k).map(|_| random_point_between(rng, lo, hi)).collect();
    pts.sort();
    pts.dedup();
    pts
}

/// A random order-preserving map of `domain` whose values lie strictly
/// between `v_lo` and `v_hi`, built from one to three constant or Möbius
/// pieces.
pub fn random_order_preserving(
    rng: &mut impl Rng,
    domain: &Interval,
    v_lo: &ExtRat,
    v_hi: &ExtRat,
    codomain: &Interval,
) -> PiecewiseMap {
    if domain.is_singleton() {
        let v = random_point_between(rng, v_lo, v_hi);
        return PiecewiseMap::constant(domain.clone(), codomain.clone(), ExtRat::Finite(v))
            .expect("constant in range");
    }
    let split_count = rng.random_range(0..=2usize);
    let splits = sorted_distinct_points(rng, &domain.lo().point, &domain.hi().point, split_count);
    let mut segments = Vec::new();
    let mut cursor = domain.lo().clone();
    for p in &splits {
        let closed_left = rng.random_bool(0.5);
        let hi_kind = if closed_left {
            BoundKind::Closed
        } else {
            BoundKind::Open
        };
        let seg = Interval::with_adjoined(
            cursor.clone(),
            Bound {
                point: ExtRat::Finite(p.clone()),
                kind: hi_kind,
            },
        )
        .expect("split points are interior");
        segments.push(seg);
        cursor = Bound {
            point: ExtRat::Finite(p.clone()),
            kind: if closed_left {
                BoundKind::Open
            } else {
                BoundKind::Closed
            },
        };
    }
    segments.push(
        Interval::with_adjoined(cursor, domain.hi().clone()).expect("tail segment is nonempty"),
    );

    // one strictly increasing value window per segment
    let mut bounds = vec![v_lo.clone()];
    for _ in 0..segments.len() - 1 {
        let last = bounds.last().unwrap().clone();
        bounds.push(ExtRat::Finite(random_point_between(rng, &last, v_hi)));
    }
    bounds.push(v_hi.clone());

    let mut pieces = Vec::new();
    for (i, seg) in segments.iter().enumerate() {
        let (w_lo, w_hi) = (&bounds[i], &bounds[i + 1]);
        if seg.is_singleton() || rng.random_bool(0.3) {
            let v = random_point_between(rng, w_lo, w_hi);
            pieces.push(Piece::constant(seg.clone(), ExtRat::Finite(v)));
        } else {
            let t_lo = random_point_between(rng, w_lo, w_hi);
            let t_hi = random_point_between(rng, &ExtRat::Finite(t_lo.clone()), w_hi);
            let sig = seg.signature();
            let target = Interval::with_adjoined(
                Bound {
                    point: ExtRat::Finite(t_lo),
                    kind: sig.0,
                },
                Bound {
                    point: ExtRat::Finite(t_hi),
                    kind: sig.1,
                },
            )
            .expect("ordered picks");
            let iso = canonical_iso(seg, &target).expect("matching signatures");
            pieces.extend(iso.pieces().iter().cloned());
        }
    }
    PiecewiseMap::new(domain.clone(), codomain.clone(), pieces)
        .expect("segments tile the domain with ordered values")
}

/// A random map in OP(X,Y) \ O(X,Y) for a convex range `y`: order-preserving
/// on a random ideal and on its complement, with the complement values at or
/// below the ideal values. Roughly a third of the samples realize the
/// singleton-overlap pattern.
pub fn random_wrap_map(rng: &mut impl Rng, domain: &Interval, y: &Interval) -> PiecewiseMap {
    let w = random_point_between(rng, &domain.lo().point, &domain.hi().point);
    let ideal_closed = rng.random_bool(0.5);
    let ideal = Interval::with_adjoined(
        domain.lo().clone(),
        Bound {
            point: ExtRat::Finite(w.clone()),
            kind: if ideal_closed {
                BoundKind::Closed
            } else {
                BoundKind::Open
            },
        },
    )
    .expect("interior split");
    let complement = Interval::with_adjoined(
        Bound {
            point: ExtRat::Finite(w),
            kind: if ideal_closed {
                BoundKind::Open
            } else {
                BoundKind::Closed
            },
        },
        domain.hi().clone(),
    )
    .expect("interior split");

    let mut pieces = Vec::new();
    if rng.random_bool(0.33) {
        // singleton overlap: both sides attain the shared value s
        let s = ExtRat::Finite(random_point_between(rng, &y.lo().point, &y.hi().point));
        let t1 = random_point_between(rng, &ideal.lo().point, &ideal.hi().point);
        let plateau = Interval::with_adjoined(
            ideal.lo().clone(),
            Bound::closed(ExtRat::Finite(t1.clone())),
        )
        .expect("interior pick");
        let rest = Interval::with_adjoined(Bound::open(ExtRat::Finite(t1)), ideal.hi().clone())
            .expect("interior pick");
        pieces.push(Piece::constant(plateau, s.clone()));
        pieces.extend(
            random_order_preserving(rng, &rest, &s, &y.hi().point, y)
                .pieces()
                .iter()
                .cloned(),
        );
        let t2 = random_point_between(rng, &complement.lo().point, &complement.hi().point);
        let head = Interval::with_adjoined(
            complement.lo().clone(),
            Bound::open(ExtRat::Finite(t2.clone())),
        )
        .expect("interior pick");
        let tail =
            Interval::with_adjoined(Bound::closed(ExtRat::Finite(t2)), complement.hi().clone())
                .expect("interior pick");
        pieces.extend(
            random_order_preserving(rng, &head, &y.lo().point, &s, y)
                .pieces()
                .iter()
                .cloned(),
        );
        pieces.push(Piece::constant(tail, s));
    } else {
        // strict gap between the two value bands
        let s_lo = random_point_between(rng, &y.lo().point, &y.hi().point);
        let s_hi = ExtRat::Finite(random_point_between(
            rng,
            &ExtRat::Finite(s_lo.clone()),
            &y.hi().point,
        ));
        let s_lo = ExtRat::Finite(s_lo);
        pieces.extend(
            random_order_preserving(rng, &ideal, &s_hi, &y.hi().point, y)
                .pieces()
                .iter()
                .cloned(),
        );
        pieces.extend(
            random_order_preserving(rng, &complement, &y.lo().point, &s_lo, y)
                .pieces()
                .iter()
                .cloned(),
        );
    }
    PiecewiseMap::new(domain.clone(), y.clone(), pieces).expect("two ordered bands over a split")
}
