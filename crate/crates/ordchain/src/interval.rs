use std::fmt;

use crate::error::{Error, Result};
use crate::ext::ExtRat;
use crate::rat::{int, midpoint, Rat};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BoundKind {
    Open,
    Closed,
}

/// One endpoint of an interval: a point together with whether it is attained.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Bound {
    pub point: ExtRat,
    pub kind: BoundKind,
}

impl Bound {
    pub fn open(point: ExtRat) -> Self {
        Bound {
            point,
            kind: BoundKind::Open,
        }
    }

    pub fn closed(point: ExtRat) -> Self {
        Bound {
            point,
            kind: BoundKind::Closed,
        }
    }

    pub fn is_closed(&self) -> bool {
        self.kind == BoundKind::Closed
    }

    fn reflect(&self) -> Bound {
        Bound {
            point: self.point.neg(),
            kind: self.kind,
        }
    }
}

/// A nonempty convex subset of the extended rationals, read as the order
/// model of a real interval.
///
/// A closed bound at ±∞ represents a chain with a formally adjoined
/// extremum; such bounds can only be created through
/// [`Interval::with_adjoined`], so ordinary intervals never acquire them.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Interval {
    lo: Bound,
    hi: Bound,
}

/// Shape of a chain, by which extrema it has.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ChainKind {
    Closed(ExtRat, ExtRat),
    MinOnly(ExtRat),
    MaxOnly(ExtRat),
    Open,
}

/// Relative position of two intervals under the pointwise order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IntervalRelation {
    StrictlyBefore,
    WeaklyBefore,
    Overlapping,
}

impl Interval {
    /// Builds an interval, rejecting closed bounds at ±∞.
    pub fn new(lo: Bound, hi: Bound) -> Result<Self> {
        if (!lo.point.is_finite() && lo.is_closed()) || (!hi.point.is_finite() && hi.is_closed()) {
            return Err(Error::InvalidInterval(
                "closed bound at an infinity requires an adjoined extremum".into(),
            ));
        }
        Self::with_adjoined(lo, hi)
    }

    /// Builds an interval, permitting closed bounds at ±∞ (adjoined extrema).
    pub fn with_adjoined(lo: Bound, hi: Bound) -> Result<Self> {
        if lo.point > hi.point {
            return Err(Error::InvalidInterval(
                "lower bound above upper bound".into(),
            ));
        }
        if lo.point == hi.point && !(lo.is_closed() && hi.is_closed()) {
            return Err(Error::InvalidInterval(
                "degenerate interval must be a singleton".into(),
            ));
        }
        if lo.point == ExtRat::PosInf && !lo.is_closed() {
            return Err(Error::InvalidInterval(
                "empty: open lower bound at +inf".into(),
            ));
        }
        if hi.point == ExtRat::NegInf && !hi.is_closed() {
            return Err(Error::InvalidInterval(
                "empty: open upper bound at -inf".into(),
            ));
        }
        Ok(Interval { lo, hi })
    }

    pub fn singleton(p: ExtRat) -> Result<Self> {
        Self::with_adjoined(Bound::closed(p.clone()), Bound::closed(p))
    }

    /// The whole chain (−∞,+∞).
    pub fn full() -> Self {
        Interval {
            lo: Bound::open(ExtRat::NegInf),
            hi: Bound::open(ExtRat::PosInf),
        }
    }

    pub fn open_rats(a: Rat, b: Rat) -> Result<Self> {
        Self::new(Bound::open(a.into()), Bound::open(b.into()))
    }

    pub fn closed_rats(a: Rat, b: Rat) -> Result<Self> {
        Self::new(Bound::closed(a.into()), Bound::closed(b.into()))
    }

    pub fn lo(&self) -> &Bound {
        &self.lo
    }

    pub fn hi(&self) -> &Bound {
        &self.hi
    }

    pub fn is_singleton(&self) -> bool {
        self.lo.point == self.hi.point
    }

    pub fn is_nondegenerate(&self) -> bool {
        !self.is_singleton()
    }

    /// Whether any bound is a closed infinity (an adjoined extremum).
    pub fn has_adjoined_extremum(&self) -> bool {
        (!self.lo.point.is_finite() && self.lo.is_closed())
            || (!self.hi.point.is_finite() && self.hi.is_closed())
    }

    pub fn contains(&self, x: &ExtRat) -> bool {
        let lo_ok = match self.lo.kind {
            BoundKind::Closed => *x >= self.lo.point,
            BoundKind::Open => *x > self.lo.point,
        };
        let hi_ok = match self.hi.kind {
            BoundKind::Closed => *x <= self.hi.point,
            BoundKind::Open => *x < self.hi.point,
        };
        lo_ok && hi_ok
    }

    /// Endpoint-closure signature; order-isomorphism can only exist between
    /// intervals with equal signatures.
    pub fn signature(&self) -> (BoundKind, BoundKind) {
        (self.lo.kind, self.hi.kind)
    }

    pub fn has_min(&self) -> bool {
        self.lo.is_closed()
    }

    pub fn has_max(&self) -> bool {
        self.hi.is_closed()
    }

    pub fn kind(&self) -> ChainKind {
        match (self.has_min(), self.has_max()) {
            (true, true) => ChainKind::Closed(self.lo.point.clone(), self.hi.point.clone()),
            (true, false) => ChainKind::MinOnly(self.lo.point.clone()),
            (false, true) => ChainKind::MaxOnly(self.hi.point.clone()),
            (false, false) => ChainKind::Open,
        }
    }

    /// Is `self` a subset of `other`?
    pub fn is_subset_of(&self, other: &Interval) -> bool {
        let lo_ok = other.lo.point < self.lo.point
            || (other.lo.point == self.lo.point && (other.lo.is_closed() || !self.lo.is_closed()));
        let hi_ok = self.hi.point < other.hi.point
            || (self.hi.point == other.hi.point && (other.hi.is_closed() || !self.hi.is_closed()));
        lo_ok && hi_ok
    }

    pub fn relate(&self, other: &Interval) -> IntervalRelation {
        if self.hi.point < other.lo.point {
            return IntervalRelation::StrictlyBefore;
        }
        if self.hi.point == other.lo.point {
            return if self.hi.is_closed() && other.lo.is_closed() {
                IntervalRelation::WeaklyBefore
            } else {
                IntervalRelation::StrictlyBefore
            };
        }
        IntervalRelation::Overlapping
    }

    pub fn intersect(&self, other: &Interval) -> Option<Interval> {
        let lo = max_lo(&self.lo, &other.lo);
        let hi = min_hi(&self.hi, &other.hi);
        if lo.point > hi.point {
            return None;
        }
        if lo.point == hi.point && !(lo.is_closed() && hi.is_closed()) {
            return None;
        }
        Some(Interval { lo, hi })
    }

    /// Union when the result is again convex: the intervals overlap or abut
    /// with at least one closed endpoint at the junction.
    pub fn try_union(&self, other: &Interval) -> Option<Interval> {
        let (first, second) = if self.lo.point <= other.lo.point {
            (self, other)
        } else {
            (other, self)
        };
        let joinable = match first.hi.point.cmp(&second.lo.point) {
            std::cmp::Ordering::Greater => true,
            std::cmp::Ordering::Equal => first.hi.is_closed() || second.lo.is_closed(),
            std::cmp::Ordering::Less => false,
        };
        if !joinable {
            return None;
        }
        Some(Interval {
            lo: min_lo(&first.lo, &second.lo),
            hi: max_hi(&first.hi, &second.hi),
        })
    }

    /// A canonical rational strictly inside the interval.
    pub fn interior_point(&self) -> Rat {
        interior_between(&self.lo.point, &self.hi.point)
    }

    /// Mirror image under x ↦ −x.
    pub fn reflect(&self) -> Interval {
        Interval {
            lo: self.hi.reflect(),
            hi: self.lo.reflect(),
        }
    }
}

/// A canonical rational strictly between two extended points.
pub fn interior_between(lo: &ExtRat, hi: &ExtRat) -> Rat {
    match (lo, hi) {
        (ExtRat::Finite(a), ExtRat::Finite(b)) => midpoint(a, b),
        (ExtRat::Finite(a), _) => a + int(1),
        (_, ExtRat::Finite(b)) => b - int(1),
        _ => int(0),
    }
}

fn max_lo(a: &Bound, b: &Bound) -> Bound {
    match a.point.cmp(&b.point) {
        std::cmp::Ordering::Greater => a.clone(),
        std::cmp::Ordering::Less => b.clone(),
        std::cmp::Ordering::Equal => {
            if a.is_closed() && b.is_closed() {
                a.clone()
            } else {
                Bound::open(a.point.clone())
            }
        }
    }
}

fn min_lo(a: &Bound, b: &Bound) -> Bound {
    match a.point.cmp(&b.point) {
        std::cmp::Ordering::Less => a.clone(),
        std::cmp::Ordering::Greater => b.clone(),
        std::cmp::Ordering::Equal => {
            if a.is_closed() || b.is_closed() {
                Bound::closed(a.point.clone())
            } else {
                a.clone()
            }
        }
    }
}

fn min_hi(a: &Bound, b: &Bound) -> Bound {
    match a.point.cmp(&b.point) {
        std::cmp::Ordering::Less => a.clone(),
        std::cmp::Ordering::Greater => b.clone(),
        std::cmp::Ordering::Equal => {
            if a.is_closed() && b.is_closed() {
                a.clone()
            } else {
                Bound::open(a.point.clone())
            }
        }
    }
}

fn max_hi(a: &Bound, b: &Bound) -> Bound {
    match a.point.cmp(&b.point) {
        std::cmp::Ordering::Greater => a.clone(),
        std::cmp::Ordering::Less => b.clone(),
        std::cmp::Ordering::Equal => {
            if a.is_closed() || b.is_closed() {
                Bound::closed(a.point.clone())
            } else {
                a.clone()
            }
        }
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_singleton() {
            return write!(f, "{{{}}}", self.lo.point);
        }
        let l = if self.lo.is_closed() { '[' } else { '(' };
        let r = if self.hi.is_closed() { ']' } else { ')' };
        write!(f, "{l}{},{}{r}", self.lo.point, self.hi.point)
    }
}

impl std::str::FromStr for Interval {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let err = |msg: String| Error::ParseError { line: 0, msg };
        let s = s.trim();
        if let Some(inner) = s.strip_prefix('{').and_then(|t| t.strip_suffix('}')) {
            let p: ExtRat = inner.parse()?;
            return Interval::with_adjoined(Bound::closed(p.clone()), Bound::closed(p));
        }
        let mut chars = s.chars();
        let first = chars
            .next()
            .ok_or_else(|| err("empty interval text".into()))?;
        let last = s.chars().last().unwrap();
        let lo_kind = match first {
            '[' => BoundKind::Closed,
            '(' => BoundKind::Open,
            _ => return Err(err(format!("expected [ or ( in `{s}`"))),
        };
        let hi_kind = match last {
            ']' => BoundKind::Closed,
            ')' => BoundKind::Open,
            _ => return Err(err(format!("expected ] or ) in `{s}`"))),
        };
        let inner = &s[1..s.len() - 1];
        let (lo_s, hi_s) = inner
            .split_once(',')
            .ok_or_else(|| err(format!("expected two endpoints in `{s}`")))?;
        let lo: ExtRat = lo_s.trim().parse()?;
        let hi: ExtRat = hi_s.trim().parse()?;
        Interval::with_adjoined(
            Bound {
                point: lo,
                kind: lo_kind,
            },
            Bound {
                point: hi,
                kind: hi_kind,
            },
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    fn iv(s: &str) -> Interval {
        s.parse().unwrap()
    }

    #[test]
    fn construction_guards() {
        assert!(
            Interval::new(Bound::closed(ExtRat::PosInf), Bound::closed(ExtRat::PosInf)).is_err()
        );
        assert!(Interval::with_adjoined(
            Bound::closed(ExtRat::PosInf),
            Bound::closed(ExtRat::PosInf)
        )
        .is_ok());
        assert!(
            Interval::new(Bound::open(rat(1, 1).into()), Bound::open(rat(0, 1).into())).is_err()
        );
        assert!(Interval::new(
            Bound::open(rat(0, 1).into()),
            Bound::closed(rat(0, 1).into())
        )
        .is_err());
        assert!(Interval::singleton(rat(1, 3).into()).is_ok());
    }

    #[test]
    fn relate_matches_pointwise_order() {
        assert_eq!(
            iv("[0,1)").relate(&iv("[1,2]")),
            IntervalRelation::StrictlyBefore
        );
        assert_eq!(
            iv("[0,1]").relate(&iv("[1,2]")),
            IntervalRelation::WeaklyBefore
        );
        assert_eq!(
            iv("[0,2]").relate(&iv("[1,3]")),
            IntervalRelation::Overlapping
        );
        // singleton against an open-left neighbor
        assert_eq!(
            iv("{1}").relate(&iv("(1,2)")),
            IntervalRelation::StrictlyBefore
        );
    }

    #[test]
    fn relate_strict_is_asymmetric() {
        let c = iv("[0,1)");
        let d = iv("[1,2]");
        assert_eq!(c.relate(&d), IntervalRelation::StrictlyBefore);
        assert_eq!(d.relate(&c), IntervalRelation::Overlapping);
    }

    #[test]
    fn membership_respects_kinds() {
        let i = iv("[0,1)");
        assert!(i.contains(&rat(0, 1).into()));
        assert!(!i.contains(&rat(1, 1).into()));
        assert!(iv("(-inf,+inf)").contains(&rat(-100, 1).into()));
        assert!(!iv("(-inf,+inf)").contains(&ExtRat::PosInf));
        assert!(iv("(0,+inf]").contains(&ExtRat::PosInf));
    }

    #[test]
    fn intersect_and_union() {
        assert_eq!(iv("[0,2]").intersect(&iv("(1,3]")).unwrap(), iv("(1,2]"));
        assert_eq!(iv("[0,1)").intersect(&iv("[1,2]")), None);
        assert_eq!(iv("[0,1]").intersect(&iv("[1,2]")).unwrap(), iv("{1}"));
        assert_eq!(iv("[0,1)").try_union(&iv("[1,2]")).unwrap(), iv("[0,2]"));
        assert_eq!(iv("(0,1)").try_union(&iv("(1,2)")), None);
        assert_eq!(iv("(0,1)").try_union(&iv("(1/2,3)")).unwrap(), iv("(0,3)"));
    }

    #[test]
    fn text_round_trip() {
        for s in ["[0,1)", "(-inf,+inf)", "{1/3}", "(0,+inf]", "(-1/2,2/3]"] {
            assert_eq!(iv(s).to_string(), s);
        }
    }

    #[test]
    fn kinds_and_interior_points() {
        assert_eq!(
            iv("[0,1]").kind(),
            ChainKind::Closed(rat(0, 1).into(), rat(1, 1).into())
        );
        assert_eq!(iv("[0,+inf)").kind(), ChainKind::MinOnly(rat(0, 1).into()));
        assert_eq!(iv("(-inf,0]").kind(), ChainKind::MaxOnly(rat(0, 1).into()));
        assert_eq!(iv("(-inf,+inf)").kind(), ChainKind::Open);
        assert_eq!(iv("(0,1)").interior_point(), rat(1, 2));
        assert_eq!(iv("[3,+inf)").interior_point(), rat(4, 1));
        assert_eq!(iv("(-inf,0)").interior_point(), rat(-1, 1));
        assert_eq!(iv("(-inf,+inf)").interior_point(), rat(0, 1));
    }

    #[test]
    fn reflect_swaps_ends() {
        assert_eq!(iv("[0,+inf)").reflect(), iv("(-inf,0]"));
        assert_eq!(iv("(1/3,2]").reflect(), iv("[-2,-1/3)"));
    }
}
