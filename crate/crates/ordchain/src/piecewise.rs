use crate::error::{Error, Result};
use crate::ext::ExtRat;
use crate::interval::{Bound, Interval};
use crate::mobius::{MobiusMap, Monotonicity};
use crate::subset::SubsetModel;

/// What a piece does on its domain interval.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Action {
    Const(ExtRat),
    Mobius(MobiusMap),
}

/// One fragment of a piecewise map: an interval and a constant or an
/// increasing Möbius action on it. Decreasing Möbius actions are rejected
/// at construction; no transformation in the order- or
/// orientation-preserving families is decreasing on a piece.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Piece {
    pub domain: Interval,
    pub action: Action,
}

impl Piece {
    pub fn constant(domain: Interval, value: ExtRat) -> Self {
        Piece {
            domain,
            action: Action::Const(value),
        }
    }

    pub fn mobius(domain: Interval, m: MobiusMap) -> Self {
        Piece {
            domain,
            action: Action::Mobius(m),
        }
    }

    fn eval(&self, x: &ExtRat) -> Result<ExtRat> {
        match &self.action {
            Action::Const(v) => Ok(v.clone()),
            Action::Mobius(m) => m.eval(x),
        }
    }

    /// Exact image of the piece: a point for constants, an interval with
    /// endpoint values or limits for Möbius actions.
    pub fn image(&self) -> Interval {
        match &self.action {
            Action::Const(v) => {
                Interval::with_adjoined(Bound::closed(v.clone()), Bound::closed(v.clone()))
                    .expect("singleton image")
            }
            Action::Mobius(m) => {
                let lo = image_bound(m, self.domain.lo(), false);
                let hi = image_bound(m, self.domain.hi(), true);
                Interval::with_adjoined(lo, hi).expect("increasing action maps bounds in order")
            }
        }
    }

    fn reflect(&self) -> Piece {
        let action = match &self.action {
            Action::Const(v) => Action::Const(v.neg()),
            Action::Mobius(m) => Action::Mobius(m.reflect()),
        };
        Piece {
            domain: self.domain.reflect(),
            action,
        }
    }
}

fn image_bound(m: &MobiusMap, b: &Bound, upper: bool) -> Bound {
    if let (Some(p), ExtRat::Finite(q)) = (m.pole(), &b.point) {
        if p == *q {
            // pole sits on an open endpoint: the image runs off to infinity
            return Bound::open(if upper {
                ExtRat::PosInf
            } else {
                ExtRat::NegInf
            });
        }
    }
    let v = m.eval(&b.point).expect("pole handled above");
    Bound {
        point: v,
        kind: b.kind,
    }
}

/// A total transformation of a chain, given as finitely many constant or
/// increasing-Möbius pieces whose domains partition the chain.
///
/// Values are immutable and every operation is a pure function. Equality
/// (`==`, [`PiecewiseMap::equals`]) compares the domain chain and the
/// canonical piece list, which coincides with pointwise equality; the
/// declared codomain chain is typing metadata and not part of equality.
#[derive(Debug, Clone)]
pub struct PiecewiseMap {
    domain: Interval,
    codomain: Interval,
    pieces: Vec<Piece>,
}

impl PartialEq for PiecewiseMap {
    fn eq(&self, other: &Self) -> bool {
        self.domain == other.domain && self.pieces == other.pieces
    }
}

impl Eq for PiecewiseMap {}

impl PiecewiseMap {
    /// Validates and canonicalizes piece data into a map.
    pub fn new(domain: Interval, codomain: Interval, pieces: Vec<Piece>) -> Result<Self> {
        if pieces.is_empty() {
            return Err(Error::InvariantViolation {
                piece: 0,
                reason: "no pieces".into(),
            });
        }
        let mut pieces = pieces;
        pieces.sort_by(|a, b| a.domain.lo().point.cmp(&b.domain.lo().point));

        // singleton-domain pieces act as constants
        for p in pieces.iter_mut() {
            if p.domain.is_singleton() {
                if let Action::Mobius(m) = &p.action {
                    let v =
                        m.eval(&p.domain.lo().point)
                            .map_err(|_| Error::InvariantViolation {
                                piece: 0,
                                reason: "pole on a singleton piece".into(),
                            })?;
                    p.action = Action::Const(v);
                }
            }
        }

        // the domains must tile the chain exactly
        if *pieces[0].domain.lo() != *domain.lo() {
            return Err(Error::InvariantViolation {
                piece: 0,
                reason: format!(
                    "first piece starts at {:?}, chain at {:?}",
                    pieces[0].domain.lo(),
                    domain.lo()
                ),
            });
        }
        if *pieces.last().unwrap().domain.hi() != *domain.hi() {
            return Err(Error::InvariantViolation {
                piece: pieces.len() - 1,
                reason: "last piece does not reach the end of the chain".into(),
            });
        }
        for i in 0..pieces.len() - 1 {
            let a = pieces[i].domain.hi();
            let b = pieces[i + 1].domain.lo();
            if a.point != b.point || a.is_closed() == b.is_closed() {
                return Err(Error::InvariantViolation {
                    piece: i,
                    reason: format!("pieces {i} and {} overlap or leave a gap", i + 1),
                });
            }
        }

        // monotonicity and codomain containment per piece
        for (i, p) in pieces.iter().enumerate() {
            if let Action::Mobius(m) = &p.action {
                match m.monotone_on(&p.domain) {
                    Monotonicity::Increasing => {}
                    Monotonicity::Decreasing => {
                        return Err(Error::InvariantViolation {
                            piece: i,
                            reason: "decreasing Möbius action".into(),
                        })
                    }
                    Monotonicity::PoleInside => {
                        return Err(Error::InvariantViolation {
                            piece: i,
                            reason: "pole inside the piece domain".into(),
                        })
                    }
                }
            }
            let img = p.image();
            if !img.is_subset_of(&codomain) {
                return Err(Error::InvariantViolation {
                    piece: i,
                    reason: format!("image {img} escapes the codomain {codomain}"),
                });
            }
        }

        let pieces = merge_pieces(pieces);
        Ok(PiecewiseMap {
            domain,
            codomain,
            pieces,
        })
    }

    pub fn identity(chain: Interval) -> Self {
        let piece = if chain.is_singleton() {
            Piece::constant(chain.clone(), chain.lo().point.clone())
        } else {
            Piece::mobius(chain.clone(), MobiusMap::identity())
        };
        PiecewiseMap::new(chain.clone(), chain, vec![piece]).expect("identity is valid")
    }

    pub fn constant(chain: Interval, codomain: Interval, value: ExtRat) -> Result<Self> {
        PiecewiseMap::new(chain.clone(), codomain, vec![Piece::constant(chain, value)])
    }

    pub fn single_mobius(domain: Interval, codomain: Interval, m: MobiusMap) -> Result<Self> {
        PiecewiseMap::new(domain.clone(), codomain, vec![Piece::mobius(domain, m)])
    }

    pub fn domain(&self) -> &Interval {
        &self.domain
    }

    pub fn codomain(&self) -> &Interval {
        &self.codomain
    }

    pub fn pieces(&self) -> &[Piece] {
        &self.pieces
    }

    /// Same map with a different declared codomain; fails if the image
    /// escapes it.
    pub fn with_codomain(&self, codomain: Interval) -> Result<Self> {
        PiecewiseMap::new(self.domain.clone(), codomain, self.pieces.clone())
    }

    pub fn eval(&self, x: &ExtRat) -> Result<ExtRat> {
        let piece = self
            .pieces
            .iter()
            .find(|p| p.domain.contains(x))
            .ok_or(Error::OutOfDomain)?;
        piece.eval(x)
    }

    /// Canonical "apply `self`, then `next`".
    pub fn compose(&self, next: &PiecewiseMap) -> Result<PiecewiseMap> {
        if !self.codomain.is_subset_of(&next.domain) {
            return Err(Error::DomainMismatch);
        }
        let mut pieces = Vec::new();
        for p in &self.pieces {
            match &p.action {
                Action::Const(v) => {
                    let w = next.eval(v).map_err(|_| Error::DomainMismatch)?;
                    pieces.push(Piece::constant(p.domain.clone(), w));
                }
                Action::Mobius(m) => {
                    let img = p.image();
                    let m_inv = m.invert();
                    for q in &next.pieces {
                        let Some(k) = q.domain.intersect(&img) else {
                            continue;
                        };
                        let lo = pullback_bound(k.lo(), &img, &p.domain, &m_inv);
                        let hi = pullback_bound(k.hi(), &img, &p.domain, &m_inv);
                        let sub = Interval::with_adjoined(lo, hi)
                            .expect("pullback of a nonempty value range");
                        let action = match &q.action {
                            Action::Const(w) => Action::Const(w.clone()),
                            Action::Mobius(n) => Action::Mobius(m.compose(n)),
                        };
                        pieces.push(Piece {
                            domain: sub,
                            action,
                        });
                    }
                }
            }
        }
        PiecewiseMap::new(self.domain.clone(), next.codomain.clone(), pieces)
    }

    /// True iff the canonical forms agree on the same domain chain;
    /// equivalent to pointwise equality.
    pub fn equals(&self, other: &PiecewiseMap) -> bool {
        self == other
    }

    /// Exact image as a normalized union of intervals.
    pub fn image(&self) -> SubsetModel {
        SubsetModel::from_parts(self.pieces.iter().map(|p| p.image()).collect())
    }

    /// Restriction to a subinterval of the domain chain.
    pub fn restrict(&self, to: &Interval) -> Result<PiecewiseMap> {
        if !to.is_subset_of(&self.domain) {
            return Err(Error::OutOfDomain);
        }
        let mut pieces = Vec::new();
        for p in &self.pieces {
            if let Some(d) = p.domain.intersect(to) {
                pieces.push(Piece {
                    domain: d,
                    action: p.action.clone(),
                });
            }
        }
        PiecewiseMap::new(to.clone(), self.codomain.clone(), pieces)
    }

    /// The conjugate x ↦ −self(−x) on the mirrored chain.
    pub fn reflect(&self) -> PiecewiseMap {
        let mut pieces: Vec<Piece> = self.pieces.iter().map(|p| p.reflect()).collect();
        pieces.reverse();
        PiecewiseMap::new(self.domain.reflect(), self.codomain.reflect(), pieces)
            .expect("reflection preserves all invariants")
    }
}

fn pullback_bound(k: &Bound, img: &Interval, dom: &Interval, m_inv: &MobiusMap) -> Bound {
    // a bound at either image endpoint pulls back to the matching domain
    // endpoint; evaluating there could hit the inverse's pole when the
    // endpoint is a limit value
    if k.point == img.lo().point {
        return Bound {
            point: dom.lo().point.clone(),
            kind: k.kind,
        };
    }
    if k.point == img.hi().point {
        return Bound {
            point: dom.hi().point.clone(),
            kind: k.kind,
        };
    }
    let v = m_inv
        .eval(&k.point)
        .expect("interior value of the image pulls back cleanly");
    Bound {
        point: v,
        kind: k.kind,
    }
}

fn merge_pieces(pieces: Vec<Piece>) -> Vec<Piece> {
    let mut pieces = pieces;
    loop {
        let mut merged = false;
        let mut out: Vec<Piece> = Vec::with_capacity(pieces.len());
        for p in pieces {
            let Some(last) = out.last_mut() else {
                out.push(p);
                continue;
            };
            if let Some(joined) = try_merge(last, &p) {
                *last = joined;
                merged = true;
            } else {
                out.push(p);
            }
        }
        pieces = out;
        if !merged {
            return pieces;
        }
    }
}

fn try_merge(a: &Piece, b: &Piece) -> Option<Piece> {
    let domain = a.domain.try_union(&b.domain)?;
    match (&a.action, &b.action) {
        (Action::Const(v), Action::Const(w)) if v == w => Some(Piece::constant(domain, v.clone())),
        (Action::Mobius(m), Action::Mobius(n)) if m == n => Some(Piece::mobius(domain, m.clone())),
        (Action::Const(v), Action::Mobius(m)) if a.domain.is_singleton() => {
            (m.eval(&a.domain.lo().point) == Ok(v.clone()))
                .then(|| Piece::mobius(domain, m.clone()))
        }
        (Action::Mobius(m), Action::Const(v)) if b.domain.is_singleton() => {
            (m.eval(&b.domain.lo().point) == Ok(v.clone()))
                .then(|| Piece::mobius(domain, m.clone()))
        }
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{int, rat};

    fn iv(s: &str) -> Interval {
        s.parse().unwrap()
    }

    fn mob(a: i64, b: i64, c: i64, d: i64) -> MobiusMap {
        MobiusMap::new(int(a), int(b), int(c), int(d)).unwrap()
    }

    /// The running two-piece example: (−∞,0] ↦ (2−x)/(4−4x), (0,+∞) ↦ x/(4x+4).
    pub(crate) fn alpha_star() -> PiecewiseMap {
        PiecewiseMap::new(
            Interval::full(),
            iv("(0,1)"),
            vec![
                Piece::mobius(iv("(-inf,0]"), mob(-1, 2, -4, 4)),
                Piece::mobius(iv("(0,+inf)"), mob(1, 0, 4, 4)),
            ],
        )
        .unwrap()
    }

    #[test]
    fn identity_eval() {
        let id = PiecewiseMap::identity(iv("[0,1]"));
        assert_eq!(id.eval(&rat(1, 2).into()).unwrap(), rat(1, 2).into());
        assert_eq!(id.eval(&rat(2, 1).into()), Err(Error::OutOfDomain));
    }

    #[test]
    fn alpha_star_image() {
        assert_eq!(alpha_star().image().to_string(), "(0,1/4) u (1/4,1/2]");
    }

    #[test]
    fn constant_image_is_a_point() {
        let f =
            PiecewiseMap::constant(Interval::full(), Interval::full(), rat(1, 2).into()).unwrap();
        assert_eq!(f.image().to_string(), "{1/2}");
    }

    #[test]
    fn rejects_overlap_gap_and_decreasing() {
        let overlap = PiecewiseMap::new(
            iv("[0,2]"),
            iv("[0,2]"),
            vec![
                Piece::constant(iv("[0,1)"), rat(0, 1).into()),
                Piece::constant(iv("[0,2]"), rat(1, 1).into()),
            ],
        );
        assert!(matches!(overlap, Err(Error::InvariantViolation { .. })));

        let decreasing =
            PiecewiseMap::single_mobius(iv("(0,1)"), Interval::full(), mob(0, 1, 1, -1));
        assert!(matches!(decreasing, Err(Error::InvariantViolation { .. })));

        let pole = PiecewiseMap::single_mobius(iv("(-1,1)"), Interval::full(), mob(0, 1, 1, 0));
        assert!(matches!(pole, Err(Error::InvariantViolation { .. })));
    }

    #[test]
    fn canonicalization_merges_split_identity() {
        let id = PiecewiseMap::identity(iv("[0,1]"));
        let split = PiecewiseMap::new(
            iv("[0,1]"),
            iv("[0,1]"),
            vec![
                Piece::mobius(iv("[0,1/2)"), MobiusMap::identity()),
                Piece::mobius(iv("[1/2,1]"), MobiusMap::identity()),
            ],
        )
        .unwrap();
        assert!(id.equals(&split));
        assert_eq!(split.pieces().len(), 1);

        // a singleton constant agreeing with its Möbius neighbor merges too
        let with_point = PiecewiseMap::new(
            iv("[0,1]"),
            iv("[0,1]"),
            vec![
                Piece::constant(iv("{0}"), rat(0, 1).into()),
                Piece::mobius(iv("(0,1]"), MobiusMap::identity()),
            ],
        )
        .unwrap();
        assert!(id.equals(&with_point));
    }

    #[test]
    fn compose_pointwise() {
        let f = alpha_star();
        let g = PiecewiseMap::identity(iv("(0,1)"));
        let fg = f.compose(&g).unwrap();
        assert!(fg.equals(&f));

        // ν on (0,1) then ν⁻¹ on (1,+∞) is the identity on (0,1)
        let nu =
            PiecewiseMap::single_mobius(iv("(0,1)"), iv("(1,+inf)"), mob(0, 1, -1, 1)).unwrap();
        let nu_inv =
            PiecewiseMap::single_mobius(iv("(1,+inf)"), iv("(0,1)"), mob(1, -1, 1, 0)).unwrap();
        let id = nu.compose(&nu_inv).unwrap();
        assert!(id.equals(&PiecewiseMap::identity(iv("(0,1)"))));
    }

    #[test]
    fn compose_checks_chains() {
        let f = PiecewiseMap::identity(iv("[0,1]"));
        let g = PiecewiseMap::identity(iv("[0,1/2]"));
        assert_eq!(f.compose(&g).err(), Some(Error::DomainMismatch));
    }

    #[test]
    fn restriction_clips_pieces() {
        let f = alpha_star();
        let left = f.restrict(&iv("(-inf,0]")).unwrap();
        assert_eq!(left.pieces().len(), 1);
        assert_eq!(left.image().to_string(), "(1/4,1/2]");
    }

    #[test]
    fn reflection_conjugates() {
        let f = alpha_star();
        let r = f.reflect();
        assert_eq!(r.domain(), &Interval::full());
        // f(0) = 1/2, so reflect(f)(0) = −1/2
        assert_eq!(r.eval(&rat(0, 1).into()).unwrap(), rat(-1, 2).into());
        assert!(r.reflect().equals(&f));
    }

    #[test]
    fn adjoined_extremum_travels_through_eval() {
        let chain = iv("(-inf,+inf]");
        let f = PiecewiseMap::new(
            chain.clone(),
            chain.clone(),
            vec![
                Piece::mobius(iv("(-inf,+inf)"), MobiusMap::identity()),
                Piece::constant(iv("{+inf}"), rat(0, 1).into()),
            ],
        );
        // identity on the finite part merges with nothing; +inf maps to 0
        let f = f.unwrap();
        assert_eq!(f.eval(&ExtRat::PosInf).unwrap(), rat(0, 1).into());
        assert_eq!(f.eval(&rat(7, 1).into()).unwrap(), rat(7, 1).into());
    }
}
