use crate::error::{Error, Result};
use crate::ext::ExtRat;
use crate::interval::{interior_between, Bound, BoundKind, Interval};
use crate::piecewise::{Piece, PiecewiseMap};
use crate::subset::SubsetModel;

/// The two transformation families of interest.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    /// O: order-preserving transformations.
    OrderPreserving,
    /// OP: orientation-preserving transformations.
    OrientationPreserving,
}

/// Intersection pattern of the two side images of an orientation-proper map:
/// empty, or a single shared point that is simultaneously the minimum of the
/// ideal-side image and the maximum of the complement-side image.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Overlap {
    Empty,
    Singleton(ExtRat),
}

/// Where a map sits relative to the order-preserving hierarchy.
#[derive(Debug, Clone, PartialEq, Eq)]
#[allow(clippy::large_enum_variant)]
pub enum Classification {
    OrderPreserving,
    /// Orientation-preserving with a proper nonempty ideal: order-preserving
    /// on the ideal and on its complement, with every complement value at or
    /// below every ideal value.
    OrientationProper {
        ideal: Interval,
        overlap: Overlap,
    },
    Neither,
}

impl Classification {
    pub fn is_orientation_preserving(&self) -> bool {
        !matches!(self, Classification::Neither)
    }

    pub fn ideal(&self) -> Option<&Interval> {
        match self {
            Classification::OrientationProper { ideal, .. } => Some(ideal),
            _ => None,
        }
    }
}

fn boundary_ok(pieces: &[Piece]) -> Vec<bool> {
    (0..pieces.len().saturating_sub(1))
        .map(|i| pieces[i].image().hi().point <= pieces[i + 1].image().lo().point)
        .collect()
}

struct ValueStats {
    inf: ExtRat,
    inf_attained: bool,
    sup: ExtRat,
    sup_attained: bool,
}

fn value_stats(pieces: &[Piece]) -> ValueStats {
    let images: Vec<Interval> = pieces.iter().map(|p| p.image()).collect();
    let inf = images.iter().map(|i| i.lo().point.clone()).min().unwrap();
    let sup = images.iter().map(|i| i.hi().point.clone()).max().unwrap();
    let inf_attained = images
        .iter()
        .any(|i| i.lo().point == inf && i.lo().is_closed());
    let sup_attained = images
        .iter()
        .any(|i| i.hi().point == sup && i.hi().is_closed());
    ValueStats {
        inf,
        inf_attained,
        sup,
        sup_attained,
    }
}

/// The complement of an ideal within a chain.
pub fn ideal_complement(chain: &Interval, ideal: &Interval) -> Interval {
    let kind = match ideal.hi().kind {
        BoundKind::Open => BoundKind::Closed,
        BoundKind::Closed => BoundKind::Open,
    };
    Interval::with_adjoined(
        Bound {
            point: ideal.hi().point.clone(),
            kind,
        },
        chain.hi().clone(),
    )
    .expect("complement of a proper ideal is nonempty")
}

/// Every proper cut (at a piece boundary) that satisfies the
/// orientation-preserving conditions. For non-constant maps that are not
/// order-preserving this list has exactly one entry.
pub fn orientation_cuts(f: &PiecewiseMap) -> Vec<(Interval, Overlap)> {
    let pieces = f.pieces();
    let ok = boundary_ok(pieces);
    let mut cuts = Vec::new();
    for k in 1..pieces.len() {
        if !ok[..k - 1].iter().all(|&b| b) || !ok[k..].iter().all(|&b| b) {
            continue;
        }
        let side1 = value_stats(&pieces[..k]);
        let side2 = value_stats(&pieces[k..]);
        if side2.sup > side1.inf {
            continue;
        }
        let overlap = if side2.sup == side1.inf && side1.inf_attained && side2.sup_attained {
            Overlap::Singleton(side1.inf.clone())
        } else {
            Overlap::Empty
        };
        let ideal =
            Interval::with_adjoined(f.domain().lo().clone(), pieces[k - 1].domain.hi().clone())
                .expect("prefix of a partition is an interval");
        cuts.push((ideal, overlap));
    }
    cuts
}

/// Decides where the map sits: order-preserving, orientation-preserving with
/// a proper ideal, or neither.
pub fn classify(f: &PiecewiseMap) -> Classification {
    if boundary_ok(f.pieces()).iter().all(|&b| b) {
        return Classification::OrderPreserving;
    }
    match orientation_cuts(f).into_iter().next() {
        Some((ideal, overlap)) => Classification::OrientationProper { ideal, overlap },
        None => Classification::Neither,
    }
}

/// Membership in O(X,Y) or OP(X,Y): the image must lie in `y` and the
/// classification must match the family.
pub fn member_of(f: &PiecewiseMap, family: Family, y: &SubsetModel) -> bool {
    if !y.contains_subset(&f.image()) {
        return false;
    }
    match family {
        Family::OrderPreserving => matches!(classify(f), Classification::OrderPreserving),
        Family::OrientationPreserving => classify(f).is_orientation_preserving(),
    }
}

/// One side of the extremum audit: the distinguished point, its value, and
/// whether the value is the corresponding image extremum inside `y`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtremumCheck {
    pub point: ExtRat,
    pub value: ExtRat,
    pub ok: bool,
}

/// Result of auditing an orientation-proper map against its image extrema:
/// when the ideal has a maximum its value is the maximum of the image, and
/// dually for the complement's minimum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtremumAudit {
    pub ideal_max: Option<ExtremumCheck>,
    pub complement_min: Option<ExtremumCheck>,
}

impl ExtremumAudit {
    pub fn passed(&self) -> bool {
        let sides = [&self.ideal_max, &self.complement_min];
        sides.iter().filter_map(|s| s.as_ref()).all(|c| c.ok)
            && (self.ideal_max.is_some() || self.complement_min.is_some())
    }
}

pub fn extremum_audit(f: &PiecewiseMap, y: &SubsetModel) -> Result<ExtremumAudit> {
    let classification = classify(f);
    let ideal = match &classification {
        Classification::OrderPreserving => return Err(Error::NotApplicable),
        Classification::Neither => {
            return Err(Error::Inapplicable(
                "map is not orientation-preserving".into(),
            ))
        }
        Classification::OrientationProper { ideal, .. } => ideal.clone(),
    };
    let image = f.image();
    if !y.contains_subset(&image) {
        return Err(Error::Inapplicable(
            "image escapes the restricted range".into(),
        ));
    }
    let ideal_max = if ideal.has_max() {
        let point = ideal.hi().point.clone();
        let value = f.eval(&point)?;
        let ok = image.max() == Some(value.clone()) && y.contains_point(&value);
        Some(ExtremumCheck { point, value, ok })
    } else {
        None
    };
    let complement = ideal_complement(f.domain(), &ideal);
    let complement_min = if complement.has_min() {
        let point = complement.lo().point.clone();
        let value = f.eval(&point)?;
        let ok = image.min() == Some(value.clone()) && y.contains_point(&value);
        Some(ExtremumCheck { point, value, ok })
    } else {
        None
    };
    Ok(ExtremumAudit {
        ideal_max,
        complement_min,
    })
}

/// Bounds beyond which the image of an orientation-proper map cannot reach:
/// an upper bound `h` with {y ∈ Y : y > h} ∩ im f = ∅, or the dual lower
/// bound, or both when both extrema of the cut exist.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GapBounds {
    pub upper: Option<ExtRat>,
    pub lower: Option<ExtRat>,
}

pub fn gap_bounds(f: &PiecewiseMap, y: &SubsetModel) -> Result<GapBounds> {
    if y.min().is_some() || y.max().is_some() {
        return Err(Error::Inapplicable(
            "the restricted range has an extremum".into(),
        ));
    }
    if !member_of(f, Family::OrientationPreserving, y) || member_of(f, Family::OrderPreserving, y) {
        return Err(Error::Inapplicable(
            "map must be orientation- but not order-preserving into Y".into(),
        ));
    }
    let Classification::OrientationProper { ideal, .. } = classify(f) else {
        return Err(Error::NotOrientationProper);
    };
    let mut bounds = GapBounds {
        upper: None,
        lower: None,
    };
    if ideal.has_max() {
        bounds.upper = Some(f.eval(&ideal.hi().point)?);
    }
    let complement = ideal_complement(f.domain(), &ideal);
    if complement.has_min() {
        bounds.lower = Some(f.eval(&complement.lo().point)?);
    }
    Ok(bounds)
}

/// A point of the codomain chain lying (weakly) between the complement-side
/// and ideal-side values of an orientation-proper map: the overlap point
/// when the two images meet, else an attained extremum of either side, else
/// a point strictly between.
pub(crate) fn separator_value(f: &PiecewiseMap) -> Result<ExtRat> {
    let Classification::OrientationProper { ideal, overlap } = classify(f) else {
        return Err(Error::NotOrientationProper);
    };
    if let Overlap::Singleton(c) = overlap {
        return Ok(c);
    }
    let cut = f
        .pieces()
        .iter()
        .position(|p| !p.domain.is_subset_of(&ideal))
        .expect("proper ideal leaves a complement piece");
    let side1 = value_stats(&f.pieces()[..cut]);
    let side2 = value_stats(&f.pieces()[cut..]);
    if side1.inf_attained {
        Ok(side1.inf)
    } else if side2.sup_attained {
        Ok(side2.sup)
    } else if side1.inf == side2.sup {
        Ok(side1.inf)
    } else {
        Ok(ExtRat::Finite(interior_between(&side2.sup, &side1.inf)))
    }
}
