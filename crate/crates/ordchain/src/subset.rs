use std::fmt;

use crate::error::{Error, Result};
use crate::ext::ExtRat;
use crate::interval::{Bound, BoundKind, Interval};

/// A finite union of pairwise separated intervals, kept sorted and merged.
///
/// Models images of piecewise maps and non-convex restricted ranges. The
/// empty union is allowed and prints as `empty`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubsetModel {
    parts: Vec<Interval>,
}

impl SubsetModel {
    pub fn empty() -> Self {
        SubsetModel { parts: Vec::new() }
    }

    pub fn from_interval(i: Interval) -> Self {
        SubsetModel { parts: vec![i] }
    }

    /// Normalizes an arbitrary list: sorts by lower end and merges any two
    /// parts whose union is convex.
    pub fn from_parts(mut parts: Vec<Interval>) -> Self {
        parts.sort_by(|a, b| {
            a.lo()
                .point
                .cmp(&b.lo().point)
                .then_with(|| closed_first(a.lo().kind).cmp(&closed_first(b.lo().kind)))
        });
        let mut merged: Vec<Interval> = Vec::with_capacity(parts.len());
        for p in parts {
            if let Some(last) = merged.last_mut() {
                if let Some(u) = last.try_union(&p) {
                    *last = u;
                    continue;
                }
            }
            merged.push(p);
        }
        SubsetModel { parts: merged }
    }

    pub fn parts(&self) -> &[Interval] {
        &self.parts
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn is_convex(&self) -> bool {
        self.parts.len() == 1
    }

    pub fn as_interval(&self) -> Option<&Interval> {
        if self.parts.len() == 1 {
            Some(&self.parts[0])
        } else {
            None
        }
    }

    pub fn contains_point(&self, x: &ExtRat) -> bool {
        self.parts.iter().any(|p| p.contains(x))
    }

    pub fn contains_interval(&self, i: &Interval) -> bool {
        self.parts.iter().any(|p| i.is_subset_of(p))
    }

    pub fn contains_subset(&self, other: &SubsetModel) -> bool {
        other.parts.iter().all(|p| self.contains_interval(p))
    }

    pub fn min(&self) -> Option<ExtRat> {
        let first = self.parts.first()?;
        if first.has_min() {
            Some(first.lo().point.clone())
        } else {
            None
        }
    }

    pub fn max(&self) -> Option<ExtRat> {
        let last = self.parts.last()?;
        if last.has_max() {
            Some(last.hi().point.clone())
        } else {
            None
        }
    }

    pub fn infimum(&self) -> Option<&ExtRat> {
        self.parts.first().map(|p| &p.lo().point)
    }

    pub fn supremum(&self) -> Option<&ExtRat> {
        self.parts.last().map(|p| &p.hi().point)
    }

    /// The restriction { y ∈ self : y ≤ h }.
    pub fn clip_at_most(&self, h: &ExtRat) -> SubsetModel {
        let mut out = Vec::new();
        for p in &self.parts {
            if p.lo().point > *h {
                break;
            }
            let cap = Interval::with_adjoined(p.lo().clone(), Bound::closed(h.clone()))
                .expect("clip keeps lo <= hi");
            match p.intersect(&cap) {
                Some(i) => out.push(i),
                None => break,
            }
        }
        SubsetModel { parts: out }
    }

    /// Union with another subset, renormalized.
    pub fn union(&self, other: &SubsetModel) -> SubsetModel {
        let mut all = self.parts.clone();
        all.extend(other.parts.iter().cloned());
        SubsetModel::from_parts(all)
    }

    pub fn intersect(&self, other: &SubsetModel) -> SubsetModel {
        let mut out = Vec::new();
        for p in &self.parts {
            for q in &other.parts {
                if let Some(i) = p.intersect(q) {
                    out.push(i);
                }
            }
        }
        SubsetModel::from_parts(out)
    }

    /// Smallest interval containing the whole subset.
    pub fn hull(&self) -> Option<Interval> {
        let first = self.parts.first()?;
        let last = self.parts.last()?;
        Some(
            Interval::with_adjoined(first.lo().clone(), last.hi().clone())
                .expect("hull of sorted parts is valid"),
        )
    }

    pub fn reflect(&self) -> SubsetModel {
        let mut parts: Vec<Interval> = self.parts.iter().map(|p| p.reflect()).collect();
        parts.reverse();
        SubsetModel { parts }
    }
}

fn closed_first(k: BoundKind) -> u8 {
    match k {
        BoundKind::Closed => 0,
        BoundKind::Open => 1,
    }
}

impl fmt::Display for SubsetModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "empty");
        }
        let texts: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "{}", texts.join(" u "))
    }
}

impl std::str::FromStr for SubsetModel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "empty" {
            return Ok(SubsetModel::empty());
        }
        let mut parts = Vec::new();
        for chunk in s.split(" u ") {
            let chunk = chunk.trim();
            if chunk.is_empty() {
                return Err(Error::ParseError {
                    line: 0,
                    msg: "empty part in subset".into(),
                });
            }
            parts.push(chunk.parse::<Interval>()?);
        }
        Ok(SubsetModel::from_parts(parts))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    fn sm(s: &str) -> SubsetModel {
        s.parse().unwrap()
    }

    #[test]
    fn normalization_merges_abutting_parts() {
        let m =
            SubsetModel::from_parts(vec!["[1/2,1]".parse().unwrap(), "[0,1/2)".parse().unwrap()]);
        assert_eq!(m.to_string(), "[0,1]");
        let m = SubsetModel::from_parts(vec![
            "(0,1/4)".parse().unwrap(),
            "(1/4,1/2]".parse().unwrap(),
        ]);
        assert_eq!(m.to_string(), "(0,1/4) u (1/4,1/2]");
    }

    #[test]
    fn containment_and_extrema() {
        let y = sm("{0} u [1,2) u {3}");
        assert_eq!(y.min(), Some(rat(0, 1).into()));
        assert_eq!(y.max(), Some(rat(3, 1).into()));
        assert!(y.contains_point(&rat(3, 2).into()));
        assert!(!y.contains_point(&rat(5, 2).into()));
        assert!(y.contains_interval(&"[1,3/2)".parse().unwrap()));
        assert!(!y.contains_interval(&"[1,2]".parse().unwrap()));
        assert!(sm("(0,1)").contains_subset(&sm("(0,1/4) u (1/4,1/2]")));
    }

    #[test]
    fn clipping() {
        assert_eq!(
            sm("(0,1)").clip_at_most(&rat(3, 4).into()).to_string(),
            "(0,3/4]"
        );
        assert_eq!(
            sm("{0} u [1,2) u {3}")
                .clip_at_most(&rat(3, 2).into())
                .to_string(),
            "{0} u [1,3/2]"
        );
    }

    #[test]
    fn text_round_trip() {
        for s in ["empty", "(0,1)", "{0} u [1,2) u {3}"] {
            assert_eq!(sm(s).to_string(), s);
        }
    }
}
