//! Brute-force oracle on finite chains {1 < … < n}: enumeration of the
//! order- and orientation-preserving families with restricted range,
//! subsemigroup closures, ranks, relative ranks, and single relative
//! generators. Desk-scale ground truth for the semigroup machinery.

use std::collections::HashSet;
use std::fmt;

use itertools::Itertools;

use crate::error::{Error, Result};

/// Default cap on the chain size; 7^7 = 823543 maps stay enumerable.
pub const DEFAULT_CAP: usize = 7;

/// A full transformation of {1..n} as its image vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FiniteMap {
    images: Vec<u8>,
}

/// The three families the oracle enumerates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FiniteFamily {
    All,
    OrderPreserving,
    OrientationPreserving,
}

/// Classification of a finite map, mirroring the chain-model shape.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FiniteClassification {
    OrderPreserving,
    OrientationProper {
        ideal_size: usize,
        overlap: Option<u8>,
    },
    Neither,
}

impl FiniteMap {
    pub fn new(images: Vec<u8>) -> Result<Self> {
        let n = images.len() as u8;
        if images.is_empty() || images.iter().any(|&v| v < 1 || v > n) {
            return Err(Error::BadParams("image entries must lie in 1..=n".into()));
        }
        Ok(FiniteMap { images })
    }

    pub fn identity(n: usize) -> Self {
        FiniteMap {
            images: (1..=n as u8).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[u8] {
        &self.images
    }

    pub fn apply(&self, x: u8) -> u8 {
        self.images[(x - 1) as usize]
    }

    /// Right-action composition: apply `self`, then `next`.
    pub fn compose(&self, next: &FiniteMap) -> FiniteMap {
        FiniteMap {
            images: self
                .images
                .iter()
                .map(|&v| next.images[(v - 1) as usize])
                .collect(),
        }
    }

    pub fn image_set(&self) -> Vec<u8> {
        let mut v = self.images.clone();
        v.sort_unstable();
        v.dedup();
        v
    }

    fn weakly_increasing(slice: &[u8]) -> bool {
        slice.windows(2).all(|w| w[0] <= w[1])
    }

    pub fn is_order_preserving(&self) -> bool {
        Self::weakly_increasing(&self.images)
    }

    /// Scans the n−1 proper cuts for the orientation-preserving pattern.
    pub fn classify(&self) -> FiniteClassification {
        if self.is_order_preserving() {
            return FiniteClassification::OrderPreserving;
        }
        for k in 1..self.images.len() {
            let (lo, hi) = self.images.split_at(k);
            if !Self::weakly_increasing(lo) || !Self::weakly_increasing(hi) {
                continue;
            }
            let min_lo = *lo.iter().min().unwrap();
            let max_hi = *hi.iter().max().unwrap();
            if max_hi > min_lo {
                continue;
            }
            let overlap = (max_hi == min_lo).then_some(min_lo);
            return FiniteClassification::OrientationProper {
                ideal_size: k,
                overlap,
            };
        }
        FiniteClassification::Neither
    }

    pub fn is_orientation_preserving(&self) -> bool {
        !matches!(self.classify(), FiniteClassification::Neither)
    }
}

impl fmt::Display for FiniteMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.images.iter().map(|v| v.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

impl std::str::FromStr for FiniteMap {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let inner = s
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(|| Error::ParseError {
                line: 0,
                msg: format!("expected [..], got `{s}`"),
            })?;
        let images: Vec<u8> = inner
            .split(',')
            .map(|t| {
                t.trim().parse::<u8>().map_err(|_| Error::ParseError {
                    line: 0,
                    msg: format!("bad entry `{t}`"),
                })
            })
            .collect::<Result<_>>()?;
        FiniteMap::new(images)
    }
}

/// A composition-closed set of maps together with its generator count.
#[derive(Debug, Clone)]
pub struct ClosureResult {
    pub elements: Vec<FiniteMap>,
    pub generator_count: usize,
}

impl ClosureResult {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, f: &FiniteMap) -> bool {
        self.elements.binary_search(f).is_ok()
    }
}

fn check_cap(n: usize, cap: usize) -> Result<()> {
    if n == 0 || n > cap {
        return Err(Error::CapExceeded { n, cap });
    }
    Ok(())
}

/// All maps of the family with image inside `y`, in lexicographic order.
pub fn enumerate_family(n: usize, family: FiniteFamily, y: &[u8]) -> Result<Vec<FiniteMap>> {
    enumerate_family_capped(n, family, y, DEFAULT_CAP)
}

pub fn enumerate_family_capped(
    n: usize,
    family: FiniteFamily,
    y: &[u8],
    cap: usize,
) -> Result<Vec<FiniteMap>> {
    check_cap(n, cap)?;
    let y: Vec<u8> = {
        let mut v = y.to_vec();
        v.sort_unstable();
        v.dedup();
        v
    };
    if y.is_empty() || y.iter().any(|&v| v < 1 || v as usize > n) {
        return Err(Error::BadParams(
            "the range must be a nonempty subset of 1..=n".into(),
        ));
    }
    let mut out = Vec::new();
    let mut stack = vec![Vec::<u8>::new()];
    while let Some(prefix) = stack.pop() {
        if prefix.len() == n {
            let f = FiniteMap { images: prefix };
            let keep = match family {
                FiniteFamily::All => true,
                FiniteFamily::OrderPreserving => f.is_order_preserving(),
                FiniteFamily::OrientationPreserving => f.is_orientation_preserving(),
            };
            if keep {
                out.push(f);
            }
            continue;
        }
        for &v in y.iter().rev() {
            let mut next = prefix.clone();
            next.push(v);
            stack.push(next);
        }
    }
    out.sort();
    Ok(out)
}

/// Least composition-closed superset of the generators, by worklist
/// saturation with deterministic iteration order.
pub fn closure(gens: &[FiniteMap]) -> Result<ClosureResult> {
    if let Some(first) = gens.first() {
        if gens.iter().any(|g| g.n() != first.n()) {
            return Err(Error::BadParams(
                "generators must share the chain size".into(),
            ));
        }
    }
    let mut elements: Vec<FiniteMap> = Vec::new();
    let mut seen: HashSet<Vec<u8>> = HashSet::new();
    let mut work: Vec<FiniteMap> = Vec::new();
    for g in gens {
        if seen.insert(g.images.clone()) {
            elements.push(g.clone());
            work.push(g.clone());
        }
    }
    let mut cursor = 0;
    while cursor < work.len() {
        let f = work[cursor].clone();
        cursor += 1;
        let snapshot = elements.len();
        for i in 0..snapshot {
            let e = elements[i].clone();
            for product in [f.compose(&e), e.compose(&f)] {
                if seen.insert(product.images.clone()) {
                    elements.push(product.clone());
                    work.push(product);
                }
            }
        }
    }
    elements.sort();
    Ok(ClosureResult {
        elements,
        generator_count: gens.len(),
    })
}

fn sorted_set(maps: &[FiniteMap]) -> Vec<FiniteMap> {
    let mut v = maps.to_vec();
    v.sort();
    v.dedup();
    v
}

/// Smallest r such that some B ⊆ S of size r satisfies ⟨A ∪ B⟩ = S,
/// together with a witness B. Candidates outside ⟨A⟩ suffice; they are
/// deduplicated by the closure they induce before pairs are tried.
pub fn relative_rank(s: &[FiniteMap], a: &[FiniteMap]) -> Result<(usize, Vec<FiniteMap>)> {
    let s = sorted_set(s);
    let a = sorted_set(a);
    if !a.iter().all(|f| s.binary_search(f).is_ok()) {
        return Err(Error::NotSubset);
    }
    let s_closure = closure(&s)?;
    if s_closure.elements != s {
        return Err(Error::NotClosed);
    }
    let a_closure = closure(&a)?;
    if a_closure.elements == s {
        return Ok((0, Vec::new()));
    }

    // candidates outside ⟨A⟩, largest image first so full-image wraps are
    // tried early
    let mut candidates: Vec<FiniteMap> = s
        .iter()
        .filter(|f| !a_closure.contains(f))
        .cloned()
        .collect();
    candidates.sort_by(|x, y| {
        y.image_set()
            .len()
            .cmp(&x.image_set().len())
            .then_with(|| x.cmp(y))
    });

    // deduplicate by the closure fingerprint of A ∪ {x}
    let mut reps: Vec<FiniteMap> = Vec::new();
    let mut fingerprints: HashSet<Vec<FiniteMap>> = HashSet::new();
    for x in &candidates {
        let mut gens = a.clone();
        gens.push(x.clone());
        let cl = closure(&gens)?;
        if cl.elements == s {
            return Ok((1, vec![x.clone()]));
        }
        if fingerprints.insert(cl.elements) {
            reps.push(x.clone());
        }
    }

    for r in 2..=reps.len() {
        for combo in reps.iter().combinations(r) {
            let mut gens = a.clone();
            gens.extend(combo.iter().map(|f| (*f).clone()));
            if closure(&gens)?.elements == s {
                return Ok((r, combo.into_iter().cloned().collect()));
            }
        }
    }
    Err(Error::BadParams(
        "no generating extension exists inside S".into(),
    ))
}

/// All φ in OP(n,Y) \ O(n,Y) that generate OP(n,Y) together with O(n,Y).
pub fn single_relative_generators(n: usize, y: &[u8]) -> Result<Vec<FiniteMap>> {
    single_relative_generators_capped(n, y, DEFAULT_CAP)
}

pub fn single_relative_generators_capped(n: usize, y: &[u8], cap: usize) -> Result<Vec<FiniteMap>> {
    let op = enumerate_family_capped(n, FiniteFamily::OrientationPreserving, y, cap)?;
    let o = enumerate_family_capped(n, FiniteFamily::OrderPreserving, y, cap)?;
    let mut out = Vec::new();
    for phi in &op {
        if phi.is_order_preserving() {
            continue;
        }
        let mut gens = o.clone();
        gens.push(phi.clone());
        if closure(&gens)?.elements == op {
            out.push(phi.clone());
        }
    }
    Ok(out)
}

/// C(2n−1, n−1), the classical count of order-preserving maps on n points.
pub fn order_preserving_count(n: usize) -> u64 {
    let mut c: u64 = 1;
    for i in 1..n as u64 {
        c = c * (n as u64 + i) / i;
    }
    c
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fm(s: &str) -> FiniteMap {
        s.parse().unwrap()
    }

    fn full(n: usize) -> Vec<u8> {
        (1..=n as u8).collect()
    }

    #[test]
    fn enumerate_small_families() {
        let o2 = enumerate_family(2, FiniteFamily::OrderPreserving, &full(2)).unwrap();
        assert_eq!(o2, vec![fm("[1,1]"), fm("[1,2]"), fm("[2,2]")]);
        let op2 = enumerate_family(2, FiniteFamily::OrientationPreserving, &full(2)).unwrap();
        assert_eq!(op2.len(), 4);
        let o3 = enumerate_family(3, FiniteFamily::OrderPreserving, &full(3)).unwrap();
        assert_eq!(o3.len(), 10);
    }

    #[test]
    fn binomial_cross_check() {
        for n in 2..=6 {
            let count = enumerate_family(n, FiniteFamily::OrderPreserving, &full(n))
                .unwrap()
                .len() as u64;
            assert_eq!(count, order_preserving_count(n), "n = {n}");
        }
    }

    #[test]
    fn cap_is_enforced() {
        assert!(matches!(
            enumerate_family(8, FiniteFamily::All, &full(8)),
            Err(Error::CapExceeded { .. })
        ));
        assert!(enumerate_family_capped(8, FiniteFamily::OrderPreserving, &full(8), 8).is_ok());
    }

    #[test]
    fn classify_examples() {
        assert_eq!(
            fm("[1,2,3]").classify(),
            FiniteClassification::OrderPreserving
        );
        assert_eq!(
            fm("[2,1]").classify(),
            FiniteClassification::OrientationProper {
                ideal_size: 1,
                overlap: None
            }
        );
        assert_eq!(
            fm("[3,1,2]").classify(),
            FiniteClassification::OrientationProper {
                ideal_size: 1,
                overlap: None
            }
        );
        assert_eq!(fm("[1,3,2]").classify(), FiniteClassification::Neither);
        // a shared boundary value gives the singleton overlap
        assert_eq!(
            fm("[2,2,1,2]").classify(),
            FiniteClassification::OrientationProper {
                ideal_size: 2,
                overlap: Some(2)
            }
        );
    }

    #[test]
    fn closure_examples() {
        let id = FiniteMap::identity(2);
        assert_eq!(
            closure(std::slice::from_ref(&id)).unwrap().elements,
            vec![id]
        );
        let swap = fm("[2,1]");
        let cl = closure(&[swap]).unwrap();
        assert_eq!(cl.elements, vec![fm("[1,2]"), fm("[2,1]")]);
        // O2 plus the swap saturates to all four maps
        let mut gens = enumerate_family(2, FiniteFamily::OrderPreserving, &full(2)).unwrap();
        gens.push(fm("[2,1]"));
        assert_eq!(closure(&gens).unwrap().len(), 4);
    }

    #[test]
    fn families_are_composition_closed() {
        for n in 2..=4 {
            for family in [
                FiniteFamily::OrderPreserving,
                FiniteFamily::OrientationPreserving,
            ] {
                let fam = enumerate_family(n, family, &full(n)).unwrap();
                assert_eq!(closure(&fam).unwrap().elements, fam, "n = {n}");
            }
        }
    }

    #[test]
    fn relative_rank_examples() {
        let o2 = enumerate_family(2, FiniteFamily::OrderPreserving, &full(2)).unwrap();
        let op2 = enumerate_family(2, FiniteFamily::OrientationPreserving, &full(2)).unwrap();
        assert_eq!(relative_rank(&op2, &op2).unwrap(), (0, vec![]));
        assert_eq!(relative_rank(&op2, &o2).unwrap(), (1, vec![fm("[2,1]")]));
        let (r, witness) = relative_rank(&o2, &[]).unwrap();
        assert_eq!(r, 3);
        assert_eq!(sorted_set(&witness), o2);
        assert_eq!(relative_rank(&o2, &op2).err(), Some(Error::NotSubset));
    }

    #[test]
    fn relative_rank_is_monotone_under_enlargement() {
        let o3 = enumerate_family(3, FiniteFamily::OrderPreserving, &full(3)).unwrap();
        let a: Vec<FiniteMap> = vec![fm("[1,1,1]")];
        let a_bigger: Vec<FiniteMap> = vec![fm("[1,1,1]"), fm("[1,2,3]"), fm("[3,3,3]")];
        let r_small = relative_rank(&o3, &a).unwrap().0;
        let r_big = relative_rank(&o3, &a_bigger).unwrap().0;
        assert!(r_big <= r_small);
        assert!(r_small <= relative_rank(&o3, &[]).unwrap().0);
    }

    #[test]
    fn relative_rank_rejects_unclosed() {
        // {identity, [2,1,1]} is not closed: [2,1,1]^2 = [1,2,2]
        let s = vec![FiniteMap::identity(3), fm("[2,1,1]")];
        assert_eq!(relative_rank(&s, &[]).err(), Some(Error::NotClosed));
    }

    #[test]
    fn single_generators_n2() {
        assert_eq!(
            single_relative_generators(2, &full(2)).unwrap(),
            vec![fm("[2,1]")]
        );
        // a one-point range leaves only constants, all order-preserving
        assert_eq!(single_relative_generators(2, &[1]).unwrap(), vec![]);
    }

    #[test]
    fn single_generators_n3_are_full_image() {
        let gens = single_relative_generators(3, &full(3)).unwrap();
        assert!(!gens.is_empty());
        for g in &gens {
            assert_eq!(g.image_set().len(), 3, "{g} must be a bijection");
        }
        assert!(gens.contains(&fm("[2,3,1]")));
        assert!(gens.contains(&fm("[3,1,2]")));
    }
}
