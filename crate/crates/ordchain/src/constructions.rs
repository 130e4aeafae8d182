//! The constructive layer: wrap generators for chains with extrema, the
//! single-generator criterion with its sandwich factorization, restricted
//! range factorization pipelines, and the infinite-relative-rank
//! obstruction certificate.

use crate::classify::{
    classify, gap_bounds, ideal_complement, member_of, separator_value, Classification, Family,
    GapBounds,
};
use crate::error::{Error, Result};
use crate::ext::ExtRat;
use crate::interval::{interior_between, Bound, BoundKind, ChainKind, Interval};
use crate::iso::canonical_iso;
use crate::piecewise::{Action, Piece, PiecewiseMap};
use crate::subset::SubsetModel;

/// Role of one factor in a factorization.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FactorLabel {
    OrderPreserving,
    Generator,
}

/// A target map together with factors whose ordered composition reproduces
/// it; order-preserving factors lie in O(X,Y), generator factors are
/// orientation-proper.
#[derive(Debug, Clone)]
pub struct Factorization {
    pub target: PiecewiseMap,
    pub y: SubsetModel,
    pub factors: Vec<(PiecewiseMap, FactorLabel)>,
}

/// Outcome of re-checking a factorization's invariants.
#[derive(Debug, Clone)]
pub struct VerifyReport {
    pub ok: bool,
    pub details: Vec<String>,
}

/// Witness intervals on both sides of the ideal where the map acts as a
/// single increasing Möbius piece.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsoWitnesses {
    pub ideal_side: Vec<Interval>,
    pub complement_side: Vec<Interval>,
}

/// Verdict of the single-relative-generator criterion, with the witnesses
/// or failing condition spelled out.
#[derive(Debug, Clone)]
pub struct SingleGeneratorReport {
    pub holds: bool,
    pub explanation: String,
}

/// Packaged data showing that no finite set G can relatively generate over
/// a range without extrema: per-element image gap bounds, enclosing points
/// `a`, `b`, and a witness map whose image exceeds every upper bound.
#[derive(Debug, Clone)]
pub struct ObstructionCertificate {
    pub per_element: Vec<GapBounds>,
    pub a: ExtRat,
    pub b: ExtRat,
    pub h: ExtRat,
    pub alpha: PiecewiseMap,
}

fn flip(kind: BoundKind) -> BoundKind {
    match kind {
        BoundKind::Open => BoundKind::Closed,
        BoundKind::Closed => BoundKind::Open,
    }
}

fn open_interval(lo: &ExtRat, hi: &ExtRat) -> Interval {
    Interval::new(Bound::open(lo.clone()), Bound::open(hi.clone()))
        .expect("caller orders the endpoints")
}

// ---------------------------------------------------------------------------
// wrap generators
// ---------------------------------------------------------------------------

/// Midpoint-style default parameters for [`gamma_for`].
pub fn default_gamma_params(chain: &Interval) -> Vec<ExtRat> {
    let lo = &chain.lo().point;
    let hi = &chain.hi().point;
    match chain.kind() {
        ChainKind::Closed(..) => {
            let c = interior_between(lo, hi);
            let d = interior_between(&ExtRat::Finite(c.clone()), hi);
            vec![ExtRat::Finite(c), ExtRat::Finite(d)]
        }
        ChainKind::MinOnly(_) => vec![ExtRat::Finite(interior_between(lo, hi))],
        ChainKind::MaxOnly(_) => {
            let c = interior_between(lo, hi);
            let l = interior_between(lo, &ExtRat::Finite(c.clone()));
            vec![ExtRat::Finite(c), ExtRat::Finite(l)]
        }
        ChainKind::Open => Vec::new(),
    }
}

/// The wrap generator of the chain: the distinguished transformation that,
/// together with the order-preserving maps, generates the
/// orientation-preserving monoid on chains with an extremum.
///
/// Parameters per chain kind: `[c, d]` for a closed chain (a < c < d < b),
/// `[c]` for a chain with a minimum only, `[c, l]` for a chain with a
/// maximum only (l < c < b). Empty parameter lists pick midpoint-style
/// defaults.
pub fn gamma_for(chain: &Interval, params: &[ExtRat]) -> Result<PiecewiseMap> {
    let params = if params.is_empty() {
        default_gamma_params(chain)
    } else {
        params.to_vec()
    };
    let lo = chain.lo().point.clone();
    let hi = chain.hi().point.clone();
    match chain.kind() {
        ChainKind::Open => Err(Error::OpenChainUnsupported),
        ChainKind::Closed(a, b) => {
            let [c, d] = two_params(&params)?;
            if !(a < c && c < d && d < b) {
                return Err(Error::BadParams(format!("need {a} < {c} < {d} < {b}")));
            }
            let low = open_interval(&a, &c);
            let high = open_interval(&c, &b);
            let up = canonical_iso(&low, &open_interval(&d, &b))?;
            let down = canonical_iso(&high, &open_interval(&a, &c))?;
            let mut pieces = vec![Piece::constant(Interval::singleton(a.clone())?, d.clone())];
            pieces.extend(up.pieces().iter().cloned());
            pieces.push(Piece::constant(Interval::singleton(c.clone())?, a));
            pieces.extend(down.pieces().iter().cloned());
            pieces.push(Piece::constant(Interval::singleton(b)?, c));
            PiecewiseMap::new(chain.clone(), chain.clone(), pieces)
        }
        ChainKind::MinOnly(a) => {
            let [c] = one_param(&params)?;
            if !(a < c && c < hi) {
                return Err(Error::BadParams(format!("need {a} < {c} inside the chain")));
            }
            let low = open_interval(&a, &c);
            let high = open_interval(&c, &hi);
            let up = canonical_iso(&low, &high)?;
            let down = canonical_iso(&high, &low)?;
            let mut pieces = vec![Piece::constant(Interval::singleton(a.clone())?, c.clone())];
            pieces.extend(up.pieces().iter().cloned());
            pieces.push(Piece::constant(Interval::singleton(c)?, a));
            pieces.extend(down.pieces().iter().cloned());
            PiecewiseMap::new(chain.clone(), chain.clone(), pieces)
        }
        ChainKind::MaxOnly(b) => {
            let [c, l] = two_params(&params)?;
            if !(lo < l && l < c && c < b) {
                return Err(Error::BadParams(format!(
                    "need {l} < {c} < {b} inside the chain"
                )));
            }
            let low = open_interval(&lo, &c);
            let high = open_interval(&c, &b);
            let up = canonical_iso(&low, &high)?;
            let down = canonical_iso(&high, &open_interval(&l, &c))?;
            let mut pieces = up.pieces().to_vec();
            pieces.push(Piece::constant(Interval::singleton(c.clone())?, l));
            pieces.extend(down.pieces().iter().cloned());
            pieces.push(Piece::constant(Interval::singleton(b)?, c));
            PiecewiseMap::new(chain.clone(), chain.clone(), pieces)
        }
    }
}

fn one_param(params: &[ExtRat]) -> Result<[ExtRat; 1]> {
    match params {
        [c] => Ok([c.clone()]),
        _ => Err(Error::BadParams(format!(
            "expected one parameter, got {}",
            params.len()
        ))),
    }
}

fn two_params(params: &[ExtRat]) -> Result<[ExtRat; 2]> {
    match params {
        [c, d] => Ok([c.clone(), d.clone()]),
        _ => Err(Error::BadParams(format!(
            "expected two parameters, got {}",
            params.len()
        ))),
    }
}

// ---------------------------------------------------------------------------
// single-generator criterion and sandwich
// ---------------------------------------------------------------------------

/// For an orientation-proper map, the maximal open subintervals of each side
/// on which it acts as one increasing Möbius piece. Each is a valid witness
/// set: any open interval is order-isomorphic to any open convex subset.
pub fn iso_witnesses(f: &PiecewiseMap) -> Result<IsoWitnesses> {
    let Classification::OrientationProper { ideal, .. } = classify(f) else {
        return Err(Error::NotOrientationProper);
    };
    let complement = ideal_complement(f.domain(), &ideal);
    let collect = |side: &Interval| -> Vec<Interval> {
        f.pieces()
            .iter()
            .filter(|p| p.domain.is_subset_of(side))
            .filter(|p| matches!(p.action, Action::Mobius(_)))
            .filter(|p| p.domain.is_nondegenerate())
            .map(|p| open_interval(&p.domain.lo().point, &p.domain.hi().point))
            .collect()
    };
    Ok(IsoWitnesses {
        ideal_side: collect(&ideal),
        complement_side: collect(&complement),
    })
}

/// Decides whether ⟨O(X), f⟩ is the whole orientation-preserving monoid.
///
/// On a closed chain a witness on each side suffices. With a minimum only,
/// some ideal-side witness must additionally have image cofinal in the
/// chain; with a maximum only, some complement-side witness image must be
/// coinitial.
pub fn single_generator_test(f: &PiecewiseMap) -> Result<SingleGeneratorReport> {
    let chain = f.domain();
    if chain.kind() == ChainKind::Open {
        return Err(Error::OpenChainUnsupported);
    }
    let witnesses = iso_witnesses(f)?;
    if witnesses.ideal_side.is_empty() || witnesses.complement_side.is_empty() {
        let side = if witnesses.ideal_side.is_empty() {
            "ideal"
        } else {
            "complement"
        };
        return Ok(SingleGeneratorReport {
            holds: false,
            explanation: format!("no single-Möbius witness interval on the {side} side"),
        });
    }
    let piece_image_for = |w: &Interval| -> Interval {
        f.pieces()
            .iter()
            .find(|p| p.domain.contains(&ExtRat::Finite(w.interior_point())))
            .expect("witness lies in a piece")
            .image()
    };
    match chain.kind() {
        ChainKind::Open => Err(Error::OpenChainUnsupported),
        ChainKind::Closed(..) => Ok(SingleGeneratorReport {
            holds: true,
            explanation: format!(
                "witnesses {} (ideal side) and {} (complement side)",
                witnesses.ideal_side[0], witnesses.complement_side[0]
            ),
        }),
        ChainKind::MinOnly(_) => {
            let cofinal = witnesses
                .ideal_side
                .iter()
                .find(|w| piece_image_for(w).hi().point == chain.hi().point);
            Ok(match cofinal {
                Some(w) => SingleGeneratorReport {
                    holds: true,
                    explanation: format!(
                        "ideal-side witness {w} has cofinal image; complement witness {}",
                        witnesses.complement_side[0]
                    ),
                },
                None => SingleGeneratorReport {
                    holds: false,
                    explanation: "every ideal-side witness image is bounded above".into(),
                },
            })
        }
        ChainKind::MaxOnly(_) => {
            let coinitial = witnesses
                .complement_side
                .iter()
                .find(|w| piece_image_for(w).lo().point == chain.lo().point);
            Ok(match coinitial {
                Some(w) => SingleGeneratorReport {
                    holds: true,
                    explanation: format!(
                        "complement-side witness {w} has coinitial image; ideal witness {}",
                        witnesses.ideal_side[0]
                    ),
                },
                None => SingleGeneratorReport {
                    holds: false,
                    explanation: "every complement-side witness image is bounded below".into(),
                },
            })
        }
    }
}

/// Inverts an injective increasing piecewise-Möbius map.
fn invert_increasing(f: &PiecewiseMap) -> Result<PiecewiseMap> {
    let mut pieces = Vec::with_capacity(f.pieces().len());
    for p in f.pieces() {
        let Action::Mobius(m) = &p.action else {
            return Err(Error::BadParams("cannot invert a constant piece".into()));
        };
        pieces.push(Piece::mobius(p.image(), m.invert()));
    }
    let domain = Interval::with_adjoined(
        pieces.first().unwrap().domain.lo().clone(),
        pieces.last().unwrap().domain.hi().clone(),
    )?;
    PiecewiseMap::new(domain, f.domain().clone(), pieces)
}

/// Builds the sandwich pair (φ̂, φ̃) for a single relative generator `f`:
/// both are order-preserving and φ̂·f·φ̃ equals the wrap generator with the
/// given parameters, exactly.
pub fn sandwich(
    f: &PiecewiseMap,
    c: &ExtRat,
    d: Option<&ExtRat>,
) -> Result<(PiecewiseMap, PiecewiseMap)> {
    let report = single_generator_test(f)?;
    if !report.holds {
        return Err(Error::NotSingleGenerator(report.explanation));
    }
    let chain = f.domain().clone();
    let witnesses = iso_witnesses(f)?;
    let piece_image_for = |w: &Interval| -> Interval {
        f.pieces()
            .iter()
            .find(|p| p.domain.contains(&ExtRat::Finite(w.interior_point())))
            .expect("witness lies in a piece")
            .image()
    };
    let a = chain.lo().point.clone();
    let hi = chain.hi().point.clone();

    let (params, w1, w2) = match chain.kind() {
        ChainKind::Closed(..) => {
            let d = d.ok_or_else(|| Error::BadParams("closed chain needs both c and d".into()))?;
            (
                vec![c.clone(), d.clone()],
                witnesses.ideal_side[0].clone(),
                witnesses.complement_side[0].clone(),
            )
        }
        ChainKind::MinOnly(_) => {
            if d.is_some() {
                return Err(Error::BadParams(
                    "min-only chain takes a single parameter".into(),
                ));
            }
            let w1 = witnesses
                .ideal_side
                .iter()
                .find(|w| piece_image_for(w).hi().point == chain.hi().point)
                .expect("single-generator test guarantees a cofinal witness")
                .clone();
            (vec![c.clone()], w1, witnesses.complement_side[0].clone())
        }
        _ => {
            return Err(Error::WrongChainKind(
                "sandwich is built for chains with a minimum".into(),
            ))
        }
    };
    let gamma = gamma_for(&chain, &params)?;
    let low_dom = Interval::with_adjoined(chain.lo().clone(), Bound::open(c.clone()))?;
    let high_dom = Interval::with_adjoined(Bound::closed(c.clone()), chain.hi().clone())?;

    // squeeze the two halves of the chain into the witnesses
    let u1 = Interval::new(
        Bound::closed(ExtRat::Finite(w1.interior_point())),
        w1.hi().clone(),
    )?;
    let u2 = match chain.kind() {
        ChainKind::Closed(..) => {
            let mid = w2.interior_point();
            let q2 = interior_between(&w2.lo().point, &ExtRat::Finite(mid.clone()));
            Interval::closed_rats(q2, mid)?
        }
        _ => Interval::new(
            Bound::closed(ExtRat::Finite(w2.interior_point())),
            w2.hi().clone(),
        )?,
    };
    let mu1 = canonical_iso(&low_dom, &u1)?;
    let mu2 = canonical_iso(&high_dom, &u2)?;
    let mut hat_pieces = mu1.pieces().to_vec();
    hat_pieces.extend(mu2.pieces().iter().cloned());
    let phi_hat = PiecewiseMap::new(chain.clone(), chain.clone(), hat_pieces)?;

    // images of the two squeezed halves under φ̂ then f
    let full1 = phi_hat.restrict(&low_dom)?.compose(f)?;
    let full2 = phi_hat.restrict(&high_dom)?.compose(f)?;
    let a1 = full1.eval(&a)?;
    let b1 = full1.image().supremum().unwrap().clone();
    let img2 = full2.image();
    let a2 = full2.eval(c)?;
    let b2 = img2.supremum().unwrap().clone();

    let low_open = open_interval(&a, c);
    let high_open = open_interval(c, &hi);
    let mu3 =
        invert_increasing(&full1.restrict(&low_open)?)?.compose(&gamma.restrict(&low_open)?)?;
    let mu4 =
        invert_increasing(&full2.restrict(&high_open)?)?.compose(&gamma.restrict(&high_open)?)?;

    // assemble the back map
    let mut tilde = vec![Piece::constant(
        Interval::with_adjoined(chain.lo().clone(), Bound::closed(a2.clone()))?,
        a.clone(),
    )];
    tilde.extend(mu4.pieces().iter().cloned());
    match chain.kind() {
        ChainKind::Closed(..) => {
            let d = params[1].clone();
            tilde.push(Piece::constant(
                Interval::with_adjoined(Bound::closed(b2.clone()), Bound::open(a1.clone()))?,
                c.clone(),
            ));
            tilde.push(Piece::constant(Interval::singleton(a1.clone())?, d));
            tilde.extend(mu3.pieces().iter().cloned());
            tilde.push(Piece::constant(
                Interval::with_adjoined(Bound::closed(b1.clone()), chain.hi().clone())?,
                hi.clone(),
            ));
        }
        _ => {
            // the complement-side image is open at the top, so the constant
            // stretch covers [b2, a1]; cofinality makes a top clause needless
            tilde.push(Piece::constant(
                Interval::with_adjoined(Bound::closed(b2.clone()), Bound::closed(a1.clone()))?,
                c.clone(),
            ));
            tilde.extend(mu3.pieces().iter().cloned());
        }
    }
    let phi_tilde = PiecewiseMap::new(chain.clone(), chain, tilde)?;
    Ok((phi_hat, phi_tilde))
}

// ---------------------------------------------------------------------------
// factoring a transformation through the wrap generator
// ---------------------------------------------------------------------------

/// Picks an interval with the given closure signature strictly inside an
/// open region.
fn inner_with_signature(region: &Interval, sig: (BoundKind, BoundKind)) -> Interval {
    let mid = region.interior_point();
    let lo_pt = interior_between(&region.lo().point, &ExtRat::Finite(mid.clone()));
    match sig {
        // when the high end is open, stretch to the region's top so the
        // image stays cofinal in the region
        (lo_kind, BoundKind::Open) => Interval::with_adjoined(
            Bound {
                point: ExtRat::Finite(lo_pt),
                kind: lo_kind,
            },
            region.hi().clone(),
        )
        .expect("interior pick is ordered"),
        (lo_kind, BoundKind::Closed) => Interval::with_adjoined(
            Bound {
                point: ExtRat::Finite(lo_pt),
                kind: lo_kind,
            },
            Bound::closed(ExtRat::Finite(mid)),
        )
        .expect("interior pick is ordered"),
    }
}

/// Factors an orientation-proper transformation of a chain with a minimum
/// as (order-preserving) · generator · (order-preserving).
fn factor_through_gamma(
    delta: &PiecewiseMap,
    chain: &Interval,
) -> Result<(PiecewiseMap, PiecewiseMap, PiecewiseMap)> {
    if let ChainKind::MaxOnly(_) = chain.kind() {
        let (l, g, r) = factor_through_gamma(&delta.reflect(), &chain.reflect())?;
        return Ok((l.reflect(), g.reflect(), r.reflect()));
    }
    if !matches!(chain.kind(), ChainKind::Closed(..) | ChainKind::MinOnly(_)) {
        return Err(Error::WrongChainKind(
            "generator factoring needs an extremum".into(),
        ));
    }
    let Classification::OrientationProper { ideal, .. } = classify(delta) else {
        return Err(Error::NotOrientationProper);
    };
    let complement = ideal_complement(chain, &ideal);
    let gamma = gamma_for(chain, &[])?;
    let params = default_gamma_params(chain);
    let c = params[0].clone();
    let a = chain.lo().point.clone();
    let region1 = open_interval(&a, &c);
    let region2 = open_interval(&c, &chain.hi().point);

    // squeeze each side into the matching generator region
    let side_map = |side: &Interval, region: &Interval| -> Result<PiecewiseMap> {
        if side.is_singleton() {
            PiecewiseMap::constant(
                side.clone(),
                chain.clone(),
                ExtRat::Finite(region.interior_point()),
            )
        } else {
            let target = inner_with_signature(region, side.signature());
            canonical_iso(side, &target)?.with_codomain(chain.clone())
        }
    };
    let lambda1 = side_map(&ideal, &region1)?;
    let lambda2 = side_map(&complement, &region2)?;
    let mut lam_pieces = lambda1.pieces().to_vec();
    lam_pieces.extend(lambda2.pieces().iter().cloned());
    let lambda = PiecewiseMap::new(chain.clone(), chain.clone(), lam_pieces)?;

    // transport each restricted side of delta back through squeeze-then-wrap
    let transported = |side: &Interval, lam_side: &PiecewiseMap| -> Result<PiecewiseMap> {
        let fwd = lam_side.compose(&gamma)?;
        if side.is_singleton() {
            let at = fwd.eval(&side.lo().point)?;
            return PiecewiseMap::constant(
                Interval::singleton(at)?,
                chain.clone(),
                delta.eval(&side.lo().point)?,
            );
        }
        invert_increasing(&fwd)?.compose(&delta.restrict(side)?)
    };
    let rho1 = transported(&ideal, &lambda1)?;
    let rho2 = transported(&complement, &lambda2)?;
    let a1 = rho1.domain().clone();
    let a2 = rho2.domain().clone();

    let m_val = separator_value(delta)?;
    let mut rho_pieces = Vec::new();
    if *chain.lo() != *a2.lo() {
        rho_pieces.push(Piece::constant(
            Interval::with_adjoined(
                chain.lo().clone(),
                Bound {
                    point: a2.lo().point.clone(),
                    kind: flip(a2.lo().kind),
                },
            )?,
            a.clone(),
        ));
    }
    rho_pieces.extend(rho2.pieces().iter().cloned());
    rho_pieces.push(Piece::constant(
        Interval::with_adjoined(
            Bound {
                point: a2.hi().point.clone(),
                kind: flip(a2.hi().kind),
            },
            Bound {
                point: a1.lo().point.clone(),
                kind: flip(a1.lo().kind),
            },
        )?,
        m_val,
    ));
    rho_pieces.extend(rho1.pieces().iter().cloned());
    if *a1.hi() != *chain.hi() {
        // past the transported ideal image: its attained maximum when the
        // ideal has one, otherwise the chain maximum (never reached by the
        // squeezed image)
        let top = if ideal.has_max() {
            delta.eval(&ideal.hi().point)?
        } else {
            chain.hi().point.clone()
        };
        rho_pieces.push(Piece::constant(
            Interval::with_adjoined(
                Bound {
                    point: a1.hi().point.clone(),
                    kind: flip(a1.hi().kind),
                },
                chain.hi().clone(),
            )?,
            top,
        ));
    }
    let rho = PiecewiseMap::new(chain.clone(), chain.clone(), rho_pieces)?;
    Ok((lambda, gamma, rho))
}

// ---------------------------------------------------------------------------
// restricted-range factorization pipelines
// ---------------------------------------------------------------------------

/// Extends a transformation of a subchain to the whole chain with constant
/// tails.
fn extend_over(
    inner: &PiecewiseMap,
    chain: &Interval,
    below: &ExtRat,
    above: &ExtRat,
    codomain: &Interval,
) -> Result<PiecewiseMap> {
    let z = inner.domain();
    let mut pieces = Vec::new();
    if *chain.lo() != *z.lo() {
        pieces.push(Piece::constant(
            Interval::with_adjoined(
                chain.lo().clone(),
                Bound {
                    point: z.lo().point.clone(),
                    kind: flip(z.lo().kind),
                },
            )?,
            below.clone(),
        ));
    }
    pieces.extend(inner.pieces().iter().cloned());
    if *z.hi() != *chain.hi() {
        pieces.push(Piece::constant(
            Interval::with_adjoined(
                Bound {
                    point: z.hi().point.clone(),
                    kind: flip(z.hi().kind),
                },
                chain.hi().clone(),
            )?,
            above.clone(),
        ));
    }
    PiecewiseMap::new(chain.clone(), codomain.clone(), pieces)
}

fn reflect_factorization(f: Factorization) -> Factorization {
    Factorization {
        target: f.target.reflect(),
        y: f.y.reflect(),
        factors: f
            .factors
            .into_iter()
            .map(|(m, l)| (m.reflect(), l))
            .collect(),
    }
}

fn check_range_inside(chain: &Interval, y: &SubsetModel) -> Result<()> {
    if !y.parts().iter().all(|p| p.is_subset_of(chain)) {
        return Err(Error::Inapplicable(
            "the restricted range must lie inside the chain".into(),
        ));
    }
    Ok(())
}

fn check_in_op_minus_o(alpha: &PiecewiseMap, y: &SubsetModel) -> Result<()> {
    if !member_of(alpha, Family::OrientationPreserving, y)
        || member_of(alpha, Family::OrderPreserving, y)
    {
        return Err(Error::NotInOPminusO);
    }
    Ok(())
}

/// Factorization over an open chain (no extrema) into a range with at least
/// one extremum: transports the map to a working copy of the range, factors
/// it through the wrap generator there, and extends everything back.
pub fn factor_open_chain(alpha: &PiecewiseMap, y: &SubsetModel) -> Result<Factorization> {
    let x = alpha.domain().clone();
    if x.kind() != ChainKind::Open {
        return Err(Error::WrongChainKind(
            "domain chain must lack both extrema".into(),
        ));
    }
    let yiv = y
        .as_interval()
        .ok_or_else(|| Error::YNotEligible("restricted range must be convex".into()))?
        .clone();
    check_range_inside(&x, y)?;
    check_in_op_minus_o(alpha, y)?;
    match (yiv.has_min(), yiv.has_max()) {
        (false, false) => Err(Error::YNotEligible(
            "restricted range has no extremum".into(),
        )),
        (true, false) => {
            let mirrored = factor_open_max(&alpha.reflect(), &yiv.reflect())?;
            Ok(reflect_factorization(mirrored))
        }
        _ => factor_open_max(alpha, &yiv),
    }
}

/// The max-side pipeline; also covers ranges with both extrema.
fn factor_open_max(alpha: &PiecewiseMap, yiv: &Interval) -> Result<Factorization> {
    let x = alpha.domain().clone();
    let y = SubsetModel::from_interval(yiv.clone());
    let h = separator_value(alpha)?;

    let both = yiv.has_min();
    // close off the missing ends of the chain and send them to the
    // separator value
    let x_hat = Interval::with_adjoined(
        if both {
            Bound::closed(x.lo().point.clone())
        } else {
            x.lo().clone()
        },
        Bound::closed(x.hi().point.clone()),
    )?;
    let mut beta_pieces = alpha.pieces().to_vec();
    if both {
        beta_pieces.insert(
            0,
            Piece::constant(Interval::singleton(x.lo().point.clone())?, h.clone()),
        );
    }
    beta_pieces.push(Piece::constant(
        Interval::singleton(x.hi().point.clone())?,
        h.clone(),
    ));
    let beta = PiecewiseMap::new(x_hat.clone(), yiv.clone(), beta_pieces)?;

    // working copy of the range
    let (z, y_minus) = if both {
        (yiv.clone(), yiv.lo().point.clone())
    } else {
        let q = yiv.interior_point();
        let z = Interval::with_adjoined(Bound::open(ExtRat::Finite(q.clone())), yiv.hi().clone())?;
        (
            z,
            ExtRat::Finite(interior_between(&yiv.lo().point, &ExtRat::Finite(q))),
        )
    };
    let y_plus = yiv.hi().point.clone();

    let mu = canonical_iso(&z, yiv)?;
    let mu_inv = canonical_iso(yiv, &z)?;
    let nu = canonical_iso(&x_hat, &z)?;
    let nu_inv = canonical_iso(&z, &x_hat)?;
    let delta = nu_inv.compose(&beta)?.compose(&mu_inv)?;
    let nu_x = nu.restrict(&x)?;

    let coinitial = !z.has_min()
        && delta
            .image()
            .infimum()
            .map(|p| *p == z.lo().point)
            .unwrap_or(false);

    let mut factors: Vec<(PiecewiseMap, FactorLabel)> = vec![(nu_x, FactorLabel::OrderPreserving)];
    if !coinitial {
        let (lambda, gamma_z, rho) = factor_through_gamma(&delta, &z)?;
        let lambda_t = extend_over(&lambda, &x, &y_minus, &y_plus, yiv)?;
        let v_star = gamma_z.eval(&z.hi().point)?;
        let gamma_t = extend_over(&gamma_z, &x, &v_star, &v_star, yiv)?;
        let rho_mu = rho.compose(&mu)?;
        let w_minus = if both {
            yiv.lo().point.clone()
        } else {
            let floor = rho.image().infimum().unwrap().clone();
            mu.eval(&ExtRat::Finite(interior_between(&z.lo().point, &floor)))?
        };
        let last = extend_over(&rho_mu, &x, &w_minus, &y_plus, yiv)?;
        factors.push((lambda_t, FactorLabel::OrderPreserving));
        factors.push((gamma_t, FactorLabel::Generator));
        factors.push((last, FactorLabel::OrderPreserving));
    } else {
        // the image runs all the way down the range, so the generator must
        // be the final factor; fit its wrap value to the map's separator
        let (u, gamma_fit) = section_factor(&delta, &z)?;
        let u_floor = u.image().infimum().unwrap().clone();
        let u_lo = ExtRat::Finite(interior_between(&z.lo().point, &u_floor));
        let u_t = extend_over(&u, &x, &u_lo, &z.hi().point, yiv)?;
        let gen_mu = gamma_fit.compose(&mu)?;
        let v_star = gen_mu.eval(&z.hi().point)?;
        let gen_last = extend_over(&gen_mu, &x, &v_star, &v_star, yiv)?;
        factors.push((u_t, FactorLabel::OrderPreserving));
        factors.push((gen_last, FactorLabel::Generator));
    }
    Ok(Factorization {
        target: alpha.clone(),
        y,
        factors,
    })
}

/// Writes `delta` as u · g with u order-preserving and g a wrap generator
/// fitted so its image split matches delta's separator value. Used when the
/// image of `delta` is coinitial in a chain with a maximum only.
fn section_factor(delta: &PiecewiseMap, chain: &Interval) -> Result<(PiecewiseMap, PiecewiseMap)> {
    let Classification::OrientationProper { ideal, .. } = classify(delta) else {
        return Err(Error::NotOrientationProper);
    };
    let complement = ideal_complement(chain, &ideal);
    let q = chain.lo().point.clone();
    let top = chain.hi().point.clone();
    let c_t = separator_value(delta)?;

    let c_star = ExtRat::Finite(chain.interior_point());
    let t1 = ExtRat::Finite(interior_between(&q, &c_star));
    let s1 = ExtRat::Finite(interior_between(&c_star, &top));

    let up_dom = open_interval(&t1, &c_star);
    let up_img = open_interval(&c_t, &top);
    let dn_dom = open_interval(&c_star, &s1);
    let dn_img = open_interval(&q, &c_t);
    let up = canonical_iso(&up_dom, &up_img)?;
    let dn = canonical_iso(&dn_dom, &dn_img)?;

    let mut gamma_pieces = vec![Piece::constant(
        Interval::with_adjoined(chain.lo().clone(), Bound::closed(t1.clone()))?,
        c_t.clone(),
    )];
    gamma_pieces.extend(up.pieces().iter().cloned());
    gamma_pieces.push(Piece::constant(
        Interval::singleton(c_star.clone())?,
        top.clone(),
    ));
    gamma_pieces.extend(dn.pieces().iter().cloned());
    gamma_pieces.push(Piece::constant(
        Interval::with_adjoined(Bound::closed(s1.clone()), chain.hi().clone())?,
        c_t.clone(),
    ));
    let gamma_fit = PiecewiseMap::new(chain.clone(), chain.clone(), gamma_pieces)?;

    // order-preserving sections of the fitted generator, one per branch
    let mut sec_up_pieces = vec![Piece::constant(Interval::singleton(c_t.clone())?, t1)];
    sec_up_pieces.extend(invert_increasing(&up)?.pieces().iter().cloned());
    sec_up_pieces.push(Piece::constant(
        Interval::singleton(top.clone())?,
        c_star.clone(),
    ));
    let sec_up = PiecewiseMap::new(
        Interval::with_adjoined(Bound::closed(c_t.clone()), Bound::closed(top.clone()))?,
        chain.clone(),
        sec_up_pieces,
    )?;
    let mut sec_dn_pieces = invert_increasing(&dn)?.pieces().to_vec();
    sec_dn_pieces.push(Piece::constant(Interval::singleton(c_t.clone())?, s1));
    let sec_dn = PiecewiseMap::new(
        Interval::with_adjoined(chain.lo().clone(), Bound::closed(c_t.clone()))?,
        chain.clone(),
        sec_dn_pieces,
    )?;

    let u1 = delta
        .restrict(&ideal)?
        .with_codomain(sec_up.domain().clone())?
        .compose(&sec_up)?;
    let u2 = delta
        .restrict(&complement)?
        .with_codomain(sec_dn.domain().clone())?
        .compose(&sec_dn)?;
    let mut u_pieces = u1.pieces().to_vec();
    u_pieces.extend(u2.pieces().iter().cloned());
    let u = PiecewiseMap::new(chain.clone(), chain.clone(), u_pieces)?;
    Ok((u, gamma_fit))
}

/// Factorization over a chain with at least one extremum into a convex range
/// with at least one extremum: conjugates into an interior copy of the chain
/// whose complement restores the open-chain pipeline.
pub fn factor_bounded_chain(alpha: &PiecewiseMap, y: &SubsetModel) -> Result<Factorization> {
    let x = alpha.domain().clone();
    if x.kind() == ChainKind::Open {
        return Err(Error::WrongChainKind(
            "domain chain must have an extremum".into(),
        ));
    }
    let yiv = y
        .as_interval()
        .ok_or_else(|| Error::YNotEligible("restricted range must be convex".into()))?
        .clone();
    if !yiv.has_min() && !yiv.has_max() {
        return Err(Error::YNotEligible(
            "restricted range has no extremum".into(),
        ));
    }
    check_in_op_minus_o(alpha, y)?;
    let x_tilde = match x.kind() {
        ChainKind::Open => {
            return Err(Error::WrongChainKind(
                "domain chain must have an extremum".into(),
            ))
        }
        ChainKind::MaxOnly(_) => {
            let mirrored = factor_bounded_chain(&alpha.reflect(), &y.reflect())?;
            return Ok(reflect_factorization(mirrored));
        }
        ChainKind::MinOnly(_) => {
            // cofinal copy of the chain omitting its minimum
            Interval::with_adjoined(
                Bound::closed(ExtRat::Finite(x.interior_point())),
                x.hi().clone(),
            )?
        }
        ChainKind::Closed(..) => {
            let mid = ExtRat::Finite(x.interior_point());
            let a1 = interior_between(&x.lo().point, &mid);
            let b1 = interior_between(&mid, &x.hi().point);
            Interval::closed_rats(a1, b1)?
        }
    };
    let mu = canonical_iso(&x, &x_tilde)?;
    let mu_inv = canonical_iso(&x_tilde, &x)?;
    // the chain with its extrema removed
    let x_hat = Interval::new(
        Bound::open(x.lo().point.clone()),
        Bound::open(x.hi().point.clone()),
    )?;

    let alpha_x = alpha.with_codomain(x.clone())?;
    let conj = mu_inv.compose(&alpha_x)?.compose(&mu)?;
    let y_mu = mu.restrict(&yiv)?.image().as_interval().unwrap().clone();

    let mut beta_pieces = vec![Piece::constant(
        Interval::new(
            Bound::open(x.lo().point.clone()),
            Bound {
                point: x_tilde.lo().point.clone(),
                kind: flip(x_tilde.lo().kind),
            },
        )?,
        mu.eval(&alpha.eval(&x.lo().point)?)?,
    )];
    beta_pieces.extend(conj.pieces().iter().cloned());
    if *x_tilde.hi() != *x_hat.hi() {
        beta_pieces.push(Piece::constant(
            Interval::with_adjoined(
                Bound {
                    point: x_tilde.hi().point.clone(),
                    kind: flip(x_tilde.hi().kind),
                },
                x_hat.hi().clone(),
            )?,
            mu.eval(&alpha.eval(&x.hi().point)?)?,
        ));
    }
    let beta = PiecewiseMap::new(x_hat, y_mu.clone(), beta_pieces)?;

    let inner = factor_open_chain(&beta, &SubsetModel::from_interval(y_mu))?;
    let mut factors = Vec::with_capacity(inner.factors.len());
    for (f, label) in inner.factors {
        let conjed = mu
            .compose(&f)?
            .compose(&mu_inv)?
            .with_codomain(yiv.clone())?;
        factors.push((conjed, label));
    }
    Ok(Factorization {
        target: alpha.clone(),
        y: y.clone(),
        factors,
    })
}

/// Two-factor factorization into a range with both extrema that contains an
/// order-isomorphic copy of the chain: a wrap into the copy followed by one
/// order-preserving map.
pub fn factor_embedding(
    alpha: &PiecewiseMap,
    y: &SubsetModel,
    ytilde: &Interval,
) -> Result<Factorization> {
    let x = alpha.domain().clone();
    if x.kind() == ChainKind::Open {
        return Err(Error::WrongChainKind(
            "domain chain must have an extremum".into(),
        ));
    }
    check_range_inside(&x, y)?;
    let (Some(y_min), Some(y_max)) = (y.min(), y.max()) else {
        return Err(Error::YLacksExtrema);
    };
    if !y.contains_interval(ytilde) {
        return Err(Error::BadParams(
            "the embedded copy must lie inside the range".into(),
        ));
    }
    if x.signature() != ytilde.signature() {
        return Err(Error::NoIsoSubset);
    }
    if !member_of(alpha, Family::OrientationPreserving, y) {
        return Err(Error::Inapplicable(
            "map must be orientation-preserving into Y".into(),
        ));
    }

    let (ideal, complement) = match classify(alpha) {
        Classification::OrderPreserving => (x.clone(), None),
        Classification::OrientationProper { ideal, .. } => {
            let comp = ideal_complement(&x, &ideal);
            (ideal, Some(comp))
        }
        Classification::Neither => return Err(Error::NotOrientationProper),
    };

    // split the copy: complement values go low, ideal values go high
    let split = ExtRat::Finite(ytilde.interior_point());
    let lower_region = open_interval(&ytilde.lo().point, &split);
    let upper_region = open_interval(&split, &ytilde.hi().point);
    let u_prime = inner_closed_region(&upper_region, ideal.signature());
    let phi1 = canonical_iso(&ideal, &u_prime)?;

    let mut mu_pieces = phi1.pieces().to_vec();
    let mut phi2 = None;
    if let Some(comp) = &complement {
        let l_prime = inner_closed_region(&lower_region, comp.signature());
        let p2 = canonical_iso(comp, &l_prime)?;
        mu_pieces.extend(p2.pieces().iter().cloned());
        phi2 = Some(p2);
    }
    let mu_map = PiecewiseMap::new(x.clone(), ytilde.clone(), mu_pieces)?;

    // the straightening map: low tail, complement transport, separator
    // plateau, ideal transport, high tail
    let y_hull = y.hull().expect("nonempty range");
    let m = if ideal.has_min() {
        alpha.eval(&ideal.lo().point)?
    } else {
        alpha.eval(&x.hi().point)?
    };
    let mut tilde_pieces: Vec<Piece> = Vec::new();
    let mut cursor = x.lo().clone();
    if let Some(p2) = &phi2 {
        let l_dom = p2.image().as_interval().unwrap().clone();
        let back2 = invert_increasing_or_const(p2)?.compose(
            &alpha
                .restrict(complement.as_ref().unwrap())?
                .with_codomain(y_hull.clone())?,
        )?;
        tilde_pieces.push(Piece::constant(
            Interval::with_adjoined(
                cursor.clone(),
                Bound {
                    point: l_dom.lo().point.clone(),
                    kind: flip(l_dom.lo().kind),
                },
            )?,
            y_min.clone(),
        ));
        tilde_pieces.extend(back2.pieces().iter().cloned());
        cursor = Bound {
            point: l_dom.hi().point.clone(),
            kind: flip(l_dom.hi().kind),
        };
    }
    let u_dom = phi1.image().as_interval().unwrap().clone();
    let fill = if phi2.is_some() { m } else { y_min };
    tilde_pieces.push(Piece::constant(
        Interval::with_adjoined(
            cursor,
            Bound {
                point: u_dom.lo().point.clone(),
                kind: flip(u_dom.lo().kind),
            },
        )?,
        fill,
    ));
    let back1 = invert_increasing_or_const(&phi1)?
        .compose(&alpha.restrict(&ideal)?.with_codomain(y_hull.clone())?)?;
    tilde_pieces.extend(back1.pieces().iter().cloned());
    if *u_dom.hi() != *x.hi() {
        tilde_pieces.push(Piece::constant(
            Interval::with_adjoined(
                Bound {
                    point: u_dom.hi().point.clone(),
                    kind: flip(u_dom.hi().kind),
                },
                x.hi().clone(),
            )?,
            y_max,
        ));
    }
    let mu_tilde = PiecewiseMap::new(x.clone(), y_hull, tilde_pieces)?;

    let mu_label = if complement.is_some() {
        FactorLabel::Generator
    } else {
        FactorLabel::OrderPreserving
    };
    Ok(Factorization {
        target: alpha.clone(),
        y: y.clone(),
        factors: vec![(mu_map, mu_label), (mu_tilde, FactorLabel::OrderPreserving)],
    })
}

fn inner_closed_region(region: &Interval, sig: (BoundKind, BoundKind)) -> Interval {
    let mid = region.interior_point();
    let lo_pt = interior_between(&region.lo().point, &ExtRat::Finite(mid.clone()));
    Interval::with_adjoined(
        Bound {
            point: ExtRat::Finite(lo_pt),
            kind: sig.0,
        },
        Bound {
            point: ExtRat::Finite(mid),
            kind: sig.1,
        },
    )
    .expect("interior pick is ordered")
}

fn invert_increasing_or_const(f: &PiecewiseMap) -> Result<PiecewiseMap> {
    if f.domain().is_singleton() {
        let v = f.eval(&f.domain().lo().point)?;
        return PiecewiseMap::constant(
            Interval::singleton(v)?,
            f.domain().clone(),
            f.domain().lo().point.clone(),
        );
    }
    invert_increasing(f)
}

/// Recomposes the factors, compares against the target, and checks every
/// label. Failures are reported in the details, never as errors.
pub fn verify_factorization(f: &Factorization) -> VerifyReport {
    let mut details = Vec::new();
    let mut product: Option<PiecewiseMap> = None;
    for (i, (factor, _)) in f.factors.iter().enumerate() {
        product = match product {
            None => Some(factor.clone()),
            Some(acc) => match acc.compose(factor) {
                Ok(next) => Some(next),
                Err(e) => {
                    details.push(format!("factor {i} does not compose: {e}"));
                    None
                }
            },
        };
        if product.is_none() {
            break;
        }
    }
    match product {
        Some(p) if p.equals(&f.target) => {}
        Some(_) => details.push("composed factors differ from the target".into()),
        None => {}
    }
    for (i, (factor, label)) in f.factors.iter().enumerate() {
        match label {
            FactorLabel::OrderPreserving => {
                if !member_of(factor, Family::OrderPreserving, &f.y) {
                    details.push(format!(
                        "factor {i} is labeled order_preserving but is not in O(X,Y)"
                    ));
                }
            }
            FactorLabel::Generator => {
                if !matches!(classify(factor), Classification::OrientationProper { .. }) {
                    details.push(format!(
                        "factor {i} is labeled generator but is not orientation-proper"
                    ));
                }
            }
        }
    }
    VerifyReport {
        ok: details.is_empty(),
        details,
    }
}

// ---------------------------------------------------------------------------
// obstruction certificate
// ---------------------------------------------------------------------------

/// Builds the obstruction certificate for a finite set G over a convex range
/// without extrema: image gap bounds for every element and a map whose image
/// is exactly {y ∈ Y : y ≤ h} for an h above every upper bound.
pub fn obstruction_certificate(
    g: &[PiecewiseMap],
    y: &SubsetModel,
    chain: &Interval,
) -> Result<ObstructionCertificate> {
    let yiv = y
        .as_interval()
        .ok_or_else(|| Error::Inapplicable("range must be convex".into()))?
        .clone();
    if yiv.has_min() || yiv.has_max() {
        return Err(Error::Inapplicable("range must lack both extrema".into()));
    }
    let mut per_element = Vec::with_capacity(g.len());
    for f in g {
        check_in_op_minus_o(f, y).map_err(|_| {
            Error::Inapplicable("every element of G must be in OP(X,Y) \\ O(X,Y)".into())
        })?;
        per_element.push(gap_bounds(f, y)?);
    }
    let max_upper = per_element.iter().filter_map(|b| b.upper.clone()).max();
    let min_lower = per_element.iter().filter_map(|b| b.lower.clone()).min();

    let h = match &max_upper {
        Some(u) => ExtRat::Finite(interior_between(u, &yiv.hi().point)),
        None => ExtRat::Finite(yiv.interior_point()),
    };
    let b = match &max_upper {
        Some(u) => ExtRat::Finite(interior_between(u, &h)),
        None => ExtRat::Finite(interior_between(&yiv.lo().point, &h)),
    };
    let a_target = min_lower.unwrap_or_else(|| b.clone());
    let a = ExtRat::Finite(interior_between(&yiv.lo().point, &a_target));

    let alpha = clipped_wrap_map(chain, &yiv, &h)?;
    Ok(ObstructionCertificate {
        per_element,
        a,
        b,
        h,
        alpha,
    })
}

/// A map in OP(X,Y) \ O(X,Y) whose image is exactly {y ∈ Y : y ≤ h}.
fn clipped_wrap_map(chain: &Interval, yiv: &Interval, h: &ExtRat) -> Result<PiecewiseMap> {
    let mid = ExtRat::Finite(interior_between(&yiv.lo().point, h));
    let s0 = ExtRat::Finite(chain.interior_point());
    let s_a = ExtRat::Finite(interior_between(&chain.lo().point, &s0));
    let s1 = ExtRat::Finite(interior_between(&s0, &chain.hi().point));

    let up = canonical_iso(&open_interval(&s_a, &s0), &open_interval(&mid, h))?;
    let dn = canonical_iso(
        &open_interval(&s0, &s1),
        &open_interval(&yiv.lo().point, &mid),
    )?;
    let mut pieces = vec![Piece::constant(
        Interval::with_adjoined(chain.lo().clone(), Bound::closed(s_a))?,
        mid.clone(),
    )];
    pieces.extend(up.pieces().iter().cloned());
    pieces.push(Piece::constant(Interval::singleton(s0.clone())?, h.clone()));
    pieces.extend(dn.pieces().iter().cloned());
    pieces.push(Piece::constant(
        Interval::with_adjoined(Bound::closed(s1), chain.hi().clone())?,
        mid,
    ));
    PiecewiseMap::new(chain.clone(), yiv.clone(), pieces)
}
