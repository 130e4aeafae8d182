use crate::error::{Error, Result};
use crate::ext::ExtRat;
use crate::interval::{Bound, Interval};
use crate::mobius::MobiusMap;
use crate::piecewise::{Piece, PiecewiseMap};
use crate::rat::{int, Rat};

/// Deterministic order-isomorphism between two intervals of matching
/// endpoint-closure signature, built from at most two increasing Möbius
/// pieces (plus singleton pieces for adjoined extrema in the target).
///
/// The choices are closed-form: the affine map between bounded intervals,
/// slope one between half-infinite intervals of the same shape, and a pole
/// at unit distance otherwise. These choices invert each other, so
/// `canonical_iso(i, j)` composed with `canonical_iso(j, i)` is the
/// identity on `i`.
pub fn canonical_iso(i: &Interval, j: &Interval) -> Result<PiecewiseMap> {
    if !i.is_nondegenerate() || !j.is_nondegenerate() {
        return Err(Error::BadParams(
            "order-isomorphism needs nondegenerate intervals".into(),
        ));
    }
    if i.signature() != j.signature() {
        return Err(Error::SignatureMismatch {
            from: i.to_string(),
            to: j.to_string(),
        });
    }
    let pieces = iso_pieces(i, j)?;
    PiecewiseMap::new(i.clone(), j.clone(), pieces)
}

fn iso_pieces(i: &Interval, j: &Interval) -> Result<Vec<Piece>> {
    // A finite domain endpoint cannot reach an adjoined infinity through a
    // Möbius limit; peel it off as a singleton piece.
    if j.hi().is_closed() && !j.hi().point.is_finite() && i.hi().point.is_finite() {
        let cut = Interval::with_adjoined(i.lo().clone(), Bound::open(i.hi().point.clone()))?;
        let tgt = Interval::with_adjoined(j.lo().clone(), Bound::open(j.hi().point.clone()))?;
        let mut pieces = iso_pieces(&cut, &tgt)?;
        pieces.push(Piece::constant(
            Interval::singleton(i.hi().point.clone())?,
            j.hi().point.clone(),
        ));
        return Ok(pieces);
    }
    if j.lo().is_closed() && !j.lo().point.is_finite() && i.lo().point.is_finite() {
        let cut = Interval::with_adjoined(Bound::open(i.lo().point.clone()), i.hi().clone())?;
        let tgt = Interval::with_adjoined(Bound::open(j.lo().point.clone()), j.hi().clone())?;
        let mut pieces = vec![Piece::constant(
            Interval::singleton(i.lo().point.clone())?,
            j.lo().point.clone(),
        )];
        pieces.extend(iso_pieces(&cut, &tgt)?);
        return Ok(pieces);
    }

    if let Some(m) = one_piece(i, j)? {
        return Ok(vec![Piece::mobius(i.clone(), m)]);
    }

    // split both intervals at canonical interior points and join two
    // one-piece halves, continuous at the split
    let s = i.interior_point();
    let t = j.interior_point();
    let i_left = Interval::with_adjoined(i.lo().clone(), Bound::open(s.clone().into()))?;
    let i_right = Interval::with_adjoined(Bound::closed(s.into()), i.hi().clone())?;
    let j_left = Interval::with_adjoined(j.lo().clone(), Bound::open(t.clone().into()))?;
    let j_right = Interval::with_adjoined(Bound::closed(t.into()), j.hi().clone())?;
    let mut pieces = iso_pieces(&i_left, &j_left)?;
    pieces.extend(iso_pieces(&i_right, &j_right)?);
    Ok(pieces)
}

/// The canonical single Möbius piece for the endpoint shape, when one exists.
fn one_piece(i: &Interval, j: &Interval) -> Result<Option<MobiusMap>> {
    let one = || int(1);
    let fin = |x: &ExtRat| x.as_rat().cloned();
    let m = match (
        fin(&i.lo().point),
        fin(&i.hi().point),
        fin(&j.lo().point),
        fin(&j.hi().point),
    ) {
        (Some(ul), Some(uh), Some(vl), Some(vh)) => {
            Some(MobiusMap::affine_through(&ul, &vl, &uh, &vh)?)
        }
        // bounded onto an upper ray: pole just past the top
        (Some(ul), Some(uh), Some(vl), None) => Some(MobiusMap::new(
            &one() - &vl,
            &vl * &uh - &ul,
            -one(),
            uh.clone(),
        )?),
        // bounded onto a lower ray: pole just past the bottom
        (Some(ul), Some(uh), None, Some(vh)) => Some(MobiusMap::new(
            &vh + &one(),
            -(&vh * &ul) - &uh,
            one(),
            -ul.clone(),
        )?),
        // upper ray onto bounded: m(x) = vh + (vl − vh)/(x − ul + 1)
        (Some(ul), None, Some(vl), Some(vh)) => Some(MobiusMap::new(
            vh.clone(),
            -(&vh * &ul) + &vl,
            one(),
            &one() - &ul,
        )?),
        // matching upper rays: slope one
        (Some(ul), None, Some(vl), None) => Some(MobiusMap::new(
            one(),
            &vl - &ul,
            Rat::from_integer(0.into()),
            one(),
        )?),
        // upper ray onto lower ray: m(x) = vh − 1/(x − ul)
        (Some(ul), None, None, Some(vh)) => Some(MobiusMap::new(
            vh.clone(),
            -(&vh * &ul) - &one(),
            one(),
            -ul.clone(),
        )?),
        // lower ray onto bounded: m(x) = vl + (vl − vh)/(x − uh − 1)
        (None, Some(uh), Some(vl), Some(vh)) => Some(MobiusMap::new(
            vl.clone(),
            &vl * (-&uh - &one()) + (&vl - &vh),
            one(),
            -&uh - &one(),
        )?),
        // lower ray onto upper ray: m(x) = vl − 1/(x − uh)
        (None, Some(uh), Some(vl), None) => Some(MobiusMap::new(
            vl.clone(),
            -(&vl * &uh) - &one(),
            one(),
            -uh.clone(),
        )?),
        // matching lower rays: slope one
        (None, Some(uh), None, Some(vh)) => Some(MobiusMap::new(
            one(),
            &vh - &uh,
            Rat::from_integer(0.into()),
            one(),
        )?),
        (None, None, None, None) => Some(MobiusMap::identity()),
        _ => None,
    };
    Ok(m)
}
