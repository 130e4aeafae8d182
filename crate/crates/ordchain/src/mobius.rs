use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::ext::ExtRat;
use crate::interval::Interval;
use crate::rat::Rat;

/// The map x ↦ (a·x + b)/(c·x + d) with ad − bc ≠ 0.
///
/// Canonical form: integer coefficients cleared of common factors, leading
/// nonzero coefficient positive. Equality of canonical forms is equality of
/// maps.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MobiusMap {
    a: BigInt,
    b: BigInt,
    c: BigInt,
    d: BigInt,
}

/// Direction of a Möbius map restricted to an interval.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Monotonicity {
    Increasing,
    Decreasing,
    PoleInside,
}

impl MobiusMap {
    pub fn new(a: Rat, b: Rat, c: Rat, d: Rat) -> Result<Self> {
        if &a * &d - &b * &c == Rat::zero() {
            return Err(Error::SingularMobius);
        }
        // clear denominators, then common integer factors
        let l = lcm4(a.denom(), b.denom(), c.denom(), d.denom());
        let mut ai = a.numer() * (&l / a.denom());
        let mut bi = b.numer() * (&l / b.denom());
        let mut ci = c.numer() * (&l / c.denom());
        let mut di = d.numer() * (&l / d.denom());
        let g = gcd4(&ai, &bi, &ci, &di);
        if !g.is_zero() {
            ai /= &g;
            bi /= &g;
            ci /= &g;
            di /= &g;
        }
        let lead = [&ai, &bi, &ci, &di]
            .into_iter()
            .find(|v| !v.is_zero())
            .expect("nonsingular map has a nonzero coefficient")
            .clone();
        if lead.is_negative() {
            ai = -ai;
            bi = -bi;
            ci = -ci;
            di = -di;
        }
        Ok(MobiusMap {
            a: ai,
            b: bi,
            c: ci,
            d: di,
        })
    }

    pub fn identity() -> Self {
        MobiusMap {
            a: BigInt::from(1),
            b: BigInt::zero(),
            c: BigInt::zero(),
            d: BigInt::from(1),
        }
    }

    /// The affine map through (x1, y1) and (x2, y2), increasing when the
    /// points are in matching order.
    pub fn affine_through(x1: &Rat, y1: &Rat, x2: &Rat, y2: &Rat) -> Result<Self> {
        let slope = (y2 - y1) / (x2 - x1);
        let offset = y1 - &slope * x1;
        MobiusMap::new(
            slope,
            offset,
            Rat::zero(),
            Rat::from_integer(BigInt::from(1)),
        )
    }

    pub fn coefficients(&self) -> (Rat, Rat, Rat, Rat) {
        (
            Rat::from_integer(self.a.clone()),
            Rat::from_integer(self.b.clone()),
            Rat::from_integer(self.c.clone()),
            Rat::from_integer(self.d.clone()),
        )
    }

    pub fn is_identity(&self) -> bool {
        *self == MobiusMap::identity()
    }

    pub fn is_affine(&self) -> bool {
        self.c.is_zero()
    }

    pub fn determinant_sign(&self) -> i8 {
        let det = &self.a * &self.d - &self.b * &self.c;
        if det.is_positive() {
            1
        } else {
            -1
        }
    }

    /// The pole −d/c, when the map is not affine.
    pub fn pole(&self) -> Option<Rat> {
        if self.c.is_zero() {
            None
        } else {
            Some(Rat::new(-self.d.clone(), self.c.clone()))
        }
    }

    /// Exact evaluation. At ±∞ the conventional limit is used: a/c when
    /// c ≠ 0, otherwise the affine limit with the sign of the slope.
    pub fn eval(&self, x: &ExtRat) -> Result<ExtRat> {
        match x {
            ExtRat::Finite(v) => {
                let den = Rat::from_integer(self.c.clone()) * v + Rat::from_integer(self.d.clone());
                if den == Rat::zero() {
                    return Err(Error::PoleEvaluation);
                }
                let num = Rat::from_integer(self.a.clone()) * v + Rat::from_integer(self.b.clone());
                Ok(ExtRat::Finite(num / den))
            }
            inf => {
                if self.c.is_zero() {
                    // affine: slope sign decides which infinity
                    let up = self.a.is_positive() == self.d.is_positive();
                    let towards_pos = matches!(inf, ExtRat::PosInf) == up;
                    Ok(if towards_pos {
                        ExtRat::PosInf
                    } else {
                        ExtRat::NegInf
                    })
                } else {
                    Ok(ExtRat::Finite(Rat::new(self.a.clone(), self.c.clone())))
                }
            }
        }
    }

    /// Canonical form of "apply `self`, then `next`".
    pub fn compose(&self, next: &MobiusMap) -> MobiusMap {
        let a = &next.a * &self.a + &next.b * &self.c;
        let b = &next.a * &self.b + &next.b * &self.d;
        let c = &next.c * &self.a + &next.d * &self.c;
        let d = &next.c * &self.b + &next.d * &self.d;
        MobiusMap::new(
            Rat::from_integer(a),
            Rat::from_integer(b),
            Rat::from_integer(c),
            Rat::from_integer(d),
        )
        .expect("composition of nonsingular maps is nonsingular")
    }

    pub fn invert(&self) -> MobiusMap {
        MobiusMap::new(
            Rat::from_integer(self.d.clone()),
            Rat::from_integer(-self.b.clone()),
            Rat::from_integer(-self.c.clone()),
            Rat::from_integer(self.a.clone()),
        )
        .expect("inverse of nonsingular map is nonsingular")
    }

    /// The conjugate x ↦ −self(−x).
    pub fn reflect(&self) -> MobiusMap {
        MobiusMap::new(
            Rat::from_integer(self.a.clone()),
            Rat::from_integer(-self.b.clone()),
            Rat::from_integer(-self.c.clone()),
            Rat::from_integer(self.d.clone()),
        )
        .expect("reflection preserves the determinant")
    }

    /// Direction on an interval: `PoleInside` when the pole lies in the
    /// interior or on a closed endpoint, otherwise by determinant sign.
    pub fn monotone_on(&self, i: &Interval) -> Monotonicity {
        if let Some(p) = self.pole() {
            let p = ExtRat::Finite(p);
            let interior = p > i.lo().point && p < i.hi().point;
            let on_closed_end = (p == i.lo().point && i.lo().is_closed())
                || (p == i.hi().point && i.hi().is_closed());
            if interior || on_closed_end {
                return Monotonicity::PoleInside;
            }
        }
        if self.determinant_sign() > 0 {
            Monotonicity::Increasing
        } else {
            Monotonicity::Decreasing
        }
    }
}

fn lcm4(a: &BigInt, b: &BigInt, c: &BigInt, d: &BigInt) -> BigInt {
    a.lcm(b).lcm(c).lcm(d)
}

fn gcd4(a: &BigInt, b: &BigInt, c: &BigInt, d: &BigInt) -> BigInt {
    a.gcd(b).gcd(c).gcd(d)
}

impl fmt::Display for MobiusMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "mobius {} {} {} {}", self.a, self.b, self.c, self.d)
    }
}
