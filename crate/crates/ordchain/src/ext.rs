use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::rat::{fmt_rat, parse_rat, Rat};

/// A rational extended with the two formal endpoints −∞ and +∞.
///
/// The derived `Ord` gives the intended total order: −∞ below every
/// rational, +∞ above.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ExtRat {
    NegInf,
    Finite(Rat),
    PosInf,
}

impl ExtRat {
    pub fn finite(r: Rat) -> Self {
        ExtRat::Finite(r)
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, ExtRat::Finite(_))
    }

    pub fn as_rat(&self) -> Option<&Rat> {
        match self {
            ExtRat::Finite(r) => Some(r),
            _ => None,
        }
    }

    pub fn neg(&self) -> ExtRat {
        match self {
            ExtRat::NegInf => ExtRat::PosInf,
            ExtRat::PosInf => ExtRat::NegInf,
            ExtRat::Finite(r) => ExtRat::Finite(-r),
        }
    }
}

impl From<Rat> for ExtRat {
    fn from(r: Rat) -> Self {
        ExtRat::Finite(r)
    }
}

/// The total order on extended rationals.
pub fn ext_cmp(x: &ExtRat, y: &ExtRat) -> Ordering {
    x.cmp(y)
}

impl fmt::Display for ExtRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtRat::NegInf => write!(f, "-inf"),
            ExtRat::PosInf => write!(f, "+inf"),
            ExtRat::Finite(r) => write!(f, "{}", fmt_rat(r)),
        }
    }
}

impl std::str::FromStr for ExtRat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "-inf" => Ok(ExtRat::NegInf),
            "+inf" => Ok(ExtRat::PosInf),
            _ => Ok(ExtRat::Finite(parse_rat(s)?)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    #[test]
    fn order_has_infinities_at_the_ends() {
        assert_eq!(
            ext_cmp(&rat(1, 2).into(), &rat(1, 2).into()),
            Ordering::Equal
        );
        assert_eq!(
            ext_cmp(&ExtRat::NegInf, &rat(-1_000_000_000, 1).into()),
            Ordering::Less
        );
        // 3/7 vs 2/5 by cross-multiplication: 15 > 14
        assert_eq!(
            ext_cmp(&rat(3, 7).into(), &rat(2, 5).into()),
            Ordering::Greater
        );
        assert!(ExtRat::NegInf < ExtRat::PosInf);
        assert!(ExtRat::Finite(rat(7, 1)) < ExtRat::PosInf);
    }

    #[test]
    fn text_round_trip() {
        for s in ["-inf", "+inf", "2/3", "-5"] {
            let v: ExtRat = s.parse().unwrap();
            assert_eq!(v.to_string(), s);
        }
    }
}
