use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::{parse_rational, BigComplex, ExactRational};

/// The five target constants.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ZFamily {
    /// `Σ (-1)^(ν-1) / (ν-α)`
    Z1Minus,
    /// `Σ (-1)^(ν-1) / (ν-α)^2`
    Z2Minus,
    /// `Σ 1 / (ν-α)^2`
    Z2,
    /// `Σ 1 / (ν-α)^3`
    Z3,
    /// `Σ 1 / (ν-α)^4`
    Z4,
}

impl ZFamily {
    pub const ALL: [ZFamily; 5] =
        [ZFamily::Z1Minus, ZFamily::Z2Minus, ZFamily::Z2, ZFamily::Z3, ZFamily::Z4];

    pub fn tag(self) -> &'static str {
        match self {
            ZFamily::Z1Minus => "z1minus",
            ZFamily::Z2Minus => "z2minus",
            ZFamily::Z2 => "z2",
            ZFamily::Z3 => "z3",
            ZFamily::Z4 => "z4",
        }
    }

    pub fn alternating(self) -> bool {
        matches!(self, ZFamily::Z1Minus | ZFamily::Z2Minus)
    }

    pub fn exponent(self) -> u32 {
        match self {
            ZFamily::Z1Minus => 1,
            ZFamily::Z2Minus | ZFamily::Z2 => 2,
            ZFamily::Z3 => 3,
            ZFamily::Z4 => 4,
        }
    }

    /// Factor in front of `Z` in the linear form `multiplier·uₙ·Z − vₙ`.
    pub fn multiplier(self) -> i64 {
        match self {
            ZFamily::Z1Minus | ZFamily::Z2 | ZFamily::Z3 => 1,
            ZFamily::Z2Minus => 2,
            ZFamily::Z4 => 6,
        }
    }
}

impl fmt::Display for ZFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for ZFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key: String = s.chars().filter(|c| !matches!(c, '_' | '-' | ' ')).collect();
        match key.to_ascii_lowercase().as_str() {
            "z1minus" | "z1m" => Ok(ZFamily::Z1Minus),
            "z2minus" | "z2m" => Ok(ZFamily::Z2Minus),
            "z2" => Ok(ZFamily::Z2),
            "z3" => Ok(ZFamily::Z3),
            "z4" => Ok(ZFamily::Z4),
            _ => Err(Error::InvalidParameter(format!("unknown family {s:?}"))),
        }
    }
}

/// The shift parameter α, held exactly as a pair of rationals.
///
/// Real α feeds the exact pipeline; complex α is only usable numerically.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AlphaParam {
    re: ExactRational,
    im: ExactRational,
}

impl AlphaParam {
    pub fn real(re: ExactRational) -> Result<Self> {
        AlphaParam::complex(re, ExactRational::zero())
    }

    pub fn complex(re: ExactRational, im: ExactRational) -> Result<Self> {
        if im.is_zero() && re.is_one() {
            return Err(Error::InvalidParameter("alpha = 1 is excluded".into()));
        }
        if re >= ExactRational::one() {
            return Err(Error::InvalidParameter(format!("Re(alpha) = {re} must be < 1")));
        }
        Ok(AlphaParam { re, im })
    }

    /// Parses `p/q`, a decimal, or a complex value such as `1/2+3/4i` or `-2i`.
    pub fn parse(s: &str) -> Result<Self> {
        let bad = || Error::InvalidParameter(format!("cannot parse alpha from {s:?}"));
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if t.is_empty() {
            return Err(bad());
        }
        let Some(body) = t.strip_suffix('i') else {
            return AlphaParam::real(parse_rational(&t).map_err(|_| bad())?);
        };
        // split at the last sign that is not the leading one
        let split = body
            .char_indices()
            .filter(|&(i, c)| i > 0 && (c == '+' || c == '-'))
            .map(|(i, _)| i)
            .next_back();
        let (re_s, im_s) = match split {
            Some(i) => (&body[..i], &body[i..]),
            None => ("", body),
        };
        let re = if re_s.is_empty() { ExactRational::zero() } else { parse_rational(re_s).map_err(|_| bad())? };
        let im = match im_s {
            "" | "+" => ExactRational::one(),
            "-" => -ExactRational::one(),
            other => parse_rational(other.trim_start_matches('+')).map_err(|_| bad())?,
        };
        AlphaParam::complex(re, im)
    }

    pub fn re(&self) -> &ExactRational {
        &self.re
    }

    pub fn im(&self) -> &ExactRational {
        &self.im
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    /// The exact rational value, present only for real α.
    pub fn exact(&self) -> Option<&ExactRational> {
        self.is_real().then_some(&self.re)
    }

    pub fn require_exact(&self) -> Result<&ExactRational> {
        self.exact()
            .ok_or_else(|| Error::Unsupported("the exact pipeline needs a real rational alpha".into()))
    }

    pub fn numeric(&self, prec: u32) -> BigComplex {
        BigComplex::from_rationals(&self.re, &self.im, prec)
    }

    pub fn conj(&self) -> AlphaParam {
        AlphaParam { re: self.re.clone(), im: -&self.im }
    }

    pub fn re_f64(&self) -> f64 {
        rational_to_f64(&self.re)
    }
}

impl fmt::Display for AlphaParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else if self.im.is_negative() {
            write!(f, "{}{}i", self.re, self.im)
        } else {
            write!(f, "{}+{}i", self.re, self.im)
        }
    }
}

pub(crate) fn rational_to_f64(q: &ExactRational) -> f64 {
    crate::numeric::BigReal::from_rational(q, 64).to_f64()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::rat;

    #[test]
    fn family_table() {
        let rows: Vec<_> = ZFamily::ALL
            .iter()
            .map(|f| (f.alternating(), f.exponent(), f.multiplier()))
            .collect();
        assert_eq!(rows, vec![(true, 1, 1), (true, 2, 2), (false, 2, 1), (false, 3, 1), (false, 4, 6)]);
        for f in ZFamily::ALL {
            assert_eq!(f.tag().parse::<ZFamily>().unwrap(), f);
        }
        assert_eq!("Z2_minus".parse::<ZFamily>().unwrap(), ZFamily::Z2Minus);
        assert!("z5".parse::<ZFamily>().is_err());
    }

    #[test]
    fn alpha_parsing() {
        assert_eq!(AlphaParam::parse("2/7").unwrap().exact(), Some(&rat(2, 7)));
        let a = AlphaParam::parse("1/2+3/4i").unwrap();
        assert_eq!((a.re().clone(), a.im().clone()), (rat(1, 2), rat(3, 4)));
        let b = AlphaParam::parse("-1/3-2i").unwrap();
        assert_eq!((b.re().clone(), b.im().clone()), (rat(-1, 3), rat(-2, 1)));
        let c = AlphaParam::parse("-i").unwrap();
        assert_eq!((c.re().clone(), c.im().clone()), (rat(0, 1), rat(-1, 1)));
        assert_eq!(AlphaParam::parse("0.25").unwrap().exact(), Some(&rat(1, 4)));
        assert_eq!(b.to_string(), "-1/3-2i");
        assert_eq!(a.to_string(), "1/2+3/4i");
    }

    #[test]
    fn alpha_domain() {
        assert!(AlphaParam::parse("1").is_err());
        assert!(AlphaParam::parse("3/2").is_err());
        assert!(AlphaParam::parse("1+2i").is_err());
        assert!(AlphaParam::parse("99/100+5i").is_ok());
        assert!(AlphaParam::parse("x").is_err());
        assert!(AlphaParam::parse("1/2i").unwrap().exact().is_none());
    }
}
