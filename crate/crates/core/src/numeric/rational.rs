use num_bigint::BigInt;
use num_rational::BigRational;

use super::NumericError;

/// Arbitrary-precision rational, always stored in lowest terms with a
/// positive denominator.
pub type ExactRational = BigRational;

pub fn rat(num: i64, den: i64) -> ExactRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `p`, `p/q` or a plain decimal such as `-0.25`.
pub fn parse_rational(s: &str) -> Result<ExactRational, NumericError> {
    let t = s.trim();
    let err = || NumericError::Parse(s.to_string());
    if t.is_empty() {
        return Err(err());
    }
    if let Some((p, q)) = t.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| err())?;
        let q: BigInt = q.trim().parse().map_err(|_| err())?;
        if q == BigInt::from(0) {
            return Err(err());
        }
        return Ok(BigRational::new(p, q));
    }
    if let Some((int, frac)) = t.split_once('.') {
        let neg = int.starts_with('-');
        let int_digits = int.trim_start_matches(['-', '+']);
        if !frac.chars().all(|c| c.is_ascii_digit())
            || !int_digits.chars().all(|c| c.is_ascii_digit())
            || (int_digits.is_empty() && frac.is_empty())
        {
            return Err(err());
        }
        let digits: BigInt = format!("{int_digits}{frac}").parse().map_err(|_| err())?;
        let scale = num_traits::pow(BigInt::from(10), frac.len());
        let r = BigRational::new(digits, scale);
        return Ok(if neg { -r } else { r });
    }
    let p: BigInt = t.parse().map_err(|_| err())?;
    Ok(BigRational::from_integer(p))
}

/// `p/q`, or just `p` for integers.
pub fn format_rational(r: &ExactRational) -> String {
    r.to_string()
}
