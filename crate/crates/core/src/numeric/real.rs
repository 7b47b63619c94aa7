use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use super::mag::Mag;
use super::rational::ExactRational;
use super::NumericError;

/// A binary floating value `mant * 2^exp` together with an absolute error
/// bound: the quantity it stands for lies in `[value - err, value + err]`.
///
/// Every operation rounds the mantissa to `prec` bits and adds the rounding
/// error and the propagated input errors to `err`.
#[derive(Clone, Debug)]
pub struct BigReal {
    mant: BigInt,
    exp: i64,
    err: Mag,
    prec: u32,
}

fn ulp_mag(exp: i64) -> Mag {
    Mag::pow2(exp)
}

impl BigReal {
    pub fn zero(prec: u32) -> Self {
        BigReal { mant: BigInt::zero(), exp: 0, err: Mag::ZERO, prec }
    }

    pub fn from_int(v: impl Into<BigInt>, prec: u32) -> Self {
        BigReal { mant: v.into(), exp: 0, err: Mag::ZERO, prec }.rounded()
    }

    /// Exact conversion of a finite `f64`.
    pub fn from_f64(x: f64, prec: u32) -> Self {
        assert!(x.is_finite(), "BigReal::from_f64({x})");
        if x == 0.0 {
            return BigReal::zero(prec);
        }
        let bits = x.to_bits();
        let raw_exp = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1u64 << 52) - 1);
        let (m, e) = if raw_exp == 0 { (frac, -1074) } else { (frac | (1u64 << 52), raw_exp - 1075) };
        let m = if x < 0.0 { -BigInt::from(m) } else { BigInt::from(m) };
        BigReal { mant: m, exp: e, err: Mag::ZERO, prec }.rounded()
    }

    /// Nearest value with `prec` bits; error at most one unit in the last place.
    pub fn from_rational(q: &ExactRational, prec: u32) -> Self {
        let num = q.numer();
        let den = q.denom();
        if num.is_zero() {
            return BigReal::zero(prec);
        }
        let s = prec as i64 + den.bits() as i64 - num.bits() as i64 + 1;
        let (n2, d2) = if s >= 0 { (num << s as usize, den.clone()) } else { (num.clone(), den << (-s) as usize) };
        let (quo, rem) = n2.div_rem(&d2);
        let err = if rem.is_zero() { Mag::ZERO } else { ulp_mag(-s) };
        BigReal { mant: quo, exp: -s, err, prec }.rounded()
    }

    pub fn precision(&self) -> u32 {
        self.prec
    }

    pub fn with_precision(mut self, prec: u32) -> Self {
        self.prec = prec;
        self.rounded()
    }

    pub fn err(&self) -> Mag {
        self.err
    }

    /// Widens the error bound by `extra`.
    pub fn add_err(mut self, extra: Mag) -> Self {
        self.err = self.err.add_up(extra);
        self
    }

    pub fn is_exact(&self) -> bool {
        self.err.is_zero()
    }

    /// Midpoint as an exact rational.
    pub fn mid(&self) -> ExactRational {
        let one = BigInt::from(1);
        if self.exp >= 0 {
            ExactRational::from_integer(&self.mant << self.exp as usize)
        } else {
            ExactRational::new(self.mant.clone(), one << (-self.exp) as usize)
        }
    }

    fn top(&self) -> i64 {
        self.mant.bits() as i64 + self.exp
    }

    fn rounded(mut self) -> Self {
        let bits = self.mant.bits();
        if bits > self.prec as u64 {
            let shift = bits - self.prec as u64;
            let neg = self.mant.sign() == Sign::Minus;
            let lossy = self.mant.trailing_zeros().is_some_and(|tz| tz < shift);
            let mag = self.mant.magnitude() >> shift;
            self.mant = if neg { -BigInt::from(mag) } else { BigInt::from(mag) };
            self.exp += shift as i64;
            if lossy {
                self.err = self.err.add_up(ulp_mag(self.exp));
            }
        }
        if self.mant.is_zero() {
            self.exp = 0;
        }
        self
    }

    /// Rounds the mantissa so that its lowest bit has weight at least `2^cutoff`.
    fn truncated_at(&self, cutoff: i64) -> (BigInt, i64, Mag) {
        if self.exp >= cutoff || self.mant.is_zero() {
            return (self.mant.clone(), self.exp, self.err);
        }
        let shift = (cutoff - self.exp) as usize;
        let neg = self.mant.sign() == Sign::Minus;
        let mag = self.mant.magnitude() >> shift;
        let m = if neg { -BigInt::from(mag) } else { BigInt::from(mag) };
        (m, cutoff, self.err.add_up(ulp_mag(cutoff)))
    }

    pub fn abs_upper(&self) -> Mag {
        Mag::from_biguint_up(self.mant.magnitude(), self.exp).add_up(self.err)
    }

    pub fn abs_lower(&self) -> Mag {
        Mag::from_biguint_down(self.mant.magnitude(), self.exp).sub_down(self.err)
    }

    pub fn contains_zero(&self) -> bool {
        self.abs_lower().is_zero()
    }

    /// True when the whole interval lies strictly above zero.
    pub fn is_positive(&self) -> bool {
        self.mant.sign() == Sign::Plus && !self.contains_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mant.sign() == Sign::Minus && !self.contains_zero()
    }

    /// Sign of the midpoint.
    pub fn signum_mid(&self) -> i32 {
        match self.mant.sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    pub fn neg(&self) -> Self {
        BigReal { mant: -&self.mant, exp: self.exp, err: self.err, prec: self.prec }
    }

    pub fn abs(&self) -> Self {
        BigReal { mant: self.mant.abs(), exp: self.exp, err: self.err, prec: self.prec }
    }

    pub fn add(&self, other: &BigReal) -> BigReal {
        let prec = self.prec.max(other.prec);
        if other.mant.is_zero() {
            return BigReal { prec, ..self.clone() }.add_err(other.err).rounded();
        }
        if self.mant.is_zero() {
            return BigReal { prec, ..other.clone() }.add_err(self.err).rounded();
        }
        let cutoff = self.top().max(other.top()) - prec as i64 - 8;
        let (ma, ea, erra) = self.truncated_at(cutoff);
        let (mb, eb, errb) = other.truncated_at(cutoff);
        let e = ea.min(eb);
        let m = (ma << (ea - e) as usize) + (mb << (eb - e) as usize);
        BigReal { mant: m, exp: e, err: erra.add_up(errb), prec }.rounded()
    }

    pub fn sub(&self, other: &BigReal) -> BigReal {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &BigReal) -> BigReal {
        let prec = self.prec.max(other.prec);
        let a = Mag::from_biguint_up(self.mant.magnitude(), self.exp);
        let b = Mag::from_biguint_up(other.mant.magnitude(), other.exp);
        let err = a
            .mul_up(other.err)
            .add_up(b.mul_up(self.err))
            .add_up(self.err.mul_up(other.err));
        BigReal { mant: &self.mant * &other.mant, exp: self.exp + other.exp, err, prec }.rounded()
    }

    pub fn mul_int(&self, k: i64) -> BigReal {
        let err = self.err.mul_up(Mag::from_u64(k.unsigned_abs()));
        BigReal { mant: &self.mant * k, exp: self.exp, err, prec: self.prec }.rounded()
    }

    pub fn mul_rational(&self, q: &ExactRational) -> BigReal {
        if q.denom() == &BigInt::from(1) {
            let err = self.err.mul_up(Mag::from_biguint_up(q.numer().magnitude(), 0));
            return BigReal { mant: &self.mant * q.numer(), exp: self.exp, err, prec: self.prec }
                .rounded();
        }
        self.mul(&BigReal::from_rational(q, self.prec + 8))
    }

    /// Multiplication by `2^k`, exact.
    pub fn mul_2exp(&self, k: i64) -> BigReal {
        BigReal {
            mant: self.mant.clone(),
            exp: if self.mant.is_zero() { 0 } else { self.exp + k },
            err: self.err.mul_2exp(k),
            prec: self.prec,
        }
    }

    /// `self / other`, failing when the divisor's interval touches zero.
    pub fn checked_div(&self, other: &BigReal) -> Result<BigReal, NumericError> {
        let prec = self.prec.max(other.prec);
        let blo = other.abs_lower();
        if blo.is_zero() {
            return Err(NumericError::UncertainZero);
        }
        let bmid = Mag::from_biguint_down(other.mant.magnitude(), other.exp);
        if self.mant.is_zero() {
            return Ok(BigReal { mant: BigInt::zero(), exp: 0, err: self.err.div_up(blo), prec });
        }
        let s = prec as i64 + other.mant.bits() as i64 - self.mant.bits() as i64 + 2;
        let s = s.max(0);
        let (q, r) = (&self.mant << s as usize).div_rem(&other.mant);
        let qexp = self.exp - other.exp - s;
        let mut err = if r.is_zero() { Mag::ZERO } else { ulp_mag(qexp) };
        // |a/b - ã/b̃| <= (ea + |ã/b̃| eb) / (|b̃| - eb)
        if !self.err.is_zero() || !other.err.is_zero() {
            let amid = Mag::from_biguint_up(self.mant.magnitude(), self.exp);
            let ratio = amid.div_up(bmid);
            err = err.add_up(self.err.add_up(ratio.mul_up(other.err)).div_up(blo));
        }
        Ok(BigReal { mant: q, exp: qexp, err, prec }.rounded())
    }

    pub fn recip(&self) -> Result<BigReal, NumericError> {
        BigReal::from_int(1, self.prec).checked_div(self)
    }

    pub fn div_int(&self, k: i64) -> BigReal {
        assert!(k != 0, "BigReal::div_int by zero");
        self.checked_div(&BigReal::from_int(k, self.prec)).expect("nonzero exact divisor")
    }

    /// Square root of a value known to be non-negative. An interval that
    /// straddles zero yields a result covering `[0, sqrt(upper)]`.
    pub fn sqrt(&self) -> Result<BigReal, NumericError> {
        let prec = self.prec;
        if self.mant.sign() == Sign::Minus {
            if self.contains_zero() {
                return Ok(BigReal::zero(prec).add_err(self.err.sqrt_up()));
            }
            return Err(NumericError::NegativeSqrt);
        }
        if self.mant.is_zero() {
            return Ok(BigReal::zero(prec).add_err(self.err.sqrt_up()));
        }
        let lower = self.abs_lower();
        let mut m = self.mant.clone();
        let mut e = self.exp;
        let want = 2 * prec as i64 + 4;
        let mut shift = (want - m.bits() as i64).max(0);
        if (e - shift).rem_euclid(2) != 0 {
            shift += 1;
        }
        m <<= shift as usize;
        e -= shift;
        let r = m.sqrt();
        let exact = &r * &r == m;
        let rexp = e / 2;
        let mut err = if exact { Mag::ZERO } else { ulp_mag(rexp) };
        if lower.is_zero() {
            let upper = self.abs_upper();
            err = err.add_up(upper.sqrt_up());
        } else if !self.err.is_zero() {
            // |sqrt(x) - sqrt(x̃)| <= e / (sqrt(x) + sqrt(x̃)) <= e / sqrt(lower)
            let root_lower = lower.sqrt_down();
            err = err.add_up(self.err.div_up(root_lower));
        }
        Ok(BigReal { mant: r, exp: rexp, err, prec }.rounded())
    }

    pub fn powi(&self, k: u32) -> BigReal {
        let mut acc = BigReal::from_int(1, self.prec);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Midpoint rounded to the nearest `f64`.
    pub fn to_f64(&self) -> f64 {
        if self.mant.is_zero() {
            return 0.0;
        }
        let bits = self.mant.bits();
        let shift = bits.saturating_sub(64);
        let top = (self.mant.magnitude() >> shift).to_u64().unwrap_or(u64::MAX) as f64;
        let e = (self.exp + shift as i64).clamp(-4000, 4000) as i32;
        let v = top * 2f64.powi(e / 2) * 2f64.powi(e - e / 2);
        if self.mant.sign() == Sign::Minus {
            -v
        } else {
            v
        }
    }

    /// `ln |mid|`, to about double precision, without overflow for huge values.
    pub fn ln_abs_f64(&self) -> f64 {
        if self.mant.is_zero() {
            return f64::NEG_INFINITY;
        }
        let bits = self.mant.bits();
        let shift = bits.saturating_sub(64);
        let top = (self.mant.magnitude() >> shift).to_u64().unwrap_or(u64::MAX) as f64;
        top.ln() + (self.exp + shift as i64) as f64 * std::f64::consts::LN_2
    }

    /// Midpoint rounded to `digits` significant decimal digits, in plain
    /// notation when the exponent is moderate and scientific otherwise.
    pub fn to_decimal(&self, digits: usize) -> String {
        let digits = digits.max(1);
        if self.mant.is_zero() {
            return "0".to_string();
        }
        let q = self.mid();
        let neg = q.is_negative();
        let q = q.abs();
        let mut e10 = (self.top() as f64 * std::f64::consts::LOG10_2).floor() as i64;
        let ten = BigInt::from(10);
        let scaled_int = |e10: i64| -> BigInt {
            let k = digits as i64 - 1 - e10;
            let scaled = if k >= 0 {
                &q * ExactRational::from_integer(num_traits::pow(ten.clone(), k as usize))
            } else {
                &q / ExactRational::from_integer(num_traits::pow(ten.clone(), (-k) as usize))
            };
            scaled.round().to_integer()
        };
        let mut n = scaled_int(e10);
        loop {
            let len = n.to_string().len();
            if len > digits {
                e10 += 1;
            } else if len < digits {
                e10 -= 1;
            } else {
                break;
            }
            n = scaled_int(e10);
        }
        let s = n.to_string();
        let body = if (-6..=20).contains(&e10) {
            if e10 >= 0 {
                let int_len = e10 as usize + 1;
                if int_len >= s.len() {
                    format!("{}{}", s, "0".repeat(int_len - s.len()))
                } else {
                    format!("{}.{}", &s[..int_len], &s[int_len..])
                }
            } else {
                format!("0.{}{}", "0".repeat((-e10 - 1) as usize), s)
            }
        } else if s.len() > 1 {
            format!("{}.{}e{}", &s[..1], &s[1..], e10)
        } else {
            format!("{}e{}", s, e10)
        };
        if neg {
            format!("-{body}")
        } else {
            body
        }
    }

    /// Compares the midpoints exactly.
    pub fn cmp_mid(&self, other: &BigReal) -> Ordering {
        self.mid().cmp(&other.mid())
    }
}

impl fmt::Display for BigReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = ((self.prec as f64) * std::f64::consts::LOG10_2).floor() as usize;
        write!(f, "{} ± {}", self.to_decimal(digits.clamp(1, 60)), self.err)
    }
}
