use std::fmt;

use super::mag::Mag;
use super::rational::ExactRational;
use super::real::BigReal;
use super::NumericError;

/// Complex value with independent error bounds on each component.
#[derive(Clone, Debug)]
pub struct BigComplex {
    pub re: BigReal,
    pub im: BigReal,
}

impl BigComplex {
    pub fn new(re: BigReal, im: BigReal) -> Self {
        BigComplex { re, im }
    }

    pub fn from_real(re: BigReal) -> Self {
        let prec = re.precision();
        BigComplex { re, im: BigReal::zero(prec) }
    }

    pub fn from_rationals(re: &ExactRational, im: &ExactRational, prec: u32) -> Self {
        BigComplex { re: BigReal::from_rational(re, prec), im: BigReal::from_rational(im, prec) }
    }

    pub fn from_int(v: i64, prec: u32) -> Self {
        BigComplex::from_real(BigReal::from_int(v, prec))
    }

    pub fn zero(prec: u32) -> Self {
        BigComplex::from_real(BigReal::zero(prec))
    }

    pub fn precision(&self) -> u32 {
        self.re.precision().max(self.im.precision())
    }

    /// True when the imaginary part is an exact zero.
    pub fn is_real(&self) -> bool {
        self.im.is_exact() && self.im.signum_mid() == 0
    }

    pub fn add(&self, o: &BigComplex) -> BigComplex {
        BigComplex { re: self.re.add(&o.re), im: self.im.add(&o.im) }
    }

    pub fn sub(&self, o: &BigComplex) -> BigComplex {
        BigComplex { re: self.re.sub(&o.re), im: self.im.sub(&o.im) }
    }

    pub fn neg(&self) -> BigComplex {
        BigComplex { re: self.re.neg(), im: self.im.neg() }
    }

    pub fn conj(&self) -> BigComplex {
        BigComplex { re: self.re.clone(), im: self.im.neg() }
    }

    pub fn mul(&self, o: &BigComplex) -> BigComplex {
        if self.is_real() && o.is_real() {
            return BigComplex::from_real(self.re.mul(&o.re));
        }
        BigComplex {
            re: self.re.mul(&o.re).sub(&self.im.mul(&o.im)),
            im: self.re.mul(&o.im).add(&self.im.mul(&o.re)),
        }
    }

    pub fn mul_real(&self, r: &BigReal) -> BigComplex {
        BigComplex { re: self.re.mul(r), im: self.im.mul(r) }
    }

    pub fn mul_rational(&self, q: &ExactRational) -> BigComplex {
        BigComplex { re: self.re.mul_rational(q), im: self.im.mul_rational(q) }
    }

    pub fn mul_2exp(&self, k: i64) -> BigComplex {
        BigComplex { re: self.re.mul_2exp(k), im: self.im.mul_2exp(k) }
    }

    /// Squared modulus.
    pub fn norm_sqr(&self) -> BigReal {
        self.re.mul(&self.re).add(&self.im.mul(&self.im))
    }

    pub fn abs(&self) -> Result<BigReal, NumericError> {
        if self.is_real() {
            return Ok(self.re.abs());
        }
        self.norm_sqr().sqrt()
    }

    pub fn checked_div(&self, o: &BigComplex) -> Result<BigComplex, NumericError> {
        if o.is_real() {
            return Ok(BigComplex { re: self.re.checked_div(&o.re)?, im: self.im.checked_div(&o.re)? });
        }
        let d = o.norm_sqr();
        let num = self.mul(&o.conj());
        Ok(BigComplex { re: num.re.checked_div(&d)?, im: num.im.checked_div(&d)? })
    }

    pub fn recip(&self) -> Result<BigComplex, NumericError> {
        BigComplex::from_int(1, self.precision()).checked_div(self)
    }

    pub fn powi(&self, k: u32) -> BigComplex {
        let mut acc = BigComplex::from_int(1, self.precision());
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

    /// Principal square root.
    pub fn sqrt(&self) -> Result<BigComplex, NumericError> {
        let prec = self.precision();
        if self.is_real() {
            if !self.re.is_negative() {
                return Ok(BigComplex::from_real(self.re.sqrt()?));
            }
            return Ok(BigComplex::new(BigReal::zero(prec), self.re.neg().sqrt()?));
        }
        let r = self.abs()?;
        let a = r.add(&self.re).mul_2exp(-1).sqrt()?;
        let b = r.sub(&self.re).mul_2exp(-1).sqrt()?;
        let b = if self.im.signum_mid() < 0 { b.neg() } else { b };
        Ok(BigComplex::new(a, b))
    }

    /// Upper bound for the modulus, including error.
    pub fn abs_upper(&self) -> Mag {
        let r = self.re.abs_upper();
        let i = self.im.abs_upper();
        r.mul_up(r).add_up(i.mul_up(i)).sqrt_up()
    }

    /// Combined error bound, `sqrt(err_re^2 + err_im^2)` rounded up.
    pub fn err(&self) -> Mag {
        let a = self.re.err();
        let b = self.im.err();
        a.mul_up(a).add_up(b.mul_up(b)).sqrt_up()
    }

    pub fn add_err(self, e: Mag) -> BigComplex {
        BigComplex { re: self.re.add_err(e), im: self.im.add_err(e) }
    }
}

impl fmt::Display for BigComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_real() {
            write!(f, "{}", self.re)
        } else {
            write!(f, "({}) + ({})i", self.re, self.im)
        }
    }
}
