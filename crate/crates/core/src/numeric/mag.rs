use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigUint;

const MAG_BITS: u32 = 32;

/// A non-negative dyadic bound `man * 2^exp` with a short mantissa.
///
/// Operations suffixed `_up` round toward +∞ and those suffixed `_down`
/// toward zero, so a `Mag` built from upward operations is always an upper
/// bound for the quantity it describes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Mag {
    man: u64,
    exp: i64,
}

impl Mag {
    pub const ZERO: Mag = Mag { man: 0, exp: 0 };

    pub fn is_zero(&self) -> bool {
        self.man == 0
    }

    /// `2^e`.
    pub fn pow2(e: i64) -> Mag {
        Mag { man: 1 << (MAG_BITS - 1), exp: e - (MAG_BITS as i64 - 1) }
    }

    fn from_u128_up(mut m: u128, mut e: i64) -> Mag {
        if m == 0 {
            return Mag::ZERO;
        }
        let bits = 128 - m.leading_zeros();
        if bits > MAG_BITS {
            let shift = bits - MAG_BITS;
            let lost = m & ((1u128 << shift) - 1);
            m >>= shift;
            e += shift as i64;
            if lost != 0 {
                m += 1;
                if m >> MAG_BITS != 0 {
                    m >>= 1;
                    e += 1;
                    // m was 2^MAG_BITS exactly, nothing lost here
                }
            }
        } else {
            let shift = MAG_BITS - bits;
            m <<= shift;
            e -= shift as i64;
        }
        Mag { man: m as u64, exp: e }
    }

    fn from_u128_down(mut m: u128, mut e: i64) -> Mag {
        if m == 0 {
            return Mag::ZERO;
        }
        let bits = 128 - m.leading_zeros();
        if bits > MAG_BITS {
            let shift = bits - MAG_BITS;
            m >>= shift;
            e += shift as i64;
        } else {
            let shift = MAG_BITS - bits;
            m <<= shift;
            e -= shift as i64;
        }
        Mag { man: m as u64, exp: e }
    }

    pub fn from_u64(m: u64) -> Mag {
        Mag::from_u128_up(m as u128, 0)
    }

    /// Upper bound for `x * 2^exp`.
    pub fn from_biguint_up(x: &BigUint, exp: i64) -> Mag {
        let bits = x.bits();
        if bits <= 64 {
            let v = x.iter_u64_digits().next().unwrap_or(0);
            return Mag::from_u128_up(v as u128, exp);
        }
        let shift = bits - 64;
        let top: BigUint = x >> shift;
        let v = top.iter_u64_digits().next().unwrap_or(0) as u128;
        let exact = x.trailing_zeros().is_none_or(|tz| tz >= shift);
        Mag::from_u128_up(v + u128::from(!exact), exp + shift as i64)
    }

    /// Lower bound for `x * 2^exp`.
    pub fn from_biguint_down(x: &BigUint, exp: i64) -> Mag {
        let bits = x.bits();
        if bits <= 64 {
            let v = x.iter_u64_digits().next().unwrap_or(0);
            return Mag::from_u128_down(v as u128, exp);
        }
        let shift = bits - 64;
        let top: BigUint = x >> shift;
        let v = top.iter_u64_digits().next().unwrap_or(0) as u128;
        Mag::from_u128_down(v, exp + shift as i64)
    }

    /// Upper bound for a non-negative finite `f64`.
    pub fn from_f64_up(x: f64) -> Mag {
        assert!(x >= 0.0 && x.is_finite(), "Mag::from_f64_up({x})");
        if x == 0.0 {
            return Mag::ZERO;
        }
        let bits = x.to_bits();
        let raw_exp = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1u64 << 52) - 1);
        let (m, e) = if raw_exp == 0 {
            (frac, -1074)
        } else {
            (frac | (1u64 << 52), raw_exp - 1075)
        };
        Mag::from_u128_up(m as u128, e)
    }

    /// Position of the most significant bit plus one: `2^(top-1) <= self < 2^top`.
    fn top(&self) -> i64 {
        self.exp + (64 - self.man.leading_zeros()) as i64
    }

    pub fn add_up(self, other: Mag) -> Mag {
        if self.is_zero() {
            return other;
        }
        if other.is_zero() {
            return self;
        }
        let (hi, lo) = if self.exp >= other.exp { (self, other) } else { (other, self) };
        let d = hi.exp - lo.exp;
        if d > 90 {
            // lo is far below one unit of hi's mantissa
            return Mag::from_u128_up(hi.man as u128 + 1, hi.exp);
        }
        Mag::from_u128_up(((hi.man as u128) << d) + lo.man as u128, lo.exp)
    }

    pub fn mul_up(self, other: Mag) -> Mag {
        if self.is_zero() || other.is_zero() {
            return Mag::ZERO;
        }
        Mag::from_u128_up(self.man as u128 * other.man as u128, self.exp + other.exp)
    }

    /// `self / other`, rounded up; `other` must be nonzero.
    pub fn div_up(self, other: Mag) -> Mag {
        assert!(!other.is_zero(), "Mag division by zero");
        if self.is_zero() {
            return Mag::ZERO;
        }
        let num = (self.man as u128) << 64;
        let den = other.man as u128;
        let q = num / den + u128::from(num % den != 0);
        Mag::from_u128_up(q, self.exp - other.exp - 64)
    }

    /// `self - other` rounded down, clamped at zero.
    pub fn sub_down(self, other: Mag) -> Mag {
        if other.is_zero() {
            return self;
        }
        if self <= other {
            return Mag::ZERO;
        }
        let d = self.exp - other.exp;
        if d > 90 {
            return Mag::from_u128_down(self.man as u128 - 1, self.exp);
        }
        if d >= 0 {
            let a = (self.man as u128) << d;
            Mag::from_u128_down(a - other.man as u128, other.exp)
        } else {
            let b = (other.man as u128) << (-d);
            Mag::from_u128_down(self.man as u128 - b, self.exp)
        }
    }

    pub fn mul_2exp(self, k: i64) -> Mag {
        if self.is_zero() {
            self
        } else {
            Mag { man: self.man, exp: self.exp + k }
        }
    }

    /// Upper bound on `sqrt(self)`.
    pub fn sqrt_up(self) -> Mag {
        self.sqrt_dir(true)
    }

    /// Lower bound on `sqrt(self)`.
    pub fn sqrt_down(self) -> Mag {
        self.sqrt_dir(false)
    }

    fn sqrt_dir(self, up: bool) -> Mag {
        if self.is_zero() {
            return self;
        }
        let (mut m, mut e) = (self.man as u128, self.exp);
        if e.rem_euclid(2) != 0 {
            m <<= 1;
            e -= 1;
        }
        // scale up for resolution
        m <<= 64;
        e -= 64;
        let mut r = (m as f64).sqrt() as u128;
        while r * r > m {
            r -= 1;
        }
        while (r + 1) * (r + 1) <= m {
            r += 1;
        }
        if up && r * r < m {
            r += 1;
            return Mag::from_u128_up(r, e / 2);
        }
        Mag::from_u128_down(r, e / 2)
    }

    /// Nearest `f64` (may round either way; use for display and loose checks).
    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let e = self.exp.clamp(-2000, 2000) as i32;
        let m = self.man as f64;
        // split the scaling to avoid spurious overflow/underflow of 2^e alone
        m * 2f64.powi(e / 2) * 2f64.powi(e - e / 2)
    }

    /// `log2` of the bound, approximate.
    pub fn log2(&self) -> f64 {
        if self.is_zero() {
            return f64::NEG_INFINITY;
        }
        (self.man as f64).log2() + self.exp as f64
    }
}

impl PartialOrd for Mag {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Mag {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self.is_zero(), other.is_zero()) {
            (true, true) => return Ordering::Equal,
            (true, false) => return Ordering::Less,
            (false, true) => return Ordering::Greater,
            _ => {}
        }
        let (ta, tb) = (self.top(), other.top());
        if ta != tb {
            return ta.cmp(&tb);
        }
        // same top bit: align mantissas
        let e = self.exp.min(other.exp);
        let a = (self.man as u128) << (self.exp - e);
        let b = (other.man as u128) << (other.exp - e);
        a.cmp(&b)
    }
}

impl fmt::Display for Mag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:e}", self.to_f64())
    }
}
