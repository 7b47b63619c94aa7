//! Reference values of the five target constants.
//!
//! The evaluator splits each constant into Hurwitz-type sums
//! `Σ_{k≥0} (k+q)^(-s)`, adds the first `N` terms directly and replaces the
//! rest by an Euler–Maclaurin expansion whose remainder is bounded
//! explicitly. Alternating families use
//! `Σ (-1)^(ν-1)/(ν-α)^s = 2^(-s) [ζ(s,(1-α)/2) - ζ(s,(2-α)/2)]`.

mod bernoulli;
mod direct;
mod family;

pub use bernoulli::bernoulli_even;
pub use direct::{partial_sum, tail_bound};
pub use family::{AlphaParam, ZFamily};
pub(crate) use family::rational_to_f64;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::numeric::{precision_for_tolerance, rat, BigComplex, BigReal, ExactRational, Mag};

/// `ln` of the rising factorial `(s)_m`.
fn ln_rising(s: u32, m: usize) -> f64 {
    (0..m).map(|i| ((s as usize + i) as f64).ln()).sum()
}

/// log2 of the Euler–Maclaurin remainder bound after `m` correction terms,
/// for `Σ_{k≥N} (k+q)^(-s)` with `Re q = q_re`.
fn em_remainder_log2(s: u32, n: usize, q_re: f64, m: usize) -> f64 {
    let two_pi = 2.0 * std::f64::consts::PI;
    let ln = 4f64.ln() + ln_rising(s, 2 * m)
        - (2 * m) as f64 * two_pi.ln()
        - ((s as usize + 2 * m - 1) as f64).ln()
        - (s as usize + 2 * m - 1) as f64 * (n as f64 + q_re).ln();
    ln / std::f64::consts::LN_2
}

#[derive(Clone, Copy, Debug)]
struct Plan {
    n: usize,
    m: usize,
}

/// Smallest `(N, M)` from a fixed ladder whose remainder fits `eps / 16`.
fn plan(s: u32, q_re_min: f64, eps: f64) -> Plan {
    let target = eps.log2() - 4.0;
    let mut n = 8;
    loop {
        for m in 1..=(2 * n).min(400) {
            if em_remainder_log2(s, n, q_re_min, m) <= target {
                return Plan { n, m };
            }
        }
        n *= 2;
    }
}

/// Euler–Maclaurin correction `f(N)/2 + Σ_j B_{2j}/(2j)! (s)_{2j-1} (N+q)^(-s-2j+1)`
/// and the remainder bound, for `f(x) = (x+q)^(-s)`.
fn em_correction(s: u32, q: &BigComplex, q_re: f64, p: Plan, prec: u32) -> Result<(BigComplex, Mag)> {
    let w = BigComplex::from_int(p.n as i64, prec).add(q).recip()?;
    let w2 = w.mul(&w);
    let mut pow = w.powi(s);
    let mut acc = pow.mul_2exp(-1);
    pow = pow.mul(&w);
    // coefficient (s)_{2j-1} / (2j)! carried exactly
    let mut rising = ExactRational::from_integer(BigInt::from(s));
    let mut fact = ExactRational::from_integer(BigInt::from(2));
    for j in 1..=p.m {
        let c = bernoulli_even(j) * &rising / &fact;
        acc = acc.add(&pow.mul_rational(&c));
        pow = pow.mul(&w2);
        let base = (s as i64) + 2 * j as i64 - 1;
        rising *= rat(base * (base + 1), 1);
        fact *= rat((2 * j as i64 + 1) * (2 * j as i64 + 2), 1);
    }
    let bound = em_remainder_log2(s, p.n, q_re, p.m);
    Ok((acc, Mag::pow2(bound.ceil() as i64)))
}

/// `Σ_{k<N} (k+q)^(-s)`.
fn head(s: u32, q: &BigComplex, n: usize, prec: u32) -> Result<BigComplex> {
    let mut acc = BigComplex::zero(prec);
    for k in 0..n {
        let t = BigComplex::from_int(k as i64, prec).add(q).powi(s).recip()?;
        acc = acc.add(&t);
    }
    Ok(acc)
}

/// `2 atanh(z)` for small `|z|`, with series truncation bound.
fn two_atanh(z: &BigComplex, prec: u32) -> Result<BigComplex> {
    let r = z.abs_upper().to_f64();
    assert!(r < 0.5, "atanh argument too large");
    let z2 = z.mul(z);
    let mut pow = z.clone();
    let mut acc = BigComplex::zero(prec);
    let mut k = 0i64;
    loop {
        acc = acc.add(&pow.mul_rational(&rat(1, 2 * k + 1)));
        pow = pow.mul(&z2);
        k += 1;
        let rest_log2 = (2 * k + 1) as f64 * r.log2() - (1.0 - r * r).log2();
        if rest_log2 < -(prec as f64) - 8.0 {
            let bound = Mag::pow2(rest_log2.ceil() as i64);
            return Ok(acc.add_err(bound).mul_2exp(1));
        }
    }
}

fn magnitude_bits(family: ZFamily, alpha: &AlphaParam) -> u32 {
    // |Z| <= Σ 1/|ν-α|^s is dominated by the first term when α approaches 1
    let gap = 1.0 - alpha.re_f64();
    let first = (family.exponent() as f64) * (-gap.log2()).max(0.0);
    first.ceil() as u32 + 4
}

/// Evaluates the family constant at α with absolute error at most `eps`,
/// choosing the working precision automatically.
pub fn eval_z(family: ZFamily, alpha: &AlphaParam, eps: f64) -> Result<BigComplex> {
    let prec = precision_for_tolerance(eps) + magnitude_bits(family, alpha) + 16;
    eval_z_prec(family, alpha, eps, prec)
}

/// As [`eval_z`] at a fixed working precision; fails with
/// [`Error::PrecisionExhausted`] when the accumulated error exceeds `eps`.
pub fn eval_z_prec(family: ZFamily, alpha: &AlphaParam, eps: f64, prec: u32) -> Result<BigComplex> {
    if !(eps > 0.0 && eps.is_finite()) {
        return Err(Error::InvalidParameter(format!("tolerance must be positive, got {eps}")));
    }
    let s = family.exponent();
    let one = BigComplex::from_int(1, prec);
    let a = alpha.numeric(prec);
    let re = alpha.re_f64();
    let value = if !family.alternating() {
        let q = one.sub(&a);
        let q_re = 1.0 - re;
        let p = plan(s, q_re, eps);
        let h = head(s, &q, p.n, prec)?;
        let nq = BigComplex::from_int(p.n as i64, prec).add(&q);
        let integral = nq.powi(s - 1).recip()?.mul_rational(&rat(1, s as i64 - 1));
        let (corr, rem) = em_correction(s, &q, q_re, p, prec)?;
        h.add(&integral).add(&corr).add_err(rem)
    } else {
        let qa = one.sub(&a).mul_2exp(-1);
        let qb = BigComplex::from_int(2, prec).sub(&a).mul_2exp(-1);
        let (ra, rb) = ((1.0 - re) / 2.0, (2.0 - re) / 2.0);
        let p = plan(s, ra, eps / 2.0);
        let h = head(s, &qa, p.n, prec)?.sub(&head(s, &qb, p.n, prec)?);
        let integral = if s == 1 {
            // ∫_N^∞ 1/(x+a) - 1/(x+b) dx = ln((N+b)/(N+a)) = 2 atanh(1/(4N+3-2α))
            let d = BigComplex::from_int(4 * p.n as i64 + 3, prec).sub(&a.mul_2exp(1));
            two_atanh(&d.recip()?, prec)?
        } else {
            let ia = BigComplex::from_int(p.n as i64, prec).add(&qa).powi(s - 1).recip()?;
            let ib = BigComplex::from_int(p.n as i64, prec).add(&qb).powi(s - 1).recip()?;
            ia.sub(&ib).mul_rational(&rat(1, s as i64 - 1))
        };
        let (ca, rema) = em_correction(s, &qa, ra, p, prec)?;
        let (cb, remb) = em_correction(s, &qb, rb, p, prec)?;
        h.add(&integral).add(&ca).sub(&cb).add_err(rema.add_up(remb)).mul_2exp(-(s as i64))
    };
    let err = value.err();
    if err > Mag::from_f64_up(eps) {
        return Err(Error::PrecisionExhausted { requested: eps, precision_bits: prec });
    }
    Ok(value)
}

/// Real-valued evaluation; α must be real.
pub fn eval_z_real(family: ZFamily, alpha: &AlphaParam, eps: f64) -> Result<BigReal> {
    if !alpha.is_real() {
        return Err(Error::Unsupported("eval_z_real needs a real alpha".into()));
    }
    Ok(eval_z(family, alpha, eps)?.re)
}

/// Catalan's constant `G = Z₂⁻(1/2)/4`.
pub fn eval_catalan(eps: f64) -> Result<BigReal> {
    let half = AlphaParam::real(rat(1, 2))?;
    Ok(eval_z_real(ZFamily::Z2Minus, &half, 4.0 * eps)?.mul_2exp(-2))
}

/// Default oracle tolerance for a given number of decimal digits.
pub fn default_tolerance(precision_digits: u32) -> f64 {
    10f64.powi(-(precision_digits as i32 - 10).max(1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const PREC: u32 = 256;

    fn alpha(p: i64, q: i64) -> AlphaParam {
        AlphaParam::real(rat(p, q)).unwrap()
    }

    // Independent constants from elementary exact-rational series.
    fn arctan_inv(k: i64, terms: usize) -> ExactRational {
        let mut s = rat(0, 1);
        let mut pow = rat(1, k);
        for i in 0..terms {
            let t = &pow * rat(1, 2 * i as i64 + 1);
            if i % 2 == 0 {
                s += t;
            } else {
                s -= t;
            }
            pow *= rat(1, k * k);
        }
        s
    }

    fn pi() -> BigReal {
        let q = arctan_inv(5, 40) * rat(16, 1) - arctan_inv(239, 20) * rat(4, 1);
        BigReal::from_rational(&q, PREC)
    }

    fn ln2() -> BigReal {
        let mut s = rat(0, 1);
        for k in 1..200i64 {
            s += ExactRational::new(BigInt::from(1), BigInt::from(k) << k as usize);
        }
        BigReal::from_rational(&s, PREC)
    }

    const ZETA3: &str = "1.2020569031595942853997381615114499907649862923405";
    const CATALAN: &str = "0.91596559417721901505460351493238411077414937428167";

    fn close(x: &BigReal, y: &BigReal, tol: f64) -> bool {
        x.sub(y).abs_lower().to_f64() <= tol
    }

    fn lit(s: &str) -> BigReal {
        BigReal::from_rational(&crate::numeric::parse_rational(s).unwrap(), PREC)
    }

    #[test]
    fn zeta2_from_alternating() {
        let z = eval_z_real(ZFamily::Z2Minus, &alpha(0, 1), 1e-30).unwrap();
        assert!(z.err().to_f64() <= 1e-30);
        let p = pi();
        let want = p.mul(&p).div_int(12);
        assert!(close(&z, &want, 1e-30));
    }

    #[test]
    fn zeta3_value() {
        let z = eval_z_real(ZFamily::Z3, &alpha(0, 1), 1e-30).unwrap();
        assert!(close(&z, &lit(ZETA3), 1e-30));
        // two truncation points of the plain sum bracket the same value
        for n in [200usize, 400] {
            let a = alpha(0, 1);
            let d = partial_sum(ZFamily::Z3, &a, n, PREC).re;
            let t = tail_bound(ZFamily::Z3, &a, n).to_f64();
            let gap = z.sub(&d).to_f64();
            assert!(gap > 0.0 && gap <= t);
        }
    }

    #[test]
    fn catalan_value() {
        let g = eval_catalan(1e-20).unwrap();
        assert!(g.err().to_f64() <= 1e-20);
        assert!(close(&g, &lit(CATALAN), 1e-20));
        assert_eq!(g.to_decimal(21), "0.915965594177219015055");
        let z = eval_z_real(ZFamily::Z2Minus, &alpha(1, 2), 1e-20).unwrap();
        assert!(close(&g.mul_int(4), &z, 5e-20));
        let coarse = eval_catalan(1e-6).unwrap();
        assert!(close(&coarse, &lit("0.915966"), 1e-6));
    }

    #[test]
    fn half_integer_shift_identities() {
        let h = alpha(1, 2);
        let p = pi();
        let z3 = eval_z_real(ZFamily::Z3, &h, 1e-30).unwrap();
        assert!(close(&z3, &lit(ZETA3).mul_int(7), 1e-29));
        let z4 = eval_z_real(ZFamily::Z4, &h, 1e-30).unwrap();
        assert!(close(&z4, &p.powi(4).div_int(6), 1e-29));
        let z2 = eval_z_real(ZFamily::Z2, &h, 1e-30).unwrap();
        assert!(close(&z2, &p.mul(&p).div_int(2), 1e-29));
        let z1 = eval_z_real(ZFamily::Z1Minus, &h, 1e-30).unwrap();
        assert!(close(&z1, &p.mul_2exp(-1), 1e-29));
    }

    #[test]
    fn log2_and_zeta4_at_zero() {
        let z1 = eval_z_real(ZFamily::Z1Minus, &alpha(0, 1), 1e-30).unwrap();
        assert!(close(&z1, &ln2(), 1e-30));
        let z4 = eval_z_real(ZFamily::Z4, &alpha(0, 1), 1e-30).unwrap();
        assert!(close(&z4, &pi().powi(4).div_int(90), 1e-30));
        let z2 = eval_z_real(ZFamily::Z2, &alpha(0, 1), 1e-30).unwrap();
        assert!(close(&z2, &pi().mul(&pi()).div_int(6), 1e-30));
    }

    #[test]
    fn near_the_boundary() {
        // Z3(α) - 1/(1-α)^3 equals Z3 shifted by one: Σ_{ν≥2}
        let a = alpha(99, 100);
        let z = eval_z_real(ZFamily::Z3, &a, 1e-25).unwrap();
        let shifted = eval_z_real(ZFamily::Z3, &alpha(-1, 100), 1e-25).unwrap();
        let first = BigReal::from_int(1_000_000, PREC);
        assert!(close(&z.sub(&first), &shifted, 2e-25));
    }

    #[test]
    fn exhausted_precision_is_reported() {
        let r = eval_z_prec(ZFamily::Z3, &alpha(0, 1), 1e-40, 64);
        assert!(matches!(r, Err(Error::PrecisionExhausted { .. })));
    }

    #[test]
    fn default_tolerance_follows_digits() {
        assert_eq!(default_tolerance(30), 1e-20);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn more_precision_never_worse(fam in 0usize..5, p in -12i64..=5) {
            let family = ZFamily::ALL[fam];
            let a = alpha(p, 6);
            let lo = eval_z_prec(family, &a, 1e-20, 120).unwrap();
            let hi = eval_z_prec(family, &a, 1e-20, 184).unwrap();
            prop_assert!(hi.err() <= lo.err());
        }

        #[test]
        fn conjugate_symmetry(fam in 0usize..5, p in -12i64..=5, q in -8i64..=8) {
            let family = ZFamily::ALL[fam];
            let a = AlphaParam::complex(rat(p, 6), rat(q, 4)).unwrap();
            let eps = 1e-20;
            let x = eval_z(family, &a, eps).unwrap();
            let y = eval_z(family, &a.conj(), eps).unwrap().conj();
            prop_assert!(x.sub(&y).abs_upper().to_f64() <= 2.0 * eps + 1e-60);
        }

        #[test]
        fn agrees_with_plain_summation(fam in 0usize..5, p in -12i64..=3, q in -4i64..=4) {
            let family = ZFamily::ALL[fam];
            let a = AlphaParam::complex(rat(p, 6), rat(q, 4)).unwrap();
            let z = eval_z(family, &a, 1e-20).unwrap();
            let n = 300;
            let d = partial_sum(family, &a, n, PREC);
            let t = tail_bound(family, &a, n).to_f64();
            prop_assert!(z.sub(&d).abs_upper().to_f64() <= t * 1.0001 + 1e-19);
        }
    }
}
