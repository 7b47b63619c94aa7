//! Plain truncated summation with an explicit tail bound.
//!
//! Too slow for tight tolerances (the tail only decays polynomially), but it
//! shares nothing with the Euler–Maclaurin evaluator, so the two are used to
//! check each other.

use super::{AlphaParam, ZFamily};
use crate::numeric::{BigComplex, Mag};

/// `Σ_{ν=1}^{n_terms} (±1)^{ν-1} / (ν-α)^s`.
pub fn partial_sum(family: ZFamily, alpha: &AlphaParam, n_terms: usize, prec: u32) -> BigComplex {
    let s = family.exponent();
    let a = alpha.numeric(prec);
    let mut acc = BigComplex::zero(prec);
    for nu in 1..=n_terms {
        let d = BigComplex::from_int(nu as i64, prec).sub(&a);
        let term = d.powi(s).recip().expect("ν - α is bounded away from zero");
        acc = if family.alternating() && nu % 2 == 0 { acc.sub(&term) } else { acc.add(&term) };
    }
    acc
}

/// Bound on `|Σ_{ν>n_terms} …|`, valid once `n_terms + 1 > Re α`.
///
/// Alternating families: the first omitted term for real α; for complex α
/// each consecutive pair is bounded by `s/(ν-Re α)^(s+1)`. Otherwise the
/// integral comparison `1/((s-1)(N-Re α)^(s-1))`.
pub fn tail_bound(family: ZFamily, alpha: &AlphaParam, n_terms: usize) -> Mag {
    let s = family.exponent() as f64;
    let a = alpha.re_f64();
    let n = n_terms as f64;
    let b = if family.alternating() {
        let x = n + 1.0 - a;
        if alpha.is_real() {
            x.powf(-s)
        } else {
            s * x.powf(-s - 1.0) + 0.5 * x.powf(-s)
        }
    } else {
        1.0 / ((s - 1.0) * (n - a).powf(s - 1.0))
    };
    Mag::from_f64_up(b * (1.0 + 1e-9))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{rat, BigReal};
    use proptest::prelude::*;

    #[test]
    fn first_terms() {
        let a = AlphaParam::real(rat(0, 1)).unwrap();
        let p = partial_sum(ZFamily::Z2Minus, &a, 2, 128);
        assert_eq!(p.re.to_decimal(10), "0.7500000000");
        let p = partial_sum(ZFamily::Z3, &a, 2, 128);
        assert_eq!(p.re.to_decimal(10), "1.125000000");
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]
        #[test]
        fn tail_bound_is_sound(
            fam in 0usize..5,
            p in -12i64..=3,
            n in 2usize..60,
        ) {
            let family = ZFamily::ALL[fam];
            let alpha = AlphaParam::real(rat(p, 6)).unwrap();
            let short = partial_sum(family, &alpha, n, 128);
            let long = partial_sum(family, &alpha, 4 * n, 128);
            let diff: BigReal = long.re.sub(&short.re);
            prop_assert!(diff.abs_lower() <= tail_bound(family, &alpha, n));
        }
    }
}
