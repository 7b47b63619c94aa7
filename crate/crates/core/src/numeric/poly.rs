use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::ExactRational;

/// Dense univariate polynomial over the rationals; `coeffs[i]` multiplies `x^i`.
/// The leading coefficient is nonzero unless the polynomial is zero.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct PolyQ {
    coeffs: Vec<ExactRational>,
}

impl PolyQ {
    pub fn new(mut coeffs: Vec<ExactRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        PolyQ { coeffs }
    }

    pub fn zero() -> Self {
        PolyQ { coeffs: Vec::new() }
    }

    pub fn constant(c: ExactRational) -> Self {
        PolyQ::new(vec![c])
    }

    /// The monic linear polynomial `x - root`.
    pub fn linear(root: &ExactRational) -> Self {
        PolyQ::new(vec![-root.clone(), ExactRational::one()])
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        PolyQ::new(coeffs.iter().map(|&c| ExactRational::from_integer(c.into())).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[ExactRational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> ExactRational {
        self.coeffs.get(i).cloned().unwrap_or_else(ExactRational::zero)
    }

    pub fn leading(&self) -> ExactRational {
        self.coeffs.last().cloned().unwrap_or_else(ExactRational::zero)
    }

    pub fn eval(&self, x: &ExactRational) -> ExactRational {
        poly_eval(self, x)
    }

    pub fn derivative(&self) -> PolyQ {
        PolyQ::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * ExactRational::from_integer(i.into()))
                .collect(),
        )
    }

    pub fn scale(&self, c: &ExactRational) -> PolyQ {
        PolyQ::new(self.coeffs.iter().map(|a| a * c).collect())
    }
}

/// Exact Horner evaluation.
pub fn poly_eval(p: &PolyQ, x: &ExactRational) -> ExactRational {
    p.coeffs
        .iter()
        .rev()
        .fold(ExactRational::zero(), |acc, c| acc * x + c)
}

impl Add for &PolyQ {
    type Output = PolyQ;
    fn add(self, rhs: &PolyQ) -> PolyQ {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        PolyQ::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &PolyQ {
    type Output = PolyQ;
    fn sub(self, rhs: &PolyQ) -> PolyQ {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        PolyQ::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &PolyQ {
    type Output = PolyQ;
    fn mul(self, rhs: &PolyQ) -> PolyQ {
        if self.is_zero() || rhs.is_zero() {
            return PolyQ::zero();
        }
        let mut out = vec![ExactRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        PolyQ::new(out)
    }
}

impl Neg for &PolyQ {
    type Output = PolyQ;
    fn neg(self) -> PolyQ {
        PolyQ::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::rat;
    use proptest::prelude::*;

    #[test]
    fn zero_polynomial_evaluates_to_zero() {
        let p = PolyQ::new(vec![rat(0, 1)]);
        assert!(p.is_zero());
        assert_eq!(poly_eval(&p, &rat(7, 1)), rat(0, 1));
    }

    #[test]
    fn quadratic_at_origin() {
        // x^2 - 3x + 3
        let p = PolyQ::from_i64(&[3, -3, 1]);
        assert_eq!(poly_eval(&p, &rat(0, 1)), rat(3, 1));
    }

    #[test]
    fn leading_factor_at_half() {
        // 5x^2 - 4(1/2)x + 1/4 at x = 1
        let p = PolyQ::new(vec![rat(1, 4), rat(-2, 1), rat(5, 1)]);
        assert_eq!(poly_eval(&p, &rat(1, 1)), rat(13, 4));
    }

    fn arb_poly() -> impl Strategy<Value = PolyQ> {
        prop::collection::vec((-50i64..50, 1i64..9), 0..=9).prop_map(|cs| {
            PolyQ::new(cs.into_iter().map(|(p, q)| rat(p, q)).collect())
        })
    }

    proptest! {
        #[test]
        fn leibniz_rule(a in arb_poly(), b in arb_poly()) {
            let lhs = (&a * &b).derivative();
            let rhs = &(&a.derivative() * &b) + &(&a * &b.derivative());
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn eval_is_ring_homomorphism(a in arb_poly(), b in arb_poly(), p in -20i64..20, q in 1i64..7) {
            let x = rat(p, q);
            prop_assert_eq!((&a * &b).eval(&x), a.eval(&x) * b.eval(&x));
            prop_assert_eq!((&a + &b).eval(&x), a.eval(&x) + b.eval(&x));
        }
    }
}
