use num_traits::Zero;

use super::{ExactRational, NumericError};

/// Truncated power series in ε: `coeffs[i]` multiplies `ε^i`, known modulo
/// `ε^coeffs.len()`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Series {
    pub coeffs: Vec<ExactRational>,
}

impl Series {
    pub fn new(coeffs: Vec<ExactRational>) -> Self {
        Series { coeffs }
    }

    pub fn one(order: usize) -> Self {
        let mut coeffs = vec![ExactRational::zero(); order];
        if order > 0 {
            coeffs[0] = ExactRational::from_integer(1.into());
        }
        Series { coeffs }
    }

    /// `c + ε`, truncated to `order` terms.
    pub fn shifted_linear(c: ExactRational, order: usize) -> Self {
        let mut coeffs = vec![ExactRational::zero(); order];
        if order > 0 {
            coeffs[0] = c;
        }
        if order > 1 {
            coeffs[1] = ExactRational::from_integer(1.into());
        }
        Series { coeffs }
    }

    pub fn coeff(&self, i: usize) -> ExactRational {
        self.coeffs.get(i).cloned().unwrap_or_else(ExactRational::zero)
    }

    fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }
}

/// Product modulo `ε^order`.
pub fn series_mul(a: &Series, b: &Series, order: usize) -> Series {
    let mut out = vec![ExactRational::zero(); order];
    for (i, x) in a.coeffs.iter().enumerate().take(order) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.coeffs.iter().enumerate().take(order - i) {
            out[i + j] += x * y;
        }
    }
    Series { coeffs: out }
}

/// Quotient `num / den` modulo `ε^order`.
///
/// A common power of ε is cancelled first, so `(2ε)/(ε)` is `2`; a pole
/// (numerator valuation below the denominator's) is an error.
pub fn series_div(num: &Series, den: &Series, order: usize) -> Result<Series, NumericError> {
    let shift = den.valuation().ok_or(NumericError::ZeroConstantTerm)?;
    if num.coeffs.iter().take(shift).any(|c| !c.is_zero()) {
        return Err(NumericError::ZeroConstantTerm);
    }
    let n: Vec<ExactRational> = num.coeffs.iter().skip(shift).cloned().collect();
    let d: Vec<ExactRational> = den.coeffs.iter().skip(shift).cloned().collect();
    let get = |v: &[ExactRational], i: usize| v.get(i).cloned().unwrap_or_else(ExactRational::zero);
    let d0 = d[0].clone();
    let mut q: Vec<ExactRational> = Vec::with_capacity(order);
    for i in 0..order {
        let mut s = get(&n, i);
        for (j, qj) in q.iter().enumerate() {
            let dij = get(&d, i - j);
            if !dij.is_zero() {
                s -= qj * dij;
            }
        }
        q.push(s / &d0);
    }
    Ok(Series { coeffs: q })
}
