use super::CoefficientTable;
use crate::error::{Error, Result};
use crate::numeric::{rat, BigComplex};
use crate::zeta::{AlphaParam, ZFamily};

/// `(u1 numerator, v1 numerator, power of (α-1) under v1)`, coefficients
/// highest degree first, before the `Z4` doubling.
fn initial_shape(family: ZFamily) -> (&'static [i64], &'static [i64], u32) {
    match family {
        ZFamily::Z2Minus => (&[1, -3, 3], &[1, -4, 5], 2),
        ZFamily::Z3 => (&[2, -6, 5], &[1, -5, 9, -6], 3),
        ZFamily::Z4 => (&[1, -6, 14, -15, 6], &[-2, 15, -45, 65, -39], 3),
        ZFamily::Z1Minus => (&[-2, 3], &[1, -2], 1),
        ZFamily::Z2 => (&[-2, 3], &[2, -6, 5], 2),
    }
}

fn horner(a: &BigComplex, cs: &[i64]) -> BigComplex {
    let prec = a.precision();
    cs.iter()
        .fold(BigComplex::zero(prec), |acc, &c| acc.mul(a).add(&BigComplex::from_int(c, prec)))
}

/// Forward iteration in error-tracked complex arithmetic; returns
/// `(uₙ, vₙ)` for `n = 0..=terms`. Works for complex α.
pub fn iterate_numeric(
    family: ZFamily,
    alpha: &AlphaParam,
    terms: usize,
    prec: u32,
) -> Result<Vec<(BigComplex, BigComplex)>> {
    let table = CoefficientTable::canonical(family);
    let a = alpha.numeric(prec);
    let (u1c, v1c, pw) = initial_shape(family);
    let scale = if family == ZFamily::Z4 { 2 } else { 1 };
    let u1 = horner(&a, u1c).mul_rational(&rat(scale, 1));
    let den = a.sub(&BigComplex::from_int(1, prec)).powi(pw);
    let v1 = horner(&a, v1c).mul_rational(&rat(scale, 1)).checked_div(&den)?;
    let mut rows = vec![(BigComplex::from_int(1, prec), BigComplex::zero(prec))];
    if terms >= 1 {
        rows.push((u1, v1));
    }
    for n in 1..terms {
        let c2 = table.eval_complex(0, n as i64, &a);
        let c1 = table.eval_complex(1, n as i64, &a);
        let c0 = table.eval_complex(2, n as i64, &a);
        if c2.abs_upper().is_zero() || c2.re.contains_zero() && c2.im.contains_zero() {
            return Err(Error::DegenerateRecurrence { index: n });
        }
        let (pu, pv) = &rows[n - 1];
        let (cu, cv) = &rows[n];
        let u = c1.mul(cu).add(&c0.mul(pu)).neg().checked_div(&c2)?;
        let v = c1.mul(cv).add(&c0.mul(pv)).neg().checked_div(&c2)?;
        rows.push((u, v));
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::BigReal;
    use crate::recurrence::make_spec;

    #[test]
    fn matches_exact_iteration_for_real_alpha() {
        for family in ZFamily::ALL {
            let a = AlphaParam::real(rat(-2, 7)).unwrap();
            let exact = make_spec(family, &a).unwrap().iterate(12).unwrap();
            let num = iterate_numeric(family, &a, 12, 256).unwrap();
            for (row, (u, v)) in exact.rows.iter().zip(&num) {
                let du = u.re.sub(&BigReal::from_rational(&row.u, 256));
                let dv = v.re.sub(&BigReal::from_rational(&row.v, 256));
                assert!(du.abs_lower().is_zero() && dv.abs_lower().is_zero(), "{family} n={}", row.n);
                assert!(u.re.err().log2() < du.abs_upper().log2().max(-150.0) + 200.0);
            }
        }
    }

    #[test]
    fn complex_alpha_converges() {
        let a = AlphaParam::parse("1/3+1/2i").unwrap();
        let rows = iterate_numeric(ZFamily::Z3, &a, 25, 400).unwrap();
        let (u, v) = &rows[25];
        let ratio = v.checked_div(u).unwrap();
        let z = crate::zeta::eval_z(ZFamily::Z3, &a, 1e-30).unwrap();
        assert!(ratio.sub(&z).abs_upper().to_f64() < 1e-12);
    }
}
