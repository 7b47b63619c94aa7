//! Growth and integrality diagnostics for exact approximant sequences.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numeric::{format_rational, BigReal};
use crate::recurrence::{log_growth, make_spec, ApproximantSequence};
use crate::zeta::{eval_z_real, AlphaParam, ZFamily};

#[derive(Clone, Debug, Serialize)]
pub struct GrowthRow {
    pub n: usize,
    /// `(1/n) ln |uₙ|`
    pub log_u: f64,
    /// `(1/n) ln |rₙ|`, when the oracle resolves `rₙ`.
    pub log_r: Option<f64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct AsymptoticsReport {
    pub family: ZFamily,
    pub alpha: String,
    pub terms: usize,
    /// `ln |λ₁|` for the dominant characteristic root.
    pub predicted_log_u: f64,
    /// `ln |λ₂|` for the other root; the rate of `rₙ`.
    pub predicted_log_r: f64,
    pub rows: Vec<GrowthRow>,
    /// `|empirical − predicted| / |predicted|` for `uₙ` at the last row.
    pub relative_gap: f64,
}

/// `(1/n) ln |uₙ|` and `(1/n) ln |rₙ|` against the characteristic roots.
///
/// Rows where the oracle cannot resolve `rₙ` carry no `log_r`.
pub fn asymptotics(
    family: ZFamily,
    alpha: &AlphaParam,
    terms: usize,
    stride: usize,
) -> Result<AsymptoticsReport> {
    if terms < 2 {
        return Err(Error::InvalidParameter("asymptotics needs at least 2 terms".into()));
    }
    let spec = make_spec(family, alpha)?;
    let seq = spec.iterate(terms)?;
    let [big, small] = spec.char_roots(128)?;
    let predicted_log_u = big.abs()?.ln_abs_f64();
    let predicted_log_r = if small.abs_upper().is_zero() { f64::NEG_INFINITY } else { small.abs()?.ln_abs_f64() };

    // rₙ is about |λ₂/λ₁|ⁿ relative to uₙ·Z, so the oracle needs roughly twice
    // the digits of u_terms; f64 tolerances stop at 1e-300.
    let last = &seq.rows[terms].u;
    let digits = (2.0 * log_growth(last, 1) / std::f64::consts::LN_10).ceil().max(0.0) as i32 + 30;
    let z = eval_z_real(family, alpha, 10f64.powi(-digits.min(300)))?;

    let stride = stride.max(1);
    let mut rows = Vec::new();
    for row in seq.rows.iter().skip(1) {
        if row.n % stride != 0 && row.n != terms {
            continue;
        }
        let log_r = {
            let prec = z.precision();
            let r = z
                .mul_int(family.multiplier())
                .mul(&BigReal::from_rational(&row.u, prec))
                .sub(&BigReal::from_rational(&row.v, prec));
            (r.abs_lower() > r.err().mul_2exp(4)).then(|| r.ln_abs_f64() / row.n as f64)
        };
        rows.push(GrowthRow { n: row.n, log_u: log_growth(&row.u, row.n), log_r });
    }
    let emp = rows.last().map(|r| r.log_u).unwrap_or(0.0);
    Ok(AsymptoticsReport {
        family,
        alpha: alpha.to_string(),
        terms,
        predicted_log_u,
        predicted_log_r,
        relative_gap: (emp - predicted_log_u).abs() / predicted_log_u.abs(),
        rows,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct IntegralityRow {
    pub n: usize,
    pub denominator: String,
    /// Smallest `A` with `Aⁿ uₙ` integral (over the primes found).
    pub a_min: String,
    /// Part of the denominator left after trial division.
    pub unfactored: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct IntegralityReport {
    pub family: ZFamily,
    pub alpha: String,
    pub terms: usize,
    pub all_integral: bool,
    /// Primes dividing some denominator.
    pub primes: Vec<u64>,
    pub rows: Vec<IntegralityRow>,
    /// `A` when the last third of the rows agree on it.
    pub stable_a: Option<String>,
}

const TRIAL_LIMIT: u64 = 100_000;

/// Splits `x` into `(prime, exponent)` pairs below `TRIAL_LIMIT` and a cofactor.
fn trial_factor(x: &BigInt) -> (Vec<(u64, u32)>, BigInt) {
    let mut x = x.abs();
    let mut out = Vec::new();
    let mut p = 2u64;
    while p < TRIAL_LIMIT && !x.is_one() {
        let bp = BigInt::from(p);
        if &bp * &bp > x {
            out.push((x.to_string().parse().unwrap(), 1));
            x = BigInt::one();
            break;
        }
        let mut e = 0;
        loop {
            let (q, r) = x.div_rem(&bp);
            if !r.is_zero() {
                break;
            }
            x = q;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    (out, x)
}

pub fn integrality_report(seq: &ApproximantSequence) -> IntegralityReport {
    let mut rows = Vec::new();
    let mut primes: Vec<u64> = Vec::new();
    for row in &seq.rows {
        let den = row.u.denom().clone();
        let (fac, rest) = trial_factor(&den);
        let mut a = BigInt::one();
        if row.n > 0 {
            for &(p, e) in &fac {
                a *= num_traits::pow(BigInt::from(p), e.div_ceil(row.n as u32) as usize);
            }
        }
        for &(p, _) in &fac {
            if !primes.contains(&p) {
                primes.push(p);
            }
        }
        rows.push(IntegralityRow {
            n: row.n,
            denominator: den.to_string(),
            a_min: a.to_string(),
            unfactored: (!rest.is_one()).then(|| rest.to_string()),
        });
    }
    primes.sort_unstable();
    let tail = &rows[rows.len() - (rows.len() / 3).max(1)..];
    let stable_a = tail
        .iter()
        .all(|r| r.a_min == tail[0].a_min && r.unfactored.is_none())
        .then(|| tail[0].a_min.clone());
    IntegralityReport {
        family: seq.family,
        alpha: format_rational(&seq.alpha),
        terms: seq.rows.len() - 1,
        all_integral: rows.iter().all(|r| r.denominator == "1"),
        primes,
        rows,
        stable_a,
    }
}
