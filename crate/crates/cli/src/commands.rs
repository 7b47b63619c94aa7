use apery_forge::diagnostics::{asymptotics as growth, integrality_report};
use apery_forge::numeric::{format_rational, rat, BigComplex, BigReal};
use apery_forge::recurrence::{convergence_report, iterate_numeric, make_spec, CoefficientTable};
use apery_forge::suite::{run_suite, Suite, SuiteConfig};
use apery_forge::zeta::{default_tolerance, eval_z, AlphaParam, ZFamily};
use apery_forge::{Error, Result};
use serde::Serialize;

use crate::output::{emit, f64s, opt_f64, Doc};
use crate::{AsymptoticsArgs, Common, VerifyArgs};

const MAX_DIGITS: u32 = 290;

struct Parsed {
    family: ZFamily,
    alpha: AlphaParam,
    digits: u32,
    prec: u32,
}

fn parse(c: &Common) -> Result<Parsed> {
    let family: ZFamily = c.family.parse()?;
    let alpha = AlphaParam::parse(&c.alpha)?;
    if c.digits == 0 || c.digits > MAX_DIGITS {
        return Err(Error::InvalidParameter(format!("digits must be in 1..={MAX_DIGITS}, got {}", c.digits)));
    }
    if let Some(t) = c.tol {
        if !(t > 0.0 && t.is_finite()) {
            return Err(Error::InvalidParameter(format!("tolerance must be positive, got {t}")));
        }
    }
    if c.terms == Some(0) {
        return Err(Error::InvalidParameter("terms must be at least 1".into()));
    }
    let prec = (c.digits as f64 * std::f64::consts::LOG2_10).ceil() as u32 + 64;
    Ok(Parsed { family, alpha, digits: c.digits, prec: prec.max(128) })
}

/// `digits` places after the decimal point.
fn fixed(x: &BigReal, digits: u32) -> String {
    let int_digits = x.to_f64().abs().log10().floor().max(-1.0) as i64 + 1;
    x.to_decimal((digits as i64 + int_digits).max(1) as usize)
}

fn complex_str(z: &BigComplex, digits: u32) -> String {
    if z.is_real() {
        return fixed(&z.re, digits);
    }
    let im = fixed(&z.im, digits);
    let sign = if im.starts_with('-') { "" } else { "+" };
    format!("{}{sign}{im}i", fixed(&z.re, digits))
}

#[derive(Serialize)]
struct GenRow {
    n: usize,
    u: String,
    v: String,
    ratio: Option<String>,
}

#[derive(Serialize)]
struct GenReport {
    family: ZFamily,
    alpha: String,
    terms: usize,
    digits: u32,
    exact: bool,
    rows: Vec<GenRow>,
}

pub fn gen(c: &Common) -> Result<u8> {
    let p = parse(c)?;
    let terms = c.terms.unwrap_or(10);
    let rows: Vec<GenRow> = if p.alpha.is_real() {
        let seq = make_spec(p.family, &p.alpha)?.iterate(terms)?;
        seq.rows
            .iter()
            .map(|r| GenRow {
                n: r.n,
                u: format_rational(&r.u),
                v: format_rational(&r.v),
                ratio: (r.u != rat(0, 1)).then(|| fixed(&BigReal::from_rational(&(&r.v / &r.u), p.prec), p.digits)),
            })
            .collect()
    } else {
        let rows = iterate_numeric(p.family, &p.alpha, terms, p.prec + 16 * terms as u32)?;
        rows.iter()
            .enumerate()
            .map(|(n, (u, v))| GenRow {
                n,
                u: complex_str(u, p.digits),
                v: complex_str(v, p.digits),
                ratio: v.checked_div(u).ok().map(|z| complex_str(&z, p.digits)),
            })
            .collect()
    };
    let flat = rows
        .iter()
        .map(|r| vec![r.n.to_string(), r.u.clone(), r.v.clone(), r.ratio.clone().unwrap_or_default()])
        .collect();
    let report = GenReport { family: p.family, alpha: p.alpha.to_string(), terms, digits: p.digits, exact: p.alpha.is_real(), rows };
    emit(c, Doc { command: "gen", body: &report, header: vec!["n", "u", "v", "ratio"], rows: flat })?;
    Ok(0)
}

#[derive(Serialize)]
struct ConstantReport {
    family: ZFamily,
    alpha: String,
    digits: u32,
    terms: usize,
    value: String,
    /// `|v_N/u_N − v_{N−1}/u_{N−1}|`
    err_estimate: f64,
    oracle: String,
    oracle_err: f64,
    /// `|v_N/u_N − multiplier·Z|`
    oracle_diff: f64,
    agrees: bool,
}

/// Terms needed for `10^-digits`, from the ratio of the characteristic roots.
fn terms_for_digits(family: ZFamily, digits: u32) -> Result<usize> {
    // the leading coefficients, and so the roots, do not depend on α
    let zero = AlphaParam::parse("0")?;
    let [big, small] = make_spec(family, &zero)?.char_roots(128)?;
    let rate = small.abs()?.to_f64() / big.abs()?.to_f64();
    if !(rate < 1.0) {
        return Err(Error::NonConvergence(format!("{family}: characteristic roots of equal size")));
    }
    let rate = rate.max(1e-300);
    Ok(((digits as f64 + 3.0) * std::f64::consts::LN_10 / -rate.ln()).ceil() as usize + 2)
}

pub fn constant(c: &Common) -> Result<u8> {
    let p = parse(c)?;
    let terms = match c.terms {
        Some(t) => t.max(2),
        None => terms_for_digits(p.family, p.digits)?,
    };
    let want = 10f64.powi(-(p.digits as i32));
    let oracle_eps = (want / 100.0).max(1e-300);
    let prec = p.prec + 16;
    let (ratios, limit) = if p.alpha.is_real() {
        let seq = make_spec(p.family, &p.alpha)?.iterate(terms)?;
        convergence_report(&seq, oracle_eps)?;
        let ratios: Vec<BigComplex> = seq.rows[terms - 1..]
            .iter()
            .map(|r| {
                if r.u == rat(0, 1) {
                    return Err(Error::NonConvergence(format!("u_{} vanishes", r.n)));
                }
                Ok(BigComplex::from_real(BigReal::from_rational(&(&r.v / &r.u), prec)))
            })
            .collect::<Result<_>>()?;
        let z = eval_z(p.family, &p.alpha, oracle_eps)?.re;
        (ratios, BigComplex::from_real(z.mul_int(p.family.multiplier())))
    } else {
        let rows = iterate_numeric(p.family, &p.alpha, terms, prec + 16 * terms as u32)?;
        let limit = eval_z(p.family, &p.alpha, oracle_eps)?.mul_rational(&rat(p.family.multiplier(), 1));
        // δₙ must shrink over the second half of the rows
        let delta = |n: usize| -> Result<f64> { Ok(rows[n].1.checked_div(&rows[n].0)?.sub(&limit).abs()?.to_f64()) };
        let (mid, end) = (terms / 2, terms);
        let (dm, de) = (delta(mid.max(1))?, delta(end)?);
        if !(de < dm || de <= oracle_eps) {
            return Err(Error::NonConvergence(format!("{}: |v_n/u_n - limit| is not decreasing", p.family)));
        }
        let ratios = rows[terms - 1..].iter().map(|(u, v)| v.checked_div(u)).collect::<std::result::Result<_, _>>()?;
        (ratios, limit)
    };
    let last = &ratios[1];
    let err_estimate = last.sub(&ratios[0]).abs()?.to_f64();
    let oracle_diff = last.sub(&limit).abs()?.to_f64();
    let report = ConstantReport {
        family: p.family,
        alpha: p.alpha.to_string(),
        digits: p.digits,
        terms,
        value: complex_str(last, p.digits),
        err_estimate,
        oracle: complex_str(&limit, p.digits),
        oracle_err: limit.err().to_f64(),
        oracle_diff,
        agrees: oracle_diff <= want,
    };
    let flat = vec![
        vec!["value".into(), report.value.clone()],
        vec!["err_estimate".into(), f64s(err_estimate)],
        vec!["oracle".into(), report.oracle.clone()],
        vec!["oracle_diff".into(), f64s(oracle_diff)],
        vec!["terms".into(), terms.to_string()],
    ];
    let agrees = report.agrees;
    emit(c, Doc { command: "constant", body: &report, header: vec!["key", "value"], rows: flat })?;
    if !agrees {
        eprintln!("convergent and oracle differ by {oracle_diff:e}");
        return Ok(1);
    }
    Ok(0)
}

pub fn verify(v: &VerifyArgs) -> Result<u8> {
    let c = &v.common;
    let p = parse(c)?;
    let suite: Suite = v.what.parse()?;
    let mut cfg = SuiteConfig::new(p.family, p.alpha.clone(), c.terms.unwrap_or(8));
    cfg.integral_eps = c.tol;
    cfg.oracle_eps = default_tolerance(p.digits).max(1e-300);
    cfg.seed = c.seed;
    if v.inject_fault {
        cfg.table = CoefficientTable::canonical(p.family).corrupted();
    }
    let report = run_suite(&cfg, suite)?;
    let flat = report
        .checks
        .iter()
        .map(|k| vec![k.name.clone(), k.pass.to_string(), opt_f64(k.measured), opt_f64(k.allowed), k.detail.clone()])
        .collect();
    emit(c, Doc { command: "verify", body: &report, header: vec!["check", "pass", "measured", "allowed", "detail"], rows: flat })?;
    if report.pass {
        Ok(0)
    } else {
        let names: Vec<_> = report.failures().map(|k| k.name.as_str()).collect();
        eprintln!("verification failed: {}", names.join(", "));
        Ok(1)
    }
}

pub fn asymptotics(a: &AsymptoticsArgs) -> Result<u8> {
    let c = &a.common;
    let p = parse(c)?;
    let report = growth(p.family, &p.alpha, c.terms.unwrap_or(200), a.stride)?;
    let flat = report
        .rows
        .iter()
        .map(|r| vec![r.n.to_string(), f64s(r.log_u), opt_f64(r.log_r)])
        .collect();
    emit(c, Doc { command: "asymptotics", body: &report, header: vec!["n", "log_u", "log_r"], rows: flat })?;
    Ok(0)
}

pub fn integrality(c: &Common) -> Result<u8> {
    let p = parse(c)?;
    let seq = make_spec(p.family, &p.alpha)?.iterate(c.terms.unwrap_or(50))?;
    let report = integrality_report(&seq);
    let flat = report
        .rows
        .iter()
        .map(|r| vec![r.n.to_string(), r.denominator.clone(), r.a_min.clone(), r.unfactored.clone().unwrap_or_default()])
        .collect();
    emit(c, Doc { command: "integrality", body: &report, header: vec!["n", "denominator", "a_min", "unfactored"], rows: flat })?;
    Ok(0)
}
