//! Named verification suites shared by the command line and the bindings.

use std::str::FromStr;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hyper::{
    build_kernel, check_symmetry, compare_with_recurrence, construct_sequence, construction_scale, extract_uv,
    partial_fractions, verify_reconstruction,
};
use crate::integral::verify_representation_seeded;
use crate::numeric::{format_rational, rat};
use crate::recurrence::{convergence_report, displayed, make_spec_from_table, CoefficientTable};
use crate::zeta::{AlphaParam, ZFamily};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    Construction,
    Recurrence,
    Integral,
    Symmetry,
    All,
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "construction" => Ok(Suite::Construction),
            "recurrence" => Ok(Suite::Recurrence),
            "integral" => Ok(Suite::Integral),
            "symmetry" => Ok(Suite::Symmetry),
            "all" => Ok(Suite::All),
            _ => Err(Error::InvalidParameter(format!("unknown suite '{s}'"))),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    /// Measured difference or mismatch count.
    pub measured: Option<f64>,
    pub allowed: Option<f64>,
    pub detail: String,
}

impl Check {
    fn exact(name: impl Into<String>, pass: bool, detail: impl Into<String>) -> Check {
        Check { name: name.into(), pass, measured: None, allowed: None, detail: detail.into() }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub family: ZFamily,
    pub alpha: String,
    pub terms: usize,
    pub suite: Suite,
    pub checks: Vec<Check>,
    pub pass: bool,
}

impl SuiteReport {
    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }
}

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub family: ZFamily,
    pub alpha: AlphaParam,
    pub terms: usize,
    /// Tolerance for the integral comparisons; `None` picks one per family.
    pub integral_eps: Option<f64>,
    /// Oracle tolerance for the convergence check.
    pub oracle_eps: f64,
    pub seed: u64,
    pub table: CoefficientTable,
}

impl SuiteConfig {
    pub fn new(family: ZFamily, alpha: AlphaParam, terms: usize) -> SuiteConfig {
        SuiteConfig {
            family,
            alpha,
            terms,
            integral_eps: None,
            oracle_eps: 1e-25,
            seed: 0,
            table: CoefficientTable::canonical(family),
        }
    }
}

/// Tolerance used by the integral suite when none is given: absolute for the
/// low-dimensional integrals, relative for the 5-fold one.
pub fn default_integral_tolerance(family: ZFamily) -> f64 {
    match family {
        ZFamily::Z1Minus | ZFamily::Z2 | ZFamily::Z2Minus => 1e-8,
        ZFamily::Z3 => 1e-7,
        ZFamily::Z4 => 5e-3,
    }
}

pub fn run_suite(cfg: &SuiteConfig, suite: Suite) -> Result<SuiteReport> {
    if cfg.table.family != cfg.family {
        return Err(Error::InvalidParameter("coefficient table belongs to another family".into()));
    }
    if cfg.terms == 0 {
        return Err(Error::InvalidParameter("terms must be at least 1".into()));
    }
    cfg.alpha.require_exact()?;
    let mut checks = Vec::new();
    let run = |s: Suite| suite == s || suite == Suite::All;
    if run(Suite::Construction) {
        construction_checks(cfg, &mut checks)?;
    }
    if run(Suite::Recurrence) {
        recurrence_checks(cfg, &mut checks)?;
    }
    if run(Suite::Symmetry) {
        symmetry_checks(cfg, &mut checks)?;
    }
    if run(Suite::Integral) {
        integral_checks(cfg, &mut checks)?;
    }
    let pass = checks.iter().all(|c| c.pass);
    Ok(SuiteReport {
        family: cfg.family,
        alpha: cfg.alpha.to_string(),
        terms: cfg.terms,
        suite,
        checks,
        pass,
    })
}

/// Stored table against the displayed forms at 20 seeded rational points.
pub fn transcription_check(table: &CoefficientTable, seed: u64) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x7ab1e);
    let mut bad = 0usize;
    for _ in 0..20 {
        let n = rat(rng.gen_range(-40..40), rng.gen_range(1..9));
        let a = rat(rng.gen_range(-40..40), rng.gen_range(1..9));
        let want = displayed::coefficients(table.family, &n, &a);
        bad += (0..3).filter(|&i| table.eval(i, &n, &a) != want[i]).count();
    }
    Check {
        name: "transcription".into(),
        pass: bad == 0,
        measured: Some(bad as f64),
        allowed: Some(0.0),
        detail: format!("{bad} of 60 coefficient evaluations differ from the factored forms"),
    }
}

fn construction_checks(cfg: &SuiteConfig, out: &mut Vec<Check>) -> Result<()> {
    out.push(transcription_check(&cfg.table, cfg.seed));
    let spec = match make_spec_from_table(&cfg.table, &cfg.alpha) {
        Ok(s) => s,
        Err(Error::ConstructionInconsistency(msg)) => {
            out.push(Check::exact("construction-vs-recurrence", false, msg));
            return Ok(());
        }
        Err(e) => return Err(e),
    };
    let seq = spec.iterate(cfg.terms)?;
    let rep = compare_with_recurrence(cfg.family, &cfg.alpha, &seq, cfg.terms)?;
    let want = format_rational(&construction_scale(cfg.family));
    let pass = rep.matches && rep.scale == want;
    let detail = match rep.first_mismatch {
        Some(n) => format!("first mismatch at n = {n}"),
        None if !pass => format!("scale {} where {want} is expected", rep.scale),
        None => format!("n = 0..={} agree, scale {}", cfg.terms, rep.scale),
    };
    out.push(Check {
        name: "construction-vs-recurrence".into(),
        pass,
        measured: rep.first_mismatch.map(|n| n as f64),
        allowed: None,
        detail,
    });
    Ok(())
}

fn recurrence_checks(cfg: &SuiteConfig, out: &mut Vec<Check>) -> Result<()> {
    let spec = match make_spec_from_table(&cfg.table, &cfg.alpha) {
        Ok(s) => s,
        Err(Error::ConstructionInconsistency(msg)) => {
            out.push(Check::exact("degrees", false, msg));
            return Ok(());
        }
        Err(e) => return Err(e),
    };
    out.push(Check::exact("degrees", true, "coefficient degrees as expected"));

    // the kernel sequence, rescaled, must satisfy the stored recurrence
    let built = construct_sequence(cfg.family, &cfg.alpha, cfg.terms)?;
    let scale = construction_scale(cfg.family);
    let mut bad = Vec::new();
    for n in 1..cfg.terms {
        let r = &built.rows;
        let res_u = spec.residual(&(&r[n - 1].u * &scale), &(&r[n].u * &scale), &(&r[n + 1].u * &scale), n);
        let res_v = spec.residual(&(&r[n - 1].v * &scale), &(&r[n].v * &scale), &(&r[n + 1].v * &scale), n);
        if !res_u.is_zero() || !res_v.is_zero() {
            bad.push(n);
        }
    }
    out.push(Check {
        name: "residuals".into(),
        pass: bad.is_empty(),
        measured: Some(bad.len() as f64),
        allowed: Some(0.0),
        detail: if bad.is_empty() {
            format!("zero for n = 1..{}", cfg.terms)
        } else {
            format!("nonzero at n = {bad:?}")
        },
    });
    let init_ok = built.rows[0].u.clone() * &scale == spec.u0
        && built.rows[0].v.clone() * &scale == spec.v0
        && built.rows[1].u.clone() * &scale == spec.u1
        && built.rows[1].v.clone() * &scale == spec.v1;
    out.push(Check::exact("initial-values", init_ok, "rows 0 and 1 against the stored initial values"));

    if cfg.terms >= 2 {
        let seq = spec.iterate(cfg.terms)?;
        let check = match convergence_report(&seq, cfg.oracle_eps) {
            Ok(rep) => {
                let last = rep.rows.last().expect("rows");
                Check {
                    name: "convergence".into(),
                    pass: true,
                    measured: Some(last.delta),
                    allowed: None,
                    detail: format!("|v/u - limit| decreasing, limit {}", rep.limit),
                }
            }
            Err(Error::NonConvergence(msg)) => Check::exact("convergence", false, msg),
            Err(e) => return Err(e),
        };
        out.push(check);
    }
    Ok(())
}

fn symmetry_checks(cfg: &SuiteConfig, out: &mut Vec<Check>) -> Result<()> {
    let mut broken = Vec::new();
    let mut nonvanishing = Vec::new();
    let mut bad_tables = Vec::new();
    let has_symmetry = matches!(cfg.family, ZFamily::Z2Minus | ZFamily::Z3 | ZFamily::Z4);
    for n in 0..=cfg.terms {
        let kernel = build_kernel(cfg.family, n, &cfg.alpha)?;
        if has_symmetry && !check_symmetry(&kernel)? {
            broken.push(n);
        }
        let table = partial_fractions(&kernel)?;
        if !verify_reconstruction(&kernel, &table)? {
            bad_tables.push(n);
        }
        match extract_uv(&table) {
            Ok(_) => {}
            Err(Error::ConstructionInconsistency(_)) => nonvanishing.push(n),
            Err(e) => return Err(e),
        }
    }
    let list = |v: &Vec<usize>, ok: &str| {
        if v.is_empty() {
            format!("{ok} for n = 0..={}", cfg.terms)
        } else {
            format!("fails at n = {v:?}")
        }
    };
    if has_symmetry {
        out.push(Check::exact("reflection", broken.is_empty(), list(&broken, "holds")));
    }
    out.push(Check::exact("partial-fractions", bad_tables.is_empty(), list(&bad_tables, "reconstruct the kernel")));
    out.push(Check::exact("vanishing-sums", nonvanishing.is_empty(), list(&nonvanishing, "vanish")));
    Ok(())
}

fn integral_checks(cfg: &SuiteConfig, out: &mut Vec<Check>) -> Result<()> {
    let eps = cfg.integral_eps.unwrap_or_else(|| default_integral_tolerance(cfg.family));
    for n in 0..=cfg.terms {
        let rep = verify_representation_seeded(cfg.family, n, &cfg.alpha, eps, cfg.seed)?;
        let worst = rep.diffs.iter().map(|d| d.diff).fold(0.0, f64::max);
        let allowed = rep.diffs.first().map(|d| d.allowed);
        let detail = if !rep.converged {
            format!("quadrature did not reach the tolerance (estimate {:.6e})", rep.integral.value)
        } else {
            format!(
                "recursion {:.12e}, series {:.12e}, integral {:.12e}",
                rep.recursion.value, rep.series.value, rep.integral.value
            )
        };
        out.push(Check { name: format!("integral n={n}"), pass: rep.pass, measured: Some(worst), allowed, detail });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(f: ZFamily, p: i64, q: i64, terms: usize) -> SuiteConfig {
        SuiteConfig::new(f, AlphaParam::real(rat(p, q)).unwrap(), terms)
    }

    #[test]
    fn parses_names() {
        assert_eq!("all".parse::<Suite>().unwrap(), Suite::All);
        assert!("everything".parse::<Suite>().is_err());
    }

    #[test]
    fn clean_tables_pass() {
        for f in ZFamily::ALL {
            let c = cfg(f, -1, 3, 5);
            for s in [Suite::Construction, Suite::Recurrence, Suite::Symmetry] {
                let rep = run_suite(&c, s).unwrap();
                assert!(rep.pass, "{f} {s:?}: {:?}", rep.failures().collect::<Vec<_>>());
            }
        }
    }

    #[test]
    fn corrupted_table_is_caught() {
        let mut c = cfg(ZFamily::Z3, 0, 1, 8);
        c.table = c.table.corrupted();
        let rep = run_suite(&c, Suite::Construction).unwrap();
        assert!(!rep.pass);
        let names: Vec<_> = rep.failures().map(|c| c.name.as_str()).collect();
        assert!(names.contains(&"transcription"));
        assert!(names.contains(&"construction-vs-recurrence"));
        let rep = run_suite(&c, Suite::Recurrence).unwrap();
        assert!(rep.failures().any(|c| c.name == "residuals"));
    }

    #[test]
    fn integral_suite() {
        let rep = run_suite(&cfg(ZFamily::Z2Minus, 1, 2, 2), Suite::Integral).unwrap();
        assert!(rep.pass, "{:?}", rep.checks);
        assert_eq!(rep.checks.len(), 3);
    }
}
