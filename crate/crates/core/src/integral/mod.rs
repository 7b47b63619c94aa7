//! Quadrature of the Beta-type integral representations of `rₙ`.
//!
//! Every factor `x^(n−α)` is removed by `x = s^q` (`q` the denominator of
//! α), which turns the endpoint weight into an integer power of `s`.
//! Denominators are rewritten as sums of non-negative terms, e.g.
//! `1 − x(1−y) = (1−x) + xy`, so nothing cancels near the singular edges.
//!
//! Dimensions 1–3 use tensor products of graded Gauss–Legendre rules with
//! the error estimated from two successive refinements. The 5-fold integral
//! uses a randomly shifted Halton sequence.

mod gamma;
mod gauss;

pub use gamma::ln_gamma;
pub use gauss::{graded, legendre, Node};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hyper::{construction_scale, eval_rn_series, linear_form_value};
use crate::numeric::{rat, BigReal, ExactRational as Q, Mag};
use crate::recurrence::make_spec;
use crate::zeta::{rational_to_f64, AlphaParam, ZFamily};

/// Shape of the denominator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Pattern {
    /// `1 + x`
    OnePlusX,
    /// `1 − xy`
    OneMinusXY,
    /// `1 − x(1−y)`
    OneMinusXOneMinusY,
    /// `1 − x(1−y(1−z))`
    Nested3,
    /// `x₁(1−(1−(1−(1−x₂)x₃)x₄)x₅) + (1−x₁)x₂x₃x₄x₅`
    Nested5,
}

/// `rₙ = prefactor · ∫ Π xᵢ^(aᵢ)(1−xᵢ)ⁿ / D(x)^(n+1) dx` over the unit cube,
/// with `aᵢ = n − α` except for `x₁` of the 5-fold integral where `a₁ = n`.
#[derive(Clone, Debug, PartialEq)]
pub struct IntegralSpec {
    pub family: ZFamily,
    pub n: usize,
    pub alpha: Q,
    pub dimension: usize,
    pub prefactor: f64,
    pub pattern: Pattern,
}

pub fn integral_spec(family: ZFamily, n: usize, alpha: &AlphaParam) -> Result<IntegralSpec> {
    let a = alpha.require_exact()?.clone();
    if a >= rat(1, 1) {
        return Err(Error::InvalidParameter(format!("alpha must be below 1, got {alpha}")));
    }
    let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
    let (dimension, prefactor, pattern) = match family {
        ZFamily::Z1Minus => (1, 1.0, Pattern::OnePlusX),
        ZFamily::Z2 => (2, sign, Pattern::OneMinusXY),
        ZFamily::Z2Minus => (2, sign, Pattern::OneMinusXOneMinusY),
        ZFamily::Z3 => (3, 0.5, Pattern::Nested3),
        ZFamily::Z4 => {
            let (nf, af) = (n as f64, rational_to_f64(&a));
            let l = ln_gamma(3.0 * nf + 2.0 - 2.0 * af)
                - 2f64.ln()
                - ln_gamma(nf + 1.0)
                - 2.0 * ln_gamma(nf + 1.0 - af);
            (5, sign * l.exp(), Pattern::Nested5)
        }
    };
    Ok(IntegralSpec { family, n, alpha: a, dimension, prefactor, pattern })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum QuadMethod {
    TensorGauss,
    QuasiMonteCarlo,
}

#[derive(Clone, Debug, Serialize)]
pub struct QuadratureResult {
    pub value: f64,
    /// Difference of the last two refinements (tensor rules) or three
    /// standard errors over the random shifts (quasi-Monte Carlo).
    pub err: f64,
    pub method: QuadMethod,
    pub nodes_used: u64,
    pub target_eps: f64,
}

impl QuadratureResult {
    pub fn to_real(&self) -> BigReal {
        BigReal::from_f64(self.value, 64).add_err(Mag::from_f64_up(self.err))
    }
}

/// Nodes for one variable after `x = s^q`: `x`, `1 − x`, and the weight
/// including `x^a (1−x)^n` and the Jacobian.
struct Axis {
    x: Vec<f64>,
    cx: Vec<f64>,
    w: Vec<f64>,
}

/// `q` and the integer exponent of `s` for a factor `x^(n − p/q) dx`.
fn substitution(alpha: &Q, n: usize, with_alpha: bool) -> (i32, i32) {
    if !with_alpha {
        return (1, n as i32);
    }
    let q = alpha.denom().try_into().unwrap_or(i32::MAX);
    let p: i32 = alpha.numer().try_into().unwrap_or(i32::MIN);
    (q, q * n as i32 - p + q - 1)
}

fn axis(nodes: &[Node], q: i32, e: i32, n: usize) -> Axis {
    let mut ax = Axis { x: Vec::with_capacity(nodes.len()), cx: Vec::new(), w: Vec::new() };
    for nd in nodes {
        let geo: f64 = (0..q).map(|i| nd.s.powi(i)).sum();
        let cx = nd.c * geo;
        ax.x.push(nd.s.powi(q));
        ax.cx.push(cx);
        ax.w.push(nd.w * q as f64 * nd.s.powi(e) * cx.powi(n as i32));
    }
    ax
}

/// `φ(u) = u²(3 − 2u)`, its complement and derivative.
fn smoothed(u: f64) -> (f64, f64, f64) {
    let v = 1.0 - u;
    (u * u * (3.0 - 2.0 * u), v * v * (1.0 + 2.0 * u), 6.0 * u * v)
}

fn tensor_sum(spec: &IntegralSpec, nodes: &[Node]) -> f64 {
    let (q, e) = substitution(&spec.alpha, spec.n, true);
    let a = axis(nodes, q, e, spec.n);
    let k = spec.n as i32 + 1;
    let m = nodes.len();
    match spec.pattern {
        Pattern::OnePlusX => (0..m).map(|i| a.w[i] / (1.0 + a.x[i]).powi(k)).sum(),
        Pattern::OneMinusXY | Pattern::OneMinusXOneMinusY => {
            let xy = spec.pattern == Pattern::OneMinusXY;
            (0..m)
                .map(|i| {
                    let inner: f64 = (0..m)
                        .map(|j| {
                            let y = if xy { a.cx[j] } else { a.x[j] };
                            a.w[j] / (a.cx[i] + a.x[i] * y).powi(k)
                        })
                        .sum();
                    a.w[i] * inner
                })
                .sum()
        }
        Pattern::Nested3 => (0..m)
            .map(|i| {
                let mid: f64 = (0..m)
                    .map(|j| {
                        let xy = a.x[i] * a.x[j];
                        let inner: f64 =
                            (0..m).map(|l| a.w[l] / (a.cx[i] + xy * a.cx[l]).powi(k)).sum();
                        a.w[j] * inner
                    })
                    .sum();
                a.w[i] * mid
            })
            .sum(),
        Pattern::Nested5 => unreachable!("5-fold integral goes through quasi-Monte Carlo"),
    }
}

const TENSOR_BUDGET: u64 = 400_000_000;

fn integrate_tensor(spec: &IntegralSpec, eps: f64) -> Result<QuadratureResult> {
    let mut prev: Option<f64> = None;
    let mut best = (f64::NAN, f64::INFINITY);
    let mut used = 0u64;
    for level in 0..12usize {
        let (p, levels) = (6 + 2 * level, 12 + 4 * level);
        let nodes = graded(p, levels, 0.2);
        let count = (nodes.len() as u64).pow(spec.dimension as u32);
        if used + count > TENSOR_BUDGET {
            break;
        }
        used += count;
        let v = spec.prefactor * tensor_sum(spec, &nodes);
        if let Some(pv) = prev {
            let err = (v - pv).abs() + 4.0 * f64::EPSILON * v.abs();
            best = (v, err);
            if err <= eps {
                return Ok(QuadratureResult {
                    value: v,
                    err,
                    method: QuadMethod::TensorGauss,
                    nodes_used: used,
                    target_eps: eps,
                });
            }
        }
        prev = Some(v);
    }
    Err(Error::BudgetExceeded { value: best.0, err: best.1 })
}

/// Radical inverse of `i` in base `b`.
fn radical_inverse(mut i: u64, b: u64) -> f64 {
    let inv = 1.0 / b as f64;
    let (mut f, mut r) = (inv, 0.0);
    while i > 0 {
        r += f * (i % b) as f64;
        i /= b;
        f *= inv;
    }
    r
}

const HALTON_BASES: [u64; 5] = [2, 3, 5, 7, 11];
const SHIFTS: usize = 3;

fn nested5(spec: &IntegralSpec, u: &[f64; 5]) -> f64 {
    let n = spec.n;
    let (q, e) = substitution(&spec.alpha, n, true);
    let mut x = [0.0; 5];
    let mut c = [0.0; 5];
    let mut w = 1.0;
    for d in 0..5 {
        let (s, cs, j) = smoothed(u[d]);
        let (qq, ee) = if d == 0 { (1, n as i32) } else { (q, e) };
        let geo: f64 = (0..qq).map(|i| s.powi(i)).sum();
        x[d] = s.powi(qq);
        c[d] = cs * geo;
        w *= j * qq as f64 * s.powi(ee) * c[d].powi(n as i32);
    }
    let inner = c[4] + x[4] * x[3] * (c[2] + x[2] * x[1]);
    let den = x[0] * inner + c[0] * x[1] * x[2] * x[3] * x[4];
    if w == 0.0 {
        return 0.0;
    }
    w / den.powi(n as i32 + 1)
}

fn integrate_qmc(spec: &IntegralSpec, rel_eps: f64, seed: u64) -> Result<QuadratureResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let shifts: Vec<[f64; 5]> = (0..SHIFTS).map(|_| std::array::from_fn(|_| rng.gen::<f64>())).collect();
    let mut best = (f64::NAN, f64::INFINITY);
    let mut used = 0u64;
    for log_n in [14u32, 16, 18, 20] {
        let count = 1u64 << log_n;
        let means: Vec<f64> = shifts
            .iter()
            .map(|sh| {
                let mut acc = 0.0;
                for i in 1..=count {
                    let u: [f64; 5] = std::array::from_fn(|d| {
                        let v = radical_inverse(i, HALTON_BASES[d]) + sh[d];
                        v - v.floor()
                    });
                    acc += nested5(spec, &u);
                }
                acc / count as f64
            })
            .collect();
        used += count * SHIFTS as u64;
        let mean = means.iter().sum::<f64>() / SHIFTS as f64;
        let var = means.iter().map(|m| (m - mean).powi(2)).sum::<f64>() / (SHIFTS - 1) as f64;
        let value = spec.prefactor * mean;
        let err = 3.0 * (var / SHIFTS as f64).sqrt() * spec.prefactor.abs();
        best = (value, err);
        if err <= rel_eps * value.abs() {
            return Ok(QuadratureResult {
                value,
                err,
                method: QuadMethod::QuasiMonteCarlo,
                nodes_used: used,
                target_eps: rel_eps,
            });
        }
    }
    Err(Error::BudgetExceeded { value: best.0, err: best.1 })
}

/// Integrates `spec`. `eps` is an absolute tolerance for dimensions 1–3
/// and a relative one for the 5-fold integral; `seed` only affects the
/// latter.
pub fn integrate(spec: &IntegralSpec, eps: f64, seed: u64) -> Result<QuadratureResult> {
    if !(eps > 0.0 && eps.is_finite()) {
        return Err(Error::InvalidParameter(format!("tolerance must be positive, got {eps}")));
    }
    if spec.dimension == 5 {
        integrate_qmc(spec, eps, seed)
    } else {
        integrate_tensor(spec, eps)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Estimate {
    pub value: f64,
    pub err: f64,
}

impl Estimate {
    fn from_real(r: &BigReal) -> Estimate {
        Estimate { value: r.to_f64(), err: r.err().to_f64() }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PairDiff {
    pub pair: String,
    pub diff: f64,
    pub allowed: f64,
    pub pass: bool,
}

/// The three routes to `rₙ` side by side.
#[derive(Clone, Debug, Serialize)]
pub struct RepresentationReport {
    pub family: ZFamily,
    pub n: usize,
    pub alpha: String,
    pub tolerance: f64,
    pub relative: bool,
    pub recursion: Estimate,
    pub series: Estimate,
    pub integral: Estimate,
    pub method: QuadMethod,
    pub nodes_used: u64,
    pub converged: bool,
    pub diffs: Vec<PairDiff>,
    pub pass: bool,
}

/// Compares `c·uₙ·Z − vₙ` (from the recurrence), the kernel series and the
/// integral. All three are in the kernel normalisation (for `Z4`, half the
/// recurrence). Differences must stay within `2 eps`, or `eps·|rₙ|` for the
/// 5-fold integral.
pub fn verify_representation(family: ZFamily, n: usize, alpha: &AlphaParam, eps: f64) -> Result<RepresentationReport> {
    verify_representation_seeded(family, n, alpha, eps, 0)
}

pub fn verify_representation_seeded(
    family: ZFamily,
    n: usize,
    alpha: &AlphaParam,
    eps: f64,
    seed: u64,
) -> Result<RepresentationReport> {
    let spec = integral_spec(family, n, alpha)?;
    let relative = spec.dimension == 5;
    let seq = make_spec(family, alpha)?.iterate(n)?;
    let row = &seq.rows[n];
    let scale = construction_scale(family);
    let (u, v) = (&row.u / &scale, &row.v / &scale);
    let series = eval_rn_series(family, n, alpha, if relative { 1e-20 } else { eps / 4.0 })?.r;
    let abs_eps = if relative { 1e-20 } else { eps / 4.0 };
    let recursion = linear_form_value(family, alpha, &u, &v, abs_eps)?;
    let method = if relative { QuadMethod::QuasiMonteCarlo } else { QuadMethod::TensorGauss };
    // an integral that does not settle is reported as a failed comparison
    let (quad, converged) = match integrate(&spec, if relative { eps / 2.0 } else { eps }, seed) {
        Ok(q) => (q, true),
        Err(Error::BudgetExceeded { value, err }) => {
            (QuadratureResult { value, err, method, nodes_used: 0, target_eps: eps }, false)
        }
        Err(e) => return Err(e),
    };
    let allowed = if relative { eps * series.to_f64().abs() } else { 2.0 * eps };
    let vals = [
        ("recursion", recursion.to_f64()),
        ("series", series.to_f64()),
        ("integral", quad.value),
    ];
    let mut diffs = Vec::new();
    for i in 0..3 {
        for j in i + 1..3 {
            let diff = if (i, j) == (0, 1) {
                recursion.sub(&series).abs_upper().to_f64()
            } else {
                (vals[i].1 - vals[j].1).abs()
            };
            diffs.push(PairDiff {
                pair: format!("{}-{}", vals[i].0, vals[j].0),
                diff,
                allowed,
                pass: diff <= allowed,
            });
        }
    }
    let pass = converged && diffs.iter().all(|d| d.pass);
    Ok(RepresentationReport {
        family,
        n,
        alpha: alpha.to_string(),
        tolerance: eps,
        relative,
        recursion: Estimate::from_real(&recursion),
        series: Estimate::from_real(&series),
        integral: Estimate { value: quad.value, err: quad.err },
        method: quad.method,
        nodes_used: quad.nodes_used,
        converged,
        diffs,
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zeta::eval_z_real;

    fn al(p: i64, q: i64) -> AlphaParam {
        AlphaParam::real(rat(p, q)).unwrap()
    }

    #[test]
    fn log_two() {
        let s = integral_spec(ZFamily::Z1Minus, 0, &al(0, 1)).unwrap();
        let r = integrate(&s, 1e-12, 0).unwrap();
        assert!((r.value - std::f64::consts::LN_2).abs() < 1e-12);
    }

    #[test]
    fn substitution_exponents() {
        // x^(1/2) dx with x = s² is 2 s² ds
        assert_eq!(substitution(&rat(1, 2), 1, true), (2, 2));
        // x^(-1/3) dx with x = s³ is 3 s ds
        assert_eq!(substitution(&rat(1, 3), 0, true), (3, 1));
        assert_eq!(substitution(&rat(-2, 7), 0, true), (7, 8));
        assert_eq!(substitution(&rat(5, 7), 3, false), (1, 3));
    }

    #[test]
    fn double_integral_at_n1() {
        let eps = 1e-9;
        let s = integral_spec(ZFamily::Z2Minus, 1, &al(0, 1)).unwrap();
        let r = integrate(&s, eps, 0).unwrap();
        let z = eval_z_real(ZFamily::Z2Minus, &al(0, 1), 1e-20).unwrap().to_f64();
        assert!((r.value - (6.0 * z - 5.0)).abs() <= 2.0 * eps, "{}", r.value);
    }

    #[test]
    fn triple_integral_matches_series() {
        let eps = 1e-8;
        let s = integral_spec(ZFamily::Z3, 1, &al(1, 2)).unwrap();
        let r = integrate(&s, eps, 0).unwrap();
        let t = eval_rn_series(ZFamily::Z3, 1, &al(1, 2), 1e-12).unwrap().r.to_f64();
        assert!((r.value - t).abs() <= 2.0 * eps);
    }

    #[test]
    fn refinement_is_consistent() {
        for f in [ZFamily::Z1Minus, ZFamily::Z2, ZFamily::Z2Minus, ZFamily::Z3] {
            for n in [1, 4] {
                let s = integral_spec(f, n, &al(1, 3)).unwrap();
                let r = integrate(&s, 1e-9, 0).unwrap();
                // one level finer than the accepted rule
                let nodes = graded(6 + 2 * 4, 12 + 4 * 4, 0.2);
                if (nodes.len() as u64).pow(s.dimension as u32) > 100_000_000 {
                    continue;
                }
                let finer = s.prefactor * tensor_sum(&s, &nodes);
                assert!((finer - r.value).abs() <= r.err, "{f} n={n}");
            }
        }
    }

    #[test]
    fn signs() {
        for f in [ZFamily::Z2, ZFamily::Z3, ZFamily::Z2Minus] {
            for n in 0..4 {
                let s = integral_spec(f, n, &al(1, 2)).unwrap();
                let r = integrate(&s, 1e-6, 0).unwrap();
                let t = eval_rn_series(f, n, &al(1, 2), 1e-12).unwrap().r.to_f64();
                assert_eq!(r.value.signum(), t.signum(), "{f} n={n}");
                // integrand itself is positive
                assert!(r.value * s.prefactor > 0.0);
            }
        }
    }

    #[test]
    fn five_fold_at_zero() {
        for n in 0..=1 {
            let rep = verify_representation(ZFamily::Z4, n, &al(0, 1), 5e-3).unwrap();
            assert!(rep.pass, "{rep:?}");
        }
    }

    #[test]
    fn qmc_is_reproducible() {
        let s = integral_spec(ZFamily::Z4, 1, &al(0, 1)).unwrap();
        let a = integrate(&s, 5e-3, 42).unwrap();
        let b = integrate(&s, 5e-3, 42).unwrap();
        assert_eq!(a.value.to_bits(), b.value.to_bits());
    }

    #[test]
    fn rejects_complex_alpha() {
        let a = AlphaParam::complex(rat(0, 1), rat(1, 1)).unwrap();
        assert!(integral_spec(ZFamily::Z3, 1, &a).is_err());
    }
}
