//! Direct summation of `Σ_t (±1)^(t−1) a(t)` over a rational kernel (or its
//! derivative), with rigorous truncation bounds.
//!
//! Alternating sums: exact head up to `N`, then the Euler transform
//! `Σ_{s≥0} (−1)^s b(s) = Σ_{i<k} (Dⁱb)(0)/2^(i+1) + 2^(-k) Σ (−1)^s (Dᵏb)(s)`
//! with `Db(s) = b(s) − b(s+1)`. The remainder is bounded by Cauchy's
//! estimate on a disc of radius `θy` around each `y ≥ N`, where
//! `|a(z)| ≤ C₀ y^(-d)`.
//!
//! Plain sums are turned into alternating ones by
//! `Σ a(t) = Σ_{ℓ<L} 2^ℓ Σ (−1)^(t−1) a(2^ℓ t) + 2^L Σ a(2^L t)`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{build_kernel, extract_uv, partial_fractions, KernelSpec};
use crate::error::{Error, Result};
use crate::numeric::{precision_for_tolerance, rat, BigReal, ExactRational as Q, Mag};
use crate::zeta::{eval_z_real, rational_to_f64, AlphaParam, ZFamily};

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    PartialFractions,
    DirectSeries,
    DerivativeSeries,
    Integral,
}

/// A value of `rₙ` together with how it was obtained.
#[derive(Clone, Debug)]
pub struct LinearFormEval {
    pub family: ZFamily,
    pub n: usize,
    pub alpha: Q,
    pub r: BigReal,
    pub u: Option<Q>,
    pub v: Option<Q>,
    pub method: Method,
}

fn log2_upper(q: &Q) -> f64 {
    if q.is_zero() {
        return f64::NEG_INFINITY;
    }
    q.numer().bits() as f64 - (q.denom().bits() as f64 - 1.0)
}

fn abs_f64(q: &Q) -> f64 {
    rational_to_f64(q).abs()
}

fn log2_factorial(k: u32) -> f64 {
    (2..=k).map(|i| (i as f64).log2()).sum()
}

struct Summand {
    kernel: KernelSpec,
    /// Sum the derivative of the kernel instead of the kernel.
    deriv: bool,
}

#[derive(Clone, Copy, Debug)]
struct Plan {
    n: u64,
    k: u32,
    theta: f64,
    log2_c0: f64,
}

impl Summand {
    fn delta(&self) -> u32 {
        self.deriv as u32
    }

    fn value(&self, t: &Q) -> Result<Q> {
        if self.deriv {
            self.kernel.derivative(t)
        } else {
            self.kernel.eval(t)
        }
    }

    /// `a(t)` to `prec` bits, through `R'/R = Σ e/(t−c) − m Σ 1/(t−p)` for
    /// the derivative. Exact arithmetic only where `t` hits a root.
    fn value_real(&self, t: &Q, prec: u32) -> Result<BigReal> {
        let k = &self.kernel;
        if k.roots.iter().any(|(c, _)| c == t) {
            return Ok(BigReal::from_rational(&self.value(t)?, prec));
        }
        let w = prec + 16;
        let mut g = BigReal::from_rational(&k.constant, w);
        let mut log_d = BigReal::zero(w);
        for (c, e) in &k.roots {
            let f = BigReal::from_rational(&(t - c), w);
            g = g.mul(&f.powi(*e));
            if self.deriv {
                log_d = log_d.add(&f.recip()?.mul_int(*e as i64));
            }
        }
        let mut b = BigReal::from_int(1, w);
        for p in k.poles() {
            let f = BigReal::from_rational(&(t - p), w);
            b = b.mul(&f);
            if self.deriv {
                log_d = log_d.sub(&f.recip()?.mul_int(k.pole_order as i64));
            }
        }
        g = g.checked_div(&b.powi(k.pole_order))?;
        if self.deriv {
            g = g.mul(&log_d);
        }
        Ok(g.with_precision(prec))
    }

    fn reach(&self) -> f64 {
        let r = self.kernel.roots.iter().map(|(c, _)| abs_f64(c));
        let p = self.kernel.poles().into_iter().map(|c| abs_f64(&c)).collect::<Vec<_>>();
        r.chain(p).fold(0.0, f64::max)
    }

    /// log2 of `C₀` with `max_{|z−y|≤θy} |R(z)| ≤ C₀ y^(-d)` for `y ≥ x0`.
    fn log2_c0(&self, theta: f64, x0: f64) -> Option<f64> {
        let mut l = log2_upper(&self.kernel.constant);
        for (c, e) in &self.kernel.roots {
            l += *e as f64 * (1.0 + theta + abs_f64(c) / x0).log2();
        }
        for p in self.kernel.poles() {
            let g = 1.0 - theta - abs_f64(&p) / x0;
            if g <= 0.05 {
                return None;
            }
            l -= self.kernel.pole_order as f64 * g.log2();
        }
        Some(l + 1e-6 * l.abs() + 0.01)
    }

    fn d(&self) -> f64 {
        self.kernel.decay() as f64
    }

    /// log2 bound on the Euler-transform remainder after `k` differences,
    /// for the level `ℓ` sum over `a(2^ℓ t)`, head ending at `n`.
    fn euler_remainder_log2(&self, p: &Plan, k: u32, level: u32) -> f64 {
        let kd = k + self.delta();
        let e = self.d() + kd as f64;
        p.log2_c0 + log2_factorial(kd) - kd as f64 * p.theta.log2() + (1.0 - e) * (p.n as f64).log2()
            - (e - 1.0).log2()
            - k as f64
            - level as f64 * (self.d() + self.delta() as f64)
            + 0.01
    }

    /// log2 bound on `2^L Σ_t |a(2^L t)|`; needs `2^L ≥ n`.
    fn dyadic_remainder_log2(&self, p: &Plan, levels: u32) -> f64 {
        let e = self.d() + self.delta() as f64;
        let zeta = (e / (e - 1.0)).log2();
        p.log2_c0 + log2_factorial(self.delta()) - self.delta() as f64 * p.theta.log2()
            - levels as f64 * (e - 1.0)
            + zeta
            + 0.01
    }

    fn plan(&self, target_log2: f64) -> Result<Plan> {
        let x0 = (4.0 * (self.reach() + 1.0)).ceil().max(16.0) as u64;
        for i in 0..10 {
            let n = x0 << i;
            let mut best: Option<Plan> = None;
            for theta in [0.5, 0.25, 0.125] {
                let Some(c0) = self.log2_c0(theta, n as f64) else { continue };
                let mut p = Plan { n, k: 0, theta, log2_c0: c0 };
                let found = (1..=600).find(|&k| self.euler_remainder_log2(&p, k, 0) <= target_log2);
                if let Some(k) = found {
                    p.k = k;
                    if best.is_none_or(|b| k < b.k) {
                        best = Some(p);
                    }
                }
            }
            if let Some(b) = best {
                return Ok(b);
            }
        }
        Err(Error::NonConvergence(format!(
            "{} n = {}: no truncation meets 2^{target_log2:.1}",
            self.kernel.family, self.kernel.n
        )))
    }

    /// `Σ_{t≥1} (−1)^(t−1) a(scale·t)` and its truncation bound.
    fn alternating(&self, p: &Plan, level: u32, prec: u32) -> Result<BigReal> {
        let scale = Q::from_integer(BigInt::one() << level as usize);
        let at = |t: u64, prec: u32| self.value_real(&(&scale * rat(t as i64, 1)), prec);
        let mut acc = BigReal::zero(prec);
        for t in 1..=p.n {
            let x = at(t, prec)?;
            acc = if t % 2 == 0 { acc.sub(&x) } else { acc.add(&x) };
        }
        let hi = prec + p.k * ((p.n as f64).log2().ceil() as u32 + 2);
        let mut row: Vec<BigReal> = (0..p.k as u64)
            .map(|j| at(p.n + 1 + j, hi))
            .collect::<Result<_>>()?;
        let mut tail = BigReal::zero(hi);
        for i in 0..p.k {
            tail = tail.add(&row[0].mul_2exp(-(i as i64) - 1));
            row = row.windows(2).map(|w| w[0].sub(&w[1])).collect();
        }
        // first tail index is N+1, sign (−1)^N
        let tail = if p.n % 2 == 1 { tail.neg() } else { tail };
        let bound = Mag::pow2(self.euler_remainder_log2(p, p.k, level).ceil() as i64);
        Ok(acc.add(&tail.with_precision(prec)).add_err(bound))
    }

    /// `Σ_{t≥1} a(t)` for summands decaying at least like `t^(-2)`.
    fn plain(&self, p: &Plan, eps: f64, prec: u32) -> Result<BigReal> {
        let target = (eps / 4.0).log2();
        let min_levels = (p.n as f64).log2().ceil() as u32;
        let levels = (min_levels..400)
            .find(|&l| self.dyadic_remainder_log2(p, l) <= target)
            .ok_or_else(|| Error::NonConvergence("dyadic reduction does not close".into()))?;
        let mut acc = BigReal::zero(prec);
        for l in 0..levels {
            acc = acc.add(&self.alternating(p, l, prec)?.mul_2exp(l as i64));
        }
        let rem = Mag::pow2(self.dyadic_remainder_log2(p, levels).ceil() as i64);
        Ok(acc.add_err(rem))
    }
}

fn sign(n: usize) -> i64 {
    if n % 2 == 0 {
        1
    } else {
        -1
    }
}

fn check_eps(eps: f64) -> Result<()> {
    if eps > 0.0 && eps.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("tolerance must be positive, got {eps}")))
    }
}

/// Runs `f` at increasing precision until the error fits `eps`.
fn with_precision(eps: f64, mut f: impl FnMut(u32) -> Result<BigReal>) -> Result<BigReal> {
    let base = precision_for_tolerance(eps) + 64;
    let mut last = base;
    for prec in [base, 2 * base, 4 * base] {
        let r = f(prec)?;
        if r.err() <= Mag::from_f64_up(eps) {
            return Ok(r);
        }
        last = prec;
    }
    Err(Error::PrecisionExhausted { requested: eps, precision_bits: last })
}

fn series_value(summand: &Summand, alternating: bool, scale: Q, eps: f64) -> Result<BigReal> {
    // |scale| <= 1 throughout, so it never inflates the error
    let target = if alternating { eps / 2.0 } else { eps / 8.0 };
    let plan = summand.plan(target.log2())?;
    with_precision(eps, |prec| {
        let raw = if alternating { summand.alternating(&plan, 0, prec)? } else { summand.plain(&plan, eps, prec)? };
        Ok(raw.mul_rational(&scale))
    })
}

/// `rₙ` by summing the family's series over the kernel directly.
pub fn eval_rn_series(family: ZFamily, n: usize, alpha: &AlphaParam, eps: f64) -> Result<LinearFormEval> {
    check_eps(eps)?;
    let kernel = build_kernel(family, n, alpha)?;
    let a = kernel.alpha.clone();
    let (alternating, deriv, scale) = match family {
        ZFamily::Z2Minus => (true, false, rat(1, 1)),
        ZFamily::Z1Minus => (true, false, rat(sign(n), 1)),
        ZFamily::Z3 => (false, false, rat(1, 2)),
        ZFamily::Z2 => (false, false, rat(sign(n), 1)),
        ZFamily::Z4 => (false, true, rat(-sign(n), 2)),
    };
    let r = series_value(&Summand { kernel, deriv }, alternating, scale, eps)?;
    Ok(LinearFormEval { family, n, alpha: a, r, u: None, v: None, method: Method::DirectSeries })
}

/// `r_n` for `Z3` as `−½ Σ_{t≥1} d/dt [((t−1)…(t−n) / ((t−α)…(t−α+n)))²]`.
pub fn eval_rn_deriv_series(n: usize, alpha: &AlphaParam, eps: f64) -> Result<LinearFormEval> {
    check_eps(eps)?;
    let a = alpha.require_exact()?.clone();
    if a >= Q::one() {
        return Err(Error::InvalidParameter(format!("alpha must be below 1, got {alpha}")));
    }
    let kernel = KernelSpec {
        family: ZFamily::Z3,
        n,
        alpha: a.clone(),
        constant: Q::one(),
        roots: (1..=n as i64).map(|j| (rat(j, 1), 2)).collect(),
        pole_order: 2,
    };
    let r = series_value(&Summand { kernel, deriv: true }, false, rat(-1, 2), eps)?;
    Ok(LinearFormEval { family: ZFamily::Z3, n, alpha: a, r, u: None, v: None, method: Method::DerivativeSeries })
}

/// `c·u·Z(α) − v` to absolute accuracy `eps`.
pub fn linear_form_value(family: ZFamily, alpha: &AlphaParam, u: &Q, v: &Q, eps: f64) -> Result<BigReal> {
    check_eps(eps)?;
    let cu = u * rat(family.multiplier(), 1);
    let mag = 2f64.powf(log2_upper(&cu).max(0.0));
    let z = eval_z_real(family, alpha, eps / (2.0 * mag + 2.0))?;
    let extra = log2_upper(&cu).max(0.0) as u32 + log2_upper(v).max(0.0) as u32;
    with_precision(eps, |prec| {
        let prec = prec + extra;
        Ok(z.clone().with_precision(prec).mul_rational(&cu).sub(&BigReal::from_rational(v, prec)))
    })
}

/// `rₙ = c·uₙ·Z(α) − vₙ` from the partial-fraction extraction and the
/// constant oracle (`Z4` in the kernel's own normalisation).
pub fn eval_rn_pf(family: ZFamily, n: usize, alpha: &AlphaParam, eps: f64) -> Result<LinearFormEval> {
    check_eps(eps)?;
    let kernel = build_kernel(family, n, alpha)?;
    let (u, v) = extract_uv(&partial_fractions(&kernel)?)?;
    let r = linear_form_value(family, alpha, &u, &v, eps)?;
    Ok(LinearFormEval {
        family,
        n,
        alpha: kernel.alpha,
        r,
        u: Some(u),
        v: Some(v),
        method: Method::PartialFractions,
    })
}
