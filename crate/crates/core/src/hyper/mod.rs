//! Rational kernels `Rₙ(t)` whose sums over `t` give the linear forms
//! `rₙ = c·uₙ·Z(α) − vₙ`, and the partial-fraction route from a kernel to
//! `(uₙ, vₙ)`.
//!
//! This is deliberately independent of the recurrence tables: nothing here
//! looks at a recurrence coefficient.

mod sum;

pub use sum::{eval_rn_deriv_series, eval_rn_pf, eval_rn_series, linear_form_value, LinearFormEval, Method};

use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numeric::{format_rational, rat, series_div, series_mul, ExactRational as Q, Series};
use crate::recurrence::{ApproximantSequence, Row, Source};
use crate::zeta::{AlphaParam, ZFamily};

/// `constant · Π (t − c)^e / B(t)^pole_order` with
/// `B(t) = (t−α)(t−α+1)…(t−α+n)`.
///
/// The prefactor `2t − 2α + n` is kept as the root `α − n/2` with its 2
/// folded into `constant`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelSpec {
    pub family: ZFamily,
    pub n: usize,
    pub alpha: Q,
    pub constant: Q,
    pub roots: Vec<(Q, u32)>,
    pub pole_order: u32,
}

fn factorial(n: usize) -> Q {
    (1..=n as i64).fold(Q::one(), |acc, k| acc * rat(k, 1))
}

pub fn build_kernel(family: ZFamily, n: usize, alpha: &AlphaParam) -> Result<KernelSpec> {
    let a = alpha.require_exact()?.clone();
    if a >= Q::one() {
        return Err(Error::InvalidParameter(format!("alpha must be below 1, got {alpha}")));
    }
    let ni = n as i64;
    let shifted: Vec<Q> = (1..=ni).map(|j| rat(j, 1)).collect();
    let mirrored: Vec<Q> = (1..=ni).map(|i| &a + &a - rat(ni + i, 1)).collect();
    let centre = &a - rat(ni, 2);
    let simple = |v: &[Q]| v.iter().map(|c| (c.clone(), 1)).collect::<Vec<_>>();
    let (constant, roots, pole_order) = match family {
        ZFamily::Z2Minus | ZFamily::Z3 => {
            let mut r = simple(&shifted);
            r.extend(simple(&mirrored));
            r.push((centre, 1));
            let f = factorial(n);
            let k = if family == ZFamily::Z3 { &f * &f } else { f };
            (k * rat(2, 1), r, if family == ZFamily::Z3 { 4 } else { 3 })
        }
        ZFamily::Z4 => {
            let mut r: Vec<(Q, u32)> =
                shifted.iter().chain(mirrored.iter()).map(|c| (c.clone(), 2)).collect();
            r.push((centre, 1));
            (rat(2, 1), r, 4)
        }
        ZFamily::Z1Minus => (Q::one(), simple(&shifted), 1),
        ZFamily::Z2 => (factorial(n), simple(&shifted), 2),
    };
    Ok(KernelSpec { family, n, alpha: a, constant, roots, pole_order })
}

impl KernelSpec {
    pub fn poles(&self) -> Vec<Q> {
        (0..=self.n as i64).map(|k| &self.alpha - rat(k, 1)).collect()
    }

    pub fn numerator_degree(&self) -> u32 {
        self.roots.iter().map(|(_, e)| e).sum()
    }

    pub fn denominator_degree(&self) -> u32 {
        self.pole_order * (self.n as u32 + 1)
    }

    /// `d` with `Rₙ(t) = O(t^(-d))`.
    pub fn decay(&self) -> u32 {
        self.denominator_degree() - self.numerator_degree()
    }

    fn is_pole(&self, t: &Q) -> bool {
        let k = &self.alpha - t;
        k.is_integer() && !k.is_negative() && k <= rat(self.n as i64, 1)
    }

    pub fn eval(&self, t: &Q) -> Result<Q> {
        if self.is_pole(t) {
            return Err(Error::InvalidParameter(format!("t = {} is a pole", format_rational(t))));
        }
        let mut num = self.constant.clone();
        for (c, e) in &self.roots {
            let f = t - c;
            if f.is_zero() {
                return Ok(Q::zero());
            }
            for _ in 0..*e {
                num *= &f;
            }
        }
        let mut b = Q::one();
        for p in self.poles() {
            b *= t - p;
        }
        Ok(num / num_traits::pow(b, self.pole_order as usize))
    }

    /// Taylor coefficients of the kernel at `t0 + ε`, to `order` terms.
    /// With `skip = Some(k)` the factor `(t−α+k)^m` is left out of the
    /// denominator (so `t0` may be that pole).
    fn local_series(&self, t0: &Q, order: usize, skip: Option<usize>) -> Result<Series> {
        let mut num = Series::new(vec![self.constant.clone()]);
        for (c, e) in &self.roots {
            let lin = Series::shifted_linear(t0 - c, order);
            for _ in 0..*e {
                num = series_mul(&num, &lin, order);
            }
        }
        let mut den = Series::one(order);
        for (k, p) in self.poles().iter().enumerate() {
            if Some(k) == skip {
                continue;
            }
            let lin = Series::shifted_linear(t0 - p, order);
            for _ in 0..self.pole_order {
                den = series_mul(&den, &lin, order);
            }
        }
        Ok(series_div(&num, &den, order)?)
    }

    /// Exact `Rₙ'(t)`.
    pub fn derivative(&self, t: &Q) -> Result<Q> {
        if self.is_pole(t) {
            return Err(Error::InvalidParameter(format!("t = {} is a pole", format_rational(t))));
        }
        Ok(self.local_series(t, 2, None)?.coeff(1))
    }

    /// Sign with `R(2α − n − t) = σ R(t)`, for the families that have one.
    pub fn symmetry_sign(&self) -> Result<i64> {
        match self.family {
            ZFamily::Z2Minus => Ok(if self.n % 2 == 0 { 1 } else { -1 }),
            ZFamily::Z3 | ZFamily::Z4 => Ok(-1),
            f => Err(Error::Unsupported(format!("{f} kernel has no reflection symmetry"))),
        }
    }

    /// `count` distinct rational non-poles from a generator seeded by the
    /// kernel's shape.
    fn sample_points(&self, count: usize, salt: u64) -> Vec<Q> {
        let seed = salt ^ ((self.n as u64) << 8) ^ self.family as u64;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut out: Vec<Q> = Vec::with_capacity(count);
        while out.len() < count {
            let t = rat(rng.gen_range(-60..=60), rng.gen_range(1..=13));
            if !self.is_pole(&t) && !out.contains(&t) {
                out.push(t);
            }
        }
        out
    }
}

/// Checks `R(2α − n − t) = σ R(t)` exactly at `4n + 10` seeded points.
pub fn check_symmetry(kernel: &KernelSpec) -> Result<bool> {
    let sigma = rat(kernel.symmetry_sign()?, 1);
    let mirror = &kernel.alpha + &kernel.alpha - rat(kernel.n as i64, 1);
    for t in kernel.sample_points(4 * kernel.n + 10, 0x5eed) {
        let lhs = kernel.eval(&(&mirror - &t))?;
        if lhs != &sigma * kernel.eval(&t)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `Rₙ(t) = Σ_{j,k} a[j][k] / (t − α + k)^(m − j)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialFractionTable {
    pub family: ZFamily,
    pub n: usize,
    pub alpha: Q,
    pub m: usize,
    pub a: Vec<Vec<Q>>,
    /// Poles `k` where the numerator vanishes, so the true order is below `m`.
    pub dropped: Vec<usize>,
}

pub fn partial_fractions(kernel: &KernelSpec) -> Result<PartialFractionTable> {
    let m = kernel.pole_order as usize;
    let n = kernel.n;
    let mut a = vec![vec![Q::zero(); n + 1]; m];
    let mut dropped = Vec::new();
    for (k, p) in kernel.poles().iter().enumerate() {
        let g = kernel.local_series(p, m, Some(k))?;
        if g.coeff(0).is_zero() {
            dropped.push(k);
        }
        for (j, row) in a.iter_mut().enumerate() {
            row[k] = g.coeff(j);
        }
    }
    Ok(PartialFractionTable { family: kernel.family, n, alpha: kernel.alpha.clone(), m, a, dropped })
}

impl PartialFractionTable {
    pub fn eval(&self, t: &Q) -> Q {
        let mut s = Q::zero();
        for (j, row) in self.a.iter().enumerate() {
            for (k, c) in row.iter().enumerate() {
                if !c.is_zero() {
                    let d = t - &self.alpha + rat(k as i64, 1);
                    s += c / num_traits::pow(d, self.m - j);
                }
            }
        }
        s
    }

    /// `Σ_k a[j][k]`, or with alternating signs `Σ_k (−1)^k a[j][k]`.
    pub fn column_sum(&self, j: usize, alternating: bool) -> Q {
        self.a[j]
            .iter()
            .enumerate()
            .fold(Q::zero(), |acc, (k, c)| if alternating && k % 2 == 1 { acc - c } else { acc + c })
    }

    pub fn to_strings(&self) -> Vec<Vec<String>> {
        self.a.iter().map(|row| row.iter().map(format_rational).collect()).collect()
    }
}

/// Compares the table with the kernel at `m(n+1) + 1` points; both sides
/// have denominator degree `m(n+1)`, so agreement there is an identity.
pub fn verify_reconstruction(kernel: &KernelSpec, table: &PartialFractionTable) -> Result<bool> {
    let count = table.m * (table.n + 1) + 1;
    for t in kernel.sample_points(count, 0xfac7) {
        if table.eval(&t) != kernel.eval(&t)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `Σ_{ν=1}^{k} (±1)^(ν−1) / (ν − α)^s`.
fn partial(alpha: &Q, k: usize, s: usize, alternating: bool) -> Q {
    (1..=k as i64).fold(Q::zero(), |acc, nu| {
        let term = Q::one() / num_traits::pow(rat(nu, 1) - alpha, s);
        if alternating && nu % 2 == 0 {
            acc - term
        } else {
            acc + term
        }
    })
}

fn require_zero(family: ZFamily, n: usize, what: &str, value: &Q) -> Result<()> {
    if value.is_zero() {
        Ok(())
    } else {
        Err(Error::ConstructionInconsistency(format!(
            "{family}, n = {n}: {what} = {} but must vanish",
            format_rational(value)
        )))
    }
}

/// `(uₙ, vₙ)` from a partial-fraction table.
///
/// For `Z4` this is the normalisation of the kernel itself, with `u₀ = 1/2`.
pub fn extract_uv(table: &PartialFractionTable) -> Result<(Q, Q)> {
    let (fam, n, m, al) = (table.family, table.n, table.m, &table.alpha);
    let sign_n = if n % 2 == 0 { Q::one() } else { -Q::one() };
    let half = rat(1, 2);
    let sum_over = |alt: bool, weight: &dyn Fn(usize) -> Q, shift: usize| -> Q {
        let mut v = Q::zero();
        for j in 0..m {
            let w = weight(j);
            if w.is_zero() {
                continue;
            }
            for k in 0..=n {
                let c = &table.a[j][k];
                if c.is_zero() || k == 0 {
                    continue;
                }
                let mut term = c * &w * partial(al, k, m - j + shift, alt);
                if alt && k % 2 == 1 {
                    term = -term;
                }
                v += term;
            }
        }
        v
    };
    match fam {
        ZFamily::Z2Minus => {
            require_zero(fam, n, "u0", &table.column_sum(0, true))?;
            require_zero(fam, n, "u2", &table.column_sum(2, true))?;
            let u = table.column_sum(1, true) * &half;
            Ok((u, sum_over(true, &|_| Q::one(), 0)))
        }
        ZFamily::Z3 => {
            for j in [0, 2, 3] {
                require_zero(fam, n, &format!("column sum {j}"), &table.column_sum(j, false))?;
            }
            let u = table.column_sum(1, false) * &half;
            Ok((u, sum_over(false, &|_| Q::one(), 0) * half))
        }
        ZFamily::Z4 => {
            for j in [0, 2, 3] {
                require_zero(fam, n, &format!("column sum {j}"), &table.column_sum(j, false))?;
            }
            // termwise derivative raises each pole order by one and brings
            // down the factor (m − j)
            let u = table.column_sum(1, false) * &sign_n * rat(1, 4);
            let v = sum_over(false, &|j| rat((m - j) as i64, 1), 1) * sign_n * half;
            Ok((u, v))
        }
        ZFamily::Z1Minus => {
            let u = table.column_sum(0, true) * &sign_n;
            Ok((u, sum_over(true, &|_| Q::one(), 0) * sign_n))
        }
        ZFamily::Z2 => {
            require_zero(fam, n, "column sum 1", &table.column_sum(1, false))?;
            let u = table.column_sum(0, false) * &sign_n;
            Ok((u, sum_over(false, &|_| Q::one(), 0) * sign_n))
        }
    }
}

/// `(uₙ, vₙ)` for `n = 0..=n_max` built entirely from kernels.
pub fn construct_sequence(family: ZFamily, alpha: &AlphaParam, n_max: usize) -> Result<ApproximantSequence> {
    let mut rows = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let kernel = build_kernel(family, n, alpha)?;
        let table = partial_fractions(&kernel)?;
        let (u, v) = extract_uv(&table)?;
        rows.push(Row { n, u, v });
    }
    Ok(ApproximantSequence { family, alpha: alpha.require_exact()?.clone(), rows, source: Source::Construction })
}

/// `recurrence / construction`: the kernels of every family except `Z4`
/// reproduce the recurrence normalisation `u₀ = 1`; the `Z4` kernel gives
/// `u₀ = 1/2`.
pub fn construction_scale(family: ZFamily) -> Q {
    if family == ZFamily::Z4 {
        rat(2, 1)
    } else {
        Q::one()
    }
}

/// Outcome of comparing the kernel construction with the recurrence.
#[derive(Clone, Debug, Serialize)]
pub struct EquivalenceReport {
    pub family: ZFamily,
    pub alpha: String,
    pub n_max: usize,
    /// `recurrence / construction`, fixed from `n ∈ {0, 1}`.
    pub scale: String,
    pub matches: bool,
    pub first_mismatch: Option<usize>,
}

/// Checks `recurrence(n) = λ · construction(n)` for one λ and all `n ≤ n_max`.
/// λ is 1 for every family except `Z4`, where it must come out as 2.
pub fn compare_with_recurrence(
    family: ZFamily,
    alpha: &AlphaParam,
    recurrence: &ApproximantSequence,
    n_max: usize,
) -> Result<EquivalenceReport> {
    let built = construct_sequence(family, alpha, n_max)?;
    if recurrence.rows.len() <= n_max {
        return Err(Error::InvalidParameter(format!("recurrence has fewer than {} rows", n_max + 1)));
    }
    let scale = &recurrence.rows[0].u / &built.rows[0].u;
    let mut first_mismatch = None;
    for (r, c) in recurrence.rows.iter().zip(&built.rows) {
        if r.u != &scale * &c.u || r.v != &scale * &c.v {
            first_mismatch = Some(r.n);
            break;
        }
    }
    Ok(EquivalenceReport {
        family,
        alpha: alpha.to_string(),
        n_max,
        scale: format_rational(&scale),
        matches: first_mismatch.is_none(),
        first_mismatch,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::recurrence::make_spec;

    fn al(p: i64, q: i64) -> AlphaParam {
        AlphaParam::real(rat(p, q)).unwrap()
    }

    const ALPHAS: [(i64, i64); 4] = [(0, 1), (1, 2), (-1, 3), (2, 7)];

    #[test]
    fn small_kernels() {
        let k = build_kernel(ZFamily::Z2Minus, 0, &al(1, 3)).unwrap();
        let t = rat(5, 2);
        assert_eq!(k.eval(&t).unwrap(), rat(2, 1) / num_traits::pow(&t - rat(1, 3), 2));
        let k = build_kernel(ZFamily::Z3, 0, &al(-2, 5)).unwrap();
        assert_eq!(k.eval(&t).unwrap(), rat(2, 1) / num_traits::pow(&t + rat(2, 5), 3));
        let k = build_kernel(ZFamily::Z1Minus, 1, &al(0, 1)).unwrap();
        for x in [rat(3, 1), rat(-7, 2), rat(1, 9)] {
            let want = (&x - rat(1, 1)) / (&x * (&x + rat(1, 1)));
            assert_eq!(k.eval(&x).unwrap(), want);
        }
        assert!(k.eval(&rat(-1, 1)).is_err());
    }

    #[test]
    fn decay_degrees() {
        for n in 0..6usize {
            let a = al(1, 2);
            let d = |f| build_kernel(f, n, &a).unwrap().decay() as usize;
            assert_eq!(d(ZFamily::Z2Minus), n + 2);
            assert_eq!(d(ZFamily::Z3), 2 * n + 3);
            assert_eq!(d(ZFamily::Z4), 3);
            assert_eq!(d(ZFamily::Z1Minus), 1);
            assert_eq!(d(ZFamily::Z2), n + 2);
        }
    }

    #[test]
    fn reflection_symmetry() {
        for n in 0..7 {
            for (p, q) in [(1, 5), (1, 3), (-3, 4), (0, 1)] {
                for f in [ZFamily::Z2Minus, ZFamily::Z3, ZFamily::Z4] {
                    let k = build_kernel(f, n, &al(p, q)).unwrap();
                    assert!(check_symmetry(&k).unwrap(), "{f} n={n}");
                }
            }
        }
        let k = build_kernel(ZFamily::Z2, 2, &al(0, 1)).unwrap();
        assert!(matches!(check_symmetry(&k), Err(Error::Unsupported(_))));
        // flipping a root breaks the symmetry
        let mut k = build_kernel(ZFamily::Z3, 2, &al(1, 5)).unwrap();
        k.roots[0].0 += rat(1, 1);
        assert!(!check_symmetry(&k).unwrap());
    }

    #[test]
    fn derivative_matches_difference_quotient() {
        let k = build_kernel(ZFamily::Z4, 2, &al(1, 3)).unwrap();
        let t = rat(7, 3);
        let d = k.derivative(&t).unwrap();
        let h = rat(1, 1_000_000);
        let fd = (k.eval(&(&t + &h)).unwrap() - k.eval(&(&t - &h)).unwrap()) / (&h * rat(2, 1));
        let rel = ((&fd - &d) / &d).abs();
        assert!(rel < rat(1, 1_000_000));
        // double root: derivative vanishes
        assert!(k.derivative(&rat(1, 1)).unwrap().is_zero());
    }

    #[test]
    fn table_examples() {
        let t = partial_fractions(&build_kernel(ZFamily::Z2Minus, 0, &al(1, 3)).unwrap()).unwrap();
        assert_eq!(t.a, vec![vec![rat(0, 1)], vec![rat(2, 1)], vec![rat(0, 1)]]);
        let k = build_kernel(ZFamily::Z2Minus, 1, &al(0, 1)).unwrap();
        let t = partial_fractions(&k).unwrap();
        for x in [(1, 2), (3, 2), (5, 2), (7, 2), (9, 2), (-1, 2), (1, 3)] {
            let x = rat(x.0, x.1);
            let direct = (rat(2, 1) * &x + rat(1, 1)) * (&x - rat(1, 1)) * (&x + rat(2, 1))
                / num_traits::pow(&x * (&x + rat(1, 1)), 3);
            assert_eq!(t.eval(&x), direct);
        }
        let t = partial_fractions(&build_kernel(ZFamily::Z3, 1, &al(1, 3)).unwrap()).unwrap();
        assert!(t.column_sum(3, false).is_zero());
    }

    #[test]
    fn reconstruction_all_families() {
        for f in ZFamily::ALL {
            for (p, q) in ALPHAS {
                for n in 0..=8 {
                    let k = build_kernel(f, n, &al(p, q)).unwrap();
                    let t = partial_fractions(&k).unwrap();
                    assert!(verify_reconstruction(&k, &t).unwrap(), "{f} α={p}/{q} n={n}");
                }
            }
        }
    }

    #[test]
    fn centre_root_cancels_a_pole() {
        // for even n the root α − n/2 sits on the pole k = n/2
        let k = build_kernel(ZFamily::Z3, 2, &al(1, 2)).unwrap();
        let t = partial_fractions(&k).unwrap();
        assert_eq!(t.dropped, vec![1]);
        assert!(t.a[0][1].is_zero());
        assert!(verify_reconstruction(&k, &t).unwrap());
    }

    #[test]
    fn first_approximants() {
        for (p, q) in ALPHAS[..3].iter().copied() {
            let a = rat(p, q);
            let t = partial_fractions(&build_kernel(ZFamily::Z2Minus, 1, &al(p, q)).unwrap()).unwrap();
            assert_eq!(extract_uv(&t).unwrap().0, &a * &a - rat(3, 1) * &a + rat(3, 1));
        }
        let t = partial_fractions(&build_kernel(ZFamily::Z2Minus, 0, &al(0, 1)).unwrap()).unwrap();
        assert_eq!(extract_uv(&t).unwrap(), (rat(1, 1), rat(0, 1)));
        let t = partial_fractions(&build_kernel(ZFamily::Z3, 1, &al(0, 1)).unwrap()).unwrap();
        assert_eq!(extract_uv(&t).unwrap(), (rat(5, 1), rat(6, 1)));
        let s = construct_sequence(ZFamily::Z2Minus, &al(0, 1), 4).unwrap();
        let u: Vec<Q> = s.rows.iter().map(|r| r.u.clone()).collect();
        assert_eq!(u, [1, 3, 19, 147, 1251].map(|x| rat(x, 1)));
    }

    #[test]
    fn inconsistent_table_is_rejected() {
        let mut t = partial_fractions(&build_kernel(ZFamily::Z3, 2, &al(1, 3)).unwrap()).unwrap();
        t.a[0][0] += rat(1, 1);
        assert!(matches!(extract_uv(&t), Err(Error::ConstructionInconsistency(_))));
    }

    #[test]
    fn agrees_with_recurrence() {
        for f in ZFamily::ALL {
            for (p, q) in ALPHAS {
                let a = al(p, q);
                let rec = make_spec(f, &a).unwrap().iterate(8).unwrap();
                let rep = compare_with_recurrence(f, &a, &rec, 8).unwrap();
                assert!(rep.matches, "{f} α={a}: {rep:?}");
                assert_eq!(rep.scale, format_rational(&construction_scale(f)));
            }
        }
    }
}
