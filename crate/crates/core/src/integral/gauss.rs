//! Gauss–Legendre nodes and composite rules on `[0, 1]` graded towards both
//! endpoints.

/// A node on `[0, 1]` with its distance to 1 kept separately, so that
/// `1 − s` stays accurate next to the right endpoint.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Node {
    pub s: f64,
    pub c: f64,
    pub w: f64,
}

/// `p`-point Gauss–Legendre rule on `[-1, 1]` (Newton on `P_p`).
pub fn legendre(p: usize) -> Vec<(f64, f64)> {
    let mut out = Vec::with_capacity(p);
    for i in 0..p {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (p as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=p {
                let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            if p == 1 {
                p0 = 1.0;
                p1 = x;
            }
            dp = p as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        out.push((x, 2.0 / ((1.0 - x * x) * dp * dp)));
    }
    out
}

/// Composite rule: `[0, 1/2]` split at `σ^j / 2` for `j = 0..=levels`, `p`
/// points per piece, mirrored onto `[1/2, 1]`.
pub fn graded(p: usize, levels: usize, sigma: f64) -> Vec<Node> {
    let base = legendre(p);
    let mut cuts = vec![0.0];
    cuts.extend((0..=levels).rev().map(|j| 0.5 * sigma.powi(j as i32)));
    let mut half = Vec::with_capacity(p * cuts.len());
    for w in cuts.windows(2) {
        let (a, b) = (w[0], w[1]);
        for &(x, wt) in &base {
            let s = 0.5 * (b - a) * x + 0.5 * (a + b);
            half.push((s, 0.5 * (b - a) * wt));
        }
    }
    let mut out: Vec<Node> = half.iter().map(|&(s, w)| Node { s, c: 1.0 - s, w }).collect();
    out.extend(half.iter().rev().map(|&(s, w)| Node { s: 1.0 - s, c: s, w }));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_for_polynomials() {
        for p in [1, 2, 5, 12, 33] {
            let r = legendre(p);
            for k in 0..2 * p {
                let q: f64 = r.iter().map(|(x, w)| w * x.powi(k as i32)).sum();
                let exact = if k % 2 == 1 { 0.0 } else { 2.0 / (k as f64 + 1.0) };
                assert!((q - exact).abs() < 1e-13, "p={p} k={k}");
            }
        }
    }

    #[test]
    fn graded_rule_handles_endpoint_logs() {
        let r = graded(12, 20, 0.2);
        let total: f64 = r.iter().map(|n| n.w).sum();
        assert!((total - 1.0).abs() < 1e-14);
        // ∫ ln s ds = −1, ∫ s^(-1/2) ds = 2
        let l: f64 = r.iter().map(|n| n.w * n.s.ln()).sum();
        assert!((l + 1.0).abs() < 1e-10, "{l}");
        let l: f64 = r.iter().map(|n| n.w * n.c.ln()).sum();
        assert!((l + 1.0).abs() < 1e-10, "{l}");
        let h: f64 = r.iter().map(|n| n.w / n.s.sqrt()).sum();
        assert!((h - 2.0).abs() < 1e-7, "{h}");
    }
}
