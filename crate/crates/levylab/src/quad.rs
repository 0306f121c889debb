//! One-dimensional quadrature primitives.
//!
//! Jump-measure integrals are assembled from geometric ("log-spaced") shells
//! with a fixed-order Gauss–Legendre rule on each shell; smooth compactly
//! supported integrals use adaptive Simpson. Both are deterministic.

/// Gauss–Legendre nodes and weights on [-1, 1], computed once per order by
/// Newton iteration on the Legendre polynomial.
#[derive(Debug, Clone)]
pub struct GaussRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussRule {
    pub fn new(order: usize) -> Self {
        assert!(order >= 2, "Gauss rule needs order >= 2");
        let n = order;
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        for i in 0..n {
            // Chebyshev-based initial guess, then Newton on P_n.
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            for _ in 0..100 {
                let (p, dp) = legendre(n, x);
                let dx = p / dp;
                x -= dx;
                if dx.abs() < 1e-15 {
                    break;
                }
            }
            let (_, dp) = legendre(n, x);
            nodes[i] = x;
            weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
        }
        nodes.reverse();
        weights.reverse();
        GaussRule { nodes, weights }
    }

    /// Integrate f over [a, b].
    pub fn integrate(&self, a: f64, b: f64, mut f: impl FnMut(f64) -> f64) -> f64 {
        let mid = 0.5 * (a + b);
        let half = 0.5 * (b - a);
        let mut acc = 0.0;
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            acc += w * f(mid + half * x);
        }
        acc * half
    }
}

/// Value and derivative of the Legendre polynomial P_n at x.
fn legendre(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

/// Geometric shell boundaries from `lo` to `hi` with `per_decade` shells per
/// factor of ten. Always includes both endpoints.
pub fn geometric_shells(lo: f64, hi: f64, per_decade: usize) -> Vec<f64> {
    assert!(lo > 0.0 && hi > lo, "shells need 0 < lo < hi");
    let decades = (hi / lo).log10();
    let n = ((decades * per_decade as f64).ceil() as usize).max(1);
    let ratio = (hi / lo).powf(1.0 / n as f64);
    let mut edges = Vec::with_capacity(n + 1);
    let mut r = lo;
    for _ in 0..n {
        edges.push(r);
        r *= ratio;
    }
    edges.push(hi);
    edges
}

/// Adaptive Simpson integration of a smooth function over [a, b].
pub fn adaptive_simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    fn simpson(f: &dyn Fn(f64) -> f64, a: f64, fa: f64, b: f64, fb: f64) -> (f64, f64, f64) {
        let m = 0.5 * (a + b);
        let fm = f(m);
        ((b - a) / 6.0 * (fa + 4.0 * fm + fb), m, fm)
    }
    fn recurse(
        f: &dyn Fn(f64) -> f64,
        a: f64,
        fa: f64,
        b: f64,
        fb: f64,
        whole: f64,
        m: f64,
        fm: f64,
        tol: f64,
        depth: usize,
    ) -> f64 {
        let (left, lm, flm) = simpson(f, a, fa, m, fm);
        let (right, rm, frm) = simpson(f, m, fm, b, fb);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= 15.0 * tol {
            left + right + delta / 15.0
        } else {
            recurse(f, a, fa, m, fm, left, lm, flm, 0.5 * tol, depth - 1)
                + recurse(f, m, fm, b, fb, right, rm, frm, 0.5 * tol, depth - 1)
        }
    }
    let fa = f(a);
    let fb = f(b);
    let (whole, m, fm) = simpson(f, a, fa, b, fb);
    recurse(f, a, fa, b, fb, whole, m, fm, tol, 48)
}

/// Integrate over log-spaced shells with a Gauss rule per shell.
pub fn integrate_shells(
    f: &dyn Fn(f64) -> f64,
    lo: f64,
    hi: f64,
    per_decade: usize,
    rule: &GaussRule,
) -> f64 {
    let edges = geometric_shells(lo, hi, per_decade);
    let mut acc = 0.0;
    for w in edges.windows(2) {
        acc += rule.integrate(w[0], w[1], f);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gauss_exact_on_polynomials() {
        let rule = GaussRule::new(10);
        // 10-point Gauss is exact through degree 19.
        let got = rule.integrate(0.0, 1.0, |x| x.powi(19));
        assert!((got - 0.05).abs() < 1e-14, "got {got}");
        let got = rule.integrate(-2.0, 3.0, |x| 7.0 * x * x - x + 1.0);
        let exact = 7.0 * (27.0 + 8.0) / 3.0 - (9.0 - 4.0) / 2.0 + 5.0;
        assert!((got - exact).abs() < 1e-12);
    }

    #[test]
    fn shells_cover_range_monotonically() {
        let edges = geometric_shells(1e-3, 1e2, 8);
        assert_eq!(edges.first().copied(), Some(1e-3));
        assert!((edges.last().unwrap() - 1e2).abs() < 1e-10);
        assert!(edges.windows(2).all(|w| w[1] > w[0]));
    }

    #[test]
    fn shell_integration_handles_power_singularity() {
        // ∫_{1e-6}^{1} r^{-1/2} dr = 2(1 - 1e-3)
        let rule = GaussRule::new(10);
        let got = integrate_shells(&|r| r.powf(-0.5), 1e-6, 1.0, 32, &rule);
        let exact = 2.0 * (1.0 - 1e-3);
        assert!((got - exact).abs() < 1e-10, "got {got}, want {exact}");
    }

    #[test]
    fn adaptive_simpson_on_gaussian() {
        let got = adaptive_simpson(&|x: f64| (-x * x / 2.0).exp(), -8.0, 8.0, 1e-12);
        let exact = (2.0 * std::f64::consts::PI).sqrt();
        assert!((got - exact).abs() < 1e-10);
    }
}
