//! Gauss-Legendre rules on [0,1] and a collapsed rule on the reference triangle.

use super::KernelError;

/// Gauss-Legendre rule mapped to the reference interval [0,1]; weights sum to 1.
#[derive(Debug, Clone)]
pub struct GaussRule {
    points: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussRule {
    /// Rule with `n` points, exact for polynomials of degree <= 2n-1.
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "Gauss rule needs at least one point");
        let mut points = vec![0.0; n];
        let mut weights = vec![0.0; n];
        // Newton iteration on P_n over [-1,1], then map to [0,1].
        for i in 0..n {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            for _ in 0..100 {
                let (p, dp) = legendre_with_derivative(n, x);
                let dx = p / dp;
                x -= dx;
                if dx.abs() < 1e-15 {
                    break;
                }
            }
            let (_, dp) = legendre_with_derivative(n, x);
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            // cos ordering is descending in x; store ascending on [0,1].
            points[n - 1 - i] = 0.5 * (x + 1.0);
            weights[n - 1 - i] = 0.5 * w;
        }
        Self { points, weights }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Iterate (point, weight) pairs mapped to [a, b]; weights carry the interval length.
    pub fn mapped(&self, a: f64, b: f64) -> impl Iterator<Item = (f64, f64)> + '_ {
        let len = b - a;
        self.points
            .iter()
            .zip(&self.weights)
            .map(move |(&x, &w)| (a + x * len, w * len))
    }
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
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

/// Quadrature on the reference triangle {(u,v): u,v >= 0, u+v <= 1}, weights sum to 1/2.
///
/// Built by collapsing a tensor Gauss rule through the Duffy map
/// (u, v) = (x, y(1-x)); exact for total degree <= 2n-2.
#[derive(Debug, Clone)]
pub struct TriangleRule {
    points: Vec<[f64; 2]>,
    weights: Vec<f64>,
}

impl TriangleRule {
    pub fn new(n: usize) -> Self {
        let line = GaussRule::new(n);
        let mut points = Vec::with_capacity(n * n);
        let mut weights = Vec::with_capacity(n * n);
        for (&x, &wx) in line.points().iter().zip(line.weights()) {
            for (&y, &wy) in line.points().iter().zip(line.weights()) {
                points.push([x, y * (1.0 - x)]);
                weights.push(wx * wy * (1.0 - x));
            }
        }
        Self { points, weights }
    }

    pub fn points(&self) -> &[[f64; 2]] {
        &self.points
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }
}

/// Validates a requested Gauss order for assembly entry points.
pub fn check_order(q: usize) -> Result<(), KernelError> {
    if q < 1 {
        Err(KernelError::InvalidArgument(
            "quadrature order must be >= 1".into(),
        ))
    } else {
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn weights_sum_to_interval_length() {
        for n in 1..=20 {
            let rule = GaussRule::new(n);
            let total: f64 = rule.weights().iter().sum();
            assert_relative_eq!(total, 1.0, max_relative = 1e-14);
        }
    }

    #[test]
    fn exact_on_polynomials_up_to_rule_degree() {
        for n in 1..=12 {
            let rule = GaussRule::new(n);
            for deg in 0..=(2 * n - 1) {
                let got: f64 = rule
                    .points()
                    .iter()
                    .zip(rule.weights())
                    .map(|(&x, &w)| w * x.powi(deg as i32))
                    .sum();
                let want = 1.0 / (deg as f64 + 1.0);
                assert_relative_eq!(got, want, max_relative = 1e-12);
            }
        }
    }

    #[test]
    fn triangle_weights_sum_to_half() {
        for n in 1..=10 {
            let rule = TriangleRule::new(n);
            let total: f64 = rule.weights().iter().sum();
            assert_relative_eq!(total, 0.5, max_relative = 1e-14);
        }
    }

    #[test]
    fn triangle_exact_on_monomials() {
        // int_T u^a v^b = a! b! / (a+b+2)!
        let rule = TriangleRule::new(6);
        for a in 0..5_u32 {
            for b in 0..5_u32 {
                let got: f64 = rule
                    .points()
                    .iter()
                    .zip(rule.weights())
                    .map(|(p, &w)| w * p[0].powi(a as i32) * p[1].powi(b as i32))
                    .sum();
                let fact = |k: u32| (1..=k).map(|i| i as f64).product::<f64>().max(1.0);
                let want = fact(a) * fact(b) / fact(a + b + 2);
                assert_relative_eq!(got, want, max_relative = 1e-12);
            }
        }
    }

    #[test]
    fn mapped_interval_integrates_linear() {
        let rule = GaussRule::new(3);
        let got: f64 = rule.mapped(2.0, 5.0).map(|(x, w)| w * x).sum();
        assert_relative_eq!(got, 0.5 * (25.0 - 4.0), max_relative = 1e-14);
    }
}
