//! Interpolable samples on a radial grid.
//!
//! Iterates of the Green-function refinement are stored as node samples and
//! evaluated between nodes with a not-a-knot cubic spline (C² inside the
//! grid, O(h⁴) accurate for smooth data).  Quadrature abscissae never
//! coincide with grid nodes, so every bracket involving an iterate goes
//! through this interpolant.

use crate::error::{Error, Result};
use crate::quadrature::RadialGrid;

/// Node samples of a radial function plus a cubic interpolant.
///
/// Evaluation beyond the last node returns the last value (the iterates
/// approach a constant on the scale the weight can resolve); evaluation at a
/// node reproduces the sample exactly.
#[derive(Debug, Clone)]
pub struct GridFunction {
    nodes: Vec<f64>,
    values: Vec<f64>,
    /// Second derivatives at the nodes (spline moments).
    moments: Vec<f64>,
}

impl GridFunction {
    /// Builds the interpolant through `values` sampled at the grid nodes.
    pub fn new(grid: &RadialGrid, values: Vec<f64>) -> Result<Self> {
        Self::from_nodes(grid.nodes().to_vec(), values)
    }

    /// Constant function on the grid.
    pub fn constant(grid: &RadialGrid, value: f64) -> Self {
        let n = grid.nodes().len();
        Self {
            nodes: grid.nodes().to_vec(),
            values: vec![value; n],
            moments: vec![0.0; n],
        }
    }

    pub(crate) fn from_nodes(nodes: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if values.len() != nodes.len() {
            return Err(Error::NodeCountMismatch {
                expected: nodes.len(),
                got: values.len(),
            });
        }
        if nodes.len() < 4 {
            return Err(Error::InvalidConfig {
                reason: format!("spline needs at least 4 nodes, got {}", nodes.len()),
            });
        }
        let moments = not_a_knot_moments(&nodes, &values);
        Ok(Self {
            nodes,
            values,
            moments,
        })
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn r_max(&self) -> f64 {
        *self.nodes.last().expect("non-empty")
    }

    /// Evaluates the interpolant; clamps to the boundary values outside
    /// [0, r_max].
    pub fn eval(&self, r: f64) -> f64 {
        let n = self.nodes.len();
        if r <= self.nodes[0] {
            return self.values[0];
        }
        if r >= self.nodes[n - 1] {
            return self.values[n - 1];
        }
        // interval i with nodes[i] <= r < nodes[i+1]
        let i = match self
            .nodes
            .binary_search_by(|x| x.partial_cmp(&r).expect("finite"))
        {
            Ok(exact) => return self.values[exact],
            Err(ins) => ins - 1,
        };
        let h = self.nodes[i + 1] - self.nodes[i];
        let t = r - self.nodes[i];
        let (y0, y1) = (self.values[i], self.values[i + 1]);
        let (m0, m1) = (self.moments[i], self.moments[i + 1]);
        let slope = (y1 - y0) / h - h / 6.0 * (2.0 * m0 + m1);
        y0 + t * (slope + t * (m0 / 2.0 + t * (m1 - m0) / (6.0 * h)))
    }

    /// Largest |values| over the nodes.
    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0f64, |a, v| a.max(v.abs()))
    }
}

/// Spline moments (second derivatives) with not-a-knot end conditions,
/// solved by the Thomas algorithm after folding the end conditions into the
/// first and last interior rows.
fn not_a_knot_moments(x: &[f64], y: &[f64]) -> Vec<f64> {
    let n = x.len();
    let m = n - 2; // unknowns M_1 .. M_{n-2}
    let h: Vec<f64> = x.windows(2).map(|w| w[1] - w[0]).collect();
    let mut sub = vec![0.0; m];
    let mut diag = vec![0.0; m];
    let mut sup = vec![0.0; m];
    let mut rhs = vec![0.0; m];
    for (k, item) in rhs.iter_mut().enumerate() {
        let i = k + 1;
        *item = 6.0 * ((y[i + 1] - y[i]) / h[i] - (y[i] - y[i - 1]) / h[i - 1]);
    }
    for k in 0..m {
        let i = k + 1;
        sub[k] = h[i - 1];
        diag[k] = 2.0 * (h[i - 1] + h[i]);
        sup[k] = h[i];
    }
    // not-a-knot at the left: M_0 = ((h0 + h1) M_1 - h0 M_2) / h1
    diag[0] = (h[0] + h[1]) * (h[0] + 2.0 * h[1]) / h[1];
    sup[0] = (h[1] * h[1] - h[0] * h[0]) / h[1];
    // not-a-knot at the right: M_{n-1} from M_{n-2}, M_{n-3}
    let (ha, hb) = (h[n - 3], h[n - 2]); // interior, boundary interval widths
    diag[m - 1] = (hb + ha) * (hb + 2.0 * ha) / ha;
    sub[m - 1] = (ha * ha - hb * hb) / ha;

    // Thomas solve
    let mut c = vec![0.0; m];
    let mut d = vec![0.0; m];
    c[0] = sup[0] / diag[0];
    d[0] = rhs[0] / diag[0];
    for k in 1..m {
        let denom = diag[k] - sub[k] * c[k - 1];
        c[k] = sup[k] / denom;
        d[k] = (rhs[k] - sub[k] * d[k - 1]) / denom;
    }
    let mut interior = vec![0.0; m];
    interior[m - 1] = d[m - 1];
    for k in (0..m - 1).rev() {
        interior[k] = d[k] - c[k] * interior[k + 1];
    }

    let mut moments = vec![0.0; n];
    moments[1..=m].copy_from_slice(&interior);
    moments[0] = ((h[0] + h[1]) * moments[1] - h[0] * moments[2]) / h[1];
    moments[n - 1] =
        ((h[n - 2] + h[n - 3]) * moments[n - 2] - h[n - 2] * moments[n - 3]) / h[n - 3];
    moments
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn function_through(nodes: Vec<f64>, f: impl Fn(f64) -> f64) -> GridFunction {
        let values = nodes.iter().map(|&r| f(r)).collect();
        GridFunction::from_nodes(nodes, values).unwrap()
    }

    #[test]
    fn reproduces_node_values_exactly() {
        let nodes = vec![0.0, 0.3, 0.7, 1.5, 2.0, 3.1, 4.0];
        let gf = function_through(nodes.clone(), |r| (1.3 * r).sin());
        for &r in &nodes {
            assert_eq!(gf.eval(r), (1.3f64 * r).sin());
        }
    }

    #[test]
    fn cubic_polynomials_are_exact() {
        // not-a-knot reproduces cubics exactly (up to round-off)
        let p = |r: f64| 2.0 - r + 0.5 * r * r - 0.125 * r * r * r;
        let nodes = vec![0.0, 0.4, 0.9, 1.3, 2.2, 2.9, 3.5, 4.8];
        let gf = function_through(nodes, p);
        for i in 0..=100 {
            let r = 4.8 * i as f64 / 100.0;
            assert_relative_eq!(gf.eval(r), p(r), max_relative = 1e-12, epsilon = 1e-12);
        }
    }

    #[test]
    fn matches_reference_spline() {
        // frozen from an independent not-a-knot implementation
        // (scipy.interpolate.CubicSpline) for these exact inputs
        let nodes = vec![0.0, 0.5, 1.0, 2.0, 3.0, 4.5];
        let values = vec![1.0, 0.8, 0.9, 0.3, 0.2, 0.05];
        let gf = GridFunction::from_nodes(nodes, values).unwrap();
        let reference = [
            (0.25, 0.8090625),
            (0.75, 0.8659375),
            (1.5, 0.6599999999999999),
            (2.5, 0.16),
            (3.75, 0.3021875),
        ];
        for &(r, want) in &reference {
            assert_relative_eq!(gf.eval(r), want, max_relative = 1e-12);
        }
    }

    #[test]
    fn smooth_function_interpolates_to_h4() {
        let f = |r: f64| (-0.7 * r).exp() * (1.0 + 0.3 * r);
        let nodes: Vec<f64> = (0..=80).map(|i| 0.1 * i as f64).collect();
        let gf = function_through(nodes, f);
        let mut worst: f64 = 0.0;
        for i in 0..800 {
            let r = 0.01 + i as f64 * 0.00998;
            worst = worst.max((gf.eval(r) - f(r)).abs());
        }
        // h = 0.1 -> h^4/384 * |f''''| scale ~ 1e-7
        assert!(worst < 1e-6, "interpolation error {worst}");
    }

    #[test]
    fn constant_extrapolation_beyond_last_node() {
        let nodes = vec![0.0, 1.0, 2.0, 3.0, 4.0];
        let gf = function_through(nodes, |r| 1.0 / (1.0 + r));
        assert_eq!(gf.eval(4.0), 0.2);
        assert_eq!(gf.eval(17.0), 0.2);
    }

    #[test]
    fn first_derivative_is_continuous_across_nodes() {
        let nodes = vec![0.0, 0.3, 1.0, 1.4, 2.5, 3.0, 4.2];
        let gf = function_through(nodes.clone(), |r| (r - 1.2).tanh());
        let h = 1e-7;
        for &rn in &nodes[1..nodes.len() - 1] {
            let left = (gf.eval(rn) - gf.eval(rn - h)) / h;
            let right = (gf.eval(rn + h) - gf.eval(rn)) / h;
            assert_relative_eq!(left, right, max_relative = 1e-5, epsilon = 1e-5);
        }
    }

    #[test]
    fn rejects_mismatched_lengths() {
        let err = GridFunction::from_nodes(vec![0.0, 1.0, 2.0, 3.0], vec![1.0, 2.0]);
        assert!(matches!(err, Err(Error::NodeCountMismatch { .. })));
    }
}
