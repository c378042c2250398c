use serde::Serialize;

use super::PointCloud;
use crate::error::{Error, Result};

/// Circumradius of the unit-diameter regular `n`-simplex, `√(n / (2n + 2))`.
/// Also the tight ratio of enclosing radius to diameter in `ℝⁿ`.
pub fn jung_radius(n: usize) -> f64 {
    let n = n as f64;
    (n / (2.0 * n + 2.0)).sqrt()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimplexSpec {
    pub dim: usize,
    pub diameter: f64,
    pub center: Vec<f64>,
    pub vertices: PointCloud,
}

impl SimplexSpec {
    pub fn circumradius(&self) -> f64 {
        jung_radius(self.dim) * self.diameter
    }
}

/// Regular `n`-simplex with side `d` and vertex mean `center`.
///
/// The standard simplex `{a ∈ [0,1]^{n+1} : Σ a_i = 1}` has side `√2`. Its
/// vertices, recentered, lie in the hyperplane `Σ a_i = 0`; expressing them in
/// the Helmert basis of that hyperplane
///
/// ```text
/// u_k = (1, …, 1, −k, 0, …, 0) / √(k(k+1)),   k = 1..n
/// ```
///
/// gives an isometric copy in `ℝⁿ`, which is then scaled by `d/√2`.
pub fn regular_simplex(n: usize, d: f64, center: &[f64]) -> Result<SimplexSpec> {
    if n == 0 {
        return Err(Error::InvalidInput("simplex dimension must be at least 1".into()));
    }
    if !(d > 0.0) || !d.is_finite() {
        return Err(Error::InvalidInput(format!("diameter must be positive, got {d}")));
    }
    if center.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: center.len(),
        });
    }
    let s = d / std::f64::consts::SQRT_2;
    let mut coords = Vec::with_capacity(n * (n + 1));
    for vertex in 0..=n {
        for k in 1..=n {
            // Component `vertex` of u_k.
            let kf = k as f64;
            let u = if vertex < k {
                1.0
            } else if vertex == k {
                -kf
            } else {
                0.0
            } / (kf * (kf + 1.0)).sqrt();
            coords.push(center[k - 1] + s * u);
        }
    }
    Ok(SimplexSpec {
        dim: n,
        diameter: d,
        center: center.to_vec(),
        vertices: PointCloud::new(n, coords)?,
    })
}
