use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::Serialize;

use super::PointCloud;
use crate::error::{Error, Result};
use crate::vecops;

/// Membership slack for shapes with curved boundaries.
pub const CURVED_TOL: f64 = 1e-12;

/// Compact sets with closed-form descriptions. All except `Cloud` are
/// centered at the origin.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Shape {
    Interval { lo: f64, hi: f64 },
    Ball { dim: usize, radius: f64 },
    /// `(x/a)² + (y/b)² <= 1` with `a > b > 0`.
    Ellipse { a: f64, b: f64 },
    /// `∏ [−a_i, a_i]`.
    Box { half_widths: Vec<f64> },
    /// `|x/a1| + |y/a2| <= 1`.
    Diamond { a1: f64, a2: f64 },
    Cloud { points: PointCloud },
}

fn positive(name: &str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidInput(format!("{name} must be positive, got {v}")))
    }
}

impl Shape {
    pub fn interval(lo: f64, hi: f64) -> Result<Self> {
        if !(lo <= hi) || !lo.is_finite() || !hi.is_finite() {
            return Err(Error::InvalidInput(format!("invalid interval [{lo}, {hi}]")));
        }
        Ok(Self::Interval { lo, hi })
    }

    pub fn ball(dim: usize, radius: f64) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidInput("ball dimension must be positive".into()));
        }
        positive("radius", radius)?;
        Ok(Self::Ball { dim, radius })
    }

    pub fn ellipse(a: f64, b: f64) -> Result<Self> {
        positive("b", b)?;
        if !(a > b) || !a.is_finite() {
            return Err(Error::InvalidInput(format!("ellipse needs a > b > 0, got a={a}, b={b}")));
        }
        Ok(Self::Ellipse { a, b })
    }

    pub fn cuboid(half_widths: Vec<f64>) -> Result<Self> {
        if half_widths.is_empty() {
            return Err(Error::InvalidInput("box needs at least one half-width".into()));
        }
        for &a in &half_widths {
            positive("half-width", a)?;
        }
        Ok(Self::Box { half_widths })
    }

    pub fn diamond(a1: f64, a2: f64) -> Result<Self> {
        positive("a1", a1)?;
        positive("a2", a2)?;
        Ok(Self::Diamond { a1, a2 })
    }

    pub fn cloud(points: PointCloud) -> Self {
        Self::Cloud { points }
    }

    pub fn dim(&self) -> usize {
        match self {
            Self::Interval { .. } => 1,
            Self::Ball { dim, .. } => *dim,
            Self::Ellipse { .. } | Self::Diamond { .. } => 2,
            Self::Box { half_widths } => half_widths.len(),
            Self::Cloud { points } => points.dim(),
        }
    }

    pub fn check_dim(&self, x: &[f64]) -> Result<()> {
        if x.len() == self.dim() {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: x.len(),
            })
        }
    }

    /// Closed-set membership; curved boundaries allow [`CURVED_TOL`]. A cloud
    /// contains exactly its points.
    pub fn contains(&self, x: &[f64]) -> bool {
        if x.len() != self.dim() {
            return false;
        }
        match self {
            Self::Interval { lo, hi } => *lo <= x[0] && x[0] <= *hi,
            Self::Ball { radius, .. } => vecops::norm(x) <= radius + CURVED_TOL,
            Self::Ellipse { a, b } => (x[0] / a).powi(2) + (x[1] / b).powi(2) <= 1.0 + CURVED_TOL,
            Self::Box { half_widths } => x.iter().zip(half_widths).all(|(v, a)| v.abs() <= *a),
            Self::Diamond { a1, a2 } => (x[0] / a1).abs() + (x[1] / a2).abs() <= 1.0,
            Self::Cloud { points } => points.iter().any(|p| p == x),
        }
    }

    /// Whether `x` lies in the convex hull, decided analytically. `None` for
    /// clouds, which need an LP.
    pub fn hull_contains(&self, x: &[f64]) -> Option<bool> {
        match self {
            Self::Cloud { .. } => None,
            _ => Some(self.contains(x)),
        }
    }

    /// Smallest `resolution` accepted by [`Shape::sample`].
    pub fn min_resolution(&self) -> usize {
        match self {
            Self::Interval { .. } => 2,
            Self::Ball { dim: 1, .. } => 2,
            Self::Ball { dim, .. } => dim + 1,
            Self::Ellipse { .. } => 3,
            Self::Box { half_widths } => 1 << half_widths.len(),
            Self::Diamond { .. } => 4,
            Self::Cloud { .. } => 0,
        }
    }

    /// A deterministic finite stand-in for the shape.
    ///
    /// * `Interval`: a uniform grid of `resolution` points including both ends.
    /// * `Box`, `Diamond`: all vertices, then seeded interior samples up to
    ///   `resolution` points in total.
    /// * `Ball`, `Ellipse`: `resolution` boundary points (evenly spaced in the
    ///   plane, seeded Gaussian directions otherwise) plus `resolution / 4`
    ///   seeded interior samples.
    /// * `Cloud`: the points themselves.
    pub fn sample(&self, resolution: usize, seed: u64) -> Result<PointCloud> {
        if resolution < self.min_resolution() {
            return Err(Error::InvalidInput(format!(
                "resolution {resolution} is below the minimum {} for this shape",
                self.min_resolution()
            )));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut rows: Vec<Vec<f64>> = Vec::with_capacity(resolution * 5 / 4);
        match self {
            Self::Interval { lo, hi } => {
                let last = (resolution - 1) as f64;
                for i in 0..resolution {
                    let t = i as f64 / last;
                    rows.push(vec![if i + 1 == resolution { *hi } else { lo + (hi - lo) * t }]);
                }
            }
            Self::Box { half_widths } => {
                let n = half_widths.len();
                for mask in 0..(1usize << n) {
                    rows.push(
                        (0..n)
                            .map(|i| if mask >> i & 1 == 1 { half_widths[i] } else { -half_widths[i] })
                            .collect(),
                    );
                }
                while rows.len() < resolution {
                    rows.push(half_widths.iter().map(|a| rng.random_range(-*a..=*a)).collect());
                }
            }
            Self::Diamond { a1, a2 } => {
                rows.extend([vec![*a1, 0.0], vec![-a1, 0.0], vec![0.0, *a2], vec![0.0, -a2]]);
                while rows.len() < resolution {
                    let p = vec![rng.random_range(-*a1..=*a1), rng.random_range(-*a2..=*a2)];
                    if self.contains(&p) {
                        rows.push(p);
                    }
                }
            }
            Self::Ellipse { a, b } => {
                for k in 0..resolution {
                    let t = std::f64::consts::TAU * k as f64 / resolution as f64;
                    rows.push(vec![a * t.cos(), b * t.sin()]);
                }
                for _ in 0..resolution / 4 {
                    let r = rng.random::<f64>().sqrt();
                    let t = rng.random_range(0.0..std::f64::consts::TAU);
                    rows.push(vec![a * r * t.cos(), b * r * t.sin()]);
                }
            }
            Self::Ball { dim, radius } => {
                let n = *dim;
                if n == 1 {
                    rows.push(vec![-radius]);
                    rows.push(vec![*radius]);
                    for _ in 2..resolution {
                        rows.push(vec![rng.random_range(-*radius..=*radius)]);
                    }
                } else {
                    for k in 0..resolution {
                        let dir = if n == 2 {
                            let t = std::f64::consts::TAU * k as f64 / resolution as f64;
                            vec![t.cos(), t.sin()]
                        } else {
                            gaussian_direction(&mut rng, n)
                        };
                        rows.push(vecops::scale(&dir, *radius));
                    }
                    for _ in 0..resolution / 4 {
                        let dir = gaussian_direction(&mut rng, n);
                        let r = radius * rng.random::<f64>().powf(1.0 / n as f64);
                        rows.push(vecops::scale(&dir, r));
                    }
                }
            }
            Self::Cloud { points } => return Ok(points.clone()),
        }
        PointCloud::from_rows(rows)
    }
}

fn gaussian_direction(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    loop {
        let g: Vec<f64> = (0..n).map(|_| rng.sample(StandardNormal)).collect();
        let len = vecops::norm(&g);
        if len > 1e-6 {
            return vecops::scale(&g, 1.0 / len);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn has_point(cloud: &PointCloud, p: &[f64]) -> bool {
        cloud.iter().any(|q| q == p)
    }

    #[test]
    fn box_includes_vertices() {
        let cloud = Shape::cuboid(vec![1.0, 1.0]).unwrap().sample(4, 0).unwrap();
        assert_eq!(cloud.len(), 4);
        for p in [[1.0, 1.0], [1.0, -1.0], [-1.0, 1.0], [-1.0, -1.0]] {
            assert!(has_point(&cloud, &p));
        }
    }

    #[test]
    fn diamond_includes_vertices() {
        let shape = Shape::diamond(2.0, 1.0).unwrap();
        let cloud = shape.sample(4, 0).unwrap();
        for p in [[2.0, 0.0], [-2.0, 0.0], [0.0, 1.0], [0.0, -1.0]] {
            assert!(has_point(&cloud, &p));
        }
        let big = shape.sample(200, 5).unwrap();
        assert_eq!(big.len(), 200);
        assert!(big.iter().all(|p| shape.contains(p)));
    }

    #[test]
    fn ball_boundary_points_on_sphere() {
        let shape = Shape::ball(2, 1.0).unwrap();
        let cloud = shape.sample(64, 0).unwrap();
        let on_sphere = cloud
            .iter()
            .filter(|p| (vecops::norm(p) - 1.0).abs() <= 1e-12)
            .count();
        assert!(on_sphere >= 64);
        assert!(cloud.iter().all(|p| shape.contains(p)));

        let shape3 = Shape::ball(3, 2.5).unwrap();
        let cloud3 = shape3.sample(50, 1).unwrap();
        assert!(cloud3.iter().take(50).all(|p| (vecops::norm(p) - 2.5).abs() <= 1e-12));
        assert!(cloud3.iter().all(|p| shape3.contains(p)));
    }

    #[test]
    fn ellipse_boundary_within_tolerance() {
        let shape = Shape::ellipse(2.0, 1.0).unwrap();
        let cloud = shape.sample(128, 3).unwrap();
        for p in cloud.iter().take(128) {
            assert!(((p[0] / 2.0).powi(2) + p[1].powi(2) - 1.0).abs() <= 1e-12);
        }
        assert!(cloud.iter().all(|p| shape.contains(p)));
    }

    #[test]
    fn interval_grid_hits_both_ends() {
        let cloud = Shape::interval(0.0, 1.0).unwrap().sample(101, 0).unwrap();
        assert_eq!(cloud.len(), 101);
        assert_eq!(cloud.point(0), &[0.0]);
        assert_eq!(cloud.point(100), &[1.0]);
        assert_eq!(cloud.point(50), &[0.5]);
    }

    #[test]
    fn sampling_is_seed_deterministic() {
        let shape = Shape::cuboid(vec![1.0, 2.0, 0.5]).unwrap();
        assert_eq!(shape.sample(40, 11).unwrap(), shape.sample(40, 11).unwrap());
        assert_ne!(shape.sample(40, 11).unwrap(), shape.sample(40, 12).unwrap());
    }

    #[test]
    fn resolution_too_small() {
        assert!(Shape::cuboid(vec![1.0, 1.0]).unwrap().sample(3, 0).is_err());
        assert!(Shape::diamond(2.0, 1.0).unwrap().sample(3, 0).is_err());
    }

    #[test]
    fn parameter_validation() {
        assert!(Shape::ellipse(1.0, 2.0).is_err());
        assert!(Shape::ellipse(2.0, 0.0).is_err());
        assert!(Shape::interval(1.0, 0.0).is_err());
        assert!(Shape::ball(2, -1.0).is_err());
        assert!(Shape::cuboid(vec![]).is_err());
        assert!(Shape::diamond(0.0, 1.0).is_err());
    }
}
