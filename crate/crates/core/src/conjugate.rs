//! The function `φ_K(x) = −|x|²` on `K`, `+∞` elsewhere, and its
//! Legendre-Fenchel transforms.
//!
//! For a finite cloud the biconjugate is the convex envelope of `φ_K`, so
//! `φ_K**(x)` is the optimum of
//!
//! ```text
//! minimize Σ t_i (−|x_i|²)   subject to  Σ t_i = 1,  Σ t_i x_i = x,  t >= 0
//! ```
//!
//! and `+∞` when that program is infeasible (`x` outside the hull).

use serde::{Serialize, Serializer};

use crate::error::{Result, Separator};
use crate::geometry::{PointCloud, Shape};
use crate::lp::{solve_lp, LpProblem, LpStatus, DEFAULT_FEAS_TOL};
use crate::vecops;

/// A real number or `+∞`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub enum ExtendedReal {
    Finite(f64),
    PosInfinity,
}

impl ExtendedReal {
    pub fn is_finite(self) -> bool {
        matches!(self, Self::Finite(_))
    }

    pub fn finite(self) -> Option<f64> {
        match self {
            Self::Finite(v) => Some(v),
            Self::PosInfinity => None,
        }
    }
}

impl Serialize for ExtendedReal {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Self::Finite(v) => s.serialize_f64(*v),
            Self::PosInfinity => s.serialize_str("+inf"),
        }
    }
}

/// `φ_K(x)`.
pub fn phi(shape: &Shape, x: &[f64]) -> Result<ExtendedReal> {
    shape.check_dim(x)?;
    Ok(if shape.contains(x) {
        ExtendedReal::Finite(-vecops::norm_sq(x))
    } else {
        ExtendedReal::PosInfinity
    })
}

/// `φ_K*(y) = max_{x ∈ K} y·x + |x|²`.
pub fn conjugate_at(cloud: &PointCloud, y: &[f64]) -> Result<f64> {
    cloud.check_dim(y)?;
    Ok(cloud
        .iter()
        .map(|x| vecops::dot(x, y) + vecops::norm_sq(x))
        .fold(f64::NEG_INFINITY, f64::max))
}

/// Optimum of the envelope program at a point.
#[derive(Debug, Clone, PartialEq)]
pub enum Envelope {
    /// `φ_K**(x)` and the convex weights on the cloud attaining it.
    Inside { biconjugate: f64, weights: Vec<f64> },
    Outside(Separator),
}

pub fn envelope(cloud: &PointCloud, x: &[f64]) -> Result<Envelope> {
    cloud.check_dim(x)?;
    let objective: Vec<f64> = cloud.iter().map(|p| -vecops::norm_sq(p)).collect();
    let mut rows = vec![vec![1.0; cloud.len()]];
    for d in 0..cloud.dim() {
        rows.push(cloud.iter().map(|p| p[d]).collect());
    }
    let mut rhs = vec![1.0];
    rhs.extend_from_slice(x);
    let sol = solve_lp(&LpProblem::new(objective, rows, rhs)?, DEFAULT_FEAS_TOL)?;
    Ok(match sol.status {
        LpStatus::Optimal => Envelope::Inside {
            biconjugate: sol.value.unwrap(),
            weights: sol.solution.unwrap(),
        },
        LpStatus::Infeasible => {
            let y = sol.farkas.unwrap();
            Envelope::Outside(Separator {
                normal: y[1..].to_vec(),
                offset: -y[0],
            })
        }
        LpStatus::Unbounded => unreachable!("objective bounded on the simplex"),
    })
}

/// `φ_K**(x)`.
pub fn biconjugate_at(cloud: &PointCloud, x: &[f64]) -> Result<ExtendedReal> {
    Ok(match envelope(cloud, x)? {
        Envelope::Inside { biconjugate, .. } => ExtendedReal::Finite(biconjugate),
        Envelope::Outside(_) => ExtendedReal::PosInfinity,
    })
}

/// `φ_{K−w}**(0)`, evaluated on the shifted cloud. Should equal
/// `|w|² + φ_K**(w)`.
pub fn translated_biconjugate_zero(cloud: &PointCloud, w: &[f64]) -> Result<ExtendedReal> {
    cloud.check_dim(w)?;
    let shifted = cloud.translated(&vecops::scale(w, -1.0));
    biconjugate_at(&shifted, &vec![0.0; cloud.dim()])
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn cloud(rows: Vec<Vec<f64>>) -> PointCloud {
        PointCloud::from_rows(rows).unwrap()
    }

    #[test]
    fn phi_examples() {
        let ball = Shape::ball(2, 1.0).unwrap();
        assert_eq!(phi(&ball, &[0.6, 0.8]).unwrap(), ExtendedReal::Finite(-1.0));
        let interval = Shape::interval(0.0, 1.0).unwrap();
        assert_eq!(phi(&interval, &[2.0]).unwrap(), ExtendedReal::PosInfinity);
        let two = Shape::cloud(cloud(vec![vec![-1.0], vec![1.0]]));
        assert_eq!(phi(&two, &[0.0]).unwrap(), ExtendedReal::PosInfinity);
        assert!(phi(&ball, &[0.0]).is_err());
    }

    #[test]
    fn conjugate_examples() {
        let two = cloud(vec![vec![-1.0], vec![1.0]]);
        // By hand: max(−y + 1, y + 1) = |y| + 1.
        for y in [-2.0, -0.3, 0.0, 0.7, 5.0] {
            assert_eq!(conjugate_at(&two, &[y]).unwrap(), f64::abs(y) + 1.0);
        }
        let single = cloud(vec![vec![1.5, -2.0]]);
        let y = [0.3, 0.4];
        assert_eq!(conjugate_at(&single, &y).unwrap(), 0.3 * 1.5 - 0.4 * 2.0 + 6.25);
    }

    #[test]
    fn conjugate_of_ball_boundary() {
        // φ*_{rB}(q) = r|q| + r²; a 4096-gon underestimates by O(r|q|/N²).
        let r = 0.7;
        let sample = Shape::ball(2, r).unwrap().sample(4096, 0).unwrap();
        for q in [[1.0, 0.0], [0.3, -2.0], [-1.1, 0.4]] {
            let exact = r * vecops::norm(&q) + r * r;
            let got = conjugate_at(&sample, &q).unwrap();
            assert!(got <= exact + 1e-12 && exact - got < 1e-6, "{got} vs {exact}");
        }
    }

    #[test]
    fn biconjugate_examples() {
        let two = cloud(vec![vec![-1.0], vec![1.0]]);
        assert_eq!(biconjugate_at(&two, &[0.0]).unwrap(), ExtendedReal::Finite(-1.0));
        assert_eq!(biconjugate_at(&two, &[3.0]).unwrap(), ExtendedReal::PosInfinity);

        // −φ**(x) = (k̄ + k̲)x − k̄k̲ = x on [0, 1].
        let unit = cloud(vec![vec![0.0], vec![1.0]]);
        for t in [0.0, 0.1, 0.25, 0.5, 0.9, 1.0] {
            let v = biconjugate_at(&unit, &[t]).unwrap().finite().unwrap();
            assert!((v + t).abs() < 1e-12);
        }
    }

    #[test]
    fn outside_hull_carries_separator() {
        let tri = cloud(vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![0.0, 1.0]]);
        match envelope(&tri, &[1.0, 1.0]).unwrap() {
            Envelope::Outside(sep) => {
                assert!(tri.iter().all(|p| sep.excess(p) <= 1e-12));
                assert!(sep.excess(&[1.0, 1.0]) > 0.0);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn translation_examples() {
        let two = cloud(vec![vec![-1.0], vec![1.0]]);
        assert_eq!(translated_biconjugate_zero(&two, &[0.0]).unwrap(), ExtendedReal::Finite(-1.0));
        // Both sides by hand: shifted cloud {−0.5, 0.5} gives −0.25; and
        // |0.5|² + φ**_{[0,1]}(0.5) = 0.25 − 0.5.
        let unit = cloud(vec![vec![0.0], vec![1.0]]);
        let lhs = translated_biconjugate_zero(&unit, &[0.5]).unwrap().finite().unwrap();
        assert!((lhs + 0.25).abs() < 1e-15);
        let rhs = 0.25 + biconjugate_at(&unit, &[0.5]).unwrap().finite().unwrap();
        assert!((lhs - rhs).abs() < 1e-15);
    }

    fn cloud_strategy() -> impl Strategy<Value = PointCloud> {
        (1usize..=3).prop_flat_map(|dim| {
            prop::collection::vec(prop::collection::vec(-3.0f64..3.0, dim), 1..12)
                .prop_map(|rows| PointCloud::from_rows(rows).unwrap())
        })
    }

    proptest! {
        #[test]
        fn fenchel_young(c in cloud_strategy(), seed in any::<u64>()) {
            use rand::{Rng, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let y: Vec<f64> = (0..c.dim()).map(|_| rng.random_range(-4.0..4.0)).collect();
            let conj = conjugate_at(&c, &y).unwrap();
            let shape = Shape::cloud(c.clone());
            let mut tight = f64::INFINITY;
            for x in c.iter() {
                let phi_x = phi(&shape, x).unwrap().finite().unwrap();
                let slack = phi_x + conj - vecops::dot(&y, x);
                prop_assert!(slack >= -1e-10);
                tight = tight.min(slack);
            }
            prop_assert!(tight.abs() <= 1e-10);
        }

        #[test]
        fn envelope_below_phi_on_atoms(c in cloud_strategy()) {
            for x in c.iter() {
                let env = biconjugate_at(&c, x).unwrap().finite().unwrap();
                prop_assert!(env <= -vecops::norm_sq(x) + 1e-10);
            }
        }

        #[test]
        fn conjugate_midpoint_convex(c in cloud_strategy(), seed in any::<u64>()) {
            use rand::{Rng, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let a: Vec<f64> = (0..c.dim()).map(|_| rng.random_range(-5.0..5.0)).collect();
            let b: Vec<f64> = (0..c.dim()).map(|_| rng.random_range(-5.0..5.0)).collect();
            let mid = vecops::scale(&vecops::add(&a, &b), 0.5);
            let lhs = conjugate_at(&c, &mid).unwrap();
            let rhs = 0.5 * (conjugate_at(&c, &a).unwrap() + conjugate_at(&c, &b).unwrap());
            prop_assert!(lhs <= rhs + 1e-10);
        }
    }
}
