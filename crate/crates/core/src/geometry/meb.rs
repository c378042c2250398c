//! Smallest enclosing balls.
//!
//! Welzl's recursion in its move-to-front form: the recursion only ever
//! descends on the support set, so its depth is bounded by `n + 1` no matter
//! how many points there are. Large or high-dimensional inputs go to a
//! Frank-Wolfe solver on the dual (variance-maximization) problem instead.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{Ball, PointCloud};
use crate::error::{Error, Result};
use crate::lp::{hull_membership, HullMembership, DEFAULT_FEAS_TOL};
use crate::vecops;

const RANK_TOL: f64 = 1e-10;
const WELZL_MAX_DIM: usize = 12;
const WELZL_MAX_POINTS: usize = 100_000;

/// A minimal enclosing ball together with the indices of cloud points on its
/// boundary that pin it down.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EnclosingBall {
    pub ball: Ball,
    pub support: Vec<usize>,
}

impl EnclosingBall {
    pub fn center(&self) -> &[f64] {
        &self.ball.center
    }

    pub fn radius(&self) -> f64 {
        self.ball.radius
    }

    /// Checks the optimality certificate: every point is inside, and the
    /// center lies in the convex hull of the support points, which sit on the
    /// sphere.
    pub fn certify(&self, cloud: &PointCloud) -> Result<bool> {
        let r = self.radius();
        let inside = cloud.iter().all(|p| self.ball.contains(p, 1e-9 * (1.0 + r)));
        let on_sphere = self
            .support
            .iter()
            .all(|&i| self.ball.depth(cloud.point(i)).abs() <= 1e-9 * (1.0 + r));
        if !(inside && on_sphere) || self.support.is_empty() {
            return Ok(false);
        }
        let support = cloud.subset(&self.support)?;
        Ok(matches!(
            hull_membership(&support, self.center(), DEFAULT_FEAS_TOL)?,
            HullMembership::Inside(_)
        ))
    }
}

/// The smallest ball having every given point on its boundary, with center in
/// their affine hull.
pub fn circumball(points: &[&[f64]]) -> Result<Ball> {
    let Some(first) = points.first() else {
        return Err(Error::InvalidInput("circumball of no points".into()));
    };
    let dim = first.len();
    if points.iter().any(|p| p.len() != dim) {
        return Err(Error::InvalidInput("mixed dimensions".into()));
    }
    let k = points.len() - 1;
    if k > dim {
        return Err(Error::DegenerateSupport(points.len()));
    }
    if k == 0 {
        return Ball::new(first.to_vec(), 0.0);
    }
    let v: Vec<Vec<f64>> = points[1..].iter().map(|p| vecops::sub(p, first)).collect();
    // Gram system G λ = ½ diag(G) for the center p0 + Σ λ_i v_i.
    let mut gram = vec![0.0; k * k];
    for i in 0..k {
        for j in 0..=i {
            let g = vecops::dot(&v[i], &v[j]);
            gram[i * k + j] = g;
            gram[j * k + i] = g;
        }
    }
    let rhs: Vec<f64> = (0..k).map(|i| 0.5 * gram[i * k + i]).collect();
    let lambda = cholesky_solve(&gram, &rhs, k).ok_or(Error::DegenerateSupport(points.len()))?;
    let mut center = first.to_vec();
    for (l, vi) in lambda.iter().zip(&v) {
        vecops::axpy(&mut center, *l, vi);
    }
    let radius = points
        .iter()
        .map(|p| vecops::dist(p, &center))
        .fold(0.0, f64::max);
    Ball::new(center, radius)
}

/// Solves a symmetric positive definite system; `None` when a pivot falls
/// below the relative rank tolerance.
fn cholesky_solve(a: &[f64], b: &[f64], k: usize) -> Option<Vec<f64>> {
    let scale = (0..k).map(|i| a[i * k + i]).fold(0.0, f64::max);
    if scale <= 0.0 {
        return None;
    }
    let mut l = vec![0.0; k * k];
    for j in 0..k {
        let mut d = a[j * k + j];
        for p in 0..j {
            d -= l[j * k + p] * l[j * k + p];
        }
        if d <= RANK_TOL * scale {
            return None;
        }
        let d = d.sqrt();
        l[j * k + j] = d;
        for i in j + 1..k {
            let mut s = a[i * k + j];
            for p in 0..j {
                s -= l[i * k + p] * l[j * k + p];
            }
            l[i * k + j] = s / d;
        }
    }
    let mut y = vec![0.0; k];
    for i in 0..k {
        let mut s = b[i];
        for p in 0..i {
            s -= l[i * k + p] * y[p];
        }
        y[i] = s / l[i * k + i];
    }
    let mut x = vec![0.0; k];
    for i in (0..k).rev() {
        let mut s = y[i];
        for p in i + 1..k {
            s -= l[p * k + i] * x[p];
        }
        x[i] = s / l[i * k + i];
    }
    Some(x)
}

pub fn min_enclosing_ball(cloud: &PointCloud) -> EnclosingBall {
    min_enclosing_ball_seeded(cloud, 0)
}

pub fn min_enclosing_ball_seeded(cloud: &PointCloud, seed: u64) -> EnclosingBall {
    if cloud.dim() > WELZL_MAX_DIM || cloud.len() > WELZL_MAX_POINTS {
        return frank_wolfe(cloud, 1e-9);
    }
    let mut order: Vec<usize> = (0..cloud.len()).collect();
    order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));

    for _ in 0..4 {
        let mut welzl = Welzl {
            cloud,
            order: order.clone(),
            support: Vec::with_capacity(cloud.dim() + 1),
        };
        let empty = Ball {
            center: vec![0.0; cloud.dim()],
            radius: -1.0,
        };
        let (ball, support) = welzl.run(cloud.len(), empty);
        let slack = 1e-10 * (1.0 + ball.radius);
        match (0..cloud.len()).find(|&i| !ball.contains(cloud.point(i), slack)) {
            None => return EnclosingBall { ball, support },
            Some(violator) => {
                // A skipped degenerate support point; retry with it in front.
                order.retain(|&i| i != violator);
                order.insert(0, violator);
            }
        }
    }
    frank_wolfe(cloud, 1e-9)
}

struct Welzl<'a> {
    cloud: &'a PointCloud,
    order: Vec<usize>,
    support: Vec<usize>,
}

impl Welzl<'_> {
    fn contains(ball: &Ball, p: &[f64]) -> bool {
        if ball.radius < 0.0 {
            return false;
        }
        let r2 = ball.radius * ball.radius;
        vecops::dist_sq(&ball.center, p) <= r2 + 1e-13 * (1.0 + r2)
    }

    fn run(&mut self, end: usize, ball: Ball) -> (Ball, Vec<usize>) {
        let mut best = (ball, self.support.clone());
        if self.support.len() == self.cloud.dim() + 1 {
            return best;
        }
        for i in 0..end {
            let p = self.order[i];
            if Self::contains(&best.0, self.cloud.point(p)) {
                continue;
            }
            self.support.push(p);
            let pts: Vec<&[f64]> = self.support.iter().map(|&s| self.cloud.point(s)).collect();
            if let Ok(b) = circumball(&pts) {
                best = self.run(i, b);
                self.order[..=i].rotate_right(1);
            }
            self.support.pop();
        }
        best
    }
}

/// Away-step Frank-Wolfe on `max_w Σ w_i|x_i|² − |Σ w_i x_i|²` over the
/// probability simplex. The weighted mean is the center; the gap between
/// `max_i |x_i − c|²` and the current variance bounds the error in `R²`.
fn frank_wolfe(cloud: &PointCloud, tol: f64) -> EnclosingBall {
    let n_pts = cloud.len();
    let mut w = vec![0.0; n_pts];
    let c0 = cloud.centroid();
    let far = (0..n_pts)
        .max_by(|&a, &b| {
            vecops::dist_sq(cloud.point(a), &c0).total_cmp(&vecops::dist_sq(cloud.point(b), &c0))
        })
        .unwrap();
    w[far] = 1.0;
    let mut center = cloud.point(far).to_vec();
    let max_iters = 200_000;
    for _ in 0..max_iters {
        let d2: Vec<f64> = cloud.iter().map(|p| vecops::dist_sq(p, &center)).collect();
        let var: f64 = w.iter().zip(&d2).map(|(wi, di)| wi * di).sum();
        let (fw, &r2) = d2
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.total_cmp(b.1))
            .unwrap();
        if r2 - var <= tol * (1.0 + r2) {
            break;
        }
        let (away, _) = d2
            .iter()
            .enumerate()
            .filter(|(i, _)| w[*i] > 0.0)
            .min_by(|a, b| a.1.total_cmp(b.1))
            .unwrap();
        let toward_gap = r2 - var;
        let away_gap = var - d2[away];
        // Direction moves mass onto `fw` or off `away`; exact line search on a
        // concave quadratic.
        let (from, to, max_step) = if toward_gap >= away_gap {
            (None, fw, 1.0)
        } else {
            let wa = w[away];
            (Some(away), usize::MAX, wa / (1.0 - wa).max(f64::MIN_POSITIVE))
        };
        match from {
            None => {
                let dir = vecops::sub(cloud.point(to), &center);
                let dd = vecops::norm_sq(&dir);
                let step = if dd > 0.0 { (toward_gap / (2.0 * dd)).min(max_step) } else { 0.0 };
                for wi in w.iter_mut() {
                    *wi *= 1.0 - step;
                }
                w[to] += step;
                vecops::axpy(&mut center, step, &dir);
            }
            Some(a) => {
                let dir = vecops::sub(&center, cloud.point(a));
                let dd = vecops::norm_sq(&dir);
                let step = if dd > 0.0 { (away_gap / (2.0 * dd)).min(max_step) } else { 0.0 };
                for wi in w.iter_mut() {
                    *wi *= 1.0 + step;
                }
                w[a] -= step;
                if w[a] < 1e-15 {
                    w[a] = 0.0;
                }
                vecops::axpy(&mut center, step, &dir);
            }
        }
    }
    let radius = cloud
        .iter()
        .map(|p| vecops::dist(p, &center))
        .fold(0.0, f64::max);
    let support = (0..n_pts).filter(|&i| w[i] > 0.0).collect();
    EnclosingBall {
        ball: Ball { center, radius },
        support,
    }
}
