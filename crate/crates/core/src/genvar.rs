//! Generalized variance for radial convex costs `V(x) = v(|x|)`:
//!
//! ```text
//! Var_V(μ) = inf_z ∫ V(x − z) dμ(x)
//! ```
//!
//! and the minimax level `λ = min_z max_{x∈K} V(x − z)`, which equals the
//! supremum of `Var_V` over measures on `K`.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::bounds::{affine_dimension, AtomicMeasure};
use crate::error::{Error, Result};
use crate::geometry::{circumball, diameter, PointCloud};
use crate::lp::{hull_membership, solve_lp, HullMembership, LpProblem, DEFAULT_FEAS_TOL};
use crate::vecops;

/// Default tolerance for iterative solves.
pub const DEFAULT_TOL: f64 = 1e-6;
const MAX_DESCENT_ITERS: usize = 20_000;
const MAX_CUTS: usize = 2_000;
const COLLISION_TOL: f64 = 1e-12;

/// `v: [0, ∞) → [0, ∞)`, convex, nondecreasing and coercive.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", try_from = "RawCost")]
pub enum RadialCost {
    /// `v(t) = t^p`, `p >= 1`.
    #[serde(rename = "power")]
    Power { p: f64 },
    /// Linear interpolation of `(t, v)` knots, extended past the last knot
    /// with the last slope.
    #[serde(rename = "pwl")]
    PiecewiseLinear { knots: Vec<[f64; 2]> },
}

#[derive(Deserialize)]
#[serde(tag = "kind")]
enum RawCost {
    #[serde(rename = "power")]
    Power { p: f64 },
    #[serde(rename = "pwl")]
    PiecewiseLinear { knots: Vec<[f64; 2]> },
}

impl TryFrom<RawCost> for RadialCost {
    type Error = Error;

    fn try_from(raw: RawCost) -> Result<Self> {
        match raw {
            RawCost::Power { p } => Self::power(p),
            RawCost::PiecewiseLinear { knots } => Self::piecewise_linear(knots),
        }
    }
}

impl RadialCost {
    pub fn power(p: f64) -> Result<Self> {
        if !(p >= 1.0) || !p.is_finite() {
            return Err(Error::InvalidInput(format!("convexity: power exponent must be >= 1, got {p}")));
        }
        Ok(Self::Power { p })
    }

    pub fn piecewise_linear(knots: Vec<[f64; 2]>) -> Result<Self> {
        let bad = |m: String| Err(Error::InvalidInput(m));
        if knots.len() < 2 {
            return bad("pwl cost needs at least two knots".into());
        }
        if knots.iter().flatten().any(|v| !v.is_finite()) {
            return bad("pwl knots must be finite".into());
        }
        if knots[0][0] != 0.0 {
            return bad(format!("domain: first knot must be at t = 0, got {}", knots[0][0]));
        }
        if knots[0][1] < 0.0 {
            return bad(format!("nonnegativity: v(0) = {} < 0", knots[0][1]));
        }
        let mut prev_slope = 0.0;
        for (k, pair) in knots.windows(2).enumerate() {
            let [t0, v0] = pair[0];
            let [t1, v1] = pair[1];
            if !(t1 > t0) {
                return bad(format!("ordering: knot t-values must increase (knot {})", k + 1));
            }
            let slope = (v1 - v0) / (t1 - t0);
            if slope < 0.0 {
                return bad(format!("monotonicity: slope {slope} on segment {k} is negative"));
            }
            if slope < prev_slope {
                return bad(format!(
                    "convexity: slope {slope} on segment {k} is below the previous slope {prev_slope}"
                ));
            }
            prev_slope = slope;
        }
        if !(prev_slope > 0.0) {
            return bad("coercivity: last slope must be positive".into());
        }
        Ok(Self::PiecewiseLinear { knots })
    }

    /// Parses `{"kind":"power","p":2}` / `{"kind":"pwl","knots":[[t,v],..]}`.
    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }

    fn segment(knots: &[[f64; 2]], t: f64) -> usize {
        // Last segment whose left knot is <= t.
        let k = knots.partition_point(|k| k[0] <= t);
        k.saturating_sub(1).min(knots.len() - 2)
    }

    pub fn value(&self, t: f64) -> f64 {
        match self {
            Self::Power { p } => t.powf(*p),
            Self::PiecewiseLinear { knots } => {
                let k = Self::segment(knots, t);
                let [t0, v0] = knots[k];
                let [t1, v1] = knots[k + 1];
                v0 + (v1 - v0) / (t1 - t0) * (t - t0)
            }
        }
    }

    /// Right derivative `v'(t+)`.
    pub fn slope(&self, t: f64) -> f64 {
        match self {
            Self::Power { p } if *p == 1.0 => 1.0,
            Self::Power { p } => p * t.powf(p - 1.0),
            Self::PiecewiseLinear { knots } => {
                let k = Self::segment(knots, t);
                (knots[k + 1][1] - knots[k][1]) / (knots[k + 1][0] - knots[k][0])
            }
        }
    }

    pub fn is_strictly_convex(&self) -> bool {
        matches!(self, Self::Power { p } if *p > 1.0)
    }

    /// `V(x − z)`.
    pub fn at(&self, x: &[f64], z: &[f64]) -> f64 {
        self.value(vecops::dist(x, z))
    }
}

/// `∫ V(x − z) dμ(x)`.
pub fn objective(measure: &AtomicMeasure, cost: &RadialCost, z: &[f64]) -> f64 {
    measure
        .atoms()
        .iter()
        .zip(measure.weights())
        .map(|(x, w)| w * cost.at(x, z))
        .sum()
}

/// `max_{x ∈ K} V(x − z)`.
pub fn level(cloud: &PointCloud, cost: &RadialCost, z: &[f64]) -> f64 {
    cloud.iter().map(|x| cost.at(x, z)).fold(0.0, f64::max)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GenVarResult {
    pub value: f64,
    pub center: Vec<f64>,
    pub converged: bool,
    /// Certified bound on `value − Var_V(μ)`.
    pub inner_gap: f64,
    /// Whether the center is known to be the only minimizer.
    pub unique: bool,
    pub iterations: usize,
}

/// Minimum-norm subgradient of `z ↦ ∫V(x − z)dμ`. Atoms sitting at `z`
/// contribute a ball of radius `w·v'(0+)`.
fn min_norm_subgradient(measure: &AtomicMeasure, cost: &RadialCost, z: &[f64]) -> Vec<f64> {
    let mut g = vec![0.0; z.len()];
    let mut slack = 0.0;
    let scale = 1.0 + vecops::norm(z);
    for (x, w) in measure.atoms().iter().zip(measure.weights()) {
        let d = vecops::dist(x, z);
        if d <= COLLISION_TOL * scale {
            slack += w * cost.slope(0.0);
        } else {
            let s = w * cost.slope(d) / d;
            for k in 0..z.len() {
                g[k] += s * (z[k] - x[k]);
            }
        }
    }
    let gn = vecops::norm(&g);
    if gn <= slack {
        vec![0.0; z.len()]
    } else {
        vecops::scale(&g, 1.0 - slack / gn)
    }
}

/// Optimality gap bound at `z`: the minimizer lies in the hull of the atoms,
/// so `F(z) − F* <= |g|·max_i |x_i − z|` for any subgradient `g`.
fn gap_bound(measure: &AtomicMeasure, g: &[f64], z: &[f64]) -> f64 {
    let reach = measure.atoms().iter().map(|x| vecops::dist(x, z)).fold(0.0, f64::max);
    vecops::norm(g) * reach
}

pub fn generalized_variance(measure: &AtomicMeasure, cost: &RadialCost, tol: f64) -> Result<GenVarResult> {
    if !(tol > 0.0) {
        return Err(Error::InvalidInput(format!("tolerance must be positive, got {tol}")));
    }
    let unique = match cost {
        RadialCost::Power { p } if *p > 1.0 => true,
        // The weighted median is unique unless the atoms are collinear.
        RadialCost::Power { .. } => {
            let pts: Vec<usize> = (0..measure.len()).filter(|&i| measure.weights()[i] > 0.0).collect();
            affine_dimension(&measure.atoms().subset(&pts)?) >= 2
        }
        RadialCost::PiecewiseLinear { .. } => false,
    };
    let mut result = match cost {
        RadialCost::Power { p } if *p == 2.0 => GenVarResult {
            value: measure.variance(),
            center: measure.mean(),
            converged: true,
            inner_gap: 0.0,
            unique: true,
            iterations: 0,
        },
        RadialCost::Power { p } if *p == 1.0 => weiszfeld(measure, cost, tol)?,
        RadialCost::Power { .. } => descent(measure, cost, tol)?,
        RadialCost::PiecewiseLinear { .. } => kelley_sum(measure, cost, tol)?,
    };
    result.unique = unique;
    Ok(result)
}

/// Weighted geometric median by Weiszfeld's iteration, with the Vardi-Zhang
/// step when the iterate coincides with an atom.
fn weiszfeld(measure: &AtomicMeasure, cost: &RadialCost, tol: f64) -> Result<GenVarResult> {
    if affine_dimension(measure.atoms()) <= 1 {
        return Ok(collinear_median(measure, cost));
    }
    let n = measure.dim();
    let mut z = measure.mean();
    for it in 0..MAX_DESCENT_ITERS {
        let g = min_norm_subgradient(measure, cost, &z);
        let gap = gap_bound(measure, &g, &z);
        if gap <= tol {
            return Ok(GenVarResult {
                value: objective(measure, cost, &z),
                center: z,
                converged: true,
                inner_gap: gap,
                unique: false,
                iterations: it,
            });
        }
        // Iterates creep towards an optimal atom only sublinearly, so test
        // the nearest atom directly.
        let (k, _) = measure.atoms().nearest(&z);
        let atom = measure.atoms().point(k);
        let g_atom = min_norm_subgradient(measure, cost, atom);
        let gap_atom = gap_bound(measure, &g_atom, atom);
        if gap_atom <= tol {
            return Ok(GenVarResult {
                value: objective(measure, cost, atom),
                center: atom.to_vec(),
                converged: true,
                inner_gap: gap_atom,
                unique: false,
                iterations: it,
            });
        }
        let scale = 1.0 + vecops::norm(&z);
        let mut num = vec![0.0; n];
        let mut den = 0.0;
        let mut resid = vec![0.0; n];
        let mut eta = 0.0;
        for (x, w) in measure.atoms().iter().zip(measure.weights()) {
            let d = vecops::dist(x, &z);
            if d <= COLLISION_TOL * scale {
                eta += w;
                continue;
            }
            vecops::axpy(&mut num, w / d, x);
            den += w / d;
            for k in 0..n {
                resid[k] += w * (x[k] - z[k]) / d;
            }
        }
        let t = vecops::scale(&num, 1.0 / den);
        let step = if eta == 0.0 {
            t
        } else {
            let r = vecops::norm(&resid);
            let beta = (eta / r).min(1.0);
            vecops::add(&vecops::scale(&t, 1.0 - beta), &vecops::scale(&z, beta))
        };
        let f_step = objective(measure, cost, &step);
        z = match newton_step(measure, cost, &z) {
            Some(nz) if objective(measure, cost, &nz) < f_step => nz,
            _ => step,
        };
    }
    Err(Error::NoConvergence {
        what: "weiszfeld iteration",
        cap: MAX_DESCENT_ITERS,
        best: Some(z),
    })
}

/// Damped Newton step for `Σ w_i |x_i − z|`, which is smooth away from the
/// atoms with Hessian `Σ w_i (I − u_i u_iᵀ) / d_i`.
fn newton_step(measure: &AtomicMeasure, cost: &RadialCost, z: &[f64]) -> Option<Vec<f64>> {
    let n = z.len();
    let mut h = DMatrix::<f64>::zeros(n, n);
    let mut g = DVector::<f64>::zeros(n);
    for (x, w) in measure.atoms().iter().zip(measure.weights()) {
        let d = vecops::dist(x, z);
        if d <= COLLISION_TOL * (1.0 + vecops::norm(z)) {
            return None;
        }
        let u = DVector::from_iterator(n, z.iter().zip(x).map(|(a, b)| (a - b) / d));
        g += &u * *w;
        h += (DMatrix::identity(n, n) - &u * u.transpose()) * (w / d);
    }
    let p = h.lu().solve(&(-g))?;
    let f0 = objective(measure, cost, z);
    let mut t = 1.0;
    for _ in 0..40 {
        let cand: Vec<f64> = z.iter().zip(p.iter()).map(|(a, b)| a + t * b).collect();
        if objective(measure, cost, &cand) < f0 {
            return Some(cand);
        }
        t *= 0.5;
    }
    None
}

/// Weighted median of collinear atoms, read off the sorted positions along
/// their common line.
fn collinear_median(measure: &AtomicMeasure, cost: &RadialCost) -> GenVarResult {
    let atoms = measure.atoms();
    let base = atoms.point(0);
    let far = atoms
        .iter()
        .max_by(|a, b| vecops::dist_sq(a, base).total_cmp(&vecops::dist_sq(b, base)))
        .expect("nonempty");
    let dir = vecops::sub(far, base);
    let mut order: Vec<(f64, usize)> = atoms
        .iter()
        .enumerate()
        .map(|(i, p)| (vecops::dot(&vecops::sub(p, base), &dir), i))
        .collect();
    order.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
    let mut before = 0.0;
    let mut k = order[order.len() - 1].1;
    for &(_, i) in &order {
        let w = measure.weights()[i];
        if before + w >= 0.5 {
            k = i;
            break;
        }
        before += w;
    }
    let z = atoms.point(k).to_vec();
    let g = min_norm_subgradient(measure, cost, &z);
    GenVarResult {
        value: objective(measure, cost, &z),
        inner_gap: gap_bound(measure, &g, &z),
        center: z,
        converged: true,
        unique: false,
        iterations: 0,
    }
}

/// Gradient descent with Barzilai-Borwein steps and Armijo backtracking, for
/// differentiable costs.
fn descent(measure: &AtomicMeasure, cost: &RadialCost, tol: f64) -> Result<GenVarResult> {
    let mut z = measure.mean();
    let mut f = objective(measure, cost, &z);
    let mut g = min_norm_subgradient(measure, cost, &z);
    let spread = measure.atoms().iter().map(|x| vecops::dist(x, &z)).fold(0.0, f64::max);
    let mut step = if vecops::norm(&g) > 0.0 { 0.1 * spread / vecops::norm(&g) } else { 1.0 };
    for it in 0..MAX_DESCENT_ITERS {
        let gap = gap_bound(measure, &g, &z);
        if gap <= tol {
            return Ok(GenVarResult {
                value: f,
                center: z,
                converged: true,
                inner_gap: gap,
                unique: false,
                iterations: it,
            });
        }
        let gg = vecops::norm_sq(&g);
        let mut t = step;
        let (z_new, f_new, g_new) = loop {
            let cand: Vec<f64> = z.iter().zip(&g).map(|(a, b)| a - t * b).collect();
            let fc = objective(measure, cost, &cand);
            if fc <= f - 1e-4 * t * gg {
                break (cand.clone(), fc, min_norm_subgradient(measure, cost, &cand));
            }
            // Near the optimum the decrease drowns in rounding; settle for a
            // smaller gradient at an objective equal up to rounding.
            if fc <= f + 4.0 * f64::EPSILON * f.abs() {
                let gc = min_norm_subgradient(measure, cost, &cand);
                if vecops::norm_sq(&gc) < gg {
                    break (cand, fc, gc);
                }
            }
            if t < 1e-30 {
                return Err(Error::NoConvergence {
                    what: "gradient descent line search",
                    cap: it,
                    best: Some(z),
                });
            }
            t *= 0.5;
        };
        let s = vecops::sub(&z_new, &z);
        let y = vecops::sub(&g_new, &g);
        let sy = vecops::dot(&s, &y);
        step = if sy > 0.0 { vecops::norm_sq(&s) / sy } else { 2.0 * t };
        z = z_new;
        f = f_new;
        g = g_new;
    }
    Err(Error::NoConvergence {
        what: "gradient descent",
        cap: MAX_DESCENT_ITERS,
        best: Some(z),
    })
}

/// Affine minorants `t >= value + grad·(z − at)` over a box, minimized by LP.
struct CuttingPlanes {
    lo: Vec<f64>,
    hi: Vec<f64>,
    cuts: Vec<Cut>,
}

struct Cut {
    value: f64,
    grad: Vec<f64>,
    at: Vec<f64>,
    tag: usize,
}

struct Relaxation {
    lower: f64,
    z: Vec<f64>,
    /// Tags of cuts with positive multipliers.
    active: Vec<usize>,
}

impl CuttingPlanes {
    fn solve(&self) -> Result<Relaxation> {
        let n = self.lo.len();
        let k = self.cuts.len();
        // Columns: u = z − lo (n), t, cut surpluses (k), box slacks (n).
        let cols = n + 1 + k + n;
        let mut rows = Vec::with_capacity(k + n);
        let mut rhs = Vec::with_capacity(k + n);
        for (i, c) in self.cuts.iter().enumerate() {
            let mut row = vec![0.0; cols];
            for d in 0..n {
                row[d] = -c.grad[d];
            }
            row[n] = 1.0;
            row[n + 1 + i] = -1.0;
            rows.push(row);
            rhs.push(c.value - vecops::dot(&c.grad, &c.at) + vecops::dot(&c.grad, &self.lo));
        }
        for d in 0..n {
            let mut row = vec![0.0; cols];
            row[d] = 1.0;
            row[n + 1 + k + d] = 1.0;
            rows.push(row);
            rhs.push(self.hi[d] - self.lo[d]);
        }
        let mut objective = vec![0.0; cols];
        objective[n] = 1.0;
        let sol = solve_lp(&LpProblem::new(objective, rows, rhs)?, DEFAULT_FEAS_TOL)?;
        if !sol.is_optimal() {
            return Err(Error::Domain(format!("cutting-plane relaxation is {:?}", sol.status)));
        }
        let t = sol.solution.unwrap();
        let duals = sol.duals.unwrap();
        let mut active: Vec<usize> = self
            .cuts
            .iter()
            .zip(&duals)
            .filter(|(_, y)| **y > 1e-12)
            .map(|(c, _)| c.tag)
            .collect();
        active.sort_unstable();
        active.dedup();
        Ok(Relaxation {
            lower: t[n],
            z: (0..n).map(|d| self.lo[d] + t[d]).collect(),
            active,
        })
    }
}

/// `∇_z V(x − z) = v'(|x−z|)(z − x)/|x − z|`, zero at `z = x`.
fn radial_gradient(cost: &RadialCost, x: &[f64], z: &[f64]) -> Vec<f64> {
    let d = vecops::dist(x, z);
    if d == 0.0 {
        return vec![0.0; z.len()];
    }
    let s = cost.slope(d) / d;
    z.iter().zip(x).map(|(zi, xi)| s * (zi - xi)).collect()
}

/// Kelley's method on `z ↦ ∫V(x − z)dμ` over the bounding box of the atoms.
fn kelley_sum(measure: &AtomicMeasure, cost: &RadialCost, tol: f64) -> Result<GenVarResult> {
    let (lo, hi) = measure.atoms().bounding_box();
    let mut planes = CuttingPlanes { lo, hi, cuts: Vec::new() };
    let mut z = measure.mean();
    let mut best = (objective(measure, cost, &z), z.clone());
    for it in 0..MAX_CUTS {
        let f = objective(measure, cost, &z);
        if f < best.0 {
            best = (f, z.clone());
        }
        let mut grad = vec![0.0; z.len()];
        for (x, w) in measure.atoms().iter().zip(measure.weights()) {
            vecops::axpy(&mut grad, *w, &radial_gradient(cost, x, &z));
        }
        planes.cuts.push(Cut { value: f, grad, at: z.clone(), tag: it });
        let relax = planes.solve()?;
        let gap = (best.0 - relax.lower).max(0.0);
        if gap <= tol {
            return Ok(GenVarResult {
                value: best.0,
                center: best.1,
                converged: true,
                inner_gap: gap,
                unique: false,
                iterations: it + 1,
            });
        }
        z = relax.z;
    }
    Err(Error::NoConvergence {
        what: "cutting-plane minimization",
        cap: MAX_CUTS,
        best: Some(best.1),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ChebyshevLevel {
    pub lambda: f64,
    pub z: Vec<f64>,
    /// Certified bound on `lambda − min_z max_x V(x − z)`.
    pub gap: f64,
    pub iterations: usize,
}

/// Tests whether the circumcenter of `active` is a minimax point: every point
/// lies within the circumradius and the center is in the hull of `active`.
fn polish(cloud: &PointCloud, active: &[usize]) -> Option<Vec<f64>> {
    let pts: Vec<&[f64]> = active.iter().map(|&i| cloud.point(i)).collect();
    let ball = circumball(&pts).ok()?;
    let slack = 1e-10 * (1.0 + ball.radius);
    if !cloud.iter().all(|p| ball.contains(p, slack)) {
        return None;
    }
    let support = cloud.subset(active).ok()?;
    match hull_membership(&support, &ball.center, DEFAULT_FEAS_TOL).ok()? {
        HullMembership::Inside(_) => Some(ball.center),
        HullMembership::NotInHull(_) => None,
    }
}

/// `λ = min_z max_{x∈K} V(x − z)` by Kelley's cutting-plane method over the
/// bounding box of the cloud inflated by its diameter.
///
/// Positive multipliers of the relaxation identify the contact points; when
/// their circumcenter passes the optimality test (all points inside, center
/// in their hull) it is returned with zero gap, since for a nondecreasing `v`
/// the minimax point of `max v(|x − z|)` is the center of the smallest
/// enclosing ball.
pub fn chebyshev_level(cloud: &PointCloud, cost: &RadialCost, tol: f64) -> Result<ChebyshevLevel> {
    if !(tol > 0.0) {
        return Err(Error::InvalidInput(format!("tolerance must be positive, got {tol}")));
    }
    if cloud.len() == 1 {
        return Ok(ChebyshevLevel {
            lambda: cost.value(0.0),
            z: cloud.point(0).to_vec(),
            gap: 0.0,
            iterations: 0,
        });
    }
    let diam = diameter(cloud);
    let (mut lo, mut hi) = cloud.bounding_box();
    for d in 0..cloud.dim() {
        lo[d] -= diam;
        hi[d] += diam;
    }
    let mut planes = CuttingPlanes { lo, hi, cuts: Vec::new() };
    let mut z = cloud.centroid();
    let mut best = (level(cloud, cost, &z), z.clone());
    let mut order: Vec<usize> = (0..cloud.len()).collect();

    let finish = |lambda: f64, z: Vec<f64>, gap: f64, it: usize| ChebyshevLevel {
        lambda,
        z,
        gap,
        iterations: it,
    };

    for it in 0..MAX_CUTS {
        // Cut the farthest points from the current iterate.
        order.sort_by(|&a, &b| {
            vecops::dist_sq(cloud.point(b), &z).total_cmp(&vecops::dist_sq(cloud.point(a), &z))
        });
        let fan = if it == 0 { (2 * cloud.dim() + 2).min(cloud.len()) } else { 1 };
        for &i in &order[..fan] {
            let x = cloud.point(i);
            planes.cuts.push(Cut {
                value: cost.at(x, &z),
                grad: radial_gradient(cost, x, &z),
                at: z.clone(),
                tag: i,
            });
        }
        let f = cost.at(cloud.point(order[0]), &z);
        if f < best.0 {
            best = (f, z.clone());
        }
        let relax = planes.solve()?;
        if let Some(center) = polish(cloud, &relax.active) {
            let lambda = level(cloud, cost, &center);
            if lambda <= best.0 {
                return Ok(finish(lambda, center, 0.0, it + 1));
            }
        }
        let gap = (best.0 - relax.lower).max(0.0);
        if gap <= tol {
            return Ok(finish(best.0, best.1, gap, it + 1));
        }
        z = relax.z;
    }
    Err(Error::NoConvergence {
        what: "minimax cutting planes",
        cap: MAX_CUTS,
        best: Some(best.1),
    })
}

/// `sup_{μ ∈ P(K)} Var_V(μ)`, which is the minimax level.
pub fn sup_genvar(cloud: &PointCloud, cost: &RadialCost, tol: f64) -> Result<f64> {
    Ok(chebyshev_level(cloud, cost, tol)?.lambda)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SaddleReport {
    pub lambda: f64,
    pub value: f64,
    /// The minimizer whose level set was tested.
    pub center: Vec<f64>,
    /// Largest `|V(x_i − z) − λ|` over positive-mass atoms at `center`.
    pub level_deviation: f64,
    pub on_level_set: bool,
    pub attains_level: bool,
    pub maximizer: bool,
}

/// Tests whether `measure` attains `sup Var_V` over `cloud`: some minimizer
/// `z` of `∫V(x − z)dμ` must put every atom of the measure on `{V(· − z) = λ}`.
pub fn verify_saddle(
    measure: &AtomicMeasure,
    cloud: &PointCloud,
    cost: &RadialCost,
    tol: f64,
) -> Result<SaddleReport> {
    cloud.check_dim(&measure.mean())?;
    for (a, _) in measure.positive_part(0.0) {
        if cloud.nearest(a).1 > 1e-12 * (1.0 + vecops::norm(a)) {
            return Err(Error::InvalidInput("measure has an atom outside the cloud".into()));
        }
    }
    let inner_tol = (0.01 * tol).max(1e-12);
    let gv = generalized_variance(measure, cost, inner_tol)?;
    let cheb = chebyshev_level(cloud, cost, inner_tol)?;
    let lambda = cheb.lambda;

    let deviation = |z: &[f64]| {
        measure
            .positive_part(0.0)
            .iter()
            .map(|(x, _)| (cost.at(x, z) - lambda).abs())
            .fold(0.0, f64::max)
    };
    // The minimax point is another candidate minimizer when the inner problem
    // is not strictly convex.
    let mut center = gv.center.clone();
    let mut dev = deviation(&center);
    if dev > tol && objective(measure, cost, &cheb.z) <= gv.value + tol {
        let alt = deviation(&cheb.z);
        if alt < dev {
            center = cheb.z.clone();
            dev = alt;
        }
    }
    let on_level_set = dev <= tol;
    let attains_level = gv.value >= lambda - tol;
    Ok(SaddleReport {
        lambda,
        value: gv.value,
        center,
        level_deviation: dev,
        on_level_set,
        attains_level,
        maximizer: on_level_set && attains_level,
    })
}
