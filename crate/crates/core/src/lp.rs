//! Dense two-phase simplex for small standard-form programs
//!
//! ```text
//! minimize  c·t   subject to  A t = b,  t >= 0
//! ```
//!
//! Every other module reduces to programs of this shape: convex hull
//! membership, concave envelopes over finite clouds, the zero-mean moment
//! program and its dual, and the cutting-plane relaxations in `genvar`.

use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use crate::error::{Error, Result, Separator};
use crate::geometry::PointCloud;

pub const DEFAULT_FEAS_TOL: f64 = 1e-8;
pub const PIVOT_TOL: f64 = 1e-9;

/// `minimize objective·t` subject to `matrix · t = rhs`, `t >= 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct LpProblem {
    objective: Vec<f64>,
    matrix: Vec<f64>,
    rhs: Vec<f64>,
}

impl LpProblem {
    /// Builds a problem from constraint rows. Every row must have one entry
    /// per objective coefficient.
    pub fn new(objective: Vec<f64>, rows: Vec<Vec<f64>>, rhs: Vec<f64>) -> Result<Self> {
        if rows.len() != rhs.len() {
            return Err(Error::DimensionMismatch {
                expected: rows.len(),
                found: rhs.len(),
            });
        }
        let m = objective.len();
        let mut matrix = Vec::with_capacity(rows.len() * m);
        for row in &rows {
            if row.len() != m {
                return Err(Error::DimensionMismatch {
                    expected: m,
                    found: row.len(),
                });
            }
            matrix.extend_from_slice(row);
        }
        let problem = Self {
            objective,
            matrix,
            rhs,
        };
        problem.check_finite()?;
        Ok(problem)
    }

    fn check_finite(&self) -> Result<()> {
        let all = self
            .objective
            .iter()
            .chain(&self.matrix)
            .chain(&self.rhs)
            .all(|v| v.is_finite());
        if all {
            Ok(())
        } else {
            Err(Error::InvalidInput("non-finite LP coefficient".into()))
        }
    }

    pub fn num_rows(&self) -> usize {
        self.rhs.len()
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn objective(&self) -> &[f64] {
        &self.objective
    }

    pub fn rhs(&self) -> &[f64] {
        &self.rhs
    }

    pub fn row(&self, i: usize) -> &[f64] {
        let m = self.num_vars();
        &self.matrix[i * m..(i + 1) * m]
    }

    fn entry(&self, i: usize, j: usize) -> f64 {
        self.matrix[i * self.num_vars() + j]
    }

    /// `‖A t − b‖∞`
    pub fn residual(&self, t: &[f64]) -> f64 {
        (0..self.num_rows())
            .map(|i| (crate::vecops::dot(self.row(i), t) - self.rhs[i]).abs())
            .fold(0.0, f64::max)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LpSolution {
    pub status: LpStatus,
    pub value: Option<f64>,
    pub solution: Option<Vec<f64>>,
    /// Row multipliers `y` with `c − Aᵀy >= 0` at an optimum.
    pub duals: Option<Vec<f64>>,
    /// Farkas ray for an infeasible program: `yᵀA <= 0` and `yᵀb > 0`.
    pub farkas: Option<Vec<f64>>,
    pub iterations: usize,
}

impl LpSolution {
    pub fn is_optimal(&self) -> bool {
        self.status == LpStatus::Optimal
    }
}

#[derive(Debug, Clone, Copy)]
pub struct LpOptions {
    pub feas_tol: f64,
    pub pivot_tol: f64,
    /// Defaults to `50·(k+m)`.
    pub max_iters: Option<usize>,
    /// Pivots without objective progress before Bland's rule takes over.
    /// Defaults to `10·(k+m)`.
    pub stall_limit: Option<usize>,
}

impl Default for LpOptions {
    fn default() -> Self {
        Self {
            feas_tol: DEFAULT_FEAS_TOL,
            pivot_tol: PIVOT_TOL,
            max_iters: None,
            stall_limit: None,
        }
    }
}

pub fn solve_lp(problem: &LpProblem, feas_tol: f64) -> Result<LpSolution> {
    solve_lp_with(
        problem,
        &LpOptions {
            feas_tol,
            ..LpOptions::default()
        },
    )
}

pub fn solve_lp_with(problem: &LpProblem, options: &LpOptions) -> Result<LpSolution> {
    if !(options.feas_tol > 0.0) {
        return Err(Error::InvalidInput("feas_tol must be positive".into()));
    }
    let k = problem.num_rows();
    let m = problem.num_vars();
    let size = k + m;
    let mut tableau = Tableau::new(problem, options, size);

    // Phase 1: minimize the sum of artificials.
    let mut phase1_cost = vec![0.0; m + k];
    for c in &mut phase1_cost[m..] {
        *c = 1.0;
    }
    tableau.set_objective(&phase1_cost);
    if tableau.run(m + k)? == Outcome::Unbounded {
        unreachable!("phase 1 objective is bounded below by zero");
    }

    let b_scale = problem.rhs.iter().fold(1.0_f64, |s, v| s.max(v.abs()));
    let infeasibility = -tableau.objective_value_entry();
    if infeasibility > options.feas_tol * b_scale {
        let farkas = (0..k)
            .map(|i| tableau.sign[i] * (1.0 - tableau.obj[m + i]))
            .collect();
        return Ok(LpSolution {
            status: LpStatus::Infeasible,
            value: None,
            solution: None,
            duals: None,
            farkas: Some(farkas),
            iterations: tableau.iterations,
        });
    }

    tableau.drive_out_artificials();

    // Phase 2.
    let mut cost = problem.objective.clone();
    cost.extend(std::iter::repeat_n(0.0, k));
    tableau.set_objective(&cost);
    tableau.reset_stall();
    if tableau.run(m)? == Outcome::Unbounded {
        return Ok(LpSolution {
            status: LpStatus::Unbounded,
            value: None,
            solution: None,
            duals: None,
            farkas: None,
            iterations: tableau.iterations,
        });
    }

    let (solution, duals) = tableau.extract(problem);
    let value = crate::vecops::dot(&problem.objective, &solution);
    Ok(LpSolution {
        status: LpStatus::Optimal,
        value: Some(value),
        solution: Some(solution),
        duals: Some(duals),
        farkas: None,
        iterations: tableau.iterations,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Outcome {
    Optimal,
    Unbounded,
}

struct Tableau {
    k: usize,
    m: usize,
    /// Row-major, `k × width`; columns are structurals, artificials, rhs.
    data: Vec<f64>,
    width: usize,
    obj: Vec<f64>,
    basis: Vec<usize>,
    in_basis: Vec<bool>,
    dead: Vec<bool>,
    sign: Vec<f64>,
    cost_scale: f64,
    pivot_tol: f64,
    max_iters: usize,
    stall_limit: usize,
    iterations: usize,
    stall: usize,
    best: f64,
    bland: bool,
}

impl Tableau {
    fn new(problem: &LpProblem, options: &LpOptions, size: usize) -> Self {
        let k = problem.num_rows();
        let m = problem.num_vars();
        let width = m + k + 1;
        let mut data = vec![0.0; k * width];
        let mut sign = vec![1.0; k];
        for i in 0..k {
            let s = if problem.rhs[i] < 0.0 { -1.0 } else { 1.0 };
            sign[i] = s;
            let row = &mut data[i * width..(i + 1) * width];
            for j in 0..m {
                row[j] = s * problem.entry(i, j);
            }
            row[m + i] = 1.0;
            row[width - 1] = s * problem.rhs[i];
        }
        Self {
            k,
            m,
            data,
            width,
            obj: vec![0.0; width],
            basis: (m..m + k).collect(),
            in_basis: (0..m + k).map(|j| j >= m).collect(),
            dead: vec![false; k],
            sign,
            cost_scale: 1.0,
            pivot_tol: options.pivot_tol,
            max_iters: options.max_iters.unwrap_or(50 * size.max(1)),
            stall_limit: options.stall_limit.unwrap_or(10 * size.max(1)),
            iterations: 0,
            stall: 0,
            best: f64::INFINITY,
            bland: false,
        }
    }

    fn at(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.width + j]
    }

    fn rhs(&self, i: usize) -> f64 {
        self.at(i, self.width - 1)
    }

    fn objective_value_entry(&self) -> f64 {
        self.obj[self.width - 1]
    }

    fn set_objective(&mut self, cost: &[f64]) {
        self.cost_scale = cost.iter().fold(1.0_f64, |s, c| s.max(c.abs()));
        self.obj.iter_mut().for_each(|v| *v = 0.0);
        self.obj[..cost.len()].copy_from_slice(cost);
        for i in 0..self.k {
            if self.dead[i] {
                continue;
            }
            let cb = cost[self.basis[i]];
            if cb != 0.0 {
                let row = &self.data[i * self.width..(i + 1) * self.width];
                for (o, r) in self.obj.iter_mut().zip(row) {
                    *o -= cb * r;
                }
            }
        }
    }

    fn reset_stall(&mut self) {
        self.stall = 0;
        self.best = f64::INFINITY;
        self.bland = false;
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let w = self.width;
        let p = self.at(r, c);
        {
            let row = &mut self.data[r * w..(r + 1) * w];
            for v in row.iter_mut() {
                *v /= p;
            }
            row[c] = 1.0;
        }
        let pivot_row: Vec<f64> = self.data[r * w..(r + 1) * w].to_vec();
        for i in 0..self.k {
            if i == r || self.dead[i] {
                continue;
            }
            let f = self.at(i, c);
            if f != 0.0 {
                let row = &mut self.data[i * w..(i + 1) * w];
                for (v, pr) in row.iter_mut().zip(&pivot_row) {
                    *v -= f * pr;
                }
                row[c] = 0.0;
            }
        }
        let f = self.obj[c];
        if f != 0.0 {
            for (v, pr) in self.obj.iter_mut().zip(&pivot_row) {
                *v -= f * pr;
            }
            self.obj[c] = 0.0;
        }
        self.in_basis[self.basis[r]] = false;
        self.in_basis[c] = true;
        self.basis[r] = c;
    }

    fn entering(&self, allowed: usize) -> Option<usize> {
        let tol = 1e-11 * self.cost_scale;
        let is_basic = |j: usize| self.in_basis[j];
        if self.bland {
            (0..allowed).find(|&j| self.obj[j] < -tol && !is_basic(j))
        } else {
            let mut best = None;
            let mut best_val = -tol;
            for j in 0..allowed {
                if self.obj[j] < best_val && !is_basic(j) {
                    best_val = self.obj[j];
                    best = Some(j);
                }
            }
            best
        }
    }

    fn leaving(&self, c: usize) -> Option<usize> {
        let mut best: Option<(usize, f64)> = None;
        for i in 0..self.k {
            if self.dead[i] {
                continue;
            }
            let a = self.at(i, c);
            if a <= self.pivot_tol {
                continue;
            }
            let ratio = self.rhs(i).max(0.0) / a;
            best = match best {
                None => Some((i, ratio)),
                Some((bi, br)) => {
                    let tie = (ratio - br).abs() <= 1e-12 * (1.0 + br.abs());
                    if ratio < br && !tie {
                        Some((i, ratio))
                    } else if tie {
                        let better = if self.bland {
                            self.basis[i] < self.basis[bi]
                        } else {
                            a > self.at(bi, c)
                        };
                        if better {
                            Some((i, ratio.min(br)))
                        } else {
                            Some((bi, br.min(ratio)))
                        }
                    } else {
                        Some((bi, br))
                    }
                }
            };
        }
        best.map(|(i, _)| i)
    }

    /// Pivots until optimal or unbounded. Only columns `< allowed` may enter.
    fn run(&mut self, allowed: usize) -> Result<Outcome> {
        loop {
            let Some(c) = self.entering(allowed) else {
                return Ok(Outcome::Optimal);
            };
            let Some(r) = self.leaving(c) else {
                return Ok(Outcome::Unbounded);
            };
            if self.iterations >= self.max_iters {
                return Err(Error::NoConvergence {
                    what: "simplex",
                    cap: self.max_iters,
                    best: None,
                });
            }
            self.pivot(r, c);
            self.iterations += 1;

            let z = -self.objective_value_entry();
            if z < self.best - 1e-13 * (1.0 + z.abs()) {
                self.best = z;
                self.stall = 0;
            } else {
                self.stall += 1;
                if self.stall >= self.stall_limit {
                    self.bland = true;
                }
            }
        }
    }

    fn drive_out_artificials(&mut self) {
        for i in 0..self.k {
            if self.basis[i] < self.m {
                continue;
            }
            let mut best: Option<(usize, f64)> = None;
            for j in 0..self.m {
                let a = self.at(i, j).abs();
                if a > self.pivot_tol && best.is_none_or(|(_, b)| a > b) && !self.in_basis[j]
                {
                    best = Some((j, a));
                }
            }
            match best {
                Some((j, _)) => self.pivot(i, j),
                None => {
                    // Redundant equality.
                    self.dead[i] = true;
                    let w = self.width;
                    self.data[i * w..(i + 1) * w].iter_mut().for_each(|v| *v = 0.0);
                }
            }
        }
    }

    /// Reads off the basic solution and multipliers, then re-solves both from
    /// the original basis columns to shed accumulated pivoting error.
    fn extract(&self, problem: &LpProblem) -> (Vec<f64>, Vec<f64>) {
        let (k, m) = (self.k, self.m);
        let mut x = vec![0.0; m];
        for i in 0..k {
            if !self.dead[i] && self.basis[i] < m {
                x[self.basis[i]] = self.rhs(i).max(0.0);
            }
        }
        let mut y: Vec<f64> = (0..k)
            .map(|i| {
                if self.dead[i] {
                    0.0
                } else {
                    -self.sign[i] * self.obj[m + i]
                }
            })
            .collect();

        let live: Vec<usize> = (0..k).filter(|&i| !self.dead[i]).collect();
        let cols: Vec<usize> = live.iter().map(|&i| self.basis[i]).collect();
        if cols.iter().all(|&c| c < m) && !live.is_empty() {
            let s = live.len();
            let b = DMatrix::from_fn(s, s, |r, c| problem.entry(live[r], cols[c]));
            let lu = b.clone().lu();
            let rhs = DVector::from_iterator(s, live.iter().map(|&i| problem.rhs[i]));
            let cb = DVector::from_iterator(s, cols.iter().map(|&c| problem.objective[c]));
            if let Some(xb) = lu.solve(&rhs) {
                let mut refined = vec![0.0; m];
                for (idx, &c) in cols.iter().enumerate() {
                    refined[c] = xb[idx];
                }
                let ok = refined.iter().all(|v| v.is_finite() && *v >= -1e-9);
                if ok && problem.residual(&refined) <= problem.residual(&x) {
                    x = refined.into_iter().map(|v| v.max(0.0)).collect();
                }
            }
            if let Some(yb) = b.transpose().lu().solve(&cb) {
                if yb.iter().all(|v| v.is_finite()) {
                    for (idx, &i) in live.iter().enumerate() {
                        y[i] = yb[idx];
                    }
                }
            }
        }
        (x, y)
    }
}

/// Outcome of a convex-hull membership query.
#[derive(Debug, Clone, PartialEq)]
pub enum HullMembership {
    /// Convex weights reproducing the target.
    Inside(Vec<f64>),
    /// A hyperplane separating the target from every point.
    NotInHull(Separator),
}

impl HullMembership {
    pub fn weights(&self) -> Option<&[f64]> {
        match self {
            Self::Inside(w) => Some(w),
            Self::NotInHull(_) => None,
        }
    }
}

fn hull_rows(points: &PointCloud) -> Vec<Vec<f64>> {
    let mut rows = vec![vec![1.0; points.len()]];
    for d in 0..points.dim() {
        rows.push(points.iter().map(|p| p[d]).collect());
    }
    rows
}

/// Decides whether `target` is a convex combination of `points`.
pub fn hull_membership(points: &PointCloud, target: &[f64], feas_tol: f64) -> Result<HullMembership> {
    points.check_dim(target)?;
    let mut rhs = vec![1.0];
    rhs.extend_from_slice(target);
    let problem = LpProblem::new(vec![0.0; points.len()], hull_rows(points), rhs)?;
    let sol = solve_lp(&problem, feas_tol)?;
    match sol.status {
        LpStatus::Optimal => Ok(HullMembership::Inside(sol.solution.unwrap())),
        LpStatus::Infeasible => {
            // y0 + ŷ·x_i <= 0 on the cloud and y0 + ŷ·target > 0.
            let y = sol.farkas.unwrap();
            Ok(HullMembership::NotInHull(Separator {
                normal: y[1..].to_vec(),
                offset: -y[0],
            }))
        }
        LpStatus::Unbounded => unreachable!("zero objective"),
    }
}

/// Largest `t` such that `target` is a convex combination of `points` with
/// every weight at least `t`, together with such weights. `None` when the
/// target is outside the hull.
pub fn max_min_weight(points: &PointCloud, target: &[f64]) -> Result<Option<(f64, Vec<f64>)>> {
    points.check_dim(target)?;
    let n_pts = points.len();
    // Variables: w (N), t (1), s (N) with w_i − t − s_i = 0.
    let m = 2 * n_pts + 1;
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for base in hull_rows(points) {
        let mut row = base;
        row.resize(m, 0.0);
        rows.push(row);
    }
    rhs.push(1.0);
    rhs.extend_from_slice(target);
    for i in 0..n_pts {
        let mut row = vec![0.0; m];
        row[i] = 1.0;
        row[n_pts] = -1.0;
        row[n_pts + 1 + i] = -1.0;
        rows.push(row);
        rhs.push(0.0);
    }
    let mut objective = vec![0.0; m];
    objective[n_pts] = -1.0;
    let sol = solve_lp(&LpProblem::new(objective, rows, rhs)?, DEFAULT_FEAS_TOL)?;
    match sol.status {
        LpStatus::Optimal => {
            let x = sol.solution.unwrap();
            Ok(Some((x[n_pts], x[..n_pts].to_vec())))
        }
        _ => Ok(None),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(obj: Vec<f64>, rows: Vec<Vec<f64>>, rhs: Vec<f64>) -> LpProblem {
        LpProblem::new(obj, rows, rhs).unwrap()
    }

    #[test]
    fn symmetric_feasible_point() {
        let p = lp(vec![0.0, 0.0], vec![vec![1.0, -1.0], vec![1.0, 1.0]], vec![0.0, 1.0]);
        let s = solve_lp(&p, 1e-8).unwrap();
        assert_eq!(s.status, LpStatus::Optimal);
        let t = s.solution.unwrap();
        assert!((t[0] - 0.5).abs() < 1e-12 && (t[1] - 0.5).abs() < 1e-12);
    }

    #[test]
    fn corner_of_simplex() {
        let p = lp(vec![1.0, 0.0], vec![vec![1.0, 1.0]], vec![1.0]);
        let s = solve_lp(&p, 1e-8).unwrap();
        assert_eq!(s.value, Some(0.0));
        assert_eq!(s.solution.unwrap(), vec![0.0, 1.0]);
    }

    #[test]
    fn sign_contradiction_is_infeasible() {
        let p = lp(vec![0.0], vec![vec![1.0]], vec![-1.0]);
        let s = solve_lp(&p, 1e-8).unwrap();
        assert_eq!(s.status, LpStatus::Infeasible);
        let y = s.farkas.unwrap();
        // yᵀA <= 0, yᵀb > 0
        assert!(y[0] * 1.0 <= 1e-12);
        assert!(-y[0] > 0.0);
    }

    #[test]
    fn detects_unbounded() {
        // minimize −t1 with t1 − t2 = 0
        let p = lp(vec![-1.0, 0.0], vec![vec![1.0, -1.0]], vec![0.0]);
        assert_eq!(solve_lp(&p, 1e-8).unwrap().status, LpStatus::Unbounded);
    }

    #[test]
    fn dimension_mismatch_rejected() {
        assert!(matches!(
            LpProblem::new(vec![1.0, 2.0], vec![vec![1.0]], vec![1.0]),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(matches!(
            LpProblem::new(vec![1.0], vec![vec![1.0]], vec![1.0, 2.0]),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn nonpositive_tolerance_rejected() {
        let p = lp(vec![1.0], vec![vec![1.0]], vec![1.0]);
        assert!(matches!(solve_lp(&p, 0.0), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn iteration_cap_reports_no_convergence() {
        let p = lp(
            vec![-1.0, -1.0, 0.0, 0.0],
            vec![vec![1.0, 0.0, 1.0, 0.0], vec![0.0, 1.0, 0.0, 1.0]],
            vec![1.0, 1.0],
        );
        let opts = LpOptions {
            max_iters: Some(1),
            ..LpOptions::default()
        };
        match solve_lp_with(&p, &opts) {
            Err(Error::NoConvergence { cap, .. }) => assert_eq!(cap, 1),
            other => panic!("expected NoConvergence, got {other:?}"),
        }
    }

    #[test]
    fn redundant_rows_are_tolerated() {
        let p = lp(
            vec![1.0, 2.0],
            vec![vec![1.0, 1.0], vec![2.0, 2.0]],
            vec![1.0, 2.0],
        );
        let s = solve_lp(&p, 1e-8).unwrap();
        assert_eq!(s.value, Some(1.0));
    }

    #[test]
    fn duals_certify_optimality() {
        // minimize 2a + 3b + c, a + b + c = 1, a − b = 0.2
        let p = lp(
            vec![2.0, 3.0, 1.0],
            vec![vec![1.0, 1.0, 1.0], vec![1.0, -1.0, 0.0]],
            vec![1.0, 0.2],
        );
        let s = solve_lp(&p, 1e-8).unwrap();
        let y = s.duals.clone().unwrap();
        let dual_obj = y[0] * 1.0 + y[1] * 0.2;
        assert!((dual_obj - s.value.unwrap()).abs() < 1e-12);
        for j in 0..3 {
            let red = p.objective()[j] - (y[0] * p.row(0)[j] + y[1] * p.row(1)[j]);
            assert!(red >= -1e-12);
        }
    }

    #[test]
    fn hull_membership_midpoint() {
        let cloud = PointCloud::from_rows(vec![vec![-1.0], vec![1.0]]).unwrap();
        let w = hull_membership(&cloud, &[0.0], 1e-8).unwrap();
        assert_eq!(w.weights().unwrap(), &[0.5, 0.5]);
    }

    #[test]
    fn hull_membership_segment_misses_origin() {
        let cloud = PointCloud::from_rows(vec![vec![1.0, 0.0], vec![0.0, 1.0]]).unwrap();
        match hull_membership(&cloud, &[0.0, 0.0], 1e-8).unwrap() {
            HullMembership::NotInHull(sep) => {
                for p in cloud.iter() {
                    assert!(sep.excess(p) <= 1e-12);
                }
                assert!(sep.excess(&[0.0, 0.0]) > 0.0);
            }
            other => panic!("expected NotInHull, got {other:?}"),
        }
    }

    #[test]
    fn hull_membership_simplex_barycenter() {
        // Oracle: barycentric coordinates of the centroid of any triangle are
        // (1/3, 1/3, 1/3), from solving the 3×3 system [1 1 1; x; y] w = [1; cx; cy].
        let s = 3f64.sqrt();
        let cloud = PointCloud::from_rows(vec![
            vec![1.0 / s, 0.0],
            vec![-0.5 / s, 0.5],
            vec![-0.5 / s, -0.5],
        ])
        .unwrap();
        let w = hull_membership(&cloud, &[0.0, 0.0], 1e-8).unwrap();
        for wi in w.weights().unwrap() {
            assert!((wi - 1.0 / 3.0).abs() < 1e-12);
        }
    }

    #[test]
    fn hull_membership_dimension_mismatch() {
        let cloud = PointCloud::from_rows(vec![vec![1.0, 0.0]]).unwrap();
        assert!(matches!(
            hull_membership(&cloud, &[0.0], 1e-8),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn max_min_weight_of_centroid() {
        let cloud = PointCloud::from_rows(vec![vec![-1.0], vec![1.0]]).unwrap();
        let (t, _) = max_min_weight(&cloud, &[0.0]).unwrap().unwrap();
        assert!((t - 0.5).abs() < 1e-12);
        let (t, _) = max_min_weight(&cloud, &[1.0]).unwrap().unwrap();
        assert!(t.abs() < 1e-12);
        assert!(max_min_weight(&cloud, &[2.0]).unwrap().is_none());
    }
}
