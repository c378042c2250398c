//! Moments of measures with bounded support diameter.
//!
//! If `spt μ` has diameter at most `d` then `Var_V(μ) <= v(r_n d)` with
//! `r_n = √(n / (2n + 2))`, with equality for the uniform measure on the
//! vertices of a regular simplex of side `d`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bounds::{max_variance, AtomicMeasure};
use crate::error::{Error, Result};
use crate::genvar::{generalized_variance, RadialCost};
use crate::geometry::{diameter, jung_radius, min_enclosing_ball, regular_simplex, single_linkage, PointCloud};
use crate::lp::{hull_membership, DEFAULT_FEAS_TOL};
use crate::vecops;

/// Tolerance of the inner minimizations run by the search.
pub const INNER_TOL: f64 = 1e-9;
const MIN_STEP: f64 = 1e-12;
const PROJECTION_SWEEPS: usize = 200;

/// `v(r_n d)`.
pub fn isodiametric_bound(n: usize, d: f64, cost: &RadialCost) -> f64 {
    cost.value(jung_radius(n) * d)
}

/// Uniform measure on the vertices of a regular `n`-simplex of side `d`
/// centered at the origin.
pub fn simplex_maximizer(n: usize, d: f64) -> Result<AtomicMeasure> {
    let spec = regular_simplex(n, d, &vec![0.0; n])?;
    Ok(AtomicMeasure::uniform(spec.vertices))
}

/// Random measure on `atoms` points rescaled about their centroid to
/// diameter exactly `d`, with random weights.
pub fn random_bounded_measure<R: Rng>(rng: &mut R, n: usize, d: f64, atoms: usize) -> AtomicMeasure {
    loop {
        let rows: Vec<Vec<f64>> = (0..atoms)
            .map(|_| (0..n).map(|_| rng.random_range(-1.0..1.0)).collect())
            .collect();
        let cloud = PointCloud::from_rows(rows).expect("nonempty");
        let diam = diameter(&cloud);
        if diam == 0.0 {
            continue;
        }
        let c = cloud.centroid();
        let scaled = cloud.translated(&vecops::scale(&c, -1.0)).scaled(d / diam);
        let w = (0..atoms).map(|_| rng.random_range(0.0..1.0)).collect();
        if let Ok(m) = AtomicMeasure::from_unnormalized(scaled, w) {
            return m;
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub n: usize,
    pub d: f64,
    pub atom_count: usize,
    pub restarts: usize,
    pub max_iters: usize,
    /// Initial atom step as a fraction of `d`.
    pub step: f64,
    pub seed: u64,
    pub cost: RadialCost,
}

impl SearchConfig {
    pub fn new(n: usize, d: f64, cost: RadialCost) -> Self {
        Self {
            n,
            d,
            atom_count: 2 * (n + 1),
            restarts: 20,
            max_iters: 2000,
            step: 0.1,
            seed: 0,
            cost,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::InvalidInput("dimension must be at least 1".into()));
        }
        if self.atom_count < self.n + 1 {
            return Err(Error::InvalidInput(format!(
                "need at least n + 1 = {} atoms, got {}",
                self.n + 1,
                self.atom_count
            )));
        }
        if !(self.d > 0.0) || !self.d.is_finite() {
            return Err(Error::InvalidInput(format!("diameter must be positive, got {}", self.d)));
        }
        if self.restarts == 0 {
            return Err(Error::InvalidInput("restarts must be at least 1".into()));
        }
        if !(self.step > 0.0) {
            return Err(Error::InvalidInput(format!("step must be positive, got {}", self.step)));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SearchResult {
    pub config: SearchConfig,
    /// `None` for restarts that failed to converge.
    pub per_restart_values: Vec<Option<f64>>,
    pub best_restart: usize,
    pub best_measure: AtomicMeasure,
    pub best_value: f64,
    /// `diameter(spt best_measure) − d`; nonpositive up to rounding.
    pub diameter_residual: f64,
    pub bound: f64,
}

impl SearchResult {
    /// Wraps a given measure as if it were the outcome of a search.
    pub fn from_measure(config: SearchConfig, measure: AtomicMeasure) -> Result<Self> {
        let value = generalized_variance(&measure, &config.cost, INNER_TOL)?.value;
        let residual = support_diameter(&measure) - config.d;
        Ok(Self {
            bound: isodiametric_bound(config.n, config.d, &config.cost),
            config,
            per_restart_values: vec![Some(value)],
            best_restart: 0,
            best_measure: measure,
            best_value: value,
            diameter_residual: residual,
        })
    }
}

fn support_diameter(measure: &AtomicMeasure) -> f64 {
    let idx: Vec<usize> = (0..measure.len()).filter(|&i| measure.weights()[i] > 0.0).collect();
    diameter(&measure.atoms().subset(&idx).expect("positive mass exists"))
}

/// Moves violating pairs symmetrically to distance `d`, then contracts about
/// the centroid if any excess remains.
fn project(points: &mut [Vec<f64>], d: f64) {
    for _ in 0..PROJECTION_SWEEPS {
        let mut worst = 0.0f64;
        for i in 0..points.len() {
            for j in i + 1..points.len() {
                let dist = vecops::dist(&points[i], &points[j]);
                if dist > d {
                    worst = worst.max(dist - d);
                    let shift = 0.5 * (dist - d) / dist;
                    let delta = vecops::sub(&points[j], &points[i]);
                    vecops::axpy(&mut points[i], shift, &delta);
                    vecops::axpy(&mut points[j], -shift, &delta);
                }
            }
        }
        if worst <= 1e-13 * d {
            break;
        }
    }
    let cloud = PointCloud::from_rows(points.to_vec()).expect("nonempty");
    let diam = diameter(&cloud);
    if diam > d {
        let c = cloud.centroid();
        let s = d / diam * (1.0 - 4.0 * f64::EPSILON);
        for p in points.iter_mut() {
            for k in 0..p.len() {
                p[k] = c[k] + s * (p[k] - c[k]);
            }
        }
    }
}

fn enclosing_radius(points: &[Vec<f64>]) -> f64 {
    min_enclosing_ball(&PointCloud::from_rows(points.to_vec()).expect("nonempty")).radius()
}

/// One restart in unit-diameter coordinates. Returns the configuration with
/// the largest enclosing radius found.
fn ascend(config: &SearchConfig, seed: u64) -> Vec<Vec<f64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut points: Vec<Vec<f64>> = (0..config.atom_count)
        .map(|_| (0..config.n).map(|_| rng.random_range(-0.5..0.5)).collect())
        .collect();
    project(&mut points, 1.0);
    let mut radius = enclosing_radius(&points);
    let mut step = config.step;
    for _ in 0..config.max_iters {
        if step < MIN_STEP {
            break;
        }
        let meb = min_enclosing_ball(&PointCloud::from_rows(points.clone()).expect("nonempty"));
        let z = meb.center();
        let mut trial = points.clone();
        for p in trial.iter_mut() {
            let dir = vecops::sub(p, z);
            let len = vecops::norm(&dir);
            if len > 0.0 {
                vecops::axpy(p, step / len, &dir);
            }
        }
        project(&mut trial, 1.0);
        let r = enclosing_radius(&trial);
        if r > radius {
            points = trial;
            radius = r;
        } else {
            step *= 0.5;
        }
    }
    points
}

/// Best measure supported on the configuration and its `Var_V`.
fn evaluate(config: &SearchConfig, points: Vec<Vec<f64>>) -> Result<(AtomicMeasure, f64)> {
    let cloud = PointCloud::from_rows(points)?.scaled(config.d);
    let measure = max_variance(&cloud)?.maximizer;
    let value = generalized_variance(&measure, &config.cost, INNER_TOL)?.value;
    Ok((measure, value))
}

/// Multi-restart local search for the largest `Var_V` over measures with
/// support diameter at most `d`.
///
/// For fixed atoms the best weights put mass on the atoms farthest from the
/// center of their smallest enclosing ball, with that center as barycenter;
/// the resulting value is `v(R)`. Each restart therefore pushes the atoms
/// radially away from that center, restores the diameter constraint, and
/// keeps the move only if `R` grows, halving the step otherwise. Restarts run
/// in parallel with seeds `seed + restart` and are reduced in index order.
pub fn search_max(config: &SearchConfig) -> Result<SearchResult> {
    config.validate()?;
    let outcomes: Vec<Result<(AtomicMeasure, f64)>> = (0..config.restarts)
        .into_par_iter()
        .map(|r| evaluate(config, ascend(config, config.seed.wrapping_add(r as u64))))
        .collect();

    let per_restart_values: Vec<Option<f64>> = outcomes.iter().map(|o| o.as_ref().ok().map(|(_, v)| *v)).collect();
    let mut best: Option<(usize, AtomicMeasure, f64)> = None;
    let mut last_err = None;
    for (r, outcome) in outcomes.into_iter().enumerate() {
        match outcome {
            Ok((m, v)) => {
                if best.as_ref().is_none_or(|b| v > b.2) {
                    best = Some((r, m, v));
                }
            }
            Err(e) => last_err = Some(e),
        }
    }
    let Some((best_restart, best_measure, best_value)) = best else {
        return Err(last_err.expect("at least one restart"));
    };
    let diameter_residual = support_diameter(&best_measure) - config.d;
    Ok(SearchResult {
        config: config.clone(),
        per_restart_values,
        best_restart,
        best_measure,
        best_value,
        diameter_residual,
        bound: isodiametric_bound(config.n, config.d, &config.cost),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimplexCheck {
    pub value_ok: bool,
    pub clusters: usize,
    pub cluster_masses: Vec<f64>,
    /// Largest `|dist(cluster_i, cluster_j) − d|` over cluster means.
    pub distance_error: f64,
    /// Largest distance of an atom from its cluster mean.
    pub cluster_radius: f64,
    pub tol_geom: f64,
    pub optimal: bool,
}

/// Groups the positive-mass atoms of `measure` by single linkage at
/// `tol_geom`, returning cluster means and masses.
fn clusters(measure: &AtomicMeasure, tol_geom: f64) -> (Vec<Vec<f64>>, Vec<f64>, f64) {
    let part = measure.positive_part(0.0);
    let pts: Vec<&[f64]> = part.iter().map(|(p, _)| *p).collect();
    let groups = single_linkage(&pts, tol_geom);
    let mut means = Vec::with_capacity(groups.len());
    let mut masses = Vec::with_capacity(groups.len());
    let mut radius = 0.0f64;
    for g in &groups {
        let mass: f64 = g.iter().map(|&i| part[i].1).sum();
        let mut mean = vec![0.0; measure.dim()];
        for &i in g {
            vecops::axpy(&mut mean, part[i].1 / mass, pts[i]);
        }
        for &i in g {
            radius = radius.max(vecops::dist(pts[i], &mean));
        }
        means.push(mean);
        masses.push(mass);
    }
    (means, masses, radius)
}

/// Whether a search outcome is the simplex maximizer: its value reaches the
/// bound within `tol`, and its mass sits in `n + 1` clusters of mass
/// `1/(n+1) ± tol` that are pairwise `d` apart within
/// `tol_geom = max(10⁻³ d, 10·INNER_TOL)`.
pub fn verify_simplex_optimality(result: &SearchResult, n: usize, d: f64, tol: f64) -> SimplexCheck {
    let tol_geom = (1e-3 * d).max(10.0 * INNER_TOL);
    let value_ok = result.best_value >= isodiametric_bound(n, d, &result.config.cost) - tol;
    let (means, masses, cluster_radius) = clusters(&result.best_measure, tol_geom);
    let mut distance_error = 0.0f64;
    for i in 0..means.len() {
        for j in i + 1..means.len() {
            distance_error = distance_error.max((vecops::dist(&means[i], &means[j]) - d).abs());
        }
    }
    let target = 1.0 / (n + 1) as f64;
    let optimal = value_ok
        && means.len() == n + 1
        && cluster_radius <= tol_geom
        && distance_error <= tol_geom
        && masses.iter().all(|m| (m - target).abs() <= tol);
    SimplexCheck {
        value_ok,
        clusters: means.len(),
        cluster_masses: masses,
        distance_error,
        cluster_radius,
        tol_geom,
        optimal,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Tension {
    OriginOutsideHull,
    /// Origin in the hull with `r` below the threshold `r_n`, where no
    /// conclusion follows.
    OriginInHullBelowThreshold,
    OriginInHullSimplexVertices,
    /// Origin in the hull with `r > r_n`: impossible for valid inputs.
    OriginInHullViolation,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TensionReport {
    pub classification: Tension,
    pub threshold: f64,
    pub origin_in_hull: bool,
    pub simplex_pattern: bool,
}

/// Whether `points` match the vertex pattern of a unit `n`-simplex: `n + 1`
/// clusters whose means are pairwise `1 ± tol` apart.
fn unit_simplex_pattern(points: &PointCloud, tol: f64) -> bool {
    let m = AtomicMeasure::uniform(points.clone());
    let (means, _, _) = clusters(&m, tol.max(1e-9));
    means.len() == points.dim() + 1
        && (0..means.len())
            .all(|i| (i + 1..means.len()).all(|j| (vecops::dist(&means[i], &means[j]) - 1.0).abs() <= tol.max(1e-9)))
}

/// Classifies a set on the centered sphere of radius `r` with diameter at
/// most 1: if `r > r_n` the origin cannot be in its hull, and at `r = r_n`
/// it can only be when the points are the vertices of a unit simplex.
pub fn tension_check(points: &PointCloud, r: f64, tol: f64) -> Result<TensionReport> {
    if let Some(p) = points.iter().find(|p| (vecops::norm(p) - r).abs() > tol) {
        return Err(Error::Domain(format!(
            "point at distance {} from the origin is off the sphere of radius {r}",
            vecops::norm(p)
        )));
    }
    let diam = diameter(points);
    if diam > 1.0 + tol {
        return Err(Error::Domain(format!("diameter {diam} exceeds 1")));
    }
    let threshold = jung_radius(points.dim());
    let origin = vec![0.0; points.dim()];
    let origin_in_hull = hull_membership(points, &origin, DEFAULT_FEAS_TOL)?.weights().is_some();
    let simplex_pattern = unit_simplex_pattern(points, tol);
    let classification = if !origin_in_hull {
        Tension::OriginOutsideHull
    } else if r > threshold + tol {
        Tension::OriginInHullViolation
    } else if r >= threshold - tol && simplex_pattern {
        Tension::OriginInHullSimplexVertices
    } else {
        Tension::OriginInHullBelowThreshold
    };
    Ok(TensionReport {
        classification,
        threshold,
        origin_in_hull,
        simplex_pattern,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct JungReport {
    pub radius: f64,
    pub diameter: f64,
    pub bound: f64,
    pub ok: bool,
    pub tight: bool,
    /// Indices of `n + 1` points pairwise `diameter` apart, when tight.
    pub simplex: Option<Vec<usize>>,
}

/// Backtracking search for `size` candidates pairwise at distance `target`.
fn find_clique(cloud: &PointCloud, candidates: &[usize], size: usize, target: f64, tol: f64) -> Option<Vec<usize>> {
    fn extend(
        cloud: &PointCloud,
        candidates: &[usize],
        from: usize,
        chosen: &mut Vec<usize>,
        size: usize,
        target: f64,
        tol: f64,
    ) -> bool {
        if chosen.len() == size {
            return true;
        }
        for k in from..candidates.len() {
            let c = candidates[k];
            if chosen
                .iter()
                .all(|&o| (vecops::dist(cloud.point(o), cloud.point(c)) - target).abs() <= tol)
            {
                chosen.push(c);
                if extend(cloud, candidates, k + 1, chosen, size, target, tol) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }
    let mut chosen = Vec::with_capacity(size);
    extend(cloud, candidates, 0, &mut chosen, size, target, tol).then_some(chosen)
}

/// Checks `R <= r_n · diam` for the smallest enclosing ball, and when the
/// bound is attained within `tol` looks for the regular simplex responsible.
pub fn jung_verify(cloud: &PointCloud, tol: f64) -> JungReport {
    let n = cloud.dim();
    let meb = min_enclosing_ball(cloud);
    let radius = meb.radius();
    let diam = diameter(cloud);
    let bound = jung_radius(n) * diam;
    let tight = radius >= bound - tol && diam > 0.0;
    let simplex = if tight {
        let candidates: Vec<usize> = (0..cloud.len())
            .filter(|&i| meb.ball.depth(cloud.point(i)) <= tol + 1e-9 * (1.0 + radius))
            .collect();
        find_clique(cloud, &candidates, n + 1, diam, tol.max(1e-9 * diam))
    } else {
        None
    };
    JungReport {
        radius,
        diameter: diam,
        bound,
        ok: radius <= bound + 1e-9,
        tight,
        simplex,
    }
}
