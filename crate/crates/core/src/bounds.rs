//! Variance bounds in terms of the support and the barycenter.
//!
//! For `μ` supported on a compact `K` with barycenter `x̄`,
//!
//! ```text
//! Var(μ) <= −|x̄|² − φ_K**(x̄)
//! ```
//!
//! which reduces to `(k̄ − x̄)(x̄ − k̲)` on an interval. Maximizing over `x̄`
//! gives `R²`, the squared radius of the smallest ball containing `K`.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::conjugate::{envelope, Envelope};
use crate::error::{Error, Result, Separator};
use crate::geometry::{min_enclosing_ball, Ball, PointCloud, Shape};
use crate::lp::{hull_membership, max_min_weight, solve_lp, HullMembership, LpProblem, LpStatus, DEFAULT_FEAS_TOL};
use crate::vecops;

/// Weight-sum tolerance for [`AtomicMeasure`].
pub const WEIGHT_SUM_TOL: f64 = 1e-12;
/// Minimum weight that certifies a barycenter as interior.
pub const INTERIOR_MARGIN: f64 = 1e-6;
/// Boundary mesh size used when an ellipse must be discretized.
pub const DEFAULT_CURVED_RESOLUTION: usize = 256;

/// Finitely supported probability measure.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawMeasure")]
pub struct AtomicMeasure {
    atoms: PointCloud,
    weights: Vec<f64>,
}

#[derive(Deserialize)]
struct RawMeasure {
    atoms: PointCloud,
    weights: Vec<f64>,
}

impl TryFrom<RawMeasure> for AtomicMeasure {
    type Error = Error;

    fn try_from(raw: RawMeasure) -> Result<Self> {
        Self::new(raw.atoms, raw.weights)
    }
}

impl AtomicMeasure {
    pub fn new(atoms: PointCloud, weights: Vec<f64>) -> Result<Self> {
        if weights.len() != atoms.len() {
            return Err(Error::DimensionMismatch {
                expected: atoms.len(),
                found: weights.len(),
            });
        }
        if let Some(w) = weights.iter().find(|w| !(**w >= 0.0) || !w.is_finite()) {
            return Err(Error::InvalidInput(format!("negative or non-finite weight {w}")));
        }
        let total: f64 = weights.iter().sum();
        if (total - 1.0).abs() > WEIGHT_SUM_TOL {
            return Err(Error::InvalidInput(format!("weights sum to {total}, not 1")));
        }
        Ok(Self { atoms, weights })
    }

    /// Normalizes nonnegative weights with a positive total.
    pub fn from_unnormalized(atoms: PointCloud, weights: Vec<f64>) -> Result<Self> {
        let total: f64 = weights.iter().map(|w| w.max(0.0)).sum();
        if !(total > 0.0) {
            return Err(Error::InvalidInput("weights have no positive mass".into()));
        }
        let weights = weights.iter().map(|w| w.max(0.0) / total).collect();
        Self::new(atoms, weights)
    }

    pub fn uniform(atoms: PointCloud) -> Self {
        let w = 1.0 / atoms.len() as f64;
        let weights = vec![w; atoms.len()];
        Self { atoms, weights }
    }

    pub fn dirac(point: Vec<f64>) -> Result<Self> {
        let dim = point.len();
        Ok(Self {
            atoms: PointCloud::new(dim, point)?,
            weights: vec![1.0],
        })
    }

    pub fn atoms(&self) -> &PointCloud {
        &self.atoms
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn dim(&self) -> usize {
        self.atoms.dim()
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn mean(&self) -> Vec<f64> {
        mean(self)
    }

    pub fn variance(&self) -> f64 {
        variance(self)
    }

    /// Atoms with weight above `tol`, with their weights.
    pub fn positive_part(&self, tol: f64) -> Vec<(&[f64], f64)> {
        self.atoms
            .iter()
            .zip(&self.weights)
            .filter(|(_, w)| **w > tol)
            .map(|(p, w)| (p, *w))
            .collect()
    }

    pub fn translated(&self, w: &[f64]) -> Self {
        Self {
            atoms: self.atoms.translated(w),
            weights: self.weights.clone(),
        }
    }

    pub fn scaled(&self, s: f64) -> Self {
        Self {
            atoms: self.atoms.scaled(s),
            weights: self.weights.clone(),
        }
    }

    pub fn to_json(&self) -> Result<String> {
        crate::json::to_string(self)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }
}

/// `x̄(μ) = Σ w_i x_i`
pub fn mean(measure: &AtomicMeasure) -> Vec<f64> {
    let mut m = vec![0.0; measure.dim()];
    for (p, w) in measure.atoms.iter().zip(&measure.weights) {
        vecops::axpy(&mut m, *w, p);
    }
    m
}

/// `Var(μ) = Σ w_i |x_i − x̄|²`
pub fn variance(measure: &AtomicMeasure) -> f64 {
    let m = mean(measure);
    measure
        .atoms
        .iter()
        .zip(&measure.weights)
        .map(|(p, w)| w * vecops::dist_sq(p, &m))
        .sum()
}

/// `(k̄ − x̄)(x̄ − k̲)`
pub fn bd_1d(k_lo: f64, k_hi: f64, xbar: f64) -> Result<f64> {
    if !(k_lo <= xbar && xbar <= k_hi) {
        return Err(Error::Domain(format!("mean {xbar} outside [{k_lo}, {k_hi}]")));
    }
    Ok((k_hi - xbar) * (xbar - k_lo))
}

/// `¼(k̄ − k̲)²`
pub fn popoviciu(k_lo: f64, k_hi: f64) -> Result<f64> {
    if !(k_lo <= k_hi) {
        return Err(Error::Domain(format!("empty interval [{k_lo}, {k_hi}]")));
    }
    Ok(0.25 * (k_hi - k_lo).powi(2))
}

/// `−φ_K**(x)` where a closed form is available, assuming `x ∈ conv(K)`.
pub fn concave_envelope_closed_form(shape: &Shape, x: &[f64]) -> Option<f64> {
    match shape {
        Shape::Interval { lo, hi } => Some((lo + hi) * x[0] - lo * hi),
        Shape::Ball { radius, .. } => Some(radius * radius),
        Shape::Box { half_widths } => Some(half_widths.iter().map(|a| a * a).sum()),
        Shape::Diamond { a1, a2 } => {
            // The two far vertices and the near vertex on the side of x span a
            // triangle on which |x|² interpolates affinely.
            let (far, near, across) = if a1 >= a2 { (*a1, *a2, x[1]) } else { (*a2, *a1, x[0]) };
            Some(far * far - (far * far - near * near) / near * across.abs())
        }
        Shape::Ellipse { .. } | Shape::Cloud { .. } => None,
    }
}

fn analytic_separator(shape: &Shape, x: &[f64]) -> Option<Separator> {
    match shape {
        Shape::Interval { lo, hi } => Some(if x[0] > *hi {
            Separator { normal: vec![1.0], offset: *hi }
        } else {
            Separator { normal: vec![-1.0], offset: -lo }
        }),
        Shape::Ball { radius, .. } => Some(Separator {
            normal: vecops::scale(x, 1.0 / vecops::norm(x)),
            offset: *radius,
        }),
        Shape::Box { half_widths } => {
            let (i, a) = x
                .iter()
                .zip(half_widths)
                .enumerate()
                .map(|(i, (v, a))| (i, v.abs() - a))
                .max_by(|a, b| a.1.total_cmp(&b.1))?;
            let _ = a;
            let mut normal = vec![0.0; x.len()];
            normal[i] = x[i].signum();
            Some(Separator { normal, offset: half_widths[i] })
        }
        Shape::Diamond { a1, a2 } => Some(Separator {
            normal: vec![x[0].signum() / a1, x[1].signum() / a2],
            offset: 1.0,
        }),
        Shape::Ellipse { a, b } => {
            let normal = vec![x[0] / (a * a), x[1] / (b * b)];
            let offset = ((a * normal[0]).powi(2) + (b * normal[1]).powi(2)).sqrt();
            Some(Separator { normal, offset })
        }
        Shape::Cloud { .. } => None,
    }
}

/// Result of the envelope LP on a cloud: the bound and the weights of the
/// measure attaining it.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundWitness {
    pub bound: f64,
    pub maximizer: AtomicMeasure,
}

/// `max Var(μ)` over measures on `cloud` with barycenter `xbar`, with an
/// optimal measure.
pub fn bhatia_davis_lp(cloud: &PointCloud, xbar: &[f64]) -> Result<BoundWitness> {
    match envelope(cloud, xbar)? {
        Envelope::Inside { biconjugate, weights } => {
            let maximizer = AtomicMeasure::from_unnormalized(cloud.clone(), weights)?;
            Ok(BoundWitness {
                bound: -vecops::norm_sq(xbar) - biconjugate,
                maximizer,
            })
        }
        Envelope::Outside(sep) => Err(Error::NotInHull { certificate: Some(sep) }),
    }
}

/// `−|x̄|² − φ_K**(x̄)`: the largest variance of any measure on the shape with
/// barycenter `xbar`.
///
/// Interval, ball, box and diamond use closed forms. Ellipses are replaced by
/// an inscribed polygon of [`DEFAULT_CURVED_RESOLUTION`] vertices, which can
/// only shrink the bound.
pub fn bhatia_davis_bound(shape: &Shape, xbar: &[f64]) -> Result<f64> {
    shape.check_dim(xbar)?;
    match shape {
        Shape::Cloud { points } => Ok(bhatia_davis_lp(points, xbar)?.bound),
        Shape::Ellipse { .. } => {
            if !shape.contains(xbar) {
                return Err(Error::NotInHull {
                    certificate: analytic_separator(shape, xbar),
                });
            }
            let mesh = shape.sample(DEFAULT_CURVED_RESOLUTION, 0)?;
            Ok(bhatia_davis_lp(&mesh, xbar)?.bound)
        }
        _ => {
            if !shape.contains(xbar) {
                return Err(Error::NotInHull {
                    certificate: analytic_separator(shape, xbar),
                });
            }
            let env = concave_envelope_closed_form(shape, xbar).expect("closed form exists");
            Ok(env - vecops::norm_sq(xbar))
        }
    }
}

/// The variance maximizer over all measures on a cloud together with the
/// enclosing-ball value it attains.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DualityReport {
    pub primal_value: f64,
    pub dual_value: f64,
    pub gap: f64,
    pub dual_center: Vec<f64>,
    pub enclosing_ball: Ball,
    pub maximizer: AtomicMeasure,
}

/// Maximizes variance over all measures on `cloud`. The value is `R²` for the
/// smallest enclosing ball `B_R(q)`, attained by a measure on the cloud points
/// lying on `∂B_R(q)` with barycenter `q`.
pub fn max_variance(cloud: &PointCloud) -> Result<DualityReport> {
    let meb = min_enclosing_ball(cloud);
    let r = meb.radius();
    let q = meb.center().to_vec();
    if cloud.len() < 2 || r == 0.0 {
        let maximizer = AtomicMeasure::dirac(cloud.point(0).to_vec())?;
        return Ok(DualityReport {
            primal_value: 0.0,
            dual_value: 0.0,
            gap: 0.0,
            dual_center: cloud.point(0).to_vec(),
            enclosing_ball: Ball::new(cloud.point(0).to_vec(), 0.0)?,
            maximizer,
        });
    }
    let dist_tol = 1e-7 * (1.0 + r);
    let mut boundary: Vec<usize> = (0..cloud.len())
        .filter(|&i| meb.ball.depth(cloud.point(i)) <= dist_tol)
        .collect();
    let mut membership = hull_membership(&cloud.subset(&boundary)?, &q, DEFAULT_FEAS_TOL)?;
    if membership.weights().is_none() {
        boundary = meb.support.clone();
        membership = hull_membership(&cloud.subset(&boundary)?, &q, DEFAULT_FEAS_TOL)?;
    }
    let HullMembership::Inside(weights) = membership else {
        return Err(Error::Domain("enclosing ball center outside its support hull".into()));
    };
    let (atoms, w): (Vec<usize>, Vec<f64>) = boundary
        .iter()
        .zip(&weights)
        .filter(|(_, w)| **w > 0.0)
        .map(|(i, w)| (*i, *w))
        .unzip();
    let maximizer = AtomicMeasure::from_unnormalized(cloud.subset(&atoms)?, w)?;
    let primal = maximizer.variance();
    let dual = r * r;
    Ok(DualityReport {
        primal_value: primal,
        dual_value: dual,
        gap: (primal - dual).abs(),
        dual_center: q,
        enclosing_ball: meb.ball,
        maximizer,
    })
}

/// Optimum of `max Σ w_i|x_i|²` over zero-mean probability vectors.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ZeroMeanOptimum {
    pub value: f64,
    pub maximizer: AtomicMeasure,
}

pub fn zero_mean_program(cloud: &PointCloud) -> Result<ZeroMeanOptimum> {
    let origin = vec![0.0; cloud.dim()];
    let witness = bhatia_davis_lp(cloud, &origin)?;
    Ok(ZeroMeanOptimum {
        value: witness.bound,
        maximizer: witness.maximizer,
    })
}

/// `sup_{μ ∈ P₀(K)} ∫|x|² dμ`, which equals `−φ_K**(0)`.
pub fn primal_lp_value(cloud: &PointCloud) -> Result<f64> {
    Ok(zero_mean_program(cloud)?.value)
}

/// Dimension of the affine hull of the cloud.
pub fn affine_dimension(cloud: &PointCloud) -> usize {
    if cloud.len() < 2 {
        return 0;
    }
    let base = cloud.point(0);
    let scale = cloud.iter().map(|p| vecops::dist(p, base)).fold(0.0, f64::max);
    if scale == 0.0 {
        return 0;
    }
    let m = DMatrix::from_fn(cloud.len() - 1, cloud.dim(), |i, j| {
        (cloud.point(i + 1)[j] - base[j]) / scale
    });
    m.rank(1e-10)
}

/// Largest minimum weight over convex representations of `x`, provided the
/// hull is full-dimensional; `None` when `x` is not inside or the hull is flat.
/// A margin of at least [`INTERIOR_MARGIN`] certifies `x ∈ int conv(K)`.
pub fn interior_margin(cloud: &PointCloud, x: &[f64]) -> Result<Option<f64>> {
    if affine_dimension(cloud) < cloud.dim() {
        return Ok(None);
    }
    Ok(max_min_weight(cloud, x)?.map(|(t, _)| t))
}

fn require_interior(cloud: &PointCloud, x: &[f64]) -> Result<f64> {
    match interior_margin(cloud, x)? {
        Some(t) if t >= INTERIOR_MARGIN => Ok(t),
        Some(t) => Err(Error::Domain(format!(
            "point is not interior to the hull (max-min weight {t:e} < {INTERIOR_MARGIN:e})"
        ))),
        None => Err(Error::Domain("hull is flat or misses the point".into())),
    }
}

/// Both sides of the zero-mean strong duality
///
/// ```text
/// sup_{μ ∈ P₀(K)} ∫|x|² dμ  =  inf_q  max_{x∈K} |x − q|² − |q|²
/// ```
///
/// computed by two separate programs. The optimal zero-mean measure lives on
/// the sphere of radius `R = max|x − q|` about the optimal `q`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DualityCheck {
    pub primal_value: f64,
    pub dual_value: f64,
    pub gap: f64,
    pub dual_center: Vec<f64>,
    pub dual_radius: f64,
    pub maximizer: AtomicMeasure,
    /// Largest distance from `∂B_R(q)` of a positive-mass atom of the maximizer.
    pub support_offset: f64,
    pub interior_margin: f64,
}

/// Minimizes `max_i |x_i|² − 2 q·x_i` over `q` as an LP in `(q⁺, q⁻, h)`.
fn dual_program(cloud: &PointCloud) -> Result<Vec<f64>> {
    let n = cloud.dim();
    let m = 2 * n + 1 + cloud.len();
    let mut rows = Vec::with_capacity(cloud.len());
    let mut rhs = Vec::with_capacity(cloud.len());
    for (i, x) in cloud.iter().enumerate() {
        let mut row = vec![0.0; m];
        for d in 0..n {
            row[d] = 2.0 * x[d];
            row[n + d] = -2.0 * x[d];
        }
        row[2 * n] = 1.0;
        row[2 * n + 1 + i] = -1.0;
        rows.push(row);
        rhs.push(vecops::norm_sq(x));
    }
    let mut objective = vec![0.0; m];
    objective[2 * n] = 1.0;
    let sol = solve_lp(&LpProblem::new(objective, rows, rhs)?, DEFAULT_FEAS_TOL)?;
    match sol.status {
        LpStatus::Optimal => {
            let t = sol.solution.unwrap();
            Ok((0..n).map(|d| t[d] - t[n + d]).collect())
        }
        status => Err(Error::Domain(format!("dual program is {status:?}"))),
    }
}

pub fn duality_check(cloud: &PointCloud) -> Result<DualityCheck> {
    let origin = vec![0.0; cloud.dim()];
    let margin = require_interior(cloud, &origin)?;
    let primal = zero_mean_program(cloud)?;
    let q = dual_program(cloud)?;
    let r = cloud.iter().map(|x| vecops::dist(x, &q)).fold(0.0, f64::max);
    let dual_value = r * r - vecops::norm_sq(&q);
    let support_offset = primal
        .maximizer
        .positive_part(0.0)
        .iter()
        .map(|(p, _)| (r - vecops::dist(p, &q)).abs())
        .fold(0.0, f64::max);
    Ok(DualityCheck {
        primal_value: primal.value,
        dual_value,
        gap: (primal.value - dual_value).abs(),
        dual_center: q,
        dual_radius: r,
        maximizer: primal.maximizer,
        support_offset,
        interior_margin: margin,
    })
}

pub fn duality_gap(cloud: &PointCloud) -> Result<f64> {
    Ok(duality_check(cloud)?.gap)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum EqualityVerdict {
    /// Every positive-mass atom is within tolerance of the sphere of a ball
    /// containing the cloud.
    Equal { witness: Ball },
    /// No enclosing ball passes near all positive-mass atoms; `offset` is the
    /// smallest achievable worst-case squared-distance slack.
    NotEqual { offset: f64 },
    /// The barycenter is not interior to the hull, where the characterization
    /// does not apply.
    Indeterminate,
}

/// Decides whether `measure` attains the bound for its barycenter by searching
/// for a ball containing `cloud` whose sphere carries the measure:
///
/// ```text
/// minimize e  s.t.  |x_i|² − 2x_i·c <= s  (all i),  |x_j|² − 2x_j·c >= s − e  (atoms j)
/// ```
///
/// with `s = R² − |c|²`.
pub fn equality_case(measure: &AtomicMeasure, cloud: &PointCloud, tol: f64) -> Result<EqualityVerdict> {
    cloud.check_dim(&measure.mean())?;
    let atoms: Vec<&[f64]> = measure.positive_part(0.0).into_iter().map(|(p, _)| p).collect();
    for a in &atoms {
        let (_, d) = cloud.nearest(a);
        if d > 1e-12 * (1.0 + vecops::norm(a)) {
            return Err(Error::InvalidInput("measure has an atom outside the cloud".into()));
        }
    }
    let xbar = measure.mean();
    match interior_margin(cloud, &xbar)? {
        Some(t) if t >= INTERIOR_MARGIN => {}
        _ => return Ok(EqualityVerdict::Indeterminate),
    }

    let n = cloud.dim();
    let (n_pts, n_atoms) = (cloud.len(), atoms.len());
    // Columns: c⁺ (n), c⁻ (n), s⁺, s⁻, e, slacks (N), surpluses (atoms).
    let e_col = 2 * n + 2;
    let m = e_col + 1 + n_pts + n_atoms;
    let row_for = |x: &[f64]| {
        let mut row = vec![0.0; m];
        for d in 0..n {
            row[d] = -2.0 * x[d];
            row[n + d] = 2.0 * x[d];
        }
        row[2 * n] = -1.0;
        row[2 * n + 1] = 1.0;
        row
    };
    let mut rows = Vec::with_capacity(n_pts + n_atoms);
    let mut rhs = Vec::with_capacity(n_pts + n_atoms);
    for (i, x) in cloud.iter().enumerate() {
        let mut row = row_for(x);
        row[e_col + 1 + i] = 1.0;
        rows.push(row);
        rhs.push(-vecops::norm_sq(x));
    }
    for (j, x) in atoms.iter().enumerate() {
        let mut row = row_for(x);
        row[e_col] = 1.0;
        row[e_col + 1 + n_pts + j] = -1.0;
        rows.push(row);
        rhs.push(-vecops::norm_sq(x));
    }
    let mut objective = vec![0.0; m];
    objective[e_col] = 1.0;
    let sol = solve_lp(&LpProblem::new(objective, rows, rhs)?, DEFAULT_FEAS_TOL)?;
    if !sol.is_optimal() {
        return Err(Error::Domain(format!("ball search program is {:?}", sol.status)));
    }
    let t = sol.solution.unwrap();
    let center: Vec<f64> = (0..n).map(|d| t[d] - t[n + d]).collect();
    let radius = cloud.iter().map(|x| vecops::dist(x, &center)).fold(0.0, f64::max);
    let witness = Ball::new(center, radius)?;
    let worst = atoms.iter().map(|a| witness.depth(a)).fold(0.0, f64::max);
    Ok(if worst <= tol {
        EqualityVerdict::Equal { witness }
    } else {
        EqualityVerdict::NotEqual { offset: t[e_col] }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::regular_simplex;

    fn cloud(rows: Vec<Vec<f64>>) -> PointCloud {
        PointCloud::from_rows(rows).unwrap()
    }

    fn unit_triangle() -> PointCloud {
        regular_simplex(2, 1.0, &[0.0, 0.0]).unwrap().vertices
    }

    fn square() -> PointCloud {
        cloud(vec![vec![1.0, 1.0], vec![1.0, -1.0], vec![-1.0, 1.0], vec![-1.0, -1.0]])
    }

    #[test]
    fn mean_and_variance_examples() {
        let m = AtomicMeasure::new(cloud(vec![vec![0.0], vec![1.0]]), vec![0.5, 0.5]).unwrap();
        assert_eq!(m.mean(), vec![0.5]);
        assert_eq!(m.variance(), 0.25);

        let c = [2.0, -1.0];
        let tri = AtomicMeasure::uniform(regular_simplex(2, 1.0, &c).unwrap().vertices);
        assert!(vecops::dist(&tri.mean(), &c) < 1e-12);
        assert!((tri.variance() - 1.0 / 3.0).abs() < 1e-12);

        let dirac = AtomicMeasure::dirac(vec![3.0, 4.0]).unwrap();
        assert_eq!(dirac.mean(), vec![3.0, 4.0]);
        assert_eq!(dirac.variance(), 0.0);
    }

    #[test]
    fn measure_validation() {
        let c = cloud(vec![vec![0.0], vec![1.0]]);
        assert!(AtomicMeasure::new(c.clone(), vec![0.5]).is_err());
        assert!(AtomicMeasure::new(c.clone(), vec![0.7, 0.7]).is_err());
        assert!(AtomicMeasure::new(c.clone(), vec![1.5, -0.5]).is_err());
        assert!(AtomicMeasure::new(c, vec![0.5, 0.5 + 1e-13]).is_ok());
    }

    #[test]
    fn measure_json_format() {
        let m = AtomicMeasure::new(cloud(vec![vec![0.0, 1.0], vec![2.0, 3.0]]), vec![0.25, 0.75]).unwrap();
        let s = m.to_json().unwrap();
        assert_eq!(
            s,
            "{\"atoms\":[[0.0000000000000000e0,1.0000000000000000e0],[2.0000000000000000e0,3.0000000000000000e0]],\
             \"weights\":[2.5000000000000000e-1,7.5000000000000000e-1]}"
        );
        assert_eq!(AtomicMeasure::from_json(&s).unwrap(), m);
        assert!(AtomicMeasure::from_json("{\"atoms\":[[0.0]],\"weights\":[0.5]}").is_err());
    }

    #[test]
    fn one_dimensional_bounds() {
        assert_eq!(bd_1d(0.0, 1.0, 0.5).unwrap(), 0.25);
        assert_eq!(bd_1d(0.0, 1.0, 0.0).unwrap(), 0.0);
        assert_eq!(bd_1d(-2.0, 3.0, 1.0).unwrap(), 6.0);
        assert!(matches!(bd_1d(0.0, 1.0, 1.5), Err(Error::Domain(_))));
        assert_eq!(popoviciu(0.0, 1.0).unwrap(), 0.25);
        assert_eq!(popoviciu(2.0, 2.0).unwrap(), 0.0);
        assert_eq!(popoviciu(-1.0, 3.0).unwrap(), 4.0);
    }

    #[test]
    fn closed_form_shapes() {
        let ball = Shape::ball(2, 1.0).unwrap();
        assert!((bhatia_davis_bound(&ball, &[0.6, 0.0]).unwrap() - 0.64).abs() < 1e-15);
        let bx = Shape::cuboid(vec![1.0, 1.0]).unwrap();
        assert_eq!(bhatia_davis_bound(&bx, &[0.0, 0.0]).unwrap(), 2.0);
        let diamond = Shape::diamond(2.0, 1.0).unwrap();
        assert_eq!(bhatia_davis_bound(&diamond, &[0.0, 0.0]).unwrap(), 4.0);
        let interval = Shape::interval(0.0, 1.0).unwrap();
        assert_eq!(bhatia_davis_bound(&interval, &[0.5]).unwrap(), 0.25);
    }

    #[test]
    fn diamond_closed_form_matches_vertex_lp() {
        for (a1, a2) in [(2.0, 1.0), (3.0, 0.5), (1.0, 2.0)] {
            let shape = Shape::diamond(a1, a2).unwrap();
            let verts = shape.sample(4, 0).unwrap();
            for x in [[0.0, 0.0], [0.3, 0.2], [-0.5, -0.1], [0.1, -0.4]] {
                if !shape.contains(&x) {
                    continue;
                }
                let closed = bhatia_davis_bound(&shape, &x).unwrap();
                let lp = bhatia_davis_lp(&verts, &x).unwrap().bound;
                assert!((closed - lp).abs() < 1e-12, "{a1} {a2} {x:?}: {closed} vs {lp}");
            }
        }
    }

    #[test]
    fn outside_hull_reports_certificate() {
        let ball = Shape::ball(2, 1.0).unwrap();
        match bhatia_davis_bound(&ball, &[2.0, 0.0]) {
            Err(Error::NotInHull { certificate: Some(sep) }) => assert!(sep.excess(&[2.0, 0.0]) > 0.0),
            other => panic!("{other:?}"),
        }
        let tri = Shape::cloud(unit_triangle());
        match bhatia_davis_bound(&tri, &[5.0, 5.0]) {
            Err(Error::NotInHull { certificate: Some(sep) }) => {
                assert!(unit_triangle().iter().all(|p| sep.excess(p) <= 1e-12));
                assert!(sep.excess(&[5.0, 5.0]) > 0.0);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn max_variance_examples() {
        let pair = cloud(vec![vec![-1.0], vec![1.0]]);
        let rep = max_variance(&pair).unwrap();
        assert_eq!(rep.dual_value, 1.0);
        assert!(rep.gap < 1e-15);
        assert_eq!(rep.maximizer.weights(), &[0.5, 0.5]);

        let rep = max_variance(&unit_triangle()).unwrap();
        assert!((rep.dual_value - 1.0 / 3.0).abs() < 1e-12);
        assert!(rep.gap < 1e-12);
        for w in rep.maximizer.weights() {
            assert!((w - 1.0 / 3.0).abs() < 1e-9);
        }

        let rep = max_variance(&square()).unwrap();
        assert!((rep.dual_value - 2.0).abs() < 1e-12);
        assert!(rep.gap < 1e-12);
        assert!(vecops::norm(&rep.maximizer.mean()) < 1e-9);

        let single = cloud(vec![vec![1.0, 2.0]]);
        let rep = max_variance(&single).unwrap();
        assert_eq!(rep.primal_value, 0.0);
        assert_eq!(rep.maximizer.mean(), vec![1.0, 2.0]);
    }

    #[test]
    fn primal_program_examples() {
        assert!((primal_lp_value(&cloud(vec![vec![-1.0], vec![1.0]])).unwrap() - 1.0).abs() < 1e-15);
        assert!((primal_lp_value(&unit_triangle()).unwrap() - 1.0 / 3.0).abs() < 1e-12);
        // Zero mean forces weights (1/3, 2/3): value 4/3 + 2/3.
        assert!((primal_lp_value(&cloud(vec![vec![-2.0], vec![1.0]])).unwrap() - 2.0).abs() < 1e-12);
        assert!(matches!(
            primal_lp_value(&cloud(vec![vec![1.0], vec![2.0]])),
            Err(Error::NotInHull { .. })
        ));
    }

    #[test]
    fn duality_examples() {
        let check = duality_check(&cloud(vec![vec![-1.0], vec![1.0]])).unwrap();
        assert!(check.gap < 1e-12);
        assert!((check.primal_value - 1.0).abs() < 1e-12);
        let check = duality_check(&unit_triangle()).unwrap();
        assert!(check.gap < 1e-12);
        assert!((check.dual_value - 1.0 / 3.0).abs() < 1e-12);
        assert!(check.support_offset < 1e-9);
    }

    #[test]
    fn duality_dual_center_need_not_be_enclosing_center() {
        // Minimal ball is centered at (0, 0.1) with R = 1 (value 0.99), but
        // the zero-mean optimum is 0.8833…, attained on a different sphere.
        let c = cloud(vec![vec![-1.0, 0.1], vec![1.0, 0.1], vec![0.0, -0.5], vec![0.0, 0.3]]);
        let check = duality_check(&c).unwrap();
        assert!((check.primal_value - 5.3 / 6.0).abs() < 1e-12, "{}", check.primal_value);
        assert!(check.gap < 1e-12);
        assert!(check.support_offset < 1e-9);
        let meb = min_enclosing_ball(&c);
        assert!((meb.radius() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn duality_requires_interior_origin() {
        let c = cloud(vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![0.0, 1.0]]);
        assert!(matches!(duality_check(&c), Err(Error::Domain(_))));
        let flat = cloud(vec![vec![-1.0, 0.0], vec![1.0, 0.0]]);
        assert!(matches!(duality_check(&flat), Err(Error::Domain(_))));
    }

    #[test]
    fn equality_case_examples() {
        let sq = square();
        let uniform = AtomicMeasure::uniform(sq.clone());
        assert!(matches!(
            equality_case(&uniform, &sq, 1e-9).unwrap(),
            EqualityVerdict::Equal { .. }
        ));

        let with_center = cloud(vec![
            vec![1.0, 1.0],
            vec![1.0, -1.0],
            vec![-1.0, 1.0],
            vec![-1.0, -1.0],
            vec![0.0, 0.0],
        ]);
        let m = AtomicMeasure::new(cloud(vec![vec![0.0, 0.0], vec![1.0, 1.0]]), vec![0.5, 0.5]).unwrap();
        assert!(matches!(
            equality_case(&m, &with_center, 1e-9).unwrap(),
            EqualityVerdict::NotEqual { .. }
        ));

        // Diamond: two far vertices plus one near vertex attain the bound.
        let diamond = Shape::diamond(2.0, 1.0).unwrap();
        let verts = diamond.sample(4, 0).unwrap();
        let three = AtomicMeasure::uniform(cloud(vec![vec![2.0, 0.0], vec![-2.0, 0.0], vec![0.0, 1.0]]));
        let bound = bhatia_davis_bound(&diamond, &three.mean()).unwrap();
        assert!((three.variance() - bound).abs() < 1e-9);
        match equality_case(&three, &verts, 1e-9).unwrap() {
            EqualityVerdict::Equal { witness } => {
                assert!((witness.radius - 2.5).abs() < 1e-9);
                assert!((witness.center[1] + 1.5).abs() < 1e-9);
            }
            other => panic!("{other:?}"),
        }
        // Both near vertices plus one far vertex do not.
        let wrong = AtomicMeasure::uniform(cloud(vec![vec![2.0, 0.0], vec![0.0, 1.0], vec![0.0, -1.0]]));
        assert!(wrong.variance() < bhatia_davis_bound(&diamond, &wrong.mean()).unwrap() - 1e-3);
        assert!(matches!(
            equality_case(&wrong, &verts, 1e-9).unwrap(),
            EqualityVerdict::NotEqual { .. }
        ));
    }

    #[test]
    fn equality_case_boundary_barycenter_is_indeterminate() {
        let sq = square();
        let edge = AtomicMeasure::new(cloud(vec![vec![1.0, 1.0], vec![1.0, -1.0]]), vec![0.5, 0.5]).unwrap();
        assert_eq!(equality_case(&edge, &sq, 1e-9).unwrap(), EqualityVerdict::Indeterminate);
    }

    #[test]
    fn equality_case_rejects_foreign_atoms() {
        let m = AtomicMeasure::dirac(vec![0.1, 0.1]).unwrap();
        assert!(equality_case(&m, &square(), 1e-9).is_err());
    }
}
