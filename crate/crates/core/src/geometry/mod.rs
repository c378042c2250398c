//! Point clouds, diameters, enclosing balls, regular simplices and the
//! sample shapes used throughout the crate.

mod meb;
mod shape;
mod simplex;

use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::vecops;

pub use meb::{circumball, min_enclosing_ball, min_enclosing_ball_seeded, EnclosingBall};
pub use shape::Shape;
pub use simplex::{jung_radius, regular_simplex, SimplexSpec};

/// A nonempty finite set of points in `ℝⁿ`, stored row-major.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<f64>>", into = "Vec<Vec<f64>>")]
pub struct PointCloud {
    dim: usize,
    coords: Vec<f64>,
}

impl PointCloud {
    pub fn new(dim: usize, coords: Vec<f64>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidInput("dimension must be positive".into()));
        }
        if coords.is_empty() {
            return Err(Error::InvalidInput("point cloud is empty".into()));
        }
        if !coords.len().is_multiple_of(dim) {
            return Err(Error::InvalidInput(format!(
                "{} coordinates do not split into points of dimension {dim}",
                coords.len()
            )));
        }
        if let Some(bad) = coords.iter().find(|c| !c.is_finite()) {
            return Err(Error::InvalidInput(format!("non-finite coordinate {bad}")));
        }
        Ok(Self { dim, coords })
    }

    pub fn from_rows(rows: Vec<Vec<f64>>) -> Result<Self> {
        let dim = rows
            .first()
            .map(Vec::len)
            .ok_or_else(|| Error::InvalidInput("point cloud is empty".into()))?;
        let mut coords = Vec::with_capacity(dim * rows.len());
        for row in rows {
            if row.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: row.len(),
                });
            }
            coords.extend(row);
        }
        Self::new(dim, coords)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.coords.len() / self.dim
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn point(&self, i: usize) -> &[f64] {
        &self.coords[i * self.dim..(i + 1) * self.dim]
    }

    pub fn iter(&self) -> impl ExactSizeIterator<Item = &[f64]> + '_ {
        self.coords.chunks_exact(self.dim)
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        self.iter().map(<[f64]>::to_vec).collect()
    }

    pub fn check_dim(&self, x: &[f64]) -> Result<()> {
        if x.len() == self.dim {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: self.dim,
                found: x.len(),
            })
        }
    }

    pub fn subset(&self, indices: &[usize]) -> Result<Self> {
        let coords = indices
            .iter()
            .flat_map(|&i| self.point(i).iter().copied())
            .collect();
        Self::new(self.dim, coords)
    }

    /// The cloud shifted by `w`.
    pub fn translated(&self, w: &[f64]) -> Self {
        let coords = self
            .iter()
            .flat_map(|p| p.iter().zip(w).map(|(a, b)| a + b))
            .collect();
        Self {
            dim: self.dim,
            coords,
        }
    }

    pub fn scaled(&self, s: f64) -> Self {
        Self {
            dim: self.dim,
            coords: self.coords.iter().map(|c| c * s).collect(),
        }
    }

    pub fn centroid(&self) -> Vec<f64> {
        let mut c = vec![0.0; self.dim];
        for p in self.iter() {
            vecops::axpy(&mut c, 1.0, p);
        }
        vecops::scale(&c, 1.0 / self.len() as f64)
    }

    pub fn bounding_box(&self) -> (Vec<f64>, Vec<f64>) {
        let mut lo = vec![f64::INFINITY; self.dim];
        let mut hi = vec![f64::NEG_INFINITY; self.dim];
        for p in self.iter() {
            for d in 0..self.dim {
                lo[d] = lo[d].min(p[d]);
                hi[d] = hi[d].max(p[d]);
            }
        }
        (lo, hi)
    }

    /// Index of the point nearest to `x` and its distance.
    pub fn nearest(&self, x: &[f64]) -> (usize, f64) {
        self.iter()
            .map(|p| vecops::dist(p, x))
            .enumerate()
            .fold((0, f64::INFINITY), |best, (i, d)| if d < best.1 { (i, d) } else { best })
    }

    /// Reads the `x1,...,xn` CSV format.
    pub fn read_csv<R: Read>(reader: R) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new()
            .has_headers(true)
            .trim(csv::Trim::All)
            .from_reader(reader);
        let headers = rdr.headers().map_err(csv_error)?.clone();
        if headers.is_empty() || (headers.len() == 1 && headers[0].is_empty()) {
            return Err(Error::Parse {
                line: 1,
                message: "missing header".into(),
            });
        }
        for (i, h) in headers.iter().enumerate() {
            if h != format!("x{}", i + 1) {
                return Err(Error::Parse {
                    line: 1,
                    message: format!("expected header column x{}, found {h:?}", i + 1),
                });
            }
        }
        let dim = headers.len();
        let mut coords = Vec::new();
        for record in rdr.records() {
            let record = record.map_err(csv_error)?;
            let line = record.position().map_or(0, |p| p.line() as usize);
            for field in record.iter() {
                let v: f64 = field.parse().map_err(|_| Error::Parse {
                    line,
                    message: format!("not a number: {field:?}"),
                })?;
                if !v.is_finite() {
                    return Err(Error::Parse {
                        line,
                        message: format!("non-finite coordinate {field:?}"),
                    });
                }
                coords.push(v);
            }
        }
        if coords.is_empty() {
            return Err(Error::Parse {
                line: 2,
                message: "no points".into(),
            });
        }
        Self::new(dim, coords)
    }

    pub fn from_csv_str(s: &str) -> Result<Self> {
        Self::read_csv(s.as_bytes())
    }

    /// Writes the `x1,...,xn` CSV format with 17 significant digits.
    pub fn write_csv<W: Write>(&self, mut out: W) -> Result<()> {
        let header: Vec<String> = (1..=self.dim).map(|i| format!("x{i}")).collect();
        writeln!(out, "{}", header.join(","))?;
        for p in self.iter() {
            let row: Vec<String> = p.iter().map(|v| crate::json::fmt_f64(*v)).collect();
            writeln!(out, "{}", row.join(","))?;
        }
        Ok(())
    }
}

fn csv_error(e: csv::Error) -> Error {
    let line = e.position().map_or(0, |p| p.line() as usize);
    Error::Parse {
        line,
        message: e.to_string(),
    }
}

impl TryFrom<Vec<Vec<f64>>> for PointCloud {
    type Error = Error;

    fn try_from(rows: Vec<Vec<f64>>) -> Result<Self> {
        Self::from_rows(rows)
    }
}

impl From<PointCloud> for Vec<Vec<f64>> {
    fn from(cloud: PointCloud) -> Self {
        cloud.to_rows()
    }
}

/// Closed ball `B_R(q)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Ball {
    pub center: Vec<f64>,
    pub radius: f64,
}

impl Ball {
    pub fn new(center: Vec<f64>, radius: f64) -> Result<Self> {
        if !(radius >= 0.0) || !radius.is_finite() {
            return Err(Error::InvalidInput(format!("invalid radius {radius}")));
        }
        Ok(Self { center, radius })
    }

    pub fn contains(&self, x: &[f64], tol: f64) -> bool {
        vecops::dist(&self.center, x) <= self.radius + tol
    }

    /// `R − |x − q|`: zero on the sphere, positive inside.
    pub fn depth(&self, x: &[f64]) -> f64 {
        self.radius - vecops::dist(&self.center, x)
    }
}

/// Largest pairwise Euclidean distance; 0 for a single point.
pub fn diameter(cloud: &PointCloud) -> f64 {
    let mut best = 0.0_f64;
    for i in 0..cloud.len() {
        for j in i + 1..cloud.len() {
            best = best.max(vecops::dist_sq(cloud.point(i), cloud.point(j)));
        }
    }
    best.sqrt()
}

/// Single-linkage clusters at distance threshold `threshold`.
pub fn single_linkage(points: &[&[f64]], threshold: f64) -> Vec<Vec<usize>> {
    let n = points.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for i in 0..n {
        for j in i + 1..n {
            if vecops::dist(points[i], points[j]) <= threshold {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
    }
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut slot = vec![usize::MAX; n];
    for i in 0..n {
        let root = find(&mut parent, i);
        if slot[root] == usize::MAX {
            slot[root] = groups.len();
            groups.push(Vec::new());
        }
        groups[slot[root]].push(i);
    }
    groups
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diameter_examples() {
        let seg = PointCloud::from_rows(vec![vec![0.0], vec![1.0]]).unwrap();
        assert_eq!(diameter(&seg), 1.0);
        let square = PointCloud::from_rows(vec![
            vec![0.0, 0.0],
            vec![1.0, 0.0],
            vec![0.0, 1.0],
            vec![1.0, 1.0],
        ])
        .unwrap();
        assert!((diameter(&square) - 2f64.sqrt()).abs() < 1e-15);
        let tet = regular_simplex(3, 1.0, &[0.0; 3]).unwrap();
        assert!((diameter(&tet.vertices) - 1.0).abs() < 1e-12);
        let single = PointCloud::from_rows(vec![vec![3.0, 4.0]]).unwrap();
        assert_eq!(diameter(&single), 0.0);
    }

    #[test]
    fn cloud_invariants_enforced() {
        assert!(PointCloud::from_rows(vec![]).is_err());
        assert!(PointCloud::from_rows(vec![vec![1.0], vec![1.0, 2.0]]).is_err());
        assert!(PointCloud::from_rows(vec![vec![f64::NAN]]).is_err());
        assert!(PointCloud::new(2, vec![1.0, 2.0, 3.0]).is_err());
    }

    #[test]
    fn csv_roundtrip_and_rejections() {
        let cloud = PointCloud::from_csv_str("x1,x2\n1,2\n-0.5,3e-1\n").unwrap();
        assert_eq!(cloud.to_rows(), vec![vec![1.0, 2.0], vec![-0.5, 0.3]]);
        let mut buf = Vec::new();
        cloud.write_csv(&mut buf).unwrap();
        assert_eq!(PointCloud::read_csv(buf.as_slice()).unwrap(), cloud);

        assert!(matches!(
            PointCloud::from_csv_str("x1,x2\n1,2\n3\n"),
            Err(Error::Parse { line: 3, .. })
        ));
        assert!(matches!(PointCloud::from_csv_str(""), Err(Error::Parse { .. })));
        assert!(matches!(PointCloud::from_csv_str("x1\n"), Err(Error::Parse { .. })));
        assert!(matches!(
            PointCloud::from_csv_str("a,b\n1,2\n"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            PointCloud::from_csv_str("x1\nfoo\n"),
            Err(Error::Parse { line: 2, .. })
        ));
    }

    #[test]
    fn json_form_is_rows() {
        let cloud = PointCloud::from_rows(vec![vec![1.0, 2.0]]).unwrap();
        assert_eq!(serde_json::to_string(&cloud).unwrap(), "[[1.0,2.0]]");
        let back: PointCloud = serde_json::from_str("[[1.0,2.0]]").unwrap();
        assert_eq!(back, cloud);
        assert!(serde_json::from_str::<PointCloud>("[[1.0],[1.0,2.0]]").is_err());
    }

    #[test]
    fn single_linkage_groups() {
        let pts: Vec<&[f64]> = vec![&[0.0], &[0.05], &[1.0], &[1.02], &[3.0]];
        let groups = single_linkage(&pts, 0.1);
        assert_eq!(groups, vec![vec![0, 1], vec![2, 3], vec![4]]);
    }
}
