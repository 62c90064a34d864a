//! Ricci flow on periodic grids in dimension 2 or 3.
//!
//! Fields store one full symmetric n×n matrix per node, nodes in row-major
//! order (last axis fastest). Derivatives are second-order centred
//! differences.

mod operator;
mod run;
pub mod study;

pub use operator::{
    christoffel_first, conservation_residual, curvature_operator, flow_rhs, flow_step,
    ricci_source, ricci_tensor, stability_bound, ChristoffelField, FlowParams, SourceForm,
};
pub use run::{
    parse_config, run_config, run_flow, write_dump, InitCondition, RunConfig, RunRow, RunSummary,
    CONFIG_DIR_VAR,
};

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::Error;

/// Largest supported grid edge per dimension.
pub const MAX_EDGE_2D: usize = 128;
pub const MAX_EDGE_3D: usize = 32;

/// A periodic lattice of m^n nodes with spacing h.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    pub n: usize,
    pub m: usize,
    pub h: f64,
}

impl Grid {
    pub fn new(n: usize, m: usize, h: f64) -> Result<Self, Error> {
        let cap = match n {
            2 => MAX_EDGE_2D,
            3 => MAX_EDGE_3D,
            _ => {
                return Err(Error::invalid(format!(
                    "dimension {n} unsupported; use 2 or 3"
                )))
            }
        };
        if m < 3 || m > cap {
            return Err(Error::invalid(format!(
                "grid edge {m} outside 3..={cap} for n = {n}"
            )));
        }
        if !(h.is_finite() && h > 0.0) {
            return Err(Error::invalid(format!("spacing {h} must be positive")));
        }
        Ok(Grid { n, m, h })
    }

    /// Spacing 2π/m, so the torus has side 2π.
    pub fn unit_torus(n: usize, m: usize) -> Result<Self, Error> {
        Self::new(n, m, 2.0 * PI / m as f64)
    }

    pub fn nodes(&self) -> usize {
        self.m.pow(self.n as u32)
    }

    /// Side length m·h.
    pub fn period(&self) -> f64 {
        self.m as f64 * self.h
    }

    pub fn cell_volume(&self) -> f64 {
        self.h.powi(self.n as i32)
    }

    fn stride(&self, axis: usize) -> usize {
        self.m.pow((self.n - 1 - axis) as u32)
    }

    pub fn coords(&self, node: usize) -> Vec<usize> {
        (0..self.n)
            .map(|a| (node / self.stride(a)) % self.m)
            .collect()
    }

    pub fn position(&self, node: usize) -> Vec<f64> {
        self.coords(node)
            .into_iter()
            .map(|c| c as f64 * self.h)
            .collect()
    }

    /// The node `offset` steps along `axis`, wrapping around.
    pub fn shift(&self, node: usize, axis: usize, offset: isize) -> usize {
        let stride = self.stride(axis);
        let c = (node / stride) % self.m;
        let m = self.m as isize;
        let target = ((c as isize + offset) % m + m) % m;
        node + target as usize * stride - c * stride
    }
}

pub(crate) type Mat = [[f64; 3]; 3];

/// A symmetric 2-tensor per node.
#[derive(Clone, Debug, PartialEq)]
pub struct SymField {
    grid: Grid,
    data: Vec<f64>,
}

impl SymField {
    pub fn zeros(grid: Grid) -> Self {
        SymField {
            data: vec![0.0; grid.nodes() * grid.n * grid.n],
            grid,
        }
    }

    /// Builds the field from a function of position; only the upper
    /// triangle (i ≤ j) of the returned matrix is read.
    pub fn from_fn(grid: Grid, f: impl Fn(&[f64]) -> Mat) -> Self {
        let mut out = Self::zeros(grid);
        for node in 0..grid.nodes() {
            let v = f(&grid.position(node));
            for i in 0..grid.n {
                for j in i..grid.n {
                    out.set(node, i, j, v[i][j]);
                }
            }
        }
        out
    }

    pub fn identity(grid: Grid) -> Self {
        Self::from_fn(grid, |_| identity3())
    }

    pub fn grid(&self) -> Grid {
        self.grid
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    fn offset(&self, node: usize, i: usize, j: usize) -> usize {
        (node * self.grid.n + i) * self.grid.n + j
    }

    pub fn get(&self, node: usize, i: usize, j: usize) -> f64 {
        self.data[self.offset(node, i, j)]
    }

    /// Writes both (i, j) and (j, i).
    pub fn set(&mut self, node: usize, i: usize, j: usize, v: f64) {
        let a = self.offset(node, i, j);
        let b = self.offset(node, j, i);
        self.data[a] = v;
        self.data[b] = v;
    }

    pub(crate) fn matrix(&self, node: usize) -> Mat {
        let mut out = [[0.0; 3]; 3];
        for (i, row) in out.iter_mut().enumerate().take(self.grid.n) {
            for (j, x) in row.iter_mut().enumerate().take(self.grid.n) {
                *x = self.get(node, i, j);
            }
        }
        out
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.grid.n;
        (0..self.grid.nodes()).all(|node| {
            (0..n).all(|i| (0..i).all(|j| self.get(node, i, j) == self.get(node, j, i)))
        })
    }

    pub fn det(&self, node: usize) -> f64 {
        det(&self.matrix(node), self.grid.n)
    }

    /// (node, det) of the smallest determinant.
    pub fn min_det(&self) -> (usize, f64) {
        (0..self.grid.nodes())
            .map(|node| (node, self.det(node)))
            .fold(
                (0, f64::INFINITY),
                |best, cur| if cur.1 < best.1 { cur } else { best },
            )
    }

    /// (node, value) of the smallest leading principal minor; positive
    /// exactly when the field is positive definite everywhere.
    pub fn min_leading_minor(&self) -> (usize, f64) {
        let n = self.grid.n;
        (0..self.grid.nodes())
            .map(|node| {
                let m = self.matrix(node);
                let mut lo = m[0][0];
                if n == 3 {
                    lo = lo.min(det(&m, 2));
                }
                (node, lo.min(det(&m, n)))
            })
            .fold(
                (0, f64::INFINITY),
                |best, cur| if cur.1 < best.1 { cur } else { best },
            )
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0f64, |acc, v| acc.max(v.abs()))
    }

    /// self + s · other.
    pub fn axpy(&self, s: f64, other: &SymField) -> SymField {
        assert_eq!(self.grid, other.grid, "fields on different grids");
        SymField {
            grid: self.grid,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + s * b)
                .collect(),
        }
    }

    pub fn scale(&self, s: f64) -> SymField {
        SymField {
            grid: self.grid,
            data: self.data.iter().map(|a| s * a).collect(),
        }
    }

    /// Σ_nodes Σ_ij self_ij other_ij · hⁿ.
    pub fn pair_integral(&self, other: &SymField) -> f64 {
        assert_eq!(self.grid, other.grid, "fields on different grids");
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a * b)
            .sum::<f64>()
            * self.grid.cell_volume()
    }

    /// Σ_nodes tr · hⁿ.
    pub fn trace_integral(&self) -> f64 {
        let n = self.grid.n;
        (0..self.grid.nodes())
            .map(|node| (0..n).map(|i| self.get(node, i, i)).sum::<f64>())
            .sum::<f64>()
            * self.grid.cell_volume()
    }
}

/// A Riemannian metric: symmetric with positive determinant everywhere.
#[derive(Clone, Debug, PartialEq)]
pub struct MetricField(SymField);

/// A symmetric contravariant field φ^{ij}.
pub type CotensorField = SymField;

impl MetricField {
    /// Rejects fields that fail to be positive definite at some node.
    pub fn new(field: SymField) -> Result<Self, Error> {
        let (node, d) = field.min_leading_minor();
        if !(d > 0.0) {
            return Err(Error::NearDegenerateMetric { det: d, node });
        }
        Ok(MetricField(field))
    }

    pub fn flat(grid: Grid) -> Self {
        MetricField(SymField::identity(grid))
    }

    /// e^{2u} δ with u = ε sin(k x¹) sin(k x²), k = 2π / period.
    pub fn conformal_sine(grid: Grid, eps: f64) -> Self {
        let k = 2.0 * PI / grid.period();
        let field = SymField::from_fn(grid, |x| {
            let u = eps * (k * x[0]).sin() * (k * x[1]).sin();
            scaled_identity((2.0 * u).exp())
        });
        MetricField(field)
    }

    /// δ plus a smooth random symmetric perturbation built from Fourier
    /// modes with wave numbers |k_a| ≤ 2, with max entry size about ε.
    pub fn random_perturbation(grid: Grid, eps: f64, seed: u64) -> Result<Self, Error> {
        let n = grid.n;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let k0 = 2.0 * PI / grid.period();
        let modes: Vec<(Vec<f64>, f64, Mat)> = (0..6)
            .map(|_| {
                let wave: Vec<f64> = (0..n)
                    .map(|_| rng.gen_range(-2i32..=2) as f64 * k0)
                    .collect();
                let phase = rng.gen_range(0.0..2.0 * PI);
                let mut amp = [[0.0; 3]; 3];
                for i in 0..n {
                    for j in i..n {
                        amp[i][j] = rng.gen_range(-1.0..1.0);
                        amp[j][i] = amp[i][j];
                    }
                }
                (wave, phase, amp)
            })
            .collect();
        let norm = eps / modes.len() as f64;
        let field = SymField::from_fn(grid, |x| {
            let mut g = identity3();
            for (wave, phase, amp) in &modes {
                let arg: f64 = wave.iter().zip(x).map(|(k, xi)| k * xi).sum::<f64>() + phase;
                let s = norm * arg.sin();
                for i in 0..n {
                    for j in 0..n {
                        g[i][j] += s * amp[i][j];
                    }
                }
            }
            g
        });
        Self::new(field)
    }

    pub fn field(&self) -> &SymField {
        &self.0
    }

    pub fn into_field(self) -> SymField {
        self.0
    }

    pub fn grid(&self) -> Grid {
        self.0.grid
    }
}

pub(crate) fn identity3() -> Mat {
    scaled_identity(1.0)
}

fn scaled_identity(s: f64) -> Mat {
    let mut m = [[0.0; 3]; 3];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = s;
    }
    m
}

pub(crate) fn det(m: &Mat, n: usize) -> f64 {
    match n {
        2 => m[0][0] * m[1][1] - m[0][1] * m[1][0],
        3 => {
            m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
                - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
                + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
        }
        _ => unreachable!("grid dimension is 2 or 3"),
    }
}

/// Inverse through the cofactor (algebraic complement) matrix.
pub(crate) fn inverse(m: &Mat, n: usize) -> Mat {
    let d = det(m, n);
    let mut inv = [[0.0; 3]; 3];
    match n {
        2 => {
            inv[0][0] = m[1][1] / d;
            inv[1][1] = m[0][0] / d;
            inv[0][1] = -m[0][1] / d;
            inv[1][0] = -m[1][0] / d;
        }
        3 => {
            for (i, row) in inv.iter_mut().enumerate() {
                for (j, x) in row.iter_mut().enumerate() {
                    let (r0, r1) = ((j + 1) % 3, (j + 2) % 3);
                    let (c0, c1) = ((i + 1) % 3, (i + 2) % 3);
                    *x = (m[r0][c0] * m[r1][c1] - m[r0][c1] * m[r1][c0]) / d;
                }
            }
        }
        _ => unreachable!("grid dimension is 2 or 3"),
    }
    inv
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_shifts_wrap() {
        let g = Grid::unit_torus(3, 4).unwrap();
        let node = 0;
        assert_eq!(g.coords(g.shift(node, 0, -1)), vec![3, 0, 0]);
        assert_eq!(g.coords(g.shift(node, 2, 1)), vec![0, 0, 1]);
        assert_eq!(g.shift(g.shift(17, 1, 3), 1, 1), 17);
        assert!(Grid::unit_torus(2, 129).is_err());
        assert!(Grid::unit_torus(3, 33).is_err());
        assert!(Grid::unit_torus(4, 8).is_err());
    }

    #[test]
    fn inverse_matches() {
        let m = [[2.0, 0.3, -0.1], [0.3, 1.5, 0.2], [-0.1, 0.2, 1.1]];
        for n in [2, 3] {
            let inv = inverse(&m, n);
            for i in 0..n {
                for j in 0..n {
                    let p: f64 = (0..n).map(|k| m[i][k] * inv[k][j]).sum();
                    assert!((p - if i == j { 1.0 } else { 0.0 }).abs() < 1e-14);
                }
            }
        }
    }

    #[test]
    fn random_init_is_reproducible() {
        let grid = Grid::unit_torus(2, 16).unwrap();
        let a = MetricField::random_perturbation(grid, 0.05, 3).unwrap();
        let b = MetricField::random_perturbation(grid, 0.05, 3).unwrap();
        let c = MetricField::random_perturbation(grid, 0.05, 4).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
        assert!(a.field().is_symmetric());
        assert!(a.field().axpy(-1.0, &SymField::identity(grid)).max_abs() <= 0.05 + 1e-12);
    }
}
