//! Uniform node sets.

use crate::error::{Error, Result};

/// Smallest cell count that still supports the six-point quadrature stencil.
pub const MIN_CELLS: usize = 6;

/// Uniform grid `a = x_0 < x_1 < ... < x_N = b` with `N` cells.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid1D {
    a: f64,
    b: f64,
    n_cells: usize,
    dx: f64,
    nodes: Vec<f64>,
}

impl Grid1D {
    pub fn new(a: f64, b: f64, n_cells: usize) -> Result<Self> {
        if !(a.is_finite() && b.is_finite()) || b <= a {
            return Err(Error::InvalidGrid(format!("need a < b, got [{a}, {b}]")));
        }
        if n_cells < MIN_CELLS {
            return Err(Error::InvalidGrid(format!(
                "need at least {MIN_CELLS} cells, got {n_cells}"
            )));
        }
        let dx = (b - a) / n_cells as f64;
        let mut nodes: Vec<f64> = (0..=n_cells).map(|i| a + i as f64 * dx).collect();
        nodes[n_cells] = b;
        Ok(Self {
            a,
            b,
            n_cells,
            dx,
            nodes,
        })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn n_cells(&self) -> usize {
        self.n_cells
    }

    /// Number of nodes, `N + 1`.
    pub fn len(&self) -> usize {
        self.n_cells + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn dx(&self) -> f64 {
        self.dx
    }

    pub fn length(&self) -> f64 {
        self.b - self.a
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    /// Samples `f` at every node.
    pub fn sample(&self, f: impl Fn(f64) -> f64) -> Vec<f64> {
        self.nodes.iter().map(|&x| f(x)).collect()
    }
}

/// Shorthand for [`Grid1D::new`].
pub fn build_grid_1d(a: f64, b: f64, n_cells: usize) -> Result<Grid1D> {
    Grid1D::new(a, b, n_cells)
}

/// Tensor grid; fields on it are stored row-major with `x` fastest:
/// `u[j * gx.len() + i] = u(x_i, y_j)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid2D {
    pub gx: Grid1D,
    pub gy: Grid1D,
}

impl Grid2D {
    pub fn new(gx: Grid1D, gy: Grid1D) -> Self {
        Self { gx, gy }
    }

    pub fn len(&self) -> usize {
        self.gx.len() * self.gy.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn sample(&self, f: impl Fn(f64, f64) -> f64) -> Vec<f64> {
        let mut out = Vec::with_capacity(self.len());
        for &y in self.gy.nodes() {
            for &x in self.gx.nodes() {
                out.push(f(x, y));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn unit_interval_nodes() {
        let g = Grid1D::new(0.0, 1.0, 8).unwrap();
        let expect: Vec<f64> = (0..=8).map(|i| i as f64 / 8.0).collect();
        assert_eq!(g.nodes(), expect.as_slice());
        assert_eq!(g.dx(), 0.125);
    }

    #[test]
    fn periodic_example_spacing() {
        let g = Grid1D::new(-PI, PI, 40).unwrap();
        assert!((g.dx() - PI / 20.0).abs() < 1e-15);
        assert_eq!(g.nodes()[0], -PI);
        assert_eq!(g.nodes()[40], PI);
    }

    #[test]
    fn barenblatt_domain() {
        let g = build_grid_1d(-6.0, 6.0, 200).unwrap();
        assert!((g.dx() - 0.06).abs() < 1e-15);
        assert!(g.nodes().windows(2).all(|w| w[1] > w[0]));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(Grid1D::new(1.0, 1.0, 10).is_err());
        assert!(Grid1D::new(2.0, 1.0, 10).is_err());
        assert!(Grid1D::new(0.0, 1.0, 4).is_err());
        assert!(Grid1D::new(0.0, f64::NAN, 10).is_err());
    }

    #[test]
    fn row_major_sampling() {
        let g = Grid2D::new(
            Grid1D::new(0.0, 1.0, 6).unwrap(),
            Grid1D::new(0.0, 2.0, 8).unwrap(),
        );
        let u = g.sample(|x, y| x + 10.0 * y);
        assert_eq!(u.len(), 7 * 9);
        assert!((u[7 * 2 + 3] - (0.5 + 10.0 * 0.5)).abs() < 1e-14);
    }
}
