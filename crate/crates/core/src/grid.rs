//! Uniform box grids on the unit torus.

use core::fmt;

use crate::homology::MAX_DIM;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GridError {
    UnsupportedDimension(usize),
    EmptyAxis,
    TooManyCells { cells: u128, cap: usize },
}

impl fmt::Display for GridError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GridError::UnsupportedDimension(d) => write!(f, "grid dimension {d} unsupported (expected 2 or 3)"),
            GridError::EmptyAxis => write!(f, "every grid axis needs at least one cell"),
            GridError::TooManyCells { cells, cap } => {
                write!(f, "grid of {cells} cells exceeds the cap of {cap}")
            }
        }
    }
}

/// Product grid with `resolution[a]` cells along axis `a`; cell index has x fastest.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Grid {
    dim: usize,
    resolution: [usize; MAX_DIM],
}

impl Grid {
    pub fn new(resolution: &[usize]) -> Result<Grid, GridError> {
        let dim = resolution.len();
        if !(2..=MAX_DIM).contains(&dim) {
            return Err(GridError::UnsupportedDimension(dim));
        }
        if resolution.contains(&0) {
            return Err(GridError::EmptyAxis);
        }
        let mut res = [1; MAX_DIM];
        res[..dim].copy_from_slice(resolution);
        let cells: u128 = res.iter().map(|&n| n as u128).product();
        if cells > u32::MAX as u128 {
            return Err(GridError::TooManyCells { cells, cap: u32::MAX as usize });
        }
        Ok(Grid { dim, resolution: res })
    }

    /// `n` cells along each of `dim` axes.
    pub fn cubic(dim: usize, n: usize) -> Result<Grid, GridError> {
        if dim > MAX_DIM {
            return Err(GridError::UnsupportedDimension(dim));
        }
        Grid::new(&[n; MAX_DIM][..dim])
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn resolution(&self) -> &[usize] {
        &self.resolution[..self.dim]
    }

    pub fn cell_count(&self) -> usize {
        self.resolution.iter().product()
    }

    pub fn cell_size(&self, axis: usize) -> f64 {
        1.0 / self.resolution[axis] as f64
    }

    /// Euclidean diameter of one cell.
    pub fn cell_diameter(&self) -> f64 {
        let s: f64 = (0..self.dim).map(|a| self.cell_size(a) * self.cell_size(a)).sum();
        libm::sqrt(s)
    }

    pub fn index(&self, coords: &[usize]) -> usize {
        let mut idx = 0;
        let mut stride = 1;
        for a in 0..self.dim {
            idx += (coords[a] % self.resolution[a]) * stride;
            stride *= self.resolution[a];
        }
        idx
    }

    /// Index of the cell with integer coordinates taken modulo the resolution.
    pub fn index_wrapped(&self, coords: &[i64]) -> usize {
        let mut idx = 0;
        let mut stride = 1;
        for a in 0..self.dim {
            let n = self.resolution[a] as i64;
            idx += coords[a].rem_euclid(n) as usize * stride;
            stride *= self.resolution[a];
        }
        idx
    }

    pub fn coords(&self, mut index: usize) -> [usize; MAX_DIM] {
        let mut c = [0; MAX_DIM];
        for a in 0..self.dim {
            c[a] = index % self.resolution[a];
            index /= self.resolution[a];
        }
        c
    }

    pub fn center(&self, index: usize) -> [f64; MAX_DIM] {
        let c = self.coords(index);
        let mut p = [0.0; MAX_DIM];
        for a in 0..self.dim {
            p[a] = (c[a] as f64 + 0.5) * self.cell_size(a);
        }
        p
    }

    /// Cell containing `point` (read modulo 1).
    pub fn cell_of(&self, point: &[f64]) -> usize {
        let mut c = [0i64; MAX_DIM];
        for a in 0..self.dim {
            c[a] = libm::floor(point[a] * self.resolution[a] as f64) as i64;
        }
        self.index_wrapped(&c)
    }

    /// The grid with every axis multiplied by `factor`.
    pub fn refined(&self, factor: usize) -> Result<Grid, GridError> {
        let mut res = self.resolution;
        for r in res.iter_mut().take(self.dim) {
            *r = r.checked_mul(factor).ok_or(GridError::TooManyCells { cells: u128::MAX, cap: 0 })?;
        }
        Grid::new(&res[..self.dim])
    }

    /// Cell of `self` covering fine cell `index` of `fine`, when `fine` refines `self` evenly.
    pub fn coarse_cell(&self, fine: &Grid, index: usize) -> Option<usize> {
        if fine.dim != self.dim {
            return None;
        }
        let c = fine.coords(index);
        let mut out = [0usize; MAX_DIM];
        for a in 0..self.dim {
            let (n, m) = (self.resolution[a], fine.resolution[a]);
            if m % n != 0 {
                return None;
            }
            out[a] = c[a] / (m / n);
        }
        Some(self.index(&out))
    }
}
