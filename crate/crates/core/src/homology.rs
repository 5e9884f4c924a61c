//! Integer homology of the torus and integer cohomology classes acting on it.

use core::fmt;
use core::ops::{Add, AddAssign, Neg, Sub, SubAssign};

/// Largest supported torus dimension.
pub const MAX_DIM: usize = 3;

/// An element of `H_1(T^d, Z)`, stored with three components.
///
/// For two-dimensional tori the third component stays zero, which keeps
/// arithmetic and the interchange format uniform.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WindingVector(pub [i64; MAX_DIM]);

impl WindingVector {
    pub const ZERO: WindingVector = WindingVector([0; MAX_DIM]);

    pub fn new(components: &[i64]) -> Self {
        let mut c = [0; MAX_DIM];
        for (slot, v) in c.iter_mut().zip(components) {
            *slot = *v;
        }
        WindingVector(c)
    }

    pub fn is_zero(&self) -> bool {
        self.0 == [0; MAX_DIM]
    }

    pub fn components(&self, dim: usize) -> &[i64] {
        &self.0[..dim]
    }
}

impl Add for WindingVector {
    type Output = WindingVector;
    fn add(mut self, rhs: WindingVector) -> WindingVector {
        self += rhs;
        self
    }
}

impl AddAssign for WindingVector {
    fn add_assign(&mut self, rhs: WindingVector) {
        for i in 0..MAX_DIM {
            self.0[i] += rhs.0[i];
        }
    }
}

impl Sub for WindingVector {
    type Output = WindingVector;
    fn sub(mut self, rhs: WindingVector) -> WindingVector {
        self -= rhs;
        self
    }
}

impl SubAssign for WindingVector {
    fn sub_assign(&mut self, rhs: WindingVector) {
        for i in 0..MAX_DIM {
            self.0[i] -= rhs.0[i];
        }
    }
}

impl Neg for WindingVector {
    type Output = WindingVector;
    fn neg(self) -> WindingVector {
        WindingVector([-self.0[0], -self.0[1], -self.0[2]])
    }
}

impl core::iter::Sum for WindingVector {
    fn sum<I: Iterator<Item = WindingVector>>(iter: I) -> WindingVector {
        iter.fold(WindingVector::ZERO, |a, b| a + b)
    }
}

impl fmt::Display for WindingVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.0[0], self.0[1], self.0[2])
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HomologyError {
    /// Only tori of dimension 2 and 3 are supported.
    UnsupportedDimension(usize),
    DimensionMismatch { left: usize, right: usize },
}

impl fmt::Display for HomologyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HomologyError::UnsupportedDimension(d) => {
                write!(f, "unsupported torus dimension {d} (expected 2 or 3)")
            }
            HomologyError::DimensionMismatch { left, right } => {
                write!(f, "cohomology classes of dimensions {left} and {right} cannot be combined")
            }
        }
    }
}

/// An integer covector acting on winding vectors.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CohomologyClass {
    dim: usize,
    covector: [i64; MAX_DIM],
}

impl CohomologyClass {
    pub fn new(covector: &[i64]) -> Result<Self, HomologyError> {
        let dim = covector.len();
        if !(2..=MAX_DIM).contains(&dim) {
            return Err(HomologyError::UnsupportedDimension(dim));
        }
        let mut c = [0; MAX_DIM];
        c[..dim].copy_from_slice(covector);
        Ok(CohomologyClass { dim, covector: c })
    }

    pub fn zero(dim: usize) -> Result<Self, HomologyError> {
        if dim > MAX_DIM {
            return Err(HomologyError::UnsupportedDimension(dim));
        }
        CohomologyClass::new(&[0; MAX_DIM][..dim])
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn covector(&self) -> &[i64] {
        &self.covector[..self.dim]
    }

    pub fn is_zero(&self) -> bool {
        self.covector.iter().all(|&c| c == 0)
    }

    /// Divisibility: the gcd of the components, 0 for the zero class.
    pub fn n_alpha(&self) -> u64 {
        self.covector.iter().fold(0u64, |g, &c| gcd(g, c.unsigned_abs()))
    }

    /// The primitive class with `self = n_alpha * primitive`.
    pub fn primitive(&self) -> Option<CohomologyClass> {
        let n = self.n_alpha() as i64;
        if n == 0 {
            return None;
        }
        let mut c = self.covector;
        for v in c.iter_mut() {
            *v /= n;
        }
        Some(CohomologyClass { dim: self.dim, covector: c })
    }

    pub fn pair(&self, w: &WindingVector) -> i64 {
        self.covector.iter().zip(w.0.iter()).map(|(a, b)| a * b).sum()
    }

    pub fn scaled(&self, k: i64) -> CohomologyClass {
        let mut c = self.covector;
        for v in c.iter_mut() {
            *v *= k;
        }
        CohomologyClass { dim: self.dim, covector: c }
    }

    pub fn checked_add(&self, other: &CohomologyClass) -> Result<CohomologyClass, HomologyError> {
        if self.dim != other.dim {
            return Err(HomologyError::DimensionMismatch { left: self.dim, right: other.dim });
        }
        let mut c = self.covector;
        for (v, o) in c.iter_mut().zip(other.covector.iter()) {
            *v += o;
        }
        Ok(CohomologyClass { dim: self.dim, covector: c })
    }
}

impl fmt::Display for CohomologyClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.covector().iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}
