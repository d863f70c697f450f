//! Finite-dimensional concrete C*-algebras over the reals.
//!
//! Two families are supported:
//!
//! * `Matrix` of side `n`: real `n x n` matrices with transpose as the
//!   involution and the spectral (operator) norm.
//! * `Componentwise` of length `k`: real `k`-tuples with pointwise product,
//!   trivial involution and the max-abs norm.
//!
//! A scalar controlled metric is the componentwise algebra of length one.
//!
//! Positivity, the partial order and absolute values are all spectral: a
//! self-adjoint element is positive when its spectrum lies in `[0, inf)`
//! (up to the tolerance), and `z <= w` means `w - z` is positive.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Off-diagonal Frobenius mass below which a Jacobi sweep stops.
const JACOBI_OFF_DIAGONAL: f64 = 1e-12;
const JACOBI_MAX_SWEEPS: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AlgebraKind {
    Matrix,
    Componentwise,
}

/// Shape of a concrete algebra. Two elements can only be combined when their
/// descriptors are equal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AlgebraDescriptor {
    kind: AlgebraKind,
    dim: usize,
}

impl AlgebraDescriptor {
    pub fn new(kind: AlgebraKind, dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidArgument(
                "algebra dimension must be at least 1".into(),
            ));
        }
        Ok(Self { kind, dim })
    }

    /// `M_n(R)`.
    pub fn matrix(n: usize) -> Result<Self> {
        Self::new(AlgebraKind::Matrix, n)
    }

    /// `R^k` with pointwise multiplication.
    pub fn componentwise(k: usize) -> Result<Self> {
        Self::new(AlgebraKind::Componentwise, k)
    }

    pub fn kind(&self) -> AlgebraKind {
        self.kind
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of stored real entries.
    pub fn entry_count(&self) -> usize {
        match self.kind {
            AlgebraKind::Matrix => self.dim * self.dim,
            AlgebraKind::Componentwise => self.dim,
        }
    }

    pub fn is_commutative(&self) -> bool {
        self.kind == AlgebraKind::Componentwise || self.dim == 1
    }

    pub fn zero(&self) -> AlgebraElement {
        AlgebraElement {
            descriptor: *self,
            entries: vec![0.0; self.entry_count()],
        }
    }

    pub fn unit(&self) -> AlgebraElement {
        self.scalar(1.0)
    }

    /// `c * I`.
    pub fn scalar(&self, c: f64) -> AlgebraElement {
        let mut z = self.zero();
        match self.kind {
            AlgebraKind::Matrix => {
                for i in 0..self.dim {
                    z.entries[i * self.dim + i] = c;
                }
            }
            AlgebraKind::Componentwise => z.entries.fill(c),
        }
        z
    }

    /// Diagonal matrix or tuple with the given values.
    pub fn diagonal(&self, values: &[f64]) -> Result<AlgebraElement> {
        if values.len() != self.dim {
            return Err(Error::InvalidElement(format!(
                "expected {} diagonal values, got {}",
                self.dim,
                values.len()
            )));
        }
        let mut z = self.zero();
        match self.kind {
            AlgebraKind::Matrix => {
                for (i, v) in values.iter().enumerate() {
                    z.entries[i * self.dim + i] = *v;
                }
            }
            AlgebraKind::Componentwise => z.entries.copy_from_slice(values),
        }
        z.validate()?;
        Ok(z)
    }

    /// The standard basis (matrix units `E_ij`, or coordinate tuples).
    pub fn basis(&self) -> Vec<AlgebraElement> {
        (0..self.entry_count())
            .map(|k| {
                let mut z = self.zero();
                z.entries[k] = 1.0;
                z
            })
            .collect()
    }
}

impl fmt::Display for AlgebraDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            AlgebraKind::Matrix => write!(f, "M_{}(R)", self.dim),
            AlgebraKind::Componentwise => write!(f, "R^{}", self.dim),
        }
    }
}

/// Absolute slack used by every order comparison.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerance(f64);

impl Tolerance {
    pub const DEFAULT_EPS: f64 = 1e-9;

    pub fn new(eps: f64) -> Result<Self> {
        if !(eps >= 0.0 && eps.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "tolerance must be a finite nonnegative number, got {eps}"
            )));
        }
        Ok(Self(eps))
    }

    pub fn eps(&self) -> f64 {
        self.0
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Self(Self::DEFAULT_EPS)
    }
}

/// An element of a concrete algebra. Matrix entries are row-major.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlgebraElement {
    descriptor: AlgebraDescriptor,
    entries: Vec<f64>,
}

impl AlgebraElement {
    pub fn new(descriptor: AlgebraDescriptor, entries: Vec<f64>) -> Result<Self> {
        let z = Self {
            descriptor,
            entries,
        };
        z.validate()?;
        Ok(z)
    }

    /// Builds a matrix element from rows.
    pub fn from_rows(rows: &[&[f64]]) -> Result<Self> {
        let n = rows.len();
        let descriptor = AlgebraDescriptor::matrix(n)?;
        let mut entries = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::InvalidElement("matrix rows must be square".into()));
            }
            entries.extend_from_slice(row);
        }
        Self::new(descriptor, entries)
    }

    /// Builds a componentwise element.
    pub fn tuple(values: &[f64]) -> Result<Self> {
        Self::new(
            AlgebraDescriptor::componentwise(values.len())?,
            values.to_vec(),
        )
    }

    fn validate(&self) -> Result<()> {
        if self.entries.len() != self.descriptor.entry_count() {
            return Err(Error::InvalidElement(format!(
                "{} needs {} entries, got {}",
                self.descriptor,
                self.descriptor.entry_count(),
                self.entries.len()
            )));
        }
        if let Some(bad) = self.entries.iter().find(|v| !v.is_finite()) {
            return Err(Error::InvalidElement(format!("non-finite entry {bad}")));
        }
        Ok(())
    }

    pub fn descriptor(&self) -> AlgebraDescriptor {
        self.descriptor
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    fn n(&self) -> usize {
        self.descriptor.dim
    }

    pub fn same_algebra(&self, other: &Self) -> Result<()> {
        if self.descriptor != other.descriptor {
            return Err(Error::DescriptorMismatch {
                expected: self.descriptor,
                found: other.descriptor,
            });
        }
        Ok(())
    }

    pub fn scale(&self, c: f64) -> Self {
        Self {
            descriptor: self.descriptor,
            entries: self.entries.iter().map(|v| c * v).collect(),
        }
    }

    /// `z*`: transpose for matrices, identity for tuples.
    pub fn adjoint(&self) -> Self {
        match self.descriptor.kind {
            AlgebraKind::Componentwise => self.clone(),
            AlgebraKind::Matrix => {
                let n = self.n();
                let mut entries = vec![0.0; n * n];
                for i in 0..n {
                    for j in 0..n {
                        entries[j * n + i] = self.entries[i * n + j];
                    }
                }
                Self {
                    descriptor: self.descriptor,
                    entries,
                }
            }
        }
    }

    /// `|z - z*|`.
    pub fn self_adjoint_deviation(&self) -> f64 {
        match self.descriptor.kind {
            AlgebraKind::Componentwise => 0.0,
            AlgebraKind::Matrix => (self - &self.adjoint()).operator_norm(),
        }
    }

    pub fn is_self_adjoint(&self, tol: Tolerance) -> bool {
        self.self_adjoint_deviation() <= tol.eps()
    }

    /// Spectrum of a self-adjoint element, ascending.
    pub fn spectrum(&self, tol: Tolerance) -> Result<Vec<f64>> {
        let deviation = self.self_adjoint_deviation();
        if deviation > tol.eps() {
            return Err(Error::NotSelfAdjoint {
                deviation,
                eps: tol.eps(),
            });
        }
        Ok(self.hermitian_spectrum())
    }

    /// Ascending spectrum of the self-adjoint part `(z + z*)/2`.
    fn hermitian_spectrum(&self) -> Vec<f64> {
        let mut values = match self.descriptor.kind {
            AlgebraKind::Componentwise => self.entries.clone(),
            AlgebraKind::Matrix => {
                let sym = self.symmetric_part();
                symmetric_eigen(&sym, self.n()).0
            }
        };
        values.sort_by(f64::total_cmp);
        values
    }

    fn symmetric_part(&self) -> Vec<f64> {
        let n = self.n();
        let mut sym = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                sym[i * n + j] = 0.5 * (self.entries[i * n + j] + self.entries[j * n + i]);
            }
        }
        sym
    }

    /// Smallest spectral value of the self-adjoint part. This is the signed
    /// slack reported for order violations.
    pub fn min_eigenvalue(&self) -> f64 {
        self.hermitian_spectrum().first().copied().unwrap_or(0.0)
    }

    /// `0 <= z`: self-adjoint with spectrum in `[-eps, inf)`.
    pub fn is_positive(&self, tol: Tolerance) -> bool {
        self.is_self_adjoint(tol) && self.min_eigenvalue() >= -tol.eps()
    }

    /// `self <= other` in the order induced by the positive cone.
    pub fn leq(&self, other: &Self, tol: Tolerance) -> Result<bool> {
        self.same_algebra(other)?;
        Ok((other - self).is_positive(tol))
    }

    /// The C*-norm: largest singular value, or max-abs entry for tuples.
    pub fn operator_norm(&self) -> f64 {
        match self.descriptor.kind {
            AlgebraKind::Componentwise => self.entries.iter().fold(0.0, |m, v| m.max(v.abs())),
            AlgebraKind::Matrix => {
                if self.is_diagonal() {
                    return self.entries.iter().fold(0.0, |m, v| m.max(v.abs()));
                }
                let gram = &self.adjoint() * self;
                let top = gram.hermitian_spectrum().last().copied().unwrap_or(0.0);
                top.max(0.0).sqrt()
            }
        }
    }

    fn is_diagonal(&self) -> bool {
        let n = self.n();
        (0..n).all(|i| (0..n).all(|j| i == j || self.entries[i * n + j] == 0.0))
    }

    /// `|z| = (z* z)^{1/2}`.
    pub fn abs(&self) -> Self {
        match self.descriptor.kind {
            AlgebraKind::Componentwise => Self {
                descriptor: self.descriptor,
                entries: self.entries.iter().map(|v| v.abs()).collect(),
            },
            AlgebraKind::Matrix => (&self.adjoint() * self).positive_sqrt(),
        }
    }

    /// Positive square root of the self-adjoint part, with negative spectral
    /// values clamped to zero.
    pub fn positive_sqrt(&self) -> Self {
        match self.descriptor.kind {
            AlgebraKind::Componentwise => Self {
                descriptor: self.descriptor,
                entries: self.entries.iter().map(|v| v.max(0.0).sqrt()).collect(),
            },
            AlgebraKind::Matrix => {
                let n = self.n();
                let (values, vectors) = symmetric_eigen(&self.symmetric_part(), n);
                let roots: Vec<f64> = values.iter().map(|v| v.max(0.0).sqrt()).collect();
                let mut entries = vec![0.0; n * n];
                for i in 0..n {
                    for j in i..n {
                        let s: f64 = (0..n)
                            .map(|k| vectors[i * n + k] * roots[k] * vectors[j * n + k])
                            .sum();
                        entries[i * n + j] = s;
                        entries[j * n + i] = s;
                    }
                }
                Self {
                    descriptor: self.descriptor,
                    entries,
                }
            }
        }
    }

    /// Whether `self` lies in the commutant above the unit: `I <= z` and `z`
    /// commutes with every generator.
    pub fn is_admissible_control_value(
        &self,
        generators: &[AlgebraElement],
        tol: Tolerance,
    ) -> Result<bool> {
        if generators.is_empty() {
            return Err(Error::InvalidArgument(
                "admissibility needs at least one generator".into(),
            ));
        }
        for g in generators {
            self.same_algebra(g)?;
        }
        let unit = self.descriptor.unit();
        if !unit.leq(self, tol)? {
            return Ok(false);
        }
        if self.descriptor.is_commutative() {
            return Ok(true);
        }
        let norm = self.operator_norm();
        Ok(generators.iter().all(|g| {
            let commutator = &(self * g) - &(g * self);
            commutator.operator_norm() <= tol.eps() * (1.0 + norm * g.operator_norm())
        }))
    }

    /// Distance `|self - other|`.
    pub fn distance(&self, other: &Self) -> f64 {
        (self - other).operator_norm()
    }
}

fn binary(a: &AlgebraElement, b: &AlgebraElement, op: impl Fn(f64, f64) -> f64) -> AlgebraElement {
    assert_eq!(
        a.descriptor, b.descriptor,
        "arithmetic on elements of different algebras"
    );
    AlgebraElement {
        descriptor: a.descriptor,
        entries: a
            .entries
            .iter()
            .zip(&b.entries)
            .map(|(x, y)| op(*x, *y))
            .collect(),
    }
}

impl Add for &AlgebraElement {
    type Output = AlgebraElement;

    fn add(self, rhs: Self) -> AlgebraElement {
        binary(self, rhs, |x, y| x + y)
    }
}

impl Sub for &AlgebraElement {
    type Output = AlgebraElement;

    fn sub(self, rhs: Self) -> AlgebraElement {
        binary(self, rhs, |x, y| x - y)
    }
}

impl Neg for &AlgebraElement {
    type Output = AlgebraElement;

    fn neg(self) -> AlgebraElement {
        self.scale(-1.0)
    }
}

impl Mul for &AlgebraElement {
    type Output = AlgebraElement;

    fn mul(self, rhs: Self) -> AlgebraElement {
        match self.descriptor.kind {
            AlgebraKind::Componentwise => binary(self, rhs, |x, y| x * y),
            AlgebraKind::Matrix => {
                assert_eq!(
                    self.descriptor, rhs.descriptor,
                    "arithmetic on elements of different algebras"
                );
                let n = self.n();
                let mut entries = vec![0.0; n * n];
                for i in 0..n {
                    for k in 0..n {
                        let a = self.entries[i * n + k];
                        if a == 0.0 {
                            continue;
                        }
                        for j in 0..n {
                            entries[i * n + j] += a * rhs.entries[k * n + j];
                        }
                    }
                }
                AlgebraElement {
                    descriptor: self.descriptor,
                    entries,
                }
            }
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr for AlgebraElement {
            type Output = AlgebraElement;

            fn $method(self, rhs: Self) -> AlgebraElement {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

/// Cyclic Jacobi eigensolver for a symmetric row-major `n x n` matrix.
///
/// Returns `(eigenvalues, eigenvectors)` where column `k` of the row-major
/// eigenvector matrix belongs to `eigenvalues[k]`. Eigenvalues are not sorted.
pub fn symmetric_eigen(matrix: &[f64], n: usize) -> (Vec<f64>, Vec<f64>) {
    assert_eq!(matrix.len(), n * n);
    let mut a = matrix.to_vec();
    let mut v = vec![0.0; n * n];
    for i in 0..n {
        v[i * n + i] = 1.0;
    }
    let scale = a.iter().map(|x| x * x).sum::<f64>().sqrt().max(1.0);

    for _ in 0..JACOBI_MAX_SWEEPS {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |j| *j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[i * n + j] * a[i * n + j])
            .sum::<f64>()
            .sqrt();
        if off < JACOBI_OFF_DIAGONAL * scale {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                // A <- A J
                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                // A <- J^T A
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k];
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
                a[p * n + q] = 0.0;
                a[q * n + p] = 0.0;
                for k in 0..n {
                    let vkp = v[k * n + p];
                    let vkq = v[k * n + q];
                    v[k * n + p] = c * vkp - s * vkq;
                    v[k * n + q] = s * vkp + c * vkq;
                }
            }
        }
    }
    ((0..n).map(|i| a[i * n + i]).collect(), v)
}
