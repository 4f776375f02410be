//! Small exact matrices over a cyclotomic field and their projective classes.
//!
//! Projective objects are kept in a canonical form (first nonzero entry in
//! row-major order scaled to 1), so equality in PU(n) or ℂP^{n-1} reduces to
//! structural equality and the types can key ordered maps.

use alloc::{vec, vec::Vec};
use core::fmt;

use crate::exactfield::{CycNum, Field, FieldError, Rational};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinalgError {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("expected {expected} entries, got {got}")]
    EntryCount { expected: usize, got: usize },
    #[error("zero matrix has no projective class")]
    ZeroMatrix,
    #[error("zero vector is not a projective point")]
    ZeroVector,
    #[error("matrix is singular")]
    Singular,
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// A square matrix with entries in one cyclotomic field, stored row-major.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Matrix {
    dim: usize,
    entries: Vec<CycNum>,
}

impl Matrix {
    pub fn from_entries(dim: usize, entries: Vec<CycNum>) -> Result<Self, LinalgError> {
        if dim == 0 || entries.len() != dim * dim {
            return Err(LinalgError::EntryCount {
                expected: dim * dim,
                got: entries.len(),
            });
        }
        let n = entries[0].conductor();
        if let Some(bad) = entries.iter().find(|e| e.conductor() != n) {
            return Err(FieldError::ConductorMismatch {
                left: n,
                right: bad.conductor(),
            }
            .into());
        }
        Ok(Matrix { dim, entries })
    }

    /// 2×2 matrix from rows.
    pub fn from_2x2(rows: [[CycNum; 2]; 2]) -> Result<Self, LinalgError> {
        let [[a, b], [c, d]] = rows;
        Matrix::from_entries(2, vec![a, b, c, d])
    }

    pub fn identity(field: &Field, dim: usize) -> Self {
        Self::scalar(&CycNum::one(field), dim)
    }

    pub fn scalar(c: &CycNum, dim: usize) -> Self {
        let zero = CycNum::zero(c.field());
        let entries = (0..dim * dim)
            .map(|k| if k % (dim + 1) == 0 { c.clone() } else { zero.clone() })
            .collect();
        Matrix { dim, entries }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn field(&self) -> &Field {
        self.entries[0].field()
    }

    pub fn conductor(&self) -> u32 {
        self.entries[0].conductor()
    }

    pub fn get(&self, row: usize, col: usize) -> &CycNum {
        &self.entries[row * self.dim + col]
    }

    pub fn entries(&self) -> &[CycNum] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(CycNum::is_zero)
    }

    fn check(&self, other: &Self) -> Result<(), LinalgError> {
        if self.dim != other.dim {
            return Err(LinalgError::DimensionMismatch {
                left: self.dim,
                right: other.dim,
            });
        }
        if self.conductor() != other.conductor() {
            return Err(FieldError::ConductorMismatch {
                left: self.conductor(),
                right: other.conductor(),
            }
            .into());
        }
        Ok(())
    }

    pub fn mul(&self, other: &Self) -> Result<Self, LinalgError> {
        self.check(other)?;
        let n = self.dim;
        let mut entries = Vec::with_capacity(n * n);
        for r in 0..n {
            for c in 0..n {
                let mut acc = CycNum::zero(self.field());
                for k in 0..n {
                    let (x, y) = (self.get(r, k), other.get(k, c));
                    if !x.is_zero() && !y.is_zero() {
                        acc = &acc + &(x * y);
                    }
                }
                entries.push(acc);
            }
        }
        Ok(Matrix { dim: n, entries })
    }

    pub fn add(&self, other: &Self) -> Result<Self, LinalgError> {
        self.check(other)?;
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect();
        Ok(Matrix { dim: self.dim, entries })
    }

    pub fn scale(&self, c: &CycNum) -> Result<Self, LinalgError> {
        let entries = self
            .entries
            .iter()
            .map(|e| e.checked_mul(c))
            .collect::<Result<_, _>>()?;
        Ok(Matrix { dim: self.dim, entries })
    }

    pub fn neg(&self) -> Self {
        Matrix {
            dim: self.dim,
            entries: self.entries.iter().map(|e| -e).collect(),
        }
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> Self {
        let n = self.dim;
        let entries = (0..n * n).map(|k| self.get(k % n, k / n).conj()).collect();
        Matrix { dim: n, entries }
    }

    pub fn transpose(&self) -> Self {
        let n = self.dim;
        let entries = (0..n * n).map(|k| self.get(k % n, k / n).clone()).collect();
        Matrix { dim: n, entries }
    }

    pub fn trace(&self) -> CycNum {
        (0..self.dim).fold(CycNum::zero(self.field()), |acc, k| &acc + self.get(k, k))
    }

    /// If `M† M = c·I` for a positive rational `c`, returns `c`.
    pub fn is_scaled_unitary(&self) -> Option<Rational> {
        let g = self.dagger().mul(self).ok()?;
        let c = g.get(0, 0).as_rational()?;
        if c <= Rational::from_integer(0.into()) {
            return None;
        }
        let want = Matrix::scalar(g.get(0, 0), self.dim);
        (g == want).then_some(c)
    }

    pub fn apply_vec(&self, v: &[CycNum]) -> Result<Vec<CycNum>, LinalgError> {
        if v.len() != self.dim {
            return Err(LinalgError::DimensionMismatch {
                left: self.dim,
                right: v.len(),
            });
        }
        (0..self.dim)
            .map(|r| {
                let mut acc = CycNum::zero(self.field());
                for (k, x) in v.iter().enumerate() {
                    let m = self.get(r, k);
                    if !m.is_zero() && !x.is_zero() {
                        acc = acc.checked_add(&m.checked_mul(x)?)?;
                    }
                }
                Ok(acc)
            })
            .collect()
    }

    /// Inverse of a 2×2 matrix by the adjugate formula.
    pub fn inverse_2x2(&self) -> Result<Self, LinalgError> {
        if self.dim != 2 {
            return Err(LinalgError::DimensionMismatch {
                left: self.dim,
                right: 2,
            });
        }
        let (a, b, c, d) = (self.get(0, 0), self.get(0, 1), self.get(1, 0), self.get(1, 1));
        let det = &(a * d) - &(b * c);
        if det.is_zero() {
            return Err(LinalgError::Singular);
        }
        let inv = det.inv()?;
        Matrix::from_2x2([[d * &inv, &(-b) * &inv], [&(-c) * &inv, a * &inv]])
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Matrix::identity(self.field(), self.dim);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).expect("same shape");
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).expect("same shape");
            }
        }
        acc
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for r in 0..self.dim {
            if r > 0 {
                f.write_str("; ")?;
            }
            for c in 0..self.dim {
                if c > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{}", self.get(r, c))?;
            }
        }
        f.write_str("]")
    }
}

/// Scales a nonzero vector so its first nonzero entry is 1.
fn canonicalize(entries: &mut [CycNum]) -> Result<(), LinalgError> {
    let lead = entries
        .iter()
        .position(|e| !e.is_zero())
        .ok_or(LinalgError::ZeroVector)?;
    if entries[lead].is_one() {
        return Ok(());
    }
    let inv = entries[lead].inv()?;
    for e in &mut entries[lead..] {
        if !e.is_zero() {
            *e = &*e * &inv;
        }
    }
    Ok(())
}

/// An element of PGL(n) (of PU(n) on the unitary use path), stored as its
/// canonical representative.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ProjMatrix(Matrix);

impl ProjMatrix {
    /// Projective class of `m`. Fails on the zero matrix.
    pub fn new(mut m: Matrix) -> Result<Self, LinalgError> {
        canonicalize(&mut m.entries).map_err(|_| LinalgError::ZeroMatrix)?;
        Ok(ProjMatrix(m))
    }

    pub fn identity(field: &Field, dim: usize) -> Self {
        ProjMatrix(Matrix::identity(field, dim))
    }

    /// The canonical representative.
    pub fn rep(&self) -> &Matrix {
        &self.0
    }

    pub fn into_rep(self) -> Matrix {
        self.0
    }

    pub fn mul(&self, other: &Self) -> Result<Self, LinalgError> {
        ProjMatrix::new(self.0.mul(&other.0)?)
    }

    pub fn dim(&self) -> usize {
        self.0.dim
    }
}

impl fmt::Debug for ProjMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "P{}", self.0)
    }
}

/// Canonical projective class of `m`.
pub fn proj_canonical(m: &Matrix) -> Result<ProjMatrix, LinalgError> {
    ProjMatrix::new(m.clone())
}

/// A point of ℂP^{n-1} with first nonzero coordinate 1.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ProjPoint {
    coords: Vec<CycNum>,
}

/// Affine chart label of a point of ℂP^1: `[1:α] ↦ α`, `[0:1] ↦ ∞`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AffineLabel {
    Finite(CycNum),
    Infinity,
}

impl fmt::Display for AffineLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AffineLabel::Finite(a) => write!(f, "{a}"),
            AffineLabel::Infinity => f.write_str("∞"),
        }
    }
}

impl ProjPoint {
    pub fn new(mut coords: Vec<CycNum>) -> Result<Self, LinalgError> {
        if let Some(first) = coords.first() {
            let n = first.conductor();
            if let Some(bad) = coords.iter().find(|c| c.conductor() != n) {
                return Err(FieldError::ConductorMismatch {
                    left: n,
                    right: bad.conductor(),
                }
                .into());
            }
        }
        canonicalize(&mut coords)?;
        Ok(ProjPoint { coords })
    }

    /// The basis ray `e_j`, zero-based.
    pub fn basis(field: &Field, dim: usize, j: usize) -> Self {
        let coords = (0..dim)
            .map(|k| {
                if k == j {
                    CycNum::one(field)
                } else {
                    CycNum::zero(field)
                }
            })
            .collect();
        ProjPoint { coords }
    }

    /// `[1 : α]` in ℂP^1.
    pub fn affine(alpha: CycNum) -> Self {
        ProjPoint {
            coords: vec![CycNum::one(alpha.field()), alpha],
        }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[CycNum] {
        &self.coords
    }

    /// Image under `m`, in canonical form.
    pub fn apply(&self, m: &Matrix) -> Result<Self, LinalgError> {
        ProjPoint::new(m.apply_vec(&self.coords)?)
    }

    /// Affine label in ℂP^1; `None` in other dimensions.
    pub fn affine_label(&self) -> Option<AffineLabel> {
        if self.coords.len() != 2 {
            return None;
        }
        Some(if self.coords[0].is_zero() {
            AffineLabel::Infinity
        } else {
            AffineLabel::Finite(self.coords[1].clone())
        })
    }
}

impl fmt::Debug for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (k, c) in self.coords.iter().enumerate() {
            if k > 0 {
                f.write_str(" : ")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str("]")
    }
}

pub fn proj_eq(p: &ProjPoint, q: &ProjPoint) -> Result<bool, LinalgError> {
    if p.dim() != q.dim() {
        return Err(LinalgError::DimensionMismatch {
            left: p.dim(),
            right: q.dim(),
        });
    }
    Ok(p == q)
}

/// Whether two (unnormalized) vectors span the same line; all 2×2 minors vanish.
pub fn proportional(u: &[CycNum], v: &[CycNum]) -> bool {
    debug_assert_eq!(u.len(), v.len());
    for i in 0..u.len() {
        for j in i + 1..u.len() {
            if &u[i] * &v[j] != &u[j] * &v[i] {
                return false;
            }
        }
    }
    true
}
