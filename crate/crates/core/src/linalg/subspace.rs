use num_traits::Zero;

use super::matrix::ExactMatrix;
use crate::error::{Error, Result};
use crate::scalar::ExactScalar;

/// A linear subspace of `ℂ^n` stored by a canonical basis.
///
/// The basis is the list of nonzero rows of the reduced row echelon form of
/// any spanning set, so two values are equal as sets exactly when their
/// stored bases are identical.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Vec<Vec<ExactScalar>>,
}

impl Subspace {
    /// Canonical span of arbitrary (possibly dependent) vectors.
    pub fn span(ambient_dim: usize, vectors: &[Vec<ExactScalar>]) -> Result<Self> {
        if let Some(v) = vectors.iter().find(|v| v.len() != ambient_dim) {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} in ambient dimension {ambient_dim}",
                v.len()
            )));
        }
        if vectors.is_empty() {
            return Ok(Self::zero(ambient_dim));
        }
        let m = ExactMatrix::from_rows(vectors.to_vec())?;
        let ech = m.row_echelon();
        let basis = (0..ech.pivots.len()).map(|r| ech.reduced.row(r).to_vec()).collect();
        Ok(Subspace { ambient_dim, basis })
    }

    pub fn zero(ambient_dim: usize) -> Self {
        Subspace { ambient_dim, basis: Vec::new() }
    }

    pub fn full(ambient_dim: usize) -> Self {
        let id = ExactMatrix::identity(ambient_dim);
        Subspace { ambient_dim, basis: (0..ambient_dim).map(|i| id.row(i).to_vec()).collect() }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn codim(&self) -> usize {
        self.ambient_dim - self.dim()
    }

    pub fn basis(&self) -> &[Vec<ExactScalar>] {
        &self.basis
    }

    pub fn contains(&self, v: &[ExactScalar]) -> bool {
        if v.iter().all(Zero::is_zero) {
            return true;
        }
        let mut vs = self.basis.clone();
        vs.push(v.to_vec());
        Subspace::span(self.ambient_dim, &vs).map(|s| s.dim() == self.dim()).unwrap_or(false)
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.ambient_dim == other.ambient_dim && self.basis.iter().all(|v| other.contains(v))
    }

    fn check_ambient(&self, other: &Subspace) -> Result<()> {
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::DimensionMismatch(format!(
                "ambient dimensions {} and {}",
                self.ambient_dim, other.ambient_dim
            )));
        }
        Ok(())
    }
}

/// Null space `N(m)` in canonical form.
pub fn kernel(m: &ExactMatrix) -> Subspace {
    Subspace::span(m.cols(), &m.null_space_vectors()).expect("null vectors have length cols")
}

/// Column space `R(m)` in canonical form.
pub fn range(m: &ExactMatrix) -> Subspace {
    let cols: Vec<_> = (0..m.cols()).map(|j| m.column(j)).collect();
    Subspace::span(m.rows(), &cols).expect("columns have length rows")
}

pub fn subspace_sum(a: &Subspace, b: &Subspace) -> Result<Subspace> {
    a.check_ambient(b)?;
    let mut vs = a.basis.clone();
    vs.extend(b.basis.iter().cloned());
    Subspace::span(a.ambient_dim, &vs)
}

/// `a ∩ b`, from the kernel of the concatenated basis matrix `[A | B]`:
/// every kernel vector `(x, y)` gives `A x = -B y ∈ a ∩ b`.
pub fn subspace_intersect(a: &Subspace, b: &Subspace) -> Result<Subspace> {
    a.check_ambient(b)?;
    if a.dim() == 0 || b.dim() == 0 {
        return Ok(Subspace::zero(a.ambient_dim));
    }
    let mut cols = a.basis.clone();
    cols.extend(b.basis.iter().cloned());
    let joined = ExactMatrix::from_columns(a.ambient_dim, &cols);
    let a_mat = ExactMatrix::from_columns(a.ambient_dim, &a.basis);
    let vectors: Vec<_> = joined
        .null_space_vectors()
        .into_iter()
        .map(|coeffs| a_mat.apply(&coeffs[..a.dim()]))
        .collect();
    Subspace::span(a.ambient_dim, &vectors)
}
