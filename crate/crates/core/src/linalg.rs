// Thin wrappers over nalgebra for the Hermitian problems used by the fast paths.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;

use crate::lattice::Signal;

pub(crate) type CMatrix = DMatrix<Complex64>;

pub(crate) fn to_vector(s: &Signal) -> DVector<Complex64> {
    DVector::from_column_slice(s.as_slice())
}

pub(crate) fn from_vector(v: &DVector<Complex64>) -> Signal {
    Signal::from(v.iter().copied().collect::<Vec<_>>())
}

/// Eigenpairs of a Hermitian matrix, eigenvalues ascending.
pub(crate) struct HermitianEigen {
    pub values: Vec<f64>,
    pub vectors: CMatrix,
}

pub(crate) fn hermitian_eigen(m: &CMatrix) -> HermitianEigen {
    let eig = SymmetricEigen::new(m.clone());
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vectors = CMatrix::from_fn(m.nrows(), order.len(), |r, c| {
        eig.eigenvectors[(r, order[c])]
    });
    HermitianEigen { values, vectors }
}

/// Columns given as signals.
pub(crate) fn columns(cols: &[Signal], rows: usize) -> CMatrix {
    CMatrix::from_fn(rows, cols.len(), |r, c| cols[c][r])
}
