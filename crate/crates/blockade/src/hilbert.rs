//! Dense operators on truncated tensor-product Hilbert spaces.
//!
//! Composite basis indices are row-major: the **last** tensor factor varies
//! fastest. On dims `[n_max+1, 2, 2]` the state |n, q₁, q₂⟩ has flat index
//! `(n·2 + q₁)·2 + q₂`, with qubit index 0 = |g⟩ and 1 = |e⟩.

use ndarray::linalg::kron;
use ndarray::{Array1, Array2};
use ndarray_linalg::{Eigh, UPLO};
use num_complex::Complex64;

use crate::{Error, Result, Tolerances};

/// Ordered list of subsystem dimensions defining a tensor-product space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HilbertSpace {
    dims: Vec<usize>,
}

impl HilbertSpace {
    /// A space with the given subsystem dimensions, each at least 1.
    pub fn new(dims: &[usize]) -> Result<Self> {
        if dims.is_empty() {
            return Err(Error::InvalidDimension("no subsystems".into()));
        }
        if let Some(&d) = dims.iter().find(|&&d| d < 1) {
            return Err(Error::InvalidDimension(format!(
                "subsystem dimension {d} must be >= 1"
            )));
        }
        Ok(Self { dims: dims.to_vec() })
    }

    pub fn subsystem_dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().product()
    }

    /// Flat composite index of per-subsystem indices (last factor fastest).
    pub fn flat_index(&self, indices: &[usize]) -> Result<usize> {
        if indices.len() != self.dims.len() {
            return Err(Error::InvalidDimension(format!(
                "expected {} subsystem indices, got {}",
                self.dims.len(),
                indices.len()
            )));
        }
        let mut flat = 0;
        for (&i, &d) in indices.iter().zip(&self.dims) {
            if i >= d {
                return Err(Error::InvalidDimension(format!(
                    "index {i} out of range for subsystem of dimension {d}"
                )));
            }
            flat = flat * d + i;
        }
        Ok(flat)
    }
}

/// A dense complex matrix tagged with the space it acts on.
#[derive(Debug, Clone, PartialEq)]
pub struct Operator {
    space: HilbertSpace,
    matrix: Array2<Complex64>,
}

/// Truncated annihilation operator with ⟨n−1|â|n⟩ = √n on n_max + 1 levels.
pub fn fock_lowering(n_max: usize) -> Result<Operator> {
    if n_max < 1 {
        return Err(Error::InvalidDimension(format!(
            "photon truncation n_max = {n_max} must be >= 1"
        )));
    }
    let dim = n_max + 1;
    let mut m = Array2::zeros((dim, dim));
    for n in 1..dim {
        m[[n - 1, n]] = Complex64::new((n as f64).sqrt(), 0.0);
    }
    Ok(Operator {
        space: HilbertSpace::new(&[dim])?,
        matrix: m,
    })
}

/// Qubit lowering operator σ̂⁻ = |g⟩⟨e| on a two-level space.
pub fn qubit_lowering() -> Operator {
    let mut m = Array2::zeros((2, 2));
    m[[0, 1]] = Complex64::new(1.0, 0.0);
    Operator {
        space: HilbertSpace { dims: vec![2] },
        matrix: m,
    }
}

/// Embed a single-subsystem operator at `position` in a larger space:
/// identity ⊗ … ⊗ op ⊗ … ⊗ identity.
pub fn embed(op: &Operator, space: &HilbertSpace, position: usize) -> Result<Operator> {
    if position >= space.dims.len() {
        return Err(Error::InvalidDimension(format!(
            "position {position} out of range for {} subsystems",
            space.dims.len()
        )));
    }
    let target = space.dims[position];
    if op.space.total_dim() != target {
        return Err(Error::SpaceMismatch(format!(
            "operator of dimension {} cannot embed into subsystem of dimension {target}",
            op.space.total_dim()
        )));
    }
    let left: usize = space.dims[..position].iter().product();
    let right: usize = space.dims[position + 1..].iter().product();
    let eye_left: Array2<Complex64> = Array2::eye(left);
    let eye_right: Array2<Complex64> = Array2::eye(right);
    let matrix = kron(&kron(&eye_left, &op.matrix), &eye_right);
    Ok(Operator {
        space: space.clone(),
        matrix,
    })
}

/// Photon-mode annihilation operator embedded at subsystem 0.
pub fn photon_lowering(space: &HilbertSpace) -> Result<Operator> {
    let dim = space.dims[0];
    if dim < 2 {
        return Err(Error::InvalidDimension(
            "photon subsystem must have at least two levels".into(),
        ));
    }
    embed(&fock_lowering(dim - 1)?, space, 0)
}

impl Operator {
    /// Wrap a matrix, checking it is square and matches the space dimension.
    pub fn from_matrix(space: HilbertSpace, matrix: Array2<Complex64>) -> Result<Self> {
        let d = space.total_dim();
        if matrix.nrows() != d || matrix.ncols() != d {
            return Err(Error::InvalidDimension(format!(
                "matrix is {}x{} but the space has dimension {d}",
                matrix.nrows(),
                matrix.ncols()
            )));
        }
        Ok(Self { space, matrix })
    }

    pub fn identity(space: &HilbertSpace) -> Self {
        Self {
            space: space.clone(),
            matrix: Array2::eye(space.total_dim()),
        }
    }

    pub fn zero(space: &HilbertSpace) -> Self {
        let d = space.total_dim();
        Self {
            space: space.clone(),
            matrix: Array2::zeros((d, d)),
        }
    }

    pub fn space(&self) -> &HilbertSpace {
        &self.space
    }

    pub fn matrix(&self) -> &Array2<Complex64> {
        &self.matrix
    }

    fn check_same_space(&self, other: &Operator) -> Result<()> {
        if self.space != other.space {
            return Err(Error::SpaceMismatch(format!(
                "{:?} vs {:?}",
                self.space.dims, other.space.dims
            )));
        }
        Ok(())
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> Operator {
        Operator {
            space: self.space.clone(),
            matrix: self.matrix.t().mapv(|z| z.conj()),
        }
    }

    pub fn scale(&self, factor: Complex64) -> Operator {
        Operator {
            space: self.space.clone(),
            matrix: &self.matrix * factor,
        }
    }

    pub fn add(&self, other: &Operator) -> Result<Operator> {
        self.check_same_space(other)?;
        Ok(Operator {
            space: self.space.clone(),
            matrix: &self.matrix + &other.matrix,
        })
    }

    pub fn sub(&self, other: &Operator) -> Result<Operator> {
        self.check_same_space(other)?;
        Ok(Operator {
            space: self.space.clone(),
            matrix: &self.matrix - &other.matrix,
        })
    }

    pub fn matmul(&self, other: &Operator) -> Result<Operator> {
        crate::blas::single_thread();
        self.check_same_space(other)?;
        Ok(Operator {
            space: self.space.clone(),
            matrix: self.matrix.dot(&other.matrix),
        })
    }

    /// [self, other] = self·other − other·self.
    pub fn commutator(&self, other: &Operator) -> Result<Operator> {
        self.matmul(other)?.sub(&other.matmul(self)?)
    }

    /// {self, other} = self·other + other·self.
    pub fn anticommutator(&self, other: &Operator) -> Result<Operator> {
        self.matmul(other)?.add(&other.matmul(self)?)
    }

    pub fn trace(&self) -> Complex64 {
        self.matrix.diag().sum()
    }

    /// Tr(self · ρ).
    pub fn expectation(&self, rho: &DensityMatrix) -> Result<Complex64> {
        if self.space != rho.space {
            return Err(Error::SpaceMismatch(format!(
                "{:?} vs {:?}",
                self.space.dims, rho.space.dims
            )));
        }
        Ok(trace_of_product(&self.matrix, &rho.matrix))
    }

    /// Largest entry magnitude.
    pub fn norm_max(&self) -> f64 {
        max_abs(&self.matrix)
    }

    /// Largest entry magnitude of self − self†.
    pub fn hermiticity_deviation(&self) -> f64 {
        hermiticity_deviation(&self.matrix)
    }
}

/// A validated Hermitian, unit-trace, positive-semidefinite operator.
#[derive(Debug, Clone)]
pub struct DensityMatrix {
    space: HilbertSpace,
    matrix: Array2<Complex64>,
}

impl DensityMatrix {
    /// Validate against the default [`Tolerances`].
    pub fn new(space: HilbertSpace, matrix: Array2<Complex64>) -> Result<Self> {
        Self::with_tolerances(space, matrix, &Tolerances::default())
    }

    pub fn with_tolerances(
        space: HilbertSpace,
        matrix: Array2<Complex64>,
        tol: &Tolerances,
    ) -> Result<Self> {
        let d = space.total_dim();
        if matrix.nrows() != d || matrix.ncols() != d {
            return Err(Error::InvalidDimension(format!(
                "matrix is {}x{} but the space has dimension {d}",
                matrix.nrows(),
                matrix.ncols()
            )));
        }
        let herm = hermiticity_deviation(&matrix);
        if herm > tol.hermiticity {
            return Err(Error::InvalidState(format!(
                "not Hermitian: deviation {herm:.3e} exceeds {:.3e}",
                tol.hermiticity
            )));
        }
        let tr = matrix.diag().sum();
        if (tr.re - 1.0).abs() > tol.trace || tr.im.abs() > tol.trace {
            return Err(Error::InvalidState(format!(
                "trace {tr} deviates from one beyond {:.3e}",
                tol.trace
            )));
        }
        let min_eig = min_eigenvalue(&matrix)?;
        if min_eig < -tol.positivity {
            return Err(Error::InvalidState(format!(
                "minimum eigenvalue {min_eig:.3e} below -{:.3e}",
                tol.positivity
            )));
        }
        Ok(Self { space, matrix })
    }

    /// Pure state |i⟩⟨i| for a flat composite basis index.
    pub fn pure(space: HilbertSpace, flat_index: usize) -> Result<Self> {
        let d = space.total_dim();
        if flat_index >= d {
            return Err(Error::InvalidDimension(format!(
                "basis index {flat_index} out of range for dimension {d}"
            )));
        }
        let mut m = Array2::zeros((d, d));
        m[[flat_index, flat_index]] = Complex64::new(1.0, 0.0);
        Ok(Self { space, matrix: m })
    }

    pub fn space(&self) -> &HilbertSpace {
        &self.space
    }

    pub fn matrix(&self) -> &Array2<Complex64> {
        &self.matrix
    }

    /// Smallest eigenvalue (the matrix is Hermitian by construction).
    pub fn min_eigenvalue(&self) -> Result<f64> {
        min_eigenvalue(&self.matrix)
    }

    /// Population of the flat basis state i, i.e. Re ρ_ii.
    pub fn population(&self, flat_index: usize) -> f64 {
        self.matrix[[flat_index, flat_index]].re
    }
}

pub(crate) fn trace_of_product(a: &Array2<Complex64>, b: &Array2<Complex64>) -> Complex64 {
    let n = a.nrows();
    let mut acc = Complex64::new(0.0, 0.0);
    for i in 0..n {
        for j in 0..n {
            acc += a[[i, j]] * b[[j, i]];
        }
    }
    acc
}

pub(crate) fn max_abs(m: &Array2<Complex64>) -> f64 {
    m.iter().fold(0.0f64, |acc, z| acc.max(z.norm()))
}

pub(crate) fn hermiticity_deviation(m: &Array2<Complex64>) -> f64 {
    let n = m.nrows();
    let mut dev = 0.0f64;
    for i in 0..n {
        for j in i..n {
            dev = dev.max((m[[i, j]] - m[[j, i]].conj()).norm());
        }
    }
    dev
}

pub(crate) fn min_eigenvalue(m: &Array2<Complex64>) -> Result<f64> {
    crate::blas::single_thread();
    // Eigenvalues of the Hermitian part; callers have already bounded ‖m − m†‖.
    let herm = (m + &m.t().mapv(|z| z.conj())) * 0.5;
    let (vals, _): (Array1<f64>, _) = herm.eigh(UPLO::Lower)?;
    Ok(vals.iter().cloned().fold(f64::INFINITY, f64::min))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn fock_lowering_entries() {
        let a = fock_lowering(2).unwrap();
        assert_eq!(a.matrix()[[0, 1]], c(1.0));
        assert_eq!(a.matrix()[[1, 2]], c(2.0f64.sqrt()));
        let nonzero = a.matrix().iter().filter(|z| z.norm() > 0.0).count();
        assert_eq!(nonzero, 2);
    }

    #[test]
    fn fock_lowering_rejects_zero_truncation() {
        assert!(matches!(fock_lowering(0), Err(Error::InvalidDimension(_))));
    }

    #[test]
    fn number_operator_eigenvalue() {
        let a = fock_lowering(3).unwrap();
        let n = a.dagger().matmul(&a).unwrap();
        // a†a |2⟩ = 2 |2⟩
        assert!((n.matrix()[[2, 2]] - c(2.0)).norm() < 1e-14);
        for i in 0..4 {
            for j in 0..4 {
                if i != j {
                    assert_eq!(n.matrix()[[i, j]], c(0.0));
                }
            }
        }
    }

    #[test]
    fn truncated_commutator_identity() {
        // [a, a†] = I − (n_max+1)|n_max⟩⟨n_max| on the truncated space.
        for n_max in 1..=10 {
            let a = fock_lowering(n_max).unwrap();
            let comm = a.commutator(&a.dagger()).unwrap();
            let mut expected: Array2<Complex64> = Array2::eye(n_max + 1);
            expected[[n_max, n_max]] = c(-(n_max as f64));
            let dev = max_abs(&(&comm.matrix - &expected));
            assert!(dev < 1e-13, "n_max={n_max}: deviation {dev:.3e}");
        }
    }

    #[test]
    fn qubit_lowering_algebra() {
        let s = qubit_lowering();
        let proj = s.dagger().matmul(&s).unwrap();
        assert_eq!(proj.matrix()[[0, 0]], c(0.0));
        assert_eq!(proj.matrix()[[1, 1]], c(1.0));
        let nil = s.matmul(&s).unwrap();
        assert_eq!(max_abs(nil.matrix()), 0.0);
        let anti = s.anticommutator(&s.dagger()).unwrap();
        let eye2: Array2<Complex64> = Array2::eye(2);
        let dev = max_abs(&(&anti.matrix - &eye2));
        assert_eq!(dev, 0.0);
    }

    #[test]
    fn embed_identity_trace() {
        let space = HilbertSpace::new(&[3, 2, 2]).unwrap();
        let id2 = Operator::identity(&HilbertSpace::new(&[2]).unwrap());
        let e = embed(&id2, &space, 1).unwrap();
        assert_eq!(e.trace(), c(12.0));
    }

    #[test]
    fn embedded_disjoint_subsystems_commute() {
        let space = HilbertSpace::new(&[3, 2, 2]).unwrap();
        let s1 = embed(&qubit_lowering(), &space, 1).unwrap();
        let s2 = embed(&qubit_lowering(), &space, 2).unwrap();
        let comm = s1.commutator(&s2).unwrap();
        assert_eq!(max_abs(comm.matrix()), 0.0);
    }

    #[test]
    fn photon_lowering_action_on_basis() {
        // a |1,g,g⟩ = |0,g,g⟩ with the qubits untouched.
        let space = HilbertSpace::new(&[3, 2, 2]).unwrap();
        let a = photon_lowering(&space).unwrap();
        let from = space.flat_index(&[1, 0, 0]).unwrap();
        let to = space.flat_index(&[0, 0, 0]).unwrap();
        for row in 0..space.total_dim() {
            let expected = if row == to { c(1.0) } else { c(0.0) };
            assert_eq!(a.matrix()[[row, from]], expected);
        }
    }

    #[test]
    fn embed_errors() {
        let space = HilbertSpace::new(&[3, 2]).unwrap();
        let id3 = Operator::identity(&HilbertSpace::new(&[3]).unwrap());
        assert!(matches!(
            embed(&id3, &space, 1),
            Err(Error::SpaceMismatch(_))
        ));
        assert!(matches!(
            embed(&id3, &space, 2),
            Err(Error::InvalidDimension(_))
        ));
    }

    #[test]
    fn dagger_involution_exact() {
        let space = HilbertSpace::new(&[2, 2]).unwrap();
        let mut m = Array2::zeros((4, 4));
        for i in 0..4 {
            for j in 0..4 {
                m[[i, j]] = Complex64::new((i * 4 + j) as f64, (i as f64) - (j as f64));
            }
        }
        let op = Operator::from_matrix(space, m).unwrap();
        assert_eq!(op.dagger().dagger(), op);
    }

    #[test]
    fn commutator_with_itself_vanishes() {
        let a = fock_lowering(4).unwrap();
        let comm = a.commutator(&a).unwrap();
        assert_eq!(max_abs(comm.matrix()), 0.0);
    }

    #[test]
    fn expectation_of_identity_is_one() {
        let space = HilbertSpace::new(&[3]).unwrap();
        let rho = DensityMatrix::pure(space.clone(), 1).unwrap();
        let id = Operator::identity(&space);
        let val = id.expectation(&rho).unwrap();
        assert!((val - c(1.0)).norm() < 1e-15);
    }

    #[test]
    fn space_mismatch_is_detected() {
        let a = fock_lowering(2).unwrap();
        let b = fock_lowering(3).unwrap();
        assert!(matches!(a.add(&b), Err(Error::SpaceMismatch(_))));
    }

    #[test]
    fn density_matrix_validation() {
        let space = HilbertSpace::new(&[2]).unwrap();
        // Non-Hermitian rejected.
        let mut m = Array2::zeros((2, 2));
        m[[0, 0]] = c(1.0);
        m[[0, 1]] = c(0.5);
        assert!(DensityMatrix::new(space.clone(), m).is_err());
        // Wrong trace rejected.
        let m = Array2::eye(2);
        assert!(DensityMatrix::new(space.clone(), m).is_err());
        // Negative eigenvalue rejected.
        let mut m = Array2::zeros((2, 2));
        m[[0, 0]] = c(1.5);
        m[[1, 1]] = c(-0.5);
        assert!(DensityMatrix::new(space.clone(), m).is_err());
        // A valid mixed state passes.
        let mut m = Array2::zeros((2, 2));
        m[[0, 0]] = c(0.5);
        m[[1, 1]] = c(0.5);
        assert!(DensityMatrix::new(space, m).is_ok());
    }

    #[test]
    fn hermitian_combinations_stay_hermitian() {
        // H = Δ σ⁺σ⁻ + Ω(σ⁺ + σ⁻) built from the primitives.
        let space = HilbertSpace::new(&[4, 2]).unwrap();
        let s = embed(&qubit_lowering(), &space, 1).unwrap();
        let a = photon_lowering(&space).unwrap();
        let h = s
            .dagger()
            .matmul(&s)
            .unwrap()
            .scale(c(0.7))
            .add(&s.add(&s.dagger()).unwrap().scale(c(0.3)))
            .unwrap()
            .add(&a.matmul(&s.dagger()).unwrap().add(&a.dagger().matmul(&s).unwrap()).unwrap())
            .unwrap();
        assert!(h.hermiticity_deviation() <= 1e-12 * h.norm_max());
    }
}
