//! Lindblad generators, steady states, time evolution, and photon
//! correlation functions.
//!
//! Superoperators use the column-stacking convention
//! vec(AρB) = (Bᵀ ⊗ A)·vec(ρ), where vec stacks the columns of ρ, so the
//! entry ρ_ij sits at flat position j·d + i. This pins the matrix
//! representation bit-for-bit across implementations.

mod expm;

use ndarray::linalg::kron;
use ndarray::{Array1, Array2};
use ndarray_linalg::{Eig, Solve};
use num_complex::Complex64;

use crate::hilbert::{
    embed, photon_lowering, qubit_lowering, trace_of_product, DensityMatrix, HilbertSpace,
    Operator,
};
use crate::{Error, Result, Tolerances};

pub use expm::expm;

/// A dissipation channel: a collapse operator with its rate.
#[derive(Debug, Clone)]
pub struct Channel {
    pub rate: f64,
    pub collapse: Operator,
}

impl Channel {
    pub fn new(rate: f64, collapse: Operator) -> Result<Self> {
        if !(rate >= 0.0) {
            return Err(Error::InvalidParameter(format!(
                "channel rate {rate} must be non-negative"
            )));
        }
        Ok(Self { rate, collapse })
    }
}

/// Stack the columns of a matrix into a vector (ρ_ij ↦ position j·d + i).
pub fn vectorize(m: &Array2<Complex64>) -> Array1<Complex64> {
    let d = m.nrows();
    let mut v = Array1::zeros(d * d);
    for j in 0..d {
        for i in 0..d {
            v[j * d + i] = m[[i, j]];
        }
    }
    v
}

/// Inverse of [`vectorize`].
pub fn unvectorize(v: &Array1<Complex64>, d: usize) -> Array2<Complex64> {
    let mut m = Array2::zeros((d, d));
    for j in 0..d {
        for i in 0..d {
            m[[i, j]] = v[j * d + i];
        }
    }
    m
}

/// Thermal dissipation channels for a photon mode (subsystem 0) and any
/// number of qubits (remaining subsystems):
/// κ(n̄+1)·D[â], κ n̄·D[â†], and per qubit γ(n̄+1)·D[σ̂ⱼ⁻], γ n̄·D[σ̂ⱼ⁺].
/// One occupation is shared by every bath; use
/// [`thermal_channels_split`] to thermalize the cavity and qubit baths
/// separately. Channels with zero rate are dropped, so n̄ = 0 yields
/// exactly the zero-temperature channel set.
pub fn thermal_channels(
    kappa: f64,
    gamma: f64,
    n_thermal: f64,
    space: &HilbertSpace,
) -> Result<Vec<Channel>> {
    thermal_channels_split(kappa, gamma, n_thermal, n_thermal, space)
}

/// Thermal channels with independent cavity and qubit bath occupations.
pub fn thermal_channels_split(
    kappa: f64,
    gamma: f64,
    n_cavity: f64,
    n_qubit: f64,
    space: &HilbertSpace,
) -> Result<Vec<Channel>> {
    for (name, v) in [("cavity", n_cavity), ("qubit", n_qubit)] {
        if !(v >= 0.0) {
            return Err(Error::InvalidParameter(format!(
                "{name} thermal occupation {v} must be non-negative"
            )));
        }
    }
    if !(kappa >= 0.0) || !(gamma >= 0.0) {
        return Err(Error::InvalidParameter(
            "decay rates must be non-negative".into(),
        ));
    }
    if space.subsystem_dims()[1..].iter().any(|&d| d != 2) {
        return Err(Error::InvalidDimension(
            "thermal channels expect qubit subsystems of dimension 2".into(),
        ));
    }
    let mut channels = Vec::new();
    let a = photon_lowering(space)?;
    let mut push = |rate: f64, op: Operator| -> Result<()> {
        if rate > 0.0 {
            channels.push(Channel::new(rate, op)?);
        }
        Ok(())
    };
    push(kappa * (n_cavity + 1.0), a.clone())?;
    push(kappa * n_cavity, a.dagger())?;
    for position in 1..space.subsystem_dims().len() {
        let s = embed(&qubit_lowering(), space, position)?;
        push(gamma * (n_qubit + 1.0), s.clone())?;
        push(gamma * n_qubit, s.dagger())?;
    }
    Ok(channels)
}

/// Column-stacked matrix representation of a Lindblad generator.
#[derive(Debug, Clone)]
pub struct Liouvillian {
    space: HilbertSpace,
    matrix: Array2<Complex64>,
}

impl Liouvillian {
    /// Build L[ρ] = −i[H, ρ] + Σ rate·(cρc† − ½{c†c, ρ}) as a d²×d² matrix.
    pub fn new(hamiltonian: &Operator, channels: &[Channel]) -> Result<Self> {
        Self::with_tolerances(hamiltonian, channels, &Tolerances::default())
    }

    pub fn with_tolerances(
        hamiltonian: &Operator,
        channels: &[Channel],
        tol: &Tolerances,
    ) -> Result<Self> {
        crate::blas::single_thread();
        let dev = hamiltonian.hermiticity_deviation();
        let scale = hamiltonian.norm_max().max(1.0);
        if dev > tol.hermiticity * scale {
            return Err(Error::NotHermitian {
                deviation: dev,
                tolerance: tol.hermiticity * scale,
            });
        }
        for ch in channels {
            if ch.collapse.space() != hamiltonian.space() {
                return Err(Error::SpaceMismatch(
                    "collapse operator lives on a different space than H".into(),
                ));
            }
        }
        let space = hamiltonian.space().clone();
        let d = space.total_dim();
        let eye: Array2<Complex64> = Array2::eye(d);
        let h = hamiltonian.matrix();
        let minus_i = Complex64::new(0.0, -1.0);
        let mut l = (kron(&eye, h) - kron(&h.t().to_owned(), &eye)) * minus_i;
        let half = Complex64::new(0.5, 0.0);
        for ch in channels {
            let c = ch.collapse.matrix();
            let cdc = ch.collapse.dagger().matmul(&ch.collapse)?;
            let cdc = cdc.matrix();
            let rate = Complex64::new(ch.rate, 0.0);
            l = l
                + (kron(&c.mapv(|z| z.conj()), c)
                    - kron(&eye, cdc) * half
                    - kron(&cdc.t().to_owned(), &eye) * half)
                    * rate;
        }
        Ok(Self { space, matrix: l })
    }

    pub fn space(&self) -> &HilbertSpace {
        &self.space
    }

    pub fn matrix(&self) -> &Array2<Complex64> {
        &self.matrix
    }

    /// L[m] for an arbitrary (not necessarily Hermitian) matrix m.
    pub fn apply(&self, m: &Array2<Complex64>) -> Array2<Complex64> {
        let d = self.space.total_dim();
        unvectorize(&self.matrix.dot(&vectorize(m)), d)
    }

    /// Unique steady state: one row of L is replaced by the trace functional
    /// and the square system solved directly; the residual is then verified
    /// against the untouched generator.
    pub fn steady_state(&self) -> Result<DensityMatrix> {
        self.steady_state_with(&Tolerances::default())
    }

    pub fn steady_state_with(&self, tol: &Tolerances) -> Result<DensityMatrix> {
        crate::blas::single_thread();
        let d = self.space.total_dim();
        let n = d * d;
        let mut m = self.matrix.clone();
        // Row 0 is the equation for dρ₀₀/dt, which trace conservation makes
        // redundant; overwrite it with Tr ρ = 1.
        for col in 0..n {
            m[[0, col]] = Complex64::new(0.0, 0.0);
        }
        for k in 0..d {
            m[[0, k * d + k]] = Complex64::new(1.0, 0.0);
        }
        let mut b: Array1<Complex64> = Array1::zeros(n);
        b[0] = Complex64::new(1.0, 0.0);
        let x = m
            .solve_into(b)
            .map_err(|e| Error::SingularSteadyState(format!("direct solve failed: {e}")))?;
        let raw = unvectorize(&x, d);
        let herm = (&raw + &raw.t().mapv(|z| z.conj())) * 0.5;
        let tr = herm.diag().sum().re;
        if !tr.is_finite() || tr.abs() < 1e-300 {
            return Err(Error::SingularSteadyState(format!(
                "solution trace {tr} is degenerate"
            )));
        }
        let rho = herm / Complex64::new(tr, 0.0);

        let residual = l2_norm(&self.matrix.dot(&vectorize(&rho)));
        let l_norm = frobenius_norm(&self.matrix);
        let rel = residual / l_norm;
        if !(rel <= tol.steady_residual) {
            return Err(Error::SingularSteadyState(format!(
                "relative residual {rel:.3e} exceeds {:.3e}; the steady manifold may be degenerate",
                tol.steady_residual
            )));
        }
        DensityMatrix::with_tolerances(self.space.clone(), rho, tol)
    }

    /// Propagate ρ₀ to time t via exp(L t) applied to vec(ρ₀).
    pub fn evolve(&self, rho0: &DensityMatrix, t: f64) -> Result<DensityMatrix> {
        self.evolve_with(rho0, t, &Tolerances::default())
    }

    pub fn evolve_with(&self, rho0: &DensityMatrix, t: f64, tol: &Tolerances) -> Result<DensityMatrix> {
        if !(t >= 0.0) {
            return Err(Error::InvalidParameter(format!(
                "evolution time {t} must be non-negative"
            )));
        }
        if rho0.space() != &self.space {
            return Err(Error::SpaceMismatch(
                "initial state lives on a different space".into(),
            ));
        }
        if t == 0.0 {
            return Ok(rho0.clone());
        }
        let d = self.space.total_dim();
        let propagator = expm(&(&self.matrix * Complex64::new(t, 0.0)))?;
        let raw = unvectorize(&propagator.dot(&vectorize(rho0.matrix())), d);
        let tr = raw.diag().sum();
        if (tr.re - 1.0).abs() > tol.evolve_trace || tr.im.abs() > tol.evolve_trace {
            return Err(Error::Backend(format!(
                "propagation lost trace: Tr ρ(t) = {tr}"
            )));
        }
        let herm = (&raw + &raw.t().mapv(|z| z.conj())) * 0.5;
        let rho = herm / Complex64::new(tr.re, 0.0);
        DensityMatrix::with_tolerances(self.space.clone(), rho, tol)
    }

    /// Time-delayed second-order correlation
    /// g²(t) = Tr[â†â · exp(Lt)(â ρ_s â†)] / ⟨â†â⟩² on the given ascending
    /// time grid, evaluated through an eigendecomposition of L (with a
    /// step-by-step propagator fallback when the eigenbasis is
    /// ill-conditioned).
    pub fn g2_tau(
        &self,
        rho_s: &DensityMatrix,
        a: &Operator,
        t_grid: &[f64],
    ) -> Result<Vec<(f64, f64)>> {
        if t_grid.is_empty() {
            return Ok(Vec::new());
        }
        if t_grid.windows(2).any(|w| w[1] < w[0]) || t_grid[0] < 0.0 {
            return Err(Error::InvalidParameter(
                "time grid must be ascending and non-negative".into(),
            ));
        }
        crate::blas::single_thread();
        let number_op = a.dagger().matmul(a)?;
        let n_mean = number_op.expectation(rho_s)?.re;
        if !(n_mean > 0.0) {
            return Err(Error::UndefinedCorrelation);
        }
        let d = self.space.total_dim();
        let jumped = a.matrix().dot(rho_s.matrix()).dot(&a.dagger().matrix().view());
        let x0 = vectorize(&jumped);

        let norm_sq = n_mean * n_mean;
        let value_at = |xt: &Array2<Complex64>| trace_of_product(number_op.matrix(), xt).re / norm_sq;

        // Diagonalize once; every grid point is then a vector operation.
        let (eigvals, eigvecs) = self.matrix.eig()?;
        let y0 = eigvecs.solve(&x0)?;
        let recon = eigvecs.dot(&y0);
        let recon_err = l2_norm(&(&recon - &x0)) / l2_norm(&x0).max(1e-300);
        if recon_err <= 1e-8 {
            let mut out = Vec::with_capacity(t_grid.len());
            for &t in t_grid {
                let xt = if t == 0.0 {
                    jumped.clone()
                } else {
                    let phases: Array1<Complex64> =
                        eigvals.iter().zip(y0.iter()).map(|(w, y)| (w * t).exp() * y).collect();
                    unvectorize(&eigvecs.dot(&phases), d)
                };
                out.push((t, value_at(&xt)));
            }
            return Ok(out);
        }

        // Fallback: propagate interval by interval with the matrix exponential.
        let mut out = Vec::with_capacity(t_grid.len());
        let mut current = jumped.clone();
        let mut t_prev = 0.0;
        for &t in t_grid {
            let dt = t - t_prev;
            if dt > 0.0 {
                let step = expm(&(&self.matrix * Complex64::new(dt, 0.0)))?;
                current = unvectorize(&step.dot(&vectorize(&current)), d);
                t_prev = t;
            }
            out.push((t, value_at(&current)));
        }
        Ok(out)
    }
}

/// Equal-time second-order correlation ⟨â†â†ââ⟩ / ⟨â†â⟩².
pub fn g2_zero(rho: &DensityMatrix, a: &Operator) -> Result<f64> {
    let number_op = a.dagger().matmul(a)?;
    let n_mean = number_op.expectation(rho)?.re;
    if !(n_mean > 0.0) {
        return Err(Error::UndefinedCorrelation);
    }
    let pair = a
        .dagger()
        .matmul(&a.dagger())?
        .matmul(a)?
        .matmul(a)?;
    let pair_mean = pair.expectation(rho)?.re;
    Ok(pair_mean / (n_mean * n_mean))
}

pub(crate) fn l2_norm(v: &Array1<Complex64>) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

pub(crate) fn frobenius_norm(m: &Array2<Complex64>) -> f64 {
    m.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hilbert::{fock_lowering, hermiticity_deviation, max_abs};

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn photon_space(n_max: usize) -> HilbertSpace {
        HilbertSpace::new(&[n_max + 1]).unwrap()
    }

    #[test]
    fn vectorization_round_trip() {
        let mut m = Array2::zeros((3, 3));
        for i in 0..3 {
            for j in 0..3 {
                m[[i, j]] = Complex64::new((3 * i + j) as f64, -(j as f64));
            }
        }
        let v = vectorize(&m);
        // Column stacking: ρ_ij at j·d + i.
        let at = |i: usize, j: usize| v[j * 3 + i];
        assert_eq!(at(1, 0), m[[1, 0]]);
        assert_eq!(at(0, 2), m[[0, 2]]);
        assert_eq!(unvectorize(&v, 3), m);
    }

    #[test]
    fn pure_decay_rate_of_mean_photon_number() {
        // H = 0, one channel (κ, a), ρ = |1⟩⟨1|: d⟨a†a⟩/dt = −κ at t = 0.
        let kappa = 0.7;
        let space = photon_space(3);
        let a = photon_lowering(&space).unwrap();
        let l = Liouvillian::new(
            &Operator::zero(&space),
            &[Channel::new(kappa, a.clone()).unwrap()],
        )
        .unwrap();
        let rho = DensityMatrix::pure(space, 1).unwrap();
        let drho = l.apply(rho.matrix());
        let n_op = a.dagger().matmul(&a).unwrap();
        let rate = trace_of_product(n_op.matrix(), &drho).re;
        assert!((rate + kappa).abs() < 1e-12);
    }

    #[test]
    fn lindblad_output_is_hermitian_and_traceless() {
        let space = HilbertSpace::new(&[3, 2]).unwrap();
        let a = photon_lowering(&space).unwrap();
        let s = embed(&qubit_lowering(), &space, 1).unwrap();
        let h = a
            .matmul(&s.dagger())
            .unwrap()
            .add(&a.dagger().matmul(&s).unwrap())
            .unwrap();
        let l = Liouvillian::new(
            &h,
            &[
                Channel::new(1.0, a).unwrap(),
                Channel::new(0.3, s).unwrap(),
            ],
        )
        .unwrap();

        // Deterministic pseudo-random Hermitian input.
        let d = space.total_dim();
        let mut m = Array2::zeros((d, d));
        let mut seed = 1u64;
        let mut next = || {
            seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((seed >> 11) as f64) / ((1u64 << 53) as f64) - 0.5
        };
        for i in 0..d {
            for j in 0..d {
                m[[i, j]] = Complex64::new(next(), next());
            }
        }
        let herm = (&m + &m.t().mapv(|z: Complex64| z.conj())) * 0.5;
        let out = l.apply(&herm);
        assert!(hermiticity_deviation(&out) < 1e-12 * max_abs(&out).max(1.0));
        assert!(out.diag().sum().norm() < 1e-12 * max_abs(&out).max(1.0));
    }

    #[test]
    fn trace_functional_annihilates_liouvillian() {
        let space = HilbertSpace::new(&[4, 2]).unwrap();
        let a = photon_lowering(&space).unwrap();
        let s = embed(&qubit_lowering(), &space, 1).unwrap();
        let h = a
            .dagger()
            .matmul(&a)
            .unwrap()
            .scale(c(0.5))
            .add(&s.add(&s.dagger()).unwrap().scale(c(0.2)))
            .unwrap();
        let l = Liouvillian::new(
            &h,
            &[
                Channel::new(1.0, a).unwrap(),
                Channel::new(0.05, s).unwrap(),
            ],
        )
        .unwrap();
        let d = space.total_dim();
        // Row functional of the trace: sum of rows at diagonal positions.
        let mut worst = 0.0f64;
        for col in 0..d * d {
            let mut acc = Complex64::new(0.0, 0.0);
            for k in 0..d {
                acc += l.matrix()[[k * d + k, col]];
            }
            worst = worst.max(acc.norm());
        }
        assert!(worst <= 1e-9 * max_abs(l.matrix()));
    }

    #[test]
    fn non_hermitian_hamiltonian_rejected() {
        let space = photon_space(2);
        let a = photon_lowering(&space).unwrap();
        assert!(matches!(
            Liouvillian::new(&a, &[]),
            Err(Error::NotHermitian { .. })
        ));
    }

    #[test]
    fn thermal_channels_zero_temperature_set() {
        let space = HilbertSpace::new(&[4, 2, 2]).unwrap();
        let chans = thermal_channels(1.0, 0.1, 0.0, &space).unwrap();
        assert_eq!(chans.len(), 3);
        assert_eq!(chans[0].rate, 1.0);
        assert_eq!(chans[1].rate, 0.1);
        assert_eq!(chans[2].rate, 0.1);
        // First channel is the photon annihilator.
        let a = photon_lowering(&space).unwrap();
        assert_eq!(chans[0].collapse.matrix(), a.matrix());
    }

    #[test]
    fn thermal_channel_rates_scale_linearly() {
        let space = HilbertSpace::new(&[3, 2]).unwrap();
        let one = thermal_channels(1.0, 0.0, 0.1, &space).unwrap();
        let two = thermal_channels(1.0, 0.0, 0.2, &space).unwrap();
        // Upward channel κ·n̄ doubles when n̄ doubles.
        assert!((two[1].rate - 2.0 * one[1].rate).abs() < 1e-15);
        assert!(matches!(
            thermal_channels(1.0, 0.1, -0.5, &space),
            Err(Error::InvalidParameter(_))
        ));
    }

    #[test]
    fn split_thermal_occupations() {
        // Cavity-only thermalization keeps the qubit channels cold.
        let space = HilbertSpace::new(&[3, 2]).unwrap();
        let split = thermal_channels_split(1.0, 0.5, 0.2, 0.0, &space).unwrap();
        // a down, a up, qubit down — the qubit up-channel rate is zero.
        assert_eq!(split.len(), 3);
        assert!((split[0].rate - 1.2).abs() < 1e-15);
        assert!((split[1].rate - 0.2).abs() < 1e-15);
        assert!((split[2].rate - 0.5).abs() < 1e-15);
    }

    #[test]
    fn thermal_cavity_fixed_point() {
        // Undriven cavity with n̄ = 0.1 settles at ⟨a†a⟩ = 0.1.
        let space = photon_space(12);
        let chans = thermal_channels(1.0, 0.0, 0.1, &space).unwrap();
        let l = Liouvillian::new(&Operator::zero(&space), &chans).unwrap();
        let rho = l.steady_state().unwrap();
        let a = photon_lowering(&space).unwrap();
        let n = a.dagger().matmul(&a).unwrap().expectation(&rho).unwrap().re;
        assert!((n - 0.1).abs() < 1e-4, "thermal occupation {n}");
    }

    #[test]
    fn driven_damped_qubit_steady_state() {
        // H = Δσ⁺σ⁻ + Ω(σ⁺+σ⁻) with decay γ has the closed-form excited
        // population ρ_ee = Ω² / (Δ² + γ²/4 + 2Ω²); values frozen from the
        // four-unknown algebraic solve of the two-level master equation.
        let space = HilbertSpace::new(&[2]).unwrap();
        let s = fock_lowering(1).unwrap();
        for (delta, omega, gamma, expected) in [
            (0.0, 0.3, 1.0, 0.209302325581395),
            (0.5, 0.2, 0.7, 0.088397790055249),
            (1.0, 1.0, 0.4, 0.328947368421053),
        ] {
            let h = s
                .dagger()
                .matmul(&s)
                .unwrap()
                .scale(c(delta))
                .add(&s.add(&s.dagger()).unwrap().scale(c(omega)))
                .unwrap();
            let l = Liouvillian::new(&h, &[Channel::new(gamma, s.clone()).unwrap()]).unwrap();
            let rho = l.steady_state().unwrap();
            let _ = space;
            let pee = rho.population(1);
            assert!(
                (pee - expected).abs() < 1e-10,
                "Δ={delta} Ω={omega} γ={gamma}: ρ_ee = {pee}, expected {expected}"
            );
            let formula = omega * omega / (delta * delta + gamma * gamma / 4.0 + 2.0 * omega * omega);
            assert!((pee - formula).abs() < 1e-12);
        }
    }

    #[test]
    fn evolve_zero_time_is_identity() {
        let space = photon_space(2);
        let a = photon_lowering(&space).unwrap();
        let l = Liouvillian::new(&Operator::zero(&space), &[Channel::new(1.0, a).unwrap()]).unwrap();
        let rho = DensityMatrix::pure(space, 1).unwrap();
        let out = l.evolve(&rho, 0.0).unwrap();
        assert_eq!(out.matrix(), rho.matrix());
        assert!(matches!(
            l.evolve(&rho, -1.0),
            Err(Error::InvalidParameter(_))
        ));
    }

    #[test]
    fn cavity_decay_follows_exponential_law() {
        let kappa = 1.0;
        let space = photon_space(4);
        let a = photon_lowering(&space).unwrap();
        let l = Liouvillian::new(&Operator::zero(&space), &[Channel::new(kappa, a.clone()).unwrap()]).unwrap();
        let n_op = a.dagger().matmul(&a).unwrap();
        let rho0 = DensityMatrix::pure(space, 1).unwrap();
        for t in [0.1, 0.5, 1.0, 3.0] {
            let rho_t = l.evolve(&rho0, t).unwrap();
            let n = n_op.expectation(&rho_t).unwrap().re;
            assert!(
                (n - (-kappa * t).exp()).abs() < 1e-6,
                "t={t}: ⟨n⟩={n} vs {}",
                (-kappa * t).exp()
            );
        }
    }

    #[test]
    fn long_time_evolution_reaches_steady_state() {
        // Driven damped qubit: ρ(t→∞) matches the direct steady-state solve.
        let s = fock_lowering(1).unwrap();
        let h = s.add(&s.dagger()).unwrap().scale(c(0.2));
        let l = Liouvillian::new(&h, &[Channel::new(1.0, s).unwrap()]).unwrap();
        let rho0 = DensityMatrix::pure(HilbertSpace::new(&[2]).unwrap(), 0).unwrap();
        let evolved = l.evolve(&rho0, 50.0).unwrap();
        let steady = l.steady_state().unwrap();
        let dev = max_abs(&(evolved.matrix() - steady.matrix()));
        assert!(dev < 1e-6, "deviation {dev:.3e}");
    }

    #[test]
    fn g2_zero_of_reference_states() {
        let space = photon_space(15);
        let a = photon_lowering(&space).unwrap();
        let d = space.total_dim();

        // Single Fock state |1⟩: g² = 0.
        let fock1 = DensityMatrix::pure(space.clone(), 1).unwrap();
        assert_eq!(g2_zero(&fock1, &a).unwrap(), 0.0);

        // Thermal state: g² = 2.
        let nbar = 0.3f64;
        let mut m = Array2::zeros((d, d));
        let q = nbar / (1.0 + nbar);
        let norm: f64 = (0..d).map(|n| q.powi(n as i32)).sum();
        for n in 0..d {
            m[[n, n]] = c(q.powi(n as i32) / norm);
        }
        let thermal = DensityMatrix::new(space.clone(), m).unwrap();
        let g2 = g2_zero(&thermal, &a).unwrap();
        assert!((g2 - 2.0).abs() < 1e-6, "thermal g² = {g2}");

        // Coherent state with |α|² = 0.5: g² = 1.
        let alpha_sq = 0.5f64;
        let mut ket: Array1<Complex64> = Array1::zeros(d);
        let mut log_fact = 0.0;
        for n in 0..d {
            if n > 0 {
                log_fact += (n as f64).ln();
            }
            let amp = (-alpha_sq / 2.0 + 0.5 * (n as f64) * alpha_sq.ln() - 0.5 * log_fact).exp();
            ket[n] = c(amp);
        }
        let norm: f64 = ket.iter().map(|z| z.norm_sqr()).sum();
        let mut m = Array2::zeros((d, d));
        for i in 0..d {
            for j in 0..d {
                m[[i, j]] = ket[i] * ket[j].conj() / norm;
            }
        }
        let coherent = DensityMatrix::new(space.clone(), m).unwrap();
        let g2 = g2_zero(&coherent, &a).unwrap();
        assert!((g2 - 1.0).abs() < 1e-3, "coherent g² = {g2}");

        // Vacuum: undefined.
        let vacuum = DensityMatrix::pure(space, 0).unwrap();
        assert!(matches!(
            g2_zero(&vacuum, &a),
            Err(Error::UndefinedCorrelation)
        ));
    }

    #[test]
    fn g2_tau_grid_validation() {
        let s = fock_lowering(1).unwrap();
        let h = s.add(&s.dagger()).unwrap().scale(c(0.2));
        let l = Liouvillian::new(&h, &[Channel::new(1.0, s.clone()).unwrap()]).unwrap();
        let rho = l.steady_state().unwrap();
        assert!(matches!(
            l.g2_tau(&rho, &s, &[1.0, 0.5]),
            Err(Error::InvalidParameter(_))
        ));
    }
}
