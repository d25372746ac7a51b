//! Steady state of the three-body model on the truncated two-excitation
//! manifold, and the asymptotic closed forms for the photon populations.
//!
//! The truncated basis keeps every state with at most two excitations that
//! the driven dynamics can reach:
//!
//! | index | state        | index | state        |
//! |-------|--------------|-------|--------------|
//! | 0     | |0,g₁,g₂⟩    | 5     | |1,e₁,g₂⟩    |
//! | 1     | |0,e₁,g₂⟩    | 6     | |1,g₁,e₂⟩    |
//! | 2     | |0,g₁,e₂⟩    | 7     | |1,e₁,e₂⟩    |
//! | 3     | |0,e₁,e₂⟩    | 8     | |2,g₁,g₂⟩    |
//! | 4     | |1,g₁,g₂⟩    | 9     | |2,e₁,g₂⟩    |
//!
//! Within this manifold the master equation closes into a 100-unknown
//! linear system: the non-Hermitian part absorbs half the decay rates into
//! the complex detuning Δ̃ = Δ − iγ/2, and the quantum-jump maps feed
//! populations downward. Solving it with the trace constraint gives the
//! steady state exactly (at zero temperature).

use ndarray::linalg::kron;
use ndarray::{Array1, Array2};
use ndarray_linalg::Solve;
use num_complex::Complex64;

use crate::dynamics::{unvectorize, vectorize};
use crate::hilbert::{hermiticity_deviation, min_eigenvalue};
use crate::models::TpbParams;
use crate::{Error, Result, Tolerances};

/// One basis state of the truncated manifold.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TruncatedState {
    pub photons: usize,
    pub qubit1_excited: bool,
    pub qubit2_excited: bool,
}

impl TruncatedState {
    /// Flat index of this state in the numerical tensor-product space
    /// `[n_max+1, 2, 2]` (last factor fastest).
    pub fn composite_index(&self, n_max: usize) -> usize {
        debug_assert!(self.photons <= n_max);
        (self.photons * 2 + self.qubit1_excited as usize) * 2 + self.qubit2_excited as usize
    }
}

const fn state(photons: usize, q1: bool, q2: bool) -> TruncatedState {
    TruncatedState {
        photons,
        qubit1_excited: q1,
        qubit2_excited: q2,
    }
}

/// The fixed ordering of the ten truncated basis states.
pub const TRUNCATED_BASIS: [TruncatedState; 10] = [
    state(0, false, false),
    state(0, true, false),
    state(0, false, true),
    state(0, true, true),
    state(1, false, false),
    state(1, true, false),
    state(1, false, true),
    state(1, true, true),
    state(2, false, false),
    state(2, true, false),
];

const DIM: usize = 10;

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// The 10×10 non-Hermitian Hamiltonian of the truncated manifold, with
/// Δ̃ = Δ − iγ/2 on the qubit excitations and −iκ/2 per photon.
pub(crate) fn effective_hamiltonian(p: &TpbParams) -> Array2<Complex64> {
    let dt = Complex64::new(p.detuning, -0.5 * p.gamma);
    let ik = Complex64::new(0.0, -0.5 * p.kappa);
    let omega = c(p.drive);
    let j = c(p.coupling);
    let sqrt2_j = c(2.0f64.sqrt() * p.coupling);

    let mut h = Array2::zeros((DIM, DIM));
    let diag = [
        c(0.0),
        dt,
        dt,
        dt * 2.0,
        ik,
        dt + ik,
        dt + ik,
        dt * 2.0 + ik,
        ik * 2.0,
        dt + ik * 2.0,
    ];
    for (i, v) in diag.into_iter().enumerate() {
        h[[i, i]] = v;
    }
    // Drive on qubit 2 couples (n, q₁, g) ↔ (n, q₁, e); the truncation has
    // no partner for indices 8 and 9.
    for (i, j_idx) in [(0, 2), (1, 3), (4, 6), (5, 7)] {
        h[[i, j_idx]] = omega;
        h[[j_idx, i]] = omega;
    }
    // Three-body exchange |n,g₁,e₂⟩ ↔ |n+1,e₁,g₂⟩ with strength J√(n+1).
    h[[2, 5]] = j;
    h[[5, 2]] = j;
    h[[6, 9]] = sqrt2_j;
    h[[9, 6]] = sqrt2_j;
    h
}

/// Truncated jump operators (photon loss, qubit-1 decay, qubit-2 decay).
pub(crate) fn jump_operators() -> [Array2<Complex64>; 3] {
    let mut a = Array2::zeros((DIM, DIM));
    for (i, j, v) in [
        (0, 4, 1.0),
        (1, 5, 1.0),
        (2, 6, 1.0),
        (3, 7, 1.0),
        (4, 8, 2.0f64.sqrt()),
        (5, 9, 2.0f64.sqrt()),
    ] {
        a[[i, j]] = c(v);
    }
    let mut s1 = Array2::zeros((DIM, DIM));
    for (i, j) in [(0, 1), (2, 3), (4, 5), (6, 7), (8, 9)] {
        s1[[i, j]] = c(1.0);
    }
    let mut s2 = Array2::zeros((DIM, DIM));
    for (i, j) in [(0, 2), (1, 3), (4, 6), (5, 7)] {
        s2[[i, j]] = c(1.0);
    }
    [a, s1, s2]
}

/// Steady state of the truncated manifold with exact populations.
#[derive(Debug, Clone)]
pub struct TruncatedSteadyState {
    matrix: Array2<Complex64>,
}

impl TruncatedSteadyState {
    /// The 10×10 density matrix in the [`TRUNCATED_BASIS`] ordering.
    pub fn matrix(&self) -> &Array2<Complex64> {
        &self.matrix
    }

    /// Population ρ_ii of basis state i.
    pub fn population(&self, index: usize) -> f64 {
        self.matrix[[index, index]].re
    }

    /// Mean photon number Σ n ρ_ii over the manifold.
    pub fn mean_photons(&self) -> f64 {
        TRUNCATED_BASIS
            .iter()
            .enumerate()
            .map(|(i, s)| s.photons as f64 * self.population(i))
            .sum()
    }

    /// Two-photon population ρ₈₈ + ρ₉₉.
    pub fn two_photon(&self) -> f64 {
        self.population(8) + self.population(9)
    }

    /// g²(0) = 2·(two-photon population) / N².
    pub fn g2_zero(&self) -> Result<f64> {
        let n = self.mean_photons();
        if !(n > 0.0) {
            return Err(Error::UndefinedCorrelation);
        }
        Ok(2.0 * self.two_photon() / (n * n))
    }
}

/// Solve −i(H_eff ρ − ρ H_eff†) + J_κ[ρ] + J_γ[ρ] = 0 with Tr ρ = 1 as a
/// 100-unknown linear system. Valid at zero temperature only.
pub fn tpb_truncated_steady(p: &TpbParams) -> Result<TruncatedSteadyState> {
    p.validate()?;
    if p.n_thermal != 0.0 {
        return Err(Error::InvalidParameter(
            "the truncated solve assumes zero thermal occupation".into(),
        ));
    }
    crate::blas::single_thread();
    let h = effective_hamiltonian(p);
    let [a, s1, s2] = jump_operators();
    let eye: Array2<Complex64> = Array2::eye(DIM);
    let minus_i = Complex64::new(0.0, -1.0);

    // vec(H ρ − ρ H†) = (I ⊗ H − conj(H) ⊗ I) vec(ρ) in column stacking.
    let mut m = (kron(&eye, &h) - kron(&h.mapv(|z| z.conj()), &eye)) * minus_i;
    for (rate, jump) in [(p.kappa, &a), (p.gamma, &s1), (p.gamma, &s2)] {
        m = m + kron(&jump.mapv(|z| z.conj()), jump) * c(rate);
    }

    let generator = m.clone();
    for col in 0..DIM * DIM {
        m[[0, col]] = c(0.0);
    }
    for k in 0..DIM {
        m[[0, k * DIM + k]] = c(1.0);
    }
    let mut b: Array1<Complex64> = Array1::zeros(DIM * DIM);
    b[0] = c(1.0);
    let x = m
        .solve_into(b)
        .map_err(|e| Error::SingularSteadyState(format!("truncated solve failed: {e}")))?;
    let raw = unvectorize(&x, DIM);
    let herm = (&raw + &raw.t().mapv(|z| z.conj())) * 0.5;
    let tr = herm.diag().sum().re;
    if !tr.is_finite() || tr.abs() < 1e-300 {
        return Err(Error::SingularSteadyState(format!(
            "solution trace {tr} is degenerate"
        )));
    }
    let rho = herm / c(tr);

    let tol = Tolerances::default();
    let residual: f64 = generator
        .dot(&vectorize(&rho))
        .iter()
        .map(|z| z.norm_sqr())
        .sum::<f64>()
        .sqrt();
    let scale: f64 = generator.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if !(residual / scale <= tol.steady_residual) {
        return Err(Error::SingularSteadyState(format!(
            "relative residual {:.3e}",
            residual / scale
        )));
    }
    if hermiticity_deviation(&rho) > tol.hermiticity {
        return Err(Error::InvalidState("truncated state not Hermitian".into()));
    }
    if min_eigenvalue(&rho)? < -tol.positivity {
        return Err(Error::InvalidState(
            "truncated state has a negative eigenvalue".into(),
        ));
    }
    Ok(TruncatedSteadyState { matrix: rho })
}

/// Leading-order mean photon number
/// N ≈ J²Ω² / [(J²−Δ²)² + Δ²κ²/4 + J²κγ + αΩ²], α = J²κ/γ + 3κ²/4.
///
/// Valid for weak drive and small qubit decay; the drive resonances at
/// Δ = 0 (weak coupling) and |Δ| = J (strong coupling) appear directly in
/// the denominator.
pub fn tpb_mean_photons_approx(p: &TpbParams) -> f64 {
    let (j, omega, delta, kappa, gamma) = (p.coupling, p.drive, p.detuning, p.kappa, p.gamma);
    let alpha = j * j * kappa / gamma + 0.75 * kappa * kappa;
    let j2 = j * j;
    let d2 = delta * delta;
    let denom = (j2 - d2).powi(2) + d2 * kappa * kappa / 4.0 + j2 * kappa * gamma
        + alpha * omega * omega;
    j2 * omega * omega / denom
}

/// Which asymptotic branch of the two-photon population to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CouplingRegime {
    /// Weak branch below J = κ, strong branch above.
    Auto,
    Weak,
    Strong,
}

/// Weak-coupling (J ≪ κ) asymptotic two-photon population. The decimal
/// coefficients are part of the closed form and are kept exactly as given.
pub fn tpb_two_photon_weak(p: &TpbParams) -> f64 {
    let (j, omega, delta, kappa, gamma) = (p.coupling, p.drive, p.detuning, p.kappa, p.gamma);
    let (j2, g2, o2) = (j * j, gamma * gamma, omega * omega);
    let o4 = o2 * o2;
    let o6 = o4 * o2;

    let m1 = delta.powi(8) * gamma * kappa.powi(-5)
        + delta.powi(10) * (0.07 * gamma * kappa.powi(-7) + 0.5 * g2 * kappa.powi(-8));
    let m2 = delta.powi(14) * (20.0 * g2 * kappa.powi(-2) + 230.0 * gamma.powi(3) * kappa.powi(-3))
        + delta.powi(16)
            * (17.0 * j2 * gamma * kappa.powi(-5)
                + 130.0 * j2 * g2 * kappa.powi(-6)
                + 4.0 * g2 * kappa.powi(-4)
                + 40.0 * gamma.powi(3) * kappa.powi(-5)
                + 170.0 * g2 * g2 * kappa.powi(-6));
    let xi = 2.0 * j2.powi(3) * kappa * gamma.powi(3)
        + 42.0 * j2.powi(3) * g2 * g2
        + j2 * j2 * kappa * kappa * g2 * g2;
    let theta = 2.0 * j2 * j2 * kappa * kappa
        + 1.5 * j2 * kappa.powi(3) * gamma
        + 500.0 * j2 * kappa * gamma.powi(3)
        + 6.0 * kappa.powi(3) * gamma.powi(3)
        + 80.0 * kappa * kappa * g2 * g2;

    let numerator = 21.0 * j2 * j2 * g2 * ((j2 * g2 + m1) * o4 + (1.5 * j2 + 6.5 * g2) * o6);
    let denominator = kappa.powi(4) * (xi + 28.0 * j2 * kappa * kappa * g2 * g2 * o2 + theta * o4) + m2;
    numerator / denominator
}

/// Strong-coupling (J ≫ κ) asymptotic two-photon population. The integer
/// coefficients are part of the closed form; near |Δ| = J the retained
/// orders nearly cancel, so this branch is only quantitative close to Δ = 0.
pub fn tpb_two_photon_strong(p: &TpbParams) -> f64 {
    let (j, omega, delta, kappa, gamma) = (p.coupling, p.drive, p.detuning, p.kappa, p.gamma);
    let (j2, o2, k2) = (j * j, omega * omega, kappa * kappa);
    let kg = kappa * gamma;

    let l1 = delta.powi(4) * j2 * j2 * (22.0 * k2 + 158.0 * kg + 431.0 * gamma * gamma)
        + delta.powi(2) * j2.powi(3) * kappa * (3.0 * kappa + 21.0 * gamma);
    let l2 = delta.powi(8) * (26.0 * k2 + 189.0 * kg + 506.0 * gamma * gamma)
        - delta.powi(6) * j2 * (52.0 * k2 + 372.0 * kg + 567.0 * gamma * gamma);
    let l3 = delta.powi(8) * j2.powi(4) * (153.0 * j2 + 91.0 * k2 + 806.0 * kg)
        - delta.powi(6) * j2.powi(5) * (75.0 * j2 + 208.0 * k2)
        + delta.powi(4) * j2.powi(6) * (15.0 * j2 + 38.0 * k2 + 370.0 * kg);
    let l4 = delta.powi(16) * (4.0 * j2 + k2 + 10.0 * kg)
        + delta.powi(14) * j2 * (-30.0 * j2 + 11.0 * k2 + 92.0 * kg)
        + delta.powi(12) * j2 * j2 * (97.0 * j2 - 260.0 * o2 - 32.0 * k2 - 302.0 * kg)
        + delta.powi(10) * j2.powi(3) * (-165.0 * j2 + 391.0 * o2);

    let prefactor = 2.0 * j2.powi(3) * o2 * o2 * gamma / (5.0 * kappa.powi(3));
    let numerator = l1 + l2 + 7.0 * j2.powi(3) * k2 * gamma * gamma;
    let denominator = l3 + l4 + 25.0 * j2.powi(7) * kappa * gamma.powi(3);
    prefactor * numerator / denominator
}

/// Asymptotic two-photon population with the branch chosen by `regime`
/// (`Auto` switches at J = κ).
pub fn tpb_two_photon_approx(p: &TpbParams, regime: CouplingRegime) -> f64 {
    match regime {
        CouplingRegime::Weak => tpb_two_photon_weak(p),
        CouplingRegime::Strong => tpb_two_photon_strong(p),
        CouplingRegime::Auto => {
            if p.coupling < p.kappa {
                tpb_two_photon_weak(p)
            } else {
                tpb_two_photon_strong(p)
            }
        }
    }
}

/// Asymptotic g²(0) = 2𝒩/N² from the closed forms above.
pub fn tpb_g2_approx(p: &TpbParams, regime: CouplingRegime) -> Result<f64> {
    let n = tpb_mean_photons_approx(p);
    if !(n > 0.0) {
        return Err(Error::UndefinedCorrelation);
    }
    Ok(2.0 * tpb_two_photon_approx(p, regime) / (n * n))
}
