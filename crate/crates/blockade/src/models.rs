//! Model builders: the driven three-body photon–qubit–qubit system and the
//! dual-driven Jaynes–Cummings system, plus steady-state observables.

use num_complex::Complex64;

use crate::dynamics::{g2_zero, thermal_channels, Channel, Liouvillian};
use crate::hilbert::{embed, photon_lowering, qubit_lowering, DensityMatrix, HilbertSpace, Operator};
use crate::{Error, Result};

/// Parameters of the driven three-body model. The cavity linewidth `kappa`
/// is the natural unit; all other rates are expressed in the same units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TpbParams {
    /// Detuning Δ of both qubits from the drive.
    pub detuning: f64,
    /// Three-body coupling strength J.
    pub coupling: f64,
    /// Drive strength Ω on the second qubit.
    pub drive: f64,
    /// Photon decay rate κ.
    pub kappa: f64,
    /// Decay rate γ of each qubit.
    pub gamma: f64,
    /// Thermal occupation of the baths.
    pub n_thermal: f64,
    /// Photon-number truncation of the numerical Hilbert space.
    pub n_max: usize,
}

impl Default for TpbParams {
    fn default() -> Self {
        Self {
            detuning: 0.0,
            coupling: 0.1,
            drive: 0.1,
            kappa: 1.0,
            gamma: 0.1,
            n_thermal: 0.0,
            n_max: 5,
        }
    }
}

impl TpbParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.kappa > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "kappa = {} must be positive",
                self.kappa
            )));
        }
        for (name, v) in [
            ("coupling", self.coupling),
            ("drive", self.drive),
            ("gamma", self.gamma),
            ("n_thermal", self.n_thermal),
        ] {
            if !(v >= 0.0) {
                return Err(Error::InvalidParameter(format!(
                    "{name} = {v} must be non-negative"
                )));
            }
        }
        if !self.detuning.is_finite() {
            return Err(Error::InvalidParameter("detuning must be finite".into()));
        }
        if self.n_max < 2 {
            return Err(Error::InvalidParameter(format!(
                "n_max = {} must be at least 2",
                self.n_max
            )));
        }
        Ok(())
    }
}

/// Parameters of the dual-driven Jaynes–Cummings model; `kappa` (the cavity
/// decay rate) is the natural unit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JcParams {
    /// Common detuning Δ₀ of cavity and qubit from the drives.
    pub detuning: f64,
    /// Cavity–qubit coupling G.
    pub coupling: f64,
    /// Cavity drive strength.
    pub cavity_drive: f64,
    /// Qubit drive strength.
    pub qubit_drive: f64,
    /// Cavity decay rate.
    pub kappa: f64,
    /// Qubit decay rate.
    pub gamma: f64,
    /// Thermal occupation of the baths.
    pub n_thermal: f64,
    /// Photon-number truncation of the numerical Hilbert space.
    pub n_max: usize,
}

impl Default for JcParams {
    fn default() -> Self {
        Self {
            detuning: 0.0,
            coupling: 0.1,
            cavity_drive: 0.001,
            qubit_drive: 0.005,
            kappa: 1.0,
            gamma: 0.01,
            n_thermal: 0.0,
            n_max: 5,
        }
    }
}

impl JcParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.kappa > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "kappa = {} must be positive",
                self.kappa
            )));
        }
        for (name, v) in [
            ("coupling", self.coupling),
            ("cavity_drive", self.cavity_drive),
            ("qubit_drive", self.qubit_drive),
            ("gamma", self.gamma),
            ("n_thermal", self.n_thermal),
        ] {
            if !(v >= 0.0) {
                return Err(Error::InvalidParameter(format!(
                    "{name} = {v} must be non-negative"
                )));
            }
        }
        if !self.detuning.is_finite() {
            return Err(Error::InvalidParameter("detuning must be finite".into()));
        }
        if self.n_max < 2 {
            return Err(Error::InvalidParameter(format!(
                "n_max = {} must be at least 2",
                self.n_max
            )));
        }
        Ok(())
    }

    /// Drive ratio λ = Ω_q / Ω_c.
    pub fn drive_ratio(&self) -> f64 {
        self.qubit_drive / self.cavity_drive
    }
}

/// Steady-state photon statistics.
#[derive(Debug, Clone, Copy)]
pub struct Observables {
    /// Mean photon number N = ⟨â†â⟩.
    pub mean_photons: f64,
    /// Two-photon population ⟨â†â†ââ⟩ / 2.
    pub two_photon: f64,
    /// Equal-time correlation 2·two_photon / N²; `None` when N = 0.
    pub g2_zero: Option<f64>,
    /// Emission rate S = κ·N.
    pub emission_rate: f64,
}

/// Photon ⊗ qubit ⊗ qubit space for the three-body model.
pub fn tpb_space(n_max: usize) -> Result<HilbertSpace> {
    HilbertSpace::new(&[n_max + 1, 2, 2])
}

/// Photon ⊗ qubit space for the Jaynes–Cummings model.
pub fn jc_space(n_max: usize) -> Result<HilbertSpace> {
    HilbertSpace::new(&[n_max + 1, 2])
}

/// Hamiltonian and channels of the driven three-body model:
/// H = Δσ̂₁⁺σ̂₁⁻ + Δσ̂₂⁺σ̂₂⁻ + J(â†σ̂₁⁺σ̂₂⁻ + âσ̂₁⁻σ̂₂⁺) + Ω(σ̂₂⁺ + σ̂₂⁻).
pub fn build_tpb(p: &TpbParams) -> Result<(Operator, Vec<Channel>)> {
    p.validate()?;
    let space = tpb_space(p.n_max)?;
    let a = photon_lowering(&space)?;
    let s1 = embed(&qubit_lowering(), &space, 1)?;
    let s2 = embed(&qubit_lowering(), &space, 2)?;

    let c = |x: f64| Complex64::new(x, 0.0);
    let excited1 = s1.dagger().matmul(&s1)?;
    let excited2 = s2.dagger().matmul(&s2)?;
    let exchange = a
        .dagger()
        .matmul(&s1.dagger())?
        .matmul(&s2)?
        .add(&a.matmul(&s1)?.matmul(&s2.dagger())?)?;
    let h = excited1
        .scale(c(p.detuning))
        .add(&excited2.scale(c(p.detuning)))?
        .add(&exchange.scale(c(p.coupling)))?
        .add(&s2.add(&s2.dagger())?.scale(c(p.drive)))?;

    let channels = thermal_channels(p.kappa, p.gamma, p.n_thermal, &space)?;
    Ok((h, channels))
}

/// Hamiltonian and channels of the dual-driven Jaynes–Cummings model:
/// H = Δ₀(â†â + σ̂⁺σ̂⁻) + G(âσ̂⁺ + â†σ̂⁻) + Ω_c(â† + â) + Ω_q(σ̂⁺ + σ̂⁻).
pub fn build_jc(p: &JcParams) -> Result<(Operator, Vec<Channel>)> {
    p.validate()?;
    let space = jc_space(p.n_max)?;
    let a = photon_lowering(&space)?;
    let s = embed(&qubit_lowering(), &space, 1)?;

    let c = |x: f64| Complex64::new(x, 0.0);
    let number = a.dagger().matmul(&a)?;
    let excited = s.dagger().matmul(&s)?;
    let exchange = a.matmul(&s.dagger())?.add(&a.dagger().matmul(&s)?)?;
    let h = number
        .add(&excited)?
        .scale(c(p.detuning))
        .add(&exchange.scale(c(p.coupling)))?
        .add(&a.add(&a.dagger())?.scale(c(p.cavity_drive)))?
        .add(&s.add(&s.dagger())?.scale(c(p.qubit_drive)))?;

    let channels = thermal_channels(p.kappa, p.gamma, p.n_thermal, &space)?;
    Ok((h, channels))
}

/// Photon statistics of a state: N, two-photon population, g²(0), and the
/// emission rate κ·N.
pub fn observables_of(rho: &DensityMatrix, a: &Operator, kappa: f64) -> Result<Observables> {
    let number = a.dagger().matmul(a)?;
    let mean_photons = number.expectation(rho)?.re;
    let pair = a.dagger().matmul(&a.dagger())?.matmul(a)?.matmul(a)?;
    let two_photon = 0.5 * pair.expectation(rho)?.re;
    let g2 = if mean_photons > 0.0 {
        Some(g2_zero(rho, a)?)
    } else {
        None
    };
    Ok(Observables {
        mean_photons,
        two_photon,
        g2_zero: g2,
        emission_rate: kappa * mean_photons,
    })
}

/// Solve the three-body model for its steady state and return (state, â).
pub fn tpb_steady_state(p: &TpbParams) -> Result<(DensityMatrix, Operator)> {
    let (h, channels) = build_tpb(p)?;
    let a = photon_lowering(h.space())?;
    let l = Liouvillian::new(&h, &channels)?;
    Ok((l.steady_state()?, a))
}

/// Steady-state observables of the three-body model.
pub fn tpb_steady_observables(p: &TpbParams) -> Result<Observables> {
    let (rho, a) = tpb_steady_state(p)?;
    observables_of(&rho, &a, p.kappa)
}

/// Solve the Jaynes–Cummings model for its steady state and return (state, â).
pub fn jc_steady_state(p: &JcParams) -> Result<(DensityMatrix, Operator)> {
    let (h, channels) = build_jc(p)?;
    let a = photon_lowering(h.space())?;
    let l = Liouvillian::new(&h, &channels)?;
    Ok((l.steady_state()?, a))
}

/// Steady-state observables of the Jaynes–Cummings model.
pub fn jc_steady_observables(p: &JcParams) -> Result<Observables> {
    let (rho, a) = jc_steady_state(p)?;
    observables_of(&rho, &a, p.kappa)
}
