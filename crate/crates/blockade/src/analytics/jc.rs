//! Weak-drive amplitude algebra of the dual-driven Jaynes–Cummings model.
//!
//! Dropping the quantum-jump feeding terms, the two-excitation manifold
//! evolves under a non-Hermitian Hamiltonian whose steady amplitudes have
//! closed forms in the complex detunings Δ̃_c = Δ₀ − iκ/2 and
//! Δ̃_q = Δ₀ − iγ/2. Conventional blockade (strong coupling) minimizes the
//! one-excitation denominator at Δ₀ = ±G; unconventional blockade cancels
//! the two-photon amplitude by destructive interference of the two drives.

use num_complex::Complex64;

use crate::models::JcParams;
use crate::{Error, Result};

/// Steady weak-drive amplitudes of the truncated state
/// |ψ⟩ ≈ |0,g⟩ + C₀ₑ|0,e⟩ + C₁g|1,g⟩ + C₁ₑ|1,e⟩ + C₂g|2,g⟩.
#[derive(Debug, Clone, Copy)]
pub struct JcAmplitudes {
    pub amp_0e: Complex64,
    pub amp_1g: Complex64,
    pub amp_1e: Complex64,
    pub amp_2g: Complex64,
    /// One-excitation block denominator C = G² − Δ̃_c Δ̃_q.
    pub aux_c: Complex64,
    /// Two-excitation block denominator D = Δ̃_c(Δ̃_c + Δ̃_q) − G².
    pub aux_d: Complex64,
    /// Drive ratio λ = Ω_q / Ω_c.
    pub drive_ratio: f64,
}

impl JcAmplitudes {
    /// g²(0) ≈ 2|C₂g|² / |C₁g|⁴ from the amplitudes.
    pub fn g2_zero(&self) -> Result<f64> {
        let n1 = self.amp_1g.norm_sqr();
        if !(n1 > 0.0) {
            return Err(Error::UndefinedCorrelation);
        }
        Ok(2.0 * self.amp_2g.norm_sqr() / (n1 * n1))
    }

    /// Mean photon number |C₁g|² + |C₁ₑ|² + 2|C₂g|².
    pub fn mean_photons(&self) -> f64 {
        self.amp_1g.norm_sqr() + self.amp_1e.norm_sqr() + 2.0 * self.amp_2g.norm_sqr()
    }
}

fn complex_detunings(p: &JcParams) -> (Complex64, Complex64) {
    (
        Complex64::new(p.detuning, -0.5 * p.kappa),
        Complex64::new(p.detuning, -0.5 * p.gamma),
    )
}

/// Closed-form weak-drive amplitudes. Requires a nonzero cavity drive (the
/// ratio λ parameterizes the qubit drive) and errors at the exact poles
/// C = 0 or D = 0.
pub fn jc_amplitudes(p: &JcParams) -> Result<JcAmplitudes> {
    p.validate()?;
    if p.cavity_drive == 0.0 {
        return Err(Error::InvalidParameter(
            "amplitude algebra needs a nonzero cavity drive; use the closed-form g² for qubit-only driving".into(),
        ));
    }
    let (dc, dq) = complex_detunings(p);
    let g = Complex64::new(p.coupling, 0.0);
    let oc = Complex64::new(p.cavity_drive, 0.0);
    let oq = Complex64::new(p.qubit_drive, 0.0);
    let lambda = p.drive_ratio();
    let lam = Complex64::new(lambda, 0.0);

    let aux_c = g * g - dc * dq;
    let aux_d = dc * (dc + dq) - g * g;
    if aux_c.norm() == 0.0 {
        return Err(Error::Pole("one-excitation denominator C = 0".into()));
    }
    if aux_d.norm() == 0.0 {
        return Err(Error::Pole("two-excitation denominator D = 0".into()));
    }

    let amp_0e = (oq * dc - oc * g) / aux_c;
    let amp_1g = (oc * dq - oq * g) / aux_c;
    let sum = dc + dq;
    let amp_1e = oc * oc / (aux_c * aux_d) * (g * sum - lam * (dc * sum + g * g) + lam * lam * g * dc);
    let amp_2g = Complex64::new(2.0f64.sqrt(), 0.0) * oc * oc / (aux_c * aux_d * 2.0)
        * (-dq * sum + lam * g * sum * 2.0 - (lam * lam + 1.0) * g * g);

    Ok(JcAmplitudes {
        amp_0e,
        amp_1g,
        amp_1e,
        amp_2g,
        aux_c,
        aux_d,
        drive_ratio: lambda,
    })
}

/// The squared interference terms entering g² = |B|²|C|² / (A²|D|²).
#[derive(Debug, Clone, Copy)]
pub struct InterferenceTerms {
    /// A = (Δ₀ − λG)² + γ²/4 (so |C₁g|² = Ω_c²·A/|C|²).
    pub a: f64,
    /// |B|² = b_quadratic² + b_linear².
    pub b_squared: f64,
    /// Real part of the two-photon numerator:
    /// −2Δ₀² + 4λGΔ₀ − (1+λ²)G² + γ(κ+γ)/4.
    pub b_quadratic: f64,
    /// Imaginary part: Δ₀(κ+3γ)/2 − λG(κ+γ).
    pub b_linear: f64,
    pub c_squared: f64,
    pub d_squared: f64,
}

/// Evaluate the interference terms at the given parameters.
pub fn interference_terms(p: &JcParams) -> InterferenceTerms {
    let (d0, g, kappa, gamma) = (p.detuning, p.coupling, p.kappa, p.gamma);
    let lambda = p.drive_ratio();
    let a = (d0 - lambda * g).powi(2) + gamma * gamma / 4.0;
    let b_quadratic = -2.0 * d0 * d0 + 4.0 * lambda * g * d0 - (1.0 + lambda * lambda) * g * g
        + gamma * (kappa + gamma) / 4.0;
    let b_linear = d0 * (kappa + 3.0 * gamma) / 2.0 - lambda * g * (kappa + gamma);
    let b_squared = b_quadratic * b_quadratic + b_linear * b_linear;
    let c_squared = (g * g - d0 * d0 + kappa * gamma / 4.0).powi(2)
        + d0 * d0 * (kappa + gamma).powi(2) / 4.0;
    let d_squared = (2.0 * d0 * d0 - g * g - kappa * (kappa + gamma) / 4.0).powi(2)
        + d0 * d0 * (3.0 * kappa + gamma).powi(2) / 4.0;
    InterferenceTerms {
        a,
        b_squared,
        b_quadratic,
        b_linear,
        c_squared,
        d_squared,
    }
}

/// Closed-form g²(0) = |B|²|C|² / (A²|D|²). Unlike [`jc_amplitudes`] this
/// form is finite for qubit-only driving (λ → ∞ cancels).
pub fn jc_g2_closed_form(p: &JcParams) -> Result<f64> {
    p.validate()?;
    let t = interference_terms(p);
    if t.a == 0.0 {
        return Err(Error::Pole("one-photon weight A = 0".into()));
    }
    if t.d_squared == 0.0 {
        return Err(Error::Pole("two-excitation denominator |D|² = 0".into()));
    }
    Ok(t.b_squared * t.c_squared / (t.a * t.a * t.d_squared))
}

/// Detunings Δ₀ = ±G that resonantly enhance the single-photon dressed
/// state in the strong-coupling (conventional blockade) regime.
pub fn cpb_resonant_detunings(coupling: f64) -> Result<[f64; 2]> {
    if !(coupling > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "coupling {coupling} must be positive"
        )));
    }
    Ok([coupling, -coupling])
}

/// Optimal drive ratio and detuning for perfect destructive interference.
#[derive(Debug, Clone, Copy)]
pub struct UpbOptimum {
    pub drive_ratio: f64,
    pub detuning: f64,
}

/// Detuning that cancels the linear interference term at a fixed ratio λ:
/// Δ₀ = 2λG(κ+γ) / (κ+3γ).
pub fn upb_detuning_for_ratio(coupling: f64, kappa: f64, gamma: f64, ratio: f64) -> f64 {
    2.0 * ratio * coupling * (kappa + gamma) / (kappa + 3.0 * gamma)
}

/// Solve both interference conditions simultaneously:
/// λ_opt = √[(G² − γ(κ+γ)/4) / (G²(16γ(κ+γ)/(κ+3γ)² − 1))]
/// and the matching detuning. Errors when the radicand is negative (no real
/// dual-drive optimum exists for these rates).
pub fn upb_optimum(coupling: f64, kappa: f64, gamma: f64) -> Result<UpbOptimum> {
    if !(coupling > 0.0) || !(kappa > 0.0) || !(gamma >= 0.0) {
        return Err(Error::InvalidParameter(
            "coupling and kappa must be positive, gamma non-negative".into(),
        ));
    }
    let g2 = coupling * coupling;
    let numerator = g2 - gamma * (kappa + gamma) / 4.0;
    let denominator = g2 * (16.0 * gamma * (kappa + gamma) / (kappa + 3.0 * gamma).powi(2) - 1.0);
    let radicand = numerator / denominator;
    if !(radicand > 0.0) {
        return Err(Error::NoRealSolution(format!(
            "radicand {radicand:.6e} is not positive; no dual-drive interference zero at these rates"
        )));
    }
    let drive_ratio = radicand.sqrt();
    let detuning = upb_detuning_for_ratio(coupling, kappa, gamma, drive_ratio);
    Ok(UpbOptimum {
        drive_ratio,
        detuning,
    })
}

/// The single coupling strength G = √(γ(κ+γ))/2 at which a cavity-only
/// drive (λ = 0, Δ₀ = 0) still cancels the two-photon amplitude.
pub fn upb_single_drive_coupling(kappa: f64, gamma: f64) -> Result<f64> {
    if !(kappa > 0.0) || !(gamma > 0.0) {
        return Err(Error::InvalidParameter(
            "rates must be positive".into(),
        ));
    }
    Ok((gamma * (kappa + gamma)).sqrt() / 2.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::jc_steady_observables;

    fn base() -> JcParams {
        JcParams {
            detuning: 0.4,
            coupling: 0.1,
            cavity_drive: 0.001,
            qubit_drive: 0.005,
            kappa: 1.0,
            gamma: 0.01,
            n_thermal: 0.0,
            n_max: 5,
        }
    }

    #[test]
    fn two_g2_routes_agree() {
        // Same algebra evaluated through amplitudes and through the squared
        // interference terms.
        for detuning in [-1.0, -0.3, 0.0, 0.2, 0.7, 1.5] {
            for coupling in [0.05, 0.1, 1.0, 20.0] {
                let p = JcParams {
                    detuning,
                    coupling,
                    ..base()
                };
                let via_amps = jc_amplitudes(&p).unwrap().g2_zero().unwrap();
                let closed = jc_g2_closed_form(&p).unwrap();
                let rel = (via_amps - closed).abs() / closed.max(1e-300);
                assert!(rel < 1e-10, "Δ₀={detuning} G={coupling}: rel {rel:.2e}");
            }
        }
    }

    #[test]
    fn qubit_drive_cancels_excited_amplitude() {
        // Ω_q·Δ̃_c = Ω_c·G makes the |0,e⟩ numerator vanish.
        let coupling = 0.3;
        let cavity_drive = 0.002;
        // Choose Δ₀ so Δ̃_c is real up to the decay term; solve for real Ω_q
        // via the real parts (exact cancellation needs a complex drive, so
        // verify against the explicit numerator instead).
        let p = JcParams {
            detuning: 0.5,
            coupling,
            cavity_drive,
            qubit_drive: 0.004,
            ..base()
        };
        let (dc, _) = super::complex_detunings(&p);
        let amps = jc_amplitudes(&p).unwrap();
        let numerator = Complex64::new(p.qubit_drive, 0.0) * dc
            - Complex64::new(p.cavity_drive * p.coupling, 0.0);
        assert!((amps.amp_0e * amps.aux_c - numerator).norm() < 1e-15);
    }

    #[test]
    fn single_photon_amplitude_matches_full_solver() {
        // Deep weak-drive regime: |C₁g|² tracks the numeric ⟨a†a⟩.
        let p = JcParams {
            detuning: upb_detuning_for_ratio(0.1, 1.0, 0.01, 5.0),
            coupling: 0.1,
            cavity_drive: 0.001,
            qubit_drive: 0.005,
            ..base()
        };
        let amps = jc_amplitudes(&p).unwrap();
        let obs = jc_steady_observables(&p).unwrap();
        let rel = (amps.amp_1g.norm_sqr() - obs.mean_photons).abs() / obs.mean_photons;
        assert!(rel < 0.10, "relative deviation {rel:.3}");
    }

    #[test]
    fn cpb_point_against_full_solver() {
        // Strong coupling at the dressed resonance; the jump-free algebra
        // tracks the numeric g² to a few tens of percent.
        let p = JcParams {
            detuning: 20.0,
            coupling: 20.0,
            cavity_drive: 0.2,
            qubit_drive: 0.0,
            kappa: 1.0,
            gamma: 0.1,
            n_thermal: 0.0,
            n_max: 4,
        };
        let closed = jc_g2_closed_form(&p).unwrap();
        let numeric = jc_steady_observables(&p).unwrap().g2_zero.unwrap();
        let rel = (closed - numeric).abs() / numeric;
        assert!(rel < 0.5, "closed {closed:.3e} vs numeric {numeric:.3e}");
    }

    #[test]
    fn cpb_detunings() {
        assert_eq!(cpb_resonant_detunings(20.0).unwrap(), [20.0, -20.0]);
        assert_eq!(cpb_resonant_detunings(1.0).unwrap(), [1.0, -1.0]);
        assert!(cpb_resonant_detunings(0.0).is_err());
    }

    #[test]
    fn cpb_detuning_is_a_local_minimum_of_numeric_g2() {
        let mk = |detuning: f64| JcParams {
            detuning,
            coupling: 20.0,
            cavity_drive: 0.1,
            qubit_drive: 0.0,
            kappa: 1.0,
            gamma: 0.1,
            n_thermal: 0.0,
            n_max: 4,
        };
        let at = |d| jc_steady_observables(&mk(d)).unwrap().g2_zero.unwrap();
        let center = at(20.0);
        assert!(center < at(20.5) && center < at(19.5), "not a local minimum");
    }

    #[test]
    fn upb_optimum_zeroes_both_interference_terms() {
        // γ = κ keeps the radicand positive; at the optimum both components
        // of |B|² vanish and with them the two-photon amplitude.
        let (kappa, gamma, coupling) = (1.0, 1.0, 1.0);
        let opt = upb_optimum(coupling, kappa, gamma).unwrap();
        let p = JcParams {
            detuning: opt.detuning,
            coupling,
            cavity_drive: 0.001,
            qubit_drive: 0.001 * opt.drive_ratio,
            kappa,
            gamma,
            n_thermal: 0.0,
            n_max: 4,
        };
        let t = interference_terms(&p);
        // Compare against the magnitudes the terms have a linewidth away.
        let nearby = interference_terms(&JcParams {
            detuning: opt.detuning + 1.0,
            ..p
        });
        assert!(t.b_quadratic.abs() <= 1e-10 * nearby.b_quadratic.abs());
        assert!(t.b_linear.abs() <= 1e-10 * nearby.b_linear.abs());

        let amps = jc_amplitudes(&p).unwrap();
        assert!(
            amps.amp_2g.norm() <= 1e-10 * amps.amp_1g.norm_sqr() / p.cavity_drive,
            "|C₂g| = {:.3e}",
            amps.amp_2g.norm()
        );
        assert!(jc_g2_closed_form(&p).unwrap() < 1e-10);
    }

    #[test]
    fn upb_optimum_radicand_sign() {
        // γ = κ: 16·γ(κ+γ)/(κ+3γ)² = 2 > 1, solution exists.
        assert!(upb_optimum(1.0, 1.0, 1.0).is_ok());
        // Small γ with G above the single-drive point: no real solution.
        assert!(matches!(
            upb_optimum(0.1, 1.0, 0.01),
            Err(Error::NoRealSolution(_))
        ));
    }

    #[test]
    fn single_drive_coupling_values() {
        let g = upb_single_drive_coupling(1.0, 1.0).unwrap();
        assert!((g - 0.5f64 * 2.0f64.sqrt()).abs() < 1e-15);
        let g = upb_single_drive_coupling(1.0, 0.01).unwrap();
        assert!((g - 0.0101f64.sqrt() / 2.0).abs() < 1e-15);
    }

    #[test]
    fn single_drive_point_cancels_quadratic_term() {
        let (kappa, gamma) = (1.0, 0.01);
        let g_star = upb_single_drive_coupling(kappa, gamma).unwrap();
        let p = JcParams {
            detuning: 0.0,
            coupling: g_star,
            cavity_drive: 0.01 * g_star,
            qubit_drive: 0.0,
            kappa,
            gamma,
            n_thermal: 0.0,
            n_max: 4,
        };
        let t = interference_terms(&p);
        let scale = (g_star * g_star).max(gamma * (kappa + gamma) / 4.0);
        assert!(t.b_quadratic.abs() <= 1e-12 * scale);
        assert!(t.b_linear.abs() <= 1e-12 * scale);
        assert!(jc_g2_closed_form(&p).unwrap() < 1e-10);

        // Doubling G breaks the cancellation.
        let off = JcParams {
            coupling: 2.0 * g_star,
            ..p
        };
        let t_off = interference_terms(&off);
        assert!(t_off.b_quadratic.abs() > 0.1 * (2.0 * g_star).powi(2));
    }

    #[test]
    fn amplitude_poles_are_reported() {
        // With κ = γ = 0 and Δ₀ = G the one-excitation denominator is an
        // exact zero.
        let p = JcParams {
            detuning: 0.0,
            coupling: 0.0,
            cavity_drive: 0.001,
            qubit_drive: 0.0,
            kappa: 1.0,
            gamma: 0.0,
            n_thermal: 0.0,
            n_max: 3,
        };
        // Here C = −Δ̃_cΔ̃_q = −(−iκ/2)(Δ₀) = 0 because Δ̃_q = 0.
        assert!(matches!(jc_amplitudes(&p), Err(Error::Pole(_))));
    }
}
