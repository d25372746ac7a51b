//! Coupling strengths for a flux-tunable three-junction coupler joining two
//! transmons through a constricted segment of a half-wave coplanar-waveguide
//! resonator.
//!
//! Unit conventions at the interface: junction and charging energies are
//! given as E/h in GHz, lengths in metres, line constants in SI, impedances
//! in ohms. Coupling strengths come back as ordinary frequencies in GHz
//! (J/2π); the resonator mode frequency is returned in angular units, rad/s.

use crate::{Error, Result};

/// Planck constant, J·s (CODATA, exact).
pub const PLANCK: f64 = 6.62607015e-34;
/// Reduced Planck constant, J·s.
pub const HBAR: f64 = 1.054571817e-34;
/// Magnetic flux quantum h/2e, Wb.
pub const FLUX_QUANTUM: f64 = 2.067833848e-15;

/// sin(π·x) with exact zeros at integer x and exact odd symmetry. The
/// argument is folded into [0, ½] before the libm call, so the reflection
/// and periodicity identities hold bitwise.
fn sin_pi(x: f64) -> f64 {
    if x < 0.0 {
        return -sin_pi(-x);
    }
    let mut r = x % 2.0;
    let mut sign = 1.0;
    if r >= 1.0 {
        r -= 1.0;
        sign = -1.0;
    }
    if r > 0.5 {
        r = 1.0 - r;
    }
    let v = if r == 0.0 {
        0.0
    } else if r == 0.5 {
        1.0
    } else {
        (std::f64::consts::PI * r).sin()
    };
    sign * v
}

/// cos(π·x) with exact zeros at half-integer x and exact even symmetry.
fn cos_pi(x: f64) -> f64 {
    sin_pi(x.abs() + 0.5)
}

/// Transmon transition frequency √(8·E_C·E_J) − E_C, in the same frequency
/// units as the inputs (E/h).
pub fn transmon_frequency(josephson: f64, charging: f64) -> Result<f64> {
    if !(josephson > 0.0) || !(charging > 0.0) {
        return Err(Error::InvalidParameter(
            "junction and charging energies must be positive".into(),
        ));
    }
    Ok((8.0 * charging * josephson).sqrt() - charging)
}

/// Zero-point phase spread (2·E_C/E_J)^¼ of a transmon.
pub fn phase_zpf(josephson: f64, charging: f64) -> Result<f64> {
    if !(josephson > 0.0) || !(charging > 0.0) {
        return Err(Error::InvalidParameter(
            "junction and charging energies must be positive".into(),
        ));
    }
    Ok((2.0 * charging / josephson).powf(0.25))
}

/// Fundamental mode of a half-wave resonator.
#[derive(Debug, Clone, Copy)]
pub struct CpwMode {
    /// Angular frequency ω₁ = π / (l·√(l₀c₀)), rad/s.
    pub angular_frequency: f64,
    /// Mode impedance Z₁ = 1/(C·ω₁) with C = c₀·l, Ω.
    pub impedance: f64,
}

/// Fundamental mode frequency and impedance from the line constants.
pub fn cpw_fundamental(length: f64, cap_per_len: f64, ind_per_len: f64) -> Result<CpwMode> {
    if !(length > 0.0) || !(cap_per_len > 0.0) || !(ind_per_len > 0.0) {
        return Err(Error::InvalidParameter(
            "resonator length and line constants must be positive".into(),
        ));
    }
    let velocity = 1.0 / (ind_per_len * cap_per_len).sqrt();
    let angular_frequency = std::f64::consts::PI * velocity / length;
    let capacitance = cap_per_len * length;
    let impedance = 1.0 / (capacitance * angular_frequency);
    Ok(CpwMode {
        angular_frequency,
        impedance,
    })
}

/// Zero-point amplitude of the phase drop across the constricted segment:
/// η · 2√2·π²·d/(Φ₀·l) · √(ħZ₁/2). Dimensionless; requires d ≪ l
/// (enforced as d/l ≤ 0.05).
pub fn segment_phase_zpf(eta: f64, segment: f64, length: f64, impedance: f64) -> Result<f64> {
    if !(eta > 0.0) || !(segment > 0.0) || !(length > 0.0) || !(impedance > 0.0) {
        return Err(Error::InvalidParameter(
            "constriction factor, geometry, and impedance must be positive".into(),
        ));
    }
    if segment / length > 0.05 {
        return Err(Error::InvalidParameter(format!(
            "segment/length = {:.3} violates the short-segment regime (d/l <= 0.05)",
            segment / length
        )));
    }
    let gradient = 2.0 * 2.0f64.sqrt() * std::f64::consts::PI.powi(2) * segment
        / (FLUX_QUANTUM * length);
    Ok(eta * gradient * (HBAR * impedance / 2.0).sqrt())
}

/// Flux-dependent coupling strengths, in the frequency units of `coupler`.
#[derive(Debug, Clone, Copy)]
pub struct CouplingStrengths {
    /// Three-body strength J/2π = E_J·sin(φ)·φ_x·φ₁·φ₂.
    pub three_body: f64,
    /// Residual two-body strength g₁/2π = E_J·cos(φ)·φ_x·φ₁ to qubit 1.
    pub qubit1: f64,
    /// Residual two-body strength g₂/2π = E_J·cos(φ)·φ_x·φ₂ to qubit 2.
    pub qubit2: f64,
}

/// Couplings at an external flux bias given in units of Φ₀.
///
/// The coupler junction sits in a SQUID-style loop, so its effective phase
/// offset is π·Φ_ext/Φ₀: the two-body couplings vanish and |J| peaks at
/// half a flux quantum.
pub fn coupling_strengths(
    coupler: f64,
    flux: f64,
    phase_x: f64,
    zpf1: f64,
    zpf2: f64,
) -> CouplingStrengths {
    let phase = flux; // in units of π
    let s = sin_pi(phase);
    let c = cos_pi(phase);
    CouplingStrengths {
        three_body: coupler * s * phase_x * zpf1 * zpf2,
        qubit1: coupler * c * phase_x * zpf1,
        qubit2: coupler * c * phase_x * zpf2,
    }
}

/// Junction asymmetry and second-loop bias that cancel the residual
/// two-body potential.
#[derive(Debug, Clone, Copy)]
pub struct CancellationBias {
    /// Junction-3 scale β = √(α² + 1).
    pub beta: f64,
    /// Second-loop phase φ with cos φ = −α/β and sin φ = 1/β, radians.
    pub flux_phase: f64,
}

/// Solve α + β·cos φ = 0 and 1 − β·sin φ = 0 simultaneously.
pub fn cancellation(alpha: f64) -> Result<CancellationBias> {
    if !(alpha >= 0.0) {
        return Err(Error::InvalidParameter(format!(
            "asymmetry {alpha} must be non-negative"
        )));
    }
    let beta = (alpha * alpha + 1.0).sqrt();
    let flux_phase = (1.0f64).atan2(-alpha);
    Ok(CancellationBias { beta, flux_phase })
}

/// Full parameter set of the coupler circuit.
#[derive(Debug, Clone, Copy)]
pub struct CircuitParams {
    /// Coupler junction energy E_J/h, GHz.
    pub coupler_josephson: f64,
    /// Junction-2 asymmetry ratio α.
    pub asymmetry: f64,
    /// Junction-3 ratio β (the cancellation condition fixes √(α²+1)).
    pub asymmetry_beta: f64,
    /// Constriction enhancement factor η.
    pub constriction: f64,
    /// Coupled segment length d, m.
    pub segment: f64,
    /// Resonator length l, m.
    pub length: f64,
    /// Capacitance per length c₀, F/m.
    pub cap_per_len: f64,
    /// Inductance per length l₀, H/m.
    pub ind_per_len: f64,
    /// Transmon-1 junction energy E_J1/h, GHz.
    pub transmon1_josephson: f64,
    /// Transmon-1 charging energy E_C1/h, GHz.
    pub transmon1_charging: f64,
    /// Transmon-2 junction energy E_J2/h, GHz.
    pub transmon2_josephson: f64,
    /// Transmon-2 charging energy E_C2/h, GHz.
    pub transmon2_charging: f64,
    /// First-loop flux bias, units of Φ₀.
    pub flux_bias: f64,
    /// Second-loop phase bias, radians.
    pub flux_bias2: f64,
}

impl Default for CircuitParams {
    fn default() -> Self {
        // 50 Ω line with a 6 GHz fundamental on a 10 mm resonator:
        // v = 2·f·l, c₀ = 1/(v·Z), l₀ = Z/v.
        let z = 50.0;
        let freq = 6.0e9;
        let length = 10.0e-3;
        let velocity = 2.0 * freq * length;
        Self {
            coupler_josephson: 20.0,
            asymmetry: 1.0,
            asymmetry_beta: 2.0f64.sqrt(),
            constriction: 5.0,
            segment: 20.0e-6,
            length,
            cap_per_len: 1.0 / (velocity * z),
            ind_per_len: z / velocity,
            transmon1_josephson: 45.0,
            transmon1_charging: 0.3,
            transmon2_josephson: 10.0,
            transmon2_charging: 0.2,
            flux_bias: 0.5,
            flux_bias2: (1.0f64).atan2(-1.0),
        }
    }
}

/// Derived quantities of a circuit parameter set.
#[derive(Debug, Clone)]
pub struct CircuitReport {
    /// Qubit transition frequencies, GHz.
    pub qubit_frequencies: [f64; 2],
    /// Qubit zero-point phase spreads.
    pub qubit_zpf: [f64; 2],
    /// Resonator fundamental frequency ω₁/2π, GHz.
    pub resonator_frequency: f64,
    /// Resonator mode impedance, Ω.
    pub resonator_impedance: f64,
    /// Segment phase zero-point amplitude φ_x.
    pub segment_zpf: f64,
    /// Couplings at the configured flux bias, GHz.
    pub at_bias: CouplingStrengths,
    /// Largest |J| over the flux period, GHz.
    pub max_three_body: f64,
    /// Largest |g₁|, |g₂| over the flux period, GHz.
    pub max_two_body: [f64; 2],
    /// max|g_j| divided by the qubit–resonator detunings (dimensionless
    /// figure of merit for the dispersive suppression of two-body terms).
    pub two_body_suppression: [f64; 2],
    /// Residuals of the two-body cancellation conditions at (β, φ₂).
    pub cancellation_residuals: [f64; 2],
    /// Advisory notes (transmon-regime ratio, etc.).
    pub warnings: Vec<String>,
}

impl CircuitParams {
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("coupler_josephson", self.coupler_josephson),
            ("constriction", self.constriction),
            ("segment", self.segment),
            ("length", self.length),
            ("cap_per_len", self.cap_per_len),
            ("ind_per_len", self.ind_per_len),
            ("transmon1_josephson", self.transmon1_josephson),
            ("transmon1_charging", self.transmon1_charging),
            ("transmon2_josephson", self.transmon2_josephson),
            ("transmon2_charging", self.transmon2_charging),
        ] {
            if !(v > 0.0) {
                return Err(Error::InvalidParameter(format!(
                    "{name} = {v} must be positive"
                )));
            }
        }
        if !(self.asymmetry >= 0.0) {
            return Err(Error::InvalidParameter("asymmetry must be non-negative".into()));
        }
        if self.segment / self.length > 0.05 {
            return Err(Error::InvalidParameter(format!(
                "segment/length = {:.3} violates d/l <= 0.05",
                self.segment / self.length
            )));
        }
        Ok(())
    }

    /// Couplings at an arbitrary flux (units of Φ₀).
    pub fn couplings_at(&self, flux: f64) -> Result<CouplingStrengths> {
        self.validate()?;
        let mode = cpw_fundamental(self.length, self.cap_per_len, self.ind_per_len)?;
        let phase_x = segment_phase_zpf(self.constriction, self.segment, self.length, mode.impedance)?;
        let zpf1 = phase_zpf(self.transmon1_josephson, self.transmon1_charging)?;
        let zpf2 = phase_zpf(self.transmon2_josephson, self.transmon2_charging)?;
        Ok(coupling_strengths(
            self.coupler_josephson,
            flux,
            phase_x,
            zpf1,
            zpf2,
        ))
    }

    /// Evaluate every derived quantity.
    pub fn report(&self) -> Result<CircuitReport> {
        self.validate()?;
        let mut warnings = Vec::new();
        for (tag, ej, ec) in [
            ("transmon 1", self.transmon1_josephson, self.transmon1_charging),
            ("transmon 2", self.transmon2_josephson, self.transmon2_charging),
        ] {
            let ratio = ej / ec;
            if ratio < 20.0 {
                warnings.push(format!(
                    "{tag}: E_J/E_C = {ratio:.1} is below the transmon regime (>= 20)"
                ));
            }
        }

        let f1 = transmon_frequency(self.transmon1_josephson, self.transmon1_charging)?;
        let f2 = transmon_frequency(self.transmon2_josephson, self.transmon2_charging)?;
        let zpf1 = phase_zpf(self.transmon1_josephson, self.transmon1_charging)?;
        let zpf2 = phase_zpf(self.transmon2_josephson, self.transmon2_charging)?;
        let mode = cpw_fundamental(self.length, self.cap_per_len, self.ind_per_len)?;
        let resonator_frequency = mode.angular_frequency / (2.0 * std::f64::consts::PI) / 1.0e9;
        let phase_x =
            segment_phase_zpf(self.constriction, self.segment, self.length, mode.impedance)?;

        let at_bias = self.couplings_at(self.flux_bias)?;
        // |sin| and |cos| both peak at 1 over a flux period.
        let max_three_body = (self.coupler_josephson * phase_x * zpf1 * zpf2).abs();
        let max_two_body = [
            (self.coupler_josephson * phase_x * zpf1).abs(),
            (self.coupler_josephson * phase_x * zpf2).abs(),
        ];
        // Qubit-resonator detunings in GHz.
        let detunings = [
            (f1 - resonator_frequency).abs(),
            (f2 - resonator_frequency).abs(),
        ];
        let two_body_suppression = [
            max_two_body[0] / detunings[0],
            max_two_body[1] / detunings[1],
        ];

        let cancellation_residuals = [
            self.asymmetry + self.asymmetry_beta * self.flux_bias2.cos(),
            1.0 - self.asymmetry_beta * self.flux_bias2.sin(),
        ];

        Ok(CircuitReport {
            qubit_frequencies: [f1, f2],
            qubit_zpf: [zpf1, zpf2],
            resonator_frequency,
            resonator_impedance: mode.impedance,
            segment_zpf: phase_x,
            at_bias,
            max_three_body,
            max_two_body,
            two_body_suppression,
            cancellation_residuals,
            warnings,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn transmon_frequencies_from_reference_energies() {
        // √(8·0.3·45) − 0.3 = √108 − 0.3 and √(8·0.2·10) − 0.2 = 4 − 0.2.
        let f1 = transmon_frequency(45.0, 0.3).unwrap();
        let expected1 = 108.0f64.sqrt() - 0.3;
        assert!((f1 - expected1).abs() <= 1e-12 * expected1);
        assert!((f1 - 10.0923048454133).abs() < 1e-10);

        let f2 = transmon_frequency(10.0, 0.2).unwrap();
        assert!((f2 - 3.8).abs() <= 1e-12 * 3.8);

        // Degenerate limit E_C → 0 pushes the frequency to zero.
        let tiny = transmon_frequency(10.0, 1e-30).unwrap();
        assert!(tiny < 1e-13);
        assert!(transmon_frequency(10.0, 0.0).is_err());
        assert!(transmon_frequency(-1.0, 0.1).is_err());
    }

    #[test]
    fn phase_zpf_values() {
        assert!((phase_zpf(1.0, 0.5).unwrap() - 1.0).abs() < 1e-15);
        let z = phase_zpf(45.0, 0.3).unwrap();
        assert!((z - (0.6f64 / 45.0).powf(0.25)).abs() < 1e-15);
        assert!((z - 0.339809).abs() < 1e-5);
        // Monotone decreasing in E_J.
        let mut prev = f64::INFINITY;
        for ej in [10.0, 20.0, 40.0, 80.0] {
            let v = phase_zpf(ej, 0.3).unwrap();
            assert!(v < prev);
            prev = v;
        }
    }

    #[test]
    fn cpw_mode_relations() {
        let p = CircuitParams::default();
        let mode = cpw_fundamental(p.length, p.cap_per_len, p.ind_per_len).unwrap();
        // Defaults encode a 6 GHz, 50 Ω line: Z₁ = 50/π.
        let freq = mode.angular_frequency / (2.0 * std::f64::consts::PI);
        assert!((freq - 6.0e9).abs() < 1e-3);
        assert!((mode.impedance - 50.0 / std::f64::consts::PI).abs() < 1e-12);
        // Z₁·C·ω₁ = 1 exactly.
        let c_total = p.cap_per_len * p.length;
        assert!((mode.impedance * c_total * mode.angular_frequency - 1.0).abs() < 1e-15);
        // Doubling the length halves the frequency.
        let double = cpw_fundamental(2.0 * p.length, p.cap_per_len, p.ind_per_len).unwrap();
        assert!((double.angular_frequency - 0.5 * mode.angular_frequency).abs() < 1e-6);
    }

    #[test]
    fn segment_zpf_scalings() {
        let p = CircuitParams::default();
        let mode = cpw_fundamental(p.length, p.cap_per_len, p.ind_per_len).unwrap();
        let base = segment_phase_zpf(1.0, p.segment, p.length, mode.impedance).unwrap();
        let five = segment_phase_zpf(5.0, p.segment, p.length, mode.impedance).unwrap();
        assert_eq!(five, 5.0 * base);
        let double_d = segment_phase_zpf(1.0, 2.0 * p.segment, p.length, mode.impedance).unwrap();
        assert!((double_d - 2.0 * base).abs() < 1e-18);
        // The default geometry gives a small positive phase amplitude.
        assert!(base > 0.0 && base < 1e-2);
        // Long segments violate the gradient approximation.
        assert!(segment_phase_zpf(1.0, 0.06 * p.length, p.length, mode.impedance).is_err());
    }

    #[test]
    fn couplings_at_half_flux_quantum() {
        let p = CircuitParams::default();
        let c = p.couplings_at(0.5).unwrap();
        // Exact sweet spot: two-body terms vanish identically, |J| is maximal.
        assert_eq!(c.qubit1, 0.0);
        assert_eq!(c.qubit2, 0.0);
        let report = p.report().unwrap();
        assert_eq!(c.three_body.abs(), report.max_three_body);
        // E_J/h = 20 GHz with η = 5 puts |J|/2π above 10 MHz.
        assert!(
            c.three_body.abs() > 0.010,
            "J = {:.4} GHz",
            c.three_body.abs()
        );
        // No flux, no three-body term.
        let zero = p.couplings_at(0.0).unwrap();
        assert_eq!(zero.three_body, 0.0);
    }

    #[test]
    fn coupling_trigonometric_structure() {
        let p = CircuitParams::default();
        // J(flux) is odd about 0, g(flux) even; the period is 2Φ₀ in phase.
        for flux in [0.1, 0.2, 0.35, 0.45] {
            let plus = p.couplings_at(flux).unwrap();
            let minus = p.couplings_at(-flux).unwrap();
            assert_eq!(plus.three_body, -minus.three_body);
            assert_eq!(plus.qubit1, minus.qubit1);
            let shifted = p.couplings_at(flux + 2.0).unwrap();
            assert!((plus.three_body - shifted.three_body).abs() < 1e-15 * plus.three_body.abs());
        }
        // Pythagorean consistency: (J/(E_J·φx·φ1·φ2))² + (g₁/(E_J·φx·φ1))² = 1.
        let report = p.report().unwrap();
        for flux in [0.05, 0.17, 0.33, 0.5, 0.77] {
            let c = p.couplings_at(flux).unwrap();
            let s = c.three_body / report.max_three_body;
            let co = c.qubit1 / report.max_two_body[0];
            assert!((s * s + co * co - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn two_body_terms_are_dispersively_suppressed() {
        let report = CircuitParams::default().report().unwrap();
        // Tens of MHz against multi-GHz detunings.
        assert!(report.two_body_suppression[0] < 0.05);
        assert!(report.two_body_suppression[1] < 0.05);
        // The detunings themselves match the designed 4 GHz / 2 GHz split.
        assert!((report.qubit_frequencies[0] - report.resonator_frequency - 4.09).abs() < 0.01);
        assert!((report.resonator_frequency - report.qubit_frequencies[1] - 2.2).abs() < 0.01);
    }

    #[test]
    fn cancellation_solutions() {
        let c0 = cancellation(0.0).unwrap();
        assert!((c0.beta - 1.0).abs() < 1e-15);
        assert!((c0.flux_phase - std::f64::consts::FRAC_PI_2).abs() < 1e-15);

        let c1 = cancellation(1.0).unwrap();
        assert!((c1.beta - 2.0f64.sqrt()).abs() < 1e-15);
        assert!((c1.flux_phase - 3.0 * std::f64::consts::FRAC_PI_4).abs() < 1e-15);

        for alpha in [0.0, 0.3, 1.0, 2.5, 10.0] {
            let c = cancellation(alpha).unwrap();
            let r1 = alpha + c.beta * c.flux_phase.cos();
            let r2 = 1.0 - c.beta * c.flux_phase.sin();
            assert!(r1.abs() <= 1e-12 && r2.abs() <= 1e-12, "α={alpha}: {r1} {r2}");
        }
        assert!(cancellation(-0.1).is_err());
    }

    #[test]
    fn report_flags_non_transmon_ratio() {
        let p = CircuitParams {
            transmon2_josephson: 1.0,
            transmon2_charging: 0.2,
            ..CircuitParams::default()
        };
        let report = p.report().unwrap();
        assert_eq!(report.warnings.len(), 1);
        assert!(report.warnings[0].contains("transmon 2"));
        assert!(CircuitParams::default().report().unwrap().warnings.is_empty());
    }

    #[test]
    fn geometry_validation() {
        let p = CircuitParams {
            segment: 1.0e-3,
            ..CircuitParams::default()
        };
        assert!(p.validate().is_err());
    }
}
