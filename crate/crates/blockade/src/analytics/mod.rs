//! Closed-form steady-state results: the exact solve on the truncated
//! two-excitation manifold of the three-body model, its asymptotic
//! weak/strong-coupling expressions, and the full interference algebra of
//! the dual-driven Jaynes–Cummings model.

mod jc;
mod tpb;

pub use jc::{
    cpb_resonant_detunings, interference_terms, jc_amplitudes, jc_g2_closed_form,
    upb_detuning_for_ratio, upb_optimum, upb_single_drive_coupling, InterferenceTerms,
    JcAmplitudes, UpbOptimum,
};
pub use tpb::{
    tpb_g2_approx, tpb_mean_photons_approx, tpb_truncated_steady, tpb_two_photon_approx,
    tpb_two_photon_strong, tpb_two_photon_weak, CouplingRegime, TruncatedState,
    TruncatedSteadyState, TRUNCATED_BASIS,
};
