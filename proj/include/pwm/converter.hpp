#pragma once

#include "pwm/innerprod.hpp"
#include "pwm/wavepackets.hpp"

namespace pwm {

// Photon-number normalization prefactor 2 eps0 / (hbar c); equal to 2 in
// the natural units used throughout.  Recorded for report metadata only --
// it never enters the numerics.
inline constexpr double kNumberNormalizationConstant = 2.0;

struct FilterReport {
    double k_floor = 0.0;
    double below_floor_fraction = 0.0;  // norm fraction of input with |k| < k_floor
};

// Multiply momentum amplitudes by 1 / |k|.  Amplitudes with 0 < |k| < k_floor
// are scaled by 1 / k_floor instead (the filter cannot amplify without
// bound); the k = 0 bin is zeroed.  Applying the filter twice and then
// multiplying by |k|^2 restores the input wherever |k| >= k_floor, and the
// filtered energy amplitude of a packet mode is exactly its dual amplitude.
VectorField spectral_filter_one_over_k(const VectorField& momentum, double k_floor,
                                       FilterReport* report = nullptr);

// Pointwise multiplication by |k|^2 (inverse of filtering twice).
VectorField spectral_multiply_k_squared(const VectorField& momentum);

struct ShaperConfig {
    double k_floor = 0.0;  // 0 selects kbar / 10
};

// Dispersive pulse-shaper model for a longitudinal mode: an ideal grating
// maps wavenumber to transverse position, a transmission mask proportional
// to 1/position (clamped at unity below the floor) is applied at the grid
// nodes, and the beam is recombined.  The mask equals k_lo / max(k, k_lo),
// so above the floor the shaped amplitude is proportional to the exact dual
// amplitude u(k) / k.
struct ShaperReport {
    Eigen::VectorXcd shaped;   // masked amplitudes on the mode's 1D grid
    double fidelity = 0.0;     // |<dual, shaped>|^2 / (|dual|^2 |shaped|^2)
    double efficiency = 0.0;   // norm fraction transmitted by the mask
    double mask_max = 0.0;
    double k_floor = 0.0;
};
ShaperReport pulse_shaper_simulate(const ModeCoefficients& mode, const ShaperConfig& cfg = {});

// Balanced-homodyne readout: the local oscillator enters through its dual
// field, so the plain coordinate overlap of (dual LO, signal field) equals
// the non-local scalar product of the two fields.
cplx homodyne_overlap(const VectorField& lo_dual_coordinate, const VectorField& signal_coordinate);

// Time-domain version for longitudinal profiles on a shared window.
cplx homodyne_overlap_1d(const Profile1D& lo_dual, const Profile1D& signal);

} // namespace pwm
