#pragma once

#include "pwm/field.hpp"

namespace pwm {

// Spectral weight |k|^w applied during synthesis.  zero reproduces the
// plain (position-density) transform pair; plus_half produces fields whose
// pointwise norm integrates to the energy; minus_half produces the duals
// that make weighted packets biorthogonal under the plain overlap.
enum class Weight { minus_half, zero, plus_half };

double weight_exponent(Weight w);

// psi_sigma(x, t) = sum_k |k|^w a_sigma(k) e^{i(k.x - |k| t)} d3k/(2pi)^3
// Error: minus_half with nonzero amplitude at k = 0 (singular weight).
VectorField synthesize_coordinate_field(const VectorField& momentum, Weight w, double t);

// Inverse of synthesize_coordinate_field for the stored sample time:
// recovers invariant-measure amplitudes a_sigma(k).
// Error: plus_half with spectral content at k = 0 (cannot unweight).
VectorField invert_to_momentum(const VectorField& coord, Weight w);

// Pointwise |k|^{+1/2} (to energy-density amplitudes) or |k|^{-1/2} back.
enum class BBDirection { to_bb, from_bb };
VectorField to_bb_normalization(const VectorField& momentum, BBDirection dir);

// Boost along z with rapidity eta applied to momentum amplitudes:
//   k'_z = cosh(eta) k_z - sinh(eta) |k|,  k'_perp = k_perp,
//   a'(k') = sqrt(|k|/|k'|) a(k),
// helicity is unchanged and the mode-mixing factor is the identity for
// boosts along the packet axis.  Samples are pulled back with cubic
// (Catmull-Rom) interpolation in k_z per transverse column and re-projected
// onto the local transverse polarization pair.
// Error: more than `alias_tol` of the norm maps outside the grid support.
VectorField lorentz_boost_z(const VectorField& momentum, double eta,
                            double alias_tol = 1e-6);

} // namespace pwm
