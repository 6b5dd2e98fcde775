#pragma once

#include "pwm/transforms.hpp"

namespace pwm {

// Generator of free evolution applied per helicity block:
// momentum space: (H a)_sigma(k) = sigma * (i k x a) = sigma (s.k) a;
// coordinate space: round trip through momentum space of the same weight.
// A helicity-sigma eigenstate obeys H a = |k| a.
VectorField apply_hamiltonian(const VectorField& f, Weight w = Weight::zero);

// Exact phase advance e^{-i |k| dt} per mode.  Momentum amplitudes keep
// their reference-time convention (the stored time is advanced); coordinate
// fields are advanced through momentum space with the stated weight.
VectorField free_propagate(const VectorField& f, double dt, Weight w = Weight::zero);

// Residuals of the first-order Maxwell pair for a single-helicity field
// psi = psiR + i sigma psiI:
//   dt psiR - curl psiI = 0,  dt psiI + curl psiR = 0,
//   div psiR = div psiI = 0.
// Relative L2 norms; time derivatives from the spectral generator by
// default, or from a centered difference of free_propagate (fd mode).
struct MaxwellResidual {
    double electric_like = 0.0;   // dt psiR - curl psiI
    double magnetic_like = 0.0;   // dt psiI + curl psiR
    double div_real = 0.0;
    double div_imag = 0.0;
    double max() const;
};
enum class TimeDerivative { spectral, centered_difference };
MaxwellResidual maxwell_residual(const VectorField& momentum, Helicity sigma,
                                 TimeDerivative mode = TimeDerivative::spectral,
                                 double fd_step = 1e-4);

// <H> both ways: momentum form sum |k| |a|^2 mu_k and local form
// int |psi|^2 d3x of the energy-weighted synthesis, plus their difference.
struct EnergyExpectation {
    double momentum_form = 0.0;
    double local_form = 0.0;
    double difference = 0.0;
};
EnergyExpectation energy_expectation(const VectorField& momentum);

} // namespace pwm
