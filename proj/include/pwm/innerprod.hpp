#pragma once

#include <string>
#include <vector>

#include "pwm/field.hpp"

namespace pwm {

// sum_sigma integral f^dag . g  with the grid measure of the common space.
// Helicity blocks pair up by label; missing blocks contribute zero.
cplx overlap_integral(const VectorField& f, const VectorField& g);

// sum_sigma integral d3k/(2pi)^3 a^dag . b  on momentum amplitudes.
cplx momentum_scalar_product(const VectorField& a, const VectorField& b);

// Non-local scalar product of coordinate-space fields,
//   (f || g) = (1/(2 pi^2)) int d3x d3x' f^dag(x) . g(x') / |x - x'|^2 ,
// evaluated spectrally as sum_k ftilde^dag gtilde / |k| d3k/(2pi)^3.
// Error: spectral content at k = 0 above 1e-10 of the norm (infrared-singular).
cplx nonlocal_scalar_product(const VectorField& f, const VectorField& g);

// O(N^2) coordinate-space double sum against the grid-consistent kernel
//   G_grid(d) = sum_{k != 0} e^{i k . d} / |k| d3k/(2pi)^3
// tabulated by direct summation (no FFT).  Test oracle; grids above 12^3
// are rejected.
cplx nonlocal_direct_double_sum(const VectorField& f, const VectorField& g);

// Closed-form non-local kernels (natural units):
//   G(r)      = 1/(2 pi^2 r^2)      equal-time product kernel
//   K(r)      = 1/(pi^2 r^2)        mode-space kernel, K = 2 G
//   J(r, tau) = 1/(2 pi^2 (r^2 - tau^2))   two-time kernel, J(r, 0) = G(r)
// Hard errors: r <= 0, and J on the light cone |r - |tau|| < 1e-12 r.
enum class Kernel { G, K, J };
double kernel_eval(Kernel which, double r, double tau = 0.0);

// Oscillatory-integral regularization: evaluate at each epsilon in the
// schedule (decreasing, >= 3 entries) and extrapolate epsilon -> 0 by
// polynomial extrapolation in epsilon^2 of the stated order.
struct RegularizationSchedule {
    std::vector<double> epsilons;  // absolute values, strictly decreasing
    int extrapolation_order = 2;   // polynomial degree in epsilon^2

    // default schedule {0.2, 0.1, 0.05} * r
    static RegularizationSchedule default_for(double r);
    void validate() const;
};

struct OracleResult {
    double value = 0.0;
    double error_estimate = 0.0;
};

// Radial-integral oracle for the kernels:
//   G: (1/(2 pi^2 r)) int_0^inf sin(k r) e^{-eps k} dk
//   K: twice the G integrand
//   J: (1/(4 pi^2 r)) int_0^inf [sin(k(r - tau)) + sin(k(r + tau))] e^{-eps k} dk
// integrated by panelwise Gauss-Legendre quadrature, then extrapolated.
OracleResult kernel_numeric_oracle(Kernel which, double r, double tau,
                                   const RegularizationSchedule& sched);

// Magnitude of the position-eigenvector overlap integral
//   int d3k/(2pi)^3 |k| e^{i k . x} = (1/(2 pi^2 r)) int_0^inf k^2 sin(k r) dk
// regularized as above.  The extrapolated integral is negative,
// -1/(pi^2 r^4); the reference value in circulation quotes the magnitude
// with a positive sign, so the sign is reported out of band.
struct ReferenceOverlap {
    double magnitude = 0.0;        // |value|, compare to 1/(pi^2 r^4)
    bool sign_is_negative = true;  // sign of the extrapolated integral
    double error_estimate = 0.0;
    std::string note;
};
ReferenceOverlap reference_state_overlap(double r, const RegularizationSchedule& sched);

} // namespace pwm
