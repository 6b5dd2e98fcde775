#pragma once

#include <complex>
#include <vector>

namespace pwm {

// Unnormalized in-place 3D DFTs on row-major (z fastest) complex data.
// sign -1: sum_x f(x) e^{-i k.x} style analysis; sign +1: synthesis.
// Plans are cached per shape and created with deterministic heuristics.
void dft3(std::complex<double>* data, int n0, int n1, int n2, int sign);

// 1D helper used by the quasi-1D paths.
void dft1(std::complex<double>* data, int n, int sign);

} // namespace pwm
