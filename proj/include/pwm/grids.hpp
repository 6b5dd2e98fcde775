#pragma once

#include <array>
#include <cstddef>
#include <vector>
#include <Eigen/Dense>

namespace pwm {

inline constexpr double kPi = 3.141592653589793238462643383279502884;

// Periodic 3D momentum grid in FFT frequency order.  Axis i holds n[i]
// signed integer frequencies f in [-n/2, n/2) scaled by dk[i]; k = 0 is
// contained exactly once.  The conjugate coordinate grid has spacing
// dx[i] = 2*pi/(n[i]*dk[i]) and the same index layout.  Flat index is
// row-major with z fastest: flat = (ix*ny + iy)*nz + iz.
struct KGrid3 {
    std::array<int, 3> n{8, 8, 8};
    std::array<double, 3> dk{1.0, 1.0, 1.0};

    std::size_t size() const {
        return std::size_t(n[0]) * std::size_t(n[1]) * std::size_t(n[2]);
    }

    double dx(int axis) const { return 2.0 * kPi / (n[axis] * dk[axis]); }

    // quadrature measure per k point: d3k/(2pi)^3
    double measure_k() const {
        return dk[0] * dk[1] * dk[2] / ((2.0 * kPi) * (2.0 * kPi) * (2.0 * kPi));
    }
    // quadrature measure per x point: d3x
    double measure_x() const { return dx(0) * dx(1) * dx(2); }

    // signed integer frequency of unsigned index i on axis
    int freq(int i, int axis) const { return (i <= (n[axis] - 1) / 2) ? i : i - n[axis]; }

    std::size_t flat(int ix, int iy, int iz) const {
        return (std::size_t(ix) * n[1] + iy) * n[2] + iz;
    }
    std::array<int, 3> unflat(std::size_t f) const {
        int iz = int(f % n[2]);
        int iy = int((f / n[2]) % n[1]);
        int ix = int(f / (std::size_t(n[1]) * n[2]));
        return {ix, iy, iz};
    }

    Eigen::Vector3d k_at(std::size_t f) const {
        auto idx = unflat(f);
        return {freq(idx[0], 0) * dk[0], freq(idx[1], 1) * dk[1], freq(idx[2], 2) * dk[2]};
    }
    Eigen::Vector3d x_at(std::size_t f) const {
        auto idx = unflat(f);
        return {freq(idx[0], 0) * dx(0), freq(idx[1], 1) * dx(1), freq(idx[2], 2) * dx(2)};
    }
    double knorm_at(std::size_t f) const { return k_at(f).norm(); }

    bool operator==(const KGrid3&) const = default;
};

// Positive-wavenumber 1D grid for quasi-monochromatic packet work.
// Uniform nodes carry trapezoid weights for integrals against dk/(2*pi);
// the Gauss-Hermite rule places nodes about kbar scaled by 1/w and is
// intended for integrands that decay like products of two Gaussian mode
// amplitudes, exp(-w^2 (k-kbar)^2).
struct KGrid1 {
    enum class Rule { uniform, gauss_hermite };

    int n = 0;
    double k_min = 0.0;          // > 0
    double k_max = 0.0;
    Rule rule = Rule::uniform;

    std::vector<double> nodes;
    std::vector<double> weights;  // for sum_i w_i f(k_i) ~= integral dk/(2pi) f(k)

    static KGrid1 make_uniform(int n, double k_min, double k_max);
    static KGrid1 make_gauss_hermite(int n, double kbar, double w);
};

} // namespace pwm
