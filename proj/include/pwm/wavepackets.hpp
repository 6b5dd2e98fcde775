#pragma once

#include <string>
#include <vector>

#include "pwm/evolution.hpp"
#include "pwm/grids.hpp"
#include "pwm/innerprod.hpp"

namespace pwm {

// ---------------------------------------------------------------------------
// quasi-1D (paraxial, single transverse mode) machinery
// ---------------------------------------------------------------------------

// Normalized Hermite-Gaussian spectral amplitude
//   psi_m(q) = sqrt(sqrt(pi) w / (2^{m-1} m!)) H_m(w q) e^{-w^2 q^2 / 2},
// unit norm under integral dq/(2pi).  Evaluated by the orthonormal-function
// recurrence (stable); m is limited to the validated range 0..60.
double hermite_gaussian_amplitude(int m, double w, double q);

// Complex spectral coefficients of one packet mode on a 1D wavenumber grid,
// unit norm under the grid quadrature.
struct ModeCoefficients {
    KGrid1 grid;
    Eigen::VectorXcd u;
    int m = 0;               // Hermite index (when applicable)
    double kbar = 0.0;       // carrier
    double w = 1.0;          // spectral width parameter
    bool narrowband_warning = false;  // kbar*w below comfortable regime
    std::string label;
};

// Samples psi_m(k - kbar) on the grid and normalizes on-grid.
// Errors: kbar*w < 3 (packet overlaps k <= 0); warns (flag) for kbar*w < 10.
ModeCoefficients build_hg_coefficients(int m, double kbar, double w, const KGrid1& grid);

// Longitudinal profile psi(t_R) = i * integral dk/(2pi) |k|^{+-1/2} u(k) e^{-i k t_R}
// on a uniform retarded-time grid covering +-window (natural units, c = 1).
// Pre: the wavenumber grid covers kbar +- 8/w.
struct Profile1D {
    Eigen::VectorXd t;       // retarded time nodes
    Eigen::VectorXcd v;      // complex samples
    Weight weight = Weight::plus_half;
};
Profile1D longitudinal_mode(const ModeCoefficients& c, Weight w_exp,
                            double window, int nt);

// Trapezoid of conj(a) * b over the common time grid.  Errors if the grids
// differ or either profile fails the endpoint decay check (|ends| must be
// below decay_tol * max).
cplx profile_pairing(const Profile1D& a, const Profile1D& b, double decay_tol = 1e-10);

// H_jk = integral dk/(2pi) k u_j^*(k) u_k(k): energy matrix in mode space.
// Equals the plain overlap of the energy-weighted mode functions.
Eigen::MatrixXcd energy_matrix(const std::vector<ModeCoefficients>& modes);

// Hermitian diagonalization of an energy matrix: eigenvalues ascending,
// rotated coefficient sets phi_j = sum_m modes[m] * V(m, j).
struct EnergyEigenbasis {
    Eigen::VectorXd omega;
    Eigen::MatrixXcd V;
    std::vector<ModeCoefficients> rotated;
};
EnergyEigenbasis diagonalize_energy(const std::vector<ModeCoefficients>& modes);

// ---------------------------------------------------------------------------
// full 3D wave-packet modes
// ---------------------------------------------------------------------------

// Scalar unitary spectral coefficients of one packet mode with definite
// helicity: vector amplitude a(k) = U(k) e_{k,sigma}.  Unit norm:
// sum |U|^2 d3k/(2pi)^3 = 1.  The synthesized mode carries a global
// factor i and spectral weight |k|^{+1/2}; the dual uses |k|^{-1/2}.
struct WavePacketMode {
    KGrid3 grid;
    Helicity sigma = Helicity::plus;
    Eigen::VectorXcd U;
    std::string label;

    VectorField momentum_amplitude() const;        // i U(k) e_{k,sigma}
    VectorField field(double t) const;             // weight +1/2 synthesis
    VectorField dual(double t) const;              // weight -1/2 synthesis
    double norm_on_grid() const;
};

// Separable Hermite-Gaussian coefficients about a carrier on the z axis:
// U(k) = h_l(k_x; w_x) h_m(k_y; w_y) h_n(k_z - kbar_z; w_z), normalized
// on-grid.  Intended for small grids; orthogonality is only as good as the
// grid, so bases are usually re-orthonormalized afterwards.
WavePacketMode hg_mode_3d(const KGrid3& grid, int l, int m, int n,
                          double kbar_z, double w_x, double w_y, double w_z,
                          Helicity sigma);

// Single-wavevector mode: U is a spike at the given grid node, normalized,
// so the synthesized field is i sqrt(omega) e_{k,sigma} e^{i(k.x - omega t)} / sqrt(V).
// Plain overlap norm equals omega; the non-local norm is 1.
WavePacketMode monochromatic_rs_mode(const KGrid3& grid, int ix, int iy, int iz,
                                     Helicity sigma);

Eigen::MatrixXcd energy_matrix(const std::vector<WavePacketMode>& modes);
Eigen::MatrixXcd gram_matrix(const std::vector<WavePacketMode>& modes);

struct EnergyEigenbasis3D {
    Eigen::VectorXd omega;
    Eigen::MatrixXcd V;
    std::vector<WavePacketMode> rotated;
};
// Rotated modes each carry one definite helicity, so the basis must not mix
// helicities (eigenvectors of a near-degenerate cross-helicity spectrum have
// no well-defined label); mixed bases are rejected with invalid_argument.
EnergyEigenbasis3D diagonalize_energy(const std::vector<WavePacketMode>& modes);

// Coefficients B_j of a coordinate-space field (interpreted as a weight
// +1/2 synthesis) in a packet-mode basis, via the non-local product in its
// momentum form; reports the relative L2 reconstruction error.
// Pre: basis Gram within 1e-6 of the identity.
struct Expansion {
    Eigen::VectorXcd B;
    double reconstruction_error = 0.0;
};
Expansion expand_state(const VectorField& coord_field, const std::vector<WavePacketMode>& basis);

} // namespace pwm
