#pragma once

#include <array>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "pwm/wavepackets.hpp"

namespace pwm {

using ModeBasis = std::vector<WavePacketMode>;
using ModeBasisPtr = std::shared_ptr<const ModeBasis>;

// Orthonormalize under the momentum (= non-local) product, modified
// Gram-Schmidt per helicity block.  Near-dependent inputs are rejected.
ModeBasis orthonormalize(const ModeBasis& modes, double drop_tol = 1e-8);

// Sampled two-point tensor field: per helicity pair (s1, s2) a length
// N1*N2 array of 3x3 matrices, pair index p = i1 * N2 + i2, at times (t1, t2).
struct PairTensor {
    KGrid3 grid;
    double t1 = 0.0, t2 = 0.0;
    std::array<std::array<std::vector<Mat3c>, 2>, 2> block;

    bool has(int s1, int s2) const { return !block[s1][s2].empty(); }
    std::vector<Mat3c>& at(Helicity h1, Helicity h2) {
        return block[helicity_slot(h1)][helicity_slot(h2)];
    }
    double norm() const;
    double max_abs_diff(const PairTensor& other) const;
};

// Bosonic two-photon amplitude over a shared packet-mode basis:
// coefficients C are symmetric with unit Frobenius norm.
struct TwoPhotonState {
    ModeBasisPtr basis;
    Eigen::MatrixXcd C;
};

// (C + C^T), normalized to unit Frobenius norm.
// Error: antisymmetric input (no bosonic component).
Eigen::MatrixXcd symmetrize_coefficients(const Eigen::MatrixXcd& C);

// Symmetrizes, normalizes and validates against the basis.
TwoPhotonState make_two_photon(ModeBasisPtr basis, const Eigen::MatrixXcd& C_raw);

// Free evolution: every basis mode advanced in place, coefficients unchanged.
TwoPhotonState two_photon_propagate(const TwoPhotonState& s, double dt);

// Phi(x1, t1; x2, t2) = sum_jm C_jm psi_j(x1, t1) (x) psi_m(x2, t2),
// sampled on the basis grid for both slots.  Memory guard: N^2 <= 2^20 pairs.
PairTensor two_time_evaluate(const TwoPhotonState& s, double t1, double t2);
inline PairTensor assemble_two_photon(const TwoPhotonState& s, double t) {
    return two_time_evaluate(s, t, t);
}

// Mode values of slot 1 at an arbitrary spacetime point: column m holds
// W_m = sum_j C_jm psi_j(R, T).
Eigen::Matrix3Xcd slot1_values(const TwoPhotonState& s, const Vec3& R, double T);

// Projection of the two-photon amplitude onto a detection event at (R1, T1).
// The slot-1 vector index is contracted with a detection polarization d:
// default is the dominant direction (leading left singular vector of the
// slot-1 value matrix, phase fixed); per_component returns all three
// Cartesian contractions.  The result is left unnormalized unless asked.
struct CollapseResult {
    Eigen::VectorXcd c;                 // coefficients of the survivor photon
    Vec3c direction;                    // detection polarization used
    double nonlocal_norm = 0.0;         // norm of c (basis is orthonormal)
    std::optional<Eigen::Matrix3Xcd> per_component;  // 3 x d coefficient rows
};
CollapseResult collapse_at_detection(const TwoPhotonState& s, const Vec3& R1, double T1,
                                     bool per_component = false, bool renormalize = false);

// <E1 E2> = sum C*_{j'm'} C_{jm} H_{j'j} H_{m'm} over the basis energy matrix.
double joint_energy_expectation(const TwoPhotonState& s);

// rho_jk = sum_m C_jm C*_km : reduced one-photon density matrix under the
// non-local trace.  Pre: basis Gram within 1e-6 of the identity.
struct ReducedDensityMatrix {
    Eigen::MatrixXcd rho;
    double trace_deviation = 0.0;       // |tr rho - 1|
    double hermiticity_deviation = 0.0;
    double min_eigenvalue = 0.0;
    double purity = 0.0;                // tr rho^2
};
ReducedDensityMatrix reduced_density_matrix(const TwoPhotonState& s);

// Contrast between the proper (non-local) partial trace and the naive
// local-overlap trace, which carries energy weights: naive = C H^T C^dag.
struct WrongTraceDemo {
    Eigen::MatrixXcd proper;
    Eigen::MatrixXcd naive;
    double trace_ratio = 0.0;           // tr(naive)/tr(proper): mean energy
    double shape_difference = 0.0;      // max |naive/tr - proper/tr|
};
WrongTraceDemo wrong_trace_demo(const TwoPhotonState& s);

// n-photon coefficient tensor over a shared basis, n <= 4, flat row-major
// index (j_1, ..., j_n), symmetric under any slot exchange, unit norm.
struct NPhotonState {
    ModeBasisPtr basis;
    int n = 1;
    Eigen::VectorXcd C;   // size d^n
};
NPhotonState make_n_photon(ModeBasisPtr basis, int n, const Eigen::VectorXcd& C_raw);
NPhotonState n_photon_propagate(const NPhotonState& s, double dt);

// Fully sampled n-slot amplitude.  Each slot carries a combined index
// q_i = 3 * p_i + r_i (grid point p_i, vector component r_i); the flat
// index is row-major over (q_1, ..., q_n), i.e. slot 1 slowest.
// Memory guard: (grid points)^n <= 2^22.
struct NPhotonTensor {
    KGrid3 grid;
    int n = 1;
    double t = 0.0;
    std::vector<cplx> amp;  // size (3 * grid points)^n
};
NPhotonTensor n_photon_assemble(const NPhotonState& s, double t);

// Mode-sum assembly of states over single-wavevector eigenmode bases from
// plain coefficient lists; n = 1 returns the synthesized field, n = 2 the
// symmetrized pair tensor.  Other n are rejected.
VectorField extraction_rule_single(const ModeBasis& eigenmodes,
                                   const Eigen::VectorXcd& coeff, double t);
PairTensor extraction_rule_pair(const ModeBasisPtr& eigenmodes,
                                const Eigen::MatrixXcd& coeff, double t);

// Detection-amplitude tensor assembled from electric/magnetic mode profiles:
//   (1/2) [ E1 E2 - s1 s2 B1 B2 + i (s2 E1 B2 + s1 B1 E2) ]
// per helicity pair (s1, s2).  e_only keeps the first term alone.
PairTensor detection_amplitude(const TwoPhotonState& s, double t1, double t2,
                               bool e_only = true);

// ---- spectral calculus on sampled pair tensors -------------------------
//
// Both operators analyze the chosen slot's spatial dependence into discrete
// plane waves e^{i q . x} and act on the coefficients.

enum class PairSlot { one = 1, two = 2 };

// Time derivative of the chosen slot.  A slot built from positive-frequency
// waves e^{i(q.x - |q| t)} gets the multiplier -i|q|; a conjugated slot
// (underlying e^{+i|q|t} content) gets +i|q|.
PairTensor pair_time_derivative(const PairTensor& T, PairSlot slot, bool conjugated);

// Curl with respect to the chosen slot's position, i q x on coefficients,
// acting on that slot's vector index.  Set conjugated when the slot holds
// complex-conjugated field samples: the curl is then taken on the conjugate
// (whose discrete frequencies carry exact grid labels, including the
// unpaired most-negative rows of an even grid) and conjugated back;
// without the flag those rows are differentiated with the reflected label.
PairTensor pair_curl(const PairTensor& T, PairSlot slot, bool conjugated = false);

// Residuals of the free two-photon evolution laws for an amplitude tensor
// (both slots positive-frequency, definite helicity per block):
//   slot i:      i d/dt_i Phi = sigma_i curl_i Phi
//   equal time:  i d/dt Phi(t, t) = (sigma_1 curl_1 + sigma_2 curl_2) Phi
// All norms are relative to the tensor norm.
struct PairEvolutionResidual {
    double slot1 = 0.0;
    double slot2 = 0.0;
    double total = 0.0;
    double scale = 0.0;
};
PairEvolutionResidual two_photon_evolution_residual(const PairTensor& T);

} // namespace pwm
