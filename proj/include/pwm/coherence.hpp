#pragma once

#include <array>

#include "pwm/multiphoton.hpp"

namespace pwm {

// Occupation (first-order coherence) matrix W_ij = <b_i^dag b_j> over a
// shared orthonormal mode basis.
Eigen::MatrixXcd occupation_from_single(const Eigen::VectorXcd& B);
Eigen::MatrixXcd occupation_from_pair(const Eigen::MatrixXcd& C);

// Electric/magnetic coordinate profiles of each basis mode at one time:
//   E_j = sum_sigma psi_{j,sigma} / sqrt(2),
//   B_j = sum_sigma (-i sigma) psi_{j,sigma} / sqrt(2).
struct FieldProfiles {
    KGrid3 grid;
    double t = 0.0;
    std::vector<Eigen::Matrix3Xcd> E, B;
};
FieldProfiles field_profiles(const ModeBasis& basis, double t);

// Second-order coherence tensors over the pair grid, slot 1 conjugated:
//   E(x1,x2) = sum_ij W_ij E_i*(x1) (x) E_j(x2)     (electric-electric)
//   H(x1,x2) = ... B_i* (x) B_j                      (magnetic-magnetic)
//   M(x1,x2) = ... E_i* (x) B_j                      (electric-magnetic)
//   N(x1,x2) = ... B_i* (x) E_j                      (magnetic-electric)
// Each tensor is stored in the first helicity block of a PairTensor (the
// coherence tensors themselves carry no helicity labels).
struct CoherenceSet {
    PairTensor E, H, M, N;
};
CoherenceSet coherence_from_occupation(const ModeBasis& basis, const Eigen::MatrixXcd& W,
                                       double t1, double t2);
CoherenceSet coherence_from_state(const TwoPhotonState& s, double t1, double t2);
CoherenceSet coherence_from_state(const ModeBasis& basis, const Eigen::VectorXcd& B,
                                  double t1, double t2);

// Max deviation from the Hermiticity pairing between a set at (t1, t2) and
// the same construction at swapped times (t2, t1):
//   E(x1,x2;t1,t2) = E(x2,x1;t2,t1)^dag,  H likewise,
//   M(x1,x2;t1,t2) = N(x2,x1;t2,t1)^dag.
double coherence_hermiticity_deviation(const CoherenceSet& a, const CoherenceSet& b_swapped);

// First-order dynamical laws coupling the tensors, one curl equation per
// tensor and slot (the conjugated slot 1 reverses the partners' roles):
//   slot 1:  dE/dt1 = +curl1 N   dN/dt1 = -curl1 E
//            dM/dt1 = +curl1 H   dH/dt1 = -curl1 M
//   slot 2:  dE/dt2 = +curl2 M   dM/dt2 = -curl2 E
//            dN/dt2 = +curl2 H   dH/dt2 = -curl2 N
// Residual norms are relative to the largest tensor norm in the set, in
// tensor order {E, H, M, N}.
struct WolfResidual {
    std::array<double, 4> slot1{};
    std::array<double, 4> slot2{};
    double scale = 0.0;
    double max() const;
};
WolfResidual wolf_first_order_residual(const CoherenceSet& c);

// Per-slot wave equations implied by the first-order laws:
//   d^2 X / dt_i^2 + curl_i curl_i X = 0  for X in {E, H, M, N}.
WolfResidual wolf_second_order_residual(const CoherenceSet& c);

// Riemann-Silberstein coherence matrix: block (s1, s2) holds
//   gamma_{s1 s2}(x1, x2) = sum_ij W_ij F*_{i,-s1}(x1) (x) F_{j,s2}(x2)
// with F_{j,s} = (E_j + i s B_j) / sqrt(2).  The minus sign on the slot-1
// label makes every block obey i d/dt_i gamma = s_i curl_i gamma; building
// with flip_slot1_label = true (label +s1 instead) is the negative control
// and breaks the slot-1 law at order one.
PairTensor rs_coherence_contraction(const ModeBasis& basis, const Eigen::MatrixXcd& W,
                                    double t1, double t2, bool flip_slot1_label = false);

// Same object assembled from the coherence tensors:
//   gamma_{s1 s2} = (1/2) [ E + i (s1 N + s2 M) - s1 s2 H ].
PairTensor rs_coherence_algebra(const CoherenceSet& c);

struct RSCoherence {
    PairTensor gamma;
    double route_difference = 0.0;  // contraction route vs algebra route
};
RSCoherence rs_coherence(const ModeBasis& basis, const Eigen::MatrixXcd& W,
                         double t1, double t2);

// Residual of i d/dt_i gamma = s_i curl_i gamma per slot (slot 1 carries
// conjugated, negative-frequency content), relative to the tensor norm.
struct RSEvolutionResidual {
    double slot1 = 0.0;
    double slot2 = 0.0;
    double scale = 0.0;
};
RSEvolutionResidual rs_evolution_residual(const PairTensor& gamma);

// Cross-check of the spectral slot time derivative against a centered
// difference of tensors rebuilt at shifted times; returns the max abs
// entry difference relative to the tensor norm.
double rs_time_derivative_fd_deviation(const ModeBasis& basis, const Eigen::MatrixXcd& W,
                                       double t1, double t2, PairSlot slot, double h);

} // namespace pwm
