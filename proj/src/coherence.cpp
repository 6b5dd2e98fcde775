#include "pwm/coherence.hpp"

#include <cmath>
#include <stdexcept>

namespace pwm {

namespace {

constexpr std::size_t kMaxPairs = std::size_t(1) << 20;

void validate_occupation(const Eigen::MatrixXcd& W, std::size_t d) {
    if (W.rows() != W.cols() || W.rows() != static_cast<Eigen::Index>(d))
        throw std::invalid_argument("occupation matrix does not match the basis size");
    const double scale = std::max(1.0, W.cwiseAbs().maxCoeff());
    if ((W - W.adjoint()).cwiseAbs().maxCoeff() > 1e-10 * scale)
        throw std::invalid_argument("occupation matrix is not Hermitian");
}

// T(p1 * N + p2) = sum_ij W_ij conj(L_i(:, p1)) R_j(:, p2)^T
std::vector<Mat3c> contract_profiles(const std::vector<Eigen::Matrix3Xcd>& L,
                                     const std::vector<Eigen::Matrix3Xcd>& R,
                                     const Eigen::MatrixXcd& W) {
    const std::size_t N = static_cast<std::size_t>(L.front().cols());
    if (N * N > kMaxPairs)
        throw std::invalid_argument("pair tensor would exceed the memory guard");
    std::vector<Mat3c> out(N * N, Mat3c::Zero());
    const int d = static_cast<int>(L.size());
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            const cplx w = W(i, j);
            if (w == cplx(0.0, 0.0)) continue;
            for (std::size_t p1 = 0; p1 < N; ++p1) {
                const Vec3c v1 = w * L[i].col(static_cast<Eigen::Index>(p1)).conjugate();
                Mat3c* row = out.data() + p1 * N;
                for (std::size_t p2 = 0; p2 < N; ++p2)
                    row[p2].noalias() += v1 * R[j].col(static_cast<Eigen::Index>(p2)).transpose();
            }
        }
    return out;
}

PairTensor wrap_block(const KGrid3& g, double t1, double t2, std::vector<Mat3c> data) {
    PairTensor T;
    T.grid = g;
    T.t1 = t1;
    T.t2 = t2;
    T.block[0][0] = std::move(data);
    return T;
}

double tensor_norm(const PairTensor& T) { return T.norm(); }

double block_diff_norm(const std::vector<Mat3c>& a, const std::vector<Mat3c>& b,
                       double ca, double cb, double mx) {
    double acc = 0.0;
    for (std::size_t p = 0; p < a.size(); ++p)
        acc += (ca * a[p] + cb * b[p]).squaredNorm();
    return std::sqrt(acc) * mx;
}

double max_abs_entry(const PairTensor& T) {
    double m = 0.0;
    for (int s1 = 0; s1 < 2; ++s1)
        for (int s2 = 0; s2 < 2; ++s2)
            for (const Mat3c& b : T.block[s1][s2])
                m = std::max(m, b.cwiseAbs().maxCoeff());
    return m;
}

PairTensor lincomb(const PairTensor& a, cplx ca, const PairTensor& b, cplx cb) {
    PairTensor out;
    out.grid = a.grid;
    out.t1 = a.t1;
    out.t2 = a.t2;
    for (int s1 = 0; s1 < 2; ++s1)
        for (int s2 = 0; s2 < 2; ++s2) {
            const auto& ba = a.block[s1][s2];
            const auto& bb = b.block[s1][s2];
            if (ba.empty() && bb.empty()) continue;
            const std::size_t n = std::max(ba.size(), bb.size());
            auto& o = out.block[s1][s2];
            o.assign(n, Mat3c::Zero());
            for (std::size_t p = 0; p < n; ++p) {
                if (p < ba.size()) o[p] += ca * ba[p];
                if (p < bb.size()) o[p] += cb * bb[p];
            }
        }
    return out;
}

std::vector<Eigen::Matrix3Xcd> rs_profiles(const FieldProfiles& prof, double label) {
    std::vector<Eigen::Matrix3Xcd> F(prof.E.size());
    for (std::size_t j = 0; j < prof.E.size(); ++j)
        F[j] = (prof.E[j] + cplx(0.0, label) * prof.B[j]) / std::sqrt(2.0);
    return F;
}

} // namespace

Eigen::MatrixXcd occupation_from_single(const Eigen::VectorXcd& B) {
    return B.conjugate() * B.transpose();
}

Eigen::MatrixXcd occupation_from_pair(const Eigen::MatrixXcd& C) {
    return 2.0 * (C * C.adjoint()).transpose();
}

FieldProfiles field_profiles(const ModeBasis& basis, double t) {
    if (basis.empty()) throw std::invalid_argument("mode basis is empty");
    FieldProfiles prof;
    prof.grid = basis.front().grid;
    prof.t = t;
    const std::size_t N = prof.grid.size();
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    for (const auto& mode : basis) {
        if (!(mode.grid == prof.grid))
            throw std::invalid_argument("mode basis mixes momentum grids");
        const VectorField f = mode.field(t);
        Eigen::Matrix3Xcd E = Eigen::Matrix3Xcd::Zero(3, N);
        Eigen::Matrix3Xcd B = Eigen::Matrix3Xcd::Zero(3, N);
        for (int s = 0; s < 2; ++s) {
            const Helicity h = helicity_from_slot(s);
            if (!f.has(h)) continue;
            E += inv_sqrt2 * f.block(h);
            B += (cplx(0.0, -1.0) * double(sign(h))) * inv_sqrt2 * f.block(h);
        }
        prof.E.push_back(std::move(E));
        prof.B.push_back(std::move(B));
    }
    return prof;
}

CoherenceSet coherence_from_occupation(const ModeBasis& basis, const Eigen::MatrixXcd& W,
                                       double t1, double t2) {
    validate_occupation(W, basis.size());
    const FieldProfiles p1 = field_profiles(basis, t1);
    const FieldProfiles p2 = (t1 == t2) ? p1 : field_profiles(basis, t2);
    const KGrid3& g = p1.grid;

    CoherenceSet c;
    c.E = wrap_block(g, t1, t2, contract_profiles(p1.E, p2.E, W));
    c.H = wrap_block(g, t1, t2, contract_profiles(p1.B, p2.B, W));
    c.M = wrap_block(g, t1, t2, contract_profiles(p1.E, p2.B, W));
    c.N = wrap_block(g, t1, t2, contract_profiles(p1.B, p2.E, W));
    return c;
}

CoherenceSet coherence_from_state(const TwoPhotonState& s, double t1, double t2) {
    return coherence_from_occupation(*s.basis, occupation_from_pair(s.C), t1, t2);
}

CoherenceSet coherence_from_state(const ModeBasis& basis, const Eigen::VectorXcd& B,
                                  double t1, double t2) {
    return coherence_from_occupation(basis, occupation_from_single(B), t1, t2);
}

double coherence_hermiticity_deviation(const CoherenceSet& a, const CoherenceSet& b_swapped) {
    const std::size_t N = a.E.grid.size();
    auto pair_dev = [N](const std::vector<Mat3c>& x, const std::vector<Mat3c>& y) {
        double worst = 0.0;
        for (std::size_t p1 = 0; p1 < N; ++p1)
            for (std::size_t p2 = 0; p2 < N; ++p2) {
                const Mat3c d = x[p1 * N + p2] - y[p2 * N + p1].adjoint();
                worst = std::max(worst, d.cwiseAbs().maxCoeff());
            }
        return worst;
    };
    double worst = pair_dev(a.E.block[0][0], b_swapped.E.block[0][0]);
    worst = std::max(worst, pair_dev(a.H.block[0][0], b_swapped.H.block[0][0]));
    worst = std::max(worst, pair_dev(a.M.block[0][0], b_swapped.N.block[0][0]));
    worst = std::max(worst, pair_dev(a.N.block[0][0], b_swapped.M.block[0][0]));
    return worst;
}

double WolfResidual::max() const {
    double m = 0.0;
    for (double v : slot1) m = std::max(m, v);
    for (double v : slot2) m = std::max(m, v);
    return m;
}

WolfResidual wolf_first_order_residual(const CoherenceSet& c) {
    const PairTensor* X[4] = {&c.E, &c.H, &c.M, &c.N};
    // Curl partner index and sign per tensor, order {E, H, M, N}.
    const int partner1[4] = {3, 2, 1, 0};
    const double sgn1[4] = {+1.0, -1.0, +1.0, -1.0};
    const int partner2[4] = {2, 3, 0, 1};
    const double sgn2[4] = {+1.0, -1.0, -1.0, +1.0};

    WolfResidual r;
    for (int i = 0; i < 4; ++i) r.scale = std::max(r.scale, tensor_norm(*X[i]));
    const double denom = (r.scale > 0.0) ? r.scale : 1.0;
    const double mx = c.E.grid.measure_x();

    PairTensor curls1[4], curls2[4];
    for (int i = 0; i < 4; ++i) {
        curls1[i] = pair_curl(*X[i], PairSlot::one, /*conjugated=*/true);
        curls2[i] = pair_curl(*X[i], PairSlot::two);
    }
    for (int i = 0; i < 4; ++i) {
        const PairTensor dt1 = pair_time_derivative(*X[i], PairSlot::one, true);
        const PairTensor dt2 = pair_time_derivative(*X[i], PairSlot::two, false);
        r.slot1[i] = block_diff_norm(dt1.block[0][0], curls1[partner1[i]].block[0][0],
                                     1.0, -sgn1[i], mx) / denom;
        r.slot2[i] = block_diff_norm(dt2.block[0][0], curls2[partner2[i]].block[0][0],
                                     1.0, -sgn2[i], mx) / denom;
    }
    return r;
}

WolfResidual wolf_second_order_residual(const CoherenceSet& c) {
    const PairTensor* X[4] = {&c.E, &c.H, &c.M, &c.N};
    WolfResidual r;
    for (int i = 0; i < 4; ++i) r.scale = std::max(r.scale, tensor_norm(*X[i]));
    const double denom = (r.scale > 0.0) ? r.scale : 1.0;
    const double mx = c.E.grid.measure_x();

    for (int i = 0; i < 4; ++i) {
        for (int s = 0; s < 2; ++s) {
            const PairSlot slot = (s == 0) ? PairSlot::one : PairSlot::two;
            const bool conj = (s == 0);
            const PairTensor dtt =
                pair_time_derivative(pair_time_derivative(*X[i], slot, conj), slot, conj);
            const PairTensor cc = pair_curl(pair_curl(*X[i], slot, conj), slot, conj);
            const double res =
                block_diff_norm(dtt.block[0][0], cc.block[0][0], 1.0, 1.0, mx) / denom;
            if (s == 0)
                r.slot1[i] = res;
            else
                r.slot2[i] = res;
        }
    }
    return r;
}

PairTensor rs_coherence_contraction(const ModeBasis& basis, const Eigen::MatrixXcd& W,
                                    double t1, double t2, bool flip_slot1_label) {
    validate_occupation(W, basis.size());
    const FieldProfiles p1 = field_profiles(basis, t1);
    const FieldProfiles p2 = (t1 == t2) ? p1 : field_profiles(basis, t2);

    PairTensor out;
    out.grid = p1.grid;
    out.t1 = t1;
    out.t2 = t2;
    for (int s1 = 0; s1 < 2; ++s1) {
        const double lab1 = sign(helicity_from_slot(s1)) * (flip_slot1_label ? +1.0 : -1.0);
        const auto F1 = rs_profiles(p1, lab1);
        for (int s2 = 0; s2 < 2; ++s2) {
            const double lab2 = sign(helicity_from_slot(s2));
            const auto F2 = rs_profiles(p2, lab2);
            out.block[s1][s2] = contract_profiles(F1, F2, W);
        }
    }
    return out;
}

PairTensor rs_coherence_algebra(const CoherenceSet& c) {
    PairTensor out;
    out.grid = c.E.grid;
    out.t1 = c.E.t1;
    out.t2 = c.E.t2;
    const std::size_t n = c.E.block[0][0].size();
    for (int s1 = 0; s1 < 2; ++s1) {
        const double sg1 = sign(helicity_from_slot(s1));
        for (int s2 = 0; s2 < 2; ++s2) {
            const double sg2 = sign(helicity_from_slot(s2));
            auto& blk = out.block[s1][s2];
            blk.assign(n, Mat3c::Zero());
            const cplx I(0.0, 1.0);
            for (std::size_t p = 0; p < n; ++p)
                blk[p] = 0.5 * (c.E.block[0][0][p] + I * (sg1 * c.N.block[0][0][p] +
                                                          sg2 * c.M.block[0][0][p]) -
                                sg1 * sg2 * c.H.block[0][0][p]);
        }
    }
    return out;
}

RSCoherence rs_coherence(const ModeBasis& basis, const Eigen::MatrixXcd& W,
                         double t1, double t2) {
    RSCoherence r;
    r.gamma = rs_coherence_contraction(basis, W, t1, t2);
    const PairTensor via_algebra =
        rs_coherence_algebra(coherence_from_occupation(basis, W, t1, t2));
    r.route_difference = r.gamma.max_abs_diff(via_algebra);
    return r;
}

RSEvolutionResidual rs_evolution_residual(const PairTensor& gamma) {
    const PairTensor dt1 = pair_time_derivative(gamma, PairSlot::one, true);
    const PairTensor dt2 = pair_time_derivative(gamma, PairSlot::two, false);
    const PairTensor c1 = pair_curl(gamma, PairSlot::one, /*conjugated=*/true);
    const PairTensor c2 = pair_curl(gamma, PairSlot::two);

    RSEvolutionResidual r;
    r.scale = gamma.norm();
    const double denom = (r.scale > 0.0) ? r.scale : 1.0;
    const double mx = gamma.grid.measure_x();
    const cplx I(0.0, 1.0);
    double a1 = 0.0, a2 = 0.0;
    for (int s1 = 0; s1 < 2; ++s1) {
        const double sg1 = sign(helicity_from_slot(s1));
        for (int s2 = 0; s2 < 2; ++s2) {
            const double sg2 = sign(helicity_from_slot(s2));
            if (gamma.block[s1][s2].empty()) continue;
            const auto& d1 = dt1.block[s1][s2];
            const auto& d2 = dt2.block[s1][s2];
            const auto& k1 = c1.block[s1][s2];
            const auto& k2 = c2.block[s1][s2];
            for (std::size_t p = 0; p < d1.size(); ++p) {
                a1 += (I * d1[p] - sg1 * k1[p]).squaredNorm();
                a2 += (I * d2[p] - sg2 * k2[p]).squaredNorm();
            }
        }
    }
    r.slot1 = std::sqrt(a1) * mx / denom;
    r.slot2 = std::sqrt(a2) * mx / denom;
    return r;
}

double rs_time_derivative_fd_deviation(const ModeBasis& basis, const Eigen::MatrixXcd& W,
                                       double t1, double t2, PairSlot slot, double h) {
    const PairTensor gamma = rs_coherence_contraction(basis, W, t1, t2);
    const PairTensor spectral =
        pair_time_derivative(gamma, slot, slot == PairSlot::one);
    const double d1 = (slot == PairSlot::one) ? h : 0.0;
    const double d2 = (slot == PairSlot::two) ? h : 0.0;
    const PairTensor plus = rs_coherence_contraction(basis, W, t1 + d1, t2 + d2);
    const PairTensor minus = rs_coherence_contraction(basis, W, t1 - d1, t2 - d2);
    const PairTensor fd = lincomb(plus, cplx(0.5 / h, 0.0), minus, cplx(-0.5 / h, 0.0));
    const double scale = std::max(max_abs_entry(spectral), 1e-300);
    return fd.max_abs_diff(spectral) / scale;
}

} // namespace pwm
