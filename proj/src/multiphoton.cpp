#include "pwm/multiphoton.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>

#include "pwm/fft.hpp"
#include "pwm/transforms.hpp"

namespace pwm {

namespace {

constexpr std::size_t kMaxPairs = std::size_t(1) << 20;
constexpr double kMaxAssembled = double(std::size_t(1) << 22);

void require_shared_grid(const ModeBasis& basis) {
    if (basis.empty()) throw std::invalid_argument("mode basis is empty");
    for (const auto& m : basis)
        if (!(m.grid == basis.front().grid))
            throw std::invalid_argument("mode basis mixes momentum grids");
}

// Coordinate samples (3 x N) of one mode at time t; modes carry a single
// helicity block, so the total field equals that block.
Eigen::Matrix3Xcd mode_samples(const WavePacketMode& mode, double t) {
    const VectorField f = mode.field(t);
    Eigen::Matrix3Xcd out = Eigen::Matrix3Xcd::Zero(3, f.grid().size());
    for (int s = 0; s < 2; ++s) {
        const Helicity h = helicity_from_slot(s);
        if (f.has(h)) out += f.block(h);
    }
    return out;
}

ModeBasisPtr advance_modes(const ModeBasisPtr& basis, double dt) {
    auto out = std::make_shared<ModeBasis>(*basis);
    for (auto& mode : *out) {
        for (std::size_t f = 0; f < mode.grid.size(); ++f) {
            const double kn = mode.grid.knorm_at(f);
            mode.U(static_cast<Eigen::Index>(f)) *= std::exp(cplx(0.0, -kn * dt));
        }
    }
    return out;
}

// Shared assembly core: sum_{jm} C_jm psi_j(x1, t1) (x) psi_m(x2, t2),
// grouped into helicity-pair blocks by the modes' definite helicities.
PairTensor assemble_pair(const ModeBasis& basis, const Eigen::MatrixXcd& C,
                         double t1, double t2) {
    require_shared_grid(basis);
    const KGrid3& g = basis.front().grid;
    const std::size_t n = g.size();
    if (n * n > kMaxPairs)
        throw std::invalid_argument("pair tensor would exceed the memory guard");
    const int d = static_cast<int>(basis.size());
    if (C.rows() != d || C.cols() != d)
        throw std::invalid_argument("coefficient matrix does not match the basis size");

    std::vector<Eigen::Matrix3Xcd> F1(d), F2(d);
    for (int j = 0; j < d; ++j) {
        F1[j] = mode_samples(basis[j], t1);
        F2[j] = (t1 == t2) ? F1[j] : mode_samples(basis[j], t2);
    }

    PairTensor out;
    out.grid = g;
    out.t1 = t1;
    out.t2 = t2;
    for (int j = 0; j < d; ++j) {
        const int s1 = helicity_slot(basis[j].sigma);
        for (int m = 0; m < d; ++m) {
            const cplx c = C(j, m);
            if (c == cplx(0.0, 0.0)) continue;
            const int s2 = helicity_slot(basis[m].sigma);
            auto& blk = out.block[s1][s2];
            if (blk.empty()) blk.assign(n * n, Mat3c::Zero());
            for (std::size_t p1 = 0; p1 < n; ++p1) {
                const Vec3c v1 = c * F1[j].col(static_cast<Eigen::Index>(p1));
                Mat3c* row = blk.data() + p1 * n;
                for (std::size_t p2 = 0; p2 < n; ++p2)
                    row[p2].noalias() += v1 * F2[m].col(static_cast<Eigen::Index>(p2)).transpose();
            }
        }
    }
    return out;
}

} // namespace

double PairTensor::norm() const {
    const double mx = grid.measure_x();
    double acc = 0.0;
    for (int s1 = 0; s1 < 2; ++s1)
        for (int s2 = 0; s2 < 2; ++s2)
            for (const Mat3c& m : block[s1][s2]) acc += m.squaredNorm();
    return std::sqrt(acc * mx * mx);
}

double PairTensor::max_abs_diff(const PairTensor& other) const {
    if (!(grid == other.grid))
        throw std::invalid_argument("pair tensors live on different grids");
    double worst = 0.0;
    for (int s1 = 0; s1 < 2; ++s1)
        for (int s2 = 0; s2 < 2; ++s2) {
            const auto& a = block[s1][s2];
            const auto& b = other.block[s1][s2];
            if (a.empty() && b.empty()) continue;
            const std::size_t n = std::max(a.size(), b.size());
            for (std::size_t p = 0; p < n; ++p) {
                Mat3c d = (p < a.size() ? a[p] : Mat3c::Zero().eval()) -
                          (p < b.size() ? b[p] : Mat3c::Zero().eval());
                worst = std::max(worst, d.cwiseAbs().maxCoeff());
            }
        }
    return worst;
}

ModeBasis orthonormalize(const ModeBasis& modes, double drop_tol) {
    require_shared_grid(modes);
    ModeBasis out = modes;
    const double mu = modes.front().grid.measure_k();
    // Opposite helicities are orthogonal already (the polarization vectors
    // are orthogonal at every wavevector), so sweep within each block.
    for (std::size_t j = 0; j < out.size(); ++j) {
        auto& mj = out[j];
        for (std::size_t i = 0; i < j; ++i) {
            const auto& mi = out[i];
            if (mi.sigma != mj.sigma) continue;
            const cplx proj = mi.U.dot(mj.U) * mu;
            mj.U -= proj * mi.U;
        }
        const double nrm = std::sqrt(mj.U.squaredNorm() * mu);
        if (nrm < drop_tol)
            throw std::invalid_argument("modes are linearly dependent; cannot orthonormalize");
        mj.U /= nrm;
    }
    return out;
}

Eigen::MatrixXcd symmetrize_coefficients(const Eigen::MatrixXcd& C) {
    if (C.rows() != C.cols())
        throw std::invalid_argument("two-photon coefficient matrix must be square");
    Eigen::MatrixXcd S = C + C.transpose();
    const double nrm = S.norm();
    if (nrm < 1e-12 * std::max(1.0, C.norm()))
        throw std::invalid_argument("coefficients have no bosonic component");
    return S / nrm;
}

TwoPhotonState make_two_photon(ModeBasisPtr basis, const Eigen::MatrixXcd& C_raw) {
    if (!basis) throw std::invalid_argument("null mode basis");
    require_shared_grid(*basis);
    if (C_raw.rows() != static_cast<Eigen::Index>(basis->size()))
        throw std::invalid_argument("coefficient matrix does not match the basis size");
    TwoPhotonState s;
    s.basis = std::move(basis);
    s.C = symmetrize_coefficients(C_raw);
    return s;
}

TwoPhotonState two_photon_propagate(const TwoPhotonState& s, double dt) {
    TwoPhotonState out;
    out.basis = advance_modes(s.basis, dt);
    out.C = s.C;
    return out;
}

PairTensor two_time_evaluate(const TwoPhotonState& s, double t1, double t2) {
    return assemble_pair(*s.basis, s.C, t1, t2);
}

Eigen::Matrix3Xcd slot1_values(const TwoPhotonState& s, const Vec3& R, double T) {
    const ModeBasis& basis = *s.basis;
    const int d = static_cast<int>(basis.size());
    Eigen::Matrix3Xcd vals = Eigen::Matrix3Xcd::Zero(3, d);
    for (int j = 0; j < d; ++j) {
        const auto& m = basis[j];
        const double mu = m.grid.measure_k();
        Vec3c acc = Vec3c::Zero();
        for (std::size_t f = 0; f < m.grid.size(); ++f) {
            const cplx u = m.U(static_cast<Eigen::Index>(f));
            if (u == cplx(0.0, 0.0)) continue;
            const Vec3 k = m.grid.k_at(f);
            const double kn = k.norm();
            if (kn == 0.0) continue;
            const Vec3c e = circular_polarization_vector(k, m.sigma);
            const cplx phase = std::exp(cplx(0.0, k.dot(R) - kn * T));
            acc += (cplx(0.0, 1.0) * std::sqrt(kn) * u * phase * mu) * e;
        }
        vals.col(j) = acc;
    }
    Eigen::Matrix3Xcd out = Eigen::Matrix3Xcd::Zero(3, d);
    for (int mm = 0; mm < d; ++mm)
        for (int j = 0; j < d; ++j) out.col(mm) += s.C(j, mm) * vals.col(j);
    return out;
}

CollapseResult collapse_at_detection(const TwoPhotonState& s, const Vec3& R1, double T1,
                                     bool per_component, bool renormalize) {
    Eigen::Matrix3Xcd W = slot1_values(s, R1, T1);
    if (W.cwiseAbs().maxCoeff() < 1e-300)
        throw std::invalid_argument("no amplitude at the detection point");

    Eigen::JacobiSVD<Eigen::Matrix3Xcd> svd(W, Eigen::ComputeFullU);
    Vec3c u = svd.matrixU().col(0);
    int imax = 0;
    u.cwiseAbs().maxCoeff(&imax);
    u *= std::conj(u(imax)) / std::abs(u(imax));

    CollapseResult res;
    res.direction = u;
    res.c = (u.adjoint() * W).transpose();
    res.nonlocal_norm = res.c.norm();
    if (per_component) res.per_component = W;
    if (renormalize) {
        if (res.nonlocal_norm == 0.0)
            throw std::invalid_argument("collapsed state has zero norm; cannot renormalize");
        res.c /= res.nonlocal_norm;
    }
    return res;
}

double joint_energy_expectation(const TwoPhotonState& s) {
    const Eigen::MatrixXcd H = energy_matrix(*s.basis);
    const cplx acc = (s.C.conjugate().cwiseProduct(H * s.C * H.transpose())).sum();
    return acc.real();
}

ReducedDensityMatrix reduced_density_matrix(const TwoPhotonState& s) {
    const Eigen::MatrixXcd G = gram_matrix(*s.basis);
    const double gdev =
        (G - Eigen::MatrixXcd::Identity(G.rows(), G.cols())).cwiseAbs().maxCoeff();
    if (gdev > 1e-6)
        throw std::invalid_argument(
            "basis is not orthonormal under the non-local product; "
            "the partial trace would be misnormalized");

    ReducedDensityMatrix r;
    r.rho = s.C * s.C.adjoint();
    r.trace_deviation = std::abs(r.rho.trace().real() - 1.0) + std::abs(r.rho.trace().imag());
    r.hermiticity_deviation = (r.rho - r.rho.adjoint()).cwiseAbs().maxCoeff();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es((r.rho + r.rho.adjoint()) / 2.0);
    r.min_eigenvalue = es.eigenvalues().minCoeff();
    r.purity = (r.rho * r.rho).trace().real();
    return r;
}

WrongTraceDemo wrong_trace_demo(const TwoPhotonState& s) {
    WrongTraceDemo d;
    d.proper = s.C * s.C.adjoint();
    const Eigen::MatrixXcd H = energy_matrix(*s.basis);
    d.naive = s.C * H.transpose() * s.C.adjoint();
    const double tp = d.proper.trace().real();
    const double tn = d.naive.trace().real();
    d.trace_ratio = tn / tp;
    d.shape_difference = (d.naive / tn - d.proper / tp).cwiseAbs().maxCoeff();
    return d;
}

namespace {

std::size_t ipow(std::size_t b, int e) {
    std::size_t r = 1;
    for (int i = 0; i < e; ++i) r *= b;
    return r;
}

Eigen::VectorXcd symmetrize_tensor(const Eigen::VectorXcd& C, int d, int n) {
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(C.size());
    int nperm = 0;
    std::vector<int> digits(n);
    do {
        ++nperm;
        for (Eigen::Index idx = 0; idx < C.size(); ++idx) {
            std::size_t rest = static_cast<std::size_t>(idx);
            for (int sdig = n - 1; sdig >= 0; --sdig) {
                digits[sdig] = static_cast<int>(rest % d);
                rest /= d;
            }
            std::size_t src = 0;
            for (int sdig = 0; sdig < n; ++sdig) src = src * d + digits[perm[sdig]];
            out(idx) += C(static_cast<Eigen::Index>(src));
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out / double(nperm);
}

} // namespace

NPhotonState make_n_photon(ModeBasisPtr basis, int n, const Eigen::VectorXcd& C_raw) {
    if (!basis) throw std::invalid_argument("null mode basis");
    require_shared_grid(*basis);
    if (n < 1 || n > 4)
        throw std::invalid_argument("photon number must lie between 1 and 4");
    const int d = static_cast<int>(basis->size());
    if (C_raw.size() != static_cast<Eigen::Index>(ipow(d, n)))
        throw std::invalid_argument("coefficient tensor does not match the basis size");
    Eigen::VectorXcd S = symmetrize_tensor(C_raw, d, n);
    const double nrm = S.norm();
    if (nrm < 1e-12 * std::max(1.0, C_raw.norm()))
        throw std::invalid_argument("coefficients have no bosonic component");
    NPhotonState s;
    s.basis = std::move(basis);
    s.n = n;
    s.C = S / nrm;
    return s;
}

NPhotonState n_photon_propagate(const NPhotonState& s, double dt) {
    NPhotonState out;
    out.basis = advance_modes(s.basis, dt);
    out.n = s.n;
    out.C = s.C;
    return out;
}

NPhotonTensor n_photon_assemble(const NPhotonState& s, double t) {
    const ModeBasis& basis = *s.basis;
    const KGrid3& g = basis.front().grid;
    const std::size_t N = g.size();
    if (std::pow(double(N), s.n) > kMaxAssembled)
        throw std::invalid_argument("assembled tensor would exceed the memory guard");
    const int d = static_cast<int>(basis.size());

    // Combined per-slot index q = 3 * p + r (grid point p, vector component r):
    // sample matrix E is (3N) x d with E(q, j) = psi_j(x_p, t)_r.
    Eigen::MatrixXcd E(3 * N, d);
    for (int j = 0; j < d; ++j) {
        const Eigen::Matrix3Xcd F = mode_samples(basis[j], t);
        for (std::size_t p = 0; p < N; ++p)
            for (int r = 0; r < 3; ++r)
                E(static_cast<Eigen::Index>(3 * p + r), j) = F(r, static_cast<Eigen::Index>(p));
    }

    // Contract one slot at a time: cur holds shape [3N]^done x [d]^(n-done),
    // row-major with the un-contracted mode indices fastest.
    const std::size_t Q = 3 * N;
    std::vector<cplx> cur(s.C.data(), s.C.data() + s.C.size());
    for (int done = 0; done < s.n; ++done) {
        const std::size_t pre = ipow(Q, done);
        const std::size_t post = ipow(std::size_t(d), s.n - done - 1);
        std::vector<cplx> next(pre * Q * post, cplx(0.0, 0.0));
        for (std::size_t a = 0; a < pre; ++a)
            for (std::size_t q = 0; q < Q; ++q)
                for (int j = 0; j < d; ++j) {
                    const cplx e = E(static_cast<Eigen::Index>(q), j);
                    if (e == cplx(0.0, 0.0)) continue;
                    const cplx* src = cur.data() + (a * d + std::size_t(j)) * post;
                    cplx* dst = next.data() + (a * Q + q) * post;
                    for (std::size_t b = 0; b < post; ++b) dst[b] += e * src[b];
                }
        cur.swap(next);
    }

    NPhotonTensor out;
    out.grid = g;
    out.n = s.n;
    out.t = t;
    out.amp = std::move(cur);
    return out;
}

VectorField extraction_rule_single(const ModeBasis& eigenmodes,
                                   const Eigen::VectorXcd& coeff, double t) {
    require_shared_grid(eigenmodes);
    if (coeff.size() != static_cast<Eigen::Index>(eigenmodes.size()))
        throw std::invalid_argument("coefficient vector does not match the basis size");
    const KGrid3& g = eigenmodes.front().grid;
    VectorField amp(g, Space::momentum);
    for (Eigen::Index j = 0; j < coeff.size(); ++j) {
        const auto& m = eigenmodes[static_cast<std::size_t>(j)];
        auto& blk = amp.block(m.sigma);
        for (std::size_t f = 0; f < g.size(); ++f) {
            const cplx u = m.U(static_cast<Eigen::Index>(f));
            if (u == cplx(0.0, 0.0)) continue;
            const Vec3 k = g.k_at(f);
            blk.col(static_cast<Eigen::Index>(f)) +=
                coeff(j) * cplx(0.0, 1.0) * u * circular_polarization_vector(k, m.sigma);
        }
    }
    return synthesize_coordinate_field(amp, Weight::plus_half, t);
}

PairTensor extraction_rule_pair(const ModeBasisPtr& eigenmodes,
                                const Eigen::MatrixXcd& coeff, double t) {
    if (!eigenmodes) throw std::invalid_argument("null mode basis");
    if (coeff.rows() != coeff.cols())
        throw std::invalid_argument("two-photon coefficient matrix must be square");
    const Eigen::MatrixXcd S = (coeff + coeff.transpose()) / 2.0;
    return assemble_pair(*eigenmodes, S, t, t);
}

namespace {

// Apply a per-wavevector linear map to one slot of a pair tensor.  For each
// fixed companion point and companion component, the slot's three component
// arrays are analyzed with an unnormalized DFT, mapped q-pointwise, and
// synthesized back (the DFT round trip is undone by dividing by N).
//
// The map receives the grid label q and must express the operation on
// positive-frequency content e^{i q . x}.  When the slot holds conjugated
// samples, set conjugate_content: the samples are conjugated first (turning
// them into positive-frequency content whose bins carry exact labels, even
// the unpaired most-negative rows of an even grid, where the reflection -q
// is not representable), mapped, and conjugated back.
template <typename MapFn>
PairTensor slot_spectral_map(const PairTensor& T, PairSlot slot, bool conjugate_content,
                             MapFn&& map) {
    PairTensor out;
    out.grid = T.grid;
    out.t1 = T.t1;
    out.t2 = T.t2;
    const KGrid3& g = T.grid;
    const std::size_t N = g.size();
    std::array<std::vector<cplx>, 3> buf;
    for (auto& b : buf) b.resize(N);

    for (int s1 = 0; s1 < 2; ++s1)
        for (int s2 = 0; s2 < 2; ++s2) {
            const auto& src = T.block[s1][s2];
            if (src.empty()) continue;
            auto& dst = out.block[s1][s2];
            dst.assign(N * N, Mat3c::Zero());
            for (std::size_t fixed = 0; fixed < N; ++fixed) {
                for (int comp = 0; comp < 3; ++comp) {
                    for (std::size_t p = 0; p < N; ++p) {
                        const Mat3c& m = src[slot == PairSlot::one ? p * N + fixed
                                                                   : fixed * N + p];
                        for (int r = 0; r < 3; ++r) {
                            const cplx v = (slot == PairSlot::one) ? m(r, comp) : m(comp, r);
                            buf[r][p] = conjugate_content ? std::conj(v) : v;
                        }
                    }
                    for (int r = 0; r < 3; ++r)
                        dft3(buf[r].data(), g.n[0], g.n[1], g.n[2], -1);
                    for (std::size_t f = 0; f < N; ++f) {
                        Vec3c a(buf[0][f], buf[1][f], buf[2][f]);
                        const Vec3c b = map(g.k_at(f), a);
                        buf[0][f] = b(0);
                        buf[1][f] = b(1);
                        buf[2][f] = b(2);
                    }
                    for (int r = 0; r < 3; ++r)
                        dft3(buf[r].data(), g.n[0], g.n[1], g.n[2], +1);
                    const double inv = 1.0 / double(N);
                    for (std::size_t p = 0; p < N; ++p) {
                        Mat3c& m = dst[slot == PairSlot::one ? p * N + fixed
                                                             : fixed * N + p];
                        for (int r = 0; r < 3; ++r) {
                            const cplx v = buf[r][p] * inv;
                            const cplx w = conjugate_content ? std::conj(v) : v;
                            if (slot == PairSlot::one)
                                m(r, comp) = w;
                            else
                                m(comp, r) = w;
                        }
                    }
                }
            }
        }
    return out;
}

} // namespace

PairTensor pair_time_derivative(const PairTensor& T, PairSlot slot, bool conjugated) {
    // positive-frequency content e^{i(q.x - |q| t)} differentiates to -i|q|;
    // the conjugate sandwich turns this into +i|q| for a conjugated slot.
    return slot_spectral_map(T, slot, conjugated,
                             [](const Vec3& q, const Vec3c& a) -> Vec3c {
                                 return cplx(0.0, -q.norm()) * a;
                             });
}

PairTensor pair_curl(const PairTensor& T, PairSlot slot, bool conjugated) {
    // componentwise cross product (Eigen's cross() conjugates complex results)
    return slot_spectral_map(T, slot, conjugated,
                             [](const Vec3& q, const Vec3c& a) -> Vec3c {
                                 const Vec3c qxa(q.y() * a.z() - q.z() * a.y(),
                                                 q.z() * a.x() - q.x() * a.z(),
                                                 q.x() * a.y() - q.y() * a.x());
                                 return cplx(0.0, 1.0) * qxa;
                             });
}

PairEvolutionResidual two_photon_evolution_residual(const PairTensor& T) {
    const PairTensor dt1 = pair_time_derivative(T, PairSlot::one, false);
    const PairTensor dt2 = pair_time_derivative(T, PairSlot::two, false);
    const PairTensor c1 = pair_curl(T, PairSlot::one);
    const PairTensor c2 = pair_curl(T, PairSlot::two);

    PairEvolutionResidual r;
    r.scale = T.norm();
    const double mx = T.grid.measure_x();
    double a1 = 0.0, a2 = 0.0, at = 0.0;
    const cplx I(0.0, 1.0);
    for (int s1 = 0; s1 < 2; ++s1) {
        const double sg1 = sign(helicity_from_slot(s1));
        for (int s2 = 0; s2 < 2; ++s2) {
            const double sg2 = sign(helicity_from_slot(s2));
            if (T.block[s1][s2].empty()) continue;
            const auto& d1 = dt1.block[s1][s2];
            const auto& d2 = dt2.block[s1][s2];
            const auto& k1 = c1.block[s1][s2];
            const auto& k2 = c2.block[s1][s2];
            for (std::size_t p = 0; p < d1.size(); ++p) {
                const Mat3c r1 = I * d1[p] - sg1 * k1[p];
                const Mat3c r2 = I * d2[p] - sg2 * k2[p];
                a1 += r1.squaredNorm();
                a2 += r2.squaredNorm();
                at += (r1 + r2).squaredNorm();
            }
        }
    }
    const double denom = (r.scale > 0.0) ? r.scale : 1.0;
    r.slot1 = std::sqrt(a1 * mx * mx) / denom;
    r.slot2 = std::sqrt(a2 * mx * mx) / denom;
    r.total = std::sqrt(at * mx * mx) / denom;
    return r;
}

PairTensor detection_amplitude(const TwoPhotonState& s, double t1, double t2,
                               bool e_only) {
    const ModeBasis& basis = *s.basis;
    require_shared_grid(basis);
    const KGrid3& g = basis.front().grid;
    const std::size_t n = g.size();
    if (n * n > kMaxPairs)
        throw std::invalid_argument("pair tensor would exceed the memory guard");
    const int d = static_cast<int>(basis.size());

    std::vector<Eigen::Matrix3Xcd> F1(d), F2(d);
    for (int j = 0; j < d; ++j) {
        F1[j] = mode_samples(basis[j], t1);
        F2[j] = (t1 == t2) ? F1[j] : mode_samples(basis[j], t2);
    }

    PairTensor out;
    out.grid = g;
    out.t1 = t1;
    out.t2 = t2;
    // Electric and magnetic profiles of a definite-helicity mode are
    // E_j = psi_j / sqrt(2) and B_j = -i sigma_j psi_j / sqrt(2); the
    // detection combination (1/2)[E E - s1 s2 B B + i (s2 E B + s1 B E)]
    // therefore reduces to a scalar weight per mode pair and block.
    for (int s1i = 0; s1i < 2; ++s1i) {
        const double s1 = sign(helicity_from_slot(s1i));
        for (int s2i = 0; s2i < 2; ++s2i) {
            const double s2 = sign(helicity_from_slot(s2i));
            auto& blk = out.block[s1i][s2i];
            blk.assign(n * n, Mat3c::Zero());
            for (int j = 0; j < d; ++j) {
                const double sj = sign(basis[j].sigma);
                for (int m = 0; m < d; ++m) {
                    const double sm = sign(basis[m].sigma);
                    cplx w;
                    if (e_only) {
                        w = cplx(0.25, 0.0);
                    } else {
                        const cplx bj(0.0, -sj), bm(0.0, -sm);
                        w = 0.25 * (cplx(1.0, 0.0) - s1 * s2 * bj * bm +
                                    cplx(0.0, 1.0) * (s2 * bm + s1 * bj));
                    }
                    const cplx c = w * s.C(j, m);
                    if (c == cplx(0.0, 0.0)) continue;
                    for (std::size_t p1 = 0; p1 < n; ++p1) {
                        const Vec3c v1 = c * F1[j].col(static_cast<Eigen::Index>(p1));
                        Mat3c* row = blk.data() + p1 * n;
                        for (std::size_t p2 = 0; p2 < n; ++p2)
                            row[p2].noalias() +=
                                v1 * F2[m].col(static_cast<Eigen::Index>(p2)).transpose();
                    }
                }
            }
        }
    }
    return out;
}

} // namespace pwm
