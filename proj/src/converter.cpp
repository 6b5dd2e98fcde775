#include "pwm/converter.hpp"

#include <cmath>
#include <stdexcept>

namespace pwm {

VectorField spectral_filter_one_over_k(const VectorField& momentum, double k_floor,
                                       FilterReport* report) {
    if (momentum.space() != Space::momentum)
        throw std::invalid_argument("spectral filter expects a momentum-space field");
    if (!(k_floor > 0.0))
        throw std::invalid_argument("k_floor must be positive");

    VectorField out = momentum;
    const KGrid3& g = out.grid();
    double below = 0.0, total = 0.0;
    for (int s = 0; s < 2; ++s) {
        const Helicity h = helicity_from_slot(s);
        if (!out.has(h)) continue;
        auto& blk = out.block(h);
        for (std::size_t f = 0; f < g.size(); ++f) {
            const double kn = g.knorm_at(f);
            const double n2 = blk.col(static_cast<Eigen::Index>(f)).squaredNorm();
            total += n2;
            if (kn == 0.0) {
                blk.col(static_cast<Eigen::Index>(f)).setZero();
                below += n2;
            } else if (kn < k_floor) {
                blk.col(static_cast<Eigen::Index>(f)) /= k_floor;
                below += n2;
            } else {
                blk.col(static_cast<Eigen::Index>(f)) /= kn;
            }
        }
    }
    if (report) {
        report->k_floor = k_floor;
        report->below_floor_fraction = (total > 0.0) ? below / total : 0.0;
    }
    return out;
}

VectorField spectral_multiply_k_squared(const VectorField& momentum) {
    if (momentum.space() != Space::momentum)
        throw std::invalid_argument("spectral multiplier expects a momentum-space field");
    VectorField out = momentum;
    const KGrid3& g = out.grid();
    for (int s = 0; s < 2; ++s) {
        const Helicity h = helicity_from_slot(s);
        if (!out.has(h)) continue;
        auto& blk = out.block(h);
        for (std::size_t f = 0; f < g.size(); ++f) {
            const double kn = g.knorm_at(f);
            blk.col(static_cast<Eigen::Index>(f)) *= kn * kn;
        }
    }
    return out;
}

ShaperReport pulse_shaper_simulate(const ModeCoefficients& mode, const ShaperConfig& cfg) {
    const KGrid1& g = mode.grid;
    const Eigen::Index n = mode.u.size();
    if (n != static_cast<Eigen::Index>(g.nodes.size()))
        throw std::invalid_argument("mode coefficients do not match their grid");

    ShaperReport rep;
    rep.k_floor = (cfg.k_floor > 0.0) ? cfg.k_floor : mode.kbar / 10.0;

    Eigen::VectorXcd dual(n);
    rep.shaped.resize(n);
    double in_norm = 0.0, out_norm = 0.0, dual_norm = 0.0;
    cplx cross(0.0, 0.0);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double k = g.nodes[static_cast<std::size_t>(i)];
        const double w = g.weights[static_cast<std::size_t>(i)];
        const double mask = rep.k_floor / std::max(k, rep.k_floor);
        rep.mask_max = std::max(rep.mask_max, mask);
        rep.shaped(i) = mode.u(i) * mask;
        dual(i) = mode.u(i) / k;
        in_norm += w * std::norm(mode.u(i));
        out_norm += w * std::norm(rep.shaped(i));
        dual_norm += w * std::norm(dual(i));
        cross += w * std::conj(dual(i)) * rep.shaped(i);
    }
    rep.efficiency = (in_norm > 0.0) ? out_norm / in_norm : 0.0;
    rep.fidelity =
        (out_norm > 0.0 && dual_norm > 0.0) ? std::norm(cross) / (dual_norm * out_norm) : 0.0;
    return rep;
}

cplx homodyne_overlap(const VectorField& lo_dual_coordinate,
                      const VectorField& signal_coordinate) {
    return overlap_integral(lo_dual_coordinate, signal_coordinate);
}

cplx homodyne_overlap_1d(const Profile1D& lo_dual, const Profile1D& signal) {
    return profile_pairing(lo_dual, signal);
}

} // namespace pwm
