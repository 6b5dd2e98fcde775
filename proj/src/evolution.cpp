#include "pwm/evolution.hpp"

#include <cmath>
#include <stdexcept>

namespace pwm {

namespace {

VectorField apply_generator_momentum(const VectorField& f) {
    const auto& g = f.grid();
    VectorField out(g, Space::momentum);
    out.set_time(f.time());
    for (int s = 0; s < 2; ++s) {
        Helicity h = helicity_from_slot(s);
        if (!f.has(h)) continue;
        const auto& d = f.block(h);
        auto& o = out.block(h);
        const double sg = sign(h);
        const cplx i(0.0, 1.0);
        for (std::size_t idx = 0; idx < g.size(); ++idx) {
            const Vec3 k = g.k_at(idx);
            const Vec3c v = d.col(idx);
            Vec3c cross(k.y() * v.z() - k.z() * v.y(),
                        k.z() * v.x() - k.x() * v.z(),
                        k.x() * v.y() - k.y() * v.x());
            o.col(idx) = sg * i * cross;  // sigma (s.k) a = sigma i k x a
        }
    }
    return out;
}

} // namespace

VectorField apply_hamiltonian(const VectorField& f, Weight w) {
    if (f.space() == Space::momentum) return apply_generator_momentum(f);
    VectorField a = invert_to_momentum(f, w);
    return synthesize_coordinate_field(apply_generator_momentum(a), w, f.time());
}

VectorField free_propagate(const VectorField& f, double dt, Weight w) {
    if (f.space() == Space::momentum) {
        VectorField out = f;
        out.set_time(f.time() + dt);
        return out;  // amplitudes are reference-time data; phase lives in synthesis
    }
    VectorField a = invert_to_momentum(f, w);
    return synthesize_coordinate_field(a, w, f.time() + dt);
}

double MaxwellResidual::max() const {
    return std::max(std::max(electric_like, magnetic_like), std::max(div_real, div_imag));
}

MaxwellResidual maxwell_residual(const VectorField& momentum, Helicity sigma,
                                 TimeDerivative mode, double fd_step) {
    if (momentum.space() != Space::momentum)
        throw std::invalid_argument("maxwell residual expects momentum amplitudes");
    if (!momentum.has(sigma)) throw std::invalid_argument("requested helicity block missing");
    const auto& g = momentum.grid();
    const double t = momentum.time();

    // sampled field and its curl
    VectorField psi = synthesize_coordinate_field(momentum, Weight::zero, t);
    VectorField a = momentum;
    {
        auto& d = a.block(sigma);
        const cplx i(0.0, 1.0);
        for (std::size_t idx = 0; idx < g.size(); ++idx) {
            const Vec3 k = g.k_at(idx);
            const Vec3c v = d.col(idx);
            Vec3c cross(k.y() * v.z() - k.z() * v.y(),
                        k.z() * v.x() - k.x() * v.z(),
                        k.x() * v.y() - k.y() * v.x());
            d.col(idx) = i * cross;  // curl in momentum space
        }
    }
    VectorField curl = synthesize_coordinate_field(a, Weight::zero, t);

    // time derivative of the samples
    VectorField dpsi(g, Space::coordinate);
    if (mode == TimeDerivative::spectral) {
        VectorField b = momentum;
        auto& d = b.block(sigma);
        const cplx i(0.0, 1.0);
        for (std::size_t idx = 0; idx < g.size(); ++idx)
            d.col(idx) *= -i * g.knorm_at(idx);  // d/dt of e^{-i|k|t}
        dpsi = synthesize_coordinate_field(b, Weight::zero, t);
    } else {
        VectorField plus = synthesize_coordinate_field(momentum, Weight::zero, t + fd_step);
        VectorField minus = synthesize_coordinate_field(momentum, Weight::zero, t - fd_step);
        plus -= minus;
        plus *= cplx(1.0 / (2.0 * fd_step), 0.0);
        dpsi = plus;
    }

    // divergence (spectral)
    VectorField divf(g, Space::coordinate);
    {
        VectorField b = momentum;
        auto& d = b.block(sigma);
        Eigen::Matrix3Xcd scal = Eigen::Matrix3Xcd::Zero(3, g.size());
        const cplx i(0.0, 1.0);
        for (std::size_t idx = 0; idx < g.size(); ++idx) {
            const Vec3 k = g.k_at(idx);
            const Vec3c v = d.col(idx);
            scal(0, idx) = i * (k.x() * v.x() + k.y() * v.y() + k.z() * v.z());
        }
        d = scal;
        divf = synthesize_coordinate_field(b, Weight::zero, t);
    }

    const double sg = sign(sigma);
    const auto& P = psi.block(sigma);
    const auto& C = curl.block(sigma);
    const auto& D = dpsi.block(sigma);
    const auto& V = divf.block(sigma);

    // psi = psiR + i sigma psiI: psiR = Re psi, psiI = sigma Im psi
    double nR = 0, nI = 0, rE = 0, rB = 0, dR = 0, dI = 0;
    for (std::size_t idx = 0; idx < g.size(); ++idx)
        for (int c = 0; c < 3; ++c) {
            const double pR = P(c, idx).real(), pI = sg * P(c, idx).imag();
            const double cR = C(c, idx).real(), cI = sg * C(c, idx).imag();
            const double tR = D(c, idx).real(), tI = sg * D(c, idx).imag();
            nR += pR * pR;
            nI += pI * pI;
            const double e1 = tR - cI;  // dt psiR - curl psiI
            const double e2 = tI + cR;  // dt psiI + curl psiR
            rE += e1 * e1;
            rB += e2 * e2;
            if (c == 0) {
                dR += V(0, idx).real() * V(0, idx).real();
                dI += V(0, idx).imag() * V(0, idx).imag();
            }
        }
    const double norm = std::sqrt(nR + nI);
    MaxwellResidual out;
    if (norm == 0.0) return out;
    // scale by the field norm; time scale |k| is order one on these grids
    out.electric_like = std::sqrt(rE) / norm;
    out.magnetic_like = std::sqrt(rB) / norm;
    out.div_real = std::sqrt(dR) / norm;
    out.div_imag = std::sqrt(dI) / norm;
    return out;
}

EnergyExpectation energy_expectation(const VectorField& momentum) {
    if (momentum.space() != Space::momentum)
        throw std::invalid_argument("energy expectation expects momentum amplitudes");
    const auto& g = momentum.grid();
    double e_mom = 0.0;
    for (int s = 0; s < 2; ++s) {
        Helicity h = helicity_from_slot(s);
        if (!momentum.has(h)) continue;
        const auto& d = momentum.block(h);
        for (std::size_t i = 0; i < g.size(); ++i)
            e_mom += g.knorm_at(i) * d.col(i).squaredNorm();
    }
    e_mom *= g.measure_k();

    VectorField psi = synthesize_coordinate_field(momentum, Weight::plus_half, momentum.time());
    const double e_loc = psi.norm2();

    EnergyExpectation out;
    out.momentum_form = e_mom;
    out.local_form = e_loc;
    out.difference = std::abs(e_mom - e_loc);
    return out;
}

} // namespace pwm
