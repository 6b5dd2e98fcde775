#include "pwm/transforms.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "pwm/fft.hpp"

namespace pwm {

double weight_exponent(Weight w) {
    switch (w) {
        case Weight::minus_half: return -0.5;
        case Weight::zero: return 0.0;
        case Weight::plus_half: return 0.5;
    }
    throw std::logic_error("unreachable");
}

namespace {

// per-component 3D DFT of one helicity block
void block_dft(Eigen::Matrix3Xcd& d, const KGrid3& g, int sign) {
    const std::size_t N = g.size();
    std::vector<cplx> buf(N);
    for (int c = 0; c < 3; ++c) {
        for (std::size_t i = 0; i < N; ++i) buf[i] = d(c, i);
        dft3(buf.data(), g.n[0], g.n[1], g.n[2], sign);
        for (std::size_t i = 0; i < N; ++i) d(c, i) = buf[i];
    }
}

} // namespace

VectorField synthesize_coordinate_field(const VectorField& momentum, Weight w, double t) {
    if (momentum.space() != Space::momentum)
        throw std::invalid_argument("synthesize: input must be momentum space");
    const auto& g = momentum.grid();
    const double expo = weight_exponent(w);
    const double mu = g.measure_k();

    VectorField out(g, Space::coordinate);
    out.set_time(t);
    for (int s = 0; s < 2; ++s) {
        Helicity h = helicity_from_slot(s);
        if (!momentum.has(h)) continue;
        Eigen::Matrix3Xcd d = momentum.block(h);
        for (std::size_t i = 0; i < g.size(); ++i) {
            const double kn = g.knorm_at(i);
            cplx factor;
            if (kn == 0.0) {
                if (w == Weight::minus_half && d.col(i).norm() > 0.0)
                    throw std::domain_error("singular weight: |k|^{-1/2} at k = 0");
                factor = (w == Weight::zero) ? cplx(mu, 0.0) : cplx(0.0, 0.0);
            } else {
                factor = std::pow(kn, expo) * mu * std::exp(cplx(0.0, -kn * t));
            }
            d.col(i) *= factor;
        }
        block_dft(d, g, +1);  // sum_k ... e^{+i k.x}
        out.block(h) = d;
    }
    return out;
}

VectorField invert_to_momentum(const VectorField& coord, Weight w) {
    if (coord.space() != Space::coordinate)
        throw std::invalid_argument("invert: input must be coordinate space");
    const auto& g = coord.grid();
    const double expo = weight_exponent(w);
    const double mx = g.measure_x();
    const double t = coord.time();

    VectorField out(g, Space::momentum);
    for (int s = 0; s < 2; ++s) {
        Helicity h = helicity_from_slot(s);
        if (!coord.has(h)) continue;
        Eigen::Matrix3Xcd d = coord.block(h);
        block_dft(d, g, -1);  // sum_x ... e^{-i k.x}
        // d now holds V * (amplitude * |k|^w e^{-i|k|t} mu_k) / (mx*...)
        // DFT sum * mx recovers the continuum analysis integral; mu_k * V = 1/mx^... :
        // synthesis used mu_k, and sum_x e^{i(k-k').x} mx = delta / mu_k.
        for (std::size_t i = 0; i < g.size(); ++i) {
            const double kn = g.knorm_at(i);
            if (kn == 0.0) {
                if (w != Weight::zero) {
                    if (d.col(i).norm() * mx > 1e-14 * std::sqrt(coord.norm2()))
                        throw std::domain_error("cannot unweight spectral content at k = 0");
                    d.col(i).setZero();
                    continue;
                }
                d.col(i) *= mx;
                continue;
            }
            d.col(i) *= std::pow(kn, -expo) * mx * std::exp(cplx(0.0, kn * t));
        }
        out.block(h) = d;
    }
    return out;
}

VectorField to_bb_normalization(const VectorField& momentum, BBDirection dir) {
    if (momentum.space() != Space::momentum)
        throw std::invalid_argument("bb conversion acts on momentum amplitudes");
    const auto& g = momentum.grid();
    const double expo = dir == BBDirection::to_bb ? 0.5 : -0.5;
    VectorField out = momentum;
    for (int s = 0; s < 2; ++s) {
        Helicity h = helicity_from_slot(s);
        if (!out.has(h)) continue;
        auto& d = out.block(h);
        for (std::size_t i = 0; i < g.size(); ++i) {
            const double kn = g.knorm_at(i);
            if (kn == 0.0) {
                if (dir == BBDirection::from_bb && d.col(i).norm() > 0.0)
                    throw std::domain_error("singular weight: |k|^{-1/2} at k = 0");
                d.col(i).setZero();
                continue;
            }
            d.col(i) *= std::pow(kn, expo);
        }
    }
    return out;
}

namespace {

// Catmull-Rom in index space along z of one column.  Stencil points beyond
// the column ends read as zero; callers guarantee the spectrum has decayed
// there (the alias guard rejects anything else).
Vec3c cubic_sample_column(const Eigen::Matrix3Xcd& d, const KGrid3& g,
                          int ix, int iy, double zidx) {
    const int nz = g.n[2];
    const int i1 = int(std::floor(zidx));
    const double u = zidx - i1;
    Vec3c p[4];
    for (int m = -1; m <= 2; ++m) {
        int iz = i1 + m;
        if (iz < 0 || iz >= nz) {
            p[m + 1].setZero();
        } else {
            p[m + 1] = d.col(g.flat(ix, iy, iz));
        }
    }
    const double u2 = u * u, u3 = u2 * u;
    const double w0 = -0.5 * u3 + u2 - 0.5 * u;
    const double w1 = 1.5 * u3 - 2.5 * u2 + 1.0;
    const double w2 = -1.5 * u3 + 2.0 * u2 + 0.5 * u;
    const double w3 = 0.5 * u3 - 0.5 * u2;
    return w0 * p[0] + w1 * p[1] + w2 * p[2] + w3 * p[3];
}

} // namespace

VectorField lorentz_boost_z(const VectorField& momentum, double eta, double alias_tol) {
    if (momentum.space() != Space::momentum)
        throw std::invalid_argument("boost acts on momentum amplitudes");
    const auto& g = momentum.grid();
    const double ch = std::cosh(eta), sh = std::sinh(eta);
    const double dkz = g.dk[2];
    const int nz = g.n[2];
    // signed frequency range covered by the z axis
    const double kz_lo = (-(nz / 2)) * dkz;
    const double kz_hi = ((nz - 1) / 2) * dkz;

    // alias guard: norm fraction whose forward image leaves the grid support
    double norm_total = 0.0, norm_escaped = 0.0;
    for (int s = 0; s < 2; ++s) {
        Helicity h = helicity_from_slot(s);
        if (!momentum.has(h)) continue;
        const auto& d = momentum.block(h);
        for (std::size_t i = 0; i < g.size(); ++i) {
            const double w2 = d.col(i).squaredNorm();
            if (w2 == 0.0) continue;
            norm_total += w2;
            const Vec3 k = g.k_at(i);
            const double kz_img = ch * k.z() - sh * k.norm();
            if (kz_img < kz_lo || kz_img > kz_hi) norm_escaped += w2;
        }
    }
    if (norm_total > 0.0 && norm_escaped / norm_total > alias_tol)
        throw std::domain_error("grid too small for boost: image leaves the resolved support");

    VectorField out(g, Space::momentum);
    out.set_time(momentum.time());
    for (int s = 0; s < 2; ++s) {
        Helicity h = helicity_from_slot(s);
        if (!momentum.has(h)) continue;
        const auto& d = momentum.block(h);
        auto& o = out.block(h);
        for (int ix = 0; ix < g.n[0]; ++ix)
            for (int iy = 0; iy < g.n[1]; ++iy) {
                const double kx = g.freq(ix, 0) * g.dk[0];
                const double ky = g.freq(iy, 1) * g.dk[1];
                const double kp2 = kx * kx + ky * ky;
                for (int iz = 0; iz < nz; ++iz) {
                    const std::size_t fo = g.flat(ix, iy, iz);
                    const double kzp = g.freq(iz, 2) * dkz;
                    const Vec3 kprime(kx, ky, kzp);
                    const double kpn = kprime.norm();
                    if (kpn == 0.0) {
                        o.col(fo).setZero();
                        continue;
                    }
                    // inverse boost: preimage of k'
                    const double kz_src = ch * kzp + sh * kpn;
                    if (kz_src < kz_lo || kz_src > kz_hi) {
                        o.col(fo).setZero();
                        continue;
                    }
                    const double kn_src = std::sqrt(kp2 + kz_src * kz_src);
                    // source position in unsigned index space
                    double fidx = kz_src / dkz;
                    double zidx = fidx >= 0.0 ? fidx : fidx + nz;
                    if (zidx >= nz) zidx -= nz;
                    Vec3c v = cubic_sample_column(d, g, ix, iy, zidx);
                    v *= std::sqrt(kn_src / kpn);
                    // invariant helicity: re-project on the local circular vector
                    const Vec3c e = circular_polarization_vector(kprime, h);
                    o.col(fo) = (e.adjoint() * v)(0, 0) * e;
                }
            }
    }
    return out;
}

} // namespace pwm
