#include "oracles.hpp"

#include <cmath>
#include <stdexcept>

namespace oracle {

namespace {

// 16-point Gauss-Legendre rule on [-1, 1]: positive half of the symmetric
// node set, tabulated to full double precision.
constexpr int kHalf = 8;
constexpr double kNodes[kHalf] = {
    0.09501250983763744, 0.28160355077925891, 0.45801677765722739, 0.61787624440264375,
    0.75540440835500303, 0.86563120238783174, 0.94457502307323258, 0.98940093499164993,
};
constexpr double kWeights[kHalf] = {
    0.18945061045506850, 0.18260341504492359, 0.16915651939500254, 0.14959598881657673,
    0.12462897125553387, 0.09515851168249278, 0.06225352393864789, 0.02715245941175409,
};

} // namespace

double integrate(const std::function<double(double)>& f, double a, double b, int panels) {
    if (panels < 1) throw std::invalid_argument("quadrature needs at least one panel");
    const double h = (b - a) / panels;
    double acc = 0.0;
    for (int p = 0; p < panels; ++p) {
        const double mid = a + (p + 0.5) * h;
        const double half = 0.5 * h;
        double s = 0.0;
        for (int q = 0; q < kHalf; ++q)
            s += kWeights[q] * (f(mid + half * kNodes[q]) + f(mid - half * kNodes[q]));
        acc += s * half;
    }
    return acc;
}

cplx integrate_c(const std::function<cplx(double)>& f, double a, double b, int panels) {
    if (panels < 1) throw std::invalid_argument("quadrature needs at least one panel");
    const double h = (b - a) / panels;
    cplx acc(0.0, 0.0);
    for (int p = 0; p < panels; ++p) {
        const double mid = a + (p + 0.5) * h;
        const double half = 0.5 * h;
        cplx s(0.0, 0.0);
        for (int q = 0; q < kHalf; ++q)
            s += kWeights[q] * (f(mid + half * kNodes[q]) + f(mid - half * kNodes[q]));
        acc += s * half;
    }
    return acc;
}

double hermite_poly(int m, double x) {
    switch (m) {
        case 0: return 1.0;
        case 1: return 2.0 * x;
        case 2: return 4.0 * x * x - 2.0;
        case 3: return 8.0 * x * x * x - 12.0 * x;
        case 4: return 16.0 * x * x * x * x - 48.0 * x * x + 12.0;
        case 5: return 32.0 * x * x * x * x * x - 160.0 * x * x * x + 120.0 * x;
    }
    throw std::invalid_argument("explicit Hermite polynomials cover m <= 5 only");
}

double hg_amplitude_explicit(int m, double w, double q) {
    double fact = 1.0;
    for (int j = 2; j <= m; ++j) fact *= j;
    const double norm = std::sqrt(std::sqrt(M_PI) * w / (std::pow(2.0, m - 1) * fact));
    const double x = w * q;
    return norm * hermite_poly(m, x) * std::exp(-0.5 * x * x);
}

double hg_moment(int m1, int m2, double kbar, double w, int p) {
    auto f = [&](double k) {
        return hg_amplitude_explicit(m1, w, k - kbar) * std::pow(k, p) *
               hg_amplitude_explicit(m2, w, k - kbar) / (2.0 * M_PI);
    };
    return integrate(f, kbar - 12.0 / w, kbar + 12.0 / w, 64);
}

cplx hg_profile_value(int m, double kbar, double w, double weight_exponent, double t) {
    auto f = [&](double k) -> cplx {
        return std::pow(k, weight_exponent) * hg_amplitude_explicit(m, w, k - kbar) *
               std::exp(cplx(0.0, -k * t)) / (2.0 * M_PI);
    };
    const double lo = std::max(kbar - 12.0 / w, 1e-12);
    const double hi = kbar + 12.0 / w;
    // Panel count scaled so the e^{-ikt} oscillation is well resolved.
    const int panels = std::max(256, int(std::ceil((hi - lo) * (std::abs(t) + 1.0))));
    return cplx(0.0, 1.0) * integrate_c(f, lo, hi, panels);
}

pwm::Vec3c direct_synthesis_at(const pwm::VectorField& momentum, pwm::Weight weight,
                               double t, const pwm::Vec3& x) {
    using namespace pwm;
    if (momentum.space() != Space::momentum)
        throw std::invalid_argument("direct synthesis wants a momentum amplitude");
    const KGrid3& g = momentum.grid();
    const double expo = weight_exponent(weight);
    const double mu = g.measure_k();
    Vec3c acc = Vec3c::Zero();
    for (int s = 0; s < 2; ++s) {
        const Helicity h = helicity_from_slot(s);
        if (!momentum.has(h)) continue;
        const auto& d = momentum.block(h);
        for (std::size_t i = 0; i < g.size(); ++i) {
            const Vec3 k = g.k_at(i);
            const double kn = k.norm();
            cplx factor;
            if (kn == 0.0) {
                factor = (weight == Weight::zero) ? cplx(mu, 0.0) : cplx(0.0, 0.0);
            } else {
                factor = std::pow(kn, expo) * mu * std::exp(cplx(0.0, k.dot(x) - kn * t));
            }
            acc += factor * Vec3c(d.col(i));
        }
    }
    return acc;
}

} // namespace oracle
