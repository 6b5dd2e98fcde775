#include "pwm/field.hpp"

#include <cmath>

namespace pwm {

double transversality_deviation(const VectorField& f) {
    if (f.space() != Space::momentum)
        throw std::invalid_argument("transversality check needs momentum space");
    double worst = 0.0;
    const auto& g = f.grid();
    for (int s = 0; s < 2; ++s) {
        Helicity h = helicity_from_slot(s);
        if (!f.has(h)) continue;
        const auto& d = f.block(h);
        for (std::size_t i = 0; i < g.size(); ++i) {
            const double kn = g.knorm_at(i);
            if (kn == 0.0) continue;
            const Vec3c v = d.col(i);
            const double vn = v.norm();
            if (vn == 0.0) continue;
            const Vec3 k = g.k_at(i);
            const cplx kv = k.x() * v.x() + k.y() * v.y() + k.z() * v.z();
            worst = std::max(worst, std::abs(kv) / (kn * vn));
        }
    }
    return worst;
}

std::pair<VectorField, VectorField> transverse_longitudinal_split(const VectorField& f) {
    if (f.space() != Space::momentum)
        throw std::invalid_argument("split needs momentum space");
    const auto& g = f.grid();
    VectorField t(g, Space::momentum), l(g, Space::momentum);
    t.set_time(f.time());
    l.set_time(f.time());
    for (int s = 0; s < 2; ++s) {
        Helicity h = helicity_from_slot(s);
        if (!f.has(h)) continue;
        const auto& d = f.block(h);
        auto& dt = t.block(h);
        auto& dl = l.block(h);
        for (std::size_t i = 0; i < g.size(); ++i) {
            const Vec3 k = g.k_at(i);
            const double kn = k.norm();
            const Vec3c v = d.col(i);
            if (kn == 0.0) {
                dl.col(i) = v;  // k = 0: transverse part defined as zero
                continue;
            }
            const Vec3 khat = k / kn;
            const cplx kv = khat.x() * v.x() + khat.y() * v.y() + khat.z() * v.z();
            const Vec3c vl = kv * khat.cast<cplx>();
            dl.col(i) = vl;
            dt.col(i) = v - vl;
        }
    }
    return {std::move(t), std::move(l)};
}

VectorField helicity_apply(const VectorField& f) {
    if (f.space() != Space::momentum)
        throw std::invalid_argument("helicity operator acts in momentum space");
    const auto& g = f.grid();
    VectorField out(g, Space::momentum);
    out.set_time(f.time());
    for (int s = 0; s < 2; ++s) {
        Helicity h = helicity_from_slot(s);
        if (!f.has(h)) continue;
        const auto& d = f.block(h);
        auto& o = out.block(h);
        for (std::size_t i = 0; i < g.size(); ++i)
            o.col(i) = helicity_operator_apply(g.k_at(i), Vec3c(d.col(i)));
    }
    return out;
}

} // namespace pwm
