#include "pwm/spin.hpp"

namespace pwm {

SpinTriple build_spin_matrices() {
    const cplx i(0.0, 1.0);
    SpinTriple s;
    s.sx << 0, 0, 0,
            0, 0, -i,
            0, i, 0;
    s.sy << 0, 0, i,
            0, 0, 0,
            -i, 0, 0;
    s.sz << 0, -i, 0,
            i, 0, 0,
            0, 0, 0;
    return s;
}

Mat3c spin_dot(const SpinTriple& s, const Vec3& p) {
    return p.x() * s.sx + p.y() * s.sy + p.z() * s.sz;
}

Vec3c circular_polarization_vector(const Vec3& k, Helicity sigma) {
    const double kn = k.norm();
    if (kn == 0.0) return Vec3c::Zero();
    const Vec3 khat = k / kn;

    Vec3 a(0.0, 0.0, 1.0);
    if (std::abs(khat.z()) > 1.0 - 1e-6) a = Vec3(1.0, 0.0, 0.0);

    Vec3 theta = a - a.dot(khat) * khat;
    theta.normalize();
    const Vec3 phi = khat.cross(theta);

    const cplx i(0.0, 1.0);
    return (theta.cast<cplx>() + double(sign(sigma)) * i * phi.cast<cplx>()) / std::sqrt(2.0);
}

Vec3c helicity_operator_apply(const Vec3& k, const Vec3c& f) {
    const double kn = k.norm();
    if (kn == 0.0) return Vec3c::Zero();
    const Vec3 khat = k / kn;
    const cplx i(0.0, 1.0);
    Vec3c cross(khat.y() * f.z() - khat.z() * f.y(),
                khat.z() * f.x() - khat.x() * f.z(),
                khat.x() * f.y() - khat.y() * f.x());
    return i * cross;
}

} // namespace pwm
