#pragma once

#include <complex>
#include <Eigen/Dense>

namespace pwm {

using cplx = std::complex<double>;
using Vec3 = Eigen::Vector3d;
using Vec3c = Eigen::Vector3cd;
using Mat3c = Eigen::Matrix3cd;

enum class Helicity : int { minus = -1, plus = +1 };

inline int sign(Helicity h) { return static_cast<int>(h); }
inline Helicity flip(Helicity h) { return h == Helicity::plus ? Helicity::minus : Helicity::plus; }
inline int helicity_slot(Helicity h) { return h == Helicity::plus ? 0 : 1; }
inline Helicity helicity_from_slot(int s) { return s == 0 ? Helicity::plus : Helicity::minus; }

// Spin-1 generators in the Cartesian basis, (s_a)_{bc} = -i eps_{abc}.
struct SpinTriple {
    Mat3c sx, sy, sz;
};

SpinTriple build_spin_matrices();

// p . s ; acts on a 3-vector f as (p.s) f = i p x f
Mat3c spin_dot(const SpinTriple& s, const Vec3& p);

// Unit transverse circular vector with k x e = -i sigma |k| e and e^dag e = 1.
// Fixed gauge: reference axis a = z unless |khat.z| > 1 - 1e-6 (then a = x);
// theta = normalize(a - (a.khat) khat), phi = khat x theta, e = (theta + i sigma phi)/sqrt(2).
// Returns the zero vector for k = 0 (transverse quantities vanish there).
Vec3c circular_polarization_vector(const Vec3& k, Helicity sigma);

// (khat . s) f = i khat x f ; zero for k = 0
Vec3c helicity_operator_apply(const Vec3& k, const Vec3c& f);

} // namespace pwm
