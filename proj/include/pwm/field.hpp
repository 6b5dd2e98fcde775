#pragma once

#include <array>
#include <stdexcept>
#include <utility>

#include "pwm/grids.hpp"
#include "pwm/spin.hpp"

namespace pwm {

enum class Space { momentum, coordinate };

// Complex 3-vector field on a KGrid3, one block per helicity component.
// Each block is a 3 x N matrix (column = grid point).  Blocks evolve
// independently; absent blocks are identically zero.  Momentum-space data
// are invariant-measure amplitudes a_sigma(k) defined at reference time 0;
// coordinate-space data are samples psi_sigma(x) at the stored time.
class VectorField {
public:
    VectorField() = default;
    VectorField(KGrid3 g, Space s) : grid_(std::move(g)), space_(s) {}

    const KGrid3& grid() const { return grid_; }
    Space space() const { return space_; }
    double time() const { return time_; }
    void set_time(double t) { time_ = t; }

    bool has(Helicity h) const { return present_[helicity_slot(h)]; }

    Eigen::Matrix3Xcd& block(Helicity h) {
        int s = helicity_slot(h);
        if (!present_[s]) {
            data_[s].setZero(3, grid_.size());
            present_[s] = true;
        }
        return data_[s];
    }
    const Eigen::Matrix3Xcd& block(Helicity h) const {
        int s = helicity_slot(h);
        if (!present_[s]) throw std::out_of_range("helicity block not present");
        return data_[s];
    }

    Vec3c value(Helicity h, std::size_t i) const {
        int s = helicity_slot(h);
        if (!present_[s]) return Vec3c::Zero();
        return data_[s].col(i);
    }
    // sum of helicity blocks at one point
    Vec3c value_total(std::size_t i) const {
        Vec3c v = Vec3c::Zero();
        for (int s = 0; s < 2; ++s)
            if (present_[s]) v += data_[s].col(i);
        return v;
    }

    // L2-type norm^2 with the appropriate grid measure
    double norm2() const {
        double acc = 0.0;
        for (int s = 0; s < 2; ++s)
            if (present_[s]) acc += data_[s].squaredNorm();
        return acc * (space_ == Space::momentum ? grid_.measure_k() : grid_.measure_x());
    }

    VectorField& operator*=(const cplx& a) {
        for (int s = 0; s < 2; ++s)
            if (present_[s]) data_[s] *= a;
        return *this;
    }
    VectorField& operator+=(const VectorField& o) {
        require_same_layout(o);
        for (int s = 0; s < 2; ++s)
            if (o.present_[s]) block(helicity_from_slot(s)) += o.data_[s];
        return *this;
    }
    VectorField& operator-=(const VectorField& o) {
        require_same_layout(o);
        for (int s = 0; s < 2; ++s)
            if (o.present_[s]) block(helicity_from_slot(s)) -= o.data_[s];
        return *this;
    }

    void require_same_layout(const VectorField& o) const {
        if (!(grid_ == o.grid_) || space_ != o.space_)
            throw std::invalid_argument("field layout mismatch");
    }

private:
    KGrid3 grid_{};
    Space space_ = Space::momentum;
    double time_ = 0.0;
    std::array<Eigen::Matrix3Xcd, 2> data_{};
    std::array<bool, 2> present_{false, false};
};

// Largest |k . v(k)| / (|k| |v(k)|) over occupied momentum grid points; the
// k = 0 point is skipped (transverse content there is defined to vanish).
double transversality_deviation(const VectorField& f);

// Split a momentum-space field into (transverse, longitudinal) parts.
// Content at k = 0 is assigned to the longitudinal output so the two
// parts recombine to the input exactly.
std::pair<VectorField, VectorField> transverse_longitudinal_split(const VectorField& f);

// Apply khat . s per grid point (momentum space).
VectorField helicity_apply(const VectorField& f);

} // namespace pwm
