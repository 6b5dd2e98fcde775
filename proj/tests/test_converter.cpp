#include <doctest.h>

#include <cmath>
#include <complex>
#include <stdexcept>

#include "pwm/converter.hpp"
#include "pwm/suites.hpp"
#include "pwm/transforms.hpp"

using namespace pwm;

namespace {

const double kBar = 139.52974572658172;

double field_rel_diff(const VectorField& a, const VectorField& b) {
    VectorField d = a;
    d -= b;
    const double scale = std::sqrt(b.norm2());
    return std::sqrt(d.norm2()) / (scale > 0.0 ? scale : 1.0);
}

} // namespace

TEST_CASE("1/k filter: pointwise action, floor clamp and report") {
    KGrid3 g{{4, 4, 4}, {1.0, 1.0, 1.0}};
    VectorField f(g, Space::momentum);
    auto& blk = f.block(Helicity::plus);
    blk.col(0) = Vec3c(0.3, 0.0, 0.0);  // k = 0 content (will be zeroed)
    for (std::size_t i = 1; i < g.size(); ++i)
        blk.col(i) = circular_polarization_vector(g.k_at(i), Helicity::plus) *
                     (0.1 + 0.01 * double(i));

    FilterReport rep;
    const double floor = 1.2;  // |k| = 1 points fall below
    VectorField out = spectral_filter_one_over_k(f, floor, &rep);

    CHECK(rep.k_floor == doctest::Approx(floor));
    CHECK(out.value(Helicity::plus, 0).norm() == 0.0);

    double below = 0.0, total = blk.col(0).squaredNorm();
    for (std::size_t i = 1; i < g.size(); ++i) {
        const double kn = g.knorm_at(i);
        const Vec3c in = f.value(Helicity::plus, i);
        const Vec3c expect = in / std::max(kn, floor);
        CHECK((out.value(Helicity::plus, i) - expect).norm() < 1e-15 * expect.norm());
        total += in.squaredNorm();
        if (kn < floor) below += in.squaredNorm();
    }
    below += f.value(Helicity::plus, 0).squaredNorm();
    CHECK(rep.below_floor_fraction == doctest::Approx(below / total).epsilon(1e-13));

    CHECK_THROWS_AS(spectral_filter_one_over_k(f, 0.0, nullptr), std::invalid_argument);
    VectorField coord(g, Space::coordinate);
    CHECK_THROWS_AS(spectral_filter_one_over_k(coord, 1.0, nullptr), std::invalid_argument);
    CHECK_THROWS_AS(spectral_multiply_k_squared(coord), std::invalid_argument);
}

TEST_CASE("filtering twice then multiplying by k^2 restores the field above the floor") {
    KGrid3 g{{8, 8, 8}, {1.2, 1.2, 1.2}};
    VectorField f = random_transverse_field(g, 2.4, 1.0, 61);

    const double floor = 0.24;  // grid minimum |k| is 1.2: everything is above
    VectorField twice = spectral_filter_one_over_k(
        spectral_filter_one_over_k(f, floor, nullptr), floor, nullptr);
    VectorField back = spectral_multiply_k_squared(twice);
    CHECK(field_rel_diff(back, f) < 1e-13);

    // the filtered energy amplitude of a packet mode is exactly its dual
    WavePacketMode mode = hg_mode_3d(g, 0, 0, 1, 2.4, 1.0, 1.0, 1.0, Helicity::plus);
    VectorField amp = mode.momentum_amplitude();
    VectorField bb = to_bb_normalization(amp, BBDirection::to_bb);         // |k|^{+1/2} a
    VectorField filtered = spectral_filter_one_over_k(bb, floor, nullptr); // |k|^{-1/2} a
    VectorField dual_amp = to_bb_normalization(amp, BBDirection::from_bb);
    CHECK(field_rel_diff(filtered, dual_amp) < 1e-13);

    // a monochromatic mode is a fixed point of filter + k^2 + filter
    KGrid3 g6{{6, 6, 6}, {1.0, 1.0, 1.0}};
    WavePacketMode mono = monochromatic_rs_mode(g6, 0, 0, 2, Helicity::plus);
    VectorField ma = mono.momentum_amplitude();
    VectorField cycle = spectral_filter_one_over_k(
        spectral_multiply_k_squared(spectral_filter_one_over_k(ma, 0.5, nullptr)), 0.5, nullptr);
    CHECK(field_rel_diff(cycle, ma) < 1e-15);
}

TEST_CASE("pulse shaper: mask shape and conversion fidelity") {
    KGrid1 g = KGrid1::make_gauss_hermite(200, kBar, 1.0);

    for (int m = 0; m < 4; ++m) {
        ModeCoefficients c = build_hg_coefficients(m, kBar, 1.0, g);
        ShaperReport rep = pulse_shaper_simulate(c);
        CHECK(rep.k_floor == doctest::Approx(kBar / 10.0));
        // every node sits far above the floor: mask strictly below 1
        CHECK(rep.mask_max < 1.0);
        CHECK(rep.mask_max > 0.0);
        CHECK(rep.fidelity >= 1.0 - 1e-6);
        CHECK(rep.fidelity <= 1.0 + 1e-12);
        CHECK(rep.efficiency < 0.05);  // the 1/k mask transmits little power
        CHECK(rep.efficiency > 0.0);

        // masked amplitudes are u * k_floor / k above the floor
        for (int i = 0; i < g.n; i += 37) {
            const double k = g.nodes[static_cast<std::size_t>(i)];
            const cplx expect = c.u(i) * (rep.k_floor / k);
            CHECK(std::abs(rep.shaped(i) - expect) < 1e-15 * std::abs(expect) + 1e-300);
        }
    }

    // clamping at the carrier barely matters for a narrowband packet
    ModeCoefficients c0 = build_hg_coefficients(0, kBar, 1.0, g);
    ShaperReport clamped = pulse_shaper_simulate(c0, ShaperConfig{kBar});
    CHECK(clamped.mask_max == doctest::Approx(1.0));
    CHECK(clamped.fidelity > 1.0 - 1e-4);

    // ... but visibly degrades a broadband one (width comparable to carrier)
    KGrid1 wide_grid = KGrid1::make_uniform(400, 0.5, 12.0);
    ModeCoefficients wide = build_hg_coefficients(0, 5.0, 1.0, wide_grid);
    CHECK(wide.narrowband_warning);
    ShaperReport bad = pulse_shaper_simulate(wide, ShaperConfig{5.0});
    CHECK(bad.mask_max == doctest::Approx(1.0));
    CHECK(bad.fidelity < 1.0 - 1e-3);
    CHECK(bad.fidelity > 0.9);

    ModeCoefficients broken = c0;
    broken.u = Eigen::VectorXcd::Ones(5);
    CHECK_THROWS_AS(pulse_shaper_simulate(broken), std::invalid_argument);
}

TEST_CASE("homodyne overlap equals the non-local and momentum products") {
    KGrid3 g{{8, 8, 8}, {1.2, 1.2, 1.2}};
    std::vector<WavePacketMode> raw;
    raw.push_back(hg_mode_3d(g, 0, 0, 3, 2.4, 1.0, 1.0, 1.0, Helicity::plus));
    raw.push_back(hg_mode_3d(g, 0, 0, 1, 2.4, 1.0, 1.0, 1.0, Helicity::plus));
    ModeBasis basis = orthonormalize(raw);

    // signal = mode0 + (0.6 + 0.3i) mode1
    VectorField sig_amp = basis[0].momentum_amplitude();
    VectorField part = basis[1].momentum_amplitude();
    part *= cplx(0.6, 0.3);
    sig_amp += part;

    const double t = 0.5;
    VectorField signal = synthesize_coordinate_field(sig_amp, Weight::plus_half, t);
    VectorField lo_dual = basis[1].dual(t);

    const cplx reading = homodyne_overlap(lo_dual, signal);
    const cplx viamom = momentum_scalar_product(basis[1].momentum_amplitude(), sig_amp);
    CHECK(std::abs(reading - viamom) < 1e-10 * std::abs(viamom));

    const cplx vianl = nonlocal_scalar_product(basis[1].field(t), signal);
    CHECK(std::abs(reading - vianl) < 1e-8 * std::abs(vianl));

    // the reading is the signal's coefficient on the LO mode
    CHECK(std::abs(reading - cplx(0.6, 0.3)) < 1e-9);
}

TEST_CASE("time-domain homodyne recovers a mode coefficient") {
    KGrid1 g = KGrid1::make_gauss_hermite(200, kBar, 1.0);
    ModeCoefficients m0 = build_hg_coefficients(0, kBar, 1.0, g);
    ModeCoefficients m1 = build_hg_coefficients(1, kBar, 1.0, g);

    // signal = 0.8 * mode1 + 0.35 * mode0 in spectral coefficients
    ModeCoefficients sig = m1;
    sig.u = 0.8 * m1.u + 0.35 * m0.u;

    const double window = 12.0;
    const int nt = 2001;
    Profile1D lo_dual = longitudinal_mode(m1, Weight::minus_half, window, nt);
    Profile1D signal = longitudinal_mode(sig, Weight::plus_half, window, nt);

    const cplx reading = homodyne_overlap_1d(lo_dual, signal);
    CHECK(std::abs(reading - cplx(0.8, 0.0)) < 1e-6);
}

TEST_CASE("the photon-number normalization constant is two in natural units") {
    CHECK(kNumberNormalizationConstant == 2.0);
}
