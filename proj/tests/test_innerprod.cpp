#include <doctest.h>

#include <cmath>
#include <complex>
#include <stdexcept>

#include "pwm/innerprod.hpp"
#include "pwm/suites.hpp"
#include "pwm/transforms.hpp"

using namespace pwm;

TEST_CASE("closed-form kernels: frozen values and algebraic identities") {
    // 1 / (2 pi^2 r^2) at r = 1
    CHECK(kernel_eval(Kernel::G, 1.0) == doctest::Approx(0.050660591821168886).epsilon(1e-14));
    CHECK(kernel_eval(Kernel::K, 1.0) == doctest::Approx(0.10132118364233777).epsilon(1e-14));
    // 1 / (2 pi^2 (r^2 - tau^2)) at r = 2, tau = 1
    CHECK(kernel_eval(Kernel::J, 2.0, 1.0) ==
          doctest::Approx(0.016886863940389629).epsilon(1e-14));

    // K = 2 G pointwise
    for (double r : {0.4, 0.77, 1.9})
        CHECK(kernel_eval(Kernel::K, r) == doctest::Approx(2.0 * kernel_eval(Kernel::G, r)));

    // equal-time two-time kernel reduces to the static one
    CHECK(kernel_eval(Kernel::J, 1.3, 0.0) == doctest::Approx(kernel_eval(Kernel::G, 1.3)));

    // interval invariance: J depends only on r^2 - tau^2
    const double s2 = 1.5 * 1.5 - 1.2 * 1.2;
    CHECK(kernel_eval(Kernel::J, 1.5, 1.2) ==
          doctest::Approx(kernel_eval(Kernel::G, std::sqrt(s2))).epsilon(1e-13));

    CHECK_THROWS_AS(kernel_eval(Kernel::G, 0.0), std::domain_error);
    CHECK_THROWS_AS(kernel_eval(Kernel::G, -1.0), std::domain_error);
    CHECK_THROWS_AS(kernel_eval(Kernel::J, 1.0, 1.0), std::domain_error);       // light cone
    CHECK_THROWS_AS(kernel_eval(Kernel::J, 1.0, -1.0 + 1e-15), std::domain_error);
}

TEST_CASE("the regularized oscillatory oracle reproduces the closed forms") {
    for (double r : {0.7, 1.0, 1.8}) {
        OracleResult res = kernel_numeric_oracle(Kernel::G, r, 0.0,
                                                 RegularizationSchedule::default_for(r));
        const double closed = kernel_eval(Kernel::G, r);
        CHECK(std::abs(res.value - closed) / closed < 1e-3);
        CHECK(res.error_estimate < 0.05 * closed);
    }

    OracleResult resk =
        kernel_numeric_oracle(Kernel::K, 1.0, 0.0, RegularizationSchedule::default_for(1.0));
    CHECK(std::abs(resk.value - kernel_eval(Kernel::K, 1.0)) / kernel_eval(Kernel::K, 1.0) < 1e-3);

    // two-time case: schedule scaled to the distance from the light cone
    auto sched_for = [](double r, double tau) {
        const double s = std::min(r - std::abs(tau), r);
        return RegularizationSchedule{{0.2 * s, 0.1 * s, 0.05 * s}, 2};
    };
    for (auto [r, tau] : {std::pair{2.0, 1.0}, std::pair{1.5, 1.2}, std::pair{1.0, 0.3}}) {
        OracleResult res = kernel_numeric_oracle(Kernel::J, r, tau, sched_for(r, tau));
        const double closed = kernel_eval(Kernel::J, r, tau);
        CHECK(std::abs(res.value - closed) / std::abs(closed) < 1e-3);
    }

    CHECK_THROWS_AS(
        kernel_numeric_oracle(Kernel::G, -1.0, 0.0, RegularizationSchedule::default_for(1.0)),
        std::domain_error);
}

TEST_CASE("regularization schedules validate their shape") {
    CHECK_THROWS_AS((RegularizationSchedule{{0.2, 0.1}, 2}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((RegularizationSchedule{{0.1, 0.2, 0.3}, 2}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((RegularizationSchedule{{0.2, 0.1, 0.0}, 2}.validate()), std::invalid_argument);
    CHECK_NOTHROW(RegularizationSchedule::default_for(1.7).validate());
    RegularizationSchedule d = RegularizationSchedule::default_for(2.0);
    CHECK(d.epsilons.size() == 3);
    CHECK(d.epsilons[0] == doctest::Approx(0.4));
    CHECK(d.epsilons[2] == doctest::Approx(0.1));
}

TEST_CASE("overlap of a state with the reference point state is negative") {
    const double r = 1.1;
    ReferenceOverlap ov = reference_state_overlap(r, RegularizationSchedule::default_for(r));
    const double expect = 1.0 / (kPi * kPi * r * r * r * r);
    CHECK(std::abs(ov.magnitude - expect) / expect < 1e-3);
    CHECK(ov.sign_is_negative);
    CHECK(!ov.note.empty());
}

TEST_CASE("plain overlap of dual pairs equals the momentum product (homodyne identity)") {
    KGrid3 g{{8, 8, 8}, {1.1, 1.1, 1.1}};
    VectorField a = random_transverse_field(g, 2.6, 1.2, 3);
    VectorField b = random_transverse_field(g, 2.6, 1.2, 4);
    const double t = 0.45;

    const cplx pk = momentum_scalar_product(a, b);

    // plain transform pair is unitary
    VectorField fa0 = synthesize_coordinate_field(a, Weight::zero, t);
    VectorField fb0 = synthesize_coordinate_field(b, Weight::zero, t);
    CHECK(std::abs(overlap_integral(fa0, fb0) - pk) < 1e-12 * std::abs(pk));

    // dual (-1/2) against weighted (+1/2) reproduces the same number
    VectorField fam = synthesize_coordinate_field(a, Weight::minus_half, t);
    VectorField fbp = synthesize_coordinate_field(b, Weight::plus_half, t);
    CHECK(std::abs(overlap_integral(fam, fbp) - pk) < 1e-12 * std::abs(pk));

    CHECK_THROWS_AS(momentum_scalar_product(fa0, fb0), std::invalid_argument);
}

TEST_CASE("non-local product of weighted fields equals the momentum product") {
    KGrid3 g{{8, 8, 8}, {1.1, 1.1, 1.1}};
    VectorField a = random_transverse_field(g, 2.6, 1.2, 13);
    VectorField b = random_transverse_field(g, 2.6, 1.2, 14);

    const cplx pk = momentum_scalar_product(a, b);
    for (double t : {0.0, 0.8}) {
        VectorField fa = synthesize_coordinate_field(a, Weight::plus_half, t);
        VectorField fb = synthesize_coordinate_field(b, Weight::plus_half, t);
        const cplx nl = nonlocal_scalar_product(fa, fb);
        CHECK(std::abs(nl - pk) < 1e-10 * std::abs(pk));
    }

    CHECK_THROWS_AS(nonlocal_scalar_product(a, b), std::invalid_argument);
}

TEST_CASE("direct double-sum oracle agrees with the spectral route") {
    KGrid3 g{{6, 6, 6}, {1.0, 1.0, 1.0}};
    VectorField a = random_transverse_field(g, 2.0, 1.0, 21);
    VectorField b = random_transverse_field(g, 2.0, 1.0, 22);
    VectorField fa = synthesize_coordinate_field(a, Weight::plus_half, 0.3);
    VectorField fb = synthesize_coordinate_field(b, Weight::plus_half, 0.3);

    const cplx direct = nonlocal_direct_double_sum(fa, fb);
    const cplx spectral = nonlocal_scalar_product(fa, fb);
    CHECK(std::abs(direct - spectral) < 1e-10 * std::abs(spectral));

    KGrid3 big{{13, 4, 4}, {1.0, 1.0, 1.0}};
    VectorField cbig(big, Space::coordinate);
    cbig.block(Helicity::plus).setZero(3, big.size());
    CHECK_THROWS_AS(nonlocal_direct_double_sum(cbig, cbig), std::invalid_argument);
}

TEST_CASE("infrared content is rejected by the non-local product") {
    KGrid3 g{{6, 6, 6}, {1.0, 1.0, 1.0}};
    // a constant coordinate field analyzes to a pure k = 0 spike
    VectorField c(g, Space::coordinate);
    auto& blk = c.block(Helicity::plus);
    for (std::size_t i = 0; i < g.size(); ++i) blk.col(i) = Vec3c(1.0, 0.0, 0.0);
    CHECK_THROWS_AS(nonlocal_scalar_product(c, c), std::domain_error);
}
