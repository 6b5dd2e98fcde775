#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "pwm/fft.hpp"
#include "pwm/field.hpp"
#include "pwm/grids.hpp"
#include "pwm/spin.hpp"
#include "pwm/suites.hpp"

#include "oracles.hpp"

using namespace pwm;

TEST_CASE("3D grid indexing round-trips and exposes signed frequencies") {
    KGrid3 g{{4, 6, 8}, {0.7, 0.9, 1.1}};
    CHECK(g.size() == 192);

    for (std::size_t f : {std::size_t(0), std::size_t(17), std::size_t(101), std::size_t(191)}) {
        auto idx = g.unflat(f);
        CHECK(g.flat(idx[0], idx[1], idx[2]) == f);
    }

    // frequency convention: 0..n/2-1 then -n/2..-1
    CHECK(g.freq(0, 0) == 0);
    CHECK(g.freq(1, 0) == 1);
    CHECK(g.freq(2, 0) == -2);
    CHECK(g.freq(3, 0) == -1);
    CHECK(g.freq(2, 1) == 2);

    Vec3 k = g.k_at(g.flat(1, 2, 3));
    CHECK(k.x() == doctest::Approx(0.7).epsilon(1e-15));
    CHECK(k.y() == doctest::Approx(1.8).epsilon(1e-15));
    CHECK(k.z() == doctest::Approx(3.3).epsilon(1e-15));
    CHECK(g.knorm_at(g.flat(1, 2, 3)) == doctest::Approx(k.norm()).epsilon(1e-15));

    Vec3 x = g.x_at(g.flat(0, 1, 7));
    CHECK(x.x() == doctest::Approx(0.0));
    CHECK(x.y() == doctest::Approx(g.dx(1)).epsilon(1e-15));
    CHECK(x.z() == doctest::Approx(-g.dx(2)).epsilon(1e-15));

    // N * mu_x * mu_k = 1 (grid-exact Parseval normalization)
    CHECK(double(g.size()) * g.measure_x() * g.measure_k() == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("3D frequency convention matches the stated layout") {
    KGrid3 g{{4, 6, 8}, {0.7, 0.9, 1.1}};
    // axis 1 has n=6: indices 0,1,2 map to 0,1,2 and 3,4,5 map to -3,-2,-1
    CHECK(g.freq(3, 1) == -3);
    CHECK(g.freq(4, 1) == -2);
    CHECK(g.freq(5, 1) == -1);
}

TEST_CASE("uniform 1D grid integrates with trapezoid weights against dk/(2 pi)") {
    KGrid1 g = KGrid1::make_uniform(101, 1.0, 3.0);
    REQUIRE(g.nodes.size() == 101);
    CHECK(g.nodes.front() == doctest::Approx(1.0));
    CHECK(g.nodes.back() == doctest::Approx(3.0));

    double total = 0.0, first = 0.0;
    for (int i = 0; i < g.n; ++i) {
        total += g.weights[i];
        first += g.weights[i] * g.nodes[i];
    }
    CHECK(total == doctest::Approx(2.0 / (2.0 * kPi)).epsilon(1e-14));
    CHECK(first == doctest::Approx(4.0 / (2.0 * kPi)).epsilon(1e-14));  // int_1^3 k dk = 4

    CHECK_THROWS_AS(KGrid1::make_uniform(1, 1.0, 3.0), std::invalid_argument);
    CHECK_THROWS_AS(KGrid1::make_uniform(10, 0.0, 3.0), std::invalid_argument);
    CHECK_THROWS_AS(KGrid1::make_uniform(10, 2.0, 1.0), std::invalid_argument);
}

TEST_CASE("Gauss-Hermite 1D grid integrates Gaussian mode products exactly") {
    const double kbar = 10.0, w = 1.3;
    KGrid1 g = KGrid1::make_gauss_hermite(40, kbar, w);
    REQUIRE(g.nodes.size() == 40);
    CHECK(g.k_min > 0.0);

    // norm of the ground mode: int dk/(2pi) psi_0(k-kbar)^2 = 1
    double norm = 0.0, mean = 0.0, cross = 0.0;
    for (int i = 0; i < g.n; ++i) {
        const double p0 = oracle::hg_amplitude_explicit(0, w, g.nodes[i] - kbar);
        const double p1 = oracle::hg_amplitude_explicit(1, w, g.nodes[i] - kbar);
        norm += g.weights[i] * p0 * p0;
        mean += g.weights[i] * p0 * g.nodes[i] * p0;
        cross += g.weights[i] * p0 * p1;
    }
    CHECK(norm == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(mean == doctest::Approx(kbar).epsilon(1e-12));
    CHECK(std::abs(cross) < 1e-12);

    // continuum cross-check of the same moment via an independent quadrature
    CHECK(mean == doctest::Approx(oracle::hg_moment(0, 0, kbar, w, 1)).epsilon(1e-10));

    // nodes reaching k <= 0 must be rejected
    CHECK_THROWS_AS(KGrid1::make_gauss_hermite(40, 1.0, 1.0), std::invalid_argument);
}

TEST_CASE("spin matrices satisfy the so(3) algebra and act as i p x") {
    SpinTriple s = build_spin_matrices();

    auto comm = [](const Mat3c& a, const Mat3c& b) { return a * b - b * a; };
    const cplx iu(0.0, 1.0);
    CHECK((comm(s.sx, s.sy) - iu * s.sz).norm() < 1e-15);
    CHECK((comm(s.sy, s.sz) - iu * s.sx).norm() < 1e-15);
    CHECK((comm(s.sz, s.sx) - iu * s.sy).norm() < 1e-15);

    std::mt19937_64 rng(42);
    std::normal_distribution<double> nd(0.0, 1.0);
    for (int trial = 0; trial < 5; ++trial) {
        Vec3 p(nd(rng), nd(rng), nd(rng));
        Vec3c f(cplx(nd(rng), nd(rng)), cplx(nd(rng), nd(rng)), cplx(nd(rng), nd(rng)));
        Vec3c lhs = spin_dot(s, p) * f;
        // componentwise p x f (Eigen's cross() conjugates complex results)
        Vec3c pxf(p.y() * f.z() - p.z() * f.y(), p.z() * f.x() - p.x() * f.z(),
                  p.x() * f.y() - p.y() * f.x());
        Vec3c rhs = iu * pxf;
        CHECK((lhs - rhs).norm() < 1e-14 * (1.0 + rhs.norm()));
    }
}

TEST_CASE("circular polarization vectors are unit transverse helicity eigenstates") {
    const std::vector<Vec3> ks = {
        {0.3, -1.2, 0.7}, {0.0, 0.0, 2.0}, {0.0, 0.0, -2.0}, {1e-7, 0.0, 3.0}, {-4.0, 0.1, 0.0}};
    for (const Vec3& k : ks) {
        for (Helicity h : {Helicity::plus, Helicity::minus}) {
            const Vec3c e = circular_polarization_vector(k, h);
            CHECK(std::abs(e.norm() - 1.0) < 1e-12);
            CHECK(std::abs(k.cast<cplx>().dot(e)) < 1e-12 * k.norm());

            // k x e = -i sigma |k| e (componentwise cross; Eigen's conjugates)
            Vec3c kxe(k.y() * e.z() - k.z() * e.y(), k.z() * e.x() - k.x() * e.z(),
                      k.x() * e.y() - k.y() * e.x());
            Vec3c target = cplx(0.0, -double(sign(h))) * k.norm() * e;
            CHECK((kxe - target).norm() < 1e-12 * k.norm());

            // helicity operator eigenrelation
            Vec3c he = helicity_operator_apply(k, e);
            CHECK((he - double(sign(h)) * e).norm() < 1e-12);
        }
        // opposite helicities are pointwise orthogonal
        const Vec3c ep = circular_polarization_vector(k, Helicity::plus);
        const Vec3c em = circular_polarization_vector(k, Helicity::minus);
        CHECK(std::abs(ep.dot(em)) < 1e-12);
    }
    CHECK(circular_polarization_vector(Vec3::Zero(), Helicity::plus).norm() == 0.0);
    CHECK(helicity_operator_apply(Vec3::Zero(), Vec3c(1.0, 0.0, 0.0)).norm() == 0.0);
}

TEST_CASE("vector field blocks, norms and arithmetic") {
    KGrid3 g{{4, 4, 4}, {1.0, 1.0, 1.0}};
    VectorField f(g, Space::momentum);
    CHECK(!f.has(Helicity::plus));
    CHECK(f.value(Helicity::plus, 3).norm() == 0.0);
    CHECK(f.value_total(3).norm() == 0.0);

    const VectorField& cf = f;
    CHECK_THROWS_AS(cf.block(Helicity::plus), std::out_of_range);

    f.block(Helicity::plus).col(5) = Vec3c(1.0, 2.0, cplx(0.0, 2.0));
    CHECK(f.has(Helicity::plus));
    CHECK(f.norm2() == doctest::Approx(9.0 * g.measure_k()).epsilon(1e-14));

    VectorField h(g, Space::momentum);
    h.block(Helicity::minus).col(5) = Vec3c(0.0, 1.0, 0.0);
    f += h;
    CHECK(f.value_total(5).isApprox(Vec3c(1.0, 3.0, cplx(0.0, 2.0)), 1e-15));
    f -= h;
    CHECK(f.value(Helicity::minus, 5).norm() < 1e-15);

    f *= cplx(0.0, 2.0);
    CHECK(f.value(Helicity::plus, 5)(0) == cplx(0.0, 2.0));

    VectorField other(KGrid3{{4, 4, 8}, {1.0, 1.0, 1.0}}, Space::momentum);
    CHECK_THROWS_AS(f += other, std::invalid_argument);
    VectorField coord(g, Space::coordinate);
    CHECK_THROWS_AS(f.require_same_layout(coord), std::invalid_argument);

    // coordinate-space norm uses the coordinate measure
    coord.block(Helicity::plus).col(0) = Vec3c(1.0, 0.0, 0.0);
    CHECK(coord.norm2() == doctest::Approx(g.measure_x()).epsilon(1e-14));
}

TEST_CASE("transversality diagnostics and transverse/longitudinal split") {
    KGrid3 g{{6, 6, 6}, {0.8, 0.8, 0.8}};
    VectorField f = random_transverse_field(g, 1.6, 0.9, 2024);
    CHECK(transversality_deviation(f) < 1e-13);

    auto [t, l] = transverse_longitudinal_split(f);
    double lnorm = std::sqrt(l.norm2());
    CHECK(lnorm < 1e-13);

    // inject a radial (longitudinal) spike and confirm it is detected and split off
    VectorField fl = f;
    const std::size_t p = g.flat(1, 2, 3);
    const Vec3 khat = g.k_at(p).normalized();
    fl.block(Helicity::plus).col(p) += 0.5 * khat.cast<cplx>();
    CHECK(transversality_deviation(fl) > 0.1);

    auto [t2, l2] = transverse_longitudinal_split(fl);
    CHECK(transversality_deviation(t2) < 1e-12);
    VectorField rec = t2;
    rec += l2;
    rec -= fl;
    CHECK(std::sqrt(rec.norm2()) < 1e-13 * std::sqrt(fl.norm2()));

    // longitudinal part of the spiked field carries exactly the spike
    CHECK((l2.value(Helicity::plus, p) - 0.5 * khat.cast<cplx>()).norm() < 1e-13);

    // content at k = 0 goes to the longitudinal output
    VectorField fz(g, Space::momentum);
    fz.block(Helicity::plus).col(0) = Vec3c(1.0, 0.0, 0.0);
    auto [tz, lz] = transverse_longitudinal_split(fz);
    CHECK(tz.value(Helicity::plus, 0).norm() == 0.0);
    CHECK((lz.value(Helicity::plus, 0) - Vec3c(1.0, 0.0, 0.0)).norm() == 0.0);
}

TEST_CASE("helicity_apply reproduces the helicity eigenvalue on polarization data") {
    KGrid3 g{{6, 6, 6}, {0.8, 0.8, 0.8}};
    VectorField f = random_transverse_field(g, 1.6, 0.9, 7);
    VectorField hf = helicity_apply(f);
    // eigenvalue is +1 on the plus block, -1 on the minus block
    for (Helicity h : {Helicity::plus, Helicity::minus}) {
        double dev = 0.0;
        for (std::size_t i = 0; i < g.size(); ++i)
            dev = std::max(dev, (hf.value(h, i) - double(sign(h)) * f.value(h, i)).norm());
        CHECK(dev < 1e-12);
    }
}

TEST_CASE("3D DFT matches the plane-wave convention and round-trips") {
    KGrid3 g{{4, 4, 4}, {0.9, 0.9, 0.9}};
    const std::size_t N = g.size();

    // samples of e^{i k0 . x} analyze to a single spike N at k0
    const std::size_t target = g.flat(1, 3, 2);
    const Vec3 k0 = g.k_at(target);
    std::vector<cplx> data(N);
    for (std::size_t i = 0; i < N; ++i)
        data[i] = std::exp(cplx(0.0, k0.dot(g.x_at(i))));
    dft3(data.data(), g.n[0], g.n[1], g.n[2], -1);
    for (std::size_t i = 0; i < N; ++i) {
        if (i == target)
            CHECK(std::abs(data[i] - cplx(double(N), 0.0)) < 1e-10);
        else
            CHECK(std::abs(data[i]) < 1e-10);
    }

    // round trip: forward then inverse equals N * identity
    std::mt19937_64 rng(11);
    std::normal_distribution<double> nd(0.0, 1.0);
    std::vector<cplx> orig(N);
    for (auto& v : orig) v = cplx(nd(rng), nd(rng));
    std::vector<cplx> buf = orig;
    dft3(buf.data(), g.n[0], g.n[1], g.n[2], -1);
    dft3(buf.data(), g.n[0], g.n[1], g.n[2], +1);
    double dev = 0.0;
    for (std::size_t i = 0; i < N; ++i)
        dev = std::max(dev, std::abs(buf[i] / double(N) - orig[i]));
    CHECK(dev < 1e-12);

    // 1D helper round trip
    std::vector<cplx> line(16);
    for (auto& v : line) v = cplx(nd(rng), nd(rng));
    std::vector<cplx> lbuf = line;
    dft1(lbuf.data(), 16, -1);
    dft1(lbuf.data(), 16, +1);
    for (std::size_t i = 0; i < line.size(); ++i)
        CHECK(std::abs(lbuf[i] / 16.0 - line[i]) < 1e-13);
}

TEST_CASE("deterministic random fields are reproducible and normalized") {
    KGrid3 g{{6, 6, 6}, {0.8, 0.8, 0.8}};
    VectorField a = random_transverse_field(g, 1.6, 0.9, 123);
    VectorField b = random_transverse_field(g, 1.6, 0.9, 123);
    VectorField c = random_transverse_field(g, 1.6, 0.9, 124);
    VectorField d = a;
    d -= b;
    CHECK(std::sqrt(d.norm2()) == 0.0);
    VectorField e = a;
    e -= c;
    CHECK(std::sqrt(e.norm2()) > 1e-2);
    CHECK(std::sqrt(a.norm2()) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(a.value(Helicity::plus, 0).norm() == 0.0);  // no k = 0 content
}
