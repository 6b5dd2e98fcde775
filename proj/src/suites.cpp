#include "pwm/suites.hpp"

#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "pwm/coherence.hpp"
#include "pwm/converter.hpp"
#include "pwm/evolution.hpp"
#include "pwm/innerprod.hpp"
#include "pwm/transforms.hpp"
#include "pwm/wavepackets.hpp"

namespace pwm {

bool SuiteReport::all_pass() const {
    for (const auto& c : checks)
        if (!c.pass) return false;
    return true;
}

std::string SuiteReport::to_text() const {
    std::ostringstream os;
    for (const auto& c : checks)
        os << (c.pass ? "[PASS] " : "[FAIL] ") << suite << "." << c.name
           << "  value=" << format_g17(c.value)
           << (c.invert ? "  floor=" : "  tol=") << format_g17(c.tolerance) << "\n";
    os << "suite " << suite << ": " << (all_pass() ? "OK" : "FAIL") << "\n";
    return os.str();
}

std::string SuiteReport::to_json() const {
    nlohmann::ordered_json j;
    j["suite"] = suite;
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& c : checks) {
        nlohmann::ordered_json e;
        e["name"] = c.name;
        e["value"] = c.value;
        e["tolerance"] = c.tolerance;
        e["direction"] = c.invert ? "at_least" : "at_most";
        e["pass"] = c.pass;
        arr.push_back(std::move(e));
    }
    j["checks"] = std::move(arr);
    j["pass"] = all_pass();
    return j.dump(2) + "\n";
}

namespace {

Check bound(const std::string& name, double value, double tol) {
    return Check{name, value, tol, false, value <= tol};
}

Check at_least(const std::string& name, double value, double floor_value) {
    return Check{name, value, floor_value, true, value >= floor_value};
}

double rel_field_diff(const VectorField& a, const VectorField& b) {
    VectorField d = a;
    d -= b;
    const double base = std::sqrt(std::max(a.norm2(), b.norm2()));
    return base > 0.0 ? std::sqrt(d.norm2()) / base : 0.0;
}

double max_entry(const PairTensor& T) {
    double m = 0.0;
    for (int s1 = 0; s1 < 2; ++s1)
        for (int s2 = 0; s2 < 2; ++s2)
            for (const Mat3c& b : T.block[s1][s2])
                m = std::max(m, b.cwiseAbs().maxCoeff());
    return m;
}

} // namespace

VectorField random_transverse_field(const KGrid3& grid, double k0, double width,
                                    std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    VectorField f(grid, Space::momentum);
    for (int s = 0; s < 2; ++s) {
        const Helicity h = helicity_from_slot(s);
        auto& blk = f.block(h);
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const Vec3 k = grid.k_at(i);
            const double kn = k.norm();
            if (kn == 0.0) continue;
            const double env = std::exp(-0.5 * (kn - k0) * (kn - k0) / (width * width));
            const cplx c(env * gauss(rng), env * gauss(rng));
            blk.col(static_cast<Eigen::Index>(i)) = c * circular_polarization_vector(k, h);
        }
    }
    const double n2 = f.norm2();
    if (!(n2 > 0.0)) throw std::runtime_error("random field has zero norm");
    f *= cplx(1.0 / std::sqrt(n2), 0.0);
    return f;
}

ModeBasisPtr make_test_basis(const KGrid3& grid, double kbar_z, double width,
                             int count, Helicity sigma) {
    ModeBasis modes;
    for (int j = 0; j < count; ++j)
        modes.push_back(hg_mode_3d(grid, 0, 0, j, kbar_z, width, width, width, sigma));
    return std::make_shared<const ModeBasis>(orthonormalize(modes));
}

namespace {

// ---- kernels ------------------------------------------------------------

RegularizationSchedule schedule_for(double r, double tau) {
    const double s = std::min(r - std::abs(tau), r);
    return RegularizationSchedule{{0.2 * s, 0.1 * s, 0.05 * s}, 2};
}

SuiteReport suite_kernels(const RunConfig&) {
    SuiteReport rep{"kernels", {}};

    struct Case {
        Kernel k;
        const char* name;
        double r, tau;
    };
    const Case cases[] = {
        {Kernel::G, "G_r0p7", 0.7, 0.0},   {Kernel::G, "G_r1", 1.0, 0.0},
        {Kernel::G, "G_r1p8", 1.8, 0.0},   {Kernel::K, "K_r1", 1.0, 0.0},
        {Kernel::J, "J_r1_tau0p3", 1.0, 0.3}, {Kernel::J, "J_r2_tau1", 2.0, 1.0},
        {Kernel::J, "J_r1p5_tau1p2", 1.5, 1.2},
    };
    for (const Case& c : cases) {
        const double closed = kernel_eval(c.k, c.r, c.tau);
        const OracleResult o = kernel_numeric_oracle(c.k, c.r, c.tau, schedule_for(c.r, c.tau));
        rep.checks.push_back(
            bound(std::string("oracle_") + c.name, std::abs(o.value - closed) / std::abs(closed),
                  1e-3));
    }

    rep.checks.push_back(bound("K_equals_2G",
                               std::abs(kernel_eval(Kernel::K, 1.3) -
                                        2.0 * kernel_eval(Kernel::G, 1.3)) /
                                   kernel_eval(Kernel::K, 1.3),
                               1e-15));
    rep.checks.push_back(bound("J_tau0_equals_G",
                               std::abs(kernel_eval(Kernel::J, 1.3, 0.0) -
                                        kernel_eval(Kernel::G, 1.3)) /
                                   kernel_eval(Kernel::G, 1.3),
                               1e-15));

    // invariance under r^2 - tau^2 = const: (1.5, 1.2) <-> (0.9, 0)
    const double j_closed_a = kernel_eval(Kernel::J, 1.5, 1.2);
    const double j_closed_b = kernel_eval(Kernel::J, 0.9, 0.0);
    rep.checks.push_back(bound("J_invariance_closed",
                               std::abs(j_closed_a - j_closed_b) / std::abs(j_closed_a), 1e-12));
    const OracleResult oa = kernel_numeric_oracle(Kernel::J, 1.5, 1.2, schedule_for(1.5, 1.2));
    const OracleResult ob = kernel_numeric_oracle(Kernel::J, 0.9, 0.0, schedule_for(0.9, 0.0));
    rep.checks.push_back(
        bound("J_invariance_oracle", std::abs(oa.value - ob.value) / std::abs(j_closed_a), 2e-3));

    // reference-point overlap: magnitude matches, extrapolated sign is negative
    const double r = 1.1;
    const ReferenceOverlap ro =
        reference_state_overlap(r, RegularizationSchedule::default_for(r));
    const double expect = 1.0 / (kPi * kPi * r * r * r * r);
    rep.checks.push_back(
        bound("reference_overlap_magnitude", std::abs(ro.magnitude - expect) / expect, 1e-3));
    rep.checks.push_back(
        at_least("reference_overlap_sign_negative", ro.sign_is_negative ? 1.0 : 0.0, 1.0));
    return rep;
}

// ---- maxwell ------------------------------------------------------------

SuiteReport suite_maxwell(const RunConfig& cfg) {
    SuiteReport rep{"maxwell", {}};
    KGrid3 grid{{12, 12, 12}, {0.9, 0.9, 0.9}};
    const VectorField f = random_transverse_field(grid, 2.7, 1.0, cfg.seed);

    rep.checks.push_back(bound("transversality", transversality_deviation(f), 1e-12));
    rep.checks.push_back(
        bound("residual_plus", maxwell_residual(f, Helicity::plus).max(), 1e-10));
    rep.checks.push_back(
        bound("residual_minus", maxwell_residual(f, Helicity::minus).max(), 1e-10));
    rep.checks.push_back(
        bound("residual_fd",
              maxwell_residual(f, Helicity::plus, TimeDerivative::centered_difference, 1e-4).max(),
              1e-5));

    // control: same samples mislabeled with the opposite helicity
    {
        VectorField wrong(grid, Space::momentum);
        wrong.block(Helicity::minus) = f.block(Helicity::plus);
        rep.checks.push_back(
            at_least("mislabel_control", maxwell_residual(wrong, Helicity::minus).max(), 0.1));
    }

    // generator eigen-relation: sigma (s.k) a = |k| a on helicity states
    {
        const VectorField Hf = apply_hamiltonian(f);
        VectorField kf = f;
        for (int s = 0; s < 2; ++s) {
            const Helicity h = helicity_from_slot(s);
            auto& blk = kf.block(h);
            for (std::size_t i = 0; i < grid.size(); ++i)
                blk.col(static_cast<Eigen::Index>(i)) *= grid.knorm_at(i);
        }
        rep.checks.push_back(bound("generator_eigenrelation", rel_field_diff(Hf, kf), 1e-12));
    }

    const EnergyExpectation ee = energy_expectation(f);
    rep.checks.push_back(
        bound("energy_local_equals_momentum", ee.difference / ee.momentum_form, 1e-10));

    // energy-amplitude normalization: rescaled amplitudes carry the energy
    {
        const VectorField bb = to_bb_normalization(f, BBDirection::to_bb);
        rep.checks.push_back(bound(
            "bb_norm_is_energy", std::abs(bb.norm2() - ee.momentum_form) / ee.momentum_form,
            1e-12));
        const VectorField back = to_bb_normalization(bb, BBDirection::from_bb);
        rep.checks.push_back(bound("bb_roundtrip", rel_field_diff(back, f), 1e-13));
    }
    return rep;
}

// ---- biortho (quasi-1D packet modes) --------------------------------------

SuiteReport suite_biortho(const RunConfig& cfg) {
    SuiteReport rep{"biortho", {}};
    const double kbar = cfg.scales().kbar_natural();
    const double w = cfg.hg_width;
    const KGrid1 grid = KGrid1::make_gauss_hermite(200, kbar, w);

    std::vector<ModeCoefficients> modes;
    std::vector<Profile1D> fields, duals;
    for (int m = 0; m < 4; ++m) {
        modes.push_back(build_hg_coefficients(m, kbar, w, grid));
        fields.push_back(longitudinal_mode(modes.back(), Weight::plus_half, cfg.window,
                                           cfg.samples));
        duals.push_back(longitudinal_mode(modes.back(), Weight::minus_half, cfg.window,
                                          cfg.samples));
    }

    double dev = 0.0;
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
            const cplx p = profile_pairing(duals[a], fields[b]);
            dev = std::max(dev, std::abs(p - (a == b ? cplx(1.0, 0.0) : cplx(0.0, 0.0))));
        }
    rep.checks.push_back(bound("pairing_matrix_vs_identity", dev, 1e-6));

    const Eigen::MatrixXcd H = energy_matrix(modes);
    rep.checks.push_back(
        bound("energy_diag_carrier", std::abs(H(0, 0).real() - kbar) / kbar, 1e-10));
    const double h01_expect = 1.0 / (std::sqrt(2.0) * w);
    rep.checks.push_back(
        bound("energy_offdiag_01", std::abs(H(0, 1) - cplx(h01_expect, 0.0)) / h01_expect, 1e-8));

    // two-mode rotation: eigenvalues kbar -+ 1/(sqrt(2) w), rotated basis diagonal
    {
        std::vector<ModeCoefficients> pair = {modes[0], modes[1]};
        const EnergyEigenbasis eb = diagonalize_energy(pair);
        const double lo = kbar - h01_expect, hi = kbar + h01_expect;
        rep.checks.push_back(bound("eigenvalue_low", std::abs(eb.omega(0) - lo) / kbar, 1e-8));
        rep.checks.push_back(bound("eigenvalue_high", std::abs(eb.omega(1) - hi) / kbar, 1e-8));
        const Eigen::MatrixXcd Hrot = energy_matrix(eb.rotated);
        rep.checks.push_back(
            bound("rotated_offdiag", std::abs(Hrot(0, 1)) / kbar, 1e-9));
    }
    return rep;
}

// ---- twophoton ------------------------------------------------------------

Eigen::MatrixXcd random_symmetric(int d, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::MatrixXcd C(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) C(i, j) = cplx(gauss(rng), gauss(rng));
    return symmetrize_coefficients(C);
}

double exchange_symmetry_deviation(const PairTensor& T) {
    const std::size_t N = T.grid.size();
    double worst = 0.0;
    const double scale = std::max(max_entry(T), 1e-300);
    for (int s1 = 0; s1 < 2; ++s1)
        for (int s2 = 0; s2 < 2; ++s2) {
            const auto& a = T.block[s1][s2];
            const auto& b = T.block[s2][s1];
            if (a.empty() && b.empty()) continue;
            for (std::size_t p1 = 0; p1 < N; ++p1)
                for (std::size_t p2 = 0; p2 < N; ++p2) {
                    const Mat3c va = a.empty() ? Mat3c::Zero().eval() : a[p1 * N + p2];
                    const Mat3c vb = b.empty() ? Mat3c::Zero().eval() : b[p2 * N + p1];
                    worst = std::max(worst, (va - vb.transpose()).cwiseAbs().maxCoeff());
                }
        }
    return worst / scale;
}

SuiteReport suite_twophoton(const RunConfig& cfg) {
    SuiteReport rep{"twophoton", {}};
    KGrid3 grid{{6, 6, 6}, {1.0, 1.0, 1.0}};
    ModeBasisPtr basis = make_test_basis(grid, 1.5, 1.0, 2, Helicity::plus);
    const TwoPhotonState s = make_two_photon(basis, random_symmetric(2, cfg.seed));

    // equal-time tensor is exchange symmetric
    const PairTensor T = assemble_two_photon(s, 0.4);
    rep.checks.push_back(bound("exchange_symmetry", exchange_symmetry_deviation(T), 1e-12));

    // free-evolution residuals at distinct times
    const PairTensor T2 = two_time_evaluate(s, 0.2, 0.5);
    const PairEvolutionResidual r = two_photon_evolution_residual(T2);
    rep.checks.push_back(bound("evolution_residual_slot1", r.slot1, 1e-10));
    rep.checks.push_back(bound("evolution_residual_slot2", r.slot2, 1e-10));

    // propagate-then-evaluate equals evaluate-at-shifted-times
    {
        const TwoPhotonState sp = two_photon_propagate(s, 0.3);
        const PairTensor A = two_time_evaluate(sp, 0.2, 0.5);
        const PairTensor B = two_time_evaluate(s, 0.5, 0.8);
        rep.checks.push_back(
            bound("propagation_consistency", A.max_abs_diff(B) / std::max(max_entry(B), 1e-300),
                  1e-12));
    }

    // detection collapse commutes with propagation
    {
        const Vec3 R1 = grid.x_at(grid.flat(1, 2, 3)) * 0.37;
        const CollapseResult c1 = collapse_at_detection(two_photon_propagate(s, 0.25), R1, 0.1);
        const CollapseResult c2 = collapse_at_detection(s, R1, 0.35);
        rep.checks.push_back(bound("collapse_commutes_with_propagation",
                                   (c1.c - c2.c).norm() / std::max(c2.c.norm(), 1e-300), 1e-12));
    }

    // reduced density matrix sanity
    const ReducedDensityMatrix rho = reduced_density_matrix(s);
    rep.checks.push_back(bound("rho_trace", rho.trace_deviation, 1e-12));
    rep.checks.push_back(bound("rho_hermitian", rho.hermiticity_deviation, 1e-12));
    rep.checks.push_back(bound("rho_min_eigenvalue", -rho.min_eigenvalue, 1e-12));

    // occupation matrix traces to the photon number
    {
        const Eigen::MatrixXcd W = occupation_from_pair(s.C);
        rep.checks.push_back(bound("occupation_trace_two", std::abs(W.trace() - cplx(2.0, 0.0)),
                                   1e-12));
    }

    // joint energy correlator against the direct mode sum on an eigenbasis
    {
        auto eig = std::make_shared<const ModeBasis>(ModeBasis{
            monochromatic_rs_mode(grid, 0, 0, 1, Helicity::plus),
            monochromatic_rs_mode(grid, 0, 2, 0, Helicity::plus)});
        const TwoPhotonState se = make_two_photon(eig, random_symmetric(2, cfg.seed + 1));
        const double w0 = grid.knorm_at(grid.flat(0, 0, 1));
        const double w1 = grid.knorm_at(grid.flat(0, 2, 0));
        double direct = 0.0;
        const double ww[2] = {w0, w1};
        for (int j = 0; j < 2; ++j)
            for (int m = 0; m < 2; ++m) direct += std::norm(se.C(j, m)) * ww[j] * ww[m];
        const double lib = joint_energy_expectation(se);
        rep.checks.push_back(
            bound("joint_energy_eigenbasis", std::abs(lib - direct) / direct, 1e-12));
    }

    // detection amplitude with the full four-term combination reproduces the
    // helicity-resolved amplitude; single-term readout does not
    {
        const PairTensor full = detection_amplitude(s, 0.2, 0.5, false);
        rep.checks.push_back(bound("detection_full_matches_amplitude",
                                   full.max_abs_diff(T2) / std::max(max_entry(T2), 1e-300),
                                   1e-12));
        const PairTensor eonly = detection_amplitude(s, 0.2, 0.5, true);
        rep.checks.push_back(at_least("detection_e_only_differs",
                                      eonly.max_abs_diff(T2) / std::max(max_entry(T2), 1e-300),
                                      0.01));
    }

    // wrong-trace contrast: narrowband fades, broadband shows up
    {
        KGrid3 column{{1, 1, 8192}, {1.0, 1.0, 0.002}};
        ModeBasis nb = {hg_mode_3d(column, 0, 0, 0, 5.0, 400.0, 400.0, 400.0, Helicity::plus),
                        hg_mode_3d(column, 0, 0, 1, 5.0, 400.0, 400.0, 400.0, Helicity::plus)};
        auto nbp = std::make_shared<const ModeBasis>(orthonormalize(nb));
        const TwoPhotonState sn = make_two_photon(nbp, random_symmetric(2, cfg.seed + 2));
        const WrongTraceDemo dn = wrong_trace_demo(sn);
        rep.checks.push_back(bound("wrong_trace_narrowband_shape", dn.shape_difference, 1e-3));

        ModeBasis bb = {hg_mode_3d(column, 0, 0, 0, 2.0, 2.0, 2.0, 2.0, Helicity::plus),
                        hg_mode_3d(column, 0, 0, 0, 4.0, 2.0, 2.0, 2.0, Helicity::plus)};
        auto bbp = std::make_shared<const ModeBasis>(orthonormalize(bb));
        const TwoPhotonState sb = make_two_photon(bbp, random_symmetric(2, cfg.seed + 3));
        const WrongTraceDemo db = wrong_trace_demo(sb);
        rep.checks.push_back(
            at_least("wrong_trace_broadband_shape", db.shape_difference, 1e-2));
    }
    return rep;
}

// ---- wolf / coherence ------------------------------------------------------

SuiteReport suite_wolf(const RunConfig& cfg) {
    SuiteReport rep{"wolf", {}};
    KGrid3 grid{{6, 6, 6}, {1.0, 1.0, 1.0}};
    ModeBasisPtr basis = make_test_basis(grid, 1.5, 1.0, 2, Helicity::plus);
    const TwoPhotonState s = make_two_photon(basis, random_symmetric(2, cfg.seed));
    const Eigen::MatrixXcd W = occupation_from_pair(s.C);

    const double t1 = 0.15, t2 = 0.4;
    const CoherenceSet coh = coherence_from_occupation(*basis, W, t1, t2);

    const WolfResidual w1 = wolf_first_order_residual(coh);
    rep.checks.push_back(bound("first_order_max", w1.max(), 1e-8));
    const WolfResidual w2 = wolf_second_order_residual(coh);
    rep.checks.push_back(bound("second_order_max", w2.max(), 1e-8));

    // Hermiticity pairing against the swapped-time construction
    {
        const CoherenceSet swapped = coherence_from_occupation(*basis, W, t2, t1);
        const double scale = std::max(
            {max_entry(coh.E), max_entry(coh.H), max_entry(coh.M), max_entry(coh.N), 1e-300});
        rep.checks.push_back(bound(
            "hermiticity_pairing", coherence_hermiticity_deviation(coh, swapped) / scale, 1e-12));
    }

    // Riemann-Silberstein coherence: route equivalence and evolution law
    const RSCoherence rs = rs_coherence(*basis, W, t1, t2);
    rep.checks.push_back(bound("rs_route_equivalence",
                               rs.route_difference / std::max(max_entry(rs.gamma), 1e-300),
                               1e-12));
    const RSEvolutionResidual rsres = rs_evolution_residual(rs.gamma);
    rep.checks.push_back(bound("rs_evolution_slot1", rsres.slot1, 1e-10));
    rep.checks.push_back(bound("rs_evolution_slot2", rsres.slot2, 1e-10));

    rep.checks.push_back(bound(
        "rs_fd_slot1", rs_time_derivative_fd_deviation(*basis, W, t1, t2, PairSlot::one, 1e-4),
        1e-5));
    rep.checks.push_back(bound(
        "rs_fd_slot2", rs_time_derivative_fd_deviation(*basis, W, t1, t2, PairSlot::two, 1e-4),
        1e-5));

    // negative control: flipping the slot-1 label breaks the slot-1 law only
    {
        const PairTensor bad = rs_coherence_contraction(*basis, W, t1, t2, true);
        const RSEvolutionResidual br = rs_evolution_residual(bad);
        rep.checks.push_back(at_least("rs_flipped_label_control", br.slot1, 0.1));
        rep.checks.push_back(bound("rs_flipped_label_slot2_intact", br.slot2, 1e-10));
    }

    // single-photon occupation goes through the same machinery
    {
        std::mt19937_64 rng(cfg.seed + 7);
        std::normal_distribution<double> gauss(0.0, 1.0);
        Eigen::VectorXcd B(2);
        for (int i = 0; i < 2; ++i) B(i) = cplx(gauss(rng), gauss(rng));
        B /= B.norm();
        const CoherenceSet c1p = coherence_from_state(*basis, B, t1, t2);
        rep.checks.push_back(
            bound("first_order_single_photon", wolf_first_order_residual(c1p).max(), 1e-8));
    }
    return rep;
}

// ---- converter --------------------------------------------------------------

SuiteReport suite_converter(const RunConfig& cfg) {
    SuiteReport rep{"converter", {}};
    const double kbar = cfg.scales().kbar_natural();
    const double w = cfg.hg_width;
    const KGrid1 grid1 = KGrid1::make_gauss_hermite(200, kbar, w);

    for (int m = 0; m < 4; ++m) {
        const ModeCoefficients mode = build_hg_coefficients(m, kbar, w, grid1);
        const ShaperReport sr = pulse_shaper_simulate(mode);
        rep.checks.push_back(
            at_least("shaper_fidelity_hg" + std::to_string(m), sr.fidelity, 1.0 - 1e-6));
        rep.checks.push_back(
            bound("shaper_mask_bounded_hg" + std::to_string(m), sr.mask_max, 1.0 + 1e-12));
    }

    // 3D filter route: 1/k filtering of the amplitude reproduces the dual field
    KGrid3 grid{{8, 8, 8}, {1.2, 1.2, 1.2}};
    const WavePacketMode mode3 = hg_mode_3d(grid, 0, 0, 0, 2.4, 1.0, 1.0, 1.0, Helicity::plus);
    const double t = 0.3;
    const double k_floor = 2.4 / 10.0;
    {
        const VectorField filtered =
            spectral_filter_one_over_k(mode3.momentum_amplitude(), k_floor);
        const VectorField via_filter = synthesize_coordinate_field(filtered, Weight::plus_half, t);
        const VectorField direct = mode3.dual(t);
        rep.checks.push_back(bound("filter_route_equals_dual",
                                   rel_field_diff(via_filter, direct), 1e-12));
    }

    // filter twice then multiply by k^2 restores the amplitude
    {
        const VectorField a = mode3.momentum_amplitude();
        const VectorField twice = spectral_filter_one_over_k(
            spectral_filter_one_over_k(a, k_floor), k_floor);
        const VectorField back = spectral_multiply_k_squared(twice);
        rep.checks.push_back(bound("filter_twice_k2_identity", rel_field_diff(back, a), 1e-12));
    }

    // monochromatic fixed point: filtering scales the spike by 1/omega
    {
        const WavePacketMode plane = monochromatic_rs_mode(grid, 0, 0, 2, Helicity::plus);
        const double omega = grid.knorm_at(grid.flat(0, 0, 2));
        VectorField scaled = plane.momentum_amplitude();
        scaled *= cplx(1.0 / omega, 0.0);
        const VectorField filtered =
            spectral_filter_one_over_k(plane.momentum_amplitude(), k_floor);
        rep.checks.push_back(
            bound("monochromatic_dual_fixed_point", rel_field_diff(filtered, scaled), 1e-15));
    }

    // homodyne readout equals the non-local product
    {
        const WavePacketMode other = hg_mode_3d(grid, 0, 0, 1, 2.4, 1.0, 1.0, 1.0, Helicity::plus);
        VectorField amp = mode3.momentum_amplitude();
        {
            VectorField o = other.momentum_amplitude();
            o *= cplx(0.6, 0.3);
            amp += o;
        }
        const VectorField signal = synthesize_coordinate_field(amp, Weight::plus_half, t);
        const cplx via_homodyne = homodyne_overlap(mode3.dual(t), signal);
        const cplx via_nonlocal = nonlocal_scalar_product(mode3.field(t), signal);
        const cplx via_momentum = momentum_scalar_product(mode3.momentum_amplitude(), amp);
        rep.checks.push_back(bound("homodyne_equals_nonlocal",
                                   std::abs(via_homodyne - via_nonlocal) / std::abs(via_momentum),
                                   1e-8));
        rep.checks.push_back(bound("homodyne_equals_momentum_form",
                                   std::abs(via_homodyne - via_momentum) / std::abs(via_momentum),
                                   1e-10));
    }

    // 1D homodyne: dual local oscillator picks out its own packet coefficient
    {
        const ModeCoefficients m0 = build_hg_coefficients(0, kbar, w, grid1);
        const ModeCoefficients m1 = build_hg_coefficients(1, kbar, w, grid1);
        const Profile1D lo = longitudinal_mode(m0, Weight::minus_half, cfg.window, cfg.samples);
        ModeCoefficients mix = m0;
        mix.u = 0.8 * m0.u + cplx(0.0, 0.6) * m1.u;
        const Profile1D sig = longitudinal_mode(mix, Weight::plus_half, cfg.window, cfg.samples);
        const cplx got = homodyne_overlap_1d(lo, sig);
        rep.checks.push_back(bound("homodyne_1d_coefficient",
                                   std::abs(got - cplx(0.8, 0.0)), 1e-8));
    }
    return rep;
}

// ---- boost -------------------------------------------------------------------

SuiteReport suite_boost(const RunConfig& cfg) {
    SuiteReport rep{"boost", {}};
    (void)cfg;
    KGrid3 grid{{1, 1, 4096}, {1.0, 1.0, 0.003}};
    const double mu = 3.5, sigma_k = 0.5, eta = 0.2;

    VectorField f(grid, Space::momentum);
    auto& blk = f.block(Helicity::plus);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const Vec3 k = grid.k_at(i);
        if (k.norm() == 0.0) continue;
        const double amp = std::exp(-0.5 * std::pow((k.z() - mu) / sigma_k, 2.0));
        blk.col(static_cast<Eigen::Index>(i)) =
            amp * circular_polarization_vector(k, Helicity::plus);
    }
    f *= cplx(1.0 / std::sqrt(f.norm2()), 0.0);

    auto center = [&](const VectorField& v) {
        double num = 0.0, den = 0.0;
        const auto& b = v.block(Helicity::plus);
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const double n2 = b.col(static_cast<Eigen::Index>(i)).squaredNorm();
            num += grid.k_at(i).z() * n2;
            den += n2;
        }
        return num / den;
    };

    const VectorField boosted = lorentz_boost_z(f, eta);
    rep.checks.push_back(
        bound("norm_conserved", std::abs(boosted.norm2() - f.norm2()) / f.norm2(), 1e-6));
    const double expect_center = std::exp(-eta) * center(f);
    rep.checks.push_back(bound("doppler_center",
                               std::abs(center(boosted) - expect_center) /
                                   std::abs(expect_center),
                               1e-6));
    rep.checks.push_back(bound("transversality_after_boost",
                               transversality_deviation(boosted), 1e-12));
    rep.checks.push_back(at_least("helicity_preserved",
                                  boosted.has(Helicity::minus) ? 0.0 : 1.0, 1.0));

    const VectorField back = lorentz_boost_z(boosted, -eta);
    rep.checks.push_back(bound("roundtrip", rel_field_diff(back, f), 1e-5));
    return rep;
}

} // namespace

std::vector<std::string> suite_names() {
    return {"kernels", "maxwell", "biortho", "twophoton", "wolf", "converter", "boost", "all"};
}

SuiteReport run_suite(const std::string& name, const RunConfig& cfg) {
    if (name == "kernels") return suite_kernels(cfg);
    if (name == "maxwell") return suite_maxwell(cfg);
    if (name == "biortho") return suite_biortho(cfg);
    if (name == "twophoton") return suite_twophoton(cfg);
    if (name == "wolf") return suite_wolf(cfg);
    if (name == "converter") return suite_converter(cfg);
    if (name == "boost") return suite_boost(cfg);
    if (name == "all") {
        SuiteReport all{"all", {}};
        for (const std::string& n : suite_names()) {
            if (n == "all") continue;
            SuiteReport r = run_suite(n, cfg);
            for (auto& c : r.checks) {
                c.name = n + "/" + c.name;
                all.checks.push_back(std::move(c));
            }
        }
        return all;
    }
    throw std::invalid_argument("unknown suite: " + name);
}

} // namespace pwm
