// Command-line front end: reproduces the reference pulse figures, runs the
// numerical check suites, and exercises the conversion / two-photon
// machinery with deterministic, hash-stamped outputs.
//
// Exit codes: 0 success, 1 numerical check failed, 2 usage or configuration
// error.

#include <filesystem>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "pwm/coherence.hpp"
#include "pwm/converter.hpp"
#include "pwm/serialize.hpp"
#include "pwm/suites.hpp"

namespace fs = std::filesystem;

namespace {

pwm::RunConfig config_from(const std::string& path) {
    if (path.empty()) {
        pwm::RunConfig cfg;
        cfg.validate();
        return cfg;
    }
    return pwm::load_config(path);
}

std::string out_path(const std::string& dir, const std::string& name) {
    fs::create_directories(dir);
    return (fs::path(dir) / name).string();
}

Eigen::MatrixXcd random_symmetric(int d, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::MatrixXcd C(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) C(i, j) = pwm::cplx(gauss(rng), gauss(rng));
    return pwm::symmetrize_coefficients(C);
}

std::string grid_label(int n) {
    return std::to_string(n) + "x" + std::to_string(n) + "x" + std::to_string(n);
}

// Shared deterministic two-photon test state on an n^3 grid.
pwm::TwoPhotonState test_state(const pwm::RunConfig& cfg, int n, int d) {
    pwm::KGrid3 grid{{n, n, n}, {1.0, 1.0, 1.0}};
    pwm::ModeBasisPtr basis = pwm::make_test_basis(grid, 1.5, 1.0, d, pwm::Helicity::plus);
    return pwm::make_two_photon(basis, random_symmetric(d, cfg.seed));
}

int cmd_figure(const pwm::RunConfig& cfg, int mode_index, const std::string& out,
               double tol) {
    if (mode_index >= cfg.mode_count)
        throw std::invalid_argument("--mode must be below mode_count");
    const double kbar = cfg.scales().kbar_natural();
    const double w = cfg.hg_width;
    const double k_lo = std::max(kbar - 25.0 / w, 0.02 * kbar);
    const pwm::KGrid1 grid =
        pwm::KGrid1::make_uniform(cfg.grid_points, k_lo, kbar + 25.0 / w);
    const pwm::UnitsPolicy units = cfg.scales().units();

    std::vector<pwm::ModeCoefficients> modes;
    std::vector<pwm::Profile1D> fields, duals;
    for (int m = 0; m < cfg.mode_count; ++m) {
        modes.push_back(pwm::build_hg_coefficients(m, kbar, w, grid));
        fields.push_back(pwm::longitudinal_mode(modes.back(), pwm::Weight::plus_half,
                                                cfg.window, cfg.samples));
        duals.push_back(pwm::longitudinal_mode(modes.back(), pwm::Weight::minus_half,
                                               cfg.window, cfg.samples));
    }

    Eigen::MatrixXcd P(cfg.mode_count, cfg.mode_count);
    double dev = 0.0;
    for (int a = 0; a < cfg.mode_count; ++a)
        for (int b = 0; b < cfg.mode_count; ++b) {
            P(a, b) = pwm::profile_pairing(duals[a], fields[b]);
            dev = std::max(dev,
                           std::abs(P(a, b) - (a == b ? pwm::cplx(1.0, 0.0)
                                                      : pwm::cplx(0.0, 0.0))));
        }

    const std::string tag = std::to_string(mode_index);
    pwm::write_text_file(out_path(out, "profile_mode" + tag + "_field.csv"),
                         pwm::profile_csv(fields[mode_index], units, cfg.hash()));
    pwm::write_text_file(out_path(out, "profile_mode" + tag + "_dual.csv"),
                         pwm::profile_csv(duals[mode_index], units, cfg.hash()));
    pwm::write_text_file(out_path(out, "mode_catalog.json"),
                         pwm::mode_catalog_json(modes, cfg));

    nlohmann::ordered_json j;
    j["report"] = "dual_pairing_matrix";
    j["config_hash"] = cfg.hash();
    j["selected_mode"] = mode_index;
    j["grid"] = {{"rule", "uniform"},
                 {"points", cfg.grid_points},
                 {"k_min", grid.k_min},
                 {"k_max", grid.k_max}};
    j["max_identity_deviation"] = dev;
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (int a = 0; a < cfg.mode_count; ++a) {
        nlohmann::ordered_json row = nlohmann::ordered_json::array();
        for (int b = 0; b < cfg.mode_count; ++b) {
            row.push_back(P(a, b).real());
            row.push_back(P(a, b).imag());
        }
        rows.push_back(std::move(row));
    }
    j["pairing"] = std::move(rows);
    pwm::write_text_file(out_path(out, "pairing_matrix.json"), j.dump(2) + "\n");

    std::cout << "wrote profiles, catalog and pairing matrix to " << out << "\n"
              << "pairing deviation from identity: " << pwm::format_g17(dev)
              << "  (tol " << pwm::format_g17(tol) << ")\n"
              << (dev <= tol ? "[PASS]" : "[FAIL]") << " dual pairing matrix\n";
    return dev <= tol ? 0 : 1;
}

int cmd_suite(const pwm::RunConfig& cfg, const std::string& name, const std::string& out) {
    const pwm::SuiteReport rep = pwm::run_suite(name, cfg);
    std::cout << rep.to_text();
    if (!out.empty()) {
        pwm::write_text_file(out_path(out, name + "_report.txt"), rep.to_text());
        pwm::write_text_file(out_path(out, name + "_report.json"), rep.to_json());
        std::cout << "wrote " << name << "_report.{txt,json} to " << out << "\n";
    }
    return rep.all_pass() ? 0 : 1;
}

int cmd_convert(const pwm::RunConfig& cfg, int mode_index, double k_floor,
                const std::string& out, double tol) {
    const double kbar = cfg.scales().kbar_natural();
    const pwm::KGrid1 grid = pwm::KGrid1::make_gauss_hermite(200, kbar, cfg.hg_width);
    const pwm::ModeCoefficients mode =
        pwm::build_hg_coefficients(mode_index, kbar, cfg.hg_width, grid);
    pwm::ShaperConfig sc;
    sc.k_floor = k_floor;
    const pwm::ShaperReport rep = pwm::pulse_shaper_simulate(mode, sc);

    if (!out.empty())
        pwm::write_text_file(
            out_path(out, "conversion_hg" + std::to_string(mode_index) + ".json"),
            pwm::conversion_report_json(rep, mode.label, grid.n));

    std::cout << "mode " << mode.label << ": fidelity "
              << pwm::format_g17(rep.fidelity) << ", efficiency "
              << pwm::format_g17(rep.efficiency) << ", mask max "
              << pwm::format_g17(rep.mask_max) << ", floor "
              << pwm::format_g17(rep.k_floor) << "\n"
              << (rep.fidelity >= 1.0 - tol ? "[PASS]" : "[FAIL]")
              << " dual-mode conversion fidelity\n";
    return rep.fidelity >= 1.0 - tol ? 0 : 1;
}

int cmd_reduce(const pwm::RunConfig& cfg, int grid_n, const std::string& out, double tol) {
    const pwm::TwoPhotonState s = test_state(cfg, grid_n, 3);
    const pwm::ReducedDensityMatrix r = pwm::reduced_density_matrix(s);
    const pwm::WrongTraceDemo demo = pwm::wrong_trace_demo(s);

    const std::string state_json =
        pwm::two_photon_json(s, "gaussian packet test basis, grid " + grid_label(grid_n));
    const std::string state_hash = pwm::hash_hex(pwm::fnv1a64(state_json));
    if (!out.empty()) {
        pwm::write_text_file(out_path(out, "two_photon_state.json"), state_json);
        pwm::write_text_file(out_path(out, "density_matrix.json"),
                             pwm::density_matrix_json(r));
        pwm::write_text_file(
            out_path(out, "partial_trace_checks.json"),
            pwm::residual_report_json(
                "partial_trace_checks",
                {{"trace_deviation", r.trace_deviation},
                 {"hermiticity_deviation", r.hermiticity_deviation},
                 {"min_eigenvalue", r.min_eigenvalue},
                 {"purity", r.purity},
                 {"energy_weighted_trace_ratio", demo.trace_ratio},
                 {"energy_weighted_shape_difference", demo.shape_difference}},
                grid_label(grid_n), state_hash));
    }

    const bool pass = r.trace_deviation <= tol && r.hermiticity_deviation <= tol &&
                      r.min_eigenvalue >= -tol;
    std::cout << "reduced density matrix: trace deviation "
              << pwm::format_g17(r.trace_deviation) << ", purity "
              << pwm::format_g17(r.purity) << ", min eigenvalue "
              << pwm::format_g17(r.min_eigenvalue) << "\n"
              << "energy-weighted (naive) trace ratio "
              << pwm::format_g17(demo.trace_ratio) << ", shape difference "
              << pwm::format_g17(demo.shape_difference) << "\n"
              << (pass ? "[PASS]" : "[FAIL]") << " partial trace\n";
    return pass ? 0 : 1;
}

int cmd_evolve(const pwm::RunConfig& cfg, double t, int grid_n, const std::string& out,
               double tol) {
    const pwm::TwoPhotonState s = test_state(cfg, grid_n, 2);
    const pwm::PairTensor T = pwm::two_time_evaluate(s, 0.0, t);
    const pwm::PairEvolutionResidual er = pwm::two_photon_evolution_residual(T);

    const Eigen::MatrixXcd W = pwm::occupation_from_pair(s.C);
    const pwm::CoherenceSet coh = pwm::coherence_from_occupation(*s.basis, W, 0.0, t);
    const pwm::WolfResidual w1 = pwm::wolf_first_order_residual(coh);
    const pwm::WolfResidual w2 = pwm::wolf_second_order_residual(coh);
    const pwm::RSCoherence rs = pwm::rs_coherence(*s.basis, W, 0.0, t);
    const pwm::RSEvolutionResidual rr = pwm::rs_evolution_residual(rs.gamma);
    const double rs_route = rs.route_difference / std::max(rs.gamma.norm(), 1e-300);

    const std::vector<std::pair<std::string, double>> entries = {
        {"pair_slot1", er.slot1},
        {"pair_slot2", er.slot2},
        {"pair_equal_time", er.total},
        {"coherence_first_order_max", w1.max()},
        {"coherence_second_order_max", w2.max()},
        {"rs_route_difference_rel", rs_route},
        {"rs_slot1", rr.slot1},
        {"rs_slot2", rr.slot2}};

    if (!out.empty()) {
        const std::string state_json =
            pwm::two_photon_json(s, "gaussian packet test basis, grid " + grid_label(grid_n));
        pwm::write_text_file(
            out_path(out, "evolution_residuals.json"),
            pwm::residual_report_json("free_evolution_residuals", entries,
                                      grid_label(grid_n),
                                      pwm::hash_hex(pwm::fnv1a64(state_json))));
    }

    bool pass = true;
    for (const auto& [name, value] : entries) {
        std::cout << name << " = " << pwm::format_g17(value) << "\n";
        pass = pass && value <= tol;
    }
    std::cout << (pass ? "[PASS]" : "[FAIL]") << " evolution residuals (tol "
              << pwm::format_g17(tol) << ")\n";
    return pass ? 0 : 1;
}

int cmd_modes(const pwm::RunConfig& cfg, const std::string& out) {
    const double kbar = cfg.scales().kbar_natural();
    const pwm::KGrid1 grid = pwm::KGrid1::make_gauss_hermite(200, kbar, cfg.hg_width);
    std::vector<pwm::ModeCoefficients> modes;
    for (int m = 0; m < cfg.mode_count; ++m)
        modes.push_back(pwm::build_hg_coefficients(m, kbar, cfg.hg_width, grid));
    const std::string catalog = pwm::mode_catalog_json(modes, cfg);
    if (out.empty()) {
        std::cout << catalog;
    } else {
        pwm::write_text_file(out_path(out, "mode_catalog.json"), catalog);
        std::cout << "wrote mode_catalog.json to " << out << "\n";
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"photon wave-packet toolkit: weighted mode synthesis, non-local "
                 "products, two-photon states, coherence tensors and dual-mode "
                 "conversion"};
    app.require_subcommand(1);

    std::string config_path;
    int threads = 1;
    app.add_option("--config", config_path, "JSON configuration file")
        ->check(CLI::ExistingFile);
    app.add_option("--threads", threads, "worker threads for dense algebra")
        ->check(CLI::Range(1, 64));

    auto* fig = app.add_subcommand("figure", "longitudinal packet profiles and the "
                                             "dual pairing matrix");
    int fig_mode = 2;
    std::string fig_out = "pwm_out";
    double fig_tol = 1e-6;
    fig->add_option("--mode", fig_mode, "mode index for the profile CSVs")
        ->check(CLI::Range(0, 60));
    fig->add_option("--out", fig_out, "output directory");
    fig->add_option("--tol", fig_tol, "bound on the pairing identity deviation");

    auto* sui = app.add_subcommand("suite", "run a named numerical check suite");
    std::string suite_name;
    std::string suite_out;
    sui->add_option("name", suite_name, "suite name")
        ->required()
        ->check(CLI::IsMember(pwm::suite_names()));
    sui->add_option("--out", suite_out, "output directory for the report");

    auto* con = app.add_subcommand("convert", "simulate dual-mode conversion of a "
                                              "packet mode through a pulse shaper");
    int con_mode = 0;
    double con_floor = 0.0;
    std::string con_out;
    double con_tol = 1e-6;
    con->add_option("--mode", con_mode, "Hermite mode index")->check(CLI::Range(0, 60));
    con->add_option("--k-floor", con_floor, "mask floor wavenumber (0: carrier / 10)")
        ->check(CLI::NonNegativeNumber);
    con->add_option("--out", con_out, "output directory");
    con->add_option("--tol", con_tol, "fidelity shortfall bound");

    auto* red = app.add_subcommand("reduce", "reduced one-photon density matrix of a "
                                             "deterministic two-photon state");
    int red_grid = 6;
    std::string red_out;
    double red_tol = 1e-8;
    red->add_option("--grid", red_grid, "momentum grid points per axis")
        ->check(CLI::Range(4, 16));
    red->add_option("--out", red_out, "output directory");
    red->add_option("--tol", red_tol, "bound on trace / hermiticity deviations");

    auto* evo = app.add_subcommand("evolve", "free-evolution residuals of the "
                                             "two-photon amplitude and coherence tensors");
    double evo_t = 0.5;
    int evo_grid = 6;
    std::string evo_out;
    double evo_tol = 1e-8;
    evo->add_option("--t", evo_t, "slot-2 evaluation time");
    evo->add_option("--grid", evo_grid, "momentum grid points per axis")
        ->check(CLI::Range(4, 8));
    evo->add_option("--out", evo_out, "output directory");
    evo->add_option("--tol", evo_tol, "residual bound");

    auto* mod = app.add_subcommand("modes", "print or write the longitudinal mode catalog");
    std::string mod_out;
    mod->add_option("--out", mod_out, "output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        Eigen::setNbThreads(threads);
        const pwm::RunConfig cfg = config_from(config_path);
        if (fig->parsed()) return cmd_figure(cfg, fig_mode, fig_out, fig_tol);
        if (sui->parsed()) return cmd_suite(cfg, suite_name, suite_out);
        if (con->parsed()) return cmd_convert(cfg, con_mode, con_floor, con_out, con_tol);
        if (red->parsed()) return cmd_reduce(cfg, red_grid, red_out, red_tol);
        if (evo->parsed()) return cmd_evolve(cfg, evo_t, evo_grid, evo_out, evo_tol);
        if (mod->parsed()) return cmd_modes(cfg, mod_out);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    std::cerr << "error: no subcommand selected\n";
    return 2;
}
