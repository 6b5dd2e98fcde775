#include "pwm/serialize.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace pwm {

using ordered_json = nlohmann::ordered_json;

std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : bytes) {
        h ^= std::uint64_t(c);
        h *= 0x100000001b3ull;
    }
    return h;
}

std::string hash_hex(std::uint64_t h) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return std::string(buf);
}

std::string format_g17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return std::string(buf);
}

PulseScales RunConfig::scales() const {
    PulseScales s;
    s.lambda_m = lambda_nm * 1e-9;
    s.tau_s = tau_fs * 1e-15;
    return s;
}

void RunConfig::validate() const {
    if (!(lambda_nm > 0.0)) throw std::invalid_argument("lambda_nm must be positive");
    if (!(tau_fs > 0.0)) throw std::invalid_argument("tau_fs must be positive");
    if (!(hg_width > 0.0)) throw std::invalid_argument("hg_width must be positive");
    if (mode_count < 1 || mode_count > 61)
        throw std::invalid_argument("mode_count must lie between 1 and 61");
    if (grid_points < 16) throw std::invalid_argument("grid_points must be at least 16");
    if (!(window > 0.0)) throw std::invalid_argument("window must be positive");
    if (samples < 3) throw std::invalid_argument("samples must be at least 3");
}

std::string RunConfig::canonical_json() const {
    ordered_json j;
    j["lambda_nm"] = lambda_nm;
    j["tau_fs"] = tau_fs;
    j["hg_width"] = hg_width;
    j["mode_count"] = mode_count;
    j["grid_points"] = grid_points;
    j["window"] = window;
    j["samples"] = samples;
    j["seed"] = seed;
    return j.dump();
}

std::string RunConfig::hash() const { return hash_hex(fnv1a64(canonical_json())); }

RunConfig parse_config(const std::string& json_text) {
    ordered_json j;
    try {
        j = ordered_json::parse(json_text);
    } catch (const std::exception& e) {
        throw std::invalid_argument(std::string("configuration is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw std::invalid_argument("configuration must be a JSON object");

    RunConfig cfg;
    for (const auto& [key, val] : j.items()) {
        auto need_number = [&](const char* name) {
            if (!val.is_number())
                throw std::invalid_argument(std::string(name) + " must be a number");
            return val.get<double>();
        };
        auto need_integer = [&](const char* name) {
            if (!val.is_number_integer())
                throw std::invalid_argument(std::string(name) + " must be an integer");
            return val.get<long long>();
        };
        if (key == "lambda_nm") cfg.lambda_nm = need_number("lambda_nm");
        else if (key == "tau_fs") cfg.tau_fs = need_number("tau_fs");
        else if (key == "hg_width") cfg.hg_width = need_number("hg_width");
        else if (key == "mode_count") cfg.mode_count = static_cast<int>(need_integer("mode_count"));
        else if (key == "grid_points") cfg.grid_points = static_cast<int>(need_integer("grid_points"));
        else if (key == "window") cfg.window = need_number("window");
        else if (key == "samples") cfg.samples = static_cast<int>(need_integer("samples"));
        else if (key == "seed") cfg.seed = static_cast<std::uint64_t>(need_integer("seed"));
        else throw std::invalid_argument("unknown configuration key: " + key);
    }
    cfg.validate();
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot read configuration file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

namespace {

ordered_json config_block(const RunConfig& cfg) {
    return ordered_json::parse(cfg.canonical_json());
}

ordered_json grid1_block(const KGrid1& g) {
    ordered_json j;
    j["points"] = g.nodes.size();
    j["rule"] = (g.rule == KGrid1::Rule::uniform) ? "uniform" : "gauss_hermite";
    j["k_min"] = g.nodes.empty() ? 0.0 : g.nodes.front();
    j["k_max"] = g.nodes.empty() ? 0.0 : g.nodes.back();
    return j;
}

ordered_json interleaved(const Eigen::VectorXcd& v) {
    ordered_json arr = ordered_json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        arr.push_back(v(i).real());
        arr.push_back(v(i).imag());
    }
    return arr;
}

ordered_json matrix_rows(const Eigen::MatrixXcd& m) {
    ordered_json rows = ordered_json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        ordered_json row = ordered_json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            row.push_back(m(r, c).real());
            row.push_back(m(r, c).imag());
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace

std::string mode_catalog_json(const std::vector<ModeCoefficients>& modes,
                              const RunConfig& cfg) {
    const PulseScales sc = cfg.scales();
    ordered_json j;
    j["catalog"] = "longitudinal_modes";
    j["config"] = config_block(cfg);
    j["config_hash"] = cfg.hash();
    j["units"] = {{"reference_length_m", sc.width_m()},
                  {"reference_time_s", sc.tau_s},
                  {"kbar_natural", sc.kbar_natural()}};
    ordered_json arr = ordered_json::array();
    for (const auto& m : modes) {
        ordered_json e;
        e["label"] = m.label;
        e["index"] = m.m;
        e["kbar"] = m.kbar;
        e["width"] = m.w;
        e["narrowband_warning"] = m.narrowband_warning;
        e["grid"] = grid1_block(m.grid);
        e["coefficients"] = interleaved(m.u);
        arr.push_back(std::move(e));
    }
    j["modes"] = std::move(arr);
    return j.dump(2) + "\n";
}

std::string two_photon_json(const TwoPhotonState& s, const std::string& basis_ref) {
    ordered_json j;
    j["state"] = "two_photon";
    j["basis_ref"] = basis_ref;
    j["dimension"] = s.C.rows();
    j["coefficients"] = matrix_rows(s.C);
    return j.dump(2) + "\n";
}

std::string density_matrix_json(const ReducedDensityMatrix& r) {
    ordered_json j;
    j["matrix"] = "reduced_density";
    j["dimension"] = r.rho.rows();
    j["trace_deviation"] = r.trace_deviation;
    j["hermiticity_deviation"] = r.hermiticity_deviation;
    j["min_eigenvalue"] = r.min_eigenvalue;
    j["purity"] = r.purity;
    j["rho"] = matrix_rows(r.rho);
    return j.dump(2) + "\n";
}

std::string residual_report_json(const std::string& title,
                                 const std::vector<std::pair<std::string, double>>& entries,
                                 const std::string& grid, const std::string& state_hash) {
    ordered_json j;
    j["report"] = title;
    j["grid"] = grid;
    j["state_hash"] = state_hash;
    ordered_json arr = ordered_json::array();
    for (const auto& [name, value] : entries) {
        ordered_json e;
        e["name"] = name;
        e["value"] = value;
        arr.push_back(std::move(e));
    }
    j["entries"] = std::move(arr);
    return j.dump(2) + "\n";
}

std::string conversion_report_json(const ShaperReport& rep, const std::string& mode_label,
                                   int grid_points) {
    ordered_json j;
    j["report"] = "dual_mode_conversion";
    j["mode_label"] = mode_label;
    j["fidelity"] = rep.fidelity;
    j["efficiency"] = rep.efficiency;
    j["mask_max"] = rep.mask_max;
    j["k_floor"] = rep.k_floor;
    j["grid_points"] = grid_points;
    j["natural_unit_constant"] = kNumberNormalizationConstant;
    return j.dump(2) + "\n";
}

std::string profile_csv(const Profile1D& p, const UnitsPolicy& units,
                        const std::string& config_hash) {
    std::string out;
    out.reserve(static_cast<std::size_t>(p.t.size()) * 64 + 64);
    out += "# config_hash=" + config_hash + "\n";
    out += "t_R_fs,re,im\n";
    for (Eigen::Index i = 0; i < p.t.size(); ++i) {
        const double t_fs = units.time_to_si(p.t(i)) * 1e15;
        out += format_g17(t_fs);
        out += ',';
        out += format_g17(p.v(i).real());
        out += ',';
        out += format_g17(p.v(i).imag());
        out += '\n';
    }
    return out;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    out << content;
    if (!out) throw std::runtime_error("failed writing output file: " + path);
}

} // namespace pwm
