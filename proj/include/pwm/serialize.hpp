#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pwm/converter.hpp"
#include "pwm/multiphoton.hpp"
#include "pwm/units.hpp"
#include "pwm/wavepackets.hpp"

namespace pwm {

// FNV-1a, 64-bit: stable content hash for configs and reports.
std::uint64_t fnv1a64(std::string_view bytes);
std::string hash_hex(std::uint64_t h);

// Run parameters for the reference pulse and the derived defaults.
// All reports carry the hash of the canonical form, so byte-identical
// configurations produce byte-identical outputs.
struct RunConfig {
    double lambda_nm = 810.0;   // carrier wavelength
    double tau_fs = 60.0;       // pulse duration (reference time unit)
    double hg_width = 1.0;      // spectral-envelope width in natural units
    int mode_count = 4;         // longitudinal modes in the catalog
    int grid_points = 4096;     // 1D spectral grid size
    double window = 12.0;       // half width of the retarded-time window
    int samples = 2001;         // time samples per profile
    std::uint64_t seed = 12345; // RNG seed for randomized checks

    PulseScales scales() const;
    std::string canonical_json() const;
    std::string hash() const;
    void validate() const;
};

RunConfig load_config(const std::string& path);
RunConfig parse_config(const std::string& json_text);

// Deterministic writers (ordered keys, no timestamps).
std::string mode_catalog_json(const std::vector<ModeCoefficients>& modes,
                              const RunConfig& cfg);
std::string two_photon_json(const TwoPhotonState& s, const std::string& basis_ref);
std::string density_matrix_json(const ReducedDensityMatrix& r);
std::string residual_report_json(const std::string& title,
                                 const std::vector<std::pair<std::string, double>>& entries,
                                 const std::string& grid, const std::string& state_hash);
std::string conversion_report_json(const ShaperReport& rep, const std::string& mode_label,
                                   int grid_points);

// CSV profile: leading comment with the config hash, then
// "t_R_fs,re,im" rows formatted with %.17g.
std::string profile_csv(const Profile1D& p, const UnitsPolicy& units,
                        const std::string& config_hash);

void write_text_file(const std::string& path, const std::string& content);
std::string format_g17(double v);

} // namespace pwm
