#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pwm/field.hpp"
#include "pwm/multiphoton.hpp"
#include "pwm/serialize.hpp"

namespace pwm {

struct Check {
    std::string name;
    double value = 0.0;      // measured quantity (usually a residual)
    double tolerance = 0.0;  // bound it must satisfy
    bool invert = false;     // true: check value >= tolerance (negative controls)
    bool pass = false;
};

struct SuiteReport {
    std::string suite;
    std::vector<Check> checks;
    bool all_pass() const;
    std::string to_text() const;
    std::string to_json() const;
};

// Known suite names: kernels, maxwell, biortho, twophoton, wolf, converter,
// boost, all.
std::vector<std::string> suite_names();
SuiteReport run_suite(const std::string& name, const RunConfig& cfg);

// Deterministic random helpers shared by suites and the check binaries.
// Smooth transverse momentum field: circular-polarization coefficients with
// a Gaussian envelope around radius k0, both helicity blocks, unit norm.
VectorField random_transverse_field(const KGrid3& grid, double k0, double width,
                                    std::uint64_t seed);

// Small orthonormal basis of 3D Gaussian packet modes around (0, 0, kbar_z),
// alternating mode shape, all with the given helicity.
ModeBasisPtr make_test_basis(const KGrid3& grid, double kbar_z, double width,
                             int count, Helicity sigma);

} // namespace pwm
