#pragma once

namespace pwm {

// Internal unit system: hbar = c = eps0 = 1.  A single reference length
// (in meters) fixes the dimensional scale; times are measured in units of
// ref_length/c and wavenumbers in units of 1/ref_length.  Conversions are
// used only at I/O boundaries, all internal math stays in natural units.
struct UnitsPolicy {
    static constexpr double c_m_per_s = 299792458.0;

    double ref_length_m = 1.0;

    double k_to_natural(double k_per_m) const { return k_per_m * ref_length_m; }
    double k_to_si(double k_nat) const { return k_nat / ref_length_m; }

    double length_to_natural(double x_m) const { return x_m / ref_length_m; }
    double length_to_si(double x_nat) const { return x_nat * ref_length_m; }

    double time_to_natural(double t_s) const { return t_s * c_m_per_s / ref_length_m; }
    double time_to_si(double t_nat) const { return t_nat * ref_length_m / c_m_per_s; }

    // angular frequency in rad/s <-> natural energy (hbar = 1)
    double omega_to_natural(double w_per_s) const { return w_per_s * ref_length_m / c_m_per_s; }
    double omega_to_si(double w_nat) const { return w_nat * c_m_per_s / ref_length_m; }
};

// Pulse parameterization used by the worked example: central wavelength and
// Gaussian duration.  The natural length unit is the packet width w_z = c*tau,
// so kbar_natural = 2*pi*c*tau/lambda and t_R = 1 corresponds to tau seconds.
struct PulseScales {
    double lambda_m;
    double tau_s;

    UnitsPolicy units() const { return UnitsPolicy{UnitsPolicy::c_m_per_s * tau_s}; }
    double width_m() const { return UnitsPolicy::c_m_per_s * tau_s; }
    double kbar_natural() const { return 2.0 * 3.14159265358979323846 * width_m() / lambda_m; }
};

} // namespace pwm
