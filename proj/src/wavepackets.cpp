#include "pwm/wavepackets.hpp"

#include <cmath>
#include <stdexcept>

namespace pwm {

double hermite_gaussian_amplitude(int m, double w, double q) {
    if (m < 0 || m > 60)
        throw std::domain_error("hermite index outside validated range 0..60");
    if (!(w > 0.0)) throw std::domain_error("width must be positive");
    // orthonormal Hermite functions phi_m (unit norm under dx), stable recurrence
    const double x = w * q;
    double phi_prev = 0.0;
    double phi = std::pow(kPi, -0.25) * std::exp(-0.5 * x * x);
    for (int j = 1; j <= m; ++j) {
        double next = std::sqrt(2.0 / j) * x * phi - std::sqrt((j - 1.0) / j) * phi_prev;
        phi_prev = phi;
        phi = next;
    }
    // unit norm under dq/(2pi) instead of dx
    return std::sqrt(2.0 * kPi * w) * phi;
}

ModeCoefficients build_hg_coefficients(int m, double kbar, double w, const KGrid1& grid) {
    const double regime = kbar * w;
    if (regime < 3.0)
        throw std::domain_error("kbar*w < 3: packet spectrum reaches k <= 0");
    ModeCoefficients c;
    c.grid = grid;
    c.m = m;
    c.kbar = kbar;
    c.w = w;
    c.narrowband_warning = regime < 10.0;
    c.label = "hg" + std::to_string(m);
    c.u.resize(grid.n);
    for (int i = 0; i < grid.n; ++i)
        c.u(i) = hermite_gaussian_amplitude(m, w, grid.nodes[i] - kbar);
    double n2 = 0.0;
    for (int i = 0; i < grid.n; ++i) n2 += grid.weights[i] * std::norm(c.u(i));
    if (!(n2 > 0.0)) throw std::runtime_error("mode has zero norm on this grid");
    c.u /= std::sqrt(n2);
    return c;
}

Profile1D longitudinal_mode(const ModeCoefficients& c, Weight w_exp,
                            double window, int nt) {
    if (nt < 2) throw std::invalid_argument("need at least 2 time samples");
    const double lo_need = c.kbar - 8.0 / c.w, hi_need = c.kbar + 8.0 / c.w;
    if (c.grid.k_min > lo_need || c.grid.k_max < hi_need)
        throw std::domain_error("wavenumber grid must cover kbar +- 8/w");

    const double expo = weight_exponent(w_exp);
    Profile1D p;
    p.weight = w_exp;
    p.t.resize(nt);
    p.v.resize(nt);
    const cplx iu(0.0, 1.0);
    const int nk = c.grid.n;
    std::vector<double> wk(nk);
    for (int i = 0; i < nk; ++i)
        wk[i] = c.grid.weights[i] * std::pow(c.grid.nodes[i], expo);
    for (int j = 0; j < nt; ++j) {
        const double t = -window + 2.0 * window * j / (nt - 1);
        p.t(j) = t;
        cplx acc(0.0, 0.0);
        for (int i = 0; i < nk; ++i)
            acc += wk[i] * c.u(i) * std::exp(cplx(0.0, -c.grid.nodes[i] * t));
        p.v(j) = iu * acc;
    }
    return p;
}

cplx profile_pairing(const Profile1D& a, const Profile1D& b, double decay_tol) {
    if (a.t.size() != b.t.size() || (a.t - b.t).cwiseAbs().maxCoeff() > 0.0)
        throw std::invalid_argument("profiles must share the time grid");
    const int n = int(a.t.size());
    for (const auto* p : {&a, &b}) {
        const double mx = p->v.cwiseAbs().maxCoeff();
        if (mx > 0.0 &&
            std::max(std::abs(p->v(0)), std::abs(p->v(n - 1))) > decay_tol * mx)
            throw std::domain_error("profile has not decayed at the window ends");
    }
    cplx acc(0.0, 0.0);
    for (int i = 0; i < n; ++i) {
        const double w = (i == 0 || i == n - 1) ? 0.5 : 1.0;
        acc += w * std::conj(a.v(i)) * b.v(i);
    }
    return acc * (a.t(1) - a.t(0));
}

Eigen::MatrixXcd energy_matrix(const std::vector<ModeCoefficients>& modes) {
    const int d = int(modes.size());
    Eigen::MatrixXcd H(d, d);
    for (int j = 0; j < d; ++j)
        for (int k = j; k < d; ++k) {
            if (!(modes[j].grid.nodes == modes[k].grid.nodes))
                throw std::invalid_argument("modes must share a wavenumber grid");
            cplx acc(0.0, 0.0);
            for (int i = 0; i < modes[j].grid.n; ++i)
                acc += modes[j].grid.weights[i] * modes[j].grid.nodes[i] *
                       std::conj(modes[j].u(i)) * modes[k].u(i);
            H(j, k) = acc;
            H(k, j) = std::conj(acc);
        }
    return H;
}

EnergyEigenbasis diagonalize_energy(const std::vector<ModeCoefficients>& modes) {
    Eigen::MatrixXcd H = energy_matrix(modes);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(H);
    if (es.info() != Eigen::Success) throw std::runtime_error("eigensolve failed");
    EnergyEigenbasis out;
    out.omega = es.eigenvalues();
    out.V = es.eigenvectors();
    const int d = int(modes.size());
    for (int j = 0; j < d; ++j) {
        ModeCoefficients r = modes[0];
        r.label = "energy_eigenmode_" + std::to_string(j);
        r.m = -1;
        r.u.setZero(r.grid.n);
        for (int m = 0; m < d; ++m) r.u += modes[m].u * out.V(m, j);
        out.rotated.push_back(std::move(r));
    }
    return out;
}

// ---------------------------------------------------------------------------

VectorField WavePacketMode::momentum_amplitude() const {
    VectorField f(grid, Space::momentum);
    auto& d = f.block(sigma);
    const cplx iu(0.0, 1.0);
    for (std::size_t i = 0; i < grid.size(); ++i)
        d.col(i) = iu * U(i) * circular_polarization_vector(grid.k_at(i), sigma);
    return f;
}

VectorField WavePacketMode::field(double t) const {
    return synthesize_coordinate_field(momentum_amplitude(), Weight::plus_half, t);
}

VectorField WavePacketMode::dual(double t) const {
    return synthesize_coordinate_field(momentum_amplitude(), Weight::minus_half, t);
}

double WavePacketMode::norm_on_grid() const {
    return U.squaredNorm() * grid.measure_k();
}

WavePacketMode hg_mode_3d(const KGrid3& grid, int l, int m, int n,
                          double kbar_z, double w_x, double w_y, double w_z,
                          Helicity sigma) {
    WavePacketMode mode;
    mode.grid = grid;
    mode.sigma = sigma;
    mode.label = "hg3d_" + std::to_string(l) + std::to_string(m) + std::to_string(n);
    mode.U.resize(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const Vec3 k = grid.k_at(i);
        if (k.norm() == 0.0) {
            mode.U(i) = 0.0;  // no infrared content
            continue;
        }
        mode.U(i) = hermite_gaussian_amplitude(l, w_x, k.x()) *
                    hermite_gaussian_amplitude(m, w_y, k.y()) *
                    hermite_gaussian_amplitude(n, w_z, k.z() - kbar_z);
    }
    const double n2 = mode.norm_on_grid();
    if (!(n2 > 0.0)) throw std::runtime_error("mode has zero norm on this grid");
    mode.U /= std::sqrt(n2);
    return mode;
}

WavePacketMode monochromatic_rs_mode(const KGrid3& grid, int ix, int iy, int iz,
                                     Helicity sigma) {
    const std::size_t f = grid.flat(ix, iy, iz);
    if (grid.knorm_at(f) == 0.0)
        throw std::domain_error("no transverse mode at k = 0");
    WavePacketMode mode;
    mode.grid = grid;
    mode.sigma = sigma;
    mode.label = "plane_" + std::to_string(ix) + "_" + std::to_string(iy) + "_" +
                 std::to_string(iz) + (sigma == Helicity::plus ? "_p" : "_m");
    mode.U.setZero(grid.size());
    mode.U(f) = 1.0 / std::sqrt(grid.measure_k());
    return mode;
}

Eigen::MatrixXcd gram_matrix(const std::vector<WavePacketMode>& modes) {
    const int d = int(modes.size());
    Eigen::MatrixXcd G(d, d);
    for (int j = 0; j < d; ++j)
        for (int k = j; k < d; ++k) {
            if (!(modes[j].grid == modes[k].grid))
                throw std::invalid_argument("modes must share a grid");
            cplx acc(0.0, 0.0);
            if (modes[j].sigma == modes[k].sigma)
                acc = (modes[j].U.adjoint() * modes[k].U)(0, 0) * modes[j].grid.measure_k();
            G(j, k) = acc;
            G(k, j) = std::conj(acc);
        }
    return G;
}

Eigen::MatrixXcd energy_matrix(const std::vector<WavePacketMode>& modes) {
    const int d = int(modes.size());
    Eigen::MatrixXcd H(d, d);
    for (int j = 0; j < d; ++j)
        for (int k = j; k < d; ++k) {
            if (!(modes[j].grid == modes[k].grid))
                throw std::invalid_argument("modes must share a grid");
            cplx acc(0.0, 0.0);
            if (modes[j].sigma == modes[k].sigma) {
                const auto& g = modes[j].grid;
                for (std::size_t i = 0; i < g.size(); ++i)
                    acc += g.knorm_at(i) * std::conj(modes[j].U(i)) * modes[k].U(i);
                acc *= g.measure_k();
            }
            H(j, k) = acc;
            H(k, j) = std::conj(acc);
        }
    return H;
}

EnergyEigenbasis3D diagonalize_energy(const std::vector<WavePacketMode>& modes) {
    Eigen::MatrixXcd H = energy_matrix(modes);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(H);
    if (es.info() != Eigen::Success) throw std::runtime_error("eigensolve failed");
    EnergyEigenbasis3D out;
    out.omega = es.eigenvalues();
    out.V = es.eigenvectors();
    const int d = int(modes.size());
    for (int j = 0; j < d; ++j) {
        WavePacketMode r = modes[0];
        r.label = "energy_eigenmode_" + std::to_string(j);
        r.U.setZero(r.grid.size());
        bool mixed_sigma = false;
        for (int m = 0; m < d; ++m) {
            if (std::abs(out.V(m, j)) > 1e-14 && modes[m].sigma != r.sigma) mixed_sigma = true;
            if (modes[m].sigma == r.sigma) r.U += modes[m].U * out.V(m, j);
        }
        if (mixed_sigma)
            throw std::invalid_argument("energy eigenbasis mixes helicities; split the basis");
        out.rotated.push_back(std::move(r));
    }
    return out;
}

Expansion expand_state(const VectorField& coord_field,
                       const std::vector<WavePacketMode>& basis) {
    if (basis.empty()) throw std::invalid_argument("empty basis");
    Eigen::MatrixXcd G = gram_matrix(basis);
    const int d = int(basis.size());
    if ((G - Eigen::MatrixXcd::Identity(d, d)).cwiseAbs().maxCoeff() > 1e-6)
        throw std::domain_error("basis is not orthonormal under the non-local product");

    VectorField a = invert_to_momentum(coord_field, Weight::plus_half);
    Expansion out;
    out.B.resize(d);
    for (int j = 0; j < d; ++j)
        out.B(j) = momentum_scalar_product(basis[j].momentum_amplitude(), a);

    // reconstruction in the plain L2 sense of the weighted fields
    VectorField recon(coord_field.grid(), Space::coordinate);
    recon.set_time(coord_field.time());
    bool first = true;
    for (int j = 0; j < d; ++j) {
        VectorField term = basis[j].field(coord_field.time());
        term *= out.B(j);
        if (first) {
            recon = term;
            first = false;
        } else {
            recon += term;
        }
    }
    recon -= coord_field;
    const double denom = std::sqrt(coord_field.norm2());
    out.reconstruction_error = denom > 0.0 ? std::sqrt(recon.norm2()) / denom : 0.0;
    return out;
}

} // namespace pwm
