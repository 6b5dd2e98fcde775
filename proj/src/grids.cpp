#include "pwm/grids.hpp"

#include <cmath>
#include <stdexcept>

namespace pwm {

KGrid1 KGrid1::make_uniform(int n, double k_min, double k_max) {
    if (n < 2) throw std::invalid_argument("KGrid1: need at least 2 nodes");
    if (!(k_min > 0.0) || !(k_max > k_min))
        throw std::invalid_argument("KGrid1: require 0 < k_min < k_max");
    KGrid1 g;
    g.n = n;
    g.k_min = k_min;
    g.k_max = k_max;
    g.rule = Rule::uniform;
    g.nodes.resize(n);
    g.weights.resize(n);
    const double dk = (k_max - k_min) / (n - 1);
    for (int i = 0; i < n; ++i) {
        g.nodes[i] = k_min + i * dk;
        double w = (i == 0 || i == n - 1) ? 0.5 * dk : dk;  // trapezoid
        g.weights[i] = w / (2.0 * kPi);
    }
    return g;
}

KGrid1 KGrid1::make_gauss_hermite(int n, double kbar, double w) {
    if (n < 2) throw std::invalid_argument("KGrid1: need at least 2 nodes");
    if (!(w > 0.0)) throw std::invalid_argument("KGrid1: width must be positive");

    // Golub-Welsch on the Hermite Jacobi matrix: nodes x_i, weights
    // wh_i = sqrt(pi) * v_{0i}^2 for integral e^{-x^2} f(x) dx.
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
    for (int i = 1; i < n; ++i) {
        double b = std::sqrt(i / 2.0);
        J(i, i - 1) = b;
        J(i - 1, i) = b;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
    if (es.info() != Eigen::Success) throw std::runtime_error("KGrid1: eigensolve failed");

    KGrid1 g;
    g.n = n;
    g.rule = Rule::gauss_hermite;
    g.nodes.resize(n);
    g.weights.resize(n);
    for (int i = 0; i < n; ++i) {
        double x = es.eigenvalues()(i);
        // substitute x = w (k - kbar): int f(k) dk = (1/w) int e^{-x^2} [e^{x^2} f] dx.
        // The exposed weight lambda_i e^{x_i^2} is evaluated through the
        // orthonormal Hermite functions h_m (lambda_i e^{x_i^2} = 1/(n h_{n-1}^2)),
        // which stays accurate at extreme nodes where the raw eigenvector
        // components underflow toward the eigensolver noise floor.
        double h_prev = 0.0;
        double h = std::pow(kPi, -0.25) * std::exp(-0.5 * x * x);
        for (int m = 1; m < n; ++m) {
            double h_next = x * std::sqrt(2.0 / m) * h - std::sqrt((m - 1.0) / m) * h_prev;
            h_prev = h;
            h = h_next;
        }
        g.nodes[i] = kbar + x / w;
        g.weights[i] = 1.0 / (n * h * h) / (w * 2.0 * kPi);
    }
    g.k_min = g.nodes.front();
    g.k_max = g.nodes.back();
    if (!(g.k_min > 0.0))
        throw std::invalid_argument("KGrid1: Gauss-Hermite nodes reach k <= 0; increase kbar*w");
    return g;
}

} // namespace pwm
