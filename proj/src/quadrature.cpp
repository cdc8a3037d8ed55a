#include "heunlab/quadrature.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

#include "heunlab/errors.hpp"

namespace heun {

namespace {

// Monic three-term recurrence coefficients for the Jacobi weight.
double alpha_k(int k, double a, double b) {
    if (k == 0) return (b - a) / (a + b + 2.0);
    const double t = 2.0 * k + a + b;
    return (b * b - a * a) / (t * (t + 2.0));
}

double beta_k(int k, double a, double b) {
    if (k == 0) return jacobi_mu0(a, b);
    if (k == 1) return 4.0 * (a + 1.0) * (b + 1.0) / ((a + b + 2.0) * (a + b + 2.0) * (a + b + 3.0));
    const double t = 2.0 * k + a + b;
    return 4.0 * k * (k + a) * (k + b) * (k + a + b) / (t * t * (t + 1.0) * (t - 1.0));
}

} // namespace

double jacobi_mu0(double a, double b) {
    return std::exp((a + b + 1.0) * std::log(2.0) + std::lgamma(a + 1.0) + std::lgamma(b + 1.0) -
                    std::lgamma(a + b + 2.0));
}

QuadratureRule jacobi_rule(int m, double a, double b, double r) {
    if (m < 1) throw domain_error("jacobi_rule: need at least one node");
    if (!(a > -1.0) || !(b > -1.0)) throw domain_error("jacobi_rule: weight not integrable");
    if (!(r > 0.0)) throw domain_error("jacobi_rule: r must be positive");

    Eigen::VectorXd diag(m), sub(std::max(m - 1, 0));
    for (int k = 0; k < m; ++k) diag[k] = alpha_k(k, a, b);
    for (int k = 1; k < m; ++k) sub[k - 1] = std::sqrt(beta_k(k, a, b));

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(diag, sub);
    if (es.info() != Eigen::Success)
        throw domain_error("jacobi_rule: tridiagonal eigensolve failed");

    QuadratureRule rule;
    rule.exponent_left = a;
    rule.exponent_right = b;
    rule.order = m;
    rule.r = r;
    rule.nodes.resize(static_cast<size_t>(m));
    rule.y_nodes.resize(static_cast<size_t>(m));
    rule.weights.resize(static_cast<size_t>(m));
    const double mu0 = jacobi_mu0(a, b);
    // eigenvalues come back ascending in y, i.e. descending in x: reverse
    for (int i = 0; i < m; ++i) {
        const int j = m - 1 - i; // ascending x
        const double y = es.eigenvalues()[j];
        const double v0 = es.eigenvectors()(0, j);
        rule.y_nodes[static_cast<size_t>(i)] = y;
        rule.nodes[static_cast<size_t>(i)] = std::acos(std::clamp(y, -1.0, 1.0)) / (2.0 * r);
        rule.weights[static_cast<size_t>(i)] = mu0 * v0 * v0;
    }
    return rule;
}

void jacobi_orthonormal(int count, double a, double b, double y, double* out) {
    if (count <= 0) return;
    double pkm1 = 0.0;
    double bk = beta_k(0, a, b);
    double pk = 1.0 / std::sqrt(bk);
    out[0] = pk;
    for (int k = 0; k + 1 < count; ++k) {
        const double bk1 = beta_k(k + 1, a, b);
        const double pk1 = ((y - alpha_k(k, a, b)) * pk - (k > 0 ? std::sqrt(bk) : 0.0) * pkm1) / std::sqrt(bk1);
        pkm1 = pk;
        pk = pk1;
        bk = bk1;
        out[k + 1] = pk;
    }
}

} // namespace heun
