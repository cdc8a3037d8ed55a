#include "heunlab/kernels.hpp"

#include <cmath>
#include <limits>

#include "heunlab/quadrature.hpp"

namespace heun {

namespace {

constexpr double kEndpointTol = 1e-14;

bool at_left(double x, const EllipticParams& par) { return std::abs(x) < kEndpointTol * par.omega1(); }
bool at_right(double x, const EllipticParams& par) {
    return std::abs(par.omega1() - x) < kEndpointTol * par.omega1();
}

// product over k>=1 of (1 - 2 q^{2k} cos(2rx) + q^{4k}) / (1 - q^{2k})^2,
// equal to r * s(x)/sin(rx); strictly positive for all real x.
double s_over_sin_factor(double x, const EllipticParams& par) {
    const double q = par.nome;
    const double c = std::cos(2.0 * par.r * x);
    double q2k = q * q;
    double out = 1.0;
    for (int k = 1; k <= par.product_truncation; ++k) {
        const double d = 1.0 - q2k;
        out *= (1.0 - q2k * (2.0 * c - q2k)) / (d * d);
        q2k *= q * q;
    }
    return out;
}

} // namespace

double weight_ratio_sqrt(const CouplingVector& g, double x, const EllipticParams& par) {
    const double om1 = par.omega1();
    const double lg = (g[0] + g[1]) * std::log(par.p / par.r) +
                      g[0] * std::log(s_over_sin_factor(x, par)) +
                      g[1] * std::log(s_over_sin_factor(om1 - x, par)) +
                      g[2] * std::log(r_function(x, par)) +
                      g[3] * std::log(r_function(om1 - x, par));
    return std::exp(lg);
}

double weight(const CouplingVector& g, double x, const EllipticParams& par) {
    const double om1 = par.omega1();
    if (at_left(x, par) || at_right(x, par)) {
        const double expo = at_left(x, par) ? g[0] : g[1];
        if (expo > 0.0) return 0.0;
        if (expo < 0.0) return std::numeric_limits<double>::infinity();
        // vanishing local exponent: the surviving factors are finite and
        // positive, and the trig weight at its own endpoint equals 1
        const double ratio = weight_ratio_sqrt(g, at_left(x, par) ? 0.0 : om1, par);
        return ratio * ratio;
    }
    const double lw = 2.0 * ((g[0] + g[1]) * std::log(par.p) + g[0] * std::log(s_function(x, par)) +
                             g[1] * std::log(s_function(om1 - x, par)) +
                             g[2] * std::log(r_function(x, par)) +
                             g[3] * std::log(r_function(om1 - x, par)));
    return std::exp(lw);
}

double s_kernel(double s_g, double x, double y, const EllipticParams& par, KernelForm form) {
    if (s_g == 0.0) return 1.0;
    if (form == KernelForm::product) {
        const double lg = std::log(r_function(x + y, par)) + std::log(r_function(x - y, par));
        return std::exp(-s_g * lg);
    }
    const double ra = par.r * par.alpha;
    double sum = 0.0;
    for (int n = 1; n <= par.fourier_truncation; ++n)
        sum += std::cos(2.0 * n * par.r * x) * std::cos(2.0 * n * par.r * y) / (n * std::sinh(n * ra));
    return std::exp(2.0 * s_g * sum);
}

double s_kernel(const CouplingVector& g, double x, double y, const EllipticParams& par, KernelForm form) {
    return s_kernel(g.s_g(), x, y, par, form);
}

double psi_kernel(const CouplingVector& g, double x, double y, const EllipticParams& par) {
    const CouplingVector gd = dual(g);
    const double om1 = par.omega1();

    // endpoint handling mirrors weight(): any active negative exponent flags
    // infinity, otherwise any active positive exponent forces 0, otherwise
    // the interior log-space form below stays finite
    double min_active = std::numeric_limits<double>::infinity();
    double max_active = -std::numeric_limits<double>::infinity();
    auto record = [&](double e) {
        min_active = std::min(min_active, e);
        max_active = std::max(max_active, e);
    };
    if (at_left(x, par)) record(g[0]);
    if (at_right(x, par)) record(g[1]);
    if (at_left(y, par)) record(gd[0]);
    if (at_right(y, par)) record(gd[1]);
    if (min_active < 0.0) return std::numeric_limits<double>::infinity();
    if (max_active > 0.0) return 0.0;

    const double sg = g.s_g();
    const double lw_x = (g[0] + g[1]) * std::log(par.p) +
                        (at_left(x, par) ? 0.0 : g[0] * std::log(s_function(x, par))) +
                        (at_right(x, par) ? 0.0 : g[1] * std::log(s_function(om1 - x, par))) +
                        g[2] * std::log(r_function(x, par)) + g[3] * std::log(r_function(om1 - x, par));
    const double lw_y = (gd[0] + gd[1]) * std::log(par.p) +
                        (at_left(y, par) ? 0.0 : gd[0] * std::log(s_function(y, par))) +
                        (at_right(y, par) ? 0.0 : gd[1] * std::log(s_function(om1 - y, par))) +
                        gd[2] * std::log(r_function(y, par)) + gd[3] * std::log(r_function(om1 - y, par));

    const double ra = par.r * par.alpha;
    double ls = 0.0;
    for (int n = 1; n <= par.fourier_truncation; ++n)
        ls += std::cos(2.0 * n * par.r * x) * std::cos(2.0 * n * par.r * y) / (n * std::sinh(n * ra));

    return std::exp(lw_x + 2.0 * sg * ls + lw_y);
}

HsNormResult hs_norm_finite(const CouplingVector& g, const EllipticParams& par, int quad_size) {
    HsNormResult out;
    const MembershipFlags f = membership(g);
    out.finite = f.in_pi;
    if (!out.finite) return out;

    const CouplingVector gd = dual(g);
    const QuadratureRule rx = jacobi_rule(quad_size, g[0] - 0.5, g[1] - 0.5, par.r);
    const QuadratureRule ry = jacobi_rule(quad_size, gd[0] - 0.5, gd[1] - 0.5, par.r);
    const double norm = 1.0 / (2.0 * par.r * std::pow(2.0, g[0] + g[1]));

    // Psi^2 = wt(g;x) * wt(g';y) * [ratio_x S ratio_y]^2: the rules absorb
    // the trig weights, the analytic remainder is sampled at the nodes.
    const double sg = g.s_g();
    double total = 0.0;
    for (int i = 0; i < quad_size; ++i) {
        const double px = weight_ratio_sqrt(g, rx.nodes[static_cast<size_t>(i)], par);
        double row = 0.0;
        for (int j = 0; j < quad_size; ++j) {
            const double py = weight_ratio_sqrt(gd, ry.nodes[static_cast<size_t>(j)], par);
            const double s = s_kernel(sg, rx.nodes[static_cast<size_t>(i)], ry.nodes[static_cast<size_t>(j)], par);
            const double f2 = px * s * py;
            row += ry.weights[static_cast<size_t>(j)] * f2 * f2;
        }
        total += rx.weights[static_cast<size_t>(i)] * row;
    }
    out.estimate = total * norm * norm;
    return out;
}

double potential_trig(double g0, double g1, double x, double r) {
    const double sn = std::sin(r * x);
    const double cs = std::cos(r * x);
    return r * r * g0 * (g0 - 1.0) / (sn * sn) + r * r * g1 * (g1 - 1.0) / (cs * cs);
}

double potential(const CouplingVector& g, double x, const EllipticParams& par) {
    const double om1 = par.omega1();
    const double c0 = g[0] * (g[0] - 1.0);
    const double c1 = g[1] * (g[1] - 1.0);
    if (at_left(x, par) && c0 != 0.0)
        throw pole_error("potential: pole at the left endpoint", {x, 0.0});
    if (at_right(x, par) && c1 != 0.0)
        throw pole_error("potential: pole at the right endpoint", {x, 0.0});
    double v = 0.0;
    if (c0 != 0.0) v += c0 * wp(x, par);
    if (c1 != 0.0) v += c1 * wp(om1 - x, par);
    const double c2 = g[2] * (g[2] - 1.0);
    const double c3 = g[3] * (g[3] - 1.0);
    if (c2 != 0.0) v += c2 * wp_tilde(x, par);
    if (c3 != 0.0) v += c3 * wp_tilde(om1 - x, par);
    return v;
}

double potential_diff(const CouplingVector& g, double x, const EllipticParams& par) {
    const double om1 = par.omega1();
    return -g[0] * (g[0] - 1.0) * wp_regularized(x, par) -
           g[1] * (g[1] - 1.0) * wp_regularized(om1 - x, par) -
           g[2] * (g[2] - 1.0) * wp_tilde(x, par) -
           g[3] * (g[3] - 1.0) * wp_tilde(om1 - x, par);
}

} // namespace heun
