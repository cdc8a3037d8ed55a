#include "heunlab/elliptic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace heun {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;
using cx = std::complex<double>;

// Distance from z to the nearest point of the lattice {m*pi/r + i*n*alpha}.
double lattice_distance(cx z, double r, double alpha) {
    const double px = kPi / r;
    const double mx = std::round(z.real() / px);
    const double ny = std::round(z.imag() / alpha);
    return std::abs(z - cx(mx * px, ny * alpha));
}

// Extra product factors needed once |Im z| pushes |q^{2l+1} e^{2r|Im z|}|
// above the on-axis decay.
int product_terms(const EllipticParams& par, double imz) {
    return par.product_truncation + static_cast<int>(std::ceil(std::abs(imz) / par.alpha)) + 2;
}

cx r_product_cx(cx z, const EllipticParams& par) {
    const double q = par.nome;
    const cx ep = std::exp(cx(0.0, 2.0 * par.r) * z);
    const cx em = 1.0 / ep;
    const int terms = product_terms(par, z.imag());
    cx qodd(q, 0.0); // q^{2l+1}
    cx out(1.0, 0.0);
    for (int l = 0; l < terms; ++l) {
        out *= (1.0 - qodd * ep) * (1.0 - qodd * em);
        qodd *= q * q;
    }
    return out;
}

double r_product_real(double x, const EllipticParams& par) {
    const double q = par.nome;
    const double c = std::cos(2.0 * par.r * x);
    double qodd = q;
    double out = 1.0;
    for (int l = 0; l < par.product_truncation; ++l) {
        out *= 1.0 - qodd * (2.0 * c - qodd);
        qodd *= q * q;
    }
    return out;
}

void require_strip(cx z, const EllipticParams& par, const char* who) {
    if (std::abs(z.imag()) >= 0.5 * par.alpha)
        throw domain_error(std::string(who) + ": Fourier form needs |Im z| < alpha/2");
}

// Terms of the cosine series oscillate and can vanish at special abscissae,
// so truncation must watch the decay envelope, never the terms themselves:
// |cos(n w)| <= e^{n |Im w|} and sinh(n t) >= e^{n t} (1 - e^{-2t}) / 2.
int fourier_terms_needed(cx z, const EllipticParams& par, double extra_log, const char* who) {
    const double ra = par.r * par.alpha;
    const double decay = ra - 2.0 * par.r * std::abs(z.imag()); // per-term log decrement
    const double lead = std::log(2.0 / (1.0 - std::exp(-2.0 * ra))) + extra_log;
    const double target = std::log(0.01 * par.epsilon);
    const int n = static_cast<int>(std::ceil((lead - target) / std::max(decay, 1e-12))) + 8;
    if (n > 2'000'000)
        throw conditioning_error(std::string(who) + ": evaluation too close to the strip boundary");
    return n;
}

// log R(z) by the cosine series, |Im z| < alpha/2.
cx log_r_fourier(cx z, const EllipticParams& par) {
    require_strip(z, par, "r_function");
    const double ra = par.r * par.alpha;
    const int terms = fourier_terms_needed(z, par, 0.0, "r_function");
    const cx w = 2.0 * par.r * z;
    cx sum(0.0, 0.0);
    for (int n = 1; n <= terms; ++n)
        sum += std::cos(static_cast<double>(n) * w) / (n * std::sinh(n * ra));
    return -sum;
}

// (log R)''(z): Fourier series inside the strip.
cx ddlog_r_fourier(cx z, const EllipticParams& par) {
    require_strip(z, par, "wp_tilde");
    const double ra = par.r * par.alpha;
    const int terms =
        fourier_terms_needed(z, par, std::log(4.0 * par.r * par.r) + 15.0, "wp_tilde");
    const cx w = 2.0 * par.r * z;
    cx sum(0.0, 0.0);
    for (int n = 1; n <= terms; ++n)
        sum += (4.0 * n * par.r * par.r) * std::cos(static_cast<double>(n) * w) / std::sinh(n * ra);
    return sum;
}

// (log R)''(z) from the product: 4r^2 sum_l [ u/(1-u)^2 + v/(1-v)^2 ],
// u = q^{2l+1} e^{2irz}, v = q^{2l+1} e^{-2irz}.  Converges off the zero set
// of R for any Im z.
cx ddlog_r_product(cx z, const EllipticParams& par) {
    const double q = par.nome;
    const cx ep = std::exp(cx(0.0, 2.0 * par.r) * z);
    const cx em = 1.0 / ep;
    const int terms = product_terms(par, z.imag());
    cx qodd(q, 0.0);
    cx sum(0.0, 0.0);
    for (int l = 0; l < terms; ++l) {
        const cx u = qodd * ep;
        const cx v = qodd * em;
        const cx du = 1.0 - u;
        const cx dv = 1.0 - v;
        sum += u / (du * du) + v / (dv * dv);
        qodd *= q * q;
    }
    return 4.0 * par.r * par.r * sum;
}

cx dddlog_r_product(cx z, const EllipticParams& par) {
    const double q = par.nome;
    const cx ep = std::exp(cx(0.0, 2.0 * par.r) * z);
    const cx em = 1.0 / ep;
    const int terms = product_terms(par, z.imag());
    cx qodd(q, 0.0);
    cx sum(0.0, 0.0);
    for (int l = 0; l < terms; ++l) {
        const cx u = qodd * ep;
        const cx v = qodd * em;
        const cx du = 1.0 - u;
        const cx dv = 1.0 - v;
        sum += u * (1.0 + u) / (du * du * du) - v * (1.0 + v) / (dv * dv * dv);
        qodd *= q * q;
    }
    return cx(0.0, 8.0 * par.r * par.r * par.r) * sum;
}

} // namespace

EllipticParams lattice_constants(double r, double alpha, double epsilon) {
    if (!(r > 0.0)) throw domain_error("lattice_constants: r must be positive");
    if (!(alpha > 0.0)) throw domain_error("lattice_constants: alpha must be positive");
    if (!(epsilon > 0.0)) throw domain_error("lattice_constants: epsilon must be positive");
    const double ra = r * alpha;
    if (ra < 0.05)
        throw conditioning_error("lattice_constants: r*alpha < 0.05, series too ill-conditioned");

    EllipticParams par;
    par.r = r;
    par.alpha = alpha;
    par.epsilon = epsilon;
    par.nome = std::exp(-ra);

    // Products: keep factors until q^{2k} drops below 1e-18.
    par.product_truncation = static_cast<int>(std::ceil(18.0 * std::log(10.0) / (2.0 * ra))) + 2;
    // On-axis cosine series: terms decay like q^n.
    par.fourier_truncation =
        std::max(8, static_cast<int>(std::ceil(std::log(std::max(0.01 * epsilon, 1e-300)) / -ra)) + 4);
    par.fourier_tail_bound =
        std::pow(par.nome, par.fourier_truncation + 1) / (1.0 - par.nome);

    double q2k = par.nome * par.nome;
    double prod = 1.0;
    for (int k = 0; k < par.product_truncation; ++k) {
        const double f = 1.0 - q2k;
        prod *= f * f;
        q2k *= par.nome * par.nome;
    }
    par.p = 2.0 * r * prod;

    // eta from the Laurent condition wp(z) = 1/z^2 + O(z^2): subtracting
    // r^2/sin^2(rx) (whose own constant is r^2/3) must leave -r^2/3 at x=0,
    // which gives eta = pi r/6 - 4 pi r sum_m m q^{2m}/(1-q^{2m}).
    double s1 = 0.0;
    double q2m = par.nome * par.nome;
    for (int m = 1; m < 4 * par.product_truncation; ++m) {
        const double term = m * q2m / (1.0 - q2m);
        s1 += term;
        if (term < 1e-20 && m > 4) break;
        q2m *= par.nome * par.nome;
    }
    par.eta = kPi * r / 6.0 - 4.0 * kPi * r * s1;

    // e_j = wp(omega_j): omega_1 on the real axis, omega_2 and omega_3 via
    // the half-shifted function at 0 and omega_1.
    const double om1 = par.omega1();
    par.e[0] = r * r + wp_regularized(om1, par);
    par.e[1] = (-ddlog_r_fourier(cx(0.0, 0.0), par) - 2.0 * par.eta * r / kPi).real();
    par.e[2] = (-ddlog_r_fourier(cx(om1, 0.0), par) - 2.0 * par.eta * r / kPi).real();
    return par;
}

std::complex<double> r_function(cx z, const EllipticParams& par, RForm form) {
    switch (form) {
    case RForm::product:
        return r_product_cx(z, par);
    case RForm::fourier:
        return std::exp(log_r_fourier(z, par));
    case RForm::automatic:
    default:
        if (std::abs(z.imag()) <= 0.25 * par.alpha)
            return std::exp(log_r_fourier(z, par));
        return r_product_cx(z, par);
    }
}

double r_function(double x, const EllipticParams& par) {
    return r_product_real(x, par);
}

std::complex<double> s_function(cx z, const EllipticParams& par) {
    // Product derived from R(z + i alpha/2) = i p e^{-irz} s(z):
    // s(z) = (sin rz / r) prod_k (1-q^{2k}e^{2irz})(1-q^{2k}e^{-2irz})/(1-q^{2k})^2.
    const double q = par.nome;
    const cx ep = std::exp(cx(0.0, 2.0 * par.r) * z);
    const cx em = 1.0 / ep;
    const int terms = product_terms(par, z.imag());
    double q2k = q * q;
    cx out = std::sin(par.r * z) / par.r;
    for (int k = 1; k <= terms; ++k) {
        const double d = 1.0 - q2k;
        out *= (1.0 - q2k * ep) * (1.0 - q2k * em) / (d * d);
        q2k *= q * q;
    }
    return out;
}

double s_function(double x, const EllipticParams& par) {
    const double q = par.nome;
    const double c = std::cos(2.0 * par.r * x);
    double q2k = q * q;
    double out = std::sin(par.r * x) / par.r;
    for (int k = 1; k <= par.product_truncation; ++k) {
        const double d = 1.0 - q2k;
        out *= (1.0 - q2k * (2.0 * c - q2k)) / (d * d);
        q2k *= q * q;
    }
    return out;
}

LogDerivatives log_derivatives(cx z, const EllipticParams& par) {
    LogDerivatives out;
    const double q = par.nome;
    const double tol = 1e-12 * std::max(1.0, std::abs(z));

    // s'/s: pole lattice is m*pi/r + i*n*alpha.
    if (lattice_distance(z, par.r, par.alpha) < tol)
        throw pole_error("log_derivatives: zero of s", z);
    {
        const cx ep = std::exp(cx(0.0, 2.0 * par.r) * z);
        const cx em = 1.0 / ep;
        const int terms = product_terms(par, z.imag());
        cx sum = par.r * std::cos(par.r * z) / std::sin(par.r * z);
        double q2k = q * q;
        for (int k = 1; k <= terms; ++k) {
            const cx u = q2k * ep;
            const cx v = q2k * em;
            sum += cx(0.0, 2.0 * par.r) * (v / (1.0 - v) - u / (1.0 - u));
            q2k *= q * q;
        }
        out.s_log_deriv = sum;
    }

    // R'/R: zeros of R sit on the lattice shifted by i*alpha/2.
    if (lattice_distance(z - cx(0.0, 0.5 * par.alpha), par.r, par.alpha) < tol)
        throw pole_error("log_derivatives: zero of R", z);
    if (std::abs(z.imag()) <= 0.25 * par.alpha) {
        const double ra = par.r * par.alpha;
        const cx w = 2.0 * par.r * z;
        const int terms = fourier_terms_needed(z, par, std::log(2.0 * par.r), "log_derivatives");
        cx sum(0.0, 0.0);
        for (int n = 1; n <= terms; ++n)
            sum += std::sin(static_cast<double>(n) * w) / std::sinh(n * ra);
        out.r_log_deriv = 2.0 * par.r * sum;
    } else {
        const cx ep = std::exp(cx(0.0, 2.0 * par.r) * z);
        const cx em = 1.0 / ep;
        const int terms = product_terms(par, z.imag());
        cx qodd(q, 0.0);
        cx sum(0.0, 0.0);
        for (int l = 0; l < terms; ++l) {
            const cx u = qodd * ep;
            const cx v = qodd * em;
            sum += v / (1.0 - v) - u / (1.0 - u);
            qodd *= q * q;
        }
        out.r_log_deriv = cx(0.0, 2.0 * par.r) * sum;
    }
    return out;
}

double s_log_derivative(double x, const EllipticParams& par) {
    const double q = par.nome;
    if (lattice_distance(cx(x, 0.0), par.r, par.alpha) < 1e-12 * std::max(1.0, std::abs(x)))
        throw pole_error("s_log_derivative: zero of s", cx(x, 0.0));
    double sum = par.r * std::cos(par.r * x) / std::sin(par.r * x);
    const double s2 = std::sin(2.0 * par.r * x);
    double q2k = q * q;
    for (int k = 1; k <= par.product_truncation; ++k) {
        // 2ir[v/(1-v) - u/(1-u)] for conjugate u,v collapses to 4r Im(u/(1-u))
        const double denom = 1.0 - q2k * (2.0 * std::cos(2.0 * par.r * x) - q2k);
        sum += 4.0 * par.r * q2k * s2 / denom;
        q2k *= q * q;
    }
    return sum;
}

double r_log_derivative(double x, const EllipticParams& par) {
    const double ra = par.r * par.alpha;
    double sum = 0.0;
    for (int n = 1; n <= par.fourier_truncation; ++n)
        sum += std::sin(2.0 * n * par.r * x) / std::sinh(n * ra);
    return 2.0 * par.r * sum;
}

std::complex<double> wp_tilde(cx z, const EllipticParams& par) {
    const double tol = 1e-12 * std::max(1.0, std::abs(z));
    if (lattice_distance(z - cx(0.0, 0.5 * par.alpha), par.r, par.alpha) < tol)
        throw pole_error("wp_tilde: pole", z);
    const cx dd = (std::abs(z.imag()) <= 0.25 * par.alpha) ? ddlog_r_fourier(z, par)
                                                           : ddlog_r_product(z, par);
    return -dd - 2.0 * par.eta * par.r / kPi;
}

double wp_tilde(double x, const EllipticParams& par) {
    const double ra = par.r * par.alpha;
    double sum = 0.0;
    for (int n = 1; n <= par.fourier_truncation; ++n)
        sum += 4.0 * n * par.r * par.r * std::cos(2.0 * n * par.r * x) / std::sinh(n * ra);
    return -sum - 2.0 * par.eta * par.r / kPi;
}

std::complex<double> wp(cx z, const EllipticParams& par) {
    const double tol = 1e-12 * std::max(1.0, std::abs(z));
    if (lattice_distance(z, par.r, par.alpha) < tol)
        throw pole_error("wp: pole", z);
    const cx w = z - cx(0.0, 0.5 * par.alpha);
    return -ddlog_r_product(w, par) - 2.0 * par.eta * par.r / kPi;
}

double wp(double x, const EllipticParams& par) {
    if (lattice_distance(cx(x, 0.0), par.r, par.alpha) < 1e-12 * std::max(1.0, std::abs(x)))
        throw pole_error("wp: pole", cx(x, 0.0));
    const double sn = std::sin(par.r * x);
    return par.r * par.r / (sn * sn) + wp_regularized(x, par);
}

std::complex<double> wp_prime(cx z, const EllipticParams& par) {
    const double tol = 1e-12 * std::max(1.0, std::abs(z));
    if (lattice_distance(z, par.r, par.alpha) < tol)
        throw pole_error("wp_prime: pole", z);
    return -dddlog_r_product(z - cx(0.0, 0.5 * par.alpha), par);
}

double wp_prime(double x, const EllipticParams& par) {
    if (lattice_distance(cx(x, 0.0), par.r, par.alpha) < 1e-12 * std::max(1.0, std::abs(x)))
        throw pole_error("wp_prime: pole", cx(x, 0.0));
    const double sn = std::sin(par.r * x);
    const double r3 = par.r * par.r * par.r;
    // derivative of the regularized cosine series plus the singular part
    double sum = 0.0;
    double q2m = par.nome * par.nome;
    for (int m = 1; m <= 2 * par.product_truncation; ++m) {
        sum += 16.0 * r3 * m * m * q2m / (1.0 - q2m) * std::sin(2.0 * m * par.r * x);
        q2m *= par.nome * par.nome;
    }
    return -2.0 * r3 * std::cos(par.r * x) / (sn * sn * sn) + sum;
}

double wp_regularized(double x, const EllipticParams& par) {
    double sum = 0.0;
    double q2m = par.nome * par.nome;
    for (int m = 1; m <= 2 * par.product_truncation; ++m) {
        sum += m * q2m / (1.0 - q2m) * std::cos(2.0 * m * par.r * x);
        q2m *= par.nome * par.nome;
    }
    return -2.0 * par.eta * par.r / kPi - 8.0 * par.r * par.r * sum;
}

} // namespace heun
