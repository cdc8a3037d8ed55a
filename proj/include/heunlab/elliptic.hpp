#pragma once

// Elliptic building blocks on the period lattice (pi/2r, i*alpha/2).
//
// Everything here is expressed through two theta-like functions:
//
//   R(z) = prod_{l>=0} (1 - q^{2l+1} e^{2irz}) (1 - q^{2l+1} e^{-2irz}),
//          q = e^{-r*alpha},
//
// which is entire, even, pi/r-periodic and zero-free in |Im z| < alpha/2,
// with the equivalent strip representation
//
//   R(z) = exp( - sum_{n>=1} cos(2nrz) / (n sinh(n r alpha)) ),
//
// and its odd companion s(z), normalized so that s(z)/z -> 1 at the origin,
// tied to R by the half-period shift
//
//   R(z + i alpha/2) = i p e^{-irz} s(z),   p = 2r prod_{k>=1} (1 - q^{2k})^2.
//
// Both satisfy f(z + i alpha) = -exp(r alpha - 2irz) f(z).
//
// The Weierstrass function of the lattice is recovered from the logarithmic
// second derivative of R:  wp(z + i alpha/2) = -(log R)''(z) - 2 eta r / pi.
// The constant eta is fixed by requiring the Laurent expansion
// wp(z) = 1/z^2 + O(z^2), i.e. no constant term; this pins down the same
// normalization that makes s(z)/z -> 1.
//
// All evaluators are pure functions of (z, params); EllipticParams is
// immutable after construction and safe to share across threads.

#include <array>
#include <complex>

#include "heunlab/errors.hpp"

namespace heun {

struct EllipticParams {
    double r = 0.0;       // inverse length scale; real half-period pi/2r
    double alpha = 0.0;   // imaginary period scale; half-period i*alpha/2
    double epsilon = 0.0; // relative precision target for series tails
    double nome = 0.0;    // q = e^{-r*alpha}, in (0,1)
    double p = 0.0;       // 2r prod (1-q^{2k})^2
    double eta = 0.0;     // additive constant of the wp <-> (log R)'' relation
    std::array<double, 3> e{}; // wp at the half-periods omega_1..omega_3
    int fourier_truncation = 0;
    int product_truncation = 0;
    double fourier_tail_bound = 0.0; // bound on the dropped on-axis cosine tail

    double omega1() const { return 1.5707963267948966192313216916397514 / r; } // pi/(2r)
};

// Populates every derived constant from (r, alpha, epsilon).  Throws
// domain_error for non-positive inputs and conditioning_error when
// r*alpha < 0.05 (series too slowly convergent; no modular transform here).
EllipticParams lattice_constants(double r, double alpha, double epsilon);

enum class RForm {
    automatic, // Fourier deep inside the strip, product elsewhere
    product,   // entire-function product, valid everywhere
    fourier    // cosine series, only for |Im z| < alpha/2
};

std::complex<double> r_function(std::complex<double> z, const EllipticParams& par,
                                RForm form = RForm::automatic);
double r_function(double x, const EllipticParams& par); // real-axis fast path

std::complex<double> s_function(std::complex<double> z, const EllipticParams& par);
double s_function(double x, const EllipticParams& par);

struct LogDerivatives {
    std::complex<double> s_log_deriv; // s'/s
    std::complex<double> r_log_deriv; // R'/R
};

// Throws pole_error at zeros of s (the period lattice) resp. of R
// (the lattice shifted by i*alpha/2).
LogDerivatives log_derivatives(std::complex<double> z, const EllipticParams& par);
double s_log_derivative(double x, const EllipticParams& par);
double r_log_derivative(double x, const EllipticParams& par);

// Weierstrass wp, its half-shift wp~(z) = wp(z + i alpha/2), and wp'.
// Throws pole_error on the respective pole lattices.
std::complex<double> wp(std::complex<double> z, const EllipticParams& par);
double wp(double x, const EllipticParams& par);
std::complex<double> wp_tilde(std::complex<double> z, const EllipticParams& par);
double wp_tilde(double x, const EllipticParams& par);
std::complex<double> wp_prime(std::complex<double> z, const EllipticParams& par);
double wp_prime(double x, const EllipticParams& par);

// wp(x) - r^2/sin^2(rx) with the singular part removed analytically,
// term by term; smooth on the closed interval [0, pi/2r].  At x = 0 the
// value is exactly -r^2/3 (the Laurent constant of the subtracted term).
double wp_regularized(double x, const EllipticParams& par);

} // namespace heun
