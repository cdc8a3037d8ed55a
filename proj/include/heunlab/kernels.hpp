#pragma once

// Weight, kernel and potential evaluators built on the elliptic layer.
//
//   w(g;x)     = p^{2g0+2g1} s(x)^{2g0} s(w1-x)^{2g1} R(x)^{2g2} R(w1-x)^{2g3},
//                w1 = pi/2r; positive on (0, w1), endpoint behavior x^{2g0}
//                and (w1-x)^{2g1}.
//   S(g;x,y)   = exp(-s_g log[R(x+y) R(x-y)]); depends on g only through the
//                half-sum s_g.  Fourier form on the real square:
//                exp(2 s_g sum_n cos(2nrx)cos(2nry)/(n sinh(n r alpha))).
//   Psi(g;x,y) = w(g;x)^{1/2} S(g;x,y) w(g';y)^{1/2}, g' the dual coupling.
//                Square integrable on the square iff g lies in pi.
//   V(g;x)     = sum_t g_t (g_t - 1) wp(x + omega_t); V_t its trigonometric
//                limit; V_d = V_t - V extends analytically to [0, w1].
//
// Interior evaluations accumulate logarithms of the positive factors and
// exponentiate once, so half-integer powers near the endpoints neither
// underflow nor lose relative precision.

#include "heunlab/couplings.hpp"
#include "heunlab/elliptic.hpp"

namespace heun {

enum class KernelForm { fourier, product };

// w(g;x) on the closed interval.  Endpoint limits: 0 where the local
// exponent is positive, +infinity (returned, not thrown) where negative.
double weight(const CouplingVector& g, double x, const EllipticParams& par);

// sqrt( w(g;x) / [sin(rx)^{2g0} cos(rx)^{2g1}] ): the analytic, strictly
// positive part of w^{1/2} on the closed interval.
double weight_ratio_sqrt(const CouplingVector& g, double x, const EllipticParams& par);

double s_kernel(double s_g, double x, double y, const EllipticParams& par,
                KernelForm form = KernelForm::fourier);
double s_kernel(const CouplingVector& g, double x, double y, const EllipticParams& par,
                KernelForm form = KernelForm::fourier);

double psi_kernel(const CouplingVector& g, double x, double y, const EllipticParams& par);

struct HsNormResult {
    bool finite = false;   // equivalent to membership(g).in_pi
    double estimate = 0.0; // quadrature value of the squared kernel when finite
};
HsNormResult hs_norm_finite(const CouplingVector& g, const EllipticParams& par, int quad_size = 80);

// V(g;x) on the open interval; pole_error at an endpoint whose coupling
// product g_t(g_t-1) does not vanish.
double potential(const CouplingVector& g, double x, const EllipticParams& par);
// r^2 g0(g0-1)/sin^2(rx) + r^2 g1(g1-1)/cos^2(rx)
double potential_trig(double g0, double g1, double x, double r);
// V_t - V through analytically regularized pieces; valid on [0, pi/2r].
double potential_diff(const CouplingVector& g, double x, const EllipticParams& par);

} // namespace heun
