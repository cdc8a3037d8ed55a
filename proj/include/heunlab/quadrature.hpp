#pragma once

// Gauss-Jacobi rules for the interval geometry used throughout: the map
// y = cos(2rx) sends x in (0, pi/2r) to y in (-1, 1) and turns the
// trigonometric endpoint weight sin(rx)^{2a'} cos(rx)^{2b'} into the Jacobi
// weight (1-y)^a (1+y)^b (up to constants).  A rule built for exponents
// (a, b) therefore integrates integrands with endpoint behavior x^{2a} and
// (pi/2r - x)^{2b} times anything analytic in cos(2rx).

#include <vector>

namespace heun {

struct QuadratureRule {
    std::vector<double> nodes;    // x in (0, pi/2r), strictly interior, ascending
    std::vector<double> y_nodes;  // cos(2 r x), aligned with nodes (descending)
    std::vector<double> weights;  // Gauss weights in y: sum w_k F(y_k) ~ int (1-y)^a (1+y)^b F(y) dy
    double exponent_left = 0.0;   // a
    double exponent_right = 0.0;  // b
    int order = 0;                // number of points; exact through degree 2*order-1
    double r = 1.0;
};

// Golub-Welsch construction.  Requires a, b > -1 (integrability) and m >= 1.
QuadratureRule jacobi_rule(int m, double a, double b, double r = 1.0);

// Zeroth moment of the Jacobi weight: 2^{a+b+1} B(a+1, b+1).
double jacobi_mu0(double a, double b);

// Orthonormal polynomials for (1-y)^a (1+y)^b; fills values of p_0..p_{count-1} at y.
void jacobi_orthonormal(int count, double a, double b, double y, double* out);

} // namespace heun
