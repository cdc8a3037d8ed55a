#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace heun {

// Invalid or out-of-domain parameters: non-positive periods, couplings
// outside the admissible region, non-integrable quadrature exponents.
class domain_error : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Evaluation at (or numerically indistinguishable from) a pole or a zero
// of the function being log-differentiated.  Carries the offending point.
class pole_error : public domain_error {
public:
    pole_error(const std::string& what, std::complex<double> where)
        : domain_error(what), location(where) {}
    std::complex<double> location;
};

// Truncated series cannot reach the requested tolerance: the nome is too
// close to 1, or the evaluation point too close to the strip boundary.
class conditioning_error : public domain_error {
public:
    using domain_error::domain_error;
};

} // namespace heun
