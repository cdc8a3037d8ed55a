#pragma once

// Closed-form spectra for the distinguished coupling points.  Each entry
// carries a human-readable formula string so reports can cite exactly what
// a computed number was compared against.

#include <functional>
#include <optional>
#include <string>

#include "heunlab/couplings.hpp"
#include "heunlab/elliptic.hpp"

namespace heun {

struct ClosedFormLadder {
    std::string formula;                // e.g. "nu[n] = pi/(p*cosh(n*r*alpha))"
    std::function<double(int)> value;   // n -> reference value
};

// Singular value ladder of the integral operator at g, when known.
std::optional<ClosedFormLadder> closed_form_singular_values(const CouplingVector& g,
                                                            const EllipticParams& par);

// Eigenvalue ladder of the differential operator at g, when known
// (the couplings whose potential vanishes and their duals).
std::optional<ClosedFormLadder> closed_form_eigenvalues(const CouplingVector& g,
                                                        const EllipticParams& par);

} // namespace heun
