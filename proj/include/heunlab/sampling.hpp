#pragma once

// Seeded coupling samplers used by experiments and the verification suite.
// Margins keep every draw safely off the region boundaries so finite
// discretizations resolve the comparisons being made.

#include <random>

#include "heunlab/couplings.hpp"

namespace heun {

// g with s_g > 0 and all integrability bounds cleared by `margin`.
CouplingVector sample_pi_r(std::mt19937_64& rng, double margin = 0.1);

// g whose whole 24-element orbit stays admissible (sampled in c-space).
CouplingVector sample_pi_g(std::mt19937_64& rng, double margin = 0.1);

// g with vanishing coupling half-sum inside the square-integrable region.
CouplingVector sample_rank_one(std::mt19937_64& rng, double margin = 0.1);

// g straddling the square-integrability boundary: exactly one of the four
// defining bounds is violated for half of the draws; |margin| of the binding
// inequality stays in [min_margin, max_margin].
CouplingVector sample_pi_boundary(std::mt19937_64& rng, bool inside, double min_margin = 0.05,
                                  double max_margin = 0.3);

} // namespace heun
