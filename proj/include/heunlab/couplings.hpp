#pragma once

// Coupling algebra for the four-coupling family.
//
// A coupling vector g in R^4 has two companion coordinate systems:
//   lambda = g - (1,1,1,1)/2, and
//   c = (lambda0+lambda3, lambda1+lambda2, lambda1-lambda2, lambda0-lambda3),
// in which the isospectral transformations act as pure permutations of the
// four c-entries.  The dual map g' = J g, with J the reflection about the
// unit vector (1,-1,1,-1)/2, is the transposition c2 <-> c3.
//
// Nested admissibility regions (all inequalities strict):
//   tilde_pi : g0, g1 > -1/2                （operator symmetric/definable)
//   pi       : additionally g0', g1' > -1/2  (kernel square integrable)
//   pi_r     : additionally s_g > 0          (full singular value theory)
//   pi_g     : additionally g0+g1+2 > g2+g3  (whole 24-element orbit stays in)
// In c-coordinates the six pi_g constraints read c_mu + c_nu > -2 for all
// pairs, manifestly permutation invariant.

#include <array>
#include <string>
#include <vector>

namespace heun {

struct CouplingVector {
    std::array<double, 4> g{};

    double operator[](int t) const { return g[static_cast<size_t>(t)]; }
    std::array<double, 4> lambda() const;
    double s_g() const { return 0.5 * (g[0] + g[1] + g[2] + g[3]); }
    bool self_dual() const; // g0 + g2 == g1 + g3 up to 1e-14
};

CouplingVector dual(const CouplingVector& v);
std::array<double, 4> to_c(const CouplingVector& v);
CouplingVector from_c(const std::array<double, 4>& c);

struct MembershipFlags {
    bool in_tilde_pi = false;
    bool in_pi = false;
    bool in_pi_r = false;
    bool in_pi_g = false;
    // slack of every defining inequality (positive inside, strict bounds)
    double margin_g0 = 0, margin_g1 = 0;    // g0 + 1/2, g1 + 1/2
    double margin_g0d = 0, margin_g1d = 0;  // dual-side bounds
    double margin_sg = 0;                   // s_g
    double margin_orbit = 0;                // g0 + g1 + 2 - g2 - g3
    std::array<double, 6> c_pair_margins{}; // c_mu + c_nu + 2 over the six pairs
};

// Evaluates both the g-form and c-form inequality systems; they agree by
// construction and tests enforce it.  Boundary points are excluded.
MembershipFlags membership(const CouplingVector& v);

// Permutation of {0,1,2,3} acting on c-indices: (w.c)[i] = c[perm[i]].
struct GroupElement {
    std::array<int, 4> perm{0, 1, 2, 3};
    bool operator==(const GroupElement&) const = default;
};

GroupElement compose(const GroupElement& a, const GroupElement& b); // a after b
GroupElement inverse(const GroupElement& a);
std::string one_line(const GroupElement& a);

CouplingVector apply(const GroupElement& w, const CouplingVector& v);

// Named generators / distinguished elements.
GroupElement identity_element();
GroupElement dual_element();     // c2 <-> c3
GroupElement flip_g2_element();  // g2 -> 1-g2, i.e. c1 <-> c2
GroupElement flip_g3_element();  // g3 -> 1-g3, i.e. c0 <-> c3
GroupElement mirror_element();   // (g0,g1,g2,g3) -> (g1,g0,g3,g2)
GroupElement tilde_element();    // third coset representative (c0,c1,c2,c3)->(c0,c2,c3,c1)

// All 24 elements, lexicographic in one-line notation.
const std::vector<GroupElement>& s4_elements();

struct OrbitPoint {
    GroupElement element;
    CouplingVector g;
    MembershipFlags flags;
};

// The full 24-point orbit of v under c-permutations, lex ordered.
std::vector<OrbitPoint> s4_orbit(const CouplingVector& v);

} // namespace heun
