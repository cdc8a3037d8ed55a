#include "heunlab/couplings.hpp"

#include <algorithm>
#include <cmath>

namespace heun {

std::array<double, 4> CouplingVector::lambda() const {
    return {g[0] - 0.5, g[1] - 0.5, g[2] - 0.5, g[3] - 0.5};
}

bool CouplingVector::self_dual() const {
    const double scale = 1.0 + std::abs(g[0]) + std::abs(g[1]) + std::abs(g[2]) + std::abs(g[3]);
    return std::abs((g[0] + g[2]) - (g[1] + g[3])) <= 1e-14 * scale;
}

CouplingVector dual(const CouplingVector& v) {
    const auto& g = v.g;
    return CouplingVector{{0.5 * (g[0] + g[1] - g[2] + g[3]),
                           0.5 * (g[0] + g[1] + g[2] - g[3]),
                           0.5 * (-g[0] + g[1] + g[2] + g[3]),
                           0.5 * (g[0] - g[1] + g[2] + g[3])}};
}

std::array<double, 4> to_c(const CouplingVector& v) {
    const auto& g = v.g;
    return {g[0] + g[3] - 1.0, g[1] + g[2] - 1.0, g[1] - g[2], g[0] - g[3]};
}

CouplingVector from_c(const std::array<double, 4>& c) {
    // lambda0 = (c0+c3)/2, lambda3 = (c0-c3)/2, lambda1 = (c1+c2)/2, lambda2 = (c1-c2)/2
    return CouplingVector{{0.5 * (c[0] + c[3]) + 0.5, 0.5 * (c[1] + c[2]) + 0.5,
                           0.5 * (c[1] - c[2]) + 0.5, 0.5 * (c[0] - c[3]) + 0.5}};
}

MembershipFlags membership(const CouplingVector& v) {
    MembershipFlags f;
    const CouplingVector d = dual(v);
    f.margin_g0 = v[0] + 0.5;
    f.margin_g1 = v[1] + 0.5;
    f.margin_g0d = d[0] + 0.5;
    f.margin_g1d = d[1] + 0.5;
    f.margin_sg = v.s_g();
    f.margin_orbit = v[0] + v[1] + 2.0 - v[2] - v[3];

    const auto c = to_c(v);
    int k = 0;
    for (int mu = 0; mu < 4; ++mu)
        for (int nu = mu + 1; nu < 4; ++nu)
            f.c_pair_margins[static_cast<size_t>(k++)] = c[static_cast<size_t>(mu)] + c[static_cast<size_t>(nu)] + 2.0;

    f.in_tilde_pi = f.margin_g0 > 0.0 && f.margin_g1 > 0.0;
    f.in_pi = f.in_tilde_pi && f.margin_g0d > 0.0 && f.margin_g1d > 0.0;
    f.in_pi_r = f.in_pi && f.margin_sg > 0.0;
    f.in_pi_g = f.in_pi_r && f.margin_orbit > 0.0;
    return f;
}

GroupElement compose(const GroupElement& a, const GroupElement& b) {
    // (a∘b).c = a.(b.c):  ((a∘b).c)[i] = (b.c)[a.perm[i]] = c[b.perm[a.perm[i]]]
    GroupElement out;
    for (int i = 0; i < 4; ++i)
        out.perm[static_cast<size_t>(i)] = b.perm[static_cast<size_t>(a.perm[static_cast<size_t>(i)])];
    return out;
}

GroupElement inverse(const GroupElement& a) {
    GroupElement out;
    for (int i = 0; i < 4; ++i)
        out.perm[static_cast<size_t>(a.perm[static_cast<size_t>(i)])] = i;
    return out;
}

std::string one_line(const GroupElement& a) {
    std::string s;
    for (int i = 0; i < 4; ++i) s += static_cast<char>('0' + a.perm[static_cast<size_t>(i)]);
    return s;
}

CouplingVector apply(const GroupElement& w, const CouplingVector& v) {
    const auto c = to_c(v);
    std::array<double, 4> cp{};
    for (int i = 0; i < 4; ++i) cp[static_cast<size_t>(i)] = c[static_cast<size_t>(w.perm[static_cast<size_t>(i)])];
    return from_c(cp);
}

GroupElement identity_element() { return GroupElement{{0, 1, 2, 3}}; }
GroupElement dual_element() { return GroupElement{{0, 1, 3, 2}}; }
GroupElement flip_g2_element() { return GroupElement{{0, 2, 1, 3}}; }
GroupElement flip_g3_element() { return GroupElement{{3, 1, 2, 0}}; }
GroupElement mirror_element() { return GroupElement{{1, 0, 3, 2}}; }
GroupElement tilde_element() { return GroupElement{{0, 2, 3, 1}}; }

const std::vector<GroupElement>& s4_elements() {
    static const std::vector<GroupElement> all = [] {
        std::vector<GroupElement> v;
        std::array<int, 4> p{0, 1, 2, 3};
        do {
            v.push_back(GroupElement{p});
        } while (std::next_permutation(p.begin(), p.end()));
        return v;
    }();
    return all;
}

std::vector<OrbitPoint> s4_orbit(const CouplingVector& v) {
    std::vector<OrbitPoint> orbit;
    orbit.reserve(24);
    for (const auto& w : s4_elements()) {
        OrbitPoint pt;
        pt.element = w;
        pt.g = apply(w, v);
        pt.flags = membership(pt.g);
        orbit.push_back(pt);
    }
    return orbit;
}

} // namespace heun
