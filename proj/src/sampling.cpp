#include "heunlab/sampling.hpp"

#include <cmath>

namespace heun {

CouplingVector sample_pi_r(std::mt19937_64& rng, double margin) {
    std::uniform_real_distribution<double> u(-0.45, 1.45);
    for (;;) {
        CouplingVector g{{u(rng), u(rng), u(rng), u(rng)}};
        const MembershipFlags f = membership(g);
        if (f.in_pi && f.margin_g0 > margin && f.margin_g1 > margin && f.margin_g0d > margin &&
            f.margin_g1d > margin && f.margin_sg > 2.0 * margin)
            return g;
    }
}

CouplingVector sample_pi_g(std::mt19937_64& rng, double margin) {
    std::uniform_real_distribution<double> u(-0.85, 1.15);
    for (;;) {
        std::array<double, 4> c{u(rng), u(rng), u(rng), u(rng)};
        bool ok = true;
        for (int i = 0; i < 4 && ok; ++i)
            for (int j = i + 1; j < 4 && ok; ++j)
                if (!(c[static_cast<size_t>(i)] + c[static_cast<size_t>(j)] + 2.0 > margin)) ok = false;
        if (!ok) continue;
        const CouplingVector g = from_c(c);
        if (membership(g).in_pi_g) return g;
    }
}

CouplingVector sample_rank_one(std::mt19937_64& rng, double margin) {
    std::uniform_real_distribution<double> u(-0.35, 1.2);
    for (;;) {
        CouplingVector g{{u(rng), u(rng), u(rng), 0.0}};
        g.g[3] = -(g[0] + g[1] + g[2]); // exact zero half-sum
        const MembershipFlags f = membership(g);
        if (f.in_pi && f.margin_g0 > margin && f.margin_g1 > margin && f.margin_g0d > margin &&
            f.margin_g1d > margin)
            return g;
    }
}

CouplingVector sample_pi_boundary(std::mt19937_64& rng, bool inside, double min_margin,
                                  double max_margin) {
    std::uniform_real_distribution<double> u(0.1, 1.2);
    std::uniform_real_distribution<double> m(min_margin, max_margin);
    std::uniform_int_distribution<int> which(0, 3);
    for (;;) {
        // start comfortably inside, then push one bound to the requested side
        CouplingVector g{{u(rng), u(rng), u(rng), u(rng)}};
        const int k = which(rng);
        const double target = -0.5 + (inside ? m(rng) : -m(rng));
        switch (k) {
        case 0: g.g[0] = target; break;
        case 1: g.g[1] = target; break;
        case 2: { // dual-side bound g0' = (g0+g1-g2+g3)/2
            g.g[2] = g[0] + g[1] + g[3] - 2.0 * target;
            break;
        }
        case 3: { // g1' = (g0+g1+g2-g3)/2
            g.g[3] = g[0] + g[1] + g[2] - 2.0 * target;
            break;
        }
        }
        const MembershipFlags f = membership(g);
        if (f.in_pi != inside) continue;
        // ensure the three untouched bounds stay clear and the binding one
        // has the requested margin size
        const double binding = std::min({f.margin_g0, f.margin_g1, f.margin_g0d, f.margin_g1d});
        if (inside && binding >= min_margin) return g;
        if (!inside && binding <= -min_margin && binding >= -max_margin) return g;
    }
}

} // namespace heun
