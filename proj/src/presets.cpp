#include "heunlab/presets.hpp"

namespace heun {

const std::vector<Preset>& all_presets() {
    static const std::vector<Preset> presets = {
        {"0011", {{0, 0, 1, 1}}, "self-dual; cosh singular-value ladder"},
        {"1100", {{1, 1, 0, 0}}, "self-dual; shifted cosh ladder"},
        {"1111", {{1, 1, 1, 1}}, "self-dual; sinh ladder with linear factor"},
        {"1001", {{1, 0, 0, 1}}, "self-dual; half-integer cosh ladder"},
        {"1010", {{1, 0, 1, 0}}, "crossed; half-integer sinh ladder"},
        {"1101", {{1, 1, 0, 1}}, "dual has nontrivial potential, even ladder"},
        {"1101-dual", {{1.5, 0.5, 0.5, 0.5}}, "nontrivial potential, E_n=(2n+2)^2 r^2"},
        {"1011", {{1, 0, 1, 1}}, "dual has nontrivial potential, odd ladder"},
        {"1011-dual", {{0.5, 0.5, 0.5, 1.5}}, "nontrivial potential, E_n=(2n+1)^2 r^2"},
        {"1000", {{1, 0, 0, 0}}, "dual has signed coupling"},
        {"1000-dual", {{0.5, 0.5, -0.5, 0.5}}, "nontrivial potential, E_n=(2n+1)^2 r^2"},
        {"0000", {{0, 0, 0, 0}}, "zero couplings; rank-one integral operator"},
    };
    return presets;
}

std::optional<CouplingVector> find_preset(std::string_view name) {
    for (const auto& p : all_presets())
        if (p.name == name) return p.g;
    return std::nullopt;
}

} // namespace heun
