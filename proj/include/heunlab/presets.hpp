#pragma once

// Named coupling presets: the distinguished points with closed-form spectra
// plus their duals, addressable from the command line.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "heunlab/couplings.hpp"

namespace heun {

struct Preset {
    std::string name;
    CouplingVector g;
    std::string note;
};

const std::vector<Preset>& all_presets();
std::optional<CouplingVector> find_preset(std::string_view name);

} // namespace heun
