#pragma once

#include <string>

#include "trimer/spin_model.hpp"

namespace trimer {

// Parameter file schema (energies in Kelvin, pairs exactly [1,2],[2,3],[3,1]):
// {
//   "name":  "label",
//   "bonds": [ {"pair":[1,2], "jx":.., "jy":.., "jz":..}, ... ],
//   "dm":    [ {"pair":[1,2], "dx":.., "dy":.., "dz":..}, ... ],
//   "g":     [ {"site":1, "gx":.., "gy":.., "gz":..}, ... ],
//   "mu_b_hat": 0.6717156644        (optional)
// }
// A missing key raises ValidationError naming the key.
CompoundParams params_from_json_text(const std::string& text);
CompoundParams load_params_file(const std::string& path);

std::string params_to_json_text(const CompoundParams& params, int indent = 2);

} // namespace trimer
