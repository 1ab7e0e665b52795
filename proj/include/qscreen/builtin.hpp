#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "qscreen/design.hpp"

namespace qscreen {

struct EmbeddedDesign {
  std::string name;
  Design design;
  std::string provenance;
};

/// Names accepted by builtin_design(): "D1", "D2", "L18".
std::vector<std::string> builtin_names();

/// Throws std::invalid_argument for an unknown name.
const EmbeddedDesign& builtin_design(std::string_view name);

}  // namespace qscreen
