#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "vennfan/curves.hpp"

namespace vennfan {

struct Preset {
  std::string id;
  std::string title;
  CurveSpec spec;
};

/// Every shipped parameter set, in listing order.
const std::vector<Preset>& presets();

std::optional<Preset> find_preset(std::string_view id);

}  // namespace vennfan
