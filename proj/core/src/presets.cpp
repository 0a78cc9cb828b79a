#include "vennfan/presets.hpp"

#include <algorithm>

namespace vennfan {

namespace {

Preset make(std::string id, std::string title, Variant v, int n, double p, DecayScheme decay) {
  return Preset{std::move(id), std::move(title), CurveSpec(v, n, p, decay)};
}

std::vector<Preset> build() {
  using V = Variant;
  std::vector<Preset> out;
  out.push_back(make("fig-sine-linear-n6", "sine, linear decay, p=1/3", V::Sine, 6, 1.0 / 3, Linear{}));
  out.push_back(make("fig-sine-exp-n6", "sine, exponential decay b=4/5, p=1/5", V::Sine, 6, 1.0 / 5,
                     ModifiedExponential{0.8, 0.0}));
  out.push_back(make("fig-cosine-linear-n6", "cosine, linear decay, p=1/2", V::Cosine, 6, 1.0 / 2, Linear{}));
  out.push_back(make("fig-cosine-weights-n6", "cosine, p=1/5, delta=1/3, eps=1/9", V::Cosine, 6, 1.0 / 5,
                     ModifiedLinear{1.0 / 3, 1.0 / 9}));
  out.push_back(make("fig-cosine-weights-n7", "cosine, p=1/5, delta=1/3, eps=1/9", V::Cosine, 7, 1.0 / 5,
                     ModifiedLinear{1.0 / 3, 1.0 / 9}));
  for (V v : {V::Sine, V::Cosine}) {
    const std::string name = to_string(v);
    out.push_back(make("fig-" + name + "-extreme-n6", name + ", extreme shaping p=1/1000, b=5/6", v, 6, 1e-3,
                       ModifiedExponential{5.0 / 6, 0.0}));
    out.push_back(make("fig-" + name + "-unshaped-n6", name + ", unshaped p=1, b=1/2", v, 6, 1.0,
                       ModifiedExponential{0.5, 0.0}));
    out.push_back(make("fig-" + name + "-n6", name + ", p=1/5, delta=1/4, eps=1/7", v, 6, 1.0 / 5,
                       ModifiedLinear{1.0 / 4, 1.0 / 7}));
    out.push_back(make("fig-" + name + "-n7", name + ", p=1/7, delta=1/4, eps=1/7", v, 7, 1.0 / 7,
                       ModifiedLinear{1.0 / 4, 1.0 / 7}));
    out.push_back(make("fig-" + name + "-n8", name + ", p=1/7, delta=1/5, eps=1/8", v, 8, 1.0 / 7,
                       ModifiedLinear{1.0 / 5, 1.0 / 8}));
    out.push_back(make("fig-" + name + "-n9", name + ", p=1/7, delta=1/6, eps=1/8", v, 9, 1.0 / 7,
                       ModifiedLinear{1.0 / 6, 1.0 / 8}));
    for (int n = 2; n <= 5; ++n)
      out.push_back(make(name + "-n" + std::to_string(n), name + ", p=1/5, delta=1/4, eps=1/7", v, n, 1.0 / 5,
                         ModifiedLinear{1.0 / 4, 1.0 / 7}));
  }
  return out;
}

}  // namespace

const std::vector<Preset>& presets() {
  static const std::vector<Preset> table = build();
  return table;
}

std::optional<Preset> find_preset(std::string_view id) {
  const auto& table = presets();
  auto it = std::find_if(table.begin(), table.end(), [id](const Preset& p) { return p.id == id; });
  if (it == table.end()) return std::nullopt;
  return *it;
}

}  // namespace vennfan
