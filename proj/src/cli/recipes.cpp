#include "levinoise/cli/recipes.hpp"

#include <algorithm>

namespace levinoise::cli {

// Generated at configure time from recipes/*.json.
extern const std::vector<Recipe>& embedded_recipes();

const std::vector<Recipe>& recipes() {
  static const std::vector<Recipe> ordered = [] {
    static constexpr std::string_view order[] = {"fig2",  "fig3",  "fig5",  "fig6",  "fig8",
                                                 "fig9",  "fig11", "fig12", "fig13", "compare"};
    std::vector<Recipe> out;
    const auto& all = embedded_recipes();
    for (auto name : order) {
      auto it = std::find_if(all.begin(), all.end(), [&](const Recipe& r) { return r.name == name; });
      if (it != all.end()) out.push_back(*it);
    }
    for (const auto& r : all)
      if (std::find(std::begin(order), std::end(order), r.name) == std::end(order)) out.push_back(r);
    return out;
  }();
  return ordered;
}

std::optional<Recipe> find_recipe(std::string_view name) {
  for (const auto& r : recipes())
    if (r.name == name) return r;
  return std::nullopt;
}

}  // namespace levinoise::cli
