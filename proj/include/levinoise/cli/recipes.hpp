#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace levinoise::cli {

struct Recipe {
  std::string_view name;
  std::string_view text;  // JSON config
};

/// Built-in figure recipes in display order.
const std::vector<Recipe>& recipes();
std::optional<Recipe> find_recipe(std::string_view name);

}  // namespace levinoise::cli
