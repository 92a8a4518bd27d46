#pragma once

#include <string>
#include <variant>
#include <vector>

#include "levinoise/cli/config.hpp"

namespace levinoise::cli {

using Cell = std::variant<double, std::string>;

struct Table {
  std::string file;  // file name inside the output directory
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

/// Compute every table of a run. Sweep points are evaluated on up to
/// `threads` workers; row order is fixed by grid index.
std::vector<Table> compute(const RunConfig& cfg, unsigned threads);

/// CSV text: header row, comma separated, LF endings, %.8e numbers.
std::string to_csv(const Table& t);

std::string sha256_hex(const std::string& data);

/// Manifest JSON text for the given CSV outputs (file name, CSV text).
std::string manifest(const RunConfig& cfg,
                     const std::vector<std::pair<const Table*, std::string>>& outputs);

struct RunSummary {
  std::string directory;
  std::vector<std::string> files;
};

/// compute + write CSVs and the manifest into `directory` (created if needed).
RunSummary run(const RunConfig& cfg, const std::string& directory, unsigned threads);

/// Load a config from a path or a built-in recipe name. Throws ConfigError.
RunConfig load_config(const std::string& path_or_recipe);

}  // namespace levinoise::cli
