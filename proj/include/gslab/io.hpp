#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "gslab/colored_graph.hpp"
#include "gslab/decomposition.hpp"
#include "gslab/generators.hpp"
#include "gslab/operators.hpp"

namespace gslab {

using Json = nlohmann::json;

/// {"n", "d", "x_alphabet", "s_alphabet", "colors": [...],
///  "edges": [[u, v, color_uv, color_vu], ...]}. Colors default to 0.
Json graph_to_json(const ColoredGraph& g);
ColoredGraph graph_from_json(const Json& j);

/// {"radius": s, "table": {hex code: [values in canonical order]}}.
Json rule_to_json(const InvariantRule& rule);
InvariantRule rule_from_json(const Json& j);

Json certificate_to_json(const DecompositionCertificate& cert);

/// {"g1": graph, "s1": [...], "k", "d", "level_rules": [{"edges":
///  [[[copy, index], [copy, index]], ...], "next_connecting": [[copy, index], ...]}]}.
Json spec_to_json(const SelfSimilarSpec& spec);
SelfSimilarSpec spec_from_json(const Json& j);

Json read_json_file(const std::filesystem::path& path);
/// Writes through a temporary file in the same directory and renames it
/// into place; creates parent directories.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

/// 12 significant digits, "%.12g".
std::string format_double(double v);

/// Rows of already formatted cells under a fixed header.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header);
  CsvTable& row(std::vector<std::string> cells);
  std::string str() const;
  std::size_t size() const { return rows_.size(); }

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

}  // namespace gslab
