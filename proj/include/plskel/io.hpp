#pragma once

/// @file io.hpp
/// @brief JSON interchange for networks, skeletons and decision maps, plus
/// the points/labels CSV formats. Parse failures throw InputError.

#include <istream>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "plskel/decision.hpp"
#include "plskel/network.hpp"
#include "plskel/skeleton.hpp"

namespace plskel::io {

using Json = nlohmann::json;

Json to_json(const Network& net);
Network network_from_json(const Json& j);

Json to_json(const Skeleton& s);
Skeleton skeleton_from_json(const Json& j);

Json to_json(const DecisionMap& dm);
DecisionMap decision_map_from_json(const Json& j);

/// Canonical text form: two-space indent, trailing newline. Numbers use the
/// shortest representation that reads back to the same double.
std::string dump(const Json& j);

Json read_json_file(const std::string& path);
void write_text_file(const std::string& path, std::string_view text);

/// "lo,hi" (1-D) or "xlo,xhi,ylo,yhi" (2-D).
Hyperrectangle parse_bounds(std::string_view text);

struct LabeledPoint {
  Point point;
  std::optional<int> label;
};

/// CSV with header "x1[,x2][,label]". The dimension comes from the header;
/// when expected_dim is set it must match.
std::vector<LabeledPoint> read_points_csv(std::istream& in,
                                          std::optional<std::size_t> expected_dim = std::nullopt);
std::vector<LabeledPoint> read_points_csv_file(const std::string& path,
                                               std::optional<std::size_t> expected_dim = std::nullopt);

/// Header "x1[,x2],label"; coordinates with 17 significant digits.
std::string write_labels_csv(std::span<const LabeledPoint> points, std::size_t dim);

}  // namespace plskel::io
