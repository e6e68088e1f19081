#include "collabscope/corpus/scheme.hpp"

#include <array>
#include <set>

#include "collabscope/util/error.hpp"
#include "collabscope/util/json_io.hpp"

namespace collabscope::corpus {

std::optional<std::size_t> CodingScheme::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < categories.size(); ++i) {
    if (categories[i].name == name) return i;
  }
  return std::nullopt;
}

CodingScheme default_scheme() {
  CodingScheme s;
  s.expected_count = 14;
  s.categories = {
      {"Project understanding", 1}, {"Question Planning", 1}, {"Placeholder 7", 1},  {"Placeholder 8", 1},
      {"Python coding", 2},         {"Placeholder 9", 2},     {"Placeholder 10", 2},
      {"Debugging", 3},             {"Placeholder 11", 3},    {"Placeholder 12", 3},
      {"Acknowledgement", 4},       {"Unrelated chat", 4},    {"Placeholder 13", 4}, {"Placeholder 14", 4},
  };
  return s;
}

void validate_scheme(const CodingScheme& scheme) {
  std::set<std::string> names;
  std::array<bool, 4> used{};
  for (const auto& c : scheme.categories) {
    if (c.name.empty()) throw ValidationError("scheme: empty category name");
    if (!names.insert(c.name).second) throw ValidationError("scheme: duplicate category '" + c.name + "'");
    if (c.color_group < 1 || c.color_group > 4) {
      throw ValidationError("scheme: colour group of '" + c.name + "' must be 1..4");
    }
    used[static_cast<std::size_t>(c.color_group - 1)] = true;
  }
  for (bool u : used) {
    if (!u) throw ValidationError("scheme: all four colour groups must be used");
  }
  if (static_cast<int>(scheme.categories.size()) != scheme.expected_count) {
    throw ValidationError("scheme: expected " + std::to_string(scheme.expected_count) + " categories, found " +
                          std::to_string(scheme.categories.size()));
  }
}

CodingScheme scheme_from_json(const nlohmann::json& doc) {
  util::require_schema_version(doc, 1, "scheme.json");
  CodingScheme s;
  try {
    s.expected_count = doc.at("expected_count").get<int>();
    for (const auto& c : doc.at("categories")) {
      s.categories.push_back({c.at("name").get<std::string>(), c.at("color_group").get<int>()});
    }
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("scheme.json: ") + e.what());
  }
  validate_scheme(s);
  return s;
}

nlohmann::json scheme_to_json(const CodingScheme& scheme) {
  nlohmann::json cats = nlohmann::json::array();
  for (const auto& c : scheme.categories) cats.push_back({{"name", c.name}, {"color_group", c.color_group}});
  return {{"schema_version", 1}, {"expected_count", scheme.expected_count}, {"categories", cats}};
}

CodingScheme load_scheme(const std::filesystem::path& path) {
  return scheme_from_json(util::read_json_file(path));
}

}  // namespace collabscope::corpus
