#pragma once

#include <initializer_list>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include <json.hpp>

namespace collabscope::annotate {

/// A model reply that does not contain the expected JSON.
class MalformedOutput : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Extracts the JSON payload from a chat reply. Tolerates code fences,
/// surrounding prose, trailing commas and a bare comma-separated sequence of
/// objects (returned as an array).
nlohmann::json parse_model_json(std::string_view text);

/// "80%", "80", 80 -> 80. Values outside 0..100 are rejected.
std::optional<double> parse_percentage(const nlohmann::json& value);

/// First of `keys` present in `obj` holding a string (case-insensitive key
/// match).
std::optional<std::string> string_field(const nlohmann::json& obj, std::initializer_list<std::string_view> keys);

/// Same lookup returning the raw value.
const nlohmann::json* find_field(const nlohmann::json& obj, std::initializer_list<std::string_view> keys);

}  // namespace collabscope::annotate
