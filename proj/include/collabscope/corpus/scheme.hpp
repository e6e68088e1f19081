#pragma once

#include <filesystem>

#include <json.hpp>

#include "collabscope/corpus/types.hpp"

namespace collabscope::corpus {

inline constexpr std::string_view kUnrelatedChat = "Unrelated chat";
inline constexpr std::string_view kDebugging = "Debugging";

/// The six named discussion categories plus eight configurable placeholders,
/// spread over the four colour groups. Deployments replace it with scheme.json.
CodingScheme default_scheme();

/// Throws ValidationError if names repeat, a colour group is outside 1..4,
/// any colour group is unused, or the category count differs from
/// expected_count.
void validate_scheme(const CodingScheme& scheme);

CodingScheme scheme_from_json(const nlohmann::json& doc);
nlohmann::json scheme_to_json(const CodingScheme& scheme);
CodingScheme load_scheme(const std::filesystem::path& path);

}  // namespace collabscope::corpus
