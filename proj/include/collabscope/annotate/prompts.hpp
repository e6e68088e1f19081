#pragma once

#include <string_view>

#include "collabscope/annotate/backend.hpp"

namespace collabscope::annotate {

/// Bumped whenever any prompt text changes; part of every cache key.
inline constexpr std::string_view kPromptVersion = "v1";

/// Fixed instruction text sent as the system message for a task.
std::string_view system_prompt(Task task);

/// Follow-up sent once when a reply could not be parsed.
inline constexpr std::string_view kFormatCorrection =
    "Your previous reply could not be parsed. Reply again with only the JSON described in the output format, "
    "one entry per input sentence, in the same order.";

}  // namespace collabscope::annotate
