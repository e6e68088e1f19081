#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "collabscope/corpus/types.hpp"

namespace collabscope::corpus {

// Session directory layout:
//
//   <group>/transcript.txt   wire-format transcript (UTF-8)
//   <group>/roster.json      {schema_version, group_id?, students: [{id, major, prior_score}]}
//   <group>/code/q<N>.py     final submission for question N
//   <group>/media.mp4        optional recording
//   <group>/scheme.json      optional coding scheme override
//
// A cohort directory holds one such directory per group plus an optional
// questions.json: {schema_version, questions: {"<N>": "<statement>"}}.

struct LoadOptions {
  SpeakerId instructor = SpeakerId(kDefaultInstructor);
};

/// Loads and validates one group's session. Throws ValidationError (or
/// ParseError for transcript syntax) on any invariant violation.
Session load_session(const std::filesystem::path& dir, const LoadOptions& options = {});

/// Enforces the Session invariants on an already constructed value.
void validate_session(const Session& session);

struct Cohort {
  std::vector<Session> sessions;         // ordered by group_id
  std::map<int, std::string> questions;  // statement per question id
};

/// Loads every subdirectory containing a roster.json.
Cohort load_cohort(const std::filesystem::path& dir, const LoadOptions& options = {});

}  // namespace collabscope::corpus
