#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "collabscope/corpus/types.hpp"

namespace collabscope::corpus {

// Transcript wire format, one item per line:
//
//   Question<N>[ Driver: <speaker>]
//   <start> <end> <speaker> <text>
//
// Blank lines are ignored. Records belong to the most recent header.

std::vector<QuestionSegment> parse_transcript(std::istream& in);
std::vector<QuestionSegment> parse_transcript(std::string_view text);

/// Parses header-less record lines (the scaffolding prompt input).
std::vector<Utterance> parse_records(std::string_view text);

std::string format_header(const QuestionSegment& segment);
std::string format_record(const Utterance& u);
std::string format_transcript(std::span<const QuestionSegment> segments);

/// Shortest fixed-notation decimal that parses back to the same double.
std::string format_seconds(double seconds);

struct HalfSplit {
  std::vector<Utterance> first_half;
  std::vector<Utterance> full;
};

/// first_half holds the utterances starting before the midpoint of the
/// segment's time span; full holds everything.
HalfSplit split_half(const QuestionSegment& segment);

/// Number of leading utterances that fall in the first half.
std::size_t first_half_count(const QuestionSegment& segment);

}  // namespace collabscope::corpus
