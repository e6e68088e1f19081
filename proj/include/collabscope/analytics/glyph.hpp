#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "collabscope/annotate/types.hpp"

namespace collabscope::analytics {

/// Per-student summary feeding one flower.
struct StudentGlyphInput {
  corpus::SpeakerId student;
  double mean_behavioral = 0.0;
  double mean_cognitive = 0.0;
  std::array<int, 3> role_counts{};  // Driver, Navigator, Monitor
};

struct GroupGlyphInput {
  std::string group_id;
  double quality = 0.0;
  int scaffold_events = 0;
  double duration = 0.0;
  double prior_mean = 0.0;  // 0..100
  std::vector<StudentGlyphInput> students;
};

struct Flower {
  corpus::SpeakerId student;
  double petal_size = 0.0;   // behavioral engagement, cohort max = 1
  double stamen_size = 0.0;  // cognitive engagement, cohort max = 1
  annotate::Role flower_color = annotate::Role::Monitor;
};

struct GlyphParams {
  std::string group_id;
  std::vector<Flower> flowers;
  int leaf_color_level = 0;  // 0 without scaffolding, else tertile 1..3
  int butterfly_count = 0;   // quality quartile 0..3
  std::string shape;         // "point" | "rectangle"
  double arc_fraction = 0.0;  // duration / longest duration
  double base_color = 0.0;    // prior performance / 100
};

/// Most frequent role; ties go to Driver, then Navigator, then Monitor.
annotate::Role modal_role(const std::array<int, 3>& counts);

/// Quartile bin from the number of groups with strictly lower quality:
/// min(3, floor(4 * lower / (n - 1))). A lone group gets 3.
int butterfly_bin(std::size_t lower, std::size_t n);

std::vector<GlyphParams> glyph_params(std::span<const GroupGlyphInput> groups);

nlohmann::json glyph_to_json(const GlyphParams& g);

}  // namespace collabscope::analytics
