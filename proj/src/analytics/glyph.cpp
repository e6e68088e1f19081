#include "collabscope/analytics/glyph.hpp"

#include <algorithm>

namespace collabscope::analytics {

annotate::Role modal_role(const std::array<int, 3>& counts) {
  std::size_t best = 0;
  for (std::size_t r = 1; r < 3; ++r) {
    if (counts[r] > counts[best]) best = r;
  }
  return static_cast<annotate::Role>(best);
}

int butterfly_bin(std::size_t lower, std::size_t n) {
  if (n <= 1) return 3;
  return static_cast<int>(std::min<std::size_t>(3, (4 * lower) / (n - 1)));
}

std::vector<GlyphParams> glyph_params(std::span<const GroupGlyphInput> groups) {
  double max_beh = 0.0;
  double max_cog = 0.0;
  double max_duration = 0.0;
  for (const auto& g : groups) {
    max_duration = std::max(max_duration, g.duration);
    for (const auto& s : g.students) {
      max_beh = std::max(max_beh, s.mean_behavioral);
      max_cog = std::max(max_cog, s.mean_cognitive);
    }
  }
  std::vector<int> scaffolded;
  for (const auto& g : groups) {
    if (g.scaffold_events > 0) scaffolded.push_back(g.scaffold_events);
  }

  std::vector<GlyphParams> out;
  for (const auto& g : groups) {
    GlyphParams p;
    p.group_id = g.group_id;
    const auto lower = static_cast<std::size_t>(std::count_if(
        groups.begin(), groups.end(), [&](const GroupGlyphInput& o) { return o.quality < g.quality; }));
    p.butterfly_count = butterfly_bin(lower, groups.size());
    if (g.scaffold_events > 0) {
      const auto below = static_cast<std::size_t>(
          std::count_if(scaffolded.begin(), scaffolded.end(), [&](int c) { return c < g.scaffold_events; }));
      p.leaf_color_level = 1 + static_cast<int>(std::min<std::size_t>(2, (3 * below) / scaffolded.size()));
      p.shape = "rectangle";
    } else {
      p.shape = "point";
    }
    p.arc_fraction = max_duration > 0.0 ? g.duration / max_duration : 0.0;
    p.base_color = std::clamp(g.prior_mean / 100.0, 0.0, 1.0);
    for (const auto& s : g.students) {
      p.flowers.push_back({s.student, max_beh > 0.0 ? s.mean_behavioral / max_beh : 0.0,
                           max_cog > 0.0 ? s.mean_cognitive / max_cog : 0.0, modal_role(s.role_counts)});
    }
    out.push_back(std::move(p));
  }
  return out;
}

nlohmann::json glyph_to_json(const GlyphParams& g) {
  nlohmann::json flowers = nlohmann::json::array();
  for (const auto& f : g.flowers) {
    flowers.push_back({{"student", f.student},
                       {"petal_size", f.petal_size},
                       {"stamen_size", f.stamen_size},
                       {"flower_color", annotate::role_name(f.flower_color)}});
  }
  return {{"flowers", flowers},
          {"leaf_color_level", g.leaf_color_level},
          {"butterfly_count", g.butterfly_count},
          {"shape", g.shape},
          {"arc_fraction", g.arc_fraction},
          {"base_color", g.base_color}};
}

}  // namespace collabscope::analytics
