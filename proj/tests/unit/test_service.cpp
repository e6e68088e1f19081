#include <doctest.h>

#include <openssl/sha.h>

#include <cstdio>
#include <fstream>

#include "collabscope/service/config.hpp"
#include "collabscope/service/export.hpp"
#include "collabscope/service/snapshot.hpp"
#include "collabscope/util/digest.hpp"
#include "test_support.hpp"

using namespace collabscope;
using namespace collabscope::service;
using nlohmann::json;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

void append_field(std::string& buf, const std::string& s) {
  const auto n = static_cast<std::uint64_t>(s.size());
  for (int shift = 56; shift >= 0; shift -= 8) buf.push_back(static_cast<char>((n >> shift) & 0xff));
  buf += s;
}

/// SHA-256 computed in one shot over the length-prefixed encoding.
std::string oracle_digest(const std::map<std::string, std::string>& files) {
  std::string buf;
  append_field(buf, "collabscope-snapshot/1");
  for (const auto& [p, c] : files) {
    append_field(buf, p);
    append_field(buf, c);
  }
  unsigned char md[SHA256_DIGEST_LENGTH];
  SHA256(reinterpret_cast<const unsigned char*>(buf.data()), buf.size(), md);
  std::string hex;
  char tmp[3];
  for (unsigned char b : md) {
    std::snprintf(tmp, sizeof tmp, "%02x", b);
    hex += tmp;
  }
  return hex;
}

json ok_profile(const std::string& id, double quality) {
  return {{"group_id", id},
          {"status", "ok"},
          {"mean_score", 4.25},
          {"sigma_e", 0.5},
          {"cv_e", 0.1},
          {"quality", quality},
          {"mean_behavioral", 0.61234},
          {"mean_cognitive", 0.4},
          {"scaffold_counts", {{"CS-L", 1}, {"CS-M", 2}, {"CS-H", 0}, {"MS", 3}}},
          {"duration", 1234.567},
          {"prior_performance", 71.0},
          {"glyph", {{"butterfly_count", 2}, {"leaf_color_level", 1}}},
          {"projection", json::array({1.5, -2.25})}};
}

SnapshotBuilder small_snapshot() {
  SnapshotBuilder b;
  b.add_json("cohort/groups.json", {{"groups", json::array({{{"group_id", "G01"}}, {{"group_id", "G02"}}})}});
  b.add_json("groups/G01/profile.json", ok_profile("G01", 3.8));
  b.add_json("groups/G02/profile.json", {{"group_id", "G02"}, {"status", "failed"}, {"error", "boom"}});
  return b;
}

}  // namespace

TEST_CASE("config defaults validate and round-trip the result-shaping keys") {
  PipelineConfig c;
  CHECK_NOTHROW(validate_config(c));
  CHECK(c.seed == 17);
  CHECK(c.backend_seed() == 17);
  const auto j = config_to_json(c);
  CHECK_FALSE(j.contains("cache_dir"));
  CHECK_FALSE(j.contains("snapshot_dir"));
  CHECK_FALSE(j.at("backend").contains("api_key_env"));
  CHECK_FALSE(j.at("backend").contains("endpoint"));
  CHECK(config_from_json(j, "/x").seed == c.seed);
}

TEST_CASE("config parsing is strict") {
  const std::filesystem::path base = "/base";
  const json good = {{"schema_version", 1},
                     {"seed", 5},
                     {"backend", {{"kind", "mock"}, {"seed", 9}}},
                     {"nmf", {{"max_iter", 200}}},
                     {"cache_dir", "c"}};
  const auto c = config_from_json(good, base);
  CHECK(c.seed == 5);
  CHECK(c.backend_seed() == 9);
  CHECK(c.nmf_seed() == 5);
  CHECK(c.nmf.max_iter == 200);
  CHECK(c.cache_dir == base / "c");

  CHECK_THROWS_AS(config_from_json({{"schema_version", 1}, {"sede", 5}}, base), ValidationError);
  CHECK_THROWS_AS(config_from_json({{"schema_version", 1}, {"backend", {{"knd", "mock"}}}}, base), ValidationError);
  CHECK_THROWS_AS(config_from_json({{"schema_version", 2}}, base), ValidationError);
  CHECK_THROWS_AS(config_from_json({{"schema_version", 1}, {"smoothing_window", 4}}, base), ValidationError);
  CHECK_THROWS_AS(config_from_json({{"schema_version", 1}, {"ena_window", 1}}, base), ValidationError);
  CHECK_THROWS_AS(config_from_json({{"schema_version", 1}, {"instructor", "teacher"}}, base), ValidationError);
  CHECK_THROWS_AS(config_from_json({{"schema_version", 1}, {"merge_weighting", "max"}}, base), ValidationError);
  CHECK_THROWS_AS(config_from_json({{"schema_version", 1}, {"backend", {{"kind", "remote-llm"}}}}, base),
                  ValidationError);
  CHECK_THROWS_AS(config_from_json({{"schema_version", 1}, {"workers", "four"}}, base), ValidationError);
}

TEST_CASE("tree digest matches an independent SHA-256 encoding") {
  testing::Gen g(3);
  for (int trial = 0; trial < 50; ++trial) {
    std::map<std::string, std::string> files;
    const int n = g.integer(0, 6);
    for (int i = 0; i < n; ++i) {
      std::string content(static_cast<std::size_t>(g.integer(0, 200)), '\0');
      for (auto& ch : content) ch = static_cast<char>(g.integer(0, 255));
      files["dir" + std::to_string(g.integer(0, 3)) + "/f" + std::to_string(i)] = content;
    }
    CHECK(tree_digest(files) == oracle_digest(files));
  }
  // Moving a byte across the path/content boundary changes the digest.
  CHECK(tree_digest({{"ab", "c"}}) != tree_digest({{"a", "bc"}}));
  CHECK(util::sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("snapshot builder rejects unsafe paths") {
  SnapshotBuilder b;
  CHECK_THROWS_AS(b.add_text("", "x"), ValidationError);
  CHECK_THROWS_AS(b.add_text("/etc/passwd", "x"), ValidationError);
  CHECK_THROWS_AS(b.add_text("../up", "x"), ValidationError);
  CHECK_THROWS_AS(b.add_text("manifest.json", "x"), ValidationError);
}

TEST_CASE("commit writes a verifiable content-addressed snapshot") {
  testing::TempDir tmp("snap");
  const auto b = small_snapshot();
  const auto dir = b.commit(tmp.path());
  CHECK(dir.filename() == b.digest());
  CHECK(slurp(tmp / "LATEST").find(b.digest()) != std::string::npos);
  CHECK(resolve_snapshot(tmp.path()) == dir);
  CHECK(resolve_snapshot(dir) == dir);

  const Snapshot s(dir);
  CHECK(s.id() == b.digest());
  CHECK(s.verify());
  CHECK(s.files() == b.files());
  CHECK(s.read_json("groups/G01/profile.json").at("quality") == 3.8);
  CHECK(s.has("cohort/groups.json"));
  CHECK_FALSE(s.has("cohort/missing.json"));

  // Committing again is idempotent.
  CHECK(b.commit(tmp.path()) == dir);
  std::size_t entries = 0;
  for (const auto& e : std::filesystem::directory_iterator(tmp.path())) entries += e.is_directory();
  CHECK(entries == 1);
}

TEST_CASE("tampering is detected") {
  testing::TempDir tmp("tamper");
  const auto dir = small_snapshot().commit(tmp.path());
  {
    std::ofstream out(dir / "groups/G01/profile.json", std::ios::app);
    out << " ";
  }
  CHECK_FALSE(Snapshot(dir).verify());

  testing::TempDir tmp2("extra");
  const auto dir2 = small_snapshot().commit(tmp2.path());
  std::ofstream(dir2 / "stray.json") << "{}";
  CHECK_FALSE(Snapshot(dir2).verify());

  testing::TempDir empty("nomanifest");
  CHECK_THROWS_AS(Snapshot(empty.path()), ValidationError);
}

TEST_CASE("csv metrics layout") {
  testing::TempDir tmp("csv");
  const Snapshot s(small_snapshot().commit(tmp.path()));
  const auto csv = csv_metrics(s);
  const std::string expect =
      "group_id,status,mean_score,sigma_e,cv_e,quality,mean_behavioral,mean_cognitive,scaffold_cs_l,scaffold_cs_m,"
      "scaffold_cs_h,scaffold_ms,duration,prior_performance,butterfly_count,leaf_color_level,x,y\n"
      "G01,ok,4.2500,0.5000,0.1000,3.8000,0.6123,0.4000,1,2,0,3,1234.57,71.00,2,1,1.5000,-2.2500\n"
      "G02,failed,,,,,,,,,,,,,,,,\n";
  CHECK(csv == expect);
}

TEST_CASE("export formats") {
  CHECK(parse_export_format("json-bundle") == ExportFormat::JsonBundle);
  CHECK(parse_export_format("csv-metrics") == ExportFormat::CsvMetrics);
  CHECK_THROWS_AS(parse_export_format("xml"), ValidationError);

  testing::TempDir tmp("export");
  const Snapshot s(small_snapshot().commit(tmp / "snaps"));
  const auto bundle = export_snapshot(s, ExportFormat::JsonBundle, tmp / "out");
  CHECK(bundle.size() == 4);
  const Snapshot copy(tmp / "out" / s.id());
  CHECK(copy.verify());
  CHECK(copy.id() == s.id());

  const auto csv = export_snapshot(s, ExportFormat::CsvMetrics, tmp / "csv");
  REQUIRE(csv.size() == 1);
  CHECK(slurp(csv[0]) == csv_metrics(s));
}
