#include <doctest.h>

#include <set>
#include <stdexcept>

#include "collabscope/util/digest.hpp"
#include "collabscope/util/error.hpp"
#include "collabscope/util/json_io.hpp"
#include "collabscope/util/parallel.hpp"
#include "collabscope/util/random.hpp"
#include "test_support.hpp"

using namespace collabscope;

TEST_CASE("sha256 matches the published test vectors") {
  CHECK(util::sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  CHECK(util::sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("length-prefixed fields keep boundaries apart") {
  util::Sha256 a;
  a.update_field("ab");
  a.update_field("c");
  util::Sha256 b;
  b.update_field("a");
  b.update_field("bc");
  CHECK(a.hex_digest() != b.hex_digest());
}

TEST_CASE("splitmix64 is reproducible and uniform draws stay in [0,1)") {
  util::SplitMix64 a(42), b(42);
  for (int i = 0; i < 1000; ++i) {
    const double x = a.uniform();
    CHECK(x == b.uniform());
    CHECK(x >= 0.0);
    CHECK(x < 1.0);
  }
  CHECK(util::mix_seed(1, 2) != util::mix_seed(2, 1));
  CHECK(util::fnv1a("G10") != util::fnv1a("G18"));
}

TEST_CASE("parallel_for visits every index once and rethrows failures") {
  std::vector<std::atomic<int>> hits(257);
  util::parallel_for(hits.size(), 8, [&](std::size_t i) { ++hits[i]; });
  for (const auto& h : hits) CHECK(h.load() == 1);

  CHECK_THROWS_AS(util::parallel_for(20, 4, [](std::size_t i) {
                    if (i == 13) throw std::runtime_error("boom");
                  }),
                  std::runtime_error);
  util::parallel_for(0, 4, [](std::size_t) { FAIL("no work expected"); });
}

TEST_CASE("atomic text writes replace content and leave no temporaries") {
  testing::TempDir dir("util");
  const auto p = dir / "nested/file.json";
  util::write_text_atomic(p, "one");
  util::write_text_atomic(p, "two");
  CHECK(util::read_text_file(p) == "two");
  std::size_t entries = 0;
  for ([[maybe_unused]] const auto& e : std::filesystem::directory_iterator(p.parent_path())) ++entries;
  CHECK(entries == 1);
}

TEST_CASE("schema_version is enforced") {
  CHECK_NOTHROW(util::require_schema_version({{"schema_version", 1}}, 1, "doc"));
  CHECK_THROWS_AS(util::require_schema_version({{"schema_version", 2}}, 1, "doc"), ValidationError);
  CHECK_THROWS_AS(util::require_schema_version(nlohmann::json::object(), 1, "doc"), ValidationError);
  CHECK_THROWS_AS(util::require_schema_version({{"schema_version", "1"}}, 1, "doc"), ValidationError);
}

TEST_CASE("canonical dump orders keys") {
  const auto a = nlohmann::json::parse(R"({"b":1,"a":[1,2]})");
  const auto b = nlohmann::json::parse(R"({"a":[1,2],"b":1})");
  CHECK(util::canonical_dump(a) == util::canonical_dump(b));
}
