#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include <unistd.h>

#include "mtcircle/cache.hpp"
#include "mtcircle/serialize.hpp"

using namespace mtc;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& name)
      : path(fs::temp_directory_path() / ("mtc_cache_test_" + name + "_" +
                                          std::to_string(::getpid()))) {
    fs::remove_all(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spit(const fs::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  out << text;
}

}  // namespace

TEST_CASE("supersingular roundtrip") {
  TempDir tmp("ss");
  PrimeContext ctx = make_context(61, 5, 1);
  SupersingularSet direct = enumerate_supersingular(ctx);
  Cache cold(tmp.path);
  SupersingularSet a = cold.supersingular(ctx);
  fs::path file = cold.supersingular_path(ctx.p, ctx.qnr);
  REQUIRE(fs::exists(file));
  const std::string bytes = slurp(file);

  Cache warm(tmp.path);
  SupersingularSet b = warm.supersingular(ctx);
  CHECK(a.js == direct.js);
  CHECK(b.js == direct.js);
  CHECK(b.weights == direct.weights);
  CHECK(warm.warnings().empty());
  CHECK(slurp(file) == bytes);
  CHECK(supersingular_from_json(to_json(direct)).js == direct.js);
  CHECK(check_supersingular(ctx, direct).empty());
}

TEST_CASE("tampered supersingular entries are recomputed") {
  TempDir tmp("tamper");
  PrimeContext ctx = make_context(11, 5, 1);
  Cache(tmp.path).supersingular(ctx);
  Cache probe(tmp.path);
  fs::path file = probe.supersingular_path(ctx.p, ctx.qnr);

  auto j = json::parse(slurp(file));
  j["weights"][0] = 1;
  spit(file, j.dump());
  Cache c1(tmp.path);
  SupersingularSet S = c1.supersingular(ctx);
  CHECK(S.weights == std::vector<unsigned>{3, 2});
  REQUIRE(c1.warnings().size() == 1);
  CHECK(c1.warnings()[0].find("cache: discarding") == 0);
  // the entry was rewritten and is good again
  Cache c2(tmp.path);
  c2.supersingular(ctx);
  CHECK(c2.warnings().empty());

  j = json::parse(slurp(file));
  j["S"].erase(j["S"].begin());
  j["weights"].erase(j["weights"].begin());
  spit(file, j.dump());
  Cache c3(tmp.path);
  CHECK(c3.supersingular(ctx).size() == 2);
  CHECK(c3.warnings().size() == 1);

  spit(file, "{not json");
  Cache c4(tmp.path);
  CHECK(c4.supersingular(ctx).size() == 2);
  CHECK(c4.warnings().size() == 1);

  j = json::parse(slurp(file));
  j["schema"] = 99;
  spit(file, j.dump());
  Cache c5(tmp.path);
  CHECK(c5.supersingular(ctx).size() == 2);
  CHECK(c5.warnings().size() == 1);
}

TEST_CASE("invariant checker catches bad sets") {
  PrimeContext ctx = make_context(61, 5, 1);
  SupersingularSet S = enumerate_supersingular(ctx);
  auto bad = S;
  std::swap(bad.js[0], bad.js[1]);
  CHECK_FALSE(check_supersingular(ctx, bad).empty());
  bad = S;
  bad.js[2].c0 = (bad.js[2].c0 + 1) % 61;
  CHECK_FALSE(check_supersingular(ctx, bad).empty());
  bad = S;
  bad.weights[0] = 2;
  CHECK_FALSE(check_supersingular(ctx, bad).empty());
}

TEST_CASE("presentation roundtrip and tamper") {
  TempDir tmp("manin");
  Modulus m(5);
  ManinSpace direct = build_presentation(61, m);
  Cache c1(tmp.path);
  ManinSpace a = c1.presentation(61, m);
  CHECK(a.basis_generators() == direct.basis_generators());
  CHECK(a.generator_coordinates() == direct.generator_coordinates());
  Cache c2(tmp.path);
  ManinSpace b = c2.presentation(61, m);
  CHECK(b.generator_coordinates() == direct.generator_coordinates());
  CHECK(c2.warnings().empty());
  CHECK(check_presentation(61, m, direct).empty());

  fs::path file = c2.presentation_path(61, 5);
  auto j = json::parse(slurp(file));
  j["table"][3][0] = (j["table"][3][0].get<int>() + 1) % 5;
  spit(file, j.dump());
  Cache c3(tmp.path);
  ManinSpace c = c3.presentation(61, m);
  CHECK(c.generator_coordinates() == direct.generator_coordinates());
  CHECK(c3.warnings().size() == 1);
}

TEST_CASE("concurrent access yields identical results") {
  TempDir tmp("threads");
  Cache cache(tmp.path);
  std::vector<std::thread> pool;
  std::vector<SupersingularSet> out(8);
  for (int i = 0; i < 8; ++i)
    pool.emplace_back([&, i] { out[i] = cache.supersingular(make_context(181, 5, 1)); });
  for (auto& t : pool) t.join();
  for (const auto& S : out) CHECK(S.js == out[0].js);
  CHECK(cache.warnings().empty());
  for (const auto& e : fs::directory_iterator(tmp.path))
    CHECK(e.path().filename().string().find(".tmp") == std::string::npos);
}

TEST_CASE("unwritable cache directory degrades to a warning") {
  TempDir tmp("blocked");
  fs::create_directories(tmp.path.parent_path());
  spit(tmp.path, "a file, not a directory");
  Cache cache(tmp.path / "sub");
  PrimeContext ctx = make_context(11, 5, 1);
  CHECK(cache.supersingular(ctx).size() == 2);
  CHECK_FALSE(cache.warnings().empty());
  fs::remove(tmp.path);
}
