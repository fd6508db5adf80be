#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <string>

#include <unistd.h>

#include <json.hpp>

#include "mtcircle/mtcircle.h"

using nlohmann::json;

namespace {

struct Session {
  mtc_session* s = nullptr;
  Session(uint64_t p, uint64_t ell, unsigned sv, const mtc_options* o = nullptr) {
    REQUIRE(mtc_session_create(p, ell, sv, o, &s) == MTC_OK);
  }
  ~Session() { mtc_session_destroy(s); }
};

template <typename F>
json call(F&& f) {
  char* out = nullptr;
  mtc_status st = f(&out);
  REQUIRE_MESSAGE(st == MTC_OK, mtc_last_error());
  REQUIRE(out != nullptr);
  json j = json::parse(out);
  mtc_string_free(out);
  return j;
}

}  // namespace

TEST_CASE("session creation validates the context") {
  mtc_session* s = nullptr;
  CHECK(mtc_session_create(13, 5, 1, nullptr, &s) == MTC_INVALID_ARGUMENT);
  CHECK(s == nullptr);
  CHECK(std::string(mtc_last_error()).find("ell does not divide") != std::string::npos);
  CHECK(mtc_session_create(11, 5, 2, nullptr, &s) == MTC_INVALID_ARGUMENT);
  CHECK(mtc_session_create(15, 7, 1, nullptr, &s) == MTC_INVALID_ARGUMENT);
  CHECK(mtc_session_create(11, 5, 1, nullptr, nullptr) == MTC_INVALID_ARGUMENT);
  mtc_options o;
  mtc_options_init(&o);
  o.tree_cap = 12;
  CHECK(mtc_session_create(61, 5, 1, &o, &s) == MTC_INVALID_ARGUMENT);
  CHECK(mtc_default_ell(181) == 5);
  CHECK(mtc_default_ell(13) == 0);
  mtc_session_destroy(nullptr);
}

TEST_CASE("p = 11 outputs") {
  Session s(11, 5, 1);
  json ss = call([&](char** o) { return mtc_supersingular_json(s.s, o); });
  CHECK(ss["S"] == json::array({json::array({0, 0}), json::array({1, 0})}));
  CHECK(ss["weights"] == json::array({3, 2}));

  json l = call([&](char** o) { return mtc_lmatrix_json(s.s, o); });
  CHECK(l["modulus"] == 5);
  CHECK(l["mat"] == json::array({json::array({0, 0}), json::array({0, 0})}));

  json b = call([&](char** o) { return mtc_brandt_json(s.s, 2, o); });
  CHECK(b["mat"] == json::array({json::array({0, 3}), json::array({2, 1})}));

  json h = call([&](char** o) { return mtc_homology_json(s.s, o); });
  CHECK(h["dim_H"] == 3);
  CHECK(h["genus"] == 1);
  CHECK(h["rank_H_plus"] == 2);
  CHECK(h["rank_H0_plus"] == 1);
  CHECK(h["hecke_commute"] == true);

  json m = call([&](char** o) { return mtc_merel_json(s.s, o); });
  CHECK(m["merel_sum"] == 4);

  json a = call([&](char** o) { return mtc_alpha_json(s.s, o); });
  CHECK(a["alpha"] == 2);
  CHECK(a["stabilized"] == true);
  CHECK(a["method_cross_check"] == true);

  char* out = nullptr;
  CHECK(mtc_brandt_json(s.s, 11, &out) == MTC_INVALID_ARGUMENT);
  CHECK(out == nullptr);
  CHECK(mtc_brandt_json(s.s, 2, nullptr) == MTC_INVALID_ARGUMENT);
}

TEST_CASE("verification") {
  Session s(181, 5, 1);
  int passed = 0;
  json all = call([&](char** o) { return mtc_verify_json(s.s, "all", &passed, o); });
  CHECK(passed == 1);
  REQUIRE(all.size() == 4);
  for (const auto& r : all) CHECK(r["verdict"] == "pass");

  json a = call([&](char** o) { return mtc_alpha_json(s.s, o); });
  CHECK(a["alpha"] == 2);
  CHECK(a["stabilized"] == false);

  char* out = nullptr;
  CHECK(mtc_verify_json(s.s, "bogus", &passed, &out) == MTC_INVALID_ARGUMENT);

  Session t(31, 5, 1);
  CHECK(mtc_verify_json(t.s, "tree", &passed, &out) == MTC_INVALID_ARGUMENT);
  json three = call([&](char** o) { return mtc_verify_json(t.s, "all", &passed, o); });
  CHECK(three.size() == 3);
  CHECK(passed == 1);
}

TEST_CASE("battery through the C API") {
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / ("mtc_capi_cache_" + std::to_string(::getpid()));
  fs::remove_all(dir);
  const std::string ds = dir.string();
  mtc_options o;
  mtc_options_init(&o);
  o.cache_dir = ds.c_str();
  int passed = 0;
  json r1 = call([&](char** out) { return mtc_battery_json(&o, &passed, out); });
  CHECK(passed == 1);
  CHECK(r1.size() == 35);
  json r2 = call([&](char** out) { return mtc_battery_json(&o, &passed, out); });
  CHECK(r1 == r2);

  Session s(61, 5, 1, &o);
  json w = call([&](char** out) { return mtc_warnings_json(s.s, out); });
  CHECK(w.empty());
  fs::remove_all(dir);
}
