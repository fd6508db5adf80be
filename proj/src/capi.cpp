#include "mtcircle/mtcircle.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <new>
#include <string>

#include "mtcircle/cache.hpp"
#include "mtcircle/error.hpp"
#include "mtcircle/serialize.hpp"
#include "mtcircle/theorems.hpp"

struct mtc_session {
  mtc::PrimeContext ctx;
  mtc::RunOptions opts;
  std::unique_ptr<mtc::Cache> cache;
  std::unique_ptr<mtc::Circle> circle;
  std::optional<mtc::SupersingularSet> S;

  const mtc::SupersingularSet& supersingular() {
    if (circle) return circle->S;
    if (!S) S = cache ? cache->supersingular(ctx) : mtc::enumerate_supersingular(ctx);
    return *S;
  }
  mtc::Circle& full() {
    if (!circle) circle = mtc::build_circle(ctx, opts, cache.get());
    return *circle;
  }
};

namespace {

thread_local std::string last_error;

mtc_status set_error(mtc_status st, const std::string& msg) {
  last_error = msg;
  return st;
}

mtc_status from_code(mtc::ErrorCode c) {
  switch (c) {
    case mtc::ErrorCode::invalid_argument: return MTC_INVALID_ARGUMENT;
    case mtc::ErrorCode::dimension_mismatch: return MTC_DIMENSION_MISMATCH;
    case mtc::ErrorCode::verification_failed: return MTC_VERIFICATION_FAILED;
    case mtc::ErrorCode::search_exhausted: return MTC_SEARCH_EXHAUSTED;
    case mtc::ErrorCode::io: return MTC_IO;
  }
  return MTC_INTERNAL;
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

template <typename F>
mtc_status guarded(F&& f) {
  try {
    last_error.clear();
    return f();
  } catch (const mtc::Error& e) {
    return set_error(from_code(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return set_error(MTC_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return set_error(MTC_INTERNAL, e.what());
  }
}

mtc::RunOptions run_options(const mtc_options* o) {
  mtc::RunOptions r;
  if (!o) return r;
  if (o->degree_budget) r.degree_budget = o->degree_budget;
  r.prime_bound = o->prime_bound;
  if (o->tree_cap) r.tree_cap = o->tree_cap;
  return r;
}

std::unique_ptr<mtc::Cache> make_cache(const mtc_options* o) {
  if (!o || !o->cache_dir || !*o->cache_dir) return nullptr;
  return std::make_unique<mtc::Cache>(o->cache_dir);
}

mtc_status emit(const mtc::json& j, char** out) {
  *out = dup_string(j.dump());
  return MTC_OK;
}

}  // namespace

extern "C" {

void mtc_options_init(mtc_options* opts) {
  if (!opts) return;
  mtc::RunOptions d;
  opts->degree_budget = d.degree_budget;
  opts->prime_bound = d.prime_bound;
  opts->tree_cap = d.tree_cap;
  opts->cache_dir = nullptr;
}

mtc_status mtc_session_create(uint64_t p, uint64_t ell, unsigned s,
                              const mtc_options* opts, mtc_session** out) {
  if (!out) return set_error(MTC_INVALID_ARGUMENT, "out is NULL");
  *out = nullptr;
  return guarded([&] {
    auto session = std::make_unique<mtc_session>();
    session->ctx = mtc::make_context(p, ell, s);
    session->opts = run_options(opts);
    if (session->opts.tree_cap > 9) {
      mtc::fail(mtc::ErrorCode::invalid_argument, "tree_cap above 9 is infeasible");
    }
    session->cache = make_cache(opts);
    *out = session.release();
    return MTC_OK;
  });
}

void mtc_session_destroy(mtc_session* session) { delete session; }

uint64_t mtc_default_ell(uint64_t p) { return mtc::default_ell(p); }

mtc_status mtc_supersingular_json(mtc_session* s, char** out) {
  if (!s || !out) return set_error(MTC_INVALID_ARGUMENT, "NULL argument");
  return guarded([&] { return emit(mtc::to_json(s->supersingular()), out); });
}

mtc_status mtc_lmatrix_json(mtc_session* s, char** out) {
  if (!s || !out) return set_error(MTC_INVALID_ARGUMENT, "NULL argument");
  return guarded([&] {
    return emit(mtc::to_json(mtc::build_l_matrix(s->ctx, s->supersingular())), out);
  });
}

mtc_status mtc_brandt_json(mtc_session* s, unsigned q, char** out) {
  if (!s || !out) return set_error(MTC_INVALID_ARGUMENT, "NULL argument");
  return guarded([&] {
    return emit(mtc::to_json(mtc::brandt_matrix(s->ctx, s->supersingular(), q)), out);
  });
}

mtc_status mtc_homology_json(mtc_session* s, char** out) {
  if (!s || !out) return set_error(MTC_INVALID_ARGUMENT, "NULL argument");
  return guarded([&] { return emit(mtc::homology_json(s->full()), out); });
}

mtc_status mtc_alpha_json(mtc_session* s, char** out) {
  if (!s || !out) return set_error(MTC_INVALID_ARGUMENT, "NULL argument");
  return guarded([&] { return emit(mtc::to_json(mtc::alpha_report(s->full())), out); });
}

mtc_status mtc_merel_json(mtc_session* s, char** out) {
  if (!s || !out) return set_error(MTC_INVALID_ARGUMENT, "NULL argument");
  return guarded([&] {
    mtc::LogTable logs(s->ctx);
    mtc::json j{{"p", s->ctx.p}, {"ell", s->ctx.ell},
                {"merel_sum", mtc::merel_sum(s->ctx, logs)}};
    return emit(j, out);
  });
}

mtc_status mtc_verify_json(mtc_session* s, const char* theorem, int* passed,
                           char** out) {
  if (!s || !theorem || !passed || !out)
    return set_error(MTC_INVALID_ARGUMENT, "NULL argument");
  return guarded([&] {
    const std::string th = theorem;
    const bool all = th == "all";
    if (!all && th != "main" && th != "alpha2" && th != "alpha3" && th != "tree") {
      mtc::fail(mtc::ErrorCode::invalid_argument, "unknown theorem '" + th + "'");
    }
    std::vector<mtc::VerificationReport> reports;
    if (all || th == "main") reports.push_back(mtc::verify_main_identity(s->full()));
    if (all || th == "alpha2") reports.push_back(mtc::verify_alpha_geq2(s->full()));
    if (all || th == "alpha3")
      reports.push_back(mtc::verify_alpha3_equivalence(s->full()));
    if (th == "tree" || (all && s->ctx.p % 12 == 1)) {
      reports.push_back(
          mtc::verify_tree_formula(s->ctx, s->supersingular(), s->opts.tree_cap));
    }
    mtc::json arr = mtc::json::array();
    bool ok = true;
    for (const auto& r : reports) {
      arr.push_back(mtc::to_json(r));
      ok = ok && r.pass;
    }
    *passed = ok ? 1 : 0;
    return emit(arr, out);
  });
}

mtc_status mtc_battery_json(const mtc_options* opts, int* passed, char** out) {
  if (!passed || !out) return set_error(MTC_INVALID_ARGUMENT, "NULL argument");
  return guarded([&] {
    auto cache = make_cache(opts);
    auto reports = mtc::run_battery(run_options(opts), cache.get());
    mtc::json arr = mtc::json::array();
    bool ok = true;
    for (const auto& r : reports) {
      arr.push_back(mtc::to_json(r));
      ok = ok && r.pass;
    }
    *passed = ok ? 1 : 0;
    return emit(arr, out);
  });
}

mtc_status mtc_warnings_json(mtc_session* s, char** out) {
  if (!s || !out) return set_error(MTC_INVALID_ARGUMENT, "NULL argument");
  return guarded([&] {
    mtc::json arr = mtc::json::array();
    if (s->cache)
      for (const auto& w : s->cache->warnings()) arr.push_back(w);
    return emit(arr, out);
  });
}

const char* mtc_last_error(void) { return last_error.c_str(); }

void mtc_string_free(char* str) { std::free(str); }

}  // extern "C"
