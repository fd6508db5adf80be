// mtcircle: command-line front end over the C API.
//
// Exit codes: 0 success, 1 a verification failed, 2 invalid configuration.
// Errors go to stderr as one JSON object per line.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "mtcircle/mtcircle.h"

using nlohmann::json;

namespace {

constexpr const char* cache_env = "MTCIRCLE_CACHE_DIR";

struct RunConfig {
  std::string subcommand;
  std::uint64_t p = 0;
  std::uint64_t ell = 0;
  unsigned s = 1;
  std::string format = "json";
  std::string output;
  std::string cache_dir;
  unsigned degree_budget = 0;
  std::uint64_t prime_bound = 0;
  unsigned tree_cap = 0;
  unsigned q = 0;
  std::string theorem = "all";
};

struct Exit {
  int code;
};

[[noreturn]] void die(int code, const std::string& kind, const std::string& msg) {
  std::cerr << json{{"error", kind}, {"message", msg}}.dump() << "\n";
  throw Exit{code};
}

std::string take(char* s) {
  std::string out = s ? s : "";
  mtc_string_free(s);
  return out;
}

// Maps a failed C call to an exit code.
[[noreturn]] void fail_status(mtc_status st) {
  std::string msg = mtc_last_error();
  switch (st) {
    case MTC_INVALID_ARGUMENT: die(2, "invalid_config", msg);
    case MTC_VERIFICATION_FAILED: die(1, "verification_failed", msg);
    case MTC_SEARCH_EXHAUSTED: die(1, "search_exhausted", msg);
    case MTC_IO: die(1, "io", msg);
    default: die(1, "internal", msg);
  }
}

std::string cell(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

std::string csv_cell(const json& v) {
  std::string s = cell(v);
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

std::string render_table(const std::vector<std::string>& header,
                         const std::vector<std::vector<std::string>>& rows,
                         bool csv) {
  std::ostringstream out;
  if (csv) {
    auto line = [&](const std::vector<std::string>& r) {
      for (std::size_t i = 0; i < r.size(); ++i) out << (i ? "," : "") << r[i];
      out << "\n";
    };
    if (!header.empty()) line(header);
    for (const auto& r : rows) line(r);
    return out.str();
  }
  std::vector<std::size_t> width(header.size(), 0);
  for (std::size_t i = 0; i < header.size(); ++i) width[i] = header[i].size();
  for (const auto& r : rows) {
    if (r.size() > width.size()) width.resize(r.size(), 0);
    for (std::size_t i = 0; i < r.size(); ++i) width[i] = std::max(width[i], r[i].size());
  }
  auto line = [&](const std::vector<std::string>& r) {
    for (std::size_t i = 0; i < r.size(); ++i) {
      out << (i ? "  " : "") << std::setw(static_cast<int>(width[i])) << r[i];
    }
    out << "\n";
  };
  if (!header.empty()) line(header);
  for (const auto& r : rows) line(r);
  return out.str();
}

std::string render_object(const json& obj, const std::string& format) {
  if (format == "json") return obj.dump() + "\n";
  const bool csv = format == "csv";
  std::vector<std::vector<std::string>> rows;
  for (const auto& [k, v] : obj.items())
    rows.push_back({k, csv ? csv_cell(v) : cell(v)});
  return render_table(csv ? std::vector<std::string>{"key", "value"}
                          : std::vector<std::string>{},
                      rows, csv);
}

std::string render_matrix(const json& obj, const std::string& format) {
  if (format == "json") return obj.dump() + "\n";
  std::vector<std::vector<std::string>> rows;
  for (const auto& r : obj.at("mat")) {
    std::vector<std::string> row;
    for (const auto& x : r) row.push_back(cell(x));
    rows.push_back(std::move(row));
  }
  return render_table({}, rows, format == "csv");
}

std::string render_supersingular(const json& obj, const std::string& format) {
  if (format == "json") return obj.dump() + "\n";
  std::vector<std::vector<std::string>> rows;
  const auto& pts = obj.at("S");
  const auto& w = obj.at("weights");
  for (std::size_t i = 0; i < pts.size(); ++i) {
    rows.push_back({std::to_string(i), cell(pts[i][0]), cell(pts[i][1]), cell(w[i])});
  }
  return render_table({"index", "c0", "c1", "weight"}, rows, format == "csv");
}

std::string render_reports(const json& arr, const std::string& format) {
  std::ostringstream out;
  if (format == "json") {
    for (const auto& r : arr) out << r.dump() << "\n";
    return out.str();
  }
  std::vector<std::vector<std::string>> rows;
  for (const auto& r : arr) {
    rows.push_back({cell(r.at("theorem")), cell(r.at("p")), cell(r.at("ell")),
                    cell(r.at("s")), cell(r.at("verdict"))});
  }
  return render_table({"theorem", "p", "ell", "s", "verdict"}, rows,
                      format == "csv");
}

void add_context_options(CLI::App* sub, RunConfig& cfg, bool needs_p) {
  auto* p = sub->add_option("-p", cfg.p, "prime p");
  if (needs_p) p->required();
  sub->add_option("--ell", cfg.ell, "prime ell >= 5 dividing p-1 (default: smallest)");
  sub->add_option("-s", cfg.s, "coefficient exponent, Z/ell^s")->capture_default_str();
}

void add_common_options(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--format", cfg.format, "json, csv or pretty")
      ->check(CLI::IsMember({"json", "csv", "pretty"}))
      ->capture_default_str();
  sub->add_option("--output", cfg.output, "write to this file instead of stdout");
  sub->add_option("--cache-dir", cfg.cache_dir,
                  std::string("cache directory (overrides ") + cache_env + ")");
  sub->add_option("--degree-budget", cfg.degree_budget,
                  "max total degree of Hecke monomials for L");
  sub->add_option("--prime-bound", cfg.prime_bound,
                  "largest prime q used for T_q - q - 1 (0: automatic)");
  sub->add_option("--tree-cap", cfg.tree_cap,
                  "largest vertex count for brute-force tree sums (<= 9)");
}

void emit(const RunConfig& cfg, const std::string& text) {
  if (cfg.output.empty()) {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(cfg.output, std::ios::binary | std::ios::trunc);
  out << text;
  if (!out) die(2, "invalid_config", "cannot write " + cfg.output);
}

void print_warnings(mtc_session* session) {
  char* raw = nullptr;
  if (mtc_warnings_json(session, &raw) != MTC_OK) return;
  for (const auto& w : json::parse(take(raw))) {
    std::cerr << json{{"warning", w}}.dump() << "\n";
  }
}

int run(const RunConfig& cfg) {
  mtc_options opts;
  mtc_options_init(&opts);
  if (cfg.degree_budget) opts.degree_budget = cfg.degree_budget;
  opts.prime_bound = cfg.prime_bound;
  if (cfg.tree_cap) opts.tree_cap = cfg.tree_cap;
  std::string cache_dir = cfg.cache_dir;
  if (cache_dir.empty()) {
    if (const char* env = std::getenv(cache_env)) cache_dir = env;
  }
  opts.cache_dir = cache_dir.empty() ? nullptr : cache_dir.c_str();

  if (cfg.subcommand == "battery") {
    int passed = 0;
    char* raw = nullptr;
    mtc_status st = mtc_battery_json(&opts, &passed, &raw);
    if (st != MTC_OK) fail_status(st);
    emit(cfg, render_reports(json::parse(take(raw)), cfg.format));
    return passed ? 0 : 1;
  }

  std::uint64_t ell = cfg.ell ? cfg.ell : mtc_default_ell(cfg.p);
  if (ell == 0) {
    die(2, "invalid_config",
        "no prime ell >= 5 divides p-1 for p=" + std::to_string(cfg.p));
  }
  mtc_session* session = nullptr;
  mtc_status st = mtc_session_create(cfg.p, ell, cfg.s, &opts, &session);
  if (st != MTC_OK) fail_status(st);
  std::unique_ptr<mtc_session, void (*)(mtc_session*)> guard(session,
                                                             mtc_session_destroy);
  char* raw = nullptr;
  int code = 0;
  std::string text;
  const std::string& sc = cfg.subcommand;
  if (sc == "supersingular") {
    st = mtc_supersingular_json(session, &raw);
    if (st == MTC_OK) text = render_supersingular(json::parse(take(raw)), cfg.format);
  } else if (sc == "lmatrix") {
    st = mtc_lmatrix_json(session, &raw);
    if (st == MTC_OK) text = render_matrix(json::parse(take(raw)), cfg.format);
  } else if (sc == "brandt") {
    st = mtc_brandt_json(session, cfg.q, &raw);
    if (st == MTC_OK) text = render_matrix(json::parse(take(raw)), cfg.format);
  } else if (sc == "homology") {
    st = mtc_homology_json(session, &raw);
    if (st == MTC_OK) text = render_object(json::parse(take(raw)), cfg.format);
  } else if (sc == "alpha") {
    st = mtc_alpha_json(session, &raw);
    if (st == MTC_OK) text = render_object(json::parse(take(raw)), cfg.format);
  } else if (sc == "merel") {
    st = mtc_merel_json(session, &raw);
    if (st == MTC_OK) text = render_object(json::parse(take(raw)), cfg.format);
  } else if (sc == "verify") {
    int passed = 0;
    st = mtc_verify_json(session, cfg.theorem.c_str(), &passed, &raw);
    if (st == MTC_OK) {
      text = render_reports(json::parse(take(raw)), cfg.format);
      code = passed ? 0 : 1;
    }
  }
  print_warnings(session);
  if (st != MTC_OK) fail_status(st);
  emit(cfg, text);
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Supersingular L-matrices, Manin-symbol homology and the "
               "Eisenstein ideal for X_0(p)"};
  app.require_subcommand(1);
  RunConfig cfg;

  struct Spec {
    const char* name;
    const char* help;
  };
  const Spec specs[] = {
      {"supersingular", "supersingular j-invariants and weights"},
      {"lmatrix", "the L-matrix on Z[S] mod ell^t"},
      {"brandt", "Brandt matrix of T_q from Phi_q"},
      {"homology", "dimensions and subspace ranks of H"},
      {"alpha", "alpha(p, ell, s) with both methods"},
      {"merel", "sum_{k <= (p-1)/2} k log(k) mod ell"},
      {"verify", "run theorem checks for one context"},
      {"battery", "every check on the standard battery"},
  };
  for (const auto& sp : specs) {
    CLI::App* sub = app.add_subcommand(sp.name, sp.help);
    const std::string name = sp.name;
    if (name != "battery") add_context_options(sub, cfg, true);
    add_common_options(sub, cfg);
    if (name == "brandt") sub->add_option("--q", cfg.q, "prime 2, 3, 5 or 7")->required();
    if (name == "verify") {
      sub->add_option("--theorem", cfg.theorem, "main, alpha2, alpha3, tree or all")
          ->check(CLI::IsMember({"main", "alpha2", "alpha3", "tree", "all"}))
          ->capture_default_str();
    }
    sub->callback([&cfg, name] { cfg.subcommand = name; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << json{{"error", "invalid_config"}, {"message", e.what()}}.dump() << "\n";
    return 2;
  }

  try {
    return run(cfg);
  } catch (const Exit& e) {
    return e.code;
  } catch (const std::exception& e) {
    std::cerr << json{{"error", "internal"}, {"message", e.what()}}.dump() << "\n";
    return 1;
  }
}
