#include "mtcircle/cache.hpp"

#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <thread>

#include "mtcircle/error.hpp"
#include "mtcircle/serialize.hpp"

namespace mtc {

namespace fs = std::filesystem;

std::string check_supersingular(const PrimeContext& ctx,
                                const SupersingularSet& S) {
  if (S.p != ctx.p || S.qnr != ctx.qnr) return "field model mismatch";
  if (S.size() != eichler_count(ctx.p)) return "size differs from Eichler count";
  if (S.weights.size() != S.size()) return "weights misaligned";
  std::uint64_t mass = 0;
  for (std::size_t i = 0; i < S.size(); ++i) {
    const Fp2Elt j = S.js[i];
    if (j.c0 >= ctx.p || j.c1 >= ctx.p) return "coordinate out of range";
    if (i > 0 && !(S.js[i - 1] < j)) return "points not strictly ascending";
    if (S.weights[i] != supersingular_weight(ctx.p, j)) return "weight mismatch";
    mass += 12 / S.weights[i];
  }
  if (mass != ctx.p - 1) return "mass formula fails";
  Fp2Field f(ctx.p, ctx.qnr);
  for (const auto& j : S.js) {
    if (!S.index_of(f.frobenius(j))) return "not Frobenius stable";
  }
  try {
    brandt_matrix(ctx, S, 2);  // every Phi_2 neighbour must lie in S
  } catch (const Error& e) {
    return std::string("Phi_2 closure: ") + e.what();
  }
  return {};
}

std::string check_presentation(std::uint64_t p, const Modulus& m,
                               const ManinSpace& space) {
  if (space.p() != p || !(space.modulus() == m)) return "key mismatch";
  if (space.dim() != 2 * genus_x0(p) + 1) return "dimension is not 2g+1";
  const auto& basis = space.basis_generators();
  for (std::size_t k = 0; k < basis.size(); ++k) {
    if (basis[k] > p || (k > 0 && basis[k] <= basis[k - 1])) return "bad basis";
    auto row = space.symbol(basis[k]);
    for (std::size_t i = 0; i < row.size(); ++i)
      if (row[i] != (i == k ? 1u : 0u)) return "basis symbol is not a unit vector";
  }
  // Both relation families must vanish.
  for (std::size_t x = 0; x <= p; ++x) {
    P1Point pt = space.generator(x);
    auto c = static_cast<std::int64_t>(pt.c), d = static_cast<std::int64_t>(pt.d);
    ZVec two(space.symbol(x).begin(), space.symbol(x).end());
    two = vec_add(two, space.symbol(space.generator_index(d, -c)), m);
    ZVec three(space.symbol(x).begin(), space.symbol(x).end());
    three = vec_add(three, space.symbol(space.generator_index(d, -c - d)), m);
    three = vec_add(three, space.symbol(space.generator_index(-c - d, c)), m);
    if (!is_zero(two) || !is_zero(three)) return "Manin relations fail";
  }
  return {};
}

Cache::Cache(fs::path dir) : dir_(std::move(dir)) {}

fs::path Cache::supersingular_path(std::uint64_t p, std::uint64_t qnr) const {
  return dir_ / ("ss_p" + std::to_string(p) + "_qnr" + std::to_string(qnr) +
                 "_v" + std::to_string(cache_schema_version) + ".json");
}

fs::path Cache::presentation_path(std::uint64_t p, std::uint64_t m) const {
  return dir_ / ("manin_p" + std::to_string(p) + "_m" + std::to_string(m) +
                 "_v" + std::to_string(cache_schema_version) + ".json");
}

std::vector<std::string> Cache::warnings() const {
  std::lock_guard lock(mu_);
  return warnings_;
}

void Cache::warn(std::string msg) {
  std::lock_guard lock(mu_);
  warnings_.push_back(std::move(msg));
}

void Cache::store(const fs::path& path, const std::string& text) {
  std::error_code ec;
  fs::create_directories(dir_, ec);
  if (ec) {
    warn("cache: cannot create " + dir_.string() + ": " + ec.message());
    return;
  }
  auto tag = std::hash<std::thread::id>{}(std::this_thread::get_id());
  fs::path tmp = path;
  tmp += ".tmp" + std::to_string(tag);
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << text;
    if (!out) {
      warn("cache: cannot write " + tmp.string());
      fs::remove(tmp, ec);
      return;
    }
  }
  fs::rename(tmp, path, ec);
  if (ec) {
    warn("cache: cannot rename into " + path.string() + ": " + ec.message());
    fs::remove(tmp, ec);
  }
}

namespace {

std::optional<json> read_json(const fs::path& path, std::string& why) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return json::parse(buf.str());
  } catch (const json::exception& e) {
    why = e.what();
    return json();
  }
}

}  // namespace

SupersingularSet Cache::supersingular(const PrimeContext& ctx) {
  const fs::path path = supersingular_path(ctx.p, ctx.qnr);
  std::string why;
  if (auto j = read_json(path, why)) {
    try {
      if (j->is_null()) fail(ErrorCode::io, why);
      if (j->at("schema").get<int>() != cache_schema_version)
        fail(ErrorCode::io, "schema version");
      SupersingularSet S = supersingular_from_json(*j);
      why = check_supersingular(ctx, S);
      if (why.empty()) return S;
    } catch (const std::exception& e) {
      why = e.what();
    }
    warn("cache: discarding " + path.filename().string() + " (" + why + ")");
  }
  SupersingularSet S = enumerate_supersingular(ctx);
  json out = to_json(S);
  out["schema"] = cache_schema_version;
  store(path, out.dump());
  return S;
}

ManinSpace Cache::presentation(std::uint64_t p, const Modulus& m) {
  const fs::path path = presentation_path(p, m.value());
  std::string why;
  if (auto j = read_json(path, why)) {
    try {
      if (j->is_null()) fail(ErrorCode::io, why);
      if (j->at("schema").get<int>() != cache_schema_version)
        fail(ErrorCode::io, "schema version");
      ManinSpace space = presentation_from_json(*j);
      why = check_presentation(p, m, space);
      if (why.empty()) return space;
    } catch (const std::exception& e) {
      why = e.what();
    }
    warn("cache: discarding " + path.filename().string() + " (" + why + ")");
  }
  ManinSpace space = build_presentation(p, m);
  json out = to_json(space);
  out["schema"] = cache_schema_version;
  store(path, out.dump());
  return space;
}

}  // namespace mtc
