#pragma once

// On-disk JSON cache for supersingular sets and Manin presentations. Entries
// are validated before use; bad or unreadable ones are recomputed and the
// problem is recorded as a warning.

#include <filesystem>
#include <mutex>
#include <string>
#include <vector>

#include "mtcircle/gfield.hpp"
#include "mtcircle/modsym.hpp"
#include "mtcircle/ssgraph.hpp"

namespace mtc {

inline constexpr int cache_schema_version = 1;

// Empty string when S passes; otherwise the first failed invariant.
std::string check_supersingular(const PrimeContext& ctx,
                                const SupersingularSet& S);
std::string check_presentation(std::uint64_t p, const Modulus& m,
                               const ManinSpace& space);

class Cache {
 public:
  explicit Cache(std::filesystem::path dir);

  SupersingularSet supersingular(const PrimeContext& ctx);
  ManinSpace presentation(std::uint64_t p, const Modulus& m);

  std::filesystem::path supersingular_path(std::uint64_t p,
                                           std::uint64_t qnr) const;
  std::filesystem::path presentation_path(std::uint64_t p,
                                          std::uint64_t m) const;
  const std::filesystem::path& dir() const noexcept { return dir_; }

  std::vector<std::string> warnings() const;

 private:
  void warn(std::string msg);
  void store(const std::filesystem::path& path, const std::string& text);

  std::filesystem::path dir_;
  mutable std::mutex mu_;
  std::vector<std::string> warnings_;
};

}  // namespace mtc
