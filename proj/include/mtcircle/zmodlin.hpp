#pragma once

// Exact linear algebra over Z/m for a prime power m = l^k.
//
// Vectors are rows; a matrix acts on the right (v -> v * A). Submodules are
// stored as Howell-canonical bases so that equality of submodules is equality
// of their bases.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace mtc {

using residue = std::uint64_t;

class Modulus {
 public:
  // Throws unless m >= 2 is a prime power below 2^31.
  explicit Modulus(std::uint64_t m);
  static Modulus prime_power(std::uint64_t prime, unsigned exponent);

  std::uint64_t value() const noexcept { return m_; }
  std::uint64_t prime() const noexcept { return prime_; }
  unsigned exponent() const noexcept { return exponent_; }

  residue reduce(std::int64_t x) const noexcept;
  residue add(residue a, residue b) const noexcept {
    residue s = a + b;
    return s >= m_ ? s - m_ : s;
  }
  residue sub(residue a, residue b) const noexcept {
    return a >= b ? a - b : a + m_ - b;
  }
  residue neg(residue a) const noexcept { return a == 0 ? 0 : m_ - a; }
  residue mul(residue a, residue b) const noexcept { return (a * b) % m_; }
  residue pow(residue a, std::uint64_t e) const noexcept;

  // l-adic valuation of x in Z/m; valuation(0) == exponent().
  unsigned valuation(residue x) const noexcept;
  bool is_unit(residue x) const noexcept { return x % prime_ != 0; }
  // Inverse of a unit; throws on non-units.
  residue inverse(residue a) const;
  // l^k as a residue (0 when k >= exponent).
  residue prime_pow(unsigned k) const noexcept;

  friend bool operator==(const Modulus& a, const Modulus& b) noexcept {
    return a.m_ == b.m_;
  }

 private:
  Modulus(std::uint64_t m, std::uint64_t prime, unsigned exponent)
      : m_(m), prime_(prime), exponent_(exponent) {}

  std::uint64_t m_;
  std::uint64_t prime_;
  unsigned exponent_;
};

using ZVec = std::vector<residue>;

class ZMat {
 public:
  ZMat() = default;
  ZMat(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, 0) {}

  static ZMat identity(std::size_t n);
  // Rows must share a length; entries are reduced by `m`.
  static ZMat from_rows(const std::vector<std::vector<std::int64_t>>& rows,
                        const Modulus& m, std::size_t cols = 0);
  static ZMat from_rows(const std::vector<ZVec>& rows, std::size_t cols);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return rows_ == 0; }

  residue& operator()(std::size_t i, std::size_t j) {
    return data_[i * cols_ + j];
  }
  residue operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }
  std::span<residue> row(std::size_t i) {
    return {data_.data() + i * cols_, cols_};
  }
  std::span<const residue> row(std::size_t i) const {
    return {data_.data() + i * cols_, cols_};
  }
  ZVec row_vec(std::size_t i) const {
    auto r = row(i);
    return {r.begin(), r.end()};
  }
  const std::vector<residue>& data() const noexcept { return data_; }

  void append_row(std::span<const residue> r);
  ZMat transpose() const;

  friend bool operator==(const ZMat& a, const ZMat& b) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<residue> data_;
};

// Row span of `basis` inside (Z/m)^ambient_dim, basis in Howell form.
struct Submodule {
  std::size_t ambient_dim = 0;
  ZMat basis;

  std::size_t size() const noexcept { return basis.rows(); }
  bool is_zero() const noexcept { return basis.rows() == 0; }
  // log_l of the number of elements.
  unsigned order_exponent(const Modulus& m) const;
  // Exponents e_i with span ~= (+) Z/l^{e_i}, sorted descending.
  std::vector<unsigned> elementary_divisors(const Modulus& m) const;
  // Number of free summands Z/m.
  std::size_t free_rank(const Modulus& m) const;

  friend bool operator==(const Submodule& a, const Submodule& b) = default;
};

Submodule howell_form(const ZMat& a, const Modulus& m);

// Howell form together with a transform T such that basis = T * a.
struct HowellWithTransform {
  Submodule module;
  ZMat transform;
};
HowellWithTransform howell_form_with_transform(const ZMat& a,
                                               const Modulus& m);

// Coefficients c with c * s.basis == v, or nullopt when v is not in the span.
std::optional<ZVec> membership(std::span<const residue> v, const Submodule& s,
                               const Modulus& m);
bool contains(const Submodule& big, const Submodule& small, const Modulus& m);

// {x : x * a == 0}.
Submodule kernel(const ZMat& a, const Modulus& m);
Submodule module_sum(std::span<const Submodule> parts, const Modulus& m);
Submodule intersection(const Submodule& a, const Submodule& b,
                       const Modulus& m);
// Span of {b * op : b in s}.
Submodule image(const Submodule& s, const ZMat& op, const Modulus& m);
Submodule zero_module(std::size_t ambient_dim);
Submodule full_module(std::size_t ambient_dim);

residue det(const ZMat& a, const Modulus& m);
residue minor_det(const ZMat& a, std::size_t drop_row, std::size_t drop_col,
                  const Modulus& m);

ZMat mat_mul(const ZMat& a, const ZMat& b, const Modulus& m);
ZMat mat_add(const ZMat& a, const ZMat& b, const Modulus& m);
ZMat mat_sub(const ZMat& a, const ZMat& b, const Modulus& m);
ZMat mat_scale(const ZMat& a, residue c, const Modulus& m);
ZMat mat_reduce(const ZMat& a, const Modulus& m);
ZVec vec_mat(std::span<const residue> v, const ZMat& a, const Modulus& m);
ZVec vec_add(std::span<const residue> a, std::span<const residue> b,
             const Modulus& m);
ZVec vec_scale(std::span<const residue> a, residue c, const Modulus& m);
bool is_zero(std::span<const residue> v);

}  // namespace mtc
