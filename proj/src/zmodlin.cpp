#include "mtcircle/zmodlin.hpp"

#include <algorithm>
#include <string>
#include <utility>

#include "mtcircle/error.hpp"

namespace mtc {

Modulus::Modulus(std::uint64_t m) : m_(m), prime_(0), exponent_(0) {
  if (m < 2 || m >= (1ULL << 31)) {
    fail(ErrorCode::invalid_argument,
         "modulus out of range: " + std::to_string(m));
  }
  std::uint64_t rest = m;
  for (std::uint64_t d = 2; d * d <= rest; ++d) {
    if (rest % d == 0) {
      prime_ = d;
      break;
    }
  }
  if (prime_ == 0) prime_ = m;
  while (rest % prime_ == 0) {
    rest /= prime_;
    ++exponent_;
  }
  if (rest != 1) {
    fail(ErrorCode::invalid_argument,
         "modulus is not a prime power: " + std::to_string(m));
  }
}

Modulus Modulus::prime_power(std::uint64_t prime, unsigned exponent) {
  std::uint64_t m = 1;
  for (unsigned i = 0; i < exponent; ++i) m *= prime;
  Modulus out(m);
  if (out.prime_ != prime) {
    fail(ErrorCode::invalid_argument, "base is not prime");
  }
  return out;
}

residue Modulus::reduce(std::int64_t x) const noexcept {
  auto mm = static_cast<std::int64_t>(m_);
  std::int64_t r = x % mm;
  return static_cast<residue>(r < 0 ? r + mm : r);
}

residue Modulus::pow(residue a, std::uint64_t e) const noexcept {
  residue result = 1 % m_;
  residue base = a % m_;
  while (e > 0) {
    if (e & 1) result = mul(result, base);
    base = mul(base, base);
    e >>= 1;
  }
  return result;
}

unsigned Modulus::valuation(residue x) const noexcept {
  x %= m_;
  if (x == 0) return exponent_;
  unsigned v = 0;
  while (x % prime_ == 0) {
    x /= prime_;
    ++v;
  }
  return v;
}

residue Modulus::inverse(residue a) const {
  a %= m_;
  if (!is_unit(a)) {
    fail(ErrorCode::invalid_argument,
         "non-unit " + std::to_string(a) + " mod " + std::to_string(m_));
  }
  std::int64_t t = 0, new_t = 1;
  std::int64_t r = static_cast<std::int64_t>(m_);
  std::int64_t new_r = static_cast<std::int64_t>(a);
  while (new_r != 0) {
    std::int64_t q = r / new_r;
    t = std::exchange(new_t, t - q * new_t);
    r = std::exchange(new_r, r - q * new_r);
  }
  return reduce(t);
}

residue Modulus::prime_pow(unsigned k) const noexcept {
  if (k >= exponent_) return 0;
  residue out = 1;
  for (unsigned i = 0; i < k; ++i) out *= prime_;
  return out;
}

ZMat ZMat::identity(std::size_t n) {
  ZMat out(n, n);
  for (std::size_t i = 0; i < n; ++i) out(i, i) = 1;
  return out;
}

ZMat ZMat::from_rows(const std::vector<std::vector<std::int64_t>>& rows,
                     const Modulus& m, std::size_t cols) {
  if (!rows.empty()) cols = rows.front().size();
  ZMat out(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) {
      fail(ErrorCode::dimension_mismatch, "ragged rows");
    }
    for (std::size_t j = 0; j < cols; ++j) out(i, j) = m.reduce(rows[i][j]);
  }
  return out;
}

ZMat ZMat::from_rows(const std::vector<ZVec>& rows, std::size_t cols) {
  ZMat out(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) {
      fail(ErrorCode::dimension_mismatch, "ragged rows");
    }
    std::copy(rows[i].begin(), rows[i].end(), out.row(i).begin());
  }
  return out;
}

void ZMat::append_row(std::span<const residue> r) {
  if (rows_ == 0 && cols_ == 0) cols_ = r.size();
  if (r.size() != cols_) fail(ErrorCode::dimension_mismatch, "row length");
  data_.insert(data_.end(), r.begin(), r.end());
  ++rows_;
}

ZMat ZMat::transpose() const {
  ZMat out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
  return out;
}

namespace {

std::optional<std::size_t> leading_column(std::span<const residue> r) {
  for (std::size_t j = 0; j < r.size(); ++j)
    if (r[j] != 0) return j;
  return std::nullopt;
}

// dst -= f * src, from column `from` on.
void axpy_sub(ZVec& dst, const ZVec& src, residue f, const Modulus& m,
              std::size_t from = 0) {
  if (f == 0) return;
  for (std::size_t j = from; j < dst.size(); ++j) {
    if (src[j] != 0) dst[j] = m.sub(dst[j], m.mul(f, src[j]));
  }
}

void scale_in_place(ZVec& v, residue f, const Modulus& m) {
  for (auto& x : v) x = m.mul(x, f);
}

// Howell reduction for the local ring Z/l^k. Rows of `rows` are consumed. If
// `trans` is non-null it carries the matching combinations of input rows.
void howell_core(std::vector<ZVec>& rows, std::vector<ZVec>* trans,
                 std::size_t cols, const Modulus& m, std::vector<ZVec>& out,
                 std::vector<ZVec>* out_trans) {
  const unsigned s = m.exponent();
  std::vector<std::size_t> pivot_cols;
  std::vector<residue> pivot_vals;

  auto drop_zero_rows = [&]() {
    std::size_t w = 0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (is_zero(rows[i])) continue;
      if (w != i) {
        rows[w] = std::move(rows[i]);
        if (trans) (*trans)[w] = std::move((*trans)[i]);
      }
      ++w;
    }
    rows.resize(w);
    if (trans) trans->resize(w);
  };
  drop_zero_rows();

  for (std::size_t c = 0; c < cols && !rows.empty(); ++c) {
    std::size_t best = rows.size();
    unsigned best_val = s;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i][c] == 0) continue;
      unsigned v = m.valuation(rows[i][c]);
      if (v < best_val) {
        best_val = v;
        best = i;
        if (v == 0) break;
      }
    }
    if (best == rows.size()) continue;

    std::swap(rows[best], rows.back());
    ZVec pivot = std::move(rows.back());
    rows.pop_back();
    ZVec pivot_t;
    if (trans) {
      std::swap((*trans)[best], trans->back());
      pivot_t = std::move(trans->back());
      trans->pop_back();
    }

    const residue lv = m.prime_pow(best_val);
    const residue unit = m.inverse(pivot[c] / lv);
    scale_in_place(pivot, unit, m);
    if (trans) scale_in_place(pivot_t, unit, m);

    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i][c] == 0) continue;
      residue f = rows[i][c] / lv;
      axpy_sub(rows[i], pivot, f, m, c);
      if (trans) axpy_sub((*trans)[i], pivot_t, f, m);
    }
    if (best_val > 0) {
      // l^{s-v} * pivot vanishes at column c but may survive further right.
      residue ann = m.prime_pow(s - best_val);
      ZVec sat = pivot;
      scale_in_place(sat, ann, m);
      if (!is_zero(sat)) {
        rows.push_back(std::move(sat));
        if (trans) {
          ZVec sat_t = pivot_t;
          scale_in_place(sat_t, ann, m);
          trans->push_back(std::move(sat_t));
        }
      }
    }
    pivot_cols.push_back(c);
    pivot_vals.push_back(lv);
    out.push_back(std::move(pivot));
    if (out_trans) out_trans->push_back(std::move(pivot_t));
    drop_zero_rows();
  }

  // Reduce entries above each pivot into [0, pivot).
  for (std::size_t i = 0; i < out.size(); ++i) {
    const std::size_t c = pivot_cols[i];
    const residue lv = pivot_vals[i];
    for (std::size_t j = 0; j < i; ++j) {
      residue f = out[j][c] / lv;
      if (f == 0) continue;
      axpy_sub(out[j], out[i], f, m, c);
      if (out_trans) axpy_sub((*out_trans)[j], (*out_trans)[i], f, m);
    }
  }
}

std::vector<ZVec> to_rows(const ZMat& a) {
  std::vector<ZVec> rows;
  rows.reserve(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) rows.push_back(a.row_vec(i));
  return rows;
}

}  // namespace

bool is_zero(std::span<const residue> v) {
  return std::all_of(v.begin(), v.end(), [](residue x) { return x == 0; });
}

unsigned Submodule::order_exponent(const Modulus& m) const {
  unsigned total = 0;
  for (std::size_t i = 0; i < basis.rows(); ++i) {
    auto r = basis.row(i);
    auto c = leading_column(r);
    if (c) total += m.exponent() - m.valuation(r[*c]);
  }
  return total;
}

std::vector<unsigned> Submodule::elementary_divisors(const Modulus& m) const {
  const unsigned s = m.exponent();
  // counts[k] = #{i : e_i > k} = order(l^k S) - order(l^{k+1} S)
  std::vector<unsigned> orders(s + 1, 0);
  for (unsigned k = 0; k <= s; ++k) {
    ZMat scaled = mat_scale(basis, m.prime_pow(k), m);
    if (k >= s) scaled = ZMat(0, ambient_dim);
    orders[k] = howell_form(scaled, m).order_exponent(m);
  }
  std::vector<unsigned> out;
  for (unsigned e = s; e >= 1; --e) {
    unsigned greater_eq = orders[e - 1] - orders[e];
    unsigned greater = e < s ? orders[e] - orders[e + 1] : 0;
    for (unsigned i = 0; i < greater_eq - greater; ++i) out.push_back(e);
  }
  return out;
}

std::size_t Submodule::free_rank(const Modulus& m) const {
  auto ed = elementary_divisors(m);
  return static_cast<std::size_t>(
      std::count(ed.begin(), ed.end(), m.exponent()));
}

Submodule howell_form(const ZMat& a, const Modulus& m) {
  std::vector<ZVec> rows = to_rows(a);
  for (auto& r : rows)
    for (auto& x : r) x %= m.value();
  std::vector<ZVec> out;
  howell_core(rows, nullptr, a.cols(), m, out, nullptr);
  return Submodule{a.cols(), ZMat::from_rows(out, a.cols())};
}

HowellWithTransform howell_form_with_transform(const ZMat& a,
                                               const Modulus& m) {
  std::vector<ZVec> rows = to_rows(a);
  for (auto& r : rows)
    for (auto& x : r) x %= m.value();
  std::vector<ZVec> trans(a.rows(), ZVec(a.rows(), 0));
  for (std::size_t i = 0; i < a.rows(); ++i) trans[i][i] = 1;
  std::vector<ZVec> out, out_trans;
  howell_core(rows, &trans, a.cols(), m, out, &out_trans);
  return {Submodule{a.cols(), ZMat::from_rows(out, a.cols())},
          ZMat::from_rows(out_trans, a.rows())};
}

std::optional<ZVec> membership(std::span<const residue> v, const Submodule& s,
                               const Modulus& m) {
  if (v.size() != s.ambient_dim) {
    fail(ErrorCode::dimension_mismatch,
         "vector length " + std::to_string(v.size()) + " vs ambient " +
             std::to_string(s.ambient_dim));
  }
  ZVec rest(v.begin(), v.end());
  for (auto& x : rest) x %= m.value();
  ZVec coeffs(s.basis.rows(), 0);
  for (std::size_t i = 0; i < s.basis.rows(); ++i) {
    auto row = s.basis.row(i);
    std::size_t c = *leading_column(row);
    for (std::size_t j = 0; j < c; ++j)
      if (rest[j] != 0) return std::nullopt;
    if (rest[c] == 0) continue;
    if (rest[c] % row[c] != 0) return std::nullopt;
    residue f = rest[c] / row[c];
    coeffs[i] = f;
    for (std::size_t j = c; j < rest.size(); ++j)
      rest[j] = m.sub(rest[j], m.mul(f, row[j]));
  }
  if (!is_zero(rest)) return std::nullopt;
  return coeffs;
}

bool contains(const Submodule& big, const Submodule& small, const Modulus& m) {
  for (std::size_t i = 0; i < small.basis.rows(); ++i)
    if (!membership(small.basis.row(i), big, m)) return false;
  return true;
}

Submodule kernel(const ZMat& a, const Modulus& m) {
  const std::size_t n = a.rows();
  const std::size_t c = a.cols();
  ZMat aug(n, c + n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < c; ++j) aug(i, j) = a(i, j) % m.value();
    aug(i, c + i) = 1;
  }
  Submodule h = howell_form(aug, m);
  ZMat ker(0, n);
  for (std::size_t i = 0; i < h.basis.rows(); ++i) {
    auto r = h.basis.row(i);
    if (*leading_column(r) < c) continue;
    ker.append_row(r.subspan(c));
  }
  // Trailing rows of a Howell form are themselves in Howell form.
  return Submodule{n, std::move(ker)};
}

Submodule module_sum(std::span<const Submodule> parts, const Modulus& m) {
  if (parts.empty()) fail(ErrorCode::invalid_argument, "empty module_sum");
  const std::size_t dim = parts.front().ambient_dim;
  ZMat stacked(0, dim);
  for (const auto& p : parts) {
    if (p.ambient_dim != dim) {
      fail(ErrorCode::dimension_mismatch, "module_sum ambient dimensions");
    }
    for (std::size_t i = 0; i < p.basis.rows(); ++i)
      stacked.append_row(p.basis.row(i));
  }
  return howell_form(stacked, m);
}

Submodule intersection(const Submodule& a, const Submodule& b,
                       const Modulus& m) {
  if (a.ambient_dim != b.ambient_dim) {
    fail(ErrorCode::dimension_mismatch, "intersection ambient dimensions");
  }
  const std::size_t dim = a.ambient_dim;
  if (a.is_zero() || b.is_zero()) return zero_module(dim);
  ZMat stacked(0, dim);
  for (std::size_t i = 0; i < a.basis.rows(); ++i)
    stacked.append_row(a.basis.row(i));
  for (std::size_t i = 0; i < b.basis.rows(); ++i)
    stacked.append_row(b.basis.row(i));
  Submodule k = kernel(stacked, m);
  ZMat left(k.basis.rows(), a.basis.rows());
  for (std::size_t i = 0; i < k.basis.rows(); ++i)
    for (std::size_t j = 0; j < a.basis.rows(); ++j) left(i, j) = k.basis(i, j);
  if (left.rows() == 0) return zero_module(dim);
  return howell_form(mat_mul(left, a.basis, m), m);
}

Submodule image(const Submodule& s, const ZMat& op, const Modulus& m) {
  if (s.ambient_dim != op.rows()) {
    fail(ErrorCode::dimension_mismatch, "image: operator size");
  }
  if (s.is_zero()) return zero_module(op.cols());
  return howell_form(mat_mul(s.basis, op, m), m);
}

Submodule zero_module(std::size_t ambient_dim) {
  return Submodule{ambient_dim, ZMat(0, ambient_dim)};
}

Submodule full_module(std::size_t ambient_dim) {
  return Submodule{ambient_dim, ZMat::identity(ambient_dim)};
}

residue det(const ZMat& a, const Modulus& m) {
  if (a.rows() != a.cols()) {
    fail(ErrorCode::dimension_mismatch, "det of non-square matrix");
  }
  const std::size_t n = a.rows();
  std::vector<ZVec> w = to_rows(a);
  for (auto& r : w)
    for (auto& x : r) x %= m.value();
  residue result = 1 % m.value();
  for (std::size_t c = 0; c < n; ++c) {
    // In Z/l^k the entry of least valuation divides the rest of its column.
    std::size_t best = n;
    unsigned best_val = m.exponent();
    for (std::size_t i = c; i < n; ++i) {
      if (w[i][c] == 0) continue;
      unsigned v = m.valuation(w[i][c]);
      if (v < best_val) {
        best_val = v;
        best = i;
      }
    }
    if (best == n) return 0;
    if (best != c) {
      std::swap(w[best], w[c]);
      result = m.neg(result);
    }
    const residue lv = m.prime_pow(best_val);
    const residue unit_inv = m.inverse(w[c][c] / lv);
    for (std::size_t i = c + 1; i < n; ++i) {
      if (w[i][c] == 0) continue;
      residue f = m.mul(w[i][c] / lv, unit_inv);
      axpy_sub(w[i], w[c], f, m, c);
    }
    result = m.mul(result, w[c][c]);
  }
  return result;
}

residue minor_det(const ZMat& a, std::size_t drop_row, std::size_t drop_col,
                  const Modulus& m) {
  if (a.rows() != a.cols()) {
    fail(ErrorCode::dimension_mismatch, "minor of non-square matrix");
  }
  if (drop_row >= a.rows() || drop_col >= a.cols()) {
    fail(ErrorCode::invalid_argument, "minor index out of range");
  }
  const std::size_t n = a.rows();
  ZMat sub(n - 1, n - 1);
  for (std::size_t i = 0, si = 0; i < n; ++i) {
    if (i == drop_row) continue;
    for (std::size_t j = 0, sj = 0; j < n; ++j) {
      if (j == drop_col) continue;
      sub(si, sj++) = a(i, j);
    }
    ++si;
  }
  return det(sub, m);
}

ZMat mat_mul(const ZMat& a, const ZMat& b, const Modulus& m) {
  if (a.cols() != b.rows()) {
    fail(ErrorCode::dimension_mismatch, "mat_mul inner dimensions");
  }
  ZMat out(a.rows(), b.cols());
  const std::uint64_t mv = m.value();
  std::vector<std::uint64_t> acc(b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    std::fill(acc.begin(), acc.end(), 0);
    for (std::size_t k = 0; k < a.cols(); ++k) {
      residue x = a(i, k);
      if (x == 0) continue;
      auto br = b.row(k);
      for (std::size_t j = 0; j < b.cols(); ++j) {
        // x, br[j] < 2^31 so the product fits; reduce before overflow.
        acc[j] = (acc[j] + x * br[j]) % mv;
      }
    }
    std::copy(acc.begin(), acc.end(), out.row(i).begin());
  }
  return out;
}

ZMat mat_add(const ZMat& a, const ZMat& b, const Modulus& m) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    fail(ErrorCode::dimension_mismatch, "mat_add shapes");
  }
  ZMat out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      out(i, j) = m.add(a(i, j) % m.value(), b(i, j) % m.value());
  return out;
}

ZMat mat_sub(const ZMat& a, const ZMat& b, const Modulus& m) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    fail(ErrorCode::dimension_mismatch, "mat_sub shapes");
  }
  ZMat out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      out(i, j) = m.sub(a(i, j) % m.value(), b(i, j) % m.value());
  return out;
}

ZMat mat_scale(const ZMat& a, residue c, const Modulus& m) {
  ZMat out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = m.mul(a(i, j), c);
  return out;
}

ZMat mat_reduce(const ZMat& a, const Modulus& m) {
  ZMat out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j) % m.value();
  return out;
}

ZVec vec_mat(std::span<const residue> v, const ZMat& a, const Modulus& m) {
  if (v.size() != a.rows()) {
    fail(ErrorCode::dimension_mismatch, "vec_mat length");
  }
  ZVec out(a.cols(), 0);
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (v[k] == 0) continue;
    auto r = a.row(k);
    for (std::size_t j = 0; j < out.size(); ++j)
      out[j] = (out[j] + v[k] * r[j]) % m.value();
  }
  return out;
}

ZVec vec_add(std::span<const residue> a, std::span<const residue> b,
             const Modulus& m) {
  if (a.size() != b.size()) fail(ErrorCode::dimension_mismatch, "vec_add");
  ZVec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = m.add(a[i], b[i]);
  return out;
}

ZVec vec_scale(std::span<const residue> a, residue c, const Modulus& m) {
  ZVec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = m.mul(a[i], c);
  return out;
}

}  // namespace mtc
