#pragma once

// Dense exact linear algebra: big-integer matrices, fraction-free
// determinants, GF(2) determinants over packed rows, the Laplace oracle and
// the alternating 0/1 structure vectors used to decompose Hankel matrices.

#include "hankel/bigint.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace hankel {

// Integer sequence values. Every sequence the library generates lives in a
// tiny alphabet, so a machine integer is enough for the terms themselves.
using Term = std::int64_t;
using Sequence = std::vector<Term>;

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  IntMatrix(std::initializer_list<std::initializer_list<long>> init) {
    rows_ = init.size();
    cols_ = rows_ ? init.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& row : init) {
      if (row.size() != cols_) throw ShapeError("ragged matrix initializer");
      for (long v : row) data_.emplace_back(v);
    }
  }

  static IntMatrix identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  Integer& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Integer& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  IntMatrix transpose() const {
    IntMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  IntMatrix operator*(const IntMatrix& rhs) const {
    if (cols_ != rhs.rows_) throw ShapeError("matrix product dimension mismatch");
    IntMatrix out(rows_, rhs.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols_; ++k) {
        const Integer& a = (*this)(i, k);
        if (a == 0) continue;
        for (std::size_t j = 0; j < rhs.cols_; ++j) out(i, j) += a * rhs(k, j);
      }
    return out;
  }

  // Copy `src` into this matrix with its top-left corner at (r0, c0).
  void paste(const IntMatrix& src, std::size_t r0, std::size_t c0) {
    if (r0 + src.rows_ > rows_ || c0 + src.cols_ > cols_) throw ShapeError("paste out of bounds");
    for (std::size_t i = 0; i < src.rows_; ++i)
      for (std::size_t j = 0; j < src.cols_; ++j) (*this)(r0 + i, c0 + j) = src(i, j);
  }

  IntMatrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    if (r0 + nr > rows_ || c0 + nc > cols_) throw ShapeError("block out of bounds");
    IntMatrix out(nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
      for (std::size_t j = 0; j < nc; ++j) out(i, j) = (*this)(r0 + i, c0 + j);
    return out;
  }

  friend bool operator==(const IntMatrix& a, const IntMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  std::string to_text() const {
    std::vector<std::string> cells(data_.size());
    std::size_t width = 1;
    for (std::size_t i = 0; i < data_.size(); ++i) {
      cells[i] = data_[i].get_str();
      width = std::max(width, cells[i].size());
    }
    std::ostringstream os;
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j) {
        const auto& c = cells[i * cols_ + j];
        os << (j ? " " : "") << std::string(width - c.size(), ' ') << c;
      }
      os << '\n';
    }
    return os.str();
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

// Row-major bit matrix; each row is packed into 64-bit words.
class BitMatrix {
 public:
  BitMatrix() = default;
  BitMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), words_((cols + 63) / 64), bits_(rows * words_, 0) {}

  static BitMatrix reduce(const IntMatrix& m) {
    BitMatrix b(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j)
        if (is_odd(m(i, j))) b.set(i, j, true);
    return b;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t words_per_row() const { return words_; }

  bool get(std::size_t i, std::size_t j) const { return (bits_[i * words_ + j / 64] >> (j % 64)) & 1u; }
  void set(std::size_t i, std::size_t j, bool v) {
    std::uint64_t mask = std::uint64_t{1} << (j % 64);
    auto& w = bits_[i * words_ + j / 64];
    w = v ? (w | mask) : (w & ~mask);
  }

  std::uint64_t* row(std::size_t i) { return bits_.data() + i * words_; }
  const std::uint64_t* row(std::size_t i) const { return bits_.data() + i * words_; }

  friend bool operator==(const BitMatrix&, const BitMatrix&) = default;

  std::string to_text() const {
    std::string s;
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j) s += get(i, j) ? '1' : '0';
      s += '\n';
    }
    return s;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> bits_;
};

namespace detail {

// In-place fraction-free elimination on an n x n row-major buffer. Pivot is
// the first nonzero entry at or below the diagonal. Returns the determinant.
inline Integer bareiss_in_place(std::vector<Integer>& a, std::size_t n) {
  if (n == 0) return 1;
  int sign = 1;
  Integer prev = 1;
  auto at = [&](std::size_t i, std::size_t j) -> mpz_ptr { return a[i * n + j].get_mpz_t(); };
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (mpz_sgn(at(k, k)) == 0) {
      std::size_t p = k + 1;
      while (p < n && mpz_sgn(at(p, k)) == 0) ++p;
      if (p == n) return 0;
      for (std::size_t j = k; j < n; ++j) mpz_swap(at(k, j), at(p, j));
      sign = -sign;
    }
    mpz_srcptr pivot = at(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      mpz_srcptr lead = at(i, k);
      const bool lead_zero = mpz_sgn(lead) == 0;
      for (std::size_t j = k + 1; j < n; ++j) {
        mpz_ptr e = at(i, j);
        mpz_mul(e, e, pivot);
        if (!lead_zero) mpz_submul(e, lead, at(k, j));
        if (k > 0) mpz_divexact(e, e, prev.get_mpz_t());
      }
    }
    prev = a[k * n + k];
  }
  Integer det = a[(n - 1) * n + (n - 1)];
  if (sign < 0) det = -det;
  return det;
}

inline Integer cofactor_rec(const IntMatrix& m, std::vector<std::size_t>& cols, std::size_t row) {
  const std::size_t n = cols.size();
  if (n == 0) return 1;
  if (n == 1) return m(row, cols[0]);
  Integer total = 0;
  for (std::size_t c = 0; c < n; ++c) {
    const Integer& entry = m(row, cols[c]);
    if (entry == 0) continue;
    std::size_t removed = cols[c];
    cols.erase(cols.begin() + static_cast<std::ptrdiff_t>(c));
    Integer minor = cofactor_rec(m, cols, row + 1);
    cols.insert(cols.begin() + static_cast<std::ptrdiff_t>(c), removed);
    if (c % 2 == 0)
      total += entry * minor;
    else
      total -= entry * minor;
  }
  return total;
}

}  // namespace detail

/// Exact determinant by Bareiss elimination. The 0 x 0 determinant is 1.
inline Integer det_exact(const IntMatrix& m) {
  if (!m.square()) throw ShapeError("det_exact: matrix is not square");
  std::vector<Integer> buf(m.rows() * m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) buf[i * m.cols() + j] = m(i, j);
  return detail::bareiss_in_place(buf, m.rows());
}

/// Leading principal minors |M[0..k, 0..k]| for k = 1..n, from a single
/// fraction-free pass without row exchanges (Sylvester's identity makes each
/// pivot equal to the corresponding minor). If a minor vanishes the pass
/// stops there: the returned vector ends with that zero.
inline std::vector<Integer> leading_principal_minors(const IntMatrix& m) {
  if (!m.square()) throw ShapeError("leading_principal_minors: matrix is not square");
  const std::size_t n = m.rows();
  std::vector<Integer> a(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i * n + j] = m(i, j);
  std::vector<Integer> minors;
  minors.reserve(n);
  Integer prev = 1;
  auto at = [&](std::size_t i, std::size_t j) -> mpz_ptr { return a[i * n + j].get_mpz_t(); };
  for (std::size_t k = 0; k < n; ++k) {
    minors.push_back(a[k * n + k]);
    if (minors.back() == 0) break;
    mpz_srcptr pivot = at(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      mpz_srcptr lead = at(i, k);
      const bool lead_zero = mpz_sgn(lead) == 0;
      for (std::size_t j = k + 1; j < n; ++j) {
        mpz_ptr e = at(i, j);
        mpz_mul(e, e, pivot);
        if (!lead_zero) mpz_submul(e, lead, at(k, j));
        if (k > 0) mpz_divexact(e, e, prev.get_mpz_t());
      }
    }
    prev = a[k * n + k];
  }
  return minors;
}

/// Determinant over GF(2) by elimination on packed rows.
inline bool det_mod2(BitMatrix m) {
  if (m.rows() != m.cols()) throw ShapeError("det_mod2: matrix is not square");
  const std::size_t n = m.rows();
  const std::size_t w = m.words_per_row();
  for (std::size_t c = 0; c < n; ++c) {
    const std::size_t word = c / 64;
    const std::uint64_t mask = std::uint64_t{1} << (c % 64);
    std::size_t p = c;
    while (p < n && !(m.row(p)[word] & mask)) ++p;
    if (p == n) return false;
    if (p != c) std::swap_ranges(m.row(p), m.row(p) + w, m.row(c));
    const std::uint64_t* piv = m.row(c);
    for (std::size_t i = c + 1; i < n; ++i) {
      std::uint64_t* r = m.row(i);
      if (!(r[word] & mask)) continue;
      for (std::size_t k = word; k < w; ++k) r[k] ^= piv[k];
    }
  }
  return true;
}

inline constexpr std::size_t kCofactorOracleMaxDim = 8;

/// Laplace expansion along the first row. Independent of det_exact; refuses
/// dimensions above 8.
inline Integer det_cofactor_oracle(const IntMatrix& m) {
  if (!m.square()) throw ShapeError("det_cofactor_oracle: matrix is not square");
  if (m.rows() > kCofactorOracleMaxDim)
    throw DomainError("det_cofactor_oracle: dimension " + std::to_string(m.rows()) + " exceeds 8");
  std::vector<std::size_t> cols(m.cols());
  for (std::size_t j = 0; j < cols.size(); ++j) cols[j] = j;
  return detail::cofactor_rec(m, cols, 0);
}

/// The m x n window with entry (i, j) = seq[p + i + j].
inline IntMatrix hankel_block(std::span<const Term> seq, std::size_t p, std::size_t m, std::size_t n) {
  if (m == 0 || n == 0) return IntMatrix(m, n);
  const std::size_t need = p + m + n - 1;
  if (seq.size() < need) throw LengthError("hankel_block: sequence prefix too short", need);
  IntMatrix h(m, n);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) h(i, j) = static_cast<long>(seq[p + i + j]);
  return h;
}

// Structure vectors. Index mapping from the 1-based descriptions: alpha has
// its ones at 0-based even positions, beta at 0-based odd positions; the
// permutation U lists 0-based even indices first, then odd ones.
namespace structure {

inline std::vector<int> alpha(std::size_t n) {
  std::vector<int> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = (i % 2 == 0) ? 1 : 0;
  return v;
}

inline std::vector<int> beta(std::size_t n) {
  std::vector<int> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = (i % 2 == 1) ? 1 : 0;
  return v;
}

// Columns alternate alpha^t(m), beta^t(m), starting with alpha^t.
inline IntMatrix A(std::size_t m, std::size_t n) {
  IntMatrix out(m, n);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) out(i, j) = ((i + j) % 2 == 0) ? 1 : 0;
  return out;
}

// Same as A but starting with beta^t.
inline IntMatrix B(std::size_t m, std::size_t n) {
  IntMatrix out(m, n);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) out(i, j) = ((i + j) % 2 == 1) ? 1 : 0;
  return out;
}

inline std::vector<std::size_t> U(std::size_t n) {
  std::vector<std::size_t> perm;
  perm.reserve(n);
  for (std::size_t i = 0; i < n; i += 2) perm.push_back(i);
  for (std::size_t i = 1; i < n; i += 2) perm.push_back(i);
  return perm;
}

// Permutation matrix whose j-th column is the unit vector e_{perm[j]}.
inline IntMatrix permutation_matrix(std::span<const std::size_t> perm) {
  IntMatrix p(perm.size(), perm.size());
  for (std::size_t j = 0; j < perm.size(); ++j) p(perm[j], j) = 1;
  return p;
}

}  // namespace structure

struct BlockMismatch {
  std::size_t row;
  std::size_t col;
  Integer expected;
  Integer actual;
};

struct Conjugation {
  IntMatrix conjugated;  // U^t H U
  IntMatrix expected;    // the 2 x 2 block assembly
  std::optional<BlockMismatch> mismatch;
  bool blocks_match() const { return !mismatch.has_value(); }
};

/// Conjugate the 2n (or 2n+1) Hankel matrix of `seq` by U and compare it with
/// [[A_n, H_n], [H_n, B_n]] (even) or [[A_{n+1}, H_{n+1,n}], [H_{n,n+1}, B_n]] (odd).
inline Conjugation conjugate_by_U(std::span<const Term> seq, std::size_t n, bool odd_case) {
  const std::size_t dim = odd_case ? 2 * n + 1 : 2 * n;
  const IntMatrix h = hankel_block(seq, 0, dim, dim);
  const auto perm = structure::U(dim);
  const IntMatrix u = structure::permutation_matrix(perm);

  Conjugation out;
  out.conjugated = u.transpose() * h * u;

  const std::size_t top = odd_case ? n + 1 : n;
  out.expected = IntMatrix(dim, dim);
  out.expected.paste(structure::A(top, top), 0, 0);
  out.expected.paste(hankel_block(seq, 0, top, n), 0, top);
  out.expected.paste(hankel_block(seq, 0, n, top), top, 0);
  out.expected.paste(structure::B(n, n), top, top);

  for (std::size_t i = 0; i < dim && !out.mismatch; ++i)
    for (std::size_t j = 0; j < dim; ++j)
      if (out.conjugated(i, j) != out.expected(i, j)) {
        out.mismatch = BlockMismatch{i, j, out.expected(i, j), out.conjugated(i, j)};
        break;
      }
  return out;
}

}  // namespace hankel
