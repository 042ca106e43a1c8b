#pragma once

// Exact linear algebra over the rationals: vectors, Gram matrices,
// fraction-free determinants and rank, Hermite normal form, and lattice
// membership.

#include <gmpxx.h>

#include <algorithm>
#include <compare>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace latinc {

using Scalar = mpq_class;
using Integer = mpz_class;

using RationalMatrix = std::vector<std::vector<Scalar>>;
using IntegerMatrix = std::vector<std::vector<Integer>>;

class LatticeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public LatticeError {
 public:
  DimensionMismatch(std::size_t expected, std::size_t got)
      : LatticeError("dimension mismatch: expected " + std::to_string(expected) +
                     ", got " + std::to_string(got)) {}
};

class PreconditionError : public LatticeError {
 public:
  using LatticeError::LatticeError;
};

class LatticeVector {
 public:
  LatticeVector() = default;
  explicit LatticeVector(std::size_t dim) : coords_(dim) {}
  explicit LatticeVector(std::vector<Scalar> coords) : coords_(std::move(coords)) {
    for (auto& c : coords_) c.canonicalize();
  }
  LatticeVector(std::initializer_list<Scalar> coords) : coords_(coords) {
    for (auto& c : coords_) c.canonicalize();
  }

  std::size_t dim() const { return coords_.size(); }
  const Scalar& operator[](std::size_t i) const { return coords_[i]; }
  std::span<const Scalar> coords() const { return coords_; }

  bool is_zero() const {
    return std::all_of(coords_.begin(), coords_.end(),
                       [](const Scalar& c) { return sgn(c) == 0; });
  }

  bool is_integral() const {
    return std::all_of(coords_.begin(), coords_.end(),
                       [](const Scalar& c) { return c.get_den() == 1; });
  }

  LatticeVector& operator+=(const LatticeVector& o) {
    check_dim(o);
    for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] += o.coords_[i];
    return *this;
  }
  LatticeVector& operator-=(const LatticeVector& o) {
    check_dim(o);
    for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] -= o.coords_[i];
    return *this;
  }
  LatticeVector& operator*=(const Scalar& s) {
    for (auto& c : coords_) c *= s;
    return *this;
  }
  // this -= s * o
  void subtract_multiple(const Scalar& s, const LatticeVector& o) {
    check_dim(o);
    for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] -= s * o.coords_[i];
  }

  friend LatticeVector operator+(LatticeVector a, const LatticeVector& b) { return a += b; }
  friend LatticeVector operator-(LatticeVector a, const LatticeVector& b) { return a -= b; }
  friend LatticeVector operator*(const Scalar& s, LatticeVector a) { return a *= s; }
  friend LatticeVector operator-(LatticeVector a) {
    for (auto& c : a.coords_) c = -c;
    return a;
  }

  friend bool operator==(const LatticeVector& a, const LatticeVector& b) {
    return a.coords_ == b.coords_;
  }
  // Lexicographic on coordinates.
  friend std::strong_ordering operator<=>(const LatticeVector& a, const LatticeVector& b) {
    const std::size_t n = std::min(a.dim(), b.dim());
    for (std::size_t i = 0; i < n; ++i) {
      const int c = cmp(a.coords_[i], b.coords_[i]);
      if (c != 0) return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
    }
    return a.dim() <=> b.dim();
  }

 private:
  void check_dim(const LatticeVector& o) const {
    if (o.dim() != dim()) throw DimensionMismatch(dim(), o.dim());
  }

  std::vector<Scalar> coords_;
};

inline Scalar inner_product(const LatticeVector& u, const LatticeVector& v) {
  if (u.dim() != v.dim()) throw DimensionMismatch(u.dim(), v.dim());
  Scalar sum = 0;
  for (std::size_t i = 0; i < u.dim(); ++i) sum += u[i] * v[i];
  return sum;
}

inline Scalar norm_sq(const LatticeVector& v) { return inner_product(v, v); }

// Order used for every norm-driven scan: squared norm, then coordinates.
inline bool norm_then_lex_less(const LatticeVector& a, const LatticeVector& b) {
  const int c = cmp(norm_sq(a), norm_sq(b));
  if (c != 0) return c < 0;
  return a < b;
}

inline void sort_by_norm(std::vector<LatticeVector>& vs) {
  std::sort(vs.begin(), vs.end(), norm_then_lex_less);
}

// Throws unless every vector has dimension `dim`.
inline void require_dim(std::span<const LatticeVector> vs, std::size_t dim) {
  for (const auto& v : vs)
    if (v.dim() != dim) throw DimensionMismatch(dim, v.dim());
}

inline std::vector<LatticeVector> drop_zeros(std::span<const LatticeVector> vs) {
  std::vector<LatticeVector> out;
  out.reserve(vs.size());
  for (const auto& v : vs)
    if (!v.is_zero()) out.push_back(v);
  return out;
}

inline RationalMatrix gram_matrix(std::span<const LatticeVector> vs) {
  const std::size_t n = vs.size();
  RationalMatrix g(n, std::vector<Scalar>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j <= i; ++j) g[i][j] = g[j][i] = inner_product(vs[i], vs[j]);
  return g;
}

namespace detail {

inline Scalar exact_quotient(const Scalar& a, const Scalar& b) { return a / b; }

inline Integer exact_quotient(const Integer& a, const Integer& b) {
  Integer q;
  mpz_divexact(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

}  // namespace detail

/// Determinant by fraction-free (Bareiss) elimination. Every division is
/// exact, so entry size stays bounded by the minors of the input.
template <typename T>
T bareiss_determinant(std::vector<std::vector<T>> m) {
  const std::size_t n = m.size();
  if (n == 0) return T(1);
  int sign = 1;
  T prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (sgn(m[k][k]) == 0) {
      std::size_t p = k + 1;
      while (p < n && sgn(m[p][k]) == 0) ++p;
      if (p == n) return T(0);
      std::swap(m[k], m[p]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        T t = m[i][j] * m[k][k] - m[i][k] * m[k][j];
        m[i][j] = detail::exact_quotient(t, prev);
      }
    }
    prev = m[k][k];
  }
  T det = m[n - 1][n - 1];
  if (sign < 0) det = -det;
  return det;
}

/// Rank of an integer matrix by fraction-free row elimination.
inline std::size_t fraction_free_rank(IntegerMatrix m) {
  const std::size_t rows = m.size();
  if (rows == 0) return 0;
  const std::size_t cols = m[0].size();
  std::size_t rank = 0;
  Integer prev = 1;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t p = rank;
    while (p < rows && sgn(m[p][c]) == 0) ++p;
    if (p == rows) continue;
    std::swap(m[rank], m[p]);
    for (std::size_t i = rank + 1; i < rows; ++i) {
      for (std::size_t j = c + 1; j < cols; ++j) {
        Integer t = m[i][j] * m[rank][c] - m[i][c] * m[rank][j];
        m[i][j] = detail::exact_quotient(t, prev);
      }
      m[i][c] = 0;
    }
    prev = m[rank][c];
    ++rank;
  }
  return rank;
}

inline Integer common_denominator(std::span<const LatticeVector> vs) {
  Integer d = 1;
  for (const auto& v : vs)
    for (const auto& c : v.coords()) mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), c.get_den_mpz_t());
  return d;
}

/// Rows scaled by `scale`; the caller guarantees the products are integral.
inline IntegerMatrix scaled_integer_rows(std::span<const LatticeVector> vs, const Integer& scale) {
  IntegerMatrix out;
  out.reserve(vs.size());
  for (const auto& v : vs) {
    std::vector<Integer> row(v.dim());
    for (std::size_t i = 0; i < v.dim(); ++i) {
      Scalar s = v[i] * scale;
      if (s.get_den() != 1) throw LatticeError("rescaled coordinate is not integral");
      row[i] = s.get_num();
    }
    out.push_back(std::move(row));
  }
  return out;
}

/// Rank of a set of rational vectors (each row rescaled independently).
inline std::size_t rank_of(std::span<const LatticeVector> vs) {
  IntegerMatrix m;
  m.reserve(vs.size());
  for (const auto& v : vs) {
    const LatticeVector one[] = {v};
    m.push_back(scaled_integer_rows(one, common_denominator(one)).front());
  }
  return fraction_free_rank(std::move(m));
}

/// Hermite normal form of the integer lattice generated by `rows` (each of
/// length `dim`). Pivots are taken from the last column towards the first,
/// so the result is lower echelon: row i has its last nonzero entry
/// (positive) strictly right of row i-1's, and every entry sitting in a
/// pivot column of an earlier row is reduced into [0, pivot). The form is
/// unique, so equal lattices give identical output.
inline IntegerMatrix hnf(IntegerMatrix rows, std::size_t dim) {
  std::erase_if(rows, [](const std::vector<Integer>& r) {
    return std::all_of(r.begin(), r.end(), [](const Integer& x) { return sgn(x) == 0; });
  });
  for (const auto& r : rows)
    if (r.size() != dim) throw DimensionMismatch(dim, r.size());

  auto sub_multiple = [](std::vector<Integer>& dst, const Integer& q, const std::vector<Integer>& src) {
    if (sgn(q) == 0) return;
    for (std::size_t j = 0; j < dst.size(); ++j) dst[j] -= q * src[j];
  };

  IntegerMatrix pivots;  // collected with decreasing pivot column
  std::vector<std::size_t> pivot_cols;
  std::vector<std::vector<Integer>> active = std::move(rows);
  for (std::size_t col = dim; col-- > 0 && !active.empty();) {
    // Euclid on column `col` across the active rows.
    for (;;) {
      std::size_t best = active.size();
      for (std::size_t i = 0; i < active.size(); ++i) {
        if (sgn(active[i][col]) == 0) continue;
        if (best == active.size() || mpz_cmpabs(active[i][col].get_mpz_t(), active[best][col].get_mpz_t()) < 0) best = i;
      }
      if (best == active.size()) break;
      bool others = false;
      for (std::size_t i = 0; i < active.size(); ++i) {
        if (i == best || sgn(active[i][col]) == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), active[i][col].get_mpz_t(), active[best][col].get_mpz_t());
        sub_multiple(active[i], q, active[best]);
        if (sgn(active[i][col]) != 0) others = true;
      }
      if (!others) {
        std::vector<Integer> p = std::move(active[best]);
        active.erase(active.begin() + static_cast<std::ptrdiff_t>(best));
        if (sgn(p[col]) < 0)
          for (auto& x : p) x = -x;
        pivots.push_back(std::move(p));
        pivot_cols.push_back(col);
        break;
      }
    }
    std::erase_if(active, [](const std::vector<Integer>& r) {
      return std::all_of(r.begin(), r.end(), [](const Integer& x) { return sgn(x) == 0; });
    });
  }

  std::reverse(pivots.begin(), pivots.end());
  std::reverse(pivot_cols.begin(), pivot_cols.end());
  // Row i only has entries in columns <= pivot_cols[i]; reduce those that
  // sit in earlier pivot columns, right to left.
  for (std::size_t i = 0; i < pivots.size(); ++i) {
    for (std::size_t k = i; k-- > 0;) {
      const std::size_t c = pivot_cols[k];
      Integer q;
      mpz_fdiv_q(q.get_mpz_t(), pivots[i][c].get_mpz_t(), pivots[k][c].get_mpz_t());
      sub_multiple(pivots[i], q, pivots[k]);
    }
  }
  return pivots;
}

/// Canonical basis of the lattice generated by rational vectors: the
/// Hermite normal form of the vectors scaled to a common denominator D,
/// divided back by D. Independent of the choice of D.
inline std::vector<LatticeVector> rational_hnf(std::span<const LatticeVector> vs, std::size_t dim) {
  require_dim(vs, dim);
  const Integer scale = common_denominator(vs);
  IntegerMatrix h = hnf(scaled_integer_rows(vs, scale), dim);
  std::vector<LatticeVector> out;
  out.reserve(h.size());
  for (auto& row : h) {
    std::vector<Scalar> coords(dim);
    for (std::size_t j = 0; j < dim; ++j) coords[j] = Scalar(row[j], scale);
    out.emplace_back(std::move(coords));
  }
  return out;
}

/// Solves m * X = rhs exactly by Gauss-Jordan elimination; returns nullopt
/// if m is singular.
inline std::optional<RationalMatrix> solve_linear(RationalMatrix m, RationalMatrix rhs) {
  const std::size_t n = m.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && sgn(m[p][c]) == 0) ++p;
    if (p == n) return std::nullopt;
    std::swap(m[c], m[p]);
    std::swap(rhs[c], rhs[p]);
    const Scalar inv = 1 / m[c][c];
    for (auto& x : m[c]) x *= inv;
    for (auto& x : rhs[c]) x *= inv;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || sgn(m[i][c]) == 0) continue;
      const Scalar f = m[i][c];
      for (std::size_t j = c; j < n; ++j) m[i][j] -= f * m[c][j];
      for (std::size_t j = 0; j < rhs[i].size(); ++j) rhs[i][j] -= f * rhs[c][j];
    }
  }
  return rhs;
}

/// Ordered, linearly independent vectors with their Gram matrix. Also
/// caches the dual rows Gram^-1 * B^T, so coordinates of a vector in the
/// span are one matrix-vector product away.
class LatticeBasis {
 public:
  LatticeBasis() = default;
  explicit LatticeBasis(std::size_t dim) : dim_(dim) {}

  /// Throws PreconditionError if the vectors are linearly dependent.
  LatticeBasis(std::size_t dim, std::vector<LatticeVector> vectors)
      : dim_(dim), vectors_(std::move(vectors)) {
    require_dim(vectors_, dim_);
    if (vectors_.size() > dim_) throw PreconditionError("basis has more vectors than the dimension");
    gram_ = gram_matrix(vectors_);
    if (vectors_.empty()) return;
    RationalMatrix bt(vectors_.size(), std::vector<Scalar>(dim_));
    for (std::size_t i = 0; i < vectors_.size(); ++i)
      for (std::size_t j = 0; j < dim_; ++j) bt[i][j] = vectors_[i][j];
    auto dual = solve_linear(gram_, std::move(bt));
    if (!dual) throw PreconditionError("basis vectors are linearly dependent");
    dual_ = std::move(*dual);
  }

  std::size_t dim() const { return dim_; }
  std::size_t rank() const { return vectors_.size(); }
  bool empty() const { return vectors_.empty(); }
  std::span<const LatticeVector> vectors() const { return vectors_; }
  const LatticeVector& operator[](std::size_t i) const { return vectors_[i]; }
  const RationalMatrix& gram() const { return gram_; }
  const RationalMatrix& dual() const { return dual_; }

 private:
  std::size_t dim_ = 0;
  std::vector<LatticeVector> vectors_;
  RationalMatrix gram_;
  RationalMatrix dual_;
};

/// Coordinates c with sum c_i b_i = v, or nullopt when v is outside the
/// real span of the basis.
inline std::optional<std::vector<Scalar>> solve_in_span(const LatticeBasis& basis, const LatticeVector& v) {
  if (v.dim() != basis.dim()) throw DimensionMismatch(basis.dim(), v.dim());
  const std::size_t n = basis.rank();
  std::vector<Scalar> c(n);
  for (std::size_t i = 0; i < n; ++i) {
    Scalar s = 0;
    for (std::size_t j = 0; j < v.dim(); ++j) s += basis.dual()[i][j] * v[j];
    c[i] = s;
  }
  LatticeVector back(v.dim());
  for (std::size_t i = 0; i < n; ++i) back.subtract_multiple(-c[i], basis[i]);
  if (back != v) return std::nullopt;
  return c;
}

inline bool is_member(const LatticeBasis& basis, const LatticeVector& v) {
  const auto c = solve_in_span(basis, v);
  if (!c) return false;
  return std::all_of(c->begin(), c->end(), [](const Scalar& x) { return x.get_den() == 1; });
}

/// Squared volume det(Gram). The empty basis has volume 1.
inline Scalar volume_sq(const LatticeBasis& basis) { return bareiss_determinant(basis.gram()); }

inline bool lattice_equal(std::span<const LatticeVector> a, std::span<const LatticeVector> b) {
  const std::size_t dim = !a.empty() ? a.front().dim() : (!b.empty() ? b.front().dim() : 0);
  require_dim(a, dim);
  require_dim(b, dim);
  return rational_hnf(a, dim) == rational_hnf(b, dim);
}

inline bool lattice_equal(const LatticeBasis& a, const LatticeBasis& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch(a.dim(), b.dim());
  return rational_hnf(a.vectors(), a.dim()) == rational_hnf(b.vectors(), b.dim());
}

inline bool lattice_equal(const LatticeBasis& a, std::span<const LatticeVector> b) {
  require_dim(b, a.dim());
  return rational_hnf(a.vectors(), a.dim()) == rational_hnf(b, a.dim());
}

/// Vectors with a squared norm bound B^2 and a completeness claim made by
/// whoever produced them. Zero vectors are dropped on construction.
class GeneratingSet {
 public:
  GeneratingSet() = default;
  GeneratingSet(std::size_t dim, std::vector<LatticeVector> vectors, Scalar bound_sq, bool complete)
      : dim_(dim), bound_sq_(std::move(bound_sq)), complete_(complete) {
    require_dim(vectors, dim_);
    vectors_ = drop_zeros(vectors);
    for (const auto& v : vectors_)
      if (norm_sq(v) > bound_sq_) throw PreconditionError("generator exceeds the norm bound");
  }

  /// Bound is the largest squared norm present; not claimed complete.
  static GeneratingSet from_generators(std::size_t dim, std::vector<LatticeVector> vectors) {
    Scalar bound = 0;
    for (const auto& v : vectors) bound = std::max(bound, Scalar(norm_sq(v)));
    return GeneratingSet(dim, std::move(vectors), bound, false);
  }

  std::size_t dim() const { return dim_; }
  std::span<const LatticeVector> vectors() const { return vectors_; }
  std::size_t size() const { return vectors_.size(); }
  bool empty() const { return vectors_.empty(); }
  const Scalar& bound_sq() const { return bound_sq_; }
  bool complete() const { return complete_; }

 private:
  std::size_t dim_ = 0;
  std::vector<LatticeVector> vectors_;
  Scalar bound_sq_ = 0;
  bool complete_ = false;
};

}  // namespace latinc
