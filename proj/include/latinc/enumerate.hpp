#pragma once

// Complete generating sets {v in L \ {0} : |v|^2 <= B^2}.
//
// enumerate_up_to walks the coefficient tree of a reduced basis using the
// exact Gram-Schmidt decomposition of its Gram matrix
//   Q(x) = sum_i  b*_i (x_i + sum_{j>i} mu_ji x_j)^2 ,
// and bounds each coordinate with exact rational comparisons, so boundary
// vectors are never lost to rounding. box_oracle is the naive reference:
// scan a coefficient box derived from the dual basis norms.

#include <latinc/core.hpp>
#include <latinc/reduction.hpp>

#include <cstddef>
#include <string>
#include <vector>

namespace latinc {

inline constexpr std::size_t kDefaultEnumerationCap = 1'000'000;

class EnumerationCapExceeded : public LatticeError {
 public:
  explicit EnumerationCapExceeded(std::size_t cap)
      : LatticeError("enumeration exceeded the cap of " + std::to_string(cap) + " vectors"), cap_(cap) {}
  std::size_t cap() const { return cap_; }

 private:
  std::size_t cap_;
};

struct EnumerationRequest {
  LatticeBasis basis;
  Scalar bound_sq;
  std::size_t cap = kDefaultEnumerationCap;

  void validate() const {
    if (sgn(bound_sq) <= 0) throw PreconditionError("enumeration bound must be positive");
    if (basis.rank() == 0) throw PreconditionError("enumeration needs a basis of rank >= 1");
  }
};

namespace detail {

inline Integer floor_of(const Scalar& x) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return r;
}

// floor(sqrt(t)) for t >= 0.
inline Integer isqrt_floor(const Scalar& t) {
  Integer f = floor_of(t);
  Integer r;
  mpz_sqrt(r.get_mpz_t(), f.get_mpz_t());
  return r;
}

inline LatticeVector combine(const LatticeBasis& basis, const std::vector<Integer>& x) {
  LatticeVector v(basis.dim());
  for (std::size_t i = 0; i < x.size(); ++i)
    if (sgn(x[i]) != 0) v.subtract_multiple(Scalar(-x[i]), basis[i]);
  return v;
}

class ShortVectorSearch {
 public:
  ShortVectorSearch(const LatticeBasis& basis, const Scalar& bound_sq, std::size_t cap)
      : basis_(basis), bound_(bound_sq), cap_(cap), n_(basis.rank()) {
    const auto& g = basis_.gram();
    mu_.assign(n_, std::vector<Scalar>(n_));
    bstar_.resize(n_);
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = 0; j < i; ++j) {
        Scalar s = g[i][j];
        for (std::size_t k = 0; k < j; ++k) s -= mu_[i][k] * mu_[j][k] * bstar_[k];
        mu_[i][j] = s / bstar_[j];
      }
      Scalar s = g[i][i];
      for (std::size_t k = 0; k < i; ++k) s -= mu_[i][k] * mu_[i][k] * bstar_[k];
      bstar_[i] = s;
    }
    x_.resize(n_);
  }

  std::vector<LatticeVector> run() {
    descend(n_, Scalar(0));
    return std::move(out_);
  }

 private:
  // Coordinates x_level.. are fixed; `used` is their share of Q(x).
  void descend(std::size_t level, const Scalar& used) {
    if (level == 0) {
      bool zero = true;
      for (const auto& xi : x_) zero = zero && sgn(xi) == 0;
      if (zero) return;
      if (out_.size() >= cap_) throw EnumerationCapExceeded(cap_);
      out_.push_back(combine(basis_, x_));
      return;
    }
    const std::size_t i = level - 1;
    Scalar center = 0;
    for (std::size_t j = i + 1; j < n_; ++j) center -= mu_[j][i] * Scalar(x_[j]);
    const Scalar remaining = bound_ - used;
    const Scalar t = remaining / bstar_[i];
    const Integer s = isqrt_floor(t);
    const Integer base = floor_of(center);
    for (Integer xi = base - s - 1; xi <= base + s + 2; ++xi) {
      const Scalar diff = Scalar(xi) - center;
      const Scalar q = bstar_[i] * diff * diff;
      if (q > remaining) continue;
      x_[i] = xi;
      descend(i, used + q);
    }
    x_[i] = 0;
  }

  const LatticeBasis& basis_;
  Scalar bound_;
  std::size_t cap_;
  std::size_t n_;
  RationalMatrix mu_;
  std::vector<Scalar> bstar_;
  std::vector<Integer> x_;
  std::vector<LatticeVector> out_;
};

}  // namespace detail

/// Every nonzero lattice vector with squared norm <= bound_sq, sorted by
/// (squared norm, coordinates). Throws EnumerationCapExceeded instead of
/// truncating.
inline GeneratingSet enumerate_up_to(const EnumerationRequest& req) {
  req.validate();
  const LatticeBasis reduced = mlll(req.basis.dim(), req.basis.vectors());
  std::vector<LatticeVector> found = detail::ShortVectorSearch(reduced, req.bound_sq, req.cap).run();
  sort_by_norm(found);
  return GeneratingSet(req.basis.dim(), std::move(found), req.bound_sq, true);
}

inline constexpr std::size_t kBoxOracleMaxRank = 5;
inline constexpr std::size_t kBoxOracleMaxPoints = 20'000'000;

/// Exhaustive scan of |x_i| <= sqrt(bound_sq * (G^-1)_ii) over the given
/// basis, which contains every lattice vector within the bound.
inline GeneratingSet box_oracle(const EnumerationRequest& req) {
  req.validate();
  const LatticeBasis& basis = req.basis;
  const std::size_t n = basis.rank();
  if (n > kBoxOracleMaxRank) throw PreconditionError("box oracle is limited to rank <= 5");

  std::vector<Integer> radius(n);
  Integer points = 1;
  for (std::size_t i = 0; i < n; ++i) {
    Scalar dual_sq = 0;
    for (const auto& c : basis.dual()[i]) dual_sq += c * c;
    radius[i] = detail::isqrt_floor(req.bound_sq * dual_sq);
    points *= 2 * radius[i] + 1;
  }
  if (points > Integer(static_cast<unsigned long>(kBoxOracleMaxPoints)))
    throw PreconditionError("box oracle search space too large");

  std::vector<LatticeVector> found;
  std::vector<Integer> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = -radius[i];
  for (;;) {
    LatticeVector v = detail::combine(basis, x);
    if (!v.is_zero() && norm_sq(v) <= req.bound_sq) {
      if (found.size() >= req.cap) throw EnumerationCapExceeded(req.cap);
      found.push_back(std::move(v));
    }
    std::size_t i = 0;
    while (i < n && x[i] == radius[i]) {
      x[i] = -radius[i];
      ++i;
    }
    if (i == n) break;
    ++x[i];
  }
  sort_by_norm(found);
  return GeneratingSet(basis.dim(), std::move(found), req.bound_sq, true);
}

/// lambda_1(L)^2, by enumerating up to the shortest reduced basis vector.
inline Scalar first_minimum_sq(const LatticeBasis& basis) {
  if (basis.rank() == 0) throw PreconditionError("first minimum of the zero lattice is undefined");
  const LatticeBasis reduced = mlll(basis.dim(), basis.vectors());
  Scalar bound = norm_sq(reduced[0]);
  for (const auto& b : reduced.vectors()) bound = std::min(bound, Scalar(norm_sq(b)));
  const GeneratingSet s = enumerate_up_to({reduced, bound});
  return norm_sq(s.vectors().front());
}

}  // namespace latinc
