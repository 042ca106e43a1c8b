#pragma once

// Successive minima from a complete generating set: scan vectors by
// nondecreasing norm and record a minimum whenever the vector extends the
// real subspace spanned so far.

#include <latinc/core.hpp>

#include <cmath>
#include <cstddef>
#include <numbers>
#include <optional>
#include <span>
#include <vector>

namespace latinc {

struct MinimaResult {
  std::vector<Scalar> minima_sq;
  std::vector<LatticeVector> witnesses;
  std::size_t rank = 0;
  // Fewer minima than the lattice rank: the bound did not reach lambda_n.
  bool partial = false;
};

/// Subspace of Q^d kept in reduced row echelon form.
class SubspaceTracker {
 public:
  explicit SubspaceTracker(std::size_t dim) : dim_(dim) {}

  std::size_t dim() const { return rows_.size(); }
  bool full() const { return rows_.size() == dim_; }

  /// Adds v if it is outside the current subspace; returns whether it was.
  bool insert(const LatticeVector& v) {
    std::vector<Scalar> w(v.coords().begin(), v.coords().end());
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const Scalar f = w[pivots_[r]];
      if (sgn(f) == 0) continue;
      for (std::size_t j = 0; j < dim_; ++j) w[j] -= f * rows_[r][j];
    }
    std::size_t p = 0;
    while (p < dim_ && sgn(w[p]) == 0) ++p;
    if (p == dim_) return false;
    const Scalar inv = 1 / w[p];
    for (auto& x : w) x *= inv;
    for (auto& row : rows_) {
      const Scalar f = row[p];
      if (sgn(f) == 0) continue;
      for (std::size_t j = 0; j < dim_; ++j) row[j] -= f * w[j];
    }
    rows_.push_back(std::move(w));
    pivots_.push_back(p);
    return true;
  }

 private:
  std::size_t dim_;
  RationalMatrix rows_;
  std::vector<std::size_t> pivots_;
};

/// Runs the scan over `ordered`, which must already be sorted by
/// nondecreasing squared norm (ties in any order).
inline MinimaResult successive_minima_in_scan_order(std::span<const LatticeVector> ordered, std::size_t dim,
                                                    std::optional<std::size_t> lattice_rank = {}) {
  if (ordered.empty()) throw PreconditionError("successive minima need a nonempty generating set");
  require_dim(ordered, dim);
  MinimaResult out;
  SubspaceTracker span(dim);
  Scalar last = 0;
  for (const auto& v : ordered) {
    Scalar n = norm_sq(v);
    if (n < last) throw PreconditionError("scan order is not sorted by norm");
    last = n;
    if (span.full()) break;
    if (sgn(n) == 0) continue;
    if (span.insert(v)) {
      out.minima_sq.push_back(n);
      out.witnesses.push_back(v);
    }
  }
  out.rank = out.minima_sq.size();
  out.partial = lattice_rank && out.rank < *lattice_rank;
  return out;
}

/// `lattice_rank`, when known, lets the result flag a bound that was too
/// small to reach every minimum.
inline MinimaResult successive_minima(const GeneratingSet& s, std::optional<std::size_t> lattice_rank = {}) {
  if (!s.complete()) throw PreconditionError("successive minima need a complete generating set");
  if (s.empty()) throw PreconditionError("successive minima need a nonempty generating set");
  std::vector<LatticeVector> ordered(s.vectors().begin(), s.vectors().end());
  sort_by_norm(ordered);
  return successive_minima_in_scan_order(ordered, s.dim(), lattice_rank);
}

/// Reference implementation: scan every vector in norm order and keep it
/// when the fraction-free rank of kept + {v} grows. No early exit.
inline MinimaResult greedy_minima_oracle(const GeneratingSet& s) {
  if (s.empty()) throw PreconditionError("successive minima need a nonempty generating set");
  std::vector<LatticeVector> ordered(s.vectors().begin(), s.vectors().end());
  sort_by_norm(ordered);
  MinimaResult out;
  std::vector<LatticeVector> kept;
  for (const auto& v : ordered) {
    kept.push_back(v);
    if (rank_of(kept) == kept.size()) {
      out.minima_sq.push_back(norm_sq(v));
      out.witnesses.push_back(v);
    } else {
      kept.pop_back();
    }
  }
  out.rank = kept.size();
  return out;
}

struct MinkowskiTerms {
  long double lower = 0;   // 2^d / d! * vol L
  long double middle = 0;  // lambda_1 ... lambda_d * vol B_d
  long double upper = 0;   // 2^d * vol L
};

inline MinkowskiTerms minkowski_terms(const LatticeBasis& basis, const MinimaResult& result) {
  const std::size_t d = basis.rank();
  if (result.rank != d || result.minima_sq.size() != d)
    throw PreconditionError("minima rank does not match the basis rank");
  const long double dd = static_cast<long double>(d);
  const long double vol = std::sqrt(static_cast<long double>(volume_sq(basis).get_d()));
  const long double two_d = std::pow(2.0L, dd);
  const long double ball = std::pow(std::numbers::pi_v<long double>, dd / 2) / std::tgamma(dd / 2 + 1);
  long double prod = 1;
  for (const auto& m : result.minima_sq) prod *= std::sqrt(static_cast<long double>(m.get_d()));
  return {two_d / std::tgamma(dd + 1) * vol, prod * ball, two_d * vol};
}

/// Both Minkowski inequalities on the successive minima, relative tolerance 1e-9.
inline bool minkowski_check(const LatticeBasis& basis, const MinimaResult& result) {
  constexpr long double tol = 1e-9L;
  const MinkowskiTerms t = minkowski_terms(basis, result);
  return t.lower <= t.middle * (1 + tol) && t.middle <= t.upper * (1 + tol);
}

}  // namespace latinc
