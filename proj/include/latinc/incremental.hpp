#pragma once

// Incremental basis construction: each generator is first located (a
// membership test against the lattice built so far) and only triggers an
// update, i.e. a new reduced basis of L + Zv, when it is not already in L.

#include <latinc/core.hpp>
#include <latinc/reduction.hpp>

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace latinc {

struct InsertionRecord {
  std::size_t index = 0;  // position in the caller's generator list
  bool was_update = false;
  std::size_t rank_after = 0;
  Scalar volume_sq_after;
};

/// One record per nonzero generator. Within a run of equal rank the squared
/// volume strictly drops at every update and stays put otherwise.
struct UpdateTrace {
  std::vector<InsertionRecord> insertions;
  std::size_t update_count = 0;
  std::size_t membership_tests = 0;
};

struct IncrementalResult {
  LatticeBasis basis;
  UpdateTrace trace;
};

inline IncrementalResult incremental_basis(std::size_t dim, std::span<const LatticeVector> generators,
                                           const ReductionParams& params = {}) {
  params.validate();
  require_dim(generators, dim);
  IncrementalResult out{LatticeBasis(dim), {}};
  Scalar volume = 1;
  for (std::size_t i = 0; i < generators.size(); ++i) {
    const LatticeVector& v = generators[i];
    if (v.is_zero()) continue;
    ++out.trace.membership_tests;
    const bool update = !is_member(out.basis, v);
    if (update) {
      out.basis = basis_union(out.basis, v, params);
      volume = volume_sq(out.basis);
      ++out.trace.update_count;
    }
    out.trace.insertions.push_back({i, update, out.basis.rank(), volume});
  }
  return out;
}

inline IncrementalResult incremental_basis(std::span<const LatticeVector> generators,
                                           const ReductionParams& params = {}) {
  return incremental_basis(generators.empty() ? 0 : generators.front().dim(), generators, params);
}

/// Exact check of  u <= d + log2(d! (B/lambda1)^d), rewritten as
/// 4^(u-d) <= (d!)^2 (B^2/lambda1^2)^d  when u > d.
inline bool update_step_bound_holds(std::size_t update_count, std::size_t d, const Scalar& bound_sq,
                                    const Scalar& lambda1_sq) {
  if (sgn(lambda1_sq) <= 0) throw PreconditionError("first minimum must be positive");
  if (update_count <= d) return true;
  Integer lhs;
  mpz_ui_pow_ui(lhs.get_mpz_t(), 4, update_count - d);
  Integer fact;
  mpz_fac_ui(fact.get_mpz_t(), d);
  Scalar ratio = bound_sq / lambda1_sq;
  Scalar rhs = Scalar(fact * fact);
  for (std::size_t i = 0; i < d; ++i) rhs *= ratio;
  return Scalar(lhs) <= rhs;
}

inline bool update_step_bound_holds(const UpdateTrace& trace, std::size_t d, const Scalar& bound_sq,
                                    const Scalar& lambda1_sq) {
  return update_step_bound_holds(trace.update_count, d, bound_sq, lambda1_sq);
}

/// d + log2(d!) + (d/2) log2(B^2/lambda1^2), for reporting only.
inline double update_step_bound(std::size_t d, const Scalar& bound_sq, const Scalar& lambda1_sq) {
  if (sgn(lambda1_sq) <= 0) throw PreconditionError("first minimum must be positive");
  const double dd = static_cast<double>(d);
  const double log2_fact = std::lgamma(dd + 1.0) / std::log(2.0);
  const Scalar ratio = bound_sq / lambda1_sq;
  const double log2_ratio = std::log2(ratio.get_num().get_d()) - std::log2(ratio.get_den().get_d());
  return dd + log2_fact + 0.5 * dd * log2_ratio;
}

/// Generators whose insertion was an update. They generate the same lattice.
inline std::vector<LatticeVector> generating_subset(std::span<const LatticeVector> generators,
                                                    const UpdateTrace& trace) {
  std::vector<LatticeVector> out;
  out.reserve(trace.update_count);
  for (const auto& rec : trace.insertions) {
    if (rec.index >= generators.size()) throw PreconditionError("trace does not match the generators");
    if (rec.was_update) out.push_back(generators[rec.index]);
  }
  return out;
}

/// Largest squared norm among the generators (B^2).
inline Scalar max_norm_sq(std::span<const LatticeVector> vs) {
  Scalar best = 0;
  for (const auto& v : vs) {
    Scalar n = norm_sq(v);
    if (n > best) best = n;
  }
  return best;
}

}  // namespace latinc
