#pragma once

// LLL reduction of possibly linearly dependent generators (MLLL). The
// Gram-Schmidt data is kept as exact rationals; dependent vectors have a
// zero Gram-Schmidt norm, get swapped towards the front and size-reduced
// until they vanish, at which point they are removed.

#include <latinc/core.hpp>

#include <cstddef>
#include <span>
#include <vector>

namespace latinc {

struct ReductionParams {
  Scalar delta{3, 4};

  void validate() const {
    if (!(delta > Scalar(1, 4) && delta <= 1))
      throw PreconditionError("reduction parameter delta must satisfy 1/4 < delta <= 1");
  }
};

namespace detail {

inline Integer round_nearest(const Scalar& x) {
  // floor(x + 1/2)
  Scalar shifted = x + Scalar(1, 2);
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), shifted.get_num_mpz_t(), shifted.get_den_mpz_t());
  return r;
}

class MlllState {
 public:
  MlllState(std::vector<LatticeVector> b, const Scalar& delta) : b_(std::move(b)), delta_(delta) {
    mu_.resize(b_.size());
    bstar_.resize(b_.size());
  }

  std::vector<LatticeVector> run() {
    std::size_t k = 0;
    while (k < b_.size()) {
      if (k == kmax_) {
        gram_schmidt_row(k);
        ++kmax_;
      }
      for (std::size_t l = k; l-- > 0;) size_reduce(k, l);
      if (b_[k].is_zero()) {
        remove(k);
        continue;
      }
      if (k > 0 && !lovasz(k)) {
        swap(k);
        --k;
        continue;
      }
      ++k;
    }
    return std::move(b_);
  }

 private:
  // Rows < k all have positive bstar when this runs.
  void gram_schmidt_row(std::size_t k) {
    mu_[k].assign(k, Scalar(0));
    for (std::size_t j = 0; j < k; ++j) {
      if (sgn(bstar_[j]) == 0) continue;
      Scalar s = inner_product(b_[k], b_[j]);
      for (std::size_t i = 0; i < j; ++i) s -= mu_[j][i] * mu_[k][i] * bstar_[i];
      mu_[k][j] = s / bstar_[j];
    }
    Scalar s = norm_sq(b_[k]);
    for (std::size_t j = 0; j < k; ++j) s -= mu_[k][j] * mu_[k][j] * bstar_[j];
    bstar_[k] = s;
  }

  void size_reduce(std::size_t k, std::size_t l) {
    const Integer q = round_nearest(mu_[k][l]);
    if (sgn(q) == 0) return;
    const Scalar qs(q);
    b_[k].subtract_multiple(qs, b_[l]);
    mu_[k][l] -= qs;
    for (std::size_t j = 0; j < l; ++j) mu_[k][j] -= qs * mu_[l][j];
  }

  bool lovasz(std::size_t k) const {
    const Scalar& m = mu_[k][k - 1];
    return bstar_[k] >= (delta_ - m * m) * bstar_[k - 1];
  }

  void swap(std::size_t k) {
    std::swap(b_[k], b_[k - 1]);
    for (std::size_t j = 0; j + 1 < k; ++j) std::swap(mu_[k][j], mu_[k - 1][j]);

    const Scalar m = mu_[k][k - 1];
    const Scalar bk = bstar_[k];
    const Scalar bk1 = bstar_[k - 1];
    const Scalar b = bk + m * m * bk1;

    if (sgn(b) == 0) {
      // b_k was already in the span of b_0..b_{k-2}: the zero
      // Gram-Schmidt vector just moves one slot down.
      bstar_[k - 1] = 0;
      bstar_[k] = bk1;
      mu_[k][k - 1] = 0;
      for (std::size_t i = k + 1; i < kmax_; ++i) std::swap(mu_[i][k], mu_[i][k - 1]);
      return;
    }

    mu_[k][k - 1] = m * bk1 / b;
    bstar_[k] = bk1 * bk / b;
    bstar_[k - 1] = b;
    const bool now_dependent = sgn(bstar_[k]) == 0;
    for (std::size_t i = k + 1; i < kmax_; ++i) {
      const Scalar t = mu_[i][k];
      mu_[i][k] = mu_[i][k - 1] - m * t;
      mu_[i][k - 1] = t + mu_[k][k - 1] * mu_[i][k];
      if (now_dependent) mu_[i][k] = 0;
    }
  }

  void remove(std::size_t k) {
    b_.erase(b_.begin() + static_cast<std::ptrdiff_t>(k));
    bstar_.erase(bstar_.begin() + static_cast<std::ptrdiff_t>(k));
    mu_.erase(mu_.begin() + static_cast<std::ptrdiff_t>(k));
    for (std::size_t i = k; i + 1 < kmax_; ++i) mu_[i].erase(mu_[i].begin() + static_cast<std::ptrdiff_t>(k));
    --kmax_;
  }

  std::vector<LatticeVector> b_;
  RationalMatrix mu_;
  std::vector<Scalar> bstar_;
  std::size_t kmax_ = 0;
  Scalar delta_;
};

}  // namespace detail

/// Basis of the lattice generated by `generators`, LLL-reduced with
/// params.delta. Generators may be dependent or repeated; zeros are dropped.
inline LatticeBasis mlll(std::size_t dim, std::span<const LatticeVector> generators,
                         const ReductionParams& params = {}) {
  params.validate();
  require_dim(generators, dim);
  detail::MlllState state(drop_zeros(generators), params.delta);
  return LatticeBasis(dim, state.run());
}

inline LatticeBasis mlll(std::span<const LatticeVector> generators, const ReductionParams& params = {}) {
  return mlll(generators.empty() ? 0 : generators.front().dim(), generators, params);
}

/// Update step: a basis of L + Zv, where L is the lattice of `basis`.
inline LatticeBasis basis_union(const LatticeBasis& basis, const LatticeVector& v,
                                const ReductionParams& params = {}) {
  std::vector<LatticeVector> gens(basis.vectors().begin(), basis.vectors().end());
  gens.push_back(v);
  return mlll(basis.dim(), gens, params);
}

}  // namespace latinc
