#pragma once

// Test-only helpers: fixed lattices, seeded random instances, and
// reference computations that do not go through the library's own paths.

#include <latinc/latinc.hpp>

#include <algorithm>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

namespace latinc::testing {

inline LatticeVector vec(std::initializer_list<long> xs) {
  std::vector<Scalar> c;
  for (long x : xs) c.emplace_back(x);
  return LatticeVector(std::move(c));
}

inline LatticeVector unit(std::size_t dim, std::size_t i, long s = 1) {
  std::vector<Scalar> c(dim);
  c[i] = s;
  return LatticeVector(std::move(c));
}

inline std::vector<LatticeVector> identity_rows(std::size_t dim) {
  std::vector<LatticeVector> out;
  for (std::size_t i = 0; i < dim; ++i) out.push_back(unit(dim, i));
  return out;
}

inline std::vector<LatticeVector> d4_basis_rows() {
  return {vec({1, -1, 0, 0}), vec({0, 1, -1, 0}), vec({0, 0, 1, -1}), vec({0, 0, 1, 1})};
}

inline LatticeBasis d4_basis() { return LatticeBasis(4, d4_basis_rows()); }

// +-e_i +- e_j, i < j: the 24 minimal vectors of D4, written out directly.
inline std::vector<LatticeVector> d4_minimal_vectors() {
  std::vector<LatticeVector> out;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = i + 1; j < 4; ++j)
      for (long si : {-1, 1})
        for (long sj : {-1, 1}) out.push_back(unit(4, i, si) + unit(4, j, sj));
  return out;
}

// Embeds v into a larger space starting at coordinate `offset`.
inline LatticeVector embed(const LatticeVector& v, std::size_t dim, std::size_t offset) {
  std::vector<Scalar> c(dim);
  for (std::size_t i = 0; i < v.dim(); ++i) c[offset + i] = v[i];
  return LatticeVector(std::move(c));
}

inline std::vector<LatticeVector> z_perp_d4_rows() {
  std::vector<LatticeVector> rows{unit(5, 0)};
  for (const auto& b : d4_basis_rows()) rows.push_back(embed(b, 5, 1));
  return rows;
}

inline std::vector<LatticeVector> z_perp_d4_minimal_vectors() {
  std::vector<LatticeVector> out{unit(5, 0), unit(5, 0, -1)};
  for (const auto& v : d4_minimal_vectors()) out.push_back(embed(v, 5, 1));
  return out;
}

using Rng = std::mt19937_64;

inline LatticeVector random_vector(std::size_t dim, long lo, long hi, Rng& rng) {
  std::uniform_int_distribution<long> dist(lo, hi);
  std::vector<Scalar> c(dim);
  for (auto& x : c) x = dist(rng);
  return LatticeVector(std::move(c));
}

inline std::vector<LatticeVector> random_vectors(std::size_t dim, std::size_t m, long lo, long hi, Rng& rng) {
  std::vector<LatticeVector> out;
  for (std::size_t i = 0; i < m; ++i) out.push_back(random_vector(dim, lo, hi, rng));
  return out;
}

// Coordinate determinant of a square row set, by cofactor expansion.
inline Scalar cofactor_determinant(const std::vector<LatticeVector>& rows) {
  const std::size_t n = rows.size();
  if (n == 0) return 1;
  if (n == 1) return rows[0][0];
  Scalar det = 0;
  for (std::size_t c = 0; c < n; ++c) {
    std::vector<LatticeVector> minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<Scalar> coords;
      for (std::size_t k = 0; k < n; ++k)
        if (k != c) coords.push_back(rows[r][k]);
      minor.emplace_back(std::move(coords));
    }
    const Scalar term = rows[0][c] * cofactor_determinant(minor);
    det += (c % 2 == 0) ? term : Scalar(-term);
  }
  return det;
}

inline LatticeBasis random_full_rank_basis(std::size_t dim, long lo, long hi, Rng& rng) {
  for (;;) {
    auto rows = random_vectors(dim, dim, lo, hi, rng);
    if (sgn(cofactor_determinant(rows)) != 0) return LatticeBasis(dim, rows);
  }
}

template <typename T>
void shuffle(std::vector<T>& v, Rng& rng) {
  std::shuffle(v.begin(), v.end(), rng);
}

// Shuffles each run of equal squared norm in a norm-sorted list.
inline void shuffle_norm_ties(std::vector<LatticeVector>& sorted, Rng& rng) {
  std::size_t i = 0;
  while (i < sorted.size()) {
    std::size_t j = i + 1;
    const Scalar n = norm_sq(sorted[i]);
    while (j < sorted.size() && norm_sq(sorted[j]) == n) ++j;
    std::shuffle(sorted.begin() + static_cast<std::ptrdiff_t>(i), sorted.begin() + static_cast<std::ptrdiff_t>(j), rng);
    i = j;
  }
}

// Gram-Schmidt from scratch with plain projections, for checking reduction.
struct GramSchmidt {
  RationalMatrix mu;
  std::vector<Scalar> bstar;
};

inline GramSchmidt gram_schmidt(std::span<const LatticeVector> b) {
  GramSchmidt gs;
  std::vector<LatticeVector> star;
  gs.mu.assign(b.size(), std::vector<Scalar>(b.size()));
  for (std::size_t i = 0; i < b.size(); ++i) {
    LatticeVector s = b[i];
    for (std::size_t j = 0; j < i; ++j) {
      gs.mu[i][j] = inner_product(b[i], star[j]) / norm_sq(star[j]);
      s.subtract_multiple(gs.mu[i][j], star[j]);
    }
    gs.bstar.push_back(norm_sq(s));
    star.push_back(std::move(s));
  }
  return gs;
}

// All integer points x in [-r, r]^d satisfying pred; d and r small.
inline std::vector<LatticeVector> integer_box(std::size_t d, long r,
                                              const std::function<bool(const LatticeVector&)>& pred) {
  std::vector<LatticeVector> out;
  std::vector<long> x(d, -r);
  for (;;) {
    std::vector<Scalar> c(x.begin(), x.end());
    LatticeVector v(std::move(c));
    if (pred(v)) out.push_back(v);
    std::size_t i = 0;
    while (i < d && x[i] == r) x[i++] = -r;
    if (i == d) break;
    ++x[i];
  }
  return out;
}

inline std::vector<LatticeVector> sorted(std::vector<LatticeVector> v) {
  sort_by_norm(v);
  return v;
}

// A random lattice of rank `dim` that the graph construction certifies as
// indecomposable, with a reduced basis.
inline LatticeBasis random_indecomposable_block(std::size_t dim, Rng& rng) {
  for (;;) {
    LatticeBasis b = mlll(dim, random_full_rank_basis(dim, -2, 2, rng).vectors());
    Scalar bound = 0;
    for (const auto& v : b.vectors()) bound = std::max(bound, Scalar(norm_sq(v)));
    GeneratingSet s = enumerate_up_to({b, bound});
    if (graph_decomposition_oracle(s).r() == 1) return b;
  }
}

struct DirectSum {
  LatticeBasis basis;
  std::size_t blocks = 0;
  std::vector<std::vector<LatticeVector>> block_rows;  // each block, embedded
  Scalar bound_sq;  // large enough that the complete set generates the lattice
};

// Orthogonal direct sum of indecomposable blocks placed in disjoint
// coordinate ranges, total dimension <= max_dim.
inline DirectSum random_direct_sum(std::size_t max_dim, Rng& rng) {
  std::uniform_int_distribution<std::size_t> block_dim(1, 3);
  std::uniform_int_distribution<std::size_t> block_count(2, 3);
  std::vector<std::size_t> dims;
  std::size_t used = 0;
  do {
    dims.assign(block_count(rng), 0);
    used = 0;
    for (auto& k : dims) used += (k = block_dim(rng));
  } while (used > max_dim);
  std::vector<LatticeBasis> blocks;
  for (std::size_t k : dims) blocks.push_back(random_indecomposable_block(k, rng));
  DirectSum out;
  std::vector<LatticeVector> rows;
  std::size_t offset = 0;
  for (const auto& b : blocks) {
    out.block_rows.emplace_back();
    for (const auto& v : b.vectors()) {
      rows.push_back(embed(v, used, offset));
      out.block_rows.back().push_back(rows.back());
      out.bound_sq = std::max(out.bound_sq, Scalar(norm_sq(v)));
    }
    offset += b.dim();
  }
  out.basis = LatticeBasis(used, rows);
  out.blocks = blocks.size();
  return out;
}

}  // namespace latinc::testing
