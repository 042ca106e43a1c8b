#pragma once

// Orthogonal decomposition of a lattice into indecomposable, pairwise
// orthogonal sublattices.
//
// orthogonal_decomposition scans a complete generating set by norm. A vector
// already in the sum of the current components is skipped; otherwise it is
// merged with every component it is not orthogonal to, and the merged
// lattice Zv + sum_J L_j replaces them.
//
// graph_decomposition_oracle is the direct construction: vertices are the
// vectors that are not length decomposable, edges join non-orthogonal
// pairs, and each connected component generates one summand.

#include <latinc/core.hpp>
#include <latinc/reduction.hpp>

#include <algorithm>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace latinc {

struct Component {
  LatticeBasis basis;
  Scalar min_norm_sq;  // lambda_1 of this component

  // Orthogonality to the component is tested against these vectors.
  std::span<const LatticeVector> span_witnesses() const { return basis.vectors(); }
};

struct Decomposition {
  std::vector<Component> components;
  std::vector<LatticeVector> grouped_basis;
  std::vector<std::size_t> indices;  // 1-based start of each component in grouped_basis

  std::size_t r() const { return components.size(); }
  std::size_t n() const { return grouped_basis.size(); }
  // i_{j+1}, with i_{r+1} = n + 1. j is 1-based.
  std::size_t next_index(std::size_t j) const { return j < indices.size() ? indices[j] : n() + 1; }
};

struct DecompositionStats {
  std::size_t scanned = 0;
  std::size_t membership_tests = 0;
  std::size_t updates = 0;
  std::size_t absorbed = 0;  // components merged into a new one, summed over updates
  std::size_t adjacency_tests = 0;
};

using ComponentObserver = std::function<void(std::span<const Component>)>;

struct DecompositionOptions {
  ReductionParams params;
  ComponentObserver after_update;  // called after every update step
  DecompositionStats* stats = nullptr;
};

/// Lattice-invariant form of a component: lambda_1^2 and the rational HNF.
struct CanonicalComponent {
  Scalar min_norm_sq;
  std::vector<LatticeVector> hnf;

  friend bool operator==(const CanonicalComponent&, const CanonicalComponent&) = default;
  friend bool operator<(const CanonicalComponent& a, const CanonicalComponent& b) {
    const int c = cmp(a.min_norm_sq, b.min_norm_sq);
    if (c != 0) return c < 0;
    return std::lexicographical_compare(a.hnf.begin(), a.hnf.end(), b.hnf.begin(), b.hnf.end());
  }
};

inline CanonicalComponent canonical_component(const Component& c) {
  return {c.min_norm_sq, rational_hnf(c.basis.vectors(), c.basis.dim())};
}

/// Orders components canonically and fills grouped_basis and indices.
inline Decomposition assemble_decomposition(std::vector<Component> components) {
  std::vector<std::pair<CanonicalComponent, std::size_t>> keys;
  keys.reserve(components.size());
  for (std::size_t i = 0; i < components.size(); ++i) keys.emplace_back(canonical_component(components[i]), i);
  std::sort(keys.begin(), keys.end(), [](const auto& a, const auto& b) { return a.first < b.first; });

  Decomposition out;
  for (const auto& [key, i] : keys) {
    out.indices.push_back(out.grouped_basis.size() + 1);
    for (const auto& b : components[i].basis.vectors()) out.grouped_basis.push_back(b);
    out.components.push_back(std::move(components[i]));
  }
  return out;
}

inline std::vector<CanonicalComponent> canonical(const Decomposition& d) {
  std::vector<CanonicalComponent> out;
  out.reserve(d.components.size());
  for (const auto& c : d.components) out.push_back(canonical_component(c));
  std::sort(out.begin(), out.end());
  return out;
}

/// pi(v) != 0 for the orthogonal projection onto the component's span.
inline bool projection_nonzero(const Component& component, const LatticeVector& v) {
  for (const auto& w : component.span_witnesses())
    if (sgn(inner_product(v, w)) != 0) return true;
  return false;
}

/// v = x + y with x, y nonzero lattice vectors both strictly shorter than v.
/// With s complete, any such x and y lie in s, so scanning x over s decides it.
inline bool is_length_decomposable(const LatticeVector& v, const GeneratingSet& s) {
  if (!s.complete()) throw PreconditionError("length decomposability needs a complete generating set");
  const Scalar nv = norm_sq(v);
  for (const auto& x : s.vectors()) {
    if (norm_sq(x) >= nv) continue;
    const LatticeVector y = v - x;
    if (!y.is_zero() && norm_sq(y) < nv) return true;
  }
  return false;
}

namespace detail {

inline LatticeBasis sum_basis(std::size_t dim, std::span<const Component> components) {
  std::vector<LatticeVector> all;
  for (const auto& c : components)
    for (const auto& b : c.basis.vectors()) all.push_back(b);
  return LatticeBasis(dim, std::move(all));
}

inline void require_complete(const GeneratingSet& s) {
  if (!s.complete()) throw PreconditionError("decomposition needs a complete generating set");
  if (s.empty()) throw PreconditionError("decomposition needs a nonempty generating set");
}

}  // namespace detail

/// Scans `ordered` as given; it must be sorted by nondecreasing squared norm.
inline Decomposition decompose_in_scan_order(std::span<const LatticeVector> ordered, std::size_t dim,
                                             const DecompositionOptions& options = {}) {
  if (ordered.empty()) throw PreconditionError("decomposition needs a nonempty generating set");
  require_dim(ordered, dim);
  options.params.validate();
  DecompositionStats local;
  DecompositionStats& stats = options.stats ? *options.stats : local;

  std::vector<Component> components;
  LatticeBasis sum(dim);
  Scalar last = 0;
  for (const auto& v : ordered) {
    const Scalar nv = norm_sq(v);
    if (nv < last) throw PreconditionError("scan order is not sorted by norm");
    last = nv;
    if (sgn(nv) == 0) continue;
    ++stats.scanned;
    ++stats.membership_tests;
    if (is_member(sum, v)) continue;

    std::vector<LatticeVector> gens{v};
    Scalar min_norm = nv;
    std::vector<Component> kept;
    for (auto& c : components) {
      ++stats.adjacency_tests;
      if (projection_nonzero(c, v)) {
        for (const auto& b : c.basis.vectors()) gens.push_back(b);
        if (c.min_norm_sq < min_norm) min_norm = c.min_norm_sq;
        ++stats.absorbed;
      } else {
        kept.push_back(std::move(c));
      }
    }
    kept.push_back({mlll(dim, gens, options.params), min_norm});
    components = std::move(kept);
    ++stats.updates;
    sum = detail::sum_basis(dim, components);
    if (options.after_update) options.after_update(components);
  }
  return assemble_decomposition(std::move(components));
}

inline Decomposition orthogonal_decomposition(const GeneratingSet& s, const ReductionParams& params = {}) {
  detail::require_complete(s);
  std::vector<LatticeVector> ordered(s.vectors().begin(), s.vectors().end());
  sort_by_norm(ordered);
  DecompositionOptions options;
  options.params = params;
  return decompose_in_scan_order(ordered, s.dim(), options);
}

/// Vertices of the non-orthogonality graph: vectors of s that are not
/// length decomposable, in norm order.
inline std::vector<LatticeVector> indecomposable_vertices(const GeneratingSet& s) {
  std::vector<LatticeVector> vertices;
  for (const auto& v : s.vectors())
    if (!is_length_decomposable(v, s)) vertices.push_back(v);
  sort_by_norm(vertices);
  return vertices;
}

inline Decomposition graph_decomposition_oracle(const GeneratingSet& s, const ReductionParams& params = {}) {
  detail::require_complete(s);
  const std::vector<LatticeVector> vertices = indecomposable_vertices(s);

  std::vector<Component> components;
  std::vector<bool> seen(vertices.size(), false);
  for (std::size_t start = 0; start < vertices.size(); ++start) {
    if (seen[start]) continue;
    seen[start] = true;
    std::vector<std::size_t> queue{start};
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const LatticeVector& u = vertices[queue[head]];
      for (std::size_t w = 0; w < vertices.size(); ++w) {
        if (seen[w] || sgn(inner_product(u, vertices[w])) == 0) continue;
        seen[w] = true;
        queue.push_back(w);
      }
    }
    std::vector<LatticeVector> members;
    Scalar min_norm = norm_sq(vertices[start]);
    for (std::size_t i : queue) {
      members.push_back(vertices[i]);
      min_norm = std::min(min_norm, Scalar(norm_sq(vertices[i])));
    }
    components.push_back({mlll(s.dim(), members, params), min_norm});
  }
  return assemble_decomposition(std::move(components));
}

}  // namespace latinc
