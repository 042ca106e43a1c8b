#pragma once

// Seeded random generator families and the incremental-vs-batch benchmark.

#include <latinc/core.hpp>
#include <latinc/enumerate.hpp>
#include <latinc/incremental.hpp>
#include <latinc/reduction.hpp>

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <ostream>
#include <random>
#include <span>
#include <string>
#include <vector>

namespace latinc {

enum class GeneratorFamily {
  uniform,     // independent uniform rows
  duplicates,  // rows drawn from a pool of d + 2 vectors, or sums of two pool vectors
};

struct BenchConfig {
  std::vector<std::size_t> dims{4};
  std::vector<std::size_t> counts{50, 100, 200};
  long entry_min = -10;
  long entry_max = 10;
  std::size_t reps = 20;
  std::uint64_t seed = 1;
  GeneratorFamily family = GeneratorFamily::uniform;
  bool measure_time = true;
  ReductionParams params;
};

struct BenchRow {
  std::uint64_t seed = 0;
  std::size_t d = 0;
  std::size_t m = 0;
  std::size_t rank = 0;
  std::size_t update_count = 0;
  std::size_t membership_tests = 0;
  double theorem_bound = 0;
  bool bound_holds = false;
  bool bases_agree = false;  // incremental and batch results span the same lattice
  double t_incremental_ms = 0;
  double t_batch_ms = 0;
};

inline std::vector<LatticeVector> random_generators(std::size_t d, std::size_t m, long lo, long hi,
                                                    GeneratorFamily family, std::uint64_t seed) {
  if (lo > hi || (lo == 0 && hi == 0)) throw PreconditionError("entry range must contain a nonzero value");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> entry(lo, hi);
  auto nonzero_row = [&] {
    for (;;) {
      std::vector<Scalar> c(d);
      bool zero = true;
      for (auto& x : c) {
        x = entry(rng);
        zero = zero && sgn(x) == 0;
      }
      if (!zero) return LatticeVector(std::move(c));
    }
  };

  std::vector<LatticeVector> out;
  out.reserve(m);
  if (family == GeneratorFamily::uniform) {
    for (std::size_t i = 0; i < m; ++i) out.push_back(nonzero_row());
    return out;
  }
  std::vector<LatticeVector> pool;
  for (std::size_t i = 0; i < d + 2; ++i) pool.push_back(nonzero_row());
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  std::bernoulli_distribution coin(0.5);
  for (std::size_t i = 0; i < m; ++i) {
    LatticeVector v = pool[pick(rng)];
    if (coin(rng)) {
      LatticeVector w = v + pool[pick(rng)];
      if (!w.is_zero()) v = std::move(w);
    }
    out.push_back(std::move(v));
  }
  return out;
}

inline BenchRow bench_instance(std::span<const LatticeVector> gens, std::uint64_t seed, bool measure_time = true,
                               const ReductionParams& params = {}) {
  using clock = std::chrono::steady_clock;
  const std::size_t dim = gens.empty() ? 0 : gens.front().dim();
  BenchRow row;
  row.seed = seed;
  row.d = dim;
  row.m = gens.size();

  const auto t0 = clock::now();
  IncrementalResult inc = incremental_basis(dim, gens, params);
  const auto t1 = clock::now();
  LatticeBasis batch = mlll(dim, gens, params);
  const auto t2 = clock::now();

  row.rank = inc.basis.rank();
  row.update_count = inc.trace.update_count;
  row.membership_tests = inc.trace.membership_tests;
  row.bases_agree = lattice_equal(inc.basis, batch);
  if (row.rank > 0) {
    const Scalar lambda1 = first_minimum_sq(inc.basis);
    const Scalar bound = max_norm_sq(gens);
    row.theorem_bound = update_step_bound(row.rank, bound, lambda1);
    row.bound_holds = update_step_bound_holds(inc.trace, row.rank, bound, lambda1);
  } else {
    row.bound_holds = row.update_count == 0;
  }
  if (measure_time) {
    row.t_incremental_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    row.t_batch_ms = std::chrono::duration<double, std::milli>(t2 - t1).count();
  }
  return row;
}

/// One row per (d, m, repetition), in that nesting order. Instance k uses
/// seed config.seed + k.
inline std::vector<BenchRow> run_bench(const BenchConfig& config) {
  std::vector<BenchRow> rows;
  std::uint64_t k = 0;
  for (std::size_t d : config.dims) {
    for (std::size_t m : config.counts) {
      for (std::size_t rep = 0; rep < config.reps; ++rep, ++k) {
        const std::uint64_t seed = config.seed + k;
        const auto gens = random_generators(d, m, config.entry_min, config.entry_max, config.family, seed);
        BenchRow row = bench_instance(gens, seed, config.measure_time, config.params);
        row.d = d;
        rows.push_back(row);
      }
    }
  }
  return rows;
}

inline void write_bench_csv(std::ostream& out, std::span<const BenchRow> rows) {
  out << "seed,d,m,update_count,theorem_bound,t_incremental,t_batch_mlll\n";
  char buf[64];
  for (const auto& r : rows) {
    out << r.seed << ',' << r.d << ',' << r.m << ',' << r.update_count << ',';
    std::snprintf(buf, sizeof buf, "%.6f", r.theorem_bound);
    out << buf << ',';
    std::snprintf(buf, sizeof buf, "%.3f", r.t_incremental_ms);
    out << buf << ',';
    std::snprintf(buf, sizeof buf, "%.3f", r.t_batch_ms);
    out << buf << '\n';
  }
}

}  // namespace latinc
