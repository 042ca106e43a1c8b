#pragma once

// Command-line front end. run_cli is the whole program minus main(), so the
// tests can drive it with in-memory streams.
//
// Exit codes: 0 ok, 2 parse/usage error, 3 verification mismatch,
// 4 insufficient bound, 5 enumeration cap exceeded.

#include <latinc/latinc.hpp>

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace latinc::cli {

enum ExitCode : int {
  kOk = 0,
  kParseError = 2,
  kVerifyMismatch = 3,
  kInsufficientBound = 4,
  kCapExceeded = 5,
};

struct Options {
  std::string input;
  bool trace = false;
  bool verify = false;
  std::string delta = "3/4";
  std::string bound_sq;
  std::string bound;
  std::size_t cap = kDefaultEnumerationCap;

  std::vector<std::size_t> dims{4};
  std::vector<std::size_t> counts{50, 100, 200};
  long entry_min = -10;
  long entry_max = 10;
  std::size_t reps = 20;
  std::uint64_t seed = 1;
  std::string family = "uniform";
  bool no_timing = false;
};

class UsageError : public LatticeError {
 public:
  using LatticeError::LatticeError;
};

class Stopwatch {
 public:
  double lap_ms() {
    const auto now = std::chrono::steady_clock::now();
    const double ms = std::chrono::duration<double, std::milli>(now - last_).count();
    last_ = now;
    return ms;
  }

 private:
  std::chrono::steady_clock::time_point last_ = std::chrono::steady_clock::now();
};

inline std::string fixed(double x, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, x);
  return buf;
}

struct LoadedInput {
  LatticeFile file;
  std::string digest;
};

inline LoadedInput load_input(const std::string& path, std::istream& stdin_stream) {
  std::string text;
  if (path == "-") {
    text.assign(std::istreambuf_iterator<char>(stdin_stream), {});
  } else {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError(0, "cannot open " + path);
    text.assign(std::istreambuf_iterator<char>(in), {});
  }
  return {parse_lattice_text(text), "fnv1a64:" + fnv1a_digest(text)};
}

inline ReductionParams reduction_params(const Options& o) {
  auto delta = parse_scalar(o.delta);
  if (!delta) throw UsageError("--delta: not a rational number: " + o.delta);
  ReductionParams p{*delta};
  try {
    p.validate();
  } catch (const PreconditionError& e) {
    throw UsageError(std::string("--delta: ") + e.what());
  }
  return p;
}

inline Scalar bound_sq_option(const Options& o) {
  if (o.bound_sq.empty() == o.bound.empty()) throw UsageError("give exactly one of --bound-sq or --bound");
  std::optional<Scalar> b;
  if (!o.bound_sq.empty()) {
    b = parse_scalar(o.bound_sq);
    if (!b) throw UsageError("--bound-sq: not a rational number: " + o.bound_sq);
  } else {
    auto root = parse_decimal(o.bound);
    if (!root) throw UsageError("--bound: not a decimal number: " + o.bound);
    b = *root * *root;
  }
  if (sgn(*b) <= 0) throw UsageError("the bound must be positive");
  return *b;
}

inline void print_rows(std::ostream& out, std::span<const LatticeVector> rows) {
  for (const auto& r : rows) out << "  " << format_vector(r) << '\n';
}

inline int cmd_basis(const Options& o, std::istream& in, std::ostream& out, std::ostream& err) {
  Stopwatch clock;
  const LoadedInput input = load_input(o.input, in);
  const ReductionParams params = reduction_params(o);
  const double t_parse = clock.lap_ms();
  const auto& rows = input.file.rows;

  const IncrementalResult result = incremental_basis(input.file.dim, rows, params);
  const double t_build = clock.lap_ms();

  out << "command: basis\n";
  out << "input_digest: " << input.digest << '\n';
  out << "dimension: " << input.file.dim << '\n';
  out << "rank: " << result.basis.rank() << '\n';
  out << "volume_sq: " << format_scalar(volume_sq(result.basis)) << '\n';
  out << "basis:\n";
  print_rows(out, result.basis.vectors());
  out << "update_count: " << result.trace.update_count << '\n';

  double t_trace = 0;
  if (o.trace) {
    const auto& t = result.trace;
    out << "trace.membership_tests: " << t.membership_tests << '\n';
    out << "trace.insertions: index was_update rank_after volume_sq_after\n";
    for (const auto& rec : t.insertions)
      out << "  " << rec.index + 1 << ' ' << (rec.was_update ? "update" : "member") << ' ' << rec.rank_after << ' '
          << format_scalar(rec.volume_sq_after) << '\n';
    if (result.basis.rank() > 0) {
      const Scalar lambda1 = first_minimum_sq(result.basis);
      const Scalar bound = max_norm_sq(rows);
      const std::size_t d = result.basis.rank();
      out << "trace.lambda1_sq: " << format_scalar(lambda1) << '\n';
      out << "trace.bound_sq: " << format_scalar(bound) << '\n';
      out << "trace.bound: " << fixed(update_step_bound(d, bound, lambda1), 6) << '\n';
      out << "trace.bound_satisfied: " << (update_step_bound_holds(t, d, bound, lambda1) ? "true" : "false") << '\n';
    } else {
      out << "trace.bound_satisfied: true\n";
    }
    t_trace = clock.lap_ms();
  }
  out << "time_ms.parse: " << fixed(t_parse, 3) << '\n';
  out << "time_ms.incremental: " << fixed(t_build, 3) << '\n';
  if (o.trace) out << "time_ms.trace: " << fixed(t_trace, 3) << '\n';

  if (o.verify) {
    const bool same = lattice_equal(result.basis, rows);
    err << "verify.hnf: " << (same ? "ok" : "MISMATCH") << '\n';
    if (!same) return kVerifyMismatch;
  }
  return kOk;
}

struct EnumeratedInput {
  LoadedInput input;
  LatticeBasis basis;
  GeneratingSet s;
  Scalar bound_sq;
  double t_parse = 0, t_enumerate = 0;
};

// Shared front half of minima/decompose. Returns an exit code on failure.
inline std::optional<int> enumerate_input(const Options& o, std::istream& in, std::ostream& err,
                                          EnumeratedInput& e) {
  Stopwatch clock;
  e.input = load_input(o.input, in);
  const ReductionParams params = reduction_params(o);
  e.bound_sq = bound_sq_option(o);
  e.basis = mlll(e.input.file.dim, e.input.file.rows, params);
  e.t_parse = clock.lap_ms();
  if (e.basis.rank() == 0) {
    err << "error: the input generates the zero lattice\n";
    return kInsufficientBound;
  }
  e.s = enumerate_up_to({e.basis, e.bound_sq, o.cap});
  e.t_enumerate = clock.lap_ms();
  if (e.s.empty()) {
    err << "error: bound below first minimum (no nonzero vector with squared norm <= "
        << format_scalar(e.bound_sq) << ")\n";
    return kInsufficientBound;
  }
  return std::nullopt;
}

inline int cmd_minima(const Options& o, std::istream& in, std::ostream& out, std::ostream& err) {
  EnumeratedInput e;
  if (auto code = enumerate_input(o, in, err, e)) return *code;
  Stopwatch clock;
  const MinimaResult result = successive_minima(e.s, e.basis.rank());
  const double t_minima = clock.lap_ms();

  out << "command: minima\n";
  out << "input_digest: " << e.input.digest << '\n';
  out << "rank: " << e.basis.rank() << '\n';
  out << "bound_sq: " << format_scalar(e.bound_sq) << '\n';
  out << "enumerated: " << e.s.size() << '\n';
  out << "minima_sq:";
  for (const auto& m : result.minima_sq) out << ' ' << format_scalar(m);
  out << '\n';
  out << "partial: " << (result.partial ? "true" : "false") << '\n';
  out << "witnesses:\n";
  print_rows(out, result.witnesses);
  out << "time_ms.parse: " << fixed(e.t_parse, 3) << '\n';
  out << "time_ms.enumerate: " << fixed(e.t_enumerate, 3) << '\n';
  out << "time_ms.minima: " << fixed(t_minima, 3) << '\n';
  if (result.partial)
    err << "warning: only " << result.rank << " of " << e.basis.rank()
        << " minima lie within the bound; the result is partial\n";

  if (o.verify) {
    bool ok = true;
    const MinimaResult oracle = greedy_minima_oracle(e.s);
    const bool same = oracle.minima_sq == result.minima_sq;
    err << "verify.greedy_oracle: " << (same ? "ok" : "MISMATCH") << '\n';
    ok = ok && same;
    if (!result.partial) {
      const MinkowskiTerms t = minkowski_terms(e.basis, result);
      const bool mk = minkowski_check(e.basis, result);
      err << "verify.minkowski: " << (mk ? "ok" : "MISMATCH") << " (" << fixed(static_cast<double>(t.lower), 6)
          << " <= " << fixed(static_cast<double>(t.middle), 6) << " <= " << fixed(static_cast<double>(t.upper), 6)
          << ")\n";
      ok = ok && mk;
    }
    if (!ok) return kVerifyMismatch;
  }
  return kOk;
}

inline int cmd_decompose(const Options& o, std::istream& in, std::ostream& out, std::ostream& err) {
  EnumeratedInput e;
  if (auto code = enumerate_input(o, in, err, e)) return *code;
  const ReductionParams params = reduction_params(o);

  if (!lattice_equal(e.basis, e.s.vectors())) {
    const LatticeBasis sub = mlll(e.basis.dim(), e.s.vectors(), params);
    err << "error: vectors within the bound generate a sublattice of rank " << sub.rank() << " (lattice rank "
        << e.basis.rank() << ")";
    if (sub.rank() == e.basis.rank())
      err << ", index^2 " << format_scalar(volume_sq(sub) / volume_sq(e.basis));
    err << "; raise the bound\n";
    return kInsufficientBound;
  }

  Stopwatch clock;
  const Decomposition dec = orthogonal_decomposition(e.s, params);
  const double t_decompose = clock.lap_ms();

  out << "command: decompose\n";
  out << "input_digest: " << e.input.digest << '\n';
  out << "rank: " << e.basis.rank() << '\n';
  out << "bound_sq: " << format_scalar(e.bound_sq) << '\n';
  out << "enumerated: " << e.s.size() << '\n';
  out << "r: " << dec.r() << '\n';
  out << "indices:";
  for (std::size_t i : dec.indices) out << ' ' << i;
  out << '\n';
  out << "grouped_basis:\n";
  for (std::size_t j = 0; j < dec.r(); ++j) {
    if (j) out << "  --\n";
    print_rows(out, dec.components[j].basis.vectors());
  }
  out << "time_ms.parse: " << fixed(e.t_parse, 3) << '\n';
  out << "time_ms.enumerate: " << fixed(e.t_enumerate, 3) << '\n';
  out << "time_ms.decompose: " << fixed(t_decompose, 3) << '\n';

  if (o.verify) {
    const Decomposition oracle = graph_decomposition_oracle(e.s, params);
    const bool same = canonical(oracle) == canonical(dec);
    err << "verify.graph_oracle: " << (same ? "ok" : "MISMATCH") << '\n';
    if (!same) return kVerifyMismatch;
  }
  return kOk;
}

inline int cmd_bench(const Options& o, std::ostream& out) {
  BenchConfig config;
  config.dims = o.dims;
  config.counts = o.counts;
  config.entry_min = o.entry_min;
  config.entry_max = o.entry_max;
  config.reps = o.reps;
  config.seed = o.seed;
  config.measure_time = !o.no_timing;
  config.params = reduction_params(o);
  if (o.family == "uniform") {
    config.family = GeneratorFamily::uniform;
  } else if (o.family == "duplicates") {
    config.family = GeneratorFamily::duplicates;
  } else {
    throw UsageError("--family must be uniform or duplicates");
  }
  for (std::size_t d : config.dims)
    if (d == 0) throw UsageError("--dims entries must be positive");
  if (config.entry_min > config.entry_max || (config.entry_min == 0 && config.entry_max == 0))
    throw UsageError("entry range must contain a nonzero value");
  const auto rows = run_bench(config);
  write_bench_csv(out, rows);
  return kOk;
}

inline int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Incremental lattice algorithms: bases, successive minima, orthogonal decomposition"};
  app.require_subcommand(1);
  Options o;

  auto add_input = [&](CLI::App* sub) {
    sub->add_option("input", o.input, "Lattice file (\"-\" for standard input)")->required();
    sub->add_option("--delta", o.delta, "LLL parameter, 1/4 < delta <= 1")->capture_default_str();
  };
  auto add_bound = [&](CLI::App* sub) {
    sub->add_option("--bound-sq", o.bound_sq, "Squared norm bound B^2 (rational)");
    sub->add_option("--bound", o.bound, "Norm bound B (decimal), squared exactly");
    sub->add_option("--cap", o.cap, "Maximum number of enumerated vectors")->capture_default_str();
  };

  auto* basis = app.add_subcommand("basis", "Incremental basis of the lattice generated by the rows");
  add_input(basis);
  basis->add_flag("--trace", o.trace, "Print the update trace and the update-step bound");
  basis->add_flag("--verify", o.verify, "Compare with the Hermite normal form of the input");

  auto* minima = app.add_subcommand("minima", "Successive minima of the lattice spanned by the rows");
  add_input(minima);
  add_bound(minima);
  minima->add_flag("--verify", o.verify, "Run the greedy oracle and the Minkowski check");

  auto* decompose = app.add_subcommand("decompose", "Orthogonal decomposition into indecomposable sublattices");
  add_input(decompose);
  add_bound(decompose);
  decompose->add_flag("--verify", o.verify, "Compare with the graph-component construction");

  auto* bench = app.add_subcommand("bench", "Incremental vs. batch reduction on random generators (CSV)");
  bench->add_option("--dims", o.dims, "Ambient dimensions")->delimiter(',')->capture_default_str();
  bench->add_option("--counts", o.counts, "Generator counts m")->delimiter(',')->capture_default_str();
  bench->add_option("--min", o.entry_min, "Smallest entry")->capture_default_str();
  bench->add_option("--max", o.entry_max, "Largest entry")->capture_default_str();
  bench->add_option("--reps", o.reps, "Instances per (d, m)")->capture_default_str();
  bench->add_option("--seed", o.seed, "Base seed")->capture_default_str();
  bench->add_option("--family", o.family, "uniform or duplicates")->capture_default_str();
  bench->add_option("--delta", o.delta, "LLL parameter, 1/4 < delta <= 1")->capture_default_str();
  bench->add_flag("--no-timing", o.no_timing, "Write 0 in the timing columns (bitwise reproducible output)");

  std::vector<const char*> argv{"latinc"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kParseError;
  }

  const std::string input_name = o.input == "-" ? "<stdin>" : o.input;
  try {
    if (basis->parsed()) return cmd_basis(o, in, out, err);
    if (minima->parsed()) return cmd_minima(o, in, out, err);
    if (decompose->parsed()) return cmd_decompose(o, in, out, err);
    return cmd_bench(o, out);
  } catch (const ParseError& e) {
    err << "error: " << input_name << ": " << e.what() << '\n';
    return kParseError;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kParseError;
  } catch (const EnumerationCapExceeded& e) {
    err << "error: " << e.what() << " (raise --cap or lower the bound)\n";
    return kCapExceeded;
  } catch (const DimensionMismatch& e) {
    err << "error: " << e.what() << '\n';
    return kParseError;
  }
}

}  // namespace latinc::cli
