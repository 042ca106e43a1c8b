#pragma once

// Lattice files: a header line "d m" followed by m rows of d rational
// literals ("p/q" or an integer). Lines starting with '#' and blank lines
// are ignored.

#include <latinc/core.hpp>

#include <cctype>
#include <cstdint>
#include <cstdio>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace latinc {

class ParseError : public LatticeError {
 public:
  ParseError(std::size_t line, const std::string& what)
      : LatticeError("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

struct LatticeFile {
  std::size_t dim = 0;
  std::vector<LatticeVector> rows;
};

namespace detail {

inline bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

inline std::vector<std::string> split_ws(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  for (std::string tok; in >> tok;) out.push_back(tok);
  return out;
}

}  // namespace detail

/// "p/q", "p" or "-p/q". Returns nullopt on anything else, including q = 0.
inline std::optional<Scalar> parse_scalar(std::string_view tok) {
  std::string_view body = tok;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) body.remove_prefix(1);
  const auto slash = body.find('/');
  const std::string_view num = body.substr(0, slash);
  const std::string_view den = slash == std::string_view::npos ? std::string_view{} : body.substr(slash + 1);
  if (!detail::all_digits(num)) return std::nullopt;
  if (slash != std::string_view::npos && !detail::all_digits(den)) return std::nullopt;

  Integer n(std::string(num), 10);
  Integer d = 1;
  if (!den.empty()) d = Integer(std::string(den), 10);
  if (sgn(d) == 0) return std::nullopt;
  if (!tok.empty() && tok.front() == '-') n = -n;
  Scalar q(n, d);
  q.canonicalize();
  return q;
}

/// Exact value of a decimal literal such as "1.25" or "-3"; also accepts "p/q".
inline std::optional<Scalar> parse_decimal(std::string_view tok) {
  if (tok.find('/') != std::string_view::npos) return parse_scalar(tok);
  const auto dot = tok.find('.');
  if (dot == std::string_view::npos) return parse_scalar(tok);
  std::string digits(tok.substr(0, dot));
  const std::string_view frac = tok.substr(dot + 1);
  if (!detail::all_digits(frac)) return std::nullopt;
  if (digits.empty() || digits == "-" || digits == "+") digits += "0";
  auto whole = parse_scalar(digits + std::string(frac));
  if (!whole) return std::nullopt;
  Integer scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
  Scalar q = *whole / Scalar(scale);
  q.canonicalize();
  return q;
}

inline std::string format_scalar(Scalar x) {
  x.canonicalize();
  return x.get_str();
}

inline std::string format_vector(const LatticeVector& v) {
  std::string out;
  for (std::size_t i = 0; i < v.dim(); ++i) {
    if (i) out += ' ';
    out += format_scalar(v[i]);
  }
  return out;
}

inline LatticeFile parse_lattice_file(std::istream& in) {
  LatticeFile file;
  std::optional<std::size_t> expected;
  std::size_t lineno = 0;
  std::size_t header_line = 0;
  for (std::string line; std::getline(in, line);) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    const auto toks = detail::split_ws(line);
    if (!expected) {
      if (toks.size() != 2 || !detail::all_digits(toks[0]) || !detail::all_digits(toks[1]))
        throw ParseError(lineno, "expected header \"<dimension> <count>\"");
      file.dim = std::stoul(toks[0]);
      expected = std::stoul(toks[1]);
      header_line = lineno;
      if (file.dim == 0) throw ParseError(lineno, "dimension must be at least 1");
      if (*expected == 0) throw ParseError(lineno, "vector count must be at least 1");
      continue;
    }
    if (file.rows.size() == *expected) throw ParseError(lineno, "more rows than declared in the header");
    if (toks.size() != file.dim)
      throw ParseError(lineno, "expected " + std::to_string(file.dim) + " entries, found " +
                                   std::to_string(toks.size()));
    std::vector<Scalar> coords;
    coords.reserve(file.dim);
    for (const auto& t : toks) {
      auto q = parse_scalar(t);
      if (!q) throw ParseError(lineno, "invalid rational literal \"" + t + "\"");
      coords.push_back(std::move(*q));
    }
    file.rows.emplace_back(std::move(coords));
  }
  if (!expected) throw ParseError(lineno, "missing header");
  if (file.rows.size() != *expected)
    throw ParseError(lineno, "header on line " + std::to_string(header_line) + " declares " +
                                 std::to_string(*expected) + " rows, found " + std::to_string(file.rows.size()));
  return file;
}

inline LatticeFile parse_lattice_text(const std::string& text) {
  std::istringstream in(text);
  return parse_lattice_file(in);
}

inline void write_lattice_file(std::ostream& out, std::size_t dim, std::span<const LatticeVector> rows) {
  out << dim << ' ' << rows.size() << '\n';
  for (const auto& r : rows) out << format_vector(r) << '\n';
}

/// 64-bit FNV-1a, printed as 16 hex digits.
inline std::string fnv1a_digest(std::string_view data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace latinc
