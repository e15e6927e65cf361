#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ratrecon/matrix.hpp"
#include "ratrecon/poly1.hpp"

namespace ratrecon {

// A function on Q x Q, built from the enumeration a_i = enumerate_countable(i),
// whose restriction to every horizontal and vertical line is a polynomial
// but which is not a rational function:
//
//   f(a_n, a_m) = sum_{i >= 0} prod_{l=0..i} (a_n - a_l)(a_m - a_l)
//
// Every term with i >= min(n, m) contains a zero factor, so the sum is finite.

/// f(a_n, a_m). Throws SizeMismatch unless n, m < cap.
FieldElement f_counter(std::uint64_t n, std::uint64_t m, std::uint64_t cap);

/// The slice a |-> f(a, a_m) as a polynomial of degree m (zero for m = 0).
/// Throws SizeMismatch unless m < cap.
Poly1 slice_poly(std::uint64_t m, std::uint64_t cap);

struct CounterexampleTable {
  /// a_0..a_{N-1}.
  std::vector<FieldElement> enumeration;
  /// values(n, m) = f(a_n, a_m).
  ExactMatrix values;
};

CounterexampleTable counter_table(std::size_t n);

/// Header "n,m,a_n,a_m,f" followed by one line per entry, row-major.
std::string table_csv(const CounterexampleTable& table);

struct RefutationWitness {
  /// Number of table points (in probe order) after which no fit remains.
  std::size_t points_used;
  std::size_t n;
  std::size_t m;
  FieldElement a_n;
  FieldElement a_m;
  FieldElement value;
};

struct DegreeRefutation {
  int degree_bound;
  /// Unknown coefficients of P and Q together.
  std::size_t unknowns;
  bool refuted;
  std::optional<RefutationWitness> witness;
  /// Dimension of the solution space of f Q - P = 0 on the whole table.
  std::size_t nullspace_dim;
};

/// For each D <= d_max, decides whether some P/Q with total degrees <= D
/// (Q nonzero at every table point) agrees with f on the grid x grid table.
/// Table points are probed in order of max(n, m), then n, then m; the
/// witness is the first point after which the answer is "no".
struct NonrationalityCertificate {
  int d_max;
  std::size_t grid;
  std::vector<DegreeRefutation> degrees;
};

/// Throws SizeMismatch unless grid >= 2 d_max + 2.
NonrationalityCertificate nonrationality_report(int d_max, std::size_t grid);

}  // namespace ratrecon
