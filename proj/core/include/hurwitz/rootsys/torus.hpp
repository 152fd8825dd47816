#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "hurwitz/rootsys/root_system.hpp"

namespace hurwitz::rootsys {

class EnumerationBudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct TorusEntry {
  int dM;  // -1 when no minimal module is in play
  int dL;
  std::uint64_t count;
};

/// Fixed-space dimensions of the elements of order dividing m in a maximal
/// torus of the simply connected group, tallied by (d^M, d^L).
struct TorusHistogram {
  std::string family;
  int m = 0;
  int dim_M = -1;
  int dim_L = 0;
  std::uint64_t total = 0;
  /// Sorted by d^L, then d^M.
  std::vector<TorusEntry> entries;
  /// Minima over nonzero vectors (min_dM is -1 without a minimal module).
  int min_dL = 0;
  int min_dM = -1;

  bool attains(int dM, int dL) const;
};

struct TorusOptions {
  std::uint64_t budget = 50'000'000;
  unsigned workers = 1;
};

/// Enumerates v in (Z/m)^rank (coroot coordinates). For each v,
///   d^L(v) = rank + #{roots a : <a, v> = 0 mod m},
///   d^M(v) = #{weights l (with multiplicity) : <l, v> = 0 mod m}.
/// `weights` may be null, in which case d^M is reported as -1. Throws
/// EnumerationBudgetExceeded when m^rank exceeds the budget.
TorusHistogram torus_fixed_dims(const RootSystem& rs, const WeightSet* weights, int m,
                                const TorusOptions& opts = {});

/// (d^M, d^L) of a single torus vector.
std::pair<int, int> torus_vector_dims(const RootSystem& rs, const WeightSet* weights, int m,
                                      const IntVec& v);

/// Simple reflection acting on a torus vector in coroot coordinates.
IntVec reflect_coweight(const RootSystem& rs, const IntVec& v, int i, int m);

/// Plain-text report: header comment lines, then `count dM dL` rows sorted by
/// d^L ("-" for an absent d^M).
std::string render_histogram(const TorusHistogram& h);

}  // namespace hurwitz::rootsys
