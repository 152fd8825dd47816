#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hurwitz/classdata/classdata.hpp"
#include "hurwitz/module_kind.hpp"

namespace hurwitz::scott {

using classdata::ClassRecord;

class FamilyMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class IncompleteTables : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct ModuleSpec {
  ModuleKind kind = ModuleKind::L;
  int dim = 0;
};

/// d of a record on a module: exact, a lower bound (M' without a stated
/// correction), or unknown.
struct ModuleValue {
  std::optional<int> value;
  bool exact = true;
};
ModuleValue module_value(const ClassRecord& r, ModuleKind kind);

struct ModuleSum {
  ModuleKind kind = ModuleKind::L;
  int sum = 0;
  int dim = 0;
};

struct TripleType {
  std::string family;
  /// Values of q covered, e.g. "3^n" or "2^{3n}".
  std::string q_condition;
  std::string x, y, z;
  std::vector<ModuleSum> sums;
};

/// d_x + d_y + d_z <= dim V on every supplied module. A module on which some
/// record has no value is skipped and reported through `skipped`.
bool scott_check(const ClassRecord& x, const ClassRecord& y, const ClassRecord& z,
                 const std::vector<ModuleSpec>& modules,
                 std::vector<ModuleKind>* skipped = nullptr);

/// Modules with trivial fixed space to which the inequality is applied.
std::vector<ModuleSpec> scott_modules(const std::string& family, std::uint64_t q);

/// Admissible triples of classes existing at q. Families with complete
/// order-7 data only: F4, E6, SE6, 2E6, A1.
std::vector<TripleType> enumerate_admissible(const std::string& family, std::uint64_t q);

/// As enumerate_admissible, ignoring class existence conditions.
std::vector<TripleType> enumerate_unconditioned(const std::string& family, std::uint64_t q);

/// One entry of a bound-constrained class list (E7, E8, SE7).
struct ClassCandidate {
  std::string label;  // "torus dM/dL" for untabulated semisimple classes
  std::optional<int> dM;
  int dL = 0;
  bool tabulated = true;
};

struct RoleBounds {
  /// Upper bound on d^L after the reduction.
  int max_dL = 0;
  std::vector<ClassCandidate> classes;
};

struct Verdict {
  enum class Kind { Possible, Impossible, Partial };
  Kind kind = Kind::Possible;
  std::string family;
  std::uint64_t q = 0;
  std::vector<TripleType> triples;
  std::string reason;
  /// Partial verdicts: candidates for x, y, z.
  RoleBounds x, y, z;
};

/// Possible with the admissible triples, Impossible with a reason, or, for
/// E7/E8/SE7, Partial with the bound-constrained class lists.
Verdict verdict(const std::string& family, std::uint64_t q);

/// Lower bounds on d^L for x, y, z over all classes passing the bounds
/// (tabulated rows plus torus data for semisimple z).
struct ReductionBounds {
  int min_x = 0, min_y = 0, min_z = 0;
  int max_x = 0, max_y = 0, max_z = 0;
};
ReductionBounds reduction_bounds(const std::string& family, std::uint64_t p);

/// Admissible-triple table: one entry per (family, q-case, x, y) with its z list.
struct TableRow {
  std::string family;
  std::string q_condition;
  std::string x, y;
  std::vector<std::string> z;
};

/// Rows over all congruence cases of q (p = 2, 3, 7 and p >= 5, p != 7)
/// for F4, E6, SE6 and, separately, 2E6. SE6 cases where SE6(q) = E6(q)
/// for every q in the case, and empty cases, are left out.
std::vector<TableRow> admissible_table(const std::string& family);

std::string render_rows(const std::vector<TableRow>& rows);
/// `family|q-cond|x|y|z`, one line per triple.
std::string render_lines(const std::vector<TableRow>& rows);
std::string render_verdict(const Verdict& v);

}  // namespace hurwitz::scott
