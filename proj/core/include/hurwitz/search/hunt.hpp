#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include "hurwitz/classdata/classdata.hpp"
#include "hurwitz/search/meter.hpp"
#include "hurwitz/search/random.hpp"

namespace hurwitz::search {

using classdata::ClassRecord;

class NotAdmissible : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Classes targeted for x (order 2), y (order 3) and z (order 7).
struct HuntTarget {
  std::string family;
  std::uint64_t q = 0;
  ClassRecord x, y, z;

  std::string type() const { return x.label + "," + y.label + "," + z.label; }
};

/// Resolves a type "x,y,z" at q, or the first admissible type when `type`
/// is empty. Throws NotAdmissible (with the verdict's reason) when the group
/// has no admissible triple or the type is not among them. For E7, SE7 and
/// E8 each label must survive the reduction bounds; "torus a/b" names an
/// untabulated order-7 class with d^M = a and d^L = b.
HuntTarget resolve_target(const std::string& family, std::uint64_t q, const std::string& type);

/// Record for a label of the given order, including "torus a/b" labels.
std::optional<ClassRecord> target_record(const std::string& family, std::uint64_t q, int order,
                                         const std::string& label);

/// Module a hunt runs on: A1 and E8 on L; F4 on M' when p = 3 and M
/// otherwise; E6 and SE6 on M; E7 and SE7 on M when p = 2 and L otherwise.
ModuleKind hunt_module(const std::string& family, std::uint64_t q);

/// Element of the given order whose fingerprint is consistent with the
/// record. Throws BudgetExhausted after `retries` elements of that order.
Matrix random_class_element(ProductReplacement& sampler, const Meter& meter,
                            const ClassRecord& target, int retries = 500);

enum class Conjugated { X, Z };

struct HuntLimits {
  /// Total conjugates tested; 0 means no limit.
  std::uint64_t max_iterations = 0;
  /// Wall-clock limit; 0 means no limit. Hitting it is reported, and the
  /// result is then not reproducible.
  double seconds = 0;
  unsigned workers = 1;
  /// Conjugates per independent stream.
  std::uint64_t chunk = 4096;
  Conjugated conjugated = Conjugated::X;
  int meataxe_budget = 50;
};

struct HuntStats {
  std::uint64_t iterations = 0;
  std::uint64_t order_three = 0;
  std::uint64_t y_class = 0;
  std::uint64_t reducible = 0;
  double seconds = 0;
};

struct HuntHit {
  Matrix x, y, z;
  /// Stream (chunk) index and position inside it.
  std::uint64_t stream = 0;
  std::uint64_t iteration = 0;
  int irreducibility_trials = 0;
};

struct HuntResult {
  enum class Status { Found, IterationLimit, TimeLimit };
  Status status = Status::IterationLimit;
  std::optional<HuntHit> hit;
  HuntStats stats;
};

/// Fixes one of x, z in its class and walks the other through random
/// conjugates, accepting when o(xz) = 3, y = (zx)^-1 matches its class and
/// <x, z> is irreducible. Stream k uses seed derive_seed(seed, k + 1); the
/// hit from the lowest stream wins, so the result does not depend on the
/// number of workers. Refuses inadmissible targets of tabulated families.
HuntResult hunt(const GroupCtx& ctx, const HuntTarget& target, std::uint64_t seed,
                const HuntLimits& limits);

}  // namespace hurwitz::search
