#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "hurwitz/module_kind.hpp"

namespace hurwitz::classdata {

class UnsupportedFamily : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ChecksumMismatch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Existence condition on q. `twisted` evaluation substitutes -q.
struct Condition {
  enum class Kind { All, OneMod, PlusMinusOneMod };
  Kind kind = Kind::All;
  int modulus = 1;

  bool holds(std::int64_t q) const;
  std::string to_string() const;
  static Condition parse(std::string_view s);
  bool operator==(const Condition&) const = default;
};

struct ClassRecord {
  std::string family;
  std::string label;
  int order = 0;
  bool unipotent = false;
  std::optional<int> dM;
  std::optional<int> dL;
  Condition condition;
  std::optional<int> chiM;
  std::optional<int> chiL;
  /// d^{M'} - d^M when stated.
  std::optional<int> mprime_delta;
  /// Labels of records declared to share this record's (d^M, d^L).
  std::vector<std::string> collides;
  std::string note;

  /// d on M' when known exactly.
  std::optional<int> d_mprime() const;
};

/// Fixed-space dimensions measured on one or more modules.
struct Fingerprint {
  int order = 0;
  std::map<ModuleKind, int> dims;
  /// Jordan block sizes when unipotent and measured (informational).
  std::vector<std::size_t> jordan;

  std::string to_string() const;
};

class ClassTable {
 public:
  /// Parses the data file text; throws ChecksumMismatch when the footer
  /// does not match the content and std::runtime_error on malformed lines.
  static ClassTable parse(const std::string& text);
  /// classes.dat from the data directory, loaded once.
  static const ClassTable& bundled();

  const std::vector<ClassRecord>& records() const { return records_; }

  /// Records whose existence condition holds at q: unipotent ones when
  /// p | order, semisimple ones otherwise. Families SE6 and 2E6 read the E6
  /// records (2E6 evaluates conditions at -q); SE7 reads its own records
  /// where present and the E7 ones otherwise.
  std::vector<ClassRecord> lookup(const std::string& family, std::uint64_t q, int order) const;

  /// As lookup but ignoring existence conditions.
  std::vector<ClassRecord> candidates(const std::string& family, std::uint64_t q,
                                      int order) const;

  /// Labels of the candidate records consistent with the fingerprint. On M'
  /// a record without a stated correction matches d^M - 1 or d^M.
  std::vector<std::string> classify(const Fingerprint& fp, const std::string& family,
                                    std::uint64_t q) const;

  std::optional<ClassRecord> find(const std::string& family, std::uint64_t q, int order,
                                  const std::string& label) const;

 private:
  std::vector<ClassRecord> records_;
};

/// True when the measured dimensions do not contradict the record. On M' a
/// record without a stated correction matches d^M - 1 or d^M.
bool consistent(const ClassRecord& r, const Fingerprint& fp);

/// Families with records: F4, E6, SE6, 2E6, E7, SE7, E8, A1.
bool known_family(const std::string& family);

/// Characteristic of q (q must be a prime power).
std::uint64_t characteristic(std::uint64_t q);

}  // namespace hurwitz::classdata
