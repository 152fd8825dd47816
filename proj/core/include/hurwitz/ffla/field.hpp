#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace hurwitz::ffla {

/// Field element of GF(p^n), encoded as the base-p integer whose digits are
/// the coefficients of the residue polynomial (digit i is the coefficient of
/// x^i). 0 and 1 are the additive and multiplicative identities.
using Elem = std::uint16_t;

class Field;
using FieldPtr = std::shared_ptr<const Field>;

/// Arithmetic context for GF(q), q = p^n <= 2^16.
///
/// Multiplication goes through exp/log tables built from a primitive element;
/// addition is XOR in characteristic 2, modular in prime fields and digitwise
/// otherwise (tabulated for q <= 1024). Instances are immutable and may be
/// shared freely between threads.
class Field {
 public:
  static constexpr std::uint32_t kMaxOrder = 1u << 16;

  /// Field defined by the bundled modulus table entry for (p, n). Falls back
  /// to the lexicographically smallest primitive polynomial when the table
  /// has no entry.
  static FieldPtr make(std::uint32_t p, std::uint32_t n);

  /// GF(q) for a prime power q.
  static FieldPtr make_order(std::uint32_t q);

  /// Field defined by an explicit monic modulus (ascending coefficients).
  /// Throws std::invalid_argument if the modulus is not irreducible.
  static FieldPtr with_modulus(std::uint32_t p, std::vector<Elem> modulus);

  std::uint32_t p() const { return p_; }
  std::uint32_t n() const { return n_; }
  std::uint32_t q() const { return q_; }
  bool is_prime_field() const { return n_ == 1; }
  const std::vector<Elem>& modulus() const { return modulus_; }
  Elem primitive() const { return exp_[1]; }

  /// `p n c0 c1 ... cn`, the line format of the modulus table.
  std::string modulus_line() const;

  Elem add(Elem a, Elem b) const {
    if (p_ == 2) return a ^ b;
    if (n_ == 1) {
      std::uint32_t s = std::uint32_t{a} + b;
      return static_cast<Elem>(s >= p_ ? s - p_ : s);
    }
    if (!add_table_.empty()) return add_table_[std::size_t{a} * q_ + b];
    return add_digits(a, b);
  }
  Elem neg(Elem a) const {
    if (p_ == 2) return a;
    if (n_ == 1) return a == 0 ? 0 : static_cast<Elem>(p_ - a);
    return neg_[a];
  }
  Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }
  Elem mul(Elem a, Elem b) const {
    if (a == 0 || b == 0) return 0;
    return exp_[std::size_t{log_[a]} + log_[b]];
  }
  /// Undefined for a == 0 (asserted in debug builds).
  Elem inv(Elem a) const;
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  Elem pow(Elem a, std::uint64_t e) const;
  /// a -> a^p.
  Elem frobenius(Elem a) const { return pow(a, p_); }
  /// Inverse of the Frobenius map, a -> a^(p^(n-1)).
  Elem frobenius_inverse(Elem a) const;

  /// Discrete log with respect to primitive(); a != 0.
  std::uint32_t log(Elem a) const { return log_[a]; }
  Elem exp(std::uint64_t k) const { return exp_[k % (q_ - 1)]; }

  /// Image of an integer in the prime subfield.
  Elem from_int(std::int64_t v) const;
  /// The polynomial-basis element x^j, j < n (a GF(p)-basis of GF(q)).
  Elem basis(std::uint32_t j) const;
  /// Digit i (coefficient of x^i) of an element.
  std::uint32_t digit(Elem a, std::uint32_t i) const;

  bool operator==(const Field& other) const {
    return p_ == other.p_ && modulus_ == other.modulus_;
  }

 private:
  Field(std::uint32_t p, std::uint32_t n, std::vector<Elem> modulus);

  Elem add_digits(Elem a, Elem b) const;
  Elem slow_mul(Elem a, Elem b) const;
  bool build_tables(Elem generator);

  std::uint32_t p_;
  std::uint32_t n_;
  std::uint32_t q_;
  std::vector<Elem> modulus_;
  std::vector<Elem> exp_;
  std::vector<std::uint32_t> log_;
  std::vector<Elem> neg_;
  std::vector<Elem> add_table_;
  std::vector<std::uint32_t> pow_p_;
};

/// Entries of the bundled modulus table, keyed by (p, n).
struct ModulusEntry {
  std::uint32_t p;
  std::uint32_t n;
  std::vector<Elem> coeffs;
};

/// Parses the modulus table format: one `p n c0 ... cn` line per field,
/// `#` comments. Throws std::runtime_error on malformed lines.
std::vector<ModulusEntry> parse_modulus_table(const std::string& text);

/// True when q is a prime power p^n with q <= Field::kMaxOrder.
bool split_prime_power(std::uint32_t q, std::uint32_t& p, std::uint32_t& n);

}  // namespace hurwitz::ffla
