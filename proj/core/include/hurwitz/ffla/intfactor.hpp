#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace hurwitz::ffla {

struct PrimePower {
  mpz_class prime;
  unsigned exponent;
};
using Factorization = std::vector<PrimePower>;

/// Thrown when Pollard rho exhausts its step budget; the remedy is a
/// factor-table entry for the offending (q, d).
class FactoringBudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bundled factorisations of q^d - 1, text lines `q d prime^exp ...`.
class FactorTable {
 public:
  FactorTable() = default;
  static FactorTable parse(const std::string& text);
  /// The table in the data directory (empty if the file is missing).
  static const FactorTable& bundled();

  std::optional<Factorization> lookup(std::uint64_t q, unsigned d) const;
  std::size_t size() const { return entries_.size(); }

 private:
  std::map<std::pair<std::uint64_t, unsigned>, Factorization> entries_;
};

struct FactorOptions {
  /// Primes tried by division before anything else.
  std::vector<std::uint64_t> hints;
  /// Pollard-rho iterations per composite cofactor.
  std::uint64_t rho_budget = std::uint64_t{1} << 22;
};

/// Prime factorisation of n >= 1, sorted by prime.
Factorization factor_integer(const mpz_class& n, const FactorOptions& opts = {});

/// Factorisation of q^d - 1: bundled table first, otherwise cyclotomic
/// splitting q^d - 1 = prod_{k | d} Phi_k(q) with each part factored.
Factorization factor_q_power_minus_one(std::uint64_t q, unsigned d,
                                       const FactorOptions& opts = {});

std::string to_string(const Factorization& f);

}  // namespace hurwitz::ffla
