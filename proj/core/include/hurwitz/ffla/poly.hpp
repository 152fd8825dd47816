#pragma once

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "hurwitz/ffla/field.hpp"

namespace hurwitz::ffla {

/// Polynomial over GF(q), ascending coefficients, no trailing zeros. The zero
/// polynomial is the empty vector.
using Poly = std::vector<Elem>;

struct PolyFactor {
  Poly factor;  // monic irreducible (or square-free part, per producer)
  unsigned multiplicity;
};

/// Univariate polynomial arithmetic over one field.
class PolyRing {
 public:
  explicit PolyRing(FieldPtr field) : field_(std::move(field)) {}

  const Field& field() const { return *field_; }
  const FieldPtr& field_ptr() const { return field_; }

  static int degree(const Poly& f) { return static_cast<int>(f.size()) - 1; }
  static void normalize(Poly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
  }
  Poly x() const { return Poly{0, 1}; }
  Poly constant(Elem c) const { return c == 0 ? Poly{} : Poly{c}; }

  Poly add(const Poly& a, const Poly& b) const;
  Poly sub(const Poly& a, const Poly& b) const;
  Poly mul(const Poly& a, const Poly& b) const;
  Poly scale(const Poly& a, Elem c) const;
  /// Quotient and remainder; b must be nonzero.
  std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) const;
  Poly mod(const Poly& a, const Poly& b) const { return divmod(a, b).second; }
  Poly monic(const Poly& a) const;
  Poly gcd(Poly a, Poly b) const;
  Poly derivative(const Poly& a) const;
  Poly mulmod(const Poly& a, const Poly& b, const Poly& m) const {
    return mod(mul(a, b), m);
  }
  Poly powmod(const Poly& base, const mpz_class& e, const Poly& m) const;
  Poly powmod(const Poly& base, std::uint64_t e, const Poly& m) const {
    return powmod(base, mpz_class(std::to_string(e)), m);
  }
  Elem eval(const Poly& f, Elem x) const;

  /// Square-free decomposition f = prod g_i^i (g_i coprime, square-free).
  /// Returns (g_i, i) for nonconstant g_i. Input must be monic.
  std::vector<PolyFactor> squarefree(const Poly& f) const;
  /// Distinct-degree factorisation of a monic square-free f: pairs
  /// (product of all irreducible factors of degree d, d).
  std::vector<PolyFactor> distinct_degree(const Poly& f) const;
  /// Splits a monic square-free f whose irreducible factors all have degree
  /// d (Cantor–Zassenhaus). Output sorted.
  std::vector<Poly> equal_degree(const Poly& f, unsigned d,
                                 std::mt19937_64& rng) const;
  /// Complete factorisation into monic irreducibles with multiplicity,
  /// sorted by (degree, coefficients). Deterministic.
  std::vector<PolyFactor> factor(const Poly& f) const;
  bool is_irreducible(const Poly& f) const;

 private:
  Poly pth_root(const Poly& f) const;

  FieldPtr field_;
};

/// q^e as an arbitrary-precision integer.
mpz_class mpz_pow(std::uint64_t q, unsigned e);

}  // namespace hurwitz::ffla
