#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "hurwitz/ffla/intfactor.hpp"
#include "hurwitz/ffla/matrix.hpp"
#include "hurwitz/ffla/poly.hpp"

namespace hurwitz::ffla {

class NotUnipotent : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Monic minimal polynomial, as the lcm of the local minimal polynomials of
/// the standard basis vectors (Krylov sequences).
Poly min_poly(const Matrix& g);

/// f(M) by Horner's rule.
Matrix eval_poly(const Poly& f, const Matrix& m);

/// Exact multiplicative order of an invertible matrix.
///
/// The semisimple part comes from the distinct-degree factors of the radical
/// of the minimal polynomial: the root order on a degree-d block divides
/// q^d - 1, whose factorisation is taken from the factor table (or computed
/// under the rho budget). The unipotent part is the least power of p that is
/// at least the largest multiplicity. Throws FactoringBudgetExceeded when a
/// needed factorisation is out of reach, std::invalid_argument for singular
/// input and std::overflow_error if the order exceeds 64 bits.
std::uint64_t element_order(const Matrix& g, const FactorOptions& opts = {});

/// Jordan block sizes (descending) of a unipotent matrix, from the rank
/// sequence of (g - I)^k. Throws NotUnipotent otherwise.
std::vector<std::size_t> jordan_partition(const Matrix& g);

}  // namespace hurwitz::ffla
