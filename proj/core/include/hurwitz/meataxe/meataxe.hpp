#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <vector>

#include "hurwitz/ffla/matrix.hpp"
#include "hurwitz/ffla/poly.hpp"

namespace hurwitz::meataxe {

using ffla::Matrix;
using ffla::Vec;

/// A finite group (or algebra) acting on GF(q)^dim by column vectors.
class ModuleAction {
 public:
  /// Throws ffla::DimensionMismatch unless all generators share field and
  /// dimension; std::invalid_argument for an empty list.
  explicit ModuleAction(std::vector<Matrix> gens);

  std::size_t dim() const { return dim_; }
  const ffla::FieldPtr& field() const { return field_; }
  const std::vector<Matrix>& gens() const { return gens_; }
  /// Action of the transposed generators (the dual module, up to inversion).
  ModuleAction transposed() const;

 private:
  ffla::FieldPtr field_;
  std::size_t dim_;
  std::vector<Matrix> gens_;
};

/// Smallest invariant subspace containing `vecs`, as echelon rows (pivot entries 1).
std::vector<Vec> spin_up(const std::vector<Vec>& vecs, const ModuleAction& act);

enum class Verdict { Irreducible, Reducible, Inconclusive };

struct IrreducibilityResult {
  Verdict verdict = Verdict::Inconclusive;
  /// Proper nonzero invariant subspace when reducible.
  std::vector<Vec> subspace;
  /// The algebra element and irreducible factor that decided the test.
  std::optional<Matrix> theta;
  ffla::Poly factor;
  int trials = 0;
};

/// Norton's irreducibility test with the Holt–Rees conclusiveness criterion.
/// Random algebra elements are sums of up to three words of length <= 8 in
/// the generators. Gives up after `budget` elements.
IrreducibilityResult is_irreducible(const ModuleAction& act, std::mt19937_64& rng,
                                    int budget = 50);

class NotReducible : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Split {
  ModuleAction sub;
  ModuleAction quotient;
  /// Columns: the subspace basis, then standard complement vectors. For
  /// every generator g, P^-1 g P = [[A, *], [0, B]] with A on `sub` and B on
  /// `quotient`.
  Matrix basis_change;
};

/// Splits along a known proper invariant subspace (rows spanning it).
Split split(const ModuleAction& act, const std::vector<Vec>& subspace);
/// Finds an invariant subspace with is_irreducible and splits along it.
/// Throws NotReducible when the action is irreducible (or the test is
/// inconclusive within the budget).
Split split(const ModuleAction& act, std::mt19937_64& rng, int budget = 50);

/// Some irreducible composition factor of the given dimension, found by
/// repeated splitting; nullopt if the splitting never produces one.
std::optional<ModuleAction> find_factor(const ModuleAction& act, std::size_t dim,
                                        std::mt19937_64& rng, int budget = 50);

/// Top-left k x k block and bottom-right block of a square matrix.
Matrix leading_block(const Matrix& m, std::size_t k);
Matrix trailing_block(const Matrix& m, std::size_t k);

}  // namespace hurwitz::meataxe
