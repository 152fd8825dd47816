#pragma once

#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "hurwitz/module_kind.hpp"

namespace hurwitz::rootsys {

using IntVec = std::vector<int>;

class UnsupportedType : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Finite crystallographic root system in Bourbaki numbering.
///
/// `cartan[i][j] = <alpha_i, alpha_j^vee>`. Roots are stored in the
/// simple-root basis: positive roots first, sorted by height and then by
/// descending coefficient vector (so root i < rank is alpha_i), followed by
/// their negatives in the same order.
class RootSystem {
 public:
  const std::string& label() const { return label_; }
  int rank() const { return rank_; }
  const std::vector<IntVec>& cartan() const { return cartan_; }
  std::size_t size() const { return roots_.size(); }
  std::size_t num_positive() const { return roots_.size() / 2; }
  const IntVec& root(std::size_t r) const { return roots_[r]; }
  const std::vector<IntVec>& roots() const { return roots_; }
  bool is_long(std::size_t r) const { return long_[r]; }
  bool simply_laced() const { return simply_laced_; }
  std::size_t negative(std::size_t r) const {
    return r < num_positive() ? r + num_positive() : r - num_positive();
  }
  int height(std::size_t r) const;
  /// Index of a root given by simple-root coordinates, or -1.
  int index_of(const IntVec& coeffs) const;
  /// Index of root(a) + root(b), or -1 when the sum is not a root.
  int sum_index(std::size_t a, std::size_t b) const;
  /// <beta, alpha_i^vee> for beta in simple-root coordinates.
  int pairing(const IntVec& beta, int i) const;
  /// Dynkin labels (<beta, alpha_j^vee>)_j.
  IntVec dynkin_labels(const IntVec& beta) const;
  /// Symmetric form, scaled so that it is integral with short roots of norm 2.
  int inner(const IntVec& a, const IntVec& b) const;
  /// Length of the alpha-string through beta below beta: largest p with
  /// beta - p alpha a root.
  int string_down(std::size_t alpha, std::size_t beta) const;
  /// Simple reflection s_i on simple-root coordinates.
  IntVec reflect(const IntVec& beta, int i) const;

  friend RootSystem build_root_system(const std::string& label);

 private:
  std::string label_;
  int rank_ = 0;
  std::vector<IntVec> cartan_;
  IntVec simple_norm_;
  std::vector<IntVec> roots_;
  std::vector<bool> long_;
  bool simply_laced_ = true;
  std::map<IntVec, int> index_;
};

/// Types A1, A2, G2, D4, D5, F4, E6, E7, E8. Roots are generated by
/// closing the simple roots under the simple reflections.
RootSystem build_root_system(const std::string& label);

/// Cartan matrix of a supported type (throws UnsupportedType).
std::vector<IntVec> cartan_matrix(const std::string& label);

/// Multiset of weights of a module, as Dynkin labels.
struct WeightSet {
  ModuleKind kind;
  std::vector<IntVec> weights;
  std::vector<int> multiplicity;

  int dimension() const;
};

/// Weights of the adjoint module: the roots plus `rank` zero weights.
WeightSet adjoint_weights(const RootSystem& rs);
/// Weights of the minimal module (A1: 2, A2: 3, G2: 7, F4: 26, E6: 27,
/// E7: 56). Throws UnsupportedType for types without one (E8, D-types).
WeightSet minimal_weights(const RootSystem& rs);

/// Weyl orbit of a weight given by Dynkin labels.
std::vector<IntVec> weyl_orbit(const RootSystem& rs, const IntVec& dynkin);

}  // namespace hurwitz::rootsys
