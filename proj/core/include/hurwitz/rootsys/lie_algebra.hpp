#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "hurwitz/rootsys/root_system.hpp"

namespace hurwitz::rootsys {

struct Term {
  std::uint32_t index;
  std::int64_t coeff;
  bool operator==(const Term&) const = default;
};
/// Sparse integer vector, terms sorted by index, no zero coefficients.
using SparseVec = std::vector<Term>;

/// Adds c * v into acc (both sorted).
void axpy(SparseVec& acc, std::int64_t c, const SparseVec& v);

/// Split simple Lie algebra over Z in a Chevalley basis.
///
/// Basis order: h_1..h_r (simple coroots), then e_beta for every root in the
/// root system's order. Simply-laced types use the Frenkel–Kac sign cocycle
///   eps(a, b) = (-1)^(sum a_i b_i + sum_{i<j, A_ij=-1} a_i b_j),
/// with [e_a, e_b] = eps(a, b) e_{a+b} and [e_a, e_-a] = -h_a. F4 and G2 are
/// the fixed points of a diagram automorphism of E6 and D4; their basis
/// vectors are recorded as integer combinations of the ambient basis.
class LieAlgebra {
 public:
  const RootSystem& root_system() const { return rs_; }
  std::size_t dim() const { return dim_; }
  std::size_t rank() const { return static_cast<std::size_t>(rs_.rank()); }
  std::size_t h(std::size_t i) const { return i; }
  std::size_t e(std::size_t root) const { return rank() + root; }

  /// [b_a, b_b] for basis elements.
  const SparseVec& bracket(std::size_t a, std::size_t b) const { return table_[a * dim_ + b]; }
  SparseVec bracket(const SparseVec& x, const SparseVec& y) const;

  /// N with [e_r, e_s] = N e_{r+s}; 0 when r + s is not a root.
  int structure_constant(std::size_t r, std::size_t s) const;
  /// Coroot of a root in the basis h_1..h_r.
  IntVec coroot(std::size_t r) const;
  /// s with [e_r, e_-r] = s h_r.
  int coroot_sign(std::size_t r) const;

  /// Ambient simply-laced algebra for folded types; nullptr otherwise.
  const std::shared_ptr<const LieAlgebra>& ambient() const { return ambient_; }
  /// Basis element b as a combination of the ambient basis (folded types).
  const SparseVec& embedding(std::size_t b) const { return embedding_[b]; }

  friend std::shared_ptr<const LieAlgebra> build_lie_algebra(const std::string& label);

 private:
  explicit LieAlgebra(RootSystem rs);
  void build_simply_laced();
  void build_folded(std::shared_ptr<const LieAlgebra> ambient,
                    const std::vector<int>& node_perm,
                    const std::vector<std::vector<int>>& node_orbits);

  RootSystem rs_;
  std::size_t dim_;
  std::vector<SparseVec> table_;
  std::shared_ptr<const LieAlgebra> ambient_;
  std::vector<SparseVec> embedding_;
};

/// Cached; every supported root-system type.
std::shared_ptr<const LieAlgebra> build_lie_algebra(const std::string& label);

/// The Frenkel–Kac sign eps(a, b) for a simply-laced Cartan matrix.
int cocycle(const std::vector<IntVec>& cartan, const IntVec& a, const IntVec& b);

/// All N(a, b) with a + b a root, keyed by root indices.
std::map<std::pair<std::size_t, std::size_t>, int> structure_constants(const LieAlgebra& g);

/// Diagram automorphism used for folding: ambient type, node permutation and
/// the orbits matching the folded type's simple roots (0-based).
struct Folding {
  std::string ambient;
  std::vector<int> node_perm;
  std::vector<std::vector<int>> orbits;
};
/// Folding data for F4 (from E6) and G2 (from D4).
const Folding& folding_for(const std::string& label);

}  // namespace hurwitz::rootsys
