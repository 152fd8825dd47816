#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "hurwitz/module_kind.hpp"
#include "hurwitz/rootsys/lie_algebra.hpp"

namespace hurwitz::chevgrp {

using rootsys::IntVec;
using rootsys::SparseVec;

/// Sparse square integer matrix acting on column vectors; cols[j] is the
/// image of the j-th basis vector.
struct SparseIntMatrix {
  std::size_t dim = 0;
  std::vector<SparseVec> cols;

  static SparseIntMatrix zero(std::size_t n) { return {n, std::vector<SparseVec>(n)}; }
  bool is_zero() const;
  std::int64_t at(std::size_t i, std::size_t j) const;
};

SparseIntMatrix mul(const SparseIntMatrix& a, const SparseIntMatrix& b);
SparseIntMatrix add(const SparseIntMatrix& a, const SparseIntMatrix& b, std::int64_t c = 1);

/// Thrown when a divided power e^k / k! fails to be integral.
class DenominatorFailure : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Integral (Kostant Z-form) representation of a split Lie algebra: for each
/// root the nilpotent action of e_alpha and its divided powers.
struct IntegralRep {
  std::string family;
  ModuleKind kind = ModuleKind::L;
  std::size_t dim = 0;
  std::shared_ptr<const rootsys::LieAlgebra> algebra;
  /// Action of each algebra basis element (h_i then e_r).
  std::vector<SparseIntMatrix> action;
  /// divided[r][k-1] = e_r^k / k!, for k = 1 .. until zero.
  std::vector<std::vector<SparseIntMatrix>> divided;
  /// Weight (Dynkin labels) of each module basis vector.
  std::vector<IntVec> weights;
  /// Deterministic description of the basis, and its FNV-1a hash.
  std::string basis_description;
  std::uint64_t basis_hash = 0;

  const rootsys::RootSystem& root_system() const { return algebra->root_system(); }
};

/// Supported: L for A1, A2, G2, D4, F4, E6, E7, E8; M for A1 (2), G2 (7),
/// F4 (26), E6 (27), E7 (56). Throws rootsys::UnsupportedType otherwise and
/// DenominatorFailure on a non-integral divided power.
const IntegralRep& build_integral_rep(const std::string& family, ModuleKind kind);

}  // namespace hurwitz::chevgrp
