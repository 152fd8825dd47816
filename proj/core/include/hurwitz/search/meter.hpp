#pragma once

#include <optional>
#include <vector>

#include "hurwitz/chevgrp/group.hpp"
#include "hurwitz/classdata/classdata.hpp"
#include "hurwitz/ffla/matrix.hpp"

namespace hurwitz::search {

using classdata::Fingerprint;
using ffla::Matrix;

/// Fixed-space measurements on the module of a group and, through the image
/// of the Lie algebra in End(V), on the adjoint module.
class Meter {
 public:
  /// Adjoint measurements are set up for minimal modules (M, M') whenever
  /// the Lie image can be reconstructed; membership tests additionally for
  /// adjoint modules of dimension at most `membership_dim_cap`.
  explicit Meter(const chevgrp::GroupCtx& ctx, std::size_t membership_dim_cap = 64);

  ModuleKind kind() const { return kind_; }
  /// Dimension of the Lie image, 0 when unavailable.
  std::size_t lie_dim() const { return basis_.size(); }
  bool measures_adjoint() const { return adjoint_; }
  /// L when the image has the full dimension of L, L' otherwise.
  ModuleKind adjoint_kind() const { return adjoint_kind_; }

  int module_fixed_dim(const Matrix& g) const;
  /// Fixed space of X -> g X g^-1 on the Lie image.
  std::optional<int> adjoint_fixed_dim(const Matrix& g) const;
  /// g normalizes the Lie image (a necessary condition for membership in
  /// the group); nullopt when no image is available.
  std::optional<bool> normalizes(const Matrix& g) const;

  /// Module and adjoint dimensions, plus the Jordan partition on the module
  /// when `order` is a power of p.
  Fingerprint fingerprint(const Matrix& g, int order) const;
  /// Module dimension only.
  Fingerprint module_fingerprint(const Matrix& g, int order) const;

 private:
  Matrix conj_matrix(const Matrix& g, const Matrix& g_inv) const;

  ModuleKind kind_;
  std::uint32_t p_;
  bool adjoint_ = false;
  ModuleKind adjoint_kind_ = ModuleKind::L;
  std::vector<Matrix> basis_;
  std::vector<std::size_t> pivots_;
};

}  // namespace hurwitz::search
