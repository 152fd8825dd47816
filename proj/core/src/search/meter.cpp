#include "hurwitz/search/meter.hpp"

#include "hurwitz/ffla/order.hpp"

namespace hurwitz::search {

using ffla::Elem;
using ffla::Vec;

Meter::Meter(const chevgrp::GroupCtx& ctx, std::size_t membership_dim_cap)
    : kind_(ctx.kind), p_(ctx.field->p()) {
  const bool minimal = base_kind(ctx.kind) == ModuleKind::M;
  if (!minimal && (ctx.kind != ModuleKind::L || ctx.dim > membership_dim_cap)) return;
  std::vector<Matrix> lie;
  try {
    lie = chevgrp::lie_image(ctx);
  } catch (const std::exception&) {
    return;
  }
  const std::size_t n = ctx.dim;
  ffla::EchelonBasis eb(ctx.field, n * n);
  for (const auto& x : lie) eb.insert(Vec(x.entries().begin(), x.entries().end()));
  for (const auto& row : eb.reduced_rows()) {
    basis_.emplace_back(ctx.field, n, std::vector<Elem>(row.begin(), row.end()));
  }
  pivots_ = eb.pivots();
  if (minimal) {
    adjoint_ = true;
    const std::size_t full = chevgrp::expected_dimension(ctx.family, p_, ModuleKind::L);
    adjoint_kind_ = basis_.size() == full ? ModuleKind::L : ModuleKind::Lprime;
  }
}

int Meter::module_fixed_dim(const Matrix& g) const {
  return static_cast<int>(ffla::fixed_space_dim(g));
}

Matrix Meter::conj_matrix(const Matrix& g, const Matrix& g_inv) const {
  const std::size_t k = basis_.size();
  std::vector<Elem> a(k * k);
  for (std::size_t i = 0; i < k; ++i) {
    const Matrix c = ffla::mat_mul(ffla::mat_mul(g, basis_[i]), g_inv);
    for (std::size_t j = 0; j < k; ++j) a[j * k + i] = c.entries()[pivots_[j]];
  }
  return Matrix(g.field_ptr(), k, std::move(a));
}

std::optional<int> Meter::adjoint_fixed_dim(const Matrix& g) const {
  if (!adjoint_) return std::nullopt;
  return static_cast<int>(ffla::fixed_space_dim(conj_matrix(g, *ffla::inverse(g))));
}

std::optional<bool> Meter::normalizes(const Matrix& g) const {
  if (basis_.empty()) return std::nullopt;
  const auto g_inv = ffla::inverse(g);
  if (!g_inv) return false;
  const std::size_t n = g.dim();
  ffla::EchelonBasis eb(g.field_ptr(), n * n);
  for (const auto& b : basis_) eb.insert(Vec(b.entries().begin(), b.entries().end()));
  for (const auto& b : basis_) {
    const Matrix c = ffla::mat_mul(ffla::mat_mul(g, b), *g_inv);
    if (!eb.contains(Vec(c.entries().begin(), c.entries().end()))) return false;
  }
  return true;
}

Fingerprint Meter::module_fingerprint(const Matrix& g, int order) const {
  Fingerprint fp;
  fp.order = order;
  fp.dims[kind_] = module_fixed_dim(g);
  return fp;
}

Fingerprint Meter::fingerprint(const Matrix& g, int order) const {
  Fingerprint fp = module_fingerprint(g, order);
  if (auto d = adjoint_fixed_dim(g)) fp.dims[adjoint_kind_] = *d;
  int m = order;
  while (m > 1 && m % static_cast<int>(p_) == 0) m /= static_cast<int>(p_);
  if (order > 1 && m == 1) fp.jordan = ffla::jordan_partition(g);
  return fp;
}

}  // namespace hurwitz::search
