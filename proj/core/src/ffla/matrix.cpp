#include "hurwitz/ffla/matrix.hpp"

#include <algorithm>

namespace hurwitz::ffla {

namespace {

// Row-major product kernel. Prime fields accumulate integer products and
// reduce once per entry; extension fields go through the log tables.
void mul_into(const Field& F, std::size_t n, const Elem* a, const Elem* b, Elem* c) {
  if (F.is_prime_field()) {
    const std::uint64_t p = F.p();
    std::vector<std::uint64_t> acc(n);
    for (std::size_t i = 0; i < n; ++i) {
      std::fill(acc.begin(), acc.end(), 0);
      const Elem* ai = a + i * n;
      for (std::size_t k = 0; k < n; ++k) {
        const std::uint64_t x = ai[k];
        if (x == 0) continue;
        const Elem* bk = b + k * n;
        for (std::size_t j = 0; j < n; ++j) acc[j] += x * bk[j];
      }
      Elem* ci = c + i * n;
      for (std::size_t j = 0; j < n; ++j) ci[j] = static_cast<Elem>(acc[j] % p);
    }
    return;
  }
  std::vector<Elem> acc(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::fill(acc.begin(), acc.end(), 0);
    const Elem* ai = a + i * n;
    for (std::size_t k = 0; k < n; ++k) {
      const Elem x = ai[k];
      if (x == 0) continue;
      const Elem* bk = b + k * n;
      for (std::size_t j = 0; j < n; ++j) {
        if (bk[j] != 0) acc[j] = F.add(acc[j], F.mul(x, bk[j]));
      }
    }
    std::copy(acc.begin(), acc.end(), c + i * n);
  }
}

// Gaussian elimination on a copy; returns rank and leaves the reduced rows.
std::size_t eliminate(const Field& F, std::size_t rows, std::size_t cols,
                      std::vector<Elem>& m, std::vector<std::size_t>* pivot_cols) {
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && m[piv * cols + c] == 0) ++piv;
    if (piv == rows) continue;
    if (piv != r) {
      std::swap_ranges(m.begin() + piv * cols, m.begin() + (piv + 1) * cols,
                       m.begin() + r * cols);
    }
    const Elem inv = F.inv(m[r * cols + c]);
    for (std::size_t j = c; j < cols; ++j) m[r * cols + j] = F.mul(m[r * cols + j], inv);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r) continue;
      const Elem f = m[i * cols + c];
      if (f == 0) continue;
      for (std::size_t j = c; j < cols; ++j) {
        m[i * cols + j] = F.sub(m[i * cols + j], F.mul(f, m[r * cols + j]));
      }
    }
    if (pivot_cols) pivot_cols->push_back(c);
    ++r;
  }
  return r;
}

}  // namespace

Matrix::Matrix(FieldPtr field, std::size_t dim)
    : field_(std::move(field)), dim_(dim), entries_(dim * dim, 0) {}

Matrix::Matrix(FieldPtr field, std::size_t dim, std::vector<Elem> entries)
    : field_(std::move(field)), dim_(dim), entries_(std::move(entries)) {
  if (entries_.size() != dim_ * dim_) {
    throw DimensionMismatch("matrix entry count does not match dimension");
  }
  for (Elem e : entries_) {
    if (e >= field_->q()) throw std::invalid_argument("matrix entry outside field");
  }
}

Matrix Matrix::identity(FieldPtr field, std::size_t dim) {
  return scalar(std::move(field), dim, 1);
}

Matrix Matrix::scalar(FieldPtr field, std::size_t dim, Elem s) {
  std::vector<Elem> e(dim * dim, 0);
  for (std::size_t i = 0; i < dim; ++i) e[i * dim + i] = s;
  return Matrix(std::move(field), dim, std::move(e));
}

Matrix Matrix::from_rows(FieldPtr field, const std::vector<Vec>& rows) {
  const std::size_t n = rows.size();
  std::vector<Elem> e;
  e.reserve(n * n);
  for (const auto& r : rows) {
    if (r.size() != n) throw DimensionMismatch("matrix rows must be square");
    e.insert(e.end(), r.begin(), r.end());
  }
  return Matrix(std::move(field), n, std::move(e));
}

bool Matrix::is_identity() const {
  for (std::size_t i = 0; i < dim_; ++i) {
    for (std::size_t j = 0; j < dim_; ++j) {
      if (entries_[i * dim_ + j] != (i == j ? 1 : 0)) return false;
    }
  }
  return true;
}

bool Matrix::is_zero() const {
  return std::all_of(entries_.begin(), entries_.end(), [](Elem e) { return e == 0; });
}

void check_compatible(const Matrix& a, const Matrix& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch("matrix dimensions differ");
  if (!(a.field() == b.field())) throw DimensionMismatch("matrices over different fields");
}

Matrix mat_mul(const Matrix& a, const Matrix& b) {
  check_compatible(a, b);
  std::vector<Elem> c(a.dim() * a.dim());
  mul_into(a.field(), a.dim(), a.entries().data(), b.entries().data(), c.data());
  return Matrix(a.field_ptr(), a.dim(), std::move(c));
}

Matrix mat_add(const Matrix& a, const Matrix& b) {
  check_compatible(a, b);
  std::vector<Elem> c(a.entries().size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    c[i] = a.field().add(a.entries()[i], b.entries()[i]);
  }
  return Matrix(a.field_ptr(), a.dim(), std::move(c));
}

Matrix mat_sub(const Matrix& a, const Matrix& b) {
  check_compatible(a, b);
  std::vector<Elem> c(a.entries().size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    c[i] = a.field().sub(a.entries()[i], b.entries()[i]);
  }
  return Matrix(a.field_ptr(), a.dim(), std::move(c));
}

Matrix mat_scale(const Matrix& a, Elem s) {
  std::vector<Elem> c(a.entries().size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.field().mul(a.entries()[i], s);
  return Matrix(a.field_ptr(), a.dim(), std::move(c));
}

Matrix transpose(const Matrix& a) {
  const std::size_t n = a.dim();
  std::vector<Elem> c(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) c[j * n + i] = a.at(i, j);
  }
  return Matrix(a.field_ptr(), n, std::move(c));
}

Matrix mat_pow(const Matrix& a, std::uint64_t e) {
  Matrix result = Matrix::identity(a.field_ptr(), a.dim());
  Matrix base = a;
  while (e > 0) {
    if (e & 1) result = mat_mul(result, base);
    e >>= 1;
    if (e) base = mat_mul(base, base);
  }
  return result;
}

std::optional<Matrix> inverse(const Matrix& a) {
  const Field& F = a.field();
  const std::size_t n = a.dim();
  const std::size_t w = 2 * n;
  std::vector<Elem> m(n * w, 0);
  for (std::size_t i = 0; i < n; ++i) {
    std::copy(a.row(i).begin(), a.row(i).end(), m.begin() + i * w);
    m[i * w + n + i] = 1;
  }
  std::vector<std::size_t> pivots;
  eliminate(F, n, w, m, &pivots);
  if (pivots.size() < n || pivots[n - 1] != n - 1) return std::nullopt;
  std::vector<Elem> inv(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    std::copy(m.begin() + i * w + n, m.begin() + (i + 1) * w, inv.begin() + i * n);
  }
  return Matrix(a.field_ptr(), n, std::move(inv));
}

Matrix conjugate(const Matrix& a, const Matrix& b, const Matrix& b_inv) {
  return mat_mul(mat_mul(b_inv, a), b);
}

Vec mat_vec(const Matrix& m, std::span<const Elem> v) {
  const Field& F = m.field();
  const std::size_t n = m.dim();
  if (v.size() != n) throw DimensionMismatch("vector length mismatch");
  Vec out(n, 0);
  if (F.is_prime_field()) {
    for (std::size_t i = 0; i < n; ++i) {
      std::uint64_t acc = 0;
      const auto r = m.row(i);
      for (std::size_t j = 0; j < n; ++j) acc += std::uint64_t{r[j]} * v[j];
      out[i] = static_cast<Elem>(acc % F.p());
    }
    return out;
  }
  for (std::size_t i = 0; i < n; ++i) {
    Elem acc = 0;
    const auto r = m.row(i);
    for (std::size_t j = 0; j < n; ++j) acc = F.add(acc, F.mul(r[j], v[j]));
    out[i] = acc;
  }
  return out;
}

Vec vec_mat(std::span<const Elem> v, const Matrix& m) {
  const Field& F = m.field();
  const std::size_t n = m.dim();
  if (v.size() != n) throw DimensionMismatch("vector length mismatch");
  if (F.is_prime_field()) {
    std::vector<std::uint64_t> acc(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
      const std::uint64_t x = v[i];
      if (x == 0) continue;
      const auto r = m.row(i);
      for (std::size_t j = 0; j < n; ++j) acc[j] += x * r[j];
    }
    Vec out(n);
    for (std::size_t j = 0; j < n; ++j) out[j] = static_cast<Elem>(acc[j] % F.p());
    return out;
  }
  Vec out(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (v[i] == 0) continue;
    const auto r = m.row(i);
    for (std::size_t j = 0; j < n; ++j) out[j] = F.add(out[j], F.mul(v[i], r[j]));
  }
  return out;
}

std::size_t rank(const Matrix& m) {
  std::vector<Elem> e = m.entries();
  return eliminate(m.field(), m.dim(), m.dim(), e, nullptr);
}

std::size_t kernel_dim(const Matrix& m) { return m.dim() - rank(m); }

std::vector<Vec> kernel_basis(const Matrix& m) {
  const Field& F = m.field();
  const std::size_t n = m.dim();
  std::vector<Elem> e = m.entries();
  std::vector<std::size_t> pivots;
  const std::size_t r = eliminate(F, n, n, e, &pivots);
  std::vector<bool> is_pivot(n, false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<Vec> basis;
  for (std::size_t free = 0; free < n; ++free) {
    if (is_pivot[free]) continue;
    Vec v(n, 0);
    v[free] = 1;
    for (std::size_t i = 0; i < r; ++i) v[pivots[i]] = F.neg(e[i * n + free]);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::size_t fixed_space_dim(const Matrix& g) {
  return kernel_dim(mat_sub(g, Matrix::identity(g.field_ptr(), g.dim())));
}

Elem determinant(const Matrix& m) {
  const Field& F = m.field();
  const std::size_t n = m.dim();
  std::vector<Elem> e = m.entries();
  Elem det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && e[piv * n + c] == 0) ++piv;
    if (piv == n) return 0;
    if (piv != c) {
      std::swap_ranges(e.begin() + piv * n, e.begin() + (piv + 1) * n, e.begin() + c * n);
      det = F.neg(det);
    }
    const Elem d = e[c * n + c];
    det = F.mul(det, d);
    const Elem inv = F.inv(d);
    for (std::size_t i = c + 1; i < n; ++i) {
      const Elem f = F.mul(e[i * n + c], inv);
      if (f == 0) continue;
      for (std::size_t j = c; j < n; ++j) {
        e[i * n + j] = F.sub(e[i * n + j], F.mul(f, e[c * n + j]));
      }
    }
  }
  return det;
}

std::size_t EchelonBasis::reduce(Vec& v) const {
  const Field& F = *field_;
  for (std::size_t k = 0; k < rows_.size(); ++k) {
    const Elem c = v[pivots_[k]];
    if (c == 0) continue;
    const Vec& r = rows_[k];
    for (std::size_t j = pivots_[k]; j < dim_; ++j) {
      if (r[j] != 0) v[j] = F.sub(v[j], F.mul(c, r[j]));
    }
  }
  for (std::size_t j = 0; j < dim_; ++j) {
    if (v[j] != 0) return j;
  }
  return dim_;
}

bool EchelonBasis::insert(Vec v) {
  const std::size_t piv = reduce(v);
  if (piv == dim_) return false;
  const Field& F = *field_;
  const Elem inv = F.inv(v[piv]);
  for (std::size_t j = piv; j < dim_; ++j) v[j] = F.mul(v[j], inv);
  rows_.push_back(std::move(v));
  pivots_.push_back(piv);
  return true;
}

bool EchelonBasis::contains(Vec v) const { return reduce(v) == dim_; }

std::vector<Vec> EchelonBasis::reduced_rows() const {
  const Field& F = *field_;
  std::vector<Vec> out = rows_;
  for (std::size_t j = out.size(); j-- > 0;) {
    const std::size_t piv = pivots_[j];
    for (std::size_t i = 0; i < out.size(); ++i) {
      const Elem c = out[i][piv];
      if (i == j || c == 0) continue;
      const Elem nc = F.neg(c);
      for (std::size_t t = 0; t < dim_; ++t) {
        if (out[j][t]) out[i][t] = F.add(out[i][t], F.mul(nc, out[j][t]));
      }
    }
  }
  return out;
}

}  // namespace hurwitz::ffla
