#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "hurwitz/ffla/field.hpp"

namespace hurwitz::ffla {

using Vec = std::vector<Elem>;

class DimensionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Dense square matrix over GF(q), row-major. Values are immutable: every
/// operation returns a new matrix. Group elements act on column vectors,
/// v -> M v.
class Matrix {
 public:
  Matrix(FieldPtr field, std::size_t dim);  // zero matrix
  Matrix(FieldPtr field, std::size_t dim, std::vector<Elem> entries);

  static Matrix identity(FieldPtr field, std::size_t dim);
  static Matrix scalar(FieldPtr field, std::size_t dim, Elem s);
  static Matrix from_rows(FieldPtr field, const std::vector<Vec>& rows);

  std::size_t dim() const { return dim_; }
  const Field& field() const { return *field_; }
  const FieldPtr& field_ptr() const { return field_; }
  Elem at(std::size_t i, std::size_t j) const { return entries_[i * dim_ + j]; }
  std::span<const Elem> row(std::size_t i) const {
    return {entries_.data() + i * dim_, dim_};
  }
  const std::vector<Elem>& entries() const { return entries_; }

  bool operator==(const Matrix& o) const {
    return dim_ == o.dim_ && *field_ == *o.field_ && entries_ == o.entries_;
  }
  bool is_identity() const;
  bool is_zero() const;

 private:
  FieldPtr field_;
  std::size_t dim_;
  std::vector<Elem> entries_;
};

/// Throws DimensionMismatch unless a and b share field and dimension.
void check_compatible(const Matrix& a, const Matrix& b);

Matrix mat_mul(const Matrix& a, const Matrix& b);
Matrix mat_add(const Matrix& a, const Matrix& b);
Matrix mat_sub(const Matrix& a, const Matrix& b);
Matrix mat_scale(const Matrix& a, Elem s);
Matrix transpose(const Matrix& a);
Matrix mat_pow(const Matrix& a, std::uint64_t e);
std::optional<Matrix> inverse(const Matrix& a);
/// b^-1 a b.
Matrix conjugate(const Matrix& a, const Matrix& b, const Matrix& b_inv);

/// M v.
Vec mat_vec(const Matrix& m, std::span<const Elem> v);
/// v M (row vector times matrix).
Vec vec_mat(std::span<const Elem> v, const Matrix& m);

std::size_t rank(const Matrix& m);
/// Dimension of the right null space {v : M v = 0}.
std::size_t kernel_dim(const Matrix& m);
/// Basis of the right null space, in reduced form.
std::vector<Vec> kernel_basis(const Matrix& m);
/// d^V_g = dim ker(g - I).
std::size_t fixed_space_dim(const Matrix& g);
Elem determinant(const Matrix& m);

/// Row-echelon span of a set of vectors over GF(q). Supports incremental
/// insertion, membership and coordinate extraction; used by spin-up and the
/// Krylov minimal polynomial.
class EchelonBasis {
 public:
  EchelonBasis(FieldPtr field, std::size_t dim) : field_(std::move(field)), dim_(dim) {}

  std::size_t size() const { return rows_.size(); }
  std::size_t dim() const { return dim_; }
  /// Reduces v against the basis in place; returns the pivot of the
  /// remainder or dim() when v reduces to zero.
  std::size_t reduce(Vec& v) const;
  /// Inserts v if independent; returns true when the span grew.
  bool insert(Vec v);
  bool contains(Vec v) const;
  /// Basis vectors in insertion order, pivot entries 1. Row i vanishes at
  /// the pivots of rows before it but not necessarily at later pivots.
  const std::vector<Vec>& rows() const { return rows_; }
  /// Rows fully reduced (each vanishes at every other pivot), same order, so
  /// a vector's coordinates in this basis are its entries at the pivots.
  std::vector<Vec> reduced_rows() const;
  const std::vector<std::size_t>& pivots() const { return pivots_; }

 private:
  FieldPtr field_;
  std::size_t dim_;
  std::vector<Vec> rows_;
  std::vector<std::size_t> pivots_;
};

}  // namespace hurwitz::ffla
