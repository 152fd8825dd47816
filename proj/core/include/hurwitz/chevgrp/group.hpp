#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "hurwitz/chevgrp/integral_rep.hpp"
#include "hurwitz/ffla/matrix.hpp"
#include "hurwitz/module_kind.hpp"

namespace hurwitz::chevgrp {

using ffla::Matrix;

class UnsupportedGroup : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A matrix group over GF(q) given by generators.
struct GroupCtx {
  std::string family;
  std::uint32_t q = 0;
  ModuleKind kind = ModuleKind::L;
  std::size_t dim = 0;
  ffla::FieldPtr field;
  std::vector<Matrix> generators;
  std::vector<std::string> generator_labels;
  /// Construction parameters, one line.
  std::string provenance;
  /// Hash of the underlying integral basis order.
  std::uint64_t basis_hash = 0;

  /// FNV-1a hash of the serialized group (header and generators).
  std::uint64_t hash() const;
};

/// x_alpha(t) = sum_k t^k e_alpha^k / k!, reduced mod p.
Matrix root_element(const IntegralRep& rep, const ffla::FieldPtr& field, std::size_t root,
                    ffla::Elem t);

/// n_alpha(t) = x_alpha(t) x_-alpha(-s/t) x_alpha(t), where s is the sign in
/// [e_alpha, e_-alpha] = s h_alpha.
Matrix weyl_element(const IntegralRep& rep, const ffla::FieldPtr& field, std::size_t root,
                    ffla::Elem t);

/// h_alpha(t) = n_alpha(t) n_alpha(1)^-1; acts on the weight-mu basis vector
/// by t^<mu, alpha^vee>.
Matrix torus_element(const IntegralRep& rep, const ffla::FieldPtr& field, std::size_t root,
                     ffla::Elem t);

/// Generators x_{+-alpha_i}(x^j) for the simple roots alpha_i and the
/// polynomial basis x^j of GF(q) over GF(p).
GroupCtx build_group(const IntegralRep& rep, std::uint32_t q);

/// Family labels: A1, G2, F4, E6, SE6 (same as E6), E7, SE7 (same as E7),
/// E8 (L only). Primed kinds are reduced with module_of.
GroupCtx build_group(const std::string& family, std::uint32_t q, ModuleKind kind);

/// Irreducible subquotient: M -> M' (F4, p = 3: 25), L -> L' (F4, p = 2: 26;
/// E6, p = 3: 77; E7, p = 2: 132). Throws UnsupportedGroup when the module
/// is already irreducible in this characteristic.
GroupCtx module_of(const GroupCtx& ctx, ModuleKind target);

/// Images of the Chevalley basis of the Lie algebra (reduced mod p) acting on
/// the module of ctx, carried through the same reduction as module_of. Throws
/// UnsupportedGroup when ctx does not match a fresh construction.
std::vector<Matrix> lie_image(const GroupCtx& ctx);

/// Dimension of the module after any reduction the characteristic forces.
std::size_t expected_dimension(const std::string& family, std::uint32_t p, ModuleKind kind);

/// Group cache files: text header then generator matrices as hex rows.
void save_group(const GroupCtx& ctx, const std::filesystem::path& path);
GroupCtx load_group(const std::filesystem::path& path);
std::string serialize_group(const GroupCtx& ctx);

/// build_group with a cache directory: loads `<dir>/<family>_<q>_<kind>.grp`
/// when present (and consistent), otherwise builds and writes it. An empty
/// directory disables caching.
GroupCtx cached_group(const std::string& family, std::uint32_t q, ModuleKind kind,
                      const std::filesystem::path& cache_dir);

/// Family label of the simply connected group actually constructed.
std::string construction_family(const std::string& family);

}  // namespace hurwitz::chevgrp
