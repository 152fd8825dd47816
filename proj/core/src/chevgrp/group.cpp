#include "hurwitz/chevgrp/group.hpp"

#include <fstream>
#include <optional>
#include <random>
#include <sstream>

#include "hurwitz/data_paths.hpp"
#include "hurwitz/ffla/matrix_io.hpp"
#include "hurwitz/meataxe/meataxe.hpp"

namespace hurwitz::chevgrp {

using ffla::Elem;
using ffla::Field;
using ffla::FieldPtr;

namespace {

Elem reduce(const Field& F, std::int64_t c) { return F.from_int(c); }

std::string kind_tag(ModuleKind k) {
  switch (k) {
    case ModuleKind::M: return "M";
    case ModuleKind::Mprime: return "Mp";
    case ModuleKind::L: return "L";
    case ModuleKind::Lprime: return "Lp";
  }
  return "?";
}

}  // namespace

std::string construction_family(const std::string& family) {
  if (family == "SE6") return "E6";
  if (family == "SE7") return "E7";
  return family;
}

Matrix root_element(const IntegralRep& rep, const FieldPtr& field, std::size_t root, Elem t) {
  const Field& F = *field;
  const std::size_t n = rep.dim;
  std::vector<Elem> e(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) e[i * n + i] = 1;
  Elem tk = 1;
  for (const auto& dp : rep.divided[root]) {
    tk = F.mul(tk, t);
    if (tk == 0) break;
    for (std::size_t j = 0; j < n; ++j) {
      for (const auto& term : dp.cols[j]) {
        const Elem c = reduce(F, term.coeff);
        if (c == 0) continue;
        Elem& slot = e[term.index * n + j];
        slot = F.add(slot, F.mul(c, tk));
      }
    }
  }
  return Matrix(field, n, std::move(e));
}

Matrix weyl_element(const IntegralRep& rep, const FieldPtr& field, std::size_t root, Elem t) {
  const Field& F = *field;
  const auto& g = *rep.algebra;
  const int s = g.coroot_sign(root);
  const Elem u = F.neg(F.mul(F.from_int(s), F.inv(t)));
  const Matrix xa = root_element(rep, field, root, t);
  const Matrix xb = root_element(rep, field, g.root_system().negative(root), u);
  return ffla::mat_mul(ffla::mat_mul(xa, xb), xa);
}

Matrix torus_element(const IntegralRep& rep, const FieldPtr& field, std::size_t root, Elem t) {
  const Matrix n1 = weyl_element(rep, field, root, 1);
  return ffla::mat_mul(weyl_element(rep, field, root, t), *ffla::inverse(n1));
}

GroupCtx build_group(const IntegralRep& rep, std::uint32_t q) {
  GroupCtx ctx;
  ctx.family = rep.family;
  ctx.q = q;
  ctx.kind = rep.kind;
  ctx.dim = rep.dim;
  ctx.field = Field::make_order(q);
  ctx.basis_hash = rep.basis_hash;
  const auto& rs = rep.root_system();
  for (int i = 0; i < rs.rank(); ++i) {
    for (int sign : {1, -1}) {
      const std::size_t root = sign > 0 ? static_cast<std::size_t>(i) : rs.negative(i);
      for (std::uint32_t j = 0; j < ctx.field->n(); ++j) {
        ctx.generators.push_back(root_element(rep, ctx.field, root, ctx.field->basis(j)));
        ctx.generator_labels.push_back(std::string("x") + (sign > 0 ? "+" : "-") +
                                       std::to_string(i + 1) + "(x^" + std::to_string(j) + ")");
      }
    }
  }
  ctx.provenance = "chevalley " + rep.family + " " + to_string(rep.kind) + " q=" +
                   std::to_string(q) + " modulus " + ctx.field->modulus_line() + " basis " +
                   hex64(rep.basis_hash);
  return ctx;
}

std::size_t expected_dimension(const std::string& family, std::uint32_t p, ModuleKind kind) {
  const std::string f = construction_family(family);
  const bool minimal = base_kind(kind) == ModuleKind::M;
  const bool primed = kind == ModuleKind::Mprime || kind == ModuleKind::Lprime;
  if ((f == "A1" || f == "G2") && !primed) {
    if (f == "A1") return minimal ? 2 : 3;
    return minimal ? 7 : 14;
  }
  if (f == "F4") {
    if (minimal) return primed && p == 3 ? 25 : 26;
    return primed && p == 2 ? 26 : 52;
  }
  if (f == "E6") return minimal ? 27 : (primed && p == 3 ? 77 : 78);
  if (f == "E7") return minimal ? 56 : (primed && p == 2 ? 132 : 133);
  if (f == "E8" && !minimal) return 248;
  throw UnsupportedGroup("unsupported family/module: " + family + " " + to_string(kind));
}

GroupCtx build_group(const std::string& family, std::uint32_t q, ModuleKind kind) {
  std::uint32_t p = 0, n = 0;
  if (!ffla::split_prime_power(q, p, n)) throw UnsupportedGroup("q must be a prime power");
  const std::string f = construction_family(family);
  expected_dimension(f, p, kind);
  GroupCtx ctx;
  try {
    ctx = build_group(build_integral_rep(f, base_kind(kind)), q);
  } catch (const rootsys::UnsupportedType& e) {
    throw UnsupportedGroup(e.what());
  }
  ctx.family = family;
  if (kind == ModuleKind::Mprime || kind == ModuleKind::Lprime) return module_of(ctx, kind);
  return ctx;
}

namespace {

Matrix reduce_matrix(const IntegralRep& rep, const FieldPtr& field, std::size_t b) {
  const Field& F = *field;
  const std::size_t n = rep.dim;
  std::vector<Elem> e(n * n, 0);
  for (std::size_t j = 0; j < n; ++j) {
    for (const auto& term : rep.action[b].cols[j]) e[term.index * n + j] = reduce(F, term.coeff);
  }
  return Matrix(field, n, std::move(e));
}

// find_factor with the passenger matrices carried through every split. The
// random stream is consumed exactly as find_factor does, so the generators
// agree with module_of.
std::optional<meataxe::ModuleAction> factor_with(const meataxe::ModuleAction& act,
                                                 std::size_t dim, std::mt19937_64& rng,
                                                 std::vector<Matrix>& passengers) {
  if (act.dim() < dim) return std::nullopt;
  auto r = meataxe::is_irreducible(act, rng, 200);
  if (r.verdict == meataxe::Verdict::Irreducible) {
    return act.dim() == dim ? std::optional<meataxe::ModuleAction>(act) : std::nullopt;
  }
  if (r.verdict == meataxe::Verdict::Inconclusive) return std::nullopt;
  const auto s = meataxe::split(act, r.subspace);
  const Matrix inv = *ffla::inverse(s.basis_change);
  const std::size_t k = s.sub.dim();
  std::vector<Matrix> moved, sub, quot;
  for (const auto& x : passengers) {
    moved.push_back(ffla::mat_mul(ffla::mat_mul(inv, x), s.basis_change));
    for (std::size_t i = k; i < act.dim(); ++i) {
      for (std::size_t j = 0; j < k; ++j) {
        if (moved.back().at(i, j) != 0) {
          throw UnsupportedGroup("Lie algebra does not preserve the group submodule");
        }
      }
    }
    sub.push_back(meataxe::leading_block(moved.back(), k));
    quot.push_back(meataxe::trailing_block(moved.back(), k));
  }
  if (auto f = factor_with(s.sub, dim, rng, sub)) {
    passengers = std::move(sub);
    return f;
  }
  if (auto f = factor_with(s.quotient, dim, rng, quot)) {
    passengers = std::move(quot);
    return f;
  }
  return std::nullopt;
}

GroupCtx reduce_module(const GroupCtx& ctx, ModuleKind target, std::vector<Matrix>* passengers) {
  const std::size_t want = expected_dimension(ctx.family, ctx.field->p(), target);
  if (base_kind(target) != ctx.kind || target == ctx.kind || want == ctx.dim) {
    throw UnsupportedGroup("module " + to_string(ctx.kind) + " of " + ctx.family + "(" +
                           std::to_string(ctx.q) + ") needs no reduction to " +
                           to_string(target));
  }
  std::mt19937_64 rng(0x6d657461);
  std::vector<Matrix> none;
  auto factor =
      factor_with(meataxe::ModuleAction(ctx.generators), want, rng, passengers ? *passengers : none);
  if (!factor) throw std::runtime_error("meataxe did not produce the expected composition factor");
  GroupCtx out = ctx;
  out.kind = target;
  out.dim = want;
  out.generators = factor->gens();
  out.provenance += " reduced " + to_string(ctx.kind) + "->" + to_string(target);
  return out;
}

}  // namespace

GroupCtx module_of(const GroupCtx& ctx, ModuleKind target) {
  return reduce_module(ctx, target, nullptr);
}

std::vector<Matrix> lie_image(const GroupCtx& ctx) {
  const std::string f = construction_family(ctx.family);
  const IntegralRep* rep = nullptr;
  try {
    rep = &build_integral_rep(f, base_kind(ctx.kind));
  } catch (const rootsys::UnsupportedType& e) {
    throw UnsupportedGroup(e.what());
  }
  GroupCtx base = build_group(*rep, ctx.q);
  base.family = ctx.family;
  std::vector<Matrix> lie;
  for (std::size_t b = 0; b < rep->action.size(); ++b) {
    lie.push_back(reduce_matrix(*rep, base.field, b));
  }
  if (ctx.kind != base.kind) base = reduce_module(base, ctx.kind, &lie);
  if (!(*base.field == *ctx.field) || base.generators != ctx.generators) {
    throw UnsupportedGroup("group was not produced by this construction");
  }
  return lie;
}

std::uint64_t GroupCtx::hash() const { return fnv1a64(serialize_group(*this)); }

std::string serialize_group(const GroupCtx& ctx) {
  std::ostringstream os;
  os << "hurwitz-group 1\n";
  os << "family " << ctx.family << "\n";
  os << "q " << ctx.q << "\n";
  os << "kind " << kind_tag(ctx.kind) << "\n";
  os << "modulus " << ctx.field->modulus_line() << "\n";
  os << "basis " << hex64(ctx.basis_hash) << "\n";
  os << "dim " << ctx.dim << "\n";
  os << "provenance " << ctx.provenance << "\n";
  os << "generators " << ctx.generators.size() << "\n";
  for (std::size_t i = 0; i < ctx.generators.size(); ++i) {
    os << "gen " << ctx.generator_labels[i] << "\n" << ffla::to_hex_rows(ctx.generators[i]);
  }
  return os.str();
}

void save_group(const GroupCtx& ctx, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << serialize_group(ctx);
}

GroupCtx load_group(const std::filesystem::path& path) {
  std::istringstream in(read_file(path));
  auto expect = [&](const std::string& key) {
    std::string line;
    if (!std::getline(in, line) || line.rfind(key + " ", 0) != 0) {
      throw std::runtime_error(path.string() + ": expected '" + key + "'");
    }
    return line.substr(key.size() + 1);
  };
  if (expect("hurwitz-group") != "1") throw std::runtime_error("unknown group cache version");
  GroupCtx ctx;
  ctx.family = expect("family");
  ctx.q = static_cast<std::uint32_t>(std::stoul(expect("q")));
  const std::string kind = expect("kind");
  if (kind == "M") ctx.kind = ModuleKind::M;
  else if (kind == "Mp") ctx.kind = ModuleKind::Mprime;
  else if (kind == "L") ctx.kind = ModuleKind::L;
  else if (kind == "Lp") ctx.kind = ModuleKind::Lprime;
  else throw std::runtime_error("bad module kind in group cache");
  const std::string modulus = expect("modulus");
  ctx.field = Field::make_order(ctx.q);
  if (modulus != ctx.field->modulus_line()) {
    throw std::runtime_error("group cache modulus differs from the bundled table");
  }
  ctx.basis_hash = std::stoull(expect("basis"), nullptr, 16);
  ctx.dim = std::stoul(expect("dim"));
  ctx.provenance = expect("provenance");
  const std::size_t count = std::stoul(expect("generators"));
  for (std::size_t i = 0; i < count; ++i) {
    ctx.generator_labels.push_back(expect("gen"));
    ctx.generators.push_back(ffla::read_hex_rows(in, ctx.field, ctx.dim));
  }
  return ctx;
}

GroupCtx cached_group(const std::string& family, std::uint32_t q, ModuleKind kind,
                      const std::filesystem::path& cache_dir) {
  if (cache_dir.empty()) return build_group(family, q, kind);
  const auto path = cache_dir / (family + "_" + std::to_string(q) + "_" + kind_tag(kind) + ".grp");
  if (std::filesystem::exists(path)) {
    try {
      GroupCtx ctx = load_group(path);
      const std::string f = construction_family(family);
      if (ctx.family == family && ctx.q == q && ctx.kind == kind &&
          ctx.basis_hash == build_integral_rep(f, base_kind(kind)).basis_hash) {
        return ctx;
      }
    } catch (const std::runtime_error&) {
      // stale or damaged cache entries are rebuilt
    }
  }
  GroupCtx ctx = build_group(family, q, kind);
  std::filesystem::create_directories(cache_dir);
  save_group(ctx, path);
  return ctx;
}

}  // namespace hurwitz::chevgrp
