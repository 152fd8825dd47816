#include "hurwitz/chevgrp/integral_rep.hpp"

#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

#include "hurwitz/data_paths.hpp"

namespace hurwitz::chevgrp {

using rootsys::axpy;
using rootsys::LieAlgebra;
using rootsys::RootSystem;

bool SparseIntMatrix::is_zero() const {
  for (const auto& c : cols) {
    if (!c.empty()) return false;
  }
  return true;
}

std::int64_t SparseIntMatrix::at(std::size_t i, std::size_t j) const {
  for (const auto& t : cols[j]) {
    if (t.index == i) return t.coeff;
  }
  return 0;
}

SparseIntMatrix mul(const SparseIntMatrix& a, const SparseIntMatrix& b) {
  SparseIntMatrix out = SparseIntMatrix::zero(a.dim);
  for (std::size_t j = 0; j < b.dim; ++j) {
    for (const auto& t : b.cols[j]) axpy(out.cols[j], t.coeff, a.cols[t.index]);
  }
  return out;
}

SparseIntMatrix add(const SparseIntMatrix& a, const SparseIntMatrix& b, std::int64_t c) {
  SparseIntMatrix out = a;
  for (std::size_t j = 0; j < a.dim; ++j) axpy(out.cols[j], c, b.cols[j]);
  return out;
}

namespace {

struct LevelModule {
  std::string ambient;       // simply-laced algebra containing the module
  std::vector<int> node_map; // source simple node -> ambient node
  int level_node;            // basis: ambient roots with this coefficient 1
};

// Minimal modules realised inside a larger simply-laced Lie algebra.
const LevelModule* level_module(const std::string& source) {
  static const std::map<std::string, LevelModule> table = {
      {"A1", {"A2", {0}, 1}},
      {"D4", {"D5", {1, 2, 3, 4}, 0}},
      {"E6", {"E7", {0, 1, 2, 3, 4, 5}, 6}},
      {"E7", {"E8", {0, 1, 2, 3, 4, 5, 6}, 7}},
  };
  auto it = table.find(source);
  return it == table.end() ? nullptr : &it->second;
}

SparseVec unit(std::size_t i) { return {{static_cast<std::uint32_t>(i), 1}}; }

// Adjoint action of x on the span of the given ambient basis indices.
SparseIntMatrix restricted_ad(const LieAlgebra& big, const SparseVec& x,
                              const std::vector<std::size_t>& basis,
                              const std::map<std::size_t, std::size_t>& position) {
  SparseIntMatrix m = SparseIntMatrix::zero(basis.size());
  for (std::size_t j = 0; j < basis.size(); ++j) {
    SparseVec image = big.bracket(x, unit(basis[j]));
    for (const auto& t : image) {
      auto it = position.find(t.index);
      if (it == position.end()) throw std::logic_error("level module is not invariant");
      axpy(m.cols[j], t.coeff, unit(it->second));
    }
  }
  return m;
}

// Element of the source algebra (simply laced, or the embedding of a folded
// basis vector) rewritten in the ambient basis of the level module.
SparseVec lift(const RootSystem& src, const LieAlgebra& big, const LevelModule& lm,
               const SparseVec& x) {
  SparseVec out;
  const std::size_t r = static_cast<std::size_t>(src.rank());
  for (const auto& t : x) {
    if (t.index < r) {
      axpy(out, t.coeff, unit(big.h(lm.node_map[t.index])));
    } else {
      IntVec coeffs(big.rank(), 0);
      const IntVec& beta = src.root(t.index - r);
      for (std::size_t i = 0; i < r; ++i) coeffs[lm.node_map[i]] = beta[i];
      axpy(out, t.coeff, unit(big.e(static_cast<std::size_t>(big.root_system().index_of(coeffs)))));
    }
  }
  return out;
}

void finish(IntegralRep& rep) {
  const LieAlgebra& g = *rep.algebra;
  const std::size_t r = g.rank();
  rep.weights.assign(rep.dim, IntVec(r, 0));
  for (std::size_t i = 0; i < r; ++i) {
    const SparseIntMatrix& h = rep.action[g.h(i)];
    for (std::size_t j = 0; j < rep.dim; ++j) {
      for (const auto& t : h.cols[j]) {
        if (t.index != j) throw std::logic_error("Cartan element is not diagonal");
        rep.weights[j][i] = static_cast<int>(t.coeff);
      }
    }
  }
  rep.divided.resize(g.root_system().size());
  for (std::size_t a = 0; a < g.root_system().size(); ++a) {
    const SparseIntMatrix& e = rep.action[g.e(a)];
    std::vector<SparseIntMatrix>& dp = rep.divided[a];
    dp.push_back(e);
    for (std::int64_t k = 2;; ++k) {
      SparseIntMatrix next = mul(e, dp.back());
      if (next.is_zero()) break;
      for (auto& col : next.cols) {
        for (auto& t : col) {
          if (t.coeff % k != 0) {
            throw DenominatorFailure("divided power e^" + std::to_string(k) + "/" +
                                     std::to_string(k) + "! is not integral");
          }
          t.coeff /= k;
        }
      }
      dp.push_back(std::move(next));
      if (k > 8) throw std::logic_error("root element is not nilpotent");
    }
  }
  rep.basis_hash = fnv1a64(rep.basis_description);
}

// Invariant functional f (f . x = 0 for every generator action), supported
// on zero-weight vectors; then the action on ker f in the basis
// e_j - f_j f_k e_k (j != k) for a pivot with f_k = +-1.
void restrict_to_kernel(IntegralRep& rep) {
  std::vector<std::size_t> zero;
  for (std::size_t j = 0; j < rep.dim; ++j) {
    if (std::all_of(rep.weights[j].begin(), rep.weights[j].end(), [](int w) { return w == 0; })) {
      zero.push_back(j);
    }
  }
  // Equations: for each action matrix x and column c, sum_z f_z x[z][c] = 0.
  std::vector<std::vector<std::int64_t>> eqs;
  for (const auto& x : rep.action) {
    for (std::size_t c = 0; c < rep.dim; ++c) {
      std::vector<std::int64_t> row(zero.size());
      bool nonzero = false;
      for (std::size_t z = 0; z < zero.size(); ++z) {
        row[z] = x.at(zero[z], c);
        nonzero |= row[z] != 0;
      }
      if (nonzero) eqs.push_back(row);
    }
  }
  // Integer row reduction to find the one-dimensional solution space.
  const std::size_t nz = zero.size();
  std::vector<std::size_t> pivcol;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < nz && rank < eqs.size(); ++c) {
    std::size_t p = rank;
    while (p < eqs.size() && eqs[p][c] == 0) ++p;
    if (p == eqs.size()) continue;
    std::swap(eqs[p], eqs[rank]);
    for (std::size_t i = 0; i < eqs.size(); ++i) {
      if (i == rank || eqs[i][c] == 0) continue;
      const std::int64_t a = eqs[rank][c], b = eqs[i][c];
      std::int64_t g = 0;
      for (std::size_t k = 0; k < nz; ++k) {
        eqs[i][k] = a * eqs[i][k] - b * eqs[rank][k];
        g = std::gcd(g, eqs[i][k]);
      }
      if (g > 1) {
        for (auto& v : eqs[i]) v /= g;
      }
    }
    pivcol.push_back(c);
    ++rank;
  }
  if (nz - rank != 1) throw std::logic_error("invariant functional is not unique");
  std::size_t free_col = 0;
  while (std::find(pivcol.begin(), pivcol.end(), free_col) != pivcol.end()) ++free_col;
  // f_free = L (common multiple), pivots solved from their rows.
  std::int64_t L = 1;
  for (std::size_t i = 0; i < rank; ++i) L = std::lcm(L, std::abs(eqs[i][pivcol[i]]));
  std::vector<std::int64_t> fz(nz, 0);
  fz[free_col] = L;
  for (std::size_t i = 0; i < rank; ++i) {
    fz[pivcol[i]] = -eqs[i][free_col] * L / eqs[i][pivcol[i]];
  }
  std::int64_t g = 0;
  for (auto v : fz) g = std::gcd(g, v);
  for (auto& v : fz) v /= g;
  std::size_t k = rep.dim;
  std::vector<std::int64_t> f(rep.dim, 0);
  for (std::size_t z = 0; z < nz; ++z) {
    f[zero[z]] = fz[z];
    if (k == rep.dim && std::abs(fz[z]) == 1) k = zero[z];
  }
  if (k == rep.dim) throw std::logic_error("invariant functional has no unit entry");

  const std::size_t n = rep.dim;
  std::vector<std::size_t> newpos(n, n);
  for (std::size_t j = 0, c = 0; j < n; ++j) {
    if (j != k) newpos[j] = c++;
  }
  auto restrict = [&](const SparseIntMatrix& x) {
    SparseIntMatrix out = SparseIntMatrix::zero(n - 1);
    for (std::size_t j = 0; j < n; ++j) {
      if (j == k) continue;
      SparseVec col = x.cols[j];
      axpy(col, -f[j] * f[k], x.cols[k]);
      for (const auto& t : col) {
        if (t.index != k) out.cols[newpos[j]].push_back({static_cast<std::uint32_t>(newpos[t.index]), t.coeff});
      }
    }
    return out;
  };
  for (auto& x : rep.action) x = restrict(x);
  rep.dim = n - 1;
  std::ostringstream os;
  os << rep.basis_description << " kernel-of";
  for (std::size_t j = 0; j < n; ++j) {
    if (f[j] != 0) os << ' ' << j << ':' << f[j];
  }
  os << " pivot " << k;
  rep.basis_description = os.str();
  // weights recomputed by finish()
}

IntegralRep make_adjoint(const std::string& family) {
  IntegralRep rep;
  rep.family = family;
  rep.kind = ModuleKind::L;
  rep.algebra = rootsys::build_lie_algebra(family);
  const LieAlgebra& g = *rep.algebra;
  rep.dim = g.dim();
  for (std::size_t a = 0; a < g.dim(); ++a) {
    SparseIntMatrix m = SparseIntMatrix::zero(g.dim());
    for (std::size_t b = 0; b < g.dim(); ++b) m.cols[b] = g.bracket(a, b);
    rep.action.push_back(std::move(m));
  }
  rep.basis_description = family + " L chevalley-basis h1..h" + std::to_string(g.rank()) +
                          " then roots by height";
  finish(rep);
  return rep;
}

IntegralRep make_minimal(const std::string& family) {
  IntegralRep rep;
  rep.family = family;
  rep.kind = ModuleKind::M;
  rep.algebra = rootsys::build_lie_algebra(family);
  const LieAlgebra& g = *rep.algebra;
  // Folded types act through their ambient algebra.
  const LieAlgebra& src = g.ambient() ? *g.ambient() : g;
  const std::string& src_label = src.root_system().label();
  const LevelModule* lm = level_module(src_label);
  if (!lm) throw rootsys::UnsupportedType("no minimal module for type " + family);
  auto big = rootsys::build_lie_algebra(lm->ambient);
  const RootSystem& brs = big->root_system();
  std::vector<std::size_t> basis;
  std::map<std::size_t, std::size_t> position;
  for (std::size_t b = 0; b < brs.size(); ++b) {
    if (brs.root(b)[lm->level_node] == 1) {
      position[big->e(b)] = basis.size();
      basis.push_back(big->e(b));
    }
  }
  rep.dim = basis.size();
  for (std::size_t a = 0; a < g.dim(); ++a) {
    SparseVec x = g.ambient() ? g.embedding(a) : unit(a);
    rep.action.push_back(restricted_ad(*big, lift(src.root_system(), *big, *lm, x), basis, position));
  }
  rep.basis_description = family + " M level-1 roots of " + lm->ambient + " at node " +
                          std::to_string(lm->level_node + 1);
  if (g.ambient()) {
    finish(rep);
    restrict_to_kernel(rep);
    rep.divided.clear();
  }
  finish(rep);
  return rep;
}

}  // namespace

const IntegralRep& build_integral_rep(const std::string& family, ModuleKind kind) {
  static std::mutex mu;
  static std::map<std::pair<std::string, ModuleKind>, std::unique_ptr<IntegralRep>> cache;
  std::lock_guard lock(mu);
  auto key = std::make_pair(family, base_kind(kind));
  if (auto it = cache.find(key); it != cache.end()) return *it->second;
  IntegralRep rep = base_kind(kind) == ModuleKind::L ? make_adjoint(family) : make_minimal(family);
  return *cache.emplace(key, std::make_unique<IntegralRep>(std::move(rep))).first->second;
}

}  // namespace hurwitz::chevgrp
