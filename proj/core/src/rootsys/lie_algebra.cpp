#include "hurwitz/rootsys/lie_algebra.hpp"

#include <algorithm>
#include <mutex>
#include <stdexcept>

namespace hurwitz::rootsys {

void axpy(SparseVec& acc, std::int64_t c, const SparseVec& v) {
  if (c == 0 || v.empty()) return;
  SparseVec out;
  out.reserve(acc.size() + v.size());
  std::size_t i = 0, j = 0;
  while (i < acc.size() || j < v.size()) {
    if (j == v.size() || (i < acc.size() && acc[i].index < v[j].index)) {
      out.push_back(acc[i++]);
    } else if (i == acc.size() || v[j].index < acc[i].index) {
      out.push_back({v[j].index, c * v[j].coeff});
      ++j;
    } else {
      std::int64_t s = acc[i].coeff + c * v[j].coeff;
      if (s != 0) out.push_back({acc[i].index, s});
      ++i;
      ++j;
    }
  }
  acc = std::move(out);
}

int cocycle(const std::vector<IntVec>& cartan, const IntVec& a, const IntVec& b) {
  int s = 0;
  const std::size_t n = a.size();
  for (std::size_t i = 0; i < n; ++i) {
    s += a[i] * b[i];
    for (std::size_t j = i + 1; j < n; ++j) {
      if (cartan[i][j] == -1) s += a[i] * b[j];
    }
  }
  return (s % 2 == 0) ? 1 : -1;
}

const Folding& folding_for(const std::string& label) {
  static const Folding f4{"E6", {5, 1, 4, 3, 2, 0}, {{1}, {3}, {2, 4}, {0, 5}}};
  static const Folding g2{"D4", {2, 1, 3, 0}, {{0, 2, 3}, {1}}};
  if (label == "F4") return f4;
  if (label == "G2") return g2;
  throw UnsupportedType("no folding for type " + label);
}

LieAlgebra::LieAlgebra(RootSystem rs)
    : rs_(std::move(rs)), dim_(rs_.rank() + rs_.size()), table_(dim_ * dim_) {}

SparseVec LieAlgebra::bracket(const SparseVec& x, const SparseVec& y) const {
  SparseVec out;
  for (const auto& a : x) {
    for (const auto& b : y) axpy(out, a.coeff * b.coeff, bracket(a.index, b.index));
  }
  return out;
}

int LieAlgebra::structure_constant(std::size_t r, std::size_t s) const {
  const int t = rs_.sum_index(r, s);
  if (t < 0) return 0;
  for (const auto& term : bracket(e(r), e(s))) {
    if (term.index == e(t)) return static_cast<int>(term.coeff);
  }
  return 0;
}

IntVec LieAlgebra::coroot(std::size_t r) const {
  const IntVec& beta = rs_.root(r);
  const int norm = rs_.inner(beta, beta);
  IntVec out(rank());
  for (std::size_t i = 0; i < rank(); ++i) {
    IntVec ai(rank(), 0);
    ai[i] = 1;
    out[i] = beta[i] * rs_.inner(ai, ai) / norm;
  }
  return out;
}

int LieAlgebra::coroot_sign(std::size_t r) const {
  const SparseVec& v = bracket(e(r), e(rs_.negative(r)));
  const IntVec c = coroot(r);
  for (std::size_t i = 0; i < rank(); ++i) {
    if (c[i] == 0) continue;
    for (const auto& t : v) {
      if (t.index == i) return static_cast<int>(t.coeff / c[i]);
    }
  }
  throw std::logic_error("coroot_sign: bracket has no Cartan part");
}

void LieAlgebra::build_simply_laced() {
  const std::size_t r = rank();
  const std::size_t n = rs_.size();
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t b = 0; b < n; ++b) {
      const std::int64_t c = rs_.pairing(rs_.root(b), static_cast<int>(i));
      if (c == 0) continue;
      table_[h(i) * dim_ + e(b)] = {{static_cast<std::uint32_t>(e(b)), c}};
      table_[e(b) * dim_ + h(i)] = {{static_cast<std::uint32_t>(e(b)), -c}};
    }
  }
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      SparseVec& slot = table_[e(a) * dim_ + e(b)];
      if (b == rs_.negative(a)) {
        for (std::size_t i = 0; i < r; ++i) {
          if (rs_.root(a)[i] != 0) {
            slot.push_back({static_cast<std::uint32_t>(h(i)), -rs_.root(a)[i]});
          }
        }
      } else if (int s = rs_.sum_index(a, b); s >= 0) {
        slot = {{static_cast<std::uint32_t>(e(s)),
                 cocycle(rs_.cartan(), rs_.root(a), rs_.root(b))}};
      }
    }
  }
}

void LieAlgebra::build_folded(std::shared_ptr<const LieAlgebra> ambient,
                              const std::vector<int>& node_perm,
                              const std::vector<std::vector<int>>& node_orbits) {
  ambient_ = std::move(ambient);
  const LieAlgebra& big = *ambient_;
  const RootSystem& brs = big.root_system();
  const std::size_t br = big.rank();
  const std::size_t bn = brs.size();

  auto permute = [&](const IntVec& beta) {
    IntVec out(br);
    for (std::size_t i = 0; i < br; ++i) out[node_perm[i]] = beta[i];
    return out;
  };
  std::vector<std::size_t> pi(bn);
  for (std::size_t b = 0; b < bn; ++b) pi[b] = static_cast<std::size_t>(brs.index_of(permute(brs.root(b))));

  // sigma(e_b) = eta[b] e_{pi b}; eta on simple roots is 1, then by height.
  std::vector<int> eta(bn, 0);
  const std::size_t np = brs.num_positive();
  for (std::size_t b = 0; b < np; ++b) {
    if (b < br) {
      eta[b] = eta[brs.negative(b)] = 1;
      continue;
    }
    for (std::size_t i = 0; i < br; ++i) {
      IntVec rest = brs.root(b);
      rest[i] -= 1;
      const int ri = brs.index_of(rest);
      if (ri < 0) continue;
      const std::size_t pri = pi[i];
      eta[b] = cocycle(brs.cartan(), brs.root(i), rest) *
               cocycle(brs.cartan(), brs.root(pri), brs.root(pi[ri])) * eta[ri];
      break;
    }
    eta[brs.negative(b)] = eta[b];
  }
  auto sigma = [&](const SparseVec& v) {
    SparseVec out;
    for (const auto& t : v) {
      if (t.index < br) {
        axpy(out, t.coeff, {{static_cast<std::uint32_t>(node_perm[t.index]), 1}});
      } else {
        const std::size_t b = t.index - br;
        axpy(out, t.coeff * eta[b], {{static_cast<std::uint32_t>(big.e(pi[b])), 1}});
      }
    }
    return out;
  };
  for (std::size_t a = 0; a < big.dim(); ++a) {
    for (std::size_t b = 0; b < big.dim(); ++b) {
      SparseVec ua{{static_cast<std::uint32_t>(a), 1}}, ub{{static_cast<std::uint32_t>(b), 1}};
      if (sigma(big.bracket(a, b)) != big.bracket(sigma(ua), sigma(ub))) {
        throw std::logic_error("diagram automorphism is not a Lie algebra automorphism");
      }
    }
  }

  // Basis of the fixed subalgebra.
  const std::size_t r = rank();
  embedding_.assign(dim_, {});
  std::vector<std::uint32_t> lead(dim_);
  for (std::size_t i = 0; i < r; ++i) {
    for (int j : node_orbits[i]) axpy(embedding_[h(i)], 1, {{static_cast<std::uint32_t>(j), 1}});
    lead[h(i)] = static_cast<std::uint32_t>(*std::min_element(node_orbits[i].begin(), node_orbits[i].end()));
  }
  std::vector<int> found(rs_.size(), -1);
  for (std::size_t b = 0; b < bn; ++b) {
    IntVec small(r, 0);
    for (std::size_t i = 0; i < r; ++i) {
      for (int j : node_orbits[i]) small[i] += brs.root(b)[j];
    }
    const int s = rs_.index_of(small);
    if (s < 0) throw std::logic_error("folded root missing from target root system");
    if (found[s] >= 0) continue;
    found[s] = static_cast<int>(b);
    SparseVec v{{static_cast<std::uint32_t>(big.e(b)), 1}};
    SparseVec orbit_sum = v;
    for (SparseVec w = sigma(v); w != v; w = sigma(w)) axpy(orbit_sum, 1, w);
    if (sigma(orbit_sum) != orbit_sum) throw std::logic_error("orbit sum is not fixed");
    embedding_[e(s)] = orbit_sum;
    lead[e(s)] = static_cast<std::uint32_t>(big.e(b));
  }
  if (std::count(found.begin(), found.end(), -1) != 0) {
    throw std::logic_error("folding does not cover the target root system");
  }

  for (std::size_t a = 0; a < dim_; ++a) {
    for (std::size_t b = 0; b < dim_; ++b) {
      const SparseVec big_result = big.bracket(embedding_[a], embedding_[b]);
      SparseVec small_result, check;
      for (std::size_t k = 0; k < dim_; ++k) {
        for (const auto& t : big_result) {
          if (t.index == lead[k]) {
            small_result.push_back({static_cast<std::uint32_t>(k), t.coeff});
            axpy(check, t.coeff, embedding_[k]);
          }
        }
      }
      if (check != big_result) throw std::logic_error("fixed subalgebra is not closed");
      table_[a * dim_ + b] = std::move(small_result);
    }
  }
}

std::shared_ptr<const LieAlgebra> build_lie_algebra(const std::string& label) {
  static std::mutex mu;
  static std::map<std::string, std::shared_ptr<const LieAlgebra>> cache;
  {
    std::lock_guard lock(mu);
    if (auto it = cache.find(label); it != cache.end()) return it->second;
  }
  std::shared_ptr<LieAlgebra> g(new LieAlgebra(build_root_system(label)));
  if (g->rs_.simply_laced()) {
    g->build_simply_laced();
  } else {
    const Folding& f = folding_for(label);
    g->build_folded(build_lie_algebra(f.ambient), f.node_perm, f.orbits);
  }
  std::lock_guard lock(mu);
  return cache.emplace(label, std::move(g)).first->second;
}

std::map<std::pair<std::size_t, std::size_t>, int> structure_constants(const LieAlgebra& g) {
  std::map<std::pair<std::size_t, std::size_t>, int> out;
  const RootSystem& rs = g.root_system();
  for (std::size_t a = 0; a < rs.size(); ++a) {
    for (std::size_t b = 0; b < rs.size(); ++b) {
      if (rs.sum_index(a, b) >= 0) out[{a, b}] = g.structure_constant(a, b);
    }
  }
  return out;
}

}  // namespace hurwitz::rootsys
