#include "hurwitz/rootsys/root_system.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>

namespace hurwitz::rootsys {

namespace {

std::vector<IntVec> simply_laced_cartan(int rank, const std::vector<std::pair<int, int>>& edges) {
  std::vector<IntVec> c(rank, IntVec(rank, 0));
  for (int i = 0; i < rank; ++i) c[i][i] = 2;
  for (auto [a, b] : edges) {
    c[a - 1][b - 1] = -1;
    c[b - 1][a - 1] = -1;
  }
  return c;
}

IntVec simple_norms(const std::string& label, int rank) {
  if (label == "F4") return {4, 4, 2, 2};
  if (label == "G2") return {2, 6};
  return IntVec(rank, 2);
}

}  // namespace

std::vector<IntVec> cartan_matrix(const std::string& label) {
  if (label == "A1") return {{2}};
  if (label == "A2") return simply_laced_cartan(2, {{1, 2}});
  if (label == "G2") return {{2, -1}, {-3, 2}};
  if (label == "D4") return simply_laced_cartan(4, {{1, 2}, {2, 3}, {2, 4}});
  if (label == "D5") return simply_laced_cartan(5, {{1, 2}, {2, 3}, {3, 4}, {3, 5}});
  if (label == "F4") {
    return {{2, -1, 0, 0}, {-1, 2, -2, 0}, {0, -1, 2, -1}, {0, 0, -1, 2}};
  }
  if (label == "E6") return simply_laced_cartan(6, {{1, 3}, {3, 4}, {4, 5}, {5, 6}, {2, 4}});
  if (label == "E7") {
    return simply_laced_cartan(7, {{1, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 7}, {2, 4}});
  }
  if (label == "E8") {
    return simply_laced_cartan(8, {{1, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 7}, {7, 8}, {2, 4}});
  }
  throw UnsupportedType("unsupported root system type: " + label);
}

RootSystem build_root_system(const std::string& label) {
  RootSystem rs;
  rs.label_ = label;
  rs.cartan_ = cartan_matrix(label);
  rs.rank_ = static_cast<int>(rs.cartan_.size());
  rs.simple_norm_ = simple_norms(label, rs.rank_);
  rs.simply_laced_ = std::all_of(rs.simple_norm_.begin(), rs.simple_norm_.end(),
                                 [](int n) { return n == 2; });

  std::set<IntVec> seen;
  std::deque<IntVec> queue;
  for (int i = 0; i < rs.rank_; ++i) {
    IntVec e(rs.rank_, 0);
    e[i] = 1;
    seen.insert(e);
    queue.push_back(e);
  }
  while (!queue.empty()) {
    IntVec beta = queue.front();
    queue.pop_front();
    for (int i = 0; i < rs.rank_; ++i) {
      IntVec image = rs.reflect(beta, i);
      if (seen.insert(image).second) queue.push_back(image);
    }
  }
  std::vector<IntVec> positive;
  for (const auto& r : seen) {
    if (std::accumulate(r.begin(), r.end(), 0) > 0) positive.push_back(r);
  }
  std::sort(positive.begin(), positive.end(), [](const IntVec& a, const IntVec& b) {
    int ha = std::accumulate(a.begin(), a.end(), 0);
    int hb = std::accumulate(b.begin(), b.end(), 0);
    if (ha != hb) return ha < hb;
    return a > b;
  });
  rs.roots_ = positive;
  for (const auto& r : positive) {
    IntVec n(r.size());
    std::transform(r.begin(), r.end(), n.begin(), [](int c) { return -c; });
    rs.roots_.push_back(n);
  }
  const int max_norm = *std::max_element(rs.simple_norm_.begin(), rs.simple_norm_.end());
  for (std::size_t k = 0; k < rs.roots_.size(); ++k) {
    rs.index_[rs.roots_[k]] = static_cast<int>(k);
    rs.long_.push_back(rs.inner(rs.roots_[k], rs.roots_[k]) == max_norm);
  }
  return rs;
}

int RootSystem::height(std::size_t r) const {
  return std::accumulate(roots_[r].begin(), roots_[r].end(), 0);
}

int RootSystem::index_of(const IntVec& coeffs) const {
  auto it = index_.find(coeffs);
  return it == index_.end() ? -1 : it->second;
}

int RootSystem::sum_index(std::size_t a, std::size_t b) const {
  IntVec s(rank_);
  for (int i = 0; i < rank_; ++i) s[i] = roots_[a][i] + roots_[b][i];
  return index_of(s);
}

int RootSystem::pairing(const IntVec& beta, int i) const {
  int s = 0;
  for (int j = 0; j < rank_; ++j) s += beta[j] * cartan_[j][i];
  return s;
}

IntVec RootSystem::dynkin_labels(const IntVec& beta) const {
  IntVec out(rank_);
  for (int i = 0; i < rank_; ++i) out[i] = pairing(beta, i);
  return out;
}

int RootSystem::inner(const IntVec& a, const IntVec& b) const {
  int s = 0;
  for (int i = 0; i < rank_; ++i) {
    if (a[i] == 0) continue;
    for (int j = 0; j < rank_; ++j) s += a[i] * b[j] * cartan_[i][j] * simple_norm_[j] / 2;
  }
  return s;
}

int RootSystem::string_down(std::size_t alpha, std::size_t beta) const {
  IntVec cur = roots_[beta];
  int p = 0;
  while (true) {
    for (int i = 0; i < rank_; ++i) cur[i] -= roots_[alpha][i];
    if (index_of(cur) < 0) return p;
    ++p;
  }
}

IntVec RootSystem::reflect(const IntVec& beta, int i) const {
  IntVec out = beta;
  out[i] -= pairing(beta, i);
  return out;
}

int WeightSet::dimension() const {
  return std::accumulate(multiplicity.begin(), multiplicity.end(), 0);
}

std::vector<IntVec> weyl_orbit(const RootSystem& rs, const IntVec& dynkin) {
  std::set<IntVec> seen{dynkin};
  std::deque<IntVec> queue{dynkin};
  while (!queue.empty()) {
    IntVec w = queue.front();
    queue.pop_front();
    for (int i = 0; i < rs.rank(); ++i) {
      IntVec image = w;
      for (int j = 0; j < rs.rank(); ++j) image[j] -= w[i] * rs.cartan()[i][j];
      if (seen.insert(image).second) queue.push_back(image);
    }
  }
  return {seen.begin(), seen.end()};
}

WeightSet adjoint_weights(const RootSystem& rs) {
  WeightSet ws{ModuleKind::L, {}, {}};
  for (const auto& r : rs.roots()) {
    ws.weights.push_back(rs.dynkin_labels(r));
    ws.multiplicity.push_back(1);
  }
  ws.weights.push_back(IntVec(rs.rank(), 0));
  ws.multiplicity.push_back(rs.rank());
  return ws;
}

WeightSet minimal_weights(const RootSystem& rs) {
  WeightSet ws{ModuleKind::M, {}, {}};
  const std::string& t = rs.label();
  auto fundamental = [&](int i) {
    IntVec w(rs.rank(), 0);
    w[i - 1] = 1;
    return w;
  };
  int zero_mult = 0;
  IntVec top;
  if (t == "A1" || t == "A2" || t == "E6") {
    top = fundamental(1);
  } else if (t == "E7") {
    top = fundamental(7);
  } else if (t == "G2") {
    top = fundamental(1);
    zero_mult = 1;
  } else if (t == "F4") {
    top = fundamental(4);
    zero_mult = 2;
  } else {
    throw UnsupportedType("no minimal module for type " + t);
  }
  for (auto& w : weyl_orbit(rs, top)) {
    ws.weights.push_back(std::move(w));
    ws.multiplicity.push_back(1);
  }
  if (zero_mult > 0) {
    ws.weights.push_back(IntVec(rs.rank(), 0));
    ws.multiplicity.push_back(zero_mult);
  }
  return ws;
}

}  // namespace hurwitz::rootsys
