#include "hurwitz/rootsys/torus.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <thread>

namespace hurwitz::rootsys {

namespace {

struct Pairings {
  // rows: positive roots then weights (expanded by multiplicity), one
  // residue contribution per coordinate
  std::vector<std::vector<std::uint8_t>> coeff;  // [coordinate][row]
  std::size_t num_roots = 0;
  std::size_t rows = 0;
};

Pairings pairings(const RootSystem& rs, const WeightSet* weights, int m) {
  Pairings p;
  std::vector<IntVec> rows;
  for (std::size_t r = 0; r < rs.num_positive(); ++r) rows.push_back(rs.dynkin_labels(rs.root(r)));
  p.num_roots = rows.size();
  if (weights) {
    for (std::size_t w = 0; w < weights->weights.size(); ++w) {
      for (int k = 0; k < weights->multiplicity[w]; ++k) rows.push_back(weights->weights[w]);
    }
  }
  p.rows = rows.size();
  p.coeff.assign(rs.rank(), std::vector<std::uint8_t>(p.rows));
  for (int j = 0; j < rs.rank(); ++j) {
    for (std::size_t x = 0; x < p.rows; ++x) {
      p.coeff[j][x] = static_cast<std::uint8_t>(((rows[x][j] % m) + m) % m);
    }
  }
  return p;
}

using Tally = std::map<std::pair<int, int>, std::uint64_t>;

// Enumerates all vectors whose last coordinate equals `top`.
void enumerate_slice(const Pairings& p, int rank, int m, int top, bool with_m, Tally& tally) {
  const std::size_t rows = p.rows;
  const int inner = rank - 1;
  // delta[j][x]: residue change when coordinate j increments and all lower
  // coordinates wrap from m-1 to 0.
  std::vector<std::vector<std::uint8_t>> delta(inner, std::vector<std::uint8_t>(rows));
  for (int j = 0; j < inner; ++j) {
    for (std::size_t x = 0; x < rows; ++x) {
      int s = 0;
      for (int i = 0; i <= j; ++i) s += p.coeff[i][x];
      delta[j][x] = static_cast<std::uint8_t>(s % m);
    }
  }
  std::vector<std::uint8_t> res(rows);
  for (std::size_t x = 0; x < rows; ++x) {
    res[x] = static_cast<std::uint8_t>((p.coeff[rank - 1][x] * top) % m);
  }
  std::vector<int> digits(inner, 0);
  std::vector<std::uint64_t> counts;  // flat [dM+1][dL] accumulator
  const int width = rank + 2 * static_cast<int>(p.num_roots) + 1;
  counts.assign(static_cast<std::size_t>(rows - p.num_roots + 2) * width, 0);
  const std::uint8_t mm = static_cast<std::uint8_t>(m);
  while (true) {
    int zr = 0, zw = 0;
    for (std::size_t x = 0; x < p.num_roots; ++x) zr += (res[x] == 0);
    for (std::size_t x = p.num_roots; x < rows; ++x) zw += (res[x] == 0);
    const int dL = rank + 2 * zr;
    const int dM = with_m ? zw : -1;
    ++counts[static_cast<std::size_t>(dM + 1) * width + dL];

    int j = 0;
    while (j < inner && digits[j] == m - 1) {
      digits[j] = 0;
      ++j;
    }
    if (j == inner) break;
    ++digits[j];
    const std::uint8_t* d = delta[j].data();
    std::uint8_t* r = res.data();
    for (std::size_t x = 0; x < rows; ++x) {
      std::uint8_t s = static_cast<std::uint8_t>(r[x] + d[x]);
      r[x] = s >= mm ? static_cast<std::uint8_t>(s - mm) : s;
    }
  }
  for (std::size_t k = 0; k < counts.size(); ++k) {
    if (counts[k] == 0) continue;
    const int dM = static_cast<int>(k / width) - 1;
    const int dL = static_cast<int>(k % width);
    tally[{dM, dL}] += counts[k];
  }
}

}  // namespace

bool TorusHistogram::attains(int dM, int dL) const {
  return std::any_of(entries.begin(), entries.end(),
                     [&](const TorusEntry& e) { return e.dM == dM && e.dL == dL; });
}

std::pair<int, int> torus_vector_dims(const RootSystem& rs, const WeightSet* weights, int m,
                                      const IntVec& v) {
  auto residue = [&](const IntVec& lam) {
    long s = 0;
    for (int j = 0; j < rs.rank(); ++j) s += static_cast<long>(lam[j]) * v[j];
    return ((s % m) + m) % m;
  };
  int dL = rs.rank();
  for (const auto& r : rs.roots()) dL += residue(rs.dynkin_labels(r)) == 0;
  int dM = -1;
  if (weights) {
    dM = 0;
    for (std::size_t w = 0; w < weights->weights.size(); ++w) {
      if (residue(weights->weights[w]) == 0) dM += weights->multiplicity[w];
    }
  }
  return {dM, dL};
}

IntVec reflect_coweight(const RootSystem& rs, const IntVec& v, int i, int m) {
  IntVec out = v;
  long s = 0;
  for (int j = 0; j < rs.rank(); ++j) s += static_cast<long>(rs.cartan()[i][j]) * v[j];
  out[i] = static_cast<int>((((v[i] - s) % m) + m) % m);
  return out;
}

TorusHistogram torus_fixed_dims(const RootSystem& rs, const WeightSet* weights, int m,
                                const TorusOptions& opts) {
  if (m < 2 || m > 255) throw std::invalid_argument("torus_fixed_dims: m out of range");
  std::uint64_t total = 1;
  for (int j = 0; j < rs.rank(); ++j) {
    total *= static_cast<std::uint64_t>(m);
    if (total > opts.budget) {
      throw EnumerationBudgetExceeded("torus enumeration of " + std::to_string(m) + "^" +
                                      std::to_string(rs.rank()) + " vectors exceeds the budget");
    }
  }
  const Pairings p = pairings(rs, weights, m);
  const unsigned workers = std::max(1u, std::min<unsigned>(opts.workers, static_cast<unsigned>(m)));
  std::vector<Tally> tallies(workers);
  auto run = [&](unsigned w) {
    for (int top = static_cast<int>(w); top < m; top += static_cast<int>(workers)) {
      enumerate_slice(p, rs.rank(), m, top, weights != nullptr, tallies[w]);
    }
  };
  if (workers == 1) {
    run(0);
  } else {
    std::vector<std::thread> threads;
    for (unsigned w = 0; w < workers; ++w) threads.emplace_back(run, w);
    for (auto& t : threads) t.join();
  }
  Tally merged;
  for (const auto& t : tallies) {
    for (const auto& [k, c] : t) merged[k] += c;
  }

  TorusHistogram h;
  h.family = rs.label();
  h.m = m;
  h.dim_L = rs.rank() + static_cast<int>(rs.size());
  h.dim_M = weights ? weights->dimension() : -1;
  h.total = total;
  const auto zero = torus_vector_dims(rs, weights, m, IntVec(rs.rank(), 0));
  h.min_dL = h.dim_L;
  h.min_dM = weights ? h.dim_M : -1;
  for (const auto& [k, c] : merged) {
    h.entries.push_back({k.first, k.second, c});
    const std::uint64_t nonzero = c - (k == zero ? 1 : 0);
    if (nonzero == 0) continue;
    h.min_dL = std::min(h.min_dL, k.second);
    if (weights) h.min_dM = std::min(h.min_dM, k.first);
  }
  std::sort(h.entries.begin(), h.entries.end(), [](const TorusEntry& a, const TorusEntry& b) {
    return a.dL != b.dL ? a.dL < b.dL : a.dM < b.dM;
  });
  return h;
}

std::string render_histogram(const TorusHistogram& h) {
  std::ostringstream os;
  os << "# family " << h.family << " order " << h.m << " vectors " << h.total << "\n";
  os << "# dim M " << (h.dim_M < 0 ? std::string("-") : std::to_string(h.dim_M)) << " dim L "
     << h.dim_L << "\n";
  os << "# min nonzero dM " << (h.min_dM < 0 ? std::string("-") : std::to_string(h.min_dM))
     << " dL " << h.min_dL << "\n";
  os << "# count dM dL\n";
  for (const auto& e : h.entries) {
    os << e.count << ' ' << (e.dM < 0 ? std::string("-") : std::to_string(e.dM)) << ' ' << e.dL
       << "\n";
  }
  return os.str();
}

}  // namespace hurwitz::rootsys
