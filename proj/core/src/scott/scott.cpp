#include "hurwitz/scott/scott.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <mutex>
#include <set>
#include <sstream>

#include "hurwitz/rootsys/torus.hpp"

namespace hurwitz::scott {

using classdata::ClassTable;
using classdata::characteristic;

namespace {

constexpr int kOrders[3] = {2, 3, 7};
constexpr const char* kRoles[3] = {"x", "y", "z"};

bool has_complete_tables(const std::string& family) {
  return family == "F4" || family == "E6" || family == "SE6" || family == "2E6" ||
         family == "A1";
}

bool is_partial_family(const std::string& family) {
  return family == "E7" || family == "SE7" || family == "E8";
}

std::int64_t effective_q(const std::string& family, std::uint64_t q) {
  return family == "2E6" ? -static_cast<std::int64_t>(q) : static_cast<std::int64_t>(q);
}

std::vector<TripleType> enumerate(const std::string& family, std::uint64_t q, bool conditioned) {
  if (!has_complete_tables(family)) {
    throw IncompleteTables("no complete order-7 class data for " + family +
                           "; use verdict for bound-constrained class lists");
  }
  const ClassTable& t = ClassTable::bundled();
  std::vector<ClassRecord> lists[3];
  for (int i = 0; i < 3; ++i) {
    lists[i] = conditioned ? t.lookup(family, q, kOrders[i]) : t.candidates(family, q, kOrders[i]);
  }
  const auto modules = scott_modules(family, q);
  std::vector<TripleType> out;
  for (const auto& x : lists[0]) {
    for (const auto& y : lists[1]) {
      for (const auto& z : lists[2]) {
        if (!scott_check(x, y, z, modules)) continue;
        TripleType tt{family, "q=" + std::to_string(q), x.label, y.label, z.label, {}};
        for (const auto& m : modules) {
          int s = 0;
          for (const auto* r : {&x, &y, &z}) s += module_value(*r, m.kind).value.value_or(0);
          tt.sums.push_back({m.kind, s, m.dim});
        }
        out.push_back(std::move(tt));
      }
    }
  }
  return out;
}

std::uint64_t powmod(std::uint64_t b, unsigned e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  b %= m;
  while (e--) r = r * b % m;
  return r;
}

// "3 divides n"-style description of the n for which a condition holds at p^n.
std::string describe_exponents(const classdata::Condition& c, std::uint64_t p, bool twisted) {
  auto holds_at = [&](unsigned n) {
    const auto m = static_cast<std::uint64_t>(c.modulus);
    std::int64_t r = static_cast<std::int64_t>(powmod(p, n, m));
    if (twisted) r = -r;
    return c.holds(r);
  };
  for (unsigned d = 1; d <= 12; ++d) {
    bool matches = true;
    for (unsigned n = 1; n <= 12 && matches; ++n) matches = holds_at(n) == (n % d == 0);
    if (matches) {
      return d == 1 ? "for every n" : "when " + std::to_string(d) + " divides n";
    }
  }
  bool ever = false;
  for (unsigned n = 1; n <= 12; ++n) ever = ever || holds_at(n);
  return ever ? "for some n only" : "for no n";
}

std::string scott_failure_reason(const std::string& family, std::uint64_t q) {
  const ClassTable& t = ClassTable::bundled();
  std::vector<ClassRecord> lists[3];
  for (int i = 0; i < 3; ++i) lists[i] = t.lookup(family, q, kOrders[i]);
  for (const auto& l : lists) {
    if (l.empty()) return "no classes of the required orders exist at q = " + std::to_string(q);
  }
  const auto modules = scott_modules(family, q);
  // Find a module that on its own removes every triple surviving the others,
  // trying the minimal module first.
  for (std::size_t k = modules.size(); k-- > 0;) {
    std::vector<ModuleSpec> others;
    for (std::size_t j = 0; j < modules.size(); ++j) {
      if (j != k) others.push_back(modules[j]);
    }
    const ModuleSpec& v = modules[k];
    int min_xy = std::numeric_limits<int>::max(), min_z = std::numeric_limits<int>::max();
    bool survivors = false;
    for (const auto& x : lists[0]) {
      for (const auto& y : lists[1]) {
        for (const auto& z : lists[2]) {
          if (!scott_check(x, y, z, others)) continue;
          const auto dx = module_value(x, v.kind).value, dy = module_value(y, v.kind).value,
                     dz = module_value(z, v.kind).value;
          if (!dx || !dy || !dz) continue;
          survivors = true;
          min_xy = std::min(min_xy, *dx + *dy);
          min_z = std::min(min_z, *dz);
        }
      }
    }
    if (!survivors) continue;
    const int bound = v.dim - min_xy;
    if (min_z > bound) {
      const std::string mod = to_string(v.kind);
      return "no admissible triples: " + mod + " forces d_z^" + mod + " <= " +
             std::to_string(bound) + ", but d_z^" + mod + " >= " + std::to_string(bound + 1) +
             " for every remaining class of order 7";
    }
  }
  return "no triple of classes satisfies Scott's inequality on every module";
}

std::string missing_class_reason(const std::string& family, std::uint64_t q,
                                 const std::vector<TripleType>& unconditioned) {
  const ClassTable& t = ClassTable::bundled();
  const std::int64_t qq = effective_q(family, q);
  std::vector<std::string> parts;
  std::set<std::string> seen;
  std::vector<std::string> labels;
  for (const auto& tt : unconditioned) {
    const std::string* names[3] = {&tt.x, &tt.y, &tt.z};
    for (int i = 0; i < 3; ++i) {
      auto r = t.find(family, q, kOrders[i], *names[i]);
      if (!r || r->condition.holds(qq) || !seen.insert(r->label).second) continue;
      labels.push_back(r->label);
      const auto& c = r->condition;
      const std::string sign = c.kind == classdata::Condition::Kind::OneMod ? "1" : "+-1";
      parts.push_back(r->label + " exists only when " + (family == "2E6" ? "-q" : "q") +
                      " = " + sign + " mod " + std::to_string(c.modulus) + ", that is " +
                      describe_exponents(r->condition, characteristic(q), family == "2E6") +
                      " for q = " + std::to_string(characteristic(q)) + "^n");
    }
  }
  std::string names;
  for (std::size_t i = 0; i < labels.size(); ++i) names += (i ? ", " : "") + labels[i];
  std::string reason = "not a Hurwitz group (no " + names + " class at q = " +
                       std::to_string(q) + "): ";
  for (std::size_t i = 0; i < parts.size(); ++i) reason += (i ? "; " : "") + parts[i];
  return reason;
}

const rootsys::TorusHistogram& order7_torus(const std::string& base) {
  static std::mutex mu;
  static std::map<std::string, rootsys::TorusHistogram> cache;
  std::lock_guard lock(mu);
  if (auto it = cache.find(base); it != cache.end()) return it->second;
  const auto rs = rootsys::build_root_system(base);
  std::optional<rootsys::WeightSet> w;
  if (base != "E8") w = rootsys::minimal_weights(rs);
  return cache[base] = rootsys::torus_fixed_dims(rs, w ? &*w : nullptr, 7);
}

struct Candidate {
  ClassCandidate shown;
  ClassRecord record;  // dims used by the filter
};

std::vector<Candidate> partial_candidates(const std::string& family, std::uint64_t q, int role) {
  const ClassTable& t = ClassTable::bundled();
  std::vector<Candidate> out;
  for (const auto& r : t.lookup(family, q, kOrders[role])) {
    out.push_back({{r.label, r.dM, r.dL.value_or(0), true}, r});
  }
  if (role == 2 && characteristic(q) != 7) {
    const std::string base = family == "SE7" ? "E7" : family;
    const auto& h = order7_torus(base);
    for (const auto& e : h.entries) {
      if (e.dL == h.dim_L) continue;  // identity
      ClassRecord r;
      r.family = family;
      r.order = 7;
      if (e.dM >= 0) r.dM = e.dM;
      r.dL = e.dL;
      r.label = "torus " + (e.dM >= 0 ? std::to_string(e.dM) : std::string("-")) + "/" +
                std::to_string(e.dL);
      out.push_back({{r.label, r.dM, e.dL, false}, r});
    }
  }
  return out;
}

// One pass of bound propagation on a module; returns the per-role upper
// bounds and whether anything was removed.
bool propagate(std::vector<Candidate> (&c)[3], const ModuleSpec& m, int (&upper)[3]) {
  int mins[3];
  for (int i = 0; i < 3; ++i) {
    mins[i] = std::numeric_limits<int>::max();
    for (const auto& cand : c[i]) {
      if (auto v = module_value(cand.record, m.kind).value) mins[i] = std::min(mins[i], *v);
    }
    if (mins[i] == std::numeric_limits<int>::max()) mins[i] = 0;
  }
  bool changed = false;
  for (int i = 0; i < 3; ++i) {
    upper[i] = m.dim - mins[(i + 1) % 3] - mins[(i + 2) % 3];
    const auto before = c[i].size();
    std::erase_if(c[i], [&](const Candidate& cand) {
      auto v = module_value(cand.record, m.kind).value;
      return v && *v > upper[i];
    });
    changed = changed || c[i].size() != before;
  }
  return changed;
}

Verdict partial_verdict(const std::string& family, std::uint64_t q) {
  Verdict v;
  v.kind = Verdict::Kind::Partial;
  v.family = family;
  v.q = q;
  std::vector<Candidate> c[3];
  for (int i = 0; i < 3; ++i) c[i] = partial_candidates(family, q, i);
  const auto modules = scott_modules(family, q);
  int upper_L[3] = {0, 0, 0};
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& m : modules) {
      int upper[3];
      changed = propagate(c, m, upper) || changed;
      if (m.kind == ModuleKind::L) std::copy(upper, upper + 3, upper_L);
    }
  }
  RoleBounds* roles[3] = {&v.x, &v.y, &v.z};
  for (int i = 0; i < 3; ++i) {
    roles[i]->max_dL = upper_L[i];
    for (const auto& cand : c[i]) roles[i]->classes.push_back(cand.shown);
  }
  if (v.x.classes.empty() || v.y.classes.empty() || v.z.classes.empty()) {
    v.kind = Verdict::Kind::Impossible;
    v.reason = "the reduction bounds leave no candidate class for some element";
  } else {
    v.reason = "tables are partial: bound-constrained class lists only";
  }
  return v;
}

std::vector<std::uint64_t> case_qs(std::uint64_t p) {
  std::vector<std::uint64_t> primes = p == 0 ? std::vector<std::uint64_t>{5, 11, 13}
                                             : std::vector<std::uint64_t>{p};
  std::vector<std::uint64_t> out;
  for (auto pr : primes) {
    std::uint64_t q = 1;
    for (int n = 1; n <= 6; ++n) out.push_back(q *= pr);
  }
  return out;
}

std::string exponent_label(std::uint64_t p, const std::set<int>& ns) {
  const std::string base = std::to_string(p);
  for (int d = 1; d <= 6; ++d) {
    bool match = true;
    for (int n = 1; n <= 6 && match; ++n) match = (ns.count(n) > 0) == (n % d == 0);
    if (match) return d == 1 ? base + "^n" : base + "^{" + std::to_string(d) + "n}";
  }
  std::string s = base + "^n (n in";
  for (int n : ns) s += " " + std::to_string(n);
  return s + ")";
}

int record_index(const std::string& family, std::uint64_t q, int order, const std::string& label) {
  const auto list = ClassTable::bundled().candidates(family, q, order);
  for (std::size_t i = 0; i < list.size(); ++i) {
    if (list[i].label == label) return static_cast<int>(i);
  }
  return static_cast<int>(list.size());
}

}  // namespace

ModuleValue module_value(const ClassRecord& r, ModuleKind kind) {
  switch (kind) {
    case ModuleKind::M: return {r.dM, true};
    case ModuleKind::Mprime:
      if (auto e = r.d_mprime()) return {e, true};
      if (r.dM) return {*r.dM - 1, false};
      return {};
    case ModuleKind::L: return {r.dL, true};
    case ModuleKind::Lprime: return {};
  }
  return {};
}

bool scott_check(const ClassRecord& x, const ClassRecord& y, const ClassRecord& z,
                 const std::vector<ModuleSpec>& modules, std::vector<ModuleKind>* skipped) {
  if (x.family != y.family || y.family != z.family) {
    throw FamilyMismatch("scott_check: records from different families");
  }
  for (const auto& m : modules) {
    const auto a = module_value(x, m.kind).value, b = module_value(y, m.kind).value,
               c = module_value(z, m.kind).value;
    if (!a || !b || !c) {
      if (skipped) skipped->push_back(m.kind);
      continue;
    }
    if (*a + *b + *c > m.dim) return false;
  }
  return true;
}

std::vector<ModuleSpec> scott_modules(const std::string& family, std::uint64_t q) {
  const std::uint64_t p = characteristic(q);
  if (family == "A1") return {{ModuleKind::L, 3}};
  if (family == "F4") {
    return {{ModuleKind::L, 52},
            p == 3 ? ModuleSpec{ModuleKind::Mprime, 25} : ModuleSpec{ModuleKind::M, 26}};
  }
  if (family == "E6" || family == "SE6" || family == "2E6") {
    std::vector<ModuleSpec> out{{ModuleKind::L, 78}};
    bool minimal = p != 2;
    if (family == "E6") minimal = minimal && (q - 1) % 3 != 0;
    if (family == "2E6") minimal = minimal && (q + 1) % 3 != 0;
    if (minimal) out.push_back({ModuleKind::M, 27});
    return out;
  }
  if (family == "E7" || family == "SE7") {
    std::vector<ModuleSpec> out{{ModuleKind::L, 133}};
    if (family == "SE7" || p == 2) out.push_back({ModuleKind::M, 56});
    return out;
  }
  if (family == "E8") return {{ModuleKind::L, 248}};
  throw classdata::UnsupportedFamily("no module data for family " + family);
}

std::vector<TripleType> enumerate_admissible(const std::string& family, std::uint64_t q) {
  return enumerate(family, q, true);
}

std::vector<TripleType> enumerate_unconditioned(const std::string& family, std::uint64_t q) {
  return enumerate(family, q, false);
}

Verdict verdict(const std::string& family, std::uint64_t q) {
  if (is_partial_family(family)) return partial_verdict(family, q);
  Verdict v;
  v.family = family;
  v.q = q;
  v.triples = enumerate_admissible(family, q);
  if (!v.triples.empty()) {
    v.kind = Verdict::Kind::Possible;
    return v;
  }
  v.kind = Verdict::Kind::Impossible;
  const auto loose = enumerate_unconditioned(family, q);
  v.reason = loose.empty() ? scott_failure_reason(family, q)
                           : missing_class_reason(family, q, loose);
  return v;
}

ReductionBounds reduction_bounds(const std::string& family, std::uint64_t p) {
  std::vector<Candidate> c[3];
  for (int i = 0; i < 3; ++i) c[i] = partial_candidates(family, p, i);
  int upper[3];
  const int dim = scott_modules(family, p).front().dim;
  ReductionBounds b;
  int* mins[3] = {&b.min_x, &b.min_y, &b.min_z};
  for (int i = 0; i < 3; ++i) {
    *mins[i] = std::numeric_limits<int>::max();
    for (const auto& cand : c[i]) *mins[i] = std::min(*mins[i], cand.shown.dL);
  }
  propagate(c, {ModuleKind::L, dim}, upper);
  b.max_x = upper[0];
  b.max_y = upper[1];
  b.max_z = upper[2];
  return b;
}

std::vector<TableRow> admissible_table(const std::string& family) {
  std::vector<TableRow> out;
  for (std::uint64_t p : {2ull, 3ull, 7ull, 0ull}) {
    const auto qs = case_qs(p);
    if (family == "SE6") {
      const bool differs = std::any_of(qs.begin(), qs.end(),
                                       [](std::uint64_t q) { return (q - 1) % 3 == 0; });
      if (!differs) continue;
    }
    struct Acc {
      std::set<int> ns;
      std::map<int, std::string> z;  // record index -> label
      int xi = 0, yi = 0;
    };
    std::map<std::pair<std::string, std::string>, Acc> rows;
    for (std::size_t k = 0; k < qs.size(); ++k) {
      const int n = static_cast<int>(k % 6) + 1;
      for (const auto& tt : enumerate_admissible(family, qs[k])) {
        Acc& a = rows[{tt.x, tt.y}];
        a.ns.insert(n);
        a.xi = record_index(family, qs[k], 2, tt.x);
        a.yi = record_index(family, qs[k], 3, tt.y);
        a.z[record_index(family, qs[k], 7, tt.z)] = tt.z;
      }
    }
    std::vector<std::pair<std::pair<std::string, std::string>, Acc>> sorted(rows.begin(),
                                                                             rows.end());
    std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) {
      return std::pair(a.second.xi, a.second.yi) < std::pair(b.second.xi, b.second.yi);
    });
    for (auto& [key, acc] : sorted) {
      TableRow row{family, p == 0 ? "p^n" : exponent_label(p, acc.ns), key.first, key.second, {}};
      for (auto& [idx, label] : acc.z) row.z.push_back(label);
      out.push_back(std::move(row));
    }
  }
  return out;
}

std::string render_rows(const std::vector<TableRow>& rows) {
  std::vector<std::string> cells[4];
  for (const auto& r : rows) {
    cells[0].push_back(r.family + "(" + r.q_condition + ")");
    cells[1].push_back(r.x);
    cells[2].push_back(r.y);
    std::string z;
    for (std::size_t i = 0; i < r.z.size(); ++i) z += (i ? ", " : "") + r.z[i];
    cells[3].push_back(z);
  }
  const char* heads[4] = {"G", "x", "y", "z"};
  std::size_t w[4];
  for (int c = 0; c < 4; ++c) {
    w[c] = std::string(heads[c]).size();
    for (const auto& s : cells[c]) w[c] = std::max(w[c], s.size());
  }
  std::ostringstream os;
  auto line = [&](auto get) {
    std::string s;
    for (int c = 0; c < 4; ++c) {
      std::string cell = get(c);
      if (c < 3) cell.resize(w[c] + 2, ' ');
      s += cell;
    }
    os << s << '\n';
  };
  line([&](int c) { return std::string(heads[c]); });
  line([&](int c) { return std::string(w[c], '-'); });
  for (std::size_t i = 0; i < rows.size(); ++i) line([&](int c) { return cells[c][i]; });
  return os.str();
}

std::string render_lines(const std::vector<TableRow>& rows) {
  std::ostringstream os;
  for (const auto& r : rows) {
    for (const auto& z : r.z) {
      os << r.family << '|' << r.q_condition << '|' << r.x << '|' << r.y << '|' << z << '\n';
    }
  }
  return os.str();
}

std::string render_verdict(const Verdict& v) {
  std::ostringstream os;
  const std::string g = v.family + "(" + std::to_string(v.q) + ")";
  switch (v.kind) {
    case Verdict::Kind::Possible: {
      os << g << ": " << v.triples.size() << " admissible triple"
         << (v.triples.size() == 1 ? "" : "s") << "\n";
      for (const auto& t : v.triples) {
        os << "  (" << t.x << ", " << t.y << ", " << t.z << ")";
        for (const auto& s : t.sums) {
          os << "  " << to_string(s.kind) << ": " << s.sum << "/" << s.dim;
        }
        os << '\n';
      }
      break;
    }
    case Verdict::Kind::Impossible:
      os << g << ": " << v.reason << '\n';
      break;
    case Verdict::Kind::Partial: {
      os << g << ": " << v.reason << '\n';
      const RoleBounds* roles[3] = {&v.x, &v.y, &v.z};
      for (int i = 0; i < 3; ++i) {
        os << "  " << kRoles[i] << " (order " << kOrders[i] << ", d^L <= " << roles[i]->max_dL
           << "):";
        for (const auto& c : roles[i]->classes) {
          os << ' ' << c.label;
          if (c.tabulated) {
            os << " [" << (c.dM ? std::to_string(*c.dM) : std::string("-")) << "/" << c.dL << "]";
          }
        }
        os << '\n';
      }
      break;
    }
  }
  return os.str();
}

}  // namespace hurwitz::scott
