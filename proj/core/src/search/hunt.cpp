#include "hurwitz/search/hunt.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <limits>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include "hurwitz/meataxe/meataxe.hpp"
#include "hurwitz/scott/scott.hpp"

namespace hurwitz::search {

using ffla::Elem;
using ffla::Field;

namespace {

std::vector<std::string> split_type(const std::string& type) {
  std::vector<std::string> out;
  std::stringstream ss(type);
  std::string part;
  while (std::getline(ss, part, ',')) out.push_back(part);
  if (out.size() != 3) throw std::invalid_argument("triple type must be 'x,y,z': " + type);
  return out;
}

std::string group_name(const std::string& family, std::uint64_t q) {
  return family + "(" + std::to_string(q) + ")";
}

ClassRecord require_record(const std::string& family, std::uint64_t q, int order,
                           const std::string& label) {
  auto r = target_record(family, q, order, label);
  if (!r) {
    throw NotAdmissible("no class " + label + " of order " + std::to_string(order) + " in " +
                        group_name(family, q));
  }
  return *r;
}

bool role_has(const scott::RoleBounds& role, const std::string& label) {
  return std::any_of(role.classes.begin(), role.classes.end(),
                     [&](const auto& c) { return c.label == label; });
}

// g - I as a list of nonzero entries.
struct Entry {
  std::uint32_t row, col;
  Elem value;
};
struct SparseGen {
  std::vector<Entry> n, n_inv;
};

std::vector<Entry> off_identity(const Matrix& g) {
  const Field& F = g.field();
  std::vector<Entry> out;
  for (std::size_t i = 0; i < g.dim(); ++i) {
    for (std::size_t j = 0; j < g.dim(); ++j) {
      const Elem v = i == j ? F.sub(g.at(i, j), 1) : g.at(i, j);
      if (v != 0) out.push_back({static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j), v});
    }
  }
  return out;
}

// Dense working copy of the element being conjugated, with the kernels of
// the inner loop. Fields with q <= 256 use full addition and multiplication
// tables.
class Walker {
 public:
  Walker(const Matrix& start, const std::vector<SparseGen>& gens)
      : F_(start.field()), n_(start.dim()), q_(F_.q()), cur_(start.entries()), tmp_(cur_.size()),
        gens_(gens) {
    if (q_ <= 256) {
      add_.resize(q_ * q_);
      mul_.resize(q_ * q_);
      for (std::uint32_t a = 0; a < q_; ++a) {
        for (std::uint32_t b = 0; b < q_; ++b) {
          add_[a * q_ + b] = F_.add(static_cast<Elem>(a), static_cast<Elem>(b));
          mul_[a * q_ + b] = F_.mul(static_cast<Elem>(a), static_cast<Elem>(b));
        }
      }
    }
  }

  // cur <- s^-1 cur s.
  void step(std::size_t which) {
    const SparseGen& s = gens_[which];
    tmp_ = cur_;
    for (const auto& e : s.n) {
      for (std::size_t i = 0; i < n_; ++i) {
        Elem& d = tmp_[i * n_ + e.col];
        d = madd(d, e.value, cur_[i * n_ + e.row]);
      }
    }
    cur_ = tmp_;
    for (const auto& e : s.n_inv) {
      const Elem* src = &tmp_[e.col * n_];
      Elem* dst = &cur_[e.row * n_];
      for (std::size_t j = 0; j < n_; ++j) dst[j] = madd(dst[j], e.value, src[j]);
    }
  }

  // sum_ij cur_ij * other_ij.
  Elem dot(const std::vector<Elem>& other) const {
    if (F_.is_prime_field()) {
      std::uint64_t acc = 0;
      for (std::size_t i = 0; i < cur_.size(); ++i) acc += std::uint64_t{cur_[i]} * other[i];
      return static_cast<Elem>(acc % F_.p());
    }
    Elem acc = 0;
    for (std::size_t i = 0; i < cur_.size(); ++i) acc = madd(acc, cur_[i], other[i]);
    return acc;
  }

  void apply(const std::vector<Elem>& m, const std::vector<Elem>& v, std::vector<Elem>& out) const {
    if (F_.is_prime_field()) {
      for (std::size_t i = 0; i < n_; ++i) {
        std::uint64_t acc = 0;
        const Elem* row = &m[i * n_];
        for (std::size_t j = 0; j < n_; ++j) acc += std::uint64_t{row[j]} * v[j];
        out[i] = static_cast<Elem>(acc % F_.p());
      }
      return;
    }
    for (std::size_t i = 0; i < n_; ++i) {
      Elem acc = 0;
      const Elem* row = &m[i * n_];
      for (std::size_t j = 0; j < n_; ++j) acc = madd(acc, row[j], v[j]);
      out[i] = acc;
    }
  }

  const std::vector<Elem>& entries() const { return cur_; }
  Matrix matrix(const ffla::FieldPtr& field) const { return Matrix(field, n_, cur_); }

 private:
  // d + a b.
  Elem madd(Elem d, Elem a, Elem b) const {
    if (!add_.empty()) return add_[d * q_ + mul_[a * q_ + b]];
    return F_.add(d, F_.mul(a, b));
  }

  const Field& F_;
  std::size_t n_;
  std::uint32_t q_;
  std::vector<Elem> cur_, tmp_;
  std::vector<Elem> add_, mul_;
  const std::vector<SparseGen>& gens_;
};

}  // namespace

std::optional<ClassRecord> target_record(const std::string& family, std::uint64_t q, int order,
                                         const std::string& label) {
  if (label.rfind("torus ", 0) == 0) {
    int a = 0, b = 0;
    char slash = 0;
    std::istringstream in(label.substr(6));
    if (!(in >> a >> slash >> b) || slash != '/') return std::nullopt;
    ClassRecord r;
    r.family = family;
    r.label = label;
    r.order = order;
    r.dM = a;
    r.dL = b;
    return r;
  }
  return classdata::ClassTable::bundled().find(family, q, order, label);
}

HuntTarget resolve_target(const std::string& family, std::uint64_t q, const std::string& type) {
  const auto v = scott::verdict(family, q);
  if (v.kind == scott::Verdict::Kind::Impossible) throw NotAdmissible(v.reason);
  HuntTarget t;
  t.family = family;
  t.q = q;
  std::vector<std::string> labels;
  if (v.kind == scott::Verdict::Kind::Possible) {
    if (type.empty()) {
      labels = {v.triples.front().x, v.triples.front().y, v.triples.front().z};
    } else {
      labels = split_type(type);
      const bool ok = std::any_of(v.triples.begin(), v.triples.end(), [&](const auto& tt) {
        return tt.x == labels[0] && tt.y == labels[1] && tt.z == labels[2];
      });
      if (!ok) throw NotAdmissible("type " + type + " is not admissible for " + group_name(family, q));
    }
  } else {
    const scott::RoleBounds* roles[3] = {&v.x, &v.y, &v.z};
    if (type.empty()) {
      for (const auto* r : roles) {
        if (r->classes.empty()) throw NotAdmissible("no candidate classes for " + group_name(family, q));
        labels.push_back(r->classes.front().label);
      }
    } else {
      labels = split_type(type);
      for (int i = 0; i < 3; ++i) {
        if (!role_has(*roles[i], labels[i])) {
          throw NotAdmissible("class " + labels[i] + " is excluded by the reduction bounds for " +
                              group_name(family, q));
        }
      }
    }
  }
  t.x = require_record(family, q, 2, labels[0]);
  t.y = require_record(family, q, 3, labels[1]);
  t.z = require_record(family, q, 7, labels[2]);
  return t;
}

ModuleKind hunt_module(const std::string& family, std::uint64_t q) {
  const std::uint64_t p = classdata::characteristic(q);
  if (family == "A1" || family == "E8") return ModuleKind::L;
  if (family == "F4") return p == 3 ? ModuleKind::Mprime : ModuleKind::M;
  if (family == "E6" || family == "SE6") return ModuleKind::M;
  if (family == "E7" || family == "SE7") return p == 2 ? ModuleKind::M : ModuleKind::L;
  throw classdata::UnsupportedFamily("no hunt module for family " + family);
}

Matrix random_class_element(ProductReplacement& sampler, const Meter& meter,
                            const ClassRecord& target, int retries) {
  for (int attempt = 0; attempt < retries; ++attempt) {
    const Matrix g = random_element_of_order(sampler, static_cast<std::uint64_t>(target.order));
    if (!classdata::consistent(target, meter.module_fingerprint(g, target.order))) continue;
    if (classdata::consistent(target, meter.fingerprint(g, target.order))) return g;
  }
  throw BudgetExhausted("no element of class " + target.label + " in " + std::to_string(retries) +
                        " elements of order " + std::to_string(target.order));
}

HuntResult hunt(const GroupCtx& ctx, const HuntTarget& target, std::uint64_t seed,
                const HuntLimits& limits) {
  if (classdata::known_family(target.family)) resolve_target(target.family, target.q, target.type());
  if (limits.chunk == 0) throw std::invalid_argument("chunk size must be positive");
  const auto t0 = std::chrono::steady_clock::now();
  const Field& F = *ctx.field;
  const std::size_t n = ctx.dim;
  const Meter meter(ctx);

  ProductReplacement sampler(ctx.generators, derive_seed(seed, 0));
  const bool move_x = limits.conjugated == Conjugated::X;
  const Matrix fixed = random_class_element(sampler, meter, move_x ? target.z : target.x);
  const Matrix start = random_class_element(sampler, meter, move_x ? target.x : target.z);

  std::vector<SparseGen> gens;
  for (const auto& g : ctx.generators) {
    const Matrix gi = *ffla::inverse(g);
    gens.push_back({off_identity(g), off_identity(gi)});
    gens.push_back({off_identity(gi), off_identity(g)});
  }
  const std::vector<Elem> fixed_t = ffla::transpose(fixed).entries();
  const bool unipotent_y = target.y.order % static_cast<int>(F.p()) == 0;
  const Elem trace_y = F.from_int(static_cast<std::int64_t>(n));
  std::vector<Elem> probe(n);
  {
    Rng r(derive_seed(seed, std::numeric_limits<std::uint64_t>::max()));
    for (auto& e : probe) e = static_cast<Elem>(uniform_below(r, F.q()));
  }

  const std::uint64_t max_chunks =
      limits.max_iterations ? (limits.max_iterations + limits.chunk - 1) / limits.chunk
                            : std::numeric_limits<std::uint64_t>::max();
  std::atomic<std::uint64_t> next_chunk{0};
  std::atomic<std::uint64_t> best{std::numeric_limits<std::uint64_t>::max()};
  std::atomic<bool> timed_out{false};
  std::atomic<std::uint64_t> iterations{0}, order_three{0}, y_class{0}, reducible{0};
  std::mutex mu;
  std::map<std::uint64_t, HuntHit> hits;

  auto expired = [&] {
    if (limits.seconds <= 0) return false;
    const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
    return dt.count() > limits.seconds;
  };

  auto run_chunk = [&](std::uint64_t c) -> std::optional<HuntHit> {
    Rng rng(derive_seed(seed, c + 1));
    Walker walk(start, gens);
    for (int i = 0; i < 256; ++i) walk.step(uniform_below(rng, gens.size()));
    std::uint64_t length = limits.chunk;
    if (limits.max_iterations) length = std::min(length, limits.max_iterations - c * limits.chunk);
    std::vector<Elem> u(n), w(n);
    std::uint64_t done = 0;
    std::optional<HuntHit> found;
    for (std::uint64_t it = 0; it < length; ++it) {
      if ((it & 255) == 0 && it) {
        iterations += done;
        done = 0;
        if (expired()) timed_out = true;
        if (timed_out || best.load() < c) break;
      }
      walk.step(uniform_below(rng, gens.size()));
      ++done;
      if (unipotent_y && walk.dot(fixed_t) != trace_y) continue;
      const auto& m = walk.entries();
      const auto& fe = fixed.entries();
      const std::vector<Elem>& a = move_x ? m : fe;
      const std::vector<Elem>& b = move_x ? fe : m;
      u = probe;
      for (int k = 0; k < 3; ++k) {
        walk.apply(b, u, w);
        walk.apply(a, w, u);
      }
      if (u != probe) continue;
      const Matrix moved = walk.matrix(ctx.field);
      const Matrix& x = move_x ? moved : fixed;
      const Matrix& z = move_x ? fixed : moved;
      // xyz = 1 gives y = (zx)^-1, conjugate to (xz)^-1.
      const Matrix zx = ffla::mat_mul(z, x);
      const Matrix y = ffla::mat_mul(zx, zx);
      if (zx.is_identity() || !ffla::mat_mul(y, zx).is_identity()) continue;
      ++order_three;
      if (!classdata::consistent(target.y, meter.module_fingerprint(y, 3))) continue;
      ++y_class;
      Rng mrng(derive_seed(seed ^ (c * 0x9e3779b97f4a7c15ull), it));
      const auto irr = meataxe::is_irreducible(meataxe::ModuleAction({x, z}), mrng,
                                               limits.meataxe_budget);
      if (irr.verdict != meataxe::Verdict::Irreducible) {
        ++reducible;
        continue;
      }
      if (!classdata::consistent(target.y, meter.fingerprint(y, 3)) ||
          !classdata::consistent(target.x, meter.fingerprint(x, 2)) ||
          !classdata::consistent(target.z, meter.fingerprint(z, 7))) {
        continue;
      }
      found = HuntHit{x, y, z, c, it, irr.trials};
      break;
    }
    iterations += done;
    return found;
  };

  auto worker = [&] {
    for (;;) {
      const std::uint64_t c = next_chunk++;
      if (c >= max_chunks || c > best.load() || timed_out) return;
      if (auto h = run_chunk(c)) {
        std::lock_guard<std::mutex> lock(mu);
        hits.emplace(c, std::move(*h));
        std::uint64_t b = best.load();
        while (c < b && !best.compare_exchange_weak(b, c)) {
        }
      }
    }
  };

  const unsigned workers = std::max(1u, limits.workers);
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < workers; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  HuntResult result;
  result.stats = {iterations.load(), order_three.load(), y_class.load(), reducible.load(),
                  std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count()};
  if (!hits.empty()) {
    result.status = HuntResult::Status::Found;
    result.hit = std::move(hits.begin()->second);
  } else {
    result.status = timed_out ? HuntResult::Status::TimeLimit : HuntResult::Status::IterationLimit;
  }
  return result;
}

}  // namespace hurwitz::search
