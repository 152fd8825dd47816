#include "hurwitz/ffla/field.hpp"

#include <cassert>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>

#include "hurwitz/data_paths.hpp"
#include "hurwitz/ffla/poly.hpp"

namespace hurwitz::ffla {

namespace {

bool is_prime(std::uint32_t v) {
  if (v < 2) return false;
  for (std::uint32_t d = 2; d * d <= v; ++d) {
    if (v % d == 0) return false;
  }
  return true;
}

const std::vector<ModulusEntry>& bundled_moduli() {
  static const std::vector<ModulusEntry> table = [] {
    try {
      return parse_modulus_table(read_file(data_dir() / "fields.dat"));
    } catch (const std::runtime_error&) {
      return std::vector<ModulusEntry>{};
    }
  }();
  return table;
}

}  // namespace

bool split_prime_power(std::uint32_t q, std::uint32_t& p, std::uint32_t& n) {
  if (q < 2 || q > Field::kMaxOrder) return false;
  std::uint32_t d = 2;
  while (q % d != 0) ++d;
  p = d;
  n = 0;
  while (q % d == 0) {
    q /= d;
    ++n;
  }
  return q == 1;
}

std::vector<ModulusEntry> parse_modulus_table(const std::string& text) {
  std::vector<ModulusEntry> out;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    ModulusEntry e{};
    if (!(ls >> e.p)) continue;
    if (!(ls >> e.n)) {
      throw std::runtime_error("fields.dat:" + std::to_string(lineno) +
                               ": missing degree");
    }
    unsigned c;
    while (ls >> c) e.coeffs.push_back(static_cast<Elem>(c));
    if (e.coeffs.size() != e.n + 1 || e.coeffs.back() != 1) {
      throw std::runtime_error("fields.dat:" + std::to_string(lineno) +
                               ": expected n+1 coefficients of a monic modulus");
    }
    out.push_back(std::move(e));
  }
  return out;
}

FieldPtr Field::make(std::uint32_t p, std::uint32_t n) {
  static std::mutex mu;
  static std::map<std::pair<std::uint32_t, std::uint32_t>, FieldPtr> cache;
  {
    std::lock_guard lock(mu);
    if (auto it = cache.find({p, n}); it != cache.end()) return it->second;
  }
  if (!is_prime(p) || n == 0) {
    throw std::invalid_argument("field order must be a prime power");
  }
  std::uint64_t q = 1;
  for (std::uint32_t i = 0; i < n; ++i) {
    q *= p;
    if (q > kMaxOrder) throw std::invalid_argument("field order exceeds 2^16");
  }
  FieldPtr f;
  for (const auto& e : bundled_moduli()) {
    if (e.p == p && e.n == n) {
      f = with_modulus(p, e.coeffs);
      break;
    }
  }
  if (!f) {
    // Smallest (by encoded coefficient vector) modulus whose root x is
    // primitive; deterministic, so matrices stay reproducible.
    const std::uint64_t count = q;
    for (std::uint64_t code = 0; code < count && !f; ++code) {
      std::vector<Elem> m(n + 1, 0);
      std::uint64_t c = code;
      for (std::uint32_t i = 0; i < n; ++i, c /= p) m[i] = static_cast<Elem>(c % p);
      m[n] = 1;
      if (m[0] == 0) continue;
      FieldPtr cand;
      try {
        cand = with_modulus(p, m);
      } catch (const std::invalid_argument&) {
        continue;
      }
      if (n == 1 || cand->primitive() == cand->basis(1)) f = cand;
    }
  }
  if (!f) throw std::logic_error("no primitive modulus found");
  std::lock_guard lock(mu);
  cache.emplace(std::make_pair(p, n), f);
  return f;
}

FieldPtr Field::make_order(std::uint32_t q) {
  std::uint32_t p, n;
  if (!split_prime_power(q, p, n) || !is_prime(p)) {
    throw std::invalid_argument("q = " + std::to_string(q) +
                                " is not a supported prime power");
  }
  return make(p, n);
}

FieldPtr Field::with_modulus(std::uint32_t p, std::vector<Elem> modulus) {
  if (!is_prime(p)) throw std::invalid_argument("characteristic must be prime");
  if (modulus.size() < 2 || modulus.back() != 1) {
    throw std::invalid_argument("modulus must be monic of degree >= 1");
  }
  for (Elem c : modulus) {
    if (c >= p) throw std::invalid_argument("modulus coefficient out of range");
  }
  const auto n = static_cast<std::uint32_t>(modulus.size() - 1);
  if (n > 1) {
    PolyRing prime_ring(make(p, 1));
    if (!prime_ring.is_irreducible(modulus)) {
      throw std::invalid_argument("modulus is reducible over GF(p)");
    }
  }
  return FieldPtr(new Field(p, n, std::move(modulus)));
}

Field::Field(std::uint32_t p, std::uint32_t n, std::vector<Elem> modulus)
    : p_(p), n_(n), q_(1), modulus_(std::move(modulus)) {
  for (std::uint32_t i = 0; i < n_; ++i) q_ *= p_;
  pow_p_.resize(n_ + 1, 1);
  for (std::uint32_t i = 1; i <= n_; ++i) pow_p_[i] = pow_p_[i - 1] * p_;

  if (n_ > 1 && p_ != 2) {
    neg_.resize(q_);
    for (std::uint32_t a = 0; a < q_; ++a) {
      std::uint32_t r = 0;
      for (std::uint32_t i = 0; i < n_; ++i) {
        std::uint32_t d = digit(static_cast<Elem>(a), i);
        r += ((p_ - d) % p_) * pow_p_[i];
      }
      neg_[a] = static_cast<Elem>(r);
    }
    if (q_ <= 1024) {
      add_table_.resize(std::size_t{q_} * q_);
      for (std::uint32_t a = 0; a < q_; ++a) {
        for (std::uint32_t b = 0; b < q_; ++b) {
          add_table_[std::size_t{a} * q_ + b] =
              add_digits(static_cast<Elem>(a), static_cast<Elem>(b));
        }
      }
    }
  }

  // Root of a linear modulus x + c is -c; otherwise prefer the class of x.
  Elem first = n_ == 1 ? static_cast<Elem>((p_ - modulus_[0]) % p_)
                       : static_cast<Elem>(p_);
  if (q_ == 2) first = 1;
  if (build_tables(first)) return;
  for (std::uint32_t g = 2; g < q_; ++g) {
    if (g != first && build_tables(static_cast<Elem>(g))) return;
  }
  throw std::invalid_argument("modulus does not define a field");
}

bool Field::build_tables(Elem generator) {
  if (generator == 0) return false;
  const std::uint32_t order = q_ - 1;
  exp_.assign(2 * std::size_t{order} + 1, 0);
  log_.assign(q_, 0);
  std::vector<bool> seen(q_, false);
  Elem cur = 1;
  for (std::uint32_t k = 0; k < order; ++k) {
    if (cur == 0 || seen[cur]) return false;
    seen[cur] = true;
    exp_[k] = cur;
    log_[cur] = k;
    cur = slow_mul(cur, generator);
  }
  if (cur != 1) return false;
  for (std::uint32_t k = order; k < exp_.size(); ++k) exp_[k] = exp_[k - order];
  return true;
}

std::uint32_t Field::digit(Elem a, std::uint32_t i) const {
  return (a / pow_p_[i]) % p_;
}

Elem Field::add_digits(Elem a, Elem b) const {
  std::uint32_t r = 0;
  for (std::uint32_t i = 0; i < n_; ++i) {
    r += ((digit(a, i) + digit(b, i)) % p_) * pow_p_[i];
  }
  return static_cast<Elem>(r);
}

Elem Field::slow_mul(Elem a, Elem b) const {
  std::vector<std::uint32_t> prod(2 * n_, 0);
  for (std::uint32_t i = 0; i < n_; ++i) {
    for (std::uint32_t j = 0; j < n_; ++j) {
      prod[i + j] = (prod[i + j] + digit(a, i) * digit(b, j)) % p_;
    }
  }
  for (std::uint32_t k = 2 * n_ - 1; k >= n_; --k) {
    std::uint32_t c = prod[k];
    if (c == 0) continue;
    prod[k] = 0;
    for (std::uint32_t i = 0; i < n_; ++i) {
      prod[k - n_ + i] = (prod[k - n_ + i] + (p_ - c) * modulus_[i]) % p_;
    }
  }
  std::uint32_t r = 0;
  for (std::uint32_t i = 0; i < n_; ++i) r += prod[i] * pow_p_[i];
  return static_cast<Elem>(r);
}

Elem Field::inv(Elem a) const {
  assert(a != 0);
  return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
}

Elem Field::pow(Elem a, std::uint64_t e) const {
  if (e == 0) return 1;
  if (a == 0) return 0;
  return exp_[(std::uint64_t{log_[a]} * (e % (q_ - 1))) % (q_ - 1)];
}

Elem Field::frobenius_inverse(Elem a) const {
  return pow(a, pow_p_[n_ - 1]);
}

Elem Field::from_int(std::int64_t v) const {
  std::int64_t r = v % static_cast<std::int64_t>(p_);
  if (r < 0) r += p_;
  return static_cast<Elem>(r);
}

Elem Field::basis(std::uint32_t j) const {
  if (j >= n_) throw std::out_of_range("basis index exceeds field degree");
  return static_cast<Elem>(pow_p_[j]);
}

std::string Field::modulus_line() const {
  std::ostringstream os;
  os << p_ << ' ' << n_;
  for (Elem c : modulus_) os << ' ' << c;
  return os.str();
}

}  // namespace hurwitz::ffla
