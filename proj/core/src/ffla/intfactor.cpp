#include "hurwitz/ffla/intfactor.hpp"

#include <algorithm>
#include <mutex>
#include <sstream>

#include "hurwitz/data_paths.hpp"
#include "hurwitz/ffla/poly.hpp"

namespace hurwitz::ffla {

namespace {

void add_prime(std::map<mpz_class, unsigned>& acc, const mpz_class& p,
               unsigned e = 1) {
  acc[p] += e;
}

bool is_probable_prime(const mpz_class& n) {
  return mpz_probab_prime_p(n.get_mpz_t(), 40) > 0;
}

// Brent's variant; returns a nontrivial factor or 0 when the budget runs out.
mpz_class pollard_rho(const mpz_class& n, std::uint64_t budget) {
  if (mpz_even_p(n.get_mpz_t())) return 2;
  for (unsigned long c = 1; c < 64; ++c) {
    mpz_class y = 2, x, q = 1, g = 1, ys;
    std::uint64_t r = 1, steps = 0;
    const std::uint64_t m = 128;
    auto f = [&](const mpz_class& v) {
      mpz_class t = v * v + c;
      return mpz_class(t % n);
    };
    do {
      x = y;
      for (std::uint64_t i = 0; i < r; ++i) y = f(y);
      std::uint64_t k = 0;
      do {
        ys = y;
        for (std::uint64_t i = 0; i < std::min(m, r - k); ++i) {
          y = f(y);
          mpz_class diff = x - y;
          q = (q * abs(diff)) % n;
        }
        g = gcd(q, n);
        k += m;
        steps += m;
      } while (k < r && g == 1);
      r *= 2;
      if (steps > budget) return 0;
    } while (g == 1);
    if (g == n) {
      do {
        ys = f(ys);
        mpz_class diff = x - ys;
        g = gcd(mpz_class(abs(diff)), n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
  return 0;
}

void factor_into(const mpz_class& n, const FactorOptions& opts,
                 std::map<mpz_class, unsigned>& acc) {
  if (n == 1) return;
  if (is_probable_prime(n)) {
    add_prime(acc, n);
    return;
  }
  mpz_class d = pollard_rho(n, opts.rho_budget);
  if (d == 0) {
    throw FactoringBudgetExceeded("factoring budget exceeded for " + n.get_str() +
                                  "; add a factor-table entry");
  }
  factor_into(d, opts, acc);
  factor_into(mpz_class(n / d), opts, acc);
}

int mobius(unsigned n) {
  int result = 1;
  for (unsigned p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      n /= p;
      if (n % p == 0) return 0;
      result = -result;
    }
  }
  if (n > 1) result = -result;
  return result;
}

mpz_class cyclotomic_value(std::uint64_t q, unsigned k) {
  mpz_class num = 1, den = 1;
  for (unsigned e = 1; e <= k; ++e) {
    if (k % e != 0) continue;
    int mu = mobius(k / e);
    if (mu == 0) continue;
    mpz_class v = mpz_pow(q, e) - 1;
    if (mu > 0) num *= v; else den *= v;
  }
  return num / den;
}

}  // namespace

FactorTable FactorTable::parse(const std::string& text) {
  FactorTable t;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
    std::istringstream ls(line);
    std::uint64_t q;
    unsigned d;
    if (!(ls >> q)) continue;
    if (!(ls >> d)) {
      throw std::runtime_error("factors.dat:" + std::to_string(lineno) + ": missing d");
    }
    Factorization f;
    std::string tok;
    mpz_class product = 1;
    while (ls >> tok) {
      auto caret = tok.find('^');
      PrimePower pp{mpz_class(tok.substr(0, caret)),
                    caret == std::string::npos
                        ? 1u
                        : static_cast<unsigned>(std::stoul(tok.substr(caret + 1)))};
      mpz_class pw;
      mpz_pow_ui(pw.get_mpz_t(), pp.prime.get_mpz_t(), pp.exponent);
      product *= pw;
      f.push_back(std::move(pp));
    }
    if (product != mpz_pow(q, d) - 1) {
      throw std::runtime_error("factors.dat:" + std::to_string(lineno) +
                               ": product does not equal q^d - 1");
    }
    std::sort(f.begin(), f.end(),
              [](const PrimePower& a, const PrimePower& b) { return a.prime < b.prime; });
    t.entries_[{q, d}] = std::move(f);
  }
  return t;
}

const FactorTable& FactorTable::bundled() {
  static const FactorTable table = [] {
    try {
      return parse(read_file(data_dir() / "factors.dat"));
    } catch (const std::runtime_error&) {
      return FactorTable{};
    }
  }();
  return table;
}

std::optional<Factorization> FactorTable::lookup(std::uint64_t q, unsigned d) const {
  if (auto it = entries_.find({q, d}); it != entries_.end()) return it->second;
  return std::nullopt;
}

Factorization factor_integer(const mpz_class& n, const FactorOptions& opts) {
  if (n < 1) throw std::invalid_argument("factor_integer needs n >= 1");
  std::map<mpz_class, unsigned> acc;
  mpz_class rest = n;
  auto strip = [&](unsigned long p) {
    while (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
      add_prime(acc, p);
      rest /= p;
    }
  };
  for (std::uint64_t h : opts.hints) {
    if (h > 1) strip(h);
  }
  for (unsigned long p = 2; p < 10000 && rest > 1; p += (p == 2 ? 1 : 2)) strip(p);
  factor_into(rest, opts, acc);
  Factorization out;
  for (auto& [p, e] : acc) out.push_back({p, e});
  return out;
}

Factorization factor_q_power_minus_one(std::uint64_t q, unsigned d,
                                       const FactorOptions& opts) {
  if (auto hit = FactorTable::bundled().lookup(q, d)) return *hit;
  static std::mutex mu;
  static std::map<std::pair<std::uint64_t, unsigned>, Factorization> memo;
  {
    std::lock_guard lock(mu);
    if (auto it = memo.find({q, d}); it != memo.end()) return it->second;
  }
  std::map<mpz_class, unsigned> acc;
  for (unsigned k = 1; k <= d; ++k) {
    if (d % k != 0) continue;
    for (auto& [p, e] : factor_integer(cyclotomic_value(q, k), opts)) {
      add_prime(acc, p, e);
    }
  }
  Factorization out;
  for (auto& [p, e] : acc) out.push_back({p, e});
  std::lock_guard lock(mu);
  memo[{q, d}] = out;
  return out;
}

std::string to_string(const Factorization& f) {
  std::ostringstream os;
  bool first = true;
  for (const auto& [p, e] : f) {
    if (!first) os << ' ';
    first = false;
    os << p.get_str();
    if (e > 1) os << '^' << e;
  }
  return os.str();
}

}  // namespace hurwitz::ffla
