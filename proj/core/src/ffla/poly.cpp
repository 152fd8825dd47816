#include "hurwitz/ffla/poly.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace hurwitz::ffla {

mpz_class mpz_pow(std::uint64_t q, unsigned e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), q, e);
  return r;
}

Poly PolyRing::add(const Poly& a, const Poly& b) const {
  const Field& F = *field_;
  Poly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i) {
    Elem x = i < a.size() ? a[i] : 0;
    Elem y = i < b.size() ? b[i] : 0;
    r[i] = F.add(x, y);
  }
  normalize(r);
  return r;
}

Poly PolyRing::sub(const Poly& a, const Poly& b) const {
  const Field& F = *field_;
  Poly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i) {
    Elem x = i < a.size() ? a[i] : 0;
    Elem y = i < b.size() ? b[i] : 0;
    r[i] = F.sub(x, y);
  }
  normalize(r);
  return r;
}

Poly PolyRing::mul(const Poly& a, const Poly& b) const {
  if (a.empty() || b.empty()) return {};
  const Field& F = *field_;
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      r[i + j] = F.add(r[i + j], F.mul(a[i], b[j]));
    }
  }
  normalize(r);
  return r;
}

Poly PolyRing::scale(const Poly& a, Elem c) const {
  if (c == 0) return {};
  Poly r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = field_->mul(a[i], c);
  return r;
}

std::pair<Poly, Poly> PolyRing::divmod(const Poly& a, const Poly& b) const {
  if (b.empty()) throw std::domain_error("polynomial division by zero");
  const Field& F = *field_;
  Poly r = a;
  normalize(r);
  if (r.size() < b.size()) return {Poly{}, r};
  Poly quot(r.size() - b.size() + 1, 0);
  const Elem lead_inv = F.inv(b.back());
  for (std::size_t k = r.size(); k-- >= b.size();) {
    Elem c = r[k];
    if (c == 0) continue;
    Elem f = F.mul(c, lead_inv);
    std::size_t shift = k - (b.size() - 1);
    quot[shift] = f;
    for (std::size_t j = 0; j < b.size(); ++j) {
      r[shift + j] = F.sub(r[shift + j], F.mul(f, b[j]));
    }
  }
  normalize(r);
  normalize(quot);
  return {quot, r};
}

Poly PolyRing::monic(const Poly& a) const {
  if (a.empty()) return a;
  return scale(a, field_->inv(a.back()));
}

Poly PolyRing::gcd(Poly a, Poly b) const {
  normalize(a);
  normalize(b);
  while (!b.empty()) {
    Poly r = mod(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return monic(a);
}

Poly PolyRing::derivative(const Poly& a) const {
  if (a.size() <= 1) return {};
  Poly r(a.size() - 1);
  for (std::size_t i = 1; i < a.size(); ++i) {
    r[i - 1] = field_->mul(a[i], field_->from_int(static_cast<std::int64_t>(i)));
  }
  normalize(r);
  return r;
}

Poly PolyRing::powmod(const Poly& base, const mpz_class& e, const Poly& m) const {
  Poly result = mod(Poly{1}, m);
  if (e == 0) return result;
  Poly b = mod(base, m);
  const std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (std::size_t i = bits; i-- > 0;) {
    result = mulmod(result, result, m);
    if (mpz_tstbit(e.get_mpz_t(), i)) result = mulmod(result, b, m);
  }
  return result;
}

Elem PolyRing::eval(const Poly& f, Elem x) const {
  Elem r = 0;
  for (std::size_t i = f.size(); i-- > 0;) {
    r = field_->add(field_->mul(r, x), f[i]);
  }
  return r;
}

Poly PolyRing::pth_root(const Poly& f) const {
  const std::uint32_t p = field_->p();
  Poly r;
  for (std::size_t i = 0; i < f.size(); i += p) {
    r.push_back(field_->frobenius_inverse(f[i]));
  }
  normalize(r);
  return r;
}

std::vector<PolyFactor> PolyRing::squarefree(const Poly& f) const {
  std::vector<PolyFactor> out;
  if (degree(f) < 1) return out;
  Poly c = gcd(f, derivative(f));
  Poly w = divmod(f, c).first;
  unsigned i = 1;
  while (degree(w) > 0) {
    Poly y = gcd(w, c);
    Poly fac = divmod(w, y).first;
    if (degree(fac) > 0) out.push_back({monic(fac), i});
    w = y;
    c = divmod(c, y).first;
    ++i;
  }
  if (degree(c) > 0) {
    Poly root = monic(pth_root(c));
    for (auto& [g, m] : squarefree(root)) {
      out.push_back({g, m * field_->p()});
    }
  }
  return out;
}

std::vector<PolyFactor> PolyRing::distinct_degree(const Poly& f) const {
  std::vector<PolyFactor> out;
  Poly rest = monic(f);
  Poly h = x();
  const mpz_class q = field_->q();
  unsigned i = 1;
  while (degree(rest) >= 2 * static_cast<int>(i)) {
    h = powmod(h, q, rest);
    Poly g = gcd(rest, sub(h, x()));
    if (degree(g) > 0) {
      out.push_back({g, i});
      rest = divmod(rest, g).first;
      h = mod(h, rest);
    }
    ++i;
  }
  if (degree(rest) > 0) {
    out.push_back({rest, static_cast<unsigned>(degree(rest))});
  }
  return out;
}

std::vector<Poly> PolyRing::equal_degree(const Poly& f, unsigned d,
                                         std::mt19937_64& rng) const {
  const int n = degree(f);
  if (n <= static_cast<int>(d)) return {monic(f)};
  const Field& F = *field_;
  std::uniform_int_distribution<std::uint32_t> coeff(0, F.q() - 1);
  const mpz_class qd = mpz_pow(F.q(), d);
  Poly g;
  for (;;) {
    Poly a(static_cast<std::size_t>(n), 0);
    for (auto& c : a) c = static_cast<Elem>(coeff(rng));
    normalize(a);
    if (degree(a) < 1) continue;
    Poly b;
    if (F.p() == 2) {
      // Trace map a + a^2 + ... + a^(2^(k-1)), k = n_F * d.
      const unsigned k = F.n() * d;
      Poly t = mod(a, f);
      b = t;
      for (unsigned i = 1; i < k; ++i) {
        t = mulmod(t, t, f);
        b = add(b, t);
      }
    } else {
      b = sub(powmod(a, (qd - 1) / 2, f), Poly{1});
    }
    g = gcd(f, b);
    if (degree(g) > 0 && degree(g) < n) break;
  }
  auto left = equal_degree(g, d, rng);
  auto right = equal_degree(divmod(f, g).first, d, rng);
  left.insert(left.end(), right.begin(), right.end());
  std::sort(left.begin(), left.end());
  return left;
}

std::vector<PolyFactor> PolyRing::factor(const Poly& f) const {
  std::vector<PolyFactor> out;
  if (degree(f) < 1) return out;
  std::mt19937_64 rng(0x5eed);
  for (const auto& [g, m] : squarefree(monic(f))) {
    for (const auto& [h, d] : distinct_degree(g)) {
      for (auto& irr : equal_degree(h, d, rng)) out.push_back({irr, m});
    }
  }
  std::sort(out.begin(), out.end(), [](const PolyFactor& a, const PolyFactor& b) {
    if (a.factor.size() != b.factor.size()) return a.factor.size() < b.factor.size();
    if (a.factor != b.factor) return a.factor < b.factor;
    return a.multiplicity < b.multiplicity;
  });
  return out;
}

bool PolyRing::is_irreducible(const Poly& f) const {
  if (degree(f) < 1) return false;
  auto sf = squarefree(monic(f));
  if (sf.size() != 1 || sf[0].multiplicity != 1) return false;
  auto dd = distinct_degree(sf[0].factor);
  return dd.size() == 1 && static_cast<int>(dd[0].multiplicity) == degree(f);
}

}  // namespace hurwitz::ffla
