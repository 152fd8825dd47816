#include "hurwitz/ffla/order.hpp"

#include <algorithm>
#include <limits>

namespace hurwitz::ffla {

namespace {

// Local minimal polynomial of v under g, with the Krylov vectors appended to
// `span`. Rows pair a reduced vector with the polynomial producing it.
Poly local_min_poly(const PolyRing& R, const Matrix& g, Vec v, EchelonBasis& span) {
  const Field& F = R.field();
  const std::size_t n = g.dim();
  struct Row {
    Vec vec;
    Poly poly;
    std::size_t pivot;
  };
  std::vector<Row> rows;
  Poly cur_poly{1};
  for (std::size_t k = 0; k <= n; ++k) {
    span.insert(v);
    Vec w = v;
    Poly pw = cur_poly;
    for (const auto& r : rows) {
      const Elem c = w[r.pivot];
      if (c == 0) continue;
      for (std::size_t j = r.pivot; j < n; ++j) {
        if (r.vec[j] != 0) w[j] = F.sub(w[j], F.mul(c, r.vec[j]));
      }
      pw = R.sub(pw, R.scale(r.poly, c));
    }
    std::size_t piv = 0;
    while (piv < n && w[piv] == 0) ++piv;
    if (piv == n) return R.monic(pw);
    const Elem inv = F.inv(w[piv]);
    for (auto& e : w) e = F.mul(e, inv);
    rows.push_back({std::move(w), R.scale(pw, inv), piv});
    v = mat_vec(g, v);
    cur_poly.insert(cur_poly.begin(), 0);  // times x
  }
  throw std::logic_error("Krylov sequence failed to terminate");
}

Poly lcm(const PolyRing& R, const Poly& a, const Poly& b) {
  Poly g = R.gcd(a, b);
  return R.monic(R.mul(R.divmod(a, g).first, b));
}

mpz_class root_order(const PolyRing& R, const Poly& block, unsigned d,
                     const FactorOptions& opts) {
  if (block == Poly{R.field().neg(1), 1}) return 1;  // x - 1
  const Factorization fac = factor_q_power_minus_one(R.field().q(), d, opts);
  mpz_class order = mpz_pow(R.field().q(), d) - 1;
  const Poly x = R.x();
  for (const auto& [r, e] : fac) {
    for (unsigned i = 0; i < e; ++i) {
      mpz_class cand = order / r;
      if (R.powmod(x, cand, block) == Poly{1}) {
        order = cand;
      } else {
        break;
      }
    }
  }
  return order;
}

}  // namespace

Poly min_poly(const Matrix& g) {
  PolyRing R(g.field_ptr());
  const std::size_t n = g.dim();
  EchelonBasis span(g.field_ptr(), n);
  Poly result{1};
  for (std::size_t i = 0; i < n && span.size() < n; ++i) {
    Vec e(n, 0);
    e[i] = 1;
    if (span.contains(e)) continue;
    result = lcm(R, result, local_min_poly(R, g, std::move(e), span));
  }
  return result;
}

Matrix eval_poly(const Poly& f, const Matrix& m) {
  Matrix acc(m.field_ptr(), m.dim());
  for (std::size_t i = f.size(); i-- > 0;) {
    acc = mat_add(mat_mul(acc, m), Matrix::scalar(m.field_ptr(), m.dim(), f[i]));
  }
  return acc;
}

std::uint64_t element_order(const Matrix& g, const FactorOptions& opts) {
  PolyRing R(g.field_ptr());
  const Poly m = min_poly(g);
  if (m.empty() || m[0] == 0) throw std::invalid_argument("element_order: singular matrix");

  unsigned max_mult = 1;
  Poly radical{1};
  for (const auto& [h, s] : R.squarefree(m)) {
    max_mult = std::max(max_mult, s);
    radical = R.mul(radical, h);
  }
  mpz_class order = 1;
  for (const auto& [block, d] : R.distinct_degree(radical)) {
    mpz_class o = root_order(R, block, d, opts);
    mpz_lcm(order.get_mpz_t(), order.get_mpz_t(), o.get_mpz_t());
  }
  std::uint64_t unip = 1;
  while (unip < max_mult) unip *= g.field().p();
  order *= unip;
  if (order > mpz_class(std::to_string(std::numeric_limits<std::uint64_t>::max()))) {
    throw std::overflow_error("element order exceeds 64 bits");
  }
  return std::stoull(order.get_str());
}

std::vector<std::size_t> jordan_partition(const Matrix& g) {
  const std::size_t n = g.dim();
  const Matrix nil = mat_sub(g, Matrix::identity(g.field_ptr(), n));
  std::vector<std::size_t> ranks{n};
  Matrix power = nil;
  while (true) {
    const std::size_t r = rank(power);
    if (r == ranks.back() && r != 0) throw NotUnipotent("jordan_partition: not unipotent");
    ranks.push_back(r);
    if (r == 0) break;
    power = mat_mul(power, nil);
  }
  // at_least[k] = number of blocks of size >= k = ranks[k-1] - ranks[k].
  std::vector<std::size_t> parts;
  const std::size_t kmax = ranks.size() - 1;
  for (std::size_t k = kmax; k >= 1; --k) {
    const std::size_t at_least = ranks[k - 1] - ranks[k];
    const std::size_t at_least_next = k + 1 <= kmax ? ranks[k] - ranks[k + 1] : 0;
    for (std::size_t c = at_least_next; c < at_least; ++c) parts.push_back(k);
  }
  return parts;
}

}  // namespace hurwitz::ffla
