#include "hurwitz/meataxe/meataxe.hpp"

#include <algorithm>
#include <deque>

#include "hurwitz/ffla/order.hpp"

namespace hurwitz::meataxe {

using ffla::EchelonBasis;
using ffla::Elem;

ModuleAction::ModuleAction(std::vector<Matrix> gens) : gens_(std::move(gens)) {
  if (gens_.empty()) throw std::invalid_argument("ModuleAction needs at least one generator");
  field_ = gens_.front().field_ptr();
  dim_ = gens_.front().dim();
  for (const auto& g : gens_) ffla::check_compatible(gens_.front(), g);
}

ModuleAction ModuleAction::transposed() const {
  std::vector<Matrix> t;
  t.reserve(gens_.size());
  for (const auto& g : gens_) t.push_back(ffla::transpose(g));
  return ModuleAction(std::move(t));
}

std::vector<Vec> spin_up(const std::vector<Vec>& vecs, const ModuleAction& act) {
  EchelonBasis span(act.field(), act.dim());
  std::deque<Vec> queue;
  for (const auto& v : vecs) {
    if (span.insert(v)) queue.push_back(v);
  }
  while (!queue.empty() && span.size() < act.dim()) {
    Vec v = std::move(queue.front());
    queue.pop_front();
    for (const auto& g : act.gens()) {
      Vec w = ffla::mat_vec(g, v);
      if (span.insert(w)) queue.push_back(std::move(w));
    }
  }
  return span.rows();
}

namespace {

Matrix random_algebra_element(const ModuleAction& act, std::mt19937_64& rng) {
  const ffla::Field& F = *act.field();
  const int terms = 1 + static_cast<int>(rng() % 3);
  Matrix theta(act.field(), act.dim());
  for (int t = 0; t < terms; ++t) {
    const int len = 1 + static_cast<int>(rng() % 8);
    Matrix w = act.gens()[rng() % act.gens().size()];
    for (int k = 1; k < len; ++k) w = ffla::mat_mul(w, act.gens()[rng() % act.gens().size()]);
    Elem c = static_cast<Elem>(1 + rng() % (F.q() - 1));
    theta = ffla::mat_add(theta, ffla::mat_scale(w, c));
  }
  return theta;
}

std::vector<Vec> annihilator(const std::vector<Vec>& rows, const ffla::FieldPtr& F, std::size_t n) {
  std::vector<Vec> padded = rows;
  padded.resize(n, Vec(n, 0));
  return ffla::kernel_basis(Matrix::from_rows(F, padded));
}

}  // namespace

IrreducibilityResult is_irreducible(const ModuleAction& act, std::mt19937_64& rng, int budget) {
  IrreducibilityResult res;
  const std::size_t n = act.dim();
  if (n == 0) throw std::invalid_argument("is_irreducible: zero-dimensional module");
  if (n == 1) {
    res.verdict = Verdict::Irreducible;
    return res;
  }
  ffla::PolyRing R(act.field());
  const ModuleAction dual = act.transposed();
  for (int trial = 1; trial <= budget; ++trial) {
    res.trials = trial;
    const Matrix theta = random_algebra_element(act, rng);
    const ffla::Poly mp = ffla::min_poly(theta);
    for (const auto& [f, mult] : R.factor(mp)) {
      (void)mult;
      const Matrix ft = ffla::eval_poly(f, theta);
      const auto ker = ffla::kernel_basis(ft);
      const std::size_t deg = f.size() - 1;
      auto sub = spin_up({ker.front()}, act);
      if (sub.size() < n) {
        res.verdict = Verdict::Reducible;
        res.subspace = std::move(sub);
        res.theta = theta;
        res.factor = f;
        return res;
      }
      if (ker.size() != deg) continue;
      const auto coker = ffla::kernel_basis(ffla::transpose(ft));
      auto dual_sub = spin_up({coker.front()}, dual);
      if (dual_sub.size() < n) {
        res.verdict = Verdict::Reducible;
        res.subspace = annihilator(dual_sub, act.field(), n);
        res.theta = theta;
        res.factor = f;
        return res;
      }
      res.verdict = Verdict::Irreducible;
      res.theta = theta;
      res.factor = f;
      return res;
    }
  }
  res.verdict = Verdict::Inconclusive;
  return res;
}

Matrix leading_block(const Matrix& m, std::size_t k) {
  std::vector<Elem> e(k * k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) e[i * k + j] = m.at(i, j);
  return Matrix(m.field_ptr(), k, std::move(e));
}

Matrix trailing_block(const Matrix& m, std::size_t k) {
  const std::size_t n = m.dim() - k;
  std::vector<Elem> e(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) e[i * n + j] = m.at(k + i, k + j);
  return Matrix(m.field_ptr(), n, std::move(e));
}

Split split(const ModuleAction& act, const std::vector<Vec>& subspace) {
  const std::size_t n = act.dim();
  EchelonBasis basis(act.field(), n);
  for (const auto& v : subspace) basis.insert(v);
  const std::size_t k = basis.size();
  if (k == 0 || k == n) throw NotReducible("split: subspace is not proper");
  if (spin_up(basis.rows(), act).size() != k) {
    throw NotReducible("split: subspace is not invariant");
  }
  // Columns of P: subspace basis, then unit vectors off the pivot columns.
  std::vector<Elem> p(n * n, 0);
  std::vector<bool> is_pivot(n, false);
  for (std::size_t c = 0; c < k; ++c) {
    is_pivot[basis.pivots()[c]] = true;
    for (std::size_t i = 0; i < n; ++i) p[i * n + c] = basis.rows()[c][i];
  }
  std::size_t c = k;
  for (std::size_t i = 0; i < n; ++i) {
    if (!is_pivot[i]) p[i * n + c++] = 1;
  }
  Matrix P(act.field(), n, std::move(p));
  const Matrix Pinv = *ffla::inverse(P);
  std::vector<Matrix> a, b;
  for (const auto& g : act.gens()) {
    const Matrix h = ffla::conjugate(g, P, Pinv);
    a.push_back(leading_block(h, k));
    b.push_back(trailing_block(h, k));
  }
  return Split{ModuleAction(std::move(a)), ModuleAction(std::move(b)), P};
}

Split split(const ModuleAction& act, std::mt19937_64& rng, int budget) {
  auto r = is_irreducible(act, rng, budget);
  if (r.verdict != Verdict::Reducible) throw NotReducible("split: no invariant subspace found");
  return split(act, r.subspace);
}

std::optional<ModuleAction> find_factor(const ModuleAction& act, std::size_t dim,
                                        std::mt19937_64& rng, int budget) {
  if (act.dim() < dim) return std::nullopt;
  auto r = is_irreducible(act, rng, budget);
  if (r.verdict == Verdict::Irreducible) {
    return act.dim() == dim ? std::optional<ModuleAction>(act) : std::nullopt;
  }
  if (r.verdict == Verdict::Inconclusive) return std::nullopt;
  Split s = split(act, r.subspace);
  if (auto f = find_factor(s.sub, dim, rng, budget)) return f;
  return find_factor(s.quotient, dim, rng, budget);
}

}  // namespace hurwitz::meataxe
