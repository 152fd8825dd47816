#include "hurwitz/search/random.hpp"

#include "hurwitz/ffla/order.hpp"

namespace hurwitz::search {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
  std::uint64_t s = master;
  const std::uint64_t a = splitmix64(s);
  std::uint64_t t = a ^ (stream * 0xd1342543de82ef95ull);
  splitmix64(t);
  return splitmix64(t);
}

std::uint64_t uniform_below(Rng& rng, std::uint64_t n) {
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
  std::uint64_t v;
  do {
    v = rng();
  } while (v >= limit);
  return v % n;
}

ProductReplacement::ProductReplacement(std::vector<Matrix> gens, std::uint64_t seed,
                                       std::size_t slots, std::size_t warmup)
    : rng_(seed), acc_(Matrix::identity(gens.at(0).field_ptr(), gens.at(0).dim())) {
  slots = std::max(slots, gens.size() + 1);
  for (std::size_t i = 0; i < slots; ++i) slots_.push_back(gens[i % gens.size()]);
  for (std::size_t i = 0; i < warmup; ++i) step();
}

void ProductReplacement::step() {
  const std::size_t n = slots_.size();
  const std::size_t i = uniform_below(rng_, n);
  std::size_t j = uniform_below(rng_, n - 1);
  if (j >= i) ++j;
  if (rng_() & 1) {
    slots_[i] = ffla::mat_mul(slots_[i], slots_[j]);
  } else {
    slots_[i] = ffla::mat_mul(slots_[j], slots_[i]);
  }
  acc_ = ffla::mat_mul(acc_, slots_[i]);
}

Matrix ProductReplacement::next() {
  step();
  return acc_;
}

Matrix random_element(const GroupCtx& ctx, Rng& rng) {
  return ProductReplacement(ctx.generators, rng()).next();
}

Matrix random_element_of_order(ProductReplacement& sampler, std::uint64_t k, int retries) {
  if (k == 0) throw std::invalid_argument("element order must be positive");
  for (int attempt = 0; attempt < retries; ++attempt) {
    const Matrix g = sampler.next();
    if (k == 1) return Matrix::identity(g.field_ptr(), g.dim());
    const std::uint64_t m = ffla::element_order(g);
    if (m % k == 0) return ffla::mat_pow(g, m / k);
  }
  throw BudgetExhausted("no element of order " + std::to_string(k) + " in " +
                        std::to_string(retries) + " samples");
}

Matrix random_element_of_order(const GroupCtx& ctx, std::uint64_t k, Rng& rng, int retries) {
  ProductReplacement sampler(ctx.generators, rng());
  return random_element_of_order(sampler, k, retries);
}

}  // namespace hurwitz::search
