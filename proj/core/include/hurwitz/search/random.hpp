#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include "hurwitz/chevgrp/group.hpp"
#include "hurwitz/ffla/matrix.hpp"

namespace hurwitz::search {

using chevgrp::GroupCtx;
using ffla::Matrix;
using Rng = std::mt19937_64;

class BudgetExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// One splitmix64 step: advances state, returns the mixed output.
std::uint64_t splitmix64(std::uint64_t& state);

/// Seed of stream `stream` under a master seed.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream);

/// Uniform integer in [0, n), n > 0, by rejection (platform independent,
/// unlike std::uniform_int_distribution).
std::uint64_t uniform_below(Rng& rng, std::uint64_t n);

/// Product replacement with an accumulator: a tuple of slots seeded with the
/// generators, each step replacing a slot by its product with another slot
/// and multiplying the accumulator by the new slot.
class ProductReplacement {
 public:
  ProductReplacement(std::vector<Matrix> gens, std::uint64_t seed, std::size_t slots = 10,
                     std::size_t warmup = 50);
  Matrix next();

 private:
  void step();

  Rng rng_;
  std::vector<Matrix> slots_;
  Matrix acc_;
};

/// A single pseudo-random element from a fresh walk seeded from rng.
Matrix random_element(const GroupCtx& ctx, Rng& rng);

/// g^(m/k) for the first sampled g whose order m is divisible by k. Throws
/// BudgetExhausted after `retries` samples.
Matrix random_element_of_order(ProductReplacement& sampler, std::uint64_t k, int retries = 200);
Matrix random_element_of_order(const GroupCtx& ctx, std::uint64_t k, Rng& rng,
                               int retries = 200);

}  // namespace hurwitz::search
