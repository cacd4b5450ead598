#pragma once

#include <cstdint>
#include <random>

namespace viscolab {

/// All randomized routines draw from an explicitly seeded mt19937_64 so a
/// (seed, config) pair reproduces results bit for bit at thread count 1.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(gen_);
  }
  double normal(double mean = 0.0, double stddev = 1.0) {
    return std::normal_distribution<double>(mean, stddev)(gen_);
  }
  std::uint64_t integer(std::uint64_t n) {  // uniform on [0, n)
    return std::uniform_int_distribution<std::uint64_t>(0, n - 1)(gen_);
  }

  std::mt19937_64& engine() { return gen_; }

 private:
  std::mt19937_64 gen_;
};

}  // namespace viscolab
