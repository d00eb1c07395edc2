#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "qgd/linalg.hpp"

namespace qgd {

// Deterministic random source. mt19937_64 has a standard-specified output
// sequence; doubles are derived from the raw 64-bit stream by hand (the
// std::*_distribution adapters are implementation-defined and would break
// bit-identical reproducibility across toolchains).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t raw() { return gen_(); }

  // uniform in [0, 1)
  double uniform() {
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // standard normal via Box-Muller (pairs drawn on demand, no cached spare)
  double gauss() {
    double u = uniform();
    while (u <= 0.0) u = uniform();
    const double v = uniform();
    return std::sqrt(-2.0 * std::log(u)) *
           std::cos(2.0 * std::numbers::pi * v);
  }

  cplx cgauss() {
    double u = uniform();
    while (u <= 0.0) u = uniform();
    const double v = uniform();
    const double r = std::sqrt(-std::log(u));  // E|z|^2 = 1, Re/Im ~ N(0,1/2)
    return cplx(r * std::cos(2.0 * std::numbers::pi * v),
                r * std::sin(2.0 * std::numbers::pi * v));
  }

  // uniform point on the unit sphere
  Vec3 unit_vector() {
    const double z = 1.0 - 2.0 * uniform();
    const double phi = 2.0 * std::numbers::pi * uniform();
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    return {r * std::cos(phi), r * std::sin(phi), z};
  }

  // uniform point of the probability simplex (flat Dirichlet) of size k
  std::vector<double> simplex(int k) {
    std::vector<double> w(static_cast<std::size_t>(k));
    double sum = 0.0;
    for (auto& v : w) {
      double u = uniform();
      while (u <= 0.0) u = uniform();
      v = -std::log(u);
      sum += v;
    }
    for (auto& v : w) v /= sum;
    return w;
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace qgd
