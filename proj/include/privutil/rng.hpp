#ifndef PRIVUTIL_RNG_HPP
#define PRIVUTIL_RNG_HPP

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <random>

namespace privutil {

// Seeded generator with hand-rolled transforms.  std::mt19937_64 output is
// standardized, while the std distribution objects are not; going through
// uniform01 below keeps identical seeds bit-identical across toolchains.
class split_rng {
 public:
  explicit split_rng(std::uint64_t seed) : engine_(seed) {}

  double uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  // Exp(1) via inversion; uniform01 is in [0, 1) so 1 - u stays positive.
  double exp1() { return -std::log1p(-uniform01()); }

  // Index sample from an unnormalized nonnegative weight vector.
  long categorical(const Eigen::VectorXd& w) {
    const double target = uniform01() * w.sum();
    double acc = 0.0;
    for (long i = 0; i < w.size(); ++i) {
      acc += w(i);
      if (target < acc) return i;
    }
    return w.size() - 1;
  }

  bool bernoulli(double p) { return uniform01() < p; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace privutil

#endif  // PRIVUTIL_RNG_HPP
