#ifndef STYLECAP_RNG_HPP_
#define STYLECAP_RNG_HPP_

#include <cstdint>
#include <string>
#include <vector>

namespace stylecap {

// Deterministic generator used everywhere randomness is needed. The state
// update is splitmix64 and the real-valued draws are built from raw bits, so
// a (seed, call sequence) pair reproduces bit-identical streams on any
// platform, independent of the standard library's distributions.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  // Named sub-stream of a root seed; stages of the pipeline each own one so
  // they can be replayed independently.
  static Rng substream(std::uint64_t root_seed, const std::string& name);

  std::uint64_t next_u64();

  // Uniform on [0, 1).
  double uniform();

  // Uniform on [lo, hi).
  double uniform(double lo, double hi);

  // Uniform integer in [0, n); n must be positive.
  std::size_t uniform_index(std::size_t n);

  // Standard normal via Box-Muller; draws are cached in pairs.
  double normal();

  std::vector<double> normal_vector(std::size_t n);

 private:
  std::uint64_t state_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace stylecap

#endif  // STYLECAP_RNG_HPP_
