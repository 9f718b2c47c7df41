#pragma once

#include <complex>
#include <cstdint>

namespace uichan {

// Counter-based generator: output k is a SplitMix64 finalizer applied to
// key + k * golden-gamma. Two generators with the same key produce the same
// stream, and there is no hidden global state.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed) : key_(mix(seed)) {}

  std::uint64_t next_u64();
  // Uniform on the open interval (0, 1).
  double uniform();
  double normal();
  // Standard complex Gaussian, E|z|^2 = 1.
  std::complex<double> complex_normal();
  std::uint64_t below(std::uint64_t bound);

  std::uint64_t counter() const noexcept { return counter_; }

  static std::uint64_t mix(std::uint64_t x);

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

// Seed for an independent sub-stream, e.g. one per restart.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

}  // namespace uichan
