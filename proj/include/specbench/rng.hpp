#pragma once

#include <cstdint>
#include <vector>

#include "specbench/common.hpp"

namespace specbench {

// Counter-based generator: output k of stream (seed, stream) is a pure
// function of (seed, stream, k).  Trials indexed by stream are therefore
// order-independent and safe to run in any interleaving, which is what makes
// scenario reports reproducible trial-by-trial.
class CounterRng {
 public:
  explicit CounterRng(uint64_t seed, uint64_t stream = 0)
      : key_(mix(seed ^ mix(stream + 0x6a09e667f3bcc909ULL))) {}

  // Derive an independent substream deterministically.
  CounterRng split(uint64_t stream) const { return CounterRng(key_, stream); }

  uint64_t next_u64() { return mix(key_ + 0x9e3779b97f4a7c15ULL * (++ctr_)); }

  // Uniform in [0, 1).
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Standard normal via Box-Muller; one value per call, pairs drawn lazily.
  double next_gaussian();

  cplx next_complex_gaussian() {
    const double re = next_gaussian();
    const double im = next_gaussian();
    return cplx(re, im);
  }

  int next_below(int n);  // uniform in [0, n)

 private:
  static uint64_t mix(uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  uint64_t key_;
  uint64_t ctr_ = 0;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

std::vector<cplx> random_unit_vector(CounterRng& rng, int dim);

}  // namespace specbench
