#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

namespace cue3d {

// Deterministic random stream keyed by (seed, label). Streams with the
// same key are identical; distinct labels or seeds give independent
// streams. xoshiro256** core with splitmix64 seeding, so sequences are
// reproducible across platforms and standard-library versions (the
// <random> distributions are implementation-defined and unusable here).
class rng {
 public:
  rng(uint64_t seed, std::string_view stream_label);

  uint64_t next_u64();

  // Uniform in [0, n). n must be > 0.
  uint64_t below(uint64_t n);

  // Uniform double in [0, 1) with 53-bit resolution.
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Inclusive integer range.
  int64_t uniform_int(int64_t lo, int64_t hi) {
    return lo + static_cast<int64_t>(below(static_cast<uint64_t>(hi - lo) + 1));
  }

  // Standard normal via Box-Muller.
  double normal();
  double normal(double mu, double sigma) { return mu + sigma * normal(); }

  // Fisher-Yates.
  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (size_t i = v.size(); i > 1; i--) {
      size_t j = static_cast<size_t>(below(i));
      std::swap(v[i - 1], v[j]);
    }
  }

 private:
  uint64_t state_[4];
  bool has_cached_normal_ = false;
  double cached_normal_ = 0;
};

}  // namespace cue3d
