#pragma once

// Deterministic randomness. One master seed per experiment; every consumer
// derives its own stream with a fixed tag so adding a module never perturbs
// another module's draws. The normal sampler is Box-Muller on top of the
// engine's 64-bit output, so sequences are bit-identical across platforms
// (std::normal_distribution is implementation-defined and is not used).

#include <cstdint>
#include <random>
#include <vector>

namespace dastk {

/// Fixed per-module stream tags (documented splitting rule).
enum class SeedStream : std::uint64_t {
  scene_noise = 1,
  dataset = 2,
  dae_init = 3,
  dae_shuffle = 4,
  test = 99,
};

/// splitmix64 finalizer; mixes master seed and stream tag.
inline std::uint64_t derive_seed(std::uint64_t master, SeedStream stream) {
  std::uint64_t z = master + 0x9e3779b97f4a7c15ULL * (static_cast<std::uint64_t>(stream) + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

class Rng {
public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next_u64() { return eng_(); }

  /// uniform in [0, 1)
  double uniform() {
    return (next_u64() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// uniform integer in [0, n)
  std::uint64_t uniform_index(std::uint64_t n) {
    // unbiased via rejection on the top range
    const std::uint64_t lim = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t v;
    do { v = next_u64(); } while (v >= lim);
    return v % n;
  }

  /// standard normal, Box-Muller (no rejection; consumes two draws)
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 6.28318530717958647692 * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

  /// Fisher-Yates; explicit so shuffles do not depend on std::shuffle's
  /// unspecified algorithm.
  template <class T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      const std::size_t j = static_cast<std::size_t>(uniform_index(i));
      std::swap(v[i - 1], v[j]);
    }
  }

private:
  std::mt19937_64 eng_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

} // namespace dastk
