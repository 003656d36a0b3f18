#pragma once

#include <cmath>
#include <cstdint>

namespace stueckelberg {

// Counter-based deterministic random stream.
//
// Every consumer derives an independent stream from the triple
// (seed, stream, index): `stream` identifies the subsystem (noise sampling,
// fit jitter, ...) and `index` the work unit (Monte Carlo shot, grid point).
// Draws within a stream are sequential. Because streams never share state,
// results are bit-identical regardless of thread count or evaluation order.
//
// Generator core is SplitMix64; gaussians come from a hand-rolled Box-Muller
// so the byte stream does not depend on the standard library's
// (implementation-defined) normal_distribution.
class Rng {
 public:
  Rng(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
    state_ = seed;
    std::uint64_t a = next_raw();
    state_ = a ^ (0x9e3779b97f4a7c15ULL * (stream + 1));
    a = next_raw();
    state_ = a ^ (0x94d049bb133111ebULL * (index + 1));
    next_raw();
  }

  std::uint64_t next_raw() {
    state_ += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform on [0, 1) with 53-bit resolution.
  double uniform() { return static_cast<double>(next_raw() >> 11) * 0x1.0p-53; }

  // Standard normal draw, Box-Muller with one cached value.
  double gaussian() {
    if (have_cached_) {
      have_cached_ = false;
      return cached_;
    }
    // u1 in (0,1] so the log is finite.
    double u1 = (static_cast<double>(next_raw() >> 11) + 1.0) * 0x1.0p-53;
    double u2 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    double a = 6.283185307179586476925286766559 * u2;
    cached_ = r * std::sin(a);
    have_cached_ = true;
    return r * std::cos(a);
  }

 private:
  std::uint64_t state_ = 0;
  double cached_ = 0.0;
  bool have_cached_ = false;
};

// Stream ids, one per random-consuming subsystem.
namespace rng_stream {
inline constexpr std::uint64_t kNoise = 1;        // noise realizations per shot
inline constexpr std::uint64_t kFitJitter = 2;    // multi-start fit perturbations
inline constexpr std::uint64_t kMeasurement = 3;  // synthetic measurement noise
}  // namespace rng_stream

}  // namespace stueckelberg
