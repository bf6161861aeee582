#pragma once
//
// Portable random streams. std::mt19937_64 output is fixed by the standard;
// uniform and normal variates are derived here rather than through the
// implementation-defined <random> distributions, so a seed produces the same
// stream with every standard library.
//

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace pdk {

class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on the open interval (0,1): ((bits >> 11) + 0.5)·2⁻⁵³.
  double uniform() {
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
  }

  /// Standard normal by Box–Muller; each pair of uniforms (u₁,u₂) yields
  /// √(−2 ln u₁)·cos(2πu₂) followed by √(−2 ln u₁)·sin(2πu₂).
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(a);
    has_spare_ = true;
    return r * std::cos(a);
  }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace pdk
