#pragma once

#include <cstdint>
#include <random>
#include <string>

#include "relaysynth/instance.hpp"

namespace relaysynth {

enum class DemandMode { tree, two, mixed };

struct GeneratorConfig {
  std::string family = "uniform-box";  // uniform-box | pentagon | square | collinear | star | triangle
  int n = 8;
  double box = 4.0;
  std::uint64_t seed = 1;
  DemandMode demands = DemandMode::mixed;
  double unstable_probability = 0.3;
};

[[nodiscard]] Instance generate(const GeneratorConfig& config);

// Regular pentagon on the unit circle, r = 1 on all pairs.
[[nodiscard]] Instance pentagon_instance();
// Unit square, r = 2 on all pairs.
[[nodiscard]] Instance square_instance();
// (0,0) and (length,0) with requirement r.
[[nodiscard]] Instance collinear_instance(double length = 3.0, int r = 2);
// Equilateral triangle of the given side, r = 1 on all pairs.
[[nodiscard]] Instance triangle_instance(double side);
// n terminals evenly spaced on the unit circle, r = 1 on all pairs.
[[nodiscard]] Instance star_instance(int n);

// Uniform double in [0,1) from the top 53 bits, identical on every platform.
[[nodiscard]] inline double unit_uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}
// Uniform integer in [lo, hi] by rejection, identical on every platform.
[[nodiscard]] std::int64_t uniform_int(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi);

[[nodiscard]] DemandMode parse_demand_mode(const std::string& s);

}  // namespace relaysynth
