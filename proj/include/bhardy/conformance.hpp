#pragma once

#include <cstdint>

#include "bhardy/docio.hpp"

namespace bhardy {

struct ConformanceOptions {
  std::uint64_t seed = 0;
  int trials = 3;
  std::size_t grid_size = kDefaultGridSize;
  int threads = 1;
};

struct ConformanceOutcome {
  json body;  // deterministic for a fixed seed; no timing data inside
  bool all_pass = true;
};

// Randomized property suite over the module invariants.
ConformanceOutcome run_conformance(const ConformanceOptions& options);

// Deterministic uniform generator used for reproducible trials.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed ? seed : 0x9E3779B97F4A7C15ull) {}

  std::uint64_t next();
  double uniform();                          // [0, 1)
  double uniform(double lo, double hi);
  int range(int lo, int hi);                 // inclusive
  cd box(double half_width = 1.0);           // uniform square
  cd disk(double radius);                    // uniform disk

 private:
  std::uint64_t state_;
};

}  // namespace bhardy
