#pragma once

#include <cstdint>
#include <vector>

#include "steklov/io.hpp"

namespace steklov {

struct RandomOptions {
  int min_host = 6;      // host graph vertex count range
  int max_host = 16;
  int min_window = 4;    // window size range (clamped to the closure)
  int max_window = 12;
  int min_boundary = 1;  // boundary vertices required inside the window
  int min_interior = 1;  // interior vertices required inside the window
  double loop_probability = 0.15;
};

// One replayable random test instance: a connected host graph with integer
// weights in {1..5}, a random interior designation, and a connected window
// grown from a boundary vertex (so the collar is usually nonempty).  The
// same seed always yields the same instance.
struct RandomInstance {
  NamedGraph graph;
  std::vector<int> window;  // ingestion indices, ascending
  uint64_t seed = 0;
};

RandomInstance random_instance(uint64_t seed, const RandomOptions& opt = {});

}  // namespace steklov
