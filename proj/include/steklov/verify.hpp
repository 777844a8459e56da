#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "steklov/cheeger.hpp"
#include "steklov/io.hpp"
#include "steklov/report.hpp"

namespace steklov {

struct VerifyOptions {
  int instances = 100;
  uint64_t seed = 1;
  int k_max = 3;
  bool fixtures_only = false;
  std::string dump_dir = ".";  // replay files for failing instances land here
};

struct VerifyOutcome {
  ordered_json report;
  int checks = 0;
  int failures = 0;
};

// Cross-route identity battery for one window: Schur vs per-column DtN,
// harmonicity, the Green identity, Dirichlet minimality, the pairing
// ⟨Λf,f⟩_d = D(u_f), spectral ranges, blow-up monotonicity, coarea and
// level-set identities, enumeration vs parametric cut, witness round-trips,
// and Dirichlet-eigenvalue domain monotonicity.  `salt` seeds the random
// test functions.
std::vector<CheckRecord> structural_checks(const Window& w, uint64_t salt);

// Built-in fixtures with hand-computed constants.
struct Fixture {
  std::string name;
  NamedGraph graph;
  std::vector<int> window;  // ingestion indices
};
std::vector<Fixture> built_in_fixtures();

// Full suite: fixtures (pinned values + batteries), then `instances` seeded
// random windows.  Failing random instances are dumped as replayable graph
// files.  The report is byte-stable for a fixed seed.
VerifyOutcome run_verify(const VerifyOptions& opt);

}  // namespace steklov
