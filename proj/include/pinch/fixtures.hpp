#pragma once

// Built-in example inputs used by the test suite and by `pinch examples`.

#include <string>

#include "pinch/graph.hpp"
#include "pinch/quadform.hpp"

namespace pinch::fixtures {

// One coordinate z1, one parameter t: the quadric z1^2 + t^2.  Its critical
// locus is the single point t = 0 and nothing lies at infinity.
FamilyFile simple();

// Two forms in z1, z2 with parameter t:
//   z1^2 + z2^2 + z1 t + 1   and   z1^2 + z2^2 + t^2.
FamilyFile two_quadrics();

// One-loop two-point graph: edges e1 (mass m1) and e2 (mass m2) between the
// two external vertices, four dimensions.
FeynmanGraph bubble();

// Two-loop two-point graph with three parallel massive edges.
FeynmanGraph sunrise();

// Two-point graph whose lower line contains a one-loop self-energy insertion:
// the inner bubble is its only divergent proper subgraph in four dimensions.
FeynmanGraph nested_bubble();

// Write every example as a JSON file under dir (created if missing); returns
// the file names written.
std::vector<std::string> write_examples(const std::string& dir);

} // namespace pinch::fixtures
