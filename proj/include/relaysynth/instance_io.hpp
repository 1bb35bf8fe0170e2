#pragma once

#include <string>

#include "relaysynth/instance.hpp"

namespace relaysynth {

// Instance files:
//   {"metric": {"type":"euclidean","dim":2[,"delta":D]} | {"type":"finite","matrix":[[...]],"delta":D},
//    "terminals": [[x,y],...] | [i,...] | null,
//    "unstable": [ids], "demands": [[i,j,r],...], "default_demand": 0|1|2}
// Finite matrix entries may be numbers or "p/q" strings. A null terminal list
// (finite metrics only) makes every matrix node a terminal.
[[nodiscard]] Instance parse_instance(const std::string& text);

// Canonical form: explicit demand list, default_demand 0, sorted ids.
[[nodiscard]] std::string serialize_instance(const Instance& instance);

}  // namespace relaysynth
